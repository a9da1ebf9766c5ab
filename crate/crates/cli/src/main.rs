use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pfrad_core::enveloping::{pfaffian_casimir_in, pfaffian_element, Algebra};
use pfrad_core::hc_eigen::{d_is_zero, d_value, has_fixed_vector};
use pfrad_core::radon::{
    inversion_exact, oracle_mae, radon_forward, radon_plus, random_function, range_residual, spectra_catalog,
    GrassmannPair, Side, SpectralFunction,
};
use pfrad_core::repmod::{central_scalar, fixed_subspace, shared_irrep};
use pfrad_core::verify::{run_named_suite, SuiteOptions};
use pfrad_core::{Error, Weight};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

const DEFAULT_SEED: u64 = 7;

#[derive(Parser)]
#[command(name = "pfrad", version, about = "Pfaffian central elements and spectral Radon transforms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        /// Restrict to a single N.
        #[arg(long, conflicts_with = "nmax")]
        n: Option<usize>,
        #[arg(long)]
        nmax: Option<usize>,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 10)]
        points: usize,
        #[command(flatten)]
        caps: Caps,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed-form central character `D_r^N(λ)`.
    Eigen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Dimension, fixed vectors and `W̃_1` scalar of an irreducible representation.
    Rep {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[command(flatten)]
        caps: Caps,
    },
    /// PBW normal form of the Pfaffian element `W̃_I`.
    Pfaffian {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        idx: Vec<usize>,
    },
    /// Spectral Radon transform demo with a Monte-Carlo oracle.
    Radon {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k1: usize,
        #[arg(long)]
        k2: usize,
        /// Semicolon-separated weights; defaults to the source catalog up to degree 2.
        #[arg(long, allow_hyphen_values = true)]
        weights: Option<String>,
        #[arg(long, default_value = "random")]
        coeffs: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 10)]
        points: usize,
        /// Degree of the reported catalog.
        #[arg(long, default_value_t = 4)]
        catalog_degree: usize,
        #[command(flatten)]
        caps: Caps,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args, Clone, Copy)]
struct Caps {
    #[arg(long, default_value_t = 6)]
    cap_n: usize,
    #[arg(long, default_value_t = 4)]
    cap_degree: usize,
    #[arg(long, default_value_t = 1_000_000)]
    cap_samples: usize,
}

impl Caps {
    fn n(&self, n: usize) -> Result<(), Failure> {
        if n > self.cap_n {
            return Err(Failure::Resource(format!("N = {n} exceeds the cap {}", self.cap_n)));
        }
        Ok(())
    }

    fn degree(&self, d: usize) -> Result<(), Failure> {
        if d > self.cap_degree {
            return Err(Failure::Resource(format!("degree {d} exceeds the cap {}", self.cap_degree)));
        }
        Ok(())
    }

    fn samples(&self, s: usize) -> Result<(), Failure> {
        if s == 0 {
            return Err(Failure::Usage("samples must be at least 1".into()));
        }
        if s > self.cap_samples {
            return Err(Failure::Resource(format!("samples {s} exceeds the cap {}", self.cap_samples)));
        }
        Ok(())
    }
}

enum Failure {
    Usage(String),
    Resource(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Resource(m) => Failure::Resource(m),
            Error::InvalidInput(_) | Error::Parse(_) | Error::Domain(_) | Error::DimensionMismatch(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Check(other.to_string()),
        }
    }
}

fn parse_weight(n: usize, s: &str) -> Result<Weight, Failure> {
    Weight::parse(n, s).map_err(|e| Failure::Usage(e.to_string()))
}

fn emit(doc: &Value, out: Option<&PathBuf>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(doc).map_err(|e| Failure::Check(e.to_string()))?;
    match out {
        Some(path) => std::fs::write(path, text + "\n").map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Verify { suite, n, nmax, max_degree, seed, samples, points, caps, out } => {
            let (nmin, nmax) = match (n, nmax) {
                (Some(n), _) => (n, n),
                (None, Some(m)) => (0, m),
                (None, None) => (0, caps.cap_n),
            };
            caps.n(nmax)?;
            caps.degree(max_degree)?;
            caps.samples(samples)?;
            let opts = SuiteOptions { nmin, nmax, max_degree, seed, samples, points };
            let report = run_named_suite(&suite, &opts)?;
            let ok = report.all_passed();
            emit(&serde_json::to_value(&report).map_err(|e| Failure::Check(e.to_string()))?, out.as_ref())?;
            Ok(ok)
        }
        Command::Eigen { n, r, weight } => {
            let w = parse_weight(n, &weight)?;
            let d = d_value(n, r, &w)?;
            emit(&json!({"D": d.to_string(), "zero": d_is_zero(n, r, &w)?}), None)?;
            Ok(true)
        }
        Command::Rep { n, weight, caps } => {
            caps.n(n)?;
            let w = parse_weight(n, &weight)?;
            caps.degree(w.degree())?;
            let rho = shared_irrep(&w)?;
            let mut fixed = BTreeMap::new();
            let mut ok = true;
            for k in 1..n {
                let dim = fixed_subspace(&rho, k)?.dim();
                ok &= dim == usize::from(has_fixed_vector(n, k, &w)?);
                fixed.insert(k.to_string(), dim);
            }
            let alg = Algebra::shared(n, 0)?;
            let (scalar, is_scalar) = central_scalar(&pfaffian_casimir_in(&alg, 1)?, &rho)?;
            ok &= is_scalar;
            emit(&json!({"dim": rho.dim(), "fixed": fixed, "W1_scalar": scalar.to_string()}), None)?;
            Ok(ok)
        }
        Command::Pfaffian { n, idx } => {
            let x = pfaffian_element(&idx, n)?;
            emit(&serde_json::to_value(&x).map_err(|e| Failure::Check(e.to_string()))?, None)?;
            Ok(true)
        }
        Command::Radon { n, k1, k2, weights, coeffs, seed, samples, points, catalog_degree, caps, out } => {
            caps.n(n)?;
            caps.samples(samples)?;
            caps.degree(catalog_degree)?;
            if coeffs != "random" {
                return Err(Failure::Usage(format!("unsupported --coeffs {coeffs:?}; only \"random\" is available")));
            }
            if points == 0 {
                return Err(Failure::Usage("points must be at least 1".into()));
            }
            let pair = GrassmannPair::new(n, k1, k2)?;
            let catalog = spectra_catalog(&pair, catalog_degree)?;
            let weights: Vec<Weight> = match weights {
                Some(s) => s.split(';').map(|t| parse_weight(n, t.trim())).collect::<Result<_, _>>()?,
                None => spectra_catalog(&pair, 2)?.into_iter().filter(|e| e.in_source).map(|e| e.weight).collect(),
            };
            for w in &weights {
                caps.degree(w.degree())?;
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = random_function(&pair, Side::Source, &weights, &mut rng)?;
            let g = radon_forward(&f)?;
            let kernel: Vec<String> =
                f.weights().filter(|w| !g.components.contains_key(*w)).map(Weight::to_compact).collect();
            let injective_part = SpectralFunction::new(
                pair,
                Side::Source,
                f.components.iter().filter(|(w, _)| g.components.contains_key(*w)).map(|(w, v)| (w.clone(), v.clone())).collect(),
            )?;
            let inversion = inversion_exact(&injective_part)?;
            let target = random_function(&pair, Side::Target, &g.weights().cloned().collect::<Vec<_>>(), &mut rng)?;
            let surjective = radon_forward(&radon_plus(&target)?)? == target;
            let residual = if 2 * (pair.r() + 1) <= n { Some(range_residual(&g)?.norm.to_string()) } else { None };
            let mae = oracle_mae(&f, points, samples, seed)?;
            let tolerance = 5e-3 * (1.0 + f.norm_f64()?);
            let report = json!({
                "pair": pair.summary(),
                "seed": seed,
                "catalog": catalog,
                "function": f,
                "kernel_weights": kernel,
                "inversion_exact": inversion,
                "surjective": surjective,
                "range_residual": residual,
                "oracle": {"mae": mae, "tolerance": tolerance, "samples": samples, "points": points, "seed": seed},
            });
            emit(&report, out.as_ref())?;
            Ok(inversion && surjective && mae <= tolerance)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(m)) => {
            eprintln!("resource cap: {m}");
            ExitCode::from(3)
        }
    }
}
