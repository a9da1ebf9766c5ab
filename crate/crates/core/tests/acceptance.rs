use std::collections::BTreeSet;
use std::time::Instant;

use pfrad_core::hc_eigen::Weight;
use pfrad_core::radon::{radon_forward, range_residual, random_function, GrassmannPair, Side};
use pfrad_core::scalar::ratio;
use pfrad_core::verify::*;
use pfrad_core::Result;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 7;
const RADON_PAIRS: [(usize, usize, usize); 4] = [(4, 1, 2), (5, 1, 2), (6, 1, 2), (6, 2, 3)];

/// Checks whose failure is a known defect of the closed form they compare against.
const KNOWN_FAILURES: [&str; 2] = ["projection.casimir.N6.r2", "projection.casimir.N6.r3"];

struct Outcome {
    number: usize,
    name: &'static str,
    checks: Vec<CheckRecord>,
    seconds: f64,
}

impl Outcome {
    fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    fn report(&self) {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        println!(
            "{status} {:>2} {:<28} {:>5} checks, {failed} failed, {:.1}s",
            self.number,
            self.name,
            self.checks.len(),
            self.seconds
        );
        for c in self.checks.iter().filter(|c| !c.passed) {
            println!("       {} -> {}", c.id, c.witness.as_deref().unwrap_or(""));
            if KNOWN_FAILURES.contains(&c.id.as_str()) {
                println!("       known: the closed form disagrees with hc_project and with central scalars of built irreps");
            }
        }
    }
}

fn criterion(number: usize, name: &'static str, body: impl FnOnce() -> Result<Vec<CheckRecord>>) -> Outcome {
    let start = Instant::now();
    let checks = body().unwrap_or_else(|e| vec![CheckRecord::fail(format!("criterion{number}"), serde_json::Value::Null, e.to_string())]);
    Outcome { number, name, checks, seconds: start.elapsed().as_secs_f64() }
}

fn pick(checks: &[CheckRecord], suffixes: &[&str]) -> Vec<CheckRecord> {
    checks.iter().filter(|c| suffixes.iter().any(|s| c.id.ends_with(s) || c.id.contains(&format!("{s}.")))).cloned().collect()
}

fn main() {
    let mut outcomes = Vec::new();

    outcomes.push(criterion(1, "centrality", || centrality_checks(&[4, 5, 6])));
    outcomes.push(criterion(2, "adjoint covariance", || adjoint_checks(&[2, 3, 4, 5, 6], 20, SEED)));
    outcomes.push(criterion(3, "laplace expansions", || laplace_checks(&[2, 3, 4, 5, 6])));
    outcomes.push(criterion(4, "lemma identities", || lemma_checks(&[4, 5, 6])));
    outcomes.push(criterion(5, "projection identities", || projection_checks(&[3, 4, 5, 6])));
    outcomes.push(criterion(6, "eigenvalue match", || {
        let mut v = eigenvalue_reference_checks()?;
        v.extend(eigenvalue_checks(&[4, 5], 4, &[1, 2])?);
        Ok(v)
    }));
    outcomes.push(criterion(7, "branching", || branching_checks(&[2, 3, 4, 5], 4)));
    outcomes.push(criterion(8, "annihilation", || annihilation_checks(&[2, 3, 4, 5, 6, 7, 8], 6)));

    let start = Instant::now();
    let mut radon = Vec::new();
    for (n, k1, k2) in RADON_PAIRS {
        radon.extend(radon_checks(&GrassmannPair::new(n, k1, k2).unwrap(), 4, SEED).unwrap());
    }
    let radon_secs = start.elapsed().as_secs_f64();
    outcomes.push(Outcome { number: 9, name: "radon inversion", checks: pick(&radon, &["inversion"]), seconds: radon_secs });
    outcomes.push(criterion(10, "range characterization", || {
        let mut v = pick(&radon, &["range_zero", "range_positive"]);
        let pair = GrassmannPair::new(4, 1, 2)?;
        let w = Weight::new(4, vec![2, 2])?;
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let g = random_function(&pair, Side::Target, std::slice::from_ref(&w), &mut rng)?;
        let rr = range_residual(&g)?;
        let m = rr.multipliers[&w].clone();
        v.push(CheckRecord::truth(
            "range.N4.k1.k2.w2,2.multiplier",
            serde_json::json!({"multiplier": m.to_string()}),
            Ok((m == ratio(36, 1) || m == ratio(-36, 1)) && rr.norm > ratio(0, 1)),
            || format!("multiplier {m}, residual {}", rr.norm),
        ));
        let image = radon_forward(&random_function(&pair, Side::Source, &[Weight::new(4, vec![2, 0])?], &mut rng)?)?;
        v.push(CheckRecord::truth("range.N4.k1.k2.image", serde_json::Value::Null, Ok(range_residual(&image)?.norm == ratio(0, 1)), || {
            "residual on the image is nonzero".into()
        }));
        Ok(v)
    }));
    outcomes.push(criterion(11, "spectral vs direct", || {
        Ok(vec![radon_oracle_check(&GrassmannPair::new(4, 1, 2)?, 2, 10, 100_000, SEED)?])
    }));
    outcomes.push(criterion(12, "dual kernel / surjectivity", || {
        let v = pick(&radon, &["dual_kernel", "surjective"]);
        let kernels = v.iter().filter(|c| c.id.ends_with("dual_kernel")).count();
        if kernels != RADON_PAIRS.len() {
            return Ok(vec![CheckRecord::fail("dual_kernel.count", serde_json::Value::Null, format!("{kernels} witnesses"))]);
        }
        Ok(v)
    }));
    outcomes.push(criterion(13, "Q leading coefficient", || q_leading_checks(20, SEED)));

    println!();
    for o in &outcomes {
        o.report();
    }

    let known: BTreeSet<&str> = KNOWN_FAILURES.into_iter().collect();
    let unexpected: Vec<&str> = outcomes
        .iter()
        .flat_map(|o| o.checks.iter())
        .filter(|c| !c.passed && !known.contains(c.id.as_str()))
        .map(|c| c.id.as_str())
        .collect();
    let passed = outcomes.iter().filter(|o| o.passed()).count();
    println!("\n{passed}/{} criteria passed", outcomes.len());
    if outcomes.iter().any(|o| o.checks.is_empty()) {
        eprintln!("a criterion produced no checks");
        std::process::exit(1);
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
