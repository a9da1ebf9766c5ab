//! The spectral Radon transform between `SO(N)/H_{k1}` and `SO(N)/H_{k2}`,
//! `H_k = S(O(N−k) × O(k))`, with a Monte-Carlo integration oracle.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hc_eigen::{d_general, d_one, dominant_weights, has_fixed_vector, Weight};
use crate::linalg::SparseVec;
use crate::repmod::{averaged_vector, fixed_subspace, shared_irrep, DefiningFrame};
use crate::scalar::{GaussianRational as Q, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GrassmannPair {
    #[serde(rename = "N")]
    pub n: usize,
    pub k1: usize,
    pub k2: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// `r < r'`: forward is injective, dual is surjective.
    Forward,
    /// `r = r'`: both directions are bijective on the common spectrum.
    Balanced,
    /// `r > r'`: forward is surjective and not injective.
    Reversed,
}

impl GrassmannPair {
    pub fn new(n: usize, k1: usize, k2: usize) -> Result<Self> {
        crate::liealg::check_n(n)?;
        if k1 == 0 || k2 == 0 || k1 >= n || k2 >= n {
            return Err(Error::domain(format!("need 1 ≤ k1, k2 < N, got N={n}, k1={k1}, k2={k2}")));
        }
        if k1 == k2 {
            return Err(Error::domain(format!("k1 and k2 must differ, both are {k1}")));
        }
        Ok(Self { n, k1, k2 })
    }

    pub fn r(&self) -> usize {
        self.k1.min(self.n - self.k1)
    }

    pub fn r_prime(&self) -> usize {
        self.k2.min(self.n - self.k2)
    }

    pub fn orientation(&self) -> Orientation {
        match self.r().cmp(&self.r_prime()) {
            std::cmp::Ordering::Less => Orientation::Forward,
            std::cmp::Ordering::Equal => Orientation::Balanced,
            std::cmp::Ordering::Greater => Orientation::Reversed,
        }
    }

    pub fn k(&self, side: Side) -> usize {
        match side {
            Side::Source => self.k1,
            Side::Target => self.k2,
        }
    }

    pub fn summary(&self) -> serde_json::Value {
        serde_json::json!({
            "N": self.n, "k1": self.k1, "k2": self.k2,
            "r": self.r(), "r_prime": self.r_prime(), "orientation": self.orientation(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Source,
    Target,
}

/// The averaged fixed vector of `H_k` in `V_λ`.
#[derive(Debug)]
pub struct FixedLine {
    pub coords: Vec<Q>,
    pub ambient: SparseVec,
    pub norm_sqr: Rational,
}

type LineCache = Mutex<HashMap<(Weight, usize), Arc<Option<FixedLine>>>>;

/// Averaged fixed line of `H_k` in `V_λ`, or `None` when there are no fixed vectors.
pub fn fixed_line(weight: &Weight, k: usize) -> Result<Arc<Option<FixedLine>>> {
    static CACHE: OnceLock<LineCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (weight.clone(), k);
    if let Some(v) = cache.lock().expect("fixed line cache poisoned").get(&key) {
        return Ok(v.clone());
    }
    let rho = shared_irrep(weight)?;
    let line = if fixed_subspace(&rho, k)?.dim() == 0 {
        None
    } else {
        let coords = averaged_vector(&rho, k)?;
        let ambient = rho.embed(&coords);
        let norm_sqr = rho.ambient_inner(&ambient, &ambient).re().clone();
        Some(FixedLine { coords, ambient, norm_sqr })
    };
    let line = Arc::new(line);
    Ok(cache.lock().expect("fixed line cache poisoned").entry(key).or_insert(line).clone())
}

/// `(⟨ṽ_T, ṽ_S⟩, ‖ṽ_S‖², ‖ṽ_T‖²)` for the averaged fixed vectors.
pub fn pairing_triple(pair: &GrassmannPair, weight: &Weight) -> Result<Option<(Q, Rational, Rational)>> {
    let (s, t) = (fixed_line(weight, pair.k1)?, fixed_line(weight, pair.k2)?);
    let (Some(s), Some(t)) = (s.as_ref(), t.as_ref()) else {
        return Ok(None);
    };
    let rho = shared_irrep(weight)?;
    Ok(Some((rho.ambient_inner(&t.ambient, &s.ambient), s.norm_sqr.clone(), t.norm_sqr.clone())))
}

/// Multiplier applied to coefficient vectors by the forward transform:
/// `conj(⟨ṽ_T, ṽ_S⟩) / ‖ṽ_T‖²`.
pub fn forward_multiplier(pair: &GrassmannPair, weight: &Weight) -> Result<Option<Q>> {
    Ok(pairing_triple(pair, weight)?.map(|(inner, _, nt)| inner.conj().scale(&nt.recip())))
}

/// Multiplier applied by the dual transform: `⟨ṽ_T, ṽ_S⟩ / ‖ṽ_S‖²`.
pub fn dual_multiplier(pair: &GrassmannPair, weight: &Weight) -> Result<Option<Q>> {
    Ok(pairing_triple(pair, weight)?.map(|(inner, ns, _)| inner.scale(&ns.recip())))
}

/// `f(u) = Σ_λ dim V_λ · ⟨w_λ, π_λ(u) ṽ_λ⟩` with `ṽ_λ` the averaged fixed vector of the side.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralFunction {
    pub pair: GrassmannPair,
    pub side: Side,
    #[serde(with = "component_list")]
    pub components: BTreeMap<Weight, Vec<Q>>,
}

mod component_list {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Component {
        weight: Weight,
        coeffs: Vec<Q>,
    }

    pub fn serialize<S: Serializer>(m: &BTreeMap<Weight, Vec<Q>>, s: S) -> std::result::Result<S::Ok, S::Error> {
        let list: Vec<Component> = m.iter().map(|(w, c)| Component { weight: w.clone(), coeffs: c.clone() }).collect();
        list.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BTreeMap<Weight, Vec<Q>>, D::Error> {
        let list = Vec::<Component>::deserialize(d)?;
        Ok(list.into_iter().map(|c| (c.weight, c.coeffs)).collect())
    }
}

impl SpectralFunction {
    pub fn zero(pair: GrassmannPair, side: Side) -> Self {
        Self { pair, side, components: BTreeMap::new() }
    }

    /// Validates every component and drops zero ones.
    pub fn new(pair: GrassmannPair, side: Side, components: BTreeMap<Weight, Vec<Q>>) -> Result<Self> {
        let k = pair.k(side);
        let mut kept = BTreeMap::new();
        for (w, v) in components {
            if w.n() != pair.n {
                return Err(Error::DimensionMismatch(format!("weight {w:?} on so({})", pair.n)));
            }
            let rho = shared_irrep(&w)?;
            if v.len() != rho.dim() {
                return Err(Error::DimensionMismatch(format!("{w} has dim {}, got {} coefficients", rho.dim(), v.len())));
            }
            if fixed_line(&w, k)?.is_none() {
                return Err(Error::domain(format!("{w} has no H_{k}-fixed vector")));
            }
            if v.iter().any(|x| !x.is_zero()) {
                kept.insert(w, v);
            }
        }
        Ok(Self { pair, side, components: kept })
    }

    /// The constant function `c`.
    pub fn constant(pair: GrassmannPair, side: Side, c: Q) -> Result<Self> {
        let w = Weight::zero(pair.n);
        let line = fixed_line(&w, pair.k(side))?;
        let line = line.as_ref().as_ref().expect("trivial representation is fixed");
        // ⟨aṽ, ṽ⟩ = conj(a)‖ṽ‖²
        let coef = c.conj().scale(&line.norm_sqr.recip());
        let coords: Vec<Q> = line.coords.iter().map(|x| &coef * x).collect();
        Self::new(pair, side, [(w, coords)].into_iter().collect())
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn weights(&self) -> impl Iterator<Item = &Weight> {
        self.components.keys()
    }

    fn map_components(&self, side: Side, mut f: impl FnMut(&Weight, &[Q]) -> Result<Option<Vec<Q>>>) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (w, v) in &self.components {
            if let Some(nv) = f(w, v)? {
                out.insert(w.clone(), nv);
            }
        }
        Self::new(self.pair, side, out)
    }

    /// `L²` norm squared over `SO(N)`: `Σ dim V_λ ‖w_λ‖² ‖ṽ_λ‖²`.
    pub fn norm_sqr(&self) -> Result<Rational> {
        let k = self.pair.k(self.side);
        let mut acc = Rational::zero();
        for (w, v) in &self.components {
            let rho = shared_irrep(w)?;
            let line = fixed_line(w, k)?;
            let line = line.as_ref().as_ref().expect("validated");
            let wn = rho.inner(v, v).re().clone();
            acc += Rational::from_integer((rho.dim() as i64).into()) * wn * line.norm_sqr.clone();
        }
        Ok(acc)
    }

    pub fn norm_f64(&self) -> Result<f64> {
        Ok(crate::scalar::rational_to_f64(&self.norm_sqr()?).sqrt())
    }

    /// Point evaluation at a real orthogonal matrix given by rows.
    pub fn evaluate(&self, u: &[Vec<f64>]) -> Result<Complex64> {
        check_orthogonal_f64(u, self.pair.n)?;
        Ok(self.prepare()?.evaluate(u))
    }

    /// Float data for repeated evaluation.
    pub fn prepare(&self) -> Result<PreparedFunction> {
        let k = self.pair.k(self.side);
        let mut terms = Vec::new();
        for (w, v) in &self.components {
            let rho = shared_irrep(w)?;
            let line = fixed_line(w, k)?;
            let line = line.as_ref().as_ref().expect("validated");
            let scale = rho.dim() as f64;
            for (&i, x) in &rho.embed(v) {
                let a = x.conj().to_complex64() * rho.frame_weight(i) * scale;
                let di = rho.ambient_digits(i);
                for (&j, y) in &line.ambient {
                    terms.push((a * y.to_complex64(), di.iter().copied().zip(rho.ambient_digits(j)).collect()));
                }
            }
        }
        Ok(PreparedFunction { frame: DefiningFrame::new(self.pair.n), terms })
    }
}

/// `Σ c · Π_p U_f[a_p][b_p]` with `U_f` the matrix in the weight frame.
pub struct PreparedFunction {
    frame: DefiningFrame,
    terms: Vec<(Complex64, Vec<(usize, usize)>)>,
}

impl PreparedFunction {
    pub fn evaluate(&self, u: &[Vec<f64>]) -> Complex64 {
        let uf = self.frame.conjugate_f64(u);
        self.terms.iter().map(|(c, idx)| idx.iter().fold(*c, |acc, &(a, b)| acc * uf[a][b])).sum()
    }
}

fn require_side(f: &SpectralFunction, side: Side) -> Result<()> {
    if f.side != side {
        return Err(Error::domain(format!("expected a function on the {side:?} side, got {:?}", f.side)));
    }
    Ok(())
}

/// `(R f)(u) = ∫_{H_{k2}} f(u h) dh`.
pub fn radon_forward(f: &SpectralFunction) -> Result<SpectralFunction> {
    require_side(f, Side::Source)?;
    let pair = f.pair;
    f.map_components(Side::Target, |w, v| match forward_multiplier(&pair, w)? {
        Some(m) => Ok(Some(v.iter().map(|x| &m * x).collect())),
        None if pair.orientation() == Orientation::Reversed => Ok(None),
        None => Err(Error::internal(format!("{w} is fixed by H_{} but not by H_{}", pair.k1, pair.k2))),
    })
}

/// `(R* g)(u) = ∫_{H_{k1}} g(u h) dh`; components without source fixed vectors vanish.
pub fn radon_dual(g: &SpectralFunction) -> Result<SpectralFunction> {
    require_side(g, Side::Target)?;
    let pair = g.pair;
    g.map_components(Side::Source, |w, v| Ok(dual_multiplier(&pair, w)?.map(|m| v.iter().map(|x| &m * x).collect())))
}

/// Restriction to the common spectrum divided by the forward multiplier.
pub fn radon_plus(g: &SpectralFunction) -> Result<SpectralFunction> {
    require_side(g, Side::Target)?;
    let pair = g.pair;
    g.map_components(Side::Source, |w, v| match forward_multiplier(&pair, w)? {
        None => Ok(None),
        Some(m) => {
            let inv = m.inv().ok_or_else(|| Error::internal(format!("pairing vanishes at {w}")))?;
            Ok(Some(v.iter().map(|x| &inv * x).collect()))
        }
    })
}

/// Result of [`range_residual`].
#[derive(Clone, Debug, PartialEq)]
pub struct RangeResidual {
    pub residual: SpectralFunction,
    pub norm: Rational,
    pub multipliers: BTreeMap<Weight, Rational>,
}

/// Scales each component by `D_{r+1}^N(λ)`; zero exactly on the range of the forward transform.
pub fn range_residual(g: &SpectralFunction) -> Result<RangeResidual> {
    require_side(g, Side::Target)?;
    let pair = g.pair;
    let r = pair.r();
    if 2 * (r + 1) > pair.n {
        return Err(Error::domain(format!("no range operator W_{} for N={}", r + 1, pair.n)));
    }
    let mut multipliers = BTreeMap::new();
    let mut norm = Rational::zero();
    let mut comps = BTreeMap::new();
    for (w, v) in &g.components {
        let d = if pair.orientation() == Orientation::Balanced { Rational::zero() } else { d_general(pair.n, r + 1, w)? };
        let rho = shared_irrep(w)?;
        let wn = rho.inner(v, v).re().clone();
        norm += &d * &d * wn * Rational::from_integer((rho.dim() as i64).into());
        let dq = Q::from_rational(d.clone());
        comps.insert(w.clone(), v.iter().map(|x| &dq * x).collect());
        multipliers.insert(w.clone(), d);
    }
    Ok(RangeResidual { residual: SpectralFunction::new(pair, Side::Target, comps)?, norm, multipliers })
}

/// One row of [`spectra_catalog`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub weight: Weight,
    pub dim: usize,
    pub in_source: bool,
    pub in_target: bool,
    /// `|⟨ṽ_S, ṽ_T⟩|² / (‖ṽ_S‖² ‖ṽ_T‖²)` when both sides have fixed vectors.
    pub c_sq: Option<String>,
    /// `(r, D_r^N(λ))` for `1 ≤ r ≤ [N/2]`.
    pub d_values: Vec<(usize, String)>,
}

pub fn spectra_catalog(pair: &GrassmannPair, max_degree: usize) -> Result<Vec<CatalogEntry>> {
    if max_degree > crate::repmod::MAX_IRREP_DEGREE {
        return Err(Error::resource(format!("catalog degree {max_degree} exceeds {}", crate::repmod::MAX_IRREP_DEGREE)));
    }
    let n = pair.n;
    let mut out = Vec::new();
    for w in dominant_weights(n, max_degree) {
        let rho = shared_irrep(&w)?;
        let in_source = fixed_line(&w, pair.k1)?.is_some();
        let in_target = fixed_line(&w, pair.k2)?.is_some();
        let c_sq = pairing_triple(pair, &w)?.map(|(inner, a, b)| (inner.norm_sqr() / (a * b)).to_string());
        let mut d_values = vec![(1, d_one(n, &w)?.to_string())];
        for r in 2..=n / 2 {
            d_values.push((r, d_general(n, r, &w)?.to_string()));
        }
        out.push(CatalogEntry { weight: w, dim: rho.dim(), in_source, in_target, c_sq, d_values });
    }
    Ok(out)
}

/// A nonzero target function killed by the dual transform, searching weights up to `max_degree`.
pub fn dual_kernel_witness(pair: &GrassmannPair, max_degree: usize) -> Result<Option<SpectralFunction>> {
    if max_degree > crate::repmod::MAX_IRREP_DEGREE {
        return Err(Error::resource(format!("witness degree {max_degree} exceeds {}", crate::repmod::MAX_IRREP_DEGREE)));
    }
    for w in dominant_weights(pair.n, max_degree) {
        if !has_fixed_vector(pair.n, pair.k2, &w)? || has_fixed_vector(pair.n, pair.k1, &w)? {
            continue;
        }
        if let Some(line) = fixed_line(&w, pair.k2)?.as_ref() {
            let comps = [(w.clone(), line.coords.clone())].into_iter().collect();
            return Ok(Some(SpectralFunction::new(*pair, Side::Target, comps)?));
        }
    }
    Ok(None)
}

/// Random function on `side` supported on `weights` with small Gaussian-integer coefficients.
pub fn random_function(pair: &GrassmannPair, side: Side, weights: &[Weight], rng: &mut impl Rng) -> Result<SpectralFunction> {
    let mut comps = BTreeMap::new();
    for w in weights {
        let dim = shared_irrep(w)?.dim();
        let v: Vec<Q> = (0..dim).map(|_| Q::from_ints(rng.random_range(-2..=2), rng.random_range(-2..=2))).collect();
        comps.insert(w.clone(), v);
    }
    SpectralFunction::new(*pair, side, comps)
}

/// Weights of the catalog that carry fixed vectors on `side`.
pub fn side_weights(pair: &GrassmannPair, side: Side, max_degree: usize) -> Result<Vec<Weight>> {
    Ok(spectra_catalog(pair, max_degree)?
        .into_iter()
        .filter(|e| match side {
            Side::Source => e.in_source,
            Side::Target => e.in_target,
        })
        .map(|e| e.weight)
        .collect())
}

// ------------------------------------------------------------- float helpers

pub fn check_orthogonal_f64(u: &[Vec<f64>], n: usize) -> Result<()> {
    if u.len() != n || u.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch(format!("expected a {n}x{n} matrix")));
    }
    for i in 0..n {
        for j in 0..n {
            let dot: f64 = (0..n).map(|t| u[t][i] * u[t][j]).sum();
            let want = if i == j { 1.0 } else { 0.0 };
            if (dot - want).abs() > 1e-12 {
                return Err(Error::domain(format!("matrix is not orthogonal: (uᵀu)[{i},{j}] = {dot}")));
            }
        }
    }
    if (det_f64(u) - 1.0).abs() > 1e-9 {
        return Err(Error::domain("matrix does not have determinant 1"));
    }
    Ok(())
}

pub fn det_f64(u: &[Vec<f64>]) -> f64 {
    let n = u.len();
    let mut a: Vec<Vec<f64>> = u.to_vec();
    let mut det = 1.0;
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| a[x][c].abs().total_cmp(&a[y][c].abs())).expect("nonempty");
        if a[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c];
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for t in c..n {
                a[r][t] -= f * a[c][t];
            }
        }
    }
    det
}

pub fn matmul_f64(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let m = b[0].len();
    (0..n).map(|i| (0..m).map(|j| (0..b.len()).map(|t| a[i][t] * b[t][j]).sum()).collect()).collect()
}

/// Haar-random element of `O(m)`: Gram–Schmidt on a Gaussian matrix, which
/// leaves the triangular factor with positive diagonal.
pub fn haar_orthogonal(m: usize, rng: &mut impl Rng) -> Vec<Vec<f64>> {
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(m);
    while cols.len() < m {
        let mut v: Vec<f64> = (0..m).map(|_| rng.sample(StandardNormal)).collect();
        for c in &cols {
            let d: f64 = c.iter().zip(&v).map(|(a, b)| a * b).sum();
            for (x, y) in v.iter_mut().zip(c) {
                *x -= d * y;
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-10 {
            cols.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    (0..m).map(|r| (0..m).map(|c| cols[c][r]).collect()).collect()
}

/// Haar-random element of `S(O(N−k) × O(k))`.
pub fn haar_block(n: usize, k: usize, rng: &mut impl Rng) -> Vec<Vec<f64>> {
    let split = n - k;
    let mut a = haar_orthogonal(split, rng);
    let b = haar_orthogonal(k, rng);
    if det_f64(&a) * det_f64(&b) < 0.0 {
        for row in a.iter_mut() {
            row[0] = -row[0];
        }
    }
    let mut u = vec![vec![0.0; n]; n];
    for i in 0..split {
        u[i][..split].copy_from_slice(&a[i]);
    }
    for i in 0..k {
        u[split + i][split..].copy_from_slice(&b[i]);
    }
    u
}

/// Haar-random element of `SO(N)`.
pub fn haar_special_orthogonal(n: usize, rng: &mut impl Rng) -> Vec<Vec<f64>> {
    let mut u = haar_orthogonal(n, rng);
    if det_f64(&u) < 0.0 {
        for row in u.iter_mut() {
            row[0] = -row[0];
        }
    }
    u
}

/// Monte-Carlo average of `f(u h)` over Haar-random `h ∈ H_{k2}`.
pub fn direct_forward_oracle(f: &SpectralFunction, u: &[Vec<f64>], samples: usize, seed: u64) -> Result<Complex64> {
    require_side(f, Side::Source)?;
    if samples == 0 {
        return Err(Error::domain("samples must be at least 1"));
    }
    check_orthogonal_f64(u, f.pair.n)?;
    let prepared = f.prepare()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = Complex64::new(0.0, 0.0);
    for _ in 0..samples {
        let h = haar_block(f.pair.n, f.pair.k2, &mut rng);
        acc += prepared.evaluate(&matmul_f64(u, &h));
    }
    Ok(acc / samples as f64)
}

/// Mean absolute error between the spectral forward transform and the
/// Monte-Carlo oracle over `points` Haar-random evaluation points.
pub fn oracle_mae(f: &SpectralFunction, points: usize, samples: usize, seed: u64) -> Result<f64> {
    let g = radon_forward(f)?.prepare()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut total = 0.0;
    for t in 0..points {
        let u = haar_special_orthogonal(f.pair.n, &mut rng);
        let spectral = g.evaluate(&u);
        let direct = direct_forward_oracle(f, &u, samples, seed.wrapping_add(t as u64))?;
        total += (spectral - direct).norm();
    }
    Ok(total / points as f64)
}

/// True when `radon_plus(radon_forward(f)) = f` exactly.
pub fn inversion_exact(f: &SpectralFunction) -> Result<bool> {
    Ok(radon_plus(&radon_forward(f)?)? == *f)
}
