//! Verification suites: each check evaluates one identity exactly and
//! records a witness when it fails.

use std::sync::Arc;
use std::time::Instant;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::enveloping::{
    adjoint, hc_project, increasing_sequences, laplace_expand_in, pfaffian_casimir_in,
    pfaffian_in, Algebra, UElement,
};
use crate::error::{Error, Result};
use crate::hc_eigen::{
    annihilation_bound_check, d_is_zero, d_value, dominant_weights, has_fixed_vector, q_leading_prediction,
    q_mixed_second_difference, PairParams, Weight,
};
use crate::radon::{
    dual_kernel_witness, inversion_exact, oracle_mae, pairing_triple, radon_dual, radon_forward, radon_plus,
    random_function, range_residual, side_weights, spectra_catalog, GrassmannPair, Orientation, Side,
};
use crate::repmod::{central_scalar, fixed_subspace, shared_irrep};
use crate::liealg::{nilpotent_generator, pairs};
use crate::linalg::Matrix;
use crate::scalar::{ratio, GaussianRational as Q, Rational};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub params: Value,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckRecord {
    pub fn pass(id: impl Into<String>, params: Value) -> Self {
        Self { id: id.into(), params, passed: true, witness: None }
    }

    pub fn fail(id: impl Into<String>, params: Value, witness: impl Into<String>) -> Self {
        Self { id: id.into(), params, passed: false, witness: Some(witness.into()) }
    }

    /// Passes iff `diff` evaluated to the zero element.
    pub fn zero(id: impl Into<String>, params: Value, diff: Result<UElement>) -> Self {
        match diff {
            Ok(d) if d.is_zero() => Self::pass(id, params),
            Ok(d) => Self::fail(id, params, truncate(&d.pretty())),
            Err(e) => Self::fail(id, params, format!("error: {e}")),
        }
    }

    pub fn truth(id: impl Into<String>, params: Value, ok: Result<bool>, witness: impl FnOnce() -> String) -> Self {
        match ok {
            Ok(true) => Self::pass(id, params),
            Ok(false) => Self::fail(id, params, witness()),
            Err(e) => Self::fail(id, params, format!("error: {e}")),
        }
    }
}

fn truncate(s: &str) -> String {
    const LIMIT: usize = 2000;
    if s.len() <= LIMIT {
        return s.to_string();
    }
    let mut end = LIMIT;
    while !s.is_char_boundary(end) {
        end -= 1;
    }
    format!("{}…", &s[..end])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckRecord>,
    pub wall_time_ms: u64,
    pub params: Value,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Runs `body`, timing it and sorting the checks by id.
pub fn run_suite(
    suite: &str,
    params: Value,
    body: impl FnOnce() -> Result<Vec<CheckRecord>>,
) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut checks = body()?;
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(SuiteReport { suite: suite.to_string(), checks, wall_time_ms: start.elapsed().as_millis() as u64, params })
}

fn without(index: &[usize], drop: &[usize]) -> Vec<usize> {
    index.iter().copied().filter(|i| !drop.contains(i)).collect()
}

fn with(index: &[usize], add: usize) -> Vec<usize> {
    let mut v = index.to_vec();
    v.push(add);
    v.sort_unstable();
    v
}

fn sign(e: i64) -> Q {
    Q::from_int(if e.rem_euclid(2) == 0 { 1 } else { -1 })
}

fn sgn(a: usize, b: usize) -> i64 {
    if a > b {
        1
    } else {
        -1
    }
}

fn even_index_sets(n: usize, sizes: &[usize]) -> Vec<Vec<usize>> {
    sizes.iter().filter(|&&k| k <= n).flat_map(|&k| increasing_sequences(k, 1, n)).collect()
}

// ---------------------------------------------------------------- centrality

/// `[W̃_p, X̃_st] = 0` for every generator and every admissible `p`.
pub fn centrality_checks(ns: &[usize]) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for &n in ns {
        let alg = Algebra::shared(n, 0)?;
        for p in 1..=n / 2 {
            let w = pfaffian_casimir_in(&alg, p)?;
            for (s, t) in pairs(n) {
                let x = UElement::generator(&alg, s, t)?;
                out.push(CheckRecord::zero(
                    format!("centrality.N{n}.p{p}.X{s}{t}"),
                    json!({"N": n, "p": p, "s": s, "t": t}),
                    w.commutator(&x),
                ));
            }
        }
    }
    Ok(out)
}

// ------------------------------------------------------------------ adjoint

/// Random element of `SO(N)` permuting coordinates up to sign.
pub fn random_signed_permutation(n: usize, rng: &mut impl Rng) -> Matrix {
    loop {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        let mut u = Matrix::zeros(n, n);
        for (col, &row) in perm.iter().enumerate() {
            u[(row, col)] = Q::from_int(if rng.random_bool(0.5) { 1 } else { -1 });
        }
        if u.det().expect("square") != Q::one() {
            u[(perm[0], 0)] = -u[(perm[0], 0)].clone();
        }
        if u != Matrix::identity(n) {
            return u;
        }
    }
}

/// Cayley transform `(1 − A)^{-1}(1 + A)` of a random rational antisymmetric
/// matrix: an exact rational rotation.
pub fn random_rational_rotation(n: usize, rng: &mut impl Rng) -> Matrix {
    let mut a = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = Q::from_rational(ratio(rng.random_range(-3..=3), rng.random_range(1..=4)));
            a[(i, j)] = v.clone();
            a[(j, i)] = -v;
        }
    }
    let id = Matrix::identity(n);
    let minus = id.sub(&a).expect("same shape");
    let plus = Matrix::identity(n).sub(&a.scale(&-Q::one())).expect("same shape");
    minus.inverse().expect("1 − A is invertible for antisymmetric A").mul(&plus).expect("square")
}

/// The plane rotation with cosine `3/5` and sine `4/5` in coordinates `1, 2`.
pub fn pythagorean_rotation(n: usize) -> Matrix {
    let (c, s) = (Q::from_rational(ratio(3, 5)), Q::from_rational(ratio(4, 5)));
    let mut r = Matrix::identity(n);
    r[(0, 0)] = c.clone();
    r[(0, 1)] = -s.clone();
    r[(1, 0)] = s;
    r[(1, 1)] = c;
    r
}

/// `Ad(u) W̃_I = Σ_J det(u[J, I]) W̃_J`.
pub fn adjoint_covariance(alg: &Arc<Algebra>, u: &Matrix, index: &[usize]) -> Result<UElement> {
    let n = alg.n();
    let lhs = adjoint(u, &pfaffian_in(alg, index)?)?;
    let cols: Vec<usize> = index.iter().map(|i| i - 1).collect();
    let mut rhs = UElement::zero(alg);
    for j in increasing_sequences(index.len(), 1, n) {
        let rows: Vec<usize> = j.iter().map(|i| i - 1).collect();
        let minor = u.minor(&rows, &cols)?;
        if !minor.is_zero() {
            rhs = rhs.add(&pfaffian_in(alg, &j)?.scale(&minor))?;
        }
    }
    lhs.sub(&rhs)
}

pub fn adjoint_checks(ns: &[usize], per_n: usize, seed: u64) -> Result<Vec<CheckRecord>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for &n in ns {
        let alg = Algebra::shared(n, 0)?;
        let mut mats: Vec<(String, Matrix)> = (0..per_n)
            .map(|t| (format!("perm{t}"), random_signed_permutation(n, &mut rng)))
            .collect();
        mats.push(("rot34".into(), pythagorean_rotation(n)));
        mats.push(("cayley".into(), random_rational_rotation(n, &mut rng)));
        for (name, u) in &mats {
            for index in even_index_sets(n, &[2, 4]) {
                out.push(CheckRecord::zero(
                    format!("adjoint.N{n}.{name}.I{}", compact(&index)),
                    json!({"N": n, "u": name, "I": index}),
                    adjoint_covariance(&alg, u, &index),
                ));
            }
        }
    }
    Ok(out)
}

fn compact(index: &[usize]) -> String {
    index.iter().map(usize::to_string).collect::<Vec<_>>().join("")
}

// ------------------------------------------------------------------ laplace

pub fn laplace_checks(ns: &[usize]) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for &n in ns {
        let alg = Algebra::shared(n, 0)?;
        for index in even_index_sets(n, &[2, 4, 6]) {
            let w = pfaffian_in(&alg, &index)?;
            for q in 1..=index.len() {
                let diff = laplace_expand_in(&alg, &index, q).and_then(|e| e.sub(&w));
                out.push(CheckRecord::zero(
                    format!("laplace.N{n}.I{}.q{q}", compact(&index)),
                    json!({"N": n, "I": index, "q": q}),
                    diff,
                ));
            }
        }
    }
    Ok(out)
}

// ------------------------------------------------------------------- lemmas

/// Commutation of `W̃_I` with `X̃_st`: either they commute, or the
/// commutator is a single signed Pfaffian element.
pub fn pfaffian_generator_commutation(alg: &Arc<Algebra>, index: &[usize], s: usize, t: usize) -> Result<UElement> {
    let w = pfaffian_in(alg, index)?;
    let x = UElement::generator(alg, s, t)?;
    let lhs = w.multiply(&x)?;
    let mut rhs = x.multiply(&w)?;
    let (s_in, t_in) = (index.contains(&s), index.contains(&t));
    if s_in && !t_in {
        let q = index.iter().position(|&i| i == s).expect("member") + 1;
        let j = with(&without(index, &[s]), t);
        let r = j.iter().position(|&i| i == t).expect("member") + 1;
        let wj = pfaffian_in(alg, &j)?;
        rhs = rhs.sub(&wj.scale(&sign(q as i64 - r as i64)))?;
    } else if !s_in && t_in {
        return Err(Error::domain("case s ∉ I, t ∈ I is handled by antisymmetry"));
    }
    lhs.sub(&rhs)
}

/// `Σ_{l≠q,r} sgn(q−l) sgn(r−l) (−1)^{l−1} X̃_{i_q,i_l} W̃_{I∖{i_l,i_r}} − (−1)^{q−1}(p+1) W̃_{I∖{i_q,i_r}}`.
pub fn contraction_identity(alg: &Arc<Algebra>, index: &[usize], q: usize, r: usize) -> Result<UElement> {
    let len = index.len();
    let p = (len - 4) / 2;
    let mut lhs = UElement::zero(alg);
    for l in 1..=len {
        if l == q || l == r {
            continue;
        }
        let c = sgn(q, l) * sgn(r, l) * if (l - 1) % 2 == 0 { 1 } else { -1 };
        let x = UElement::generator(alg, index[q - 1], index[l - 1])?;
        let w = pfaffian_in(alg, &without(index, &[index[l - 1], index[r - 1]]))?;
        lhs = lhs.add(&x.multiply(&w)?.scale(&Q::from_int(c)))?;
    }
    let rhs = pfaffian_in(alg, &without(index, &[index[q - 1], index[r - 1]]))?
        .scale(&(&sign(q as i64 - 1) * &Q::from_int(p as i64 + 1)));
    lhs.sub(&rhs)
}

/// `Σ_{2≤l≤2p+3} (−1)^l X̃_{i_1,i_l} W̃_{I∖{i_l,i_last}} − (p+1) W̃_{I∖{i_1,i_last}}`.
pub fn first_row_contraction(alg: &Arc<Algebra>, index: &[usize]) -> Result<UElement> {
    let len = index.len();
    let p = (len - 4) / 2;
    let last = index[len - 1];
    let mut lhs = UElement::zero(alg);
    for l in 2..len {
        let x = UElement::generator(alg, index[0], index[l - 1])?;
        let w = pfaffian_in(alg, &without(index, &[index[l - 1], last]))?;
        lhs = lhs.add(&x.multiply(&w)?.scale(&sign(l as i64)))?;
    }
    let rhs = pfaffian_in(alg, &without(index, &[index[0], last]))?.scale(&Q::from_int(p as i64 + 1));
    lhs.sub(&rhs)
}

fn nil1(alg: &Arc<Algebra>, l: usize) -> Result<UElement> {
    UElement::from_lie(alg, &nilpotent_generator(alg.n(), 1, l)?)
}

/// With `1, N ∈ I` and `J = I∖{1,N}`: `W̃_J Ñ¹_{i_q} − Ñ¹_{i_q} W̃_J − Σ_k … Ñ¹_{i_k} W̃_{I∖{1,i_q,i_k,N}}`.
pub fn nilpotent_commutation_inner(alg: &Arc<Algebra>, index: &[usize], q: usize) -> Result<UElement> {
    let n = alg.n();
    let len = index.len();
    let inner = without(index, &[1, n]);
    let wj = pfaffian_in(alg, &inner)?;
    let e = nil1(alg, index[q - 1])?;
    let mut rhs = e.multiply(&wj)?;
    for k in 2..len {
        if k == q {
            continue;
        }
        let c = sgn(q, k) * if (k + q) % 2 == 0 { 1 } else { -1 };
        let ek = nil1(alg, index[k - 1])?;
        let w = pfaffian_in(alg, &without(index, &[1, index[q - 1], index[k - 1], n]))?;
        rhs = rhs.add(&ek.multiply(&w)?.scale(&Q::from_int(c)))?;
    }
    wj.multiply(&e)?.sub(&rhs)
}

/// With `1 ∈ I`, `N ∉ I`: `W̃_I Ñ¹_{i_q} − Ñ¹_{i_q} W̃_I − (−1)^{q−1} W̃_{I∪{N}∖{i_q}}`.
pub fn nilpotent_commutation_outer(alg: &Arc<Algebra>, index: &[usize], q: usize) -> Result<UElement> {
    let n = alg.n();
    let w = pfaffian_in(alg, index)?;
    let e = nil1(alg, index[q - 1])?;
    let swapped = pfaffian_in(alg, &with(&without(index, &[index[q - 1]]), n))?;
    w.multiply(&e)?.sub(&e.multiply(&w)?)?.sub(&swapped.scale(&sign(q as i64 - 1)))
}

pub fn lemma_checks(ns: &[usize]) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for &n in ns {
        let alg = Algebra::shared(n, 1.min(n / 2))?;
        // Pfaffian/generator commutation, |I| = 2p+2 with p ≥ 1.
        for index in even_index_sets(n, &[4, 6]) {
            for s in 1..=n {
                for t in 1..=n {
                    if s == t || (!index.contains(&s) && index.contains(&t)) {
                        continue;
                    }
                    out.push(CheckRecord::zero(
                        format!("lemma.commute.N{n}.I{}.s{s}.t{t}", compact(&index)),
                        json!({"N": n, "I": index, "s": s, "t": t}),
                        pfaffian_generator_commutation(&alg, &index, s, t),
                    ));
                }
            }
        }
        // Contraction identities, |I| = 2p+4.
        for index in even_index_sets(n, &[4, 6]) {
            // q at either end of I.
            for q in [1, index.len()] {
                for r in 1..=index.len() {
                    if q != r {
                        out.push(CheckRecord::zero(
                            format!("lemma.contract.N{n}.I{}.q{q}.r{r}", compact(&index)),
                            json!({"N": n, "I": index, "q": q, "r": r}),
                            contraction_identity(&alg, &index, q, r),
                        ));
                    }
                }
            }
            out.push(CheckRecord::zero(
                format!("lemma.first_row.N{n}.I{}", compact(&index)),
                json!({"N": n, "I": index}),
                first_row_contraction(&alg, &index),
            ));
        }
        // Commutation with the first nilpotent piece.
        for index in even_index_sets(n, &[4, 6]) {
            if index[0] != 1 {
                continue;
            }
            if index.contains(&n) {
                for q in 2..index.len() {
                    out.push(CheckRecord::zero(
                        format!("lemma.nil_inner.N{n}.I{}.q{q}", compact(&index)),
                        json!({"N": n, "I": index, "q": q}),
                        nilpotent_commutation_inner(&alg, &index, q),
                    ));
                }
            } else {
                for q in 2..=index.len() {
                    out.push(CheckRecord::zero(
                        format!("lemma.nil_outer.N{n}.I{}.q{q}", compact(&index)),
                        json!({"N": n, "I": index, "q": q}),
                        nilpotent_commutation_outer(&alg, &index, q),
                    ));
                }
            }
        }
    }
    Ok(out)
}

// --------------------------------------------------------------- projection

/// `H_l − c` in the given algebra.
fn hs(alg: &Arc<Algebra>, l: usize, c: i64) -> Result<UElement> {
    UElement::cartan_shift(alg, l, c)
}

fn mul_all(alg: &Arc<Algebra>, factors: &[UElement]) -> Result<UElement> {
    let mut acc = UElement::one(alg);
    for f in factors {
        acc = acc.multiply(f)?;
    }
    Ok(acc)
}

/// With `1, N ∈ I`, `|I| = 2p+4`, the two congruences of `W̃_I` and `W̃_I²`
/// modulo the first nilpotent piece; returns both projected differences.
pub fn corner_reduction(alg: &Arc<Algebra>, index: &[usize]) -> Result<(UElement, UElement)> {
    let n = alg.n();
    let p = (index.len() - 4) as i64 / 2;
    let w = pfaffian_in(alg, index)?;
    let inner = pfaffian_in(alg, &without(index, &[1, n]))?;
    let shift = hs(alg, 1, p + 1)?;
    let first = shift.multiply(&inner)?.scale(&Q::from_ints(0, -1));
    let second = shift.multiply(&shift)?.multiply(&inner.multiply(&inner)?)?.neg();
    let d1 = hc_project(&w.sub(&first)?, 1)?;
    let d2 = hc_project(&w.multiply(&w)?.sub(&second)?, 1)?;
    Ok((d1, d2))
}

/// With `1 ∉ I`, `N ∈ I`: both congruences, projected at depth 1.
pub fn edge_reduction(alg: &Arc<Algebra>, index: &[usize]) -> Result<(UElement, UElement)> {
    let n = alg.n();
    let p = (index.len() - 4) as i64 / 2;
    let w = pfaffian_in(alg, index)?;
    let swapped = pfaffian_in(alg, &with(&without(index, &[n]), 1))?;
    let first = swapped.scale(&Q::from_ints(0, -1));
    let mut sum = UElement::zero(alg);
    for &il in &index[..index.len() - 1] {
        let x = pfaffian_in(alg, &without(index, &[il, n]))?;
        sum = sum.add(&x.multiply(&x)?)?;
    }
    let second = swapped.multiply(&swapped)?.neg().add(&hs(alg, 1, p + 1)?.multiply(&sum)?)?;
    let d1 = hc_project(&w.sub(&first)?, 1)?;
    let d2 = hc_project(&w.multiply(&w)?.sub(&second)?, 1)?;
    Ok((d1, d2))
}

/// `W̃_{p+2}` against its depth-1 reduction.
pub fn casimir_depth_one_reduction(alg: &Arc<Algebra>, p: usize) -> Result<UElement> {
    let n = alg.n();
    let pi = p as i64;
    let w = pfaffian_casimir_in(alg, p + 2)?;
    let mut corner = UElement::zero(alg);
    let mut rest = UElement::zero(alg);
    for index in increasing_sequences(2 * p + 4, 1, n) {
        let (has1, has_n) = (index.contains(&1), index.contains(&n));
        if has1 && has_n {
            let x = pfaffian_in(alg, &without(&index, &[1, n]))?;
            corner = corner.add(&x.multiply(&x)?)?;
        } else if !has1 && !has_n {
            let x = pfaffian_in(alg, &index)?;
            rest = rest.add(&x.multiply(&x)?)?;
        }
    }
    let factor = hs(alg, 1, pi + 1)?.multiply(&hs(alg, 1, n as i64 - 3 - pi)?)?.neg();
    hc_project(&w.sub(&factor.multiply(&corner)?.add(&rest)?)?, 1)
}

/// `hc(W̃_1) + Σ_l H_l (H_l − (N − 2l))` at full depth.
pub fn casimir_one_projection(n: usize) -> Result<UElement> {
    let alg = Algebra::shared(n, n / 2)?;
    let w = pfaffian_casimir_in(&alg, 1)?;
    let mut expect = UElement::zero(&alg);
    for l in 1..=n / 2 {
        let h = UElement::cartan(&alg, l)?;
        expect = expect.sub(&h.multiply(&hs(&alg, l, n as i64 - 2 * l as i64)?)?)?;
    }
    hc_project(&w, n / 2)?.sub(&expect)
}

/// The Cartan polynomial that `W̃_r` projects to at full depth, `r ≥ 2`.
pub fn casimir_projection_formula(alg: &Arc<Algebra>, r: usize) -> Result<UElement> {
    let n = alg.n();
    let ni = n as i64;
    let p = r as i64 - 2;
    let mut total = UElement::zero(alg);
    for seq in increasing_sequences(r - 1, 1, n / 2 - 1) {
        let mut factors = Vec::new();
        for &j in &seq {
            let ji = j as i64;
            factors.push(hs(alg, j, p + 2 - ji)?);
            factors.push(hs(alg, j, ni - 4 - p + ji)?);
        }
        let top = *seq.last().expect("nonempty") as i64;
        let mut inner = UElement::zero(alg);
        for l in 1..=(ni - 2 * top) / 2 {
            let idx = (top + l) as usize;
            let h = UElement::cartan(alg, idx)?;
            inner = inner.add(&h.multiply(&hs(alg, idx, ni - 2 * top - 2 * l)?)?)?;
        }
        factors.push(inner);
        total = total.add(&mul_all(alg, &factors)?)?;
    }
    Ok(if p % 2 == 1 { total.neg() } else { total })
}

pub fn casimir_projection(n: usize, r: usize) -> Result<UElement> {
    let alg = Algebra::shared(n, n / 2)?;
    let w = pfaffian_casimir_in(&alg, r)?;
    hc_project(&w, n / 2)?.sub(&casimir_projection_formula(&alg, r)?)
}

/// For `N = m + n` with the index window `(n+1, …, m)`:
/// `W̃_{I ∪ {1..n} ∪ {m+1..m+n}}² − Π_l (−(H_l − (p+2−l))²) W̃_I²`, projected at depth `n`.
pub fn block_square_reduction(m: usize, n_small: usize, index: &[usize]) -> Result<UElement> {
    let big = m + n_small;
    let alg = Algebra::shared(big, n_small)?;
    let p = ((index.len() + 2 * n_small) as i64 - 4) / 2;
    let mut full: Vec<usize> = (1..=n_small).chain(index.iter().copied()).chain(m + 1..=big).collect();
    full.sort_unstable();
    let w = pfaffian_in(&alg, &full)?;
    let wi = pfaffian_in(&alg, index)?;
    let mut factors = Vec::new();
    for l in 1..=n_small {
        let f = hs(&alg, l, p + 2 - l as i64)?;
        factors.push(f.multiply(&f)?.neg());
    }
    factors.push(wi.multiply(&wi)?);
    hc_project(&w.multiply(&w)?.sub(&mul_all(&alg, &factors)?)?, n_small)
}

pub fn projection_checks(ns: &[usize]) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for &n in ns {
        out.push(CheckRecord::zero(
            format!("projection.casimir_one.N{n}"),
            json!({"N": n}),
            casimir_one_projection(n),
        ));
        for r in 2..=n / 2 {
            out.push(CheckRecord::zero(
                format!("projection.casimir.N{n}.r{r}"),
                json!({"N": n, "r": r}),
                casimir_projection(n, r),
            ));
        }
        if n >= 4 {
            let alg = Algebra::shared(n, 1)?;
            for index in even_index_sets(n, &[4, 6]) {
                let (has1, has_n) = (index.contains(&1), index.contains(&n));
                let reduction = match (has1, has_n) {
                    (true, true) => Some(("corner", corner_reduction(&alg, &index))),
                    (false, true) => Some(("edge", edge_reduction(&alg, &index))),
                    _ => None,
                };
                if let Some((kind, res)) = reduction {
                    let (a, b) = match res {
                        Ok((a, b)) => (Ok(a), Ok(b)),
                        Err(e) => (Err(e.clone()), Err(e)),
                    };
                    let id = format!("projection.{kind}.N{n}.I{}", compact(&index));
                    out.push(CheckRecord::zero(format!("{id}.linear"), json!({"N": n, "I": index}), a));
                    out.push(CheckRecord::zero(format!("{id}.square"), json!({"N": n, "I": index}), b));
                }
            }
            for p in 0..=(n - 4) / 2 {
                out.push(CheckRecord::zero(
                    format!("projection.casimir_depth_one.N{n}.p{p}"),
                    json!({"N": n, "p": p}),
                    casimir_depth_one_reduction(&alg, p),
                ));
            }
        }
        if n == 6 {
            out.push(CheckRecord::zero(
                "projection.block_square.m4.n2.I34",
                json!({"m": 4, "n": 2, "p": 1, "I": [3, 4]}),
                block_square_reduction(4, 2, &[3, 4]),
            ));
        }
    }
    Ok(out)
}

// --------------------------------------------------------------- eigenvalue

/// `dπ(W̃_r)` on every irrep with `Σ|λ| ≤ max_degree` against `D_r(λ)`, and
/// against the Harish-Chandra projection evaluated at `H = −λ`.
pub fn eigenvalue_checks(ns: &[usize], max_degree: usize, rs: &[usize]) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for &n in ns {
        let alg = Algebra::shared(n, 0)?;
        let mut casimirs = Vec::new();
        for &r in rs.iter().filter(|&&r| 2 * r <= n) {
            let w = pfaffian_casimir_in(&alg, r)?;
            let hc = hc_project(&w, n / 2)?;
            casimirs.push((r, w, hc));
        }
        for weight in dominant_weights(n, max_degree) {
            let rho = shared_irrep(&weight)?;
            for (r, w, hc) in &casimirs {
                let params = json!({"N": n, "r": r, "weight": weight.entries()});
                let id = format!("eigen.N{n}.r{r}.w{}", weight.to_compact());
                let expected = Q::from_rational(d_value(n, *r, &weight)?);
                let got = central_scalar(w, &rho);
                out.push(CheckRecord::truth(
                    format!("{id}.closed_form"),
                    params.clone(),
                    got.as_ref().map(|(c, ok)| *ok && *c == expected).map_err(Clone::clone),
                    || format!("representation gives {:?}, closed form {expected}", got.as_ref().ok()),
                ));
                let point: Vec<Q> = weight.entries().iter().map(|&x| Q::from_int(-x)).collect();
                let hc_value = hc.evaluate_cartan(&point);
                out.push(CheckRecord::truth(
                    format!("{id}.projection"),
                    params,
                    match (&got, &hc_value) {
                        (Ok((c, true)), Ok(h)) => Ok(c == h),
                        (Ok(_), Ok(_)) => Ok(false),
                        (Err(e), _) | (_, Err(e)) => Err(e.clone()),
                    },
                    || format!("representation gives {:?}, projection gives {:?}", got.as_ref().ok(), hc_value.as_ref().ok()),
                ));
            }
        }
    }
    Ok(out)
}

/// The reference values `D_1^4(1,0) = −3`, `D_1^4(1,1) = −4`, `D_2^4(2,2) = 36`,
/// each through the closed form and through the representation.
pub fn eigenvalue_reference_checks() -> Result<Vec<CheckRecord>> {
    let alg = Algebra::shared(4, 0)?;
    let mut out = Vec::new();
    for (r, entries, value) in [(1usize, vec![1i64, 0], -3i64), (1, vec![1, 1], -4), (2, vec![2, 2], 36)] {
        let weight = Weight::new(4, entries)?;
        let expected = Q::from_int(value);
        let closed = Q::from_rational(d_value(4, r, &weight)?);
        let rep = central_scalar(&pfaffian_casimir_in(&alg, r)?, &*shared_irrep(&weight)?)?;
        let antipode = central_scalar(&pfaffian_casimir_in(&alg, r)?.antipode()?, &*shared_irrep(&weight)?)?;
        out.push(CheckRecord::truth(
            format!("eigen.reference.r{r}.w{}", weight.to_compact()),
            json!({"N": 4, "r": r, "weight": weight.entries(), "expected": value}),
            Ok(closed == expected && rep == (expected.clone(), true) && antipode == (expected.clone(), true)),
            || format!("closed form {closed}, representation {rep:?}, antipode {antipode:?}"),
        ));
    }
    Ok(out)
}

// ---------------------------------------------------------------- branching

pub fn branching_checks(ns: &[usize], max_degree: usize) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for &n in ns {
        for weight in dominant_weights(n, max_degree) {
            let rho = shared_irrep(&weight)?;
            for k in 1..n {
                let predicted = has_fixed_vector(n, k, &weight)?;
                let dim = fixed_subspace(&rho, k).map(|d| d.dim());
                out.push(CheckRecord::truth(
                    format!("branching.N{n}.k{k}.w{}", weight.to_compact()),
                    json!({"N": n, "k": k, "weight": weight.entries()}),
                    dim.as_ref().map(|&d| d == usize::from(predicted)).map_err(Clone::clone),
                    || format!("fixed subspace dimension {:?}, predicate {predicted}", dim.as_ref().ok()),
                ));
            }
        }
    }
    Ok(out)
}

// ------------------------------------------------------------- annihilation

/// `D_{min(k,N−k)+1}` vanishes on every weight with an `H_k`-fixed vector,
/// and the evaluated zero locus of `D_r` agrees with its closed form.
pub fn annihilation_checks(ns: &[usize], max_degree: usize) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for &n in ns {
        for weight in dominant_weights(n, max_degree) {
            for k in 1..n {
                if !has_fixed_vector(n, k, &weight)? || 2 * (k.min(n - k) + 1) > n {
                    continue;
                }
                out.push(CheckRecord::truth(
                    format!("annihilation.N{n}.k{k}.w{}", weight.to_compact()),
                    json!({"N": n, "k": k, "weight": weight.entries()}),
                    annihilation_bound_check(n, k, &weight),
                    || format!("D_{} does not vanish at {weight}", k.min(n - k) + 1),
                ));
            }
        }
    }
    Ok(out)
}

pub fn zero_locus_checks(ns: &[usize], max_degree: usize) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for &n in ns {
        for weight in dominant_weights(n, max_degree) {
            for r in 1..=n / 2 {
                let value = d_value(n, r, &weight)?;
                let predicate = d_is_zero(n, r, &weight)?;
                out.push(CheckRecord::truth(
                    format!("zero_locus.N{n}.r{r}.w{}", weight.to_compact()),
                    json!({"N": n, "r": r, "weight": weight.entries()}),
                    Ok(value.is_zero() == predicate),
                    || format!("D = {value}, predicate {predicate}"),
                ));
            }
        }
    }
    Ok(out)
}

// -------------------------------------------------------------------- radon

/// Exact spectral identities of the transform on one pair.
pub fn radon_checks(pair: &GrassmannPair, max_degree: usize, seed: u64) -> Result<Vec<CheckRecord>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tag = format!("radon.N{}.k{}.k{}", pair.n, pair.k1, pair.k2);
    let params = pair.summary();
    let mut out = Vec::new();
    let catalog = spectra_catalog(pair, max_degree)?;
    let source: Vec<Weight> = catalog.iter().filter(|e| e.in_source).map(|e| e.weight.clone()).collect();
    let target: Vec<Weight> = catalog.iter().filter(|e| e.in_target).map(|e| e.weight.clone()).collect();
    let common: Vec<Weight> = source.iter().filter(|w| target.contains(w)).cloned().collect();
    let forward_side = if pair.orientation() == Orientation::Reversed { &common } else { &source };

    for w in forward_side {
        let f = random_function(pair, Side::Source, std::slice::from_ref(w), &mut rng)?;
        let id = format!("{tag}.w{}", w.to_compact());
        let g = radon_forward(&f)?;
        out.push(CheckRecord::truth(format!("{id}.injective"), params.clone(), Ok(!g.is_zero()), || {
            "forward transform killed a nonzero component".into()
        }));
        out.push(CheckRecord::truth(format!("{id}.inversion"), params.clone(), inversion_exact(&f), || {
            "plus ∘ forward is not the identity".into()
        }));
        let c_sq = pairing_triple(pair, w)?.map(|(inner, a, b)| inner.norm_sqr() / (a * b));
        let dual = radon_dual(&g)?;
        let composed = c_sq.as_ref().map(|c| {
            let cq = Q::from_rational(c.clone());
            f.components.iter().all(|(wt, v)| {
                dual.components.get(wt).is_some_and(|dv| dv.iter().zip(v).all(|(a, b)| *a == &cq * b))
            })
        });
        out.push(CheckRecord::truth(format!("{id}.dual_composition"), params.clone(), Ok(composed == Some(true)), || {
            format!("dual ∘ forward is not multiplication by |C|² = {c_sq:?}")
        }));
        if 2 * (pair.r() + 1) <= pair.n {
            let rr = range_residual(&g)?;
            out.push(CheckRecord::truth(format!("{id}.range_zero"), params.clone(), Ok(rr.norm.is_zero()), || {
                format!("residual {} on the image", rr.norm)
            }));
        }
    }

    if !forward_side.is_empty() {
        let f = random_function(pair, Side::Source, forward_side, &mut rng)?;
        out.push(CheckRecord::truth(format!("{tag}.inversion.mixed"), params.clone(), inversion_exact(&f), || {
            "plus ∘ forward is not the identity on a mixed function".into()
        }));
        let g = random_function(pair, Side::Target, forward_side, &mut rng)?;
        let back = radon_plus(&g).and_then(|f| radon_forward(&f));
        out.push(CheckRecord::truth(
            format!("{tag}.surjective"),
            params.clone(),
            back.map(|h| h == g),
            || "forward ∘ plus is not the identity on the common spectrum".into(),
        ));
    }

    for w in target.iter().filter(|w| !source.contains(w)) {
        let g = random_function(pair, Side::Target, std::slice::from_ref(w), &mut rng)?;
        let id = format!("{tag}.w{}", w.to_compact());
        out.push(CheckRecord::truth(format!("{id}.dual_kills"), params.clone(), radon_dual(&g).map(|h| h.is_zero()), || {
            "dual transform keeps a component outside the source spectrum".into()
        }));
        if 2 * (pair.r() + 1) <= pair.n && pair.orientation() != Orientation::Balanced {
            let rr = range_residual(&g)?;
            out.push(CheckRecord::truth(format!("{id}.range_positive"), params.clone(), Ok(rr.norm > Rational::zero()), || {
                "residual vanishes outside the image".into()
            }));
        }
    }
    if pair.orientation() == Orientation::Forward {
        let witness = dual_kernel_witness(pair, crate::repmod::MAX_IRREP_DEGREE)?;
        if let Some(g) = witness {
            out.push(CheckRecord::truth(format!("{tag}.dual_kernel"), params.clone(), radon_dual(&g).map(|h| h.is_zero() && !g.is_zero()), || {
                "dual kernel witness is not killed".into()
            }));
        }
    }
    Ok(out)
}

/// Spectral forward transform against Monte-Carlo integration.
pub fn radon_oracle_check(pair: &GrassmannPair, max_degree: usize, points: usize, samples: usize, seed: u64) -> Result<CheckRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights = side_weights(pair, Side::Source, max_degree)?;
    let f = random_function(pair, Side::Source, &weights, &mut rng)?;
    let mae = oracle_mae(&f, points, samples, seed)?;
    let tol = 5e-3 * (1.0 + f.norm_f64()?);
    let params = json!({"pair": pair.summary(), "points": points, "samples": samples, "seed": seed, "mae": mae, "tolerance": tol});
    Ok(if mae <= tol {
        CheckRecord::pass(format!("radon.oracle.N{}.k{}.k{}", pair.n, pair.k1, pair.k2), params)
    } else {
        CheckRecord::fail(format!("radon.oracle.N{}.k{}.k{}", pair.n, pair.k1, pair.k2), params, format!("mae {mae} > {tol}"))
    })
}

// ------------------------------------------------------------- Q polynomial

/// Top coefficient of `Q` along coordinate lines against `(−2)^n Π c_i² · dvals[n]`.
pub fn q_leading_checks(count: usize, seed: u64) -> Result<Vec<CheckRecord>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rand_rat = |rng: &mut ChaCha8Rng| ratio(rng.random_range(-9..=9), rng.random_range(1..=5));
    let mut out = Vec::new();
    for small_n in [1i64, 2] {
        for t in 0..count {
            let m = small_n + rng.random_range(2..=5);
            let r1 = rng.random_range(0..=m - small_n);
            let r2 = loop {
                let r = rng.random_range(0..=m - small_n);
                if r != r1 {
                    break r;
                }
            };
            let params = PairParams::new(m, small_n, r1, r2)?;
            let p = rng.random_range(0..=3);
            let lam: Vec<Rational> = (0..small_n).map(|_| rand_rat(&mut rng)).collect();
            let c: Vec<Rational> = (0..small_n).map(|_| loop {
                let x = rand_rat(&mut rng);
                if !x.is_zero() {
                    break x;
                }
            }).collect();
            let dvals: Vec<Rational> = (0..=small_n).map(|_| rand_rat(&mut rng)).collect();
            let got = q_mixed_second_difference(&params, p, &lam, &c, &dvals);
            let want = q_leading_prediction(&c, &dvals);
            out.push(CheckRecord::truth(
                format!("q_leading.n{small_n}.{t:02}"),
                json!({"m": m, "n": small_n, "r1": r1, "r2": r2, "p": p}),
                got.as_ref().map(|g| *g == want).map_err(Clone::clone),
                || format!("difference {:?}, prediction {want}", got.as_ref().ok()),
            ));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------- dispatch

pub const SUITES: &[&str] =
    &["centrality", "adjoint", "laplace", "lemmas", "projection", "eigenvalue", "branching", "annihilation", "radon", "q"];

/// Options shared by the named suites.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteOptions {
    /// Smallest `N` considered.
    pub nmin: usize,
    /// Largest `N` considered.
    pub nmax: usize,
    /// Largest `Σ|λ|` for representation suites.
    pub max_degree: usize,
    pub seed: u64,
    pub samples: usize,
    pub points: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self { nmin: 0, nmax: 6, max_degree: 4, seed: 7, samples: 100_000, points: 10 }
    }
}

pub fn run_named_suite(name: &str, opts: &SuiteOptions) -> Result<SuiteReport> {
    let params = serde_json::to_value(opts).map_err(|e| Error::internal(e.to_string()))?;
    let upto = |lo: usize| (lo.max(opts.nmin)..=opts.nmax).collect::<Vec<_>>();
    match name {
        "centrality" => run_suite(name, params, || centrality_checks(&upto(4))),
        "adjoint" => run_suite(name, params, || adjoint_checks(&upto(3), 20, opts.seed)),
        "laplace" => run_suite(name, params, || laplace_checks(&upto(2))),
        "lemmas" => run_suite(name, params, || lemma_checks(&upto(4))),
        "projection" => run_suite(name, params, || projection_checks(&upto(3))),
        "eigenvalue" => run_suite(name, params, || {
            let mut v = eigenvalue_reference_checks()?;
            v.extend(eigenvalue_checks(&upto(4), opts.max_degree, &[1, 2, 3])?);
            Ok(v)
        }),
        "branching" => run_suite(name, params, || branching_checks(&upto(3), opts.max_degree)),
        "annihilation" => run_suite(name, params, || {
            let mut v = annihilation_checks(&upto(3), opts.max_degree)?;
            v.extend(zero_locus_checks(&upto(4), opts.max_degree)?);
            Ok(v)
        }),
        "radon" => run_suite(name, params, || {
            let mut v = Vec::new();
            for (n, k1, k2) in [(4, 1, 2), (5, 1, 2), (6, 1, 2), (6, 2, 3)] {
                if (opts.nmin..=opts.nmax).contains(&n) {
                    v.extend(radon_checks(&GrassmannPair::new(n, k1, k2)?, opts.max_degree, opts.seed)?);
                }
            }
            if (opts.nmin..=opts.nmax).contains(&4) {
                v.push(radon_oracle_check(&GrassmannPair::new(4, 1, 2)?, 2, opts.points, opts.samples, opts.seed)?);
            }
            Ok(v)
        }),
        "q" => run_suite(name, params, || q_leading_checks(20, opts.seed)),
        "all" => run_suite(name, params, || {
            let mut v = Vec::new();
            for suite in SUITES {
                v.extend(run_named_suite(suite, opts)?.checks);
            }
            Ok(v)
        }),
        other => Err(Error::InvalidInput(format!("unknown suite {other:?}; expected one of {}, all", SUITES.join(", ")))),
    }
}
