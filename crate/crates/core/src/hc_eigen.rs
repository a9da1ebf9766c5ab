//! Closed-form eigenvalues of the Pfaffian Casimirs on irreducible
//! representations, the fixed-vector branching rule, and the polynomials
//! `P`, `P_k`, `Q` attached to a pair of subgroups.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::enveloping::increasing_sequences;
use crate::error::{Error, Result};
use crate::liealg::check_n;
use crate::scalar::{rat, Rational};

/// Dominant integral weight `(λ_1, …, λ_[N/2])` of `so(N)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    #[serde(rename = "N")]
    n: usize,
    entries: Vec<i64>,
}

impl Weight {
    pub fn new(n: usize, entries: Vec<i64>) -> Result<Self> {
        check_n(n)?;
        let m = n / 2;
        if entries.len() != m {
            return Err(Error::domain(format!("so({n}) weights have {m} entries, got {}", entries.len())));
        }
        let ok = if n % 2 == 1 {
            entries.windows(2).all(|w| w[0] >= w[1]) && entries.last().is_none_or(|&x| x >= 0)
        } else {
            let head = &entries[..m.saturating_sub(1)];
            head.windows(2).all(|w| w[0] >= w[1])
                && (m < 2 || head[m - 2] >= entries[m - 1].abs())
        };
        if !ok {
            return Err(Error::domain(format!("weight {entries:?} is not dominant for so({n})")));
        }
        Ok(Self { n, entries })
    }

    pub fn zero(n: usize) -> Self {
        Self { n, entries: vec![0; n / 2] }
    }

    /// Parses `"2,0"` style input.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad weight entry {t:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn entry(&self, l: usize) -> i64 {
        self.entries[l - 1]
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// `Σ |λ_l|`, the tensor degree needed to realize the weight.
    pub fn degree(&self) -> usize {
        self.entries.iter().map(|x| x.unsigned_abs() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    /// The weight with its last entry negated (meaningful for even `N`).
    pub fn mirrored(&self) -> Self {
        let mut e = self.entries.clone();
        if let Some(last) = e.last_mut() {
            *last = -*last;
        }
        Self { n: self.n, entries: e }
    }

    pub fn to_compact(&self) -> String {
        self.entries.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_compact())
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "so({}){self}", self.n)
    }
}

/// All dominant weights of `so(N)` with `Σ |λ_l| ≤ max_degree`, in
/// increasing degree and then lexicographic order.
pub fn dominant_weights(n: usize, max_degree: usize) -> Vec<Weight> {
    let m = n / 2;
    let d = max_degree as i64;
    let mut out = Vec::new();
    let mut cur = vec![-d; m];
    loop {
        if cur.iter().map(|x| x.abs()).sum::<i64>() <= d {
            if let Ok(w) = Weight::new(n, cur.clone()) {
                out.push(w);
            }
        }
        let Some(pos) = (0..m).rev().find(|&i| cur[i] < d) else {
            break;
        };
        cur[pos] += 1;
        for x in &mut cur[pos + 1..] {
            *x = -d;
        }
    }
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.entries.cmp(&a.entries)));
    out
}

fn check_weight(n: usize, w: &Weight) -> Result<()> {
    if w.n != n {
        return Err(Error::DimensionMismatch(format!("so({}) weight used for so({n})", w.n)));
    }
    Ok(())
}

/// `D_1(λ) = −Σ_l λ_l (λ_l + N − 2l)`.
pub fn d_one(n: usize, w: &Weight) -> Result<Rational> {
    check_weight(n, w)?;
    let mut acc = 0i64;
    for (idx, &x) in w.entries.iter().enumerate() {
        let l = idx as i64 + 1;
        acc -= x * (x + n as i64 - 2 * l);
    }
    Ok(rat(acc))
}

/// `D_r(λ)` for `r ≥ 2`, with `p = r − 2`.
pub fn d_general(n: usize, r: usize, w: &Weight) -> Result<Rational> {
    check_weight(n, w)?;
    if r < 2 || 2 * r > n {
        return Err(Error::domain(format!("D_r needs 2 ≤ r and 2r ≤ N, got r={r}, N={n}")));
    }
    let p = (r - 2) as i64;
    let ni = n as i64;
    let lam = |l: i64| w.entries[(l - 1) as usize];
    let mut total = 0i64;
    for seq in increasing_sequences(r - 1, 1, n / 2 - 1) {
        let mut prod = 1i64;
        for &j in &seq {
            let j = j as i64;
            prod *= (lam(j) + p + 2 - j) * (lam(j) + ni - 4 - p + j);
        }
        let top = *seq.last().expect("nonempty sequence") as i64;
        let mut inner = 0i64;
        for l in 1..=(ni - 2 * top) / 2 {
            let x = lam(top + l);
            inner += x * (x + ni - 2 * top - 2 * l);
        }
        total += prod * inner;
    }
    if p % 2 == 1 {
        total = -total;
    }
    Ok(rat(total))
}

/// `D_r(λ)` for any `1 ≤ r ≤ [N/2]`.
pub fn d_value(n: usize, r: usize, w: &Weight) -> Result<Rational> {
    match r {
        1 => d_one(n, w),
        _ => d_general(n, r, w),
    }
}

/// Closed-form zero locus of `D_r`.
pub fn d_is_zero(n: usize, r: usize, w: &Weight) -> Result<bool> {
    check_weight(n, w)?;
    if r == 0 || 2 * r > n {
        return Err(Error::domain(format!("D_r needs 1 ≤ r and 2r ≤ N, got r={r}, N={n}")));
    }
    if r == 1 {
        return Ok(w.is_zero());
    }
    Ok(w.entries[r - 1..].iter().all(|&x| x == 0))
}

/// Whether the irreducible representation of highest weight `λ` has a
/// nonzero vector fixed by `S(O(N−k) × O(k))`.
pub fn has_fixed_vector(n: usize, k: usize, w: &Weight) -> Result<bool> {
    check_weight(n, w)?;
    if k == 0 || k >= n {
        return Err(Error::domain(format!("subgroup parameter k={k} outside 1..N")));
    }
    let bound = k.min(n - k);
    Ok(w.entries.iter().all(|x| x % 2 == 0) && w.entries.iter().skip(bound).all(|&x| x == 0))
}

/// On a weight with an `H_k`-fixed vector, `D_{min(k,N−k)+1}(λ)` vanishes.
/// Returns whether both the evaluated value and the closed-form predicate
/// report zero.
pub fn annihilation_bound_check(n: usize, k: usize, w: &Weight) -> Result<bool> {
    if !has_fixed_vector(n, k, w)? {
        return Err(Error::domain(format!("{w} has no fixed vector for k={k}")));
    }
    let r = k.min(n - k) + 1;
    if 2 * r > n {
        return Err(Error::domain(format!("D_{r} is undefined for N={n}")));
    }
    Ok(d_is_zero(n, r, w)? && d_value(n, r, w)?.is_zero())
}

/// Parameters `(m, n, r1, r2)` of a pair of subgroups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairParams {
    pub m: i64,
    pub n: i64,
    pub r1: i64,
    pub r2: i64,
}

impl PairParams {
    pub fn new(m: i64, n: i64, r1: i64, r2: i64) -> Result<Self> {
        if n < 1 || r1 < 0 || r2 < 0 || m - n < r1 || m - n < r2 || r1 == r2 {
            return Err(Error::domain(format!("invalid pair parameters m={m}, n={n}, r1={r1}, r2={r2}")));
        }
        Ok(Self { m, n, r1, r2 })
    }

    pub fn r1_tilde(&self) -> i64 {
        (self.m - self.r1).min(self.r1 + self.n)
    }

    pub fn r2_tilde(&self) -> i64 {
        (self.m - self.r2).min(self.r2 + self.n)
    }

    fn check_lambda(&self, lam: &[Rational]) -> Result<()> {
        if lam.len() as i64 != self.n {
            return Err(Error::DimensionMismatch(format!("λ has {} entries, expected n={}", lam.len(), self.n)));
        }
        Ok(())
    }
}

/// `P_k(λ) = Σ_{J ∈ T_k(n)} Π_l (−λ_{j_l} + p + 2 − j_l)(λ_{j_l} + m + n − 4 − p + j_l)`.
pub fn p_poly(params: &PairParams, p: i64, k: usize, lam: &[Rational]) -> Result<Rational> {
    params.check_lambda(lam)?;
    if k as i64 > params.n {
        return Err(Error::domain(format!("P_k needs k ≤ n, got k={k}, n={}", params.n)));
    }
    let mut total = Rational::zero();
    for seq in increasing_sequences(k, 1, params.n as usize) {
        let mut prod = Rational::one();
        for &j in &seq {
            let x = &lam[j - 1];
            let j = j as i64;
            prod *= (-x + rat(p + 2 - j)) * (x + rat(params.m + params.n - 4 - p + j));
        }
        total += prod;
    }
    Ok(total)
}

/// `P(λ) = Π_l (−λ_l + p + 2 − l)²`.
pub fn p_squared(params: &PairParams, p: i64, lam: &[Rational]) -> Result<Rational> {
    params.check_lambda(lam)?;
    let mut prod = Rational::one();
    for (idx, x) in lam.iter().enumerate() {
        let f = -x + rat(p + 2 - idx as i64 - 1);
        prod *= &f * &f;
    }
    Ok(prod)
}

/// `Q(λ) = Σ_k P_k(λ) · dvals[k]`.
pub fn q_tau(params: &PairParams, p: i64, lam: &[Rational], dvals: &[Rational]) -> Result<Rational> {
    params.check_lambda(lam)?;
    if dvals.len() as i64 != params.n + 1 {
        return Err(Error::DimensionMismatch(format!("{} D-values, expected n+1={}", dvals.len(), params.n + 1)));
    }
    let mut total = Rational::zero();
    for (k, d) in dvals.iter().enumerate() {
        if !d.is_zero() {
            total += p_poly(params, p, k, lam)? * d;
        }
    }
    Ok(total)
}

/// `Π_i Δ²_{t_i}` of `Q(λ + Σ c_i t_i e_i)` at `t = 0`, using the tensor
/// stencil of central second differences with unit step. Exact for
/// polynomials of degree at most 2 in each `t_i`.
pub fn q_mixed_second_difference(
    params: &PairParams,
    p: i64,
    lam: &[Rational],
    c: &[Rational],
    dvals: &[Rational],
) -> Result<Rational> {
    params.check_lambda(lam)?;
    params.check_lambda(c)?;
    let n = lam.len();
    let weights = [1i64, -2, 1];
    let mut total = Rational::zero();
    for code in 0..3usize.pow(n as u32) {
        let mut point = lam.to_vec();
        let mut coeff = 1i64;
        let mut rest = code;
        for i in 0..n {
            let digit = rest % 3;
            rest /= 3;
            coeff *= weights[digit];
            point[i] = &point[i] + &c[i] * rat(digit as i64 - 1);
        }
        total += q_tau(params, p, &point, dvals)? * rat(coeff);
    }
    Ok(total)
}

/// `(−2)^n Π c_i² · dvals[n]`.
pub fn q_leading_prediction(c: &[Rational], dvals: &[Rational]) -> Rational {
    let mut prod = rat(if c.len() % 2 == 0 { 1 } else { -1 }) * rat(1i64 << c.len());
    for ci in c {
        prod *= ci * ci;
    }
    prod * dvals.last().cloned().unwrap_or_else(Rational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn w(n: usize, e: &[i64]) -> Weight {
        Weight::new(n, e.to_vec()).unwrap()
    }

    #[test]
    fn dominance() {
        assert!(Weight::new(5, vec![1, 2]).is_err());
        assert!(Weight::new(5, vec![1, -1]).is_err());
        assert!(Weight::new(4, vec![1, -1]).is_ok());
        assert!(Weight::new(4, vec![1, -2]).is_err());
        assert!(Weight::new(6, vec![2, 1, -1]).is_ok());
        assert!(Weight::new(3, vec![-1]).is_err());
        assert!(Weight::new(4, vec![1]).is_err());
    }

    #[test]
    fn weight_enumeration() {
        let ws = dominant_weights(4, 2);
        let compact: Vec<String> = ws.iter().map(Weight::to_compact).collect();
        assert_eq!(compact, ["0,0", "1,0", "2,0", "1,1", "1,-1"]);
        assert_eq!(dominant_weights(5, 2).len(), 4);
        assert_eq!(dominant_weights(2, 1).len(), 3);
    }

    #[test]
    fn d_one_examples() {
        assert_eq!(d_one(4, &w(4, &[0, 0])).unwrap(), rat(0));
        assert_eq!(d_one(4, &w(4, &[1, 0])).unwrap(), rat(-3));
        assert_eq!(d_one(4, &w(4, &[1, 1])).unwrap(), rat(-4));
    }

    #[test]
    fn d_general_collapsed_forms() {
        // Collapsed forms obtained by expanding the double sum by hand.
        for a in 0..5i64 {
            for b in -a..=a {
                let v = d_general(4, 2, &w(4, &[a, b])).unwrap();
                assert_eq!(v, rat((a + 1) * (a + 1) * b * b));
            }
            for b in 0..=a {
                let v = d_general(5, 2, &w(5, &[a, b])).unwrap();
                assert_eq!(v, rat((a + 1) * (a + 2) * b * (b + 1)));
                for c in -b..=b {
                    let v = d_general(6, 3, &w(6, &[a, b, c])).unwrap();
                    assert_eq!(v, rat(-(a + 2) * (a + 2) * (b + 1) * (b + 3) * c * c));
                }
            }
        }
        assert_eq!(d_general(4, 2, &w(4, &[2, 0])).unwrap(), rat(0));
        assert_eq!(d_general(4, 2, &w(4, &[2, 2])).unwrap(), rat(36));
        assert_eq!(d_general(6, 2, &w(6, &[0, 0, 0])).unwrap(), rat(0));
        assert!(d_general(4, 3, &w(4, &[0, 0])).is_err());
    }

    #[test]
    fn zero_predicates() {
        assert!(!d_is_zero(4, 1, &w(4, &[1, 0])).unwrap());
        assert!(d_is_zero(6, 2, &w(6, &[4, 0, 0])).unwrap());
        assert!(d_is_zero(6, 3, &w(6, &[2, 2, 0])).unwrap());
        assert!(has_fixed_vector(4, 2, &w(4, &[2, 0])).unwrap());
        assert!(!has_fixed_vector(4, 2, &w(4, &[1, 0])).unwrap());
        assert!(!has_fixed_vector(4, 1, &w(4, &[2, 2])).unwrap());
        assert!(annihilation_bound_check(4, 1, &w(4, &[2, 0])).unwrap());
        assert!(annihilation_bound_check(6, 1, &w(6, &[4, 0, 0])).unwrap());
        assert!(annihilation_bound_check(6, 2, &w(6, &[2, 2, 0])).unwrap());
        assert!(annihilation_bound_check(4, 1, &w(4, &[2, 2])).is_err());
    }

    #[test]
    fn polynomial_examples() {
        let params = PairParams::new(5, 1, 0, 2).unwrap();
        let p = 1;
        let t = ratio(7, 3);
        assert_eq!(p_poly(&params, p, 0, &[t.clone()]).unwrap(), rat(1));
        let expect = (-t.clone() + rat(p + 1)) * (t.clone() + rat(5 - 2 - p));
        assert_eq!(p_poly(&params, p, 1, &[t.clone()]).unwrap(), expect);
        assert_eq!(p_poly(&params, p, 1, &[rat(p + 1)]).unwrap(), rat(0));
        assert_eq!(p_squared(&params, p, &[rat(0)]).unwrap(), rat((p + 1) * (p + 1)));
        assert_eq!(q_tau(&params, p, &[t.clone()], &[rat(0), rat(1)]).unwrap(), expect);
        assert_eq!(q_tau(&params, p, &[t.clone()], &[rat(0), rat(0)]).unwrap(), rat(0));
        assert!(q_tau(&params, p, &[t], &[rat(0)]).is_err());

        let params2 = PairParams::new(6, 2, 0, 3).unwrap();
        assert_eq!(p_squared(&params2, p, &[rat(p + 1), rat(p)]).unwrap(), rat(0));
    }

    #[test]
    fn leading_coefficient_small_case() {
        let params = PairParams::new(6, 2, 0, 3).unwrap();
        let lam = [ratio(1, 2), ratio(-3, 4)];
        let c = [ratio(2, 3), rat(5)];
        let dvals = [ratio(3, 7), rat(-2), ratio(11, 5)];
        let got = q_mixed_second_difference(&params, 1, &lam, &c, &dvals).unwrap();
        assert_eq!(got, q_leading_prediction(&c, &dvals));
    }
}
