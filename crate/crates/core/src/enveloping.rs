//! PBW normal-form arithmetic in `U(so(N, C))` and the Pfaffian elements.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liealg::{AdaptedBasis, BasisLabel, LieElement};
use crate::linalg::Matrix;
use crate::scalar::GaussianRational as Q;

/// Largest total degree any product may reach.
pub const MAX_DEGREE: usize = 12;
/// Largest index set accepted for a Pfaffian element.
pub const MAX_INDEX_SET: usize = 8;

/// Nondecreasing sequence of slot indices into an [`AdaptedBasis`].
pub type Monomial = Vec<u8>;

type Terms = Vec<(Monomial, Q)>;
type MemoTable = RwLock<HashMap<(Monomial, u8), Arc<Terms>>>;

/// An adapted basis together with the straightening memo for products in it.
pub struct Algebra {
    basis: Arc<AdaptedBasis>,
    memo: Option<MemoTable>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U(so({})) s={}", self.basis.n(), self.basis.s())
    }
}

impl Algebra {
    /// Process-wide memoized instance for `(N, s)`.
    pub fn shared(n: usize, s: usize) -> Result<Arc<Algebra>> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<Algebra>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(a) = cache.lock().expect("algebra cache poisoned").get(&(n, s)) {
            return Ok(a.clone());
        }
        let built = Arc::new(Algebra { basis: AdaptedBasis::shared(n, s)?, memo: Some(RwLock::default()) });
        let mut guard = cache.lock().expect("algebra cache poisoned");
        Ok(guard.entry((n, s)).or_insert(built).clone())
    }

    /// A private instance that recomputes every straightening step.
    pub fn without_memo(n: usize, s: usize) -> Result<Arc<Algebra>> {
        Ok(Arc::new(Algebra { basis: AdaptedBasis::shared(n, s)?, memo: None }))
    }

    pub fn basis(&self) -> &AdaptedBasis {
        &self.basis
    }

    pub fn n(&self) -> usize {
        self.basis.n()
    }

    pub fn s(&self) -> usize {
        self.basis.s()
    }

    pub fn memo_len(&self) -> usize {
        self.memo.as_ref().map_or(0, |m| m.read().expect("memo poisoned").len())
    }

    /// Normal form of `m · e_x` for a normal monomial `m`.
    fn mul_slot(&self, m: &[u8], x: u8) -> Arc<Terms> {
        match m.last() {
            None => return Arc::new(vec![(vec![x], Q::one())]),
            Some(&a) if a <= x => {
                let mut v = m.to_vec();
                v.push(x);
                return Arc::new(vec![(v, Q::one())]);
            }
            _ => {}
        }
        let key = (m.to_vec(), x);
        if let Some(memo) = &self.memo {
            if let Some(hit) = memo.read().expect("memo poisoned").get(&key) {
                return hit.clone();
            }
        }
        let a = *m.last().expect("nonempty");
        let prefix = &m[..m.len() - 1];
        let mut acc: HashMap<Monomial, Q> = HashMap::new();
        // m·x = (prefix·x)·a + prefix·[a, x]
        for (p, c) in self.mul_slot(prefix, x).iter() {
            for (q, d) in self.mul_slot(p, a).iter() {
                accumulate(&mut acc, q, &(c * d));
            }
        }
        for (k, e) in self.basis.bracket_slots(a as usize, x as usize) {
            for (q, d) in self.mul_slot(prefix, *k as u8).iter() {
                accumulate(&mut acc, q, &(e * d));
            }
        }
        let mut terms: Terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let terms = Arc::new(terms);
        if let Some(memo) = &self.memo {
            memo.write().expect("memo poisoned").insert(key, terms.clone());
        }
        terms
    }
}

fn accumulate(acc: &mut HashMap<Monomial, Q>, m: &[u8], c: &Q) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(m) {
        Some(e) => *e += c,
        None => {
            acc.insert(m.to_vec(), c.clone());
        }
    }
}

/// Element of `U(so(N, C))` in PBW normal form.
#[derive(Clone)]
pub struct UElement {
    alg: Arc<Algebra>,
    terms: BTreeMap<Monomial, Q>,
}

impl PartialEq for UElement {
    fn eq(&self, other: &Self) -> bool {
        self.n() == other.n() && self.s() == other.s() && self.terms == other.terms
    }
}

impl Eq for UElement {}

impl UElement {
    pub fn zero(alg: &Arc<Algebra>) -> Self {
        Self { alg: alg.clone(), terms: BTreeMap::new() }
    }

    pub fn one(alg: &Arc<Algebra>) -> Self {
        Self::scalar(alg, Q::one())
    }

    pub fn scalar(alg: &Arc<Algebra>, c: Q) -> Self {
        let mut x = Self::zero(alg);
        if !c.is_zero() {
            x.terms.insert(Vec::new(), c);
        }
        x
    }

    pub fn from_terms(alg: &Arc<Algebra>, terms: impl IntoIterator<Item = (Monomial, Q)>) -> Result<Self> {
        let mut x = Self::zero(alg);
        for (m, c) in terms {
            if m.windows(2).any(|w| w[0] > w[1]) || m.iter().any(|&k| k as usize >= alg.basis.dim()) {
                return Err(Error::InvalidInput(format!("monomial {m:?} is not a normal monomial")));
            }
            x.add_term(&m, &c);
        }
        Ok(x)
    }

    pub fn slot(alg: &Arc<Algebra>, slot: usize) -> Self {
        Self::from_terms(alg, [(vec![slot as u8], Q::one())]).expect("slot within basis")
    }

    pub fn from_lie(alg: &Arc<Algebra>, x: &LieElement) -> Result<Self> {
        let coords = alg.basis.slot_coords(x)?;
        Ok(Self {
            alg: alg.clone(),
            terms: coords.into_iter().map(|(k, c)| (vec![k as u8], c)).collect(),
        })
    }

    /// `X̃_ij` as an element of `U`.
    pub fn generator(alg: &Arc<Algebra>, i: usize, j: usize) -> Result<Self> {
        Self::from_lie(alg, &LieElement::generator(alg.n(), i, j)?)
    }

    /// `H_l = √−1 · X̃_{l,N+1−l}`.
    pub fn cartan(alg: &Arc<Algebra>, l: usize) -> Result<Self> {
        let slot = alg
            .basis
            .slot_of(BasisLabel::Cartan { l })
            .ok_or_else(|| Error::domain(format!("no Cartan element H_{l} in so({})", alg.n())))?;
        Ok(Self::slot(alg, slot))
    }

    /// `H_l − c`.
    pub fn cartan_shift(alg: &Arc<Algebra>, l: usize, c: i64) -> Result<Self> {
        Self::cartan(alg, l)?.sub(&Self::scalar(alg, Q::from_int(c)))
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn basis(&self) -> &AdaptedBasis {
        &self.alg.basis
    }

    pub fn n(&self) -> usize {
        self.alg.n()
    }

    pub fn s(&self) -> usize {
        self.alg.s()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Q> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn coeff(&self, m: &[u8]) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    fn add_term(&mut self, m: &[u8], c: &Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(m) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(m);
                }
            }
            None => {
                self.terms.insert(m.to_vec(), c.clone());
            }
        }
    }

    fn same_basis(&self, other: &Self) -> Result<()> {
        if self.n() != other.n() || self.s() != other.s() {
            return Err(Error::BasisMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_basis(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_basis(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m, &-c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(&self.alg);
        }
        Self { alg: self.alg.clone(), terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }

    /// Right multiplication by a single basis element.
    fn mul_slot(&self, x: u8) -> Self {
        let mut acc: HashMap<Monomial, Q> = HashMap::new();
        for (m, c) in &self.terms {
            for (q, d) in self.alg.mul_slot(m, x).iter() {
                accumulate(&mut acc, q, &(c * d));
            }
        }
        let mut out = Self::zero(&self.alg);
        out.terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out
    }

    /// Right multiplication by an element of the Lie algebra.
    pub fn mul_lie(&self, x: &LieElement) -> Result<Self> {
        let coords = self.alg.basis.slot_coords(x)?;
        self.check_degree(1)?;
        let mut out = Self::zero(&self.alg);
        for (k, c) in coords {
            let part = self.mul_slot(k as u8);
            for (m, v) in &part.terms {
                out.add_term(m, &(v * &c));
            }
        }
        Ok(out)
    }

    fn check_degree(&self, extra: usize) -> Result<()> {
        let d = self.degree() + extra;
        if d > MAX_DEGREE {
            return Err(Error::resource(format!("product of total degree {d} exceeds cap {MAX_DEGREE}")));
        }
        Ok(())
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.same_basis(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.alg));
        }
        self.check_degree(other.degree())?;
        let mut acc: HashMap<Monomial, Q> = HashMap::new();
        let mut cache: HashMap<&[u8], Self> = HashMap::new();
        for (mb, cb) in &other.terms {
            // Reuse the product with the longest already-computed prefix.
            let mut start = 0;
            let mut cur = self.clone();
            for len in (1..=mb.len()).rev() {
                if let Some(hit) = cache.get(&mb[..len]) {
                    cur = hit.clone();
                    start = len;
                    break;
                }
            }
            for (idx, &x) in mb.iter().enumerate().skip(start) {
                cur = cur.mul_slot(x);
                if idx + 1 < mb.len() {
                    cache.insert(&mb[..=idx], cur.clone());
                }
            }
            for (m, c) in &cur.terms {
                accumulate(&mut acc, m, &(c * cb));
            }
        }
        let mut out = Self::zero(&self.alg);
        out.terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(&self.alg);
        for _ in 0..e {
            acc = acc.multiply(self)?;
        }
        Ok(acc)
    }

    /// `ab − ba`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.multiply(other)?.sub(&other.multiply(self)?)
    }

    /// The anti-automorphism extending `X ↦ −X` on the Lie algebra.
    pub fn antipode(&self) -> Result<Self> {
        let mut out = Self::zero(&self.alg);
        for (m, c) in &self.terms {
            let mut word = Self::scalar(&self.alg, if m.len() % 2 == 0 { c.clone() } else { -c });
            for &x in m.iter().rev() {
                word = word.mul_slot(x);
            }
            out = out.add(&word)?;
        }
        Ok(out)
    }

    /// Re-expresses the element in another adapted basis of the same `so(N)`.
    pub fn rebase(&self, target: &Arc<Algebra>) -> Result<Self> {
        if target.n() != self.n() {
            return Err(Error::DimensionMismatch(format!("so({}) vs so({})", self.n(), target.n())));
        }
        if target.s() == self.s() {
            return Ok(Self { alg: target.clone(), terms: self.terms.clone() });
        }
        self.map_slots(target, |slot| Ok(self.alg.basis.element(slot).clone()))
    }

    /// Replaces every basis element by the given Lie element and renormalizes.
    fn map_slots(&self, target: &Arc<Algebra>, image: impl Fn(usize) -> Result<LieElement>) -> Result<Self> {
        let mut images = HashMap::new();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut word = Self::scalar(target, c.clone());
            for &x in m {
                if !images.contains_key(&x) {
                    images.insert(x, image(x as usize)?);
                }
                word = word.mul_lie(&images[&x])?;
            }
            out = out.add(&word)?;
        }
        Ok(out)
    }

    /// Substitutes values for `H_1, …, H_[N/2]` in an element built only
    /// from Cartan elements.
    pub fn evaluate_cartan(&self, h: &[Q]) -> Result<Q> {
        let basis = self.basis();
        if h.len() != self.n() / 2 {
            return Err(Error::DimensionMismatch(format!("{} Cartan values for so({})", h.len(), self.n())));
        }
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for &x in m {
                match basis.label(x as usize) {
                    BasisLabel::Cartan { l } => v = &v * &h[l - 1],
                    other => return Err(Error::domain(format!("monomial contains non-Cartan factor {other}"))),
                }
            }
            acc += &v;
        }
        Ok(acc)
    }

    /// Human-readable form using basis labels.
    pub fn pretty(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let basis = self.basis();
        self.terms
            .iter()
            .map(|(m, c)| {
                let word: Vec<String> = m.iter().map(|&x| basis.label(x as usize).to_string()).collect();
                if word.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})·{}", word.join("·"))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Debug for UElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U(so({})) s={}: {}", self.n(), self.s(), self.pretty())
    }
}

/// Normal form of the product of the given Lie elements, left to right.
pub fn normal_form(alg: &Arc<Algebra>, word: &[LieElement]) -> Result<UElement> {
    if word.len() > MAX_DEGREE {
        return Err(Error::resource(format!("word of length {} exceeds cap {MAX_DEGREE}", word.len())));
    }
    let mut acc = UElement::one(alg);
    for x in word {
        acc = acc.mul_lie(x)?;
    }
    Ok(acc)
}

/// Projection along the left ideal generated by the nilpotent segment of the
/// depth-`s` adapted basis.
pub fn hc_project(x: &UElement, s: usize) -> Result<UElement> {
    let target = Algebra::shared(x.n(), s)?;
    let y = x.rebase(&target)?;
    let nil = target.basis().nilpotent_len();
    let mut out = UElement::zero(&target);
    out.terms = y.terms.into_iter().filter(|(m, _)| m.first().is_none_or(|&k| (k as usize) >= nil)).collect();
    Ok(out)
}

pub fn check_index_set(index: &[usize], n: usize) -> Result<()> {
    if index.len() > MAX_INDEX_SET {
        return Err(Error::resource(format!("index set of size {} exceeds cap {MAX_INDEX_SET}", index.len())));
    }
    if index.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain(format!("index sequence {index:?} is not strictly increasing")));
    }
    if index.iter().any(|&i| i == 0 || i > n) {
        return Err(Error::domain(format!("index sequence {index:?} leaves 1..={n}")));
    }
    Ok(())
}

/// Sign of a sequence of distinct integers viewed as a permutation of its
/// sorted rearrangement.
pub fn sequence_sign(seq: &[usize]) -> i64 {
    let mut sign = 1;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            if seq[b] < seq[a] {
                sign = -sign;
            }
        }
    }
    sign
}

/// The permutations `σ ∈ P_+(I)` as sequences `(σ(i_1), …, σ(i_2p))`, each
/// with its sign.
pub fn positive_pairings(index: &[usize]) -> Vec<(Vec<usize>, i64)> {
    fn rec(rest: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        let first = rest[0];
        for k in 1..rest.len() {
            cur.push(first);
            cur.push(rest[k]);
            let remaining: Vec<usize> =
                rest.iter().enumerate().filter(|&(t, _)| t != 0 && t != k).map(|(_, &v)| v).collect();
            rec(&remaining, cur, out);
            cur.truncate(cur.len() - 2);
        }
    }
    if index.len() % 2 == 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(index, &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|seq| {
            let sign = sequence_sign(&seq);
            (seq, sign)
        })
        .collect()
}

/// `W̃_I` in the given algebra; the empty set yields `1`.
pub fn pfaffian_in(alg: &Arc<Algebra>, index: &[usize]) -> Result<UElement> {
    let n = alg.n();
    check_index_set(index, n)?;
    if index.len() % 2 == 1 {
        return Err(Error::domain(format!("Pfaffian element needs an even index set, got {index:?}")));
    }
    let mut out = UElement::zero(alg);
    for (seq, sign) in positive_pairings(index) {
        let word: Vec<LieElement> =
            seq.chunks(2).map(|p| LieElement::generator(n, p[0], p[1])).collect::<Result<_>>()?;
        let term = normal_form(alg, &word)?;
        out = out.add(&term.scale(&Q::from_int(sign)))?;
    }
    if index.is_empty() {
        out = UElement::one(alg);
    }
    Ok(out)
}

/// `W̃_I` in the depth-0 basis.
pub fn pfaffian_element(index: &[usize], n: usize) -> Result<UElement> {
    pfaffian_in(&Algebra::shared(n, 0)?, index)
}

/// All strictly increasing sequences of length `k` drawn from `lo..=hi`.
pub fn increasing_sequences(k: usize, lo: usize, hi: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, from: usize, hi: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in from..=hi {
            if hi + 1 - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(k, v + 1, hi, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if lo <= hi + 1 {
        rec(k, lo, hi, &mut Vec::new(), &mut out);
    }
    out
}

/// `Σ W̃_I²` over `I ⊂ {lo, …, hi}` with `|I| = 2p`; zero when `2p > hi − lo + 1`.
pub fn block_casimir_in(alg: &Arc<Algebra>, p: usize, lo: usize, hi: usize) -> Result<UElement> {
    let n = alg.n();
    if p == 0 || lo == 0 || lo > hi || hi > n {
        return Err(Error::domain(format!("block Casimir needs p ≥ 1 and 1 ≤ lo ≤ hi ≤ N, got p={p}, lo={lo}, hi={hi}")));
    }
    let mut out = UElement::zero(alg);
    for index in increasing_sequences(2 * p, lo, hi) {
        let w = pfaffian_in(alg, &index)?;
        out = out.add(&w.multiply(&w)?)?;
    }
    Ok(out)
}

pub fn block_casimir(p: usize, n: usize, lo: usize, hi: usize) -> Result<UElement> {
    block_casimir_in(&Algebra::shared(n, 0)?, p, lo, hi)
}

/// `W̃_p = Σ_{J ∈ T_2p(N)} W̃_J²`.
pub fn pfaffian_casimir_in(alg: &Arc<Algebra>, p: usize) -> Result<UElement> {
    let n = alg.n();
    if p == 0 || 2 * p > n {
        return Err(Error::domain(format!("W_p needs 1 ≤ p and 2p ≤ N, got p={p}, N={n}")));
    }
    block_casimir_in(alg, p, 1, n)
}

pub fn pfaffian_casimir(p: usize, n: usize) -> Result<UElement> {
    pfaffian_casimir_in(&Algebra::shared(n, 0)?, p)
}

/// Checks `uᵀu = 1` and `det u = 1` exactly.
pub fn check_special_orthogonal(u: &Matrix) -> Result<()> {
    if !u.is_square() {
        return Err(Error::DimensionMismatch("non-square matrix".into()));
    }
    if u.transpose().mul(u)? != Matrix::identity(u.rows()) {
        return Err(Error::domain("matrix is not orthogonal"));
    }
    if u.det()? != Q::one() {
        return Err(Error::domain("matrix does not have determinant 1"));
    }
    Ok(())
}

/// `Ad(u) X̃_ij = Σ_{k<l} (u_ki u_lj − u_li u_kj) X̃_kl`.
pub fn adjoint_lie(u: &Matrix, x: &LieElement) -> Result<LieElement> {
    let n = x.n();
    if u.rows() != n || u.cols() != n {
        return Err(Error::DimensionMismatch(format!("{}x{} matrix acting on so({n})", u.rows(), u.cols())));
    }
    let mut out = LieElement::zero(n);
    for (&(i, j), c) in x.terms() {
        let (i, j) = (i - 1, j - 1);
        for k in 0..n {
            for l in k + 1..n {
                let m = &(&u[(k, i)] * &u[(l, j)]) - &(&u[(l, i)] * &u[(k, j)]);
                if !m.is_zero() {
                    out = out.add(&LieElement::generator(n, k + 1, l + 1)?.scale(&(&m * c)))?;
                }
            }
        }
    }
    Ok(out)
}

/// Adjoint action of an exact special orthogonal matrix.
pub fn adjoint(u: &Matrix, x: &UElement) -> Result<UElement> {
    check_special_orthogonal(u)?;
    if u.rows() != x.n() {
        return Err(Error::DimensionMismatch(format!("{}x{} matrix acting on so({})", u.rows(), u.rows(), x.n())));
    }
    let basis = x.alg.basis.clone();
    x.map_slots(&x.alg, |slot| adjoint_lie(u, basis.element(slot)))
}

/// `Σ_{l≠q} sgn(q−l) (−1)^{l+q−1} X̃_{i_l,i_q} W̃_{I∖{i_l,i_q}}` (1-based `q`).
pub fn laplace_expand_in(alg: &Arc<Algebra>, index: &[usize], q: usize) -> Result<UElement> {
    check_index_set(index, alg.n())?;
    if index.is_empty() || index.len() % 2 == 1 {
        return Err(Error::domain(format!("expansion needs a nonempty even index set, got {index:?}")));
    }
    if q == 0 || q > index.len() {
        return Err(Error::domain(format!("expansion position {q} outside 1..={}", index.len())));
    }
    let mut out = UElement::zero(alg);
    for l in 1..=index.len() {
        if l == q {
            continue;
        }
        let sign = if q > l { 1 } else { -1 } * if (l + q - 1) % 2 == 0 { 1 } else { -1 };
        let rest: Vec<usize> = index.iter().enumerate().filter(|&(t, _)| t + 1 != l && t + 1 != q).map(|(_, &v)| v).collect();
        let x = UElement::generator(alg, index[l - 1], index[q - 1])?;
        let term = x.multiply(&pfaffian_in(alg, &rest)?)?;
        out = out.add(&term.scale(&Q::from_int(sign)))?;
    }
    Ok(out)
}

pub fn laplace_expand(index: &[usize], q: usize, n: usize) -> Result<UElement> {
    laplace_expand_in(&Algebra::shared(n, 0)?, index, q)
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    mono: Vec<usize>,
    re: String,
    im: String,
}

#[derive(Serialize, Deserialize)]
struct UElementJson {
    #[serde(rename = "N")]
    n: usize,
    s: usize,
    terms: Vec<TermJson>,
}

impl Serialize for UElement {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        UElementJson {
            n: self.n(),
            s: self.s(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    mono: m.iter().map(|&k| k as usize).collect(),
                    re: c.re_string(),
                    im: c.im_string(),
                })
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for UElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = UElementJson::deserialize(d)?;
        let alg = Algebra::shared(raw.n, raw.s).map_err(D::Error::custom)?;
        let mut terms = Vec::new();
        for t in raw.terms {
            let c = Q::from_parts(&t.re, &t.im).map_err(D::Error::custom)?;
            let mono = t
                .mono
                .into_iter()
                .map(|k| u8::try_from(k).map_err(|_| D::Error::custom("slot index too large")))
                .collect::<std::result::Result<Monomial, _>>()?;
            terms.push((mono, c));
        }
        UElement::from_terms(&alg, terms).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(n: usize, s: usize) -> Arc<Algebra> {
        Algebra::shared(n, s).unwrap()
    }

    fn x(a: &Arc<Algebra>, i: usize, j: usize) -> UElement {
        UElement::generator(a, i, j).unwrap()
    }

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    #[test]
    fn straightening_one_swap() {
        let a = alg(4, 0);
        let x12 = LieElement::generator(4, 1, 2).unwrap();
        let x13 = LieElement::generator(4, 1, 3).unwrap();
        let got = normal_form(&a, &[x13.clone(), x12.clone()]).unwrap();
        let ordered = x(&a, 1, 2).multiply(&x(&a, 1, 3)).unwrap();
        assert_eq!(got, ordered.sub(&x(&a, 2, 3)).unwrap());
        assert_eq!(normal_form(&a, &[x12]).unwrap(), x(&a, 1, 2));
        assert_eq!(normal_form(&a, &[]).unwrap(), UElement::one(&a));
        assert_eq!(x(&a, 1, 3).multiply(&x(&a, 1, 2)).unwrap(), got);
    }

    #[test]
    fn square_is_already_normal() {
        let a = alg(4, 0);
        let sq = x(&a, 1, 2).multiply(&x(&a, 1, 2)).unwrap();
        assert_eq!(sq.len(), 1);
        assert_eq!(sq.degree(), 2);
    }

    #[test]
    fn pfaffian_examples() {
        let a = alg(4, 0);
        assert_eq!(pfaffian_in(&a, &[1, 2]).unwrap(), x(&a, 1, 2));
        let expect = x(&a, 1, 2)
            .multiply(&x(&a, 3, 4))
            .unwrap()
            .sub(&x(&a, 1, 3).multiply(&x(&a, 2, 4)).unwrap())
            .unwrap()
            .add(&x(&a, 1, 4).multiply(&x(&a, 2, 3)).unwrap())
            .unwrap();
        let w = pfaffian_in(&a, &[1, 2, 3, 4]).unwrap();
        assert_eq!(w, expect);
        assert_eq!(w.multiply(&UElement::one(&a)).unwrap(), w);
        assert_eq!(positive_pairings(&[1, 2, 3, 4, 5, 6]).len(), 15);
        assert!(pfaffian_in(&a, &[1, 2, 3]).is_err());
        assert_eq!(pfaffian_in(&a, &[]).unwrap(), UElement::one(&a));
    }

    #[test]
    fn pairing_signs_match_brute_force() {
        // Brute-force oracle: enumerate all permutations of I and keep P_+(I).
        fn perms(v: &[usize]) -> Vec<Vec<usize>> {
            if v.len() <= 1 {
                return vec![v.to_vec()];
            }
            let mut out = Vec::new();
            for k in 0..v.len() {
                let mut rest = v.to_vec();
                let head = rest.remove(k);
                for mut p in perms(&rest) {
                    p.insert(0, head);
                    out.push(p);
                }
            }
            out
        }
        let index = [1, 3, 4, 6, 7, 9];
        let mut brute: Vec<(Vec<usize>, i64)> = perms(&index)
            .into_iter()
            .filter(|s| {
                (0..3).all(|a| s[2 * a] < s[2 * a + 1]) && (0..2).all(|a| s[2 * a] < s[2 * a + 2])
            })
            .map(|s| {
                let mut sign = 1i64;
                for a in 0..s.len() {
                    for b in a + 1..s.len() {
                        sign *= (s[b] as i64 - s[a] as i64).signum();
                    }
                }
                (s, sign)
            })
            .collect();
        let mut ours = positive_pairings(&index);
        brute.sort();
        ours.sort();
        assert_eq!(brute, ours);
    }

    #[test]
    fn casimir_summands() {
        let a = alg(3, 0);
        let w1 = pfaffian_casimir_in(&a, 1).unwrap();
        let mut expect = UElement::zero(&a);
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            expect = expect.add(&x(&a, i, j).pow(2).unwrap()).unwrap();
        }
        assert_eq!(w1, expect);
        assert_eq!(increasing_sequences(4, 1, 6).len(), 15);
        assert!(pfaffian_casimir(3, 4).is_err());

        let a6 = alg(6, 0);
        assert_eq!(block_casimir_in(&a6, 1, 3, 4).unwrap(), x(&a6, 3, 4).pow(2).unwrap());
        assert!(block_casimir_in(&a6, 2, 3, 4).unwrap().is_zero());
        assert_eq!(block_casimir_in(&a6, 1, 2, 5).unwrap().len(), 6);
    }

    #[test]
    fn commutator_examples() {
        let a = alg(4, 0);
        assert_eq!(x(&a, 1, 2).commutator(&x(&a, 1, 3)).unwrap(), x(&a, 2, 3));
        let w1 = pfaffian_casimir_in(&a, 1).unwrap();
        assert!(w1.commutator(&x(&a, 1, 2)).unwrap().is_zero());
        assert!(UElement::one(&a).commutator(&w1).unwrap().is_zero());
    }

    #[test]
    fn antipode_examples() {
        let a = alg(4, 0);
        assert_eq!(x(&a, 1, 2).antipode().unwrap(), x(&a, 1, 2).neg());
        let prod = x(&a, 1, 2).multiply(&x(&a, 1, 3)).unwrap();
        let expect = x(&a, 1, 3).multiply(&x(&a, 1, 2)).unwrap();
        assert_eq!(prod.antipode().unwrap(), expect);
        assert_eq!(expect, prod.sub(&x(&a, 2, 3)).unwrap());
    }

    #[test]
    fn rotation_fixes_its_plane_generator() {
        let a = alg(4, 0);
        let (c, s) = (Q::from_rational(crate::scalar::ratio(3, 5)), Q::from_rational(crate::scalar::ratio(4, 5)));
        let mut r = Matrix::identity(4);
        r[(0, 0)] = c.clone();
        r[(0, 1)] = -s.clone();
        r[(1, 0)] = s;
        r[(1, 1)] = c;
        assert_eq!(adjoint(&r, &x(&a, 1, 2)).unwrap(), x(&a, 1, 2));
        let w = pfaffian_in(&a, &[1, 2, 3, 4]).unwrap();
        assert_eq!(adjoint(&Matrix::identity(4), &w).unwrap(), w);
        let mut bad = Matrix::identity(4);
        bad[(0, 0)] = q(-1);
        assert!(adjoint(&bad, &w).is_err());
    }

    #[test]
    fn adjoint_matches_matrix_conjugation() {
        let u = Matrix::from_ints(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]).unwrap();
        for (i, j) in crate::liealg::pairs(3) {
            let g = LieElement::generator(3, i, j).unwrap();
            let conj = u.mul(&g.to_matrix()).unwrap().mul(&u.transpose()).unwrap();
            assert_eq!(adjoint_lie(&u, &g).unwrap(), LieElement::from_matrix(&conj).unwrap());
        }
    }

    #[test]
    fn laplace_small_cases() {
        let a = alg(4, 0);
        assert_eq!(laplace_expand_in(&a, &[1, 2], 2).unwrap(), x(&a, 1, 2));
        let expect = x(&a, 1, 4)
            .multiply(&x(&a, 2, 3))
            .unwrap()
            .sub(&x(&a, 2, 4).multiply(&x(&a, 1, 3)).unwrap())
            .unwrap()
            .add(&x(&a, 3, 4).multiply(&x(&a, 1, 2)).unwrap())
            .unwrap();
        let got = laplace_expand_in(&a, &[1, 2, 3, 4], 4).unwrap();
        assert_eq!(got, expect);
        assert_eq!(got, pfaffian_in(&a, &[1, 2, 3, 4]).unwrap());
        assert!(laplace_expand_in(&a, &[1, 2], 3).is_err());
    }

    #[test]
    fn projection_examples() {
        let a = alg(4, 1);
        let n21 = UElement::from_lie(&a, &crate::liealg::nilpotent_generator(4, 1, 2).unwrap()).unwrap();
        let prod = n21.multiply(&x(&a, 2, 3)).unwrap();
        assert!(hc_project(&prod, 1).unwrap().is_zero());
        let h1sq = UElement::cartan(&a, 1).unwrap().pow(2).unwrap();
        assert_eq!(hc_project(&h1sq, 1).unwrap(), h1sq);

        let top = alg(4, 2);
        let w1 = pfaffian_casimir(1, 4).unwrap();
        let h1 = UElement::cartan(&top, 1).unwrap();
        let h2 = UElement::cartan(&top, 2).unwrap();
        let expect = h1
            .multiply(&UElement::cartan_shift(&top, 1, 2).unwrap())
            .unwrap()
            .add(&h2.multiply(&h2).unwrap())
            .unwrap()
            .neg();
        assert_eq!(hc_project(&w1, 2).unwrap(), expect);
    }

    #[test]
    fn memo_is_transparent() {
        let shared = alg(5, 1);
        let plain = Algebra::without_memo(5, 1).unwrap();
        let w = pfaffian_in(&shared, &[1, 2, 4, 5]).unwrap();
        let w2 = pfaffian_in(&plain, &[1, 2, 4, 5]).unwrap();
        assert_eq!(w.multiply(&w).unwrap(), w2.multiply(&w2).unwrap());
        assert_eq!(plain.memo_len(), 0);
    }

    #[test]
    fn degree_cap_is_enforced() {
        let a = alg(4, 0);
        let big = x(&a, 1, 2).pow(7).unwrap();
        assert!(matches!(big.multiply(&big), Err(Error::Resource(_))));
        assert!(matches!(pfaffian_element(&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10], 10), Err(Error::Resource(_))));
    }

    #[test]
    fn json_round_trip() {
        let w = pfaffian_element(&[1, 2, 3, 4], 4).unwrap();
        let s = serde_json::to_string(&w).unwrap();
        let back: UElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);
    }
}
