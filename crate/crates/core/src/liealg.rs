//! Structure of `so(N, C)` in the generators `X̃_ij = E_ji − E_ij`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::GaussianRational as Q;

/// Upper bound on `N` accepted anywhere in the crate.
pub const MAX_N: usize = 12;

pub fn check_n(n: usize) -> Result<()> {
    if !(2..=MAX_N).contains(&n) {
        return Err(Error::domain(format!("N must lie in 2..={MAX_N}, got {n}")));
    }
    Ok(())
}

pub fn so_dim(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Position of the pair `i < j` (1-based) in the lexicographic list of pairs.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i < j && j <= n);
    (i - 1) * n - (i - 1) * i / 2 + (j - i - 1)
}

pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(so_dim(n));
    for i in 1..=n {
        for j in i + 1..=n {
            out.push((i, j));
        }
    }
    out
}

/// Sparse element of `so(N, C)`; keys are pairs `i < j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LieElement {
    n: usize,
    terms: BTreeMap<(usize, usize), Q>,
}

impl LieElement {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    /// `X̃_ij`, with `X̃_ji = −X̃_ij` and `X̃_ii = 0`.
    pub fn generator(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::domain(format!("generator index ({i},{j}) outside 1..={n}")));
        }
        let mut x = Self::zero(n);
        match i.cmp(&j) {
            std::cmp::Ordering::Less => x.add_term(i, j, Q::one()),
            std::cmp::Ordering::Greater => x.add_term(j, i, -Q::one()),
            std::cmp::Ordering::Equal => {}
        }
        Ok(x)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<(usize, usize), Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: usize, j: usize) -> Q {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Q::zero)
    }

    fn add_term(&mut self, i: usize, j: usize, c: Q) {
        let e = self.terms.entry((i, j)).or_insert_with(Q::zero);
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    fn same_n(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!("so({}) vs so({})", self.n, other.n)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_n(other)?;
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self { n: self.n, terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    /// Coordinates in the lexicographic `X̃_ij` basis.
    pub fn coords(&self) -> Vec<Q> {
        let mut v = vec![Q::zero(); so_dim(self.n)];
        for (&(i, j), c) in &self.terms {
            v[pair_index(self.n, i, j)] = c.clone();
        }
        v
    }

    pub fn from_coords(n: usize, coords: &[Q]) -> Result<Self> {
        if coords.len() != so_dim(n) {
            return Err(Error::DimensionMismatch(format!("{} coordinates for so({n})", coords.len())));
        }
        let mut x = Self::zero(n);
        for ((i, j), c) in pairs(n).into_iter().zip(coords) {
            if !c.is_zero() {
                x.terms.insert((i, j), c.clone());
            }
        }
        Ok(x)
    }

    /// The `N×N` matrix in the defining representation.
    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.n, self.n);
        for (&(i, j), c) in &self.terms {
            m[(j - 1, i - 1)] += c;
            m[(i - 1, j - 1)] -= c;
        }
        m
    }

    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        let n = m.rows();
        if !m.is_square() {
            return Err(Error::DimensionMismatch("non-square matrix".into()));
        }
        let mut x = Self::zero(n);
        for (i, j) in pairs(n) {
            let c = m[(j - 1, i - 1)].clone();
            if c != -m[(i - 1, j - 1)].clone() {
                return Err(Error::domain("matrix is not antisymmetric"));
            }
            if !c.is_zero() {
                x.terms.insert((i, j), c);
            }
        }
        for i in 0..n {
            if !m[(i, i)].is_zero() {
                return Err(Error::domain("matrix is not antisymmetric"));
            }
        }
        Ok(x)
    }

    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.same_n(other)?;
        let mut out = Self::zero(self.n);
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &other.terms {
                let ab = a * b;
                for (sign, p, q) in generator_bracket(i, j, k, l) {
                    let c = if sign > 0 { ab.clone() } else { -ab.clone() };
                    match p.cmp(&q) {
                        std::cmp::Ordering::Less => out.add_term(p, q, c),
                        std::cmp::Ordering::Greater => out.add_term(q, p, -c),
                        std::cmp::Ordering::Equal => {}
                    }
                }
            }
        }
        Ok(out)
    }
}

/// `[X̃_ij, X̃_kl] = −(δ_jk X̃_il − δ_ik X̃_jl − δ_jl X̃_ik + δ_il X̃_jk)` as
/// signed (unordered) generator pairs.
fn generator_bracket(i: usize, j: usize, k: usize, l: usize) -> Vec<(i8, usize, usize)> {
    let mut out = Vec::new();
    if j == k {
        out.push((-1, i, l));
    }
    if i == k {
        out.push((1, j, l));
    }
    if j == l {
        out.push((1, i, k));
    }
    if i == l {
        out.push((-1, j, k));
    }
    out
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(&(i, j), c)| format!("({c})X{i},{j}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "so({}): {self}", self.n)
    }
}

#[derive(Serialize, Deserialize)]
struct LieTermJson {
    i: usize,
    j: usize,
    re: String,
    im: String,
}

#[derive(Serialize, Deserialize)]
struct LieElementJson {
    #[serde(rename = "N")]
    n: usize,
    terms: Vec<LieTermJson>,
}

impl Serialize for LieElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LieElementJson {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| LieTermJson { i, j, re: c.re_string(), im: c.im_string() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LieElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = LieElementJson::deserialize(d)?;
        let mut x = LieElement::zero(raw.n);
        for t in raw.terms {
            if !(1 <= t.i && t.i < t.j && t.j <= raw.n) {
                return Err(D::Error::custom(format!("bad generator index ({},{})", t.i, t.j)));
            }
            let c = Q::from_parts(&t.re, &t.im).map_err(D::Error::custom)?;
            x.add_term(t.i, t.j, c);
        }
        Ok(x)
    }
}

/// `H_l = √−1 · X̃_{l,N+1−l}`.
pub fn cartan_generator(n: usize, l: usize) -> Result<LieElement> {
    if l == 0 || l > n / 2 {
        return Err(Error::domain(format!("Cartan index {l} outside 1..={}", n / 2)));
    }
    Ok(LieElement::generator(n, l, n + 1 - l)?.scale(&Q::i()))
}

fn check_root_index(n: usize, q: usize, l: usize) -> Result<()> {
    let half = n / 2;
    let q_ok = q >= 1 && q <= half && !(n % 2 == 0 && q == half);
    if !q_ok || !(q < l && l < n + 1 - q) {
        return Err(Error::domain(format!("no root vector for N={n}, q={q}, l={l}")));
    }
    Ok(())
}

fn root_vector(n: usize, q: usize, l: usize, sign: i64) -> Result<LieElement> {
    check_root_index(n, q, l)?;
    let a = LieElement::generator(n, l, n + 1 - q)?;
    let b = LieElement::generator(n, q, l)?.scale(&Q::from_ints(0, sign));
    a.add(&b)
}

/// `Ñ_l^q = X̃_{l,N+1−q} + √−1 · X̃_{q,l}`.
pub fn nilpotent_generator(n: usize, q: usize, l: usize) -> Result<LieElement> {
    root_vector(n, q, l, 1)
}

/// `N̄_l^q = X̃_{l,N+1−q} − √−1 · X̃_{q,l}`.
pub fn opposite_generator(n: usize, q: usize, l: usize) -> Result<LieElement> {
    root_vector(n, q, l, -1)
}

/// All `(q, l)` with `q ≤ s` for which `Ñ_l^q` is defined, in lexicographic order.
pub fn root_indices(n: usize, s: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for q in 1..=s {
        for l in q + 1..n + 1 - q {
            if check_root_index(n, q, l).is_ok() {
                out.push((q, l));
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Segment {
    Nilpotent,
    Cartan,
    Opposite,
    Block,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisLabel {
    Nilpotent { q: usize, l: usize },
    Cartan { l: usize },
    Opposite { q: usize, l: usize },
    Block { i: usize, j: usize },
}

impl BasisLabel {
    pub fn segment(&self) -> Segment {
        match self {
            BasisLabel::Nilpotent { .. } => Segment::Nilpotent,
            BasisLabel::Cartan { .. } => Segment::Cartan,
            BasisLabel::Opposite { .. } => Segment::Opposite,
            BasisLabel::Block { .. } => Segment::Block,
        }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Nilpotent { q, l } => write!(f, "N{l}^{q}"),
            BasisLabel::Cartan { l } => write!(f, "H{l}"),
            BasisLabel::Opposite { q, l } => write!(f, "Nbar{l}^{q}"),
            BasisLabel::Block { i, j } => write!(f, "X{i},{j}"),
        }
    }
}

/// Ordered basis of `so(N, C)` whose leading segment spans the nilpotent
/// subalgebra `ñ(0)^s`.
#[derive(Debug)]
pub struct AdaptedBasis {
    n: usize,
    s: usize,
    elements: Vec<LieElement>,
    labels: Vec<BasisLabel>,
    nilpotent_len: usize,
    /// Column `g` holds the slot coordinates of the `g`-th generator `X̃_ij`.
    to_slots: Matrix,
    /// `[e_a, e_b]` in slot coordinates, indexed `a * dim + b`.
    structure: Vec<Vec<(usize, Q)>>,
}

impl AdaptedBasis {
    pub fn new(n: usize, s: usize) -> Result<Self> {
        check_n(n)?;
        if s > n / 2 {
            return Err(Error::domain(format!("depth s={s} exceeds [N/2]={}", n / 2)));
        }
        let mut elements = Vec::new();
        let mut labels = Vec::new();
        let roots = root_indices(n, s);
        for &(q, l) in &roots {
            elements.push(nilpotent_generator(n, q, l)?);
            labels.push(BasisLabel::Nilpotent { q, l });
        }
        for l in 1..=n / 2 {
            elements.push(cartan_generator(n, l)?);
            labels.push(BasisLabel::Cartan { l });
        }
        for &(q, l) in &roots {
            elements.push(opposite_generator(n, q, l)?);
            labels.push(BasisLabel::Opposite { q, l });
        }
        for i in s + 1..=n - s {
            for j in i + 1..=n - s {
                if j != n + 1 - i {
                    elements.push(LieElement::generator(n, i, j)?);
                    labels.push(BasisLabel::Block { i, j });
                }
            }
        }
        let dim = so_dim(n);
        if elements.len() != dim {
            return Err(Error::internal(format!(
                "adapted basis for N={n}, s={s} has {} elements, expected {dim}",
                elements.len()
            )));
        }
        let mut cols = Matrix::zeros(dim, dim);
        for (a, e) in elements.iter().enumerate() {
            for (g, c) in e.coords().into_iter().enumerate() {
                cols[(g, a)] = c;
            }
        }
        let to_slots = cols
            .inverse()
            .map_err(|_| Error::internal(format!("adapted basis for N={n}, s={s} is not of full rank")))?;
        let mut basis = Self {
            n,
            s,
            elements,
            labels,
            nilpotent_len: roots.len(),
            to_slots,
            structure: Vec::new(),
        };
        let mut structure = Vec::with_capacity(dim * dim);
        for a in 0..dim {
            for b in 0..dim {
                let br = basis.elements[a].bracket(&basis.elements[b])?;
                structure.push(basis.slot_coords(&br)?);
            }
        }
        basis.structure = structure;
        Ok(basis)
    }

    /// Process-wide shared instance.
    pub fn shared(n: usize, s: usize) -> Result<Arc<AdaptedBasis>> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<AdaptedBasis>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(b) = cache.lock().expect("basis cache poisoned").get(&(n, s)) {
            return Ok(b.clone());
        }
        let built = Arc::new(AdaptedBasis::new(n, s)?);
        let mut guard = cache.lock().expect("basis cache poisoned");
        Ok(guard.entry((n, s)).or_insert(built).clone())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[LieElement] {
        &self.elements
    }

    pub fn element(&self, slot: usize) -> &LieElement {
        &self.elements[slot]
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn label(&self, slot: usize) -> BasisLabel {
        self.labels[slot]
    }

    pub fn nilpotent_len(&self) -> usize {
        self.nilpotent_len
    }

    pub fn is_nilpotent_slot(&self, slot: usize) -> bool {
        slot < self.nilpotent_len
    }

    pub fn slot_of(&self, label: BasisLabel) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn segment_len(&self, seg: Segment) -> usize {
        self.labels.iter().filter(|l| l.segment() == seg).count()
    }

    /// Sparse slot coordinates of a Lie element.
    pub fn slot_coords(&self, x: &LieElement) -> Result<Vec<(usize, Q)>> {
        if x.n() != self.n {
            return Err(Error::DimensionMismatch(format!("so({}) element in so({}) basis", x.n(), self.n)));
        }
        let mut acc = vec![Q::zero(); self.dim()];
        for (&(i, j), c) in x.terms() {
            let g = pair_index(self.n, i, j);
            for (a, slot) in acc.iter_mut().enumerate() {
                let t = &self.to_slots[(a, g)];
                if !t.is_zero() {
                    *slot += &(t * c);
                }
            }
        }
        Ok(acc.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
    }

    /// `[e_a, e_b]` in slot coordinates.
    pub fn bracket_slots(&self, a: usize, b: usize) -> &[(usize, Q)] {
        &self.structure[a * self.dim() + b]
    }

    /// Rank of the matrix whose columns are the basis elements.
    pub fn rank(&self) -> usize {
        let dim = self.dim();
        let mut m = Matrix::zeros(dim, dim);
        for (a, e) in self.elements.iter().enumerate() {
            for (g, c) in e.coords().into_iter().enumerate() {
                m[(g, a)] = c;
            }
        }
        m.rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize, j: usize) -> LieElement {
        LieElement::generator(n, i, j).unwrap()
    }

    fn matrix_bracket(a: &LieElement, b: &LieElement) -> LieElement {
        let (ma, mb) = (a.to_matrix(), b.to_matrix());
        let c = ma.mul(&mb).unwrap().sub(&mb.mul(&ma).unwrap()).unwrap();
        LieElement::from_matrix(&c).unwrap()
    }

    #[test]
    fn bracket_matches_matrix_commutator() {
        for n in 3..=6 {
            for (i, j) in pairs(n) {
                for (k, l) in pairs(n) {
                    let (a, b) = (x(n, i, j), x(n, k, l));
                    assert_eq!(a.bracket(&b).unwrap(), matrix_bracket(&a, &b), "[X{i}{j}, X{k}{l}]");
                }
            }
        }
    }

    #[test]
    fn bracket_examples() {
        assert!(x(4, 1, 2).bracket(&x(4, 3, 4)).unwrap().is_zero());
        assert_eq!(x(4, 1, 2).bracket(&x(4, 1, 3)).unwrap(), x(4, 2, 3));
        let h1 = cartan_generator(4, 1).unwrap();
        let n21 = nilpotent_generator(4, 1, 2).unwrap();
        assert_eq!(h1.bracket(&n21).unwrap(), n21);
        assert!(x(4, 1, 2).bracket(&x(5, 1, 2)).is_err());
    }

    #[test]
    fn antisymmetry_convention() {
        assert_eq!(x(4, 3, 1), x(4, 1, 3).scale(&-Q::one()));
        assert!(x(4, 2, 2).is_zero());
    }

    #[test]
    fn nilpotent_generator_formula() {
        let e = nilpotent_generator(4, 1, 2).unwrap();
        assert_eq!(e, x(4, 2, 4).add(&x(4, 1, 2).scale(&Q::i())).unwrap());
        let e = nilpotent_generator(5, 2, 3).unwrap();
        assert_eq!(e, x(5, 3, 4).add(&x(5, 2, 3).scale(&Q::i())).unwrap());
        assert!(nilpotent_generator(4, 2, 3).is_err());
        assert!(nilpotent_generator(5, 1, 5).is_err());
    }

    #[test]
    fn root_vectors_and_abelian_pieces() {
        for n in 3..=8 {
            for (q, l) in root_indices(n, n / 2) {
                let h = cartan_generator(n, q).unwrap();
                let e = nilpotent_generator(n, q, l).unwrap();
                assert_eq!(h.bracket(&e).unwrap(), e, "N={n} q={q} l={l}");
                for (q2, k) in root_indices(n, n / 2) {
                    if q2 == q {
                        let f = nilpotent_generator(n, q, k).unwrap();
                        assert!(e.bracket(&f).unwrap().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn adapted_basis_shapes() {
        let b = AdaptedBasis::new(4, 0).unwrap();
        assert_eq!(b.nilpotent_len(), 0);
        assert_eq!(b.segment_len(Segment::Cartan), 2);
        assert_eq!(b.dim(), 6);

        let b = AdaptedBasis::new(4, 1).unwrap();
        assert_eq!(
            b.labels(),
            &[
                BasisLabel::Nilpotent { q: 1, l: 2 },
                BasisLabel::Nilpotent { q: 1, l: 3 },
                BasisLabel::Cartan { l: 1 },
                BasisLabel::Cartan { l: 2 },
                BasisLabel::Opposite { q: 1, l: 2 },
                BasisLabel::Opposite { q: 1, l: 3 },
            ]
        );

        let b = AdaptedBasis::new(6, 2).unwrap();
        assert_eq!(b.dim(), 15);
        assert_eq!(b.nilpotent_len(), 6);
        assert_eq!(b.rank(), 15);
        assert!(AdaptedBasis::new(4, 3).is_err());
    }

    #[test]
    fn adapted_basis_full_rank_everywhere() {
        for n in 2..=8 {
            for s in 0..=n / 2 {
                let b = AdaptedBasis::new(n, s).unwrap();
                assert_eq!(b.rank(), so_dim(n), "N={n} s={s}");
            }
        }
    }

    #[test]
    fn slot_coordinates_round_trip() {
        let b = AdaptedBasis::new(5, 1).unwrap();
        let y = x(5, 1, 3).add(&x(5, 2, 4).scale(&Q::from_ints(2, -1))).unwrap();
        let mut back = LieElement::zero(5);
        for (slot, c) in b.slot_coords(&y).unwrap() {
            back = back.add(&b.element(slot).scale(&c)).unwrap();
        }
        assert_eq!(back, y);
    }

    #[test]
    fn json_round_trip() {
        let y = x(4, 1, 3).add(&x(4, 2, 4).scale(&Q::from_ints(1, -3))).unwrap();
        let s = serde_json::to_string(&y).unwrap();
        assert!(s.contains("\"N\":4"));
        let back: LieElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, y);
    }
}
