//! Small irreducible representations of `so(N)` realized inside tensor
//! powers of the defining representation, with exact arithmetic.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::enveloping::UElement;
use crate::error::{Error, Result};
use crate::hc_eigen::Weight;
use crate::liealg::{nilpotent_generator, opposite_generator, pairs, root_indices, LieElement};
use crate::linalg::{sparse_axpy, sparse_inner, EchelonSpan, Matrix, SparseVec};
use crate::scalar::{rat, GaussianRational as Q, Rational};

/// Largest `Σ |λ_l|` accepted by [`build_irrep`].
pub const MAX_IRREP_DEGREE: usize = 6;

/// Columns of a sparse square matrix: `cols[c]` lists `(row, value)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    dim: usize,
    cols: Vec<Vec<(usize, Q)>>,
}

impl SparseMatrix {
    pub fn from_dense(m: &Matrix) -> Self {
        let cols = (0..m.cols())
            .map(|c| (0..m.rows()).filter(|&r| !m[(r, c)].is_zero()).map(|r| (r, m[(r, c)].clone())).collect())
            .collect();
        Self { dim: m.rows(), cols }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn column(&self, c: usize) -> &[(usize, Q)] {
        &self.cols[c]
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.cols.len());
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                m[(*r, c)] = v.clone();
            }
        }
        m
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, a) in &self.cols[c] {
                out[*r] += &(a * x);
            }
        }
        out
    }
}

/// The defining representation in the weight basis: position `l−1` holds
/// `f_l^+ = e_l + √−1 e_{N+1−l}`, position `N−l` holds `f_l^- = e_l − √−1 e_{N+1−l}`,
/// and for odd `N` the middle position holds `e_{[N/2]+1}`.
#[derive(Clone, Debug)]
pub struct DefiningFrame {
    n: usize,
    change: Matrix,
    change_inv: Matrix,
}

impl DefiningFrame {
    pub fn new(n: usize) -> Self {
        let m = n / 2;
        let mut p = Matrix::zeros(n, n);
        for l in 1..=m {
            p[(l - 1, l - 1)] = Q::one();
            p[(n - l, l - 1)] = Q::i();
            p[(l - 1, n - l)] = Q::one();
            p[(n - l, n - l)] = -Q::i();
        }
        if n % 2 == 1 {
            p[(m, m)] = Q::one();
        }
        let change_inv = p.inverse().expect("weight frame is a basis");
        Self { n, change: p, change_inv }
    }

    /// Matrix of a defining-space endomorphism in the weight basis.
    pub fn conjugate(&self, x: &Matrix) -> SparseMatrix {
        let m = self.change_inv.mul(x).and_then(|t| t.mul(&self.change)).expect("square matrices of size N");
        SparseMatrix::from_dense(&m)
    }

    /// Float version of [`DefiningFrame::conjugate`] for real matrices given by rows.
    pub fn conjugate_f64(&self, x: &[Vec<f64>]) -> Vec<Vec<Complex64>> {
        let n = self.n;
        let p: Vec<Vec<Complex64>> =
            (0..n).map(|r| (0..n).map(|c| self.change[(r, c)].to_complex64()).collect()).collect();
        let pinv: Vec<Vec<Complex64>> =
            (0..n).map(|r| (0..n).map(|c| self.change_inv[(r, c)].to_complex64()).collect()).collect();
        let mut xp = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        for r in 0..n {
            for c in 0..n {
                for t in 0..n {
                    xp[r][c] += p[t][c] * x[r][t];
                }
            }
        }
        let mut out = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        for r in 0..n {
            for c in 0..n {
                for t in 0..n {
                    out[r][c] += pinv[r][t] * xp[t][c];
                }
            }
        }
        out
    }

    /// Weight (eigenvalues of `H_1, …, H_[N/2]`) of the basis position `k`.
    pub fn weight_of(&self, k: usize) -> Vec<i64> {
        let m = self.n / 2;
        let mut w = vec![0; m];
        if k < m {
            w[k] = 1;
        } else if k >= self.n - m {
            w[self.n - 1 - k] = -1;
        }
        w
    }

    /// Squared norm of the basis position `k` in the standard Hermitian product.
    pub fn norm_sqr(&self, k: usize) -> i64 {
        if self.n % 2 == 1 && k == self.n / 2 {
            1
        } else {
            2
        }
    }
}

/// Tensor indices are base-`N` digit strings of length `d`, digit `p` being
/// the factor in position `p`.
#[derive(Clone, Debug)]
struct TensorSpace {
    n: usize,
    d: usize,
    powers: Vec<usize>,
}

impl TensorSpace {
    fn new(n: usize, d: usize) -> Self {
        Self { n, d, powers: (0..d).map(|p| n.pow(p as u32)).collect() }
    }

    fn size(&self) -> usize {
        self.n.pow(self.d as u32)
    }

    fn digit(&self, idx: usize, p: usize) -> usize {
        (idx / self.powers[p]) % self.n
    }

    fn digits(&self, idx: usize) -> Vec<usize> {
        (0..self.d).map(|p| self.digit(idx, p)).collect()
    }

    /// `Σ_p 1⊗…⊗x⊗…⊗1`.
    fn apply_lie(&self, x: &SparseMatrix, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&idx, c) in v {
            for p in 0..self.d {
                let a = self.digit(idx, p);
                for (b, val) in x.column(a) {
                    let j = idx - a * self.powers[p] + b * self.powers[p];
                    let e = out.entry(j).or_insert_with(Q::zero);
                    *e += &(c * val);
                }
            }
        }
        out.retain(|_, x| !x.is_zero());
        out
    }

    /// `g ⊗ … ⊗ g`.
    fn apply_group(&self, g: &SparseMatrix, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&idx, c) in v {
            let mut partial: Vec<(usize, Q)> = vec![(0, c.clone())];
            for p in 0..self.d {
                let a = self.digit(idx, p);
                let mut next = Vec::new();
                for (j, x) in &partial {
                    for (b, val) in g.column(a) {
                        next.push((j + b * self.powers[p], x * val));
                    }
                }
                partial = next;
            }
            for (j, x) in partial {
                let e = out.entry(j).or_insert_with(Q::zero);
                *e += &x;
            }
        }
        out.retain(|_, x| !x.is_zero());
        out
    }
}

/// An irreducible representation with exact generator matrices.
#[derive(Debug)]
pub struct Irrep {
    n: usize,
    weight: Weight,
    frame: DefiningFrame,
    tensor: TensorSpace,
    span: EchelonSpan,
    highest_ambient: SparseVec,
    highest: Vec<Q>,
    generators: BTreeMap<(usize, usize), SparseMatrix>,
}

fn add_weights(a: &mut [i64], b: &[i64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

/// Builds `V_λ` inside the `Σ|λ_l|`-th tensor power of the defining representation.
pub fn build_irrep(n: usize, weight: &Weight) -> Result<Irrep> {
    if weight.n() != n {
        return Err(Error::DimensionMismatch(format!("weight for so({}) used with so({n})", weight.n())));
    }
    let d = weight.degree();
    if d > MAX_IRREP_DEGREE {
        return Err(Error::resource(format!("Σ|λ| = {d} exceeds the irrep cap {MAX_IRREP_DEGREE}")));
    }
    let frame = DefiningFrame::new(n);
    let tensor = TensorSpace::new(n, d);
    let target = weight.entries();

    let weight_space: Vec<usize> = (0..tensor.size())
        .filter(|&idx| {
            let mut w = vec![0; n / 2];
            for a in tensor.digits(idx) {
                add_weights(&mut w, &frame.weight_of(a));
            }
            w == target
        })
        .collect();
    if weight_space.is_empty() {
        return Err(Error::Construction(format!("no tensors of weight {weight} in degree {d}")));
    }

    let raising: Vec<SparseMatrix> = root_indices(n, n / 2)
        .into_iter()
        .map(|(q, l)| nilpotent_generator(n, q, l).map(|x| frame.conjugate(&x.to_matrix())))
        .collect::<Result<_>>()?;
    let mut rows: BTreeMap<(usize, usize), Vec<Q>> = BTreeMap::new();
    for (c, &idx) in weight_space.iter().enumerate() {
        let unit: SparseVec = [(idx, Q::one())].into_iter().collect();
        for (op, x) in raising.iter().enumerate() {
            for (j, v) in tensor.apply_lie(x, &unit) {
                rows.entry((op, j)).or_insert_with(|| vec![Q::zero(); weight_space.len()])[c] = v;
            }
        }
    }
    let highest_coords = if rows.is_empty() {
        let mut e = vec![Q::zero(); weight_space.len()];
        e[0] = Q::one();
        e
    } else {
        let system = Matrix::from_rows(rows.into_values().collect())?;
        system
            .nullspace()
            .into_iter()
            .next()
            .ok_or_else(|| Error::Construction(format!("no highest vector of weight {weight} in degree {d}")))?
    };
    let highest_ambient: SparseVec =
        weight_space.iter().zip(highest_coords).filter(|(_, c)| !c.is_zero()).map(|(&i, c)| (i, c)).collect();

    let lowering: Vec<SparseMatrix> = root_indices(n, n / 2)
        .into_iter()
        .map(|(q, l)| opposite_generator(n, q, l).map(|x| frame.conjugate(&x.to_matrix())))
        .collect::<Result<_>>()?;
    let mut span = EchelonSpan::new();
    span.insert(&highest_ambient);
    let mut queue = VecDeque::from([highest_ambient.clone()]);
    while let Some(v) = queue.pop_front() {
        for x in &lowering {
            let w = tensor.apply_lie(x, &v);
            if !w.is_empty() && span.insert(&w) {
                queue.push_back(w);
            }
        }
    }

    let mut generators = BTreeMap::new();
    for (i, j) in pairs(n) {
        let x = frame.conjugate(&LieElement::generator(n, i, j)?.to_matrix());
        let cols = span
            .rows()
            .iter()
            .map(|row| {
                let image = tensor.apply_lie(&x, row);
                let coords = span
                    .coordinates(&image)
                    .ok_or_else(|| Error::internal("cyclic span is not invariant under the generators"))?;
                Ok(coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        generators.insert((i, j), SparseMatrix { dim: span.dim(), cols });
    }
    let highest = span.coordinates(&highest_ambient).ok_or_else(|| Error::internal("highest vector left its span"))?;
    Ok(Irrep { n, weight: weight.clone(), frame, tensor, span, highest_ambient, highest, generators })
}

type IrrepCache = Mutex<HashMap<Weight, Arc<Irrep>>>;

/// Process-wide cache of built irreps keyed by weight.
pub fn shared_irrep(weight: &Weight) -> Result<Arc<Irrep>> {
    static CACHE: OnceLock<IrrepCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(r) = cache.lock().expect("irrep cache poisoned").get(weight) {
        return Ok(r.clone());
    }
    let built = Arc::new(build_irrep(weight.n(), weight)?);
    Ok(cache.lock().expect("irrep cache poisoned").entry(weight.clone()).or_insert(built).clone())
}

impl Irrep {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    /// Tensor degree of the ambient space.
    pub fn degree(&self) -> usize {
        self.tensor.d
    }

    pub fn highest_vector(&self) -> &[Q] {
        &self.highest
    }

    pub fn highest_ambient(&self) -> &SparseVec {
        &self.highest_ambient
    }

    pub fn generator(&self, i: usize, j: usize) -> Result<&SparseMatrix> {
        let key = if i < j { (i, j) } else { (j, i) };
        self.generators
            .get(&key)
            .ok_or_else(|| Error::domain(format!("no generator X{i},{j} in so({})", self.n)))
    }

    /// `dπ(X̃_ij)` (with `X̃_ji = −X̃_ij`).
    pub fn generator_matrix(&self, i: usize, j: usize) -> Result<Matrix> {
        let m = self.generator(i, j)?.to_dense();
        Ok(if i < j { m } else { m.scale(&-Q::one()) })
    }

    /// `dπ(x)` for a Lie algebra element.
    pub fn lie_matrix(&self, x: &LieElement) -> Result<SparseMatrix> {
        if x.n() != self.n {
            return Err(Error::DimensionMismatch(format!("so({}) element on so({}) irrep", x.n(), self.n)));
        }
        let dim = self.dim();
        let mut cols: Vec<SparseVec> = vec![SparseVec::new(); dim];
        for (&(i, j), c) in x.terms() {
            let g = self.generator(i, j)?;
            for (col, out) in cols.iter_mut().enumerate() {
                let src: SparseVec = g.column(col).iter().cloned().collect();
                sparse_axpy(out, c, &src);
            }
        }
        Ok(SparseMatrix { dim, cols: cols.into_iter().map(|c| c.into_iter().collect()).collect() })
    }

    /// Embeds coordinates into the ambient tensor space.
    pub fn embed(&self, coords: &[Q]) -> SparseVec {
        let mut out = SparseVec::new();
        for (row, c) in self.span.rows().iter().zip(coords) {
            if !c.is_zero() {
                sparse_axpy(&mut out, c, row);
            }
        }
        out
    }

    /// Standard Hermitian product of the ambient tensor space,
    /// conjugate-linear in the first argument.
    pub fn ambient_inner(&self, a: &SparseVec, b: &SparseVec) -> Q {
        sparse_inner(a, b, |idx| {
            let w: i64 = self.tensor.digits(idx).into_iter().map(|k| self.frame.norm_sqr(k)).product();
            Q::from_int(w)
        })
    }

    pub fn inner(&self, a: &[Q], b: &[Q]) -> Q {
        self.ambient_inner(&self.embed(a), &self.embed(b))
    }

    /// Action of a defining-space matrix `g` through `g ⊗ … ⊗ g`, in coordinates.
    pub fn group_matrix(&self, g: &Matrix) -> Result<Matrix> {
        let gs = self.frame.conjugate(g);
        let dim = self.dim();
        let mut out = Matrix::zeros(dim, dim);
        for (c, row) in self.span.rows().iter().enumerate() {
            let image = self.tensor.apply_group(&gs, row);
            let coords =
                self.span.coordinates(&image).ok_or_else(|| Error::domain("group element does not preserve the irrep"))?;
            for (r, v) in coords.into_iter().enumerate() {
                out[(r, c)] = v;
            }
        }
        Ok(out)
    }
}

impl Irrep {
    /// `⟨a, (u ⊗ … ⊗ u) b⟩` for a real matrix `u` given by rows, in floats.
    pub fn matrix_coefficient(&self, u: &[Vec<f64>], a: &SparseVec, b: &SparseVec) -> Result<Complex64> {
        let n = self.n;
        if u.len() != n || u.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("expected a {n}x{n} matrix")));
        }
        let uf = self.frame.conjugate_f64(u);
        let mut acc = Complex64::new(0.0, 0.0);
        for (&i, x) in a {
            let wx = x.conj().to_complex64() * self.frame_weight(i);
            for (&j, y) in b {
                let mut prod = wx * y.to_complex64();
                for p in 0..self.tensor.d {
                    prod *= uf[self.tensor.digit(i, p)][self.tensor.digit(j, p)];
                }
                acc += prod;
            }
        }
        Ok(acc)
    }

    /// Defining-space basis positions of an ambient tensor index.
    pub fn ambient_digits(&self, idx: usize) -> Vec<usize> {
        self.tensor.digits(idx)
    }

    pub fn frame(&self) -> &DefiningFrame {
        &self.frame
    }

    pub fn frame_weight(&self, idx: usize) -> f64 {
        self.tensor.digits(idx).into_iter().map(|k| self.frame.norm_sqr(k) as f64).product()
    }
}

/// `dπ(x)` as a matrix, multiplying generator images along each monomial.
pub fn act(x: &UElement, rho: &Irrep) -> Result<Matrix> {
    if x.n() != rho.n {
        return Err(Error::DimensionMismatch(format!("so({}) element acting on so({}) irrep", x.n(), rho.n)));
    }
    let basis = x.basis();
    let mut slot_mats: HashMap<u8, SparseMatrix> = HashMap::new();
    for mono in x.terms().keys() {
        for &s in mono {
            if let std::collections::hash_map::Entry::Vacant(e) = slot_mats.entry(s) {
                e.insert(rho.lie_matrix(basis.element(s as usize))?);
            }
        }
    }
    let dim = rho.dim();
    let mut out = Matrix::zeros(dim, dim);
    for col in 0..dim {
        let mut unit = vec![Q::zero(); dim];
        unit[col] = Q::one();
        let mut memo: HashMap<&[u8], Vec<Q>> = HashMap::new();
        for (mono, c) in x.terms() {
            let v = suffix_image(mono, &unit, &slot_mats, &mut memo);
            for (r, val) in v.iter().enumerate() {
                if !val.is_zero() {
                    out[(r, col)] += &(c * val);
                }
            }
        }
    }
    Ok(out)
}

fn suffix_image<'a>(
    mono: &'a [u8],
    unit: &[Q],
    mats: &HashMap<u8, SparseMatrix>,
    memo: &mut HashMap<&'a [u8], Vec<Q>>,
) -> Vec<Q> {
    if mono.is_empty() {
        return unit.to_vec();
    }
    if let Some(v) = memo.get(mono) {
        return v.clone();
    }
    let rest = suffix_image(&mono[1..], unit, mats, memo);
    let v = mats[&mono[0]].apply(&rest);
    memo.insert(mono, v.clone());
    v
}

/// `(c, true)` when `dπ(x) = c·1`; otherwise the first diagonal entry and `false`.
pub fn central_scalar(x: &UElement, rho: &Irrep) -> Result<(Q, bool)> {
    let m = act(x, rho)?;
    let c = m[(0, 0)].clone();
    let scalar = m == Matrix::identity(rho.dim()).scale(&c);
    Ok((c, scalar))
}

/// Fixed vectors of `S(O(N−k) × O(k))` in coordinates, with their squared norms.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedVectorData {
    pub k: usize,
    pub basis: Vec<Vec<Q>>,
    pub norms_sqr: Vec<Rational>,
}

impl FixedVectorData {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// The signed diagonal matrix flipping coordinates `N−k` and `N−k+1`.
pub fn component_representative(n: usize, k: usize) -> Matrix {
    let mut g = Matrix::identity(n);
    g[(n - k - 1, n - k - 1)] = -Q::one();
    g[(n - k, n - k)] = -Q::one();
    g
}

pub fn fixed_subspace(rho: &Irrep, k: usize) -> Result<FixedVectorData> {
    let n = rho.n;
    if k == 0 || k >= n {
        return Err(Error::domain(format!("subgroup parameter k={k} outside 1..{n}")));
    }
    let dim = rho.dim();
    let split = n - k;
    let adjacent: Vec<(usize, usize)> =
        (1..n).filter(|&i| i != split).map(|i| (i, i + 1)).collect();
    let mut kernel: Vec<Vec<Q>> =
        (0..dim).map(|c| (0..dim).map(|r| if r == c { Q::one() } else { Q::zero() }).collect()).collect();
    for (i, j) in adjacent {
        if kernel.is_empty() {
            break;
        }
        let x = rho.generator(i, j)?;
        kernel = restrict_kernel(&kernel, |v| x.apply(v))?;
    }
    let g = rho.group_matrix(&component_representative(n, k))?;
    let basis = if kernel.is_empty() {
        kernel
    } else {
        restrict_kernel(&kernel, |v| {
            let gv = g.mul_vec(v).expect("square");
            gv.iter().zip(v).map(|(a, b)| a - b).collect()
        })?
    };
    let norms_sqr = basis.iter().map(|v| rho.inner(v, v).re().clone()).collect();
    Ok(FixedVectorData { k, basis, norms_sqr })
}

/// Vectors in the span of `basis` annihilated by `op`.
fn restrict_kernel(basis: &[Vec<Q>], op: impl Fn(&[Q]) -> Vec<Q>) -> Result<Vec<Vec<Q>>> {
    let images: Vec<Vec<Q>> = basis.iter().map(|v| op(v)).collect();
    let dim = images[0].len();
    let rows: Vec<Vec<Q>> = (0..dim)
        .map(|r| images.iter().map(|col| col[r].clone()).collect::<Vec<Q>>())
        .filter(|row| row.iter().any(|x| !x.is_zero()))
        .collect();
    if rows.is_empty() {
        return Ok(basis.to_vec());
    }
    let coeffs = Matrix::from_rows(rows)?.nullspace();
    Ok(coeffs
        .into_iter()
        .map(|a| {
            let mut v = vec![Q::zero(); basis[0].len()];
            for (t, c) in a.iter().enumerate() {
                if !c.is_zero() {
                    for (x, y) in v.iter_mut().zip(&basis[t]) {
                        *x += &(c * y);
                    }
                }
            }
            v
        })
        .collect())
}

fn single_fixed(rho: &Irrep, k: usize, side: &str) -> Result<Vec<Q>> {
    let data = fixed_subspace(rho, k)?;
    match data.dim() {
        0 => Err(Error::domain(format!("{side} fixed subspace (k={k}) of {} is empty", rho.weight))),
        1 => Ok(data.basis.into_iter().next().expect("one vector")),
        d => Err(Error::internal(format!("{side} fixed subspace (k={k}) of {} has dimension {d}", rho.weight))),
    }
}

/// `(⟨v_1, v_2⟩, ‖v_1‖², ‖v_2‖²)` for the fixed vectors of `k1` and `k2`.
pub fn pair_fixed(rho: &Irrep, k1: usize, k2: usize) -> Result<(Q, Rational, Rational)> {
    let v1 = single_fixed(rho, k1, "first")?;
    let v2 = single_fixed(rho, k2, "second")?;
    let inner = rho.inner(&v1, &v2);
    Ok((inner, rho.inner(&v1, &v1).re().clone(), rho.inner(&v2, &v2).re().clone()))
}

/// `|⟨v_1, v_2⟩|² / (‖v_1‖² ‖v_2‖²)`.
pub fn pairing_ratio(rho: &Irrep, k1: usize, k2: usize) -> Result<Rational> {
    let (inner, a, b) = pair_fixed(rho, k1, k2)?;
    Ok(inner.norm_sqr() / (a * b))
}

/// Orthogonal projection of the highest vector onto the fixed line.
pub fn averaged_vector(rho: &Irrep, k: usize) -> Result<Vec<Q>> {
    let b = single_fixed(rho, k, "averaging")?;
    let num = rho.inner(&b, &rho.highest);
    if num.is_zero() {
        return Err(Error::domain(format!("highest vector of {} is orthogonal to the k={k} fixed line", rho.weight)));
    }
    let c = &num / &rho.inner(&b, &b);
    Ok(b.iter().map(|x| &c * x).collect())
}

/// `W̃_1` scalar expected on the defining representation: `−(N−1)`.
pub fn defining_casimir(n: usize) -> Rational {
    rat(-(n as i64 - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enveloping::{pfaffian_casimir_in, Algebra};
    use crate::scalar::ratio;

    fn w(n: usize, s: &str) -> Weight {
        Weight::parse(n, s).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(build_irrep(4, &w(4, "1,0")).unwrap().dim(), 4);
        assert_eq!(build_irrep(3, &w(3, "2")).unwrap().dim(), 5);
        assert_eq!(build_irrep(4, &w(4, "1,1")).unwrap().dim(), 3);
        assert_eq!(build_irrep(4, &w(4, "1,-1")).unwrap().dim(), 3);
        assert_eq!(build_irrep(4, &w(4, "0,0")).unwrap().dim(), 1);
        // Weyl dimension formula for so(5): (2,1) has dimension 35.
        assert_eq!(build_irrep(5, &w(5, "2,1")).unwrap().dim(), 35);
    }

    #[test]
    fn defining_casimir_scalar() {
        let alg = Algebra::shared(4, 0).unwrap();
        let rho = build_irrep(4, &w(4, "1,0")).unwrap();
        let (c, ok) = central_scalar(&pfaffian_casimir_in(&alg, 1).unwrap(), &rho).unwrap();
        assert!(ok);
        assert_eq!(c, Q::from_rational(defining_casimir(4)));
        let x = UElement::generator(&alg, 1, 2).unwrap();
        assert!(!central_scalar(&x, &rho).unwrap().1);
    }

    #[test]
    fn fixed_vector_pairing_matches_harmonic_oracle() {
        let rho = build_irrep(4, &w(4, "2,0")).unwrap();
        assert_eq!(pairing_ratio(&rho, 1, 2).unwrap(), ratio(1, 3));
        assert_eq!(fixed_subspace(&rho, 2).unwrap().dim(), 1);
        assert_eq!(fixed_subspace(&build_irrep(4, &w(4, "1,0")).unwrap(), 2).unwrap().dim(), 0);
        assert_eq!(fixed_subspace(&build_irrep(4, &w(4, "2,2")).unwrap(), 1).unwrap().dim(), 0);
    }
}
