//! Exact integer linear algebra: Hermite and Smith normal forms, kernels,
//! cokernels, saturation and homology of integer cochain complexes.
//!
//! Everything here works over arbitrary-precision integers. Matrices are
//! dense and row-major, except for [`SparseMatrix`], which only supports
//! what large Čech differentials need: products and invariant factors.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};
use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("not a complex: the two differentials leaving degree {degree} compose to a nonzero map")]
    NotAComplex { degree: usize },
    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("rows do not form a basis of a saturated sublattice")]
    NotSaturated,
}

/// Dense integer matrix with arbitrary-precision entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length does not match shape");
        IntMatrix { rows, cols, data }
    }

    /// Builds a matrix from rows; `cols` is needed so that an empty row list
    /// still has a well-defined width.
    pub fn from_rows(cols: usize, rows: &[Vec<BigInt>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r.iter().cloned());
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn from_i64_rows(cols: usize, rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<BigInt>> =
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Self::from_rows(cols, &rows)
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// `A·x` for a column vector `x`.
    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows).map(|i| dot(self.row(i), x)).collect()
    }

    /// `x·A` for a row vector `x`.
    pub fn vec_mul(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.rows);
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += xi * &self[(i, j)];
            }
        }
        out
    }

    pub fn vstack(&self, other: &IntMatrix) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, other: &IntMatrix) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let rows: Vec<Vec<BigInt>> = idx.iter().map(|&i| self.row(i).to_vec()).collect();
        Self::from_rows(self.cols, &rows)
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                m[(i, k)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &IntMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn add_scaled_block(&mut self, r0: usize, c0: usize, block: &IntMatrix, scale: i64) {
        let s = BigInt::from(scale);
        for i in 0..block.rows {
            for j in 0..block.cols {
                let v = &block[(i, j)] * &s;
                self[(r0 + i, c0 + j)] += v;
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * q;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * q;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    pub fn rank(&self) -> usize {
        let (h, _) = hnf(self);
        (0..h.rows).filter(|&i| h.row(i).iter().any(|x| !x.is_zero())).count()
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = a * &rhs[(k, j)];
                    out[(i, j)] += v;
                }
            }
        }
        out
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix({}x{})", self.rows, self.cols)?;
        f.debug_list().entries((0..self.rows).map(|i| RowFmt(self.row(i)))).finish()
    }
}

struct RowFmt<'a>(&'a [BigInt]);

impl fmt::Debug for RowFmt<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn vec_gcd(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides a nonzero vector by the gcd of its entries. Zero vectors are
/// returned unchanged.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = vec_gcd(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

pub fn to_bigint_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn min_abs_entry<I>(m: &IntMatrix, cells: I) -> Option<(usize, usize)>
where
    I: Iterator<Item = (usize, usize)>,
{
    let mut best: Option<(usize, usize)> = None;
    for (i, j) in cells {
        let x = &m[(i, j)];
        if x.is_zero() {
            continue;
        }
        match best {
            Some((bi, bj)) if m[(bi, bj)].abs() <= x.abs() => {}
            _ => best = Some((i, j)),
        }
    }
    best
}

/// Row-style Hermite normal form: returns `(H, T)` with `T` unimodular and
/// `T·A = H`. Pivots are positive and entries above a pivot lie in
/// `[0, pivot)`. Zero rows of `H` come last.
pub fn hnf(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let m = a.rows;
    let mut h = a.clone();
    let mut t = IntMatrix::identity(m);
    let mut r = 0;
    for c in 0..a.cols {
        if r == m {
            break;
        }
        let mut have_pivot = false;
        while let Some((p, _)) = min_abs_entry(&h, (r..m).map(|i| (i, c))) {
            have_pivot = true;
            h.swap_rows(r, p);
            t.swap_rows(r, p);
            let mut clean = true;
            for i in r + 1..m {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = -h[(i, c)].div_floor(&h[(r, c)]);
                h.add_row(i, r, &q);
                t.add_row(i, r, &q);
                if !h[(i, c)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !have_pivot {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            t.negate_row(r);
        }
        for i in 0..r {
            let q = -h[(i, c)].div_floor(&h[(r, c)]);
            h.add_row(i, r, &q);
            t.add_row(i, r, &q);
        }
        r += 1;
    }
    (h, t)
}

/// `U·A·V = S` with `U`, `V` unimodular and `S` in Smith normal form.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// The diagonal of `S`, of length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols)).map(|i| self.s[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Smith normal form. Pivots are chosen as the entry of smallest absolute
/// value in the remaining block (ties broken by row, then column).
pub fn snf(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows, a.cols);
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    'outer: for t in 0..m.min(n) {
        loop {
            let cells = (t..m).flat_map(|i| (t..n).map(move |j| (i, j)));
            let Some((pi, pj)) = min_abs_entry(&s, cells) else {
                break 'outer;
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..m {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = -s[(i, t)].div_floor(&s[(t, t)]);
                s.add_row(i, t, &q);
                u.add_row(i, t, &q);
                clean &= s[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -s[(t, j)].div_floor(&s[(t, t)]);
                s.add_col(j, t, &q);
                v.add_col(j, t, &q);
                clean &= s[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let bad_row = (t + 1..m)
                .find(|&i| (t + 1..n).any(|j| !s[(i, j)].is_multiple_of(&s[(t, t)])));
            match bad_row {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithDecomposition { u, s, v }
}

/// Inverse of a unimodular matrix.
pub fn unimodular_inverse(u: &IntMatrix) -> IntMatrix {
    assert_eq!(u.rows, u.cols);
    let (h, t) = hnf(u);
    assert!(h == IntMatrix::identity(u.rows), "matrix is not unimodular");
    t
}

/// Rows form a basis of the left integer kernel `{x : x·A = 0}`, in Hermite
/// normal form. The result is always saturated.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let (h, t) = hnf(a);
    let rank = (0..h.rows).filter(|&i| h.row(i).iter().any(|x| !x.is_zero())).count();
    let idx: Vec<usize> = (rank..a.rows).collect();
    let k = t.select_rows(&idx);
    hnf(&k).0
}

/// Rows of `A` after HNF with zero rows dropped.
pub fn row_basis(a: &IntMatrix) -> IntMatrix {
    let (h, _) = hnf(a);
    let idx: Vec<usize> =
        (0..h.rows).filter(|&i| h.row(i).iter().any(|x| !x.is_zero())).collect();
    h.select_rows(&idx)
}

/// Basis (in HNF) of the saturation of the row lattice of `A` in `Z^cols`.
pub fn saturate(a: &IntMatrix) -> IntMatrix {
    let right_kernel = kernel_basis(&a.transpose());
    kernel_basis(&right_kernel.transpose())
}

/// Finitely generated abelian group `Z^free_rank ⊕ Z/t_1 ⊕ … ⊕ Z/t_k` with
/// `t_1 | t_2 | … | t_k` and every `t_i ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FinAbGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FinAbGroup { free_rank: rank, torsion: Vec::new() }
    }

    /// Group `⊕ Z/d_i` for an arbitrary list of nonnegative integers; zero
    /// entries contribute free summands. The list need not be a divisibility
    /// chain: it is normalised through a Smith form.
    pub fn from_orders(orders: &[BigInt]) -> Self {
        let n = orders.len();
        let d = IntMatrix::diagonal(n, n, &orders.iter().map(|x| x.abs()).collect::<Vec<_>>());
        let diag = snf(&d).diagonal();
        Self::from_invariant_factors(&diag, 0)
    }

    /// Reads a group off a Smith diagonal already in divisibility order.
    pub fn from_invariant_factors(diag: &[BigInt], extra_free: usize) -> Self {
        let mut g = FinAbGroup::free(extra_free);
        for d in diag {
            if d.is_zero() {
                g.free_rank += 1;
            } else if !d.is_one() {
                g.torsion.push(d.clone());
            }
        }
        g
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Number of cyclic generators in the canonical decomposition.
    pub fn ngens(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut orders = self.torsion.clone();
        orders.extend(other.torsion.iter().cloned());
        let mut g = FinAbGroup::from_orders(&orders);
        g.free_rank = self.free_rank + other.free_rank;
        g
    }
}

impl fmt::Display for FinAbGroup {
    /// Renders as e.g. `Z^2 + Z/2 + Z/6`, or `0` for the trivial group.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            k => parts.push(format!("Z^{k}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Z^rows / (column span of A)`.
pub fn cokernel(a: &IntMatrix) -> FinAbGroup {
    let sd = snf(a);
    let diag = sd.diagonal();
    FinAbGroup::from_invariant_factors(&diag, a.rows - diag.len())
}

/// Solves `A·x = b` over the integers.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(b.len(), a.rows);
    let sd = snf(a);
    let y = sd.u.mul_vec(b);
    let diag = sd.diagonal();
    let mut z = vec![BigInt::zero(); a.cols];
    for (i, yi) in y.iter().enumerate() {
        let d = diag.get(i).cloned().unwrap_or_default();
        if d.is_zero() {
            if !yi.is_zero() {
                return None;
            }
        } else {
            let (q, r) = yi.div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            z[i] = q;
        }
    }
    Some(sd.v.mul_vec(&z))
}

/// Reduces `v` modulo the row lattice of `h`, which must be in row HNF
/// (as produced by [`hnf`] or [`kernel_basis`]). The result is the canonical
/// coset representative: at each pivot column the entry lies in `[0, pivot)`.
pub fn reduce_mod_hnf(v: &[BigInt], h: &IntMatrix) -> Vec<BigInt> {
    let mut out = v.to_vec();
    for i in 0..h.rows {
        let row = h.row(i);
        let Some(c) = row.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        let q = out[c].div_floor(&row[c]);
        if q.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(row) {
            *o -= &q * x;
        }
    }
    out
}

/// Basis of a saturated sublattice of `Z^n` together with the Smith data
/// needed to take coordinates and to lift dual vectors.
#[derive(Clone, Debug)]
pub struct SaturatedBasis {
    basis: IntMatrix,
    // `n × d`: coordinates of `x` are `x·coords`, and `B·(coords·a) = a`.
    coords: IntMatrix,
    // `V` from the Smith form, used for the membership test.
    v: IntMatrix,
}

impl SaturatedBasis {
    pub fn new(basis: IntMatrix) -> Result<Self, LinalgError> {
        let d = basis.rows;
        let sd = snf(&basis);
        if sd.diagonal().iter().any(|x| !x.is_one()) || sd.diagonal().len() != d {
            return Err(LinalgError::NotSaturated);
        }
        let first: Vec<usize> = (0..d).collect();
        let v_head = sd.v.select_cols(&first);
        let coords = &v_head * &sd.u;
        Ok(SaturatedBasis { basis, coords, v: sd.v })
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols
    }

    /// Coordinates `c` with `c·B = x`, or `None` if `x` is not in the
    /// lattice.
    pub fn coordinates(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let w = self.v.vec_mul(x);
        if w[self.dim()..].iter().any(|t| !t.is_zero()) {
            return None;
        }
        Some(self.coords.vec_mul(x))
    }

    /// `n × d` matrix `P` with `coordinates(x) = x·P` for lattice members.
    pub fn coordinate_matrix(&self) -> &IntMatrix {
        &self.coords
    }

    /// Some `m ∈ Z^n` with `B·m = a`.
    pub fn lift(&self, a: &[BigInt]) -> Vec<BigInt> {
        self.coords.mul_vec(a)
    }
}

/// Cochain complex `C^0 → C^1 → … → C^n` of free abelian groups. The
/// differential `d^p : Z^{dims[p]} → Z^{dims[p+1]}` acts on column vectors.
#[derive(Clone, Debug)]
pub struct IntComplex {
    dims: Vec<usize>,
    maps: Vec<IntMatrix>,
}

impl IntComplex {
    pub fn new(dims: Vec<usize>, maps: Vec<IntMatrix>) -> Result<Self, LinalgError> {
        if dims.is_empty() || maps.len() + 1 != dims.len() {
            return Err(LinalgError::ShapeMismatch(format!(
                "{} terms need {} maps, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                maps.len()
            )));
        }
        for (p, d) in maps.iter().enumerate() {
            if d.cols != dims[p] || d.rows != dims[p + 1] {
                return Err(LinalgError::ShapeMismatch(format!(
                    "d^{p} is {}x{}, expected {}x{}",
                    d.rows,
                    d.cols,
                    dims[p + 1],
                    dims[p]
                )));
            }
        }
        for p in 1..maps.len() {
            if !(&maps[p] * &maps[p - 1]).is_zero() {
                return Err(LinalgError::NotAComplex { degree: p - 1 });
            }
        }
        Ok(IntComplex { dims, maps })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn differential(&self, p: usize) -> Option<&IntMatrix> {
        self.maps.get(p)
    }

    /// `d^p` as a matrix, with zero maps at the ends.
    pub fn outgoing(&self, p: usize) -> IntMatrix {
        match self.maps.get(p) {
            Some(d) => d.clone(),
            None => IntMatrix::zeros(0, self.dims[p]),
        }
    }

    pub fn incoming(&self, p: usize) -> IntMatrix {
        if p == 0 {
            IntMatrix::zeros(self.dims[0], 0)
        } else {
            self.maps[p - 1].clone()
        }
    }
}

/// `H^p` of an [`IntComplex`], with cocycle representatives and a reduction
/// map onto canonical coordinates.
///
/// Coordinates are ordered torsion generators first (ascending order) then
/// free generators, matching `group.torsion` followed by `group.free_rank`.
#[derive(Clone, Debug)]
pub struct Homology {
    pub degree: usize,
    pub group: FinAbGroup,
    pub representatives: Vec<Vec<BigInt>>,
    orders: Vec<BigInt>,
    projection: IntMatrix,
}

impl Homology {
    /// Canonical coordinates of the class of the cocycle `z`. Torsion
    /// coordinates are reduced into `[0, order)`. Coboundaries map to zero.
    pub fn reduce(&self, z: &[BigInt]) -> Vec<BigInt> {
        let y = self.projection.mul_vec(z);
        y.into_iter()
            .zip(&self.orders)
            .map(|(c, o)| if o.is_zero() { c } else { c.mod_floor(o) })
            .collect()
    }

    /// Orders of the generators (0 for free ones).
    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    /// The cocycle `Σ c_i · rep_i`.
    pub fn cocycle_from_coordinates(&self, coords: &[BigInt]) -> Vec<BigInt> {
        let n = self.projection.cols();
        let mut z = vec![BigInt::zero(); n];
        for (c, rep) in coords.iter().zip(&self.representatives) {
            for (zi, ri) in z.iter_mut().zip(rep) {
                *zi += c * ri;
            }
        }
        z
    }
}

pub fn homology(c: &IntComplex, p: usize) -> Result<Homology, LinalgError> {
    if p > c.top_degree() {
        return Err(LinalgError::DegreeOutOfRange { degree: p, max: c.top_degree() });
    }
    let n = c.dims[p];
    let d_out = c.outgoing(p);
    let d_in = c.incoming(p);

    let cycles = kernel_basis(&d_out.transpose());
    let k = cycles.rows();
    let sb = SaturatedBasis::new(cycles.clone())?;
    // coordinates of a cycle z: c = P^T z
    let pt = sb.coordinate_matrix().transpose();
    let relations = &pt * &d_in;
    let sd = snf(&relations);
    let diag = sd.diagonal();
    let u_inv = unimodular_inverse(&sd.u);
    let full_proj = &sd.u * &pt;

    let mut gens = Vec::new();
    let mut orders = Vec::new();
    for i in 0..k {
        let d = diag.get(i).cloned().unwrap_or_default();
        if d.is_one() {
            continue;
        }
        gens.push(i);
        orders.push(d);
    }
    let group = FinAbGroup::from_invariant_factors(&diag, k - diag.len());
    let projection = full_proj.select_rows(&gens);
    let representatives = gens.iter().map(|&i| cycles.vec_mul(&u_inv.col(i))).collect();
    debug_assert_eq!(projection.cols(), n);
    Ok(Homology { degree: p, group, representatives, orders, projection })
}

/// Sparse integer matrix, one ordered map per row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, BigInt>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![BTreeMap::new(); rows] }
    }

    pub fn from_dense(a: &IntMatrix) -> Self {
        let mut m = SparseMatrix::zeros(a.rows, a.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                m.add(i, j, &a[(i, j)]);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BTreeMap::is_empty)
    }

    pub fn row(&self, i: usize) -> &BTreeMap<usize, BigInt> {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.data[i].get(&j).cloned().unwrap_or_default()
    }

    /// `self[i][j] += v`.
    pub fn add(&mut self, i: usize, j: usize, v: &BigInt) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        if v.is_zero() {
            return;
        }
        let e = self.data[i].entry(j).or_default();
        *e += v;
        if e.is_zero() {
            self.data[i].remove(&j);
        }
    }

    /// Adds `scale · block` with its top-left corner at `(r0, c0)`.
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &IntMatrix, scale: i64) {
        let s = BigInt::from(scale);
        for i in 0..block.rows {
            for j in 0..block.cols {
                let x = &block[(i, j)];
                if !x.is_zero() {
                    self.add(r0 + i, c0 + j, &(x * &s));
                }
            }
        }
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for (i, row) in self.data.iter().enumerate() {
            for (&j, v) in row {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.cols);
        self.data.iter().map(|row| row.iter().map(|(&j, v)| v * &x[j]).sum()).collect()
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = SparseMatrix::zeros(self.rows, other.cols);
        for (i, row) in self.data.iter().enumerate() {
            for (&k, a) in row {
                for (&j, b) in &other.data[k] {
                    out.add(i, j, &(a * b));
                }
            }
        }
        out
    }
}

/// Nonzero invariant factors of `a`, ascending under divisibility.
///
/// Unit entries are eliminated first, choosing short columns and rows to
/// limit fill-in; whatever is left is handed to [`snf`].
pub fn sparse_invariant_factors(a: &SparseMatrix) -> Vec<BigInt> {
    let mut rows: Vec<BTreeMap<usize, BigInt>> = a.data.clone();
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); a.cols];
    for (i, row) in rows.iter().enumerate() {
        for &j in row.keys() {
            cols[j].insert(i);
        }
    }
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
        cols.iter().enumerate().filter(|(_, c)| !c.is_empty()).map(|(j, c)| Reverse((c.len(), j))).collect();
    let mut units = 0usize;

    while let Some(Reverse((count, j))) = heap.pop() {
        if count != cols[j].len() || count == 0 {
            continue;
        }
        let pivot = cols[j]
            .iter()
            .copied()
            .filter(|&i| rows[i][&j].magnitude().is_one())
            .min_by_key(|&i| rows[i].len());
        let Some(pi) = pivot else {
            continue;
        };
        let prow = std::mem::take(&mut rows[pi]);
        for &c in prow.keys() {
            cols[c].remove(&pi);
        }
        let a_inv = prow[&j].clone();
        let others: Vec<usize> = cols[j].iter().copied().collect();
        let mut touched: BTreeSet<usize> = BTreeSet::new();
        for k in others {
            let factor = &rows[k][&j] * &a_inv;
            for (&c, v) in &prow {
                let e = rows[k].entry(c).or_default();
                *e -= &factor * v;
                if e.is_zero() {
                    rows[k].remove(&c);
                    cols[c].remove(&k);
                } else {
                    cols[c].insert(k);
                }
                touched.insert(c);
            }
        }
        debug_assert!(cols[j].is_empty());
        units += 1;
        for c in touched.into_iter().chain(prow.keys().copied()) {
            if !cols[c].is_empty() {
                heap.push(Reverse((cols[c].len(), c)));
            }
        }
    }

    let live_rows: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i].is_empty()).collect();
    let live_cols: Vec<usize> = (0..cols.len()).filter(|&j| !cols[j].is_empty()).collect();
    let mut rest = vec![BigInt::one(); units];
    if !live_rows.is_empty() {
        let pos: BTreeMap<usize, usize> = live_cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
        let mut m = IntMatrix::zeros(live_rows.len(), live_cols.len());
        for (r, &i) in live_rows.iter().enumerate() {
            for (j, v) in &rows[i] {
                m[(r, pos[j])] = v.clone();
            }
        }
        rest.extend(snf(&m).diagonal().into_iter().filter(|d| !d.is_zero()));
    }
    rest
}

/// `H^p` of the complex `C^{p-1} → C^p → C^{p+1}` given by `d_in` and
/// `d_out` (either may be absent), as an abstract group.
pub fn homology_group(dim: usize, d_in: Option<&SparseMatrix>, d_out: Option<&SparseMatrix>) -> FinAbGroup {
    let out_rank = d_out.map_or(0, |d| sparse_invariant_factors(d).len());
    let in_factors = d_in.map_or_else(Vec::new, sparse_invariant_factors);
    let free = dim - out_rank - in_factors.len();
    FinAbGroup { free_rank: free, torsion: in_factors.into_iter().filter(|d| !d.is_one()).collect() }
}
