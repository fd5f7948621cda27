//! Exact rational linear algebra: dense matrices, linear solving, kernels,
//! and a canonical subspace representation.
//!
//! Everything here computes over arbitrary-precision rationals; there is no
//! floating point and no tolerance anywhere in this crate. Subspaces are
//! stored as reduced row echelon bases, which are unique, so two subspaces
//! are equal exactly when their stored bases are structurally equal.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Index, IndexMut};

/// Exact rational scalar. Always in lowest terms with positive denominator.
pub type Rat = BigRational;

/// Dense rational vector.
pub type RatVec = Vec<Rat>;

/// Rational `num/den`. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn vec_zero(len: usize) -> RatVec {
    vec![Rat::zero(); len]
}

pub fn vec_is_zero(v: &[Rat]) -> bool {
    v.iter().all(Rat::is_zero)
}

pub fn vec_add(a: &[Rat], b: &[Rat]) -> RatVec {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rat], b: &[Rat]) -> RatVec {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_neg(a: &[Rat]) -> RatVec {
    a.iter().map(|x| -x).collect()
}

pub fn vec_scale(a: &[Rat], c: &Rat) -> RatVec {
    a.iter().map(|x| x * c).collect()
}

pub fn vec_dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Basis vector `e_i` of length `n`.
pub fn vec_unit(n: usize, i: usize) -> RatVec {
    assert!(i < n, "unit index out of range");
    let mut v = vec_zero(n);
    v[i] = Rat::one();
    v
}

/// Exact square root of a nonnegative rational, if it is a rational square.
pub fn rat_sqrt_exact(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
        Some(Rat::new(ns, ds))
    } else {
        None
    }
}

/// Dense rational matrix with explicit shape, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    /// Elementary matrix `E_ij` (single 1 in row `i`, column `j`).
    pub fn elementary(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(n, n);
        m[(i, j)] = Rat::one();
        m
    }

    pub fn from_rows(rows: Vec<RatVec>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged rows");
            data.extend(r);
        }
        RatMat { rows: nrows, cols: ncols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RatMat { rows, cols, data }
    }

    /// Convenience constructor from integer entries.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat_int(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> RatVec {
        self.row(i).to_vec()
    }

    /// All entries in row-major order.
    pub fn entries(&self) -> &[Rat] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> RatMat {
        RatMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn add(&self, other: &RatMat) -> RatMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        RatMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &RatMat) -> RatMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        RatMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> RatMat {
        RatMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, c: &Rat) -> RatMat {
        RatMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        RatMat::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|k| &self[(i, k)] * &other[(k, j)]).sum()
        })
    }

    pub fn mul_vec(&self, v: &[Rat]) -> RatVec {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows).map(|i| vec_dot(self.row(i), v)).collect()
    }

    /// Matrix commutator `[self, other] = self*other - other*self`.
    pub fn commutator(&self, other: &RatMat) -> RatMat {
        self.mul(other).sub(&other.mul(self))
    }

    /// Exact inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<RatMat> {
        assert!(self.is_square(), "inverse requires a square matrix");
        let n = self.rows;
        let aug = RatMat::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j == n + i {
                Rat::one()
            } else {
                Rat::zero()
            }
        });
        let (rr, pivots, rank) = rref_canonical(&aug);
        if rank < n || pivots.iter().take(n).enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some(RatMat::from_fn(n, n, |i, j| rr[(i, n + j)].clone()))
    }
}

impl Index<(usize, usize)> for RatMat {
    type Output = Rat;

    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form of `m`: the unique RREF with the same shape
/// (zero rows at the bottom), the pivot columns, and the rank.
pub fn rref_canonical(m: &RatMat) -> (RatMat, Vec<usize>, usize) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // find a pivot in column c at or below row r
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = {
            let piv = a[(r, c)].clone();
            Rat::one() / piv
        };
        for j in c..cols {
            let v = &a[(r, j)] * &inv;
            a[(r, j)] = v;
        }
        for i in 0..rows {
            if i != r && !a[(i, c)].is_zero() {
                let factor = a[(i, c)].clone();
                for j in c..cols {
                    let v = &a[(i, j)] - &(&factor * &a[(r, j)]);
                    a[(i, j)] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots, r)
}

/// Kernel (null space) of `a` as a canonical subspace of `Q^cols`.
pub fn kernel(a: &RatMat) -> Subspace {
    let (rr, pivots, rank) = rref_canonical(a);
    let cols = a.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(cols - rank);
    for &f in &free {
        let mut v = vec_zero(cols);
        v[f] = Rat::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -rr[(r, f)].clone();
        }
        basis.push(v);
    }
    span(&basis, cols)
}

/// Full solution set of a consistent linear system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    /// One exact solution (free variables set to zero).
    pub particular: RatVec,
    /// Canonical kernel; the solution set is `particular + kernel`.
    pub kernel: Subspace,
}

/// Solve `a * x = b` exactly. Returns `None` when the system is inconsistent.
pub fn solve_linear(a: &RatMat, b: &[Rat]) -> Option<SolutionSet> {
    assert_eq!(a.rows(), b.len(), "rhs length must equal row count");
    let aug = RatMat::from_fn(a.rows(), a.cols() + 1, |i, j| {
        if j < a.cols() {
            a[(i, j)].clone()
        } else {
            b[i].clone()
        }
    });
    let (rr, pivots, _) = rref_canonical(&aug);
    if pivots.contains(&a.cols()) {
        return None;
    }
    let mut particular = vec_zero(a.cols());
    for (r, &p) in pivots.iter().enumerate() {
        particular[p] = rr[(r, a.cols())].clone();
    }
    Some(SolutionSet { particular, kernel: kernel(a) })
}

/// A linear subspace of `Q^ambient_dim` in canonical form: the stored basis
/// rows are a reduced row echelon basis with strictly increasing pivot
/// columns and no zero rows. Two `Subspace` values represent the same
/// subspace iff they are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient_dim: usize,
    basis: RatMat,
    pivots: Vec<usize>,
}

/// Canonical span of a set of vectors. `span(&[], d)` is the zero subspace.
pub fn span(vectors: &[RatVec], ambient_dim: usize) -> Subspace {
    for v in vectors {
        assert_eq!(v.len(), ambient_dim, "spanning vector has wrong length");
    }
    if vectors.is_empty() {
        return Subspace::zero(ambient_dim);
    }
    let m = RatMat::from_rows(vectors.to_vec());
    let (rr, pivots, rank) = rref_canonical(&m);
    let basis = RatMat::from_fn(rank, ambient_dim, |i, j| rr[(i, j)].clone());
    Subspace { ambient_dim, basis, pivots }
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: RatMat::zero(0, ambient_dim), pivots: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: RatMat::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// The canonical RREF basis, one row per basis vector.
    pub fn basis(&self) -> &RatMat {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> Vec<RatVec> {
        (0..self.dim()).map(|i| self.basis.row_vec(i)).collect()
    }

    /// Remainder of `x` after reduction against the canonical basis.
    /// Zero iff `x` lies in the subspace.
    pub fn reduce(&self, x: &[Rat]) -> RatVec {
        assert_eq!(x.len(), self.ambient_dim, "vector has wrong length");
        let mut r = x.to_vec();
        for (row, &p) in self.pivots.iter().enumerate() {
            if !r[p].is_zero() {
                let factor = r[p].clone();
                for j in 0..self.ambient_dim {
                    let v = &r[j] - &(&factor * &self.basis[(row, j)]);
                    r[j] = v;
                }
            }
        }
        r
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        vec_is_zero(&self.reduce(x))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ambient dimension mismatch");
        (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ambient dimension mismatch");
        let mut vs = self.basis_vectors();
        vs.extend(other.basis_vectors());
        span(&vs, self.ambient_dim)
    }

    /// Intersection, computed from the kernel of the concatenated
    /// coefficient system `[U^T | -V^T] (alpha, beta)^T = 0`.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ambient dimension mismatch");
        let (du, dv) = (self.dim(), other.dim());
        if du == 0 || dv == 0 {
            return Subspace::zero(self.ambient_dim);
        }
        let sys = RatMat::from_fn(self.ambient_dim, du + dv, |i, j| {
            if j < du {
                self.basis[(j, i)].clone()
            } else {
                -other.basis[(j - du, i)].clone()
            }
        });
        let ker = kernel(&sys);
        let mut vs = Vec::with_capacity(ker.dim());
        for k in 0..ker.dim() {
            let coeffs = ker.basis.row(k);
            let mut x = vec_zero(self.ambient_dim);
            for (r, alpha) in coeffs.iter().take(du).enumerate() {
                if !alpha.is_zero() {
                    for j in 0..self.ambient_dim {
                        let v = &x[j] + &(alpha * &self.basis[(r, j)]);
                        x[j] = v;
                    }
                }
            }
            vs.push(x);
        }
        span(&vs, self.ambient_dim)
    }

    /// Basis of a complement of `self` inside `larger` (so that
    /// `self (+) complement = larger`). Panics unless `self` is contained
    /// in `larger`.
    pub fn complement_in(&self, larger: &Subspace) -> Vec<RatVec> {
        assert!(
            larger.contains_subspace(self),
            "complement_in requires self to be a subspace of larger"
        );
        let mut running = self.clone();
        let mut out = Vec::new();
        for i in 0..larger.dim() {
            let cand = larger.basis.row(i);
            if !running.contains(cand) {
                out.push(cand.to_vec());
                running = running.sum(&span(&[cand.to_vec()], self.ambient_dim));
            }
        }
        out
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} of Q^{}) {:?}", self.dim(), self.ambient_dim, self.basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> RatMat {
        RatMat::from_i64(rows)
    }

    fn v(entries: &[i64]) -> RatVec {
        entries.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn rref_proportional_rows() {
        let (rr, pivots, rank) = rref_canonical(&m(&[&[2, 4], &[1, 2]]));
        assert_eq!(rr, m(&[&[1, 2], &[0, 0]]));
        assert_eq!(pivots, vec![0]);
        assert_eq!(rank, 1);
    }

    #[test]
    fn rref_identity_fixed_point() {
        let id = RatMat::identity(3);
        let (rr, _, rank) = rref_canonical(&id);
        assert_eq!(rr, id);
        assert_eq!(rank, 3);
    }

    #[test]
    fn rref_permutation() {
        let (rr, _, rank) = rref_canonical(&m(&[&[0, 1], &[1, 0]]));
        assert_eq!(rr, RatMat::identity(2));
        assert_eq!(rank, 2);
    }

    #[test]
    fn solve_identity_system() {
        let sol = solve_linear(&RatMat::identity(2), &v(&[1, 2])).unwrap();
        assert_eq!(sol.particular, v(&[1, 2]));
        assert_eq!(sol.kernel.dim(), 0);
    }

    #[test]
    fn solve_underdetermined() {
        let sol = solve_linear(&m(&[&[1, 1]]), &v(&[0])).unwrap();
        assert_eq!(sol.particular, v(&[0, 0]));
        assert_eq!(sol.kernel, span(&[v(&[1, -1])], 2));
    }

    #[test]
    fn solve_inconsistent() {
        assert!(solve_linear(&m(&[&[1], &[1]]), &v(&[1, 2])).is_none());
    }

    #[test]
    fn span_examples() {
        let full = span(&[v(&[2, 0]), v(&[0, 3])], 2);
        assert_eq!(full, Subspace::full(2));
        let line = span(&[v(&[1, 1]), v(&[2, 2])], 2);
        assert_eq!(line.basis(), &m(&[&[1, 1]]));
        assert_eq!(span(&[], 2), Subspace::zero(2));
    }

    #[test]
    fn sum_and_intersect_examples() {
        let ex = span(&[v(&[1, 0])], 2);
        let ey = span(&[v(&[0, 1])], 2);
        assert_eq!(ex.sum(&ey), Subspace::full(2));
        assert_eq!(ex.intersect(&ey), Subspace::zero(2));
        let u = span(&[v(&[1, 1]), v(&[1, 0])], 2);
        let w = span(&[v(&[1, 1])], 2);
        assert_eq!(u.intersect(&w), w);
    }

    #[test]
    fn contains_examples() {
        let diag = span(&[v(&[1, 1])], 2);
        assert!(diag.contains(&v(&[2, 2])));
        assert!(!diag.contains(&v(&[1, 0])));
        assert!(Subspace::zero(2).contains(&v(&[0, 0])));
    }

    #[test]
    fn complement_splits_dimension() {
        let u = span(&[v(&[1, 1, 0])], 3);
        let big = span(&[v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])], 3);
        let comp = u.complement_in(&big);
        assert_eq!(comp.len(), 2);
        let mut all = vec![v(&[1, 1, 0])];
        all.extend(comp);
        assert_eq!(span(&all, 3), big);
    }

    #[test]
    fn sqrt_exact() {
        assert_eq!(rat_sqrt_exact(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rat_sqrt_exact(&rat_int(2)), None);
        assert_eq!(rat_sqrt_exact(&rat_int(-4)), None);
        assert_eq!(rat_sqrt_exact(&Rat::zero()), Some(Rat::zero()));
    }

    prop_compose! {
        fn arb_rat()(num in -9i64..=9, den in 1i64..=4) -> Rat {
            rat(num, den)
        }
    }

    prop_compose! {
        fn arb_mat(max_dim: usize)
                  (rows in 1..=max_dim, cols in 1..=max_dim)
                  (data in prop::collection::vec(arb_rat(), rows * cols),
                   rows in Just(rows), cols in Just(cols)) -> RatMat {
            RatMat::from_fn(rows, cols, |i, j| data[i * cols + j].clone())
        }
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(m in arb_mat(5)) {
            let (r1, p1, k1) = rref_canonical(&m);
            let (r2, p2, k2) = rref_canonical(&r1);
            prop_assert_eq!(r1, r2);
            prop_assert_eq!(p1, p2);
            prop_assert_eq!(k1, k2);
        }

        #[test]
        fn dim_formula_holds(
            (us, vs, dim) in (1usize..=12).prop_flat_map(|dim| (
                prop::collection::vec(prop::collection::vec(arb_rat(), dim), 0..5),
                prop::collection::vec(prop::collection::vec(arb_rat(), dim), 0..5),
                Just(dim),
            )),
        ) {
            let u = span(&us, dim);
            let w = span(&vs, dim);
            prop_assert_eq!(
                u.dim() + w.dim(),
                u.sum(&w).dim() + u.intersect(&w).dim()
            );
        }

        #[test]
        fn solutions_verify_by_substitution(
            a in arb_mat(4),
            xs in prop::collection::vec(arb_rat(), 4),
        ) {
            // build a consistent system from a known solution
            let x = &xs[..a.cols()];
            let b = a.mul_vec(x);
            let sol = solve_linear(&a, &b).expect("constructed system is consistent");
            prop_assert_eq!(a.mul_vec(&sol.particular), b.clone());
            for k in 0..sol.kernel.dim() {
                let kv = sol.kernel.basis().row(k);
                prop_assert!(vec_is_zero(&a.mul_vec(kv)));
            }
        }

        #[test]
        fn span_invariant_under_scaling_and_order(
            vs in prop::collection::vec(prop::collection::vec(arb_rat(), 4), 1..4),
            c in 1i64..=5,
        ) {
            let s1 = span(&vs, 4);
            let mut scaled: Vec<RatVec> = vs.iter().map(|v| vec_scale(v, &rat_int(c))).collect();
            scaled.reverse();
            prop_assert_eq!(s1, span(&scaled, 4));
        }
    }
}
