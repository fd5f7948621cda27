//! Bilinear operations on `Q^n` given by structure constants, Jacobi
//! testing, adjoint operators and their graphs inside `E_n`, and a small
//! catalog of standard algebras.
//!
//! Catalog conventions (bases and signs are pinned so example values stay
//! stable):
//!
//! - `abelian(n)`: the zero operation on `Q^n`.
//! - `heisenberg3`: `[e1,e2] = e3`, all other brackets zero.
//! - `so3`: the cross product, `c[i][j][k] = epsilon_ijk`, i.e.
//!   `[e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2`.
//! - `sl2`: basis `(h,e,f) = (e1,e2,e3)` with `[h,e]=2e`, `[h,f]=-2f`,
//!   `[e,f]=h`.
//! - `affine1`: `[e1,e2] = e2` on `Q^2`.
//! - `nonlie3`: the skew extension of `B(e1,e2)=e2, B(e2,e3)=e3,
//!   B(e3,e1)=e1`; it is skew but fails the Jacobi identity.

use crate::linalg::{vec_zero, Rat, RatMat, RatVec};
use crate::omni::{OmniElement, OmniSubspace};
use num_traits::Zero;

/// A bilinear operation `B` on `Q^n` stored densely by structure
/// constants: `B(e_i, e_j) = sum_k c[i][j][k] e_k`. Skewness is a checked
/// predicate, not a representation invariant, so non-skew operations stay
/// representable for negative tests.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BilinearOp {
    n: usize,
    c: Vec<Rat>,
}

impl BilinearOp {
    pub fn zero(n: usize) -> Self {
        BilinearOp { n, c: vec![Rat::zero(); n * n * n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize, k: usize) -> &Rat {
        assert!(i < self.n && j < self.n && k < self.n, "structure index out of range");
        &self.c[(i * self.n + j) * self.n + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, val: Rat) {
        assert!(i < self.n && j < self.n && k < self.n, "structure index out of range");
        self.c[(i * self.n + j) * self.n + k] = val;
    }

    /// `B(u, w)` for arbitrary vectors, by bilinear extension.
    pub fn apply(&self, u: &[Rat], w: &[Rat]) -> RatVec {
        assert_eq!(u.len(), self.n, "left argument length mismatch");
        assert_eq!(w.len(), self.n, "right argument length mismatch");
        let mut out = vec_zero(self.n);
        for i in 0..self.n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.n {
                if w[j].is_zero() {
                    continue;
                }
                let uw = &u[i] * &w[j];
                for k in 0..self.n {
                    let c = self.at(i, j, k);
                    if !c.is_zero() {
                        let v = &out[k] + &(&uw * c);
                        out[k] = v;
                    }
                }
            }
        }
        out
    }

    /// True iff `c[i][j][k] = -c[j][i][k]` for all indices.
    pub fn is_skew(&self) -> bool {
        self.skew_violation().is_none()
    }

    /// First index triple violating skewness, if any.
    pub fn skew_violation(&self) -> Option<(usize, usize, usize)> {
        for i in 0..self.n {
            for j in 0..=i {
                for k in 0..self.n {
                    if self.at(i, j, k) != &-self.at(j, i, k).clone() {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// The cyclic Jacobi sum `B(B(e_i,e_j),e_k) + B(B(e_j,e_k),e_i) +
    /// B(B(e_k,e_i),e_j)`. Panics unless the operation is skew.
    pub fn jacobi_defect(&self, i: usize, j: usize, k: usize) -> RatVec {
        assert!(self.is_skew(), "jacobi_defect requires a skew operation");
        let (ei, ej, ek) = (
            crate::linalg::vec_unit(self.n, i),
            crate::linalg::vec_unit(self.n, j),
            crate::linalg::vec_unit(self.n, k),
        );
        let mut out = self.apply(&self.apply(&ei, &ej), &ek);
        out = crate::linalg::vec_add(&out, &self.apply(&self.apply(&ej, &ek), &ei));
        crate::linalg::vec_add(&out, &self.apply(&self.apply(&ek, &ei), &ej))
    }

    /// True iff the (skew) operation satisfies the Jacobi identity. The
    /// Jacobi sum of a skew operation is alternating and trilinear, so
    /// vanishing on basis triples `i < j < k` decides it.
    pub fn is_lie(&self) -> bool {
        assert!(self.is_skew(), "is_lie requires a skew operation");
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                for k in (j + 1)..self.n {
                    if !crate::linalg::vec_is_zero(&self.jacobi_defect(i, j, k)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// First basis triple `i < j < k` with nonzero Jacobi sum, if any.
    pub fn jacobi_witness(&self) -> Option<(usize, usize, usize, RatVec)> {
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                for k in (j + 1)..self.n {
                    let d = self.jacobi_defect(i, j, k);
                    if !crate::linalg::vec_is_zero(&d) {
                        return Some((i, j, k, d));
                    }
                }
            }
        }
        None
    }

    /// Matrix of the adjoint operator `w -> B(v, w)`.
    pub fn ad_matrix(&self, v: &[Rat]) -> RatMat {
        assert_eq!(v.len(), self.n, "argument length mismatch");
        RatMat::from_fn(self.n, self.n, |r, c| {
            // entry (r, c) is the e_r component of B(v, e_c)
            let mut acc = Rat::zero();
            for i in 0..self.n {
                if !v[i].is_zero() {
                    acc += &v[i] * self.at(i, c, r);
                }
            }
            acc
        })
    }
}

/// The graph of the adjoint operator: the span of `(ad_B(e_i), e_i)` for
/// `i = 1..n`, as a canonical subspace of `E_n`.
pub fn graph_subspace(b: &BilinearOp) -> OmniSubspace {
    let n = b.n();
    let els: Vec<OmniElement> = (0..n)
        .map(|i| OmniElement::new(b.ad_matrix(&crate::linalg::vec_unit(n, i)), crate::linalg::vec_unit(n, i)))
        .collect();
    OmniSubspace::from_elements(n, &els)
}

/// Look up a catalog operation by name. Accepts `abelian(<n>)` or
/// `abelian<n>` for the zero operation; other names are fixed. Returns
/// `None` for unknown names.
pub fn catalog(name: &str) -> Option<BilinearOp> {
    if let Some(rest) = name.strip_prefix("abelian") {
        let digits = rest.trim_start_matches('(').trim_end_matches(')');
        let n: usize = digits.parse().ok()?;
        if n == 0 {
            return None;
        }
        return Some(BilinearOp::zero(n));
    }
    let one = Rat::from_integer(1.into());
    match name {
        "heisenberg3" => {
            let mut b = BilinearOp::zero(3);
            b.set(0, 1, 2, one.clone());
            b.set(1, 0, 2, -one);
            Some(b)
        }
        "so3" => {
            let mut b = BilinearOp::zero(3);
            // c[i][j][k] = epsilon_ijk
            let cycles = [(0, 1, 2), (1, 2, 0), (2, 0, 1)];
            for (i, j, k) in cycles {
                b.set(i, j, k, one.clone());
                b.set(j, i, k, -one.clone());
            }
            Some(b)
        }
        "sl2" => {
            let mut b = BilinearOp::zero(3);
            let two = crate::linalg::rat_int(2);
            // [h,e] = 2e
            b.set(0, 1, 1, two.clone());
            b.set(1, 0, 1, -two.clone());
            // [h,f] = -2f
            b.set(0, 2, 2, -two.clone());
            b.set(2, 0, 2, two);
            // [e,f] = h
            b.set(1, 2, 0, one.clone());
            b.set(2, 1, 0, -one);
            Some(b)
        }
        "affine1" => {
            let mut b = BilinearOp::zero(2);
            b.set(0, 1, 1, one.clone());
            b.set(1, 0, 1, -one);
            Some(b)
        }
        "nonlie3" => {
            let mut b = BilinearOp::zero(3);
            // B(e1,e2)=e2, B(e2,e3)=e3, B(e3,e1)=e1, skew-extended
            for (i, j, k) in [(0, 1, 1), (1, 2, 2), (2, 0, 0)] {
                b.set(i, j, k, one.clone());
                b.set(j, i, k, -one.clone());
            }
            Some(b)
        }
        _ => None,
    }
}

/// The fixed catalog entries used by verification suites: one abelian
/// representative plus the five named operations.
pub fn catalog_all() -> Vec<(&'static str, BilinearOp)> {
    ["abelian3", "heisenberg3", "so3", "sl2", "affine1", "nonlie3"]
        .into_iter()
        .map(|name| (name, catalog(name).expect("catalog entry")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat_int, vec_is_zero, vec_unit};

    #[test]
    fn skewness_predicate() {
        assert!(catalog("so3").unwrap().is_skew());
        assert!(BilinearOp::zero(3).is_skew());
        let mut b = BilinearOp::zero(2);
        b.set(0, 1, 0, rat_int(1)); // B(e1,e2)=e1 without the mirror entry
        assert!(!b.is_skew());
    }

    #[test]
    fn so3_satisfies_jacobi() {
        let b = catalog("so3").unwrap();
        assert!(vec_is_zero(&b.jacobi_defect(0, 1, 2)));
        assert!(b.is_lie());
    }

    #[test]
    fn heisenberg_satisfies_jacobi() {
        let b = catalog("heisenberg3").unwrap();
        assert!(vec_is_zero(&b.jacobi_defect(0, 1, 2)));
        assert!(b.is_lie());
    }

    #[test]
    fn nonlie3_defect_is_sum_of_basis() {
        let b = catalog("nonlie3").unwrap();
        assert!(b.is_skew());
        let d = b.jacobi_defect(0, 1, 2);
        assert_eq!(d, vec![rat_int(1), rat_int(1), rat_int(1)]);
        assert!(!b.is_lie());
        let (i, j, k, _) = b.jacobi_witness().unwrap();
        assert_eq!((i, j, k), (0, 1, 2));
    }

    #[test]
    fn sl2_is_lie() {
        assert!(catalog("sl2").unwrap().is_lie());
    }

    #[test]
    fn affine1_is_lie() {
        // any skew operation on Q^2 is a Lie algebra
        assert!(catalog("affine1").unwrap().is_lie());
    }

    #[test]
    fn ad_matrix_so3_cross_product() {
        let b = catalog("so3").unwrap();
        let ad3 = b.ad_matrix(&vec_unit(3, 2));
        assert_eq!(ad3, RatMat::from_i64(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 0]]));
    }

    #[test]
    fn ad_matrix_zero_vector() {
        let b = catalog("sl2").unwrap();
        assert!(b.ad_matrix(&crate::linalg::vec_zero(3)).is_zero());
    }

    #[test]
    fn ad_matrix_heisenberg_center() {
        let b = catalog("heisenberg3").unwrap();
        let ad1 = b.ad_matrix(&vec_unit(3, 0));
        // e1 acts by sending e2 to e3
        assert_eq!(ad1, RatMat::from_i64(&[&[0, 0, 0], &[0, 0, 0], &[0, 1, 0]]));
        assert!(b.ad_matrix(&vec_unit(3, 2)).is_zero());
    }

    #[test]
    fn ad_columns_reproduce_structure_constants() {
        for (_, b) in catalog_all() {
            let n = b.n();
            for i in 0..n {
                let ad = b.ad_matrix(&vec_unit(n, i));
                for j in 0..n {
                    for k in 0..n {
                        assert_eq!(&ad[(k, j)], b.at(i, j, k));
                    }
                }
            }
        }
    }

    #[test]
    fn ad_matrix_linear_in_argument() {
        let b = catalog("so3").unwrap();
        let mut rng = crate::sampling::seeded_rng(5);
        let u = crate::sampling::random_rat_vec(&mut rng, 3);
        let v = crate::sampling::random_rat_vec(&mut rng, 3);
        let sum = crate::linalg::vec_add(&u, &v);
        assert_eq!(b.ad_matrix(&sum), b.ad_matrix(&u).add(&b.ad_matrix(&v)));
    }

    #[test]
    fn graph_of_zero_is_vertical() {
        let g = graph_subspace(&BilinearOp::zero(3));
        assert_eq!(g, OmniSubspace::vertical(3));
    }

    #[test]
    fn graph_dimension_is_n() {
        for (_, b) in catalog_all() {
            assert_eq!(graph_subspace(&b).dim(), b.n());
        }
    }

    #[test]
    fn heisenberg_graph_contains_named_generators() {
        let b = catalog("heisenberg3").unwrap();
        let g = graph_subspace(&b);
        for i in 0..3 {
            let e = OmniElement::new(b.ad_matrix(&vec_unit(3, i)), vec_unit(3, i));
            assert!(g.contains(&e));
        }
        // ad(e3) = 0, so (0, e3) is one of the generators
        assert!(g.contains(&OmniElement::from_vector(vec_unit(3, 2))));
    }

    #[test]
    fn catalog_unknown_name() {
        assert!(catalog("su5").is_none());
        assert!(catalog("abelian0").is_none());
        assert!(catalog("abelian(4)").is_some());
        assert!(catalog("abelian2").is_some());
    }
}
