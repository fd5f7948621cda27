//! The omni-Lie algebra `E_n = gl(n) x Q^n`.
//!
//! Elements are pairs `(a, v)` of an `n x n` matrix and an `n`-vector.
//! The space carries the antisymmetric bracket
//!
//! ```text
//! [[(A1,v1),(A2,v2)]] = ([A1,A2], (A1 v2 - A2 v1)/2)
//! ```
//!
//! and the symmetric `Q^n`-valued pairing
//!
//! ```text
//! <(A1,v1),(A2,v2)> = (A1 v2 + A2 v1)/2.
//! ```
//!
//! The bracket does not satisfy the Jacobi identity; the defect is the
//! jacobiator [`jacobiator`], and it always equals `(0, T)` where `T` is
//! the Cartan 3-form [`cartan_form`]. That anomaly identity is the
//! backbone of everything in [`crate::dstruct`].
//!
//! Flattening convention: `E_n` is identified with `Q^(n^2+n)` by listing
//! the matrix entries row-major followed by the vector entries. Every
//! subspace computation in this crate relies on this fixed ordering.

use crate::linalg::{span, vec_add, vec_is_zero, vec_scale, vec_sub, vec_zero, Rat, RatMat, RatVec, Subspace};
use std::fmt;

/// An element `(a, v)` of `E_n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OmniElement {
    a: RatMat,
    v: RatVec,
}

impl OmniElement {
    /// Panics unless `a` is square with side `v.len()`.
    pub fn new(a: RatMat, v: RatVec) -> Self {
        assert!(a.is_square(), "matrix part must be square");
        assert_eq!(a.rows(), v.len(), "matrix and vector dimensions differ");
        OmniElement { a, v }
    }

    pub fn zero(n: usize) -> Self {
        OmniElement { a: RatMat::zero(n, n), v: vec_zero(n) }
    }

    /// Pure matrix part `(a, 0)`.
    pub fn from_matrix(a: RatMat) -> Self {
        let n = a.rows();
        Self::new(a, vec_zero(n))
    }

    /// Pure vector part `(0, v)`.
    pub fn from_vector(v: RatVec) -> Self {
        let n = v.len();
        Self::new(RatMat::zero(n, n), v)
    }

    pub fn dim(&self) -> usize {
        self.v.len()
    }

    pub fn matrix(&self) -> &RatMat {
        &self.a
    }

    pub fn vector(&self) -> &[Rat] {
        &self.v
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && vec_is_zero(&self.v)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        OmniElement { a: self.a.add(&other.a), v: vec_add(&self.v, &other.v) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        OmniElement { a: self.a.sub(&other.a), v: vec_sub(&self.v, &other.v) }
    }

    pub fn neg(&self) -> Self {
        OmniElement { a: self.a.neg(), v: self.v.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        OmniElement { a: self.a.scale(c), v: vec_scale(&self.v, c) }
    }

    /// Row-major matrix entries followed by the vector entries.
    pub fn flatten(&self) -> RatVec {
        let mut out = Vec::with_capacity(self.dim() * self.dim() + self.dim());
        out.extend(self.a.entries().iter().cloned());
        out.extend(self.v.iter().cloned());
        out
    }

    /// Inverse of [`OmniElement::flatten`]. Panics unless
    /// `flat.len() == n^2 + n`.
    pub fn from_flat(n: usize, flat: &[Rat]) -> Self {
        assert_eq!(flat.len(), n * n + n, "flattened length must be n^2+n");
        let a = RatMat::from_fn(n, n, |i, j| flat[i * n + j].clone());
        let v = flat[n * n..].to_vec();
        OmniElement { a, v }
    }
}

impl fmt::Debug for OmniElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.v.iter().map(|x| x.to_string()).collect();
        write!(f, "OmniElement(a: {:?}, v: [{}])", self.a, vs.join(", "))
    }
}

fn assert_same_dim(e1: &OmniElement, e2: &OmniElement) {
    assert_eq!(e1.dim(), e2.dim(), "omni elements of different dimension");
}

/// The bracket `[[(A1,v1),(A2,v2)]] = ([A1,A2], (A1 v2 - A2 v1)/2)`.
pub fn omni_bracket(e1: &OmniElement, e2: &OmniElement) -> OmniElement {
    assert_same_dim(e1, e2);
    let a = e1.a.commutator(&e2.a);
    let v = vec_scale(&vec_sub(&e1.a.mul_vec(&e2.v), &e2.a.mul_vec(&e1.v)), &crate::linalg::rat(1, 2));
    OmniElement::new(a, v)
}

/// The symmetric `Q^n`-valued pairing `<(A1,v1),(A2,v2)> = (A1 v2 + A2 v1)/2`.
pub fn omni_pairing(e1: &OmniElement, e2: &OmniElement) -> RatVec {
    assert_same_dim(e1, e2);
    vec_scale(&vec_add(&e1.a.mul_vec(&e2.v), &e2.a.mul_vec(&e1.v)), &crate::linalg::rat(1, 2))
}

/// The Cartan 3-form `T(e1,e2,e3) = (<[[e1,e2]],e3> + cyclic)/3`.
pub fn cartan_form(e1: &OmniElement, e2: &OmniElement, e3: &OmniElement) -> RatVec {
    assert_same_dim(e1, e2);
    assert_same_dim(e2, e3);
    let t1 = omni_pairing(&omni_bracket(e1, e2), e3);
    let t2 = omni_pairing(&omni_bracket(e2, e3), e1);
    let t3 = omni_pairing(&omni_bracket(e3, e1), e2);
    vec_scale(&vec_add(&vec_add(&t1, &t2), &t3), &crate::linalg::rat(1, 3))
}

/// The jacobiator `[[ [[e1,e2]], e3 ]] + cyclic`, computed literally from
/// the bracket. Its matrix part always vanishes and its vector part equals
/// [`cartan_form`].
pub fn jacobiator(e1: &OmniElement, e2: &OmniElement, e3: &OmniElement) -> OmniElement {
    assert_same_dim(e1, e2);
    assert_same_dim(e2, e3);
    let j1 = omni_bracket(&omni_bracket(e1, e2), e3);
    let j2 = omni_bracket(&omni_bracket(e2, e3), e1);
    let j3 = omni_bracket(&omni_bracket(e3, e1), e2);
    j1.add(&j2).add(&j3)
}

/// A linear subspace of `E_n`, stored canonically in the flattened
/// coordinates of `Q^(n^2+n)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct OmniSubspace {
    n: usize,
    sub: Subspace,
}

impl OmniSubspace {
    /// Panics unless the ambient dimension of `sub` is `n^2 + n`.
    pub fn new(n: usize, sub: Subspace) -> Self {
        assert_eq!(sub.ambient_dim(), n * n + n, "ambient dimension must be n^2+n");
        OmniSubspace { n, sub }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(n, Subspace::zero(n * n + n))
    }

    /// Canonical span of a list of elements.
    pub fn from_elements(n: usize, elements: &[OmniElement]) -> Self {
        let flats: Vec<RatVec> = elements
            .iter()
            .map(|e| {
                assert_eq!(e.dim(), n, "element dimension mismatch");
                e.flatten()
            })
            .collect();
        Self::new(n, span(&flats, n * n + n))
    }

    /// The horizontal subspace `gl(n) (+) {0}`.
    pub fn horizontal(n: usize) -> Self {
        let mut els = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                els.push(OmniElement::from_matrix(RatMat::elementary(n, i, j)));
            }
        }
        Self::from_elements(n, &els)
    }

    /// The vertical subspace `{0} (+) Q^n` (the graph of the zero operation).
    pub fn vertical(n: usize) -> Self {
        let els: Vec<OmniElement> = (0..n)
            .map(|i| OmniElement::from_vector(crate::linalg::vec_unit(n, i)))
            .collect();
        Self::from_elements(n, &els)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.sub.dim()
    }

    pub fn subspace(&self) -> &Subspace {
        &self.sub
    }

    pub fn basis_elements(&self) -> Vec<OmniElement> {
        (0..self.sub.dim())
            .map(|i| OmniElement::from_flat(self.n, self.sub.basis().row(i)))
            .collect()
    }

    pub fn contains(&self, e: &OmniElement) -> bool {
        assert_eq!(e.dim(), self.n, "element dimension mismatch");
        self.sub.contains(&e.flatten())
    }

    pub fn sum(&self, other: &OmniSubspace) -> OmniSubspace {
        assert_eq!(self.n, other.n, "dimension tag mismatch");
        OmniSubspace { n: self.n, sub: self.sub.sum(&other.sub) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, rat_int, vec_unit, vec_zero};
    use crate::sampling::{random_omni_element, seeded_rng};
    use crate::linalg::vec_is_zero;
    use crate::linalg::Rat;
    use num_traits::Zero;

    fn elem_mat(n: usize, i: usize, j: usize) -> OmniElement {
        OmniElement::from_matrix(RatMat::elementary(n, i, j))
    }

    fn elem_vec(n: usize, i: usize) -> OmniElement {
        OmniElement::from_vector(vec_unit(n, i))
    }

    #[test]
    fn bracket_of_elementary_matrices() {
        // [E11, E12] = E12 in gl(2)
        let out = omni_bracket(&elem_mat(2, 0, 0), &elem_mat(2, 0, 1));
        assert_eq!(out, elem_mat(2, 0, 1));
    }

    #[test]
    fn bracket_identity_with_vector() {
        let id = OmniElement::from_matrix(RatMat::identity(3));
        let v = OmniElement::from_vector(vec![rat_int(2), rat_int(-4), rat(1, 3)]);
        let out = omni_bracket(&id, &v);
        assert_eq!(out, OmniElement::from_vector(vec![rat_int(1), rat_int(-2), rat(1, 6)]));
    }

    #[test]
    fn bracket_is_alternating() {
        let mut rng = seeded_rng(7);
        for n in 1..=4 {
            let e = random_omni_element(&mut rng, n);
            assert!(omni_bracket(&e, &e).is_zero());
            let f = random_omni_element(&mut rng, n);
            assert_eq!(omni_bracket(&e, &f), omni_bracket(&f, &e).neg());
        }
    }

    #[test]
    fn pairing_examples() {
        let id = OmniElement::from_matrix(RatMat::identity(2));
        let v = OmniElement::from_vector(vec![rat_int(4), rat_int(6)]);
        assert_eq!(omni_pairing(&id, &v), vec![rat_int(2), rat_int(3)]);
        // pure matrix parts pair to zero
        assert!(vec_is_zero(&omni_pairing(&elem_mat(2, 0, 1), &elem_mat(2, 1, 1))));
        // pure vector parts pair to zero
        assert!(vec_is_zero(&omni_pairing(&elem_vec(2, 0), &elem_vec(2, 1))));
    }

    #[test]
    fn pairing_is_symmetric_and_bilinear() {
        let mut rng = seeded_rng(11);
        for n in 1..=4 {
            let e = random_omni_element(&mut rng, n);
            let f = random_omni_element(&mut rng, n);
            let g = random_omni_element(&mut rng, n);
            assert_eq!(omni_pairing(&e, &f), omni_pairing(&f, &e));
            let c = rat(-5, 3);
            let lhs = omni_pairing(&e.scale(&c).add(&f), &g);
            let rhs = vec_add(&vec_scale(&omni_pairing(&e, &g), &c), &omni_pairing(&f, &g));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn cartan_form_on_pure_matrices_vanishes() {
        let t = cartan_form(&elem_mat(2, 0, 0), &elem_mat(2, 0, 1), &elem_mat(2, 1, 0));
        assert!(vec_is_zero(&t));
    }

    #[test]
    fn cartan_form_frozen_value() {
        // T((E12,0),(E21,0),(0,e1)) = e1/4 for n = 2, from expanding the
        // three cyclic pairing terms by hand.
        let t = cartan_form(&elem_mat(2, 0, 1), &elem_mat(2, 1, 0), &elem_vec(2, 0));
        assert_eq!(t, vec![rat(1, 4), Rat::zero()]);
    }

    #[test]
    fn cartan_form_cyclic_and_alternating() {
        let mut rng = seeded_rng(13);
        for n in 1..=3 {
            let e1 = random_omni_element(&mut rng, n);
            let e2 = random_omni_element(&mut rng, n);
            let e3 = random_omni_element(&mut rng, n);
            let t = cartan_form(&e1, &e2, &e3);
            assert_eq!(t, cartan_form(&e2, &e3, &e1));
            assert_eq!(t, cartan_form(&e3, &e1, &e2));
            let swapped = cartan_form(&e2, &e1, &e3);
            assert_eq!(t, swapped.iter().map(|x| -x).collect::<Vec<_>>());
            assert!(vec_is_zero(&cartan_form(&e1, &e1, &e1)));
        }
    }

    #[test]
    fn jacobiator_of_pure_matrices_vanishes() {
        // Jacobi holds in gl(n)
        let j = jacobiator(&elem_mat(2, 0, 0), &elem_mat(2, 0, 1), &elem_mat(2, 1, 0));
        assert!(j.is_zero());
    }

    #[test]
    fn jacobiator_frozen_value() {
        // J((E12,0),(E21,0),(0,e1)) = (0, e1/4), by brute-force cyclic
        // expansion; matches the Cartan form value above.
        let j = jacobiator(&elem_mat(2, 0, 1), &elem_mat(2, 1, 0), &elem_vec(2, 0));
        assert_eq!(j, OmniElement::from_vector(vec![rat(1, 4), Rat::zero()]));
    }

    #[test]
    fn jacobiator_matrix_vector_vector_vanishes() {
        let mut rng = seeded_rng(17);
        for _ in 0..20 {
            let a = random_omni_element(&mut rng, 3);
            let a = OmniElement::from_matrix(a.matrix().clone());
            let v = OmniElement::from_vector(random_omni_element(&mut rng, 3).vector().to_vec());
            let w = OmniElement::from_vector(random_omni_element(&mut rng, 3).vector().to_vec());
            assert!(jacobiator(&a, &v, &w).is_zero());
        }
    }

    #[test]
    fn anomaly_identity_sampled() {
        let mut rng = seeded_rng(23);
        for n in 1..=4 {
            for _ in 0..50 {
                let e1 = random_omni_element(&mut rng, n);
                let e2 = random_omni_element(&mut rng, n);
                let e3 = random_omni_element(&mut rng, n);
                let j = jacobiator(&e1, &e2, &e3);
                assert!(j.matrix().is_zero());
                assert_eq!(j.vector(), cartan_form(&e1, &e2, &e3));
            }
        }
    }

    #[test]
    fn flatten_roundtrip() {
        let mut rng = seeded_rng(29);
        for n in 1..=4 {
            let e = random_omni_element(&mut rng, n);
            assert_eq!(OmniElement::from_flat(n, &e.flatten()), e);
        }
    }

    #[test]
    fn flatten_is_row_major_then_vector() {
        let e = OmniElement::new(
            RatMat::from_i64(&[&[1, 2], &[3, 4]]),
            vec![rat_int(5), rat_int(6)],
        );
        let flat: Vec<i64> = (1..=6).collect();
        assert_eq!(e.flatten(), flat.iter().map(|&x| rat_int(x)).collect::<Vec<_>>());
    }

    #[test]
    fn horizontal_and_vertical_dimensions() {
        for n in 1..=3 {
            assert_eq!(OmniSubspace::horizontal(n).dim(), n * n);
            assert_eq!(OmniSubspace::vertical(n).dim(), n);
        }
    }

    #[test]
    fn subspace_membership() {
        let h = OmniSubspace::horizontal(2);
        assert!(h.contains(&elem_mat(2, 1, 0)));
        assert!(!h.contains(&elem_vec(2, 0)));
        assert!(h.contains(&OmniElement::zero(2)));
    }


    #[test]
    fn bracket_bilinear_in_each_slot() {
        let mut rng = seeded_rng(31);
        let n = 3;
        let e1 = random_omni_element(&mut rng, n);
        let e2 = random_omni_element(&mut rng, n);
        let e3 = random_omni_element(&mut rng, n);
        let c = rat(3, 2);
        let lhs = omni_bracket(&e1.scale(&c).add(&e2), &e3);
        let rhs = omni_bracket(&e1, &e3).scale(&c).add(&omni_bracket(&e2, &e3));
        assert_eq!(lhs, rhs);
        let lhs2 = omni_bracket(&e3, &e1.scale(&c).add(&e2));
        let rhs2 = omni_bracket(&e3, &e1).scale(&c).add(&omni_bracket(&e3, &e2));
        assert_eq!(lhs2, rhs2);
    }

    #[test]
    #[should_panic(expected = "different dimension")]
    fn dimension_mismatch_rejected() {
        let _ = omni_bracket(&OmniElement::zero(2), &OmniElement::zero(3));
    }

    #[test]
    fn zero_vector_is_in_vertical() {
        let z = vec_zero(2);
        assert!(OmniSubspace::vertical(2).contains(&OmniElement::from_vector(z)));
    }
}
