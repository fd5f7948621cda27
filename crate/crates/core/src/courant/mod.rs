//! The Courant bracket on polynomial sections of `T (+) T*` over `Q^n`,
//! with the Cartan calculus it needs, Dirac-structure verification, and
//! the linearization bridge to the omni-Lie algebra.
//!
//! Sections are pairs `(xi, theta)` of a polynomial vector field and a
//! polynomial 1-form. The bracket is
//!
//! ```text
//! [[(xi1,th1),(xi2,th2)]] =
//!     ([xi1,xi2], L_xi1 th2 - L_xi2 th1 - d(i_xi1 th2 - i_xi2 th1)/2)
//! ```
//!
//! and the inner product is `<(xi1,th1),(xi2,th2)> = (th2(xi1)+th1(xi2))/2`.
//!
//! Sign conventions, fixed once for the whole crate:
//! - bivector raising: `(pi_sharp(theta))_i = sum_j pi_ij theta_j`;
//! - 2-form lowering: `(omega_flat(xi))_j = sum_i xi^i omega_ij`;
//! - linearization: `iota(A, v) = (xi_{A^T}, sum_i v_i dx_i)` where
//!   `xi_M = sum_i (M x)_i d/dx_i`. The transpose is forced by the
//!   classical identity `[xi_M, xi_N] = xi_{[N,M]}`, so that the vector
//!   field component of the bracket reproduces the matrix commutator
//!   `[A1, A2]` (re-derived symbolically in the tests).

mod dirac;
mod poly;

pub use dirac::{dirac_check, schouten_oracle, Bivector, DiracCandidate, DiracReport};
pub use poly::{AltPoly3, Poly, Poly1Form, Poly2Form, PolyVF};

use crate::linalg::{rat, RatVec};
use crate::omni::{omni_bracket, omni_pairing, OmniElement};
use crate::sampling;

/// A section `(xi, theta)` of `T (+) T*`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CourantSection {
    xi: PolyVF,
    theta: Poly1Form,
}

impl CourantSection {
    pub fn new(xi: PolyVF, theta: Poly1Form) -> Self {
        assert_eq!(xi.nvars(), theta.nvars(), "vector field and form variable counts differ");
        CourantSection { xi, theta }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::new(PolyVF::zero(nvars), Poly1Form::zero(nvars))
    }

    pub fn nvars(&self) -> usize {
        self.xi.nvars()
    }

    pub fn vf(&self) -> &PolyVF {
        &self.xi
    }

    pub fn form(&self) -> &Poly1Form {
        &self.theta
    }

    pub fn is_zero(&self) -> bool {
        self.xi.is_zero() && self.theta.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.xi.add(&other.xi), self.theta.add(&other.theta))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.xi.sub(&other.xi), self.theta.sub(&other.theta))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.xi.neg(), self.theta.neg())
    }

    /// Module action of a function: `f * (xi, theta) = (f xi, f theta)`.
    pub fn mul_poly(&self, f: &Poly) -> Self {
        Self::new(self.xi.mul_poly(f), self.theta.mul_poly(f))
    }
}

/// Lie bracket of vector fields: component `k` is
/// `xi1(xi2^k) - xi2(xi1^k)`.
pub fn vf_bracket(x1: &PolyVF, x2: &PolyVF) -> PolyVF {
    assert_eq!(x1.nvars(), x2.nvars(), "variable count mismatch");
    PolyVF::new(
        (0..x1.nvars())
            .map(|k| &x1.apply(x2.component(k)) - &x2.apply(x1.component(k)))
            .collect(),
    )
}

/// Exterior derivative of a function: `df = sum_i (df/dx_i) dx_i`.
pub fn exterior_d(f: &Poly) -> Poly1Form {
    Poly1Form::new((0..f.nvars()).map(|i| f.diff(i)).collect())
}

/// Exterior derivative of a 1-form, as the 2-form
/// `(d theta)_ij = d_i theta_j - d_j theta_i`.
pub fn exterior_d1(theta: &Poly1Form) -> Poly2Form {
    let n = theta.nvars();
    let mut upper = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let p = &theta.component(j).diff(i) - &theta.component(i).diff(j);
            if !p.is_zero() {
                upper.push((i, j, p));
            }
        }
    }
    Poly2Form::from_upper(n, &upper)
}

/// Exterior derivative of a 2-form, as the alternating 3-tensor
/// `(d w)_ijk = d_i w_jk - d_j w_ik + d_k w_ij`.
pub fn exterior_d2(w: &Poly2Form) -> AltPoly3 {
    let n = w.n();
    let mut out = AltPoly3::zero(n);
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let p = &(&w.at(j, k).diff(i) - &w.at(i, k).diff(j)) + &w.at(i, j).diff(k);
                out.set(i, j, k, p);
            }
        }
    }
    out
}

/// Interior product of a vector field with a 1-form: `sum_i xi^i theta_i`.
pub fn interior(xi: &PolyVF, theta: &Poly1Form) -> Poly {
    assert_eq!(xi.nvars(), theta.nvars(), "variable count mismatch");
    let mut acc = Poly::zero(xi.nvars());
    for i in 0..xi.nvars() {
        acc = &acc + &(xi.component(i) * theta.component(i));
    }
    acc
}

/// Interior product with a 2-form: `(i_xi w)_j = sum_i xi^i w_ij`.
pub fn interior_2form(xi: &PolyVF, w: &Poly2Form) -> Poly1Form {
    w.flat_map(xi)
}

/// Lie derivative of a 1-form by the Cartan formula
/// `L_xi theta = i_xi(d theta) + d(i_xi theta)`.
pub fn lie_derivative_1form(xi: &PolyVF, theta: &Poly1Form) -> Poly1Form {
    interior_2form(xi, &exterior_d1(theta)).add(&exterior_d(&interior(xi, theta)))
}

/// The Courant bracket.
pub fn courant_bracket(s1: &CourantSection, s2: &CourantSection) -> CourantSection {
    courant_bracket_variant(s1, s2, BracketVariant::Full)
}

/// Bracket variants: the genuine Courant bracket, and a negative-control
/// variant that drops the exact correction term `-d(...)/2` (the plain
/// semidirect bracket of vector fields acting on 1-forms).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BracketVariant {
    Full,
    NoExactCorrection,
}

pub fn courant_bracket_variant(
    s1: &CourantSection,
    s2: &CourantSection,
    variant: BracketVariant,
) -> CourantSection {
    assert_eq!(s1.nvars(), s2.nvars(), "variable count mismatch");
    let xi = vf_bracket(&s1.xi, &s2.xi);
    let mut theta = lie_derivative_1form(&s1.xi, &s2.theta).sub(&lie_derivative_1form(&s2.xi, &s1.theta));
    if variant == BracketVariant::Full {
        let scalar = &interior(&s1.xi, &s2.theta) - &interior(&s2.xi, &s1.theta);
        theta = theta.sub(&exterior_d(&scalar).scale(&rat(1, 2)));
    }
    CourantSection::new(xi, theta)
}

/// The symmetric inner product `<s1, s2> = (th2(xi1) + th1(xi2))/2`.
pub fn courant_pairing(s1: &CourantSection, s2: &CourantSection) -> Poly {
    assert_eq!(s1.nvars(), s2.nvars(), "variable count mismatch");
    (&interior(&s1.xi, &s2.theta) + &interior(&s2.xi, &s1.theta)).scale(&rat(1, 2))
}

/// The Cartan trilinear function
/// `T(s1,s2,s3) = (<[[s1,s2]],s3> + cyclic)/3`.
pub fn cartan_t_sections(s1: &CourantSection, s2: &CourantSection, s3: &CourantSection) -> Poly {
    cartan_t_sections_variant(s1, s2, s3, BracketVariant::Full)
}

fn cartan_t_sections_variant(
    s1: &CourantSection,
    s2: &CourantSection,
    s3: &CourantSection,
    variant: BracketVariant,
) -> Poly {
    let t1 = courant_pairing(&courant_bracket_variant(s1, s2, variant), s3);
    let t2 = courant_pairing(&courant_bracket_variant(s2, s3, variant), s1);
    let t3 = courant_pairing(&courant_bracket_variant(s3, s1, variant), s2);
    (&(&t1 + &t2) + &t3).scale(&rat(1, 3))
}

/// The gradient section `Df = (0, df)`.
pub fn gradient_section(f: &Poly) -> CourantSection {
    CourantSection::new(PolyVF::zero(f.nvars()), exterior_d(f))
}

/// Residual of the Leibniz rule with inner-product correction:
/// `[s1, f s2] - f [s1, s2] - (xi1 f) s2 + <s1,s2> (0, df)`.
/// Identically zero for the Courant bracket.
pub fn leibniz_check(s1: &CourantSection, s2: &CourantSection, f: &Poly) -> CourantSection {
    leibniz_check_variant(s1, s2, f, BracketVariant::Full)
}

fn leibniz_check_variant(
    s1: &CourantSection,
    s2: &CourantSection,
    f: &Poly,
    variant: BracketVariant,
) -> CourantSection {
    assert_eq!(s1.nvars(), f.nvars(), "variable count mismatch");
    let lhs = courant_bracket_variant(s1, &s2.mul_poly(f), variant);
    let t1 = courant_bracket_variant(s1, s2, variant).mul_poly(f);
    let t2 = s2.mul_poly(&s1.xi.apply(f));
    let t3 = gradient_section(f).mul_poly(&courant_pairing(s1, s2));
    lhs.sub(&t1).sub(&t2).add(&t3)
}

/// Report from a seeded sampling run of the C-algebra axioms for the
/// Courant bracket, with anchor `rho(xi, theta) = xi` and gradient
/// `Df = (0, df)`.
#[derive(Clone, Debug)]
pub struct CourantAxiomReport {
    pub nvars: usize,
    pub degree_bound: u32,
    pub trials: usize,
    pub seed: u64,
    pub completed_trials: usize,
    pub failure: Option<CourantAxiomFailure>,
}

#[derive(Clone, Debug)]
pub struct CourantAxiomFailure {
    pub axiom: u8,
    pub trial: usize,
    pub detail: String,
}

impl CourantAxiomReport {
    pub fn all_pass(&self) -> bool {
        self.failure.is_none()
    }
}

/// Check axioms 1-5 on `trials` seeded random polynomial section triples.
/// Halts at the first failure and reports the witness trial.
pub fn axioms_sample_check(
    nvars: usize,
    degree_bound: u32,
    trials: usize,
    seed: u64,
    variant: BracketVariant,
) -> CourantAxiomReport {
    assert!(nvars >= 1, "at least one variable required");
    let mut rng = sampling::seeded_rng(seed);
    let mut report = CourantAxiomReport {
        nvars,
        degree_bound,
        trials,
        seed,
        completed_trials: 0,
        failure: None,
    };
    for trial in 0..trials {
        let s1 = sampling::random_section(&mut rng, nvars, degree_bound);
        let s2 = sampling::random_section(&mut rng, nvars, degree_bound);
        let s3 = sampling::random_section(&mut rng, nvars, degree_bound);
        let f = sampling::random_poly(&mut rng, nvars, degree_bound);
        let g = sampling::random_poly(&mut rng, nvars, degree_bound);

        // axiom 1: jacobiator = (0, dT)
        let jac = courant_bracket_variant(&courant_bracket_variant(&s1, &s2, variant), &s3, variant)
            .add(&courant_bracket_variant(&courant_bracket_variant(&s2, &s3, variant), &s1, variant))
            .add(&courant_bracket_variant(&courant_bracket_variant(&s3, &s1, variant), &s2, variant));
        let t = cartan_t_sections_variant(&s1, &s2, &s3, variant);
        let expect = gradient_section(&t);
        if jac != expect {
            report.failure = Some(CourantAxiomFailure {
                axiom: 1,
                trial,
                detail: format!(
                    "jacobiator differs from (0, dT); vf residual zero: {}, form residual components: {}",
                    jac.vf().sub(expect.vf()).is_zero(),
                    jac.form()
                        .sub(expect.form())
                        .components()
                        .iter()
                        .map(|p| p.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
            });
            return report;
        }

        // axiom 2: rho[[s1,s2]] = [rho s1, rho s2]
        let anchor = courant_bracket_variant(&s1, &s2, variant);
        if anchor.vf() != &vf_bracket(&s1.xi, &s2.xi) {
            report.failure = Some(CourantAxiomFailure {
                axiom: 2,
                trial,
                detail: "anchor of bracket differs from vector-field bracket".to_string(),
            });
            return report;
        }

        // axiom 3: Leibniz rule with correction term
        let residual = leibniz_check_variant(&s1, &s2, &f, variant);
        if !residual.is_zero() {
            report.failure = Some(CourantAxiomFailure {
                axiom: 3,
                trial,
                detail: format!(
                    "Leibniz residual nonzero; form components: {}",
                    residual
                        .form()
                        .components()
                        .iter()
                        .map(|p| p.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
            });
            return report;
        }

        // axiom 4: rho(Df) = 0 and <Df, Dg> = 0
        let df = gradient_section(&f);
        let dg = gradient_section(&g);
        if !df.vf().is_zero() || !courant_pairing(&df, &dg).is_zero() {
            report.failure = Some(CourantAxiomFailure {
                axiom: 4,
                trial,
                detail: "gradients must be anchored to zero and pair to zero".to_string(),
            });
            return report;
        }

        // axiom 5: rho(e)<h1,h2> = <[[e,h1]]+D<e,h1>, h2> + <h1, [[e,h2]]+D<e,h2>>
        let lhs = s1.xi.apply(&courant_pairing(&s2, &s3));
        let left = courant_bracket_variant(&s1, &s2, variant)
            .add(&gradient_section(&courant_pairing(&s1, &s2)));
        let right = courant_bracket_variant(&s1, &s3, variant)
            .add(&gradient_section(&courant_pairing(&s1, &s3)));
        let rhs = &courant_pairing(&left, &s3) + &courant_pairing(&s2, &right);
        if lhs != rhs {
            report.failure = Some(CourantAxiomFailure {
                axiom: 5,
                trial,
                detail: format!("invariance residual: {}", &lhs - &rhs),
            });
            return report;
        }

        report.completed_trials = trial + 1;
    }
    report
}

/// The linearization embedding `iota(A, v) = (xi_{A^T}, sum_i v_i dx_i)`.
pub fn linearize(e: &OmniElement) -> CourantSection {
    let n = e.dim();
    let at = e.matrix().transpose();
    let xi = PolyVF::new(
        (0..n)
            .map(|i| {
                // (A^T x)_i
                let mut p = Poly::zero(n);
                for j in 0..n {
                    p = &p + &Poly::var(n, j).scale(&at[(i, j)]);
                }
                p
            })
            .collect(),
    );
    let theta = Poly1Form::constant(e.vector());
    CourantSection::new(xi, theta)
}

/// Comparison of the omni-Lie bracket/pairing against their images under
/// the linearization embedding.
#[derive(Clone, Debug)]
pub struct LinearizeReport {
    pub bracket_match: bool,
    pub pairing_match: bool,
}

impl LinearizeReport {
    pub fn all_match(&self) -> bool {
        self.bracket_match && self.pairing_match
    }
}

/// Check that `iota` intertwines the omni-Lie bracket with the Courant
/// bracket and the omni pairing with the Courant inner product. The
/// Courant pairing of two embedded elements is a homogeneous linear
/// function; under the identification of `Q^n` with the span of the
/// coordinate functions, its coefficient vector must equal the omni
/// pairing.
pub fn linearize_roundtrip(e1: &OmniElement, e2: &OmniElement) -> LinearizeReport {
    assert_eq!(e1.dim(), e2.dim(), "dimension mismatch");
    let i1 = linearize(e1);
    let i2 = linearize(e2);
    let bracket_match = courant_bracket(&i1, &i2) == linearize(&omni_bracket(e1, e2));
    let pairing = courant_pairing(&i1, &i2);
    let expected: RatVec = omni_pairing(e1, e2);
    let pairing_match = (pairing.is_zero() || pairing.is_linear_homogeneous())
        && pairing.linear_coefficients() == expected;
    LinearizeReport { bracket_match, pairing_match }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat_int, RatMat};
    use crate::sampling::{random_omni_element, random_poly, random_section, random_vf, seeded_rng};

    fn dd(n: usize, i: usize) -> PolyVF {
        let mut comps = vec![Poly::zero(n); n];
        comps[i] = Poly::one(n);
        PolyVF::new(comps)
    }

    fn dx(n: usize, i: usize) -> Poly1Form {
        let mut comps = vec![Poly::zero(n); n];
        comps[i] = Poly::one(n);
        Poly1Form::new(comps)
    }

    #[test]
    fn vf_bracket_examples() {
        // [d1, x1 d2] = d2
        let x1d2 = PolyVF::new(vec![Poly::zero(2), Poly::var(2, 0)]);
        assert_eq!(vf_bracket(&dd(2, 0), &x1d2), dd(2, 1));
        // [d1, d2] = 0
        assert!(vf_bracket(&dd(2, 0), &dd(2, 1)).is_zero());
    }

    #[test]
    fn vf_bracket_linear_fields_antihomomorphism() {
        // [xi_M, xi_N] = xi_{[N,M]} for linear fields xi_M = (Mx).d
        let mut rng = seeded_rng(41);
        let n = 3;
        let m1 = crate::sampling::random_rat_mat(&mut rng, n, n);
        let m2 = crate::sampling::random_rat_mat(&mut rng, n, n);
        let lin = |m: &RatMat| {
            PolyVF::new(
                (0..n)
                    .map(|i| {
                        let mut p = Poly::zero(n);
                        for j in 0..n {
                            p = &p + &Poly::var(n, j).scale(&m[(i, j)]);
                        }
                        p
                    })
                    .collect(),
            )
        };
        let lhs = vf_bracket(&lin(&m1), &lin(&m2));
        let rhs = lin(&m2.commutator(&m1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn vf_bracket_jacobi_sampled() {
        let mut rng = seeded_rng(43);
        for _ in 0..10 {
            let a = random_vf(&mut rng, 2, 2);
            let b = random_vf(&mut rng, 2, 2);
            let c = random_vf(&mut rng, 2, 2);
            let j = vf_bracket(&vf_bracket(&a, &b), &c)
                .add(&vf_bracket(&vf_bracket(&b, &c), &a))
                .add(&vf_bracket(&vf_bracket(&c, &a), &b));
            assert!(j.is_zero());
        }
    }

    #[test]
    fn exterior_d_product() {
        // d(x1 x2) = x2 dx1 + x1 dx2
        let p = &Poly::var(2, 0) * &Poly::var(2, 1);
        let d = exterior_d(&p);
        assert_eq!(d.component(0), &Poly::var(2, 1));
        assert_eq!(d.component(1), &Poly::var(2, 0));
    }

    #[test]
    fn d_squared_is_zero_on_functions() {
        let mut rng = seeded_rng(47);
        for nvars in 1..=3 {
            let f = random_poly(&mut rng, nvars, 3);
            assert!(exterior_d1(&exterior_d(&f)).is_zero());
        }
    }

    #[test]
    fn d2_of_constant_two_form_vanishes() {
        let w = Poly2Form::from_upper(3, &[(0, 1, Poly::one(3))]);
        assert!(exterior_d2(&w).is_zero());
    }

    #[test]
    fn d2_of_x3_dx1_dx2() {
        let w = Poly2Form::from_upper(3, &[(0, 1, Poly::var(3, 2))]);
        let d = exterior_d2(&w);
        assert!(!d.is_zero());
        // (dw)_123 = d3 w_12 = 1
        assert_eq!(d.at(0, 1, 2), Poly::one(3));
    }

    #[test]
    fn interior_examples() {
        let x1dx1 = Poly1Form::new(vec![Poly::var(2, 0), Poly::zero(2)]);
        assert_eq!(interior(&dd(2, 0), &x1dx1), Poly::var(2, 0));
        assert!(interior(&dd(2, 1), &dx(2, 0)).is_zero());
        let x2d1 = PolyVF::new(vec![Poly::var(2, 1), Poly::zero(2)]);
        assert_eq!(interior(&x2d1, &x1dx1), &Poly::var(2, 0) * &Poly::var(2, 1));
    }

    #[test]
    fn lie_derivative_examples() {
        // L_{d1}(x1 dx1) = dx1
        let x1dx1 = Poly1Form::new(vec![Poly::var(2, 0), Poly::zero(2)]);
        assert_eq!(lie_derivative_1form(&dd(2, 0), &x1dx1), dx(2, 0));
        // L_{d2}(dx1) = 0
        assert!(lie_derivative_1form(&dd(2, 1), &dx(2, 0)).is_zero());
    }

    #[test]
    fn lie_derivative_of_linear_data() {
        // L_{(Ax).d}(v.dx) = (A^T v).dx for constant v
        let mut rng = seeded_rng(53);
        let n = 3;
        let a = crate::sampling::random_rat_mat(&mut rng, n, n);
        let v = crate::sampling::random_rat_vec(&mut rng, n);
        let xi = PolyVF::new(
            (0..n)
                .map(|i| {
                    let mut p = Poly::zero(n);
                    for j in 0..n {
                        p = &p + &Poly::var(n, j).scale(&a[(i, j)]);
                    }
                    p
                })
                .collect(),
        );
        let lhs = lie_derivative_1form(&xi, &Poly1Form::constant(&v));
        let rhs = Poly1Form::constant(&a.transpose().mul_vec(&v));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn lie_derivative_commutes_with_d() {
        // L_xi(df) = d(xi f)
        let mut rng = seeded_rng(59);
        for _ in 0..10 {
            let xi = random_vf(&mut rng, 3, 2);
            let f = random_poly(&mut rng, 3, 2);
            assert_eq!(lie_derivative_1form(&xi, &exterior_d(&f)), exterior_d(&xi.apply(&f)));
        }
    }

    #[test]
    fn courant_bracket_frozen_example() {
        // [(d1, 0), (0, x1 dx1)] = (0, dx1/2)
        let s1 = CourantSection::new(dd(2, 0), Poly1Form::zero(2));
        let s2 = CourantSection::new(
            PolyVF::zero(2),
            Poly1Form::new(vec![Poly::var(2, 0), Poly::zero(2)]),
        );
        let out = courant_bracket(&s1, &s2);
        assert!(out.vf().is_zero());
        assert_eq!(out.form(), &dx(2, 0).scale(&rat(1, 2)));
    }

    #[test]
    fn courant_bracket_antisymmetric() {
        let mut rng = seeded_rng(61);
        let s1 = random_section(&mut rng, 2, 2);
        let s2 = random_section(&mut rng, 2, 2);
        assert_eq!(courant_bracket(&s1, &s2), courant_bracket(&s2, &s1).neg());
        assert!(courant_bracket(&s1, &s1).is_zero());
        // constant-field pure sections bracket to zero
        let c1 = CourantSection::new(dd(2, 0), Poly1Form::zero(2));
        let c2 = CourantSection::new(dd(2, 1), Poly1Form::zero(2));
        assert!(courant_bracket(&c1, &c2).is_zero());
    }

    #[test]
    fn courant_pairing_examples() {
        let s1 = CourantSection::new(dd(2, 0), Poly1Form::zero(2));
        let s2 = CourantSection::new(PolyVF::zero(2), dx(2, 0));
        assert_eq!(courant_pairing(&s1, &s2), Poly::constant(2, rat(1, 2)));
        let s3 = CourantSection::new(dd(2, 0), dx(2, 0));
        assert_eq!(courant_pairing(&s3, &s3), Poly::one(2));
        let v1 = CourantSection::new(dd(2, 0), Poly1Form::zero(2));
        let v2 = CourantSection::new(dd(2, 1), Poly1Form::zero(2));
        assert!(courant_pairing(&v1, &v2).is_zero());
    }

    #[test]
    fn leibniz_residual_vanishes() {
        // frozen cases from the contract
        let s1 = CourantSection::new(dd(2, 0), Poly1Form::zero(2));
        let s2 = CourantSection::new(dd(2, 1), Poly1Form::zero(2));
        let f = Poly::var(2, 0);
        assert!(leibniz_check(&s1, &s2, &f).is_zero());
        let s3 = CourantSection::new(PolyVF::zero(2), dx(2, 0));
        assert!(leibniz_check(&s1, &s3, &f).is_zero());
        assert!(leibniz_check(&s1, &s3, &Poly::constant(2, rat_int(7))).is_zero());
        // and on random sections
        let mut rng = seeded_rng(67);
        for _ in 0..10 {
            let a = random_section(&mut rng, 2, 2);
            let b = random_section(&mut rng, 2, 2);
            let h = random_poly(&mut rng, 2, 2);
            assert!(leibniz_check(&a, &b, &h).is_zero());
        }
    }

    #[test]
    fn axiom_sampling_passes_for_courant_bracket() {
        for nvars in 1..=2 {
            let report = axioms_sample_check(nvars, 2, 8, 0, BracketVariant::Full);
            assert!(report.all_pass(), "failure: {:?}", report.failure);
        }
    }

    #[test]
    fn axiom_sampling_rejects_uncorrected_bracket() {
        let report = axioms_sample_check(2, 2, 50, 0, BracketVariant::NoExactCorrection);
        assert!(!report.all_pass());
        let failure = report.failure.unwrap();
        assert!((1..=5).contains(&failure.axiom));
    }

    #[test]
    fn linearize_frozen_examples() {
        // iota(I,0), iota(0,v): bracket on both sides is (0, (v/2).dx)
        let n = 2;
        let id = OmniElement::from_matrix(RatMat::identity(n));
        let v = OmniElement::from_vector(vec![rat_int(4), rat_int(-2)]);
        let rep = linearize_roundtrip(&id, &v);
        assert!(rep.all_match());
        let lhs = courant_bracket(&linearize(&id), &linearize(&v));
        assert!(lhs.vf().is_zero());
        assert_eq!(lhs.form(), &Poly1Form::constant(&[rat_int(2), rat_int(-1)]));
    }

    #[test]
    fn linearize_elementary_pair() {
        let e12 = OmniElement::from_matrix(RatMat::elementary(2, 0, 1));
        let e21 = OmniElement::from_matrix(RatMat::elementary(2, 1, 0));
        let rep = linearize_roundtrip(&e12, &e21);
        assert!(rep.all_match());
    }

    #[test]
    fn linearize_random_pairs() {
        let mut rng = seeded_rng(71);
        for n in 1..=3 {
            for _ in 0..5 {
                let e1 = random_omni_element(&mut rng, n);
                let e2 = random_omni_element(&mut rng, n);
                assert!(linearize_roundtrip(&e1, &e2).all_match());
            }
        }
    }

    #[test]
    fn courant_jacobiator_identity_sampled() {
        let mut rng = seeded_rng(73);
        for _ in 0..5 {
            let s1 = random_section(&mut rng, 2, 2);
            let s2 = random_section(&mut rng, 2, 2);
            let s3 = random_section(&mut rng, 2, 2);
            let jac = courant_bracket(&courant_bracket(&s1, &s2), &s3)
                .add(&courant_bracket(&courant_bracket(&s2, &s3), &s1))
                .add(&courant_bracket(&courant_bracket(&s3, &s1), &s2));
            assert_eq!(jac, gradient_section(&cartan_t_sections(&s1, &s2, &s3)));
        }
    }

    #[test]
    fn one_variable_degenerate_case() {
        let report = axioms_sample_check(1, 2, 10, 5, BracketVariant::Full);
        assert!(report.all_pass());
    }
}
