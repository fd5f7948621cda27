//! Finite-dimensional C-algebra instances and an executable checker for
//! the axioms.
//!
//! An instance packages a commutative (possibly non-unital) algebra `A`,
//! an `A`-module `E` with a symmetric `A`-valued pairing, an antisymmetric
//! bracket on `E`, and an anchor `rho` sending `E` into derivations of
//! `A`; all as structure tensors over a basis. [`validate_instance`]
//! checks the structural prerequisites (including weak nondegeneracy:
//! the map `beta: e -> <e,.>` must be injective), and [`check_axioms`]
//! evaluates the six axioms:
//!
//! 0. the gradient `Df` with `<Df, e> = rho(e) f / 2` exists for all `f`;
//! 1. `[[ [[e1,e2]], e3 ]] + cyclic = D T(e1,e2,e3)`;
//! 2. `rho [[e1,e2]] = [rho e1, rho e2]`;
//! 3. `[[e1, f e2]] = f [[e1,e2]] + (rho(e1) f) e2 - <e1,e2> Df`;
//! 4. `rho . D = 0`, and `<Df, Dg> = 0`;
//! 5. `rho(e) <h1,h2> = <[[e,h1]] + D<e,h1>, h2> + <h1, [[e,h2]] + D<e,h2>>`.
//!
//! Every axiom is multilinear over the ground field in each slot, so
//! checking all basis tuples decides it; the checker does exactly that,
//! finitely and exactly.

use crate::linalg::{solve_linear, vec_add, vec_is_zero, vec_scale, vec_zero, Rat, RatMat, RatVec};
use crate::omni::{omni_bracket, omni_pairing, OmniElement};
use num_traits::{One, Zero};

/// Dense 3-index tensor of rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tensor3 {
    d0: usize,
    d1: usize,
    d2: usize,
    data: Vec<Rat>,
}

impl Tensor3 {
    pub fn zeros(d0: usize, d1: usize, d2: usize) -> Self {
        Tensor3 { d0, d1, d2, data: vec![Rat::zero(); d0 * d1 * d2] }
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.d0, self.d1, self.d2)
    }

    pub fn at(&self, i: usize, j: usize, k: usize) -> &Rat {
        assert!(i < self.d0 && j < self.d1 && k < self.d2, "tensor index out of range");
        &self.data[(i * self.d1 + j) * self.d2 + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Rat) {
        assert!(i < self.d0 && j < self.d1 && k < self.d2, "tensor index out of range");
        self.data[(i * self.d1 + j) * self.d2 + k] = v;
    }

    /// The slice `t[i][j][.]` as a vector.
    pub fn slice(&self, i: usize, j: usize) -> RatVec {
        let base = (i * self.d1 + j) * self.d2;
        self.data[base..base + self.d2].to_vec()
    }

    /// Bilinear contraction `out[k] = sum_ij x[i] y[j] t[i][j][k]`.
    pub fn apply(&self, x: &[Rat], y: &[Rat]) -> RatVec {
        assert_eq!(x.len(), self.d0, "first argument length mismatch");
        assert_eq!(y.len(), self.d1, "second argument length mismatch");
        let mut out = vec_zero(self.d2);
        for i in 0..self.d0 {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.d1 {
                if y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                let base = (i * self.d1 + j) * self.d2;
                for k in 0..self.d2 {
                    let c = &self.data[base + k];
                    if !c.is_zero() {
                        let v = &out[k] + &(&xy * c);
                        out[k] = v;
                    }
                }
            }
        }
        out
    }
}

/// Structure tensors of a candidate C-algebra over bases of `A` and `E`.
#[derive(Clone, Debug)]
pub struct CAlgebraInstance {
    pub dim_a: usize,
    pub dim_e: usize,
    /// `A x A -> A` multiplication.
    pub mul_a: Tensor3,
    /// `A x E -> E` module action.
    pub action: Tensor3,
    /// `E x E -> A` pairing.
    pub pairing: Tensor3,
    /// `E x E -> E` bracket.
    pub bracket: Tensor3,
    /// One `dim_a x dim_a` matrix per `E`-basis element: the candidate
    /// derivation `rho(e_i)`.
    pub rho: Vec<RatMat>,
}

impl CAlgebraInstance {
    pub fn a_product(&self, f: &[Rat], g: &[Rat]) -> RatVec {
        self.mul_a.apply(f, g)
    }

    pub fn module_action(&self, f: &[Rat], e: &[Rat]) -> RatVec {
        self.action.apply(f, e)
    }

    pub fn pair(&self, e: &[Rat], h: &[Rat]) -> RatVec {
        self.pairing.apply(e, h)
    }

    pub fn bracket_of(&self, e: &[Rat], h: &[Rat]) -> RatVec {
        self.bracket.apply(e, h)
    }

    /// `rho(e) = sum_i e_i rho_i` as a matrix acting on `A`.
    pub fn rho_of(&self, e: &[Rat]) -> RatMat {
        assert_eq!(e.len(), self.dim_e, "element length mismatch");
        let mut m = RatMat::zero(self.dim_a, self.dim_a);
        for (c, r) in e.iter().zip(&self.rho) {
            if !c.is_zero() {
                m = m.add(&r.scale(c));
            }
        }
        m
    }

    fn e_unit(&self, i: usize) -> RatVec {
        crate::linalg::vec_unit(self.dim_e, i)
    }

    fn a_unit(&self, i: usize) -> RatVec {
        crate::linalg::vec_unit(self.dim_a, i)
    }
}

/// One failed check with a witness tuple and the residual it leaves.
#[derive(Clone, Debug)]
pub struct Failure {
    pub check: String,
    pub witness: Vec<usize>,
    pub residual: String,
}

fn fmt_vec(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Report of the structural prerequisites.
#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub failures: Vec<Failure>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check the prerequisites of the definition on basis tuples:
/// commutativity and associativity of the product, the module law,
/// pairing symmetry and `A`-bilinearity, bracket antisymmetry, the
/// Leibniz property and `A`-linearity of `rho`, and injectivity of
/// `beta: e -> <e,.>`.
pub fn validate_instance(c: &CAlgebraInstance) -> ValidationReport {
    let mut failures = Vec::new();
    let mut fail = |check: &str, witness: Vec<usize>, residual: String| {
        failures.push(Failure { check: check.to_string(), witness, residual });
    };

    for i in 0..c.dim_a {
        for j in 0..c.dim_a {
            let fg = c.mul_a.slice(i, j);
            let gf = c.mul_a.slice(j, i);
            if fg != gf {
                fail("mul_a commutative", vec![i, j], fmt_vec(&crate::linalg::vec_sub(&fg, &gf)));
            }
            for k in 0..c.dim_a {
                let lhs = c.a_product(&fg, &c.a_unit(k));
                let rhs = c.a_product(&c.a_unit(i), &c.mul_a.slice(j, k));
                if lhs != rhs {
                    fail("mul_a associative", vec![i, j, k], fmt_vec(&crate::linalg::vec_sub(&lhs, &rhs)));
                }
            }
        }
    }

    for i in 0..c.dim_a {
        for j in 0..c.dim_a {
            for k in 0..c.dim_e {
                let lhs = c.module_action(&c.mul_a.slice(i, j), &c.e_unit(k));
                let rhs = c.module_action(&c.a_unit(i), &c.action.slice(j, k));
                if lhs != rhs {
                    fail("module law", vec![i, j, k], fmt_vec(&crate::linalg::vec_sub(&lhs, &rhs)));
                }
            }
        }
    }

    for i in 0..c.dim_e {
        for j in 0..=i {
            let ij = c.pairing.slice(i, j);
            let ji = c.pairing.slice(j, i);
            if ij != ji {
                fail("pairing symmetric", vec![i, j], fmt_vec(&crate::linalg::vec_sub(&ij, &ji)));
            }
            let bij = c.bracket.slice(i, j);
            let bji = c.bracket.slice(j, i);
            if !vec_is_zero(&vec_add(&bij, &bji)) {
                fail("bracket antisymmetric", vec![i, j], fmt_vec(&vec_add(&bij, &bji)));
            }
        }
    }

    // pairing A-bilinearity: <f e, h> = f <e, h>
    for m in 0..c.dim_a {
        for i in 0..c.dim_e {
            for j in 0..c.dim_e {
                let lhs = c.pair(&c.action.slice(m, i), &c.e_unit(j));
                let rhs = c.a_product(&c.a_unit(m), &c.pairing.slice(i, j));
                if lhs != rhs {
                    fail("pairing A-bilinear", vec![m, i, j], fmt_vec(&crate::linalg::vec_sub(&lhs, &rhs)));
                }
            }
        }
    }

    // Leibniz: rho(e_i)(f g) = (rho(e_i) f) g + f (rho(e_i) g)
    for i in 0..c.dim_e {
        for p in 0..c.dim_a {
            for q in 0..c.dim_a {
                let lhs = c.rho[i].mul_vec(&c.mul_a.slice(p, q));
                let dp = c.rho[i].mul_vec(&c.a_unit(p));
                let dq = c.rho[i].mul_vec(&c.a_unit(q));
                let rhs = vec_add(&c.a_product(&dp, &c.a_unit(q)), &c.a_product(&c.a_unit(p), &dq));
                if lhs != rhs {
                    fail("rho Leibniz", vec![i, p, q], fmt_vec(&crate::linalg::vec_sub(&lhs, &rhs)));
                }
            }
        }
    }

    // A-linearity of rho: rho(f e) g = f (rho(e) g)
    for m in 0..c.dim_a {
        for i in 0..c.dim_e {
            for g in 0..c.dim_a {
                let lhs = c.rho_of(&c.action.slice(m, i)).mul_vec(&c.a_unit(g));
                let rhs = c.a_product(&c.a_unit(m), &c.rho[i].mul_vec(&c.a_unit(g)));
                if lhs != rhs {
                    fail("rho A-linear", vec![m, i, g], fmt_vec(&crate::linalg::vec_sub(&lhs, &rhs)));
                }
            }
        }
    }

    // weak nondegeneracy: beta(e) = <e, .> has zero kernel
    let beta = beta_matrix(c);
    let ker = crate::linalg::kernel(&beta);
    if ker.dim() > 0 {
        fail(
            "weak nondegeneracy",
            vec![],
            format!("beta has a {}-dimensional kernel, e.g. {}", ker.dim(), fmt_vec(ker.basis().row(0))),
        );
    }

    ValidationReport { failures }
}

/// Matrix of `beta`: rows indexed by pairs `(j, k)` over `E`-basis and
/// `A`-basis, columns by `E`-basis; entry `pairing[i][j][k]`.
fn beta_matrix(c: &CAlgebraInstance) -> RatMat {
    RatMat::from_fn(c.dim_e * c.dim_a, c.dim_e, |row, i| {
        let (j, k) = (row / c.dim_a, row % c.dim_a);
        c.pairing.at(i, j, k).clone()
    })
}

/// Solve the defining system of the gradient of `f`:
/// `<x, e_j> = rho(e_j) f / 2` for every basis `e_j`. Returns `None`
/// ("undefined") when the system is inconsistent. Unique whenever
/// `beta` is injective.
pub fn gradient(c: &CAlgebraInstance, f: &[Rat]) -> Option<RatVec> {
    assert_eq!(f.len(), c.dim_a, "function coefficient length mismatch");
    let beta = beta_matrix(c);
    let half = crate::linalg::rat(1, 2);
    let mut rhs = Vec::with_capacity(c.dim_e * c.dim_a);
    for j in 0..c.dim_e {
        let rf = vec_scale(&c.rho[j].mul_vec(f), &half);
        rhs.extend(rf);
    }
    solve_linear(&beta, &rhs).map(|s| s.particular)
}

/// Gradients of all `A`-basis elements, or `None` if any is undefined.
/// Gradients of arbitrary elements follow by linearity.
pub fn gradient_table(c: &CAlgebraInstance) -> Option<Vec<RatVec>> {
    (0..c.dim_a).map(|i| gradient(c, &c.a_unit(i))).collect()
}

/// The Cartan element `T(e1,e2,e3) = (<[[e1,e2]],e3> + cyclic)/3` in `A`.
pub fn cartan_t(c: &CAlgebraInstance, e1: &[Rat], e2: &[Rat], e3: &[Rat]) -> RatVec {
    let t1 = c.pair(&c.bracket_of(e1, e2), e3);
    let t2 = c.pair(&c.bracket_of(e2, e3), e1);
    let t3 = c.pair(&c.bracket_of(e3, e1), e2);
    vec_scale(&vec_add(&vec_add(&t1, &t2), &t3), &crate::linalg::rat(1, 3))
}

/// Per-axiom outcome. `checked` counts the basis tuples evaluated;
/// `failure_count` the tuples that failed, of which the first few are
/// kept with witnesses.
#[derive(Clone, Debug)]
pub struct AxiomResult {
    pub axiom: u8,
    pub checked: usize,
    pub failure_count: usize,
    pub failures: Vec<Failure>,
}

impl AxiomResult {
    fn new(axiom: u8) -> Self {
        AxiomResult { axiom, checked: 0, failure_count: 0, failures: Vec::new() }
    }

    fn record(&mut self, check: &str, witness: Vec<usize>, residual: String) {
        self.failure_count += 1;
        if self.failures.len() < 3 {
            self.failures.push(Failure { check: check.to_string(), witness, residual });
        }
    }

    pub fn pass(&self) -> bool {
        self.failure_count == 0
    }
}

/// Report over axioms 0 through 5.
#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(AxiomResult::pass)
    }

    pub fn result(&self, axiom: u8) -> &AxiomResult {
        &self.results[axiom as usize]
    }
}

/// Check axioms 0-5 on all basis tuples.
pub fn check_axioms(c: &CAlgebraInstance) -> AxiomReport {
    check_axioms_with_gradient_scale(c, &Rat::one())
}

/// Axiom check with the gradient replaced by `scale * gradient`.
/// With `scale = 1` this is [`check_axioms`]; other values serve as
/// negative controls for the factor 1/2 in the gradient definition
/// (forcing, e.g., `Dv = (0, 2v)` on the omni instance), and must surface
/// a failure in axiom 0's defining relation and, where the Cartan element
/// is nonzero, in axiom 1.
pub fn check_axioms_with_gradient_scale(c: &CAlgebraInstance, scale: &Rat) -> AxiomReport {
    let mut results: Vec<AxiomResult> = (0..=5).map(AxiomResult::new).collect();
    let half = crate::linalg::rat(1, 2);

    // axiom 0: gradients of all basis elements exist and satisfy the
    // (scaled) defining relation <Df, e_j> = rho(e_j) f / 2
    let table: Vec<Option<RatVec>> = (0..c.dim_a)
        .map(|i| gradient(c, &c.a_unit(i)).map(|g| vec_scale(&g, scale)))
        .collect();
    for (i, entry) in table.iter().enumerate() {
        results[0].checked += 1;
        match entry {
            None => results[0].record("gradient defined", vec![i], "system inconsistent".to_string()),
            Some(df) => {
                for j in 0..c.dim_e {
                    let lhs = c.pair(df, &c.e_unit(j));
                    let rhs = vec_scale(&c.rho[j].mul_vec(&c.a_unit(i)), &half);
                    if lhs != rhs {
                        results[0].record(
                            "gradient defining relation",
                            vec![i, j],
                            fmt_vec(&crate::linalg::vec_sub(&lhs, &rhs)),
                        );
                        break;
                    }
                }
            }
        }
    }

    let grad_of = |f: &[Rat]| -> Option<RatVec> {
        let mut out = vec_zero(c.dim_e);
        for (coeff, entry) in f.iter().zip(&table) {
            let g = entry.as_ref()?;
            if !coeff.is_zero() {
                out = vec_add(&out, &vec_scale(g, coeff));
            }
        }
        Some(out)
    };
    let gradients_exist = table.iter().all(Option::is_some);

    // axiom 1: [[ [[e1,e2]], e3 ]] + cyclic = D T(e1,e2,e3)
    for i in 0..c.dim_e {
        for j in 0..c.dim_e {
            for k in 0..c.dim_e {
                results[1].checked += 1;
                if !gradients_exist {
                    results[1].record("axiom 1", vec![i, j, k], "gradient undefined".to_string());
                    continue;
                }
                let (ei, ej, ek) = (c.e_unit(i), c.e_unit(j), c.e_unit(k));
                let jac = vec_add(
                    &vec_add(
                        &c.bracket_of(&c.bracket.slice(i, j), &ek),
                        &c.bracket_of(&c.bracket.slice(j, k), &ei),
                    ),
                    &c.bracket_of(&c.bracket.slice(k, i), &ej),
                );
                let t = cartan_t(c, &ei, &ej, &ek);
                let dt = grad_of(&t).expect("gradients exist");
                if jac != dt {
                    results[1].record(
                        "axiom 1",
                        vec![i, j, k],
                        fmt_vec(&crate::linalg::vec_sub(&jac, &dt)),
                    );
                }
            }
        }
    }

    // axiom 2: rho [[e1,e2]] = [rho e1, rho e2]
    for i in 0..c.dim_e {
        for j in 0..c.dim_e {
            results[2].checked += 1;
            let lhs = c.rho_of(&c.bracket.slice(i, j));
            let rhs = c.rho[i].commutator(&c.rho[j]);
            if lhs != rhs {
                results[2].record("axiom 2", vec![i, j], "anchor fails to intertwine brackets".to_string());
            }
        }
    }

    // axiom 3: [[e1, f e2]] = f [[e1,e2]] + (rho(e1) f) e2 - <e1,e2> Df
    for i in 0..c.dim_e {
        for j in 0..c.dim_e {
            for m in 0..c.dim_a {
                results[3].checked += 1;
                if !gradients_exist {
                    results[3].record("axiom 3", vec![i, j, m], "gradient undefined".to_string());
                    continue;
                }
                let lhs = c.bracket_of(&c.e_unit(i), &c.action.slice(m, j));
                let t1 = c.module_action(&c.a_unit(m), &c.bracket.slice(i, j));
                let rho_f = c.rho[i].mul_vec(&c.a_unit(m));
                let t2 = c.module_action(&rho_f, &c.e_unit(j));
                let df = grad_of(&c.a_unit(m)).expect("gradients exist");
                let t3 = c.module_action(&c.pairing.slice(i, j), &df);
                let rhs = crate::linalg::vec_sub(&vec_add(&t1, &t2), &t3);
                if lhs != rhs {
                    results[3].record(
                        "axiom 3",
                        vec![i, j, m],
                        fmt_vec(&crate::linalg::vec_sub(&lhs, &rhs)),
                    );
                }
            }
        }
    }

    // axiom 4: rho(Df) = 0 and <Df, Dg> = 0
    for i in 0..c.dim_a {
        for j in 0..c.dim_a {
            results[4].checked += 1;
            if !gradients_exist {
                results[4].record("axiom 4", vec![i, j], "gradient undefined".to_string());
                continue;
            }
            let di = grad_of(&c.a_unit(i)).expect("gradients exist");
            let dj = grad_of(&c.a_unit(j)).expect("gradients exist");
            if !c.rho_of(&di).is_zero() {
                results[4].record("axiom 4 (rho . D = 0)", vec![i], "anchor of gradient nonzero".to_string());
            } else if !vec_is_zero(&c.pair(&di, &dj)) {
                results[4].record("axiom 4 (<Df,Dg> = 0)", vec![i, j], fmt_vec(&c.pair(&di, &dj)));
            }
        }
    }

    // axiom 5: rho(e)<h1,h2> = <[[e,h1]] + D<e,h1>, h2> + <h1, [[e,h2]] + D<e,h2>>
    for e in 0..c.dim_e {
        for h1 in 0..c.dim_e {
            for h2 in 0..c.dim_e {
                results[5].checked += 1;
                if !gradients_exist {
                    results[5].record("axiom 5", vec![e, h1, h2], "gradient undefined".to_string());
                    continue;
                }
                let lhs = c.rho[e].mul_vec(&c.pairing.slice(h1, h2));
                let left = vec_add(
                    &c.bracket.slice(e, h1),
                    &grad_of(&c.pairing.slice(e, h1)).expect("gradients exist"),
                );
                let right = vec_add(
                    &c.bracket.slice(e, h2),
                    &grad_of(&c.pairing.slice(e, h2)).expect("gradients exist"),
                );
                let rhs = vec_add(
                    &c.pair(&left, &c.e_unit(h2)),
                    &c.pair(&c.e_unit(h1), &right),
                );
                if lhs != rhs {
                    results[5].record(
                        "axiom 5",
                        vec![e, h1, h2],
                        fmt_vec(&crate::linalg::vec_sub(&lhs, &rhs)),
                    );
                }
            }
        }
    }

    AxiomReport { results }
}

/// The omni-Lie algebra as a C-algebra instance: `A = Q^n` with the zero
/// multiplication, `E = gl(n) (+) Q^n` with the zero module action, the
/// omni pairing and bracket, and `rho` the projection onto `gl(n)`.
/// Derivations of the zero-product algebra are all of `gl(n)`, which is
/// how the matrix summand acts on `A`; the checker verifies the Leibniz
/// rule anyway rather than special-casing.
///
/// The `E`-basis order matches the global flattening: matrix units
/// row-major, then the vector basis.
pub fn build_omni_instance(n: usize) -> CAlgebraInstance {
    assert!(n >= 1, "dimension must be positive");
    let dim_a = n;
    let dim_e = n * n + n;
    let basis: Vec<OmniElement> = (0..dim_e)
        .map(|t| OmniElement::from_flat(n, &crate::linalg::vec_unit(dim_e, t)))
        .collect();

    let mut pairing = Tensor3::zeros(dim_e, dim_e, dim_a);
    let mut bracket = Tensor3::zeros(dim_e, dim_e, dim_e);
    for i in 0..dim_e {
        for j in 0..dim_e {
            let p = omni_pairing(&basis[i], &basis[j]);
            for (k, val) in p.into_iter().enumerate() {
                if !val.is_zero() {
                    pairing.set(i, j, k, val);
                }
            }
            let b = omni_bracket(&basis[i], &basis[j]).flatten();
            for (k, val) in b.into_iter().enumerate() {
                if !val.is_zero() {
                    bracket.set(i, j, k, val);
                }
            }
        }
    }

    let rho: Vec<RatMat> = (0..dim_e)
        .map(|t| {
            if t < n * n {
                RatMat::elementary(n, t / n, t % n)
            } else {
                RatMat::zero(n, n)
            }
        })
        .collect();

    CAlgebraInstance {
        dim_a,
        dim_e,
        mul_a: Tensor3::zeros(dim_a, dim_a, dim_a),
        action: Tensor3::zeros(dim_a, dim_e, dim_e),
        pairing,
        bracket,
        rho,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat_int, vec_unit};
    use crate::linalg::RatMat;
    use crate::omni::OmniElement;

    #[test]
    fn omni_instance_validates() {
        for n in 1..=2 {
            let c = build_omni_instance(n);
            let report = validate_instance(&c);
            assert!(report.ok(), "n = {n}: {:?}", report.failures);
        }
    }

    #[test]
    fn non_symmetric_pairing_rejected() {
        let mut c = build_omni_instance(1);
        c.pairing.set(0, 1, 0, rat_int(5));
        let report = validate_instance(&c);
        assert!(report.failures.iter().any(|f| f.check == "pairing symmetric"));
    }

    #[test]
    fn zero_pairing_fails_weak_nondegeneracy() {
        let mut c = build_omni_instance(1);
        c.pairing = Tensor3::zeros(c.dim_e, c.dim_e, c.dim_a);
        let report = validate_instance(&c);
        assert!(report.failures.iter().any(|f| f.check == "weak nondegeneracy"));
    }

    #[test]
    fn lie_algebra_with_zero_pairing_is_rejected_before_axioms() {
        // a 3-dim Lie algebra bracket over a 1-dim A with pairing zero:
        // beta has full kernel, so validation stops it up front
        let cross = crate::liealg::catalog("so3").unwrap();
        let mut bracket = Tensor3::zeros(3, 3, 3);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    bracket.set(i, j, k, cross.at(i, j, k).clone());
                }
            }
        }
        let c = CAlgebraInstance {
            dim_a: 1,
            dim_e: 3,
            mul_a: Tensor3::zeros(1, 1, 1),
            action: Tensor3::zeros(1, 3, 3),
            pairing: Tensor3::zeros(3, 3, 1),
            bracket,
            rho: vec![RatMat::zero(1, 1); 3],
        };
        let report = validate_instance(&c);
        assert!(!report.ok());
        assert!(report.failures.iter().any(|f| f.check == "weak nondegeneracy"));
    }

    #[test]
    fn gradient_is_vector_inclusion() {
        for n in 1..=3 {
            let c = build_omni_instance(n);
            for i in 0..n {
                let g = gradient(&c, &vec_unit(n, i)).expect("gradient defined");
                // Dv = (0, v): zero matrix block, then the vector itself
                let e = OmniElement::from_flat(n, &g);
                assert!(e.matrix().is_zero());
                assert_eq!(e.vector(), vec_unit(n, i));
            }
            // linearity: D(0) = 0
            let z = gradient(&c, &crate::linalg::vec_zero(n)).unwrap();
            assert!(crate::linalg::vec_is_zero(&z));
        }
    }

    #[test]
    fn cartan_t_matches_omni_module() {
        let n = 2;
        let c = build_omni_instance(n);
        let mut rng = crate::sampling::seeded_rng(37);
        for _ in 0..10 {
            let e1 = crate::sampling::random_omni_element(&mut rng, n);
            let e2 = crate::sampling::random_omni_element(&mut rng, n);
            let e3 = crate::sampling::random_omni_element(&mut rng, n);
            let lhs = cartan_t(&c, &e1.flatten(), &e2.flatten(), &e3.flatten());
            let rhs = crate::omni::cartan_form(&e1, &e2, &e3);
            assert_eq!(lhs, rhs);
        }
        // frozen value: T((E12,0),(E21,0),(0,e1)) = e1/4
        let e12 = OmniElement::from_matrix(RatMat::elementary(2, 0, 1)).flatten();
        let e21 = OmniElement::from_matrix(RatMat::elementary(2, 1, 0)).flatten();
        let v1 = OmniElement::from_vector(vec_unit(2, 0)).flatten();
        assert_eq!(cartan_t(&c, &e12, &e21, &v1), vec![crate::linalg::rat(1, 4), Rat::zero()]);
    }

    #[test]
    fn omni_instance_passes_axioms() {
        for n in 1..=2 {
            let c = build_omni_instance(n);
            let report = check_axioms(&c);
            assert!(report.all_pass(), "n = {n}: {:?}", report.results);
        }
    }

    #[test]
    fn axiom1_sides_match_omni_module() {
        let n = 2;
        let c = build_omni_instance(n);
        let d = c.dim_e;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let jac_tensor = vec_add(
                        &vec_add(
                            &c.bracket_of(&c.bracket.slice(i, j), &c.e_unit(k)),
                            &c.bracket_of(&c.bracket.slice(j, k), &c.e_unit(i)),
                        ),
                        &c.bracket_of(&c.bracket.slice(k, i), &c.e_unit(j)),
                    );
                    let ei = OmniElement::from_flat(n, &c.e_unit(i));
                    let ej = OmniElement::from_flat(n, &c.e_unit(j));
                    let ek = OmniElement::from_flat(n, &c.e_unit(k));
                    let jac_omni = crate::omni::jacobiator(&ei, &ej, &ek);
                    assert_eq!(jac_tensor, jac_omni.flatten());
                    let t = cartan_t(&c, &c.e_unit(i), &c.e_unit(j), &c.e_unit(k));
                    assert_eq!(t, crate::omni::cartan_form(&ei, &ej, &ek));
                }
            }
        }
    }

    #[test]
    fn doubled_gradient_fails_axioms() {
        let c = build_omni_instance(2);
        let report = check_axioms_with_gradient_scale(&c, &rat_int(2));
        assert!(!report.all_pass());
        // the defining relation of the gradient breaks
        assert!(!report.result(0).pass());
        assert!(report.result(0).failures.iter().any(|f| f.check == "gradient defining relation"));
        // and the anomaly identity goes out of balance wherever T != 0
        assert!(!report.result(1).pass());
        assert!(report.result(1).failure_count > 0);
    }


    #[test]
    fn rho_is_projection_on_matrix_part() {
        let n = 2;
        let c = build_omni_instance(n);
        let mut rng = crate::sampling::seeded_rng(41);
        let e = crate::sampling::random_omni_element(&mut rng, n);
        assert_eq!(c.rho_of(&e.flatten()), e.matrix().clone());
    }

    #[test]
    fn tensor_apply_contracts() {
        let mut t = Tensor3::zeros(2, 2, 2);
        t.set(0, 1, 0, rat_int(3));
        t.set(1, 0, 1, rat_int(-1));
        let x = vec![rat_int(2), rat_int(5)];
        let y = vec![rat_int(7), rat_int(11)];
        let out = t.apply(&x, &y);
        // out[0] = x0 y1 * 3 = 66; out[1] = x1 y0 * -1 = -35
        assert_eq!(out, vec![rat_int(66), rat_int(-35)]);
    }
}
