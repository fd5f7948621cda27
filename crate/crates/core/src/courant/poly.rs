//! Sparse multivariate polynomials over the rationals, plus the small
//! zoo of polynomial-coefficient tensors used by the Courant bracket:
//! vector fields, 1-forms, 2-forms, and alternating 3-tensors.
//!
//! Polynomials are exact and untruncated: every operation returns the
//! full polynomial result, so identities checked through this module are
//! genuine polynomial identities.

use crate::linalg::{Rat, RatVec};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Sparse polynomial: exponent tuple -> nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(&vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::from_integer(1.into()))
    }

    /// The coordinate polynomial `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut exps = vec![0u32; nvars];
        exps[i] = 1;
        let mut p = Poly::zero(nvars);
        p.add_term(&exps, Rat::from_integer(1.into()));
        p
    }

    pub fn monomial(nvars: usize, exps: &[u32], coeff: Rat) -> Self {
        assert_eq!(exps.len(), nvars, "exponent tuple length mismatch");
        let mut p = Poly::zero(nvars);
        p.add_term(exps, coeff);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rat)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Add `coeff * x^exps` in place, pruning a resulting zero.
    pub fn add_term(&mut self, exps: &[u32], coeff: Rat) {
        assert_eq!(exps.len(), self.nvars, "exponent tuple length mismatch");
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(exps) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.terms.remove(exps);
                }
            }
            None => {
                self.terms.insert(exps.to_vec(), coeff);
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Partial derivative with respect to `x_i`.
    pub fn diff(&self, i: usize) -> Poly {
        assert!(i < self.nvars, "variable index out of range");
        let mut out = Poly::zero(self.nvars);
        for (exps, c) in &self.terms {
            if exps[i] == 0 {
                continue;
            }
            let mut e = exps.clone();
            e[i] -= 1;
            out.add_term(&e, c * Rat::from_integer(exps[i].into()));
        }
        out
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars, "evaluation point length mismatch");
        let mut acc = Rat::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(exps) {
                for _ in 0..e {
                    term *= x;
                }
            }
            acc += term;
        }
        acc
    }

    /// The coefficient vector of the degree-1 part, one entry per variable.
    pub fn linear_coefficients(&self) -> RatVec {
        (0..self.nvars)
            .map(|i| {
                let mut exps = vec![0u32; self.nvars];
                exps[i] = 1;
                self.coeff(&exps)
            })
            .collect()
    }

    /// True iff the polynomial is homogeneous linear (no constant or
    /// higher-degree terms).
    pub fn is_linear_homogeneous(&self) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == 1)
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let exps: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(&exps, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", c)?;
            for (i, &e) in exps.iter().enumerate() {
                if e == 1 {
                    write!(f, "*x{}", i + 1)?;
                } else if e > 1 {
                    write!(f, "*x{}^{}", i + 1, e)?;
                }
            }
        }
        Ok(())
    }
}

/// Polynomial vector field: component `i` is the coefficient of `d/dx_i`.
/// The number of components equals the number of variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyVF {
    comps: Vec<Poly>,
}

/// Polynomial 1-form: component `i` is the coefficient of `dx_i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly1Form {
    comps: Vec<Poly>,
}

macro_rules! component_tuple {
    ($name:ident) => {
        impl $name {
            pub fn new(comps: Vec<Poly>) -> Self {
                let n = comps.len();
                for p in &comps {
                    assert_eq!(p.nvars(), n, "component variable count must equal dimension");
                }
                Self { comps }
            }

            pub fn zero(nvars: usize) -> Self {
                Self::new((0..nvars).map(|_| Poly::zero(nvars)).collect())
            }

            pub fn nvars(&self) -> usize {
                self.comps.len()
            }

            pub fn component(&self, i: usize) -> &Poly {
                &self.comps[i]
            }

            pub fn components(&self) -> &[Poly] {
                &self.comps
            }

            pub fn is_zero(&self) -> bool {
                self.comps.iter().all(Poly::is_zero)
            }

            pub fn add(&self, other: &Self) -> Self {
                assert_eq!(self.nvars(), other.nvars(), "dimension mismatch");
                Self::new(self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect())
            }

            pub fn sub(&self, other: &Self) -> Self {
                assert_eq!(self.nvars(), other.nvars(), "dimension mismatch");
                Self::new(self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect())
            }

            pub fn neg(&self) -> Self {
                Self::new(self.comps.iter().map(|a| -a).collect())
            }

            pub fn scale(&self, c: &Rat) -> Self {
                Self::new(self.comps.iter().map(|a| a.scale(c)).collect())
            }

            /// Multiply every component by a polynomial (module action).
            pub fn mul_poly(&self, f: &Poly) -> Self {
                Self::new(self.comps.iter().map(|a| a * f).collect())
            }
        }
    };
}

component_tuple!(PolyVF);
component_tuple!(Poly1Form);

impl PolyVF {
    /// Constant vector field with the given coefficients.
    pub fn constant(coeffs: &[Rat]) -> Self {
        let n = coeffs.len();
        Self::new(coeffs.iter().map(|c| Poly::constant(n, c.clone())).collect())
    }

    /// Derivation action on a function: `xi(p) = sum_i xi^i dp/dx_i`.
    pub fn apply(&self, p: &Poly) -> Poly {
        assert_eq!(p.nvars(), self.nvars(), "variable count mismatch");
        let mut out = Poly::zero(self.nvars());
        for (i, comp) in self.comps.iter().enumerate() {
            if !comp.is_zero() {
                out = &out + &(comp * &p.diff(i));
            }
        }
        out
    }
}

impl Poly1Form {
    /// Constant 1-form with the given coefficients.
    pub fn constant(coeffs: &[Rat]) -> Self {
        let n = coeffs.len();
        Self::new(coeffs.iter().map(|c| Poly::constant(n, c.clone())).collect())
    }
}

/// Polynomial 2-form stored as the full matrix `w_ij = w(d/dx_i, d/dx_j)`;
/// the constructor enforces exact skewness.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly2Form {
    n: usize,
    entries: Vec<Poly>,
}

impl Poly2Form {
    pub fn zero(n: usize) -> Self {
        Poly2Form { n, entries: (0..n * n).map(|_| Poly::zero(n)).collect() }
    }

    /// Build from strictly-upper-triangle entries `(i, j, w_ij)` with
    /// `i < j` (0-based); the lower triangle is filled by skewness.
    pub fn from_upper(n: usize, upper: &[(usize, usize, Poly)]) -> Self {
        let mut w = Self::zero(n);
        for (i, j, p) in upper {
            assert!(i < j && *j < n, "upper-triangle indices required");
            assert_eq!(p.nvars(), n, "entry variable count mismatch");
            w.entries[i * n + j] = &w.entries[i * n + j] + p;
            w.entries[j * n + i] = &w.entries[j * n + i] - p;
        }
        w
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> &Poly {
        assert!(i < self.n && j < self.n, "index out of range");
        &self.entries[i * self.n + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    /// Lowering map: `(w_flat(xi))_j = sum_i xi^i w_ij`.
    pub fn flat_map(&self, xi: &PolyVF) -> Poly1Form {
        assert_eq!(xi.nvars(), self.n, "dimension mismatch");
        Poly1Form::new(
            (0..self.n)
                .map(|j| {
                    let mut acc = Poly::zero(self.n);
                    for i in 0..self.n {
                        acc = &acc + &(xi.component(i) * self.at(i, j));
                    }
                    acc
                })
                .collect(),
        )
    }
}

/// Alternating polynomial 3-tensor, stored by entries `t_ijk` for
/// `i < j < k`. Used for exterior derivatives of 2-forms and Jacobi
/// residuals of bivectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AltPoly3 {
    n: usize,
    entries: BTreeMap<(usize, usize, usize), Poly>,
}

impl AltPoly3 {
    pub fn zero(n: usize) -> Self {
        AltPoly3 { n, entries: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, p: Poly) {
        assert!(i < j && j < k && k < self.n, "strictly increasing indices required");
        assert_eq!(p.nvars(), self.n, "entry variable count mismatch");
        if p.is_zero() {
            self.entries.remove(&(i, j, k));
        } else {
            self.entries.insert((i, j, k), p);
        }
    }

    pub fn at(&self, i: usize, j: usize, k: usize) -> Poly {
        assert!(i < j && j < k && k < self.n, "strictly increasing indices required");
        self.entries.get(&(i, j, k)).cloned().unwrap_or_else(|| Poly::zero(self.n))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nonzero_entries(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Poly)> {
        self.entries.iter()
    }
}

impl fmt::Display for AltPoly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|((i, j, k), p)| format!("[{},{},{}]: {}", i + 1, j + 1, k + 1, p))
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}
