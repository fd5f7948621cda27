//! Exact computational algebra for the omni-Lie algebra on `gl(n) x Q^n`,
//! its D-structures, the Courant bracket on polynomial sections of
//! `T (+) T*` over `Q^n`, and finite-dimensional C-algebra axiom checking.
//!
//! All arithmetic is exact rational; identities are decided by equality,
//! never by tolerance. Module map:
//!
//! - [`linalg`] - rationals, dense matrices, solving, canonical subspaces
//! - [`omni`] - the bracket, pairing, Cartan 3-form and jacobiator on
//!   `gl(n) x Q^n`, plus subspaces of it
//! - [`liealg`] - skew bilinear operations on `Q^n` via structure
//!   constants, Jacobi testing, adjoint graphs, a catalog of standard
//!   algebras
//! - [`dstruct`] - isotropy, orthogonals, maximality, bracket closure,
//!   D-structure classification and search
//! - [`calgebra`] - executable checker for the C-algebra axioms on
//!   finite-dimensional instances
//! - [`courant`] - sparse multivariate polynomials, Cartan calculus, the
//!   Courant bracket, Dirac-structure verification, and the linearization
//!   bridge back to [`omni`]
//! - [`sampling`] - seeded deterministic random generators used by
//!   property checks and searches
//! - [`io`] - the JSON file formats shared by the CLI and bindings

// the contraction kernels index several arrays by one loop variable;
// range loops read better there than zipped iterator chains
#![allow(clippy::needless_range_loop)]

pub mod calgebra;
pub mod courant;
pub mod dstruct;
pub mod io;
pub mod liealg;
pub mod linalg;
pub mod omni;
pub mod sampling;
