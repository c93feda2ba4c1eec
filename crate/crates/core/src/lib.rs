//! Exact counting of solutions of polynomial systems in complex variables
//! and their conjugates.
//!
//! A system `p_k(z, conj z) = 0` is treated as a system in independent
//! variables `(z, w)` together with its conjugate `p_k*`. The number of
//! solutions with `w = conj z` equals the signature of a Hermitian trace
//! form on the quotient algebra, computed here in exact Gaussian-rational
//! arithmetic. A floating-point solver is included as a cross-check.

pub mod counting;
pub mod error;
pub mod forms;
pub mod gaussian;
pub mod groebner;
pub mod matrix;
pub mod oracle;
pub mod parse;
pub mod poly;
pub mod quotient;
pub mod report;

pub use counting::{count_roots, ConjSystem, Count, RootCountReport};
pub use error::{Error, Result};
pub use forms::{HermitianMatrix, Signature, SymmetricMatrix};
pub use gaussian::GaussianRational;
pub use groebner::{buchberger, GroebnerBasis, QuotientBasis};
pub use matrix::Matrix;
pub use poly::{GenPoly, Monomial, MonomialOrder};
pub use quotient::QuotientAlgebra;
