//! Computational invariant theory: minimal generating invariants for finite
//! matrix groups, diagonal torus and finite abelian actions, and linearly
//! reductive groups given by equations, plus Molien series, Hilbert ideals
//! and presentations of invariant rings.

pub mod diagonal;
pub mod error;
pub mod field;
pub mod finite;
pub mod groebner;
pub mod invariant_ring;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod polynomial;
pub mod reductive;
pub mod ring;
pub mod univariate;

pub use diagonal::{DiagonalAction, MonomialSet};
pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use finite::{act_on, permutation_matrix, FiniteGroupAction};
pub use groebner::{buchberger, elimination_ideal, normal_form, GroebnerBasis, IncrementalBasis};
pub use invariant_ring::{
    invariant_ring, DegreeCheck, FiniteAlgorithm, GroupAction, InvariantOptions, Method, RingOfInvariants,
};
pub use linalg::Matrix;
pub use monomial::{Monomial, TermOrder};
pub use parse::{parse_polynomial, parse_scalar};
pub use polynomial::Polynomial;
pub use reductive::LinearlyReductiveAction;
pub use ring::PolynomialRing;
pub use univariate::{RationalFunction, UniPoly};
