//! Exact rational homotopy computations for formal simply connected spaces.
//!
//! The crate builds Sullivan minimal models of finitely presented
//! graded-commutative algebras, reads off rational homotopy ranks, decides
//! the elliptic/hyperbolic dichotomy with finite certificates, and encodes
//! the Hodge-diamond classification of elliptic Kähler surfaces and
//! threefolds together with the elliptic Fano threefold families.
//!
//! All arithmetic is exact over ℚ.

pub mod fano;
pub mod graded;
pub mod kahler;
pub mod linalg;
pub mod presentation;
pub mod rings;
pub mod sullivan;

pub use graded::{parse_poly, Derivation, FreeGCA, Generator, Monomial, Polynomial, RingError};
pub use linalg::{MatrixQ, Rational};
pub use presentation::{AlgebraError, DegreeBasis, Presentation};
pub use sullivan::{
    build_bigraded_model, classify_dichotomy, DichotomyVerdict, HomotopyTable, ModelError, SullivanAlgebra, VerdictKind,
};
pub use fano::{FanoFamily, B3};
pub use kahler::{ClassificationVerdict, Ellipticity, HodgeDiamond, KahlerError};
