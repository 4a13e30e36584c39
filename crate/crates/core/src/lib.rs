//! Exact h*-polynomials, Ehrhart data and good triangulations of
//! cosmological polytopes of multigraphs.

pub mod config;
pub mod error;
pub mod families;
pub mod geometry;
pub mod hstar;
pub mod multigraph;
pub mod polynomial;
pub mod polytope;
pub mod random;
pub mod scalar;
pub mod tutte;
pub mod verify;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use config::Limits;
pub use error::{Error, Result};
pub use hstar::{hstar, volume, HstarReport, Method};
pub use multigraph::{EdgeSubset, Multigraph};

pub type IntPolynomial = polynomial::Polynomial<BigInt>;
pub type IntBivarPolynomial = polynomial::BivarPolynomial<BigInt>;
pub type Rational = BigRational;
pub type QVector = Vec<Rational>;
pub type QMatrix = geometry::Matrix<Rational>;
