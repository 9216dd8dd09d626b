//! Exact computation of tropical varieties, Groebner cones and generic
//! tropical fans of graded polynomial ideals over the rationals (trivial
//! valuation, min-convention for initial forms).

pub mod error;
pub mod fans;
pub mod generic;
pub mod groebner;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod special;
pub mod weights;

pub use error::{Error, Result};
pub use poly::{Ideal, Monomial, Polynomial, Rational, TermOrder, WeightVector};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
