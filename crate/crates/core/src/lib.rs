pub mod error;
pub mod gf;
pub mod maps;
pub mod series;
pub mod suites;
pub mod trees;

pub use error::{Error, Result};
pub use series::{Grading, Monomial, RatFunc, Series, VarId};
