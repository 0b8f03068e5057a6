//! Exact rational finite operator calculus: delta operators, basic sequences,
//! generalized Gončarov bases and counting with bounded order statistics.

pub mod enumeration;
pub mod error;
pub mod goncarov;
pub mod grid;
pub mod identities;
pub mod linalg;
pub mod operators;
pub mod poly;
pub mod rational;
pub mod series;

pub use error::{Error, Result};
pub use goncarov::{
    delta_abel, goncarov_determinant, goncarov_recursion, BasisRecord, CheckReport, GoncarovBasis,
};
pub use grid::Grid;
pub use operators::{apply, apply_power, BasicSequence, Indicator, Kind, OperatorSpec};
pub use poly::Poly;
pub use rational::Rational;
pub use series::TruncSeries;
