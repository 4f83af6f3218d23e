//! Integer geometry of SL(2, Z) operators: continued fractions, sails and LLS periods.

pub mod analysis;
pub mod error;
pub mod lattice;
pub mod numeric;
pub mod operators;
pub mod reduction;
pub mod sails;
pub mod scalar;

pub use error::{Error, Result};
pub use lattice::{LatticePoint, LlsFragment, LlsRole, VertexChain};
pub use operators::{classify, eigen_data, is_hyperbolic, EigenData, IntMatrix2, OperatorClass};
pub use numeric::{ContinuedFraction, Parity, PeriodicCFExpansion, QuadraticSurd, Rational};
pub use reduction::{
    construct_from_period, construct_negative_lambda, construct_series_i, is_reduced, lls_period,
    period_of_reduced, reduce, reduce_fast, LlsPeriod, ReductionTrace,
};
pub use sails::{check_duality, four_sail_periods, operator_sail_period, SailPeriod};
pub use scalar::Int;

pub type Surd = QuadraticSurd<num_bigint::BigInt>;
pub type Point = LatticePoint<num_bigint::BigInt>;
pub type Point64 = LatticePoint<i64>;
pub type Matrix = operators::IntMatrix2<num_bigint::BigInt>;
pub type Matrix64 = operators::IntMatrix2<i64>;
