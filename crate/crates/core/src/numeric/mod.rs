//! Exact rationals, ordinary continued fractions, quadratic surds and the
//! Gauss–Kuzmin pattern probability.

pub(crate) mod cf;
mod gauss_kuzmin;
mod surd;

pub use cf::{cf_eval, cf_expand, convergents, ContinuedFraction, Parity, Rational};
pub use gauss_kuzmin::gk_probability;
pub use surd::{surd_cf_expand, PeriodicCFExpansion, QuadraticSurd};
