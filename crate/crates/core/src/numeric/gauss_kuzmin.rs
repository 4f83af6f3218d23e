use num_traits::{Float, FromPrimitive};

use super::cf::{ContinuedFraction, Rational};
use crate::error::{Error, Result};
use crate::scalar::Int;

/// Gauss–Kuzmin probability of an odd-length partial-quotient pattern.
///
/// With `α1 = [a1:...;a_k]` and `α2 = [a1:...;a_k + 1]`, returns
/// `log2((α1 + 1)·α2 / (α1·(α2 + 1)))`. The ratio is formed exactly; only
/// the final logarithm is floating point.
pub fn gk_probability<T: Int, F: Float + FromPrimitive>(pattern: &[T]) -> Result<F> {
    if pattern.len() % 2 == 0 {
        return Err(Error::InvalidPeriod("Gauss-Kuzmin pattern must have odd length".into()));
    }
    crate::numeric::cf::positive_terms(pattern, "Gauss-Kuzmin pattern")?;
    let alpha1 = ContinuedFraction::from_slice(pattern)?.eval();
    let mut bumped = pattern.to_vec();
    let last = bumped.pop().expect("nonempty");
    bumped.push(last + T::one());
    let alpha2 = ContinuedFraction::from_slice(&bumped)?.eval();
    let one = Rational::<T>::from_integer(T::one());
    let ratio = (alpha1.clone() + one.clone()) * alpha2.clone() / (alpha1 * (alpha2 + one));
    // ratio > 1; ln_1p on the excess keeps precision for long patterns.
    let excess = ratio - Rational::from_integer(T::one());
    let excess = to_float::<T, F>(&excess);
    Ok(excess.ln_1p() / F::from_f64(std::f64::consts::LN_2).expect("ln 2"))
}

fn to_float<T: Int, F: Float + FromPrimitive>(x: &Rational<T>) -> F {
    let (mut n, mut d) = (x.numer().clone(), x.denom().clone());
    // Drop decimal digits from both sides until they fit an f64.
    let excess_digits = d.to_string().len().saturating_sub(300);
    if excess_digits > 0 {
        let scale = num_traits::pow(crate::scalar::int::<T>(10), excess_digits);
        n = n / scale.clone();
        d = d / scale;
    }
    let n = n.to_f64().unwrap_or(0.0);
    let d = d.to_f64().unwrap_or(f64::INFINITY);
    F::from_f64(n / d).expect("finite ratio")
}
