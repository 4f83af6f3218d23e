//! The integer scalar abstraction every exact routine is generic over.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::{Integer, Roots};
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact signed integer: implemented for `i64`, `i128` and `num_bigint::BigInt`.
///
/// Fixed-width instantiations are the caller's responsibility with respect to
/// overflow; the census uses `i64` with entries bounded well below `2^31`.
pub trait Int:
    Integer
    + Signed
    + Roots
    + Clone
    + Debug
    + Display
    + Hash
    + FromPrimitive
    + ToPrimitive
    + FromStr
    + Send
    + Sync
    + 'static
{
}

impl<T> Int for T where
    T: Integer
        + Signed
        + Roots
        + Clone
        + Debug
        + Display
        + Hash
        + FromPrimitive
        + ToPrimitive
        + FromStr
        + Send
        + Sync
        + 'static
{
}

/// Lift a small constant into `T`.
#[inline]
pub fn int<T: Int>(v: i64) -> T {
    T::from_i64(v).expect("every Int holds i64 constants")
}

/// Extended Euclid: returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b) >= 0`.
pub fn ext_gcd<T: Int>(a: &T, b: &T) -> (T, T, T) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Serialize an integer as a JSON number when it fits in `i64`, else as a decimal string.
pub(crate) fn serialize_int<T: Int, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(x) => s.serialize_i64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

pub(crate) fn serialize_int_seq<T: Int, S: serde::Serializer>(
    v: &[T],
    s: S,
) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&IntRef(x))?;
    }
    seq.end()
}

pub(crate) struct IntRef<'a, T>(pub &'a T);

impl<T: Int> serde::Serialize for IntRef<'_, T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_int(self.0, s)
    }
}

/// Render a sequence as `(a,b,c)`.
pub fn format_tuple<T: Display>(v: &[T]) -> String {
    let inner: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", inner.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn ext_gcd_normalizes_sign() {
        let (g, x, y) = ext_gcd(&-4i64, &6);
        assert_eq!(g, 2);
        assert_eq!(-4 * x + 6 * y, 2);
        let (g, x, y) = ext_gcd(&BigInt::from(7), &BigInt::from(-3));
        assert_eq!(g, BigInt::from(1));
        assert_eq!(BigInt::from(7) * x + BigInt::from(-3) * y, BigInt::from(1));
    }

    #[test]
    fn tuple_format() {
        assert_eq!(format_tuple(&[2, 1, 1, 3]), "(2,1,1,3)");
    }
}
