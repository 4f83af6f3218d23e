use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::scalar::{int, Int};

/// Exact fraction in lowest terms with positive denominator.
pub type Rational<T> = Ratio<T>;

/// Parity of the number of partial quotients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_len(n: usize) -> Self {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Finite ordinary continued fraction `[a0:a1;a2;...;an]`.
///
/// `a0` is any integer, every later term is at least one. The empty fraction
/// is not representable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContinuedFraction<T> {
    terms: Vec<T>,
}

impl<T: Int> serde::Serialize for ContinuedFraction<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::scalar::serialize_int_seq(&self.terms, s)
    }
}

impl<T: Int> ContinuedFraction<T> {
    pub fn new(terms: Vec<T>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidContinuedFraction("no terms".into()));
        }
        if let Some(bad) = terms.iter().skip(1).find(|t| !t.is_positive()) {
            return Err(Error::InvalidContinuedFraction(format!(
                "partial quotient {bad} after the first must be positive"
            )));
        }
        Ok(Self { terms })
    }

    pub fn from_slice(terms: &[T]) -> Result<Self> {
        Self::new(terms.to_vec())
    }

    pub fn terms(&self) -> &[T] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<T> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn parity(&self) -> Parity {
        Parity::of_len(self.terms.len())
    }

    pub fn eval(&self) -> Rational<T> {
        cf_eval(self)
    }

    /// Numerator and denominator of the value, evaluated from the innermost term out.
    pub fn eval_parts(&self) -> (T, T) {
        let mut iter = self.terms.iter().rev();
        let mut num = iter.next().expect("nonempty").clone();
        let mut den = T::one();
        for a in iter {
            let next = a.clone() * num.clone() + den;
            den = num;
            num = next;
        }
        (num, den)
    }
}

impl<T: fmt::Display> fmt::Display for ContinuedFraction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, t) in self.terms.iter().enumerate() {
            match i {
                0 => write!(f, "{t}")?,
                1 => write!(f, ":{t}")?,
                _ => write!(f, ";{t}")?,
            }
        }
        write!(f, "]")
    }
}

impl<T: Int> FromStr for ContinuedFraction<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| Error::InvalidContinuedFraction(format!("expected [a0:a1;...], got {s:?}")))?;
        let (head, tail) = match body.split_once(':') {
            Some((h, t)) => (h, Some(t)),
            None => (body, None),
        };
        let parse = |tok: &str| {
            tok.trim()
                .parse::<T>()
                .map_err(|_| Error::InvalidContinuedFraction(format!("bad term {tok:?}")))
        };
        let mut terms = vec![parse(head)?];
        if let Some(tail) = tail {
            for tok in tail.split(';') {
                terms.push(parse(tok)?);
            }
        }
        Self::new(terms)
    }
}

/// Exact value of a continued fraction.
pub fn cf_eval<T: Int>(cf: &ContinuedFraction<T>) -> Rational<T> {
    let (num, den) = cf.eval_parts();
    Ratio::new(num, den)
}

/// The unique even or odd continued fraction of `x`.
///
/// Uses `a0 = floor(x)` and remainders in `[0, 1)`, so negative rationals are
/// handled uniformly. The two parities differ only in the tail rewrite
/// `[...; an] = [...; an - 1; 1]`.
pub fn cf_expand<T: Int>(x: &Rational<T>, parity: Parity) -> ContinuedFraction<T> {
    let mut n = x.numer().clone();
    let mut d = x.denom().clone();
    let mut terms = Vec::new();
    loop {
        let (q, r) = n.div_mod_floor(&d);
        terms.push(q);
        if r.is_zero() {
            break;
        }
        n = d;
        d = r;
    }
    // Euclid yields a last term >= 2 unless the expansion is a single integer.
    if Parity::of_len(terms.len()) != parity {
        let last = terms.pop().expect("nonempty");
        terms.push(last - T::one());
        terms.push(T::one());
    }
    ContinuedFraction { terms }
}

/// Convergents `p_k / q_k` of every prefix, seeded with `p_{-1}=1, q_{-1}=0, p_{-2}=0, q_{-2}=1`.
///
/// Returned unreduced as `(p_k, q_k)` pairs; the recurrence already keeps them coprime.
pub fn convergent_pairs<T: Int>(cf: &ContinuedFraction<T>) -> Vec<(T, T)> {
    let (mut p_prev, mut q_prev) = (T::one(), T::zero());
    let (mut p_prev2, mut q_prev2) = (T::zero(), T::one());
    let mut out = Vec::with_capacity(cf.len());
    for a in cf.terms() {
        let p = a.clone() * p_prev.clone() + p_prev2;
        let q = a.clone() * q_prev.clone() + q_prev2;
        p_prev2 = p_prev;
        q_prev2 = q_prev;
        p_prev = p.clone();
        q_prev = q.clone();
        out.push((p, q));
    }
    out
}

pub fn convergents<T: Int>(cf: &ContinuedFraction<T>) -> Vec<Rational<T>> {
    convergent_pairs(cf)
        .into_iter()
        .map(|(p, q)| Ratio::new_raw(p, q))
        .collect()
}

pub(crate) fn positive_terms<T: Int>(terms: &[T], what: &str) -> Result<()> {
    if terms.is_empty() {
        return Err(Error::InvalidPeriod(format!("{what} is empty")));
    }
    if let Some(bad) = terms.iter().find(|t| *t < &int::<T>(1)) {
        return Err(Error::InvalidPeriod(format!("{what} has nonpositive entry {bad}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cf(v: &[i64]) -> ContinuedFraction<i64> {
        ContinuedFraction::from_slice(v).unwrap()
    }

    #[test]
    fn eval_fixtures() {
        assert_eq!(cf_eval(&cf(&[1, 4, 1, 7])), Ratio::new(47, 39));
        assert_eq!(cf_eval(&cf(&[5])), Ratio::from_integer(5));
        assert_eq!(cf_eval(&cf(&[2, 1, 1])), Ratio::new(5, 2));
    }

    #[test]
    fn expand_fixtures() {
        let x = Ratio::new(47i64, 39);
        assert_eq!(cf_expand(&x, Parity::Even).terms(), &[1, 4, 1, 7]);
        assert_eq!(cf_expand(&x, Parity::Odd).terms(), &[1, 4, 1, 6, 1]);
        let five = Ratio::from_integer(5i64);
        assert_eq!(cf_expand(&five, Parity::Odd).terms(), &[5]);
        assert_eq!(cf_expand(&five, Parity::Even).terms(), &[4, 1]);
    }

    #[test]
    fn negative_rationals_use_floor() {
        let x = Ratio::new(-7i64, 3);
        let e = cf_expand(&x, Parity::Odd);
        assert_eq!(e.terms(), &[-3, 1, 2]);
        assert_eq!(e.eval(), x);
        assert_eq!(cf_expand(&Ratio::from_integer(-2i64), Parity::Even).terms(), &[-3, 1]);
    }

    #[test]
    fn convergent_fixtures() {
        let c: Vec<_> = convergents(&cf(&[2, 1, 1]));
        assert_eq!(c, vec![Ratio::new(2, 1), Ratio::new(3, 1), Ratio::new(5, 2)]);
        assert_eq!(convergents(&cf(&[5])), vec![Ratio::new(5, 1)]);
        assert_eq!(
            convergents(&cf(&[1, 4, 1, 7])),
            vec![Ratio::new(1, 1), Ratio::new(5, 4), Ratio::new(6, 5), Ratio::new(47, 39)]
        );
    }

    #[test]
    fn notation_round_trip() {
        let c = cf(&[1, 4, 1, 7]);
        assert_eq!(c.to_string(), "[1:4;1;7]");
        assert_eq!(cf(&[5]).to_string(), "[5]");
        assert_eq!("[1:4;1;6;1]".parse::<ContinuedFraction<i64>>().unwrap().terms(), &[1, 4, 1, 6, 1]);
        assert!("[1:0]".parse::<ContinuedFraction<i64>>().is_err());
        assert!(ContinuedFraction::<i64>::new(vec![]).is_err());
    }

    proptest! {
        #[test]
        fn expansions_round_trip(n in -1_000_000i64..=1_000_000, d in 1i64..=1_000_000) {
            let x = Ratio::new(n, d);
            let even = cf_expand(&x, Parity::Even);
            let odd = cf_expand(&x, Parity::Odd);
            prop_assert_eq!(even.len() % 2, 0);
            prop_assert_eq!(odd.len() % 2, 1);
            prop_assert_eq!(even.eval(), x);
            prop_assert_eq!(odd.eval(), x);
            let (long, short) = if even.len() > odd.len() { (&even, &odd) } else { (&odd, &even) };
            prop_assert_eq!(long.len(), short.len() + 1);
            let k = short.len() - 1;
            prop_assert_eq!(&long.terms()[..k], &short.terms()[..k]);
            prop_assert_eq!(long.terms()[k], short.terms()[k] - 1);
            prop_assert_eq!(long.terms()[k + 1], 1);
        }

        #[test]
        fn convergent_determinant(terms in proptest::collection::vec(1i64..50, 1..9), a0 in -20i64..20) {
            let mut t = terms;
            t[0] = a0;
            let c = cf(&t);
            let pairs = convergent_pairs(&c);
            let mut prev = (1i64, 0i64);
            for (k, (p, q)) in pairs.iter().enumerate() {
                let sign = if k % 2 == 0 { -1 } else { 1 };
                prop_assert_eq!(*p as i128 * prev.1 as i128 - prev.0 as i128 * *q as i128, sign);
                let prefix = ContinuedFraction::from_slice(&t[..=k]).unwrap();
                prop_assert_eq!(Ratio::new(*p, *q), prefix.eval());
                prev = (*p, *q);
            }
        }
    }
}
