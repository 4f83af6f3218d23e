use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};


use super::cf::{convergent_pairs, ContinuedFraction, Rational};
use crate::error::{Error, Result};
use crate::scalar::{int, Int};

/// Exact real `(p + q·√d) / r`.
///
/// Stored in canonical form: `r > 0`, `gcd(p, q, r) = 1`, and `d` is never a
/// perfect square while `q != 0` (rational values carry `q = d = 0`), so
/// structural equality is value equality for a fixed radicand.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticSurd<T> {
    p: T,
    q: T,
    d: T,
    r: T,
}

impl<T: Int> QuadraticSurd<T> {
    pub fn new(p: T, q: T, d: T, r: T) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::OutOfRange("surd denominator is zero".into()));
        }
        if d.is_negative() {
            return Err(Error::OutOfRange("negative radicand".into()));
        }
        let (mut p, mut q, mut d) = (p, q, d);
        if q.is_zero() || d.is_zero() {
            q = T::zero();
            d = T::zero();
        } else {
            let s = d.sqrt();
            if s.clone() * s.clone() == d {
                p = p + q * s;
                q = T::zero();
                d = T::zero();
            }
        }
        Ok(Self::canonical(p, q, d, r))
    }

    fn canonical(mut p: T, mut q: T, d: T, mut r: T) -> Self {
        if r.is_negative() {
            p = -p;
            q = -q;
            r = -r;
        }
        let g = p.gcd(&q).gcd(&r);
        if !g.is_one() && !g.is_zero() {
            p = p / g.clone();
            q = q / g.clone();
            r = r / g;
        }
        Self { p, q, d, r }
    }

    pub fn from_integer(n: T) -> Self {
        Self { p: n, q: T::zero(), d: T::zero(), r: T::one() }
    }

    pub fn from_rational(x: &Rational<T>) -> Self {
        Self { p: x.numer().clone(), q: T::zero(), d: T::zero(), r: x.denom().clone() }
    }

    pub fn p(&self) -> &T {
        &self.p
    }
    pub fn q(&self) -> &T {
        &self.q
    }
    pub fn radicand(&self) -> &T {
        &self.d
    }
    pub fn r(&self) -> &T {
        &self.r
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    /// Galois conjugate `(p - q·√d) / r`.
    pub fn conj(&self) -> Self {
        Self { p: self.p.clone(), q: -self.q.clone(), d: self.d.clone(), r: self.r.clone() }
    }

    /// Sign of the value.
    pub fn signum(&self) -> Ordering {
        sign_of(&self.p, &self.q, &self.d)
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> T {
        let whole = self.p.clone() + floor_q_sqrt_d(&self.q, &self.d);
        whole.div_floor(&self.r)
    }

    pub fn to_f64(&self) -> f64 {
        let root = self.d.to_f64().unwrap_or(f64::INFINITY).sqrt();
        (self.p.to_f64().unwrap_or(f64::NAN) + self.q.to_f64().unwrap_or(f64::NAN) * root)
            / self.r.to_f64().unwrap_or(f64::NAN)
    }

    /// Primitive integer coefficients `(A, B, C)`, `A > 0`, of the minimal polynomial.
    ///
    /// Rational values return the linear polynomial as `(0, r, -p)`.
    pub fn minimal_polynomial(&self) -> (T, T, T) {
        if self.is_rational() {
            return (T::zero(), self.r.clone(), -self.p.clone());
        }
        let two = int::<T>(2);
        let a = self.r.clone() * self.r.clone();
        let b = -(two * self.p.clone() * self.r.clone());
        let c = self.p.clone() * self.p.clone() - self.q.clone() * self.q.clone() * self.d.clone();
        let g = a.gcd(&b).gcd(&c);
        (a / g.clone(), b / g.clone(), c / g)
    }

    fn shared_radicand(&self, other: &Self) -> Option<T> {
        match (self.is_rational(), other.is_rational()) {
            (true, true) => Some(T::zero()),
            (true, false) => Some(other.d.clone()),
            (false, true) => Some(self.d.clone()),
            (false, false) if self.d == other.d => Some(self.d.clone()),
            _ => None,
        }
    }

    pub fn checked_add(&self, o: &Self) -> Option<Self> {
        let d = self.shared_radicand(o)?;
        let p = self.p.clone() * o.r.clone() + o.p.clone() * self.r.clone();
        let q = self.q.clone() * o.r.clone() + o.q.clone() * self.r.clone();
        Self::new(p, q, d, self.r.clone() * o.r.clone()).ok()
    }

    pub fn checked_mul(&self, o: &Self) -> Option<Self> {
        let d = self.shared_radicand(o)?;
        let p = self.p.clone() * o.p.clone() + self.q.clone() * o.q.clone() * d.clone();
        let q = self.p.clone() * o.q.clone() + self.q.clone() * o.p.clone();
        Self::new(p, q, d, self.r.clone() * o.r.clone()).ok()
    }

    pub fn checked_div(&self, o: &Self) -> Option<Self> {
        let d = self.shared_radicand(o)?;
        // (p1 + q1√d) r2 (p2 - q2√d) / (r1 (p2² - q2² d))
        let norm = o.p.clone() * o.p.clone() - o.q.clone() * o.q.clone() * d.clone();
        if norm.is_zero() {
            return None;
        }
        let p = (self.p.clone() * o.p.clone() - self.q.clone() * o.q.clone() * d.clone()) * o.r.clone();
        let q = (self.q.clone() * o.p.clone() - self.p.clone() * o.q.clone()) * o.r.clone();
        Self::new(p, q, d, self.r.clone() * norm).ok()
    }
}

/// `floor(q·√d)` for non-square `d` (or `q = 0`).
fn floor_q_sqrt_d<T: Int>(q: &T, d: &T) -> T {
    if q.is_zero() {
        return T::zero();
    }
    let s = (q.clone() * q.clone() * d.clone()).sqrt();
    if q.is_positive() {
        s
    } else {
        -s - T::one()
    }
}

fn sign_of<T: Int>(p: &T, q: &T, d: &T) -> Ordering {
    let zero = T::zero();
    let sp = p.cmp(&zero);
    let sq = if d.is_zero() { Ordering::Equal } else { q.cmp(&zero) };
    match (sp, sq) {
        (s, Ordering::Equal) => s,
        (Ordering::Equal, s) => s,
        (a, b) if a == b => a,
        _ => {
            // Opposite signs: the larger magnitude wins.
            let pp = p.clone() * p.clone();
            let qqd = q.clone() * q.clone() * d.clone();
            if pp > qqd {
                sp
            } else {
                sq
            }
        }
    }
}

impl<T: Int> PartialOrd for QuadraticSurd<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.checked_sub(other)?.signum())
    }
}

impl<T: Int> QuadraticSurd<T> {
    pub fn checked_sub(&self, o: &Self) -> Option<Self> {
        self.checked_add(&-o.clone())
    }
}

impl<T: Int> Neg for QuadraticSurd<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { p: -self.p, q: -self.q, d: self.d, r: self.r }
    }
}

macro_rules! surd_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<T: Int> $tr for QuadraticSurd<T> {
            type Output = Self;
            /// Panics if both operands are irrational with different radicands,
            /// or on division by zero.
            fn $method(self, rhs: Self) -> Self {
                self.$checked(&rhs)
                    .expect(concat!("surd ", stringify!($method), ": incompatible operands"))
            }
        }
    };
}
surd_binop!(Add, add, checked_add);
surd_binop!(Sub, sub, checked_sub);
surd_binop!(Mul, mul, checked_mul);
surd_binop!(Div, div, checked_div);

impl<T: Int> fmt::Display for QuadraticSurd<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = if self.q.is_zero() {
            self.p.to_string()
        } else {
            let sign = if self.q.is_negative() { "-" } else { "+" };
            let mag = self.q.abs();
            let root = if mag.is_one() { format!("√{}", self.d) } else { format!("{mag}√{}", self.d) };
            if self.p.is_zero() {
                if self.q.is_negative() {
                    format!("-{root}")
                } else {
                    root
                }
            } else {
                format!("{} {sign} {root}", self.p)
            }
        };
        if self.r.is_one() {
            write!(f, "{num}")
        } else if self.q.is_zero() || self.p.is_zero() {
            write!(f, "{num}/{}", self.r)
        } else {
            write!(f, "({num})/{}", self.r)
        }
    }
}

/// Eventually periodic ordinary continued fraction.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
#[serde(bound = "")]
pub struct PeriodicCFExpansion<T: Int> {
    #[serde(serialize_with = "crate::scalar::serialize_int_seq")]
    pub preperiod: Vec<T>,
    #[serde(serialize_with = "crate::scalar::serialize_int_seq")]
    pub period: Vec<T>,
}

impl<T: Int> PeriodicCFExpansion<T> {
    /// Integer coefficients `(A, B, C)` of `A x² + B x + C = 0` obtained by
    /// solving the expansion as a fixed-point equation.
    pub fn fixed_point_polynomial(&self) -> (T, T, T) {
        let period = ContinuedFraction::from_slice(&self.period).expect("period terms positive");
        let pairs = convergent_pairs(&period);
        let k = pairs.len();
        let (pk, qk) = pairs[k - 1].clone();
        let (pk1, qk1) = if k >= 2 { pairs[k - 2].clone() } else { (T::one(), T::zero()) };
        // y = [period; y]  =>  qk y² + (qk1 - pk) y - pk1 = 0
        let ya = qk;
        let yb = qk1 - pk;
        let yc = -pk1;
        if self.preperiod.is_empty() {
            return (ya, yb, yc);
        }
        let pre = ContinuedFraction::from_slice(&self.preperiod).expect("preperiod valid");
        let pp = convergent_pairs(&pre);
        let m = pp.len();
        let (pm, qm) = pp[m - 1].clone();
        let (pm1, qm1) = if m >= 2 { pp[m - 2].clone() } else { (T::one(), T::zero()) };
        // x = (pm y + pm1) / (qm y + qm1)  =>  y = (pm1 - qm1 x) / (qm x - pm)
        // Substitute y = N/D with N = pm1 - qm1 x, D = qm x - pm and clear D².
        let n = (pm1.clone(), -qm1.clone()); // constant, linear
        let dd = (-pm.clone(), qm.clone());
        let sq = |u: &(T, T)| (u.0.clone() * u.0.clone(), int::<T>(2) * u.0.clone() * u.1.clone(), u.1.clone() * u.1.clone());
        let prod = |u: &(T, T), v: &(T, T)| {
            (
                u.0.clone() * v.0.clone(),
                u.0.clone() * v.1.clone() + u.1.clone() * v.0.clone(),
                u.1.clone() * v.1.clone(),
            )
        };
        let nn = sq(&n);
        let nd = prod(&n, &dd);
        let ddd = sq(&dd);
        let c0 = ya.clone() * nn.0 + yb.clone() * nd.0 + yc.clone() * ddd.0;
        let c1 = ya.clone() * nn.1 + yb.clone() * nd.1 + yc.clone() * ddd.1;
        let c2 = ya * nn.2 + yb * nd.2 + yc * ddd.2;
        (c2, c1, c0)
    }
}

/// Periodic continued fraction of a quadratic irrational via the integer
/// `(P, Q)` recurrence on `(P + √E) / Q`.
pub fn surd_cf_expand<T: Int>(x: &QuadraticSurd<T>) -> Result<PeriodicCFExpansion<T>> {
    if x.is_rational() {
        return Err(Error::NotQuadraticIrrational);
    }
    let e0 = x.q.clone() * x.q.clone() * x.d.clone();
    let (mut p, mut q) = if x.q.is_positive() {
        (x.p.clone(), x.r.clone())
    } else {
        (-x.p.clone(), -x.r.clone())
    };
    let mut e = e0;
    if !(e.clone() - p.clone() * p.clone()).is_multiple_of(&q) {
        let qa = q.abs();
        p = p * qa.clone();
        e = e * q.clone() * q.clone();
        q = q * qa;
    }
    let s = e.sqrt();
    let mut seen: HashMap<(T, T), usize> = HashMap::new();
    let mut terms = Vec::new();
    loop {
        if let Some(&start) = seen.get(&(p.clone(), q.clone())) {
            let period = terms.split_off(start);
            return Ok(PeriodicCFExpansion { preperiod: terms, period });
        }
        seen.insert((p.clone(), q.clone()), terms.len());
        let a = if q.is_positive() {
            (p.clone() + s.clone()).div_floor(&q)
        } else {
            (-p.clone() - s.clone() - T::one()).div_floor(&-q.clone())
        };
        let p_next = a.clone() * q.clone() - p;
        let q_next = (e.clone() - p_next.clone() * p_next.clone()) / q;
        terms.push(a);
        p = p_next;
        q = q_next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use rand::{Rng, SeedableRng};

    fn s(p: i64, q: i64, d: i64, r: i64) -> QuadraticSurd<i64> {
        QuadraticSurd::new(p, q, d, r).unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(s(2, 2, 5, 4), s(1, 1, 5, 2));
        assert_eq!(s(-1, -1, 5, -2), s(1, 1, 5, 2));
        let folded = s(1, 2, 9, 7);
        assert!(folded.is_rational());
        assert_eq!(folded, QuadraticSurd::from_integer(1));
        assert!(QuadraticSurd::new(1i64, 1, 5, 0).is_err());
    }

    #[test]
    fn sign_and_floor() {
        let phi = s(1, 1, 5, 2);
        assert_eq!(phi.floor(), 1);
        assert_eq!(phi.conj().floor(), -1);
        assert_eq!(s(3, 1, 5, 2).floor(), 2);
        assert_eq!(s(-3, -1, 5, 2).floor(), -3);
        assert_eq!(s(3, -2, 2, 1).signum(), Ordering::Greater); // 3 - 2.83
        assert_eq!(s(2, -2, 2, 1).signum(), Ordering::Less);
        assert!(phi > s(3, 0, 0, 2));
        assert!(phi < s(13, 0, 0, 8));
    }

    #[test]
    fn arithmetic_is_exact() {
        let phi = s(1, 1, 5, 2);
        // φ² = φ + 1
        assert_eq!(phi.clone() * phi.clone(), phi.clone() + QuadraticSurd::from_integer(1));
        assert_eq!(QuadraticSurd::from_integer(1) / phi.clone(), phi.clone() - QuadraticSurd::from_integer(1));
        assert_eq!(phi.checked_add(&s(0, 1, 3, 1)), None);
    }

    #[test]
    fn cf_fixtures() {
        let golden = surd_cf_expand(&s(1, 1, 5, 2)).unwrap();
        assert!(golden.preperiod.is_empty());
        assert_eq!(golden.period, vec![1]);
        let e = surd_cf_expand(&s(3, 1, 5, 2)).unwrap();
        assert_eq!(e.preperiod, vec![2]);
        assert_eq!(e.period, vec![1]);
        let r3 = surd_cf_expand(&s(0, 1, 3, 1)).unwrap();
        assert_eq!(r3.preperiod, vec![1]);
        assert_eq!(r3.period, vec![1, 2]);
        assert_eq!(surd_cf_expand(&s(1, 0, 0, 2)), Err(Error::NotQuadraticIrrational));
    }

    #[test]
    fn negative_surd_expansion() {
        // -√2 = [-2; 1, 1, 2, 2, ...]
        let e = surd_cf_expand(&s(0, -1, 2, 1)).unwrap();
        assert_eq!(e.preperiod, vec![-2, 1, 1]);
        assert_eq!(e.period, vec![2]);
    }

    #[test]
    fn fixed_point_recovers_minimal_polynomial() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 1000 {
            let p: i64 = rng.gen_range(-50..=50);
            let q: i64 = rng.gen_range(-50..=50);
            let r: i64 = rng.gen_range(-50..=50);
            let d: i64 = rng.gen_range(2..=1000);
            let big = |v: i64| num_bigint::BigInt::from(v);
            let Ok(x) = QuadraticSurd::new(big(p), big(q), big(d), big(r)) else { continue };
            if x.is_rational() {
                continue;
            }
            let exp = surd_cf_expand(&x).unwrap();
            assert!(exp.period.iter().all(|t| t >= &big(1)));
            let (a, b, c) = exp.fixed_point_polynomial();
            let (ma, mb, mc) = x.minimal_polynomial();
            // proportional coefficient vectors
            assert!(!a.is_zero());
            assert_eq!(&a * &mb, &b * &ma, "{x}");
            assert_eq!(&a * &mc, &c * &ma, "{x}");
            checked += 1;
        }
    }
}
