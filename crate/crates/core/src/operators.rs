//! Exact 2×2 integer matrices, hyperbolicity, classification and eigenlines.
//!
//! Entries are row-major. The letters `a, b, c, d` used throughout the crate
//! name the display `[[a,c][b,d]]`, i.e. rows `(a c)` and `(b d)`, so
//! `a = m11`, `c = m12`, `b = m21`, `d = m22`.

use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use serde::ser::SerializeSeq;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::LatticePoint;
use crate::numeric::QuadraticSurd;
use crate::scalar::{ext_gcd, int, Int, IntRef};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix2<T> {
    pub m11: T,
    pub m12: T,
    pub m21: T,
    pub m22: T,
}

impl<T: Int> IntMatrix2<T> {
    pub fn new(m11: T, m12: T, m21: T, m22: T) -> Self {
        Self { m11, m12, m21, m22 }
    }

    pub fn from_i64(rows: [[i64; 2]; 2]) -> Self {
        Self::new(int(rows[0][0]), int(rows[0][1]), int(rows[1][0]), int(rows[1][1]))
    }

    /// Build from the letters of `[[a,c][b,d]]`.
    pub fn from_letters(a: T, b: T, c: T, d: T) -> Self {
        Self::new(a, c, b, d)
    }

    pub fn identity() -> Self {
        Self::new(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn scalar(s: T) -> Self {
        Self::new(s.clone(), T::zero(), T::zero(), s)
    }

    pub fn a(&self) -> &T {
        &self.m11
    }
    pub fn b(&self) -> &T {
        &self.m21
    }
    pub fn c(&self) -> &T {
        &self.m12
    }
    pub fn d(&self) -> &T {
        &self.m22
    }

    pub fn det(&self) -> T {
        self.m11.clone() * self.m22.clone() - self.m12.clone() * self.m21.clone()
    }

    pub fn trace(&self) -> T {
        self.m11.clone() + self.m22.clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    pub fn multiply(&self, o: &Self) -> Self {
        Self::new(
            self.m11.clone() * o.m11.clone() + self.m12.clone() * o.m21.clone(),
            self.m11.clone() * o.m12.clone() + self.m12.clone() * o.m22.clone(),
            self.m21.clone() * o.m11.clone() + self.m22.clone() * o.m21.clone(),
            self.m21.clone() * o.m12.clone() + self.m22.clone() * o.m22.clone(),
        )
    }

    pub fn inverse(&self) -> Result<Self> {
        let det = self.det();
        if !det.abs().is_one() {
            return Err(Error::NotUnimodular(det.to_string()));
        }
        // det is ±1, so dividing by it is multiplying by it
        Ok(Self::new(
            self.m22.clone() * det.clone(),
            -self.m12.clone() * det.clone(),
            -self.m21.clone() * det.clone(),
            self.m11.clone() * det,
        ))
    }

    /// `T⁻¹ · self · T`.
    pub fn conjugate(&self, t: &Self) -> Result<Self> {
        Ok(t.inverse()?.multiply(self).multiply(t))
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.m11.clone(), self.m21.clone(), self.m12.clone(), self.m22.clone())
    }

    pub fn apply(&self, v: &LatticePoint<T>) -> LatticePoint<T> {
        LatticePoint::new(
            self.m11.clone() * v.x.clone() + self.m12.clone() * v.y.clone(),
            self.m21.clone() * v.x.clone() + self.m22.clone() * v.y.clone(),
        )
    }

    pub fn map<U: Int>(&self, f: impl Fn(&T) -> U) -> IntMatrix2<U> {
        IntMatrix2::new(f(&self.m11), f(&self.m12), f(&self.m21), f(&self.m22))
    }

    /// Matrix with columns `u` and `v`.
    pub fn from_columns(u: &LatticePoint<T>, v: &LatticePoint<T>) -> Self {
        Self::new(u.x.clone(), v.x.clone(), u.y.clone(), v.y.clone())
    }

    pub fn max_abs_entry(&self) -> T {
        [&self.m11, &self.m12, &self.m21, &self.m22]
            .into_iter()
            .map(|x| x.abs())
            .max()
            .expect("four entries")
    }

    fn require_sl2(&self) -> Result<()> {
        let det = self.det();
        if det.is_one() {
            Ok(())
        } else {
            Err(Error::NotUnimodular(det.to_string()))
        }
    }
}

impl<T: Int> Mul for IntMatrix2<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.multiply(&o)
    }
}

impl<T: Int> Mul for &IntMatrix2<T> {
    type Output = IntMatrix2<T>;
    fn mul(self, o: Self) -> IntMatrix2<T> {
        self.multiply(o)
    }
}

impl<T: Int> Neg for IntMatrix2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.m11, -self.m12, -self.m21, -self.m22)
    }
}

impl<T: fmt::Display> fmt::Display for IntMatrix2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}; {} {}", self.m11, self.m12, self.m21, self.m22)
    }
}

/// Serialized as the row list `[[m11, m12], [m21, m22]]`.
impl<T: Int> Serialize for IntMatrix2<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&[IntRef(&self.m11), IntRef(&self.m12)])?;
        seq.serialize_element(&[IntRef(&self.m21), IntRef(&self.m22)])?;
        seq.end()
    }
}

/// Parse `"a c; b d"` or the JSON row list `[[a,c],[b,d]]`.
impl<T: Int> FromStr for IntMatrix2<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::OutOfRange(format!("cannot parse matrix {s:?}"));
        let s = s.trim();
        let tokens: Vec<&str> = if s.starts_with('[') {
            let inner = s.strip_prefix("[[").and_then(|r| r.strip_suffix("]]")).ok_or_else(bad)?;
            let rows: Vec<&str> = inner.split("],").collect();
            if rows.len() != 2 {
                return Err(bad());
            }
            rows.iter()
                .flat_map(|r| r.trim().trim_start_matches('[').split(','))
                .map(str::trim)
                .collect()
        } else {
            let rows: Vec<&str> = s.split(';').collect();
            if rows.len() != 2 || rows.iter().any(|r| r.split_whitespace().count() != 2) {
                return Err(bad());
            }
            rows.iter().flat_map(|r| r.split_whitespace()).collect()
        };
        if tokens.len() != 4 {
            return Err(bad());
        }
        let v: Vec<T> = tokens
            .iter()
            .map(|t| t.parse::<T>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        Ok(Self::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()))
    }
}

/// Real distinct eigenvalues, i.e. `trace² > 4`.
pub fn is_hyperbolic<T: Int>(a: &IntMatrix2<T>) -> bool {
    let t = a.trace();
    t.clone() * t > int(4)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "tag", rename_all = "snake_case", bound = "")]
pub enum OperatorClass<T: Int> {
    Hyperbolic,
    EllipticTrace0,
    EllipticTrace1,
    EllipticTraceMinus1,
    /// Conjugate to `sign · [[1, n][0, 1]]`.
    Parabolic {
        #[serde(serialize_with = "crate::scalar::serialize_int")]
        n: T,
        sign: i8,
    },
}

/// Conjugacy type of a determinant-one operator, read off its trace.
pub fn classify<T: Int>(a: &IntMatrix2<T>) -> Result<OperatorClass<T>> {
    let det = a.det();
    if !det.abs().is_one() {
        return Err(Error::NotUnimodular(det.to_string()));
    }
    a.require_sl2()?;
    let t = a.trace();
    Ok(match t.to_i64() {
        Some(0) => OperatorClass::EllipticTrace0,
        Some(1) => OperatorClass::EllipticTrace1,
        Some(-1) => OperatorClass::EllipticTraceMinus1,
        Some(2) | Some(-2) => {
            let (n, sign, _) = parabolic_normal_form(a)?;
            OperatorClass::Parabolic { n, sign }
        }
        _ => OperatorClass::Hyperbolic,
    })
}

/// For a trace `±2` operator, returns `(n, sign, T)` with `T⁻¹AT = sign·[[1,n][0,1]]` and `det T = 1`.
pub fn parabolic_normal_form<T: Int>(a: &IntMatrix2<T>) -> Result<(T, i8, IntMatrix2<T>)> {
    a.require_sl2()?;
    let t = a.trace();
    let sign: i8 = if t == int(2) {
        1
    } else if t == int(-2) {
        -1
    } else {
        return Err(Error::OutOfRange(format!("trace {t} is not ±2")));
    };
    let s: T = int(sign as i64);
    let n11 = a.m11.clone() - s.clone();
    let n12 = a.m12.clone();
    let n21 = a.m21.clone();
    let n22 = a.m22.clone() - s.clone();
    if n11.is_zero() && n12.is_zero() && n21.is_zero() && n22.is_zero() {
        return Ok((T::zero(), sign, IntMatrix2::identity()));
    }
    // a nonzero row r of the rank-one part is orthogonal to the kernel
    let v = if !n11.is_zero() || !n12.is_zero() {
        LatticePoint::new(-n12, n11)
    } else {
        LatticePoint::new(-n22, n21)
    }
    .primitive();
    let (_, x, y) = ext_gcd(&v.x, &v.y);
    let w = LatticePoint::new(-y, x);
    let basis = IntMatrix2::from_columns(&v, &w);
    let nilpotent = IntMatrix2::new(
        a.m11.clone() - s.clone(),
        a.m12.clone(),
        a.m21.clone(),
        a.m22.clone() - s.clone(),
    );
    let m = nilpotent.conjugate(&basis)?.m12;
    Ok((s * m, sign, basis))
}

/// Exact eigenlines `y = s·x` and eigenvalues of a hyperbolic operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenData<T: Int> {
    pub slope_plus: QuadraticSurd<T>,
    pub slope_minus: QuadraticSurd<T>,
    pub eigenvalue_plus: QuadraticSurd<T>,
    pub eigenvalue_minus: QuadraticSurd<T>,
}

/// `slope_± = (d − a ± √Δ) / 2c` and `eigenvalue_± = (τ ± √Δ) / 2` with `Δ = τ² − 4`.
///
/// The vector `(1, slope_±)` is an eigenvector for `eigenvalue_±`.
pub fn eigen_data<T: Int>(a: &IntMatrix2<T>) -> Result<EigenData<T>> {
    a.require_sl2()?;
    if !is_hyperbolic(a) {
        return Err(Error::NotHyperbolic(a.trace().to_string()));
    }
    let tau = a.trace();
    let disc = tau.clone() * tau.clone() - int(4);
    // c = 0 forces a = d = ±1, which is not hyperbolic
    let two_c = int::<T>(2) * a.c().clone();
    let diff = a.d().clone() - a.a().clone();
    let surd = |p: T, q: T, r: T| QuadraticSurd::new(p, q, disc.clone(), r);
    Ok(EigenData {
        slope_plus: surd(diff.clone(), T::one(), two_c.clone())?,
        slope_minus: surd(diff, -T::one(), two_c)?,
        eigenvalue_plus: surd(tau.clone(), T::one(), int(2))?,
        eigenvalue_minus: surd(tau, -T::one(), int(2))?,
    })
}
