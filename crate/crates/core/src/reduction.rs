//! Reduced operators, the reduction algorithm with conjugator tracking, and
//! the correspondence between reduced operators and LLS periods.

use std::fmt;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numeric::{cf_expand, ContinuedFraction, Parity};
use crate::operators::IntMatrix2;
use crate::scalar::{ext_gcd, format_tuple, int, Int};

/// One period of the doubly infinite LLS sequence of a sail.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LlsPeriod<T> {
    word: Vec<T>,
}

impl<T: Int> LlsPeriod<T> {
    pub fn new(word: Vec<T>) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::InvalidPeriod("empty period".into()));
        }
        if let Some(bad) = word.iter().find(|v| **v < T::one()) {
            return Err(Error::InvalidPeriod(format!("entry {bad} is not positive")));
        }
        Ok(Self { word })
    }

    pub fn from_i64(word: &[i64]) -> Result<Self> {
        Self::new(word.iter().map(|&v| int(v)).collect())
    }

    pub fn word(&self) -> &[T] {
        &self.word
    }

    pub fn into_word(self) -> Vec<T> {
        self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Same cyclic word up to rotation and reversal.
    pub fn is_equivalent(&self, other: &Self) -> bool {
        crate::analysis::period_equivalent(&self.word, &other.word)
    }
}

impl<T: fmt::Display> fmt::Display for LlsPeriod<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_tuple(&self.word))
    }
}

impl<T: Int> Serialize for LlsPeriod<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::scalar::serialize_int_seq(&self.word, s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum StepLabel {
    S1,
    S2,
    S3_1,
    S3_2_1,
    S3_2_2,
    S3_2_3,
    S4,
}

impl fmt::Display for StepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            StepLabel::S1 => "S1",
            StepLabel::S2 => "S2",
            StepLabel::S3_1 => "S3_1",
            StepLabel::S3_2_1 => "S3_2_1",
            StepLabel::S3_2_2 => "S3_2_2",
            StepLabel::S3_2_3 => "S3_2_3",
            StepLabel::S4 => "S4",
        };
        f.write_str(s)
    }
}

/// One step: `state = X⁻¹ · previous · X`, negated when `sign_flip` is set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct ReductionStep<T: Int> {
    pub label: StepLabel,
    pub conjugator: Option<IntMatrix2<T>>,
    pub sign_flip: bool,
    pub state: IntMatrix2<T>,
}

/// Full record of a reduction: `sign · T⁻¹ · input · T = final_state`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct ReductionTrace<T: Int> {
    pub input: IntMatrix2<T>,
    pub steps: Vec<ReductionStep<T>>,
    #[serde(rename = "T")]
    pub t: IntMatrix2<T>,
    pub sign: i8,
    pub final_state: IntMatrix2<T>,
}

impl<T: Int> ReductionTrace<T> {
    /// Recompute `sign · T⁻¹ · input · T` and compare with the final state.
    pub fn verify(&self) -> bool {
        match self.input.conjugate(&self.t) {
            Ok(m) => {
                let m = if self.sign < 0 { -m } else { m };
                m == self.final_state
            }
            Err(_) => false,
        }
    }
}

/// `d > b >= a >= 0` in the letters of `[[a,c][b,d]]`.
pub fn is_reduced<T: Int>(r: &IntMatrix2<T>) -> bool {
    let z = T::zero();
    r.d() > r.b() && r.b() >= r.a() && r.a() >= &z
}

fn check_reducible<T: Int>(a: &IntMatrix2<T>) -> Result<()> {
    let det = a.det();
    if !det.is_one() {
        return Err(Error::NotUnimodular(det.to_string()));
    }
    let tr = a.trace();
    if tr.abs() < int(3) {
        return Err(Error::NotHyperbolic(tr.to_string()));
    }
    Ok(())
}

/// The reduction loop. `record` sees each step's label, conjugator, sign flip and new state.
fn run<T: Int>(
    input: &IntMatrix2<T>,
    mut record: impl FnMut(StepLabel, Option<IntMatrix2<T>>, bool, &IntMatrix2<T>),
) -> Result<(IntMatrix2<T>, i8)> {
    check_reducible(input)?;
    let mut s = input.clone();
    let mut sign: i8 = 1;
    if is_reduced(&s) {
        record(StepLabel::S3_2_1, None, false, &s);
        return Ok((s, sign));
    }
    loop {
        if s.m21.is_negative() {
            s = -s;
            sign = -sign;
            record(StepLabel::S1, None, true, &s);
        }
        let (a, c, b, d) = (s.m11.clone(), s.m12.clone(), s.m21.clone(), s.m22.clone());
        if b.is_zero() {
            return Err(Error::Internal(format!("zero lower-left entry in {s}")));
        }
        let k = a.div_floor(&b);
        if !k.is_zero() {
            let a2 = a.clone() - k.clone() * b.clone();
            let d2 = d.clone() + k.clone() * b.clone();
            let c2 = c + k.clone() * a - k.clone() * d2.clone();
            s = IntMatrix2::new(a2, c2, b, d2);
            record(StepLabel::S2, Some(IntMatrix2::new(T::one(), k, T::zero(), T::one())), false, &s);
        }
        let (a, c, b, d) = (s.m11.clone(), s.m12.clone(), s.m21.clone(), s.m22.clone());
        if b.is_one() {
            if !a.is_zero() || c != -T::one() {
                return Err(Error::Internal(format!("unexpected unit-complexity state {s}")));
            }
            if d.is_negative() {
                s = IntMatrix2::new(T::zero(), -T::one(), T::one(), -d);
                sign = -sign;
                let j = IntMatrix2::new(T::one(), T::zero(), T::zero(), -T::one());
                record(StepLabel::S3_1, Some(j), true, &s);
            } else {
                record(StepLabel::S3_1, None, false, &s);
            }
            return Ok((s, sign));
        }
        if d > b {
            record(StepLabel::S3_2_1, None, false, &s);
            return Ok((s, sign));
        }
        if d < -b.clone() {
            s = IntMatrix2::new(
                b.clone() - a.clone(),
                a + c - b.clone() - d.clone(),
                b.clone(),
                -b - d,
            );
            sign = -sign;
            let x = IntMatrix2::new(-T::one(), T::one(), T::zero(), T::one());
            record(StepLabel::S3_2_2, Some(x), true, &s);
            continue;
        }
        let before = b.clone();
        s = IntMatrix2::new(d, b, c, a);
        let after = s.m21.abs().max(s.m22.abs());
        if after >= before {
            return Err(Error::Internal(format!("reduction measure did not decrease at {s}")));
        }
        let w = IntMatrix2::new(T::zero(), -T::one(), -T::one(), T::zero());
        record(StepLabel::S3_2_3, Some(w), false, &s);
    }
}

/// Reduce with the complete step trace and accumulated conjugator.
pub fn reduce<T: Int>(a: &IntMatrix2<T>) -> Result<ReductionTrace<T>> {
    let mut steps = Vec::new();
    let mut t = IntMatrix2::identity();
    let (final_state, sign) = run(a, |label, conj, flip, state| {
        if let Some(x) = &conj {
            t = t.multiply(x);
        }
        steps.push(ReductionStep { label, conjugator: conj, sign_flip: flip, state: state.clone() });
    })?;
    steps.push(ReductionStep { label: StepLabel::S4, conjugator: None, sign_flip: false, state: final_state.clone() });
    let trace = ReductionTrace { input: a.clone(), steps, t, sign, final_state };
    debug_assert!(trace.verify());
    Ok(trace)
}

/// Final reduced state only.
pub fn reduce_fast<T: Int>(a: &IntMatrix2<T>) -> Result<IntMatrix2<T>> {
    run(a, |_, _, _, _| {}).map(|(s, _)| s)
}

/// Period of a reduced operator.
///
/// For `a = 0` the period is `(1, d − 2)`. Otherwise it is the odd expansion
/// of `b/a` followed by `⌊(d − 1)/b⌋`.
pub fn period_of_reduced<T: Int>(r: &IntMatrix2<T>) -> Result<LlsPeriod<T>> {
    if !is_reduced(r) {
        return Err(Error::NotReduced);
    }
    let det = r.det();
    if !det.is_one() {
        return Err(Error::NotUnimodular(det.to_string()));
    }
    if r.trace() < int(3) {
        return Err(Error::NotHyperbolic(r.trace().to_string()));
    }
    let (a, b, d) = (r.a(), r.b(), r.d());
    if a.is_zero() {
        return LlsPeriod::new(vec![T::one(), d.clone() - int(2)]);
    }
    let mut word = cf_expand(&Ratio::new(b.clone(), a.clone()), Parity::Odd).into_terms();
    word.push((d.clone() - T::one()).div_floor(b));
    LlsPeriod::new(word)
}

/// `(a, b, c, d)` with `b/a` the value of the prefix, `ad − bc = 1` and `0 < d <= b`.
fn base_letters<T: Int>(prefix: &[T]) -> Result<(T, T, T, T)> {
    if prefix.len() % 2 == 0 {
        return Err(Error::InvalidPeriod(format!("prefix {} has even length", format_tuple(prefix))));
    }
    if let Some(bad) = prefix.iter().find(|v| **v < T::one()) {
        return Err(Error::InvalidPeriod(format!("prefix entry {bad} is not positive")));
    }
    let (b, a) = ContinuedFraction::from_slice(prefix)?.eval_parts();
    let (_, x, _) = ext_gcd(&a, &b);
    let mut d = x.mod_floor(&b);
    if d.is_zero() {
        d = b.clone();
    }
    let c = (a.clone() * d.clone() - T::one()) / b.clone();
    Ok((a, b, c, d))
}

fn family<T: Int>(a: &T, b: &T, c: &T, d: &T, lambda: &T) -> IntMatrix2<T> {
    IntMatrix2::from_letters(
        a.clone(),
        b.clone(),
        c.clone() + lambda.clone() * a.clone(),
        d.clone() + lambda.clone() * b.clone(),
    )
}

/// Reduced operator `[[a, c+λa][b, d+λb]]` whose period is `prefix` followed by `λ`.
pub fn construct_from_period<T: Int>(prefix: &[T], lambda: &T) -> Result<IntMatrix2<T>> {
    if lambda < &T::one() {
        return Err(Error::OutOfRange(format!("lambda {lambda} must be at least 1")));
    }
    let (a, b, c, d) = base_letters(prefix)?;
    Ok(family(&a, &b, &c, &d, lambda))
}

/// `[[0, −1][1, 1+λ]]`, with period `(1, λ − 1)`.
pub fn construct_series_i<T: Int>(lambda: &T) -> Result<IntMatrix2<T>> {
    if lambda <= &int(2) {
        return Err(Error::OutOfRange(format!("lambda {lambda} must exceed 2")));
    }
    Ok(family(&T::zero(), &T::one(), &-T::one(), &T::one(), lambda))
}

/// The same families for negative `λ`, with the period they are expected to have.
///
/// `None` selects the `a = 0` series, period `(1, |λ| − 3)`, needing `|λ| >= 4`.
/// A prefix with `b/a` as its value gives the odd expansion of `b/(b − a)`
/// followed by `|λ| − 2`, needing `|λ| >= 3` and `b > a`.
pub fn construct_negative_lambda<T: Int>(
    prefix: Option<&[T]>,
    lambda: &T,
) -> Result<(IntMatrix2<T>, LlsPeriod<T>)> {
    if !lambda.is_negative() {
        return Err(Error::OutOfRange(format!("lambda {lambda} must be negative")));
    }
    let abs = lambda.abs();
    match prefix {
        None => {
            if abs < int(4) {
                return Err(Error::OutOfRange(format!("|lambda| = {abs} must be at least 4")));
            }
            let m = family(&T::zero(), &T::one(), &-T::one(), &T::one(), lambda);
            Ok((m, LlsPeriod::new(vec![T::one(), abs - int(3)])?))
        }
        Some(prefix) => {
            if abs < int(3) {
                return Err(Error::OutOfRange(format!("|lambda| = {abs} must be at least 3")));
            }
            let (a, b, c, d) = base_letters(prefix)?;
            if a == b {
                return Err(Error::OutOfRange("prefix (1) has no negative family".into()));
            }
            let m = family(&a, &b, &c, &d, lambda);
            let mut word = cf_expand(&Ratio::new(b.clone(), b - a), Parity::Odd).into_terms();
            word.push(abs - int(2));
            Ok((m, LlsPeriod::new(word)?))
        }
    }
}

/// One period of the LLS sequence of any sail of `a`.
pub fn lls_period<T: Int>(a: &IntMatrix2<T>) -> Result<LlsPeriod<T>> {
    period_of_reduced(&reduce_fast(a)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: [[i64; 2]; 2]) -> IntMatrix2<i64> {
        IntMatrix2::from_i64(rows)
    }

    fn p(w: &[i64]) -> LlsPeriod<i64> {
        LlsPeriod::from_i64(w).unwrap()
    }

    #[test]
    fn reduced_predicate() {
        assert!(is_reduced(&m([[1, 2], [1, 3]])));
        assert!(!is_reduced(&m([[7, 18], [5, 13]])));
        assert!(is_reduced(&m([[0, -1], [1, 4]])));
    }

    #[test]
    fn reduce_fixtures() {
        let t = reduce(&m([[0, 1], [-1, 4]])).unwrap();
        assert_eq!(t.final_state, m([[0, -1], [1, 4]]));
        assert_eq!(t.steps[0].label, StepLabel::S1);
        assert!(t.verify());

        let t = reduce(&m([[1, 2], [1, 3]])).unwrap();
        assert_eq!(t.final_state, m([[1, 2], [1, 3]]));
        assert_eq!(t.t, IntMatrix2::identity());

        let t = reduce(&m([[7, 18], [5, 13]])).unwrap();
        assert_eq!(t.final_state, m([[2, 7], [5, 18]]));
        assert_eq!(t.final_state.trace(), 20);
        assert!(t.verify());
        assert_eq!(period_of_reduced(&t.final_state).unwrap(), p(&[2, 1, 1, 3]));

        assert!(reduce(&m([[1, 1], [0, 1]])).is_err());
        assert!(reduce(&m([[2, 0], [0, 3]])).is_err());
    }

    #[test]
    fn every_step_kind_verifies() {
        let mut seen = std::collections::HashSet::new();
        for a in -12i64..=12 {
            for b in -12i64..=12 {
                for c in -12i64..=12 {
                    if a == 0 {
                        continue;
                    }
                    // d from ad - bc = 1
                    if (1 + b * c) % a != 0 {
                        continue;
                    }
                    let d = (1 + b * c) / a;
                    let mat = IntMatrix2::from_letters(a, b, c, d);
                    if mat.trace().abs() < 3 {
                        continue;
                    }
                    let t = reduce(&mat).unwrap();
                    assert!(t.verify(), "{mat}");
                    assert!(is_reduced(&t.final_state), "{mat}");
                    assert_eq!(t.t.det().abs(), 1);
                    seen.extend(t.steps.iter().map(|s| s.label));
                }
            }
        }
        assert_eq!(seen.len(), 7);
    }

    #[test]
    fn period_fixtures() {
        assert_eq!(period_of_reduced(&m([[0, -1], [1, 4]])).unwrap(), p(&[1, 2]));
        assert_eq!(period_of_reduced(&m([[2, 7], [5, 18]])).unwrap(), p(&[2, 1, 1, 3]));
        assert_eq!(period_of_reduced(&m([[1, 2], [1, 3]])).unwrap(), p(&[1, 2]));
        assert_eq!(period_of_reduced(&m([[7, 18], [5, 13]])), Err(Error::NotReduced));
        assert!(period_of_reduced(&m([[0, -1], [1, 2]])).is_err());
    }

    #[test]
    fn construct_fixtures() {
        assert_eq!(construct_from_period(&[2i64, 1, 1], &3).unwrap(), m([[2, 7], [5, 18]]));
        assert_eq!(construct_from_period(&[1i64], &1).unwrap(), m([[1, 1], [1, 2]]));
        assert!(construct_from_period(&[2i64, 1], &3).is_err());
        assert!(construct_from_period(&[2i64, 0, 1], &3).is_err());
        assert!(construct_from_period(&[2i64], &0).is_err());
        assert_eq!(construct_series_i(&3i64).unwrap(), m([[0, -1], [1, 4]]));
        assert_eq!(construct_series_i(&4i64).unwrap(), m([[0, -1], [1, 5]]));
        assert_eq!(period_of_reduced(&construct_series_i(&4i64).unwrap()).unwrap(), p(&[1, 3]));
        assert!(construct_series_i(&2i64).is_err());
    }

    #[test]
    fn negative_lambda_fixtures() {
        let (op, per) = construct_negative_lambda::<i64>(None, &-4).unwrap();
        assert_eq!(op, m([[0, -1], [1, -3]]));
        assert_eq!(per, p(&[1, 1]));
        let (op, per) = construct_negative_lambda(Some(&[2i64, 1, 1][..]), &-3).unwrap();
        assert_eq!(op, m([[2, -5], [5, -12]]));
        assert_eq!(per, p(&[1, 1, 2, 1]));
        assert!(construct_negative_lambda::<i64>(None, &-3).is_err());
        assert!(construct_negative_lambda(Some(&[2i64, 1, 1][..]), &-2).is_err());
        assert!(construct_negative_lambda(Some(&[1i64][..]), &-5).is_err());
        assert!(construct_negative_lambda::<i64>(None, &4).is_err());
    }

    #[test]
    fn lls_period_fixtures() {
        assert!(lls_period(&m([[7, 18], [5, 13]])).unwrap().is_equivalent(&p(&[2, 1, 1, 3])));
        assert!(lls_period(&m([[2, 1], [1, 1]])).unwrap().is_equivalent(&p(&[1, 1])));
        assert!(lls_period(&m([[0, 1], [-1, 10]])).unwrap().is_equivalent(&p(&[1, 8])));
    }

    #[test]
    fn trace_serializes() {
        let t = reduce(&m([[7, 18], [5, 13]])).unwrap();
        let json = serde_json::to_value(&t).unwrap();
        assert_eq!(json["final_state"], serde_json::json!([[2, 7], [5, 18]]));
        assert_eq!(json["steps"][0]["label"], "S2");
        assert_eq!(json["sign"], 1);
    }
}
