use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::ContinuedFraction;
use crate::scalar::Int;

/// Least numerator over the cyclic windows of a period, with every window attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct ComplexityResult<T: Int> {
    #[serde(serialize_with = "crate::scalar::serialize_int")]
    pub value: T,
    pub argmin_windows: Vec<(usize, ContinuedFraction<T>)>,
}

/// Minimal complexity of a period `(a1, ..., an)`.
///
/// For even `n` the candidates are the `n` cyclic windows of length `n − 1`.
/// For odd `n` they are the `2n` cyclic windows of length `2n − 1` of the
/// doubled word. Windows are indexed by their zero-based start.
pub fn min_complexity<T: Int>(word: &[T]) -> Result<ComplexityResult<T>> {
    if word.is_empty() {
        return Err(Error::InvalidPeriod("empty period".into()));
    }
    if let Some(bad) = word.iter().find(|v| **v < T::one()) {
        return Err(Error::InvalidPeriod(format!("entry {bad} is not positive")));
    }
    let base: Vec<T> = if word.len() % 2 == 0 {
        word.to_vec()
    } else {
        word.iter().chain(word).cloned().collect()
    };
    let n = base.len();
    let mut best: Option<T> = None;
    let mut windows = Vec::new();
    for start in 0..n {
        let terms: Vec<T> = (0..n - 1).map(|i| base[(start + i) % n].clone()).collect();
        let cf = ContinuedFraction::new(terms)?;
        let (num, _) = cf.eval_parts();
        match &best {
            Some(b) if &num > b => continue,
            Some(b) if &num == b => {}
            _ => {
                best = Some(num);
                windows.clear();
            }
        }
        windows.push((start, cf));
    }
    Ok(ComplexityResult { value: best.expect("at least one window"), argmin_windows: windows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn starts(r: &ComplexityResult<i64>) -> Vec<usize> {
        r.argmin_windows.iter().map(|w| w.0).collect()
    }

    #[test]
    fn two_element_rule() {
        for a in 1i64..8 {
            for b in a + 1..12 {
                assert_eq!(min_complexity(&[a, b]).unwrap().value, a);
            }
        }
    }

    #[test]
    fn six_element_counterexample() {
        let r = min_complexity(&[1i64, 4, 5, 4, 1, 4]).unwrap();
        assert_eq!(r.value, 135);
        assert_eq!(r.argmin_windows.len(), 1);
        assert_eq!(r.argmin_windows[0].1.terms(), &[1, 4, 5, 4, 1]);
        let skip_max = ContinuedFraction::new(vec![4i64, 1, 4, 1, 4]).unwrap();
        assert_eq!(skip_max.eval_parts().0, 140);
    }

    #[test]
    fn three_element_rule() {
        let r = min_complexity(&[1i64, 2, 3]).unwrap();
        assert_eq!(starts(&r), vec![0, 3]);
        assert_eq!(r.argmin_windows[0].1.terms(), &[1, 2, 3, 1, 2]);
        assert_eq!(r.value, ContinuedFraction::new(vec![1i64, 2, 3, 1, 2]).unwrap().eval_parts().0);
    }

    #[test]
    fn rejects_bad_words() {
        assert!(min_complexity::<i64>(&[]).is_err());
        assert!(min_complexity(&[1i64, 0]).is_err());
    }
}
