use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{format_tuple, Int};

/// Representative of a cyclic word under rotation and reversal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(bound = "")]
pub struct CanonicalPeriod<T: Int> {
    #[serde(serialize_with = "crate::scalar::serialize_int_seq")]
    pub word: Vec<T>,
    #[serde(serialize_with = "crate::scalar::serialize_int_seq")]
    pub minimal_word: Vec<T>,
}

impl<T: Int> std::fmt::Display for CanonicalPeriod<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_tuple(&self.word))
    }
}

/// Least `p` dividing `len` with `word[i] = word[i + p]` cyclically.
pub fn minimal_period_len<T: PartialEq>(word: &[T]) -> usize {
    let n = word.len();
    (1..=n)
        .filter(|p| n % p == 0)
        .find(|&p| (0..n).all(|i| word[i] == word[(i + p) % n]))
        .unwrap_or(n)
}

fn least_rotation<T: Ord + Clone>(word: &[T]) -> Vec<T> {
    let n = word.len();
    (0..n)
        .map(|k| word[k..].iter().chain(&word[..k]).cloned().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

/// Lexicographically least rotation of the word or of its reversal.
pub fn canonical_word<T: Ord + Clone>(word: &[T]) -> Vec<T> {
    let mut rev = word.to_vec();
    rev.reverse();
    least_rotation(word).min(least_rotation(&rev))
}

pub fn canonical_period<T: Int>(word: &[T]) -> Result<CanonicalPeriod<T>> {
    if word.is_empty() {
        return Err(Error::InvalidPeriod("empty period".into()));
    }
    if let Some(bad) = word.iter().find(|v| **v < T::one()) {
        return Err(Error::InvalidPeriod(format!("entry {bad} is not positive")));
    }
    let word = canonical_word(word);
    let p = minimal_period_len(&word);
    let minimal_word = word[..p].to_vec();
    Ok(CanonicalPeriod { word, minimal_word })
}

/// Equal canonical forms: one word is a rotation of the other or of its reversal.
pub fn period_equivalent<T: Ord + Clone>(p1: &[T], p2: &[T]) -> bool {
    p1.len() == p2.len() && canonical_word(p1) == canonical_word(p2)
}

/// Whether two words generate the same bi-infinite sequence up to shift and
/// reversal, allowing one to be a repetition of the other.
pub fn same_sequence<T: Ord + Clone>(p1: &[T], p2: &[T]) -> bool {
    let m1 = &p1[..minimal_period_len(p1)];
    let m2 = &p2[..minimal_period_len(p2)];
    period_equivalent(m1, m2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_fixtures() {
        let c = canonical_period(&[2i64, 1, 1, 3]).unwrap();
        assert_eq!(c.word, vec![1, 1, 2, 3]);
        let c = canonical_period(&[1i64, 1]).unwrap();
        assert_eq!((c.word, c.minimal_word), (vec![1, 1], vec![1]));
        assert_eq!(canonical_period(&[1i64, 2]).unwrap(), canonical_period(&[2i64, 1]).unwrap());
        assert!(canonical_period::<i64>(&[]).is_err());
        assert!(canonical_period(&[1i64, 0]).is_err());
        assert_eq!(canonical_period(&[1i64, 2, 1, 2]).unwrap().minimal_word, vec![1, 2]);
    }

    #[test]
    fn equivalence_fixtures() {
        assert!(period_equivalent(&[1, 2], &[2, 1]));
        assert!(!period_equivalent(&[1, 2], &[1, 3]));
        assert!(period_equivalent(&[2, 1, 1, 3], &[1, 1, 3, 2]));
        assert!(period_equivalent(&[1, 2, 3, 4], &[3, 2, 1, 4]));
        assert!(!period_equivalent(&[1, 1], &[1]));
        assert!(same_sequence(&[1, 1], &[1]));
        assert!(same_sequence(&[1, 2, 1, 2], &[2, 1]));
    }

    proptest! {
        #[test]
        fn canonical_is_invariant(w in proptest::collection::vec(1i64..5, 1..9), k in 0usize..9, rev in any::<bool>()) {
            let k = k % w.len();
            let mut r: Vec<i64> = w[k..].iter().chain(&w[..k]).copied().collect();
            if rev {
                r.reverse();
            }
            let a = canonical_period(&w).unwrap();
            let b = canonical_period(&r).unwrap();
            prop_assert_eq!(&a, &b);
            let p = a.minimal_word.len();
            prop_assert_eq!(a.word.len() % p, 0);
            for (i, v) in a.word.iter().enumerate() {
                prop_assert_eq!(*v, a.minimal_word[i % p]);
            }
        }
    }
}
