//! Gopala-Hemachandra sequences: the second-order recurrence family
//! `a, b, a+b, a+2b, 2a+3b, ...` for arbitrary integer seeds.
//!
//! The standard Fibonacci sequence used for coding is `(1, 2)`, i.e.
//! `1, 2, 3, 5, 8, 13, ...`. The variant family fixes `b = 1 - a`, which
//! for negative `a` yields sequences such as `(-2, 3)`:
//! `-2, 3, 1, 4, 5, 9, 14, 23, ...`. All term arithmetic is checked;
//! overflow is reported, never wrapped.

use std::fmt;

use crate::error::{Error, Result};

/// The two seed terms defining a Gopala-Hemachandra sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SequenceDef {
    a: i64,
    b: i64,
}

impl SequenceDef {
    /// The standard Fibonacci sequence for coding: `1, 2, 3, 5, 8, ...`.
    pub const STANDARD: SequenceDef = SequenceDef { a: 1, b: 2 };

    pub const fn new(a: i64, b: i64) -> Self {
        SequenceDef { a, b }
    }

    /// The variant family member `(a, 1 - a)`.
    pub fn variant(a: i64) -> Self {
        let b = 1i64.checked_sub(a).expect("variant parameter out of range");
        SequenceDef { a, b }
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn is_standard(&self) -> bool {
        *self == Self::STANDARD
    }

    /// The `k`-th term of the recurrence, exactly.
    pub fn term(&self, k: usize) -> Result<i64> {
        match k {
            0 => Ok(self.a),
            1 => Ok(self.b),
            _ => {
                let (mut lo, mut hi) = (self.a, self.b);
                for _ in 2..=k {
                    let next = lo.checked_add(hi).ok_or(Error::ArithmeticOverflow)?;
                    lo = hi;
                    hi = next;
                }
                Ok(hi)
            }
        }
    }

    /// Terms `0..count`, consistent with [`SequenceDef::term`].
    pub fn prefix(&self, count: usize) -> Result<Vec<i64>> {
        let mut terms = Vec::with_capacity(count);
        if count >= 1 {
            terms.push(self.a);
        }
        if count >= 2 {
            terms.push(self.b);
        }
        while terms.len() < count {
            let next = terms[terms.len() - 1]
                .checked_add(terms[terms.len() - 2])
                .ok_or(Error::ArithmeticOverflow)?;
            terms.push(next);
        }
        Ok(terms)
    }

    /// Smallest index `D >= 2` with `term(D) > n + max(0, -a)`.
    ///
    /// Every representation of `n` has its top index below `D`: a top term
    /// beyond that bound would force the remaining selected terms to sum
    /// below `a`, and index 0 (value `a`) is the only term that can be
    /// non-positive. Terms are strictly increasing from index 2 onward for
    /// any sequence that passes the degeneracy check, so indices `>= D`
    /// never recover.
    pub fn search_bound(&self, n: i64) -> Result<usize> {
        if n < 1 {
            return Err(Error::InvalidArgument(format!(
                "search bound requires n >= 1, got {n}"
            )));
        }
        let slack = self.a.min(0).checked_neg().ok_or(Error::ArithmeticOverflow)?;
        let bound = n.checked_add(slack).ok_or(Error::ArithmeticOverflow)?;

        let mut prev = self.a;
        let mut cur = self.b;
        let mut k = 1usize;
        loop {
            if cur <= 0 {
                return Err(Error::SequenceDegenerate {
                    a: self.a,
                    b: self.b,
                    reason: "term <= 0 at index >= 1",
                });
            }
            if k >= 2 && cur > bound {
                return Ok(k);
            }
            let next = prev.checked_add(cur).ok_or(Error::ArithmeticOverflow)?;
            prev = cur;
            cur = next;
            k += 1;
        }
    }

    /// Inspect terms `0..=max_index` and report anything that disqualifies
    /// the sequence for coding. Purely informational; never fails.
    pub fn validate(&self, max_index: usize) -> ValidationReport {
        let mut terms: Vec<i64> = Vec::with_capacity(max_index + 1);
        let mut overflow_at = None;
        for k in 0..=max_index {
            let next = match k {
                0 => Some(self.a),
                1 => Some(self.b),
                _ => terms[k - 1].checked_add(terms[k - 2]),
            };
            match next {
                Some(t) => terms.push(t),
                None => {
                    overflow_at = Some(k);
                    break;
                }
            }
        }

        let zero_terms = (0..terms.len()).filter(|&k| terms[k] == 0).collect();
        let negative_terms = (1..terms.len()).filter(|&k| terms[k] < 0).collect();
        // Smallest index from which the computed terms strictly increase.
        let mut increasing_from = 0;
        for k in 1..terms.len() {
            if terms[k - 1] >= terms[k] {
                increasing_from = k;
            }
        }
        ValidationReport {
            zero_terms,
            negative_terms,
            increasing_from,
            overflow_at,
        }
    }
}

impl fmt::Display for SequenceDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// Outcome of [`SequenceDef::validate`] over a term range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    /// Indices whose term is exactly zero.
    pub zero_terms: Vec<usize>,
    /// Indices `>= 1` whose term is negative.
    pub negative_terms: Vec<usize>,
    /// Smallest index from which terms strictly increase through the range.
    pub increasing_from: usize,
    /// First index whose term left the exact `i64` range, if any.
    pub overflow_at: Option<usize>,
}

impl ValidationReport {
    /// A sequence is usable for coding when every term at index >= 1 is
    /// strictly positive and no term in the range is zero.
    pub fn suitable_for_coding(&self) -> bool {
        self.zero_terms.is_empty() && self.negative_terms.is_empty() && self.overflow_at.is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn standard_terms() {
        let std = SequenceDef::STANDARD;
        assert_eq!(std.term(4).unwrap(), 8);
        assert_eq!(
            std.prefix(10).unwrap(),
            vec![1, 2, 3, 5, 8, 13, 21, 34, 55, 89]
        );
    }

    #[test]
    fn variant_terms_match_known_sequences() {
        let m2 = SequenceDef::variant(-2);
        assert_eq!(m2, SequenceDef::new(-2, 3));
        assert_eq!(m2.prefix(8).unwrap(), vec![-2, 3, 1, 4, 5, 9, 14, 23]);

        let m5 = SequenceDef::variant(-5);
        assert_eq!(m5.prefix(8).unwrap(), vec![-5, 6, 1, 7, 8, 15, 23, 38]);
    }

    #[test]
    fn prefix_examples() {
        assert_eq!(SequenceDef::STANDARD.prefix(5).unwrap(), vec![1, 2, 3, 5, 8]);
        assert_eq!(
            SequenceDef::new(-3, 4).prefix(6).unwrap(),
            vec![-3, 4, 1, 5, 6, 11]
        );
        assert_eq!(SequenceDef::new(0, 1).prefix(1).unwrap(), vec![0]);
    }

    #[test]
    fn term_overflow_is_detected() {
        let def = SequenceDef::new(i64::MAX, i64::MAX);
        assert_eq!(def.term(2), Err(Error::ArithmeticOverflow));
        assert_eq!(def.prefix(3), Err(Error::ArithmeticOverflow));
    }

    #[test]
    fn search_bound_examples() {
        assert_eq!(SequenceDef::new(-2, 3).search_bound(3).unwrap(), 5);
        assert_eq!(SequenceDef::STANDARD.search_bound(10).unwrap(), 5);
        assert_eq!(SequenceDef::STANDARD.search_bound(1).unwrap(), 2);
    }

    #[test]
    fn search_bound_rejects_degenerate_sequences() {
        // VF_1 = 1, 0, 1, 1, ... has a zero term at index 1.
        assert!(matches!(
            SequenceDef::variant(1).search_bound(5),
            Err(Error::SequenceDegenerate { .. })
        ));
        assert!(matches!(
            SequenceDef::new(2, -1).search_bound(5),
            Err(Error::SequenceDegenerate { .. })
        ));
    }

    #[test]
    fn search_bound_rejects_nonpositive_n() {
        assert!(matches!(
            SequenceDef::STANDARD.search_bound(0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn validate_standard() {
        let report = SequenceDef::STANDARD.validate(10);
        assert!(report.suitable_for_coding());
        assert_eq!(report.increasing_from, 0);
    }

    #[test]
    fn validate_variant_minus_two() {
        let report = SequenceDef::new(-2, 3).validate(10);
        assert!(report.suitable_for_coding());
        assert!(report.zero_terms.is_empty());
        assert!(report.negative_terms.is_empty());
        assert_eq!(report.increasing_from, 2);
    }

    #[test]
    fn validate_flags_zero_terms() {
        // VF_1 = 1, 0, 1, 1, 2, ...
        let report = SequenceDef::new(1, 0).validate(10);
        assert_eq!(report.zero_terms, vec![1]);
        assert!(!report.suitable_for_coding());
    }

    #[test]
    fn validate_reports_overflow() {
        let report = SequenceDef::new(i64::MAX, i64::MAX).validate(4);
        assert_eq!(report.overflow_at, Some(2));
        assert!(!report.suitable_for_coding());
    }

    proptest! {
        #[test]
        fn recurrence_identity(a in -1000i64..1000, b in -1000i64..1000, k in 2usize..40) {
            let def = SequenceDef::new(a, b);
            let t = def.prefix(k + 1).unwrap();
            prop_assert_eq!(t[k], t[k - 1] + t[k - 2]);
            prop_assert_eq!(def.term(k).unwrap(), t[k]);
        }
    }
}
