//! Zeckendorf-style representations: selections of nonconsecutive sequence
//! terms summing to a target integer.
//!
//! Under the standard sequence every positive integer has exactly one such
//! representation (Zeckendorf's theorem) and the greedy algorithm finds it.
//! Variant sequences may admit several representations of the same integer,
//! or none at all; [`enumerate_representations`] finds them all by a bounded
//! search, and the scan/profile helpers summarize feasibility and
//! multiplicity over a range.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::sequences::SequenceDef;

/// A bit vector over sequence indices `0..=top` selecting terms that sum to
/// the represented integer. The top bit is always set and no two set bits
/// are adjacent, which is what makes the derived codeword prefix-free.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Representation {
    bits: Vec<bool>,
}

impl Representation {
    /// Build from an explicit bit vector (index 0 first), checking the type
    /// invariants.
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::InvalidArgument("empty representation".into()));
        }
        if !bits[bits.len() - 1] {
            return Err(Error::InvalidArgument(
                "top bit of a representation must be set".into(),
            ));
        }
        if bits.windows(2).any(|w| w[0] && w[1]) {
            return Err(Error::InvalidArgument(
                "representation has two consecutive set bits".into(),
            ));
        }
        Ok(Representation { bits })
    }

    /// Build from the set of selected indices.
    pub fn from_set_indices(indices: &[usize]) -> Result<Self> {
        let top = *indices
            .iter()
            .max()
            .ok_or_else(|| Error::InvalidArgument("empty representation".into()))?;
        let mut bits = vec![false; top + 1];
        for &i in indices {
            bits[i] = true;
        }
        Self::new(bits)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn top_index(&self) -> usize {
        self.bits.len() - 1
    }

    /// Indices of the selected terms, ascending.
    pub fn set_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
    }

    /// The represented integer under `def`: the dot product of the selected
    /// terms.
    pub fn value(&self, def: &SequenceDef) -> Result<i64> {
        let terms = def.prefix(self.bits.len())?;
        let mut sum = 0i64;
        for i in self.set_indices() {
            sum = sum.checked_add(terms[i]).ok_or(Error::ArithmeticOverflow)?;
        }
        Ok(sum)
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// The unique nonconsecutive representation of `n` under the standard
/// sequence, by repeatedly taking the largest term that still fits.
pub fn zeckendorf_greedy(n: i64) -> Result<Representation> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!(
            "cannot represent {n}: only positive integers are encodable"
        )));
    }
    // All standard terms <= n; nonempty since term(0) = 1.
    let mut terms = vec![1i64, 2];
    loop {
        match terms[terms.len() - 1].checked_add(terms[terms.len() - 2]) {
            Some(next) if next <= n => terms.push(next),
            _ => break,
        }
    }
    while terms.last().copied().unwrap() > n {
        terms.pop();
    }

    let mut bits = vec![false; terms.len()];
    let mut rest = n;
    for i in (0..terms.len()).rev() {
        if terms[i] <= rest {
            bits[i] = true;
            rest -= terms[i];
        }
    }
    debug_assert_eq!(rest, 0, "greedy subtraction must exhaust n");
    Representation::new(bits)
}

/// All representations of `n` under `def`, ordered by ascending top index
/// and then by the bit string read from index 0 as a lexicographic key.
/// The search covers every top index below `def.search_bound(n)`, which is
/// exhaustive. `limit` truncates the result without changing its order.
pub fn enumerate_representations(
    n: i64,
    def: &SequenceDef,
    limit: Option<usize>,
) -> Result<Vec<Representation>> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!(
            "cannot represent {n}: only positive integers are encodable"
        )));
    }
    if def.a() == 0 {
        return Err(Error::SequenceDegenerate {
            a: def.a(),
            b: def.b(),
            reason: "zero term at index 0",
        });
    }
    if limit == Some(0) {
        return Ok(Vec::new());
    }

    let bound = def.search_bound(n)?;
    let terms = def.prefix(bound)?;

    let mut found = Vec::new();
    let mut search = Search {
        terms: &terms,
        min_tail: def.a().min(0) as i128,
        limit,
        out: &mut found,
        chosen: Vec::new(),
    };
    for (top, &top_term) in terms.iter().enumerate() {
        search.run_top(top, n as i128 - top_term as i128);
        if search.done() {
            break;
        }
    }
    Ok(found)
}

/// DFS over the free positions `0..=top-2` of one top index. Branching
/// tries bit 0 before bit 1 at each position, so solutions come out in
/// lexicographic order of the full bit string.
struct Search<'a> {
    terms: &'a [i64],
    /// Smallest achievable subset sum: index 0 is the only possibly
    /// negative term.
    min_tail: i128,
    limit: Option<usize>,
    out: &'a mut Vec<Representation>,
    chosen: Vec<usize>,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.limit.is_some_and(|l| self.out.len() >= l)
    }

    fn run_top(&mut self, top: usize, need: i128) {
        // max_free[p]: largest nonconsecutive subset sum of positions
        // p..=top-2. Sums are taken in i128 so they are always exact.
        let free = top.saturating_sub(1);
        let mut max_free = vec![0i128; free + 2];
        for p in (0..free).rev() {
            let take = (self.terms[p].max(0) as i128) + max_free[p + 2];
            max_free[p] = max_free[p + 1].max(take);
        }
        self.chosen.clear();
        self.dfs(0, free, top, need, &max_free);
    }

    fn dfs(&mut self, p: usize, free: usize, top: usize, need: i128, max_free: &[i128]) {
        if self.done() {
            return;
        }
        if p >= free {
            if need == 0 {
                let mut bits = vec![false; top + 1];
                for &i in &self.chosen {
                    bits[i] = true;
                }
                bits[top] = true;
                self.out.push(Representation { bits });
            }
            return;
        }
        let floor = if p == 0 { self.min_tail } else { 0 };
        if need < floor || need > max_free[p] {
            return;
        }
        self.dfs(p + 1, free, top, need, max_free);
        self.chosen.push(p);
        self.dfs(p + 2, free, top, need - self.terms[p] as i128, max_free);
        self.chosen.pop();
    }
}

/// Number of distinct representations of `n` under `def`.
pub fn representation_count(n: i64, def: &SequenceDef) -> Result<usize> {
    Ok(enumerate_representations(n, def, None)?.len())
}

/// All integers in `1..=max` with no representation under `def`, ascending.
pub fn feasibility_scan(def: &SequenceDef, max: i64) -> Result<Vec<i64>> {
    if max < 1 {
        return Err(Error::InvalidArgument(format!(
            "scan range must be at least 1, got {max}"
        )));
    }
    let mut gaps = Vec::new();
    for n in 1..=max {
        if enumerate_representations(n, def, Some(1))?.is_empty() {
            gaps.push(n);
        }
    }
    Ok(gaps)
}

/// Histogram over `1..=max`: representation count -> how many integers in
/// the range have that count. Bucket totals always sum to `max`.
pub fn uniqueness_profile(def: &SequenceDef, max: i64) -> Result<BTreeMap<usize, u64>> {
    if max < 1 {
        return Err(Error::InvalidArgument(format!(
            "profile range must be at least 1, got {max}"
        )));
    }
    let mut histogram = BTreeMap::new();
    for n in 1..=max {
        let count = representation_count(n, def)?;
        *histogram.entry(count).or_insert(0) += 1;
    }
    Ok(histogram)
}
