//! Independent oracles shared by the integration suites. Everything here
//! recomputes expectations from first principles — plain subset search and
//! the reference splitmix64 generator — and never calls into the code paths
//! it is used to check.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

/// Terms 0..count of the recurrence, naively.
pub fn terms(a: i64, b: i64, count: usize) -> Vec<i64> {
    let mut t = Vec::with_capacity(count);
    if count >= 1 {
        t.push(a);
    }
    if count >= 2 {
        t.push(b);
    }
    while t.len() < count {
        t.push(t[t.len() - 1] + t[t.len() - 2]);
    }
    t
}

/// Every nonconsecutive bit mask over `width` indices whose selected terms
/// sum to `n`, as raw masks (bit i = index i), ascending by mask value.
/// Exhaustive by construction: tries all 2^width masks.
pub fn brute_force_masks(a: i64, b: i64, n: i64, width: usize) -> Vec<u64> {
    assert!(width < 63, "mask oracle limited to 62 indices");
    let t = terms(a, b, width);
    (1u64..1 << width)
        .filter(|m| {
            m & (m << 1) == 0
                && (0..width)
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| i128::from(t[i]))
                    .sum::<i128>()
                    == i128::from(n)
        })
        .collect()
}

/// Top indices of every nonconsecutive subset of indices `0..width` summing
/// to `n`, found by exhaustive DFS. Pruning uses only generic subset-sum
/// reachability (how low and high the remaining choices can go), so it is
/// independent of any codeword search bound.
pub fn exhaustive_top_indices(a: i64, b: i64, n: i64, width: usize) -> BTreeSet<usize> {
    let t: Vec<i128> = terms(a, b, width).into_iter().map(i128::from).collect();
    let mut max_tail = vec![0i128; width + 2];
    for i in (0..width).rev() {
        max_tail[i] = max_tail[i + 1].max(t[i].max(0) + max_tail[i + 2]);
    }
    let mut tops = BTreeSet::new();
    dfs(&t, &max_tail, i128::from(a).min(0), 0, i128::from(n), None, &mut tops);
    tops
}

fn dfs(
    t: &[i128],
    max_tail: &[i128],
    min_first: i128,
    i: usize,
    remaining: i128,
    top: Option<usize>,
    tops: &mut BTreeSet<usize>,
) {
    if remaining == 0 {
        if let Some(top) = top {
            tops.insert(top);
        }
        // Larger subsets may still sum back to n; keep searching.
    }
    if i >= t.len() {
        return;
    }
    let floor = if i == 0 { min_first } else { 0 };
    if remaining < floor || remaining > max_tail[i] {
        return;
    }
    dfs(t, max_tail, min_first, i + 1, remaining, top, tops);
    dfs(t, max_tail, min_first, i + 2, remaining - t[i], Some(i), tops);
}

/// Vigna's reference splitmix64, stepped sequentially.
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// Load a checked-in golden table as (n, expected cell) pairs.
pub fn load_golden_table(name: &str) -> Vec<(i64, String)> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    let text = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()));
    text.lines()
        .map(|line| {
            let (n, cell) = line
                .split_once(": ")
                .unwrap_or_else(|| panic!("malformed golden line {line:?}"));
            (n.parse().expect("golden line starts with an integer"), cell.to_string())
        })
        .collect()
}
