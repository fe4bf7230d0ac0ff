//! Index-tuple helpers: subsets in lexicographic order, colex ranks, and
//! permutation parity.

use alloc::vec::Vec;

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Advances `c` to the next `k`-subset of `0..n` in lexicographic order.
/// Returns `false` (leaving `c` unspecified) when `c` was the last one.
pub fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// All strictly increasing `k`-tuples from `0..n`, lexicographically.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(n, k));
    if k > n {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        if !next_combination(&mut c, n) {
            break;
        }
    }
    out
}

/// Colexicographic rank of a strictly increasing tuple; a bijection from
/// `k`-subsets of `0..n` onto `0..binomial(n, k)`.
pub fn colex_rank(sorted: &[usize]) -> usize {
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| binomial(x, i + 1))
        .sum()
}

/// Sorts `idx` in place. Returns the parity of the sorting permutation
/// (`true` = odd), or `None` when an index repeats.
pub fn sort_with_parity(idx: &mut [usize]) -> Option<bool> {
    let mut odd = false;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(odd)
    }
}
