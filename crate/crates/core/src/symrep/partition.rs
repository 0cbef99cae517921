use std::fmt;

use serde::{Deserialize, Serialize};

/// Integer partition, parts weakly decreasing and positive.
///
/// The empty partition (of 0) is allowed; it labels the absent factor when a
/// configuration carries no spin or no pseudo-spin letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionError {
    #[error("parts {0:?} are not weakly decreasing positive integers")]
    NotAPartition(Vec<usize>),
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, PartitionError> {
        if parts.contains(&0) || !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(PartitionError::NotAPartition(parts));
        }
        Ok(Partition { parts })
    }

    /// Sorts the entries descending and drops zeros.
    pub fn from_weight(weight: &[usize]) -> Self {
        let mut parts: Vec<usize> = weight.iter().copied().filter(|&p| p > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Two-row shape `{n − r, r}` (the `r = 0` case is the one-row shape).
    pub fn two_row(n: usize, r: usize) -> Self {
        assert!(2 * r <= n, "{{{}, {r}}} is not a partition", n - r);
        Partition::from_weight(&[n - r, r])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Row length, zero past the last row.
    pub fn part(&self, row: usize) -> usize {
        self.parts.get(row).copied().unwrap_or(0)
    }

    /// Dominance order `self ⊵ other` (same size assumed).
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let rows = self.len().max(other.len());
        let (mut a, mut b) = (0, 0);
        for i in 0..rows {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return false;
            }
        }
        true
    }

    /// Hook lengths of all cells, row by row.
    pub fn hooks(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.size());
        for (r, &len) in self.parts.iter().enumerate() {
            for c in 0..len {
                let arm = len - c - 1;
                let leg = self.parts[r + 1..].iter().filter(|&&l| l > c).count();
                out.push(arm + leg + 1);
            }
        }
        out
    }

    /// Dimension of the symmetric-group irrep, `n! / Π hooks`.
    pub fn dim_irrep(&self) -> u128 {
        // Interleave multiplication and division to stay within u128.
        let mut hooks = self.hooks();
        hooks.sort_unstable();
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for (k, h) in (1..=self.size() as u128).zip(hooks.iter().rev()) {
            num *= k;
            den *= *h as u128;
            let g = gcd(num, den);
            num /= g;
            den /= g;
        }
        debug_assert_eq!(den, 1);
        num / den
    }

    /// Cells where a box can be added, as `(row, column)`, top row first.
    pub fn addable_cells(&self) -> Vec<(usize, usize)> {
        let mut cells = Vec::new();
        for r in 0..=self.len() {
            let len = self.part(r);
            if r == 0 || len < self.part(r - 1) {
                cells.push((r, len));
            }
        }
        cells
    }

    /// Rows whose last box can be removed, bottom row first.
    pub fn removable_rows(&self) -> Vec<usize> {
        (0..self.len()).rev().filter(|&r| self.part(r) > self.part(r + 1)).collect()
    }

    pub(crate) fn with_box_removed(&self, row: usize) -> Partition {
        let mut parts = self.parts.clone();
        parts[row] -= 1;
        if parts[row] == 0 {
            parts.pop();
        }
        Partition { parts }
    }

    /// All partitions of `n` in reverse lexicographic order, which is a linear
    /// extension of dominance (a partition never precedes one it is dominated by).
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(remaining: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=remaining.min(max)).rev() {
                cur.push(p);
                rec(remaining - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl fmt::Display for Partition {
    /// `{5,3}`; the empty partition prints as `{}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// All `λ ⊢ n` with at most `max_parts` rows and `λ ⊵ μ`, dominance-descending.
///
/// `weight` is sorted before comparison, so `(3,5)` behaves like `(5,3)`.
pub fn partitions_dominating(n: usize, weight: &[usize], max_parts: usize) -> Vec<Partition> {
    assert_eq!(weight.iter().sum::<usize>(), n, "weight {weight:?} does not sum to {n}");
    let mu = Partition::from_weight(weight);
    Partition::all(n).into_iter().filter(|l| l.len() <= max_parts && l.dominates(&mu)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn dominating_lists() {
        assert_eq!(partitions_dominating(8, &[5, 3], 2), vec![p(&[8]), p(&[7, 1]), p(&[6, 2]), p(&[5, 3])]);
        assert_eq!(partitions_dominating(4, &[2, 2], 2), vec![p(&[4]), p(&[3, 1]), p(&[2, 2])]);
        assert_eq!(partitions_dominating(2, &[2, 0], 2), vec![p(&[2])]);
        assert_eq!(partitions_dominating(8, &[3, 5], 2), partitions_dominating(8, &[5, 3], 2));
        assert_eq!(partitions_dominating(0, &[0, 0], 2), vec![Partition::empty()]);
    }

    #[test]
    fn hook_dimensions() {
        assert_eq!(p(&[7, 1]).dim_irrep(), 7);
        assert_eq!(p(&[6, 2]).dim_irrep(), 20);
        assert_eq!(p(&[5, 3]).dim_irrep(), 28);
        assert_eq!(p(&[1]).dim_irrep(), 1);
        assert_eq!(p(&[3, 3]).dim_irrep(), 5);
        assert_eq!(Partition::empty().dim_irrep(), 1);
        assert_eq!(p(&[5, 4, 3, 2, 1]).dim_irrep(), 292864);
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| Partition::all(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn all_is_dominance_compatible() {
        let all = Partition::all(7);
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                assert!(!b.dominates(a) || a == b, "{b} dominates earlier {a}");
            }
        }
    }

    #[test]
    fn rejects_bad_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(p(&[5, 3]).to_string(), "{5,3}");
    }

    #[test]
    fn addable_and_removable() {
        assert_eq!(p(&[2, 1]).addable_cells(), vec![(0, 2), (1, 1), (2, 0)]);
        assert_eq!(p(&[2, 2]).addable_cells(), vec![(0, 2), (2, 0)]);
        assert_eq!(p(&[3, 1]).removable_rows(), vec![1, 0]);
        assert_eq!(Partition::empty().addable_cells(), vec![(0, 0)]);
    }
}
