use std::fmt;

use serde::{Deserialize, Serialize};

/// Exponent vector `(alpha_1, ..., alpha_n)`; ordered lexicographically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exps: Vec<u32>) -> Self {
        MultiIndex(exps)
    }

    pub fn zeros(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// The unit index `e_j` (1-based `j`).
    pub fn unit(n: usize, j: usize) -> Self {
        let mut exps = vec![0; n];
        exps[j - 1] = 1;
        MultiIndex(exps)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    /// `|alpha| = sum alpha_j`.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `alpha! = prod alpha_j!`.
    pub fn factorial(&self) -> f64 {
        self.0.iter().map(|&a| (1..=a).map(f64::from).product::<f64>()).product()
    }

    /// `alpha - e_j` (0-based `j`), if it stays non-negative.
    pub fn lowered(&self, j: usize) -> Option<Self> {
        if self.0[j] == 0 {
            return None;
        }
        let mut exps = self.0.clone();
        exps[j] -= 1;
        Some(MultiIndex(exps))
    }

    /// `alpha + e_j` (0-based `j`).
    pub fn raised(&self, j: usize) -> Self {
        let mut exps = self.0.clone();
        exps[j] += 1;
        MultiIndex(exps)
    }

    /// Generator list with multiplicities, e.g. `(2,0,1)` gives `[0, 0, 2]`.
    pub fn expand(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(j, &a)| std::iter::repeat_n(j, a as usize))
            .collect()
    }

    /// `x^alpha` for real `x`.
    pub fn monomial(&self, x: &[f64]) -> f64 {
        self.0.iter().zip(x).map(|(&a, &xi)| xi.powi(a as i32)).product()
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// All multi-indices of length `n` and degree `k`, in lexicographic order.
pub fn multi_indices(n: usize, k: u32) -> Vec<MultiIndex> {
    fn fill(prefix: &mut Vec<u32>, slots: usize, remaining: u32, out: &mut Vec<MultiIndex>) {
        if slots == 1 {
            prefix.push(remaining);
            out.push(MultiIndex(prefix.clone()));
            prefix.pop();
            return;
        }
        for first in 0..=remaining {
            prefix.push(first);
            fill(prefix, slots - 1, remaining - first, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if k == 0 {
            out.push(MultiIndex(Vec::new()));
        }
        return out;
    }
    fill(&mut Vec::with_capacity(n), n, k, &mut out);
    out
}

/// All multi-indices of length `n` with degree at most `k`, grouped by degree.
pub fn multi_indices_up_to(n: usize, k: u32) -> Vec<MultiIndex> {
    (0..=k).flat_map(|d| multi_indices(n, d)).collect()
}

/// `C(k + n - 1, n - 1)`: number of multi-indices of length `n`, degree `k`.
pub fn homogeneous_count(n: usize, k: u32) -> usize {
    if n == 0 {
        return usize::from(k == 0);
    }
    let (top, r) = (k as usize + n - 1, n - 1);
    (1..=r).fold(1usize, |acc, i| acc * (top + 1 - i) / i)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_zero() {
        assert_eq!(multi_indices(2, 0), vec![MultiIndex::new(vec![0, 0])]);
    }

    #[test]
    fn lexicographic_degree_two() {
        let got = multi_indices(2, 2);
        let want: Vec<_> = [[0, 2], [1, 1], [2, 0]].iter().map(|e| MultiIndex::new(e.to_vec())).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn counts_match_stars_and_bars() {
        assert_eq!(multi_indices(3, 2).len(), 6);
        for n in 1..=4 {
            for k in 0..=6 {
                let all = multi_indices(n, k);
                assert_eq!(all.len(), homogeneous_count(n, k));
                assert!(all.windows(2).all(|w| w[0] < w[1]));
                assert!(all.iter().all(|a| a.degree() == k));
            }
        }
        assert_eq!(multi_indices_up_to(2, 5).len(), 21);
        assert_eq!(multi_indices_up_to(3, 5).len(), 56);
    }

    #[test]
    fn factorial_and_expand() {
        let a = MultiIndex::new(vec![2, 0, 3]);
        assert_eq!(a.factorial(), 12.0);
        assert_eq!(a.expand(), vec![0, 0, 2, 2, 2]);
        assert_eq!(a.lowered(1), None);
        assert_eq!(a.lowered(0), Some(MultiIndex::new(vec![1, 0, 3])));
    }
}
