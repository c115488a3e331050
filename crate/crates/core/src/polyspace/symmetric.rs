//! Symmetric (Weyl-ordered) products `a_1 x ... x a_k = (1/k!) sum_perm a_p1 ... a_pk`.
//!
//! Averaging over orderings is computed by conditioning on the last factor:
//! `S(A) = (1/|A|) sum_{j in A} S(A \ {j}) a_j`. Over a set of distinct
//! factors this is a dynamic program on the `2^k` subsets; over a multiset
//! given by multiplicities it runs on the lattice of sub-multi-indices.

use std::collections::BTreeMap;

use super::multi_index::MultiIndex;
use crate::clifford::{CMatrix, Ring};
use crate::error::{Error, Result};
use crate::matrix::identity;

/// Symmetric product of a list of factors in any associative ring with the
/// given unit.
pub fn symmetric_product_in<A: Ring>(factors: &[A], unit: &A) -> Result<A> {
    let k = factors.len();
    if k == 0 {
        return Err(Error::Empty("symmetric product factors"));
    }
    if k > 24 {
        return Err(Error::Unsupported(format!("{k} factors exceed the subset table")));
    }
    let mut table: Vec<Option<A>> = vec![None; 1 << k];
    table[0] = Some(unit.clone());
    let mut subsets: Vec<usize> = (1..1usize << k).collect();
    subsets.sort_by_key(|s| s.count_ones());
    for s in subsets {
        let size = s.count_ones() as i64;
        let mut acc: Option<A> = None;
        for (j, a) in factors.iter().enumerate() {
            if s & (1 << j) == 0 {
                continue;
            }
            let prev = table[s ^ (1 << j)].as_ref().expect("smaller subsets filled first");
            let term = prev.times(a);
            acc = Some(match acc {
                Some(sum) => sum.plus(&term),
                None => term,
            });
        }
        table[s] = acc.map(|sum| sum.scale(1, size));
    }
    Ok(table[(1 << k) - 1].take().expect("full set filled"))
}

/// Symmetric product of square complex matrices.
pub fn symmetric_product(factors: &[CMatrix]) -> Result<CMatrix> {
    let first = factors.first().ok_or(Error::Empty("symmetric product factors"))?;
    let d = first.nrows();
    for f in factors {
        if f.nrows() != d || f.ncols() != d {
            return Err(Error::DimensionMismatch { expected: d, found: f.nrows().max(f.ncols()) });
        }
    }
    symmetric_product_in(factors, &identity(d))
}

/// Symmetric powers `g^{x alpha}` for every `alpha` with `|alpha| <= max_degree`.
///
/// Uses `V_alpha = (1/|alpha|) sum_j alpha_j V_{alpha - e_j} g_j`, so the
/// whole lattice costs one ring product per (index, generator) pair.
pub fn symmetric_power_lattice<A: Ring>(
    gens: &[A],
    unit: &A,
    max_degree: u32,
) -> BTreeMap<MultiIndex, A> {
    let n = gens.len();
    let mut out = BTreeMap::new();
    out.insert(MultiIndex::zeros(n), unit.clone());
    for degree in 1..=max_degree {
        for alpha in super::multi_indices(n, degree) {
            let value = lattice_step(&alpha, gens, |beta| &out[beta]);
            out.insert(alpha, value);
        }
    }
    out
}

/// Symmetric power for a single multi-index, visiting only sub-indices.
pub fn symmetric_power<A: Ring>(gens: &[A], unit: &A, alpha: &MultiIndex) -> Result<A> {
    if alpha.n() != gens.len() {
        return Err(Error::DimensionMismatch { expected: gens.len(), found: alpha.n() });
    }
    let mut memo: BTreeMap<MultiIndex, A> = BTreeMap::new();
    memo.insert(MultiIndex::zeros(alpha.n()), unit.clone());
    // sub-indices of alpha in increasing degree
    let mut layer = vec![MultiIndex::zeros(alpha.n())];
    for _ in 0..alpha.degree() {
        let mut next = Vec::new();
        for beta in &layer {
            for j in 0..alpha.n() {
                if beta.exps()[j] < alpha.exps()[j] {
                    let up = beta.raised(j);
                    if !memo.contains_key(&up) && !next.contains(&up) {
                        next.push(up);
                    }
                }
            }
        }
        for beta in &next {
            let value = lattice_step(beta, gens, |b| &memo[b]);
            memo.insert(beta.clone(), value);
        }
        layer = next;
    }
    Ok(memo.remove(alpha).expect("alpha reached"))
}

fn lattice_step<'a, A: Ring + 'a>(
    alpha: &MultiIndex,
    gens: &[A],
    lookup: impl Fn(&MultiIndex) -> &'a A,
) -> A {
    let degree = i64::from(alpha.degree());
    let mut acc: Option<A> = None;
    for (j, g) in gens.iter().enumerate() {
        let Some(lower) = alpha.lowered(j) else { continue };
        let mult = i64::from(alpha.exps()[j]);
        let term = lookup(&lower).times(g).scale(mult, 1);
        acc = Some(match acc {
            Some(sum) => sum.plus(&term),
            None => term,
        });
    }
    acc.expect("degree >= 1 has a non-zero entry").scale(1, degree)
}
