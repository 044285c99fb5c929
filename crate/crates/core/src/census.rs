//! Closed-form counts, the exhaustive enumeration oracle, Möbius inversion
//! and the edge-contraction recursion.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith;
use crate::codec::classic_prufer_decode;
use crate::error::{Error, Result};
use crate::lattice::{all_partitions, coarsenings, mobius_upset};
use crate::model::{IntegerPartition, LabelledTree, SetPartition};
use crate::treemap::{contract_top, expand_top, indegree_partition, phi, Contraction};

/// Largest `n` enumerated by default (`8^6 = 262144` trees).
pub const DEFAULT_MAX_N: usize = 8;
/// Largest `n` the extended census accepts (`9^7 = 4782969` trees).
pub const EXTENDED_MAX_N: usize = 9;

fn check_bound(n: usize, max: usize) -> Result<()> {
    if n > max {
        return Err(Error::BoundExceeded { n, max });
    }
    Ok(())
}

/// Number of set partitions of an `(n-1)`-set of type `lambda`:
/// `(n-1)! / (prod (i!)^m_i prod m_i!)`, accumulated as binomials.
pub fn partitions_of_type(lambda: &IntegerPartition) -> Result<u128> {
    let mut remaining = lambda.size() as u128;
    let mut ordered = 1u128;
    for &part in lambda.parts() {
        ordered = arith::mul(ordered, arith::binomial(remaining, part as u128)?, "partition count")?;
        remaining -= part as u128;
    }
    let symmetry = lambda
        .multiplicities()
        .into_iter()
        .try_fold(1u128, |acc, m| arith::mul(acc, arith::factorial(m as u128)?, "partition count"))?;
    arith::div_exact(ordered, symmetry, "partition count")
}

/// Number of trees on `[n]` with indegree sequence `lambda`:
/// `(n-1)!^2 / ((n-k)! prod (i!)^m_i prod m_i!)`.
pub fn count_by_lambda(lambda: &IntegerPartition, n: usize) -> Result<u128> {
    if n == 0 || lambda.size() != n - 1 {
        return Err(Error::Precondition(format!(
            "parts of ({lambda}) sum to {}, need n - 1 = {}",
            lambda.size(),
            n as i64 - 1
        )));
    }
    let per_partition = fiber_size(n, lambda.len())?;
    arith::mul(per_partition, partitions_of_type(lambda)?, "tree count")
}

/// `(n-1)! / (n-k)!` for `k` blocks; 1 when `k = 0`.
fn fiber_size(n: usize, k: usize) -> Result<u128> {
    if k == 0 {
        return Ok(1);
    }
    arith::falling_factorial(n as u128 - 1, k as u128 - 1)
}

/// Size of the fiber of `pi`: `(n-1)! / (n-|pi|)!`.
pub fn f_closed(pi: &SetPartition) -> Result<u128> {
    fiber_size(pi.n(), pi.len())
}

/// Number of trees whose image coarsens `sigma`: `n^(|sigma|-1)`.
pub fn g_closed(sigma: &SetPartition) -> Result<u128> {
    match sigma.len() {
        0 => Ok(1),
        k => {
            let exp = u32::try_from(k - 1).map_err(|_| Error::Overflow("n^(k-1)".into()))?;
            arith::pow(sigma.n() as u128, exp)
        }
    }
}

/// Iterator over every Prüfer sequence in `[n]^(n-2)`, lexicographically.
#[derive(Clone, Debug)]
struct PruferSequences {
    n: usize,
    current: Vec<usize>,
    done: bool,
}

impl PruferSequences {
    fn new(n: usize) -> Self {
        PruferSequences { n, current: vec![1; n.saturating_sub(2)], done: false }
    }
}

impl Iterator for PruferSequences {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let mut i = self.current.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.current[i] < self.n {
                self.current[i] += 1;
                self.current[i + 1..].iter_mut().for_each(|s| *s = 1);
                break;
            }
        }
        Some(out)
    }
}

fn tree_from_code(n: usize, code: &[usize]) -> LabelledTree {
    match n {
        1 => LabelledTree::trivial(),
        _ => classic_prufer_decode(n, code).expect("sequence symbols lie in [n]"),
    }
}

/// Every tree on `[n]`, in lexicographic order of Prüfer codes.
pub fn all_trees(n: usize) -> impl Iterator<Item = LabelledTree> {
    PruferSequences::new(n.max(1)).map(move |code| tree_from_code(n.max(1), &code))
}

/// Trees whose Prüfer code starts with `first`; the shards partition the
/// enumeration for `n >= 3`.
fn shard(n: usize, first: usize) -> impl Iterator<Item = LabelledTree> {
    let mut seqs = PruferSequences::new(n);
    seqs.current[0] = first;
    seqs.take_while(move |code| code[0] == first).map(move |code| tree_from_code(n, &code))
}

/// Runs `visit` over every tree on `[n]`, sharded by the first Prüfer
/// symbol, and merges the per-shard accumulators with `merge`.
fn fold_all_trees<A, F, M>(n: usize, init: impl Fn() -> A + Sync, visit: F, merge: M) -> A
where
    A: Send,
    F: Fn(&mut A, &LabelledTree) + Sync,
    M: Fn(A, A) -> A + Sync,
{
    if n < 3 {
        let mut acc = init();
        all_trees(n).for_each(|t| visit(&mut acc, &t));
        return acc;
    }
    // collect keeps the merge order fixed regardless of scheduling
    let shards: Vec<A> = (1..=n)
        .into_par_iter()
        .map(|first| {
            let mut acc = init();
            shard(n, first).for_each(|t| visit(&mut acc, &t));
            acc
        })
        .collect();
    shards.into_iter().fold(init(), merge)
}

/// Exhaustive tallies of indegree sequences and `phi`-images over all trees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub n: usize,
    pub total: u128,
    pub by_lambda: BTreeMap<IntegerPartition, u128>,
    pub by_partition: BTreeMap<SetPartition, u128>,
}

/// Enumerates all `n^(n-2)` trees. `max_n` is usually [`DEFAULT_MAX_N`] or
/// [`EXTENDED_MAX_N`].
pub fn brute_force_census(n: usize, max_n: usize) -> Result<Census> {
    check_bound(n, max_n.min(EXTENDED_MAX_N))?;
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    type Tally = (u128, BTreeMap<IntegerPartition, u128>, BTreeMap<SetPartition, u128>);
    let (total, by_lambda, by_partition) = fold_all_trees(
        n,
        || -> Tally { (0, BTreeMap::new(), BTreeMap::new()) },
        |acc, tree| {
            acc.0 += 1;
            *acc.1.entry(indegree_partition(tree)).or_default() += 1;
            *acc.2.entry(phi(tree)).or_default() += 1;
        },
        |mut a, b| {
            a.0 += b.0;
            for (k, v) in b.1 {
                *a.1.entry(k).or_default() += v;
            }
            for (k, v) in b.2 {
                *a.2.entry(k).or_default() += v;
            }
            a
        },
    );
    Ok(Census { n, total, by_lambda, by_partition })
}

/// The fiber `{T : phi(T) = pi}`, by filtering the full enumeration.
pub fn trees_with_phi(pi: &SetPartition) -> Result<impl Iterator<Item = LabelledTree> + '_> {
    check_bound(pi.n(), DEFAULT_MAX_N)?;
    Ok(all_trees(pi.n()).filter(move |t| phi(t) == *pi))
}

/// Trees on `[n]` with indegree sequence `lambda`.
pub fn trees_with_lambda(
    lambda: &IntegerPartition,
    n: usize,
) -> Result<impl Iterator<Item = LabelledTree> + '_> {
    check_bound(n, DEFAULT_MAX_N)?;
    Ok(all_trees(n).filter(move |t| indegree_partition(t) == *lambda))
}

/// Solves `sum over pi ⪰ sigma of f(pi) = g(sigma)` for every partition of
/// `[2, n]` by Möbius inversion: `f(pi) = sum over sigma ⪰ pi of mu(pi, sigma) g(sigma)`.
pub fn solve_f_by_mobius(n: usize) -> Result<BTreeMap<SetPartition, i128>> {
    check_bound(n, DEFAULT_MAX_N)?;
    all_partitions(n)
        .map(|pi| {
            let mut f = 0i128;
            for (sigma, mu) in mobius_upset(&pi) {
                let g = i128::try_from(g_closed(&sigma)?)
                    .map_err(|_| Error::Overflow("Möbius inversion".into()))?;
                let term = mu.checked_mul(g).ok_or_else(|| Error::Overflow("Möbius inversion".into()))?;
                f = f.checked_add(term).ok_or_else(|| Error::Overflow("Möbius inversion".into()))?;
            }
            Ok((pi, f))
        })
        .collect()
}

/// `sum over pi ⪰ sigma of f_closed(pi)`, which should equal `g_closed(sigma)`.
pub fn upset_sum(sigma: &SetPartition) -> Result<u128> {
    coarsenings(sigma).try_fold(0u128, |acc, pi| arith::add(acc, f_closed(&pi)?, "upset sum"))
}

/// Outcome of checking `f(pi) = sum_j f(pi~_j)` by enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecursionReport {
    pub pi: SetPartition,
    pub fiber: u128,
    /// `pi~_1` first (drop `n`), then one merged partition per other block.
    pub terms: Vec<(SetPartition, u128)>,
    /// Every contraction landed on the predicted `pi~_j` and expanded back.
    pub contraction_consistent: bool,
}

impl RecursionReport {
    pub fn holds(&self) -> bool {
        self.contraction_consistent && self.fiber == self.terms.iter().map(|(_, c)| c).sum::<u128>()
    }
}

/// The partitions of `[2, n-1]` reached by contracting `{n-1, n}`: index 0
/// drops `n` from its block, index `j` merges that block with block `j` of
/// `pi` (other blocks keep their relative order).
pub fn contracted_partitions(pi: &SetPartition) -> Result<Vec<(Option<usize>, SetPartition)>> {
    let n = pi.n();
    if n < 3 || !pi.same_block(n - 1, n) {
        return Err(Error::Precondition(format!(
            "{} and {n} must share a block of {pi}",
            n.saturating_sub(1)
        )));
    }
    let index = pi.block_index();
    let top = index[n];
    let trimmed: Vec<usize> = pi.blocks()[top].iter().copied().filter(|&x| x != n).collect();
    let rest: Vec<(usize, &Vec<usize>)> =
        pi.blocks().iter().enumerate().filter(|&(b, _)| b != top).collect();

    let mut out = Vec::with_capacity(pi.len());
    let mut dropped: Vec<Vec<usize>> = rest.iter().map(|(_, b)| (*b).clone()).collect();
    dropped.push(trimmed.clone());
    out.push((None, SetPartition::new(n - 1, dropped)?));
    for &(j, block) in &rest {
        let mut blocks: Vec<Vec<usize>> =
            rest.iter().filter(|&&(b, _)| b != j).map(|(_, b)| (*b).clone()).collect();
        let mut merged = trimmed.clone();
        merged.extend_from_slice(block);
        blocks.push(merged);
        out.push((Some(j), SetPartition::new(n - 1, blocks)?));
    }
    Ok(out)
}

/// Checks the contraction recursion for `pi`, where `n - 1` and `n` share a
/// block, by enumerating both sides.
pub fn recursion_check(pi: &SetPartition) -> Result<RecursionReport> {
    let targets = contracted_partitions(pi)?;
    check_bound(pi.n(), DEFAULT_MAX_N)?;
    let mut fiber = 0u128;
    let mut consistent = true;
    for tree in trees_with_phi(pi)? {
        fiber += 1;
        let (small, case) = contract_top(&tree)?;
        let key = match case {
            Contraction::DropTop => None,
            Contraction::Absorb { block } => Some(block),
        };
        let expected = targets.iter().find(|(j, _)| *j == key).map(|(_, p)| p);
        consistent &= expected == Some(&phi(&small));
        consistent &= expand_top(&small, pi)? == tree;
    }
    let mut terms = Vec::with_capacity(targets.len());
    for (_, target) in targets {
        let count = trees_with_phi(&target)?.count() as u128;
        terms.push((target, count));
    }
    Ok(RecursionReport { pi: pi.clone(), fiber, terms, contraction_consistent: consistent })
}
