//! Code sets `Omega_pi`: the image of the fiber of `pi` under its own code.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::census::{all_trees, trees_with_phi, DEFAULT_MAX_N};
use crate::codec::{encode, is_subsequence};
use crate::error::{Error, Result};
use crate::lattice::refines;
use crate::model::{CodeWord, LabelledTree, SetPartition};
use crate::treemap::phi;

/// Every word of `[n]^len`, lexicographically.
pub fn cube(n: usize, len: usize) -> impl Iterator<Item = CodeWord> {
    let total = (n as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
    let mut current = vec![1usize; len];
    let mut emitted = 0u128;
    std::iter::from_fn(move || {
        if emitted == total || n == 0 && len > 0 {
            return None;
        }
        emitted += 1;
        let out = CodeWord::new(n, current.clone()).expect("symbols within [1,n]");
        for i in (0..len).rev() {
            if current[i] < n {
                current[i] += 1;
                break;
            }
            current[i] = 1;
        }
        Some(out)
    })
}

/// `Omega_pi = { encode(pi, T) : phi(T) = pi }`.
pub fn omega_set(pi: &SetPartition) -> Result<BTreeSet<CodeWord>> {
    trees_with_phi(pi)?.map(|t| encode(pi, &t)).collect()
}

/// Renders a two-symbol code set as an `n x n` grid: row `a`, column `b`
/// holds the word `ab`; words outside the set are struck as `~ab~`.
/// Symbols are comma-separated once `n >= 10`.
pub fn render_grid(n: usize, words: &BTreeSet<CodeWord>) -> Result<String> {
    if let Some(w) = words.iter().find(|w| w.len() != 2 || w.n() != n) {
        return Err(Error::InvalidCodeWord(format!(
            "grid rendering needs words of length 2 over [{n}], got {w}"
        )));
    }
    let sep = if n >= 10 { "," } else { "" };
    let mut out = String::new();
    for a in 1..=n {
        let cells: Vec<String> = (1..=n)
            .map(|b| {
                let w = CodeWord::new(n, vec![a, b]).expect("symbols within [1,n]");
                if words.contains(&w) {
                    format!(" {a}{sep}{b} ")
                } else {
                    format!("~{a}{sep}{b}~")
                }
            })
            .collect();
        out.push_str(cells.join(" ").trim_end());
        out.push('\n');
    }
    Ok(out)
}

fn trees_above(sigma: &SetPartition) -> Result<impl Iterator<Item = (LabelledTree, SetPartition)> + '_> {
    if sigma.n() > DEFAULT_MAX_N {
        return Err(Error::BoundExceeded { n: sigma.n(), max: DEFAULT_MAX_N });
    }
    Ok(all_trees(sigma.n()).filter_map(move |t| {
        let pi = phi(&t);
        refines(sigma, &pi).unwrap_or(false).then_some((t, pi))
    }))
}

/// Result of checking that the fibers above `sigma` tile `[n]^(k-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CubeReport {
    pub sigma: SetPartition,
    pub cube_size: u128,
    /// Fiber sizes per `pi ⪰ sigma`, in partition order.
    pub fibers: Vec<(SetPartition, usize)>,
    /// Words hit by two different trees.
    pub collisions: Vec<CodeWord>,
    /// Words of the cube never hit.
    pub missing: Vec<CodeWord>,
    /// For every tree above `sigma`, its own code is a subsequence of its
    /// `sigma`-code (struck words carry their coarser preimage).
    pub deletion_view_consistent: bool,
}

impl CubeReport {
    pub fn passed(&self) -> bool {
        self.collisions.is_empty() && self.missing.is_empty() && self.deletion_view_consistent
    }

    /// Total number of words hit.
    pub fn covered(&self) -> usize {
        self.fibers.iter().map(|(_, c)| c).sum()
    }
}

/// Encodes every tree above `sigma` and checks the images are pairwise
/// disjoint and cover `[n]^(|sigma|-1)`.
pub fn cube_partition_check(sigma: &SetPartition) -> Result<CubeReport> {
    let n = sigma.n();
    let len = sigma.len().saturating_sub(1);
    let mut seen: BTreeMap<CodeWord, SetPartition> = BTreeMap::new();
    let mut fibers: BTreeMap<SetPartition, usize> = BTreeMap::new();
    let mut collisions = Vec::new();
    let mut deletion_ok = true;
    for (tree, pi) in trees_above(sigma)? {
        let word = encode(sigma, &tree)?;
        if pi != *sigma {
            deletion_ok &= is_subsequence(&encode(&pi, &tree)?, &word);
        }
        *fibers.entry(pi.clone()).or_default() += 1;
        if seen.insert(word.clone(), pi).is_some() {
            collisions.push(word);
        }
    }
    let missing: Vec<CodeWord> = cube(n, len).filter(|w| !seen.contains_key(w)).collect();
    let cube_size = (n as u128).pow(len as u32);
    Ok(CubeReport {
        sigma: sigma.clone(),
        cube_size,
        fibers: fibers.into_iter().collect(),
        collisions,
        missing,
        deletion_view_consistent: deletion_ok,
    })
}

/// A tree whose coarser code is not a subsequence of its finer code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsequenceWitness {
    pub tree: LabelledTree,
    pub coarse: CodeWord,
    pub fine: CodeWord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsequenceReport {
    pub finer: SetPartition,
    pub coarser: SetPartition,
    pub trees_checked: usize,
    pub failures: Vec<SubsequenceWitness>,
}

impl SubsequenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For `finer ≺ coarser`, checks `encode(coarser, T) ⊑ encode(finer, T)` for
/// every tree above `coarser`.
pub fn subsequence_theorem_check(
    finer: &SetPartition,
    coarser: &SetPartition,
) -> Result<SubsequenceReport> {
    if finer == coarser || !refines(finer, coarser)? {
        return Err(Error::Order { lower: finer.to_string(), upper: coarser.to_string() });
    }
    let mut checked = 0;
    let mut failures = Vec::new();
    for (tree, _) in trees_above(coarser)? {
        checked += 1;
        let coarse = encode(coarser, &tree)?;
        let fine = encode(finer, &tree)?;
        if !is_subsequence(&coarse, &fine) {
            failures.push(SubsequenceWitness { tree, coarse, fine });
        }
    }
    Ok(SubsequenceReport {
        finer: finer.clone(),
        coarser: coarser.clone(),
        trees_checked: checked,
        failures,
    })
}
