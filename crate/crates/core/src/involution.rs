//! The label-swap involution exchanging the fibers of `pi` and `s_i pi`.
//!
//! For `i`, `i + 1` in different blocks of `phi(T)`:
//!
//! * not adjacent: exchange the two labels;
//! * adjacent, vertex 1 in an away-branch (`A_i` or `A_{i+1}`): move every
//!   into-branch (`B_i`, `B_{i+1}`) to the other endpoint, then exchange labels;
//! * adjacent, vertex 1 in `B_i`: move only the branch holding vertex 1 to
//!   `i + 1`, then exchange labels.
//!
//! Vertex 1 in `B_{i+1}` would put `i` and `i + 1` in the same block.

use crate::error::{Error, Result};
use crate::model::LabelledTree;
use crate::treemap::phi;

/// Where vertex 1 sits relative to the edge `{i, i+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootSide {
    AwayFromLow,
    AwayFromHigh,
    IntoLow,
    IntoHigh,
}

/// A branch hanging off `i` or `i + 1`: the neighbour it attaches through and
/// all of its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub attach: usize,
    pub vertices: Vec<usize>,
}

/// The split of a tree around an edge `{i, i+1}`.
///
/// `low` is `i`, `high` is `i + 1`. Branches whose edge points away from the
/// endpoint (neighbour label larger) are "away", the others "into". The side
/// of `i` is `{i}` plus its branches, likewise for `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborSplit {
    pub low: usize,
    pub away_low: Vec<Branch>,
    pub into_low: Vec<Branch>,
    pub away_high: Vec<Branch>,
    pub into_high: Vec<Branch>,
    pub root_side: RootSide,
}

impl NeighborSplit {
    pub fn high(&self) -> usize {
        self.low + 1
    }

    /// `B'_i`: the into-branch of `i` holding vertex 1, if any.
    pub fn root_branch(&self) -> Option<&Branch> {
        self.into_low.iter().find(|b| b.vertices.contains(&1))
    }

    /// Vertices on the side of `endpoint` (`i` or `i + 1`), sorted.
    pub fn side(&self, endpoint: usize) -> Vec<usize> {
        let branches = if endpoint == self.low {
            self.away_low.iter().chain(&self.into_low)
        } else {
            self.away_high.iter().chain(&self.into_high)
        };
        let mut out: Vec<usize> =
            branches.flat_map(|b| b.vertices.iter().copied()).chain([endpoint]).collect();
        out.sort_unstable();
        out
    }
}

/// Splits `tree` around the edge `{i, i+1}`; errors if they are not adjacent.
pub fn neighbor_split(tree: &LabelledTree, i: usize) -> Result<NeighborSplit> {
    check_index(tree, i)?;
    if !tree.has_edge(i, i + 1) {
        return Err(Error::Precondition(format!("{i} and {} are not adjacent", i + 1)));
    }
    let adj = tree.adjacency();
    let branches = |centre: usize, other: usize| -> (Vec<Branch>, Vec<Branch>) {
        let mut away = Vec::new();
        let mut into = Vec::new();
        for &u in &adj[centre] {
            if u == other {
                continue;
            }
            let branch = Branch { attach: u, vertices: component(&adj, u, centre) };
            if u > centre {
                away.push(branch);
            } else {
                into.push(branch);
            }
        }
        (away, into)
    };
    let (away_low, into_low) = branches(i, i + 1);
    let (away_high, into_high) = branches(i + 1, i);
    let holds_root = |bs: &[Branch]| bs.iter().any(|b| b.vertices.contains(&1));
    let root_side = if holds_root(&away_low) {
        RootSide::AwayFromLow
    } else if holds_root(&away_high) {
        RootSide::AwayFromHigh
    } else if holds_root(&into_low) {
        RootSide::IntoLow
    } else {
        RootSide::IntoHigh
    };
    Ok(NeighborSplit { low: i, away_low, into_low, away_high, into_high, root_side })
}

fn component(adj: &[Vec<usize>], start: usize, blocked: usize) -> Vec<usize> {
    let mut seen = vec![false; adj.len()];
    seen[blocked] = true;
    seen[start] = true;
    let mut stack = vec![start];
    let mut out = Vec::new();
    while let Some(v) = stack.pop() {
        out.push(v);
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    out.sort_unstable();
    out
}

fn check_index(tree: &LabelledTree, i: usize) -> Result<()> {
    let n = tree.n();
    if i < 2 || i + 1 > n {
        return Err(Error::Precondition(format!("index {i} outside [2,{}]", n as i64 - 1)));
    }
    Ok(())
}

fn transpose(v: usize, i: usize) -> usize {
    match v {
        _ if v == i => i + 1,
        _ if v == i + 1 => i,
        _ => v,
    }
}

/// The involution for the adjacent transposition `(i, i+1)`.
///
/// Requires `2 <= i <= n - 1` and `i`, `i + 1` in different blocks of
/// `phi(tree)`. The result maps under `phi` to `phi(tree)` with `i` and
/// `i + 1` exchanged. Fixed points exist only when `{i}` and `{i+1}` are
/// both singleton blocks, i.e. when the transposition fixes the partition.
pub fn swap_involution(tree: &LabelledTree, i: usize) -> Result<LabelledTree> {
    check_index(tree, i)?;
    let pi = phi(tree);
    if pi.same_block(i, i + 1) {
        return Err(Error::SameBlock { i, pi: pi.to_string() });
    }
    let n = tree.n();
    if !tree.has_edge(i, i + 1) {
        let edges = tree.edges().iter().map(|&(u, v)| (transpose(u, i), transpose(v, i)));
        return LabelledTree::new(n, edges);
    }

    let split = neighbor_split(tree, i)?;
    // edges re-pointed before the labels are exchanged: (old endpoint, attach)
    let moved: Vec<(usize, usize)> = match split.root_side {
        RootSide::AwayFromLow | RootSide::AwayFromHigh => split
            .into_low
            .iter()
            .map(|b| (i, b.attach))
            .chain(split.into_high.iter().map(|b| (i + 1, b.attach)))
            .collect(),
        RootSide::IntoLow => {
            let branch = split.root_branch().expect("vertex 1 lies in an into-branch of i");
            vec![(i, branch.attach)]
        }
        RootSide::IntoHigh => {
            return Err(Error::SameBlock { i, pi: pi.to_string() });
        }
    };
    let edges = tree.edges().iter().map(|&(u, v)| {
        let (u, v) = match moved.iter().find(|&&(end, attach)| (u, v) == (attach.min(end), attach.max(end))) {
            Some(&(end, attach)) => (attach, if end == i { i + 1 } else { i }),
            None => (u, v),
        };
        (transpose(u, i), transpose(v, i))
    });
    LabelledTree::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::all_trees;
    use crate::model::parse_tree;

    fn nine() -> LabelledTree {
        parse_tree("9\n1 7\n3 7\n1 9\n6 9\n5 9\n2 5\n4 5\n5 8\n").unwrap()
    }

    #[test]
    fn non_adjacent_swap_relabels() {
        let t = nine();
        assert!(!t.has_edge(6, 7));
        let swapped = swap_involution(&t, 6).unwrap();
        assert_eq!(phi(&swapped), phi(&t).swap_adjacent(6));
        assert_eq!(phi(&swapped).to_string(), "8/5,7,9/3,6/2,4");
        let changed: Vec<_> = t
            .edges()
            .iter()
            .filter(|e| !swapped.edges().contains(e))
            .collect();
        assert!(changed.iter().all(|&&(u, v)| [u, v].iter().any(|&w| w == 6 || w == 7)));
        assert_eq!(swap_involution(&swapped, 6).unwrap(), t);
    }

    #[test]
    fn same_block_is_rejected() {
        let t = nine();
        assert!(matches!(swap_involution(&t, 1), Err(Error::Precondition(_))));
        assert!(matches!(swap_involution(&t, 9), Err(Error::Precondition(_))));
        // 5 and 6 both sit in the block 5,6,9
        assert!(matches!(swap_involution(&t, 5), Err(Error::SameBlock { i: 5, .. })));
        let star = LabelledTree::new(4, [(1, 4), (2, 4), (3, 4)]).unwrap();
        assert!(matches!(swap_involution(&star, 2), Err(Error::SameBlock { i: 2, .. })));
    }

    #[test]
    fn split_of_adjacent_pair() {
        // 1 - 3 - 4, 2 - 3, 4 - 5: i = 3 adjacent to 4, vertex 1 in B_3
        let t = LabelledTree::new(5, [(1, 3), (2, 3), (3, 4), (4, 5)]).unwrap();
        let split = neighbor_split(&t, 3).unwrap();
        assert_eq!(split.root_side, RootSide::IntoLow);
        assert_eq!(split.root_branch().unwrap().vertices, vec![1]);
        assert_eq!(split.into_low.len(), 2);
        assert_eq!(split.away_high[0].vertices, vec![5]);
        assert_eq!(split.side(3), vec![1, 2, 3]);
        assert_eq!(split.side(4), vec![4, 5]);
        assert!(neighbor_split(&nine(), 6).is_err());
    }

    #[test]
    fn exhaustive_small_cases() {
        for n in 3..=5 {
            for t in all_trees(n) {
                let pi = phi(&t);
                for i in 2..n {
                    if pi.same_block(i, i + 1) {
                        assert!(swap_involution(&t, i).is_err());
                        continue;
                    }
                    let s = swap_involution(&t, i).unwrap();
                    // with {i} and {i+1} both singletons s_i fixes pi and
                    // plain relabelling can fix the tree
                    if pi.swap_adjacent(i) != pi {
                        assert_ne!(s, t);
                    }
                    assert_eq!(phi(&s), pi.swap_adjacent(i), "tree {t:?}, i = {i}");
                    assert_eq!(swap_involution(&s, i).unwrap(), t);
                }
            }
        }
    }
}
