//! Edge orientation, the tree-to-partition map, star decompositions and the
//! top-edge contraction.
//!
//! Every edge `{u, v}` with `u < v` points `u -> v`. Hanging the tree from
//! vertex 1, the edge joining `b` to its parent carries the label `b`. The map
//! [`phi`] groups labels by the head of their edge.

use crate::error::{Error, Result};
use crate::lattice::refines;
use crate::model::{IntegerPartition, LabelledTree, SetPartition};

/// A directed edge `tail -> head` with `tail < head`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirectedEdge {
    pub tail: usize,
    pub head: usize,
}

pub fn orient_edges(tree: &LabelledTree) -> Vec<DirectedEdge> {
    tree.edges().iter().map(|&(tail, head)| DirectedEdge { tail, head }).collect()
}

/// In-degree of every vertex (index 0 unused).
pub fn indegrees(tree: &LabelledTree) -> Vec<usize> {
    let mut deg = vec![0; tree.n() + 1];
    for &(_, v) in tree.edges() {
        deg[v] += 1;
    }
    deg
}

/// The nonzero in-degrees, weakly decreasing; a partition of `n - 1`.
pub fn indegree_partition(tree: &LabelledTree) -> IntegerPartition {
    IntegerPartition::from_parts_unchecked(
        indegrees(tree).into_iter().filter(|&d| d > 0).collect(),
    )
}

/// Groups the edge labels `2..=n` by the head of the labelled edge.
pub fn phi(tree: &LabelledTree) -> SetPartition {
    phi_with_parents(tree.n(), &tree.parents())
}

pub(crate) fn phi_with_parents(n: usize, parents: &[usize]) -> SetPartition {
    let mut by_head: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for b in 2..=n {
        by_head[b.max(parents[b])].push(b);
    }
    let blocks = by_head.into_iter().filter(|b| !b.is_empty()).collect();
    SetPartition::from_canonical_parts(n, blocks)
}

/// `Star(B)`: the vertices of `B` together with the edges labelled by `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Star {
    pub block: Vec<usize>,
    /// Canonical `(u, v)`, `u < v`, one per element of the block.
    pub edges: Vec<(usize, usize)>,
    pub cut_point: usize,
    pub leaf: bool,
}

/// Decomposition of a tree into stars, one per block of `sigma`, in the
/// block order of `sigma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarDecomposition {
    pub sigma: SetPartition,
    pub stars: Vec<Star>,
}

impl StarDecomposition {
    pub fn leaf_blocks(&self) -> impl Iterator<Item = &[usize]> {
        self.stars.iter().filter(|s| s.leaf).map(|s| s.block.as_slice())
    }
}

/// The star decomposition of `tree` with respect to `sigma`, which must
/// refine `phi(tree)`.
pub fn decompose(tree: &LabelledTree, sigma: &SetPartition) -> Result<StarDecomposition> {
    let parents = tree.parents();
    check_refines_phi(tree, &parents, sigma)?;
    let cuts = cut_points(sigma, &parents)?;
    let mut is_cut = vec![false; tree.n() + 1];
    for &c in &cuts {
        is_cut[c] = true;
    }
    let stars = sigma
        .blocks()
        .iter()
        .zip(&cuts)
        .map(|(block, &cut_point)| {
            let mut edges: Vec<(usize, usize)> =
                block.iter().map(|&b| (b.min(parents[b]), b.max(parents[b]))).collect();
            edges.sort_unstable();
            let leaf = block.iter().all(|&b| !is_cut[b]);
            Star { block: block.clone(), edges, cut_point, leaf }
        })
        .collect();
    Ok(StarDecomposition { sigma: sigma.clone(), stars })
}

pub(crate) fn check_refines_phi(
    tree: &LabelledTree,
    parents: &[usize],
    sigma: &SetPartition,
) -> Result<SetPartition> {
    if sigma.n() != tree.n() {
        return Err(Error::GroundSetMismatch { left: sigma.n(), right: tree.n() });
    }
    let pi = phi_with_parents(tree.n(), parents);
    if !refines(sigma, &pi)? {
        return Err(Error::Refinement { sigma: sigma.to_string(), pi: pi.to_string() });
    }
    Ok(pi)
}

/// Cut point of every block of `sigma`: the unique endpoint of a star edge
/// lying outside the block.
pub(crate) fn cut_points(sigma: &SetPartition, parents: &[usize]) -> Result<Vec<usize>> {
    let index = sigma.block_index();
    sigma
        .blocks()
        .iter()
        .enumerate()
        .map(|(bi, block)| {
            let mut found: Option<usize> = None;
            for &b in block {
                for end in [b, parents[b]] {
                    if index[end] == bi {
                        continue;
                    }
                    match found {
                        None => found = Some(end),
                        Some(c) if c == end => {}
                        Some(c) => {
                            return Err(Error::Structure(format!(
                                "star of block {block:?} has several cut points ({c}, {end})"
                            )))
                        }
                    }
                }
            }
            found.ok_or_else(|| {
                Error::Structure(format!("star of block {block:?} has no cut point"))
            })
        })
        .collect()
}

/// How the top edge contraction changed the partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Contraction {
    /// `n - 1` had in-degree 0: the contracted tree maps to the partition with
    /// `n` dropped from its block.
    DropTop,
    /// `n - 1` had positive in-degree: its in-block (index into the blocks of
    /// `phi` of the original tree) is absorbed into the block of `n`.
    Absorb { block: usize },
}

/// Contracts the edge `{n-1, n}` and deletes the label `n`.
///
/// Requires `n >= 3` and `n - 1`, `n` in the same block of `phi(tree)`,
/// which forces the two vertices to be adjacent.
pub fn contract_top(tree: &LabelledTree) -> Result<(LabelledTree, Contraction)> {
    let n = tree.n();
    if n < 3 {
        return Err(Error::Precondition(format!("contraction needs n >= 3, got {n}")));
    }
    let pi = phi(tree);
    if !pi.same_block(n - 1, n) {
        return Err(Error::Precondition(format!(
            "{} and {n} are not in the same block of {pi}",
            n - 1
        )));
    }
    if !tree.has_edge(n - 1, n) {
        return Err(Error::Precondition(format!("{} and {n} are not adjacent", n - 1)));
    }
    let indeg = indegrees(tree);
    let case = if indeg[n - 1] == 0 {
        Contraction::DropTop
    } else {
        let index = pi.block_index();
        let child = tree
            .edges()
            .iter()
            .find(|&&(u, v)| v == n - 1 && u < n - 1)
            .map(|&(u, _)| u)
            .expect("positive in-degree");
        Contraction::Absorb { block: index[child] }
    };
    let edges = tree
        .edges()
        .iter()
        .filter(|&&e| e != (n - 1, n))
        .map(|&(u, v)| (u, if v == n { n - 1 } else { v }));
    let contracted = LabelledTree::new(n - 1, edges)?;
    Ok((contracted, case))
}

/// Inverse of [`contract_top`] on the fiber of `pi`: splits vertex `n - 1`
/// of `contracted` back into `n - 1` and `n`, where `n = pi.n()`.
pub fn expand_top(contracted: &LabelledTree, pi: &SetPartition) -> Result<LabelledTree> {
    let n = pi.n();
    if n < 3 || contracted.n() != n - 1 || !pi.same_block(n - 1, n) {
        return Err(Error::Precondition(format!(
            "expansion needs a tree on [n-1] and {} co-blocked with {n} in {pi}",
            n - 1
        )));
    }
    let top: Vec<usize> = pi.blocks()[pi.block_index()[n]].clone();
    let parents = contracted.parents();
    let merged = n - 1;
    let up = parents[merged];
    let mut edges = Vec::with_capacity(n - 1);
    for &(u, v) in contracted.edges() {
        let other = if u == merged {
            v
        } else if v == merged {
            u
        } else {
            edges.push((u, v));
            continue;
        };
        if other == up || top.contains(&other) {
            edges.push((other, n));
        } else {
            edges.push((other, merged));
        }
    }
    edges.push((merged, n));
    LabelledTree::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{parse_partition, parse_tree};

    fn nine() -> LabelledTree {
        parse_tree("9\n1 7\n3 7\n1 9\n6 9\n5 9\n2 5\n4 5\n5 8\n").unwrap()
    }

    fn star(n: usize, center: usize) -> LabelledTree {
        LabelledTree::new(n, (1..=n).filter(|&v| v != center).map(|v| (v, center))).unwrap()
    }

    #[test]
    fn orientation_of_nine_vertex_tree() {
        let arrows: Vec<(usize, usize)> =
            orient_edges(&nine()).into_iter().map(|e| (e.tail, e.head)).collect();
        let mut expected = vec![(1, 7), (3, 7), (1, 9), (6, 9), (5, 9), (2, 5), (4, 5), (5, 8)];
        expected.sort_unstable();
        assert_eq!(arrows, expected);

        let single = LabelledTree::new(2, [(2, 1)]).unwrap();
        assert_eq!(orient_edges(&single), vec![DirectedEdge { tail: 1, head: 2 }]);
        let path = LabelledTree::new(3, [(1, 3), (3, 2)]).unwrap();
        assert!(orient_edges(&path).iter().all(|e| e.head == 3));
    }

    #[test]
    fn indegree_sequences() {
        assert_eq!(indegree_partition(&nine()).parts(), &[3, 2, 2, 1]);
        assert_eq!(indegree_partition(&star(6, 1)).parts(), &[1; 5]);
        assert_eq!(indegree_partition(&star(6, 6)).parts(), &[5]);
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(&nine()).to_string(), "8/5,6,9/3,7/2,4");
        let path = LabelledTree::new(6, (1..6).map(|v| (v, v + 1))).unwrap();
        assert_eq!(phi(&path), SetPartition::finest(6));
        // all eight edges of the star at 9 point into 9; {1,9} is labelled 9
        assert_eq!(phi(&star(9, 9)), SetPartition::coarsest(9));
        assert_eq!(phi(&LabelledTree::trivial()), SetPartition::coarsest(1));
    }

    #[test]
    fn decomposition_with_respect_to_phi() {
        let t = nine();
        let d = decompose(&t, &phi(&t)).unwrap();
        let cut = |b: &[usize]| d.stars.iter().find(|s| s.block == b).unwrap().cut_point;
        assert_eq!(cut(&[3, 7]), 1);
        assert_eq!(cut(&[2, 4]), 5);
        assert_eq!(cut(&[8]), 5);
        assert_eq!(cut(&[5, 6, 9]), 1);
        let mut leaves: Vec<&[usize]> = d.leaf_blocks().collect();
        leaves.sort();
        assert_eq!(leaves, vec![&[2, 4][..], &[3, 7], &[8]]);
    }

    #[test]
    fn decomposition_of_finer_sigma() {
        let t = nine();
        let sigma = parse_partition("8/7/6/5,9/3/2,4", 9).unwrap();
        let d = decompose(&t, &sigma).unwrap();
        assert_eq!(d.stars.len(), 6);
        let mut all_edges: Vec<_> = d.stars.iter().flat_map(|s| s.edges.clone()).collect();
        all_edges.sort_unstable();
        assert_eq!(all_edges, t.edges());

        let bad = parse_partition("8,7/6/5,9/3/2,4", 9).unwrap();
        assert!(matches!(decompose(&t, &bad), Err(Error::Refinement { .. })));
    }

    #[test]
    fn one_block_decomposition() {
        let t = star(5, 5);
        let d = decompose(&t, &SetPartition::coarsest(5)).unwrap();
        assert_eq!(d.stars.len(), 1);
        assert!(d.stars[0].leaf);
        assert_eq!(d.stars[0].cut_point, 1);
    }

    #[test]
    fn contract_star_at_three() {
        let t = star(3, 3);
        let (small, case) = contract_top(&t).unwrap();
        assert_eq!(small.edges(), &[(1, 2)]);
        assert_eq!(case, Contraction::DropTop);
        assert_eq!(expand_top(&small, &phi(&t)).unwrap(), t);
    }

    #[test]
    fn contract_rejects_separated_top() {
        let path = LabelledTree::new(5, (1..5).map(|v| (v, v + 1))).unwrap();
        assert!(matches!(contract_top(&path), Err(Error::Precondition(_))));
        assert!(matches!(contract_top(&star(2, 2)), Err(Error::Precondition(_))));
    }
}
