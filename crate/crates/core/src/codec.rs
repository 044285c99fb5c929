//! Generalized Prüfer codes.
//!
//! For a partition `sigma` of `[2, n]` with `k` blocks, [`encode`] maps every
//! tree whose `phi`-image coarsens `sigma` to a word in `[n]^(k-1)`, and
//! [`decode`] inverts it. Blocks are compared by their minima; the "largest"
//! block is the one with the largest minimum, which is the first block in the
//! canonical order of [`SetPartition`].

use crate::error::{Error, Result};
use crate::model::{CodeWord, LabelledTree, SetPartition};
use crate::treemap::{check_refines_phi, cut_points, phi};

/// Repeatedly removes the largest leaf-star and records its cut point. The
/// last record is always 1 and is dropped.
pub fn encode(sigma: &SetPartition, tree: &LabelledTree) -> Result<CodeWord> {
    let n = tree.n();
    let parents = tree.parents();
    check_refines_phi(tree, &parents, sigma)?;
    let cuts = cut_points(sigma, &parents)?;
    let k = sigma.len();

    // number of remaining stars whose cut point is the vertex
    let mut cut_load = vec![0usize; n + 1];
    for &c in &cuts {
        cut_load[c] += 1;
    }
    let mut removed = vec![false; k];
    let mut record = Vec::with_capacity(k);
    for _ in 0..k {
        let next = (0..k)
            .find(|&b| !removed[b] && sigma.blocks()[b].iter().all(|&x| cut_load[x] == 0))
            .ok_or_else(|| Error::Structure(format!("no leaf-star left while encoding {sigma}")))?;
        removed[next] = true;
        cut_load[cuts[next]] -= 1;
        record.push(cuts[next]);
    }
    if let Some(last) = record.pop() {
        if last != 1 {
            return Err(Error::Structure(format!("last star attached to {last}, not 1")));
        }
    }
    CodeWord::new(n, record)
}

/// Rebuilds the tree from `sigma` and a word of length `|sigma| - 1`.
pub fn decode(sigma: &SetPartition, omega: &CodeWord) -> Result<LabelledTree> {
    let n = sigma.n();
    if omega.n() != n {
        return Err(Error::GroundSetMismatch { left: n, right: omega.n() });
    }
    let k = sigma.len();
    if omega.len() + 1 != k.max(1) {
        return Err(Error::InvalidCodeWord(format!(
            "{sigma} has {k} blocks, so the word needs length {}, got {}",
            k.saturating_sub(1),
            omega.len()
        )));
    }
    let mut word = omega.symbols().to_vec();
    word.push(1);

    let mut used = vec![false; k];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..k {
        let pending = &word[i..k - 1];
        let pick = (0..k)
            .find(|&b| !used[b] && sigma.blocks()[b].iter().all(|x| !pending.contains(x)))
            .ok_or_else(|| {
                Error::Structure(format!("no admissible block at step {} of decoding", i + 1))
            })?;
        used[pick] = true;
        let block = &sigma.blocks()[pick];
        let anchor = word[i];
        let top = *block.last().expect("blocks are nonempty");
        if top > anchor {
            edges.extend(block[..block.len() - 1].iter().map(|&b| (b, top)));
            edges.push((anchor, top));
        } else {
            edges.extend(block.iter().map(|&b| (b, anchor)));
        }
    }
    LabelledTree::new(n, edges).map_err(|e| Error::Structure(format!("decoded edges: {e}")))
}

/// `T -> (phi(T), encode(phi(T), T))`, injective over all trees on `[n]`.
pub fn phi_prime(tree: &LabelledTree) -> Result<(SetPartition, CodeWord)> {
    let pi = phi(tree);
    let word = encode(&pi, tree)?;
    Ok((pi, word))
}

/// The textbook Prüfer decoding of a sequence in `[n]^(n-2)`.
pub fn classic_prufer_decode(n: usize, seq: &[usize]) -> Result<LabelledTree> {
    if n < 2 {
        return Err(Error::InvalidCodeWord(format!("Prüfer codes need n >= 2, got {n}")));
    }
    if seq.len() != n - 2 {
        return Err(Error::InvalidCodeWord(format!(
            "Prüfer code for n = {n} has length {}, got {}",
            n - 2,
            seq.len()
        )));
    }
    if let Some(&s) = seq.iter().find(|&&s| s == 0 || s > n) {
        return Err(Error::InvalidCodeWord(format!("symbol {s} outside [1,{n}]")));
    }
    let mut degree = vec![1usize; n + 1];
    degree[0] = 0;
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (1..=n).find(|&v| degree[v] == 1).expect("a leaf always exists");
        edges.push((leaf, s));
        degree[leaf] = 0;
        degree[s] -= 1;
    }
    let mut last = (1..=n).filter(|&v| degree[v] == 1);
    let (u, v) = (last.next().expect("two vertices remain"), last.next().expect("two vertices remain"));
    edges.push((u, v));
    LabelledTree::new(n, edges)
}

/// The textbook Prüfer code: repeatedly strip the smallest leaf and record
/// its neighbour.
pub fn classic_prufer_encode(tree: &LabelledTree) -> Vec<usize> {
    let n = tree.n();
    if n < 3 {
        return Vec::new();
    }
    let adj = tree.adjacency();
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut gone = vec![false; n + 1];
    let mut code = Vec::with_capacity(n - 2);
    for _ in 0..n - 2 {
        let leaf = (1..=n).find(|&v| !gone[v] && degree[v] == 1).expect("a leaf always exists");
        let neighbour = adj[leaf].iter().copied().find(|&w| !gone[w]).expect("leaf has a neighbour");
        code.push(neighbour);
        gone[leaf] = true;
        degree[neighbour] -= 1;
    }
    code
}

/// True iff `short` embeds order-preservingly in `long`.
pub fn is_subsequence(short: &CodeWord, long: &CodeWord) -> bool {
    let mut rest = long.symbols().iter();
    short.symbols().iter().all(|s| rest.any(|l| l == s))
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::model::{parse_code_word, parse_partition, parse_tree};

    fn nine() -> LabelledTree {
        parse_tree("9\n1 7\n3 7\n1 9\n6 9\n5 9\n2 5\n4 5\n5 8\n").unwrap()
    }

    fn word(text: &str, n: usize) -> CodeWord {
        parse_code_word(text, n).unwrap()
    }

    #[test]
    fn encodes_nine_vertex_tree() {
        let sigma = parse_partition("8/7/6/5,9/3/2,4", 9).unwrap();
        assert_eq!(encode(&sigma, &nine()).unwrap(), word("5,9,7,1,5", 9));
        let pi = parse_partition("8/5,6,9/3,7/2,4", 9).unwrap();
        assert_eq!(encode(&pi, &nine()).unwrap(), word("5,1,5", 9));
        assert_eq!(encode(&SetPartition::coarsest(9), &nine()), Err(Error::Refinement {
            sigma: "2,3,4,5,6,7,8,9".into(),
            pi: "8/5,6,9/3,7/2,4".into(),
        }));
    }

    #[test]
    fn one_block_encodes_to_empty_word() {
        let star = LabelledTree::new(5, [(1, 5), (2, 5), (3, 5), (4, 5)]).unwrap();
        assert!(encode(&SetPartition::coarsest(5), &star).unwrap().is_empty());
        assert!(encode(&SetPartition::coarsest(1), &LabelledTree::trivial()).unwrap().is_empty());
    }

    #[test]
    fn decodes_nine_vertex_tree() {
        let sigma = parse_partition("8/7/6/5,9/3/2,4", 9).unwrap();
        assert_eq!(decode(&sigma, &word("5,9,7,1,5", 9)).unwrap(), nine());
        let pi = parse_partition("8/5,6,9/3,7/2,4", 9).unwrap();
        assert_eq!(decode(&pi, &word("5,1,5", 9)).unwrap(), nine());
    }

    #[test]
    fn one_block_decodes_to_star_at_n() {
        let tree = decode(&SetPartition::coarsest(6), &CodeWord::empty(6)).unwrap();
        assert_eq!(tree.edges(), &[(1, 6), (2, 6), (3, 6), (4, 6), (5, 6)]);
        assert_eq!(decode(&SetPartition::coarsest(1), &CodeWord::empty(1)).unwrap(), LabelledTree::trivial());
    }

    #[test]
    fn decode_rejects_bad_length() {
        let sigma = parse_partition("4/3/2", 4).unwrap();
        assert!(matches!(decode(&sigma, &word("1", 4)), Err(Error::InvalidCodeWord(_))));
        assert!(matches!(decode(&sigma, &word("1,1", 5)), Err(Error::GroundSetMismatch { .. })));
    }

    #[test]
    fn singletons_on_four_give_all_cayley_trees() {
        let sigma = SetPartition::finest(4);
        let mut trees = BTreeSet::new();
        for a in 1..=4 {
            for b in 1..=4 {
                let w = word(&format!("{a},{b}"), 4);
                let t = decode(&sigma, &w).unwrap();
                assert_eq!(encode(&sigma, &t).unwrap(), w);
                trees.insert(t);
            }
        }
        assert_eq!(trees.len(), 16);
    }

    #[test]
    fn phi_prime_of_nine_vertex_tree() {
        let (pi, w) = phi_prime(&nine()).unwrap();
        assert_eq!(pi.to_string(), "8/5,6,9/3,7/2,4");
        assert_eq!(w, word("5,1,5", 9));
    }

    #[test]
    fn classic_prufer_examples() {
        assert_eq!(classic_prufer_decode(3, &[1]).unwrap().edges(), &[(1, 2), (1, 3)]);
        assert_eq!(classic_prufer_decode(2, &[]).unwrap().edges(), &[(1, 2)]);
        let all: BTreeSet<LabelledTree> = (1..=4)
            .flat_map(|a| (1..=4).map(move |b| classic_prufer_decode(4, &[a, b]).unwrap()))
            .collect();
        assert_eq!(all.len(), 16);
        for t in &all {
            assert_eq!(classic_prufer_decode(4, &classic_prufer_encode(t)).unwrap(), *t);
        }
        assert!(classic_prufer_decode(4, &[5, 1]).is_err());
        assert!(classic_prufer_decode(4, &[1]).is_err());
    }

    #[test]
    fn subsequences() {
        assert!(is_subsequence(&word("5,1,5", 9), &word("5,9,7,1,5", 9)));
        assert!(is_subsequence(&CodeWord::empty(3), &word("3,1", 3)));
        assert!(!is_subsequence(&word("1,2", 3), &word("2,1", 3)));
        assert!(!is_subsequence(&word("1,1", 3), &word("1", 3)));
    }
}
