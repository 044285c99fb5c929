//! Generators and properties shared by the property tests and the acceptance run.

#![allow(dead_code)]

use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestError, TestRng, TestRunner};

use treepart::codec::{classic_prufer_decode, classic_prufer_encode, decode, encode};
use treepart::involution::swap_involution;
use treepart::lattice::{mobius, mobius_product, refines};
use treepart::treemap::phi;
use treepart::{parse_partition, parse_tree, CodeWord, LabelledTree, SetPartition};

pub const MAX_N: usize = 12;
pub const CASES: u32 = 256;
const SEED: [u8; 32] = *b"treepart property seed 000000001";

/// Runs `test` over `CASES` inputs drawn from `strategy` with a fixed seed.
pub fn check<S: Strategy>(
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    let config = Config { cases: CASES, failure_persistence: None, ..Config::default() };
    let mut runner =
        TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &SEED));
    runner.run(&strategy, test).map_err(|e| match e {
        TestError::Fail(why, value) => format!("{why} for {value:?}"),
        TestError::Abort(why) => format!("aborted: {why}"),
    })
}

/// Draws a single value, for tests that want a sample.
pub fn sample<S: Strategy>(strategy: S) -> S::Value {
    let mut runner = TestRunner::deterministic();
    strategy.new_tree(&mut runner).unwrap().current()
}

fn group(n: usize, labels: &[usize]) -> SetPartition {
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); labels.len() + 1];
    for (offset, &l) in labels.iter().enumerate() {
        blocks[l].push(offset + 2);
    }
    SetPartition::new(n, blocks.into_iter().filter(|b| !b.is_empty())).unwrap()
}

pub fn partition_on(n: usize) -> impl Strategy<Value = SetPartition> {
    let k = n.saturating_sub(1);
    prop::collection::vec(0..k.max(1), k).prop_map(move |labels| group(n, &labels))
}

pub fn partition(max_n: usize) -> impl Strategy<Value = SetPartition> {
    (1..=max_n).prop_flat_map(partition_on)
}

pub fn tree_on(n: usize) -> impl Strategy<Value = LabelledTree> {
    prop::collection::vec(1..=n, n.saturating_sub(2)).prop_map(move |seq| {
        if n == 1 {
            LabelledTree::trivial()
        } else {
            classic_prufer_decode(n, &seq).unwrap()
        }
    })
}

pub fn tree(max_n: usize) -> impl Strategy<Value = LabelledTree> {
    (1..=max_n).prop_flat_map(tree_on)
}

/// Splits every block of `pi` by the residues in `cuts`.
pub fn split(pi: &SetPartition, cuts: &[usize]) -> SetPartition {
    let mut blocks = Vec::new();
    for block in pi.blocks() {
        let parts = block.len();
        let mut pieces = vec![Vec::new(); parts];
        for &x in block {
            pieces[cuts[x - 2] % parts].push(x);
        }
        blocks.extend(pieces.into_iter().filter(|p| !p.is_empty()));
    }
    SetPartition::new(pi.n(), blocks).unwrap()
}

/// Merges blocks of `pi` by the labels in `glue` (one per block).
pub fn coarsen(pi: &SetPartition, glue: &[usize]) -> SetPartition {
    let k = pi.len();
    let mut blocks = vec![Vec::new(); k.max(1)];
    for (idx, block) in pi.blocks().iter().enumerate() {
        blocks[glue[idx] % k].extend_from_slice(block);
    }
    SetPartition::new(pi.n(), blocks.into_iter().filter(|b| !b.is_empty())).unwrap()
}

fn residues(n: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..MAX_N, n.saturating_sub(1))
}

// ---- properties ----

pub fn partition_text_round_trip() -> Result<(), String> {
    check(partition(MAX_N), |pi| {
        let text = pi.to_string();
        prop_assert_eq!(parse_partition(&text, pi.n()).unwrap(), pi.clone());
        let json = serde_json::to_string(&pi).unwrap();
        prop_assert_eq!(serde_json::from_str::<SetPartition>(&json).unwrap(), pi);
        Ok(())
    })
}

pub fn tree_text_round_trip() -> Result<(), String> {
    check(tree(MAX_N), |t| {
        prop_assert_eq!(parse_tree(&t.to_text()).unwrap(), t.clone());
        let json = serde_json::to_string(&t).unwrap();
        prop_assert_eq!(serde_json::from_str::<LabelledTree>(&json).unwrap(), t.clone());
        if t.n() >= 2 {
            let seq = classic_prufer_encode(&t);
            prop_assert_eq!(classic_prufer_decode(t.n(), &seq).unwrap(), t);
        }
        Ok(())
    })
}

pub fn refinement_order_laws() -> Result<(), String> {
    let triple = (1..=MAX_N).prop_flat_map(|n| {
        (partition_on(n), residues(n), residues(n), partition_on(n))
    });
    check(triple, |(rho, cut1, cut2, other)| {
        let pi = split(&rho, &cut1);
        let sigma = split(&pi, &cut2);
        prop_assert!(refines(&sigma, &sigma).unwrap());
        prop_assert!(refines(&sigma, &pi).unwrap() && refines(&pi, &rho).unwrap());
        prop_assert!(refines(&sigma, &rho).unwrap());
        if refines(&rho, &sigma).unwrap() {
            prop_assert_eq!(&rho, &sigma);
        }
        let both = refines(&other, &pi).unwrap() && refines(&pi, &other).unwrap();
        prop_assert_eq!(both, other == pi);
        prop_assert!(refines(&SetPartition::finest(rho.n()), &other).unwrap());
        if rho.n() > 1 {
            prop_assert!(refines(&other, &SetPartition::coarsest(rho.n())).unwrap());
        }
        Ok(())
    })
}

pub fn mobius_matches_product() -> Result<(), String> {
    let pair = (1..=8usize).prop_flat_map(|n| (partition_on(n), residues(n)));
    check(pair, |(pi, glue)| {
        let sigma = coarsen(&pi, &glue);
        prop_assert_eq!(mobius(&pi, &sigma).unwrap(), mobius_product(&pi, &sigma).unwrap());
        Ok(())
    })
}

pub fn decode_is_always_feasible() -> Result<(), String> {
    let input = (1..=MAX_N).prop_flat_map(|n| {
        partition_on(n).prop_flat_map(move |sigma| {
            let len = sigma.len().saturating_sub(1);
            (Just(sigma), prop::collection::vec(1..=n, len))
        })
    });
    check(input, |(sigma, symbols)| {
        let omega = CodeWord::new(sigma.n(), symbols).unwrap();
        let t = decode(&sigma, &omega).unwrap();
        prop_assert!(refines(&sigma, &phi(&t)).unwrap());
        prop_assert_eq!(encode(&sigma, &t).unwrap(), omega);
        Ok(())
    })
}

pub fn encode_then_decode_is_identity() -> Result<(), String> {
    let input = (1..=MAX_N).prop_flat_map(|n| (tree_on(n), residues(n)));
    check(input, |(t, cuts)| {
        let sigma = split(&phi(&t), &cuts);
        let word = encode(&sigma, &t).unwrap();
        prop_assert_eq!(word.len(), sigma.len().saturating_sub(1));
        prop_assert_eq!(decode(&sigma, &word).unwrap(), t);
        Ok(())
    })
}

pub fn involution_on_random_trees() -> Result<(), String> {
    let input = (3..=MAX_N).prop_flat_map(|n| (tree_on(n), 2..n));
    check(input, |(t, i)| {
        let pi = phi(&t);
        match swap_involution(&t, i) {
            Err(_) => prop_assert!(pi.same_block(i, i + 1)),
            Ok(s) => {
                prop_assert_eq!(phi(&s), pi.swap_adjacent(i));
                prop_assert_eq!(swap_involution(&s, i).unwrap(), t.clone());
                if pi.swap_adjacent(i) != pi {
                    prop_assert_ne!(s, t);
                }
            }
        }
        Ok(())
    })
}

pub const ALL: [(&str, fn() -> Result<(), String>); 7] = [
    ("partition text/JSON round trip", partition_text_round_trip),
    ("tree text/JSON/Pruefer round trip", tree_text_round_trip),
    ("refinement order laws", refinement_order_laws),
    ("Moebius recursion equals product formula", mobius_matches_product),
    ("decode feasible on every word", decode_is_always_feasible),
    ("decode(encode(T)) = T", encode_then_decode_is_identity),
    ("involution on random trees", involution_on_random_trees),
];
