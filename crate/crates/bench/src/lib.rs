//! Fixed workloads shared by the benchmarks.

use treepart::codec::classic_prufer_decode;
use treepart::treemap::phi;
use treepart::{LabelledTree, SetPartition};

/// `count` trees on `[n]` from a fixed linear congruential walk over Prüfer
/// sequences, each paired with its own `phi` and with the finest partition.
pub fn workload(n: usize, count: usize) -> Vec<(LabelledTree, SetPartition, SetPartition)> {
    assert!(n >= 2);
    let mut state: u64 = 0x2545_f491_4f6c_dd1d;
    (0..count)
        .map(|_| {
            let seq: Vec<usize> = (0..n - 2)
                .map(|_| {
                    state = state.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
                    (state >> 33) as usize % n + 1
                })
                .collect();
            let tree = classic_prufer_decode(n, &seq).expect("valid sequence");
            let pi = phi(&tree);
            (tree, pi, SetPartition::finest(n))
        })
        .collect()
}
