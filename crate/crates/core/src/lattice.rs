//! The lattice of set partitions of `[2, n]` under refinement.

use std::cmp::Reverse;

use crate::arith;
use crate::error::{Error, Result};
use crate::model::SetPartition;

/// `sigma ⪯ pi`: every block of `sigma` lies inside a block of `pi`.
pub fn refines(sigma: &SetPartition, pi: &SetPartition) -> Result<bool> {
    if sigma.n() != pi.n() {
        return Err(Error::GroundSetMismatch { left: sigma.n(), right: pi.n() });
    }
    let index = pi.block_index();
    Ok(sigma
        .blocks()
        .iter()
        .all(|block| block.iter().all(|&x| index[x] == index[block[0]])))
}

/// Restricted growth strings of a given length, in lexicographic order.
///
/// A string `a` is restricted growth when `a[0] = 0` and
/// `a[i] <= 1 + max(a[..i])`; each one labels a set partition of
/// `{0, ..., len - 1}` by block.
#[derive(Clone, Debug)]
pub struct RestrictedGrowth {
    labels: Vec<usize>,
    started: bool,
    done: bool,
}

impl RestrictedGrowth {
    pub fn new(len: usize) -> Self {
        RestrictedGrowth { labels: vec![0; len], started: false, done: false }
    }

    fn advance(&mut self) -> bool {
        let len = self.labels.len();
        // prefix maxima are recomputed; strings here are short
        for i in (1..len).rev() {
            let cap = self.labels[..i].iter().max().copied().unwrap_or(0) + 1;
            if self.labels[i] < cap {
                self.labels[i] += 1;
                self.labels[i + 1..].iter_mut().for_each(|l| *l = 0);
                return true;
            }
        }
        false
    }
}

impl Iterator for RestrictedGrowth {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        Some(self.labels.clone())
    }
}

/// Every partition of `[2, n]`, each exactly once; `Bell(n - 1)` of them.
pub fn all_partitions(n: usize) -> impl Iterator<Item = SetPartition> {
    let n = n.max(1);
    RestrictedGrowth::new(n - 1).map(move |labels| SetPartition::from_labels(n, &labels))
}

/// Every `pi ⪰ sigma`, via partitions of the block set of `sigma`.
pub fn coarsenings(sigma: &SetPartition) -> impl Iterator<Item = SetPartition> + '_ {
    RestrictedGrowth::new(sigma.len()).map(move |labels| {
        let groups = labels.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); groups];
        for (block, &l) in sigma.blocks().iter().zip(&labels) {
            blocks[l].extend_from_slice(block);
        }
        for b in &mut blocks {
            b.sort_unstable();
        }
        SetPartition::from_canonical_parts(sigma.n(), blocks)
    })
}

/// Every partition covering `sigma`: two blocks merged.
pub fn covers(sigma: &SetPartition) -> impl Iterator<Item = SetPartition> + '_ {
    let k = sigma.len();
    (0..k).flat_map(move |a| (a + 1..k).map(move |b| sigma.merge(a, b)))
}

/// Bell numbers by the Bell triangle.
pub fn bell(m: usize) -> Result<u128> {
    let mut row = vec![1u128];
    for _ in 0..m {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().expect("nonempty row"));
        for &x in &row {
            let v = arith::add(*next.last().expect("nonempty row"), x, "Bell number")?;
            next.push(v);
        }
        row = next;
    }
    Ok(row[0])
}

/// Möbius values `mu(pi, sigma)` for every `sigma ⪰ pi`, from the defining
/// recursion `mu(pi, pi) = 1`, `sum over [pi, sigma] of mu(pi, .) = 0`.
/// Output is ordered by decreasing block count.
pub fn mobius_upset(pi: &SetPartition) -> Vec<(SetPartition, i128)> {
    let mut up: Vec<SetPartition> = coarsenings(pi).collect();
    up.sort_by_key(|p| Reverse(p.len()));
    let mut values: Vec<i128> = Vec::with_capacity(up.len());
    for (i, sigma) in up.iter().enumerate() {
        let value = if i == 0 {
            1
        } else {
            -up[..i]
                .iter()
                .zip(&values)
                .filter(|(tau, _)| tau.len() > sigma.len() && refines(tau, sigma).unwrap_or(false))
                .map(|(_, &mu)| mu)
                .sum::<i128>()
        };
        values.push(value);
    }
    up.into_iter().zip(values).collect()
}

/// `mu(pi, sigma)` on the partition lattice, computed from the recursion.
pub fn mobius(pi: &SetPartition, sigma: &SetPartition) -> Result<i128> {
    if !refines(pi, sigma)? {
        return Err(Error::Order { lower: pi.to_string(), upper: sigma.to_string() });
    }
    let mut interval: Vec<SetPartition> =
        coarsenings(pi).filter(|tau| refines(tau, sigma).unwrap_or(false)).collect();
    interval.sort_by_key(|p| Reverse(p.len()));
    let mut values: Vec<i128> = Vec::with_capacity(interval.len());
    for (i, tau) in interval.iter().enumerate() {
        let value = if i == 0 {
            1
        } else {
            -interval[..i]
                .iter()
                .zip(&values)
                .filter(|(rho, _)| rho.len() > tau.len() && refines(rho, tau).unwrap_or(false))
                .map(|(_, &mu)| mu)
                .sum::<i128>()
        };
        values.push(value);
    }
    Ok(*values.last().expect("interval contains pi"))
}

/// Product formula: each block of `sigma` made of `b` blocks of `pi`
/// contributes `(-1)^(b-1) (b-1)!`.
pub fn mobius_product(pi: &SetPartition, sigma: &SetPartition) -> Result<i128> {
    if !refines(pi, sigma)? {
        return Err(Error::Order { lower: pi.to_string(), upper: sigma.to_string() });
    }
    let index = sigma.block_index();
    let mut counts = vec![0u128; sigma.len()];
    for block in pi.blocks() {
        counts[index[block[0]]] += 1;
    }
    counts.into_iter().try_fold(1i128, |acc, b| {
        let f = arith::factorial(b - 1)?;
        let f = i128::try_from(f).map_err(|_| Error::Overflow("Möbius value".into()))?;
        let signed = if b % 2 == 0 { -f } else { f };
        acc.checked_mul(signed).ok_or_else(|| Error::Overflow("Möbius value".into()))
    })
}

/// Stirling number of the second kind `S(k, j)`.
pub fn stirling2(k: usize, j: usize) -> Result<u128> {
    if j > k {
        return Ok(0);
    }
    // row[i] = S(m, i) for the current m
    let mut row = vec![0u128; j + 1];
    row[0] = 1;
    for m in 1..=k {
        for i in (1..=j.min(m)).rev() {
            let grown = arith::mul(i as u128, row[i], "Stirling number")?;
            row[i] = arith::add(row[i - 1], grown, "Stirling number")?;
        }
        row[0] = 0;
    }
    Ok(row[j])
}

/// Both sides of `sum_j S(k, j) n (n-1) ... (n-j+1) = n^k`.
pub fn stirling_identity_check(k: usize, n: usize) -> Result<(u128, u128)> {
    let mut lhs = 0u128;
    for j in 0..=k {
        let term = arith::mul(
            stirling2(k, j)?,
            arith::falling_factorial(n as u128, j as u128)?,
            "Stirling identity",
        )?;
        lhs = arith::add(lhs, term, "Stirling identity")?;
    }
    let exp = u32::try_from(k).map_err(|_| Error::Overflow("Stirling identity".into()))?;
    Ok((lhs, arith::pow(n as u128, exp)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_partition;

    fn p(text: &str, n: usize) -> SetPartition {
        parse_partition(text, n).unwrap()
    }

    #[test]
    fn refinement_examples() {
        let sigma = p("8/7/6/5,9/3/2,4", 9);
        let pi = p("8/5,6,9/3,7/2,4", 9);
        assert!(refines(&sigma, &pi).unwrap());
        assert!(!refines(&pi, &sigma).unwrap());
        assert!(refines(&sigma, &sigma).unwrap());
        assert!(!refines(&p("2,3/4", 4), &p("2/3,4", 4)).unwrap());
        assert!(matches!(
            refines(&p("2/3", 3), &p("2,3,4", 4)),
            Err(Error::GroundSetMismatch { .. })
        ));
    }

    #[test]
    fn partition_listing() {
        let three: Vec<String> = all_partitions(3).map(|p| p.to_string()).collect();
        assert_eq!(three, vec!["2,3", "3/2"]);
        let one: Vec<SetPartition> = all_partitions(1).collect();
        assert_eq!(one, vec![SetPartition::coarsest(1)]);
        assert_eq!(all_partitions(6).count() as u128, bell(5).unwrap());
        assert_eq!(bell(5).unwrap(), 52);
    }

    #[test]
    fn bell_numbers() {
        let expected = [1u128, 1, 2, 5, 15, 52, 203, 877, 4140];
        for (m, &b) in expected.iter().enumerate() {
            assert_eq!(bell(m).unwrap(), b);
        }
    }

    #[test]
    fn coarsening_sets() {
        let top = SetPartition::coarsest(5);
        assert_eq!(coarsenings(&top).collect::<Vec<_>>(), vec![top.clone()]);
        let bottom = SetPartition::finest(4);
        let up: Vec<SetPartition> = coarsenings(&bottom).collect();
        assert_eq!(up.len(), 5);
        let mut listed: Vec<SetPartition> = all_partitions(4).collect();
        listed.sort();
        let mut sorted = up.clone();
        sorted.sort();
        assert_eq!(sorted, listed);
    }

    #[test]
    fn covers_of_example_partition() {
        let sigma = p("4,5/3/2", 5);
        let mut got: Vec<String> = covers(&sigma).map(|c| c.to_string()).collect();
        got.sort();
        assert_eq!(got, vec!["3,4,5/2", "3/2,4,5", "4,5/2,3"]);
        assert_eq!(covers(&SetPartition::coarsest(4)).count(), 0);
        let two = p("2,4/3", 4);
        assert_eq!(covers(&two).collect::<Vec<_>>(), vec![SetPartition::coarsest(4)]);
    }

    #[test]
    fn mobius_examples() {
        let bottom = SetPartition::finest(4);
        let top = SetPartition::coarsest(4);
        assert_eq!(mobius(&bottom, &bottom).unwrap(), 1);
        assert_eq!(mobius(&bottom, &top).unwrap(), 2);
        let sigma = p("4,5/3/2", 5);
        for c in covers(&sigma) {
            assert_eq!(mobius(&sigma, &c).unwrap(), -1);
        }
        assert!(matches!(mobius(&top, &bottom), Err(Error::Order { .. })));
    }

    #[test]
    fn mobius_recursion_matches_product_formula() {
        for n in 1..=6 {
            for pi in all_partitions(n) {
                let upset = mobius_upset(&pi);
                for (sigma, mu) in &upset {
                    assert_eq!(*mu, mobius_product(&pi, sigma).unwrap(), "{pi} .. {sigma}");
                }
                if pi.len() > 1 {
                    assert_eq!(upset.iter().map(|(_, mu)| mu).sum::<i128>(), 0);
                }
            }
        }
        let bottom = SetPartition::finest(6);
        for sigma in coarsenings(&bottom) {
            assert_eq!(mobius(&bottom, &sigma).unwrap(), mobius_product(&bottom, &sigma).unwrap());
        }
    }

    #[test]
    fn stirling_values() {
        for k in 1..10 {
            assert_eq!(stirling2(k, 1).unwrap(), 1);
            assert_eq!(stirling2(k, k).unwrap(), 1);
        }
        assert_eq!(stirling2(0, 0).unwrap(), 1);
        assert_eq!(stirling2(4, 0).unwrap(), 0);
        assert_eq!(stirling2(3, 5).unwrap(), 0);
        assert_eq!(stirling2(4, 2).unwrap(), 7);
        assert_eq!(stirling2(10, 4).unwrap(), 34105);
    }

    #[test]
    fn stirling_identity() {
        assert_eq!(stirling_identity_check(1, 7).unwrap(), (7, 7));
        assert_eq!(stirling_identity_check(4, 5).unwrap(), (625, 625));
        let (lhs, rhs) = stirling_identity_check(8, 12).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(rhs, 429_981_696);
    }
}
