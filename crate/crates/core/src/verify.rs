//! Exhaustive verification suites over all small cases.
//!
//! Each suite sweeps every `m <= n` and reports one [`Check`] per property,
//! with up to [`MAX_WITNESSES`] counterexamples when a property fails.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::census::{
    all_trees, brute_force_census, count_by_lambda, f_closed, g_closed, partitions_of_type,
    recursion_check, solve_f_by_mobius, upset_sum, DEFAULT_MAX_N, EXTENDED_MAX_N,
};
use crate::codec::{classic_prufer_decode, decode, encode, phi_prime};
use crate::error::{Error, Result};
use crate::involution::swap_involution;
use crate::lattice::{
    all_partitions, bell, coarsenings, covers, mobius, mobius_product, mobius_upset, refines,
    stirling_identity_check,
};
use crate::model::{parse_partition, CodeWord, IntegerPartition, LabelledTree, SetPartition};
use crate::omega::{cube, cube_partition_check, omega_set, subsequence_theorem_check};
use crate::treemap::phi;

pub const MAX_WITNESSES: usize = 5;

/// Default sweep bound for `verify`.
pub const DEFAULT_VERIFY_N: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Census,
    Codec,
    Involution,
    Lattice,
    Omega,
}

impl Suite {
    pub const ALL: [Suite; 5] =
        [Suite::Census, Suite::Codec, Suite::Involution, Suite::Lattice, Suite::Omega];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Census => "census",
            Suite::Codec => "codec",
            Suite::Involution => "involution",
            Suite::Lattice => "lattice",
            Suite::Omega => "omega",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub n: usize,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Collects failures for one property.
struct Tally {
    name: String,
    cases: u64,
    failures: u64,
    witnesses: Vec<String>,
}

impl Tally {
    fn new(name: impl Into<String>) -> Self {
        Tally { name: name.into(), cases: 0, failures: 0, witnesses: Vec::new() }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }

    fn finish(self) -> Check {
        Check {
            passed: self.failures == 0,
            detail: format!("{} cases, {} failures", self.cases, self.failures),
            name: self.name,
            witnesses: self.witnesses,
        }
    }
}

pub fn run_suite(suite: Suite, n: usize) -> Result<SuiteReport> {
    let limit = if suite == Suite::Census { EXTENDED_MAX_N } else { DEFAULT_MAX_N };
    if n > limit {
        return Err(Error::BoundExceeded { n, max: limit });
    }
    if n == 0 {
        return Err(Error::Precondition("verification needs n >= 1".into()));
    }
    let checks = match suite {
        Suite::Census => census_suite(n)?,
        Suite::Codec => codec_suite(n)?,
        Suite::Involution => involution_suite(n)?,
        Suite::Lattice => lattice_suite(n)?,
        Suite::Omega => omega_suite(n)?,
    };
    Ok(SuiteReport { suite, n, checks })
}

fn trees_with_images(m: usize) -> Vec<(LabelledTree, SetPartition)> {
    all_trees(m).map(|t| {
        let p = phi(&t);
        (t, p)
    }).collect()
}

fn census_suite(n: usize) -> Result<Vec<Check>> {
    let mut lambda_counts = Tally::new("indegree census equals the closed form a_lambda");
    let mut fiber_counts = Tally::new("fiber census equals (n-1)!/(n-|pi|)!");
    let mut totals = Tally::new("census totals and sum of a_lambda equal n^(n-2)");
    let mut type_split = Tally::new("a_lambda = f(pi) x #partitions of type lambda");
    let mut upsets = Tally::new("sum of f over pi ⪰ sigma equals n^(|sigma|-1)");
    let mut inversion = Tally::new("Möbius inversion of g reproduces f");
    let mut recursion = Tally::new("contraction recursion f(pi) = sum_j f(pi~_j)");

    for m in 1..=n {
        let census = brute_force_census(m, EXTENDED_MAX_N)?;
        let cayley = if m == 1 { 1 } else { (m as u128).pow(m as u32 - 2) };
        let lambda_total: u128 = IntegerPartition::all(m - 1)
            .iter()
            .map(|l| count_by_lambda(l, m))
            .sum::<Result<u128>>()?;
        totals.record(census.total == cayley && lambda_total == cayley, || {
            format!("n={m}: enumerated {}, closed-form sum {lambda_total}, expected {cayley}", census.total)
        });

        for lambda in IntegerPartition::all(m - 1) {
            let expected = count_by_lambda(&lambda, m)?;
            let got = census.by_lambda.get(&lambda).copied().unwrap_or(0);
            lambda_counts.record(got == expected, || format!("n={m} lambda=({lambda}): {got} vs {expected}"));
            let product = f_closed(&first_of_type(&lambda, m))? * partitions_of_type(&lambda)?;
            type_split.record(product == expected, || format!("n={m} lambda=({lambda}): {product} vs {expected}"));
        }
        for pi in all_partitions(m) {
            let expected = f_closed(&pi)?;
            let got = census.by_partition.get(&pi).copied().unwrap_or(0);
            fiber_counts.record(got == expected, || format!("n={m} pi={pi}: {got} vs {expected}"));
        }
        if m <= 7 {
            for sigma in all_partitions(m) {
                let (lhs, rhs) = (upset_sum(&sigma)?, g_closed(&sigma)?);
                upsets.record(lhs == rhs, || format!("n={m} sigma={sigma}: {lhs} vs {rhs}"));
            }
            let solved = solve_f_by_mobius(m)?;
            for (pi, f) in solved {
                let expected = f_closed(&pi)? as i128;
                inversion.record(f == expected, || format!("n={m} pi={pi}: {f} vs {expected}"));
            }
            if m >= 3 {
                for pi in all_partitions(m).filter(|p| p.same_block(m - 1, m)) {
                    let report = recursion_check(&pi)?;
                    recursion.record(report.holds(), || format!("n={m} pi={pi}: {report:?}"));
                }
            }
        }
    }
    Ok(vec![
        totals.finish(),
        lambda_counts.finish(),
        fiber_counts.finish(),
        type_split.finish(),
        upsets.finish(),
        inversion.finish(),
        recursion.finish(),
    ])
}

/// The partition of `[2, m]` of type `lambda` whose blocks are consecutive runs.
fn first_of_type(lambda: &IntegerPartition, m: usize) -> SetPartition {
    let mut next = 2;
    let blocks: Vec<Vec<usize>> = lambda
        .parts()
        .iter()
        .map(|&p| {
            let b: Vec<usize> = (next..next + p).collect();
            next += p;
            b
        })
        .collect();
    SetPartition::new(m, blocks).expect("parts sum to m - 1")
}

fn codec_suite(n: usize) -> Result<Vec<Check>> {
    let mut round_trip = Tally::new("decode(encode(T)) = T for every T above sigma");
    let mut cube_trip = Tally::new("encode(decode(w)) = w over the whole cube");
    let mut cardinality = Tally::new("|trees above sigma| = n^(|sigma|-1) and decode is injective");
    let mut phi_prime_inj = Tally::new("phi' is injective");
    let mut prufer = Tally::new("classic Prüfer decoding is a bijection onto all trees");
    let mut increasing = Tally::new("fiber of the finest partition has (n-1)! increasing trees");

    for m in 1..=n {
        let trees = trees_with_images(m);
        for sigma in all_partitions(m) {
            let above: Vec<&LabelledTree> = trees
                .iter()
                .filter(|(_, p)| refines(&sigma, p).unwrap_or(false))
                .map(|(t, _)| t)
                .collect();
            for &t in &above {
                let back = encode(&sigma, t).and_then(|w| decode(&sigma, &w));
                round_trip.record(back.as_ref() == Ok(t), || format!("sigma={sigma} tree={:?}: {back:?}", t.edges()));
            }
            let mut decoded = BTreeSet::new();
            for w in cube(m, sigma.len().saturating_sub(1)) {
                let tree = decode(&sigma, &w)?;
                let again = encode(&sigma, &tree);
                cube_trip.record(again.as_ref() == Ok(&w), || format!("sigma={sigma} word={w}: {again:?}"));
                decoded.insert(tree);
            }
            let expected = g_closed(&sigma)?;
            let ok = above.len() as u128 == expected && decoded.len() as u128 == expected;
            cardinality.record(ok, || {
                format!("sigma={sigma}: {} trees above, {} decoded, expected {expected}", above.len(), decoded.len())
            });
        }

        let images: BTreeSet<(SetPartition, CodeWord)> =
            trees.iter().map(|(t, _)| phi_prime(t)).collect::<Result<_>>()?;
        phi_prime_inj.record(images.len() == trees.len(), || format!("n={m}: {} images for {} trees", images.len(), trees.len()));

        if m >= 2 {
            let all: BTreeSet<LabelledTree> = cube(m, m - 2)
                .map(|w| classic_prufer_decode(m, w.symbols()))
                .collect::<Result<_>>()?;
            let expected = (m as u128).pow(m as u32 - 2);
            prufer.record(all.len() as u128 == expected, || format!("n={m}: {} distinct trees", all.len()));
        }
        let finest = SetPartition::finest(m);
        let count = trees.iter().filter(|(_, p)| *p == finest).count() as u128;
        let all_increasing = trees
            .iter()
            .filter(|(_, p)| *p == finest)
            .all(|(t, _)| t.parents().iter().enumerate().skip(2).all(|(v, &p)| p < v));
        let factorial: u128 = (1..m as u128).product();
        increasing.record(count == factorial && all_increasing, || format!("n={m}: {count} trees"));
    }
    Ok(vec![
        round_trip.finish(),
        cube_trip.finish(),
        cardinality.finish(),
        phi_prime_inj.finish(),
        prufer.finish(),
        increasing.finish(),
    ])
}

fn involution_suite(n: usize) -> Result<Vec<Check>> {
    let mut involutive = Tally::new("applying the involution twice is the identity");
    let mut fixed = Tally::new("no fixed points when s_i moves phi(T)");
    let mut fixed_singletons =
        Tally::new("fixed points only where {i} and {i+1} are singleton blocks");
    let mut equivariant = Tally::new("phi(swap(T, i)) = s_i phi(T)");
    let mut rejected = Tally::new("same-block pairs are rejected");
    let mut fiber_sizes = Tally::new("|T_pi| = |T_(s_i pi)| for every adjacent transposition");

    for m in 3..=n {
        let trees = trees_with_images(m);
        let mut sizes: BTreeMap<&SetPartition, u64> = BTreeMap::new();
        for (_, p) in &trees {
            *sizes.entry(p).or_default() += 1;
        }
        for (t, p) in &trees {
            for i in 2..m {
                if p.same_block(i, i + 1) {
                    let refused = matches!(swap_involution(t, i), Err(Error::SameBlock { .. }));
                    rejected.record(refused, || format!("i={i} tree={:?}", t.edges()));
                    continue;
                }
                let s = swap_involution(t, i)?;
                let back = swap_involution(&s, i)?;
                involutive.record(back == *t, || format!("i={i} tree={:?}", t.edges()));
                if p.swap_adjacent(i) != *p {
                    fixed.record(s != *t, || format!("i={i} tree={:?}", t.edges()));
                } else {
                    let singletons = p.blocks().iter().any(|b| *b == [i])
                        && p.blocks().iter().any(|b| *b == [i + 1]);
                    fixed_singletons.record(singletons, || format!("i={i} tree={:?}", t.edges()));
                }
                let image = phi(&s);
                equivariant.record(image == p.swap_adjacent(i), || {
                    format!("i={i} tree={:?}: {image} vs {}", t.edges(), p.swap_adjacent(i))
                });
            }
        }
        for pi in all_partitions(m) {
            for i in 2..m {
                let other = pi.swap_adjacent(i);
                let (a, b) = (sizes.get(&pi).copied().unwrap_or(0), sizes.get(&other).copied().unwrap_or(0));
                fiber_sizes.record(a == b, || format!("i={i} {pi}: {a} vs {other}: {b}"));
            }
        }
    }
    Ok(vec![
        involutive.finish(),
        fixed.finish(),
        fixed_singletons.finish(),
        equivariant.finish(),
        rejected.finish(),
        fiber_sizes.finish(),
    ])
}

fn lattice_suite(n: usize) -> Result<Vec<Check>> {
    let mut order = Tally::new("refinement is reflexive, antisymmetric and transitive");
    let mut counts = Tally::new("Bell(n-1) partitions; Bell(|sigma|) coarsenings matching the filtered lattice");
    let mut cover_counts = Tally::new("sigma has |sigma|(|sigma|-1)/2 covers, each at Möbius value -1");
    let mut mobius_sum = Tally::new("Möbius recursion sums vanish and match the product formula");
    let mut stirling = Tally::new("sum_j S(k,j) n(n-1)...(n-j+1) = n^k for k <= 8, n <= 12");

    for m in 1..=n {
        let parts: Vec<SetPartition> = all_partitions(m).collect();
        counts.record(parts.len() as u128 == bell(m - 1)?, || format!("n={m}: {} partitions", parts.len()));
        if m <= 6 {
            for a in &parts {
                order.record(refines(a, a)?, || format!("not reflexive at {a}"));
                for b in &parts {
                    let ab = refines(a, b)?;
                    if ab && refines(b, a)? {
                        order.record(a == b, || format!("{a} and {b}"));
                    }
                    if ab {
                        for c in &parts {
                            if refines(b, c)? {
                                order.record(refines(a, c)?, || format!("{a} ⪯ {b} ⪯ {c}"));
                            }
                        }
                    }
                }
            }
        }
        for sigma in &parts {
            let up: BTreeSet<SetPartition> = coarsenings(sigma).collect();
            let filtered: BTreeSet<SetPartition> =
                parts.iter().filter(|p| refines(sigma, p).unwrap_or(false)).cloned().collect();
            let ok = up.len() as u128 == bell(sigma.len())? && up == filtered;
            counts.record(ok, || format!("sigma={sigma}: {} coarsenings", up.len()));

            let k = sigma.len();
            let cs: Vec<SetPartition> = covers(sigma).collect();
            let mut ok = cs.len() == k * k.saturating_sub(1) / 2;
            for c in &cs {
                ok &= mobius(sigma, c)? == -1;
            }
            cover_counts.record(ok, || format!("sigma={sigma}: {} covers", cs.len()));

            if m <= 7 {
                let upset = mobius_upset(sigma);
                let mut ok = k <= 1 || upset.iter().map(|(_, mu)| mu).sum::<i128>() == 0;
                for (pi, mu) in &upset {
                    ok &= *mu == mobius_product(sigma, pi)?;
                }
                mobius_sum.record(ok, || format!("sigma={sigma}"));
            }
        }
    }
    for k in 1..=8 {
        for m in 1..=12 {
            let (lhs, rhs) = stirling_identity_check(k, m)?;
            stirling.record(lhs == rhs, || format!("k={k} n={m}: {lhs} vs {rhs}"));
        }
    }
    Ok(vec![
        order.finish(),
        counts.finish(),
        cover_counts.finish(),
        mobius_sum.finish(),
        stirling.finish(),
    ])
}

fn omega_suite(n: usize) -> Result<Vec<Check>> {
    let mut sizes = Tally::new("|Omega_pi| = (n-1)!/(n-|pi|)!");
    let mut tiling = Tally::new("fibers above sigma tile [n]^(|sigma|-1)");
    let mut subsequence = Tally::new("coarser codes are subsequences of finer codes (all cover pairs)");
    let mut worked = Tally::new("Omega of 4,5/3/2 at n = 5 is the 12-word table");

    for m in 1..=n {
        for pi in all_partitions(m) {
            let omega = omega_set(&pi)?;
            let expected = f_closed(&pi)?;
            sizes.record(omega.len() as u128 == expected, || format!("pi={pi}: {} vs {expected}", omega.len()));

            let report = cube_partition_check(&pi)?;
            tiling.record(report.passed(), || {
                format!(
                    "sigma={pi}: collisions {:?}, missing {:?}",
                    report.collisions.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    report.missing.iter().map(ToString::to_string).collect::<Vec<_>>()
                )
            });
            for coarser in covers(&pi) {
                let report = subsequence_theorem_check(&pi, &coarser)?;
                subsequence.record(report.passed(), || {
                    let w = &report.failures[0];
                    format!("{pi} ≺ {coarser}: tree {:?}, {} vs {}", w.tree.edges(), w.coarse, w.fine)
                });
            }
        }
    }
    if n >= 5 {
        let pi = parse_partition("4,5/3/2", 5)?;
        let got: Vec<String> = omega_set(&pi)?.iter().map(|w| w.symbols().iter().map(ToString::to_string).collect()).collect();
        let expected = ["11", "12", "14", "21", "22", "24", "31", "32", "34", "41", "42", "43"];
        worked.record(got == expected, || format!("got {got:?}"));
    }
    let mut checks = vec![sizes.finish(), tiling.finish(), subsequence.finish()];
    if n >= 5 {
        checks.push(worked.finish());
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_at_small_n() {
        for suite in Suite::ALL {
            let report = run_suite(suite, 5).unwrap();
            for c in &report.checks {
                assert!(c.passed, "{suite}: {} {:?}", c.name, c.witnesses);
            }
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(matches!(run_suite(Suite::Codec, 9), Err(Error::BoundExceeded { .. })));
        assert!(matches!(run_suite(Suite::Census, 10), Err(Error::BoundExceeded { .. })));
    }
}
