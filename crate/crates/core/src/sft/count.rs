use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{EdgeGraph, ForbiddenSpec};
use crate::error::{Error, Result};

/// Number of distinct length-`k` label words of walks that extend to
/// bi-infinite walks. Label words reachable from several starting vertices
/// are counted once (subset construction).
pub fn count_blocks(g: &EdgeGraph, k: usize) -> BigUint {
    let essential = g.essential_vertices();
    let start: Vec<usize> = (0..g.vertex_count()).filter(|&v| essential[v]).collect();
    if start.is_empty() {
        return BigUint::zero();
    }
    let m = g.alphabet().max_digit();
    let mut layer: BTreeMap<Vec<usize>, BigUint> = BTreeMap::new();
    layer.insert(start, BigUint::one());
    for _ in 0..k {
        let mut next: BTreeMap<Vec<usize>, BigUint> = BTreeMap::new();
        for (set, count) in &layer {
            for d in 0..=m {
                let targets: BTreeSet<usize> = set
                    .iter()
                    .flat_map(|&v| g.out_edges(v).iter())
                    .filter(|&&(label, w)| label == d && essential[w])
                    .map(|&(_, w)| w)
                    .collect();
                if !targets.is_empty() {
                    *next.entry(targets.into_iter().collect()).or_insert_with(BigUint::zero) += count;
                }
            }
        }
        layer = next;
    }
    layer.values().sum()
}

/// The distinct length-`k` blocks presented by `g`, sorted.
pub fn enumerate_blocks(g: &EdgeGraph, k: usize, cap: u128) -> Result<Vec<Vec<u8>>> {
    let essential = g.essential_vertices();
    let start: Vec<usize> = (0..g.vertex_count()).filter(|&v| essential[v]).collect();
    if start.is_empty() {
        return Ok(Vec::new());
    }
    // subset construction: every word reaches exactly one vertex set
    let mut frontier: Vec<(Vec<usize>, Vec<u8>)> = vec![(start, Vec::new())];
    let m = g.alphabet().max_digit();
    for _ in 0..k {
        let mut next = Vec::new();
        for (set, word) in &frontier {
            for d in 0..=m {
                let targets: BTreeSet<usize> = set
                    .iter()
                    .flat_map(|&v| g.out_edges(v).iter())
                    .filter(|&&(label, w)| label == d && essential[w])
                    .map(|&(_, w)| w)
                    .collect();
                if !targets.is_empty() {
                    let mut w = word.clone();
                    w.push(d);
                    next.push((targets.into_iter().collect(), w));
                }
            }
        }
        if next.len() as u128 > cap {
            return Err(Error::CapExceeded { required: next.len() as u128, cap });
        }
        frontier = next;
    }
    let mut words: Vec<Vec<u8>> = frontier.into_iter().map(|(_, w)| w).collect();
    words.sort();
    Ok(words)
}

/// Block count by direct enumeration over raw words, without any graph.
///
/// A word `w` is a block of the subshift iff some `(n-1)`-word `a` that
/// extends forever to the left makes every window of `a w` allowed, and the
/// last `n-1` digits of `a w` extend forever to the right. The two families
/// of extendable `(n-1)`-words are computed as greatest fixed points.
pub fn brute_force_blocks(spec: &ForbiddenSpec, k: usize, cap: u128) -> Result<BigUint> {
    let n = spec.window();
    let m = spec.alphabet().max_digit();
    let base = spec.alphabet().size() as u128;
    let required = (0..k + n - 1).try_fold(1u128, |acc, _| acc.checked_mul(base)).unwrap_or(u128::MAX);
    if required > cap {
        return Err(Error::CapExceeded { required, cap });
    }
    let short = all_words(m, n - 1);
    let right = fixed_point(spec, &short, true);
    let left = fixed_point(spec, &short, false);
    let mut count = BigUint::zero();
    for w in all_words(m, k) {
        let ok = left.iter().any(|a| {
            let mut s = a.clone();
            s.extend_from_slice(&w);
            spec.allows_all_windows(&s) && right.contains(&s[s.len() - (n - 1)..])
        });
        if ok {
            count += 1u32;
        }
    }
    Ok(count)
}

/// `(n-1)`-words admitting an infinite chain of allowed one-digit
/// extensions to the right (or to the left).
fn fixed_point(spec: &ForbiddenSpec, short: &[Vec<u8>], rightward: bool) -> HashSet<Vec<u8>> {
    let m = spec.alphabet().max_digit();
    let n = spec.window();
    let mut alive: HashSet<Vec<u8>> = short.iter().cloned().collect();
    loop {
        let keep: HashSet<Vec<u8>> = alive
            .iter()
            .filter(|u| {
                (0..=m).any(|d| {
                    let (w, rest) = if rightward {
                        let w = [u.as_slice(), &[d]].concat();
                        let rest = w[1..].to_vec();
                        (w, rest)
                    } else {
                        let w = [&[d], u.as_slice()].concat();
                        let rest = w[..n - 1].to_vec();
                        (w, rest)
                    };
                    spec.allows(&w) && alive.contains(&rest)
                })
            })
            .cloned()
            .collect();
        if keep.len() == alive.len() {
            return keep;
        }
        alive = keep;
    }
}

fn all_words(m: u8, len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..=m).map(move |d| {
                    let mut x = w.clone();
                    x.push(d);
                    x
                })
            })
            .collect();
    }
    out
}
