use std::collections::HashMap;

use super::{EdgeGraph, ForbiddenSpec, DEFAULT_CAP};
use crate::error::{Error, Result};

fn word_label(w: &[u8], wide: bool) -> String {
    let parts: Vec<String> = w.iter().map(|d| d.to_string()).collect();
    parts.join(if wide { "," } else { "" })
}

/// De Bruijn style presentation: vertices are the `(n-1)`-words occurring
/// in some allowed `n`-word, and each allowed `n`-word `w` gives the edge
/// `w_1..w_{n-1} -> w_2..w_n` labeled `w_1`.
///
/// Fails with [`Error::CapExceeded`] when `(M+1)^n` exceeds [`DEFAULT_CAP`].
pub fn build_graph_naive(spec: &ForbiddenSpec) -> Result<EdgeGraph> {
    let n = spec.window();
    let base = spec.alphabet().size() as u128;
    let required = (0..n).try_fold(1u128, |acc, _| acc.checked_mul(base)).unwrap_or(u128::MAX);
    if required > DEFAULT_CAP {
        return Err(Error::CapExceeded { required, cap: DEFAULT_CAP });
    }
    let wide = spec.alphabet().max_digit() > 9;
    let mut index: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut adj: Vec<Vec<(u8, usize)>> = Vec::new();
    let mut vertex = |w: &[u8], labels: &mut Vec<String>, adj: &mut Vec<Vec<(u8, usize)>>| -> usize {
        *index.entry(w.to_vec()).or_insert_with(|| {
            labels.push(word_label(w, wide));
            adj.push(Vec::new());
            adj.len() - 1
        })
    };
    let mut word = vec![0u8; n];
    let m = spec.alphabet().max_digit();
    loop {
        if spec.allows(&word) {
            let u = vertex(&word[..n - 1], &mut labels, &mut adj);
            let v = vertex(&word[1..], &mut labels, &mut adj);
            adj[u].push((word[0], v));
        }
        // odometer increment, last digit fastest
        match word.iter().rposition(|&d| d < m) {
            Some(i) => {
                word[i] += 1;
                word[i + 1..].iter_mut().for_each(|d| *d = 0);
            }
            None => break,
        }
    }
    Ok(EdgeGraph::new(spec.alphabet(), labels, adj))
}

/// Compact presentation tracking, for the bound `b` and for the reflected
/// input, the longest suffix read so far that is a proper prefix of `b`.
/// A digit is rejected when some pending comparison with the bound would be
/// decided the wrong way. States are those reachable from the empty match.
pub fn build_graph_automaton(spec: &ForbiddenSpec) -> EdgeGraph {
    let b = spec.bound();
    let n = b.len();
    let m = spec.alphabet().max_digit();
    let strict = spec.mode().is_strict();
    let fail = failure_function(b);
    let step = |i: usize, d: u8| -> usize {
        let mut i = i;
        loop {
            if b[i] == d {
                let next = i + 1;
                return if next == n { fail[n] } else { next };
            }
            if i == 0 {
                return 0;
            }
            i = fail[i];
        }
    };
    // does reading d in match state i complete a window above the bound?
    let violates = |i: usize, d: u8| -> bool {
        let mut i = i;
        loop {
            if d > b[i] || (strict && i == n - 1 && d == b[i]) {
                return true;
            }
            if i == 0 {
                return false;
            }
            i = fail[i];
        }
    };
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut states = vec![(0usize, 0usize)];
    index.insert((0, 0), 0);
    let mut adj: Vec<Vec<(u8, usize)>> = vec![Vec::new()];
    let mut head = 0;
    while head < states.len() {
        let (i, j) = states[head];
        for d in 0..=m {
            let r = m - d;
            if violates(i, d) || violates(j, r) {
                continue;
            }
            let next = (step(i, d), step(j, r));
            let id = *index.entry(next).or_insert_with(|| {
                states.push(next);
                adj.push(Vec::new());
                states.len() - 1
            });
            adj[head].push((d, id));
        }
        head += 1;
    }
    let labels = states.iter().map(|(i, j)| format!("{i}|{j}")).collect();
    EdgeGraph::new(spec.alphabet(), labels, adj)
}

/// `fail[i]` is the length of the longest proper border of `b[..i]`.
fn failure_function(b: &[u8]) -> Vec<usize> {
    let n = b.len();
    let mut fail = vec![0; n + 1];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && b[i] != b[k] {
            k = fail[k];
        }
        if b[i] == b[k] {
            k += 1;
        }
        fail[i + 1] = k;
    }
    fail
}
