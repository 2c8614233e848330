use std::fmt::Write as _;

use serde::Serialize;

use crate::expansion::Alphabet;

/// Directed multigraph with digit-labeled edges. Bi-infinite label
/// sequences of walks form the language it presents.
#[derive(Clone, Debug, Serialize)]
pub struct EdgeGraph {
    alphabet: Alphabet,
    labels: Vec<String>,
    adj: Vec<Vec<(u8, usize)>>,
    component: Vec<usize>,
    cyclic: Vec<bool>,
}

impl EdgeGraph {
    /// `adj[v]` lists `(label, target)` pairs.
    pub fn new(alphabet: Alphabet, labels: Vec<String>, adj: Vec<Vec<(u8, usize)>>) -> Self {
        assert_eq!(labels.len(), adj.len());
        let component = strongly_connected(&adj);
        let n_comp = component.iter().copied().max().map_or(0, |c| c + 1);
        let mut cyclic = vec![false; n_comp];
        let mut size = vec![0usize; n_comp];
        for &c in &component {
            size[c] += 1;
        }
        for (v, edges) in adj.iter().enumerate() {
            for &(_, w) in edges {
                if component[v] == component[w] && (size[component[v]] > 1 || v == w) {
                    cyclic[component[v]] = true;
                }
            }
        }
        Self { alphabet, labels, adj, component, cyclic }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn out_edges(&self, v: usize) -> &[(u8, usize)] {
        &self.adj[v]
    }

    /// Strongly connected component id of each vertex.
    pub fn components(&self) -> &[usize] {
        &self.component
    }

    pub fn component_count(&self) -> usize {
        self.cyclic.len()
    }

    /// Whether the component carries at least one cycle.
    pub fn is_cyclic_component(&self, c: usize) -> bool {
        self.cyclic[c]
    }

    /// No vertex has two out-edges with the same label.
    pub fn is_deterministic(&self) -> bool {
        self.adj.iter().all(|edges| {
            let mut seen = vec![false; self.alphabet.size() as usize];
            edges.iter().all(|&(d, _)| !std::mem::replace(&mut seen[d as usize], true))
        })
    }

    /// Vertices lying on some bi-infinite walk: reachable from a cycle and
    /// able to reach a cycle.
    pub fn essential_vertices(&self) -> Vec<bool> {
        let n = self.adj.len();
        let on_cycle: Vec<bool> = (0..n).map(|v| self.cyclic[self.component[v]]).collect();
        let mut radj = vec![Vec::new(); n];
        for (v, edges) in self.adj.iter().enumerate() {
            for &(_, w) in edges {
                radj[w].push(v);
            }
        }
        let forward = closure(&on_cycle, |v| self.adj[v].iter().map(|&(_, w)| w).collect());
        let backward = closure(&on_cycle, |v| radj[v].clone());
        (0..n).map(|v| forward[v] && backward[v]).collect()
    }

    /// True iff the presented language is non-empty.
    pub fn has_biinfinite_walk(&self) -> bool {
        self.cyclic.iter().any(|&c| c)
    }

    /// Graphviz rendering.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph sft {\n");
        for (v, label) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "  v{v} [label=\"{label}\"];");
        }
        for (v, edges) in self.adj.iter().enumerate() {
            for &(d, w) in edges {
                let _ = writeln!(out, "  v{v} -> v{w} [label=\"{d}\"];");
            }
        }
        out.push_str("}\n");
        out
    }
}

fn closure(seed: &[bool], next: impl Fn(usize) -> Vec<usize>) -> Vec<bool> {
    let mut seen = seed.to_vec();
    let mut stack: Vec<usize> = (0..seed.len()).filter(|&v| seed[v]).collect();
    while let Some(v) = stack.pop() {
        for w in next(v) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// Iterative Tarjan; component ids are assigned in completion order.
fn strongly_connected(adj: &[Vec<(u8, usize)>]) -> Vec<usize> {
    const UNSET: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNSET; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSET; n];
    let mut stack = Vec::new();
    let mut counter = 0;
    let mut n_comp = 0;
    for root in 0..n {
        if index[root] != UNSET {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            if *i < adj[v].len() {
                let w = adj[v][*i].1;
                *i += 1;
                if index[w] == UNSET {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    while let Some(w) = stack.pop() {
                        on_stack[w] = false;
                        comp[w] = n_comp;
                        if w == v {
                            break;
                        }
                    }
                    n_comp += 1;
                }
            }
        }
    }
    comp
}
