//! Certified topological entropy of the window subshifts and the entropy
//! sandwich around the univoque set.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{decimal_ceil, decimal_floor, ln_rational, AlgebraicNumber, Enclosure, Rational, DEFAULT_BITS};
use crate::expansion::{Alphabet, DepthConfig};
use crate::sft::{build_graph_automaton, build_spec, EdgeGraph, ForbiddenSpec, Mode};

const POWER_ITERATION_CAP: usize = 10_000;
const VECTOR_SCALE: f64 = 4_503_599_627_370_496.0; // 2^52

/// Enclosure of the spectral radius of a graph's adjacency matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerronBounds {
    pub enclosure: Enclosure,
    /// Number of strongly connected components of the graph.
    pub component_count: usize,
    /// Whether the whole graph is one strongly connected component.
    pub irreducible: bool,
}

/// Where an entropy or dimension value came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntropySource {
    Sandwich,
    ClosedForm,
    Zero,
}

/// Certified bounds on an entropy, in nats.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntropyBounds {
    pub lower: Rational,
    pub upper: Rational,
    pub depth: usize,
    pub source: EntropySource,
}

impl EntropyBounds {
    pub fn gap(&self) -> Rational {
        &self.upper - &self.lower
    }

    pub fn gap_f64(&self) -> f64 {
        self.gap().to_f64().unwrap_or(f64::INFINITY)
    }

    pub fn enclosure(&self) -> Enclosure {
        Enclosure::new(self.lower.clone(), self.upper.clone())
    }

    /// `{"lo": .., "hi": .., "depth": .., "unit": "nats"}` with outward
    /// rounded decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "lo": decimal_floor(&self.lower, 15),
            "hi": decimal_ceil(&self.upper, 15),
            "depth": self.depth,
            "unit": "nats",
        })
    }
}

impl fmt::Display for EntropyBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}] nats at depth {}",
            decimal_floor(&self.lower, 12),
            decimal_ceil(&self.upper, 12),
            self.depth
        )
    }
}

/// Spectral radius enclosure. Each cyclic strongly connected component gets
/// a Collatz-Wielandt enclosure from an integer test vector obtained by power
/// iteration; the radius is the maximum over components.
pub fn perron_bounds(g: &EdgeGraph, tol: &Rational) -> Result<PerronBounds> {
    if !g.has_biinfinite_walk() {
        return Err(Error::EmptyGraph);
    }
    let tol_f = tol.to_f64().unwrap_or(0.0);
    let comp = g.components();
    let mut best: Option<Enclosure> = None;
    for c in (0..g.component_count()).filter(|&c| g.is_cyclic_component(c)) {
        let vertices: Vec<usize> = (0..g.vertex_count()).filter(|&v| comp[v] == c).collect();
        let e = component_bounds(g, &vertices, c, tol_f);
        best = Some(match best {
            None => e,
            Some(b) => Enclosure::new(b.lo().max(e.lo()).clone(), b.hi().max(e.hi()).clone()),
        });
    }
    Ok(PerronBounds {
        enclosure: best.expect("a cyclic component exists"),
        component_count: g.component_count(),
        irreducible: g.component_count() == 1,
    })
}

fn component_bounds(g: &EdgeGraph, vertices: &[usize], c: usize, tol: f64) -> Enclosure {
    let comp = g.components();
    let mut local = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in vertices.iter().enumerate() {
        local[v] = i;
    }
    let adj: Vec<Vec<usize>> = vertices
        .iter()
        .map(|&v| g.out_edges(v).iter().filter(|&&(_, w)| comp[w] == c).map(|&(_, w)| local[w]).collect())
        .collect();
    let k = vertices.len();
    let mut x = vec![1.0f64; k];
    for it in 0..POWER_ITERATION_CAP {
        let y: Vec<f64> = (0..k).map(|i| x[i] + adj[i].iter().map(|&j| x[j]).sum::<f64>()).collect();
        let norm = y.iter().cloned().fold(0.0, f64::max);
        x = y.into_iter().map(|t| t / norm).collect();
        if it % 16 == 15 {
            let (lo, hi) = float_ratios(&adj, &x);
            if hi - lo <= tol * 0.25 || hi - lo <= hi * 1e-14 {
                break;
            }
        }
    }
    let v: Vec<u128> = x.iter().map(|&t| ((t * VECTOR_SCALE).round() as u128).max(1)).collect();
    // exact ratios (Av)_i / v_i, compared by cross multiplication
    let mut lo: Option<(u128, u128)> = None;
    let mut hi: (u128, u128) = (0, 1);
    for i in 0..k {
        let av: u128 = adj[i].iter().map(|&j| v[j]).sum();
        if lo.is_none_or(|(n, d)| av * d < n * v[i]) {
            lo = Some((av, v[i]));
        }
        if av * hi.1 > hi.0 * v[i] {
            hi = (av, v[i]);
        }
    }
    let to_rat = |(n, d): (u128, u128)| Rational::new(BigInt::from(n), BigInt::from(d));
    let one = Rational::from_integer(1.into());
    Enclosure::new(to_rat(lo.expect("component is nonempty")).max(one), to_rat(hi))
}

fn float_ratios(adj: &[Vec<usize>], x: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for (i, row) in adj.iter().enumerate() {
        let r = row.iter().map(|&j| x[j]).sum::<f64>() / x[i];
        lo = lo.min(r);
        hi = hi.max(r);
    }
    (lo, hi)
}

/// Tolerance used for spectral radius enclosures inside entropy routines.
fn perron_tol() -> Rational {
    Rational::new(1.into(), BigInt::from(10u64).pow(12))
}

/// Entropy of the subshift in nats. An empty language has entropy zero.
pub fn entropy_of(spec: &ForbiddenSpec) -> Enclosure {
    entropy_of_graph(&build_graph_automaton(spec))
}

pub fn entropy_of_graph(g: &EdgeGraph) -> Enclosure {
    match perron_bounds(g, &perron_tol()) {
        Err(_) => Enclosure::point(Rational::zero()),
        Ok(p) => {
            let cap = ln_rational(&Rational::from_integer(g.alphabet().size().into()), DEFAULT_BITS);
            let e = p.enclosure.ln(DEFAULT_BITS);
            Enclosure::new(e.lo().max(&Rational::zero()).clone(), e.hi().min(cap.hi()).clone())
        }
    }
}

/// Lower bound from the strict family and upper bound from the smaller of
/// the two closed families, all at window `n`.
pub fn sandwich(
    q: &AlgebraicNumber,
    alphabet: Alphabet,
    n: usize,
    cfg: &DepthConfig,
) -> Result<(Enclosure, Enclosure)> {
    let u = build_spec(q, alphabet, n, Mode::StrictU, cfg)?;
    let v = build_spec(q, alphabet, n, Mode::ClosedV, cfg)?;
    let w = build_spec(q, alphabet, n, Mode::ClosedW, cfg)?;
    let (lower, (hv, hw)) = rayon::join(|| entropy_of(&u), || rayon::join(|| entropy_of(&v), || entropy_of(&w)));
    let upper = if hv.hi() <= hw.hi() { hv } else { hw };
    Ok((lower, upper))
}

/// Window sizes `4, 8, 16, ...` up to and including `cap`.
pub fn default_schedule(cap: usize) -> Vec<usize> {
    std::iter::successors(Some(4usize), |&n| n.checked_mul(2)).take_while(|&n| n <= cap.max(4)).collect()
}

/// Run the sandwich along `schedule` until the gap is at most `tol`.
///
/// Bounds are combined as a running maximum of lower bounds and minimum of
/// upper bounds. When the schedule runs out first the best bounds are
/// returned inside [`Error::ToleranceNotReached`].
pub fn refine_entropy(
    q: &AlgebraicNumber,
    alphabet: Alphabet,
    tol: &Rational,
    schedule: &[usize],
    cfg: &DepthConfig,
) -> Result<EntropyBounds> {
    refine_entropy_traced(q, alphabet, tol, schedule, cfg, |_| {})
}

/// As [`refine_entropy`], reporting the combined bounds after every depth.
pub fn refine_entropy_traced(
    q: &AlgebraicNumber,
    alphabet: Alphabet,
    tol: &Rational,
    schedule: &[usize],
    cfg: &DepthConfig,
    mut trace: impl FnMut(&EntropyBounds),
) -> Result<EntropyBounds> {
    let ceiling = ln_rational(&Rational::from_integer(alphabet.size().into()), DEFAULT_BITS).hi().clone();
    let mut best: Option<EntropyBounds> = None;
    for &n in schedule {
        let (lo, hi) = sandwich(q, alphabet, n, cfg)?;
        let lower = match &best {
            Some(b) => b.lower.clone().max(lo.lo().clone()),
            None => lo.lo().clone(),
        };
        let upper = match &best {
            Some(b) => b.upper.clone().min(hi.hi().clone()),
            None => hi.hi().clone(),
        }
        .min(ceiling.clone());
        let upper = upper.max(lower.clone());
        let b = EntropyBounds { lower, upper, depth: n, source: EntropySource::Sandwich };
        trace(&b);
        let done = &b.gap() <= tol;
        best = Some(b);
        if done {
            return Ok(best.unwrap());
        }
    }
    match best {
        Some(b) => Err(Error::ToleranceNotReached { best: Box::new(b) }),
        None => Err(Error::Invalid("empty depth schedule".into())),
    }
}
