//! Explicit witness systems and closed-form values.

use num_bigint::BigUint;

use crate::canonical::{canonicalize, conjunctive_rank_canonical, CanonicalGraph};
use crate::error::{Error, Result};
use crate::fds::Fds;
use crate::graph::Digraph;
use crate::invariants::{cycle_cover_certificate, in_dominating_profile, independent_arc_certificate};
use crate::limits::Limits;

fn in_lists(d: &Digraph) -> Vec<Vec<usize>> {
    (0..d.n()).map(|v| d.in_neighbors(v).to_vec()).collect()
}

/// Boolean network with `f_v` the AND of its in-neighbours (empty AND = 1).
pub fn conjunctive(d: &Digraph) -> Fds {
    Fds::from_fn(d.n(), 2, in_lists(d), |_, x| x.iter().all(|&b| b == 1) as u32).expect("boolean tables")
}

/// Rank of the conjunctive network, computed on `C(D)` and checked against
/// the direct computation when the full state space fits the guard.
pub fn conjunctive_rank(d: &Digraph, limits: &Limits) -> Result<u64> {
    let via_canonical = conjunctive_rank_canonical(&canonicalize(d), limits);
    let direct = conjunctive(d).rank(limits);
    match (via_canonical, direct) {
        (Ok(a), Ok(b)) if a != b => Err(Error::Invariant(format!(
            "conjunctive rank {a} on the canonical graph differs from {b} on the graph"
        ))),
        (Ok(a), _) => Ok(a),
        (Err(_), Ok(b)) => Ok(b),
        (Err(e), Err(_)) => Err(e),
    }
}

/// The same system over `q+1` letters, reading the new letter as `q-1`.
pub fn extend_alphabet(f: &Fds) -> Fds {
    let top = f.q() - 1;
    let inputs: Vec<Vec<usize>> = (0..f.n()).map(|v| f.inputs(v).to_vec()).collect();
    let q = f.q();
    Fds::from_fn(f.n(), q + 1, inputs, |v, xs| {
        let idx = xs.iter().rev().fold(0usize, |acc, &x| acc * q as usize + x.min(top) as usize);
        f.table(v)[idx]
    })
    .expect("values stay below q")
}

/// `f_v = 0` when every in-neighbour reads 0 or 1, else 1; sources are 0.
/// Nilpotent of class at most two with interaction graph `D`.
pub fn nilpotent_class_two(d: &Digraph, q: u32) -> Result<Fds> {
    if q < 3 {
        return Err(Error::AlphabetTooSmall(q));
    }
    Fds::from_fn(d.n(), q, in_lists(d), |_, x| x.iter().any(|&b| b > 1) as u32)
}

/// System on `C` (sources first) over `max(|B|, 2)` letters: sources are 0
/// and sink `b_j` outputs 1 iff all of its sources read `j`. Its image is
/// the set of indicator vectors of independent sets of the conflict graph.
pub fn canonical_upper_witness(c: &CanonicalGraph) -> Result<Fds> {
    let a = c.num_sources();
    let q = c.num_sinks().max(2) as u32;
    let n = a + c.num_sinks();
    let inputs: Vec<Vec<usize>> = (0..n)
        .map(|v| if v < a { Vec::new() } else { c.sink_in[v - a].clone() })
        .collect();
    Fds::from_fn(n, q, inputs, |v, x| {
        if v < a {
            0
        } else {
            let j = (v - a) as u32;
            x.iter().all(|&y| y == j) as u32
        }
    })
}

/// The star with centre 0 and looped satellites `1..=n`.
pub fn star_graph(n: usize) -> Digraph {
    crate::graph::fixtures::star(n)
}

/// Boolean system on the `n`-star with rank `2^ceil(n/2) + 2^floor(n/2) - 1`.
pub fn star_witness(n: usize) -> Result<Fds> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::EvenN(n));
    }
    let d = star_graph(n);
    let first = n.div_ceil(2);
    Fds::from_fn(n + 1, 2, in_lists(&d), |v, x| {
        if v == 0 {
            return 1;
        }
        // inputs sorted: centre 0 first, then v itself
        let (centre, own) = (x[0], x[1]);
        if v <= first {
            centre & own
        } else {
            (1 - centre) & own
        }
    })
}

/// `f_v = -(sum of the other coordinates) mod q` on the complete graph;
/// fixed points are the states with coordinate sum 0.
pub fn modular_complete(n: usize, q: u32) -> Result<Fds> {
    if n < 2 {
        return Err(Error::ShapeMismatch(format!("complete graph needs n >= 2, got {n}")));
    }
    let inputs = (0..n).map(|v| (0..n).filter(|&u| u != v).collect()).collect();
    Fds::from_fn(n, q, inputs, |_, x| {
        let s: u64 = x.iter().map(|&b| b as u64).sum();
        ((q as u64 - s % q as u64) % q as u64) as u32
    })
}

/// Copies along a maximum family of disjoint cycles; other vertices are 0.
/// Periodic rank `q^{alpha_n(D)}`; declared graph is a subgraph of `D`.
pub fn maxper_witness(d: &Digraph, q: u32) -> Result<Fds> {
    let succ = cycle_cover_certificate(d);
    let mut pred: Vec<Option<usize>> = vec![None; d.n()];
    for (u, s) in succ.iter().enumerate() {
        if let Some(v) = *s {
            pred[v] = Some(u);
        }
    }
    let inputs = pred.iter().map(|p| p.iter().copied().collect()).collect();
    Fds::from_fn(d.n(), q, inputs, |_, x| x.first().copied().unwrap_or(0))
}

/// `f_{v_i} = x_{u_i}` along a maximum independent arc family; other
/// vertices are 0. Rank `q^{alpha_1(D)}`.
pub fn maxrank_witness(d: &Digraph, q: u32) -> Result<Fds> {
    let mut inputs: Vec<Vec<usize>> = vec![Vec::new(); d.n()];
    for (u, v) in independent_arc_certificate(d) {
        inputs[v] = vec![u];
    }
    Fds::from_fn(d.n(), q, inputs, |_, x| x.first().copied().unwrap_or(0))
}

/// Boolean system with a fixed point for every threshold state "ones on the
/// first `k` cycles, zeros after", `k = 0..=len(packing)`.
///
/// Each cycle lists its vertices in arc order. A vertex reads its cycle
/// predecessor ANDed with in-neighbours on earlier cycles, ORed with
/// in-neighbours on later cycles. Vertices outside the packing are 0 and
/// arcs inside one cycle other than the cycle arcs are not read, so the
/// interaction graph is a subgraph of `D`.
pub fn packing_plus_one_witness(d: &Digraph, packing: &[Vec<usize>]) -> Result<Fds> {
    let n = d.n();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    let mut pred: Vec<usize> = vec![0; n];
    for (i, cycle) in packing.iter().enumerate() {
        if cycle.is_empty() {
            return Err(Error::BadPacking(format!("cycle {} is empty", i + 1)));
        }
        for (j, &v) in cycle.iter().enumerate() {
            if v >= n {
                return Err(Error::BadPacking(format!("vertex {} out of range", v + 1)));
            }
            if owner[v].is_some() {
                return Err(Error::BadPacking(format!("vertex {} is on two cycles", v + 1)));
            }
            owner[v] = Some(i);
            let u = cycle[(j + cycle.len() - 1) % cycle.len()];
            if !d.has_arc(u, v) {
                return Err(Error::BadPacking(format!("arc {} -> {} missing", u + 1, v + 1)));
            }
            pred[v] = u;
        }
    }
    // inputs: predecessor, then earlier-cycle, then later-cycle in-neighbours
    let mut inputs: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut earlier_count = vec![0usize; n];
    for v in 0..n {
        let Some(i) = owner[v] else { continue };
        let mut ins = vec![pred[v]];
        let earlier: Vec<usize> = d
            .in_neighbors(v)
            .iter()
            .copied()
            .filter(|&w| owner[w].is_some_and(|k| k < i))
            .collect();
        earlier_count[v] = earlier.len();
        ins.extend(earlier);
        ins.extend(d.in_neighbors(v).iter().copied().filter(|&w| owner[w].is_some_and(|k| k > i)));
        inputs[v] = ins;
    }
    Fds::from_fn(n, 2, inputs, |v, x| {
        if x.is_empty() {
            return 0;
        }
        let e = earlier_count[v];
        let and = x[..=e].iter().all(|&b| b == 1);
        let or = x[e + 1..].contains(&1);
        (and || or) as u32
    })
}

/// Closed form `sum_k (q-1)^k I_k(D)` for the maximum number of fixed points
/// over systems on `D` with a loop added at every vertex.
pub fn loopfull_maxfix(d: &Digraph, q: u32, limits: &Limits) -> Result<BigUint> {
    let profile = in_dominating_profile(d, limits)?;
    Ok(profile
        .iter()
        .enumerate()
        .map(|(k, &c)| BigUint::from(q - 1).pow(k as u32) * BigUint::from(c))
        .sum())
}
