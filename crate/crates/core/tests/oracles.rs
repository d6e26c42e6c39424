//! Graph invariants and search routines against direct brute force.

use fdsrank_core::constructions::packing_plus_one_witness;
use fdsrank_core::enumeration::enumerate_stats;
use fdsrank_core::graph::fixtures::all_digraphs;
use fdsrank_core::invariants::{
    cycle_packing_number, max_cycle_cover, max_independent_arcs, maximum_cycle_packing, transversal_number,
};
use fdsrank_core::{minrank_exact, Digraph, Limits};

fn acyclic_without(d: &Digraph, removed: u32) -> bool {
    let keep: Vec<usize> = (0..d.n()).filter(|v| removed >> v & 1 == 0).collect();
    d.induced(&keep).is_acyclic()
}

fn brute_fvs(d: &Digraph) -> usize {
    (0u32..1 << d.n())
        .filter(|&s| acyclic_without(d, s))
        .map(|s| s.count_ones() as usize)
        .min()
        .unwrap()
}

/// Vertex sets of simple cycles, by trying every ordering of every subset.
fn cycle_sets(d: &Digraph) -> Vec<u32> {
    fn orders(rest: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == rest.len() {
            out.push(rest.clone());
            return;
        }
        for i in k..rest.len() {
            rest.swap(k, i);
            orders(rest, k + 1, out);
            rest.swap(k, i);
        }
    }
    let n = d.n();
    let mut sets = Vec::new();
    for s in 1u32..1 << n {
        let mut vs: Vec<usize> = (0..n).filter(|v| s >> v & 1 == 1).collect();
        let mut all = Vec::new();
        orders(&mut vs, 0, &mut all);
        if all.iter().any(|o| (0..o.len()).all(|i| d.has_arc(o[i], o[(i + 1) % o.len()]))) {
            sets.push(s);
        }
    }
    sets
}

fn brute_packing(sets: &[u32], used: u32) -> usize {
    sets.iter()
        .filter(|&&c| c & used == 0)
        .map(|&c| 1 + brute_packing(sets, used | c))
        .max()
        .unwrap_or(0)
}

fn brute_cover(sets: &[u32], used: u32) -> usize {
    sets.iter()
        .filter(|&&c| c & used == 0)
        .map(|&c| c.count_ones() as usize + brute_cover(sets, used | c))
        .max()
        .unwrap_or(0)
}

fn brute_independent_arcs(d: &Digraph) -> usize {
    let arcs: Vec<(usize, usize)> = d.arcs().collect();
    (0u32..1 << arcs.len())
        .filter(|&s| {
            let chosen: Vec<_> = (0..arcs.len()).filter(|i| s >> i & 1 == 1).map(|i| arcs[i]).collect();
            let tails: u32 = chosen.iter().fold(0, |m, a| m | 1 << a.0);
            let heads: u32 = chosen.iter().fold(0, |m, a| m | 1 << a.1);
            tails.count_ones() as usize == chosen.len() && heads.count_ones() as usize == chosen.len()
        })
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap()
}

fn small_digraphs() -> impl Iterator<Item = Digraph> {
    (1..=3).flat_map(all_digraphs)
}

#[test]
fn feedback_and_packing_numbers() {
    let lim = Limits::default();
    for d in small_digraphs() {
        let sets = cycle_sets(&d);
        assert_eq!(transversal_number(&d, &lim).unwrap(), brute_fvs(&d), "{}", d.fingerprint());
        assert_eq!(cycle_packing_number(&d, &lim).unwrap(), brute_packing(&sets, 0), "{}", d.fingerprint());
        assert_eq!(max_cycle_cover(&d), brute_cover(&sets, 0), "{}", d.fingerprint());
    }
}

#[test]
fn feedback_and_packing_sampled_four_vertices() {
    let lim = Limits::default();
    // every 97th digraph on four vertices
    for d in all_digraphs(4).step_by(97) {
        let sets = cycle_sets(&d);
        assert_eq!(transversal_number(&d, &lim).unwrap(), brute_fvs(&d), "{}", d.fingerprint());
        assert_eq!(cycle_packing_number(&d, &lim).unwrap(), brute_packing(&sets, 0), "{}", d.fingerprint());
        assert_eq!(max_cycle_cover(&d), brute_cover(&sets, 0), "{}", d.fingerprint());
    }
}

#[test]
fn independent_arcs() {
    for d in small_digraphs() {
        assert_eq!(max_independent_arcs(&d), brute_independent_arcs(&d), "{}", d.fingerprint());
    }
}

#[test]
fn minrank_search_matches_enumeration() {
    let lim = Limits::default();
    for d in small_digraphs().filter(|d| d.n() <= 2).chain(all_digraphs(3).step_by(7)) {
        let enumerated = enumerate_stats(&d, 2, true, &lim).unwrap().rank.min;
        assert_eq!(minrank_exact(&d, 2, &lim).unwrap(), enumerated, "{}", d.fingerprint());
    }
}

#[test]
fn minrank_non_increasing_in_q() {
    let lim = Limits::default();
    for d in all_digraphs(2) {
        let two = enumerate_stats(&d, 2, true, &lim).unwrap().rank.min;
        let three = minrank_exact(&d, 3, &lim).unwrap();
        assert!(three <= two, "{}: {two} {three}", d.fingerprint());
        match minrank_exact(&d, 4, &lim) {
            Ok(four) => assert!(four <= three, "{}: {three} {four}", d.fingerprint()),
            Err(e) => assert!(e.is_size_limit() && (0..2).any(|v| d.in_degree(v) == 2)),
        }
    }
}

#[test]
fn packing_witness_has_packing_plus_one_fixed_points() {
    let lim = Limits::default();
    for d in small_digraphs() {
        let packing = maximum_cycle_packing(&d, &lim).unwrap();
        let f = packing_plus_one_witness(&d, &packing).unwrap();
        let fixed = f.fixed_points(&lim).unwrap().len();
        assert!(fixed > packing.len(), "{}", d.fingerprint());
        assert!(f.interaction_graph().arcs().all(|(u, v)| d.has_arc(u, v)));
    }
    // loop-full graphs packed by their loops: the witness is strict
    for d in small_digraphs().filter(|d| d.loop_count() == d.n()) {
        let loops: Vec<Vec<usize>> = (0..d.n()).map(|v| vec![v]).collect();
        let f = packing_plus_one_witness(&d, &loops).unwrap();
        assert_eq!(f.interaction_graph(), d, "{}", d.fingerprint());
        assert!(f.fixed_points(&lim).unwrap().len() > d.n());
    }
}
