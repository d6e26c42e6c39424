//! Canonical source/sink form of an interaction graph and the minimum-rank
//! bounds computed on it.
//!
//! `C(D)` splits every vertex into a source copy and a sink copy, drops
//! redundant sinks, then drops isolated or duplicated sources. Minimum rank
//! is preserved by every step, and all bounds below live on the sinks.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{find_isomorphism, Digraph};
use crate::limits::Limits;

/// Bipartite canonical graph. Sources come first when viewed as a digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalGraph {
    /// Original (0-based) vertex copied by each source.
    pub sources: Vec<usize>,
    /// Original (0-based) vertex copied by each sink.
    pub sinks: Vec<usize>,
    /// Source indices feeding each sink, sorted.
    pub sink_in: Vec<Vec<usize>>,
}

impl CanonicalGraph {
    pub fn num_sources(&self) -> usize {
        self.sources.len()
    }

    pub fn num_sinks(&self) -> usize {
        self.sinks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sinks.is_empty() && self.sources.is_empty()
    }

    /// Arcs as `(source index, sink index)`.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.sink_in
            .iter()
            .enumerate()
            .flat_map(|(b, ins)| ins.iter().map(move |&a| (a, b)))
    }

    /// Sources are vertices `0..|A|`, sinks `|A|..|A|+|B|`.
    pub fn to_digraph(&self) -> Digraph {
        let a = self.num_sources();
        Digraph::from_arcs_dedup(a + self.num_sinks(), self.arcs().map(|(s, b)| (s, a + b)))
    }

    /// In-neighbourhoods of the sinks as source bitmasks.
    pub fn sink_masks(&self) -> Result<Vec<u128>> {
        if self.num_sources() > 128 {
            return Err(Error::too_big("canonical sources for bitmask bounds", self.num_sources() as u64, 128u64));
        }
        Ok(self
            .sink_in
            .iter()
            .map(|ins| ins.iter().fold(0u128, |m, &a| m | (1 << a)))
            .collect())
    }

    /// Splits into weakly connected components (sinks linked through shared
    /// sources). Every source of a canonical graph feeds some sink.
    pub fn components(&self) -> Vec<CanonicalGraph> {
        let d = self.to_digraph();
        let a = self.num_sources();
        d.weak_components()
            .into_iter()
            .map(|comp| {
                let src: Vec<usize> = comp.iter().copied().filter(|&v| v < a).collect();
                let snk: Vec<usize> = comp.iter().copied().filter(|&v| v >= a).map(|v| v - a).collect();
                let index: HashMap<usize, usize> = src.iter().enumerate().map(|(i, &s)| (s, i)).collect();
                CanonicalGraph {
                    sources: src.iter().map(|&s| self.sources[s]).collect(),
                    sinks: snk.iter().map(|&b| self.sinks[b]).collect(),
                    sink_in: snk.iter().map(|&b| self.sink_in[b].iter().map(|s| index[s]).collect()).collect(),
                }
            })
            .collect()
    }

    /// Graph text format plus `# provenance <vertex> <original> <copy>` lines.
    pub fn to_text(&self) -> String {
        let mut s = self.to_digraph().to_text();
        for (i, &v) in self.sources.iter().enumerate() {
            let _ = writeln!(s, "# provenance {} {} 0", i + 1, v + 1);
        }
        let a = self.num_sources();
        for (i, &v) in self.sinks.iter().enumerate() {
            let _ = writeln!(s, "# provenance {} {} 1", a + i + 1, v + 1);
        }
        s
    }
}

/// Computes `C(D)`.
///
/// Sinks are removed one at a time (largest original index first) while any
/// is redundant: its in-neighbourhood is empty, or it is the union of the
/// in-neighbourhoods of other non-isolated sinks, where a single witness
/// sink must have a smaller index. Removing all redundant sinks at once can
/// delete both members of a duplicated pair and change the minimum rank.
/// Sources that are isolated or duplicate a smaller source are then removed
/// together.
pub fn canonicalize(d: &Digraph) -> CanonicalGraph {
    let n = d.n();
    let ins: Vec<BTreeSet<usize>> = (0..n).map(|v| d.in_neighbors(v).iter().copied().collect()).collect();
    let mut alive = vec![true; n];

    let redundant = |v: usize, alive: &[bool]| -> bool {
        let target = &ins[v];
        if target.is_empty() {
            return true;
        }
        let witnesses: Vec<usize> = (0..n)
            .filter(|&u| u != v && alive[u] && !ins[u].is_empty() && ins[u].is_subset(target))
            .collect();
        let union: BTreeSet<usize> = witnesses.iter().flat_map(|&u| ins[u].iter().copied()).collect();
        union == *target && (witnesses.len() >= 2 || witnesses.first().is_some_and(|&u| u < v))
    };

    while let Some(v) = (0..n).rev().find(|&v| alive[v] && redundant(v, &alive)) {
        alive[v] = false;
    }
    let sinks: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();

    // out-neighbourhood of each source copy among remaining sinks
    let outs: Vec<Vec<usize>> = (0..n)
        .map(|u| {
            sinks
                .iter()
                .enumerate()
                .filter(|(_, &b)| ins[b].contains(&u))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let sources: Vec<usize> = (0..n)
        .filter(|&v| !outs[v].is_empty() && !(0..v).any(|u| outs[u] == outs[v]))
        .collect();
    let index: HashMap<usize, usize> = sources.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let sink_in = sinks
        .iter()
        .map(|&b| ins[b].iter().filter_map(|u| index.get(u).copied()).collect())
        .collect();
    CanonicalGraph {
        sources,
        sinks,
        sink_in,
    }
}

fn conflict_graph(masks: &[u128]) -> Vec<u64> {
    (0..masks.len())
        .map(|i| {
            (0..masks.len())
                .filter(|&j| j != i && masks[i] & masks[j] != 0)
                .fold(0u64, |m, j| m | (1 << j))
        })
        .collect()
}

/// Number of independent sets (empty set included) of the sink conflict
/// graph, where sinks conflict when their in-neighbourhoods meet.
pub fn upper_bound_u(c: &CanonicalGraph, limits: &Limits) -> Result<u64> {
    let b = c.num_sinks();
    if b > limits.max_sinks_u.min(63) {
        return Err(Error::too_big("sinks for independent-set count", b as u64, limits.max_sinks_u as u64));
    }
    let adj = conflict_graph(&c.sink_masks()?);

    fn count(mask: u64, adj: &[u64], memo: &mut HashMap<u64, u64>) -> u64 {
        if mask == 0 {
            return 1;
        }
        if let Some(&v) = memo.get(&mask) {
            return v;
        }
        let mut best = (0u32, usize::MAX);
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            let deg = (adj[v] & mask).count_ones();
            if best.1 == usize::MAX || deg > best.0 {
                best = (deg, v);
            }
        }
        let result = if best.0 == 0 {
            1u64 << mask.count_ones()
        } else {
            let v = best.1;
            count(mask & !(1 << v), adj, memo) + count(mask & !(1 << v) & !adj[v], adj, memo)
        };
        memo.insert(mask, result);
        result
    }

    let full = if b == 0 { 0 } else { u64::MAX >> (64 - b) };
    Ok(count(full, &adj, &mut HashMap::new()))
}

fn lattice_unions(c: &CanonicalGraph, limits: &Limits) -> Result<(Vec<u128>, Vec<u128>)> {
    let b = c.num_sinks();
    if b > limits.max_sinks_lattice {
        return Err(Error::too_big("sinks for subset-lattice bound", b as u64, limits.max_sinks_lattice as u64));
    }
    let masks = c.sink_masks()?;
    let mut unions = vec![0u128; 1 << b];
    for s in 1..unions.len() {
        let low = s.trailing_zeros() as usize;
        unions[s] = unions[s & (s - 1)] | masks[low];
    }
    Ok((masks, unions))
}

/// One plus the longest sequence of distinct sinks in which every sink
/// brings a source not feeding any earlier sink.
pub fn lower_bound_l(c: &CanonicalGraph, limits: &Limits) -> Result<u64> {
    let (masks, unions) = lattice_unions(c, limits)?;
    let b = c.num_sinks();
    let mut reach = vec![false; 1 << b];
    reach[0] = true;
    let mut longest = 0;
    for s in 0..reach.len() {
        if !reach[s] {
            continue;
        }
        longest = longest.max(s.count_ones());
        for (j, &m) in masks.iter().enumerate() {
            if s >> j & 1 == 0 && m & !unions[s] != 0 {
                reach[s | 1 << j] = true;
            }
        }
    }
    Ok(longest as u64 + 1)
}

/// Least solution `r(B)` of the sub-rank constraint system over sink
/// subsets: `r(empty) = 1`, `r(S+b) >= r(S)+1` when `b` brings a new source,
/// `r(S u T) >= r(S) r(T)` when `S` and `T` share no source, and `r` is
/// monotone. Every constraint bounds `r(S)` by proper subsets, so a single
/// pass in increasing subset order reaches the fixed point.
pub fn refined_bound_lp(c: &CanonicalGraph, limits: &Limits) -> Result<u64> {
    Ok(*sub_rank_lattice(c, limits)?.last().expect("lattice has the empty set"))
}

/// The full least fixed point `r(S)` indexed by sink subset bitmask.
pub fn sub_rank_lattice(c: &CanonicalGraph, limits: &Limits) -> Result<Vec<u64>> {
    let (masks, unions) = lattice_unions(c, limits)?;
    let b = c.num_sinks();
    let adj = conflict_graph(&masks);
    let mut r = vec![1u64; 1 << b];
    for s in 1usize..r.len() {
        let mut best = 1u64;
        let mut bitsrc = s;
        while bitsrc != 0 {
            let j = bitsrc.trailing_zeros() as usize;
            bitsrc &= bitsrc - 1;
            let rest = s & !(1 << j);
            best = best.max(r[rest]);
            if masks[j] & !unions[rest] != 0 {
                best = best.max(r[rest] + 1);
            }
        }
        // components of the conflict graph inside s
        let mut comps: Vec<usize> = Vec::new();
        let mut left = s;
        while left != 0 {
            let start = left.trailing_zeros() as usize;
            let mut comp = 1usize << start;
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let nb = (adj[v] as usize) & s & !comp;
                comp |= nb;
                frontier |= nb;
            }
            comps.push(comp);
            left &= !comp;
        }
        if comps.len() >= 2 {
            // unions of components containing the first one, proper
            let k = comps.len() - 1;
            for pick in 0..(1usize << k) - 1 {
                let mut part = comps[0];
                for (i, &cm) in comps[1..].iter().enumerate() {
                    if pick >> i & 1 == 1 {
                        part |= cm;
                    }
                }
                let prod = r[part].saturating_mul(r[s & !part]);
                best = best.max(prod);
            }
        }
        r[s] = best;
    }
    Ok(r)
}

/// Rank of the conjunctive network restricted to the sinks: sources are
/// constant, each sink is the AND of its sources.
pub fn conjunctive_rank_canonical(c: &CanonicalGraph, limits: &Limits) -> Result<u64> {
    let a = c.num_sources();
    let states = limits.state_count(a, 2)?;
    let masks = c.sink_masks()?;
    if c.num_sinks() > 128 {
        return Err(Error::too_big("sinks for conjunctive rank", c.num_sinks() as u64, 128u64));
    }
    let mut seen: HashSet<u128> = HashSet::new();
    for x in 0..states as u128 {
        let pattern = masks
            .iter()
            .enumerate()
            .filter(|(_, &m)| x & m == m)
            .fold(0u128, |p, (j, _)| p | (1 << j));
        seen.insert(pattern);
    }
    Ok(seen.len() as u64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Tightness {
    /// `L = U = |B| + 1`; `witness` is a member of the tight family whose
    /// canonical form is isomorphic to the input (graph text, 1-based).
    Tight {
        #[serde(serialize_with = "ser_opt_graph")]
        witness: Option<Digraph>,
    },
    NotTight { l: u64, u: u64, sinks_plus_one: u64 },
}

fn ser_opt_graph<S: serde::Serializer>(g: &Option<Digraph>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match g {
        Some(g) => s.serialize_some(&g.fingerprint()),
        None => s.serialize_none(),
    }
}

/// Looped right side `R = 0..r`; every pair of `R` joined by an arc or by a
/// common in-neighbour outside `R`.
pub fn in_tight_family(h: &Digraph, r: usize) -> bool {
    (0..r).all(|v| h.has_loop(v))
        && (0..r).all(|i| {
            (i + 1..r).all(|j| {
                h.has_arc(i, j)
                    || h.has_arc(j, i)
                    || (r..h.n()).any(|l| h.has_arc(l, i) && h.has_arc(l, j))
            })
        })
}

pub fn tightness_classify(c: &CanonicalGraph, limits: &Limits) -> Result<Tightness> {
    let l = lower_bound_l(c, limits)?;
    let u = upper_bound_u(c, limits)?;
    let target = c.num_sinks() as u64 + 1;
    if !(l == u && u == target) {
        return Ok(Tightness::NotTight {
            l,
            u,
            sinks_plus_one: target,
        });
    }
    Ok(Tightness::Tight {
        witness: tight_witness(c)?,
    })
}

/// Searches sink orders and new-source choices for a tight-family graph `H`
/// with `C(H)` isomorphic to `c`.
fn tight_witness(c: &CanonicalGraph) -> Result<Option<Digraph>> {
    let masks = c.sink_masks()?;
    let (n, m) = (c.num_sinks(), c.num_sources());
    let target = c.to_digraph();
    let mut budget = 200_000usize;

    struct Ctx<'a> {
        c: &'a CanonicalGraph,
        masks: &'a [u128],
        target: &'a Digraph,
        n: usize,
        m: usize,
    }

    fn build(ctx: &Ctx, order: &[usize], picked: &[usize]) -> Digraph {
        let mut rest: Vec<usize> = (0..ctx.m).filter(|a| !picked.contains(a)).collect();
        let mut sources: Vec<usize> = picked.to_vec();
        sources.append(&mut rest);
        let mut arcs = Vec::new();
        for (i, &a) in sources.iter().enumerate() {
            for (j, &b) in order.iter().enumerate() {
                if ctx.masks[b] >> a & 1 == 1 {
                    arcs.push((i, j));
                }
            }
        }
        let _ = ctx.c;
        Digraph::from_arcs_dedup(ctx.m, arcs)
    }

    fn search(ctx: &Ctx, order: &mut Vec<usize>, picked: &mut Vec<usize>, covered: u128, budget: &mut usize) -> Option<Digraph> {
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        if order.len() == ctx.n {
            let h = build(ctx, order, picked);
            if in_tight_family(&h, ctx.n) && find_isomorphism(&canonicalize(&h).to_digraph(), ctx.target).is_some() {
                return Some(h);
            }
            return None;
        }
        for b in 0..ctx.n {
            if order.contains(&b) {
                continue;
            }
            let fresh = ctx.masks[b] & !covered;
            let mut f = fresh;
            while f != 0 {
                let a = f.trailing_zeros() as usize;
                f &= f - 1;
                order.push(b);
                picked.push(a);
                if let Some(h) = search(ctx, order, picked, covered | ctx.masks[b], budget) {
                    return Some(h);
                }
                order.pop();
                picked.pop();
            }
        }
        None
    }

    let ctx = Ctx {
        c,
        masks: &masks,
        target: &target,
        n,
        m,
    };
    Ok(search(&ctx, &mut Vec::new(), &mut Vec::new(), 0, &mut budget))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MinrankClass {
    /// No arcs: minimum rank 1.
    One,
    /// All non-sources share one in-neighbourhood: minimum rank 2.
    Two,
    /// Disjoint union of cycles: minimum rank `2^n`.
    Full,
    Other,
}

impl MinrankClass {
    /// Absolute minimum rank implied by the verdict (also the value at q=2).
    pub fn implied_minrank(self, n: usize) -> Option<u128> {
        match self {
            MinrankClass::One => Some(1),
            MinrankClass::Two => Some(2),
            MinrankClass::Full => 1u128.checked_shl(n as u32),
            MinrankClass::Other => None,
        }
    }
}

pub fn minrank_classify(d: &Digraph) -> MinrankClass {
    if d.arc_count() == 0 {
        return MinrankClass::One;
    }
    let mut shared: Option<&[usize]> = None;
    let two = (0..d.n()).filter(|&v| !d.is_source(v)).all(|v| {
        let nb = d.in_neighbors(v);
        *shared.get_or_insert(nb) == nb
    });
    if two {
        return MinrankClass::Two;
    }
    if (0..d.n()).all(|v| d.in_degree(v) == 1 && d.out_degree(v) == 1) {
        return MinrankClass::Full;
    }
    MinrankClass::Other
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbsoluteMinrankBounds {
    pub lower: u128,
    pub upper: u128,
    /// Alphabet size at which the minimum rank is already the absolute one.
    pub stabilization_q: u64,
    pub exact: bool,
}

/// Bounds on `min_q minrank[D, q]`, multiplied over the components of
/// `C(D)`: the refined lattice bound below, `min(crank, U)` above.
pub fn absolute_minrank_bounds(d: &Digraph, limits: &Limits) -> Result<AbsoluteMinrankBounds> {
    let c = canonicalize(d);
    let overflow = || Error::Invariant("minimum rank bound overflows u128".into());
    let (mut lower, mut upper) = (1u128, 1u128);
    for comp in c.components() {
        let lp = refined_bound_lp(&comp, limits)? as u128;
        let u = upper_bound_u(&comp, limits)?;
        let cr = conjunctive_rank_canonical(&comp, limits)?;
        lower = lower.checked_mul(lp).ok_or_else(overflow)?;
        upper = upper.checked_mul(u.min(cr) as u128).ok_or_else(overflow)?;
    }
    let q = (d.n() as u64 + 1) * d.arc_count() as u64;
    Ok(AbsoluteMinrankBounds {
        lower,
        upper,
        stabilization_q: q.max(2),
        exact: lower == upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::is_isomorphic;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn cycle_canonicalizes_to_three_arcs() {
        let c = canonicalize(&c3());
        assert_eq!((c.num_sources(), c.num_sinks(), c.arcs().count()), (3, 3, 3));
        assert_eq!(c.components().len(), 3);
        for comp in c.components() {
            assert!(is_isomorphic(&comp.to_digraph(), &p1()));
        }
    }

    #[test]
    fn star_canonical_form() {
        let c = canonicalize(&star3());
        assert_eq!(c.sources, vec![0, 1, 2, 3]);
        assert_eq!(c.sinks, vec![1, 2, 3]);
        assert_eq!(c.sink_in, vec![vec![0, 1], vec![0, 2], vec![0, 3]]);
    }

    #[test]
    fn empty_graph_is_empty() {
        assert!(canonicalize(&e3()).is_empty());
        let c = canonicalize(&e3());
        assert_eq!(upper_bound_u(&c, &lim()).unwrap(), 1);
        assert_eq!(lower_bound_l(&c, &lim()).unwrap(), 1);
        assert_eq!(refined_bound_lp(&c, &lim()).unwrap(), 1);
    }

    #[test]
    fn fig1_is_its_own_canonical_form() {
        let c = canonicalize(&fig1());
        assert!(is_isomorphic(&c.to_digraph(), &fig1()));
        assert_eq!(upper_bound_u(&c, &lim()).unwrap(), 8);
        assert_eq!(lower_bound_l(&c, &lim()).unwrap(), 4);
        assert_eq!(refined_bound_lp(&c, &lim()).unwrap(), 6);
        assert_eq!(conjunctive_rank_canonical(&c, &lim()).unwrap(), 7);
    }

    #[test]
    fn star_bounds() {
        let c = canonicalize(&star3());
        assert_eq!(upper_bound_u(&c, &lim()).unwrap(), 4);
        assert_eq!(lower_bound_l(&c, &lim()).unwrap(), 4);
        assert_eq!(refined_bound_lp(&c, &lim()).unwrap(), 4);
        let single = canonicalize(&p1());
        assert_eq!(refined_bound_lp(&single, &lim()).unwrap(), 2);
    }

    #[test]
    fn duplicated_sinks_keep_one_copy() {
        // N(1) = N(2) = {1,2}, N(3) = {1}; removing both duplicates at once
        // would leave a single sink.
        let d = Digraph::new(3, [(0, 0), (1, 0), (0, 1), (1, 1), (0, 2)]).unwrap();
        let c = canonicalize(&d);
        assert_eq!(c.sinks, vec![0, 2]);
        assert_eq!(lower_bound_l(&c, &lim()).unwrap(), 3);
    }

    #[test]
    fn idempotent_on_fixtures() {
        for d in [c3(), star3(), fig1(), k3(), e3(), c5_sym(), p1(), l1(), c3_looped()] {
            let c = canonicalize(&d);
            let again = canonicalize(&c.to_digraph());
            assert!(is_isomorphic(&c.to_digraph(), &again.to_digraph()), "{}", d.fingerprint());
        }
        for d in all_digraphs(3) {
            let c = canonicalize(&d);
            let again = canonicalize(&c.to_digraph());
            assert!(is_isomorphic(&c.to_digraph(), &again.to_digraph()), "{}", d.fingerprint());
        }
    }

    #[test]
    fn tightness() {
        match tightness_classify(&canonicalize(&star3()), &lim()).unwrap() {
            Tightness::Tight { witness } => {
                let h = witness.expect("witness found");
                assert!(is_isomorphic(&h, &star3()));
            }
            other => panic!("expected tight, got {other:?}"),
        }
        assert_eq!(
            tightness_classify(&canonicalize(&fig1()), &lim()).unwrap(),
            Tightness::NotTight { l: 4, u: 8, sinks_plus_one: 5 }
        );
        assert_eq!(
            tightness_classify(&canonicalize(&k3()), &lim()).unwrap(),
            Tightness::NotTight { l: 3, u: 4, sinks_plus_one: 4 }
        );
    }

    #[test]
    fn classification_examples() {
        assert_eq!(minrank_classify(&e3()), MinrankClass::One);
        let fan = Digraph::new(3, [(0, 1), (0, 2)]).unwrap();
        assert_eq!(minrank_classify(&fan), MinrankClass::Two);
        assert_eq!(minrank_classify(&c3()), MinrankClass::Full);
        assert_eq!(MinrankClass::Full.implied_minrank(3), Some(8));
        assert_eq!(minrank_classify(&k3()), MinrankClass::Other);
    }

    #[test]
    fn absolute_bounds_examples() {
        let b = absolute_minrank_bounds(&star3(), &lim()).unwrap();
        assert_eq!((b.lower, b.upper, b.stabilization_q, b.exact), (4, 4, 30, true));
        let b = absolute_minrank_bounds(&fig1(), &lim()).unwrap();
        assert_eq!((b.lower, b.upper, b.stabilization_q, b.exact), (6, 7, 48, false));
        let b = absolute_minrank_bounds(&e3(), &lim()).unwrap();
        assert_eq!((b.lower, b.upper, b.stabilization_q, b.exact), (1, 1, 2, true));
    }

    #[test]
    fn provenance_text() {
        let text = canonicalize(&p1()).to_text();
        assert_eq!(text, "n 2\n1 2\n# provenance 1 1 0\n# provenance 2 2 1\n");
        assert_eq!(Digraph::parse(&text).unwrap(), p1());
    }
}
