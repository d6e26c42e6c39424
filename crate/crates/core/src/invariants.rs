//! Exact and fractional graph invariants consumed by the rank and
//! fixed-point bounds.
//!
//! The NP-hard ones (feedback vertex sets, cycle packings, clique
//! partitions) are exact branch-and-bound searches over vertex bitmasks and
//! refuse graphs above [`Limits::max_exact_n`].

use num_rational::BigRational;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::limits::Limits;
use crate::lp::{ratio_to_f64, Cmp, LinearProgram};
use crate::matching::{max_bipartite_matching, max_weight_assignment};

/// Optimal value of an LP, exact when it was solved in rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct LpValue {
    pub exact: Option<BigRational>,
    pub value: f64,
}

impl LpValue {
    pub(crate) fn from_exact(r: BigRational) -> Self {
        LpValue {
            value: ratio_to_f64(&r),
            exact: Some(r),
        }
    }

    pub(crate) fn from_float(v: f64) -> Self {
        LpValue { exact: None, value: v }
    }
}

impl Serialize for LpValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("LpValue", 2)?;
        st.serialize_field("exact", &self.exact.as_ref().map(|r| r.to_string()))?;
        st.serialize_field("value", &self.value)?;
        st.end()
    }
}

fn masks_of(d: &Digraph) -> (Vec<u64>, Vec<u64>) {
    (d.out_masks(), d.in_masks())
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

/// Shortest cycle inside `alive`, as a vertex list, by BFS from each vertex.
fn shortest_cycle_in(out: &[u64], alive: u64) -> Option<Vec<usize>> {
    let mut best: Option<Vec<usize>> = None;
    for s in bits(alive) {
        if out[s] >> s & 1 == 1 {
            return Some(vec![s]);
        }
        let mut parent = [usize::MAX; 64];
        let mut frontier = 1u64 << s;
        let mut seen = 1u64 << s;
        let mut depth = 0;
        'bfs: while frontier != 0 {
            depth += 1;
            if best.as_ref().is_some_and(|b| depth >= b.len()) {
                break;
            }
            let mut next = 0u64;
            for v in bits(frontier) {
                let succ = out[v] & alive;
                if succ >> s & 1 == 1 {
                    let mut cyc = vec![v];
                    let mut w = v;
                    while w != s {
                        w = parent[w];
                        cyc.push(w);
                    }
                    cyc.reverse();
                    best = Some(cyc);
                    break 'bfs;
                }
                for w in bits(succ & !seen) {
                    parent[w] = v;
                    seen |= 1 << w;
                    next |= 1 << w;
                }
            }
            frontier = next;
        }
    }
    best
}

/// Drops vertices that cannot lie on a cycle inside `alive`.
fn strip_acyclic_part(out: &[u64], inn: &[u64], mut alive: u64) -> u64 {
    loop {
        let mut removed = false;
        for v in bits(alive) {
            if out[v] & alive == 0 || inn[v] & alive == 0 {
                alive &= !(1 << v);
                removed = true;
            }
        }
        if !removed {
            return alive;
        }
    }
}

/// Minimum feedback vertex set size.
pub fn transversal_number(d: &Digraph, limits: &Limits) -> Result<usize> {
    Ok(minimum_feedback_set(d, limits)?.len())
}

/// A minimum feedback vertex set (0-based vertices, sorted).
pub fn minimum_feedback_set(d: &Digraph, limits: &Limits) -> Result<Vec<usize>> {
    limits.check_exact_n(d.n())?;
    let (out, inn) = masks_of(d);

    fn greedy_packing_lb(out: &[u64], inn: &[u64], mut alive: u64) -> usize {
        let mut count = 0;
        loop {
            alive = strip_acyclic_part(out, inn, alive);
            match shortest_cycle_in(out, alive) {
                Some(c) => {
                    count += 1;
                    for v in c {
                        alive &= !(1 << v);
                    }
                }
                None => return count,
            }
        }
    }

    fn search(out: &[u64], inn: &[u64], alive: u64, chosen: u64, best: &mut u64) {
        let alive = strip_acyclic_part(out, inn, alive);
        let size = chosen.count_ones();
        if alive == 0 {
            if size < best.count_ones() {
                *best = chosen;
            }
            return;
        }
        if size as usize + greedy_packing_lb(out, inn, alive) >= best.count_ones() as usize {
            return;
        }
        let cycle = shortest_cycle_in(out, alive).expect("stripped core has a cycle");
        for v in cycle {
            search(out, inn, alive & !(1 << v), chosen | (1 << v), best);
        }
    }

    let mut best = full_mask(d.n());
    search(&out, &inn, full_mask(d.n()), 0, &mut best);
    Ok(bits(best).collect())
}

/// Induced (chordless) directed cycles, each listed from its smallest
/// vertex along the arcs. Every cycle of `d` contains the vertex set of one
/// of these, so packing and fractional-packing optima are unchanged by
/// restricting to them.
pub fn induced_cycles(d: &Digraph, limits: &Limits) -> Result<Vec<Vec<usize>>> {
    limits.check_exact_n(d.n())?;
    let (out, inn) = masks_of(d);
    let cap = limits.max_lp_columns;
    let mut found = Vec::new();

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        out: &[u64],
        inn: &[u64],
        allowed: u64,
        path: &mut Vec<usize>,
        path_mask: u64,
        found: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<()> {
        let s = path[0];
        let last = *path.last().expect("non-empty path");
        let k = path.len() - 1;
        // interior vertices p_1..p_{k-1}
        let interior = path_mask & !(1 << s) & !(1 << last);
        for w in bits(out[last] & allowed & !path_mask) {
            let touch = out[w] | inn[w];
            if touch & interior != 0 {
                continue;
            }
            if k >= 1 && (inn[w] >> s & 1 == 1 || out[w] >> last & 1 == 1) {
                continue;
            }
            if out[w] >> s & 1 == 1 {
                let mut cyc = path.clone();
                cyc.push(w);
                found.push(cyc);
                if found.len() > cap {
                    return Err(Error::too_big("enumerated cycles", found.len() as u64, cap as u64));
                }
                continue;
            }
            path.push(w);
            dfs(out, inn, allowed, path, path_mask | (1 << w), found, cap)?;
            path.pop();
        }
        Ok(())
    }

    let looped: u64 = (0..d.n()).filter(|&v| d.has_loop(v)).fold(0, |m, v| m | (1 << v));
    for s in 0..d.n() {
        if looped >> s & 1 == 1 {
            found.push(vec![s]);
            continue;
        }
        let allowed = full_mask(d.n()) & !((1u64 << s) | ((1u64 << s) - 1)) & !looped;
        let mut path = vec![s];
        dfs(&out, &inn, allowed, &mut path, 1 << s, &mut found, cap)?;
    }
    Ok(found)
}

fn cycle_mask(c: &[usize]) -> u64 {
    c.iter().fold(0, |m, &v| m | (1 << v))
}

/// Maximum number of vertex-disjoint cycles.
pub fn cycle_packing_number(d: &Digraph, limits: &Limits) -> Result<usize> {
    Ok(maximum_cycle_packing(d, limits)?.len())
}

/// A maximum family of vertex-disjoint cycles.
pub fn maximum_cycle_packing(d: &Digraph, limits: &Limits) -> Result<Vec<Vec<usize>>> {
    let cycles = induced_cycles(d, limits)?;
    let masks: Vec<u64> = cycles.iter().map(|c| cycle_mask(c)).collect();
    let n = d.n();
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &m) in masks.iter().enumerate() {
        for v in bits(m) {
            through[v].push(i);
        }
    }

    struct Search<'a> {
        masks: &'a [u64],
        through: &'a [Vec<usize>],
        best: Vec<usize>,
    }

    impl Search<'_> {
        fn run(&mut self, avail: u64, chosen: &mut Vec<usize>) {
            // vertices still usable by some cycle inside avail
            let live: Vec<usize> = self
                .masks
                .iter()
                .enumerate()
                .filter(|(_, &m)| m & avail == m)
                .map(|(i, _)| i)
                .collect();
            if live.is_empty() {
                if chosen.len() > self.best.len() {
                    self.best = chosen.clone();
                }
                return;
            }
            let cover = live.iter().fold(0u64, |m, &i| m | self.masks[i]);
            let shortest = live.iter().map(|&i| self.masks[i].count_ones()).min().unwrap_or(1);
            let ub = chosen.len() + (cover.count_ones() / shortest) as usize;
            if ub <= self.best.len() {
                return;
            }
            let v = cover.trailing_zeros() as usize;
            for &i in self.through[v].iter() {
                let m = self.masks[i];
                if m & avail == m {
                    chosen.push(i);
                    self.run(avail & !m, chosen);
                    chosen.pop();
                }
            }
            self.run(avail & !(1 << v), chosen);
        }
    }

    let mut s = Search {
        masks: &masks,
        through: &through,
        best: Vec::new(),
    };
    s.run(full_mask(n), &mut Vec::new());
    Ok(s.best.iter().map(|&i| cycles[i].clone()).collect())
}

/// Symmetric (clique) adjacency: `u` and `v` joined iff both arcs exist.
fn clique_adjacency(d: &Digraph) -> Vec<u64> {
    let (out, inn) = masks_of(d);
    (0..d.n()).map(|v| out[v] & inn[v] & !(1 << v)).collect()
}

/// Minimum number of cliques partitioning the vertex set. A clique needs
/// both arcs between every pair of distinct members; loops are irrelevant.
pub fn clique_partition_number(d: &Digraph, limits: &Limits) -> Result<usize> {
    limits.check_exact_n(d.n())?;
    let adj = clique_adjacency(d);
    let mut order: Vec<usize> = (0..d.n()).collect();
    order.sort_by_key(|&v| adj[v].count_ones());

    fn search(order: &[usize], adj: &[u64], idx: usize, groups: &mut Vec<u64>, best: &mut usize) {
        if groups.len() >= *best {
            return;
        }
        if idx == order.len() {
            *best = groups.len();
            return;
        }
        let v = order[idx];
        for g in 0..groups.len() {
            if groups[g] & !adj[v] == 0 {
                groups[g] |= 1 << v;
                search(order, adj, idx + 1, groups, best);
                groups[g] &= !(1 << v);
            }
        }
        groups.push(1 << v);
        search(order, adj, idx + 1, groups, best);
        groups.pop();
    }

    let mut best = d.n() + 1;
    search(&order, &adj, 0, &mut Vec::new(), &mut best);
    Ok(best.min(d.n()))
}

/// Maximal cliques (Bron-Kerbosch with pivoting).
pub fn maximal_cliques(d: &Digraph, limits: &Limits) -> Result<Vec<u64>> {
    limits.check_exact_n(d.n())?;
    let adj = clique_adjacency(d);
    let mut out = Vec::new();
    let cap = limits.max_lp_columns;

    fn bk(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>, cap: usize) -> Result<()> {
        if p == 0 && x == 0 {
            out.push(r);
            if out.len() > cap {
                return Err(Error::too_big("enumerated cliques", out.len() as u64, cap as u64));
            }
            return Ok(());
        }
        let pivot = bits(p | x).max_by_key(|&u| (adj[u] & p).count_ones()).expect("p|x non-empty");
        for v in bits(p & !adj[pivot]) {
            bk(adj, r | (1 << v), p & adj[v], x & adj[v], out, cap)?;
            p &= !(1 << v);
            x |= 1 << v;
        }
        Ok(())
    }

    bk(&adj, 0, full_mask(d.n()), 0, &mut out, cap)?;
    Ok(out)
}

fn solve_lp(lp: &LinearProgram, columns: usize, limits: &Limits) -> Result<LpValue> {
    if columns <= limits.exact_lp_columns {
        Ok(LpValue::from_exact(lp.solve_exact()?.value))
    } else {
        Ok(LpValue::from_float(lp.solve_float()?.value))
    }
}

/// Fractional cycle packing number, an LP over induced cycles.
pub fn fractional_cycle_packing(d: &Digraph, limits: &Limits) -> Result<LpValue> {
    let cycles = induced_cycles(d, limits)?;
    let mut lp = LinearProgram::new(cycles.len());
    lp.objective = vec![1; cycles.len()];
    for v in 0..d.n() {
        let row: Vec<(usize, i64)> = cycles
            .iter()
            .enumerate()
            .filter(|(_, c)| c.contains(&v))
            .map(|(i, _)| (i, 1))
            .collect();
        if !row.is_empty() {
            lp.add(row, Cmp::Le, 1);
        }
    }
    solve_lp(&lp, cycles.len(), limits)
}

/// Fractional clique cover number, an LP over maximal cliques.
pub fn fractional_clique_cover(d: &Digraph, limits: &Limits) -> Result<LpValue> {
    let cliques = maximal_cliques(d, limits)?;
    let mut lp = LinearProgram::new(cliques.len());
    lp.objective = vec![-1; cliques.len()];
    for v in 0..d.n() {
        let row: Vec<(usize, i64)> = cliques
            .iter()
            .enumerate()
            .filter(|(_, &c)| c >> v & 1 == 1)
            .map(|(i, _)| (i, 1))
            .collect();
        lp.add(row, Cmp::Ge, 1);
    }
    let neg = solve_lp(&lp, cliques.len(), limits)?;
    Ok(LpValue {
        exact: neg.exact.map(|r| -r),
        value: -neg.value,
    })
}

/// Maximum number of arcs with pairwise distinct tails and distinct heads.
pub fn max_independent_arcs(d: &Digraph) -> usize {
    let adj: Vec<Vec<usize>> = (0..d.n()).map(|u| d.out_neighbors(u).to_vec()).collect();
    max_bipartite_matching(&adj, d.n()).0
}

/// Lexicographically least maximum independent arc family, by tail.
pub fn independent_arc_certificate(d: &Digraph) -> Vec<(usize, usize)> {
    let n = d.n();
    let target = max_independent_arcs(d);
    let remaining_matching = |from: usize, used: &[bool]| {
        let adj: Vec<Vec<usize>> = (from..n)
            .map(|u| d.out_neighbors(u).iter().copied().filter(|&h| !used[h]).collect())
            .collect();
        max_bipartite_matching(&adj, n).0
    };
    let mut used = vec![false; n];
    let mut chosen = Vec::new();
    for u in 0..n {
        for &h in d.out_neighbors(u) {
            if used[h] {
                continue;
            }
            used[h] = true;
            if chosen.len() + 1 + remaining_matching(u + 1, &used) == target {
                chosen.push((u, h));
                break;
            }
            used[h] = false;
        }
    }
    debug_assert_eq!(chosen.len(), target);
    chosen
}

fn cycle_cover_weights(d: &Digraph) -> Vec<Vec<Option<i64>>> {
    let n = d.n();
    (0..n)
        .map(|u| {
            (0..n)
                .map(|v| {
                    if d.has_arc(u, v) {
                        Some(1)
                    } else if u == v {
                        Some(0)
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect()
}

/// Maximum number of vertices covered by disjoint cycles, via max-weight
/// perfect matching on the bipartite double with weight-0 self fallbacks.
pub fn max_cycle_cover(d: &Digraph) -> usize {
    let (w, _) = max_weight_assignment(&cycle_cover_weights(d)).expect("identity is always feasible");
    w as usize
}

/// Successor map of a lexicographically least optimal cycle cover:
/// `succ[v] = Some(w)` when `v` is covered and followed by `w` on its cycle.
pub fn cycle_cover_certificate(d: &Digraph) -> Vec<Option<usize>> {
    let n = d.n();
    let mut weights = cycle_cover_weights(d);
    let target = max_cycle_cover(d) as i64;
    for u in 0..n {
        let candidates: Vec<usize> = (0..n).filter(|&v| weights[u][v].is_some()).collect();
        for c in candidates {
            let saved = weights[u].clone();
            for (v, w) in weights[u].iter_mut().enumerate() {
                if v != c {
                    *w = None;
                }
            }
            if max_weight_assignment(&weights).is_some_and(|(t, _)| t == target) {
                break;
            }
            weights[u] = saved;
        }
    }
    let (_, assign) = max_weight_assignment(&weights).expect("fixed rows stay feasible");
    assign
        .iter()
        .enumerate()
        .map(|(u, &v)| d.has_arc(u, v).then_some(v))
        .collect()
}

/// `k` copies of every vertex; `(u,i) -> (v,j)` for each arc `uv` and all
/// `i, j`. Copy `(u, i)` gets index `u*k + i` (0-based).
pub fn blowup(d: &Digraph, k: usize) -> Digraph {
    assert!(k >= 1, "blow-up factor must be positive");
    let arcs = d
        .arcs()
        .flat_map(|(u, v)| (0..k).flat_map(move |i| (0..k).map(move |j| (u * k + i, v * k + j))));
    Digraph::from_arcs_dedup(d.n() * k, arcs)
}

/// `I_k` = number of in-dominating sets of size `k`, for `k = 0..=n`.
pub fn in_dominating_profile(d: &Digraph, limits: &Limits) -> Result<Vec<u64>> {
    if d.loop_count() > 0 {
        return Err(Error::LoopsPresent);
    }
    limits.check_exact_n(d.n())?;
    let n = d.n();
    let inn = d.in_masks();
    let constrained: Vec<usize> = (0..n).filter(|&v| inn[v] != 0).collect();
    let mut profile = vec![0u64; n + 1];
    for x in 0..=full_mask(n) {
        let ok = constrained
            .iter()
            .all(|&v| x >> v & 1 == 1 || inn[v] & x != 0);
        if ok {
            profile[x.count_ones() as usize] += 1;
        }
    }
    Ok(profile)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NilpotentCondition {
    Loop,
    Symmetric,
    PrimitiveStrictSpanning,
    None,
}

fn is_primitive(d: &Digraph) -> bool {
    if !d.is_strongly_connected() || d.arc_count() == 0 {
        return false;
    }
    let n = d.n();
    let mut level = vec![usize::MAX; n];
    level[0] = 0;
    let mut queue = std::collections::VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for &w in d.out_neighbors(v) {
            if level[w] == usize::MAX {
                level[w] = level[v] + 1;
                queue.push_back(w);
            }
        }
    }
    let period = d.arcs().fold(0usize, |g, (u, v)| {
        let diff = (level[u] + 1).abs_diff(level[v]);
        num_integer::gcd(g, diff)
    });
    period == 1
}

/// First applicable sufficient condition for a nilpotent Boolean network on
/// a strongly connected graph. `None` is inconclusive.
pub fn nilpotent_sufficiency(d: &Digraph) -> Result<NilpotentCondition> {
    if !d.is_strongly_connected() {
        return Err(Error::NotStronglyConnected);
    }
    let single_looped = d.n() == 1 && d.has_loop(0);
    if d.loop_count() > 0 && !single_looped {
        return Ok(NilpotentCondition::Loop);
    }
    let is_k2 = d.n() == 2 && d.arc_count() == 2 && d.has_arc(0, 1) && d.has_arc(1, 0);
    if d.is_symmetric() && !is_k2 && !single_looped {
        return Ok(NilpotentCondition::Symmetric);
    }
    // primitivity is upward closed, so removing one arc at a time suffices
    let arcs: Vec<_> = d.arcs().collect();
    for skip in 0..arcs.len() {
        let sub = Digraph::from_arcs_dedup(
            d.n(),
            arcs.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &a)| a),
        );
        if is_primitive(&sub) {
            return Ok(NilpotentCondition::PrimitiveStrictSpanning);
        }
    }
    Ok(NilpotentCondition::None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::is_isomorphic;
    use num_bigint::BigInt;

    fn lim() -> Limits {
        Limits::default()
    }

    fn frac(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    fn star3_alt() -> Digraph {
        star3()
    }

    #[test]
    fn transversal_examples() {
        assert_eq!(transversal_number(&c3(), &lim()).unwrap(), 1);
        assert_eq!(transversal_number(&k3(), &lim()).unwrap(), 2);
        assert_eq!(transversal_number(&e3(), &lim()).unwrap(), 0);
        assert_eq!(transversal_number(&c3_looped(), &lim()).unwrap(), 3);
    }

    #[test]
    fn size_guard() {
        let small = Limits { max_exact_n: 2, ..Limits::default() };
        assert!(transversal_number(&c3(), &small).unwrap_err().is_size_limit());
        assert!(cycle_packing_number(&c3(), &small).unwrap_err().is_size_limit());
        assert!(clique_partition_number(&c3(), &small).unwrap_err().is_size_limit());
    }

    #[test]
    fn packing_examples() {
        assert_eq!(cycle_packing_number(&c3_looped(), &lim()).unwrap(), 3);
        assert_eq!(cycle_packing_number(&k3(), &lim()).unwrap(), 1);
        assert_eq!(cycle_packing_number(&e3(), &lim()).unwrap(), 0);
    }

    #[test]
    fn clique_partition_examples() {
        assert_eq!(clique_partition_number(&k3(), &lim()).unwrap(), 1);
        assert_eq!(clique_partition_number(&e3(), &lim()).unwrap(), 3);
        assert_eq!(clique_partition_number(&c5_sym(), &lim()).unwrap(), 3);
    }

    #[test]
    fn fractional_examples() {
        assert_eq!(fractional_cycle_packing(&k3(), &lim()).unwrap().exact, Some(frac(3, 2)));
        assert_eq!(fractional_cycle_packing(&c3(), &lim()).unwrap().exact, Some(frac(1, 1)));
        assert_eq!(fractional_cycle_packing(&c5_sym(), &lim()).unwrap().exact, Some(frac(5, 2)));
        assert_eq!(fractional_clique_cover(&c5_sym(), &lim()).unwrap().exact, Some(frac(5, 2)));
        assert_eq!(fractional_clique_cover(&k3(), &lim()).unwrap().exact, Some(frac(1, 1)));
        assert_eq!(fractional_clique_cover(&e3(), &lim()).unwrap().exact, Some(frac(3, 1)));
        assert_eq!(fractional_cycle_packing(&e3(), &lim()).unwrap().exact, Some(frac(0, 1)));
    }

    #[test]
    fn float_path_agrees() {
        let float = Limits { exact_lp_columns: 0, ..Limits::default() };
        let v = fractional_cycle_packing(&c5_sym(), &float).unwrap();
        assert!(v.exact.is_none());
        assert!((v.value - 2.5).abs() < 1e-9);
        let v = fractional_clique_cover(&c5_sym(), &float).unwrap();
        assert!((v.value - 2.5).abs() < 1e-9);
    }

    #[test]
    fn matching_examples() {
        assert_eq!(max_independent_arcs(&c3()), 3);
        assert_eq!(max_independent_arcs(&p1()), 1);
        assert_eq!(max_independent_arcs(&star3_alt()), 3);
        assert_eq!(max_cycle_cover(&c3()), 3);
        assert_eq!(max_cycle_cover(&star3()), 3);
        assert_eq!(max_cycle_cover(&e3()), 0);
    }

    #[test]
    fn certificates_are_valid() {
        for d in all_digraphs(3) {
            let arcs = independent_arc_certificate(&d);
            assert_eq!(arcs.len(), max_independent_arcs(&d));
            for &(u, v) in &arcs {
                assert!(d.has_arc(u, v));
            }
            let succ = cycle_cover_certificate(&d);
            let covered = succ.iter().filter(|s| s.is_some()).count();
            assert_eq!(covered, max_cycle_cover(&d));
            let mut heads: Vec<usize> = succ.iter().flatten().copied().collect();
            heads.sort_unstable();
            heads.dedup();
            assert_eq!(heads.len(), covered, "successor map must be injective");
            for (u, s) in succ.iter().enumerate() {
                if let Some(v) = s {
                    assert!(d.has_arc(u, *v));
                    assert!(succ[*v].is_some(), "successor must be covered too");
                }
            }
        }
    }

    #[test]
    fn blowup_examples() {
        let b = blowup(&l1(), 2);
        assert_eq!((b.n(), b.arc_count()), (2, 4));
        assert_eq!(cycle_packing_number(&blowup(&c5_sym(), 2), &lim()).unwrap(), 5);
        assert_eq!(blowup(&fig1(), 1), fig1());
    }

    #[test]
    fn blowup_composes() {
        for d in [c3(), p1(), star3(), l1()] {
            let two_three = blowup(&blowup(&d, 2), 3);
            let six = blowup(&d, 6);
            assert!(is_isomorphic(&two_three, &six));
        }
    }

    #[test]
    fn dominating_profiles() {
        assert_eq!(in_dominating_profile(&Digraph::empty(1), &lim()).unwrap(), vec![1, 1]);
        assert_eq!(in_dominating_profile(&p1(), &lim()).unwrap(), vec![0, 2, 1]);
        assert_eq!(in_dominating_profile(&e3(), &lim()).unwrap(), vec![1, 3, 3, 1]);
        assert_eq!(in_dominating_profile(&l1(), &lim()).unwrap_err(), Error::LoopsPresent);
    }

    #[test]
    fn nilpotent_conditions() {
        let c3_loop = Digraph::new(3, [(0, 1), (1, 2), (2, 0), (0, 0)]).unwrap();
        assert_eq!(nilpotent_sufficiency(&c3_loop).unwrap(), NilpotentCondition::Loop);
        assert_eq!(nilpotent_sufficiency(&k3()).unwrap(), NilpotentCondition::Symmetric);
        assert_eq!(nilpotent_sufficiency(&c3()).unwrap(), NilpotentCondition::None);
        assert_eq!(nilpotent_sufficiency(&complete(2)).unwrap(), NilpotentCondition::None);
        assert_eq!(nilpotent_sufficiency(&l1()).unwrap(), NilpotentCondition::None);
        assert_eq!(nilpotent_sufficiency(&p1()).unwrap_err(), Error::NotStronglyConnected);
        // 3-cycle plus chord 1->3 gives cycles of length 3 and 2; drop nothing essential
        let two_cycles = Digraph::new(3, [(0, 1), (1, 2), (2, 0), (0, 2), (2, 1)]).unwrap();
        assert_eq!(
            nilpotent_sufficiency(&two_cycles).unwrap(),
            NilpotentCondition::PrimitiveStrictSpanning
        );
    }
}
