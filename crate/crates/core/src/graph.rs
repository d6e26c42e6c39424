//! Directed graphs with loops on the vertex set `{0..n}`.
//!
//! Vertices are 0-based in memory and 1-based in the text format. Arc sets
//! are kept sorted, so two graphs with the same arcs compare equal.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    arcs: BTreeSet<(usize, usize)>,
    in_adj: Vec<Vec<usize>>,
    out_adj: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in arcs {
            if u >= n || v >= n {
                return Err(Error::ShapeMismatch(format!(
                    "arc ({u},{v}) outside vertex range 0..{n}"
                )));
            }
            if !set.insert((u, v)) {
                return Err(Error::ShapeMismatch(format!("duplicate arc ({u},{v})")));
            }
        }
        Ok(Self::from_set(n, set))
    }

    /// Builds a graph from an arc set that may contain repeats.
    pub fn from_arcs_dedup(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let set: BTreeSet<_> = arcs.into_iter().collect();
        assert!(set.iter().all(|&(u, v)| u < n && v < n), "arc endpoint out of range");
        Self::from_set(n, set)
    }

    fn from_set(n: usize, arcs: BTreeSet<(usize, usize)>) -> Self {
        let mut in_adj = vec![Vec::new(); n];
        let mut out_adj = vec![Vec::new(); n];
        for &(u, v) in &arcs {
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        for l in in_adj.iter_mut() {
            l.sort_unstable();
        }
        Digraph {
            n,
            arcs,
            in_adj,
            out_adj,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_set(n, BTreeSet::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.contains(&(u, v))
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v].len()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.has_arc(v, v)
    }

    pub fn loop_count(&self) -> usize {
        (0..self.n).filter(|&v| self.has_loop(v)).count()
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.in_adj[v].is_empty()
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.out_adj[v].is_empty()
    }

    pub fn is_symmetric(&self) -> bool {
        self.arcs.iter().all(|&(u, v)| self.has_arc(v, u))
    }

    /// In-neighbourhood of every vertex as a bitmask. Requires `n <= 64`.
    pub fn in_masks(&self) -> Vec<u64> {
        assert!(self.n <= 64, "bitmask view needs n <= 64");
        self.in_adj
            .iter()
            .map(|l| l.iter().fold(0u64, |m, &u| m | (1 << u)))
            .collect()
    }

    /// Out-neighbourhood of every vertex as a bitmask. Requires `n <= 64`.
    pub fn out_masks(&self) -> Vec<u64> {
        assert!(self.n <= 64, "bitmask view needs n <= 64");
        self.out_adj
            .iter()
            .map(|l| l.iter().fold(0u64, |m, &u| m | (1 << u)))
            .collect()
    }

    /// The same graph with a loop added on every vertex.
    pub fn loopfull(&self) -> Digraph {
        Digraph::from_arcs_dedup(self.n, self.arcs().chain((0..self.n).map(|v| (v, v))))
    }

    /// The same graph with all loops removed.
    pub fn without_loops(&self) -> Digraph {
        Digraph::from_arcs_dedup(self.n, self.arcs().filter(|&(u, v)| u != v))
    }

    /// Induced subgraph on `vertices`, relabelled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Digraph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let arcs = self
            .arcs()
            .filter(|&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|(u, v)| (index[u], index[v]));
        Digraph::from_arcs_dedup(vertices.len(), arcs)
    }

    /// Weakly connected components, each sorted, ordered by smallest vertex.
    pub fn weak_components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                i += 1;
                for &w in self.in_adj[v].iter().chain(self.out_adj[v].iter()) {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    fn reachable_from(&self, s: usize, forward: bool) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            let next = if forward { &self.out_adj[v] } else { &self.in_adj[v] };
            for &w in next {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    pub fn is_strongly_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.reachable_from(0, true).into_iter().all(|b| b)
            && self.reachable_from(0, false).into_iter().all(|b| b)
    }

    /// Shortest cycle through each vertex is found by BFS; loops give 1.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.out_adj[v] {
                    if w == s {
                        let len = dist[v] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    } else if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        best
    }

    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm
        let mut indeg: Vec<usize> = (0..self.n).map(|v| self.in_degree(v)).collect();
        let mut stack: Vec<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &w in &self.out_adj[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        seen == self.n
    }

    /// A stable one-line identity string: `n=<n>;<u>><v>,...` (1-based).
    pub fn fingerprint(&self) -> String {
        let arcs: Vec<String> = self.arcs().map(|(u, v)| format!("{}>{}", u + 1, v + 1)).collect();
        format!("n={};{}", self.n, arcs.join(","))
    }

    /// Parses the graph text format: `#` comments, a `n <N>` line, then one
    /// `<u> <v>` arc per line with 1-based vertices.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut arcs = BTreeSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::Parse { line: line_no, msg };
            let toks: Vec<&str> = line.split_whitespace().collect();
            match n {
                None => {
                    if toks.len() != 2 || toks[0] != "n" {
                        return Err(err(format!("expected header `n <N>`, got `{line}`")));
                    }
                    let value: usize = toks[1]
                        .parse()
                        .map_err(|_| err(format!("bad vertex count `{}`", toks[1])))?;
                    if value == 0 {
                        return Err(err("vertex count must be positive".into()));
                    }
                    n = Some(value);
                }
                Some(count) => {
                    if toks.len() != 2 {
                        return Err(err(format!("expected arc `<u> <v>`, got `{line}`")));
                    }
                    let mut ends = [0usize; 2];
                    for (slot, tok) in ends.iter_mut().zip(&toks) {
                        let x: usize = tok.parse().map_err(|_| err(format!("bad vertex `{tok}`")))?;
                        if x == 0 || x > count {
                            return Err(err(format!("vertex {x} outside 1..{count}")));
                        }
                        *slot = x - 1;
                    }
                    if !arcs.insert((ends[0], ends[1])) {
                        return Err(err(format!("duplicate arc {} {}", toks[0], toks[1])));
                    }
                }
            }
        }
        match n {
            Some(n) => Ok(Digraph::from_set(n, arcs)),
            None => Err(Error::Parse {
                line: text.lines().count().max(1),
                msg: "missing `n <N>` header".into(),
            }),
        }
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n {}", self.n)?;
        for (u, v) in self.arcs() {
            writeln!(f, "{} {}", u + 1, v + 1)?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Digraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Digraph::parse(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureStats {
    /// Shortest cycle length; `None` means infinite (acyclic).
    pub girth: Option<usize>,
    pub min_in_degree: usize,
    pub acyclic: bool,
    pub loop_count: usize,
    /// 1-based.
    pub sources: Vec<usize>,
    /// 1-based.
    pub sinks: Vec<usize>,
}

pub fn structure_stats(d: &Digraph) -> StructureStats {
    let girth = d.girth();
    StructureStats {
        girth,
        min_in_degree: (0..d.n()).map(|v| d.in_degree(v)).min().unwrap_or(0),
        acyclic: girth.is_none(),
        loop_count: d.loop_count(),
        sources: (0..d.n()).filter(|&v| d.is_source(v)).map(|v| v + 1).collect(),
        sinks: (0..d.n()).filter(|&v| d.is_sink(v)).map(|v| v + 1).collect(),
    }
}

/// Backtracking isomorphism test with degree-signature pruning.
pub fn is_isomorphic(a: &Digraph, b: &Digraph) -> bool {
    find_isomorphism(a, b).is_some()
}

/// Returns `map` with `a`'s vertex `v` sent to `b`'s vertex `map[v]`.
pub fn find_isomorphism(a: &Digraph, b: &Digraph) -> Option<Vec<usize>> {
    if a.n() != b.n() || a.arc_count() != b.arc_count() {
        return None;
    }
    let sig = |d: &Digraph, v: usize| (d.in_degree(v), d.out_degree(v), d.has_loop(v));
    let mut sa: Vec<_> = (0..a.n()).map(|v| sig(a, v)).collect();
    let mut sb: Vec<_> = (0..b.n()).map(|v| sig(b, v)).collect();
    let (ta, tb) = (sa.clone(), sb.clone());
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }
    // most constrained first: high degree vertices
    let mut order: Vec<usize> = (0..a.n()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(a.in_degree(v) + a.out_degree(v)));

    fn extend(
        a: &Digraph,
        b: &Digraph,
        order: &[usize],
        ta: &[(usize, usize, bool)],
        tb: &[(usize, usize, bool)],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        depth: usize,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        for w in 0..b.n() {
            if used[w] || ta[v] != tb[w] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&u| {
                let mu = map[u];
                a.has_arc(u, v) == b.has_arc(mu, w) && a.has_arc(v, u) == b.has_arc(w, mu)
            });
            if !consistent {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if extend(a, b, order, ta, tb, map, used, depth + 1) {
                return true;
            }
            used[w] = false;
        }
        map[v] = usize::MAX;
        false
    }

    let mut map = vec![usize::MAX; a.n()];
    let mut used = vec![false; b.n()];
    if extend(a, b, &order, &ta, &tb, &mut map, &mut used, 0) {
        Some(map)
    } else {
        None
    }
}

/// Named graphs used throughout the docs and tests.
pub mod fixtures {
    use super::Digraph;

    fn g(n: usize, arcs: &[(usize, usize)]) -> Digraph {
        Digraph::new(n, arcs.iter().map(|&(u, v)| (u - 1, v - 1))).expect("valid fixture")
    }

    /// 3 vertices, no arcs.
    pub fn e3() -> Digraph {
        Digraph::empty(3)
    }

    /// One vertex with a loop.
    pub fn l1() -> Digraph {
        g(1, &[(1, 1)])
    }

    /// Single arc 1 -> 2.
    pub fn p1() -> Digraph {
        g(2, &[(1, 2)])
    }

    /// Directed cycle 1 -> 2 -> ... -> n -> 1.
    pub fn cycle(n: usize) -> Digraph {
        Digraph::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("valid cycle")
    }

    pub fn c3() -> Digraph {
        cycle(3)
    }

    /// C3 with a loop on every vertex.
    pub fn c3_looped() -> Digraph {
        c3().loopfull()
    }

    /// Complete symmetric loopless graph.
    pub fn complete(n: usize) -> Digraph {
        Digraph::from_arcs_dedup(
            n,
            (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))),
        )
    }

    pub fn k3() -> Digraph {
        complete(3)
    }

    /// Undirected cycle on n vertices, each edge as two arcs.
    pub fn undirected_cycle(n: usize) -> Digraph {
        Digraph::from_arcs_dedup(
            n,
            (0..n).flat_map(|v| [(v, (v + 1) % n), ((v + 1) % n, v)]),
        )
    }

    pub fn c5_sym() -> Digraph {
        undirected_cycle(5)
    }

    /// Centre 1 with arcs to n satellites, each satellite looped.
    pub fn star(n: usize) -> Digraph {
        Digraph::from_arcs_dedup(n + 1, (1..=n).flat_map(|v| [(0, v), (v, v)]))
    }

    pub fn star3() -> Digraph {
        star(3)
    }

    /// Sources a1..a3 = 1..3, sinks b1..b4 = 4..7, path-shaped conflicts.
    pub fn fig1() -> Digraph {
        g(7, &[(1, 4), (1, 5), (2, 5), (2, 6), (3, 6), (3, 7)])
    }

    /// All `2^(n^2)` labelled digraphs on `n` vertices, loops included.
    pub fn all_digraphs(n: usize) -> impl Iterator<Item = Digraph> {
        assert!(n * n < 32);
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).collect();
        (0u32..(1 << (n * n))).map(move |mask| {
            Digraph::from_arcs_dedup(
                n,
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &p)| p),
            )
        })
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn structure_of_fixtures() {
        let s = structure_stats(&c3());
        assert_eq!((s.girth, s.min_in_degree, s.acyclic), (Some(3), 1, false));
        let s = structure_stats(&e3());
        assert_eq!((s.girth, s.min_in_degree, s.acyclic), (None, 0, true));
        let s = structure_stats(&l1());
        assert_eq!((s.girth, s.min_in_degree, s.loop_count), (Some(1), 1, 1));
        assert_eq!(structure_stats(&p1()).sources, vec![1]);
        assert_eq!(structure_stats(&p1()).sinks, vec![2]);
    }

    #[test]
    fn girth_and_loops_agree() {
        for d in all_digraphs(3) {
            let s = structure_stats(&d);
            assert_eq!(s.acyclic, s.girth.is_none());
            assert_eq!(s.girth == Some(1), s.loop_count > 0);
            assert_eq!(s.acyclic, d.is_acyclic());
        }
    }

    #[test]
    fn text_format_roundtrip_and_errors() {
        let text = "# a comment\nn 3\n1 2\n2 3\n3 1\n";
        let d = Digraph::parse(text).unwrap();
        assert_eq!(d, c3());
        assert_eq!(Digraph::parse(&d.to_text()).unwrap(), d);

        let dup = Digraph::parse("n 2\n1 2\n1 2\n").unwrap_err();
        assert_eq!(dup, Error::Parse { line: 3, msg: "duplicate arc 1 2".into() });
        assert!(matches!(Digraph::parse("n 2\n1 3\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(Digraph::parse("1 2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(Digraph::parse("# nothing\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn new_rejects_bad_arcs() {
        assert!(Digraph::new(2, [(0, 2)]).is_err());
        assert!(Digraph::new(2, [(0, 1), (0, 1)]).is_err());
    }

    #[test]
    fn components_and_strong_connectivity() {
        assert_eq!(e3().weak_components(), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(fig1().weak_components().len(), 1);
        assert!(c3().is_strongly_connected());
        assert!(!p1().is_strongly_connected());
    }

    #[test]
    fn isomorphism_detects_relabelling() {
        let a = Digraph::new(3, [(0, 1), (1, 2), (2, 2)]).unwrap();
        let b = Digraph::new(3, [(2, 0), (0, 1), (1, 1)]).unwrap();
        let c = Digraph::new(3, [(0, 1), (1, 2), (0, 0)]).unwrap();
        assert!(is_isomorphic(&a, &b));
        assert!(!is_isomorphic(&a, &c));
        let map = find_isomorphism(&a, &b).unwrap();
        for (u, v) in a.arcs() {
            assert!(b.has_arc(map[u], map[v]));
        }
    }
}
