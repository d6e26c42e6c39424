//! Exhaustive statistics over all systems with a given interaction graph.
//!
//! `F[D,q]` (strict) uses only local tables that depend on every in-neighbour;
//! `F(D,q)` allows any table over the in-neighbours. Each system is
//! evaluated into a transition table by adding per-vertex contributions
//! level by level, so the innermost loop costs one pass over the states.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::canonical::{canonicalize, refined_bound_lp};
use crate::error::{Error, Result};
use crate::fds::{decode_into, make_fds, table_depends_on, Fds};
use crate::graph::Digraph;
use crate::limits::{checked_pow, Limits};

/// Number of tables `[q]^d -> [q]` depending on all `d` inputs
/// (inclusion-exclusion over the set of ignored inputs).
pub fn essential_table_count(d: usize, q: u32) -> BigUint {
    let mut total = BigInt::zero();
    let mut binom = BigInt::one();
    for j in (0..=d).rev() {
        // term for tables depending on at most j given inputs
        let term = BigInt::from(q).pow(q.pow(j as u32));
        let k = d - j;
        if k.is_multiple_of(2) {
            total += &binom * term;
        } else {
            total -= &binom * term;
        }
        // binom = C(d, k+1)
        binom = binom * BigInt::from(d - k) / BigInt::from(k + 1);
    }
    total.to_biguint().expect("count is non-negative")
}

/// `|F[D,q]|` (strict) or `|F(D,q)|`.
pub fn function_count(d: &Digraph, q: u32, strict: bool) -> BigUint {
    (0..d.n())
        .map(|v| {
            let k = d.in_degree(v);
            if strict {
                essential_table_count(k, q)
            } else {
                BigUint::from(q).pow(q.pow(k as u32))
            }
        })
        .product()
}

fn all_tables(d: usize, q: u32, strict: bool) -> Vec<Vec<u32>> {
    let len = q.pow(d as u32) as usize;
    let total = (q as u64).pow(len as u32);
    let mut out = Vec::new();
    let mut table = vec![0u32; len];
    for idx in 0..total {
        decode_into(idx, q, &mut table);
        if !strict || (0..d).all(|i| table_depends_on(&table, q, i)) {
            out.push(table.clone());
        }
    }
    out
}

/// Precomputed tables and per-state input indices for one `(D, q, strict)`.
pub struct SystemSpace {
    n: usize,
    q: u32,
    states: usize,
    /// Vertex processed at each level, most choices first.
    order: Vec<usize>,
    choices: Vec<Arc<Vec<Vec<u32>>>>,
    /// `index[v][s]`: position in `v`'s table read at state `s`.
    index: Vec<Vec<u32>>,
    weight: Vec<u32>,
    count: u64,
    inputs: Vec<Vec<usize>>,
}

impl SystemSpace {
    pub fn new(d: &Digraph, q: u32, strict: bool, limits: &Limits) -> Result<Self> {
        if q < 2 {
            return Err(Error::ShapeMismatch(format!("alphabet size {q} < 2")));
        }
        let count = function_count(d, q, strict);
        if count > BigUint::from(limits.max_functions) {
            return Err(Error::too_big("systems to enumerate", count, limits.max_functions));
        }
        let count = count.to_u64().expect("bounded by the guard");
        let states = limits.state_count(d.n(), q)?;
        if states > u32::MAX as u64 {
            return Err(Error::too_big("states for enumeration", states, u32::MAX as u64));
        }
        let n = d.n();
        // every local table is materialized once per in-degree
        for v in 0..n {
            let k = d.in_degree(v);
            let per = if strict { essential_table_count(k, q) } else { BigUint::from(q).pow(q.pow(k as u32)) };
            let cells = per * BigUint::from(q).pow(k as u32);
            if cells > BigUint::from(limits.max_states) {
                return Err(Error::too_big("local table entries to materialize", cells, limits.max_states));
            }
        }
        let mut cache: HashMap<usize, Arc<Vec<Vec<u32>>>> = HashMap::new();
        let inputs: Vec<Vec<usize>> = (0..n).map(|v| d.in_neighbors(v).to_vec()).collect();
        let choices: Vec<Arc<Vec<Vec<u32>>>> = inputs
            .iter()
            .map(|ins| cache.entry(ins.len()).or_insert_with(|| Arc::new(all_tables(ins.len(), q, strict))).clone())
            .collect();
        let mut x = vec![0u32; n];
        let index = inputs
            .iter()
            .map(|ins| {
                (0..states)
                    .map(|s| {
                        decode_into(s, q, &mut x);
                        ins.iter().rev().fold(0u32, |acc, &u| acc * q + x[u])
                    })
                    .collect()
            })
            .collect();
        let weight = (0..n).map(|v| q.pow(v as u32)).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(choices[v].len()));
        Ok(SystemSpace {
            n,
            q,
            states: states as usize,
            order,
            choices,
            index,
            weight,
            count,
            inputs,
        })
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn states(&self) -> usize {
        self.states
    }

    /// Local tables available to vertex `v`.
    pub fn tables(&self, v: usize) -> &[Vec<u32>] {
        &self.choices[v]
    }

    /// Builds the system selecting `choice[v]` for each vertex.
    pub fn system(&self, choice: &[usize]) -> Fds {
        make_fds(
            self.n,
            self.q,
            self.inputs.clone(),
            (0..self.n).map(|v| self.choices[v][choice[v]].clone()).collect(),
        )
        .expect("tables are well formed")
    }

    fn add_level(&self, level: usize, table: &[u32], from: &[u32], to: &mut [u32]) {
        let v = self.order[level];
        let (idx, w) = (&self.index[v], self.weight[v]);
        for s in 0..self.states {
            to[s] = from[s] + table[idx[s] as usize] * w;
        }
    }

    fn walk<A>(&self, level: usize, partial: &mut [Vec<u32>], acc: &mut A, visit: &(impl Fn(&mut A, &[u32]) + Sync)) {
        if level == self.n {
            visit(acc, &partial[level]);
            return;
        }
        for table in self.choices[self.order[level]].iter() {
            let (head, tail) = partial.split_at_mut(level + 1);
            self.add_level(level, table, &head[level], &mut tail[0]);
            self.walk(level + 1, partial, acc, visit);
        }
    }

    /// Folds `visit` over the transition table of every system. Work is
    /// split over the outermost vertex's tables; `merge` must be
    /// order-independent for the result to be deterministic.
    pub fn fold<A: Send>(
        &self,
        init: impl Fn() -> A + Sync,
        visit: impl Fn(&mut A, &[u32]) + Sync,
        merge: impl Fn(A, A) -> A + Sync,
    ) -> A {
        let fresh = || vec![vec![0u32; self.states]; self.n + 1];
        if self.n == 0 {
            let mut acc = init();
            visit(&mut acc, &[0]);
            return acc;
        }
        let top = self.order[0];
        (0..self.choices[top].len())
            .into_par_iter()
            .map(|c| {
                let mut partial = fresh();
                let mut acc = init();
                let (head, tail) = partial.split_at_mut(1);
                self.add_level(0, &self.choices[top][c], &head[0], &mut tail[0]);
                self.walk(1, &mut partial, &mut acc, &visit);
                acc
            })
            .reduce(&init, &merge)
    }
}

/// Per-system scratch counters reused across a worker's systems.
pub struct Scratch {
    mark: Vec<u64>,
    clock: u64,
}

impl Scratch {
    pub fn new(states: usize) -> Self {
        Scratch {
            mark: vec![0; states],
            clock: 0,
        }
    }

    pub fn rank(&mut self, t: &[u32]) -> u64 {
        self.clock += 1;
        let id = self.clock;
        let mut count = 0;
        for &y in t {
            if self.mark[y as usize] != id {
                self.mark[y as usize] = id;
                count += 1;
            }
        }
        count
    }

    /// Number of states lying on cycles of the functional graph.
    pub fn periodic(&mut self, t: &[u32]) -> u64 {
        let base = self.clock + 1;
        let mut count = 0;
        for start in 0..t.len() {
            if self.mark[start] >= base {
                continue;
            }
            self.clock += 1;
            let id = self.clock;
            let mut x = start;
            while self.mark[x] < base {
                self.mark[x] = id;
                x = t[x] as usize;
            }
            if self.mark[x] == id {
                let mut y = x;
                loop {
                    count += 1;
                    y = t[y] as usize;
                    if y == x {
                        break;
                    }
                }
            }
        }
        count
    }
}

pub fn fixed_count(t: &[u32]) -> u64 {
    t.iter().enumerate().filter(|&(s, &y)| s == y as usize).count() as u64
}

fn ser_ratio<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuantityStats {
    pub min: u64,
    pub max: u64,
    #[serde(serialize_with = "ser_ratio")]
    pub average: BigRational,
    pub histogram: BTreeMap<u64, u64>,
}

impl QuantityStats {
    fn from_counts(counts: &[u64]) -> Self {
        let histogram: BTreeMap<u64, u64> = counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(v, &c)| (v as u64, c))
            .collect();
        let total: u64 = histogram.values().sum();
        let sum: BigInt = histogram.iter().map(|(&v, &c)| BigInt::from(v) * BigInt::from(c)).sum();
        QuantityStats {
            min: histogram.keys().next().copied().unwrap_or(0),
            max: histogram.keys().next_back().copied().unwrap_or(0),
            average: if total == 0 {
                BigRational::zero()
            } else {
                BigRational::new(sum, BigInt::from(total))
            },
            histogram,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StatsReport {
    pub graph: String,
    pub q: u32,
    pub strict: bool,
    pub function_count: u64,
    pub rank: QuantityStats,
    pub periodic_rank: QuantityStats,
    pub fixed_points: QuantityStats,
    #[serde(serialize_with = "ser_ratio")]
    pub fixed_point_free_fraction: BigRational,
}

impl StatsReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let family = if self.strict { "F[D,q]" } else { "F(D,q)" };
        let _ = writeln!(s, "graph     {}", self.graph);
        let _ = writeln!(s, "family    {family}  q={}  systems={}", self.q, self.function_count);
        let _ = writeln!(s, "{:<14} {:>6} {:>12} {:>6}", "quantity", "min", "average", "max");
        for (name, st) in [
            ("rank", &self.rank),
            ("periodic", &self.periodic_rank),
            ("fixed points", &self.fixed_points),
        ] {
            let _ = writeln!(s, "{:<14} {:>6} {:>12} {:>6}", name, st.min, st.average.to_string(), st.max);
        }
        let _ = writeln!(s, "fixed-point-free fraction {}", self.fixed_point_free_fraction);
        s
    }
}

struct StatsAcc {
    rank: Vec<u64>,
    per: Vec<u64>,
    fix: Vec<u64>,
    scratch: Scratch,
}

pub fn enumerate_stats(d: &Digraph, q: u32, strict: bool, limits: &Limits) -> Result<StatsReport> {
    let space = SystemSpace::new(d, q, strict, limits)?;
    let states = space.states();
    let acc = space.fold(
        || StatsAcc {
            rank: vec![0; states + 1],
            per: vec![0; states + 1],
            fix: vec![0; states + 1],
            scratch: Scratch::new(states),
        },
        |a, t| {
            let r = a.scratch.rank(t);
            let p = a.scratch.periodic(t);
            a.rank[r as usize] += 1;
            a.per[p as usize] += 1;
            a.fix[fixed_count(t) as usize] += 1;
        },
        |mut a, b| {
            for (x, y) in [(&mut a.rank, &b.rank), (&mut a.per, &b.per), (&mut a.fix, &b.fix)] {
                x.iter_mut().zip(y).for_each(|(x, y)| *x += y);
            }
            a
        },
    );
    let count = space.count();
    Ok(StatsReport {
        graph: d.fingerprint(),
        q,
        strict,
        function_count: count,
        rank: QuantityStats::from_counts(&acc.rank),
        periodic_rank: QuantityStats::from_counts(&acc.per),
        fixed_points: QuantityStats::from_counts(&acc.fix),
        fixed_point_free_fraction: BigRational::new(BigInt::from(acc.fix[0]), BigInt::from(count.max(1))),
    })
}

/// Minimum rank over `F[D,q]` by branch-and-bound over local tables.
///
/// A partial assignment is pruned once the number of distinct images
/// projected onto the assigned vertices reaches the incumbent; the search
/// stops early when the incumbent meets the lattice lower bound of `C(D)`.
pub fn minrank_exact(d: &Digraph, q: u32, limits: &Limits) -> Result<u64> {
    let count = function_count(d, q, true);
    let unlimited = Limits {
        max_functions: u64::MAX,
        ..*limits
    };
    let space = SystemSpace::new(d, q, true, &unlimited)?;
    let floor = match refined_bound_lp(&canonicalize(d), limits) {
        Ok(v) => v,
        Err(e) if e.is_size_limit() => 1,
        Err(e) => return Err(e),
    };

    struct Search<'a> {
        space: &'a SystemSpace,
        best: u64,
        floor: u64,
        nodes: u64,
        budget: u64,
        scratch: Scratch,
    }

    fn dfs(s: &mut Search, level: usize, partial: &mut [Vec<u32>]) -> bool {
        if s.best <= s.floor {
            return true;
        }
        if level == s.space.n {
            return false;
        }
        let v = s.space.order[level];
        for table in s.space.choices[v].iter() {
            s.nodes += 1;
            if s.nodes > s.budget {
                return false;
            }
            let (head, tail) = partial.split_at_mut(level + 1);
            s.space.add_level(level, table, &head[level], &mut tail[0]);
            let r = s.scratch.rank(&tail[0]);
            if r >= s.best {
                continue;
            }
            if level + 1 == s.space.n {
                s.best = r;
                if s.best <= s.floor {
                    return true;
                }
            } else if dfs(s, level + 1, partial) {
                return true;
            }
        }
        false
    }

    let n = space.n;
    let mut search = Search {
        best: space.states as u64 + 1,
        floor,
        nodes: 0,
        budget: limits.max_functions,
        scratch: Scratch::new(space.states),
        space: &space,
    };
    if n == 0 {
        return Ok(1);
    }
    let mut partial = vec![vec![0u32; space.states]; n + 1];
    dfs(&mut search, 0, &mut partial);
    if search.nodes > search.budget {
        return Err(Error::too_big("branch-and-bound nodes for minimum rank", count, limits.max_functions));
    }
    Ok(search.best)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnivariateBaseline {
    pub q: u32,
    #[serde(serialize_with = "ser_ratio")]
    pub closed_form_avg_rank: BigRational,
    #[serde(serialize_with = "ser_ratio")]
    pub enumerated_avg_rank: BigRational,
    pub fixed_point_free: u64,
    pub expected_fixed_point_free: u64,
}

/// Average rank and fixed-point-free count over all `q^q` maps of `[q]`.
pub fn univariate_baseline(q: u32, limits: &Limits) -> Result<UnivariateBaseline> {
    let maps = checked_pow(q as u64, q as usize).unwrap_or(u64::MAX);
    if maps > limits.max_functions {
        return Err(Error::too_big("univariate maps q^q", maps, limits.max_functions));
    }
    let l1 = Digraph::new(1, [(0, 0)])?;
    let stats = enumerate_stats(&l1, q, false, limits)?;
    let one = BigRational::one();
    let keep = BigRational::new(BigInt::from(q - 1), BigInt::from(q));
    let mut power = BigRational::one();
    for _ in 0..q {
        power *= &keep;
    }
    let closed = (one - power) * BigRational::from_integer(BigInt::from(q));
    Ok(UnivariateBaseline {
        q,
        closed_form_avg_rank: closed,
        enumerated_avg_rank: stats.rank.average,
        fixed_point_free: stats.fixed_points.histogram.get(&0).copied().unwrap_or(0),
        expected_fixed_point_free: checked_pow(q as u64 - 1, q as usize).unwrap_or(u64::MAX),
    })
}
