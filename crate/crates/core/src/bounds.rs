//! Bounds on the maximum number of fixed points: code sizes, the entropy
//! LP, and a consistency-checked battery of upper and lower bounds.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::constructions::loopfull_maxfix;
use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::invariants::{
    blowup, clique_partition_number, cycle_packing_number, transversal_number, LpValue,
};
use crate::limits::{checked_pow, Limits};
use crate::lp::{Cmp, LinearProgram};

/// `A(n, q, d)`: largest code in `[q]^n` with pairwise Hamming distance at
/// least `d`. `d = None` stands for infinite distance.
pub fn max_code_size(n: usize, q: u32, d: Option<usize>, limits: &Limits) -> Result<u64> {
    let Some(d) = d else { return Ok(1) };
    if d > n {
        return Ok(1);
    }
    let words = checked_pow(q as u64, n).unwrap_or(u64::MAX);
    if d <= 1 {
        return Ok(words);
    }
    // single parity check and repetition codes meet the Singleton bound
    if d == 2 {
        return Ok(words / q as u64);
    }
    if d == n {
        return Ok(q as u64);
    }
    if words > limits.max_code_states {
        return Err(Error::too_big("code space q^n", words, limits.max_code_states));
    }
    let digits: Vec<Vec<u32>> = (0..words)
        .map(|w| {
            let mut x = vec![0u32; n];
            crate::fds::decode_into(w, q, &mut x);
            x
        })
        .collect();
    let dist = |a: usize, b: usize| digits[a].iter().zip(&digits[b]).filter(|(x, y)| x != y).count();
    let weight = |a: usize| digits[a].iter().filter(|&&x| x != 0).count();
    // Translations, coordinate permutations and symbol permutations fixing 0
    // preserve distance, so an optimal code contains 0 and 1^w 0^(n-w) with
    // w its minimum non-zero weight.
    let mut best_total = 2u64;
    let mut nodes = 0u64;
    for w in d..=n {
        let anchor = (0..w).fold(0usize, |acc, i| acc + (q as usize).pow(i as u32));
        let cand: Vec<usize> = (1..words as usize)
            .filter(|&x| x != anchor && weight(x) >= w && dist(anchor, x) >= d)
            .collect();
        let m = cand.len();
        let blocks = m.div_ceil(64).max(1);
        let adj: Vec<Vec<u64>> = (0..m)
            .map(|i| {
                let mut row = vec![0u64; blocks];
                for j in 0..m {
                    if i != j && dist(cand[i], cand[j]) >= d {
                        row[j / 64] |= 1 << (j % 64);
                    }
                }
                row
            })
            .collect();
        let mut p = vec![0u64; blocks];
        for j in 0..m {
            p[j / 64] |= 1 << (j % 64);
        }
        let mut best = best_total as usize - 2;
        let mut search = CliqueSearch {
            adj: &adj,
            best: &mut best,
            nodes: &mut nodes,
            budget: limits.max_search_nodes,
        };
        if !search.expand(0, p) {
            return Err(Error::too_big("code search nodes", nodes, limits.max_search_nodes));
        }
        best_total = best_total.max(best as u64 + 2);
    }
    Ok(best_total)
}

fn first_bit(s: &[u64]) -> Option<usize> {
    s.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(b, &w)| b * 64 + w.trailing_zeros() as usize)
}

struct CliqueSearch<'a> {
    adj: &'a [Vec<u64>],
    best: &'a mut usize,
    nodes: &'a mut u64,
    budget: u64,
}

impl CliqueSearch<'_> {
    /// Branch and bound with greedy colouring bounds. False when the node
    /// budget runs out.
    fn expand(&mut self, size: usize, mut p: Vec<u64>) -> bool {
        let mut order: Vec<(usize, usize)> = Vec::new();
        let mut uncolored = p.clone();
        let mut color = 0;
        while uncolored.iter().any(|&w| w != 0) {
            color += 1;
            let mut avail = uncolored.clone();
            while let Some(v) = first_bit(&avail) {
                order.push((v, color));
                uncolored[v / 64] &= !(1 << (v % 64));
                for (a, r) in avail.iter_mut().zip(&self.adj[v]) {
                    *a &= !r;
                }
                avail[v / 64] &= !(1 << (v % 64));
            }
        }
        if order.is_empty() {
            *self.best = (*self.best).max(size);
            return true;
        }
        for &(v, c) in order.iter().rev() {
            if size + c <= *self.best {
                return true;
            }
            *self.nodes += 1;
            if *self.nodes > self.budget {
                return false;
            }
            let next: Vec<u64> = p.iter().zip(&self.adj[v]).map(|(a, b)| a & b).collect();
            if !self.expand(size + 1, next) {
                return false;
            }
            p[v / 64] &= !(1 << (v % 64));
        }
        true
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyBound {
    pub h: LpValue,
    /// Sources are forced to zero entropy, so not every vertex can carry a
    /// full letter.
    pub degenerate: bool,
}

/// Entropy LP exponent: maximize `h(V)` over normalized polymatroids with
/// `h(v) <= 1`, `h(empty) = 0` and `h(N(v)) = h(N(v) + v)` for every vertex.
/// Monotonicity and submodularity are imposed in elemental form.
pub fn entropy_h(d: &Digraph, limits: &Limits) -> Result<EntropyBound> {
    let n = d.n();
    if n > limits.max_entropy_n.min(30) {
        return Err(Error::too_big("vertices for entropy LP", n as u64, limits.max_entropy_n as u64));
    }
    if n == 0 {
        return Ok(EntropyBound {
            h: LpValue::from_exact(BigRational::zero()),
            degenerate: false,
        });
    }
    let full = (1usize << n) - 1;
    // variable S-1 holds h(S) for non-empty S
    let var = |s: usize| s - 1;
    let mut lp = LinearProgram::new(full);
    lp.objective[var(full)] = 1;
    let term = |s: usize, c: i64| if s == 0 { None } else { Some((var(s), c)) };
    for v in 0..n {
        lp.add(vec![(var(1 << v), 1)], Cmp::Le, 1);
        let nin: usize = d.in_neighbors(v).iter().fold(0, |m, &u| m | 1 << u);
        if nin >> v & 1 == 0 {
            let mut row = vec![(var(nin | 1 << v), 1)];
            row.extend(term(nin, -1));
            lp.add(row, Cmp::Eq, 0);
        }
        // h(V - v) <= h(V)
        let mut row = vec![(var(full), 1)];
        row.extend(term(full & !(1 << v), -1));
        lp.add(row, Cmp::Ge, 0);
    }
    for i in 0..n {
        for j in i + 1..n {
            let rest = full & !(1 << i) & !(1 << j);
            // iterate subsets of rest
            let mut s = rest;
            loop {
                let mut row = vec![(var(s | 1 << i), 1), (var(s | 1 << j), 1), (var(s | 1 << i | 1 << j), -1)];
                row.extend(term(s, -1));
                lp.add(row, Cmp::Ge, 0);
                if s == 0 {
                    break;
                }
                s = (s - 1) & rest;
            }
        }
    }
    let h = if n <= limits.exact_entropy_n {
        LpValue::from_exact(lp.solve_exact()?.value)
    } else {
        LpValue::from_float(lp.solve_float()?.value)
    };
    Ok(EntropyBound {
        h,
        degenerate: (0..n).any(|v| d.is_source(v)),
    })
}

/// `floor(q^h)` for an LP exponent; exact for rational `h`.
pub fn floor_power(q: u32, h: &LpValue) -> Option<u128> {
    match &h.exact {
        Some(r) if !r.is_negative() => {
            let (num, den) = (r.numer().to_u32()?, r.denom().to_u32()?);
            let root = BigUint::from(q).pow(num).nth_root(den);
            root.to_u128()
        }
        _ => {
            let v = (q as f64).powf(h.value);
            v.is_finite().then(|| (v + 1e-6).floor() as u128)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    pub value: Option<u128>,
    /// `ok`, `skipped(size)` or `not-applicable`.
    pub status: String,
    pub rule: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    /// `maxfix[D,q]` (strict) or `maxfix(D,q)`.
    pub target: String,
    pub q: u32,
    pub strict: bool,
    pub upper: BTreeMap<&'static str, BoundEntry>,
    pub lower: BTreeMap<&'static str, BoundEntry>,
    pub entropy: Option<EntropyBound>,
    pub best_upper: u128,
    pub best_lower: u128,
    pub consistent: bool,
}

fn pow128(q: u32, e: usize) -> Option<u128> {
    (q as u128).checked_pow(e as u32)
}

fn entry(rule: &'static str, r: Result<Option<u128>>) -> Result<BoundEntry> {
    match r {
        Ok(Some(v)) => Ok(BoundEntry {
            value: Some(v),
            status: "ok".into(),
            rule,
        }),
        Ok(None) => Ok(BoundEntry {
            value: None,
            status: "not-applicable".into(),
            rule,
        }),
        Err(e) if e.is_size_limit() => Ok(BoundEntry {
            value: None,
            status: "skipped(size)".into(),
            rule,
        }),
        Err(e) => Err(e),
    }
}

fn min_in_degree(d: &Digraph) -> usize {
    (0..d.n()).map(|v| d.in_degree(v)).min().unwrap_or(0)
}

/// `q = base^k` with `k >= 2`, smallest base first.
fn perfect_powers(q: u32) -> Vec<(u32, usize)> {
    (2..q)
        .filter_map(|b| {
            let mut p = b as u64;
            let mut k = 1;
            while p < q as u64 {
                p *= b as u64;
                k += 1;
            }
            (p == q as u64).then_some((b, k))
        })
        .collect()
}

fn nonstrict_lower(d: &Digraph, q: u32, limits: &Limits) -> Result<BTreeMap<&'static str, BoundEntry>> {
    let n = d.n();
    let mut lower = BTreeMap::new();
    lower.insert(
        "clique_cover",
        entry("q^(n - clique partition number)", clique_partition_number(d, limits).map(|k| pow128(q, n - k)))?,
    );
    lower.insert("packing", entry("q^(cycle packing number)", cycle_packing_number(d, limits).map(|nu| pow128(q, nu)))?);
    let delta = min_in_degree(d);
    lower.insert(
        "code",
        entry(
            "A(n, q, n - min in-degree + 1)",
            max_code_size(n, q, Some(n + 1 - delta), limits).map(|a| Some(a as u128)),
        )?,
    );
    lower.insert(
        "degree",
        entry(
            "ceil(q^(min in-degree) / n)",
            Ok(pow128(q, delta).map(|p| if n == 0 { 1 } else { p.div_ceil(n as u128) })),
        )?,
    );
    if q == 2 {
        lower.insert(
            "packing_plus_one",
            entry("cycle packing number + 1 (q = 2)", cycle_packing_number(d, limits).map(|nu| Some(nu as u128 + 1)))?,
        );
    }
    if n > 0 && (0..n).all(|v| d.has_loop(v)) {
        lower.insert("loopfull", entry("sum_k (q-1)^k I_k", loopfull_value(d, q, limits))?);
    }
    if let Some(&(base, k)) = perfect_powers(q).first() {
        let big = blowup(d, k);
        let size_ok = limits.check_exact_n(big.n());
        lower.insert(
            "fractional_packing",
            entry(
                "base^(cycle packing number of the k-fold blow-up), q = base^k",
                size_ok.clone().and_then(|_| cycle_packing_number(&big, limits)).map(|nu| pow128(base, nu)),
            )?,
        );
        lower.insert(
            "fractional_clique_cover",
            entry(
                "base^(kn - clique partition number of the k-fold blow-up), q = base^k",
                size_ok.and_then(|_| clique_partition_number(&big, limits)).map(|c| pow128(base, big.n() - c)),
            )?,
        );
    }
    Ok(lower)
}

fn loopfull_value(d: &Digraph, q: u32, limits: &Limits) -> Result<Option<u128>> {
    Ok(loopfull_maxfix(&d.without_loops(), q, limits)?.to_u128())
}

/// Upper and lower bounds on the maximum number of fixed points over
/// `F(D,q)` or, when `strict`, over `F[D,q]`. Constituents that exceed a
/// guard are listed as `skipped(size)`; contradictory bounds are an error.
pub fn fix_bounds_report(d: &Digraph, q: u32, strict: bool, limits: &Limits) -> Result<BoundsReport> {
    let n = d.n();
    let mut upper = BTreeMap::new();
    upper.insert(
        "girth",
        entry("A(n, q, girth)", max_code_size(n, q, d.girth(), limits).map(|a| Some(a as u128)))?,
    );
    let tau = transversal_number(d, limits);
    upper.insert("feedback", entry("q^(transversal number)", tau.clone().map(|t| pow128(q, t)))?);
    let entropy = match entropy_h(d, limits) {
        Ok(e) => Some(e),
        Err(e) if e.is_size_limit() => None,
        Err(e) => return Err(e),
    };
    upper.insert(
        "entropy",
        match &entropy {
            Some(e) => entry("floor(q^H)", Ok(floor_power(q, &e.h)))?,
            None => entry("floor(q^H)", Err(Error::too_big("vertices for entropy LP", n as u64, limits.max_entropy_n as u64)))?,
        },
    );

    let lower = if strict {
        let mut lower = BTreeMap::new();
        if q >= 3 {
            let below = nonstrict_lower(d, q - 1, limits)?;
            let best = below.values().filter_map(|e| e.value).max();
            lower.insert("ghost", entry("best lower bound for F(D, q-1)", Ok(best))?);
        }
        if q == 2 {
            lower.insert(
                "packing_plus_one",
                entry("cycle packing number + 1 (q = 2)", cycle_packing_number(d, limits).map(|nu| Some(nu as u128 + 1)))?,
            );
        }
        if n > 0 && (0..n).all(|v| d.has_loop(v)) {
            let e = entry("sum_k (q-1)^k I_k", loopfull_value(d, q, limits))?;
            upper.insert("loopfull", e.clone());
            lower.insert("loopfull", e);
        }
        lower.insert(
            "feedback_exact",
            entry(
                "q^(transversal number) when it is 0 or 1",
                tau.map(|t| if t <= 1 { pow128(q, t) } else { None }),
            )?,
        );
        lower
    } else {
        nonstrict_lower(d, q, limits)?
    };

    let best_upper = upper
        .values()
        .filter_map(|e| e.value)
        .min()
        .or_else(|| pow128(q, n))
        .unwrap_or(u128::MAX);
    let best_lower = lower.values().filter_map(|e| e.value).max().unwrap_or(0);
    let report = BoundsReport {
        target: if strict { format!("maxfix[D,{q}]") } else { format!("maxfix(D,{q})") },
        q,
        strict,
        upper,
        lower,
        entropy,
        best_upper,
        best_lower,
        consistent: best_lower <= best_upper,
    };
    if !report.consistent {
        return Err(Error::InconsistentBounds(format!(
            "{} on {}: lower {} > upper {}",
            report.target,
            d.fingerprint(),
            best_lower,
            best_upper
        )));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn lim() -> Limits {
        Limits::default()
    }

    fn brute_code(n: usize, q: u32, d: usize) -> u64 {
        let words = (q as u64).pow(n as u32) as usize;
        let digits: Vec<Vec<u32>> = (0..words)
            .map(|w| {
                let mut x = vec![0; n];
                crate::fds::decode_into(w as u64, q, &mut x);
                x
            })
            .collect();
        let mut best = 0;
        for set in 0u64..(1 << words) {
            let members: Vec<usize> = (0..words).filter(|&w| set >> w & 1 == 1).collect();
            let ok = members.iter().enumerate().all(|(i, &a)| {
                members[i + 1..]
                    .iter()
                    .all(|&b| digits[a].iter().zip(&digits[b]).filter(|(x, y)| x != y).count() >= d)
            });
            if ok {
                best = best.max(members.len() as u64);
            }
        }
        best
    }

    #[test]
    fn code_sizes() {
        assert_eq!(max_code_size(3, 2, Some(2), &lim()).unwrap(), 4);
        assert_eq!(max_code_size(3, 2, Some(3), &lim()).unwrap(), 2);
        assert_eq!(max_code_size(2, 3, Some(1), &lim()).unwrap(), 9);
        assert_eq!(max_code_size(4, 2, None, &lim()).unwrap(), 1);
        assert_eq!(max_code_size(5, 2, Some(3), &lim()).unwrap(), 4);
        assert_eq!(max_code_size(5, 4, Some(2), &lim()).unwrap(), 256);
        for (n, q) in [(2, 2), (3, 2), (4, 2), (2, 3)] {
            for d in 1..=n {
                assert_eq!(max_code_size(n, q, Some(d), &lim()).unwrap(), brute_code(n, q, d), "A({n},{q},{d})");
            }
        }
        let tight = Limits { max_code_states: 8, ..lim() };
        assert!(max_code_size(4, 2, Some(3), &tight).unwrap_err().is_size_limit());
    }

    #[test]
    fn entropy_values() {
        let h = entropy_h(&c5_sym(), &lim()).unwrap();
        assert!((h.h.value - 2.5).abs() < 1e-9);
        assert!(!h.degenerate);
        assert!((entropy_h(&c3(), &lim()).unwrap().h.value - 1.0).abs() < 1e-9);
        let e = entropy_h(&e3(), &lim()).unwrap();
        assert_eq!(e.h.value, 0.0);
        assert!(e.degenerate);
        // float path agrees
        let float = Limits { exact_entropy_n: 0, ..lim() };
        assert!((entropy_h(&c5_sym(), &float).unwrap().h.value - 2.5).abs() < 1e-6);
        assert!((entropy_h(&k3(), &float).unwrap().h.value - 2.0).abs() < 1e-6);
    }

    #[test]
    fn floor_powers() {
        let h = entropy_h(&c5_sym(), &lim()).unwrap().h;
        assert_eq!(floor_power(2, &h), Some(5));
        assert_eq!(floor_power(4, &h), Some(32));
        assert_eq!(floor_power(2, &LpValue::from_float(2.0 - 1e-9)), Some(4));
    }

    #[test]
    fn report_examples() {
        let r = fix_bounds_report(&c3(), 2, false, &lim()).unwrap();
        assert_eq!(r.upper["girth"].value, Some(2));
        assert_eq!(r.upper["feedback"].value, Some(2));
        assert_eq!(r.lower["packing"].value, Some(2));
        assert_eq!((r.best_lower, r.best_upper), (2, 2));

        let r = fix_bounds_report(&k3(), 2, false, &lim()).unwrap();
        assert_eq!(r.lower["clique_cover"].value, Some(4));
        assert_eq!(r.lower["code"].value, Some(4));
        assert_eq!(r.upper["feedback"].value, Some(4));
        assert_eq!((r.best_lower, r.best_upper), (4, 4));

        let r = fix_bounds_report(&c5_sym(), 2, false, &lim()).unwrap();
        assert_eq!(r.upper["entropy"].value, Some(5));
        let r = fix_bounds_report(&c5_sym(), 4, false, &lim()).unwrap();
        assert_eq!(r.lower["fractional_packing"].value, Some(32));
        assert_eq!(r.upper["entropy"].value, Some(32));
    }

    #[test]
    fn strict_report() {
        let r = fix_bounds_report(&c3_looped(), 2, true, &lim()).unwrap();
        assert_eq!(r.lower["loopfull"].value, r.upper["loopfull"].value);
        let r = fix_bounds_report(&k3(), 3, true, &lim()).unwrap();
        assert_eq!(r.lower["ghost"].value, Some(4));
        assert!(r.best_upper >= 9);
    }

    #[test]
    fn perfect_power_detection() {
        assert_eq!(perfect_powers(4), vec![(2, 2)]);
        assert_eq!(perfect_powers(8), vec![(2, 3)]);
        assert_eq!(perfect_powers(16), vec![(2, 4), (4, 2)]);
        assert!(perfect_powers(6).is_empty());
    }
}
