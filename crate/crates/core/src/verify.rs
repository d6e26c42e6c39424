//! Built-in verification suite: each check recomputes a published value or
//! identity on small instances and compares.
//!
//! Checks over every digraph on three labelled vertices evaluate one
//! representative per isomorphism class; all compared quantities are
//! invariant under relabelling.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{entropy_h, fix_bounds_report};
use crate::canonical::{
    absolute_minrank_bounds, canonicalize, lower_bound_l, minrank_classify, upper_bound_u, MinrankClass,
};
use crate::constructions::{
    canonical_upper_witness, conjunctive, conjunctive_rank, extend_alphabet, loopfull_maxfix, maxper_witness,
    maxrank_witness, modular_complete, nilpotent_class_two, packing_plus_one_witness, star_graph, star_witness,
};
use crate::enumeration::{enumerate_stats, fixed_count, univariate_baseline, Scratch, StatsReport, SystemSpace};
use crate::error::Result;
use crate::fds::Fds;
use crate::graph::{fixtures, Digraph};
use crate::invariants::{
    blowup, cycle_packing_number, fractional_cycle_packing, max_cycle_cover, max_independent_arcs,
    maximum_cycle_packing,
};
use crate::limits::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub id: u8,
    pub title: &'static str,
    pub status: Status,
    pub detail: String,
    pub seconds: f64,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        write!(f, "{tag} [{:>2}] {}: {} ({:.2}s)", self.id, self.title, self.detail, self.seconds)
    }
}

type CheckFn = fn(&mut Context) -> Result<(bool, String)>;

struct Check {
    id: u8,
    title: &'static str,
    heavy: bool,
    /// Wall-clock limit in seconds, when the check has one.
    time_limit: Option<f64>,
    run: CheckFn,
}

const CHECKS: &[Check] = &[
    Check { id: 1, title: "FIG1 independent-set count and conjunctive rank", heavy: false, time_limit: Some(1.0), run: check_fig1 },
    Check { id: 2, title: "STAR3 minimum rank, conjunctive rank and absolute bounds", heavy: false, time_limit: Some(5.0), run: check_star },
    Check { id: 3, title: "classification vs enumerated minrank, all 3-vertex digraphs, q=2", heavy: true, time_limit: Some(600.0), run: check_classification },
    Check { id: 4, title: "minrank invariant under canonicalization, 50 random digraphs, q=2", heavy: false, time_limit: None, run: check_canonical_invariance },
    Check { id: 5, title: "average fixed points = 1, all 3-vertex digraphs, q=2", heavy: true, time_limit: None, run: check_avgfix },
    Check { id: 6, title: "minimum fixed points = [acyclic], all 3-vertex digraphs, q=2", heavy: true, time_limit: None, run: check_minfix },
    Check { id: 7, title: "max rank = q^a1 and max periodic rank = q^an, all 3-vertex digraphs, q in {2,3}", heavy: true, time_limit: None, run: check_maxrank },
    Check { id: 8, title: "loop-full maxfix formula, loopless digraphs on <= 3 vertices, q=2", heavy: true, time_limit: None, run: check_loopfull },
    Check { id: 9, title: "entropy LP values", heavy: false, time_limit: Some(30.0), run: check_entropy },
    Check { id: 10, title: "enumerated maxfix within bound battery, all 3-vertex digraphs, q=2", heavy: true, time_limit: None, run: check_sandwich },
    Check { id: 11, title: "fractional packing realized on the 2-fold blow-up of C5sym", heavy: false, time_limit: None, run: check_blowup },
    Check { id: 12, title: "univariate average rank and fixed-point-free count, q in {2,3,4}", heavy: false, time_limit: None, run: check_univariate },
    Check { id: 13, title: "nilpotent class-two witnesses and F[C3,2] periodic rank", heavy: false, time_limit: None, run: check_nilpotent },
    Check { id: 14, title: "witness interaction graphs on fixtures", heavy: false, time_limit: None, run: check_witnesses },
];

/// Number of checks in the suite.
pub fn check_count() -> usize {
    CHECKS.len()
}

/// Runs the suite in order, reporting each outcome to `report` as soon as
/// it is known. `quick` skips the checks that sweep every 3-vertex digraph.
pub fn run_suite(quick: bool, limits: &Limits, mut report: impl FnMut(&CheckOutcome)) -> Vec<CheckOutcome> {
    let mut ctx = Context::new(*limits);
    let mut out = Vec::new();
    for c in CHECKS {
        let outcome = if quick && c.heavy {
            CheckOutcome {
                id: c.id,
                title: c.title,
                status: Status::Skip,
                detail: "skipped in quick mode".into(),
                seconds: 0.0,
            }
        } else {
            let start = Instant::now();
            let res = (c.run)(&mut ctx);
            let seconds = start.elapsed().as_secs_f64();
            let (mut ok, mut detail) = match res {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e}")),
            };
            if let Some(limit) = c.time_limit {
                if seconds > limit {
                    ok = false;
                    detail.push_str(&format!("; exceeded the {limit}s limit"));
                }
            }
            CheckOutcome {
                id: c.id,
                title: c.title,
                status: if ok { Status::Pass } else { Status::Fail },
                detail,
                seconds,
            }
        };
        report(&outcome);
        out.push(outcome);
    }
    out
}

struct ClassData {
    rep: Digraph,
    members: usize,
    strict: StatsReport,
    loose: StatsReport,
}

struct Context {
    limits: Limits,
    classes: Option<Vec<ClassData>>,
}

/// Smallest arc bitmask over all relabellings of a digraph on <= 3 vertices.
fn iso_key(d: &Digraph) -> u64 {
    let n = d.n();
    let perms: Vec<Vec<usize>> = match n {
        0 | 1 => vec![(0..n).collect()],
        2 => vec![vec![0, 1], vec![1, 0]],
        _ => vec![
            vec![0, 1, 2],
            vec![0, 2, 1],
            vec![1, 0, 2],
            vec![1, 2, 0],
            vec![2, 0, 1],
            vec![2, 1, 0],
        ],
    };
    perms
        .iter()
        .map(|p| d.arcs().fold(0u64, |m, (u, v)| m | 1 << (p[u] * n + p[v])))
        .min()
        .unwrap_or(0)
}

/// Isomorphism-class representatives with class sizes.
fn classes_of(graphs: impl Iterator<Item = Digraph>) -> Vec<(Digraph, usize)> {
    let mut map: BTreeMap<u64, (Digraph, usize)> = BTreeMap::new();
    for d in graphs {
        map.entry(iso_key(&d)).or_insert_with(|| (d.clone(), 0)).1 += 1;
    }
    map.into_values().collect()
}

impl Context {
    fn new(limits: Limits) -> Self {
        Context { limits, classes: None }
    }

    /// Strict and non-strict q=2 statistics for every class of 3-vertex
    /// digraphs, computed once.
    fn classes(&mut self) -> Result<&[ClassData]> {
        if self.classes.is_none() {
            let mut data = Vec::new();
            for (rep, members) in classes_of(fixtures::all_digraphs(3)) {
                let strict = enumerate_stats(&rep, 2, true, &self.limits)?;
                let loose = enumerate_stats(&rep, 2, false, &self.limits)?;
                data.push(ClassData { rep, members, strict, loose });
            }
            self.classes = Some(data);
        }
        Ok(self.classes.as_deref().expect("filled above"))
    }
}

fn pow(q: u32, e: usize) -> u64 {
    (q as u64).pow(e as u32)
}

fn check_fig1(ctx: &mut Context) -> Result<(bool, String)> {
    let d = fixtures::fig1();
    let u = upper_bound_u(&canonicalize(&d), &ctx.limits)?;
    let cr = conjunctive_rank(&d, &ctx.limits)?;
    Ok((u == 8 && cr == 7, format!("U = {u} (expected 8), crank = {cr} (expected 7)")))
}

fn check_star(ctx: &mut Context) -> Result<(bool, String)> {
    let d = fixtures::star3();
    let stats = enumerate_stats(&d, 2, true, &ctx.limits)?;
    let formula = pow(2, 2) + pow(2, 1) - 1;
    let cr = conjunctive_rank(&d, &ctx.limits)?;
    let c = canonicalize(&d);
    let (l, u) = (lower_bound_l(&c, &ctx.limits)?, upper_bound_u(&c, &ctx.limits)?);
    let abs = absolute_minrank_bounds(&d, &ctx.limits)?;
    let ok = stats.function_count == 2000
        && stats.rank.min == formula
        && cr == 8
        && l == 4
        && u == 4
        && abs.lower == 4
        && abs.upper == 4;
    Ok((
        ok,
        format!(
            "{} strict systems (expected 2000), minrank[STAR3,2] = {} (expected {formula}), crank = {cr} (expected 8), L = {l}, U = {u}, absolute minrank in [{}, {}] (expected 4)",
            stats.function_count, stats.rank.min, abs.lower, abs.upper
        ),
    ))
}

fn check_classification(ctx: &mut Context) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let mut tally: BTreeMap<&str, usize> = BTreeMap::new();
    for c in ctx.classes()? {
        let m = c.strict.rank.min;
        let verdict = minrank_classify(&c.rep);
        let ok = match verdict {
            MinrankClass::One => m == 1,
            MinrankClass::Two => m == 2,
            MinrankClass::Full => m == 8,
            MinrankClass::Other => 2 < m && m < 8,
        };
        let name = match verdict {
            MinrankClass::One => "one",
            MinrankClass::Two => "two",
            MinrankClass::Full => "full",
            MinrankClass::Other => "other",
        };
        *tally.entry(name).or_default() += c.members;
        if !ok {
            bad.push(format!("{} ({name}, minrank {m})", c.rep.fingerprint()));
        }
    }
    let total: usize = tally.values().sum();
    Ok((
        bad.is_empty() && total == 512,
        format!("{total} digraphs, verdicts {tally:?}; mismatches: {}", list(&bad)),
    ))
}

fn list(items: &[String]) -> String {
    if items.is_empty() {
        "none".into()
    } else {
        items.join(", ")
    }
}

fn random_digraph(rng: &mut ChaCha8Rng, max_n: usize) -> Digraph {
    let n = rng.gen_range(1..=max_n);
    let arcs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    Digraph::from_arcs_dedup(n, arcs)
}

fn check_canonical_invariance(ctx: &mut Context) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut bad = Vec::new();
    for _ in 0..50 {
        let d = random_digraph(&mut rng, 3);
        let c = canonicalize(&d).to_digraph();
        let a = enumerate_stats(&d, 2, true, &ctx.limits)?.rank.min;
        let b = enumerate_stats(&c, 2, true, &ctx.limits)?.rank.min;
        if a != b {
            bad.push(format!("{}: {a} vs {b}", d.fingerprint()));
        }
    }
    Ok((bad.is_empty(), format!("50 digraphs; mismatches: {}", list(&bad))))
}

fn check_avgfix(ctx: &mut Context) -> Result<(bool, String)> {
    let one = BigRational::one();
    let mut bad = Vec::new();
    let mut total = 0;
    for c in ctx.classes()? {
        total += c.members;
        for s in [&c.strict, &c.loose] {
            if s.fixed_points.average != one {
                bad.push(format!("{} strict={}: {}", c.rep.fingerprint(), s.strict, s.fixed_points.average));
            }
        }
    }
    Ok((
        bad.is_empty(),
        format!("{total} digraphs, strict and non-strict averages exact; deviations: {}", list(&bad)),
    ))
}

fn check_minfix(ctx: &mut Context) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let mut total = 0;
    for c in ctx.classes()? {
        total += c.members;
        let expected = c.rep.is_acyclic() as u64;
        if c.strict.fixed_points.min != expected {
            bad.push(format!("{}: {} (expected {expected})", c.rep.fingerprint(), c.strict.fixed_points.min));
        }
    }
    Ok((bad.is_empty(), format!("{total} digraphs; mismatches: {}", list(&bad))))
}

/// `(max rank, max periodic rank)` by exhaustive enumeration.
fn max_rank_and_periodic(d: &Digraph, q: u32, strict: bool, limits: &Limits) -> Result<(u64, u64)> {
    let space = SystemSpace::new(d, q, strict, limits)?;
    let states = space.states();
    let (r, p, _) = space.fold(
        || (0u64, 0u64, Scratch::new(states)),
        |a, t| {
            let r = a.2.rank(t);
            let p = a.2.periodic(t);
            a.0 = a.0.max(r);
            a.1 = a.1.max(p);
        },
        |a, b| (a.0.max(b.0), a.1.max(b.1), a.2),
    );
    Ok((r, p))
}

fn check_maxrank(ctx: &mut Context) -> Result<(bool, String)> {
    let limits = ctx.limits;
    let mut bad = Vec::new();
    let mut verified = [0usize; 2];
    let mut beyond_guard = [0usize; 2];
    let classes = ctx.classes()?;
    for c in classes {
        let (a1, an) = (max_independent_arcs(&c.rep), max_cycle_cover(&c.rep));
        // q = 2: non-strict equality, strict at most
        if c.loose.rank.max != pow(2, a1) || c.loose.periodic_rank.max != pow(2, an) {
            bad.push(format!("{} q=2 non-strict: {}/{}", c.rep.fingerprint(), c.loose.rank.max, c.loose.periodic_rank.max));
        }
        if c.strict.rank.max > pow(2, a1) || c.strict.periodic_rank.max > pow(2, an) {
            bad.push(format!("{} q=2 strict exceeds", c.rep.fingerprint()));
        }
        // q = 3: equality for both families
        for (i, strict) in [false, true].into_iter().enumerate() {
            match max_rank_and_periodic(&c.rep, 3, strict, &limits) {
                Ok((r, p)) => {
                    verified[i] += c.members;
                    if r != pow(3, a1) || p != pow(3, an) {
                        bad.push(format!("{} q=3 strict={strict}: {r}/{p}", c.rep.fingerprint()));
                    }
                }
                Err(e) if e.is_size_limit() => beyond_guard[i] += c.members,
                Err(e) => return Err(e),
            }
        }
    }
    // looped 2-cycle: strict q=2 periodic rank stays below 2^an
    let c2 = Digraph::new(2, [(0, 0), (1, 1), (0, 1), (1, 0)])?;
    let (_, per) = max_rank_and_periodic(&c2, 2, true, &limits)?;
    let an = max_cycle_cover(&c2);
    if per >= pow(2, an) {
        bad.push(format!("looped 2-cycle: maxper[D,2] = {per}, not below {}", pow(2, an)));
    }
    let ok = bad.is_empty() && beyond_guard == [0, 0];
    Ok((
        ok,
        format!(
            "q=2: 512 digraphs both families; q=3 non-strict: {} verified, {} beyond the {} system guard; q=3 strict: {} verified, {} beyond the guard; looped 2-cycle maxper[D,2] = {per} < {}; mismatches: {}",
            verified[0],
            beyond_guard[0],
            limits.max_functions,
            verified[1],
            beyond_guard[1],
            pow(2, an),
            list(&bad)
        ),
    ))
}

fn check_loopfull(ctx: &mut Context) -> Result<(bool, String)> {
    let limits = ctx.limits;
    let mut bad = Vec::new();
    let mut count = 0;
    // n = 3 values come from the class sweep: loopfull(D) is a 3-vertex digraph
    let sweep: BTreeMap<u64, u64> = ctx
        .classes()?
        .iter()
        .map(|c| (iso_key(&c.rep), c.strict.fixed_points.max))
        .collect();
    for n in 1..=3 {
        for d in fixtures::all_digraphs(n).filter(|d| d.loop_count() == 0) {
            count += 1;
            let full = d.loopfull();
            let enumerated = if n == 3 {
                sweep[&iso_key(&full)]
            } else {
                enumerate_stats(&full, 2, true, &limits)?.fixed_points.max
            };
            let formula = loopfull_maxfix(&d, 2, &limits)?;
            if BigUint::from(enumerated) != formula {
                bad.push(format!("{}: {enumerated} vs {formula}", d.fingerprint()));
            }
        }
    }
    Ok((bad.is_empty(), format!("{count} loopless digraphs; mismatches: {}", list(&bad))))
}

fn check_entropy(ctx: &mut Context) -> Result<(bool, String)> {
    let c5 = entropy_h(&fixtures::c5_sym(), &ctx.limits)?.h;
    let c3 = entropy_h(&fixtures::c3(), &ctx.limits)?.h;
    let ok = (c5.value - 2.5).abs() <= 1e-6 && (c3.value - 1.0).abs() <= 1e-6;
    Ok((ok, format!("H(C5sym) = {} (expected 2.5), H(C3) = {} (expected 1)", c5.value, c3.value)))
}

fn check_sandwich(ctx: &mut Context) -> Result<(bool, String)> {
    let limits = ctx.limits;
    let mut bad = Vec::new();
    let mut total = 0;
    for c in ctx.classes()? {
        total += c.members;
        let r = fix_bounds_report(&c.rep, 2, false, &limits)?;
        let m = c.loose.fixed_points.max as u128;
        if !(r.best_lower <= m && m <= r.best_upper) {
            bad.push(format!("{}: {m} not in [{}, {}]", c.rep.fingerprint(), r.best_lower, r.best_upper));
        }
    }
    let k3 = fix_bounds_report(&fixtures::k3(), 2, false, &limits)?;
    let c3 = fix_bounds_report(&fixtures::c3(), 2, false, &limits)?;
    let tight = (k3.best_lower, k3.best_upper) == (4, 4) && (c3.best_lower, c3.best_upper) == (2, 2);
    Ok((
        bad.is_empty() && tight,
        format!(
            "{total} digraphs; K3 in [{}, {}] (expected 4), C3 in [{}, {}] (expected 2); violations: {}",
            k3.best_lower,
            k3.best_upper,
            c3.best_lower,
            c3.best_upper,
            list(&bad)
        ),
    ))
}

fn check_blowup(ctx: &mut Context) -> Result<(bool, String)> {
    let c5 = fixtures::c5_sym();
    let nu = cycle_packing_number(&blowup(&c5, 2), &ctx.limits)?;
    let frac = fractional_cycle_packing(&c5, &ctx.limits)?;
    let twice = frac.exact.as_ref().map(|r| r * BigRational::from_integer(BigInt::from(2)));
    let ok = nu == 5 && twice == Some(BigRational::from_integer(BigInt::from(5)));
    Ok((
        ok,
        format!(
            "packing number of 2-fold blow-up = {nu} (expected 5), fractional packing of C5sym = {}",
            frac.exact.map_or(frac.value.to_string(), |r| r.to_string())
        ),
    ))
}

fn check_univariate(ctx: &mut Context) -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for q in [2, 3, 4] {
        let b = univariate_baseline(q, &ctx.limits)?;
        ok &= b.closed_form_avg_rank == b.enumerated_avg_rank && b.fixed_point_free == b.expected_fixed_point_free;
        parts.push(format!(
            "q={q}: avg rank {} vs {}, fixed-point-free {} vs {}",
            b.enumerated_avg_rank, b.closed_form_avg_rank, b.fixed_point_free, b.expected_fixed_point_free
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn check_nilpotent(ctx: &mut Context) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0013);
    let mut bad = Vec::new();
    for _ in 0..20 {
        let d = random_digraph(&mut rng, 4);
        let f = nilpotent_class_two(&d, 3)?;
        let per = f.periodic_rank(&ctx.limits)?;
        let nil = f.nilpotency_class(&ctx.limits)?;
        if per != 1 || nil.class.is_none_or(|k| k > 2) || f.interaction_graph() != d {
            bad.push(format!("{}: periodic rank {per}, class {:?}", d.fingerprint(), nil.class));
        }
    }
    let c3 = enumerate_stats(&fixtures::c3(), 2, true, &ctx.limits)?;
    let all_bijective = c3.periodic_rank.min == 8 && c3.periodic_rank.max == 8;
    Ok((
        bad.is_empty() && all_bijective,
        format!(
            "20 random digraphs; failures: {}; F[C3,2]: {} systems, periodic rank in [{}, {}] (expected 8)",
            list(&bad),
            c3.function_count,
            c3.periodic_rank.min,
            c3.periodic_rank.max
        ),
    ))
}

fn is_subgraph(a: &Digraph, b: &Digraph) -> bool {
    a.n() == b.n() && a.arcs().all(|(u, v)| b.has_arc(u, v))
}

fn check_witnesses(ctx: &mut Context) -> Result<(bool, String)> {
    let limits = ctx.limits;
    let fx = [
        ("E3", fixtures::e3()),
        ("L1", fixtures::l1()),
        ("P1", fixtures::p1()),
        ("C3", fixtures::c3()),
        ("C3 looped", fixtures::c3_looped()),
        ("K3", fixtures::k3()),
        ("C5sym", fixtures::c5_sym()),
        ("STAR3", fixtures::star3()),
        ("FIG1", fixtures::fig1()),
    ];
    let mut bad: Vec<String> = Vec::new();
    let mut checked = 0;
    let mut expect = |name: String, ok: bool| {
        checked += 1;
        if !ok {
            bad.push(name);
        }
    };
    for (name, d) in &fx {
        let conj = conjunctive(d);
        expect(format!("conjunctive {name}"), conj.interaction_graph() == *d);
        expect(
            format!("extend_alphabet(conjunctive) {name}"),
            extend_alphabet(&conj).interaction_graph() == *d,
        );
        expect(format!("nilpotent_class_two {name}"), nilpotent_class_two(d, 3)?.interaction_graph() == *d);
        let c = canonicalize(d);
        if c.num_sinks() > 0 {
            let w = canonical_upper_witness(&c)?;
            expect(format!("canonical_upper_witness {name}"), w.interaction_graph() == c.to_digraph());
        }
        for q in [2, 3] {
            let mp = maxper_witness(d, q)?;
            expect(
                format!("maxper_witness {name} q={q}"),
                is_subgraph(&mp.declared_graph(), d) && is_subgraph(&mp.interaction_graph(), d),
            );
            let mr = maxrank_witness(d, q)?;
            expect(
                format!("maxrank_witness {name} q={q}"),
                is_subgraph(&mr.declared_graph(), d) && is_subgraph(&mr.interaction_graph(), d),
            );
        }
        let packing = maximum_cycle_packing(d, &limits)?;
        let pw = packing_plus_one_witness(d, &packing)?;
        let fixed = pw.fixed_points(&limits)?.len();
        expect(
            format!("packing_plus_one_witness {name}"),
            is_subgraph(&pw.interaction_graph(), d) && fixed > packing.len(),
        );
    }
    for n in [3, 5] {
        let w: Fds = star_witness(n)?;
        expect(format!("star_witness {n}"), w.interaction_graph() == star_graph(n));
    }
    for (n, q) in [(3, 2), (2, 3), (2, 2)] {
        let w = modular_complete(n, q)?;
        expect(
            format!("modular_complete {n} {q}"),
            w.interaction_graph() == fixtures::complete(n)
                && w.fixed_points(&limits)?.len() as u64 == pow(q, n - 1),
        );
    }
    // strict packing witness: covering packing without chords
    let two = Digraph::new(2, [(0, 0), (1, 1), (0, 1)])?;
    let w = packing_plus_one_witness(&two, &[vec![0], vec![1]])?;
    expect("packing_plus_one_witness covering".into(), w.interaction_graph() == two);
    // fixed-point identity used by the witnesses' callers
    let t: Vec<u32> = (0..8).map(|s| conjunctive(&fixtures::c3()).eval_index(s) as u32).collect();
    expect("conjunctive C3 fixed points".into(), fixed_count(&t) == 2);
    Ok((bad.is_empty(), format!("{checked} conformance checks; failures: {}", list(&bad))))
}
