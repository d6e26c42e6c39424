//! Report documents. Every section records the guard status it was
//! produced under: `ok`, or `skipped(size)` with the refusal message.

use fdsrank_core::bounds::{fix_bounds_report, BoundsReport};
use fdsrank_core::canonical::{
    absolute_minrank_bounds, lower_bound_l, minrank_classify, refined_bound_lp, tightness_classify,
    upper_bound_u, AbsoluteMinrankBounds, MinrankClass, Tightness,
};
use fdsrank_core::constructions::conjunctive_rank;
use fdsrank_core::graph::{structure_stats, StructureStats};
use fdsrank_core::invariants::{max_cycle_cover, max_independent_arcs};
use fdsrank_core::{canonicalize, enumerate_stats, minrank_exact, Digraph, Limits, Result, StatsReport};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Serialize)]
pub struct Section<T> {
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl<T> Section<T> {
    fn ok(value: T) -> Self {
        Section { status: "ok", value: Some(value), reason: None }
    }

    pub fn value(&self) -> Option<&T> {
        self.value.as_ref()
    }
}

/// Size refusals become skipped sections; other errors propagate.
pub fn section<T>(r: Result<T>) -> Result<Section<T>> {
    match r {
        Ok(v) => Ok(Section::ok(v)),
        Err(e) if e.is_size_limit() => Ok(Section {
            status: "skipped(size)",
            value: None,
            reason: Some(e.to_string()),
        }),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Serialize)]
pub struct CanonicalSummary {
    pub graph: String,
    pub sources: usize,
    pub sinks: usize,
    pub l: Section<u64>,
    pub l_refined: Section<u64>,
    pub u: Section<u64>,
    pub tightness: Section<Tightness>,
}

pub fn canonical_summary(d: &Digraph, limits: &Limits) -> Result<CanonicalSummary> {
    let c = canonicalize(d);
    Ok(CanonicalSummary {
        graph: c.to_digraph().fingerprint(),
        sources: c.num_sources(),
        sinks: c.num_sinks(),
        l: section(lower_bound_l(&c, limits))?,
        l_refined: section(refined_bound_lp(&c, limits))?,
        u: section(upper_bound_u(&c, limits))?,
        tightness: section(tightness_classify(&c, limits))?,
    })
}

#[derive(Debug, Serialize)]
pub struct Classification {
    pub verdict: MinrankClass,
    pub implied_minrank: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct Alphas {
    pub alpha_1: usize,
    pub alpha_n: usize,
    /// `q^alpha_1`.
    pub max_rank: String,
    /// `q^alpha_n`.
    pub max_periodic_rank: String,
}

#[derive(Debug, Serialize)]
pub struct Minrank {
    pub value: u64,
    pub method: &'static str,
}

#[derive(Debug, Serialize)]
pub struct Enumerations {
    pub strict: Section<StatsReport>,
    pub non_strict: Section<StatsReport>,
}

#[derive(Debug, Serialize)]
pub struct Analysis {
    pub graph: String,
    pub q: u32,
    pub strict: bool,
    pub guards: Limits,
    pub structure: StructureStats,
    pub canonical: CanonicalSummary,
    pub conjunctive_rank: Section<u64>,
    pub classification: Classification,
    pub absolute_minrank: Section<AbsoluteMinrankBounds>,
    pub minrank: Section<Minrank>,
    pub alphas: Alphas,
    pub bounds: Section<BoundsReport>,
    pub enumeration: Enumerations,
}

pub fn analyze(d: &Digraph, q: u32, strict: bool, limits: &Limits) -> Result<Analysis> {
    let verdict = minrank_classify(d);
    let strict_stats = section(enumerate_stats(d, q, true, limits))?;
    let minrank = match strict_stats.value() {
        Some(s) => Section::ok(Minrank { value: s.rank.min, method: "enumeration" }),
        None => section(minrank_exact(d, q, limits).map(|value| Minrank { value, method: "branch-and-bound" }))?,
    };
    let (a1, an) = (max_independent_arcs(d), max_cycle_cover(d));
    let power = |e: usize| BigUint::from(q).pow(e as u32).to_string();
    Ok(Analysis {
        graph: d.fingerprint(),
        q,
        strict,
        guards: *limits,
        structure: structure_stats(d),
        canonical: canonical_summary(d, limits)?,
        conjunctive_rank: section(conjunctive_rank(d, limits))?,
        classification: Classification {
            verdict,
            implied_minrank: verdict.implied_minrank(d.n()).map(|v| v.to_string()),
        },
        absolute_minrank: section(absolute_minrank_bounds(d, limits))?,
        minrank,
        alphas: Alphas {
            alpha_1: a1,
            alpha_n: an,
            max_rank: power(a1),
            max_periodic_rank: power(an),
        },
        bounds: section(fix_bounds_report(d, q, strict, limits))?,
        enumeration: Enumerations {
            strict: strict_stats,
            non_strict: section(enumerate_stats(d, q, false, limits))?,
        },
    })
}

/// Flattens a JSON document into aligned `path  value` lines.
pub fn to_table(doc: &impl Serialize) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&p, x, out);
                }
            }
            Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
                let parts: Vec<String> = items.iter().map(scalar).collect();
                out.push((prefix.to_string(), format!("[{}]", parts.join(", "))));
            }
            Value::Array(items) => {
                for (i, x) in items.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), x, out);
                }
            }
            _ => out.push((prefix.to_string(), scalar(v))),
        }
    }
    fn scalar(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            Value::Null => "-".into(),
            other => other.to_string(),
        }
    }
    let value = serde_json::to_value(doc).expect("report serializes");
    let mut rows = Vec::new();
    walk("", &value, &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
}
