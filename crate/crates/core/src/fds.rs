//! Finite dynamical systems `f: [q]^n -> [q]^n` stored as explicit local
//! tables.
//!
//! States are serialized little-endian: `x_1` is the least significant
//! digit of `sum x_v q^(v-1)`. Local tables use the same convention over
//! their declared inputs.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::limits::{checked_pow, Limits};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fds {
    n: usize,
    q: u32,
    inputs: Vec<Vec<usize>>,
    tables: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Nilpotency {
    pub nilpotent: bool,
    /// Least `k` with `f^k` constant.
    pub class: Option<usize>,
}

/// Validates shapes and builds a system.
pub fn make_fds(n: usize, q: u32, inputs: Vec<Vec<usize>>, tables: Vec<Vec<u32>>) -> Result<Fds> {
    if q < 2 {
        return Err(Error::ShapeMismatch(format!("alphabet size {q} < 2")));
    }
    if inputs.len() != n || tables.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "expected {n} vertices, got {} input lists and {} tables",
            inputs.len(),
            tables.len()
        )));
    }
    for (v, (ins, table)) in inputs.iter().zip(&tables).enumerate() {
        if let Some(&u) = ins.iter().find(|&&u| u >= n) {
            return Err(Error::ShapeMismatch(format!("vertex {} declares input {} but n = {n}", v + 1, u + 1)));
        }
        let mut sorted = ins.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != ins.len() {
            return Err(Error::ShapeMismatch(format!("vertex {} declares a repeated input", v + 1)));
        }
        let expected = checked_pow(q as u64, ins.len())
            .filter(|&e| e <= usize::MAX as u64)
            .ok_or_else(|| Error::ShapeMismatch(format!("table of vertex {} is too large", v + 1)))?;
        if table.len() as u64 != expected {
            return Err(Error::ShapeMismatch(format!(
                "vertex {} has {} table entries, expected {expected}",
                v + 1,
                table.len()
            )));
        }
        if let Some(&value) = table.iter().find(|&&t| t >= q) {
            return Err(Error::ValueOutOfRange { value, q });
        }
    }
    Ok(Fds { n, q, inputs, tables })
}

impl Fds {
    /// Builds tables by evaluating `local(v, input values)` on every tuple.
    pub fn from_fn(
        n: usize,
        q: u32,
        inputs: Vec<Vec<usize>>,
        mut local: impl FnMut(usize, &[u32]) -> u32,
    ) -> Result<Fds> {
        let mut tables = Vec::with_capacity(n);
        for (v, ins) in inputs.iter().enumerate() {
            let size = checked_pow(q as u64, ins.len())
                .ok_or_else(|| Error::ShapeMismatch(format!("table of vertex {} is too large", v + 1)))?;
            let mut tuple = vec![0u32; ins.len()];
            let mut table = Vec::with_capacity(size as usize);
            for idx in 0..size {
                decode_into(idx, q, &mut tuple);
                table.push(local(v, &tuple));
            }
            tables.push(table);
        }
        make_fds(n, q, inputs, tables)
    }

    /// Every vertex constant.
    pub fn constant(n: usize, q: u32, values: &[u32]) -> Result<Fds> {
        make_fds(n, q, vec![Vec::new(); n], values.iter().map(|&c| vec![c]).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn inputs(&self, v: usize) -> &[usize] {
        &self.inputs[v]
    }

    pub fn table(&self, v: usize) -> &[u32] {
        &self.tables[v]
    }

    pub fn state_index(&self, x: &[u32]) -> u64 {
        x.iter().rev().fold(0u64, |acc, &d| acc * self.q as u64 + d as u64)
    }

    pub fn state_from_index(&self, s: u64) -> Vec<u32> {
        let mut x = vec![0; self.n];
        decode_into(s, self.q, &mut x);
        x
    }

    pub fn local(&self, v: usize, x: &[u32]) -> u32 {
        let idx = self.inputs[v]
            .iter()
            .rev()
            .fold(0usize, |acc, &u| acc * self.q as usize + x[u] as usize);
        self.tables[v][idx]
    }

    pub fn eval(&self, x: &[u32]) -> Vec<u32> {
        (0..self.n).map(|v| self.local(v, x)).collect()
    }

    pub fn eval_index(&self, s: u64) -> u64 {
        let x = self.state_from_index(s);
        let mut out = 0u64;
        for v in (0..self.n).rev() {
            out = out * self.q as u64 + self.local(v, &x) as u64;
        }
        out
    }

    /// `x, f(x), ..., f^k(x)`.
    pub fn evaluate_trajectory(&self, x: &[u32], k: usize) -> Vec<Vec<u32>> {
        let mut out = Vec::with_capacity(k + 1);
        out.push(x.to_vec());
        for _ in 0..k {
            let next = self.eval(out.last().expect("non-empty"));
            out.push(next);
        }
        out
    }

    /// Graph of declared inputs.
    pub fn declared_graph(&self) -> Digraph {
        Digraph::from_arcs_dedup(
            self.n,
            self.inputs.iter().enumerate().flat_map(|(v, ins)| ins.iter().map(move |&u| (u, v))),
        )
    }

    /// Whether local function `v` depends essentially on its `i`-th input.
    pub fn depends_on(&self, v: usize, i: usize) -> bool {
        table_depends_on(&self.tables[v], self.q, i)
    }

    pub fn interaction_graph(&self) -> Digraph {
        Digraph::from_arcs_dedup(
            self.n,
            (0..self.n).flat_map(|v| {
                self.inputs[v]
                    .iter()
                    .enumerate()
                    .filter(move |&(i, _)| self.depends_on(v, i))
                    .map(move |(_, &u)| (u, v))
            }),
        )
    }

    /// `f(s)` for every serialized state `s`.
    pub fn transition_table(&self, limits: &Limits) -> Result<Vec<u64>> {
        let states = limits.state_count(self.n, self.q)?;
        Ok((0..states).into_par_iter().map(|s| self.eval_index(s)).collect())
    }

    pub fn rank(&self, limits: &Limits) -> Result<u64> {
        let t = self.transition_table(limits)?;
        Ok(image_size(&t))
    }

    pub fn fixed_points(&self, limits: &Limits) -> Result<Vec<u64>> {
        let t = self.transition_table(limits)?;
        Ok((0..t.len() as u64).filter(|&s| t[s as usize] == s).collect())
    }

    pub fn periodic_rank(&self, limits: &Limits) -> Result<u64> {
        let t = self.transition_table(limits)?;
        Ok(image_iteration(&t).0)
    }

    pub fn nilpotency_class(&self, limits: &Limits) -> Result<Nilpotency> {
        let t = self.transition_table(limits)?;
        let (per, class) = image_iteration(&t);
        Ok(Nilpotency {
            nilpotent: per == 1,
            class,
        })
    }

    /// Text form: `fds n N q Q` then `v <id> inputs <..> table <..>` lines.
    pub fn to_text(&self) -> String {
        let mut s = format!("fds n {} q {}\n", self.n, self.q);
        for v in 0..self.n {
            let _ = write!(s, "v {} inputs", v + 1);
            for &u in &self.inputs[v] {
                let _ = write!(s, " {}", u + 1);
            }
            s.push_str(" table");
            for &t in &self.tables[v] {
                let _ = write!(s, " {t}");
            }
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Fds> {
        let mut header: Option<(usize, u32)> = None;
        let mut inputs: Vec<Option<Vec<usize>>> = Vec::new();
        let mut tables: Vec<Vec<u32>> = Vec::new();
        let err = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = body.split_whitespace().collect();
            match header {
                None => {
                    let [kw, nk, nv, qk, qv] = tokens[..] else {
                        return Err(err(line, "expected header `fds n <N> q <Q>`"));
                    };
                    if kw != "fds" || nk != "n" || qk != "q" {
                        return Err(err(line, "expected header `fds n <N> q <Q>`"));
                    }
                    let n: usize = nv.parse().map_err(|_| err(line, "bad vertex count"))?;
                    let q: u32 = qv.parse().map_err(|_| err(line, "bad alphabet size"))?;
                    header = Some((n, q));
                    inputs = vec![None; n];
                    tables = vec![Vec::new(); n];
                }
                Some((n, q)) => {
                    if tokens.len() < 4 || tokens[0] != "v" || tokens[2] != "inputs" {
                        return Err(err(line, "expected `v <id> inputs <..> table <..>`"));
                    }
                    let id: usize = tokens[1].parse().map_err(|_| err(line, "bad vertex id"))?;
                    if id == 0 || id > n {
                        return Err(err(line, "vertex id out of range"));
                    }
                    let split = tokens
                        .iter()
                        .position(|&t| t == "table")
                        .ok_or_else(|| err(line, "missing `table`"))?;
                    let ins = tokens[3..split]
                        .iter()
                        .map(|t| match t.parse::<usize>() {
                            Ok(u) if u >= 1 && u <= n => Ok(u - 1),
                            _ => Err(err(line, "bad input vertex")),
                        })
                        .collect::<Result<Vec<_>>>()?;
                    let table = tokens[split + 1..]
                        .iter()
                        .map(|t| t.parse::<u32>().map_err(|_| err(line, "bad table entry")))
                        .collect::<Result<Vec<_>>>()?;
                    if table.iter().any(|&t| t >= q) {
                        return Err(err(line, "table entry out of range"));
                    }
                    if inputs[id - 1].is_some() {
                        return Err(err(line, "vertex defined twice"));
                    }
                    inputs[id - 1] = Some(ins);
                    tables[id - 1] = table;
                }
            }
        }
        let (n, q) = header.ok_or_else(|| err(0, "missing header"))?;
        let inputs = inputs
            .into_iter()
            .enumerate()
            .map(|(v, i)| i.ok_or_else(|| err(0, &format!("vertex {} not defined", v + 1))))
            .collect::<Result<Vec<_>>>()?;
        make_fds(n, q, inputs, tables)
    }
}

impl std::fmt::Display for Fds {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub(crate) fn decode_into(mut idx: u64, q: u32, out: &mut [u32]) {
    for d in out.iter_mut() {
        *d = (idx % q as u64) as u32;
        idx /= q as u64;
    }
}

/// Whether a local table over `k` inputs depends on input position `i`.
pub fn table_depends_on(table: &[u32], q: u32, i: usize) -> bool {
    let q = q as usize;
    let stride = q.pow(i as u32);
    (0..table.len())
        .filter(|idx| (idx / stride).is_multiple_of(q))
        .any(|idx| (1..q).any(|a| table[idx + a * stride] != table[idx]))
}

/// Number of distinct values in a transition table.
pub fn image_size(t: &[u64]) -> u64 {
    let mut seen = vec![false; t.len()];
    let mut count = 0;
    for &y in t {
        if !seen[y as usize] {
            seen[y as usize] = true;
            count += 1;
        }
    }
    count
}

/// Iterates `S <- f(S)` from the whole space. Returns the size of the
/// eventual image and, when it is a single point, the first step reaching it.
pub fn image_iteration(t: &[u64]) -> (u64, Option<usize>) {
    let mut current: Vec<u64> = (0..t.len() as u64).collect();
    let mut mark = vec![0usize; t.len()];
    let mut step = 0;
    loop {
        if current.len() == 1 {
            return (1, Some(step));
        }
        step += 1;
        let mut next = Vec::with_capacity(current.len());
        for &s in &current {
            let y = t[s as usize] as usize;
            if mark[y] != step {
                mark[y] = step;
                next.push(y as u64);
            }
        }
        if next.len() == current.len() {
            return (next.len() as u64, None);
        }
        current = next;
    }
}
