//! Small linear programs with integer data.
//!
//! `solve_exact` runs a dense two-phase tableau simplex over big rationals
//! with Bland's rule, so degenerate programs (the entropy LP is very
//! degenerate) terminate. `solve_float` hands the same program to `minilp`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<(usize, i64)>,
    pub cmp: Cmp,
    pub rhs: i64,
}

/// `maximize objective . x` subject to the constraints and `x >= 0`.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<i64>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone)]
pub struct LpSolution<T> {
    pub value: T,
    pub x: Vec<T>,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            objective: vec![0; num_vars],
            constraints: Vec::new(),
        }
    }

    pub fn add(&mut self, coeffs: Vec<(usize, i64)>, cmp: Cmp, rhs: i64) {
        debug_assert!(coeffs.iter().all(|&(j, _)| j < self.num_vars));
        self.constraints.push(Constraint { coeffs, cmp, rhs });
    }

    pub fn solve_float(&self) -> Result<LpSolution<f64>> {
        use minilp::{ComparisonOp, OptimizationDirection, Problem};
        let mut p = Problem::new(OptimizationDirection::Maximize);
        let vars: Vec<_> = self
            .objective
            .iter()
            .map(|&c| p.add_var(c as f64, (0.0, f64::INFINITY)))
            .collect();
        for c in &self.constraints {
            let expr: Vec<_> = c.coeffs.iter().map(|&(j, a)| (vars[j], a as f64)).collect();
            let op = match c.cmp {
                Cmp::Le => ComparisonOp::Le,
                Cmp::Ge => ComparisonOp::Ge,
                Cmp::Eq => ComparisonOp::Eq,
            };
            p.add_constraint(expr.as_slice(), op, c.rhs as f64);
        }
        let sol = p.solve().map_err(|e| match e {
            minilp::Error::Infeasible => Error::Lp("infeasible"),
            minilp::Error::Unbounded => Error::Lp("unbounded"),
        })?;
        Ok(LpSolution {
            value: sol.objective(),
            x: vars.iter().map(|&v| sol[v]).collect(),
        })
    }

    pub fn solve_exact(&self) -> Result<LpSolution<BigRational>> {
        Tableau::build(self).solve(self)
    }
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    /// Total columns, excluding the right-hand side stored last in each row.
    cols: usize,
    first_artificial: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let m = lp.constraints.len();
        let n = lp.num_vars;
        let slack_count = lp.constraints.iter().filter(|c| c.cmp != Cmp::Eq).count();
        // normalize rhs >= 0 first so we know which rows need artificials
        let normalized: Vec<(Vec<(usize, i64)>, Cmp, i64)> = lp
            .constraints
            .iter()
            .map(|c| {
                if c.rhs < 0 {
                    let flipped = match c.cmp {
                        Cmp::Le => Cmp::Ge,
                        Cmp::Ge => Cmp::Le,
                        Cmp::Eq => Cmp::Eq,
                    };
                    (c.coeffs.iter().map(|&(j, a)| (j, -a)).collect(), flipped, -c.rhs)
                } else {
                    (c.coeffs.clone(), c.cmp, c.rhs)
                }
            })
            .collect();
        let art_count = normalized.iter().filter(|c| c.1 != Cmp::Le).count();
        let first_artificial = n + slack_count;
        let cols = first_artificial + art_count;

        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let (mut next_slack, mut next_art) = (n, first_artificial);
        for (coeffs, cmp, rhs) in normalized {
            let mut row = vec![BigRational::zero(); cols + 1];
            for (j, a) in coeffs {
                row[j] += q(a);
            }
            row[cols] = q(rhs);
            match cmp {
                Cmp::Le => {
                    row[next_slack] = BigRational::one();
                    basis.push(next_slack);
                    next_slack += 1;
                }
                Cmp::Ge => {
                    row[next_slack] = -BigRational::one();
                    next_slack += 1;
                    row[next_art] = BigRational::one();
                    basis.push(next_art);
                    next_art += 1;
                }
                Cmp::Eq => {
                    row[next_art] = BigRational::one();
                    basis.push(next_art);
                    next_art += 1;
                }
            }
            rows.push(row);
        }
        Tableau {
            rows,
            basis,
            cols,
            first_artificial,
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost . x` over columns `< limit` starting from the current
    /// basis. Returns false when unbounded.
    fn optimize(&mut self, cost: &[BigRational], limit: usize) -> bool {
        loop {
            // reduced cost of column j: c_B . column_j - c_j
            let entering = (0..limit).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut z = -cost[j].clone();
                for (row, &b) in self.rows.iter().zip(&self.basis) {
                    if !row[j].is_zero() && !cost[b].is_zero() {
                        z += &cost[b] * &row[j];
                    }
                }
                z.is_negative()
            });
            let Some(c) = entering else { return true };
            let mut leave: Option<(usize, BigRational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[self.cols] / &row[c];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }

    fn solve(mut self, lp: &LinearProgram) -> Result<LpSolution<BigRational>> {
        let zero = BigRational::zero();
        if self.first_artificial < self.cols {
            let mut cost = vec![zero.clone(); self.cols];
            for c in cost.iter_mut().skip(self.first_artificial) {
                *c = -BigRational::one();
            }
            self.optimize(&cost, self.cols);
            let infeasible = self
                .rows
                .iter()
                .zip(&self.basis)
                .any(|(row, &b)| b >= self.first_artificial && !row[self.cols].is_zero());
            if infeasible {
                return Err(Error::Lp("infeasible"));
            }
            // drive zero-valued artificials out; drop rows that are redundant
            let mut r = 0;
            while r < self.rows.len() {
                if self.basis[r] >= self.first_artificial {
                    match (0..self.first_artificial).find(|&j| !self.rows[r][j].is_zero()) {
                        Some(j) => self.pivot(r, j),
                        None => {
                            self.rows.remove(r);
                            self.basis.remove(r);
                            continue;
                        }
                    }
                }
                r += 1;
            }
        }
        let mut cost = vec![zero.clone(); self.cols];
        for (j, &c) in lp.objective.iter().enumerate() {
            cost[j] = q(c);
        }
        if !self.optimize(&cost, self.first_artificial) {
            return Err(Error::Lp("unbounded"));
        }
        let mut x = vec![zero.clone(); lp.num_vars];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < lp.num_vars {
                x[b] = row[self.cols].clone();
            }
        }
        let value = x
            .iter()
            .zip(&lp.objective)
            .fold(zero, |acc, (xi, &c)| acc + xi * q(c));
        Ok(LpSolution { value, x })
    }
}

/// Rational to f64 for reporting.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
