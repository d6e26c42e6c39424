use serde::Serialize;

use crate::error::{Error, Result};

/// Guards for every exhaustive or exponential computation in the crate.
///
/// Operations refuse with [`Error::SizeLimitExceeded`] instead of
/// approximating when an input exceeds its guard.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Limits {
    /// Vertex cap for exact NP-hard graph invariants (feedback sets,
    /// packings, clique partitions, in-dominating profiles).
    pub max_exact_n: usize,
    /// Cap on `q^n` for whole-state-space scans.
    pub max_states: u64,
    /// Cap on the number of systems enumerated by exhaustive statistics.
    pub max_functions: u64,
    /// Cap on `q^n` for exact code-size (max clique) search.
    pub max_code_states: u64,
    /// Cap on enumerated cycles / cliques used as LP columns.
    pub max_lp_columns: usize,
    /// LPs with at most this many columns are solved in exact rationals.
    pub exact_lp_columns: usize,
    /// Entropy LP vertex cap (2^n variables).
    pub max_entropy_n: usize,
    /// Entropy LPs up to this many vertices are solved in exact rationals.
    pub exact_entropy_n: usize,
    /// Sink cap for counting independent sets of the conflict graph.
    pub max_sinks_u: usize,
    /// Sink cap for the subset-lattice lower bounds.
    pub max_sinks_lattice: usize,
    /// Node budget for branch-and-bound searches without a closed-form
    /// size (code cliques).
    pub max_search_nodes: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_exact_n: 24,
            max_states: 1 << 24,
            max_functions: 100_000_000,
            max_code_states: 1 << 14,
            max_lp_columns: 200_000,
            exact_lp_columns: 10_000,
            max_entropy_n: 12,
            exact_entropy_n: 6,
            max_sinks_u: 30,
            max_sinks_lattice: 20,
            max_search_nodes: 50_000_000,
        }
    }
}

impl Limits {
    pub(crate) fn check_exact_n(&self, n: usize) -> Result<()> {
        // bitmask representations cap out at 64 regardless of configuration
        let cap = self.max_exact_n.min(64);
        if n > cap {
            return Err(Error::too_big("vertex count for exact invariant", n as u64, cap as u64));
        }
        Ok(())
    }

    /// Returns `q^n` when it fits under the state guard.
    pub(crate) fn state_count(&self, n: usize, q: u32) -> Result<u64> {
        match checked_pow(q as u64, n) {
            Some(s) if s <= self.max_states => Ok(s),
            Some(s) => Err(Error::too_big("state space q^n", s, self.max_states)),
            None => Err(Error::too_big(
                "state space q^n",
                num_bigint::BigUint::from(q).pow(n as u32),
                self.max_states,
            )),
        }
    }
}

pub(crate) fn checked_pow(base: u64, exp: usize) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}
