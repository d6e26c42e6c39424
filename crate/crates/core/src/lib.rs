//! Rank, periodic rank and fixed points of finite dynamical systems over a
//! fixed interaction graph.

pub mod bounds;
pub mod canonical;
pub mod constructions;
pub mod enumeration;
pub mod error;
pub mod fds;
pub mod graph;
pub mod invariants;
pub mod limits;
pub mod lp;
pub mod matching;
pub mod verify;

pub use canonical::{canonicalize, CanonicalGraph};
pub use enumeration::{enumerate_stats, minrank_exact, StatsReport};
pub use error::{Error, Result};
pub use fds::{make_fds, Fds, Nilpotency};
pub use graph::Digraph;
pub use limits::Limits;
