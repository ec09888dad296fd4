//! Steiner and Mendelsohn triple systems and their quasigroups.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is pure
//! computation over small finite structures:
//!
//! - [`algebra`]: finite abelian groups, their automorphisms, prime-power
//!   fields and the roots of `x^2 - x + 1` modulo prime powers.
//! - [`moufang`]: commutative Moufang loops, nuclei and affine quasigroups
//!   over loops.
//! - [`quasigroup`]: Cayley tables, the identity predicates (mediality,
//!   distributivity, semisymmetry, ...), anti-distributivity, generated
//!   subquasigroups and isomorphism search.
//! - [`designs`]: Mendelsohn and Steiner triple systems, conversion to and
//!   from quasigroups, properness and mitre search.
//! - [`constructions`]: the explicit families (field, characteristic two,
//!   affine Steiner, Netto, projective), the existence spectrum and the
//!   anti-distributive doubling.
//! - [`enumeration`]: isomorphism classes of affine Mendelsohn quasigroups via
//!   conjugacy of automorphisms.
//!
//! Enable the `parallel` feature to spread the exhaustive scans over a rayon
//! pool. Results, including reported witnesses, do not depend on it.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod algebra;
pub mod constructions;
pub mod designs;
pub mod enumeration;
pub mod moufang;
pub mod quasigroup;

mod par;

use core::sync::atomic::{AtomicU64, Ordering};

pub use algebra::{AbelianGroup, FieldElement, FieldSpec, GroupAutomorphism};
pub use designs::{OrientedTripleSystem, UnorderedTripleSystem};
pub use enumeration::EnumerationReport;
pub use moufang::LoopTable;
pub use quasigroup::{CayleyTable, PropertyReport};

/// Default node cap for backtracking searches.
pub const DEFAULT_SEARCH_BUDGET: u64 = 100_000_000;

/// A countdown of search nodes, shared by every worker of one search.
#[derive(Debug)]
pub struct Budget {
    remaining: AtomicU64,
}

impl Budget {
    pub fn new(nodes: u64) -> Self {
        Budget {
            remaining: AtomicU64::new(nodes),
        }
    }

    /// Consume one node; fails once the budget is spent.
    #[inline]
    pub(crate) fn tick(&self) -> Result<(), BudgetExhausted> {
        self.remaining
            .fetch_update(Ordering::Relaxed, Ordering::Relaxed, |r| r.checked_sub(1))
            .map(drop)
            .map_err(|_| BudgetExhausted)
    }

    pub fn remaining(&self) -> u64 {
        self.remaining.load(Ordering::Relaxed)
    }
}

impl Clone for Budget {
    fn clone(&self) -> Self {
        Budget::new(self.remaining())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_SEARCH_BUDGET)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct BudgetExhausted;
