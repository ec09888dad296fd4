//! Isomorphism classes of affine Mendelsohn quasigroups.
//!
//! `Aff(G, k)` is Mendelsohn exactly when `k^2 - k + I = 0`, and two such
//! quasigroups are isomorphic exactly when the groups are isomorphic and the
//! automorphisms are conjugate under that isomorphism. Counting `a(v)` is
//! therefore a matter of listing the solutions over every abelian group of
//! order `v` and partitioning them into conjugacy classes. The count is
//! multiplicative over coprime parts of `v`.

mod conjugacy;
mod solve;
mod tables;

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub use conjugacy::{conjugacy_classes, find_conjugator, ConjugacyClass};

use crate::algebra::{factorize, AbelianGroup, AlgebraError, GroupAutomorphism, MAX_GROUP_ORDER};
use crate::constructions::affine_mendelsohn;
use crate::moufang::{affine_over_loop, is_commutative_moufang, mendelsohn_automorphisms, nucleus};
use crate::moufang::{LoopError, LoopTable};
use crate::quasigroup::{is_isomorphic, CayleyTable, QuasigroupError};
use crate::Budget;

/// Default largest prime-power part of `v` handled by [`count_affine`].
pub const DEFAULT_PRIME_POWER_BOUND: u64 = 343;
/// Default cap on the number of solutions listed for one group.
pub const DEFAULT_SOLUTION_CAP: usize = 200_000;
/// Largest group order accepted by the column-scan solver.
pub const BRUTE_BOUND: usize = 81;
/// Largest loop order accepted when counting non-affine quasigroups.
pub const LOOP_BOUND: usize = 81;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    /// The order, or the number of solutions, is beyond the configured bound.
    BoundExceeded {
        what: &'static str,
        value: u64,
        bound: u64,
    },
    SearchBudgetExceeded,
    GroupMismatch,
    Algebra(AlgebraError),
    Loop(LoopError),
}

impl fmt::Display for EnumerationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumerationError::BoundExceeded { what, value, bound } => {
                write!(f, "{what} {value} exceeds the bound {bound}")
            }
            EnumerationError::SearchBudgetExceeded => {
                write!(f, "search budget exceeded before a decision was reached")
            }
            EnumerationError::GroupMismatch => write!(f, "automorphisms act on different groups"),
            EnumerationError::Algebra(e) => write!(f, "{e}"),
            EnumerationError::Loop(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for EnumerationError {}

impl From<AlgebraError> for EnumerationError {
    fn from(e: AlgebraError) -> Self {
        EnumerationError::Algebra(e)
    }
}

impl From<QuasigroupError> for EnumerationError {
    fn from(e: QuasigroupError) -> Self {
        match e {
            QuasigroupError::SearchBudgetExceeded => EnumerationError::SearchBudgetExceeded,
            other => EnumerationError::Loop(LoopError::Table(other)),
        }
    }
}

/// How [`solutions_of_f`] lists solutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Solver {
    /// Extension along invariant subgroups.
    #[default]
    Structured,
    /// Column-by-column matrix scan, for groups of order at most
    /// [`BRUTE_BOUND`].
    Brute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationConfig {
    pub solver: Solver,
    pub prime_power_bound: u64,
    pub solution_cap: usize,
    /// Node budget shared by all conjugator searches of one run.
    pub budget: u64,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            solver: Solver::Structured,
            prime_power_bound: DEFAULT_PRIME_POWER_BOUND,
            solution_cap: DEFAULT_SOLUTION_CAP,
            budget: crate::DEFAULT_SEARCH_BUDGET,
        }
    }
}

/// All automorphisms `k` of `g` with `k^2 - k + I = 0`, sorted by matrix.
pub fn solutions_of_f(
    g: &AbelianGroup,
    config: &EnumerationConfig,
) -> Result<Vec<GroupAutomorphism>, EnumerationError> {
    match config.solver {
        Solver::Structured => {
            solve::structured(g, config.solution_cap).map_err(|_| EnumerationError::BoundExceeded {
                what: "solution count",
                value: config.solution_cap as u64 + 1,
                bound: config.solution_cap as u64,
            })
        }
        Solver::Brute => {
            if g.order() > BRUTE_BOUND {
                return Err(EnumerationError::BoundExceeded {
                    what: "group order",
                    value: g.order() as u64,
                    bound: BRUTE_BOUND as u64,
                });
            }
            Ok(solve::brute(g))
        }
    }
}

/// The classes found for one group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupClasses {
    pub group: AbelianGroup,
    /// Least matrix of each conjugacy class, in increasing order.
    pub representatives: Vec<GroupAutomorphism>,
}

impl GroupClasses {
    pub fn classes(&self) -> usize {
        self.representatives.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationReport {
    pub v: u64,
    pub per_group: Vec<GroupClasses>,
    /// Isomorphism classes of affine Mendelsohn quasigroups of order `v`.
    pub a: u64,
    /// Classes of non-affine distributive ones, from imported loops.
    pub b: Option<u64>,
    /// `a + b`, when `b` is known.
    pub d: Option<u64>,
}

impl EnumerationReport {
    /// Records the non-affine count.
    pub fn with_non_affine(mut self, b: u64) -> Self {
        self.b = Some(b);
        self.d = Some(self.a + b);
        self
    }
}

impl fmt::Display for EnumerationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.per_group {
            writeln!(f, "GROUP {} classes={}", g.group.label(), g.classes())?;
        }
        writeln!(f, "a({})={}", self.v, self.a)?;
        if let (Some(b), Some(d)) = (self.b, self.d) {
            writeln!(f, "b({})={}", self.v, b)?;
            writeln!(f, "d({})={}", self.v, d)?;
        }
        Ok(())
    }
}

fn partitions(r: u32) -> Vec<Vec<u32>> {
    fn rec(left: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=left.min(max)).rev() {
            cur.push(part);
            rec(left - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(r, r, &mut Vec::new(), &mut out);
    out
}

/// One abelian group of order `p^r` per partition of `r`, factors in
/// decreasing order.
pub fn abelian_p_groups(p: u64, r: u32) -> Result<Vec<AbelianGroup>, EnumerationError> {
    partitions(r)
        .into_iter()
        .map(|parts| {
            let f: Vec<u64> = parts.iter().map(|&e| p.pow(e)).collect();
            Ok(AbelianGroup::new(&f)?)
        })
        .collect()
}

/// Every abelian group of order `v` up to isomorphism, factors grouped by
/// increasing prime.
pub fn abelian_groups(v: u64) -> Result<Vec<AbelianGroup>, EnumerationError> {
    check_order(v)?;
    let mut groups = vec![AbelianGroup::trivial()];
    for (p, r) in factorize(v) {
        let parts = abelian_p_groups(p, r)?;
        let mut next = Vec::with_capacity(groups.len() * parts.len());
        for g in &groups {
            for h in &parts {
                next.push(g.product(h)?);
            }
        }
        groups = next;
    }
    Ok(groups)
}

fn check_order(v: u64) -> Result<(), EnumerationError> {
    if v == 0 || v > MAX_GROUP_ORDER {
        return Err(EnumerationError::BoundExceeded {
            what: "order",
            value: v,
            bound: MAX_GROUP_ORDER,
        });
    }
    Ok(())
}

fn classes_of(
    g: &AbelianGroup,
    config: &EnumerationConfig,
    budget: &Budget,
) -> Result<GroupClasses, EnumerationError> {
    let sols = solutions_of_f(g, config)?;
    let reps = conjugacy_classes(&sols, budget)?
        .into_iter()
        .map(|c| c.members.into_iter().next().expect("classes are nonempty"))
        .collect();
    Ok(GroupClasses {
        group: g.clone(),
        representatives: reps,
    })
}

/// `a(v)` with per-group class representatives.
///
/// Each prime-power part is enumerated separately and the parts are combined
/// by direct sums, so the groups of a composite order carry the factors of
/// each prime together.
pub fn count_affine(
    v: u64,
    config: &EnumerationConfig,
) -> Result<EnumerationReport, EnumerationError> {
    check_order(v)?;
    let budget = Budget::new(config.budget);
    let mut combined = vec![GroupClasses {
        group: AbelianGroup::trivial(),
        representatives: vec![GroupAutomorphism::identity(&AbelianGroup::trivial())],
    }];
    for (p, r) in factorize(v) {
        let q = p.pow(r);
        if q > config.prime_power_bound {
            return Err(EnumerationError::BoundExceeded {
                what: "prime-power part",
                value: q,
                bound: config.prime_power_bound,
            });
        }
        let parts: Vec<GroupClasses> = abelian_p_groups(p, r)?
            .iter()
            .map(|g| classes_of(g, config, &budget))
            .collect::<Result<_, _>>()?;
        let mut next = Vec::with_capacity(combined.len() * parts.len());
        for c in &combined {
            for part in &parts {
                let group = c.group.product(&part.group)?;
                let mut reps = Vec::new();
                for a in &c.representatives {
                    for b in &part.representatives {
                        reps.push(a.direct_sum(b)?);
                    }
                }
                reps.sort_unstable();
                next.push(GroupClasses {
                    group,
                    representatives: reps,
                });
            }
        }
        combined = next;
    }
    let a = combined.iter().map(|g| g.classes() as u64).sum();
    Ok(EnumerationReport {
        v,
        per_group: combined,
        a,
        b: None,
        d: None,
    })
}

/// `a(v)` enumerated over each abelian group of order `v` directly, without
/// splitting into prime-power parts.
pub fn count_affine_direct(
    v: u64,
    config: &EnumerationConfig,
) -> Result<EnumerationReport, EnumerationError> {
    let budget = Budget::new(config.budget);
    let per_group: Vec<GroupClasses> = abelian_groups(v)?
        .iter()
        .map(|g| classes_of(g, config, &budget))
        .collect::<Result<_, _>>()?;
    let a = per_group.iter().map(|g| g.classes() as u64).sum();
    Ok(EnumerationReport {
        v,
        per_group,
        a,
        b: None,
        d: None,
    })
}

/// Moves `k` on `g1` to the group with the factor list of `g2`, matching
/// equal cyclic factors in order.
fn transport(k: &GroupAutomorphism, g2: &AbelianGroup) -> Option<GroupAutomorphism> {
    let g1 = k.group();
    if g1.invariant_factors() != g2.invariant_factors() {
        return None;
    }
    let m = g1.rank();
    let mut taken = vec![false; m];
    let sigma: Vec<usize> = g1
        .factors()
        .iter()
        .map(|&d| {
            let j = (0..m)
                .find(|&j| !taken[j] && g2.factors()[j] == d)
                .expect("factor multisets agree");
            taken[j] = true;
            j
        })
        .collect();
    let theta = |x: usize| -> usize {
        let mut c = vec![0u64; m];
        for (i, &j) in sigma.iter().enumerate() {
            c[j] = g1.coordinate(x, i);
        }
        g2.encode(&c)
    };
    let mut images = vec![0usize; g2.order()];
    for x in g1.elements() {
        images[theta(x)] = theta(k.apply(x));
    }
    Some(GroupAutomorphism::from_images(g2, &images).expect("transport of an automorphism"))
}

/// Whether `Aff(G1, k1)` and `Aff(G2, k2)` are isomorphic: the groups agree
/// and the automorphisms are conjugate.
pub fn kepka_nemec_iso(
    k1: &GroupAutomorphism,
    k2: &GroupAutomorphism,
    budget: &Budget,
) -> Result<bool, EnumerationError> {
    match transport(k1, k2.group()) {
        None => Ok(false),
        Some(t) => Ok(find_conjugator(&t, k2, budget)?.is_some()),
    }
}

/// Whether `Aff(G, k)` is isomorphic to its converse `Aff(G, I - k)`.
pub fn is_self_converse(k: &GroupAutomorphism, budget: &Budget) -> Result<bool, EnumerationError> {
    let imk = k.one_minus()?;
    Ok(find_conjugator(k, &imk, budget)?.is_some())
}

/// Isomorphism classes of the non-affine quasigroups `x * y = (x - k(x)) + k(y)`
/// over the nonassociative commutative Moufang loops among `loops`.
///
/// Loops that are groups are skipped, since their quasigroups are affine.
pub fn count_non_affine(
    loops: &[LoopTable],
    v: usize,
    budget: &Budget,
) -> Result<u64, EnumerationError> {
    let mut reps: Vec<CayleyTable> = Vec::new();
    for l in loops.iter().filter(|l| l.order() == v) {
        if l.order() > LOOP_BOUND {
            return Err(EnumerationError::BoundExceeded {
                what: "loop order",
                value: l.order() as u64,
                bound: LOOP_BOUND as u64,
            });
        }
        if !is_commutative_moufang(l) {
            return Err(EnumerationError::Loop(LoopError::NotCML));
        }
        if nucleus(l).len() == l.order() {
            continue;
        }
        for k in mendelsohn_automorphisms(l, usize::MAX) {
            let q = affine_over_loop(l, &k).map_err(EnumerationError::Loop)?;
            let mut new = true;
            for r in &reps {
                if is_isomorphic(r, &q, budget)?.is_some() {
                    new = false;
                    break;
                }
            }
            if new {
                reps.push(q);
            }
        }
    }
    Ok(reps.len() as u64)
}

/// The table of `Aff(G, k)` for each representative, labelled by group.
pub fn representative_tables(
    report: &EnumerationReport,
) -> Result<Vec<(String, CayleyTable)>, EnumerationError> {
    let mut out = Vec::new();
    for g in &report.per_group {
        for (i, k) in g.representatives.iter().enumerate() {
            let t = affine_mendelsohn(k).map_err(|e| match e {
                crate::constructions::ConstructionError::Algebra(a) => EnumerationError::Algebra(a),
                _ => EnumerationError::GroupMismatch,
            })?;
            out.push((alloc::format!("{}_{}", g.group.label(), i), t));
        }
    }
    Ok(out)
}
