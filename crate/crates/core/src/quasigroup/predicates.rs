//! Exhaustive identity checks.
//!
//! Every check scans its variables in lexicographic order and reports the
//! least counterexample, with or without the `parallel` feature.

use alloc::vec;

use super::{CayleyTable, QuasigroupError};
use crate::par::find_first;

/// Outcome of checking one identity: holds everywhere, or a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Law<W> {
    Holds,
    Violated(W),
}

impl<W> Law<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Law::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Law::Holds => None,
            Law::Violated(w) => Some(w),
        }
    }

    fn from_witness(w: Option<W>) -> Self {
        w.map_or(Law::Holds, Law::Violated)
    }
}

/// All identity predicates of a quasigroup, with witnesses for failures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    /// `x ∘ x = x`; witness `x`.
    pub idempotent: Law<usize>,
    /// `x ∘ y = y ∘ x`; witness `[x, y]`.
    pub commutative: Law<[usize; 2]>,
    /// `x ∘ (y ∘ x) = y`; witness `[x, y]`.
    pub semisymmetric: Law<[usize; 2]>,
    /// `(x∘y)∘(u∘v) = (x∘u)∘(y∘v)`; witness `[x, y, u, v]`.
    pub medial: Law<[usize; 4]>,
    /// `x∘(y∘z) = (x∘y)∘(x∘z)`; witness `[x, y, z]`.
    pub left_distributive: Law<[usize; 3]>,
    /// `(x∘y)∘z = (x∘z)∘(y∘z)`; witness `[x, y, z]`.
    pub right_distributive: Law<[usize; 3]>,
    /// `L_x R_x = I` and `L_x = R_x` computed on translation maps agree with
    /// the elementwise semisymmetric and commutative checks.
    pub translations_agree: bool,
}

impl PropertyReport {
    pub fn is_idempotent(&self) -> bool {
        self.idempotent.holds()
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative.holds()
    }

    pub fn is_semisymmetric(&self) -> bool {
        self.semisymmetric.holds()
    }

    pub fn is_totally_symmetric(&self) -> bool {
        self.commutative.holds() && self.semisymmetric.holds()
    }

    pub fn is_medial(&self) -> bool {
        self.medial.holds()
    }

    pub fn is_left_distributive(&self) -> bool {
        self.left_distributive.holds()
    }

    pub fn is_right_distributive(&self) -> bool {
        self.right_distributive.holds()
    }

    pub fn is_distributive(&self) -> bool {
        self.is_left_distributive() && self.is_right_distributive()
    }

    /// Idempotent and semisymmetric.
    pub fn is_mendelsohn(&self) -> bool {
        self.is_idempotent() && self.is_semisymmetric()
    }

    /// Idempotent and totally symmetric.
    pub fn is_steiner(&self) -> bool {
        self.is_idempotent() && self.is_totally_symmetric()
    }
}

pub fn predicate_suite(q: &CayleyTable) -> PropertyReport {
    let semisymmetric = check_semisymmetric(q);
    let commutative = check_commutative(q);
    let translations_agree = semisymmetric_by_translations(q) == semisymmetric.holds()
        && commutative_by_translations(q) == commutative.holds();
    PropertyReport {
        idempotent: check_idempotent(q),
        commutative,
        semisymmetric,
        medial: check_medial(q),
        left_distributive: check_left_distributive(q),
        right_distributive: check_right_distributive(q),
        translations_agree,
    }
}

pub fn check_idempotent(q: &CayleyTable) -> Law<usize> {
    Law::from_witness((0..q.order()).find(|&x| q.op(x, x) != x))
}

pub fn check_commutative(q: &CayleyTable) -> Law<[usize; 2]> {
    let n = q.order();
    Law::from_witness(find_first(n, |x| {
        (0..n).find(|&y| q.op(x, y) != q.op(y, x)).map(|y| [x, y])
    }))
}

pub fn check_semisymmetric(q: &CayleyTable) -> Law<[usize; 2]> {
    let n = q.order();
    Law::from_witness(find_first(n, |x| {
        (0..n).find(|&y| q.op(x, q.op(y, x)) != y).map(|y| [x, y])
    }))
}

pub fn check_medial(q: &CayleyTable) -> Law<[usize; 4]> {
    let n = q.order();
    Law::from_witness(find_first(n, |x| {
        for y in 0..n {
            let xy = q.op(x, y);
            for u in 0..n {
                let xu = q.op(x, u);
                let row_xy = q.row(xy);
                let row_xu = q.row(xu);
                for v in 0..n {
                    let lhs = row_xy[q.op(u, v)];
                    let rhs = row_xu[q.op(y, v)];
                    if lhs != rhs {
                        return Some([x, y, u, v]);
                    }
                }
            }
        }
        None
    }))
}

pub fn check_left_distributive(q: &CayleyTable) -> Law<[usize; 3]> {
    let n = q.order();
    Law::from_witness(find_first(n, |x| {
        for y in 0..n {
            for z in 0..n {
                if left_holds(q, x, y, z) {
                    continue;
                }
                return Some([x, y, z]);
            }
        }
        None
    }))
}

pub fn check_right_distributive(q: &CayleyTable) -> Law<[usize; 3]> {
    let n = q.order();
    Law::from_witness(find_first(n, |x| {
        for y in 0..n {
            for z in 0..n {
                if right_holds(q, x, y, z) {
                    continue;
                }
                return Some([x, y, z]);
            }
        }
        None
    }))
}

#[inline]
fn left_holds(q: &CayleyTable, x: usize, y: usize, z: usize) -> bool {
    q.op(x, q.op(y, z)) == q.op(q.op(x, y), q.op(x, z))
}

#[inline]
fn right_holds(q: &CayleyTable, x: usize, y: usize, z: usize) -> bool {
    q.op(q.op(x, y), z) == q.op(q.op(x, z), q.op(y, z))
}

/// `L_x ∘ R_x` is the identity permutation for every `x`.
pub fn semisymmetric_by_translations(q: &CayleyTable) -> bool {
    let n = q.order();
    let mut right = vec![0usize; n];
    (0..n).all(|x| {
        for (y, r) in right.iter_mut().enumerate() {
            *r = q.op(y, x);
        }
        let left = q.row(x);
        right
            .iter()
            .enumerate()
            .all(|(y, &r)| left[r] as usize == y)
    })
}

/// `L_x = R_x` for every `x`.
pub fn commutative_by_translations(q: &CayleyTable) -> bool {
    let n = q.order();
    (0..n).all(|x| {
        q.row(x)
            .iter()
            .enumerate()
            .all(|(y, &v)| q.op(y, x) == v as usize)
    })
}

/// Which distributive law a triple satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistributiveLaw {
    Left,
    Right,
}

/// How [`is_antidistributive`] treats the left law.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AntiDistributiveMode {
    /// Check both laws on every eligible triple.
    Strict,
    /// Check only right distributivity. Once every eligible triple violates
    /// it, left distributivity fails on all of them as well for Mendelsohn
    /// quasigroups, so the left scan is skipped.
    #[default]
    RightThenTransfer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AntiDistributivity {
    /// Every ordered triple of distinct points that is not a block violates
    /// both distributive laws.
    Anti,
    /// The least eligible triple satisfying `law`.
    Witness {
        triple: [usize; 3],
        law: DistributiveLaw,
    },
}

impl AntiDistributivity {
    pub fn is_anti(&self) -> bool {
        matches!(self, AntiDistributivity::Anti)
    }
}

/// Anti-distributivity of a Mendelsohn quasigroup.
///
/// Triples with a repeated point, and triples `(x, y, x∘y)` that form a
/// block, always satisfy both laws and are skipped.
pub fn is_antidistributive(
    q: &CayleyTable,
    mode: AntiDistributiveMode,
) -> Result<AntiDistributivity, QuasigroupError> {
    if !check_idempotent(q).holds() || !check_semisymmetric(q).holds() {
        return Err(QuasigroupError::NotMendelsohn);
    }
    let n = q.order();
    let witness = find_first(n, |x| {
        for y in 0..n {
            if y == x {
                continue;
            }
            let xy = q.op(x, y);
            for z in 0..n {
                if z == x || z == y || z == xy {
                    continue;
                }
                if right_holds(q, x, y, z) {
                    return Some(([x, y, z], DistributiveLaw::Right));
                }
                if mode == AntiDistributiveMode::Strict && left_holds(q, x, y, z) {
                    return Some(([x, y, z], DistributiveLaw::Left));
                }
            }
        }
        None
    });
    Ok(match witness {
        None => AntiDistributivity::Anti,
        Some((triple, law)) => AntiDistributivity::Witness { triple, law },
    })
}
