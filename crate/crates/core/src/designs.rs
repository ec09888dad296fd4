//! Mendelsohn and Steiner triple systems.
//!
//! Oriented blocks are cyclic triples stored rotated so the least point comes
//! first; unordered blocks are stored ascending. Both systems keep their
//! blocks sorted, so equal systems compare equal.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::par::find_first;
use crate::quasigroup::{check_commutative, check_idempotent, check_semisymmetric, CayleyTable};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DesignError {
    /// The order violates the existence condition of the system type.
    BadOrder(usize),
    PointOutOfRange {
        block: usize,
        point: usize,
    },
    RepeatedPoint {
        block: usize,
    },
    /// An ordered (MTS) or unordered (STS) pair lies in two blocks.
    PairCoveredTwice(usize, usize),
    PairNotCovered(usize, usize),
    NotMendelsohnQuasigroup,
    NotSteinerQuasigroup,
}

impl fmt::Display for DesignError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DesignError::BadOrder(v) => write!(f, "no triple system of this type has order {v}"),
            DesignError::PointOutOfRange { block, point } => {
                write!(
                    f,
                    "block {block} uses point {point}, outside the point range"
                )
            }
            DesignError::RepeatedPoint { block } => write!(f, "block {block} repeats a point"),
            DesignError::PairCoveredTwice(a, b) => write!(f, "pair ({a}, {b}) is covered twice"),
            DesignError::PairNotCovered(a, b) => write!(f, "pair ({a}, {b}) is not covered"),
            DesignError::NotMendelsohnQuasigroup => {
                write!(f, "quasigroup is not idempotent and semisymmetric")
            }
            DesignError::NotSteinerQuasigroup => {
                write!(f, "quasigroup is not idempotent and totally symmetric")
            }
        }
    }
}

impl core::error::Error for DesignError {}

/// Whether [`validate_mts`] and [`validate_sts`] reject impossible orders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrderCheck {
    #[default]
    Enforce,
    /// Skip the order condition; pair coverage is still checked.
    Override,
}

/// A Mendelsohn triple system MTS(v).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrientedTripleSystem {
    v: usize,
    blocks: Vec<[usize; 3]>,
}

/// A Steiner triple system STS(v).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnorderedTripleSystem {
    v: usize,
    blocks: Vec<[usize; 3]>,
}

impl OrientedTripleSystem {
    pub fn order(&self) -> usize {
        self.v
    }

    pub fn blocks(&self) -> &[[usize; 3]] {
        &self.blocks
    }

    pub fn contains(&self, block: [usize; 3]) -> bool {
        self.blocks.binary_search(&rotate(block)).is_ok()
    }
}

impl UnorderedTripleSystem {
    pub fn order(&self) -> usize {
        self.v
    }

    pub fn blocks(&self) -> &[[usize; 3]] {
        &self.blocks
    }

    pub fn contains(&self, mut block: [usize; 3]) -> bool {
        block.sort_unstable();
        self.blocks.binary_search(&block).is_ok()
    }
}

/// The cyclic rotation of a triple with its least entry first.
pub fn rotate([a, b, c]: [usize; 3]) -> [usize; 3] {
    if a <= b && a <= c {
        [a, b, c]
    } else if b <= c {
        [b, c, a]
    } else {
        [c, a, b]
    }
}

fn check_points(v: usize, raw: &[[usize; 3]]) -> Result<(), DesignError> {
    for (i, blk) in raw.iter().enumerate() {
        if let Some(&p) = blk.iter().find(|&&p| p >= v) {
            return Err(DesignError::PointOutOfRange { block: i, point: p });
        }
        if blk[0] == blk[1] || blk[1] == blk[2] || blk[0] == blk[2] {
            return Err(DesignError::RepeatedPoint { block: i });
        }
    }
    Ok(())
}

/// Validates cyclic triples as an MTS(v).
///
/// The order must satisfy `v ≡ 0, 1 (mod 3)` and `v ≠ 6` unless `check` is
/// [`OrderCheck::Override`].
pub fn validate_mts(
    v: usize,
    raw: &[[usize; 3]],
    check: OrderCheck,
) -> Result<OrientedTripleSystem, DesignError> {
    if v == 0 || (check == OrderCheck::Enforce && (v % 3 == 2 || v == 6)) {
        return Err(DesignError::BadOrder(v));
    }
    check_points(v, raw)?;
    let mut covered = vec![false; v * v];
    for &[a, b, c] in raw {
        for (x, y) in [(a, b), (b, c), (c, a)] {
            if core::mem::replace(&mut covered[x * v + y], true) {
                return Err(DesignError::PairCoveredTwice(x, y));
            }
        }
    }
    first_uncovered(v, &covered, false)?;
    let mut blocks: Vec<[usize; 3]> = raw.iter().map(|&b| rotate(b)).collect();
    blocks.sort_unstable();
    Ok(OrientedTripleSystem { v, blocks })
}

/// Validates triples as an STS(v); the order must be `1` or `3 (mod 6)`
/// unless `check` is [`OrderCheck::Override`].
pub fn validate_sts(
    v: usize,
    raw: &[[usize; 3]],
    check: OrderCheck,
) -> Result<UnorderedTripleSystem, DesignError> {
    if v == 0 || (check == OrderCheck::Enforce && v % 6 != 1 && v % 6 != 3) {
        return Err(DesignError::BadOrder(v));
    }
    check_points(v, raw)?;
    let mut covered = vec![false; v * v];
    let mut blocks = Vec::with_capacity(raw.len());
    for &blk in raw {
        let mut s = blk;
        s.sort_unstable();
        let [a, b, c] = s;
        for (x, y) in [(a, b), (b, c), (a, c)] {
            if core::mem::replace(&mut covered[x * v + y], true) {
                return Err(DesignError::PairCoveredTwice(x, y));
            }
        }
        blocks.push(s);
    }
    first_uncovered(v, &covered, true)?;
    blocks.sort_unstable();
    Ok(UnorderedTripleSystem { v, blocks })
}

fn first_uncovered(v: usize, covered: &[bool], unordered: bool) -> Result<(), DesignError> {
    for x in 0..v {
        let start = if unordered { x + 1 } else { 0 };
        for y in start..v {
            if x != y && !covered[x * v + y] {
                return Err(DesignError::PairNotCovered(x, y));
            }
        }
    }
    Ok(())
}

/// `x ∘ x = x` and `x ∘ y = z` for every block `⟨x, y, z⟩`.
pub fn mts_to_quasigroup(s: &OrientedTripleSystem) -> CayleyTable {
    let v = s.v;
    let mut cells = vec![0u16; v * v];
    for x in 0..v {
        cells[x * v + x] = x as u16;
    }
    for &[a, b, c] in &s.blocks {
        cells[a * v + b] = c as u16;
        cells[b * v + c] = a as u16;
        cells[c * v + a] = b as u16;
    }
    CayleyTable::new(v, cells).expect("a Mendelsohn triple system gives a quasigroup")
}

/// Blocks `⟨x, y, x ∘ y⟩` of an idempotent semisymmetric quasigroup.
pub fn quasigroup_to_mts(q: &CayleyTable) -> Result<OrientedTripleSystem, DesignError> {
    if !check_idempotent(q).holds() || !check_semisymmetric(q).holds() {
        return Err(DesignError::NotMendelsohnQuasigroup);
    }
    let n = q.order();
    let mut raw = Vec::with_capacity(n * (n - 1) / 3);
    for x in 0..n {
        for y in 0..n {
            let z = q.op(x, y);
            if x < y && x < z {
                raw.push([x, y, z]);
            }
        }
    }
    validate_mts(n, &raw, OrderCheck::Override)
}

/// The Steiner quasigroup: `x ∘ y = z` for every block `{x, y, z}`.
pub fn sts_to_quasigroup(s: &UnorderedTripleSystem) -> CayleyTable {
    mts_to_quasigroup(&doubled(s))
}

/// Blocks `{x, y, x ∘ y}` of an idempotent totally symmetric quasigroup.
pub fn quasigroup_to_sts(q: &CayleyTable) -> Result<UnorderedTripleSystem, DesignError> {
    if !check_idempotent(q).holds()
        || !check_semisymmetric(q).holds()
        || !check_commutative(q).holds()
    {
        return Err(DesignError::NotSteinerQuasigroup);
    }
    let n = q.order();
    let mut raw = Vec::with_capacity(n * (n - 1) / 6);
    for x in 0..n {
        for y in x + 1..n {
            if y < q.op(x, y) {
                raw.push([x, y, q.op(x, y)]);
            }
        }
    }
    validate_sts(n, &raw, OrderCheck::Override)
}

/// Every block of an STS in both cyclic orientations.
pub fn doubled(s: &UnorderedTripleSystem) -> OrientedTripleSystem {
    let mut blocks: Vec<[usize; 3]> = s
        .blocks
        .iter()
        .flat_map(|&[a, b, c]| [[a, b, c], [a, c, b]])
        .collect();
    blocks.sort_unstable();
    OrientedTripleSystem { v: s.v, blocks }
}

/// Some block appears without its reversal.
pub fn is_proper(s: &OrientedTripleSystem) -> bool {
    s.blocks.iter().any(|&[a, b, c]| !s.contains([a, c, b]))
}

/// Five blocks on seven points: `{z,b,x}`, `{z,g,c}`, `{z,a,y}`, `{b,g,a}`,
/// `{x,c,y}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mitre {
    /// The points `x, y, z, a, b, c, g`.
    pub points: [usize; 7],
    /// The five blocks, each sorted ascending.
    pub blocks: [[usize; 3]; 5],
}

/// A mitre of `s`, if any.
///
/// Scans ordered triples `(x, y, z)` of distinct points that are not blocks
/// for a satisfied instance of `(x∘y)∘z = (x∘z)∘(y∘z)` in the Steiner
/// quasigroup; the least such triple determines the mitre.
pub fn find_mitre(s: &UnorderedTripleSystem) -> Option<Mitre> {
    let q = sts_to_quasigroup(s);
    let n = q.order();
    find_first(n, |x| {
        for y in 0..n {
            if y == x {
                continue;
            }
            let c = q.op(x, y);
            for z in 0..n {
                if z == x || z == y || z == c {
                    continue;
                }
                let (b, a) = (q.op(x, z), q.op(y, z));
                let g = q.op(c, z);
                if g == q.op(b, a) {
                    let sorted = |mut t: [usize; 3]| {
                        t.sort_unstable();
                        t
                    };
                    return Some(Mitre {
                        points: [x, y, z, a, b, c, g],
                        blocks: [
                            sorted([z, b, x]),
                            sorted([z, g, c]),
                            sorted([z, a, y]),
                            sorted([b, g, a]),
                            sorted([x, c, y]),
                        ],
                    });
                }
            }
        }
        None
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasigroup::predicate_suite;

    const FANO: [[usize; 3]; 7] = [
        [0, 1, 2],
        [0, 3, 4],
        [0, 5, 6],
        [1, 3, 5],
        [1, 4, 6],
        [2, 3, 6],
        [2, 4, 5],
    ];

    fn ag23() -> UnorderedTripleSystem {
        let mut raw = Vec::new();
        for x in 0..9 {
            for y in x + 1..9 {
                let z = (6 - x % 3 - y % 3) % 3 + 3 * ((6 - x / 3 - y / 3) % 3);
                if y < z {
                    raw.push([x, y, z]);
                }
            }
        }
        validate_sts(9, &raw, OrderCheck::Enforce).unwrap()
    }

    #[test]
    fn small_mts_and_order_checks() {
        let s = validate_mts(3, &[[0, 1, 2], [2, 1, 0]], OrderCheck::Enforce).unwrap();
        assert_eq!(s.blocks(), &[[0, 1, 2], [0, 2, 1]]);
        assert!(!is_proper(&s));
        assert_eq!(
            validate_mts(6, &[], OrderCheck::Enforce),
            Err(DesignError::BadOrder(6))
        );
        assert_eq!(
            validate_mts(6, &[], OrderCheck::Override),
            Err(DesignError::PairNotCovered(0, 1))
        );
        assert_eq!(
            validate_mts(3, &[[0, 1, 2], [1, 2, 0]], OrderCheck::Enforce),
            Err(DesignError::PairCoveredTwice(1, 2))
        );
        assert_eq!(
            validate_mts(3, &[[0, 1, 3]], OrderCheck::Enforce),
            Err(DesignError::PointOutOfRange { block: 0, point: 3 })
        );
    }

    #[test]
    fn fano_and_ag23() {
        let f = validate_sts(7, &FANO, OrderCheck::Enforce).unwrap();
        assert_eq!(f.blocks().len(), 7);
        assert_eq!(ag23().blocks().len(), 12);
        let mut bad = FANO;
        bad[6] = [2, 4, 1];
        assert!(matches!(
            validate_sts(7, &bad, OrderCheck::Enforce),
            Err(DesignError::PairCoveredTwice(..))
        ));
        assert_eq!(
            validate_sts(9, &[], OrderCheck::Enforce).unwrap_err(),
            DesignError::PairNotCovered(0, 1)
        );
        assert_eq!(
            validate_sts(5, &[], OrderCheck::Enforce),
            Err(DesignError::BadOrder(5))
        );
    }

    #[test]
    fn affine_mts7_round_trip() {
        let q = CayleyTable::from_fn(7, |x, y| (5 * x + 3 * y) % 7).unwrap();
        let s = quasigroup_to_mts(&q).unwrap();
        assert_eq!(s.blocks().len(), 14);
        assert!(is_proper(&s));
        assert_eq!(mts_to_quasigroup(&s), q);
        let z5 = CayleyTable::from_fn(5, |x, y| (x + y) % 5).unwrap();
        assert_eq!(
            quasigroup_to_mts(&z5),
            Err(DesignError::NotMendelsohnQuasigroup)
        );
        assert_eq!(
            quasigroup_to_sts(&q),
            Err(DesignError::NotSteinerQuasigroup)
        );
    }

    #[test]
    fn steiner_round_trip_and_commutativity() {
        let f = validate_sts(7, &FANO, OrderCheck::Enforce).unwrap();
        let q = sts_to_quasigroup(&f);
        assert!(predicate_suite(&q).is_steiner());
        assert_eq!(quasigroup_to_sts(&q).unwrap(), f);
        let d = doubled(&f);
        assert!(!is_proper(&d));
        assert_eq!(quasigroup_to_mts(&q).unwrap(), d);
    }

    #[test]
    fn mitres() {
        let f = validate_sts(7, &FANO, OrderCheck::Enforce).unwrap();
        assert_eq!(find_mitre(&f), None);
        let s = ag23();
        let m = find_mitre(&s).unwrap();
        for b in m.blocks {
            assert!(s.contains(b));
        }
        let mut pts = m.points;
        pts.sort_unstable();
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
    }
}
