//! Explicit families of Mendelsohn and Steiner systems.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{factorize, make_field, AbelianGroup, AlgebraError};
use crate::algebra::{FieldSpec, GroupAutomorphism};
use crate::designs::{validate_mts, validate_sts, DesignError, OrderCheck};
use crate::designs::{OrientedTripleSystem, UnorderedTripleSystem};
use crate::quasigroup::{direct_product, CayleyTable, QuasigroupError, MAX_ORDER};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    /// `k^2 - k + I` does not vanish.
    ConditionMViolated,
    /// `I - k` is not an automorphism.
    NotAutomorphism,
    OrderNotOneModSix(u64),
    OrderNotSevenModTwelve(u64),
    /// `v` has a prime `q ≡ 2 (mod 3)` to an odd power.
    NotInSpectrum {
        v: u64,
        prime: u64,
        exponent: u32,
    },
    InvalidParameter(&'static str),
    /// The input blocks do not form a Steiner triple system.
    InvalidSTS(DesignError),
    /// An arithmetic identity of the construction failed.
    ConsistencyFailure(&'static str),
    Algebra(AlgebraError),
    Table(QuasigroupError),
    Design(DesignError),
}

impl fmt::Display for ConstructionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionError::ConditionMViolated => write!(f, "k^2 - k + I is not zero"),
            ConstructionError::NotAutomorphism => write!(f, "I - k is not an automorphism"),
            ConstructionError::OrderNotOneModSix(q) => write!(f, "{q} is not 1 mod 6"),
            ConstructionError::OrderNotSevenModTwelve(q) => write!(f, "{q} is not 7 mod 12"),
            ConstructionError::NotInSpectrum { v, prime, exponent } => write!(
                f,
                "{v} is not in the spectrum: {prime}^{exponent} with {prime} = 2 mod 3 and odd exponent"
            ),
            ConstructionError::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            ConstructionError::InvalidSTS(e) => write!(f, "input is not a Steiner triple system: {e}"),
            ConstructionError::ConsistencyFailure(what) => {
                write!(f, "internal consistency check failed: {what}")
            }
            ConstructionError::Algebra(e) => write!(f, "{e}"),
            ConstructionError::Table(e) => write!(f, "{e}"),
            ConstructionError::Design(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ConstructionError {}

impl From<AlgebraError> for ConstructionError {
    fn from(e: AlgebraError) -> Self {
        ConstructionError::Algebra(e)
    }
}

impl From<QuasigroupError> for ConstructionError {
    fn from(e: QuasigroupError) -> Self {
        ConstructionError::Table(e)
    }
}

/// `Aff(G, k)`: the table `x * y = (I - k)(x) + k(y)` on the element indices
/// of `G`, for `k` with `k^2 - k + I = 0`.
pub fn affine_mendelsohn(k: &GroupAutomorphism) -> Result<CayleyTable, ConstructionError> {
    if !k.satisfies_f() {
        return Err(ConstructionError::ConditionMViolated);
    }
    let imk = k
        .one_minus()
        .map_err(|_| ConstructionError::NotAutomorphism)?;
    let g = k.group();
    if g.order() > MAX_ORDER {
        return Err(QuasigroupError::OrderTooLarge(g.order()).into());
    }
    Ok(CayleyTable::from_fn(g.order(), |x, y| {
        g.add_idx(imk.apply(x), k.apply(y))
    })?)
}

/// Multiplication by `omega^s` on `GF(p^d)`, where `p^d - 1 = 6s`.
pub fn field_root(p: u64, d: u32) -> Result<(FieldSpec, GroupAutomorphism), ConstructionError> {
    let field = make_field(p, d)?;
    let q = field.order();
    if q % 6 != 1 {
        return Err(ConstructionError::OrderNotOneModSix(q));
    }
    let k = field.pow(field.omega(), (q - 1) / 6);
    let map = field.multiplication_map(&k)?;
    Ok((field, map))
}

/// The affine Mendelsohn quasigroup of `GF(p^d)` with a primitive sixth root
/// of unity.
pub fn field_mendelsohn(p: u64, d: u32) -> Result<CayleyTable, ConstructionError> {
    let (_, k) = field_root(p, d)?;
    affine_mendelsohn(&k)
}

/// The affine Mendelsohn quasigroup of `GF(2^{2d})` with a primitive cube
/// root of unity.
pub fn char2_mendelsohn(d: u32) -> Result<CayleyTable, ConstructionError> {
    if d == 0 {
        return Err(ConstructionError::InvalidParameter("d must be at least 1"));
    }
    let field = make_field(2, 2 * d)?;
    let q = field.order();
    let k = field.pow(field.omega(), (q - 1) / 3);
    affine_mendelsohn(&field.multiplication_map(&k)?)
}

/// `Aff((Z_3)^d, -I)`, the Steiner quasigroup of `AG(d, 3)`.
pub fn steiner_affine(d: u32) -> Result<CayleyTable, ConstructionError> {
    if d == 0 {
        return Err(ConstructionError::InvalidParameter("d must be at least 1"));
    }
    let g = AbelianGroup::new(&vec![3; d as usize])?;
    affine_mendelsohn(&GroupAutomorphism::scalar(&g, -1)?)
}

/// The first prime power `q^e` of `v` with `q ≡ 2 (mod 3)` and `e` odd.
pub fn spectrum_offender(v: u64) -> Option<(u64, u32)> {
    factorize(v)
        .into_iter()
        .find(|&(q, e)| q % 3 == 2 && e % 2 == 1)
}

/// Whether an affine Mendelsohn quasigroup of order `v` exists.
pub fn spectrum_member(v: u64) -> bool {
    v >= 1 && spectrum_offender(v).is_none()
}

/// A medial Mendelsohn quasigroup of order `v`, as a direct product with one
/// factor per prime power of `v`, in increasing order of the prime.
pub fn spectrum_construct(v: u64) -> Result<CayleyTable, ConstructionError> {
    if v == 0 {
        return Err(ConstructionError::InvalidParameter("v must be at least 1"));
    }
    if let Some((prime, exponent)) = spectrum_offender(v) {
        return Err(ConstructionError::NotInSpectrum { v, prime, exponent });
    }
    if v > MAX_ORDER as u64 {
        return Err(QuasigroupError::OrderTooLarge(v as usize).into());
    }
    let mut table = CayleyTable::trivial();
    for (q, e) in factorize(v) {
        let factor = match q {
            3 => steiner_affine(e)?,
            2 => char2_mendelsohn(e / 2)?,
            _ => field_mendelsohn(q, e)?,
        };
        table = if table.order() == 1 {
            factor
        } else {
            direct_product(&table, &factor)?
        };
    }
    Ok(table)
}

/// `PG(n-1, 2)`: the nonzero vectors of `F_2^n`, vector `x` as point `x - 1`,
/// with blocks `{x, y, x + y}`.
pub fn projective_sts(n: u32) -> Result<UnorderedTripleSystem, ConstructionError> {
    if n < 2 {
        return Err(ConstructionError::InvalidParameter("n must be at least 2"));
    }
    if n > 12 {
        return Err(QuasigroupError::OrderTooLarge((1usize << n.min(40)) - 1).into());
    }
    let v = (1usize << n) - 1;
    let mut raw = Vec::with_capacity(v * (v - 1) / 6);
    for x in 1..=v {
        for y in x + 1..=v {
            let z = x ^ y;
            if y < z {
                raw.push([x - 1, y - 1, z - 1]);
            }
        }
    }
    validate_sts(v, &raw, OrderCheck::Enforce).map_err(ConstructionError::Design)
}

/// The Netto system on `GF(p^d)`, `p^d ≡ 7 (mod 12)`.
///
/// With `p^d - 1 = 12s + 6`, `e1 = omega^{2s+1}` and `e2 = omega^{10s+5}`,
/// and `x < y` when `y - x` is a nonzero square, the block through `{a, b}`
/// with `a < b` is `{a, b, a e1 + b e2}`. Points are field element indices.
pub fn netto_sts(p: u64, d: u32) -> Result<UnorderedTripleSystem, ConstructionError> {
    let f = make_field(p, d)?;
    let q = f.order();
    if q % 12 != 7 {
        return Err(ConstructionError::OrderNotSevenModTwelve(q));
    }
    let s = (q - 7) / 12;
    let e1 = f.pow(f.omega(), 2 * s + 1);
    let e2 = f.pow(f.omega(), 10 * s + 5);
    if f.mul(&e1, &e2) != f.one() || f.add(&e1, &e2) != f.one() {
        return Err(ConstructionError::ConsistencyFailure(
            "e1 e2 = e1 + e2 = 1 does not hold",
        ));
    }
    let n = q as usize;
    let mut square = vec![false; n];
    let w2 = f.mul(f.omega(), f.omega());
    let mut t = f.one();
    for _ in 0..(q - 1) / 2 {
        square[f.index(&t) as usize] = true;
        t = f.mul(&t, &w2);
    }
    let elems: Vec<_> = (0..q).map(|i| f.from_index(i)).collect();
    let mut raw = Vec::with_capacity(n * (n - 1) / 2);
    for x in 0..n {
        for y in x + 1..n {
            let up = square[f.index(&f.sub(&elems[y], &elems[x])) as usize];
            let down = square[f.index(&f.sub(&elems[x], &elems[y])) as usize];
            if up == down {
                return Err(ConstructionError::ConsistencyFailure(
                    "order relation is not a tournament",
                ));
            }
            let (a, b) = if up { (x, y) } else { (y, x) };
            let c = f.add(&f.mul(&elems[a], &e1), &f.mul(&elems[b], &e2));
            let mut blk = [x, y, f.index(&c) as usize];
            blk.sort_unstable();
            raw.push(blk);
        }
    }
    raw.sort_unstable();
    raw.dedup();
    validate_sts(n, &raw, OrderCheck::Enforce)
        .map_err(|_| ConstructionError::ConsistencyFailure("Netto blocks do not form an STS"))
}

/// The doubling of an STS(u) to a proper MTS(2u + 1), orienting each block
/// `{a, b, c}` with `a < b < c` as `⟨a, b, c⟩`.
pub fn anti_double(c: &UnorderedTripleSystem) -> Result<OrientedTripleSystem, ConstructionError> {
    anti_double_oriented(c.order(), c.blocks())
}

/// The doubling with a chosen cyclic orientation of each STS block.
///
/// Point `a_j` is labelled `2a + j` and the extra point is `2u`.
pub fn anti_double_oriented(
    u: usize,
    oriented: &[[usize; 3]],
) -> Result<OrientedTripleSystem, ConstructionError> {
    validate_sts(u, oriented, OrderCheck::Enforce).map_err(ConstructionError::InvalidSTS)?;
    let v = 2 * u + 1;
    if v > MAX_ORDER {
        return Err(QuasigroupError::OrderTooLarge(v).into());
    }
    let inf = 2 * u;
    let mut raw = Vec::with_capacity(v * (v - 1) / 3);
    for &[a, b, c] in oriented {
        let (a0, a1, b0, b1, c0, c1) = (2 * a, 2 * a + 1, 2 * b, 2 * b + 1, 2 * c, 2 * c + 1);
        raw.extend_from_slice(&[
            [a0, b0, c0],
            [a1, b1, c0],
            [a1, b0, c1],
            [a0, b1, c1],
            [a0, c0, b1],
            [a0, c1, b0],
            [a1, c0, b0],
            [a1, c1, b1],
        ]);
    }
    for x in 0..u {
        raw.push([inf, 2 * x, 2 * x + 1]);
        raw.push([inf, 2 * x + 1, 2 * x]);
    }
    validate_mts(v, &raw, OrderCheck::Enforce).map_err(ConstructionError::Design)
}
