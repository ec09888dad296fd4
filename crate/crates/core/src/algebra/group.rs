use alloc::vec::Vec;
use core::ops::Range;

use super::arith::{gcd, lcm, prime_power};
use super::AlgebraError;

/// Largest group order accepted by [`AbelianGroup::new`].
pub const MAX_GROUP_ORDER: u64 = 1 << 16;

/// A finite abelian group `Z_{d_1} x ... x Z_{d_m}` with prime-power `d_i`.
///
/// Elements are indexed `0..order` by mixed-radix counting with the first
/// factor varying fastest; index 0 is the identity. Every table produced from
/// a group uses this indexing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianGroup {
    factors: Vec<u64>,
    strides: Vec<usize>,
    order: usize,
}

impl AbelianGroup {
    /// Builds the product of cyclic groups of the given orders.
    ///
    /// An empty list gives the trivial group. Factors such as 6 must be split
    /// into their prime-power parts by the caller.
    pub fn new(factors: &[u64]) -> Result<Self, AlgebraError> {
        let mut order: u64 = 1;
        let mut strides = Vec::with_capacity(factors.len());
        for &d in factors {
            if d < 2 || prime_power(d).is_none() {
                return Err(AlgebraError::NonPrimePowerFactor(d));
            }
            strides.push(order as usize);
            order = order
                .checked_mul(d)
                .filter(|&o| o <= MAX_GROUP_ORDER)
                .ok_or(AlgebraError::BoundExceeded {
                    order: factors.iter().map(|&d| d as u128).product(),
                    bound: MAX_GROUP_ORDER,
                })?;
        }
        Ok(AbelianGroup {
            factors: factors.to_vec(),
            strides,
            order: order as usize,
        })
    }

    pub fn trivial() -> Self {
        AbelianGroup {
            factors: Vec::new(),
            strides: Vec::new(),
            order: 1,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of cyclic factors.
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn elements(&self) -> Range<usize> {
        0..self.order
    }

    /// Index of the `j`-th canonical generator.
    pub fn generator(&self, j: usize) -> usize {
        self.strides[j]
    }

    /// The prime `p` when the group is a nontrivial `p`-group.
    pub fn prime(&self) -> Option<u64> {
        let mut primes = self.factors.iter().map(|&d| prime_power(d).map(|pe| pe.0));
        let p = primes.next()??;
        primes.all(|q| q == Some(p)).then_some(p)
    }

    /// `Some(p)` when the group is `(Z_p)^m` with `m >= 1`.
    pub fn elementary_prime(&self) -> Option<u64> {
        let p = *self.factors.first()?;
        (self.factors.iter().all(|&d| d == p) && super::arith::is_prime(p)).then_some(p)
    }

    /// `i`-th mixed-radix coordinate of element `x`.
    #[inline]
    pub fn coordinate(&self, x: usize, i: usize) -> u64 {
        ((x / self.strides[i]) as u64) % self.factors[i]
    }

    pub fn decode(&self, x: usize) -> Vec<u64> {
        (0..self.rank()).map(|i| self.coordinate(x, i)).collect()
    }

    /// Index of a coordinate vector; coordinates are reduced modulo `d_i`.
    pub fn encode(&self, v: &[u64]) -> usize {
        debug_assert_eq!(v.len(), self.rank());
        v.iter()
            .zip(&self.factors)
            .zip(&self.strides)
            .map(|((&c, &d), &s)| (c % d) as usize * s)
            .sum()
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter()
            .zip(y)
            .zip(&self.factors)
            .map(|((&a, &b), &d)| (a + b) % d)
            .collect()
    }

    pub fn neg(&self, x: &[u64]) -> Vec<u64> {
        x.iter()
            .zip(&self.factors)
            .map(|(&a, &d)| (d - a % d) % d)
            .collect()
    }

    pub fn smul(&self, c: i64, x: &[u64]) -> Vec<u64> {
        x.iter()
            .zip(&self.factors)
            .map(|(&a, &d)| {
                let c = c.rem_euclid(d as i64) as u64;
                (c * (a % d)) % d
            })
            .collect()
    }

    #[inline]
    pub fn add_idx(&self, x: usize, y: usize) -> usize {
        let (mut x, mut y) = (x, y);
        let mut out = 0;
        for (&d, &s) in self.factors.iter().zip(&self.strides) {
            let d = d as usize;
            out += ((x % d + y % d) % d) * s;
            x /= d;
            y /= d;
        }
        out
    }

    #[inline]
    pub fn neg_idx(&self, x: usize) -> usize {
        let mut x = x;
        let mut out = 0;
        for (&d, &s) in self.factors.iter().zip(&self.strides) {
            let d = d as usize;
            out += ((d - x % d) % d) * s;
            x /= d;
        }
        out
    }

    #[inline]
    pub fn sub_idx(&self, x: usize, y: usize) -> usize {
        self.add_idx(x, self.neg_idx(y))
    }

    pub fn smul_idx(&self, c: i64, x: usize) -> usize {
        let mut x = x;
        let mut out = 0;
        for (&d, &s) in self.factors.iter().zip(&self.strides) {
            let c = c.rem_euclid(d as i64) as usize;
            let d = d as usize;
            out += ((c * (x % d)) % d) * s;
            x /= d;
        }
        out
    }

    /// Additive order of element `x`.
    pub fn element_order(&self, x: usize) -> u64 {
        (0..self.rank())
            .map(|i| {
                let d = self.factors[i];
                d / gcd(self.coordinate(x, i), d)
            })
            .fold(1, lcm)
    }

    /// Least common multiple of the factor orders.
    pub fn exponent(&self) -> u64 {
        self.factors.iter().copied().fold(1, lcm)
    }

    /// The group with the factor list `self.factors ++ other.factors`.
    pub fn product(&self, other: &AbelianGroup) -> Result<AbelianGroup, AlgebraError> {
        let mut f = self.factors.clone();
        f.extend_from_slice(&other.factors);
        AbelianGroup::new(&f)
    }

    /// Factor multiset in sorted order; equal for isomorphic groups.
    pub fn invariant_factors(&self) -> Vec<u64> {
        let mut f = self.factors.clone();
        f.sort_unstable();
        f
    }

    /// `d_1xd_2x...` label, `1` for the trivial group.
    pub fn label(&self) -> alloc::string::String {
        use core::fmt::Write;
        let mut s = alloc::string::String::new();
        if self.factors.is_empty() {
            s.push('1');
        }
        for (i, d) in self.factors.iter().enumerate() {
            if i > 0 {
                s.push('x');
            }
            let _ = write!(s, "{d}");
        }
        s
    }
}
