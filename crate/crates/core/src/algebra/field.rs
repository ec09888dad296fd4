use alloc::vec;
use alloc::vec::Vec;

use super::arith::{checked_pow, factorize, is_prime};
use super::{AbelianGroup, AlgebraError, GroupAutomorphism};

/// Largest field order accepted by [`make_field`].
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// An element of `GF(p^d)`: coefficients of the reduced representative,
/// constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

/// `GF(p^d)` as polynomials over `F_p` modulo a fixed irreducible modulus.
///
/// The modulus is the least monic irreducible polynomial of degree `d` and
/// `omega` the least primitive element, both in lexicographic order comparing
/// the constant coefficient first. Prime fields (`d = 1`) carry no modulus
/// and reduce to arithmetic in `Z_p`.
///
/// An element's index is `sum c_i p^i`, which coincides with the canonical
/// indexing of the additive group `(Z_p)^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u64,
    degree: u32,
    order: u64,
    modulus: Option<Vec<u64>>,
    omega: FieldElement,
}

/// Builds `GF(p^d)` with deterministic modulus and primitive element.
pub fn make_field(p: u64, d: u32) -> Result<FieldSpec, AlgebraError> {
    if !is_prime(p) {
        return Err(AlgebraError::NotPrime(p));
    }
    if d == 0 {
        return Err(AlgebraError::ZeroDegree);
    }
    let order =
        checked_pow(p, d)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or(AlgebraError::BoundExceeded {
                order: (p as u128).saturating_pow(d),
                bound: MAX_FIELD_ORDER,
            })?;
    let modulus = (d > 1).then(|| least_irreducible(p, d as usize));
    let mut field = FieldSpec {
        p,
        degree: d,
        order,
        modulus,
        omega: FieldElement {
            coeffs: vec![0; d as usize],
        },
    };
    field.omega = field.least_primitive();
    Ok(field)
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Coefficients of the monic modulus, constant term first; `None` for
    /// prime fields.
    pub fn modulus(&self) -> Option<&[u64]> {
        self.modulus.as_deref()
    }

    /// The chosen generator of the multiplicative group.
    pub fn omega(&self) -> &FieldElement {
        &self.omega
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.degree as usize],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// The image of an integer under `Z -> F_p ⊂ GF(p^d)`.
    pub fn from_int(&self, c: i64) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = c.rem_euclid(self.p as i64) as u64;
        e
    }

    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement, AlgebraError> {
        if coeffs.len() != self.degree as usize {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.degree as usize,
                found: coeffs.len(),
            });
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.p) {
            return Err(AlgebraError::BadCoefficient(c));
        }
        Ok(FieldElement {
            coeffs: coeffs.to_vec(),
        })
    }

    pub fn from_index(&self, mut index: u64) -> FieldElement {
        let coeffs = (0..self.degree)
            .map(|_| {
                let c = index % self.p;
                index /= self.p;
                c
            })
            .collect();
        FieldElement { coeffs }
    }

    pub fn index(&self, e: &FieldElement) -> u64 {
        e.coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(move |i| self.from_index(i))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p;
        let d = self.degree as usize;
        let mut prod = vec![0u64; 2 * d - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        if let Some(m) = &self.modulus {
            poly_rem_monic(&mut prod, m, p);
        }
        prod.truncate(d);
        FieldElement { coeffs: prod }
    }

    pub fn pow(&self, a: &FieldElement, mut exp: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        if self.is_zero(a) {
            return None;
        }
        Some(self.pow(a, self.order - 2))
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    /// Whether `a` generates the multiplicative group.
    pub fn is_primitive(&self, a: &FieldElement) -> bool {
        if self.is_zero(a) {
            return false;
        }
        let n = self.order - 1;
        let one = self.one();
        self.pow(a, n) == one && factorize(n).iter().all(|&(q, _)| self.pow(a, n / q) != one)
    }

    /// The additive group `(Z_p)^d`, indexed compatibly with [`Self::index`].
    pub fn additive_group(&self) -> AbelianGroup {
        let factors = vec![self.p; self.degree as usize];
        AbelianGroup::new(&factors).expect("field order is within the group bound")
    }

    /// Multiplication by a nonzero `c` as an automorphism of the additive group.
    pub fn multiplication_map(&self, c: &FieldElement) -> Result<GroupAutomorphism, AlgebraError> {
        let group = self.additive_group();
        let d = self.degree as usize;
        let mut rows = vec![vec![0i64; d]; d];
        let mut basis = self.one();
        let x = self.from_index(if d > 1 { self.p } else { 1 });
        for j in 0..d {
            let col = self.mul(c, &basis);
            for (i, row) in rows.iter_mut().enumerate() {
                row[j] = col.coeffs[i] as i64;
            }
            basis = self.mul(&basis, &x);
        }
        GroupAutomorphism::new(&group, &rows)
    }

    /// Nonzero elements in lexicographic order, constant coefficient first.
    fn lex_nonzero(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let d = self.degree as usize;
        (1..self.order).map(move |i| {
            // Reading `i` with the constant coefficient as most significant digit.
            let mut coeffs = vec![0u64; d];
            let mut r = i;
            for k in (0..d).rev() {
                coeffs[k] = r % self.p;
                r /= self.p;
            }
            FieldElement { coeffs }
        })
    }

    fn least_primitive(&self) -> FieldElement {
        self.lex_nonzero()
            .find(|a| self.is_primitive(a))
            .expect("finite fields have primitive elements")
    }
}

/// Reduces `a` in place modulo the monic polynomial `m` over `F_p`.
fn poly_rem_monic(a: &mut [u64], m: &[u64], p: u64) {
    let d = m.len() - 1;
    for k in (d..a.len()).rev() {
        let c = a[k];
        if c == 0 {
            continue;
        }
        for i in 0..=d {
            let t = (c * m[i]) % p;
            a[k - d + i] = (a[k - d + i] + p - t) % p;
        }
    }
}

/// Whether the monic polynomial `f` has a monic factor of degree `1..=deg/2`.
fn has_small_factor(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    for k in 1..=d / 2 {
        let count = p.pow(k as u32);
        for i in 0..count {
            let mut g = vec![0u64; k + 1];
            let mut r = i;
            for c in g.iter_mut().take(k) {
                *c = r % p;
                r /= p;
            }
            g[k] = 1;
            let mut rem = f.to_vec();
            poly_rem_monic(&mut rem, &g, p);
            if rem[..k].iter().all(|&c| c == 0) {
                return true;
            }
        }
    }
    false
}

/// Least monic irreducible of degree `d >= 2`, constant coefficient compared first.
fn least_irreducible(p: u64, d: usize) -> Vec<u64> {
    let count = p.pow(d as u32);
    for i in 0..count {
        let mut f = vec![0u64; d + 1];
        let mut r = i;
        for k in (0..d).rev() {
            f[k] = r % p;
            r /= p;
        }
        f[d] = 1;
        if f[0] != 0 && !has_small_factor(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
