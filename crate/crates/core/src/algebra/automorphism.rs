use alloc::vec;
use alloc::vec::Vec;

use super::{AbelianGroup, AlgebraError};

/// A validated automorphism of an [`AbelianGroup`].
///
/// Column `j` of the matrix is the image of the `j`-th canonical generator,
/// entry `(i, j)` reduced modulo `d_i`. The full permutation of element
/// indices is cached alongside.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupAutomorphism {
    group: AbelianGroup,
    matrix: Vec<u64>,
    images: Vec<u32>,
}

impl GroupAutomorphism {
    /// Validates an integer matrix (rows of length `rank`) as an automorphism.
    ///
    /// The homomorphism condition is `d_i | A[i][j] * d_j` for every entry;
    /// bijectivity is checked on all elements.
    pub fn new(group: &AbelianGroup, rows: &[Vec<i64>]) -> Result<Self, AlgebraError> {
        let m = group.rank();
        if rows.len() != m {
            return Err(AlgebraError::DimensionMismatch {
                expected: m,
                found: rows.len(),
            });
        }
        let mut matrix = Vec::with_capacity(m * m);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(AlgebraError::DimensionMismatch {
                    expected: m,
                    found: row.len(),
                });
            }
            let di = group.factors()[i];
            for (j, &a) in row.iter().enumerate() {
                let a = a.rem_euclid(di as i64) as u64;
                let dj = group.factors()[j];
                if !(a as u128 * dj as u128).is_multiple_of(di as u128) {
                    return Err(AlgebraError::NotHomomorphism { row: i, col: j });
                }
                matrix.push(a);
            }
        }
        Self::from_matrix(group, matrix)
    }

    fn from_matrix(group: &AbelianGroup, matrix: Vec<u64>) -> Result<Self, AlgebraError> {
        let images = linear_images(group, &matrix);
        let mut seen = vec![false; group.order()];
        for &y in &images {
            if core::mem::replace(&mut seen[y as usize], true) {
                return Err(AlgebraError::NotBijective);
            }
        }
        Ok(GroupAutomorphism {
            group: group.clone(),
            matrix,
            images,
        })
    }

    /// Validates a permutation of element indices as an automorphism.
    pub fn from_images(group: &AbelianGroup, images: &[usize]) -> Result<Self, AlgebraError> {
        if images.len() != group.order() {
            return Err(AlgebraError::DimensionMismatch {
                expected: group.order(),
                found: images.len(),
            });
        }
        let m = group.rank();
        let mut matrix = vec![0u64; m * m];
        for j in 0..m {
            let col = images[group.generator(j)];
            if col >= group.order() {
                return Err(AlgebraError::NotBijective);
            }
            for i in 0..m {
                let a = group.coordinate(col, i);
                let (di, dj) = (group.factors()[i], group.factors()[j]);
                if !(a * dj).is_multiple_of(di) {
                    return Err(AlgebraError::NotHomomorphism { row: i, col: j });
                }
                matrix[i * m + j] = a;
            }
        }
        let aut = Self::from_matrix(group, matrix)?;
        if aut
            .images
            .iter()
            .zip(images)
            .any(|(&a, &b)| a as usize != b)
        {
            return Err(AlgebraError::NotBijective);
        }
        Ok(aut)
    }

    /// Skips validation; `images` must already be an automorphism.
    pub(crate) fn from_images_unchecked(group: &AbelianGroup, images: &[usize]) -> Self {
        let m = group.rank();
        let mut matrix = vec![0u64; m * m];
        for j in 0..m {
            let col = images[group.generator(j)];
            for i in 0..m {
                matrix[i * m + j] = group.coordinate(col, i);
            }
        }
        GroupAutomorphism {
            group: group.clone(),
            matrix,
            images: images.iter().map(|&y| y as u32).collect(),
        }
    }

    pub fn identity(group: &AbelianGroup) -> Self {
        Self::scalar(group, 1).expect("identity is an automorphism")
    }

    /// Multiplication by the integer `c` on every coordinate.
    pub fn scalar(group: &AbelianGroup, c: i64) -> Result<Self, AlgebraError> {
        let m = group.rank();
        let rows: Vec<Vec<i64>> = (0..m)
            .map(|i| (0..m).map(|j| if i == j { c } else { 0 }).collect())
            .collect();
        Self::new(group, &rows)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// Entry `(i, j)`, reduced modulo `d_i`.
    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.matrix[i * self.group.rank() + j]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        let m = self.group.rank();
        (0..m)
            .map(|i| self.matrix[i * m..(i + 1) * m].to_vec())
            .collect()
    }

    /// Row-major matrix entries.
    pub fn matrix(&self) -> &[u64] {
        &self.matrix
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn apply_vec(&self, x: &[u64]) -> Vec<u64> {
        self.group.decode(self.apply(self.group.encode(x)))
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GroupAutomorphism) -> Result<Self, AlgebraError> {
        if self.group != other.group {
            return Err(AlgebraError::GroupMismatch);
        }
        let images: Vec<usize> = self
            .group
            .elements()
            .map(|x| self.apply(other.apply(x)))
            .collect();
        Self::from_images(&self.group, &images)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0usize; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y as usize] = x;
        }
        Self::from_images(&self.group, &inv).expect("inverse of an automorphism")
    }

    /// The pointwise map `x - k(x)`, if it is an automorphism.
    pub fn one_minus(&self) -> Result<Self, AlgebraError> {
        let g = &self.group;
        let images: Vec<usize> = g.elements().map(|x| g.sub_idx(x, self.apply(x))).collect();
        Self::from_images(g, &images)
    }

    /// Whether `k^2 - k + I = 0` holds on every element.
    pub fn satisfies_f(&self) -> bool {
        let g = &self.group;
        g.elements().all(|x| {
            let kx = self.apply(x);
            let kkx = self.apply(kx);
            g.add_idx(g.sub_idx(kkx, kx), x) == 0
        })
    }

    /// `psi ∘ self ∘ psi^{-1}`.
    pub fn conjugate_by(&self, psi: &GroupAutomorphism) -> Result<Self, AlgebraError> {
        if self.group != psi.group {
            return Err(AlgebraError::GroupMismatch);
        }
        let mut images = vec![0usize; self.images.len()];
        for x in self.group.elements() {
            images[psi.apply(x)] = psi.apply(self.apply(x));
        }
        Self::from_images(&self.group, &images)
    }

    /// Block-diagonal automorphism of `self.group × other.group`.
    pub fn direct_sum(&self, other: &GroupAutomorphism) -> Result<Self, AlgebraError> {
        let group = self.group.product(&other.group)?;
        let (m1, m2) = (self.group.rank(), other.group.rank());
        let m = m1 + m2;
        let mut rows = vec![vec![0i64; m]; m];
        for i in 0..m1 {
            for j in 0..m1 {
                rows[i][j] = self.entry(i, j) as i64;
            }
        }
        for i in 0..m2 {
            for j in 0..m2 {
                rows[m1 + i][m1 + j] = other.entry(i, j) as i64;
            }
        }
        Self::new(&group, &rows)
    }
}

/// Images of every element under the linear map with the given matrix.
fn linear_images(group: &AbelianGroup, matrix: &[u64]) -> Vec<u32> {
    let m = group.rank();
    let f = group.factors();
    group
        .elements()
        .map(|x| {
            let xs = group.decode(x);
            let ys: Vec<u64> = (0..m)
                .map(|i| {
                    let di = f[i] as u128;
                    let s: u128 = (0..m)
                        .map(|j| matrix[i * m + j] as u128 * xs[j] as u128)
                        .sum();
                    (s % di) as u64
                })
                .collect();
            group.encode(&ys) as u32
        })
        .collect()
}
