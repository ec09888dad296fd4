//! Finite quasigroups given by their Cayley tables.

mod iso;
mod ops;
mod predicates;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub use iso::is_isomorphic;
pub use ops::{belousov_distributive, converse, direct_product, generated_sub};
pub use predicates::{
    check_commutative, check_idempotent, check_left_distributive, check_medial,
    check_right_distributive, check_semisymmetric, commutative_by_translations,
    is_antidistributive, predicate_suite, semisymmetric_by_translations, AntiDistributiveMode,
    AntiDistributivity, DistributiveLaw, Law, PropertyReport,
};

/// Largest supported quasigroup order.
pub const MAX_ORDER: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuasigroupError {
    EmptyTable,
    OrderTooLarge(usize),
    /// Cell vector length is not `n * n`.
    WrongCellCount {
        expected: usize,
        found: usize,
    },
    ValueOutOfRange {
        row: usize,
        col: usize,
        value: usize,
    },
    /// A row (left translation) repeats a value.
    RowNotPermutation(usize),
    /// A column (right translation) repeats a value.
    ColumnNotPermutation(usize),
    /// The operation requires an idempotent semisymmetric table.
    NotMendelsohn,
    SearchBudgetExceeded,
    ElementOutOfRange(usize),
}

impl fmt::Display for QuasigroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuasigroupError::EmptyTable => write!(f, "quasigroup must have at least one element"),
            QuasigroupError::OrderTooLarge(n) => {
                write!(f, "order {n} exceeds the supported maximum {MAX_ORDER}")
            }
            QuasigroupError::WrongCellCount { expected, found } => {
                write!(f, "expected {expected} cells, found {found}")
            }
            QuasigroupError::ValueOutOfRange { row, col, value } => {
                write!(
                    f,
                    "cell ({row}, {col}) holds {value}, outside the point range"
                )
            }
            QuasigroupError::RowNotPermutation(r) => write!(f, "row {r} is not a permutation"),
            QuasigroupError::ColumnNotPermutation(c) => {
                write!(f, "column {c} is not a permutation")
            }
            QuasigroupError::NotMendelsohn => {
                write!(f, "quasigroup is not idempotent and semisymmetric")
            }
            QuasigroupError::SearchBudgetExceeded => {
                write!(f, "search budget exceeded before a decision was reached")
            }
            QuasigroupError::ElementOutOfRange(x) => write!(f, "element {x} out of range"),
        }
    }
}

impl core::error::Error for QuasigroupError {}

/// An `n x n` Latin square on `0..n` read as a binary operation.
///
/// Row `x` is the left translation `L_x`, column `y` the right translation
/// `R_y`. Construction validates that both are permutations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CayleyTable {
    n: usize,
    cells: Vec<u16>,
}

impl CayleyTable {
    /// Validates a row-major cell vector.
    pub fn new(n: usize, cells: Vec<u16>) -> Result<Self, QuasigroupError> {
        if n == 0 {
            return Err(QuasigroupError::EmptyTable);
        }
        if n > MAX_ORDER {
            return Err(QuasigroupError::OrderTooLarge(n));
        }
        if cells.len() != n * n {
            return Err(QuasigroupError::WrongCellCount {
                expected: n * n,
                found: cells.len(),
            });
        }
        let mut seen = vec![usize::MAX; n];
        for r in 0..n {
            for c in 0..n {
                let v = cells[r * n + c] as usize;
                if v >= n {
                    return Err(QuasigroupError::ValueOutOfRange {
                        row: r,
                        col: c,
                        value: v,
                    });
                }
                if seen[v] == r {
                    return Err(QuasigroupError::RowNotPermutation(r));
                }
                seen[v] = r;
            }
        }
        seen.fill(usize::MAX);
        for c in 0..n {
            for r in 0..n {
                let v = cells[r * n + c] as usize;
                if seen[v] == c {
                    return Err(QuasigroupError::ColumnNotPermutation(c));
                }
                seen[v] = c;
            }
        }
        Ok(CayleyTable { n, cells })
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self, QuasigroupError> {
        let n = rows.len();
        let mut cells = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(QuasigroupError::WrongCellCount {
                    expected: n * n,
                    found: r * n + row.len(),
                });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= n.max(1) {
                    return Err(QuasigroupError::ValueOutOfRange {
                        row: r,
                        col: c,
                        value: v,
                    });
                }
                cells.push(v as u16);
            }
        }
        Self::new(n, cells)
    }

    pub fn from_fn<F>(n: usize, mut op: F) -> Result<Self, QuasigroupError>
    where
        F: FnMut(usize, usize) -> usize,
    {
        if n > MAX_ORDER {
            return Err(QuasigroupError::OrderTooLarge(n));
        }
        let mut cells = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let v = op(x, y);
                if v >= n {
                    return Err(QuasigroupError::ValueOutOfRange {
                        row: x,
                        col: y,
                        value: v,
                    });
                }
                cells.push(v as u16);
            }
        }
        Self::new(n, cells)
    }

    /// The one-element quasigroup.
    pub fn trivial() -> Self {
        CayleyTable {
            n: 1,
            cells: vec![0],
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.n + y] as usize
    }

    /// Row `x`, i.e. the values of `L_x`.
    pub fn row(&self, x: usize) -> &[u16] {
        &self.cells[x * self.n..(x + 1) * self.n]
    }

    pub fn cells(&self) -> &[u16] {
        &self.cells
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|x| self.row(x).iter().map(|&v| v as usize).collect())
            .collect()
    }

    /// The unique `y` with `a ∘ y = b`.
    pub fn left_division(&self, a: usize, b: usize) -> usize {
        self.row(a)
            .iter()
            .position(|&v| v as usize == b)
            .expect("rows are permutations")
    }

    /// The unique `x` with `x ∘ a = b`.
    pub fn right_division(&self, a: usize, b: usize) -> usize {
        (0..self.n)
            .find(|&x| self.op(x, a) == b)
            .expect("columns are permutations")
    }

    /// The isomorphic copy under `perm`: `perm(x) ∘' perm(y) = perm(x ∘ y)`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, QuasigroupError> {
        let n = self.n;
        if perm.len() != n {
            return Err(QuasigroupError::WrongCellCount {
                expected: n,
                found: perm.len(),
            });
        }
        let mut cells = vec![0u16; n * n];
        for x in 0..n {
            for y in 0..n {
                let (px, py) = (perm[x], perm[y]);
                if px >= n || py >= n {
                    return Err(QuasigroupError::ElementOutOfRange(px.max(py)));
                }
                cells[px * n + py] = perm[self.op(x, y)] as u16;
            }
        }
        Self::new(n, cells)
    }

    /// The operation restricted to `elements`, relabelled by position.
    ///
    /// Fails unless `elements` is closed and the restriction is Latin.
    pub fn restrict(&self, elements: &[usize]) -> Result<Self, QuasigroupError> {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &x) in elements.iter().enumerate() {
            if x >= self.n {
                return Err(QuasigroupError::ElementOutOfRange(x));
            }
            pos[x] = i;
        }
        let m = elements.len();
        let mut cells = Vec::with_capacity(m * m);
        for (r, &x) in elements.iter().enumerate() {
            for (c, &y) in elements.iter().enumerate() {
                let v = pos[self.op(x, y)];
                if v == usize::MAX {
                    return Err(QuasigroupError::ValueOutOfRange {
                        row: r,
                        col: c,
                        value: self.op(x, y),
                    });
                }
                cells.push(v as u16);
            }
        }
        Self::new(m, cells)
    }
}
