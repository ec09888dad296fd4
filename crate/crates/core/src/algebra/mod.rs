//! Finite abelian groups, their automorphisms, and prime-power fields.

mod arith;
mod automorphism;
mod field;
mod group;
mod roots;

use core::fmt;

pub use arith::{factorize, is_prime, prime_power};
pub use automorphism::GroupAutomorphism;
pub use field::{make_field, FieldElement, FieldSpec, MAX_FIELD_ORDER};
pub use group::{AbelianGroup, MAX_GROUP_ORDER};
pub use roots::roots_of_f;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    /// A cyclic factor that is not a prime power (or is smaller than 2).
    NonPrimePowerFactor(u64),
    /// Group or field order above the supported cap.
    BoundExceeded {
        order: u128,
        bound: u64,
    },
    NotPrime(u64),
    ZeroDegree,
    /// Matrix shape does not match the group rank.
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    /// Column `col` cannot be the image of a generator of order `d_col`.
    NotHomomorphism {
        row: usize,
        col: usize,
    },
    NotBijective,
    /// Two objects that must live over the same group do not.
    GroupMismatch,
    /// Coefficient outside `0..p`.
    BadCoefficient(u64),
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::NonPrimePowerFactor(d) => {
                write!(f, "cyclic factor {d} is not a prime power")
            }
            AlgebraError::BoundExceeded { order, bound } => {
                write!(f, "order {order} exceeds the supported bound {bound}")
            }
            AlgebraError::NotPrime(p) => write!(f, "{p} is not prime"),
            AlgebraError::ZeroDegree => write!(f, "field degree must be at least 1"),
            AlgebraError::DimensionMismatch { expected, found } => {
                write!(
                    f,
                    "expected a {expected}x{expected} matrix, found size {found}"
                )
            }
            AlgebraError::NotHomomorphism { row, col } => write!(
                f,
                "entry ({row}, {col}) does not define a homomorphism on the cyclic factors"
            ),
            AlgebraError::NotBijective => write!(f, "map is not a bijection"),
            AlgebraError::GroupMismatch => write!(f, "maps act on different groups"),
            AlgebraError::BadCoefficient(c) => write!(f, "coefficient {c} out of range"),
        }
    }
}

impl core::error::Error for AlgebraError {}
