//! Exact linear algebra over ℚ and 𝔽_p, plus dual numbers for exact
//! differentiation.

mod bareiss;
mod dual;
mod elim;
mod field;
mod matrix;

pub use bareiss::{modular_rank_lower_bound, random_prime, rank_mod_p};
pub use dual::{DualRing, DualScalar};
pub use elim::{inverse, kernel_basis, rank_over_ring, rref, try_rref, try_solve, PivotNotUnit, Rref};
pub use field::{format_rational, is_prime, parse_rational, Field, FieldSpec, PrimeField, Rationals, Ring};
pub use matrix::{Matrix, SparseMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRows { row: usize, expected: usize, found: usize },
    #[error("modulus {0} is not a prime >= 5")]
    BadModulus(u64),
    #[error("bad field spec {0:?}: expected \"Q\" or \"fp:<prime>\"")]
    BadFieldSpec(String),
    #[error("bad rational {0:?}")]
    BadRational(String),
    #[error("{value} has a denominator divisible by {modulus}")]
    DenominatorVanishes { value: String, modulus: u64 },
    #[error(transparent)]
    PivotNotUnit(#[from] PivotNotUnit),
}

/// Rank of a matrix over a ring of dual numbers, requiring unit pivots.
pub fn rank_over_dual<F: Field>(m: &Matrix<DualRing<F>>) -> Result<usize, PivotNotUnit> {
    rank_over_ring(m)
}
