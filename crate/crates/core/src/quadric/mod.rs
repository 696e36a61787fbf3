//! Spaces of quadratic forms, their text and JSON formats, and their
//! construction from point configurations.

mod form;
mod io;
mod points;
mod space;

pub use form::{parse_form, parse_form_rational, ParseError, QuadraticForm};
pub use io::{read_space, write_space, AnySpace, FormEntry, PointsDocument, RawPoints, Scalar, SpaceDocument};
pub use points::{residual_quadric, space_from_points, NormalizedPoints, PointConfiguration};
pub use space::{random_invertible, random_symmetric, QuadricSpace};

use crate::linalg::LinalgError;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum QuadricError {
    #[error("basis[{index}]: {error}")]
    Parse { index: usize, error: ParseError },
    #[error("the forms span a space of dimension {rank}, not {e}")]
    DependentBasis { rank: usize, e: usize },
    #[error("no forms given")]
    Empty,
    #[error("form {index} has {found} variables, expected {expected}")]
    VariableCountMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("form {index} has a non-symmetric Gram matrix")]
    NotSymmetric { index: usize },
    #[error("{e} forms cannot be independent in a space of dimension {max}")]
    TooManyForms { e: usize, max: usize },
    #[error("transformation matrix is singular or has the wrong size")]
    SingularTransform,
    #[error("frame points (rows 0-{last_row}) are affinely dependent")]
    DegenerateFrame { last_row: usize },
    #[error("points in rows {first} and {second} coincide")]
    RepeatedPoint { first: usize, second: usize },
    #[error("row {row} has {found} coordinates, expected {expected}")]
    PointDimension { row: usize, expected: usize, found: usize },
    #[error("{found} points given, need at least {needed} (frame plus one residual point)")]
    TooFewPoints { found: usize, needed: usize },
    #[error("bad document: {0}")]
    Format(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
