//! Lower bounds for the dimension of the locus of nets of quadrics coming
//! from `d + 4` reduced points.
//!
//! A configuration of `n = 1 + d + e` points determines an `e`-dimensional
//! space of quadrics, i.e. a point of the Grassmannian `Gr(e, S₂*)`. In the
//! affine chart given by the pivot columns of its coordinate matrix, the
//! point has `e·(C(d+1,2) − e)` coordinates. The rank of the Jacobian of
//! points ↦ chart coordinates at a random configuration bounds the dimension
//! of the image from below. Derivatives are taken exactly with dual numbers.
//!
//! Two maps are provided:
//!
//! * [`h_map`] normalizes the frame `p₀, …, p_d` to the standard simplex and
//!   takes the quadrics `diag(a) − a·aᵀ` of the normalized residual points.
//!   It is invariant under all affine transformations of the configuration,
//!   so its Jacobian rank never exceeds `e·d`.
//! * [`equivariant_chart`] keeps the frame: with `fᵢ = pᵢ − p₀`, `F = [f₁ … f_d]`,
//!   `v = p_{d+j} − p₀` and `a = F⁻¹v`, it uses `F·(diag(a) − a·aᵀ)·Fᵀ =
//!   Σ aᵢ fᵢfᵢᵀ − v·vᵀ`. It is only translation invariant, and its image is the
//!   whole `GL(d)`-orbit of the image of [`h_map`].
//!
//! The dimension bound uses the second map.

use rayon::prelude::*;
use serde::Serialize;

use crate::koszul::binomial;
use crate::linalg::{try_rref, try_solve, DualRing, Field, Matrix, Rationals, Ring};
use crate::obstruction::special_point_configuration;
use crate::quadric::{PointConfiguration, QuadricError};

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum DimensionError {
    #[error("dimension probe needs d >= 4, got {0}")]
    TooFewVariables(usize),
    #[error("expected {expected} points for e = {e}, found {found}")]
    PointCount { expected: usize, found: usize, e: usize },
    #[error("the {e} quadrics span only a {rank}-dimensional space")]
    DependentBasis { rank: usize, e: usize },
    #[error("no generic configuration found after {attempts} attempts")]
    GenericityFailure { attempts: usize },
    #[error(transparent)]
    Quadric(#[from] QuadricError),
}

/// A point of `Gr(e, S₂*)` in the chart of its pivot columns.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartPoint<F: Field> {
    pub d: usize,
    pub e: usize,
    /// Pivot columns of the `e × C(d+1,2)` coordinate matrix.
    pub pivots: Vec<usize>,
    /// The non-pivot entries of the reduced coordinate matrix, row by row.
    pub coordinates: Vec<F::Elem>,
}

impl<F: Field> ChartPoint<F> {
    pub fn chart_dimension(&self) -> usize {
        self.coordinates.len()
    }
}

/// Which quadric each residual point contributes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Construction {
    Normalized,
    Equivariant,
}

/// Why a chart evaluation did not produce coordinates.
#[derive(Debug)]
enum ChartFailure {
    /// The frame is degenerate or, over dual numbers, not generic enough.
    Frame,
    Rank(usize),
    Pivot,
}

/// Upper-triangular entries `(r, c)`, `r ≤ c`, row by row.
fn upper_entries(d: usize) -> Vec<(usize, usize)> {
    (0..d).flat_map(|r| (r..d).map(move |c| (r, c))).collect()
}

/// Chart coordinates of the space built from `points` (`1 + d + e` rows of
/// length `d`) over any ring where the needed pivots are units.
fn chart<R: Ring>(
    ring: &R,
    d: usize,
    points: &[Vec<R::Elem>],
    how: Construction,
) -> Result<(Vec<usize>, Vec<R::Elem>), ChartFailure> {
    let e = points.len() - d - 1;
    let origin = &points[0];
    let shifted: Vec<Vec<R::Elem>> = points
        .iter()
        .map(|p| p.iter().zip(origin).map(|(x, o)| ring.sub(x, o)).collect())
        .collect();
    // column i is f_{i+1}
    let frame = Matrix::from_fn(ring.clone(), d, d, |r, c| shifted[c + 1][r].clone());
    let entries = upper_entries(d);
    let mut coords = Matrix::zeros(ring.clone(), e, entries.len());
    for j in 0..e {
        let v = &shifted[d + 1 + j];
        let a = try_solve(&frame, v).map_err(|_| ChartFailure::Frame)?;
        for (col, &(r, c)) in entries.iter().enumerate() {
            coords[(j, col)] = match how {
                Construction::Normalized => {
                    let outer = ring.neg(&ring.mul(&a[r], &a[c]));
                    if r == c {
                        ring.add(&a[r], &outer)
                    } else {
                        outer
                    }
                }
                Construction::Equivariant => {
                    let mut acc = ring.neg(&ring.mul(&v[r], &v[c]));
                    for (i, ai) in a.iter().enumerate() {
                        let fr = &frame[(r, i)];
                        let fc = &frame[(c, i)];
                        acc = ring.add(&acc, &ring.mul(ai, &ring.mul(fr, fc)));
                    }
                    acc
                }
            };
        }
    }
    let reduced = try_rref(&coords).map_err(|_| ChartFailure::Pivot)?;
    if reduced.rank() < e {
        return Err(ChartFailure::Rank(reduced.rank()));
    }
    let mut out = Vec::with_capacity(e * (entries.len() - e));
    for j in 0..e {
        for col in 0..entries.len() {
            if !reduced.pivots.contains(&col) {
                out.push(reduced.matrix[(j, col)].clone());
            }
        }
    }
    Ok((reduced.pivots, out))
}

fn evaluate<F: Field>(
    config: &PointConfiguration<F>,
    e: usize,
    how: Construction,
) -> Result<ChartPoint<F>, DimensionError> {
    let d = config.d();
    let expected = 1 + d + e;
    if config.len() != expected {
        return Err(DimensionError::PointCount {
            expected,
            found: config.len(),
            e,
        });
    }
    match chart(config.field(), d, config.points(), how) {
        Ok((pivots, coordinates)) => Ok(ChartPoint {
            d,
            e,
            pivots,
            coordinates,
        }),
        Err(ChartFailure::Frame) => Err(QuadricError::DegenerateFrame { last_row: d }.into()),
        Err(ChartFailure::Rank(rank)) => Err(DimensionError::DependentBasis { rank, e }),
        Err(ChartFailure::Pivot) => unreachable!("every nonzero field element is a unit"),
    }
}

/// Chart point of the normalized construction.
pub fn h_map<F: Field>(config: &PointConfiguration<F>, e: usize) -> Result<ChartPoint<F>, DimensionError> {
    evaluate(config, e, Construction::Normalized)
}

/// Chart point of the frame-preserving construction.
pub fn equivariant_chart<F: Field>(config: &PointConfiguration<F>, e: usize) -> Result<ChartPoint<F>, DimensionError> {
    evaluate(config, e, Construction::Equivariant)
}

/// The Jacobian of the chart map at `points`, one row per coordinate
/// direction. `None` if the point is not generic enough for a consistent
/// chart.
fn jacobian<F: Field>(field: &F, d: usize, points: &[Vec<F::Elem>], how: Construction) -> Option<Matrix<F>> {
    let (pivots, values) = chart(field, d, points, how).ok()?;
    let ring = DualRing::new(field.clone());
    let n = points.len();
    let rows: Vec<Option<Vec<F::Elem>>> = (0..n * d)
        .into_par_iter()
        .map(|dir| {
            let lifted: Vec<Vec<_>> = points
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    p.iter()
                        .enumerate()
                        .map(|(k, x)| {
                            let eps = if i * d + k == dir { field.one() } else { field.zero() };
                            ring.new_elem(x.clone(), eps)
                        })
                        .collect()
                })
                .collect();
            let (dual_pivots, coords) = chart(&ring, d, &lifted, how).ok()?;
            if dual_pivots != pivots {
                return None;
            }
            debug_assert!(coords.iter().zip(&values).all(|(c, v)| &c.re == v));
            Some(coords.into_iter().map(|c| c.eps).collect())
        })
        .collect();
    let rows: Option<Vec<Vec<F::Elem>>> = rows.into_iter().collect();
    Matrix::from_rows(field.clone(), rows?).ok()
}

pub const MAX_GENERICITY_ATTEMPTS: usize = 8;

fn random_points(d: usize, n: usize, seed: u64, attempt: usize) -> Vec<Vec<<Rationals as Ring>::Elem>> {
    let mut rng = crate::obstruction::trial_rng(seed, attempt);
    (0..n)
        .map(|_| (0..d).map(|_| Rationals.sample(&mut rng)).collect())
        .collect()
}

/// Rank of the Jacobian of the frame-preserving chart map at a random
/// rational configuration of `1 + d + e` points. This is a lower bound for
/// the dimension of the locus of spaces of `e` quadrics in `d` variables
/// that come from reduced points.
pub fn smoothable_locus_dimension_lower_bound(d: usize, e: usize, seed: u64) -> Result<usize, DimensionError> {
    if d < 4 {
        return Err(DimensionError::TooFewVariables(d));
    }
    for attempt in 0..MAX_GENERICITY_ATTEMPTS {
        let points = random_points(d, 1 + d + e, seed, attempt);
        if let Some(j) = jacobian(&Rationals, d, &points, Construction::Equivariant) {
            return Ok(j.rank());
        }
    }
    Err(DimensionError::GenericityFailure {
        attempts: MAX_GENERICITY_ATTEMPTS,
    })
}

/// Jacobian rank of [`h_map`] at a random configuration.
pub fn normalized_map_rank(d: usize, e: usize, seed: u64) -> Result<usize, DimensionError> {
    for attempt in 0..MAX_GENERICITY_ATTEMPTS {
        let points = random_points(d, 1 + d + e, seed, attempt);
        if let Some(j) = jacobian(&Rationals, d, &points, Construction::Normalized) {
            return Ok(j.rank());
        }
    }
    Err(DimensionError::GenericityFailure {
        attempts: MAX_GENERICITY_ATTEMPTS,
    })
}

/// `dim Gr(e, S₂*) = e·(C(d+1,2) − e)`.
pub fn grassmannian_dimension(d: usize, e: usize) -> usize {
    e * (binomial(d + 1, 2) - e)
}

/// Known ranks for nets (`e = 3`) coming from `d + 4` points.
pub const KNOWN_NET_DIMENSIONS: [(usize, usize); 8] = [
    (4, 20),
    (5, 33),
    (6, 48),
    (7, 65),
    (8, 84),
    (9, 105),
    (10, 128),
    (11, 153),
];

pub fn known_net_dimension(d: usize) -> Option<usize> {
    KNOWN_NET_DIMENSIONS.iter().find(|(k, _)| *k == d).map(|(_, v)| *v)
}

/// One row of the dimension table for nets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionRow {
    pub d: usize,
    pub points: usize,
    pub rank: usize,
    pub expected: Option<usize>,
    pub grassmannian: usize,
    /// `C(d−2, 2)`, the largest codimension allowed by the known bound.
    pub codimension_allowance: usize,
}

impl DimensionRow {
    pub fn codimension(&self) -> usize {
        self.grassmannian - self.rank
    }

    pub fn passes(&self) -> bool {
        self.expected.is_none_or(|x| x == self.rank) && self.codimension() <= self.codimension_allowance
    }
}

pub fn dimension_row(d: usize, seed: u64) -> Result<DimensionRow, DimensionError> {
    let rank = smoothable_locus_dimension_lower_bound(d, 3, seed)?;
    Ok(DimensionRow {
        d,
        points: d + 4,
        rank,
        expected: known_net_dimension(d),
        grassmannian: grassmannian_dimension(d, 3),
        codimension_allowance: binomial(d - 2, 2),
    })
}

/// The special configuration used for the `κ₁ = 2d + 2` examples, as a
/// chart point of [`h_map`].
pub fn special_chart_point(d: usize) -> Result<ChartPoint<Rationals>, DimensionError> {
    h_map(&special_point_configuration(d), 3)
}
