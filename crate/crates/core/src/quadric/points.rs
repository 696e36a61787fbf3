//! Quadric spaces of reduced point sets.
//!
//! After an affine change of coordinates taking `p₀` to the origin and
//! `p₁, …, p_d` to the standard basis vectors, each residual point `a` gives
//! the quadric `Σ aᵢyᵢ² − (Σ aᵢyᵢ)²`, with Gram matrix `diag(a) − a·aᵀ`.

use super::form::QuadraticForm;
use super::space::QuadricSpace;
use super::QuadricError;
use crate::linalg::{inverse, Field, Matrix, Ring};

/// `n` distinct points in affine `d`-space.
#[derive(Clone, Debug, PartialEq)]
pub struct PointConfiguration<F: Field> {
    field: F,
    d: usize,
    points: Vec<Vec<F::Elem>>,
}

impl<F: Field> PointConfiguration<F> {
    pub fn new(field: F, d: usize, points: Vec<Vec<F::Elem>>) -> Result<Self, QuadricError> {
        for (row, p) in points.iter().enumerate() {
            if p.len() != d {
                return Err(QuadricError::PointDimension {
                    row,
                    expected: d,
                    found: p.len(),
                });
            }
        }
        for second in 0..points.len() {
            if let Some(first) = (0..second).find(|&i| points[i] == points[second]) {
                return Err(QuadricError::RepeatedPoint { first, second });
            }
        }
        Ok(Self { field, d, points })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<F::Elem>] {
        &self.points
    }

    /// Number of residual points `n − 1 − d`, i.e. the dimension `e` of the
    /// resulting quadric space.
    pub fn residual_count(&self) -> usize {
        self.points.len().saturating_sub(self.d + 1)
    }

    /// Applies the affine map sending `p₀` to the origin and `p₁, …, p_d` to
    /// the standard basis vectors.
    pub fn normalize(&self) -> Result<NormalizedPoints<F>, QuadricError> {
        let d = self.d;
        if self.points.len() < d + 2 {
            return Err(QuadricError::TooFewPoints {
                found: self.points.len(),
                needed: d + 2,
            });
        }
        let f = &self.field;
        let origin = self.points[0].clone();
        // column i is p_{i+1} - p_0
        let frame = Matrix::from_fn(f.clone(), d, d, |r, c| f.sub(&self.points[c + 1][r], &origin[r]));
        let frame_inverse = inverse(&frame).map_err(|_| QuadricError::DegenerateFrame { last_row: d })?;
        let points = self
            .points
            .iter()
            .map(|p| {
                let shifted: Vec<F::Elem> = p.iter().zip(&origin).map(|(x, o)| f.sub(x, o)).collect();
                frame_inverse.mul_vec(&shifted)
            })
            .collect();
        Ok(NormalizedPoints {
            origin,
            frame,
            normalized: PointConfiguration {
                field: f.clone(),
                d,
                points,
            },
        })
    }
}

/// A configuration in normal position together with the affine map that
/// produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedPoints<F: Field> {
    origin: Vec<F::Elem>,
    frame: Matrix<F>,
    normalized: PointConfiguration<F>,
}

impl<F: Field> NormalizedPoints<F> {
    pub fn configuration(&self) -> &PointConfiguration<F> {
        &self.normalized
    }

    /// The residual points `a⁽¹⁾, …, a⁽ᵉ⁾` in normalized coordinates.
    pub fn residuals(&self) -> &[Vec<F::Elem>] {
        &self.normalized.points[self.normalized.d + 1..]
    }

    /// Maps a normalized point back to the original coordinates.
    pub fn to_original(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.normalized.field;
        self.frame
            .mul_vec(x)
            .iter()
            .zip(&self.origin)
            .map(|(y, o)| f.add(y, o))
            .collect()
    }

    /// The quadrics `diag(a) − a·aᵀ` of the residual points.
    pub fn space(&self) -> Result<QuadricSpace<F>, QuadricError> {
        let f = &self.normalized.field;
        let forms = self
            .residuals()
            .iter()
            .map(|a| QuadraticForm::from_gram(residual_quadric(f, a)).expect("symmetric by construction"))
            .collect();
        QuadricSpace::new(forms)
    }
}

/// Gram matrix of `Σ aᵢyᵢ² − (Σ aᵢyᵢ)²`.
pub fn residual_quadric<R: Ring>(ring: &R, a: &[R::Elem]) -> Matrix<R> {
    let d = a.len();
    Matrix::from_fn(ring.clone(), d, d, |i, j| {
        let outer = ring.mul(&a[i], &a[j]);
        if i == j {
            ring.sub(&a[i], &outer)
        } else {
            ring.neg(&outer)
        }
    })
}

/// The quadric space of a point configuration, using its first `d + 1`
/// points as the affine frame.
pub fn space_from_points<F: Field>(points: &PointConfiguration<F>) -> Result<QuadricSpace<F>, QuadricError> {
    points.normalize()?.space()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rationals;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn config(d: usize, rows: &[&[i64]]) -> Result<PointConfiguration<Rationals>, QuadricError> {
        let pts = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rationals.from_i64(x)).collect())
            .collect();
        PointConfiguration::new(Rationals, d, pts)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn normalized_input_is_fixed() {
        let c = config(2, &[&[0, 0], &[1, 0], &[0, 1], &[3, 5]]).unwrap();
        let n = c.normalize().unwrap();
        assert_eq!(n.configuration(), &c);
        assert_eq!(n.residuals(), &[vec![q(3, 1), q(5, 1)]]);
    }

    #[test]
    fn sheared_frame() {
        // frame (1,1), (2,1), (1,2) is a translate of the standard one, so the
        // residual (4,3) normalizes to (3,2); with frame (1,1), (2,1), (2,2) the
        // map is x' = F⁻¹(x − p₀) with F = [[1,1],[0,1]], F⁻¹ = [[1,-1],[0,1]].
        let c = config(2, &[&[1, 1], &[2, 1], &[1, 2], &[4, 3]]).unwrap();
        assert_eq!(c.normalize().unwrap().residuals(), &[vec![q(3, 1), q(2, 1)]]);
        let c = config(2, &[&[1, 1], &[2, 1], &[2, 2], &[4, 3]]).unwrap();
        assert_eq!(c.normalize().unwrap().residuals(), &[vec![q(1, 1), q(2, 1)]]);
    }

    #[test]
    fn collinear_frame_is_degenerate() {
        let c = config(2, &[&[0, 0], &[1, 1], &[2, 2], &[0, 1]]).unwrap();
        assert_eq!(
            c.normalize().unwrap_err(),
            QuadricError::DegenerateFrame { last_row: 2 }
        );
    }

    #[test]
    fn repeated_points_rejected() {
        assert_eq!(
            config(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 0]]).unwrap_err(),
            QuadricError::RepeatedPoint { first: 1, second: 3 }
        );
        assert!(matches!(
            config(2, &[&[0, 0, 1]]),
            Err(QuadricError::PointDimension { row: 0, .. })
        ));
    }

    #[test]
    fn basis_vector_residual_gives_zero_quadric() {
        // In normal position e₁ coincides with p₁, so this only arises for raw residuals.
        let zero = residual_quadric(&Rationals, &[q(1, 1), q(0, 1), q(0, 1)]);
        assert!(zero.is_zero());
        let forms = vec![QuadraticForm::from_gram(zero).unwrap()];
        assert_eq!(
            QuadricSpace::new(forms).unwrap_err(),
            QuadricError::DependentBasis { rank: 0, e: 1 }
        );
    }

    #[test]
    fn too_few_points() {
        let c = config(2, &[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        assert!(matches!(
            c.normalize(),
            Err(QuadricError::TooFewPoints { found: 3, needed: 4 })
        ));
    }

    proptest! {
        #[test]
        fn normalization_inverts(vals in proptest::collection::vec(-9i64..10, 15)) {
            let d = 3;
            let rows: Vec<Vec<BigRational>> = vals.chunks(d).map(|r| r.iter().map(|&x| Rationals.from_i64(x)).collect()).collect();
            let Ok(c) = PointConfiguration::new(Rationals, d, rows) else { return Ok(()) };
            let Ok(n) = c.normalize() else { return Ok(()) };
            for (orig, norm) in c.points().iter().zip(n.configuration().points()) {
                prop_assert_eq!(&n.to_original(norm), orig);
            }
            for i in 0..d {
                let mut e = vec![Rationals.zero(); d];
                e[i] = Rationals.one();
                prop_assert_eq!(&n.configuration().points()[i + 1], &e);
            }
        }

        #[test]
        fn residual_quadric_plus_outer_is_diagonal(a in proptest::collection::vec(-9i64..10, 1..6)) {
            let a: Vec<BigRational> = a.into_iter().map(|x| Rationals.from_i64(x)).collect();
            let d = a.len();
            let q = residual_quadric(&Rationals, &a);
            let outer = QuadraticForm::square_of_linear(Rationals, &a).into_gram();
            let sum = q.add(&outer);
            for i in 0..d {
                for j in 0..d {
                    let expected = if i == j { a[i].clone() } else { Rationals.zero() };
                    prop_assert_eq!(&sum[(i, j)], &expected);
                }
            }
        }
    }
}
