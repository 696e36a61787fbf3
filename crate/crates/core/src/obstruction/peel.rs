use super::ObstructionError;
use crate::koszul::kappa_zero;
use crate::linalg::{kernel_basis, Field, Matrix};
use crate::quadric::{QuadraticForm, QuadricSpace};

/// Whether the space involves at most `d_target` independent directions,
/// the criterion for splitting off `d − d_target` reduced points.
pub fn peel_test<F: Field>(space: &QuadricSpace<F>, d_target: usize) -> bool {
    assert!(d_target <= space.d(), "target dimension exceeds d");
    kappa_zero(space) <= d_target
}

/// Moves the common kernel of the forms to the last coordinates and drops it,
/// leaving a space in `κ₀` variables with the same κ-vector.
pub fn restrict_to_kernel_complement<F: Field>(space: &QuadricSpace<F>) -> QuadricSpace<F> {
    let d = space.d();
    let field = space.field();
    let kernel = kernel_basis(&space.stacked());
    let kept = d - kernel.len();
    if kernel.is_empty() {
        return space.clone();
    }
    // Complete the kernel to a basis with standard vectors, placed first.
    let mut columns: Vec<Vec<F::Elem>> = Vec::with_capacity(d);
    let mut current = kernel.clone();
    for i in 0..d {
        if columns.len() == kept {
            break;
        }
        let mut unit = vec![field.zero(); d];
        unit[i] = field.one();
        current.push(unit.clone());
        let m = Matrix::from_rows(field.clone(), current.clone()).expect("equal lengths");
        if m.rank() == current.len() {
            columns.push(unit);
        } else {
            current.pop();
        }
    }
    columns.extend(kernel);
    let g = Matrix::from_rows(field.clone(), columns)
        .expect("equal lengths")
        .transpose();
    space
        .change_coordinates(&g)
        .expect("completed basis is invertible")
        .truncate_variables(kept)
}

/// `rank(BC − CB)`.
pub fn commutator_rank<F: Field>(b: &QuadraticForm<F>, c: &QuadraticForm<F>) -> Result<usize, ObstructionError> {
    if b.d() != c.d() {
        return Err(ObstructionError::DimensionMismatch {
            left: b.d(),
            right: c.d(),
        });
    }
    let (b, c) = (b.gram(), c.gram());
    Ok(b.mul(c).sub(&c.mul(b)).rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::koszul::kappa_vector;
    use crate::linalg::{PrimeField, Rationals};
    use crate::quadric::parse_form;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fp() -> PrimeField {
        PrimeField::new(10007).unwrap()
    }

    fn diag<F: Field>(f: &F, entries: &[i64]) -> QuadraticForm<F> {
        let d = entries.len();
        QuadraticForm::from_gram(Matrix::from_fn(f.clone(), d, d, |i, j| {
            if i == j {
                f.from_i64(entries[i])
            } else {
                f.zero()
            }
        }))
        .unwrap()
    }

    fn antidiag<F: Field>(f: &F, entries: &[i64]) -> QuadraticForm<F> {
        let d = entries.len();
        // symmetric: entry (i, d−1−i) uses the smaller of the two indices
        QuadraticForm::from_gram(Matrix::from_fn(f.clone(), d, d, |i, j| {
            if i + j == d - 1 {
                f.from_i64(entries[i.min(j)])
            } else {
                f.zero()
            }
        }))
        .unwrap()
    }

    #[test]
    fn commuting_diagonals() {
        let f = fp();
        assert_eq!(commutator_rank(&diag(&f, &[1, 2, 3]), &diag(&f, &[4, 5, 6])), Ok(0));
    }

    #[test]
    fn diagonal_against_antidiagonal() {
        let f = fp();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        use rand::Rng;
        for d in 2..9 {
            let b: Vec<i64> = (0..d).map(|_| rng.gen_range(1..10000)).collect();
            let c: Vec<i64> = (0..d).map(|_| rng.gen_range(1..10000)).collect();
            let r = commutator_rank(&diag(&f, &b), &antidiag(&f, &c)).unwrap();
            assert_eq!(r, if d % 2 == 0 { d } else { d - 1 }, "d = {d}");
        }
    }

    #[test]
    fn commutator_dimension_mismatch() {
        let f = fp();
        assert!(commutator_rank(&diag(&f, &[1, 2]), &diag(&f, &[1, 2, 3])).is_err());
    }

    #[test]
    fn peeling_padded_space() {
        let v = QuadricSpace::new(vec![
            parse_form("y1^2 + y2*y3 - y4^2", 5, &Rationals).unwrap(),
            parse_form("y2^2 + 3*y1*y4", 5, &Rationals).unwrap(),
            parse_form("y3^2 - y1*y2 + y3*y4", 5, &Rationals).unwrap(),
        ])
        .unwrap();
        assert!(peel_test(&v, 4));
        assert!(peel_test(&v, 5));
        assert!(!peel_test(&v, 3));
        let r = restrict_to_kernel_complement(&v);
        assert_eq!(r.d(), 4);
        assert_eq!(kappa_vector(&r).entries, kappa_vector(&v).entries);
    }

    #[test]
    fn restriction_with_hidden_kernel() {
        // forms in 3 of 5 variables, disguised by a random change of coordinates
        let f = fp();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let small = QuadricSpace::random(&f, 3, 3, &mut rng).pad_variables(2);
        let g = crate::quadric::random_invertible(&f, 5, &mut rng);
        let v = small.change_coordinates(&g).unwrap();
        assert_eq!(kappa_zero(&v), 3);
        let r = restrict_to_kernel_complement(&v);
        assert_eq!(r.d(), 3);
        assert_eq!(kappa_vector(&r).entries, kappa_vector(&v).entries);
        assert_eq!(kappa_zero(&r), 3);
    }

    #[test]
    fn generic_space_is_unchanged() {
        let f = fp();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let v = QuadricSpace::random(&f, 4, 3, &mut rng);
        assert_eq!(restrict_to_kernel_complement(&v), v);
        assert!(!peel_test(&v, 3));
    }
}
