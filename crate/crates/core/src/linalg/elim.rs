//! Gauss–Jordan elimination over rings whose pivots are required to be units.
//!
//! Over a field every nonzero entry is a unit, so elimination never fails.
//! Over the dual numbers an entry `0 + bε` is nonzero but not invertible;
//! meeting one where a pivot is needed means the evaluation point is not
//! generic, and elimination reports [`PivotNotUnit`].

use super::field::{Field, Ring};
use super::matrix::Matrix;
use super::LinalgError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("no unit pivot in column {col} (rows {row}..): evaluation point is not generic")]
pub struct PivotNotUnit {
    pub row: usize,
    pub col: usize,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Rref<R: Ring> {
    pub matrix: Matrix<R>,
    pub pivots: Vec<usize>,
}

impl<R: Ring> Rref<R> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// In-place elimination. With `reduced` the entries above each pivot are
/// cleared as well and pivots are scaled to one.
fn eliminate<R: Ring>(m: &mut Matrix<R>, reduced: bool) -> Result<Vec<usize>, PivotNotUnit> {
    let ring = m.ring().clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let mut nonunit_seen = false;
        let mut found = None;
        for i in r..rows {
            let x = &m[(i, c)];
            if ring.is_zero(x) {
                continue;
            }
            match ring.unit_inverse(x) {
                Some(inv) => {
                    found = Some((i, inv));
                    break;
                }
                None => nonunit_seen = true,
            }
        }
        let (p, inv) = match found {
            Some(f) => f,
            None if nonunit_seen => return Err(PivotNotUnit { row: r, col: c }),
            None => continue,
        };
        m.swap_rows(r, p);
        if reduced || !ring.is_one(&m[(r, c)]) {
            for x in &mut m.row_mut(r)[c..] {
                *x = ring.mul(x, &inv);
            }
        }
        let pivot_row: Vec<R::Elem> = m.row(r)[c..].to_vec();
        let targets: Box<dyn Iterator<Item = usize>> = if reduced {
            Box::new((0..rows).filter(|&i| i != r))
        } else {
            Box::new(r + 1..rows)
        };
        for i in targets {
            let factor = m[(i, c)].clone();
            if ring.is_zero(&factor) {
                continue;
            }
            let row = &mut m.row_mut(i)[c..];
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !ring.is_zero(p) {
                    *x = ring.sub(x, &ring.mul(&factor, p));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Ok(pivots)
}

/// Reduced row echelon form over any ring, failing if a pivot is not a unit.
pub fn try_rref<R: Ring>(m: &Matrix<R>) -> Result<Rref<R>, PivotNotUnit> {
    let mut work = m.clone();
    let pivots = eliminate(&mut work, true)?;
    Ok(Rref { matrix: work, pivots })
}

/// Reduced row echelon form over a field.
pub fn rref<F: Field>(m: &Matrix<F>) -> Rref<F> {
    try_rref(m).expect("every nonzero field element is a unit")
}

/// Rank over a ring with unit pivots (see the module docs).
pub fn rank_over_ring<R: Ring>(m: &Matrix<R>) -> Result<usize, PivotNotUnit> {
    let mut work = m.clone();
    eliminate(&mut work, false).map(|p| p.len())
}

pub(crate) fn gaussian_rank<F: Field>(m: &Matrix<F>) -> usize {
    rank_over_ring(m).expect("every nonzero field element is a unit")
}

pub(crate) fn gaussian_determinant<F: Field>(m: &Matrix<F>) -> F::Elem {
    let ring = m.ring().clone();
    let n = m.rows();
    let mut a = m.clone();
    let mut det = ring.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !ring.is_zero(&a[(i, c)])) else {
            return ring.zero();
        };
        if p != c {
            a.swap_rows(p, c);
            det = ring.neg(&det);
        }
        let pivot = a[(c, c)].clone();
        det = ring.mul(&det, &pivot);
        let inv = ring.inv(&pivot).expect("nonzero pivot");
        for i in c + 1..n {
            let factor = ring.mul(&a[(i, c)], &inv);
            if ring.is_zero(&factor) {
                continue;
            }
            for j in c..n {
                let t = ring.mul(&factor, &a[(c, j)]);
                a[(i, j)] = ring.sub(&a[(i, j)], &t);
            }
        }
    }
    det
}

/// Basis of the right kernel, one vector per free column of the RREF.
pub fn kernel_basis<F: Field>(m: &Matrix<F>) -> Vec<Vec<F::Elem>> {
    let ring = m.ring().clone();
    let Rref { matrix, pivots } = rref(m);
    let mut is_pivot = vec![false; m.cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols())
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![ring.zero(); m.cols()];
            v[free] = ring.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = ring.neg(&matrix[(r, free)]);
            }
            v
        })
        .collect()
}

/// Solves `m · x = b` for square invertible `m` over a ring with unit pivots.
pub fn try_solve<R: Ring>(m: &Matrix<R>, b: &[R::Elem]) -> Result<Vec<R::Elem>, LinalgError> {
    let n = m.rows();
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let ring = m.ring().clone();
    let aug = Matrix::from_fn(
        ring,
        n,
        n + 1,
        |i, j| {
            if j < n {
                m[(i, j)].clone()
            } else {
                b[i].clone()
            }
        },
    );
    let r = try_rref(&aug)?;
    if r.pivots.len() < n || (n > 0 && r.pivots[n - 1] != n - 1) {
        return Err(LinalgError::Singular);
    }
    Ok((0..n).map(|i| r.matrix[(i, n)].clone()).collect())
}

/// Inverse of a square matrix over a field.
pub fn inverse<F: Field>(m: &Matrix<F>) -> Result<Matrix<F>, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let ring = m.ring().clone();
    let aug = Matrix::hstack(ring, &[m, &Matrix::identity(m.ring().clone(), n)]);
    let r = rref(&aug);
    if r.pivots.len() < n || (n > 0 && r.pivots[n - 1] >= n) {
        return Err(LinalgError::Singular);
    }
    let cols: Vec<usize> = (n..2 * n).collect();
    let rows: Vec<usize> = (0..n).collect();
    Ok(r.matrix.submatrix(&rows, &cols))
}
