//! Fraction-free elimination over ℚ.
//!
//! Rows are first scaled to primitive integer vectors, then reduced with
//! Bareiss' one-step rule, which keeps every intermediate entry equal to a
//! minor of the scaled matrix and so bounds coefficient growth. Before any
//! big-integer work a single modular rank is taken: if it already equals
//! `min(rows, cols)` the rational rank is certified without elimination over ℤ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{is_prime, Field, PrimeField, Rationals, Ring};
use super::matrix::Matrix;

/// Scales each row by the lcm of its denominators.
/// Returns the integer rows and the product of the scale factors.
fn integer_rows(m: &Matrix<Rationals>) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut scale = BigInt::one();
    let rows = (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            scale *= &lcm;
            row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
        })
        .collect();
    (rows, scale)
}

/// Bareiss elimination with row pivoting and column skipping.
/// Returns the rank and, when square and full rank, the signed determinant
/// of the integer matrix.
fn bareiss(mut a: Vec<Vec<BigInt>>, cols: usize) -> (usize, Option<BigInt>) {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut negate = false;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Smallest nonzero entry keeps the multipliers small.
        let pivot = (r..rows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| a[i][c].bits());
        let Some(p) = pivot else { continue };
        if p != r {
            a.swap(p, r);
            negate = !negate;
        }
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pv = &pivot_row[c];
        for row in tail.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            if factor.is_zero() {
                // Entries still need the common scaling by pv / prev.
                if !(pv.is_one() && prev.is_one()) {
                    for j in c + 1..cols {
                        if !row[j].is_zero() {
                            row[j] = (&row[j] * pv) / &prev;
                        }
                    }
                }
                continue;
            }
            for j in c + 1..cols {
                let t = &row[j] * pv - &factor * &pivot_row[j];
                row[j] = if prev.is_one() { t } else { t / &prev };
            }
        }
        prev = pv.clone();
        r += 1;
    }
    let det = (rows == cols && r == rows).then(|| if negate { -prev } else { prev });
    (r, det)
}

/// Rank of `m` modulo `p`, or `None` when `p` divides a denominator.
pub fn rank_mod_p(m: &Matrix<Rationals>, p: u64) -> Option<usize> {
    let field = PrimeField::new(p).ok()?;
    let mut entries = Vec::with_capacity(m.rows() * m.cols());
    for q in m.entries() {
        entries.push(field.from_rational(q).ok()?);
    }
    let mm = Matrix::from_fn(field, m.rows(), m.cols(), |i, j| entries[i * m.cols() + j]);
    Some(mm.rank())
}

/// Draws a random prime in `[2^30, 2^31)`.
pub fn random_prime(rng: &mut impl Rng) -> u64 {
    loop {
        let candidate = rng.gen_range(1u64 << 30..1u64 << 31) | 1;
        if is_prime(candidate) {
            return candidate;
        }
    }
}

/// Lower bound on the rational rank from `primes` random moduli.
///
/// Reduction modulo p cannot increase rank, so the maximum over the primes
/// is a certified lower bound; it equals the true rank unless every chosen
/// prime divides one specific nonzero minor.
pub fn modular_rank_lower_bound(m: &Matrix<Rationals>, primes: usize, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..primes)
        .filter_map(|_| rank_mod_p(m, random_prime(&mut rng)))
        .max()
        .unwrap_or(0)
}

pub(crate) fn rational_rank(m: &Matrix<Rationals>) -> usize {
    let full = m.rows().min(m.cols());
    if full == 0 {
        return 0;
    }
    // 2^31 - 1 is prime and rarely divides the small denominators that occur.
    if rank_mod_p(m, 2_147_483_647) == Some(full) {
        return full;
    }
    let (rows, _) = integer_rows(m);
    bareiss(rows, m.cols()).0
}

pub(crate) fn rational_determinant(m: &Matrix<Rationals>) -> BigRational {
    debug_assert!(m.is_square());
    if m.rows() == 0 {
        return BigRational::one();
    }
    let (rows, scale) = integer_rows(m);
    match bareiss(rows, m.cols()).1 {
        Some(det) => BigRational::new(det, scale),
        None => Rationals.zero(),
    }
}
