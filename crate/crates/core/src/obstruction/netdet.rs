//! The determinant `det(uA + vB + wC)` of a net of quadrics, and a randomized
//! test for whether a space contains a nonsingular quadric.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::ObstructionError;
use crate::linalg::{try_solve, Field, Matrix};
use crate::quadric::{QuadraticForm, QuadricSpace};

/// Coefficients `f_{α,β,γ}` of `det(uA + vB + wC) = Σ f_{α,β,γ} u^α v^β w^γ`.
#[derive(Clone, Debug, PartialEq)]
pub struct NetDeterminant<F: Field> {
    pub field: F,
    pub d: usize,
    pub coefficients: BTreeMap<(usize, usize, usize), F::Elem>,
}

impl<F: Field> NetDeterminant<F> {
    pub fn coefficient(&self, alpha: usize, beta: usize, gamma: usize) -> F::Elem {
        self.coefficients
            .get(&(alpha, beta, gamma))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// True when the determinant vanishes identically, i.e. every member of
    /// the net is singular.
    pub fn is_zero(&self) -> bool {
        self.coefficients.values().all(|c| self.field.is_zero(c))
    }

    pub fn evaluate(&self, u: &F::Elem, v: &F::Elem, w: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coefficients.iter().fold(f.zero(), |acc, (&(a, b, c), coef)| {
            let term = f.mul(coef, &f.mul(&pow(f, u, a), &f.mul(&pow(f, v, b), &pow(f, w, c))));
            f.add(&acc, &term)
        })
    }
}

fn pow<F: Field>(f: &F, x: &F::Elem, n: usize) -> F::Elem {
    (0..n).fold(f.one(), |acc, _| f.mul(&acc, x))
}

/// Exponent triples `(α, β, γ)` with `α + β + γ = d`, α descending then β descending.
pub fn net_monomials(d: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::with_capacity((d + 1) * (d + 2) / 2);
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push((a, b, d - a - b));
        }
    }
    out
}

fn combination<F: Field>(f: &F, mats: [&Matrix<F>; 3], coeffs: [&F::Elem; 3]) -> Matrix<F> {
    let d = mats[0].rows();
    Matrix::from_fn(f.clone(), d, d, |i, j| {
        let mut acc = f.zero();
        for k in 0..3 {
            acc = f.add(&acc, &f.mul(coeffs[k], &mats[k][(i, j)]));
        }
        acc
    })
}

const INTERPOLATION_ATTEMPTS: usize = 8;

/// Interpolates `det(uA + vB + wC)` from its values at `C(d+2, 2)` random
/// nodes. Nodes come from `seed`; a singular node set is redrawn a few times
/// before giving up.
pub fn net_determinant<F: Field>(
    a: &QuadraticForm<F>,
    b: &QuadraticForm<F>,
    c: &QuadraticForm<F>,
    seed: u64,
) -> Result<NetDeterminant<F>, ObstructionError> {
    let d = a.d();
    for other in [b, c] {
        if other.d() != d {
            return Err(ObstructionError::DimensionMismatch {
                left: d,
                right: other.d(),
            });
        }
    }
    let f = a.field().clone();
    let monomials = net_monomials(d);
    let n = monomials.len();
    let mats = [a.gram(), b.gram(), c.gram()];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..INTERPOLATION_ATTEMPTS {
        let nodes: Vec<[F::Elem; 3]> = (0..n)
            .map(|_| [f.sample(&mut rng), f.sample(&mut rng), f.sample(&mut rng)])
            .collect();
        let system = Matrix::from_fn(f.clone(), n, n, |r, col| {
            let (x, y, z) = monomials[col];
            let [u, v, w] = &nodes[r];
            f.mul(&pow(&f, u, x), &f.mul(&pow(&f, v, y), &pow(&f, w, z)))
        });
        let values: Vec<F::Elem> = nodes
            .iter()
            .map(|[u, v, w]| combination(&f, mats, [u, v, w]).determinant().expect("square"))
            .collect();
        if let Ok(coeffs) = try_solve(&system, &values) {
            let coefficients = monomials
                .into_iter()
                .zip(coeffs)
                .filter(|(_, c)| !f.is_zero(c))
                .collect();
            return Ok(NetDeterminant {
                field: f,
                d,
                coefficients,
            });
        }
    }
    Err(ObstructionError::InterpolationSingular)
}

/// Outcome of the nonsingular-quadric probe.
#[derive(Clone, Debug, PartialEq)]
pub enum ProbeResult<E> {
    /// The combination `Σ cᵢ Aᵢ` with these coefficients is nonsingular.
    Certain { coefficients: Vec<E> },
    /// Every sampled combination was singular. If a nonsingular member
    /// existed, this would happen with probability at most `failure_bound`.
    LikelyPurelySingular { failure_bound: BigRational },
}

/// Evaluates `det(Σ cᵢAᵢ)` at random coefficient vectors. A nonzero value
/// certifies a nonsingular quadric; otherwise the determinant, a polynomial
/// of degree `d`, vanishes at all samples, which for a nonzero polynomial has
/// probability at most `(d / N)^trials` over a sample set of size `N`.
pub fn nonsingular_quadric_probe<F: Field>(space: &QuadricSpace<F>, trials: usize, seed: u64) -> ProbeResult<F::Elem> {
    let f = space.field();
    let d = space.d();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let coefficients: Vec<F::Elem> = (0..space.e()).map(|_| f.sample(&mut rng)).collect();
        let mut m = Matrix::zeros(f.clone(), d, d);
        for (c, a) in coefficients.iter().zip(space.grams()) {
            m = m.add(&a.scale(c));
        }
        if !f.is_zero(&m.determinant().expect("square")) {
            return ProbeResult::Certain { coefficients };
        }
    }
    let n = f.sample_size();
    let ratio = if (d as u64) >= n {
        BigRational::from_integer(1.into())
    } else {
        BigRational::new(BigInt::from(d), BigInt::from(n))
    };
    let failure_bound = (0..trials).fold(BigRational::from_integer(1.into()), |acc, _| acc * &ratio);
    ProbeResult::LikelyPurelySingular { failure_bound }
}

/// Exact test for nets: the space is purely singular iff its net
/// determinant vanishes identically. Requires `e = 3`.
pub fn is_purely_singular_net<F: Field>(space: &QuadricSpace<F>, seed: u64) -> Result<bool, ObstructionError> {
    if space.e() != 3 {
        return Err(ObstructionError::WrongShape {
            d: space.d(),
            e: space.e(),
        });
    }
    let forms = space.forms();
    Ok(net_determinant(&forms[0], &forms[1], &forms[2], seed)?.is_zero())
}
