//! Reference implementations shared by the integration and acceptance tests.
#![allow(dead_code)]

use kappa::koszul::kappa_vector;
use kappa::linalg::{Field, Matrix, PrimeField};
use kappa::obstruction::commutator_rank;
use kappa::quadric::{random_symmetric, PointConfiguration, QuadraticForm, QuadricSpace};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fp() -> PrimeField {
    PrimeField::new(10007).unwrap()
}

pub fn lex_subsets(e: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0u32..1 << e)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..e).filter(|i| m >> i & 1 == 1).collect())
        .collect();
    out.sort();
    out
}

/// Sign of sorting `seq` by adjacent transpositions.
pub fn sort_sign(mut seq: Vec<usize>) -> i64 {
    let mut sign = 1;
    for i in 0..seq.len() {
        for j in 0..seq.len() - 1 - i {
            if seq[j] > seq[j + 1] {
                seq.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    sign
}

/// `x_k ⊗ e_S ↦ Σᵢ Aᵢx_k ⊗ (e_S ∧ eᵢ)`, one entry at a time.
pub fn naive_psi<F: Field>(v: &QuadricSpace<F>, j: usize) -> Matrix<F> {
    let (d, e) = (v.d(), v.e());
    let f = v.field().clone();
    let domain = lex_subsets(e, j);
    let target = lex_subsets(e, j + 1);
    let mut m = Matrix::zeros(f.clone(), d * target.len(), d * domain.len());
    for (sp, s) in domain.iter().enumerate() {
        for k in 0..d {
            for (i, a) in v.grams().iter().enumerate() {
                if s.contains(&i) {
                    continue;
                }
                let mut seq = s.clone();
                seq.push(i);
                let sign = sort_sign(seq.clone());
                seq.sort();
                let tp = target.iter().position(|t| *t == seq).unwrap();
                for r in 0..d {
                    let x = a[(r, k)].clone();
                    let x = if sign < 0 { f.neg(&x) } else { x };
                    let cell = &mut m[(tp * d + r, sp * d + k)];
                    *cell = f.add(cell, &x);
                }
            }
        }
    }
    m
}

pub fn random_points<F: Field>(field: &F, d: usize, e: usize, rng: &mut dyn RngCore) -> PointConfiguration<F> {
    loop {
        let pts = (0..1 + d + e)
            .map(|_| (0..d).map(|_| field.sample(rng)).collect())
            .collect();
        if let Ok(c) = PointConfiguration::new(field.clone(), d, pts) {
            return c;
        }
    }
}

pub fn diagonal<F: Field>(field: &F, entries: &[F::Elem]) -> Matrix<F> {
    let d = entries.len();
    Matrix::from_fn(field.clone(), d, d, |r, c| {
        if r == c {
            entries[r].clone()
        } else {
            field.zero()
        }
    })
}

pub fn outer<F: Field>(field: &F, v: &[F::Elem]) -> Matrix<F> {
    QuadraticForm::square_of_linear(field.clone(), v).into_gram()
}

/// `(B, C)` pairs whose commutator rank is 0, 2, 4 or generic.
pub fn commutator_pair(
    f: &PrimeField,
    d: usize,
    kind: usize,
    rng: &mut ChaCha8Rng,
) -> (Matrix<PrimeField>, Matrix<PrimeField>) {
    let diag = |rng: &mut ChaCha8Rng| diagonal(f, &(0..d).map(|_| f.sample(rng)).collect::<Vec<_>>());
    let vec = |rng: &mut ChaCha8Rng| (0..d).map(|_| f.sample(rng)).collect::<Vec<_>>();
    match kind {
        0 => (random_symmetric(f, d, rng), random_symmetric(f, d, rng)),
        1 => {
            let b = diag(rng);
            (b, diag(rng).add(&outer(f, &vec(rng))))
        }
        2 => {
            let b = diag(rng);
            (b, diag(rng).add(&outer(f, &vec(rng))).add(&outer(f, &vec(rng))))
        }
        _ => (diag(rng), diag(rng)),
    }
}

pub fn commutator_counterexamples(d: usize, pairs: usize, seed: u64) -> (usize, usize) {
    let f = fp();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut checked, mut bad) = (0, 0);
    for n in 0..pairs {
        let (b, c) = commutator_pair(&f, d, n % 4, &mut rng);
        let Ok(space) = QuadricSpace::from_grams(vec![Matrix::identity(f, d), b.clone(), c.clone()]) else {
            continue;
        };
        if !space.is_independent() {
            continue;
        }
        checked += 1;
        let small_kappa = kappa_vector(&space).get(1) <= 2 * d + 2;
        let b = QuadraticForm::from_gram(b).unwrap();
        let c = QuadraticForm::from_gram(c).unwrap();
        let small_commutator = commutator_rank(&b, &c).unwrap() <= 2;
        if small_kappa != small_commutator {
            bad += 1;
        }
    }
    (checked, bad)
}

/// `f_{α,β,γ} = Σ det(M_S)` over column sources `S ∈ {A,B,C}^d` using `A`
/// exactly α times, `B` β times and `C` γ times.
pub fn column_type_oracle<F: Field>(mats: [&Matrix<F>; 3], alpha: usize, beta: usize) -> F::Elem {
    let d = mats[0].rows();
    let f = mats[0].ring().clone();
    let mut total = f.zero();
    for code in 0..3usize.pow(d as u32) {
        let sources: Vec<usize> = (0..d).map(|k| code / 3usize.pow(k as u32) % 3).collect();
        let count = |s| sources.iter().filter(|&&x| x == s).count();
        if count(0) != alpha || count(1) != beta {
            continue;
        }
        let m = Matrix::from_fn(f.clone(), d, d, |r, c| mats[sources[c]][(r, c)].clone());
        total = f.add(&total, &m.determinant().unwrap());
    }
    total
}
