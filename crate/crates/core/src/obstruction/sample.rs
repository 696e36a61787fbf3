use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::ObstructionError;
use crate::koszul::{kappa_vector, KappaVector};
use crate::linalg::PrimeField;
use crate::quadric::QuadricSpace;

/// How often each κ-vector occurred among random spaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KappaFrequencies {
    pub d: usize,
    pub e: usize,
    pub p: u64,
    pub trials: usize,
    pub seed: u64,
    /// Sorted by κ-vector.
    pub counts: Vec<(KappaVector, usize)>,
}

impl KappaFrequencies {
    /// The most frequent vector; ties go to the smallest.
    pub fn mode(&self) -> Option<&KappaVector> {
        let best = self.counts.iter().map(|(_, c)| *c).max()?;
        self.counts.iter().find(|(_, c)| *c == best).map(|(k, _)| k)
    }

    pub fn count(&self, entries: &[usize]) -> usize {
        self.counts
            .iter()
            .find(|(k, _)| k.entries == entries)
            .map_or(0, |(_, c)| *c)
    }
}

/// A reproducible generator for trial `index` under `seed`.
pub(crate) fn trial_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// κ-vectors of `trials` spaces spanned by i.i.d. uniform symmetric matrices
/// over `𝔽_p`. Trial `i` draws from its own stream, so results do not depend
/// on thread scheduling.
pub fn sample_generic_kappa(
    d: usize,
    e: usize,
    p: u64,
    trials: usize,
    seed: u64,
) -> Result<KappaFrequencies, ObstructionError> {
    if p < 5 {
        return Err(ObstructionError::BadPrime(p));
    }
    let field = PrimeField::new(p).map_err(|_| ObstructionError::BadPrime(p))?;
    let vectors: Vec<KappaVector> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            kappa_vector(&QuadricSpace::random(&field, d, e, &mut rng))
        })
        .collect();
    let mut counts = BTreeMap::new();
    for k in vectors {
        *counts.entry(k).or_insert(0usize) += 1;
    }
    Ok(KappaFrequencies {
        d,
        e,
        p,
        trials,
        seed,
        counts: counts.into_iter().collect(),
    })
}
