//! The wedge maps `ψ_j : S₁ ⊗ Λʲ V → S₁* ⊗ Λʲ⁺¹ V` of a quadric space and
//! their ranks, the κ-vector.
//!
//! For `V = span(A₁, …, A_e)`, `ψ_j(u ⊗ e_S) = Σᵢ Aᵢu ⊗ (e_S ∧ eᵢ)`. Both sides
//! are ordered subset-major (lexicographic subsets of `{0, …, e−1}`), then by
//! coordinate. With this layout `ψ₀` is the stack `(A₁; …; A_e)`. For `e = 3`
//! the middle map `ψ₁` differs from the skew-symmetric layout
//! `[[0, A₃, −A₂], [−A₃, 0, A₁], [A₂, −A₁, 0]]` by the signed row permutation
//! of the Hodge star, see [`star_psi`].

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::linalg::{Field, Matrix, SparseMatrix};
use crate::quadric::QuadricSpace;

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// The `j`-element subsets of `{0, …, e−1}` in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeBasis {
    e: usize,
    j: usize,
    subsets: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl WedgeBasis {
    pub fn new(e: usize, j: usize) -> Self {
        let mut subsets = Vec::with_capacity(binomial(e, j));
        let mut current = Vec::with_capacity(j);
        fn rec(start: usize, e: usize, j: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == j {
                out.push(cur.clone());
                return;
            }
            for x in start..e {
                cur.push(x);
                rec(x + 1, e, j, cur, out);
                cur.pop();
            }
        }
        rec(0, e, j, &mut current, &mut subsets);
        let index = subsets.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect();
        Self { e, j, subsets, index }
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn grade(&self) -> usize {
        self.j
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    pub fn subset(&self, k: usize) -> &[usize] {
        &self.subsets[k]
    }

    pub fn position(&self, subset: &[usize]) -> Option<usize> {
        self.index.get(subset).copied()
    }
}

/// `e_S ∧ e_i` as `(sign, S ∪ {i})`, or `None` when `i ∈ S`.
/// The sign is `(−1)^#{s ∈ S : s > i}`.
pub fn wedge_with(subset: &[usize], i: usize) -> Option<(i64, Vec<usize>)> {
    if subset.contains(&i) {
        return None;
    }
    let after = subset.iter().filter(|&&s| s > i).count();
    let mut t = subset.to_vec();
    t.push(i);
    t.sort_unstable();
    Some((if after % 2 == 0 { 1 } else { -1 }, t))
}

/// The matrix of `ψ_j` with `d·C(e,j+1)` rows and `d·C(e,j)` columns.
#[derive(Clone, Debug, PartialEq)]
pub struct PsiMatrix<F: Field> {
    pub j: usize,
    pub matrix: Matrix<F>,
}

/// Assembles `ψ_j` block by block: block `(T, S)` with `T = S ∪ {i}` is `±Aᵢ`.
pub fn build_psi<F: Field>(space: &QuadricSpace<F>, j: usize) -> PsiMatrix<F> {
    let (d, e) = (space.d(), space.e());
    assert!(j < e, "ψ_{j} needs j < e = {e}");
    let field = space.field();
    let domain = WedgeBasis::new(e, j);
    let target = WedgeBasis::new(e, j + 1);
    let mut sparse = SparseMatrix::new(field.clone(), d * target.len(), d * domain.len());
    for (s_pos, s) in domain.subsets().iter().enumerate() {
        for (i, a) in space.grams().iter().enumerate() {
            let Some((sign, t)) = wedge_with(s, i) else { continue };
            let t_pos = target.position(&t).expect("subset of the right size");
            for row in 0..d {
                for col in 0..d {
                    let x = &a[(row, col)];
                    if field.is_zero(x) {
                        continue;
                    }
                    let v = if sign > 0 { x.clone() } else { field.neg(x) };
                    sparse.accumulate(t_pos * d + row, s_pos * d + col, v);
                }
            }
        }
    }
    PsiMatrix {
        j,
        matrix: sparse.to_dense(),
    }
}

/// The κ-vector `(κ₀, …, κ_{e−1})` with `κ_j = rank ψ_j`, tagged with `(d, e)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KappaVector {
    pub d: usize,
    pub e: usize,
    pub entries: Vec<usize>,
}

impl KappaVector {
    /// Wraps given entries; `entries.len()` must equal `e`.
    pub fn new(d: usize, e: usize, entries: Vec<usize>) -> Self {
        assert_eq!(entries.len(), e, "a κ-vector has e entries");
        Self { d, e, entries }
    }

    pub fn get(&self, j: usize) -> usize {
        self.entries[j]
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries.iter().eq(self.entries.iter().rev())
    }

    /// Entrywise `≤`.
    pub fn le(&self, other: &[usize]) -> bool {
        self.entries.len() == other.len() && self.entries.iter().zip(other).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for KappaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Computes every `κ_j`. The ranks are computed in parallel.
///
/// Panics if the result is not symmetric, which would indicate an assembly bug.
pub fn kappa_vector<F: Field>(space: &QuadricSpace<F>) -> KappaVector {
    let e = space.e();
    let entries: Vec<usize> = (0..e)
        .into_par_iter()
        .map(|j| build_psi(space, j).matrix.rank())
        .collect();
    let k = KappaVector::new(space.d(), e, entries);
    assert!(k.is_symmetric(), "κ-vector {k} is not symmetric");
    k
}

/// `κ₀ = d − dim ∩ ker Aᵢ`, the rank of the stacked forms.
pub fn kappa_zero<F: Field>(space: &QuadricSpace<F>) -> usize {
    space.stacked().rank()
}

/// `ψ_{j+1} · ψ_j`, using `xᵢ ↦ yᵢ` to compose. `None` when `j + 2 > e`.
pub fn psi_compose<F: Field>(space: &QuadricSpace<F>, j: usize) -> Option<Matrix<F>> {
    (j + 2 <= space.e()).then(|| {
        let lower = build_psi(space, j).matrix;
        let upper = build_psi(space, j + 1).matrix;
        upper.mul(&lower)
    })
}

/// Sign of the permutation listing `subset` followed by its complement.
pub fn hodge_sign(subset: &[usize]) -> i64 {
    // inversions: pairs (s in S, c in complement) with s > c
    let inversions: usize = subset
        .iter()
        .map(|&s| (0..s).filter(|c| !subset.contains(c)).count())
        .sum();
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn complement(e: usize, subset: &[usize]) -> Vec<usize> {
    (0..e).filter(|x| !subset.contains(x)).collect()
}

/// `ψ_j` with its codomain `Λʲ⁺¹` re-expressed in `Λ^{e−j−1}` through the
/// Hodge star `e_T ↦ ε(T, Tᶜ)·e_{Tᶜ}`. When `e = 2j + 1` the result is
/// square with both sides indexed by `Λʲ`. For symmetric `Aᵢ` it is then
/// skew-symmetric when `j` is odd and symmetric when `j` is even.
pub fn star_psi<F: Field>(space: &QuadricSpace<F>, j: usize) -> Matrix<F> {
    let (d, e) = (space.d(), space.e());
    let psi = build_psi(space, j).matrix;
    let target = WedgeBasis::new(e, j + 1);
    let starred = WedgeBasis::new(e, e - j - 1);
    let field = space.field();
    let mut out = Matrix::zeros(field.clone(), psi.rows(), psi.cols());
    for (t_pos, t) in target.subsets().iter().enumerate() {
        let c = complement(e, t);
        let c_pos = starred.position(&c).expect("complement has the right size");
        let negate = hodge_sign(t) < 0;
        for row in 0..d {
            for col in 0..psi.cols() {
                let x = &psi[(t_pos * d + row, col)];
                out[(c_pos * d + row, col)] = if negate { field.neg(x) } else { x.clone() };
            }
        }
    }
    out
}
