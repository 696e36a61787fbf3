use rand::RngCore;

use super::form::QuadraticForm;
use super::QuadricError;
use crate::linalg::{Field, Matrix};

/// An `e`-dimensional space of quadratic forms in `d` variables, given by a
/// basis of Gram matrices `A₁, …, A_e`.
///
/// Spaces built with [`QuadricSpace::tuple`] may have a dependent (even zero)
/// basis. All rank invariants are defined for such tuples as well, and some
/// constructions need them.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadricSpace<F: Field> {
    field: F,
    d: usize,
    basis: Vec<Matrix<F>>,
}

impl<F: Field> QuadricSpace<F> {
    /// Builds a space from linearly independent forms.
    pub fn new(forms: Vec<QuadraticForm<F>>) -> Result<Self, QuadricError> {
        let space = Self::tuple(forms)?;
        let e = space.e();
        let max = space.d * (space.d + 1) / 2;
        if e > max {
            return Err(QuadricError::TooManyForms { e, max });
        }
        let rank = space.span_dimension();
        if rank < e {
            return Err(QuadricError::DependentBasis { rank, e });
        }
        Ok(space)
    }

    /// Builds a tuple of forms without checking linear independence.
    pub fn tuple(forms: Vec<QuadraticForm<F>>) -> Result<Self, QuadricError> {
        let first = forms.first().ok_or(QuadricError::Empty)?;
        let field = first.field().clone();
        let d = first.d();
        let mut basis = Vec::with_capacity(forms.len());
        for (i, f) in forms.into_iter().enumerate() {
            if f.d() != d {
                return Err(QuadricError::VariableCountMismatch {
                    index: i,
                    expected: d,
                    found: f.d(),
                });
            }
            basis.push(f.into_gram());
        }
        Ok(Self { field, d, basis })
    }

    /// Builds a tuple from raw Gram matrices, which must be symmetric.
    pub fn from_grams(grams: Vec<Matrix<F>>) -> Result<Self, QuadricError> {
        let forms = grams
            .into_iter()
            .enumerate()
            .map(|(i, m)| QuadraticForm::from_gram(m).ok_or(QuadricError::NotSymmetric { index: i }))
            .collect::<Result<Vec<_>, _>>()?;
        Self::tuple(forms)
    }

    /// A random space of `e` forms with i.i.d. entries drawn by [`Field::sample`].
    /// Not checked for independence.
    pub fn random(field: &F, d: usize, e: usize, rng: &mut dyn RngCore) -> Self {
        let basis = (0..e).map(|_| random_symmetric(field, d, rng)).collect();
        Self {
            field: field.clone(),
            d,
            basis,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn e(&self) -> usize {
        self.basis.len()
    }

    pub fn grams(&self) -> &[Matrix<F>] {
        &self.basis
    }

    pub fn form(&self, i: usize) -> QuadraticForm<F> {
        QuadraticForm::from_gram(self.basis[i].clone()).expect("basis matrices are symmetric")
    }

    pub fn forms(&self) -> Vec<QuadraticForm<F>> {
        (0..self.e()).map(|i| self.form(i)).collect()
    }

    /// Dimension of the span of the basis forms.
    pub fn span_dimension(&self) -> usize {
        self.coordinate_matrix().rank()
    }

    pub fn is_independent(&self) -> bool {
        self.span_dimension() == self.e()
    }

    /// The `e × d(d+1)/2` matrix whose rows are the upper-triangular Gram
    /// entries of the basis forms.
    pub fn coordinate_matrix(&self) -> Matrix<F> {
        let rows = self.forms().iter().map(QuadraticForm::coordinates).collect();
        Matrix::from_rows(self.field.clone(), rows).expect("equal-length coordinate vectors")
    }

    /// The `e·d × d` matrix `(A₁; …; A_e)`.
    pub fn stacked(&self) -> Matrix<F> {
        let refs: Vec<&Matrix<F>> = self.basis.iter().collect();
        Matrix::vstack(self.field.clone(), &refs)
    }

    /// Replaces each `Aᵢ` by `gᵀ·Aᵢ·g`.
    pub fn change_coordinates(&self, g: &Matrix<F>) -> Result<Self, QuadricError> {
        if g.rows() != self.d || g.cols() != self.d || !g.is_invertible() {
            return Err(QuadricError::SingularTransform);
        }
        let gt = g.transpose();
        let basis = self.basis.iter().map(|a| gt.mul(a).mul(g)).collect();
        Ok(Self {
            field: self.field.clone(),
            d: self.d,
            basis,
        })
    }

    /// Replaces the basis by `A'_k = Σᵢ h[i][k]·Aᵢ` for an invertible `e × e` matrix `h`.
    pub fn change_basis(&self, h: &Matrix<F>) -> Result<Self, QuadricError> {
        let e = self.e();
        if h.rows() != e || h.cols() != e || !h.is_invertible() {
            return Err(QuadricError::SingularTransform);
        }
        let f = &self.field;
        let basis = (0..e)
            .map(|k| {
                let mut acc = Matrix::zeros(f.clone(), self.d, self.d);
                for (i, a) in self.basis.iter().enumerate() {
                    if !f.is_zero(&h[(i, k)]) {
                        acc = acc.add(&a.scale(&h[(i, k)]));
                    }
                }
                acc
            })
            .collect();
        Ok(Self {
            field: f.clone(),
            d: self.d,
            basis,
        })
    }

    /// Embeds the forms into `d + extra` variables; the new variables do not occur.
    pub fn pad_variables(&self, extra: usize) -> Self {
        let d = self.d + extra;
        let zero = self.field.zero();
        let basis = self
            .basis
            .iter()
            .map(|a| {
                Matrix::from_fn(self.field.clone(), d, d, |i, j| {
                    if i < self.d && j < self.d {
                        a[(i, j)].clone()
                    } else {
                        zero.clone()
                    }
                })
            })
            .collect();
        Self {
            field: self.field.clone(),
            d,
            basis,
        }
    }

    /// Keeps only the first `d` variables (rows and columns) of every form.
    pub fn truncate_variables(&self, d: usize) -> Self {
        assert!(d <= self.d);
        let idx: Vec<usize> = (0..d).collect();
        Self {
            field: self.field.clone(),
            d,
            basis: self.basis.iter().map(|a| a.submatrix(&idx, &idx)).collect(),
        }
    }

    /// Appends a form to the tuple.
    pub fn with_form(&self, form: QuadraticForm<F>) -> Result<Self, QuadricError> {
        let mut forms = self.forms();
        forms.push(form);
        Self::tuple(forms)
    }

    /// Maps the space into another field (for instance ℚ to 𝔽_p).
    pub fn map_field<G: Field>(
        &self,
        target: &G,
        mut f: impl FnMut(&F::Elem) -> Result<G::Elem, crate::linalg::LinalgError>,
    ) -> Result<QuadricSpace<G>, QuadricError> {
        let mut basis = Vec::with_capacity(self.e());
        for a in &self.basis {
            let mut entries = Vec::with_capacity(self.d * self.d);
            for x in a.entries() {
                entries.push(f(x)?);
            }
            basis.push(Matrix::from_fn(target.clone(), self.d, self.d, |i, j| {
                entries[i * self.d + j].clone()
            }));
        }
        Ok(QuadricSpace {
            field: target.clone(),
            d: self.d,
            basis,
        })
    }
}

/// A random symmetric `d × d` matrix with entries from [`Field::sample`].
pub fn random_symmetric<F: Field>(field: &F, d: usize, rng: &mut dyn RngCore) -> Matrix<F> {
    let mut m = Matrix::zeros(field.clone(), d, d);
    for i in 0..d {
        for j in i..d {
            let x = field.sample(rng);
            m[(j, i)] = x.clone();
            m[(i, j)] = x;
        }
    }
    m
}

/// A random invertible `n × n` matrix, resampled until nonsingular.
pub fn random_invertible<F: Field>(field: &F, n: usize, rng: &mut dyn RngCore) -> Matrix<F> {
    loop {
        let m = Matrix::from_fn(field.clone(), n, n, |_, _| field.sample(rng));
        if m.is_invertible() {
            return m;
        }
    }
}
