//! Dual numbers `a + bε` with `ε² = 0` over an exact field.
//!
//! Evaluating a rational map on `x + εv` yields `f(x) + ε·Df(x)v`, so one
//! evaluation per coordinate direction gives an exact Jacobian column.

use super::field::{Field, Ring};
use super::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualScalar<E> {
    pub re: E,
    pub eps: E,
}

/// The ring `F[ε]/(ε²)`. It is local: `a + bε` is a unit iff `a ≠ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualRing<F: Field> {
    base: F,
}

impl<F: Field> DualRing<F> {
    pub fn new(base: F) -> Self {
        Self { base }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn constant(&self, a: F::Elem) -> DualScalar<F::Elem> {
        DualScalar {
            re: a,
            eps: self.base.zero(),
        }
    }

    pub fn new_elem(&self, re: F::Elem, eps: F::Elem) -> DualScalar<F::Elem> {
        DualScalar { re, eps }
    }

    /// Splits a dual matrix into its value and infinitesimal parts.
    pub fn split(&self, m: &Matrix<Self>) -> (Matrix<F>, Matrix<F>) {
        (
            m.map(self.base.clone(), |x| x.re.clone()),
            m.map(self.base.clone(), |x| x.eps.clone()),
        )
    }

    pub fn lift(&self, m: &Matrix<F>) -> Matrix<Self> {
        m.map(self.clone(), |x| self.constant(x.clone()))
    }
}

impl<F: Field> Ring for DualRing<F> {
    type Elem = DualScalar<F::Elem>;

    fn zero(&self) -> Self::Elem {
        self.constant(self.base.zero())
    }
    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.constant(self.base.from_i64(n))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        DualScalar {
            re: self.base.add(&a.re, &b.re),
            eps: self.base.add(&a.eps, &b.eps),
        }
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        DualScalar {
            re: self.base.sub(&a.re, &b.re),
            eps: self.base.sub(&a.eps, &b.eps),
        }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.base;
        DualScalar {
            re: f.mul(&a.re, &b.re),
            eps: f.add(&f.mul(&a.re, &b.eps), &f.mul(&a.eps, &b.re)),
        }
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        DualScalar {
            re: self.base.neg(&a.re),
            eps: self.base.neg(&a.eps),
        }
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.base.is_zero(&a.re) && self.base.is_zero(&a.eps)
    }
    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let f = &self.base;
        let inv = f.inv(&a.re)?;
        // (a + bε)⁻¹ = a⁻¹ − b·a⁻²·ε
        let eps = f.neg(&f.mul(&a.eps, &f.mul(&inv, &inv)));
        Some(DualScalar { re: inv, eps })
    }
}
