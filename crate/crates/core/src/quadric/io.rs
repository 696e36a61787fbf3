//! JSON and CSV documents for quadric spaces and point configurations.
//!
//! A space document looks like
//!
//! ```json
//! { "field": "Q", "d": 2, "basis": [ { "poly": "y1^2 - y2^2" },
//!                                    { "matrix": [["0", "1/2"], ["1/2", "0"]] } ] }
//! ```
//!
//! Matrix entries are rational strings (`"3"`, `"-1/2"`) or JSON integers.
//! The document is read over ℚ first and then mapped into the requested field,
//! so a prime-field document may still use fractions whose denominators are
//! prime to p.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::form::{parse_form_rational, QuadraticForm};
use super::points::PointConfiguration;
use super::space::QuadricSpace;
use super::QuadricError;
use crate::linalg::{parse_rational, Field, FieldSpec, Matrix, PrimeField, Rationals};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDocument {
    pub field: FieldSpec,
    pub d: usize,
    pub basis: Vec<FormEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormEntry {
    Poly(String),
    Matrix(Vec<Vec<Scalar>>),
}

/// A matrix entry: a JSON integer or a rational string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    fn to_rational(&self) -> Result<BigRational, QuadricError> {
        match self {
            Scalar::Int(n) => Ok(BigRational::from_integer((*n).into())),
            Scalar::Text(s) => parse_rational(s).map_err(|_| QuadricError::Format(format!("bad number {s:?}"))),
        }
    }
}

/// A quadric space over a field chosen at run time.
#[derive(Clone, Debug, PartialEq)]
pub enum AnySpace {
    Rational(QuadricSpace<Rationals>),
    Prime(QuadricSpace<PrimeField>),
}

impl AnySpace {
    pub fn field_spec(&self) -> FieldSpec {
        match self {
            AnySpace::Rational(_) => FieldSpec::Rational,
            AnySpace::Prime(v) => v.field().spec(),
        }
    }

    pub fn d(&self) -> usize {
        match self {
            AnySpace::Rational(v) => v.d(),
            AnySpace::Prime(v) => v.d(),
        }
    }

    pub fn e(&self) -> usize {
        match self {
            AnySpace::Rational(v) => v.e(),
            AnySpace::Prime(v) => v.e(),
        }
    }
}

impl SpaceDocument {
    /// Reads the basis as Gram matrices over ℚ, checking shape and symmetry.
    pub fn rational_grams(&self) -> Result<Vec<Matrix<Rationals>>, QuadricError> {
        let d = self.d;
        if d == 0 {
            return Err(QuadricError::Format("d must be positive".into()));
        }
        if self.basis.is_empty() {
            return Err(QuadricError::Format("basis is empty".into()));
        }
        self.basis
            .iter()
            .enumerate()
            .map(|(k, entry)| match entry {
                FormEntry::Poly(text) => {
                    parse_form_rational(text, d).map_err(|e| QuadricError::Parse { index: k, error: e })
                }
                FormEntry::Matrix(rows) => {
                    if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                        return Err(QuadricError::Format(format!("basis[{k}]: matrix must be {d}x{d}")));
                    }
                    let mut m = Matrix::zeros(Rationals, d, d);
                    for (i, row) in rows.iter().enumerate() {
                        for (j, x) in row.iter().enumerate() {
                            m[(i, j)] = x.to_rational()?;
                        }
                    }
                    if !m.is_symmetric() {
                        return Err(QuadricError::Format(format!("basis[{k}]: matrix is not symmetric")));
                    }
                    Ok(m)
                }
            })
            .collect()
    }

    /// Builds the space over the document's field, or over `field` if given.
    pub fn to_space(&self, field: Option<FieldSpec>) -> Result<AnySpace, QuadricError> {
        let grams = self.rational_grams()?;
        let rational = QuadricSpace::from_grams(grams)?;
        let space = match field.unwrap_or(self.field) {
            FieldSpec::Rational => AnySpace::Rational(QuadricSpace::new(rational.forms())?),
            FieldSpec::Prime(p) => {
                let fp = PrimeField::new(p)?;
                let reduced = rational.map_field(&fp, |q| fp.from_rational(q))?;
                AnySpace::Prime(QuadricSpace::new(reduced.forms())?)
            }
        };
        Ok(space)
    }

    /// Describes a space with explicit Gram matrices.
    pub fn from_space<F: Field>(space: &QuadricSpace<F>) -> Self {
        let f = space.field();
        let basis = space
            .grams()
            .iter()
            .map(|a| {
                FormEntry::Matrix(
                    a.to_rows()
                        .iter()
                        .map(|r| r.iter().map(|x| Scalar::Text(f.format(x))).collect())
                        .collect(),
                )
            })
            .collect();
        Self {
            field: f.spec(),
            d: space.d(),
            basis,
        }
    }

    /// Describes a space with polynomial strings.
    pub fn from_space_poly<F: Field>(space: &QuadricSpace<F>) -> Self {
        Self {
            field: space.field().spec(),
            d: space.d(),
            basis: space
                .forms()
                .iter()
                .map(|q: &QuadraticForm<F>| FormEntry::Poly(q.to_poly_string()))
                .collect(),
        }
    }
}

/// Parses a space document and builds the space.
pub fn read_space(json: &str, field: Option<FieldSpec>) -> Result<AnySpace, QuadricError> {
    let doc: SpaceDocument = serde_json::from_str(json).map_err(|e| QuadricError::Format(e.to_string()))?;
    doc.to_space(field)
}

pub fn write_space<F: Field>(space: &QuadricSpace<F>) -> String {
    serde_json::to_string_pretty(&SpaceDocument::from_space(space)).expect("documents serialize")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointsDocument {
    #[serde(default = "rational_spec")]
    pub field: FieldSpec,
    pub d: usize,
    pub points: Vec<Vec<Scalar>>,
}

fn rational_spec() -> FieldSpec {
    FieldSpec::Rational
}

/// Point coordinates read over ℚ, with the field they are meant for.
#[derive(Clone, Debug, PartialEq)]
pub struct RawPoints {
    pub field: FieldSpec,
    pub d: usize,
    pub rows: Vec<Vec<BigRational>>,
}

impl RawPoints {
    /// Reads a JSON points document, or CSV (one point per line, `#` comments) otherwise.
    pub fn parse(text: &str) -> Result<Self, QuadricError> {
        if text.trim_start().starts_with('{') {
            let doc: PointsDocument = serde_json::from_str(text).map_err(|e| QuadricError::Format(e.to_string()))?;
            let rows = doc
                .points
                .iter()
                .map(|r| r.iter().map(Scalar::to_rational).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(Self {
                field: doc.field,
                d: doc.d,
                rows,
            });
        }
        let mut rows = Vec::new();
        for (line_no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .split(',')
                .map(|cell| {
                    parse_rational(cell).map_err(|_| {
                        QuadricError::Format(format!("line {}: bad number {:?}", line_no + 1, cell.trim()))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        let d = rows
            .first()
            .map(Vec::len)
            .ok_or_else(|| QuadricError::Format("no points".into()))?;
        Ok(Self {
            field: FieldSpec::Rational,
            d,
            rows,
        })
    }

    pub fn configuration<F: Field>(&self, field: &F) -> Result<PointConfiguration<F>, QuadricError> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|q| field.from_rational(q)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        PointConfiguration::new(field.clone(), self.d, rows)
    }

    pub fn to_document(&self) -> PointsDocument {
        PointsDocument {
            field: self.field,
            d: self.d,
            points: self
                .rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|q| Scalar::Text(crate::linalg::format_rational(q)))
                        .collect()
                })
                .collect(),
        }
    }
}
