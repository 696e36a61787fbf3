//! Quadratic forms in the dual variables `y1..yd`, stored as Gram matrices.
//!
//! The off-diagonal Gram entry is half the coefficient of `yi*yj`, so the
//! square of a linear form `Σ aᵢyᵢ` has Gram matrix `a·aᵀ`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::linalg::{format_rational, Field, Matrix, Rationals};

/// A quadratic form given by its symmetric Gram matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticForm<F: Field> {
    matrix: Matrix<F>,
}

impl<F: Field> QuadraticForm<F> {
    /// Wraps a Gram matrix, returning `None` if it is not square and symmetric.
    pub fn from_gram(matrix: Matrix<F>) -> Option<Self> {
        matrix.is_symmetric().then_some(Self { matrix })
    }

    pub fn zero(field: F, d: usize) -> Self {
        Self {
            matrix: Matrix::zeros(field, d, d),
        }
    }

    /// The square of the linear form `Σ coeffs[i]·y(i+1)`.
    pub fn square_of_linear(field: F, coeffs: &[F::Elem]) -> Self {
        let d = coeffs.len();
        Self {
            matrix: Matrix::from_fn(field.clone(), d, d, |i, j| field.mul(&coeffs[i], &coeffs[j])),
        }
    }

    pub fn d(&self) -> usize {
        self.matrix.rows()
    }

    pub fn gram(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn into_gram(self) -> Matrix<F> {
        self.matrix
    }

    pub fn field(&self) -> &F {
        self.matrix.ring()
    }

    /// Upper-triangular Gram entries, row by row; a coordinate vector of the
    /// form in the `d(d+1)/2`-dimensional space of quadrics.
    pub fn coordinates(&self) -> Vec<F::Elem> {
        let d = self.d();
        let mut out = Vec::with_capacity(d * (d + 1) / 2);
        for i in 0..d {
            for j in i..d {
                out.push(self.matrix[(i, j)].clone());
            }
        }
        out
    }

    /// Renders the form in the parser's syntax, e.g. `y1^2 - 2*y1*y3`.
    pub fn to_poly_string(&self) -> String {
        let field = self.field();
        let two = field.from_i64(2);
        let mut terms = Vec::new();
        for i in 0..self.d() {
            for j in i..self.d() {
                let c = &self.matrix[(i, j)];
                if field.is_zero(c) {
                    continue;
                }
                let c = if i == j { c.clone() } else { field.mul(c, &two) };
                let mono = if i == j {
                    format!("y{}^2", i + 1)
                } else {
                    format!("y{}*y{}", i + 1, j + 1)
                };
                terms.push((field.format(&c), mono));
            }
        }
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (coef, mono)) in terms.into_iter().enumerate() {
            let (neg, mag) = match coef.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, coef),
            };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mag != "1" {
                out.push_str(&mag);
                out.push('*');
            }
            out.push_str(&mono);
        }
        out
    }
}

/// A syntax error in a quadratic-form string, with a 0-based byte offset.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("at column {}: {message}", .position + 1)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    fn new(position: usize, message: impl Into<String>) -> Self {
        Self {
            position,
            message: message.into(),
        }
    }
}

struct Lexer<'a> {
    text: &'a [u8],
    pos: usize,
}

impl Lexer<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<(usize, &str)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| {
            let s = std::str::from_utf8(&self.text[start..self.pos]).expect("ascii digits");
            (start, s)
        })
    }

    fn number(&mut self) -> Result<Option<BigRational>, ParseError> {
        let Some((_, num)) = self.digits() else {
            return Ok(None);
        };
        let num: BigInt = num.parse().expect("digit string");
        if !self.eat(b'/') {
            return Ok(Some(BigRational::from_integer(num)));
        }
        let at = self.pos;
        let (_, den) = self
            .digits()
            .ok_or_else(|| ParseError::new(at, "expected a denominator after '/'"))?;
        let den: BigInt = den.parse().expect("digit string");
        if den.is_zero() {
            return Err(ParseError::new(at, "zero denominator"));
        }
        Ok(Some(BigRational::new(num, den)))
    }

    fn small_int(&mut self, what: &str) -> Result<(usize, usize), ParseError> {
        let at = self.pos;
        let (start, s) = self
            .digits()
            .ok_or_else(|| ParseError::new(at, format!("expected {what}")))?;
        let v = s
            .parse::<usize>()
            .map_err(|_| ParseError::new(start, format!("{what} too large")))?;
        Ok((start, v))
    }

    /// `y<index>` optionally followed by `^<exponent>`; returns (index, exponent).
    fn variable(&mut self, d: usize) -> Result<(usize, usize), ParseError> {
        let (start, index) = self.small_int("a variable index")?;
        if index == 0 || index > d {
            return Err(ParseError::new(
                start,
                format!("variable y{index} out of range y1..y{d}"),
            ));
        }
        let exp = if self.eat(b'^') {
            self.small_int("an exponent")?.1
        } else {
            1
        };
        Ok((index - 1, exp))
    }
}

/// Parses a sum of terms `c`, `c*yi^2`, `c*yi*yj` into a Gram matrix over ℚ.
///
/// Coefficients are integers or fractions `a/b`; a missing coefficient means
/// 1. Every term must have degree exactly two.
pub fn parse_form_rational(text: &str, d: usize) -> Result<Matrix<Rationals>, ParseError> {
    let mut lx = Lexer {
        text: text.as_bytes(),
        pos: 0,
    };
    let mut gram = Matrix::zeros(Rationals, d, d);
    let half = BigRational::new(1.into(), 2.into());
    if lx.peek().is_none() {
        return Err(ParseError::new(0, "empty form"));
    }
    let mut first = true;
    loop {
        let term_start = {
            lx.skip_ws();
            lx.pos
        };
        let mut sign = BigRational::one();
        if lx.eat(b'-') {
            sign = -sign;
        } else if !lx.eat(b'+') && !first {
            let at = lx.pos;
            return Err(ParseError::new(at, "expected '+' or '-' between terms"));
        }
        first = false;

        let mut coef = sign;
        let mut vars: Vec<usize> = Vec::new();
        let mut expect_factor = true;
        while expect_factor {
            let at = {
                lx.skip_ws();
                lx.pos
            };
            match lx.peek() {
                Some(b'y') => {
                    lx.pos += 1;
                    let (v, exp) = lx.variable(d)?;
                    vars.extend(std::iter::repeat_n(v, exp));
                }
                Some(c) if c.is_ascii_digit() => {
                    let n = lx.number()?.expect("digit present");
                    coef *= n;
                }
                Some(c) => {
                    return Err(ParseError::new(at, format!("unexpected character '{}'", c as char)));
                }
                None => return Err(ParseError::new(at, "unexpected end of input")),
            }
            expect_factor = lx.eat(b'*');
        }
        match vars.len() {
            0 if coef.is_zero() => {}
            0 => return Err(ParseError::new(term_start, "constant term in a quadratic form")),
            1 => return Err(ParseError::new(term_start, "linear term in a quadratic form")),
            2 => {
                let (i, j) = (vars[0], vars[1]);
                if i == j {
                    gram[(i, i)] += &coef;
                } else {
                    let h = &coef * &half;
                    gram[(i, j)] += &h;
                    gram[(j, i)] += &h;
                }
            }
            k => {
                return Err(ParseError::new(
                    term_start,
                    format!("term of degree {k}; only quadratic monomials are allowed"),
                ))
            }
        }
        match lx.peek() {
            None => break,
            Some(b'+') | Some(b'-') => continue,
            Some(c) => {
                let at = lx.pos;
                return Err(ParseError::new(at, format!("unexpected character '{}'", c as char)));
            }
        }
    }
    Ok(gram)
}

/// Parses a quadratic form over `field`; see [`parse_form_rational`].
pub fn parse_form<F: Field>(text: &str, d: usize, field: &F) -> Result<QuadraticForm<F>, ParseError> {
    let gram = parse_form_rational(text, d)?;
    let mut entries = Vec::with_capacity(d * d);
    for q in gram.entries() {
        let x = field.from_rational(q).map_err(|_| {
            ParseError::new(
                0,
                format!("coefficient {} is undefined in {}", format_rational(q), field.spec()),
            )
        })?;
        entries.push(x);
    }
    let matrix = Matrix::from_fn(field.clone(), d, d, |i, j| entries[i * d + j].clone());
    Ok(QuadraticForm { matrix })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Ring};
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn single_square() {
        let f = parse_form("y1^2", 2, &Rationals).unwrap();
        assert_eq!(f.gram(), &Matrix::from_i64_rows(Rationals, &[&[1, 0], &[0, 0]]));
    }

    #[test]
    fn mixed_term_is_halved() {
        let f = parse_form("y1*y2", 2, &Rationals).unwrap();
        let g = f.gram();
        assert_eq!(g[(0, 1)], q(1, 2));
        assert_eq!(g[(1, 0)], q(1, 2));
        assert_eq!(g[(0, 0)], q(0, 1));
    }

    #[test]
    fn square_of_linear_form_is_rank_one() {
        let f = parse_form("y1^2+2*y1*y2+y2^2", 2, &Rationals).unwrap();
        assert_eq!(f.gram(), &Matrix::from_i64_rows(Rationals, &[&[1, 1], &[1, 1]]));
        assert_eq!(f.gram().rank(), 1);
    }

    #[test]
    fn rational_coefficients_and_spacing() {
        let f = parse_form(" -3/4 * y2 ^ 2 + y1*y2", 2, &Rationals).unwrap();
        assert_eq!(f.gram()[(1, 1)], q(-3, 4));
        assert_eq!(f.gram()[(0, 1)], q(1, 2));
    }

    #[test]
    fn repeated_monomials_accumulate() {
        let f = parse_form("y1*y2 + y2*y1 - y1^2 + 2*y1^2", 2, &Rationals).unwrap();
        assert_eq!(f.gram()[(0, 1)], q(1, 1));
        assert_eq!(f.gram()[(0, 0)], q(1, 1));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_form_rational("y1^2 + y3", 2).unwrap_err();
        assert_eq!(e.position, 8);
        assert!(e.message.contains("out of range"));

        let e = parse_form_rational("y1^2 + y2", 2).unwrap_err();
        assert_eq!(e.position, 5);
        assert!(e.message.contains("linear"));

        let e = parse_form_rational("y1^2 + 3", 2).unwrap_err();
        assert!(e.message.contains("constant"));

        let e = parse_form_rational("y1*y2*y2", 2).unwrap_err();
        assert!(e.message.contains("degree 3"));

        let e = parse_form_rational("y1^2 y2^2", 2).unwrap_err();
        assert_eq!(e.position, 5);

        assert!(parse_form_rational("", 2).is_err());
        assert!(parse_form_rational("y1^2 +", 2).is_err());
        assert!(parse_form_rational("1/0*y1^2", 2).is_err());
        assert!(parse_form_rational("x1^2", 2).is_err());
    }

    #[test]
    fn reduction_modulo_prime() {
        let f7 = PrimeField::new(7).unwrap();
        let f = parse_form("y1*y2", 2, &f7).unwrap();
        assert_eq!(f.gram()[(0, 1)], 4);
        assert!(parse_form("1/7*y1^2", 2, &f7).is_err());
    }

    #[test]
    fn poly_string_round_trip() {
        let text = "y1^2 - 2*y1*y3 + 1/3*y2*y3";
        let f = parse_form(text, 3, &Rationals).unwrap();
        assert_eq!(f.to_poly_string(), text);
        assert_eq!(QuadraticForm::zero(Rationals, 2).to_poly_string(), "0");
    }

    proptest! {
        #[test]
        fn square_of_linear_text_is_rank_one(coeffs in proptest::collection::vec(-5i64..6, 1..6)) {
            prop_assume!(coeffs.iter().any(|&c| c != 0));
            // expand (Σ cᵢ yᵢ)² as text
            let d = coeffs.len();
            let mut terms = Vec::new();
            for i in 0..d {
                for j in i..d {
                    let c = if i == j { coeffs[i] * coeffs[i] } else { 2 * coeffs[i] * coeffs[j] };
                    let mono = if i == j { format!("y{}^2", i + 1) } else { format!("y{}*y{}", i + 1, j + 1) };
                    terms.push(if c < 0 { format!("- {}*{mono}", -c) } else { format!("+ {c}*{mono}") });
                }
            }
            let text = terms.join(" ");
            let f = parse_form(&text, d, &Rationals).unwrap();
            prop_assert_eq!(f.gram().rank(), 1);
            let a: Vec<_> = coeffs.iter().map(|&c| Rationals.from_i64(c)).collect();
            prop_assert_eq!(f, QuadraticForm::square_of_linear(Rationals, &a));
        }
    }
}
