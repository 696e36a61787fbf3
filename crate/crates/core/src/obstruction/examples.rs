//! Worked examples with known κ-vectors, for golden tests and the CLI.

use serde::Serialize;

use super::{ObstructionError, Verdict};
use crate::linalg::{Rationals, Ring};
use crate::quadric::{parse_form, space_from_points, PointConfiguration, QuadricSpace};

/// What a registry example is known to produce.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectedResults {
    /// The full κ-vector.
    pub kappa: Vec<usize>,
    pub verdict: Verdict,
    /// A κ-cycle bound together with whether the example lies inside it.
    pub cycle: Option<(Vec<usize>, bool)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Example {
    pub name: String,
    pub description: String,
    pub space: QuadricSpace<Rationals>,
    pub expected: ExpectedResults,
}

/// Registry names; `e3-special-points(d)` takes any `d ≥ 3`.
pub fn example_names() -> Vec<&'static str> {
    vec!["d15-nonsmoothable", "a7-J-doubleprime", "e3-special-points(d)"]
}

fn space_from_polys(d: usize, polys: &[String]) -> QuadricSpace<Rationals> {
    let forms = polys
        .iter()
        .map(|p| parse_form(p, d, &Rationals).expect("registry forms parse"))
        .collect();
    QuadricSpace::new(forms).expect("registry forms are independent")
}

fn join(terms: impl Iterator<Item = String>) -> String {
    terms.collect::<Vec<_>>().join(" + ")
}

fn d15() -> Example {
    let d = 15;
    let polys = [
        join((1..=d).map(|i| format!("y{i}^2"))),
        join((1..=d).map(|i| format!("{i}*y{i}^2"))),
        join((1..=7).map(|i| format!("y{i}*y{}", 15 - i))),
    ];
    Example {
        name: "d15-nonsmoothable".into(),
        description:
            "three quadrics in 15 variables: sum of squares, weighted sum of squares, and y_i*y_(15-i) for i <= 7"
                .into(),
        space: space_from_polys(d, &polys),
        expected: ExpectedResults {
            kappa: vec![15, 44, 15],
            verdict: Verdict::Obstructed,
            cycle: None,
        },
    }
}

fn j_double_prime() -> Example {
    let polys = [
        "y1^2 + y2^2 + y3^2 + y4^2 + y5^2 + y6^2".to_string(),
        "y1^2 + 2*y2^2 + 3*y3^2 + 5*y4^2 + 7*y5^2 + 11*y6^2".to_string(),
        "y1*y6 + y2*y5 + y3*y4".to_string(),
    ];
    Example {
        name: "a7-J-doubleprime".into(),
        description: "the (1,6,3) component of a nonsmoothable (1,7,3) scheme; pad one variable to reach d = 7".into(),
        space: space_from_polys(6, &polys),
        expected: ExpectedResults {
            kappa: vec![6, 18, 6],
            verdict: Verdict::Obstructed,
            cycle: Some((vec![7, 16, 7], false)),
        },
    }
}

/// The origin, the standard basis, and the three residual points
/// `(1,…,1)`, `(1,1,0,…,0)`, `(0,…,0,1,1)` in affine `d`-space.
pub fn special_point_configuration(d: usize) -> PointConfiguration<Rationals> {
    assert!(d >= 3, "the residual points coincide for d < 3");
    let f = Rationals;
    let point = |ones: &[usize]| {
        let mut p = vec![f.zero(); d];
        for &i in ones {
            p[i] = f.one();
        }
        p
    };
    let mut points = vec![point(&[])];
    points.extend((0..d).map(|i| point(&[i])));
    points.push(point(&(0..d).collect::<Vec<_>>()));
    points.push(point(&[0, 1]));
    points.push(point(&[d - 2, d - 1]));
    PointConfiguration::new(f, d, points).expect("distinct points")
}

fn special_points(d: usize) -> Example {
    Example {
        name: format!("e3-special-points({d})"),
        description: format!("quadric space of {} reduced points in special position, d = {d}", d + 4),
        space: space_from_points(&special_point_configuration(d)).expect("frame is the standard simplex"),
        expected: ExpectedResults {
            kappa: vec![d, 2 * d + 2, d],
            verdict: Verdict::Unobstructed,
            cycle: Some((vec![d, 2 * d + 2, d], true)),
        },
    }
}

fn parse_special(name: &str) -> Option<usize> {
    let inner = name.strip_prefix("e3-special-points(")?.strip_suffix(')')?;
    inner.trim().parse().ok().filter(|&d| d >= 3)
}

pub fn example(name: &str) -> Result<Example, ObstructionError> {
    match name {
        "d15-nonsmoothable" => Ok(d15()),
        "a7-J-doubleprime" => Ok(j_double_prime()),
        _ => parse_special(name)
            .map(special_points)
            .ok_or_else(|| ObstructionError::UnknownExample(name.to_string())),
    }
}
