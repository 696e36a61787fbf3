use serde::{Deserialize, Serialize};

use super::ObstructionError;
use crate::koszul::{binomial, KappaVector};

/// One inequality `value ≤ bound` on a κ entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub index: usize,
    pub value: usize,
    pub bound: usize,
    pub holds: bool,
}

impl BoundCheck {
    fn new(index: usize, value: usize, bound: usize) -> Self {
        Self {
            index,
            value,
            bound,
            holds: value <= bound,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// Some necessary condition fails: the scheme is not smoothable.
    Obstructed,
    /// All necessary conditions hold; in general no conclusion.
    Unobstructed,
}

/// The necessary smoothability conditions evaluated on a κ-vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothabilityVerdict {
    pub kappa: KappaVector,
    /// `κ_j ≤ (d+e)·C(e−1, j)` for `j = 1..e−1`.
    pub graded: Vec<BoundCheck>,
    /// `κ₁ ≤ (e−1)·d + C(e, 2)`, present when `e ≥ 2`.
    pub kappa_one: Option<BoundCheck>,
    pub verdict: Verdict,
    pub advisories: Vec<String>,
}

/// Char-0 sufficiency: for `e = 3` the conditions are also sufficient when
/// `d ≤ 8`, or when `d ≤ 11` and the space contains a nonsingular quadric.
pub const SUFFICIENCY_NOTE_SMALL: &str =
    "smoothable in characteristic 0: for e = 3 and d <= 8 the necessary conditions are sufficient";
pub const SUFFICIENCY_NOTE_NONSINGULAR: &str = "smoothable in characteristic 0: for e = 3 and d <= 11 the necessary conditions are sufficient when the space contains a nonsingular quadric";

pub fn smoothability_verdict(k: &KappaVector) -> SmoothabilityVerdict {
    let (d, e) = (k.d, k.e);
    assert!(e >= 1, "e must be positive");
    let graded: Vec<BoundCheck> = (1..e)
        .map(|j| BoundCheck::new(j, k.get(j), (d + e) * binomial(e - 1, j)))
        .collect();
    let kappa_one = (e >= 2).then(|| BoundCheck::new(1, k.get(1), (e - 1) * d + binomial(e, 2)));
    let ok = graded.iter().all(|c| c.holds) && kappa_one.as_ref().is_none_or(|c| c.holds);
    let verdict = if ok { Verdict::Unobstructed } else { Verdict::Obstructed };
    let mut advisories = Vec::new();
    if ok && e == 3 && d <= 8 {
        advisories.push(SUFFICIENCY_NOTE_SMALL.to_string());
    }
    SmoothabilityVerdict {
        kappa: k.clone(),
        graded,
        kappa_one,
        verdict,
        advisories,
    }
}

impl SmoothabilityVerdict {
    /// Adds the nonsingular-quadric advisory when it applies.
    pub fn note_nonsingular_quadric(&mut self, contains_nonsingular: bool) {
        let (d, e) = (self.kappa.d, self.kappa.e);
        if contains_nonsingular && self.verdict == Verdict::Unobstructed && e == 3 && (9..=11).contains(&d) {
            self.advisories.push(SUFFICIENCY_NOTE_NONSINGULAR.to_string());
        }
    }

    pub fn is_obstructed(&self) -> bool {
        self.verdict == Verdict::Obstructed
    }
}

/// An upper bound vector for κ-cycle membership.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KappaCycleSpec {
    pub bounds: Vec<usize>,
}

impl KappaCycleSpec {
    pub fn new(bounds: Vec<usize>) -> Self {
        assert!(bounds.iter().all(|&b| b > 0), "κ-cycle bounds are positive");
        Self { bounds }
    }
}

/// Whether `κ ≤ s` entrywise.
pub fn kappa_cycle_member(k: &KappaVector, spec: &KappaCycleSpec) -> Result<bool, ObstructionError> {
    if spec.bounds.len() != k.e {
        return Err(ObstructionError::LengthMismatch {
            expected: k.e,
            found: spec.bounds.len(),
        });
    }
    Ok(k.le(&spec.bounds))
}

/// The three deformation rows for a space with `d = 5`, `e = 3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeformationTable {
    pub kappa: KappaVector,
    /// `κ ≤ (5,12,5)`: deforms to nine distinct points.
    pub to_distinct_points: bool,
    /// `κ ≤ (4,12,4)`: deforms to a (1,4,3) scheme plus a reduced point.
    pub to_split_scheme: bool,
    /// `κ ≤ (4,10,4)`: deforms to a smoothable (1,4,3) scheme plus a reduced point.
    pub to_smoothable_split_scheme: bool,
}

pub const DEFORMATION_BOUNDS: [[usize; 3]; 3] = [[5, 12, 5], [4, 12, 4], [4, 10, 4]];

pub fn deformation_table_153(k: &KappaVector) -> Result<DeformationTable, ObstructionError> {
    if k.d != 5 || k.e != 3 {
        return Err(ObstructionError::WrongShape { d: k.d, e: k.e });
    }
    let [a, b, c] = DEFORMATION_BOUNDS.map(|s| k.le(&s));
    Ok(DeformationTable {
        kappa: k.clone(),
        to_distinct_points: a,
        to_split_scheme: b,
        to_smoothable_split_scheme: c,
    })
}

impl DeformationTable {
    pub fn rows(&self) -> [(&'static str, [usize; 3], bool); 3] {
        [
            (
                "union of 9 distinct points",
                DEFORMATION_BOUNDS[0],
                self.to_distinct_points,
            ),
            (
                "(1,4,3) scheme plus a point",
                DEFORMATION_BOUNDS[1],
                self.to_split_scheme,
            ),
            (
                "smoothable (1,4,3) scheme plus a point",
                DEFORMATION_BOUNDS[2],
                self.to_smoothable_split_scheme,
            ),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kv(d: usize, entries: &[usize]) -> KappaVector {
        KappaVector::new(d, entries.len(), entries.to_vec())
    }

    #[test]
    fn fifteen_variable_example_is_obstructed() {
        let v = smoothability_verdict(&kv(15, &[15, 44, 15]));
        assert_eq!(v.verdict, Verdict::Obstructed);
        let k1 = v.kappa_one.unwrap();
        assert_eq!((k1.bound, k1.holds), (33, false));
        assert_eq!(v.graded[0].bound, 36);
        assert!(v.advisories.is_empty());
    }

    #[test]
    fn generic_odd_d_is_obstructed() {
        // κ₁ = 3d − 1 = 20 > (e−1)d + 3 = 17 at d = 7
        let v = smoothability_verdict(&kv(7, &[7, 20, 7]));
        assert!(v.is_obstructed());
    }

    #[test]
    fn smoothable_value_is_unobstructed_with_advisory() {
        let v = smoothability_verdict(&kv(5, &[5, 12, 5]));
        assert_eq!(v.verdict, Verdict::Unobstructed);
        assert_eq!(v.advisories, vec![SUFFICIENCY_NOTE_SMALL.to_string()]);
        let mut v = smoothability_verdict(&kv(10, &[10, 22, 10]));
        assert!(v.advisories.is_empty());
        v.note_nonsingular_quadric(true);
        assert_eq!(v.advisories.len(), 1);
        let mut v = smoothability_verdict(&kv(12, &[12, 26, 12]));
        v.note_nonsingular_quadric(true);
        assert!(v.advisories.is_empty());
    }

    #[test]
    fn small_e_has_no_conditions() {
        let v = smoothability_verdict(&kv(4, &[4]));
        assert!(v.graded.is_empty());
        assert!(v.kappa_one.is_none());
        assert_eq!(v.verdict, Verdict::Unobstructed);
    }

    #[test]
    fn cycle_membership() {
        let spec = KappaCycleSpec::new(vec![5, 12, 5]);
        assert_eq!(kappa_cycle_member(&kv(5, &[5, 12, 5]), &spec), Ok(true));
        assert_eq!(
            kappa_cycle_member(&kv(7, &[6, 18, 6]), &KappaCycleSpec::new(vec![7, 16, 7])),
            Ok(false)
        );
        assert_eq!(
            kappa_cycle_member(&kv(4, &[4, 10, 4]), &KappaCycleSpec::new(vec![4, 12, 4])),
            Ok(true)
        );
        assert_eq!(
            kappa_cycle_member(&kv(4, &[4, 10, 4]), &KappaCycleSpec::new(vec![4, 12])),
            Err(ObstructionError::LengthMismatch { expected: 3, found: 2 })
        );
    }

    #[test]
    fn deformation_rows() {
        let t = deformation_table_153(&kv(5, &[5, 12, 5])).unwrap();
        assert_eq!(
            (t.to_distinct_points, t.to_split_scheme, t.to_smoothable_split_scheme),
            (true, false, false)
        );
        let t = deformation_table_153(&kv(5, &[4, 12, 4])).unwrap();
        assert_eq!(
            (t.to_distinct_points, t.to_split_scheme, t.to_smoothable_split_scheme),
            (true, true, false)
        );
        let t = deformation_table_153(&kv(5, &[4, 10, 4])).unwrap();
        assert_eq!(
            (t.to_distinct_points, t.to_split_scheme, t.to_smoothable_split_scheme),
            (true, true, true)
        );
        assert_eq!(
            deformation_table_153(&kv(4, &[4, 10, 4])),
            Err(ObstructionError::WrongShape { d: 4, e: 3 })
        );
    }
}
