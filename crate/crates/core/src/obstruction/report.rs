use std::fmt;

use serde::Serialize;

use super::{
    is_purely_singular_net, nonsingular_quadric_probe, smoothability_verdict, BoundCheck, ProbeResult, Verdict,
};
use crate::betti::{betti_table, check_kappa_admissible, BettiTable, Violation};
use crate::koszul::{kappa_vector, KappaVector};
use crate::linalg::Field;
use crate::quadric::QuadricSpace;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

const PROBE_TRIALS: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conditions {
    pub graded: Vec<BoundCheck>,
    pub kappa_one: Option<BoundCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Admissibility {
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<Violation>,
}

/// Everything computed from a space's κ-vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KappaReport {
    pub schema_version: u32,
    pub field: String,
    pub d: usize,
    pub e: usize,
    pub kappa: Vec<usize>,
    pub verdict: Verdict,
    pub conditions: Conditions,
    pub betti: BettiTable,
    pub advisories: Vec<String>,
    pub admissibility: Admissibility,
}

impl KappaReport {
    pub fn kappa_vector(&self) -> KappaVector {
        KappaVector::new(self.d, self.e, self.kappa.clone())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Computes κ and every derived check. Unobstructed nets in 9 to 11
/// variables are also searched for a nonsingular quadric, first by random
/// probing and then through the net determinant.
pub fn kappa_report<F: Field>(space: &QuadricSpace<F>, field_name: &str, seed: u64) -> KappaReport {
    let k = kappa_vector(space);
    let mut verdict = smoothability_verdict(&k);
    if verdict.verdict == Verdict::Unobstructed && k.e == 3 && (9..=11).contains(&k.d) {
        let nonsingular = match nonsingular_quadric_probe(space, PROBE_TRIALS, seed) {
            ProbeResult::Certain { .. } => true,
            ProbeResult::LikelyPurelySingular { .. } => !is_purely_singular_net(space, seed).unwrap_or(true),
        };
        verdict.note_nonsingular_quadric(nonsingular);
    }
    let admissibility = match check_kappa_admissible(&k) {
        Ok(()) => Admissibility {
            ok: true,
            violation: None,
        },
        Err(v) => Admissibility {
            ok: false,
            violation: Some(v),
        },
    };
    KappaReport {
        schema_version: REPORT_SCHEMA_VERSION,
        field: field_name.to_string(),
        d: k.d,
        e: k.e,
        kappa: k.entries.clone(),
        verdict: verdict.verdict,
        conditions: Conditions {
            graded: verdict.graded,
            kappa_one: verdict.kappa_one,
        },
        betti: betti_table(&k).expect("computed κ is within range"),
        advisories: verdict.advisories,
        admissibility,
    }
}

fn check_line(f: &mut fmt::Formatter<'_>, label: &str, c: &BoundCheck) -> fmt::Result {
    writeln!(
        f,
        "  {label}: kappa_{} = {} <= {}  {}",
        c.index,
        c.value,
        c.bound,
        if c.holds { "ok" } else { "FAILS" }
    )
}

impl fmt::Display for KappaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field: {}   d = {}   e = {}", self.field, self.d, self.e)?;
        writeln!(f, "kappa = {}", self.kappa_vector())?;
        writeln!(f, "conditions:")?;
        for c in &self.conditions.graded {
            check_line(f, "graded   ", c)?;
        }
        if let Some(c) = &self.conditions.kappa_one {
            check_line(f, "kappa_one", c)?;
        }
        let verdict = match self.verdict {
            Verdict::Obstructed => "obstructed (not smoothable)",
            Verdict::Unobstructed => "unobstructed (necessary conditions hold)",
        };
        writeln!(f, "verdict: {verdict}")?;
        for a in &self.advisories {
            writeln!(f, "note: {a}")?;
        }
        match &self.admissibility.violation {
            None => writeln!(f, "admissibility: ok")?,
            Some(v) => writeln!(f, "admissibility: {v}")?,
        }
        writeln!(f, "betti table:")?;
        writeln!(f, "{}", self.betti)
    }
}
