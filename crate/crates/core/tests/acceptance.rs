//! Acceptance criteria, one pass/fail line each. Runs without the libtest
//! harness so the lines always show up in `cargo test` output.
//!
//! Set `KAPPA_LARGE_DIMENSION=1` to include the d = 9, 10, 11 dimension rows.

mod common;

use std::time::{Duration, Instant};

use kappa::betti::{betti_table, boij_soderberg_bound, check_kappa_admissible};
use kappa::dimension::{known_net_dimension, smoothable_locus_dimension_lower_bound};
use kappa::koszul::{binomial, build_psi, kappa_vector, psi_compose, star_psi, KappaVector};
use kappa::linalg::{Matrix, Rationals};
use kappa::obstruction::{
    example, net_determinant, net_monomials, sample_generic_kappa, smoothability_verdict, Verdict,
};
use kappa::quadric::{random_invertible, random_symmetric, space_from_points, QuadraticForm, QuadricSpace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{column_type_oracle, commutator_counterexamples, fp, naive_psi, random_points};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

struct Runner {
    failures: usize,
}

impl Runner {
    fn run(&mut self, id: &str, budget: Option<Duration>, check: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let mut result = check();
        let elapsed = start.elapsed();
        if let Some(limit) = budget {
            if elapsed > limit {
                result.passed = false;
                result.detail = format!("{}; exceeded {:?}", result.detail, limit);
            }
        }
        if !result.passed {
            self.failures += 1;
        }
        println!(
            "[{}] {id}: {} ({:.2}s)",
            if result.passed { "PASS" } else { "FAIL" },
            result.detail,
            elapsed.as_secs_f64()
        );
    }
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn golden_d15() -> Outcome {
    let ex = example("d15-nonsmoothable").unwrap();
    let k = kappa_vector(&ex.space);
    let verdict = smoothability_verdict(&k).verdict;
    outcome(
        k.get(1) == 44 && verdict == Verdict::Obstructed,
        format!("kappa = {k}, verdict {verdict:?}"),
    )
}

fn golden_j_double_prime() -> Outcome {
    let ex = example("a7-J-doubleprime").unwrap();
    let k = kappa_vector(&ex.space);
    outcome(k.entries == [6, 18, 6], format!("kappa = {k}"))
}

fn golden_generic_five() -> Outcome {
    let s = sample_generic_kappa(5, 5, 10007, 50, 0xC0FFEE).unwrap();
    let hits = s.count(&[5, 25, 50, 25, 5]);
    outcome(hits * 100 >= 95 * 50, format!("(5, 25, 50, 25, 5) in {hits}/50 trials"))
}

fn golden_special_points() -> Outcome {
    let mut values = Vec::new();
    let mut ok = true;
    for d in 4..=8 {
        let ex = example(&format!("e3-special-points({d})")).unwrap();
        let k1 = kappa_vector(&ex.space).get(1);
        ok &= k1 == 2 * d + 2;
        values.push(format!("d={d}: {k1}"));
    }
    outcome(ok, format!("kappa_1 {}", values.join(", ")))
}

fn betti_criterion() -> Outcome {
    let t = betti_table(&KappaVector::new(5, 5, vec![5, 25, 50, 25, 5])).unwrap();
    let diagram_ok = t.top == [5, 20, 25, 0, 0, 0] && t.bottom == [0, 0, 0, 25, 20, 5];
    let bound = boij_soderberg_bound(5, 5, 1, 22);
    let b2 = bound.iter().find(|b| b.index == 2).map(|b| b.floor);
    outcome(
        diagram_ok && b2 == Some(42),
        format!("top {:?}, bottom {:?}, bound on kappa_2 = {b2:?}", t.top, t.bottom),
    )
}

fn dimension_criterion(rows: std::ops::RangeInclusive<usize>) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for d in rows {
        let r = smoothable_locus_dimension_lower_bound(d, 3, 0xC0FFEE);
        let expected = known_net_dimension(d);
        ok &= r.as_ref().ok().copied() == expected;
        parts.push(format!("d={d}: {r:?} (expected {expected:?})"));
    }
    outcome(ok, parts.join(", "))
}

fn commutator_criterion() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for d in 4..=8 {
        let (checked, bad) = commutator_counterexamples(d, 200, 0xC0FFEE + d as u64);
        ok &= bad == 0;
        parts.push(format!("d={d}: {bad}/{checked}"));
    }
    outcome(ok, format!("counterexamples {}", parts.join(", ")))
}

fn invariance_criterion() -> Outcome {
    let f = fp();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut bad = 0;
    for (d, e) in [(3, 3), (4, 3), (5, 3), (4, 4)] {
        let v = QuadricSpace::random(&f, d, e, &mut rng);
        let k = kappa_vector(&v);
        for _ in 0..100 {
            let h = random_invertible(&f, e, &mut rng);
            let g = random_invertible(&f, d, &mut rng);
            bad += usize::from(kappa_vector(&v.change_basis(&h).unwrap()) != k);
            bad += usize::from(kappa_vector(&v.change_coordinates(&g).unwrap()) != k);
        }
    }
    outcome(bad == 0, format!("{bad} mismatches over 800 transforms"))
}

fn symmetry_criterion() -> Outcome {
    let f = fp();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut bad = 0;
    for n in 0..100 {
        let d = 2 + n % 5;
        let e = 1 + n % 5;
        let v = QuadricSpace::random(&f, d, e, &mut rng);
        bad += usize::from(!kappa_vector(&v).is_symmetric());
        if e == 3 {
            let a = v.grams();
            let expected = Matrix::vstack(f, &[&a[2], &a[1].neg(), &a[0]]);
            bad += usize::from(build_psi(&v, 2).matrix.transpose() != expected);
            bad += usize::from(!star_psi(&v, 1).is_skew_symmetric());
        }
    }
    outcome(bad == 0, format!("{bad} failures over 100 spaces"))
}

fn exactness_criterion() -> Outcome {
    let f = fp();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut bad = 0;
    for (d, e) in [(4, 3), (5, 4), (4, 5)] {
        let grams = (0..e)
            .map(|_| Matrix::from_fn(f, d, d, |r, c| if r == c { rng.gen_range(1..10007) } else { 0 }))
            .collect();
        let v = QuadricSpace::from_grams(grams).unwrap();
        let k = kappa_vector(&v);
        for j in 0..e - 1 {
            bad += usize::from(!psi_compose(&v, j).unwrap().is_zero());
            bad += usize::from(k.get(j) + k.get(j + 1) != d * binomial(e, j + 1));
        }
    }
    outcome(bad == 0, format!("{bad} failures at (4,3), (5,4), (4,5)"))
}

fn oracle_criterion() -> Outcome {
    let f = fp();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut bad = 0;
    let mut cases = 0;
    for d in 1..=4 {
        for e in 1..=4 {
            let v = QuadricSpace::random(&f, d, e, &mut rng);
            for j in 0..e {
                cases += 1;
                let fast = build_psi(&v, j).matrix;
                let slow = naive_psi(&v, j);
                bad += usize::from(fast != slow || fast.rank() != slow.rank());
            }
        }
    }
    outcome(bad == 0, format!("{bad} mismatches over {cases} (d, e, j)"))
}

fn admissibility_criterion() -> Outcome {
    let f = fp();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut bad = Vec::new();
    for n in 0..500 {
        let d = rng.gen_range(1..=6);
        let e = rng.gen_range(1..=5);
        let v = if n % 2 == 0 || d == 1 {
            QuadricSpace::random(&f, d, e, &mut rng)
        } else {
            QuadricSpace::random(&f, d - 1, e, &mut rng).pad_variables(1)
        };
        let k = kappa_vector(&v);
        if let Err(violation) = check_kappa_admissible(&k) {
            bad.push(format!("{k}: {violation}"));
        }
    }
    outcome(
        bad.is_empty(),
        match bad.first() {
            None => "0 violations over 500 vectors".to_string(),
            Some(first) => format!("{} violations over 500 vectors, first {first:?}", bad.len()),
        },
    )
}

fn net_oracle_criterion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut bad = 0;
    for d in 1..=3 {
        for n in 0..20 {
            let forms: Vec<_> = (0..3)
                .map(|_| QuadraticForm::from_gram(random_symmetric(&Rationals, d, &mut rng)).unwrap())
                .collect();
            let net = net_determinant(&forms[0], &forms[1], &forms[2], n).unwrap();
            let mats = [forms[0].gram(), forms[1].gram(), forms[2].gram()];
            for (a, b, c) in net_monomials(d) {
                bad += usize::from(net.coefficient(a, b, c) != column_type_oracle(mats, a, b));
            }
        }
    }
    outcome(
        bad == 0,
        format!("{bad} coefficient mismatches, d <= 3, 20 triples each"),
    )
}

fn points_unobstructed_criterion() -> Outcome {
    let f = fp();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut bad = 0;
    let mut built = 0;
    for (d, e) in [(4, 3), (5, 3), (6, 3), (8, 3), (6, 4), (10, 4), (5, 5)] {
        for _ in 0..10 {
            let Ok(v) = space_from_points(&random_points(&f, d, e, &mut rng)) else {
                continue;
            };
            built += 1;
            bad += usize::from(smoothability_verdict(&kappa_vector(&v)).is_obstructed());
        }
    }
    outcome(bad == 0 && built >= 60, format!("{bad} obstructed out of {built}"))
}

fn nonsmoothable_family_criterion() -> Outcome {
    let f = fp();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut ok = true;
    let mut parts = Vec::new();
    for d in [4, 7] {
        let hits = (0..100)
            .filter(|_| smoothability_verdict(&kappa_vector(&QuadricSpace::random(&f, d, 3, &mut rng))).is_obstructed())
            .count();
        ok &= hits >= 95;
        parts.push(format!("d={d}: {hits}/100 obstructed"));
    }
    outcome(ok, parts.join(", "))
}

fn main() {
    let mut runner = Runner { failures: 0 };
    runner.run("1a golden d=15 example", secs(5), golden_d15);
    runner.run("1b golden (1,6,3) component", secs(1), golden_j_double_prime);
    runner.run("1c generic d=e=5 over F_10007", secs(60), golden_generic_five);
    runner.run(
        "1d special point configurations d=4..8",
        secs(10),
        golden_special_points,
    );
    runner.run("2  Betti table and Boij-Soderberg bound", None, betti_criterion);
    runner.run("3  dimension table d=4..8", secs(120), || dimension_criterion(4..=8));
    if std::env::var("KAPPA_LARGE_DIMENSION").is_ok_and(|v| v == "1") {
        runner.run("3+ dimension table d=9..11", None, || dimension_criterion(9..=11));
    } else {
        println!("[SKIP] 3+ dimension table d=9..11: set KAPPA_LARGE_DIMENSION=1");
    }
    runner.run("4  commutator equivalence d=4..8", secs(120), commutator_criterion);
    runner.run("5a GL(e)/GL(d) invariance", None, invariance_criterion);
    runner.run("5b symmetry and transpose relation", None, symmetry_criterion);
    runner.run("5c diagonal exactness", None, exactness_criterion);
    runner.run("5d block assembly vs naive enumeration", None, oracle_criterion);
    runner.run("5e admissibility of computed vectors", None, admissibility_criterion);
    runner.run("5f net determinant vs column expansion", None, net_oracle_criterion);
    runner.run("5g point spaces are unobstructed", None, points_unobstructed_criterion);
    runner.run(
        "6  generic nets obstructed at d=4, 7",
        None,
        nonsmoothable_family_criterion,
    );
    if runner.failures > 0 {
        println!("{} criteria failed", runner.failures);
        std::process::exit(1);
    }
    println!("all criteria passed");
}
