use std::fs;
use std::path::Path;
use std::time::Instant;

use anyhow::{Context, Result};
use kappa::dimension::dimension_row;
use kappa::koszul::kappa_vector;
use kappa::linalg::{Field, FieldSpec, PrimeField, Rationals};
use kappa::obstruction::{
    deformation_table_153, example, example_names, kappa_cycle_member, kappa_report, sample_generic_kappa,
    KappaCycleSpec, KappaReport, Verdict,
};
use kappa::quadric::{
    read_space, space_from_points, write_space, AnySpace, FormEntry, QuadricSpace, RawPoints, SpaceDocument,
};
use serde_json::json;

use crate::{Cli, Command, ComputeArgs, ExampleArgs, Format, FromPointsArgs, Outcome, SampleArgs, TableCommand};

pub fn run(cli: &Cli) -> Result<Outcome> {
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::Compute(args) => compute(cli, args),
        Command::FromPoints(args) => from_points(cli, args),
        Command::Table(TableCommand::Dimension { d }) => table_dimension(cli, *d),
        Command::Table(TableCommand::Deform153 { input, field }) => table_deform(cli, input, *field),
        Command::Sample(args) => sample(cli, args),
        Command::Example(args) => run_example(cli, args),
    };
    if cli.verbose > 0 {
        eprintln!("seed {:#x}, {:.2}s", cli.seed, start.elapsed().as_secs_f64());
    }
    outcome
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_space(path: &Path, field: Option<FieldSpec>) -> Result<AnySpace> {
    read_space(&read(path)?, field).with_context(|| format!("{}", path.display()))
}

fn report_any(space: &AnySpace, seed: u64) -> KappaReport {
    let name = space.field_spec().to_string();
    match space {
        AnySpace::Rational(v) => kappa_report(v, &name, seed),
        AnySpace::Prime(v) => kappa_report(v, &name, seed),
    }
}

fn verdict_outcome(report: &KappaReport) -> Outcome {
    match report.verdict {
        Verdict::Obstructed => Outcome::Obstructed,
        Verdict::Unobstructed => Outcome::Done,
    }
}

fn print_json(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("json values serialize")
    );
}

fn compute(cli: &Cli, args: &ComputeArgs) -> Result<Outcome> {
    let space = load_space(&args.input, args.field)?;
    let report = report_any(&space, cli.seed);
    match cli.format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{report}"),
    }
    Ok(verdict_outcome(&report))
}

fn points_space<F: Field>(raw: &RawPoints, field: &F) -> Result<QuadricSpace<F>> {
    let config = raw.configuration(field)?;
    Ok(space_from_points(&config)?)
}

fn from_points(cli: &Cli, args: &FromPointsArgs) -> Result<Outcome> {
    let raw = RawPoints::parse(&read(&args.input)?).with_context(|| format!("{}", args.input.display()))?;
    let space = match args.field.unwrap_or(raw.field) {
        FieldSpec::Rational => AnySpace::Rational(points_space(&raw, &Rationals)?),
        FieldSpec::Prime(p) => AnySpace::Prime(points_space(&raw, &PrimeField::new(p)?)?),
    };
    let (document, written) = match &space {
        AnySpace::Rational(v) => (SpaceDocument::from_space_poly(v), write_space(v)),
        AnySpace::Prime(v) => (SpaceDocument::from_space_poly(v), write_space(v)),
    };
    if let Some(out) = &args.out {
        fs::write(out, written + "\n").with_context(|| format!("cannot write {}", out.display()))?;
    }
    let report = report_any(&space, cli.seed);
    match cli.format {
        Format::Json => print_json(&json!({ "space": document, "report": report })),
        Format::Text => {
            println!(
                "space of {} quadrics in {} variables over {}:",
                space.e(),
                space.d(),
                document.field
            );
            for entry in &document.basis {
                if let FormEntry::Poly(p) = entry {
                    println!("  {p}");
                }
            }
            print!("{report}");
        }
    }
    Ok(verdict_outcome(&report))
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn table_dimension(cli: &Cli, d: usize) -> Result<Outcome> {
    let row = dimension_row(d, cli.seed)?;
    match cli.format {
        Format::Json => print_json(&json!({ "row": row, "codimension": row.codimension(), "pass": row.passes() })),
        Format::Text => {
            let expected = row.expected.map_or("unknown".to_string(), |x| x.to_string());
            println!("{} (expected: {expected}) {}", row.rank, pass(row.passes()));
            if cli.verbose > 0 {
                println!(
                    "d = {}, {} points, Grassmannian dimension {}, codimension {} (allowed {})",
                    row.d,
                    row.points,
                    row.grassmannian,
                    row.codimension(),
                    row.codimension_allowance
                );
            }
        }
    }
    Ok(Outcome::Done)
}

fn table_deform(cli: &Cli, input: &Path, field: Option<FieldSpec>) -> Result<Outcome> {
    let space = load_space(input, field)?;
    let k = match &space {
        AnySpace::Rational(v) => kappa_vector(v),
        AnySpace::Prime(v) => kappa_vector(v),
    };
    let table = deformation_table_153(&k)?;
    match cli.format {
        Format::Json => {
            let rows: Vec<_> = table
                .rows()
                .iter()
                .map(|(target, bound, holds)| json!({ "target": target, "bound": bound, "holds": holds }))
                .collect();
            print_json(&json!({ "kappa": k.entries, "rows": rows }));
        }
        Format::Text => {
            println!("kappa = {k}");
            for (target, bound, holds) in table.rows() {
                println!(
                    "  kappa <= ({}, {}, {})  {target}: {holds}",
                    bound[0], bound[1], bound[2]
                );
            }
        }
    }
    Ok(Outcome::Done)
}

fn sample(cli: &Cli, args: &SampleArgs) -> Result<Outcome> {
    let freq = sample_generic_kappa(args.d, args.e, args.p, args.trials, cli.seed)?;
    let mode = freq.mode().map(|k| k.entries.clone());
    match cli.format {
        Format::Json => {
            let counts: Vec<_> = freq
                .counts
                .iter()
                .map(|(k, n)| json!({ "kappa": k.entries, "count": n }))
                .collect();
            print_json(&json!({
                "d": freq.d, "e": freq.e, "p": freq.p, "trials": freq.trials, "seed": freq.seed,
                "counts": counts, "mode": mode,
            }));
        }
        Format::Text => {
            println!(
                "{} random spaces: d = {}, e = {}, p = {}, seed = {:#x}",
                freq.trials, freq.d, freq.e, freq.p, freq.seed
            );
            for (k, n) in &freq.counts {
                println!("  {k}  {n}");
            }
            if let Some(k) = freq.mode() {
                println!("mode: {k}");
            }
        }
    }
    Ok(Outcome::Done)
}

fn run_example(cli: &Cli, args: &ExampleArgs) -> Result<Outcome> {
    if args.list {
        for name in example_names() {
            println!("{name}");
        }
        return Ok(Outcome::Done);
    }
    let name = args.name.as_deref().expect("clap requires a name without --list");
    let ex = example(name)?;
    let report = kappa_report(&ex.space, "Q", cli.seed);
    let kappa_ok = report.kappa == ex.expected.kappa;
    let verdict_ok = report.verdict == ex.expected.verdict;
    // the cycle lives in as many variables as its first bound
    let cycle = ex.expected.cycle.as_ref().map(|(bounds, expected)| {
        let padded = ex.space.pad_variables(bounds[0].saturating_sub(ex.space.d()));
        let found = kappa_cycle_member(&kappa_vector(&padded), &KappaCycleSpec::new(bounds.clone()));
        (bounds, *expected, found)
    });
    match cli.format {
        Format::Json => {
            let cycle = cycle.as_ref().map(|(bounds, expected, found)| {
                json!({ "bounds": bounds, "expected": expected, "found": found.as_ref().ok() })
            });
            print_json(&json!({
                "name": ex.name,
                "description": ex.description,
                "report": report,
                "expected": ex.expected,
                "matches": { "kappa": kappa_ok, "verdict": verdict_ok },
                "cycle": cycle,
            }));
        }
        Format::Text => {
            println!("{}: {}", ex.name, ex.description);
            print!("{report}");
            println!("expected kappa {:?}: {}", ex.expected.kappa, pass(kappa_ok));
            println!("expected verdict {:?}: {}", ex.expected.verdict, pass(verdict_ok));
            if let Some((bounds, expected, found)) = &cycle {
                let found = found.as_ref().map_err(|e| anyhow::anyhow!("{e}"))?;
                println!(
                    "kappa <= {bounds:?} in {} variables: {found} (expected: {expected}) {}",
                    bounds[0],
                    pass(found == expected)
                );
            }
        }
    }
    Ok(verdict_outcome(&report))
}
