//! One function per subcommand. Each returns the process exit code.

use std::io::{self, Write};

use rootbound::bounds::{BoundEntry, Param};
use rootbound::companion::{enumerate_fiedler, enumerate_shapes, MAX_SHAPE_DEGREE};
use rootbound::oracle::{find_roots, DEFAULT_TOLERANCE};
use rootbound::theorems::{self, CorpusConfig, Distribution, PropertyResult};
use rootbound::{bound_report, BoundReport, Error, Polynomial, ReportOptions};
use serde_json::json;

use crate::input::{parse_coeffs, parse_degrees, parse_distributions, read_corpus, read_poly};
use crate::render::{sig6, Cell, Rows};
use crate::{BenchArgs, BoundArgs, CliError, CorpusArgs, EnumerateArgs, Format, VerifyArgs};

fn to_json<T: serde::Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data")
}

/// Non-index parameters, compact.
fn extra_params(e: &BoundEntry<f64>) -> String {
    let extra: Vec<String> = e
        .params
        .iter()
        .filter(|(_, v)| !matches!(v, Param::Index(_)))
        .map(|(k, v)| match v {
            Param::Text(s) => format!("{k}={s}"),
            other => format!("{k}={}", to_json(other)),
        })
        .collect();
    extra.join(" ")
}

pub fn bound(args: &BoundArgs) -> Result<u8, CliError> {
    let p = match (&args.source.coeffs, &args.source.file) {
        (Some(text), _) => parse_coeffs(text, args.descending)?,
        (None, Some(path)) => read_poly(path)?,
        (None, None) => return Err(CliError::Usage("one of --coeffs or --file is required".into())),
    };
    let report = bound_report(&p, &ReportOptions::default())?;
    let mut out = io::stdout().lock();
    if args.format == Format::Json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("plain data"))?;
        return Ok(0);
    }
    let mut rows = Rows::new(vec!["family", "source", "value", "params"]);
    for e in &report.families {
        rows.push(vec![
            e.family.as_str().into(),
            e.source_tag().into(),
            e.value.into(),
            extra_params(e).into(),
        ]);
    }
    if args.format == Format::Csv {
        rows.write(Format::Csv, &mut out)?;
        return Ok(0);
    }
    write_summary(&report, &mut out)?;
    writeln!(out)?;
    rows.write(Format::Table, &mut out)?;
    Ok(0)
}

fn write_summary(r: &BoundReport<f64>, out: &mut impl Write) -> Result<(), CliError> {
    writeln!(out, "degree: {}", r.degree)?;
    if r.zero_root_multiplicity > 0 {
        writeln!(
            out,
            "zero roots: {} (bounds below apply to the remaining factor)",
            r.zero_root_multiplicity
        )?;
    }
    writeln!(out, "best upper: {} via {}", sig6(r.best_upper.value), r.best_upper.source_tag())?;
    match &r.best_lower {
        Some(l) => writeln!(out, "best lower: {} via {}", sig6(l.value), l.source_tag())?,
        None => writeln!(out, "best lower: none")?,
    }
    if let Some(w) = r.w_improves {
        writeln!(out, "w_improves: {w}")?;
    }
    let xs: Vec<String> = r.x_improves.iter().map(usize::to_string).collect();
    if r.w_improves.is_some() {
        writeln!(out, "x_improves: {}", if xs.is_empty() { "none".into() } else { xs.join(",") })?;
    }
    Ok(())
}

pub fn enumerate(args: &EnumerateArgs) -> Result<u8, CliError> {
    let n = args.degree;
    if !(2..=MAX_SHAPE_DEGREE).contains(&n) {
        return Err(Error::DegreeOutOfRange { degree: n, min: 2, max: MAX_SHAPE_DEGREE }.into());
    }
    let shapes = enumerate_shapes(n, args.dedup)?;
    let fiedler: Vec<bool> = shapes.iter().map(|s| s.is_fiedler()).collect();
    let fiedler_count = fiedler.iter().filter(|f| **f).count();
    let fiedler_total = enumerate_fiedler(n)?.len();
    let mut out = io::stdout().lock();
    if args.format == Format::Json {
        let mut doc = json!({
            "n": n,
            "dedup": args.dedup,
            "shapes": shapes.len(),
            "fiedler_marked": fiedler_count,
            "fiedler_total": fiedler_total,
        });
        if args.list {
            doc["list"] = shapes
                .iter()
                .zip(&fiedler)
                .map(|(s, f)| json!({ "shape": s, "fiedler": f, "frobenius": s.is_frobenius() }))
                .collect();
        }
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("plain data"))?;
        return Ok(0);
    }
    let rows = if args.list {
        let mut rows = Rows::new(vec!["index", "m", "pos", "fiedler", "frobenius"]);
        for (i, (s, f)) in shapes.iter().zip(&fiedler).enumerate() {
            rows.push(vec![
                i.into(),
                s.m().into(),
                to_json(&s.pos()).into(),
                (*f).into(),
                s.is_frobenius().into(),
            ]);
        }
        rows
    } else {
        let mut rows = Rows::new(vec!["n", "dedup", "shapes", "fiedler_marked", "fiedler_total"]);
        rows.push(vec![
            n.into(),
            args.dedup.into(),
            shapes.len().into(),
            fiedler_count.into(),
            fiedler_total.into(),
        ]);
        rows
    };
    rows.write(args.format, &mut out)?;
    Ok(0)
}

fn corpus_config(args: &CorpusArgs, default_dists: Vec<Distribution>) -> Result<CorpusConfig, CliError> {
    let base = CorpusConfig::default();
    Ok(CorpusConfig {
        degrees: args.degrees.as_deref().map(parse_degrees).transpose()?.unwrap_or(base.degrees),
        samples: args.samples.unwrap_or(base.samples),
        distributions: args.dist.as_deref().map(parse_distributions).transpose()?.unwrap_or(default_dists),
        seed: args.seed,
    })
}

fn summary_rows(results: &[PropertyResult]) -> Rows {
    let mut rows =
        Rows::new(vec!["property", "status", "trials", "exercised", "violations", "near_boundary"]);
    for r in results {
        let status = match (r.passed(), r.is_vacuous()) {
            (false, _) => "FAIL",
            (true, true) => "vacuous",
            (true, false) => "pass",
        };
        rows.push(vec![
            r.theorem_id.as_str().into(),
            status.into(),
            r.trials.into(),
            r.exercised.into(),
            r.violations.len().into(),
            r.near_boundary.into(),
        ]);
    }
    rows
}

pub fn verify(args: &VerifyArgs) -> Result<u8, CliError> {
    let config = corpus_config(&args.corpus, CorpusConfig::default().distributions)?;
    let results = match args.theorem.as_deref() {
        Some("soundness") => vec![theorems::soundness_sweep(&config, &ReportOptions::default())],
        Some(id) => vec![theorems::run_property(id, &config)?],
        None => theorems::run_all(&config),
    };
    let summary = summary_rows(&results);
    if args.format == Format::Json {
        let mut out = io::stdout().lock();
        for r in &results {
            writeln!(out, "{}", to_json(r))?;
        }
        summary.write(Format::Table, &mut io::stderr().lock())?;
    } else {
        summary.write(args.format, &mut io::stdout().lock())?;
    }
    Ok(if results.iter().all(PropertyResult::passed) { 0 } else { 1 })
}

const BENCH_HEADER: [&str; 20] = [
    "id",
    "degree",
    "zero_roots",
    "cauchy",
    "frobenius",
    "best_fiedler",
    "best_sparse",
    "partition",
    "w",
    "best_x",
    "best_x_b",
    "lower_reversal",
    "lower_inverse",
    "best_upper",
    "best_upper_source",
    "best_lower",
    "oracle_max",
    "oracle_min",
    "frobenius_over_best_sparse",
    "best_upper_over_oracle_max",
];

fn bench_row(id: &str, p: &Polynomial<f64>) -> Result<Vec<Cell>, CliError> {
    let r = bound_report(p, &ReportOptions::default())?;
    let roots = find_roots(p, DEFAULT_TOLERANCE)?;
    let max = roots.max_modulus();
    let best_x = r.x_bounds().into_iter().reduce(|a, b| if b.1 < a.1 { b } else { a });
    let lower_max =
        |name: &str| r.families.iter().filter(|e| e.family == name).map(|e| e.value).reduce(f64::max);
    let frob = r.value("frobenius");
    let sparse = r.value("best_sparse");
    let ratio = |a: Option<f64>, b: Option<f64>| match (a, b) {
        (Some(a), Some(b)) if b > 0.0 => Cell::Num(a / b),
        _ => Cell::Empty,
    };
    Ok(vec![
        id.into(),
        r.degree.into(),
        r.zero_root_multiplicity.into(),
        r.value("cauchy").into(),
        frob.into(),
        r.value("best_fiedler").into(),
        sparse.into(),
        r.value("partition").into(),
        r.value("w").into(),
        best_x.map(|x| x.1).into(),
        best_x.map(|x| x.0).into(),
        lower_max("lower_reversal").into(),
        lower_max("lower_inverse").into(),
        r.best_upper.value.into(),
        r.best_upper.source_tag().into(),
        r.best_lower.as_ref().map(|l| l.value).into(),
        max.into(),
        roots.min_nonzero_modulus().into(),
        ratio(frob, sparse),
        ratio(Some(r.best_upper.value), Some(max)),
    ])
}

pub fn bench(args: &BenchArgs) -> Result<u8, CliError> {
    let corpus: Vec<(String, Polynomial<f64>)> = match &args.file {
        Some(path) => {
            read_corpus(path)?.into_iter().enumerate().map(|(i, p)| (format!("file:{i}"), p)).collect()
        }
        None => {
            let config = corpus_config(&args.corpus, vec![Distribution::PaperExamples])?;
            theorems::generate(&config).into_iter().map(|e| (e.label, e.poly)).collect()
        }
    };
    let mut rows = Rows::new(BENCH_HEADER.to_vec());
    for (id, p) in &corpus {
        rows.push(bench_row(id, p)?);
    }
    rows.write(args.format, &mut io::stdout().lock())?;
    Ok(0)
}
