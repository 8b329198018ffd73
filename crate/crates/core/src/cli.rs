//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use crate::counter::{tau, tau_levels, FactoredInteger};
use crate::decimation::{crosscheck_spectrum, derive, spectrum_levels, DecimationData};
use crate::entropy::entropy;
use crate::error::{Error, Result};
use crate::fractal::{
    build_level, builtin, builtin_names, export, reference_exponents, vertex_count, ExportFormat,
    SelfSimilarStructure,
};
use crate::oracle::{tau_bruteforce, verify_matrix_tree};

/// Largest graph handed to the brute-force oracle.
const ORACLE_VERTEX_CAP: u64 = 400;
/// Largest count printed in decimal; bigger values are printed factored.
const DECIMAL_DIGIT_CAP: u64 = 100_000;

#[derive(Parser, Debug)]
#[command(name = "decimation-trees", version, about = "Exact spanning-tree counts on self-similar fractal graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the builtin structures.
    List,
    /// Sizes and validation report of a structure.
    Info {
        fractal: String,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Build the level-n graph.
    Build {
        fractal: String,
        #[arg(short = 'n', long = "level")]
        level: usize,
        #[arg(long, value_enum, default_value = "dot")]
        format: GraphFormat,
    },
    /// Decimation data: phi, R, exceptional values and their cases.
    Decimate {
        fractal: String,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Number of spanning trees of the level-n graph.
    Count {
        fractal: String,
        #[arg(short = 'n', long = "level")]
        level: usize,
        #[arg(long)]
        factored: bool,
        #[arg(long)]
        digits: bool,
        /// Count by brute force on the built graph.
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Cross-check the pipeline against the brute-force oracle.
    Verify {
        fractal: String,
        #[arg(long, default_value_t = 2)]
        max_level: usize,
    },
    /// Tree entropy estimates.
    Entropy {
        fractal: String,
        #[arg(short = 'n', long = "level", default_value_t = 30)]
        level: usize,
        #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u32).range(6..))]
        prec: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
}

fn load(spec: &str) -> Result<SelfSimilarStructure> {
    if builtin_names().contains(&spec) {
        return builtin(spec);
    }
    let path = Path::new(spec);
    if path.exists() {
        return SelfSimilarStructure::from_file(path);
    }
    builtin(spec)
}

/// Loads without rejecting invalid structures, for `info`.
fn load_unvalidated(spec: &str) -> Result<SelfSimilarStructure> {
    if builtin_names().contains(&spec) {
        return builtin(spec);
    }
    let path = Path::new(spec);
    if path.exists() {
        let text = std::fs::read_to_string(path)?;
        return Ok(serde_json::from_str(&text)?);
    }
    builtin(spec)
}

fn configure_threads() {
    if let Some(n) = std::env::var("DECIMATION_TREES_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    configure_threads();
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        // reader went away, e.g. `| head`
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_internal() {
                2
            } else {
                1
            }
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::List => {
            for name in builtin_names() {
                writeln!(out, "{name}")?;
            }
            Ok(0)
        }
        Command::Info { fractal, format } => info(&fractal, format, out),
        Command::Build { fractal, level, format } => {
            let s = load(&fractal)?;
            let g = build_level(&s, level)?;
            let fmt = match format {
                GraphFormat::Dot => ExportFormat::Dot,
                GraphFormat::Json => ExportFormat::Json,
            };
            out.write_all(export(&g, fmt).as_bytes())?;
            Ok(0)
        }
        Command::Decimate { fractal, format } => {
            let s = load(&fractal)?;
            let dd = derive(&s).map_err(|e| Error::DecimationUnavailable { name: s.name.clone(), reason: e.to_string() })?;
            decimate(&dd, format, out)?;
            Ok(0)
        }
        Command::Count { fractal, level, factored, digits, oracle, format } => {
            let s = load(&fractal)?;
            count(&s, level, factored, digits, oracle, format, out)
        }
        Command::Verify { fractal, max_level } => {
            let s = load(&fractal)?;
            verify(&s, max_level, out)
        }
        Command::Entropy { fractal, level, prec, format } => {
            let s = load(&fractal)?;
            let report = entropy(&s, level, prec as usize)?;
            match format {
                OutputFormat::Text => out.write_all(report.to_text().as_bytes())?,
                OutputFormat::Json => writeln!(out, "{}", report.to_json())?,
            }
            Ok(0)
        }
    }
}

fn info(fractal: &str, format: OutputFormat, out: &mut dyn Write) -> Result<i32> {
    let s = load_unvalidated(fractal)?;
    let violations = s.validate();
    let names: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
    match format {
        OutputFormat::Text => {
            writeln!(out, "name: {}", s.name)?;
            writeln!(out, "cells (m): {}", s.m)?;
            writeln!(out, "|V0|: {}", s.v0_size)?;
            writeln!(out, "|V1|: {}", s.v1_size)?;
            writeln!(out, "edges of G1: {}", s.edges1.iter().map(|e| e.2).sum::<u64>())?;
            if names.is_empty() {
                writeln!(out, "validation: ok")?;
                writeln!(out, "tree-like: {}", s.is_tree_like())?;
            } else {
                writeln!(out, "validation: {} violation(s)", names.len())?;
                for n in &names {
                    writeln!(out, "  - {n}")?;
                }
            }
        }
        OutputFormat::Json => {
            let doc = json!({
                "schema": "1",
                "name": s.name,
                "cells": s.m,
                "boundary_size": s.v0_size,
                "v1_size": s.v1_size,
                "valid": names.is_empty(),
                "violations": names,
            });
            writeln!(out, "{doc}")?;
        }
    }
    Ok(if violations.is_empty() { 0 } else { 1 })
}

fn decimate(dd: &DecimationData, format: OutputFormat, out: &mut dyn Write) -> Result<()> {
    let records = dd.exceptional_records()?;
    match format {
        OutputFormat::Text => {
            writeln!(out, "phi(z) = {}", dd.phi_display())?;
            writeln!(out, "R(z) = {}", dd.r_display())?;
            writeln!(out, "R(z) = {}", dd.r.to_string_in("z"))?;
            writeln!(out, "d = {}", dd.d)?;
            writeln!(out, "Q(0) = {}", dd.q0)?;
            writeln!(out, "P_d = {}", dd.pd)?;
            let sigma: Vec<String> = dd.sigma_d.iter().map(|(c, m)| format!("{c} (x{m})")).collect();
            writeln!(out, "spectrum of D: {}", sigma.join(", "))?;
            let exc: Vec<String> = records.iter().map(|r| r.value.to_string()).collect();
            writeln!(out, "exceptional values: {}", exc.join(", "))?;
            writeln!(out, "{:<16} {:>4}  {:<10} formula", "value", "case", "R(value)")?;
            for r in &records {
                let image = r.image.as_ref().map_or("pole".to_string(), |c| c.to_string());
                writeln!(out, "{:<16} {:>4}  {:<10} {}", r.value.to_string(), r.case_id, image, r.formula())?;
            }
        }
        OutputFormat::Json => {
            let cases: Vec<serde_json::Value> = records
                .iter()
                .map(|r| {
                    json!({
                        "value": r.value.to_string(),
                        "minpoly": r.value.minpoly().to_string_in("z"),
                        "case": r.case_id,
                        "mult_d": r.mult_d,
                        "image": r.image.as_ref().map(|c| c.to_string()),
                        "predicates": r.predicates,
                    })
                })
                .collect();
            let doc = json!({
                "schema": "1",
                "fractal": dd.name,
                "phi": dd.phi.to_string_in("z"),
                "r": dd.r.to_string_in("z"),
                "d": dd.d,
                "q0": dd.q0.to_string(),
                "pd": dd.pd.to_string(),
                "cases": cases,
            });
            writeln!(out, "{doc}")?;
        }
    }
    Ok(())
}

fn factored_from(n: &BigInt) -> Result<FactoredInteger> {
    let factors = crate::arith::factor_abs(n)?.into_iter().map(|(p, e)| (p, BigInt::from(e))).collect();
    Ok(FactoredInteger { factors })
}

fn count(
    s: &SelfSimilarStructure,
    level: usize,
    factored: bool,
    digits: bool,
    oracle: bool,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<i32> {
    let t = if oracle {
        let size = vertex_count(s, level);
        if size > ORACLE_VERTEX_CAP.into() {
            return Err(Error::InvalidArgument(format!(
                "level {level} has {size} vertices; the oracle is capped at {ORACLE_VERTEX_CAP}"
            )));
        }
        factored_from(&tau_bruteforce(&build_level(s, level)?.graph)?)?
    } else {
        tau(s, level)?
    };
    let digit_count = t.digits();
    match format {
        OutputFormat::Json => {
            let mut doc = t.to_json();
            doc["schema"] = json!("1");
            doc["fractal"] = json!(s.name);
            doc["level"] = json!(level);
            writeln!(out, "{doc}")?;
        }
        OutputFormat::Text => {
            if factored || digit_count > BigInt::from(DECIMAL_DIGIT_CAP) {
                writeln!(out, "{t}")?;
            } else {
                writeln!(out, "{}", t.value())?;
            }
            if digits {
                writeln!(out, "digits: {digit_count}")?;
            }
        }
    }
    Ok(0)
}

struct Check {
    name: String,
    passed: bool,
    detail: String,
}

fn verify(s: &SelfSimilarStructure, max_level: usize, out: &mut dyn Write) -> Result<i32> {
    let mut checks: Vec<Check> = Vec::new();
    let mut push = |name: String, passed: bool, detail: String| checks.push(Check { name, passed, detail });
    let dd = derive(s);
    match &dd {
        Ok(_) => push("schur identity S = phi (P0 - R)".into(), true, String::new()),
        Err(e) if s.is_tree_like() => push("decimation (not needed: tree-like)".into(), true, e.to_string()),
        Err(e) => push("decimation".into(), false, e.to_string()),
    }
    let counts = tau_levels(s, max_level);
    for n in 0..=max_level {
        if vertex_count(s, n) > ORACLE_VERTEX_CAP.into() {
            break;
        }
        let g = build_level(s, n)?;
        let brute = tau_bruteforce(&g.graph)?;
        match &counts {
            Ok(levels) => {
                let assembled = levels[n].value();
                push(format!("tau(G{n}) equals brute force"), assembled == brute, format!("{brute}"));
            }
            Err(e) => push(format!("tau(G{n}) equals brute force"), false, e.to_string()),
        }
        let mt = verify_matrix_tree(&g.graph)?;
        push(format!("matrix-tree identity on G{n}"), mt.holds, format!("{}", mt.rhs));
    }
    if let Ok(dd) = &dd {
        for n in 1..=max_level.min(2) {
            match crosscheck_spectrum(dd, s, n) {
                Ok(r) => push(format!("spectrum crosscheck level {n}"), r.holds, format!("degree {}", r.degree)),
                Err(e) => push(format!("spectrum crosscheck level {n}"), false, e.to_string()),
            }
        }
        match spectrum_levels(dd, s, 30) {
            Ok(_) => push("sum rule for n <= 30".into(), true, String::new()),
            Err(e) => push("sum rule for n <= 30".into(), false, e.to_string()),
        }
    }
    if reference_exponents(&s.name, 0).is_some() && builtin(&s.name).ok().as_ref() == Some(s) {
        let result = tau_levels(s, 20).map(|levels| {
            levels.iter().enumerate().find(|(n, t)| {
                let got: Vec<(u64, BigInt)> =
                    t.factors.iter().map(|(p, e)| (u64::try_from(p).unwrap_or(0), e.clone())).collect();
                Some(got) != reference_exponents(&s.name, *n)
            }).map(|(n, _)| n)
        });
        match result {
            Ok(None) => push("closed-form exponents for n <= 20".into(), true, String::new()),
            Ok(Some(n)) => push("closed-form exponents for n <= 20".into(), false, format!("first mismatch at n = {n}")),
            Err(e) => push("closed-form exponents for n <= 20".into(), false, e.to_string()),
        }
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    for c in &checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        if c.detail.is_empty() {
            writeln!(out, "{tag} {}", c.name)?;
        } else {
            writeln!(out, "{tag} {} [{}]", c.name, c.detail)?;
        }
    }
    writeln!(out, "{passed}/{} checks passed", checks.len())?;
    Ok(if passed == checks.len() { 0 } else { 2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["decimation-trees"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn count_examples() {
        assert_eq!(run_str(&["count", "sierpinski", "-n", "1", "--factored"]).1, "2^1 * 3^3\n");
        assert_eq!(run_str(&["count", "interval", "-n", "7"]).1, "1\n");
        assert_eq!(run_str(&["count", "sierpinski", "-n", "1"]).1, "54\n");
    }

    #[test]
    fn errors_and_usage() {
        let (code, _, err) = run_str(&["count", "koch", "-n", "1"]);
        assert_eq!(code, 1);
        assert!(err.contains("sierpinski"));
        assert_eq!(run_str(&["frobnicate"]).0, 1);
        assert_eq!(run_str(&["--help"]).0, 0);
    }
}
