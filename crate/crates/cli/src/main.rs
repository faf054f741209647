//! `cps`: build a complex product structure on one of the supported
//! algebras and run the check suite against it.
//!
//! Exit codes: 0 all selected checks passed, 1 at least one check failed,
//! 2 configuration or build error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use cps_core::cps::{seeded_z_basis, Family, Structure};
use cps_core::fixture;
use cps_core::verify::{default_checks, run_check, CheckId, CheckReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    SlReal,
    SuPQ,
    SlComplexRealified,
}

impl Kind {
    fn parse(name: &str) -> Result<Kind, String> {
        match name {
            "sl_real" => Ok(Kind::SlReal),
            "su_pq" => Ok(Kind::SuPQ),
            "sl_c_realified" | "sl_complex_realified" => Ok(Kind::SlComplexRealified),
            other => Err(format!(
                "unknown kind {other:?} (expected sl_real, su_pq or sl_c_realified)"
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "cps", version, about = "Exact checks for complex product structures")]
struct Cli {
    /// Algebra kind: sl_real, su_pq or sl_c_realified.
    #[arg(long)]
    kind: String,

    /// Size parameter m (the carrier is (2m-1)x(2m-1)).
    #[arg(long, conflicts_with = "max_m")]
    m: Option<usize>,

    /// Sweep mode: run every m = 2..=K.
    #[arg(long, value_name = "K", conflicts_with = "m")]
    max_m: Option<usize>,

    /// Comma-separated check names. Defaults to every applicable check
    /// except killing_compatibility (request that one explicitly).
    #[arg(long, value_delimiter = ',')]
    checks: Option<Vec<String>>,

    /// Build the parametric structure for a seeded pseudo-random z-basis
    /// instead of the default one.
    #[arg(long)]
    parametric_seed: Option<u64>,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the built structure (basis, structure constants, P, J, Q) as a
    /// JSON fixture. Needs a single --m run.
    #[arg(long)]
    dump: Option<PathBuf>,
}

fn build_structure(kind: Kind, m: usize, seed: Option<u64>) -> Result<Structure, String> {
    let family = match kind {
        Kind::SlReal => Family::SlReal,
        // The realification is presented through the su(m,m-1) basis, whose
        // i-linear extension spans the same complex algebra.
        Kind::SuPQ | Kind::SlComplexRealified => Family::SuPQ,
    };
    let base = match seed {
        Some(seed) => Structure::build_parametric(family, m, &seeded_z_basis(m, seed)),
        None => Structure::build(family, m),
    }
    .map_err(|e| e.to_string())?;
    match kind {
        Kind::SlComplexRealified => base.complexified().map_err(|e| e.to_string()),
        _ => Ok(base),
    }
}

/// Requested names resolved against the declared check list; unknown names
/// and checks that do not apply to the structure are configuration errors.
fn resolve_checks(requested: &Option<Vec<String>>, s: &Structure) -> Result<Vec<CheckId>, String> {
    let Some(names) = requested else {
        return Ok(default_checks(s));
    };
    let mut wanted = Vec::new();
    for name in names {
        let name = name.trim();
        let id = CheckId::from_name(name).ok_or_else(|| format!("unknown check {name:?}"))?;
        if !id.applicable(s) {
            return Err(format!(
                "check {} does not apply to {}",
                id.name(),
                s.algebra().name()
            ));
        }
        if !wanted.contains(&id) {
            wanted.push(id);
        }
    }
    // Reports always come out in the declared order.
    Ok(CheckId::ALL.into_iter().filter(|id| wanted.contains(id)).collect())
}

fn print_text(rep: &CheckReport) {
    let status = if rep.passed { "pass" } else { "FAIL" };
    println!("[{status}] {} ({}, m = {})", rep.check, rep.algebra, rep.m);
    if let Some(w) = &rep.witness {
        if w.indices.is_empty() {
            println!("       {}", w.note);
        } else {
            println!("       {} (indices {:?})", w.note, w.indices);
        }
        if !w.residual.is_empty() {
            println!("       residual: {}", w.residual.join(", "));
        }
    }
    for (key, value) in &rep.facts {
        println!("       {key}: {value}");
    }
}

fn run(cli: &Cli) -> Result<bool, String> {
    let kind = Kind::parse(&cli.kind)?;
    let ms: Vec<usize> = match (cli.m, cli.max_m) {
        (Some(m), None) => {
            if m < 2 {
                return Err(format!("need m >= 2, got {m}"));
            }
            vec![m]
        }
        (None, Some(k)) => {
            if k < 2 {
                return Err("--max-m must be at least 2".into());
            }
            (2..=k).collect()
        }
        (None, None) => return Err("one of --m or --max-m is required".into()),
        (Some(_), Some(_)) => unreachable!("clap rejects --m with --max-m"),
    };
    if cli.dump.is_some() && ms.len() != 1 {
        return Err("--dump needs a single --m run".into());
    }

    let mut reports: Vec<CheckReport> = Vec::new();
    let mut all_passed = true;
    for &m in &ms {
        let s = build_structure(kind, m, cli.parametric_seed)?;
        let checks = resolve_checks(&cli.checks, &s)?;
        if let Some(path) = &cli.dump {
            fixture::dump(&s, path)
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
        }
        for id in checks {
            let rep = run_check(&s, id).map_err(|e| e.to_string())?;
            all_passed &= rep.passed;
            match cli.format {
                Format::Text => print_text(&rep),
                Format::Json => reports.push(rep),
            }
        }
    }
    if cli.format == Format::Json {
        let text = serde_json::to_string_pretty(&reports).map_err(|e| e.to_string())?;
        println!("{text}");
    }
    Ok(all_passed)
}

fn main() -> ExitCode {
    // Die quietly on a closed pipe (`cps ... | head`) instead of panicking.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
