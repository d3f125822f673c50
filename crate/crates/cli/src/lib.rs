//! Command-line front end for `moy-mf`: parses a diagram file, runs the
//! requested computation and renders the result as text or JSON.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use moy_mf::diagram::{glue, parse_diagram, Diagram};
use moy_mf::error::DiagramError;
use moy_mf::homology::HomologyResult;
use moy_mf::mf::Summand;
use moy_mf::reduce::canonical_form;
use moy_mf::{auto_reduce, bracket, graded_homology, KoszulMf, LaurentPoly};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(name = "moymf", version, about = "Matrix factorizations and MOY brackets of planar diagrams")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Report poincare0 - poincare1 instead of the unsigned Euler characteristic.
    #[arg(long, global = true)]
    pub signed_euler: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the Koszul factorization of a diagram.
    Build {
        file: PathBuf,
        /// Print every row.
        #[arg(long)]
        show_rows: bool,
    },
    /// Build and fully reduce a diagram.
    Reduce {
        file: PathBuf,
        /// Print canonical rows and base-ring rules of each summand.
        #[arg(long)]
        show_rows: bool,
    },
    /// Euler characteristic of the homology of a closed diagram.
    Euler { file: PathBuf },
    /// Poincaré polynomials of the homology of a closed diagram.
    Homology { file: PathBuf },
    /// MOY bracket of a closed diagram (crossings allowed).
    Bracket { file: PathBuf },
    /// Run the built-in consistency checks for n = 3..=n-max.
    Selftest {
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(3..=12))]
        n_max: u32,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}:{source}", path.display())]
    Diagram {
        path: PathBuf,
        source: DiagramError,
    },
    #[error("{}: {msg}", path.display())]
    Domain { path: PathBuf, msg: String },
    #[error("{failed} of {total} self-checks failed")]
    SelftestFailed { failed: usize, total: usize },
    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),
    #[error("cannot encode JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// A Laurent polynomial as a map from exponent to coefficient. JSON object
/// keys are the exponents as decimal strings, in increasing order.
pub type LaurentJson = BTreeMap<i64, i64>;

pub fn laurent_to_json(p: &LaurentPoly) -> LaurentJson {
    p.terms().collect()
}

pub fn laurent_from_json(m: &LaurentJson) -> LaurentPoly {
    LaurentPoly::from_terms(m.iter().map(|(&e, &c)| (e, c)))
}

/// The machine-readable result of `euler`, `homology` and `bracket`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub euler: Option<LaurentJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity0: Option<LaurentJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity1: Option<LaurentJson>,
    /// Number of reduction steps taken.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bracket: Option<LaurentJson>,
}

impl ResultDocument {
    fn homology(n: u32, h: &HomologyResult, steps: usize, signed: bool) -> Self {
        let euler = if signed { h.signed_euler() } else { h.euler() };
        ResultDocument {
            n,
            euler: Some(laurent_to_json(&euler)),
            parity0: Some(laurent_to_json(&h.poincare0)),
            parity1: Some(laurent_to_json(&h.poincare1)),
            steps: Some(steps),
            bracket: None,
        }
    }
}

#[derive(Debug, Serialize)]
struct RowJson {
    a: String,
    b: String,
    shift: i64,
}

#[derive(Debug, Serialize)]
struct KoszulJson {
    shift: i64,
    parity: u8,
    rows: Vec<RowJson>,
    rules: Vec<String>,
}

impl KoszulJson {
    fn new(k: &KoszulMf) -> Self {
        KoszulJson {
            shift: k.shift,
            parity: k.parity as u8,
            rows: k
                .rows
                .iter()
                .map(|r| RowJson {
                    a: r.a.to_string(),
                    b: r.b.to_string(),
                    shift: r.shift,
                })
                .collect(),
            rules: k.base.canonical_rules().iter().map(|r| r.to_string()).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
struct BuildJson {
    n: u32,
    potential: String,
    factorization: KoszulJson,
}

#[derive(Debug, Serialize)]
struct ReduceJson {
    n: u32,
    steps: usize,
    summands: Vec<KoszulJson>,
}

#[derive(Debug, Serialize)]
struct CheckJson {
    name: &'static str,
    n: u32,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

fn load(path: &Path) -> Result<Diagram, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_diagram(&text).map_err(|source| CliError::Diagram {
        path: path.to_owned(),
        source,
    })
}

fn domain(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Domain {
        path: path.to_owned(),
        msg: e.to_string(),
    }
}

fn build(path: &Path) -> Result<(Diagram, KoszulMf), CliError> {
    let d = load(path)?;
    let k = glue(&d).map_err(|source| CliError::Diagram {
        path: path.to_owned(),
        source,
    })?;
    Ok((d, k))
}

fn koszul_parts(path: &Path, summands: &[Summand]) -> Result<Vec<KoszulMf>, CliError> {
    summands
        .iter()
        .map(|s| {
            s.as_koszul()
                .cloned()
                .ok_or_else(|| domain(path, "reduction produced an explicit summand"))
        })
        .collect()
}

fn write_rows(out: &mut dyn Write, k: &KoszulMf) -> std::io::Result<()> {
    for (i, r) in k.rows.iter().enumerate() {
        writeln!(out, "  row {i}: ({} ; {}){{{}}}", r.a, r.b, r.shift)?;
    }
    for r in k.base.canonical_rules() {
        writeln!(out, "  rule: {r}")?;
    }
    Ok(())
}

fn homology_of(path: &Path) -> Result<(u32, HomologyResult, usize), CliError> {
    let (d, k) = build(path)?;
    if !d.is_closed() {
        return Err(domain(path, "homology needs a closed diagram"));
    }
    let (sum, trace) = auto_reduce(&k);
    let h = graded_homology(&sum).map_err(|e| domain(path, e))?;
    Ok((d.n, h, trace.len()))
}

/// Runs one command, writing its output to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Build { file, show_rows } => {
            let (d, k) = build(file)?;
            if cli.json {
                let doc = BuildJson {
                    n: d.n,
                    potential: k.potential().to_string(),
                    factorization: KoszulJson::new(&k),
                };
                writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
            } else {
                writeln!(out, "n = {}", d.n)?;
                writeln!(out, "potential: {}", k.potential())?;
                writeln!(
                    out,
                    "{} rows, shift {{{}}}, parity {}",
                    k.rows.len(),
                    k.shift,
                    k.parity as u8
                )?;
                if *show_rows {
                    write_rows(out, &k)?;
                }
            }
        }
        Command::Reduce { file, show_rows } => {
            let (d, k) = build(file)?;
            let (sum, trace) = auto_reduce(&k);
            let summands: Vec<Summand> = sum.iter().cloned().collect();
            let parts: Vec<KoszulMf> = koszul_parts(file, &summands)?
                .iter()
                .map(canonical_form)
                .collect();
            if cli.json {
                let doc = ReduceJson {
                    n: d.n,
                    steps: trace.len(),
                    summands: parts.iter().map(KoszulJson::new).collect(),
                };
                writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
            } else {
                writeln!(out, "{} summand(s) after {} step(s)", parts.len(), trace.len())?;
                for step in &trace.steps {
                    writeln!(out, "  {step}")?;
                }
                for (i, p) in parts.iter().enumerate() {
                    writeln!(
                        out,
                        "summand {i}: {} rows, shift {{{}}}, parity {}",
                        p.rows.len(),
                        p.shift,
                        p.parity as u8
                    )?;
                    if *show_rows {
                        write_rows(out, p)?;
                    }
                }
            }
        }
        Command::Euler { file } => {
            let (n, h, steps) = homology_of(file)?;
            if cli.json {
                let doc = ResultDocument::homology(n, &h, steps, cli.signed_euler);
                writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
            } else if cli.signed_euler {
                writeln!(out, "{}", h.signed_euler())?;
            } else {
                writeln!(out, "{}", h.euler())?;
            }
        }
        Command::Homology { file } => {
            let (n, h, steps) = homology_of(file)?;
            if cli.json {
                let doc = ResultDocument::homology(n, &h, steps, cli.signed_euler);
                writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
            } else {
                writeln!(out, "parity 0: {}", h.poincare0)?;
                writeln!(out, "parity 1: {}", h.poincare1)?;
                let e = if cli.signed_euler { h.signed_euler() } else { h.euler() };
                writeln!(out, "euler: {e}")?;
            }
        }
        Command::Bracket { file } => {
            let d = load(file)?;
            let b = bracket(&d).map_err(|e| domain(file, e))?;
            if cli.json {
                let doc = ResultDocument {
                    n: d.n,
                    euler: None,
                    parity0: None,
                    parity1: None,
                    steps: None,
                    bracket: Some(laurent_to_json(&b)),
                };
                writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
            } else {
                writeln!(out, "{b}")?;
            }
        }
        Command::Selftest { n_max } => {
            let results = moy_mf::selftest::run(*n_max);
            let failed = results.iter().filter(|r| !r.passed()).count();
            if cli.json {
                let doc: Vec<CheckJson> = results
                    .iter()
                    .map(|r| CheckJson {
                        name: r.name,
                        n: r.n,
                        passed: r.passed(),
                        detail: r.outcome.clone().err(),
                    })
                    .collect();
                writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
            } else {
                for r in &results {
                    writeln!(out, "{r}")?;
                }
                writeln!(out, "{} of {} checks passed", results.len() - failed, results.len())?;
            }
            if failed > 0 {
                return Err(CliError::SelftestFailed {
                    failed,
                    total: results.len(),
                });
            }
        }
    }
    Ok(())
}
