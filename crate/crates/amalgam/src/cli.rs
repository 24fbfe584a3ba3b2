//! Batch command-line frontend.
//!
//! Exit codes are a stable contract: 0 success (for `check`, all axioms
//! pass; for `counterexample run`, the expected verdict holds; for `oracle`,
//! an amalgam was found), 1 failed check or verdict, 2 unsupported
//! signature, 3 oracle exhausted, 4 oracle budget exceeded, 64 usage errors,
//! 65 file or parse errors.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::amalgamation::{amalgamate_auto, amalgamate_transitive, amalgamate_union, Amalgam};
use crate::conformance::check_conformance;
use crate::counterexamples;
use crate::error::{Error, Result};
use crate::fraisse;
use crate::io as fmt_io;
use crate::oracle::{search_ap_amalgam, search_strong_amalgam, SearchStatus, DEFAULT_BUDGET};
use crate::structure::Structure;
use crate::triple::{validate_tba, TbaTriple};

#[derive(Parser)]
#[command(
    name = "amalgam",
    version,
    about = "Finite relational structures and amalgamation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a structure file against its signature axioms.
    Check { file: PathBuf },
    /// Amalgamate a validated triple.
    Amalgamate(AmalgamateArgs),
    /// Search exhaustively for an amalgam.
    Oracle(OracleArgs),
    /// The catalog of instances where amalgamation fails.
    Counterexample {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Grow a finite stage of the generic limit.
    Fraisse(FraisseArgs),
    /// Render a structure file as DOT digraphs.
    ExportDot {
        file: PathBuf,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
}

#[derive(Args)]
struct AmalgamateArgs {
    #[arg(long = "a")]
    a: PathBuf,
    #[arg(long = "b")]
    b: PathBuf,
    #[arg(long = "c")]
    c: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    method: Method,
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Auto,
    Union,
    Transitive,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long = "a")]
    a: PathBuf,
    #[arg(long = "b")]
    b: PathBuf,
    #[arg(long = "c")]
    c: PathBuf,
    #[arg(long, value_enum)]
    mode: Mode,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Sap,
    Ap,
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List the catalog entries.
    List,
    /// Build one entry and verify its expected verdict.
    Run {
        name: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Write one entry as three structure files plus a manifest.
    Export {
        name: String,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
}

#[derive(Args)]
struct FraisseArgs {
    #[arg(long = "sig")]
    sig: PathBuf,
    #[arg(long)]
    steps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long = "check-extension")]
    check_extension: Option<usize>,
    #[arg(long = "check-homogeneity")]
    check_homogeneity: Option<usize>,
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
}

/// Runs the CLI on the given arguments (without the program name) and
/// returns the exit code.
pub fn run(args: Vec<OsString>) -> i32 {
    let mut full = vec![OsString::from("amalgam")];
    full.extend(args);
    let cli = match Cli::try_parse_from(full) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            match e {
                Error::UnsupportedSignature(_) => 2,
                Error::ExpectationViolated { .. } => 1,
                _ => 65,
            }
        }
    }
}

fn read_structure(path: &Path) -> Result<Structure> {
    fmt_io::structure_from_json(&fs::read_to_string(path)?)
}

fn read_triple(a: &Path, b: &Path, c: &Path) -> Result<TbaTriple> {
    validate_tba(read_structure(a)?, read_structure(b)?, read_structure(c)?)
}

fn write_output(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, content)?,
        None => print!("{}", content),
    }
    Ok(())
}

fn dispatch(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Check { file } => {
            let s = read_structure(&file)?;
            let report = check_conformance(&s);
            print!("{}", report.render());
            Ok(if report.all_passed() { 0 } else { 1 })
        }
        Command::Amalgamate(args) => {
            let t = read_triple(&args.a, &args.b, &args.c)?;
            let amalgam = match args.method {
                Method::Auto => amalgamate_auto(&t)?,
                raw => {
                    eprintln!(
                        "warning: raw method bypasses the dispatch preconditions; \
                         misapplication can break conformance (see counterexample rem41)"
                    );
                    raw_amalgam(&t, raw)?
                }
            };
            write_output(args.out.as_deref(), &fmt_io::amalgam_to_json(&amalgam))?;
            Ok(0)
        }
        Command::Oracle(args) => {
            let t = read_triple(&args.a, &args.b, &args.c)?;
            let outcome = match args.mode {
                Mode::Sap => search_strong_amalgam(&t, args.budget),
                Mode::Ap => search_ap_amalgam(&t, args.budget),
            };
            let amalgam_doc = outcome.amalgam.as_ref().map(|(d, _, _)| {
                serde_json::from_str::<serde_json::Value>(&fmt_io::structure_to_json(d))
                    .expect("canonical structure document")
            });
            let report = serde_json::json!({
                "status": outcome.status.name(),
                "nodes_explored": outcome.nodes_explored,
                "amalgam": amalgam_doc,
            });
            let text = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
            write_output(args.out.as_deref(), &text)?;
            Ok(match outcome.status {
                SearchStatus::Found => 0,
                SearchStatus::Exhausted => 3,
                SearchStatus::BudgetExceeded => 4,
            })
        }
        Command::Counterexample { action } => match action {
            CatalogAction::List => {
                for e in &counterexamples::CATALOG {
                    println!(
                        "{:10} {:28} {}",
                        e.name,
                        e.expectation.name(),
                        e.description
                    );
                }
                Ok(0)
            }
            CatalogAction::Run { name, budget } => {
                let report = counterexamples::verify(&name, budget)?;
                print!("{}", report.render());
                println!("{}: verdict as expected", name);
                Ok(0)
            }
            CatalogAction::Export { name, out } => {
                let (_, t) = counterexamples::build(&name)?;
                let meta = counterexamples::entry(&name)?;
                fs::create_dir_all(&out)?;
                fs::write(out.join("a.json"), fmt_io::structure_to_json(t.a()))?;
                fs::write(out.join("b.json"), fmt_io::structure_to_json(t.b()))?;
                fs::write(out.join("c.json"), fmt_io::structure_to_json(t.c()))?;
                let manifest = serde_json::json!({
                    "name": meta.name,
                    "description": meta.description,
                    "expectation": meta.expectation.name(),
                    "family": meta.citation,
                });
                fs::write(
                    out.join("manifest.json"),
                    serde_json::to_string_pretty(&manifest).expect("serializable") + "\n",
                )?;
                Ok(0)
            }
        },
        Command::Fraisse(args) => {
            let sig = fmt_io::signature_from_json(&fs::read_to_string(&args.sig)?)?;
            let stage = fraisse::build_stage(&sig, args.steps, args.seed)?;
            if let Some(k) = args.check_extension {
                let report = fraisse::check_extension_property(&stage, k);
                println!(
                    "extension property at level {}: {}/{} realized (fraction {:.4})",
                    k,
                    report.passed,
                    report.checked,
                    report.fraction()
                );
            }
            if let Some(k) = args.check_homogeneity {
                let report = fraisse::check_partial_homogeneity(&stage, k);
                println!(
                    "one-step homogeneity at level {}: {}/{} extendable (fraction {:.4})",
                    k,
                    report.passed,
                    report.checked,
                    report.fraction()
                );
            }
            write_output(args.out.as_deref(), &fmt_io::structure_to_json(&stage))?;
            Ok(0)
        }
        Command::ExportDot { file, out } => {
            let s = read_structure(&file)?;
            fs::write(out, crate::dot::export_dot(&s))?;
            Ok(0)
        }
    }
}

fn raw_amalgam(t: &TbaTriple, method: Method) -> Result<Amalgam> {
    let sig = t.a().signature();
    let mut extents = Vec::new();
    let mut witnesses = std::collections::BTreeMap::new();
    for decl in sig.relations() {
        match method {
            Method::Union => {
                extents.push((decl.name.clone(), amalgamate_union(t, &decl.name)?));
                witnesses.insert(decl.name.clone(), Default::default());
            }
            Method::Transitive => {
                let (pairs, wits) = amalgamate_transitive(t, &decl.name)?;
                extents.push((decl.name.clone(), pairs));
                witnesses.insert(decl.name.clone(), wits);
            }
            Method::Auto => unreachable!("handled by the caller"),
        }
    }
    // Assemble over the union domain; the raw output may be nonconformant by
    // design, it is still a well-formed structure.
    let union = t.union_domain();
    let relations: std::collections::BTreeMap<_, _> = extents
        .into_iter()
        .map(|(name, pairs)| (name, pairs.into_iter().collect::<Vec<_>>()))
        .collect();
    let mut operations = std::collections::BTreeMap::new();
    for spec in sig.operations() {
        let mut table = std::collections::BTreeMap::new();
        for e in &union {
            let img = if t.a().contains(e) {
                t.a().apply(&spec.name, e)?
            } else {
                t.b().apply(&spec.name, e)?
            };
            table.insert(e.clone(), img);
        }
        operations.insert(spec.name.clone(), table);
    }
    let d = Structure::new(std::sync::Arc::clone(sig), union, &relations, &operations)?;
    Ok(Amalgam { d, witnesses })
}
