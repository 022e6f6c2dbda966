//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when `eval --expect` is not met or
//! `metacheck` finds a disagreement on a transitive model, 2 on any input
//! or usage error.

use crate::axioms::{suite, zf_axiom, zphi_axiom, AxiomId, SchemaParams, SuiteKind};
use crate::constructions::{enumerate_irreflexive, enumerate_structures, recipe_model, RecipeSpec};
use crate::metacheck::{
    agreement_check, axiom_report, default_corpus, equation_demo, parse_corpus,
};
use crate::rewrite::eliminate_identity;
use crate::semantics::files::{parse_model, parse_structure, write_model, write_structure_block};
use crate::semantics::{evaluate_full, mostowski_collapse, Interpretation};
use crate::syntax::{parse, Formula};
use crate::Error;
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// Result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "zphi", version, about = "Identity-free set theory toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct FormulaInput {
    /// Formula text.
    formula: Option<String>,
    /// Read the formula from a file.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Params {
    /// Separation parameter F(y); repeatable.
    #[arg(long, value_name = "FORMULA")]
    separation: Vec<String>,
    /// Replacement parameter F(x, y); repeatable.
    #[arg(long, value_name = "FORMULA")]
    replacement: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the canonical form of a formula.
    Parse(FormulaInput),
    /// Eliminate identity and print the result and the rewrite trace.
    Rewrite(FormulaInput),
    /// Evaluate a formula or axiom in a model.
    Eval {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, group = "what")]
        formula: Option<String>,
        #[arg(long, group = "what")]
        file: Option<PathBuf>,
        #[arg(long, group = "what")]
        axiom: Option<String>,
        /// Schema parameter for --axiom.
        #[arg(long, requires = "axiom")]
        param: Option<String>,
        #[arg(long, default_value = "zf")]
        suite: SuiteKind,
        /// Exit with 1 unless the value is this.
        #[arg(long)]
        expect: Option<bool>,
    },
    /// List the axioms of a suite as `ID<TAB>formula` lines.
    Axioms {
        #[arg(long)]
        suite: SuiteKind,
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        params: Params,
    },
    /// Evaluate every axiom of a suite in a model.
    Check {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        suite: SuiteKind,
        #[command(flatten)]
        params: Params,
    },
    /// Write the model of pure sets of rank <= R plus sets of K atoms.
    Recipe {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        atoms: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Collapse a well-founded extensional structure to a transitive model.
    Collapse {
        #[arg(long)]
        structure: PathBuf,
    },
    /// Compare ZF with its identity-free translation on transitive models.
    Metacheck {
        #[arg(long)]
        max_rank: usize,
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// Print an equation between two constants and its translation.
    DemoEq { lhs: String, rhs: String },
    /// Print every membership structure with at most N nodes.
    Enumerate {
        #[arg(long)]
        max_nodes: usize,
        /// Only relations without self-membership (allows 5 nodes).
        #[arg(long)]
        irreflexive: bool,
    },
}

/// Runs one command line; the first item is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let mut out = Outcome::default();
    match dispatch(cli.command, &mut out) {
        Ok(code) => out.code = code,
        Err(e) => {
            out.code = 2;
            let _ = writeln!(out.stderr, "error: {e}");
        }
    }
    out
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load_model(path: &Path) -> Result<Interpretation, Error> {
    parse_model(&read(path)?).map_err(|source| Error::File {
        path: path.display().to_string(),
        source,
    })
}

fn formula_from(text: Option<&str>, file: Option<&Path>) -> Result<Formula, Error> {
    match (text, file) {
        (Some(t), _) => Ok(parse(t)?),
        (None, Some(p)) => Ok(parse(&read(p)?)?),
        (None, None) => Err(Error::Usage("no formula given".into())),
    }
}

fn schema_params(p: &Params) -> Result<SchemaParams, Error> {
    let all = |v: &[String]| v.iter().map(|s| parse(s)).collect::<Result<Vec<_>, _>>();
    Ok(SchemaParams {
        separation: all(&p.separation)?,
        replacement: all(&p.replacement)?,
    })
}

fn dispatch(cmd: Command, out: &mut Outcome) -> Result<u8, Error> {
    let o = &mut out.stdout;
    match cmd {
        Command::Parse(input) => {
            let f = formula_from(input.formula.as_deref(), input.file.as_deref())?;
            let _ = writeln!(o, "{f}");
        }
        Command::Rewrite(input) => {
            let f = formula_from(input.formula.as_deref(), input.file.as_deref())?;
            let trace = eliminate_identity(&f);
            let _ = writeln!(o, "{}", trace.result);
            for line in trace.trace_lines() {
                let _ = writeln!(o, "{line}");
            }
        }
        Command::Eval {
            model,
            formula,
            file,
            axiom,
            param,
            suite,
            expect,
        } => {
            let m = load_model(&model)?;
            let f = match axiom {
                Some(id) => {
                    let id: AxiomId = id.parse()?;
                    let p = param.as_deref().map(parse).transpose()?;
                    match suite {
                        SuiteKind::Zf => zf_axiom(id, p.as_ref())?,
                        SuiteKind::Zphi => zphi_axiom(id, p.as_ref())?,
                    }
                }
                None if formula.is_none() && file.is_none() => {
                    return Err(Error::Usage(
                        "one of --formula, --file or --axiom is required".into(),
                    ))
                }
                None => formula_from(formula.as_deref(), file.as_deref())?,
            };
            let ev = evaluate_full(&m, &f, &Default::default())?;
            match &ev.witness {
                Some(w) => {
                    let _ = writeln!(o, "{} witness={w}", ev.value);
                }
                None => {
                    let _ = writeln!(o, "{}", ev.value);
                }
            }
            if let Some(want) = expect {
                if want != ev.value {
                    let _ = writeln!(out.stderr, "expected {want}, got {}", ev.value);
                    return Ok(1);
                }
            }
        }
        Command::Axioms {
            suite: kind,
            list: _,
            params,
        } => {
            for e in suite(kind, &schema_params(&params)?)? {
                let _ = writeln!(o, "{}\t{}", e.label(), e.formula);
            }
        }
        Command::Check {
            model,
            suite: kind,
            params,
        } => {
            let m = load_model(&model)?;
            let report = axiom_report(
                &model.display().to_string(),
                &m,
                kind,
                &schema_params(&params)?,
            )?;
            let _ = write!(o, "{report}");
        }
        Command::Recipe {
            rank,
            atoms,
            out: path,
        } => {
            let m = recipe_model(&RecipeSpec::standard(rank, atoms)?);
            let text = write_model(&m);
            match path {
                Some(p) => std::fs::write(&p, text).map_err(|source| Error::Io {
                    path: p.display().to_string(),
                    source,
                })?,
                None => o.push_str(&text),
            }
        }
        Command::Collapse { structure } => {
            let g = parse_structure(&read(&structure)?).map_err(|source| Error::File {
                path: structure.display().to_string(),
                source,
            })?;
            let c = mostowski_collapse(&g)?;
            for (node, d) in &c.mapping {
                let _ = writeln!(o, "# {node} -> {d}");
            }
            o.push_str(&write_model(&c.model));
        }
        Command::Metacheck { max_rank, corpus } => {
            let corpus = match corpus {
                Some(p) => parse_corpus(&read(&p)?)?,
                None => default_corpus(),
            };
            let findings = agreement_check(max_rank, &corpus)?;
            let bad = findings
                .iter()
                .filter(|f| f.transitive && !f.agrees())
                .count();
            for f in &findings {
                let _ = writeln!(o, "{f}");
            }
            let _ = writeln!(
                out.stderr,
                "{} findings, {bad} disagreements on transitive models",
                findings.len()
            );
            if bad > 0 {
                return Ok(1);
            }
        }
        Command::DemoEq { lhs, rhs } => {
            let (eq, free) = equation_demo(&lhs, &rhs)?;
            let _ = writeln!(o, "{eq}");
            let _ = writeln!(o, "{free}");
        }
        Command::Enumerate {
            max_nodes,
            irreflexive,
        } => {
            let stream = if irreflexive {
                enumerate_irreflexive(max_nodes)?
            } else {
                enumerate_structures(max_nodes)?
            };
            for (i, g) in stream.enumerate() {
                write_structure_block(i, &g, o);
            }
        }
    }
    Ok(0)
}
