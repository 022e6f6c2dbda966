//! Truth-value comparisons between ZF and its identity-free translation on
//! finite models, and per-axiom satisfaction reports.
//!
//! Agreement on every finite transitive model is evidence for, not a proof
//! of, the translation theorems, which concern all models.

use crate::axioms::{suite, AxiomError, AxiomId, SchemaParams, SuiteKind};
use crate::constructions::{ackermann_model, transitive_subuniverses, ConstructionError};
use crate::rewrite::eliminate_identity;
use crate::semantics::{evaluate, evaluate_full, EvalError, Interpretation, Structure, Witness};
use crate::syntax::{is_identifier, parse, Formula, ParseError, Quantifier, Term};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Seed of the generated part of the default corpus.
pub const CORPUS_SEED: u64 = 0x5A_F1;
/// Transitive subsets of the rank-3 fragment are searched among this many
/// leading subset masks.
pub const RANK3_MASK_CAP: u64 = 4096;

#[derive(Debug, Error)]
pub enum MetacheckError {
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Axiom(#[from] AxiomError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("the {0} suite needs a model that interprets identity")]
    NoIdentity(SuiteKind),
    #[error("`{0}` is not a valid constant name")]
    InvalidName(String),
    #[error("corpus line {line}: {source}")]
    CorpusSyntax { line: usize, source: ParseError },
    #[error("corpus line {line}: formula is not closed")]
    CorpusNotClosed { line: usize },
}

/// A named closed formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub id: String,
    pub formula: Formula,
}

impl CorpusEntry {
    pub fn new(id: impl Into<String>, formula: Formula) -> Self {
        CorpusEntry {
            id: id.into(),
            formula,
        }
    }
}

/// Schema parameters of the default corpus: two Separation formulas (one
/// identity-free, one not self-referential) and `x = y` for Replacement.
pub fn default_schema_params() -> SchemaParams {
    SchemaParams {
        separation: vec![
            parse("~(y in y)").expect("fixed text"),
            parse("exists w (w in y)").expect("fixed text"),
        ],
        replacement: vec![Formula::equal("x", "y")],
    }
}

/// Random closed formulas over `x`, `y`, `z` with at most three quantifiers.
/// Identity atoms are frequent so the translation has work to do.
pub fn generated_corpus(seed: u64, count: usize) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let mut budget = 3;
            let f = generate(&mut rng, &mut Vec::new(), &mut budget, 4);
            CorpusEntry::new(format!("G{:02}", i + 1), f)
        })
        .collect()
}

fn generate(
    rng: &mut ChaCha8Rng,
    scope: &mut Vec<&'static str>,
    budget: &mut usize,
    depth: usize,
) -> Formula {
    const VARS: [&str; 3] = ["x", "y", "z"];
    let must_bind = scope.is_empty();
    if !must_bind && (depth == 0 || rng.random_bool(0.3)) {
        let a = scope[rng.random_range(0..scope.len())];
        let b = scope[rng.random_range(0..scope.len())];
        return if rng.random_bool(0.4) {
            Formula::equal(a, b)
        } else {
            Formula::member(a, b)
        };
    }
    if must_bind || (*budget > 0 && rng.random_bool(0.35)) {
        *budget -= 1;
        let unused: Vec<&str> = VARS
            .iter()
            .copied()
            .filter(|v| !scope.contains(v))
            .collect();
        let v = if unused.is_empty() {
            VARS[rng.random_range(0..3)]
        } else {
            unused[rng.random_range(0..unused.len())]
        };
        scope.push(v);
        let body = generate(rng, scope, budget, depth.saturating_sub(1));
        scope.pop();
        let q = if rng.random_bool(0.5) {
            Quantifier::Forall
        } else {
            Quantifier::Exists
        };
        return Formula::quantified(q, v, body);
    }
    let d = depth - 1;
    match rng.random_range(0..5) {
        0 => Formula::not(generate(rng, scope, budget, d)),
        k => {
            let l = generate(rng, scope, budget, d);
            let r = generate(rng, scope, budget, d);
            match k {
                1 => Formula::and(l, r),
                2 => Formula::or(l, r),
                3 => Formula::implies(l, r),
                _ => Formula::iff(l, r),
            }
        }
    }
}

/// The seven plain ZF axioms, four schema instances and twenty generated
/// formulas.
pub fn default_corpus() -> Vec<CorpusEntry> {
    let mut out: Vec<CorpusEntry> = suite(SuiteKind::Zf, &default_schema_params())
        .expect("default parameters are valid")
        .into_iter()
        .map(|e| CorpusEntry::new(e.label(), e.formula))
        .collect();
    out.extend(generated_corpus(CORPUS_SEED, 20));
    out
}

/// Reads a corpus file: one closed formula per line, `#` comments. Entries
/// are named `L<line>`.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>, MetacheckError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let f = parse(body).map_err(|source| MetacheckError::CorpusSyntax {
            line: line_no,
            source,
        })?;
        if !f.is_closed() {
            return Err(MetacheckError::CorpusNotClosed { line: line_no });
        }
        out.push(CorpusEntry::new(format!("L{line_no}"), f));
    }
    Ok(out)
}

/// One line of an axiom report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportRow {
    pub label: String,
    pub kind: SuiteKind,
    pub value: bool,
    pub witness: Option<String>,
    /// Set for Infinity when it fails, which it does on every finite model.
    pub expected_fail: bool,
}

impl fmt::Display for ReportRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}\t{}",
            self.label,
            self.kind,
            self.value,
            self.witness
                .as_deref()
                .map_or("-".to_owned(), |w| format!("witness={w}")),
            if self.expected_fail {
                "expected-fail (finite)"
            } else {
                "-"
            }
        )
    }
}

impl FromStr for ReportRow {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let cols: Vec<&str> = s.split('\t').collect();
        let [label, kind, value, witness, note] = cols.as_slice() else {
            return Err(format!(
                "expected 5 tab-separated columns, found {}",
                cols.len()
            ));
        };
        let witness = match *witness {
            "-" => None,
            w => Some(
                w.strip_prefix("witness=")
                    .ok_or_else(|| format!("bad witness column `{w}`"))?
                    .to_owned(),
            ),
        };
        let expected_fail = match *note {
            "-" => false,
            "expected-fail (finite)" => true,
            n => return Err(format!("bad note column `{n}`")),
        };
        Ok(ReportRow {
            label: label.to_string(),
            kind: kind.parse()?,
            value: parse_bool(value)?,
            witness,
            expected_fail,
        })
    }
}

fn parse_bool(s: &str) -> Result<bool, String> {
    s.parse()
        .map_err(|_| format!("expected true or false, found `{s}`"))
}

/// Truth of every axiom of a suite on one model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub model_id: String,
    pub rows: Vec<ReportRow>,
    /// Full evaluations, aligned with `rows`, for witness re-checks.
    pub details: Vec<(Formula, Option<Witness>)>,
}

impl AxiomReport {
    pub fn row(&self, label: &str) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.label == label)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# model {}", self.model_id)?;
        for r in &self.rows {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Reads the rows of a printed report back; comment lines are skipped.
pub fn parse_report_rows(text: &str) -> Result<Vec<ReportRow>, String> {
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(str::parse)
        .collect()
}

/// Evaluates every formula of the `kind` suite on `m`.
pub fn axiom_report<S: Structure + ?Sized>(
    model_id: &str,
    m: &S,
    kind: SuiteKind,
    params: &SchemaParams,
) -> Result<AxiomReport, MetacheckError> {
    if kind == SuiteKind::Zf && !m.has_identity() {
        return Err(MetacheckError::NoIdentity(kind));
    }
    let mut rows = Vec::new();
    let mut details = Vec::new();
    for e in suite(kind, params)? {
        let ev = evaluate_full(m, &e.formula, &Default::default())?;
        rows.push(ReportRow {
            label: e.label(),
            kind,
            value: ev.value,
            witness: ev.witness.as_ref().map(ToString::to_string),
            expected_fail: e.id == AxiomId::Zf7 && !ev.value,
        });
        details.push((e.formula, ev.witness));
    }
    Ok(AxiomReport {
        model_id: model_id.to_owned(),
        rows,
        details,
    })
}

/// Truth of one formula and of its identity-free translation on one model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgreementFinding {
    pub model_id: String,
    pub formula_id: String,
    pub zf: bool,
    pub zphi: bool,
    pub transitive: bool,
}

impl AgreementFinding {
    pub fn agrees(&self) -> bool {
        self.zf == self.zphi
    }
}

impl fmt::Display for AgreementFinding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}\t{}",
            self.model_id, self.formula_id, self.zf, self.zphi, self.transitive
        )
    }
}

impl FromStr for AgreementFinding {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let cols: Vec<&str> = s.split('\t').collect();
        let [model, formula, zf, zphi, transitive] = cols.as_slice() else {
            return Err(format!(
                "expected 5 tab-separated columns, found {}",
                cols.len()
            ));
        };
        Ok(AgreementFinding {
            model_id: model.to_string(),
            formula_id: formula.to_string(),
            zf: parse_bool(zf)?,
            zphi: parse_bool(zphi)?,
            transitive: parse_bool(transitive)?,
        })
    }
}

/// `codes{0,1,3}`.
pub fn codes_id(codes: &[u64]) -> String {
    let list: Vec<String> = codes.iter().map(u64::to_string).collect();
    format!("codes{{{}}}", list.join(","))
}

/// Compares every corpus formula with its translation on one model, which
/// must interpret identity.
pub fn compare_on(
    model_id: &str,
    m: &Interpretation,
    corpus: &[CorpusEntry],
) -> Result<Vec<AgreementFinding>, MetacheckError> {
    if !m.has_identity() {
        return Err(MetacheckError::NoIdentity(SuiteKind::Zf));
    }
    let transitive = m.is_transitive();
    let env = Default::default();
    corpus
        .iter()
        .map(|e| {
            let zf = evaluate(m, &e.formula, &env)?;
            let zphi = evaluate(m, &eliminate_identity(&e.formula).result, &env)?;
            Ok(AgreementFinding {
                model_id: model_id.to_owned(),
                formula_id: e.id.clone(),
                zf,
                zphi,
                transitive,
            })
        })
        .collect()
}

/// The universes [`agreement_check`] visits: every transitive subset of the
/// rank-`max_rank` fragment, except at rank 3 where only subsets among the
/// first [`RANK3_MASK_CAP`] masks are taken.
pub fn agreement_universes(max_rank: usize) -> Result<Vec<Vec<u64>>, MetacheckError> {
    let cap = (max_rank == 3).then_some(RANK3_MASK_CAP);
    Ok(transitive_subuniverses(max_rank, cap)?)
}

/// Findings for every visited transitive universe and every corpus
/// formula, in (universe, corpus) order. Universes are evaluated in
/// parallel.
pub fn agreement_check(
    max_rank: usize,
    corpus: &[CorpusEntry],
) -> Result<Vec<AgreementFinding>, MetacheckError> {
    let universes = agreement_universes(max_rank)?;
    let per_model: Vec<Vec<AgreementFinding>> = universes
        .par_iter()
        .map(|codes| {
            let m = ackermann_model(codes.iter().copied(), true);
            compare_on(&codes_id(codes), &m, corpus)
        })
        .collect::<Result<_, _>>()?;
    Ok(per_model.into_iter().flatten().collect())
}

/// `lhs = rhs` between two constants and its identity-free rendering.
pub fn equation_demo(lhs: &str, rhs: &str) -> Result<(Formula, Formula), MetacheckError> {
    for name in [lhs, rhs] {
        if !is_identifier(name) {
            return Err(MetacheckError::InvalidName(name.to_owned()));
        }
    }
    let eq = Formula::Equal(Term::constant(lhs), Term::constant(rhs));
    let free = eliminate_identity(&eq).result;
    Ok((eq, free))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::verify_witness;

    #[test]
    fn default_corpus_shape() {
        let c = default_corpus();
        assert_eq!(c.len(), 31);
        assert!(c.iter().all(|e| e.formula.is_closed()));
        let ids: Vec<&str> = c.iter().take(11).map(|e| e.id.as_str()).collect();
        assert_eq!(
            ids,
            [
                "ZF1",
                "ZF2",
                "ZF3",
                "ZF4",
                "ZF5",
                "ZF6[0]",
                "ZF6[1]",
                "ZF7",
                "ZF8-paper[0]",
                "ZF8-std[0]",
                "ZF9"
            ]
        );
    }

    #[test]
    fn generated_formulas_are_bounded_and_deterministic() {
        let a = generated_corpus(7, 40);
        assert_eq!(a, generated_corpus(7, 40));
        assert!(a
            .iter()
            .all(|e| e.formula.is_closed() && e.formula.quantifier_count() <= 3));
        assert!(a.iter().any(|e| !e.formula.is_identity_free()));
    }

    #[test]
    fn two_empty_sets_report() {
        let m = ackermann_model([0, 2], true);
        let r = axiom_report("two", &m, SuiteKind::Zf, &SchemaParams::default()).unwrap();
        let zf1 = r.row("ZF1").unwrap();
        assert!(!zf1.value);
        assert_eq!(zf1.witness.as_deref(), Some("(c0,c2)"));
        assert!(r.row("ZF2").unwrap().value);
        for (row, (f, w)) in r.rows.iter().zip(&r.details) {
            if let Some(w) = w {
                assert!(verify_witness(&m, f, &Default::default(), row.value, w).unwrap());
            }
        }
    }

    #[test]
    fn singleton_empty_report() {
        let m = ackermann_model([0], true);
        let r = axiom_report("zero", &m, SuiteKind::Zf, &default_schema_params()).unwrap();
        assert!(r.row("ZF2").unwrap().value);
        let zf7 = r.row("ZF7").unwrap();
        assert!(!zf7.value && zf7.expected_fail);
        let text = r.to_string();
        assert_eq!(parse_report_rows(&text).unwrap(), r.rows);
    }

    #[test]
    fn zf_suite_needs_identity() {
        let m = ackermann_model([0], false);
        assert!(matches!(
            axiom_report("m", &m, SuiteKind::Zf, &SchemaParams::default()),
            Err(MetacheckError::NoIdentity(_))
        ));
        assert!(axiom_report("m", &m, SuiteKind::Zphi, &SchemaParams::default()).is_ok());
    }

    #[test]
    fn extensionality_diverges_on_two_empty_sets() {
        let m = ackermann_model([0, 2], true);
        let corpus = vec![CorpusEntry::new(
            "ZF1",
            crate::axioms::zf_axiom(AxiomId::Zf1, None).unwrap(),
        )];
        let f = compare_on("two", &m, &corpus).unwrap();
        assert_eq!(
            f,
            vec![AgreementFinding {
                model_id: "two".into(),
                formula_id: "ZF1".into(),
                zf: false,
                zphi: true,
                transitive: false,
            }]
        );
        assert_eq!(f[0].to_string().parse::<AgreementFinding>().unwrap(), f[0]);
    }

    #[test]
    fn rank_two_agreement() {
        let corpus = default_corpus();
        let findings = agreement_check(2, &corpus).unwrap();
        assert_eq!(findings.len(), 6 * corpus.len());
        assert!(findings.iter().all(|f| f.transitive && f.agrees()));
        assert!(agreement_check(2, &[]).unwrap().is_empty());
        assert!(agreement_check(4, &corpus).is_err());
    }

    #[test]
    fn demo() {
        let (eq, free) = equation_demo("D", "Y").unwrap();
        assert_eq!(eq.to_string(), "D = Y");
        assert_eq!(free.to_string(), "forall t (t in D <-> t in Y)");
        let (eq, free) = equation_demo("Y", "Y").unwrap();
        assert_eq!(eq.to_string(), "Y = Y");
        assert_eq!(free.to_string(), "forall t (t in Y <-> t in Y)");
        assert!(equation_demo("1x", "Y").is_err());
    }

    #[test]
    fn corpus_files() {
        let c = parse_corpus("# c\nforall x (x = x)\n\nexists y ~(y in y)  # note\n").unwrap();
        assert_eq!(
            c.iter().map(|e| e.id.as_str()).collect::<Vec<_>>(),
            ["L2", "L4"]
        );
        assert!(matches!(
            parse_corpus("x in y"),
            Err(MetacheckError::CorpusNotClosed { line: 1 })
        ));
        assert!(matches!(
            parse_corpus("forall x\n"),
            Err(MetacheckError::CorpusSyntax { line: 1, .. })
        ));
    }
}
