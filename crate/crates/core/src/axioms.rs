//! The proper axioms of ZF in desugared form, and their identity-free
//! counterparts.
//!
//! Abbreviations are expanded into the core grammar once, here:
//!
//! * `t ⊆ x` is `forall r (r in t -> r in x)`;
//! * "`∅ ∈ x`" is `exists e ((forall u ~(u in e)) & e in x)`;
//! * `S(y) ∈ x` is `exists z ((forall t (t in z <-> (t in y | t = y))) & z in x)`;
//! * `x ≠ ∅` is `exists w (w in x)` and `x ∩ y = ∅` is
//!   `~(exists z (z in x & z in y))`.
//!
//! Replacement ships in two variants that differ only in how "there is a
//! unique `y`" is spelled: [`Uniqueness::Literal`] uses
//! `exists y exists z ((F(x,y) & F(x,z)) -> y = z)` verbatim, and
//! [`Uniqueness::Standard`] uses `exists y (F(x,y) & forall z (F(x,z) -> z = y))`.

use crate::rewrite::eliminate_identity;
use crate::syntax::{parse, Formula, Term};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// How the unique-existence quantifier in Replacement is expanded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Uniqueness {
    Literal,
    Standard,
}

/// Names the axioms ZF1 to ZF9.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomId {
    /// Extensionality.
    Zf1,
    /// Empty set.
    Zf2,
    /// Pair.
    Zf3,
    /// Power set.
    Zf4,
    /// Union.
    Zf5,
    /// Separation schema.
    Zf6,
    /// Infinity.
    Zf7,
    /// Replacement schema.
    Zf8(Uniqueness),
    /// Regularity.
    Zf9,
}

impl AxiomId {
    pub const ALL: [AxiomId; 10] = [
        AxiomId::Zf1,
        AxiomId::Zf2,
        AxiomId::Zf3,
        AxiomId::Zf4,
        AxiomId::Zf5,
        AxiomId::Zf6,
        AxiomId::Zf7,
        AxiomId::Zf8(Uniqueness::Literal),
        AxiomId::Zf8(Uniqueness::Standard),
        AxiomId::Zf9,
    ];

    /// The axioms that take no formula parameter.
    pub const PLAIN: [AxiomId; 7] = [
        AxiomId::Zf1,
        AxiomId::Zf2,
        AxiomId::Zf3,
        AxiomId::Zf4,
        AxiomId::Zf5,
        AxiomId::Zf7,
        AxiomId::Zf9,
    ];

    pub fn is_schema(self) -> bool {
        self.schema().is_some()
    }

    pub fn schema(self) -> Option<AxiomSchema> {
        match self {
            AxiomId::Zf6 => Some(AxiomSchema {
                id: self,
                parameters: &["y"],
            }),
            AxiomId::Zf8(_) => Some(AxiomSchema {
                id: self,
                parameters: &["x", "y"],
            }),
            _ => None,
        }
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomId::Zf1 => f.write_str("ZF1"),
            AxiomId::Zf2 => f.write_str("ZF2"),
            AxiomId::Zf3 => f.write_str("ZF3"),
            AxiomId::Zf4 => f.write_str("ZF4"),
            AxiomId::Zf5 => f.write_str("ZF5"),
            AxiomId::Zf6 => f.write_str("ZF6"),
            AxiomId::Zf7 => f.write_str("ZF7"),
            AxiomId::Zf8(Uniqueness::Literal) => f.write_str("ZF8-paper"),
            AxiomId::Zf8(Uniqueness::Standard) => f.write_str("ZF8-std"),
            AxiomId::Zf9 => f.write_str("ZF9"),
        }
    }
}

impl FromStr for AxiomId {
    type Err = AxiomError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AxiomId::ALL
            .into_iter()
            .find(|id| id.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| AxiomError::UnknownAxiom(s.to_owned()))
    }
}

/// An axiom template taking a formula parameter whose distinguished free
/// variables are `parameters` (`F(y)` for Separation, `F(x,y)` for
/// Replacement).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AxiomSchema {
    pub id: AxiomId,
    pub parameters: &'static [&'static str],
}

impl AxiomSchema {
    pub fn arity(&self) -> usize {
        self.parameters.len()
    }

    /// Checks the side conditions on a parameter formula.
    ///
    /// Separation: `x` must not occur free, and the instance must be
    /// closed, so the free variables are among `y` and `z`. Replacement:
    /// `x` and `y` must not be bound anywhere in the parameter, and the free
    /// variables are among `x` and `y`.
    pub fn check(&self, param: &Formula) -> Result<(), AxiomError> {
        let free = param.free_variables();
        let allowed: &[&str] = match self.id {
            AxiomId::Zf6 => {
                if free.contains("x") {
                    return Err(AxiomError::FreeVariable {
                        id: self.id,
                        var: "x".into(),
                    });
                }
                &["y", "z"]
            }
            _ => {
                let bound = param.bound_variables();
                if let Some(v) = ["x", "y"].into_iter().find(|v| bound.contains(*v)) {
                    return Err(AxiomError::BoundVariable {
                        id: self.id,
                        var: v.into(),
                    });
                }
                &["x", "y"]
            }
        };
        let extra: Vec<String> = free
            .into_iter()
            .filter(|v| !allowed.contains(&v.as_str()))
            .collect();
        if !extra.is_empty() {
            return Err(AxiomError::NotClosed {
                id: self.id,
                vars: extra,
            });
        }
        Ok(())
    }

    /// Splices a parameter into the template after checking it.
    pub fn instantiate(&self, param: &Formula) -> Result<Formula, AxiomError> {
        self.check(param)?;
        Ok(match self.id {
            AxiomId::Zf6 => separation(param),
            AxiomId::Zf8(u) => replacement(u, param),
            _ => unreachable!("only ZF6 and ZF8 are schemata"),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AxiomError {
    #[error("unknown axiom `{0}`")]
    UnknownAxiom(String),
    #[error("{0} is a schema and needs a formula parameter")]
    MissingParameter(AxiomId),
    #[error("{0} takes no formula parameter")]
    UnexpectedParameter(AxiomId),
    #[error("{id} parameter must not have free occurrences of `{var}`")]
    FreeVariable { id: AxiomId, var: String },
    #[error("{id} parameter must not bind `{var}`")]
    BoundVariable { id: AxiomId, var: String },
    #[error("{id} instance would not be closed: free {}", vars.join(", "))]
    NotClosed { id: AxiomId, vars: Vec<String> },
    #[error("{0} is not an axiom of the identity-free theory")]
    NotIdentityFreeAxiom(AxiomId),
}

/// Which axiom list to use: ZF, or its identity-free translation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SuiteKind {
    Zf,
    Zphi,
}

impl fmt::Display for SuiteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SuiteKind::Zf => "zf",
            SuiteKind::Zphi => "zphi",
        })
    }
}

impl FromStr for SuiteKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "zf" => Ok(SuiteKind::Zf),
            "zphi" => Ok(SuiteKind::Zphi),
            _ => Err(format!("unknown suite `{s}` (expected zf or zphi)")),
        }
    }
}

/// Formula parameters for the two schemata. Every Replacement parameter
/// yields one instance of each [`Uniqueness`] variant.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SchemaParams {
    pub separation: Vec<Formula>,
    pub replacement: Vec<Formula>,
}

/// One formula of a suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteEntry {
    pub id: AxiomId,
    /// Index of the schema parameter this instance was built from.
    pub instance: Option<usize>,
    pub formula: Formula,
}

impl SuiteEntry {
    /// `ZF3`, or `ZF6[1]` for the second Separation instance.
    pub fn label(&self) -> String {
        match self.instance {
            Some(i) => format!("{}[{i}]", self.id),
            None => self.id.to_string(),
        }
    }
}

fn fixed(text: &str) -> Formula {
    parse(text).expect("built-in axiom text parses")
}

fn separation(param: &Formula) -> Formula {
    Formula::forall(
        "z",
        Formula::exists(
            "x",
            Formula::forall(
                "y",
                Formula::iff(
                    Formula::member("y", "x"),
                    Formula::and(Formula::member("y", "z"), param.clone()),
                ),
            ),
        ),
    )
}

fn replacement(u: Uniqueness, param: &Formula) -> Formula {
    let at = |a: &str, b: &str| {
        param
            .substitute("x", &Term::var(a))
            .substitute("y", &Term::var(b))
    };
    let unique = match u {
        Uniqueness::Literal => Formula::exists(
            "y",
            Formula::exists(
                "z",
                Formula::implies(
                    Formula::and(param.clone(), at("x", "z")),
                    Formula::equal("y", "z"),
                ),
            ),
        ),
        Uniqueness::Standard => Formula::exists(
            "y",
            Formula::and(
                param.clone(),
                Formula::forall(
                    "z",
                    Formula::implies(at("x", "z"), Formula::equal("z", "y")),
                ),
            ),
        ),
    };
    let image = Formula::forall(
        "z",
        Formula::exists(
            "w",
            Formula::forall(
                "t",
                Formula::iff(
                    Formula::member("t", "w"),
                    Formula::exists("s", Formula::and(Formula::member("s", "z"), at("s", "t"))),
                ),
            ),
        ),
    );
    Formula::implies(Formula::forall("x", unique), image)
}

/// The axiom `id` of ZF as a closed formula; identity may occur.
pub fn zf_axiom(id: AxiomId, param: Option<&Formula>) -> Result<Formula, AxiomError> {
    match (id.schema(), param) {
        (Some(schema), Some(p)) => return schema.instantiate(p),
        (Some(_), None) => return Err(AxiomError::MissingParameter(id)),
        (None, Some(_)) => return Err(AxiomError::UnexpectedParameter(id)),
        (None, None) => {}
    }
    Ok(fixed(match id {
        AxiomId::Zf1 => "forall x forall y ((forall z (z in x <-> z in y)) -> x = y)",
        AxiomId::Zf2 => "exists x forall y ~(y in x)",
        AxiomId::Zf3 => "forall x forall y exists z forall t (t in z <-> (t = x | t = y))",
        AxiomId::Zf4 => "forall x exists y forall t (t in y <-> (forall r (r in t -> r in x)))",
        AxiomId::Zf5 => "forall x exists y forall z (z in y <-> (exists w (z in w & w in x)))",
        AxiomId::Zf7 => {
            "exists x ((exists e ((forall u ~(u in e)) & e in x)) \
             & (forall y (y in x -> (exists z ((forall t (t in z <-> (t in y | t = y))) & z in x)))))"
        }
        AxiomId::Zf9 => {
            "forall x ((exists w (w in x)) -> (exists y (y in x & ~(exists z (z in x & z in y)))))"
        }
        AxiomId::Zf6 | AxiomId::Zf8(_) => unreachable!(),
    }))
}

/// The identity-free counterpart of `id`. Extensionality has none.
pub fn zphi_axiom(id: AxiomId, param: Option<&Formula>) -> Result<Formula, AxiomError> {
    if id == AxiomId::Zf1 {
        return Err(AxiomError::NotIdentityFreeAxiom(id));
    }
    Ok(eliminate_identity(&zf_axiom(id, param)?).result)
}

/// All axioms of a suite: the plain axioms, then one Separation instance
/// per parameter, then a literal/standard pair of Replacement instances per
/// parameter. The identity-free suite omits Extensionality.
pub fn suite(kind: SuiteKind, params: &SchemaParams) -> Result<Vec<SuiteEntry>, AxiomError> {
    let build = |id: AxiomId, p: Option<&Formula>| match kind {
        SuiteKind::Zf => zf_axiom(id, p),
        SuiteKind::Zphi => zphi_axiom(id, p),
    };
    let mut out = Vec::new();
    for id in AxiomId::PLAIN {
        if kind == SuiteKind::Zphi && id == AxiomId::Zf1 {
            continue;
        }
        out.push(SuiteEntry {
            id,
            instance: None,
            formula: build(id, None)?,
        });
    }
    for (i, p) in params.separation.iter().enumerate() {
        out.push(SuiteEntry {
            id: AxiomId::Zf6,
            instance: Some(i),
            formula: build(AxiomId::Zf6, Some(p))?,
        });
    }
    for (i, p) in params.replacement.iter().enumerate() {
        for u in [Uniqueness::Literal, Uniqueness::Standard] {
            let id = AxiomId::Zf8(u);
            out.push(SuiteEntry {
                id,
                instance: Some(i),
                formula: build(id, Some(p))?,
            });
        }
    }
    // Keep the listing in axiom-number order.
    out.sort_by_key(|e| (e.id, e.instance));
    Ok(out)
}

/// Suite entries keyed by label.
pub fn suite_map(
    kind: SuiteKind,
    params: &SchemaParams,
) -> Result<BTreeMap<String, Formula>, AxiomError> {
    Ok(suite(kind, params)?
        .into_iter()
        .map(|e| (e.label(), e.formula))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn text(id: AxiomId) -> String {
        zf_axiom(id, None).unwrap().to_string()
    }

    #[test]
    fn golden_zf_texts() {
        assert_eq!(
            text(AxiomId::Zf1),
            "forall x (forall y ((forall z (z in x <-> z in y)) -> x = y))"
        );
        assert_eq!(text(AxiomId::Zf2), "exists x (forall y (~(y in x)))");
        assert_eq!(
            text(AxiomId::Zf3),
            "forall x (forall y (exists z (forall t (t in z <-> (t = x | t = y)))))"
        );
        assert_eq!(
            text(AxiomId::Zf4),
            "forall x (exists y (forall t (t in y <-> (forall r (r in t -> r in x)))))"
        );
        assert_eq!(
            text(AxiomId::Zf5),
            "forall x (exists y (forall z (z in y <-> (exists w (z in w & w in x)))))"
        );
        assert_eq!(
            text(AxiomId::Zf7),
            "exists x ((exists e ((forall u (~(u in e))) & e in x)) & (forall y (y in x -> (exists z ((forall t (t in z <-> (t in y | t = y))) & z in x)))))"
        );
        assert_eq!(
            text(AxiomId::Zf9),
            "forall x ((exists w (w in x)) -> (exists y (y in x & ~(exists z (z in x & z in y)))))"
        );
    }

    #[test]
    fn pair_axiom_is_rewritten() {
        let f = zphi_axiom(AxiomId::Zf3, None).unwrap();
        assert_eq!(
            f.to_string(),
            "forall x (forall y (exists z (forall t (t in z <-> ((forall t0 (t0 in t <-> t0 in x)) | (forall t0 (t0 in t <-> t0 in y)))))))"
        );
    }

    #[test]
    fn identity_free_axioms_are_unchanged() {
        for id in [AxiomId::Zf2, AxiomId::Zf4, AxiomId::Zf5, AxiomId::Zf9] {
            assert_eq!(zf_axiom(id, None), zphi_axiom(id, None));
        }
        let p = parse("~(y in y)").unwrap();
        assert_eq!(
            zf_axiom(AxiomId::Zf6, Some(&p)),
            zphi_axiom(AxiomId::Zf6, Some(&p))
        );
    }

    #[test]
    fn separation_instance() {
        let p = parse("~(y in y)").unwrap();
        let f = zf_axiom(AxiomId::Zf6, Some(&p)).unwrap();
        assert_eq!(
            f.to_string(),
            "forall z (exists x (forall y (y in x <-> (y in z & ~(y in y)))))"
        );
    }

    #[test]
    fn replacement_variants() {
        let p = parse("x = y").unwrap();
        let literal = zf_axiom(AxiomId::Zf8(Uniqueness::Literal), Some(&p)).unwrap();
        assert_eq!(
            literal.to_string(),
            "((forall x (exists y (exists z ((x = y & x = z) -> y = z)))) -> (forall z (exists w (forall t (t in w <-> (exists s (s in z & s = t)))))))"
        );
        let std = zf_axiom(AxiomId::Zf8(Uniqueness::Standard), Some(&p)).unwrap();
        assert_eq!(
            std.to_string(),
            "((forall x (exists y (x = y & (forall z (x = z -> z = y))))) -> (forall z (exists w (forall t (t in w <-> (exists s (s in z & s = t)))))))"
        );
    }

    #[test]
    fn replacement_substitution_avoids_capture() {
        // The parameter binds `s`, which is also the name used for the
        // image quantifier.
        let p = parse("exists s (s in x & y in s)").unwrap();
        let f = zf_axiom(AxiomId::Zf8(Uniqueness::Standard), Some(&p)).unwrap();
        assert!(f.is_closed());
        assert!(f.to_string().contains("exists s0 (s0 in s & t in s0)"));
    }

    #[test]
    fn schema_side_conditions() {
        let bad = parse("x in y").unwrap();
        assert_eq!(
            zf_axiom(AxiomId::Zf6, Some(&bad)),
            Err(AxiomError::FreeVariable {
                id: AxiomId::Zf6,
                var: "x".into()
            })
        );
        let bound = parse("forall y (x in y)").unwrap();
        assert_eq!(
            zf_axiom(AxiomId::Zf8(Uniqueness::Literal), Some(&bound)),
            Err(AxiomError::BoundVariable {
                id: AxiomId::Zf8(Uniqueness::Literal),
                var: "y".into()
            })
        );
        let open = parse("y in q").unwrap();
        assert!(matches!(
            zf_axiom(AxiomId::Zf6, Some(&open)),
            Err(AxiomError::NotClosed { .. })
        ));
        assert_eq!(
            zf_axiom(AxiomId::Zf6, None),
            Err(AxiomError::MissingParameter(AxiomId::Zf6))
        );
        assert_eq!(
            zf_axiom(AxiomId::Zf2, Some(&bad)),
            Err(AxiomError::UnexpectedParameter(AxiomId::Zf2))
        );
        assert_eq!(
            zphi_axiom(AxiomId::Zf1, None),
            Err(AxiomError::NotIdentityFreeAxiom(AxiomId::Zf1))
        );
    }

    #[test]
    fn suite_counts() {
        let none = SchemaParams::default();
        assert_eq!(suite(SuiteKind::Zf, &none).unwrap().len(), 7);
        assert_eq!(suite(SuiteKind::Zphi, &none).unwrap().len(), 6);
        let two = SchemaParams {
            separation: vec![
                parse("~(y in y)").unwrap(),
                parse("exists w (w in y)").unwrap(),
            ],
            replacement: vec![],
        };
        assert_eq!(suite(SuiteKind::Zphi, &two).unwrap().len(), 8);
        let with_repl = SchemaParams {
            replacement: vec![parse("x = y").unwrap()],
            ..two
        };
        let labels: Vec<String> = suite(SuiteKind::Zf, &with_repl)
            .unwrap()
            .iter()
            .map(SuiteEntry::label)
            .collect();
        assert_eq!(
            labels,
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
    fn all_axioms_closed_and_zphi_identity_free() {
        let params = SchemaParams {
            separation: vec![parse("~(y in y)").unwrap()],
            replacement: vec![parse("x = y").unwrap()],
        };
        for e in suite(SuiteKind::Zf, &params).unwrap() {
            assert!(e.formula.is_closed(), "{} not closed", e.label());
        }
        for e in suite(SuiteKind::Zphi, &params).unwrap() {
            assert!(e.formula.is_identity_free(), "{}", e.label());
        }
    }

    #[test]
    fn axiom_ids_round_trip_through_text() {
        for id in AxiomId::ALL {
            assert_eq!(id.to_string().parse::<AxiomId>().unwrap(), id);
        }
        assert!("ZF8".parse::<AxiomId>().is_err());
    }
}
