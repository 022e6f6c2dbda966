//! Text formats for models and membership structures.
//!
//! Model file, one declaration per line, `#` starts a comment:
//!
//! ```text
//! atoms: a1 a2                  # optional atom alphabet
//! element e = code 5            # pure set by Ackermann code
//! element s = {a1, e}           # set by members (atoms or earlier elements)
//! universe: e s                 # ordered universe
//! identity: no                  # optional, default yes
//! ```
//!
//! Structure file: `node NAME` and `edge MEMBER CONTAINER` lines. A stream
//! of structures separates them with `---` lines.

use super::{AbstractStructure, Descriptor, Interpretation, Structure};
use crate::syntax::is_identifier;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct FileError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, FileError> {
    Err(FileError {
        line,
        message: message.into(),
    })
}

/// Non-empty lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn ident(line: usize, s: &str) -> Result<String, FileError> {
    if is_identifier(s) {
        Ok(s.to_owned())
    } else {
        err(line, format!("`{s}` is not a valid name"))
    }
}

/// Reads a model file.
pub fn parse_model(text: &str) -> Result<Interpretation, FileError> {
    let mut symbols: BTreeMap<String, Descriptor> = BTreeMap::new();
    let mut universe: Option<(usize, Vec<String>)> = None;
    let mut identity = true;
    let mut last_line = 0;
    for (no, line) in content_lines(text) {
        last_line = no;
        if let Some(rest) = line.strip_prefix("atoms:") {
            for a in rest.split_whitespace() {
                let a = ident(no, a)?;
                if symbols.contains_key(&a) {
                    return err(no, format!("`{a}` declared twice"));
                }
                symbols.insert(a.clone(), Descriptor::Atom(a));
            }
        } else if let Some(rest) = line.strip_prefix("universe:") {
            if universe.is_some() {
                return err(no, "universe declared twice");
            }
            let names = rest
                .split_whitespace()
                .map(|n| ident(no, n))
                .collect::<Result<_, _>>()?;
            universe = Some((no, names));
        } else if let Some(rest) = line.strip_prefix("identity:") {
            identity = match rest.trim() {
                "yes" => true,
                "no" => false,
                other => return err(no, format!("identity must be yes or no, found `{other}`")),
            };
        } else if let Some(rest) = line.strip_prefix("element ") {
            let Some((name, def)) = rest.split_once('=') else {
                return err(no, "expected `element NAME = ...`");
            };
            let name = ident(no, name.trim())?;
            if symbols.contains_key(&name) {
                return err(no, format!("`{name}` declared twice"));
            }
            let def = def.trim();
            let d = if let Some(code) = def.strip_prefix("code") {
                let code = code.trim();
                match code.parse::<u64>() {
                    Ok(c) => Descriptor::from_code(c),
                    Err(_) => {
                        return err(no, format!("`{code}` is not a code (decimal, below 2^64)"))
                    }
                }
            } else if let Some(inner) = def.strip_prefix('{').and_then(|d| d.strip_suffix('}')) {
                let mut members = Vec::new();
                for m in inner.split(',').map(str::trim).filter(|m| !m.is_empty()) {
                    match symbols.get(m) {
                        Some(d) => members.push(d.clone()),
                        None => {
                            return err(
                                no,
                                format!("`{m}` is not a previously declared element or atom"),
                            )
                        }
                    }
                }
                Descriptor::set(members)
            } else {
                return err(no, format!("expected `{{...}}` or `code N`, found `{def}`"));
            };
            symbols.insert(name, d);
        } else {
            return err(no, format!("unrecognized declaration `{line}`"));
        }
    }
    let Some((uline, names)) = universe else {
        return err(last_line + 1, "missing `universe:` declaration");
    };
    let mut elements = Vec::new();
    for n in names {
        match symbols.get(&n) {
            Some(d) => elements.push((n, d.clone())),
            None => return err(uline, format!("`{n}` is not declared")),
        }
    }
    Interpretation::new(elements, identity).map_err(|e| FileError {
        line: uline,
        message: e.to_string(),
    })
}

fn collect_atoms(d: &Descriptor, out: &mut BTreeSet<String>) {
    match d {
        Descriptor::Atom(a) => {
            out.insert(a.clone());
        }
        Descriptor::Set(ms) => ms.iter().for_each(|m| collect_atoms(m, out)),
    }
}

struct ModelWriter<'a> {
    by_descriptor: HashMap<&'a Descriptor, &'a str>,
    declared: HashMap<Descriptor, String>,
    used: BTreeSet<String>,
    out: String,
    aux: usize,
}

impl<'a> ModelWriter<'a> {
    fn declare(&mut self, d: &Descriptor, name: Option<&str>) -> String {
        if let Some(n) = self.declared.get(d) {
            return n.clone();
        }
        let name = match name.or_else(|| self.by_descriptor.get(d).copied()) {
            Some(n) => n.to_owned(),
            None => loop {
                let n = format!("aux{}", self.aux);
                self.aux += 1;
                if !self.used.contains(&n) {
                    break n;
                }
            },
        };
        let body = match d.code() {
            Some(c) => format!("code {c}"),
            None => {
                let members: Vec<String> = d
                    .external_members()
                    .iter()
                    .map(|m| match m {
                        Descriptor::Atom(a) => a.clone(),
                        _ => self.declare(m, None),
                    })
                    .collect();
                format!("{{{}}}", members.join(", "))
            }
        };
        let _ = writeln!(self.out, "element {name} = {body}");
        self.declared.insert(d.clone(), name.clone());
        name
    }
}

/// Writes a model file that [`parse_model`] reads back to the same
/// universe, labels and identity flag. Extra constant aliases are not
/// representable and are dropped.
pub fn write_model(m: &Interpretation) -> String {
    let mut atoms = BTreeSet::new();
    m.universe()
        .iter()
        .for_each(|d| collect_atoms(d, &mut atoms));
    let mut used: BTreeSet<String> = m.labels().iter().cloned().collect();
    used.extend(atoms.iter().cloned());
    let mut w = ModelWriter {
        by_descriptor: m
            .universe()
            .iter()
            .zip(m.labels())
            .filter(|(d, _)| !d.is_atom())
            .map(|(d, l)| (d, l.as_str()))
            .collect(),
        declared: HashMap::new(),
        used,
        out: String::new(),
        aux: 0,
    };
    if !atoms.is_empty() {
        let list: Vec<&str> = atoms.iter().map(String::as_str).collect();
        let _ = writeln!(w.out, "atoms: {}", list.join(" "));
    }
    let mut universe_names = Vec::new();
    for (d, label) in m.universe().iter().zip(m.labels()) {
        match d {
            // atoms are named by their label in the atoms line
            Descriptor::Atom(a) => universe_names.push(a.clone()),
            _ => universe_names.push(w.declare(d, Some(label))),
        }
    }
    let _ = writeln!(w.out, "universe: {}", universe_names.join(" "));
    let _ = writeln!(
        w.out,
        "identity: {}",
        if m.has_identity() { "yes" } else { "no" }
    );
    w.out
}

/// Reads a structure file.
pub fn parse_structure(text: &str) -> Result<AbstractStructure, FileError> {
    parse_structure_at(text, 0)
}

fn parse_structure_at(text: &str, offset: usize) -> Result<AbstractStructure, FileError> {
    let mut nodes: Vec<String> = Vec::new();
    let mut edges: Vec<(String, String)> = Vec::new();
    for (no, line) in content_lines(text) {
        let no = no + offset;
        let words: Vec<&str> = line.split_whitespace().collect();
        match words.as_slice() {
            ["node", n] => {
                let n = ident(no, n)?;
                if nodes.contains(&n) {
                    return err(no, format!("node `{n}` declared twice"));
                }
                nodes.push(n);
            }
            ["edge", a, b] => {
                for x in [a, b] {
                    if !nodes.iter().any(|n| n == x) {
                        return err(no, format!("edge refers to undeclared node `{x}`"));
                    }
                }
                edges.push((a.to_string(), b.to_string()));
            }
            _ => {
                return err(
                    no,
                    format!("expected `node NAME` or `edge MEMBER CONTAINER`, found `{line}`"),
                )
            }
        }
    }
    AbstractStructure::new(
        nodes.iter().map(String::as_str),
        edges.iter().map(|(a, b)| (a.as_str(), b.as_str())),
    )
    .map_err(|e| FileError {
        line: 0,
        message: e.to_string(),
    })
}

pub fn write_structure(g: &AbstractStructure) -> String {
    let mut out = String::new();
    for n in g.nodes() {
        let _ = writeln!(out, "node {n}");
    }
    for &(m, c) in g.edges() {
        let _ = writeln!(out, "edge {} {}", g.nodes()[m], g.nodes()[c]);
    }
    out
}

/// Reads structures separated by `---` lines.
pub fn parse_structure_stream(text: &str) -> Result<Vec<AbstractStructure>, FileError> {
    let mut out = Vec::new();
    let mut chunk = String::new();
    let mut chunk_start = 0;
    for (i, line) in text.lines().enumerate() {
        if line.trim() == "---" {
            out.push(parse_structure_at(&chunk, chunk_start)?);
            chunk.clear();
            chunk_start = i + 1;
        } else {
            chunk.push_str(line);
            chunk.push('\n');
        }
    }
    if !chunk.trim().is_empty() {
        out.push(parse_structure_at(&chunk, chunk_start)?);
    }
    Ok(out)
}

/// Writes one structure block followed by a `---` separator.
pub fn write_structure_block(index: usize, g: &AbstractStructure, out: &mut String) {
    let _ = writeln!(out, "# structure {index} ({} nodes)", g.nodes().len());
    out.push_str(&write_structure(g));
    out.push_str("---\n");
}
