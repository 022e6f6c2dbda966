use super::{Descriptor, Structure};
use crate::syntax::is_identifier;
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("`{0}` is not a valid identifier")]
    InvalidName(String),
    #[error("name `{0}` is bound twice")]
    DuplicateName(String),
    #[error("elements `{first}` and `{second}` have the same descriptor {descriptor}")]
    DuplicateDescriptor {
        first: String,
        second: String,
        descriptor: Descriptor,
    },
    #[error("index {index} is outside a universe of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
}

/// A universe element together with a member of it that lies outside the
/// universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub container: usize,
    pub missing: Descriptor,
}

/// A finite interpretation `(U, I)`: an ordered universe of distinct
/// descriptors, constant names bound to universe elements, and whether the
/// identity predicate is interpreted (as descriptor equality).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interpretation {
    universe: Vec<Descriptor>,
    labels: Vec<String>,
    names: BTreeMap<String, usize>,
    has_identity: bool,
    /// `membership[member * n + container]`
    membership: Vec<bool>,
}

impl Interpretation {
    /// Builds an interpretation from named elements, in universe order.
    /// Each element's name becomes a constant denoting it.
    pub fn new(
        elements: impl IntoIterator<Item = (String, Descriptor)>,
        has_identity: bool,
    ) -> Result<Self, ModelError> {
        let mut universe = Vec::new();
        let mut labels: Vec<String> = Vec::new();
        let mut names = BTreeMap::new();
        let mut seen: HashMap<Descriptor, usize> = HashMap::new();
        for (name, d) in elements {
            if !is_identifier(&name) {
                return Err(ModelError::InvalidName(name));
            }
            if names.contains_key(&name) {
                return Err(ModelError::DuplicateName(name));
            }
            if let Some(&i) = seen.get(&d) {
                return Err(ModelError::DuplicateDescriptor {
                    first: labels[i].clone(),
                    second: name,
                    descriptor: d,
                });
            }
            let i = universe.len();
            seen.insert(d.clone(), i);
            names.insert(name.clone(), i);
            labels.push(name);
            universe.push(d);
        }
        let n = universe.len();
        let mut membership = vec![false; n * n];
        for (c, d) in universe.iter().enumerate() {
            for m in d.external_members() {
                if let Some(&i) = seen.get(m) {
                    membership[i * n + c] = true;
                }
            }
        }
        Ok(Interpretation {
            universe,
            labels,
            names,
            has_identity,
            membership,
        })
    }

    /// Binds an additional constant name to an existing element.
    pub fn with_alias(mut self, name: &str, index: usize) -> Result<Self, ModelError> {
        if !is_identifier(name) {
            return Err(ModelError::InvalidName(name.into()));
        }
        if index >= self.universe.len() {
            return Err(ModelError::IndexOutOfRange {
                index,
                size: self.universe.len(),
            });
        }
        if self.names.insert(name.to_owned(), index).is_some() {
            return Err(ModelError::DuplicateName(name.into()));
        }
        Ok(self)
    }

    /// The same universe with the identity flag set as given.
    pub fn with_identity(mut self, has_identity: bool) -> Self {
        self.has_identity = has_identity;
        self
    }

    pub fn universe(&self) -> &[Descriptor] {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.universe.len()
    }

    pub fn is_empty(&self) -> bool {
        self.universe.is_empty()
    }

    pub fn names(&self) -> &BTreeMap<String, usize> {
        &self.names
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, d: &Descriptor) -> Option<usize> {
        self.universe.iter().position(|u| u == d)
    }

    /// The first universe element with an external member outside the
    /// universe, scanning elements and then their members in order.
    pub fn transitivity_counterexample(&self) -> Option<Counterexample> {
        self.universe.iter().enumerate().find_map(|(c, d)| {
            d.external_members()
                .iter()
                .find(|m| self.index_of(m).is_none())
                .map(|m| Counterexample {
                    container: c,
                    missing: m.clone(),
                })
        })
    }

    /// Every external member of every element is in the universe.
    pub fn is_transitive(&self) -> bool {
        self.transitivity_counterexample().is_none()
    }

    /// The sub-interpretation on the given indices (kept in universe order),
    /// with names restricted to the kept elements.
    pub fn restrict(&self, keep: &[usize]) -> Interpretation {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let remap: HashMap<usize, usize> = keep
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();
        let mut out = Interpretation::new(
            keep.iter()
                .map(|&i| (self.labels[i].clone(), self.universe[i].clone())),
            self.has_identity,
        )
        .expect("restriction of a valid interpretation is valid");
        for (name, old) in &self.names {
            if let Some(&new) = remap.get(old) {
                out.names.insert(name.clone(), new);
            }
        }
        out
    }
}

impl Structure for Interpretation {
    fn size(&self) -> usize {
        self.universe.len()
    }

    fn is_member(&self, member: usize, container: usize) -> bool {
        self.membership[member * self.universe.len() + container]
    }

    fn constant(&self, name: &str) -> Option<usize> {
        self.names.get(name).copied()
    }

    fn has_identity(&self) -> bool {
        self.has_identity
    }

    fn label(&self, index: usize) -> String {
        self.labels[index].clone()
    }
}
