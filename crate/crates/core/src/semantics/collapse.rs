use super::{Descriptor, Interpretation, Structure};
use crate::syntax::is_identifier;
use std::collections::BTreeSet;
use thiserror::Error;

/// A bare membership structure: named nodes and `(member, container)` edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractStructure {
    nodes: Vec<String>,
    edges: BTreeSet<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CollapseError {
    #[error("`{0}` is not a valid node name")]
    InvalidName(String),
    #[error("node `{0}` declared twice")]
    DuplicateNode(String),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    /// Nodes `c[0] ∈ c[1] ∈ ... ∈ c[k-1] ∈ c[0]`.
    #[error("membership is not well-founded: cycle {}", cycle.join(" in "))]
    Cycle { cycle: Vec<String> },
    #[error("not extensional: `{0}` and `{1}` have the same members")]
    NotExtensional(String, String),
}

impl AbstractStructure {
    pub fn new<'a>(
        nodes: impl IntoIterator<Item = &'a str>,
        edges: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self, CollapseError> {
        let mut names: Vec<String> = Vec::new();
        for n in nodes {
            if !is_identifier(n) {
                return Err(CollapseError::InvalidName(n.into()));
            }
            if names.iter().any(|m| m == n) {
                return Err(CollapseError::DuplicateNode(n.into()));
            }
            names.push(n.to_owned());
        }
        let idx = |n: &str| {
            names
                .iter()
                .position(|m| m == n)
                .ok_or_else(|| CollapseError::UnknownNode(n.into()))
        };
        let edges = edges
            .into_iter()
            .map(|(a, b)| Ok((idx(a)?, idx(b)?)))
            .collect::<Result<_, CollapseError>>()?;
        Ok(AbstractStructure {
            nodes: names,
            edges,
        })
    }

    /// The structure on nodes `n0..n{size-1}` whose edge `(i, j)` is present
    /// iff bit `i * size + j` of `relation` is set.
    pub fn from_relation(size: usize, relation: u64) -> Self {
        let nodes = (0..size).map(|i| format!("n{i}")).collect();
        let edges = (0..size)
            .flat_map(|i| (0..size).map(move |j| (i, j)))
            .filter(|(i, j)| relation >> (i * size + j) & 1 == 1)
            .collect();
        AbstractStructure { nodes, edges }
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    /// Member nodes of `container`, in node order.
    pub fn members_of(&self, container: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter(|&&(_, c)| c == container)
            .map(|&(m, _)| m)
            .collect()
    }

    /// A membership cycle, if any. The search visits nodes in order and
    /// follows member-to-container edges, so the result is deterministic.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Open,
            Done,
        }
        fn dfs(
            g: &AbstractStructure,
            v: usize,
            marks: &mut [Mark],
            stack: &mut Vec<usize>,
        ) -> Option<Vec<usize>> {
            marks[v] = Mark::Open;
            stack.push(v);
            for &(_, c) in g.edges.iter().filter(|&&(m, _)| m == v) {
                match marks[c] {
                    Mark::Open => {
                        let start = stack.iter().position(|&s| s == c).unwrap();
                        return Some(stack[start..].to_vec());
                    }
                    Mark::New => {
                        if let Some(cycle) = dfs(g, c, marks, stack) {
                            return Some(cycle);
                        }
                    }
                    Mark::Done => {}
                }
            }
            stack.pop();
            marks[v] = Mark::Done;
            None
        }
        let mut marks = vec![Mark::New; self.nodes.len()];
        for v in 0..self.nodes.len() {
            if marks[v] == Mark::New {
                if let Some(c) = dfs(self, v, &mut marks, &mut Vec::new()) {
                    return Some(c);
                }
            }
        }
        None
    }

    /// The least pair of distinct nodes with identical member sets.
    pub fn extensionality_clash(&self) -> Option<(usize, usize)> {
        let members: Vec<Vec<usize>> = (0..self.nodes.len()).map(|i| self.members_of(i)).collect();
        (0..self.nodes.len())
            .flat_map(|i| (i + 1..self.nodes.len()).map(move |j| (i, j)))
            .find(|&(i, j)| members[i] == members[j])
    }
}

impl Structure for AbstractStructure {
    fn size(&self) -> usize {
        self.nodes.len()
    }

    fn is_member(&self, member: usize, container: usize) -> bool {
        self.edges.contains(&(member, container))
    }

    fn constant(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n == name)
    }

    fn has_identity(&self) -> bool {
        true
    }

    fn label(&self, index: usize) -> String {
        self.nodes[index].clone()
    }
}

/// The transitive model isomorphic to a well-founded extensional structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collapse {
    /// Universe in node order, each element named after its node.
    pub model: Interpretation,
    /// Node name and the pure descriptor it collapses to.
    pub mapping: Vec<(String, Descriptor)>,
}

/// Maps every node to the set of the images of its members.
///
/// Well-foundedness is checked first (a cycle is reported), then
/// extensionality (the least clashing pair is reported).
pub fn mostowski_collapse(g: &AbstractStructure) -> Result<Collapse, CollapseError> {
    if let Some(cycle) = g.find_cycle() {
        return Err(CollapseError::Cycle {
            cycle: cycle.into_iter().map(|i| g.nodes[i].clone()).collect(),
        });
    }
    if let Some((a, b)) = g.extensionality_clash() {
        return Err(CollapseError::NotExtensional(
            g.nodes[a].clone(),
            g.nodes[b].clone(),
        ));
    }
    fn image(g: &AbstractStructure, v: usize, memo: &mut [Option<Descriptor>]) -> Descriptor {
        if let Some(d) = &memo[v] {
            return d.clone();
        }
        let d = Descriptor::set(g.members_of(v).into_iter().map(|m| image(g, m, memo)));
        memo[v] = Some(d.clone());
        d
    }
    let mut memo = vec![None; g.nodes.len()];
    let mapping: Vec<(String, Descriptor)> = (0..g.nodes.len())
        .map(|v| (g.nodes[v].clone(), image(g, v, &mut memo)))
        .collect();
    let model = Interpretation::new(mapping.iter().cloned(), true)
        .expect("collapse of an extensional well-founded structure is injective");
    Ok(Collapse { model, mapping })
}
