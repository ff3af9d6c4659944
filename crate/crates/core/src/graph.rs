//! Network systems: an ordered node list, an ordered directed edge list and a
//! total weight map, plus the tiered structural validation that gates every
//! matrix builder.
//!
//! Node order and edge order are load-bearing: matrix row `i` is node `i`,
//! incidence column `j` is edge `j`. Weights are stored as exact rationals
//! whatever backend the matrices are later built on.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeLabel(String);

impl NodeLabel {
    pub fn new(label: impl Into<String>) -> Self {
        Self(label.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NodeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for NodeLabel {
    fn from(s: &str) -> Self {
        Self::new(s)
    }
}

impl From<String> for NodeLabel {
    fn from(s: String) -> Self {
        Self(s)
    }
}

/// Directed edge from `head` (origin) to `tail` (destination).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub head: NodeLabel,
    pub tail: NodeLabel,
}

impl Edge {
    pub fn new(head: impl Into<NodeLabel>, tail: impl Into<NodeLabel>) -> Self {
        Self {
            head: head.into(),
            tail: tail.into(),
        }
    }

    pub fn reversed(&self) -> Self {
        Self {
            head: self.tail.clone(),
            tail: self.head.clone(),
        }
    }

    pub fn is_self_loop(&self) -> bool {
        self.head == self.tail
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.head, self.tail)
    }
}

/// A structural problem with a network system.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("node {index} has an empty label")]
    EmptyLabel { index: usize },
    #[error("duplicate node `{label}`")]
    DuplicateNode { label: NodeLabel },
    #[error("edge {index} {edge}: endpoint `{label}` is not a node")]
    UnknownEndpoint { index: usize, edge: Edge, label: NodeLabel },
    #[error("edge {index} {edge}: edge weight must be positive, got {weight}")]
    NonPositiveWeight { index: usize, edge: Edge, weight: Rational },
    #[error("weight {weight} assigned to {edge}, which is not an edge")]
    WeightOnNonEdge { edge: Edge, weight: Rational },
    #[error("edge list is empty")]
    NoEdges,
    #[error("edge {index} {edge} has no reverse edge")]
    MissingReverse { index: usize, edge: Edge },
    #[error("edge {index} {edge} repeats edge {first}")]
    DuplicateEdge { index: usize, first: usize, edge: Edge },
    #[error("edge {index} {edge} is a self-loop")]
    SelfLoop { index: usize, edge: Edge },
    #[error("edge {index} {edge} has weight {weight}, expected 1")]
    NonUnitWeight { index: usize, edge: Edge, weight: Rational },
    #[error("edge {index} {edge} has weight {weight} but its reverse has {reverse}")]
    AsymmetricWeight {
        index: usize,
        edge: Edge,
        weight: Rational,
        reverse: Rational,
    },
    #[error("{nodes} node(s) cannot be split into a boundary of length >= 2 and a non-empty interior")]
    NoPartition { nodes: usize },
}

/// Violations collected while building a system.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct Violations(pub Vec<Violation>);

impl fmt::Display for Violations {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// The structural levels a system can be validated against.
///
/// Each tier adds its own predicates on top of its parents':
///
/// ```text
/// WellFormed <- Nonempty <- Symmetric ----------------------.
///                  ^                                         \
///                  '-- NoMulti <- Simple <------------.       \
///                        ^                             \       \
///                        '-- Weighted <- SimpleWeighted \       |
///                              ^   ^  <- BinaryWeighted          |
///                              |   '- PartitionedWeighted        |
///                              '----- SymmetricWeighted ---------'
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tier {
    WellFormed,
    Nonempty,
    Symmetric,
    NoMulti,
    Simple,
    Weighted,
    BinaryWeighted,
    SymmetricWeighted,
    SimpleWeighted,
    PartitionedWeighted,
}

impl Tier {
    pub const ALL: [Tier; 10] = [
        Tier::WellFormed,
        Tier::Nonempty,
        Tier::Symmetric,
        Tier::NoMulti,
        Tier::Simple,
        Tier::Weighted,
        Tier::BinaryWeighted,
        Tier::SymmetricWeighted,
        Tier::SimpleWeighted,
        Tier::PartitionedWeighted,
    ];

    /// Direct parents in the inheritance lattice.
    pub fn parents(self) -> &'static [Tier] {
        match self {
            Tier::WellFormed => &[],
            Tier::Nonempty => &[Tier::WellFormed],
            Tier::Symmetric => &[Tier::Nonempty],
            Tier::NoMulti => &[Tier::Nonempty],
            Tier::Simple => &[Tier::NoMulti],
            Tier::Weighted => &[Tier::NoMulti],
            Tier::BinaryWeighted => &[Tier::Weighted],
            Tier::SymmetricWeighted => &[Tier::Weighted, Tier::Symmetric],
            Tier::SimpleWeighted => &[Tier::Weighted, Tier::Simple],
            Tier::PartitionedWeighted => &[Tier::Weighted],
        }
    }

    /// This tier and all of its ancestors, ancestors first.
    pub fn lineage(self) -> Vec<Tier> {
        let mut out = Vec::new();
        fn visit(t: Tier, out: &mut Vec<Tier>) {
            for &p in t.parents() {
                visit(p, out);
            }
            if !out.contains(&t) {
                out.push(t);
            }
        }
        visit(self, &mut out);
        out
    }

    pub fn implies(self, other: Tier) -> bool {
        self.lineage().contains(&other)
    }

    pub fn name(self) -> &'static str {
        match self {
            Tier::WellFormed => "well-formed",
            Tier::Nonempty => "nonempty",
            Tier::Symmetric => "symmetric",
            Tier::NoMulti => "no-multi",
            Tier::Simple => "simple",
            Tier::Weighted => "weighted",
            Tier::BinaryWeighted => "binary-weighted",
            Tier::SymmetricWeighted => "symmetric-weighted",
            Tier::SimpleWeighted => "simple-weighted",
            Tier::PartitionedWeighted => "partitioned-weighted",
        }
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Tier {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .map(|c| c.to_ascii_lowercase())
            .collect();
        Tier::ALL
            .into_iter()
            .find(|t| t.name().replace('-', "") == key)
            .ok_or_else(|| {
                let names: Vec<_> = Tier::ALL.iter().map(|t| t.name()).collect();
                format!("unknown tier `{s}` (expected one of {})", names.join(", "))
            })
    }
}

/// A failing predicate, attributed to the tier level that introduced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TierViolation {
    pub tier: Tier,
    pub violation: Violation,
}

impl fmt::Display for TierViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.tier, self.violation)
    }
}

/// A system did not meet the tier an operation requires.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("system does not satisfy tier {required}: {}", list(.violations))]
pub struct TierError {
    pub required: Tier,
    pub violations: Vec<TierViolation>,
}

fn list(vs: &[TierViolation]) -> String {
    vs.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown node `{0}`")]
    UnknownNode(NodeLabel),
    #[error(
        "boundary size {boundary_size} is invalid for {nodes} nodes: \
         need length N1 >= 2 and N2 != [] (2 <= size <= {max})",
        max = .nodes.saturating_sub(1)
    )]
    Partition { boundary_size: usize, nodes: usize },
    #[error("reordering is not a permutation of the nodes: {0}")]
    Reorder(String),
}

/// Ordered nodes, ordered directed edges and a weight for every listed pair.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkSystem {
    nodes: Vec<NodeLabel>,
    edges: Vec<Edge>,
    /// edges as node positions, parallel to `edges`
    edge_index: Vec<(usize, usize)>,
    weights: HashMap<(usize, usize), Rational>,
    position: HashMap<NodeLabel, usize>,
}

impl NetworkSystem {
    /// Validates the well-formedness invariants and assembles the system.
    ///
    /// `weights` is read as a total map with default zero, so every listed
    /// edge needs a positive entry and no other pair may carry one.
    pub fn build(
        nodes: Vec<NodeLabel>,
        edges: Vec<Edge>,
        weights: HashMap<Edge, Rational>,
    ) -> Result<Self, Violations> {
        let mut violations = Vec::new();
        let mut position = HashMap::with_capacity(nodes.len());
        for (index, label) in nodes.iter().enumerate() {
            if label.as_str().is_empty() {
                violations.push(Violation::EmptyLabel { index });
            }
            if position.insert(label.clone(), index).is_some() {
                violations.push(Violation::DuplicateNode { label: label.clone() });
            }
        }

        let mut edge_index = Vec::with_capacity(edges.len());
        for (index, edge) in edges.iter().enumerate() {
            let mut lookup = |label: &NodeLabel| {
                let pos = position.get(label).copied();
                if pos.is_none() {
                    violations.push(Violation::UnknownEndpoint {
                        index,
                        edge: edge.clone(),
                        label: label.clone(),
                    });
                }
                pos
            };
            let head = lookup(&edge.head);
            let tail = if edge.is_self_loop() { head } else { lookup(&edge.tail) };
            if let (Some(h), Some(t)) = (head, tail) {
                edge_index.push((h, t));
            }
            let weight = weights.get(edge).cloned().unwrap_or_else(Rational::zero);
            if !weight.is_positive() {
                violations.push(Violation::NonPositiveWeight {
                    index,
                    edge: edge.clone(),
                    weight,
                });
            }
        }

        let listed: HashSet<&Edge> = edges.iter().collect();
        let mut stray: Vec<_> = weights
            .iter()
            .filter(|(e, w)| !listed.contains(e) && !w.is_zero())
            .collect();
        stray.sort_by(|a, b| (&a.0.head, &a.0.tail).cmp(&(&b.0.head, &b.0.tail)));
        for (edge, weight) in stray {
            violations.push(Violation::WeightOnNonEdge {
                edge: edge.clone(),
                weight: weight.clone(),
            });
        }

        if !violations.is_empty() {
            return Err(Violations(violations));
        }
        let weights = edges
            .iter()
            .zip(&edge_index)
            .map(|(e, &pair)| (pair, weights[e].clone()))
            .collect();
        Ok(Self {
            nodes,
            edges,
            edge_index,
            weights,
            position,
        })
    }

    /// Shorthand used by fixtures and tests: string labels and
    /// `(head, tail, weight)` triples.
    pub fn from_triples(nodes: &[&str], edges: &[(&str, &str, Rational)]) -> Result<Self, Violations> {
        let nodes = nodes.iter().map(|&n| NodeLabel::new(n)).collect();
        let list: Vec<_> = edges.iter().map(|(h, t, _)| Edge::new(*h, *t)).collect();
        let weights = edges.iter().map(|(h, t, w)| (Edge::new(*h, *t), w.clone())).collect();
        Self::build(nodes, list, weights)
    }

    pub fn nodes(&self) -> &[NodeLabel] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Edges as `(head, tail)` node positions, in edge order.
    pub fn edge_positions(&self) -> &[(usize, usize)] {
        &self.edge_index
    }

    /// Number of nodes.
    pub fn m(&self) -> usize {
        self.nodes.len()
    }

    /// Number of edges.
    pub fn n(&self) -> usize {
        self.edges.len()
    }

    pub fn index_of(&self, label: &NodeLabel) -> Option<usize> {
        self.position.get(label).copied()
    }

    fn require(&self, label: &NodeLabel) -> Result<usize, GraphError> {
        self.index_of(label)
            .ok_or_else(|| GraphError::UnknownNode(label.clone()))
    }

    /// Weight between node positions; zero for non-edges.
    pub fn weight(&self, head: usize, tail: usize) -> Rational {
        self.weights.get(&(head, tail)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Weight of a labelled pair; zero when it is not an edge.
    pub fn weight_of(&self, edge: &Edge) -> Rational {
        match (self.index_of(&edge.head), self.index_of(&edge.tail)) {
            (Some(h), Some(t)) => self.weight(h, t),
            _ => Rational::zero(),
        }
    }

    pub fn is_edge(&self, head: usize, tail: usize) -> bool {
        self.weights.contains_key(&(head, tail))
    }

    /// Weight of the `j`-th listed edge.
    pub fn edge_weight(&self, j: usize) -> Rational {
        let (h, t) = self.edge_index[j];
        self.weight(h, t)
    }

    /// Sum of weights over the distinct nodes `x` with `(u, x)` an edge.
    pub fn wei_outdegree(&self, u: &NodeLabel) -> Result<Rational, GraphError> {
        let i = self.require(u)?;
        Ok((0..self.m())
            .filter(|&j| self.is_edge(i, j))
            .map(|j| self.weight(i, j))
            .sum())
    }

    /// Sum of weights over the distinct nodes `x` with `(x, u)` an edge.
    pub fn wei_indegree(&self, u: &NodeLabel) -> Result<Rational, GraphError> {
        let i = self.require(u)?;
        Ok((0..self.m())
            .filter(|&j| self.is_edge(j, i))
            .map(|j| self.weight(j, i))
            .sum())
    }

    pub fn weight_balanced(&self, u: &NodeLabel) -> Result<bool, GraphError> {
        Ok(self.wei_outdegree(u)? == self.wei_indegree(u)?)
    }

    pub fn has_self_loops(&self) -> bool {
        self.edge_index.iter().any(|&(h, t)| h == t)
    }

    /// Checks `tier` and every ancestor. On failure, reports the first
    /// failing predicate of each failing tier level, ancestors first.
    pub fn validate(&self, tier: Tier) -> Result<(), Vec<TierViolation>> {
        let found: Vec<_> = tier
            .lineage()
            .into_iter()
            .filter_map(|t| {
                self.own_predicate_failure(t)
                    .map(|violation| TierViolation { tier: t, violation })
            })
            .collect();
        if found.is_empty() {
            Ok(())
        } else {
            Err(found)
        }
    }

    pub fn satisfies(&self, tier: Tier) -> bool {
        self.validate(tier).is_ok()
    }

    pub fn require_tier(&self, tier: Tier) -> Result<(), TierError> {
        self.validate(tier).map_err(|violations| TierError {
            required: tier,
            violations,
        })
    }

    /// Most specific tiers that hold (no passing tier implies another one in
    /// the list).
    pub fn highest_tiers(&self) -> Vec<Tier> {
        let passing: Vec<_> = Tier::ALL.into_iter().filter(|&t| self.satisfies(t)).collect();
        passing
            .iter()
            .copied()
            .filter(|&t| !passing.iter().any(|&o| o != t && o.implies(t)))
            .collect()
    }

    fn own_predicate_failure(&self, tier: Tier) -> Option<Violation> {
        let edge = |index: usize| self.edges[index].clone();
        match tier {
            Tier::WellFormed => {
                let mut seen = HashSet::new();
                if let Some(label) = self.nodes.iter().find(|l| !seen.insert(*l)) {
                    return Some(Violation::DuplicateNode { label: label.clone() });
                }
                None
            }
            Tier::Nonempty => self.edges.is_empty().then_some(Violation::NoEdges),
            Tier::Symmetric => self
                .edge_index
                .iter()
                .position(|&(h, t)| !self.is_edge(t, h))
                .map(|index| Violation::MissingReverse {
                    index,
                    edge: edge(index),
                }),
            Tier::NoMulti => {
                let mut first = HashMap::new();
                self.edge_index.iter().enumerate().find_map(|(index, pair)| {
                    first.insert(*pair, index).map(|f| Violation::DuplicateEdge {
                        index,
                        first: f,
                        edge: edge(index),
                    })
                })
            }
            Tier::Simple => self
                .edge_index
                .iter()
                .position(|&(h, t)| h == t)
                .map(|index| Violation::SelfLoop {
                    index,
                    edge: edge(index),
                }),
            Tier::Weighted => (0..self.n()).find_map(|index| {
                let weight = self.edge_weight(index);
                (!weight.is_positive()).then(|| Violation::NonPositiveWeight {
                    index,
                    edge: edge(index),
                    weight,
                })
            }),
            Tier::BinaryWeighted => (0..self.n()).find_map(|index| {
                let weight = self.edge_weight(index);
                (!weight.is_one()).then(|| Violation::NonUnitWeight {
                    index,
                    edge: edge(index),
                    weight,
                })
            }),
            Tier::SymmetricWeighted => self.edge_index.iter().enumerate().find_map(|(index, &(h, t))| {
                let (weight, reverse) = (self.weight(h, t), self.weight(t, h));
                (weight != reverse).then(|| Violation::AsymmetricWeight {
                    index,
                    edge: edge(index),
                    weight,
                    reverse,
                })
            }),
            Tier::SimpleWeighted => None,
            Tier::PartitionedWeighted => (self.m() < 3).then_some(Violation::NoPartition { nodes: self.m() }),
        }
    }

    /// Splits the node list into its first `boundary_size` nodes and the rest.
    pub fn make_partition(&self, boundary_size: usize) -> Result<Partition, GraphError> {
        Partition::new(self.nodes.clone(), boundary_size)
    }

    /// Same system with nodes in a new order. `order` may list only a prefix:
    /// the listed labels move to the front, the others keep their relative
    /// order. Returns the system and the old position of every new row.
    pub fn reordered(&self, order: &[NodeLabel]) -> Result<(Self, Vec<usize>), GraphError> {
        let mut taken = vec![false; self.m()];
        let mut perm = Vec::with_capacity(self.m());
        for label in order {
            let pos = self
                .index_of(label)
                .ok_or_else(|| GraphError::Reorder(format!("unknown node `{label}`")))?;
            if std::mem::replace(&mut taken[pos], true) {
                return Err(GraphError::Reorder(format!("node `{label}` listed twice")));
            }
            perm.push(pos);
        }
        perm.extend((0..self.m()).filter(|&i| !taken[i]));
        let nodes: Vec<_> = perm.iter().map(|&i| self.nodes[i].clone()).collect();
        let weights = self
            .edges
            .iter()
            .zip(&self.edge_index)
            .map(|(e, &(h, t))| (e.clone(), self.weight(h, t)))
            .collect();
        let system =
            Self::build(nodes, self.edges.clone(), weights).expect("permuting nodes preserves well-formedness");
        Ok((system, perm))
    }
}

/// Boundary prefix and interior suffix of the node list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    boundary: Vec<NodeLabel>,
    interior: Vec<NodeLabel>,
}

impl Partition {
    pub fn new(mut nodes: Vec<NodeLabel>, boundary_size: usize) -> Result<Self, GraphError> {
        let total = nodes.len();
        if boundary_size < 2 || boundary_size >= total {
            return Err(GraphError::Partition {
                boundary_size,
                nodes: total,
            });
        }
        let interior = nodes.split_off(boundary_size);
        Ok(Self {
            boundary: nodes,
            interior,
        })
    }

    pub fn boundary(&self) -> &[NodeLabel] {
        &self.boundary
    }

    pub fn interior(&self) -> &[NodeLabel] {
        &self.interior
    }

    pub fn len(&self) -> usize {
        self.boundary.len() + self.interior.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Whether `boundary ++ interior` is exactly the system's node order.
    pub fn matches(&self, sys: &NetworkSystem) -> bool {
        self.boundary.iter().chain(&self.interior).eq(sys.nodes().iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational_from_i64 as r;

    fn g3() -> NetworkSystem {
        NetworkSystem::from_triples(
            &["a", "b", "c"],
            &[("a", "b", r(2)), ("b", "c", r(3)), ("c", "a", r(4))],
        )
        .unwrap()
    }

    fn label(s: &str) -> NodeLabel {
        NodeLabel::new(s)
    }

    #[test]
    fn builds_valid_system() {
        let sys = NetworkSystem::from_triples(&["a", "b"], &[("a", "b", r(2))]).unwrap();
        assert_eq!((sys.m(), sys.n()), (2, 1));
        assert_eq!(sys.weight(0, 1), r(2));
        assert_eq!(sys.weight(1, 0), r(0));
    }

    #[test]
    fn rejects_duplicate_node() {
        let err = NetworkSystem::from_triples(&["a", "a"], &[]).unwrap_err();
        assert_eq!(err.0, vec![Violation::DuplicateNode { label: label("a") }]);
    }

    #[test]
    fn rejects_unknown_endpoint() {
        let err = NetworkSystem::from_triples(&["a"], &[("a", "b", r(1))]).unwrap_err();
        assert!(matches!(&err.0[0], Violation::UnknownEndpoint { label, .. } if label.as_str() == "b"));
    }

    #[test]
    fn rejects_bad_weights() {
        let err = NetworkSystem::from_triples(&["a", "b"], &[("a", "b", r(0))]).unwrap_err();
        assert!(matches!(err.0[0], Violation::NonPositiveWeight { index: 0, .. }));
        assert!(err.to_string().contains("edge weight must be positive"));

        let mut weights = HashMap::new();
        weights.insert(Edge::new("a", "b"), r(1));
        weights.insert(Edge::new("b", "a"), r(5));
        let err = NetworkSystem::build(vec![label("a"), label("b")], vec![Edge::new("a", "b")], weights).unwrap_err();
        assert!(matches!(&err.0[0], Violation::WeightOnNonEdge { edge, .. } if *edge == Edge::new("b", "a")));
    }

    #[test]
    fn rejects_empty_label() {
        let err = NetworkSystem::from_triples(&[""], &[]).unwrap_err();
        assert_eq!(err.0, vec![Violation::EmptyLabel { index: 0 }]);
    }

    #[test]
    fn tier_predicates() {
        let self_loop = NetworkSystem::from_triples(&["a"], &[("a", "a", r(1))]).unwrap();
        let err = self_loop.validate(Tier::Simple).unwrap_err();
        assert_eq!(err.len(), 1);
        assert_eq!(err[0].tier, Tier::Simple);
        assert!(matches!(err[0].violation, Violation::SelfLoop { index: 0, .. }));

        let multi = NetworkSystem::from_triples(&["a", "b"], &[("a", "b", r(1)), ("a", "b", r(1))]).unwrap();
        let err = multi.validate(Tier::NoMulti).unwrap_err();
        assert!(matches!(
            err[0].violation,
            Violation::DuplicateEdge { index: 1, first: 0, .. }
        ));

        let pair = NetworkSystem::from_triples(&["a", "b"], &[("a", "b", r(3)), ("b", "a", r(3))]).unwrap();
        assert!(pair.validate(Tier::SymmetricWeighted).is_ok());

        let lopsided = NetworkSystem::from_triples(&["a", "b"], &[("a", "b", r(3)), ("b", "a", r(1))]).unwrap();
        let err = lopsided.validate(Tier::SymmetricWeighted).unwrap_err();
        assert!(matches!(err[0].violation, Violation::AsymmetricWeight { .. }));
        assert!(lopsided.validate(Tier::Symmetric).is_ok());

        let edgeless = NetworkSystem::from_triples(&["a"], &[]).unwrap();
        assert!(edgeless.validate(Tier::WellFormed).is_ok());
        let err = edgeless.validate(Tier::Weighted).unwrap_err();
        assert_eq!(err[0].violation, Violation::NoEdges);

        assert!(g3().validate(Tier::BinaryWeighted).is_err());
        assert!(g3().validate(Tier::PartitionedWeighted).is_ok());
        assert!(pair.validate(Tier::PartitionedWeighted).is_err());
    }

    #[test]
    fn one_violation_per_failing_level() {
        // self-loop, multi-edge and missing reverse at once
        let sys =
            NetworkSystem::from_triples(&["a", "b"], &[("a", "a", r(1)), ("a", "b", r(2)), ("a", "b", r(2))]).unwrap();
        let err = sys.validate(Tier::SimpleWeighted).unwrap_err();
        let tiers: Vec<_> = err.iter().map(|v| v.tier).collect();
        assert_eq!(tiers, vec![Tier::NoMulti, Tier::Simple]);
    }

    #[test]
    fn lattice_shape() {
        assert_eq!(
            Tier::Simple.lineage(),
            vec![Tier::WellFormed, Tier::Nonempty, Tier::NoMulti, Tier::Simple]
        );
        assert!(Tier::SymmetricWeighted.implies(Tier::Weighted));
        assert!(Tier::SymmetricWeighted.implies(Tier::Symmetric));
        assert!(!Tier::Symmetric.implies(Tier::NoMulti));
        assert!(Tier::SimpleWeighted.implies(Tier::Simple));
        for t in Tier::ALL {
            assert!(t.implies(Tier::WellFormed));
            assert_eq!(t.name().parse::<Tier>().unwrap(), t);
        }
        assert_eq!("SymmetricWeighted".parse::<Tier>().unwrap(), Tier::SymmetricWeighted);
    }

    #[test]
    fn weighted_degrees() {
        let sys = g3();
        assert_eq!(sys.wei_outdegree(&label("a")).unwrap(), r(2));
        assert_eq!(sys.wei_indegree(&label("a")).unwrap(), r(4));
        assert!(!sys.weight_balanced(&label("a")).unwrap());
        assert!(sys.wei_outdegree(&label("z")).is_err());

        let iso = NetworkSystem::from_triples(&["a", "b", "c"], &[("a", "b", r(1))]).unwrap();
        assert_eq!(iso.wei_outdegree(&label("c")).unwrap(), r(0));
        assert_eq!(iso.wei_indegree(&label("c")).unwrap(), r(0));
        assert_eq!(iso.wei_indegree(&label("a")).unwrap(), r(0));
        assert!(iso.weight_balanced(&label("c")).unwrap());

        let fan = NetworkSystem::from_triples(&["1", "2", "3"], &[("1", "2", r(5)), ("1", "3", r(7))]).unwrap();
        assert_eq!(fan.wei_outdegree(&label("1")).unwrap(), r(12));

        let cycle = NetworkSystem::from_triples(&["a", "b"], &[("a", "b", r(2)), ("b", "a", r(2))]).unwrap();
        assert!(cycle.weight_balanced(&label("a")).unwrap());
    }

    #[test]
    fn partitions() {
        let sys = g3();
        let p = sys.make_partition(2).unwrap();
        assert_eq!(p.boundary(), &[label("a"), label("b")]);
        assert_eq!(p.interior(), &[label("c")]);
        assert!(p.matches(&sys));
        let err = sys.make_partition(3).unwrap_err();
        assert!(err.to_string().contains("N2 != []"));
        let err = sys.make_partition(1).unwrap_err();
        assert!(err.to_string().contains("length N1 >= 2"));
    }

    #[test]
    fn reordering() {
        let sys = g3();
        let (moved, perm) = sys.reordered(&[label("c")]).unwrap();
        assert_eq!(perm, vec![2, 0, 1]);
        assert_eq!(moved.nodes(), &[label("c"), label("a"), label("b")]);
        assert_eq!(moved.weight(0, 1), r(4));
        assert!(sys.reordered(&[label("a"), label("a")]).is_err());
        assert!(sys.reordered(&[label("q")]).is_err());
    }
}
