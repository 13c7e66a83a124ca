//! Leaves, good leaves and simplicial forest recognition.

use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::{Edge, Hypergraph, HypergraphError};

/// Default edge cap for [`brute_force_is_forest`].
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForestError {
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error("{edges} edges exceed the brute-force cap of {cap}")]
    CapExceeded { edges: usize, cap: usize },
}

/// Edges `e1, ..., em` where each `ei` is a good leaf of `{ei, ..., em}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoodLeafOrder(pub Vec<Edge>);

impl GoodLeafOrder {
    /// Re-checks the defining property against `g`.
    pub fn validates(&self, g: &Hypergraph) -> bool {
        let mut sorted = self.0.clone();
        sorted.sort();
        if sorted != g.edges() {
            return false;
        }
        let mut rest = g.clone();
        for e in &self.0 {
            if !good_leaf_unchecked(rest.edges(), e) {
                return false;
            }
            rest = rest.without_edge(e);
        }
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ForestVerdict {
    Forest(GoodLeafOrder),
    /// Greedy elimination got stuck; the residual subcollection has no good leaf.
    NotAForest {
        stuck: Hypergraph,
    },
}

impl ForestVerdict {
    pub fn is_forest(&self) -> bool {
        matches!(self, ForestVerdict::Forest(_))
    }
}

pub(crate) fn leaf_unchecked(edges: &[Edge], e: &Edge) -> bool {
    if edges.len() == 1 {
        return true;
    }
    let meets: Vec<Edge> = edges
        .iter()
        .filter(|h| *h != e)
        .map(|h| e.intersection(h))
        .collect();
    meets
        .iter()
        .any(|joint| meets.iter().all(|m| m.is_subset(joint)))
}

pub(crate) fn good_leaf_unchecked(edges: &[Edge], e: &Edge) -> bool {
    let meets: Vec<Edge> = edges.iter().map(|h| e.intersection(h)).collect();
    meets.iter().enumerate().all(|(i, a)| {
        meets[i + 1..]
            .iter()
            .all(|b| a.is_subset(b) || b.is_subset(a))
    })
}

/// `e` is the only edge, or some other edge `g` contains every `e ∩ h`.
pub fn is_leaf(g: &Hypergraph, e: &Edge) -> Result<bool, HypergraphError> {
    g.require_edge(e)?;
    Ok(leaf_unchecked(g.edges(), e))
}

/// `{e ∩ h : h ∈ E}` is a chain under inclusion.
pub fn is_good_leaf(g: &Hypergraph, e: &Edge) -> Result<bool, HypergraphError> {
    g.require_edge(e)?;
    Ok(good_leaf_unchecked(g.edges(), e))
}

/// All good leaves of `g` in edge order.
pub fn good_leaves(g: &Hypergraph) -> Vec<Edge> {
    g.edges()
        .iter()
        .filter(|e| good_leaf_unchecked(g.edges(), e))
        .cloned()
        .collect()
}

/// Greedily strips the least good leaf until nothing is left or no good leaf
/// exists. Good leaves stay good in subcollections, so the choice order
/// cannot turn a forest into a failure.
pub fn good_leaf_order(g: &Hypergraph) -> ForestVerdict {
    let mut rest = g.clone();
    let mut order = Vec::with_capacity(g.num_edges());
    while rest.num_edges() > 0 {
        let next = rest
            .edges()
            .iter()
            .find(|e| good_leaf_unchecked(rest.edges(), e))
            .cloned();
        match next {
            Some(e) => {
                rest = rest.without_edge(&e);
                order.push(e);
            }
            None => return ForestVerdict::NotAForest { stuck: rest },
        }
    }
    ForestVerdict::Forest(GoodLeafOrder(order))
}

pub fn is_hyperforest(g: &Hypergraph) -> bool {
    good_leaf_order(g).is_forest()
}

/// A connected hyperforest (at least one edge).
pub fn is_hypertree(g: &Hypergraph) -> bool {
    is_hyperforest(g) && g.connected_components().components.len() == 1
}

/// The literal definition: every nonempty subcollection has a leaf.
pub fn brute_force_is_forest(g: &Hypergraph, cap: usize) -> Result<bool, ForestError> {
    let m = g.num_edges();
    if m > cap {
        return Err(ForestError::CapExceeded { edges: m, cap });
    }
    let edges = g.edges();
    let mut sub = Vec::with_capacity(m);
    for bits in 1u64..(1u64 << m) {
        sub.clear();
        sub.extend(
            (0..m)
                .filter(|i| bits >> i & 1 == 1)
                .map(|i| edges[i].clone()),
        );
        if !sub.iter().any(|e| leaf_unchecked(&sub, e)) {
            return Ok(false);
        }
    }
    Ok(true)
}
