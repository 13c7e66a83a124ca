//! Checks of the lower bounds `depth R/I^s >= max(inv(G) - s + 1, floor)`.
//!
//! `inv` is the edgewise domination number on hyperforests or the star
//! packing number on forests, and the same check runs for the mixed ideals
//! `I(H) + I(T)^s` used by the induction.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{depth_function, edge_ideal, pd, AlgebraError, Field, MonomialIdeal};
use crate::certificate::{probe_hypothesis, LeafChoice};
use crate::forest::is_hyperforest;
use crate::hypergraph::{Edge, Hypergraph};
use crate::invariants::{alpha2, epsilon};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("the hypergraph is not a hyperforest")]
    NotAHyperforest,
    #[error("the hypergraph has no edge with at least two vertices")]
    NoBigEdge,
    #[error("the hypergraph is not a forest graph with at least one edge")]
    NotAForestGraph,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("T is not connected inside the component containing {vertex}")]
    ConnectivityViolated { vertex: String },
    #[error("T has no good leaf")]
    GoodLeafMissing,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InvariantKind {
    Epsilon,
    Alpha2,
}

impl InvariantKind {
    pub fn value(self, g: &Hypergraph) -> usize {
        match self {
            InvariantKind::Epsilon => epsilon(g).0,
            InvariantKind::Alpha2 => alpha2(g).0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            InvariantKind::Epsilon => "epsilon",
            InvariantKind::Alpha2 => "alpha2",
        }
    }
}

impl fmt::Display for InvariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InvariantKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "epsilon" => Ok(InvariantKind::Epsilon),
            "alpha2" => Ok(InvariantKind::Alpha2),
            other => Err(format!(
                "unknown invariant {other:?}, expected epsilon or alpha2"
            )),
        }
    }
}

/// `max(value - s + 1, floor)`.
pub fn bound_at(value: usize, s: u32, floor: usize) -> usize {
    (value + 1).saturating_sub(s as usize).max(floor)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub s: u32,
    pub depth: usize,
    pub bound: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub invariant: String,
    pub value: usize,
    pub floor: usize,
    pub rows: Vec<BoundRow>,
    pub holds: bool,
}

impl BoundReport {
    pub fn depths(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.depth).collect()
    }

    pub fn bounds(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.bound).collect()
    }
}

fn bound_report(
    g: &Hypergraph,
    invariant: &str,
    value: usize,
    floor: usize,
    s_max: u32,
    field: Field,
) -> Result<BoundReport, BoundError> {
    let depths = depth_function(&edge_ideal(g), s_max, field)?;
    let rows: Vec<BoundRow> = (1..=s_max)
        .map(|s| {
            let depth = depths.at(s as usize);
            let bound = bound_at(value, s, floor);
            BoundRow {
                s,
                depth,
                bound,
                holds: depth >= bound,
            }
        })
        .collect();
    let holds = rows.iter().all(|r| r.holds);
    Ok(BoundReport {
        invariant: invariant.to_string(),
        value,
        floor,
        rows,
        holds,
    })
}

fn require_epsilon_hypotheses(g: &Hypergraph) -> Result<(), BoundError> {
    if !is_hyperforest(g) {
        return Err(BoundError::NotAHyperforest);
    }
    if !g.edges().iter().any(|e| e.len() >= 2) {
        return Err(BoundError::NoBigEdge);
    }
    Ok(())
}

fn require_forest_graph(g: &Hypergraph) -> Result<(), BoundError> {
    if g.num_edges() == 0 || !g.is_graph() || !is_hyperforest(g) {
        return Err(BoundError::NotAForestGraph);
    }
    Ok(())
}

/// `depth R/I^s >= max(ε(G) - s + 1, 1)` for `s <= s_max` on a hyperforest.
pub fn verify_epsilon_bound(
    g: &Hypergraph,
    s_max: u32,
    field: Field,
) -> Result<BoundReport, BoundError> {
    require_epsilon_hypotheses(g)?;
    bound_report(g, "epsilon", epsilon(g).0, 1, s_max, field)
}

/// `depth R/I^s >= max(α₂(G) - s + 1, 1)` for `s <= s_max` on a forest graph.
pub fn verify_alpha2_bound(
    g: &Hypergraph,
    s_max: u32,
    field: Field,
) -> Result<BoundReport, BoundError> {
    require_forest_graph(g)?;
    bound_report(g, "alpha2", alpha2(g).0, 1, s_max, field)
}

/// `(G, H, T, s)` with `E_H` and `E_T` partitioning `E_G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedIdealInstance {
    g: Hypergraph,
    h: Vec<Edge>,
    t: Vec<Edge>,
    s: u32,
}

impl MixedIdealInstance {
    pub fn new(g: Hypergraph, h: Vec<Edge>, t: Vec<Edge>, s: u32) -> Result<Self, BoundError> {
        if s == 0 {
            return Err(BoundError::InvalidPartition("s must be positive".into()));
        }
        let mut all: Vec<Edge> = h.iter().chain(&t).cloned().collect();
        for e in &all {
            if !g.has_edge(e) {
                return Err(BoundError::InvalidPartition(format!(
                    "{} is not an edge of G",
                    g.edge_label(e)
                )));
            }
        }
        all.sort();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(BoundError::InvalidPartition("H and T share an edge".into()));
        }
        if all.len() != g.num_edges() {
            return Err(BoundError::InvalidPartition(
                "H and T do not cover every edge of G".into(),
            ));
        }
        let mut h = h;
        let mut t = t;
        h.sort();
        t.sort();
        Ok(MixedIdealInstance { g, h, t, s })
    }

    /// `H = ∅`, `T = G`.
    pub fn powers(g: Hypergraph, s: u32) -> Result<Self, BoundError> {
        let t = g.edges().to_vec();
        MixedIdealInstance::new(g, Vec::new(), t, s)
    }

    pub fn g(&self) -> &Hypergraph {
        &self.g
    }

    pub fn h(&self) -> &[Edge] {
        &self.h
    }

    pub fn t(&self) -> &[Edge] {
        &self.t
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// `I(H) + I(T)^s` in the ambient ring of `G`.
    pub fn ideal(&self) -> Result<MonomialIdeal, AlgebraError> {
        mixed_ideal(&self.g, &self.h, &self.t, self.s)
    }

    /// In every component of `G`, the edges of `T` form a connected
    /// subhypergraph or are absent.
    pub fn check_connectivity(&self) -> Result<(), BoundError> {
        t_connected(&self.g, &self.t)
    }
}

pub(crate) fn mixed_ideal(
    g: &Hypergraph,
    h: &[Edge],
    t: &[Edge],
    s: u32,
) -> Result<MonomialIdeal, AlgebraError> {
    let n = g.num_vertices();
    let ih = edge_ideal(&Hypergraph::minimalized(
        g.vertices().to_vec(),
        h.iter().cloned(),
    ));
    if t.is_empty() {
        return Ok(ih);
    }
    let it = edge_ideal(&Hypergraph::minimalized(
        g.vertices().to_vec(),
        t.iter().cloned(),
    ));
    debug_assert_eq!(it.num_vars(), n);
    ih.sum(&it.power(s)?)
}

pub(crate) fn t_connected(g: &Hypergraph, t: &[Edge]) -> Result<(), BoundError> {
    let tg = Hypergraph::minimalized(g.vertices().to_vec(), t.iter().cloned());
    let t_parts: Vec<Vec<usize>> = tg
        .connected_components()
        .components
        .iter()
        .map(Hypergraph::active_vertices)
        .collect();
    for comp in g.connected_components().components {
        let inside = t_parts
            .iter()
            .filter(|p| p.iter().any(|&v| comp.is_active(v)))
            .count();
        if inside > 1 {
            let v = comp.active_vertices()[0];
            return Err(BoundError::ConnectivityViolated {
                vertex: g.vertex_name(v).to_string(),
            });
        }
    }
    Ok(())
}

/// `depth` of `k[ring]/J` where `ring` has `ring_size` variables containing
/// the support of `J`.
pub(crate) fn depth_in_ring(
    j: &MonomialIdeal,
    ring_size: usize,
    field: Field,
) -> Result<usize, AlgebraError> {
    if j.is_zero() {
        return Ok(ring_size);
    }
    Ok(ring_size - pd(j, field)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MixedReport {
    pub invariant: String,
    pub value: usize,
    pub s: u32,
    pub depth: usize,
    pub bound: usize,
    pub holds: bool,
}

/// Checks the hypotheses for `kind` on an instance.
pub(crate) fn require_mixed_hypotheses(
    inst: &MixedIdealInstance,
    kind: InvariantKind,
) -> Result<(), BoundError> {
    match kind {
        InvariantKind::Epsilon => {
            if !is_hyperforest(&inst.g) {
                return Err(BoundError::NotAHyperforest);
            }
        }
        InvariantKind::Alpha2 => {
            if !inst.g.is_graph() || !is_hyperforest(&inst.g) {
                return Err(BoundError::NotAForestGraph);
            }
            inst.check_connectivity()?;
        }
    }
    Ok(())
}

/// `depth R/[I(H) + I(T)^s] >= max(inv(G) - s + 1, 0)`.
pub fn verify_mixed(
    inst: &MixedIdealInstance,
    kind: InvariantKind,
    field: Field,
) -> Result<MixedReport, BoundError> {
    require_mixed_hypotheses(inst, kind)?;
    let depth = depth_in_ring(&inst.ideal()?, inst.g.num_vertices(), field)?;
    let value = kind.value(&inst.g);
    let bound = bound_at(value, inst.s, 0);
    Ok(MixedReport {
        invariant: kind.name().into(),
        value,
        s: inst.s,
        depth,
        bound,
        holds: depth >= bound,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisProbe {
    pub s: u32,
    pub nodes: usize,
    /// Paths of certificate nodes where `inv(G') + 1 + |W| >= inv(G)` fails,
    /// or where a base case has `depth < inv(G) - s + 1`.
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenericReport {
    pub bound: BoundReport,
    /// `None` when `G` is not a hyperforest with an edge.
    pub probe: Option<HypothesisProbe>,
    /// The bound follows from the hypotheses: the probe found nothing.
    pub hypotheses_hold: bool,
}

/// `depth R/I^s >= max(inv(G) - s + 1, 0)` for an arbitrary invariant,
/// plus a probe of the inductive hypothesis along the certificate tree of
/// `H = ∅, T = G, s = s_max`.
pub fn verify_generic_invariant(
    g: &Hypergraph,
    name: &str,
    inv: &dyn Fn(&Hypergraph) -> usize,
    s_max: u32,
    field: Field,
) -> Result<GenericReport, BoundError> {
    let bound = if g.num_edges() == 0 {
        let rows = (1..=s_max)
            .map(|s| {
                let b = bound_at(inv(g), s, 0);
                BoundRow {
                    s,
                    depth: g.num_vertices(),
                    bound: b,
                    holds: g.num_vertices() >= b,
                }
            })
            .collect::<Vec<_>>();
        let holds = rows.iter().all(|r| r.holds);
        BoundReport {
            invariant: name.into(),
            value: inv(g),
            floor: 0,
            rows,
            holds,
        }
    } else {
        bound_report(g, name, inv(g), 0, s_max, field)?
    };
    let probe = if g.num_edges() > 0 && is_hyperforest(g) {
        let inst = MixedIdealInstance::powers(g.clone(), s_max)?;
        Some(probe_hypothesis(&inst, inv, field, LeafChoice::Least)?)
    } else {
        None
    };
    let hypotheses_hold = probe.as_ref().is_some_and(|p| p.violations.is_empty());
    Ok(GenericReport {
        bound,
        probe,
        hypotheses_hold,
    })
}
