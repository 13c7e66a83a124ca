//! Certificates for the induction behind the mixed-ideal bound.
//!
//! A node holds `(G, H, T, s)` over a ring of active variables. When
//! `|E_T| = 0` or `s = 1` the node is a base case and its depth is computed
//! directly. Otherwise a good leaf `e` of `T` splits it along
//!
//! `0 → R/[(I(H):e) + I(T)^(s-1)] → R/[I(H) + I(T)^s] → R/[I(H+e) + I(T∖e)^s] → 0`
//!
//! into a colon child `(G', H', T', s-1)` and a sum child `(G, H+e, T∖e, s)`,
//! and the node records the numeric check `inv(G') + 1 + |W| >= inv(G)`.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{edge_ideal, AlgebraError, Field, Monomial, MonomialIdeal};
use crate::bounds::{
    bound_at, depth_in_ring, mixed_ideal, require_mixed_hypotheses, t_connected, BoundError,
    HypothesisProbe, InvariantKind, MixedIdealInstance,
};
use crate::forest::good_leaves;
use crate::hypergraph::{Edge, Hypergraph, Vertex};
use crate::invariants::alpha2;

/// How the good leaf of `T` is picked at each split.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeafChoice {
    /// The least good leaf in edge order.
    Least,
    /// A uniformly random good leaf, seeded.
    Random(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertNode {
    #[serde(rename = "H_edges")]
    pub h_edges: Vec<Vec<String>>,
    #[serde(rename = "T_edges")]
    pub t_edges: Vec<Vec<String>>,
    pub s: u32,
    /// Variables of the node's polynomial ring.
    pub ring: Vec<String>,
    #[serde(rename = "inv_G")]
    pub inv_g: usize,
    /// `max(inv(G) - s + 1, 0)`.
    pub bound: usize,
    pub leaf: Option<Vec<String>>,
    #[serde(rename = "Z")]
    pub z: Vec<String>,
    #[serde(rename = "W_size")]
    pub w_size: usize,
    #[serde(rename = "inv_Gprime")]
    pub inv_gprime: Option<usize>,
    /// Split nodes: `inv(G') + 1 + |W| >= inv(G)`. Base cases: `depth >= bound`.
    pub inequality_ok: bool,
    /// Split nodes: both child ideals match the colon and sum of the node ideal.
    pub decomposition_ok: Option<bool>,
    /// Base cases only.
    pub depth: Option<usize>,
    /// Split nodes in alpha2 mode: `|Z ∩ S|` for the packing centers `S` of `G`.
    #[serde(rename = "Z_cap_S", default, skip_serializing_if = "Option::is_none")]
    pub z_cap_s: Option<usize>,
    pub children: Vec<CertNode>,
}

impl CertNode {
    pub fn is_base(&self) -> bool {
        self.children.is_empty()
    }

    /// Visits every node with its path.
    pub fn walk<'a>(&'a self, path: &str, visit: &mut dyn FnMut(&str, &'a CertNode)) {
        visit(path, self);
        for (child, tag) in self.children.iter().zip(["colon", "sum"]) {
            child.walk(&format!("{path}.{tag}"), visit);
        }
    }

    fn holds(&self) -> bool {
        self.inequality_ok
            && self.decomposition_ok.unwrap_or(true)
            && self.children.iter().all(CertNode::holds)
    }

    fn count(&self) -> usize {
        1 + self.children.iter().map(CertNode::count).sum::<usize>()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub invariant: InvariantKind,
    pub field: Field,
    pub vertices: Vec<String>,
    pub s: u32,
    pub nodes: usize,
    pub all_ok: bool,
    pub root: CertNode,
}

impl Certificate {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("certificates serialize")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Certificate, ReplayError> {
        serde_json::from_value(v.clone()).map_err(|e| ReplayError::Malformed(e.to_string()))
    }

    /// Paths of all nodes, depth first, colon child before sum child.
    pub fn paths(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.root.walk("root", &mut |p, _| out.push(p.to_string()));
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error("node {path}: recorded {field} does not match the recomputation")]
    Mismatch { path: String, field: &'static str },
    #[error("node {path}: {reason}")]
    Invalid { path: String, reason: String },
    #[error("node {path}: the recorded inequality fails")]
    Fails { path: String },
}

#[derive(Clone)]
struct State {
    g: Hypergraph,
    h: Vec<Edge>,
    t: Vec<Edge>,
    s: u32,
    ring: BTreeSet<usize>,
}

struct Ctx<'a> {
    vertices: Vec<Vertex>,
    inv: &'a dyn Fn(&Hypergraph) -> usize,
    field: Field,
    alpha2: bool,
}

fn names(g: &Hypergraph, vs: impl IntoIterator<Item = usize>) -> Vec<String> {
    vs.into_iter()
        .map(|v| g.vertex_name(v).to_string())
        .collect()
}

fn edge_list(g: &Hypergraph, es: &[Edge]) -> Vec<Vec<String>> {
    es.iter().map(|e| g.edge_names(e)).collect()
}

impl Ctx<'_> {
    fn over(&self, edges: impl IntoIterator<Item = Edge>) -> Hypergraph {
        Hypergraph::minimalized(self.vertices.clone(), edges)
    }

    /// The node record without children, and the two children for a split.
    fn evaluate(
        &self,
        st: &State,
        leaf: Option<&Edge>,
    ) -> Result<(CertNode, Option<(State, State)>), BoundError> {
        if self.alpha2 {
            t_connected(&st.g, &st.t)?;
        }
        let n = self.vertices.len();
        let inv_g = (self.inv)(&st.g);
        let bound = bound_at(inv_g, st.s, 0);
        let mut node = CertNode {
            h_edges: edge_list(&st.g, &st.h),
            t_edges: edge_list(&st.g, &st.t),
            s: st.s,
            ring: names(&st.g, st.ring.iter().copied()),
            inv_g,
            bound,
            leaf: None,
            z: Vec::new(),
            w_size: 0,
            inv_gprime: None,
            inequality_ok: false,
            decomposition_ok: None,
            depth: None,
            z_cap_s: None,
            children: Vec::new(),
        };
        let j = mixed_ideal(&st.g, &st.h, &st.t, st.s)?;
        let Some(e) = leaf else {
            let depth = depth_in_ring(&j, st.ring.len(), self.field)?;
            node.depth = Some(depth);
            node.inequality_ok = depth >= bound;
            return Ok((node, None));
        };
        let (hp, z) = self.over(st.h.iter().cloned()).colon(e);
        let tp: Vec<Edge> =
            st.t.iter()
                .filter(|t| {
                    t.vertices().iter().all(|v| !z.contains(v))
                        && !hp.edges().iter().any(|h| h.is_subset(t))
                })
                .cloned()
                .collect();
        let gp = self.over(hp.edges().iter().chain(&tp).cloned());
        let active_gp: BTreeSet<usize> = gp.active_vertices().into_iter().collect();
        let w = st
            .ring
            .iter()
            .filter(|v| !active_gp.contains(v) && !z.contains(v))
            .count();
        let inv_gp = (self.inv)(&gp);

        let colon_side = mixed_ideal(&gp, hp.edges(), &tp, st.s - 1)?
            .sum(&MonomialIdeal::variables(n, z.iter().copied()))?;
        let colon_ok = j.colon(&Monomial::of_edge(e, n)) == colon_side;
        let mut h_plus: Vec<Edge> = st.h.iter().cloned().chain([e.clone()]).collect();
        h_plus.sort();
        let t_minus: Vec<Edge> = st.t.iter().filter(|t| *t != e).cloned().collect();
        let e_ideal = edge_ideal(&self.over([e.clone()]));
        let sum_ok = j.sum(&e_ideal)? == mixed_ideal(&st.g, &h_plus, &t_minus, st.s)?;

        node.leaf = Some(st.g.edge_names(e));
        node.z = names(&st.g, z.iter().copied());
        node.w_size = w;
        node.inv_gprime = Some(inv_gp);
        node.inequality_ok = inv_gp + 1 + w >= inv_g;
        node.decomposition_ok = Some(colon_ok && sum_ok);
        if self.alpha2 {
            let centers = alpha2(&st.g).1.centers();
            node.z_cap_s = Some(centers.iter().filter(|c| z.contains(c)).count());
        }
        let colon_child = State {
            g: gp,
            h: hp.edges().to_vec(),
            t: tp,
            s: st.s - 1,
            ring: active_gp,
        };
        let sum_child = State {
            g: st.g.clone(),
            h: h_plus,
            t: t_minus,
            s: st.s,
            ring: st.ring.clone(),
        };
        Ok((node, Some((colon_child, sum_child))))
    }

    fn is_base(st: &State) -> bool {
        st.t.is_empty() || st.s == 1
    }

    fn build(&self, st: &State, rng: &mut Option<ChaCha8Rng>) -> Result<CertNode, BoundError> {
        let leaf = if Self::is_base(st) {
            None
        } else {
            let leaves = good_leaves(&self.over(st.t.iter().cloned()));
            if leaves.is_empty() {
                return Err(BoundError::GoodLeafMissing);
            }
            let pick = match rng {
                Some(r) => r.random_range(0..leaves.len()),
                None => 0,
            };
            Some(leaves[pick].clone())
        };
        let (mut node, kids) = self.evaluate(st, leaf.as_ref())?;
        if let Some((colon, sum)) = kids {
            node.children = vec![self.build(&colon, rng)?, self.build(&sum, rng)?];
        }
        Ok(node)
    }
}

fn root_state(inst: &MixedIdealInstance) -> State {
    State {
        g: inst.g().clone(),
        h: inst.h().to_vec(),
        t: inst.t().to_vec(),
        s: inst.s(),
        ring: (0..inst.g().num_vertices()).collect(),
    }
}

fn rng_for(choice: LeafChoice) -> Option<ChaCha8Rng> {
    match choice {
        LeafChoice::Least => None,
        LeafChoice::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    }
}

pub fn build_certificate(
    inst: &MixedIdealInstance,
    kind: InvariantKind,
    field: Field,
) -> Result<Certificate, BoundError> {
    build_certificate_with(inst, kind, field, LeafChoice::Least)
}

pub fn build_certificate_with(
    inst: &MixedIdealInstance,
    kind: InvariantKind,
    field: Field,
    choice: LeafChoice,
) -> Result<Certificate, BoundError> {
    require_mixed_hypotheses(inst, kind)?;
    let inv = move |g: &Hypergraph| kind.value(g);
    let ctx = Ctx {
        vertices: inst.g().vertices().to_vec(),
        inv: &inv,
        field,
        alpha2: kind == InvariantKind::Alpha2,
    };
    let root = ctx.build(&root_state(inst), &mut rng_for(choice))?;
    Ok(Certificate {
        invariant: kind,
        field,
        vertices: inst.g().vertex_names(),
        s: inst.s(),
        nodes: root.count(),
        all_ok: root.holds(),
        root,
    })
}

/// Builds the certificate tree for an arbitrary invariant and lists the
/// nodes where the inductive hypothesis fails.
pub(crate) fn probe_hypothesis(
    inst: &MixedIdealInstance,
    inv: &dyn Fn(&Hypergraph) -> usize,
    field: Field,
    choice: LeafChoice,
) -> Result<HypothesisProbe, BoundError> {
    let ctx = Ctx {
        vertices: inst.g().vertices().to_vec(),
        inv,
        field,
        alpha2: false,
    };
    let root = ctx.build(&root_state(inst), &mut rng_for(choice))?;
    let mut violations = Vec::new();
    root.walk("root", &mut |p, node| {
        if !node.inequality_ok {
            violations.push(p.to_string());
        }
    });
    Ok(HypothesisProbe {
        s: inst.s(),
        nodes: root.count(),
        violations,
    })
}

fn first_difference(got: &CertNode, want: &CertNode) -> Option<&'static str> {
    let checks: [(&'static str, bool); 14] = [
        ("H_edges", got.h_edges == want.h_edges),
        ("T_edges", got.t_edges == want.t_edges),
        ("s", got.s == want.s),
        ("ring", got.ring == want.ring),
        ("inv_G", got.inv_g == want.inv_g),
        ("bound", got.bound == want.bound),
        ("leaf", got.leaf == want.leaf),
        ("Z", got.z == want.z),
        ("W_size", got.w_size == want.w_size),
        ("inv_Gprime", got.inv_gprime == want.inv_gprime),
        ("inequality_ok", got.inequality_ok == want.inequality_ok),
        (
            "decomposition_ok",
            got.decomposition_ok == want.decomposition_ok,
        ),
        ("depth", got.depth == want.depth),
        ("Z_cap_S", got.z_cap_s == want.z_cap_s),
    ];
    checks.iter().find(|(_, same)| !same).map(|(f, _)| *f)
}

/// Recomputes every node of a certificate from its root instance: children
/// are re-derived, the recorded leaf must be a good leaf of `T`, and every
/// recorded field must match. Succeeds only if every check holds as well.
pub fn verify_certificate(cert: &Certificate) -> Result<usize, ReplayError> {
    let root = &cert.root;
    let vnames: Vec<&str> = cert.vertices.iter().map(String::as_str).collect();
    let parse = |es: &[Vec<String>]| -> Result<Vec<Edge>, ReplayError> {
        es.iter()
            .map(|e| {
                e.iter()
                    .map(|n| {
                        vnames
                            .iter()
                            .position(|v| v == n)
                            .ok_or_else(|| ReplayError::Malformed(format!("unknown vertex {n}")))
                    })
                    .collect::<Result<Vec<usize>, _>>()
                    .map(Edge::new)
            })
            .collect()
    };
    let h = parse(&root.h_edges)?;
    let t = parse(&root.t_edges)?;
    let g = Hypergraph::new(&vnames, h.iter().chain(&t).map(|e| e.vertices().to_vec()))
        .map_err(|e| ReplayError::Malformed(e.to_string()))?;
    if root.s != cert.s || root.ring != cert.vertices {
        return Err(ReplayError::Mismatch {
            path: "root".into(),
            field: "ring",
        });
    }
    let inst = MixedIdealInstance::new(g, h, t, cert.s)
        .map_err(|e| ReplayError::Malformed(e.to_string()))?;
    require_mixed_hypotheses(&inst, cert.invariant).map_err(|e| ReplayError::Invalid {
        path: "root".into(),
        reason: e.to_string(),
    })?;
    let kind = cert.invariant;
    let inv = move |g: &Hypergraph| kind.value(g);
    let ctx = Ctx {
        vertices: inst.g().vertices().to_vec(),
        inv: &inv,
        field: cert.field,
        alpha2: kind == InvariantKind::Alpha2,
    };
    let count = replay(&ctx, &root_state(&inst), root, "root", &parse)?;
    if count != cert.nodes {
        return Err(ReplayError::Mismatch {
            path: "root".into(),
            field: "nodes",
        });
    }
    if !cert.all_ok {
        return Err(ReplayError::Fails {
            path: "root".into(),
        });
    }
    Ok(count)
}

type EdgeParser<'a> = dyn Fn(&[Vec<String>]) -> Result<Vec<Edge>, ReplayError> + 'a;

fn replay(
    ctx: &Ctx<'_>,
    st: &State,
    node: &CertNode,
    path: &str,
    parse: &EdgeParser<'_>,
) -> Result<usize, ReplayError> {
    let invalid = |reason: String| ReplayError::Invalid {
        path: path.to_string(),
        reason,
    };
    let leaf = match (&node.leaf, Ctx::is_base(st)) {
        (None, true) => None,
        (Some(names), false) => {
            let e = parse(std::slice::from_ref(names))?.remove(0);
            if !good_leaves(&ctx.over(st.t.iter().cloned())).contains(&e) {
                return Err(invalid(format!("{names:?} is not a good leaf of T")));
            }
            Some(e)
        }
        (None, false) => return Err(invalid("a split node has no leaf".into())),
        (Some(_), true) => return Err(invalid("a base case records a leaf".into())),
    };
    let (want, kids) = ctx
        .evaluate(st, leaf.as_ref())
        .map_err(|e| invalid(e.to_string()))?;
    if let Some(field) = first_difference(node, &want) {
        return Err(ReplayError::Mismatch {
            path: path.to_string(),
            field,
        });
    }
    if !want.inequality_ok || want.decomposition_ok == Some(false) {
        return Err(ReplayError::Fails {
            path: path.to_string(),
        });
    }
    match kids {
        None if node.children.is_empty() => Ok(1),
        Some((colon, sum)) if node.children.len() == 2 => {
            let a = replay(
                ctx,
                &colon,
                &node.children[0],
                &format!("{path}.colon"),
                parse,
            )?;
            let b = replay(ctx, &sum, &node.children[1], &format!("{path}.sum"), parse)?;
            Ok(1 + a + b)
        }
        _ => Err(invalid("wrong number of children".into())),
    }
}

impl From<AlgebraError> for ReplayError {
    fn from(e: AlgebraError) -> Self {
        ReplayError::Malformed(e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn right_tree() -> Hypergraph {
        Hypergraph::from_names(
            &["x", "y", "z", "u", "v"],
            [vec!["x", "y", "z"], vec!["y", "z", "u"], vec!["u", "v"]],
        )
        .unwrap()
    }

    fn path(n: usize) -> Hypergraph {
        Hypergraph::with_numbered_vertices(n, (0..n - 1).map(|i| vec![i, i + 1])).unwrap()
    }

    #[test]
    fn single_edge_depth_one_tree() {
        let g = Hypergraph::from_names(&["x", "y"], [vec!["x", "y"]]).unwrap();
        let inst = MixedIdealInstance::powers(g, 2).unwrap();
        let cert = build_certificate(&inst, InvariantKind::Epsilon, Field::Rationals).unwrap();
        assert_eq!(cert.nodes, 3);
        let [colon, sum] = &cert.root.children[..] else {
            panic!()
        };
        assert!(colon.is_base() && colon.s == 1);
        assert!(sum.is_base() && sum.t_edges.is_empty());
        assert!(cert.all_ok);
        assert_eq!(verify_certificate(&cert), Ok(3));
    }

    #[test]
    fn hypertree_certificate() {
        let inst = MixedIdealInstance::powers(right_tree(), 2).unwrap();
        let cert = build_certificate(&inst, InvariantKind::Epsilon, Field::Rationals).unwrap();
        assert!(cert.all_ok);
        assert!(cert.root.children.len() == 2 && !cert.root.children[1].is_base());
        assert_eq!(verify_certificate(&cert), Ok(cert.nodes));
    }

    #[test]
    fn mutated_w_is_rejected() {
        let inst = MixedIdealInstance::powers(path(6), 3).unwrap();
        let mut cert = build_certificate(&inst, InvariantKind::Alpha2, Field::Rationals).unwrap();
        assert!(cert.all_ok);
        cert.root.children[1].w_size += 1;
        assert_eq!(
            verify_certificate(&cert),
            Err(ReplayError::Mismatch {
                path: "root.sum".into(),
                field: "W_size"
            })
        );
    }

    #[test]
    fn json_round_trip() {
        let inst = MixedIdealInstance::powers(path(4), 2).unwrap();
        let cert = build_certificate(&inst, InvariantKind::Alpha2, Field::Rationals).unwrap();
        let v = cert.to_json();
        assert!(v["root"]["children"][0].get("W_size").is_some());
        let back = Certificate::from_json(&v).unwrap();
        assert_eq!(back, cert);
        assert!(verify_certificate(&back).is_ok());
    }

    #[test]
    fn random_leaves_also_verify() {
        let inst = MixedIdealInstance::powers(right_tree(), 3).unwrap();
        for seed in 0..5 {
            let cert = build_certificate_with(
                &inst,
                InvariantKind::Epsilon,
                Field::Rationals,
                LeafChoice::Random(seed),
            )
            .unwrap();
            assert!(cert.all_ok);
            assert!(verify_certificate(&cert).is_ok());
        }
    }

    #[test]
    fn bad_leaf_is_rejected() {
        let inst = MixedIdealInstance::powers(path(4), 2).unwrap();
        let mut cert = build_certificate(&inst, InvariantKind::Epsilon, Field::Rationals).unwrap();
        cert.root.leaf = Some(vec!["x2".into(), "x3".into()]);
        assert!(matches!(
            verify_certificate(&cert),
            Err(ReplayError::Invalid { .. })
        ));
    }

    #[test]
    fn non_forest_t() {
        let tri =
            Hypergraph::with_numbered_vertices(3, [vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let inst = MixedIdealInstance::powers(tri, 2).unwrap();
        assert_eq!(
            build_certificate(&inst, InvariantKind::Epsilon, Field::Rationals),
            Err(BoundError::NotAHyperforest)
        );
    }
}
