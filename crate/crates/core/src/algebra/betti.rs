//! Multigraded Betti numbers via upper Koszul simplicial complexes.
//!
//! For a lattice degree `α`, the upper Koszul complex `K^α(J)` has the
//! squarefree faces `σ ⊆ supp(α)` with `x^(α-σ) ∈ J`, and
//! `β_{i,α}(J) = dim H̃_{i-1}(K^α(J))`. Faces are bitmasks over variable
//! indices. A generator `g | x^α` contributes the simplex on
//! `{k : g_k < α_k}`, so the complex is read off directly by its facets.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::homology::{Field, SimplicialComplex};
use super::lattice::{bits, LatticeWalker};
use super::monomial::{AlgebraError, Monomial, MonomialIdeal};

/// Betti numbers of `R/J`, keyed by homological index and multidegree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub num_vars: usize,
    pub field: Field,
    entries: BTreeMap<(usize, Monomial), usize>,
}

impl BettiTable {
    pub fn get(&self, i: usize, alpha: &Monomial) -> usize {
        self.entries.get(&(i, alpha.clone())).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &Monomial, usize)> {
        self.entries.iter().map(|((i, a), &r)| (*i, a, r))
    }

    /// `β_i = Σ_α β_{i,α}`.
    pub fn total(&self, i: usize) -> usize {
        self.entries
            .iter()
            .filter(|((k, _), _)| *k == i)
            .map(|(_, &r)| r)
            .sum()
    }

    /// Largest index with a nonzero entry.
    pub fn projective_dimension(&self) -> usize {
        self.entries.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    /// JSON object keyed by `"i:multidegree"`.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .entries
            .iter()
            .map(|((i, a), &r)| (format!("{i}:{}", a.render()), serde_json::Value::from(r)))
            .collect();
        serde_json::json!({
            "num_vars": self.num_vars,
            "field": self.field.to_string(),
            "betti": map,
        })
    }
}

/// Builds `K^α(J)` by testing every generator.
pub fn upper_koszul_complex(
    j: &MonomialIdeal,
    alpha: &Monomial,
) -> Result<SimplicialComplex, AlgebraError> {
    check_vars(j.num_vars())?;
    let a = alpha.exponents();
    Ok(SimplicialComplex::from_faces(
        j.generators()
            .iter()
            .filter(|g| g.divides(alpha))
            .map(|g| facet_of(g.exponents(), a)),
    ))
}

fn facet_of(g: &[u16], alpha: &[u16]) -> u64 {
    g.iter().zip(alpha).enumerate().fold(
        0u64,
        |m, (k, (gk, ak))| if gk < ak { m | 1 << k } else { m },
    )
}

fn check_vars(n: usize) -> Result<(), AlgebraError> {
    if n > 64 {
        Err(AlgebraError::TooManyVariables(n))
    } else {
        Ok(())
    }
}

fn check_field(field: Field) -> Result<(), AlgebraError> {
    match field {
        Field::Rationals => Ok(()),
        Field::Prime(p) => Field::prime(p).map(|_| ()),
    }
}

/// What the walk should produce at each degree.
#[derive(Clone, Copy)]
enum Goal {
    /// Every nonzero `β_{i,α}(R/J)`.
    Table,
    /// Only whether some index above `floor` occurs.
    Above(usize),
}

/// Nonzero `(i, rank)` pairs of `R/J` at `alpha`, given the generators
/// dividing `x^alpha`.
fn degree_entries(
    walker: &LatticeWalker,
    alpha: &[u16],
    below: &[u64],
    field: Field,
    goal: Goal,
) -> Vec<(usize, usize)> {
    let supp = alpha
        .iter()
        .enumerate()
        .fold(0u64, |m, (k, &a)| if a > 0 { m | 1 << k } else { m });
    let mut faces = Vec::new();
    for gi in bits(below) {
        let f = facet_of(walker.generator(gi), alpha);
        if f == supp && supp != 0 {
            // Full simplex: acyclic.
            return Vec::new();
        }
        faces.push(f);
    }
    let complex = SimplicialComplex::from_faces(faces);
    let core = complex.strong_core();
    if core.facets().len() == 1 && core.facets()[0] != 0 {
        return Vec::new();
    }
    if let Goal::Above(floor) = goal {
        // H̃_d needs d <= dim, and contributes to index d + 2.
        if (core.dimension() + 2).max(0) as usize <= floor {
            return Vec::new();
        }
    }
    core.reduced_homology(field)
        .0
        .into_iter()
        .filter(|&(_, r)| r > 0)
        .map(|(d, r)| ((d + 2) as usize, r))
        .collect()
}

fn run_walk(j: &MonomialIdeal, field: Field, goal: Goal) -> Vec<(usize, Monomial, usize)> {
    let walker = LatticeWalker::new(j);
    let threads = rayon::current_num_threads();
    let collect = |prefix: &super::lattice::Prefix| {
        let mut out = Vec::new();
        let mut floor = match goal {
            Goal::Above(f) => f,
            Goal::Table => 0,
        };
        walker.walk_from(prefix, &mut |alpha, below| {
            let g = match goal {
                Goal::Table => Goal::Table,
                Goal::Above(_) => Goal::Above(floor),
            };
            for (i, r) in degree_entries(&walker, alpha, below, field, g) {
                floor = floor.max(i);
                out.push((i, Monomial::new(alpha.to_vec()), r));
            }
        });
        out
    };
    if threads <= 1 {
        return walker.split(1).iter().flat_map(collect).collect();
    }
    let prefixes = walker.split(threads * 16);
    let parts: Vec<Vec<(usize, Monomial, usize)>> = prefixes.par_iter().map(collect).collect();
    parts.into_iter().flatten().collect()
}

/// Multigraded Betti numbers of `R/J` over `field`.
pub fn betti(j: &MonomialIdeal, field: Field) -> Result<BettiTable, AlgebraError> {
    check_vars(j.num_vars())?;
    check_field(field)?;
    let mut entries = BTreeMap::new();
    entries.insert((0, Monomial::one(j.num_vars())), 1);
    if !j.is_zero() {
        for (i, a, r) in run_walk(j, field, Goal::Table) {
            entries.insert((i, a), r);
        }
    }
    Ok(BettiTable {
        num_vars: j.num_vars(),
        field,
        entries,
    })
}

fn check_proper(j: &MonomialIdeal) -> Result<(), AlgebraError> {
    if j.is_zero() {
        Err(AlgebraError::ZeroIdeal)
    } else if j.is_unit() {
        Err(AlgebraError::UnitIdeal)
    } else {
        Ok(())
    }
}

/// Projective dimension of `R/J`.
///
/// Only the top index matters here, so degrees whose reduced complex is too
/// small to beat the best index found so far skip the homology computation.
pub fn pd(j: &MonomialIdeal, field: Field) -> Result<usize, AlgebraError> {
    check_vars(j.num_vars())?;
    check_field(field)?;
    check_proper(j)?;
    Ok(run_walk(j, field, Goal::Above(1))
        .into_iter()
        .map(|(i, _, _)| i)
        .max()
        .unwrap_or(1))
}

/// `depth R/J = n - pd(R/J)` with `n` the number of ambient variables, so
/// variables outside every generator count one each.
pub fn depth_quotient(j: &MonomialIdeal, field: Field) -> Result<usize, AlgebraError> {
    Ok(j.num_vars() - pd(j, field)?)
}

/// `depth R/J^s` for `s = 1..=s_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DepthFunction {
    pub num_vars: usize,
    pub depths: Vec<usize>,
}

impl DepthFunction {
    /// Depth at power `s` (1-based).
    pub fn at(&self, s: usize) -> usize {
        self.depths[s - 1]
    }
}

pub fn depth_function(
    j: &MonomialIdeal,
    s_max: u32,
    field: Field,
) -> Result<DepthFunction, AlgebraError> {
    assert!(s_max >= 1, "depth_function needs s_max >= 1");
    let mut depths = Vec::with_capacity(s_max as usize);
    let mut power = j.clone();
    for s in 1..=s_max {
        if s > 1 {
            power = power.product(j)?;
        }
        depths.push(depth_quotient(&power, field)?);
    }
    Ok(DepthFunction {
        num_vars: j.num_vars(),
        depths,
    })
}
