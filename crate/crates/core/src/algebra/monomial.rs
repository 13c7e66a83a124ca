//! Monomials and monomial ideals given by minimal generators.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::{Edge, Hypergraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("ideals live in rings with {left} and {right} variables")]
    AmbientMismatch { left: usize, right: usize },
    #[error("the ideal is the unit ideal")]
    UnitIdeal,
    #[error("the ideal is the zero ideal")]
    ZeroIdeal,
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("the Betti engine supports at most 64 variables, got {0}")]
    TooManyVariables(usize),
}

/// Exponent vector over the ambient variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn new(exponents: Vec<u16>) -> Self {
        Monomial(exponents)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    /// Squarefree monomial `∏_{v ∈ e} x_v`.
    pub fn of_edge(e: &Edge, n: usize) -> Self {
        let mut m = vec![0; n];
        for &v in e.vertices() {
            m[v] = 1;
        }
        Monomial(m)
    }

    pub fn variable(i: usize, n: usize) -> Self {
        let mut m = vec![0; n];
        m[i] = 1;
        Monomial(m)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial, AlgebraError> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(AlgebraError::ExponentOverflow))
            .collect::<Result<_, _>>()
            .map(Monomial)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    /// `self / gcd(self, other)`.
    pub fn strip(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.saturating_sub(*b))
                .collect(),
        )
    }

    /// Variables with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }

    /// `x1^2*x3` style rendering with `x{i+1}` names; `1` for the unit.
    pub fn render(&self) -> String {
        if self.is_one() {
            return "1".into();
        }
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("x{}", i + 1)
                } else {
                    format!("x{}^{}", i + 1, e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Monomial ideal stored by its minimal generators in sorted order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MonomialIdeal {
    num_vars: usize,
    generators: Vec<Monomial>,
}

/// Minimal elements under divisibility, sorted by degree then lexicographically.
fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept
}

impl MonomialIdeal {
    pub fn new(num_vars: usize, generators: impl IntoIterator<Item = Monomial>) -> Self {
        let gens: Vec<Monomial> = generators.into_iter().collect();
        debug_assert!(gens.iter().all(|g| g.num_vars() == num_vars));
        MonomialIdeal {
            num_vars,
            generators: minimalize(gens),
        }
    }

    pub fn zero(num_vars: usize) -> Self {
        MonomialIdeal {
            num_vars,
            generators: Vec::new(),
        }
    }

    pub fn unit(num_vars: usize) -> Self {
        MonomialIdeal::new(num_vars, [Monomial::one(num_vars)])
    }

    /// Ideal generated by the given variables.
    pub fn variables(num_vars: usize, vars: impl IntoIterator<Item = usize>) -> Self {
        MonomialIdeal::new(
            num_vars,
            vars.into_iter().map(|v| Monomial::variable(v, num_vars)),
        )
    }

    /// Ideal from exponent rows, convenient in tests.
    pub fn from_exponents(num_vars: usize, rows: &[&[u16]]) -> Self {
        MonomialIdeal::new(num_vars, rows.iter().map(|r| Monomial::new(r.to_vec())))
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(Monomial::is_one)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    /// No generator divides another.
    pub fn is_minimally_generated(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators
                .iter()
                .enumerate()
                .all(|(j, b)| i == j || !a.divides(b))
        })
    }

    /// `J^s`, built as `J^(k-1) * J` with products divisible by a kept
    /// generator skipped on the fly.
    pub fn power(&self, s: u32) -> Result<MonomialIdeal, AlgebraError> {
        assert!(s >= 1, "power needs s >= 1");
        let mut acc = self.clone();
        for _ in 1..s {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, AlgebraError> {
        self.same_ring(other)?;
        let mut prods = Vec::with_capacity(self.generators.len() * other.generators.len());
        for a in &self.generators {
            for b in &other.generators {
                prods.push(a.mul(b)?);
            }
        }
        prods.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
        prods.dedup();
        let mut kept: Vec<Monomial> = Vec::new();
        for p in prods {
            if !kept.iter().any(|k| k.divides(&p)) {
                kept.push(p);
            }
        }
        Ok(MonomialIdeal {
            num_vars: self.num_vars,
            generators: kept,
        })
    }

    /// `J : m`, generated by `g / gcd(g, m)`.
    pub fn colon(&self, m: &Monomial) -> MonomialIdeal {
        MonomialIdeal::new(self.num_vars, self.generators.iter().map(|g| g.strip(m)))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, AlgebraError> {
        self.same_ring(other)?;
        Ok(MonomialIdeal::new(
            self.num_vars,
            self.generators.iter().chain(&other.generators).cloned(),
        ))
    }

    fn same_ring(&self, other: &MonomialIdeal) -> Result<(), AlgebraError> {
        if self.num_vars == other.num_vars {
            Ok(())
        } else {
            Err(AlgebraError::AmbientMismatch {
                left: self.num_vars,
                right: other.num_vars,
            })
        }
    }

    /// Variables dividing some generator.
    pub fn support(&self) -> Vec<usize> {
        (0..self.num_vars)
            .filter(|&i| self.generators.iter().any(|g| g.0[i] > 0))
            .collect()
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return f.write_str("(0)");
        }
        let parts: Vec<String> = self.generators.iter().map(Monomial::render).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `I(G)`: one squarefree generator per edge, in the ambient ring of `G`.
pub fn edge_ideal(g: &Hypergraph) -> MonomialIdeal {
    let n = g.num_vertices();
    MonomialIdeal::new(n, g.edges().iter().map(|e| Monomial::of_edge(e, n)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn edge_ideals() {
        let g = Hypergraph::from_names(&["x", "y"], [vec!["x", "y"]]).unwrap();
        assert_eq!(edge_ideal(&g).generators(), &[m(&[1, 1])]);
        let empty = Hypergraph::with_numbered_vertices(3, Vec::<Vec<usize>>::new()).unwrap();
        assert!(edge_ideal(&empty).is_zero());
    }

    #[test]
    fn powers() {
        let xy = MonomialIdeal::from_exponents(2, &[&[1, 1]]);
        assert_eq!(xy.power(3).unwrap().generators(), &[m(&[3, 3])]);
        assert_eq!(xy.power(1).unwrap(), xy);
        // (ab, bc)^2 = (a^2b^2, ab^2c, b^2c^2)
        let j = MonomialIdeal::from_exponents(3, &[&[1, 1, 0], &[0, 1, 1]]);
        let sq = j.power(2).unwrap();
        let mut got = sq.generators().to_vec();
        got.sort();
        let mut want = vec![m(&[2, 2, 0]), m(&[1, 2, 1]), m(&[0, 2, 2])];
        want.sort();
        assert_eq!(got, want);
        assert!(sq.is_minimally_generated());
    }

    #[test]
    fn colons() {
        let j = MonomialIdeal::from_exponents(3, &[&[1, 1, 0], &[0, 1, 1]]);
        assert!(j.colon(&m(&[1, 1, 0])).is_unit());
        assert_eq!(j.power(2).unwrap().colon(&m(&[1, 1, 0])), j);
        let cd = MonomialIdeal::from_exponents(4, &[&[0, 0, 1, 1]]);
        assert_eq!(cd.colon(&m(&[1, 1, 0, 0])), cd);
    }

    #[test]
    fn sums() {
        let ab = MonomialIdeal::from_exponents(4, &[&[1, 1, 0, 0]]);
        assert_eq!(ab.sum(&MonomialIdeal::zero(4)).unwrap(), ab);
        let abc = MonomialIdeal::from_exponents(4, &[&[1, 1, 1, 0]]);
        assert_eq!(ab.sum(&abc).unwrap(), ab);
        let cd = MonomialIdeal::from_exponents(4, &[&[0, 0, 1, 1]]);
        assert_eq!(ab.sum(&cd).unwrap().generators().len(), 2);
        assert_eq!(
            ab.sum(&MonomialIdeal::zero(3)),
            Err(AlgebraError::AmbientMismatch { left: 4, right: 3 })
        );
    }

    #[test]
    fn rendering() {
        let j = MonomialIdeal::from_exponents(3, &[&[2, 1, 0], &[0, 0, 1]]);
        assert_eq!(j.to_string(), "(x3, x1^2*x2)");
    }
}
