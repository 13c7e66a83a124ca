//! Exact ranks of sparse integer matrices and reduced simplicial homology.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::monomial::AlgebraError;

/// Default prime for the modular fast path.
pub const DEFAULT_PRIME: u32 = 32003;

/// Coefficient field for homology ranks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Field {
    /// Exact rationals, via fraction-free integer elimination.
    #[default]
    Rationals,
    /// The prime field `F_p`.
    Prime(u32),
}

impl Field {
    pub fn prime(p: u32) -> Result<Field, AlgebraError> {
        if (2..(1 << 31)).contains(&p) && is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(AlgebraError::UnsupportedField(format!(
                "p:{p} (not a prime below 2^31)"
            )))
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => f.write_str("q"),
            Field::Prime(p) => write!(f, "p:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = AlgebraError;

    /// `q` for the rationals, `p:<prime>` for a prime field.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "q" | "Q" => Ok(Field::Rationals),
            other => match other.strip_prefix("p:").map(str::parse::<u32>) {
                Some(Ok(p)) => Field::prime(p),
                _ => Err(AlgebraError::UnsupportedField(other.to_string())),
            },
        }
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Sparse row: strictly increasing column indices with nonzero values.
pub type SparseRow = Vec<(usize, i64)>;

/// Rank of a sparse integer matrix over `field`.
pub fn rank(rows: &[SparseRow], field: Field) -> usize {
    match field {
        Field::Prime(p) => rank_mod_p(rows, p),
        Field::Rationals => rank_rational(rows),
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Incremental echelon form modulo `p`.
pub fn rank_mod_p(rows: &[SparseRow], p: u32) -> usize {
    let p = p as u64;
    let mut pivots: HashMap<usize, Vec<(usize, u64)>> = HashMap::new();
    for row in rows {
        let mut r: Vec<(usize, u64)> = row
            .iter()
            .map(|&(c, v)| (c, v.rem_euclid(p as i64) as u64))
            .filter(|&(_, v)| v != 0)
            .collect();
        while let Some(&(lead, lv)) = r.first() {
            let Some(piv) = pivots.get(&lead) else {
                // Normalize to a monic pivot row.
                let inv = mod_inv(lv, p);
                for e in &mut r {
                    e.1 = e.1 * inv % p;
                }
                pivots.insert(lead, r);
                break;
            };
            // r <- r - lv * piv (piv is monic).
            r = combine_mod(&r, piv, lv, p);
        }
    }
    pivots.len()
}

fn combine_mod(r: &[(usize, u64)], piv: &[(usize, u64)], factor: u64, p: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(r.len() + piv.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < piv.len() {
        let take_r = j >= piv.len() || (i < r.len() && r[i].0 < piv[j].0);
        let take_p = i >= r.len() || (j < piv.len() && piv[j].0 < r[i].0);
        if take_r {
            out.push(r[i]);
            i += 1;
        } else if take_p {
            out.push((piv[j].0, (p - factor * piv[j].1 % p) % p));
            j += 1;
        } else {
            let v = (r[i].1 + p - factor * piv[j].1 % p) % p;
            if v != 0 {
                out.push((r[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Arithmetic needed by fraction-free elimination.
trait Ring: Clone + PartialEq + Sized {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn abs_gt_one(&self) -> bool;
    /// `a*x - b*y`, `None` on overflow.
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn gcd(a: &Self, b: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
}

impl Ring for i64 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs_gt_one(&self) -> bool {
        self.unsigned_abs() > 1
    }
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a as i64
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        BigInt::from(0)
    }
    fn is_zero(&self) -> bool {
        self.sign() == num_bigint::Sign::NoSign
    }
    fn abs_gt_one(&self) -> bool {
        self.magnitude() > &num_bigint::BigUint::from(1u8)
    }
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.magnitude().clone(), b.magnitude().clone());
        while b != num_bigint::BigUint::from(0u8) {
            let r = &a % &b;
            a = b;
            b = r;
        }
        BigInt::from(a)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
}

/// Fraction-free echelon form; rows are rescaled by their content after
/// every elimination step. `None` signals overflow.
fn rank_fraction_free<T: Ring>(rows: Vec<Vec<(usize, T)>>) -> Option<usize> {
    let mut pivots: HashMap<usize, Vec<(usize, T)>> = HashMap::new();
    for mut r in rows {
        r.retain(|e| !e.1.is_zero());
        while let Some((lead, lv)) = r.first().cloned() {
            let Some(piv) = pivots.get(&lead) else {
                pivots.insert(lead, r);
                break;
            };
            // r <- pv * r - lv * piv, then strip content.
            let pv = piv[0].1.clone();
            let mut out: Vec<(usize, T)> = Vec::with_capacity(r.len() + piv.len());
            let (mut i, mut j) = (0, 0);
            let zero = T::zero();
            while i < r.len() || j < piv.len() {
                let ci = r.get(i).map_or(usize::MAX, |e| e.0);
                let cj = piv.get(j).map_or(usize::MAX, |e| e.0);
                let (col, x, y) = if ci < cj {
                    i += 1;
                    (ci, &r[i - 1].1, &zero)
                } else if cj < ci {
                    j += 1;
                    (cj, &zero, &piv[j - 1].1)
                } else {
                    i += 1;
                    j += 1;
                    (ci, &r[i - 1].1, &piv[j - 1].1)
                };
                let v = T::cross(&pv, x, &lv, y)?;
                if !v.is_zero() {
                    out.push((col, v));
                }
            }
            if out.iter().any(|e| e.1.abs_gt_one()) {
                let mut g = T::zero();
                for e in &out {
                    g = T::gcd(&g, &e.1);
                    if !g.abs_gt_one() {
                        break;
                    }
                }
                if g.abs_gt_one() {
                    for e in &mut out {
                        e.1 = e.1.div_exact(&g);
                    }
                }
            }
            r = out;
        }
    }
    Some(pivots.len())
}

/// Rank over the rationals, falling back to big integers on overflow.
pub fn rank_rational(rows: &[SparseRow]) -> usize {
    if let Some(r) = rank_fraction_free(rows.to_vec()) {
        return r;
    }
    let big: Vec<Vec<(usize, BigInt)>> = rows
        .iter()
        .map(|row| row.iter().map(|&(c, v)| (c, BigInt::from(v))).collect())
        .collect();
    rank_fraction_free(big).expect("big integers do not overflow")
}

/// A finite simplicial complex on vertex bit positions `0..64`, stored by its
/// facets. An empty facet list is the void complex; a single empty facet is
/// the complex `{∅}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    facets: Vec<u64>,
}

/// Reduced Betti numbers indexed by dimension `-1, 0, 1, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReducedHomology(pub BTreeMap<i32, usize>);

impl ReducedHomology {
    pub fn get(&self, dim: i32) -> usize {
        self.0.get(&dim).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.values().all(|&v| v == 0)
    }
}

impl SimplicialComplex {
    /// Facets are the maximal members of `faces`.
    pub fn from_faces(faces: impl IntoIterator<Item = u64>) -> Self {
        let mut f: Vec<u64> = faces.into_iter().collect();
        f.sort_unstable_by_key(|m| (std::cmp::Reverse(m.count_ones()), *m));
        f.dedup();
        let mut kept: Vec<u64> = Vec::with_capacity(f.len());
        for m in f {
            if !kept.iter().any(|&k| m & !k == 0) {
                kept.push(m);
            }
        }
        kept.sort_unstable();
        SimplicialComplex { facets: kept }
    }

    pub fn facets(&self) -> &[u64] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn contains(&self, face: u64) -> bool {
        self.facets.iter().any(|&f| face & !f == 0)
    }

    pub fn dimension(&self) -> i32 {
        self.facets
            .iter()
            .map(|f| f.count_ones() as i32 - 1)
            .max()
            .unwrap_or(-2)
    }

    pub fn vertex_mask(&self) -> u64 {
        self.facets.iter().fold(0, |a, &f| a | f)
    }

    /// Every face, smallest first.
    pub fn faces(&self) -> Vec<u64> {
        let mut seen: HashSet<u64> = HashSet::new();
        for &f in &self.facets {
            let mut sub = f;
            loop {
                seen.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & f;
            }
        }
        let mut out: Vec<u64> = seen.into_iter().collect();
        out.sort_unstable_by_key(|m| (m.count_ones(), *m));
        out
    }

    /// Repeatedly deletes dominated vertices: `v` is dominated when some other
    /// vertex lies in every facet through `v`. Each deletion is a strong
    /// deformation retraction, so homology is unchanged.
    pub fn strong_core(&self) -> SimplicialComplex {
        let mut facets = self.facets.clone();
        'outer: loop {
            if facets.len() <= 1 {
                break;
            }
            let verts = facets.iter().fold(0u64, |a, &f| a | f);
            let mut rest = verts;
            while rest != 0 {
                let v = rest.trailing_zeros();
                rest &= rest - 1;
                let bit = 1u64 << v;
                let common = facets
                    .iter()
                    .filter(|&&f| f & bit != 0)
                    .fold(u64::MAX, |a, &f| a & f);
                if common & !bit != 0 {
                    let next = SimplicialComplex::from_faces(facets.iter().map(|&f| f & !bit));
                    facets = next.facets;
                    continue 'outer;
                }
            }
            break;
        }
        SimplicialComplex { facets }
    }

    /// Reduced homology ranks over `field`.
    pub fn reduced_homology(&self, field: Field) -> ReducedHomology {
        let mut out = BTreeMap::new();
        if self.facets.is_empty() {
            return ReducedHomology(out);
        }
        let core = self.strong_core();
        if core.facets.len() == 1 {
            if core.facets[0] == 0 {
                out.insert(-1, 1);
            }
            return ReducedHomology(out);
        }
        let faces = core.faces();
        let top = core.dimension();
        // by_dim[k] lists faces of cardinality k (dimension k-1).
        let mut by_dim: Vec<Vec<u64>> = vec![Vec::new(); top as usize + 2];
        for f in faces {
            by_dim[f.count_ones() as usize].push(f);
        }
        let index: Vec<HashMap<u64, usize>> = by_dim
            .iter()
            .map(|fs| fs.iter().enumerate().map(|(i, &f)| (f, i)).collect())
            .collect();
        // rank of the boundary from cardinality k to k-1, for k >= 1.
        let mut ranks = vec![0usize; by_dim.len() + 1];
        for k in 1..by_dim.len() {
            let rows: Vec<SparseRow> = by_dim[k]
                .iter()
                .map(|&face| {
                    let mut row: SparseRow = Vec::with_capacity(k);
                    let mut rest = face;
                    let mut sign = 1i64;
                    while rest != 0 {
                        let v = rest.trailing_zeros();
                        rest &= rest - 1;
                        row.push((index[k - 1][&(face & !(1u64 << v))], sign));
                        sign = -sign;
                    }
                    row.sort_unstable_by_key(|e| e.0);
                    row
                })
                .collect();
            ranks[k] = rank(&rows, field);
        }
        for k in 0..by_dim.len() {
            let h = by_dim[k].len() - ranks[k] - ranks[k + 1];
            if h > 0 {
                out.insert(k as i32 - 1, h);
            }
        }
        ReducedHomology(out)
    }
}
