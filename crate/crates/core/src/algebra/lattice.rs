//! The lcm lattice of a monomial ideal.
//!
//! Two enumerations are provided. [`lcm_lattice`] materializes the lattice by
//! breadth-first join closure. [`LatticeWalker`] streams it depth-first over
//! the coordinates instead, using the fact that `α` is a join of generators
//! exactly when `α` is the lcm of all generators dividing `x^α`; it also
//! hands each visited degree the set of generators below it, which is what
//! the Betti engine needs.

use std::collections::HashSet;

use super::monomial::{Monomial, MonomialIdeal};

/// All joins of nonempty generator subsets, sorted.
pub fn lcm_lattice(j: &MonomialIdeal) -> Vec<Monomial> {
    let gens = j.generators();
    let mut seen: HashSet<Monomial> = gens.iter().cloned().collect();
    let mut frontier: Vec<Monomial> = gens.to_vec();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for g in gens {
                let l = a.lcm(g);
                if !seen.contains(&l) {
                    seen.insert(l.clone());
                    next.push(l);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Monomial> = seen.into_iter().collect();
    out.sort();
    out
}

/// Bitset helpers over `u64` words.
pub(crate) fn is_empty(words: &[u64]) -> bool {
    words.iter().all(|&w| w == 0)
}

fn intersects(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}

/// Iterates set bit positions.
pub(crate) fn bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            }
        })
    })
}

/// Depth-first enumerator of lattice degrees.
pub struct LatticeWalker {
    n: usize,
    words: usize,
    gens: Vec<Vec<u16>>,
    /// `le[j][v]`: generators with exponent `<= v` in variable `j`.
    le: Vec<Vec<Vec<u64>>>,
    /// `eq[j][v]`: generators with exponent exactly `v` in variable `j`.
    eq: Vec<Vec<Vec<u64>>>,
}

/// A degree fixed on the first `depth` coordinates, used to split work.
#[derive(Debug, Clone)]
pub struct Prefix {
    alpha: Vec<u16>,
    depth: usize,
    compat: Vec<u64>,
}

impl LatticeWalker {
    pub fn new(j: &MonomialIdeal) -> Self {
        let n = j.num_vars();
        let gens: Vec<Vec<u16>> = j
            .generators()
            .iter()
            .map(|g| g.exponents().to_vec())
            .collect();
        let m = gens.len();
        let words = m.div_ceil(64).max(1);
        let mut le = Vec::with_capacity(n);
        let mut eq = Vec::with_capacity(n);
        for var in 0..n {
            let top = gens.iter().map(|g| g[var]).max().unwrap_or(0) as usize;
            let mut eqv = vec![vec![0u64; words]; top + 1];
            for (i, g) in gens.iter().enumerate() {
                eqv[g[var] as usize][i / 64] |= 1 << (i % 64);
            }
            let mut lev = eqv.clone();
            for v in 1..=top {
                let (lo, hi) = lev.split_at_mut(v);
                for (h, l) in hi[0].iter_mut().zip(&lo[v - 1]) {
                    *h |= *l;
                }
            }
            le.push(lev);
            eq.push(eqv);
        }
        LatticeWalker {
            n,
            words,
            gens,
            le,
            eq,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn generator(&self, i: usize) -> &[u16] {
        &self.gens[i]
    }

    fn root(&self) -> Prefix {
        let m = self.gens.len();
        let mut compat = vec![0u64; self.words];
        for i in 0..m {
            compat[i / 64] |= 1 << (i % 64);
        }
        Prefix {
            alpha: vec![0; self.n],
            depth: 0,
            compat,
        }
    }

    /// Children of a prefix with the next coordinate fixed, after pruning.
    fn children(&self, p: &Prefix, out: &mut Vec<Prefix>) {
        let j = p.depth;
        let top = (0..self.eq[j].len())
            .rev()
            .find(|&v| intersects(&p.compat, &self.eq[j][v]));
        let Some(top) = top else { return };
        for v in 0..=top {
            let compat: Vec<u64> = p
                .compat
                .iter()
                .zip(&self.le[j][v])
                .map(|(a, b)| a & b)
                .collect();
            if !self.attained(&compat, &p.alpha, j, v as u16) {
                continue;
            }
            let mut alpha = p.alpha.clone();
            alpha[j] = v as u16;
            out.push(Prefix {
                alpha,
                depth: j + 1,
                compat,
            });
        }
    }

    /// Each fixed coordinate is still reached by some compatible generator.
    fn attained(&self, compat: &[u64], alpha: &[u16], j: usize, v: u16) -> bool {
        if is_empty(compat) || !intersects(compat, &self.eq[j][v as usize]) {
            return false;
        }
        (0..j).all(|k| alpha[k] == 0 || intersects(compat, &self.eq[k][alpha[k] as usize]))
    }

    /// Splits the walk into independent subtrees, at least `want` if possible.
    pub fn split(&self, want: usize) -> Vec<Prefix> {
        let mut layer = vec![self.root()];
        while layer.len() < want && layer.first().is_some_and(|p| p.depth < self.n) {
            let mut next = Vec::new();
            for p in &layer {
                self.children(p, &mut next);
            }
            layer = next;
        }
        layer
    }

    /// Visits every lattice degree below `prefix` with the bitset of
    /// generators dividing it.
    pub fn walk_from<F: FnMut(&[u16], &[u64])>(&self, prefix: &Prefix, visit: &mut F) {
        if prefix.depth == self.n {
            if !is_empty(&prefix.compat) {
                visit(&prefix.alpha, &prefix.compat);
            }
            return;
        }
        let mut alpha = prefix.alpha.clone();
        let mut stack: Vec<Vec<u64>> = vec![vec![0u64; self.words]; self.n + 1];
        stack[prefix.depth].copy_from_slice(&prefix.compat);
        self.descend(prefix.depth, &mut alpha, &mut stack, visit);
    }

    pub fn walk<F: FnMut(&[u16], &[u64])>(&self, visit: &mut F) {
        self.walk_from(&self.root(), visit);
    }

    fn descend<F: FnMut(&[u16], &[u64])>(
        &self,
        j: usize,
        alpha: &mut [u16],
        stack: &mut [Vec<u64>],
        visit: &mut F,
    ) {
        let Some(top) = (0..self.eq[j].len())
            .rev()
            .find(|&v| intersects(&stack[j], &self.eq[j][v]))
        else {
            return;
        };
        for v in 0..=top {
            {
                let (head, tail) = stack.split_at_mut(j + 1);
                for ((o, a), b) in tail[0].iter_mut().zip(&head[j]).zip(&self.le[j][v]) {
                    *o = a & b;
                }
            }
            if !self.attained(&stack[j + 1], alpha, j, v as u16) {
                continue;
            }
            alpha[j] = v as u16;
            if j + 1 == self.n {
                visit(alpha, &stack[j + 1]);
            } else {
                self.descend(j + 1, alpha, stack, visit);
            }
            alpha[j] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn walked(j: &MonomialIdeal) -> Vec<Monomial> {
        let w = LatticeWalker::new(j);
        let mut out = Vec::new();
        w.walk(&mut |a, _| out.push(Monomial::new(a.to_vec())));
        out.sort();
        out
    }

    #[test]
    fn path_lattice() {
        let j = MonomialIdeal::from_exponents(4, &[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1]]);
        let l = lcm_lattice(&j);
        assert_eq!(l.len(), 6);
        assert_eq!(walked(&j), l);
    }

    #[test]
    fn small_lattices() {
        let xy = MonomialIdeal::from_exponents(2, &[&[1, 1]]);
        assert_eq!(lcm_lattice(&xy), vec![Monomial::new(vec![1, 1])]);
        let j = MonomialIdeal::from_exponents(2, &[&[2, 0], &[1, 1]]);
        let mut want = vec![
            Monomial::new(vec![2, 0]),
            Monomial::new(vec![1, 1]),
            Monomial::new(vec![2, 1]),
        ];
        want.sort();
        assert_eq!(lcm_lattice(&j), want);
        assert_eq!(walked(&j), want);
    }

    #[test]
    fn compat_sets_are_divisors() {
        let j = MonomialIdeal::from_exponents(3, &[&[2, 1, 0], &[0, 1, 2], &[1, 0, 1], &[0, 3, 0]]);
        let w = LatticeWalker::new(&j);
        w.walk(&mut |a, compat| {
            let alpha = Monomial::new(a.to_vec());
            let below: Vec<usize> = bits(compat).collect();
            let want: Vec<usize> = (0..j.generators().len())
                .filter(|&i| j.generators()[i].divides(&alpha))
                .collect();
            assert_eq!(below, want);
        });
        assert_eq!(walked(&j), lcm_lattice(&j));
    }

    #[test]
    fn split_covers_walk() {
        let j = MonomialIdeal::from_exponents(
            4,
            &[&[1, 1, 0, 0], &[0, 2, 1, 0], &[0, 0, 1, 1], &[1, 0, 0, 2]],
        );
        let w = LatticeWalker::new(&j);
        let mut parts = Vec::new();
        for p in w.split(7) {
            w.walk_from(&p, &mut |a, _| parts.push(Monomial::new(a.to_vec())));
        }
        parts.sort();
        assert_eq!(parts, lcm_lattice(&j));
    }
}
