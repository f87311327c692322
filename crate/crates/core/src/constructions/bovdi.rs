//! Search for radical F_2-algebras whose circle group is a given class-two
//! 2-group of exponent dividing four.

use std::sync::Arc;

use super::p_group_class;
use crate::algebra::{quasi_regular_group, FiniteAlgebra};
use crate::group::iso::is_isomorphic;
use crate::group::ops::is_isomorphism_map;
use crate::group::{FiniteGroup, GroupOps};
use crate::ring::prime_field;
use crate::{Error, Limits, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchPhase {
    /// `e_i e_j` supported on `e_k` with `k > max(i, j)`; always nilpotent.
    Triangular,
    Full,
}

#[derive(Debug, Clone)]
pub struct BovdiHit {
    pub algebra: FiniteAlgebra,
    pub phase: SearchPhase,
    /// Search nodes visited over both phases.
    pub explored: u64,
    /// `map[g]` is the index in `Q(A)` of group element `g`.
    pub map: Vec<usize>,
}

/// Largest dimension accepted; the full space has `2^(dim^3)` points.
const MAX_DIM: usize = 5;

/// Lexicographically first algebra (products `e_i e_j` in row-major order,
/// each read as a bitmask) with `Q(A) = G`, triangular shapes first.
pub fn bovdi_search(g: &FiniteGroup, dim: usize, budget: u64, limits: &Limits) -> Result<BovdiHit> {
    let (p, class, exponent) = p_group_class(g);
    let two_group = p == Some(2) || g.is_trivial();
    if !two_group || class.is_none_or(|c| c > 2) || 4 % exponent != 0 {
        return Err(Error::PreconditionViolated(format!(
            "{} must be a 2-group of class at most two and exponent dividing 4",
            g.label()
        )));
    }
    if 1usize.checked_shl(dim as u32) != Some(g.order()) {
        return Err(Error::PreconditionViolated(format!("2^{dim} != |{}| = {}", g.label(), g.order())));
    }
    if dim > MAX_DIM {
        return Err(Error::bound("search dimension", dim, MAX_DIM));
    }
    let mut s = Search { g, dim, budget, explored: 0, limits, prod: vec![0; dim * dim] };
    for phase in [SearchPhase::Triangular, SearchPhase::Full] {
        if let Some((algebra, map)) = s.run(phase)? {
            return Ok(BovdiHit { algebra, phase, explored: s.explored, map });
        }
    }
    Err(Error::NotFound { budget })
}

struct Search<'a> {
    g: &'a FiniteGroup,
    dim: usize,
    budget: u64,
    explored: u64,
    limits: &'a Limits,
    /// `prod[i * dim + j]`: bitmask of `e_i e_j`.
    prod: Vec<u32>,
}

impl Search<'_> {
    fn run(&mut self, phase: SearchPhase) -> Result<Option<(FiniteAlgebra, Vec<usize>)>> {
        let d = self.dim;
        let full = (1u32 << d) - 1;
        let allowed: Vec<u32> = (0..d * d)
            .map(|t| match phase {
                SearchPhase::Full => full,
                SearchPhase::Triangular => full & !((2u32 << (t / d).max(t % d)) - 1),
            })
            .collect();
        self.descend(0, &allowed, phase)
    }

    fn descend(&mut self, t: usize, allowed: &[u32], phase: SearchPhase) -> Result<Option<(FiniteAlgebra, Vec<usize>)>> {
        self.explored += 1;
        if self.explored > self.budget {
            return Err(Error::NotFound { budget: self.budget });
        }
        if t == allowed.len() {
            return self.accept(phase);
        }
        let mask = allowed[t];
        // submasks of `mask` in increasing order
        let mut v = 0u32;
        loop {
            self.prod[t] = v;
            if self.associative_so_far(t + 1) {
                if let Some(hit) = self.descend(t + 1, allowed, phase)? {
                    return Ok(Some(hit));
                }
            }
            if v == mask {
                break;
            }
            v = (v.wrapping_sub(mask)) & mask;
        }
        self.prod[t] = 0;
        Ok(None)
    }

    /// `x * e_c` for a bitmask `x`, if every needed product is assigned.
    fn right(&self, x: u32, c: usize, assigned: usize) -> Option<u32> {
        let mut acc = 0;
        for l in bits(x) {
            let t = l * self.dim + c;
            if t >= assigned {
                return None;
            }
            acc ^= self.prod[t];
        }
        Some(acc)
    }

    fn left(&self, a: usize, x: u32, assigned: usize) -> Option<u32> {
        let mut acc = 0;
        for l in bits(x) {
            let t = a * self.dim + l;
            if t >= assigned {
                return None;
            }
            acc ^= self.prod[t];
        }
        Some(acc)
    }

    /// Associativity on every basis triple whose products are all known.
    fn associative_so_far(&self, assigned: usize) -> bool {
        let d = self.dim;
        for a in 0..d {
            for b in 0..d {
                if a * d + b >= assigned {
                    continue;
                }
                let ab = self.prod[a * d + b];
                for c in 0..d {
                    if b * d + c >= assigned {
                        continue;
                    }
                    let bc = self.prod[b * d + c];
                    if let (Some(l), Some(r)) = (self.right(ab, c, assigned), self.left(a, bc, assigned)) {
                        if l != r {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn accept(&self, phase: SearchPhase) -> Result<Option<(FiniteAlgebra, Vec<usize>)>> {
        let d = self.dim;
        let constants: Vec<Vec<Vec<u32>>> = (0..d)
            .map(|i| (0..d).map(|j| (0..d).map(|k| (self.prod[i * d + j] >> k) & 1).collect()).collect())
            .collect();
        let ring = Arc::new(prime_field(2)?);
        let label = format!("Bovdi({})", self.g.label());
        let algebra = FiniteAlgebra::new(ring, d, &constants, None, label)?;
        let q = quasi_regular_group(&algebra, self.limits)?;
        if q.order() != self.g.order() {
            debug_assert!(phase == SearchPhase::Full, "triangular algebras are nilpotent");
            return Ok(None);
        }
        let qt = q.to_table(self.limits)?;
        let Some(map) = is_isomorphic(self.g, &qt, self.limits)? else {
            return Ok(None);
        };
        // tabulation swaps the identity into slot 0; undo that and recheck on Q(A)
        let e = q.identity();
        let back = |i: usize| if i == 0 { e } else if i == e { 0 } else { i };
        let map: Vec<usize> = map.into_iter().map(back).collect();
        if !is_isomorphism_map(self.g, &q, |x| map[x]) {
            return Err(Error::Internal("isomorphism onto Q(A) failed to verify".into()));
        }
        Ok(Some((algebra, map)))
    }
}

fn bits(x: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |k| (x >> k) & 1 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog::*;

    fn hit(g: &FiniteGroup, dim: usize) -> BovdiHit {
        let l = Limits::default();
        bovdi_search(g, dim, l.algebra_search_budget, &l).unwrap()
    }

    #[test]
    fn small_cases() {
        let c2 = hit(&cyclic(2).unwrap(), 1);
        assert_eq!(c2.algebra.constants(), vec![vec![vec![0]]]);
        let c4 = hit(&cyclic(4).unwrap(), 2);
        let x = c4.algebra.basis(0);
        assert_ne!(c4.algebra.mul(&x, &x), c4.algebra.zero());
        assert_eq!(c4.phase, SearchPhase::Triangular);
    }

    #[test]
    fn dihedral_and_quaternion() {
        for g in [dihedral(4).unwrap(), quaternion8()] {
            let h = hit(&g, 3);
            assert_eq!(h.algebra.dim(), 3);
            assert_eq!(h.phase, SearchPhase::Triangular);
        }
        let q8 = hit(&quaternion8(), 3);
        let c = q8.algebra.constants();
        assert_eq!((c[0][0][2], c[1][1][2], c[0][1][2], c[1][0][2]), (1, 1, 0, 1));
    }

    #[test]
    fn preconditions_and_budget() {
        let l = Limits::default();
        assert!(matches!(bovdi_search(&dihedral(4).unwrap(), 2, 100, &l), Err(Error::PreconditionViolated(_))));
        assert!(matches!(bovdi_search(&cyclic(8).unwrap(), 3, 100, &l), Err(Error::PreconditionViolated(_))));
        assert!(matches!(bovdi_search(&heisenberg(3).unwrap(), 3, 100, &l), Err(Error::PreconditionViolated(_))));
        assert!(matches!(bovdi_search(&quaternion8(), 3, 3, &l), Err(Error::NotFound { budget: 3 })));
    }
}
