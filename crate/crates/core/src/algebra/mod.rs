//! Finite-rank algebras over finite commutative rings, given by structure
//! constants `e_i e_j = sum_k c_ijk e_k`. Elements are coordinate vectors,
//! and when enumerated they are encoded as integers in base `|R|`.

pub mod groups;
pub mod identities;

use std::sync::Arc;

use crate::group::ops::prime_power;
use crate::group::{FiniteGroup, GroupOps};
use crate::ring::FiniteCommRing;
use crate::{Error, Limits, Result};

pub use groups::{
    is_quasi_regular, quasi_regular_group, unit_group, unit_group_table, unit_group_with, AlgebraGroup,
    GroupHandle, GroupKind, UnitMode,
};

#[derive(Clone)]
pub struct FiniteAlgebra {
    ring: Arc<FiniteCommRing>,
    dim: usize,
    /// Nonzero `(k, c_ijk)` for the pair at `i * dim + j`.
    terms: Vec<Vec<(u32, u32)>>,
    one: Option<Vec<u32>>,
    label: String,
    /// Group algebra of a p-group over the prime field: units are exactly
    /// the elements of nonzero augmentation.
    augmented_p_group: bool,
}

impl std::fmt::Debug for FiniteAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteAlgebra({}, dim {} over {})", self.label, self.dim, self.ring.label())
    }
}

impl FiniteAlgebra {
    /// Builds and validates an algebra from dense constants `c[i][j][k]`.
    pub fn new(
        ring: Arc<FiniteCommRing>,
        dim: usize,
        constants: &[Vec<Vec<u32>>],
        one: Option<Vec<u32>>,
        label: impl Into<String>,
    ) -> Result<FiniteAlgebra> {
        let m = ring.size() as u32;
        let shape_ok = constants.len() == dim
            && constants
                .iter()
                .all(|row| row.len() == dim && row.iter().all(|v| v.len() == dim && v.iter().all(|&c| c < m)));
        if !shape_ok {
            return Err(Error::AlgebraAxiomViolation(format!(
                "constants must be a {dim}x{dim}x{dim} array of ring elements"
            )));
        }
        let terms = constants
            .iter()
            .flat_map(|row| row.iter())
            .map(|v| v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (k as u32, c)).collect())
            .collect();
        FiniteAlgebra::from_terms(ring, dim, terms, one, label.into())
    }

    pub(crate) fn from_terms(
        ring: Arc<FiniteCommRing>,
        dim: usize,
        terms: Vec<Vec<(u32, u32)>>,
        one: Option<Vec<u32>>,
        label: String,
    ) -> Result<FiniteAlgebra> {
        let a = FiniteAlgebra { ring, dim, terms, one, label, augmented_p_group: false };
        a.validate()?;
        Ok(a)
    }

    /// Associativity on all basis triples, and the identity (if present)
    /// acting trivially on the basis from both sides.
    pub fn validate(&self) -> Result<()> {
        let d = self.dim;
        if let Some(one) = &self.one {
            if one.len() != d || one.iter().any(|&c| c as usize >= self.ring.size()) {
                return Err(Error::AlgebraAxiomViolation("identity has the wrong shape".into()));
            }
            for i in 0..d {
                let e = self.basis(i);
                if self.mul(one, &e) != e || self.mul(&e, one) != e {
                    return Err(Error::AlgebraAxiomViolation(format!("identity fails on basis vector {i}")));
                }
            }
        }
        let mut left = vec![0; d];
        let mut right = vec![0; d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    left.iter_mut().for_each(|v| *v = 0);
                    right.iter_mut().for_each(|v| *v = 0);
                    for &(l, c) in &self.terms[i * d + j] {
                        self.accumulate(&mut left, l as usize, k, c);
                    }
                    for &(l, c) in &self.terms[j * d + k] {
                        self.accumulate(&mut right, i, l as usize, c);
                    }
                    if left != right {
                        return Err(Error::AlgebraAxiomViolation(format!(
                            "(e{i} e{j}) e{k} != e{i} (e{j} e{k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `out += c * e_i e_j`.
    #[inline]
    fn accumulate(&self, out: &mut [u32], i: usize, j: usize, c: u32) {
        let r = &*self.ring;
        for &(k, t) in &self.terms[i * self.dim + j] {
            let k = k as usize;
            out[k] = r.add(out[k], r.mul(c, t));
        }
    }

    pub fn ring(&self) -> &FiniteCommRing {
        &self.ring
    }
    pub fn ring_arc(&self) -> &Arc<FiniteCommRing> {
        &self.ring
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn label(&self) -> &str {
        &self.label
    }
    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
    pub fn one(&self) -> Option<&[u32]> {
        self.one.as_deref()
    }
    pub fn is_unital(&self) -> bool {
        self.one.is_some()
    }
    pub(crate) fn has_augmentation_fast_path(&self) -> bool {
        self.augmented_p_group
    }

    /// Dense structure constants `c[i][j][k]`.
    pub fn constants(&self) -> Vec<Vec<Vec<u32>>> {
        let d = self.dim;
        (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let mut v = vec![0; d];
                        for &(k, c) in &self.terms[i * d + j] {
                            v[k as usize] = c;
                        }
                        v
                    })
                    .collect()
            })
            .collect()
    }

    pub fn basis(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    pub fn zero(&self) -> Vec<u32> {
        vec![0; self.dim]
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let mut out = vec![0; self.dim];
        self.mul_into(x, y, &mut out);
        out
    }

    pub fn mul_into(&self, x: &[u32], y: &[u32], out: &mut [u32]) {
        out.iter_mut().for_each(|v| *v = 0);
        let r = &*self.ring;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj != 0 {
                    self.accumulate(out, i, j, r.mul(xi, yj));
                }
            }
        }
    }

    pub fn add(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        x.iter().zip(y).map(|(&a, &b)| self.ring.add(a, b)).collect()
    }

    pub fn neg(&self, x: &[u32]) -> Vec<u32> {
        x.iter().map(|&a| self.ring.neg(a)).collect()
    }

    pub fn scale(&self, r: u32, x: &[u32]) -> Vec<u32> {
        x.iter().map(|&a| self.ring.mul(r, a)).collect()
    }

    /// Quasi-multiplication `x o y = x + y + xy`.
    pub fn circle(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let xy = self.mul(x, y);
        x.iter()
            .zip(y)
            .zip(&xy)
            .map(|((&a, &b), &c)| self.ring.add(self.ring.add(a, b), c))
            .collect()
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim;
        (0..d).all(|i| (0..i).all(|j| self.terms[i * d + j] == self.terms[j * d + i]))
    }

    /// `|R|^dim`, or `None` if it overflows `u64`.
    pub fn element_count(&self) -> Option<u64> {
        (self.ring.size() as u64).checked_pow(self.dim as u32)
    }

    pub fn check_enumerable(&self, limits: &Limits) -> Result<u64> {
        match self.element_count() {
            Some(n) if n <= limits.max_algebra_elements => Ok(n),
            other => Err(Error::bound(
                "algebra elements",
                other.unwrap_or(u64::MAX),
                limits.max_algebra_elements,
            )),
        }
    }

    pub fn encode(&self, x: &[u32]) -> u64 {
        let m = self.ring.size() as u64;
        x.iter().rev().fold(0u64, |acc, &c| acc * m + c as u64)
    }

    pub fn decode(&self, mut code: u64) -> Vec<u32> {
        let m = self.ring.size() as u64;
        (0..self.dim)
            .map(|_| {
                let c = (code % m) as u32;
                code /= m;
                c
            })
            .collect()
    }
}

/// `R` as a one-dimensional algebra over itself.
pub fn ring_as_algebra(ring: Arc<FiniteCommRing>) -> FiniteAlgebra {
    let label = ring.label().to_string();
    FiniteAlgebra::from_terms(ring, 1, vec![vec![(0, 1)]], Some(vec![1]), label).expect("a ring is an algebra")
}

/// The algebra of dimension `dim` with identically zero multiplication.
pub fn zero_algebra(ring: Arc<FiniteCommRing>, dim: usize) -> FiniteAlgebra {
    let label = format!("0^{dim}/{}", ring.label());
    FiniteAlgebra::from_terms(ring, dim, vec![Vec::new(); dim * dim], None, label).expect("zero algebra")
}

fn check_group_for_algebra(g: &FiniteGroup, limits: &Limits) -> Result<()> {
    if g.order() > limits.max_table_order {
        return Err(Error::bound("group order for group algebra", g.order(), limits.max_table_order));
    }
    Ok(())
}

/// `RG`, with basis vector `i` the group element `i` (so `e_0 = 1`).
pub fn group_algebra(ring: Arc<FiniteCommRing>, g: &FiniteGroup, limits: &Limits) -> Result<FiniteAlgebra> {
    check_group_for_algebra(g, limits)?;
    let n = g.order();
    let terms = (0..n * n).map(|ab| vec![(g.mul(ab / n, ab % n) as u32, 1)]).collect();
    let mut one = vec![0; n];
    one[0] = 1;
    let label = format!("{}[{}]", ring.label(), g.label());
    let fast = match (ring.prime_field_order(), prime_power(n as u64)) {
        (Some(p), Some((q, _))) => p == q,
        (Some(_), None) => n == 1,
        _ => false,
    };
    let a = FiniteAlgebra { ring, dim: n, terms, one: Some(one), label, augmented_p_group: fast };
    // group axioms make this associative; the check stays cheap for small groups
    if n <= 64 {
        a.validate()?;
    }
    Ok(a)
}

/// The augmentation ideal with basis `b_g = g - 1` for `g != 1`; basis
/// index `g - 1`. Uses `(g-1)(h-1) = (gh-1) - (g-1) - (h-1)`.
pub fn augmentation_ideal(ring: Arc<FiniteCommRing>, g: &FiniteGroup, limits: &Limits) -> Result<FiniteAlgebra> {
    check_group_for_algebra(g, limits)?;
    let n = g.order();
    let d = n - 1;
    let minus_one = ring.neg(1);
    let mut terms = Vec::with_capacity(d * d);
    for a in 1..n {
        for b in 1..n {
            let mut v = vec![0u32; d];
            let ab = g.mul(a, b);
            if ab != 0 {
                v[ab - 1] = ring.add(v[ab - 1], 1);
            }
            v[a - 1] = ring.add(v[a - 1], minus_one);
            v[b - 1] = ring.add(v[b - 1], minus_one);
            terms.push(v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (k as u32, c)).collect());
        }
    }
    let label = format!("Aug({}[{}])", ring.label(), g.label());
    FiniteAlgebra::from_terms(ring, d, terms, None, label)
}

/// `A^un = A x R` with `(x, r)(y, s) = (sx + ry + xy, rs)`; the `R`
/// coordinate is the last basis vector, which is the identity.
pub fn unitization(a: &FiniteAlgebra) -> FiniteAlgebra {
    let d = a.dim;
    let n = d + 1;
    let mut terms = vec![Vec::new(); n * n];
    for i in 0..d {
        for j in 0..d {
            terms[i * n + j] = a.terms[i * d + j].clone();
        }
        terms[i * n + d] = vec![(i as u32, 1)];
        terms[d * n + i] = vec![(i as u32, 1)];
    }
    terms[d * n + d] = vec![(d as u32, 1)];
    let mut one = vec![0; n];
    one[d] = 1;
    let label = format!("{}^un", a.label);
    FiniteAlgebra::from_terms(a.ring.clone(), n, terms, Some(one), label).expect("unitization of a valid algebra")
}

/// `A x B` with componentwise operations; basis of `A` then basis of `B`.
pub fn algebra_direct_product(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<FiniteAlgebra> {
    if a.ring.spec() != b.ring.spec() {
        return Err(Error::RingMismatch(a.ring.label().into(), b.ring.label().into()));
    }
    let (da, db) = (a.dim, b.dim);
    let n = da + db;
    let mut terms = vec![Vec::new(); n * n];
    for i in 0..da {
        for j in 0..da {
            terms[i * n + j] = a.terms[i * da + j].clone();
        }
    }
    for i in 0..db {
        for j in 0..db {
            terms[(da + i) * n + da + j] =
                b.terms[i * db + j].iter().map(|&(k, c)| (k + da as u32, c)).collect();
        }
    }
    let one = match (&a.one, &b.one) {
        (Some(x), Some(y)) => Some(x.iter().chain(y).copied().collect()),
        _ => None,
    };
    FiniteAlgebra::from_terms(a.ring.clone(), n, terms, one, format!("{} x {}", a.label, b.label))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog::*;
    use crate::ring::prime_field;

    fn f(p: u64) -> Arc<FiniteCommRing> {
        Arc::new(prime_field(p).unwrap())
    }

    #[test]
    fn group_algebra_basics() {
        let l = Limits::default();
        let a = group_algebra(f(2), &cyclic(2).unwrap(), &l).unwrap();
        assert_eq!((a.dim(), a.element_count()), (2, Some(4)));
        let b = group_algebra(f(5), &cyclic(5).unwrap(), &l).unwrap();
        assert_eq!(b.element_count(), Some(3125));
        let c4 = cyclic(4).unwrap();
        let a = group_algebra(f(3), &c4, &l).unwrap();
        for g in 0..4 {
            for h in 0..4 {
                assert_eq!(a.mul(&a.basis(g), &a.basis(h)), a.basis(c4.mul(g, h)));
            }
        }
    }

    #[test]
    fn augmentation_ideal_of_c2_squares_to_zero() {
        let l = Limits::default();
        let d = augmentation_ideal(f(2), &cyclic(2).unwrap(), &l).unwrap();
        assert_eq!(d.dim(), 1);
        assert_eq!(d.mul(&[1], &[1]), vec![0]);
        assert_eq!(augmentation_ideal(f(5), &cyclic(5).unwrap(), &l).unwrap().dim(), 4);
    }

    #[test]
    fn augmentation_ideal_matches_group_algebra() {
        // b_g = g - 1 multiplied inside RG
        let l = Limits::default();
        let g = dihedral(3).unwrap();
        let r = f(3);
        let ga = group_algebra(r.clone(), &g, &l).unwrap();
        let aug = augmentation_ideal(r.clone(), &g, &l).unwrap();
        let lift = |v: &[u32]| {
            let mut out = vec![0u32; 6];
            for (i, &c) in v.iter().enumerate() {
                out[i + 1] = r.add(out[i + 1], c);
                out[0] = r.sub(out[0], c);
            }
            out
        };
        for a in 0..5 {
            for b in 0..5 {
                let prod = aug.mul(&aug.basis(a), &aug.basis(b));
                assert_eq!(lift(&prod), ga.mul(&lift(&aug.basis(a)), &lift(&aug.basis(b))));
            }
        }
    }

    #[test]
    fn unitization_shape() {
        let z = zero_algebra(f(3), 0);
        let u = unitization(&z);
        assert_eq!((u.dim(), u.one()), (1, Some(&[1u32][..])));
        let x2 = zero_algebra(f(2), 1);
        let u = unitization(&x2);
        assert_eq!(u.one(), Some(&[0u32, 1][..]));
        assert_eq!(u.element_count(), Some(4));
    }

    #[test]
    fn rejects_non_associative_constants() {
        // e0 e0 = e1, everything else zero except e1 e0 = e1: (e0 e0) e0 = e1 but e0 (e0 e0) = 0
        let mut c = vec![vec![vec![0u32; 2]; 2]; 2];
        c[0][0][1] = 1;
        c[1][0][1] = 1;
        assert!(matches!(
            FiniteAlgebra::new(f(2), 2, &c, None, "bad"),
            Err(Error::AlgebraAxiomViolation(_))
        ));
    }

    #[test]
    fn encode_round_trip() {
        let a = zero_algebra(f(5), 3);
        for code in [0u64, 1, 7, 124] {
            assert_eq!(a.encode(&a.decode(code)), code);
        }
    }
}
