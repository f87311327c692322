//! Unit groups `A*` and quasi-regular groups `Q(A)` as implicit groups on
//! enumerated algebra elements.

use rayon::prelude::*;

use super::FiniteAlgebra;
use crate::group::{tabulate, FiniteGroup, GroupOps};
use crate::linalg::{self, Solution};
use crate::{Error, Limits, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    /// Invertible elements under multiplication.
    Units,
    /// Quasi-regular elements under `x o y = x + y + xy`.
    Circle,
}

/// A group of algebra elements, indexed by ascending element code.
/// Multiplication is computed on the fly; only inverses are stored.
#[derive(Clone)]
pub struct AlgebraGroup {
    alg: FiniteAlgebra,
    kind: GroupKind,
    codes: Vec<u64>,
    coords: Vec<u32>,
    index: Vec<u32>,
    inverses: Vec<u32>,
    identity: usize,
}

impl std::fmt::Debug for AlgebraGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AlgebraGroup({:?} of {}, order {})", self.kind, self.alg.label(), self.codes.len())
    }
}

impl AlgebraGroup {
    fn build(alg: &FiniteAlgebra, kind: GroupKind, pairs: Vec<(u64, u64)>) -> Result<AlgebraGroup> {
        let total = alg.element_count().expect("enumerated algebra") as usize;
        let d = alg.dim();
        let mut index = vec![u32::MAX; total];
        for (i, &(c, _)) in pairs.iter().enumerate() {
            index[c as usize] = i as u32;
        }
        let mut inverses = Vec::with_capacity(pairs.len());
        for &(c, inv) in &pairs {
            let j = index[inv as usize];
            if j == u32::MAX {
                return Err(Error::Internal(format!("inverse of element {c} is outside the group")));
            }
            inverses.push(j);
        }
        let identity_code = match kind {
            GroupKind::Units => alg.encode(alg.one().expect("unital")),
            GroupKind::Circle => 0,
        };
        let identity = index[identity_code as usize] as usize;
        let codes: Vec<u64> = pairs.iter().map(|p| p.0).collect();
        let mut coords = Vec::with_capacity(codes.len() * d);
        for &c in &codes {
            coords.extend(alg.decode(c));
        }
        Ok(AlgebraGroup { alg: alg.clone(), kind, codes, coords, index, inverses, identity })
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.alg
    }
    pub fn kind(&self) -> GroupKind {
        self.kind
    }
    pub fn label(&self) -> String {
        match self.kind {
            GroupKind::Units => format!("({})*", self.alg.label()),
            GroupKind::Circle => format!("Q({})", self.alg.label()),
        }
    }
    pub fn codes(&self) -> &[u64] {
        &self.codes
    }
    pub fn coords(&self, i: usize) -> &[u32] {
        let d = self.alg.dim();
        &self.coords[i * d..(i + 1) * d]
    }
    pub fn index_of_code(&self, code: u64) -> Option<usize> {
        match self.index.get(code as usize) {
            Some(&i) if i != u32::MAX => Some(i as usize),
            _ => None,
        }
    }
    /// Membership test for an arbitrary algebra element.
    pub fn index_of(&self, x: &[u32]) -> Option<usize> {
        self.index_of_code(self.alg.encode(x))
    }
    pub fn contains(&self, x: &[u32]) -> bool {
        self.index_of(x).is_some()
    }

    pub fn to_table(&self, limits: &Limits) -> Result<FiniteGroup> {
        tabulate(self, self.label(), limits)
    }
}

impl GroupOps for AlgebraGroup {
    fn order(&self) -> usize {
        self.codes.len()
    }
    fn identity(&self) -> usize {
        self.identity
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.coords(a), self.coords(b));
        let z = match self.kind {
            GroupKind::Units => self.alg.mul(x, y),
            GroupKind::Circle => self.alg.circle(x, y),
        };
        self.index_of(&z).expect("group is closed")
    }
    fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }
    fn known_abelian(&self) -> Option<bool> {
        self.alg.is_commutative().then_some(true)
    }
}

/// Matrix of `y -> x y` in the basis: entry `[k][j]` is coordinate `k`
/// of `x e_j`.
fn left_mul_matrix(alg: &FiniteAlgebra, x: &[u32]) -> Vec<Vec<u32>> {
    let d = alg.dim();
    let r = alg.ring();
    let mut m = vec![vec![0u32; d]; d];
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0 {
            continue;
        }
        for j in 0..d {
            for &(k, c) in &alg.terms[i * d + j] {
                let k = k as usize;
                m[k][j] = r.add(m[k][j], r.mul(xi, c));
            }
        }
    }
    m
}

/// Unique solution of `M y = b` over the (field) coefficient ring.
fn solve_unique(alg: &FiniteAlgebra, m: &[Vec<u32>], b: &[u32]) -> Option<Vec<u32>> {
    match linalg::solve(alg.ring(), m, b) {
        Solution::Solved { x, unique: true } => Some(x),
        _ => None,
    }
}

fn brute_force_bound(n: u64, limits: &Limits) -> Result<()> {
    let pairs = n.saturating_mul(n);
    if pairs > limits.algebra_search_budget {
        return Err(Error::bound("element pairs scanned over a non-field ring", pairs, limits.algebra_search_budget));
    }
    Ok(())
}

/// `(code, inverse code)` for every unit.
fn unit_pairs(alg: &FiniteAlgebra, limits: &Limits) -> Result<Vec<(u64, u64)>> {
    let one = alg.one().ok_or_else(|| Error::NotUnital(alg.label().to_string()))?.to_vec();
    let n = alg.check_enumerable(limits)?;
    let ring = alg.ring();
    if ring.is_field() {
        let fast = alg.has_augmentation_fast_path();
        let out: Vec<Option<(u64, u64)>> = (0..n)
            .into_par_iter()
            .map(|code| {
                let x = alg.decode(code);
                if fast && x.iter().fold(0, |acc, &c| ring.add(acc, c)) == 0 {
                    return None;
                }
                let y = solve_unique(alg, &left_mul_matrix(alg, &x), &one)?;
                Some((code, alg.encode(&y)))
            })
            .collect();
        let pairs: Vec<(u64, u64)> = out.into_iter().flatten().collect();
        for &(c, inv) in &pairs {
            if alg.mul(&alg.decode(inv), &alg.decode(c)) != one {
                return Err(Error::Internal(format!("right inverse of {c} is not a left inverse")));
            }
        }
        return Ok(pairs);
    }
    brute_force_bound(n, limits)?;
    let out: Vec<Option<(u64, u64)>> = (0..n)
        .into_par_iter()
        .map(|code| {
            let x = alg.decode(code);
            (0..n).find_map(|other| {
                let y = alg.decode(other);
                (alg.mul(&x, &y) == one && alg.mul(&y, &x) == one).then_some((code, other))
            })
        })
        .collect();
    Ok(out.into_iter().flatten().collect())
}

/// Geometric series `sum_{k>=1} (-1)^k x^k` when `x` is nilpotent.
pub fn series_quasi_inverse(alg: &FiniteAlgebra, x: &[u32]) -> Option<Vec<u32>> {
    let mut power = x.to_vec();
    let mut acc = alg.zero();
    let mut negative = true;
    for _ in 0..=alg.dim() + 1 {
        if power.iter().all(|&c| c == 0) {
            return Some(acc);
        }
        let term = if negative { alg.neg(&power) } else { power.clone() };
        acc = alg.add(&acc, &term);
        negative = !negative;
        power = alg.mul(&power, x);
    }
    None
}

/// `(code, quasi-inverse code)` for every quasi-regular element.
///
/// Over a field, `x o y = 0` is the linear system `(I + L_x) y = -x`; the
/// solution is cross-checked against the geometric series for nilpotent
/// elements. Over other rings all candidates are scanned.
fn circle_pairs(alg: &FiniteAlgebra, limits: &Limits) -> Result<Vec<(u64, u64)>> {
    let n = alg.check_enumerable(limits)?;
    let d = alg.dim();
    let zero = alg.zero();
    if alg.ring().is_field() {
        let out: Vec<Result<Option<(u64, u64)>>> = (0..n)
            .into_par_iter()
            .map(|code| {
                let x = alg.decode(code);
                let mut m = left_mul_matrix(alg, &x);
                for (i, row) in m.iter_mut().enumerate().take(d) {
                    row[i] = alg.ring().add(row[i], 1);
                }
                let Some(y) = solve_unique(alg, &m, &alg.neg(&x)) else { return Ok(None) };
                if alg.circle(&y, &x) != zero {
                    return Err(Error::Internal(format!("quasi-inverse of {code} is one-sided")));
                }
                if let Some(s) = series_quasi_inverse(alg, &x) {
                    if s != y {
                        return Err(Error::Internal(format!("series quasi-inverse of {code} disagrees")));
                    }
                }
                Ok(Some((code, alg.encode(&y))))
            })
            .collect();
        let mut pairs = Vec::new();
        for r in out {
            if let Some(p) = r? {
                pairs.push(p);
            }
        }
        return Ok(pairs);
    }
    brute_force_bound(n, limits)?;
    let out: Vec<Option<(u64, u64)>> = (0..n)
        .into_par_iter()
        .map(|code| {
            let x = alg.decode(code);
            (0..n).find_map(|other| {
                let y = alg.decode(other);
                (alg.circle(&x, &y) == zero && alg.circle(&y, &x) == zero).then_some((code, other))
            })
        })
        .collect();
    Ok(out.into_iter().flatten().collect())
}

/// `A*` as an implicit group.
pub fn unit_group(alg: &FiniteAlgebra, limits: &Limits) -> Result<AlgebraGroup> {
    let pairs = unit_pairs(alg, limits)?;
    AlgebraGroup::build(alg, GroupKind::Units, pairs)
}

/// `A*` as a Cayley table (identity moved to index 0).
pub fn unit_group_table(alg: &FiniteAlgebra, limits: &Limits) -> Result<FiniteGroup> {
    unit_group(alg, limits)?.to_table(limits)
}

/// `Q(A)`, with the zero element as identity.
pub fn quasi_regular_group(alg: &FiniteAlgebra, limits: &Limits) -> Result<AlgebraGroup> {
    let pairs = circle_pairs(alg, limits)?;
    AlgebraGroup::build(alg, GroupKind::Circle, pairs)
}

pub fn is_quasi_regular(alg: &FiniteAlgebra, limits: &Limits) -> Result<bool> {
    let n = alg.check_enumerable(limits)?;
    Ok(quasi_regular_group(alg, limits)?.order() as u64 == n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitMode {
    Table,
    Implicit,
}

/// Either a tabulated group or an implicit algebra group.
#[derive(Debug, Clone)]
pub enum GroupHandle {
    Table(FiniteGroup),
    Implicit(AlgebraGroup),
}

impl GroupOps for GroupHandle {
    fn order(&self) -> usize {
        match self {
            GroupHandle::Table(g) => g.order(),
            GroupHandle::Implicit(g) => g.order(),
        }
    }
    fn identity(&self) -> usize {
        match self {
            GroupHandle::Table(g) => g.identity(),
            GroupHandle::Implicit(g) => g.identity(),
        }
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        match self {
            GroupHandle::Table(g) => g.mul(a, b),
            GroupHandle::Implicit(g) => g.mul(a, b),
        }
    }
    fn inv(&self, a: usize) -> usize {
        match self {
            GroupHandle::Table(g) => g.inv(a),
            GroupHandle::Implicit(g) => g.inv(a),
        }
    }
    fn element_order(&self, a: usize) -> usize {
        match self {
            GroupHandle::Table(g) => g.element_order(a),
            GroupHandle::Implicit(g) => g.element_order(a),
        }
    }
    fn known_abelian(&self) -> Option<bool> {
        match self {
            GroupHandle::Table(_) => None,
            GroupHandle::Implicit(g) => g.known_abelian(),
        }
    }
}

pub fn unit_group_with(alg: &FiniteAlgebra, mode: UnitMode, limits: &Limits) -> Result<GroupHandle> {
    let g = unit_group(alg, limits)?;
    match mode {
        UnitMode::Implicit => Ok(GroupHandle::Implicit(g)),
        UnitMode::Table => Ok(GroupHandle::Table(g.to_table(limits)?)),
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::*;
    use crate::group::catalog::*;
    use crate::group::ops::{abelian_invariants, is_isomorphism_map};
    use crate::group::invariants::structure_invariants;
    use crate::ring::{prime_field, ring_make, RingSpec};

    fn f(p: u64) -> Arc<crate::ring::FiniteCommRing> {
        Arc::new(prime_field(p).unwrap())
    }

    #[test]
    fn units_of_f5_and_f5c5() {
        let l = Limits::default();
        let u = unit_group(&ring_as_algebra(f(5)), &l).unwrap();
        assert_eq!(abelian_invariants(&u), vec![4]);
        let a = group_algebra(f(5), &cyclic(5).unwrap(), &l).unwrap();
        let u = unit_group(&a, &l).unwrap();
        assert_eq!(u.order(), 2500);
        assert_eq!(abelian_invariants(&u), vec![4, 5, 5, 5, 5]);
    }

    #[test]
    fn units_of_f2c4() {
        let l = Limits::default();
        let a = group_algebra(f(2), &cyclic(4).unwrap(), &l).unwrap();
        let t = unit_group_table(&a, &l).unwrap();
        let inv = structure_invariants(&t);
        assert_eq!((inv.order, inv.exponent), (8, 4));
    }

    #[test]
    fn fast_path_agrees_with_generic_path() {
        let l = Limits::default();
        for (p, g) in [(2, cyclic(4).unwrap()), (2, dihedral(4).unwrap()), (3, cyclic(3).unwrap()), (2, abelian(&[2, 2], &l).unwrap())] {
            let a = group_algebra(f(p), &g, &l).unwrap();
            assert!(a.has_augmentation_fast_path());
            let mut slow = a.clone();
            slow.augmented_p_group = false;
            assert_eq!(unit_group(&a, &l).unwrap().codes(), unit_group(&slow, &l).unwrap().codes());
        }
    }

    #[test]
    fn unitization_of_square_zero() {
        let l = Limits::default();
        let u = unitization(&zero_algebra(f(2), 1));
        assert_eq!(unit_group(&u, &l).unwrap().order(), 2);
        let u3 = unitization(&zero_algebra(f(3), 0));
        assert_eq!(unit_group(&u3, &l).unwrap().order(), 2);
    }

    #[test]
    fn quasi_regular_examples() {
        let l = Limits::default();
        let z = zero_algebra(f(3), 1);
        let q = quasi_regular_group(&z, &l).unwrap();
        assert_eq!(abelian_invariants(&q), vec![3]);
        let aug = augmentation_ideal(f(2), &cyclic(2).unwrap(), &l).unwrap();
        assert_eq!(quasi_regular_group(&aug, &l).unwrap().order(), 2);
        assert!(is_quasi_regular(&augmentation_ideal(f(3), &cyclic(3).unwrap(), &l).unwrap(), &l).unwrap());
        assert!(is_quasi_regular(&augmentation_ideal(f(2), &dihedral(4).unwrap(), &l).unwrap(), &l).unwrap());
        assert!(!is_quasi_regular(&ring_as_algebra(f(2)), &l).unwrap());
        assert!(is_quasi_regular(&zero_algebra(f(5), 0), &l).unwrap());
    }

    #[test]
    fn non_field_rings_use_the_scan() {
        let l = Limits::default();
        let z4 = Arc::new(ring_make(&RingSpec::Zn { n: 4 }).unwrap());
        let u = unit_group(&ring_as_algebra(z4.clone()), &l).unwrap();
        assert_eq!(u.order(), 2);
        let a = group_algebra(z4, &cyclic(2).unwrap(), &l).unwrap();
        // Z4[C2]: units are elements with odd augmentation, 8 of 16
        assert_eq!(unit_group(&a, &l).unwrap().order(), 8);
    }

    #[test]
    fn one_plus_is_an_isomorphism() {
        let l = Limits::default();
        for a in [
            group_algebra(f(2), &cyclic(4).unwrap(), &l).unwrap(),
            group_algebra(f(3), &cyclic(3).unwrap(), &l).unwrap(),
            unitization(&zero_algebra(f(2), 1)),
        ] {
            let q = quasi_regular_group(&a, &l).unwrap();
            let u = unit_group(&a, &l).unwrap();
            let one = a.one().unwrap().to_vec();
            let map = |i: usize| u.index_of(&a.add(q.coords(i), &one)).unwrap();
            assert!(is_isomorphism_map(&q, &u, map), "{}", a.label());
        }
    }

    #[test]
    fn not_unital_and_bounds() {
        let l = Limits::default();
        let z = zero_algebra(f(2), 2);
        assert!(matches!(unit_group(&z, &l), Err(Error::NotUnital(_))));
        let small = Limits { max_algebra_elements: 100, ..Limits::default() };
        let a = group_algebra(f(5), &cyclic(5).unwrap(), &small).unwrap();
        assert!(matches!(unit_group(&a, &small), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn group_embeds_in_units() {
        let l = Limits::default();
        for g in [cyclic(4).unwrap(), quaternion8(), abelian(&[2, 2], &l).unwrap()] {
            let a = group_algebra(f(2), &g, &l).unwrap();
            let u = unit_group(&a, &l).unwrap();
            assert_eq!(u.order() % g.order(), 0);
            let emb: Vec<usize> = (0..g.order()).map(|x| u.index_of(&a.basis(x)).unwrap()).collect();
            for x in 0..g.order() {
                for y in 0..g.order() {
                    assert_eq!(emb[g.mul(x, y)], u.mul(emb[x], emb[y]));
                }
            }
        }
    }
}
