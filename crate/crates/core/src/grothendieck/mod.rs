//! Classes of finite groups as vectors over their indecomposable factors.

pub mod certificate;

use std::collections::{BTreeMap, HashMap};
use std::ops::Neg;

use num_traits::Num;

use crate::algebra::{unit_group, FiniteAlgebra};
use crate::group::catalog::cyclic;
use crate::group::decompose::indecomposable_factors;
use crate::group::invariants::structure_invariants;
use crate::group::iso::is_isomorphic;
use crate::group::ops::{abelian_invariants, is_abelian};
use crate::group::FiniteGroup;
use crate::{LVector, Limits, Rational, Result};

pub use certificate::{
    certificate_to_witness, cyclic_certificate, is_hereditary, solve_membership, verify_certificate, verify_witness,
    Certificate, CyclicLayer, HereditaryReport, HereditaryWitness, Membership,
};

/// Cheap isomorphism invariant used to bucket representatives.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Fingerprint {
    order: usize,
    order_statistics: Vec<(u32, usize)>,
    center_order: usize,
    abelian_invariants: Option<Vec<u64>>,
}

fn fingerprint(g: &FiniteGroup) -> Fingerprint {
    let inv = structure_invariants(g);
    Fingerprint {
        order: inv.order,
        order_statistics: inv.order_statistics,
        center_order: inv.center_order,
        abelian_invariants: inv.abelian_invariants,
    }
}

/// Interned isomorphism classes of directly indecomposable groups, in
/// insertion order.
#[derive(Debug, Clone)]
pub struct ClassRegistry {
    reps: Vec<FiniteGroup>,
    keys: Vec<String>,
    buckets: HashMap<Fingerprint, Vec<usize>>,
    limits: Limits,
}

impl ClassRegistry {
    pub fn new(limits: &Limits) -> Self {
        ClassRegistry { reps: Vec::new(), keys: Vec::new(), buckets: HashMap::new(), limits: limits.clone() }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn representative(&self, i: usize) -> &FiniteGroup {
        &self.reps[i]
    }

    /// Human-readable class name, e.g. `ab[4]` or an invariant key.
    pub fn key(&self, i: usize) -> &str {
        &self.keys[i]
    }

    /// Index of the class of `g`, which must be directly indecomposable.
    pub fn intern(&mut self, g: &FiniteGroup) -> Result<usize> {
        let fp = fingerprint(g);
        if let Some(bucket) = self.buckets.get(&fp) {
            for &i in bucket {
                if is_isomorphic(&self.reps[i], g, &self.limits)?.is_some() {
                    return Ok(i);
                }
            }
        }
        let i = self.reps.len();
        self.keys.push(structure_invariants(g).key());
        self.reps.push(g.clone());
        self.buckets.entry(fp).or_default().push(i);
        Ok(i)
    }

    pub fn intern_cyclic(&mut self, q: u64) -> Result<usize> {
        self.intern(&cyclic(q as usize)?)
    }
}

/// Sparse vector indexed by registry classes; zero entries are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ClassVector<T> {
    coeffs: BTreeMap<usize, T>,
}

impl<T: Num + Clone + Neg<Output = T>> ClassVector<T> {
    pub fn zero() -> Self {
        ClassVector { coeffs: BTreeMap::new() }
    }

    pub fn unit(i: usize) -> Self {
        let mut v = Self::zero();
        v.add_at(i, T::one());
        v
    }

    pub fn add_at(&mut self, i: usize, c: T) {
        let cur = self.coeffs.remove(&i).unwrap_or_else(T::zero) + c;
        if !cur.is_zero() {
            self.coeffs.insert(i, cur);
        }
    }

    pub fn get(&self, i: usize) -> T {
        self.coeffs.get(&i).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &T)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, c) in other.iter() {
            out.add_at(i, c.clone());
        }
        out
    }

    pub fn scaled(&self, s: &T) -> Self {
        let mut out = Self::zero();
        for (i, c) in self.iter() {
            out.add_at(i, c.clone() * s.clone());
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scaled(&-T::one()))
    }
}

/// Class vector of an arbitrary group via its indecomposable factors.
pub fn class_vector(reg: &mut ClassRegistry, g: &FiniteGroup) -> Result<LVector> {
    let limits = reg.limits.clone();
    let mut v = LVector::zero();
    for f in indecomposable_factors(g, &limits)? {
        v.add_at(reg.intern(&f)?, Rational::from_integer(1.into()));
    }
    Ok(v)
}

/// Class vector of the abelian group with the given prime-power invariants.
pub fn invariants_vector(reg: &mut ClassRegistry, invariants: &[u64]) -> Result<LVector> {
    let mut v = LVector::zero();
    for &q in invariants.iter().filter(|&&q| q > 1) {
        v.add_at(reg.intern_cyclic(q)?, Rational::from_integer(1.into()));
    }
    Ok(v)
}

/// What is known about `A*`: its invariants when abelian (possibly too
/// large to tabulate), otherwise its table.
#[derive(Debug, Clone, PartialEq)]
pub enum UnitsSummary {
    Abelian(Vec<u64>),
    Table(FiniteGroup),
}

impl UnitsSummary {
    pub fn order(&self) -> u64 {
        match self {
            UnitsSummary::Abelian(inv) => inv.iter().product(),
            UnitsSummary::Table(g) => crate::GroupOps::order(g) as u64,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn class_vector(&self, reg: &mut ClassRegistry) -> Result<LVector> {
        match self {
            UnitsSummary::Abelian(inv) => invariants_vector(reg, inv),
            UnitsSummary::Table(g) => class_vector(reg, g),
        }
    }

    pub fn to_table(&self, limits: &Limits) -> Result<FiniteGroup> {
        match self {
            UnitsSummary::Table(g) => Ok(g.clone()),
            UnitsSummary::Abelian(inv) if inv.is_empty() => Ok(crate::group::catalog::trivial()),
            UnitsSummary::Abelian(inv) => {
                let orders: Vec<usize> = inv.iter().map(|&q| q as usize).collect();
                crate::group::catalog::abelian(&orders, limits)
            }
        }
    }
}

pub fn units_summary(alg: &FiniteAlgebra, limits: &Limits) -> Result<UnitsSummary> {
    let u = unit_group(alg, limits)?;
    if is_abelian(&u) {
        Ok(UnitsSummary::Abelian(abelian_invariants(&u)))
    } else {
        Ok(UnitsSummary::Table(u.to_table(limits)?))
    }
}

/// A pool algebra together with its unit group summary.
#[derive(Debug, Clone)]
pub struct AlgebraEntry {
    pub algebra: FiniteAlgebra,
    pub units: UnitsSummary,
}

impl AlgebraEntry {
    pub fn new(algebra: FiniteAlgebra, limits: &Limits) -> Result<AlgebraEntry> {
        let units = units_summary(&algebra, limits)?;
        Ok(AlgebraEntry { algebra, units })
    }

    pub fn label(&self) -> &str {
        self.algebra.label()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog::*;
    use crate::group::direct_product;

    fn int(v: &LVector, i: usize) -> i64 {
        let c = v.get(i);
        assert!(c.is_integer());
        i64::try_from(c.to_integer()).unwrap()
    }

    #[test]
    fn interning() {
        let l = Limits::default();
        let mut reg = ClassRegistry::new(&l);
        let c2 = cyclic(2).unwrap();
        let c2b = group_from_swapped(&c2);
        assert_eq!(reg.intern(&c2).unwrap(), reg.intern(&c2b).unwrap());
        let c4 = reg.intern(&cyclic(4).unwrap()).unwrap();
        assert_ne!(c4, reg.intern(&c2).unwrap());
        let h = reg.intern(&heisenberg(3).unwrap()).unwrap();
        let m = reg.intern(&modular_p3(3).unwrap()).unwrap();
        assert_ne!(h, m);
        assert_eq!(reg.len(), 4);
    }

    fn group_from_swapped(g: &FiniteGroup) -> FiniteGroup {
        crate::group::group_from_table(&g.rows(), "copy").unwrap()
    }

    #[test]
    fn class_vectors() {
        let l = Limits::default();
        let mut reg = ClassRegistry::new(&l);
        let v = class_vector(&mut reg, &cyclic(12).unwrap()).unwrap();
        let c4 = reg.intern_cyclic(4).unwrap();
        let c3 = reg.intern_cyclic(3).unwrap();
        assert_eq!((int(&v, c4), int(&v, c3)), (1, 1));
        assert!(class_vector(&mut reg, &trivial()).unwrap().is_zero());
        let u = invariants_vector(&mut reg, &[4, 5, 5, 5, 5]).unwrap();
        let c5 = reg.intern_cyclic(5).unwrap();
        assert_eq!((int(&u, c4), int(&u, c5)), (1, 4));
    }

    #[test]
    fn class_vector_is_additive() {
        let l = Limits::default();
        let mut reg = ClassRegistry::new(&l);
        let gs = [cyclic(4).unwrap(), dihedral(4).unwrap(), quaternion8(), dihedral(3).unwrap(), abelian(&[2, 2], &l).unwrap()];
        for a in &gs {
            for b in &gs {
                let p = direct_product(a, b, &l).unwrap();
                let lhs = class_vector(&mut reg, &p).unwrap();
                let rhs = class_vector(&mut reg, a).unwrap().plus(&class_vector(&mut reg, b).unwrap());
                assert_eq!(lhs, rhs, "{} x {}", a.label(), b.label());
            }
        }
    }

    #[test]
    fn vector_arithmetic_drops_zeros() {
        let mut v = ClassVector::<i64>::unit(3);
        v.add_at(3, -1);
        assert!(v.is_zero());
        let w = ClassVector::<i64>::unit(1).plus(&ClassVector::unit(2)).minus(&ClassVector::unit(1));
        assert_eq!(w.support().collect::<Vec<_>>(), vec![2]);
    }
}
