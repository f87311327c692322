//! Executable checks relating `A`, its unitization and their groups.

use rayon::prelude::*;

use super::{quasi_regular_group, ring_as_algebra, unit_group, unitization, FiniteAlgebra};
use crate::group::iso::is_isomorphic;
use crate::group::ops::{is_isomorphism_map, ProductOps};
use crate::group::GroupOps;
use crate::{Error, Limits, Result};

/// For every `(x, r)` in `A^un`: `(x, r)` is a unit iff `r` is a unit of
/// `R`. Exhaustive; `A` should be quasi-regular.
pub fn unit_iff_scalar_unit(a: &FiniteAlgebra, limits: &Limits) -> Result<bool> {
    let un = unitization(a);
    let units = unit_group(&un, limits)?;
    let n = un.check_enumerable(limits)?;
    let d = a.dim();
    let ring = a.ring();
    Ok((0..n).into_par_iter().all(|code| {
        let r = un.decode(code)[d];
        units.index_of_code(code).is_some() == ring.is_unit(r)
    }))
}

/// Verifies `(A^un)* = Q(A) x R*` through the explicit map
/// `(q, r) -> (r q, r)`, and additionally by the isomorphism search when
/// the groups are small enough to tabulate.
pub fn unitization_units_split(a: &FiniteAlgebra, limits: &Limits) -> Result<bool> {
    let un = unitization(a);
    let units = unit_group(&un, limits)?;
    let q = quasi_regular_group(a, limits)?;
    let rstar = unit_group(&ring_as_algebra(a.ring_arc().clone()), limits)?;
    let prod = ProductOps { left: &q, right: &rstar };
    if prod.order() != units.order() {
        return Ok(false);
    }
    let m = rstar.order();
    let map = |i: usize| -> usize {
        let x = q.coords(i / m);
        let r = rstar.coords(i % m)[0];
        let mut v = a.scale(r, x);
        v.push(r);
        units.index_of(&v).unwrap_or(usize::MAX)
    };
    if !is_isomorphism_map(&prod, &units, map) {
        return Ok(false);
    }
    if units.order() <= 512 {
        let lhs = units.to_table(limits)?;
        let rhs = crate::group::tabulate(&prod, "Q x R*".into(), limits)?;
        if is_isomorphic(&lhs, &rhs, limits)?.is_none() {
            return Err(Error::Internal("explicit map is an isomorphism but the search disagrees".into()));
        }
    }
    Ok(true)
}

/// For unital `A`, `x -> 1 + x` maps `Q(A)` isomorphically onto `A*`.
pub fn one_plus_is_isomorphism(a: &FiniteAlgebra, limits: &Limits) -> Result<bool> {
    let one = a.one().ok_or_else(|| Error::NotUnital(a.label().to_string()))?.to_vec();
    let q = quasi_regular_group(a, limits)?;
    let u = unit_group(a, limits)?;
    Ok(is_isomorphism_map(&q, &u, |i| u.index_of(&a.add(q.coords(i), &one)).unwrap_or(usize::MAX)))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{augmentation_ideal, group_algebra, zero_algebra};
    use crate::group::catalog::*;
    use crate::ring::prime_field;

    #[test]
    fn identities_on_small_radical_algebras() {
        let l = Limits::default();
        for (p, g) in [(2, cyclic(2).unwrap()), (2, cyclic(4).unwrap()), (3, cyclic(3).unwrap()), (2, quaternion8())] {
            let a = augmentation_ideal(Arc::new(prime_field(p).unwrap()), &g, &l).unwrap();
            assert!(unit_iff_scalar_unit(&a, &l).unwrap(), "{}", a.label());
            assert!(unitization_units_split(&a, &l).unwrap(), "{}", a.label());
        }
        let z = zero_algebra(Arc::new(prime_field(5).unwrap()), 2);
        assert!(unit_iff_scalar_unit(&z, &l).unwrap());
        assert!(unitization_units_split(&z, &l).unwrap());
    }

    #[test]
    fn one_plus_map() {
        let l = Limits::default();
        let a = group_algebra(Arc::new(prime_field(3).unwrap()), &dihedral(3).unwrap(), &l).unwrap();
        assert!(one_plus_is_isomorphism(&a, &l).unwrap());
    }
}
