//! Krull–Schmidt decomposition into directly indecomposable factors.

use super::catalog::cyclic;
use super::invariants::nilpotency_class;
use super::iso::is_isomorphic;
use super::ops::{self, GroupOps};
use super::subgroups::{normal_subgroups, Subgroup};
use super::{direct_product_all, FiniteGroup};
use crate::{Error, Limits, Result};

/// Directly indecomposable groups whose product is isomorphic to `g`.
///
/// Abelian groups split into their prime-power cyclic factors. Otherwise
/// the smallest normal `N1` with a normal complement `N2` (trivial
/// intersection, full order, elementwise commuting) is split off and both
/// sides are decomposed again. The reassembled product is checked against
/// `g` before returning.
pub fn indecomposable_factors(g: &FiniteGroup, limits: &Limits) -> Result<Vec<FiniteGroup>> {
    let factors = split(g, limits)?;
    let rebuilt = direct_product_all(&factors, limits)?;
    if is_isomorphic(&rebuilt, g, limits)?.is_none() {
        return Err(Error::Internal(format!("factors of {} do not reassemble", g.label())));
    }
    Ok(factors)
}

fn split(g: &FiniteGroup, limits: &Limits) -> Result<Vec<FiniteGroup>> {
    if g.is_trivial() {
        return Ok(Vec::new());
    }
    if g.is_abelian() {
        return ops::abelian_invariants(g)
            .into_iter()
            .map(|q| cyclic(q as usize))
            .collect();
    }
    // a nilpotent group is the product of its Sylow subgroups
    let primes = ops::factorize(g.order() as u64);
    if primes.len() > 1 && nilpotency_class(g).is_some() {
        let orders = g.element_orders();
        let mut out = Vec::new();
        for (p, _) in primes {
            let members: Vec<usize> =
                (0..g.order()).filter(|&x| orders[x] == 1 || ops::prime_power(orders[x] as u64).is_some_and(|(q, _)| q == p)).collect();
            out.extend(split(&g.induced(&members, format!("{}_{p}", g.label())), limits)?);
        }
        return Ok(out);
    }
    if g.order() > limits.max_subgroup_order {
        return Err(Error::bound("group order for decomposition", g.order(), limits.max_subgroup_order));
    }
    let normals = normal_subgroups(g);
    let n = g.order();
    let proper: Vec<&Subgroup<'_>> = normals.iter().filter(|s| s.order() > 1 && s.order() < n).collect();
    for a in &proper {
        let want = n / a.order();
        if a.order() * want != n {
            continue;
        }
        for b in proper.iter().filter(|b| b.order() == want) {
            if a.members.intersection(&b.members).count() != 1 {
                continue;
            }
            let commute = a.gens.iter().all(|&x| b.gens.iter().all(|&y| g.mul(x, y) == g.mul(y, x)));
            if commute {
                let mut out = split(&a.to_group(), limits)?;
                out.extend(split(&b.to_group(), limits)?);
                return Ok(out);
            }
        }
    }
    Ok(vec![g.clone()])
}
