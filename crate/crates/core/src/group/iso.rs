use fixedbitset::FixedBitSet;

use super::invariants::structure_invariants;
use super::ops::{self, GroupOps};
use super::plan::ExtensionPlan;
use super::FiniteGroup;
use crate::{Error, Limits, Result};

/// A basis of an abelian group: elements `b_i` of orders `q_i` (prime
/// powers, canonical order) with `G = <b_1> x ... x <b_k>`.
///
/// Per prime, repeatedly pick the element of largest order modulo the
/// span so far and correct it by an element of the span so that its order
/// equals its order in the quotient.
pub fn abelian_basis<G: GroupOps + ?Sized>(g: &G) -> Vec<(usize, u64)> {
    let n = g.order();
    let e = g.identity();
    let mut basis = Vec::new();
    for (p, v) in ops::factorize(n as u64) {
        let strip = n as u64 / p.pow(v);
        // p-primary component
        let primary: Vec<usize> = {
            let mut set = FixedBitSet::with_capacity(n);
            for x in 0..n {
                set.insert(g.pow(x, strip));
            }
            set.ones().collect()
        };
        let mut span = FixedBitSet::with_capacity(n);
        span.insert(e);
        let mut span_list = vec![e];
        while span_list.len() < primary.len() {
            // quotient order of y modulo span
            let mut best = (0u64, e);
            for &y in &primary {
                let mut m = 1u64;
                let mut z = y;
                while !span.contains(z) {
                    z = g.pow(z, p);
                    m *= p;
                }
                if m > best.0 {
                    best = (m, y);
                }
            }
            let (m, y) = best;
            let target = g.pow(y, m);
            let root = span_list
                .iter()
                .copied()
                .find(|&s| g.pow(s, m) == target)
                .expect("lift of maximal quotient order exists");
            let z = g.mul(y, g.inv(root));
            let mut next = Vec::with_capacity(span_list.len() * m as usize);
            let mut zi = e;
            for _ in 0..m {
                for &s in &span_list {
                    next.push(g.mul(s, zi));
                }
                zi = g.mul(zi, z);
            }
            for &x in &next {
                span.insert(x);
            }
            span_list = next;
            basis.push((z, m));
        }
    }
    basis
}

/// All elements `prod b_i^{e_i}` in mixed-radix order of the exponents.
fn basis_enumeration<G: GroupOps + ?Sized>(g: &G, basis: &[(usize, u64)]) -> Vec<usize> {
    let mut elems = vec![g.identity()];
    for &(b, q) in basis {
        let mut next = Vec::with_capacity(elems.len() * q as usize);
        let mut power = g.identity();
        for _ in 0..q {
            for &x in &elems {
                next.push(g.mul(x, power));
            }
            power = g.mul(power, b);
        }
        elems = next;
    }
    elems
}

/// Explicit isomorphism between abelian groups with equal invariants.
pub fn abelian_isomorphism<G, H>(g: &G, h: &H) -> Option<Vec<usize>>
where
    G: GroupOps + ?Sized,
    H: GroupOps + ?Sized,
{
    let bg = abelian_basis(g);
    let bh = abelian_basis(h);
    let og: Vec<u64> = bg.iter().map(|b| b.1).collect();
    let oh: Vec<u64> = bh.iter().map(|b| b.1).collect();
    if og != oh {
        return None;
    }
    let eg = basis_enumeration(g, &bg);
    let eh = basis_enumeration(h, &bh);
    let mut map = vec![0usize; g.order()];
    for (x, y) in eg.into_iter().zip(eh) {
        map[x] = y;
    }
    Some(map)
}

/// Per-element data preserved by isomorphisms: order and centralizer size.
fn element_profiles(g: &FiniteGroup) -> Vec<(u32, u32)> {
    let n = g.order();
    (0..n)
        .map(|x| {
            let c = (0..n).filter(|&y| g.mul(x, y) == g.mul(y, x)).count();
            (g.element_order(x) as u32, c as u32)
        })
        .collect()
}

/// Returns an explicit isomorphism `G -> H` (as `map[g] = h`), or `None`.
///
/// Order and structure invariants are compared first; abelian groups are
/// decided by their invariants and matched basis to basis. Otherwise the
/// images of a generating sequence are searched, pruned by element order,
/// centralizer size, injectivity and the Cayley-graph relations.
pub fn is_isomorphic(g: &FiniteGroup, h: &FiniteGroup, limits: &Limits) -> Result<Option<Vec<usize>>> {
    if g.order() != h.order() {
        return Ok(None);
    }
    let ig = structure_invariants(g);
    let ih = structure_invariants(h);
    if ig != ih {
        return Ok(None);
    }
    if ig.is_abelian() {
        let map = abelian_isomorphism(g, h)
            .ok_or_else(|| Error::Internal("abelian groups with equal invariants have different bases".into()))?;
        debug_assert!(ops::is_isomorphism_map(g, h, |x| map[x]));
        return Ok(Some(map));
    }
    let pg = element_profiles(g);
    let ph = element_profiles(h);
    let plan = ExtensionPlan::new(g);
    let candidates: Vec<Vec<usize>> = plan
        .gens
        .iter()
        .map(|&s| (0..h.order()).filter(|&t| ph[t] == pg[s]).collect())
        .collect();
    let mut found = None;
    plan.search(h, &candidates, true, limits.search_budget, |phi| {
        found = Some(phi.to_vec());
        false
    })?;
    if let Some(map) = &found {
        if !ops::is_isomorphism_map(g, h, |x| map[x]) {
            return Err(Error::Internal("isomorphism search produced a non-isomorphism".into()));
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog::*;
    use crate::group::direct_product;

    fn iso(a: &FiniteGroup, b: &FiniteGroup) -> bool {
        is_isomorphic(a, b, &Limits::default()).unwrap().is_some()
    }

    fn reversed(g: &FiniteGroup) -> FiniteGroup {
        let n = g.order();
        let perm: Vec<usize> = (0..n).map(|x| if x == 0 { 0 } else { n - x }).collect();
        g.relabeled(&perm).unwrap()
    }

    #[test]
    fn small_cases() {
        let l = Limits::default();
        assert!(!iso(&cyclic(4).unwrap(), &abelian(&[2, 2], &l).unwrap()));
        assert!(!iso(&dihedral(4).unwrap(), &quaternion8()));
        assert!(iso(&heisenberg(2).unwrap(), &dihedral(4).unwrap()));
        assert!(iso(&modular_p3(2).unwrap(), &dihedral(4).unwrap()));
        assert!(iso(&cyclic(12).unwrap(), &abelian(&[4, 3], &l).unwrap()));
        assert!(!iso(&heisenberg(3).unwrap(), &modular_p3(3).unwrap()));
    }

    #[test]
    fn trivial_product_is_identity() {
        let l = Limits::default();
        for (name, g) in small_catalog(&l) {
            let p = direct_product(&g, &trivial(), &l).unwrap();
            assert!(iso(&p, &g), "{name}");
        }
    }

    #[test]
    fn equivalence_relation_on_catalog() {
        let l = Limits::default();
        let cat = small_catalog(&l);
        for (name, g) in &cat {
            let r = reversed(g);
            let map = is_isomorphic(g, &r, &l).unwrap().expect(name);
            assert!(ops::is_isomorphism_map(g, &r, |x| map[x]));
        }
        let same: Vec<Vec<bool>> = cat
            .iter()
            .map(|(_, a)| cat.iter().map(|(_, b)| iso(a, b)).collect())
            .collect();
        let n = cat.len();
        for i in 0..n {
            assert!(same[i][i]);
            for j in 0..n {
                assert_eq!(same[i][j], same[j][i]);
                for k in 0..n {
                    if same[i][j] && same[j][k] {
                        assert!(same[i][k]);
                    }
                }
            }
        }
    }

    #[test]
    fn abelian_basis_orders_match_invariants() {
        let l = Limits::default();
        let g = abelian(&[2, 4, 3, 9], &l).unwrap();
        let orders: Vec<u64> = abelian_basis(&g).into_iter().map(|b| b.1).collect();
        assert_eq!(orders, vec![4, 2, 9, 3]);
    }

    #[test]
    fn nonabelian_relabelings() {
        for g in [heisenberg(3).unwrap(), modular_p3(3).unwrap(), dihedral(6).unwrap(), quaternion8()] {
            let r = reversed(&g);
            assert!(iso(&g, &r), "{}", g.label());
        }
    }
}
