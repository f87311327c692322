//! Counting homomorphisms, epimorphisms and unital algebra homomorphisms.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::FiniteAlgebra;
use crate::group::invariants::{abelianization_invariants, structure_invariants};
use crate::group::iso::is_isomorphic;
use crate::group::ops::{self, abelian_hom_count, closure, GroupOps};
use crate::group::plan::ExtensionPlan;
use crate::group::subgroups::{maximal_subgroups, subgroups, Subgroup};
use crate::group::FiniteGroup;
use crate::{Error, Limits, Result};

pub type Count = BigUint;

/// Target elements whose order divides each generator's order.
fn candidates<T: GroupOps + ?Sized>(plan: &ExtensionPlan, target: &T) -> Vec<Vec<usize>> {
    let e = target.identity();
    let mut by_order: HashMap<usize, Vec<usize>> = HashMap::new();
    for &k in &plan.gen_orders {
        by_order
            .entry(k)
            .or_insert_with(|| (0..target.order()).filter(|&t| target.pow(t, k as u64) == e).collect());
    }
    plan.gen_orders.iter().map(|k| by_order[k].clone()).collect()
}

/// `|Hom(G, T)|` by backtracking over generator images.
pub fn count_homs_backtrack<T: GroupOps + ?Sized>(g: &FiniteGroup, target: &T, limits: &Limits) -> Result<Count> {
    let plan = ExtensionPlan::new(g);
    let cands = candidates(&plan, target);
    let mut count: u64 = 0;
    plan.search(target, &cands, false, limits.search_budget, |_| {
        count += 1;
        true
    })?;
    Ok(Count::from(count))
}

/// `|Hom(G, T)|`. When `T` is abelian every homomorphism factors through
/// `G/G'`, so the count is a product of gcds of invariants.
pub fn count_homs<T: GroupOps + ?Sized>(g: &FiniteGroup, target: &T, limits: &Limits) -> Result<Count> {
    if target.order() == 1 || g.order() == 1 {
        return Ok(Count::one());
    }
    if ops::is_abelian(target) {
        let src = abelianization_invariants(g);
        let tgt = ops::abelian_invariants(target);
        return Ok(abelian_hom_count(&src, &tgt));
    }
    count_homs_backtrack(g, target, limits)
}

/// `|Hom(G, K)|` for a subgroup `K` given by its elements.
fn count_homs_into_subgroup(g: &FiniteGroup, k: &Subgroup<'_>, limits: &Limits) -> Result<Count> {
    if k.order() == 1 {
        return Ok(Count::one());
    }
    count_homs(g, &k.to_group(), limits)
}

/// `|Epi(G, H)| = sum over families K of maximal subgroups of H of
/// (-1)^|K| |Hom(G, meet K)|`, with the empty meet equal to `H`.
///
/// Subsets are walked depth first; hom counts are memoized per distinct
/// intersection. Once the running intersection is trivial, the signed sum
/// over all further extensions vanishes and the branch is cut.
pub fn count_epis_inclusion_exclusion(g: &FiniteGroup, h: &FiniteGroup, limits: &Limits) -> Result<Count> {
    if g.order() < h.order() {
        return Ok(Count::zero());
    }
    if h.order() == 1 {
        return Ok(Count::one());
    }
    let maxes = maximal_subgroups(h, limits)?;
    if maxes.len() > limits.max_maximal_subgroups {
        return Err(Error::bound("maximal subgroups", maxes.len(), limits.max_maximal_subgroups));
    }
    let mut memo: HashMap<FixedBitSet, Count> = HashMap::new();
    let full = closure(h, &(0..h.order()).collect::<Vec<_>>());
    let mut total = BigInt::zero();
    let mut stack: Vec<(usize, FixedBitSet, bool)> = vec![(0, full, false)];
    while let Some((next, meet, odd)) = stack.pop() {
        let size = meet.count_ones(..);
        let remaining = maxes.len() - next;
        if size == 1 && remaining > 0 {
            // (1 - 1)^remaining = 0 over this node and all its extensions
            continue;
        }
        let count = match memo.get(&meet) {
            Some(c) => c.clone(),
            None => {
                let sub = Subgroup { parent: h, gens: meet.ones().collect(), members: meet.clone() };
                let c = count_homs_into_subgroup(g, &sub, limits)?;
                memo.insert(meet.clone(), c.clone());
                c
            }
        };
        let signed = BigInt::from(count);
        if odd {
            total -= signed;
        } else {
            total += signed;
        }
        for i in next..maxes.len() {
            let mut m = meet.clone();
            m.intersect_with(&maxes[i].members);
            stack.push((i + 1, m, !odd));
        }
    }
    total
        .to_biguint()
        .ok_or_else(|| Error::Internal("inclusion-exclusion produced a negative count".into()))
}

/// `|Epi(G, H)|` by enumerating all homomorphisms and checking images.
pub fn count_epis_bruteforce(g: &FiniteGroup, h: &FiniteGroup, limits: &Limits) -> Result<Count> {
    let plan = ExtensionPlan::new(g);
    let cands = candidates(&plan, h);
    let mut count: u64 = 0;
    let gens = plan.gens.clone();
    plan.search(h, &cands, false, limits.search_budget, |phi| {
        let images: Vec<usize> = gens.iter().map(|&s| phi[s]).collect();
        if closure(h, &images).count_ones(..) == h.order() {
            count += 1;
        }
        true
    })?;
    Ok(Count::from(count))
}

/// One representative per isomorphism class of subgroups, ascending order.
pub fn subgroup_class_representatives(g: &FiniteGroup, limits: &Limits) -> Result<Vec<FiniteGroup>> {
    let subs = subgroups(g, limits)?;
    let mut reps: Vec<FiniteGroup> = Vec::new();
    for s in &subs {
        let k = s.to_group();
        let mut seen = false;
        for r in reps.iter().filter(|r| r.order() == k.order()) {
            if is_isomorphic(r, &k, limits)?.is_some() {
                seen = true;
                break;
            }
        }
        if !seen {
            let key = structure_invariants(&k).key();
            reps.push(k.with_label(format!("{}<{}>", g.label(), key)));
        }
    }
    Ok(reps)
}

#[derive(Debug, Clone, PartialEq)]
pub enum LovaszVerdict {
    /// `map[g]` is the image of `g` in `H`.
    Isomorphic(Vec<usize>),
    Distinguished { subgroup: FiniteGroup, count_g: Count, count_h: Count },
    OrderMismatch,
}

/// Compares `|Hom(G, K)|` and `|Hom(H, K)|` over the subgroup classes `K`
/// of `G`. Full agreement means `G = H`, and the explicit isomorphism is
/// then produced by search.
pub fn lovasz_compare(g: &FiniteGroup, h: &FiniteGroup, limits: &Limits) -> Result<LovaszVerdict> {
    if g.order() != h.order() {
        return Ok(LovaszVerdict::OrderMismatch);
    }
    for k in subgroup_class_representatives(g, limits)? {
        let cg = count_homs(g, &k, limits)?;
        let ch = count_homs(h, &k, limits)?;
        if cg != ch {
            return Ok(LovaszVerdict::Distinguished { subgroup: k, count_g: cg, count_h: ch });
        }
    }
    match is_isomorphic(g, h, limits)? {
        Some(map) => Ok(LovaszVerdict::Isomorphic(map)),
        None => Err(Error::Internal(format!(
            "{} and {} agree on all subgroup hom counts but no isomorphism was found",
            g.label(),
            h.label()
        ))),
    }
}

/// `|Hom(G, K)|` for every subgroup class `K` of a reference group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomCountProfile {
    pub source: String,
    pub entries: Vec<(String, Count)>,
}

pub fn hom_count_profile(source: &FiniteGroup, reference: &FiniteGroup, limits: &Limits) -> Result<HomCountProfile> {
    let mut entries = Vec::new();
    for k in subgroup_class_representatives(reference, limits)? {
        entries.push((structure_invariants(&k).key(), count_homs(source, &k, limits)?));
    }
    Ok(HomCountProfile { source: source.label().to_string(), entries })
}

/// Unital algebra homomorphisms `A -> B` by enumerating basis images:
/// the image of `e_i` is chosen in order, and every basis product whose
/// factors and result are already mapped is checked immediately.
pub fn count_algebra_homs_bruteforce(a: &FiniteAlgebra, b: &FiniteAlgebra, limits: &Limits) -> Result<Count> {
    if a.ring().spec() != b.ring().spec() {
        return Err(Error::RingMismatch(a.ring().label().into(), b.ring().label().into()));
    }
    let one_a = a.one().ok_or_else(|| Error::NotUnital(a.label().into()))?.to_vec();
    let one_b = b.one().ok_or_else(|| Error::NotUnital(b.label().into()))?.to_vec();
    let nb = b.element_count().unwrap_or(u64::MAX);
    let maps = nb.checked_pow(a.dim() as u32).unwrap_or(u64::MAX);
    if maps > limits.max_linear_maps {
        return Err(Error::bound("candidate linear maps", maps, limits.max_linear_maps));
    }
    let da = a.dim();
    let consts = a.constants();
    // basis products (i, j) that can be checked once index t is assigned
    let last_needed = |i: usize, j: usize| -> usize {
        let support = consts[i][j].iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, _)| k);
        support.chain([i, j]).max().unwrap_or(0)
    };
    let mut checks_at: Vec<Vec<(usize, usize)>> = vec![Vec::new(); da];
    for i in 0..da {
        for j in 0..da {
            checks_at[last_needed(i, j)].push((i, j));
        }
    }
    let one_support_last = one_a.iter().rposition(|&c| c != 0).unwrap_or(0);
    let images: Vec<Vec<u32>> = (0..nb).map(|c| b.decode(c)).collect();
    let apply = |f: &[usize], v: &[u32]| -> Vec<u32> {
        let mut out = b.zero();
        for (k, &c) in v.iter().enumerate() {
            if c != 0 {
                out = b.add(&out, &b.scale(c, &images[f[k]]));
            }
        }
        out
    };
    let mut f = vec![0usize; da];
    let mut count: u64 = 0;
    fn rec(
        t: usize,
        f: &mut Vec<usize>,
        count: &mut u64,
        env: &dyn Fn(usize, &[usize]) -> bool,
        nb: usize,
    ) {
        if t == f.len() {
            *count += 1;
            return;
        }
        for img in 0..nb {
            f[t] = img;
            if env(t, f) {
                rec(t + 1, f, count, env, nb);
            }
        }
    }
    let env = |t: usize, f: &[usize]| -> bool {
        if t == one_support_last && apply(f, &one_a) != one_b {
            return false;
        }
        checks_at[t].iter().all(|&(i, j)| {
            let lhs = apply(f, &consts[i][j]);
            lhs == b.mul(&images[f[i]], &images[f[j]])
        })
    };
    if da == 0 {
        return Ok(Count::from(u32::from(one_b.iter().all(|&c| c == 0))));
    }
    rec(0, &mut f, &mut count, &env, nb as usize);
    Ok(Count::from(count))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{group_algebra, ring_as_algebra, unit_group, unitization, zero_algebra};
    use crate::group::catalog::*;
    use crate::group::direct_product;
    use crate::ring::prime_field;

    fn n(x: u64) -> Count {
        Count::from(x)
    }

    #[test]
    fn small_hom_counts() {
        let l = Limits::default();
        assert_eq!(count_homs(&cyclic(4).unwrap(), &cyclic(2).unwrap(), &l).unwrap(), n(2));
        assert_eq!(count_homs(&quaternion8(), &trivial(), &l).unwrap(), n(1));
        let k4 = abelian(&[2, 2], &l).unwrap();
        assert_eq!(count_homs(&k4, &cyclic(2).unwrap(), &l).unwrap(), n(4));
        assert_eq!(count_homs_backtrack(&k4, &cyclic(2).unwrap(), &l).unwrap(), n(4));
        // Hom(S3, S3) = 10: 1 trivial, 3 onto each C2, 6 automorphisms
        let s3 = dihedral(3).unwrap();
        assert_eq!(count_homs(&s3, &s3, &l).unwrap(), n(10));
    }

    #[test]
    fn abelian_fast_path_matches_backtracking() {
        let l = Limits::default();
        let groups: Vec<FiniteGroup> = ["cyclic:4", "cyclic:6", "abelian:2,2", "abelian:2,4", "cyclic:8", "abelian:2,2,2", "abelian:4,4", "abelian:2,2,2,2", "cyclic:9", "abelian:3,3"]
            .iter()
            .map(|s| parse_group_ref(s, &l).unwrap())
            .collect();
        for a in &groups {
            for b in &groups {
                assert_eq!(
                    count_homs(a, b, &l).unwrap(),
                    count_homs_backtrack(a, b, &l).unwrap(),
                    "{} -> {}",
                    a.label(),
                    b.label()
                );
            }
        }
        // nonabelian sources into abelian targets go through G/G'
        for g in [dihedral(4).unwrap(), quaternion8(), dihedral(3).unwrap()] {
            for t in &groups[..4] {
                assert_eq!(count_homs(&g, t, &l).unwrap(), count_homs_backtrack(&g, t, &l).unwrap());
            }
        }
    }

    #[test]
    fn epimorphism_examples() {
        let l = Limits::default();
        let k4 = abelian(&[2, 2], &l).unwrap();
        let c2 = cyclic(2).unwrap();
        assert_eq!(count_epis_inclusion_exclusion(&k4, &c2, &l).unwrap(), n(3));
        assert_eq!(count_epis_bruteforce(&k4, &c2, &l).unwrap(), n(3));
        assert_eq!(count_epis_bruteforce(&cyclic(6).unwrap(), &cyclic(3).unwrap(), &l).unwrap(), n(2));
        assert_eq!(count_epis_inclusion_exclusion(&c2, &cyclic(4).unwrap(), &l).unwrap(), n(0));
        assert_eq!(count_epis_bruteforce(&trivial(), &trivial(), &l).unwrap(), n(1));
        assert_eq!(count_epis_inclusion_exclusion(&trivial(), &trivial(), &l).unwrap(), n(1));
        let q8 = quaternion8();
        assert_eq!(count_epis_inclusion_exclusion(&q8, &q8, &l).unwrap(), n(24));
    }

    #[test]
    fn multiplicativity() {
        let l = Limits::default();
        let gs = [cyclic(4).unwrap(), dihedral(4).unwrap(), abelian(&[2, 2], &l).unwrap(), dihedral(3).unwrap()];
        for g in &gs {
            for t1 in &gs {
                for t2 in [cyclic(2).unwrap(), cyclic(3).unwrap()] {
                    let p = direct_product(t1, &t2, &l).unwrap();
                    let lhs = count_homs(g, &p, &l).unwrap();
                    let rhs = count_homs(g, t1, &l).unwrap() * count_homs(g, &t2, &l).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn lovasz_examples() {
        let l = Limits::default();
        let c4 = cyclic(4).unwrap();
        let k4 = abelian(&[2, 2], &l).unwrap();
        match lovasz_compare(&c4, &k4, &l).unwrap() {
            LovaszVerdict::Distinguished { subgroup, count_g, count_h } => {
                // the first class where the counts differ is C2
                assert_eq!(subgroup.order(), 2);
                assert_eq!((count_g, count_h), (n(2), n(4)));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(lovasz_compare(&c4, &c4, &l).unwrap(), LovaszVerdict::Isomorphic(_)));
        match lovasz_compare(&dihedral(4).unwrap(), &quaternion8(), &l).unwrap() {
            LovaszVerdict::Distinguished { subgroup, .. } => assert!(subgroup.order() <= 8),
            other => panic!("{other:?}"),
        }
        assert_eq!(lovasz_compare(&c4, &cyclic(5).unwrap(), &l).unwrap(), LovaszVerdict::OrderMismatch);
    }

    #[test]
    fn algebra_hom_examples() {
        let l = Limits::default();
        let f2 = Arc::new(prime_field(2).unwrap());
        let f2c2 = group_algebra(f2.clone(), &cyclic(2).unwrap(), &l).unwrap();
        let f2alg = ring_as_algebra(f2.clone());
        assert_eq!(count_algebra_homs_bruteforce(&f2c2, &f2c2, &l).unwrap(), n(2));
        assert_eq!(count_algebra_homs_bruteforce(&f2c2, &f2alg, &l).unwrap(), n(1));
        let triv = group_algebra(f2.clone(), &trivial(), &l).unwrap();
        assert_eq!(count_algebra_homs_bruteforce(&triv, &triv, &l).unwrap(), n(1));
        let f3 = ring_as_algebra(Arc::new(prime_field(3).unwrap()));
        assert!(matches!(count_algebra_homs_bruteforce(&f2alg, &f3, &l), Err(Error::RingMismatch(..))));
    }

    #[test]
    fn adjunction_small() {
        let l = Limits::default();
        let f2 = Arc::new(prime_field(2).unwrap());
        let targets = [
            ring_as_algebra(f2.clone()),
            group_algebra(f2.clone(), &cyclic(2).unwrap(), &l).unwrap(),
            unitization(&zero_algebra(f2.clone(), 1)),
        ];
        for g in [cyclic(2).unwrap(), cyclic(4).unwrap(), abelian(&[2, 2], &l).unwrap()] {
            let rg = group_algebra(f2.clone(), &g, &l).unwrap();
            for a in &targets {
                let lhs = count_algebra_homs_bruteforce(&rg, a, &l).unwrap();
                let rhs = count_homs(&g, &unit_group(a, &l).unwrap(), &l).unwrap();
                assert_eq!(lhs, rhs, "{} -> {}", g.label(), a.label());
            }
        }
    }

    #[test]
    fn relabeling_invariance() {
        let l = Limits::default();
        let g = dihedral(4).unwrap();
        let perm: Vec<usize> = (0..8).map(|x| if x == 0 { 0 } else { 8 - x }).collect();
        let r = g.relabeled(&perm).unwrap();
        for t in [cyclic(4).unwrap(), quaternion8(), dihedral(4).unwrap()] {
            assert_eq!(count_homs(&g, &t, &l).unwrap(), count_homs(&r, &t, &l).unwrap());
            assert_eq!(count_homs(&t, &g, &l).unwrap(), count_homs(&t, &r, &l).unwrap());
        }
    }
}
