use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::ops::{closure, GroupOps};
use super::FiniteGroup;
use crate::{Error, Limits, Result};

/// A subgroup of `parent`, stored as a membership bitset.
#[derive(Clone, Debug)]
pub struct Subgroup<'g> {
    pub parent: &'g FiniteGroup,
    pub members: FixedBitSet,
    /// Generators of the subgroup (not necessarily minimal).
    pub gens: Vec<usize>,
}

impl PartialEq for Subgroup<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl<'g> Subgroup<'g> {
    pub fn generated(parent: &'g FiniteGroup, gens: Vec<usize>) -> Self {
        let members = closure(parent, &gens);
        let s = Subgroup { parent, members, gens };
        assert_eq!(parent.order() % s.order(), 0, "Lagrange violated");
        s
    }

    pub fn order(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn elements(&self) -> Vec<usize> {
        self.members.ones().collect()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup<'_>) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_normal(&self) -> bool {
        let g = self.parent;
        let gens = super::ops::generating_sequence(g);
        self.gens.iter().all(|&h| gens.iter().all(|&x| self.contains(g.mul(g.mul(g.inv(x), h), x))))
    }

    /// Closure and Lagrange checks against the parent table.
    pub fn is_valid(&self) -> bool {
        let g = self.parent;
        let els = self.elements();
        self.contains(0)
            && g.order() % els.len() == 0
            && els.iter().all(|&a| self.contains(g.inv(a)) && els.iter().all(|&b| self.contains(g.mul(a, b))))
    }

    /// The subgroup as a standalone table; index `i` is the `i`-th member.
    pub fn to_group(&self) -> FiniteGroup {
        let label = format!("{}<{}>", self.parent.label(), self.order());
        self.parent.induced(&self.elements(), label)
    }

    fn sort_key(&self) -> (usize, Vec<usize>) {
        (self.order(), self.elements())
    }
}

fn check_bound(g: &FiniteGroup, limits: &Limits) -> Result<()> {
    if g.order() > limits.max_subgroup_order {
        return Err(Error::bound("group order for subgroup enumeration", g.order(), limits.max_subgroup_order));
    }
    Ok(())
}

/// All subgroups, each once, sorted by order then member list.
///
/// Seeds with the cyclic subgroups and closes the family under joins with
/// cyclic subgroups; every subgroup is such a join.
pub fn subgroups<'g>(g: &'g FiniteGroup, limits: &Limits) -> Result<Vec<Subgroup<'g>>> {
    check_bound(g, limits)?;
    let mut cyclic: Vec<(usize, FixedBitSet)> = Vec::new();
    let mut seen_cyclic = HashMap::new();
    for x in 0..g.order() {
        let c = closure(g, &[x]);
        if !seen_cyclic.contains_key(&c) {
            seen_cyclic.insert(c.clone(), x);
            cyclic.push((x, c));
        }
    }
    let mut all: HashMap<FixedBitSet, Vec<usize>> = HashMap::new();
    let mut queue = Vec::new();
    for (x, c) in &cyclic {
        let gens = if *x == 0 { vec![] } else { vec![*x] };
        all.insert(c.clone(), gens.clone());
        queue.push((c.clone(), gens));
    }
    while let Some((set, gens)) = queue.pop() {
        for (x, c) in &cyclic {
            if c.is_subset(&set) {
                continue;
            }
            let mut joined = gens.clone();
            joined.push(*x);
            let j = closure(g, &joined);
            if !all.contains_key(&j) {
                all.insert(j.clone(), joined.clone());
                queue.push((j, joined));
            }
        }
    }
    let mut out: Vec<Subgroup<'g>> = all
        .into_iter()
        .map(|(members, gens)| Subgroup { parent: g, members, gens })
        .collect();
    out.sort_by_cached_key(|s| s.sort_key());
    Ok(out)
}

/// Proper subgroups that are maximal under inclusion.
pub fn maximal_subgroups<'g>(g: &'g FiniteGroup, limits: &Limits) -> Result<Vec<Subgroup<'g>>> {
    let all = subgroups(g, limits)?;
    Ok(maximal_among(&all, g.order()))
}

pub(crate) fn maximal_among<'g>(all: &[Subgroup<'g>], order: usize) -> Vec<Subgroup<'g>> {
    let proper: Vec<&Subgroup<'g>> = all.iter().filter(|s| s.order() < order).collect();
    proper
        .iter()
        .filter(|s| !proper.iter().any(|t| t.order() > s.order() && s.is_subgroup_of(t)))
        .map(|s| (*s).clone())
        .collect()
}

/// Normal closure of `gens`: the smallest normal subgroup containing them.
pub fn normal_closure<'g>(g: &'g FiniteGroup, gens: &[usize]) -> Subgroup<'g> {
    let mut conj: Vec<usize> = Vec::new();
    let mut mark = FixedBitSet::with_capacity(g.order());
    for &h in gens {
        for x in 0..g.order() {
            let c = g.mul(g.mul(g.inv(x), h), x);
            if !mark.contains(c) {
                mark.insert(c);
                conj.push(c);
            }
        }
    }
    let members = closure(g, &conj);
    Subgroup { parent: g, members, gens: conj }
}

/// All normal subgroups, sorted like [`subgroups`]. Built from normal
/// closures of single elements, closed under products.
pub fn normal_subgroups<'g>(g: &'g FiniteGroup) -> Vec<Subgroup<'g>> {
    let mut seeds: Vec<Subgroup<'g>> = Vec::new();
    for x in 0..g.order() {
        let n = normal_closure(g, &[x]);
        if !seeds.iter().any(|s| s.members == n.members) {
            seeds.push(n);
        }
    }
    let mut all: HashMap<FixedBitSet, Vec<usize>> = seeds.iter().map(|s| (s.members.clone(), s.gens.clone())).collect();
    let mut queue: Vec<(FixedBitSet, Vec<usize>)> = all.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
    while let Some((set, gens)) = queue.pop() {
        for s in &seeds {
            if s.members.is_subset(&set) {
                continue;
            }
            let mut joined = gens.clone();
            joined.extend_from_slice(&s.gens);
            joined.sort_unstable();
            joined.dedup();
            let j = closure(g, &joined);
            if !all.contains_key(&j) {
                all.insert(j.clone(), joined.clone());
                queue.push((j, joined));
            }
        }
    }
    let mut out: Vec<Subgroup<'g>> = all
        .into_iter()
        .map(|(members, gens)| Subgroup { parent: g, members, gens })
        .collect();
    out.sort_by_cached_key(|s| s.sort_key());
    out
}
