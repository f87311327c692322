use fixedbitset::FixedBitSet;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::ops::{self, closure, GroupOps};
use super::FiniteGroup;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupInvariants {
    pub order: usize,
    pub exponent: u64,
    /// `None` when the group is not nilpotent.
    pub nilpotency_class: Option<usize>,
    pub center_order: usize,
    pub derived_subgroup_order: usize,
    /// Present only for abelian groups.
    pub abelian_invariants: Option<Vec<u64>>,
    /// `(element order, count)` pairs, ascending.
    pub order_statistics: Vec<(u32, usize)>,
}

impl GroupInvariants {
    pub fn is_abelian(&self) -> bool {
        self.abelian_invariants.is_some()
    }

    /// Compact text key used to name isomorphism classes in reports.
    pub fn key(&self) -> String {
        if let Some(inv) = &self.abelian_invariants {
            let parts: Vec<String> = inv.iter().map(|q| q.to_string()).collect();
            return format!("ab[{}]", parts.join(","));
        }
        let stats: Vec<String> = self.order_statistics.iter().map(|(o, c)| format!("{o}^{c}")).collect();
        format!(
            "n{}.e{}.c{}.z{}.d{}[{}]",
            self.order,
            self.exponent,
            self.nilpotency_class.map_or("-".to_string(), |c| c.to_string()),
            self.center_order,
            self.derived_subgroup_order,
            stats.join(",")
        )
    }
}

pub fn center(g: &FiniteGroup) -> FixedBitSet {
    let gens = ops::generating_sequence(g);
    let mut z = FixedBitSet::with_capacity(g.order());
    for x in 0..g.order() {
        if gens.iter().all(|&s| g.mul(x, s) == g.mul(s, x)) {
            z.insert(x);
        }
    }
    z
}

fn commutator(g: &FiniteGroup, a: usize, b: usize) -> usize {
    g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b))
}

/// `[A, G]` for a normal subgroup `A` given by its elements.
fn commutator_with_all(g: &FiniteGroup, a: &[usize]) -> FixedBitSet {
    let mut comms = FixedBitSet::with_capacity(g.order());
    for &x in a {
        for y in 0..g.order() {
            comms.insert(commutator(g, x, y));
        }
    }
    // [A, G] is normal when A is; closing the commutator set suffices
    let seeds: Vec<usize> = comms.ones().collect();
    closure(g, &seeds)
}

pub fn derived_subgroup(g: &FiniteGroup) -> FixedBitSet {
    let all: Vec<usize> = (0..g.order()).collect();
    commutator_with_all(g, &all)
}

/// Length of the lower central series, or `None` if it stalls above 1.
pub fn nilpotency_class(g: &FiniteGroup) -> Option<usize> {
    let mut current: Vec<usize> = (0..g.order()).collect();
    let mut class = 0;
    while current.len() > 1 {
        let next = commutator_with_all(g, &current);
        let next: Vec<usize> = next.ones().collect();
        if next.len() == current.len() {
            return None;
        }
        current = next;
        class += 1;
    }
    Some(class)
}

/// Prime-power invariants of `G / G'`, counted without building the quotient:
/// `#{cosets xG' : x^(p^k) in G'} = #{x : x^(p^k) in G'} / |G'|`.
pub fn abelianization_invariants(g: &FiniteGroup) -> Vec<u64> {
    if g.is_abelian() {
        return ops::abelian_invariants(g);
    }
    let d = derived_subgroup(g);
    let dn = d.count_ones(..) as u64;
    let quotient = g.order() as u64 / dn;
    let mut out = Vec::new();
    for (p, v) in ops::factorize(quotient) {
        let full = p.pow(v);
        let mut cur: Vec<usize> = (0..g.order()).collect();
        let mut ranks = Vec::new();
        let mut prev = 1u64;
        loop {
            for x in cur.iter_mut() {
                *x = g.pow(*x, p);
            }
            let c = cur.iter().filter(|&&x| d.contains(x)).count() as u64 / dn;
            let mut r = 0;
            let mut t = 1;
            while t < c / prev {
                t *= p;
                r += 1;
            }
            ranks.push(r);
            prev = c;
            if c == full {
                break;
            }
        }
        ranks.push(0);
        for k in (1..ranks.len()).rev() {
            for _ in 0..ranks[k - 1] - ranks[k] {
                out.push(p.pow(k as u32));
            }
        }
    }
    out
}

pub fn structure_invariants(g: &FiniteGroup) -> GroupInvariants {
    let orders = g.element_orders();
    let exponent = orders.iter().fold(1u64, |acc, &o| acc.lcm(&(o as u64)));
    let mut stats: Vec<(u32, usize)> = Vec::new();
    let mut sorted = orders.to_vec();
    sorted.sort_unstable();
    for o in sorted {
        match stats.last_mut() {
            Some((last, c)) if *last == o => *c += 1,
            _ => stats.push((o, 1)),
        }
    }
    let abelian = g.is_abelian();
    let (center_order, derived_order, class) = if abelian {
        (g.order(), 1, Some(if g.order() == 1 { 0 } else { 1 }))
    } else {
        (
            center(g).count_ones(..),
            derived_subgroup(g).count_ones(..),
            nilpotency_class(g),
        )
    };
    GroupInvariants {
        order: g.order(),
        exponent,
        nilpotency_class: class,
        center_order,
        derived_subgroup_order: derived_order,
        abelian_invariants: abelian.then(|| ops::abelian_invariants(g)),
        order_statistics: stats,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog::*;
    use crate::Limits;

    #[test]
    fn heisenberg_three() {
        let inv = structure_invariants(&heisenberg(3).unwrap());
        assert_eq!(inv.order, 27);
        assert_eq!(inv.exponent, 3);
        assert_eq!(inv.nilpotency_class, Some(2));
        assert_eq!(inv.center_order, 3);
        assert_eq!(inv.derived_subgroup_order, 3);
        assert_eq!(inv.abelian_invariants, None);
    }

    #[test]
    fn quaternion_and_dihedral() {
        let q = structure_invariants(&quaternion8());
        assert_eq!((q.order, q.exponent, q.nilpotency_class), (8, 4, Some(2)));
        let d = structure_invariants(&dihedral(4).unwrap());
        assert_eq!((d.exponent, d.nilpotency_class), (4, Some(2)));
        assert_ne!(q.order_statistics, d.order_statistics);
    }

    #[test]
    fn non_nilpotent() {
        let s3 = structure_invariants(&dihedral(3).unwrap());
        assert_eq!(s3.nilpotency_class, None);
        assert_eq!(s3.derived_subgroup_order, 3);
        assert_eq!(s3.center_order, 1);
    }

    #[test]
    fn abelian_invariant_values() {
        let l = Limits::default();
        let c12 = structure_invariants(&cyclic(12).unwrap());
        assert_eq!(c12.abelian_invariants, Some(vec![4, 3]));
        let g = abelian(&[4, 5, 5, 5, 5], &l).unwrap();
        assert_eq!(structure_invariants(&g).abelian_invariants, Some(vec![4, 5, 5, 5, 5]));
        let g = abelian(&[2, 6, 4], &l).unwrap();
        assert_eq!(structure_invariants(&g).abelian_invariants, Some(vec![4, 2, 2, 3]));
    }

    #[test]
    fn invariants_are_consistent() {
        let l = Limits::default();
        for (name, g) in small_catalog(&l) {
            let inv = structure_invariants(&g);
            let lcm = inv.order_statistics.iter().fold(1u64, |a, (o, _)| a.lcm(&(*o as u64)));
            assert_eq!(lcm, inv.exponent, "{name}");
            if let Some(ab) = &inv.abelian_invariants {
                assert_eq!(ab.iter().product::<u64>(), inv.order as u64, "{name}");
            }
        }
    }

    #[test]
    fn abelianizations() {
        assert_eq!(abelianization_invariants(&dihedral(4).unwrap()), vec![2, 2]);
        assert_eq!(abelianization_invariants(&quaternion8()), vec![2, 2]);
        assert_eq!(abelianization_invariants(&dihedral(3).unwrap()), vec![2]);
        assert_eq!(abelianization_invariants(&heisenberg(3).unwrap()), vec![3, 3]);
        assert_eq!(abelianization_invariants(&modular_p3(3).unwrap()), vec![3, 3]);
    }
}
