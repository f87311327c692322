//! Finite groups stored as Cayley tables.

pub mod catalog;
pub mod decompose;
pub mod invariants;
pub mod iso;
pub mod ops;
pub mod plan;
pub mod subgroups;

use std::fmt;

use crate::{Error, Limits, Result};
pub use ops::GroupOps;

/// A finite group given by its full multiplication table.
///
/// Element `0` is always the identity. Tables are limited to 65535
/// elements by the `u16` storage; [`Limits::max_table_order`] is lower.
#[derive(Clone)]
pub struct FiniteGroup {
    label: String,
    n: usize,
    table: Vec<u16>,
    inverse: Vec<u16>,
    orders: Vec<u32>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("label", &self.label)
            .field("order", &self.n)
            .finish()
    }
}

impl GroupOps for FiniteGroup {
    fn order(&self) -> usize {
        self.n
    }
    fn identity(&self) -> usize {
        0
    }
    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }
    #[inline]
    fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }
    fn element_order(&self, a: usize) -> usize {
        self.orders[a] as usize
    }
}

/// Validates a square multiplication table and returns it as a group.
///
/// The identity is relabeled to index `0` if necessary (by swapping it with
/// the element at index `0`). Associativity is checked with Light's test
/// over a generating sequence, which is exhaustive for group tables.
pub fn group_from_table(rows: &[Vec<usize>], label: &str) -> Result<FiniteGroup> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::MalformedTable("empty table".into()));
    }
    if n > u16::MAX as usize {
        return Err(Error::MalformedTable(format!("{n} rows exceed the u16 index range")));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::MalformedTable(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        if let Some(j) = row.iter().position(|&v| v >= n) {
            return Err(Error::MalformedTable(format!("entry ({i},{j}) = {} is out of range", row[j])));
        }
    }
    let at = |a: usize, b: usize| rows[a][b];
    let e = (0..n)
        .find(|&e| (0..n).all(|g| at(e, g) == g && at(g, e) == g))
        .ok_or(Error::NoIdentity)?;
    for g in 0..n {
        if !(0..n).any(|h| at(g, h) == e && at(h, g) == e) {
            return Err(Error::NoInverse(g));
        }
    }
    // swap e <-> 0
    let relabel = |x: usize| if x == e { 0 } else if x == 0 { e } else { x };
    let mut table = vec![0u16; n * n];
    for a in 0..n {
        for b in 0..n {
            table[relabel(a) * n + relabel(b)] = relabel(at(a, b)) as u16;
        }
    }
    let mut inverse = vec![0u16; n];
    for a in 0..n {
        for b in 0..n {
            if table[a * n + b] == 0 {
                inverse[a] = b as u16;
                break;
            }
        }
    }
    let magma = FiniteGroup {
        label: label.to_string(),
        n,
        table,
        inverse,
        orders: Vec::new(),
    };
    // Light's test: if (x g) y = x (g y) for every generator g then the set
    // of such g is a submagma containing the left-normed closure, i.e. all.
    let gens = ops::generating_sequence(&magma);
    for &g in &gens {
        for x in 0..n {
            let xg = magma.mul(x, g);
            for y in 0..n {
                if magma.mul(xg, y) != magma.mul(x, magma.mul(g, y)) {
                    let back = |v: usize| relabel(v);
                    return Err(Error::NotAssociative(back(x), back(g), back(y)));
                }
            }
        }
    }
    Ok(FiniteGroup::finish(magma))
}

impl FiniteGroup {
    /// Trusted constructor for tables built by this crate (products,
    /// quotients of algebra elements, catalog groups). Identity must be 0.
    pub(crate) fn from_flat_unchecked(n: usize, table: Vec<u16>, label: String) -> FiniteGroup {
        debug_assert_eq!(table.len(), n * n);
        debug_assert!((0..n).all(|g| table[g] as usize == g && table[g * n] as usize == g));
        let mut inverse = vec![0u16; n];
        for a in 0..n {
            let row = &table[a * n..(a + 1) * n];
            inverse[a] = row.iter().position(|&v| v == 0).expect("every element has an inverse") as u16;
        }
        FiniteGroup::finish(FiniteGroup {
            label,
            n,
            table,
            inverse,
            orders: Vec::new(),
        })
    }

    pub(crate) fn from_fn_unchecked(n: usize, label: String, f: impl Fn(usize, usize) -> usize) -> FiniteGroup {
        let mut table = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = f(a, b) as u16;
            }
        }
        FiniteGroup::from_flat_unchecked(n, table, label)
    }

    fn finish(mut g: FiniteGroup) -> FiniteGroup {
        let n = g.n;
        let mut orders = vec![0u32; n];
        for a in 0..n {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = g.table[x * n + a] as usize;
                k += 1;
            }
            orders[a] = k;
        }
        g.orders = orders;
        g
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.n)
            .map(|r| r.iter().map(|&v| v as usize).collect())
            .collect()
    }

    pub fn element_orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn is_abelian(&self) -> bool {
        ops::is_abelian(self)
    }

    pub fn is_trivial(&self) -> bool {
        self.n == 1
    }

    /// Relabels element `x` as `perm[x]`. `perm` must be a permutation;
    /// if it moves the identity, the result is renormalized.
    pub fn relabeled(&self, perm: &[usize]) -> Result<FiniteGroup> {
        let n = self.n;
        if perm.len() != n {
            return Err(Error::BadParams(format!("permutation of length {} for order {n}", perm.len())));
        }
        let mut rows = vec![vec![0usize; n]; n];
        for a in 0..n {
            for b in 0..n {
                rows[perm[a]][perm[b]] = perm[self.mul(a, b)];
            }
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::BadParams("relabeling is not a permutation".into()));
            }
        }
        if perm[0] == 0 {
            let table = rows.into_iter().flatten().map(|v| v as u16).collect();
            Ok(FiniteGroup::from_flat_unchecked(n, table, self.label.clone()))
        } else {
            group_from_table(&rows, &self.label)
        }
    }

    /// Group on the elements of `members` (ascending), with the induced
    /// multiplication. Index `i` of the result is `members[i]`.
    pub fn induced(&self, members: &[usize], label: String) -> FiniteGroup {
        let mut pos = vec![u16::MAX; self.n];
        for (i, &m) in members.iter().enumerate() {
            pos[m] = i as u16;
        }
        debug_assert_eq!(members.first(), Some(&0));
        let k = members.len();
        FiniteGroup::from_fn_unchecked(k, label, |a, b| pos[self.mul(members[a], members[b])] as usize)
    }
}

/// Direct product `G x H`, element `(g, h)` stored at `g * |H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup, limits: &Limits) -> Result<FiniteGroup> {
    let order = g.n as u64 * h.n as u64;
    let limit = limits.max_table_order.min(u16::MAX as usize) as u64;
    if order > limit {
        return Err(Error::OrderOverflow { order, limit });
    }
    let m = h.n;
    let label = match (g.is_trivial(), h.is_trivial()) {
        (_, true) => g.label.clone(),
        (true, false) => h.label.clone(),
        _ => format!("{} x {}", g.label, h.label),
    };
    Ok(FiniteGroup::from_fn_unchecked(order as usize, label, |a, b| {
        g.mul(a / m, b / m) * m + h.mul(a % m, b % m)
    }))
}

/// Direct product of a list of groups; the trivial group for an empty list.
pub fn direct_product_all(groups: &[FiniteGroup], limits: &Limits) -> Result<FiniteGroup> {
    let mut acc = catalog::trivial();
    for g in groups {
        acc = direct_product(&acc, g, limits)?;
    }
    Ok(acc)
}

/// Materializes any operation-level group as a table.
pub fn tabulate<G: GroupOps + ?Sized>(g: &G, label: String, limits: &Limits) -> Result<FiniteGroup> {
    let n = g.order();
    if n > limits.max_table_order.min(u16::MAX as usize) {
        return Err(Error::bound("group order for tabulation", n, limits.max_table_order));
    }
    // Move the identity to index 0.
    let e = g.identity();
    let swap = |x: usize| if x == e { 0 } else if x == 0 { e } else { x };
    use rayon::prelude::*;
    let table: Vec<u16> = (0..n * n)
        .into_par_iter()
        .map(|ab| swap(g.mul(swap(ab / n), swap(ab % n))) as u16)
        .collect();
    Ok(FiniteGroup::from_flat_unchecked(n, table, label))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_and_c2_tables() {
        let t = group_from_table(&[vec![0]], "1").unwrap();
        assert_eq!(t.order(), 1);
        let c2 = group_from_table(&[vec![0, 1], vec![1, 0]], "C2").unwrap();
        assert_eq!(c2.element_orders(), &[1, 2]);
    }

    #[test]
    fn identity_is_moved_to_zero() {
        // C3 with identity stored at index 2
        let rows = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let g = group_from_table(&rows, "C3").unwrap();
        assert_eq!(g.mul(0, 1), 1);
        assert_eq!(g.element_orders(), &[1, 3, 3]);
    }

    #[test]
    fn rejects_non_associative_table() {
        // a loop of order 6 with identity and inverses but not associative
        let rows = vec![
            vec![0, 1, 2, 3, 4, 5],
            vec![1, 0, 3, 2, 5, 4],
            vec![2, 4, 0, 5, 1, 3],
            vec![3, 5, 1, 0, 2, 4],
            vec![4, 2, 5, 1, 3, 0],
            vec![5, 3, 4, 2, 0, 1],
        ];
        match group_from_table(&rows, "loop") {
            Err(Error::NotAssociative(..)) => {}
            other => panic!("expected NotAssociative, got {other:?}"),
        }
    }

    #[test]
    fn rejects_malformed_and_missing_identity() {
        assert!(matches!(group_from_table(&[vec![0, 1]], "x"), Err(Error::MalformedTable(_))));
        assert!(matches!(
            group_from_table(&[vec![0, 2], vec![1, 0]], "x"),
            Err(Error::MalformedTable(_))
        ));
        assert!(matches!(
            group_from_table(&[vec![1, 1], vec![1, 1]], "x"),
            Err(Error::NoIdentity)
        ));
        assert!(matches!(
            group_from_table(&[vec![0, 1], vec![1, 1]], "x"),
            Err(Error::NoInverse(1))
        ));
    }

    #[test]
    fn product_overflow() {
        let limits = Limits { max_table_order: 10, ..Limits::default() };
        let c4 = catalog::cyclic(4).unwrap();
        assert!(matches!(
            direct_product(&c4, &c4, &limits),
            Err(Error::OrderOverflow { order: 16, limit: 10 })
        ));
    }
}
