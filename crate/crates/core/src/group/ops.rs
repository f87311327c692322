//! Algorithms that only need the group operation, so they work both on
//! Cayley tables and on groups of algebra elements that are too large to
//! tabulate.

use fixedbitset::FixedBitSet;
use num_integer::Integer;
use rayon::prelude::*;

/// Minimal contract for a finite group whose elements are `0..order()`.
pub trait GroupOps: Sync {
    fn order(&self) -> usize;
    fn identity(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;

    fn pow(&self, a: usize, mut e: u64) -> usize {
        let mut acc = self.identity();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(base, base);
            }
        }
        acc
    }

    /// Order of `a`, found by stripping prime factors off the group order.
    fn element_order(&self, a: usize) -> usize {
        let e = self.identity();
        let mut n = self.order() as u64;
        for (p, _) in factorize(self.order() as u64) {
            while n % p == 0 && self.pow(a, n / p) == e {
                n /= p;
            }
        }
        n as usize
    }

    /// `Some(true)` when commutativity is known without inspecting elements.
    fn known_abelian(&self) -> Option<bool> {
        None
    }
}

/// Prime factorization by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

/// `Some((p, k))` when `n = p^k` with `k >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

/// Subgroup generated by `gens`, as a bitset over element indices.
pub fn closure<G: GroupOps + ?Sized>(g: &G, gens: &[usize]) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(g.order());
    set.insert(g.identity());
    extend_closure(g, &mut set, gens);
    set
}

/// Grows `set`, a subgroup contained in `<gens>`, to all of `<gens>`.
fn extend_closure<G: GroupOps + ?Sized>(g: &G, set: &mut FixedBitSet, gens: &[usize]) {
    let mut queue: Vec<usize> = set.ones().collect();
    while let Some(x) = queue.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if !set.contains(y) {
                set.insert(y);
                queue.push(y);
            }
        }
    }
}

/// Greedy generating sequence: repeatedly adjoin the smallest element
/// outside the current closure.
pub fn generating_sequence<G: GroupOps + ?Sized>(g: &G) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut set = FixedBitSet::with_capacity(g.order());
    set.insert(g.identity());
    loop {
        let next = (0..g.order()).find(|&x| !set.contains(x));
        let Some(x) = next else { break };
        gens.push(x);
        extend_closure(g, &mut set, &gens);
    }
    gens
}

pub fn is_abelian<G: GroupOps + ?Sized>(g: &G) -> bool {
    if let Some(known) = g.known_abelian() {
        return known;
    }
    let gens = generating_sequence(g);
    gens.iter()
        .enumerate()
        .all(|(i, &a)| gens[i + 1..].iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
}

/// Orders of all elements, computed in parallel.
pub fn element_orders<G: GroupOps + ?Sized>(g: &G) -> Vec<u32> {
    (0..g.order())
        .into_par_iter()
        .map(|x| g.element_order(x) as u32)
        .collect()
}

/// Invariants of an abelian group as prime-power cyclic orders, grouped
/// by ascending prime and descending within each prime.
///
/// For each prime `p` the counts `c_k = #{x : x^(p^k) = 1}` determine the
/// number of cyclic factors of order at least `p^k` as `log_p(c_k / c_{k-1})`.
/// The `p`-th power map is tabulated once and iterated by index.
pub fn abelian_invariants<G: GroupOps + ?Sized>(g: &G) -> Vec<u64> {
    let n = g.order();
    let e = g.identity();
    let mut out = Vec::new();
    for (p, v) in factorize(n as u64) {
        let power: Vec<usize> = (0..n).into_par_iter().map(|x| g.pow(x, p)).collect();
        let full = p.pow(v);
        let mut cur: Vec<usize> = (0..n).collect();
        // ranks[k-1] = number of cyclic factors of order >= p^k
        let mut ranks = Vec::new();
        let mut prev = 1u64;
        loop {
            cur.par_iter_mut().for_each(|x| *x = power[*x]);
            let c = cur.iter().filter(|&&x| x == e).count() as u64;
            let ratio = c / prev;
            let mut r = 0;
            let mut t = 1;
            while t < ratio {
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
            let exact = ranks[k - 1] - ranks[k];
            for _ in 0..exact {
                out.push(p.pow(k as u32));
            }
        }
    }
    out
}

/// Sorts prime-power invariants into canonical order.
pub fn canonical_invariants(mut inv: Vec<u64>) -> Vec<u64> {
    inv.retain(|&q| q > 1);
    inv.sort_by_key(|&q| {
        let (p, k) = prime_power(q).expect("invariant must be a prime power");
        (p, std::cmp::Reverse(k))
    });
    inv
}

/// Splits arbitrary cyclic orders into prime-power invariants.
pub fn primary_invariants(cyclic_orders: &[u64]) -> Vec<u64> {
    let mut out = Vec::new();
    for &m in cyclic_orders {
        for (p, k) in factorize(m) {
            out.push(p.pow(k));
        }
    }
    canonical_invariants(out)
}

/// `|Hom(A, B)|` for abelian groups given by prime-power invariants.
pub fn abelian_hom_count(source: &[u64], target: &[u64]) -> num_bigint::BigUint {
    let mut acc = num_bigint::BigUint::from(1u32);
    for &a in source {
        for &b in target {
            acc *= a.gcd(&b);
        }
    }
    acc
}

/// Checks that `map` is a bijective homomorphism from `g` to `h`.
///
/// Multiplicativity is checked on the edges `x -> x*s` for a generating
/// sequence `s` of `g`, which suffices because every element is a product
/// of generators.
pub fn is_isomorphism_map<G, H, F>(g: &G, h: &H, map: F) -> bool
where
    G: GroupOps + ?Sized,
    H: GroupOps + ?Sized,
    F: Fn(usize) -> usize + Sync,
{
    if g.order() != h.order() {
        return false;
    }
    let images: Vec<usize> = (0..g.order()).into_par_iter().map(&map).collect();
    let mut seen = FixedBitSet::with_capacity(h.order());
    for &y in &images {
        if y >= h.order() || seen.contains(y) {
            return false;
        }
        seen.insert(y);
    }
    let gens = generating_sequence(g);
    (0..g.order()).into_par_iter().all(|x| {
        gens.iter()
            .all(|&s| images[g.mul(x, s)] == h.mul(images[x], images[s]))
    })
}

/// Direct product of two operation-level groups, elements `a * |H| + b`.
pub struct ProductOps<'a, A: ?Sized, B: ?Sized> {
    pub left: &'a A,
    pub right: &'a B,
}

impl<A: GroupOps + ?Sized, B: GroupOps + ?Sized> GroupOps for ProductOps<'_, A, B> {
    fn order(&self) -> usize {
        self.left.order() * self.right.order()
    }
    fn identity(&self) -> usize {
        self.left.identity() * self.right.order() + self.right.identity()
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        let m = self.right.order();
        self.left.mul(a / m, b / m) * m + self.right.mul(a % m, b % m)
    }
    fn inv(&self, a: usize) -> usize {
        let m = self.right.order();
        self.left.inv(a / m) * m + self.right.inv(a % m)
    }
    fn known_abelian(&self) -> Option<bool> {
        match (self.left.known_abelian(), self.right.known_abelian()) {
            (Some(true), Some(true)) => Some(true),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(2500), vec![(2, 2), (5, 4)]);
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(12), None);
        assert!(is_prime(7) && !is_prime(1) && !is_prime(9));
    }

    #[test]
    fn invariant_ordering() {
        assert_eq!(primary_invariants(&[12]), vec![4, 3]);
        assert_eq!(canonical_invariants(vec![5, 2, 4, 5]), vec![4, 2, 5, 5]);
    }

    #[test]
    fn gcd_hom_counts() {
        assert_eq!(abelian_hom_count(&[4], &[2]), 2u32.into());
        assert_eq!(abelian_hom_count(&[2, 2], &[2]), 4u32.into());
        assert_eq!(abelian_hom_count(&[5], &[4, 5, 5, 5, 5]), 625u32.into());
    }
}
