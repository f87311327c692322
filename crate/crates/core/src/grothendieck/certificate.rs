//! Membership in the span of unit-group classes, and the witnesses
//! `A* = B* x K^n` obtained by clearing denominators.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{class_vector, AlgebraEntry, ClassRegistry, UnitsSummary};
use crate::algebra::{group_algebra, ring_as_algebra};
use crate::group::catalog::cyclic;
use crate::group::invariants::structure_invariants;
use crate::group::iso::is_isomorphic;
use crate::group::ops::{abelian_invariants, canonical_invariants, is_abelian};
use crate::group::{direct_product_all, FiniteGroup, GroupOps};
use crate::homcount::subgroup_class_representatives;
use crate::linalg::{solve, NumField, Solution};
use crate::ring::FiniteCommRing;
use crate::{Error, LVector, Limits, Rational, Result};

/// `sum q_i [A_i*] = [K]`.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub ring: String,
    pub target_key: String,
    pub target: LVector,
    pub terms: Vec<(Rational, AlgebraEntry)>,
}

impl Certificate {
    pub fn coefficient(&self, label: &str) -> Option<&Rational> {
        self.terms.iter().find(|(_, e)| e.label() == label).map(|(q, _)| q)
    }

    fn add_term(&mut self, q: Rational, entry: &AlgebraEntry) {
        if let Some(pos) = self.terms.iter().position(|(_, e)| e.label() == entry.label()) {
            self.terms[pos].0 += q;
            if self.terms[pos].0.is_zero() {
                self.terms.remove(pos);
            }
        } else if !q.is_zero() {
            self.terms.push((q, entry.clone()));
        }
    }
}

#[derive(Debug, Clone)]
pub enum Membership {
    Certified(Certificate),
    /// `residual` is `target - A x` for the least-squares `x`; it is zero
    /// exactly when the target is in the span.
    NotInSpan { residual: LVector },
}

impl Membership {
    pub fn is_certified(&self) -> bool {
        matches!(self, Membership::Certified(_))
    }
}

/// Recomputes `sum q_i [A_i*]` and compares it with `[K]`.
pub fn verify_certificate(reg: &mut ClassRegistry, cert: &Certificate, k: &FiniteGroup) -> Result<bool> {
    let mut sum = LVector::zero();
    for (q, e) in &cert.terms {
        sum = sum.plus(&e.units.class_vector(reg)?.scaled(q));
    }
    Ok(sum == class_vector(reg, k)?)
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn matrix(rows: &[usize], cols: &[&LVector]) -> Vec<Vec<Rational>> {
    rows.iter().map(|&r| cols.iter().map(|c| c.get(r)).collect()).collect()
}

/// Exhaustive smallest-support search is used up to this many nonzero columns.
const EXHAUSTIVE_COLUMNS: usize = 14;

/// Solves `sum q_i [A_i*] = [K]` over the rationals, preferring the
/// fewest pool algebras.
pub fn solve_membership(
    reg: &mut ClassRegistry,
    k: &FiniteGroup,
    ring: &FiniteCommRing,
    pool: &[AlgebraEntry],
) -> Result<Membership> {
    let target = class_vector(reg, k)?;
    let target_key = structure_invariants(k).key();
    let mut cert = Certificate { ring: ring.label().to_string(), target_key, target: target.clone(), terms: vec![] };
    if target.is_zero() {
        return Ok(Membership::Certified(cert));
    }
    let cols: Vec<LVector> = pool.iter().map(|e| e.units.class_vector(reg)).collect::<Result<_>>()?;
    let live: Vec<usize> = (0..pool.len()).filter(|&i| !cols[i].is_zero()).collect();
    let mut rows: Vec<usize> = target.support().chain(live.iter().flat_map(|&i| cols[i].support())).collect();
    rows.sort_unstable();
    rows.dedup();
    let b: Vec<Rational> = rows.iter().map(|&r| target.get(r)).collect();
    let f = NumField::<Rational>::default();

    let try_subset = |subset: &[usize]| -> Option<Vec<Rational>> {
        let a = matrix(&rows, &subset.iter().map(|&i| &cols[i]).collect::<Vec<_>>());
        match solve(&f, &a, &b) {
            Solution::Solved { x, .. } => Some(x),
            Solution::Inconsistent { .. } => None,
        }
    };

    let mut found: Option<(Vec<usize>, Vec<Rational>)> = None;
    if live.len() <= EXHAUSTIVE_COLUMNS {
        'sizes: for size in 1..=live.len() {
            for subset in combinations(&live, size) {
                if let Some(x) = try_subset(&subset) {
                    found = Some((subset, x));
                    break 'sizes;
                }
            }
        }
    } else if let Some(x) = try_subset(&live) {
        found = Some((live.clone(), x));
    }

    match found {
        Some((subset, x)) => {
            for (&i, q) in subset.iter().zip(x) {
                cert.add_term(q, &pool[i]);
            }
            Ok(Membership::Certified(cert))
        }
        None => Ok(Membership::NotInSpan { residual: residual(&rows, &cols, &live, &target) }),
    }
}

/// `b - A x` where `x` solves the normal equations `A^T A x = A^T b`.
fn residual(rows: &[usize], cols: &[LVector], live: &[usize], target: &LVector) -> LVector {
    let f = NumField::<Rational>::default();
    let a = matrix(rows, &live.iter().map(|&i| &cols[i]).collect::<Vec<_>>());
    let b: Vec<Rational> = rows.iter().map(|&r| target.get(r)).collect();
    let m = live.len();
    let dot = |u: &dyn Fn(usize) -> Rational, v: &dyn Fn(usize) -> Rational| -> Rational {
        (0..rows.len()).fold(Rational::zero(), |acc, r| acc + u(r) * v(r))
    };
    let ata: Vec<Vec<Rational>> =
        (0..m).map(|i| (0..m).map(|j| dot(&|r| a[r][i].clone(), &|r| a[r][j].clone())).collect()).collect();
    let atb: Vec<Rational> = (0..m).map(|i| dot(&|r| a[r][i].clone(), &|r| b[r].clone())).collect();
    let x = match solve(&f, &ata, &atb) {
        Solution::Solved { x, .. } => x,
        Solution::Inconsistent { .. } => vec![Rational::zero(); m],
    };
    let mut res = target.clone();
    for (j, &i) in live.iter().enumerate() {
        res = res.minus(&cols[i].scaled(&x[j]));
    }
    res
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// One layer of the recursive cyclic construction.
#[derive(Debug, Clone)]
pub struct CyclicLayer {
    pub i: u32,
    /// `a_1, ..., a_i`: multiplicity of `C_{p^j}` in `(F_p C_{p^i})*`.
    pub multiplicities: Vec<u64>,
    pub certificate: Certificate,
}

/// Certificates for `[C_{p^i}]`, `1 <= i <= n`, over the prime field `ring`.
pub fn cyclic_certificate(
    reg: &mut ClassRegistry,
    ring: Arc<FiniteCommRing>,
    n: u32,
    limits: &Limits,
) -> Result<Vec<CyclicLayer>> {
    let p = ring
        .prime_field_order()
        .ok_or_else(|| Error::PreconditionViolated(format!("{} is not a prime field", ring.label())))?;
    let base = AlgebraEntry::new(ring_as_algebra(ring.clone()), limits)?;
    let mut layers: Vec<CyclicLayer> = Vec::new();
    for i in 1..=n {
        let q = p.checked_pow(i).ok_or_else(|| Error::bound("cyclic order", u64::MAX, limits.max_table_order))?;
        let g = cyclic(q as usize)?;
        let elements = (p as f64).powf(q as f64);
        if elements > limits.max_algebra_elements as f64 {
            return Err(Error::bound("group algebra elements", elements as u64, limits.max_algebra_elements));
        }
        let entry = AlgebraEntry::new(group_algebra(ring.clone(), &g, limits)?, limits)?;
        let inv = match &entry.units {
            UnitsSummary::Abelian(inv) => inv.clone(),
            UnitsSummary::Table(_) => return Err(Error::Internal("commutative algebra with nonabelian units".into())),
        };
        let a: Vec<u64> = (1..=i).map(|j| inv.iter().filter(|&&x| x == p.pow(j)).count() as u64).collect();
        let an = a[i as usize - 1];
        if an == 0 {
            return Err(Error::Internal(format!("a_{i} = 0 for F_{p}C_{q}")));
        }
        let an_r = rat(an as i64);
        let mut cert = Certificate {
            ring: ring.label().to_string(),
            target_key: structure_invariants(&g).key(),
            target: class_vector(reg, &g)?,
            terms: vec![],
        };
        cert.add_term(Rational::one() / &an_r, &entry);
        cert.add_term(-Rational::one() / &an_r, &base);
        for (j, &aj) in a[..i as usize - 1].iter().enumerate() {
            let scale = -rat(aj as i64) / &an_r;
            for (qj, e) in &layers[j].certificate.terms {
                cert.add_term(qj * &scale, e);
            }
        }
        cert.terms.retain(|(_, e)| !e.units.is_trivial());
        if !verify_certificate(reg, &cert, &g)? {
            return Err(Error::Internal(format!("cyclic certificate for C{q} does not verify")));
        }
        layers.push(CyclicLayer { i, multiplicities: a, certificate: cert });
    }
    Ok(layers)
}

/// `(K, A, B, n)` with `A* = B* x K^n`; `A` and `B` are direct products of
/// the listed factors with multiplicities.
#[derive(Debug, Clone)]
pub struct HereditaryWitness {
    pub k: FiniteGroup,
    pub ring: String,
    pub a: Vec<(AlgebraEntry, u32)>,
    pub b: Vec<(AlgebraEntry, u32)>,
    pub n: u32,
}

impl HereditaryWitness {
    pub fn a_label(&self) -> String {
        product_label(&self.a)
    }

    pub fn b_label(&self) -> String {
        product_label(&self.b)
    }
}

fn product_label(fs: &[(AlgebraEntry, u32)]) -> String {
    fs.iter()
        .map(|(e, m)| if *m == 1 { e.label().to_string() } else { format!("{}^{}", e.label(), m) })
        .collect::<Vec<_>>()
        .join(" x ")
}

/// Clears denominators and splits signs.
pub fn certificate_to_witness(
    cert: &Certificate,
    k: &FiniteGroup,
    ring: Arc<FiniteCommRing>,
    limits: &Limits,
) -> Result<HereditaryWitness> {
    let r_entry = || AlgebraEntry::new(ring_as_algebra(ring.clone()), limits);
    if cert.terms.is_empty() {
        if !k.is_trivial() {
            return Err(Error::EmptyPositivePart);
        }
        return Ok(HereditaryWitness { k: k.clone(), ring: ring.label().into(), a: vec![(r_entry()?, 1)], b: vec![(r_entry()?, 1)], n: 1 });
    }
    let n = cert.terms.iter().fold(BigInt::one(), |acc, (q, _)| acc.lcm(q.denom()));
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (q, e) in &cert.terms {
        let c = (q * Rational::from_integer(n.clone())).to_integer();
        let m = c.abs().to_u32().ok_or_else(|| Error::bound("witness multiplicity", u64::MAX, u32::MAX))?;
        if c.is_positive() {
            a.push((e.clone(), m));
        } else {
            b.push((e.clone(), m));
        }
    }
    if a.is_empty() {
        return Err(Error::EmptyPositivePart);
    }
    if b.is_empty() {
        // A* = 1* x K^n; pad both sides with R so B is a genuine algebra
        let r = r_entry()?;
        a.push((r.clone(), 1));
        b.push((r, 1));
    }
    let n = n.to_u32().ok_or_else(|| Error::bound("witness exponent", u64::MAX, u32::MAX))?;
    Ok(HereditaryWitness { k: k.clone(), ring: ring.label().into(), a, b, n })
}

fn expand<'a>(fs: &'a [(AlgebraEntry, u32)]) -> impl Iterator<Item = &'a UnitsSummary> {
    fs.iter().flat_map(|(e, m)| std::iter::repeat(&e.units).take(*m as usize))
}

/// Checks `A* = B* x K^n`: by invariants when everything is abelian, by an
/// isomorphism search on tabulated products otherwise, falling back to
/// comparing Krull-Schmidt decompositions when the products are too big.
pub fn verify_witness(w: &HereditaryWitness, limits: &Limits) -> Result<bool> {
    use num_bigint::BigUint;
    let left: Vec<&UnitsSummary> = expand(&w.a).collect();
    let right: Vec<&UnitsSummary> = expand(&w.b).collect();
    let lo = left.iter().fold(BigUint::one(), |acc, u| acc * u.order());
    let ro = right.iter().fold(BigUint::one(), |acc, u| acc * u.order()) * BigUint::from(w.k.order()).pow(w.n);
    if lo != ro {
        return Ok(false);
    }
    let all_abelian =
        is_abelian(&w.k) && left.iter().chain(&right).all(|u| matches!(u, UnitsSummary::Abelian(_)));
    if all_abelian {
        let flat = |us: &[&UnitsSummary]| -> Vec<u64> {
            us.iter().flat_map(|u| if let UnitsSummary::Abelian(v) = u { v.clone() } else { vec![] }).collect()
        };
        let kinv = abelian_invariants(&w.k);
        let mut r = flat(&right);
        for _ in 0..w.n {
            r.extend(&kinv);
        }
        return Ok(canonical_invariants(flat(&left)) == canonical_invariants(r));
    }
    if lo <= BigUint::from(limits.max_table_order) {
        let lt: Vec<FiniteGroup> = left.iter().map(|u| u.to_table(limits)).collect::<Result<_>>()?;
        let mut rt: Vec<FiniteGroup> = right.iter().map(|u| u.to_table(limits)).collect::<Result<_>>()?;
        rt.extend(std::iter::repeat(w.k.clone()).take(w.n as usize));
        let l = direct_product_all(&lt, limits)?;
        let r = direct_product_all(&rt, limits)?;
        return Ok(is_isomorphic(&l, &r, limits)?.is_some());
    }
    let mut reg = ClassRegistry::new(limits);
    let mut lv = LVector::zero();
    for u in &left {
        lv = lv.plus(&u.class_vector(&mut reg)?);
    }
    let mut rv = class_vector(&mut reg, &w.k)?.scaled(&rat(w.n as i64));
    for u in &right {
        rv = rv.plus(&u.class_vector(&mut reg)?);
    }
    Ok(lv == rv)
}

/// Per subgroup class of `G`: its membership in the span of `pool`.
#[derive(Debug, Clone)]
pub struct HereditaryReport {
    pub group: String,
    pub ring: String,
    pub rows: Vec<(FiniteGroup, Membership)>,
}

impl HereditaryReport {
    pub fn is_hereditary(&self) -> bool {
        self.rows.iter().all(|(_, m)| m.is_certified())
    }
}

pub fn is_hereditary(
    reg: &mut ClassRegistry,
    g: &FiniteGroup,
    ring: &FiniteCommRing,
    pool: &[AlgebraEntry],
    limits: &Limits,
) -> Result<HereditaryReport> {
    let mut rows = Vec::new();
    for k in subgroup_class_representatives(g, limits)? {
        let m = solve_membership(reg, &k, ring, pool)?;
        rows.push((k, m));
    }
    Ok(HereditaryReport { group: g.label().to_string(), ring: ring.label().to_string(), rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::unit_group;
    use crate::group::catalog::*;
    use crate::ring::prime_field;

    fn f(p: u64) -> Arc<FiniteCommRing> {
        Arc::new(prime_field(p).unwrap())
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn c5_example() {
        let l = Limits::default();
        let r = f(5);
        let mut reg = ClassRegistry::new(&l);
        let fp = AlgebraEntry::new(ring_as_algebra(r.clone()), &l).unwrap();
        let fc = AlgebraEntry::new(group_algebra(r.clone(), &cyclic(5).unwrap(), &l).unwrap(), &l).unwrap();
        assert_eq!(fc.units, UnitsSummary::Abelian(vec![4, 5, 5, 5, 5]));
        let c5 = cyclic(5).unwrap();
        let Membership::Certified(cert) = solve_membership(&mut reg, &c5, &r, &[fp.clone(), fc.clone()]).unwrap() else {
            panic!()
        };
        assert_eq!(cert.coefficient("F5"), Some(&q(-1, 4)));
        assert_eq!(cert.coefficient("F5[C5]"), Some(&q(1, 4)));
        assert!(verify_certificate(&mut reg, &cert, &c5).unwrap());

        let w = certificate_to_witness(&cert, &c5, r.clone(), &l).unwrap();
        assert_eq!((w.n, w.a_label(), w.b_label()), (4, "F5[C5]".to_string(), "F5".to_string()));
        assert!(verify_witness(&w, &l).unwrap());
        let mut bad = w.clone();
        bad.n = 3;
        assert!(!verify_witness(&bad, &l).unwrap());

        match solve_membership(&mut reg, &c5, &r, &[fp]).unwrap() {
            Membership::NotInSpan { residual } => {
                let i = reg.intern_cyclic(5).unwrap();
                assert_eq!(residual.get(i), q(1, 1));
            }
            _ => panic!("C5 is not in the span of [C4]"),
        }
    }

    #[test]
    fn trivial_target() {
        let l = Limits::default();
        let r = f(3);
        let mut reg = ClassRegistry::new(&l);
        let Membership::Certified(cert) = solve_membership(&mut reg, &trivial(), &r, &[]).unwrap() else { panic!() };
        assert!(cert.terms.is_empty());
        let w = certificate_to_witness(&cert, &trivial(), r, &l).unwrap();
        assert_eq!((w.n, w.a_label(), w.b_label()), (1, "F3".to_string(), "F3".to_string()));
        assert!(verify_witness(&w, &l).unwrap());
    }

    #[test]
    fn cyclic_layers() {
        let l = Limits::default();
        let mut reg = ClassRegistry::new(&l);
        let layers = cyclic_certificate(&mut reg, f(2), 2, &l).unwrap();
        assert_eq!(layers[0].multiplicities, vec![1]);
        assert_eq!(layers[0].certificate.terms.len(), 1);
        assert_eq!(layers[1].multiplicities, vec![1, 1]);
        let c4 = cyclic(4).unwrap();
        let w = certificate_to_witness(&layers[1].certificate, &c4, f(2), &l).unwrap();
        assert_eq!((w.n, w.a_label(), w.b_label()), (1, "F2[C4]".to_string(), "F2[C2]".to_string()));
        assert!(verify_witness(&w, &l).unwrap());

        let c5 = cyclic_certificate(&mut reg, f(5), 1, &l).unwrap();
        assert_eq!(c5[0].multiplicities, vec![4]);
        assert_eq!(c5[0].certificate.coefficient("F5"), Some(&q(-1, 4)));
    }

    #[test]
    fn c2_witness_pads_with_ring() {
        let l = Limits::default();
        let mut reg = ClassRegistry::new(&l);
        let layers = cyclic_certificate(&mut reg, f(2), 1, &l).unwrap();
        let w = certificate_to_witness(&layers[0].certificate, &cyclic(2).unwrap(), f(2), &l).unwrap();
        assert_eq!((w.a_label(), w.b_label()), ("F2[C2] x F2".to_string(), "F2".to_string()));
        assert!(verify_witness(&w, &l).unwrap());
    }

    #[test]
    fn hereditary_reports() {
        let l = Limits::default();
        let r = f(2);
        let mut reg = ClassRegistry::new(&l);
        let pool: Vec<AlgebraEntry> = [1, 2, 4]
            .iter()
            .map(|&m| AlgebraEntry::new(group_algebra(r.clone(), &cyclic(m).unwrap(), &l).unwrap(), &l).unwrap())
            .collect();
        let rep = is_hereditary(&mut reg, &cyclic(4).unwrap(), &r, &pool, &l).unwrap();
        assert_eq!(rep.rows.len(), 3);
        assert!(rep.is_hereditary());

        let r5 = f(5);
        let only = vec![AlgebraEntry::new(ring_as_algebra(r5.clone()), &l).unwrap()];
        let rep = is_hereditary(&mut reg, &cyclic(5).unwrap(), &r5, &only, &l).unwrap();
        assert!(!rep.is_hereditary());
        assert!(!rep.rows[1].1.is_certified());
    }

    #[test]
    fn nonabelian_units_verify_by_search() {
        let l = Limits::default();
        let r = f(3);
        let s3 = dihedral(3).unwrap();
        let e = AlgebraEntry::new(group_algebra(r.clone(), &s3, &l).unwrap(), &l).unwrap();
        assert!(matches!(e.units, UnitsSummary::Table(_)));
        let units = unit_group(&e.algebra, &l).unwrap().to_table(&l).unwrap();
        let rr = AlgebraEntry::new(ring_as_algebra(r.clone()), &l).unwrap();
        // A* = A* x 1^1
        let w = HereditaryWitness { k: trivial(), ring: "F3".into(), a: vec![(e.clone(), 1)], b: vec![(e, 1)], n: 1 };
        assert!(verify_witness(&w, &l).unwrap());
        let w2 = HereditaryWitness { k: units, ring: "F3".into(), a: w.a.clone(), b: vec![(rr, 1)], n: 1 };
        // |A*| = |K| but B* = C2 makes the orders differ
        assert!(!verify_witness(&w2, &l).unwrap());
    }
}
