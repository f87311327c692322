//! Hereditary witnesses for every subgroup class, recovered hom counts, and
//! the comparison of two groups through them.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{baer_algebra, bovdi_search, log_order, p_group_class};
use crate::algebra::{ring_as_algebra, unitization, FiniteAlgebra};
use crate::grothendieck::{
    certificate_to_witness, class_vector, cyclic_certificate, verify_certificate, verify_witness, AlgebraEntry,
    Certificate, ClassRegistry, CyclicLayer, HereditaryWitness, UnitsSummary,
};
use crate::group::decompose::indecomposable_factors;
use crate::group::invariants::{abelianization_invariants, structure_invariants};
use crate::group::ops::{abelian_hom_count, abelian_invariants, is_isomorphism_map, prime_power};
use crate::group::{FiniteGroup, GroupOps};
use crate::homcount::{count_homs, lovasz_compare, subgroup_class_representatives, LovaszVerdict};
use crate::ring::FiniteCommRing;
use crate::{Count, Error, Limits, Rational, Result};

/// The three families for which `F_p G` is known to determine `G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupClass {
    Abelian,
    /// Odd `p`, class two, exponent `p`.
    ClassTwoExponentP,
    /// `p = 2`, class two, exponent dividing four.
    ClassTwoExponentFour,
}

/// Which family `G` belongs to over the prime field `ring`.
pub fn group_class(g: &FiniteGroup, ring: &FiniteCommRing) -> Result<GroupClass> {
    let p = ring
        .prime_field_order()
        .ok_or_else(|| Error::PreconditionViolated(format!("{} is not a prime field", ring.label())))?;
    if g.is_trivial() {
        return Ok(GroupClass::Abelian);
    }
    let (q, class, exponent) = p_group_class(g);
    let unsupported = || Error::UnsupportedClass(g.label().to_string());
    if q != Some(p) {
        return Err(unsupported());
    }
    if g.is_abelian() {
        return Ok(GroupClass::Abelian);
    }
    match class {
        Some(2) if p != 2 && exponent == p => Ok(GroupClass::ClassTwoExponentP),
        Some(2) if p == 2 && 4 % exponent == 0 => Ok(GroupClass::ClassTwoExponentFour),
        _ => Err(unsupported()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Trivial,
    Cyclic,
    Baer,
    Bovdi,
}

#[derive(Debug, Clone)]
pub struct ClassWitness {
    pub k: FiniteGroup,
    pub route: Route,
    pub certificate: Certificate,
    pub witness: HereditaryWitness,
}

/// A verified witness `A* = B* x K^n` for every subgroup class `K` of `G`.
pub fn hereditary_certificates(
    g: &FiniteGroup,
    ring: Arc<FiniteCommRing>,
    limits: &Limits,
) -> Result<Vec<ClassWitness>> {
    group_class(g, &ring)?;
    let p = ring.prime_field_order().expect("checked by group_class");
    let mut reg = ClassRegistry::new(limits);
    let mut layers: Vec<CyclicLayer> = Vec::new();
    let mut out = Vec::new();
    for k in subgroup_class_representatives(g, limits)? {
        let key = structure_invariants(&k).key();
        let mut cert =
            Certificate { ring: ring.label().to_string(), target_key: key, target: class_vector(&mut reg, &k)?, terms: vec![] };
        let route = if k.is_trivial() {
            Route::Trivial
        } else if k.is_abelian() {
            let inv = abelian_invariants(&k);
            let top = inv.iter().map(|&q| log_order(q as usize, p)).max().unwrap_or(0);
            if top as usize > layers.len() {
                layers = cyclic_certificate(&mut reg, ring.clone(), top, limits)?;
            }
            let mut sums: BTreeMap<String, (Rational, AlgebraEntry)> = BTreeMap::new();
            for q in inv {
                for (c, e) in &layers[log_order(q as usize, p) as usize - 1].certificate.terms {
                    let slot = sums.entry(e.label().to_string()).or_insert_with(|| (Rational::zero(), e.clone()));
                    slot.0 += c;
                }
            }
            // keep a deterministic order: larger algebras first
            let mut terms: Vec<(Rational, AlgebraEntry)> = sums.into_values().filter(|(c, _)| !c.is_zero()).collect();
            terms.sort_by_key(|(_, e)| std::cmp::Reverse(e.algebra.dim()));
            cert.terms = terms;
            Route::Cyclic
        } else {
            let (radical, route) = if p == 2 {
                let dim = log_order(k.order(), 2) as usize;
                (bovdi_search(&k, dim, limits.algebra_search_budget, limits)?.algebra, Route::Bovdi)
            } else {
                (baer_algebra(&k, limits)?.algebra, Route::Baer)
            };
            cert.terms = quasi_regular_terms(&radical, limits)?;
            route
        };
        if !verify_certificate(&mut reg, &cert, &k)? {
            return Err(Error::Internal(format!("certificate for {} does not verify", k.label())));
        }
        let witness = certificate_to_witness(&cert, &k, ring.clone(), limits)?;
        if !verify_witness(&witness, limits)? {
            return Err(Error::Internal(format!("witness for {} does not verify", k.label())));
        }
        out.push(ClassWitness { k, route, certificate: cert, witness });
    }
    Ok(out)
}

/// `[Q(A)] = [(A^un)*] - [R*]` for a quasi-regular `A`.
pub fn quasi_regular_terms(radical: &FiniteAlgebra, limits: &Limits) -> Result<Vec<(Rational, AlgebraEntry)>> {
    let un = AlgebraEntry::new(unitization(radical), limits)?;
    let r = AlgebraEntry::new(ring_as_algebra(radical.ring_arc().clone()), limits)?;
    Ok(vec![(Rational::one(), un), (-Rational::one(), r)])
}

/// Certificate and verified witness for `[Q(A)]`, where `Q(A) = K`.
pub fn quasi_regular_witness(
    reg: &mut ClassRegistry,
    radical: &FiniteAlgebra,
    k: &FiniteGroup,
    limits: &Limits,
) -> Result<(Certificate, HereditaryWitness)> {
    let ring = radical.ring_arc().clone();
    let cert = Certificate {
        ring: ring.label().to_string(),
        target_key: structure_invariants(k).key(),
        target: class_vector(reg, k)?,
        terms: quasi_regular_terms(radical, limits)?,
    };
    if !verify_certificate(reg, &cert, k)? {
        return Err(Error::Internal(format!("[(A^un)*] - [R*] != [{}]", k.label())));
    }
    let w = certificate_to_witness(&cert, k, ring, limits)?;
    if !verify_witness(&w, limits)? {
        return Err(Error::Internal(format!("witness for {} does not verify", k.label())));
    }
    Ok((cert, w))
}

/// `|Hom(H, A*)|`, `|Hom(H, B*)|` and the recovered `|Hom(H, K)|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveredCounts {
    pub hom_a: Count,
    pub hom_b: Count,
    pub recovered: Count,
}

fn hom_count_into(h: &FiniteGroup, units: &UnitsSummary, limits: &Limits) -> Result<Count> {
    match units {
        UnitsSummary::Abelian(inv) => {
            if h.is_trivial() {
                return Ok(Count::one());
            }
            Ok(abelian_hom_count(&abelianization_invariants(h), inv))
        }
        UnitsSummary::Table(t) => count_homs(h, t, limits),
    }
}

fn product_count(h: &FiniteGroup, fs: &[(AlgebraEntry, u32)], limits: &Limits) -> Result<Count> {
    let mut acc = Count::one();
    for (e, m) in fs {
        acc *= hom_count_into(h, &e.units, limits)?.pow(*m);
    }
    Ok(acc)
}

/// `(|Hom(H, A*)| / |Hom(H, B*)|)^(1/n)`, exact.
pub fn recovered_counts(h: &FiniteGroup, w: &HereditaryWitness, limits: &Limits) -> Result<RecoveredCounts> {
    let hom_a = product_count(h, &w.a, limits)?;
    let hom_b = product_count(h, &w.b, limits)?;
    if hom_b.is_zero() || !(&hom_a % &hom_b).is_zero() {
        return Err(Error::NonDivisible(hom_a.to_string(), hom_b.to_string()));
    }
    let q: BigUint = &hom_a / &hom_b;
    let root = q.nth_root(w.n);
    if root.pow(w.n) != q {
        return Err(Error::NotPerfectPower(q.to_string(), w.n));
    }
    Ok(RecoveredCounts { hom_a, hom_b, recovered: root })
}

pub fn recovered_hom_count(h: &FiniteGroup, w: &HereditaryWitness, limits: &Limits) -> Result<Count> {
    Ok(recovered_counts(h, w, limits)?.recovered)
}

#[derive(Debug, Clone)]
pub struct PipelineRow {
    /// Invariant key of the subgroup class `K`.
    pub subgroup: String,
    pub witness: HereditaryWitness,
    pub g: RecoveredCounts,
    pub h: RecoveredCounts,
    pub matched: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    /// `map[g]` is the image of `g` in `H`, verified to be an isomorphism.
    IsomorphicCertified(Vec<usize>),
    /// Index of the first row whose recovered counts differ.
    AlgebrasDistinguished(usize),
    Inconclusive(String),
}

#[derive(Debug, Clone)]
pub struct PipelineReport {
    pub g: String,
    pub h: String,
    pub ring: String,
    pub rows: Vec<PipelineRow>,
    pub verdict: Verdict,
}

fn soft_failure(e: &Error) -> bool {
    matches!(
        e,
        Error::BoundExceeded { .. }
            | Error::OrderOverflow { .. }
            | Error::SearchBudgetExceeded { .. }
            | Error::NotFound { .. }
            | Error::UnsupportedClass(_)
            | Error::PreconditionViolated(_)
    )
}

/// Decides whether `RG` and `RH` can be told apart by the recovered hom
/// counts into the indecomposable subgroup classes of `G`; when they
/// cannot, `G` and `H` are isomorphic and an explicit map is produced.
pub fn criterion_check(
    g: &FiniteGroup,
    h: &FiniteGroup,
    ring: Arc<FiniteCommRing>,
    limits: &Limits,
) -> Result<PipelineReport> {
    let mut report =
        PipelineReport { g: g.label().into(), h: h.label().into(), ring: ring.label().into(), rows: vec![], verdict: Verdict::Inconclusive(String::new()) };
    if g.order() != h.order() {
        report.verdict = Verdict::Inconclusive(format!(
            "|G| = {} but |H| = {}; since {} has invariant basis number, RG and RH already differ in rank",
            g.order(),
            h.order(),
            ring.label()
        ));
        return Ok(report);
    }
    match run_rows(g, h, ring, limits, &mut report.rows) {
        Ok(()) => {}
        Err(e) if soft_failure(&e) => {
            report.verdict = Verdict::Inconclusive(e.to_string());
            return Ok(report);
        }
        Err(e) => return Err(e),
    }
    if let Some(i) = report.rows.iter().position(|r| !r.matched) {
        report.verdict = Verdict::AlgebrasDistinguished(i);
        return Ok(report);
    }
    report.verdict = match lovasz_compare(g, h, limits) {
        Ok(LovaszVerdict::Isomorphic(map)) => {
            if !is_isomorphism_map(g, h, |x| map[x]) {
                return Err(Error::Internal("isomorphism from the subgroup comparison does not verify".into()));
            }
            Verdict::IsomorphicCertified(map)
        }
        Ok(LovaszVerdict::Distinguished { subgroup, count_g, count_h }) => {
            return Err(Error::Internal(format!(
                "recovered counts agree but |Hom(-, {})| differs ({count_g} vs {count_h})",
                subgroup.label()
            )))
        }
        Ok(LovaszVerdict::OrderMismatch) => unreachable!("orders compared above"),
        Err(e) if soft_failure(&e) => Verdict::Inconclusive(e.to_string()),
        Err(e) => return Err(e),
    };
    Ok(report)
}

fn run_rows(
    g: &FiniteGroup,
    h: &FiniteGroup,
    ring: Arc<FiniteCommRing>,
    limits: &Limits,
    rows: &mut Vec<PipelineRow>,
) -> Result<()> {
    for cw in hereditary_certificates(g, ring, limits)? {
        // decomposable classes follow multiplicatively from their factors
        if indecomposable_factors(&cw.k, limits)?.len() != 1 {
            continue;
        }
        let cg = recovered_counts(g, &cw.witness, limits)?;
        let ch = recovered_counts(h, &cw.witness, limits)?;
        let matched = cg.recovered == ch.recovered;
        rows.push(PipelineRow { subgroup: cw.certificate.target_key.clone(), witness: cw.witness, g: cg, h: ch, matched });
    }
    Ok(())
}

/// Whether `q` is a power of the characteristic of `ring`.
pub fn matches_characteristic(q: usize, ring: &FiniteCommRing) -> bool {
    match (prime_power(q as u64), ring.prime_field_order()) {
        (Some((p, _)), Some(r)) => p == r,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog::*;
    use crate::ring::prime_field;

    fn f(p: u64) -> Arc<FiniteCommRing> {
        Arc::new(prime_field(p).unwrap())
    }

    #[test]
    fn classes() {
        let r2 = prime_field(2).unwrap();
        let r3 = prime_field(3).unwrap();
        assert_eq!(group_class(&cyclic(8).unwrap(), &r2).unwrap(), GroupClass::Abelian);
        assert_eq!(group_class(&quaternion8(), &r2).unwrap(), GroupClass::ClassTwoExponentFour);
        assert_eq!(group_class(&heisenberg(3).unwrap(), &r3).unwrap(), GroupClass::ClassTwoExponentP);
        assert!(matches!(group_class(&modular_p3(3).unwrap(), &r3), Err(Error::UnsupportedClass(_))));
        assert!(matches!(group_class(&cyclic(3).unwrap(), &r2), Err(Error::UnsupportedClass(_))));
        assert!(matches!(group_class(&dihedral(8).unwrap(), &r2), Err(Error::UnsupportedClass(_))));
    }

    #[test]
    fn c4_witnesses() {
        let l = Limits::default();
        let ws = hereditary_certificates(&cyclic(4).unwrap(), f(2), &l).unwrap();
        let routes: Vec<Route> = ws.iter().map(|w| w.route).collect();
        assert_eq!(routes, vec![Route::Trivial, Route::Cyclic, Route::Cyclic]);
    }

    #[test]
    fn heisenberg_witness() {
        let l = Limits::default();
        let g = heisenberg(3).unwrap();
        let ws = hereditary_certificates(&g, f(3), &l).unwrap();
        assert_eq!(ws.len(), 4);
        let top = ws.last().unwrap();
        assert_eq!(top.route, Route::Baer);
        assert_eq!(top.witness.n, 1);
        assert_eq!(top.witness.b_label(), "F3");
        assert_eq!(top.witness.a[0].0.units.order(), 54);
        let c27 = cyclic(27).unwrap();
        assert_eq!(recovered_hom_count(&c27, &top.witness, &l).unwrap(), count_homs(&c27, &g, &l).unwrap());
        assert_eq!(recovered_hom_count(&trivial(), &top.witness, &l).unwrap(), Count::one());
    }

    #[test]
    fn c5_recovered_count() {
        let l = Limits::default();
        let ws = hereditary_certificates(&cyclic(5).unwrap(), f(5), &l).unwrap();
        let w = &ws[1].witness;
        let c = recovered_counts(&cyclic(5).unwrap(), w, &l).unwrap();
        assert_eq!((c.hom_a, c.hom_b, c.recovered), (Count::from(625u32), Count::one(), Count::from(5u32)));
    }

    #[test]
    fn corrupted_witness_is_reported() {
        let l = Limits::default();
        let ws = hereditary_certificates(&cyclic(5).unwrap(), f(5), &l).unwrap();
        let mut w = ws[1].witness.clone();
        w.n = 3;
        assert!(matches!(recovered_hom_count(&cyclic(5).unwrap(), &w, &l), Err(Error::NotPerfectPower(..))));
        std::mem::swap(&mut w.a, &mut w.b);
        assert!(matches!(recovered_hom_count(&cyclic(5).unwrap(), &w, &l), Err(Error::NonDivisible(..))));
    }

    #[test]
    fn pipeline_examples() {
        let l = Limits::default();
        let c8 = cyclic(8).unwrap();
        let r = crate::group::group_from_table(&c8.relabeled(&[0, 3, 2, 1, 4, 7, 6, 5]).unwrap().rows(), "C8'").unwrap();
        assert!(matches!(criterion_check(&c8, &r, f(2), &l).unwrap().verdict, Verdict::IsomorphicCertified(_)));
        let ab = abelian(&[4, 2], &l).unwrap();
        assert!(matches!(criterion_check(&c8, &ab, f(2), &l).unwrap().verdict, Verdict::AlgebrasDistinguished(_)));
        let rep = criterion_check(&heisenberg(3).unwrap(), &modular_p3(3).unwrap(), f(3), &l).unwrap();
        assert!(matches!(rep.verdict, Verdict::AlgebrasDistinguished(_)));
        let rep = criterion_check(&c8, &cyclic(4).unwrap(), f(2), &l).unwrap();
        assert!(matches!(rep.verdict, Verdict::Inconclusive(_)));
        let rep = criterion_check(&modular_p3(3).unwrap(), &heisenberg(3).unwrap(), f(3), &l).unwrap();
        assert!(matches!(rep.verdict, Verdict::Inconclusive(_)));
    }
}
