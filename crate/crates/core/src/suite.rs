//! The end-to-end acceptance checks, shared by the test harness and the
//! `verify-all` command.

use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use crate::algebra::identities::{unit_iff_scalar_unit, unitization_units_split};
use crate::algebra::{augmentation_ideal, group_algebra, quasi_regular_group, ring_as_algebra, unitization, zero_algebra, FiniteAlgebra};
use crate::constructions::{
    baer_algebra, bovdi_search, criterion_check, quasi_regular_witness, recovered_hom_count, Verdict,
};
use crate::grothendieck::{
    certificate_to_witness, cyclic_certificate, solve_membership, verify_witness, AlgebraEntry, ClassRegistry,
    HereditaryWitness, Membership, UnitsSummary,
};
use crate::group::catalog::{abelian, cyclic, dihedral, heisenberg, quaternion8, small_catalog, small_p_groups};
use crate::group::iso::is_isomorphic;
use crate::group::ops::is_isomorphism_map;
use crate::group::{direct_product, FiniteGroup, GroupOps};
use crate::homcount::{
    count_algebra_homs_bruteforce, count_epis_bruteforce, count_epis_inclusion_exclusion, count_homs, lovasz_compare,
    LovaszVerdict,
};
use crate::ring::{prime_field, FiniteCommRing};
use crate::{Limits, Rational, Result};

pub const CRITERIA: [(u32, &str); 12] = [
    (1, "units of F5[C5] and the membership of [C5]"),
    (2, "epimorphism counts: inclusion-exclusion vs brute force"),
    (3, "subgroup hom counts separate non-isomorphic groups"),
    (4, "algebra homs from F2[G] vs group homs into units"),
    (5, "units of unitizations of quasi-regular algebras"),
    (6, "cyclic p-group certificates and witnesses"),
    (7, "half-commutator algebras for Heisenberg groups"),
    (8, "radical F2-algebras for D4 and Q8"),
    (9, "abelian groups of order 8 and 9"),
    (10, "Heisenberg group of order 27 against all groups of order 27"),
    (11, "D4 and Q8 against all groups of order 8"),
    (12, "recovered hom counts equal direct hom counts"),
];

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {}: {} ({:.1}s) {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

pub fn run(id: u32, limits: &Limits) -> Outcome {
    let title = CRITERIA.iter().find(|c| c.0 == id).map_or("unknown criterion", |c| c.1);
    let start = Instant::now();
    let res = match id {
        1 => c1(limits),
        2 => c2(limits),
        3 => c3(limits),
        4 => c4(limits),
        5 => c5(limits),
        6 => c6(limits),
        7 => c7(limits),
        8 => c8(limits),
        9 => c9(limits),
        10 => c10(limits),
        11 => c11(limits),
        12 => c12(limits),
        _ => Err(format!("no criterion {id}")),
    };
    let (passed, detail) = match res {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Outcome { id, title, passed, detail, elapsed: start.elapsed() }
}

pub fn run_all(limits: &Limits) -> Vec<Outcome> {
    CRITERIA.iter().map(|&(id, _)| run(id, limits)).collect()
}

fn field(p: u64) -> std::result::Result<Arc<FiniteCommRing>, String> {
    Ok(Arc::new(lift(prime_field(p))?))
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Reverses the non-identity elements.
pub fn relabel(g: &FiniteGroup) -> Result<FiniteGroup> {
    let n = g.order();
    let perm: Vec<usize> = (0..n).map(|i| if i == 0 { 0 } else { n - i }).collect();
    Ok(g.relabeled(&perm)?.with_label(format!("{}'", g.label())))
}

fn c1(l: &Limits) -> Check {
    let r = field(5)?;
    let c5 = lift(cyclic(5))?;
    let fc = lift(AlgebraEntry::new(lift(group_algebra(r.clone(), &c5, l))?, l))?;
    ensure(fc.units == UnitsSummary::Abelian(vec![4, 5, 5, 5, 5]), || format!("units of F5[C5]: {:?}", fc.units))?;
    let fp = lift(AlgebraEntry::new(ring_as_algebra(r.clone()), l))?;
    let mut reg = ClassRegistry::new(l);
    match lift(solve_membership(&mut reg, &c5, &r, &[fp, fc]))? {
        Membership::Certified(cert) => {
            let a = cert.coefficient("F5[C5]").cloned();
            let b = cert.coefficient("F5").cloned();
            ensure(a == Some(q(1, 4)) && b == Some(q(-1, 4)), || format!("coefficients {a:?}, {b:?}"))?;
            Ok("[C5] = 1/4 [F5[C5]*] - 1/4 [F5*]".into())
        }
        Membership::NotInSpan { .. } => Err("C5 not in span".into()),
    }
}

fn c2(l: &Limits) -> Check {
    let cat = small_catalog(l);
    let mut pairs = 0;
    for (_, g) in &cat {
        for (_, h) in &cat {
            let ie = lift(count_epis_inclusion_exclusion(g, h, l))?;
            let bf = lift(count_epis_bruteforce(g, h, l))?;
            ensure(ie == bf, || format!("|Epi({}, {})|: {ie} vs {bf}", g.label(), h.label()))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} ordered pairs agree"))
}

fn c3(l: &Limits) -> Check {
    let cat = small_catalog(l);
    let (mut distinguished, mut certified) = (0, 0);
    for (i, (_, g)) in cat.iter().enumerate() {
        for (_, h) in cat.iter().skip(i + 1).filter(|(_, h)| h.order() == g.order()) {
            ensure(lift(is_isomorphic(g, h, l))?.is_none(), || format!("{} = {}", g.label(), h.label()))?;
            match lift(lovasz_compare(g, h, l))? {
                LovaszVerdict::Distinguished { subgroup, count_g, count_h } => {
                    let (a, b) = (lift(count_homs(g, &subgroup, l))?, lift(count_homs(h, &subgroup, l))?);
                    ensure(a == count_g && b == count_h && a != b, || format!("bad witness for {} vs {}", g.label(), h.label()))?;
                    distinguished += 1;
                }
                other => return Err(format!("{} vs {}: {other:?}", g.label(), h.label())),
            }
        }
        let r = lift(relabel(g))?;
        match lift(lovasz_compare(g, &r, l))? {
            LovaszVerdict::Isomorphic(map) => {
                ensure(is_isomorphism_map(g, &r, |x| map[x]), || format!("map for {} does not verify", g.label()))?;
                certified += 1;
            }
            other => return Err(format!("{} vs relabeling: {other:?}", g.label())),
        }
    }
    Ok(format!("{distinguished} pairs distinguished, {certified} relabelings certified"))
}

fn c4(l: &Limits) -> Check {
    let r = field(2)?;
    let groups = [lift(cyclic(2))?, lift(cyclic(4))?, lift(abelian(&[2, 2], l))?];
    let targets = [
        ring_as_algebra(r.clone()),
        lift(group_algebra(r.clone(), &groups[0], l))?,
        unitization(&zero_algebra(r.clone(), 1)),
    ];
    let mut n = 0;
    for g in &groups {
        let src = lift(group_algebra(r.clone(), g, l))?;
        for a in &targets {
            let alg = lift(count_algebra_homs_bruteforce(&src, a, l))?;
            let units = lift(crate::algebra::unit_group(a, l))?;
            let grp = lift(count_homs(g, &units, l))?;
            ensure(alg == grp, || format!("{} -> {}: {alg} vs {grp}", src.label(), a.label()))?;
            n += 1;
        }
    }
    Ok(format!("{n} pairs agree"))
}

/// Quasi-regular algebras used by criterion 5, with the group each circle
/// group should be isomorphic to when one is prescribed.
pub fn quasi_regular_pool(l: &Limits) -> Result<Vec<(FiniteAlgebra, Option<FiniteGroup>)>> {
    let mut out = Vec::new();
    for (p, n) in [(2u64, 1u32), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1)] {
        let g = cyclic(p.pow(n) as usize)?;
        out.push((augmentation_ideal(Arc::new(prime_field(p)?), &g, l)?, None));
    }
    for p in [3, 5] {
        let g = heisenberg(p)?;
        out.push((baer_algebra(&g, l)?.algebra, Some(g)));
    }
    for g in [dihedral(4)?, quaternion8()] {
        out.push((bovdi_search(&g, 3, l.algebra_search_budget, l)?.algebra, Some(g)));
    }
    Ok(out)
}

fn c5(l: &Limits) -> Check {
    let pool = lift(quasi_regular_pool(l))?;
    for (a, g) in &pool {
        let qa = lift(quasi_regular_group(a, l))?;
        ensure(Some(qa.order() as u64) == a.element_count(), || format!("{} is not quasi-regular", a.label()))?;
        if let Some(g) = g {
            let t = lift(qa.to_table(l))?;
            ensure(lift(is_isomorphic(&t, g, l))?.is_some(), || format!("Q({}) is not {}", a.label(), g.label()))?;
        }
        ensure(lift(unit_iff_scalar_unit(a, l))?, || format!("unit criterion fails for {}", a.label()))?;
        ensure(lift(unitization_units_split(a, l))?, || format!("units of {}^un do not split", a.label()))?;
    }
    Ok(format!("{} algebras", pool.len()))
}

pub const CYCLIC_CASES: [(u64, u32); 8] = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1), (7, 1)];

/// Witnesses for `[C_{p^n}]` in every supported case, as `(p, witness)`.
pub fn cyclic_witnesses(l: &Limits) -> Result<Vec<(u64, HereditaryWitness)>> {
    let mut out = Vec::new();
    let mut reg = ClassRegistry::new(l);
    for (p, n) in CYCLIC_CASES {
        let r = Arc::new(prime_field(p)?);
        let layers = cyclic_certificate(&mut reg, r.clone(), n, l)?;
        let top = layers.last().expect("n >= 1");
        let w = certificate_to_witness(&top.certificate, &cyclic(p.pow(n) as usize)?, r, l)?;
        out.push((p, w));
    }
    Ok(out)
}

fn c6(l: &Limits) -> Check {
    let mut reg = ClassRegistry::new(l);
    let mut layers_checked = 0;
    for (p, n) in CYCLIC_CASES {
        let r = field(p)?;
        let layers = lift(cyclic_certificate(&mut reg, r.clone(), n, l))?;
        ensure(layers.len() == n as usize, || format!("({p},{n}): {} layers", layers.len()))?;
        for layer in &layers {
            ensure(*layer.multiplicities.last().unwrap() >= 1, || format!("({p},{}) a_n = 0", layer.i))?;
            let k = lift(cyclic(p.pow(layer.i) as usize))?;
            let w = lift(certificate_to_witness(&layer.certificate, &k, r.clone(), l))?;
            ensure(lift(verify_witness(&w, l))?, || format!("witness for C{} fails", p.pow(layer.i)))?;
            layers_checked += 1;
        }
    }
    Ok(format!("{layers_checked} layers verified"))
}

/// The half-commutator witnesses for the Heisenberg groups mod 3 and 5.
pub fn baer_witnesses(l: &Limits) -> Result<Vec<(u64, HereditaryWitness)>> {
    let mut reg = ClassRegistry::new(l);
    let mut out = Vec::new();
    for p in [3u64, 5] {
        let g = heisenberg(p as usize)?;
        let b = baer_algebra(&g, l)?;
        out.push((p, quasi_regular_witness(&mut reg, &b.algebra, &g, l)?.1));
    }
    Ok(out)
}

fn c7(l: &Limits) -> Check {
    let mut reg = ClassRegistry::new(l);
    for p in [3usize, 5] {
        let g = lift(heisenberg(p))?;
        let b = lift(baer_algebra(&g, l))?;
        let qa = lift(quasi_regular_group(&b.algebra, l))?;
        ensure(
            is_isomorphism_map(&g, &qa, |x| qa.index_of(&b.coords[x]).unwrap_or(usize::MAX)),
            || format!("Q(A) != heisenberg {p} elementwise"),
        )?;
        let (_, w) = lift(quasi_regular_witness(&mut reg, &b.algebra, &g, l))?;
        ensure(w.n == 1 && w.b_label() == format!("F{p}"), || format!("witness n = {}, B = {}", w.n, w.b_label()))?;
    }
    Ok("heisenberg 3 and 5".into())
}

pub fn bovdi_witnesses(l: &Limits) -> Result<Vec<(u64, HereditaryWitness)>> {
    let mut reg = ClassRegistry::new(l);
    let mut out = Vec::new();
    for g in [dihedral(4)?, quaternion8()] {
        let hit = bovdi_search(&g, 3, l.algebra_search_budget, l)?;
        out.push((2, quasi_regular_witness(&mut reg, &hit.algebra, &g, l)?.1));
    }
    Ok(out)
}

fn c8(l: &Limits) -> Check {
    let mut explored = Vec::new();
    for g in [lift(dihedral(4))?, quaternion8()] {
        let hit = lift(bovdi_search(&g, 3, l.algebra_search_budget, l))?;
        let qa = lift(quasi_regular_group(&hit.algebra, l))?;
        ensure(is_isomorphism_map(&g, &qa, |x| hit.map[x]), || format!("map for {} does not verify", g.label()))?;
        explored.push(format!("{} after {} nodes", g.label(), hit.explored));
    }
    Ok(explored.join(", "))
}

/// Every group is compared with every other and with its own relabeling.
fn pipeline_sweep(gs: &[FiniteGroup], hs: &[FiniteGroup], p: u64, l: &Limits) -> Check {
    let r = field(p)?;
    let mut n = 0;
    for g in gs {
        for h in hs.iter().cloned().chain([lift(relabel(g))?]) {
            let iso = lift(is_isomorphic(g, &h, l))?.is_some();
            let rep = lift(criterion_check(g, &h, r.clone(), l))?;
            match (&rep.verdict, iso) {
                (Verdict::IsomorphicCertified(map), true) => {
                    ensure(is_isomorphism_map(g, &h, |x| map[x]), || "unverified map".into())?
                }
                (Verdict::AlgebrasDistinguished(i), false) => {
                    let row = &rep.rows[*i];
                    ensure(row.g.recovered != row.h.recovered, || "distinguishing row matches".into())?
                }
                (v, _) => return Err(format!("{} vs {}: {v:?}", g.label(), h.label())),
            }
            n += 1;
        }
    }
    Ok(format!("{n} comparisons"))
}

fn c9(l: &Limits) -> Check {
    let eight = [lift(cyclic(8))?, lift(abelian(&[4, 2], l))?, lift(abelian(&[2, 2, 2], l))?];
    let nine = [lift(cyclic(9))?, lift(abelian(&[3, 3], l))?];
    let a = pipeline_sweep(&eight, &eight, 2, l)?;
    let b = pipeline_sweep(&nine, &nine, 3, l)?;
    Ok(format!("order 8: {a}; order 9: {b}"))
}

fn order_n(p: usize, n: usize, l: &Limits) -> Vec<FiniteGroup> {
    small_p_groups(p, n, l).into_iter().map(|(_, g)| g).filter(|g| g.order() == n).collect()
}

fn c10(l: &Limits) -> Check {
    let all = order_n(3, 27, l);
    ensure(all.len() == 5, || format!("{} groups of order 27", all.len()))?;
    pipeline_sweep(&[lift(heisenberg(3))?], &all, 3, l)
}

fn c11(l: &Limits) -> Check {
    let all = order_n(2, 8, l);
    ensure(all.len() == 5, || format!("{} groups of order 8", all.len()))?;
    pipeline_sweep(&[lift(dihedral(4))?, quaternion8()], &all, 2, l)
}

fn c12(l: &Limits) -> Check {
    let mut ws = lift(cyclic_witnesses(l))?;
    ws.extend(lift(baer_witnesses(l))?);
    ws.extend(lift(bovdi_witnesses(l))?);
    let mut n = 0;
    for (p, w) in &ws {
        for (_, g) in small_p_groups(*p as usize, 27, l) {
            let rec = lift(recovered_hom_count(&g, w, l))?;
            let direct = lift(count_homs(&g, &w.k, l))?;
            ensure(rec == direct, || format!("|Hom({}, {})|: {rec} vs {direct}", g.label(), w.k.label()))?;
            n += 1;
        }
    }
    // products recovered multiplicatively agree too
    let (c4, c2) = (lift(cyclic(4))?, lift(cyclic(2))?);
    let prod = lift(direct_product(&c4, &c2, l))?;
    let w4 = ws.iter().find(|(_, w)| w.k.order() == 4).map(|x| &x.1).ok_or("no C4 witness")?;
    let w2 = ws.iter().find(|(_, w)| w.k.order() == 2).map(|x| &x.1).ok_or("no C2 witness")?;
    for (_, g) in small_p_groups(2, 16, l) {
        let rec = lift(recovered_hom_count(&g, w4, l))? * lift(recovered_hom_count(&g, w2, l))?;
        ensure(rec == lift(count_homs(&g, &prod, l))?, || format!("product count for {}", g.label()))?;
    }
    Ok(format!("{} witnesses, {n} identities", ws.len()))
}
