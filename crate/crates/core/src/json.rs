//! Serializable forms of groups, algebras and every report the tool emits.
//! Big integers are decimal strings; rationals are `"num/den"`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::FiniteAlgebra;
use crate::constructions::{PipelineReport, RecoveredCounts, Verdict};
use crate::grothendieck::{AlgebraEntry, Certificate, HereditaryReport, HereditaryWitness, Membership};
use crate::group::subgroups::Subgroup;
use crate::group::{group_from_table, FiniteGroup, GroupOps};
use crate::homcount::{HomCountProfile, LovaszVerdict};
use crate::ring::{ring_make, RingSpec};
use crate::{Error, LVector, Limits, Rational, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    pub label: String,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

impl GroupJson {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupJson { label: g.label().to_string(), order: g.order(), table: g.rows() }
    }

    pub fn to_group(&self) -> Result<FiniteGroup> {
        if self.table.len() != self.order {
            return Err(Error::MalformedTable(format!("order {} but {} rows", self.order, self.table.len())));
        }
        group_from_table(&self.table, &self.label)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupJson {
    pub group: String,
    pub members: Vec<usize>,
}

impl SubgroupJson {
    pub fn from_subgroup(s: &Subgroup<'_>) -> Self {
        SubgroupJson { group: s.parent.label().to_string(), members: s.elements() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub ring: RingSpec,
    pub dim: usize,
    pub constants: Vec<Vec<Vec<u32>>>,
    #[serde(default)]
    pub one: Option<Vec<u32>>,
    pub label: String,
}

impl AlgebraJson {
    pub fn from_algebra(a: &FiniteAlgebra) -> Self {
        AlgebraJson {
            ring: a.ring().spec().clone(),
            dim: a.dim(),
            constants: a.constants(),
            one: a.one().map(|o| o.to_vec()),
            label: a.label().to_string(),
        }
    }

    pub fn to_algebra(&self) -> Result<FiniteAlgebra> {
        let ring = Arc::new(ring_make(&self.ring)?);
        FiniteAlgebra::new(ring, self.dim, &self.constants, self.one.clone(), self.label.clone())
    }
}

pub fn rational_to_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn rational_from_str(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n = n.trim().parse().map_err(|_| bad())?;
    let d: num_bigint::BigInt = d.trim().parse().map_err(|_| bad())?;
    if d == 0.into() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileEntryJson {
    pub subgroup: String,
    pub count: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileJson {
    pub source: String,
    pub entries: Vec<ProfileEntryJson>,
}

impl ProfileJson {
    pub fn from_profile(p: &HomCountProfile) -> Self {
        ProfileJson {
            source: p.source.clone(),
            entries: p
                .entries
                .iter()
                .map(|(k, c)| ProfileEntryJson { subgroup: k.clone(), count: c.to_string() })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", deny_unknown_fields)]
pub enum LovaszJson {
    Isomorphic { map: Vec<usize> },
    Distinguished { subgroup: GroupJson, count_g: String, count_h: String },
    OrderMismatch,
}

impl LovaszJson {
    pub fn from_verdict(v: &LovaszVerdict) -> Self {
        match v {
            LovaszVerdict::Isomorphic(map) => LovaszJson::Isomorphic { map: map.clone() },
            LovaszVerdict::Distinguished { subgroup, count_g, count_h } => LovaszJson::Distinguished {
                subgroup: GroupJson::from_group(subgroup),
                count_g: count_g.to_string(),
                count_h: count_h.to_string(),
            },
            LovaszVerdict::OrderMismatch => LovaszJson::OrderMismatch,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub q: String,
    pub algebra: AlgebraJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateJson {
    pub ring: String,
    pub target: String,
    pub terms: Vec<TermJson>,
}

impl CertificateJson {
    pub fn from_certificate(c: &Certificate) -> Self {
        CertificateJson {
            ring: c.ring.clone(),
            target: c.target_key.clone(),
            terms: c
                .terms
                .iter()
                .map(|(q, e)| TermJson { q: rational_to_string(q), algebra: AlgebraJson::from_algebra(&e.algebra) })
                .collect(),
        }
    }

    /// Rebuilds the terms with freshly computed unit groups; `target` is
    /// the class vector of the group the certificate is for.
    pub fn to_certificate(&self, target: LVector, limits: &Limits) -> Result<Certificate> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((rational_from_str(&t.q)?, AlgebraEntry::new(t.algebra.to_algebra()?, limits)?)))
            .collect::<Result<_>>()?;
        Ok(Certificate { ring: self.ring.clone(), target_key: self.target.clone(), target, terms })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorJson {
    pub algebra: AlgebraJson,
    pub multiplicity: u32,
}

/// `A` and `B` are direct products of the listed factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessJson {
    #[serde(rename = "K")]
    pub k: GroupJson,
    pub ring: String,
    #[serde(rename = "A")]
    pub a: Vec<FactorJson>,
    #[serde(rename = "B")]
    pub b: Vec<FactorJson>,
    pub n: u32,
}

fn factors_json(fs: &[(AlgebraEntry, u32)]) -> Vec<FactorJson> {
    fs.iter().map(|(e, m)| FactorJson { algebra: AlgebraJson::from_algebra(&e.algebra), multiplicity: *m }).collect()
}

fn factors_from(fs: &[FactorJson], limits: &Limits) -> Result<Vec<(AlgebraEntry, u32)>> {
    fs.iter().map(|f| Ok((AlgebraEntry::new(f.algebra.to_algebra()?, limits)?, f.multiplicity))).collect()
}

impl WitnessJson {
    pub fn from_witness(w: &HereditaryWitness) -> Self {
        WitnessJson { k: GroupJson::from_group(&w.k), ring: w.ring.clone(), a: factors_json(&w.a), b: factors_json(&w.b), n: w.n }
    }

    pub fn to_witness(&self, limits: &Limits) -> Result<HereditaryWitness> {
        Ok(HereditaryWitness {
            k: self.k.to_group()?,
            ring: self.ring.clone(),
            a: factors_from(&self.a, limits)?,
            b: factors_from(&self.b, limits)?,
            n: self.n,
        })
    }

    /// SHA-256 of the compact JSON encoding.
    pub fn content_hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("witness serializes");
        hex::encode(Sha256::digest(&bytes))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", deny_unknown_fields)]
pub enum MembershipJson {
    Certified { certificate: CertificateJson },
    NotInSpan { residual: BTreeMap<String, String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HereditaryRowJson {
    pub subgroup: String,
    pub membership: MembershipJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HereditaryJson {
    pub group: String,
    pub ring: String,
    pub hereditary: bool,
    pub rows: Vec<HereditaryRowJson>,
}

/// `keys[i]` names registry class `i` in residuals.
pub fn membership_json(m: &Membership, keys: &dyn Fn(usize) -> String) -> MembershipJson {
    match m {
        Membership::Certified(c) => MembershipJson::Certified { certificate: CertificateJson::from_certificate(c) },
        Membership::NotInSpan { residual } => MembershipJson::NotInSpan {
            residual: residual.iter().map(|(i, q)| (keys(i), rational_to_string(q))).collect(),
        },
    }
}

impl HereditaryJson {
    pub fn from_report(r: &HereditaryReport, keys: &dyn Fn(usize) -> String) -> Self {
        HereditaryJson {
            group: r.group.clone(),
            ring: r.ring.clone(),
            hereditary: r.is_hereditary(),
            rows: r
                .rows
                .iter()
                .map(|(k, m)| HereditaryRowJson {
                    subgroup: crate::group::invariants::structure_invariants(k).key(),
                    membership: membership_json(m, keys),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CountsJson {
    pub hom_a: String,
    pub hom_b: String,
    pub recovered: String,
}

impl From<&RecoveredCounts> for CountsJson {
    fn from(c: &RecoveredCounts) -> Self {
        CountsJson { hom_a: c.hom_a.to_string(), hom_b: c.hom_b.to_string(), recovered: c.recovered.to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RowJson {
    pub subgroup: String,
    /// Content hash of the witness in `witnesses`.
    pub witness: String,
    #[serde(rename = "G")]
    pub g: CountsJson,
    #[serde(rename = "H")]
    pub h: CountsJson,
    pub matched: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum VerdictJson {
    IsomorphicCertified { map: Vec<usize> },
    AlgebrasDistinguished { row: usize },
    Inconclusive { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportJson {
    #[serde(rename = "G")]
    pub g: String,
    #[serde(rename = "H")]
    pub h: String,
    pub ring: String,
    pub rows: Vec<RowJson>,
    pub verdict: VerdictJson,
    /// Witness store keyed by content hash.
    pub witnesses: BTreeMap<String, WitnessJson>,
}

impl ReportJson {
    pub fn from_report(r: &PipelineReport) -> Self {
        let mut witnesses = BTreeMap::new();
        let rows = r
            .rows
            .iter()
            .map(|row| {
                let w = WitnessJson::from_witness(&row.witness);
                let hash = w.content_hash();
                witnesses.insert(hash.clone(), w);
                RowJson {
                    subgroup: row.subgroup.clone(),
                    witness: hash,
                    g: (&row.g).into(),
                    h: (&row.h).into(),
                    matched: row.matched,
                }
            })
            .collect();
        let verdict = match &r.verdict {
            Verdict::IsomorphicCertified(map) => VerdictJson::IsomorphicCertified { map: map.clone() },
            Verdict::AlgebrasDistinguished(row) => VerdictJson::AlgebrasDistinguished { row: *row },
            Verdict::Inconclusive(reason) => VerdictJson::Inconclusive { reason: reason.clone() },
        };
        ReportJson { g: r.g.clone(), h: r.h.clone(), ring: r.ring.clone(), rows, verdict, witnesses }
    }
}
