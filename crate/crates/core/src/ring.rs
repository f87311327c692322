//! Finite commutative unital rings given by addition and multiplication
//! tables. Zero is always element `0` and one is element `1`.

use serde::{Deserialize, Serialize};

use crate::group::ops::is_prime;
use crate::group::{tabulate, FiniteGroup, GroupOps};
use crate::{Error, Limits, Result};

/// How a ring is specified on the command line or in JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", deny_unknown_fields)]
pub enum RingSpec {
    Fp { p: u64 },
    Zn { n: u64 },
    #[serde(rename = "tables")]
    Tables {
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        #[serde(default)]
        label: Option<String>,
    },
}

impl RingSpec {
    /// Parses `Fp:5` or `Zn:4`.
    pub fn parse(s: &str) -> Result<RingSpec> {
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("ring `{s}` should look like Fp:5 or Zn:4")))?;
        let v: u64 = arg
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad ring parameter `{arg}`")))?;
        match kind.trim() {
            "Fp" | "F" => Ok(RingSpec::Fp { p: v }),
            "Zn" | "Z" => Ok(RingSpec::Zn { n: v }),
            other => Err(Error::UnknownName(other.to_string())),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteCommRing {
    label: String,
    m: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inverse: Vec<Option<u32>>,
    spec: RingSpec,
}

impl std::fmt::Debug for FiniteCommRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteCommRing({})", self.label)
    }
}

pub fn ring_make(spec: &RingSpec) -> Result<FiniteCommRing> {
    match spec {
        RingSpec::Fp { p } => {
            if !is_prime(*p) {
                return Err(Error::NotPrime(*p));
            }
            modular(*p, format!("F{p}"), spec.clone())
        }
        RingSpec::Zn { n } => {
            if *n < 2 {
                return Err(Error::RingAxiomViolation(format!("Z/{n} has 0 = 1")));
            }
            modular(*n, format!("Z{n}"), spec.clone())
        }
        RingSpec::Tables { add, mul, label } => {
            from_tables(add, mul, label.clone().unwrap_or_else(|| format!("R{}", add.len())), spec.clone())
        }
    }
}

/// Shorthand for the prime field of order `p`.
pub fn prime_field(p: u64) -> Result<FiniteCommRing> {
    ring_make(&RingSpec::Fp { p })
}

fn modular(n: u64, label: String, spec: RingSpec) -> Result<FiniteCommRing> {
    if n > 1 << 16 {
        return Err(Error::bound("ring size", n, 1u64 << 16));
    }
    let m = n as usize;
    let add = (0..m * m).map(|ab| ((ab / m + ab % m) % m) as u32).collect();
    let mul = (0..m * m).map(|ab| ((ab / m) * (ab % m) % m) as u32).collect();
    Ok(FiniteCommRing::finish(label, m, add, mul, spec))
}

fn from_tables(add: &[Vec<usize>], mul: &[Vec<usize>], label: String, spec: RingSpec) -> Result<FiniteCommRing> {
    let m = add.len();
    let bad = |s: String| Err(Error::RingAxiomViolation(s));
    if m < 2 {
        return bad("a ring with one element has 0 = 1".into());
    }
    if m > 256 {
        return Err(Error::bound("explicit ring size", m, 256));
    }
    if mul.len() != m || add.iter().chain(mul).any(|r| r.len() != m || r.iter().any(|&v| v >= m)) {
        return bad(format!("tables must be {m}x{m} with entries in [0,{m})"));
    }
    let zero = (0..m).find(|&z| (0..m).all(|a| add[z][a] == a && add[a][z] == a));
    let Some(zero) = zero else { return bad("no additive identity".into()) };
    let one = (0..m).find(|&u| (0..m).all(|a| mul[u][a] == a && mul[a][u] == a));
    let Some(one) = one else { return bad("no multiplicative identity".into()) };
    if zero == one {
        return bad("0 = 1".into());
    }
    for a in 0..m {
        if !(0..m).any(|b| add[a][b] == zero) {
            return bad(format!("element {a} has no additive inverse"));
        }
        for b in 0..m {
            if add[a][b] != add[b][a] {
                return bad(format!("addition not commutative at ({a},{b})"));
            }
            if mul[a][b] != mul[b][a] {
                return bad(format!("multiplication not commutative at ({a},{b})"));
            }
            for c in 0..m {
                if add[add[a][b]][c] != add[a][add[b][c]] {
                    return bad(format!("addition not associative at ({a},{b},{c})"));
                }
                if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                    return bad(format!("multiplication not associative at ({a},{b},{c})"));
                }
                if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]] {
                    return bad(format!("distributivity fails at ({a},{b},{c})"));
                }
            }
        }
    }
    // relabel so that zero = 0 and one = 1
    let mut perm: Vec<usize> = vec![zero, one];
    perm.extend((0..m).filter(|&x| x != zero && x != one));
    let mut pos = vec![0; m];
    for (i, &x) in perm.iter().enumerate() {
        pos[x] = i;
    }
    let remap = |t: &[Vec<usize>]| -> Vec<u32> {
        (0..m * m).map(|ab| pos[t[perm[ab / m]][perm[ab % m]]] as u32).collect()
    };
    Ok(FiniteCommRing::finish(label, m, remap(add), remap(mul), spec))
}

impl FiniteCommRing {
    fn finish(label: String, m: usize, add: Vec<u32>, mul: Vec<u32>, spec: RingSpec) -> Self {
        let neg = (0..m)
            .map(|a| (0..m).find(|&b| add[a * m + b] == 0).expect("additive inverse") as u32)
            .collect();
        let inverse = (0..m)
            .map(|a| (0..m).find(|&b| mul[a * m + b] == 1).map(|b| b as u32))
            .collect();
        FiniteCommRing { label, m, add, mul, neg, inverse, spec }
    }

    pub fn label(&self) -> &str {
        &self.label
    }
    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }
    pub fn size(&self) -> usize {
        self.m
    }
    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.m + b as usize]
    }
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.m + b as usize]
    }
    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }
    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }
    pub fn inv(&self, a: u32) -> Option<u32> {
        self.inverse[a as usize]
    }
    pub fn is_unit(&self, a: u32) -> bool {
        self.inverse[a as usize].is_some()
    }

    /// The image of the integer `k` (`k * 1`).
    pub fn from_int(&self, k: i64) -> u32 {
        let mut acc = 0;
        for _ in 0..k.unsigned_abs() {
            acc = self.add(acc, 1);
        }
        if k < 0 {
            self.neg(acc)
        } else {
            acc
        }
    }

    pub fn is_field(&self) -> bool {
        (1..self.m).all(|a| self.inverse[a].is_some())
    }

    /// `Some(p)` when this is the prime field of order `p`.
    pub fn prime_field_order(&self) -> Option<u64> {
        (self.is_field() && is_prime(self.m as u64)).then_some(self.m as u64)
    }

    pub fn units(&self) -> Vec<u32> {
        (0..self.m as u32).filter(|&a| self.is_unit(a)).collect()
    }

    /// `R*` as a table; element `i` is the `i`-th unit in ascending order.
    pub fn unit_group(&self, limits: &Limits) -> Result<FiniteGroup> {
        let units = self.units();
        let ops = RingUnits { ring: self, units: &units };
        tabulate(&ops, format!("{}*", self.label), limits)
    }
}

struct RingUnits<'a> {
    ring: &'a FiniteCommRing,
    units: &'a [u32],
}

impl GroupOps for RingUnits<'_> {
    fn order(&self) -> usize {
        self.units.len()
    }
    fn identity(&self) -> usize {
        self.units.binary_search(&1).expect("1 is a unit")
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        let v = self.ring.mul(self.units[a], self.units[b]);
        self.units.binary_search(&v).expect("units are closed")
    }
    fn inv(&self, a: usize) -> usize {
        let v = self.ring.inv(self.units[a]).expect("unit");
        self.units.binary_search(&v).expect("units are closed")
    }
    fn known_abelian(&self) -> Option<bool> {
        Some(true)
    }
}
