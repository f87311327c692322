//! Class-two groups of odd prime exponent as radical algebras on the same
//! underlying set, via half-commutators.

use std::sync::Arc;

use super::{log_order, p_group_class};
use crate::algebra::{is_quasi_regular, FiniteAlgebra};
use crate::group::{FiniteGroup, GroupOps};
use crate::ring::prime_field;
use crate::{Error, Limits, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommutatorConvention {
    /// `m(g, h) = [g, h]^((p+1)/2)` with `[g, h] = g^-1 h^-1 g h`.
    GH,
    /// `m(g, h) = [h, g]^((p+1)/2)`.
    HG,
}

/// The algebra together with the identification of its elements with `G`.
#[derive(Debug, Clone)]
pub struct BaerAlgebra {
    pub algebra: FiniteAlgebra,
    pub convention: CommutatorConvention,
    /// Group elements chosen as the additive basis.
    pub basis: Vec<usize>,
    /// `coords[g]`: coordinates of group element `g`.
    pub coords: Vec<Vec<u32>>,
}

impl BaerAlgebra {
    pub fn element_of(&self, x: &[u32]) -> Option<usize> {
        self.coords.iter().position(|c| c == x)
    }
}

/// `g + h = g h m(g,h)^-1`, `g x h = m(g,h)`, checked exhaustively: `(G, +)`
/// is elementary abelian, `x` is bilinear and associative, and
/// `g + h + g x h = gh`. The opposite commutator convention is tried if the
/// first fails.
pub fn baer_algebra(g: &FiniteGroup, limits: &Limits) -> Result<BaerAlgebra> {
    let (p, class, exponent) = p_group_class(g);
    let Some(p) = p.filter(|&p| p != 2) else {
        return Err(Error::PreconditionViolated(format!("{} is not a p-group for an odd prime p", g.label())));
    };
    if class.is_none_or(|c| c > 2) || exponent != p {
        return Err(Error::PreconditionViolated(format!(
            "{} must have class at most two and exponent {p} (class {:?}, exponent {exponent})",
            g.label(),
            class
        )));
    }
    let first = build(g, p, CommutatorConvention::GH);
    let out = match first {
        Ok(a) => a,
        Err(e1) => build(g, p, CommutatorConvention::HG)
            .map_err(|e2| Error::ConstructionFailed(format!("[g,h]: {e1}; [h,g]: {e2}")))?,
    };
    if !is_quasi_regular(&out.algebra, limits)? {
        return Err(Error::ConstructionFailed(format!("{} is not quasi-regular", out.algebra.label())));
    }
    Ok(out)
}

fn build(g: &FiniteGroup, p: u64, conv: CommutatorConvention) -> std::result::Result<BaerAlgebra, String> {
    let n = g.order();
    let half = (p + 1) / 2;
    let m = |a: usize, b: usize| -> usize {
        let (x, y) = match conv {
            CommutatorConvention::GH => (a, b),
            CommutatorConvention::HG => (b, a),
        };
        let c = g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y));
        g.pow(c, half)
    };
    let plus_t: Vec<usize> = (0..n * n).map(|ab| g.mul(g.mul(ab / n, ab % n), g.inv(m(ab / n, ab % n)))).collect();
    let plus = |a: usize, b: usize| plus_t[a * n + b];

    for a in 0..n {
        for b in 0..a {
            if plus(a, b) != plus(b, a) {
                return Err(format!("addition not commutative at ({a}, {b})"));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = plus(a, b);
            for c in 0..n {
                if plus(ab, c) != plus(a, plus(b, c)) {
                    return Err(format!("addition not associative at ({a}, {b}, {c})"));
                }
            }
        }
    }
    let zero = g.identity();
    for a in 0..n {
        let mut s = zero;
        for _ in 0..p {
            s = plus(s, a);
        }
        if s != zero {
            return Err(format!("{p}-fold sum of {a} is not zero"));
        }
    }

    // greedy additive basis; coordinates grow as the span is extended
    let mut coords: Vec<Option<Vec<u32>>> = vec![None; n];
    coords[zero] = Some(vec![]);
    let mut span = vec![zero];
    let mut basis = Vec::new();
    for x in 0..n {
        if coords[x].is_some() {
            continue;
        }
        for c in coords.iter_mut().flatten() {
            c.push(0);
        }
        let mut added = Vec::new();
        for &s in &span {
            let base = coords[s].clone().expect("span element has coordinates");
            let mut e = s;
            for k in 1..p as u32 {
                e = plus(e, x);
                if coords[e].is_some() {
                    return Err(format!("element {e} reached twice while extending the basis"));
                }
                let mut v = base.clone();
                *v.last_mut().expect("nonempty") = k;
                coords[e] = Some(v);
                added.push(e);
            }
        }
        span.extend(added);
        basis.push(x);
    }
    let coords: Vec<Vec<u32>> = coords.into_iter().map(|c| c.expect("spanning basis")).collect();
    let d = basis.len();

    let ring = Arc::new(prime_field(p).map_err(|e| e.to_string())?);
    let constants: Vec<Vec<Vec<u32>>> =
        basis.iter().map(|&bi| basis.iter().map(|&bj| coords[m(bi, bj)].clone()).collect()).collect();
    let algebra = FiniteAlgebra::new(ring, d, &constants, None, format!("Baer({})", g.label()))
        .map_err(|e| e.to_string())?;

    for a in 0..n {
        for b in 0..n {
            let (x, y) = (&coords[a], &coords[b]);
            if coords[plus(a, b)] != algebra.add(x, y) {
                return Err(format!("coordinates not additive at ({a}, {b})"));
            }
            if coords[m(a, b)] != algebra.mul(x, y) {
                return Err(format!("product not bilinear at ({a}, {b})"));
            }
            if coords[g.mul(a, b)] != algebra.circle(x, y) {
                return Err(format!("circle product differs from the group law at ({a}, {b})"));
            }
        }
    }
    debug_assert_eq!(d as u32, log_order(n, p));
    Ok(BaerAlgebra { algebra, convention: conv, basis, coords })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::quasi_regular_group;
    use crate::group::catalog::*;
    use crate::group::ops::is_isomorphism_map;

    fn check(g: &FiniteGroup) -> BaerAlgebra {
        let l = Limits::default();
        let b = baer_algebra(g, &l).unwrap();
        assert_eq!(b.algebra.element_count(), Some(g.order() as u64));
        let q = quasi_regular_group(&b.algebra, &l).unwrap();
        assert!(is_isomorphism_map(g, &q, |x| q.index_of(&b.coords[x]).unwrap()));
        b
    }

    #[test]
    fn heisenberg_3() {
        let b = check(&heisenberg(3).unwrap());
        assert_eq!(b.algebra.dim(), 3);
        assert!(!b.algebra.is_commutative());
    }

    #[test]
    fn elementary_abelian_gives_zero_product() {
        let l = Limits::default();
        for g in [cyclic(3).unwrap(), cyclic(5).unwrap(), abelian(&[3, 3], &l).unwrap()] {
            let b = check(&g);
            assert!(b.algebra.constants().iter().flatten().flatten().all(|&c| c == 0));
        }
    }

    #[test]
    fn preconditions() {
        let l = Limits::default();
        for g in [modular_p3(3).unwrap(), dihedral(4).unwrap(), cyclic(9).unwrap(), dihedral(3).unwrap()] {
            assert!(matches!(baer_algebra(&g, &l), Err(Error::PreconditionViolated(_))), "{}", g.label());
        }
    }
}
