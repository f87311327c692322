//! Built-in groups, addressed as `name:params` (e.g. `heisenberg:3`).

use super::ops::{is_prime, GroupOps};
use super::{direct_product, FiniteGroup};
use crate::{Error, Limits, Result};

pub fn trivial() -> FiniteGroup {
    FiniteGroup::from_flat_unchecked(1, vec![0], "1".into())
}

pub fn cyclic(m: usize) -> Result<FiniteGroup> {
    if m == 0 || m > u16::MAX as usize {
        return Err(Error::BadParams(format!("cyclic order {m}")));
    }
    if m == 1 {
        return Ok(trivial());
    }
    Ok(FiniteGroup::from_fn_unchecked(m, format!("C{m}"), |a, b| (a + b) % m))
}

/// `C_{m1} x ... x C_{mk}` as an iterated direct product.
pub fn abelian(orders: &[usize], limits: &Limits) -> Result<FiniteGroup> {
    if orders.is_empty() {
        return Err(Error::BadParams("abelian needs at least one cyclic order".into()));
    }
    let mut acc = cyclic(orders[0])?;
    for &m in &orders[1..] {
        acc = direct_product(&acc, &cyclic(m)?, limits)?;
    }
    Ok(acc)
}

/// Dihedral group of order `2m`: element `f*m + i` is `r^i s^f`.
pub fn dihedral(m: usize) -> Result<FiniteGroup> {
    if m < 2 {
        return Err(Error::BadParams(format!("dihedral needs m >= 2, got {m}")));
    }
    Ok(FiniteGroup::from_fn_unchecked(2 * m, format!("D{m}"), |a, b| {
        let (fa, ia) = (a / m, a % m);
        let (fb, ib) = (b / m, b % m);
        let i = if fa == 0 { (ia + ib) % m } else { (ia + m - ib) % m };
        ((fa + fb) % 2) * m + i
    }))
}

/// Quaternion group: element `b*4 + a` is `x^a y^b` with
/// `x^4 = 1`, `y^2 = x^2`, `y x y^-1 = x^-1`.
pub fn quaternion8() -> FiniteGroup {
    FiniteGroup::from_fn_unchecked(8, "Q8".into(), |u, v| {
        let (b, a) = (u / 4, u % 4);
        let (d, c) = (v / 4, v % 4);
        let twisted = if b == 0 { c } else { (4 - c) % 4 };
        let extra = if b == 1 && d == 1 { 2 } else { 0 };
        ((b + d) % 2) * 4 + (a + twisted + extra) % 4
    })
}

/// Upper unitriangular 3x3 matrices over the `p`-element field.
/// Element `(a, b, c)` (entries above the diagonal) is `a*p^2 + b*p + c`.
pub fn heisenberg(p: usize) -> Result<FiniteGroup> {
    if !is_prime(p as u64) {
        return Err(Error::BadParams(format!("heisenberg needs a prime, got {p}")));
    }
    let n = p * p * p;
    if n > u16::MAX as usize {
        return Err(Error::BadParams(format!("heisenberg {p} is too large to tabulate")));
    }
    let split = |x: usize| (x / (p * p), (x / p) % p, x % p);
    Ok(FiniteGroup::from_fn_unchecked(n, format!("Heis({p})"), |x, y| {
        let (a, b, c) = split(x);
        let (a2, b2, c2) = split(y);
        ((a + a2) % p) * p * p + ((b + b2) % p) * p + (c + c2 + a * b2) % p
    }))
}

/// `<a, b | a^(p^2), b^p, b a b^-1 = a^(1+p)>`, order `p^3`, exponent `p^2`.
/// Element `j*p^2 + i` is `a^i b^j`.
pub fn modular_p3(p: usize) -> Result<FiniteGroup> {
    if !is_prime(p as u64) {
        return Err(Error::BadParams(format!("modular_p3 needs a prime, got {p}")));
    }
    let q = p * p;
    if q * p > u16::MAX as usize {
        return Err(Error::BadParams(format!("modular_p3 {p} is too large to tabulate")));
    }
    // (1+p)^j mod p^2
    let twist: Vec<usize> = (0..p)
        .scan(1usize, |acc, _| {
            let cur = *acc;
            *acc = *acc * (1 + p) % q;
            Some(cur)
        })
        .collect();
    Ok(FiniteGroup::from_fn_unchecked(q * p, format!("M({})", q * p), |x, y| {
        let (j, i) = (x / q, x % q);
        let (l, k) = (y / q, y % q);
        ((j + l) % p) * q + (i + k * twist[j]) % q
    }))
}

/// Looks up a catalog group by name and integer parameters.
pub fn catalog_group(name: &str, params: &[usize], limits: &Limits) -> Result<FiniteGroup> {
    let one = |what: &str| -> Result<usize> {
        match params {
            [x] => Ok(*x),
            _ => Err(Error::BadParams(format!("{what} takes exactly one parameter"))),
        }
    };
    match name {
        "trivial" => Ok(trivial()),
        "cyclic" => cyclic(one("cyclic")?),
        "abelian" => abelian(params, limits),
        "dihedral" => dihedral(one("dihedral")?),
        "quaternion8" => {
            if params.is_empty() {
                Ok(quaternion8())
            } else {
                Err(Error::BadParams("quaternion8 takes no parameters".into()))
            }
        }
        "heisenberg" => heisenberg(one("heisenberg")?),
        "modular_p3" => modular_p3(one("modular_p3")?),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

/// Parses `name` or `name:p1,p2,...`.
pub fn parse_group_ref(spec: &str, limits: &Limits) -> Result<FiniteGroup> {
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let params = if rest.is_empty() {
        Vec::new()
    } else {
        rest.split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad parameter `{t}` in `{spec}`"))))
            .collect::<Result<Vec<_>>>()?
    };
    catalog_group(name.trim(), &params, limits)
}

/// Named groups of order at most 16 used throughout the test suites.
pub fn small_catalog(limits: &Limits) -> Vec<(String, FiniteGroup)> {
    let mut refs: Vec<String> = (1..=16).map(|m| format!("cyclic:{m}")).collect();
    for a in ["2,2", "2,4", "2,2,2", "3,3", "2,6", "2,8", "4,4", "2,2,4", "2,2,2,2"] {
        refs.push(format!("abelian:{a}"));
    }
    for m in 3..=8 {
        refs.push(format!("dihedral:{m}"));
    }
    refs.push("quaternion8".into());
    refs.into_iter()
        .map(|r| {
            let g = parse_group_ref(&r, limits).expect("catalog entries are valid");
            (r, g)
        })
        .collect()
}

/// Catalog `p`-groups of order at most `max_order`, for primes up to 7.
pub fn small_p_groups(p: usize, max_order: usize, limits: &Limits) -> Vec<(String, FiniteGroup)> {
    let mut refs = Vec::new();
    let mut q = p;
    while q <= max_order {
        refs.push(format!("cyclic:{q}"));
        q *= p;
    }
    let candidates: Vec<String> = match p {
        2 => ["abelian:2,2", "abelian:2,4", "abelian:2,2,2", "abelian:2,8", "abelian:4,4", "abelian:2,2,4", "abelian:2,2,2,2", "dihedral:4", "quaternion8", "dihedral:8"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        _ => vec![
            format!("abelian:{p},{p}"),
            format!("abelian:{},{p}", p * p),
            format!("abelian:{p},{p},{p}"),
            format!("heisenberg:{p}"),
            format!("modular_p3:{p}"),
        ],
    };
    for r in candidates {
        let g = parse_group_ref(&r, limits).expect("catalog entries are valid");
        if g.order() <= max_order {
            refs.push(r);
        }
    }
    refs.into_iter()
        .map(|r| {
            let g = parse_group_ref(&r, limits).expect("catalog entries are valid");
            (r, g)
        })
        .collect()
}
