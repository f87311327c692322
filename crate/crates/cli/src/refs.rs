//! `name:params` references to groups and algebras, or `@path` JSON files.

use std::sync::Arc;

use hereditary::algebra::{augmentation_ideal, group_algebra, ring_as_algebra, unitization, zero_algebra, FiniteAlgebra};
use hereditary::constructions::baer_algebra;
use hereditary::group::catalog::parse_group_ref;
use hereditary::json::{AlgebraJson, GroupJson};
use hereditary::ring::{ring_make, FiniteCommRing, RingSpec};
use hereditary::{FiniteGroup, Limits};
use serde::de::DeserializeOwned;

use crate::Failure;

fn read_json<T: DeserializeOwned>(path: &str) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{path}: {e}")))
}

pub fn group(spec: &str, limits: &Limits) -> Result<FiniteGroup, Failure> {
    match spec.strip_prefix('@') {
        Some(path) => Ok(read_json::<GroupJson>(path)?.to_group()?),
        None => Ok(parse_group_ref(spec, limits)?),
    }
}

pub fn ring(spec: &str) -> Result<Arc<FiniteCommRing>, Failure> {
    let rs = match spec.strip_prefix('@') {
        Some(path) => read_json::<RingSpec>(path)?,
        None => RingSpec::parse(spec)?,
    };
    Ok(Arc::new(ring_make(&rs)?))
}

/// Algebra references over `ring`:
///
/// * `ring` — `R` itself
/// * `group:G` — the group algebra `RG`
/// * `aug:G` — the augmentation ideal of `RG`
/// * `zero:d` — `R^d` with zero product
/// * `baer:G` — the Baer algebra of `G`
/// * `unit:A` — the unitization of another reference
/// * `@path` — an algebra JSON file
pub fn algebra(spec: &str, ring: &Arc<FiniteCommRing>, limits: &Limits) -> Result<FiniteAlgebra, Failure> {
    if let Some(path) = spec.strip_prefix('@') {
        return Ok(read_json::<AlgebraJson>(path)?.to_algebra()?);
    }
    let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let a = match kind {
        "ring" if rest.is_empty() => ring_as_algebra(ring.clone()),
        "group" => group_algebra(ring.clone(), &group(rest, limits)?, limits)?,
        "aug" => augmentation_ideal(ring.clone(), &group(rest, limits)?, limits)?,
        "zero" => {
            let d = rest.parse().map_err(|_| Failure::usage(format!("bad dimension in `{spec}`")))?;
            zero_algebra(ring.clone(), d)
        }
        "baer" => {
            let b = baer_algebra(&group(rest, limits)?, limits)?.algebra;
            if b.ring().label() != ring.label() {
                return Err(Failure::usage(format!("{} is defined over {}, not {}", b.label(), b.ring().label(), ring.label())));
            }
            b
        }
        "unit" => unitization(&algebra(rest, ring, limits)?),
        _ => {
            return Err(Failure::usage(format!(
                "unknown algebra reference `{spec}` (expected ring, group:G, aug:G, zero:d, baer:G, unit:A or @file)"
            )))
        }
    };
    Ok(a)
}
