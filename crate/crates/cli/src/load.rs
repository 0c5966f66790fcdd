use std::ops::RangeInclusive;
use std::path::Path;

use anyhow::Context;
use dihom_core::scat::category_from_json;
use dihom_core::{CoefficientRing, EnrichedCategory};
use serde_json::Value;

use crate::InputError;

pub fn read_json(path: &Path) -> anyhow::Result<Value> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("{} is not valid JSON", path.display()))
}

pub fn check_dim(dim: Option<usize>) -> anyhow::Result<()> {
    if dim == Some(0) {
        return Err(InputError("--dim must be at least 1".into()).into());
    }
    Ok(())
}

pub fn category(
    value: &Value,
    dim: Option<usize>,
    path: &Path,
) -> anyhow::Result<EnrichedCategory> {
    check_dim(dim)?;
    let c = category_from_json(value, dim)
        .with_context(|| format!("cannot load {}", path.display()))?;
    if c.truncation() == 0 {
        return Err(InputError("truncation must be at least 1".into()).into());
    }
    Ok(c)
}

pub fn load_category(path: &Path, dim: Option<usize>) -> anyhow::Result<EnrichedCategory> {
    category(&read_json(path)?, dim, path)
}

pub fn ring(code: &str) -> anyhow::Result<CoefficientRing> {
    Ok(code.parse::<CoefficientRing>()?)
}

/// `a..b` (inclusive) or `a`; defaults to `0..=D-1`. Every degree must be
/// at most `D - 1`.
pub fn degrees(spec: Option<&str>, truncation: usize) -> anyhow::Result<RangeInclusive<usize>> {
    let top = truncation - 1;
    let Some(spec) = spec else {
        return Ok(0..=top);
    };
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| InputError(format!("invalid degree `{s}` in `--degrees {spec}`")))
    };
    let (a, b) = match spec.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let a = parse(spec)?;
            (a, a)
        }
    };
    if a > b {
        return Err(InputError(format!("empty degree range `{spec}`")).into());
    }
    if b > top {
        return Err(InputError(format!(
            "degree {b} exceeds D-1 = {top} for truncation {truncation}"
        ))
        .into());
    }
    Ok(a..=b)
}

/// Comma-separated object list; empty entries are dropped, so `""` is T = ∅.
pub fn sub_objects(spec: Option<&str>) -> anyhow::Result<Vec<String>> {
    let spec = spec.ok_or_else(|| InputError("`relative` needs --sub obj1,obj2,...".into()))?;
    Ok(spec
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect())
}
