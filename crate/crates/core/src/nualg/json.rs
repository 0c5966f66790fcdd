//! The `algebra.v1` format: ring, tagged basis, nonzero structure
//! constants and the designated unit, if any.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::algebra::{Algebra, AlgebraElement};
use crate::error::{Error, Result};
use crate::exactlin::{parse_scalar, scalar_to_string, CoefficientRing};

pub const ALGEBRA_SCHEMA: &str = "algebra.v1";

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraDoc {
    schema: String,
    ring: String,
    basis: Vec<BasisDoc>,
    products: Vec<ProductDoc>,
    unit: Option<BTreeMap<String, String>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BasisDoc {
    id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    target: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProductDoc {
    left: String,
    right: String,
    result: BTreeMap<String, String>,
}

fn element_map(a: &Algebra, x: &AlgebraElement) -> BTreeMap<String, String> {
    x.support()
        .into_iter()
        .map(|i| {
            (
                a.basis()[i].name.clone(),
                scalar_to_string(x.coefficient(i)),
            )
        })
        .collect()
}

pub fn algebra_to_json(a: &Algebra) -> Value {
    let basis = a
        .basis()
        .iter()
        .map(|b| BasisDoc {
            id: b.name.clone(),
            source: b.tags.map(|(s, _)| a.objects()[s].clone()),
            target: b.tags.map(|(_, t)| a.objects()[t].clone()),
        })
        .collect();
    let mut products = Vec::new();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let p = a.basis_product(i, j);
            if !p.is_empty() {
                products.push(ProductDoc {
                    left: a.basis()[i].name.clone(),
                    right: a.basis()[j].name.clone(),
                    result: p
                        .iter()
                        .map(|(k, c)| (a.basis()[*k].name.clone(), scalar_to_string(c)))
                        .collect(),
                });
            }
        }
    }
    let doc = AlgebraDoc {
        schema: ALGEBRA_SCHEMA.into(),
        ring: a.ring().code(),
        basis,
        products,
        unit: a.unit().map(|u| element_map(a, &u)),
    };
    serde_json::to_value(doc).expect("algebra documents serialize")
}

/// Reads an untagged algebra back (tags are informational only).
pub fn algebra_from_json(value: &Value) -> Result<Algebra> {
    let doc: AlgebraDoc =
        serde_json::from_value(value.clone()).map_err(|e| Error::Schema(e.to_string()))?;
    if doc.schema != ALGEBRA_SCHEMA {
        return Err(Error::Schema(format!(
            "expected schema `{ALGEBRA_SCHEMA}`, found `{}`",
            doc.schema
        )));
    }
    let ring: CoefficientRing = doc.ring.parse()?;
    let names: Vec<String> = doc.basis.iter().map(|b| b.id.clone()).collect();
    let index = |x: &str| {
        names
            .iter()
            .position(|n| n == x)
            .ok_or_else(|| Error::Schema(format!("unknown basis element `{x}`")))
    };
    let k = names.len();
    let mut table = vec![Vec::new(); k * k];
    for p in &doc.products {
        let (i, j) = (index(&p.left)?, index(&p.right)?);
        for (id, c) in &p.result {
            table[i * k + j].push((index(id)?, parse_scalar(c)?));
        }
    }
    let a = Algebra::from_products(ring, names.clone(), |i, j| table[i * k + j].clone());
    match doc.unit {
        None => Ok(a),
        Some(u) => {
            let mut coords = vec![ring.zero(); k];
            for (id, c) in &u {
                coords[index(id)?] = ring.reduce(parse_scalar(c)?);
            }
            a.with_unit(AlgebraElement::from_coords(coords))
        }
    }
}
