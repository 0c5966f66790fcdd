//! The `module.v1` format for bimodules: both algebras, generator names,
//! relation columns and one dense action matrix per algebra basis element.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::modules::Bimodule;
use crate::error::{Error, Result};
use crate::exactlin::{parse_scalar, Matrix, PresentedModule, Scalar};
use crate::nualg::{algebra_from_json, algebra_to_json, Algebra};

pub const MODULE_SCHEMA: &str = "module.v1";

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleDoc {
    schema: String,
    left_algebra: Value,
    right_algebra: Value,
    generators: Vec<String>,
    relations: Vec<Vec<String>>,
    left_actions: Vec<Vec<Vec<String>>>,
    right_actions: Vec<Vec<Vec<String>>>,
}

pub fn bimodule_to_json(m: &Bimodule) -> Value {
    let doc = ModuleDoc {
        schema: MODULE_SCHEMA.into(),
        left_algebra: algebra_to_json(m.left_algebra()),
        right_algebra: algebra_to_json(m.right_algebra()),
        generators: m.names().to_vec(),
        relations: m.presentation().relations().transpose().to_string_rows(),
        left_actions: m
            .left_actions()
            .iter()
            .map(Matrix::to_string_rows)
            .collect(),
        right_actions: m
            .right_actions()
            .iter()
            .map(Matrix::to_string_rows)
            .collect(),
    };
    serde_json::to_value(doc).expect("module documents serialize")
}

fn parse_rows(alg: &Algebra, rows: &[Vec<String>], width: usize, what: &str) -> Result<Matrix> {
    let ring = alg.ring();
    let mut m = Matrix::zeros(ring, rows.len(), width);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != width {
            return Err(Error::Schema(format!(
                "{what}: row {i} has {} entries, expected {width}",
                row.len()
            )));
        }
        for (j, c) in row.iter().enumerate() {
            let x: Scalar = parse_scalar(c)?;
            m.set(i, j, ring.reduce(x));
        }
    }
    Ok(m)
}

pub fn bimodule_from_json(value: &Value) -> Result<Bimodule> {
    let doc: ModuleDoc =
        serde_json::from_value(value.clone()).map_err(|e| Error::Schema(e.to_string()))?;
    if doc.schema != MODULE_SCHEMA {
        return Err(Error::Schema(format!(
            "expected schema `{MODULE_SCHEMA}`, found `{}`",
            doc.schema
        )));
    }
    let a = algebra_from_json(&doc.left_algebra)?;
    let b = algebra_from_json(&doc.right_algebra)?;
    let n = doc.generators.len();
    let relations = parse_rows(&a, &doc.relations, n, "relations")?.transpose();
    let relations = if doc.relations.is_empty() {
        Matrix::zeros(a.ring(), n, 0)
    } else {
        relations
    };
    let square = |alg: &Algebra, ms: &[Vec<Vec<String>>], what: &str| -> Result<Vec<Matrix>> {
        ms.iter()
            .map(|rows| {
                if rows.len() != n {
                    return Err(Error::Schema(format!("{what}: expected {n} rows")));
                }
                parse_rows(alg, rows, n, what)
            })
            .collect()
    };
    let left = square(&a, &doc.left_actions, "left action")?;
    let right = square(&b, &doc.right_actions, "right action")?;
    Bimodule::new(
        a,
        b,
        PresentedModule::new(relations)?,
        left,
        right,
        doc.generators,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimod::chain_bimodule;
    use crate::exactlin::CoefficientRing;
    use crate::scat::{build_from_poset, Poset};

    #[test]
    fn round_trip() {
        let c = build_from_poset(&Poset::chain(2), 1).unwrap();
        let m = chain_bimodule(&c, 0, CoefficientRing::Integers)
            .unwrap()
            .to_bimodule()
            .unwrap();
        let back = bimodule_from_json(&bimodule_to_json(&m)).unwrap();
        assert_eq!(back.left_actions(), m.left_actions());
        assert_eq!(back.right_actions(), m.right_actions());
        assert_eq!(back.names(), m.names());
        let mut broken = bimodule_to_json(&m);
        broken["left_actions"][1][0][0] = Value::String("1".into());
        assert!(bimodule_from_json(&broken).is_err());
    }
}
