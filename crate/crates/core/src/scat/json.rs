//! The `enriched-category.v1` interchange format.
//!
//! A document is either an explicit table dump or a builder request:
//!
//! ```json
//! {"schema": "enriched-category.v1", "builder": "poset", "truncation": 2,
//!  "elements": ["0", "1"], "relation": [["0", "1"]]}
//! ```
//!
//! Builder documents accept an optional `homotopies` list. Explicit
//! documents list every simplex of every nonempty hom with its faces and
//! degeneracies by id, and every composition entry as an
//! `(objects, dim, first, second, result)` record.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::builders::{
    build_from_category, build_from_poset, build_with_homotopies, CategorySpec, Homotopy, Poset,
};
use super::category::EnrichedCategory;
use super::simplicial::SimplicialSet;
use crate::error::{Error, Result};

pub const CATEGORY_SCHEMA: &str = "enriched-category.v1";
pub const DEFAULT_TRUNCATION: usize = 2;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExplicitDoc {
    schema: String,
    truncation: usize,
    objects: Vec<String>,
    identities: BTreeMap<String, String>,
    #[serde(default)]
    homs: Vec<HomDoc>,
    #[serde(default)]
    compositions: Vec<CompositionDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HomDoc {
    source: String,
    target: String,
    simplices: Vec<SimplexDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SimplexDoc {
    id: String,
    dim: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    faces: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    degeneracies: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CompositionDoc {
    objects: [String; 3],
    dim: usize,
    first: String,
    second: String,
    result: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct HomotopyDoc {
    source: String,
    target: String,
    from: String,
    to: String,
    name: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismDoc {
    name: String,
    source: String,
    target: String,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "builder", rename_all = "lowercase", deny_unknown_fields)]
enum BuilderDoc {
    Poset {
        schema: String,
        truncation: Option<usize>,
        elements: Vec<String>,
        #[serde(default)]
        relation: Vec<(String, String)>,
        #[serde(default)]
        covers: Vec<(String, String)>,
        #[serde(default)]
        homotopies: Vec<HomotopyDoc>,
    },
    Category {
        schema: String,
        truncation: Option<usize>,
        objects: Vec<String>,
        #[serde(default)]
        morphisms: Vec<MorphismDoc>,
        #[serde(default)]
        compositions: Vec<(String, String, String)>,
        #[serde(default)]
        homotopies: Vec<HomotopyDoc>,
    },
}

fn schema_err(e: serde_json::Error) -> Error {
    Error::Schema(e.to_string())
}

fn check_schema(schema: &str) -> Result<()> {
    if schema != CATEGORY_SCHEMA {
        return Err(Error::Schema(format!(
            "expected schema `{CATEGORY_SCHEMA}`, found `{schema}`"
        )));
    }
    Ok(())
}

/// Parses a document. `truncation` overrides the stored truncation; for
/// explicit tables it may only lower it.
pub fn category_from_json(value: &Value, truncation: Option<usize>) -> Result<EnrichedCategory> {
    if value.get("builder").is_some() {
        let doc: BuilderDoc = serde_json::from_value(value.clone()).map_err(schema_err)?;
        return build(doc, truncation);
    }
    let doc: ExplicitDoc = serde_json::from_value(value.clone()).map_err(schema_err)?;
    check_schema(&doc.schema)?;
    let c = explicit(doc)?;
    match truncation {
        Some(d) if d != c.truncation() => c.truncate(d),
        _ => Ok(c),
    }
}

pub fn category_from_str(text: &str, truncation: Option<usize>) -> Result<EnrichedCategory> {
    let value: Value = serde_json::from_str(text).map_err(schema_err)?;
    category_from_json(&value, truncation)
}

fn homotopies(docs: Vec<HomotopyDoc>) -> Vec<Homotopy> {
    docs.into_iter()
        .map(|h| Homotopy {
            source: h.source,
            target: h.target,
            from: h.from,
            to: h.to,
            name: h.name,
        })
        .collect()
}

fn build(doc: BuilderDoc, override_dim: Option<usize>) -> Result<EnrichedCategory> {
    let (base, extra) = match doc {
        BuilderDoc::Poset {
            schema,
            truncation,
            elements,
            relation,
            covers,
            homotopies: h,
        } => {
            check_schema(&schema)?;
            let d = override_dim.or(truncation).unwrap_or(DEFAULT_TRUNCATION);
            let poset = if covers.is_empty() {
                Poset::new(elements, relation)
            } else {
                let mut all = covers;
                all.extend(relation);
                Poset::from_covers(elements, &all)
            };
            (build_from_poset(&poset, d)?, homotopies(h))
        }
        BuilderDoc::Category {
            schema,
            truncation,
            objects,
            morphisms,
            compositions,
            homotopies: h,
        } => {
            check_schema(&schema)?;
            let d = override_dim.or(truncation).unwrap_or(DEFAULT_TRUNCATION);
            let spec = CategorySpec {
                objects,
                morphisms: morphisms
                    .into_iter()
                    .map(|m| (m.name, m.source, m.target))
                    .collect(),
                compositions,
            };
            (build_from_category(&spec.category()?, d)?, homotopies(h))
        }
    };
    build_with_homotopies(&base, &extra)
}

fn explicit(doc: ExplicitDoc) -> Result<EnrichedCategory> {
    let n = doc.objects.len();
    let top = doc.truncation;
    let obj_index: HashMap<&str, usize> = doc
        .objects
        .iter()
        .enumerate()
        .map(|(i, o)| (o.as_str(), i))
        .collect();
    let obj = |x: &str| {
        obj_index
            .get(x)
            .copied()
            .ok_or_else(|| Error::Schema(format!("unknown object `{x}`")))
    };

    let mut homs = vec![SimplicialSet::empty(top); n * n];
    let mut lookup: Vec<HashMap<String, (usize, usize)>> = vec![HashMap::new(); n * n];
    let mut filled = vec![false; n * n];
    for hom in &doc.homs {
        let (a, b) = (obj(&hom.source)?, obj(&hom.target)?);
        if std::mem::replace(&mut filled[a * n + b], true) {
            return Err(Error::Schema(format!(
                "hom({}, {}) listed twice",
                hom.source, hom.target
            )));
        }
        let mut names = vec![Vec::new(); top + 1];
        let ids = &mut lookup[a * n + b];
        for s in &hom.simplices {
            if s.dim > top {
                return Err(Error::Schema(format!(
                    "simplex `{}` exceeds the truncation",
                    s.id
                )));
            }
            if ids
                .insert(s.id.clone(), (s.dim, names[s.dim].len()))
                .is_some()
            {
                return Err(Error::Schema(format!("duplicate simplex id `{}`", s.id)));
            }
            names[s.dim].push(s.id.clone());
        }
        let resolve = |id: &str, dim: usize| -> Result<usize> {
            match ids.get(id) {
                Some(&(d, i)) if d == dim => Ok(i),
                _ => Err(Error::Schema(format!(
                    "hom({}, {}): `{id}` is not a {dim}-simplex",
                    hom.source, hom.target
                ))),
            }
        };
        let mut faces = names
            .iter()
            .map(|l| vec![Vec::new(); l.len()])
            .collect::<Vec<_>>();
        let mut degs = faces.clone();
        for s in &hom.simplices {
            let (d, i) = ids[&s.id];
            faces[d][i] = s
                .faces
                .iter()
                .map(|f| resolve(f, d.wrapping_sub(1)))
                .collect::<Result<_>>()?;
            degs[d][i] = s
                .degeneracies
                .iter()
                .map(|f| resolve(f, d + 1))
                .collect::<Result<_>>()?;
        }
        homs[a * n + b] = SimplicialSet::new(names, faces, degs)?;
    }

    let mut identities = vec![usize::MAX; n];
    for (o, id) in &doc.identities {
        let a = obj(o)?;
        match lookup[a * n + a].get(id) {
            Some(&(0, i)) => identities[a] = i,
            _ => {
                return Err(Error::Schema(format!(
                    "identity `{id}` of `{o}` is not a 0-simplex"
                )))
            }
        }
    }
    if let Some(a) = identities.iter().position(|&i| i == usize::MAX) {
        return Err(Error::Schema(format!(
            "object `{}` has no identity",
            doc.objects[a]
        )));
    }

    let mut compositions: Vec<Vec<Vec<Option<usize>>>> = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                compositions.push(
                    (0..=top)
                        .map(|d| vec![None; homs[a * n + b].count(d) * homs[b * n + c].count(d)])
                        .collect(),
                );
            }
        }
    }
    for entry in &doc.compositions {
        let [oa, ob, oc] = &entry.objects;
        let (a, b, c) = (obj(oa)?, obj(ob)?, obj(oc)?);
        let d = entry.dim;
        if d > top {
            return Err(Error::Schema(
                "composition entry exceeds the truncation".into(),
            ));
        }
        let find = |hom: usize, id: &str| match lookup[hom].get(id) {
            Some(&(dd, i)) if dd == d => Ok(i),
            _ => Err(Error::Schema(format!(
                "composition entry: `{id}` is not a {d}-simplex of the right hom"
            ))),
        };
        let (x, y, z) = (
            find(a * n + b, &entry.first)?,
            find(b * n + c, &entry.second)?,
            find(a * n + c, &entry.result)?,
        );
        let q = homs[b * n + c].count(d);
        let slot = &mut compositions[(a * n + b) * n + c][d][x * q + y];
        if slot.replace(z).is_some() {
            return Err(Error::Schema(format!(
                "composition of `{}` and `{}` given twice",
                entry.first, entry.second
            )));
        }
    }
    let mut tables = Vec::with_capacity(compositions.len());
    for (i, table) in compositions.into_iter().enumerate() {
        let (a, b, c) = (i / (n * n), (i / n) % n, i % n);
        let mut dims = Vec::with_capacity(top + 1);
        for (d, row) in table.into_iter().enumerate() {
            let q = homs[b * n + c].count(d).max(1);
            let row = row
                .into_iter()
                .enumerate()
                .map(|(k, z)| {
                    z.ok_or_else(|| {
                        Error::Schema(format!(
                            "missing composition entry ({}, {}, {}) in dimension {d}: `{}` then `{}`",
                            doc.objects[a],
                            doc.objects[b],
                            doc.objects[c],
                            homs[a * n + b].name(d, k / q),
                            homs[b * n + c].name(d, k % q)
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            dims.push(row);
        }
        tables.push(dims);
    }
    EnrichedCategory::from_parts(top, doc.objects, homs, identities, tables)
}

/// Explicit-table document for `c`. Homs with no simplices are omitted.
pub fn category_to_json(c: &EnrichedCategory) -> Value {
    let n = c.object_count();
    let top = c.truncation();
    let mut homs = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let h = c.hom(a, b);
            if h.is_empty() {
                continue;
            }
            let mut simplices = Vec::new();
            for d in 0..=top {
                for x in 0..h.count(d) {
                    simplices.push(SimplexDoc {
                        id: h.name(d, x).to_string(),
                        dim: d,
                        faces: h
                            .faces_of(d, x)
                            .iter()
                            .map(|&f| h.name(d - 1, f).to_string())
                            .collect(),
                        degeneracies: h
                            .degeneracies_of(d, x)
                            .iter()
                            .map(|&s| h.name(d + 1, s).to_string())
                            .collect(),
                    });
                }
            }
            homs.push(HomDoc {
                source: c.objects()[a].clone(),
                target: c.objects()[b].clone(),
                simplices,
            });
        }
    }
    let mut compositions = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for e in 0..n {
                for d in 0..=top {
                    for x in 0..c.hom(a, b).count(d) {
                        for y in 0..c.hom(b, e).count(d) {
                            compositions.push(CompositionDoc {
                                objects: [
                                    c.objects()[a].clone(),
                                    c.objects()[b].clone(),
                                    c.objects()[e].clone(),
                                ],
                                dim: d,
                                first: c.hom(a, b).name(d, x).to_string(),
                                second: c.hom(b, e).name(d, y).to_string(),
                                result: c
                                    .hom(a, e)
                                    .name(d, c.compose(a, b, e, d, x, y))
                                    .to_string(),
                            });
                        }
                    }
                }
            }
        }
    }
    let identities = (0..n)
        .map(|a| {
            (
                c.objects()[a].clone(),
                c.hom(a, a).name(0, c.identity(a)).to_string(),
            )
        })
        .collect();
    let doc = ExplicitDoc {
        schema: CATEGORY_SCHEMA.to_string(),
        truncation: top,
        objects: c.objects().to_vec(),
        identities,
        homs,
        compositions,
    };
    serde_json::to_value(doc).expect("category documents serialize")
}

#[cfg(test)]
mod tests {
    use serde_json::json;

    use super::*;

    #[test]
    fn poset_builder_document() {
        let doc = json!({"schema": CATEGORY_SCHEMA, "builder": "poset", "truncation": 2,
                         "elements": ["0", "1"], "relation": [["0", "1"]]});
        let c = category_from_json(&doc, None).unwrap();
        assert_eq!(c.truncation(), 2);
        assert_eq!(c.underlying_category().morphism_count(), 3);
        let c3 = category_from_json(&doc, Some(3)).unwrap();
        assert_eq!(c3.truncation(), 3);
    }

    #[test]
    fn category_builder_with_homotopy() {
        let doc = json!({"schema": CATEGORY_SCHEMA, "builder": "category", "truncation": 2,
            "objects": ["a", "b"],
            "morphisms": [{"name": "f", "source": "a", "target": "b"},
                          {"name": "g", "source": "a", "target": "b"}],
            "homotopies": [{"source": "a", "target": "b", "from": "f", "to": "g", "name": "h"}]});
        let c = category_from_json(&doc, None).unwrap();
        assert!(c.validate().is_valid());
        assert_eq!(c.hom(0, 1).count(1), 3);
    }

    #[test]
    fn explicit_round_trip() {
        let doc = json!({"schema": CATEGORY_SCHEMA, "builder": "poset", "truncation": 2,
                         "elements": ["00", "01", "10", "11"],
                         "covers": [["00", "01"], ["00", "10"], ["01", "11"], ["10", "11"]]});
        let c = category_from_json(&doc, None).unwrap();
        let dumped = category_to_json(&c);
        let back = category_from_json(&dumped, None).unwrap();
        assert_eq!(back, c);
        assert_eq!(
            serde_json::to_string(&category_to_json(&back)).unwrap(),
            serde_json::to_string(&dumped).unwrap()
        );
        let lowered = category_from_json(&dumped, Some(1)).unwrap();
        assert_eq!(lowered.truncation(), 1);
        assert!(category_from_json(&dumped, Some(3)).is_err());
    }

    #[test]
    fn missing_composition_entry_is_schema_error() {
        let doc = json!({"schema": CATEGORY_SCHEMA, "builder": "poset", "truncation": 1,
                         "elements": ["0", "1"], "relation": [["0", "1"]]});
        let mut dumped = category_to_json(&category_from_json(&doc, None).unwrap());
        dumped["compositions"].as_array_mut().unwrap().pop();
        let err = category_from_json(&dumped, None).unwrap_err();
        assert!(
            matches!(err, Error::Schema(ref m) if m.contains("missing composition")),
            "{err}"
        );
    }

    #[test]
    fn wrong_schema_rejected() {
        let doc = json!({"schema": "other", "builder": "poset", "elements": []});
        assert!(matches!(
            category_from_json(&doc, None),
            Err(Error::Schema(_))
        ));
    }
}
