use std::collections::BTreeMap;

use serde::Serialize;

use super::groups::HomologyBimodule;
use crate::exactlin::{scalar_to_string, vec_is_zero};

pub const HOMOLOGY_REPORT_SCHEMA: &str = "homology-report.v1";

/// Serializable view of one homology bimodule. Representatives are sparse
/// chains as `[basis name, coefficient]` pairs; actions are keyed by
/// morphism name and omitted when zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologySummary {
    pub degree: usize,
    pub free_rank: usize,
    pub invariant_factors: Vec<String>,
    pub representatives: Vec<Vec<(String, String)>>,
    pub left_actions: BTreeMap<String, Vec<Vec<String>>>,
    pub right_actions: BTreeMap<String, Vec<Vec<String>>>,
}

pub fn homology_summary(h: &HomologyBimodule, basis_names: &[String]) -> HomologySummary {
    let reps = h.group().representatives();
    let representatives = (0..reps.cols())
        .map(|j| {
            reps.column(j)
                .iter()
                .enumerate()
                .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                .map(|(i, c)| (basis_names[i].clone(), scalar_to_string(c)))
                .collect()
        })
        .collect();
    let actions = |maps: Vec<&crate::exactlin::ModuleMorphism>| {
        h.morphism_names()
            .iter()
            .enumerate()
            .filter_map(|(f, name)| {
                let m = maps[f].matrix();
                let nonzero = (0..m.cols()).any(|j| !vec_is_zero(&m.column(j)));
                nonzero.then(|| (name.clone(), m.to_string_rows()))
            })
            .collect()
    };
    HomologySummary {
        degree: h.degree(),
        free_rank: h.free_rank(),
        invariant_factors: h.invariant_factors().iter().map(scalar_to_string).collect(),
        representatives,
        left_actions: actions(
            (0..h.morphism_names().len())
                .map(|f| h.left_action(f))
                .collect(),
        ),
        right_actions: actions(
            (0..h.morphism_names().len())
                .map(|f| h.right_action(f))
                .collect(),
        ),
    }
}
