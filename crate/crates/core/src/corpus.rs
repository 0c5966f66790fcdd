//! Small named categories used by the self-test suite, the benches and the
//! test suites of this workspace.

use crate::scat::{
    build_from_category, build_from_poset, build_with_homotopies, CategorySpec, Homotopy, Poset,
};
use crate::EnrichedCategory;

/// `0 < 1`: two objects, one non-identity morphism `0->1`.
pub fn interval(truncation: usize) -> EnrichedCategory {
    poset(&Poset::chain(2), truncation)
}

/// Objects `a`, `b`, parallel morphisms `f, g : a → b` and a 1-simplex
/// `h` from `f` to `g` in `hom(a, b)`.
pub fn parallel_pair_with_homotopy(truncation: usize) -> EnrichedCategory {
    let s = |x: &str| x.to_string();
    let spec = CategorySpec {
        objects: vec![s("a"), s("b")],
        morphisms: vec![(s("f"), s("a"), s("b")), (s("g"), s("a"), s("b"))],
        compositions: vec![],
    };
    let base = build_from_category(&spec.category().expect("valid category"), truncation)
        .expect("valid base");
    build_with_homotopies(&base, &[Homotopy::new("a", "b", "f", "g", "h")]).expect("valid homotopy")
}

/// The 2×2 grid poset `00 ≤ 01, 10 ≤ 11`.
pub fn square(truncation: usize) -> EnrichedCategory {
    poset(&Poset::grid(2, 2), truncation)
}

pub fn antichain(k: usize, truncation: usize) -> EnrichedCategory {
    poset(&Poset::antichain(k), truncation)
}

pub fn chain(k: usize, truncation: usize) -> EnrichedCategory {
    poset(&Poset::chain(k), truncation)
}

/// `0 < 1 < 2` with a self-homotopy `h` of `0->1`, so that whiskering by
/// `1->2` produces a second non-degenerate 1-simplex.
pub fn whiskered_chain(truncation: usize) -> EnrichedCategory {
    let base = chain(3, truncation);
    build_with_homotopies(&base, &[Homotopy::new("0", "1", "0->1", "0->1", "h")])
        .expect("valid homotopy")
}

/// `0 < 1`, `0 < 2`.
pub fn vee(truncation: usize) -> EnrichedCategory {
    let s = |x: &str| x.to_string();
    let p = Poset::from_covers(
        vec![s("0"), s("1"), s("2")],
        &[(s("0"), s("1")), (s("0"), s("2"))],
    );
    poset(&p, truncation)
}

fn poset(p: &Poset, truncation: usize) -> EnrichedCategory {
    build_from_poset(p, truncation).expect("valid poset")
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub category: EnrichedCategory,
}

/// Every bundled category at truncations 2 and 3.
pub fn standard() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for d in [2, 3] {
        let mut push = |name: String, category| {
            out.push(CorpusEntry {
                name: format!("{name}/D{d}"),
                category,
            })
        };
        push("interval".into(), interval(d));
        push(
            "parallel-pair-homotopy".into(),
            parallel_pair_with_homotopy(d),
        );
        push("square".into(), square(d));
        for k in 1..=3 {
            push(format!("antichain-{k}"), antichain(k, d));
        }
        for k in 1..=4 {
            push(format!("chain-{k}"), chain(k, d));
        }
        push("whiskered-chain".into(), whiskered_chain(d));
    }
    out
}

/// A category together with the objects of a full subcategory.
#[derive(Clone, Debug)]
pub struct RelativePair {
    pub name: String,
    pub category: EnrichedCategory,
    pub sub: Vec<String>,
}

impl RelativePair {
    pub fn sub_refs(&self) -> Vec<&str> {
        self.sub.iter().map(String::as_str).collect()
    }
}

/// The square with `T = {00, 01}` followed by five poset pairs.
pub fn relative_pairs(truncation: usize) -> Vec<RelativePair> {
    let pair = |name: &str, category, sub: &[&str]| RelativePair {
        name: name.into(),
        category,
        sub: sub.iter().map(|x| x.to_string()).collect(),
    };
    vec![
        pair("square/{00,01}", square(truncation), &["00", "01"]),
        pair("chain-4/{1,2}", chain(4, truncation), &["1", "2"]),
        pair("chain-4/{0,3}", chain(4, truncation), &["0", "3"]),
        pair("square/{01,11}", square(truncation), &["01", "11"]),
        pair("vee/{1,2}", vee(truncation), &["1", "2"]),
        pair(
            "grid-2x3/{00,01,02}",
            poset(&Poset::grid(2, 3), truncation),
            &["00", "01", "02"],
        ),
    ]
}

/// Every hom is a constant simplicial set.
pub fn has_discrete_homs(c: &EnrichedCategory) -> bool {
    let k = c.object_count();
    (0..k).all(|a| (0..k).all(|b| c.hom(a, b).is_discrete()))
}
