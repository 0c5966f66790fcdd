use std::collections::HashMap;

use super::report::{ValidationReport, Violation};
use super::simplicial::SimplicialSet;
use crate::error::{Error, Result};

/// Finite simplicially enriched category, truncated at dimension `D`.
///
/// `homs[a * n + b]` is the hom simplicial set from object `a` to object
/// `b`. Composition takes `(σ: a → b, τ: b → c)` to `a → c` ("σ then τ")
/// and is tabulated per triple and dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnrichedCategory {
    truncation: usize,
    objects: Vec<String>,
    homs: Vec<SimplicialSet>,
    identities: Vec<usize>,
    compositions: Vec<Vec<Vec<usize>>>,
}

impl EnrichedCategory {
    /// Assembles a category from explicit tables after checking shapes and
    /// index ranges. Laws are checked separately by [`Self::validate`].
    pub fn from_parts(
        truncation: usize,
        objects: Vec<String>,
        homs: Vec<SimplicialSet>,
        identities: Vec<usize>,
        compositions: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let n = objects.len();
        let mut seen = HashMap::new();
        for (i, o) in objects.iter().enumerate() {
            if seen.insert(o.as_str(), i).is_some() {
                return Err(Error::Schema(format!("duplicate object `{o}`")));
            }
        }
        if homs.len() != n * n || identities.len() != n || compositions.len() != n * n * n {
            return Err(Error::Schema(
                "category tables have inconsistent sizes".into(),
            ));
        }
        if homs.iter().any(|h| h.truncation() != truncation) {
            return Err(Error::Schema(
                "hom truncations disagree with the category".into(),
            ));
        }
        for (a, &e) in identities.iter().enumerate() {
            if e >= homs[a * n + a].count(0) {
                return Err(Error::Schema(format!(
                    "identity of `{}` out of range",
                    objects[a]
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let table = &compositions[(a * n + b) * n + c];
                    if table.len() != truncation + 1 {
                        return Err(Error::Schema("composition table has wrong depth".into()));
                    }
                    for (d, row) in table.iter().enumerate() {
                        let (p, q, r) = (
                            homs[a * n + b].count(d),
                            homs[b * n + c].count(d),
                            homs[a * n + c].count(d),
                        );
                        if row.len() != p * q {
                            return Err(Error::Schema(format!(
                                "composition ({}, {}, {}) in dimension {d} has {} entries, expected {}",
                                objects[a],
                                objects[b],
                                objects[c],
                                row.len(),
                                p * q
                            )));
                        }
                        if row.iter().any(|&x| x >= r) {
                            return Err(Error::Schema("composition result out of range".into()));
                        }
                    }
                }
            }
        }
        Ok(EnrichedCategory {
            truncation,
            objects,
            homs,
            identities,
            compositions,
        })
    }

    pub fn empty(truncation: usize) -> Self {
        EnrichedCategory {
            truncation,
            objects: Vec::new(),
            homs: Vec::new(),
            identities: Vec::new(),
            compositions: Vec::new(),
        }
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_index(&self, name: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn hom(&self, a: usize, b: usize) -> &SimplicialSet {
        &self.homs[a * self.objects.len() + b]
    }

    pub fn identity(&self, a: usize) -> usize {
        self.identities[a]
    }

    /// `∘_d(σ, τ)` for `σ ∈ hom(a,b)_d`, `τ ∈ hom(b,c)_d`.
    pub fn compose(
        &self,
        a: usize,
        b: usize,
        c: usize,
        d: usize,
        sigma: usize,
        tau: usize,
    ) -> usize {
        let n = self.objects.len();
        let q = self.hom(b, c).count(d);
        self.compositions[(a * n + b) * n + c][d][sigma * q + tau]
    }

    pub(crate) fn composition_table(&self, a: usize, b: usize, c: usize) -> &[Vec<usize>] {
        let n = self.objects.len();
        &self.compositions[(a * n + b) * n + c]
    }

    /// `s_{n-1} … s_0` of the 0-simplex `f ∈ hom(a,b)`.
    pub fn total_degeneracy(&self, a: usize, b: usize, f: usize, n: usize) -> Result<usize> {
        self.hom(a, b).total_degeneracy(f, n)
    }

    /// Number of `d`-simplices summed over all hom pairs.
    pub fn simplex_count(&self, d: usize) -> usize {
        self.homs.iter().map(|h| h.count(d)).sum()
    }

    /// Restriction of every hom to dimensions `0..=d`.
    pub fn truncate(&self, d: usize) -> Result<EnrichedCategory> {
        if d > self.truncation {
            return Err(Error::Truncation {
                requested: d,
                truncation: self.truncation,
            });
        }
        Ok(EnrichedCategory {
            truncation: d,
            objects: self.objects.clone(),
            homs: self.homs.iter().map(|h| h.truncate(d)).collect(),
            identities: self.identities.clone(),
            compositions: self.compositions.iter().map(|t| t[..=d].to_vec()).collect(),
        })
    }

    fn hom_label(&self, a: usize, b: usize) -> String {
        format!("hom({}, {})", self.objects[a], self.objects[b])
    }

    /// Checks the hom simplicial sets, unit laws, associativity and
    /// simpliciality of composition in every dimension up to `D`.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = self.objects.len();
        for a in 0..n {
            for b in 0..n {
                report.extend(
                    self.hom(a, b)
                        .validate(&format!("{}: ", self.hom_label(a, b))),
                );
            }
        }
        if !report.is_valid() {
            return report;
        }
        self.check_units(&mut report);
        self.check_simpliciality(&mut report);
        self.check_associativity(&mut report);
        report
    }

    fn check_units(&self, report: &mut ValidationReport) {
        let n = self.objects.len();
        for a in 0..n {
            for b in 0..n {
                let h = self.hom(a, b);
                for d in 0..=self.truncation {
                    let ea = self
                        .hom(a, a)
                        .total_degeneracy(self.identities[a], d)
                        .unwrap();
                    let eb = self
                        .hom(b, b)
                        .total_degeneracy(self.identities[b], d)
                        .unwrap();
                    for x in 0..h.count(d) {
                        if self.compose(a, a, b, d, ea, x) != x {
                            report.push(Violation::new(
                                format!("{}: simplex `{}`", self.hom_label(a, b), h.name(d, x)),
                                format!(
                                    "left unit law fails for the identity of `{}`",
                                    self.objects[a]
                                ),
                            ));
                        }
                        if self.compose(a, b, b, d, x, eb) != x {
                            report.push(Violation::new(
                                format!("{}: simplex `{}`", self.hom_label(a, b), h.name(d, x)),
                                format!(
                                    "right unit law fails for the identity of `{}`",
                                    self.objects[b]
                                ),
                            ));
                        }
                    }
                }
            }
        }
    }

    fn check_simpliciality(&self, report: &mut ValidationReport) {
        let n = self.objects.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (hab, hbc, hac) = (self.hom(a, b), self.hom(b, c), self.hom(a, c));
                    for d in 0..=self.truncation {
                        for x in 0..hab.count(d) {
                            for y in 0..hbc.count(d) {
                                let xy = self.compose(a, b, c, d, x, y);
                                let loc = || {
                                    format!(
                                        "composition {} × {} in dimension {d}",
                                        hab.name(d, x),
                                        hbc.name(d, y)
                                    )
                                };
                                if d > 0 {
                                    for j in 0..=d {
                                        let lhs = hac.face(d, xy, j);
                                        let rhs = self.compose(
                                            a,
                                            b,
                                            c,
                                            d - 1,
                                            hab.face(d, x, j),
                                            hbc.face(d, y, j),
                                        );
                                        if lhs != rhs {
                                            report.push(Violation::new(
                                                loc(),
                                                format!("does not commute with ∂{j}"),
                                            ));
                                        }
                                    }
                                }
                                if d < self.truncation {
                                    for k in 0..=d {
                                        let lhs = hac.degeneracy(d, xy, k);
                                        let rhs = self.compose(
                                            a,
                                            b,
                                            c,
                                            d + 1,
                                            hab.degeneracy(d, x, k),
                                            hbc.degeneracy(d, y, k),
                                        );
                                        if lhs != rhs {
                                            report.push(Violation::new(
                                                loc(),
                                                format!("does not commute with s{k}"),
                                            ));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    fn check_associativity(&self, report: &mut ValidationReport) {
        let n = self.objects.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for e in 0..n {
                        for d in 0..=self.truncation {
                            for x in 0..self.hom(a, b).count(d) {
                                for y in 0..self.hom(b, c).count(d) {
                                    let xy = self.compose(a, b, c, d, x, y);
                                    for z in 0..self.hom(c, e).count(d) {
                                        let lhs = self.compose(a, c, e, d, xy, z);
                                        let rhs = self.compose(
                                            a,
                                            b,
                                            e,
                                            d,
                                            x,
                                            self.compose(b, c, e, d, y, z),
                                        );
                                        if lhs != rhs {
                                            report.push(Violation::new(
                                                format!(
                                                    "composition {} × {} × {} in dimension {d}",
                                                    self.hom(a, b).name(d, x),
                                                    self.hom(b, c).name(d, y),
                                                    self.hom(c, e).name(d, z)
                                                ),
                                                "associativity fails",
                                            ));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    /// Objects with their 0-simplices as morphisms and `∘_0` as composition.
    pub fn underlying_category(&self) -> Category1 {
        let n = self.objects.len();
        let mut morphisms = Vec::new();
        let mut index = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                for v in 0..self.hom(a, b).count(0) {
                    index.insert((a, b, v), morphisms.len());
                    morphisms.push(Morphism {
                        name: self.hom(a, b).name(0, v).to_string(),
                        source: a,
                        target: b,
                        vertex: v,
                    });
                }
            }
        }
        let m = morphisms.len();
        let mut composition = vec![None; m * m];
        for (i, f) in morphisms.iter().enumerate() {
            for (j, g) in morphisms.iter().enumerate() {
                if f.target == g.source {
                    let r = self.compose(f.source, f.target, g.target, 0, f.vertex, g.vertex);
                    composition[i * m + j] = Some(index[&(f.source, g.target, r)]);
                }
            }
        }
        let identities = (0..n).map(|a| index[&(a, a, self.identities[a])]).collect();
        Category1 {
            objects: self.objects.clone(),
            morphisms,
            identities,
            composition,
        }
    }
}

/// A morphism of an ordinary category; `vertex` is its position among the
/// morphisms with the same source and target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub vertex: usize,
}

/// Finite ordinary category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Category1 {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    /// `composition[f * m + g]` is "f then g" when composable.
    composition: Vec<Option<usize>>,
}

impl Category1 {
    /// Builds and checks a category. `compose(f, g)` returns "f then g" for
    /// composable `f, g`; it is only queried on composable pairs.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<(String, usize, usize)>,
        identities: Vec<usize>,
        mut compose: impl FnMut(usize, usize) -> Option<usize>,
    ) -> Result<Self> {
        let n = objects.len();
        let mut names = HashMap::new();
        let mut counts: HashMap<(usize, usize), usize> = HashMap::new();
        let mut ms = Vec::with_capacity(morphisms.len());
        for (name, s, t) in morphisms {
            if s >= n || t >= n {
                return Err(Error::Builder(format!(
                    "morphism `{name}` has an unknown endpoint"
                )));
            }
            if names.insert(name.clone(), ms.len()).is_some() {
                return Err(Error::Builder(format!("duplicate morphism `{name}`")));
            }
            let slot = counts.entry((s, t)).or_insert(0);
            ms.push(Morphism {
                name,
                source: s,
                target: t,
                vertex: *slot,
            });
            *slot += 1;
        }
        if identities.len() != n {
            return Err(Error::Builder("one identity per object is required".into()));
        }
        for (a, &e) in identities.iter().enumerate() {
            if e >= ms.len() || ms[e].source != a || ms[e].target != a {
                return Err(Error::Builder(format!(
                    "identity of `{}` is not an endomorphism",
                    objects[a]
                )));
            }
        }
        let m = ms.len();
        let mut composition = vec![None; m * m];
        for f in 0..m {
            for g in 0..m {
                if ms[f].target != ms[g].source {
                    continue;
                }
                let r = compose(f, g).ok_or_else(|| {
                    Error::Builder(format!(
                        "missing composite of `{}` then `{}`",
                        ms[f].name, ms[g].name
                    ))
                })?;
                if r >= m || ms[r].source != ms[f].source || ms[r].target != ms[g].target {
                    return Err(Error::Builder(format!(
                        "composite of `{}` then `{}` has the wrong endpoints",
                        ms[f].name, ms[g].name
                    )));
                }
                composition[f * m + g] = Some(r);
            }
        }
        let cat = Category1 {
            objects,
            morphisms: ms,
            identities,
            composition,
        };
        cat.check_axioms()?;
        Ok(cat)
    }

    fn check_axioms(&self) -> Result<()> {
        let m = self.morphisms.len();
        for f in 0..m {
            let (s, t) = (self.morphisms[f].source, self.morphisms[f].target);
            if self.compose(self.identities[s], f) != Some(f)
                || self.compose(f, self.identities[t]) != Some(f)
            {
                return Err(Error::Builder(format!(
                    "unit law fails at `{}`",
                    self.morphisms[f].name
                )));
            }
            for g in 0..m {
                let Some(fg) = self.compose(f, g) else {
                    continue;
                };
                for h in 0..m {
                    let Some(gh) = self.compose(g, h) else {
                        continue;
                    };
                    if self.compose(fg, h) != self.compose(f, gh) {
                        return Err(Error::Builder(format!(
                            "associativity fails at `{}`, `{}`, `{}`",
                            self.morphisms[f].name, self.morphisms[g].name, self.morphisms[h].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphism(&self, f: usize) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn identity(&self, a: usize) -> usize {
        self.identities[a]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities.contains(&f)
    }

    /// "f then g", or `None` when not composable.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.composition[f * self.morphisms.len() + g]
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    pub fn between(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&f| self.morphisms[f].source == a && self.morphisms[f].target == b)
            .collect()
    }

    /// Index of the morphism stored as vertex `v` of `hom(a, b)`.
    pub fn from_vertex(&self, a: usize, b: usize, v: usize) -> Option<usize> {
        self.morphisms
            .iter()
            .position(|m| m.source == a && m.target == b && m.vertex == v)
    }
}
