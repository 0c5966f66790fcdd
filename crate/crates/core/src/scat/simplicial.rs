use std::collections::HashMap;

use super::report::{ValidationReport, Violation};
use crate::error::{Error, Result};

/// Simplicial set stored explicitly up to a truncation dimension `D`.
///
/// Simplices of each dimension are numbered `0..count(d)`, degenerate ones
/// included. `faces[d][x]` lists `∂_0 x, …, ∂_d x` for `d ≥ 1` and
/// `degeneracies[d][x]` lists `s_0 x, …, s_d x` for `d < D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSet {
    names: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<usize>>>,
    degeneracies: Vec<Vec<Vec<usize>>>,
}

impl SimplicialSet {
    pub fn empty(truncation: usize) -> Self {
        SimplicialSet {
            names: vec![Vec::new(); truncation + 1],
            faces: vec![Vec::new(); truncation + 1],
            degeneracies: vec![Vec::new(); truncation + 1],
        }
    }

    /// Checks table shapes and index bounds; simplicial identities are the
    /// business of [`SimplicialSet::validate`].
    pub fn new(
        names: Vec<Vec<String>>,
        faces: Vec<Vec<Vec<usize>>>,
        degeneracies: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let levels = names.len();
        if levels == 0 || faces.len() != levels || degeneracies.len() != levels {
            return Err(Error::Schema(
                "simplicial set tables have inconsistent depth".into(),
            ));
        }
        let top = levels - 1;
        for d in 0..levels {
            let n = names[d].len();
            if faces[d].len() != n || degeneracies[d].len() != n {
                return Err(Error::Schema(format!(
                    "dimension {d}: table length mismatch"
                )));
            }
            for (x, fs) in faces[d].iter().enumerate() {
                let expected = if d == 0 { 0 } else { d + 1 };
                if fs.len() != expected {
                    return Err(Error::Schema(format!(
                        "simplex `{}` has {} faces, expected {expected}",
                        names[d][x],
                        fs.len()
                    )));
                }
                if d > 0 && fs.iter().any(|&f| f >= names[d - 1].len()) {
                    return Err(Error::Schema(format!(
                        "face of `{}` out of range",
                        names[d][x]
                    )));
                }
            }
            for (x, ds) in degeneracies[d].iter().enumerate() {
                let expected = if d == top { 0 } else { d + 1 };
                if ds.len() != expected {
                    return Err(Error::Schema(format!(
                        "simplex `{}` has {} degeneracies, expected {expected}",
                        names[d][x],
                        ds.len()
                    )));
                }
                if d < top && ds.iter().any(|&s| s >= names[d + 1].len()) {
                    return Err(Error::Schema(format!(
                        "degeneracy of `{}` out of range",
                        names[d][x]
                    )));
                }
            }
        }
        let mut seen = HashMap::new();
        for (d, level) in names.iter().enumerate() {
            for name in level {
                if seen.insert(name.clone(), d).is_some() {
                    return Err(Error::Schema(format!("duplicate simplex id `{name}`")));
                }
            }
        }
        Ok(SimplicialSet {
            names,
            faces,
            degeneracies,
        })
    }

    pub fn truncation(&self) -> usize {
        self.names.len() - 1
    }

    pub fn count(&self, d: usize) -> usize {
        self.names.get(d).map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.names[0].is_empty()
    }

    pub fn name(&self, d: usize, x: usize) -> &str {
        &self.names[d][x]
    }

    pub fn names(&self, d: usize) -> &[String] {
        &self.names[d]
    }

    pub fn find(&self, name: &str) -> Option<(usize, usize)> {
        self.names
            .iter()
            .enumerate()
            .find_map(|(d, level)| level.iter().position(|n| n == name).map(|x| (d, x)))
    }

    /// `∂_j` of simplex `x` of dimension `d ≥ 1`.
    pub fn face(&self, d: usize, x: usize, j: usize) -> usize {
        self.faces[d][x][j]
    }

    /// `s_k` of simplex `x` of dimension `d < D`.
    pub fn degeneracy(&self, d: usize, x: usize, k: usize) -> usize {
        self.degeneracies[d][x][k]
    }

    pub fn faces_of(&self, d: usize, x: usize) -> &[usize] {
        &self.faces[d][x]
    }

    pub fn degeneracies_of(&self, d: usize, x: usize) -> &[usize] {
        &self.degeneracies[d][x]
    }

    /// Degenerate simplices are exactly the images of degeneracy maps.
    pub fn is_degenerate(&self, d: usize, x: usize) -> bool {
        d > 0 && self.degeneracies[d - 1].iter().any(|ds| ds.contains(&x))
    }

    /// True when every simplex of positive dimension is degenerate and the
    /// simplex counts do not grow with dimension.
    pub fn is_discrete(&self) -> bool {
        (1..=self.truncation()).all(|d| {
            self.count(d) == self.count(0) && (0..self.count(d)).all(|x| self.is_degenerate(d, x))
        })
    }

    /// `s_{n-1} ∘ … ∘ s_0` applied to the vertex `v`.
    pub fn total_degeneracy(&self, v: usize, n: usize) -> Result<usize> {
        if n > self.truncation() {
            return Err(Error::Truncation {
                requested: n,
                truncation: self.truncation(),
            });
        }
        let mut x = v;
        for k in 0..n {
            x = self.degeneracy(k, x, k);
        }
        Ok(x)
    }

    /// Restriction to dimensions `0..=d`.
    pub fn truncate(&self, d: usize) -> SimplicialSet {
        assert!(d <= self.truncation());
        let mut degeneracies = self.degeneracies[..=d].to_vec();
        for ds in &mut degeneracies[d] {
            ds.clear();
        }
        SimplicialSet {
            names: self.names[..=d].to_vec(),
            faces: self.faces[..=d].to_vec(),
            degeneracies,
        }
    }

    /// Checks every simplicial identity whose two sides live inside the
    /// truncation, plus that every degenerate simplex comes from below.
    pub fn validate(&self, context: &str) -> ValidationReport {
        let mut report = ValidationReport::default();
        let top = self.truncation();
        let loc = |d: usize, x: usize| format!("{context}simplex `{}` (dim {d})", self.names[d][x]);
        // ∂_i ∂_j = ∂_{j-1} ∂_i for i < j
        for d in 2..=top {
            for x in 0..self.count(d) {
                for j in 0..=d {
                    for i in 0..j {
                        let lhs = self.face(d - 1, self.face(d, x, j), i);
                        let rhs = self.face(d - 1, self.face(d, x, i), j - 1);
                        if lhs != rhs {
                            report.push(Violation::new(
                                loc(d, x),
                                format!("∂{i}∂{j} ≠ ∂{}∂{i}", j - 1),
                            ));
                        }
                    }
                }
            }
        }
        // s_i s_j = s_{j+1} s_i for i ≤ j
        for d in 0..top.saturating_sub(1) {
            for x in 0..self.count(d) {
                for j in 0..=d {
                    for i in 0..=j {
                        let lhs = self.degeneracy(d + 1, self.degeneracy(d, x, j), i);
                        let rhs = self.degeneracy(d + 1, self.degeneracy(d, x, i), j + 1);
                        if lhs != rhs {
                            report.push(Violation::new(
                                loc(d, x),
                                format!("s{i}s{j} ≠ s{}s{i}", j + 1),
                            ));
                        }
                    }
                }
            }
        }
        // mixed identities ∂_i s_j
        for d in 0..top {
            for x in 0..self.count(d) {
                for j in 0..=d {
                    let sx = self.degeneracy(d, x, j);
                    for i in 0..=d + 1 {
                        let lhs = self.face(d + 1, sx, i);
                        let rhs = if i == j || i == j + 1 {
                            Some(x)
                        } else if d == 0 {
                            None
                        } else if i < j {
                            Some(self.degeneracy(d - 1, self.face(d, x, i), j - 1))
                        } else {
                            Some(self.degeneracy(d - 1, self.face(d, x, i - 1), j))
                        };
                        if let Some(rhs) = rhs {
                            if lhs != rhs {
                                report.push(Violation::new(
                                    loc(d, x),
                                    format!("∂{i}s{j} identity fails"),
                                ));
                            }
                        }
                    }
                }
            }
        }
        report
    }

    pub(crate) fn from_parts_unchecked(
        names: Vec<Vec<String>>,
        faces: Vec<Vec<Vec<usize>>>,
        degeneracies: Vec<Vec<Vec<usize>>>,
    ) -> Self {
        SimplicialSet {
            names,
            faces,
            degeneracies,
        }
    }
}

/// A simplex written as `η^*(x)` with `x` non-degenerate and `η` an
/// order-preserving surjection `[n] → [dim x]` (Eilenberg–Zilber form).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct NormalForm {
    pub base: usize,
    pub eta: Vec<usize>,
}

impl NormalForm {
    pub fn vertex(base: usize, n: usize) -> Self {
        NormalForm {
            base,
            eta: vec![0; n + 1],
        }
    }

    pub fn dim(&self) -> usize {
        self.eta.len() - 1
    }
}

/// Non-degenerate simplices plus their faces; the degenerate simplices are
/// generated from them.
pub(crate) struct FreeSimplices {
    pub names: Vec<String>,
    pub dims: Vec<usize>,
    /// Faces of each non-degenerate simplex, already in normal form.
    pub faces: Vec<Vec<NormalForm>>,
}

impl FreeSimplices {
    pub fn new() -> Self {
        FreeSimplices {
            names: Vec::new(),
            dims: Vec::new(),
            faces: Vec::new(),
        }
    }

    pub fn add(&mut self, name: String, dim: usize, faces: Vec<NormalForm>) -> usize {
        debug_assert!(faces.len() == if dim == 0 { 0 } else { dim + 1 });
        self.names.push(name);
        self.dims.push(dim);
        self.faces.push(faces);
        self.names.len() - 1
    }

    pub fn face(&self, s: &NormalForm, i: usize) -> NormalForm {
        let m = self.dims[s.base];
        let k = s.eta[i];
        let mut rest = s.eta.clone();
        rest.remove(i);
        if rest.contains(&k) || m == 0 {
            return NormalForm {
                base: s.base,
                eta: rest,
            };
        }
        let squeezed: Vec<usize> = rest
            .iter()
            .map(|&t| if t > k { t - 1 } else { t })
            .collect();
        let y = &self.faces[s.base][k];
        NormalForm {
            base: y.base,
            eta: squeezed.iter().map(|&t| y.eta[t]).collect(),
        }
    }

    pub fn degeneracy(&self, s: &NormalForm, k: usize) -> NormalForm {
        let mut eta = s.eta.clone();
        eta.insert(k, s.eta[k]);
        NormalForm { base: s.base, eta }
    }

    fn name_of(&self, s: &NormalForm) -> String {
        let base = &self.names[s.base];
        if s.dim() == self.dims[s.base] {
            return base.clone();
        }
        let ops: String = (0..s.dim())
            .rev()
            .filter(|&j| s.eta[j] == s.eta[j + 1])
            .map(|j| format!("s{j}"))
            .collect();
        format!("{ops}({base})")
    }

    /// Enumerates every simplex up to `truncation` and tabulates faces and
    /// degeneracies.
    pub fn generate(
        &self,
        truncation: usize,
    ) -> (
        SimplicialSet,
        Vec<Vec<NormalForm>>,
        HashMap<NormalForm, usize>,
    ) {
        let mut levels: Vec<Vec<NormalForm>> = vec![Vec::new(); truncation + 1];
        for (n, level) in levels.iter_mut().enumerate() {
            for base in 0..self.names.len() {
                let m = self.dims[base];
                if m > n {
                    continue;
                }
                for eta in surjections(n, m) {
                    level.push(NormalForm { base, eta });
                }
            }
        }
        let mut index = HashMap::new();
        for level in &levels {
            for (i, s) in level.iter().enumerate() {
                index.insert(s.clone(), i);
            }
        }
        let names = levels
            .iter()
            .map(|l| l.iter().map(|s| self.name_of(s)).collect())
            .collect();
        let faces = levels
            .iter()
            .enumerate()
            .map(|(n, level)| {
                level
                    .iter()
                    .map(|s| {
                        if n == 0 {
                            Vec::new()
                        } else {
                            (0..=n).map(|i| index[&self.face(s, i)]).collect()
                        }
                    })
                    .collect()
            })
            .collect();
        let degeneracies = levels
            .iter()
            .enumerate()
            .map(|(n, level)| {
                level
                    .iter()
                    .map(|s| {
                        if n == truncation {
                            Vec::new()
                        } else {
                            (0..=n).map(|k| index[&self.degeneracy(s, k)]).collect()
                        }
                    })
                    .collect()
            })
            .collect();
        (
            SimplicialSet::from_parts_unchecked(names, faces, degeneracies),
            levels,
            index,
        )
    }
}

/// Order-preserving surjections `[n] → [m]`, as value sequences.
fn surjections(n: usize, m: usize) -> Vec<Vec<usize>> {
    // choose which m of the n steps increment
    let mut out = Vec::new();
    let mut steps = vec![false; n];
    fn rec(pos: usize, left: usize, steps: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if pos == steps.len() {
            if left == 0 {
                let mut eta = vec![0];
                for &s in steps.iter() {
                    eta.push(eta.last().unwrap() + usize::from(s));
                }
                out.push(eta);
            }
            return;
        }
        if steps.len() - pos > left {
            steps[pos] = false;
            rec(pos + 1, left, steps, out);
        }
        if left > 0 {
            steps[pos] = true;
            rec(pos + 1, left - 1, steps, out);
        }
    }
    rec(0, m, &mut steps, &mut out);
    out
}
