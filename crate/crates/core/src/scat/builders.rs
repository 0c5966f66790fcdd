use std::collections::{HashMap, HashSet};

use super::category::{Category1, EnrichedCategory};
use super::simplicial::{FreeSimplices, NormalForm};
use crate::error::{Error, Result};

/// Finite partial order given by its elements and the pairs `a ≤ b`.
/// Reflexive pairs may be omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    pub elements: Vec<String>,
    pub relation: Vec<(String, String)>,
}

impl Poset {
    pub fn new(elements: Vec<String>, relation: Vec<(String, String)>) -> Self {
        Poset { elements, relation }
    }

    pub fn antichain(k: usize) -> Self {
        Poset {
            elements: (0..k).map(|i| i.to_string()).collect(),
            relation: Vec::new(),
        }
    }

    /// `0 < 1 < … < k-1`.
    pub fn chain(k: usize) -> Self {
        let relation = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i.to_string(), j.to_string())))
            .collect();
        Poset {
            elements: (0..k).map(|i| i.to_string()).collect(),
            relation,
        }
    }

    /// Product order on `rows × cols`, elements named `"ij"`.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let name = |i: usize, j: usize| format!("{i}{j}");
        let mut elements = Vec::new();
        let mut relation = Vec::new();
        for i in 0..rows {
            for j in 0..cols {
                elements.push(name(i, j));
                for k in i..rows {
                    for l in j..cols {
                        if (k, l) != (i, j) {
                            relation.push((name(i, j), name(k, l)));
                        }
                    }
                }
            }
        }
        Poset { elements, relation }
    }

    /// Closes a list of cover relations transitively.
    pub fn from_covers(elements: Vec<String>, covers: &[(String, String)]) -> Self {
        let mut rel: HashSet<(String, String)> = covers.iter().cloned().collect();
        loop {
            let mut added = Vec::new();
            for (a, b) in &rel {
                for (c, d) in &rel {
                    if b == c && !rel.contains(&(a.clone(), d.clone())) && a != d {
                        added.push((a.clone(), d.clone()));
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            rel.extend(added);
        }
        let mut relation: Vec<_> = rel.into_iter().collect();
        let pos = |x: &String| elements.iter().position(|e| e == x);
        relation.sort_by_key(|(a, b)| (pos(a), pos(b)));
        Poset { elements, relation }
    }

    /// The strict order as index pairs, after checking it is a partial order.
    fn strict_pairs(&self) -> Result<HashSet<(usize, usize)>> {
        let mut seen = HashSet::new();
        for e in &self.elements {
            if !seen.insert(e) {
                return Err(Error::Builder(format!("duplicate poset element `{e}`")));
            }
        }
        let idx = |x: &str| {
            self.elements
                .iter()
                .position(|e| e == x)
                .ok_or_else(|| Error::Builder(format!("unknown poset element `{x}`")))
        };
        let mut lt = HashSet::new();
        for (a, b) in &self.relation {
            let (i, j) = (idx(a)?, idx(b)?);
            if i != j {
                lt.insert((i, j));
            }
        }
        for &(i, j) in &lt {
            if lt.contains(&(j, i)) {
                return Err(Error::Builder(format!(
                    "relation is not antisymmetric: `{}` and `{}`",
                    self.elements[i], self.elements[j]
                )));
            }
        }
        for &(i, j) in &lt {
            for &(k, l) in &lt {
                if j == k && !lt.contains(&(i, l)) {
                    return Err(Error::Builder(format!(
                        "relation is not transitive: `{}` ≤ `{}` ≤ `{}`",
                        self.elements[i], self.elements[j], self.elements[l]
                    )));
                }
            }
        }
        Ok(lt)
    }

    /// The poset as an ordinary category: identities `id{x}` and one
    /// morphism `{x}->{y}` for each `x < y`.
    pub fn category(&self) -> Result<Category1> {
        let lt = self.strict_pairs()?;
        let n = self.elements.len();
        let mut morphisms = Vec::new();
        let mut index = HashMap::new();
        let mut identities = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    identities.push(morphisms.len());
                    index.insert((a, b), morphisms.len());
                    morphisms.push((format!("id{}", self.elements[a]), a, a));
                } else if lt.contains(&(a, b)) {
                    index.insert((a, b), morphisms.len());
                    morphisms.push((format!("{}->{}", self.elements[a], self.elements[b]), a, b));
                }
            }
        }
        let ends: Vec<(usize, usize)> = morphisms.iter().map(|(_, s, t)| (*s, *t)).collect();
        Category1::new(self.elements.clone(), morphisms, identities, |f, g| {
            index.get(&(ends[f].0, ends[g].1)).copied()
        })
    }
}

/// Ordinary category described by its non-identity morphisms and the
/// composites of composable non-identity pairs. Identities are named
/// `id{x}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategorySpec {
    pub objects: Vec<String>,
    /// `(name, source, target)`
    pub morphisms: Vec<(String, String, String)>,
    /// `(first, second, composite)`: "first then second"
    pub compositions: Vec<(String, String, String)>,
}

impl CategorySpec {
    pub fn category(&self) -> Result<Category1> {
        let obj = |x: &str| {
            self.objects
                .iter()
                .position(|o| o == x)
                .ok_or_else(|| Error::Builder(format!("unknown object `{x}`")))
        };
        let mut morphisms = Vec::new();
        let mut identities = Vec::new();
        for (a, o) in self.objects.iter().enumerate() {
            identities.push(morphisms.len());
            morphisms.push((format!("id{o}"), a, a));
        }
        for (name, s, t) in &self.morphisms {
            morphisms.push((name.clone(), obj(s)?, obj(t)?));
        }
        let by_name: HashMap<&str, usize> = morphisms
            .iter()
            .enumerate()
            .map(|(i, (n, _, _))| (n.as_str(), i))
            .collect();
        let morph = |x: &str| {
            by_name
                .get(x)
                .copied()
                .ok_or_else(|| Error::Builder(format!("unknown morphism `{x}`")))
        };
        let mut table = HashMap::new();
        for (f, g, h) in &self.compositions {
            if table.insert((morph(f)?, morph(g)?), morph(h)?).is_some() {
                return Err(Error::Builder(format!(
                    "composite of `{f}` then `{g}` given twice"
                )));
            }
        }
        let n = self.objects.len();
        let ids = identities.clone();
        Category1::new(self.objects.clone(), morphisms, identities, |f, g| {
            if f < n && ids[f] == f {
                Some(g)
            } else if g < n && ids[g] == g {
                Some(f)
            } else {
                table.get(&(f, g)).copied()
            }
        })
    }
}

/// A 1-simplex `name` from `from` to `to`, both morphisms `source → target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    pub source: String,
    pub target: String,
    pub from: String,
    pub to: String,
    pub name: String,
}

impl Homotopy {
    pub fn new(source: &str, target: &str, from: &str, to: &str, name: &str) -> Self {
        Homotopy {
            source: source.into(),
            target: target.into(),
            from: from.into(),
            to: to.into(),
            name: name.into(),
        }
    }
}

pub fn build_from_poset(poset: &Poset, truncation: usize) -> Result<EnrichedCategory> {
    enrich(&poset.category()?, &[], truncation)
}

/// Discrete enrichment of an ordinary category: every hom is the constant
/// simplicial set on its morphisms.
pub fn build_from_category(cat: &Category1, truncation: usize) -> Result<EnrichedCategory> {
    enrich(cat, &[], truncation)
}

/// Adds one non-degenerate 1-simplex per attachment to a category whose
/// homs are discrete, together with all its whiskerings by 0-simplices.
pub fn build_with_homotopies(
    base: &EnrichedCategory,
    attachments: &[Homotopy],
) -> Result<EnrichedCategory> {
    if attachments.is_empty() {
        return Ok(base.clone());
    }
    let n = base.object_count();
    for a in 0..n {
        for b in 0..n {
            if !base.hom(a, b).is_discrete() {
                return Err(Error::Builder(format!(
                    "hom({}, {}) is not discrete; homotopies attach only to discrete bases",
                    base.objects()[a],
                    base.objects()[b]
                )));
            }
        }
    }
    let cat = base.underlying_category();
    let mut resolved = Vec::new();
    for h in attachments {
        let a = base.object_index(&h.source)?;
        let b = base.object_index(&h.target)?;
        let find = |name: &str| {
            cat.between(a, b)
                .into_iter()
                .find(|&f| cat.morphism(f).name == name)
                .ok_or_else(|| {
                    Error::Builder(format!(
                        "`{name}` is not a morphism {} -> {}; homotopy `{}` needs a parallel pair",
                        h.source, h.target, h.name
                    ))
                })
        };
        resolved.push((find(&h.from)?, find(&h.to)?, h.name.clone()));
    }
    enrich(&cat, &resolved, base.truncation())
}

/// Free enrichment of `cat` with the attached 1-simplices `(from, to, name)`.
fn enrich(
    cat: &Category1,
    attachments: &[(usize, usize, String)],
    truncation: usize,
) -> Result<EnrichedCategory> {
    let n = cat.object_count();
    let morphs = cat.morphisms();
    let compose3 =
        |u: usize, f: usize, v: usize| cat.compose(u, f).and_then(|uf| cat.compose(uf, v)).unwrap();

    // non-degenerate simplices of every hom
    let mut free: Vec<FreeSimplices> = (0..n * n).map(|_| FreeSimplices::new()).collect();
    let mut vertex_base: Vec<usize> = vec![0; morphs.len()];
    for (f, m) in morphs.iter().enumerate() {
        vertex_base[f] = free[m.source * n + m.target].add(m.name.clone(), 0, Vec::new());
    }
    // whisker (u, k, v) lives in hom(source u, target v)
    let mut whiskers: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut whisker_of: Vec<HashMap<usize, (usize, usize, usize)>> = vec![HashMap::new(); n * n];
    for (k, (from, to, name)) in attachments.iter().enumerate() {
        let (a, b) = (morphs[*from].source, morphs[*from].target);
        for (u, mu) in morphs.iter().enumerate().filter(|(_, m)| m.target == a) {
            for (v, mv) in morphs.iter().enumerate().filter(|(_, m)| m.source == b) {
                let mut parts = Vec::new();
                if !cat.is_identity(u) {
                    parts.push(mu.name.as_str());
                }
                parts.push(name.as_str());
                if !cat.is_identity(v) {
                    parts.push(mv.name.as_str());
                }
                let hom = mu.source * n + mv.target;
                let faces = vec![
                    NormalForm::vertex(vertex_base[compose3(u, *to, v)], 0),
                    NormalForm::vertex(vertex_base[compose3(u, *from, v)], 0),
                ];
                let id = free[hom].add(parts.join("*"), 1, faces);
                whiskers.insert((u, k, v), id);
                whisker_of[hom].insert(id, (u, k, v));
            }
        }
    }
    let mut base_morphism: Vec<HashMap<usize, usize>> = vec![HashMap::new(); n * n];
    for (f, m) in morphs.iter().enumerate() {
        base_morphism[m.source * n + m.target].insert(vertex_base[f], f);
    }

    let generated: Vec<_> = free.iter().map(|fs| fs.generate(truncation)).collect();
    let mut homs = Vec::with_capacity(n * n);
    for (set, _, _) in &generated {
        homs.push(set.clone());
    }
    let identities = (0..n)
        .map(|a| vertex_base[cat.identity(a)])
        .collect::<Vec<_>>();

    let mut compositions = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (ab, bc, ac) = (a * n + b, b * n + c, a * n + c);
                let mut table = Vec::with_capacity(truncation + 1);
                for d in 0..=truncation {
                    let (left, right) = (&generated[ab].1[d], &generated[bc].1[d]);
                    let mut row = Vec::with_capacity(left.len() * right.len());
                    for x in left {
                        for y in right {
                            let nf = match (
                                base_morphism[ab].get(&x.base),
                                base_morphism[bc].get(&y.base),
                            ) {
                                (Some(&f), Some(&g)) => {
                                    NormalForm::vertex(vertex_base[cat.compose(f, g).unwrap()], d)
                                }
                                (None, Some(&g)) => {
                                    let (u, k, v) = whisker_of[ab][&x.base];
                                    NormalForm {
                                        base: whiskers[&(u, k, cat.compose(v, g).unwrap())],
                                        eta: x.eta.clone(),
                                    }
                                }
                                (Some(&f), None) => {
                                    let (u, k, v) = whisker_of[bc][&y.base];
                                    NormalForm {
                                        base: whiskers[&(cat.compose(f, u).unwrap(), k, v)],
                                        eta: y.eta.clone(),
                                    }
                                }
                                (None, None) => {
                                    return Err(Error::Builder(format!(
                                        "composite of attached simplices `{}` and `{}` is not specified",
                                        free[ab].names[x.base], free[bc].names[y.base]
                                    )));
                                }
                            };
                            row.push(generated[ac].2[&nf]);
                        }
                    }
                    table.push(row);
                }
                compositions.push(table);
            }
        }
    }
    EnrichedCategory::from_parts(
        truncation,
        cat.objects().to_vec(),
        homs,
        identities,
        compositions,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e1() -> EnrichedCategory {
        build_from_poset(&Poset::chain(2), 3).unwrap()
    }

    #[test]
    fn chain_is_interval() {
        let c = e1();
        assert!(c.validate().is_valid());
        let u = c.underlying_category();
        assert_eq!(u.morphism_count(), 3);
        assert_eq!(c.hom(1, 0).count(0), 0);
        assert_eq!(c.hom(0, 1).count(2), 1);
    }

    #[test]
    fn grid_has_nine_morphisms() {
        // 4 identities, 4 covers, 1 diagonal
        let c = build_from_poset(&Poset::grid(2, 2), 2).unwrap();
        assert!(c.validate().is_valid());
        assert_eq!(c.underlying_category().morphism_count(), 9);
    }

    #[test]
    fn antichain_has_only_identities() {
        let c = build_from_poset(&Poset::antichain(2), 2).unwrap();
        let u = c.underlying_category();
        assert_eq!(u.morphism_count(), 2);
        assert!((0..2).all(|f| u.is_identity(f)));
    }

    #[test]
    fn bad_relations_rejected() {
        let s = |x: &str| x.to_string();
        let cyclic = Poset::new(
            vec![s("a"), s("b")],
            vec![(s("a"), s("b")), (s("b"), s("a"))],
        );
        assert!(matches!(
            build_from_poset(&cyclic, 1),
            Err(Error::Builder(_))
        ));
        let open = Poset::new(
            vec![s("a"), s("b"), s("c")],
            vec![(s("a"), s("b")), (s("b"), s("c"))],
        );
        assert!(matches!(build_from_poset(&open, 1), Err(Error::Builder(_))));
        let closed = Poset::from_covers(open.elements.clone(), &open.relation);
        assert!(build_from_poset(&closed, 1).is_ok());
    }

    fn parallel_pair_base() -> EnrichedCategory {
        let s = |x: &str| x.to_string();
        let spec = CategorySpec {
            objects: vec![s("a"), s("b")],
            morphisms: vec![(s("f"), s("a"), s("b")), (s("g"), s("a"), s("b"))],
            compositions: vec![],
        };
        build_from_category(&spec.category().unwrap(), 3).unwrap()
    }

    #[test]
    fn homotopy_gives_parallel_pair_hom() {
        let base = parallel_pair_base();
        let c = build_with_homotopies(&base, &[Homotopy::new("a", "b", "f", "g", "h")]).unwrap();
        assert!(c.validate().is_valid(), "{}", c.validate());
        let hom = c.hom(0, 1);
        let nondeg: Vec<_> = (0..hom.count(1))
            .filter(|&x| !hom.is_degenerate(1, x))
            .collect();
        assert_eq!(nondeg.len(), 1);
        let h = nondeg[0];
        assert_eq!(hom.name(1, h), "h");
        assert_eq!(hom.name(0, hom.face(1, h, 1)), "f");
        assert_eq!(hom.name(0, hom.face(1, h, 0)), "g");
        assert_eq!(c.underlying_category().morphism_count(), 4);
    }

    #[test]
    fn empty_attachment_is_identity() {
        let base = parallel_pair_base();
        assert_eq!(build_with_homotopies(&base, &[]).unwrap(), base);
    }

    #[test]
    fn self_homotopy_and_whiskers() {
        let base = build_from_poset(&Poset::chain(3), 2).unwrap();
        let c =
            build_with_homotopies(&base, &[Homotopy::new("0", "1", "0->1", "0->1", "h")]).unwrap();
        assert!(c.validate().is_valid(), "{}", c.validate());
        let hom02 = c.hom(0, 2);
        let (d, w) = hom02.find("h*1->2").unwrap();
        assert_eq!(d, 1);
        assert_eq!(hom02.face(1, w, 0), hom02.face(1, w, 1));
    }

    #[test]
    fn non_parallel_rejected() {
        let base = build_from_poset(&Poset::chain(3), 2).unwrap();
        let err = build_with_homotopies(&base, &[Homotopy::new("0", "1", "0->1", "0->2", "h")]);
        assert!(matches!(err, Err(Error::Builder(_))));
    }

    #[test]
    fn composing_two_attached_simplices_rejected() {
        let s = |x: &str| x.to_string();
        let spec = CategorySpec {
            objects: vec![s("a")],
            morphisms: vec![(s("e"), s("a"), s("a"))],
            compositions: vec![(s("e"), s("e"), s("e"))],
        };
        let base = build_from_category(&spec.category().unwrap(), 1).unwrap();
        let err = build_with_homotopies(&base, &[Homotopy::new("a", "a", "e", "ida", "h")]);
        assert!(matches!(err, Err(Error::Builder(_))));
    }
}
