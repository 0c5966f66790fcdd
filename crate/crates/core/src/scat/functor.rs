use rand::seq::SliceRandom;
use rand::Rng;

use super::category::{Category1, EnrichedCategory};
use super::report::{ValidationReport, Violation};
use super::simplicial::SimplicialSet;
use crate::error::{Error, Result};

/// Simplicially enriched functor given by its object map and, for every
/// source hom pair, a simplex map per dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnrichedFunctor {
    object_map: Vec<usize>,
    /// `hom_maps[a * n + b][d][x]` is the image of the `d`-simplex `x`.
    hom_maps: Vec<Vec<Vec<usize>>>,
}

impl EnrichedFunctor {
    pub fn new(object_map: Vec<usize>, hom_maps: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        if hom_maps.len() != object_map.len() * object_map.len() {
            return Err(Error::Schema(
                "functor needs one hom map per source hom pair".into(),
            ));
        }
        Ok(EnrichedFunctor {
            object_map,
            hom_maps,
        })
    }

    pub fn identity(c: &EnrichedCategory) -> Self {
        let n = c.object_count();
        let hom_maps = (0..n * n)
            .map(|i| {
                let h = c.hom(i / n, i % n);
                (0..=c.truncation())
                    .map(|d| (0..h.count(d)).collect())
                    .collect()
            })
            .collect();
        EnrichedFunctor {
            object_map: (0..n).collect(),
            hom_maps,
        }
    }

    pub fn object_map(&self) -> &[usize] {
        &self.object_map
    }

    pub fn source_object_count(&self) -> usize {
        self.object_map.len()
    }

    /// Image of the `d`-simplex `x` of `hom(a, b)`.
    pub fn apply(&self, a: usize, b: usize, d: usize, x: usize) -> usize {
        self.hom_maps[a * self.object_map.len() + b][d][x]
    }

    pub fn is_injective_on_objects(&self) -> bool {
        let mut seen = vec![false; self.object_map.iter().max().map_or(0, |m| m + 1)];
        self.object_map
            .iter()
            .all(|&o| !std::mem::replace(&mut seen[o], true))
    }

    /// "self then other".
    pub fn then(&self, other: &EnrichedFunctor) -> Result<EnrichedFunctor> {
        let m = other.object_map.len();
        if self.object_map.iter().any(|&o| o >= m) {
            return Err(Error::Dimension("functors are not composable".into()));
        }
        let n = self.object_map.len();
        let object_map = self
            .object_map
            .iter()
            .map(|&o| other.object_map[o])
            .collect();
        let hom_maps = (0..n * n)
            .map(|i| {
                let (fa, fb) = (self.object_map[i / n], self.object_map[i % n]);
                self.hom_maps[i]
                    .iter()
                    .enumerate()
                    .map(|(d, xs)| {
                        xs.iter()
                            .map(|&x| other.hom_maps[fa * m + fb][d][x])
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(EnrichedFunctor {
            object_map,
            hom_maps,
        })
    }

    /// Images of the 1-morphisms, as indices into `tgt_cat`.
    pub fn morphism_map(&self, src_cat: &Category1, tgt_cat: &Category1) -> Vec<usize> {
        src_cat
            .morphisms()
            .iter()
            .map(|m| {
                let (fa, fb) = (self.object_map[m.source], self.object_map[m.target]);
                let w = self.apply(m.source, m.target, 0, m.vertex);
                tgt_cat
                    .from_vertex(fa, fb, w)
                    .expect("functor image is a vertex of the target hom")
            })
            .collect()
    }

    /// Checks shapes, simpliciality of every hom map, and preservation of
    /// identities and composition.
    pub fn validate(&self, src: &EnrichedCategory, tgt: &EnrichedCategory) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = src.object_count();
        if self.object_map.len() != n || self.object_map.iter().any(|&o| o >= tgt.object_count()) {
            report.push(Violation::new(
                "object map",
                "has the wrong domain or codomain",
            ));
            return report;
        }
        if src.truncation() != tgt.truncation() {
            report.push(Violation::new(
                "functor",
                "source and target truncations differ",
            ));
            return report;
        }
        let top = src.truncation();
        for a in 0..n {
            for b in 0..n {
                let (h, th) = (
                    src.hom(a, b),
                    tgt.hom(self.object_map[a], self.object_map[b]),
                );
                let maps = &self.hom_maps[a * n + b];
                let label = format!("hom({}, {})", src.objects()[a], src.objects()[b]);
                if maps.len() != top + 1
                    || (0..=top).any(|d| {
                        maps[d].len() != h.count(d) || maps[d].iter().any(|&y| y >= th.count(d))
                    })
                {
                    report.push(Violation::new(label, "simplex map has the wrong shape"));
                    continue;
                }
                for d in 0..=top {
                    for x in 0..h.count(d) {
                        let fx = maps[d][x];
                        if d > 0 {
                            for j in 0..=d {
                                if maps[d - 1][h.face(d, x, j)] != th.face(d, fx, j) {
                                    report.push(Violation::new(
                                        format!("{label}: simplex `{}`", h.name(d, x)),
                                        format!("does not commute with ∂{j}"),
                                    ));
                                }
                            }
                        }
                        if d < top {
                            for k in 0..=d {
                                if maps[d + 1][h.degeneracy(d, x, k)] != th.degeneracy(d, fx, k) {
                                    report.push(Violation::new(
                                        format!("{label}: simplex `{}`", h.name(d, x)),
                                        format!("does not commute with s{k}"),
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        if !report.is_valid() {
            return report;
        }
        for a in 0..n {
            if self.apply(a, a, 0, src.identity(a)) != tgt.identity(self.object_map[a]) {
                report.push(Violation::new(
                    format!("object `{}`", src.objects()[a]),
                    "identity is not preserved",
                ));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (fa, fb, fc) = (self.object_map[a], self.object_map[b], self.object_map[c]);
                    for d in 0..=top {
                        for x in 0..src.hom(a, b).count(d) {
                            for y in 0..src.hom(b, c).count(d) {
                                let lhs = self.apply(a, c, d, src.compose(a, b, c, d, x, y));
                                let rhs = tgt.compose(
                                    fa,
                                    fb,
                                    fc,
                                    d,
                                    self.apply(a, b, d, x),
                                    self.apply(b, c, d, y),
                                );
                                if lhs != rhs {
                                    report.push(Violation::new(
                                        format!(
                                            "composition {} × {} in dimension {d}",
                                            src.hom(a, b).name(d, x),
                                            src.hom(b, c).name(d, y)
                                        ),
                                        "is not preserved",
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        report
    }
}

pub fn check_injective_on_objects(f: &EnrichedFunctor) -> bool {
    f.is_injective_on_objects()
}

/// Full sub-enriched category on `objs` (kept in the order of `c`) and its
/// inclusion functor.
pub fn full_subcategory(
    c: &EnrichedCategory,
    objs: &[&str],
) -> Result<(EnrichedCategory, EnrichedFunctor)> {
    let mut keep = objs
        .iter()
        .map(|o| c.object_index(o))
        .collect::<Result<Vec<_>>>()?;
    keep.sort_unstable();
    keep.dedup();
    let k = keep.len();
    let mut homs = Vec::with_capacity(k * k);
    let mut hom_maps = Vec::with_capacity(k * k);
    for &a in &keep {
        for &b in &keep {
            let h = c.hom(a, b);
            homs.push(h.clone());
            hom_maps.push(
                (0..=c.truncation())
                    .map(|d| (0..h.count(d)).collect())
                    .collect(),
            );
        }
    }
    let mut compositions = Vec::with_capacity(k * k * k);
    for &a in &keep {
        for &b in &keep {
            for &e in &keep {
                compositions.push(c.composition_table(a, b, e).to_vec());
            }
        }
    }
    let t = EnrichedCategory::from_parts(
        c.truncation(),
        keep.iter().map(|&a| c.objects()[a].clone()).collect(),
        homs,
        keep.iter().map(|&a| c.identity(a)).collect(),
        compositions,
    )?;
    Ok((
        t,
        EnrichedFunctor {
            object_map: keep,
            hom_maps,
        },
    ))
}

/// Bijections on objects and on the simplices of every hom.
///
/// `objects[a]` is the new index of object `a`; `simplices[a * n + b][d][x]`
/// is the new index of simplex `x` of the old `hom(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeling {
    pub objects: Vec<usize>,
    pub simplices: Vec<Vec<Vec<usize>>>,
}

impl Relabeling {
    pub fn identity(c: &EnrichedCategory) -> Self {
        let f = EnrichedFunctor::identity(c);
        Relabeling {
            objects: f.object_map,
            simplices: f.hom_maps,
        }
    }

    pub fn random<R: Rng + ?Sized>(c: &EnrichedCategory, rng: &mut R) -> Self {
        let mut r = Relabeling::identity(c);
        r.objects.shuffle(rng);
        for hom in &mut r.simplices {
            for level in hom {
                level.shuffle(rng);
            }
        }
        r
    }

    /// Swaps objects `a` and `b`, leaving simplex numbering alone.
    pub fn swap_objects(c: &EnrichedCategory, a: usize, b: usize) -> Self {
        let mut r = Relabeling::identity(c);
        r.objects.swap(a, b);
        r
    }
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter()
        .all(|&i| i < p.len() && !std::mem::replace(&mut seen[i], true))
}

fn inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// The category transported along `r`, with the isomorphism and its inverse.
pub fn relabel_isomorphism(
    c: &EnrichedCategory,
    r: &Relabeling,
) -> Result<(EnrichedCategory, EnrichedFunctor, EnrichedFunctor)> {
    let n = c.object_count();
    let top = c.truncation();
    if r.objects.len() != n || !is_permutation(&r.objects) {
        return Err(Error::NotBijective("object relabeling".into()));
    }
    if r.simplices.len() != n * n {
        return Err(Error::NotBijective(
            "simplex relabeling has the wrong number of homs".into(),
        ));
    }
    for (i, hom) in r.simplices.iter().enumerate() {
        let h = c.hom(i / n, i % n);
        if hom.len() != top + 1
            || (0..=top).any(|d| hom[d].len() != h.count(d) || !is_permutation(&hom[d]))
        {
            return Err(Error::NotBijective(format!(
                "simplex relabeling of hom({}, {})",
                c.objects()[i / n],
                c.objects()[i % n]
            )));
        }
    }
    let p = &r.objects;
    let pinv = inverse(p);
    let pi = |a: usize, b: usize, d: usize, x: usize| r.simplices[a * n + b][d][x];

    let mut homs = vec![SimplicialSet::empty(top); n * n];
    for a in 0..n {
        for b in 0..n {
            let h = c.hom(a, b);
            let perm = &r.simplices[a * n + b];
            let mut names = vec![Vec::new(); top + 1];
            let mut faces = vec![Vec::new(); top + 1];
            let mut degs = vec![Vec::new(); top + 1];
            for d in 0..=top {
                names[d] = vec![String::new(); h.count(d)];
                faces[d] = vec![Vec::new(); h.count(d)];
                degs[d] = vec![Vec::new(); h.count(d)];
                for x in 0..h.count(d) {
                    let y = perm[d][x];
                    names[d][y] = h.name(d, x).to_string();
                    faces[d][y] = h.faces_of(d, x).iter().map(|&f| perm[d - 1][f]).collect();
                    degs[d][y] = h
                        .degeneracies_of(d, x)
                        .iter()
                        .map(|&s| perm[d + 1][s])
                        .collect();
                }
            }
            homs[p[a] * n + p[b]] = SimplicialSet::from_parts_unchecked(names, faces, degs);
        }
    }
    let identities = (0..n).map(|a2| {
        let a = pinv[a2];
        pi(a, a, 0, c.identity(a))
    });
    let identities: Vec<usize> = identities.collect();
    let mut compositions = vec![Vec::new(); n * n * n];
    for a in 0..n {
        for b in 0..n {
            for e in 0..n {
                let mut table = Vec::with_capacity(top + 1);
                for d in 0..=top {
                    let q = c.hom(b, e).count(d);
                    let mut row = vec![0; c.hom(a, b).count(d) * q];
                    for x in 0..c.hom(a, b).count(d) {
                        for y in 0..q {
                            row[pi(a, b, d, x) * q + pi(b, e, d, y)] =
                                pi(a, e, d, c.compose(a, b, e, d, x, y));
                        }
                    }
                    table.push(row);
                }
                compositions[(p[a] * n + p[b]) * n + p[e]] = table;
            }
        }
    }
    let objects = (0..n).map(|a2| c.objects()[pinv[a2]].clone()).collect();
    let relabeled = EnrichedCategory::from_parts(top, objects, homs, identities, compositions)?;
    let forward = EnrichedFunctor {
        object_map: p.clone(),
        hom_maps: r.simplices.clone(),
    };
    let mut back_maps = vec![Vec::new(); n * n];
    for a in 0..n {
        for b in 0..n {
            back_maps[p[a] * n + p[b]] = r.simplices[a * n + b]
                .iter()
                .map(|level| inverse(level))
                .collect();
        }
    }
    let backward = EnrichedFunctor {
        object_map: pinv,
        hom_maps: back_maps,
    };
    Ok((relabeled, forward, backward))
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::scat::builders::{build_from_poset, Poset};

    fn e1() -> EnrichedCategory {
        build_from_poset(&Poset::chain(2), 2).unwrap()
    }

    fn e3() -> EnrichedCategory {
        build_from_poset(&Poset::grid(2, 2), 2).unwrap()
    }

    #[test]
    fn identity_functor_is_valid_and_injective() {
        let c = e3();
        let id = EnrichedFunctor::identity(&c);
        assert!(id.validate(&c, &c).is_valid());
        assert!(check_injective_on_objects(&id));
    }

    #[test]
    fn collapse_is_not_injective() {
        let c = e1();
        let point = build_from_poset(&Poset::antichain(1), 2).unwrap();
        let f = EnrichedFunctor::new(vec![0, 0], vec![vec![vec![0]; 3]; 4]);
        // hom(1,0) is empty so its map is empty
        let mut f = f.unwrap();
        f.hom_maps[2] = vec![vec![]; 3];
        assert!(
            f.validate(&c, &point).is_valid(),
            "{}",
            f.validate(&c, &point)
        );
        assert!(!check_injective_on_objects(&f));
    }

    #[test]
    fn full_subcategory_cases() {
        let c = e3();
        let all: Vec<&str> = c.objects().iter().map(String::as_str).collect();
        let (t, inc) = full_subcategory(&c, &all).unwrap();
        assert_eq!(t, c);
        assert_eq!(inc, EnrichedFunctor::identity(&c));

        let (t, inc) = full_subcategory(&c, &["01", "00"]).unwrap();
        assert_eq!(t.objects(), &["00".to_string(), "01".to_string()]);
        assert_eq!(t.underlying_category().morphism_count(), 3);
        assert!(inc.validate(&t, &c).is_valid());
        assert!(check_injective_on_objects(&inc));

        let (t, _) = full_subcategory(&c, &[]).unwrap();
        assert_eq!(t.object_count(), 0);
        assert!(matches!(
            full_subcategory(&c, &["zz"]),
            Err(Error::UnknownObject(_))
        ));
    }

    #[test]
    fn swap_objects_of_interval() {
        let c = e1();
        let (c2, f, g) = relabel_isomorphism(&c, &Relabeling::swap_objects(&c, 0, 1)).unwrap();
        assert!(c2.validate().is_valid());
        assert_eq!(c2.objects(), &["1".to_string(), "0".to_string()]);
        // the non-identity morphism now runs from new object 1 to new object 0
        assert_eq!(c2.hom(1, 0).count(0), 1);
        assert_eq!(c2.hom(0, 1).count(0), 0);
        assert_eq!(f.then(&g).unwrap(), EnrichedFunctor::identity(&c));
        assert_eq!(g.then(&f).unwrap(), EnrichedFunctor::identity(&c2));
    }

    #[test]
    fn random_relabeling_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let c = e3();
        for _ in 0..5 {
            let r = Relabeling::random(&c, &mut rng);
            let (c2, f, g) = relabel_isomorphism(&c, &r).unwrap();
            assert!(c2.validate().is_valid());
            assert!(f.validate(&c, &c2).is_valid());
            assert!(g.validate(&c2, &c).is_valid());
            assert_eq!(f.then(&g).unwrap(), EnrichedFunctor::identity(&c));
        }
        let (same, _, _) = relabel_isomorphism(&c, &Relabeling::identity(&c)).unwrap();
        assert_eq!(same, c);
    }

    #[test]
    fn non_bijective_relabeling_rejected() {
        let c = e1();
        let mut r = Relabeling::identity(&c);
        r.objects = vec![0, 0];
        assert!(matches!(
            relabel_isomorphism(&c, &r),
            Err(Error::NotBijective(_))
        ));
    }
}
