use crate::error::{Error, Result};
use crate::exactlin::{CoefficientRing, Matrix, Scalar};
use crate::nualg::{path_algebra, Algebra, AlgebraElement};
use crate::scat::{Category1, EnrichedCategory};

use super::modules::Bimodule;

/// All `n`-simplices of all homs, degenerate ones included, ordered by hom
/// pair `(a, b)` and then by simplex index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainBasis {
    degree: usize,
    objects: usize,
    entries: Vec<(usize, usize, usize)>,
    offsets: Vec<usize>,
    names: Vec<String>,
}

impl ChainBasis {
    pub fn new(c: &EnrichedCategory, n: usize) -> Result<Self> {
        if n > c.truncation() {
            return Err(Error::Truncation {
                requested: n,
                truncation: c.truncation(),
            });
        }
        let k = c.object_count();
        let mut entries = Vec::new();
        let mut offsets = Vec::with_capacity(k * k + 1);
        let mut names = Vec::new();
        for a in 0..k {
            for b in 0..k {
                offsets.push(entries.len());
                for x in 0..c.hom(a, b).count(n) {
                    entries.push((a, b, x));
                    names.push(format!(
                        "{}|{}|{}",
                        c.objects()[a],
                        c.objects()[b],
                        c.hom(a, b).name(n, x)
                    ));
                }
            }
        }
        offsets.push(entries.len());
        Ok(ChainBasis {
            degree: n,
            objects: k,
            entries,
            offsets,
            names,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `(a, b, x)`: simplex `x` of `hom(a, b)`.
    pub fn entry(&self, i: usize) -> (usize, usize, usize) {
        self.entries[i]
    }

    pub fn entries(&self) -> &[(usize, usize, usize)] {
        &self.entries
    }

    pub fn index(&self, a: usize, b: usize, x: usize) -> usize {
        self.offsets[a * self.objects + b] + x
    }

    /// Basis indices belonging to `hom(a, b)`.
    pub fn hom_range(&self, a: usize, b: usize) -> std::ops::Range<usize> {
        self.offsets[a * self.objects + b]..self.offsets[a * self.objects + b + 1]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// The translation action on a chain basis: `left[f][σ]` is
/// `∘_n(σ, s_{n-1}…s_0 f)` and `right[g][σ]` is `∘_n(s_{n-1}…s_0 g, σ)`,
/// or `None` when the tags do not match.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationAction {
    pub left: Vec<Vec<Option<usize>>>,
    pub right: Vec<Vec<Option<usize>>>,
}

impl TranslationAction {
    pub fn left_matrix(&self, ring: CoefficientRing, f: usize) -> Matrix {
        partial_map_matrix(ring, &self.left[f])
    }

    pub fn right_matrix(&self, ring: CoefficientRing, g: usize) -> Matrix {
        partial_map_matrix(ring, &self.right[g])
    }
}

fn partial_map_matrix(ring: CoefficientRing, map: &[Option<usize>]) -> Matrix {
    let mut m = Matrix::zeros(ring, map.len(), map.len());
    for (j, &i) in map.iter().enumerate() {
        if let Some(i) = i {
            m.set(i, j, ring.one());
        }
    }
    m
}

/// A chain of a given degree, as coordinates on the chain basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub degree: usize,
    pub coords: Vec<Scalar>,
}

/// `C_n` of an enriched category as a bimodule over its path algebra.
#[derive(Clone, Debug)]
pub struct ChainBimodule {
    ring: CoefficientRing,
    basis: ChainBasis,
    action: TranslationAction,
    category: Category1,
    algebra: Algebra,
}

/// Builds `C_n` with its translation action and checks the action laws:
/// tag rule, commuting sides, and compatibility with composition.
pub fn chain_bimodule(
    c: &EnrichedCategory,
    n: usize,
    ring: CoefficientRing,
) -> Result<ChainBimodule> {
    let basis = ChainBasis::new(c, n)?;
    let cat = c.underlying_category();
    let mut left = Vec::with_capacity(cat.morphism_count());
    let mut right = Vec::with_capacity(cat.morphism_count());
    for m in cat.morphisms() {
        let deg = c.total_degeneracy(m.source, m.target, m.vertex, n)?;
        left.push(
            basis
                .entries()
                .iter()
                .map(|&(a, b, x)| {
                    (b == m.source)
                        .then(|| basis.index(a, m.target, c.compose(a, b, m.target, n, x, deg)))
                })
                .collect(),
        );
        right.push(
            basis
                .entries()
                .iter()
                .map(|&(a, b, x)| {
                    (a == m.target)
                        .then(|| basis.index(m.source, b, c.compose(m.source, a, b, n, deg, x)))
                })
                .collect(),
        );
    }
    let action = TranslationAction { left, right };
    verify_action(&basis, &cat, &action)?;
    let algebra = path_algebra(&cat, ring);
    Ok(ChainBimodule {
        ring,
        basis,
        action,
        category: cat,
        algebra,
    })
}

fn verify_action(basis: &ChainBasis, cat: &Category1, action: &TranslationAction) -> Result<()> {
    let k = cat.morphism_count();
    let fail = |what: String| Err(Error::Invalid(format!("translation action: {what}")));
    for f in 0..k {
        let (s, t) = (cat.morphism(f).source, cat.morphism(f).target);
        for (i, &(a, b, _)) in basis.entries().iter().enumerate() {
            let expect_left = (b == s).then_some((a, t));
            if action.left[f][i].map(|j| (basis.entry(j).0, basis.entry(j).1)) != expect_left {
                return fail(format!(
                    "left tag rule fails for `{}`",
                    cat.morphism(f).name
                ));
            }
            let expect_right = (a == t).then_some((s, b));
            if action.right[f][i].map(|j| (basis.entry(j).0, basis.entry(j).1)) != expect_right {
                return fail(format!(
                    "right tag rule fails for `{}`",
                    cat.morphism(f).name
                ));
            }
        }
    }
    let apply = |map: &[Option<usize>], x: Option<usize>| x.and_then(|i| map[i]);
    for f in 0..k {
        for g in 0..k {
            // both L_f L_g and R_g R_f are translation by "g then f"
            let fg = cat.compose(g, f);
            for i in 0..basis.len() {
                let lr = apply(&action.left[f], action.right[g][i]);
                let rl = apply(&action.right[g], action.left[f][i]);
                if lr != rl {
                    return fail(format!(
                        "left `{}` and right `{}` do not commute",
                        cat.morphism(f).name,
                        cat.morphism(g).name
                    ));
                }
                let ll = apply(&action.left[f], action.left[g][i]);
                if ll != fg.and_then(|h| action.left[h][i]) {
                    return fail(format!(
                        "left action is not associative at `{}`",
                        cat.morphism(f).name
                    ));
                }
                let rr = apply(&action.right[g], action.right[f][i]);
                if rr != fg.and_then(|h| action.right[h][i]) {
                    return fail(format!(
                        "right action is not associative at `{}`",
                        cat.morphism(f).name
                    ));
                }
            }
        }
    }
    Ok(())
}

impl ChainBimodule {
    /// Swaps in another action table without checking the action laws.
    pub fn with_action(mut self, action: TranslationAction) -> Self {
        self.action = action;
        self
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn degree(&self) -> usize {
        self.basis.degree
    }

    pub fn basis(&self) -> &ChainBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn action(&self) -> &TranslationAction {
        &self.action
    }

    pub fn category(&self) -> &Category1 {
        &self.category
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn left_matrix(&self, f: usize) -> Matrix {
        self.action.left_matrix(self.ring, f)
    }

    pub fn right_matrix(&self, g: usize) -> Matrix {
        self.action.right_matrix(self.ring, g)
    }

    pub fn basis_chain(&self, i: usize) -> Chain {
        let mut coords = vec![self.ring.zero(); self.dim()];
        coords[i] = self.ring.one();
        Chain {
            degree: self.degree(),
            coords,
        }
    }

    pub fn zero_chain(&self) -> Chain {
        Chain {
            degree: self.degree(),
            coords: vec![self.ring.zero(); self.dim()],
        }
    }

    /// `a · x · b`, extended bilinearly from the basis action.
    pub fn act(&self, a: &AlgebraElement, x: &Chain, b: &AlgebraElement) -> Result<Chain> {
        if x.degree != self.degree() || x.coords.len() != self.dim() {
            return Err(Error::Dimension("chain of the wrong degree".into()));
        }
        if a.dim() != self.algebra.dim() || b.dim() != self.algebra.dim() {
            return Err(Error::Dimension(
                "algebra element of the wrong algebra".into(),
            ));
        }
        let ring = self.ring;
        let mut out = vec![ring.zero(); self.dim()];
        for g in b.support() {
            for (i, xi) in x.coords.iter().enumerate() {
                if num_traits::Zero::is_zero(xi) {
                    continue;
                }
                let Some(j) = self.action.right[g][i] else {
                    continue;
                };
                let c = ring.mul(xi, b.coefficient(g));
                for f in a.support() {
                    if let Some(l) = self.action.left[f][j] {
                        out[l] = ring.add(&out[l], &ring.mul(&c, a.coefficient(f)));
                    }
                }
            }
        }
        Ok(Chain {
            degree: x.degree,
            coords: out,
        })
    }

    /// The same data as a free bimodule over (path algebra, path algebra).
    pub fn to_bimodule(&self) -> Result<Bimodule> {
        let k = self.category.morphism_count();
        Bimodule::new(
            self.algebra.clone(),
            self.algebra.clone(),
            crate::exactlin::PresentedModule::free(self.ring, self.dim()),
            (0..k).map(|f| self.left_matrix(f)).collect(),
            (0..k).map(|g| self.right_matrix(g)).collect(),
            self.basis.names().to_vec(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scat::{
        build_from_category, build_from_poset, build_with_homotopies, CategorySpec, Homotopy, Poset,
    };

    fn z() -> CoefficientRing {
        CoefficientRing::Integers
    }

    #[test]
    fn interval_degree_zero() {
        let c = build_from_poset(&Poset::chain(2), 2).unwrap();
        let cb = chain_bimodule(&c, 0, z()).unwrap();
        let cat = cb.category();
        let u = cat.find("0->1").unwrap();
        let id0 = cb.basis().index(0, 0, 0);
        let id1 = cb.basis().index(1, 1, 0);
        let uu = cb.basis().index(0, 1, 0);
        assert_eq!(cb.action().left[u][id0], Some(uu));
        assert_eq!(cb.action().left[u][id1], None);
        // (2u)·[id0]·(3 id0) = 6[u]
        let a = cb.algebra().element(&[("0->1", 2)]).unwrap();
        let b = cb.algebra().element(&[("id0", 3)]).unwrap();
        let x = cb.act(&a, &cb.basis_chain(id0), &b).unwrap();
        let mut expected = cb.zero_chain();
        expected.coords[uu] = z().from_int(6);
        assert_eq!(x, expected);
        assert_eq!(
            cb.act(&cb.algebra().zero(), &x, &b).unwrap(),
            cb.zero_chain()
        );
    }

    #[test]
    fn identity_acts_on_homotopy() {
        let s = |x: &str| x.to_string();
        let spec = CategorySpec {
            objects: vec![s("a"), s("b")],
            morphisms: vec![(s("f"), s("a"), s("b")), (s("g"), s("a"), s("b"))],
            compositions: vec![],
        };
        let base = build_from_category(&spec.category().unwrap(), 2).unwrap();
        let c = build_with_homotopies(&base, &[Homotopy::new("a", "b", "f", "g", "h")]).unwrap();
        let cb = chain_bimodule(&c, 1, z()).unwrap();
        let idb = cb.category().find("idb").unwrap();
        let h = cb.basis().index(0, 1, c.hom(0, 1).find("h").unwrap().1);
        assert_eq!(cb.action().left[idb][h], Some(h));
        assert!(cb.to_bimodule().is_ok());
    }

    #[test]
    fn truncation_exceeded() {
        let c = build_from_poset(&Poset::chain(2), 1).unwrap();
        assert!(matches!(
            chain_bimodule(&c, 2, z()),
            Err(Error::Truncation { .. })
        ));
    }
}
