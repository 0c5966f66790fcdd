use crate::error::{Error, Result};
use crate::exactlin::{
    induced_map_on_subquotients, kernel_basis, Matrix, ModuleMorphism, PresentedModule, Scalar,
    Subquotient,
};
use crate::nualg::{Algebra, AlgebraElement};
use crate::scat::EnrichedFunctor;

use super::complex::{chain_map_matrix, check_chain_map, ChainComplex, CheckReport};

/// `H_n` with one induced left and right action per 1-morphism.
#[derive(Clone, Debug)]
pub struct HomologyBimodule {
    degree: usize,
    group: Subquotient,
    algebra: Algebra,
    morphisms: Vec<String>,
    left: Vec<ModuleMorphism>,
    right: Vec<ModuleMorphism>,
}

/// `ker d_n / im d_{n+1}` with the induced translation action; needs
/// `n + 1 ≤ D`.
pub fn homology(cx: &ChainComplex, n: usize) -> Result<HomologyBimodule> {
    if n + 1 > cx.top() {
        return Err(Error::Truncation {
            requested: n + 1,
            truncation: cx.top(),
        });
    }
    let cycles = if n == 0 {
        Matrix::identity(cx.ring(), cx.dim(0))
    } else {
        kernel_basis(cx.boundary(n))?
    };
    let group = Subquotient::new(cycles, cx.boundary(n + 1).clone())?;
    let chains = cx.chains(n);
    let cat = chains.category();
    let k = cat.morphism_count();
    let induce = |m: Matrix| {
        induced_map_on_subquotients(&m, &group, &group)
            .map_err(|e| Error::Invalid(format!("action is not well defined on homology: {e}")))
    };
    let left = (0..k)
        .map(|f| induce(chains.left_matrix(f)))
        .collect::<Result<Vec<_>>>()?;
    let right = (0..k)
        .map(|f| induce(chains.right_matrix(f)))
        .collect::<Result<Vec<_>>>()?;
    let h = HomologyBimodule {
        degree: n,
        algebra: chains.algebra().clone(),
        morphisms: cat.morphisms().iter().map(|m| m.name.clone()).collect(),
        group,
        left,
        right,
    };
    h.check_associativity(cx)?;
    Ok(h)
}

impl HomologyBimodule {
    fn check_associativity(&self, cx: &ChainComplex) -> Result<()> {
        let cat = cx.chains(self.degree).category();
        let k = self.morphisms.len();
        let zero = ModuleMorphism::zero(self.module(), self.module());
        for f in 0..k {
            for g in 0..k {
                let expected = |maps: &'_ [ModuleMorphism]| -> ModuleMorphism {
                    cat.compose(g, f)
                        .map_or_else(|| zero.clone(), |h| maps[h].clone())
                };
                // L_f L_g and R_g R_f are both translation by "g then f"
                if !self.left[g]
                    .then(&self.left[f])?
                    .equals(&expected(&self.left))
                    || !self.right[f]
                        .then(&self.right[g])?
                        .equals(&expected(&self.right))
                {
                    return Err(Error::Invalid(format!(
                        "induced action of `{}` and `{}` is not associative",
                        self.morphisms[f], self.morphisms[g]
                    )));
                }
                if !self.left[f]
                    .then(&self.right[g])?
                    .equals(&self.right[g].then(&self.left[f])?)
                {
                    return Err(Error::Invalid(
                        "induced left and right actions do not commute".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Cycles, boundaries and representatives in chain coordinates.
    pub fn group(&self) -> &Subquotient {
        &self.group
    }

    pub fn module(&self) -> &PresentedModule {
        self.group.module()
    }

    pub fn free_rank(&self) -> usize {
        self.module().free_rank()
    }

    pub fn invariant_factors(&self) -> &[Scalar] {
        self.module().invariant_factors()
    }

    pub fn is_zero(&self) -> bool {
        self.module().is_zero()
    }

    pub fn generator_count(&self) -> usize {
        self.module().generator_count()
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn morphism_names(&self) -> &[String] {
        &self.morphisms
    }

    /// Class coordinates of a cycle.
    pub fn class_of(&self, chain: &[Scalar]) -> Result<Vec<Scalar>> {
        self.group.class_of(chain)
    }

    pub fn left_action(&self, f: usize) -> &ModuleMorphism {
        &self.left[f]
    }

    pub fn right_action(&self, g: usize) -> &ModuleMorphism {
        &self.right[g]
    }

    fn action(&self, maps: &[ModuleMorphism], a: &AlgebraElement) -> Matrix {
        let n = self.generator_count();
        let mut out = Matrix::zeros(self.algebra.ring(), n, n);
        for f in a.support() {
            out = out.add(&maps[f].matrix().scale(a.coefficient(f)));
        }
        out
    }

    /// `a · u · b` on class coordinates.
    pub fn act(&self, a: &AlgebraElement, u: &[Scalar], b: &AlgebraElement) -> Result<Vec<Scalar>> {
        if u.len() != self.generator_count()
            || a.dim() != self.algebra.dim()
            || b.dim() != self.algebra.dim()
        {
            return Err(Error::Dimension(
                "operands do not match the homology bimodule".into(),
            ));
        }
        let ub = self.action(&self.right, b).mul_vec(u);
        Ok(self.action(&self.left, a).mul_vec(&ub))
    }
}

/// `H_n(F)` together with the two homology bimodules it connects.
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub source: HomologyBimodule,
    pub target: HomologyBimodule,
    pub chain_map: Matrix,
    pub morphism: ModuleMorphism,
}

/// `H_n(F)`, after checking that `F_*` is a chain map.
pub fn induced_map(
    f: &EnrichedFunctor,
    src: &ChainComplex,
    tgt: &ChainComplex,
    n: usize,
) -> Result<InducedMap> {
    check_chain_map(f, src, tgt)?;
    let source = homology(src, n)?;
    let target = homology(tgt, n)?;
    let chain_map = chain_map_matrix(f, src, tgt, n)?;
    let morphism = induced_map_on_subquotients(&chain_map, source.group(), target.group())?;
    Ok(InducedMap {
        source,
        target,
        chain_map,
        morphism,
    })
}

/// `H_n(F)(a·u·b) = f(a)·H_n(F)(u)·f(b)` on every sample, where `f` is the
/// induced map of path algebras.
pub fn check_induced_equivariance(
    f: &EnrichedFunctor,
    src: &ChainComplex,
    tgt: &ChainComplex,
    map: &InducedMap,
    samples: &[(AlgebraElement, Vec<Scalar>, AlgebraElement)],
) -> Result<CheckReport> {
    if !f.is_injective_on_objects() {
        return Err(Error::NotInjectiveOnObjects);
    }
    let images = f.morphism_map(src.chains(0).category(), tgt.chains(0).category());
    let ring = src.ring();
    let push = |a: &AlgebraElement| {
        let mut coords = vec![ring.zero(); map.target.algebra().dim()];
        for i in a.support() {
            coords[images[i]] = ring.add(&coords[images[i]], a.coefficient(i));
        }
        AlgebraElement::from_coords(coords)
    };
    let mut report = CheckReport::default();
    for (i, (a, u, b)) in samples.iter().enumerate() {
        let lhs = map.morphism.apply(&map.source.act(a, u, b)?);
        let rhs = map.target.act(&push(a), &map.morphism.apply(u), &push(b))?;
        report.checks += 1;
        if !map.target.module().same_element(&lhs, &rhs) {
            report
                .failures
                .push(format!("sample {i}: H(F)(a·u·b) ≠ F(a)·H(F)(u)·F(b)"));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exactlin::{unit_vector, CoefficientRing};
    use crate::homology::chain_complex;
    use crate::scat::{full_subcategory, relabel_isomorphism, Relabeling};

    fn z() -> CoefficientRing {
        CoefficientRing::Integers
    }

    #[test]
    fn interval_homology() {
        let cx = chain_complex(&corpus::interval(2), z()).unwrap();
        let h0 = homology(&cx, 0).unwrap();
        assert_eq!((h0.free_rank(), h0.invariant_factors().len()), (3, 0));
        assert!(homology(&cx, 1).unwrap().is_zero());
        assert!(matches!(homology(&cx, 2), Err(Error::Truncation { .. })));
    }

    #[test]
    fn homotopic_morphisms_are_identified() {
        let c = corpus::parallel_pair_with_homotopy(2);
        let cx = chain_complex(&c, z()).unwrap();
        let h0 = homology(&cx, 0).unwrap();
        assert_eq!(h0.free_rank(), 3);
        let (a, b) = (c.object_index("a").unwrap(), c.object_index("b").unwrap());
        let idx = |name: &str| {
            cx.chains(0)
                .basis()
                .index(a, b, c.hom(a, b).find(name).unwrap().1)
        };
        let n = cx.dim(0);
        let (f, g) = (
            h0.class_of(&unit_vector(z(), n, idx("f"))).unwrap(),
            h0.class_of(&unit_vector(z(), n, idx("g"))).unwrap(),
        );
        assert!(h0.module().same_element(&f, &g));
        // idb · [f] = [f]
        let idb = h0.algebra().element(&[("idb", 1)]).unwrap();
        let ida = h0.algebra().element(&[("ida", 1)]).unwrap();
        assert_eq!(h0.act(&idb, &f, &ida).unwrap(), f);
        assert!(homology(&cx, 1).unwrap().is_zero());
    }

    #[test]
    fn empty_category() {
        let cx = chain_complex(&corpus::antichain(0, 2), z()).unwrap();
        assert!(homology(&cx, 0).unwrap().is_zero());
        assert!(homology(&cx, 1).unwrap().is_zero());
    }

    #[test]
    fn relabeling_and_inclusion() {
        let c = corpus::interval(2);
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(7);
        let (c2, f, _) = relabel_isomorphism(&c, &Relabeling::random(&c, &mut rng)).unwrap();
        let (cx, cx2) = (
            chain_complex(&c, z()).unwrap(),
            chain_complex(&c2, z()).unwrap(),
        );
        let map = induced_map(&f, &cx, &cx2, 0).unwrap();
        assert!(map.morphism.is_isomorphism().unwrap());
        let e = map
            .source
            .algebra()
            .element(&[("0->1", 2), ("id1", -1)])
            .unwrap();
        let u = vec![z().one(), z().from_int(3), z().zero()];
        let report = check_induced_equivariance(&f, &cx, &cx2, &map, &[(e.clone(), u, e)]).unwrap();
        assert!(report.passed());

        let s = corpus::square(2);
        let (t, inc) = full_subcategory(&s, &["00", "01"]).unwrap();
        let (cs, ct) = (
            chain_complex(&s, z()).unwrap(),
            chain_complex(&t, z()).unwrap(),
        );
        let map = induced_map(&inc, &ct, &cs, 0).unwrap();
        assert!(map.morphism.is_injective().unwrap());
    }
}
