use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactlin::{Matrix, ModuleMorphism, PresentedModule, Scalar};
use crate::scat::EnrichedFunctor;

use super::chains::ChainBimodule;

/// `R[S_0] ⊗_{R[T_0]} C_n(T) ⊗_{R[T_0]} R[S_0]` presented on triples
/// `(t, m, t')` of an `S`-morphism, a `T`-chain basis element and an
/// `S`-morphism whose tags match through the inclusion.
#[derive(Clone, Debug)]
pub struct TransferDomain {
    degree: usize,
    triples: Vec<(usize, usize, usize)>,
    module: PresentedModule,
    iota: Matrix,
    names: Vec<String>,
}

impl TransferDomain {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `(t, m, t')` per generator.
    pub fn triples(&self) -> &[(usize, usize, usize)] {
        &self.triples
    }

    pub fn module(&self) -> &PresentedModule {
        &self.module
    }

    /// Matrix of `t ⊗ m ⊗ t' ↦ t × F(m) × t'` into `C_n(S)`.
    pub fn iota_matrix(&self) -> &Matrix {
        &self.iota
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// Builds the transfer domain for an inclusion `inc : T → S` given the
/// degree-`n` chain bimodules of both categories.
pub fn transfer_domain(
    s: &ChainBimodule,
    t: &ChainBimodule,
    inc: &EnrichedFunctor,
) -> Result<TransferDomain> {
    if s.degree() != t.degree() {
        return Err(Error::Dimension(
            "chain bimodules of different degrees".into(),
        ));
    }
    if s.ring() != t.ring() {
        return Err(Error::RingMismatch(s.ring().code(), t.ring().code()));
    }
    if !inc.is_injective_on_objects() {
        return Err(Error::NotInjectiveOnObjects);
    }
    let n = s.degree();
    let ring = s.ring();
    let (scat, tcat) = (s.category(), t.category());
    let fmor = inc.morphism_map(tcat, scat);
    let fobj = inc.object_map();
    let include = |i: usize| {
        let (a, b, x) = t.basis().entry(i);
        s.basis().index(fobj[a], fobj[b], inc.apply(a, b, n, x))
    };

    let mut triples = Vec::new();
    let mut index = HashMap::new();
    let mut names = Vec::new();
    for (mi, &(a, b, _)) in t.basis().entries().iter().enumerate() {
        for (ti, tm) in scat.morphisms().iter().enumerate() {
            if tm.source != fobj[b] {
                continue;
            }
            for (ui, um) in scat.morphisms().iter().enumerate() {
                if um.target != fobj[a] {
                    continue;
                }
                index.insert((ti, mi, ui), triples.len());
                triples.push((ti, mi, ui));
                names.push(format!("{}⊗{}⊗{}", tm.name, t.basis().names()[mi], um.name));
            }
        }
    }

    let g = triples.len();
    let mut relations = Vec::new();
    let relation = |plus: usize, minus: usize| {
        let mut v = vec![ring.zero(); g];
        v[plus] = ring.add(&v[plus], &ring.one());
        v[minus] = ring.sub(&v[minus], &ring.one());
        v
    };
    for (mi, &(a, b, _)) in t.basis().entries().iter().enumerate() {
        for (ci, c) in tcat.morphisms().iter().enumerate() {
            let fc = fmor[ci];
            // t ⊗ (c × m) ⊗ t' = (t × F c) ⊗ m ⊗ t'
            if c.source == b {
                let cm = t.action().left[ci][mi].expect("tags match");
                for (ti, tm) in scat.morphisms().iter().enumerate() {
                    if tm.source != fobj[c.target] {
                        continue;
                    }
                    let tfc = scat.compose(fc, ti).expect("tags match");
                    for (ui, um) in scat.morphisms().iter().enumerate() {
                        if um.target == fobj[a] {
                            relations.push(relation(index[&(ti, cm, ui)], index[&(tfc, mi, ui)]));
                        }
                    }
                }
            }
            // t ⊗ (m × c) ⊗ t' = t ⊗ m ⊗ (F c × t')
            if c.target == a {
                let mc = t.action().right[ci][mi].expect("tags match");
                for (ui, um) in scat.morphisms().iter().enumerate() {
                    if um.target != fobj[c.source] {
                        continue;
                    }
                    let fcu = scat.compose(ui, fc).expect("tags match");
                    for (ti, tm) in scat.morphisms().iter().enumerate() {
                        if tm.source == fobj[b] {
                            relations.push(relation(index[&(ti, mc, ui)], index[&(ti, mi, fcu)]));
                        }
                    }
                }
            }
        }
    }
    let relations: Vec<Vec<Scalar>> = relations
        .into_iter()
        .filter(|r| r.iter().any(|c| !num_traits::Zero::is_zero(c)))
        .collect();
    let module = PresentedModule::new(Matrix::from_columns(ring, g, &relations))?;

    let mut iota = Matrix::zeros(ring, s.dim(), g);
    for (j, &(ti, mi, ui)) in triples.iter().enumerate() {
        let fm = include(mi);
        let image = s.action().right[ui][fm].and_then(|y| s.action().left[ti][y]);
        let y = image.ok_or_else(|| Error::Invalid("transfer image has mismatched tags".into()))?;
        iota.set(y, j, ring.one());
    }
    Ok(TransferDomain {
        degree: n,
        triples,
        module,
        iota,
        names,
    })
}

/// `ι_n` as a module map into the free module `C_n(S)`.
pub fn transfer_map(domain: &TransferDomain) -> Result<ModuleMorphism> {
    let target = PresentedModule::free(domain.module.ring(), domain.iota.rows());
    ModuleMorphism::new(domain.module.clone(), target, domain.iota.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimod::chain_bimodule;
    use crate::exactlin::CoefficientRing;
    use crate::scat::{build_from_poset, full_subcategory, Poset};

    #[test]
    fn whole_category_transfer_is_iso() {
        let z = CoefficientRing::Integers;
        let s = build_from_poset(&Poset::chain(2), 1).unwrap();
        let (t, inc) = full_subcategory(&s, &["0", "1"]).unwrap();
        let (cs, ct) = (
            chain_bimodule(&s, 0, z).unwrap(),
            chain_bimodule(&t, 0, z).unwrap(),
        );
        let dom = transfer_domain(&cs, &ct, &inc).unwrap();
        let iota = transfer_map(&dom).unwrap();
        assert!(iota.is_isomorphism().unwrap());
    }

    #[test]
    fn point_in_interval() {
        let z = CoefficientRing::Integers;
        let s = build_from_poset(&Poset::chain(2), 1).unwrap();
        let (t, inc) = full_subcategory(&s, &["1"]).unwrap();
        let (cs, ct) = (
            chain_bimodule(&s, 0, z).unwrap(),
            chain_bimodule(&t, 0, z).unwrap(),
        );
        let dom = transfer_domain(&cs, &ct, &inc).unwrap();
        let iota = transfer_map(&dom).unwrap();
        // image spanned by id1 and u; domain ≅ R[S0]e_1 ⊗ e_1R[S0] has rank 2
        assert!(iota.is_injective().unwrap());
        assert_eq!(iota.cokernel().unwrap().free_rank(), 1);
    }
}
