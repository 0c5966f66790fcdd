use serde::Serialize;

use crate::bimod::{submodule_generated, transfer_domain, transfer_map, SubBimodule};
use crate::error::{Error, Result};
use crate::exactlin::{
    exact_at, image_basis, induced_map_on_subquotients, kernel_basis, preimage_basis, quotient_map,
    same_span, scalar_to_string, CoefficientRing, Matrix, ModuleMorphism, PresentedModule,
    Subquotient,
};
use crate::scat::{full_subcategory, EnrichedCategory, EnrichedFunctor};

use super::complex::{chain_complex, chain_map_matrix, ChainComplex};

/// Free rank and torsion of a presented module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupSummary {
    pub free_rank: usize,
    pub invariant_factors: Vec<String>,
}

impl GroupSummary {
    pub fn of(m: &PresentedModule) -> Self {
        GroupSummary {
            free_rank: m.free_rank(),
            invariant_factors: m.invariant_factors().iter().map(scalar_to_string).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }
}

/// `C(S)`, the extended chains `C^S(T)` and the quotient `C(S/T)`, all in
/// the coordinates of `C(S)`.
#[derive(Clone, Debug)]
pub struct RelativeComplex {
    ambient: ChainComplex,
    sub: ChainComplex,
    inclusion: EnrichedFunctor,
    extended: Vec<SubBimodule>,
}

/// Sub-bimodule of `C_n(S)` generated by the image of `C_n(T)`.
pub fn extended_chains(
    s: &ChainComplex,
    t: &ChainComplex,
    inc: &EnrichedFunctor,
    n: usize,
) -> Result<SubBimodule> {
    let include = chain_map_matrix(inc, t, s, n)?;
    let bimodule = s.chains(n).to_bimodule()?;
    submodule_generated(&bimodule, &include.columns())
}

/// Relative complex for the full subcategory of `s` on `objects`.
pub fn relative_complex(
    s: &EnrichedCategory,
    objects: &[&str],
    ring: CoefficientRing,
) -> Result<RelativeComplex> {
    let (t, inc) = full_subcategory(s, objects)?;
    relative_complex_for(chain_complex(s, ring)?, chain_complex(&t, ring)?, inc)
}

/// Relative complex for an inclusion `inc : T → S` of enriched categories.
pub fn relative_complex_for(
    s: ChainComplex,
    t: ChainComplex,
    inc: EnrichedFunctor,
) -> Result<RelativeComplex> {
    if !inc.is_injective_on_objects() {
        return Err(Error::NotInjectiveOnObjects);
    }
    if s.top() != t.top() {
        return Err(Error::Truncation {
            requested: t.top(),
            truncation: s.top(),
        });
    }
    let extended = (0..=s.top())
        .map(|n| extended_chains(&s, &t, &inc, n))
        .collect::<Result<Vec<_>>>()?;
    for n in 1..=s.top() {
        let image = s.boundary(n).mul(extended[n].basis());
        if !crate::exactlin::SpanSolver::new(extended[n - 1].basis())?.contains_all(&image) {
            return Err(Error::NotAChainComplex(format!(
                "extended chains are not stable under d_{n}"
            )));
        }
    }
    Ok(RelativeComplex {
        ambient: s,
        sub: t,
        inclusion: inc,
        extended,
    })
}

/// Chain-level short exact sequence `0 → C^S_n(T) → C_n(S) → C_n(S/T) → 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SesDegree {
    pub degree: usize,
    pub extended_rank: usize,
    pub chain_rank: usize,
    pub relative_rank: usize,
    pub j_injective: bool,
    pub p_surjective: bool,
    pub exact_in_middle: bool,
}

impl SesDegree {
    pub fn holds(&self) -> bool {
        self.j_injective && self.p_surjective && self.exact_in_middle
    }
}

/// One degree of the long exact sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LesDegree {
    pub degree: usize,
    pub extended: GroupSummary,
    pub absolute: GroupSummary,
    pub relative: GroupSummary,
    pub j: Vec<Vec<String>>,
    pub p: Vec<Vec<String>>,
    /// `δ_n : H_n(S/T) → H_{n−1}(C^S(T))`; empty in degree 0.
    pub delta: Vec<Vec<String>>,
    pub exact_at_extended: bool,
    pub exact_at_absolute: bool,
    pub exact_at_relative: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LesReport {
    pub max_degree: usize,
    pub ses: Vec<SesDegree>,
    /// Highest degree first, following the sequence.
    pub degrees: Vec<LesDegree>,
    /// `δ_{max+1}`, mapping into the leftmost node.
    pub top_delta: Vec<Vec<String>>,
    pub alternative_lifts_checked: usize,
    pub alternative_lift_failures: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransferKernelReport {
    pub degree: usize,
    pub domain_generators: usize,
    pub domain: GroupSummary,
    pub kernel: GroupSummary,
    pub injective: bool,
    pub image_rank: usize,
    pub extended_rank: usize,
    pub image_equals_extended: bool,
    /// Injective with image equal to the extended chains.
    pub domain_iso_extended: bool,
}

fn zero_map_to_zero(src: &PresentedModule) -> ModuleMorphism {
    ModuleMorphism::zero(src, &PresentedModule::zero(src.ring()))
}

impl RelativeComplex {
    pub fn ambient(&self) -> &ChainComplex {
        &self.ambient
    }

    pub fn sub(&self) -> &ChainComplex {
        &self.sub
    }

    pub fn inclusion(&self) -> &EnrichedFunctor {
        &self.inclusion
    }

    pub fn top(&self) -> usize {
        self.ambient.top()
    }

    pub fn extended(&self, n: usize) -> &SubBimodule {
        &self.extended[n]
    }

    /// `C_n(S/T) = C_n(S) / C^S_n(T)`.
    pub fn relative_chains(&self, n: usize) -> Result<PresentedModule> {
        PresentedModule::new(self.extended[n].basis().clone())
    }

    pub fn ses(&self, n: usize) -> Result<SesDegree> {
        let ring = self.ambient.ring();
        let e = self.extended[n].basis();
        let j = ModuleMorphism::new(
            PresentedModule::free(ring, e.cols()),
            PresentedModule::free(ring, e.rows()),
            e.clone(),
        )?;
        let p = quotient_map(e)?;
        Ok(SesDegree {
            degree: n,
            extended_rank: e.cols(),
            chain_rank: e.rows(),
            relative_rank: p.target().free_rank(),
            j_injective: j.is_injective()?,
            p_surjective: p.is_surjective()?,
            exact_in_middle: exact_at(&j, &p)?,
        })
    }

    fn boundaries_from_above(&self, n: usize, basis: Option<&Matrix>) -> Matrix {
        let ring = self.ambient.ring();
        if n < self.top() {
            let d = self.ambient.boundary(n + 1);
            match basis {
                Some(b) => d.mul(b),
                None => d.clone(),
            }
        } else {
            Matrix::zeros(ring, self.ambient.dim(n), 0)
        }
    }

    /// `H_n(C^S(T))` in ambient coordinates.
    pub fn extended_group(&self, n: usize) -> Result<Subquotient> {
        self.need(n)?;
        let b = self.extended[n].basis();
        let cycles = if n == 0 {
            b.clone()
        } else {
            b.mul(&kernel_basis(&self.ambient.boundary(n).mul(b))?)
        };
        Subquotient::new(
            cycles,
            self.boundaries_from_above(n, Some(self.extended[n + 1].basis())),
        )
    }

    pub fn absolute_group(&self, n: usize) -> Result<Subquotient> {
        self.need(n)?;
        let cycles = self.absolute_cycles(n)?;
        Subquotient::new(cycles, self.boundaries_from_above(n, None))
    }

    fn absolute_cycles(&self, n: usize) -> Result<Matrix> {
        if n == 0 {
            Ok(Matrix::identity(self.ambient.ring(), self.ambient.dim(0)))
        } else {
            kernel_basis(self.ambient.boundary(n))
        }
    }

    /// `H_n(S/T)`; also valid for `n = D`, where only the extended chains
    /// are divided out. Only its cycles matter for the image of `δ`.
    pub fn relative_group(&self, n: usize) -> Result<Subquotient> {
        if n > self.top() {
            return Err(Error::Truncation {
                requested: n,
                truncation: self.top(),
            });
        }
        let cycles = if n == 0 {
            Matrix::identity(self.ambient.ring(), self.ambient.dim(0))
        } else {
            preimage_basis(self.ambient.boundary(n), self.extended[n - 1].basis())?
        };
        let boundaries = self
            .boundaries_from_above(n, None)
            .hstack(self.extended[n].basis());
        Subquotient::new(cycles, boundaries)
    }

    fn need(&self, n: usize) -> Result<()> {
        if n + 1 > self.top() {
            return Err(Error::Truncation {
                requested: n + 1,
                truncation: self.top(),
            });
        }
        Ok(())
    }

    fn delta(
        &self,
        rel: &Subquotient,
        ext: &Subquotient,
        n: usize,
        lifts: &mut (usize, usize),
    ) -> Result<ModuleMorphism> {
        let d = self.ambient.boundary(n);
        let delta = induced_map_on_subquotients(d, rel, ext)?;
        let e = self.extended[n].basis();
        for j in 0..rel.representatives().cols() {
            let x = rel.representatives().column(j);
            let alt = if e.cols() > 0 {
                crate::exactlin::vec_add(rel.ring(), &x, &e.column(0))
            } else {
                continue;
            };
            lifts.0 += 1;
            let (a, b) = (
                ext.class_of(&d.mul_vec(&x))?,
                ext.class_of(&d.mul_vec(&alt))?,
            );
            if !ext.module().same_element(&a, &b) {
                lifts.1 += 1;
            }
        }
        Ok(delta)
    }

    /// The long exact sequence from degree `max_degree` down to 0, with
    /// exactness checked at every node.
    pub fn les(&self, max_degree: usize) -> Result<LesReport> {
        self.need(max_degree)?;
        let ring = self.ambient.ring();
        let mut lifts = (0, 0);
        let mut ext = Vec::new();
        let mut abs = Vec::new();
        let mut rel = Vec::new();
        for n in 0..=max_degree {
            ext.push(self.extended_group(n)?);
            abs.push(self.absolute_group(n)?);
            rel.push(self.relative_group(n)?);
        }
        let top_rel = self.relative_group(max_degree + 1)?;
        let top_delta = self.delta(&top_rel, &ext[max_degree], max_degree + 1, &mut lifts)?;
        let mut j = Vec::new();
        let mut p = Vec::new();
        let mut delta = vec![None];
        for n in 0..=max_degree {
            let id = Matrix::identity(ring, self.ambient.dim(n));
            j.push(induced_map_on_subquotients(&id, &ext[n], &abs[n])?);
            p.push(induced_map_on_subquotients(&id, &abs[n], &rel[n])?);
            if n > 0 {
                delta.push(Some(self.delta(&rel[n], &ext[n - 1], n, &mut lifts)?));
            }
        }
        let ses = (0..=max_degree)
            .map(|n| self.ses(n))
            .collect::<Result<Vec<_>>>()?;
        let mut degrees = Vec::new();
        let mut exact = ses.iter().all(SesDegree::holds);
        for n in (0..=max_degree).rev() {
            let incoming = if n == max_degree {
                &top_delta
            } else {
                delta[n + 1].as_ref().expect("n + 1 ≥ 1")
            };
            let outgoing = match &delta[n] {
                Some(d) => d.clone(),
                None => zero_map_to_zero(p[n].target()),
            };
            let row = LesDegree {
                degree: n,
                extended: GroupSummary::of(ext[n].module()),
                absolute: GroupSummary::of(abs[n].module()),
                relative: GroupSummary::of(rel[n].module()),
                j: j[n].matrix().to_string_rows(),
                p: p[n].matrix().to_string_rows(),
                delta: delta[n]
                    .as_ref()
                    .map(|d| d.matrix().to_string_rows())
                    .unwrap_or_default(),
                exact_at_extended: exact_at(incoming, &j[n])?,
                exact_at_absolute: exact_at(&j[n], &p[n])?,
                exact_at_relative: exact_at(&p[n], &outgoing)?,
            };
            exact &= row.exact_at_extended && row.exact_at_absolute && row.exact_at_relative;
            degrees.push(row);
        }
        exact &= lifts.1 == 0;
        Ok(LesReport {
            max_degree,
            ses,
            degrees,
            top_delta: top_delta.matrix().to_string_rows(),
            alternative_lifts_checked: lifts.0,
            alternative_lift_failures: lifts.1,
            exact,
        })
    }

    /// Kernel of `ι_n : R[S] ⊗ C_n(T) ⊗ R[S] → C_n(S)` and a comparison of
    /// its image with the extended chains.
    pub fn transfer_kernel(&self, n: usize) -> Result<TransferKernelReport> {
        if n > self.top() {
            return Err(Error::Truncation {
                requested: n,
                truncation: self.top(),
            });
        }
        let domain = transfer_domain(self.ambient.chains(n), self.sub.chains(n), &self.inclusion)?;
        let iota = transfer_map(&domain)?;
        let kernel = iota.kernel()?.module().clone();
        let image = image_basis(domain.iota_matrix())?;
        let extended = self.extended[n].basis();
        let image_equals_extended = same_span(&image, extended)?;
        let injective = kernel.is_zero();
        Ok(TransferKernelReport {
            degree: n,
            domain_generators: domain.triples().len(),
            domain: GroupSummary::of(domain.module()),
            kernel: GroupSummary::of(&kernel),
            injective,
            image_rank: image.cols(),
            extended_rank: extended.cols(),
            image_equals_extended,
            domain_iso_extended: injective && image_equals_extended,
        })
    }
}
