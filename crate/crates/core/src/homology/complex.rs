use serde::Serialize;

use crate::bimod::{chain_bimodule, ChainBasis, ChainBimodule, TranslationAction};
use crate::error::{Error, Result};
use crate::exactlin::{CoefficientRing, Matrix};
use crate::scat::{EnrichedCategory, EnrichedFunctor};

/// `d_n = Σ_j (−1)^j ∂_j` as a matrix `C_n → C_{n−1}` on the chain bases.
pub fn boundary_matrix(c: &EnrichedCategory, n: usize, ring: CoefficientRing) -> Result<Matrix> {
    if n == 0 {
        return Err(Error::Invalid(
            "the boundary is defined for degrees n ≥ 1".into(),
        ));
    }
    if n > c.truncation() {
        return Err(Error::Truncation {
            requested: n,
            truncation: c.truncation(),
        });
    }
    let (high, low) = (ChainBasis::new(c, n)?, ChainBasis::new(c, n - 1)?);
    Ok(boundary_between(c, &high, &low, ring))
}

fn boundary_between(
    c: &EnrichedCategory,
    high: &ChainBasis,
    low: &ChainBasis,
    ring: CoefficientRing,
) -> Matrix {
    let n = high.degree();
    let mut d = Matrix::zeros(ring, low.len(), high.len());
    let (plus, minus) = (ring.one(), ring.neg(&ring.one()));
    for (col, &(a, b, x)) in high.entries().iter().enumerate() {
        for j in 0..=n {
            let row = low.index(a, b, c.hom(a, b).face(n, x, j));
            d.add_to(row, col, if j % 2 == 0 { &plus } else { &minus });
        }
    }
    d
}

/// `C_•` of an enriched category: chain bimodules in degrees `0..=D` and
/// boundary matrices, `d_0 = 0`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    ring: CoefficientRing,
    chains: Vec<ChainBimodule>,
    boundaries: Vec<Matrix>,
}

pub fn chain_complex(c: &EnrichedCategory, ring: CoefficientRing) -> Result<ChainComplex> {
    let chains = (0..=c.truncation())
        .map(|n| chain_bimodule(c, n, ring))
        .collect::<Result<Vec<_>>>()?;
    let mut boundaries = vec![Matrix::zeros(ring, 0, chains[0].dim())];
    for n in 1..chains.len() {
        boundaries.push(boundary_between(
            c,
            chains[n].basis(),
            chains[n - 1].basis(),
            ring,
        ));
    }
    let cx = ChainComplex {
        ring,
        chains,
        boundaries,
    };
    if let Some(n) = cx.square_failure() {
        return Err(Error::NotAChainComplex(format!("d_{n} ∘ d_{} ≠ 0", n + 1)));
    }
    Ok(cx)
}

impl ChainComplex {
    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    /// Highest stored degree `D`.
    pub fn top(&self) -> usize {
        self.chains.len() - 1
    }

    pub fn chains(&self, n: usize) -> &ChainBimodule {
        &self.chains[n]
    }

    pub fn dim(&self, n: usize) -> usize {
        self.chains[n].dim()
    }

    /// `d_n`; `d_0` is the zero map to the zero module.
    pub fn boundary(&self, n: usize) -> &Matrix {
        &self.boundaries[n]
    }

    /// First `n` with `d_n d_{n+1} ≠ 0`.
    pub fn square_failure(&self) -> Option<usize> {
        (1..self.top()).find(|&n| !self.boundaries[n].mul(&self.boundaries[n + 1]).is_zero())
    }

    /// Replaces the action of one degree without re-checking it, so that the
    /// equivariance checker can be exercised on broken data.
    pub fn with_action(mut self, n: usize, action: TranslationAction) -> Self {
        self.chains[n] = self.chains[n].clone().with_action(action);
        self
    }
}

/// Outcome of a family of exact matrix-equality checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

/// `d_n L_f = L_f d_n` and `d_n R_g = R_g d_n` for every degree and every
/// 1-morphism.
pub fn verify_boundary_equivariance(cx: &ChainComplex) -> CheckReport {
    let mut report = CheckReport::default();
    for n in 1..=cx.top() {
        let (hi, lo) = (cx.chains(n), cx.chains(n - 1));
        let d = cx.boundary(n);
        for f in 0..hi.category().morphism_count() {
            let name = &hi.category().morphism(f).name;
            report.record(
                d.mul(&hi.left_matrix(f)) == lo.left_matrix(f).mul(d),
                || format!("degree {n}: d does not commute with the left action of `{name}`"),
            );
            report.record(
                d.mul(&hi.right_matrix(f)) == lo.right_matrix(f).mul(d),
                || format!("degree {n}: d does not commute with the right action of `{name}`"),
            );
        }
    }
    report
}

/// `F_* : C_n(S) → C_n(S')` on chain bases.
pub fn chain_map_matrix(
    f: &EnrichedFunctor,
    src: &ChainComplex,
    tgt: &ChainComplex,
    n: usize,
) -> Result<Matrix> {
    if f.source_object_count() != src.chains(0).category().object_count()
        || f.object_map()
            .iter()
            .any(|&o| o >= tgt.chains(0).category().object_count())
    {
        return Err(Error::Dimension(
            "functor does not match the complexes".into(),
        ));
    }
    let (sb, tb) = (src.chains(n).basis(), tgt.chains(n).basis());
    let obj = f.object_map();
    let mut m = Matrix::zeros(src.ring(), tb.len(), sb.len());
    for (j, &(a, b, x)) in sb.entries().iter().enumerate() {
        m.set(
            tb.index(obj[a], obj[b], f.apply(a, b, n, x)),
            j,
            src.ring().one(),
        );
    }
    Ok(m)
}

/// Chain-map property `F_* d = d F_*` in degrees `1..=top`.
pub fn check_chain_map(f: &EnrichedFunctor, src: &ChainComplex, tgt: &ChainComplex) -> Result<()> {
    let top = src.top().min(tgt.top());
    let mut lower = chain_map_matrix(f, src, tgt, 0)?;
    for n in 1..=top {
        let upper = chain_map_matrix(f, src, tgt, n)?;
        if tgt.boundary(n).mul(&upper) != lower.mul(src.boundary(n)) {
            return Err(Error::NotAChainMap(format!(
                "F does not commute with d_{n}"
            )));
        }
        lower = upper;
    }
    Ok(())
}
