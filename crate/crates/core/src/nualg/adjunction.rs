use serde::Serialize;

use super::algebra::{unitalize, Algebra, AlgebraElement, AlgebraMorphism};
use crate::error::{Error, Result};
use crate::exactlin::Matrix;

/// `η_A : A → Â`, `x ↦ (x, 0)`.
pub fn unit_map(a: &Algebra) -> Result<AlgebraMorphism> {
    let hat = unitalize(a);
    let k = a.dim();
    let mut m = Matrix::zeros(a.ring(), k + 1, k);
    for i in 0..k {
        m.set(i, i, a.ring().one());
    }
    AlgebraMorphism::new(a.clone(), hat, m)
}

/// `ε_B : B̂ → B`, `(x, r) ↦ x + r·1_B`, for unital `B`.
pub fn counit(b: &Algebra) -> Result<AlgebraMorphism> {
    let one = b
        .unit()
        .ok_or_else(|| Error::Invalid("the counit needs a unital algebra".into()))?;
    let k = b.dim();
    let mut m = Matrix::zeros(b.ring(), k, k + 1);
    for i in 0..k {
        m.set(i, i, b.ring().one());
        m.set(i, k, one.coefficient(i).clone());
    }
    AlgebraMorphism::new(unitalize(b), b.clone(), m)
}

/// `f̂ : Â → B̂`, `(x, r) ↦ (f x, r)`.
pub fn unitalize_morphism(f: &AlgebraMorphism) -> Result<AlgebraMorphism> {
    let (ka, kb) = (f.source().dim(), f.target().dim());
    let ring = f.source().ring();
    let mut m = Matrix::zeros(ring, kb + 1, ka + 1);
    for i in 0..kb {
        for j in 0..ka {
            m.set(i, j, f.matrix().get(i, j).clone());
        }
    }
    m.set(kb, ka, ring.one());
    AlgebraMorphism::new(unitalize(f.source()), unitalize(f.target()), m)
}

/// Outcome of the adjunction checks for `A` on a list of samples of `Â`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjunctionReport {
    pub algebra: String,
    pub samples: usize,
    /// `η_A` and `η_{Â}` are multiplicative.
    pub eta_multiplicative: bool,
    /// `ε_{Â}` is multiplicative and unit-preserving.
    pub epsilon_unital_morphism: bool,
    /// `ε_{Â} ∘ (η_A)^ = id` on every sample.
    pub triangle_hat: bool,
    /// `U(ε_{Â}) ∘ η_{U Â} = id` on every sample.
    pub triangle_forget: bool,
}

impl AdjunctionReport {
    pub fn holds(&self) -> bool {
        self.eta_multiplicative
            && self.epsilon_unital_morphism
            && self.triangle_hat
            && self.triangle_forget
    }
}

/// Both triangle identities of unitalization ⊣ forgetful, tested on
/// `samples ⊆ Â`.
pub fn check_adjunction_triangles(
    a: &Algebra,
    name: &str,
    samples: &[AlgebraElement],
) -> Result<AdjunctionReport> {
    let hat = unitalize(a);
    if samples.iter().any(|x| x.dim() != hat.dim()) {
        return Err(Error::Dimension(
            "samples must lie in the unitalization".into(),
        ));
    }
    let mut report = AdjunctionReport {
        algebra: name.to_string(),
        samples: samples.len(),
        eta_multiplicative: false,
        epsilon_unital_morphism: false,
        triangle_hat: false,
        triangle_forget: false,
    };
    let (Ok(eta_a), Ok(eta_hat)) = (unit_map(a), unit_map(&hat)) else {
        return Ok(report);
    };
    report.eta_multiplicative = true;
    let Ok(eps_hat) = counit(&hat) else {
        return Ok(report);
    };
    report.epsilon_unital_morphism = eps_hat.preserves_unit();
    let first = unitalize_morphism(&eta_a)?.then(&eps_hat)?;
    let second = eta_hat.then(&eps_hat)?;
    report.triangle_hat = samples.iter().all(|x| &first.apply(x) == x);
    report.triangle_forget = samples.iter().all(|x| &second.apply(x) == x);
    Ok(report)
}
