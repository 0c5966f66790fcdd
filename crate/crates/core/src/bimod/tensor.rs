use crate::error::{Error, Result};
use crate::exactlin::{kernel_basis, vec_is_zero, Matrix, ModuleMorphism, PresentedModule, Scalar};
use crate::nualg::{find_local_unit, Algebra, AlgebraElement, AlgebraMorphism, Side};

use super::modules::{LeftModule, RightModule};

/// `M ⊗_A N` presented on the pairs of generators; pair `(i, j)` has index
/// `i·dim N + j`.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    left_dim: usize,
    right_dim: usize,
    module: PresentedModule,
    names: Vec<String>,
}

impl TensorProduct {
    pub fn module(&self) -> &PresentedModule {
        &self.module
    }

    pub fn generator_count(&self) -> usize {
        self.left_dim * self.right_dim
    }

    pub fn pair_index(&self, i: usize, j: usize) -> usize {
        i * self.right_dim + j
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Coordinates of `x ⊗ y`.
    pub fn simple_tensor(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.left_dim || y.len() != self.right_dim {
            return Err(Error::Dimension("factor of the wrong size".into()));
        }
        let ring = self.module.ring();
        let mut out = Vec::with_capacity(self.generator_count());
        for a in x {
            for b in y {
                out.push(ring.mul(a, b));
            }
        }
        Ok(out)
    }
}

fn kron_identity(l: &Matrix, n: usize) -> Matrix {
    let ring = l.ring();
    let mut out = Matrix::zeros(ring, l.rows() * n, l.cols() * n);
    for i in 0..l.rows() {
        for j in 0..l.cols() {
            let c = l.get(i, j);
            if num_traits::Zero::is_zero(c) {
                continue;
            }
            for k in 0..n {
                out.set(i * n + k, j * n + k, c.clone());
            }
        }
    }
    out
}

fn identity_kron(n: usize, r: &Matrix) -> Matrix {
    let ring = r.ring();
    let mut out = Matrix::zeros(ring, n * r.rows(), n * r.cols());
    for k in 0..n {
        for i in 0..r.rows() {
            for j in 0..r.cols() {
                out.set(k * r.rows() + i, k * r.cols() + j, r.get(i, j).clone());
            }
        }
    }
    out
}

/// Relations of `M ⊗_A N`: those of `M` and of `N` tensored with the other
/// side's generators, plus `(m·a) ⊗ n − m ⊗ (a·n)` on all basis triples.
pub fn tensor_over_algebra(m: &RightModule, a: &Algebra, n: &LeftModule) -> Result<TensorProduct> {
    if m.algebra() != a || n.algebra() != a {
        return Err(Error::Invalid(
            "both modules must be over the given algebra".into(),
        ));
    }
    let (dm, dn) = (m.dim(), n.dim());
    let ring = a.ring();
    let mut relations = kron_identity(m.presentation().relations(), dn);
    relations = relations.hstack(&identity_kron(dm, n.presentation().relations()));
    for k in 0..a.dim() {
        let balance = kron_identity(&m.actions()[k], dn).sub(&identity_kron(dm, &n.actions()[k]));
        let cols: Vec<Vec<Scalar>> = balance
            .columns()
            .into_iter()
            .filter(|c| !vec_is_zero(c))
            .collect();
        relations = relations.hstack(&Matrix::from_columns(ring, dm * dn, &cols));
    }
    let names = m
        .names()
        .iter()
        .flat_map(|x| n.names().iter().map(move |y| format!("{x}⊗{y}")))
        .collect();
    Ok(TensorProduct {
        left_dim: dm,
        right_dim: dn,
        module: PresentedModule::new(relations)?,
        names,
    })
}

/// `φ`, given on generator pairs, is bilinear over the presentations of
/// both factors and `A`-balanced, with values in `target`.
pub fn is_balanced(
    m: &RightModule,
    n: &LeftModule,
    phi: &Matrix,
    target: &PresentedModule,
) -> bool {
    let (dm, dn) = (m.dim(), n.dim());
    if phi.cols() != dm * dn || phi.rows() != target.generator_count() || m.algebra() != n.algebra()
    {
        return false;
    }
    let mut tests = vec![
        kron_identity(m.presentation().relations(), dn),
        identity_kron(dm, n.presentation().relations()),
    ];
    for k in 0..m.algebra().dim() {
        tests.push(kron_identity(&m.actions()[k], dn).sub(&identity_kron(dm, &n.actions()[k])));
    }
    tests.iter().all(|t| {
        let image = phi.mul(t);
        (0..image.cols()).all(|j| target.is_zero_element(&image.column(j)))
    })
}

/// The map `M ⊗_A N → target` induced by a balanced `φ`.
pub fn factor_balanced(
    tp: &TensorProduct,
    phi: &Matrix,
    target: &PresentedModule,
) -> Result<ModuleMorphism> {
    ModuleMorphism::new(tp.module.clone(), target.clone(), phi.clone())
}

/// The multiplication `μ : A ⊗_A M → M` with its kernel and cokernel.
#[derive(Clone, Debug)]
pub struct FirmnessReport {
    pub tensor: TensorProduct,
    pub mu: ModuleMorphism,
    pub kernel: PresentedModule,
    pub cokernel: PresentedModule,
}

impl FirmnessReport {
    pub fn is_firm(&self) -> bool {
        self.kernel.is_zero() && self.cokernel.is_zero()
    }

    /// `μ⁻¹(m) = e ⊗ m` for a local unit `e` of `m`.
    pub fn mu_inverse(&self, e: &AlgebraElement, m: &[Scalar]) -> Result<Vec<Scalar>> {
        self.tensor.simple_tensor(e.coords(), m)
    }
}

pub fn check_firm(module: &LeftModule) -> Result<FirmnessReport> {
    let a = module.algebra();
    let tensor = tensor_over_algebra(&RightModule::regular(a), a, module)?;
    let n = module.dim();
    let mut columns = Vec::with_capacity(a.dim() * n);
    for act in module.actions() {
        for j in 0..n {
            columns.push(act.column(j));
        }
    }
    let mu_matrix = Matrix::from_columns(a.ring(), n, &columns);
    let mu = ModuleMorphism::new(
        tensor.module.clone(),
        module.presentation().clone(),
        mu_matrix,
    )?;
    let kernel = mu.kernel()?.module().clone();
    let cokernel = mu.cokernel()?;
    Ok(FirmnessReport {
        tensor,
        mu,
        kernel,
        cokernel,
    })
}

/// A second local unit `e + k` of `m` with `k·m = 0` and `k ≠ 0`, if the
/// annihilator of `m` is nonzero.
pub fn alternative_unit(
    module: &LeftModule,
    e: &AlgebraElement,
    m: &[Scalar],
) -> Result<Option<AlgebraElement>> {
    let a = module.algebra();
    let cols: Vec<Vec<Scalar>> = module.actions().iter().map(|act| act.mul_vec(m)).collect();
    let system = Matrix::from_columns(a.ring(), module.dim(), &cols)
        .hstack(module.presentation().relations());
    let kernel = kernel_basis(&system)?;
    for j in 0..kernel.cols() {
        let k = kernel.column(j)[..a.dim()].to_vec();
        if !vec_is_zero(&k) {
            return Ok(Some(a.add(e, &a.from_coords(k)?)));
        }
    }
    Ok(None)
}

/// `B ⊗_A M` with `B` acting on the left factor, for `g : A → B` with `B`
/// s-unital. `B` is a right `A`-module through `g`.
pub fn extension_of_scalars(g: &AlgebraMorphism, module: &LeftModule) -> Result<LeftModule> {
    let (a, b) = (g.source(), g.target());
    if module.algebra() != a {
        return Err(Error::Invalid(
            "module is not over the source algebra".into(),
        ));
    }
    let basis: Vec<_> = (0..b.dim()).map(|i| b.basis_element(i)).collect();
    find_local_unit(b, &basis, Side::Both)
        .map_err(|_| Error::NotSUnital("target algebra is not s-unital".into()))?;
    let actions = (0..a.dim())
        .map(|k| b.right_multiplication(&g.apply(&a.basis_element(k))))
        .collect();
    let names = b.basis().iter().map(|x| x.name.clone()).collect();
    let b_over_a = RightModule::new(
        a.clone(),
        crate::exactlin::PresentedModule::free(b.ring(), b.dim()),
        actions,
        names,
    )?;
    let tp = tensor_over_algebra(&b_over_a, a, module)?;
    let left = basis
        .iter()
        .map(|x| kron_identity(&b.left_multiplication(x), module.dim()))
        .collect();
    LeftModule::new(b.clone(), tp.module.clone(), left, tp.names.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimod::chain_bimodule;
    use crate::exactlin::{unit_vector, CoefficientRing};
    use crate::scat::{build_from_poset, Poset};

    fn z() -> CoefficientRing {
        CoefficientRing::Integers
    }

    fn interval() -> (Algebra, LeftModule) {
        let c = build_from_poset(&Poset::chain(2), 1).unwrap();
        let cb = chain_bimodule(&c, 0, z()).unwrap();
        let m = cb.to_bimodule().unwrap().left_module();
        (cb.algebra().clone(), m)
    }

    #[test]
    fn algebra_over_itself() {
        let (a, _) = interval();
        let reg = LeftModule::regular(&a);
        let tp = tensor_over_algebra(&RightModule::regular(&a), &a, &reg).unwrap();
        // A ⊗_A A ≅ A² = A for a path algebra
        assert_eq!(tp.module().free_rank(), 3);
        assert!(tp.module().invariant_factors().is_empty());
    }

    #[test]
    fn chains_are_firm() {
        let (_, m) = interval();
        let report = check_firm(&m).unwrap();
        assert!(report.is_firm());
        let x = unit_vector(z(), 3, 1);
        let e = m.local_unit(&x).unwrap();
        let alt = alternative_unit(&m, &e, &x).unwrap().unwrap();
        assert_ne!(alt, e);
        assert_eq!(m.act(&alt, &x).unwrap(), x);
        let (p, q) = (
            report.mu_inverse(&e, &x).unwrap(),
            report.mu_inverse(&alt, &x).unwrap(),
        );
        assert!(report.tensor.module().same_element(&p, &q));
        assert_eq!(report.mu.apply(&p), x);
    }

    #[test]
    fn zero_action_not_firm() {
        let (a, _) = interval();
        let zero = vec![Matrix::zeros(z(), 1, 1); a.dim()];
        let m = LeftModule::new(a, PresentedModule::free(z(), 1), zero, vec!["x".into()]).unwrap();
        let report = check_firm(&m).unwrap();
        assert!(!report.is_firm());
        assert_eq!(report.cokernel.free_rank(), 1);
    }

    #[test]
    fn balanced_maps_factor() {
        let (a, m) = interval();
        let r = RightModule::regular(&a);
        let tp = tensor_over_algebra(&r, &a, &m).unwrap();
        let report = check_firm(&m).unwrap();
        let phi = report.mu.matrix().clone();
        assert!(is_balanced(&r, &m, &phi, m.presentation()));
        assert!(factor_balanced(&tp, &phi, m.presentation()).is_ok());
        let mut bad = phi.clone();
        // u ⊗ [u] = (u × id0) ⊗ [u] = u ⊗ (id0 × [u]) = 0
        bad.set(1, 4, z().one());
        assert!(!is_balanced(&r, &m, &bad, m.presentation()));
    }

    #[test]
    fn extension_along_identity() {
        let (a, m) = interval();
        let ext = extension_of_scalars(&AlgebraMorphism::identity(&a), &m).unwrap();
        assert_eq!(ext.presentation().free_rank(), 3);
        assert!(check_firm(&ext).unwrap().is_firm());
    }
}
