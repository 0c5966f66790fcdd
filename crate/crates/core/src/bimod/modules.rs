use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::exactlin::{image_basis, vec_is_zero, Matrix, PresentedModule, Scalar, SpanSolver};
use crate::nualg::{opposite, tensor_unital, unitalize, Algebra, AlgebraElement};

fn check_actions(
    alg: &Algebra,
    pres: &PresentedModule,
    actions: &[Matrix],
    right: bool,
    side: &str,
) -> Result<()> {
    let n = pres.generator_count();
    if actions.len() != alg.dim() {
        return Err(Error::Dimension(format!(
            "{side} action: {} matrices for an algebra of dimension {}",
            actions.len(),
            alg.dim()
        )));
    }
    for (k, a) in actions.iter().enumerate() {
        if a.rows() != n || a.cols() != n {
            return Err(Error::Dimension(format!(
                "{side} action of `{}` is not {n}x{n}",
                alg.basis()[k].name
            )));
        }
        if a.ring() != alg.ring() || pres.ring() != alg.ring() {
            return Err(Error::RingMismatch(a.ring().code(), alg.ring().code()));
        }
        if !pres
            .relation_solver()
            .contains_all(&a.mul(pres.relations()))
        {
            return Err(Error::Invalid(format!(
                "{side} action of `{}` does not preserve the relations",
                alg.basis()[k].name
            )));
        }
    }
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let lhs = if right {
                actions[j].mul(&actions[i])
            } else {
                actions[i].mul(&actions[j])
            };
            let rhs = combination(alg, actions, alg.basis_product(i, j), n);
            if !zero_in(pres, &lhs.sub(&rhs)) {
                return Err(Error::Invalid(format!(
                    "{side} action is not compatible with the product `{}`·`{}`",
                    alg.basis()[i].name,
                    alg.basis()[j].name
                )));
            }
        }
    }
    Ok(())
}

fn combination(alg: &Algebra, actions: &[Matrix], terms: &[(usize, Scalar)], n: usize) -> Matrix {
    let mut out = Matrix::zeros(alg.ring(), n, n);
    for (k, c) in terms {
        out = out.add(&actions[*k].scale(c));
    }
    out
}

fn zero_in(pres: &PresentedModule, m: &Matrix) -> bool {
    (0..m.cols()).all(|j| pres.is_zero_element(&m.column(j)))
}

fn action_of(alg: &Algebra, actions: &[Matrix], a: &AlgebraElement, n: usize) -> Matrix {
    let terms: Vec<_> = a
        .support()
        .into_iter()
        .map(|k| (k, a.coefficient(k).clone()))
        .collect();
    combination(alg, actions, &terms, n)
}

/// A witness `e` with `e·m = m` (or `m·e = m`), checked in the presented
/// module. Path algebras try the identities first.
fn local_unit(
    alg: &Algebra,
    pres: &PresentedModule,
    actions: &[Matrix],
    m: &[Scalar],
) -> Option<AlgebraElement> {
    let n = pres.generator_count();
    let works =
        |e: &AlgebraElement| pres.same_element(&action_of(alg, actions, e, n).mul_vec(m), m);
    if let Some(ids) = alg.identities() {
        let mut used = alg.zero();
        let mut all = alg.zero();
        for &i in ids {
            let id = alg.basis_element(i);
            all = alg.add(&all, &id);
            if !pres.is_zero_element(&actions[i].mul_vec(m)) {
                used = alg.add(&used, &id);
            }
        }
        for e in [used, all] {
            if works(&e) {
                return Some(e);
            }
        }
    }
    if let Some(u) = alg.unit() {
        if works(&u) {
            return Some(u);
        }
    }
    let cols: Vec<Vec<Scalar>> = actions.iter().map(|a| a.mul_vec(m)).collect();
    let system = Matrix::from_columns(alg.ring(), n, &cols).hstack(pres.relations());
    let x = SpanSolver::new(&system).ok()?.solve(m)?;
    let e = alg.from_coords(x[..alg.dim()].to_vec()).ok()?;
    works(&e).then_some(e)
}

fn check_element(pres: &PresentedModule, m: &[Scalar]) -> Result<()> {
    if m.len() != pres.generator_count() {
        return Err(Error::Dimension(format!(
            "element has {} coordinates, module has {} generators",
            m.len(),
            pres.generator_count()
        )));
    }
    Ok(())
}

fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("m{i}")).collect()
}

fn check_names(names: &[String], pres: &PresentedModule) -> Result<()> {
    if names.len() != pres.generator_count() {
        return Err(Error::Dimension("one name per generator expected".into()));
    }
    Ok(())
}

/// Left module over an algebra: a presented module with one action matrix
/// per basis element of the algebra.
#[derive(Clone, Debug)]
pub struct LeftModule {
    algebra: Algebra,
    presentation: PresentedModule,
    actions: Vec<Matrix>,
    names: Vec<String>,
}

impl LeftModule {
    pub fn new(
        algebra: Algebra,
        presentation: PresentedModule,
        actions: Vec<Matrix>,
        names: Vec<String>,
    ) -> Result<Self> {
        check_names(&names, &presentation)?;
        check_actions(&algebra, &presentation, &actions, false, "left")?;
        Ok(LeftModule {
            algebra,
            presentation,
            actions,
            names,
        })
    }

    /// `A` acting on itself by left multiplication.
    pub fn regular(algebra: &Algebra) -> Self {
        let actions = (0..algebra.dim())
            .map(|k| algebra.left_multiplication(&algebra.basis_element(k)))
            .collect();
        LeftModule {
            presentation: PresentedModule::free(algebra.ring(), algebra.dim()),
            names: algebra.basis().iter().map(|b| b.name.clone()).collect(),
            algebra: algebra.clone(),
            actions,
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn presentation(&self) -> &PresentedModule {
        &self.presentation
    }

    pub fn dim(&self) -> usize {
        self.presentation.generator_count()
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn action_matrix(&self, a: &AlgebraElement) -> Matrix {
        action_of(&self.algebra, &self.actions, a, self.dim())
    }

    pub fn act(&self, a: &AlgebraElement, m: &[Scalar]) -> Result<Vec<Scalar>> {
        check_element(&self.presentation, m)?;
        Ok(self.action_matrix(a).mul_vec(m))
    }

    pub fn local_unit(&self, m: &[Scalar]) -> Option<AlgebraElement> {
        local_unit(&self.algebra, &self.presentation, &self.actions, m)
    }

    /// The same module over `Â`, the adjoined unit acting as the identity.
    pub fn unitalize(&self) -> LeftModule {
        let mut actions = self.actions.clone();
        actions.push(Matrix::identity(self.algebra.ring(), self.dim()));
        LeftModule {
            algebra: unitalize(&self.algebra),
            presentation: self.presentation.clone(),
            actions,
            names: self.names.clone(),
        }
    }
}

/// Right module over an algebra; `actions[k]` is `m ↦ m·b_k`.
#[derive(Clone, Debug)]
pub struct RightModule {
    algebra: Algebra,
    presentation: PresentedModule,
    actions: Vec<Matrix>,
    names: Vec<String>,
}

impl RightModule {
    pub fn new(
        algebra: Algebra,
        presentation: PresentedModule,
        actions: Vec<Matrix>,
        names: Vec<String>,
    ) -> Result<Self> {
        check_names(&names, &presentation)?;
        check_actions(&algebra, &presentation, &actions, true, "right")?;
        Ok(RightModule {
            algebra,
            presentation,
            actions,
            names,
        })
    }

    /// `A` acting on itself by right multiplication.
    pub fn regular(algebra: &Algebra) -> Self {
        let actions = (0..algebra.dim())
            .map(|k| algebra.right_multiplication(&algebra.basis_element(k)))
            .collect();
        RightModule {
            presentation: PresentedModule::free(algebra.ring(), algebra.dim()),
            names: algebra.basis().iter().map(|b| b.name.clone()).collect(),
            algebra: algebra.clone(),
            actions,
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn presentation(&self) -> &PresentedModule {
        &self.presentation
    }

    pub fn dim(&self) -> usize {
        self.presentation.generator_count()
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn action_matrix(&self, a: &AlgebraElement) -> Matrix {
        action_of(&self.algebra, &self.actions, a, self.dim())
    }

    pub fn act(&self, m: &[Scalar], a: &AlgebraElement) -> Result<Vec<Scalar>> {
        check_element(&self.presentation, m)?;
        Ok(self.action_matrix(a).mul_vec(m))
    }

    pub fn local_unit(&self, m: &[Scalar]) -> Option<AlgebraElement> {
        local_unit(&self.algebra, &self.presentation, &self.actions, m)
    }
}

/// `(A, B)`-bimodule: left action by `A`, right action by `B`, commuting.
#[derive(Clone, Debug)]
pub struct Bimodule {
    left_algebra: Algebra,
    right_algebra: Algebra,
    presentation: PresentedModule,
    left_actions: Vec<Matrix>,
    right_actions: Vec<Matrix>,
    names: Vec<String>,
}

impl Bimodule {
    pub fn new(
        left_algebra: Algebra,
        right_algebra: Algebra,
        presentation: PresentedModule,
        left_actions: Vec<Matrix>,
        right_actions: Vec<Matrix>,
        names: Vec<String>,
    ) -> Result<Self> {
        check_names(&names, &presentation)?;
        check_actions(&left_algebra, &presentation, &left_actions, false, "left")?;
        check_actions(&right_algebra, &presentation, &right_actions, true, "right")?;
        for (i, l) in left_actions.iter().enumerate() {
            for (j, r) in right_actions.iter().enumerate() {
                if !zero_in(&presentation, &l.mul(r).sub(&r.mul(l))) {
                    return Err(Error::Invalid(format!(
                        "left `{}` and right `{}` actions do not commute",
                        left_algebra.basis()[i].name,
                        right_algebra.basis()[j].name
                    )));
                }
            }
        }
        Ok(Bimodule {
            left_algebra,
            right_algebra,
            presentation,
            left_actions,
            right_actions,
            names,
        })
    }

    /// Free bimodule with default generator names.
    pub fn free(
        left_algebra: Algebra,
        right_algebra: Algebra,
        left_actions: Vec<Matrix>,
        right_actions: Vec<Matrix>,
    ) -> Result<Self> {
        let n = left_actions
            .first()
            .or(right_actions.first())
            .map_or(0, Matrix::rows);
        let ring = left_algebra.ring();
        Bimodule::new(
            left_algebra,
            right_algebra,
            PresentedModule::free(ring, n),
            left_actions,
            right_actions,
            default_names(n),
        )
    }

    pub fn left_algebra(&self) -> &Algebra {
        &self.left_algebra
    }

    pub fn right_algebra(&self) -> &Algebra {
        &self.right_algebra
    }

    pub fn presentation(&self) -> &PresentedModule {
        &self.presentation
    }

    pub fn dim(&self) -> usize {
        self.presentation.generator_count()
    }

    pub fn left_actions(&self) -> &[Matrix] {
        &self.left_actions
    }

    pub fn right_actions(&self) -> &[Matrix] {
        &self.right_actions
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn left_module(&self) -> LeftModule {
        LeftModule {
            algebra: self.left_algebra.clone(),
            presentation: self.presentation.clone(),
            actions: self.left_actions.clone(),
            names: self.names.clone(),
        }
    }

    pub fn right_module(&self) -> RightModule {
        RightModule {
            algebra: self.right_algebra.clone(),
            presentation: self.presentation.clone(),
            actions: self.right_actions.clone(),
            names: self.names.clone(),
        }
    }

    /// `a · m · b`.
    pub fn act(&self, a: &AlgebraElement, m: &[Scalar], b: &AlgebraElement) -> Result<Vec<Scalar>> {
        check_element(&self.presentation, m)?;
        if a.dim() != self.left_algebra.dim() || b.dim() != self.right_algebra.dim() {
            return Err(Error::Dimension(
                "algebra element of the wrong algebra".into(),
            ));
        }
        let mb = action_of(&self.right_algebra, &self.right_actions, b, self.dim()).mul_vec(m);
        Ok(action_of(&self.left_algebra, &self.left_actions, a, self.dim()).mul_vec(&mb))
    }

    /// Left and right local units of `m`, when both exist.
    pub fn local_units(&self, m: &[Scalar]) -> Option<(AlgebraElement, AlgebraElement)> {
        let e = local_unit(
            &self.left_algebra,
            &self.presentation,
            &self.left_actions,
            m,
        )?;
        let f = local_unit(
            &self.right_algebra,
            &self.presentation,
            &self.right_actions,
            m,
        )?;
        Some((e, f))
    }
}

/// Local units for every sample, or `NotSUnital` naming the first failure.
pub fn check_s_unital_module(
    module: &LeftModule,
    samples: &[Vec<Scalar>],
) -> Result<Vec<AlgebraElement>> {
    samples
        .iter()
        .enumerate()
        .map(|(i, m)| {
            check_element(module.presentation(), m)?;
            module
                .local_unit(m)
                .ok_or_else(|| Error::NotSUnital(format!("sample {i} has no local unit")))
        })
        .collect()
}

/// Two-sided version of [`check_s_unital_module`].
pub fn check_s_unital_bimodule(
    module: &Bimodule,
    samples: &[Vec<Scalar>],
) -> Result<Vec<(AlgebraElement, AlgebraElement)>> {
    samples
        .iter()
        .enumerate()
        .map(|(i, m)| {
            check_element(module.presentation(), m)?;
            module
                .local_units(m)
                .ok_or_else(|| Error::NotSUnital(format!("sample {i} has no two-sided local unit")))
        })
        .collect()
}

/// The same bimodule over `(Â, B̂)`; both adjoined units act as the identity.
pub fn module_unitalize(m: &Bimodule) -> Bimodule {
    let id = Matrix::identity(m.left_algebra.ring(), m.dim());
    let mut left = m.left_actions.clone();
    left.push(id.clone());
    let mut right = m.right_actions.clone();
    right.push(id);
    Bimodule {
        left_algebra: unitalize(&m.left_algebra),
        right_algebra: unitalize(&m.right_algebra),
        presentation: m.presentation.clone(),
        left_actions: left,
        right_actions: right,
        names: m.names.clone(),
    }
}

/// Inverse of [`module_unitalize`]: restricts a `(Â, B̂)`-bimodule whose
/// adjoined units act as the identity back to `(A, B)`.
pub fn module_deunitalize(m: &Bimodule) -> Result<Bimodule> {
    let (Some(a), Some(b)) = (
        m.left_algebra.unitalization_of(),
        m.right_algebra.unitalization_of(),
    ) else {
        return Err(Error::Invalid(
            "both algebras must be unitalizations".into(),
        ));
    };
    let id = Matrix::identity(m.left_algebra.ring(), m.dim());
    let unit_acts = |acts: &[Matrix]| {
        acts.last()
            .is_some_and(|u| zero_in(&m.presentation, &u.sub(&id)))
    };
    if !unit_acts(&m.left_actions) || !unit_acts(&m.right_actions) {
        return Err(Error::Invalid(
            "the adjoined unit does not act as the identity".into(),
        ));
    }
    Ok(Bimodule {
        left_algebra: a.clone(),
        right_algebra: b.clone(),
        presentation: m.presentation.clone(),
        left_actions: m.left_actions[..a.dim()].to_vec(),
        right_actions: m.right_actions[..b.dim()].to_vec(),
        names: m.names.clone(),
    })
}

/// An `(A, B)`-bimodule as a left module over `Â ⊗ B̂^op`, with
/// `(a ⊗ b)·m = a·m·b`. Already unital algebras are used as they are.
pub fn merge(m: &Bimodule) -> Result<LeftModule> {
    let m = if m.left_algebra.is_unital() && m.right_algebra.is_unital() {
        m.clone()
    } else {
        module_unitalize(m)
    };
    let t = tensor_unital(&m.left_algebra, &opposite(&m.right_algebra))?;
    let kb = m.right_algebra.dim();
    let actions = (0..t.dim())
        .map(|p| m.left_actions[p / kb].mul(&m.right_actions[p % kb]))
        .collect();
    LeftModule::new(t, m.presentation.clone(), actions, m.names.clone())
}

/// Sub-bimodule of a bimodule's generator lattice.
#[derive(Clone, Debug)]
pub struct SubBimodule {
    generators: Matrix,
    basis: Matrix,
}

impl SubBimodule {
    pub fn generators(&self) -> &Matrix {
        &self.generators
    }

    /// Independent columns spanning the sub-bimodule.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn contains(&self, x: &[Scalar]) -> Result<bool> {
        Ok(SpanSolver::new(&self.basis)?.contains(x))
    }
}

/// Smallest sub-bimodule containing `generators`: the orbit closure under
/// all basis actions, computed breadth first.
pub fn submodule_generated(m: &Bimodule, generators: &[Vec<Scalar>]) -> Result<SubBimodule> {
    let ring = m.left_algebra.ring();
    let n = m.dim();
    for g in generators {
        check_element(&m.presentation, g)?;
    }
    let mut spanning: Vec<Vec<Scalar>> = Vec::new();
    let mut solver = SpanSolver::new(&Matrix::zeros(ring, n, 0))?;
    let mut queue: VecDeque<Vec<Scalar>> = generators.iter().cloned().collect();
    while let Some(v) = queue.pop_front() {
        if vec_is_zero(&v) || solver.contains(&v) {
            continue;
        }
        for a in m.left_actions.iter().chain(&m.right_actions) {
            queue.push_back(a.mul_vec(&v));
        }
        spanning.push(v);
        solver = SpanSolver::new(&Matrix::from_columns(ring, n, &spanning))?;
    }
    let generators = Matrix::from_columns(ring, n, generators);
    let basis = image_basis(&Matrix::from_columns(ring, n, &spanning))?;
    Ok(SubBimodule { generators, basis })
}

/// `M / N`; fails unless `N` is stable under both actions.
pub fn quotient_bimodule(m: &Bimodule, sub: &SubBimodule) -> Result<Bimodule> {
    if sub.basis.rows() != m.dim() {
        return Err(Error::Dimension(
            "sub-bimodule lives in a different lattice".into(),
        ));
    }
    let solver = SpanSolver::new(&sub.basis.hstack(m.presentation.relations()))?;
    for a in m.left_actions.iter().chain(&m.right_actions) {
        if !solver.contains_all(&a.mul(&sub.basis)) {
            return Err(Error::Invalid(
                "not a sub-bimodule: the span is not stable".into(),
            ));
        }
    }
    Bimodule::new(
        m.left_algebra.clone(),
        m.right_algebra.clone(),
        PresentedModule::new(m.presentation.relations().hstack(&sub.basis))?,
        m.left_actions.clone(),
        m.right_actions.clone(),
        m.names.clone(),
    )
}
