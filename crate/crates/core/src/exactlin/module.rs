use num_traits::Zero;

use super::matrix::{unit_vector, vec_sub, Matrix};
use super::ring::{CoefficientRing, Scalar};
use super::snf::{image_basis, preimage_basis, smith_normal_form, SpanSolver};
use crate::error::{Error, Result};

/// Finitely presented module `R^generators / span(relations)`.
///
/// Relations are the columns of `relations`. The classification
/// `(free_rank, invariant_factors)` is computed once at construction.
#[derive(Clone, Debug)]
pub struct PresentedModule {
    ring: CoefficientRing,
    generators: usize,
    relations: Matrix,
    invariant_factors: Vec<Scalar>,
    free_rank: usize,
    solver: SpanSolver,
}

impl PresentedModule {
    pub fn new(relations: Matrix) -> Result<Self> {
        let ring = relations.ring();
        let generators = relations.rows();
        let snf = smith_normal_form(&relations)?;
        let invariant_factors = snf.invariant_factors();
        let free_rank = generators - snf.rank;
        let solver = SpanSolver::new(&relations)?;
        Ok(PresentedModule {
            ring,
            generators,
            relations,
            invariant_factors,
            free_rank,
            solver,
        })
    }

    pub fn free(ring: CoefficientRing, rank: usize) -> Self {
        PresentedModule::new(Matrix::zeros(ring, rank, 0)).expect("free module")
    }

    pub fn zero(ring: CoefficientRing) -> Self {
        PresentedModule::free(ring, 0)
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &Matrix {
        &self.relations
    }

    pub fn invariant_factors(&self) -> &[Scalar] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// True when the generator-coordinate vector `x` is zero in the module.
    pub fn is_zero_element(&self, x: &[Scalar]) -> bool {
        self.solver.contains(x)
    }

    pub fn same_element(&self, x: &[Scalar], y: &[Scalar]) -> bool {
        self.is_zero_element(&vec_sub(self.ring, x, y))
    }

    pub fn relation_solver(&self) -> &SpanSolver {
        &self.solver
    }

    /// Same classification (free rank and invariant factors).
    pub fn isomorphic_to(&self, other: &PresentedModule) -> bool {
        self.free_rank == other.free_rank && self.invariant_factors == other.invariant_factors
    }
}

/// Homomorphism of presented modules given by a matrix on generators.
///
/// Construction checks that every source relation lands in the span of the
/// target relations; the coefficients witnessing this are kept as
/// `certificate` (`matrix * source_relations = target_relations * certificate`).
#[derive(Clone, Debug)]
pub struct ModuleMorphism {
    source: PresentedModule,
    target: PresentedModule,
    matrix: Matrix,
    certificate: Matrix,
}

impl ModuleMorphism {
    pub fn new(source: PresentedModule, target: PresentedModule, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != target.generators || matrix.cols() != source.generators {
            return Err(Error::Dimension(format!(
                "morphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.generators,
                source.generators
            )));
        }
        let images = matrix.mul(&source.relations);
        let mut cert_cols = Vec::with_capacity(images.cols());
        for j in 0..images.cols() {
            let c = target.solver.solve(&images.column(j)).ok_or_else(|| {
                Error::NotAChainMap(format!(
                    "relation {j} of the source is not sent to a relation"
                ))
            })?;
            cert_cols.push(c);
        }
        let certificate = Matrix::from_columns(matrix.ring(), target.relations.cols(), &cert_cols);
        Ok(ModuleMorphism {
            source,
            target,
            matrix,
            certificate,
        })
    }

    pub fn identity(module: &PresentedModule) -> Self {
        let m = Matrix::identity(module.ring, module.generators);
        ModuleMorphism::new(module.clone(), module.clone(), m).expect("identity is well defined")
    }

    pub fn zero(source: &PresentedModule, target: &PresentedModule) -> Self {
        let m = Matrix::zeros(source.ring, target.generators, source.generators);
        ModuleMorphism::new(source.clone(), target.clone(), m).expect("zero is well defined")
    }

    pub fn source(&self) -> &PresentedModule {
        &self.source
    }

    pub fn target(&self) -> &PresentedModule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn certificate(&self) -> &Matrix {
        &self.certificate
    }

    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(x)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ModuleMorphism) -> Result<ModuleMorphism> {
        ModuleMorphism::new(
            self.source.clone(),
            other.target.clone(),
            other.matrix.mul(&self.matrix),
        )
    }

    /// Equality as homomorphisms: the two matrices differ by a map into the
    /// target relations.
    pub fn equals(&self, other: &ModuleMorphism) -> bool {
        if self.matrix.rows() != other.matrix.rows() || self.matrix.cols() != other.matrix.cols() {
            return false;
        }
        let diff = self.matrix.sub(&other.matrix);
        (0..diff.cols()).all(|j| self.target.is_zero_element(&diff.column(j)))
    }

    pub fn is_zero(&self) -> bool {
        (0..self.matrix.cols()).all(|j| self.target.is_zero_element(&self.matrix.column(j)))
    }

    /// Basis of `{x : f x ∈ relations(target)}` in source generator coordinates.
    pub fn kernel_lattice(&self) -> Result<Matrix> {
        preimage_basis(&self.matrix, &self.target.relations)
    }

    /// Basis of `im f + relations(target)` in target generator coordinates.
    pub fn image_lattice(&self) -> Result<Matrix> {
        image_basis(&self.matrix.hstack(&self.target.relations))
    }

    pub fn kernel(&self) -> Result<Subquotient> {
        Subquotient::new(self.kernel_lattice()?, self.source.relations.clone())
    }

    pub fn cokernel(&self) -> Result<PresentedModule> {
        PresentedModule::new(self.matrix.hstack(&self.target.relations))
    }

    pub fn is_injective(&self) -> Result<bool> {
        Ok(self.kernel()?.module().is_zero())
    }

    pub fn is_surjective(&self) -> Result<bool> {
        Ok(self.cokernel()?.is_zero())
    }

    pub fn is_isomorphism(&self) -> Result<bool> {
        Ok(self.is_injective()? && self.is_surjective()?)
    }
}

/// Exactness of `a --f--> b --g--> c` at `b`: `im f = ker g`, compared as
/// sublattices of the generator lattice of `b` (both contain its relations).
pub fn exact_at(f: &ModuleMorphism, g: &ModuleMorphism) -> Result<bool> {
    if f.target.generators != g.source.generators {
        return Err(Error::Dimension("morphisms are not composable".into()));
    }
    let image = f.image_lattice()?;
    let kernel = g.kernel_lattice()?;
    Ok(SpanSolver::new(&kernel)?.contains_all(&image)
        && SpanSolver::new(&image)?.contains_all(&kernel))
}

/// `span(cycles) / span(boundaries)` inside an ambient lattice `R^n`,
/// together with a reduced presentation and a coordinate map for classes.
///
/// The reduced presentation keeps one generator per non-unit invariant
/// factor (torsion) and one per free summand; `representatives` holds an
/// ambient cycle for each of them.
#[derive(Clone, Debug)]
pub struct Subquotient {
    ring: CoefficientRing,
    cycles: Matrix,
    boundaries: Matrix,
    cycle_solver: SpanSolver,
    change_of_basis: Matrix,
    kept: Vec<usize>,
    orders: Vec<Option<Scalar>>,
    representatives: Matrix,
    raw: PresentedModule,
    module: PresentedModule,
}

impl Subquotient {
    /// `cycles` must have independent columns; `boundaries` may be any
    /// generating set of a sublattice of their span.
    pub fn new(cycles: Matrix, boundaries: Matrix) -> Result<Self> {
        let ring = cycles.ring();
        let cycles = image_basis(&cycles)?;
        let cycle_solver = SpanSolver::new(&cycles)?;
        let k = cycles.cols();
        let mut coords = Vec::with_capacity(boundaries.cols());
        for j in 0..boundaries.cols() {
            let c = cycle_solver.solve(&boundaries.column(j)).ok_or_else(|| {
                Error::NotAChainComplex(format!("boundary generator {j} is not a cycle"))
            })?;
            coords.push(c);
        }
        let relations = Matrix::from_columns(ring, k, &coords);
        let snf = smith_normal_form(&relations)?;
        let mut kept = Vec::new();
        let mut orders = Vec::new();
        for i in 0..k {
            if i < snf.rank {
                let d = snf.d.get(i, i);
                if ring.is_unit(d) {
                    continue;
                }
                kept.push(i);
                orders.push(Some(d.clone()));
            } else {
                kept.push(i);
                orders.push(None);
            }
        }
        // new cycle-coordinate basis = columns of u_inv; ambient = cycles * u_inv
        let new_basis = cycles.mul(&snf.u_inv);
        let representatives = new_basis.select_columns(&kept);
        let torsion: Vec<Scalar> = orders
            .iter()
            .map(|o| o.clone().unwrap_or_else(Scalar::zero))
            .collect();
        let reduced_relations = {
            let cols: Vec<Vec<Scalar>> = torsion
                .iter()
                .enumerate()
                .filter(|(_, d)| !d.is_zero())
                .map(|(i, d)| {
                    let mut v = vec![ring.zero(); kept.len()];
                    v[i] = d.clone();
                    v
                })
                .collect();
            Matrix::from_columns(ring, kept.len(), &cols)
        };
        Ok(Subquotient {
            ring,
            change_of_basis: snf.u.clone(),
            raw: PresentedModule::new(relations)?,
            module: PresentedModule::new(reduced_relations)?,
            cycles,
            boundaries,
            cycle_solver,
            kept,
            orders,
            representatives,
        })
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    /// Reduced presentation (one generator per nontrivial summand).
    pub fn module(&self) -> &PresentedModule {
        &self.module
    }

    /// Presentation on the cycle basis with boundary coordinates as relations.
    pub fn raw_presentation(&self) -> &PresentedModule {
        &self.raw
    }

    pub fn cycles(&self) -> &Matrix {
        &self.cycles
    }

    pub fn boundaries(&self) -> &Matrix {
        &self.boundaries
    }

    pub fn representatives(&self) -> &Matrix {
        &self.representatives
    }

    pub fn ambient_dim(&self) -> usize {
        self.cycles.rows()
    }

    pub fn is_cycle(&self, x: &[Scalar]) -> bool {
        self.cycle_solver.contains(x)
    }

    /// Coordinates of the class of the ambient cycle `x` in the reduced
    /// presentation, torsion coordinates reduced to canonical residues.
    pub fn class_of(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        let c = self
            .cycle_solver
            .solve(x)
            .ok_or_else(|| Error::NotAChainMap("vector is not a cycle".into()))?;
        let c = self.change_of_basis.mul_vec(&c);
        Ok(self
            .kept
            .iter()
            .zip(&self.orders)
            .map(|(&i, order)| match order {
                Some(d) => self.ring.residue(&c[i], d),
                None => c[i].clone(),
            })
            .collect())
    }

    pub fn is_boundary(&self, x: &[Scalar]) -> Result<bool> {
        Ok(self.class_of(x)?.iter().all(Zero::is_zero))
    }

    /// Ambient vector representing reduced coordinates `coords`.
    pub fn lift(&self, coords: &[Scalar]) -> Vec<Scalar> {
        self.representatives.mul_vec(coords)
    }
}

/// Presentation of `(span cycles) / (span boundaries)`.
pub fn subquotient(cycles: &Matrix, boundaries: &Matrix) -> Result<PresentedModule> {
    Ok(Subquotient::new(cycles.clone(), boundaries.clone())?
        .module()
        .clone())
}

/// Morphism induced by the ambient map `f` between two subquotients.
///
/// Checks that `f` sends source cycles to target cycles and source
/// boundaries to target boundaries.
pub fn induced_map_on_subquotients(
    f: &Matrix,
    src: &Subquotient,
    tgt: &Subquotient,
) -> Result<ModuleMorphism> {
    if f.cols() != src.ambient_dim() || f.rows() != tgt.ambient_dim() {
        return Err(Error::Dimension("ambient map has the wrong shape".into()));
    }
    for j in 0..src.cycles.cols() {
        if !tgt.is_cycle(&f.mul_vec(&src.cycles.column(j))) {
            return Err(Error::NotAChainMap(format!(
                "cycle {j} is not sent to a cycle"
            )));
        }
    }
    for j in 0..src.boundaries.cols() {
        if !tgt.is_boundary(&f.mul_vec(&src.boundaries.column(j)))? {
            return Err(Error::NotAChainMap(format!(
                "boundary {j} is not sent to a boundary"
            )));
        }
    }
    let cols = (0..src.representatives.cols())
        .map(|j| tgt.class_of(&f.mul_vec(&src.representatives.column(j))))
        .collect::<Result<Vec<_>>>()?;
    let m = Matrix::from_columns(src.ring, tgt.module.generator_count(), &cols);
    ModuleMorphism::new(src.module.clone(), tgt.module.clone(), m)
}

/// Presentation of `R^n / span(sub)` with the quotient map from the free
/// module `R^n`.
pub fn quotient_map(sub: &Matrix) -> Result<ModuleMorphism> {
    let ring = sub.ring();
    let n = sub.rows();
    let quotient = PresentedModule::new(sub.clone())?;
    ModuleMorphism::new(
        PresentedModule::free(ring, n),
        quotient,
        Matrix::identity(ring, n),
    )
}

/// Coordinates of the standard basis vector `e_i` of `R^n`.
pub fn basis_vector(ring: CoefficientRing, n: usize, i: usize) -> Vec<Scalar> {
    unit_vector(ring, n, i)
}
