use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::exactlin::{CoefficientRing, Matrix, Scalar};
use crate::scat::{Category1, EnrichedCategory, EnrichedFunctor};

/// Element of an algebra as a coordinate vector on its basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    coords: Vec<Scalar>,
}

impl AlgebraElement {
    pub fn from_coords(coords: Vec<Scalar>) -> Self {
        AlgebraElement { coords }
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn coefficient(&self, i: usize) -> &Scalar {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Basis indices with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coords.len())
            .filter(|&i| !self.coords[i].is_zero())
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub name: String,
    /// `(source, target)` object indices for morphism bases.
    pub tags: Option<(usize, usize)>,
}

/// Associative algebra, possibly without unit, on a finite basis.
///
/// Structure constants are stored sparsely: `product(i, j)` is the list of
/// `(k, c)` with `b_i · b_j = Σ c b_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    ring: CoefficientRing,
    objects: Vec<String>,
    basis: Vec<BasisElement>,
    products: Vec<Vec<(usize, Scalar)>>,
    unit: Option<Vec<Scalar>>,
    /// Identity basis element per object, for path algebras.
    identities: Option<Vec<usize>>,
    /// `A` when this algebra is `Â`; the adjoined basis element is last.
    base: Option<Box<Algebra>>,
}

impl Algebra {
    /// General algebra from a product rule on basis indices.
    pub fn from_products(
        ring: CoefficientRing,
        names: Vec<String>,
        mut product: impl FnMut(usize, usize) -> Vec<(usize, Scalar)>,
    ) -> Self {
        let k = names.len();
        let mut products = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                let mut acc = vec![ring.zero(); k];
                for (l, c) in product(i, j) {
                    acc[l] = ring.add(&acc[l], &ring.reduce(c));
                }
                products.push(sparse(&acc));
            }
        }
        Algebra {
            ring,
            objects: Vec::new(),
            basis: names
                .into_iter()
                .map(|name| BasisElement { name, tags: None })
                .collect(),
            products,
            unit: None,
            identities: None,
            base: None,
        }
    }

    /// Designates `unit`, checking that it is a two-sided unit on the basis.
    pub fn with_unit(mut self, unit: AlgebraElement) -> Result<Self> {
        for i in 0..self.dim() {
            let b = self.basis_element(i);
            if self.mul(&unit, &b) != b || self.mul(&b, &unit) != b {
                return Err(Error::Invalid(format!(
                    "not a unit on basis element `{}`",
                    self.basis[i].name
                )));
            }
        }
        self.unit = Some(unit.coords);
        Ok(self)
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    pub fn is_path_algebra(&self) -> bool {
        self.identities.is_some()
    }

    /// Identity basis element of each object, for path algebras.
    pub fn identities(&self) -> Option<&[usize]> {
        self.identities.as_deref()
    }

    pub fn is_unital(&self) -> bool {
        self.unit.is_some()
    }

    pub fn unit(&self) -> Option<AlgebraElement> {
        self.unit.clone().map(AlgebraElement::from_coords)
    }

    /// The algebra `A` this algebra is the unitalization of.
    pub fn unitalization_of(&self) -> Option<&Algebra> {
        self.base.as_deref()
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.products[i * self.dim() + j]
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement {
            coords: vec![self.ring.zero(); self.dim()],
        }
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        let mut x = self.zero();
        x.coords[i] = self.ring.one();
        x
    }

    /// Element from `(basis name, coefficient)` pairs.
    pub fn element(&self, terms: &[(&str, i64)]) -> Result<AlgebraElement> {
        let mut x = self.zero();
        for (name, c) in terms {
            let i = self
                .basis_index(name)
                .ok_or_else(|| Error::Invalid(format!("unknown basis element `{name}`")))?;
            x.coords[i] = self.ring.add(&x.coords[i], &self.ring.from_int(*c));
        }
        Ok(x)
    }

    pub fn from_coords(&self, coords: Vec<Scalar>) -> Result<AlgebraElement> {
        if coords.len() != self.dim() {
            return Err(Error::Dimension(format!(
                "expected {} coordinates, got {}",
                self.dim(),
                coords.len()
            )));
        }
        Ok(AlgebraElement {
            coords: coords.into_iter().map(|c| self.ring.reduce(c)).collect(),
        })
    }

    pub fn add(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            coords: x
                .coords
                .iter()
                .zip(&y.coords)
                .map(|(a, b)| self.ring.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            coords: x
                .coords
                .iter()
                .zip(&y.coords)
                .map(|(a, b)| self.ring.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar, x: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            coords: x.coords.iter().map(|a| self.ring.mul(c, a)).collect(),
        }
    }

    pub fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let ring = self.ring;
        let mut out = vec![ring.zero(); self.dim()];
        for i in x.support() {
            for j in y.support() {
                let c = ring.mul(&x.coords[i], &y.coords[j]);
                for (k, s) in self.basis_product(i, j) {
                    out[*k] = ring.add(&out[*k], &ring.mul(&c, s));
                }
            }
        }
        AlgebraElement { coords: out }
    }

    /// Matrix of `y ↦ x·y`.
    pub fn left_multiplication(&self, x: &AlgebraElement) -> Matrix {
        let cols: Vec<_> = (0..self.dim())
            .map(|j| self.mul(x, &self.basis_element(j)).coords)
            .collect();
        Matrix::from_columns(self.ring, self.dim(), &cols)
    }

    /// Matrix of `y ↦ y·x`.
    pub fn right_multiplication(&self, x: &AlgebraElement) -> Matrix {
        let cols: Vec<_> = (0..self.dim())
            .map(|j| self.mul(&self.basis_element(j), x).coords)
            .collect();
        Matrix::from_columns(self.ring, self.dim(), &cols)
    }

    /// First basis triple where `(b_i b_j) b_k ≠ b_i (b_j b_k)`, if any.
    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let k = self.dim();
        for i in 0..k {
            let bi = self.basis_element(i);
            for j in 0..k {
                let bij = self.mul(&bi, &self.basis_element(j));
                for l in 0..k {
                    let bl = self.basis_element(l);
                    let lhs = self.mul(&bij, &bl);
                    let rhs = self.mul(&bi, &self.mul(&self.basis_element(j), &bl));
                    if lhs != rhs {
                        return Some((i, j, l));
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_failure().is_none()
    }

    /// Random element with integer coefficients in `-bound..=bound`.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> AlgebraElement {
        AlgebraElement {
            coords: (0..self.dim())
                .map(|_| self.ring.from_int(rng.gen_range(-bound..=bound)))
                .collect(),
        }
    }

    /// Renders an element as `2*u + -1*id0`, or `0`.
    pub fn format_element(&self, x: &AlgebraElement) -> String {
        let terms: Vec<String> = x
            .support()
            .into_iter()
            .map(|i| {
                format!(
                    "{}*{}",
                    crate::exactlin::scalar_to_string(&x.coords[i]),
                    self.basis[i].name
                )
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// `(a, r) ∈ Â` for `a ∈ A`.
    pub fn pair(&self, a: &AlgebraElement, r: &Scalar) -> Result<AlgebraElement> {
        let k = self
            .base
            .as_ref()
            .ok_or_else(|| Error::Invalid("not a unitalization".into()))?
            .dim();
        if a.dim() != k {
            return Err(Error::Dimension("element of the wrong algebra".into()));
        }
        let mut coords = a.coords.clone();
        coords.push(self.ring.reduce(r.clone()));
        Ok(AlgebraElement { coords })
    }

    /// Inverse of [`Self::pair`].
    pub fn split(&self, x: &AlgebraElement) -> Result<(AlgebraElement, Scalar)> {
        let k = self
            .base
            .as_ref()
            .ok_or_else(|| Error::Invalid("not a unitalization".into()))?
            .dim();
        Ok((
            AlgebraElement {
                coords: x.coords[..k].to_vec(),
            },
            x.coords[k].clone(),
        ))
    }
}

fn sparse(v: &[Scalar]) -> Vec<(usize, Scalar)> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

/// `R[S_0]`: free on the morphisms, `g × f = g ∘_0 f` ("f then g") when
/// `target(f) = source(g)` and zero otherwise.
pub fn path_algebra(cat: &Category1, ring: CoefficientRing) -> Algebra {
    let k = cat.morphism_count();
    let mut products = Vec::with_capacity(k * k);
    for g in 0..k {
        for f in 0..k {
            products.push(
                cat.compose(f, g)
                    .map(|h| vec![(h, ring.one())])
                    .unwrap_or_default(),
            );
        }
    }
    Algebra {
        ring,
        objects: cat.objects().to_vec(),
        basis: cat
            .morphisms()
            .iter()
            .map(|m| BasisElement {
                name: m.name.clone(),
                tags: Some((m.source, m.target)),
            })
            .collect(),
        products,
        unit: None,
        identities: Some(cat.identities().to_vec()),
        base: None,
    }
}

/// Dorroh extension `Â = A ⊕ R` with `(a,r)(b,s) = (ab + r·b + a·s, rs)`.
/// The adjoined basis element is named `1` and comes last.
pub fn unitalize(a: &Algebra) -> Algebra {
    let k = a.dim();
    let ring = a.ring;
    let mut products = Vec::with_capacity((k + 1) * (k + 1));
    for i in 0..=k {
        for j in 0..=k {
            products.push(match (i < k, j < k) {
                (true, true) => a.basis_product(i, j).to_vec(),
                (true, false) => vec![(i, ring.one())],
                (false, true) => vec![(j, ring.one())],
                (false, false) => vec![(k, ring.one())],
            });
        }
    }
    let mut basis = a.basis.clone();
    basis.push(BasisElement {
        name: "1".into(),
        tags: None,
    });
    let mut unit = vec![ring.zero(); k + 1];
    unit[k] = ring.one();
    Algebra {
        ring,
        objects: a.objects.clone(),
        basis,
        products,
        unit: Some(unit),
        identities: None,
        base: Some(Box::new(a.clone())),
    }
}

/// Same module with the product reversed; morphism tags are swapped.
pub fn opposite(a: &Algebra) -> Algebra {
    let k = a.dim();
    let products = (0..k * k)
        .map(|ij| a.products[(ij % k) * k + ij / k].clone())
        .collect();
    Algebra {
        ring: a.ring,
        objects: a.objects.clone(),
        basis: a
            .basis
            .iter()
            .map(|b| BasisElement {
                name: b.name.clone(),
                tags: b.tags.map(|(s, t)| (t, s)),
            })
            .collect(),
        products,
        unit: a.unit.clone(),
        identities: a.identities.clone(),
        base: a.base.as_ref().map(|b| Box::new(opposite(b))),
    }
}

/// `A ⊗ B` for unital `A`, `B` over the same ring, with
/// `(a ⊗ b)(a' ⊗ b') = aa' ⊗ bb'`. Basis `a_i ⊗ b_j` has index `i·dim B + j`.
pub fn tensor_unital(a: &Algebra, b: &Algebra) -> Result<Algebra> {
    if a.ring != b.ring {
        return Err(Error::RingMismatch(a.ring.code(), b.ring.code()));
    }
    let (ua, ub) = match (&a.unit, &b.unit) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(Error::Invalid("tensor_unital needs unital factors".into())),
    };
    let ring = a.ring;
    let (ka, kb) = (a.dim(), b.dim());
    let names = (0..ka * kb)
        .map(|p| format!("{}⊗{}", a.basis[p / kb].name, b.basis[p % kb].name))
        .collect();
    let t = Algebra::from_products(ring, names, |p, q| {
        let (i, j, i2, j2) = (p / kb, p % kb, q / kb, q % kb);
        let mut out = Vec::new();
        for (x, c) in a.basis_product(i, i2) {
            for (y, d) in b.basis_product(j, j2) {
                out.push((x * kb + y, ring.mul(c, d)));
            }
        }
        out
    });
    let mut unit = vec![ring.zero(); ka * kb];
    for (i, c) in ua.iter().enumerate() {
        for (j, d) in ub.iter().enumerate() {
            unit[i * kb + j] = ring.mul(c, d);
        }
    }
    t.with_unit(AlgebraElement::from_coords(unit))
}

/// Linear map between algebras that is multiplicative on all basis pairs.
#[derive(Clone, Debug)]
pub struct AlgebraMorphism {
    source: Algebra,
    target: Algebra,
    matrix: Matrix,
}

impl AlgebraMorphism {
    pub fn new(source: Algebra, target: Algebra, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::Dimension(
                "algebra morphism matrix has the wrong shape".into(),
            ));
        }
        if source.ring != target.ring {
            return Err(Error::RingMismatch(source.ring.code(), target.ring.code()));
        }
        let m = AlgebraMorphism {
            source,
            target,
            matrix,
        };
        if let Some((i, j)) = m.multiplicativity_failure() {
            return Err(Error::Invalid(format!(
                "not multiplicative on `{}` × `{}`",
                m.source.basis[i].name, m.source.basis[j].name
            )));
        }
        Ok(m)
    }

    pub fn identity(a: &Algebra) -> Self {
        AlgebraMorphism {
            source: a.clone(),
            target: a.clone(),
            matrix: Matrix::identity(a.ring, a.dim()),
        }
    }

    pub fn source(&self) -> &Algebra {
        &self.source
    }

    pub fn target(&self) -> &Algebra {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, x: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::from_coords(self.matrix.mul_vec(&x.coords))
    }

    fn multiplicativity_failure(&self) -> Option<(usize, usize)> {
        let k = self.source.dim();
        for i in 0..k {
            for j in 0..k {
                let (bi, bj) = (self.source.basis_element(i), self.source.basis_element(j));
                let lhs = self.apply(&self.source.mul(&bi, &bj));
                let rhs = self.target.mul(&self.apply(&bi), &self.apply(&bj));
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// True when both algebras carry units and the unit is preserved.
    pub fn preserves_unit(&self) -> bool {
        match (self.source.unit(), self.target.unit()) {
            (Some(u), Some(v)) => self.apply(&u) == v,
            _ => false,
        }
    }

    /// "self then other".
    pub fn then(&self, other: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        if self.target.dim() != other.source.dim() {
            return Err(Error::Dimension(
                "algebra morphisms are not composable".into(),
            ));
        }
        Ok(AlgebraMorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            matrix: other.matrix.mul(&self.matrix),
        })
    }

    pub fn same_matrix(&self, other: &AlgebraMorphism) -> bool {
        self.matrix == other.matrix
    }
}

/// `f_R`: the linear extension of the 1-morphism map of an enriched functor
/// that is injective on objects.
pub fn induced_algebra_morphism(
    f: &EnrichedFunctor,
    src: &EnrichedCategory,
    tgt: &EnrichedCategory,
    ring: CoefficientRing,
) -> Result<AlgebraMorphism> {
    if !f.is_injective_on_objects() {
        return Err(Error::NotInjectiveOnObjects);
    }
    let (sc, tc) = (src.underlying_category(), tgt.underlying_category());
    let images = f.morphism_map(&sc, &tc);
    let mut m = Matrix::zeros(ring, tc.morphism_count(), sc.morphism_count());
    for (j, &i) in images.iter().enumerate() {
        m.set(i, j, ring.one());
    }
    AlgebraMorphism::new(path_algebra(&sc, ring), path_algebra(&tc, ring), m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scat::{build_from_poset, full_subcategory, Poset};

    fn z() -> CoefficientRing {
        CoefficientRing::Integers
    }

    fn e1() -> Algebra {
        let c = build_from_poset(&Poset::chain(2), 1).unwrap();
        path_algebra(&c.underlying_category(), z())
    }

    #[test]
    fn path_products() {
        let a = e1();
        let u = a.element(&[("0->1", 1)]).unwrap();
        let id0 = a.element(&[("id0", 1)]).unwrap();
        let id1 = a.element(&[("id1", 1)]).unwrap();
        assert_eq!(a.mul(&u, &id0), u);
        assert!(a.mul(&id0, &id1).is_zero());
        assert!(a.mul(&id0, &u).is_zero());
        assert_eq!(a.mul(&id1, &u), u);
        assert!(a.is_associative());
    }

    #[test]
    fn chain_composite() {
        let c = build_from_poset(&Poset::chain(3), 1).unwrap();
        let a = path_algebra(&c.underlying_category(), z());
        let u = a.element(&[("0->1", 1)]).unwrap();
        let v = a.element(&[("1->2", 1)]).unwrap();
        assert_eq!(a.mul(&v, &u), a.element(&[("0->2", 1)]).unwrap());
        assert!(a.mul(&u, &v).is_zero());
    }

    #[test]
    fn unitalization_formula() {
        let a = e1();
        let hat = unitalize(&a);
        let u = a.element(&[("0->1", 1)]).unwrap();
        let id0 = a.element(&[("id0", 1)]).unwrap();
        let one = hat.unit().unwrap();
        let x = hat.pair(&u, &z().from_int(1)).unwrap();
        let y = hat.pair(&id0, &z().from_int(2)).unwrap();
        // (u,1)(id0,2) = (u·id0 + id0 + 2u, 2)
        let expected_a = a.add(
            &a.add(&a.mul(&u, &id0), &id0),
            &a.scale(&z().from_int(2), &u),
        );
        assert_eq!(
            hat.mul(&x, &y),
            hat.pair(&expected_a, &z().from_int(2)).unwrap()
        );
        assert_eq!(hat.mul(&one, &x), x);
        assert!(hat.is_associative());
    }

    #[test]
    fn opposite_is_involutive() {
        let a = e1();
        assert_eq!(opposite(&opposite(&a)), a);
    }

    #[test]
    fn tensor_example() {
        let hat = unitalize(&e1());
        let t = tensor_unital(&hat, &opposite(&hat)).unwrap();
        let k = hat.dim();
        let (u, id0) = (
            hat.basis_index("0->1").unwrap(),
            hat.basis_index("id0").unwrap(),
        );
        let x = t.basis_element(u * k + id0);
        let y = t.basis_element(id0 * k + u);
        assert_eq!(t.mul(&x, &y), t.basis_element(u * k + u));
        let one = t.unit().unwrap();
        assert_eq!(one, t.basis_element((k - 1) * k + (k - 1)));
        assert!(matches!(tensor_unital(&e1(), &hat), Err(Error::Invalid(_))));
    }

    #[test]
    fn induced_morphisms() {
        let c = build_from_poset(&Poset::grid(2, 2), 1).unwrap();
        let id = EnrichedFunctor::identity(&c);
        let f = induced_algebra_morphism(&id, &c, &c, z()).unwrap();
        assert_eq!(f.matrix(), &Matrix::identity(z(), 9));
        let (t, inc) = full_subcategory(&c, &["00", "01"]).unwrap();
        let g = induced_algebra_morphism(&inc, &t, &c, z()).unwrap();
        assert_eq!(g.matrix().cols(), 3);
        let collapse = EnrichedFunctor::new(vec![0, 0], vec![vec![vec![0]; 2]; 4]).unwrap();
        let e1c = build_from_poset(&Poset::chain(2), 1).unwrap();
        assert!(matches!(
            induced_algebra_morphism(&collapse, &e1c, &e1c, z()),
            Err(Error::NotInjectiveOnObjects)
        ));
    }
}
