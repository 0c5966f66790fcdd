//! Smith normal form over Z, Q and F_p, plus the lattice operations built on
//! it: kernels, column-span bases and span membership.
//!
//! Elimination is exact and fraction-free over the integers; entries are
//! arbitrary-precision so intermediate growth can never overflow. Matrix
//! dimensions are capped (see [`set_max_matrix_dim`]) to keep runaway inputs
//! from exhausting memory.

use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigInt;
use num_traits::Zero;

use super::matrix::Matrix;
use super::ring::{CoefficientRing, Scalar};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_MATRIX_DIM: usize = 5000;

static MAX_MATRIX_DIM: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_MATRIX_DIM);

/// Sets the largest row or column count accepted by the eliminator.
pub fn set_max_matrix_dim(n: usize) {
    MAX_MATRIX_DIM.store(n, Ordering::Relaxed);
}

pub fn max_matrix_dim() -> usize {
    MAX_MATRIX_DIM.load(Ordering::Relaxed)
}

/// How the initial pivot of each elimination round is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PivotStrategy {
    /// Nonzero entry of minimal Euclidean size in the remaining block.
    #[default]
    MinAbs,
    /// First nonzero entry in column-major order.
    FirstNonzero,
}

/// `u * m * v = d` with `u`, `v` invertible and `d` diagonal.
///
/// Over the integers the diagonal is non-negative with `d[i] | d[i+1]`; over
/// fields it is a 0/1 diagonal.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: Matrix,
    pub u_inv: Matrix,
    pub d: Matrix,
    pub v: Matrix,
    pub v_inv: Matrix,
    pub rank: usize,
}

impl SmithForm {
    /// The nonzero diagonal entries.
    pub fn diagonal(&self) -> Vec<Scalar> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Non-unit nonzero diagonal entries over Z; always empty over fields.
    pub fn invariant_factors(&self) -> Vec<Scalar> {
        let ring = self.d.ring();
        if ring.is_field() {
            return Vec::new();
        }
        self.diagonal()
            .into_iter()
            .filter(|d| !ring.is_unit(d))
            .collect()
    }
}

fn check_size(m: &Matrix) -> Result<()> {
    let cap = max_matrix_dim();
    let worst = m.rows().max(m.cols());
    if worst > cap {
        return Err(Error::MatrixTooLarge { dim: worst, cap });
    }
    Ok(())
}

pub fn smith_normal_form(m: &Matrix) -> Result<SmithForm> {
    smith_normal_form_with(m, PivotStrategy::default())
}

pub fn smith_normal_form_with(m: &Matrix, strategy: PivotStrategy) -> Result<SmithForm> {
    check_size(m)?;
    let ring = m.ring();
    let (rows, cols) = (m.rows(), m.cols());
    let mut st = Elimination {
        ring,
        a: m.clone(),
        u: Matrix::identity(ring, rows),
        u_inv: Matrix::identity(ring, rows),
        v: Matrix::identity(ring, cols),
        v_inv: Matrix::identity(ring, cols),
    };
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = st.initial_pivot(t, strategy) else {
            break;
        };
        st.swap_rows(t, pi);
        st.swap_cols(t, pj);
        st.settle_pivot(t);
        let unit = ring.normalizing_unit(st.a.get(t, t));
        st.scale_row(t, &unit);
        t += 1;
    }
    let rank = t;
    Ok(SmithForm {
        u: st.u,
        u_inv: st.u_inv,
        d: st.a,
        v: st.v,
        v_inv: st.v_inv,
        rank,
    })
}

struct Elimination {
    ring: CoefficientRing,
    a: Matrix,
    u: Matrix,
    u_inv: Matrix,
    v: Matrix,
    v_inv: Matrix,
}

impl Elimination {
    fn initial_pivot(&self, t: usize, strategy: PivotStrategy) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        for j in t..self.a.cols() {
            for i in t..self.a.rows() {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                if strategy == PivotStrategy::FirstNonzero {
                    return Some((i, j));
                }
                let s = self.ring.size(x);
                if best.as_ref().is_none_or(|(_, b)| &s < b) {
                    best = Some(((i, j), s));
                }
            }
        }
        best.map(|(p, _)| p)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.a.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.a.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// row[target] += c * row[source]
    fn add_row(&mut self, target: usize, source: usize, c: &Scalar) {
        self.a.add_row_multiple(target, source, c);
        self.u.add_row_multiple(target, source, c);
        let neg = self.ring.neg(c);
        self.u_inv.add_col_multiple(source, target, &neg);
    }

    /// col[target] += c * col[source]
    fn add_col(&mut self, target: usize, source: usize, c: &Scalar) {
        self.a.add_col_multiple(target, source, c);
        self.v.add_col_multiple(target, source, c);
        let neg = self.ring.neg(c);
        self.v_inv.add_row_multiple(source, target, &neg);
    }

    fn scale_row(&mut self, i: usize, unit: &Scalar) {
        if unit == &self.ring.one() {
            return;
        }
        let inv = self.ring.inv(unit).expect("scaling by a non-unit");
        self.a.scale_row(i, unit);
        self.u.scale_row(i, unit);
        self.u_inv.scale_col(i, &inv);
    }

    /// Clears row and column `t` and enforces divisibility of the remaining
    /// block by the pivot.
    fn settle_pivot(&mut self, t: usize) {
        let ring = self.ring;
        loop {
            let mut clean = true;
            for i in t + 1..self.a.rows() {
                if self.a.get(i, t).is_zero() {
                    continue;
                }
                let q = ring.quotient(self.a.get(i, t), self.a.get(t, t));
                self.add_row(i, t, &ring.neg(&q));
                if !self.a.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..self.a.cols() {
                if self.a.get(t, j).is_zero() {
                    continue;
                }
                let q = ring.quotient(self.a.get(t, j), self.a.get(t, t));
                self.add_col(j, t, &ring.neg(&q));
                if !self.a.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                self.move_smallest_remainder(t);
                continue;
            }
            if ring.is_field() {
                return;
            }
            let pivot = self.a.get(t, t).clone();
            let offender = (t + 1..self.a.rows())
                .find(|&i| (t + 1..self.a.cols()).any(|j| !ring.divides(&pivot, self.a.get(i, j))));
            match offender {
                Some(i) => self.add_row(t, i, &ring.one()),
                None => return,
            }
        }
    }

    fn move_smallest_remainder(&mut self, t: usize) {
        let ring = self.ring;
        let mut best = (t, t, ring.size(self.a.get(t, t)));
        for i in t + 1..self.a.rows() {
            let x = self.a.get(i, t);
            if !x.is_zero() && ring.size(x) < best.2 {
                best = (i, t, ring.size(x));
            }
        }
        for j in t + 1..self.a.cols() {
            let x = self.a.get(t, j);
            if !x.is_zero() && ring.size(x) < best.2 {
                best = (t, j, ring.size(x));
            }
        }
        self.swap_rows(t, best.0);
        self.swap_cols(t, best.1);
    }
}

/// Columns form a basis of `{x : m x = 0}`; over Z the basis spans a
/// saturated sublattice.
pub fn kernel_basis(m: &Matrix) -> Result<Matrix> {
    let snf = smith_normal_form(m)?;
    let cols: Vec<usize> = (snf.rank..m.cols()).collect();
    Ok(snf.v.select_columns(&cols))
}

/// A basis (linearly independent columns) of the column span of `m`.
pub fn image_basis(m: &Matrix) -> Result<Matrix> {
    let snf = smith_normal_form(m)?;
    let ring = m.ring();
    let mut out = Matrix::zeros(ring, m.rows(), snf.rank);
    for j in 0..snf.rank {
        let d = snf.d.get(j, j);
        for i in 0..m.rows() {
            out.set(i, j, ring.mul(snf.u_inv.get(i, j), d));
        }
    }
    Ok(out)
}

pub fn rank(m: &Matrix) -> Result<usize> {
    Ok(smith_normal_form(m)?.rank)
}

/// Decides membership in, and solves against, the column span of a fixed
/// generator matrix.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    generators: Matrix,
    snf: SmithForm,
}

impl SpanSolver {
    pub fn new(generators: &Matrix) -> Result<Self> {
        Ok(SpanSolver {
            generators: generators.clone(),
            snf: smith_normal_form(generators)?,
        })
    }

    pub fn generators(&self) -> &Matrix {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.snf.rank
    }

    /// Coefficients `c` with `generators * c = x`, if any exist.
    pub fn solve(&self, x: &[Scalar]) -> Option<Vec<Scalar>> {
        let ring = self.generators.ring();
        let y = self.snf.u.mul_vec(x);
        let mut z = vec![ring.zero(); self.generators.cols()];
        for (i, yi) in y.iter().enumerate() {
            if i < self.snf.rank {
                let d = self.snf.d.get(i, i);
                if !ring.divides(d, yi) {
                    return None;
                }
                z[i] = ring.exact_div(yi, d);
            } else if !yi.is_zero() {
                return None;
            }
        }
        Some(self.snf.v.mul_vec(&z))
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        self.solve(x).is_some()
    }

    pub fn contains_all(&self, m: &Matrix) -> bool {
        (0..m.cols()).all(|j| self.contains(&m.column(j)))
    }
}

/// True when the column spans of `a` and `b` coincide.
pub fn same_span(a: &Matrix, b: &Matrix) -> Result<bool> {
    Ok(SpanSolver::new(a)?.contains_all(b) && SpanSolver::new(b)?.contains_all(a))
}

/// Lattice `{x : f x ∈ span(target_relations)}` as a basis matrix.
pub fn preimage_basis(f: &Matrix, target_relations: &Matrix) -> Result<Matrix> {
    let ring = f.ring();
    let stacked = f.hstack(&target_relations.scale(&ring.from_int(-1)));
    let k = kernel_basis(&stacked)?;
    let rows: Vec<usize> = (0..f.cols()).collect();
    image_basis(&k.select_rows(&rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> CoefficientRing {
        CoefficientRing::Integers
    }

    fn check(m: &Matrix, snf: &SmithForm) {
        assert_eq!(&snf.u.mul(m).mul(&snf.v), &snf.d);
        let n = m.rows();
        assert_eq!(snf.u.mul(&snf.u_inv), Matrix::identity(m.ring(), n));
        assert_eq!(snf.v.mul(&snf.v_inv), Matrix::identity(m.ring(), m.cols()));
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if i != j {
                    assert!(snf.d.get(i, j).is_zero());
                }
            }
        }
    }

    #[test]
    fn two_by_two_integer() {
        // Minors oracle: d1 = gcd(2,4,6,8) = 2, d1*d2 = |2*8 - 4*6| = 8.
        let m = Matrix::from_rows(z(), &[vec![2, 4], vec![6, 8]]);
        for strategy in [PivotStrategy::MinAbs, PivotStrategy::FirstNonzero] {
            let snf = smith_normal_form_with(&m, strategy).unwrap();
            check(&m, &snf);
            assert_eq!(snf.diagonal(), vec![z().from_int(2), z().from_int(4)]);
        }
    }

    #[test]
    fn identity_and_zero() {
        let id = Matrix::identity(z(), 3);
        let snf = smith_normal_form(&id).unwrap();
        assert_eq!(snf.d, id);
        assert_eq!(snf.rank, 3);
        let zero = Matrix::zeros(z(), 2, 3);
        let snf = smith_normal_form(&zero).unwrap();
        assert!(snf.d.is_zero());
        assert_eq!(snf.rank, 0);
    }

    #[test]
    fn kernel_of_row_sum() {
        let m = Matrix::from_rows(z(), &[vec![1, 1]]);
        let k = kernel_basis(&m).unwrap();
        assert_eq!(k.cols(), 1);
        let col = k.column(0);
        assert_eq!(col[0], z().neg(&col[1]));
        assert!(z().is_unit(&col[0]));
        assert_eq!(kernel_basis(&Matrix::identity(z(), 2)).unwrap().cols(), 0);
        assert_eq!(kernel_basis(&Matrix::zeros(z(), 1, 2)).unwrap().cols(), 2);
    }

    #[test]
    fn field_rank_form() {
        let q = CoefficientRing::Rationals;
        let m = Matrix::from_rows(q, &[vec![2, 4], vec![6, 8]]);
        let snf = smith_normal_form(&m).unwrap();
        check(&m, &snf);
        assert_eq!(snf.diagonal(), vec![q.one(), q.one()]);
        assert!(snf.invariant_factors().is_empty());
        let f2 = CoefficientRing::PrimeField(2);
        let m = Matrix::from_rows(f2, &[vec![2, 4], vec![6, 8]]);
        assert_eq!(smith_normal_form(&m).unwrap().rank, 0);
    }

    #[test]
    fn span_membership() {
        let g = Matrix::from_rows(z(), &[vec![2, 0], vec![0, 3]]);
        let s = SpanSolver::new(&g).unwrap();
        assert!(s.contains(&[z().from_int(4), z().from_int(-3)]));
        assert!(!s.contains(&[z().from_int(1), z().from_int(0)]));
        let sol = s.solve(&[z().from_int(4), z().from_int(9)]).unwrap();
        assert_eq!(g.mul_vec(&sol), vec![z().from_int(4), z().from_int(9)]);
    }
}
