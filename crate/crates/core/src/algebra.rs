//! Finite-dimensional associative unital algebras given by structure constants.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{Acc, Field, LinMap, Vector};
use crate::report::Report;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: Field,
    dim: usize,
    /// `mult[i * dim + j]` is `e_i e_j`.
    mult: Vec<Vector>,
    unit: Vector,
}

impl Algebra {
    /// Builds from `c[i][j][k]` with `e_i e_j = Σ_k c[i][j][k] e_k`. Only shapes are
    /// validated here; the algebra laws are checked by [`check_algebra`].
    pub fn from_structure(field: Field, dim: usize, mult: Vec<Vector>, unit: Vector) -> Result<Arc<Algebra>> {
        if mult.len() != dim * dim {
            return Err(Error::structural("algebra.mult", format!("expected {} products, got {}", dim * dim, mult.len())));
        }
        if let Some(i) = mult.iter().position(|v| v.support_bound() > dim) {
            return Err(Error::structural(format!("algebra.mult[{}][{}]", i / dim.max(1), i % dim.max(1)), "index out of range"));
        }
        if unit.support_bound() > dim {
            return Err(Error::structural("algebra.unit", "index out of range"));
        }
        if mult.iter().chain(std::iter::once(&unit)).any(|v| v.iter().any(|(_, c)| c.field() != field)) {
            return Err(Error::structural("algebra", "scalar from a different field"));
        }
        Ok(Arc::new(Algebra { field, dim, mult, unit }))
    }

    pub fn from_table(field: Field, dim: usize, c: &[Vec<Vec<i64>>], unit: &[i64]) -> Arc<Algebra> {
        let mult = (0..dim * dim)
            .map(|ij| Vector::from_pairs(c[ij / dim][ij % dim].iter().enumerate().map(|(k, &x)| (k, field.int(x)))))
            .collect();
        let unit = Vector::from_pairs(unit.iter().enumerate().map(|(k, &x)| (k, field.int(x))));
        Algebra::from_structure(field, dim, mult, unit).expect("well-formed table")
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground(field: Field) -> Arc<Algebra> {
        Arc::new(Algebra { field, dim: 1, mult: vec![Vector::unit(field, 0)], unit: Vector::unit(field, 0) })
    }

    /// `k^n` with orthogonal idempotent basis.
    pub fn product(field: Field, n: usize) -> Arc<Algebra> {
        let mut mult = vec![Vector::zero(); n * n];
        for i in 0..n {
            mult[i * n + i] = Vector::unit(field, i);
        }
        let unit = Vector::from_pairs((0..n).map(|i| (i, field.one())));
        Arc::new(Algebra { field, dim: n, mult, unit })
    }

    /// `k[x]/(x^n)` with basis `1, x, …, x^{n-1}`.
    pub fn truncated_polynomial(field: Field, n: usize) -> Arc<Algebra> {
        let mut mult = vec![Vector::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                if i + j < n {
                    mult[i * n + j] = Vector::unit(field, i + j);
                }
            }
        }
        Arc::new(Algebra { field, dim: n, mult, unit: Vector::unit(field, 0) })
    }

    pub fn dual_numbers(field: Field) -> Arc<Algebra> {
        Algebra::truncated_polynomial(field, 2)
    }

    /// `M_n(k)` with matrix units `e_{ij}` at index `i * n + j`.
    pub fn matrix(field: Field, n: usize) -> Arc<Algebra> {
        let d = n * n;
        let mut mult = vec![Vector::zero(); d * d];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    mult[(i * n + j) * d + (j * n + l)] = Vector::unit(field, i * n + l);
                }
            }
        }
        let unit = Vector::from_pairs((0..n).map(|i| (i * n + i, field.one())));
        Arc::new(Algebra { field, dim: d, mult, unit })
    }

    /// Upper triangular 2×2 matrices with basis `e11, e12, e22`.
    pub fn upper_triangular(field: Field) -> Arc<Algebra> {
        let mut mult = vec![Vector::zero(); 9];
        mult[0] = Vector::unit(field, 0); // e11 e11
        mult[1] = Vector::unit(field, 1); // e11 e12
        mult[5] = Vector::unit(field, 1); // e12 e22
        mult[8] = Vector::unit(field, 2); // e22 e22
        let unit = Vector::from_pairs([(0, field.one()), (2, field.one())]);
        Arc::new(Algebra { field, dim: 3, mult, unit })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn basis_mul(&self, i: usize, j: usize) -> &Vector {
        &self.mult[i * self.dim + j]
    }

    pub fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        let mut acc = Acc::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                acc.add_scaled(self.basis_mul(i, j), &(a * b));
            }
        }
        acc.finish()
    }

    /// `x ↦ a x`.
    pub fn left_mult(&self, a: &Vector) -> LinMap {
        LinMap::from_fn(self.field, self.dim, self.dim, |j| self.mul(a, &Vector::unit(self.field, j)))
    }

    /// `x ↦ x a`.
    pub fn right_mult(&self, a: &Vector) -> LinMap {
        LinMap::from_fn(self.field, self.dim, self.dim, |j| self.mul(&Vector::unit(self.field, j), a))
    }

    pub fn is_ground(&self) -> bool {
        self.dim == 1 && self.unit == Vector::unit(self.field, 0) && self.mult[0] == self.unit
    }

    pub fn opposite(&self) -> Arc<Algebra> {
        let d = self.dim;
        let mult = (0..d * d).map(|ij| self.mult[(ij % d) * d + ij / d].clone()).collect();
        Arc::new(Algebra { field: self.field, dim: d, mult, unit: self.unit.clone() })
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.basis_mul(i, j) == self.basis_mul(j, i)))
    }

    pub fn structure_constants(&self) -> &[Vector] {
        &self.mult
    }
}

pub fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub fn check_algebra(a: &Algebra) -> Report {
    let mut r = Report::new("algebra");
    let f = a.field;
    let d = a.dim;
    let e = |i: usize| Vector::unit(f, i);
    let mut assoc = None;
    'outer: for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let l = a.mul(a.basis_mul(i, j), &e(k));
                let rr = a.mul(&e(i), a.basis_mul(j, k));
                if l != rr {
                    assoc = Some(vec![i, j, k]);
                    break 'outer;
                }
            }
        }
    }
    r.record("associativity", assoc);
    let lu = (0..d).find(|&i| a.mul(&a.unit, &e(i)) != e(i)).map(|i| vec![i]);
    r.record("left_unit", lu);
    let ru = (0..d).find(|&i| a.mul(&e(i), &a.unit) != e(i)).map(|i| vec![i]);
    r.record("right_unit", ru);
    r
}

/// Unital algebra map, stored by the images of the source basis.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    pub source: Arc<Algebra>,
    pub target: Arc<Algebra>,
    pub map: LinMap,
}

impl AlgebraMap {
    pub fn new(source: Arc<Algebra>, target: Arc<Algebra>, map: LinMap) -> Result<Self> {
        if map.src != source.dim() || map.dst != target.dim() {
            return Err(Error::structural("algebra_map", "shape does not match source and target"));
        }
        Ok(AlgebraMap { source, target, map })
    }

    /// The unit map `k → A`.
    pub fn unit_map(target: Arc<Algebra>) -> Self {
        let f = target.field();
        let map = LinMap::from_rows(f, target.dim(), vec![target.unit().clone()]);
        AlgebraMap { source: Algebra::ground(f), target, map }
    }

    pub fn identity(a: Arc<Algebra>) -> Self {
        let map = LinMap::identity(a.field(), a.dim());
        AlgebraMap { source: a.clone(), target: a, map }
    }

    pub fn apply(&self, x: &Vector) -> Vector {
        self.map.apply(x)
    }

    pub fn then(&self, g: &AlgebraMap) -> AlgebraMap {
        AlgebraMap { source: self.source.clone(), target: g.target.clone(), map: self.map.then(&g.map) }
    }
}

pub fn check_algebra_map(m: &AlgebraMap) -> Report {
    let mut r = Report::new("algebra_map");
    let (s, t) = (&m.source, &m.target);
    let f = s.field();
    r.require("unital", m.apply(s.unit()) == *t.unit());
    let mut bad = None;
    'o: for i in 0..s.dim() {
        for j in 0..s.dim() {
            let lhs = m.apply(s.basis_mul(i, j));
            let rhs = t.mul(&m.apply(&Vector::unit(f, i)), &m.apply(&Vector::unit(f, j)));
            if lhs != rhs {
                bad = Some(vec![i, j]);
                break 'o;
            }
        }
    }
    r.record("multiplicative", bad);
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_algebras_pass() {
        for f in [Field::Rational, Field::Prime(5)] {
            for a in [
                Algebra::ground(f),
                Algebra::product(f, 2),
                Algebra::dual_numbers(f),
                Algebra::matrix(f, 2),
                Algebra::upper_triangular(f),
            ] {
                assert!(check_algebra(&a).passed());
                assert!(check_algebra(&a.opposite()).passed());
            }
        }
    }

    #[test]
    fn broken_associativity_has_witness() {
        let f = Field::Rational;
        // unit e0; e1 e1 = e2, e1 e2 = e1, e2 e1 = 0
        let u = |k: usize| (0..3).map(|i| i64::from(i == k)).collect::<Vec<_>>();
        let z = vec![0, 0, 0];
        let table = vec![
            vec![u(0), u(1), u(2)],
            vec![u(1), u(2), u(1)],
            vec![u(2), z.clone(), z],
        ];
        let a = Algebra::from_table(f, 3, &table, &[1, 0, 0]);
        let r = check_algebra(&a);
        assert_eq!(r.checks[0].witness, vec![1, 1, 1]);
    }

    #[test]
    fn matrix_algebra_not_commutative() {
        assert!(!Algebra::matrix(Field::Rational, 2).is_commutative());
        assert!(Algebra::dual_numbers(Field::Rational).is_commutative());
    }

    #[test]
    fn diagonal_embedding_is_algebra_map() {
        let f = Field::Rational;
        let m = AlgebraMap::unit_map(Algebra::product(f, 2));
        assert!(check_algebra_map(&m).passed());
    }
}
