use std::sync::Arc;

use super::Bimodule;
use crate::algebra::same_algebra;
use crate::error::{Error, Result};
use crate::linalg::{Acc, Echelon, Field, LinMap, QuotientSpace, Scalar, Vector};

/// `M_1 ⊗_{R_1} M_2 ⊗ … ⊗_{R_{n-1}} M_n`: the quotient of the ambient `k`-tensor
/// product by all balancing relations, with the induced outer actions.
///
/// Ambient coordinates are row-major in the factor indices. Every quotient basis
/// vector is the image of a single ambient basis tuple.
#[derive(Debug)]
pub struct Tensor {
    factors: Vec<Arc<Bimodule>>,
    strides: Vec<usize>,
    quotient: QuotientSpace,
    module: Arc<Bimodule>,
}

impl Tensor {
    pub fn new(factors: Vec<Arc<Bimodule>>) -> Result<Arc<Tensor>> {
        if factors.is_empty() {
            return Err(Error::structural("tensor", "no factors"));
        }
        for (j, w) in factors.windows(2).enumerate() {
            if !same_algebra(w[0].right(), w[1].left()) {
                return Err(Error::structural(
                    format!("tensor.junction[{j}]"),
                    "right algebra of a factor differs from left algebra of the next",
                ));
            }
        }
        let field = factors[0].field();
        let n = factors.len();
        let mut strides = vec![1usize; n];
        for k in (0..n - 1).rev() {
            strides[k] = strides[k + 1] * factors[k + 1].dim();
        }
        let ambient = strides[0] * factors[0].dim();
        let mut rel = Echelon::new(field);
        for j in 0..n - 1 {
            let r_alg = factors[j].right().clone();
            for x in 0..r_alg.dim() {
                let ra = factors[j].right_basis_action(x);
                let la = factors[j + 1].left_basis_action(x);
                if same_scalar_identity(ra, la) {
                    continue;
                }
                for c in 0..ambient {
                    let tj = (c / strides[j]) % factors[j].dim();
                    let tj1 = (c / strides[j + 1]) % factors[j + 1].dim();
                    let base_j = c - tj * strides[j];
                    let base_j1 = c - tj1 * strides[j + 1];
                    let mut acc = Acc::new();
                    for (u, y) in ra.rows[tj].iter() {
                        acc.add(base_j + u * strides[j], y);
                    }
                    for (u, y) in la.rows[tj1].iter() {
                        acc.add(base_j1 + u * strides[j + 1], &-y);
                    }
                    let row = acc.finish();
                    if !row.is_zero() {
                        rel.insert(&row);
                    }
                }
            }
        }
        let quotient = QuotientSpace::new(field, ambient, rel);
        let mut t = Tensor { factors, strides, quotient, module: Bimodule::vector_space(field, 0) };
        t.module = t.induced_module();
        Ok(Arc::new(t))
    }

    pub fn pair(a: &Arc<Bimodule>, b: &Arc<Bimodule>) -> Result<Arc<Tensor>> {
        Tensor::new(vec![a.clone(), b.clone()])
    }

    pub fn triple(a: &Arc<Bimodule>, b: &Arc<Bimodule>, c: &Arc<Bimodule>) -> Result<Arc<Tensor>> {
        Tensor::new(vec![a.clone(), b.clone(), c.clone()])
    }

    fn induced_module(&self) -> Arc<Bimodule> {
        let f = self.field();
        let n = self.factors.len();
        let first = &self.factors[0];
        let last = &self.factors[n - 1];
        let d = self.dim();
        let left_act = (0..first.left().dim())
            .map(|b| {
                let a = first.left_basis_action(b);
                LinMap::from_fn(f, d, d, |q| {
                    let c = self.quotient.lift_index(q);
                    let t0 = c / self.strides[0];
                    let base = c - t0 * self.strides[0];
                    self.project_terms(a.rows[t0].iter().map(|(u, y)| (base + u * self.strides[0], y.clone())))
                })
            })
            .collect();
        let right_act = (0..last.right().dim())
            .map(|x| {
                let a = last.right_basis_action(x);
                LinMap::from_fn(f, d, d, |q| {
                    let c = self.quotient.lift_index(q);
                    let tn = c % last.dim();
                    let base = c - tn;
                    self.project_terms(a.rows[tn].iter().map(|(u, y)| (base + u, y.clone())))
                })
            })
            .collect();
        Bimodule::new(first.left().clone(), last.right().clone(), d, left_act, right_act).expect("induced actions")
    }

    fn project_terms(&self, terms: impl Iterator<Item = (usize, Scalar)>) -> Vector {
        let mut acc = Acc::new();
        for (c, y) in terms {
            acc.add(c, &y);
        }
        self.quotient.project(&acc.finish())
    }

    pub fn field(&self) -> Field {
        self.factors[0].field()
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.quotient.ambient_dim()
    }

    pub fn factors(&self) -> &[Arc<Bimodule>] {
        &self.factors
    }

    pub fn factor(&self, k: usize) -> &Arc<Bimodule> {
        &self.factors[k]
    }

    pub fn module(&self) -> &Arc<Bimodule> {
        &self.module
    }

    pub fn quotient(&self) -> &QuotientSpace {
        &self.quotient
    }

    pub fn encode(&self, tuple: &[usize]) -> usize {
        tuple.iter().zip(&self.strides).map(|(t, s)| t * s).sum()
    }

    pub fn decode(&self, c: usize) -> Vec<usize> {
        self.factors.iter().zip(&self.strides).map(|(m, s)| (c / s) % m.dim()).collect()
    }

    /// Ambient tuple carried by quotient basis vector `q`.
    pub fn tuple(&self, q: usize) -> Vec<usize> {
        self.decode(self.quotient.lift_index(q))
    }

    pub fn pure_basis(&self, tuple: &[usize]) -> Vector {
        self.quotient.project_index(self.encode(tuple))
    }

    /// Class of `v_1 ⊗ … ⊗ v_n`.
    pub fn pure(&self, vs: &[&Vector]) -> Vector {
        assert_eq!(vs.len(), self.factors.len(), "pure tensor arity");
        let f = self.field();
        let mut terms: Vec<(usize, Scalar)> = vec![(0, f.one())];
        for (v, s) in vs.iter().zip(&self.strides) {
            let mut next = Vec::with_capacity(terms.len() * v.nnz());
            for (c, x) in &terms {
                for (i, y) in v.iter() {
                    next.push((c + i * s, x * y));
                }
            }
            terms = next;
            if terms.is_empty() {
                return Vector::zero();
            }
        }
        self.project_terms(terms.into_iter())
    }

    /// The class of an ambient vector.
    pub fn project(&self, ambient: &Vector) -> Vector {
        self.quotient.project(ambient)
    }

    /// Canonical ambient representative.
    pub fn lift(&self, v: &Vector) -> Vector {
        self.quotient.lift(v)
    }

    /// `(tuple, coefficient)` terms of the canonical representative of `v`.
    pub fn expand(&self, v: &Vector) -> Vec<(Vec<usize>, Scalar)> {
        v.iter().map(|(q, c)| (self.tuple(q), c.clone())).collect()
    }

    /// Same as [`Tensor::expand`].
    pub fn tuple_of(&self, v: &Vector) -> Vec<(Vec<usize>, Scalar)> {
        self.expand(v)
    }

    /// Linear map defined by its values on basis tuples; the formula must be balanced.
    pub fn map_basis(&self, dst: usize, mut f: impl FnMut(&[usize]) -> Vector) -> LinMap {
        LinMap::from_fn(self.field(), self.dim(), dst, |q| f(&self.tuple(q)))
    }

    /// Extends `f` (given on ambient tuples) linearly to the ambient space.
    pub fn ambient_apply(&self, v: &Vector, f: &mut impl FnMut(&[usize]) -> Vector) -> Vector {
        let mut acc = Acc::new();
        for (c, x) in v.iter() {
            acc.add_scaled(&f(&self.decode(c)), x);
        }
        acc.finish()
    }

    /// Index of the first reduced relation not annihilated by the tuple formula `f`;
    /// `None` means `f` descends to the quotient.
    pub fn unbalanced(&self, mut f: impl FnMut(&[usize]) -> Vector) -> Option<usize> {
        self.quotient.relations().rows().iter().position(|r| !self.ambient_apply(r, &mut f).is_zero())
    }

    /// Map out of the quotient given by values on all ambient basis vectors.
    pub fn map_from_ambient(&self, ambient_rows: &LinMap) -> Result<LinMap> {
        if ambient_rows.src != self.ambient_dim() {
            return Err(Error::structural("tensor.map", "rows must be indexed by ambient tuples"));
        }
        if let Some(i) = self.unbalanced(|t| ambient_rows.rows[self.encode(t)].clone()) {
            return Err(Error::structural(format!("tensor.relation[{i}]"), "map does not vanish on a balancing relation"));
        }
        Ok(LinMap::from_fn(self.field(), self.dim(), ambient_rows.dst, |q| {
            ambient_rows.rows[self.quotient.lift_index(q)].clone()
        }))
    }

    /// Values of a quotient map on every ambient basis tuple.
    pub fn map_to_ambient(&self, m: &LinMap) -> LinMap {
        LinMap::from_fn(self.field(), self.ambient_dim(), m.dst, |c| m.apply(&self.quotient.project_index(c)))
    }
}

fn same_scalar_identity(a: &LinMap, b: &LinMap) -> bool {
    let Some(c) = a.rows.first().and_then(|r| r.get(0)).cloned() else {
        return a.src == 0 && b.src == 0;
    };
    let scaled = |m: &LinMap| m.rows.iter().enumerate().all(|(i, r)| r.nnz() == 1 && r.get(i) == Some(&c));
    scaled(a) && scaled(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, AlgebraMap};
    use crate::bimodule::check_bimodule;

    #[test]
    fn tensor_over_ground_field_is_free() {
        let f = Field::Rational;
        let t = Tensor::pair(&Bimodule::vector_space(f, 2), &Bimodule::vector_space(f, 3)).unwrap();
        assert_eq!(t.dim(), 6);
    }

    #[test]
    fn regular_tensor_collapses() {
        let f = Field::Rational;
        for a in [Algebra::dual_numbers(f), Algebra::matrix(f, 2), Algebra::product(f, 2)] {
            let r = Bimodule::regular(&a);
            let t = Tensor::pair(&r, &r).unwrap();
            assert_eq!(t.dim(), a.dim());
            assert!(check_bimodule(t.module()).passed());
            let t3 = Tensor::triple(&r, &r, &r).unwrap();
            assert_eq!(t3.dim(), a.dim());
        }
    }

    #[test]
    fn idempotent_splitting() {
        // (k×k) ⊗_{k×k} (k×k)^2: e1 A ⊗ A e2 vanishes
        let f = Field::Rational;
        let a = Algebra::product(f, 2);
        let t = Tensor::pair(&Bimodule::regular(&a), &Bimodule::free(&a, 2)).unwrap();
        assert_eq!(t.dim(), 4);
    }

    #[test]
    fn sweedler_dimension() {
        let f = Field::Rational;
        let a = Algebra::dual_numbers(f);
        let alpha = AlgebraMap::unit_map(a.clone());
        let ab = Bimodule::regular(&a).restrict(None, Some(&alpha));
        let ba = Bimodule::regular(&a).restrict(Some(&alpha), None);
        let t = Tensor::pair(&ab, &ba).unwrap();
        assert_eq!(t.dim(), 4);
        let mult = t.map_basis(2, |tp| a.basis_mul(tp[0], tp[1]).clone());
        assert_eq!(mult.rank(), 2);
    }

    #[test]
    fn unbalanced_formula_detected() {
        let f = Field::Rational;
        let a = Algebra::dual_numbers(f);
        let r = Bimodule::regular(&a);
        let t = Tensor::pair(&r, &r).unwrap();
        // (i, j) ↦ e_i ignores the middle action
        assert!(t.unbalanced(|tp| Vector::unit(f, tp[0])).is_some());
        assert!(t.unbalanced(|tp| a.basis_mul(tp[0], tp[1]).clone()).is_none());
    }
}
