//! Bimodules given by action tensors, their tensor products over an algebra,
//! duals and dual bases.

mod dual;
mod tensor;

pub use dual::{
    dual_basis, dual_basis_failure, ProjectiveModule, flatten, hom_constraints, hom_space, unflatten, frobenius_bimodule_witness, invertible_combination, left_dual, right_dual, separable_bimodule_witness, DualBasis, DualModule,
    DualSide, FrobeniusWitness, SeparabilityWitness, Witnessed,
};
pub use tensor::Tensor;

use std::sync::Arc;

use crate::algebra::{same_algebra, Algebra, AlgebraMap};
use crate::error::{Error, Result};
use crate::linalg::{Acc, Field, LinMap, Subspace, Vector};
use crate::report::Report;

/// A `(L, R)`-bimodule: `left_act[b]` sends `m_i` to `b·m_i`, `right_act[a]` sends
/// `m_i` to `m_i·a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    left: Arc<Algebra>,
    right: Arc<Algebra>,
    dim: usize,
    left_act: Vec<LinMap>,
    right_act: Vec<LinMap>,
}

impl Bimodule {
    pub fn new(
        left: Arc<Algebra>,
        right: Arc<Algebra>,
        dim: usize,
        left_act: Vec<LinMap>,
        right_act: Vec<LinMap>,
    ) -> Result<Arc<Bimodule>> {
        if left.field() != right.field() {
            return Err(Error::structural("bimodule", "algebras over different fields"));
        }
        if left_act.len() != left.dim() {
            return Err(Error::structural("bimodule.left", "one action matrix per left basis element expected"));
        }
        if right_act.len() != right.dim() {
            return Err(Error::structural("bimodule.right", "one action matrix per right basis element expected"));
        }
        for (i, m) in left_act.iter().chain(&right_act).enumerate() {
            if m.src != dim || m.dst != dim {
                return Err(Error::structural(format!("bimodule.action[{i}]"), "action matrix has wrong shape"));
            }
        }
        Ok(Arc::new(Bimodule { left, right, dim, left_act, right_act }))
    }

    /// `A` as an `(A, A)`-bimodule.
    pub fn regular(a: &Arc<Algebra>) -> Arc<Bimodule> {
        let f = a.field();
        let e = |i| Vector::unit(f, i);
        let left_act = (0..a.dim()).map(|b| a.left_mult(&e(b))).collect();
        let right_act = (0..a.dim()).map(|b| a.right_mult(&e(b))).collect();
        Arc::new(Bimodule { left: a.clone(), right: a.clone(), dim: a.dim(), left_act, right_act })
    }

    /// `A^n` as an `(A, A)`-bimodule, componentwise; coordinate `(c, i)` at `c * dim A + i`.
    pub fn free(a: &Arc<Algebra>, n: usize) -> Arc<Bimodule> {
        Bimodule::direct_sum_all(&vec![Bimodule::regular(a); n])
    }

    /// `k^n` over `(k, k)`.
    pub fn vector_space(field: Field, n: usize) -> Arc<Bimodule> {
        let k = Algebra::ground(field);
        Arc::new(Bimodule {
            left: k.clone(),
            right: k,
            dim: n,
            left_act: vec![LinMap::identity(field, n)],
            right_act: vec![LinMap::identity(field, n)],
        })
    }

    pub fn direct_sum_all(parts: &[Arc<Bimodule>]) -> Arc<Bimodule> {
        let first = &parts[0];
        let f = first.field();
        let dim: usize = parts.iter().map(|p| p.dim).sum();
        let block = |pick: &dyn Fn(&Bimodule) -> &LinMap| {
            let mut rows = Vec::with_capacity(dim);
            let mut off = 0;
            for p in parts {
                for r in &pick(p).rows {
                    rows.push(r.shift(off));
                }
                off += p.dim;
            }
            LinMap::from_rows(f, dim, rows)
        };
        let left_act = (0..first.left.dim()).map(|b| block(&|p: &Bimodule| &p.left_act[b])).collect();
        let right_act = (0..first.right.dim()).map(|a| block(&|p: &Bimodule| &p.right_act[a])).collect();
        Arc::new(Bimodule { left: first.left.clone(), right: first.right.clone(), dim, left_act, right_act })
    }

    /// The subspace spanned by `space` with the restricted actions; fails if it is
    /// not a sub-bimodule.
    pub fn submodule(&self, space: &Subspace) -> Result<Arc<Bimodule>> {
        let f = self.field();
        let n = space.dim();
        let restrict = |acts: &[LinMap], side: &str| -> Result<Vec<LinMap>> {
            acts.iter()
                .enumerate()
                .map(|(x, a)| {
                    let rows = space
                        .basis()
                        .iter()
                        .map(|v| {
                            space.coords(&a.apply(v)).ok_or_else(|| {
                                Error::structural(format!("submodule.{side}[{x}]"), "subspace not closed under the action")
                            })
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Ok(LinMap::from_rows(f, n, rows))
                })
                .collect()
        };
        let left_act = restrict(&self.left_act, "left")?;
        let right_act = restrict(&self.right_act, "right")?;
        Bimodule::new(self.left.clone(), self.right.clone(), n, left_act, right_act)
    }

    /// Pulls the actions back along algebra maps into the current left and right algebras.
    pub fn restrict(&self, left: Option<&AlgebraMap>, right: Option<&AlgebraMap>) -> Arc<Bimodule> {
        let f = self.field();
        let pull = |alpha: &AlgebraMap, acts: &Vec<LinMap>| -> Vec<LinMap> {
            (0..alpha.source.dim())
                .map(|b| {
                    let img = alpha.apply(&Vector::unit(f, b));
                    combine(f, self.dim, acts, &img)
                })
                .collect()
        };
        let (l, la) = match left {
            Some(al) => (al.source.clone(), pull(al, &self.left_act)),
            None => (self.left.clone(), self.left_act.clone()),
        };
        let (r, ra) = match right {
            Some(al) => (al.source.clone(), pull(al, &self.right_act)),
            None => (self.right.clone(), self.right_act.clone()),
        };
        Arc::new(Bimodule { left: l, right: r, dim: self.dim, left_act: la, right_act: ra })
    }

    /// Keeps only the right action (left algebra becomes the ground field).
    pub fn forget_left(&self) -> Arc<Bimodule> {
        let f = self.field();
        let k = Algebra::ground(f);
        Arc::new(Bimodule {
            left: k,
            right: self.right.clone(),
            dim: self.dim,
            left_act: vec![LinMap::identity(f, self.dim)],
            right_act: self.right_act.clone(),
        })
    }

    /// Keeps only the left action.
    pub fn forget_right(&self) -> Arc<Bimodule> {
        let f = self.field();
        let k = Algebra::ground(f);
        Arc::new(Bimodule {
            left: self.left.clone(),
            right: k,
            dim: self.dim,
            left_act: self.left_act.clone(),
            right_act: vec![LinMap::identity(f, self.dim)],
        })
    }

    pub fn field(&self) -> Field {
        self.left.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left(&self) -> &Arc<Algebra> {
        &self.left
    }

    pub fn right(&self) -> &Arc<Algebra> {
        &self.right
    }

    pub fn left_basis_action(&self, b: usize) -> &LinMap {
        &self.left_act[b]
    }

    pub fn right_basis_action(&self, a: usize) -> &LinMap {
        &self.right_act[a]
    }

    pub fn left_action(&self, b: &Vector) -> LinMap {
        combine(self.field(), self.dim, &self.left_act, b)
    }

    pub fn right_action(&self, a: &Vector) -> LinMap {
        combine(self.field(), self.dim, &self.right_act, a)
    }

    pub fn act_left(&self, b: &Vector, m: &Vector) -> Vector {
        let mut acc = Acc::new();
        for (i, c) in b.iter() {
            acc.add_scaled(&self.left_act[i].apply(m), c);
        }
        acc.finish()
    }

    pub fn act_right(&self, m: &Vector, a: &Vector) -> Vector {
        let mut acc = Acc::new();
        for (i, c) in a.iter() {
            acc.add_scaled(&self.right_act[i].apply(m), c);
        }
        acc.finish()
    }

    pub fn basis(&self, i: usize) -> Vector {
        Vector::unit(self.field(), i)
    }
}

fn combine(f: Field, dim: usize, acts: &[LinMap], coeffs: &Vector) -> LinMap {
    let mut out = LinMap::zero(f, dim, dim);
    for (i, c) in coeffs.iter() {
        out = out.add(&acts[i].scale(c));
    }
    out
}

pub fn check_bimodule(m: &Bimodule) -> Report {
    let mut r = Report::new("bimodule");
    let f = m.field();
    let e = |i| Vector::unit(f, i);
    let (l, ra) = (&m.left, &m.right);
    let lu = (0..m.dim).find(|&i| m.act_left(l.unit(), &e(i)) != e(i)).map(|i| vec![i]);
    r.record("left_unital", lu);
    let ru = (0..m.dim).find(|&i| m.act_right(&e(i), ra.unit()) != e(i)).map(|i| vec![i]);
    r.record("right_unital", ru);
    let mut bad = None;
    'a: for b in 0..l.dim() {
        for b2 in 0..l.dim() {
            for i in 0..m.dim {
                let lhs = m.act_left(&e(b), &m.act_left(&e(b2), &e(i)));
                let rhs = m.act_left(l.basis_mul(b, b2), &e(i));
                if lhs != rhs {
                    bad = Some(vec![b, b2, i]);
                    break 'a;
                }
            }
        }
    }
    r.record("left_associative", bad);
    let mut bad = None;
    'b: for i in 0..m.dim {
        for a in 0..ra.dim() {
            for a2 in 0..ra.dim() {
                let lhs = m.act_right(&m.act_right(&e(i), &e(a)), &e(a2));
                let rhs = m.act_right(&e(i), ra.basis_mul(a, a2));
                if lhs != rhs {
                    bad = Some(vec![i, a, a2]);
                    break 'b;
                }
            }
        }
    }
    r.record("right_associative", bad);
    let mut bad = None;
    'c: for b in 0..l.dim() {
        for i in 0..m.dim {
            for a in 0..ra.dim() {
                let lhs = m.act_right(&m.act_left(&e(b), &e(i)), &e(a));
                let rhs = m.act_left(&e(b), &m.act_right(&e(i), &e(a)));
                if lhs != rhs {
                    bad = Some(vec![b, i, a]);
                    break 'c;
                }
            }
        }
    }
    r.record("actions_commute", bad);
    r
}

/// Linear map between bimodules over the same algebras.
#[derive(Clone, Debug)]
pub struct BimoduleMap {
    pub source: Arc<Bimodule>,
    pub target: Arc<Bimodule>,
    pub map: LinMap,
}

impl BimoduleMap {
    pub fn new(source: Arc<Bimodule>, target: Arc<Bimodule>, map: LinMap) -> Result<Self> {
        if map.src != source.dim() || map.dst != target.dim() {
            return Err(Error::structural("bimodule_map", "shape does not match source and target"));
        }
        if !same_algebra(source.left(), target.left()) || !same_algebra(source.right(), target.right()) {
            return Err(Error::structural("bimodule_map", "source and target are over different algebras"));
        }
        Ok(BimoduleMap { source, target, map })
    }
}

/// First `(side, algebra basis, module basis)` where `map` fails to commute with the actions.
pub fn bilinearity_failure(source: &Bimodule, target: &Bimodule, map: &LinMap) -> Option<Vec<usize>> {
    let f = source.field();
    for b in 0..source.left().dim() {
        for i in 0..source.dim() {
            let lhs = map.apply(&source.left_act[b].rows[i]);
            let rhs = target.act_left(&Vector::unit(f, b), &map.rows[i]);
            if lhs != rhs {
                return Some(vec![0, b, i]);
            }
        }
    }
    for a in 0..source.right().dim() {
        for i in 0..source.dim() {
            let lhs = map.apply(&source.right_act[a].rows[i]);
            let rhs = target.act_right(&map.rows[i], &Vector::unit(f, a));
            if lhs != rhs {
                return Some(vec![1, a, i]);
            }
        }
    }
    None
}

pub fn check_bimodule_map(m: &BimoduleMap) -> Report {
    let mut r = Report::new("bimodule_map");
    r.record("bilinear", bilinearity_failure(&m.source, &m.target, &m.map));
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_bimodules_pass() {
        let f = Field::Rational;
        for a in [Algebra::dual_numbers(f), Algebra::matrix(f, 2), Algebra::product(f, 2)] {
            assert!(check_bimodule(&Bimodule::regular(&a)).passed());
            assert!(check_bimodule(&Bimodule::free(&a, 2)).passed());
        }
        assert!(check_bimodule(&Bimodule::vector_space(f, 3)).passed());
    }

    #[test]
    fn restriction_along_unit_map() {
        let f = Field::Rational;
        let a = Algebra::dual_numbers(f);
        let alpha = AlgebraMap::unit_map(a.clone());
        let m = Bimodule::regular(&a).restrict(Some(&alpha), None);
        assert_eq!(m.left().dim(), 1);
        assert!(check_bimodule(&m).passed());
    }

    #[test]
    fn noncommuting_actions_detected() {
        let f = Field::Rational;
        let a = Algebra::dual_numbers(f);
        let reg = Bimodule::regular(&a);
        // x lowers degree on the right but raises it on the left
        let twisted = LinMap::from_rows(f, 2, vec![Vector::zero(), Vector::unit(f, 0)]);
        let m = Bimodule::new(a.clone(), a.clone(), 2, reg.left_act.clone(), vec![LinMap::identity(f, 2), twisted]).unwrap();
        assert!(!check_bimodule(&m).passed());
    }
}
