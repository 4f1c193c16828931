use std::sync::Arc;

use super::{first_mismatch, same_coring, Coring};
use crate::bimodule::{bilinearity_failure, hom_constraints, unflatten, Bimodule, Tensor};
use crate::error::{Error, Result};
use crate::linalg::{Acc, Constraints, LinMap, Scalar, Subspace, Vector};
use crate::report::Report;

/// Right comodule `ρ: M → M ⊗_A C`; the carrier is an `(L, A)`-bimodule.
#[derive(Clone, Debug)]
pub struct RightComodule {
    pub coring: Arc<Coring>,
    pub carrier: Arc<Bimodule>,
    /// `M ⊗_A C`.
    pub target: Arc<Tensor>,
    pub coaction: LinMap,
}

/// Left comodule `ρ: N → C ⊗_A N`; the carrier is an `(A, R)`-bimodule.
#[derive(Clone, Debug)]
pub struct LeftComodule {
    pub coring: Arc<Coring>,
    pub carrier: Arc<Bimodule>,
    /// `C ⊗_A N`.
    pub target: Arc<Tensor>,
    pub coaction: LinMap,
}

impl RightComodule {
    pub fn new(coring: Arc<Coring>, carrier: Arc<Bimodule>, coaction: LinMap) -> Result<Self> {
        let target = Tensor::pair(&carrier, coring.carrier())?;
        RightComodule::with_target(coring, carrier, target, coaction)
    }

    pub fn with_target(coring: Arc<Coring>, carrier: Arc<Bimodule>, target: Arc<Tensor>, coaction: LinMap) -> Result<Self> {
        if coaction.src != carrier.dim() || coaction.dst != target.dim() {
            return Err(Error::structural("comodule.coaction", "shape does not match M → M⊗C"));
        }
        Ok(RightComodule { coring, carrier, target, coaction })
    }

    /// Coaction given by representatives in the ambient `M ⊗_k C`.
    pub fn from_ambient(coring: Arc<Coring>, carrier: Arc<Bimodule>, ambient: &LinMap) -> Result<Self> {
        let target = Tensor::pair(&carrier, coring.carrier())?;
        if ambient.dst != target.ambient_dim() {
            return Err(Error::structural("comodule.coaction", "representatives must live in M ⊗_k C"));
        }
        let coaction = LinMap::from_fn(carrier.field(), carrier.dim(), target.dim(), |i| target.project(&ambient.rows[i]));
        RightComodule::with_target(coring, carrier, target, coaction)
    }

    /// `C` with `Δ` as coaction, keeping both actions.
    pub fn regular(c: &Arc<Coring>) -> Self {
        RightComodule { coring: c.clone(), carrier: c.carrier().clone(), target: c.cc().clone(), coaction: c.comult().clone() }
    }

    /// Same coaction with the left action forgotten.
    pub fn forget_left(&self) -> Self {
        let carrier = self.carrier.forget_left();
        let target = Tensor::pair(&carrier, self.coring.carrier()).expect("same balancing");
        RightComodule { coring: self.coring.clone(), carrier, target, coaction: self.coaction.clone() }
    }

    /// Subcomodule of `C` generated by `c`, for a coring over the ground field.
    pub fn cyclic(coring: &Arc<Coring>, c: &Vector) -> Result<Self> {
        if !coring.base().is_ground() {
            return Err(Error::structural("comodule.cyclic", "requires a coring over the ground field"));
        }
        let f = coring.field();
        let n = coring.dim();
        // span of (C ⊗ φ)Δ(c) over coordinate functionals φ
        let mut pieces: Vec<Acc> = (0..n).map(|_| Acc::new()).collect();
        for (i, x) in c.iter() {
            for (u, v, s) in coring.delta_terms(i) {
                pieces[v].add(u, &(x * &s));
            }
        }
        let gens: Vec<Vector> = pieces.into_iter().map(Acc::finish).collect();
        let space = Subspace::new(f, n, &gens);
        RightComodule::restrict_regular(coring, &space)
    }

    /// The regular comodule restricted to a subcomodule `space ⊆ C` (ground base).
    pub fn restrict_regular(coring: &Arc<Coring>, space: &Subspace) -> Result<Self> {
        let f = coring.field();
        let n = coring.dim();
        let d = space.dim();
        let carrier = Bimodule::vector_space(f, d);
        let target = Tensor::pair(&carrier, coring.carrier())?;
        let mut rows = Vec::with_capacity(d);
        for (k, b) in space.basis().iter().enumerate() {
            let mut by_right: Vec<Acc> = (0..n).map(|_| Acc::new()).collect();
            for (i, x) in b.iter() {
                for (u, v, s) in coring.delta_terms(i) {
                    by_right[v].add(u, &(x * &s));
                }
            }
            let mut acc = Acc::new();
            for (v, a) in by_right.into_iter().enumerate() {
                let w = a.finish();
                if w.is_zero() {
                    continue;
                }
                let coords = space
                    .coords(&w)
                    .ok_or_else(|| Error::structural(format!("comodule.subspace[{k}]"), "not a subcomodule"))?;
                for (j, y) in coords.iter() {
                    acc.add(target.encode(&[j, v]), y);
                }
            }
            rows.push(target.project(&acc.finish()));
        }
        let coaction = LinMap::from_rows(f, target.dim(), rows);
        RightComodule::with_target(coring.clone(), carrier, target, coaction)
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    /// Terms `(m, c, coefficient)` of `ρ(e_i)`.
    pub fn coaction_terms(&self, i: usize) -> Vec<(usize, usize, Scalar)> {
        self.target.expand(&self.coaction.rows[i]).into_iter().map(|(t, s)| (t[0], t[1], s)).collect()
    }

    /// `(f ⊗ C)(t)` for `t ∈ M ⊗_A C`, landing in `other.target`.
    pub fn map_tensor(&self, other: &RightComodule, f: &LinMap, t: &Vector) -> Vector {
        let mut acc = Acc::new();
        for (tp, s) in self.target.expand(t) {
            acc.add_scaled(&other.target.pure(&[&f.rows[tp[0]], &Vector::unit(f.field, tp[1])]), &s);
        }
        acc.finish()
    }
}

impl LeftComodule {
    pub fn new(coring: Arc<Coring>, carrier: Arc<Bimodule>, coaction: LinMap) -> Result<Self> {
        let target = Tensor::pair(coring.carrier(), &carrier)?;
        LeftComodule::with_target(coring, carrier, target, coaction)
    }

    pub fn with_target(coring: Arc<Coring>, carrier: Arc<Bimodule>, target: Arc<Tensor>, coaction: LinMap) -> Result<Self> {
        if coaction.src != carrier.dim() || coaction.dst != target.dim() {
            return Err(Error::structural("comodule.coaction", "shape does not match N → C⊗N"));
        }
        Ok(LeftComodule { coring, carrier, target, coaction })
    }

    pub fn from_ambient(coring: Arc<Coring>, carrier: Arc<Bimodule>, ambient: &LinMap) -> Result<Self> {
        let target = Tensor::pair(coring.carrier(), &carrier)?;
        if ambient.dst != target.ambient_dim() {
            return Err(Error::structural("comodule.coaction", "representatives must live in C ⊗_k N"));
        }
        let coaction = LinMap::from_fn(carrier.field(), carrier.dim(), target.dim(), |i| target.project(&ambient.rows[i]));
        LeftComodule::with_target(coring, carrier, target, coaction)
    }

    pub fn regular(c: &Arc<Coring>) -> Self {
        LeftComodule { coring: c.clone(), carrier: c.carrier().clone(), target: c.cc().clone(), coaction: c.comult().clone() }
    }

    pub fn forget_right(&self) -> Self {
        let carrier = self.carrier.forget_right();
        let target = Tensor::pair(self.coring.carrier(), &carrier).expect("same balancing");
        LeftComodule { coring: self.coring.clone(), carrier, target, coaction: self.coaction.clone() }
    }

    /// Left subcomodule of `C` generated by `c` (ground base).
    pub fn cyclic(coring: &Arc<Coring>, c: &Vector) -> Result<Self> {
        if !coring.base().is_ground() {
            return Err(Error::structural("comodule.cyclic", "requires a coring over the ground field"));
        }
        let f = coring.field();
        let n = coring.dim();
        let mut pieces: Vec<Acc> = (0..n).map(|_| Acc::new()).collect();
        for (i, x) in c.iter() {
            for (u, v, s) in coring.delta_terms(i) {
                pieces[u].add(v, &(x * &s));
            }
        }
        let gens: Vec<Vector> = pieces.into_iter().map(Acc::finish).collect();
        let space = Subspace::new(f, n, &gens);
        let d = space.dim();
        let carrier = Bimodule::vector_space(f, d);
        let target = Tensor::pair(coring.carrier(), &carrier)?;
        let mut rows = Vec::with_capacity(d);
        for (k, b) in space.basis().iter().enumerate() {
            let mut by_left: Vec<Acc> = (0..n).map(|_| Acc::new()).collect();
            for (i, x) in b.iter() {
                for (u, v, s) in coring.delta_terms(i) {
                    by_left[u].add(v, &(x * &s));
                }
            }
            let mut acc = Acc::new();
            for (u, a) in by_left.into_iter().enumerate() {
                let w = a.finish();
                if w.is_zero() {
                    continue;
                }
                let coords = space
                    .coords(&w)
                    .ok_or_else(|| Error::structural(format!("comodule.subspace[{k}]"), "not a subcomodule"))?;
                for (j, y) in coords.iter() {
                    acc.add(target.encode(&[u, j]), y);
                }
            }
            rows.push(target.project(&acc.finish()));
        }
        let coaction = LinMap::from_rows(f, target.dim(), rows);
        LeftComodule::with_target(coring.clone(), carrier, target, coaction)
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    /// Terms `(c, n, coefficient)` of `ρ(e_i)`.
    pub fn coaction_terms(&self, i: usize) -> Vec<(usize, usize, Scalar)> {
        self.target.expand(&self.coaction.rows[i]).into_iter().map(|(t, s)| (t[0], t[1], s)).collect()
    }

    /// `(C ⊗ f)(t)` for `t ∈ C ⊗_A N`, landing in `other.target`.
    pub fn map_tensor(&self, other: &LeftComodule, f: &LinMap, t: &Vector) -> Vector {
        let mut acc = Acc::new();
        for (tp, s) in self.target.expand(t) {
            acc.add_scaled(&other.target.pure(&[&Vector::unit(f.field, tp[0]), &f.rows[tp[1]]]), &s);
        }
        acc.finish()
    }
}

pub fn check_right_comodule(m: &RightComodule) -> Report {
    let mut r = Report::new("right_comodule");
    let c = &m.coring;
    let f = c.field();
    if !crate::algebra::same_algebra(m.carrier.right(), c.base()) {
        r.fail("coring_mismatch", vec![]);
        return r;
    }
    r.record("coaction_linear", bilinearity_failure(&m.carrier, m.target.module(), &m.coaction));
    let mcc = Tensor::triple(&m.carrier, c.carrier(), c.carrier()).expect("matching algebras");
    let coassoc = first_mismatch(
        m.dim(),
        |i| {
            let mut acc = Acc::new();
            for (x, y, s) in m.coaction_terms(i) {
                for (u, v, t) in m.coaction_terms(x) {
                    acc.add_scaled(&mcc.pure_basis(&[u, v, y]), &(&s * &t));
                }
            }
            acc.finish()
        },
        |i| {
            let mut acc = Acc::new();
            for (x, y, s) in m.coaction_terms(i) {
                for (u, v, t) in c.delta_terms(y) {
                    acc.add_scaled(&mcc.pure_basis(&[x, u, v]), &(&s * &t));
                }
            }
            acc.finish()
        },
    );
    r.record("coassociative", coassoc);
    let counit = first_mismatch(
        m.dim(),
        |i| {
            let mut acc = Acc::new();
            for (x, y, s) in m.coaction_terms(i) {
                acc.add_scaled(&m.carrier.act_right(&Vector::unit(f, x), &c.counit().rows[y]), &s);
            }
            acc.finish()
        },
        |i| Vector::unit(f, i),
    );
    r.record("counit", counit);
    r
}

pub fn check_left_comodule(n: &LeftComodule) -> Report {
    let mut r = Report::new("left_comodule");
    let c = &n.coring;
    let f = c.field();
    if !crate::algebra::same_algebra(n.carrier.left(), c.base()) {
        r.fail("coring_mismatch", vec![]);
        return r;
    }
    r.record("coaction_linear", bilinearity_failure(&n.carrier, n.target.module(), &n.coaction));
    let ccn = Tensor::triple(c.carrier(), c.carrier(), &n.carrier).expect("matching algebras");
    let coassoc = first_mismatch(
        n.dim(),
        |i| {
            let mut acc = Acc::new();
            for (x, y, s) in n.coaction_terms(i) {
                for (u, v, t) in c.delta_terms(x) {
                    acc.add_scaled(&ccn.pure_basis(&[u, v, y]), &(&s * &t));
                }
            }
            acc.finish()
        },
        |i| {
            let mut acc = Acc::new();
            for (x, y, s) in n.coaction_terms(i) {
                for (u, v, t) in n.coaction_terms(y) {
                    acc.add_scaled(&ccn.pure_basis(&[x, u, v]), &(&s * &t));
                }
            }
            acc.finish()
        },
    );
    r.record("coassociative", coassoc);
    let counit = first_mismatch(
        n.dim(),
        |i| {
            let mut acc = Acc::new();
            for (x, y, s) in n.coaction_terms(i) {
                acc.add_scaled(&n.carrier.act_left(&c.counit().rows[x], &Vector::unit(f, y)), &s);
            }
            acc.finish()
        },
        |i| Vector::unit(f, i),
    );
    r.record("counit", counit);
    r
}

/// A `(D, C)`-bicomodule: left `D`-coaction and right `C`-coaction on one carrier.
#[derive(Clone, Debug)]
pub struct Bicomodule {
    pub left: LeftComodule,
    pub right: RightComodule,
}

impl Bicomodule {
    pub fn new(left: LeftComodule, right: RightComodule) -> Result<Self> {
        if left.carrier.dim() != right.carrier.dim() || *left.carrier != *right.carrier {
            return Err(Error::structural("bicomodule", "coactions on different carriers"));
        }
        Ok(Bicomodule { left, right })
    }

    pub fn regular(c: &Arc<Coring>) -> Self {
        Bicomodule { left: LeftComodule::regular(c), right: RightComodule::regular(c) }
    }

    pub fn carrier(&self) -> &Arc<Bimodule> {
        &self.right.carrier
    }

    pub fn dim(&self) -> usize {
        self.right.dim()
    }
}

pub fn check_bicomodule(b: &Bicomodule) -> Report {
    let mut r = Report::new("bicomodule");
    r.absorb("left", &check_left_comodule(&b.left));
    r.absorb("right", &check_right_comodule(&b.right));
    let (d, c) = (&b.left.coring, &b.right.coring);
    let dmc = Tensor::triple(d.carrier(), b.carrier(), c.carrier()).expect("matching algebras");
    let compat = first_mismatch(
        b.dim(),
        |i| {
            let mut acc = Acc::new();
            for (x, y, s) in b.left.coaction_terms(i) {
                for (u, v, t) in b.right.coaction_terms(y) {
                    acc.add_scaled(&dmc.pure_basis(&[x, u, v]), &(&s * &t));
                }
            }
            acc.finish()
        },
        |i| {
            let mut acc = Acc::new();
            for (x, y, s) in b.right.coaction_terms(i) {
                for (u, v, t) in b.left.coaction_terms(x) {
                    acc.add_scaled(&dmc.pure_basis(&[u, v, y]), &(&s * &t));
                }
            }
            acc.finish()
        },
    );
    r.record("coactions_commute", compat);
    r
}

/// First basis index where `f: M → N` fails to be right colinear.
pub fn colinearity_failure_right(m: &RightComodule, n: &RightComodule, f: &LinMap) -> Option<Vec<usize>> {
    first_mismatch(m.dim(), |i| n.coaction.apply(&f.rows[i]), |i| m.map_tensor(n, f, &m.coaction.rows[i]))
}

pub fn colinearity_failure_left(m: &LeftComodule, n: &LeftComodule, f: &LinMap) -> Option<Vec<usize>> {
    first_mismatch(m.dim(), |i| n.coaction.apply(&f.rows[i]), |i| m.map_tensor(n, f, &m.coaction.rows[i]))
}

/// Basis of right colinear maps `M → N` that are right linear, and also left
/// linear when `left_linear` is set.
pub fn right_comodule_homs(m: &RightComodule, n: &RightComodule, left_linear: bool) -> Vec<LinMap> {
    let fld = m.coring.field();
    let (dm, dn) = (m.dim(), n.dim());
    let mut cs = Constraints::new(fld, dm * dn);
    cs.add_rows(hom_constraints(&m.carrier, &n.carrier, left_linear, true));
    let minus = -fld.one();
    for i in 0..dm {
        for (x, y, s) in m.coaction_terms(i) {
            for l in 0..dn {
                cs.add(i, x * dn + l, &n.target.pure_basis(&[l, y]), &s);
            }
        }
        for l in 0..dn {
            cs.add(i, i * dn + l, &n.coaction.rows[l], &minus);
        }
    }
    cs.kernel().iter().map(|v| unflatten(fld, v, dm, dn)).collect()
}

pub fn left_comodule_homs(m: &LeftComodule, n: &LeftComodule, right_linear: bool) -> Vec<LinMap> {
    let fld = m.coring.field();
    let (dm, dn) = (m.dim(), n.dim());
    let mut cs = Constraints::new(fld, dm * dn);
    cs.add_rows(hom_constraints(&m.carrier, &n.carrier, true, right_linear));
    let minus = -fld.one();
    for i in 0..dm {
        for (x, y, s) in m.coaction_terms(i) {
            for l in 0..dn {
                cs.add(i, y * dn + l, &n.target.pure_basis(&[x, l]), &s);
            }
        }
        for l in 0..dn {
            cs.add(i, i * dn + l, &n.coaction.rows[l], &minus);
        }
    }
    cs.kernel().iter().map(|v| unflatten(fld, v, dm, dn)).collect()
}

/// `M □_C N = ker(ρ ⊗ N − M ⊗ ρ)` inside `M ⊗_A N`.
#[derive(Clone, Debug)]
pub struct Cotensor {
    pub mn: Arc<Tensor>,
    pub mcn: Arc<Tensor>,
    pub omega: LinMap,
    pub space: Subspace,
}

impl Cotensor {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Inclusion into `M ⊗_A N`.
    pub fn inclusion(&self) -> LinMap {
        LinMap::from_rows(self.space.field(), self.mn.dim(), self.space.basis().to_vec())
    }

    pub fn coords(&self, v: &Vector) -> Option<Vector> {
        self.space.coords(v)
    }

    /// The cotensor product with the outer actions, when it is a sub-bimodule.
    pub fn module(&self) -> Result<Arc<Bimodule>> {
        self.mn.module().submodule(&self.space)
    }
}

pub fn cotensor(m: &RightComodule, n: &LeftComodule) -> Result<Cotensor> {
    if !same_coring(&m.coring, &n.coring) {
        return Err(Error::structural("cotensor", "comodules over different corings"));
    }
    let c = &m.coring;
    let mn = Tensor::pair(&m.carrier, &n.carrier)?;
    let mcn = Tensor::triple(&m.carrier, c.carrier(), &n.carrier)?;
    let omega = mn.map_basis(mcn.dim(), |t| {
        let mut acc = Acc::new();
        for (x, y, s) in m.coaction_terms(t[0]) {
            acc.add_scaled(&mcn.pure_basis(&[x, y, t[1]]), &s);
        }
        for (x, y, s) in n.coaction_terms(t[1]) {
            acc.add_scaled(&mcn.pure_basis(&[t[0], x, y]), &-&s);
        }
        acc.finish()
    });
    let kernel = crate::linalg::map_kernel(&omega);
    let space = Subspace::new(c.field(), mn.dim(), &kernel);
    Ok(Cotensor { mn, mcn, omega, space })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::linalg::Field;

    #[test]
    fn regular_comodules_pass() {
        let f = Field::Rational;
        for c in [Coring::matrix_coalgebra(f, 2), Coring::trivial(&Algebra::dual_numbers(f))] {
            assert!(check_right_comodule(&RightComodule::regular(&c)).passed());
            assert!(check_left_comodule(&LeftComodule::regular(&c)).passed());
            assert!(check_bicomodule(&Bicomodule::regular(&c)).passed());
        }
    }

    #[test]
    fn row_comodule_and_cotensor() {
        let f = Field::Rational;
        let c = Coring::matrix_coalgebra(f, 2);
        let row = RightComodule::cyclic(&c, &Vector::unit(f, 0)).unwrap();
        assert_eq!(row.dim(), 2);
        assert!(check_right_comodule(&row).passed());
        let col = LeftComodule::cyclic(&c, &Vector::unit(f, 0)).unwrap();
        assert_eq!(col.dim(), 2);
        assert!(check_left_comodule(&col).passed());
        assert_eq!(cotensor(&row, &col).unwrap().dim(), 1);
    }

    #[test]
    fn cotensor_with_coring_recovers_module() {
        let f = Field::Rational;
        let c = Coring::matrix_coalgebra(f, 2);
        let row = RightComodule::cyclic(&c, &Vector::unit(f, 1)).unwrap();
        let ct = cotensor(&row, &LeftComodule::regular(&c)).unwrap();
        assert_eq!(ct.dim(), row.dim());
    }

    #[test]
    fn comodule_endomorphisms() {
        let f = Field::Rational;
        let c = Coring::matrix_coalgebra(f, 2);
        let reg = RightComodule::regular(&c);
        // End^C(C) is the dual algebra, dimension 4
        assert_eq!(right_comodule_homs(&reg, &reg, false).len(), 4);
        let row = RightComodule::cyclic(&c, &Vector::unit(f, 0)).unwrap();
        assert_eq!(right_comodule_homs(&row, &row, false).len(), 1);
        for h in right_comodule_homs(&reg, &row, false) {
            assert!(colinearity_failure_right(&reg, &row, &h).is_none());
        }
    }
}
