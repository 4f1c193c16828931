//! Corings over a finite-dimensional algebra, their morphisms, comodules,
//! cotensor products and dual rings.

mod comodule;
mod dual_ring;

pub use comodule::{
    check_bicomodule, check_left_comodule, check_right_comodule, colinearity_failure_left, colinearity_failure_right,
    cotensor, left_comodule_homs, right_comodule_homs, Bicomodule, Cotensor, LeftComodule, RightComodule,
};
pub use dual_ring::{check_iota, iota_embedding, left_dual_ring, right_dual_ring, DualRing};

use std::sync::{Arc, OnceLock};

use crate::algebra::{same_algebra, Algebra, AlgebraMap};
use crate::bimodule::{bilinearity_failure, Bimodule, Tensor};
use crate::error::{Error, Result};
use crate::linalg::{Acc, Field, LinMap, Vector};
use crate::report::Report;

/// An `A`-coring: an `(A, A)`-bimodule `C` with `Δ: C → C ⊗_A C` and `ε: C → A`.
#[derive(Debug)]
pub struct Coring {
    base: Arc<Algebra>,
    carrier: Arc<Bimodule>,
    cc: Arc<Tensor>,
    /// Rows are `Δ(c_i)` in quotient coordinates of `cc`.
    comult: LinMap,
    counit: LinMap,
    ccc: OnceLock<Arc<Tensor>>,
}

impl Coring {
    /// Builds from `Δ` given in quotient coordinates of `C ⊗_A C`.
    pub fn new(carrier: Arc<Bimodule>, comult: LinMap, counit: LinMap) -> Result<Arc<Coring>> {
        let cc = Tensor::pair(&carrier, &carrier)?;
        Coring::with_tensor(carrier, cc, comult, counit)
    }

    pub fn with_tensor(carrier: Arc<Bimodule>, cc: Arc<Tensor>, comult: LinMap, counit: LinMap) -> Result<Arc<Coring>> {
        if !same_algebra(carrier.left(), carrier.right()) {
            return Err(Error::structural("coring.carrier", "left and right algebras differ"));
        }
        let built_from = |m: &Arc<Bimodule>| Arc::ptr_eq(m, &carrier) || **m == *carrier;
        if cc.factors().len() != 2 || !built_from(cc.factor(0)) || !built_from(cc.factor(1)) {
            return Err(Error::structural("coring.comult_target", "not built from the carrier"));
        }
        let base = carrier.left().clone();
        if comult.src != carrier.dim() || comult.dst != cc.dim() {
            return Err(Error::structural("coring.comult", "shape does not match C → C⊗C"));
        }
        if counit.src != carrier.dim() || counit.dst != base.dim() {
            return Err(Error::structural("coring.counit", "shape does not match C → A"));
        }
        Ok(Arc::new(Coring { base, carrier, cc, comult, counit, ccc: OnceLock::new() }))
    }

    /// Builds from `Δ` given by representatives in the ambient `C ⊗_k C`.
    pub fn from_ambient(carrier: Arc<Bimodule>, comult_ambient: &LinMap, counit: LinMap) -> Result<Arc<Coring>> {
        let cc = Tensor::pair(&carrier, &carrier)?;
        if comult_ambient.dst != cc.ambient_dim() {
            return Err(Error::structural("coring.comult", "representatives must live in C ⊗_k C"));
        }
        let comult = LinMap::from_fn(carrier.field(), carrier.dim(), cc.dim(), |i| cc.project(&comult_ambient.rows[i]));
        Coring::with_tensor(carrier, cc, comult, counit)
    }

    /// `A` with `Δ(a) = a ⊗ 1` and `ε = id`.
    pub fn trivial(a: &Arc<Algebra>) -> Arc<Coring> {
        let f = a.field();
        let c = Bimodule::regular(a);
        let cc = Tensor::pair(&c, &c).expect("regular tensor");
        let comult = LinMap::from_fn(f, a.dim(), cc.dim(), |i| cc.pure(&[&Vector::unit(f, i), a.unit()]));
        let counit = LinMap::identity(f, a.dim());
        Coring::with_tensor(c, cc, comult, counit).expect("trivial coring")
    }

    /// `n × n` matrix coalgebra: `Δ(e_ij) = Σ_k e_ik ⊗ e_kj`, `ε(e_ij) = δ_ij`.
    pub fn matrix_coalgebra(field: Field, n: usize) -> Arc<Coring> {
        let c = Bimodule::vector_space(field, n * n);
        let amb = LinMap::from_fn(field, n * n, n * n * n * n, |ij| {
            let (i, j) = (ij / n, ij % n);
            Vector::from_pairs((0..n).map(|k| ((i * n + k) * n * n + k * n + j, field.one())))
        });
        let counit = LinMap::from_fn(field, n * n, 1, |ij| if ij / n == ij % n { Vector::unit(field, 0) } else { Vector::zero() });
        Coring::from_ambient(c, &amb, counit).expect("matrix coalgebra")
    }

    /// `k^n` spanned by grouplike elements.
    pub fn grouplike(field: Field, n: usize) -> Arc<Coring> {
        let c = Bimodule::vector_space(field, n);
        let amb = LinMap::from_fn(field, n, n * n, |i| Vector::unit(field, i * n + i));
        let counit = LinMap::from_fn(field, n, 1, |_| Vector::unit(field, 0));
        Coring::from_ambient(c, &amb, counit).expect("grouplike coalgebra")
    }

    /// Divided powers `x_0, …, x_{n-1}`: `Δ(x_m) = Σ x_i ⊗ x_{m-i}`, `ε(x_m) = δ_{m0}`.
    pub fn divided_powers(field: Field, n: usize) -> Arc<Coring> {
        let c = Bimodule::vector_space(field, n);
        let amb = LinMap::from_fn(field, n, n * n, |m| Vector::from_pairs((0..=m).map(|i| (i * n + (m - i), field.one()))));
        let counit = LinMap::from_fn(field, n, 1, |m| if m == 0 { Vector::unit(field, 0) } else { Vector::zero() });
        Coring::from_ambient(c, &amb, counit).expect("divided powers")
    }

    pub fn field(&self) -> Field {
        self.base.field()
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn base(&self) -> &Arc<Algebra> {
        &self.base
    }

    pub fn carrier(&self) -> &Arc<Bimodule> {
        &self.carrier
    }

    /// `C ⊗_A C`.
    pub fn cc(&self) -> &Arc<Tensor> {
        &self.cc
    }

    /// `C ⊗_A C ⊗_A C`, built on first use.
    pub fn ccc(&self) -> &Arc<Tensor> {
        self.ccc.get_or_init(|| Tensor::triple(&self.carrier, &self.carrier, &self.carrier).expect("triple tensor"))
    }

    pub fn comult(&self) -> &LinMap {
        &self.comult
    }

    pub fn counit(&self) -> &LinMap {
        &self.counit
    }

    pub fn delta(&self, c: &Vector) -> Vector {
        self.comult.apply(c)
    }

    pub fn eps(&self, c: &Vector) -> Vector {
        self.counit.apply(c)
    }

    /// Sweedler terms `(c_(1), c_(2), coefficient)` of `Δ(e_i)` on basis indices.
    pub fn delta_terms(&self, i: usize) -> Vec<(usize, usize, crate::linalg::Scalar)> {
        self.cc.expand(&self.comult.rows[i]).into_iter().map(|(t, c)| (t[0], t[1], c)).collect()
    }

    /// `Δ` on ambient representatives.
    pub fn comult_ambient(&self) -> LinMap {
        LinMap::from_fn(self.field(), self.dim(), self.cc.ambient_dim(), |i| self.cc.lift(&self.comult.rows[i]))
    }

    /// Direct sum with block-diagonal structure.
    pub fn direct_sum(c: &Arc<Coring>, d: &Arc<Coring>) -> Result<Arc<Coring>> {
        if !same_algebra(&c.base, &d.base) {
            return Err(Error::structural("coring.direct_sum", "different base algebras"));
        }
        let f = c.field();
        let carrier = Bimodule::direct_sum_all(&[c.carrier.clone(), d.carrier.clone()]);
        let cc = Tensor::pair(&carrier, &carrier)?;
        let n = c.dim();
        let comult = LinMap::from_fn(f, carrier.dim(), cc.dim(), |i| {
            let (src, off) = if i < n { (c, 0) } else { (d, n) };
            let mut acc = Acc::new();
            for (x, y, s) in src.delta_terms(i - off) {
                acc.add_scaled(&cc.pure_basis(&[x + off, y + off]), &s);
            }
            acc.finish()
        });
        let counit = LinMap::from_fn(f, carrier.dim(), c.base.dim(), |i| {
            if i < n {
                c.counit.rows[i].clone()
            } else {
                d.counit.rows[i - n].clone()
            }
        });
        Coring::with_tensor(carrier, cc, comult, counit)
    }

    /// `(Δ ⊗ C)(e_i ⊗ e_j)` in `C ⊗ C ⊗ C`.
    fn delta_left(&self, i: usize, j: usize) -> Vector {
        let ccc = self.ccc();
        let mut acc = Acc::new();
        for (x, y, s) in self.delta_terms(i) {
            acc.add_scaled(&ccc.pure_basis(&[x, y, j]), &s);
        }
        acc.finish()
    }

    /// `(C ⊗ Δ)(e_i ⊗ e_j)` in `C ⊗ C ⊗ C`.
    fn delta_right(&self, i: usize, j: usize) -> Vector {
        let ccc = self.ccc();
        let mut acc = Acc::new();
        for (x, y, s) in self.delta_terms(j) {
            acc.add_scaled(&ccc.pure_basis(&[i, x, y]), &s);
        }
        acc.finish()
    }
}

/// Pointer or structural equality.
pub fn same_coring(a: &Arc<Coring>, b: &Arc<Coring>) -> bool {
    Arc::ptr_eq(a, b) || (a.carrier == b.carrier && a.comult == b.comult && a.counit == b.counit)
}

/// First basis index where two maps into the same space differ.
fn first_mismatch(n: usize, mut lhs: impl FnMut(usize) -> Vector, mut rhs: impl FnMut(usize) -> Vector) -> Option<Vec<usize>> {
    (0..n).find(|&i| lhs(i) != rhs(i)).map(|i| vec![i])
}

pub fn check_coring(c: &Coring) -> Report {
    let mut r = Report::new("coring");
    let f = c.field();
    let reg = Bimodule::regular(&c.base);
    r.record("counit_bilinear", bilinearity_failure(&c.carrier, &reg, &c.counit));
    r.record("comult_bilinear", bilinearity_failure(&c.carrier, c.cc.module(), &c.comult));
    let coassoc = first_mismatch(
        c.dim(),
        |i| {
            let mut acc = Acc::new();
            for (x, y, s) in c.delta_terms(i) {
                acc.add_scaled(&c.delta_left(x, y), &s);
            }
            acc.finish()
        },
        |i| {
            let mut acc = Acc::new();
            for (x, y, s) in c.delta_terms(i) {
                acc.add_scaled(&c.delta_right(x, y), &s);
            }
            acc.finish()
        },
    );
    r.record("coassociative", coassoc);
    let e = |i| Vector::unit(f, i);
    let left = first_mismatch(c.dim(), |i| counit_left(c, &c.comult.rows[i]), e);
    r.record("left_counit", left);
    let right = first_mismatch(c.dim(), |i| counit_right(c, &c.comult.rows[i]), e);
    r.record("right_counit", right);
    r
}

/// `(ε ⊗ C)(t)` for `t ∈ C ⊗_A C`.
pub fn counit_left(c: &Coring, t: &Vector) -> Vector {
    let mut acc = Acc::new();
    for (tp, s) in c.cc.expand(t) {
        acc.add_scaled(&c.carrier.act_left(&c.counit.rows[tp[0]], &Vector::unit(c.field(), tp[1])), &s);
    }
    acc.finish()
}

/// `(C ⊗ ε)(t)` for `t ∈ C ⊗_A C`.
pub fn counit_right(c: &Coring, t: &Vector) -> Vector {
    let mut acc = Acc::new();
    for (tp, s) in c.cc.expand(t) {
        acc.add_scaled(&c.carrier.act_right(&Vector::unit(c.field(), tp[0]), &c.counit.rows[tp[1]]), &s);
    }
    acc.finish()
}

/// Coring morphism over a common base.
#[derive(Clone, Debug)]
pub struct CoringMorphism {
    pub source: Arc<Coring>,
    pub target: Arc<Coring>,
    pub map: LinMap,
}

impl CoringMorphism {
    pub fn new(source: Arc<Coring>, target: Arc<Coring>, map: LinMap) -> Result<Self> {
        if !same_algebra(&source.base, &target.base) {
            return Err(Error::structural("coring_morphism", "corings over different bases"));
        }
        if map.src != source.dim() || map.dst != target.dim() {
            return Err(Error::structural("coring_morphism.map", "shape mismatch"));
        }
        Ok(CoringMorphism { source, target, map })
    }

    pub fn identity(c: &Arc<Coring>) -> Self {
        CoringMorphism { source: c.clone(), target: c.clone(), map: LinMap::identity(c.field(), c.dim()) }
    }

    /// `ε: C → A` as a morphism into the trivial coring.
    pub fn counit_of(c: &Arc<Coring>) -> Self {
        CoringMorphism { source: c.clone(), target: Coring::trivial(&c.base), map: c.counit.clone() }
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &CoringMorphism) -> CoringMorphism {
        CoringMorphism { source: self.source.clone(), target: g.target.clone(), map: self.map.then(&g.map) }
    }

    /// `(γ ⊗ γ)(t)` for `t` in the source `C ⊗_A C`.
    pub fn tensor_square(&self, t: &Vector) -> Vector {
        let mut acc = Acc::new();
        for (tp, s) in self.source.cc.expand(t) {
            acc.add_scaled(&self.target.cc.pure(&[&self.map.rows[tp[0]], &self.map.rows[tp[1]]]), &s);
        }
        acc.finish()
    }
}

pub fn check_coring_morphism(m: &CoringMorphism) -> Report {
    let mut r = Report::new("coring_morphism");
    let (s, t) = (&m.source, &m.target);
    r.record("bilinear", bilinearity_failure(&s.carrier, &t.carrier, &m.map));
    let comult = first_mismatch(s.dim(), |i| t.delta(&m.map.rows[i]), |i| m.tensor_square(&s.comult.rows[i]));
    r.record("comult", comult);
    let counit = first_mismatch(s.dim(), |i| t.eps(&m.map.rows[i]), |i| s.counit.rows[i].clone());
    r.record("counit", counit);
    r
}

/// A morphism `(γ, α)` from a `B`-coring `D` to an `A`-coring `C`.
#[derive(Clone, Debug)]
pub struct GeneralCoringMorphism {
    pub source: Arc<Coring>,
    pub target: Arc<Coring>,
    pub alpha: AlgebraMap,
    /// `γ: D → C`, `B`-bilinear for the restricted structure on `C`.
    pub gamma: LinMap,
}

impl GeneralCoringMorphism {
    pub fn new(source: Arc<Coring>, target: Arc<Coring>, alpha: AlgebraMap, gamma: LinMap) -> Result<Self> {
        if !same_algebra(&alpha.source, &source.base) || !same_algebra(&alpha.target, &target.base) {
            return Err(Error::structural("general_morphism.alpha", "does not connect the bases"));
        }
        if gamma.src != source.dim() || gamma.dst != target.dim() {
            return Err(Error::structural("general_morphism.gamma", "shape mismatch"));
        }
        let restricted = target.carrier.restrict(Some(&alpha), Some(&alpha));
        if let Some(w) = bilinearity_failure(&source.carrier, &restricted, &gamma) {
            return Err(Error::structural(format!("general_morphism.gamma{w:?}"), "not B-bilinear"));
        }
        Ok(GeneralCoringMorphism { source, target, alpha, gamma })
    }

    pub fn identity(c: &Arc<Coring>) -> Self {
        GeneralCoringMorphism {
            source: c.clone(),
            target: c.clone(),
            alpha: AlgebraMap::identity(c.base.clone()),
            gamma: LinMap::identity(c.field(), c.dim()),
        }
    }
}

/// Checks `Δ_C ∘ γ = χ ∘ (γ ⊗_B γ) ∘ Δ_D` and `ε_C ∘ γ = α ∘ ε_D`.
pub fn check_general_morphism(m: &GeneralCoringMorphism) -> Report {
    let mut r = Report::new("general_coring_morphism");
    let (d, c) = (&m.source, &m.target);
    let restricted = c.carrier.restrict(Some(&m.alpha), Some(&m.alpha));
    r.record("bilinear", bilinearity_failure(&d.carrier, &restricted, &m.gamma));
    let comult = first_mismatch(d.dim(), |i| c.delta(&m.gamma.rows[i]), |i| {
        let mut acc = Acc::new();
        for (x, y, s) in d.delta_terms(i) {
            acc.add_scaled(&c.cc.pure(&[&m.gamma.rows[x], &m.gamma.rows[y]]), &s);
        }
        acc.finish()
    });
    r.record("comult", comult);
    let counit = first_mismatch(d.dim(), |i| c.eps(&m.gamma.rows[i]), |i| m.alpha.apply(&d.counit.rows[i]));
    r.record("counit", counit);
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_corings_pass() {
        for f in [Field::Rational, Field::Prime(5)] {
            for c in [
                Coring::trivial(&Algebra::dual_numbers(f)),
                Coring::trivial(&Algebra::matrix(f, 2)),
                Coring::matrix_coalgebra(f, 2),
                Coring::grouplike(f, 3),
                Coring::divided_powers(f, 3),
            ] {
                let r = check_coring(&c);
                assert!(r.passed(), "{r}");
            }
        }
    }

    #[test]
    fn broken_counit_is_caught() {
        let f = Field::Rational;
        let good = Coring::matrix_coalgebra(f, 2);
        let mut counit = good.counit().clone();
        counit.rows[1] = Vector::unit(f, 0);
        let bad = Coring::with_tensor(good.carrier().clone(), good.cc().clone(), good.comult().clone(), counit).unwrap();
        let r = check_coring(&bad);
        assert!(!r.passed());
        assert!(r.failed_checks().iter().any(|c| c.name.contains("counit")));
    }

    #[test]
    fn counit_is_a_morphism_to_the_trivial_coring() {
        let f = Field::Rational;
        for c in [Coring::matrix_coalgebra(f, 2), Coring::trivial(&Algebra::product(f, 2))] {
            assert!(check_coring_morphism(&CoringMorphism::counit_of(&c)).passed());
        }
    }

    #[test]
    fn direct_sum_passes() {
        let f = Field::Rational;
        let s = Coring::direct_sum(&Coring::matrix_coalgebra(f, 2), &Coring::grouplike(f, 1)).unwrap();
        assert_eq!(s.dim(), 5);
        assert!(check_coring(&s).passed());
    }
}
