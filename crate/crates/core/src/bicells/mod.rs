//! 1-cells and 2-cells between corings, in right and left form, with duality,
//! module-morphisms and horizontal composition.

mod duality;
mod horizontal;
mod module_morphism;
mod rep;
mod two_cell;

pub use duality::{
    double_dual_square, double_dual_two_cell_square, dual_one_cell, dual_two_cell, evaluation_iso, left_dual_one_cell,
    left_dual_two_cell, LeftDual,
};
pub use horizontal::{hcompose_one_cells, hcompose_two_cells, HorizontalComposite};
pub use module_morphism::{check_module_morphism, mm_to_one_cell, one_cell_to_mm, ModuleMorphism};
pub use rep::{rep_arrows, rep_compose, rep_condition_check, rep_domain, rep_identity, rep_to_left_two_cell};
pub use two_cell::{
    check_left_two_cell, check_two_cell, two_cell_reduce, two_cell_unreduce, two_cells, LeftTwoCell, TwoCell,
};

use std::sync::Arc;

use crate::algebra::same_algebra;
use crate::bimodule::{bilinearity_failure, Bimodule, Tensor};
use crate::coring::{Bicomodule, Coring, LeftComodule, RightComodule};
use crate::error::{Error, Result};
use crate::linalg::{Acc, LinMap, Scalar, Vector};
use crate::report::Report;

/// `(Σ, s)` with `Σ` a `(B, A)`-bimodule and `s: D ⊗_B Σ → Σ ⊗_A C`; a 1-cell
/// from the `A`-coring `C` to the `B`-coring `D`.
#[derive(Clone, Debug)]
pub struct OneCellRight {
    pub source: Arc<Coring>,
    pub target: Arc<Coring>,
    pub sigma: Arc<Bimodule>,
    /// `D ⊗_B Σ`.
    pub domain: Arc<Tensor>,
    /// `Σ ⊗_A C`.
    pub codomain: Arc<Tensor>,
    pub cell: LinMap,
}

/// `(Ξ, x)` with `Ξ` an `(A, B)`-bimodule and `x: Ξ ⊗_B D → C ⊗_A Ξ`.
#[derive(Clone, Debug)]
pub struct OneCellLeft {
    pub source: Arc<Coring>,
    pub target: Arc<Coring>,
    pub xi: Arc<Bimodule>,
    /// `Ξ ⊗_B D`.
    pub domain: Arc<Tensor>,
    /// `C ⊗_A Ξ`.
    pub codomain: Arc<Tensor>,
    pub cell: LinMap,
}

type Terms = Vec<(usize, usize, Scalar)>;

fn pair_terms(t: &Tensor, v: &Vector) -> Terms {
    t.expand(v).into_iter().map(|(tp, s)| (tp[0], tp[1], s)).collect()
}

impl OneCellRight {
    pub fn new(source: Arc<Coring>, target: Arc<Coring>, sigma: Arc<Bimodule>, cell: LinMap) -> Result<Self> {
        if !same_algebra(sigma.left(), target.base()) || !same_algebra(sigma.right(), source.base()) {
            return Err(Error::structural("one_cell.sigma", "bimodule does not match the coring bases"));
        }
        let domain = Tensor::pair(target.carrier(), &sigma)?;
        let codomain = Tensor::pair(&sigma, source.carrier())?;
        if cell.src != domain.dim() || cell.dst != codomain.dim() {
            return Err(Error::structural("one_cell.cell", "shape does not match D⊗Σ → Σ⊗C"));
        }
        Ok(OneCellRight { source, target, sigma, domain, codomain, cell })
    }

    /// Builds from a formula on basis tuples `(d, s)` of `D ⊗_B Σ`.
    pub fn from_formula(
        source: Arc<Coring>,
        target: Arc<Coring>,
        sigma: Arc<Bimodule>,
        f: impl FnMut(&Tensor, &[usize]) -> Vector,
    ) -> Result<Self> {
        let domain = Tensor::pair(target.carrier(), &sigma)?;
        let codomain = Tensor::pair(&sigma, source.carrier())?;
        let mut f = f;
        let cell = domain.map_basis(codomain.dim(), |t| f(&codomain, t));
        OneCellRight::new(source, target, sigma, cell)
    }

    /// `(A, C ⊗_A A ≅ A ⊗_A C)`.
    pub fn identity(c: &Arc<Coring>) -> Self {
        let a = c.base();
        let f = a.field();
        OneCellRight::from_formula(c.clone(), c.clone(), Bimodule::regular(a), |cod, t| {
            let ca = c.carrier().act_right(&Vector::unit(f, t[0]), &Vector::unit(f, t[1]));
            cod.pure(&[a.unit(), &ca])
        })
        .expect("identity cell")
    }

    /// Terms `(s, c, coefficient)` of `s(e_d ⊗ e_s)`.
    pub fn cell_terms(&self, d: usize, s: usize) -> Terms {
        let v = self.cell.apply(&self.domain.pure_basis(&[d, s]));
        pair_terms(&self.codomain, &v)
    }

    /// `s(d ⊗ v)` for basis `d` and an element `v ∈ Σ`.
    pub fn apply_to(&self, d: usize, v: &Vector) -> Vector {
        let f = self.sigma.field();
        self.cell.apply(&self.domain.pure(&[&Vector::unit(f, d), v]))
    }

    /// `D ⊗_B Σ` as a `(D, C)`-bicomodule, with right coaction `(D ⊗ s)(Δ ⊗ Σ)`.
    pub fn bicomodule(&self) -> Bicomodule {
        let d = &self.target;
        let m = self.domain.module().clone();
        let left_t = Tensor::pair(d.carrier(), &m).expect("tensor");
        let left = self.domain.map_basis(left_t.dim(), |t| {
            let mut acc = Acc::new();
            for (x, y, s) in d.delta_terms(t[0]) {
                acc.add_scaled(&left_t.pure(&[&Vector::unit(d.field(), x), &self.domain.pure_basis(&[y, t[1]])]), &s);
            }
            acc.finish()
        });
        let right_t = Tensor::pair(&m, self.source.carrier()).expect("tensor");
        let right = self.domain.map_basis(right_t.dim(), |t| {
            let mut acc = Acc::new();
            for (x, y, s) in d.delta_terms(t[0]) {
                for (u, c, r) in self.cell_terms(y, t[1]) {
                    let xu = self.domain.pure_basis(&[x, u]);
                    acc.add_scaled(&right_t.pure(&[&xu, &Vector::unit(d.field(), c)]), &(&s * &r));
                }
            }
            acc.finish()
        });
        Bicomodule {
            left: LeftComodule::with_target(d.clone(), m.clone(), left_t, left).expect("shape"),
            right: RightComodule::with_target(self.source.clone(), m, right_t, right).expect("shape"),
        }
    }
}

impl OneCellLeft {
    pub fn new(source: Arc<Coring>, target: Arc<Coring>, xi: Arc<Bimodule>, cell: LinMap) -> Result<Self> {
        if !same_algebra(xi.left(), source.base()) || !same_algebra(xi.right(), target.base()) {
            return Err(Error::structural("left_one_cell.xi", "bimodule does not match the coring bases"));
        }
        let domain = Tensor::pair(&xi, target.carrier())?;
        let codomain = Tensor::pair(source.carrier(), &xi)?;
        if cell.src != domain.dim() || cell.dst != codomain.dim() {
            return Err(Error::structural("left_one_cell.cell", "shape does not match Ξ⊗D → C⊗Ξ"));
        }
        Ok(OneCellLeft { source, target, xi, domain, codomain, cell })
    }

    pub fn from_formula(
        source: Arc<Coring>,
        target: Arc<Coring>,
        xi: Arc<Bimodule>,
        f: impl FnMut(&Tensor, &[usize]) -> Vector,
    ) -> Result<Self> {
        let domain = Tensor::pair(&xi, target.carrier())?;
        let codomain = Tensor::pair(source.carrier(), &xi)?;
        let mut f = f;
        let cell = domain.map_basis(codomain.dim(), |t| f(&codomain, t));
        OneCellLeft::new(source, target, xi, cell)
    }

    /// `(A, A ⊗_A C ≅ C ⊗_A A)`.
    pub fn identity(c: &Arc<Coring>) -> Self {
        let a = c.base();
        let f = a.field();
        OneCellLeft::from_formula(c.clone(), c.clone(), Bimodule::regular(a), |cod, t| {
            let ac = c.carrier().act_left(&Vector::unit(f, t[0]), &Vector::unit(f, t[1]));
            cod.pure(&[&ac, a.unit()])
        })
        .expect("identity cell")
    }

    /// Terms `(c, x, coefficient)` of `x(e_x ⊗ e_d)`.
    pub fn cell_terms(&self, x: usize, d: usize) -> Terms {
        let v = self.cell.apply(&self.domain.pure_basis(&[x, d]));
        pair_terms(&self.codomain, &v)
    }

    pub fn apply_to(&self, v: &Vector, d: usize) -> Vector {
        let f = self.xi.field();
        self.cell.apply(&self.domain.pure(&[v, &Vector::unit(f, d)]))
    }
}

fn first_mismatch(n: usize, mut lhs: impl FnMut(usize) -> Vector, mut rhs: impl FnMut(usize) -> Vector) -> Option<Vec<usize>> {
    (0..n).find(|&i| lhs(i) != rhs(i)).map(|i| vec![i])
}

pub fn check_one_cell_right(c: &OneCellRight) -> Report {
    let mut r = Report::new("one_cell_right");
    let (src, tgt) = (&c.source, &c.target);
    let f = c.sigma.field();
    let e = |i| Vector::unit(f, i);
    r.record("bilinear", bilinearity_failure(c.domain.module(), c.codomain.module(), &c.cell));
    let counit = first_mismatch(
        c.domain.dim(),
        |q| {
            let mut acc = Acc::new();
            for (u, x, s) in pair_terms(&c.codomain, &c.cell.rows[q]) {
                acc.add_scaled(&c.sigma.act_right(&e(u), &src.counit().rows[x]), &s);
            }
            acc.finish()
        },
        |q| {
            let t = c.domain.tuple(q);
            c.sigma.act_left(&tgt.counit().rows[t[0]], &e(t[1]))
        },
    );
    r.record("counit", counit);
    let scc = Tensor::triple(&c.sigma, src.carrier(), src.carrier()).expect("tensor");
    let comult = first_mismatch(
        c.domain.dim(),
        |q| {
            let mut acc = Acc::new();
            for (u, x, s) in pair_terms(&c.codomain, &c.cell.rows[q]) {
                for (y, z, t) in src.delta_terms(x) {
                    acc.add_scaled(&scc.pure_basis(&[u, y, z]), &(&s * &t));
                }
            }
            acc.finish()
        },
        |q| {
            let t = c.domain.tuple(q);
            let mut acc = Acc::new();
            for (d1, d2, s) in tgt.delta_terms(t[0]) {
                for (u, x, a) in c.cell_terms(d2, t[1]) {
                    for (u2, y, b) in c.cell_terms(d1, u) {
                        acc.add_scaled(&scc.pure_basis(&[u2, y, x]), &(&(&s * &a) * &b));
                    }
                }
            }
            acc.finish()
        },
    );
    r.record("comult", comult);
    r
}

pub fn check_one_cell_left(c: &OneCellLeft) -> Report {
    let mut r = Report::new("one_cell_left");
    let (src, tgt) = (&c.source, &c.target);
    let f = c.xi.field();
    let e = |i| Vector::unit(f, i);
    r.record("bilinear", bilinearity_failure(c.domain.module(), c.codomain.module(), &c.cell));
    let counit = first_mismatch(
        c.domain.dim(),
        |q| {
            let mut acc = Acc::new();
            for (x, u, s) in pair_terms(&c.codomain, &c.cell.rows[q]) {
                acc.add_scaled(&c.xi.act_left(&src.counit().rows[x], &e(u)), &s);
            }
            acc.finish()
        },
        |q| {
            let t = c.domain.tuple(q);
            c.xi.act_right(&e(t[0]), &tgt.counit().rows[t[1]])
        },
    );
    r.record("counit", counit);
    let ccx = Tensor::triple(src.carrier(), src.carrier(), &c.xi).expect("tensor");
    let comult = first_mismatch(
        c.domain.dim(),
        |q| {
            let mut acc = Acc::new();
            for (x, u, s) in pair_terms(&c.codomain, &c.cell.rows[q]) {
                for (y, z, t) in src.delta_terms(x) {
                    acc.add_scaled(&ccx.pure_basis(&[y, z, u]), &(&s * &t));
                }
            }
            acc.finish()
        },
        |q| {
            let t = c.domain.tuple(q);
            let mut acc = Acc::new();
            for (d1, d2, s) in tgt.delta_terms(t[1]) {
                for (x, u, a) in c.cell_terms(t[0], d1) {
                    for (y, u2, b) in c.cell_terms(u, d2) {
                        acc.add_scaled(&ccx.pure_basis(&[x, y, u2]), &(&(&s * &a) * &b));
                    }
                }
            }
            acc.finish()
        },
    );
    r.record("comult", comult);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::coring::check_bicomodule;
    use crate::linalg::Field;

    #[test]
    fn identity_cells_pass() {
        let f = Field::Rational;
        for c in [Coring::matrix_coalgebra(f, 2), Coring::trivial(&Algebra::dual_numbers(f))] {
            let id = OneCellRight::identity(&c);
            assert!(check_one_cell_right(&id).passed());
            assert!(check_bicomodule(&id.bicomodule()).passed());
            assert!(check_one_cell_left(&OneCellLeft::identity(&c)).passed());
        }
    }

    #[test]
    fn broken_counit_square_fails() {
        let f = Field::Rational;
        let c = Coring::matrix_coalgebra(f, 2);
        let mut id = OneCellRight::identity(&c);
        id.cell.rows[1] = id.cell.rows[0].clone();
        let r = check_one_cell_right(&id);
        assert!(!r.passed());
        assert_eq!(r.failed_checks()[0].witness, vec![1]);
    }
}
