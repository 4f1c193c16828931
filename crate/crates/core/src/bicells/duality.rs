use std::sync::Arc;

use crate::bimodule::{dual_basis, left_dual, Bimodule, DualBasis, DualModule, ProjectiveModule};
use crate::error::Result;
use crate::linalg::{Acc, LinMap, Vector};
use crate::report::Report;

use super::{first_mismatch, LeftTwoCell, OneCellLeft, OneCellRight, TwoCell};

/// `*Ξ = Hom_A(Ξ, A)` of an `(A, B)`-bimodule with a left dual basis.
#[derive(Clone, Debug)]
pub struct LeftDual {
    pub dual: Arc<DualModule>,
    pub basis: DualBasis,
}

impl LeftDual {
    pub fn new(xi: &Arc<Bimodule>) -> Result<Self> {
        let dual = left_dual(xi);
        let basis = dual_basis(&dual)?;
        Ok(LeftDual { dual, basis })
    }

    pub fn module(&self) -> &Arc<Bimodule> {
        self.dual.module()
    }
}

/// `(Σ*, s_*)` with `s_*(s* ⊗ d) = Σ_i (s* ⊗ C)(s(d ⊗ e_i)) ⊗ e_i*`.
pub fn dual_one_cell(c: &OneCellRight) -> Result<OneCellLeft> {
    let p = ProjectiveModule::new(&c.sigma)?;
    let f = c.sigma.field();
    let e = |i| Vector::unit(f, i);
    let carrier = c.source.carrier();
    OneCellLeft::from_formula(c.source.clone(), c.target.clone(), p.dual_module().clone(), |cod, t| {
        let mut acc = Acc::new();
        for (ei, fi) in p.basis.elems.iter().zip(&p.basis.duals) {
            let img = c.apply_to(t[1], ei);
            for (tp, k) in c.codomain.expand(&img) {
                let val = carrier.act_left(&p.eval(&e(t[0]), &e(tp[0])), &e(tp[1]));
                acc.add_scaled(&cod.pure(&[&val, fi]), &k);
            }
        }
        acc.finish()
    })
}

/// `a_*: Σ̃* ⊗ D → Σ*`, `t* ⊗ d ↦ [s ↦ t*(a(d ⊗ s))]`, from the dual of the
/// target 1-cell to the dual of the source 1-cell.
pub fn dual_two_cell(a: &TwoCell) -> Result<LeftTwoCell> {
    let src = dual_one_cell(&a.target)?;
    let dst = dual_one_cell(&a.source)?;
    let ps = ProjectiveModule::new(&a.source.sigma)?;
    let pt = ProjectiveModule::new(&a.target.sigma)?;
    let f = a.map.field;
    let e = |i| Vector::unit(f, i);
    let vals = a.source.source.base().dim();
    let map = src.domain.map_basis(dst.xi.dim(), |t| {
        let m = LinMap::from_fn(f, a.source.sigma.dim(), vals, |s| pt.eval(&e(t[0]), &a.apply_to(t[1], &e(s))));
        ps.dual.coords(&m).expect("dual two-cell is right linear")
    });
    LeftTwoCell::new(src, dst, map)
}

/// `(*Ξ, _*x)` with `_*x(d ⊗ g) = Σ_j g_j ⊗ (C ⊗ g)(x(f_j ⊗ d))`.
pub fn left_dual_one_cell(c: &OneCellLeft) -> Result<OneCellRight> {
    let ld = LeftDual::new(&c.xi)?;
    Ok(left_dual_one_cell_with(c, &ld))
}

fn left_dual_one_cell_with(c: &OneCellLeft, ld: &LeftDual) -> OneCellRight {
    let f = c.xi.field();
    let e = |i| Vector::unit(f, i);
    let carrier = c.source.carrier();
    OneCellRight::from_formula(c.source.clone(), c.target.clone(), ld.module().clone(), |cod, t| {
        let mut acc = Acc::new();
        for (fj, gj) in ld.basis.elems.iter().zip(&ld.basis.duals) {
            let img = c.apply_to(fj, t[0]);
            for (tp, k) in c.codomain.expand(&img) {
                let val = carrier.act_right(&e(tp[0]), &ld.dual.eval(&e(t[1]), &e(tp[1])));
                acc.add_scaled(&cod.pure(&[gj, &val]), &k);
            }
        }
        acc.finish()
    })
    .expect("left dual cell shape")
}

/// `_*b: D ⊗ *Ξ̃ → *Ξ`, `d ⊗ g ↦ [ξ ↦ g(b(ξ ⊗ d))]`.
pub fn left_dual_two_cell(b: &LeftTwoCell) -> Result<TwoCell> {
    let lt = LeftDual::new(&b.target.xi)?;
    let ls = LeftDual::new(&b.source.xi)?;
    let src = left_dual_one_cell_with(&b.target, &lt);
    let dst = left_dual_one_cell_with(&b.source, &ls);
    let f = b.map.field;
    let e = |i| Vector::unit(f, i);
    let vals = b.source.source.base().dim();
    let map = src.domain.map_basis(dst.sigma.dim(), |t| {
        let m = LinMap::from_fn(f, b.source.xi.dim(), vals, |x| {
            let v = b.map.apply(&b.source.domain.pure_basis(&[x, t[0]]));
            lt.dual.eval(&e(t[1]), &v)
        });
        ls.dual.coords(&m).expect("left dual two-cell is left linear")
    });
    TwoCell::new(src, dst, map)
}

/// `ev: Σ → *(Σ*)`, `s ↦ [f ↦ f(s)]`, with the double dual it lands in.
pub fn evaluation_iso(sigma: &Arc<Bimodule>) -> Result<(LinMap, LeftDual)> {
    let p = ProjectiveModule::new(sigma)?;
    let dd = LeftDual::new(p.dual_module())?;
    let f = sigma.field();
    let e = |i| Vector::unit(f, i);
    let vals = sigma.right().dim();
    let ev = LinMap::from_fn(f, sigma.dim(), dd.module().dim(), |s| {
        let m = LinMap::from_fn(f, p.dual.dim(), vals, |q| p.eval(&e(q), &e(s)));
        dd.dual.coords(&m).expect("evaluation is left linear")
    });
    Ok((ev, dd))
}

/// Checks that `ev` is bijective and `_*(s_*) ∘ (D ⊗ ev) = (ev ⊗ C) ∘ s`.
pub fn double_dual_square(c: &OneCellRight) -> Result<Report> {
    let mut r = Report::new("double_dual");
    let (ev, dd) = evaluation_iso(&c.sigma)?;
    r.require("evaluation_bijective", ev.is_invertible());
    let back = left_dual_one_cell_with(&dual_one_cell(c)?, &dd);
    let f = c.sigma.field();
    let e = |i| Vector::unit(f, i);
    let lhs = |q: usize| {
        let t = c.domain.tuple(q);
        back.apply_to(t[0], &ev.rows[t[1]])
    };
    let rhs = |q: usize| {
        let mut acc = Acc::new();
        for (tp, k) in c.codomain.expand(&c.cell.rows[q]) {
            acc.add_scaled(&back.codomain.pure(&[&ev.rows[tp[0]], &e(tp[1])]), &k);
        }
        acc.finish()
    };
    r.record("one_cell_square", first_mismatch(c.domain.dim(), lhs, rhs));
    Ok(r)
}

/// Checks `_*(a_*) ∘ (D ⊗ ev_Σ) = ev_Σ̃ ∘ a`.
pub fn double_dual_two_cell_square(a: &TwoCell) -> Result<Report> {
    let mut r = Report::new("double_dual_two_cell");
    let back = left_dual_two_cell(&dual_two_cell(a)?)?;
    let (ev_s, _) = evaluation_iso(&a.source.sigma)?;
    let (ev_t, _) = evaluation_iso(&a.target.sigma)?;
    let lhs = |q: usize| {
        let t = a.source.domain.tuple(q);
        back.apply_to(t[0], &ev_s.rows[t[1]])
    };
    let rhs = |q: usize| ev_t.apply(&a.map.rows[q]);
    r.record("two_cell_square", first_mismatch(a.source.domain.dim(), lhs, rhs));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::bicells::{check_left_two_cell, check_one_cell_left, check_one_cell_right, check_two_cell};
    use crate::coring::Coring;
    use crate::linalg::Field;

    #[test]
    fn identity_cell_duals() {
        let f = Field::Rational;
        for c in [Coring::matrix_coalgebra(f, 2), Coring::trivial(&Algebra::dual_numbers(f))] {
            let id = OneCellRight::identity(&c);
            let l = dual_one_cell(&id).unwrap();
            assert!(check_one_cell_left(&l).passed());
            let back = left_dual_one_cell(&l).unwrap();
            assert!(check_one_cell_right(&back).passed());
            assert!(double_dual_square(&id).unwrap().passed());
            let a = TwoCell::identity(&id);
            let b = dual_two_cell(&a).unwrap();
            assert!(check_left_two_cell(&b).passed());
            assert!(check_two_cell(&left_dual_two_cell(&b).unwrap()).passed());
            assert!(double_dual_two_cell_square(&a).unwrap().passed());
        }
    }
}
