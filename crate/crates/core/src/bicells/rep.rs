//! Arrows between module-morphisms: `A`-bilinear `f: Σ* ⊗_B D ⊗_B Σ̃ → A`.

use std::sync::Arc;

use crate::bimodule::{bilinearity_failure, hom_space, Bimodule, Tensor};
use crate::coring::same_coring;
use crate::error::{Error, Result};
use crate::linalg::{combination_kernel, Acc, LinMap, Vector};
use crate::report::Report;

use super::{dual_one_cell, first_mismatch, LeftTwoCell, ModuleMorphism};

/// `Σ* ⊗_B D ⊗_B Σ̃`, the domain of arrows from `src` to `dst`.
pub fn rep_domain(src: &ModuleMorphism, dst: &ModuleMorphism) -> Result<Arc<Tensor>> {
    if !same_coring(src.source(), dst.source()) || !same_coring(src.target(), dst.target()) {
        return Err(Error::structural("rep", "module-morphisms connect different corings"));
    }
    Tensor::triple(src.module().dual_module(), src.source().carrier(), dst.sigma())
}

fn value(dom: &Tensor, f: &LinMap, a: &Vector, d: usize, b: &Vector) -> Vector {
    let fld = f.field;
    f.apply(&dom.pure(&[a, &Vector::unit(fld, d), b]))
}

/// Both sides of the intertwining condition on each basis tuple.
fn rep_sides(src: &ModuleMorphism, dst: &ModuleMorphism, dom: &Tensor, f: &LinMap) -> (Vec<Vector>, Vec<Vector>) {
    let d = src.source();
    let c = src.target().carrier();
    let fld = d.field();
    let e = |i| Vector::unit(fld, i);
    let (ps, pt) = (src.module(), dst.module());
    let mut lhs = Vec::with_capacity(dom.dim());
    let mut rhs = Vec::with_capacity(dom.dim());
    for q in 0..dom.dim() {
        let t = dom.tuple(q);
        let (mut l, mut r) = (Acc::new(), Acc::new());
        for (d1, d2, k) in d.delta_terms(t[1]) {
            for (ej, fj) in pt.basis.elems.iter().zip(&pt.basis.duals) {
                let x = value(dom, f, &e(t[0]), d1, ej);
                l.add_scaled(&c.act_left(&x, &dst.apply(fj, d2, &e(t[2]))), &k);
            }
            for (ei, fi) in ps.basis.elems.iter().zip(&ps.basis.duals) {
                let y = value(dom, f, fi, d2, &e(t[2]));
                r.add_scaled(&c.act_right(&src.apply(&e(t[0]), d1, ei), &y), &k);
            }
        }
        lhs.push(l.finish());
        rhs.push(r.finish());
    }
    (lhs, rhs)
}

/// `Σ_j f(s* ⊗ d_(1) ⊗ ẽ_j) σ̃(ẽ_j* ⊗ d_(2) ⊗ s̃) = Σ_i σ(s* ⊗ d_(1) ⊗ e_i) f(e_i* ⊗ d_(2) ⊗ s̃)`.
pub fn rep_condition_check(src: &ModuleMorphism, dst: &ModuleMorphism, f: &LinMap) -> Result<Report> {
    let dom = rep_domain(src, dst)?;
    let a = src.target().base();
    if f.src != dom.dim() || f.dst != a.dim() {
        return Err(Error::structural("rep.arrow", "shape does not match Σ* ⊗ D ⊗ Σ̃ → A"));
    }
    let mut r = Report::new("rep_arrow");
    r.record("bilinear", bilinearity_failure(dom.module(), &Bimodule::regular(a), f));
    let (lhs, rhs) = rep_sides(src, dst, &dom, f);
    r.record("intertwines", first_mismatch(dom.dim(), |q| lhs[q].clone(), |q| rhs[q].clone()));
    Ok(r)
}

/// Basis of all arrows from `src` to `dst`.
pub fn rep_arrows(src: &ModuleMorphism, dst: &ModuleMorphism) -> Result<Vec<LinMap>> {
    let dom = rep_domain(src, dst)?;
    let a = src.target().base();
    let candidates = hom_space(dom.module(), &Bimodule::regular(a), true, true);
    Ok(combination_kernel(&candidates, |f| {
        let (l, r) = rep_sides(src, dst, &dom, f);
        l.iter().zip(&r).map(|(x, y)| x.sub(y)).collect()
    }))
}

/// `ε_{Σ[D]}`, the identity arrow.
pub fn rep_identity(m: &ModuleMorphism) -> LinMap {
    m.ext.coring.counit().clone()
}

/// `(g ⋄ f)(s* ⊗ d ⊗ ŝ) = Σ_j f(s* ⊗ d_(1) ⊗ ẽ_j) g(ẽ_j* ⊗ d_(2) ⊗ ŝ)`.
pub fn rep_compose(a: &ModuleMorphism, b: &ModuleMorphism, c: &ModuleMorphism, f: &LinMap, g: &LinMap) -> Result<LinMap> {
    let dom_f = rep_domain(a, b)?;
    let dom_g = rep_domain(b, c)?;
    let dom = rep_domain(a, c)?;
    let alg = a.target().base();
    let d = a.source();
    let fld = alg.field();
    let e = |i| Vector::unit(fld, i);
    let pb = b.module();
    Ok(dom.map_basis(alg.dim(), |t| {
        let mut acc = Acc::new();
        for (d1, d2, k) in d.delta_terms(t[1]) {
            for (ej, fj) in pb.basis.elems.iter().zip(&pb.basis.duals) {
                let x = value(&dom_f, f, &e(t[0]), d1, ej);
                let y = value(&dom_g, g, fj, d2, &e(t[2]));
                acc.add_scaled(&alg.mul(&x, &y), &k);
            }
        }
        acc.finish()
    }))
}

/// The left 2-cell `a(s* ⊗ d) = f(s* ⊗ d ⊗ -)` between the dual 1-cells.
pub fn rep_to_left_two_cell(src: &ModuleMorphism, dst: &ModuleMorphism, f: &LinMap) -> Result<LeftTwoCell> {
    let dom = rep_domain(src, dst)?;
    let ls = dual_one_cell(&super::mm_to_one_cell(src)?)?;
    let lt = dual_one_cell(&super::mm_to_one_cell(dst)?)?;
    let fld = f.field;
    let vals = src.target().base().dim();
    let pt = dst.module();
    let map = ls.domain.map_basis(lt.xi.dim(), |t| {
        let m = LinMap::from_fn(fld, dst.sigma().dim(), vals, |s| f.apply(&dom.pure_basis(&[t[0], t[1], s])));
        pt.dual.coords(&m).expect("arrow is right linear")
    });
    LeftTwoCell::new(ls, lt, map)
}
