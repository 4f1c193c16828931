use std::sync::Arc;

use super::{base_ext_by_module, check_coring_iso, coring_functor_on_morphism, Extension};
use crate::bimodule::{right_dual, Bimodule, DualBasis, DualSide, ProjectiveModule, Tensor};
use crate::coring::{Coring, CoringMorphism};
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::report::Report;

/// `φ: Σ[Ξ[D]] → (Ξ ⊗_B Σ)[D]` together with both sides.
#[derive(Clone, Debug)]
pub struct CompositionIso {
    pub inner: Extension,
    pub outer: Extension,
    pub product: Arc<Tensor>,
    pub combined: Extension,
    pub phi: CoringMorphism,
}

/// `Σ` is a `(B, A)`-bimodule, `Ξ` a `(C, B)`-bimodule and `D` a `C`-coring.
pub fn composition_iso(sigma: &Arc<Bimodule>, xi: &Arc<Bimodule>, d: &Arc<Coring>) -> Result<CompositionIso> {
    let ps = ProjectiveModule::new(sigma)?;
    let px = ProjectiveModule::new(xi)?;
    composition_iso_with(&ps, &px, d)
}

pub fn composition_iso_with(ps: &ProjectiveModule, px: &ProjectiveModule, d: &Arc<Coring>) -> Result<CompositionIso> {
    let f = d.field();
    let e = |i| Vector::unit(f, i);
    let inner = base_ext_by_module(d, px)?;
    let outer = base_ext_by_module(&inner.coring, ps)?;
    let product = Tensor::pair(&px.sigma, &ps.sigma)?;
    let pdual = right_dual(product.module());
    let a_dim = ps.sigma.right().dim();
    // x ⊗ s ↦ s*(x*(x) s)
    let pair_dual = |s_star: &Vector, x_star: &Vector| -> Result<Vector> {
        let m = product.map_basis(a_dim, |t| ps.eval(s_star, &ps.sigma.act_left(&px.eval(x_star, &e(t[0])), &e(t[1]))));
        pdual.coords(&m).ok_or_else(|| Error::structural("composition_iso", "pairing is not right linear"))
    };
    let mut elems = Vec::new();
    let mut duals = Vec::new();
    for (fk, fks) in px.basis.elems.iter().zip(&px.basis.duals) {
        for (ei, eis) in ps.basis.elems.iter().zip(&ps.basis.duals) {
            elems.push(product.pure(&[fk, ei]));
            duals.push(pair_dual(eis, fks)?);
        }
    }
    let pm = ProjectiveModule::with_basis(pdual.clone(), DualBasis { side: DualSide::Right, elems, duals })?;
    let combined = base_ext_by_module(d, &pm)?;
    let nd = ps.dual.dim();
    let nx = px.dual.dim();
    let mut pairs = Vec::with_capacity(nd * nx);
    for p in 0..nd {
        for u in 0..nx {
            pairs.push(pair_dual(&e(p), &e(u))?);
        }
    }
    let map = outer.parts.map_basis(combined.dim(), |t| {
        let q = inner.parts.tuple_of(&e(t[1]));
        let mut out = Vector::zero();
        for (tq, s) in q {
            let v = combined.parts.pure(&[&pairs[t[0] * nx + tq[0]], &e(tq[1]), &product.pure(&[&e(tq[2]), &e(t[2])])]);
            out = out.add(&v.scale(&s));
        }
        out
    });
    let phi = CoringMorphism::new(outer.coring.clone(), combined.coring.clone(), map)?;
    Ok(CompositionIso { inner, outer, product, combined, phi })
}

impl CompositionIso {
    pub fn check(&self) -> Report {
        let mut r = check_coring_iso(&self.phi);
        r.subject = "composition_iso".into();
        r
    }

    /// `φ' ∘ Σ[Ξ[g]] = (Ξ ⊗ Σ)[g] ∘ φ` for `g: D → D'`.
    pub fn natural_against(&self, other: &CompositionIso, g: &CoringMorphism) -> Result<bool> {
        let xg = coring_functor_on_morphism(&self.inner, &other.inner, g)?;
        let sxg = coring_functor_on_morphism(&self.outer, &other.outer, &xg)?;
        let cg = coring_functor_on_morphism(&self.combined, &other.combined, g)?;
        Ok(sxg.map.then(&other.phi.map) == self.phi.map.then(&cg.map))
    }
}
