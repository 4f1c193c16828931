use super::{
    adjunction_counit, adjunction_unit, cotensor_map, cotensor_right_comodule, dual_side, pull_back, push_out_cell,
    push_out_map, push_out_right, PushOutImage,
};
use crate::bicells::{mm_to_one_cell, two_cell_reduce, two_cell_unreduce, hcompose_one_cells, hcompose_two_cells, ModuleMorphism, OneCellRight, TwoCell};
use crate::bimodule::Tensor;
use crate::coring::{
    colinearity_failure_left, colinearity_failure_right, cotensor, right_comodule_homs, Cotensor, RightComodule,
};
use crate::error::{Error, Result};
use crate::linalg::{Acc, LinMap, Vector};
use crate::report::Report;

/// `M □_D (D ⊗_B Σ) → M ⊗_B Σ`, `m ⊗ d ⊗ s ↦ m ε(d) ⊗ s`, and its inverse `m ⊗ s ↦ m_(0) ⊗ m_(1) ⊗ s`.
#[derive(Clone, Debug)]
pub struct CotensorComparison {
    pub cotensor: Cotensor,
    pub comodule: RightComodule,
    pub push: PushOutImage,
    pub map: LinMap,
    pub inverse: LinMap,
}

pub fn cotensor_pushout_iso(mm: &ModuleMorphism, m: &RightComodule) -> Result<CotensorComparison> {
    let cell = mm_to_one_cell(mm)?;
    comparison_for_cell(&cell, m, push_out_right(mm, m)?)
}

fn comparison_for_cell(cell: &OneCellRight, m: &RightComodule, push: PushOutImage) -> Result<CotensorComparison> {
    let d = &cell.target;
    let f = d.field();
    let e = |i| Vector::unit(f, i);
    let bic = cell.bicomodule();
    let ct = cotensor(m, &bic.left)?;
    let comodule = cotensor_right_comodule(&ct, &bic.right)?;
    let rows = ct
        .space
        .basis()
        .iter()
        .map(|b| {
            let mut acc = Acc::new();
            for (tp, c) in ct.mn.expand(b) {
                let ds = cell.domain.tuple(tp[1]);
                let me = m.carrier.act_right(&e(tp[0]), &d.counit().rows[ds[0]]);
                acc.add_scaled(&push.product.pure(&[&me, &e(ds[1])]), &c);
            }
            acc.finish()
        })
        .collect();
    let map = LinMap::from_rows(f, push.product.dim(), rows);
    let rows = (0..push.product.dim())
        .map(|q| {
            let t = push.product.tuple(q);
            let mut acc = Acc::new();
            for (m0, m1, k) in m.coaction_terms(t[0]) {
                acc.add_scaled(&ct.mn.pure(&[&e(m0), &cell.domain.pure_basis(&[m1, t[1]])]), &k);
            }
            ct.coords(&acc.finish()).ok_or_else(|| Error::structural("cotensor_pushout", "inverse leaves the cotensor"))
        })
        .collect::<Result<Vec<_>>>()?;
    let inverse = LinMap::from_rows(f, ct.dim(), rows);
    Ok(CotensorComparison { cotensor: ct, comodule, push, map, inverse })
}

/// Bijectivity and colinearity of the comparison on every member, naturality
/// against all colinear maps between members.
pub fn verify_cotensor_pushout(mm: &ModuleMorphism, family: &[RightComodule]) -> Result<Report> {
    let mut r = Report::new("cotensor_pushout");
    let cmps = family.iter().map(|m| cotensor_pushout_iso(mm, m)).collect::<Result<Vec<_>>>()?;
    let mut inverse = None;
    let mut colinear = None;
    for (i, c) in cmps.iter().enumerate() {
        let n = c.map.src;
        if inverse.is_none()
            && (c.map.dst != n
                || c.map.then(&c.inverse) != LinMap::identity(c.map.field, n)
                || c.inverse.then(&c.map) != LinMap::identity(c.map.field, n))
        {
            inverse = Some(vec![i]);
        }
        if colinear.is_none() && colinearity_failure_right(&c.comodule, &c.push.comodule, &c.map).is_some() {
            colinear = Some(vec![i]);
        }
    }
    r.record("inverse", inverse);
    r.record("colinear", colinear);
    let mut natural = None;
    'o: for (i, (m, cm)) in family.iter().zip(&cmps).enumerate() {
        for (j, (n, cn)) in family.iter().zip(&cmps).enumerate() {
            for g in right_comodule_homs(m, n, false) {
                let lhs = cotensor_map(&cm.cotensor, &cn.cotensor, &g)?.then(&cn.map);
                let rhs = cm.map.then(&push_out_map(&cm.push, &cn.push, &g));
                if lhs != rhs {
                    natural = Some(vec![i, j]);
                    break 'o;
                }
            }
        }
    }
    r.record("natural", natural);
    r.with_detail(format!("family of {}", family.len()));
    Ok(r)
}

/// A component `f_M: M ⊗_B Σ → M ⊗_B Σ̃` of a natural transformation.
#[derive(Clone, Debug)]
pub struct NatComponent {
    pub source: PushOutImage,
    pub target: PushOutImage,
    pub map: LinMap,
}

/// `f_M(m ⊗ s) = Σ m_(0) ⊗ φ̄(m_(1) ⊗ s)` for a bicolinear `φ: D ⊗ Σ → D ⊗ Σ̃`,
/// where `φ̄ = (ε ⊗ Σ̃) ∘ φ`.
pub fn nat_from_bicomodule_map(
    src: &OneCellRight,
    dst: &OneCellRight,
    phi: &LinMap,
    family: &[RightComodule],
) -> Result<Vec<NatComponent>> {
    let reduced = two_cell_reduce(src, dst, phi);
    let f = src.sigma.field();
    family
        .iter()
        .map(|m| {
            let source = push_out_cell(src, m)?;
            let target = push_out_cell(dst, m)?;
            let map = source.product.map_basis(target.product.dim(), |t| {
                let mut acc = Acc::new();
                for (m0, m1, k) in m.coaction_terms(t[0]) {
                    let v = reduced.apply(&src.domain.pure_basis(&[m1, t[1]]));
                    acc.add_scaled(&target.product.pure(&[&Vector::unit(f, m0), &v]), &k);
                }
                acc.finish()
            });
            Ok(NatComponent { source, target, map })
        })
        .collect()
}

/// The component at `D` itself, read as a map `D ⊗ Σ → D ⊗ Σ̃`.
pub fn bicomodule_map_from_nat(src: &OneCellRight, dst: &OneCellRight, at_d: &NatComponent) -> Result<LinMap> {
    if at_d.source.product.dim() != src.domain.dim() || at_d.target.product.dim() != dst.domain.dim() {
        return Err(Error::structural("bicomodule_map_from_nat", "component is not taken at the coring"));
    }
    Ok(at_d.map.clone())
}

/// Bicolinearity of `φ`, colinearity and naturality of every `f_M`, the round
/// trip at `D`, and `f_{M⊗D}(m ⊗ d ⊗ s) = m ⊗ f_D(d ⊗ s)` on every member.
pub fn verify_nat_bijection(src: &OneCellRight, dst: &OneCellRight, phi: &LinMap, family: &[RightComodule]) -> Result<Report> {
    let mut r = Report::new("natural_transformations");
    let (bs, bt) = (src.bicomodule(), dst.bicomodule());
    let d = &src.target;
    r.record("left_colinear", colinearity_failure_left(&bs.left, &bt.left, phi));
    r.record("right_colinear", colinearity_failure_right(&bs.right, &bt.right, phi));
    let comps = nat_from_bicomodule_map(src, dst, phi, family)?;
    let mut colinear = None;
    for (i, c) in comps.iter().enumerate() {
        if colinearity_failure_right(&c.source.comodule, &c.target.comodule, &c.map).is_some() {
            colinear = Some(vec![i]);
            break;
        }
    }
    r.record("components_colinear", colinear);
    let mut natural = None;
    'o: for (i, (m, cm)) in family.iter().zip(&comps).enumerate() {
        for (j, (n, cn)) in family.iter().zip(&comps).enumerate() {
            for g in right_comodule_homs(m, n, false) {
                let lhs = cm.map.then(&push_out_map(&cm.target, &cn.target, &g));
                let rhs = push_out_map(&cm.source, &cn.source, &g).then(&cn.map);
                if lhs != rhs {
                    natural = Some(vec![i, j]);
                    break 'o;
                }
            }
        }
    }
    r.record("natural", natural);
    let regular = RightComodule::regular(d);
    let at_d = nat_from_bicomodule_map(src, dst, phi, std::slice::from_ref(&regular))?.remove(0);
    let back = bicomodule_map_from_nat(src, dst, &at_d)?;
    r.record("round_trip", back.first_difference(phi).map(|i| vec![i]));
    let mut extended = None;
    for (i, m) in family.iter().enumerate() {
        let md = free_comodule(m, d)?;
        let comp = nat_from_bicomodule_map(src, dst, phi, std::slice::from_ref(&md.1))?.remove(0);
        let f = d.field();
        let e = |k| Vector::unit(f, k);
        let expected = comp.source.product.map_basis(comp.target.product.dim(), |t| {
            let xy = md.0.tuple(t[0]);
            let mut acc = Acc::new();
            for (tp, c) in dst.domain.expand(&at_d.map.apply(&src.domain.pure_basis(&[xy[1], t[1]]))) {
                acc.add_scaled(&comp.target.product.pure(&[&md.0.pure_basis(&[xy[0], tp[0]]), &e(tp[1])]), &c);
            }
            acc.finish()
        });
        if expected != comp.map {
            extended = Some(vec![i]);
            break;
        }
    }
    r.record("extended_comodules", extended);
    r.with_detail(format!("family of {}", family.len()));
    Ok(r)
}

/// `M ⊗_B D` with coaction `m ⊗ d ↦ m ⊗ d_(1) ⊗ d_(2)`.
fn free_comodule(m: &RightComodule, d: &std::sync::Arc<crate::coring::Coring>) -> Result<(std::sync::Arc<Tensor>, RightComodule)> {
    let f = d.field();
    let product = Tensor::pair(&m.carrier, d.carrier())?;
    let target = Tensor::pair(product.module(), d.carrier())?;
    let coaction = product.map_basis(target.dim(), |t| {
        let mut acc = Acc::new();
        for (x, y, k) in d.delta_terms(t[1]) {
            acc.add_scaled(&target.pure(&[&product.pure_basis(&[t[0], x]), &Vector::unit(f, y)]), &k);
        }
        acc.finish()
    });
    let c = RightComodule::with_target(d.clone(), product.module().clone(), target, coaction)?;
    Ok((product, c))
}

/// The bicolinear map `E ⊗ Ξ ⊗ Σ → E ⊗ Ξ̃ ⊗ Σ̃`,
/// `e ⊗ w ⊗ s ↦ Σ ψ(e ⊗ w)_(0) ⊗ φ̄(ψ(e ⊗ w)_(1) ⊗ s)`, for `ψ` between cells
/// `D → E` and `φ` between cells `C → D`.
pub fn cotensor_of_mm_maps(psi: &TwoCell, phi: &TwoCell) -> Result<LinMap> {
    let src = hcompose_one_cells(&psi.source, &phi.source)?;
    let dst = hcompose_one_cells(&psi.target, &phi.target)?;
    let unreduced = two_cell_unreduce(psi);
    let right = psi.target.bicomodule().right;
    let f = psi.source.sigma.field();
    let e = |i| Vector::unit(f, i);
    Ok(src.cell.domain.map_basis(dst.cell.domain.dim(), |t| {
        let ws = src.product.tuple(t[1]);
        let y = unreduced.apply(&psi.source.domain.pure_basis(&[t[0], ws[0]]));
        let mut acc = Acc::new();
        for (q, c) in y.iter() {
            for (y0, d, k) in right.coaction_terms(q) {
                let et = psi.target.domain.tuple(y0);
                let v = phi.map.apply(&phi.source.domain.pure_basis(&[d, ws[1]]));
                acc.add_scaled(&dst.cell.domain.pure(&[&e(et[0]), &dst.product.pure(&[&e(et[1]), &v])]), &(c * &k));
            }
        }
        acc.finish()
    }))
}

/// Bicolinearity of `ψ □ φ` and agreement with the unreduced horizontal composite.
pub fn verify_cotensor_of_mm_maps(psi: &TwoCell, phi: &TwoCell) -> Result<Report> {
    let mut r = Report::new("cotensor_of_maps");
    let map = cotensor_of_mm_maps(psi, phi)?;
    let h = hcompose_two_cells(psi, phi)?;
    let (bs, bt) = (h.source.bicomodule(), h.target.bicomodule());
    r.record("left_colinear", colinearity_failure_left(&bs.left, &bt.left, &map));
    r.record("right_colinear", colinearity_failure_right(&bs.right, &bt.right, &map));
    r.record("matches_horizontal", map.first_difference(&two_cell_unreduce(&h)).map(|i| vec![i]));
    Ok(r)
}

/// `ψ_N` invertible for every `N` of the family.
pub fn verify_fully_faithful_on(mm: &ModuleMorphism, family: &[RightComodule]) -> Result<Report> {
    let mut r = Report::new("fully_faithful");
    if family.is_empty() {
        r.absent("family", "empty family");
        return Ok(r);
    }
    let mut bad = None;
    for (i, n) in family.iter().enumerate() {
        if !adjunction_counit(mm, n)?.map.is_invertible() {
            bad = Some(vec![i]);
            break;
        }
    }
    r.record("counit_invertible", bad);
    r.absorb("", &reconstruct_sigma(mm)?);
    r.with_detail(format!("verified on a family of {}", family.len()));
    Ok(r)
}

/// [`verify_fully_faithful_on`] together with `η_M` invertible for every `M` of `family_d`.
pub fn verify_equivalence_on(mm: &ModuleMorphism, family_d: &[RightComodule], family_c: &[RightComodule]) -> Result<Report> {
    let mut r = verify_fully_faithful_on(mm, family_c)?;
    r.subject = "equivalence".into();
    if family_d.is_empty() {
        r.absent("family_d", "empty family");
        return Ok(r);
    }
    let mut bad = None;
    for (i, m) in family_d.iter().enumerate() {
        if !adjunction_unit(mm, m)?.map.is_invertible() {
            bad = Some(vec![i]);
            break;
        }
    }
    r.record("unit_invertible", bad);
    Ok(r)
}

/// `ψ_C ∘ (λ ⊗ Σ) = σ`, where `λ: Σ* ⊗ D → C □ (Σ* ⊗ D)` is the left coaction.
fn reconstruct_sigma(mm: &ModuleMorphism) -> Result<Report> {
    let mut r = Report::new("sigma");
    let c = mm.target();
    let side = dual_side(mm)?;
    let counit = adjunction_counit(mm, &RightComodule::regular(c))?;
    let pull = pull_back(mm, &RightComodule::regular(c))?;
    let f = c.field();
    let lambda = LinMap::from_rows(
        f,
        pull.cotensor.dim(),
        side.left
            .coaction
            .rows
            .iter()
            .map(|v| pull.cotensor.coords(v).ok_or_else(|| Error::structural("sigma", "coaction leaves the cotensor")))
            .collect::<Result<Vec<_>>>()?,
    );
    let parts = &mm.ext.parts;
    let e = |i| Vector::unit(f, i);
    let via = parts.map_basis(counit.push.product.dim(), |t| {
        counit.push.product.pure(&[&lambda.apply(&side.tensor.pure_basis(&[t[0], t[1]])), &e(t[2])])
    });
    let sigma = &mm.morphism.map;
    r.record("reconstructs_sigma", via.then(&counit.map).first_difference(sigma).map(|i| vec![i]));
    r.require("sigma_invertible", sigma.is_invertible());
    Ok(r)
}
