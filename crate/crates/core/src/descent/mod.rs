//! Descent data along a coring morphism `(γ, α)` and their identification with
//! comodules over `A_α[D]`.

use std::sync::Arc;

use crate::algebra::AlgebraMap;
use crate::bicells::ModuleMorphism;
use crate::bimodule::{bilinearity_failure, Bimodule, Tensor};
use crate::constructions::{base_ext_by_map, sweedler_coring, TensorCoring};
use crate::coring::{check_general_morphism, same_coring, Coring, GeneralCoringMorphism, RightComodule};
use crate::error::{Error, Result};
use crate::functors::{push_out_right, verify_equivalence_on};
use crate::linalg::{Acc, LinMap, Vector};
use crate::report::Report;

/// A right `A`-module `X` with a right `A`-linear `ρ: X → X ⊗_B D ⊗_B A`.
#[derive(Clone, Debug)]
pub struct DescentDatum {
    pub morphism: GeneralCoringMorphism,
    pub carrier: Arc<Bimodule>,
    pub target: Arc<Tensor>,
    pub rho: LinMap,
}

/// `A` as a `(B, A)`-bimodule through `α`.
pub fn induced_module(alpha: &AlgebraMap) -> Arc<Bimodule> {
    Bimodule::regular(&alpha.target).restrict(Some(alpha), None)
}

fn descent_target(alpha: &AlgebraMap, d: &Coring, x: &Arc<Bimodule>) -> Result<Arc<Tensor>> {
    Tensor::triple(&x.restrict(None, Some(alpha)), d.carrier(), &induced_module(alpha))
}

impl DescentDatum {
    pub fn new(morphism: GeneralCoringMorphism, carrier: Arc<Bimodule>, rho: LinMap) -> Result<Self> {
        let target = descent_target(&morphism.alpha, &morphism.source, &carrier)?;
        if rho.src != carrier.dim() || rho.dst != target.dim() {
            return Err(Error::structural("descent.rho", "shape does not match X → X⊗D⊗A"));
        }
        Ok(DescentDatum { morphism, carrier, target, rho })
    }

    /// `ρ` given by representatives in the ambient `X ⊗_k D ⊗_k A`.
    pub fn from_ambient(morphism: GeneralCoringMorphism, carrier: Arc<Bimodule>, ambient: &LinMap) -> Result<Self> {
        let target = descent_target(&morphism.alpha, &morphism.source, &carrier)?;
        if ambient.src != carrier.dim() || ambient.dst != target.ambient_dim() {
            return Err(Error::structural("descent.rho", "representatives must live in X ⊗_k D ⊗_k A"));
        }
        let rho = LinMap::from_fn(carrier.field(), carrier.dim(), target.dim(), |i| target.project(&ambient.rows[i]));
        Ok(DescentDatum { morphism, carrier, target, rho })
    }
}

/// `σ^l: X ⊗_B A → X`, `x ⊗ a ↦ x a`.
pub fn right_multiplication(alpha: &AlgebraMap, x: &Arc<Bimodule>) -> Result<(Arc<Tensor>, LinMap)> {
    let t = Tensor::pair(&x.restrict(None, Some(alpha)), &induced_module(alpha))?;
    let f = x.field();
    let m = t.map_basis(x.dim(), |p| x.act_right(&Vector::unit(f, p[0]), &Vector::unit(f, p[1])));
    Ok((t, m))
}

/// `ν: X ⊗_B D ⊗_B D ⊗_B A → X ⊗_B D ⊗_B A ⊗_B D ⊗_B A`, `x ⊗ d ⊗ d' ⊗ a ↦ x ⊗ d ⊗ 1 ⊗ d' ⊗ a`.
pub fn insert_unit(alpha: &AlgebraMap, d: &Coring, x: &Arc<Bimodule>) -> Result<(Arc<Tensor>, Arc<Tensor>, LinMap)> {
    let xb = x.restrict(None, Some(alpha));
    let a_bb = Bimodule::regular(&alpha.target).restrict(Some(alpha), Some(alpha));
    let dd = Tensor::new(vec![xb.clone(), d.carrier().clone(), d.carrier().clone(), induced_module(alpha)])?;
    let five = Tensor::new(vec![xb, d.carrier().clone(), a_bb, d.carrier().clone(), induced_module(alpha)])?;
    let f = x.field();
    let e = |i| Vector::unit(f, i);
    let unit = alpha.target.unit();
    let m = dd.map_basis(five.dim(), |t| five.pure(&[&e(t[0]), &e(t[1]), unit, &e(t[2]), &e(t[3])]));
    Ok((dd, five, m))
}

/// Right `A`-linearity, the counit square through `σ^l` and the coassociativity square through `ν`.
pub fn check_descent_datum(dd: &DescentDatum) -> Result<Report> {
    let mut r = Report::new("descent_datum");
    let alpha = &dd.morphism.alpha;
    let d = &dd.morphism.source;
    let a = &alpha.target;
    let f = d.field();
    let e = |i| Vector::unit(f, i);
    r.record("right_linear", bilinearity_failure(&dd.carrier, dd.target.module(), &dd.rho));
    let (xa, sigma_l) = right_multiplication(alpha, &dd.carrier)?;
    let counit = dd.target.map_basis(xa.dim(), |t| xa.pure(&[&e(t[0]), &a.mul(&alpha.apply(&d.counit().rows[t[1]]), &e(t[2]))]));
    let round = dd.rho.then(&counit).then(&sigma_l);
    r.record("counit", round.first_difference(&LinMap::identity(f, dd.carrier.dim())).map(|i| vec![i]));
    let (dd4, five, nu) = insert_unit(alpha, d, &dd.carrier)?;
    let comult = dd.target.map_basis(dd4.dim(), |t| {
        let mut acc = Acc::new();
        for (x, y, k) in d.delta_terms(t[1]) {
            acc.add_scaled(&dd4.pure_basis(&[t[0], x, y, t[2]]), &k);
        }
        acc.finish()
    });
    let iterate = dd.target.map_basis(five.dim(), |t| {
        let mut acc = Acc::new();
        for (q, c) in dd.rho.rows[t[0]].iter() {
            let u = dd.target.tuple(q);
            acc.add_scaled(&five.pure_basis(&[u[0], u[1], u[2], t[1], t[2]]), c);
        }
        acc.finish()
    });
    let lhs = dd.rho.then(&iterate);
    let rhs = dd.rho.then(&comult).then(&nu);
    r.record("coassociative", lhs.first_difference(&rhs).map(|i| vec![i]));
    Ok(r)
}

/// `ρ'(x) = Σ x_(0) ⊗ (1 ⊗ x_(1) ⊗ x_(2))` over `A_α[D]`.
pub fn descent_to_comodule(dd: &DescentDatum) -> Result<(TensorCoring, RightComodule)> {
    let ext = base_ext_by_map(&dd.morphism.source, &dd.morphism.alpha)?;
    let c = comodule_over(&ext, dd)?;
    Ok((ext, c))
}

/// [`descent_to_comodule`] into a given `A_α[D]`.
pub fn comodule_over(ext: &TensorCoring, dd: &DescentDatum) -> Result<RightComodule> {
    let f = dd.carrier.field();
    let e = |i| Vector::unit(f, i);
    let unit = dd.morphism.alpha.target.unit();
    let target = Tensor::pair(&dd.carrier, ext.coring.carrier())?;
    let coaction = LinMap::from_fn(f, dd.carrier.dim(), target.dim(), |x| {
        let mut acc = Acc::new();
        for (t, c) in dd.target.expand(&dd.rho.rows[x]) {
            acc.add_scaled(&target.pure(&[&e(t[0]), &ext.parts.pure(&[unit, &e(t[1]), &e(t[2])])]), &c);
        }
        acc.finish()
    });
    RightComodule::with_target(ext.coring.clone(), dd.carrier.clone(), target, coaction)
}

/// `ρ(x) = Σ x_(0) a ⊗ d ⊗ a'` over `ρ'(x) = Σ x_(0) ⊗ (a ⊗ d ⊗ a')`.
pub fn comodule_to_descent(morphism: &GeneralCoringMorphism, ext: &TensorCoring, m: &RightComodule) -> Result<DescentDatum> {
    if !same_coring(&m.coring, &ext.coring) {
        return Err(Error::structural("comodule_to_descent", "comodule is not over the extended coring"));
    }
    let f = m.carrier.field();
    let e = |i| Vector::unit(f, i);
    let target = descent_target(&morphism.alpha, &morphism.source, &m.carrier)?;
    let rho = LinMap::from_fn(f, m.dim(), target.dim(), |x| {
        let mut acc = Acc::new();
        for (m0, q, k) in m.coaction_terms(x) {
            let t = ext.parts.tuple(q);
            acc.add_scaled(&target.pure(&[&m.carrier.act_right(&e(m0), &e(t[0])), &e(t[1]), &e(t[2])]), &k);
        }
        acc.finish()
    });
    DescentDatum::new(morphism.clone(), m.carrier.clone(), rho)
}

/// `M ⊗_B A` over `A_α[D]` with `m ⊗ a ↦ Σ (m_(0) ⊗ 1) ⊗ (1 ⊗ m_(1) ⊗ a)`.
pub fn induced_comodule(alpha: &AlgebraMap, ext: &TensorCoring, m: &RightComodule) -> Result<RightComodule> {
    let a = &alpha.target;
    let f = a.field();
    let e = |i| Vector::unit(f, i);
    let product = Tensor::pair(&m.carrier, &induced_module(alpha))?;
    let carrier = product.module().clone();
    let target = Tensor::pair(&carrier, ext.coring.carrier())?;
    let coaction = product.map_basis(target.dim(), |t| {
        let mut acc = Acc::new();
        for (m0, m1, k) in m.coaction_terms(t[0]) {
            acc.add_scaled(&target.pure(&[&product.pure(&[&e(m0), a.unit()]), &ext.parts.pure(&[a.unit(), &e(m1), &e(t[1])])]), &k);
        }
        acc.finish()
    });
    RightComodule::with_target(ext.coring.clone(), carrier, target, coaction)
}

/// Whether a right `A`-linear `g: X → Y` commutes with the descent maps.
pub fn descent_morphism_failure(x: &DescentDatum, y: &DescentDatum, g: &LinMap) -> Option<Vec<usize>> {
    let f = g.field;
    for a in 0..x.carrier.right().dim() {
        let lhs = x.carrier.right_basis_action(a).then(g);
        if let Some(i) = lhs.first_difference(&g.then(y.carrier.right_basis_action(a))) {
            return Some(vec![a, i]);
        }
    }
    let lifted = x.target.map_basis(y.target.dim(), |t| y.target.pure(&[&g.rows[t[0]], &Vector::unit(f, t[1]), &Vector::unit(f, t[2])]));
    x.rho.then(&lifted).first_difference(&g.then(&y.rho)).map(|i| vec![i])
}

/// `d ↦ 1 ⊗ d ⊗ 1`, a coring morphism `D → A_α[D]` over `α`.
pub fn extension_unit(morphism: &GeneralCoringMorphism, ext: &TensorCoring) -> Result<GeneralCoringMorphism> {
    let d = &morphism.source;
    let f = d.field();
    let unit = morphism.alpha.target.unit();
    let gamma = LinMap::from_fn(f, d.dim(), ext.coring.dim(), |i| ext.parts.pure(&[unit, &Vector::unit(f, i), unit]));
    GeneralCoringMorphism::new(d.clone(), ext.coring.clone(), morphism.alpha.clone(), gamma)
}

/// `(γ, α)` and the induced data commute: `ε_{D,A_α} ∘ α̃` is the map `d ↦ 1 ⊗ α(ε(d))`
/// into `A ⊗_B A`, `γ̃ ∘ α̃ = γ`, and for each `M` of the family the push-out along
/// `(A, σ)` equals the induction along `γ̃` of `M ⊗_B A`.
pub fn descent_diagram_check(morphism: &GeneralCoringMorphism, family: &[RightComodule]) -> Result<Report> {
    let mut r = Report::new("descent_diagram");
    let alpha = &morphism.alpha;
    let d = &morphism.source;
    let a = &alpha.target;
    let f = d.field();
    let e = |i| Vector::unit(f, i);
    r.absorb("morphism.", &check_general_morphism(morphism));
    let (ext, gamma_t) = morphism.induce()?;
    let unit_map = extension_unit(morphism, &ext)?;
    r.absorb("extension_unit.", &check_general_morphism(&unit_map));
    let sw = sweedler_coring(alpha)?;
    let eps_ext = ext.parts.map_basis(sw.coring.dim(), |t| sw.parts.pure(&[&e(t[0]), &a.mul(&alpha.apply(&d.counit().rows[t[1]]), &e(t[2]))]));
    let classical = LinMap::from_fn(f, d.dim(), sw.coring.dim(), |i| sw.parts.pure(&[a.unit(), &alpha.apply(&d.counit().rows[i])]));
    let classical_m = GeneralCoringMorphism::new(d.clone(), sw.coring.clone(), alpha.clone(), classical.clone())?;
    r.absorb("sweedler_map.", &check_general_morphism(&classical_m));
    r.record("counit_square", unit_map.gamma.then(&eps_ext).first_difference(&classical).map(|i| vec![i]));
    r.record("gamma_square", unit_map.gamma.then(&gamma_t.map).first_difference(&morphism.gamma).map(|i| vec![i]));
    let mm = ModuleMorphism::from_general_morphism(morphism)?;
    let sigma = induced_module(alpha);
    let c = &morphism.target;
    let mut bad = None;
    for (idx, m) in family.iter().enumerate() {
        if !same_coring(&m.coring, d) {
            return Err(Error::structural("descent_diagram", "family member is not a D-comodule"));
        }
        let pushed = push_out_right(&mm, m)?;
        let product = Tensor::pair(&m.carrier, &sigma)?;
        let target = Tensor::pair(product.module(), c.carrier())?;
        let induced = product.map_basis(target.dim(), |t| {
            let mut acc = Acc::new();
            for (m0, m1, k) in m.coaction_terms(t[0]) {
                let g = c.carrier().act_right(&gamma_t.map.apply(&ext.parts.pure(&[a.unit(), &e(m1), &e(t[1])])), a.unit());
                acc.add_scaled(&target.pure(&[&product.pure(&[&e(m0), a.unit()]), &g]), &k);
            }
            acc.finish()
        });
        if pushed.comodule.coaction != induced {
            bad = Some(vec![idx]);
            break;
        }
    }
    r.record("functor_square", bad);
    r.with_detail(format!("family of {}", family.len()));
    Ok(r)
}

/// The equivalence checks for the module-morphism `(A, σ)` induced by `(γ, α)`.
pub fn descent_equivalence(morphism: &GeneralCoringMorphism, family_d: &[RightComodule], family_c: &[RightComodule]) -> Result<Report> {
    let mm = ModuleMorphism::from_general_morphism(morphism)?;
    verify_equivalence_on(&mm, family_d, family_c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::hom_space;
    use crate::coring::right_comodule_homs;
    use crate::fixtures::{diagonal_descent_morphism, matrix_descent_morphism, right_family};
    use crate::linalg::Field;

    fn members(g: &GeneralCoringMorphism, ext: &TensorCoring) -> Vec<RightComodule> {
        let mut out = vec![RightComodule::regular(&ext.coring)];
        for (_, m) in right_family(&g.source) {
            out.push(induced_comodule(&g.alpha, ext, &m).unwrap());
        }
        out
    }

    #[test]
    fn round_trips() {
        for g in [diagonal_descent_morphism(Field::Rational).unwrap(), matrix_descent_morphism(Field::Prime(5)).unwrap()] {
            let (ext, _) = g.induce().unwrap();
            let fam = members(&g, &ext);
            let data: Vec<_> = fam.iter().map(|m| comodule_to_descent(&g, &ext, m).unwrap()).collect();
            for (m, dd) in fam.iter().zip(&data) {
                assert!(check_descent_datum(dd).unwrap().passed());
                let back = comodule_over(&ext, dd).unwrap();
                assert_eq!(back.coaction, m.coaction);
                assert_eq!(comodule_to_descent(&g, &ext, &back).unwrap().rho, dd.rho);
                let (other, _) = descent_to_comodule(dd).unwrap();
                assert_eq!(other.coring.comult(), ext.coring.comult());
            }
            for (i, m) in fam.iter().enumerate() {
                for (j, n) in fam.iter().enumerate() {
                    for h in right_comodule_homs(m, n, false) {
                        assert!(descent_morphism_failure(&data[i], &data[j], &h).is_none());
                    }
                }
            }
            let r = descent_diagram_check(&g, &right_family(&g.source).into_iter().map(|x| x.1).collect::<Vec<_>>()).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn perturbed_rho_fails() {
        let g = diagonal_descent_morphism(Field::Rational).unwrap();
        let (ext, _) = g.induce().unwrap();
        let mut dd = comodule_to_descent(&g, &ext, &RightComodule::regular(&ext.coring)).unwrap();
        dd.rho = dd.rho.scale(&Field::Rational.int(2));
        assert!(!check_descent_datum(&dd).unwrap().passed());
    }

    #[test]
    fn right_multiplication_is_natural() {
        let g = matrix_descent_morphism(Field::Rational).unwrap();
        let a = &g.alpha.target;
        let x = Bimodule::regular(a).forget_left();
        let y = Bimodule::free(a, 2).forget_left();
        let (tx, sx) = right_multiplication(&g.alpha, &x).unwrap();
        let (ty, sy) = right_multiplication(&g.alpha, &y).unwrap();
        let f = Field::Rational;
        for h in hom_space(&x, &y, false, true) {
            let lifted = tx.map_basis(ty.dim(), |t| ty.pure(&[&h.rows[t[0]], &Vector::unit(f, t[1])]));
            assert_eq!(lifted.then(&sy), sx.then(&h));
        }
    }
}
