//! Corings built from algebra maps and bimodules: Sweedler corings, base ring
//! extensions along a map or a module, comatrix corings, and the comparison maps
//! between them.

mod bicomodules;
mod compose;

pub use bicomodules::{canonical_bicomodules, CanonicalBicomodules};
pub use compose::{composition_iso, CompositionIso};

use std::sync::Arc;

use crate::algebra::{check_algebra_map, AlgebraMap};
use crate::bimodule::{Bimodule, ProjectiveModule, Tensor};
use crate::coring::{check_coring_morphism, same_coring, Coring, CoringMorphism, GeneralCoringMorphism};
use crate::error::{Error, Result};
use crate::linalg::{Acc, Vector};
use crate::report::Report;

/// A coring whose carrier is a tensor product, kept for formula evaluation.
#[derive(Clone, Debug)]
pub struct TensorCoring {
    pub coring: Arc<Coring>,
    pub parts: Arc<Tensor>,
}

/// `Σ[D] = Σ* ⊗_B D ⊗_B Σ` with the data used to build it.
#[derive(Clone, Debug)]
pub struct Extension {
    pub module: ProjectiveModule,
    pub base_coring: Arc<Coring>,
    pub parts: Arc<Tensor>,
    pub coring: Arc<Coring>,
}

fn require_algebra_map(alpha: &AlgebraMap) -> Result<()> {
    let r = check_algebra_map(alpha);
    if r.passed() {
        Ok(())
    } else {
        Err(Error::structural("algebra_map", r.to_string()))
    }
}

/// `A ⊗_B A` with `Δ(a ⊗ a') = a ⊗ 1 ⊗ a'` and `ε(a ⊗ a') = a a'`.
pub fn sweedler_coring(alpha: &AlgebraMap) -> Result<TensorCoring> {
    require_algebra_map(alpha)?;
    let a = &alpha.target;
    let f = a.field();
    let reg = Bimodule::regular(a);
    let parts = Tensor::pair(&reg.restrict(None, Some(alpha)), &reg.restrict(Some(alpha), None))?;
    let carrier = parts.module().clone();
    let cc = Tensor::pair(&carrier, &carrier)?;
    let e = |i| Vector::unit(f, i);
    let comult = parts.map_basis(cc.dim(), |t| cc.pure(&[&parts.pure(&[&e(t[0]), a.unit()]), &parts.pure(&[a.unit(), &e(t[1])])]));
    let counit = parts.map_basis(a.dim(), |t| a.basis_mul(t[0], t[1]).clone());
    let coring = Coring::with_tensor(carrier, cc, comult, counit)?;
    Ok(TensorCoring { coring, parts })
}

/// `A_α[D] = A ⊗_B D ⊗_B A` with `Δ(a ⊗ d ⊗ a') = Σ a ⊗ d_(1) ⊗ 1 ⊗ 1 ⊗ d_(2) ⊗ a'`
/// and `ε(a ⊗ d ⊗ a') = a α(ε(d)) a'`.
pub fn base_ext_by_map(d: &Arc<Coring>, alpha: &AlgebraMap) -> Result<TensorCoring> {
    require_algebra_map(alpha)?;
    if !crate::algebra::same_algebra(&alpha.source, d.base()) {
        return Err(Error::structural("base_ext_by_map", "algebra map does not start at the base of the coring"));
    }
    let a = &alpha.target;
    let f = a.field();
    let reg = Bimodule::regular(a);
    let parts = Tensor::triple(&reg.restrict(None, Some(alpha)), d.carrier(), &reg.restrict(Some(alpha), None))?;
    let carrier = parts.module().clone();
    let cc = Tensor::pair(&carrier, &carrier)?;
    let e = |i| Vector::unit(f, i);
    let comult = parts.map_basis(cc.dim(), |t| {
        let mut acc = Acc::new();
        for (x, y, s) in d.delta_terms(t[1]) {
            let l = parts.pure(&[&e(t[0]), &e(x), a.unit()]);
            let r = parts.pure(&[a.unit(), &e(y), &e(t[2])]);
            acc.add_scaled(&cc.pure(&[&l, &r]), &s);
        }
        acc.finish()
    });
    let counit = parts.map_basis(a.dim(), |t| a.mul(&a.mul(&e(t[0]), &alpha.apply(&d.counit().rows[t[1]])), &e(t[2])));
    let coring = Coring::with_tensor(carrier, cc, comult, counit)?;
    Ok(TensorCoring { coring, parts })
}

/// `Σ* ⊗_B Σ` with `Δ(s* ⊗ s) = Σ_i s* ⊗ e_i ⊗ e_i* ⊗ s` and `ε(s* ⊗ s) = s*(s)`.
pub fn comatrix_coring(m: &ProjectiveModule) -> Result<TensorCoring> {
    let f = m.sigma.field();
    let parts = Tensor::pair(m.dual_module(), &m.sigma)?;
    let carrier = parts.module().clone();
    let cc = Tensor::pair(&carrier, &carrier)?;
    let e = |i| Vector::unit(f, i);
    let comult = parts.map_basis(cc.dim(), |t| {
        let mut acc = Acc::new();
        for (ei, fi) in m.basis.elems.iter().zip(&m.basis.duals) {
            acc.add_vec(&cc.pure(&[&parts.pure(&[&e(t[0]), ei]), &parts.pure(&[fi, &e(t[1])])]));
        }
        acc.finish()
    });
    let counit = parts.map_basis(m.sigma.right().dim(), |t| m.eval(&e(t[0]), &e(t[1])));
    let coring = Coring::with_tensor(carrier, cc, comult, counit)?;
    Ok(TensorCoring { coring, parts })
}

/// `Σ[D]` with `Δ(s* ⊗ d ⊗ s) = Σ_i s* ⊗ d_(1) ⊗ e_i ⊗ e_i* ⊗ d_(2) ⊗ s` and
/// `ε(s* ⊗ d ⊗ s) = s*(ε(d) s)`.
pub fn base_ext_by_module(d: &Arc<Coring>, m: &ProjectiveModule) -> Result<Extension> {
    if !crate::algebra::same_algebra(m.sigma.left(), d.base()) {
        return Err(Error::structural("base_ext_by_module", "module's left algebra is not the base of the coring"));
    }
    let f = d.field();
    let parts = Tensor::triple(m.dual_module(), d.carrier(), &m.sigma)?;
    let carrier = parts.module().clone();
    let cc = Tensor::pair(&carrier, &carrier)?;
    let e = |i| Vector::unit(f, i);
    let comult = parts.map_basis(cc.dim(), |t| {
        let mut acc = Acc::new();
        for (x, y, s) in d.delta_terms(t[1]) {
            for (ei, fi) in m.basis.elems.iter().zip(&m.basis.duals) {
                let l = parts.pure(&[&e(t[0]), &e(x), ei]);
                let r = parts.pure(&[fi, &e(y), &e(t[2])]);
                acc.add_scaled(&cc.pure(&[&l, &r]), &s);
            }
        }
        acc.finish()
    });
    let counit = parts.map_basis(m.sigma.right().dim(), |t| {
        m.eval(&e(t[0]), &m.sigma.act_left(&d.counit().rows[t[1]], &e(t[2])))
    });
    let coring = Coring::with_tensor(carrier, cc, comult, counit)?;
    Ok(Extension { module: m.clone(), base_coring: d.clone(), parts, coring })
}

impl Extension {
    pub fn dim(&self) -> usize {
        self.coring.dim()
    }

    /// Whether rebuilding with a different dual basis gives the same `Δ` in the quotient.
    pub fn witness_independent(&self) -> Result<bool> {
        let other = base_ext_by_module(&self.base_coring, &self.module.perturbed())?;
        Ok(other.coring.comult() == self.coring.comult() && other.coring.counit() == self.coring.counit())
    }

    /// `s* ⊗ d ⊗ s` as an element of `Σ[D]`.
    pub fn element(&self, s_dual: &Vector, d: &Vector, s: &Vector) -> Vector {
        self.parts.pure(&[s_dual, d, s])
    }
}

/// `Σ[f] = Σ* ⊗ f ⊗ Σ`.
pub fn coring_functor_on_morphism(src: &Extension, dst: &Extension, f: &CoringMorphism) -> Result<CoringMorphism> {
    if !same_coring(&f.source, &src.base_coring) || !same_coring(&f.target, &dst.base_coring) {
        return Err(Error::structural("functor_on_morphism", "morphism does not connect the base corings"));
    }
    if src.module.sigma != dst.module.sigma {
        return Err(Error::structural("functor_on_morphism", "extensions use different modules"));
    }
    let fld = src.coring.field();
    let e = |i| Vector::unit(fld, i);
    let map = src.parts.map_basis(dst.dim(), |t| dst.parts.pure(&[&e(t[0]), &f.map.rows[t[1]], &e(t[2])]));
    CoringMorphism::new(src.coring.clone(), dst.coring.clone(), map)
}

/// `ε_{D,Σ}: Σ[D] → Σ* ⊗_B Σ`, `s* ⊗ d ⊗ s ↦ s* ⊗ ε(d) s`.
pub fn eps_coring_morphism(ext: &Extension, comatrix: &TensorCoring) -> Result<CoringMorphism> {
    let m = &ext.module;
    let f = ext.coring.field();
    let e = |i| Vector::unit(f, i);
    let map = ext
        .parts
        .map_basis(comatrix.coring.dim(), |t| comatrix.parts.pure(&[&e(t[0]), &m.sigma.act_left(&ext.base_coring.counit().rows[t[1]], &e(t[2]))]));
    CoringMorphism::new(ext.coring.clone(), comatrix.coring.clone(), map)
}

/// `Σ[B] → Σ* ⊗_B Σ`, `s* ⊗ b ⊗ s ↦ s* ⊗ b s`.
pub fn trivial_extension_to_comatrix(ext: &Extension, comatrix: &TensorCoring) -> Result<CoringMorphism> {
    eps_coring_morphism(ext, comatrix)
}

/// `A_α[D] → Σ[D]` for `Σ = A` viewed as a `(B, A)`-bimodule through `α`,
/// `a ⊗ d ⊗ a' ↦ (a·) ⊗ d ⊗ a'`.
pub fn map_extension_to_module_extension(by_map: &TensorCoring, ext: &Extension) -> Result<CoringMorphism> {
    let m = &ext.module;
    let a = m.sigma.right().clone();
    let f = a.field();
    let e = |i| Vector::unit(f, i);
    let lmult: Vec<Vector> = (0..a.dim())
        .map(|i| {
            m.dual.coords(&a.left_mult(&e(i))).ok_or_else(|| Error::structural("collapse", "left multiplication is not in Σ*"))
        })
        .collect::<Result<_>>()?;
    let map = by_map.parts.map_basis(ext.dim(), |t| ext.parts.pure(&[&lmult[t[0]], &e(t[1]), &e(t[2])]));
    CoringMorphism::new(by_map.coring.clone(), ext.coring.clone(), map)
}

/// `A_α[B] → A ⊗_B A`, `a ⊗ b ⊗ a' ↦ a α(b) ⊗ a'`.
pub fn map_extension_to_sweedler(by_map: &TensorCoring, sweedler: &TensorCoring, alpha: &AlgebraMap) -> Result<CoringMorphism> {
    let a = &alpha.target;
    let f = a.field();
    let e = |i| Vector::unit(f, i);
    let map = by_map.parts.map_basis(sweedler.coring.dim(), |t| {
        sweedler.parts.pure(&[&a.mul(&e(t[0]), &alpha.apply(&e(t[1]))), &e(t[2])])
    });
    CoringMorphism::new(by_map.coring.clone(), sweedler.coring.clone(), map)
}

/// `A_id[D] → D`, `a ⊗ d ⊗ a' ↦ a d a'`.
pub fn identity_extension_collapse(by_map: &TensorCoring, d: &Arc<Coring>) -> Result<CoringMorphism> {
    let f = d.field();
    let e = |i| Vector::unit(f, i);
    let c = d.carrier();
    let map = by_map.parts.map_basis(d.dim(), |t| c.act_right(&c.act_left(&e(t[0]), &e(t[1])), &e(t[2])));
    CoringMorphism::new(by_map.coring.clone(), d.clone(), map)
}

/// `Σ[D ⊕ D'] → Σ[D] ⊕ Σ[D']`; `split` is `dim D`.
pub fn direct_sum_comparison(sum: &Extension, first: &Extension, second: &Extension, split: usize) -> Result<CoringMorphism> {
    let f = sum.coring.field();
    let e = |i| Vector::unit(f, i);
    let off = first.dim();
    let target = Coring::direct_sum(&first.coring, &second.coring)?;
    let map = sum.parts.map_basis(target.dim(), |t| {
        if t[1] < split {
            first.parts.pure(&[&e(t[0]), &e(t[1]), &e(t[2])])
        } else {
            second.parts.pure(&[&e(t[0]), &e(t[1] - split), &e(t[2])]).shift(off)
        }
    });
    CoringMorphism::new(sum.coring.clone(), target, map)
}

/// Checks that a comparison is a bijective coring morphism.
pub fn check_coring_iso(m: &CoringMorphism) -> Report {
    let mut r = check_coring_morphism(m);
    r.subject = "coring_isomorphism".into();
    r.require("bijective", m.map.is_invertible());
    r
}

impl GeneralCoringMorphism {
    /// `A_α[D]` and `γ̃: a ⊗ d ⊗ a' ↦ a γ(d) a'`.
    pub fn induce(&self) -> Result<(TensorCoring, CoringMorphism)> {
        let ext = base_ext_by_map(&self.source, &self.alpha)?;
        let c = self.target.carrier();
        let f = c.field();
        let e = |i| Vector::unit(f, i);
        let map = ext.parts.map_basis(self.target.dim(), |t| c.act_right(&c.act_left(&e(t[0]), &self.gamma.rows[t[1]]), &e(t[2])));
        let m = CoringMorphism::new(ext.coring.clone(), self.target.clone(), map)?;
        Ok((ext, m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::coring::check_coring;
    use crate::linalg::Field;

    fn diagonal(f: Field) -> AlgebraMap {
        AlgebraMap::unit_map(Algebra::product(f, 2))
    }

    #[test]
    fn sweedler_dimensions() {
        let f = Field::Rational;
        for (alpha, dim) in [
            (diagonal(f), 4),
            (AlgebraMap::unit_map(Algebra::dual_numbers(f)), 4),
            (AlgebraMap::identity(Algebra::dual_numbers(f)), 2),
        ] {
            let s = sweedler_coring(&alpha).unwrap();
            assert_eq!(s.coring.dim(), dim);
            assert!(check_coring(&s.coring).passed());
        }
    }

    #[test]
    fn base_ext_by_map_matrix() {
        let f = Field::Rational;
        let t = base_ext_by_map(&Coring::matrix_coalgebra(f, 2), &diagonal(f)).unwrap();
        assert_eq!(t.coring.dim(), 16);
        assert!(check_coring(&t.coring).passed());
    }

    #[test]
    fn comatrix_of_plane_is_matrix_coalgebra_sized() {
        let f = Field::Rational;
        let m = ProjectiveModule::new(&Bimodule::vector_space(f, 2)).unwrap();
        let c = comatrix_coring(&m).unwrap();
        assert_eq!(c.coring.dim(), 4);
        assert!(check_coring(&c.coring).passed());
    }

    #[test]
    fn module_extension_and_collapses() {
        let f = Field::Rational;
        let m = ProjectiveModule::new(&Bimodule::vector_space(f, 2)).unwrap();
        let d = Coring::matrix_coalgebra(f, 2);
        let ext = base_ext_by_module(&d, &m).unwrap();
        assert_eq!(ext.dim(), 16);
        assert!(check_coring(&ext.coring).passed());
        assert!(ext.witness_independent().unwrap());

        let triv = base_ext_by_module(&Coring::trivial(d.base()), &m).unwrap();
        let cm = comatrix_coring(&m).unwrap();
        assert!(check_coring_iso(&trivial_extension_to_comatrix(&triv, &cm).unwrap()).passed());
        let eps = eps_coring_morphism(&ext, &cm).unwrap();
        assert!(check_coring_morphism(&eps).passed());
        assert!(eps.map.is_surjective());
    }

    #[test]
    fn extension_along_algebra_as_module() {
        let f = Field::Rational;
        let alpha = diagonal(f);
        let d = Coring::grouplike(f, 2);
        let by_map = base_ext_by_map(&d, &alpha).unwrap();
        let sigma = Bimodule::regular(&alpha.target).restrict(Some(&alpha), None);
        let ext = base_ext_by_module(&d, &ProjectiveModule::new(&sigma).unwrap()).unwrap();
        assert!(check_coring(&ext.coring).passed());
        assert!(check_coring_iso(&map_extension_to_module_extension(&by_map, &ext).unwrap()).passed());

        let sw = sweedler_coring(&alpha).unwrap();
        let over_base = base_ext_by_map(&Coring::trivial(&alpha.source), &alpha).unwrap();
        assert!(check_coring_iso(&map_extension_to_sweedler(&over_base, &sw, &alpha).unwrap()).passed());
    }

    #[test]
    fn identity_extension_and_induced_morphism() {
        let f = Field::Rational;
        let d = Coring::trivial(&Algebra::dual_numbers(f));
        let id = GeneralCoringMorphism::identity(&d);
        let (ext, gt) = id.induce().unwrap();
        assert!(check_coring_iso(&gt).passed());
        assert!(check_coring_iso(&identity_extension_collapse(&ext, &d).unwrap()).passed());
    }

    #[test]
    fn functor_laws_and_direct_sums() {
        let f = Field::Rational;
        let m = ProjectiveModule::new(&Bimodule::vector_space(f, 2)).unwrap();
        let d = Coring::matrix_coalgebra(f, 2);
        let b = Coring::trivial(d.base());
        let ed = base_ext_by_module(&d, &m).unwrap();
        let eb = base_ext_by_module(&b, &m).unwrap();
        let id = coring_functor_on_morphism(&ed, &ed, &CoringMorphism::identity(&d)).unwrap();
        assert!(id.map.first_difference(&crate::linalg::LinMap::identity(f, 16)).is_none());
        let eps = CoringMorphism::counit_of(&d);
        let eps = CoringMorphism::new(d.clone(), b.clone(), eps.map).unwrap();
        let se = coring_functor_on_morphism(&ed, &eb, &eps).unwrap();
        assert!(check_coring_morphism(&se).passed());

        let g = Coring::grouplike(f, 1);
        let sum = Coring::direct_sum(&d, &g).unwrap();
        let es = base_ext_by_module(&sum, &m).unwrap();
        let eg = base_ext_by_module(&g, &m).unwrap();
        let cmp = direct_sum_comparison(&es, &ed, &eg, d.dim()).unwrap();
        assert!(check_coring_iso(&cmp).passed());
    }
}
