use std::sync::Arc;

use crate::algebra::same_algebra;
use crate::bimodule::{Bimodule, ProjectiveModule};
use crate::constructions::{base_ext_by_module, Extension};
use crate::coring::{check_coring_morphism, same_coring, Coring, CoringMorphism, GeneralCoringMorphism};
use crate::error::{Error, Result};
use crate::linalg::{Acc, Vector};
use crate::report::Report;

use super::OneCellRight;

/// `(Σ, σ)` with `σ: Σ[D] → C` a morphism of `A`-corings.
#[derive(Clone, Debug)]
pub struct ModuleMorphism {
    pub ext: Extension,
    pub morphism: CoringMorphism,
}

impl ModuleMorphism {
    pub fn new(ext: Extension, morphism: CoringMorphism) -> Result<Self> {
        if !same_coring(&ext.coring, &morphism.source) {
            return Err(Error::structural("module_morphism", "morphism does not start at Σ[D]"));
        }
        Ok(ModuleMorphism { ext, morphism })
    }

    pub fn sigma(&self) -> &Arc<Bimodule> {
        &self.ext.module.sigma
    }

    pub fn module(&self) -> &ProjectiveModule {
        &self.ext.module
    }

    /// The `B`-coring `D`.
    pub fn source(&self) -> &Arc<Coring> {
        &self.ext.base_coring
    }

    /// The `A`-coring `C`.
    pub fn target(&self) -> &Arc<Coring> {
        &self.morphism.target
    }

    /// `σ(s* ⊗ d ⊗ s)` for an arbitrary `s* ∈ Σ*`, basis `d` and `s ∈ Σ`.
    pub fn apply(&self, s_dual: &Vector, d: usize, s: &Vector) -> Vector {
        let f = self.ext.coring.field();
        self.morphism.map.apply(&self.ext.element(s_dual, &Vector::unit(f, d), s))
    }

    /// `(Σ = A, σ(s* ⊗ d ⊗ a') = s*(1) γ(d) a')` for `A` a `(B, A)`-bimodule through `α`.
    pub fn from_general_morphism(g: &GeneralCoringMorphism) -> Result<Self> {
        let a = &g.target.base().clone();
        let sigma = Bimodule::regular(a).restrict(Some(&g.alpha), None);
        let p = ProjectiveModule::new(&sigma)?;
        let ext = base_ext_by_module(&g.source, &p)?;
        let f = a.field();
        let e = |i| Vector::unit(f, i);
        let c = g.target.carrier();
        let map = ext.parts.map_basis(g.target.dim(), |t| {
            let s1 = p.eval(&e(t[0]), a.unit());
            c.act_right(&c.act_left(&s1, &g.gamma.rows[t[1]]), &e(t[2]))
        });
        let morphism = CoringMorphism::new(ext.coring.clone(), g.target.clone(), map)?;
        Ok(ModuleMorphism { ext, morphism })
    }
}

pub fn check_module_morphism(m: &ModuleMorphism) -> Report {
    let mut r = check_coring_morphism(&m.morphism);
    r.subject = "module_morphism".into();
    r
}

/// `s_σ(d ⊗ s) = Σ_i e_i ⊗ σ(e_i* ⊗ d ⊗ s)`.
pub fn mm_to_one_cell(m: &ModuleMorphism) -> Result<OneCellRight> {
    let f = m.ext.coring.field();
    let p = m.module();
    OneCellRight::from_formula(m.target().clone(), m.source().clone(), m.sigma().clone(), |cod, t| {
        let mut acc = Acc::new();
        for (ei, fi) in p.basis.elems.iter().zip(&p.basis.duals) {
            acc.add_vec(&cod.pure(&[ei, &m.apply(fi, t[0], &Vector::unit(f, t[1]))]));
        }
        acc.finish()
    })
}

/// `σ(s* ⊗ d ⊗ s) = Σ s*(u) c` over `s(d ⊗ s) = Σ u ⊗ c`.
pub fn one_cell_to_mm(c: &OneCellRight) -> Result<ModuleMorphism> {
    if !same_algebra(c.sigma.right(), c.source.base()) {
        return Err(Error::structural("one_cell_to_mm", "bimodule does not match the source coring"));
    }
    let p = ProjectiveModule::new(&c.sigma)?;
    let ext = base_ext_by_module(&c.target, &p)?;
    let f = c.sigma.field();
    let e = |i| Vector::unit(f, i);
    let carrier = c.source.carrier();
    let map = ext.parts.map_basis(c.source.dim(), |t| {
        let mut acc = Acc::new();
        for (u, x, k) in c.cell_terms(t[1], t[2]) {
            acc.add_scaled(&carrier.act_left(&p.eval(&e(t[0]), &e(u)), &e(x)), &k);
        }
        acc.finish()
    });
    let morphism = CoringMorphism::new(ext.coring.clone(), c.source.clone(), map)?;
    Ok(ModuleMorphism { ext, morphism })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::bicells::check_one_cell_right;
    use crate::linalg::Field;

    #[test]
    fn identity_morphism_round_trip() {
        let f = Field::Rational;
        for c in [Coring::matrix_coalgebra(f, 2), Coring::trivial(&Algebra::dual_numbers(f))] {
            let m = ModuleMorphism::from_general_morphism(&GeneralCoringMorphism::identity(&c)).unwrap();
            assert!(check_module_morphism(&m).passed());
            let cell = mm_to_one_cell(&m).unwrap();
            assert!(check_one_cell_right(&cell).passed());
            let back = one_cell_to_mm(&cell).unwrap();
            assert_eq!(back.morphism.map, m.morphism.map);
            let again = mm_to_one_cell(&back).unwrap();
            assert_eq!(again.cell, cell.cell);
        }
    }
}
