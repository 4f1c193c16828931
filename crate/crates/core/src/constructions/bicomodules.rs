use std::sync::Arc;

use super::Extension;
use crate::bimodule::Tensor;
use crate::coring::{Bicomodule, LeftComodule, RightComodule};
use crate::error::Result;
use crate::linalg::{Acc, Vector};

/// `D ⊗_B Σ` as a `(D, Σ[D])`-bicomodule and `Σ* ⊗_B D` as a `(Σ[D], D)`-bicomodule.
#[derive(Clone, Debug)]
pub struct CanonicalBicomodules {
    pub d_sigma: Arc<Tensor>,
    pub sigma_d: Arc<Tensor>,
    pub left_module: Bicomodule,
    pub right_module: Bicomodule,
}

pub fn canonical_bicomodules(ext: &Extension) -> Result<CanonicalBicomodules> {
    let d = &ext.base_coring;
    let m = &ext.module;
    let c = &ext.coring;
    let f = d.field();
    let e = |i| Vector::unit(f, i);
    let pairs: Vec<(&Vector, &Vector)> = m.basis.elems.iter().zip(&m.basis.duals).collect();

    let ds = Tensor::pair(d.carrier(), &m.sigma)?;
    let ds_mod = ds.module().clone();
    let left_t = Tensor::pair(d.carrier(), &ds_mod)?;
    let left_co = ds.map_basis(left_t.dim(), |t| {
        let mut acc = Acc::new();
        for (x, y, s) in d.delta_terms(t[0]) {
            acc.add_scaled(&left_t.pure(&[&e(x), &ds.pure(&[&e(y), &e(t[1])])]), &s);
        }
        acc.finish()
    });
    let right_t = Tensor::pair(&ds_mod, c.carrier())?;
    let right_co = ds.map_basis(right_t.dim(), |t| {
        let mut acc = Acc::new();
        for (x, y, s) in d.delta_terms(t[0]) {
            for (ei, fi) in &pairs {
                let l = ds.pure(&[&e(x), ei]);
                let r = ext.parts.pure(&[fi, &e(y), &e(t[1])]);
                acc.add_scaled(&right_t.pure(&[&l, &r]), &s);
            }
        }
        acc.finish()
    });
    let left_module = Bicomodule::new(
        LeftComodule::with_target(d.clone(), ds_mod.clone(), left_t, left_co)?,
        RightComodule::with_target(c.clone(), ds_mod, right_t, right_co)?,
    )?;

    let sd = Tensor::pair(m.dual_module(), d.carrier())?;
    let sd_mod = sd.module().clone();
    let left_t = Tensor::pair(c.carrier(), &sd_mod)?;
    let left_co = sd.map_basis(left_t.dim(), |t| {
        let mut acc = Acc::new();
        for (x, y, s) in d.delta_terms(t[1]) {
            for (ei, fi) in &pairs {
                let l = ext.parts.pure(&[&e(t[0]), &e(x), ei]);
                let r = sd.pure(&[fi, &e(y)]);
                acc.add_scaled(&left_t.pure(&[&l, &r]), &s);
            }
        }
        acc.finish()
    });
    let right_t = Tensor::pair(&sd_mod, d.carrier())?;
    let right_co = sd.map_basis(right_t.dim(), |t| {
        let mut acc = Acc::new();
        for (x, y, s) in d.delta_terms(t[1]) {
            acc.add_scaled(&right_t.pure(&[&sd.pure(&[&e(t[0]), &e(x)]), &e(y)]), &s);
        }
        acc.finish()
    });
    let right_module = Bicomodule::new(
        LeftComodule::with_target(c.clone(), sd_mod.clone(), left_t, left_co)?,
        RightComodule::with_target(d.clone(), sd_mod, right_t, right_co)?,
    )?;
    Ok(CanonicalBicomodules { d_sigma: ds, sigma_d: sd, left_module, right_module })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::{Bimodule, ProjectiveModule};
    use crate::constructions::base_ext_by_module;
    use crate::coring::{check_bicomodule, Coring};
    use crate::linalg::Field;

    #[test]
    fn canonical_bicomodules_pass() {
        let f = Field::Rational;
        let m = ProjectiveModule::new(&Bimodule::vector_space(f, 2)).unwrap();
        for d in [Coring::matrix_coalgebra(f, 2), Coring::trivial(&crate::algebra::Algebra::ground(f))] {
            let ext = base_ext_by_module(&d, &m).unwrap();
            let cb = canonical_bicomodules(&ext).unwrap();
            assert!(check_bicomodule(&cb.left_module).passed());
            assert!(check_bicomodule(&cb.right_module).passed());
        }
    }
}
