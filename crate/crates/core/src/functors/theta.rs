use std::sync::Arc;

use super::{dual_side, DualSideBicomodule};
use crate::algebra::Algebra;
use crate::bicells::ModuleMorphism;
use crate::bimodule::flatten;
use crate::coring::{right_comodule_homs, right_dual_ring, DualRing, RightComodule};
use crate::error::{Error, Result};
use crate::linalg::{Acc, Echelon, LinMap, Vector};
use crate::report::Report;

/// Colinear right-linear endomorphisms of `m` as an algebra under composition,
/// together with the basis maps.
pub fn endomorphism_algebra(m: &RightComodule) -> Result<(Arc<Algebra>, Vec<LinMap>)> {
    let f = m.coring.field();
    let homs = right_comodule_homs(m, m, false);
    let flat: Vec<Vector> = homs.iter().map(flatten).collect();
    let ech = Echelon::from_rows(f, flat.iter());
    let coords = |g: &LinMap| {
        ech.coords(&flatten(g)).ok_or_else(|| Error::structural("endomorphism_algebra", "not closed under composition"))
    };
    let mut mult = Vec::with_capacity(homs.len() * homs.len());
    for x in &homs {
        for y in &homs {
            mult.push(coords(&y.then(x))?);
        }
    }
    let unit = coords(&LinMap::identity(f, m.dim()))?;
    Ok((Algebra::from_structure(f, homs.len(), mult, unit)?, homs))
}

/// `End^D(Σ* ⊗_B D) → (Σ[D])*`, `φ ↦ [s* ⊗ d ⊗ s ↦ ε(φ(s* ⊗ d) ⊗ s)]`.
#[derive(Clone, Debug)]
pub struct ThetaIso {
    pub side: DualSideBicomodule,
    pub endomorphisms: Arc<Algebra>,
    pub basis: Vec<LinMap>,
    pub ring: DualRing,
    pub map: LinMap,
}

pub fn theta_iso(mm: &ModuleMorphism) -> Result<ThetaIso> {
    let side = dual_side(mm)?;
    let (endomorphisms, basis) = endomorphism_algebra(&side.right)?;
    let ext = &mm.ext;
    let ring = right_dual_ring(&ext.coring);
    let f = mm.sigma().field();
    let a = mm.sigma().right().dim();
    let rows = basis
        .iter()
        .map(|phi| {
            let h = ext.parts.map_basis(a, |t| {
                let mut acc = Acc::new();
                for (p, c) in side.tensor.expand(&phi.apply(&side.tensor.pure_basis(&[t[0], t[1]]))) {
                    acc.add_scaled(&ext.coring.eps(&ext.parts.pure_basis(&[p[0], p[1], t[2]])), &c);
                }
                acc.finish()
            });
            ring.dual.coords(&h).ok_or_else(|| Error::structural("theta", "image is not right linear"))
        })
        .collect::<Result<Vec<_>>>()?;
    let map = LinMap::from_rows(f, ring.dim(), rows);
    Ok(ThetaIso { side, endomorphisms, basis, ring, map })
}

/// Bijective, unital and multiplicative.
pub fn check_theta(t: &ThetaIso) -> Report {
    let mut r = Report::new("theta");
    r.require("bijective", t.map.is_invertible());
    r.require("unital", t.map.apply(t.endomorphisms.unit()) == *t.ring.algebra.unit());
    let n = t.endomorphisms.dim();
    let mut bad = None;
    'o: for x in 0..n {
        for y in 0..n {
            let lhs = t.map.apply(t.endomorphisms.basis_mul(x, y));
            let rhs = t.ring.mul(&t.map.rows[x], &t.map.rows[y]);
            if lhs != rhs {
                bad = Some(vec![x, y]);
                break 'o;
            }
        }
    }
    r.record("multiplicative", bad);
    r
}
