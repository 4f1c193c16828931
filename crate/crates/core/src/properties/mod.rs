//! Cosplit and coseparable corings, the transport of both properties along
//! `Σ[-]`, and the chain of isomorphisms exhibiting `Σ[D]` as Frobenius.

mod frobenius;

pub use frobenius::{check_frobenius_chain, check_frobenius_map, coring_frobenius_witness, frobenius_chain, FrobeniusChain};

use crate::bimodule::{bilinearity_failure, flatten, unflatten, ProjectiveModule, SeparabilityWitness, Witnessed};
use crate::constructions::{comatrix_coring, Extension, TensorCoring};
use crate::coring::Coring;
use crate::error::{Error, Result};
use crate::linalg::{Acc, Constraints, LinMap, Vector};
use crate::report::Report;

fn invariant_constraints(c: &Coring) -> Constraints {
    let f = c.field();
    let a = c.base();
    let n = c.dim();
    let mut cs = Constraints::new(f, n);
    let carrier = c.carrier();
    let minus = -f.one();
    for b in 0..a.dim() {
        for i in 0..n {
            cs.add(b, i, &carrier.left_basis_action(b).rows[i], &f.one());
            cs.add(b, i, &carrier.right_basis_action(b).rows[i], &minus);
        }
    }
    let g = a.dim();
    for i in 0..n {
        cs.add(g, i, &c.counit().rows[i], &f.one());
    }
    cs.add_rhs(g, a.unit());
    cs
}

/// An element `x` with `a x = x a` for all `a` and `ε(x) = 1`, or a rank certificate of absence.
pub fn cosplit_check(c: &Coring) -> Witnessed<Vector> {
    match invariant_constraints(c).solve_certified() {
        Ok(x) => Witnessed::Found(x),
        Err((r, ra)) => Witnessed::Absent(format!("invariant system inconsistent: rank {r}, augmented rank {ra}")),
    }
}

pub fn check_invariant(c: &Coring, x: &Vector) -> Report {
    let mut r = Report::new("invariant");
    let a = c.base();
    let f = c.field();
    let mut bad = None;
    for b in 0..a.dim() {
        if c.carrier().act_left(&Vector::unit(f, b), x) != c.carrier().act_right(x, &Vector::unit(f, b)) {
            bad = Some(vec![b]);
            break;
        }
    }
    r.record("central", bad);
    r.require("counit_one", c.eps(x) == *a.unit());
    r
}

fn cointegral_constraints(c: &Coring) -> Constraints {
    let f = c.field();
    let n = c.dim();
    let cc = c.cc();
    let m = cc.dim();
    let e = |i| Vector::unit(f, i);
    let minus = -f.one();
    let mut cs = Constraints::new(f, m * n);
    cs.add_rows(crate::bimodule::hom_constraints(cc.module(), c.carrier(), true, true));
    // ∇ Δ = id
    for i in 0..n {
        for (q, k) in c.comult().rows[i].iter() {
            for j in 0..n {
                cs.add(i, q * n + j, &e(j), k);
            }
        }
        cs.add_rhs(i, &e(i));
    }
    // Δ ∇ = (C ⊗ ∇)(Δ ⊗ C) = (∇ ⊗ C)(C ⊗ Δ)
    for t in 0..m {
        let xy = cc.tuple(t);
        for side in 0..2 {
            let g = n + 2 * t + side;
            for j in 0..n {
                cs.add(g, t * n + j, &c.comult().rows[j], &f.one());
            }
            let terms = if side == 0 { c.delta_terms(xy[0]) } else { c.delta_terms(xy[1]) };
            for (u, v, k) in terms {
                let (inner, outer_left) = if side == 0 { (cc.pure_basis(&[v, xy[1]]), Some(u)) } else { (cc.pure_basis(&[xy[0], u]), None) };
                for (q, l) in inner.iter() {
                    let coef = &(&minus * &k) * l;
                    for j in 0..n {
                        let value = match outer_left {
                            Some(u) => cc.pure_basis(&[u, j]),
                            None => cc.pure_basis(&[j, v]),
                        };
                        cs.add(g, q * n + j, &value, &coef);
                    }
                }
            }
        }
    }
    cs
}

/// A bicolinear `∇: C ⊗_A C → C` with `∇ ∘ Δ = id`, or a rank certificate of absence.
pub fn coseparable_check(c: &Coring) -> Witnessed<LinMap> {
    match cointegral_constraints(c).solve_certified() {
        Ok(x) => Witnessed::Found(unflatten(c.field(), &x, c.cc().dim(), c.dim())),
        Err((r, ra)) => Witnessed::Absent(format!("cointegral system inconsistent: rank {r}, augmented rank {ra}")),
    }
}

/// Whether `nabla` lies in the solution set of the cointegral system.
pub fn cointegral_member(c: &Coring, nabla: &LinMap) -> bool {
    cointegral_constraints(c).satisfied_by(&flatten(nabla))
}

/// Direct sweep of the cointegral conditions, independent of the solver.
pub fn check_cointegral(c: &Coring, nabla: &LinMap) -> Report {
    let mut r = Report::new("cointegral");
    let f = c.field();
    let cc = c.cc();
    let e = |i| Vector::unit(f, i);
    r.record("bilinear", bilinearity_failure(cc.module(), c.carrier(), nabla));
    r.record("splits_comult", c.comult().then(nabla).first_difference(&LinMap::identity(f, c.dim())).map(|i| vec![i]));
    let lhs = nabla.then(c.comult());
    let left = cc.map_basis(cc.dim(), |t| {
        let mut acc = Acc::new();
        for (u, v, k) in c.delta_terms(t[0]) {
            acc.add_scaled(&cc.pure(&[&e(u), &nabla.apply(&cc.pure_basis(&[v, t[1]]))]), &k);
        }
        acc.finish()
    });
    let right = cc.map_basis(cc.dim(), |t| {
        let mut acc = Acc::new();
        for (u, v, k) in c.delta_terms(t[1]) {
            acc.add_scaled(&cc.pure(&[&nabla.apply(&cc.pure_basis(&[t[0], u])), &e(v)]), &k);
        }
        acc.finish()
    });
    r.record("left_colinear", lhs.first_difference(&left).map(|i| vec![i]));
    r.record("right_colinear", lhs.first_difference(&right).map(|i| vec![i]));
    r
}

/// `∇(s* ⊗ d ⊗ s ⊗ s̃* ⊗ d' ⊗ s̃) = s* ⊗ ∇_D(d κ(s ⊗ s̃*) ⊗ d') ⊗ s̃`.
pub fn transport_coseparable(ext: &Extension, kappa: &SeparabilityWitness, nabla_d: &LinMap) -> Result<LinMap> {
    let m = &ext.module;
    let d = &ext.base_coring;
    let f = d.field();
    let e = |i| Vector::unit(f, i);
    let can = kappa_canonical(m, kappa);
    if kappa.kappa.apply(&can) != *m.sigma.left().unit() {
        return Err(Error::structural("transport_coseparable", "κ is not normalised"));
    }
    let c = &ext.coring;
    let parts = &ext.parts;
    Ok(c.cc().map_basis(c.dim(), |t| {
        let (x, y) = (parts.tuple(t[0]), parts.tuple(t[1]));
        let k = kappa.kappa.apply(&kappa.endo.pure_basis(&[x[2], y[0]]));
        let dk = d.carrier().act_right(&e(x[1]), &k);
        let inner = nabla_d.apply(&d.cc().pure(&[&dk, &e(y[1])]));
        parts.pure(&[&e(x[0]), &inner, &e(y[2])])
    }))
}

fn kappa_canonical(m: &ProjectiveModule, kappa: &SeparabilityWitness) -> Vector {
    let mut acc = Acc::new();
    for (ei, fi) in m.basis.elems.iter().zip(&m.basis.duals) {
        acc.add_vec(&kappa.endo.pure(&[ei, fi]));
    }
    acc.finish()
}

/// An `A`-central element `Σ s_k* ⊗ s_k` of `Σ* ⊗_B Σ` with `Σ s_k*(s_k) = 1`,
/// as an invariant of the comatrix coring.
pub fn dual_section(m: &ProjectiveModule) -> Result<(TensorCoring, Witnessed<Vector>)> {
    let comatrix = comatrix_coring(m)?;
    let w = cosplit_check(&comatrix.coring);
    Ok((comatrix, w))
}

/// `Σ_k s_k* ⊗ d ⊗ s_k` for a section `Σ s_k* ⊗ s_k` and an invariant `d` of `D`.
pub fn transport_cosplit(ext: &Extension, comatrix: &TensorCoring, section: &Vector, invariant: &Vector) -> Vector {
    let mut acc = Acc::new();
    for (t, c) in comatrix.parts.expand(section) {
        let f = ext.coring.field();
        acc.add_scaled(&ext.parts.pure(&[&Vector::unit(f, t[0]), invariant, &Vector::unit(f, t[1])]), &c);
    }
    acc.finish()
}

/// `Σ_l s_l* ⊗ ε_D(d_l) s_l` for an invariant `Σ_l s_l* ⊗ d_l ⊗ s_l` of `Σ[D]`.
pub fn extract_separability(ext: &Extension, comatrix: &TensorCoring, x: &Vector) -> Vector {
    let f = ext.coring.field();
    let d = &ext.base_coring;
    let sigma = &ext.module.sigma;
    let mut acc = Acc::new();
    for (t, c) in ext.parts.expand(x) {
        let s = sigma.act_left(&d.counit().rows[t[1]], &Vector::unit(f, t[2]));
        acc.add_scaled(&comatrix.parts.pure(&[&Vector::unit(f, t[0]), &s]), &c);
    }
    acc.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, AlgebraMap};
    use crate::constructions::sweedler_coring;
    use crate::linalg::Field;

    #[test]
    fn matrix_coalgebra_is_cosplit_and_coseparable() {
        let c = Coring::matrix_coalgebra(Field::Rational, 2);
        let x = cosplit_check(&c).found().unwrap();
        assert!(check_invariant(&c, &x).passed());
        let n = coseparable_check(&c).found().unwrap();
        assert!(check_cointegral(&c, &n).passed());
    }

    fn transport_fixture(name: &str) {
        use crate::bimodule::separable_bimodule_witness;
        use crate::fixtures::fixture;
        let fx = fixture(name, Field::Rational).unwrap();
        let ext = fx.extension().unwrap();
        let kappa = separable_bimodule_witness(&fx.sigma).unwrap().found().unwrap();
        let nabla_d = coseparable_check(&fx.coring).found().unwrap();
        let nabla = transport_coseparable(&ext, &kappa, &nabla_d).unwrap();
        assert!(check_cointegral(&ext.coring, &nabla).passed(), "{name} {}", check_cointegral(&ext.coring, &nabla));
        assert!(cointegral_member(&ext.coring, &nabla));
        let (comatrix, section) = dual_section(&ext.module).unwrap();
        let section = section.found().unwrap();
        assert!(check_invariant(&comatrix.coring, &section).passed());
        let inv = cosplit_check(&fx.coring).found().unwrap();
        let x = transport_cosplit(&ext, &comatrix, &section, &inv);
        assert!(check_invariant(&ext.coring, &x).passed(), "{name}");
        let back = extract_separability(&ext, &comatrix, &x);
        assert!(check_invariant(&comatrix.coring, &back).passed(), "{name}");
    }

    #[test]
    fn transport_along_fixtures() {
        for name in ["trivial", "matrix-coalgebra", "free-rank-two"] {
            transport_fixture(name);
        }
    }

    #[test]
    fn frobenius_chains() {
        use crate::bimodule::frobenius_bimodule_witness;
        use crate::fixtures::fixture;
        for name in ["trivial", "dual-numbers", "matrix-coalgebra", "free-rank-two"] {
            let fx = fixture(name, Field::Rational).unwrap();
            let ext = fx.extension().unwrap();
            let gamma = frobenius_bimodule_witness(&fx.sigma, 2).unwrap().found().unwrap();
            let (d_ring, sd) = coring_frobenius_witness(&fx.coring, 2);
            let sd = sd.found().unwrap();
            let chain = frobenius_chain(&ext, &gamma, &d_ring, &sd).unwrap();
            let r = check_frobenius_chain(&ext.coring, &chain);
            assert!(r.passed(), "{name} {r}");
        }
    }

    #[test]
    fn dual_numbers_sweedler_coring() {
        let f = Field::Rational;
        let alpha = AlgebraMap::unit_map(Algebra::dual_numbers(f));
        let s = sweedler_coring(&alpha).unwrap();
        // the extension is split but not separable
        assert!(matches!(cosplit_check(&s.coring), Witnessed::Absent(_)));
        let n = coseparable_check(&s.coring).found().unwrap();
        assert!(check_cointegral(&s.coring, &n).passed());
    }
}
