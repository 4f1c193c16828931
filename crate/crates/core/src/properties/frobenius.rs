use crate::bimodule::{invertible_combination, unflatten, FrobeniusWitness, Tensor, Witnessed};
use crate::constructions::Extension;
use crate::coring::{left_dual_ring, Coring, DualRing};
use crate::error::{Error, Result};
use crate::linalg::{Acc, Constraints, LinMap, Vector};
use crate::report::Report;

/// A left `B`-linear, right `T`-linear bijection `D → T`, where `T` is the
/// opposite of the left dual ring acting on `D` by `d·f = Σ d_(1) f(d_(2))`.
pub fn coring_frobenius_witness(d: &Coring, coeff_bound: u32) -> (DualRing, Witnessed<LinMap>) {
    let ring = left_dual_ring(d);
    let f = d.field();
    let e = |i| Vector::unit(f, i);
    let (n, m) = (d.dim(), ring.dim());
    let minus = -f.one();
    let carrier = d.carrier();
    let dual = ring.dual.module();
    let mut cs = Constraints::new(f, n * m);
    let mut group = 0;
    for b in 0..d.base().dim() {
        for i in 0..n {
            for (j, c) in carrier.left_basis_action(b).rows[i].iter() {
                for p in 0..m {
                    cs.add(group, j * m + p, &e(p), c);
                }
            }
            for p in 0..m {
                cs.add(group, i * m + p, &dual.left_basis_action(b).rows[p], &minus);
            }
            group += 1;
        }
    }
    for g in 0..m {
        for i in 0..n {
            let mut acc = Acc::new();
            for (x, y, k) in d.delta_terms(i) {
                acc.add_scaled(&carrier.act_right(&e(x), &ring.dual.eval(&e(g), &e(y))), &k);
            }
            for (j, c) in acc.finish().iter() {
                for p in 0..m {
                    cs.add(group, j * m + p, &e(p), c);
                }
            }
            for p in 0..m {
                cs.add(group, i * m + p, &ring.mul(&e(g), &e(p)), &minus);
            }
            group += 1;
        }
    }
    let homs: Vec<LinMap> = cs.kernel().iter().map(|v| unflatten(f, v, n, m)).collect();
    let w = match invertible_combination(f, &homs, coeff_bound) {
        Witnessed::Found((map, _)) => Witnessed::Found(map),
        Witnessed::Absent(s) => Witnessed::Absent(s),
        Witnessed::AbsentWithinBound(b) => Witnessed::AbsentWithinBound(b),
    };
    (ring, w)
}

/// `Σ[D] → *Σ ⊗ D ⊗ Σ → *Σ ⊗ T ⊗ Σ → *(Σ[D])`.
#[derive(Clone, Debug)]
pub struct FrobeniusChain {
    pub ring: DualRing,
    pub middle: std::sync::Arc<Tensor>,
    pub map: LinMap,
    pub unbalanced: Option<usize>,
}

/// Chains `γ ⊗ D ⊗ Σ`, `*Σ ⊗ σ_D ⊗ Σ` and
/// `φ ⊗ f ⊗ s ↦ [s̃* ⊗ d ⊗ s' ↦ s̃*(f(d φ(s')) s)]`.
pub fn frobenius_chain(ext: &Extension, gamma: &FrobeniusWitness, d_ring: &DualRing, sigma_d: &LinMap) -> Result<FrobeniusChain> {
    let m = &ext.module;
    let d = &ext.base_coring;
    let sigma = &m.sigma;
    let f = d.field();
    let e = |i| Vector::unit(f, i);
    if gamma.map.src != m.dual.dim() || sigma_d.src != d.dim() || sigma_d.dst != d_ring.dim() {
        return Err(Error::structural("frobenius_chain", "witness shapes do not match the extension"));
    }
    let ls = &gamma.left_dual;
    let first = Tensor::triple(ls.module(), d.carrier(), sigma)?;
    let middle = Tensor::triple(ls.module(), d_ring.dual.module(), sigma)?;
    let step1 = ext.parts.map_basis(first.dim(), |t| first.pure(&[&gamma.map.rows[t[0]], &e(t[1]), &e(t[2])]));
    let step2 = first.map_basis(middle.dim(), |t| middle.pure(&[&e(t[0]), &sigma_d.rows[t[1]], &e(t[2])]));
    let ring = left_dual_ring(&ext.coring);
    let a = sigma.right().dim();
    let functional = |t: &[usize]| {
        LinMap::from_fn(f, ext.dim(), a, |q| {
            let x = ext.parts.tuple(q);
            let phi = ls.eval(&e(t[0]), &e(x[2]));
            let dphi = d.carrier().act_right(&e(x[1]), &phi);
            let b = d_ring.dual.eval(&e(t[1]), &dphi);
            m.eval(&e(x[0]), &sigma.act_left(&b, &e(t[2])))
        })
    };
    let zeta = (0..middle.dim())
        .map(|q| {
            ring.dual
                .coords(&functional(&middle.tuple(q)))
                .ok_or_else(|| Error::structural("frobenius_chain", "functional is not left linear"))
        })
        .collect::<Result<Vec<_>>>()?;
    let zeta = LinMap::from_rows(f, ring.dim(), zeta);
    let unbalanced = middle.unbalanced(|t| crate::bimodule::flatten(&functional(t)));
    let map = step1.then(&step2).then(&zeta);
    Ok(FrobeniusChain { ring, middle, map, unbalanced })
}

/// Well-definedness plus the conditions of [`check_frobenius_map`].
pub fn check_frobenius_chain(c: &Coring, chain: &FrobeniusChain) -> Report {
    let mut r = check_frobenius_map(c, &chain.ring, &chain.map);
    r.subject = "frobenius_chain".into();
    r.record("well_defined", chain.unbalanced.map(|i| vec![i]));
    r.checks.rotate_right(1);
    r
}

/// Bijectivity, left linearity over the base and right `R`-linearity for
/// `x·r = Σ x_(1) r(x_(2))` of a map `C → R`.
pub fn check_frobenius_map(c: &Coring, ring: &DualRing, map: &LinMap) -> Report {
    let mut r = Report::new("frobenius_map");
    let f = c.field();
    let e = |i| Vector::unit(f, i);
    r.require("bijective", map.is_invertible());
    let dual = ring.dual.module();
    let mut bad = None;
    'l: for a in 0..c.base().dim() {
        for x in 0..c.dim() {
            let lhs = map.apply(&c.carrier().left_basis_action(a).rows[x]);
            if lhs != dual.left_basis_action(a).apply(&map.rows[x]) {
                bad = Some(vec![a, x]);
                break 'l;
            }
        }
    }
    r.record("left_linear", bad);
    let mut bad = None;
    'r: for g in 0..ring.dim() {
        for x in 0..c.dim() {
            let mut acc = Acc::new();
            for (u, v, k) in c.delta_terms(x) {
                acc.add_scaled(&c.carrier().act_right(&e(u), &ring.dual.eval(&e(g), &e(v))), &k);
            }
            let lhs = map.apply(&acc.finish());
            if lhs != ring.mul(&e(g), &map.rows[x]) {
                bad = Some(vec![g, x]);
                break 'r;
            }
        }
    }
    r.record("right_linear", bad);
    r
}
