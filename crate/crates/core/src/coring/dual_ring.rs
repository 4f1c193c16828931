use std::sync::Arc;

use super::Coring;
use crate::algebra::Algebra;
use crate::bimodule::{left_dual, right_dual, DualModule};
use crate::linalg::{Acc, LinMap, Vector};
use crate::report::Report;

/// A dual ring of a coring: the dual module with its convolution product.
#[derive(Clone, Debug)]
pub struct DualRing {
    pub dual: Arc<DualModule>,
    pub algebra: Arc<Algebra>,
}

impl DualRing {
    pub fn dim(&self) -> usize {
        self.dual.dim()
    }

    pub fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        self.algebra.mul(x, y)
    }
}

/// `C* = Hom_A(C, A)` with `(f * g)(c) = Σ f(g(c_(1)) c_(2))`.
pub fn right_dual_ring(c: &Coring) -> DualRing {
    let dual = right_dual(c.carrier());
    build(c, dual, |c, d, p, q, x, y| {
        let inner = c.carrier().act_left(&d.basis_map(q).rows[x], &Vector::unit(c.field(), y));
        d.basis_map(p).apply(&inner)
    })
}

/// `*C = Hom_A(C, A)` (left linear) with `(f * g)(c) = Σ f(c_(1) g(c_(2)))`.
pub fn left_dual_ring(c: &Coring) -> DualRing {
    let dual = left_dual(c.carrier());
    build(c, dual, |c, d, p, q, x, y| {
        let inner = c.carrier().act_right(&Vector::unit(c.field(), x), &d.basis_map(q).rows[y]);
        d.basis_map(p).apply(&inner)
    })
}

fn build(
    c: &Coring,
    dual: Arc<DualModule>,
    term: impl Fn(&Coring, &DualModule, usize, usize, usize, usize) -> Vector,
) -> DualRing {
    let f = c.field();
    let n = dual.dim();
    let a = c.base().dim();
    let mut mult = Vec::with_capacity(n * n);
    for p in 0..n {
        for q in 0..n {
            let h = LinMap::from_fn(f, c.dim(), a, |t| {
                let mut acc = Acc::new();
                for (x, y, s) in c.delta_terms(t) {
                    acc.add_scaled(&term(c, &dual, p, q, x, y), &s);
                }
                acc.finish()
            });
            mult.push(dual.coords(&h).expect("convolution stays in the dual"));
        }
    }
    let unit = dual.coords(c.counit()).expect("counit lies in the dual");
    let algebra = Algebra::from_structure(f, n, mult, unit).expect("dual ring shape");
    DualRing { dual, algebra }
}

/// `ι: A → *C`, `a ↦ [c ↦ ε(c a)]`, as coordinates in the left dual ring.
pub fn iota_embedding(c: &Coring, ring: &DualRing) -> LinMap {
    let f = c.field();
    LinMap::from_fn(f, c.base().dim(), ring.dim(), |a| {
        let m = LinMap::from_fn(f, c.dim(), c.base().dim(), |t| {
            c.eps(&c.carrier().act_right(&Vector::unit(f, t), &Vector::unit(f, a)))
        });
        ring.dual.coords(&m).expect("ι(a) is left linear")
    })
}

/// `ι(1) = ε` and `ι(ab) = ι(b) * ι(a)`.
pub fn check_iota(c: &Coring, ring: &DualRing, iota: &LinMap) -> Report {
    let mut r = Report::new("iota");
    let base = c.base();
    let f = c.field();
    r.require("unit_to_counit", iota.apply(base.unit()) == *ring.algebra.unit());
    let mut bad = None;
    'o: for a in 0..base.dim() {
        for b in 0..base.dim() {
            let lhs = iota.apply(base.basis_mul(a, b));
            let rhs = ring.mul(&iota.rows[b], &iota.rows[a]);
            if lhs != rhs {
                bad = Some(vec![a, b]);
                break 'o;
            }
        }
    }
    let _ = f;
    r.record("anti_multiplicative", bad);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_algebra;
    use crate::linalg::Field;

    #[test]
    fn trivial_coring_dual_ring_is_base() {
        let f = Field::Rational;
        for a in [Algebra::ground(f), Algebra::dual_numbers(f), Algebra::upper_triangular(f)] {
            let c = Coring::trivial(&a);
            let r = right_dual_ring(&c);
            assert_eq!(r.dim(), a.dim());
            assert!(check_algebra(&r.algebra).passed());
            let l = left_dual_ring(&c);
            assert!(check_algebra(&l.algebra).passed());
            let iota = iota_embedding(&c, &l);
            assert!(iota.is_invertible());
            assert!(check_iota(&c, &l, &iota).passed());
        }
    }

    #[test]
    fn matrix_coalgebra_dual_is_matrix_algebra() {
        let f = Field::Rational;
        let c = Coring::matrix_coalgebra(f, 2);
        let r = right_dual_ring(&c);
        assert_eq!(r.dim(), 4);
        assert!(check_algebra(&r.algebra).passed());
        assert!(!r.algebra.is_commutative());
        let l = left_dual_ring(&c);
        assert!(check_iota(&c, &l, &iota_embedding(&c, &l)).passed());
    }
}
