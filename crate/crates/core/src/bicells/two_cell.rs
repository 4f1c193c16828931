use crate::bimodule::{bilinearity_failure, hom_space};
use crate::coring::same_coring;
use crate::error::{Error, Result};
use crate::linalg::{combination_kernel, Acc, LinMap, Vector};
use crate::report::Report;

use super::{first_mismatch, OneCellLeft, OneCellRight};

/// `a: D ⊗_B Σ → Σ̃` between right 1-cells with the same source and target corings.
#[derive(Clone, Debug)]
pub struct TwoCell {
    pub source: OneCellRight,
    pub target: OneCellRight,
    pub map: LinMap,
}

/// `b: Ξ ⊗_B D → Ξ̃` between left 1-cells.
#[derive(Clone, Debug)]
pub struct LeftTwoCell {
    pub source: OneCellLeft,
    pub target: OneCellLeft,
    pub map: LinMap,
}

impl TwoCell {
    pub fn new(source: OneCellRight, target: OneCellRight, map: LinMap) -> Result<Self> {
        if !same_coring(&source.source, &target.source) || !same_coring(&source.target, &target.target) {
            return Err(Error::structural("two_cell", "1-cells do not share source and target corings"));
        }
        if map.src != source.domain.dim() || map.dst != target.sigma.dim() {
            return Err(Error::structural("two_cell.map", "shape does not match D⊗Σ → Σ̃"));
        }
        Ok(TwoCell { source, target, map })
    }

    /// `ε ⊗ Σ`.
    pub fn identity(c: &OneCellRight) -> Self {
        let d = &c.target;
        let map = c.domain.map_basis(c.sigma.dim(), |t| {
            c.sigma.act_left(&d.counit().rows[t[0]], &Vector::unit(d.field(), t[1]))
        });
        TwoCell { source: c.clone(), target: c.clone(), map }
    }

    /// `Σ_(d) a(d ⊗ v)` for basis `d` and `v ∈ Σ`.
    pub fn apply_to(&self, d: usize, v: &Vector) -> Vector {
        let f = self.map.field;
        self.map.apply(&self.source.domain.pure(&[&Vector::unit(f, d), v]))
    }

    /// `a' ∘ (D ⊗ a) ∘ (Δ ⊗ Σ)`, computed through the unreduced forms.
    pub fn then(&self, next: &TwoCell) -> Result<TwoCell> {
        if !std::sync::Arc::ptr_eq(&self.target.sigma, &next.source.sigma) && self.target.sigma != next.source.sigma {
            return Err(Error::structural("two_cell.compose", "middle 1-cells differ"));
        }
        let u = two_cell_unreduce(self).then(&two_cell_unreduce(next));
        let map = two_cell_reduce(&self.source, &next.target, &u);
        TwoCell::new(self.source.clone(), next.target.clone(), map)
    }
}

/// `(D ⊗ a)(Δ ⊗ Σ): D ⊗ Σ → D ⊗ Σ̃`.
pub fn two_cell_unreduce(a: &TwoCell) -> LinMap {
    let d = &a.source.target;
    let f = d.field();
    let dst = &a.target.domain;
    a.source.domain.map_basis(dst.dim(), |t| {
        let mut acc = Acc::new();
        for (x, y, s) in d.delta_terms(t[0]) {
            let img = a.map.apply(&a.source.domain.pure_basis(&[y, t[1]]));
            acc.add_scaled(&dst.pure(&[&Vector::unit(f, x), &img]), &s);
        }
        acc.finish()
    })
}

/// `(ε ⊗ Σ̃) ∘ u` for `u: D ⊗ Σ → D ⊗ Σ̃`.
pub fn two_cell_reduce(source: &OneCellRight, target: &OneCellRight, u: &LinMap) -> LinMap {
    let d = &source.target;
    let eps = target.domain.map_basis(target.sigma.dim(), |t| {
        target.sigma.act_left(&d.counit().rows[t[0]], &Vector::unit(d.field(), t[1]))
    });
    u.then(&eps)
}

fn two_cell_sides(src: &OneCellRight, tgt: &OneCellRight, map: &LinMap) -> (Vec<Vector>, Vec<Vector>) {
    let d = &src.target;
    let f = d.field();
    let mut lhs = Vec::with_capacity(src.domain.dim());
    let mut rhs = Vec::with_capacity(src.domain.dim());
    for q in 0..src.domain.dim() {
        let t = src.domain.tuple(q);
        let (mut l, mut r) = (Acc::new(), Acc::new());
        for (x, y, s) in d.delta_terms(t[0]) {
            let v = map.apply(&src.domain.pure_basis(&[y, t[1]]));
            l.add_scaled(&tgt.apply_to(x, &v), &s);
            for (u, c, k) in src.cell_terms(y, t[1]) {
                let v = map.apply(&src.domain.pure_basis(&[x, u]));
                r.add_scaled(&tgt.codomain.pure(&[&v, &Vector::unit(f, c)]), &(&s * &k));
            }
        }
        lhs.push(l.finish());
        rhs.push(r.finish());
    }
    (lhs, rhs)
}

pub fn check_two_cell(a: &TwoCell) -> Report {
    let mut r = Report::new("two_cell");
    let (src, tgt) = (&a.source, &a.target);
    r.record("bilinear", bilinearity_failure(src.domain.module(), &tgt.sigma, &a.map));
    let (lhs, rhs) = two_cell_sides(src, tgt, &a.map);
    r.record("colinear", first_mismatch(src.domain.dim(), |q| lhs[q].clone(), |q| rhs[q].clone()));
    r
}

/// Basis of all 2-cells between two right 1-cells.
pub fn two_cells(src: &OneCellRight, tgt: &OneCellRight) -> Vec<LinMap> {
    let candidates = hom_space(src.domain.module(), &tgt.sigma, true, true);
    combination_kernel(&candidates, |m| {
        let (l, r) = two_cell_sides(src, tgt, m);
        l.iter().zip(&r).map(|(x, y)| x.sub(y)).collect()
    })
}

impl LeftTwoCell {
    pub fn new(source: OneCellLeft, target: OneCellLeft, map: LinMap) -> Result<Self> {
        if !same_coring(&source.source, &target.source) || !same_coring(&source.target, &target.target) {
            return Err(Error::structural("left_two_cell", "1-cells do not share source and target corings"));
        }
        if map.src != source.domain.dim() || map.dst != target.xi.dim() {
            return Err(Error::structural("left_two_cell.map", "shape does not match Ξ⊗D → Ξ̃"));
        }
        Ok(LeftTwoCell { source, target, map })
    }

    /// `Ξ ⊗ ε`.
    pub fn identity(c: &OneCellLeft) -> Self {
        let d = &c.target;
        let map = c.domain.map_basis(c.xi.dim(), |t| {
            c.xi.act_right(&Vector::unit(d.field(), t[0]), &d.counit().rows[t[1]])
        });
        LeftTwoCell { source: c.clone(), target: c.clone(), map }
    }

    /// `b' ∘ (b ⊗ D) ∘ (Ξ ⊗ Δ)`.
    pub fn then(&self, next: &LeftTwoCell) -> Result<LeftTwoCell> {
        let d = &self.source.target;
        let f = d.field();
        let map = self.source.domain.map_basis(next.target.xi.dim(), |t| {
            let mut acc = Acc::new();
            for (x, y, s) in d.delta_terms(t[1]) {
                let v = self.map.apply(&self.source.domain.pure_basis(&[t[0], x]));
                acc.add_scaled(&next.map.apply(&next.source.domain.pure(&[&v, &Vector::unit(f, y)])), &s);
            }
            acc.finish()
        });
        LeftTwoCell::new(self.source.clone(), next.target.clone(), map)
    }
}

pub fn check_left_two_cell(b: &LeftTwoCell) -> Report {
    let mut r = Report::new("left_two_cell");
    let (src, tgt) = (&b.source, &b.target);
    let d = &src.target;
    let f = d.field();
    r.record("bilinear", bilinearity_failure(src.domain.module(), &tgt.xi, &b.map));
    let lhs = |q: usize| {
        let t = src.domain.tuple(q);
        let mut acc = Acc::new();
        for (x, y, s) in d.delta_terms(t[1]) {
            let v = b.map.apply(&src.domain.pure_basis(&[t[0], x]));
            acc.add_scaled(&tgt.apply_to(&v, y), &s);
        }
        acc.finish()
    };
    let rhs = |q: usize| {
        let t = src.domain.tuple(q);
        let mut acc = Acc::new();
        for (x, y, s) in d.delta_terms(t[1]) {
            for (c, u, k) in src.cell_terms(t[0], x) {
                let v = b.map.apply(&src.domain.pure_basis(&[u, y]));
                acc.add_scaled(&tgt.codomain.pure(&[&Vector::unit(f, c), &v]), &(&s * &k));
            }
        }
        acc.finish()
    };
    r.record("colinear", first_mismatch(src.domain.dim(), lhs, rhs));
    r
}
