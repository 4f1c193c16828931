use std::sync::Arc;

use crate::bimodule::Tensor;
use crate::coring::same_coring;
use crate::error::{Error, Result};
use crate::linalg::{Acc, Vector};

use super::{OneCellRight, TwoCell};

/// `(Σ ⊗_A W, (Σ ⊗ w)(s ⊗ W))` together with the tensor that carries it.
#[derive(Clone, Debug)]
pub struct HorizontalComposite {
    pub cell: OneCellRight,
    pub product: Arc<Tensor>,
}

/// Composes `(W, w): C' → C` followed by `(Σ, s): C → D`.
pub fn hcompose_one_cells(outer: &OneCellRight, inner: &OneCellRight) -> Result<HorizontalComposite> {
    if !same_coring(&outer.source, &inner.target) {
        return Err(Error::structural("hcompose", "source of the outer cell is not the target of the inner cell"));
    }
    let product = Tensor::pair(&outer.sigma, &inner.sigma)?;
    let f = outer.sigma.field();
    let cell = OneCellRight::from_formula(inner.source.clone(), outer.target.clone(), product.module().clone(), |cod, t| {
        let sw = product.tuple(t[1]);
        let mut acc = Acc::new();
        for (u, c, k) in outer.cell_terms(t[0], sw[0]) {
            for (w, c2, l) in inner.cell_terms(c, sw[1]) {
                let uw = product.pure_basis(&[u, w]);
                acc.add_scaled(&cod.pure(&[&uw, &Vector::unit(f, c2)]), &(&k * &l));
            }
        }
        acc.finish()
    })?;
    Ok(HorizontalComposite { cell, product })
}

/// `a ⊗ b = (Σ̃ ⊗ b)(s̃ ⊗ W)(D ⊗ a ⊗ W)(Δ_D ⊗ Σ ⊗ W)`, with `a` between cells
/// `C → D` and `b` between cells `C' → C`.
pub fn hcompose_two_cells(a: &TwoCell, b: &TwoCell) -> Result<TwoCell> {
    let src = hcompose_one_cells(&a.source, &b.source)?;
    let dst = hcompose_one_cells(&a.target, &b.target)?;
    let d = &a.source.target;
    let f = d.field();
    let e = |i| Vector::unit(f, i);
    let map = src.cell.domain.map_basis(dst.cell.sigma.dim(), |t| {
        let sw = src.product.tuple(t[1]);
        let mut acc = Acc::new();
        for (d1, d2, k) in d.delta_terms(t[0]) {
            let v = a.map.apply(&a.source.domain.pure_basis(&[d2, sw[0]]));
            let img = a.target.apply_to(d1, &v);
            for (tp, l) in a.target.codomain.expand(&img) {
                let bw = b.map.apply(&b.source.domain.pure_basis(&[tp[1], sw[1]]));
                acc.add_scaled(&dst.product.pure(&[&e(tp[0]), &bw]), &(&k * &l));
            }
        }
        acc.finish()
    });
    TwoCell::new(src.cell, dst.cell, map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicells::{check_one_cell_right, check_two_cell};
    use crate::coring::Coring;
    use crate::linalg::Field;

    #[test]
    fn identity_composites() {
        let c = Coring::matrix_coalgebra(Field::Rational, 2);
        let id = OneCellRight::identity(&c);
        let h = hcompose_one_cells(&id, &id).unwrap();
        assert!(check_one_cell_right(&h.cell).passed());
        let a = TwoCell::identity(&id);
        let ab = hcompose_two_cells(&a, &a).unwrap();
        assert!(check_two_cell(&ab).passed());
        assert_eq!(ab.map, TwoCell::identity(&h.cell).map);
    }
}
