//! Small random instances shared by the property tests and the acceptance runner.

use std::sync::Arc;

use corings::algebra::Algebra;
use corings::bicells::{
    check_two_cell, double_dual_square, double_dual_two_cell_square, mm_to_one_cell, one_cell_to_mm, two_cell_reduce,
    two_cell_unreduce, two_cells, ModuleMorphism, TwoCell,
};
use corings::bimodule::{Bimodule, ProjectiveModule};
use corings::constructions::base_ext_by_module;
use corings::coring::{Coring, CoringMorphism};
use corings::error::Result;
use corings::fixtures::{idempotent_line, FIELDS};
use corings::linalg::{Field, LinMap};

/// A coring `D` and a bimodule `Σ` over its base, every dimension at most 3.
pub fn instance(field: Field, index: usize) -> (Arc<Coring>, Arc<Bimodule>) {
    let k = Algebra::ground(field);
    let ground_corings = [
        Coring::trivial(&k),
        Coring::grouplike(field, 2),
        Coring::grouplike(field, 3),
        Coring::divided_powers(field, 2),
        Coring::divided_powers(field, 3),
    ];
    let right_algebras = [
        Algebra::dual_numbers(field),
        Algebra::product(field, 2),
        Algebra::truncated_polynomial(field, 3),
        Algebra::upper_triangular(field),
    ];
    let mut ground_modules: Vec<Arc<Bimodule>> = (1..=3).map(|n| Bimodule::vector_space(field, n)).collect();
    ground_modules.extend(right_algebras.iter().map(|a| Bimodule::regular(a).forget_left()));
    let over_ground = ground_corings.len() * ground_modules.len();
    if index < over_ground {
        return (ground_corings[index / ground_modules.len()].clone(), ground_modules[index % ground_modules.len()].clone());
    }
    let product = Algebra::product(field, 2);
    let dual = Algebra::dual_numbers(field);
    let rest = [
        (Coring::trivial(&product), idempotent_line(field)),
        (Coring::trivial(&product), Bimodule::regular(&product)),
        (Coring::trivial(&dual), Bimodule::regular(&dual)),
        (Coring::trivial(&dual), Bimodule::regular(&dual).forget_right()),
    ];
    rest[(index - over_ground) % rest.len()].clone()
}

pub const INSTANCES: usize = 5 * 7 + 4;

/// Exact bicell identities on one instance. The 2-cell is the combination of the
/// basis of endo-2-cells with the given coefficients. Returns the failed identities.
pub fn bicell_identities(field_index: usize, index: usize, coeffs: &[i64]) -> Result<Vec<String>> {
    let field = FIELDS[field_index % FIELDS.len()];
    let (d, sigma) = instance(field, index);
    let ext = base_ext_by_module(&d, &ProjectiveModule::new(&sigma)?)?;
    let id = CoringMorphism::identity(&ext.coring);
    let mm = ModuleMorphism::new(ext, id)?;
    let mut failed = Vec::new();

    let cell = mm_to_one_cell(&mm)?;
    let back = one_cell_to_mm(&cell)?;
    if back.morphism.map != mm.morphism.map {
        failed.push("module morphism -> 1-cell -> module morphism".to_string());
    }
    if mm_to_one_cell(&back)?.cell != cell.cell {
        failed.push("1-cell -> module morphism -> 1-cell".to_string());
    }
    if !double_dual_square(&cell)?.passed() {
        failed.push("double dual of the 1-cell".to_string());
    }

    let basis = two_cells(&cell, &cell);
    let mut map = LinMap::zero(field, cell.domain.dim(), cell.sigma.dim());
    for (b, &c) in basis.iter().zip(coeffs) {
        map = map.add(&b.scale(&field.int(c)));
    }
    let a = TwoCell::new(cell.clone(), cell.clone(), map)?;
    if !check_two_cell(&a).passed() {
        failed.push("random combination is a 2-cell".to_string());
    }
    let u = two_cell_unreduce(&a);
    let reduced = two_cell_reduce(&cell, &cell, &u);
    if reduced != a.map {
        failed.push("reduce after unreduce".to_string());
    }
    if two_cell_unreduce(&TwoCell::new(cell.clone(), cell.clone(), reduced)?) != u {
        failed.push("unreduce after reduce".to_string());
    }
    if !double_dual_two_cell_square(&a)?.passed() {
        failed.push("double dual of the 2-cell".to_string());
    }
    Ok(failed)
}
