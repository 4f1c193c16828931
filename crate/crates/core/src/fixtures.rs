//! The standard fixture corpus: five families of `(D, Σ)` pairs over ℚ, 𝔽_5 and 𝔽_7,
//! plus default comodule families and a few special-purpose instances.

use std::sync::Arc;

use crate::algebra::{Algebra, AlgebraMap};
use crate::bicells::ModuleMorphism;
use crate::bimodule::{Bimodule, ProjectiveModule};
use crate::constructions::{base_ext_by_map, base_ext_by_module, sweedler_coring, Extension};
use crate::coring::{Coring, CoringMorphism, GeneralCoringMorphism, LeftComodule, RightComodule};
use crate::error::{Error, Result};
use crate::linalg::{Field, LinMap, Vector};

pub const FAMILIES: [&str; 5] = ["trivial", "split-idempotent", "dual-numbers", "matrix-coalgebra", "free-rank-two"];

pub const FIELDS: [Field; 3] = [Field::Rational, Field::Prime(5), Field::Prime(7)];

/// A `B`-coring `D` and a `(B, A)`-bimodule `Σ` that is finitely generated projective over `A`.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub field: Field,
    pub coring: Arc<Coring>,
    pub sigma: Arc<Bimodule>,
}

impl Fixture {
    pub fn module(&self) -> Result<ProjectiveModule> {
        ProjectiveModule::new(&self.sigma)
    }

    pub fn extension(&self) -> Result<Extension> {
        base_ext_by_module(&self.coring, &self.module()?)
    }

    /// `(Σ, id)` with `C = Σ[D]`.
    pub fn identity_morphism(&self) -> Result<ModuleMorphism> {
        let ext = self.extension()?;
        let id = CoringMorphism::identity(&ext.coring);
        ModuleMorphism::new(ext, id)
    }
}

pub fn field_name(f: Field) -> String {
    match f {
        Field::Rational => "Q".into(),
        Field::Prime(p) => format!("F{p}"),
    }
}

/// `k × k` acting on `k` through the first idempotent.
pub fn idempotent_line(field: Field) -> Arc<Bimodule> {
    let b = Algebra::product(field, 2);
    let k = Algebra::ground(field);
    let one = LinMap::identity(field, 1);
    Bimodule::new(b, k, 1, vec![one.clone(), LinMap::zero(field, 1, 1)], vec![one]).expect("idempotent line")
}

/// `A` as a `(k, A)`-bimodule.
pub fn algebra_as_right_module(a: &Arc<Algebra>) -> Arc<Bimodule> {
    Bimodule::regular(a).forget_left()
}

pub fn fixture(name: &str, field: Field) -> Result<Fixture> {
    let k = Algebra::ground(field);
    let (coring, sigma) = match name {
        "trivial" => (Coring::trivial(&k), Bimodule::regular(&k)),
        "split-idempotent" => (Coring::trivial(&Algebra::product(field, 2)), idempotent_line(field)),
        "dual-numbers" => (Coring::trivial(&k), algebra_as_right_module(&Algebra::dual_numbers(field))),
        "matrix-coalgebra" => (Coring::matrix_coalgebra(field, 2), Bimodule::vector_space(field, 2)),
        "free-rank-two" => (Coring::trivial(&k), Bimodule::vector_space(field, 2)),
        _ => return Err(Error::structural("fixture", format!("unknown family {name}"))),
    };
    Ok(Fixture { name: format!("{name}/{}", field_name(field)), field, coring, sigma })
}

/// All five families over all three fields.
pub fn standard_fixtures() -> Vec<Fixture> {
    FIELDS
        .iter()
        .flat_map(|&f| FAMILIES.iter().map(move |n| fixture(n, f).expect("standard fixture")))
        .collect()
}

/// The coring itself and, over the ground field, every cyclic subcomodule generated
/// by a basis element, with names.
pub fn right_family(c: &Arc<Coring>) -> Vec<(String, RightComodule)> {
    let mut out = vec![("regular".to_string(), RightComodule::regular(c))];
    if c.base().is_ground() {
        for i in 0..c.dim() {
            if let Ok(m) = RightComodule::cyclic(c, &Vector::unit(c.field(), i)) {
                out.push((format!("cyclic[{i}]"), m));
            }
        }
    }
    out
}

pub fn left_family(c: &Arc<Coring>) -> Vec<(String, LeftComodule)> {
    let mut out = vec![("regular".to_string(), LeftComodule::regular(c))];
    if c.base().is_ground() {
        for i in 0..c.dim() {
            if let Ok(m) = LeftComodule::cyclic(c, &Vector::unit(c.field(), i)) {
                out.push((format!("cyclic[{i}]"), m));
            }
        }
    }
    out
}

/// `D = B ⊕ S` over `B = k[x]/(x²)` with `S = k` killed by `x`, `Δ(1) = 1⊗1`,
/// `Δ(s) = 1⊗s + s⊗1`, `ε(1) = 1`, `ε(s) = 0`. `D` is not flat as a left `B`-module.
pub fn non_flat_coring(field: Field) -> Arc<Coring> {
    let b = Algebra::dual_numbers(field);
    let e = |i| Vector::unit(field, i);
    // basis 1, x, s
    let xact = LinMap::from_rows(field, 3, vec![e(1), Vector::zero(), Vector::zero()]);
    let id = LinMap::identity(field, 3);
    let carrier = Bimodule::new(b.clone(), b.clone(), 3, vec![id.clone(), xact.clone()], vec![id, xact]).expect("carrier");
    let cc = crate::bimodule::Tensor::pair(&carrier, &carrier).expect("tensor");
    let comult = LinMap::from_rows(
        field,
        cc.dim(),
        vec![
            cc.pure(&[&e(0), &e(0)]),
            cc.pure(&[&e(1), &e(0)]),
            cc.pure(&[&e(0), &e(2)]).add(&cc.pure(&[&e(2), &e(0)])),
        ],
    );
    let counit = LinMap::from_rows(field, 2, vec![e(0), e(1), Vector::zero()]);
    Coring::with_tensor(carrier, cc, comult, counit).expect("non-flat coring")
}

/// `Σ = B = k[x]/(x²)` as a `(B, k)`-bimodule over [`non_flat_coring`], with `σ = id`.
pub fn non_flat_morphism(field: Field) -> Result<ModuleMorphism> {
    let d = non_flat_coring(field);
    let sigma = Bimodule::regular(d.base()).forget_right();
    let ext = base_ext_by_module(&d, &ProjectiveModule::new(&sigma)?)?;
    let id = CoringMorphism::identity(&ext.coring);
    ModuleMorphism::new(ext, id)
}

/// `Σ = k`, `D = k`, `C` the grouplike coalgebra on two points and `σ(1) = g_0`.
pub fn non_iso_morphism(field: Field) -> Result<ModuleMorphism> {
    let k = Algebra::ground(field);
    let d = Coring::trivial(&k);
    let ext = base_ext_by_module(&d, &ProjectiveModule::new(&Bimodule::regular(&k))?)?;
    let c = Coring::grouplike(field, 2);
    let m = CoringMorphism::new(ext.coring.clone(), c, LinMap::from_rows(field, 2, vec![Vector::unit(field, 0)]))?;
    ModuleMorphism::new(ext, m)
}

/// `B = k`, `A = k × k` through the diagonal, `D = k` and `γ(1) = 1 ⊗ 1` in the
/// Sweedler coring `A ⊗_k A`.
pub fn diagonal_descent_morphism(field: Field) -> Result<GeneralCoringMorphism> {
    let a = Algebra::product(field, 2);
    let alpha = AlgebraMap::unit_map(a.clone());
    let d = Coring::trivial(&Algebra::ground(field));
    let sw = sweedler_coring(&alpha)?;
    let gamma = LinMap::from_rows(field, sw.coring.dim(), vec![sw.parts.pure(&[a.unit(), a.unit()])]);
    GeneralCoringMorphism::new(d, sw.coring, alpha, gamma)
}

/// `D` the 2×2 matrix coalgebra over `k`, `A` the dual numbers, `C = A_α[D]` and `γ(d) = 1 ⊗ d ⊗ 1`.
pub fn matrix_descent_morphism(field: Field) -> Result<GeneralCoringMorphism> {
    let a = Algebra::dual_numbers(field);
    let alpha = AlgebraMap::unit_map(a.clone());
    let d = Coring::matrix_coalgebra(field, 2);
    let ext = base_ext_by_map(&d, &alpha)?;
    let gamma = LinMap::from_fn(field, d.dim(), ext.coring.dim(), |i| ext.parts.pure(&[a.unit(), &Vector::unit(field, i), a.unit()]));
    GeneralCoringMorphism::new(d, ext.coring, alpha, gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coring::{check_coring, check_right_comodule};

    #[test]
    fn corpus_has_fifteen_members() {
        let all = standard_fixtures();
        assert_eq!(all.len(), 15);
        for fx in &all {
            assert!(check_coring(&fx.coring).passed(), "{}", fx.name);
            assert!(check_coring(&fx.extension().unwrap().coring).passed(), "{}", fx.name);
        }
    }

    #[test]
    fn non_flat_coring_passes() {
        let d = non_flat_coring(Field::Rational);
        assert!(check_coring(&d).passed());
        assert!(crate::bicells::check_module_morphism(&non_flat_morphism(Field::Rational).unwrap()).passed());
    }

    #[test]
    fn row_comodule_in_family() {
        let c = Coring::matrix_coalgebra(Field::Rational, 2);
        let fam = right_family(&c);
        assert_eq!(fam.len(), 5);
        assert!(fam.iter().all(|(_, m)| check_right_comodule(m).passed()));
        assert_eq!(fam[1].1.dim(), 2);
    }
}
