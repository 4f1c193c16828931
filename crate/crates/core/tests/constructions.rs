use corings::algebra::Algebra;
use corings::bimodule::{Bimodule, ProjectiveModule};
use corings::constructions::{base_ext_by_module, check_coring_iso, direct_sum_comparison, eps_coring_morphism, comatrix_coring};
use corings::coring::{check_coring, check_coring_morphism, Coring};
use corings::fixtures::{standard_fixtures, FIELDS};

#[test]
fn every_fixture_extension_is_a_coring_independent_of_the_dual_basis() {
    for fx in standard_fixtures() {
        let ext = fx.extension().unwrap();
        if fx.coring.base().is_ground() {
            assert_eq!(ext.dim(), fx.sigma.dim() * fx.coring.dim() * fx.sigma.dim(), "{}", fx.name);
        }
        assert!(check_coring(&ext.coring).passed(), "{}", fx.name);
        assert!(ext.witness_independent().unwrap(), "{}", fx.name);
        let comatrix = comatrix_coring(&ext.module).unwrap();
        let eps = eps_coring_morphism(&ext, &comatrix).unwrap();
        assert!(check_coring_morphism(&eps).passed(), "{}", fx.name);
        assert!(eps.map.is_surjective(), "{}", fx.name);
    }
}

#[test]
fn extension_distributes_over_direct_sums() {
    for f in FIELDS {
        let m = ProjectiveModule::new(&Bimodule::regular(&Algebra::dual_numbers(f)).forget_left()).unwrap();
        let first = Coring::divided_powers(f, 3);
        let second = Coring::grouplike(f, 2);
        let sum = Coring::direct_sum(&first, &second).unwrap();
        let es = base_ext_by_module(&sum, &m).unwrap();
        let e1 = base_ext_by_module(&first, &m).unwrap();
        let e2 = base_ext_by_module(&second, &m).unwrap();
        let cmp = direct_sum_comparison(&es, &e1, &e2, first.dim()).unwrap();
        assert!(check_coring_iso(&cmp).passed());
    }
}

#[test]
fn mismatched_base_is_rejected() {
    let f = FIELDS[1];
    let d = Coring::trivial(&Algebra::dual_numbers(f));
    let m = ProjectiveModule::new(&Bimodule::vector_space(f, 2)).unwrap();
    assert!(base_ext_by_module(&d, &m).is_err());
}
