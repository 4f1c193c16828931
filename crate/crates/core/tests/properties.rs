use corings::algebra::{Algebra, AlgebraMap};
use corings::bimodule::{frobenius_bimodule_witness, Witnessed};
use corings::constructions::sweedler_coring;
use corings::coring::Coring;
use corings::fixtures::{fixture, FIELDS};
use corings::properties::{
    check_cointegral, check_frobenius_chain, check_invariant, coring_frobenius_witness, coseparable_check, cosplit_check,
    frobenius_chain,
};

#[test]
fn separable_extension_gives_a_cosplit_coseparable_sweedler_coring() {
    for f in FIELDS {
        let sw = sweedler_coring(&AlgebraMap::unit_map(Algebra::product(f, 2))).unwrap();
        let x = cosplit_check(&sw.coring).found().unwrap();
        assert!(check_invariant(&sw.coring, &x).passed());
        let n = coseparable_check(&sw.coring).found().unwrap();
        assert!(check_cointegral(&sw.coring, &n).passed());
    }
}

#[test]
fn dual_numbers_sweedler_coring_is_not_cosplit() {
    for f in FIELDS {
        let sw = sweedler_coring(&AlgebraMap::unit_map(Algebra::dual_numbers(f))).unwrap();
        assert!(matches!(cosplit_check(&sw.coring), Witnessed::Absent(_)));
    }
}

#[test]
fn perturbed_witnesses_are_rejected() {
    for f in FIELDS {
        let c = Coring::matrix_coalgebra(f, 2);
        let x = cosplit_check(&c).found().unwrap();
        assert!(!check_invariant(&c, &x.scale(&f.int(2))).passed());
        let n = coseparable_check(&c).found().unwrap();
        assert!(!check_cointegral(&c, &n.scale(&f.int(3))).passed());
    }
}

#[test]
fn divided_powers_are_not_coseparable() {
    for f in FIELDS {
        let c = Coring::divided_powers(f, 2);
        assert!(matches!(coseparable_check(&c), Witnessed::Absent(_)));
    }
}

#[test]
fn frobenius_chains_over_finite_fields() {
    for f in &FIELDS[1..] {
        for name in ["trivial", "matrix-coalgebra", "free-rank-two"] {
            let fx = fixture(name, *f).unwrap();
            let ext = fx.extension().unwrap();
            let gamma = frobenius_bimodule_witness(&fx.sigma, 2).unwrap().found().unwrap();
            let (ring, sd) = coring_frobenius_witness(&fx.coring, 2);
            let chain = frobenius_chain(&ext, &gamma, &ring, &sd.found().unwrap()).unwrap();
            let r = check_frobenius_chain(&ext.coring, &chain);
            assert!(r.passed(), "{} {r}", fx.name);
        }
    }
}
