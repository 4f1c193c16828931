use corings::coring::RightComodule;
use corings::fixtures::{fixture, non_flat_morphism, non_iso_morphism, right_family, FIELDS};
use corings::functors::{
    adjunction_counit, adjunction_unit, purity_check, push_out_right, verify_equivalence_on, verify_fully_faithful_on,
    verify_omega, verify_triangles,
};
use corings::report::Verdict;

fn members(c: &std::sync::Arc<corings::coring::Coring>) -> Vec<RightComodule> {
    right_family(c).into_iter().map(|x| x.1).collect()
}

#[test]
fn a_morphism_that_is_not_bijective_is_not_an_equivalence() {
    for f in FIELDS {
        let mm = non_iso_morphism(f).unwrap();
        let r = verify_fully_faithful_on(&mm, &members(mm.target())).unwrap();
        assert!(!r.passed(), "{r}");
        // the adjunction itself still holds
        for m in members(mm.source()) {
            for n in members(mm.target()) {
                assert!(verify_triangles(&mm, &m, &n).unwrap().passed());
                assert!(verify_omega(&mm, &m, &n).unwrap().passed());
            }
        }
    }
}

#[test]
fn purity_failure_is_reported_not_raised() {
    for f in FIELDS {
        let mm = non_flat_morphism(f).unwrap();
        let verdicts: Vec<_> = members(mm.target()).iter().map(|l| purity_check(&mm, l).unwrap().verdict).collect();
        assert!(verdicts.contains(&Verdict::Pass));
        assert!(verdicts.contains(&Verdict::PurityFailure));
    }
}

#[test]
fn unit_and_counit_are_invertible_on_the_plane() {
    for f in FIELDS {
        let fx = fixture("free-rank-two", f).unwrap();
        let mm = fx.identity_morphism().unwrap();
        for m in members(mm.source()) {
            assert!(adjunction_unit(&mm, &m).unwrap().map.is_invertible());
            assert_eq!(push_out_right(&mm, &m).unwrap().comodule.dim(), 2 * m.dim());
        }
        for n in members(mm.target()) {
            assert!(adjunction_counit(&mm, &n).unwrap().map.is_invertible());
        }
        assert!(verify_equivalence_on(&mm, &members(mm.source()), &members(mm.target())).unwrap().passed());
    }
}

#[test]
fn a_single_idempotent_line_is_not_faithful() {
    let fx = fixture("split-idempotent", FIELDS[2]).unwrap();
    let mm = fx.identity_morphism().unwrap();
    let r = verify_equivalence_on(&mm, &members(mm.source()), &members(mm.target())).unwrap();
    assert!(!r.passed());
}
