use corings::coring::RightComodule;
use corings::descent::{check_descent_datum, comodule_over, comodule_to_descent, descent_diagram_check, descent_equivalence, DescentDatum};
use corings::fixtures::{matrix_descent_morphism, right_family, FIELDS};
use corings::linalg::LinMap;

#[test]
fn matrix_descent_round_trips_over_every_field() {
    for f in FIELDS {
        let g = matrix_descent_morphism(f).unwrap();
        let (ext, _) = g.induce().unwrap();
        for (name, m) in right_family(&ext.coring) {
            let dd = comodule_to_descent(&g, &ext, &m).unwrap();
            assert!(check_descent_datum(&dd).unwrap().passed(), "{name}");
            assert_eq!(comodule_over(&ext, &dd).unwrap().coaction, m.coaction, "{name}");
        }
        let fam_d: Vec<RightComodule> = right_family(&g.source).into_iter().map(|x| x.1).collect();
        assert!(descent_diagram_check(&g, &fam_d).unwrap().passed());
        let fam_c: Vec<RightComodule> = right_family(&g.target).into_iter().map(|x| x.1).collect();
        assert!(descent_equivalence(&g, &fam_d, &fam_c).unwrap().passed());
    }
}

#[test]
fn datum_rebuilt_from_ambient_rows_agrees() {
    let f = FIELDS[0];
    let g = matrix_descent_morphism(f).unwrap();
    let (ext, _) = g.induce().unwrap();
    let dd = comodule_to_descent(&g, &ext, &RightComodule::regular(&ext.coring)).unwrap();
    let ambient = LinMap::from_fn(f, dd.carrier.dim(), dd.target.ambient_dim(), |i| dd.target.lift(&dd.rho.rows[i]));
    let again = DescentDatum::from_ambient(g.clone(), dd.carrier.clone(), &ambient).unwrap();
    assert_eq!(again.rho, dd.rho);
}
