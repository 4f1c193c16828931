use corings::bicells::{
    check_left_two_cell, check_one_cell_right, check_two_cell, mm_to_one_cell, rep_arrows, rep_compose,
    rep_condition_check, rep_identity, rep_to_left_two_cell, two_cells, TwoCell,
};
use corings::fixtures::{fixture, FAMILIES};
use corings::linalg::Field;

#[test]
fn rep_arrows_form_a_category() {
    for name in FAMILIES {
        let fx = fixture(name, Field::Rational).unwrap();
        let mm = fx.identity_morphism().unwrap();
        let arrows = rep_arrows(&mm, &mm).unwrap();
        assert!(!arrows.is_empty(), "{name}");
        let id = rep_identity(&mm);
        assert!(rep_condition_check(&mm, &mm, &id).unwrap().passed(), "{name}");
        for f in &arrows {
            assert!(rep_condition_check(&mm, &mm, f).unwrap().passed(), "{name}");
            assert_eq!(rep_compose(&mm, &mm, &mm, &id, f).unwrap(), *f, "{name}");
            assert_eq!(rep_compose(&mm, &mm, &mm, f, &id).unwrap(), *f, "{name}");
        }
        let few = &arrows[..arrows.len().min(3)];
        for f in few {
            for g in few {
                let gf = rep_compose(&mm, &mm, &mm, f, g).unwrap();
                assert!(rep_condition_check(&mm, &mm, &gf).unwrap().passed(), "{name}");
                for h in few {
                    let left = rep_compose(&mm, &mm, &mm, &gf, h).unwrap();
                    let right = rep_compose(&mm, &mm, &mm, f, &rep_compose(&mm, &mm, &mm, g, h).unwrap()).unwrap();
                    assert_eq!(left, right, "{name}");
                }
            }
        }
    }
}

#[test]
fn rep_arrows_are_left_two_cells() {
    for name in FAMILIES {
        let fx = fixture(name, Field::Rational).unwrap();
        let mm = fx.identity_morphism().unwrap();
        let arrows = rep_arrows(&mm, &mm).unwrap();
        let cells: Vec<_> = arrows.iter().map(|f| rep_to_left_two_cell(&mm, &mm, f).unwrap()).collect();
        for c in &cells {
            assert!(check_left_two_cell(c).passed(), "{name}");
        }
        let few = &arrows[..arrows.len().min(3)];
        for (i, f) in few.iter().enumerate() {
            for (j, g) in few.iter().enumerate() {
                let composite = rep_to_left_two_cell(&mm, &mm, &rep_compose(&mm, &mm, &mm, f, g).unwrap()).unwrap();
                let vertical = cells[j].then(&cells[i]).unwrap();
                assert_eq!(composite.map, vertical.map, "{name}");
            }
        }
    }
}

#[test]
fn identity_two_cells_of_module_morphism_cells() {
    for name in FAMILIES {
        let fx = fixture(name, Field::Prime(5)).unwrap();
        let cell = mm_to_one_cell(&fx.identity_morphism().unwrap()).unwrap();
        assert!(check_one_cell_right(&cell).passed(), "{name}");
        let basis = two_cells(&cell, &cell);
        assert!(!basis.is_empty(), "{name}");
        for m in basis {
            assert!(check_two_cell(&TwoCell::new(cell.clone(), cell.clone(), m).unwrap()).passed(), "{name}");
        }
    }
}
