mod common;

use common::{bicell_identities, INSTANCES};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn bicell_calculus_round_trips(field in 0..3usize, index in 0..INSTANCES, coeffs in prop::collection::vec(-2i64..=2, 1..6)) {
        let failed = bicell_identities(field, index, &coeffs).unwrap();
        prop_assert!(failed.is_empty(), "{failed:?}");
    }
}
