use std::collections::BTreeSet;

use num_bigint::BigUint;
use proptest::prelude::*;

use crate::form::DiagonalForm;
use crate::square_class::SquareClass;

pub(crate) fn arb_class() -> impl Strategy<Value = SquareClass> {
    proptest::collection::vec(0usize..4, 0..4).prop_map(|idx| {
        let names: BTreeSet<&str> = idx.into_iter().map(|i| ["-1", "a", "b", "c"][i]).collect();
        SquareClass::from_names(&names.into_iter().collect::<Vec<_>>()).unwrap()
    })
}

/// Small forms over the atoms `-1, a, b, c`.
pub(crate) fn arb_form() -> impl Strategy<Value = DiagonalForm> {
    proptest::collection::vec((arb_class(), 1u64..5), 0..5).prop_map(|es| {
        let mut f = DiagonalForm::zero();
        for (c, m) in es {
            f.add_entry(c, BigUint::from(m));
        }
        f
    })
}
