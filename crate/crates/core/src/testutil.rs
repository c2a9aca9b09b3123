use proptest::prelude::*;

use crate::ratpoly::{ratio, Monomial, Poly};
use crate::weyl::WeylElement;

pub(crate) fn arb_poly(nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    proptest::collection::vec(
        (proptest::collection::vec(0..=max_deg, nvars), -5i64..=5, 1i64..=3),
        0..=max_terms,
    )
    .prop_map(move |ts| {
        Poly::from_terms(
            nvars,
            ts.into_iter()
                .filter(|(e, _, _)| e.iter().sum::<u32>() <= max_deg)
                .map(|(e, a, b)| (Monomial::from_exponents(e), ratio(a, b))),
        )
    })
}

pub(crate) fn arb_weyl(nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = WeylElement> {
    proptest::collection::vec(
        (
            proptest::collection::vec(0..=max_deg, nvars),
            proptest::collection::vec(0..=max_deg, nvars),
            -4i64..=4,
            1i64..=2,
        ),
        0..=max_terms,
    )
    .prop_map(move |ts| {
        WeylElement::from_terms(
            nvars,
            ts.into_iter()
                .filter(|(a, b, _, _)| a.iter().sum::<u32>() + b.iter().sum::<u32>() <= max_deg)
                .map(|(a, b, c, d)| {
                    (Monomial::from_exponents(a), Monomial::from_exponents(b), ratio(c, d))
                }),
        )
    })
}

pub(crate) fn nonzero_weyl(nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = WeylElement> {
    arb_weyl(nvars, max_deg, max_terms).prop_filter("nonzero", |w| !w.is_zero())
}
