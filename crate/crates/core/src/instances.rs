//! Named Γ-semigroups used throughout the tests, the CLI fixtures and the demo.

use crate::finite::named;
use crate::gamma::{funcomp, sandwich, GammaSemigroup};

/// `|S| = 1`, `|Γ| = 2`, every product is the single element.
pub fn e1() -> GammaSemigroup {
    GammaSemigroup::from_fn(1, 2, 0, |_, _, _| 0).expect("static instance")
}

/// Sandwich over the left-zero band `{a, b}` with `Γ = {a}`.
pub fn e3() -> GammaSemigroup {
    sandwich(&named::left_zero(2), &[0]).expect("static instance")
}

/// Sandwich over the left-zero band `{a, b}` with `Γ = {a, b}`.
pub fn e3_prime() -> GammaSemigroup {
    sandwich(&named::left_zero(2), &[0, 1]).expect("static instance")
}

/// Sandwich over `Z_2` with `Γ = {0}`.
pub fn e4() -> GammaSemigroup {
    sandwich(&named::cyclic_group(2), &[0]).expect("static instance")
}

/// Sandwich over `Z_2` with `Γ = {0, 1}`.
pub fn e4_prime() -> GammaSemigroup {
    sandwich(&named::cyclic_group(2), &[0, 1]).expect("static instance")
}

/// Sandwich over the 2-element null semigroup with `Γ = {0, 1}`.
pub fn null_sandwich() -> GammaSemigroup {
    sandwich(&named::null(2), &[0, 1]).expect("static instance")
}

/// `E4` with the cell `0γ0` flipped to `1`; not associative.
pub fn corrupted() -> GammaSemigroup {
    GammaSemigroup::new(2, 1, vec![1, 1, 1, 0], 0).expect("static instance")
}

/// Every valid named instance, paired with a short name.
pub fn catalogue() -> Vec<(&'static str, GammaSemigroup)> {
    vec![
        ("E1", e1()),
        ("E3", e3()),
        ("E3'", e3_prime()),
        ("E4", e4()),
        ("E4'", e4_prime()),
        ("null", null_sandwich()),
        ("funcomp(1,1)", funcomp(1, 1).expect("small")),
        ("funcomp(1,2)", funcomp(1, 2).expect("small")),
        ("funcomp(2,1)", funcomp(2, 1).expect("small")),
        ("funcomp(2,2)", funcomp(2, 2).expect("small")),
        (
            "Z3/{0,1,2}",
            sandwich(&named::cyclic_group(3), &[0, 1, 2]).expect("small"),
        ),
        (
            "rect(2,2)/{0,3}",
            sandwich(&named::rectangular_band(2, 2), &[0, 3]).expect("small"),
        ),
        ("chain3/{1,2}", sandwich(&named::min_chain(3), &[1, 2]).expect("small")),
        ("rz2/{1}", sandwich(&named::right_zero(2), &[1]).expect("small")),
    ]
}

/// Looks up a preset by the name used in [`catalogue`].
pub fn by_name(name: &str) -> Option<GammaSemigroup> {
    catalogue()
        .into_iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|(_, gs)| gs)
}
