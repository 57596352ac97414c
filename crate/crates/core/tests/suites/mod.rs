//! Property suites, one module per library module.

pub mod exact;
pub mod monoids;
pub mod poly;
pub mod semidomains;
pub mod witness;

use crate::common::Prop;

#[allow(dead_code)] // the acceptance target runs them all at once
pub fn all() -> Vec<(&'static str, &'static [Prop])> {
    vec![
        ("exact", exact::PROPS),
        ("monoids", monoids::PROPS),
        ("semidomains", semidomains::PROPS),
        ("poly", poly::PROPS),
        ("witness", witness::PROPS),
    ]
}
