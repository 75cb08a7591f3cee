//! Complex special functions used by the closed-form evaluators.

mod faddeeva;
mod hermite;
mod hyper;

pub use faddeeva::{faddeeva, faddeeva_with, DEFAULT_TOLERANCE};
pub use hermite::{hermite, hermite_coefficients, hermite_normalized, MAX_ORDER as MAX_HERMITE_ORDER};
pub use hyper::{gamma_half, kummer_1f1, kummer_1f1_with, HalfInteger, KummerConfig};
