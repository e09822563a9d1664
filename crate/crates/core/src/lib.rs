//! Exact computer algebra for twisted cancellation identities of
//! characteristic forms: theta-function q-expansions, level-2 modular
//! forms, Chern-root calculus in power-sum coordinates, an integral
//! triangular extraction, a free lambda-ring of bundle symbols, and the
//! localized form identities, all verified at the level of truncated
//! formal power series.

pub mod cancel;
pub mod charforms;
pub mod golden;
pub mod lambda;
pub mod localize;
pub mod report;
pub mod ring;
pub mod theta;
