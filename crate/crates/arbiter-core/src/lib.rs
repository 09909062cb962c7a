//! Four-currency FX arbitrage dynamics.
//!
//! The state is an ensemble of six principal log exchange rates. Twenty-four
//! conditional arbitrage operators act on it; their unconditional versions
//! (strong arbitrages) are linear, which reduces the qualitative dynamics to a
//! finite semigroup of 3×3 integer matrices acting on the discrepancy triple.
//! On top of that sit chain synthesis, reachability classification and a
//! verification layer that diffs every published table against its
//! derivation.

pub mod currency;
pub mod error;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod market;
pub mod periodic;
pub mod reference;
pub mod report;
pub mod semigroup;
pub mod synthesis;

pub use currency::{Currency, PrincipalPair};
pub use error::{Error, Result};
pub use lattice::{GeneratorBasis, Generator, Lin};
pub use market::{Chain, Discrepancies, RateEnsemble};
