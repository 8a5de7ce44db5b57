//! Picard ranks of moduli spaces of quasi-polarized K3 surfaces, together with
//! the lattice machinery behind them.
//!
//! Two independent routes compute `rank Pic(K_g)`:
//!
//! * [`rank::picard_rank`] evaluates the closed form in exact rational
//!   arithmetic, with Jacobi symbols and fractional-part sums;
//! * [`cusp::picard_rank_via_cusp`] builds the discriminant form of the
//!   lattice `Λ_g = ⟨2−2g⟩ ⊕ U² ⊕ (−E8)²`, its Weil representation, and counts
//!   vector-valued cusp forms of weight 21/2 from traces of `ρ(S)`, `ρ(ST)` and
//!   the spectrum of `ρ(T)`.
//!
//! Both are registered as [`routes::RankRoute`] strategies so that callers
//! (and the CLI) can pick one by name or compare them all.

#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod cusp;
pub mod error;
pub mod lattice;
pub mod nl;
pub mod rank;
pub mod routes;
pub mod weil;

pub use error::{Error, Result};
pub use lattice::{catalog, CatalogName, DiscriminantForm, Lattice, Signature};
pub use weil::WeilRep;

/// Default cap on `|A|` for Weil-representation work.
pub const DEFAULT_MAX_GROUP: usize = 4096;
