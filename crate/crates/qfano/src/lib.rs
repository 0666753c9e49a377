//! Exact-arithmetic toolkit for numerical Q-Fano threefold candidates.
//!
//! A numerical candidate is a triple `(q, B, A^3)`: a Fano index `q`, a basket
//! `B` of terminal cyclic quotient singularities `1/r(1,-1,b)`, and a positive
//! rational degree `A^3` of the ample Weil generator `A` with `-K = qA`.  The
//! crate evaluates the orbifold Riemann-Roch formula for such candidates,
//! enumerates all candidates under the standard numerical bounds, and
//! mechanizes the Diophantine constraint systems attached to Sarkisov links
//! onto the smooth quartic double solid.
//!
//! Module map:
//! - [`basket`] — quotient singularity points and baskets, basket enumeration;
//! - [`rr`] — Riemann-Roch: `chi(nA)`, `h^0(nA)`, Hilbert profiles, the `df`
//!   invariant, integrality checks;
//! - [`search`] — exhaustive candidate searches, counts, and the property
//!   checks over search reports;
//! - [`link`] — Sarkisov-link numerical invariants, the rule engine, and the
//!   scripted case analyses with replayable traces;
//! - [`catalog`] — basket text parsing, CSV catalog import, diffing against
//!   external candidate catalogs.
//!
//! All arithmetic is exact: quantities are `i128`-backed rationals and every
//! comparison in the test and acceptance suites is an equality of rationals,
//! never a float tolerance.

pub mod basket;
pub mod catalog;
pub mod link;
pub mod rational;
pub mod rr;
pub mod search;

pub use basket::{Basket, BasketError, QuotientPoint};
pub use rational::Q;
pub use rr::{FanoCandidate, HilbertProfile, RrError};
pub use search::{SearchConfig, SearchReport};
