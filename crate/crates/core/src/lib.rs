//! Stable (large degree) statistics of smooth hypersurface sections.
//!
//! The crate is organised around a handful of layers:
//!
//! * [`symfunc`]: exact arithmetic in the ring of symmetric functions, with
//!   basis conversions, ordinary/symplectic/orthogonal Schur functions and
//!   evaluation through Adams characters.
//! * [`partitions`]: partitions, labeled shapes and the overlap patterns
//!   between vanishing and singular configurations.
//! * [`grothendieck`]: Laurent polynomials in the Lefschetz class, truncated
//!   series, variety profiles, Kapranov zeta functions and Euler products.
//! * [`limits`]: asymptotic moments, the truncated configuration-space limit
//!   and the power-structure identity checker.
//! * [`universal`]: universal formulas for the stable Euler characteristics of
//!   the local systems attached to a partition.
//! * [`census`]: exhaustive enumeration of smooth hypersurfaces over small
//!   finite fields.

pub mod arith;
pub mod census;
pub mod error;
pub mod grothendieck;
pub mod limits;
pub mod partitions;
pub mod poly;
pub mod ring;
pub mod symexpr;
pub mod symfunc;
pub mod universal;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
