//! Exact coverage of opaque forests.
//!
//! A barrier is a finite set of closed line segments. Its coverage is the set
//! of points every line through which meets the barrier. This crate computes
//! the coverage exactly: the positive-area regions (as unions of arrangement
//! faces), the barrier itself, and the finitely many isolated blocked points.
//! An independent per-point decision procedure ([`oracle::is_blocked`]) is
//! provided for checking results.
//!
//! The crate is `no_std` (with `alloc`) when the default `std` feature is
//! disabled. The `parallel` feature spreads per-face work over a rayon pool.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod arrangement;
pub mod barrier;
pub mod coverage;
mod error;
pub mod geom;
pub mod oracle;
pub mod wedge;

pub use error::{ArrangementError, BarrierError, GeomError, TangentError};
pub use geom::{Direction, Line, Orientation, Point, Rational, Segment};
