//! Exact Hardy–Littlewood maximal functions.
//!
//! The crate computes `Mf(x) = sup_{r>0} ⨍_{B(x,r)} |f|` exactly for periodic
//! piecewise-linear functions on the line, runs the discrete maximal operator
//! and annular-decay constants on finite metric measure spaces, evaluates
//! variable-exponent Hölder norms on grids, and packages verification
//! harnesses built on those engines.

pub mod error;
pub mod exactnum;
pub mod experiments;
pub mod holder;
pub mod io;
pub mod maximal1d;
pub mod metricspace;
pub mod pwl;

pub use error::{Error, Result};
pub use exactnum::{Enclosure, Rational, SurdValue};
pub use pwl::PeriodicPiecewiseLinear;
