//! Exact arithmetic: rationals, single-radical surds and rigorous enclosures.

pub mod enclosure;
pub mod rational;
pub mod surd;

pub use enclosure::{Enclosure, EnclosureReport};
pub use rational::Rational;
pub use surd::SurdValue;
