//! Exact periodicity analysis of binary signals.
//!
//! Discrete-time signals are ultimately periodic sequences indexed from -1
//! ([`DiscreteSignal`]); real-time signals are right-continuous step functions
//! with rational breakpoints and an optional periodic tail ([`RealSignal`]).
//! On this class every notion of (eventual) periodicity of a point or of a
//! signal is decidable, and [`periodicity`] computes period sets, limit sets,
//! prime periods and periodicity windows exactly.

pub mod error;
pub mod point;
pub mod rat;
pub mod sets;
pub mod dsignal;
pub mod rsignal;
pub mod periodicity;
pub mod bridge;
pub mod perturb;
pub mod oracle;
pub mod flowgen;
pub mod text;
pub mod report;

pub use dsignal::DiscreteSignal;
pub use error::{Error, Result};
pub use point::{BoolOp, Point};
pub use periodicity::{Classification, SignalRef};
pub use text::Signal;
pub use rsignal::{RealSignal, Tail};
pub use rat::Rat;
pub use sets::{EvPeriodicIntSet, EvPeriodicIntervalSet, Interval, IntervalTail, LimitSet, PeriodSet};
