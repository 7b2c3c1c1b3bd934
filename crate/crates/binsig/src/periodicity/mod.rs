//! Periodicity of points and signals: period sets, limit-of-periodicity sets,
//! prime periods, periodicity windows and classification.
//!
//! A point `mu` of a signal is eventually periodic with period `T` from `t'`
//! exactly when the indicator of `mu` satisfies `ind(t) = ind(t + T)` for all
//! `t >= t'` and `mu` still occurs after `t'`. The canonical form of the
//! indicator signal therefore carries the prime period and the least limit of
//! periodicity directly.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::dsignal::DiscreteSignal;
use crate::error::{Error, Result};
use crate::point::Point;
use crate::rat::Rat;
use crate::rsignal::RealSignal;
use crate::sets::{EvPeriodicIntSet, EvPeriodicIntervalSet, Interval, LimitSet, PeriodSet};

mod access;
mod characterize;
mod decompose;
mod hypothesis;

pub use access::{accessibility_check, window_meets_support};
pub use characterize::{
    characterization_report, CharacterizationReport, GroupReport, StatementRow, Verdict,
};
pub use decompose::{decompose, recompose, Decomposition};
pub use hypothesis::{hypothesis_p_report, HypothesisReport};

/// A borrowed signal of either time domain.
#[derive(Debug, Clone, Copy)]
pub enum SignalRef<'a> {
    Discrete(&'a DiscreteSignal),
    Real(&'a RealSignal),
}

impl<'a> From<&'a DiscreteSignal> for SignalRef<'a> {
    fn from(s: &'a DiscreteSignal) -> Self {
        SignalRef::Discrete(s)
    }
}

impl<'a> From<&'a RealSignal> for SignalRef<'a> {
    fn from(s: &'a RealSignal) -> Self {
        SignalRef::Real(s)
    }
}

impl SignalRef<'_> {
    pub fn width(&self) -> usize {
        match self {
            SignalRef::Discrete(s) => s.width(),
            SignalRef::Real(s) => s.width(),
        }
    }

    pub fn orbit(&self) -> Vec<Point> {
        match self {
            SignalRef::Discrete(s) => s.orbit().into_iter().collect(),
            SignalRef::Real(s) => s.orbit().into_iter().collect(),
        }
    }

    pub fn omega(&self) -> Vec<Point> {
        match self {
            SignalRef::Discrete(s) => s.omega().into_iter().collect(),
            SignalRef::Real(s) => s.omega().into_iter().collect(),
        }
    }

    /// Value at `t`; discrete signals are read at `floor(t)`.
    pub fn value(&self, t: Rat) -> Point {
        match self {
            SignalRef::Discrete(s) => s.at(t.floor().max(-1) as i64),
            SignalRef::Real(s) => s.value_at(t),
        }
    }

    pub fn analyze_point(&self, mu: Point) -> Result<PointAnalysis> {
        match self {
            SignalRef::Discrete(s) => analyze_point_d(s, mu),
            SignalRef::Real(s) => analyze_point_r(s, mu),
        }
    }

    pub fn analyze(&self) -> SignalAnalysis {
        match self {
            SignalRef::Discrete(s) => analyze_signal_d(s),
            SignalRef::Real(s) => analyze_signal_r(s),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Constant,
    EventuallyConstant,
    Periodic,
    EventuallyPeriodic,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Constant => "constant",
            Classification::EventuallyConstant => "eventually_constant",
            Classification::Periodic => "periodic",
            Classification::EventuallyPeriodic => "eventually_periodic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstancyClass {
    Constant,
    EventuallyConstant,
    Neither,
}

/// A support set of either time domain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "time", rename_all = "snake_case")]
pub enum Support {
    Discrete(EvPeriodicIntSet),
    Real(EvPeriodicIntervalSet),
}

impl Support {
    pub fn contains(&self, t: Rat) -> bool {
        match self {
            Support::Discrete(s) => t.to_i64().is_some_and(|k| s.contains(k)),
            Support::Real(s) => s.contains(t),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointAnalysis {
    pub point: Point,
    pub support: Support,
    pub periods: PeriodSet,
    pub limits: LimitSet,
    pub prime_period: Option<Rat>,
    pub is_periodic_point: bool,
    /// The support restricted to one prime period starting at the least limit.
    pub decomposition: Option<Decomposition>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignalAnalysis {
    pub classification: Classification,
    pub periods: PeriodSet,
    pub limits: LimitSet,
    pub prime_period: Option<Rat>,
    /// `I ∩ L` for periodic real signals.
    pub window: Option<Interval>,
    pub per_point: BTreeMap<Point, PointAnalysis>,
}

fn not_in_orbit(mu: Point) -> Error {
    Error::NotInOrbit(format!("point {mu} is never attained"))
}

fn finish_point(
    point: Point,
    support: Support,
    periods: PeriodSet,
    limits: LimitSet,
    is_periodic_point: bool,
) -> PointAnalysis {
    let mut a = PointAnalysis {
        point,
        support,
        periods,
        limits,
        prime_period: periods.prime(),
        is_periodic_point,
        decomposition: None,
    };
    if !periods.is_empty() {
        a.decomposition = Some(decompose(&a, None, None).expect("prime data is admissible"));
    }
    a
}

pub fn analyze_point_d(sig: &DiscreteSignal, mu: Point) -> Result<PointAnalysis> {
    sig.check_point(mu)?;
    if !sig.orbit().contains(&mu) {
        return Err(not_in_orbit(mu));
    }
    let ind = sig.indicator(mu)?;
    let (periods, limits) = if sig.omega().contains(&mu) {
        (
            PeriodSet::MultiplesInt(ind.period() as u64),
            LimitSet::from_int(ind.anchor()),
        )
    } else {
        (PeriodSet::Empty, LimitSet::Empty)
    };
    let periodic = limits.contains_int(-1);
    Ok(finish_point(
        mu,
        Support::Discrete(sig.support_set(mu)?),
        periods,
        limits,
        periodic,
    ))
}

/// Period and limit sets of `mu` read off its indicator signal.
fn real_point_sets(ind: &RealSignal) -> (PeriodSet, LimitSet) {
    let one = Point::bit(true);
    match ind.tail() {
        Some(tail) => (
            PeriodSet::MultiplesRat(tail.period()),
            LimitSet::FromRat(tail.anchor()),
        ),
        None if ind.final_value() == Some(one) => (
            PeriodSet::AllPositive,
            ind.transient()
                .last()
                .map_or(LimitSet::AllTimes, |&(s, _)| LimitSet::FromRat(s)),
        ),
        None => (PeriodSet::Empty, LimitSet::Empty),
    }
}

/// Whether some limit of periodicity is an initial time, i.e. below `t0`.
fn meets_initial_times(sig: &RealSignal, limits: LimitSet) -> bool {
    match limits {
        LimitSet::Empty | LimitSet::FromInt(_) => false,
        LimitSet::AllTimes => true,
        LimitSet::FromRat(a) => sig.first_change().is_none_or(|t0| a < t0),
    }
}

pub fn analyze_point_r(sig: &RealSignal, mu: Point) -> Result<PointAnalysis> {
    sig.check_point(mu)?;
    if !sig.orbit().contains(&mu) {
        return Err(not_in_orbit(mu));
    }
    let (periods, limits) = real_point_sets(&sig.indicator(mu)?);
    Ok(finish_point(
        mu,
        Support::Real(sig.support_set(mu)?),
        periods,
        limits,
        meets_initial_times(sig, limits),
    ))
}

pub fn analyze_signal_d(sig: &DiscreteSignal) -> SignalAnalysis {
    let classification = if sig.is_constant() {
        Classification::Constant
    } else if sig.is_eventually_constant() {
        Classification::EventuallyConstant
    } else if sig.anchor() == -1 {
        Classification::Periodic
    } else {
        Classification::EventuallyPeriodic
    };
    let periods = PeriodSet::MultiplesInt(sig.period() as u64);
    SignalAnalysis {
        classification,
        periods,
        limits: LimitSet::from_int(sig.anchor()),
        prime_period: periods.prime(),
        window: None,
        per_point: sig
            .orbit()
            .into_iter()
            .map(|mu| (mu, analyze_point_d(sig, mu).expect("orbit point")))
            .collect(),
    }
}

pub fn analyze_signal_r(sig: &RealSignal) -> SignalAnalysis {
    let (classification, periods, limits) = match (sig.tail(), sig.transient().last()) {
        (None, None) => (Classification::Constant, PeriodSet::AllPositive, LimitSet::AllTimes),
        (None, Some(&(s, _))) => (
            Classification::EventuallyConstant,
            PeriodSet::AllPositive,
            LimitSet::FromRat(s),
        ),
        (Some(tail), _) => {
            let limits = LimitSet::FromRat(tail.anchor());
            let class = if meets_initial_times(sig, limits) {
                Classification::Periodic
            } else {
                Classification::EventuallyPeriodic
            };
            (class, PeriodSet::MultiplesRat(tail.period()), limits)
        }
    };
    let window = match (classification, limits) {
        (Classification::Periodic, LimitSet::FromRat(a)) => Some(Interval::new(Some(a), sig.first_change())),
        _ => None,
    };
    SignalAnalysis {
        classification,
        periods,
        limits,
        prime_period: periods.prime(),
        window,
        per_point: sig
            .orbit()
            .into_iter()
            .map(|mu| (mu, analyze_point_r(sig, mu).expect("orbit point")))
            .collect(),
    }
}

/// `I ∩ L_mu`: the initial times that are limits of periodicity of `mu`.
pub fn periodicity_window_point(sig: &RealSignal, mu: Point) -> Result<Option<Interval>> {
    if sig.is_constant() {
        return Err(Error::ConstantSignal(
            "the initial time set of a constant signal is the whole line".into(),
        ));
    }
    let a = analyze_point_r(sig, mu)?;
    let t0 = sig.first_change();
    Ok(match a.limits {
        LimitSet::FromRat(l) if meets_initial_times(sig, a.limits) => Some(Interval::new(Some(l), t0)),
        _ => None,
    })
}

pub fn classify_constancy<'a>(sig: impl Into<SignalRef<'a>>) -> ConstancyClass {
    let sig = sig.into();
    if sig.orbit().len() == 1 {
        ConstancyClass::Constant
    } else if sig.omega().len() == 1 {
        ConstancyClass::EventuallyConstant
    } else {
        ConstancyClass::Neither
    }
}
