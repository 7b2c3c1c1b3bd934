//! Period sets, limit-of-periodicity sets and finitely described support sets.

use std::fmt;

use serde::Serialize;

use crate::rat::Rat;

/// The set of periods of a point or of a signal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "step", rename_all = "snake_case")]
pub enum PeriodSet {
    Empty,
    /// Every positive real (eventually constant real-time signals).
    AllPositive,
    /// `{p, 2p, 3p, ...}` for discrete time.
    MultiplesInt(u64),
    /// `{T, 2T, 3T, ...}` for real time.
    MultiplesRat(Rat),
}

impl PeriodSet {
    pub fn is_empty(&self) -> bool {
        matches!(self, PeriodSet::Empty)
    }

    /// The least element, if the set has one.
    pub fn prime(&self) -> Option<Rat> {
        match *self {
            PeriodSet::MultiplesInt(p) => Some(Rat::from(p as i128)),
            PeriodSet::MultiplesRat(t) => Some(t),
            _ => None,
        }
    }

    pub fn prime_int(&self) -> Option<u64> {
        match *self {
            PeriodSet::MultiplesInt(p) => Some(p),
            _ => None,
        }
    }

    pub fn contains(&self, t: Rat) -> bool {
        match *self {
            PeriodSet::Empty => false,
            PeriodSet::AllPositive => t.is_positive(),
            PeriodSet::MultiplesInt(p) => t.is_multiple_of(Rat::from(p as i128)),
            PeriodSet::MultiplesRat(step) => t.is_multiple_of(step),
        }
    }

    pub fn contains_int(&self, p: u64) -> bool {
        p > 0 && self.contains(Rat::from(p as i128))
    }

    /// Set intersection. Multiples of `a` and of `b` meet in the multiples of `lcm(a, b)`.
    pub fn intersect(&self, other: &PeriodSet) -> PeriodSet {
        use PeriodSet::*;
        match (*self, *other) {
            (Empty, _) | (_, Empty) => Empty,
            (AllPositive, x) | (x, AllPositive) => x,
            (MultiplesInt(a), MultiplesInt(b)) => MultiplesInt(num_integer::lcm(a, b)),
            (a, b) => MultiplesRat(a.prime().unwrap().lcm(b.prime().unwrap())),
        }
    }
}

impl fmt::Display for PeriodSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PeriodSet::Empty => write!(f, "empty"),
            PeriodSet::AllPositive => write!(f, "all_positive"),
            PeriodSet::MultiplesInt(p) => write!(f, "multiples({p})"),
            PeriodSet::MultiplesRat(t) => write!(f, "multiples({t})"),
        }
    }
}

/// The set of limits of periodicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "from", rename_all = "snake_case")]
pub enum LimitSet {
    Empty,
    /// `{k, k+1, ...}` with `k >= 0`; a least element of -1 is reported as `AllTimes`.
    FromInt(i64),
    /// `[t, inf)`.
    FromRat(Rat),
    /// Every time instant.
    AllTimes,
}

impl LimitSet {
    pub fn is_empty(&self) -> bool {
        matches!(self, LimitSet::Empty)
    }

    /// Discrete limit set with least element `k >= -1`.
    pub fn from_int(k: i64) -> LimitSet {
        if k <= -1 {
            LimitSet::AllTimes
        } else {
            LimitSet::FromInt(k)
        }
    }

    pub fn contains_int(&self, k: i64) -> bool {
        match *self {
            LimitSet::Empty => false,
            LimitSet::AllTimes => k >= -1,
            LimitSet::FromInt(k0) => k >= k0,
            LimitSet::FromRat(t) => Rat::int(k) >= t,
        }
    }

    pub fn contains(&self, t: Rat) -> bool {
        match *self {
            LimitSet::Empty => false,
            LimitSet::AllTimes => true,
            LimitSet::FromInt(k0) => t.is_integer() && t >= Rat::int(k0),
            LimitSet::FromRat(t0) => t >= t0,
        }
    }

    /// Least element, with `AllTimes` mapped to `-1` for discrete time.
    pub fn least_int(&self) -> Option<i64> {
        match *self {
            LimitSet::FromInt(k) => Some(k),
            LimitSet::AllTimes => Some(-1),
            _ => None,
        }
    }

    /// Least element for real time; `None` for `Empty` and `AllTimes`.
    pub fn least_rat(&self) -> Option<Rat> {
        match *self {
            LimitSet::FromRat(t) => Some(t),
            LimitSet::FromInt(k) => Some(Rat::int(k)),
            _ => None,
        }
    }
}

impl fmt::Display for LimitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LimitSet::Empty => write!(f, "empty"),
            LimitSet::FromInt(k) => write!(f, "from({k})"),
            LimitSet::FromRat(t) => write!(f, "from({t})"),
            LimitSet::AllTimes => write!(f, "all"),
        }
    }
}

/// An eventually periodic set of integers `>= -1`.
///
/// Membership: `k` in `exceptional`, or `k >= anchor` with
/// `(k - anchor) mod period` in `residues`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvPeriodicIntSet {
    pub exceptional: Vec<i64>,
    pub anchor: i64,
    pub period: u64,
    pub residues: Vec<u64>,
}

impl EvPeriodicIntSet {
    pub fn contains(&self, k: i64) -> bool {
        if k < -1 {
            return false;
        }
        if k < self.anchor {
            return self.exceptional.binary_search(&k).is_ok();
        }
        let r = ((k - self.anchor) as u64) % self.period;
        self.residues.binary_search(&r).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.exceptional.is_empty() && self.residues.is_empty()
    }

    /// Members in `[lo, hi)`.
    pub fn members_in(&self, lo: i64, hi: i64) -> Vec<i64> {
        (lo.max(-1)..hi).filter(|&k| self.contains(k)).collect()
    }
}

/// A half-open interval `[lo, hi)`; `None` stands for an infinite end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub lo: Option<Rat>,
    pub hi: Option<Rat>,
}

impl Interval {
    pub fn new(lo: Option<Rat>, hi: Option<Rat>) -> Interval {
        Interval { lo, hi }
    }

    pub fn bounded(lo: Rat, hi: Rat) -> Interval {
        Interval {
            lo: Some(lo),
            hi: Some(hi),
        }
    }

    pub fn contains(&self, t: Rat) -> bool {
        self.lo.is_none_or(|a| t >= a) && self.hi.is_none_or(|b| t < b)
    }

    pub fn is_empty(&self) -> bool {
        matches!((self.lo, self.hi), (Some(a), Some(b)) if a >= b)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.lo {
            Some(a) => write!(f, "[{a}, ")?,
            None => write!(f, "(-inf, ")?,
        }
        match self.hi {
            Some(b) => write!(f, "{b})"),
            None => write!(f, "inf)"),
        }
    }
}

/// The part of an [`EvPeriodicIntervalSet`] that extends to `+inf`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IntervalTail {
    /// `[start, inf)`.
    Ray { start: Rat },
    /// `union over k >= 0 of [a + kT, b + kT)` for each `[a, b)` in `pattern`,
    /// with every `[a, b)` inside `[anchor, anchor + period)`.
    Train {
        anchor: Rat,
        period: Rat,
        pattern: Vec<(Rat, Rat)>,
    },
}

/// An eventually periodic union of half-open intervals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvPeriodicIntervalSet {
    /// The whole real line; all other fields are then empty.
    pub full: bool,
    /// `(-inf, t)`.
    pub initial_ray: Option<Rat>,
    pub transient: Vec<(Rat, Rat)>,
    pub tail: Option<IntervalTail>,
}

impl EvPeriodicIntervalSet {
    pub fn full() -> Self {
        EvPeriodicIntervalSet {
            full: true,
            initial_ray: None,
            transient: Vec::new(),
            tail: None,
        }
    }

    pub fn empty() -> Self {
        EvPeriodicIntervalSet {
            full: false,
            initial_ray: None,
            transient: Vec::new(),
            tail: None,
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.full && self.initial_ray.is_none() && self.transient.is_empty() && self.tail.is_none()
    }

    pub fn contains(&self, t: Rat) -> bool {
        if self.full {
            return true;
        }
        if matches!(self.initial_ray, Some(r) if t < r) {
            return true;
        }
        if self.transient.iter().any(|&(a, b)| a <= t && t < b) {
            return true;
        }
        match &self.tail {
            None => false,
            Some(IntervalTail::Ray { start }) => t >= *start,
            Some(IntervalTail::Train {
                anchor,
                period,
                pattern,
            }) => {
                if t < *anchor {
                    return false;
                }
                let off = *anchor + (t - *anchor).rem_euclid(*period);
                pattern.iter().any(|&(a, b)| a <= off && off < b)
            }
        }
    }

    /// The maximal intervals of `self ∩ [lo, hi)`, sorted, with touching pieces merged.
    pub fn intervals_in(&self, lo: Rat, hi: Rat) -> Vec<(Rat, Rat)> {
        let mut pieces: Vec<(Rat, Rat)> = Vec::new();
        let mut push = |a: Rat, b: Rat| {
            let (a, b) = (a.max(lo), b.min(hi));
            if a < b {
                pieces.push((a, b));
            }
        };
        if self.full {
            push(lo, hi);
        }
        if let Some(r) = self.initial_ray {
            push(lo, r);
        }
        for &(a, b) in &self.transient {
            push(a, b);
        }
        match &self.tail {
            None => {}
            Some(IntervalTail::Ray { start }) => push(*start, hi.max(*start)),
            Some(IntervalTail::Train {
                anchor,
                period,
                pattern,
            }) => {
                let first = if lo > *anchor {
                    (lo - *anchor).div_floor(*period)
                } else {
                    0
                };
                let mut k = first;
                loop {
                    let base = *anchor + *period * Rat::from(k);
                    if base >= hi {
                        break;
                    }
                    for &(a, b) in pattern {
                        push(a + base - *anchor, b + base - *anchor);
                    }
                    k += 1;
                }
            }
        }
        pieces.sort();
        let mut merged: Vec<(Rat, Rat)> = Vec::new();
        for (a, b) in pieces {
            match merged.last_mut() {
                Some(last) if a <= last.1 => last.1 = last.1.max(b),
                _ => merged.push((a, b)),
            }
        }
        merged
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    #[test]
    fn period_set_membership_and_intersection() {
        let a = PeriodSet::MultiplesInt(2);
        let b = PeriodSet::MultiplesInt(3);
        assert_eq!(a.intersect(&b), PeriodSet::MultiplesInt(6));
        assert!(a.contains_int(4) && !a.contains_int(3));
        let c = PeriodSet::MultiplesRat(r("3/2"));
        assert_eq!(c.intersect(&PeriodSet::MultiplesRat(r("5/3"))), PeriodSet::MultiplesRat(r("15")));
        assert_eq!(PeriodSet::AllPositive.intersect(&c), c);
        assert_eq!(PeriodSet::Empty.intersect(&c), PeriodSet::Empty);
        assert!(PeriodSet::AllPositive.contains(r("7/3")));
    }

    #[test]
    fn limit_set_normalizes_minus_one() {
        assert_eq!(LimitSet::from_int(-1), LimitSet::AllTimes);
        assert_eq!(LimitSet::from_int(3), LimitSet::FromInt(3));
        assert!(LimitSet::FromInt(3).contains_int(4));
        assert!(!LimitSet::FromInt(3).contains_int(2));
        assert_eq!(LimitSet::AllTimes.least_int(), Some(-1));
    }

    #[test]
    fn int_set_membership() {
        let s = EvPeriodicIntSet {
            exceptional: vec![-1],
            anchor: 1,
            period: 2,
            residues: vec![0],
        };
        assert_eq!(s.members_in(-1, 8), vec![-1, 1, 3, 5, 7]);
    }

    #[test]
    fn interval_set_components() {
        let s = EvPeriodicIntervalSet {
            full: false,
            initial_ray: Some(r("0")),
            transient: vec![],
            tail: Some(IntervalTail::Train {
                anchor: r("1"),
                period: r("5"),
                pattern: vec![(r("1"), r("2")), (r("3"), r("5"))],
            }),
        };
        assert!(s.contains(r("-10")) && !s.contains(r("0")) && s.contains(r("1")));
        assert!(s.contains(r("9")) && !s.contains(r("10")) && s.contains(r("11")));
        assert_eq!(
            s.intervals_in(r("-1"), r("9")),
            vec![
                (r("-1"), r("0")),
                (r("1"), r("2")),
                (r("3"), r("5")),
                (r("6"), r("7")),
                (r("8"), r("9"))
            ]
        );
        assert_eq!(Interval::new(None, Some(r("0"))).to_string(), "(-inf, 0)");
    }
}
