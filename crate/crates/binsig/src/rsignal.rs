//! Real-time signals: right-continuous step functions with rational breakpoints.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::point::Point;
use crate::rat::Rat;
use crate::sets::{EvPeriodicIntervalSet, Interval, IntervalTail};

/// The periodic part of a [`RealSignal`].
///
/// On `[anchor + kT + off_i, anchor + kT + off_{i+1})` the signal equals the
/// value of `pattern[i]`, for every `k >= 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Tail {
    anchor: Rat,
    period: Rat,
    pattern: Vec<(Rat, Point)>,
}

impl Tail {
    /// Checks the pattern shape: first offset 0, offsets increasing and below `period`.
    pub fn new(anchor: Rat, period: Rat, pattern: Vec<(Rat, Point)>) -> Result<Tail> {
        if !period.is_positive() {
            return Err(Error::domain(format!("tail period must be positive, got {period}")));
        }
        match pattern.first() {
            Some((o, _)) if o.is_zero() => {}
            _ => return Err(Error::domain("tail pattern must start at offset 0")),
        }
        if pattern.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::domain("tail offsets must be strictly increasing"));
        }
        if pattern.last().unwrap().0 >= period {
            return Err(Error::domain("tail offsets must lie below the period"));
        }
        Ok(Tail {
            anchor,
            period,
            pattern,
        })
    }

    pub fn anchor(&self) -> Rat {
        self.anchor
    }

    pub fn period(&self) -> Rat {
        self.period
    }

    pub fn pattern(&self) -> &[(Rat, Point)] {
        &self.pattern
    }

    /// Value at offset `off` in `[0, period)`.
    fn at_offset(&self, off: Rat) -> Point {
        let i = self.pattern.partition_point(|&(o, _)| o <= off);
        self.pattern[i - 1].1
    }
}

/// A step function `R -> {0,1}^n`, constant on `(-inf, t1)`, with finitely
/// many breakpoints before an optional periodic tail.
///
/// Values are kept canonical, so two signals are equal as values exactly
/// when they are equal as functions. In canonical form the transient lists
/// only genuine value changes, the tail period is the least period of the
/// tail, and the tail anchor is the earliest time from which the signal is
/// periodic with that period. A tail whose pattern is a single value is not
/// allowed: such signals are eventually constant and carry no tail.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RealSignal {
    width: usize,
    initial: Point,
    transient: Vec<(Rat, Point)>,
    tail: Option<Tail>,
}

/// The time set on which a real signal already equals its final value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "from", rename_all = "snake_case")]
pub enum RealFinalTimes {
    Empty,
    Ray(Rat),
    All,
}

/// Orbit, omega limit set, initial and final data of a real signal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealSummary {
    pub orbit: Vec<Point>,
    pub omega: Vec<Point>,
    /// Least `t` such that only omega values occur on `[t, inf)`; `None` when
    /// every time qualifies.
    pub omega_horizon: Option<Rat>,
    pub initial_value: Point,
    /// `(-inf, t0)`, or the whole line for constant signals.
    pub initial_time_set: Interval,
    pub final_value: Option<Point>,
    pub final_time_set: RealFinalTimes,
}

fn eval(initial: Point, transient: &[(Rat, Point)], tail: Option<&Tail>, t: Rat) -> Point {
    if let Some(tail) = tail {
        if t >= tail.anchor {
            return tail.at_offset((t - tail.anchor).rem_euclid(tail.period));
        }
    }
    let i = transient.partition_point(|&(s, _)| s <= t);
    if i == 0 {
        initial
    } else {
        transient[i - 1].1
    }
}

fn sorted_unique(mut v: Vec<Rat>) -> Vec<Rat> {
    v.sort();
    v.dedup();
    v
}

impl RealSignal {
    /// Validates the parts and returns the canonical signal they describe.
    pub fn new(
        width: usize,
        initial: Point,
        transient: Vec<(Rat, Point)>,
        tail: Option<Tail>,
    ) -> Result<RealSignal> {
        let check = |p: Point| -> Result<()> {
            if p.width() != width {
                return Err(Error::Width {
                    expected: width,
                    found: p.width(),
                });
            }
            Ok(())
        };
        check(initial)?;
        for &(_, v) in &transient {
            check(v)?;
        }
        if transient.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::domain("transient times must be strictly increasing"));
        }
        if let Some(tail) = &tail {
            for &(_, v) in &tail.pattern {
                check(v)?;
            }
            if let Some(&(last, _)) = transient.last() {
                if tail.anchor < last {
                    return Err(Error::domain(format!(
                        "tail anchor {} precedes transient time {last}",
                        tail.anchor
                    )));
                }
            }
        }
        Ok(canonicalize_parts(width, initial, transient, tail))
    }

    pub fn constant(mu: Point) -> RealSignal {
        RealSignal {
            width: mu.width(),
            initial: mu,
            transient: Vec::new(),
            tail: None,
        }
    }

    /// Tabulates `f` at `candidates`.
    ///
    /// `f` must equal `initial` below every candidate, change value only at
    /// candidates, and, when `tail = Some((anchor, period))`, be periodic with
    /// `period` on `[anchor, inf)`; candidates are then only needed below
    /// `anchor + period`.
    pub fn from_fn(
        width: usize,
        initial: Point,
        candidates: Vec<Rat>,
        tail: Option<(Rat, Rat)>,
        f: impl Fn(Rat) -> Point,
    ) -> Result<RealSignal> {
        let cands = sorted_unique(candidates);
        match tail {
            None => {
                let transient = cands.iter().map(|&c| (c, f(c))).collect();
                RealSignal::new(width, initial, transient, None)
            }
            Some((anchor, period)) => {
                let transient = cands
                    .iter()
                    .filter(|&&c| c < anchor)
                    .map(|&c| (c, f(c)))
                    .collect();
                let mut pattern = vec![(Rat::zero(), f(anchor))];
                pattern.extend(
                    cands
                        .iter()
                        .filter(|&&c| c > anchor && c < anchor + period)
                        .map(|&c| (c - anchor, f(c))),
                );
                let tail = Tail::new(anchor, period, pattern)?;
                RealSignal::new(width, initial, transient, Some(tail))
            }
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// The value on `(-inf, t0)`.
    pub fn initial(&self) -> Point {
        self.initial
    }

    pub fn transient(&self) -> &[(Rat, Point)] {
        &self.transient
    }

    pub fn tail(&self) -> Option<&Tail> {
        self.tail.as_ref()
    }

    pub fn value_at(&self, t: Rat) -> Point {
        eval(self.initial, &self.transient, self.tail.as_ref(), t)
    }

    /// `x(t - 0)`.
    pub fn left_limit(&self, t: Rat) -> Point {
        if let Some(tail) = &self.tail {
            if t > tail.anchor {
                let off = (t - tail.anchor).rem_euclid(tail.period);
                if off.is_zero() {
                    return tail.pattern.last().unwrap().1;
                }
                let i = tail.pattern.partition_point(|&(o, _)| o < off);
                return tail.pattern[i - 1].1;
            }
        }
        let i = self.transient.partition_point(|&(s, _)| s < t);
        if i == 0 {
            self.initial
        } else {
            self.transient[i - 1].1
        }
    }

    /// `(x(t - 0), x(t + 0))`; the right limit is `x(t)` itself.
    pub fn limits(&self, t: Rat) -> (Point, Point) {
        (self.left_limit(t), self.value_at(t))
    }

    pub fn is_constant(&self) -> bool {
        self.transient.is_empty() && self.tail.is_none()
    }

    pub fn is_eventually_constant(&self) -> bool {
        self.tail.is_none()
    }

    /// The value on `[t_last, inf)` of an eventually constant signal.
    pub fn final_value(&self) -> Option<Point> {
        match self.tail {
            Some(_) => None,
            None => Some(self.transient.last().map_or(self.initial, |&(_, v)| v)),
        }
    }

    /// Every time in `[lo, hi)` at which the representation places a
    /// breakpoint; a superset of the change points.
    pub fn breakpoints_in(&self, lo: Rat, hi: Rat) -> Vec<Rat> {
        let mut out: Vec<Rat> = self
            .transient
            .iter()
            .map(|&(s, _)| s)
            .filter(|&s| s >= lo && s < hi)
            .collect();
        if let Some(tail) = &self.tail {
            let mut k = if lo > tail.anchor {
                (lo - tail.anchor).div_floor(tail.period)
            } else {
                0
            };
            loop {
                let base = tail.anchor + tail.period * Rat::from(k);
                if base >= hi {
                    break;
                }
                for &(o, _) in &tail.pattern {
                    let s = base + o;
                    if s >= lo && s < hi {
                        out.push(s);
                    }
                }
                k += 1;
            }
        }
        sorted_unique(out)
    }

    /// Times in `[lo, hi)` where the value actually changes.
    pub fn change_points_in(&self, lo: Rat, hi: Rat) -> Vec<Rat> {
        self.breakpoints_in(lo, hi)
            .into_iter()
            .filter(|&s| self.left_limit(s) != self.value_at(s))
            .collect()
    }

    /// Earliest time the representation can change value; every change point
    /// is at or after it.
    fn earliest_breakpoint(&self) -> Option<Rat> {
        self.transient
            .first()
            .map(|&(s, _)| s)
            .or(self.tail.as_ref().map(|t| t.anchor))
    }

    /// The least change point, i.e. `t0` with initial time set `(-inf, t0)`.
    pub fn first_change(&self) -> Option<Rat> {
        let lo = self.earliest_breakpoint()?;
        self.next_change_from(lo)
    }

    /// The least change point `>= t`.
    fn next_change_from(&self, t: Rat) -> Option<Rat> {
        let hi = match &self.tail {
            None => self.transient.last().map(|&(s, _)| s + Rat::one())?,
            Some(tail) => t.max(tail.anchor) + tail.period + tail.period,
        };
        self.change_points_in(t, hi).first().copied()
    }

    /// The least change point strictly after `t`.
    pub fn next_change_after(&self, t: Rat) -> Option<Rat> {
        let c = self.next_change_from(t)?;
        if c > t {
            Some(c)
        } else {
            let lo = self.earliest_breakpoint()?;
            self.change_points_in(lo.max(t), t + self.span_after(t))
                .into_iter()
                .find(|&s| s > t)
        }
    }

    /// A length after `t` guaranteed to contain the next change point, if any.
    fn span_after(&self, t: Rat) -> Rat {
        match &self.tail {
            Some(tail) => (tail.anchor - t).max(Rat::zero()) + tail.period + tail.period,
            None => match self.transient.last() {
                Some(&(s, _)) if s > t => s - t + Rat::one(),
                _ => Rat::one(),
            },
        }
    }

    /// The greatest change point `<= t`.
    pub fn last_change_at_or_before(&self, t: Rat) -> Option<Rat> {
        let lo = self.earliest_breakpoint()?;
        if lo > t {
            return None;
        }
        let lo = match &self.tail {
            Some(tail) if t - tail.period - tail.period > tail.anchor => {
                t - tail.period - tail.period
            }
            _ => lo,
        };
        self.change_points_in(lo, t + Rat::one())
            .into_iter().rfind(|&s| s <= t)
    }

    /// `(-inf, t0)`, or the whole line when constant.
    pub fn initial_time_set(&self) -> Interval {
        Interval::new(None, self.first_change())
    }

    /// The maximal interval containing `t` on which the signal is constant.
    pub fn flat_interval(&self, t: Rat) -> Interval {
        Interval::new(self.last_change_at_or_before(t), self.next_change_after(t))
    }

    /// The signal that agrees with `self` on `[t, inf)` and equals `x(t - 0)` before `t`.
    pub fn forget(&self, t: Rat) -> RealSignal {
        let tail = self.tail.as_ref().map(|tl| (tl.anchor.max(t), tl.period));
        let hi = match tail {
            Some((a, p)) => a + p,
            None => self.transient.last().map_or(t, |&(s, _)| s.max(t)) + Rat::one(),
        };
        let mut cands = vec![t];
        cands.extend(self.breakpoints_in(t, hi));
        let before = self.left_limit(t);
        RealSignal::from_fn(self.width, before, cands, tail, |s| {
            if s < t {
                before
            } else {
                self.value_at(s)
            }
        })
        .expect("forgetting preserves representability")
    }

    /// Pointwise image under `f`.
    pub fn map(&self, width: usize, f: impl Fn(Point) -> Point) -> Result<RealSignal> {
        let transient = self.transient.iter().map(|&(s, v)| (s, f(v))).collect();
        let tail = match &self.tail {
            None => None,
            Some(tl) => Some(Tail::new(
                tl.anchor,
                tl.period,
                tl.pattern.iter().map(|&(o, v)| (o, f(v))).collect(),
            )?),
        };
        RealSignal::new(width, f(self.initial), transient, tail)
    }

    /// The one-bit signal that is 1 exactly where `self` equals `mu`.
    pub fn indicator(&self, mu: Point) -> Result<RealSignal> {
        self.check_point(mu)?;
        self.map(1, |v| Point::bit(v == mu))
    }

    pub(crate) fn check_point(&self, mu: Point) -> Result<()> {
        if mu.width() != self.width {
            return Err(Error::Width {
                expected: self.width,
                found: mu.width(),
            });
        }
        Ok(())
    }

    pub fn orbit(&self) -> BTreeSet<Point> {
        let mut s: BTreeSet<Point> = self.transient.iter().map(|&(_, v)| v).collect();
        s.insert(self.initial);
        if let Some(tail) = &self.tail {
            s.extend(tail.pattern.iter().map(|&(_, v)| v));
        }
        s
    }

    pub fn omega(&self) -> BTreeSet<Point> {
        match &self.tail {
            Some(tail) => tail.pattern.iter().map(|&(_, v)| v).collect(),
            None => self.final_value().into_iter().collect(),
        }
    }

    /// The anchor of the tail, or the last change of an eventually constant
    /// signal: from here on the signal is in its final regime.
    pub fn settle_time(&self) -> Option<Rat> {
        match &self.tail {
            Some(tail) => Some(tail.anchor),
            None => self.transient.last().map(|&(s, _)| s),
        }
    }

    pub fn summarize(&self) -> RealSummary {
        let omega = self.omega();
        // The last segment holding a non-omega value ends at the next transient
        // time, or at the tail anchor.
        let mut horizon = None;
        let mut prev = self.initial;
        for (i, &(s, v)) in self.transient.iter().enumerate() {
            if !omega.contains(&prev) {
                horizon = Some(s);
            }
            prev = v;
            if i + 1 == self.transient.len() && !omega.contains(&v) {
                horizon = self.tail.as_ref().map(|t| t.anchor);
            }
        }
        if self.transient.is_empty() && !omega.contains(&self.initial) {
            horizon = self.tail.as_ref().map(|t| t.anchor);
        }
        let final_value = self.final_value();
        let final_time_set = match (final_value, self.transient.last()) {
            (None, _) => RealFinalTimes::Empty,
            (Some(_), None) => RealFinalTimes::All,
            (Some(_), Some(&(s, _))) => RealFinalTimes::Ray(s),
        };
        RealSummary {
            orbit: self.orbit().into_iter().collect(),
            omega: omega.into_iter().collect(),
            omega_horizon: horizon,
            initial_value: self.initial,
            initial_time_set: self.initial_time_set(),
            final_value,
            final_time_set,
        }
    }

    /// Maximal intervals of `{t in [lo, hi) | x(t) = v}`.
    pub fn runs(&self, v: Point, lo: Rat, hi: Rat) -> Vec<(Rat, Rat)> {
        let mut cuts = vec![lo];
        cuts.extend(self.change_points_in(lo, hi).into_iter().filter(|&s| s > lo));
        cuts.push(hi);
        let mut out: Vec<(Rat, Rat)> = Vec::new();
        for w in cuts.windows(2) {
            if w[0] < w[1] && self.value_at(w[0]) == v {
                match out.last_mut() {
                    Some(last) if last.1 == w[0] => last.1 = w[1],
                    _ => out.push((w[0], w[1])),
                }
            }
        }
        out
    }

    /// The set `{t | x(t) = mu}`.
    ///
    /// An eventually periodic tail is anchored at the first interval start
    /// at or after the earliest time from which the set is periodic.
    pub fn support_set(&self, mu: Point) -> Result<EvPeriodicIntervalSet> {
        let ind = self.indicator(mu)?;
        let one = Point::bit(true);
        let Some(t0) = ind.first_change() else {
            return Ok(if ind.initial == one {
                EvPeriodicIntervalSet::full()
            } else {
                EvPeriodicIntervalSet::empty()
            });
        };
        let initial_ray = (ind.initial == one).then_some(t0);
        let (tail, end) = match &ind.tail {
            None => {
                let last = ind.transient.last().unwrap();
                let tail = (last.1 == one).then_some(IntervalTail::Ray { start: last.0 });
                (tail, last.0)
            }
            Some(tl) => {
                // first 0 -> 1 change at or after the anchor
                let start = ind
                    .change_points_in(tl.anchor, tl.anchor + tl.period + tl.period)
                    .into_iter()
                    .find(|&s| ind.value_at(s) == one)
                    .expect("a nonconstant periodic tail rises in every two periods");
                let pattern = ind.runs(one, start, start + tl.period);
                (
                    Some(IntervalTail::Train {
                        anchor: start,
                        period: tl.period,
                        pattern,
                    }),
                    start,
                )
            }
        };
        let transient = ind.runs(one, t0, end);
        Ok(EvPeriodicIntervalSet {
            full: false,
            initial_ray,
            transient,
            tail,
        })
    }
}

/// Least `s = period / m` (`m` up to the number of pattern entries) under
/// which the tail pattern is invariant.
fn reduced_period(tail: &Tail) -> Rat {
    let n = tail.pattern.len() as i128;
    for m in (2..=n).rev() {
        let s = tail.period / Rat::from(m);
        let mut pts: Vec<Rat> = Vec::new();
        for &(o, _) in &tail.pattern {
            pts.push(o);
            pts.push((o - s).rem_euclid(tail.period));
        }
        if pts
            .iter()
            .all(|&c| tail.at_offset(c) == tail.at_offset((c + s).rem_euclid(tail.period)))
        {
            return s;
        }
    }
    tail.period
}

fn merge_changes(initial: Point, entries: impl IntoIterator<Item = (Rat, Point)>) -> Vec<(Rat, Point)> {
    let mut prev = initial;
    let mut out = Vec::new();
    for (s, v) in entries {
        if v != prev {
            out.push((s, v));
            prev = v;
        }
    }
    out
}

fn canonicalize_parts(
    width: usize,
    initial: Point,
    transient: Vec<(Rat, Point)>,
    tail: Option<Tail>,
) -> RealSignal {
    let Some(tail) = tail else {
        return RealSignal {
            width,
            initial,
            transient: merge_changes(initial, transient),
            tail: None,
        };
    };
    let period = reduced_period(&tail);
    let first = tail.pattern[0].1;
    if tail.pattern.iter().all(|&(_, v)| v == first) {
        let mut entries = transient;
        entries.push((tail.anchor, first));
        return RealSignal {
            width,
            initial,
            transient: merge_changes(initial, entries),
            tail: None,
        };
    }
    let tail = Tail {
        anchor: tail.anchor,
        period,
        pattern: tail.pattern.into_iter().filter(|&(o, _)| o < period).collect(),
    };
    let value = |t: Rat| eval(initial, &transient, Some(&tail), t);

    // Every change point lies in `bps`; the shifted copies refine the line
    // into cells on which both x(t) and x(t + period) are constant.
    let mut bps: Vec<Rat> = transient.iter().map(|&(s, _)| s).collect();
    bps.extend(tail.pattern.iter().map(|&(o, _)| tail.anchor + o));
    bps.push(tail.anchor + period);
    let bps = sorted_unique(bps);
    let mut cells = bps.clone();
    cells.extend(bps.iter().map(|&b| b - period));
    let cells = sorted_unique(cells);
    let anchor = cells
        .windows(2)
        .filter(|w| value(w[0]) != value(w[0] + period))
        .map(|w| w[1])
        .next_back()
        .unwrap_or(cells[0]);
    debug_assert!(anchor <= tail.anchor);

    let new_transient = merge_changes(
        initial,
        bps.iter().filter(|&&b| b < anchor).map(|&b| (b, value(b))),
    );
    let start = value(anchor);
    let mut pattern = vec![(Rat::zero(), start)];
    pattern.extend(
        merge_changes(
            start,
            bps.iter()
                .filter(|&&b| b > anchor && b < anchor + period)
                .map(|&b| (b, value(b))),
        )
        .into_iter()
        .map(|(b, v)| (b - anchor, v)),
    );
    RealSignal {
        width,
        initial,
        transient: new_transient,
        tail: Some(Tail {
            anchor,
            period,
            pattern,
        }),
    }
}
