//! Brute-force checks of the periodicity definitions on finite windows.
//!
//! Nothing here uses the periodicity engine except [`agree`], which compares
//! the two. Quantifiers over real times are evaluated at every point where
//! their truth can change (shifts of window breakpoints by multiples of the
//! period) and at the midpoints between them.

use serde::Serialize;

use crate::dsignal::DiscreteSignal;
use crate::error::{Error, Result};
use crate::periodicity::{Classification, SignalRef};
use crate::point::Point;
use crate::rat::Rat;
use crate::rsignal::RealSignal;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WindowValues {
    /// `values[i]` is the value at `start + i`.
    Discrete(Vec<Point>),
    /// `initial` on `[start, changes[0].0)`, then each change holds until the next.
    Real {
        initial: Point,
        changes: Vec<(Rat, Point)>,
        /// The signal is constant on `(-inf, first change)`, so the window
        /// start lies in the initial time set.
        initial_ray: bool,
    },
}

/// A signal known only on `[start, end)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowSignal {
    width: usize,
    start: Rat,
    end: Rat,
    values: WindowValues,
}

impl WindowSignal {
    pub fn discrete(width: usize, start: i64, values: Vec<Point>) -> Result<WindowSignal> {
        if start < -1 {
            return Err(Error::domain("discrete windows start at -1 or later"));
        }
        if values.is_empty() {
            return Err(Error::domain("window must be nonempty"));
        }
        if let Some(v) = values.iter().find(|v| v.width() != width) {
            return Err(Error::Width {
                expected: width,
                found: v.width(),
            });
        }
        Ok(WindowSignal {
            width,
            start: Rat::int(start),
            end: Rat::int(start + values.len() as i64),
            values: WindowValues::Discrete(values),
        })
    }

    pub fn real(
        width: usize,
        start: Rat,
        end: Rat,
        initial: Point,
        changes: Vec<(Rat, Point)>,
        initial_ray: bool,
    ) -> Result<WindowSignal> {
        if start >= end {
            return Err(Error::domain("window must be nonempty"));
        }
        let times_ok = changes.windows(2).all(|w| w[0].0 < w[1].0)
            && changes.iter().all(|&(t, _)| t > start && t < end);
        if !times_ok {
            return Err(Error::domain(
                "change times must increase strictly and lie inside the window",
            ));
        }
        if let Some(v) = std::iter::once(&initial)
            .chain(changes.iter().map(|c| &c.1))
            .find(|v| v.width() != width)
        {
            return Err(Error::Width {
                expected: width,
                found: v.width(),
            });
        }
        Ok(WindowSignal {
            width,
            start,
            end,
            values: WindowValues::Real {
                initial,
                changes,
                initial_ray,
            },
        })
    }

    /// The values of `sig` at `-1..end`.
    pub fn from_discrete(sig: &DiscreteSignal, end: i64) -> WindowSignal {
        WindowSignal::discrete(sig.width(), -1, sig.values(-1, end.max(0))).expect("valid signal")
    }

    /// `sig` restricted to `[start, end)`.
    pub fn from_real(sig: &RealSignal, start: Rat, end: Rat) -> Result<WindowSignal> {
        let changes = sig
            .change_points_in(start, end)
            .into_iter()
            .filter(|&c| c > start)
            .map(|c| (c, sig.value_at(c)))
            .collect();
        let initial_ray = sig.first_change().is_none_or(|t0| start < t0);
        WindowSignal::real(sig.width(), start, end, sig.value_at(start), changes, initial_ray)
    }

    /// `0, 1, 00, 11, 000, 111, ...` truncated to `len` values from -1.
    /// Neither value is eventually periodic.
    pub fn growing_blocks(len: usize) -> WindowSignal {
        let mut v = Vec::with_capacity(len);
        let mut run = 1;
        while v.len() < len {
            v.extend(std::iter::repeat_n(Point::bit(false), run));
            v.extend(std::iter::repeat_n(Point::bit(true), run));
            run += 1;
        }
        v.truncate(len);
        WindowSignal::discrete(1, -1, v).expect("width 1")
    }

    /// `0, 1, 0, 11, 0, 111, ...` truncated to `len` values from -1.
    pub fn growing_runs(len: usize) -> WindowSignal {
        let mut v = Vec::with_capacity(len);
        let mut run = 1;
        while v.len() < len {
            v.push(Point::bit(false));
            v.extend(std::iter::repeat_n(Point::bit(true), run));
            run += 1;
        }
        v.truncate(len);
        WindowSignal::discrete(1, -1, v).expect("width 1")
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn start(&self) -> Rat {
        self.start
    }

    pub fn end(&self) -> Rat {
        self.end
    }

    pub fn values(&self) -> &WindowValues {
        &self.values
    }

    pub fn is_discrete(&self) -> bool {
        matches!(self.values, WindowValues::Discrete(_))
    }

    /// Value at `t`, for `start <= t < end` (integer `t` in discrete windows).
    pub fn value(&self, t: Rat) -> Point {
        debug_assert!(t >= self.start && t < self.end, "{t} outside the window");
        match &self.values {
            WindowValues::Discrete(v) => v[(t - self.start).floor() as usize],
            WindowValues::Real {
                initial, changes, ..
            } => {
                let i = changes.partition_point(|&(c, _)| c <= t);
                if i == 0 {
                    *initial
                } else {
                    changes[i - 1].1
                }
            }
        }
    }

    fn cuts(&self) -> Vec<Rat> {
        match &self.values {
            WindowValues::Discrete(_) => Vec::new(),
            WindowValues::Real { changes, .. } => changes.iter().map(|c| c.0).collect(),
        }
    }

    fn first_change(&self) -> Option<Rat> {
        match &self.values {
            WindowValues::Discrete(_) => None,
            WindowValues::Real { changes, .. } => changes.first().map(|c| c.0),
        }
    }

    /// Times in `[lo, hi)` covering every region on which a statement about
    /// `x(t + zT)`, `z` integer, has constant truth: discrete windows give
    /// the integers, real windows the shifted cuts and midpoints.
    fn probe_times(&self, lo: Rat, hi: Rat, period: Rat) -> Vec<Rat> {
        if lo >= hi {
            return Vec::new();
        }
        if self.is_discrete() {
            return (lo.ceil() as i64..hi.ceil() as i64).map(Rat::int).collect();
        }
        let mut pts = vec![lo, hi];
        for c in self.cuts().into_iter().chain([self.start, self.end, lo, hi]) {
            let z_lo = (lo - c).div_floor(period);
            let z_hi = (hi - c).div_floor(period) + 1;
            for z in z_lo..=z_hi {
                let s = c + Rat::from(z) * period;
                if s > lo && s < hi {
                    pts.push(s);
                }
            }
        }
        pts.sort();
        pts.dedup();
        let mut out = Vec::with_capacity(2 * pts.len());
        for w in pts.windows(2) {
            out.push(w[0]);
            out.push(w[0].midpoint(w[1]));
        }
        out
    }

    fn check_span(&self, period: Rat, limit: Rat) -> Result<()> {
        if !period.is_positive() {
            return Err(Error::domain("period must be positive"));
        }
        if self.is_discrete() && (!period.is_integer() || !limit.is_integer()) {
            return Err(Error::domain("discrete periods and limits are integers"));
        }
        let needed = limit + Rat::int(3) * period;
        if limit < self.start || self.end < needed {
            return Err(Error::Horizon {
                needed: format!("[{limit}, {needed})"),
                given: format!("[{}, {})", self.start, self.end),
            });
        }
        Ok(())
    }

    /// For `t` in the support of `mu` at or after `limit`, every
    /// `t + zT` inside `[limit, end)` is in the support too. The probe
    /// partition is invariant under shifts by `T`, so one step each way
    /// covers every `z` by induction.
    fn shifts_stay_in_support(&self, mu: Point, period: Rat, limit: Rat) -> bool {
        self.probe_times(limit, self.end, period).into_iter().all(|t| {
            self.value(t) != mu
                || [t - period, t + period]
                    .into_iter()
                    .all(|s| s < limit || s >= self.end || self.value(s) == mu)
        })
    }
}

/// `mu` is eventually periodic with period `period` from `limit`, judged on
/// the window: the support meets `[limit, end)` and is invariant under
/// shifts by `period` there.
pub fn brute_point_check(w: &WindowSignal, mu: Point, period: Rat, limit: Rat) -> Result<bool> {
    w.check_span(period, limit)?;
    let probes = w.probe_times(limit, w.end, period);
    let occurs = probes.iter().any(|&t| w.value(t) == mu);
    Ok(occurs && w.shifts_stay_in_support(mu, period, limit))
}

/// The window is eventually periodic with period `period` from `limit`:
/// `x(t) = x(t + period)` whenever both times lie in `[limit, end)`.
pub fn brute_signal_check(w: &WindowSignal, period: Rat, limit: Rat) -> Result<bool> {
    w.check_span(period, limit)?;
    Ok(w
        .probe_times(limit, w.end - period, period)
        .into_iter()
        .all(|t| w.value(t) == w.value(t + period)))
}

/// Start candidates inside the initial time set, one per region of constant truth.
fn initial_starts(w: &WindowSignal, period: Rat) -> Result<Vec<Rat>> {
    match &w.values {
        WindowValues::Discrete(_) => {
            if w.start != Rat::int(-1) {
                return Err(Error::Window("periodicity needs a window starting at -1".into()));
            }
            Ok(vec![Rat::int(-1)])
        }
        WindowValues::Real { initial_ray, .. } => {
            if !initial_ray {
                return Err(Error::Window(
                    "periodicity needs a window starting in the initial time set".into(),
                ));
            }
            let t0 = w.first_change().unwrap_or(w.end);
            Ok(w.probe_times(w.start, t0, period))
        }
    }
}

/// `mu` is periodic with period `period`: the shift condition holds from
/// some start inside the initial time set (from -1 in discrete time).
pub fn brute_periodic_point(w: &WindowSignal, mu: Point, period: Rat) -> Result<bool> {
    w.check_span(period, w.start)?;
    let occurs = w.probe_times(w.start, w.end, period).into_iter().any(|t| w.value(t) == mu);
    Ok(occurs
        && initial_starts(w, period)?
            .into_iter()
            .any(|s| w.shifts_stay_in_support(mu, period, s)))
}

/// The window is periodic with period `period`.
pub fn brute_periodic_signal(w: &WindowSignal, period: Rat) -> Result<bool> {
    w.check_span(period, w.start)?;
    for s in initial_starts(w, period)? {
        if brute_signal_check(w, period, s)? {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub property: &'static str,
    pub point: Option<Point>,
    pub period: Rat,
    pub limit: Option<Rat>,
    pub engine: bool,
    pub brute: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AgreementReport {
    pub candidates: Vec<Rat>,
    pub window: (Rat, Rat),
    pub checks: usize,
    pub disagreements: Vec<Disagreement>,
}

impl AgreementReport {
    pub fn agrees(&self) -> bool {
        self.disagreements.is_empty()
    }

    /// Candidate periods at which the signal is eventually periodic per the engine.
    pub fn periods_found<'a>(&self, sig: impl Into<SignalRef<'a>>) -> Vec<Rat> {
        let a = sig.into().analyze();
        self.candidates
            .iter()
            .copied()
            .filter(|&t| a.periods.contains(t))
            .collect()
    }
}

/// Positive differences of breakpoints in `[lo, hi)`, the tail period and its
/// halves and thirds, smallest first, at most `count` of them.
pub fn breakpoint_difference_candidates(sig: &RealSignal, lo: Rat, hi: Rat, count: usize) -> Vec<Rat> {
    let bps = sig.breakpoints_in(lo, hi);
    let mut out: Vec<Rat> = Vec::new();
    for (i, &a) in bps.iter().enumerate() {
        for &b in &bps[i + 1..] {
            out.push(b - a);
        }
    }
    if let Some(t) = sig.tail() {
        out.extend([t.period(), t.period() / Rat::int(2), t.period() / Rat::int(3)]);
    }
    out.sort();
    out.dedup();
    out.truncate(count);
    if out.is_empty() {
        out.push(Rat::one());
    }
    out
}

/// Unrolls `sig` to a window of length `window_len` and compares the brute
/// checks with the engine at every candidate period (`1..=p_bound` in
/// discrete time, `t_candidates` in real time) for the eventual periodicity
/// and periodicity of every orbit point and of the signal.
pub fn agree<'a>(
    sig: impl Into<SignalRef<'a>>,
    window_len: Rat,
    p_bound: u64,
    t_candidates: &[Rat],
) -> Result<AgreementReport> {
    let sig = sig.into();
    let analysis = sig.analyze();
    let (lo, settle, span) = match sig {
        SignalRef::Discrete(d) => (
            Rat::int(-1),
            Rat::int(d.anchor()),
            Rat::int(d.period() as i64),
        ),
        SignalRef::Real(r) => {
            let lo = r.first_change().map_or(Rat::zero(), |t| t - Rat::one());
            (
                lo,
                r.settle_time().unwrap_or(lo).max(lo),
                r.tail().map_or(Rat::one(), |t| t.period()),
            )
        }
    };
    let candidates: Vec<Rat> = match sig {
        SignalRef::Discrete(_) => (1..=p_bound as i64).map(Rat::int).collect(),
        SignalRef::Real(_) => t_candidates.to_vec(),
    };
    let tmax = candidates.iter().copied().max().unwrap_or(Rat::one());
    let needed = settle - lo + span + span + Rat::int(3) * tmax;
    if window_len < needed {
        return Err(Error::Horizon {
            needed: needed.to_string(),
            given: window_len.to_string(),
        });
    }
    let w = match sig {
        SignalRef::Discrete(d) => WindowSignal::from_discrete(d, (lo + window_len).floor() as i64),
        SignalRef::Real(r) => WindowSignal::from_real(r, lo, lo + window_len)?,
    };
    let limit_candidates = |least: Option<Rat>| -> Vec<Rat> {
        let top = settle + span;
        let mut out = vec![lo, top];
        match sig {
            SignalRef::Discrete(_) => {
                out.extend((-1..=top.floor() as i64).map(Rat::int));
            }
            SignalRef::Real(r) => {
                if let Some(l) = least.filter(|&l| l >= lo) {
                    let below = r.breakpoints_in(lo, l).last().copied().unwrap_or(lo);
                    out.extend([l, below.midpoint(l), l.midpoint(top.max(l))]);
                }
            }
        }
        out.retain(|&l| l >= lo && l <= top);
        out.sort();
        out.dedup();
        out
    };

    let mut checks = 0;
    let mut disagreements = Vec::new();
    let mut record = |property, point, period, limit, engine: bool, brute: bool| {
        checks += 1;
        if engine != brute {
            disagreements.push(Disagreement {
                property,
                point,
                period,
                limit,
                engine,
                brute,
            });
        }
    };
    let signal_periodic = matches!(
        analysis.classification,
        Classification::Constant | Classification::Periodic
    );
    for &t in &candidates {
        for (&mu, pa) in &analysis.per_point {
            for l in limit_candidates(pa.limits.least_rat()) {
                let engine = pa.periods.contains(t) && pa.limits.contains(l);
                record("eventually periodic point", Some(mu), t, Some(l), engine, brute_point_check(&w, mu, t, l)?);
            }
            let engine = pa.is_periodic_point && pa.periods.contains(t);
            record("periodic point", Some(mu), t, None, engine, brute_periodic_point(&w, mu, t)?);
        }
        for l in limit_candidates(analysis.limits.least_rat()) {
            let engine = analysis.periods.contains(t) && analysis.limits.contains(l);
            record("eventually periodic signal", None, t, Some(l), engine, brute_signal_check(&w, t, l)?);
        }
        let engine = signal_periodic && analysis.periods.contains(t);
        record("periodic signal", None, t, None, engine, brute_periodic_signal(&w, t)?);
    }
    Ok(AgreementReport {
        candidates,
        window: (w.start, w.end),
        checks,
        disagreements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rsignal::Tail;

    fn p(s: &str) -> Point {
        s.parse().unwrap()
    }

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    fn bits(s: &str) -> Vec<Point> {
        s.chars().map(|c| Point::bit(c == '1')).collect()
    }

    #[test]
    fn odd_instants() {
        // 1 exactly at 1, 3, 5, ...
        let w = WindowSignal::discrete(1, -1, bits("0010101010101010")).unwrap();
        assert!(brute_point_check(&w, p("1"), r("2"), r("0")).unwrap());
        assert!(!brute_point_check(&w, p("1"), r("2"), r("-1")).unwrap());
        assert!(!brute_point_check(&w, p("1"), r("3"), r("0")).unwrap());
        assert!(matches!(
            brute_point_check(&w, p("1"), r("6"), r("0")),
            Err(Error::Horizon { .. })
        ));
    }

    #[test]
    fn growing_blocks_are_never_periodic() {
        let w = WindowSignal::growing_blocks(160);
        for period in 1..=6 {
            for limit in -1..=10 {
                for mu in ["0", "1"] {
                    assert!(!brute_point_check(&w, p(mu), Rat::int(period), Rat::int(limit)).unwrap());
                }
                assert!(!brute_signal_check(&w, Rat::int(period), Rat::int(limit)).unwrap());
            }
        }
        let w = WindowSignal::growing_runs(160);
        assert!(!brute_point_check(&w, p("0"), r("4"), r("3")).unwrap());
    }

    #[test]
    fn alternation_is_periodic() {
        let w = WindowSignal::discrete(1, -1, bits("10101010101010")).unwrap();
        assert!(brute_signal_check(&w, r("2"), r("-1")).unwrap());
        assert!(brute_periodic_signal(&w, r("2")).unwrap());
        for k in -1..3 {
            assert!(!brute_signal_check(&w, r("3"), Rat::int(k)).unwrap());
        }
    }

    #[test]
    fn heaviside_accepts_every_period_eventually() {
        let h = RealSignal::new(1, p("0"), vec![(r("0"), p("1"))], None).unwrap();
        let w = WindowSignal::from_real(&h, r("-2"), r("12")).unwrap();
        assert!(brute_signal_check(&w, r("7/2"), r("0")).unwrap());
        assert!(!brute_signal_check(&w, r("7/2"), r("-1")).unwrap());
        assert!(!brute_periodic_signal(&w, r("7/2")).unwrap());
    }

    fn example_train() -> RealSignal {
        // 1 on (-inf,0), [1,2), [3,5), [6,7), [8,10), ...
        let tail = Tail::new(
            r("-2"),
            r("5"),
            vec![(r("0"), p("1")), (r("2"), p("0")), (r("3"), p("1")), (r("4"), p("0"))],
        )
        .unwrap();
        RealSignal::new(1, p("1"), vec![], Some(tail)).unwrap()
    }

    #[test]
    fn train_agrees_and_is_periodic_at_five_and_ten() {
        let x = example_train();
        let cands = [r("1"), r("2"), r("5/2"), r("5"), r("10")];
        let rep = agree(&x, r("60"), 0, &cands).unwrap();
        assert!(rep.agrees(), "{:#?}", rep.disagreements);
        assert_eq!(rep.periods_found(&x), vec![r("5"), r("10")]);
        let w = WindowSignal::from_real(&x, r("-1"), r("40")).unwrap();
        assert!(brute_periodic_point(&w, p("1"), r("5")).unwrap());
        assert!(!brute_periodic_point(&w, p("1"), r("5/2")).unwrap());
    }

    #[test]
    fn constants_agree_everywhere() {
        let c = DiscreteSignal::constant(p("10"));
        let rep = agree(&c, r("40"), 6, &[]).unwrap();
        assert!(rep.agrees());
        assert_eq!(rep.periods_found(&c).len(), 6);
        let c = RealSignal::constant(p("1"));
        let rep = agree(&c, r("30"), 0, &[r("1/3"), r("2")]).unwrap();
        assert!(rep.agrees(), "{:#?}", rep.disagreements);
    }

    #[test]
    fn lasso_agreement() {
        let x = DiscreteSignal::new(1, bits("011"), bits("010011")).unwrap();
        let rep = agree(&x, r("60"), 12, &[]).unwrap();
        assert!(rep.agrees(), "{:#?}", rep.disagreements);
        assert!(matches!(agree(&x, r("10"), 12, &[]), Err(Error::Horizon { .. })));
    }

    #[test]
    fn windows_validate() {
        assert!(WindowSignal::real(1, r("0"), r("1"), p("0"), vec![(r("2"), p("1"))], true).is_err());
        assert!(WindowSignal::discrete(2, -1, bits("01")).is_err());
        let d = breakpoint_difference_candidates(&example_train(), r("-2"), r("8"), 5);
        assert_eq!(d, vec![r("1"), r("5/3"), r("2"), r("5/2"), r("3")]);
    }

    #[test]
    fn violations_just_after_a_shifted_limit_are_seen() {
        let x = RealSignal::new(
            2,
            p("10"),
            vec![(r("-2"), p("01"))],
            Some(Tail::new(r("-3/2"), r("3/2"), vec![(r("0"), p("00")), (r("1/2"), p("10"))]).unwrap()),
        )
        .unwrap();
        let w = WindowSignal::from_real(&x, r("-6"), r("20")).unwrap();
        assert!(brute_point_check(&w, p("00"), r("3/2"), r("-5/2")).unwrap());
        assert!(!brute_point_check(&w, p("00"), r("3/2"), r("-21/8")).unwrap());
    }
}
