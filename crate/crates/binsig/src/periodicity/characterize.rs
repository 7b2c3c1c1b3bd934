//! Direct evaluation of the constancy, eventual constancy, periodicity and
//! eventual periodicity characterizations on a concrete signal.
//!
//! Every statement is checked by bounded quantifier enumeration on the
//! representation: "for all p" ranges over an explicit candidate list, and
//! quantifiers over start and forgetting times range over finite candidate
//! sets that contain one representative of every region on which the truth
//! value is constant, up to the horizon. The shift conditions
//! `{t + zT | z in Z} ∩ [s, inf) ⊂ T_mu` are evaluated in their adjacent-pair
//! form `z = ±1`, which is equivalent by chaining.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use serde::Serialize;

use super::{Classification, SignalRef, Support};
use crate::dsignal::DiscreteSignal;
use crate::error::{Error, Result};
use crate::point::Point;
use crate::rat::Rat;
use crate::rsignal::RealSignal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Agree,
    Disagree,
    /// Expected false, no statement was refuted, and the candidate list
    /// contains no value at which a refutation is guaranteed.
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Agree => "agree",
            Verdict::Disagree => "disagree",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StatementRow {
    pub label: String,
    /// One value per candidate, or a single value for statements without a period.
    pub values: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupReport {
    pub name: &'static str,
    /// True when the group states "for every period" and is compared once;
    /// false when it is compared candidate by candidate.
    pub for_all_periods: bool,
    pub note: Option<&'static str>,
    /// A single entry for "for every period" groups, else one per candidate.
    pub expected: Vec<bool>,
    pub rows: Vec<StatementRow>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterizationReport {
    pub time: &'static str,
    pub candidates: Vec<Rat>,
    pub horizon: Rat,
    pub classification: Classification,
    pub groups: Vec<GroupReport>,
}

impl CharacterizationReport {
    pub fn all_agree(&self) -> bool {
        self.groups.iter().all(|g| g.verdict != Verdict::Disagree)
    }

    /// Names the finite candidate set standing in for "every period".
    pub fn header(&self) -> String {
        let list: Vec<String> = self.candidates.iter().map(|c| c.to_string()).collect();
        format!(
            "{} time; periods checked: {{{}}}; start and forgetting times bounded by {}",
            self.time,
            list.join(", "),
            self.horizon
        )
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum MuQ {
    AllOrbit,
    SomeOrbit,
    SomeOmega,
    AllOmega,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Body {
    /// `{t + zT} ∩ [s, inf) ⊂ T_mu` for `t` in the support.
    Support,
    /// `x(t) = mu` implies `x(t) = x(t + T)` and, when `t - T >= s`, `x(t) = x(t - T)`.
    Implication,
    /// `x(t) = x(t + T)` for all `t >= s`.
    Signal,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Start {
    // discrete time
    ExistsStart,
    ExistsForget,
    Whole,
    ForallStart,
    ForallForget,
    // real time
    ExistsInitialThenLater,
    ExistsReal,
    ExistsForgetInitial,
    ExistsForgetReal,
    ExistsInitial,
    ExistsInitialForallLater,
    ForallForgetExistsInitial,
}

#[derive(Clone, Copy)]
struct Form {
    mu: Option<MuQ>,
    body: Body,
    start: Start,
}

impl Form {
    fn label(&self) -> String {
        let mu = match self.mu {
            None => "signal",
            Some(MuQ::AllOrbit) => "every orbit point",
            Some(MuQ::SomeOrbit) => "some orbit point",
            Some(MuQ::SomeOmega) => "some omega point",
            Some(MuQ::AllOmega) => "every omega point",
        };
        let body = match self.body {
            Body::Support => "support shift",
            Body::Implication => "value implication",
            Body::Signal => "value shift",
        };
        let start = match self.start {
            Start::ExistsStart => "some start",
            Start::ExistsForget => "some forgetting",
            Start::Whole => "whole domain",
            Start::ForallStart => "every start",
            Start::ForallForget => "every forgetting",
            Start::ExistsInitialThenLater => "some later start after an initial time",
            Start::ExistsReal => "some start",
            Start::ExistsForgetInitial => "some forgetting, initial start",
            Start::ExistsForgetReal => "some forgetting, some start",
            Start::ExistsInitial => "initial start",
            Start::ExistsInitialForallLater => "initial start, every later start",
            Start::ForallForgetExistsInitial => "every forgetting, initial start",
        };
        format!("{mu} / {body} / {start}")
    }
}

/// A signal owned or borrowed, so forgotten copies can be analyzed alike.
#[derive(Clone)]
enum Sig {
    D(DiscreteSignal),
    R(RealSignal),
}

impl Sig {
    fn as_ref(&self) -> SignalRef<'_> {
        match self {
            Sig::D(s) => SignalRef::Discrete(s),
            Sig::R(s) => SignalRef::Real(s),
        }
    }

    fn value(&self, t: Rat) -> Point {
        self.as_ref().value(t)
    }

    fn support(&self, mu: Point) -> Support {
        match self {
            Sig::D(s) => Support::Discrete(s.support_set(mu).expect("width checked")),
            Sig::R(s) => Support::Real(s.support_set(mu).expect("width checked")),
        }
    }

    fn forget(&self, t: Rat) -> Sig {
        match self {
            Sig::D(s) => Sig::D(s.forget(t.to_i64().expect("integer forgetting time")).expect("nonnegative")),
            Sig::R(s) => Sig::R(s.forget(t)),
        }
    }

    /// `(settle, period)`: from `settle + period` on, values repeat with `period`.
    fn regime(&self) -> (Rat, Rat) {
        match self {
            Sig::D(s) => (Rat::int(s.anchor()), Rat::int(s.period() as i64)),
            Sig::R(s) => (
                s.settle_time().unwrap_or(Rat::zero()),
                s.tail().map_or(Rat::one(), |t| t.period()),
            ),
        }
    }

    fn first_change(&self) -> Option<Rat> {
        match self {
            Sig::D(_) => None,
            Sig::R(s) => s.first_change(),
        }
    }

    /// Candidate start times up to `horizon` for period `t`.
    fn starts(&self, t: Rat, horizon: Rat) -> Vec<Rat> {
        match self {
            Sig::D(_) => (-1..=horizon.floor() as i64).map(Rat::int).collect(),
            Sig::R(s) => {
                let Some(lo) = s.transient().first().map(|e| e.0).or(s.tail().map(|t| t.anchor())) else {
                    return vec![Rat::zero()];
                };
                let mut pts = vec![lo - t - Rat::one()];
                for b in s.breakpoints_in(lo - t, horizon + t + Rat::one()) {
                    pts.extend([b, b - t, b + t]);
                }
                pts.retain(|&p| p <= horizon);
                pts.sort();
                pts.dedup();
                let mut out = Vec::with_capacity(2 * pts.len());
                for w in pts.windows(2) {
                    out.push(w[0]);
                    out.push(w[0].midpoint(w[1]));
                }
                out.extend(pts.last());
                out
            }
        }
    }

    /// Forgetting times up to `horizon`, one per region of equal results.
    fn forget_times(&self, horizon: Rat) -> Vec<Rat> {
        match self {
            Sig::D(_) => (0..=horizon.floor() as i64).map(Rat::int).collect(),
            Sig::R(s) => {
                let Some(t0) = s.first_change() else {
                    return vec![Rat::zero()];
                };
                let mut out = vec![t0 - Rat::one()];
                out.extend(s.change_points_in(t0, horizon + Rat::one()).into_iter().filter(|&c| c <= horizon));
                // forgetting at t is the same for every t in (c, c'] between
                // consecutive changes; the horizon represents the last region
                if *out.last().unwrap() < horizon {
                    out.push(horizon);
                }
                out
            }
        }
    }
}

/// Truth of a shift condition at every candidate start.
struct Profile {
    starts: Vec<Rat>,
    holds: Vec<bool>,
    t0: Option<Rat>,
}

impl Profile {
    fn any(&self) -> bool {
        self.holds.iter().any(|&h| h)
    }

    fn all(&self) -> bool {
        self.holds.iter().all(|&h| h)
    }

    fn initial(&self, i: usize) -> bool {
        self.t0.is_none_or(|t0| self.starts[i] < t0)
    }

    fn exists_initial(&self) -> bool {
        (0..self.starts.len()).any(|i| self.initial(i) && self.holds[i])
    }

    fn exists_initial_then_later(&self) -> bool {
        (0..self.starts.len()).any(|i| self.initial(i) && self.holds[i..].iter().any(|&h| h))
    }

    fn exists_initial_forall_later(&self) -> bool {
        (0..self.starts.len()).any(|i| self.initial(i) && self.holds[i..].iter().all(|&h| h))
    }

    fn first(&self) -> bool {
        self.holds[0]
    }
}

enum What {
    Point { mu: Point, body: Body, nonempty: bool },
    Signal,
}

fn profile(y: &Sig, what: &What, t: Rat, horizon: Rat) -> Profile {
    let starts = y.starts(t, horizon);
    let (settle, period) = y.regime();
    let end = horizon.max(settle + t).max(*starts.last().unwrap()) + period + t;
    let lo = starts[0];
    let cells: Vec<Rat> = match y {
        Sig::D(_) => (lo.floor() as i64..end.ceil() as i64).map(Rat::int).collect(),
        Sig::R(s) => {
            let mut pts: Vec<Rat> = starts.iter().flat_map(|&s| [s, s + t]).collect();
            for b in s.breakpoints_in(lo - t, end + t) {
                pts.extend([b, b - t, b + t]);
            }
            pts.retain(|&p| p >= lo && p < end);
            pts.sort();
            pts.dedup();
            pts
        }
    };
    let support = match what {
        What::Point { mu, body: Body::Support, .. } => Some(y.support(*mu)),
        _ => None,
    };
    // plus[i]: the condition toward t + T holds at cells[i]; minus[i]: toward t - T.
    let n = cells.len();
    let mut plus = vec![true; n];
    let mut minus = vec![true; n];
    let mut hit = vec![false; n];
    for (i, &c) in cells.iter().enumerate() {
        match what {
            What::Signal => plus[i] = y.value(c) == y.value(c + t),
            What::Point { mu, .. } => {
                let member = |u: Rat| match &support {
                    Some(sup) => sup.contains(u),
                    None => y.value(u) == *mu,
                };
                if member(c) {
                    hit[i] = true;
                    plus[i] = member(c + t);
                    minus[i] = member(c - t);
                }
            }
        }
    }
    let mut plus_suffix = vec![true; n + 1];
    let mut minus_suffix = vec![true; n + 1];
    let mut hit_suffix = vec![false; n + 1];
    for i in (0..n).rev() {
        plus_suffix[i] = plus_suffix[i + 1] && plus[i];
        minus_suffix[i] = minus_suffix[i + 1] && minus[i];
        hit_suffix[i] = hit_suffix[i + 1] || hit[i];
    }
    let index = |u: Rat| cells.partition_point(|&c| c < u);
    let holds = starts
        .iter()
        .map(|&s| {
            let i = index(s);
            let ok = plus_suffix[i] && minus_suffix[index(s + t)];
            match what {
                What::Point { nonempty: true, .. } => ok && hit_suffix[i],
                _ => ok,
            }
        })
        .collect();
    Profile {
        starts,
        holds,
        t0: y.first_change(),
    }
}

/// Which copy (the signal or a forgotten one), which statement body, which period.
type ProfileKey = (Option<usize>, Option<(Point, Body, bool)>, Rat);

/// Forgotten copies and shift profiles shared by every statement of one report.
struct Memo<'x> {
    x: &'x Sig,
    horizon: Rat,
    forgotten: Vec<Sig>,
    profiles: RefCell<HashMap<ProfileKey, Rc<Profile>>>,
}

impl<'x> Memo<'x> {
    fn new(x: &'x Sig, horizon: Rat) -> Memo<'x> {
        Memo {
            x,
            horizon,
            forgotten: x.forget_times(horizon).into_iter().map(|u| x.forget(u)).collect(),
            profiles: RefCell::new(HashMap::new()),
        }
    }

    /// Profile of the signal, or of its `forgotten[i]` copy.
    fn profile(&self, copy: Option<usize>, what: &What, t: Rat) -> Rc<Profile> {
        let key = match *what {
            What::Point { mu, body, nonempty } => (copy, Some((mu, body, nonempty)), t),
            What::Signal => (copy, None, t),
        };
        if let Some(p) = self.profiles.borrow().get(&key) {
            return p.clone();
        }
        let y = copy.map_or(self.x, |i| &self.forgotten[i]);
        let p = Rc::new(profile(y, what, t, self.horizon));
        self.profiles.borrow_mut().insert(key, p.clone());
        p
    }
}

fn eval_start(m: &Memo<'_>, what: &What, start: Start, t: Rat) -> bool {
    let forgotten = |inner: &dyn Fn(&Profile) -> bool, all: bool| {
        let mut it = (0..m.forgotten.len()).map(|i| inner(&m.profile(Some(i), what, t)));
        if all {
            it.all(|b| b)
        } else {
            it.any(|b| b)
        }
    };
    let own = || m.profile(None, what, t);
    match start {
        Start::ExistsStart | Start::ExistsReal => own().any(),
        Start::Whole => own().first(),
        Start::ForallStart => own().all(),
        Start::ExistsForget => forgotten(&Profile::first, false),
        Start::ForallForget => forgotten(&Profile::first, true),
        Start::ExistsInitial => own().exists_initial(),
        Start::ExistsInitialThenLater => own().exists_initial_then_later(),
        Start::ExistsInitialForallLater => own().exists_initial_forall_later(),
        Start::ExistsForgetInitial => forgotten(&Profile::exists_initial, false),
        Start::ExistsForgetReal => forgotten(&Profile::any, false),
        Start::ForallForgetExistsInitial => forgotten(&Profile::exists_initial, true),
    }
}

fn eval_form(m: &Memo<'_>, form: Form, t: Rat) -> bool {
    let Some(q) = form.mu else {
        return eval_start(m, &What::Signal, form.start, t);
    };
    let sig = m.x.as_ref();
    let points = match q {
        MuQ::AllOrbit | MuQ::SomeOrbit => sig.orbit(),
        MuQ::SomeOmega | MuQ::AllOmega => sig.omega(),
    };
    let nonempty = q == MuQ::SomeOrbit;
    let mut results = points.into_iter().map(|mu| {
        let what = What::Point {
            mu,
            body: form.body,
            nonempty,
        };
        eval_start(m, &what, form.start, t)
    });
    match q {
        MuQ::AllOrbit | MuQ::AllOmega => results.all(|b| b),
        MuQ::SomeOrbit | MuQ::SomeOmega => results.any(|b| b),
    }
}

fn forms(mus: &[MuQ], bodies: &[Body], starts: &[Start], signal_starts: &[Start]) -> Vec<Form> {
    let mut out = Vec::new();
    for &mu in mus {
        for &start in starts {
            for &body in bodies {
                out.push(Form {
                    mu: Some(mu),
                    body,
                    start,
                });
            }
        }
    }
    for &start in signal_starts {
        out.push(Form {
            mu: None,
            body: Body::Signal,
            start,
        });
    }
    out
}

/// Values taken on `[s, inf)`, for `s` at or after the earliest start candidate.
fn values_from(x: &Sig, s: Rat, horizon: Rat) -> Vec<Point> {
    let (settle, period) = x.regime();
    let end = horizon.max(settle).max(s) + period + period;
    let mut v: Vec<Point> = match x {
        Sig::D(d) => (s.floor().max(-1) as i64..end.ceil() as i64).map(|k| d.at(k)).collect(),
        Sig::R(r) => {
            let mut v = vec![r.value_at(s)];
            v.extend(r.change_points_in(s, end).into_iter().map(|c| r.value_at(c)));
            v
        }
    };
    v.sort();
    v.dedup();
    v
}

fn verdict_for_all(expected: bool, rows: &[StatementRow], p_free: usize, decisive: bool) -> Verdict {
    if expected {
        return if rows.iter().all(|r| r.values.iter().all(|&b| b)) {
            Verdict::Agree
        } else {
            Verdict::Disagree
        };
    }
    let (free, dependent) = rows.split_at(p_free);
    if free.iter().any(|r| r.values[0]) {
        return Verdict::Disagree;
    }
    if dependent.iter().all(|r| r.values.iter().any(|&b| !b)) {
        Verdict::Agree
    } else if decisive {
        Verdict::Disagree
    } else {
        Verdict::Inconclusive
    }
}

fn verdict_per_candidate(expected: &[bool], rows: &[StatementRow]) -> Verdict {
    if rows.iter().all(|r| r.values == expected) {
        Verdict::Agree
    } else {
        Verdict::Disagree
    }
}

/// Evaluates every characterization group and compares it with the
/// classification of the signal.
///
/// Discrete signals are checked at `p = 1..=p_bound`; real signals at
/// `t_candidates`. Start and forgetting times range up to `horizon`, which
/// must reach the periodic regime of the signal by two periods plus the
/// largest candidate.
pub fn characterization_report<'a>(
    sig: impl Into<SignalRef<'a>>,
    p_bound: u64,
    t_candidates: &[Rat],
    horizon: Rat,
) -> Result<CharacterizationReport> {
    let sig = sig.into();
    let x = match sig {
        SignalRef::Discrete(s) => Sig::D(s.clone()),
        SignalRef::Real(s) => Sig::R(s.clone()),
    };
    let discrete = matches!(x, Sig::D(_));
    let candidates: Vec<Rat> = if discrete {
        if p_bound == 0 {
            return Err(Error::domain("p_bound must be positive"));
        }
        (1..=p_bound as i64).map(Rat::int).collect()
    } else {
        if t_candidates.is_empty() || t_candidates.iter().any(|t| !t.is_positive()) {
            return Err(Error::domain("period candidates must be positive and nonempty"));
        }
        let mut c = t_candidates.to_vec();
        c.sort();
        c.dedup();
        c
    };
    let (settle, period) = x.regime();
    let tmax = *candidates.last().unwrap();
    let needed = if discrete {
        settle + period + period + tmax
    } else {
        settle + period + period + tmax + tmax
    };
    if horizon < needed {
        return Err(Error::Horizon {
            needed: needed.to_string(),
            given: horizon.to_string(),
        });
    }

    let analysis = sig.analyze();
    let class = analysis.classification;
    let ev_constant = matches!(class, Classification::Constant | Classification::EventuallyConstant);
    let constant = class == Classification::Constant;
    let periodic = matches!(class, Classification::Constant | Classification::Periodic);
    let omega = sig.omega();
    let decisive = if discrete {
        true
    } else {
        candidates.iter().any(|&t| {
            omega
                .iter()
                .all(|mu| !analysis.per_point[mu].periods.contains(t))
        })
    };

    use Body::{Implication as Imp, Support as Sup};
    let point_bodies = [Sup, Imp];
    let (ev_starts, ev_signal, whole_starts) = if discrete {
        (
            vec![Start::ExistsStart, Start::ExistsForget],
            vec![Start::ExistsStart, Start::ExistsForget],
            vec![Start::Whole, Start::ForallStart, Start::ForallForget],
        )
    } else {
        let ev = vec![
            Start::ExistsInitialThenLater,
            Start::ExistsReal,
            Start::ExistsForgetInitial,
            Start::ExistsForgetReal,
        ];
        (
            ev.clone(),
            ev,
            vec![
                Start::ExistsInitial,
                Start::ExistsInitialForallLater,
                Start::ForallForgetExistsInitial,
            ],
        )
    };

    let memo = Memo::new(&x, horizon);
    let eval_rows = |fs: &[Form]| -> Vec<StatementRow> {
        fs.iter()
            .map(|&f| StatementRow {
                label: f.label(),
                values: candidates.iter().map(|&t| eval_form(&memo, f, t)).collect(),
            })
            .collect()
    };
    let lowest = x.starts(tmax, horizon)[0];
    let free_row = |label: &str, v: bool| StatementRow {
        label: label.to_string(),
        values: vec![v],
    };
    let support_from = |s: Rat| -> bool {
        omega.iter().any(|&mu| {
            let sup = x.support(mu);
            let (settle, period) = x.regime();
            let end = horizon.max(settle).max(s) + period + period;
            match &sup {
                Support::Discrete(set) => {
                    (s.floor().max(-1) as i64..end.ceil() as i64).all(|k| set.contains(k))
                }
                Support::Real(set) => {
                    let iv = set.intervals_in(s, end);
                    iv.len() == 1 && iv[0] == (s, end)
                }
            }
        })
    };
    let starts_all = x.starts(tmax, horizon);

    let mut groups = Vec::new();

    // eventual constancy
    let mut rows = vec![
        free_row(
            "some point / value from some start on",
            starts_all.iter().any(|&s| values_from(&x, s, horizon).len() == 1),
        ),
        free_row(
            "some point / support contains a final ray",
            starts_all.iter().any(|&s| support_from(s)),
        ),
        free_row("omega limit set is a singleton", omega.len() == 1),
    ];
    let p_free = rows.len();
    rows.extend(eval_rows(&forms(
        &[MuQ::AllOrbit, MuQ::SomeOrbit, MuQ::SomeOmega],
        &point_bodies,
        &ev_starts,
        &ev_signal,
    )));
    groups.push(GroupReport {
        name: "eventual constancy",
        for_all_periods: true,
        note: None,
        expected: vec![ev_constant],
        verdict: verdict_for_all(ev_constant, &rows, p_free, decisive),
        rows,
    });

    // constancy
    let mut rows = vec![
        free_row("orbit is a singleton", sig.orbit().len() == 1),
        free_row(
            "some point / value everywhere",
            values_from(&x, lowest.min(Rat::int(-1)), horizon).len() == 1,
        ),
        free_row(
            "some point / support is the whole domain",
            match &x {
                Sig::D(d) => d.orbit().len() == 1,
                Sig::R(r) => omega.iter().any(|&mu| r.support_set(mu).is_ok_and(|s| s.full)),
            },
        ),
    ];
    let p_free = rows.len();
    rows.extend(eval_rows(&forms(
        &[MuQ::AllOrbit, MuQ::SomeOrbit],
        &point_bodies,
        &whole_starts,
        &whole_starts,
    )));
    groups.push(GroupReport {
        name: "constancy",
        for_all_periods: true,
        note: None,
        expected: vec![constant],
        verdict: verdict_for_all(constant, &rows, p_free, decisive),
        rows,
    });

    // eventual periodicity, candidate by candidate
    let expected: Vec<bool> = candidates.iter().map(|&t| analysis.periods.contains(t)).collect();
    let rows = eval_rows(&forms(&[MuQ::AllOmega], &point_bodies, &ev_starts, &ev_signal));
    groups.push(GroupReport {
        name: "eventual periodicity",
        for_all_periods: false,
        note: (!discrete).then_some("empirical on representable class"),
        verdict: verdict_per_candidate(&expected, &rows),
        expected,
        rows,
    });

    // periodicity, candidate by candidate
    let expected: Vec<bool> = candidates
        .iter()
        .map(|&t| periodic && analysis.periods.contains(t))
        .collect();
    let rows = eval_rows(&forms(&[MuQ::AllOrbit], &point_bodies, &whole_starts, &whole_starts));
    groups.push(GroupReport {
        name: "periodicity",
        for_all_periods: false,
        note: None,
        verdict: verdict_per_candidate(&expected, &rows),
        expected,
        rows,
    });

    Ok(CharacterizationReport {
        time: if discrete { "discrete" } else { "real" },
        candidates,
        horizon,
        classification: class,
        groups,
    })
}
