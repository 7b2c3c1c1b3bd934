//! Window tests: supports meet every period-long window past the limit, and
//! such windows see the whole omega limit set.

use std::collections::BTreeSet;

use super::{SignalRef, Support};
use crate::error::{Error, Result};
use crate::point::Point;
use crate::rat::Rat;
use crate::sets::PeriodSet;

/// Start points in `[lo, lo + len)` covering every cell on which a property of
/// the window `[s, s + len)` can be constant: the given cut points, their
/// shifts by `-len`, and the midpoints between consecutive ones.
fn window_starts(lo: Rat, len: Rat, cuts: &[Rat]) -> Vec<Rat> {
    let hi = lo + len;
    let mut pts: Vec<Rat> = vec![lo, hi];
    for &c in cuts {
        for s in [c, c - len] {
            if s > lo && s < hi {
                pts.push(s);
            }
        }
    }
    pts.sort();
    pts.dedup();
    let mut out = Vec::new();
    for w in pts.windows(2) {
        out.push(w[0]);
        out.push(w[0].midpoint(w[1]));
    }
    out
}

fn values_in(sig: SignalRef<'_>, lo: Rat, hi: Rat) -> BTreeSet<Point> {
    match sig {
        SignalRef::Discrete(s) => (lo.ceil() as i64..hi.ceil() as i64).map(|k| s.at(k)).collect(),
        SignalRef::Real(s) => {
            let mut v: BTreeSet<Point> = s.change_points_in(lo, hi).into_iter().map(|c| s.value_at(c)).collect();
            v.insert(s.value_at(lo));
            v
        }
    }
}

fn meets(sig: SignalRef<'_>, support: &Support, lo: Rat, hi: Rat) -> bool {
    match (sig, support) {
        (SignalRef::Discrete(_), Support::Discrete(set)) => {
            !set.members_in(lo.ceil() as i64, hi.ceil() as i64).is_empty()
        }
        (SignalRef::Real(_), Support::Real(set)) => !set.intervals_in(lo, hi).is_empty(),
        _ => unreachable!("support computed from the same signal"),
    }
}

fn breakpoints(sig: SignalRef<'_>, lo: Rat, hi: Rat) -> Vec<Rat> {
    match sig {
        SignalRef::Discrete(_) => Vec::new(),
        SignalRef::Real(s) => s.breakpoints_in(lo, hi),
    }
}

/// Whether the support of `mu` meets `[start, start + len)` (one window, no
/// further conditions).
pub fn window_meets_support<'a>(
    sig: impl Into<SignalRef<'a>>,
    mu: Point,
    start: Rat,
    len: Rat,
) -> Result<bool> {
    let sig = sig.into();
    if !len.is_positive() {
        return Err(Error::domain("window length must be positive"));
    }
    let support = match sig {
        SignalRef::Discrete(s) => Support::Discrete(s.support_set(mu)?),
        SignalRef::Real(s) => Support::Real(s.support_set(mu)?),
    };
    Ok(meets(sig, &support, start, start + len))
}

/// Checks, from `start` on, that every window `[s, s + T)` with `T` the prime
/// period of `mu` meets the support of `mu`, and that every window of the
/// signal's prime period lying past the signal's limit carries exactly the
/// omega limit set.
///
/// Points and signals whose period set is every positive time use `T = 1`.
pub fn accessibility_check<'a>(sig: impl Into<SignalRef<'a>>, mu: Point, start: Rat) -> Result<bool> {
    let sig = sig.into();
    let a = sig.analyze_point(mu)?;
    let prime = match a.periods {
        PeriodSet::Empty => {
            return Err(Error::NotEventuallyPeriodic(format!("point {mu} has no period")))
        }
        PeriodSet::AllPositive => Rat::one(),
        p => p.prime().unwrap(),
    };
    if !a.limits.contains(start) {
        return Err(Error::Window(format!(
            "window start {start} precedes the limit of periodicity of {mu}"
        )));
    }
    if let SignalRef::Discrete(_) = sig {
        if !start.is_integer() {
            return Err(Error::domain("discrete window start must be an integer"));
        }
    }
    let cut_hi = start + prime + prime;
    let cuts = breakpoints(sig, start, cut_hi);
    let support_ok = match sig {
        SignalRef::Discrete(_) => {
            let s0 = start.to_i64().unwrap();
            let p = prime.to_i64().unwrap();
            (s0..s0 + p).all(|s| meets(sig, &a.support, Rat::int(s), Rat::int(s + p)))
        }
        SignalRef::Real(_) => window_starts(start, prime, &cuts)
            .into_iter()
            .all(|s| meets(sig, &a.support, s, s + prime)),
    };

    let whole = sig.analyze();
    let period = whole.periods.prime().unwrap_or(Rat::one());
    let from = whole.limits.least_rat().map_or(start, |l| l.max(start));
    let omega: BTreeSet<Point> = sig.omega().into_iter().collect();
    let omega_ok = match sig {
        SignalRef::Discrete(_) => {
            let s0 = from.to_i64().unwrap();
            let p = period.to_i64().unwrap();
            (s0..s0 + p).all(|s| values_in(sig, Rat::int(s), Rat::int(s + p)) == omega)
        }
        SignalRef::Real(_) => {
            let cuts = breakpoints(sig, from, from + period + period);
            window_starts(from, period, &cuts)
                .into_iter()
                .all(|s| values_in(sig, s, s + period) == omega)
        }
    };
    Ok(support_ok && omega_ok)
}
