//! Local edits of signals: changing values at instants, along arithmetic
//! progressions, on intervals and on interval trains, and moving the initial
//! time. Each edit keeps the signal representable.

use std::collections::BTreeMap;

use crate::dsignal::DiscreteSignal;
use crate::error::{Error, Result};
use crate::point::Point;
use crate::rat::Rat;
use crate::rsignal::RealSignal;
use crate::sets::Interval;

/// Tails longer than this many pattern segments are refused.
pub const MAX_TAIL_SEGMENTS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscreteEdit {
    Set { k: i64, value: Point },
    /// `k0, k0 + d, k0 + 2d, ...`
    Progression { k0: i64, d: u64, value: Point },
}

impl DiscreteEdit {
    fn value_at(&self, k: i64) -> Option<Point> {
        match *self {
            DiscreteEdit::Set { k: at, value } => (k == at).then_some(value),
            DiscreteEdit::Progression { k0, d, value } => {
                (k >= k0 && (k - k0) % d as i64 == 0).then_some(value)
            }
        }
    }
}

/// Applies all edits at once. Two edits that assign different values to the
/// same instant are a conflict.
pub fn d_edit(sig: &DiscreteSignal, edits: &[DiscreteEdit]) -> Result<DiscreteSignal> {
    let mut anchor = sig.anchor();
    let mut period = sig.period() as u64;
    for e in edits {
        match *e {
            DiscreteEdit::Set { k, value } | DiscreteEdit::Progression { k0: k, value, .. } => {
                if k < -1 {
                    return Err(Error::domain(format!("edit time {k} precedes -1")));
                }
                if value.width() != sig.width() {
                    return Err(Error::Width {
                        expected: sig.width(),
                        found: value.width(),
                    });
                }
            }
        }
        match *e {
            DiscreteEdit::Set { k, .. } => anchor = anchor.max(k + 1),
            DiscreteEdit::Progression { k0, d, .. } => {
                if d == 0 {
                    return Err(Error::domain("progression step must be positive"));
                }
                anchor = anchor.max(k0);
                period = num_integer::lcm(period, d);
            }
        }
    }
    let mut table = BTreeMap::new();
    for k in -1..anchor + period as i64 {
        let mut assigned: Option<Point> = None;
        for e in edits {
            if let Some(v) = e.value_at(k) {
                match assigned {
                    Some(w) if w != v => {
                        return Err(Error::EditConflict {
                            at: k,
                            first: w.to_string(),
                            second: v.to_string(),
                        })
                    }
                    _ => assigned = Some(v),
                }
            }
        }
        table.insert(k, assigned.unwrap_or_else(|| sig.at(k)));
    }
    DiscreteSignal::from_fn(sig.width(), anchor, period as usize, |k| table[&k])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RealEdit {
    /// `[lo, hi) := value`
    Interval { lo: Rat, hi: Rat, value: Point },
    /// The maximal constant interval containing `t` takes `value`.
    Flat { t: Rat, value: Point },
    /// Moves the first change time by `eps`: forward extends the initial
    /// value, backward extends the value at the first change.
    ShiftInitial { eps: Rat },
    /// `[lo + k*period, hi + k*period) := value` for every `k >= 0`.
    Train {
        lo: Rat,
        hi: Rat,
        period: Rat,
        value: Point,
    },
}

/// Rebuilds `sig` with `f` replacing its values, where `f` differs from the
/// signal only at the extra cut points, and is periodic with `tail` from its
/// anchor on.
fn rebuild(
    sig: &RealSignal,
    initial: Point,
    cuts: &[Rat],
    tail: Option<(Rat, Rat)>,
    f: impl Fn(Rat) -> Point,
) -> Result<RealSignal> {
    let lo = cuts
        .iter()
        .copied()
        .chain(sig.first_change())
        .min()
        .unwrap_or(Rat::zero());
    let hi = match tail {
        Some((a, p)) => {
            if (p / sig.tail().map_or(p, |t| t.period())).numer() as usize * sig.tail().map_or(1, |t| t.pattern().len())
                > MAX_TAIL_SEGMENTS
            {
                return Err(Error::Representation(format!(
                    "combined tail period {p} needs more than {MAX_TAIL_SEGMENTS} segments"
                )));
            }
            a + p
        }
        None => cuts
            .iter()
            .copied()
            .chain(sig.settle_time())
            .max()
            .unwrap_or(Rat::zero())
            + Rat::one(),
    };
    let mut cands = sig.breakpoints_in(lo, hi);
    cands.extend(cuts.iter().copied().filter(|&c| c < hi));
    if let Some((a, _)) = tail {
        cands.push(a);
    }
    RealSignal::from_fn(sig.width(), initial, cands, tail, f)
}

fn check_width(sig: &RealSignal, v: Point) -> Result<()> {
    if v.width() == sig.width() {
        Ok(())
    } else {
        Err(Error::Width {
            expected: sig.width(),
            found: v.width(),
        })
    }
}

fn set_interval(sig: &RealSignal, lo: Rat, hi: Rat, v: Point) -> Result<RealSignal> {
    if lo >= hi {
        return Err(Error::domain(format!("empty interval [{lo}, {hi})")));
    }
    let tail = sig.tail().map(|t| (t.anchor().max(hi), t.period()));
    rebuild(sig, sig.initial(), &[lo, hi], tail, |t| {
        if lo <= t && t < hi {
            v
        } else {
            sig.value_at(t)
        }
    })
}

fn set_flat(sig: &RealSignal, at: Rat, v: Point) -> Result<RealSignal> {
    let Interval { lo, hi } = sig.flat_interval(at);
    match (lo, hi) {
        (Some(lo), Some(hi)) => set_interval(sig, lo, hi, v),
        (None, None) => Ok(RealSignal::constant(v)),
        (None, Some(hi)) => {
            let tail = sig.tail().map(|t| (t.anchor().max(hi), t.period()));
            rebuild(sig, v, &[hi], tail, |t| if t < hi { v } else { sig.value_at(t) })
        }
        (Some(lo), None) => {
            // only eventually constant signals have an unbounded final interval
            rebuild(sig, sig.initial(), &[lo], None, |t| if t >= lo { v } else { sig.value_at(t) })
        }
    }
}

fn shift_initial(sig: &RealSignal, eps: Rat) -> Result<RealSignal> {
    let t0 = sig
        .first_change()
        .ok_or_else(|| Error::domain("a constant signal has no initial time to move"))?;
    if eps.is_zero() {
        return Err(Error::domain("shift must be nonzero"));
    }
    if eps.is_positive() {
        if let Some(t1) = sig.next_change_after(t0) {
            if eps >= t1 - t0 {
                return Err(Error::domain(format!(
                    "shift {eps} must be less than {}, the distance to the next change",
                    t1 - t0
                )));
            }
        }
        set_interval(sig, t0, t0 + eps, sig.initial())
    } else {
        set_interval(sig, t0 + eps, t0, sig.value_at(t0))
    }
}

fn set_train(sig: &RealSignal, lo: Rat, hi: Rat, period: Rat, v: Point) -> Result<RealSignal> {
    if lo >= hi || !period.is_positive() {
        return Err(Error::domain("train needs lo < hi and a positive period"));
    }
    let in_train = |t: Rat| t >= lo && (t - lo).rem_euclid(period) < hi - lo;
    let (anchor, p) = match sig.tail() {
        Some(tl) => (tl.anchor().max(lo), tl.period().lcm(period)),
        None => (sig.settle_time().unwrap_or(lo).max(lo), period),
    };
    let mut cuts = Vec::new();
    let mut k = 0;
    while lo + Rat::int(k) * period < anchor + p + p {
        cuts.push(lo + Rat::int(k) * period);
        cuts.push(hi + Rat::int(k) * period);
        k += 1;
        if cuts.len() > 2 * MAX_TAIL_SEGMENTS {
            return Err(Error::Representation(format!(
                "train of period {period} needs more than {MAX_TAIL_SEGMENTS} segments"
            )));
        }
    }
    rebuild(sig, sig.initial(), &cuts, Some((anchor, p)), |t| {
        if in_train(t) {
            v
        } else {
            sig.value_at(t)
        }
    })
}

/// Applies the edits in order; later edits see the result of earlier ones.
pub fn r_edit(sig: &RealSignal, edits: &[RealEdit]) -> Result<RealSignal> {
    let mut cur = sig.clone();
    for e in edits {
        cur = match *e {
            RealEdit::Interval { lo, hi, value } => {
                check_width(&cur, value)?;
                set_interval(&cur, lo, hi, value)?
            }
            RealEdit::Flat { t, value } => {
                check_width(&cur, value)?;
                set_flat(&cur, t, value)?
            }
            RealEdit::ShiftInitial { eps } => shift_initial(&cur, eps)?,
            RealEdit::Train {
                lo,
                hi,
                period,
                value,
            } => {
                check_width(&cur, value)?;
                set_train(&cur, lo, hi, period, value)?
            }
        };
    }
    Ok(cur)
}

/// One line of an edit script.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScriptEdit {
    Discrete(DiscreteEdit),
    Real(RealEdit),
}

fn parse_interval(tok: &str, loc: &str) -> Result<(Rat, Rat)> {
    let inner = tok
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::parse(loc, format!("expected [lo,hi), found {tok:?}")))?;
    let (a, b) = inner
        .split_once(',')
        .ok_or_else(|| Error::parse(loc, format!("expected [lo,hi), found {tok:?}")))?;
    let num = |s: &str| s.trim().parse::<Rat>().map_err(|e| Error::parse(loc, e.to_string()));
    Ok((num(a)?, num(b)?))
}

fn parse_fields<'a>(words: &[&'a str], loc: &str) -> Result<BTreeMap<&'a str, &'a str>> {
    words
        .iter()
        .map(|w| {
            w.split_once('=')
                .ok_or_else(|| Error::parse(loc, format!("expected key=value, found {w:?}")))
        })
        .collect()
}

fn field<T: std::str::FromStr>(fields: &BTreeMap<&str, &str>, key: &str, loc: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    let raw = fields
        .get(key)
        .ok_or_else(|| Error::parse(loc, format!("missing {key}=")))?;
    raw.parse()
        .map_err(|e: T::Err| Error::parse(loc, format!("bad {key}={raw}: {e}")))
}

/// Parses an edit script: one edit per line (or `;`-separated), `#` comments.
///
/// ```text
/// set k=3 v=01
/// set-progression k0=-1 d=4 v=11
/// set-interval [1/2,2) v=0
/// set-flat t=5/2 v=1
/// set-train [1,3) T=9 v=10
/// shift-t0 -1/3
/// ```
pub fn parse_script(text: &str) -> Result<Vec<ScriptEdit>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap();
        for (part_no, stmt) in line.split(';').enumerate() {
            let loc = format!("script line {}, statement {}", lineno + 1, part_no + 1);
            let words: Vec<&str> = stmt.split_whitespace().collect();
            let Some((&cmd, rest)) = words.split_first() else {
                continue;
            };
            let edit = match cmd {
                "set" => {
                    let f = parse_fields(rest, &loc)?;
                    ScriptEdit::Discrete(DiscreteEdit::Set {
                        k: field(&f, "k", &loc)?,
                        value: field(&f, "v", &loc)?,
                    })
                }
                "set-progression" => {
                    let f = parse_fields(rest, &loc)?;
                    ScriptEdit::Discrete(DiscreteEdit::Progression {
                        k0: field(&f, "k0", &loc)?,
                        d: field(&f, "d", &loc)?,
                        value: field(&f, "v", &loc)?,
                    })
                }
                "set-interval" | "set-train" => {
                    let Some((iv, rest)) = rest.split_first() else {
                        return Err(Error::parse(&loc, format!("{cmd} needs an interval [lo,hi)")));
                    };
                    let (lo, hi) = parse_interval(iv, &loc)?;
                    let f = parse_fields(rest, &loc)?;
                    let value = field(&f, "v", &loc)?;
                    if cmd == "set-interval" {
                        ScriptEdit::Real(RealEdit::Interval { lo, hi, value })
                    } else {
                        ScriptEdit::Real(RealEdit::Train {
                            lo,
                            hi,
                            period: field(&f, "T", &loc)?,
                            value,
                        })
                    }
                }
                "set-flat" => {
                    let f = parse_fields(rest, &loc)?;
                    ScriptEdit::Real(RealEdit::Flat {
                        t: field(&f, "t", &loc)?,
                        value: field(&f, "v", &loc)?,
                    })
                }
                "shift-t0" => {
                    let [eps] = rest else {
                        return Err(Error::parse(&loc, "shift-t0 takes one rational"));
                    };
                    let eps = eps
                        .trim_start_matches('+')
                        .parse()
                        .map_err(|e: Error| Error::parse(&loc, e.to_string()))?;
                    ScriptEdit::Real(RealEdit::ShiftInitial { eps })
                }
                other => return Err(Error::parse(&loc, format!("unknown edit {other:?}"))),
            };
            out.push(edit);
        }
    }
    Ok(out)
}

fn split_edits(edits: &[ScriptEdit]) -> (Vec<DiscreteEdit>, Vec<RealEdit>) {
    let mut d = Vec::new();
    let mut r = Vec::new();
    for e in edits {
        match *e {
            ScriptEdit::Discrete(x) => d.push(x),
            ScriptEdit::Real(x) => r.push(x),
        }
    }
    (d, r)
}

pub fn apply_script_d(sig: &DiscreteSignal, edits: &[ScriptEdit]) -> Result<DiscreteSignal> {
    let (d, r) = split_edits(edits);
    if !r.is_empty() {
        return Err(Error::domain("interval and initial-time edits need a real-time signal"));
    }
    d_edit(sig, &d)
}

pub fn apply_script_r(sig: &RealSignal, edits: &[ScriptEdit]) -> Result<RealSignal> {
    let (d, r) = split_edits(edits);
    if !d.is_empty() {
        return Err(Error::domain("instant and progression edits need a discrete-time signal"));
    }
    r_edit(sig, &r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::periodicity::{analyze_point_d, analyze_point_r};
    use crate::rsignal::Tail;
    use crate::sets::{LimitSet, PeriodSet};

    fn p(s: &str) -> Point {
        s.parse().unwrap()
    }

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    /// `mu` once per `len` steps starting at -1, `nu` elsewhere.
    fn once_per(len: usize, mu: Point, nu: Point) -> DiscreteSignal {
        let mut cycle = vec![nu; len];
        cycle[0] = mu;
        DiscreteSignal::new(mu.width(), vec![], cycle).unwrap()
    }

    #[test]
    fn removing_one_instant_moves_the_limit() {
        let x = once_per(3, p("1"), p("0"));
        for k_removed in [-1, 2, 5] {
            let y = d_edit(&x, &[DiscreteEdit::Set { k: k_removed, value: p("0") }]).unwrap();
            let a = analyze_point_d(&y, p("1")).unwrap();
            assert_eq!(a.periods, PeriodSet::MultiplesInt(3));
            assert_eq!(a.limits, LimitSet::from_int(k_removed + 1));
            assert!(!a.is_periodic_point);
        }
    }

    #[test]
    fn adding_instants_of_equality() {
        let x = once_per(3, p("1"), p("0"));
        let y = d_edit(
            &x,
            &[
                DiscreteEdit::Set { k: 0, value: p("1") },
                DiscreteEdit::Set { k: 4, value: p("1") },
            ],
        )
        .unwrap();
        let a = analyze_point_d(&y, p("1")).unwrap();
        assert_eq!(a.periods, PeriodSet::MultiplesInt(3));
        assert_eq!(a.limits, LimitSet::from_int(5));
    }

    #[test]
    fn progression_removal_splits_a_point() {
        // prime 3, k0 = 2: the new point takes every other occurrence
        let x = once_per(3, p("01"), p("00"));
        let y = d_edit(&x, &[DiscreteEdit::Progression { k0: 2, d: 6, value: p("11") }]).unwrap();
        for mu in ["01", "11"] {
            assert_eq!(analyze_point_d(&y, p(mu)).unwrap().periods, PeriodSet::MultiplesInt(6));
        }
        let support = y.support_set(p("11")).unwrap();
        assert_eq!(support.members_in(-1, 20), vec![2, 8, 14]);
        assert_eq!(y.support_set(p("01")).unwrap().members_in(-1, 20), vec![-1, 5, 11, 17]);
    }

    #[test]
    fn added_progression_keeps_prime_five() {
        let x = once_per(5, p("1"), p("0"));
        let y = d_edit(&x, &[DiscreteEdit::Progression { k0: 1, d: 5, value: p("1") }]).unwrap();
        let a = analyze_point_d(&y, p("1")).unwrap();
        assert_eq!(a.periods, PeriodSet::MultiplesInt(5));
        assert!(a.is_periodic_point);
        assert_eq!(y.support_set(p("1")).unwrap().members_in(-1, 9), vec![-1, 1, 4, 6]);
    }

    #[test]
    fn added_progression_with_prime_four_halves_it() {
        // the same construction with prime 4 puts mu at every odd instant
        let x = once_per(4, p("1"), p("0"));
        let y = d_edit(&x, &[DiscreteEdit::Progression { k0: 1, d: 4, value: p("1") }]).unwrap();
        let a = analyze_point_d(&y, p("1")).unwrap();
        assert_eq!(a.prime_period, Some(Rat::int(2)));
        assert!(a.is_periodic_point);
    }

    #[test]
    fn conflicting_edits() {
        let x = once_per(2, p("1"), p("0"));
        let err = d_edit(
            &x,
            &[
                DiscreteEdit::Progression { k0: 0, d: 2, value: p("1") },
                DiscreteEdit::Progression { k0: 2, d: 3, value: p("0") },
            ],
        )
        .unwrap_err();
        assert_eq!(
            err,
            Error::EditConflict {
                at: 2,
                first: "1".into(),
                second: "0".into()
            }
        );
        // agreeing overlaps are fine
        assert!(d_edit(
            &x,
            &[
                DiscreteEdit::Set { k: 4, value: p("0") },
                DiscreteEdit::Progression { k0: 0, d: 2, value: p("0") },
            ]
        )
        .is_ok());
    }

    /// `mu` on `(-inf, 0)` and on `[1, 3) + 3k`, `nu` on `[0, 1) + 3k`.
    fn standard(mu: Point, nu: Point) -> RealSignal {
        let tail = Tail::new(r("0"), r("3"), vec![(r("0"), nu), (r("1"), mu)]).unwrap();
        RealSignal::new(mu.width(), mu, vec![], Some(tail)).unwrap()
    }

    #[test]
    fn flat_interval_removal() {
        let x = standard(p("1"), p("0"));
        assert_eq!(x.flat_interval(r("1")), Interval::bounded(r("1"), r("3")));
        let y = r_edit(&x, &[RealEdit::Flat { t: r("7/2") + r("1"), value: p("0") }]).unwrap();
        let a = analyze_point_r(&y, p("1")).unwrap();
        assert_eq!(a.periods, PeriodSet::MultiplesRat(r("3")));
        assert_eq!(a.limits.least_rat(), Some(r("6")));
        assert!(!a.is_periodic_point);
    }

    #[test]
    fn moving_the_initial_time() {
        let x = standard(p("1"), p("0"));
        let later = r_edit(&x, &[RealEdit::ShiftInitial { eps: r("1/2") }]).unwrap();
        let a = analyze_point_r(&later, p("1")).unwrap();
        assert_eq!(a.periods, PeriodSet::MultiplesRat(r("3")));
        assert_eq!(a.limits.least_rat(), Some(r("1/2")));

        let earlier = r_edit(&x, &[RealEdit::ShiftInitial { eps: r("-5") }]).unwrap();
        let a = analyze_point_r(&earlier, p("1")).unwrap();
        assert_eq!(a.periods, PeriodSet::MultiplesRat(r("3")));
        assert_eq!(a.limits.least_rat(), Some(r("0")));

        assert!(r_edit(&x, &[RealEdit::ShiftInitial { eps: r("1") }]).is_err());
        assert!(r_edit(&RealSignal::constant(p("1")), &[RealEdit::ShiftInitial { eps: r("1") }]).is_err());
    }

    #[test]
    fn lowering_a_later_initial_time() {
        let x = standard(p("1"), p("0"));
        // [6 - 1/2, 6) joins the following interval of nu
        let y = r_edit(
            &x,
            &[RealEdit::Interval {
                lo: r("11/2"),
                hi: r("6"),
                value: p("0"),
            }],
        )
        .unwrap();
        assert_eq!(analyze_point_r(&y, p("1")).unwrap().limits.least_rat(), Some(r("6")));
    }

    #[test]
    fn three_way_split() {
        let (mu, nu, mu1, mu2) = (p("01"), p("00"), p("10"), p("11"));
        let x = standard(mu, nu);
        let y = r_edit(
            &x,
            &[
                RealEdit::Train {
                    lo: r("1"),
                    hi: r("3"),
                    period: r("9"),
                    value: mu1,
                },
                RealEdit::Train {
                    lo: r("4"),
                    hi: r("6"),
                    period: r("9"),
                    value: mu2,
                },
            ],
        )
        .unwrap();
        for m in [mu, mu1, mu2] {
            assert_eq!(analyze_point_r(&y, m).unwrap().periods, PeriodSet::MultiplesRat(r("9")));
        }
        assert_eq!(
            y.support_set(mu1).unwrap().intervals_in(r("0"), r("20")),
            vec![(r("1"), r("3")), (r("10"), r("12")), (r("19"), r("20"))]
        );
        assert_eq!(
            y.support_set(mu).unwrap().intervals_in(r("-1"), r("10")),
            vec![(r("-1"), r("0")), (r("7"), r("9"))]
        );
    }

    #[test]
    fn scripts() {
        let edits = parse_script("set k=3 v=01; set-progression k0=-1 d=4 v=11\n# comment\nshift-t0 +1/3\nset-train [1,3) T=9 v=10").unwrap();
        assert_eq!(edits.len(), 4);
        assert_eq!(edits[2], ScriptEdit::Real(RealEdit::ShiftInitial { eps: r("1/3") }));
        let err = parse_script("set k=x v=1").unwrap_err();
        assert!(err.to_string().contains("line 1"), "{err}");
        assert!(parse_script("nudge 3").is_err());
        assert!(parse_script("set-interval [1,2 v=1").is_err());
        let x = once_per(2, p("1"), p("0"));
        assert!(apply_script_d(&x, &parse_script("shift-t0 1").unwrap()).is_err());
    }
}
