//! Structural laws of period and limit sets, each checked over the seeded
//! corpus against brute-force window evaluation where one exists.

use std::collections::BTreeSet;

use binsig::bridge::{embed, sample};
use binsig::oracle::{brute_point_check, brute_signal_check, WindowSignal};
use binsig::periodicity::{
    accessibility_check, characterization_report, decompose, hypothesis_p_report, recompose,
    PointAnalysis, Support,
};
use binsig::{DiscreteSignal, LimitSet, PeriodSet, Point, Rat, RealSignal, Signal, SignalRef};

use super::{lassos, r, real_signals, t_candidates, LASSO_COUNT, REAL_COUNT};

pub type Check = Result<(), String>;

pub struct Corpus {
    pub lassos: Vec<DiscreteSignal>,
    pub reals: Vec<RealSignal>,
}

impl Corpus {
    pub fn new() -> Corpus {
        Corpus {
            lassos: lassos(LASSO_COUNT),
            reals: real_signals(REAL_COUNT),
        }
    }

    fn signals(&self) -> impl Iterator<Item = SignalRef<'_>> {
        self.lassos
            .iter()
            .map(SignalRef::from)
            .chain(self.reals.iter().map(SignalRef::from))
    }
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn text(sig: SignalRef<'_>) -> String {
    match sig {
        SignalRef::Discrete(d) => format!("{d:?}"),
        SignalRef::Real(x) => format!("{x:?}"),
    }
}

/// First instant of interest: -1 in discrete time, a margin before the first
/// change in real time.
fn origin(sig: SignalRef<'_>) -> Rat {
    match sig {
        SignalRef::Discrete(_) => Rat::int(-1),
        SignalRef::Real(x) => x.first_change().unwrap_or(Rat::zero()) - Rat::int(12),
    }
}

/// Start of the periodic regime: every limit set contains it.
fn settled(sig: SignalRef<'_>) -> Rat {
    match sig {
        SignalRef::Discrete(d) => Rat::int(d.anchor()),
        SignalRef::Real(x) => x.settle_time().unwrap_or(Rat::zero()),
    }
}

/// A window long enough for brute checks with periods up to `tmax` from any
/// limit up to the periodic regime plus 10.
fn window(sig: SignalRef<'_>, tmax: Rat) -> WindowSignal {
    let end = settled(sig) + Rat::int(10) + tmax * Rat::int(3) + Rat::one();
    match sig {
        SignalRef::Discrete(d) => WindowSignal::from_discrete(d, end.ceil() as i64),
        SignalRef::Real(x) => WindowSignal::from_real(x, origin(sig), end).unwrap(),
    }
}

/// The signal prime, or 1.
fn signal_scale(sig: SignalRef<'_>) -> Rat {
    reference_period(&sig.analyze().periods).unwrap()
}

fn least_limit(sig: SignalRef<'_>, limits: &LimitSet) -> Rat {
    match limits {
        LimitSet::AllTimes => origin(sig),
        l => l.least_rat().expect("nonempty limit set"),
    }
}

/// The smallest step between candidate limits used for "just below" probes.
fn eps(sig: SignalRef<'_>) -> Rat {
    match sig {
        SignalRef::Discrete(_) => Rat::one(),
        SignalRef::Real(_) => r("1/8"),
    }
}

/// A positive reference period: the prime, or 1 when every positive time is a period.
fn reference_period(periods: &PeriodSet) -> Option<Rat> {
    match periods {
        PeriodSet::Empty => None,
        PeriodSet::AllPositive => Some(Rat::one()),
        p => p.prime(),
    }
}

fn omega_points<'a>(sig: SignalRef<'a>) -> impl Iterator<Item = (Point, PointAnalysis)> + 'a {
    sig.omega()
        .into_iter()
        .map(move |mu| (mu, sig.analyze_point(mu).unwrap()))
}

/// Sums, differences and multiples of periods are periods.
pub fn period_closure(c: &Corpus) -> Check {
    for sig in c.signals() {
        let w = window(sig, signal_scale(sig) * Rat::int(8));
        for (mu, a) in omega_points(sig) {
            let q = reference_period(&a.periods).unwrap();
            let l = least_limit(sig, &a.limits);
            let (p, p2) = (q * Rat::int(2), q * Rat::int(3));
            for t in [p + p2, p2 - p, p * Rat::int(4), q * Rat::int(7)] {
                ensure(brute_point_check(&w, mu, t, l).unwrap() && a.periods.contains(t), || {
                    format!("{} point {mu}: period {t} from {l} missing", text(sig))
                })?;
            }
        }
        let a = sig.analyze();
        let q = reference_period(&a.periods).unwrap();
        let l = least_limit(sig, &a.limits);
        for t in [q * Rat::int(5), q * Rat::int(2) - q] {
            ensure(brute_signal_check(&w, t, l).unwrap(), || {
                format!("{}: signal period {t} from {l} missing", text(sig))
            })?;
        }
    }
    Ok(())
}

fn candidates(sig: SignalRef<'_>) -> Vec<Rat> {
    match sig {
        SignalRef::Discrete(_) => (1..=12).map(Rat::int).collect(),
        SignalRef::Real(x) => t_candidates(x),
    }
}

/// Every period found by brute force is a multiple of the computed prime.
pub fn prime_structure(c: &Corpus) -> Check {
    for sig in c.signals() {
        let w = window(sig, candidates(sig).into_iter().max().unwrap_or(Rat::one()));
        let late = settled(sig);
        let a = sig.analyze();
        for t in candidates(sig) {
            for (mu, pa) in omega_points(sig) {
                let brute = brute_point_check(&w, mu, t, late).unwrap();
                let law = match pa.periods {
                    PeriodSet::AllPositive => true,
                    p => t.is_multiple_of(p.prime().unwrap()),
                };
                ensure(brute == law, || {
                    format!("{} point {mu}: period {t}: brute {brute}, prime law {law}", text(sig))
                })?;
            }
            let brute = brute_signal_check(&w, t, late).unwrap();
            let law = match a.periods {
                PeriodSet::AllPositive => true,
                p => t.is_multiple_of(p.prime().unwrap()),
            };
            ensure(brute == law, || {
                format!("{}: signal period {t}: brute {brute}, prime law {law}", text(sig))
            })?;
        }
    }
    Ok(())
}

/// The least limit is the same for the prime and its double, for points and signals.
pub fn limit_independence(c: &Corpus) -> Check {
    for sig in c.signals() {
        let w = window(sig, signal_scale(sig) * Rat::int(2));
        let lo = origin(sig);
        let e = eps(sig);
        let check = |what: &str, f: &dyn Fn(Rat, Rat) -> bool, q: Rat, l: Rat| -> Check {
            for t in [q, q * Rat::int(2)] {
                ensure(f(t, l), || format!("{} {what}: period {t} fails at limit {l}", text(sig)))?;
                if l - e >= lo {
                    ensure(!f(t, l - e), || {
                        format!("{} {what}: period {t} already holds below limit {l}", text(sig))
                    })?;
                }
            }
            Ok(())
        };
        for (mu, a) in omega_points(sig) {
            if a.limits == LimitSet::AllTimes {
                continue;
            }
            let q = reference_period(&a.periods).unwrap();
            let l = least_limit(sig, &a.limits);
            check(&format!("point {mu}"), &|t, l| brute_point_check(&w, mu, t, l).unwrap(), q, l)?;
        }
        let a = sig.analyze();
        if a.limits != LimitSet::AllTimes {
            let q = reference_period(&a.periods).unwrap();
            let l = least_limit(sig, &a.limits);
            check("signal", &|t, l| brute_signal_check(&w, t, l).unwrap(), q, l)?;
        }
    }
    Ok(())
}

/// Every time after a limit of periodicity is again a limit.
pub fn limit_monotonicity(c: &Corpus) -> Check {
    for sig in c.signals() {
        let w = window(sig, signal_scale(sig));
        let steps: Vec<Rat> = match sig {
            SignalRef::Discrete(_) => (1..=5).map(Rat::int).collect(),
            SignalRef::Real(_) => vec![r("1/3"), r("1"), r("7/4"), r("5")],
        };
        for (mu, a) in omega_points(sig) {
            let q = reference_period(&a.periods).unwrap();
            let l = least_limit(sig, &a.limits);
            for s in &steps {
                ensure(brute_point_check(&w, mu, q, l + *s).unwrap() && a.limits.contains(l + *s), || {
                    format!("{} point {mu}: limit {} lost", text(sig), l + *s)
                })?;
            }
        }
    }
    Ok(())
}

fn forget_times(sig: SignalRef<'_>) -> Vec<Rat> {
    match sig {
        SignalRef::Discrete(d) => (0..=d.anchor().max(0) + 3).map(Rat::int).collect(),
        SignalRef::Real(x) => {
            let first = x.first_change().unwrap_or(Rat::zero());
            let settle = x.settle_time().unwrap_or(first);
            vec![first - Rat::one(), first, first + r("1/3"), settle, settle + r("7/4")]
        }
    }
}

fn forget(sig: SignalRef<'_>, t: Rat) -> Signal {
    match sig {
        SignalRef::Discrete(d) => Signal::Discrete(d.forget(t.to_i64().unwrap()).unwrap()),
        SignalRef::Real(x) => Signal::Real(x.forget(t)),
    }
}

/// Forgetting the past keeps the period sets of omega points and of the signal.
pub fn forgetting_invariance(c: &Corpus) -> Check {
    for sig in c.signals() {
        let a = sig.analyze();
        for t in forget_times(sig) {
            let f = forget(sig, t);
            let g = f.as_ref();
            let b = g.analyze();
            ensure(a.periods == b.periods, || {
                format!("{}: signal periods change after forgetting at {t}", text(sig))
            })?;
            for mu in sig.omega() {
                let before = a.per_point[&mu].periods;
                let after = g.analyze_point(mu).unwrap().periods;
                ensure(before == after, || {
                    format!("{} point {mu}: periods {before} become {after} after forgetting at {t}", text(sig))
                })?;
            }
        }
    }
    Ok(())
}

/// Values taken on `[s, s + len)`, read at `s` and at every change inside.
fn values_on(sig: SignalRef<'_>, s: Rat, len: Rat) -> BTreeSet<Point> {
    match sig {
        SignalRef::Discrete(d) => {
            let k = s.to_i64().unwrap();
            d.values(k, k + len.to_i64().unwrap()).into_iter().collect()
        }
        SignalRef::Real(x) => std::iter::once(s)
            .chain(x.change_points_in(s, s + len))
            .map(|t| x.value_at(t))
            .collect(),
    }
}

/// Every prime-length window past the limit meets the support, and every
/// signal-prime window past the signal limit carries exactly the omega set.
pub fn accessibility(c: &Corpus) -> Check {
    for sig in c.signals() {
        let starts: Vec<Rat> = match sig {
            SignalRef::Discrete(_) => vec![Rat::zero(), Rat::one(), Rat::int(7)],
            SignalRef::Real(_) => vec![Rat::zero(), r("1/2"), r("7/3"), Rat::int(7)],
        };
        for (mu, a) in omega_points(sig) {
            let q = reference_period(&a.periods).unwrap();
            let l = least_limit(sig, &a.limits).max(origin(sig));
            for s in &starts {
                let s = l + *s;
                ensure(accessibility_check(sig, mu, s).unwrap(), || {
                    format!("{} point {mu}: accessibility fails from {s}", text(sig))
                })?;
                ensure(values_on(sig, s, q).contains(&mu), || {
                    format!("{} point {mu}: window [{s}, {}) misses it", text(sig), s + q)
                })?;
            }
        }
        let a = sig.analyze();
        let q = reference_period(&a.periods).unwrap();
        let l = least_limit(sig, &a.limits).max(origin(sig));
        let omega: BTreeSet<Point> = sig.omega().into_iter().collect();
        for s in &starts {
            ensure(values_on(sig, l + *s, q) == omega, || {
                format!("{}: window from {} does not carry omega", text(sig), l + *s)
            })?;
        }
    }
    Ok(())
}

fn sample_times(sig: SignalRef<'_>, from: Rat) -> Vec<Rat> {
    match sig {
        SignalRef::Discrete(_) => (0..60).map(|i| from + Rat::int(i)).collect(),
        SignalRef::Real(_) => (0..240).map(|i| from + Rat::new(i, 6)).collect(),
    }
}

fn support_of(sig: SignalRef<'_>, mu: Point) -> Support {
    match sig {
        SignalRef::Discrete(d) => Support::Discrete(d.support_set(mu).unwrap()),
        SignalRef::Real(x) => Support::Real(x.support_set(mu).unwrap()),
    }
}

/// Decomposing at a limit and recomposing gives back the support from that limit on.
pub fn decompose_round_trip(c: &Corpus) -> Check {
    for sig in c.signals() {
        for (mu, a) in omega_points(sig) {
            let support = support_of(sig, mu);
            let q = reference_period(&a.periods).unwrap();
            let l = least_limit(sig, &a.limits).max(origin(sig));
            let choices = match a.periods {
                PeriodSet::AllPositive => vec![(None, None)],
                _ => vec![(None, None), (Some(l + Rat::one()), Some(q * Rat::int(2)))],
            };
            for (at, period) in choices {
                let d = decompose(&a, at, period).unwrap();
                let back = recompose(&d).unwrap();
                let from = at.unwrap_or(l);
                for t in sample_times(sig, from) {
                    ensure(back.contains(t) == support.contains(t), || {
                        format!("{} point {mu}: round trip differs at {t} ({d:?})", text(sig))
                    })?;
                }
            }
        }
    }
    Ok(())
}

/// A run of the support as long as the period swallows the whole tail.
/// Returns the number of points the law applied to.
pub fn saturation(c: &Corpus) -> Result<usize, String> {
    let mut applied = 0;
    for sig in c.signals() {
        for (mu, a) in omega_points(sig) {
            let Some(q) = a.periods.prime() else { continue };
            let l = least_limit(sig, &a.limits).max(origin(sig));
            let support = support_of(sig, mu);
            let run = match sig {
                SignalRef::Discrete(_) => (0..q.to_i64().unwrap()).any(|s| {
                    (0..q.to_i64().unwrap()).all(|i| support.contains(l + Rat::int(s + i)))
                }),
                SignalRef::Real(x) => x
                    .support_set(mu)
                    .unwrap()
                    .intervals_in(l, l + q * Rat::int(3))
                    .iter()
                    .any(|&(lo, hi)| hi - lo >= q),
            };
            if run {
                applied += 1;
                for t in sample_times(sig, l) {
                    ensure(support.contains(t), || {
                        format!("{} point {mu}: run of length {q} but {t} outside support", text(sig))
                    })?;
                }
            }
        }
    }
    Ok(applied)
}

/// Embedding with step `h` multiplies every period set, and the primes, by `h`.
pub fn bridge_period_law(c: &Corpus) -> Check {
    for x in &c.lassos {
        let a = SignalRef::from(x).analyze();
        for (t0, h) in [(r("0"), r("1")), (r("-3/2"), r("1/2")), (r("2"), r("3"))] {
            let y = embed(x, t0, h).unwrap();
            let b = SignalRef::from(&y).analyze();
            let scale = |p: PeriodSet| match p {
                PeriodSet::MultiplesInt(n) => PeriodSet::MultiplesRat(Rat::int(n as i64) * h),
                other => other,
            };
            let expected = if x.is_eventually_constant() {
                PeriodSet::AllPositive
            } else {
                scale(a.periods)
            };
            ensure(b.periods == expected, || {
                format!("{x:?} on ({t0}, {h}): periods {} expected {expected}", b.periods)
            })?;
            for mu in x.omega() {
                let pd = a.per_point[&mu].periods;
                let pr = b.per_point[&mu].periods;
                let expected = if x.is_eventually_constant() { PeriodSet::AllPositive } else { scale(pd) };
                ensure(pr == expected, || format!("{x:?} point {mu} on ({t0}, {h}): {pr} vs {expected}"))?;
            }
            ensure(&sample(&y, t0, h, true).unwrap() == x, || {
                format!("{x:?}: sampling the embedding on ({t0}, {h}) does not round trip")
            })?;
        }
    }
    Ok(())
}

/// Every statement group of the constancy and periodicity characterizations
/// agrees with the classification at the bounded candidates.
pub fn characterization_groups(c: &Corpus) -> Check {
    for sig in c.signals() {
        let cands: Vec<Rat> = match sig {
            SignalRef::Discrete(_) => Vec::new(),
            SignalRef::Real(x) => t_candidates(x).into_iter().take(5).collect(),
        };
        let tmax = cands.iter().copied().max().unwrap_or(Rat::int(6));
        let span = match sig {
            SignalRef::Discrete(d) => Rat::int(d.period() as i64),
            SignalRef::Real(x) => x.tail().map_or(Rat::one(), |t| t.period()),
        };
        let horizon = settled(sig).max(Rat::zero()) + span * Rat::int(2) + tmax * Rat::int(2) + Rat::one();
        let rep = characterization_report(sig, 6, &cands, horizon).map_err(|e| format!("{}: {e}", text(sig)))?;
        ensure(rep.all_agree(), || {
            let bad: Vec<&str> = rep
                .groups
                .iter()
                .filter(|g| g.verdict == binsig::periodicity::Verdict::Disagree)
                .map(|g| g.name)
                .collect();
            format!("{}: groups {bad:?} disagree", text(sig))
        })?;
    }
    Ok(())
}

/// Period 1 at a limit forces the signal to equal the point from there on;
/// from -1 it forces constancy. On grid embeddings, any period that is not a
/// multiple of the step forces eventual constancy.
pub fn period_one_collapse(c: &Corpus) -> Check {
    for x in &c.lassos {
        let sig = SignalRef::from(x);
        let w = window(sig, Rat::one());
        for mu in x.omega() {
            for l in -1..=x.anchor() + 1 {
                if brute_point_check(&w, mu, Rat::one(), Rat::int(l)).unwrap() {
                    ensure(x.values(l, l + 40).iter().all(|&v| v == mu), || {
                        format!("{x:?}: period 1 for {mu} from {l} but other values follow")
                    })?;
                    if l == -1 {
                        ensure(x.is_constant(), || format!("{x:?}: periodic with p = 1 yet not constant"))?;
                    }
                }
            }
        }
        let h = r("2");
        let y = embed(x, Rat::zero(), h).unwrap();
        let ysig = SignalRef::from(&y);
        let yw = window(ysig, Rat::int(3));
        for t in [r("1"), r("2/3"), r("3")] {
            for mu in y.omega() {
                if brute_point_check(&yw, mu, t, settled(ysig)).unwrap() {
                    ensure(y.is_eventually_constant(), || {
                        format!("{x:?}: embedded point {mu} has period {t} off the grid step")
                    })?;
                }
            }
        }
    }
    Ok(())
}

/// The signal period set is the intersection of the omega point period sets,
/// and the signal prime is the lcm of the point primes.
pub fn intersection_and_lcm(c: &Corpus) -> Check {
    for sig in c.signals() {
        let a = sig.analyze();
        let meet = sig
            .omega()
            .iter()
            .fold(PeriodSet::AllPositive, |acc, mu| acc.intersect(&a.per_point[mu].periods));
        ensure(meet == a.periods, || format!("{}: intersection {meet} vs {}", text(sig), a.periods))?;
        let h = hypothesis_p_report(sig);
        ensure(h.lcm_relation_holds, || format!("{}: lcm relation fails: {h:?}", text(sig)))?;
    }
    Ok(())
}

/// Per-point periods and limits combine into one common period and limit for
/// the whole signal (discrete time).
pub fn quantifier_swap(c: &Corpus) -> Check {
    for x in &c.lassos {
        let sig = SignalRef::from(x);
        let w = window(sig, signal_scale(sig));
        let mut p = Rat::one();
        let mut l = Rat::int(-1);
        for (_, a) in omega_points(sig) {
            p = p.lcm(a.periods.prime().unwrap());
            l = l.max(least_limit(sig, &a.limits));
        }
        ensure(brute_signal_check(&w, p, l).unwrap(), || {
            format!("{x:?}: common period {p} from {l} is not a signal period")
        })?;
    }
    Ok(())
}

/// In discrete time every prime-length window past the limit holds the same
/// number of support instants.
pub fn window_shift_counts(c: &Corpus) -> Check {
    for x in &c.lassos {
        let sig = SignalRef::from(x);
        for (mu, a) in omega_points(sig) {
            let q = a.periods.prime().unwrap().to_i64().unwrap();
            let l = a.limits.least_int().unwrap();
            let count = |k: i64| x.values(k, k + q).iter().filter(|&&v| v == mu).count();
            let first = count(l);
            for k in l..l + 3 * q {
                ensure(count(k) == first, || {
                    format!("{x:?} point {mu}: {} instants from {k}, {first} from {l}", count(k))
                })?;
            }
        }
    }
    Ok(())
}

/// In real time the number of support intervals in a period window depends on
/// where the window starts: 1 from -1/2 and 2 from 1/2 for the square wave.
pub fn real_window_counts() -> Check {
    let square: RealSignal = binsig::text::parse_rsignal(
        "rsignal n=1\ninitial: 0\ntail: anchor=0 period=2 pattern: 0:1 1:0",
    )
    .unwrap();
    let support = square.support_set(super::p("1")).unwrap();
    let t = r("2");
    let count = |s: Rat| support.intervals_in(s, s + t).len();
    for (s, expected) in [("-1/2", 1), ("1/2", 2), ("-1", 1), ("0", 1), ("5/2", 2), ("3", 1)] {
        ensure(count(r(s)) == expected, || format!("from {s}: {} intervals, expected {expected}", count(r(s))))?;
    }
    Ok(())
}
