//! Text and JSON renderings of analyses, characterization reports and
//! oracle agreement. Points are listed in increasing bit-string order, so
//! reports are byte-for-byte reproducible.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::oracle::AgreementReport;
use crate::periodicity::{
    CharacterizationReport, Decomposition, PointAnalysis, SignalAnalysis, SignalRef, Support,
};
use crate::point::Point;
use crate::rat::Rat;
use crate::sets::{EvPeriodicIntSet, EvPeriodicIntervalSet, IntervalTail, LimitSet};
use crate::text::Signal;

fn join<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn opt<T: std::fmt::Display>(x: Option<T>) -> String {
    x.map_or_else(|| "none".to_string(), |v| v.to_string())
}

fn time_name(sig: SignalRef<'_>) -> &'static str {
    match sig {
        SignalRef::Discrete(_) => "discrete",
        SignalRef::Real(_) => "real",
    }
}

fn prime_limit(sig: SignalRef<'_>, limits: &LimitSet) -> String {
    match (sig, limits) {
        (SignalRef::Discrete(_), l) => opt(l.least_int()),
        (SignalRef::Real(_), LimitSet::AllTimes) => "-inf".to_string(),
        (SignalRef::Real(_), l) => opt(l.least_rat()),
    }
}

fn int_support_text(s: &EvPeriodicIntSet) -> String {
    if s.is_empty() {
        return "empty".to_string();
    }
    let mut parts: Vec<String> = s.exceptional.iter().map(|k| k.to_string()).collect();
    if !s.residues.is_empty() {
        let offsets = s.residues.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",");
        parts.push(format!("{}+{{{}}}+{}N", s.anchor, offsets, s.period));
    }
    parts.join(" u ")
}

fn span(a: Rat, b: Rat) -> String {
    format!("[{a}, {b})")
}

fn interval_support_text(s: &EvPeriodicIntervalSet) -> String {
    if s.full {
        return "all".to_string();
    }
    if s.is_empty() {
        return "empty".to_string();
    }
    let mut parts = Vec::new();
    if let Some(b) = s.initial_ray {
        parts.push(format!("(-inf, {b})"));
    }
    parts.extend(s.transient.iter().map(|&(a, b)| span(a, b)));
    match &s.tail {
        Some(IntervalTail::Ray { start }) => parts.push(format!("[{start}, inf)")),
        Some(IntervalTail::Train { period, pattern, .. }) => {
            let spans = pattern.iter().map(|&(a, b)| span(a, b)).collect::<Vec<_>>().join(" ");
            parts.push(format!("({spans})+{period}N"));
        }
        None => {}
    }
    parts.join(" u ")
}

pub fn support_text(s: &Support) -> String {
    match s {
        Support::Discrete(d) => int_support_text(d),
        Support::Real(r) => interval_support_text(r),
    }
}

pub fn decomposition_text(d: &Decomposition) -> String {
    match d {
        Decomposition::Discrete {
            limit,
            period,
            members,
        } => format!("from {limit} period {period}: ({})", members.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(",")),
        Decomposition::Real {
            limit,
            period,
            intervals,
        } => format!(
            "from {limit} period {period}: {}",
            join(intervals.iter().map(|&(a, b)| span(a, b)))
        ),
        Decomposition::FinalRay { start: Some(s) } => format!("final ray [{s}, inf)"),
        Decomposition::FinalRay { start: None } => "final ray (-inf, inf)".to_string(),
    }
}

fn point_block(out: &mut String, sig: SignalRef<'_>, a: &PointAnalysis) {
    writeln!(out, "point {}:", a.point).unwrap();
    writeln!(out, "  support: {}", support_text(&a.support)).unwrap();
    writeln!(out, "  periods: {}", a.periods).unwrap();
    writeln!(out, "  prime_period: {}", opt(a.prime_period)).unwrap();
    writeln!(out, "  limits: {}", a.limits).unwrap();
    writeln!(out, "  prime_limit: {}", prime_limit(sig, &a.limits)).unwrap();
    writeln!(out, "  periodic_point: {}", if a.is_periodic_point { "yes" } else { "no" }).unwrap();
    if let Some(d) = &a.decomposition {
        writeln!(out, "  decomposition: {}", decomposition_text(d)).unwrap();
    }
}

/// Signal-level facts followed by one block per orbit point.
pub fn analysis_text(sig: SignalRef<'_>, a: &SignalAnalysis) -> String {
    let mut out = String::new();
    writeln!(out, "time: {}", time_name(sig)).unwrap();
    writeln!(out, "width: {}", sig.width()).unwrap();
    writeln!(out, "classification: {}", a.classification.as_str()).unwrap();
    writeln!(out, "orbit: {}", join(sig.orbit())).unwrap();
    writeln!(out, "omega: {}", join(sig.omega())).unwrap();
    writeln!(out, "periods: {}", a.periods).unwrap();
    writeln!(out, "prime_period: {}", opt(a.prime_period)).unwrap();
    writeln!(out, "limits: {}", a.limits).unwrap();
    writeln!(out, "prime_limit: {}", prime_limit(sig, &a.limits)).unwrap();
    if let SignalRef::Real(_) = sig {
        writeln!(out, "window: {}", opt(a.window)).unwrap();
    }
    for p in a.per_point.values() {
        point_block(&mut out, sig, p);
    }
    out
}

pub fn analysis_json(sig: SignalRef<'_>, a: &SignalAnalysis) -> Value {
    json!({
        "time": time_name(sig),
        "width": sig.width(),
        "orbit": sig.orbit(),
        "omega": sig.omega(),
        "analysis": a,
    })
}

pub fn point_text(sig: SignalRef<'_>, a: &PointAnalysis) -> String {
    let mut out = format!("time: {}\n", time_name(sig));
    point_block(&mut out, sig, a);
    out
}

pub fn point_json(sig: SignalRef<'_>, a: &PointAnalysis) -> Value {
    json!({ "time": time_name(sig), "point": a })
}

pub fn characterization_text(r: &CharacterizationReport) -> String {
    let mut out = String::new();
    writeln!(out, "{}", r.header()).unwrap();
    writeln!(out, "classification: {}", r.classification.as_str()).unwrap();
    for g in &r.groups {
        let scope = if g.for_all_periods { "every period" } else { "per period" };
        write!(out, "group {} ({scope}): {}", g.name, g.verdict).unwrap();
        if let Some(note) = g.note {
            write!(out, " [{note}]").unwrap();
        }
        out.push('\n');
        let bits = |v: &[bool]| join(v.iter().map(|&b| u8::from(b)));
        writeln!(out, "  expected: {}", bits(&g.expected)).unwrap();
        for row in &g.rows {
            writeln!(out, "  {}: {}", row.label, bits(&row.values)).unwrap();
        }
    }
    out
}

pub fn agreement_text(r: &AgreementReport) -> String {
    let mut out = format!(
        "oracle window: [{}, {})\noracle candidates: {}\noracle checks: {}\noracle disagreements: {}\n",
        r.window.0,
        r.window.1,
        join(&r.candidates),
        r.checks,
        r.disagreements.len()
    );
    for d in &r.disagreements {
        writeln!(
            out,
            "  {} point={} period={} limit={} engine={} brute={}",
            d.property,
            opt(d.point),
            d.period,
            opt(d.limit),
            d.engine,
            d.brute
        )
        .unwrap();
    }
    out
}

fn timed_json(items: &[(Rat, Point)]) -> Value {
    Value::Array(
        items
            .iter()
            .map(|(t, v)| json!([t.to_string(), v.to_string()]))
            .collect(),
    )
}

pub fn signal_json(sig: &Signal) -> Value {
    match sig {
        Signal::Discrete(d) => json!({
            "time": "discrete",
            "width": d.width(),
            "prefix": d.prefix(),
            "cycle": d.cycle(),
        }),
        Signal::Real(r) => json!({
            "time": "real",
            "width": r.width(),
            "initial": r.initial(),
            "transient": timed_json(r.transient()),
            "tail": r.tail().map(|t| json!({
                "anchor": t.anchor(),
                "period": t.period(),
                "pattern": timed_json(t.pattern()),
            })),
        }),
    }
}
