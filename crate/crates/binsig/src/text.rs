//! Line-oriented text forms of signals and windows.
//!
//! ```text
//! dsignal n=2
//! prefix: 00 01
//! cycle: 11 10
//! ```
//!
//! ```text
//! rsignal n=1
//! initial: 1
//! transient: 0:0 1:1
//! tail: anchor=3 period=2 pattern: 0:0 1:1
//! ```
//!
//! Tail pattern times are offsets from the anchor.
//!
//! Windows add an `end:` line and start with `window n=<w> time=discrete|real`:
//! discrete windows list `start:` and `values:`; real windows list `start:`,
//! `initial:`, `transient:` and optionally `initial_ray: yes` when the signal
//! is known to be constant before its first change. `#` starts a comment.

use std::fmt::Write as _;

use crate::dsignal::DiscreteSignal;
use crate::error::{Error, Result};
use crate::oracle::{WindowSignal, WindowValues};
use crate::periodicity::SignalRef;
use crate::point::Point;
use crate::rat::Rat;
use crate::rsignal::{RealSignal, Tail};

/// An owned signal of either time domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Signal {
    Discrete(DiscreteSignal),
    Real(RealSignal),
}

impl Signal {
    pub fn as_ref(&self) -> SignalRef<'_> {
        match self {
            Signal::Discrete(s) => SignalRef::Discrete(s),
            Signal::Real(s) => SignalRef::Real(s),
        }
    }
}

impl<'a> From<&'a Signal> for SignalRef<'a> {
    fn from(s: &'a Signal) -> Self {
        s.as_ref()
    }
}

struct Lines<'a> {
    items: Vec<(usize, &'a str, &'a str)>,
}

impl<'a> Lines<'a> {
    /// Splits into `(line number, key, rest)`; the header is keyed by its first word.
    fn new(text: &'a str) -> Lines<'a> {
        let items = text
            .lines()
            .enumerate()
            .filter_map(|(i, raw)| {
                let line = raw.split('#').next().unwrap().trim();
                if line.is_empty() {
                    return None;
                }
                let (key, rest) = match line.split_once(':') {
                    Some((k, r)) if !k.contains(' ') && !k.contains('=') => (k, r.trim()),
                    _ => line.split_once(' ').unwrap_or((line, "")),
                };
                Some((i + 1, key.trim(), rest.trim()))
            })
            .collect();
        Lines { items }
    }

    fn header(&self, expected: &[&str]) -> Result<(usize, &'a str, &'a str)> {
        let &(no, key, rest) = self
            .items
            .first()
            .ok_or_else(|| Error::parse("line 1", "empty input"))?;
        if !expected.contains(&key) {
            return Err(Error::parse(
                format!("line {no}"),
                format!("expected header {}, found {key:?}", expected.join(" or ")),
            ));
        }
        Ok((no, key, rest))
    }

    fn get(&self, key: &str) -> Option<(usize, &'a str)> {
        self.items[1..]
            .iter()
            .find(|it| it.1 == key)
            .map(|&(no, _, rest)| (no, rest))
    }

    fn require(&self, key: &str) -> Result<(usize, &'a str)> {
        self.get(key)
            .ok_or_else(|| Error::parse("input", format!("missing {key}: line")))
    }

    fn reject_unknown(&self, known: &[&str]) -> Result<()> {
        for &(no, key, _) in &self.items[1..] {
            if !known.contains(&key) {
                return Err(Error::parse(format!("line {no}"), format!("unknown field {key:?}")));
            }
        }
        Ok(())
    }
}

fn at_line<T>(no: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { location, message } => Error::parse(format!("line {no}, {location}"), message),
        other => Error::parse(format!("line {no}"), other.to_string()),
    })
}

fn header_width(no: usize, rest: &str) -> Result<(usize, Option<&str>)> {
    let mut width = None;
    let mut time = None;
    for word in rest.split_whitespace() {
        match word.split_once('=') {
            Some(("n", v)) => {
                width = Some(v.parse::<usize>().map_err(|_| {
                    Error::parse(format!("line {no}"), format!("bad width {v:?}"))
                })?)
            }
            Some(("time", v)) => time = Some(v),
            _ => return Err(Error::parse(format!("line {no}"), format!("unexpected {word:?}"))),
        }
    }
    let width = width.ok_or_else(|| Error::parse(format!("line {no}"), "missing n=<width>"))?;
    Ok((width, time))
}

fn points(no: usize, rest: &str) -> Result<Vec<Point>> {
    rest.split_whitespace()
        .map(|w| at_line(no, w.parse::<Point>()))
        .collect()
}

fn timed(no: usize, rest: &str) -> Result<Vec<(Rat, Point)>> {
    rest.split_whitespace()
        .map(|w| {
            let (t, v) = w
                .split_once(':')
                .ok_or_else(|| Error::parse(format!("line {no}"), format!("expected <time>:<bits>, found {w:?}")))?;
            Ok((at_line(no, t.parse())?, at_line(no, v.parse())?))
        })
        .collect()
}

fn single_point(no: usize, rest: &str) -> Result<Point> {
    at_line(no, rest.parse())
}

fn single_rat(no: usize, rest: &str) -> Result<Rat> {
    at_line(no, rest.parse())
}

pub fn parse_dsignal(text: &str) -> Result<DiscreteSignal> {
    let lines = Lines::new(text);
    let (no, _, rest) = lines.header(&["dsignal"])?;
    let (width, _) = header_width(no, rest)?;
    lines.reject_unknown(&["prefix", "cycle"])?;
    let prefix = match lines.get("prefix") {
        Some((no, rest)) => points(no, rest)?,
        None => Vec::new(),
    };
    let (cno, crest) = lines.require("cycle")?;
    let cycle = points(cno, crest)?;
    at_line(cno, DiscreteSignal::new(width, prefix, cycle))
}

fn parse_tail(no: usize, rest: &str) -> Result<Tail> {
    let (head, pattern) = rest
        .split_once("pattern:")
        .ok_or_else(|| Error::parse(format!("line {no}"), "tail needs pattern:"))?;
    let mut anchor = None;
    let mut period = None;
    for word in head.split_whitespace() {
        match word.split_once('=') {
            Some(("anchor", v)) => anchor = Some(single_rat(no, v)?),
            Some(("period", v)) => period = Some(single_rat(no, v)?),
            _ => return Err(Error::parse(format!("line {no}"), format!("unexpected {word:?}"))),
        }
    }
    let anchor = anchor.ok_or_else(|| Error::parse(format!("line {no}"), "tail needs anchor="))?;
    let period = period.ok_or_else(|| Error::parse(format!("line {no}"), "tail needs period="))?;
    at_line(no, Tail::new(anchor, period, timed(no, pattern)?))
}

pub fn parse_rsignal(text: &str) -> Result<RealSignal> {
    let lines = Lines::new(text);
    let (no, _, rest) = lines.header(&["rsignal"])?;
    let (width, _) = header_width(no, rest)?;
    lines.reject_unknown(&["initial", "transient", "tail"])?;
    let (ino, irest) = lines.require("initial")?;
    let initial = single_point(ino, irest)?;
    let transient = match lines.get("transient") {
        Some((no, rest)) => timed(no, rest)?,
        None => Vec::new(),
    };
    let tail = match lines.get("tail") {
        Some((no, rest)) => Some(parse_tail(no, rest)?),
        None => None,
    };
    at_line(ino, RealSignal::new(width, initial, transient, tail))
}

/// Parses either signal form, chosen by the header.
pub fn parse_signal(text: &str) -> Result<Signal> {
    let lines = Lines::new(text);
    let (_, key, _) = lines.header(&["dsignal", "rsignal"])?;
    if key == "dsignal" {
        parse_dsignal(text).map(Signal::Discrete)
    } else {
        parse_rsignal(text).map(Signal::Real)
    }
}

pub fn parse_window(text: &str) -> Result<WindowSignal> {
    let lines = Lines::new(text);
    let (no, _, rest) = lines.header(&["window"])?;
    let (width, time) = header_width(no, rest)?;
    let (sno, srest) = lines.require("start")?;
    let (eno, erest) = lines.require("end")?;
    let end = single_rat(eno, erest)?;
    match time {
        Some("discrete") => {
            lines.reject_unknown(&["start", "values", "end"])?;
            let start: i64 = srest
                .parse()
                .map_err(|_| Error::parse(format!("line {sno}"), "discrete start must be an integer"))?;
            let (vno, vrest) = lines.require("values")?;
            let w = at_line(vno, WindowSignal::discrete(width, start, points(vno, vrest)?))?;
            if w.end() != end {
                return Err(Error::parse(
                    format!("line {eno}"),
                    format!("end {end} does not match start + number of values = {}", w.end()),
                ));
            }
            Ok(w)
        }
        Some("real") => {
            lines.reject_unknown(&["start", "initial", "transient", "end", "initial_ray"])?;
            let start = single_rat(sno, srest)?;
            let (ino, irest) = lines.require("initial")?;
            let changes = match lines.get("transient") {
                Some((no, rest)) => timed(no, rest)?,
                None => Vec::new(),
            };
            let initial_ray = match lines.get("initial_ray") {
                None => false,
                Some((_, "yes" | "true")) => true,
                Some((_, "no" | "false")) => false,
                Some((no, other)) => {
                    return Err(Error::parse(format!("line {no}"), format!("expected yes or no, found {other:?}")))
                }
            };
            at_line(
                ino,
                WindowSignal::real(width, start, end, single_point(ino, irest)?, changes, initial_ray),
            )
        }
        _ => Err(Error::parse(format!("line {no}"), "window header needs time=discrete or time=real")),
    }
}

fn join<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn join_timed(items: &[(Rat, Point)]) -> String {
    join(items.iter().map(|(t, v)| format!("{t}:{v}")))
}

pub fn format_dsignal(sig: &DiscreteSignal) -> String {
    let mut out = format!("dsignal n={}\n", sig.width());
    if !sig.prefix().is_empty() {
        writeln!(out, "prefix: {}", join(sig.prefix())).unwrap();
    }
    writeln!(out, "cycle: {}", join(sig.cycle())).unwrap();
    out
}

pub fn format_rsignal(sig: &RealSignal) -> String {
    let mut out = format!("rsignal n={}\ninitial: {}\n", sig.width(), sig.initial());
    if !sig.transient().is_empty() {
        writeln!(out, "transient: {}", join_timed(sig.transient())).unwrap();
    }
    if let Some(t) = sig.tail() {
        writeln!(
            out,
            "tail: anchor={} period={} pattern: {}",
            t.anchor(),
            t.period(),
            join_timed(t.pattern())
        )
        .unwrap();
    }
    out
}

pub fn format_signal(sig: &Signal) -> String {
    match sig {
        Signal::Discrete(s) => format_dsignal(s),
        Signal::Real(s) => format_rsignal(s),
    }
}

pub fn format_window(w: &WindowSignal) -> String {
    match w.values() {
        WindowValues::Discrete(v) => format!(
            "window n={} time=discrete\nstart: {}\nvalues: {}\nend: {}\n",
            w.width(),
            w.start(),
            join(v),
            w.end()
        ),
        WindowValues::Real {
            initial,
            changes,
            initial_ray,
        } => {
            let mut out = format!(
                "window n={} time=real\nstart: {}\ninitial: {}\n",
                w.width(),
                w.start(),
                initial
            );
            if !changes.is_empty() {
                writeln!(out, "transient: {}", join_timed(changes)).unwrap();
            }
            if *initial_ray {
                out.push_str("initial_ray: yes\n");
            }
            writeln!(out, "end: {}", w.end()).unwrap();
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discrete_round_trip() {
        let text = "dsignal n=2\n# comment\nprefix: 00 01\ncycle: 11 10 11 10\n";
        let x = parse_dsignal(text).unwrap();
        assert_eq!(x.period(), 2);
        assert_eq!(format_dsignal(&x), "dsignal n=2\nprefix: 00 01\ncycle: 11 10\n");
        assert_eq!(parse_dsignal(&format_dsignal(&x)).unwrap(), x);
        let c = parse_dsignal("dsignal n=1\ncycle: 1").unwrap();
        assert_eq!(format_dsignal(&c), "dsignal n=1\ncycle: 1\n");
    }

    #[test]
    fn real_round_trip() {
        let text = "rsignal n=1\ninitial: 1\ntransient: 0:0 1:1\ntail: anchor=3 period=2 pattern: 0:0 1:1\n";
        let x = parse_rsignal(text).unwrap();
        assert_eq!(parse_rsignal(&format_rsignal(&x)).unwrap(), x);
        assert!(matches!(parse_signal(text).unwrap(), Signal::Real(_)));
        let h = parse_rsignal("rsignal n=1\ninitial: 0\ntransient: 0:1\n").unwrap();
        assert_eq!(format_rsignal(&h), "rsignal n=1\ninitial: 0\ntransient: 0:1\n");
    }

    #[test]
    fn errors_name_the_line() {
        let e = parse_dsignal("dsignal n=1\nprefix: 0 2\ncycle: 1").unwrap_err();
        assert!(e.to_string().contains("line 2"), "{e}");
        let e = parse_rsignal("rsignal n=1\ninitial: 0\ntransient: 1:1 0:0\n").unwrap_err();
        assert!(e.to_string().contains("line 2"), "{e}");
        let e = parse_rsignal("rsignal n=1\ninitial: 0\ntail: anchor=0 period=1 pattern: 1/2:1\n").unwrap_err();
        assert!(e.to_string().contains("line 3"), "{e}");
        assert!(parse_signal("signal n=1").is_err());
        assert!(parse_dsignal("dsignal n=1\nprefix: 0").is_err());
        assert!(parse_dsignal("dsignal\ncycle: 0").is_err());
        assert!(parse_dsignal("dsignal n=1\ncycle: 0\ncolor: red").is_err());
        assert!(matches!(parse_dsignal("dsignal n=1\ncycle: 01"), Err(Error::Parse { .. })));
    }

    #[test]
    fn windows() {
        let text = "window n=1 time=discrete\nstart: -1\nvalues: 0 1 1\nend: 2\n";
        let w = parse_window(text).unwrap();
        assert_eq!(format_window(&w), text);
        assert!(parse_window("window n=1 time=discrete\nstart: -1\nvalues: 0 1 1\nend: 5\n").is_err());
        let text = "window n=1 time=real\nstart: -2\ninitial: 1\ntransient: 0:0 1/2:1\ninitial_ray: yes\nend: 10\n";
        let w = parse_window(text).unwrap();
        assert_eq!(format_window(&w), text);
        assert!(parse_window("window n=1\nstart: 0\nend: 1").is_err());
    }
}
