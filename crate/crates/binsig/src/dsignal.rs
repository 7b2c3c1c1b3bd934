//! Discrete-time signals `k ↦ x(k)`, `k >= -1`, in lasso form.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::point::Point;
use crate::sets::EvPeriodicIntSet;

/// An ultimately periodic sequence indexed from -1.
///
/// `prefix` holds the values at `k = -1, 0, ..., prefix.len() - 2`; the
/// cycle starts at `k = prefix.len() - 1` and repeats forever. Values are
/// always kept canonical: the cycle is primitive (no shorter rotation
/// period) and the prefix cannot be folded into the cycle. Two signals are
/// therefore equal as values exactly when they are equal as sequences.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DiscreteSignal {
    width: usize,
    prefix: Vec<Point>,
    cycle: Vec<Point>,
}

/// The time set on which a signal already equals its final value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "from", rename_all = "snake_case")]
pub enum DiscreteFinalTimes {
    Empty,
    From(i64),
    All,
}

/// Orbit, omega limit set, initial and final values of a discrete signal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiscreteSummary {
    pub orbit: Vec<Point>,
    pub omega: Vec<Point>,
    /// Least `k` with `{x(j) | j >= k}` equal to the omega set.
    pub omega_horizon: i64,
    pub initial_value: Point,
    pub final_value: Option<Point>,
    pub final_time_set: DiscreteFinalTimes,
}

/// Smallest `d` dividing `cycle.len()` with `cycle` invariant under rotation by `d`.
pub(crate) fn rotation_period<T: PartialEq>(cycle: &[T]) -> usize {
    let n = cycle.len();
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .find(|&d| (0..n).all(|i| cycle[i] == cycle[(i + d) % n]))
        .unwrap_or(n)
}

fn check_widths(width: usize, values: &[Point]) -> Result<()> {
    for v in values {
        if v.width() != width {
            return Err(Error::Width {
                expected: width,
                found: v.width(),
            });
        }
    }
    Ok(())
}

impl DiscreteSignal {
    /// Builds the canonical form of the lasso `prefix` + `cycle`.
    pub fn new(width: usize, prefix: Vec<Point>, cycle: Vec<Point>) -> Result<DiscreteSignal> {
        if cycle.is_empty() {
            return Err(Error::domain("cycle must be nonempty"));
        }
        check_widths(width, &prefix)?;
        check_widths(width, &cycle)?;
        let (prefix, cycle) = canonical_parts(prefix, cycle);
        Ok(DiscreteSignal {
            width,
            prefix,
            cycle,
        })
    }

    pub fn constant(mu: Point) -> DiscreteSignal {
        DiscreteSignal {
            width: mu.width(),
            prefix: Vec::new(),
            cycle: vec![mu],
        }
    }

    /// Tabulates `f` on `-1..anchor + period`, assuming `f` is periodic with
    /// `period` from `anchor` on.
    pub fn from_fn(
        width: usize,
        anchor: i64,
        period: usize,
        f: impl Fn(i64) -> Point,
    ) -> Result<DiscreteSignal> {
        if anchor < -1 || period == 0 {
            return Err(Error::domain("anchor must be >= -1 and period positive"));
        }
        let prefix = (-1..anchor).map(&f).collect();
        let cycle = (anchor..anchor + period as i64).map(&f).collect();
        DiscreteSignal::new(width, prefix, cycle)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn prefix(&self) -> &[Point] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[Point] {
        &self.cycle
    }

    /// Index at which the cycle starts.
    pub fn anchor(&self) -> i64 {
        self.prefix.len() as i64 - 1
    }

    /// Length of the (primitive) cycle.
    pub fn period(&self) -> usize {
        self.cycle.len()
    }

    /// Value at `k`; panics for `k < -1`.
    pub fn at(&self, k: i64) -> Point {
        assert!(k >= -1, "time {k} precedes -1");
        let i = (k + 1) as usize;
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.cycle[(i - self.prefix.len()) % self.cycle.len()]
        }
    }

    pub fn value_at(&self, k: i64) -> Result<Point> {
        if k < -1 {
            return Err(Error::domain(format!("time {k} precedes -1")));
        }
        Ok(self.at(k))
    }

    /// Values at `lo..hi`.
    pub fn values(&self, lo: i64, hi: i64) -> Vec<Point> {
        (lo..hi).map(|k| self.at(k)).collect()
    }

    /// Canonical form. Values are canonical by construction, so this is a copy;
    /// it exists for symmetry with the real-time representation.
    pub fn canonicalize(&self) -> DiscreteSignal {
        self.clone()
    }

    /// The signal `k ↦ x(k + shift)`.
    pub fn forget(&self, shift: i64) -> Result<DiscreteSignal> {
        if shift < 0 {
            return Err(Error::domain(format!("forget needs a shift >= 0, got {shift}")));
        }
        let anchor = (self.anchor() - shift).max(-1);
        DiscreteSignal::from_fn(self.width, anchor, self.period(), |k| self.at(k + shift))
    }

    /// Pointwise image under `f`.
    pub fn map(&self, width: usize, f: impl Fn(Point) -> Point) -> Result<DiscreteSignal> {
        DiscreteSignal::new(
            width,
            self.prefix.iter().map(|&v| f(v)).collect(),
            self.cycle.iter().map(|&v| f(v)).collect(),
        )
    }

    /// The one-bit signal that is 1 exactly where `self` equals `mu`.
    pub fn indicator(&self, mu: Point) -> Result<DiscreteSignal> {
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
        self.prefix.iter().chain(&self.cycle).copied().collect()
    }

    pub fn omega(&self) -> BTreeSet<Point> {
        self.cycle.iter().copied().collect()
    }

    pub fn is_constant(&self) -> bool {
        self.prefix.is_empty() && self.cycle.len() == 1
    }

    pub fn is_eventually_constant(&self) -> bool {
        self.cycle.len() == 1
    }

    pub fn summarize(&self) -> DiscreteSummary {
        let omega = self.omega();
        let omega_horizon = self
            .prefix
            .iter()
            .rposition(|v| !omega.contains(v))
            .map_or(-1, |i| i as i64);
        let final_value = (self.cycle.len() == 1).then(|| self.cycle[0]);
        let final_time_set = match final_value {
            None => DiscreteFinalTimes::Empty,
            Some(_) if self.prefix.is_empty() => DiscreteFinalTimes::All,
            Some(_) => DiscreteFinalTimes::From(self.anchor()),
        };
        DiscreteSummary {
            orbit: self.orbit().into_iter().collect(),
            omega: omega.into_iter().collect(),
            omega_horizon,
            initial_value: self.at(-1),
            final_value,
            final_time_set,
        }
    }

    /// The set `{k | x(k) = mu}` in eventually periodic form.
    pub fn support_set(&self, mu: Point) -> Result<EvPeriodicIntSet> {
        self.check_point(mu)?;
        Ok(EvPeriodicIntSet {
            exceptional: (-1..self.anchor()).filter(|&k| self.at(k) == mu).collect(),
            anchor: self.anchor(),
            period: self.period() as u64,
            residues: (0..self.period() as u64)
                .filter(|&r| self.cycle[r as usize] == mu)
                .collect(),
        })
    }
}

fn canonical_parts(mut prefix: Vec<Point>, cycle: Vec<Point>) -> (Vec<Point>, Vec<Point>) {
    let d = rotation_period(&cycle);
    let mut cycle: Vec<Point> = cycle[..d].to_vec();
    while let (Some(&p), Some(&c)) = (prefix.last(), cycle.last()) {
        if p != c {
            break;
        }
        prefix.pop();
        cycle.rotate_right(1);
    }
    (prefix, cycle)
}
