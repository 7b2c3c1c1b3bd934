//! Moving between discrete and real time on a uniform grid `t_k = t0 + k*h`.

use crate::dsignal::DiscreteSignal;
use crate::error::{Error, Result};
use crate::point::Point;
use crate::rat::Rat;
use crate::rsignal::RealSignal;

fn check_step(h: Rat) -> Result<()> {
    if h.is_positive() {
        Ok(())
    } else {
        Err(Error::domain(format!("grid step must be positive, got {h}")))
    }
}

/// The step function equal to `sig(k)` on `[t0 + k*h, t0 + (k+1)*h)` and to
/// `sig(-1)` on `(-inf, t0)`.
pub fn embed(sig: &DiscreteSignal, t0: Rat, h: Rat) -> Result<RealSignal> {
    check_step(h)?;
    let start = sig.anchor().max(0);
    let period = sig.period() as i64;
    let grid = |k: i64| t0 + Rat::int(k) * h;
    let candidates = (0..start + period).map(grid).collect();
    let tail = (grid(start), Rat::int(period) * h);
    RealSignal::from_fn(sig.width(), sig.at(-1), candidates, Some(tail), |t| {
        if t < t0 {
            sig.at(-1)
        } else {
            sig.at((t - t0).div_floor(h) as i64)
        }
    })
}

/// First change point that is off the grid or before `t0`, if any.
fn misaligned_change(sig: &RealSignal, t0: Rat, h: Rat) -> Option<Rat> {
    let first = sig.first_change()?;
    let settle = sig.settle_time().unwrap_or(first);
    let span = sig.tail().map_or(Rat::one(), |t| t.period());
    sig.change_points_in(first, settle + span + span + Rat::one())
        .into_iter()
        .find(|&c| c < t0 || !((c - t0) / h).is_integer())
}

/// Samples `sig` at the grid times; `x(-1)` is the initial value of `sig`.
///
/// With `phase_check`, every change of `sig` must sit on a grid time at or
/// after `t0`, so that `embed(sample(sig)) == sig`.
pub fn sample(sig: &RealSignal, t0: Rat, h: Rat, phase_check: bool) -> Result<DiscreteSignal> {
    check_step(h)?;
    if phase_check {
        if let Some(c) = misaligned_change(sig, t0, h) {
            return Err(Error::GridMismatch { at: c.to_string() });
        }
    }
    let (anchor, period) = match sig.tail() {
        Some(tail) => {
            let steps = tail.period() / h;
            // least p with p*h a multiple of the tail period
            (tail.anchor(), steps.numer() as usize)
        }
        None => (sig.settle_time().unwrap_or(t0), 1),
    };
    let anchor_k = ((anchor - t0) / h).ceil().max(-1) as i64;
    let value = |k: i64| -> Point {
        if k == -1 {
            sig.initial()
        } else {
            sig.value_at(t0 + Rat::int(k) * h)
        }
    };
    DiscreteSignal::from_fn(sig.width(), anchor_k.max(0), period, value)
}
