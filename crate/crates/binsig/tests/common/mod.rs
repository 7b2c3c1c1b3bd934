//! Seeded random corpora shared by the integration tests.
#![allow(dead_code)]

pub mod theorems;

use binsig::{DiscreteSignal, Point, Rat, RealSignal, Tail};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const LASSO_COUNT: usize = 200;
pub const REAL_COUNT: usize = 100;
pub const SEED: u64 = 0x5eed_b15c;

pub fn p(s: &str) -> Point {
    s.parse().unwrap()
}

pub fn r(s: &str) -> Rat {
    s.parse().unwrap()
}

fn point(rng: &mut ChaCha8Rng, width: usize) -> Point {
    Point::new(width, rng.gen_range(0..1u64 << width)).unwrap()
}

/// Lassos of width at most 3 with prefix length at most 5 and cycle length at most 8.
pub fn lassos(count: usize) -> Vec<DiscreteSignal> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..count)
        .map(|_| {
            let width = rng.gen_range(1..=3);
            let prefix = (0..rng.gen_range(0..=5)).map(|_| point(&mut rng, width)).collect();
            let cycle = (0..rng.gen_range(1..=8)).map(|_| point(&mut rng, width)).collect();
            DiscreteSignal::new(width, prefix, cycle).unwrap()
        })
        .collect()
}

/// Step functions of width at most 2 with at most 6 transient breakpoints on
/// a half-unit grid and, for most of them, a tail of at most 4 segments.
pub fn real_signals(count: usize) -> Vec<RealSignal> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xfeed);
    let periods = ["1", "3/2", "2", "5/2", "3", "4", "5"];
    (0..count)
        .map(|_| {
            let width = rng.gen_range(1..=2);
            let n = rng.gen_range(0..=6);
            let mut times: Vec<i64> = sample(&mut rng, 20, n)
                .into_iter()
                .map(|i| i as i64 - 8)
                .collect();
            times.sort();
            let transient: Vec<(Rat, Point)> = times
                .iter()
                .map(|&t| (Rat::new(t as i128, 2), point(&mut rng, width)))
                .collect();
            let anchor = transient.last().map_or(Rat::zero(), |e| e.0) + r("1/2");
            let tail = (rng.gen_range(0..5) > 0).then(|| {
                let period = r(periods[rng.gen_range(0..periods.len())]);
                let steps = (period * Rat::int(2)).to_i64().unwrap() as usize;
                let segments = rng.gen_range(2..=4usize).min(steps);
                let mut offs: Vec<usize> = sample(&mut rng, steps - 1, segments - 1)
                    .into_iter()
                    .map(|i| i + 1)
                    .collect();
                offs.sort();
                let mut pattern = vec![(Rat::zero(), point(&mut rng, width))];
                for o in offs {
                    pattern.push((Rat::new(o as i128, 2), point(&mut rng, width)));
                }
                Tail::new(anchor, period, pattern).unwrap()
            });
            RealSignal::new(width, point(&mut rng, width), transient, tail).unwrap()
        })
        .collect()
}

/// Breakpoint-difference candidates for a real signal, covering its transient and two tail periods.
pub fn t_candidates(x: &RealSignal) -> Vec<Rat> {
    let lo = x.first_change().map_or(Rat::zero(), |t| t - Rat::one());
    let span = x.tail().map_or(Rat::one(), |t| t.period());
    let hi = x.settle_time().unwrap_or(lo).max(lo) + span + span;
    binsig::oracle::breakpoint_difference_candidates(x, lo, hi, 8)
}
