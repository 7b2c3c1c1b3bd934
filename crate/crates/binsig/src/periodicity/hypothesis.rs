//! The relation between the prime periods of the omega points and the prime
//! period of the signal.

use std::collections::BTreeMap;

use serde::Serialize;

use super::SignalRef;
use crate::point::Point;
use crate::rat::Rat;
use crate::sets::PeriodSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    /// Period set of every omega point.
    pub point_periods: BTreeMap<Point, PeriodSet>,
    pub signal_periods: PeriodSet,
    pub signal_prime: Option<Rat>,
    /// `signal_prime / point_prime` for every omega point with a prime period.
    pub multipliers: BTreeMap<Point, Rat>,
    /// The point period sets intersect in the signal period set, the signal
    /// prime is the least common multiple of the point primes and the
    /// multipliers have no common factor. Holds vacuously when every period
    /// set is all positive times.
    pub lcm_relation_holds: bool,
}

pub fn hypothesis_p_report<'a>(sig: impl Into<SignalRef<'a>>) -> HypothesisReport {
    let sig = sig.into();
    let whole = sig.analyze();
    let point_periods: BTreeMap<Point, PeriodSet> = sig
        .omega()
        .into_iter()
        .map(|mu| (mu, whole.per_point[&mu].periods))
        .collect();
    let signal_prime = whole.periods.prime();
    let mut multipliers = BTreeMap::new();
    let holds = match signal_prime {
        None => {
            whole.periods == PeriodSet::AllPositive
                && point_periods.values().all(|&p| p == PeriodSet::AllPositive)
        }
        Some(prime) => {
            let primes: Vec<Rat> = point_periods.values().filter_map(|p| p.prime()).collect();
            let lcm = primes.iter().copied().reduce(Rat::lcm);
            for (&mu, p) in &point_periods {
                if let Some(q) = p.prime() {
                    multipliers.insert(mu, prime / q);
                }
            }
            let intersection = point_periods
                .values()
                .fold(PeriodSet::AllPositive, |acc, p| acc.intersect(p));
            let coprime = multipliers
                .values()
                .map(|m| m.numer())
                .reduce(|a, b| num_integer::Integer::gcd(&a, &b))
                == Some(1);
            primes.len() == point_periods.len()
                && lcm == Some(prime)
                && intersection == whole.periods
                && multipliers.values().all(|m| m.is_integer())
                && coprime
        }
    };
    HypothesisReport {
        point_periods,
        signal_periods: whole.periods,
        signal_prime,
        multipliers,
        lcm_relation_holds: holds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsignal::DiscreteSignal;

    #[test]
    fn primes_four_and_six_give_twelve() {
        let b = |s: &str| s.parse::<Point>().unwrap();
        // 01 at k = 0 mod 4, 10 at k = 1 mod 6, 00 elsewhere
        let cycle: Vec<Point> = (0..12)
            .map(|k| match (k % 4 == 0, k % 6 == 1) {
                (true, _) => b("01"),
                (_, true) => b("10"),
                _ => b("00"),
            })
            .collect();
        let x = DiscreteSignal::new(2, vec![], cycle).unwrap();
        let h = hypothesis_p_report(&x);
        assert_eq!(h.point_periods[&b("01")], PeriodSet::MultiplesInt(4));
        assert_eq!(h.point_periods[&b("10")], PeriodSet::MultiplesInt(6));
        assert_eq!(h.signal_prime, Some(Rat::int(12)));
        assert_eq!(h.multipliers[&b("01")], Rat::int(3));
        assert!(h.lcm_relation_holds);
    }
}
