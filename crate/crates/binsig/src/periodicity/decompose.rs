//! One-period decompositions of eventually periodic supports, and their inverse.

use serde::Serialize;

use super::{PointAnalysis, Support};
use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::sets::{EvPeriodicIntSet, EvPeriodicIntervalSet, IntervalTail, PeriodSet};

/// The part of a support inside one period starting at a limit of periodicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Decomposition {
    /// The support from `limit` on is `{n + k*period | n in members, k >= 0}`.
    Discrete {
        limit: i64,
        period: u64,
        members: Vec<i64>,
    },
    /// The support from `limit` on is the union of `[a + kT, b + kT)`.
    Real {
        limit: Rat,
        period: Rat,
        intervals: Vec<(Rat, Rat)>,
    },
    /// The support contains `[start, inf)`, or everything when `start` is absent.
    FinalRay { start: Option<Rat> },
}

/// Decomposes the support of `analysis` at limit `at` with period `period`,
/// defaulting to the least limit and the prime period.
pub fn decompose(
    analysis: &PointAnalysis,
    at: Option<Rat>,
    period: Option<Rat>,
) -> Result<Decomposition> {
    if analysis.periods.is_empty() {
        return Err(Error::NotEventuallyPeriodic(format!(
            "point {} has no period",
            analysis.point
        )));
    }
    if let Some(t) = at {
        if !analysis.limits.contains(t) {
            return Err(Error::domain(format!(
                "{t} is not a limit of periodicity of {}",
                analysis.point
            )));
        }
    }
    if let Some(p) = period {
        if !analysis.periods.contains(p) {
            return Err(Error::domain(format!(
                "{p} is not a period of {}",
                analysis.point
            )));
        }
    }
    match (&analysis.support, analysis.periods) {
        (_, PeriodSet::AllPositive) => Ok(Decomposition::FinalRay {
            start: at.or(analysis.limits.least_rat()),
        }),
        (Support::Discrete(set), PeriodSet::MultiplesInt(prime)) => {
            let limit = match at {
                Some(t) => t.to_i64().ok_or_else(|| Error::domain("discrete limit must be an integer"))?,
                None => analysis.limits.least_int().expect("nonempty limits"),
            };
            let period = match period {
                Some(p) => p.to_i64().expect("checked multiple of an integer") as u64,
                None => prime,
            };
            Ok(Decomposition::Discrete {
                limit,
                period,
                members: set.members_in(limit, limit + period as i64),
            })
        }
        (Support::Real(set), PeriodSet::MultiplesRat(prime)) => {
            let limit = at.or(analysis.limits.least_rat()).expect("nonempty limits");
            let period = period.unwrap_or(prime);
            Ok(Decomposition::Real {
                limit,
                period,
                intervals: set.intervals_in(limit, limit + period),
            })
        }
        _ => Err(Error::domain("support and period set belong to different time domains")),
    }
}

/// The eventually periodic set described by `d`, restricted to its limit onward.
pub fn recompose(d: &Decomposition) -> Result<Support> {
    match d {
        Decomposition::Discrete {
            limit,
            period,
            members,
        } => {
            if *period == 0 || *limit < -1 {
                return Err(Error::domain("period must be positive and limit >= -1"));
            }
            let end = limit + *period as i64;
            if members.windows(2).any(|w| w[0] >= w[1])
                || members.iter().any(|&m| m < *limit || m >= end)
            {
                return Err(Error::domain(format!(
                    "members must be increasing and lie in [{limit}, {end})"
                )));
            }
            Ok(Support::Discrete(EvPeriodicIntSet {
                exceptional: Vec::new(),
                anchor: *limit,
                period: *period,
                residues: members.iter().map(|&m| (m - limit) as u64).collect(),
            }))
        }
        Decomposition::Real {
            limit,
            period,
            intervals,
        } => {
            if !period.is_positive() {
                return Err(Error::domain("period must be positive"));
            }
            let end = *limit + *period;
            let ordered = intervals.iter().all(|&(a, b)| a < b)
                && intervals.windows(2).all(|w| w[0].1 < w[1].0);
            let inside = intervals.iter().all(|&(a, b)| a >= *limit && b <= end);
            if !ordered || !inside {
                return Err(Error::domain(format!(
                    "intervals must be nonempty, separated, increasing and inside [{limit}, {end})"
                )));
            }
            Ok(Support::Real(EvPeriodicIntervalSet {
                full: false,
                initial_ray: None,
                transient: Vec::new(),
                tail: Some(IntervalTail::Train {
                    anchor: *limit,
                    period: *period,
                    pattern: intervals.clone(),
                }),
            }))
        }
        Decomposition::FinalRay { start: None } => Ok(Support::Real(EvPeriodicIntervalSet::full())),
        Decomposition::FinalRay { start: Some(s) } => Ok(Support::Real(EvPeriodicIntervalSet {
            full: false,
            initial_ray: None,
            transient: Vec::new(),
            tail: Some(IntervalTail::Ray { start: *s }),
        })),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsignal::DiscreteSignal;
    use crate::periodicity::analyze_point_d;
    use crate::point::Point;

    #[test]
    fn discrete_round_trip() {
        let b = |s: &str| s.parse::<Point>().unwrap();
        let x = DiscreteSignal::new(1, vec![b("0"), b("1")], vec![b("1"), b("0"), b("0")]).unwrap();
        let a = analyze_point_d(&x, b("1")).unwrap();
        let d = a.decomposition.clone().unwrap();
        let Decomposition::Discrete { limit, period, .. } = d else { panic!() };
        let Support::Discrete(back) = recompose(&d).unwrap() else { panic!() };
        let Support::Discrete(orig) = &a.support else { panic!() };
        for k in limit..limit + 5 * period as i64 {
            assert_eq!(back.contains(k), orig.contains(k));
        }
        // a non-prime period at a later limit is also admissible
        let later = decompose(&a, Some(Rat::int(limit + 2)), Some(Rat::int(6))).unwrap();
        assert!(matches!(later, Decomposition::Discrete { period: 6, .. }));
        assert!(decompose(&a, Some(Rat::int(limit - 1)), None).is_err());
        assert!(decompose(&a, None, Some(Rat::int(4))).is_err());
    }

    #[test]
    fn recompose_rejects_bad_shapes() {
        let bad = Decomposition::Discrete {
            limit: 0,
            period: 3,
            members: vec![1, 3],
        };
        assert!(recompose(&bad).is_err());
        let overlap = Decomposition::Real {
            limit: Rat::zero(),
            period: Rat::int(4),
            intervals: vec![(Rat::zero(), Rat::int(2)), (Rat::int(1), Rat::int(3))],
        };
        assert!(recompose(&overlap).is_err());
    }
}
