//! Distances between an empirical and a synthetic report.
//!
//! Scalars use the signed difference `x − x'` (or its relative form for the
//! clustering coefficient), sequences the root mean square error over
//! identity-aligned entries. Signs follow the empirical-minus-synthetic
//! convention, so a negative value means the synthetic statistic is larger.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Stat, StatReport};
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Metric {
    #[serde(rename = "SD")]
    Sd,
    #[serde(rename = "SRD")]
    Srd,
    #[serde(rename = "RMSE")]
    Rmse,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Real")]
pub struct DistanceEntry<F> {
    pub metric: Metric,
    /// `None` when the distance is undefined (relative difference against 0).
    pub value: Option<F>,
}

/// Distances for every statistic present in both reports.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent, bound = "F: Real")]
pub struct DistanceReport<F> {
    pub entries: BTreeMap<Stat, DistanceEntry<F>>,
}

impl<F: Real> DistanceReport<F> {
    pub fn get(&self, s: Stat) -> Option<&DistanceEntry<F>> {
        self.entries.get(&s)
    }

    pub fn value(&self, s: Stat) -> Option<F> {
        self.entries.get(&s).and_then(|e| e.value)
    }
}

pub fn rmse<F: Real>(x: &[F], y: &[F]) -> Option<F> {
    if x.len() != y.len() {
        return None;
    }
    if x.is_empty() {
        return Some(F::zero());
    }
    let ss: F = x.iter().zip(y).map(|(&a, &b)| (a - b) * (a - b)).sum();
    Some((ss / F::of_usize(x.len())).sqrt())
}

pub fn distances<F: Real>(empirical: &StatReport<F>, synthetic: &StatReport<F>) -> Result<DistanceReport<F>> {
    let mut entries = BTreeMap::new();
    for s in Stat::ALL {
        let metric = s.metric();
        let value = match metric {
            Metric::Sd => match (empirical.scalar(s), synthetic.scalar(s)) {
                (Some(x), Some(y)) => Some(x - y),
                _ => continue,
            },
            Metric::Srd => match (empirical.scalar(s), synthetic.scalar(s)) {
                (Some(x), Some(_)) if x == F::zero() => None,
                (Some(x), Some(y)) => Some((x - y) / x),
                _ => continue,
            },
            Metric::Rmse => match (empirical.sequence(s), synthetic.sequence(s)) {
                (Some(x), Some(y)) => Some(rmse(x, y).ok_or(Error::UniverseMismatch {
                    what: s.name(),
                    left: x.len(),
                    right: y.len(),
                })?),
                _ => continue,
            },
        };
        entries.insert(s, DistanceEntry { metric, value });
    }
    Ok(DistanceReport { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn report(scale: f64) -> StatReport<f64> {
        StatReport {
            pseudo_diameter: Some(5.0 * scale),
            char_time: Some(12.5 * scale),
            global_ccoeff: Some(0.25 * scale),
            degree: Some(vec![1.0, 2.0].into_iter().map(|x| x * scale).collect()),
            mixing_mus: Some(vec![0.5]),
            mincuts: Some(vec![3.0, 1.0]),
            c_edge: Some(vec![6.0, 2.0]),
            o_deg: Some(vec![]),
            ..Default::default()
        }
    }

    #[test]
    fn identical_reports_are_zero() {
        let r = report(1.0);
        let d = distances(&r, &r).unwrap();
        assert_eq!(d.entries.len(), 8);
        assert!(d.entries.values().all(|e| e.value == Some(0.0)));
    }

    #[test]
    fn hand_computed_values() {
        let a = StatReport {
            pseudo_diameter: Some(4.0),
            global_ccoeff: Some(0.5),
            degree: Some(vec![1.0, 2.0]),
            ..Default::default()
        };
        let b = StatReport {
            pseudo_diameter: Some(6.0),
            global_ccoeff: Some(0.25),
            degree: Some(vec![1.0, 4.0]),
            ..Default::default()
        };
        let d = distances(&a, &b).unwrap();
        assert_eq!(d.value(Stat::PseudoDiameter), Some(-2.0));
        assert_eq!(d.get(Stat::PseudoDiameter).unwrap().metric, Metric::Sd);
        assert_eq!(d.value(Stat::GlobalCcoeff), Some(0.5));
        assert_eq!(d.value(Stat::Degree), Some(2f64.sqrt()));
        assert!(d.get(Stat::CharTime).is_none());
    }

    #[test]
    fn relative_difference_against_zero_is_undefined() {
        let a = StatReport::<f64> { global_ccoeff: Some(0.0), ..Default::default() };
        let b = StatReport::<f64> { global_ccoeff: Some(0.3), ..Default::default() };
        let d = distances(&a, &b).unwrap();
        let e = d.get(Stat::GlobalCcoeff).unwrap();
        assert_eq!(e.metric, Metric::Srd);
        assert_eq!(e.value, None);
        let json = serde_json::to_value(&d).unwrap();
        assert_eq!(json["global_ccoeff"]["value"], serde_json::Value::Null);
        assert_eq!(json["global_ccoeff"]["metric"], "SRD");
    }

    #[test]
    fn mismatched_lengths_are_rejected() {
        let a = StatReport::<f32> { o_deg: Some(vec![1.0]), ..Default::default() };
        let b = StatReport::<f32> { o_deg: Some(vec![1.0, 2.0]), ..Default::default() };
        assert!(matches!(
            distances(&a, &b),
            Err(Error::UniverseMismatch { what: "o_deg", left: 1, right: 2 })
        ));
    }

    proptest! {
        #[test]
        fn rmse_symmetric_and_sd_antisymmetric(
            xs in proptest::collection::vec((-1e3f64..1e3, -1e3f64..1e3), 0..30),
            p in -1e3f64..1e3, q in -1e3f64..1e3,
        ) {
            let (x, y): (Vec<f64>, Vec<f64>) = xs.into_iter().unzip();
            let a = StatReport { degree: Some(x.clone()), char_time: Some(p), ..Default::default() };
            let b = StatReport { degree: Some(y.clone()), char_time: Some(q), ..Default::default() };
            let ab = distances(&a, &b).unwrap();
            let ba = distances(&b, &a).unwrap();
            prop_assert_eq!(ab.value(Stat::Degree), ba.value(Stat::Degree));
            prop_assert!(ab.value(Stat::Degree).unwrap() >= 0.0);
            prop_assert_eq!(ab.value(Stat::CharTime).unwrap(), -ba.value(Stat::CharTime).unwrap());

            let n = x.len().max(1) as f64;
            let want = (x.iter().zip(&y).map(|(a, b)| (a - b).powi(2)).sum::<f64>() / n).sqrt();
            prop_assert!((ab.value(Stat::Degree).unwrap() - want).abs() <= 1e-9 * (1.0 + want));
        }
    }
}
