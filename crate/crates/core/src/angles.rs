//! Angle sequences: the empirical objects every statistic is computed from.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};

/// One good prime with its integral Frobenius trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TracePoint {
    pub prime: u64,
    pub trace: i64,
}

impl TracePoint {
    /// Hasse: `a_p^2 <= 4p`, checked exactly in integers.
    pub fn satisfies_hasse(&self) -> bool {
        (self.trace as i128) * (self.trace as i128) <= 4 * self.prime as i128
    }

    /// `a_p / (2 sqrt p)` in `[-1, 1]`.
    pub fn normalized(&self) -> f64 {
        self.trace as f64 / (2.0 * (self.prime as f64).sqrt())
    }
}

/// Where a sequence came from and how far it reaches.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub label: String,
    pub covered_to: u64,
    pub digest: String,
}

/// Ordered `(prime, angle)` list over the good primes, with the excluded
/// (ramified plus 2, 3) set alongside.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AngleSequence {
    entries: Vec<(u64, f64)>,
    excluded: BTreeSet<u64>,
    provenance: Provenance,
}

impl AngleSequence {
    pub fn new(
        entries: Vec<(u64, f64)>,
        excluded: BTreeSet<u64>,
        provenance: Provenance,
    ) -> Result<Self> {
        let mut last = 0u64;
        for &(p, theta) in &entries {
            if p <= last {
                return Err(Error::Validation(format!(
                    "primes not strictly increasing at {p}"
                )));
            }
            last = p;
            if !(0.0..=std::f64::consts::PI).contains(&theta) {
                return Err(Error::Validation(format!(
                    "angle {theta} at prime {p} outside [0, pi]"
                )));
            }
            if excluded.contains(&p) {
                return Err(Error::Validation(format!(
                    "prime {p} appears both in entries and in the excluded set"
                )));
            }
        }
        Ok(AngleSequence { entries, excluded, provenance })
    }

    pub fn entries(&self) -> &[(u64, f64)] {
        &self.entries
    }

    pub fn excluded(&self) -> &BTreeSet<u64> {
        &self.excluded
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn covered_to(&self) -> u64 {
        self.provenance.covered_to
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Merge-join on primes: `(p, theta, theta')` over primes present in
    /// both sequences. Exclusion sets are already reflected in `entries`.
    pub fn common_good(&self, other: &AngleSequence) -> Vec<(u64, f64, f64)> {
        let mut out = Vec::with_capacity(self.len().min(other.len()));
        let (mut i, mut j) = (0usize, 0usize);
        while i < self.entries.len() && j < other.entries.len() {
            let (p, a) = self.entries[i];
            let (q, b) = other.entries[j];
            match p.cmp(&q) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push((p, a, b));
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    /// Sub-sequence over the primes satisfying `keep`.
    pub fn restrict(&self, keep: impl Fn(u64) -> bool) -> AngleSequence {
        AngleSequence {
            entries: self
                .entries
                .iter()
                .copied()
                .filter(|&(p, _)| keep(p))
                .collect(),
            excluded: self.excluded.clone(),
            provenance: self.provenance.clone(),
        }
    }
}

/// Convert traces to Satake angles: `theta = arccos(a_p / (2 sqrt p))`,
/// clamped against floating spill at the Hasse boundary.
pub fn angles_from_traces(
    traces: &[TracePoint],
    excluded: BTreeSet<u64>,
    provenance: Provenance,
) -> Result<AngleSequence> {
    let mut entries = Vec::with_capacity(traces.len());
    for t in traces {
        if !t.satisfies_hasse() {
            return Err(Error::HasseViolation {
                prime: t.prime,
                trace: t.trace,
            });
        }
        entries.push((t.prime, t.normalized().clamp(-1.0, 1.0).acos()));
    }
    AngleSequence::new(entries, excluded, provenance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn prov() -> Provenance {
        Provenance {
            label: "test".into(),
            covered_to: 100,
            digest: String::new(),
        }
    }

    #[test]
    fn zero_trace_maps_to_right_angle() {
        let seq = angles_from_traces(
            &[TracePoint { prime: 5, trace: 0 }],
            BTreeSet::new(),
            prov(),
        )
        .unwrap();
        assert!((seq.entries()[0].1 - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn hasse_boundary_clamps_to_zero_angle() {
        // (4, 4) sits exactly on the bound: 4^2 = 4*4, normalized trace 1
        let seq = angles_from_traces(
            &[TracePoint { prime: 4, trace: 4 }],
            BTreeSet::new(),
            prov(),
        )
        .unwrap();
        assert_eq!(seq.entries()[0].1, 0.0);
    }

    #[test]
    fn hasse_violation_names_the_prime() {
        let err = angles_from_traces(
            &[TracePoint { prime: 5, trace: 5 }],
            BTreeSet::new(),
            prov(),
        )
        .unwrap_err();
        match err {
            Error::HasseViolation { prime, trace } => {
                assert_eq!((prime, trace), (5, 5));
            }
            other => panic!("wrong error {other}"),
        }
    }

    #[test]
    fn sequence_invariants_enforced() {
        assert!(AngleSequence::new(vec![(5, 0.1), (5, 0.2)], BTreeSet::new(), prov()).is_err());
        assert!(AngleSequence::new(vec![(7, 0.1), (5, 0.2)], BTreeSet::new(), prov()).is_err());
        assert!(AngleSequence::new(vec![(5, -0.1)], BTreeSet::new(), prov()).is_err());
        assert!(AngleSequence::new(
            vec![(5, 0.1)],
            [5u64].into_iter().collect(),
            prov()
        )
        .is_err());
    }

    #[test]
    fn merge_join_intersects() {
        let a = AngleSequence::new(vec![(5, 0.1), (7, 0.2), (11, 0.3)], BTreeSet::new(), prov())
            .unwrap();
        let b = AngleSequence::new(vec![(7, 0.5), (11, 0.6), (13, 0.7)], BTreeSet::new(), prov())
            .unwrap();
        assert_eq!(a.common_good(&b), vec![(7, 0.2, 0.5), (11, 0.3, 0.6)]);
    }
}
