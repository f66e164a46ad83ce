//! CSV and JSON rendering of the analysis artifacts.
//!
//! Every CSV starts with `#` comment lines echoing the configuration that
//! produced it. Worker counts are deliberately not echoed: they never
//! change any output byte, and the determinism suite compares renders
//! across pool sizes.

use serde::Serialize;

use crate::angles::{AngleSequence, TracePoint};
use crate::majorant::CalibrationRow;
use crate::pnt::PartialSumSeries;
use crate::sato_tate::{BoundProfile, DiscrepancyReport, EffectiveBound, SandwichOutcome};

/// Configuration echo prepended to every report.
#[derive(Debug, Clone, Serialize)]
pub struct ReportMeta {
    pub tool: String,
    pub command: String,
    pub profile: Option<BoundProfile>,
    pub notes: Vec<(String, String)>,
}

impl ReportMeta {
    pub fn new(command: impl Into<String>) -> Self {
        ReportMeta {
            tool: format!("stlab {}", crate::VERSION),
            command: command.into(),
            profile: None,
            notes: Vec::new(),
        }
    }

    pub fn with_profile(mut self, profile: &BoundProfile) -> Self {
        self.profile = Some(*profile);
        self
    }

    pub fn note(mut self, key: &str, value: impl std::fmt::Display) -> Self {
        self.notes.push((key.to_string(), value.to_string()));
        self
    }

    fn header(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# tool: {}\n", self.tool));
        out.push_str(&format!("# command: {}\n", self.command));
        if let Some(p) = &self.profile {
            out.push_str(&format!(
                "# profile: c_main={} c_cdt={} c_st={} field_degree={} log_q={} y={}\n",
                p.c_main, p.c_cdt, p.c_st, p.field_degree, p.log_q, p.y_max
            ));
        }
        for (k, v) in &self.notes {
            out.push_str(&format!("# {k}: {v}\n"));
        }
        out
    }
}

pub fn traces_csv(meta: &ReportMeta, rows: &[TracePoint]) -> String {
    let mut out = meta.header();
    out.push_str("prime,trace\n");
    for t in rows {
        out.push_str(&format!("{},{}\n", t.prime, t.trace));
    }
    out
}

pub fn angles_csv(meta: &ReportMeta, seq: &AngleSequence) -> String {
    let mut out = meta.header();
    out.push_str("prime,angle\n");
    for &(p, theta) in seq.entries() {
        out.push_str(&format!("{p},{theta}\n"));
    }
    out
}

pub fn discrepancy_csv(meta: &ReportMeta, rows: &[DiscrepancyReport]) -> String {
    let mut out = meta.header();
    out.push_str(
        "x,interval_lo,interval_hi,interval2_lo,interval2_hi,empirical,reference,abs_error,effective_bound,primes\n",
    );
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            r.x,
            r.interval.0,
            r.interval.1,
            r.interval2.0,
            r.interval2.1,
            r.empirical,
            r.reference,
            r.abs_error,
            r.effective_bound,
            r.prime_count
        ));
    }
    out
}

pub fn sandwich_csv(meta: &ReportMeta, rows: &[SandwichOutcome]) -> String {
    let mut out = meta.header();
    out.push_str(
        "x,degree,interval_lo,interval_hi,interval2_lo,interval2_hi,lower_sum,count,upper_sum,lower_margin,upper_margin,primes\n",
    );
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.x,
            r.degree,
            r.interval.0,
            r.interval.1,
            r.interval2.0,
            r.interval2.1,
            r.lower_sum,
            r.indicator_count,
            r.upper_sum,
            r.lower_margin,
            r.upper_margin,
            r.primes
        ));
    }
    out
}

pub fn pnt_csv(meta: &ReportMeta, series: &[PartialSumSeries], bounds: &[Vec<f64>]) -> String {
    let mut out = meta.header();
    out.push_str("m,n,x,re_sum,im_sum,primes,normalized,bound_ratio\n");
    for (s, b) in series.iter().zip(bounds) {
        for (c, ratio) in s.checkpoints.iter().zip(b) {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                s.m,
                s.n,
                c.x,
                c.sum_re,
                c.sum_im,
                c.prime_count,
                c.normalized(),
                ratio
            ));
        }
    }
    out
}

pub fn majorant_csv(meta: &ReportMeta, rows: &[CalibrationRow]) -> String {
    let mut out = meta.header();
    out.push_str("degree,i1_lo,i1_hi,i2_lo,i2_hi,measured_k,measured_k_prime,max_violation\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.degree, r.i1_lo, r.i1_hi, r.i2_lo, r.i2_hi, r.measured_k, r.measured_k_prime, r.max_violation
        ));
    }
    out
}

pub fn bounds_csv(meta: &ReportMeta, rows: &[(f64, EffectiveBound)]) -> String {
    let mut out = meta.header();
    out.push_str("x,bound,cutoff,log_x_threshold\n");
    for (x, b) in rows {
        out.push_str(&format!("{},{},{},{}\n", x, b.value, b.cutoff, b.log_x_threshold));
    }
    out
}

/// JSON rendering of any serializable report payload, with the meta block
/// attached.
pub fn to_json<T: Serialize>(meta: &ReportMeta, payload: &T) -> crate::Result<String> {
    #[derive(Serialize)]
    struct Wrapper<'a, T> {
        meta: &'a ReportMeta,
        data: &'a T,
    }
    Ok(serde_json::to_string_pretty(&Wrapper { meta, data: payload })?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn headers_and_rows_render() {
        let meta = ReportMeta::new("joint --curve 11a1")
            .with_profile(&BoundProfile::default())
            .note("q_source", "conductor-product");
        let rows = vec![DiscrepancyReport {
            x: 1000,
            interval: (0.0, 1.5),
            interval2: (0.0, 3.0),
            empirical: 0.5,
            reference: 0.48,
            abs_error: 0.02,
            effective_bound: 1.2,
            prime_count: 160,
        }];
        let csv = discrepancy_csv(&meta, &rows);
        assert!(csv.starts_with("# tool: stlab"));
        assert!(csv.contains("# command: joint --curve 11a1"));
        assert!(csv.contains("# q_source: conductor-product"));
        assert!(csv.contains("1000,0,1.5,0,3,0.5,0.48,0.02,1.2,160"));
        let json = to_json(&meta, &rows).unwrap();
        assert!(json.contains("\"empirical\": 0.5"));
    }
}
