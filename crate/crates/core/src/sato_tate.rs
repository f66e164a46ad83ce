//! Sato-Tate measures, empirical discrepancies, the finite-data sandwich
//! check, and the effective convergence bound.

use serde::Serialize;

use crate::angles::AngleSequence;
use crate::error::{Error, Result};
use crate::majorant::{Interval, TrigPoly2D};
use crate::parallel::det_sum;
use crate::scalar::Scalar;

/// Semicircle measure of `[lo, hi]` in `[-1, 1]`:
/// `(1/pi) [t sqrt(1 - t^2) + arcsin t]` between the endpoints.
pub fn mu_st<T: Scalar>(lo: T, hi: T) -> Result<T> {
    if lo < -T::one() || hi > T::one() || lo > hi {
        return Err(Error::Domain(format!("interval [{lo}, {hi}] outside [-1, 1]")));
    }
    let f = |t: T| (t * (T::one() - t * t).max(T::zero()).sqrt() + t.asin()) / T::PI();
    Ok(f(hi) - f(lo))
}

/// Angle form on `[0, pi]`: mass of `(2/pi) sin^2(theta) d theta`.
pub fn mu_st_angle<T: Scalar>(lo: T, hi: T) -> Result<T> {
    if lo < T::zero() || hi > T::PI() || lo > hi {
        return Err(Error::Domain(format!("interval [{lo}, {hi}] outside [0, pi]")));
    }
    let two = T::c(2.0);
    Ok((hi - lo) / T::PI() - ((two * hi).sin() - (two * lo).sin()) / (two * T::PI()))
}

/// The configurable absolute constants feeding every bound. The analytic
/// constants of the underlying theory are effectively computable but not
/// pinned numerically anywhere, so they are profile inputs (default 1)
/// reported alongside every bound and never asserted against data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundProfile {
    /// Zero-free-region constant, in (0, 1].
    pub c_main: f64,
    /// Chebotarev-count constant, >= 1.
    pub c_cdt: f64,
    /// Outer constant of the effective bound (stand-in, default 1).
    pub c_st: f64,
    /// Field degree over Q.
    pub field_degree: u32,
    /// log of the conductor-product stand-in for C(pi) C(pi').
    pub log_q: f64,
    /// 0 or 2, the worse of the two ramification classes.
    pub y_max: u8,
}

impl Default for BoundProfile {
    fn default() -> Self {
        BoundProfile {
            c_main: 1.0,
            c_cdt: 1.0,
            c_st: 1.0,
            field_degree: 1,
            log_q: 1.0,
            y_max: 0,
        }
    }
}

impl BoundProfile {
    pub fn validate(&self) -> Result<()> {
        if !(self.c_main > 0.0 && self.c_main <= 1.0) {
            return Err(Error::Argument(format!("c_main {} outside (0, 1]", self.c_main)));
        }
        if self.c_cdt < 1.0 {
            return Err(Error::Argument(format!("c_cdt {} < 1", self.c_cdt)));
        }
        if self.c_st <= 0.0 {
            return Err(Error::Argument("c_st must be positive".into()));
        }
        if self.field_degree == 0 {
            return Err(Error::Argument("field degree must be >= 1".into()));
        }
        if self.log_q <= 0.0 {
            return Err(Error::Argument("log Q must be positive".into()));
        }
        if self.y_max != 0 && self.y_max != 2 {
            return Err(Error::Argument(format!("y_max {} must be 0 or 2", self.y_max)));
        }
        Ok(())
    }

    fn exponent(&self) -> f64 {
        2.0 / (2.0 + self.y_max as f64)
    }
}

/// Evaluated effective bound at one cutoff.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EffectiveBound {
    /// `c_st * sqrt(deg) * (log(Q log x) / sqrt(log x))^(2/(2+Y))`.
    pub value: f64,
    /// The Chebyshev cutoff the proof machinery would use at this x.
    pub cutoff: f64,
    /// log of the smallest x the bound regime formally covers.
    pub log_x_threshold: f64,
}

/// Effective bound as a function of `log x`; exposed separately because
/// the formal validity threshold sits far beyond floating range for x
/// itself.
pub fn effective_bound_at_log(profile: &BoundProfile, log_x: f64) -> Result<EffectiveBound> {
    profile.validate()?;
    if !(log_x > 0.0) {
        return Err(Error::Argument(format!("log x {log_x} must be positive")));
    }
    let deg = profile.field_degree as f64;
    let log_q_log_x = profile.log_q + log_x.ln();
    let inner = log_q_log_x / log_x.sqrt();
    let value = profile.c_st * deg.sqrt() * inner.powf(profile.exponent());
    let cutoff = ((profile.c_main * log_x).sqrt()
        / ((16.0 * profile.c_cdt + 224.0) * log_q_log_x))
        .powf(profile.exponent())
        / deg.sqrt();
    let log_x_threshold = ((16.0 * profile.c_cdt + 224.0) / profile.c_main).powi(4)
        * deg.powf(1.0 + profile.y_max as f64 / 2.0)
        * profile.log_q.powi(2);
    Ok(EffectiveBound {
        value,
        cutoff,
        log_x_threshold,
    })
}

pub fn effective_bound(profile: &BoundProfile, x: f64) -> Result<EffectiveBound> {
    if !(x >= 2.0) {
        return Err(Error::Argument(format!("cutoff x = {x} must be >= 2")));
    }
    effective_bound_at_log(profile, x.ln())
}

/// One row of an empirical-against-limit comparison.
#[derive(Debug, Clone, Serialize)]
pub struct DiscrepancyReport {
    pub x: u64,
    pub interval: (f64, f64),
    pub interval2: (f64, f64),
    pub empirical: f64,
    pub reference: f64,
    pub abs_error: f64,
    pub effective_bound: f64,
    pub prime_count: u64,
}

fn check_coverage(seq: &AngleSequence, x: u64) -> Result<()> {
    if x > seq.covered_to() {
        return Err(Error::Truncation(x, seq.covered_to()));
    }
    Ok(())
}

/// Joint empirical frequency of `(theta, theta') in I x I'` over the
/// common good primes up to `x`, against the product reference.
pub fn joint_discrepancy(
    seq: &AngleSequence,
    seq_prime: &AngleSequence,
    i1: &Interval<f64>,
    i2: &Interval<f64>,
    x: u64,
    profile: &BoundProfile,
) -> Result<DiscrepancyReport> {
    check_coverage(seq, x)?;
    check_coverage(seq_prime, x)?;
    let common = seq.common_good(seq_prime);
    let mut total = 0u64;
    let mut hits = 0u64;
    for &(p, a, b) in &common {
        if p > x {
            break;
        }
        total += 1;
        if i1.contains(a) && i2.contains(b) {
            hits += 1;
        }
    }
    if total == 0 {
        return Err(Error::EmptySample(format!(
            "no common good primes <= {x} for {} and {}",
            seq.provenance().label,
            seq_prime.provenance().label
        )));
    }
    let empirical = hits as f64 / total as f64;
    let reference = mu_st_angle(i1.lo(), i1.hi())? * mu_st_angle(i2.lo(), i2.hi())?;
    let bound = effective_bound(profile, x as f64)?.value;
    Ok(DiscrepancyReport {
        x,
        interval: (i1.lo(), i1.hi()),
        interval2: (i2.lo(), i2.hi()),
        empirical,
        reference,
        abs_error: (empirical - reference).abs(),
        effective_bound: bound,
        prime_count: total,
    })
}

/// Single-sequence discrepancy; the second interval is reported as the
/// full `[0, pi]`.
pub fn discrepancy(
    seq: &AngleSequence,
    i1: &Interval<f64>,
    x: u64,
    profile: &BoundProfile,
) -> Result<DiscrepancyReport> {
    check_coverage(seq, x)?;
    let mut total = 0u64;
    let mut hits = 0u64;
    for &(p, a) in seq.entries() {
        if p > x {
            break;
        }
        total += 1;
        if i1.contains(a) {
            hits += 1;
        }
    }
    if total == 0 {
        return Err(Error::EmptySample(format!("no good primes <= {x}")));
    }
    let empirical = hits as f64 / total as f64;
    let reference = mu_st_angle(i1.lo(), i1.hi())?;
    let bound = effective_bound(profile, x as f64)?.value;
    Ok(DiscrepancyReport {
        x,
        interval: (i1.lo(), i1.hi()),
        interval2: (0.0, std::f64::consts::PI),
        empirical,
        reference,
        abs_error: (empirical - reference).abs(),
        effective_bound: bound,
        prime_count: total,
    })
}

/// Outcome of one finite-data sandwich instance. Margins are
/// non-negative when the inequalities hold.
#[derive(Debug, Clone, Serialize)]
pub struct SandwichOutcome {
    pub x: u64,
    pub degree: usize,
    pub interval: (f64, f64),
    pub interval2: (f64, f64),
    pub lower_sum: f64,
    pub indicator_count: u64,
    pub upper_sum: f64,
    pub lower_margin: f64,
    pub upper_margin: f64,
    pub primes: u64,
}

/// Check `sum_p T^-(theta_p, theta'_p) <= #{p : angles in I x I'}
/// <= sum_p T^+(...)` over the common good primes up to `x`.
///
/// This is a pointwise consequence of the sandwich property, so a failure
/// is an internal assertion, reported as [`Error::SandwichViolation`].
pub fn sandwich_check(
    seq: &AngleSequence,
    seq_prime: &AngleSequence,
    minus: &TrigPoly2D<f64>,
    plus: &TrigPoly2D<f64>,
    i1: &Interval<f64>,
    i2: &Interval<f64>,
    x: u64,
) -> Result<SandwichOutcome> {
    check_coverage(seq, x)?;
    check_coverage(seq_prime, x)?;
    let common: Vec<(u64, f64, f64)> = seq
        .common_good(seq_prime)
        .into_iter()
        .take_while(|&(p, _, _)| p <= x)
        .collect();
    if common.is_empty() {
        return Err(Error::EmptySample(format!("no common good primes <= {x}")));
    }
    let lower_terms: Vec<f64> = common
        .iter()
        .map(|&(_, a, b)| minus.eval(a, b))
        .collect();
    let upper_terms: Vec<f64> = common
        .iter()
        .map(|&(_, a, b)| plus.eval(a, b))
        .collect();
    let lower_sum = det_sum(&lower_terms);
    let upper_sum = det_sum(&upper_terms);
    let count = common
        .iter()
        .filter(|&&(_, a, b)| i1.contains(a) && i2.contains(b))
        .count() as u64;

    let tol = 1e-6 * common.len() as f64;
    let lower_margin = count as f64 - lower_sum;
    let upper_margin = upper_sum - count as f64;
    if lower_margin < -tol {
        return Err(Error::SandwichViolation {
            side: "lower",
            margin: lower_margin,
        });
    }
    if upper_margin < -tol {
        return Err(Error::SandwichViolation {
            side: "upper",
            margin: upper_margin,
        });
    }
    Ok(SandwichOutcome {
        x,
        degree: minus.degree(),
        interval: (i1.lo(), i1.hi()),
        interval2: (i2.lo(), i2.hi()),
        lower_sum,
        indicator_count: count,
        upper_sum,
        lower_margin,
        upper_margin,
        primes: common.len() as u64,
    })
}
