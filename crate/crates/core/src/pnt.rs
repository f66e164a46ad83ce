//! Partial sums of Rankin-Selberg coefficients over primes, central
//! character bucketing, and the prime-number-theorem-shaped decay bound.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::angles::AngleSequence;
use crate::error::{Error, Result};
use crate::roots::RootOfUnity;
use crate::satake::u_eval;
use crate::sato_tate::BoundProfile;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SumCheckpoint {
    pub x: u64,
    pub sum_re: f64,
    pub sum_im: f64,
    pub prime_count: u64,
}

impl SumCheckpoint {
    pub fn sum(&self) -> Complex64 {
        Complex64::new(self.sum_re, self.sum_im)
    }

    pub fn normalized(&self) -> f64 {
        if self.prime_count == 0 {
            0.0
        } else {
            self.sum().norm() / self.prime_count as f64
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PartialSumSeries {
    pub m: u32,
    pub n: u32,
    pub checkpoints: Vec<SumCheckpoint>,
}

/// Per-prime twist values; `Trivial` means the constant 1.
#[derive(Debug, Clone)]
pub enum TwistValues {
    Trivial,
    PerPrime(BTreeMap<u64, RootOfUnity>),
}

impl TwistValues {
    fn at(&self, p: u64) -> Result<Complex64> {
        match self {
            TwistValues::Trivial => Ok(Complex64::new(1.0, 0.0)),
            TwistValues::PerPrime(map) => map
                .get(&p)
                .map(|r| r.value::<f64>())
                .ok_or(Error::MissingCharacter(p)),
        }
    }
}

/// Partial sums of `U_m(cos theta_p) U_n(cos theta'_p) twist(p)` over the
/// common good primes, recorded at each checkpoint. The unit-root
/// prefactor `zeta^{-m} zeta'^{-n}` converts to coefficient normalization
/// when the central characters are nontrivial.
///
/// Terms are accumulated over fixed blocks in prime order, so results are
/// identical for every worker count.
pub fn coeff_partial_sum(
    seq: &AngleSequence,
    seq_prime: &AngleSequence,
    m: u32,
    n: u32,
    twists: &TwistValues,
    zeta: &RootOfUnity,
    zeta_prime: &RootOfUnity,
    checkpoints: &[u64],
) -> Result<PartialSumSeries> {
    if m == 0 && n == 0 {
        return Err(Error::Precondition("partial sums need (m, n) != (0, 0)".into()));
    }
    if checkpoints.is_empty() {
        return Err(Error::Argument("at least one checkpoint required".into()));
    }
    let covered = seq.covered_to().min(seq_prime.covered_to());
    let mut last = 0u64;
    for &x in checkpoints {
        if x <= last {
            return Err(Error::Argument("checkpoints must be strictly increasing".into()));
        }
        if x > covered {
            return Err(Error::Truncation(x, covered));
        }
        last = x;
    }

    let common = seq.common_good(seq_prime);
    let terms: Vec<Complex64> = common
        .par_iter()
        .map(|&(p, a, b)| {
            let u = u_eval(m as i64, a) * u_eval(n as i64, b);
            twists.at(p).map(|t| t * u)
        })
        .collect::<Result<_>>()?;

    let prefactor =
        zeta.pow(-(m as i64)).value::<f64>() * zeta_prime.pow(-(n as i64)).value::<f64>();

    // block partial sums in prime order, then a sequential scan
    const BLOCK: usize = 4096;
    let block_sums: Vec<Complex64> = terms
        .par_chunks(BLOCK)
        .map(|c| c.iter().fold(Complex64::new(0.0, 0.0), |acc, &v| acc + v))
        .collect();

    let mut out = Vec::with_capacity(checkpoints.len());
    for &x in checkpoints {
        let upto = common.partition_point(|&(p, _, _)| p <= x);
        let full_blocks = upto / BLOCK;
        let mut acc = block_sums[..full_blocks]
            .iter()
            .fold(Complex64::new(0.0, 0.0), |a, &v| a + v);
        for t in &terms[full_blocks * BLOCK..upto] {
            acc += t;
        }
        let acc = acc * prefactor;
        out.push(SumCheckpoint {
            x,
            sum_re: acc.re,
            sum_im: acc.im,
            prime_count: upto as u64,
        });
    }
    Ok(PartialSumSeries { m, n, checkpoints: out })
}

/// Diagnostic mass of the discarded second prime-power layer: the sum of
/// `U_m(cos 2 theta_p) U_n(cos 2 theta'_p) twist(p)^2` over the common
/// good primes with `p^2 <= x`. The main partial sums keep only the
/// first-power terms; this measures what that truncation drops.
pub fn ell2_mass(
    seq: &AngleSequence,
    seq_prime: &AngleSequence,
    m: u32,
    n: u32,
    twists: &TwistValues,
    x: u64,
) -> Result<SumCheckpoint> {
    if m == 0 && n == 0 {
        return Err(Error::Precondition("partial sums need (m, n) != (0, 0)".into()));
    }
    let root = x.isqrt();
    let covered = seq.covered_to().min(seq_prime.covered_to());
    if root > covered {
        return Err(Error::Truncation(root, covered));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut count = 0u64;
    for (p, a, b) in seq.common_good(seq_prime) {
        if p > root {
            break;
        }
        let u = u_eval(m as i64, 2.0 * a) * u_eval(n as i64, 2.0 * b);
        acc += twists.at(p)?.powu(2) * u;
        count += 1;
    }
    Ok(SumCheckpoint {
        x,
        sum_re: acc.re,
        sum_im: acc.im,
        prime_count: count,
    })
}

/// The decay bound controlling the partial sums:
///
/// ```text
///   x * exp(-(c/8) log x / (M^{2+Y} log(Q C(chi) M) + M sqrt(c d log x)))
///     * (M^{2+Y} log(Q C(chi) M x))^6
/// ```
///
/// with `M = max(m, n)`, monotone increasing in `M` at fixed `x`.
pub fn pnt_bound(profile: &BoundProfile, m: u32, n: u32, c_chi_log: f64, x: f64) -> Result<f64> {
    profile.validate()?;
    let mm = m.max(n);
    if mm == 0 {
        return Err(Error::Precondition("pnt bound needs max(m, n) >= 1".into()));
    }
    if !(x >= 2.0) {
        return Err(Error::Argument(format!("cutoff x = {x} must be >= 2")));
    }
    if c_chi_log < 0.0 {
        return Err(Error::Argument("log C(chi) must be non-negative".into()));
    }
    let mm = mm as f64;
    let log_x = x.ln();
    let y = profile.y_max as f64;
    let deg = profile.field_degree as f64;
    let m_pow = mm.powf(2.0 + y);
    let log_qcm = profile.log_q + c_chi_log + mm.ln();
    let denom = m_pow * log_qcm + mm * (profile.c_main * deg * log_x).sqrt();
    let exp_part = (-(profile.c_main / 8.0) * log_x / denom).exp();
    let poly_part = (m_pow * (log_qcm + log_x)).powi(6);
    Ok(x * exp_part * poly_part)
}

/// Per-prime central-character values for both sequences.
#[derive(Debug, Clone)]
pub enum CharacterValues {
    Trivial,
    PerPrime(BTreeMap<u64, (RootOfUnity, RootOfUnity)>),
}

#[derive(Debug, Clone, Serialize)]
pub struct CharacterBuckets {
    /// Exact-equality grouping by the pair of character values.
    pub buckets: BTreeMap<(RootOfUnity, RootOfUnity), Vec<u64>>,
    pub total: u64,
}

/// Partition the common good primes by the pair of central-character
/// values. Trivial characters give one bucket holding everything.
pub fn bucket_by_characters(
    seq: &AngleSequence,
    seq_prime: &AngleSequence,
    values: &CharacterValues,
) -> Result<CharacterBuckets> {
    let common = seq.common_good(seq_prime);
    let mut buckets: BTreeMap<(RootOfUnity, RootOfUnity), Vec<u64>> = BTreeMap::new();
    for &(p, _, _) in &common {
        let key = match values {
            CharacterValues::Trivial => (RootOfUnity::one(), RootOfUnity::one()),
            CharacterValues::PerPrime(map) => {
                *map.get(&p).ok_or(Error::MissingCharacter(p))?
            }
        };
        buckets.entry(key).or_default().push(p);
    }
    Ok(CharacterBuckets {
        total: common.len() as u64,
        buckets,
    })
}
