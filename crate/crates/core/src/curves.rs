//! Integral Weierstrass models over Q and the built-in curve table.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sieve::is_prime_u64;

/// Integral Weierstrass quintuple with its bad-prime set. The discriminant
/// is computed exactly in i128; `bad_primes` is exactly the set of prime
/// divisors of the discriminant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveModel {
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
    pub a4: i64,
    pub a6: i64,
    pub label: String,
    discriminant: i128,
    bad_primes: BTreeSet<u64>,
    conductor: Option<u64>,
}

impl CurveModel {
    pub fn new(label: &str, a: [i64; 5]) -> Result<Self> {
        Self::with_conductor(label, a, None)
    }

    pub fn with_conductor(label: &str, a: [i64; 5], conductor: Option<u64>) -> Result<Self> {
        let [a1, a2, a3, a4, a6] = a;
        let disc = discriminant(a1, a2, a3, a4, a6);
        if disc == 0 {
            return Err(Error::Argument(format!("curve {label} is singular (discriminant 0)")));
        }
        let bad_primes = factor_abs(disc)?;
        Ok(CurveModel {
            a1,
            a2,
            a3,
            a4,
            a6,
            label: label.to_string(),
            discriminant: disc,
            bad_primes,
            conductor,
        })
    }

    pub fn coefficients(&self) -> [i64; 5] {
        [self.a1, self.a2, self.a3, self.a4, self.a6]
    }

    pub fn discriminant(&self) -> i128 {
        self.discriminant
    }

    pub fn bad_primes(&self) -> &BTreeSet<u64> {
        &self.bad_primes
    }

    /// Known conductor, if any. Built-in curves carry theirs; for custom
    /// models the reports fall back to |discriminant|.
    pub fn conductor(&self) -> Option<u64> {
        self.conductor
    }

    /// log of the conductor when known, else log |discriminant|.
    pub fn log_conductor_approx(&self) -> f64 {
        match self.conductor {
            Some(n) => (n as f64).ln(),
            None => (self.discriminant.unsigned_abs() as f64).ln(),
        }
    }

    /// Good reduction and short-Weierstrass territory: `p > 3`, `p` prime,
    /// not dividing the discriminant.
    pub fn is_good(&self, p: u64) -> bool {
        p > 3 && !self.bad_primes.contains(&p) && is_prime_u64(p)
    }

    /// Primes excluded from angle sequences: bad primes plus 2 and 3.
    pub fn excluded_primes(&self) -> BTreeSet<u64> {
        let mut out = self.bad_primes.clone();
        out.insert(2);
        out.insert(3);
        out
    }

    /// Reduction `y^2 = x^3 + Ax + B` mod `p` (valid for `p > 3`).
    pub fn short_weierstrass_mod(&self, p: u64) -> (u64, u64) {
        debug_assert!(p > 3);
        let p128 = p as i128;
        let b2 = self.a1 as i128 * self.a1 as i128 + 4 * self.a2 as i128;
        let b4 = 2 * self.a4 as i128 + self.a1 as i128 * self.a3 as i128;
        let b6 = self.a3 as i128 * self.a3 as i128 + 4 * self.a6 as i128;
        let c4 = b2 * b2 - 24 * b4;
        let c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
        let a = (-27 * c4).rem_euclid(p128) as u64;
        let b = (-54 * c6).rem_euclid(p128) as u64;
        (a, b)
    }

    /// The five reference curves shipped with the tool. All are non-CM.
    pub fn builtin(label: &str) -> Option<CurveModel> {
        let (a, conductor) = match label {
            "11a1" => ([0, -1, 1, -10, -20], 11),
            "37a1" => ([0, 0, 1, -1, 0], 37),
            "43a1" => ([0, 1, 1, 0, 0], 43),
            "389a1" => ([0, 1, 1, -2, 0], 389),
            "5077a1" => ([0, 0, 1, -7, 6], 5077),
            _ => return None,
        };
        Some(
            CurveModel::with_conductor(label, a, Some(conductor))
                .expect("built-in curves are non-singular"),
        )
    }

    pub fn builtin_labels() -> &'static [&'static str] {
        &["11a1", "37a1", "43a1", "389a1", "5077a1"]
    }
}

fn discriminant(a1: i64, a2: i64, a3: i64, a4: i64, a6: i64) -> i128 {
    let (a1, a2, a3, a4, a6) =
        (a1 as i128, a2 as i128, a3 as i128, a4 as i128, a6 as i128);
    let b2 = a1 * a1 + 4 * a2;
    let b4 = 2 * a4 + a1 * a3;
    let b6 = a3 * a3 + 4 * a6;
    let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
}

/// Prime divisors of |n| by trial division plus a Miller-Rabin finish.
fn factor_abs(n: i128) -> Result<BTreeSet<u64>> {
    let mut rem = n.unsigned_abs();
    let mut out = BTreeSet::new();
    let mut d: u128 = 2;
    while d * d <= rem && d < 10_000_000 {
        if rem % d == 0 {
            out.insert(d as u64);
            while rem % d == 0 {
                rem /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rem > 1 {
        let r64 = u64::try_from(rem)
            .map_err(|_| Error::Argument("discriminant cofactor too large to factor".into()))?;
        if is_prime_u64(r64) {
            out.insert(r64);
        } else {
            return Err(Error::Argument(format!(
                "discriminant cofactor {r64} is composite and out of trial-division range"
            )));
        }
    }
    Ok(out)
}
