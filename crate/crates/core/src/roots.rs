//! Roots of unity as exact rational rotations of the circle.
//!
//! A value `k/n` stands for `exp(2*pi*i*k/n)`. Keeping the rotation as a
//! reduced fraction makes multiplication, powers, conjugation, and equality
//! exact; the floating representation is produced only at evaluation time.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest order accepted from external input. Internal operations
/// (products, canonical square roots) may exceed it transiently.
pub const MAX_ORDER: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootOfUnity {
    /// Reduced numerator of the rotation, `0 <= num < den`.
    num: u64,
    /// Reduced denominator; equals the multiplicative order.
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl RootOfUnity {
    /// The trivial root `1`.
    pub fn one() -> Self {
        RootOfUnity { num: 0, den: 1 }
    }

    /// `exp(2*pi*i*num/den)`, validated against [`MAX_ORDER`].
    pub fn new(num: i64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Argument("root of unity with zero denominator".into()));
        }
        let r = Self::reduced(num, den);
        if r.den > MAX_ORDER {
            return Err(Error::Argument(format!(
                "root-of-unity order {} exceeds cap {}",
                r.den, MAX_ORDER
            )));
        }
        Ok(r)
    }

    fn reduced(num: i64, den: u64) -> Self {
        let d = den as i128;
        let n = ((num as i128 % d) + d) % d;
        let g = gcd(n as u64, den);
        RootOfUnity {
            num: n as u64 / g,
            den: den / g,
        }
    }

    pub fn is_one(&self) -> bool {
        self.num == 0
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        self.den
    }

    pub fn mul(&self, other: &RootOfUnity) -> RootOfUnity {
        let den = self.den / gcd(self.den, other.den) * other.den;
        let num = (self.num as i128 * (den / self.den) as i128
            + other.num as i128 * (den / other.den) as i128) as i64;
        Self::reduced(num, den)
    }

    pub fn pow(&self, e: i64) -> RootOfUnity {
        let num = (self.num as i128 * e as i128 % self.den as i128) as i64;
        Self::reduced(num, self.den)
    }

    pub fn conj(&self) -> RootOfUnity {
        self.pow(-1)
    }

    /// Canonical square root: the rotation `k/(2n)`. Its square is `self`.
    pub fn sqrt(&self) -> RootOfUnity {
        Self::reduced(self.num as i64, 2 * self.den)
    }

    /// Floating evaluation `exp(2*pi*i*num/den)`.
    pub fn value<T: Scalar>(&self) -> Complex<T> {
        let angle = T::c(2.0) * T::PI() * T::from_int(self.num as i64) / T::from_int(self.den as i64);
        Complex::new(angle.cos(), angle.sin())
    }
}

impl std::fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "e({}/{})", self.num, self.den)
    }
}
