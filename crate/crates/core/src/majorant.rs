//! Two-dimensional majorants and minorants of interval indicators in the
//! Chebyshev-U (x) Chebyshev-U basis.
//!
//! The one-dimensional constituents are the classical Selberg polynomials,
//! assembled from Vaaler's approximation to the sawtooth
//! `psi(x) = {x} - 1/2`. With `K = M + 1` and the Fejer kernel
//! `F_M(x) = sum_{|k|<=M} (1 - |k|/K) e(kx)`,
//!
//! ```text
//!   psi^{+-}(x) = V_M(x) +- F_M(x) / (2K),
//!   V_M(x)      = -sum_{k=1..M} v(k/K) sin(2 pi k x) / (pi k),
//!   v(t)        = pi t (1 - t) cot(pi t) + t,
//! ```
//!
//! and for `J = [a, b]` in R/Z the majorant/minorant pair is
//!
//! ```text
//!   S^{+-}(x) = (b - a) + psi^{+-}(x - b) - psi^{-+}(x - a).
//! ```
//!
//! `S^+ >= 1_J >= S^-` pointwise, the integral excess and deficit are both
//! exactly `1/(M+1)`, and every Fourier coefficient is within `1/(M+1)` of
//! the corresponding coefficient of `1_J`.
//!
//! Two dimensions: `S^+ = S1^+ S2^+` and
//! `S^- = S1^- S2^+ + S1^+ S2^- - S1^+ S2^+`. Both products mix distinct
//! variables, so the coordinate degree stays `M` and no truncation is ever
//! needed. The angular polynomials are the even symmetrizations
//! `T(theta, theta') = sum_{t1, t2 = +-1} S(t1 theta / 2pi, t2 theta' / 2pi)`,
//! rewritten through `2 cos(m theta) = U_m - U_{m-2}` (with `U_{-1} = 0`,
//! `U_{-2} = -1`) into the coefficient grid `alpha(m, n)` on `[0, M]^2`.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// Closed interval with `lo <= hi`. Semantic constructors validate the
/// ambient domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval<T> {
    lo: T,
    hi: T,
}

impl<T: Scalar> Interval<T> {
    fn checked(lo: T, hi: T, min: T, max: T, what: &str) -> Result<Self> {
        if !(lo <= hi) {
            return Err(Error::Argument(format!("interval [{lo}, {hi}] has lo > hi")));
        }
        if lo < min || hi > max {
            return Err(Error::Domain(format!(
                "interval [{lo}, {hi}] outside {what}"
            )));
        }
        Ok(Interval { lo, hi })
    }

    /// Subinterval of `[0, pi]`.
    pub fn new_angle(lo: T, hi: T) -> Result<Self> {
        Self::checked(lo, hi, T::zero(), T::PI(), "[0, pi]")
    }

    /// Subinterval of `[0, 1]` (a torus arc).
    pub fn new_unit(lo: T, hi: T) -> Result<Self> {
        Self::checked(lo, hi, T::zero(), T::one(), "[0, 1]")
    }

    /// Subinterval of `[-1, 1]`.
    pub fn new_trace(lo: T, hi: T) -> Result<Self> {
        Self::checked(lo, hi, -T::one(), T::one(), "[-1, 1]")
    }

    pub fn lo(&self) -> T {
        self.lo
    }

    pub fn hi(&self) -> T {
        self.hi
    }

    pub fn length(&self) -> T {
        self.hi - self.lo
    }

    /// Closed-interval membership; boundary points count inside.
    pub fn contains(&self, x: T) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// The unit-torus image `[lo/2pi, hi/2pi]` of an angle interval.
    pub fn to_unit(&self) -> Interval<T> {
        let two_pi = T::c(2.0) * T::PI();
        Interval {
            lo: self.lo / two_pi,
            hi: self.hi / two_pi,
        }
    }
}

/// Real-valued trigonometric polynomial on R/Z with Fourier coefficients
/// indexed by `[-degree, degree]`.
#[derive(Debug, Clone)]
pub struct TrigPoly1D<T> {
    degree: usize,
    coeffs: Vec<Complex<T>>,
}

impl<T: Scalar> TrigPoly1D<T> {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff(&self, k: i64) -> Complex<T> {
        let d = self.degree as i64;
        if k < -d || k > d {
            Complex::new(T::zero(), T::zero())
        } else {
            self.coeffs[(k + d) as usize]
        }
    }

    pub fn eval(&self, x: T) -> T {
        let mut acc = self.coeff(0).re;
        let two_pi = T::c(2.0) * T::PI();
        for k in 1..=self.degree as i64 {
            let rot = Complex::from_polar(T::one(), two_pi * T::from_int(k) * x);
            acc += T::c(2.0) * (self.coeff(k) * rot).re;
        }
        acc
    }

    /// Mean value over the torus.
    pub fn mean(&self) -> T {
        self.coeff(0).re
    }
}

fn vaaler_multiplier<T: Scalar>(t: T) -> T {
    let pi_t = T::PI() * t;
    pi_t * (T::one() - t) * (pi_t.cos() / pi_t.sin()) + t
}

/// Fourier coefficients of the sawtooth majorant (`+`) or minorant (`-`)
/// at degree `m`: `psi_hat(k)` for `k` in `[-m, m]`.
fn sawtooth_coeffs<T: Scalar>(m: usize, sign: Sign) -> Vec<Complex<T>> {
    let k_big = T::from_int(m as i64 + 1);
    let s = match sign {
        Sign::Plus => T::one(),
        Sign::Minus => -T::one(),
    };
    let mut out = vec![Complex::new(T::zero(), T::zero()); 2 * m + 1];
    out[m] = Complex::new(s / (T::c(2.0) * k_big), T::zero());
    for k in 1..=m as i64 {
        let kt = T::from_int(k);
        let v = vaaler_multiplier(kt / k_big);
        let fejer = (T::one() - kt / k_big) / (T::c(2.0) * k_big);
        // V_hat(k) = i v(k/K) / (2 pi k); F part is real
        let re = s * fejer;
        let im = v / (T::c(2.0) * T::PI() * kt);
        out[m + k as usize] = Complex::new(re, im);
        out[m - k as usize] = Complex::new(re, -im);
    }
    out
}

/// Selberg majorant (`Sign::Plus`) or minorant (`Sign::Minus`) of the
/// indicator of `j` in R/Z, of degree `m >= 1`.
///
/// Properties, all certified by the test suite: pointwise sandwich,
/// integral excess/deficit exactly `1/(m+1)`, coefficient proximity
/// `|S_hat(k) - 1_J_hat(k)| <= 1/(m+1)`.
pub fn selberg_1d<T: Scalar>(j: &Interval<T>, m: usize, sign: Sign) -> Result<TrigPoly1D<T>> {
    if m < 1 {
        return Err(Error::Argument("selberg degree must be >= 1".into()));
    }
    if j.lo < T::zero() || j.hi > T::one() {
        return Err(Error::Domain(format!(
            "interval [{}, {}] outside [0, 1]",
            j.lo, j.hi
        )));
    }
    let (a, b) = (j.lo, j.hi);
    let k_big = T::from_int(m as i64 + 1);
    let (upper, lower) = (
        sawtooth_coeffs::<T>(m, Sign::Plus),
        sawtooth_coeffs::<T>(m, Sign::Minus),
    );
    // S^+ uses (psi^+ at x-b, psi^- at x-a); S^- swaps them.
    let (at_b, at_a) = match sign {
        Sign::Plus => (&upper, &lower),
        Sign::Minus => (&lower, &upper),
    };
    let two_pi = T::c(2.0) * T::PI();
    let mut coeffs = vec![Complex::new(T::zero(), T::zero()); 2 * m + 1];
    for k in -(m as i64)..=m as i64 {
        let idx = (k + m as i64) as usize;
        if k == 0 {
            let excess = match sign {
                Sign::Plus => T::one() / k_big,
                Sign::Minus => -(T::one() / k_big),
            };
            coeffs[idx] = Complex::new(b - a + excess, T::zero());
        } else {
            let kt = T::from_int(k);
            let shift_b = Complex::from_polar(T::one(), -two_pi * kt * b);
            let shift_a = Complex::from_polar(T::one(), -two_pi * kt * a);
            coeffs[idx] = at_b[idx] * shift_b - at_a[idx] * shift_a;
        }
    }
    Ok(TrigPoly1D { degree: m, coeffs })
}

/// Exact Fourier coefficient of the interval indicator.
pub fn indicator_coeff<T: Scalar>(j: &Interval<T>, k: i64) -> Complex<T> {
    if k == 0 {
        return Complex::new(j.length(), T::zero());
    }
    let two_pi = T::c(2.0) * T::PI();
    let kt = T::from_int(k);
    let ea = Complex::from_polar(T::one(), -two_pi * kt * j.lo);
    let eb = Complex::from_polar(T::one(), -two_pi * kt * j.hi);
    (ea - eb) / Complex::new(T::zero(), two_pi * kt)
}

/// Real-valued trigonometric polynomial on (R/Z)^2, coefficients on
/// `[-degree, degree]^2`.
#[derive(Debug, Clone)]
pub struct FourierPoly2D<T> {
    degree: usize,
    coeffs: Vec<Complex<T>>,
}

impl<T: Scalar> FourierPoly2D<T> {
    fn zero(degree: usize) -> Self {
        let side = 2 * degree + 1;
        FourierPoly2D {
            degree,
            coeffs: vec![Complex::new(T::zero(), T::zero()); side * side],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff(&self, k1: i64, k2: i64) -> Complex<T> {
        let d = self.degree as i64;
        if k1.abs() > d || k2.abs() > d {
            return Complex::new(T::zero(), T::zero());
        }
        let side = 2 * self.degree + 1;
        self.coeffs[(k1 + d) as usize * side + (k2 + d) as usize]
    }

    fn add_outer(&mut self, f: &TrigPoly1D<T>, g: &TrigPoly1D<T>, scale: T) {
        let d = self.degree as i64;
        let side = 2 * self.degree + 1;
        for k1 in -d..=d {
            let a = f.coeff(k1);
            for k2 in -d..=d {
                let idx = (k1 + d) as usize * side + (k2 + d) as usize;
                self.coeffs[idx] += a * g.coeff(k2) * scale;
            }
        }
    }

    pub fn eval(&self, x1: T, x2: T) -> T {
        let two_pi = T::c(2.0) * T::PI();
        let d = self.degree as i64;
        let mut acc = T::zero();
        for k1 in -d..=d {
            let r1 = Complex::from_polar(T::one(), two_pi * T::from_int(k1) * x1);
            let mut inner = Complex::new(T::zero(), T::zero());
            for k2 in -d..=d {
                let r2 = Complex::from_polar(T::one(), two_pi * T::from_int(k2) * x2);
                inner += self.coeff(k1, k2) * r2;
            }
            acc += (inner * r1).re;
        }
        acc
    }
}

/// Two-dimensional majorant (`Plus`) or minorant (`Minus`) of
/// `1_{J1}(x1) 1_{J2}(x2)` of coordinate degree `m`.
///
/// The majorant is the product of the two nonnegative 1-d majorants; the
/// minorant is `S1^- S2^+ + S1^+ S2^- - S1^+ S2^+`, whose sandwich
/// property follows algebraically from the 1-d ones.
pub fn cochrane_2d<T: Scalar>(
    j1: &Interval<T>,
    j2: &Interval<T>,
    m: usize,
    sign: Sign,
) -> Result<FourierPoly2D<T>> {
    if m < 1 {
        return Err(Error::Argument("2d majorant degree must be >= 1".into()));
    }
    let s1p = selberg_1d(j1, m, Sign::Plus)?;
    let s2p = selberg_1d(j2, m, Sign::Plus)?;
    let mut out = FourierPoly2D::zero(m);
    match sign {
        Sign::Plus => {
            out.add_outer(&s1p, &s2p, T::one());
        }
        Sign::Minus => {
            let s1m = selberg_1d(j1, m, Sign::Minus)?;
            let s2m = selberg_1d(j2, m, Sign::Minus)?;
            out.add_outer(&s1m, &s2p, T::one());
            out.add_outer(&s1p, &s2m, T::one());
            out.add_outer(&s1p, &s2p, -T::one());
        }
    }
    Ok(out)
}

/// Coefficient grid over `U_m (x) U_n`, the angular form of a 2-d
/// majorant/minorant.
#[derive(Debug, Clone, Serialize)]
pub struct TrigPoly2D<T> {
    degree: usize,
    alpha: Vec<T>,
}

impl<T: Scalar> TrigPoly2D<T> {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn alpha(&self, m: usize, n: usize) -> T {
        self.alpha[m * (self.degree + 1) + n]
    }

    /// Chebyshev-U values `U_0..U_degree` at `cos(theta)`.
    pub fn u_table(&self, theta: T) -> Vec<T> {
        u_table(self.degree, theta)
    }

    pub fn eval_with_tables(&self, u1: &[T], u2: &[T]) -> T {
        let side = self.degree + 1;
        let mut acc = T::zero();
        for m in 0..side {
            let mut inner = T::zero();
            for n in 0..side {
                inner += self.alpha[m * side + n] * u2[n];
            }
            acc += u1[m] * inner;
        }
        acc
    }

    pub fn eval(&self, theta: T, theta_prime: T) -> T {
        self.eval_with_tables(&self.u_table(theta), &self.u_table(theta_prime))
    }

    /// Evaluate on the full grid `thetas x thetas` in one pass. The
    /// bilinear form is factored through `B = alpha * U^T` so the cost is
    /// `O(G^2 M)` instead of `O(G^2 M^2)`. Row-major output.
    pub fn grid_eval(&self, tables: &[Vec<T>]) -> Vec<T> {
        let side = self.degree + 1;
        let g = tables.len();
        let mut b = vec![T::zero(); side * g];
        for m in 0..side {
            for (j, table) in tables.iter().enumerate() {
                let mut acc = T::zero();
                for n in 0..side {
                    acc += self.alpha[m * side + n] * table[n];
                }
                b[m * g + j] = acc;
            }
        }
        let mut out = vec![T::zero(); g * g];
        for (i, table) in tables.iter().enumerate() {
            for j in 0..g {
                let mut acc = T::zero();
                for m in 0..side {
                    acc += table[m] * b[m * g + j];
                }
                out[i * g + j] = acc;
            }
        }
        out
    }
}

/// `U_0..U_degree` at `cos(theta)` by the stable three-term recurrence.
pub fn u_table<T: Scalar>(degree: usize, theta: T) -> Vec<T> {
    let x2 = T::c(2.0) * theta.cos();
    let mut out = Vec::with_capacity(degree + 1);
    out.push(T::one());
    if degree >= 1 {
        out.push(x2);
    }
    for m in 2..=degree {
        let next = x2 * out[m - 1] - out[m - 2];
        out.push(next);
    }
    out
}

/// Change of basis: even-symmetrize a 2-d Fourier polynomial built for the
/// unit images of the angle intervals and express it over `U_m (x) U_n`.
///
/// The intervals are the ones the Fourier polynomial was built from; they
/// fix the domain convention (`J = I / 2pi`) and are validated here.
pub fn to_chebyshev<T: Scalar>(
    s: &FourierPoly2D<T>,
    i1: &Interval<T>,
    i2: &Interval<T>,
) -> Result<TrigPoly2D<T>> {
    if i1.hi > T::PI() || i2.hi > T::PI() || i1.lo < T::zero() || i2.lo < T::zero() {
        return Err(Error::Domain("angle intervals must lie in [0, pi]".into()));
    }
    let deg = s.degree();
    let side = deg + 1;
    // gamma(a, b) = sum over distinct sign choices of S_hat(+-a, +-b)
    let mut gamma = vec![T::zero(); side * side];
    for a in 0..=deg as i64 {
        for b in 0..=deg as i64 {
            let mut acc = Complex::new(T::zero(), T::zero());
            let k1s: &[i64] = if a == 0 { &[0] } else { &[1, -1] };
            let k2s: &[i64] = if b == 0 { &[0] } else { &[1, -1] };
            for &s1 in k1s {
                for &s2 in k2s {
                    acc += s.coeff(s1 * a, s2 * b);
                }
            }
            // conjugate symmetry of a real polynomial makes this real
            gamma[a as usize * side + b as usize] = acc.re;
        }
    }
    // 2 cos(a theta) = U_a - U_{a-2}; expansions as (index, weight) pairs
    let expansion = |j: usize| -> Vec<(usize, T)> {
        match j {
            0 => vec![(0, T::c(2.0))],
            1 => vec![(1, T::one())],
            _ => vec![(j, T::one()), (j - 2, -T::one())],
        }
    };
    let mut alpha = vec![T::zero(); side * side];
    for a in 0..side {
        let ea = expansion(a);
        for b in 0..side {
            let g = gamma[a * side + b];
            if g == T::zero() {
                continue;
            }
            for &(m, wm) in &ea {
                for &(n, wn) in &expansion(b) {
                    alpha[m * side + n] += g * wm * wn;
                }
            }
        }
    }
    Ok(TrigPoly2D { degree: deg, alpha })
}

/// Majorant/minorant pair for a pair of angle intervals at degree `m`.
pub fn build_majorant_pair<T: Scalar>(
    i1: &Interval<T>,
    i2: &Interval<T>,
    m: usize,
) -> Result<(TrigPoly2D<T>, TrigPoly2D<T>)> {
    let j1 = i1.to_unit();
    let j2 = i2.to_unit();
    let minus = to_chebyshev(&cochrane_2d(&j1, &j2, m, Sign::Minus)?, i1, i2)?;
    let plus = to_chebyshev(&cochrane_2d(&j1, &j2, m, Sign::Plus)?, i1, i2)?;
    Ok((minus, plus))
}

/// Calibration report for one interval pair at one degree.
#[derive(Debug, Clone, Serialize)]
pub struct CalibrationRow {
    pub degree: usize,
    pub i1_lo: f64,
    pub i1_hi: f64,
    pub i2_lo: f64,
    pub i2_hi: f64,
    /// max over (m,n) != (0,0) of |alpha(m,n)| * max(1,m) * max(1,n)
    pub measured_k: f64,
    /// max over signs of |alpha(0,0) - mu(I1) mu(I2)| * degree
    pub measured_k_prime: f64,
    /// worst signed sandwich violation on the verification grid (positive
    /// means a violation)
    pub max_violation: f64,
}

/// Grid-certify the sandwich and measure the decay constants for one
/// interval pair. `grid` is the number of points per axis.
pub fn calibrate_pair(
    i1: &Interval<f64>,
    i2: &Interval<f64>,
    m: usize,
    grid: usize,
) -> Result<CalibrationRow> {
    let (minus, plus) = build_majorant_pair(i1, i2, m)?;
    let mu = crate::sato_tate::mu_st_angle(i1.lo, i1.hi)? * crate::sato_tate::mu_st_angle(i2.lo, i2.hi)?;

    let mut measured_k = 0f64;
    for poly in [&minus, &plus] {
        for a in 0..=m {
            for b in 0..=m {
                if a == 0 && b == 0 {
                    continue;
                }
                let w = (a.max(1) * b.max(1)) as f64;
                measured_k = measured_k.max(poly.alpha(a, b).abs() * w);
            }
        }
    }
    let measured_k_prime = (minus.alpha(0, 0) - mu)
        .abs()
        .max((plus.alpha(0, 0) - mu).abs())
        * m as f64;

    let thetas: Vec<f64> = (0..grid)
        .map(|i| std::f64::consts::PI * i as f64 / (grid - 1) as f64)
        .collect();
    let tables: Vec<Vec<f64>> = thetas.iter().map(|&t| u_table(m, t)).collect();
    let lo_grid = minus.grid_eval(&tables);
    let hi_grid = plus.grid_eval(&tables);
    let mut max_violation = f64::NEG_INFINITY;
    for (i, t1) in thetas.iter().enumerate() {
        for (j, t2) in thetas.iter().enumerate() {
            let ind = if i1.contains(*t1) && i2.contains(*t2) {
                1.0
            } else {
                0.0
            };
            max_violation = max_violation
                .max(lo_grid[i * grid + j] - ind)
                .max(ind - hi_grid[i * grid + j]);
        }
    }
    Ok(CalibrationRow {
        degree: m,
        i1_lo: i1.lo,
        i1_hi: i1.hi,
        i2_lo: i2.lo,
        i2_hi: i2.hi,
        measured_k,
        measured_k_prime,
        max_violation,
    })
}
