//! Exact coefficient algebra at unramified places.
//!
//! A local datum lives on the unit circle: the Satake pair is
//! `{zeta*e^{i*theta}, zeta*e^{-i*theta}}` where `zeta` is the canonical
//! square root of the stored central value. Symmetric-power coefficients
//! reduce to Chebyshev polynomials of the second kind,
//!
//! ```text
//!   sum_{j=0..m} (a1^j a2^{m-j})^l = zeta^{m*l} * U_m(cos(l*theta)),
//! ```
//!
//! so every operation here is a product of an exact root of unity and a
//! real Chebyshev value.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::roots::RootOfUnity;
use crate::scalar::Scalar;

/// Below this |sin| the trigonometric quotient for `U_m` is replaced by the
/// three-term recurrence. The quotient amplifies the argument rounding of
/// `sin((m+1)phi)` by `1/sin(phi)`, so the cutover must sit well above the
/// removable singularities: at 1e-3 the quotient error stays near 1e-12,
/// and the recurrence (stable here, values bounded by m+1) covers the rest.
pub const SIN_EPS: f64 = 1e-3;

/// Unramified local data: residue cardinality, angle in `[0, pi]`, and the
/// central-character value at the uniformizer as an exact root of unity.
#[derive(Debug, Clone, PartialEq)]
pub struct SatakeLocal<T> {
    prime: u64,
    angle: T,
    central: RootOfUnity,
}

impl<T: Scalar> SatakeLocal<T> {
    pub fn new(prime: u64, angle: T, central: RootOfUnity) -> Result<Self> {
        if prime < 2 {
            return Err(Error::Argument(format!("residue cardinality {prime} < 2")));
        }
        if angle < T::zero() || angle > T::PI() {
            return Err(Error::Domain(format!("angle {angle} outside [0, pi]")));
        }
        Ok(SatakeLocal { prime, angle, central })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn angle(&self) -> T {
        self.angle
    }

    pub fn central(&self) -> RootOfUnity {
        self.central
    }

    /// Canonical `zeta` with `zeta^2` equal to the central value.
    pub fn zeta(&self) -> RootOfUnity {
        self.central.sqrt()
    }

    /// The two Satake parameters as floating complex numbers.
    pub fn satake_pair(&self) -> (Complex<T>, Complex<T>) {
        let z = self.zeta().value::<T>();
        let rot = Complex::from_polar(T::one(), self.angle);
        (z * rot, z * rot.conj())
    }

    /// The contragredient local: its Satake pair is the conjugate pair.
    ///
    /// The canonical square root is not conjugation-equivariant (for a
    /// non-trivial central value, `sqrt(conj(w)) = -conj(sqrt(w))`), so
    /// the stored angle flips to `pi - theta` exactly when the two roots
    /// disagree. Coefficients of the dual are the conjugated coefficients.
    pub fn dual(&self) -> SatakeLocal<T> {
        let central = self.central.conj();
        let angle = if central.sqrt() == self.zeta().conj() {
            self.angle
        } else {
            T::PI() - self.angle
        };
        SatakeLocal {
            prime: self.prime,
            angle,
            central,
        }
    }
}

/// One Dirichlet coefficient at a prime power.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientValue<T> {
    pub value: Complex<T>,
    pub place: u64,
    pub power: u32,
}

/// `U_m(cos phi)` for any real `phi`, with `U_{-1} = 0` and `U_{-2} = -1`.
///
/// Uses `sin((m+1)phi)/sin(phi)` away from multiples of pi and the
/// recurrence `U_m = 2cos(phi) U_{m-1} - U_{m-2}` near them.
pub(crate) fn u_eval<T: Scalar>(m: i64, phi: T) -> T {
    match m {
        -2 => return -T::one(),
        -1 => return T::zero(),
        _ => {}
    }
    let s = phi.sin();
    if s.abs() > T::c(SIN_EPS) {
        (T::from_int(m + 1) * phi).sin() / s
    } else {
        let x2 = T::c(2.0) * phi.cos();
        let mut prev = T::one(); // U_0
        if m == 0 {
            return prev;
        }
        let mut cur = x2; // U_1
        for _ in 1..m {
            let next = x2 * cur - prev;
            prev = cur;
            cur = next;
        }
        cur
    }
}

/// Chebyshev polynomial of the second kind evaluated at `cos(theta)`,
/// `theta` in `[0, pi]`. Extended indices `m = -1, -2` are accepted.
pub fn chebyshev_u<T: Scalar>(m: i64, theta: T) -> Result<T> {
    if m < -2 {
        return Err(Error::Argument(format!("chebyshev index {m} < -2")));
    }
    if theta < T::zero() || theta > T::PI() || theta.is_nan() {
        return Err(Error::Domain(format!("theta {theta} outside [0, pi]")));
    }
    Ok(u_eval(m, theta))
}

/// Dirichlet coefficient of the m-th symmetric power at the l-th power of
/// the place: `zeta^{m*l} * U_m(cos(l*theta))`.
pub fn sym_power_coeff<T: Scalar>(local: &SatakeLocal<T>, m: u32, ell: u32) -> CoefficientValue<T> {
    assert!(ell >= 1, "prime-power exponent must be positive");
    let phi = local.angle * T::from_int(ell as i64);
    let u = u_eval(m as i64, phi);
    let zeta_pow = local.zeta().pow((m as i64) * (ell as i64)).value::<T>();
    CoefficientValue {
        value: zeta_pow * u,
        place: local.prime,
        power: ell,
    }
}

/// Symmetric-power coefficient with the index extended to `-1` (zero) and
/// `-2` (the inverse abelian factor `-conj(omega)^l`). The extension is the
/// coefficient-level counterpart of `U_{-1} = 0`, `U_{-2} = -1` and keeps
/// the product identities valid at the boundary indices.
pub fn ext_sym_coeff<T: Scalar>(local: &SatakeLocal<T>, j: i64, ell: u32) -> Complex<T> {
    assert!(ell >= 1, "prime-power exponent must be positive");
    debug_assert!(j >= -2, "extended symmetric-power index out of range");
    match j {
        -1 => Complex::new(T::zero(), T::zero()),
        -2 => -local.central.conj().pow(ell as i64).value::<T>(),
        _ => sym_power_coeff(local, j as u32, ell).value,
    }
}

/// Coefficient of the twisted symmetric power `Sym^j (x) xi`.
pub fn twisted_sym_coeff<T: Scalar>(
    local: &SatakeLocal<T>,
    j: i64,
    twist: &RootOfUnity,
    ell: u32,
) -> Complex<T> {
    ext_sym_coeff(local, j, ell) * twist.pow(ell as i64).value::<T>()
}

/// Rankin-Selberg coefficient of `Sym^m x (Sym^n (x) twist)` at an
/// unramified place shared by both locals. Satisfies
/// `|value| <= (m+1)(n+1)`.
pub fn rs_coeff<T: Scalar>(
    local: &SatakeLocal<T>,
    local_prime: &SatakeLocal<T>,
    twist: &RootOfUnity,
    m: u32,
    n: u32,
    ell: u32,
) -> Result<CoefficientValue<T>> {
    if local.prime != local_prime.prime {
        return Err(Error::PlaceMismatch(local.prime, local_prime.prime));
    }
    let value = sym_power_coeff(local, m, ell).value
        * sym_power_coeff(local_prime, n, ell).value
        * twist.pow(ell as i64).value::<T>();
    Ok(CoefficientValue {
        value,
        place: local.prime,
        power: ell,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use std::f64::consts::PI;

    fn local(theta: f64, central: RootOfUnity) -> SatakeLocal<f64> {
        SatakeLocal::new(101, theta, central).unwrap()
    }

    #[test]
    fn chebyshev_pinned_values() {
        for theta in [0.0f64, 0.3, PI / 2.0, 2.9, PI] {
            assert!((chebyshev_u(0, theta).unwrap() - 1.0).abs() < 1e-15);
        }
        assert!((chebyshev_u(1, PI / 3.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((chebyshev_u(2, PI / 2.0).unwrap() + 1.0).abs() < 1e-12);
        // limit values at the removable singularities
        assert!((chebyshev_u::<f64>(5, 0.0).unwrap() - 6.0).abs() < 1e-12);
        assert!((chebyshev_u(5, PI).unwrap() + 6.0).abs() < 1e-12);
        assert!((chebyshev_u(4, PI).unwrap() - 5.0).abs() < 1e-12);
        // extended indices
        assert_eq!(chebyshev_u(-1, 0.7f64).unwrap(), 0.0);
        assert_eq!(chebyshev_u(-2, 0.7f64).unwrap(), -1.0);
    }

    #[test]
    fn chebyshev_domain_errors() {
        assert!(chebyshev_u::<f64>(3, -0.1).is_err());
        assert!(chebyshev_u::<f64>(3, PI + 0.1).is_err());
        assert!(chebyshev_u::<f64>(-3, 0.5).is_err());
    }

    #[test]
    fn chebyshev_grid_bound() {
        // |U_m(cos theta)| <= m+1 on a dense grid, m <= 20
        for m in 0..=20i64 {
            for i in 0..=10_000 {
                let theta = PI * (i as f64) / 10_000.0;
                let u = chebyshev_u(m, theta).unwrap();
                assert!(
                    u.abs() <= (m + 1) as f64 + 1e-9,
                    "bound failed at m={m} theta={theta}: {u}"
                );
            }
        }
    }

    #[test]
    fn chebyshev_two_cos_recurrence() {
        // U_m - U_{m-2} = 2 cos(m theta), including the extended tail
        for m in 0..=12i64 {
            for i in 1..40 {
                let theta = PI * (i as f64) / 40.0;
                let lhs = chebyshev_u(m, theta).unwrap() - chebyshev_u(m - 2, theta).unwrap();
                let rhs = 2.0 * (m as f64 * theta).cos();
                assert!((lhs - rhs).abs() < 1e-9, "m={m} theta={theta}");
            }
        }
    }

    #[test]
    fn quotient_and_recurrence_agree_near_singularity() {
        for m in 0..=15i64 {
            for &theta in &[1e-9, 1e-8, 2e-8, PI - 1e-9, PI - 2e-8] {
                let u = chebyshev_u(m, theta).unwrap();
                // recurrence reference
                let x2 = 2.0 * theta.cos();
                let (mut prev, mut cur) = (1.0f64, x2);
                let reference = match m {
                    0 => 1.0,
                    1 => x2,
                    _ => {
                        for _ in 1..m {
                            let next = x2 * cur - prev;
                            prev = cur;
                            cur = next;
                        }
                        cur
                    }
                };
                assert!((u - reference).abs() < 1e-6 * (m + 1) as f64);
            }
        }
    }

    /// Brute-force oracle: enumerate the m+1 monomials of the Satake pair.
    fn sym_oracle(local: &SatakeLocal<f64>, m: u32, ell: u32) -> Complex64 {
        let (a1, a2) = local.satake_pair();
        (0..=m)
            .map(|j| a1.powu(j * ell) * a2.powu((m - j) * ell))
            .sum()
    }

    #[test]
    fn sym_power_matches_monomial_oracle() {
        let zeta2 = RootOfUnity::new(1, 3).unwrap(); // central value e(1/3), zeta = e(1/6)
        let cases = [
            (0.7, zeta2, 3u32, 2u32),
            (0.7, zeta2, 3, 1),
            (1.9, RootOfUnity::new(2, 5).unwrap(), 5, 3),
            (0.01, RootOfUnity::one(), 7, 2),
            (PI, RootOfUnity::new(1, 2).unwrap(), 4, 1),
        ];
        for (theta, central, m, ell) in cases {
            let l = local(theta, central);
            let got = sym_power_coeff(&l, m, ell).value;
            let want = sym_oracle(&l, m, ell);
            assert!(
                (got - want).norm() < 1e-10,
                "theta={theta} m={m} ell={ell}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn sym_power_trivial_cases() {
        let l = local(PI / 2.0, RootOfUnity::one());
        assert!(sym_power_coeff(&l, 1, 1).value.norm() < 1e-15);
        let l = local(PI / 3.0, RootOfUnity::one());
        assert!(sym_power_coeff(&l, 2, 1).value.norm() < 1e-12);
    }

    #[test]
    fn sym_power_reduces_to_chebyshev() {
        for i in 0..200 {
            let theta = PI * (i as f64 + 0.5) / 200.0;
            let l = local(theta, RootOfUnity::one());
            for m in 0..=10u32 {
                let coeff = sym_power_coeff(&l, m, 1).value;
                let u = chebyshev_u(m as i64, theta).unwrap();
                assert!((coeff.re - u).abs() < 1e-12 && coeff.im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rs_coeff_examples_and_bound() {
        let a = local(0.3, RootOfUnity::one());
        let b = local(1.1, RootOfUnity::one());
        let one = RootOfUnity::one();
        let minus_one = RootOfUnity::new(1, 2).unwrap();

        let t = rs_coeff(&a, &b, &one, 0, 0, 1).unwrap().value;
        assert!((t - Complex64::new(1.0, 0.0)).norm() < 1e-15);

        let z = local(PI / 2.0, RootOfUnity::one());
        let t = rs_coeff(&z, &z, &one, 1, 1, 1).unwrap().value;
        assert!(t.norm() < 1e-15);

        let t = rs_coeff(&a, &b, &minus_one, 2, 3, 1).unwrap().value;
        let want = -chebyshev_u(2, 0.3).unwrap() * chebyshev_u(3, 1.1).unwrap();
        assert!((t.re - want).abs() < 1e-12 && t.im.abs() < 1e-12);
        assert!(t.norm() <= 3.0 * 4.0 + 1e-12);
    }

    #[test]
    fn rs_coeff_rejects_mismatched_places() {
        let a = SatakeLocal::new(5, 0.3, RootOfUnity::one()).unwrap();
        let b = SatakeLocal::new(7, 0.4, RootOfUnity::one()).unwrap();
        assert!(matches!(
            rs_coeff(&a, &b, &RootOfUnity::one(), 1, 1, 1),
            Err(Error::PlaceMismatch(5, 7))
        ));
    }

    #[test]
    fn dual_conjugates_every_coefficient() {
        let cases = [
            (0.0, RootOfUnity::new(1, 3).unwrap()),
            (0.7, RootOfUnity::new(1, 3).unwrap()),
            (1.9, RootOfUnity::new(5, 12).unwrap()),
            (0.4, RootOfUnity::one()),
            (PI, RootOfUnity::new(1, 2).unwrap()),
        ];
        for (theta, central) in cases {
            let l = local(theta, central);
            let d = l.dual();
            // the dual pair is the conjugated pair, as a set
            let (a1, a2) = l.satake_pair();
            let (b1, b2) = d.satake_pair();
            let direct = (b1 - a1.conj()).norm() + (b2 - a2.conj()).norm();
            let swapped = (b1 - a2.conj()).norm() + (b2 - a1.conj()).norm();
            assert!(direct.min(swapped) < 1e-12, "theta={theta}");
            for m in 0..=7u32 {
                for ell in 1..=2u32 {
                    let v = sym_power_coeff(&l, m, ell).value;
                    let w = sym_power_coeff(&d, m, ell).value;
                    assert!(
                        (w - v.conj()).norm() < 1e-10,
                        "theta={theta} m={m} ell={ell}: {w} vs conj {v}"
                    );
                }
            }
        }
    }

    #[test]
    fn ext_sym_boundary_indices() {
        let central = RootOfUnity::new(1, 4).unwrap();
        let l = local(0.9, central);
        assert!(ext_sym_coeff(&l, -1, 1).norm() < 1e-15);
        let want = -central.conj().value::<f64>();
        assert!((ext_sym_coeff(&l, -2, 1) - want).norm() < 1e-15);
        let want2 = -central.conj().pow(2).value::<f64>();
        assert!((ext_sym_coeff(&l, -2, 2) - want2).norm() < 1e-15);
    }
}
