//! Clebsch-Gordan coefficient identities, the auxiliary non-negative
//! Dirichlet-series coefficient, and degree/conductor bookkeeping.
//!
//! The two working identities, valid at every unramified place and
//! prime-power exponent, are
//!
//! ```text
//!   a_{Sym^j x (Sym^k (x) chi)}        = sum_{r=0..min(j,k)} a_{Sym^{j+k-2r} (x) chi*omega^r}
//!   a_{Sym^j x dual(Sym^j)}            = 1 + sum_{r=1..j}    a_{Sym^{2r} (x) omega^{-r}}
//! ```
//!
//! Boundary indices follow the extended Chebyshev convention
//! (`U_{-1} = 0`, `U_{-2} = -1`): a `Sym^{-2}` factor enters as the inverse
//! of an abelian factor, with coefficient `-conj(omega)^l` and virtual
//! dimension `-1`. This keeps the product identities, the perfect-square
//! factorization, and the degree count valid down to `m = 0`.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::roots::RootOfUnity;
use crate::satake::{ext_sym_coeff, sym_power_coeff, twisted_sym_coeff, SatakeLocal};
use crate::scalar::Scalar;

/// Everything needed at one unramified place: both locals (same residue
/// cardinality), the twist value, and an optional inner twist.
#[derive(Debug, Clone)]
pub struct LocalContext<T> {
    pub pi: SatakeLocal<T>,
    pub pi_prime: SatakeLocal<T>,
    pub chi: RootOfUnity,
    pub psi: Option<RootOfUnity>,
}

impl<T: Scalar> LocalContext<T> {
    pub fn new(
        pi: SatakeLocal<T>,
        pi_prime: SatakeLocal<T>,
        chi: RootOfUnity,
        psi: Option<RootOfUnity>,
    ) -> Result<Self> {
        if pi.prime() != pi_prime.prime() {
            return Err(Error::PlaceMismatch(pi.prime(), pi_prime.prime()));
        }
        Ok(LocalContext { pi, pi_prime, chi, psi })
    }
}

/// Rankin-Selberg coefficient of `Sym^j(pi) x (Sym^k(pi') (x) xi)` with
/// extended indices, as a plain product of local coefficients.
fn rs_term<T: Scalar>(
    pi: &SatakeLocal<T>,
    j: i64,
    pi_prime: &SatakeLocal<T>,
    k: i64,
    xi: &RootOfUnity,
    ell: u32,
) -> Complex<T> {
    ext_sym_coeff(pi, j, ell) * ext_sym_coeff(pi_prime, k, ell) * xi.pow(ell as i64).value::<T>()
}

/// Adjoint coefficient `a_{Ad} = a_{Sym^2 (x) conj(omega)}`; real-valued.
pub fn ad_coeff<T: Scalar>(local: &SatakeLocal<T>, ell: u32) -> Complex<T> {
    twisted_sym_coeff(local, 2, &local.central().conj(), ell)
}

/// Right-hand side of the product identity: the self-convolution
/// `Sym^j(pi) x (Sym^k(pi) (x) chi)` expanded into single symmetric powers.
pub fn cg_product_coeff<T: Scalar>(
    ctx: &LocalContext<T>,
    j: u32,
    k: u32,
    ell: u32,
) -> Complex<T> {
    let omega = ctx.pi.central();
    let mut acc = Complex::new(T::zero(), T::zero());
    for r in 0..=j.min(k) {
        let twist = ctx.chi.mul(&omega.pow(r as i64));
        acc += twisted_sym_coeff(&ctx.pi, (j + k - 2 * r) as i64, &twist, ell);
    }
    acc
}

/// Right-hand side of the norm identity: `Sym^j x dual(Sym^j)` expanded as
/// `1 + sum_r a_{Sym^{2r} (x) omega^{-r}}`. Real and non-negative at
/// `ell = 1`, where it equals `|a_{Sym^j}|^2`.
pub fn cg_norm_coeff<T: Scalar>(local: &SatakeLocal<T>, j: u32, ell: u32) -> Complex<T> {
    let omega = local.central();
    let mut acc = Complex::new(T::one(), T::zero());
    for r in 1..=j {
        acc += twisted_sym_coeff(local, (2 * r) as i64, &omega.pow(-(r as i64)), ell);
    }
    acc
}

/// Coefficient of the auxiliary Dirichlet series: the full multi-term
/// combination whose non-negativity drives the zero-free region. Requires
/// `max(m, n) >= 1`.
pub fn aux_coeff<T: Scalar>(ctx: &LocalContext<T>, m: u32, n: u32, ell: u32) -> Result<Complex<T>> {
    if m == 0 && n == 0 {
        return Err(Error::Precondition("aux coefficient needs max(m, n) >= 1".into()));
    }
    let pi = &ctx.pi;
    let pp = &ctx.pi_prime;
    let chi = &ctx.chi;
    let omega = pi.central();
    let omega_p = pp.central();
    let two = T::c(2.0);
    let three = T::c(3.0);
    let four = T::c(4.0);
    let mi = m as i64;

    let mut acc = cg_norm_coeff(pi, m, ell) * four;
    acc += cg_norm_coeff(pp, n, ell) * two;

    let cross = rs_term(pi, mi, pp, n as i64, chi, ell);
    acc += cross * four;
    acc += cross.conj() * four;

    let low = rs_term(pi, mi - 2, pp, n as i64, &chi.mul(&omega), ell);
    acc += low * two;
    acc += low.conj() * two;

    let high = rs_term(pi, mi + 2, pp, n as i64, &chi.mul(&omega.conj()), ell);
    acc += high * two;
    acc += high.conj() * two;

    let sym4 = twisted_sym_coeff(pi, 4, &omega.conj().pow(2), ell);
    acc += sym4;
    let ad = ad_coeff(pi, ell);
    acc += ad * three;

    for k in 1..=n {
        let tw = twisted_sym_coeff(pp, (2 * k) as i64, &omega_p.pow(-(k as i64)), ell);
        acc += ad * tw * three;
        acc += sym4 * tw;
    }
    Ok(acc)
}

/// The perfect-square form of the auxiliary coefficient:
/// `|2*conj(a_{Sym^m}) + (a_{Ad} + 1) * a_{Sym^n' (x) chi}|^2`.
pub fn aux_coeff_square<T: Scalar>(
    ctx: &LocalContext<T>,
    m: u32,
    n: u32,
    ell: u32,
) -> Result<T> {
    if m == 0 && n == 0 {
        return Err(Error::Precondition("aux coefficient needs max(m, n) >= 1".into()));
    }
    let a_m = sym_power_coeff(&ctx.pi, m, ell).value;
    let b_n = twisted_sym_coeff(&ctx.pi_prime, n as i64, &ctx.chi, ell);
    let ad = ad_coeff(&ctx.pi, ell);
    let one = Complex::new(T::one(), T::zero());
    let z = a_m.conj() * T::c(2.0) + (ad + one) * b_n;
    Ok(z.norm_sqr())
}

/// Two sides of the norm block used inside the positivity proof:
/// the combination of the pi'-norm, adjoint, and degree-5 terms against
/// `(a_{Ad}+1)^2 * a_{Sym^n' x dual}`.
pub fn aux_norm_block_sides<T: Scalar>(
    ctx: &LocalContext<T>,
    n: u32,
    ell: u32,
) -> (Complex<T>, Complex<T>) {
    let pi = &ctx.pi;
    let pp = &ctx.pi_prime;
    let omega_p = pp.central();
    let ad = ad_coeff(pi, ell);
    let sym4 = twisted_sym_coeff(pi, 4, &pi.central().conj().pow(2), ell);
    let norm_n = cg_norm_coeff(pp, n, ell);

    let mut lhs = norm_n * T::c(2.0) + ad * T::c(3.0) + sym4;
    for k in 1..=n {
        let tw = twisted_sym_coeff(pp, (2 * k) as i64, &omega_p.pow(-(k as i64)), ell);
        lhs += ad * tw * T::c(3.0) + sym4 * tw;
    }

    let one = Complex::new(T::one(), T::zero());
    let rhs = (ad + one) * (ad + one) * norm_n;
    (lhs, rhs)
}

/// Two sides of the cross block: the six twisted cross terms against
/// `4*Re((a_{Ad}+1) * a_{Sym^m} * a_{Sym^n' (x) chi})`.
pub fn aux_cross_block_sides<T: Scalar>(
    ctx: &LocalContext<T>,
    m: u32,
    n: u32,
    ell: u32,
) -> (Complex<T>, Complex<T>) {
    let pi = &ctx.pi;
    let pp = &ctx.pi_prime;
    let chi = &ctx.chi;
    let omega = pi.central();
    let mi = m as i64;
    let ni = n as i64;
    let two = T::c(2.0);
    let four = T::c(4.0);

    let cross = rs_term(pi, mi, pp, ni, chi, ell);
    let low = rs_term(pi, mi - 2, pp, ni, &chi.mul(&omega), ell);
    let high = rs_term(pi, mi + 2, pp, ni, &chi.mul(&omega.conj()), ell);
    let lhs = cross * four + cross.conj() * four + low * two + low.conj() * two
        + high * two + high.conj() * two;

    let one = Complex::new(T::one(), T::zero());
    let ad = ad_coeff(pi, ell);
    let a_m = sym_power_coeff(pi, m, ell).value;
    let b_n = twisted_sym_coeff(pp, ni, chi, ell);
    let prod = (ad + one) * a_m * b_n;
    let rhs = Complex::new(four * prod.re, T::zero());
    (lhs, rhs)
}

/// One factor of the auxiliary Euler product with its multiplicity and
/// Rankin-Selberg degree. Degrees are signed: a `Sym^{-2}` constituent has
/// virtual dimension -1 (it is an inverse abelian factor), a `Sym^{-1}`
/// constituent dimension 0.
#[derive(Debug, Clone, Serialize)]
pub struct DegreeFactor {
    pub label: String,
    pub multiplicity: u32,
    pub degree: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeLedger {
    pub m: u32,
    pub n: u32,
    pub factors: Vec<DegreeFactor>,
    pub total: i64,
}

impl DegreeLedger {
    /// The closed-form degree the ledger must reproduce.
    pub fn expected_total(&self) -> i64 {
        let s = 2 * self.m as i64 + 4 * self.n as i64 + 6;
        s * s
    }

    pub fn matches(&self) -> bool {
        self.total == self.expected_total()
    }
}

fn virtual_dim(j: i64) -> i64 {
    debug_assert!(j >= -2);
    j + 1
}

/// Enumerate every factor of the auxiliary Euler product with multiplicity
/// and degree; the total must equal `(2m + 4n + 6)^2`.
pub fn degree_of_d(m: u32, n: u32) -> Result<DegreeLedger> {
    if m == 0 && n == 0 {
        return Err(Error::Precondition("degree ledger needs max(m, n) >= 1".into()));
    }
    let mi = m as i64;
    let ni = n as i64;
    let dm = virtual_dim(mi);
    let dn = virtual_dim(ni);
    let mut factors = vec![
        DegreeFactor {
            label: format!("Sym^{m} x dual(Sym^{m})"),
            multiplicity: 4,
            degree: dm * dm,
        },
        DegreeFactor {
            label: format!("Sym^{n}' x dual(Sym^{n}')"),
            multiplicity: 2,
            degree: dn * dn,
        },
        DegreeFactor {
            label: format!("Sym^{m} x (Sym^{n}' (x) chi)"),
            multiplicity: 4,
            degree: dm * dn,
        },
        DegreeFactor {
            label: format!("dual pair of Sym^{m} x (Sym^{n}' (x) chi)"),
            multiplicity: 4,
            degree: dm * dn,
        },
        DegreeFactor {
            label: format!("Sym^{} x (Sym^{n}' (x) chi*omega)", mi - 2),
            multiplicity: 2,
            degree: virtual_dim(mi - 2) * dn,
        },
        DegreeFactor {
            label: format!("dual pair of Sym^{} x (Sym^{n}' (x) chi*omega)", mi - 2),
            multiplicity: 2,
            degree: virtual_dim(mi - 2) * dn,
        },
        DegreeFactor {
            label: format!("Sym^{} x (Sym^{n}' (x) chi*conj(omega))", mi + 2),
            multiplicity: 2,
            degree: virtual_dim(mi + 2) * dn,
        },
        DegreeFactor {
            label: format!("dual pair of Sym^{} x (Sym^{n}' (x) chi*conj(omega))", mi + 2),
            multiplicity: 2,
            degree: virtual_dim(mi + 2) * dn,
        },
        DegreeFactor {
            label: "Sym^4 (x) conj(omega)^2".into(),
            multiplicity: 1,
            degree: 5,
        },
        DegreeFactor {
            label: "adjoint".into(),
            multiplicity: 3,
            degree: 3,
        },
    ];
    for k in 1..=ni {
        factors.push(DegreeFactor {
            label: format!("adjoint x (Sym^{}' (x) conj(omega')^{k})", 2 * k),
            multiplicity: 3,
            degree: 3 * (2 * k + 1),
        });
        factors.push(DegreeFactor {
            label: format!("Sym^4 x (Sym^{}' (x) twist)", 2 * k),
            multiplicity: 1,
            degree: 5 * (2 * k + 1),
        });
    }
    let total = factors
        .iter()
        .map(|f| f.multiplicity as i64 * f.degree)
        .sum();
    Ok(DegreeLedger { m, n, factors, total })
}

/// Upper bound on the conductor exponent of the m-th symmetric power,
/// propagated through the recurrence
/// `e_{i+2} = 2 e_{i+1} - e_i + (2i + 5) * ord` from `e_0 = 0`,
/// `e_1 = ord`. The returned value satisfies `e_m <= m^3 * ord`.
pub fn sym_conductor_exponent_bound(m: u32, ord_p: u64) -> u64 {
    if m == 0 {
        return 0;
    }
    let ord = ord_p as u128;
    let mut prev: u128 = 0; // e_0
    let mut cur: u128 = ord; // e_1
    for i in 0..m.saturating_sub(1) {
        let next = 2 * cur - prev + (2 * i as u128 + 5) * ord;
        prev = cur;
        cur = next;
    }
    let cube_bound = (m as u128).pow(3) * ord;
    assert!(
        cur <= cube_bound,
        "conductor recurrence exceeded the cubic bound: {cur} > {cube_bound}"
    );
    u64::try_from(cur).expect("conductor exponent bound fits u64 at desk scale")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::satake::{chebyshev_u, rs_coeff};
    use num_complex::Complex64;
    use rand::Rng;
    use std::f64::consts::PI;

    fn ctx(
        theta: f64,
        theta_p: f64,
        omega: RootOfUnity,
        omega_p: RootOfUnity,
        chi: RootOfUnity,
    ) -> LocalContext<f64> {
        LocalContext::new(
            SatakeLocal::new(101, theta, omega).unwrap(),
            SatakeLocal::new(101, theta_p, omega_p).unwrap(),
            chi,
            None,
        )
        .unwrap()
    }

    fn trivial_ctx(theta: f64, theta_p: f64) -> LocalContext<f64> {
        ctx(theta, theta_p, RootOfUnity::one(), RootOfUnity::one(), RootOfUnity::one())
    }

    #[test]
    fn product_identity_hand_example() {
        // j = k = 1, trivial twists, theta = pi/3: both sides equal 1
        let c = trivial_ctx(PI / 3.0, 0.4);
        let rhs = cg_product_coeff(&c, 1, 1, 1);
        assert!((rhs - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        let lhs = rs_coeff(&c.pi, &c.pi, &c.chi, 1, 1, 1).unwrap().value;
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn product_identity_empty_powers() {
        let c = trivial_ctx(0.9, 0.4);
        let rhs = cg_product_coeff(&c, 0, 0, 1);
        assert!((rhs - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn product_identity_nontrivial_roots() {
        let chi = RootOfUnity::new(1, 5).unwrap();
        let omega = RootOfUnity::new(1, 7).unwrap();
        let c = ctx(0.4, 1.0, omega, RootOfUnity::one(), chi);
        for ell in 1..=2u32 {
            for j in 0..=6u32 {
                for k in 0..=6u32 {
                    let lhs = rs_coeff(&c.pi, &c.pi, &c.chi, j, k, ell).unwrap().value;
                    let rhs = cg_product_coeff(&c, j, k, ell);
                    assert!(
                        (lhs - rhs).norm() < 1e-9,
                        "j={j} k={k} ell={ell}: {lhs} vs {rhs}"
                    );
                }
            }
        }
    }

    #[test]
    fn norm_identity_examples() {
        let l = SatakeLocal::new(11, PI / 2.0, RootOfUnity::one()).unwrap();
        assert!(cg_norm_coeff(&l, 1, 1).norm() < 1e-15);
        assert!((cg_norm_coeff(&l, 0, 1) - Complex64::new(1.0, 0.0)).norm() < 1e-15);

        let zeta2 = RootOfUnity::new(1, 4).unwrap();
        let l = SatakeLocal::new(11, 0.9, zeta2).unwrap();
        let got = cg_norm_coeff(&l, 4, 1);
        let want = chebyshev_u(4, 0.9f64).unwrap().powi(2);
        assert!((got.re - want).abs() < 1e-9 && got.im.abs() < 1e-9);
    }

    #[test]
    fn norm_identity_is_modulus_squared() {
        let mut rng = crate::sample::seeded_rng(7);
        for _ in 0..200 {
            let c = crate::sample::sample_context(&mut rng);
            for j in 0..=6u32 {
                let rhs = cg_norm_coeff(&c.pi, j, 1);
                let a = sym_power_coeff(&c.pi, j, 1).value;
                assert!((rhs.re - a.norm_sqr()).abs() < 1e-9 && rhs.im.abs() < 1e-9);
            }
        }
    }

    #[test]
    fn aux_rejects_zero_pair() {
        let c = trivial_ctx(0.5, 0.6);
        assert!(aux_coeff(&c, 0, 0, 1).is_err());
        assert!(aux_coeff_square(&c, 0, 0, 1).is_err());
    }

    #[test]
    fn aux_vanishes_at_central_zeros() {
        let c = trivial_ctx(PI / 2.0, PI / 2.0);
        let v = aux_coeff(&c, 1, 1, 1).unwrap();
        assert!(v.norm() < 1e-12, "{v}");
    }

    #[test]
    fn aux_hand_value_nine() {
        // m=1, n=0, theta=pi/3: square base |2 + 0 + 1| = 3
        let c = trivial_ctx(PI / 3.0, 0.8);
        let v = aux_coeff(&c, 1, 0, 1).unwrap();
        assert!((v.re - 9.0).abs() < 1e-10 && v.im.abs() < 1e-10, "{v}");
        let sq = aux_coeff_square(&c, 1, 0, 1).unwrap();
        assert!((sq - 9.0).abs() < 1e-10);
    }

    #[test]
    fn aux_boundary_m_zero_stays_factored() {
        // the extended convention keeps the square exact at m = 0
        let c = trivial_ctx(PI / 3.0, PI);
        let v = aux_coeff(&c, 0, 1, 1).unwrap();
        let sq = aux_coeff_square(&c, 0, 1, 1).unwrap();
        assert!(v.im.abs() < 1e-12);
        assert!((v.re - sq).abs() < 1e-10, "{} vs {sq}", v.re);
        assert!(v.re >= -1e-12);
        assert!(sq.abs() < 1e-10); // this point is an exact zero of the square
    }

    #[test]
    fn aux_positivity_and_factorization_sampled() {
        let mut rng = crate::sample::seeded_rng(42);
        for _ in 0..500 {
            let c = crate::sample::sample_context(&mut rng);
            for m in 0..=5u32 {
                for n in 0..=5u32 {
                    if m == 0 && n == 0 {
                        continue;
                    }
                    let v = aux_coeff(&c, m, n, 1).unwrap();
                    let sq = aux_coeff_square(&c, m, n, 1).unwrap();
                    assert!(v.im.abs() < 1e-9, "imag part m={m} n={n}: {v}");
                    assert!(v.re >= -1e-9, "negativity m={m} n={n}: {v}");
                    assert!((v.re - sq).abs() < 1e-9, "square m={m} n={n}: {} vs {sq}", v.re);
                }
            }
        }
    }

    #[test]
    fn aux_block_identities_sampled() {
        let mut rng = crate::sample::seeded_rng(43);
        for _ in 0..300 {
            let c = crate::sample::sample_context(&mut rng);
            let m = rng.random_range(0..=5u32);
            let n = rng.random_range(0..=5u32);
            for ell in 1..=2u32 {
                let (lhs, rhs) = aux_norm_block_sides(&c, n, ell);
                assert!((lhs - rhs).norm() < 1e-9, "norm block n={n} ell={ell}");
                let (lhs, rhs) = aux_cross_block_sides(&c, m, n, ell);
                assert!((lhs - rhs).norm() < 1e-9, "cross block m={m} n={n} ell={ell}");
            }
        }
    }

    #[test]
    fn degree_ledger_spot_values() {
        assert_eq!(degree_of_d(1, 1).unwrap().total, 144);
        assert_eq!(degree_of_d(2, 2).unwrap().total, 324);
        assert_eq!(degree_of_d(1, 0).unwrap().total, 64);
        assert_eq!(degree_of_d(0, 1).unwrap().total, 100);
        assert!(degree_of_d(0, 0).is_err());
    }

    #[test]
    fn degree_ledger_matches_closed_form() {
        for m in 0..=8u32 {
            for n in 0..=8u32 {
                if m == 0 && n == 0 {
                    continue;
                }
                let ledger = degree_of_d(m, n).unwrap();
                assert!(
                    ledger.matches(),
                    "degree mismatch at ({m},{n}): {} vs {}",
                    ledger.total,
                    ledger.expected_total()
                );
            }
        }
    }

    #[test]
    fn conductor_recurrence_values() {
        assert_eq!(sym_conductor_exponent_bound(1, 3), 3);
        assert_eq!(sym_conductor_exponent_bound(2, 1), 7);
        assert!(sym_conductor_exponent_bound(2, 1) <= 8);
        assert_eq!(sym_conductor_exponent_bound(5, 2), 150);
        assert!(sym_conductor_exponent_bound(5, 2) <= 250);
        assert_eq!(sym_conductor_exponent_bound(0, 9), 0);
        assert_eq!(sym_conductor_exponent_bound(7, 0), 0);
        // cubic bound over a spread of m
        for m in 1..=40u32 {
            let v = sym_conductor_exponent_bound(m, 4);
            assert!(v <= (m as u64).pow(3) * 4);
        }
    }
}
