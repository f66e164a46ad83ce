//! Seeded sampling helpers shared by the verification commands and the
//! test suites. All randomness flows through an explicit ChaCha seed so
//! every run is reproducible.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cg::LocalContext;
use crate::majorant::Interval;
use crate::roots::RootOfUnity;
use crate::satake::SatakeLocal;

/// Highest unit-root order drawn by the samplers.
pub const SAMPLE_MAX_ORDER: u64 = 12;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn sample_root(rng: &mut impl Rng) -> RootOfUnity {
    let den = rng.random_range(1..=SAMPLE_MAX_ORDER);
    let num = rng.random_range(0..den) as i64;
    RootOfUnity::new(num, den).expect("sampled order within cap")
}

/// Random unramified local context: angles uniform in `[0, pi]`, unit
/// roots of order at most [`SAMPLE_MAX_ORDER`].
pub fn sample_context(rng: &mut impl Rng) -> LocalContext<f64> {
    let theta = rng.random_range(0.0..=std::f64::consts::PI);
    let theta_p = rng.random_range(0.0..=std::f64::consts::PI);
    let pi = SatakeLocal::new(101, theta, sample_root(rng)).unwrap();
    let pi_prime = SatakeLocal::new(101, theta_p, sample_root(rng)).unwrap();
    LocalContext::new(pi, pi_prime, sample_root(rng), None).unwrap()
}

/// Random closed subinterval of `[0, pi]`.
pub fn sample_angle_interval(rng: &mut impl Rng) -> Interval<f64> {
    let a = rng.random_range(0.0..=std::f64::consts::PI);
    let b = rng.random_range(0.0..=std::f64::consts::PI);
    Interval::new_angle(a.min(b), a.max(b)).unwrap()
}

pub fn sample_interval_pair(rng: &mut impl Rng) -> (Interval<f64>, Interval<f64>) {
    (sample_angle_interval(rng), sample_angle_interval(rng))
}
