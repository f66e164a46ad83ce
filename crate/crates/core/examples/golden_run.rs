//! Reproduce the golden regression values: the full reference pipeline
//! for (11a1, 37a1) up to 1e6, printing the joint discrepancies and the
//! normalized partial sums the acceptance suite freezes.
//!
//!   cargo run --release -p stlab --example golden_run

use std::time::Instant;

use stlab::curves::CurveModel;
use stlab::majorant::Interval;
use stlab::pnt::{coeff_partial_sum, TwistValues};
use stlab::points::angle_sequence_for_curve;
use stlab::roots::RootOfUnity;
use stlab::sato_tate::{joint_discrepancy, BoundProfile};

fn main() {
    let limit = 1_000_000u64;
    let e1 = CurveModel::builtin("11a1").unwrap();
    let e2 = CurveModel::builtin("37a1").unwrap();

    let t0 = Instant::now();
    let s1 = angle_sequence_for_curve(&e1, limit).unwrap();
    println!("11a1 to 1e6: {:?} ({} primes)", t0.elapsed(), s1.len());
    let t0 = Instant::now();
    let s2 = angle_sequence_for_curve(&e2, limit).unwrap();
    println!("37a1 to 1e6: {:?} ({} primes)", t0.elapsed(), s2.len());

    let profile = BoundProfile {
        log_q: ((11 * 37) as f64).ln(),
        ..BoundProfile::default()
    };
    let half = Interval::new_angle(0.0, std::f64::consts::FRAC_PI_2).unwrap();
    for x in [10_000u64, 100_000, 1_000_000] {
        let r = joint_discrepancy(&s1, &s2, &half, &half, x, &profile).unwrap();
        println!(
            "joint x={x}: empirical={:.17} reference={:.17} abs_error={:.17} primes={}",
            r.empirical, r.reference, r.abs_error, r.prime_count
        );
    }

    let one = RootOfUnity::one();
    let checkpoints = [10_000u64, 1_000_000];
    for m in 1..=3u32 {
        for n in 1..=3u32 {
            let s = coeff_partial_sum(
                &s1,
                &s2,
                m,
                n,
                &TwistValues::Trivial,
                &one,
                &one,
                &checkpoints,
            )
            .unwrap();
            println!(
                "pnt m={m} n={n}: |S|/pi(1e4)={:.17e} |S|/pi(1e6)={:.17e}",
                s.checkpoints[0].normalized(),
                s.checkpoints[1].normalized()
            );
        }
    }
}
