//! Measure the majorant decay constants over seeded random interval
//! pairs, one line per degree. The acceptance suite asserts the measured
//! constants stay below 16; this binary is how they were first observed.
//!
//!   cargo run --release -p stlab --example calibrate_majorants

use stlab::majorant::calibrate_pair;
use stlab::sample::{sample_interval_pair, seeded_rng};

fn main() {
    let mut rng = seeded_rng(42);
    let pairs: Vec<_> = (0..1000).map(|_| sample_interval_pair(&mut rng)).collect();
    for m in [4usize, 8, 16, 32] {
        let mut k = 0f64;
        let mut kp = 0f64;
        let mut viol = f64::NEG_INFINITY;
        for (i1, i2) in &pairs {
            let row = calibrate_pair(i1, i2, m, 120).unwrap();
            k = k.max(row.measured_k);
            kp = kp.max(row.measured_k_prime);
            viol = viol.max(row.max_violation);
        }
        println!("M={m:2}  K={k:.4}  K'={kp:.4}  worst_violation={viol:.3e}");
    }
}
