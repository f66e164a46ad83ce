//! Point counting over F_p by batched quadratic-character sums.
//!
//! For each good prime the curve is reduced to `y^2 = x^3 + Ax + B` and
//! `a_p = -sum_x chi(x^3 + Ax + B)` is taken over a per-prime table of
//! quadratic residues. Both the residue table and the cubic are advanced
//! incrementally, so the scan is additions and one table load per x. The
//! kernel is `O(p)` per prime, which parallelizes perfectly over disjoint
//! prime blocks at the scale this tool targets.

use rayon::prelude::*;

use crate::angles::{angles_from_traces, AngleSequence, Provenance, TracePoint};
use crate::curves::CurveModel;
use crate::error::{Error, Result};
use crate::sieve::{is_prime_u64, sieve_primes};

#[inline(always)]
fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

/// `a_p` for `y^2 = x^3 + ax + b` over F_p. `table` is scratch reused
/// across calls; it is rebuilt for every prime.
///
/// The table holds the quadratic character itself (`-1`, `0`, `+1`), so the
/// scan is one load and one add per x. The cubic is advanced by third
/// differences along four interleaved residue chains `x = c (mod 4)`; the
/// chains are independent, which keeps the table loads pipelined.
fn trace_short_weierstrass(p: u64, a: u64, b: u64, table: &mut Vec<i8>) -> i64 {
    let pu = p as usize;
    table.clear();
    table.resize(pu, -1i8);
    table[0] = 0;
    // mark squares: x^2 for x = 1..=(p-1)/2
    let mut sq = 1u64;
    let mut odd = 3u64; // (x+1)^2 - x^2
    let two = 2 % p;
    for _ in 0..(p - 1) / 2 {
        table[sq as usize] = 1;
        sq = add_mod(sq, odd, p);
        odd = add_mod(odd, two, p);
    }

    let eval = |x: u64| -> u64 {
        let x = x as u128;
        ((x * x % p as u128 * x + a as u128 * x + b as u128) % p as u128) as u64
    };

    // chain c covers x = c, c+4, c+8, ...; differences of f along step 4:
    // d1(x) = f(x+4) - f(x) = 12x^2 + 48x + 64 + 4a, d2(x) = 96x + 384,
    // d3 = 384, everything mod p
    let full = (p / 4).saturating_sub(1) as usize;
    let m = |v: u128| (v % p as u128) as u64;
    let mut f = [eval(0), eval(1), eval(2), eval(3)];
    let mut d1 = [0u64; 4];
    let mut d2 = [0u64; 4];
    for c in 0..4u128 {
        d1[c as usize] = m(12 * c * c + 48 * c + 64 + 4 * a as u128);
        d2[c as usize] = m(96 * c + 384);
    }
    let d3 = m(384);
    let mut acc = [0i64; 4];
    for _ in 0..full {
        for c in 0..4 {
            acc[c] += table[f[c] as usize] as i64;
            f[c] = add_mod(f[c], d1[c], p);
            d1[c] = add_mod(d1[c], d2[c], p);
            d2[c] = add_mod(d2[c], d3, p);
        }
    }
    let mut chi_sum: i64 = acc.iter().sum();
    for x in (4 * full as u64)..p {
        chi_sum += table[eval(x) as usize] as i64;
    }
    -chi_sum
}

/// `a_p = p + 1 - #E(F_p)` for one good prime `p > 3`.
pub fn count_points(curve: &CurveModel, p: u64) -> Result<TracePoint> {
    let mut scratch = Vec::new();
    count_points_with_scratch(curve, p, &mut scratch)
}

fn count_points_with_scratch(
    curve: &CurveModel,
    p: u64,
    scratch: &mut Vec<i8>,
) -> Result<TracePoint> {
    if p <= 3 || curve.bad_primes().contains(&p) || !is_prime_u64(p) {
        return Err(Error::BadPrime(p, curve.label.clone()));
    }
    let (a, b) = curve.short_weierstrass_mod(p);
    let trace = trace_short_weierstrass(p, a, b, scratch);
    let point = TracePoint { prime: p, trace };
    if !point.satisfies_hasse() {
        return Err(Error::HasseViolation { prime: p, trace });
    }
    Ok(point)
}

/// Traces at every good prime `<= limit`, computed in parallel over
/// disjoint primes and merged in prime order. Output is identical for any
/// worker count.
pub fn traces_for_curve(curve: &CurveModel, limit: u64) -> Result<Vec<TracePoint>> {
    let primes = sieve_primes(limit)?;
    let good: Vec<u64> = primes
        .into_iter()
        .filter(|&p| p > 3 && !curve.bad_primes().contains(&p))
        .collect();
    good.into_par_iter()
        .map_init(Vec::<i8>::new, |scratch, p| {
            count_points_with_scratch(curve, p, scratch)
        })
        .collect()
}

/// Full pipeline: sieve, count, convert to angles.
pub fn angle_sequence_for_curve(curve: &CurveModel, limit: u64) -> Result<AngleSequence> {
    let traces = traces_for_curve(curve, limit)?;
    angles_from_traces(
        &traces,
        curve.excluded_primes(),
        Provenance {
            label: curve.label.clone(),
            covered_to: limit,
            digest: String::new(),
        },
    )
}
