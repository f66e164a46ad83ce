//! Segmented sieve of Eratosthenes and primality helpers.

use crate::error::{Error, Result};

const SEGMENT: usize = 1 << 18;

/// All primes `<= limit`, ascending. Memory stays `O(sqrt(limit) + segment)`.
pub fn sieve_primes(limit: u64) -> Result<Vec<u64>> {
    if limit < 2 {
        return Err(Error::Argument(format!("sieve limit {limit} < 2")));
    }
    usize::try_from(limit)
        .map_err(|_| Error::Argument("sieve limit exceeds the platform word".into()))?;

    let root = (limit as f64).sqrt() as u64 + 1;
    let base = simple_sieve(root.max(2) as usize);

    let reserve = if limit > 16 {
        (limit as f64 / (limit as f64).ln() * 1.15) as usize
    } else {
        8
    };
    let mut primes = Vec::with_capacity(reserve);
    for &p in &base {
        if p <= limit {
            primes.push(p);
        }
    }

    let mut mark = vec![false; SEGMENT];
    let mut lo = root + 1;
    while lo <= limit {
        let hi = (lo + SEGMENT as u64 - 1).min(limit);
        let len = (hi - lo + 1) as usize;
        mark[..len].fill(false);
        for &p in &base {
            if p * p > hi {
                break;
            }
            let mut start = lo.div_ceil(p) * p;
            if start < p * p {
                start = p * p;
            }
            let mut i = (start - lo) as usize;
            while i < len {
                mark[i] = true;
                i += p as usize;
            }
        }
        for (i, &m) in mark[..len].iter().enumerate() {
            if !m {
                primes.push(lo + i as u64);
            }
        }
        lo = hi + 1;
    }
    Ok(primes)
}

fn simple_sieve(limit: usize) -> Vec<u64> {
    let mut is_comp = vec![false; limit + 1];
    let mut out = Vec::new();
    for n in 2..=limit {
        if !is_comp[n] {
            out.push(n as u64);
            let mut j = n * n;
            while j <= limit {
                is_comp[j] = true;
                j += n;
            }
        }
    }
    out
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    // witness set deterministic for all u64
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `#{p prime : lo < p <= hi}` straight off a sieve run.
pub fn count_primes_in_window(lo: u64, hi: u64) -> Result<u64> {
    let primes = sieve_primes(hi.max(2))?;
    Ok(primes.iter().filter(|&&p| p > lo && p <= hi).count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Plain bit-array sieve used as the independent oracle.
    fn naive_primes(limit: u64) -> Vec<u64> {
        let limit = limit as usize;
        let mut comp = vec![false; limit + 1];
        let mut out = Vec::new();
        for n in 2..=limit {
            if !comp[n] {
                out.push(n as u64);
                let mut j = 2 * n;
                while j <= limit {
                    comp[j] = true;
                    j += n;
                }
            }
        }
        out
    }

    #[test]
    fn small_limits() {
        assert_eq!(sieve_primes(10).unwrap(), vec![2, 3, 5, 7]);
        assert_eq!(sieve_primes(2).unwrap(), vec![2]);
        assert!(sieve_primes(1).is_err());
    }

    #[test]
    fn million_matches_naive_oracle() {
        let fast = sieve_primes(1_000_000).unwrap();
        let slow = naive_primes(1_000_000);
        assert_eq!(fast.len(), 78_498);
        assert_eq!(fast, slow);
    }

    #[test]
    fn segment_boundaries() {
        for limit in [SEGMENT as u64 - 1, SEGMENT as u64, SEGMENT as u64 + 1, 3 * SEGMENT as u64 + 17] {
            let fast = sieve_primes(limit).unwrap();
            let slow = naive_primes(limit);
            assert_eq!(fast, slow, "limit {limit}");
        }
    }

    #[test]
    fn miller_rabin_agrees_with_sieve() {
        let primes = sieve_primes(10_000).unwrap();
        let set: std::collections::BTreeSet<u64> = primes.into_iter().collect();
        for n in 0..10_000u64 {
            assert_eq!(is_prime_u64(n), set.contains(&n), "n={n}");
        }
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1_000_000_007u64 * 3));
    }

    #[test]
    fn brun_titchmarsh_shape_on_windows() {
        // #{p in (x, x+h]} <= 3h/log h for sampled x >= 100, h >= 100
        for &(x, h) in &[(100u64, 100u64), (1_000, 250), (10_000, 1_000), (250_000, 5_000)] {
            let count = count_primes_in_window(x, x + h).unwrap();
            let bound = 3.0 * h as f64 / (h as f64).ln();
            assert!(
                (count as f64) <= bound,
                "window ({x}, {}]: {count} > {bound}",
                x + h
            );
        }
    }
}
