//! Sieved von Mangoldt values and the Euler totient.

use crate::error::{Error, Result};

/// Largest table the sieve will build (values are 8 bytes each).
pub const MAX_LAMBDA_LIMIT: u64 = 200_000_000;

/// Von Mangoldt values Λ(1..=T): Λ(n) = log p when n = p^m, else 0.
///
/// Values are sieved once and immutable afterwards; the table is safe to
/// share across threads.
#[derive(Debug, Clone)]
pub struct LambdaTable {
    limit: u64,
    values: Vec<f64>,
}

impl LambdaTable {
    /// Sieve Λ(n) for all n ≤ `limit`.
    ///
    /// For each prime p ≤ limit the sieve writes log p at every power
    /// p, p², p³, … ≤ limit, so Λ(n) > 0 exactly on prime powers.
    pub fn build(limit: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::InvalidArgument(format!(
                "lambda table limit must be at least 2, got {limit}"
            )));
        }
        if limit > MAX_LAMBDA_LIMIT {
            return Err(Error::CapExceeded {
                what: "lambda table limit",
                requested: limit,
                cap: MAX_LAMBDA_LIMIT,
            });
        }
        let n = limit as usize;
        let mut is_prime = vec![true; n + 1];
        is_prime[0] = false;
        is_prime[1] = false;
        let mut p = 2usize;
        while p * p <= n {
            if is_prime[p] {
                let mut m = p * p;
                while m <= n {
                    is_prime[m] = false;
                    m += p;
                }
            }
            p += 1;
        }
        let mut values = vec![0.0f64; n + 1];
        for p in 2..=n {
            if is_prime[p] {
                let logp = (p as f64).ln();
                let mut pk = p as u64;
                while pk <= limit {
                    values[pk as usize] = logp;
                    match pk.checked_mul(p as u64) {
                        Some(next) => pk = next,
                        None => break,
                    }
                }
            }
        }
        Ok(LambdaTable { limit, values })
    }

    /// Λ(n); n must satisfy 1 ≤ n ≤ limit.
    #[inline]
    pub fn get(&self, n: u64) -> f64 {
        self.values[n as usize]
    }

    #[inline]
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Values indexed by n (entry 0 is unused and zero).
    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Chebyshev ψ(x) = Σ_{n ≤ x} Λ(n) for x ≤ limit.
    pub fn chebyshev_psi(&self, x: u64) -> f64 {
        let x = x.min(self.limit) as usize;
        self.values[..=x].iter().sum()
    }

    /// Rebuild a table from raw parts (used by the binary cache reader).
    pub(crate) fn from_raw(limit: u64, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len() as u64, limit + 1);
        LambdaTable { limit, values }
    }
}

/// Prime factorization by trial division, as (p, multiplicity) pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0u32;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Euler's totient φ(q).
pub fn euler_phi(q: u64) -> u64 {
    let mut phi = q;
    for (p, _) in factorize(q) {
        phi = phi / p * (p - 1);
    }
    phi
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: Λ(n) by trial-division prime-power detection.
    fn lambda_oracle(n: u64) -> f64 {
        if n < 2 {
            return 0.0;
        }
        let mut m = n;
        let mut d = 2u64;
        while d * d <= m {
            if m % d == 0 {
                while m % d == 0 {
                    m /= d;
                }
                return if m == 1 { (d as f64).ln() } else { 0.0 };
            }
            d += 1;
        }
        // m == n is prime
        (n as f64).ln()
    }

    #[test]
    fn lambda_basic_values() {
        let t = LambdaTable::build(100).unwrap();
        assert_eq!(t.get(1), 0.0);
        assert!((t.get(2) - 2f64.ln()).abs() < 1e-15);
        assert!((t.get(9) - 3f64.ln()).abs() < 1e-15);
        assert_eq!(t.get(12), 0.0);
        assert!((t.get(64) - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn lambda_matches_trial_division_oracle() {
        let limit = 100_000u64;
        let t = LambdaTable::build(limit).unwrap();
        for n in 1..=limit {
            let want = lambda_oracle(n);
            assert!(
                (t.get(n) - want).abs() < 1e-12,
                "Lambda({n}): sieve {} vs oracle {}",
                t.get(n),
                want
            );
        }
    }

    #[test]
    fn lambda_positive_exactly_on_prime_powers() {
        let t = LambdaTable::build(5000).unwrap();
        for n in 1..=5000u64 {
            let is_pp = lambda_oracle(n) > 0.0;
            assert_eq!(t.get(n) > 0.0, is_pp, "n = {n}");
        }
    }

    #[test]
    fn chebyshev_bound() {
        // Σ_{n≤T} Λ(n) ≤ 1.04 T for T ≥ 100
        for limit in [100u64, 1000, 10_000] {
            let t = LambdaTable::build(limit).unwrap();
            assert!(t.chebyshev_psi(limit) <= 1.04 * limit as f64);
        }
    }

    #[test]
    fn chebyshev_psi_matches_oracle_sum() {
        let t = LambdaTable::build(10_000).unwrap();
        let oracle: f64 = (1..=10_000u64).map(lambda_oracle).sum();
        assert!((t.chebyshev_psi(10_000) - oracle).abs() < 1e-9);
    }

    #[test]
    fn lambda_rejects_bad_limits() {
        assert!(LambdaTable::build(1).is_err());
        assert!(LambdaTable::build(MAX_LAMBDA_LIMIT + 1).is_err());
    }

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(9), 6);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(2), 1);
        assert_eq!(euler_phi(97), 96);
        assert_eq!(euler_phi(10_000), 4000);
    }

    #[test]
    fn phi_is_multiplicative() {
        for a in 1..50u64 {
            for b in 1..50u64 {
                let g = {
                    let (mut x, mut y) = (a, b);
                    while y != 0 {
                        let t = y;
                        y = x % y;
                        x = t;
                    }
                    x
                };
                if g == 1 {
                    assert_eq!(euler_phi(a * b), euler_phi(a) * euler_phi(b));
                }
            }
        }
    }
}
