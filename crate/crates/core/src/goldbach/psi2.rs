//! The ψ₂ convolution and its partial sums.

use rustfft::{num_complex::Complex64 as FftComplex, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::arith::LambdaTable;
use crate::error::{Error, Result};
use crate::KahanSum;

/// The direct O(T²) route is the oracle; past this size only the FFT route
/// is allowed.
pub const PSI2_DIRECT_CAP: u64 = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Psi2Method {
    Direct,
    Fft,
}

impl std::fmt::Display for Psi2Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Psi2Method::Direct => write!(f, "direct"),
            Psi2Method::Fft => write!(f, "fft"),
        }
    }
}

/// ψ₂(n) for 2 ≤ n ≤ limit, with the build method and a per-entry rounding
/// bound (zero for the direct method, transform-size dependent for FFT).
#[derive(Debug, Clone)]
pub struct Psi2Array {
    limit: u64,
    values: Vec<f64>,
    method: Psi2Method,
    error_bound: f64,
}

impl Psi2Array {
    #[inline]
    pub fn get(&self, n: u64) -> f64 {
        self.values[n as usize]
    }

    #[inline]
    pub fn limit(&self) -> u64 {
        self.limit
    }

    #[inline]
    pub fn method(&self) -> Psi2Method {
        self.method
    }

    /// Per-entry absolute rounding bound.
    #[inline]
    pub fn error_bound(&self) -> f64 {
        self.error_bound
    }

    /// Values indexed by n (entries 0 and 1 unused and zero).
    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub(crate) fn from_raw(
        limit: u64,
        values: Vec<f64>,
        method: Psi2Method,
        error_bound: f64,
    ) -> Self {
        debug_assert_eq!(values.len() as u64, limit + 1);
        Psi2Array {
            limit,
            values,
            method,
            error_bound,
        }
    }
}

/// Build ψ₂(n) for all n ≤ t.
///
/// The table must cover every summand: lam.limit ≥ t − 1, so each value is
/// the complete convolution, not a truncated box.
pub fn psi2(lam: &LambdaTable, t: u64, method: Psi2Method) -> Result<Psi2Array> {
    if t < 2 {
        return Err(Error::InvalidArgument(format!(
            "psi2 limit must be at least 2, got {t}"
        )));
    }
    if lam.limit() < t.saturating_sub(1) {
        return Err(Error::InsufficientTable {
            have: lam.limit(),
            need: t - 1,
        });
    }
    match method {
        Psi2Method::Direct => {
            if t > PSI2_DIRECT_CAP {
                return Err(Error::CapExceeded {
                    what: "psi2 direct limit",
                    requested: t,
                    cap: PSI2_DIRECT_CAP,
                });
            }
            Ok(psi2_direct(lam, t))
        }
        Psi2Method::Fft => Ok(psi2_fft(lam, t)),
    }
}

/// Literal convolution: for each prime power m (ascending), scatter
/// Λ(m)Λ(n−m) into every n; per-cell addition order matches the textbook
/// inner loop over ascending m.
fn psi2_direct(lam: &LambdaTable, t: u64) -> Psi2Array {
    let t = t as usize;
    let mut values = vec![0.0f64; t + 1];
    let lv = lam.values();
    for m in 1..t {
        let lm = lv[m];
        if lm == 0.0 {
            continue;
        }
        for n in (m + 2)..=t {
            let l2 = lv[n - m];
            if l2 != 0.0 {
                values[n] += lm * l2;
            }
        }
    }
    Psi2Array {
        limit: t as u64,
        values,
        method: Psi2Method::Direct,
        error_bound: 0.0,
    }
}

fn psi2_fft(lam: &LambdaTable, t: u64) -> Psi2Array {
    let t = t as usize;
    let size = (2 * t).next_power_of_two();
    let mut buf = vec![FftComplex::new(0.0, 0.0); size];
    let lv = lam.values();
    let mut norm_sq = 0.0f64;
    for (m, slot) in buf.iter_mut().enumerate().take(t).skip(1) {
        let v = lv[m];
        slot.re = v;
        norm_sq += v * v;
    }
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(size);
    let inv = planner.plan_fft_inverse(size);
    fwd.process(&mut buf);
    for z in buf.iter_mut() {
        *z = *z * *z;
    }
    inv.process(&mut buf);
    let scale = 1.0 / size as f64;
    // Rounding model: c · log2(size) · ε · ‖Λ‖₂², with c = 8 comfortably
    // covering observed errors.
    let error_bound = 8.0 * (size as f64).log2() * f64::EPSILON * norm_sq;
    let mut values = vec![0.0f64; t + 1];
    for (n, v) in values.iter_mut().enumerate().skip(4) {
        let x = buf[n].re * scale;
        *v = if x < 0.0 { 0.0 } else { x };
    }
    Psi2Array {
        limit: t as u64,
        values,
        method: Psi2Method::Fft,
        error_bound,
    }
}

/// G_q(N) = Σ_{n ≤ N, q|n} ψ₂(n); exact finite sum (Kahan-compensated).
pub fn partial_sum_g(psi2: &Psi2Array, n: u64, q: u64) -> Result<f64> {
    if q == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    if n > psi2.limit() {
        return Err(Error::InsufficientTable {
            have: psi2.limit(),
            need: n,
        });
    }
    let mut acc = KahanSum::new();
    let mut k = q;
    while k <= n {
        acc.add(psi2.get(k));
        k += q;
    }
    Ok(acc.value())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ln(x: f64) -> f64 {
        x.ln()
    }

    #[test]
    fn small_values_match_pair_enumeration() {
        let lam = LambdaTable::build(64).unwrap();
        let p = psi2(&lam, 64, Psi2Method::Direct).unwrap();
        assert_eq!(p.get(2), 0.0);
        assert_eq!(p.get(3), 0.0);
        assert!((p.get(4) - ln(2.0) * ln(2.0)).abs() < 1e-15);
        assert!((p.get(5) - 2.0 * ln(2.0) * ln(3.0)).abs() < 1e-15);
        // ψ₂(6) = pairs (2,4),(4,2),(3,3) → 2 ln2·ln2 + ln3²
        assert!((p.get(6) - (2.0 * ln(2.0) * ln(2.0) + ln(3.0) * ln(3.0))).abs() < 1e-14);
    }

    #[test]
    fn direct_matches_literal_triple_loop() {
        let lam = LambdaTable::build(512).unwrap();
        let p = psi2(&lam, 512, Psi2Method::Direct).unwrap();
        for n in 2..=512u64 {
            let mut want = 0.0f64;
            for m in 1..n {
                want += lam.get(m) * lam.get(n - m);
            }
            assert_eq!(p.get(n), want, "n = {n}");
        }
    }

    #[test]
    fn fft_matches_direct() {
        let t = 1u64 << 12;
        let lam = LambdaTable::build(t).unwrap();
        let d = psi2(&lam, t, Psi2Method::Direct).unwrap();
        let f = psi2(&lam, t, Psi2Method::Fft).unwrap();
        let mut worst = 0.0f64;
        for n in 2..=t {
            worst = worst.max((d.get(n) - f.get(n)).abs());
        }
        assert!(worst <= 1e-6, "max |direct - fft| = {worst:e}");
        assert!(worst <= f.error_bound(), "recorded bound {:e} < observed {worst:e}", f.error_bound());
    }

    #[test]
    fn crude_ceiling_holds() {
        let t = 4096u64;
        let lam = LambdaTable::build(t).unwrap();
        let p = psi2(&lam, t, Psi2Method::Fft).unwrap();
        for n in 2..=t {
            let nf = n as f64;
            assert!(
                p.get(n) <= nf * nf.ln() * nf.ln() + 1e-9,
                "psi2({n}) = {}",
                p.get(n)
            );
        }
    }

    #[test]
    fn caps_and_preconditions() {
        let lam = LambdaTable::build(1024).unwrap();
        assert!(psi2(&lam, PSI2_DIRECT_CAP + 1, Psi2Method::Direct).is_err());
        assert!(psi2(&lam, 2048, Psi2Method::Fft).is_err()); // table too short
        assert!(psi2(&lam, 1024, Psi2Method::Fft).is_ok());
    }

    #[test]
    fn partial_sum_small_case() {
        let lam = LambdaTable::build(16).unwrap();
        let p = psi2(&lam, 16, Psi2Method::Direct).unwrap();
        let g5 = partial_sum_g(&p, 5, 1).unwrap();
        let want = ln(2.0) * ln(2.0) + 2.0 * ln(2.0) * ln(3.0);
        assert!((g5 - want).abs() < 1e-14, "{g5} vs {want}");
    }

    #[test]
    fn partial_sum_vanishes_when_q_exceeds_n() {
        let lam = LambdaTable::build(64).unwrap();
        let p = psi2(&lam, 64, Psi2Method::Direct).unwrap();
        assert_eq!(partial_sum_g(&p, 30, 31).unwrap(), 0.0);
    }

    #[test]
    fn average_tracks_n_squared_over_two() {
        let n = 10_000u64;
        let lam = LambdaTable::build(n).unwrap();
        let p = psi2(&lam, n, Psi2Method::Fft).unwrap();
        let g = partial_sum_g(&p, n, 1).unwrap();
        let ratio = g / ((n * n) as f64 / 2.0);
        assert!((0.85..1.15).contains(&ratio), "G(N)/(N²/2) = {ratio}");
    }
}
