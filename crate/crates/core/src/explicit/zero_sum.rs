//! Sums over critical-line zeros and bounds on what truncation omits.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::specfun::log_gamma;
use crate::zeros::ZeroSet;
use crate::{KahanComplex, KahanSum};

/// Which zero-weighted sum to evaluate at scale N, over ρ = 1/2 + iγ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroSumKind {
    /// Σ_ρ Γ(ρ) N^ρ
    GammaPow,
    /// Σ_ρ Γ(ρ) N^{ρ+1}
    GammaPowPlus1,
    /// Σ_ρ N^{ρ+1} / (ρ(ρ+1))
    FujiiKernel,
}

fn term(kind: ZeroSumKind, gamma_ord: f64, log_n: f64, n: f64) -> Complex64 {
    let rho = Complex64::new(0.5, gamma_ord);
    match kind {
        ZeroSumKind::GammaPow => {
            // exp(log Γ(ρ) + ρ log N) keeps N^ρ from overflowing on its own.
            let lg = log_gamma(rho).expect("no Γ pole on the critical line");
            (lg + rho * log_n).exp()
        }
        ZeroSumKind::GammaPowPlus1 => {
            let lg = log_gamma(rho).expect("no Γ pole on the critical line");
            (lg + (rho + 1.0) * log_n).exp()
        }
        ZeroSumKind::FujiiKernel => {
            let pow = n.sqrt() * n * Complex64::new(0.0, gamma_ord * log_n).exp();
            pow.fdiv(rho * (rho + 1.0))
        }
    }
}

/// Evaluate the zero sum; symmetric sets are folded as 2·Re over the stored
/// positive ordinates, so their imaginary part is exactly zero.
pub fn zero_sum(set: &ZeroSet, n: f64, kind: ZeroSumKind) -> Result<Complex64> {
    if !(n >= 4.0) {
        return Err(Error::InvalidArgument(format!(
            "zero_sum requires N >= 4, got {n}"
        )));
    }
    let log_n = n.ln();
    if set.symmetric {
        let mut acc = KahanSum::new();
        for &g in &set.ordinates {
            acc.add(2.0 * term(kind, g, log_n, n).re);
        }
        Ok(Complex64::new(acc.value(), 0.0))
    } else {
        let mut acc = KahanComplex::new();
        for &g in &set.ordinates {
            acc.add(term(kind, g, log_n, n));
        }
        Ok(acc.value())
    }
}

/// Real-valued zero sum over a conjugate-closed set, with an imaginary
/// residue self-check: a complex-character set summed as if self-conjugate
/// fails here.
pub fn zero_sum_real(set: &ZeroSet, n: f64, kind: ZeroSumKind) -> Result<f64> {
    let v = zero_sum(set, n, kind)?;
    let tol = 1e-9 * v.norm().max(1e-300);
    if v.im.abs() > tol {
        return Err(Error::SymmetryMisuse(format!(
            "imaginary residue {:e} of zero sum exceeds 1e-9 of magnitude {:e} \
             (complex-character set summed as if self-conjugate?)",
            v.im.abs(),
            v.norm()
        )));
    }
    Ok(v.re)
}

/// Mean zero density per unit window at height t, plus a fluctuation
/// allowance of 1/2.
fn window_density(q: u64, t: f64) -> f64 {
    (2.0 * q as f64 * (t.abs() + 2.0)).ln() / (2.0 * PI) + 0.5
}

/// Upper bound for the |γ| > height part of a zero sum (both signs).
///
/// Γ-weighted kinds use |Γ(1/2+it)| = √(π/cosh πt) ≤ √(2π) e^{-πt/2}; the
/// Fujii kernel uses |ρ(ρ+1)| ≥ γ². Window counts are bounded by the mean
/// density above.
pub fn tail_bound(kind: ZeroSumKind, n: f64, height: f64, q: u64) -> f64 {
    let height = height.max(10.0);
    match kind {
        ZeroSumKind::GammaPow | ZeroSumKind::GammaPowPlus1 => {
            let shift = if kind == ZeroSumKind::GammaPow { 0.5 } else { 1.5 };
            let scale = 2.0 * n.powf(shift) * (2.0 * PI).sqrt();
            let mut sum = 0.0f64;
            let k0 = height.floor();
            for i in 0..400 {
                let k = k0 + i as f64;
                let t = window_density(q, k) * (-0.5 * PI * k).exp();
                sum += t;
                if t < 1e-320 {
                    break;
                }
            }
            scale * sum
        }
        ZeroSumKind::FujiiKernel => {
            let scale = 2.0 * n.powf(1.5);
            let k0 = height.floor();
            let blocks = 100_000usize;
            let mut sum = 0.0f64;
            for i in 0..blocks {
                let k = k0 + i as f64;
                sum += window_density(q, k) / (k * k);
            }
            let x = k0 + blocks as f64;
            // ∫_x^∞ d(t)/t² dt ≤ (d(x) + 1/2π)/x.
            sum += (window_density(q, x) + 1.0 / (2.0 * PI)) / x;
            scale * sum
        }
    }
}
