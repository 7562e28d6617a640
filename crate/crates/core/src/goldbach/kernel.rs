//! The circle-average identity recovering G_q(N) from F_q(z).
//!
//! With z = r·e(α), the mean of F_q(z)·I_N(1/z) over the M-th roots of unity
//! equals G_q(N) exactly once M exceeds the truncation plus N: the trapezoid
//! rule is exact for trigonometric polynomials, so the only residue is
//! floating rounding.

use num_complex::Complex64;
use rustfft::{num_complex::Complex64 as FftComplex, FftPlanner};

use super::psi2::{partial_sum_g, psi2, Psi2Method, PSI2_DIRECT_CAP};
use super::series::truncation_length;
use crate::arith::LambdaTable;
use crate::error::{Error, Result};

/// I_N(w) = Σ_{k=1}^{N} w^k.
pub fn kernel_i(w: Complex64, n: u64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut p = Complex64::new(1.0, 0.0);
    for _ in 0..n {
        p *= w;
        acc += p;
    }
    acc
}

/// Outcome of one circle-average check.
#[derive(Debug, Clone, Copy)]
pub struct KernelCheck {
    /// (1/M) Σ_j F_q(z_j) I_N(1/z_j) over the M-point circle grid.
    pub quadrature: f64,
    /// G_q(N) from the same ψ₂ values.
    pub reference: f64,
    pub residual: f64,
    pub truncation: u64,
    pub grid: usize,
}

/// Evaluate the circle average against partial_sum_g.
///
/// The ψ₂ truncation is capped at M − N − 1 so no alias frequency survives;
/// the grid must leave room for that (M > 2N + 16).
pub fn kernel_integral_check(
    lam: &LambdaTable,
    n: u64,
    q: u64,
    grid: usize,
) -> Result<KernelCheck> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!(
            "kernel check needs N >= 4, got {n}"
        )));
    }
    if q == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    if grid <= 2 * n as usize + 16 {
        return Err(Error::InvalidArgument(format!(
            "grid M = {grid} is undersized for N = {n}: need M > truncation + N"
        )));
    }
    let t_desired = truncation_length(n as f64).min(PSI2_DIRECT_CAP);
    let t = t_desired.min(grid as u64 - n - 1);
    let p2 = psi2(lam, t, Psi2Method::Direct)?;

    let nf = n as f64;
    let mut fq = vec![FftComplex::new(0.0, 0.0); grid];
    // First multiple of q at or above 4 (ψ₂ vanishes below).
    let mut k = (4 + q - 1) / q * q;
    while k <= t {
        let v = p2.get(k);
        if v != 0.0 {
            fq[k as usize].re = v * (-(k as f64) / nf).exp();
        }
        k += q;
    }
    let mut iw = vec![FftComplex::new(0.0, 0.0); grid];
    for (m, slot) in iw.iter_mut().enumerate().take(n as usize + 1).skip(1) {
        slot.re = (m as f64 / nf).exp();
    }
    let mut planner = FftPlanner::<f64>::new();
    let fft = planner.plan_fft_forward(grid);
    fft.process(&mut fq);
    fft.process(&mut iw);
    let mut acc = Complex64::new(0.0, 0.0);
    for (a, b) in fq.iter().zip(iw.iter()) {
        acc += Complex64::new(a.re, a.im) * Complex64::new(b.re, -b.im);
    }
    let quadrature = acc.re / grid as f64;
    let reference = partial_sum_g(&p2, n.min(t), q)?;
    Ok(KernelCheck {
        quadrature,
        reference,
        residual: (quadrature - reference).abs(),
        truncation: t,
        grid,
    })
}
