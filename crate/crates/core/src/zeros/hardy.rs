//! Real rotated L-functions on the critical line.
//!
//! For ζ this is Hardy's Z(t) = e^{iθ(t)} ζ(1/2 + it): Euler–Maclaurin below
//! [`RS_SWITCH`], the Riemann–Siegel main sum with four correction terms
//! above it. The correction kernel Φ and its derivatives are taken from a
//! 32-node Cauchy circle, which keeps the C₀…C₃ coefficients free of
//! hand-expanded high derivatives.

use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::OnceLock;

use super::theta::riemann_siegel_theta;
use crate::arith::{gauss_sum, Character};
use crate::error::{Error, Result};
use crate::specfun::{dirichlet_l_in_strip, log_gamma, zeta_in_strip};

/// Below this height Z(t) is evaluated through Euler–Maclaurin ζ; above it
/// the Riemann–Siegel expansion with C₀…C₃ is both faster and inside 1e-7.
pub const RS_SWITCH: f64 = 256.0;

/// Wider-than-default strip for the internal EM path.
const EM_STRIP: f64 = RS_SWITCH + 64.0;

/// Hardy Z(t) for ζ, valid for t ≥ 10 per contract (absolute error well
/// under 1e-6 up to t = 1e5).
pub fn riemann_siegel_z(t: f64) -> Result<f64> {
    if t < 10.0 {
        return Err(Error::InvalidArgument(format!(
            "riemann_siegel_z requires t >= 10 (asymptotic validity floor), got {t}"
        )));
    }
    Ok(zeta_z_any(t))
}

/// Z(t) for any t ≥ 0; the scanner uses this so the region below the
/// validity floor still has a (zero-free) evaluation path.
pub fn zeta_z_any(t: f64) -> f64 {
    if t <= RS_SWITCH {
        let s = Complex64::new(0.5, t);
        let z = zeta_in_strip(s, EM_STRIP).expect("not the pole: Im s = t, Re s = 1/2");
        let theta = riemann_siegel_theta(t);
        let rot = Complex64::new(0.0, theta).exp() * z;
        debug_assert!(rot.im.abs() <= 1e-8 * (1.0 + rot.norm()));
        rot.re
    } else {
        riemann_siegel_sum(t)
    }
}

fn ln_sqrt_table() -> &'static Vec<(f64, f64)> {
    static TABLE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (0..=512)
            .map(|n| {
                if n == 0 {
                    (0.0, 0.0)
                } else {
                    ((n as f64).ln(), 1.0 / (n as f64).sqrt())
                }
            })
            .collect()
    })
}

fn riemann_siegel_sum(t: f64) -> f64 {
    let a = (t / (2.0 * PI)).sqrt();
    let nu = a.floor() as usize;
    let p = a - nu as f64;
    let theta = riemann_siegel_theta(t);
    let table = ln_sqrt_table();
    let mut sum = 0.0f64;
    for n in 1..=nu {
        let (ln_n, inv_sqrt_n) = if n < table.len() {
            table[n]
        } else {
            ((n as f64).ln(), 1.0 / (n as f64).sqrt())
        };
        sum += (theta - t * ln_n).cos() * inv_sqrt_n;
    }
    sum *= 2.0;

    let d = phi_derivs(p);
    let pi2 = PI * PI;
    let pi4 = pi2 * pi2;
    let pi6 = pi4 * pi2;
    let c0 = d[0];
    let c1 = -d[3] / (96.0 * pi2);
    let c2 = d[2] / (64.0 * pi2) + d[6] / (18432.0 * pi4);
    let c3 = -d[1] / (64.0 * pi2) - d[5] / (3840.0 * pi4) - d[9] / (5308416.0 * pi6);
    let x = (2.0 * PI / t).sqrt();
    let corr = c0 + x * (c1 + x * (c2 + x * c3));
    let sign = if nu % 2 == 1 { 1.0 } else { -1.0 };
    sum + sign * (2.0 * PI / t).powf(0.25) * corr
}

/// Φ(z) = cos(2π(z² − z − 1/16)) / cos(2πz); entire, the cos(2πz) zeros are
/// removable.
fn phi_kernel(z: Complex64) -> Complex64 {
    let num = (2.0 * PI * (z * z - z - 0.0625)).cos();
    let den = (2.0 * PI * z).cos();
    num.fdiv(den)
}

/// Derivatives Φ⁽⁰⁾…Φ⁽⁹⁾ at real p via a 32-node Cauchy circle of radius
/// 1/2. The half-step angular offset keeps every node at |Im z| ≥ 0.049,
/// away from the removable singularities on the real axis.
fn phi_derivs(p: f64) -> [f64; 10] {
    const M: usize = 32;
    const R: f64 = 0.5;
    let mut nodes = [Complex64::new(0.0, 0.0); M];
    let mut vals = [Complex64::new(0.0, 0.0); M];
    for (j, (node, val)) in nodes.iter_mut().zip(vals.iter_mut()).enumerate() {
        let th = 2.0 * PI * (j as f64 + 0.5) / M as f64;
        let e = Complex64::new(0.0, th).exp();
        *node = e;
        *val = phi_kernel(Complex64::new(p, 0.0) + R * e);
    }
    let mut out = [0.0f64; 10];
    let mut fact = 1.0f64;
    let mut rk = 1.0f64;
    for (k, slot) in out.iter_mut().enumerate() {
        if k > 0 {
            fact *= k as f64;
            rk *= R;
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (node, val) in nodes.iter().zip(vals.iter()) {
            // e^{-ik th_j} = conj(node)^k
            acc += val * node.conj().powu(k as u32);
        }
        *slot = fact * acc.re / (M as f64 * rk);
    }
    out
}

/// Real rotated completed L-function for a primitive character:
/// Z(t, χ) = ε(χ)^{-1/2} (q/π)^{it/2} e^{i arg Γ((1/2+it+δ)/2)} L(1/2+it, χ),
/// with ε(χ) = τ(χ)/(i^δ √q). Zeros of Z on the real t line are the
/// critical-line ordinates of L(s, χ).
pub fn hardy_z_chi(t: f64, chi: &Character<'_>) -> Result<f64> {
    let q = chi.modulus();
    if q < 3 {
        return Err(Error::InvalidArgument(format!(
            "hardy_z_chi requires a primitive character mod q >= 3, got q = {q}"
        )));
    }
    if !chi.is_primitive() {
        return Err(Error::ImprimitiveCharacter {
            modulus: q,
            index: chi.index(),
            conductor: chi.conductor(),
        });
    }
    if t.abs() > 200.0 {
        return Err(Error::OutsideStrip {
            im: t.abs(),
            strip: 200.0,
        });
    }
    let delta = chi.parity() as f64;
    let tau = gauss_sum(chi)?;
    let i_delta = if chi.parity() == 1 {
        Complex64::new(0.0, 1.0)
    } else {
        Complex64::new(1.0, 0.0)
    };
    let eps = tau / (i_delta * (q as f64).sqrt());
    // Root number has modulus 1; its square root is a fixed rotation.
    let w = Complex64::new(1.0, 0.0) / eps.sqrt();
    let s = Complex64::new(0.5, t);
    let g = log_gamma((s + delta) / 2.0)?;
    let gamma_phase = Complex64::new(0.0, g.im).exp();
    let qpi_phase = Complex64::new(0.0, 0.5 * t * (q as f64 / PI).ln()).exp();
    let l = dirichlet_l_in_strip(s, chi, 210.0)?;
    let z = w * qpi_phase * gamma_phase * l;
    let tol = 1e-8 * (1.0 + z.norm());
    if z.im.abs() > tol {
        return Err(Error::ImaginaryResidue {
            what: "hardy_z_chi",
            residue: z.im.abs(),
            tol,
        });
    }
    Ok(z.re)
}
