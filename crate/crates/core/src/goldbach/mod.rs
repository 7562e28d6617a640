//! Goldbach-representation sums and their smoothed averages.
//!
//! ψ₂(n) = Σ_{m+m'=n} Λ(m)Λ(m') counts representations weighted by the von
//! Mangoldt function. This module computes ψ₂ directly and by FFT, the
//! sharp-cutoff averages G_q(N) = Σ_{n≤N, q|n} ψ₂(n), the smoothed averages
//! F_q(N) = Σ_{q|n} ψ₂(n)e^{-n/N} along three routes (direct from ψ₂, as
//! Ψ(r)² for q = 1, and through the character decomposition for q ≥ 2), the
//! exact S₂ correction, the circle-average kernel identity that recovers
//! G_q(N) from F_q(z), and the mean values J₁/J₂.

mod kernel;
mod meanvalue;
mod psi2;
mod series;

pub use kernel::{kernel_i, kernel_integral_check, KernelCheck};
pub use meanvalue::{mean_value_j, MeanValueJ, MeanValueKind};
pub use psi2::{partial_sum_g, psi2, Psi2Array, Psi2Method, PSI2_DIRECT_CAP};
pub use series::{
    psi_weighted, s2_term, smoothed_f, truncation_length, S2Term, SmoothedInputs, SmoothedPath,
    SmoothedPoint, WeightedSum,
};
