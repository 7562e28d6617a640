//! Numerical toolkit for weighted Goldbach-representation sums.
//!
//! The crate computes the von Mangoldt convolution ψ₂(n) = Σ_{m+m'=n} Λ(m)Λ(m'),
//! its sharp-cutoff averages G_q(N) over multiples of q, and the smoothed
//! averages F_q(N) = Σ_{q|n} ψ₂(n)e^{-n/N}, then checks each quantity against
//! its explicit-formula main term built from nontrivial zeros of ζ(s) and of
//! Dirichlet L-functions. Supporting machinery: sieves and Dirichlet character
//! groups ([`arith`]), complex Γ / Hurwitz ζ / L-values ([`specfun`]),
//! critical-line zero location and zero files ([`zeros`]), the Goldbach sums
//! themselves ([`goldbach`]), and zero-sum main terms with tail bounds and
//! residual records ([`explicit`]).

pub mod arith;
pub mod cache;
pub mod error;
pub mod explicit;
pub mod goldbach;
pub mod specfun;
pub mod zeros;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Kahan compensated accumulator, used wherever many small terms meet a
/// large running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// Complex Kahan accumulator (componentwise compensation).
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanComplex {
    re: KahanSum,
    im: KahanSum,
}

impl KahanComplex {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kahan_beats_naive_on_ill_conditioned_sum() {
        let mut k = KahanSum::new();
        k.add(1e16);
        for _ in 0..10_000 {
            k.add(1.0);
        }
        k.add(-1e16);
        assert_eq!(k.value(), 10_000.0);
    }
}
