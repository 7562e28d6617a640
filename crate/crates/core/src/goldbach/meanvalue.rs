//! The mean values J₁(h) and J₂(N, h) of character-weighted prime sums.
//!
//! Both integrands are piecewise constant between the points where ⌊x⌋ or
//! ⌊x+h⌋ steps, so the integrals are evaluated exactly from prefix sums —
//! no quadrature error enters the bound-shape ratios.

use num_complex::Complex64;

use crate::arith::{Character, CharacterTable, LambdaTable};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeanValueKind {
    /// J₁(h) = ∫_0^h |Σ_{n≤x} χ(n)Λ(n)|² dx.
    J1,
    /// J₂(N, h) = ∫_0^N |Σ_{x<n≤x+h} χ(n)Λ(n)|² dx.
    J2,
}

/// One mean value with the GRH bound shape it is compared against.
#[derive(Debug, Clone, Copy)]
pub struct MeanValueJ {
    pub value: f64,
    /// h²·log²q for J₁; h·N·log²(3qN/h) for J₂.
    pub bound_shape: f64,
    pub ratio: f64,
    /// Conductor of the primitive character actually summed.
    pub conductor: u64,
}

/// Evaluate J₁ or J₂ for a nonprincipal character; imprimitive characters
/// are replaced by the primitive character that induces them.
pub fn mean_value_j(
    lam: &LambdaTable,
    chi: &Character<'_>,
    n: f64,
    h: f64,
    which: MeanValueKind,
) -> Result<MeanValueJ> {
    if chi.is_principal() {
        return Err(Error::InvalidArgument(
            "mean values are defined for nonprincipal characters".into(),
        ));
    }
    if !(h >= 1.0 && h <= n) {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= h <= N, got h = {h}, N = {n}"
        )));
    }
    let q = chi.modulus();
    let (conductor, star_index) = chi.inducing_primitive();
    let star_table = CharacterTable::new(conductor)?;
    let star = star_table.character(star_index);

    let reach = match which {
        MeanValueKind::J1 => h.ceil() as u64,
        MeanValueKind::J2 => (n + h).ceil() as u64,
    };
    if lam.limit() < reach {
        return Err(Error::InsufficientTable {
            have: lam.limit(),
            need: reach,
        });
    }

    // Prefix sums P(k) = Σ_{m≤k} χ*(m)Λ(m) at the integers.
    let len = reach as usize + 1;
    let mut prefix = vec![Complex64::new(0.0, 0.0); len];
    let lv = lam.values();
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 1..len {
        let l = lv[k];
        if l != 0.0 {
            acc += star.eval(k as u64 % conductor.max(1)) * l;
        }
        prefix[k] = acc;
    }

    let logq = (q as f64).ln();
    let (value, bound_shape) = match which {
        MeanValueKind::J1 => {
            let mut v = 0.0f64;
            let mut k = 0usize;
            while (k as f64) < h {
                let width = h.min(k as f64 + 1.0) - k as f64;
                v += prefix[k].norm_sqr() * width;
                k += 1;
            }
            (v, h * h * logq * logq)
        }
        MeanValueKind::J2 => {
            // Breakpoints of x ↦ P(⌊x+h⌋) − P(⌊x⌋) on [0, N]: the integer
            // ladder and its shift by -frac(h).
            let mut events: Vec<f64> = Vec::new();
            let mut x = 0.0f64;
            events.push(0.0);
            let frac = h - h.floor();
            let mut j = 1.0f64;
            while j <= n {
                events.push(j);
                j += 1.0;
            }
            if frac > 0.0 {
                let mut y = 1.0 - frac;
                while y < n {
                    if y > 0.0 {
                        events.push(y);
                    }
                    y += 1.0;
                }
            }
            events.push(n);
            events.sort_by(|a, b| a.partial_cmp(b).unwrap());
            events.dedup();
            let mut v = 0.0f64;
            for w in events.windows(2) {
                let (a, b) = (w[0], w[1]);
                if b <= a {
                    continue;
                }
                let mid = 0.5 * (a + b);
                let lo = mid.floor() as usize;
                let hi = (mid + h).floor() as usize;
                let diff = prefix[hi.min(len - 1)] - prefix[lo.min(len - 1)];
                v += diff.norm_sqr() * (b - a);
                x = b;
            }
            let _ = x;
            let shape = h * n * (3.0 * q as f64 * n / h).ln().powi(2);
            (v, shape)
        }
    };
    Ok(MeanValueJ {
        value,
        bound_shape,
        ratio: value / bound_shape,
        conductor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j1_vanishes_below_two() {
        // Λ(1) = 0, so the inner sum is empty for x < 2.
        let lam = LambdaTable::build(64).unwrap();
        let table = CharacterTable::new(3).unwrap();
        let chi = table.character(1);
        for h in [1.0, 1.5, 2.0] {
            let j = mean_value_j(&lam, &chi, 10.0, h, MeanValueKind::J1).unwrap();
            assert_eq!(j.value, 0.0, "h = {h}");
        }
    }

    #[test]
    fn j1_nondecreasing_in_h() {
        let lam = LambdaTable::build(2048).unwrap();
        let table = CharacterTable::new(5).unwrap();
        let chi = table.character(1);
        let mut prev = 0.0f64;
        let mut h = 1.0f64;
        while h <= 1000.0 {
            let j = mean_value_j(&lam, &chi, 1000.0, h, MeanValueKind::J1).unwrap();
            assert!(j.value >= prev, "J1 decreased at h = {h}");
            prev = j.value;
            h += 37.7;
        }
    }

    #[test]
    fn j1_matches_fine_riemann_sum_oracle() {
        let lam = LambdaTable::build(256).unwrap();
        let table = CharacterTable::new(4).unwrap();
        let chi = table.character(1);
        let h = 37.25;
        let j = mean_value_j(&lam, &chi, 100.0, h, MeanValueKind::J1).unwrap();
        // Brute-force Riemann sum at step 1/1024 on the same prefix function.
        let step = 1.0 / 1024.0;
        let mut oracle = 0.0f64;
        let mut x = 0.5 * step;
        while x < h {
            let mut s = Complex64::new(0.0, 0.0);
            for m in 1..=(x.floor() as u64) {
                s += chi.eval(m % 4) * lam.get(m);
            }
            oracle += s.norm_sqr() * step;
            x += step;
        }
        assert!(
            (j.value - oracle).abs() < 1e-6 * oracle.max(1.0),
            "exact {} vs oracle {}",
            j.value,
            oracle
        );
    }

    #[test]
    fn j2_matches_fine_riemann_sum_oracle_fractional_h() {
        let lam = LambdaTable::build(256).unwrap();
        let table = CharacterTable::new(4).unwrap();
        let chi = table.character(1);
        let (n, h) = (60.0, 7.5);
        let j = mean_value_j(&lam, &chi, n, h, MeanValueKind::J2).unwrap();
        let step = 1.0 / 2048.0;
        let mut oracle = 0.0f64;
        let mut x = 0.5 * step;
        while x < n {
            let lo = x.floor() as u64;
            let hi = (x + h).floor() as u64;
            let mut s = Complex64::new(0.0, 0.0);
            for m in (lo + 1)..=hi {
                s += chi.eval(m % 4) * lam.get(m);
            }
            oracle += s.norm_sqr() * step;
            x += step;
        }
        assert!(
            (j.value - oracle).abs() < 1e-4 * oracle.max(1.0),
            "exact {} vs oracle {}",
            j.value,
            oracle
        );
    }

    #[test]
    fn j2_ratio_within_grh_shape_chi3() {
        let n = 1e4;
        let lam = LambdaTable::build(n as u64 + 200).unwrap();
        let table = CharacterTable::new(3).unwrap();
        let chi = table.character(1);
        let j = mean_value_j(&lam, &chi, n, 100.0, MeanValueKind::J2).unwrap();
        assert!(j.ratio <= 1.0, "J2 ratio = {}", j.ratio);
    }

    #[test]
    fn imprimitive_replaced_by_primitive() {
        // The nonprincipal character mod 6 is induced by the one mod 3;
        // their mean values must coincide.
        let lam = LambdaTable::build(2048).unwrap();
        let t6 = CharacterTable::new(6).unwrap();
        let t3 = CharacterTable::new(3).unwrap();
        let chi6 = t6.character(1);
        let chi3 = t3.character(1);
        let a = mean_value_j(&lam, &chi6, 500.0, 50.0, MeanValueKind::J1).unwrap();
        let b = mean_value_j(&lam, &chi3, 500.0, 50.0, MeanValueKind::J1).unwrap();
        assert_eq!(a.conductor, 3);
        assert!((a.value - b.value).abs() < 1e-12);
    }

    #[test]
    fn principal_and_domain_errors() {
        let lam = LambdaTable::build(64).unwrap();
        let table = CharacterTable::new(3).unwrap();
        assert!(mean_value_j(&lam, &table.character(0), 10.0, 2.0, MeanValueKind::J1).is_err());
        assert!(mean_value_j(&lam, &table.character(1), 10.0, 0.5, MeanValueKind::J1).is_err());
        assert!(mean_value_j(&lam, &table.character(1), 10.0, 11.0, MeanValueKind::J1).is_err());
    }
}
