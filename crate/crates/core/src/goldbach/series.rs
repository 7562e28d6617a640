//! Exponentially smoothed prime and Goldbach sums at r = e^{-1/N}.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::psi2::Psi2Array;
use crate::arith::{euler_phi, factorize, Character, CharacterTable, LambdaTable};
use crate::error::{Error, Result};
use crate::{KahanComplex, KahanSum};

/// Truncation point for the smoothed series: T(N) = ⌈N(2 ln N + 60)⌉, which
/// makes e^{-T/N} ≤ e^{-60}/N² so the omitted tail is far below every
/// tolerance in use.
pub fn truncation_length(n: f64) -> u64 {
    (n * (2.0 * n.ln() + 60.0)).ceil() as u64
}

fn check_scale(n: f64) -> Result<()> {
    if !(n >= 4.0 && n.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "smoothing scale N must satisfy N >= 4, got {n}"
        )));
    }
    Ok(())
}

/// Tail bound for Σ_{n>T} Λ(n)e^{-n/N} ≤ ∫_T^∞ ln(x+1)e^{-x/N} dx.
fn psi_tail_bound(n: f64, t: u64) -> f64 {
    let t = t as f64;
    n * (-t / n).exp() * ((t + 1.0).ln() + 1.0)
}

/// Tail bound for Σ_{n>T} n ln²n e^{-n/N}, via ln²x ≤ ln²T·(x/T) for x ≥ T
/// and the incomplete-gamma integral of x²e^{-x/N}.
fn psi2_tail_bound(n: f64, t: u64) -> f64 {
    let t = t as f64;
    let l2 = t.ln() * t.ln();
    l2 / t * n * (t * t + 2.0 * t * n + 2.0 * n * n) * (-t / n).exp()
}

/// A truncated weighted prime sum Ψ(r, χ) = Σ_{n≤T} χ(n)Λ(n)e^{-n/N}.
#[derive(Debug, Clone, Copy)]
pub struct WeightedSum {
    pub value: Complex64,
    pub truncation: u64,
    pub tail_bound: f64,
}

impl WeightedSum {
    /// Real part; exact for absent or self-conjugate χ, where the imaginary
    /// part is zero by construction.
    pub fn real(&self) -> f64 {
        self.value.re
    }
}

/// Ψ(r, χ) with r = e^{-1/N}; real-valued when χ is absent or self-conjugate.
pub fn psi_weighted(
    lam: &LambdaTable,
    n: f64,
    chi: Option<&Character<'_>>,
) -> Result<WeightedSum> {
    check_scale(n)?;
    let t = truncation_length(n);
    if lam.limit() < t {
        return Err(Error::InsufficientTable {
            have: lam.limit(),
            need: t,
        });
    }
    let inv_n = 1.0 / n;
    let lv = lam.values();
    let value = match chi {
        None => {
            let mut acc = KahanSum::new();
            for (m, &l) in lv.iter().enumerate().take(t as usize + 1).skip(2) {
                if l != 0.0 {
                    acc.add(l * (-(m as f64) * inv_n).exp());
                }
            }
            Complex64::new(acc.value(), 0.0)
        }
        Some(chi) if chi.is_self_conjugate() => {
            let q = chi.modulus();
            let mut acc = KahanSum::new();
            for (m, &l) in lv.iter().enumerate().take(t as usize + 1).skip(2) {
                if l != 0.0 {
                    let v = chi.eval(m as u64 % q).re;
                    if v != 0.0 {
                        acc.add(v * l * (-(m as f64) * inv_n).exp());
                    }
                }
            }
            Complex64::new(acc.value(), 0.0)
        }
        Some(chi) => {
            let q = chi.modulus();
            let mut acc = KahanComplex::new();
            for (m, &l) in lv.iter().enumerate().take(t as usize + 1).skip(2) {
                if l != 0.0 {
                    let v = chi.eval(m as u64 % q);
                    if v != Complex64::new(0.0, 0.0) {
                        acc.add(v * (l * (-(m as f64) * inv_n).exp()));
                    }
                }
            }
            acc.value()
        }
    };
    Ok(WeightedSum {
        value,
        truncation: t,
        tail_bound: psi_tail_bound(n, t),
    })
}

/// The exact sum Σ_{(m,q)>1} Λ(m)r^m over prime powers of primes dividing q,
/// its square, and its ratio against the log N · log q shape.
#[derive(Debug, Clone, Copy)]
pub struct S2Term {
    pub sum: f64,
    pub square: f64,
    /// log N · log q.
    pub bound: f64,
    pub ratio: f64,
    pub truncation: u64,
    pub tail_bound: f64,
}

/// Evaluate the S₂ correction sum for q ≥ 2 at scale N.
pub fn s2_term(lam: &LambdaTable, q: u64, n: f64) -> Result<S2Term> {
    if q < 2 {
        return Err(Error::InvalidArgument(format!(
            "s2_term requires q >= 2, got {q}"
        )));
    }
    check_scale(n)?;
    let t = truncation_length(n).min(lam.limit());
    let mut sum = KahanSum::new();
    for (p, _) in factorize(q) {
        let logp = (p as f64).ln();
        let mut pk = p;
        while pk <= t {
            sum.add(logp * (-(pk as f64) / n).exp());
            match pk.checked_mul(p) {
                Some(next) => pk = next,
                None => break,
            }
        }
    }
    let s = sum.value();
    let bound = n.ln() * (q as f64).ln();
    // Next omitted term is at a prime power above T.
    let tail_bound = (q as f64).ln() * (-(t as f64 + 1.0) / n).exp() * 2.0;
    Ok(S2Term {
        sum: s,
        square: s * s,
        bound,
        ratio: s / bound,
        truncation: t,
        tail_bound,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SmoothedPath {
    /// Σ_{q|n, n≤T} ψ₂(n)e^{-n/N} straight from a ψ₂ array.
    Direct,
    /// Ψ(r)², valid only for q = 1.
    Square,
    /// (1/φ(q)) Σ_χ χ(-1) Ψ(r,χ) Ψ(r,χ̄) + S₂ (exact), valid for q ≥ 2.
    Character,
}

/// One smoothed average F_q(N) evaluation with its truncation accounting.
#[derive(Debug, Clone, Copy)]
pub struct SmoothedPoint {
    pub n: f64,
    pub q: u64,
    pub value: f64,
    pub truncation: u64,
    pub tail_bound: f64,
    pub path: SmoothedPath,
}

/// Tables a smoothed evaluation may draw on; `psi2` is required only by the
/// direct path.
#[derive(Clone, Copy)]
pub struct SmoothedInputs<'a> {
    pub lambda: &'a LambdaTable,
    pub psi2: Option<&'a Psi2Array>,
}

/// F_q(N) = Σ_{q|n} ψ₂(n)e^{-n/N} by the requested route.
pub fn smoothed_f(
    inputs: &SmoothedInputs<'_>,
    n: f64,
    q: u64,
    path: SmoothedPath,
) -> Result<SmoothedPoint> {
    check_scale(n)?;
    if q == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    match path {
        SmoothedPath::Square if q != 1 => Err(Error::InvalidArgument(format!(
            "square path is the q = 1 identity, got q = {q}"
        ))),
        SmoothedPath::Character if q < 2 => Err(Error::InvalidArgument(
            "character path requires q >= 2".into(),
        )),
        SmoothedPath::Direct => smoothed_direct(inputs, n, q),
        SmoothedPath::Square => smoothed_square(inputs, n),
        SmoothedPath::Character => smoothed_character(inputs, n, q),
    }
}

fn smoothed_direct(inputs: &SmoothedInputs<'_>, n: f64, q: u64) -> Result<SmoothedPoint> {
    let psi2 = inputs.psi2.ok_or(Error::MissingInput {
        identity: "smoothed_f(direct)",
        what: "a psi2 array covering the truncation",
    })?;
    let t = truncation_length(n);
    if psi2.limit() < t {
        return Err(Error::InsufficientTable {
            have: psi2.limit(),
            need: t,
        });
    }
    let inv_n = 1.0 / n;
    let mut acc = KahanSum::new();
    let mut k = q;
    while k <= t {
        let v = psi2.get(k);
        if v != 0.0 {
            acc.add(v * (-(k as f64) * inv_n).exp());
        }
        k += q;
    }
    // Tail of the true series plus the rounding carried by the array.
    let tail = psi2_tail_bound(n, t) + psi2.error_bound() * (n / q as f64 + 1.0);
    Ok(SmoothedPoint {
        n,
        q,
        value: acc.value(),
        truncation: t,
        tail_bound: tail,
        path: SmoothedPath::Direct,
    })
}

fn smoothed_square(inputs: &SmoothedInputs<'_>, n: f64) -> Result<SmoothedPoint> {
    let psi = psi_weighted(inputs.lambda, n, None)?;
    let v = psi.real();
    // F = (Ψ_T + tail)²: the truncation costs at most 2|Ψ_T|·tail + tail².
    let tail = 2.0 * v.abs() * psi.tail_bound + psi.tail_bound * psi.tail_bound;
    Ok(SmoothedPoint {
        n,
        q: 1,
        value: v * v,
        truncation: psi.truncation,
        tail_bound: tail,
        path: SmoothedPath::Square,
    })
}

fn smoothed_character(inputs: &SmoothedInputs<'_>, n: f64, q: u64) -> Result<SmoothedPoint> {
    let table = CharacterTable::new(q)?;
    let phi = euler_phi(q) as f64;
    let mut s1 = KahanComplex::new();
    let mut truncation = 0u64;
    let mut psi_tail = 0.0f64;
    let mut max_psi = 0.0f64;
    for chi in table.characters() {
        let w = psi_weighted(inputs.lambda, n, Some(&chi))?;
        let conj = chi.conjugate();
        let w_conj = psi_weighted(inputs.lambda, n, Some(&conj))?;
        let sign = if chi.parity() == 1 { -1.0 } else { 1.0 };
        s1.add(sign * w.value * w_conj.value);
        truncation = w.truncation;
        psi_tail = psi_tail.max(w.tail_bound);
        max_psi = max_psi.max(w.value.norm());
    }
    let s1v = s1.value() / phi;
    // Conjugate characters pair, so the χ-sum is real to rounding.
    debug_assert!(s1v.im.abs() <= 1e-9 * (1.0 + s1v.re.abs()));

    // S₂ exactly: Σ_{(m,q)>1} Λ(m)r^m · Σ_{m'≡-m (q)} Λ(m')r^{m'}, with the
    // inner sums read off per residue class.
    let t = truncation;
    let inv_n = 1.0 / n;
    let lv = inputs.lambda.values();
    let mut class = vec![KahanSum::new(); q as usize];
    for (m, &l) in lv.iter().enumerate().take(t as usize + 1).skip(2) {
        if l != 0.0 {
            class[m % q as usize].add(l * (-(m as f64) * inv_n).exp());
        }
    }
    let mut s2 = KahanSum::new();
    for (p, _) in factorize(q) {
        let logp = (p as f64).ln();
        let mut pk = p;
        while pk <= t {
            let partner = ((q - pk % q) % q) as usize;
            s2.add(logp * (-(pk as f64) * inv_n).exp() * class[partner].value());
            match pk.checked_mul(p) {
                Some(next) => pk = next,
                None => break,
            }
        }
    }
    // Box-vs-triangle truncation plus Ψ tails entering through the products.
    let tail = psi2_tail_bound(n, t) + 2.0 * (max_psi + 1.0) * psi_tail;
    Ok(SmoothedPoint {
        n,
        q,
        value: s1v.re + s2.value(),
        truncation: t,
        tail_bound: tail,
        path: SmoothedPath::Character,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goldbach::psi2::{psi2, Psi2Method};
    use std::f64::consts::TAU;

    fn lam_for(n: f64) -> LambdaTable {
        LambdaTable::build(truncation_length(n)).unwrap()
    }

    #[test]
    fn truncation_scale() {
        assert!(truncation_length(4.0) >= 250);
        let t = truncation_length(1e4);
        assert!((780_000..790_000).contains(&t), "{t}");
    }

    #[test]
    fn psi_of_r_matches_explicit_main_terms() {
        // Ψ(r) = N - log 2π + O(1/N) at this scale (the zero sum is ~1e-7).
        let n = 1e4;
        let lam = lam_for(n);
        let w = psi_weighted(&lam, n, None).unwrap();
        let err = (w.real() - n + TAU.ln()).abs();
        assert!(err <= 0.01, "|Psi(r) - N + log 2pi| = {err}");
        assert!(w.tail_bound < 1e-12);
    }

    #[test]
    fn principal_character_difference_is_ramified_sum() {
        // Ψ(r, χ₀) − Ψ(r) = −Σ_{(m,q)>1} Λ(m) r^m, term by term.
        let n = 500.0;
        let lam = lam_for(n);
        let q = 6u64;
        let table = CharacterTable::new(q).unwrap();
        let chi0 = table.character(0);
        let a = psi_weighted(&lam, n, Some(&chi0)).unwrap().real();
        let b = psi_weighted(&lam, n, None).unwrap().real();
        let s2 = s2_term(&lam, q, n).unwrap();
        assert!(
            ((b - a) - s2.sum).abs() < 1e-10,
            "difference {} vs s2 {}",
            b - a,
            s2.sum
        );
    }

    #[test]
    fn nonprincipal_psi_is_square_root_small() {
        let n = 1e3;
        let lam = lam_for(n);
        let table = CharacterTable::new(3).unwrap();
        let chi = table.character(1);
        let w = psi_weighted(&lam, n, Some(&chi)).unwrap();
        assert!(w.value.im == 0.0, "real character must give a real sum");
        assert!(
            w.value.norm() <= 40.0 * n.sqrt(),
            "|Psi(r,chi)| = {}",
            w.value.norm()
        );
    }

    #[test]
    fn s2_term_q2_is_power_of_two_sum() {
        let n = 1e3;
        let lam = lam_for(n);
        let s2 = s2_term(&lam, 2, n).unwrap();
        let mut want = 0.0f64;
        let mut pk = 2u64;
        while pk <= s2.truncation {
            want += 2f64.ln() * (-(pk as f64) / n).exp();
            pk *= 2;
        }
        assert!((s2.sum - want).abs() < 1e-12);
    }

    #[test]
    fn s2_term_q15_uses_three_and_five_only() {
        let n = 200.0;
        let lam = lam_for(n);
        let s2 = s2_term(&lam, 15, n).unwrap();
        let mut want = 0.0f64;
        for p in [3u64, 5] {
            let mut pk = p;
            while pk <= s2.truncation {
                want += (p as f64).ln() * (-(pk as f64) / n).exp();
                pk *= p;
            }
        }
        assert!((s2.sum - want).abs() < 1e-12);
    }

    #[test]
    fn s2_ratio_bounded_on_grid() {
        for n in [100.0f64, 1000.0] {
            let lam = lam_for(n);
            for q in 2..=100u64 {
                let s2 = s2_term(&lam, q, n).unwrap();
                assert!(s2.ratio <= 3.0, "q={q} N={n}: ratio {}", s2.ratio);
            }
        }
    }

    #[test]
    fn square_and_direct_paths_agree_at_q1() {
        let n = 1e3;
        let t = truncation_length(n);
        let lam = LambdaTable::build(t).unwrap();
        let p2 = psi2(&lam, t, Psi2Method::Fft).unwrap();
        let inputs = SmoothedInputs {
            lambda: &lam,
            psi2: Some(&p2),
        };
        let direct = smoothed_f(&inputs, n, 1, SmoothedPath::Direct).unwrap();
        let square = smoothed_f(&inputs, n, 1, SmoothedPath::Square).unwrap();
        let diff = (direct.value - square.value).abs();
        assert!(diff <= 1e-6 * n * n, "|direct - square| = {diff}");
    }

    #[test]
    fn character_path_matches_direct_for_small_moduli() {
        let n = 1e3;
        let t = truncation_length(n);
        let lam = LambdaTable::build(t).unwrap();
        let p2 = psi2(&lam, t, Psi2Method::Fft).unwrap();
        let inputs = SmoothedInputs {
            lambda: &lam,
            psi2: Some(&p2),
        };
        for q in 2..=12u64 {
            let direct = smoothed_f(&inputs, n, q, SmoothedPath::Direct).unwrap();
            let chars = smoothed_f(&inputs, n, q, SmoothedPath::Character).unwrap();
            let diff = (direct.value - chars.value).abs();
            assert!(diff <= 1e-6 * n * n, "q={q}: |direct - character| = {diff}");
        }
    }

    #[test]
    fn huge_modulus_gives_negligible_average() {
        let n = 10.0;
        let lam = lam_for(n);
        let t = truncation_length(n);
        let p2 = psi2(&lam, t.min(PSI2_CAP), Psi2Method::Direct).unwrap();
        let inputs = SmoothedInputs {
            lambda: &lam,
            psi2: Some(&p2),
        };
        // q > N²: every retained term has n ≥ q, weight ≤ e^{-q/N}.
        let point = smoothed_f(&inputs, n, 101, SmoothedPath::Direct).unwrap();
        assert!(point.value <= 1.0, "F_q = {}", point.value);
        const PSI2_CAP: u64 = 1 << 14;
    }

    #[test]
    fn path_modulus_mismatches_rejected() {
        let n = 100.0;
        let lam = lam_for(n);
        let inputs = SmoothedInputs {
            lambda: &lam,
            psi2: None,
        };
        assert!(smoothed_f(&inputs, n, 2, SmoothedPath::Square).is_err());
        assert!(smoothed_f(&inputs, n, 1, SmoothedPath::Character).is_err());
        assert!(smoothed_f(&inputs, n, 1, SmoothedPath::Direct).is_err()); // no psi2
        assert!(smoothed_f(&inputs, 3.0, 1, SmoothedPath::Square).is_err()); // N < 4
    }

    #[test]
    fn doubling_truncation_stays_within_tail_bound() {
        // Recompute Ψ with double the table: the change must sit inside the
        // recorded tail bound.
        let n = 64.0;
        let t = truncation_length(n);
        let lam2 = LambdaTable::build(2 * t).unwrap();
        let w = psi_weighted(&lam2, n, None).unwrap();
        let mut extended = KahanSum::new();
        for m in 2..=(2 * t) {
            let l = lam2.get(m);
            if l != 0.0 {
                extended.add(l * (-(m as f64) / n).exp());
            }
        }
        let change = (extended.value() - w.real()).abs();
        assert!(
            change <= w.tail_bound,
            "change {change:e} vs bound {:e}",
            w.tail_bound
        );
    }
}
