//! Residuals of the numbered identities against their zero-sum main terms.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::zero_sum::{tail_bound, zero_sum, zero_sum_real, ZeroSumKind};
use crate::arith::{euler_phi, CharacterTable, LambdaTable};
use crate::error::{Error, Result};
use crate::goldbach::{
    partial_sum_g, psi_weighted, smoothed_f, Psi2Array, SmoothedInputs, SmoothedPath,
};
use crate::zeros::ZeroSet;

/// The verifiable identities, by report tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Identity {
    /// G(N) against the kernel zero sum, classical error shape N^{4/3}(log N)^{4/3}.
    Fujii12,
    /// Same main term, refined error shape N log³N.
    Lz13,
    /// G_q(N) = G(N)/φ(q) + O(N log³N).
    Granville15,
    /// F_q(N) = F(N)/φ(q) + O(N log N log q).
    ThmFq18,
    /// F(N) = N² − 2 Σ Γ(ρ)N^{ρ+1} + O(N).
    ThmF19,
    /// Ψ(r, χ) = −Σ Γ(ρ)N^ρ + O(log(qN) log q) for nonprincipal primitive χ.
    PsiChi24,
    /// Ψ(r, χ₀) = Ψ(r) + O(log N log q).
    PsiChi025,
    /// Ψ(r) = N − Σ Γ(ρ)N^ρ − log 2π + O(1/N).
    PsiR27,
}

impl Identity {
    pub fn tag(&self) -> &'static str {
        match self {
            Identity::Fujii12 => "fujii_1_2",
            Identity::Lz13 => "lz_1_3",
            Identity::Granville15 => "granville_1_5",
            Identity::ThmFq18 => "thm_fq_1_8",
            Identity::ThmF19 => "thm_f_1_9",
            Identity::PsiChi24 => "psi_chi_2_4",
            Identity::PsiChi025 => "psi_chi0_2_5",
            Identity::PsiR27 => "psi_r_2_7",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Identity> {
        Identity::all().into_iter().find(|i| i.tag() == tag)
    }

    pub fn all() -> [Identity; 8] {
        [
            Identity::Fujii12,
            Identity::Lz13,
            Identity::Granville15,
            Identity::ThmFq18,
            Identity::ThmF19,
            Identity::PsiChi24,
            Identity::PsiChi025,
            Identity::PsiR27,
        ]
    }

    /// The identity's error-term shape evaluated at (N, q); always positive.
    pub fn normalizer(&self, n: f64, q: u64) -> f64 {
        let ln_n = n.ln();
        let ln_q = (q as f64).ln();
        match self {
            Identity::Fujii12 => n.powf(4.0 / 3.0) * ln_n.powf(4.0 / 3.0),
            Identity::Lz13 | Identity::Granville15 => n * ln_n.powi(3),
            Identity::ThmFq18 => {
                if q == 1 {
                    // The identity is exact at q = 1; log q would vanish.
                    n * ln_n
                } else {
                    n * ln_n * ln_q
                }
            }
            Identity::ThmF19 => n,
            Identity::PsiChi24 => (q as f64 * n).ln() * ln_q,
            Identity::PsiChi025 => ln_n * ln_q,
            Identity::PsiR27 => 1.0 / n,
        }
    }

    /// Operational assumption set annotated on records.
    pub fn assumptions(&self) -> &'static str {
        match self {
            Identity::Fujii12 | Identity::Lz13 | Identity::ThmF19 | Identity::PsiR27 => "RH",
            Identity::Granville15 | Identity::ThmFq18 | Identity::PsiChi24 => "GRH(q)",
            Identity::PsiChi025 => "",
        }
    }

    /// Does this identity need characters beyond q = 1?
    pub fn uses_characters(&self) -> bool {
        matches!(
            self,
            Identity::Granville15 | Identity::ThmFq18 | Identity::PsiChi24 | Identity::PsiChi025
        )
    }
}

/// One identity check at one (N, q, χ) cell.
///
/// `residual = direct − main_term` exactly as computed for the real-valued
/// identities; for the complex-valued psi_chi_2_4 the scalar fields carry
/// real parts and `residual` is the complex modulus |direct − main| (the
/// imaginary parts are kept alongside).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResidualRecord {
    pub identity: String,
    pub n: f64,
    pub q: u64,
    pub chi_index: Option<usize>,
    pub direct: f64,
    pub main_term: f64,
    pub residual: f64,
    pub normalizer: f64,
    pub normalized: f64,
    pub zero_height: f64,
    pub tail: f64,
    pub assumptions: String,
    #[serde(skip)]
    pub direct_im: f64,
    #[serde(skip)]
    pub main_term_im: f64,
}

/// Precomputed tables a residual evaluation may draw on.
#[derive(Clone, Copy, Default)]
pub struct ResidualInputs<'a> {
    pub lambda: Option<&'a LambdaTable>,
    pub psi2: Option<&'a Psi2Array>,
    /// ζ zeros for Γ-weighted sums (default height 50).
    pub zeta_gamma: Option<&'a ZeroSet>,
    /// ζ zeros for the Fujii kernel (default height 1e4).
    pub zeta_fujii: Option<&'a ZeroSet>,
    /// L-zero sets for the current q, keyed by character index.
    pub l_zeros: Option<&'a BTreeMap<usize, ZeroSet>>,
    /// Character table mod q.
    pub characters: Option<&'a CharacterTable>,
}

fn missing(identity: Identity, what: &'static str) -> Error {
    Error::MissingInput {
        identity: identity.tag(),
        what,
    }
}

/// Evaluate a single identity cell into a fully populated record.
///
/// A tail bound above 10% of the normalizer aborts with a truncation error
/// instead of producing a silently unusable record.
pub fn residual(
    identity: Identity,
    inputs: &ResidualInputs<'_>,
    n: f64,
    q: u64,
    chi_index: Option<usize>,
) -> Result<ResidualRecord> {
    if !(n >= 4.0) {
        return Err(Error::InvalidArgument(format!(
            "identity checks need N >= 4, got {n}"
        )));
    }
    if q == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    let record = match identity {
        Identity::Fujii12 | Identity::Lz13 => unsmoothed_g(identity, inputs, n)?,
        Identity::Granville15 => granville(inputs, n, q)?,
        Identity::ThmFq18 => smoothed_fq(inputs, n, q)?,
        Identity::ThmF19 => smoothed_f_identity(inputs, n)?,
        Identity::PsiChi24 => psi_chi(inputs, n, q, chi_index)?,
        Identity::PsiChi025 => psi_chi0(inputs, n, q)?,
        Identity::PsiR27 => psi_r(inputs, n)?,
    };
    if record.tail > 0.1 * record.normalizer {
        return Err(Error::TruncationTooLow {
            tail: record.tail,
            normalizer: record.normalizer,
        });
    }
    Ok(record)
}

fn finish(
    identity: Identity,
    n: f64,
    q: u64,
    chi_index: Option<usize>,
    direct: (f64, f64),
    main: (f64, f64),
    zero_height: f64,
    tail: f64,
) -> ResidualRecord {
    let complex_valued = identity == Identity::PsiChi24;
    let residual = if complex_valued {
        ((direct.0 - main.0).powi(2) + (direct.1 - main.1).powi(2)).sqrt()
    } else {
        direct.0 - main.0
    };
    let normalizer = identity.normalizer(n, q);
    ResidualRecord {
        identity: identity.tag().to_string(),
        n,
        q,
        chi_index,
        direct: direct.0,
        main_term: main.0,
        residual,
        normalizer,
        normalized: residual / normalizer,
        zero_height,
        tail,
        assumptions: identity.assumptions().to_string(),
        direct_im: direct.1,
        main_term_im: main.1,
    }
}

fn unsmoothed_g(identity: Identity, inputs: &ResidualInputs<'_>, n: f64) -> Result<ResidualRecord> {
    let psi2 = inputs.psi2.ok_or(missing(identity, "psi2 array"))?;
    let zeros = inputs
        .zeta_fujii
        .ok_or(missing(identity, "zeta zeros for the kernel sum"))?;
    if n.fract() != 0.0 {
        return Err(Error::InvalidArgument(format!(
            "G(N) needs integer N, got {n}"
        )));
    }
    let direct = partial_sum_g(psi2, n as u64, 1)?;
    let zsum = zero_sum_real(zeros, n, ZeroSumKind::FujiiKernel)?;
    let main = n * n / 2.0 - 2.0 * zsum;
    let tail = 2.0 * tail_bound(ZeroSumKind::FujiiKernel, n, zeros.height, 1);
    Ok(finish(
        identity,
        n,
        1,
        None,
        (direct, 0.0),
        (main, 0.0),
        zeros.height,
        tail,
    ))
}

fn granville(inputs: &ResidualInputs<'_>, n: f64, q: u64) -> Result<ResidualRecord> {
    let psi2 = inputs
        .psi2
        .ok_or(missing(Identity::Granville15, "psi2 array"))?;
    if n.fract() != 0.0 {
        return Err(Error::InvalidArgument(format!(
            "G_q(N) needs integer N, got {n}"
        )));
    }
    let direct = partial_sum_g(psi2, n as u64, q)?;
    let g_all = partial_sum_g(psi2, n as u64, 1)?;
    let main = g_all / euler_phi(q) as f64;
    // No zero sum enters; the truncation accounting is the ψ₂ rounding.
    let tail = psi2.error_bound() * (n / q as f64 + 1.0);
    Ok(finish(
        Identity::Granville15,
        n,
        q,
        None,
        (direct, 0.0),
        (main, 0.0),
        0.0,
        tail,
    ))
}

fn smoothed_fq(inputs: &ResidualInputs<'_>, n: f64, q: u64) -> Result<ResidualRecord> {
    let lambda = inputs
        .lambda
        .ok_or(missing(Identity::ThmFq18, "lambda table"))?;
    let sm = SmoothedInputs {
        lambda,
        psi2: inputs.psi2,
    };
    if q == 1 {
        // F₁ = F by definition: same evaluation on both sides, residual 0.
        let point = smoothed_f(&sm, n, 1, SmoothedPath::Square)?;
        return Ok(finish(
            Identity::ThmFq18,
            n,
            1,
            None,
            (point.value, 0.0),
            (point.value, 0.0),
            0.0,
            point.tail_bound,
        ));
    }
    let direct = smoothed_f(&sm, n, q, SmoothedPath::Direct)?;
    let f_all = smoothed_f(&sm, n, 1, SmoothedPath::Square)?;
    let phi = euler_phi(q) as f64;
    let main = f_all.value / phi;
    let tail = direct.tail_bound + f_all.tail_bound / phi;
    Ok(finish(
        Identity::ThmFq18,
        n,
        q,
        None,
        (direct.value, 0.0),
        (main, 0.0),
        0.0,
        tail,
    ))
}

fn smoothed_f_identity(inputs: &ResidualInputs<'_>, n: f64) -> Result<ResidualRecord> {
    let lambda = inputs
        .lambda
        .ok_or(missing(Identity::ThmF19, "lambda table"))?;
    let zeros = inputs
        .zeta_gamma
        .ok_or(missing(Identity::ThmF19, "zeta zeros for the gamma sum"))?;
    let sm = SmoothedInputs {
        lambda,
        psi2: inputs.psi2,
    };
    // Same code path as goldbach::smoothed_f(q=1, square): one evaluation.
    let point = smoothed_f(&sm, n, 1, SmoothedPath::Square)?;
    let zsum = zero_sum_real(zeros, n, ZeroSumKind::GammaPowPlus1)?;
    let main = n * n - 2.0 * zsum;
    let tail = 2.0 * tail_bound(ZeroSumKind::GammaPowPlus1, n, zeros.height, 1) + point.tail_bound;
    Ok(finish(
        Identity::ThmF19,
        n,
        1,
        None,
        (point.value, 0.0),
        (main, 0.0),
        zeros.height,
        tail,
    ))
}

fn psi_chi(
    inputs: &ResidualInputs<'_>,
    n: f64,
    q: u64,
    chi_index: Option<usize>,
) -> Result<ResidualRecord> {
    let lambda = inputs
        .lambda
        .ok_or(missing(Identity::PsiChi24, "lambda table"))?;
    let table = inputs
        .characters
        .ok_or(missing(Identity::PsiChi24, "character table"))?;
    let l_zeros = inputs
        .l_zeros
        .ok_or(missing(Identity::PsiChi24, "L-zero sets"))?;
    let index = chi_index.ok_or(missing(Identity::PsiChi24, "a character index"))?;
    if table.modulus() != q {
        return Err(Error::InvalidArgument(format!(
            "character table mod {} does not match q = {q}",
            table.modulus()
        )));
    }
    let chi = table.character(index);
    if chi.is_principal() {
        return Err(Error::InvalidArgument(
            "psi_chi_2_4 is stated for nonprincipal characters".into(),
        ));
    }
    let zeros = l_zeros
        .get(&index)
        .ok_or(missing(Identity::PsiChi24, "the L-zero set for this character"))?;
    let w = psi_weighted(lambda, n, Some(&chi))?;
    let zsum = zero_sum(zeros, n, ZeroSumKind::GammaPow)?;
    let main = -zsum;
    let tail = tail_bound(ZeroSumKind::GammaPow, n, zeros.height, q) + w.tail_bound;
    Ok(finish(
        Identity::PsiChi24,
        n,
        q,
        Some(index),
        (w.value.re, w.value.im),
        (main.re, main.im),
        zeros.height,
        tail,
    ))
}

fn psi_chi0(inputs: &ResidualInputs<'_>, n: f64, q: u64) -> Result<ResidualRecord> {
    let lambda = inputs
        .lambda
        .ok_or(missing(Identity::PsiChi025, "lambda table"))?;
    let table = inputs
        .characters
        .ok_or(missing(Identity::PsiChi025, "character table"))?;
    if q < 2 {
        return Err(Error::InvalidArgument(
            "psi_chi0_2_5 needs q >= 2".into(),
        ));
    }
    if table.modulus() != q {
        return Err(Error::InvalidArgument(format!(
            "character table mod {} does not match q = {q}",
            table.modulus()
        )));
    }
    let chi0 = table.character(0);
    let direct = psi_weighted(lambda, n, Some(&chi0))?;
    let main = psi_weighted(lambda, n, None)?;
    Ok(finish(
        Identity::PsiChi025,
        n,
        q,
        Some(0),
        (direct.real(), 0.0),
        (main.real(), 0.0),
        0.0,
        direct.tail_bound + main.tail_bound,
    ))
}

fn psi_r(inputs: &ResidualInputs<'_>, n: f64) -> Result<ResidualRecord> {
    let lambda = inputs
        .lambda
        .ok_or(missing(Identity::PsiR27, "lambda table"))?;
    let zeros = inputs
        .zeta_gamma
        .ok_or(missing(Identity::PsiR27, "zeta zeros for the gamma sum"))?;
    let w = psi_weighted(lambda, n, None)?;
    let zsum = zero_sum_real(zeros, n, ZeroSumKind::GammaPow)?;
    let main = n - zsum - TAU.ln();
    let tail = tail_bound(ZeroSumKind::GammaPow, n, zeros.height, 1) + w.tail_bound;
    Ok(finish(
        Identity::PsiR27,
        n,
        1,
        None,
        (w.real(), 0.0),
        (main, 0.0),
        zeros.height,
        tail,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::LambdaTable;
    use crate::goldbach::{psi2, truncation_length, Psi2Method};
    use crate::zeros::zeta_zeros;

    #[test]
    fn tags_round_trip() {
        for id in Identity::all() {
            assert_eq!(Identity::from_tag(id.tag()), Some(id));
        }
        assert_eq!(Identity::from_tag("nope"), None);
    }

    #[test]
    fn thm_fq_18_exact_zero_at_q1() {
        let n = 256.0;
        let lam = LambdaTable::build(truncation_length(n)).unwrap();
        let inputs = ResidualInputs {
            lambda: Some(&lam),
            ..Default::default()
        };
        let rec = residual(Identity::ThmFq18, &inputs, n, 1, None).unwrap();
        assert_eq!(rec.residual, 0.0);
        assert_eq!(rec.normalized, 0.0);
        assert!(rec.normalizer > 0.0);
    }

    #[test]
    fn granville_exact_zero_at_q1() {
        let lam = LambdaTable::build(1024).unwrap();
        let p2 = psi2(&lam, 1024, Psi2Method::Fft).unwrap();
        let inputs = ResidualInputs {
            lambda: Some(&lam),
            psi2: Some(&p2),
            ..Default::default()
        };
        let rec = residual(Identity::Granville15, &inputs, 1024.0, 1, None).unwrap();
        assert_eq!(rec.residual, 0.0);
    }

    #[test]
    fn psi_r_27_normalized_residual_is_order_one() {
        // Ψ(r) − (N − Σ − log 2π) ≈ c/N with c ≈ 2, so N·residual stays small.
        let n = 1000.0;
        let lam = LambdaTable::build(truncation_length(n)).unwrap();
        let zeros = zeta_zeros(50.0, 0.05).unwrap().set;
        let inputs = ResidualInputs {
            lambda: Some(&lam),
            zeta_gamma: Some(&zeros),
            ..Default::default()
        };
        let rec = residual(Identity::PsiR27, &inputs, n, 1, None).unwrap();
        assert!(rec.normalized.abs() <= 10.0, "normalized = {}", rec.normalized);
        assert_eq!(rec.assumptions, "RH");
    }

    #[test]
    fn missing_inputs_are_reported() {
        let inputs = ResidualInputs::default();
        let e = residual(Identity::ThmF19, &inputs, 100.0, 1, None).unwrap_err();
        assert!(matches!(e, Error::MissingInput { .. }), "{e}");
    }

    #[test]
    fn truncation_too_low_is_an_error() {
        // Fujii kernel at N = 2^18 with zeros only to height ~11: the tail
        // bound (~ √N/log³N of the normalizer) exceeds the 10% budget.
        let n = (1u64 << 18) as f64;
        let lam = LambdaTable::build(1 << 18).unwrap();
        let p2 = psi2(&lam, 1 << 18, Psi2Method::Fft).unwrap();
        let zeros = zeta_zeros(11.0, 0.05).unwrap().set;
        let inputs = ResidualInputs {
            lambda: Some(&lam),
            psi2: Some(&p2),
            zeta_fujii: Some(&zeros),
            ..Default::default()
        };
        let e = residual(Identity::Lz13, &inputs, n, 1, None).unwrap_err();
        assert!(matches!(e, Error::TruncationTooLow { .. }), "{e}");
    }

    #[test]
    fn normalizers_are_positive_on_grid() {
        // q grids restricted to each identity's domain (the character
        // identities are stated for q ≥ 2).
        for id in Identity::all() {
            let qs: &[u64] = match id {
                Identity::PsiChi24 | Identity::PsiChi025 => &[3, 4, 5, 12],
                _ => &[1, 2, 5, 12],
            };
            for &q in qs {
                for n in [16.0, 1e3, 1e5] {
                    assert!(id.normalizer(n, q) > 0.0, "{id:?} q={q} N={n}");
                }
            }
        }
    }
}
