//! Sign-change scanning and bisection refinement.

use rayon::prelude::*;

use super::hardy::{hardy_z_chi, zeta_z_any};
use super::theta::rvm_predicted_count;
use super::{Provenance, ZeroSet};
use crate::arith::Character;
use crate::error::{Error, Result};

/// Structured scan diagnostics; none of these abort a scan.
#[derive(Debug, Clone, PartialEq)]
pub enum ScanWarning {
    /// Found ordinate count differs from the Riemann–von Mangoldt main-term
    /// prediction (missed zeros, or |S(T)| crossing the floor).
    CountMismatch { found: usize, predicted: u64 },
    /// A unit window holds more zeros than the density ceiling allows.
    DensityExceeded {
        window_start: f64,
        count: usize,
        ceiling: f64,
    },
    /// A root indistinguishable from 0 was dropped (possible L(1/2, χ) = 0).
    NearZeroOrdinate { gamma: f64 },
}

impl std::fmt::Display for ScanWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScanWarning::CountMismatch { found, predicted } => write!(
                f,
                "count mismatch: found {found} ordinates, main-term prediction {predicted}"
            ),
            ScanWarning::DensityExceeded {
                window_start,
                count,
                ceiling,
            } => write!(
                f,
                "density ceiling exceeded in ({window_start}, {window_start} + 1]: {count} > {ceiling:.2}"
            ),
            ScanWarning::NearZeroOrdinate { gamma } => {
                write!(f, "ordinate {gamma:e} indistinguishable from 0 was dropped")
            }
        }
    }
}

/// A zero set together with the warnings its scan produced.
#[derive(Debug, Clone)]
pub struct ScanOutcome {
    pub set: ZeroSet,
    pub warnings: Vec<ScanWarning>,
}

/// Grid scan of a real function on (0, t_max] at spacing `step`, every sign
/// change refined by bisection to `tol`. Chunks scan in parallel over fixed
/// index ranges, so the result is independent of thread count.
fn sign_scan<F>(f: &F, t_max: f64, step: f64, tol: f64) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let n = (t_max / step).floor() as usize;
    const CHUNK: usize = 2048;
    let ranges: Vec<(usize, usize)> = (1..=n)
        .step_by(CHUNK)
        .map(|lo| (lo, (lo + CHUNK - 1).min(n)))
        .collect();
    let chunks: Vec<Result<Vec<f64>>> = ranges
        .par_iter()
        .map(|&(lo, hi)| {
            let mut roots = Vec::new();
            let mut fa = f((lo - 1) as f64 * step)?;
            for j in lo..=hi {
                let tb = j as f64 * step;
                let fb = f(tb)?;
                if fb == 0.0 {
                    roots.push(tb);
                } else if fa != 0.0 && fa.signum() != fb.signum() {
                    roots.push(bisect(f, (j - 1) as f64 * step, tb, fa, tol)?);
                }
                fa = fb;
            }
            Ok(roots)
        })
        .collect();
    let mut out = Vec::new();
    for c in chunks {
        out.extend(c?);
    }
    Ok(out)
}

fn bisect<F>(f: &F, mut a: f64, mut b: f64, mut fa: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    for _ in 0..200 {
        if b - a <= tol {
            break;
        }
        let m = 0.5 * (a + b);
        let fm = f(m)?;
        if fm == 0.0 {
            return Ok(m);
        }
        if fa.signum() != fm.signum() {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    Ok(0.5 * (a + b))
}

/// Zeros of ζ on the critical line up to `t_max` (≤ 1e5).
///
/// The count is cross-checked against ⌊θ(T)/π⌋ + 1; on mismatch the range is
/// rescanned once at step/5 (close pairs hide from coarse grids), and a
/// persisting mismatch becomes a [`ScanWarning::CountMismatch`].
pub fn zeta_zeros(t_max: f64, step: f64) -> Result<ScanOutcome> {
    if !(t_max > 0.0 && t_max <= 1e5) {
        return Err(Error::InvalidArgument(format!(
            "zeta_zeros height must lie in (0, 1e5], got {t_max}"
        )));
    }
    if !(step > 0.0 && step <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "scan step must lie in (0, 1], got {step}"
        )));
    }
    let tol = 1e-9;
    let f = |t: f64| -> Result<f64> { Ok(zeta_z_any(t)) };
    let mut roots = sign_scan(&f, t_max, step, tol)?;
    let predicted = rvm_predicted_count(t_max);
    if roots.len() as u64 != predicted {
        roots = sign_scan(&f, t_max, step / 5.0, tol)?;
    }
    finish_scan(roots, 1, None, t_max, tol, true, Some(predicted))
}

/// Zeros of L(s, χ) for a primitive χ, both signs of γ for complex
/// characters (negative ordinates are mirrored zeros of the conjugate).
pub fn l_zeros(chi: &Character<'_>, t_max: f64, step: f64) -> Result<ScanOutcome> {
    let q = chi.modulus();
    if q < 3 || q > 50 {
        return Err(Error::InvalidArgument(format!(
            "l_zeros requires 3 <= q <= 50, got {q}"
        )));
    }
    if !(t_max > 0.0 && t_max <= 100.0) {
        return Err(Error::InvalidArgument(format!(
            "l_zeros height must lie in (0, 100], got {t_max}"
        )));
    }
    if !(step > 0.0 && step <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "scan step must lie in (0, 1], got {step}"
        )));
    }
    if !chi.is_primitive() {
        return Err(Error::ImprimitiveCharacter {
            modulus: q,
            index: chi.index(),
            conductor: chi.conductor(),
        });
    }
    let tol = 1e-8;
    let f = |t: f64| hardy_z_chi(t, chi);
    let positives = sign_scan(&f, t_max, step, tol)?;
    let symmetric = chi.is_self_conjugate();
    let ordinates = if symmetric {
        positives
    } else {
        let conj = chi.conjugate();
        let g = |t: f64| hardy_z_chi(t, &conj);
        let conj_positives = sign_scan(&g, t_max, step, tol)?;
        let mut all: Vec<f64> = conj_positives.iter().rev().map(|&x| -x).collect();
        all.extend(positives);
        all
    };
    finish_scan(
        ordinates,
        q,
        Some(chi.index()),
        t_max,
        tol,
        symmetric,
        None,
    )
}

fn finish_scan(
    mut ordinates: Vec<f64>,
    modulus: u64,
    character_index: Option<usize>,
    height: f64,
    tolerance: f64,
    symmetric: bool,
    predicted: Option<u64>,
) -> Result<ScanOutcome> {
    let mut warnings = Vec::new();
    ordinates.retain(|&g| {
        if g.abs() <= 10.0 * tolerance {
            warnings.push(ScanWarning::NearZeroOrdinate { gamma: g });
            false
        } else {
            true
        }
    });
    if let Some(p) = predicted {
        if ordinates.len() as u64 != p {
            warnings.push(ScanWarning::CountMismatch {
                found: ordinates.len(),
                predicted: p,
            });
        }
    }
    let set = ZeroSet {
        modulus,
        character_index,
        ordinates,
        height,
        provenance: Provenance::Computed,
        tolerance,
        symmetric,
    };
    set.validate()?;
    for (window_start, count, ceiling) in set.density_violations() {
        warnings.push(ScanWarning::DensityExceeded {
            window_start,
            count,
            ceiling,
        });
    }
    Ok(ScanOutcome { set, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::CharacterTable;

    #[test]
    fn zeta_first_zero_bracketed() {
        let out = zeta_zeros(20.0, 0.05).unwrap();
        assert_eq!(out.set.ordinates.len(), 1);
        assert!((out.set.ordinates[0] - 14.134725).abs() < 1e-5);
    }

    #[test]
    fn zeta_zeros_to_100_finds_29() {
        let out = zeta_zeros(100.0, 0.05).unwrap();
        assert_eq!(out.set.ordinates.len(), 29);
        let first = out.set.ordinates[0];
        assert!(
            (14.13..14.14).contains(&first),
            "first ordinate {first} outside (14.13, 14.14)"
        );
        // |Z(γ)| small at every refined root.
        for &g in &out.set.ordinates {
            let z = zeta_z_any(g).abs();
            assert!(z <= 1e-6, "Z({g}) = {z}");
        }
    }

    #[test]
    fn zeta_zeros_below_first_zero_is_empty() {
        let out = zeta_zeros(10.0, 0.05).unwrap();
        assert!(out.set.ordinates.is_empty());
        assert!(out.warnings.is_empty());
    }

    #[test]
    fn chi4_has_exactly_one_zero_below_10() {
        let table = CharacterTable::new(4).unwrap();
        let chi = table.character(1);
        let out = l_zeros(&chi, 10.0, 0.02).unwrap();
        assert_eq!(out.set.ordinates.len(), 1);
        let g = out.set.ordinates[0];
        assert!((6.0..6.1).contains(&g), "gamma = {g}");
        assert!(out.set.symmetric);
    }

    #[test]
    fn complex_chi5_ordinates_mirror_conjugate() {
        let table = CharacterTable::new(5).unwrap();
        let chi = table
            .characters()
            .find(|c| !c.is_self_conjugate())
            .unwrap();
        let conj = chi.conjugate();
        let a = l_zeros(&chi, 15.0, 0.02).unwrap().set;
        let b = l_zeros(&conj, 15.0, 0.02).unwrap().set;
        assert!(!a.symmetric);
        assert_eq!(a.ordinates.len(), b.ordinates.len());
        for (x, y) in a.ordinates.iter().zip(b.ordinates.iter().rev()) {
            assert!((x + y).abs() < 1e-7, "{x} vs {y}");
        }
    }

    #[test]
    fn complex_chi5_negative_ordinates_match_direct_scan() {
        // The mirrored negatives must agree with scanning Z(t, χ) directly
        // at negative t.
        let table = CharacterTable::new(5).unwrap();
        let chi = table
            .characters()
            .find(|c| !c.is_self_conjugate())
            .unwrap();
        let set = l_zeros(&chi, 12.0, 0.02).unwrap().set;
        let negatives: Vec<f64> = set
            .ordinates
            .iter()
            .copied()
            .filter(|&g| g < 0.0)
            .collect();
        assert!(!negatives.is_empty());
        for &g in &negatives {
            let z = hardy_z_chi(g, &chi).unwrap().abs();
            assert!(z <= 1e-5, "direct |Z({g}, chi)| = {z}");
        }
    }

    #[test]
    fn chi3_density_windows_hold() {
        let table = CharacterTable::new(3).unwrap();
        let chi = table.character(1);
        let out = l_zeros(&chi, 100.0, 0.02).unwrap();
        assert!(out
            .warnings
            .iter()
            .all(|w| !matches!(w, ScanWarning::DensityExceeded { .. })));
        assert!(out.set.density_violations().is_empty());
    }

    #[test]
    fn l_zeros_rejects_imprimitive() {
        let table = CharacterTable::new(9).unwrap();
        let imprimitive = table
            .characters()
            .find(|c| !c.is_primitive() && !c.is_principal())
            .unwrap();
        assert!(l_zeros(&imprimitive, 10.0, 0.02).is_err());
    }
}
