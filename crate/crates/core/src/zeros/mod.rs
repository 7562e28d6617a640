//! Critical-line zeros of ζ(s) and of Dirichlet L-functions.
//!
//! Zero location is sign-change scanning of a real rotated function (Hardy's
//! Z for ζ, its ε-rotated analogue for primitive characters) followed by
//! bisection refinement. Only the critical line is scanned; an off-line zero
//! would surface as a count mismatch, which is reported as a structured
//! warning rather than silent success.

mod hardy;
mod io;
mod scan;
mod theta;

pub use hardy::{hardy_z_chi, riemann_siegel_z, zeta_z_any, RS_SWITCH};
pub use io::{export_zeros, import_zeros};
pub use scan::{l_zeros, zeta_zeros, ScanOutcome, ScanWarning};
pub use theta::{riemann_siegel_theta, rvm_predicted_count};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Where a zero set came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    Computed,
    Imported,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Provenance::Computed => write!(f, "computed"),
            Provenance::Imported => write!(f, "imported"),
        }
    }
}

/// Density ceiling per unit window: 10·log(2q(|t|+2)).
pub fn density_ceiling(q: u64, t: f64) -> f64 {
    10.0 * (2.0 * q as f64 * (t.abs() + 2.0)).ln()
}

/// Sorted critical-line ordinates of one L-function.
///
/// For ζ and self-conjugate characters only positive ordinates are stored
/// and `symmetric` is set; consumers must mirror. Complex characters carry
/// both signs (negative ordinates are the mirrored zeros of the conjugate
/// character).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ZeroSet {
    pub modulus: u64,
    /// Index into the character table mod `modulus`; `None` for ζ.
    pub character_index: Option<usize>,
    pub ordinates: Vec<f64>,
    /// Search bound: every |γ| ≤ height.
    pub height: f64,
    pub provenance: Provenance,
    /// Bisection precision of the ordinates.
    pub tolerance: f64,
    /// Positive ordinates only; mirror for consumption.
    pub symmetric: bool,
}

impl ZeroSet {
    /// Structural invariants: strict monotonicity, the height bound, no
    /// ordinate at 0, positivity under the symmetry flag.
    pub fn validate(&self) -> Result<()> {
        for w in self.ordinates.windows(2) {
            if !(w[0] < w[1]) {
                return Err(Error::InvalidArgument(format!(
                    "ordinates not strictly increasing: {} then {}",
                    w[0], w[1]
                )));
            }
        }
        for &g in &self.ordinates {
            if !g.is_finite() {
                return Err(Error::NonFinite("zero ordinate"));
            }
            if g.abs() > self.height + self.tolerance {
                return Err(Error::InvalidArgument(format!(
                    "ordinate {g} exceeds height {}",
                    self.height
                )));
            }
            if g.abs() <= 10.0 * self.tolerance {
                return Err(Error::InvalidArgument(format!(
                    "ordinate {g} indistinguishable from 0 at tolerance {}",
                    self.tolerance
                )));
            }
            if self.symmetric && g <= 0.0 {
                return Err(Error::SymmetryMisuse(format!(
                    "symmetric set contains non-positive ordinate {g}"
                )));
            }
        }
        Ok(())
    }

    /// Unit windows whose zero count exceeds the density ceiling, as
    /// (window start, count, ceiling).
    pub fn density_violations(&self) -> Vec<(f64, usize, f64)> {
        let mut out = Vec::new();
        let ords = &self.ordinates;
        let mut hi = 0usize;
        for i in 0..ords.len() {
            if hi < i {
                hi = i;
            }
            while hi < ords.len() && ords[hi] < ords[i] + 1.0 {
                hi += 1;
            }
            let count = hi - i;
            let ceiling = density_ceiling(self.modulus, ords[i]);
            if count as f64 > ceiling {
                out.push((ords[i], count, ceiling));
            }
        }
        out
    }

    /// Number of ordinates γ with |γ| ≤ t, counting mirrored negatives when
    /// the symmetry flag is set.
    pub fn count_with_mirror(&self, t: f64) -> usize {
        let direct = self.ordinates.iter().filter(|g| g.abs() <= t).count();
        if self.symmetric {
            2 * direct
        } else {
            direct
        }
    }
}
