//! Zero files: UTF-8 text, five header lines then one ordinate per line.
//!
//! ```text
//! # modulus=<q>
//! # character=<index or "zeta">
//! # height=<T>
//! # tolerance=<eps>
//! # provenance=<computed|imported>
//! <ordinate>
//! ...
//! ```
//!
//! Ordinates are decimal with 17 significant digits, strictly increasing;
//! negative ordinates are allowed for complex characters. Export followed by
//! import reproduces each ordinate bit-exactly (17 digits round-trip f64).
//! The symmetry flag is reconstructed on import: q = 1 or an all-positive
//! set is treated as self-conjugate.

use std::fs;
use std::io::Write as _;
use std::path::Path;

use super::{Provenance, ZeroSet};
use crate::error::{Error, Result};

/// Serialize a zero set in the documented text format.
pub fn export_zeros(set: &ZeroSet, path: &Path) -> Result<()> {
    set.validate()?;
    let mut buf = String::new();
    buf.push_str(&format!("# modulus={}\n", set.modulus));
    match set.character_index {
        None => buf.push_str("# character=zeta\n"),
        Some(i) => buf.push_str(&format!("# character={i}\n")),
    }
    buf.push_str(&format!("# height={}\n", fmt_f64(set.height)));
    buf.push_str(&format!("# tolerance={}\n", fmt_f64(set.tolerance)));
    buf.push_str(&format!("# provenance={}\n", set.provenance));
    for &g in &set.ordinates {
        buf.push_str(&fmt_f64(g));
        buf.push('\n');
    }
    let mut file = fs::File::create(path)?;
    file.write_all(buf.as_bytes())?;
    Ok(())
}

/// 17 significant digits: enough for ≥ 12 required digits and for the
/// parse∘format round trip to be the identity on f64.
fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Parse and validate a zero file.
pub fn import_zeros(path: &Path) -> Result<ZeroSet> {
    let text = fs::read_to_string(path)?;
    let path_str = path.display().to_string();
    let err = |line: usize, msg: String| Error::ZeroFileFormat {
        path: path_str.clone(),
        line,
        msg,
    };

    let mut lines = text.lines().enumerate();
    let mut header = |key: &str| -> Result<String> {
        match lines.next() {
            Some((i, line)) => {
                let prefix = format!("# {key}=");
                line.strip_prefix(&prefix)
                    .map(|v| v.trim().to_string())
                    .ok_or_else(|| {
                        err(i + 1, format!("expected header `{prefix}<value>`, got `{line}`"))
                    })
            }
            None => Err(err(0, format!("missing header `# {key}=`"))),
        }
    };

    let modulus: u64 = header("modulus")?
        .parse()
        .map_err(|e| err(1, format!("bad modulus: {e}")))?;
    if modulus == 0 {
        return Err(err(1, "modulus must be positive".into()));
    }
    let character = header("character")?;
    let character_index = if character == "zeta" {
        if modulus != 1 {
            return Err(err(2, format!("character=zeta requires modulus=1, got {modulus}")));
        }
        None
    } else {
        let idx: usize = character
            .parse()
            .map_err(|e| err(2, format!("bad character index: {e}")))?;
        if modulus == 1 {
            return Err(err(2, "modulus 1 requires character=zeta".into()));
        }
        Some(idx)
    };
    let height: f64 = header("height")?
        .parse()
        .map_err(|e| err(3, format!("bad height: {e}")))?;
    let tolerance: f64 = header("tolerance")?
        .parse()
        .map_err(|e| err(4, format!("bad tolerance: {e}")))?;
    let provenance = match header("provenance")?.as_str() {
        "computed" => Provenance::Computed,
        "imported" => Provenance::Imported,
        other => return Err(err(5, format!("bad provenance `{other}`"))),
    };

    let mut ordinates = Vec::new();
    for (i, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let g: f64 = line
            .parse()
            .map_err(|e| err(i + 1, format!("bad ordinate `{line}`: {e}")))?;
        if let Some(&prev) = ordinates.last() {
            if g <= prev {
                return Err(err(
                    i + 1,
                    format!("ordinates must be strictly increasing: {prev} then {g}"),
                ));
            }
        }
        ordinates.push(g);
    }

    let symmetric = modulus == 1 || ordinates.iter().all(|&g| g > 0.0);
    let set = ZeroSet {
        modulus,
        character_index,
        ordinates,
        height,
        provenance,
        tolerance,
        symmetric,
    };
    set.validate()?;
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_set() -> ZeroSet {
        ZeroSet {
            modulus: 1,
            character_index: None,
            ordinates: vec![14.134725141734694, 21.022039638771555, 25.010857580145688],
            height: 30.0,
            provenance: Provenance::Computed,
            tolerance: 1e-9,
            symmetric: true,
        }
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("zeros.txt");
        let set = sample_set();
        export_zeros(&set, &p).unwrap();
        let back = import_zeros(&p).unwrap();
        assert_eq!(back.modulus, set.modulus);
        assert_eq!(back.character_index, set.character_index);
        assert_eq!(back.provenance, set.provenance);
        assert_eq!(back.ordinates.len(), set.ordinates.len());
        for (a, b) in back.ordinates.iter().zip(set.ordinates.iter()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
        // Second export is byte-identical.
        let p2 = dir.path().join("zeros2.txt");
        export_zeros(&back, &p2).unwrap();
        assert_eq!(fs::read(&p).unwrap(), fs::read(&p2).unwrap());
    }

    #[test]
    fn non_monotone_file_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad.txt");
        fs::write(
            &p,
            "# modulus=1\n# character=zeta\n# height=30\n# tolerance=1e-9\n# provenance=computed\n21.0\n14.1\n",
        )
        .unwrap();
        let e = import_zeros(&p).unwrap_err();
        assert!(matches!(e, Error::ZeroFileFormat { line: 7, .. }), "{e}");
    }

    #[test]
    fn modulus_character_mismatch_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad.txt");
        fs::write(
            &p,
            "# modulus=4\n# character=zeta\n# height=30\n# tolerance=1e-9\n# provenance=computed\n",
        )
        .unwrap();
        assert!(import_zeros(&p).is_err());
        fs::write(
            &p,
            "# modulus=1\n# character=1\n# height=30\n# tolerance=1e-9\n# provenance=computed\n",
        )
        .unwrap();
        assert!(import_zeros(&p).is_err());
    }

    #[test]
    fn malformed_header_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad.txt");
        fs::write(&p, "modulus: 1\n").unwrap();
        let e = import_zeros(&p).unwrap_err();
        assert!(matches!(e, Error::ZeroFileFormat { line: 1, .. }), "{e}");
    }

    #[test]
    fn negative_ordinates_clear_symmetry() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("complex.txt");
        fs::write(
            &p,
            "# modulus=5\n# character=1\n# height=30\n# tolerance=1e-8\n# provenance=computed\n-6.5\n2.3\n",
        )
        .unwrap();
        let set = import_zeros(&p).unwrap();
        assert!(!set.symmetric);
    }
}
