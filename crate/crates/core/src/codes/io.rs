use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::gf2::{is_self_orthogonal, PauliMatrix};

/// Summary reported when a Pauli file is loaded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LoadReport {
    pub n: usize,
    pub checks: usize,
    pub self_orthogonal: bool,
    /// `n - rank`; only meaningful for commuting checks.
    pub k: Option<usize>,
}

/// Parses one check per line over `IXYZ`. Blank lines and lines starting
/// with `#` are skipped.
pub fn parse_pauli_text(text: &str) -> Result<(PauliMatrix, LoadReport)> {
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let pauli = PauliMatrix::from_strs(&lines)?;
    let h = pauli.to_binary();
    let self_orthogonal = is_self_orthogonal(&h);
    if !self_orthogonal {
        log::warn!(
            "loaded {}x{} Pauli matrix whose checks do not all commute",
            pauli.rows(),
            pauli.cols()
        );
    }
    let report = LoadReport {
        n: pauli.cols(),
        checks: pauli.rows(),
        self_orthogonal,
        k: self_orthogonal.then(|| pauli.cols() - h.rank()),
    };
    Ok((pauli, report))
}

pub fn load_pauli(path: impl AsRef<Path>) -> Result<(PauliMatrix, LoadReport)> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_pauli_text(&text)
}

pub fn save_pauli(path: impl AsRef<Path>, pauli: &PauliMatrix) -> Result<()> {
    let path = path.as_ref();
    let mut text = pauli.to_string();
    if pauli.rows() > 0 {
        text.push('\n');
    }
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::Pauli;
    use proptest::prelude::*;

    #[test]
    fn four_one_file() {
        let (p, report) = parse_pauli_text("XIZI\nIYIY\nZIXY\n").unwrap();
        assert_eq!((p.rows(), p.cols()), (3, 4));
        assert_eq!(report.k, Some(1));
        assert!(report.self_orthogonal);
    }

    #[test]
    fn empty_file() {
        let (p, report) = parse_pauli_text("").unwrap();
        assert_eq!((p.rows(), p.cols()), (0, 0));
        assert_eq!(report.k, Some(0));
    }

    #[test]
    fn malformed_files() {
        assert!(matches!(
            parse_pauli_text("XI\nX\n"),
            Err(Error::RaggedRows { .. })
        ));
        assert!(matches!(
            parse_pauli_text("XA\n"),
            Err(Error::InvalidPauliChar('A'))
        ));
    }

    #[test]
    fn classical_matrix_loads_with_warning() {
        let (_, report) = parse_pauli_text("XI\nZI\n").unwrap();
        assert!(!report.self_orthogonal);
        assert_eq!(report.k, None);
    }

    proptest! {
        #[test]
        fn file_round_trip(entries in proptest::collection::vec(0u8..4, 1..40), width in 1usize..8) {
            let rows: Vec<Vec<Pauli>> = entries
                .chunks(width)
                .filter(|c| c.len() == width)
                .map(|c| c.iter().map(|&v| Pauli::ALL[v as usize]).collect())
                .collect();
            prop_assume!(!rows.is_empty());
            let p = PauliMatrix::from_rows(&rows).unwrap();
            let dir = tempfile::tempdir().unwrap();
            let path = dir.path().join("h.txt");
            save_pauli(&path, &p).unwrap();
            let (back, _) = load_pauli(&path).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
