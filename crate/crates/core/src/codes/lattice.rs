use super::{CodeSpec, StabilizerCode};
use crate::error::{Error, Result};
use crate::gf2::{Pauli, PauliMatrix};

/// Rotated toric code on an `L x L` periodic grid of qubits.
///
/// Qubit `(r, c)` has index `r L + c`. Face `(r, c)` touches the qubits at
/// `(r, c)`, `(r, c+1)`, `(r+1, c)`, `(r+1, c+1)` (mod `L`) and is X-type when
/// `r + c` is even, Z-type otherwise. Checks are listed face by face in
/// row-major order.
pub fn build_toric(l: usize) -> Result<StabilizerCode> {
    if l < 2 || l % 2 != 0 {
        return Err(Error::InvalidCode(format!(
            "toric code needs even L >= 2, got {l}"
        )));
    }
    let n = l * l;
    let mut h = PauliMatrix::identity_filled(n, n);
    for r in 0..l {
        for c in 0..l {
            let p = if (r + c) % 2 == 0 { Pauli::X } else { Pauli::Z };
            for (dr, dc) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                h.set(r * l + c, ((r + dr) % l) * l + (c + dc) % l, p);
            }
        }
    }
    StabilizerCode::new(format!("toric_L{l}"), CodeSpec::Toric { l }, h)
}

/// Offset `a` of the twisted XZZX code of odd distance `d`: the solution of
/// `t + a (t + 1) = 0 mod n` with `t = (d - 1) / 2`, `n = t^2 + (t + 1)^2`.
pub fn xzzx_twist(d: usize) -> Option<usize> {
    let t = (d - 1) / 2;
    let n = t * t + (t + 1) * (t + 1);
    (0..n).find(|&a| (t + a * (t + 1)) % n == 0)
}

/// Twisted XZZX code `[[ (d^2+1)/2, 1, d ]]` with cyclic checks
/// `X_i Z_{i+1} Z_{i+a} X_{i+a+1}` (indices mod `n`).
pub fn build_xzzx(d: usize) -> Result<StabilizerCode> {
    if d < 3 || d % 2 == 0 {
        return Err(Error::InvalidCode(format!(
            "XZZX code needs odd d >= 3, got {d}"
        )));
    }
    let n = (d * d + 1) / 2;
    let a =
        xzzx_twist(d).ok_or_else(|| Error::Construction(format!("no twist offset for d = {d}")))?;
    let mut h = PauliMatrix::identity_filled(n, n);
    for i in 0..n {
        for (off, p) in [
            (0, Pauli::X),
            (1, Pauli::Z),
            (a, Pauli::Z),
            (a + 1, Pauli::X),
        ] {
            h.set(i, (i + off) % n, p);
        }
    }
    let code = StabilizerCode::new(format!("xzzx_d{d}"), CodeSpec::Xzzx { d }, h)?;
    if code.k() != 1 {
        return Err(Error::Construction(format!(
            "XZZX layout for d = {d} gave k = {}",
            code.k()
        )));
    }
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::{is_self_orthogonal, BinaryMatrix};

    /// Rank by a plain dense elimination on `Vec<Vec<u8>>`, independent of
    /// the packed implementation.
    fn rank_oracle(m: &BinaryMatrix) -> usize {
        let mut rows: Vec<Vec<u8>> = (0..m.rows())
            .map(|r| (0..m.cols()).map(|c| m.get(r, c) as u8).collect())
            .collect();
        let mut rank = 0;
        for c in 0..m.cols() {
            if let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] == 1) {
                rows.swap(p, rank);
                let pivot = rows[rank].clone();
                for (r, row) in rows.iter_mut().enumerate() {
                    if r != rank && row[c] == 1 {
                        for (x, y) in row.iter_mut().zip(&pivot) {
                            *x ^= y;
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    fn per_qubit_check_count(code: &StabilizerCode) -> Vec<usize> {
        let h = code.pauli();
        (0..code.n())
            .map(|c| (0..h.rows()).filter(|&r| h.get(r, c) != Pauli::I).count())
            .collect()
    }

    #[test]
    fn toric_parameters() {
        for (l, rank) in [(2, 2), (4, 14), (6, 34), (8, 62)] {
            let code = build_toric(l).unwrap();
            assert_eq!(code.n(), l * l);
            assert_eq!(code.k(), 2, "L = {l}");
            assert_eq!(code.rank(), rank);
            assert_eq!(rank_oracle(code.check_matrix()), rank);
            assert!(is_self_orthogonal(code.check_matrix()));
            if l >= 4 {
                assert!(per_qubit_check_count(&code).iter().all(|&c| c == 4));
                assert!((0..code.num_checks()).all(|r| code.pauli().row_weight(r) == 4));
            }
        }
    }

    #[test]
    fn toric_rejects_odd() {
        assert!(build_toric(3).is_err());
        assert!(build_toric(0).is_err());
    }

    #[test]
    fn xzzx_twists() {
        assert_eq!(xzzx_twist(3), Some(2));
        assert_eq!(xzzx_twist(5), Some(8));
    }

    #[test]
    fn xzzx_parameters() {
        let five = build_xzzx(3).unwrap();
        assert_eq!(five.pauli().to_string().lines().next(), Some("XZZXI"));
        for (d, n) in [(3, 5), (5, 13), (7, 25), (11, 61), (17, 145)] {
            let code = build_xzzx(d).unwrap();
            assert_eq!((code.n(), code.k()), (n, 1), "d = {d}");
            assert!((0..code.num_checks()).all(|r| code.pauli().row_weight(r) <= 4));
            assert!(per_qubit_check_count(&code).iter().all(|&c| c == 4));
        }
        assert!(build_xzzx(4).is_err());
    }
}
