use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{CodeSpec, StabilizerCode};
use crate::error::{Error, Result};
use crate::gf2::{BinaryMatrix, PauliMatrix};

const BATCH: usize = 32;
const SINGLE_TAIL: usize = 64;
const MAX_ATTEMPTS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BicycleParams {
    pub n: usize,
    pub rate: f64,
    pub w: usize,
    pub seed: u64,
}

impl BicycleParams {
    /// Rows kept from the `n/2` rows of `[C | C^T]`.
    pub fn rows_kept(&self) -> usize {
        (self.n as f64 * (1.0 - self.rate) / 2.0).floor() as usize
    }

    /// `n - 2 r_keep`, the dimension when the kept rows are independent.
    pub fn nominal_k(&self) -> usize {
        self.n - 2 * self.rows_kept()
    }
}

/// Bicycle code: a random circulant `C` of row weight `w/2`, `H0 = [C | C^T]`,
/// rows deleted greedily to keep column weights even, and `H_X = H_Z` equal
/// to the kept rows.
///
/// Deletion runs in batches of 32 until 64 deletions remain, then one row at
/// a time. Every row of `H0` has weight `w`, so removing row `i` lowers the
/// sum of squared column weights by `sum_{c in i} (2 w_c - 1)`; the row with
/// the largest `sum w_c` is removed first, lowest index on ties. A batch
/// takes the top 32 rows of one scoring pass.
pub fn build_bicycle(params: &BicycleParams) -> Result<StabilizerCode> {
    let BicycleParams { n, rate, w, seed } = *params;
    if n < 2 || n % 2 != 0 {
        return Err(Error::InvalidCode(format!(
            "bicycle length must be even, got {n}"
        )));
    }
    if w < 2 || w % 2 != 0 || w > n {
        return Err(Error::InvalidCode(format!(
            "bicycle weight must be even and at most n, got {w}"
        )));
    }
    if !(0.0..1.0).contains(&rate) {
        return Err(Error::InvalidCode(format!("rate {rate} outside [0, 1)")));
    }
    let half = n / 2;
    let keep = params.rows_kept();
    if keep == 0 {
        return Err(Error::InvalidCode("rate leaves no checks".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let min_k = 0.9 * params.nominal_k() as f64;
    for _ in 0..MAX_ATTEMPTS {
        let support: Vec<usize> = sample(&mut rng, half, w / 2).into_vec();
        let h0 = circulant_pair(half, &support);
        let kept = delete_rows(&h0, half - keep);
        let rank = kept.rank();
        let k = n - 2 * rank;
        if (k as f64) < min_k {
            continue;
        }
        let pauli = PauliMatrix::from_css(&kept, &kept);
        let spec = CodeSpec::Bicycle { n, rate, w, seed };
        let id = spec.default_id();
        return Ok(StabilizerCode::with_rank(id, spec, pauli, 2 * rank));
    }
    Err(Error::Construction(format!(
        "no bicycle instance reached k >= {min_k:.0} in {MAX_ATTEMPTS} attempts"
    )))
}

/// `[C | C^T]` where row `i` of `C` is the support shifted right by `i`.
fn circulant_pair(half: usize, support: &[usize]) -> BinaryMatrix {
    let mut h = BinaryMatrix::zeros(half, 2 * half);
    for i in 0..half {
        for &s in support {
            h.set(i, (i + s) % half, true);
            h.set(i, half + (i + half - s) % half, true);
        }
    }
    h
}

fn delete_rows(h0: &BinaryMatrix, deletions: usize) -> BinaryMatrix {
    let rows = h0.rows();
    let supports: Vec<Vec<usize>> = (0..rows).map(|r| h0.row_ones(r).collect()).collect();
    let mut col_weight = h0.column_weights();
    let mut alive = vec![true; rows];
    let mut remaining = deletions;

    let score = |r: usize, cw: &[usize]| supports[r].iter().map(|&c| cw[c]).sum::<usize>();
    let remove = |r: usize, cw: &mut Vec<usize>, alive: &mut Vec<bool>| {
        alive[r] = false;
        for &c in &supports[r] {
            cw[c] -= 1;
        }
    };

    while remaining > SINGLE_TAIL {
        let take = BATCH.min(remaining - SINGLE_TAIL);
        let mut ranked: Vec<(usize, usize)> = (0..rows)
            .filter(|&r| alive[r])
            .map(|r| (score(r, &col_weight), r))
            .collect();
        ranked.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for &(_, r) in ranked.iter().take(take) {
            remove(r, &mut col_weight, &mut alive);
        }
        remaining -= take;
    }
    while remaining > 0 {
        let best = (0..rows)
            .filter(|&r| alive[r])
            .max_by(|&a, &b| {
                score(a, &col_weight)
                    .cmp(&score(b, &col_weight))
                    .then(b.cmp(&a))
            })
            .expect("rows left to delete");
        remove(best, &mut col_weight, &mut alive);
        remaining -= 1;
    }
    let kept: Vec<usize> = (0..rows).filter(|&r| alive[r]).collect();
    h0.select_rows(&kept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::is_self_orthogonal;

    #[test]
    fn circulant_pair_is_self_orthogonal() {
        let h0 = circulant_pair(11, &[0, 3, 4]);
        assert!(h0.mul(&h0.transpose()).is_zero());
        assert!((0..11).all(|r| h0.row_weight(r) == 6));
    }

    #[test]
    fn dense_generator_deletes_nothing() {
        let code = build_bicycle(&BicycleParams {
            n: 8,
            rate: 0.0,
            w: 8,
            seed: 1,
        })
        .unwrap();
        assert_eq!(code.num_checks(), 8);
        assert_eq!(code.k(), 8 - 2);
        assert!(is_self_orthogonal(code.check_matrix()));
    }

    #[test]
    fn deletion_respects_tie_break() {
        // All rows equal score: deletion removes lowest indices first.
        let h0 = BinaryMatrix::identity(4);
        let kept = delete_rows(&h0, 2);
        assert_eq!(kept, h0.select_rows(&[2, 3]));
    }

    #[test]
    fn greedy_prefers_heavy_columns() {
        let h0 = BinaryMatrix::parse("1100;1010;0011;0001").unwrap();
        // Column weights 2,1,2,2; scores 3,4,4,2 -> row 1 goes first.
        let kept = delete_rows(&h0, 1);
        assert_eq!(kept, h0.select_rows(&[0, 2, 3]));
    }

    #[test]
    fn small_instance_meets_rate() {
        let p = BicycleParams {
            n: 200,
            rate: 0.5,
            w: 8,
            seed: 7,
        };
        let code = build_bicycle(&p).unwrap();
        assert_eq!(code.n(), 200);
        assert_eq!(code.num_checks(), 2 * p.rows_kept());
        assert!(code.k() >= p.nominal_k());
        assert!(is_self_orthogonal(code.check_matrix()));
        let again = build_bicycle(&p).unwrap();
        assert_eq!(again.check_matrix(), code.check_matrix());
    }

    #[test]
    fn invalid_parameters() {
        let base = BicycleParams {
            n: 20,
            rate: 0.5,
            w: 4,
            seed: 0,
        };
        assert!(build_bicycle(&BicycleParams { n: 21, ..base }).is_err());
        assert!(build_bicycle(&BicycleParams { w: 3, ..base }).is_err());
        assert!(build_bicycle(&BicycleParams { rate: 1.0, ..base }).is_err());
    }
}
