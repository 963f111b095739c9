use crate::error::{Error, Result};

/// Smallest `α` in the built-in sweeps.
pub const ALPHA_FLOOR: f64 = 0.3;
/// Spacing of the built-in sweeps.
pub const ALPHA_STEP: f64 = 0.01;
const ALPHA_CEIL: f64 = 1.2;

/// `max(min(-15 p + 6, 1.2), 0.3)`.
pub fn alpha_func(p: f64) -> f64 {
    (-15.0 * p + 6.0).min(ALPHA_CEIL).max(ALPHA_FLOOR)
}

/// Non-empty, strictly descending list of positive inhibition factors.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaList(Vec<f64>);

impl AlphaList {
    pub fn new(alphas: Vec<f64>) -> Result<Self> {
        if alphas.is_empty() {
            return Err(Error::InvalidDecoder("empty alpha list".into()));
        }
        if let Some(a) = alphas.iter().find(|a| !(a.is_finite() && **a > 0.0)) {
            return Err(Error::InvalidDecoder(format!(
                "alpha {a} is not a positive number"
            )));
        }
        if alphas.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::InvalidDecoder(
                "alpha list must be strictly descending".into(),
            ));
        }
        Ok(Self(alphas))
    }

    pub fn single(alpha: f64) -> Result<Self> {
        Self::new(vec![alpha])
    }

    /// `start, start - step, ...` down to `stop` inclusive.
    pub fn range(start: f64, stop: f64, step: f64) -> Result<Self> {
        if !(step > 0.0) || stop > start {
            return Err(Error::InvalidDecoder(format!(
                "bad alpha range {start}..{stop} by {step}"
            )));
        }
        // Work in integer steps so the grid carries no accumulated drift.
        let count = ((start - stop) / step + 1e-9).floor() as usize;
        let list = (0..=count)
            .map(|i| round_grid(start - i as f64 * step))
            .collect();
        Self::new(list)
    }

    /// `1.2, 1.19, ..., 0.3`.
    pub fn fixed_range() -> Self {
        Self::range(ALPHA_CEIL, ALPHA_FLOOR, ALPHA_STEP).expect("built-in range is valid")
    }

    /// `func(p), func(p) - 0.01, ...`, ending with `0.3`.
    pub fn from_func(p: f64) -> Self {
        let start = alpha_func(p);
        let mut list: Vec<f64> = Vec::new();
        let mut i = 0usize;
        loop {
            let a = round_grid(start - i as f64 * ALPHA_STEP);
            if a < ALPHA_FLOOR + 1e-12 {
                break;
            }
            list.push(a);
            i += 1;
        }
        list.push(ALPHA_FLOOR);
        Self::new(list).expect("func list is descending")
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> f64 {
        self.0[0]
    }
}

fn round_grid(x: f64) -> f64 {
    (x * 1e9).round() / 1e9
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn func_checkpoints() {
        assert!((alpha_func(0.32) - 1.2).abs() < 1e-12);
        assert!((alpha_func(0.34) - 0.9).abs() < 1e-12);
        assert!((alpha_func(0.5) - 0.3).abs() < 1e-12);
        assert!((alpha_func(0.0) - 1.2).abs() < 1e-12);
    }

    #[test]
    fn fixed_range_shape() {
        let l = AlphaList::fixed_range();
        assert_eq!(l.len(), 91);
        assert_eq!(l.first(), 1.2);
        assert_eq!(*l.as_slice().last().unwrap(), 0.3);
        assert!((l.as_slice()[1] - 1.19).abs() < 1e-12);
    }

    #[test]
    fn func_list_ends_at_floor() {
        let l = AlphaList::from_func(0.34);
        assert_eq!(l.first(), 0.9);
        assert_eq!(l.len(), 61);
        assert_eq!(*l.as_slice().last().unwrap(), 0.3);
        let floor_only = AlphaList::from_func(0.45);
        assert_eq!(floor_only.as_slice(), &[0.3]);
        let between = AlphaList::from_func(0.3405);
        let s = between.as_slice();
        assert!((s[0] - 0.8925).abs() < 1e-9);
        assert!((s[s.len() - 2] - 0.3025).abs() < 1e-9);
        assert_eq!(s[s.len() - 1], 0.3);
    }

    #[test]
    fn range_for_toric_sweep() {
        let l = AlphaList::range(0.95, 0.3, 0.01).unwrap();
        assert_eq!(l.len(), 66);
        assert_eq!(*l.as_slice().last().unwrap(), 0.3);
    }

    #[test]
    fn rejects_bad_lists() {
        assert!(AlphaList::new(vec![]).is_err());
        assert!(AlphaList::new(vec![1.0, 1.0]).is_err());
        assert!(AlphaList::new(vec![0.5, 0.7]).is_err());
        assert!(AlphaList::new(vec![1.0, 0.0]).is_err());
        assert!(AlphaList::new(vec![f64::NAN]).is_err());
        assert!(AlphaList::range(0.3, 1.0, 0.1).is_err());
    }
}
