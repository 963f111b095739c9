use super::{CodeSpec, QcBaseMatrix, StabilizerCode};
use crate::gf2::PauliMatrix;

/// A named quasi-cyclic base matrix with its expected parameters.
#[derive(Clone, Copy, Debug)]
pub struct LpPreset {
    pub name: &'static str,
    pub m: usize,
    pub shifts: &'static [&'static [i64]],
    pub n: usize,
    pub k: usize,
    pub girth: usize,
}

impl LpPreset {
    pub fn base(&self) -> QcBaseMatrix {
        QcBaseMatrix {
            m: self.m,
            shifts: self.shifts.iter().map(|r| r.to_vec()).collect(),
        }
    }
}

pub const LP_PRESETS: [LpPreset; 6] = [
    LpPreset {
        name: "lp1054",
        m: 31,
        shifts: &[&[1, 2, 4, 8, 16], &[5, 10, 20, 9, 18], &[25, 19, 7, 14, 28]],
        n: 1054,
        k: 140,
        girth: 8,
    },
    LpPreset {
        name: "lp2210",
        m: 65,
        shifts: &[
            &[30, 32, 57, 37, 23],
            &[19, 7, 53, 64, 47],
            &[47, 7, 63, 37, 21],
        ],
        n: 2210,
        k: 276,
        girth: 8,
    },
    LpPreset {
        name: "lp4114",
        m: 121,
        shifts: &[
            &[55, 60, 106, 118, 88],
            &[36, 13, 95, 70, 37],
            &[86, 13, 71, 44, 31],
        ],
        n: 4114,
        k: 500,
        girth: 10,
    },
    LpPreset {
        name: "lp925",
        m: 37,
        shifts: &[&[17, 19, 33, 21], &[11, 4, 31, 0], &[27, 4, 36, 21]],
        n: 925,
        k: 49,
        girth: 8,
    },
    LpPreset {
        name: "lp2075",
        m: 83,
        shifts: &[&[38, 41, 73, 47], &[25, 9, 65, 42], &[59, 9, 81, 62]],
        n: 2075,
        k: 95,
        girth: 10,
    },
    LpPreset {
        name: "lp4075",
        m: 163,
        shifts: &[&[74, 80, 143, 92], &[48, 18, 129, 159], &[116, 17, 156, 84]],
        n: 4075,
        k: 175,
        girth: 10,
    },
];

pub fn lp_preset(name: &str) -> Option<&'static LpPreset> {
    LP_PRESETS.iter().find(|p| p.name == name)
}

/// The [[4,1]] code with checks `XIZI`, `IYIY`, `ZIXY`.
pub fn four_one_example() -> StabilizerCode {
    let pauli = PauliMatrix::from_strs(&["XIZI", "IYIY", "ZIXY"]).expect("static matrix");
    StabilizerCode::new("four_one", CodeSpec::FourOne, pauli).expect("static matrix commutes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_one_parameters() {
        let c = four_one_example();
        assert_eq!((c.n(), c.k(), c.rank()), (4, 1, 3));
    }

    #[test]
    fn presets_are_valid() {
        for p in &LP_PRESETS {
            let b = p.base();
            b.validate().unwrap();
            assert_eq!(p.n, b.m * (b.w() * b.w() + b.j() * b.j()));
        }
        assert!(lp_preset("lp925").is_some());
        assert!(lp_preset("nope").is_none());
    }
}
