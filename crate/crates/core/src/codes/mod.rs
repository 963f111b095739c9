//! Code families, Tanner-graph girth and the Pauli text format.

mod bicycle;
mod catalog;
mod girth;
mod io;
mod lattice;
mod product;
mod qc;

use std::path::PathBuf;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{
    is_self_orthogonal, standard_form, swap_halves, BinaryMatrix, BinaryVector, PauliMatrix,
    StandardFormResult,
};

pub use bicycle::{build_bicycle, BicycleParams};
pub use catalog::{four_one_example, lp_preset, LP_PRESETS};
pub use girth::{girth, Girth};
pub use io::{load_pauli, parse_pauli_text, save_pauli, LoadReport};
pub use lattice::{build_toric, build_xzzx, xzzx_twist};
pub use product::{build_hypergraph_product, hypergraph_product_matrices};
pub use qc::{build_lifted_product, expand_qc, lifted_product_matrices, QcBaseMatrix};

/// Either a named preset or an explicit base matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BaseRef {
    Preset(String),
    Explicit(QcBaseMatrix),
}

impl BaseRef {
    pub fn resolve(&self) -> Result<QcBaseMatrix> {
        match self {
            BaseRef::Preset(name) => lp_preset(name).map(|p| p.base()).ok_or_else(|| {
                Error::InvalidCode(format!("unknown lifted-product preset {name:?}"))
            }),
            BaseRef::Explicit(b) => Ok(b.clone()),
        }
    }
}

/// Serializable description of a code; [`CodeSpec::build`] constructs it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum CodeSpec {
    /// The [[4,1]] code with checks XIZI, IYIY, ZIXY.
    FourOne,
    Bicycle {
        n: usize,
        rate: f64,
        w: usize,
        #[serde(default)]
        seed: u64,
    },
    LiftedProduct {
        base: BaseRef,
    },
    /// Seed matrices as rows of `0`/`1` strings.
    HypergraphProduct {
        h1: Vec<String>,
        h2: Vec<String>,
    },
    Toric {
        l: usize,
    },
    Xzzx {
        d: usize,
    },
    File {
        path: PathBuf,
    },
}

impl CodeSpec {
    pub fn default_id(&self) -> String {
        match self {
            CodeSpec::FourOne => "four_one".into(),
            CodeSpec::Bicycle { n, rate, w, seed } => format!("bicycle_n{n}_r{rate}_w{w}_s{seed}"),
            CodeSpec::LiftedProduct { base } => match base {
                BaseRef::Preset(name) => name.clone(),
                BaseRef::Explicit(b) => format!("lp_m{}_{}x{}", b.m, b.j(), b.w()),
            },
            CodeSpec::HypergraphProduct { h1, h2 } => {
                format!(
                    "hp_{}x{}_{}x{}",
                    h1.len(),
                    h1.first().map_or(0, String::len),
                    h2.len(),
                    h2.first().map_or(0, String::len)
                )
            }
            CodeSpec::Toric { l } => format!("toric_L{l}"),
            CodeSpec::Xzzx { d } => format!("xzzx_d{d}"),
            CodeSpec::File { path } => path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "file".into()),
        }
    }

    pub fn build(&self) -> Result<StabilizerCode> {
        let code = match self {
            CodeSpec::FourOne => four_one_example(),
            CodeSpec::Bicycle { n, rate, w, seed } => build_bicycle(&BicycleParams {
                n: *n,
                rate: *rate,
                w: *w,
                seed: *seed,
            })?,
            CodeSpec::LiftedProduct { base } => build_lifted_product(&base.resolve()?)?,
            CodeSpec::HypergraphProduct { h1, h2 } => {
                let parse = |rows: &[String]| {
                    BinaryMatrix::parse(&rows.join(";")).ok_or_else(|| {
                        Error::InvalidCode(
                            "hypergraph seed rows must be equal-length 0/1 strings".into(),
                        )
                    })
                };
                let (a, b) = (parse(h1)?, parse(h2)?);
                build_hypergraph_product(&a, &b)
            }
            CodeSpec::Toric { l } => build_toric(*l)?,
            CodeSpec::Xzzx { d } => build_xzzx(*d)?,
            CodeSpec::File { path } => {
                let (pauli, report) = load_pauli(path)?;
                if !report.self_orthogonal {
                    return Err(Error::InvalidCode(format!(
                        "{} does not describe a stabilizer code: checks do not commute",
                        path.display()
                    )));
                }
                StabilizerCode::new(self.default_id(), self.clone(), pauli)?
            }
        };
        Ok(code.with_spec(self.clone()))
    }
}

/// An [[n,k]] stabilizer code with its binary forms and lazily computed
/// logical operators.
#[derive(Debug)]
pub struct StabilizerCode {
    id: String,
    spec: CodeSpec,
    pauli: PauliMatrix,
    h: BinaryMatrix,
    h_swapped: BinaryMatrix,
    rank: usize,
    standard: OnceLock<StandardFormResult>,
}

impl StabilizerCode {
    /// Validates commutation and measures the rank.
    pub fn new(id: impl Into<String>, spec: CodeSpec, pauli: PauliMatrix) -> Result<Self> {
        let h = pauli.to_binary();
        if !is_self_orthogonal(&h) {
            return Err(Error::InvalidCode("check rows do not commute".into()));
        }
        let rank = h.rank();
        Ok(Self::assemble(id.into(), spec, pauli, h, rank))
    }

    /// For constructions whose rank is already known.
    pub(crate) fn with_rank(
        id: impl Into<String>,
        spec: CodeSpec,
        pauli: PauliMatrix,
        rank: usize,
    ) -> Self {
        let h = pauli.to_binary();
        debug_assert!(is_self_orthogonal(&h));
        Self::assemble(id.into(), spec, pauli, h, rank)
    }

    fn assemble(
        id: String,
        spec: CodeSpec,
        pauli: PauliMatrix,
        h: BinaryMatrix,
        rank: usize,
    ) -> Self {
        let h_swapped = swap_halves(&h);
        Self {
            id,
            spec,
            pauli,
            h,
            h_swapped,
            rank,
            standard: OnceLock::new(),
        }
    }

    fn with_spec(mut self, spec: CodeSpec) -> Self {
        self.spec = spec;
        self
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn spec(&self) -> &CodeSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.pauli.cols()
    }

    pub fn k(&self) -> usize {
        self.n() - self.rank
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_checks(&self) -> usize {
        self.pauli.rows()
    }

    pub fn pauli(&self) -> &PauliMatrix {
        &self.pauli
    }

    /// `[H^X | H^Z]`.
    pub fn check_matrix(&self) -> &BinaryMatrix {
        &self.h
    }

    /// `[H^Z | H^X]`, the matrix whose plain product with `(E^X | E^Z)`
    /// gives the syndrome.
    pub fn swapped_check_matrix(&self) -> &BinaryMatrix {
        &self.h_swapped
    }

    pub fn syndrome(&self, e: &BinaryVector) -> BinaryVector {
        self.h_swapped.mul_vec(e)
    }

    pub fn standard_form(&self) -> &StandardFormResult {
        self.standard.get_or_init(|| standard_form(&self.h))
    }

    /// `2k` logical generators in original coordinates.
    pub fn logicals(&self) -> &BinaryMatrix {
        &self.standard_form().logicals
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_round_trips_through_toml() {
        let specs = vec![
            CodeSpec::Toric { l: 4 },
            CodeSpec::LiftedProduct {
                base: BaseRef::Preset("lp1054".into()),
            },
            CodeSpec::LiftedProduct {
                base: BaseRef::Explicit(QcBaseMatrix::new(3, vec![vec![0, 1]]).unwrap()),
            },
            CodeSpec::Bicycle {
                n: 20,
                rate: 0.5,
                w: 4,
                seed: 3,
            },
            CodeSpec::FourOne,
        ];
        #[derive(Serialize, Deserialize)]
        struct Wrap {
            codes: Vec<CodeSpec>,
        }
        let text = toml::to_string(&Wrap {
            codes: specs.clone(),
        })
        .unwrap();
        let back: Wrap = toml::from_str(&text).unwrap();
        assert_eq!(back.codes, specs);
    }

    #[test]
    fn file_spec_rejects_anticommuting_checks() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.txt");
        std::fs::write(&path, "XI\nZI\n").unwrap();
        assert!(CodeSpec::File { path }.build().is_err());
    }

    #[test]
    fn syndrome_uses_swapped_matrix() {
        let code = four_one_example();
        let e = crate::gf2::pauli_string_to_binary("IXIY").unwrap();
        assert_eq!(
            code.syndrome(&e),
            crate::gf2::syndrome(code.check_matrix(), &e)
        );
    }
}
