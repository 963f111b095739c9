use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::alpha::AlphaList;
use super::flip::GdFlip;
use super::graph::{make_schedule, Schedule, ScheduleKind, TannerGraph};
use super::llr::Llr;
use super::mld::GaussianMld;
use super::{binary_bp::Mbp2, quaternary_bp::Mbp4, ErasureDecoder, GdOpts, DEFAULT_T_MAX};
use crate::codes::StabilizerCode;
use crate::error::Result;

/// How an adaptive decoder picks its `α` list.
///
/// In a config this is `"fixed"` (1.2 down to 0.3), `"func"` (func(p) down
/// to 0.3), an explicit list, or `{ start, stop, step }`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlphaSpec {
    Named(AlphaName),
    List(Vec<f64>),
    Range { start: f64, stop: f64, step: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaName {
    Fixed,
    Func,
}

impl Default for AlphaSpec {
    fn default() -> Self {
        AlphaSpec::Named(AlphaName::Fixed)
    }
}

impl AlphaSpec {
    pub fn resolve(&self, p: f64) -> Result<AlphaList> {
        match self {
            AlphaSpec::Named(AlphaName::Fixed) => Ok(AlphaList::fixed_range()),
            AlphaSpec::Named(AlphaName::Func) => Ok(AlphaList::from_func(p)),
            AlphaSpec::List(v) => AlphaList::new(v.clone()),
            AlphaSpec::Range { start, stop, step } => AlphaList::range(*start, *stop, *step),
        }
    }

    /// Label for result tables.
    pub fn id(&self) -> String {
        match self {
            AlphaSpec::Named(AlphaName::Fixed) => "fixed".into(),
            AlphaSpec::Named(AlphaName::Func) => "func".into(),
            AlphaSpec::List(v) if v.len() == 1 => format!("{}", v[0]),
            AlphaSpec::List(v) => format!("list{}", v.len()),
            AlphaSpec::Range { start, stop, step } => format!("{start}:{stop}:{step}"),
        }
    }
}

fn default_t_max() -> usize {
    DEFAULT_T_MAX
}

fn default_alpha() -> f64 {
    1.0
}

/// Decoder selection and parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DecoderSpec {
    Mld,
    GdFlip {
        #[serde(default = "default_t_max")]
        t_max: usize,
    },
    Mbp2 {
        #[serde(default = "default_alpha")]
        alpha: f64,
        #[serde(default = "default_t_max")]
        t_max: usize,
        #[serde(default)]
        gd: Option<GdOpts>,
        #[serde(default)]
        schedule: ScheduleKind,
    },
    Ambp2 {
        #[serde(default)]
        alphas: AlphaSpec,
        #[serde(default = "default_t_max")]
        t_max: usize,
        #[serde(default)]
        gd: Option<GdOpts>,
        #[serde(default)]
        schedule: ScheduleKind,
        #[serde(default)]
        parallel_alpha: bool,
    },
    Mbp4 {
        #[serde(default = "default_alpha")]
        alpha: f64,
        #[serde(default = "default_t_max")]
        t_max: usize,
        #[serde(default)]
        schedule: ScheduleKind,
    },
    Ambp4 {
        #[serde(default)]
        alphas: AlphaSpec,
        #[serde(default = "default_t_max")]
        t_max: usize,
        #[serde(default)]
        schedule: ScheduleKind,
        #[serde(default)]
        parallel_alpha: bool,
    },
}

impl DecoderSpec {
    pub fn default_id(&self) -> String {
        match self {
            DecoderSpec::Mld => "mld".into(),
            DecoderSpec::GdFlip { .. } => "gd_flip".into(),
            DecoderSpec::Mbp2 { alpha, gd, .. } => {
                format!("mbp2_a{alpha}{}", if gd.is_some() { "_gd" } else { "" })
            }
            DecoderSpec::Ambp2 { alphas, gd, .. } => {
                format!(
                    "ambp2_{}{}",
                    alphas.id(),
                    if gd.is_some() { "_gd" } else { "" }
                )
            }
            DecoderSpec::Mbp4 { alpha, .. } => format!("mbp4_a{alpha}"),
            DecoderSpec::Ambp4 { alphas, .. } => format!("ambp4_{}", alphas.id()),
        }
    }

    pub fn schedule(&self) -> ScheduleKind {
        match self {
            DecoderSpec::Mld | DecoderSpec::GdFlip { .. } => ScheduleKind::Parallel,
            DecoderSpec::Mbp2 { schedule, .. }
            | DecoderSpec::Ambp2 { schedule, .. }
            | DecoderSpec::Mbp4 { schedule, .. }
            | DecoderSpec::Ambp4 { schedule, .. } => *schedule,
        }
    }

    /// Label of the schedule column; decoders without message passing report
    /// `none`.
    pub fn schedule_id(&self) -> &'static str {
        match self {
            DecoderSpec::Mld | DecoderSpec::GdFlip { .. } => "none",
            _ => self.schedule().id(),
        }
    }

    /// `α` strategy label for result tables.
    pub fn alpha_mode(&self) -> String {
        match self {
            DecoderSpec::Mbp2 { alpha, .. } | DecoderSpec::Mbp4 { alpha, .. } => format!("{alpha}"),
            DecoderSpec::Ambp2 { alphas, .. } | DecoderSpec::Ambp4 { alphas, .. } => alphas.id(),
            _ => "none".into(),
        }
    }

    /// Builds the graphs and schedules for `code` once; decoders for each
    /// erasure rate come from [`PreparedDecoder::at`].
    pub fn prepare<T: Llr>(&self, code: &StabilizerCode) -> Result<PreparedDecoder<T>> {
        let kind = self.schedule();
        let inner = match self {
            DecoderSpec::Mld => Prepared::Mld(GaussianMld::new(code.swapped_check_matrix())),
            DecoderSpec::GdFlip { t_max } => {
                let g = Arc::new(TannerGraph::from_binary(code.swapped_check_matrix()));
                Prepared::Flip(GdFlip::from_graph(g, *t_max))
            }
            DecoderSpec::Mbp2 { alpha, .. } => {
                AlphaList::single(*alpha)?;
                binary_parts(code, kind)
            }
            DecoderSpec::Ambp2 { alphas, .. } => {
                alphas.resolve(0.0)?;
                binary_parts(code, kind)
            }
            DecoderSpec::Mbp4 { alpha, .. } => {
                AlphaList::single(*alpha)?;
                quaternary_parts(code, kind)
            }
            DecoderSpec::Ambp4 { alphas, .. } => {
                alphas.resolve(0.0)?;
                quaternary_parts(code, kind)
            }
        };
        Ok(PreparedDecoder {
            spec: self.clone(),
            id: self.default_id(),
            inner,
            _scalar: std::marker::PhantomData,
        })
    }
}

fn binary_parts(code: &StabilizerCode, kind: ScheduleKind) -> Prepared {
    let g = Arc::new(TannerGraph::from_binary(code.swapped_check_matrix()));
    let s = Arc::new(make_schedule(&g, kind));
    Prepared::Binary(g, s)
}

fn quaternary_parts(code: &StabilizerCode, kind: ScheduleKind) -> Prepared {
    let g = Arc::new(TannerGraph::from_pauli(code.pauli()));
    let s = Arc::new(make_schedule(&g, kind));
    Prepared::Quaternary(g, s)
}

enum Prepared {
    Mld(GaussianMld),
    Flip(GdFlip),
    Binary(Arc<TannerGraph>, Arc<Schedule>),
    Quaternary(Arc<TannerGraph>, Arc<Schedule>),
}

/// A decoder spec bound to one code.
pub struct PreparedDecoder<T: Llr> {
    spec: DecoderSpec,
    id: String,
    inner: Prepared,
    _scalar: std::marker::PhantomData<fn() -> T>,
}

impl<T: Llr> PreparedDecoder<T> {
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    pub fn spec(&self) -> &DecoderSpec {
        &self.spec
    }

    /// The decoder to use at erasure rate `p` (only `α = func(p)` lists
    /// depend on it).
    pub fn at(&self, p: f64) -> Result<Box<dyn ErasureDecoder>> {
        let id = self.id.clone();
        Ok(match (&self.inner, &self.spec) {
            (Prepared::Mld(d), _) => Box::new(d.clone()),
            (Prepared::Flip(d), _) => Box::new(d.clone()),
            (
                Prepared::Binary(g, s),
                DecoderSpec::Mbp2 {
                    alpha, t_max, gd, ..
                },
            ) => Box::new(
                Mbp2::<T>::from_parts(
                    g.clone(),
                    s.clone(),
                    AlphaList::single(*alpha)?,
                    *t_max,
                    *gd,
                )
                .with_name(id),
            ),
            (
                Prepared::Binary(g, s),
                DecoderSpec::Ambp2 {
                    alphas,
                    t_max,
                    gd,
                    parallel_alpha,
                    ..
                },
            ) => Box::new(
                Mbp2::<T>::from_parts(g.clone(), s.clone(), alphas.resolve(p)?, *t_max, *gd)
                    .with_parallel_alpha(*parallel_alpha)
                    .with_name(id),
            ),
            (Prepared::Quaternary(g, s), DecoderSpec::Mbp4 { alpha, t_max, .. }) => Box::new(
                Mbp4::<T>::from_parts(g.clone(), s.clone(), AlphaList::single(*alpha)?, *t_max)
                    .with_name(id),
            ),
            (
                Prepared::Quaternary(g, s),
                DecoderSpec::Ambp4 {
                    alphas,
                    t_max,
                    parallel_alpha,
                    ..
                },
            ) => Box::new(
                Mbp4::<T>::from_parts(g.clone(), s.clone(), alphas.resolve(p)?, *t_max)
                    .with_parallel_alpha(*parallel_alpha)
                    .with_name(id),
            ),
            _ => unreachable!("prepared parts always match their DecoderSpec variant"),
        })
    }
}
