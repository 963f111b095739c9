pub mod channel;
pub mod codes;
pub mod decoders;
pub mod error;
pub mod evaluation;
pub mod experiment;
pub mod gf2;

pub use error::{Error, Result};

/// MBP₂ / AMBP₂ in double precision.
pub type Mbp2F64 = decoders::Mbp2<f64>;
/// MBP₂ / AMBP₂ in single precision.
pub type Mbp2F32 = decoders::Mbp2<f32>;
/// MBP₄ / AMBP₄ in double precision.
pub type Mbp4F64 = decoders::Mbp4<f64>;
/// MBP₄ / AMBP₄ in single precision.
pub type Mbp4F32 = decoders::Mbp4<f32>;
