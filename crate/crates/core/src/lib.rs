pub mod codes;
pub mod counts;
pub mod error;
pub mod gf;
pub mod harness;
pub mod linalg;
pub mod pir;
pub mod presets;
pub mod wire;

pub use codes::{GrsSpec, LinearCode};
pub use counts::OpCounts;
pub use error::{Error, Result};
pub use gf::{Elem, Field};
pub use linalg::Matrix;
pub use pir::{Rate, Scheme, SchemeConfig, Variant};
