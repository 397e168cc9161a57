pub mod diagram;
pub mod error;
pub mod linalg;
pub mod mpoly;
pub mod poly;
pub mod scalar;
pub mod symgroup;
pub mod teval;
pub mod wprop;
pub mod zideal;

pub use error::{Error, Result};
pub use mpoly::{MPoly, MPolyQ, Var};
pub use poly::{Poly, PolyT};
pub use scalar::{Field, Rat, Ring};
pub use symgroup::{GAElt, GroupAlgebra, Partition, Perm, Tableau};
pub use wprop::PropElt;
pub use zideal::IdealData;

/// Exact rational tensors.
pub type RatTensor = teval::Tensor<Rat>;
/// Tensors with polynomial entries in generic indeterminates.
pub type PolyTensor = teval::Tensor<MPolyQ>;
/// Floating-point tensors, for quick numerical evaluation.
pub type F64Tensor = teval::Tensor<f64>;
pub type F32Tensor = teval::Tensor<f32>;
