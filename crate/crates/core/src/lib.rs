//! Jacobian groups and spanning-tree counts of I-graphs `I(n,k,l)`.
//!
//! Exact computations (`matrix`, `poly`, `jacobian`, `treecount`) work over
//! arbitrary-precision integers. Numeric ones (`roots`, `asymptotics`, the
//! Chebyshev tree count) are generic over [`Real`], implemented for `f64`
//! and the arbitrary-precision [`MpFloat`].

pub mod asymptotics;
pub mod error;
pub mod igraph;
pub mod jacobian;
pub mod matrix;
pub mod poly;
pub mod roots;
pub mod scalar;
pub mod treecount;

use num_bigint::BigInt;

pub use error::{Error, Result};
pub use igraph::{normalize, GraphParams};
pub use jacobian::{AbelianGroup, JacobianMethod};
pub use matrix::{Matrix, SmithForm};
pub use poly::{IntLaurentPoly, IntPoly, LaurentPoly, Poly};
pub use scalar::{MpFloat, Real, DEFAULT_PRECISION_BITS};
pub use treecount::{Decomposition, TreeCount, TreeMethod};

/// Dense matrix of arbitrary-precision integers.
pub type IntegerMatrix = Matrix<BigInt>;
/// Smith form of an [`IntegerMatrix`].
pub type IntegerSmithForm = SmithForm<BigInt>;
/// Root set at arbitrary precision.
pub type MpRootSet = roots::RootSet<MpFloat>;
/// Growth constant at arbitrary precision.
pub type MpApprox = asymptotics::RealApprox<MpFloat>;
