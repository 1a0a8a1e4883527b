//! Exact mod-2 cohomology computations for the unordered configuration space
//! `C(RP^n, 2)`, its retract `W_n` of orthogonal line pairs, and the
//! Grassmannian `G_(n+1,2)`.
//!
//! Layers, bottom up:
//!
//! * [`f2core`]: bit-packed GF(2) vectors and matrices, binomial parity.
//! * [`grassmann`]: `H*(G_(n+1,2))` by row reduction of the Borel relations,
//!   and the power-sum basis description of its upper half.
//! * [`wcalg`]: `H*(W_n) = H*(G)[u]/(u^2 = xu)`, products and Steenrod squares.
//! * [`charclasses`]: Stiefel-Whitney series of tangent and normal bundles,
//!   (non)immersion certificates.
//! * [`tcomplexity`]: zero-divisor cup length in `H*(C_n) (x) H*(C_n)`.
//! * [`cli`]: the `c2rp` command-line front end.

pub mod charclasses;
pub mod cli;
pub mod f2core;
pub mod grassmann;
pub mod series;
pub mod tcomplexity;
pub mod wcalg;

pub use f2core::{BitMatrix, BitVector};
pub use grassmann::{GClass, GContext, GMonomial};
pub use wcalg::{WClass, WContext, WMonomial};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("n must be at least 2, got {0}")]
    InvalidN(usize),
    #[error("degree {degree} is below the first relation (n = {n}); monomials there are independent")]
    BelowRelations { n: usize, degree: usize },
    #[error("degree {degree} exceeds the top degree for n = {n}")]
    AboveTop { n: usize, degree: usize },
    #[error("monomial {0} does not have the expected exponent pattern")]
    MalformedMonomial(String),
    #[error("cannot parse monomial {0:?}")]
    ParseMonomial(String),
    #[error("unknown bundle {0:?}")]
    UnknownBundle(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("exhaustive search for n = {n} exceeds the budget (n <= {max})")]
    BudgetExceeded { n: usize, max: usize },
    #[error("route mismatch: {0}")]
    RouteMismatch(String),
}
