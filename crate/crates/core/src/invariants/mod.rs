//! Symmetric invariants of the builder algebras: Hilbert bases, bi-degrees
//! with respect to a splitting, the good-generating-system criterion,
//! elimination on `t_0` and the Adler–Kostant–Symes restrictions.

mod aks;
mod bidegree;
mod elimination;
mod ggs;
mod hilbert;

use thiserror::Error;

use crate::exact::MathError;
use crate::lie::LieError;
use crate::poisson::PoissonError;

pub use aks::{aks_restrict, AksReport, AksSide};
pub use bidegree::{
    apply_operator, bidecompose, bidecompose_mask, complement_operator, highest_component,
    BiComponent, Bidecomposition,
};
pub use elimination::{
    double_bar, double_modified_bases, eliminate_on_subspace, restrict_to_subspace,
    restrict_to_t0, transport,
};
pub use ggs::{ggs_check, jacobian_rank, GgsReport, GgsRow, GgsSide, HoroCheck};
pub use hilbert::{
    charpoly_coefficients, generic_element, hilbert_basis, newton_elementary, pfaffian,
    trace_powers, verify_invariance, BasisKind, Generator, HilbertBasis, PolyMatrix,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("algebra has no matrix realization")]
    NoRealization,
    #[error("incompatible input: {0}")]
    Incompatible(String),
    #[error("Pfaffian sign convention failed: Pf² differs from the top minor")]
    PfaffianSign,
    #[error("elimination infeasible for {generator} in degree {degree}")]
    Infeasible { generator: String, degree: u32 },
    #[error("splitting is not horospherical")]
    NotHorospherical,
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Poisson(#[from] PoissonError),
    #[error(transparent)]
    Math(#[from] MathError),
}
