//! Exact computations with Lie algebra splittings, their contractions and the
//! Poisson-commutative subalgebras they produce.

pub mod exact;
pub mod invariants;
pub mod lie;
pub mod poisson;
pub mod weyl;
pub mod zalgebra;
