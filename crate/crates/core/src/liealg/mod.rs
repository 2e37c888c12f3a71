//! Lie algebra data, the exterior algebra on the characteristic generators,
//! the Chevalley-Eilenberg differential, and Lie algebra cohomology.

mod chi;
mod lie;
mod multi_index;

pub use chi::ChiElement;
pub use lie::{
    validate_lie, ExteriorBasis, LieData, LieError, CHECK_BRACKET_ANTISYMMETRY, CHECK_DELTA_SQUARED,
    CHECK_FULL_ANTISYMMETRY, CHECK_JACOBI,
};
pub use multi_index::{MultiIndex, MAX_GENERATORS};

pub(crate) use lie::permutations3;
