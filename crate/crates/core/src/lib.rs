//! Exact-arithmetic spectral sequences for finite models of invariant forms
//! on manifolds with a locally free Lie group action.
//!
//! The linear algebra, Lie algebra and model layers are generic over the
//! scalar field ([`Field`]); the aliases below fix it to [`Rational`], which
//! is what the library cards, model files and CLI use.

pub mod cli;
pub mod library;
pub mod liealg;
pub mod model;
pub mod modelfile;
pub mod pipeline;
pub mod qlinalg;
pub mod report;
pub mod scalar;
pub mod specseq;
pub mod validation;
pub mod verify;

pub use scalar::Field;

pub type Rational = num_rational::BigRational;
pub type QMatrix = qlinalg::Matrix<Rational>;
pub type QSubspace = qlinalg::Subspace<Rational>;
pub type QLieData = liealg::LieData<Rational>;
pub type QChiElement = liealg::ChiElement<Rational>;
pub type QModel = model::EquivariantModel<Rational>;
pub type QBasicComplex = model::BasicComplex<Rational>;
