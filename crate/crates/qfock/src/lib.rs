//! Exact computer algebra for nonsymmetric Macdonald polynomials, q-wedge
//! products, and the level-0 action of the quantum affine algebra
//! U_q'(sl_n^) with its commuting Hamiltonians, on finite wedge spaces and
//! on q-deformed Fock spaces.
//!
//! Everything runs over exact rationals with the deformation parameters
//! specialized to generic values (default q = 4/3, p = 5/7), so every
//! identity is checked by exact computation, never numerically.
//!
//! Module map:
//! - [`scalar`]: exact rationals, parameters, genericity validation
//! - [`laurent`]: sparse Laurent polynomials and variable operators
//! - [`hecke`]: the two affine Hecke representations and Cherednik operators
//! - [`macdonald`]: dominance order and nonsymmetric Macdonald polynomials
//! - [`wedge`]: the q-wedge quotient and normal-ordering straightening
//! - [`qaffine`]: the quantum affine actions U_0, U_1 and Hamiltonians
//! - [`decomp`]: irreducible blocks, evaluation modules, Drinfeld polynomials
//! - [`fock`]: semi-infinite wedges, stabilization, the Fock-space action

pub mod error;
pub mod scalar;
pub mod laurent;
pub mod linalg;
pub mod report;
pub mod hecke;
pub mod macdonald;
pub mod wedge;
pub mod qaffine;
pub mod decomp;
pub mod fock;

pub use error::{Error, Result};
pub use scalar::{check_genericity, GenericityReport, ParameterSet, Scalar};
