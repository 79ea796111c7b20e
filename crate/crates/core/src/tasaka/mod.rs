//! Tasaka's matrices and the polynomial spaces around them.
//!
//! Rows and columns of every matrix, and the coordinates of every vector,
//! are indexed by `S_{N,r}` in canonical (lexicographic) order. Matrices act
//! on row vectors.

mod coeffs;
mod matrices;
mod spaces;
mod verify;

pub use coeffs::{b_coeff, binomial, e_entry};
pub use matrices::{
    build_c, build_c_with, build_chain_matrix, build_e, build_e_with, build_eta_tilde, eta,
    eta_tilde, CoeffVector, MatrixKind, TasakaMatrix,
};
pub use spaces::{period_basis, pi_coords, pi_inverse, w_basis, BivarPolySpace, MultivarPolySpace};
pub use verify::{verify_tasaka, verify_tasaka_with, TasakaReport};
