//! Exact linear algebra over the rationals.
//!
//! Matrices act on row vectors throughout: kernels are left kernels and
//! images are row spaces. Every basis is returned in reduced row echelon form
//! with unit pivots, ordered by pivot column, so equal subspaces always
//! produce identical bases.

mod elim;
mod interchange;
mod matrix;
mod modular;
pub(crate) use modular::rank_modular_seeded;
mod rational;
mod subspace;

pub use elim::{left_kernel_basis, rank_exact, rank_exact_with, row_space_basis, rref};
pub use interchange::MatrixRecord;
pub use matrix::{mat_mul, mat_mul_with, MatQ};
pub use modular::{
    draw_primes, is_prime_u64, rank_auto, rank_modular, RankCertificate, RankMethod,
    EXACT_ROW_LIMIT, MIN_PRIMES, PRIME_FLOOR,
};
pub use rational::{format_pq, parse_rational, Rational};
pub use subspace::SubspaceBasis;
