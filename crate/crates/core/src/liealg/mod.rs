//! The two algebras the computations live in: the free associative algebra
//! `Q<e0, e1>` carrying the Ihara bracket, and its depth-graded polynomial
//! representation carrying Brown's `∘̲` operation.

mod depth;
mod index;
mod poly;
mod word;

pub use depth::{
    compose_sigma_chain, dg_bracket, rho, rho_at_depth, rho_inverse, sigma_poly, ucirc, DepthPoly,
};
pub use index::{enumerate_index_set, IndexSet, IndexTuple};
pub use poly::SparsePoly;
pub use word::{ihara_bracket, sigma_bar_word, Letter, NCPoly, NCWord};
