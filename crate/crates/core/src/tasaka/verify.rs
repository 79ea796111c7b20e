use serde::Serialize;

use super::{build_e, build_eta_tilde, eta, w_basis, CoeffVector, MultivarPolySpace, TasakaMatrix};
use crate::error::Result;
use crate::exactlin::{left_kernel_basis, rank_exact, MatQ, SubspaceBasis};

/// Status of the isomorphism `eta: pi(W_{N,r}) -> Ker E_{N,r}` at one
/// `(N, r)`, with the two `eta~` identities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TasakaReport {
    pub weight: u32,
    pub depth: usize,
    pub dim_w: usize,
    pub dim_ker_e: usize,
    pub dim_image: usize,
    /// `eta(pi(W)) ⊆ Ker E`.
    pub inclusion_ok: bool,
    /// `dim eta(pi(W)) = dim W`.
    pub injective: bool,
    /// `dim eta(pi(W)) = dim Ker E`.
    pub surjective: bool,
    /// `eta~(a) + eta(a) = 0` on a basis of `pi(W)`.
    pub eta_sum_zero: bool,
    /// `eta~(pi(W)) ⊆ Ker E`.
    pub eta_tilde_inclusion: bool,
}

pub fn verify_tasaka(weight: u32, depth: usize) -> Result<TasakaReport> {
    verify_tasaka_with(
        &w_basis(weight, depth)?,
        &build_e(weight, depth, depth)?,
        &build_eta_tilde(weight, depth)?,
    )
}

/// As [`verify_tasaka`] from prebuilt `W_{N,r}`, `E_{N,r}` and the `eta~`
/// matrix.
pub fn verify_tasaka_with(
    w: &MultivarPolySpace,
    e: &TasakaMatrix,
    tilde: &TasakaMatrix,
) -> Result<TasakaReport> {
    let (weight, depth) = (w.weight, w.depth);
    let ker = left_kernel_basis(&e.mat);
    let images: Vec<CoeffVector> = w.coord_vectors().iter().map(eta).collect::<Result<_>>()?;
    let tildes: Vec<CoeffVector> = w
        .coord_vectors()
        .iter()
        .map(|a| a.apply(&tilde.mat))
        .collect::<Result<_>>()?;
    let n = e.size();
    let in_ker = |v: &CoeffVector| -> Result<bool> { Ok(v.apply(&e.mat)?.is_zero()) };
    let mut inclusion_ok = true;
    let mut eta_sum_zero = true;
    let mut eta_tilde_inclusion = true;
    for (im, t) in images.iter().zip(&tildes) {
        inclusion_ok &= in_ker(im)?;
        eta_tilde_inclusion &= in_ker(t)?;
        eta_sum_zero &= im.add(t)?.is_zero();
    }
    let image_mat = MatQ::from_rows(n, images.iter().map(|v| v.coords.clone()).collect())?;
    let dim_image = rank_exact(&image_mat);
    // a spanning set of the image must also sit inside the kernel space
    let image_space = SubspaceBasis::from_spanning(n, image_mat.row_vecs());
    inclusion_ok &= ker.contains(&image_space);
    Ok(TasakaReport {
        weight,
        depth,
        dim_w: w.dim(),
        dim_ker_e: ker.dim(),
        dim_image,
        inclusion_ok,
        injective: dim_image == w.dim(),
        surjective: dim_image == ker.dim(),
        eta_sum_zero,
        eta_tilde_inclusion,
    })
}
