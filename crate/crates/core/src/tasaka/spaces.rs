use std::collections::BTreeSet;

use num_traits::Zero;
use serde_json::Value;

use super::CoeffVector;
use crate::error::{Error, Result};
use crate::exactlin::{format_pq, left_kernel_basis, MatQ, Rational, SubspaceBasis};
use crate::liealg::{enumerate_index_set, IndexSet, SparsePoly};

/// `P_N`: restricted even period polynomials of weight `N`, as polynomials
/// in `x_1, x_2` of degree `N − 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivarPolySpace {
    pub weight: u32,
    pub basis: Vec<SparsePoly>,
}

impl BivarPolySpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Every basis element is supported on `x_1^{n_1−1} x_2^{n_2−1}` with
    /// `(n_1, n_2)` in `S_{N,2}`.
    pub fn in_depth_two_span(&self) -> bool {
        self.basis.iter().all(|p| {
            p.terms()
                .all(|(e, _)| e.iter().all(|&a| a >= 2 && a % 2 == 0))
        })
    }

    /// Coordinates in `Vect_{N,2}` of each basis polynomial.
    pub fn coords(&self) -> Result<Vec<CoeffVector>> {
        self.basis
            .iter()
            .map(|p| pi_coords(p, self.weight, 2))
            .collect()
    }
}

/// `W_{N,r}` together with its image `pi(W_{N,r})` in `Vect_{N,r}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultivarPolySpace {
    pub weight: u32,
    pub depth: usize,
    pub index: IndexSet,
    pub basis: Vec<SparsePoly>,
    pub coords: SubspaceBasis,
}

impl MultivarPolySpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coord_vectors(&self) -> Vec<CoeffVector> {
        self.coords
            .iter()
            .map(|v| CoeffVector {
                weight: self.weight,
                depth: self.depth,
                coords: v.to_vec(),
            })
            .collect()
    }

    /// JSON list of coefficient-vector objects keyed by `"n1,...,nr"`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coord_vectors()
                .iter()
                .map(CoeffVector::to_json)
                .collect(),
        )
    }
}

/// Solves `rows · M = 0` where row `i` of `M` lists the coefficients of
/// `images[i]`; returns the reduced solution basis in the row coordinates.
fn kernel_of_images(images: &[SparsePoly]) -> SubspaceBasis {
    let monomials: BTreeSet<&Vec<u32>> = images
        .iter()
        .flat_map(|p| p.terms().map(|(e, _)| e))
        .collect();
    let monomials: Vec<&Vec<u32>> = monomials.into_iter().collect();
    let m = MatQ::from_fn(images.len(), monomials.len(), |i, j| {
        images[i].coeff(monomials[j])
    });
    left_kernel_basis(&m)
}

fn combine(monomials: &[Vec<u32>], coeffs: &[Rational], nvars: usize) -> SparsePoly {
    let mut p = SparsePoly::zero(nvars);
    for (e, c) in monomials.iter().zip(coeffs) {
        p.add_term(e.clone(), c.clone());
    }
    p
}

/// Basis of `P_N`. The ambient space is `x_1^a x_2^b` with `a + b = N − 2`,
/// `a, b` even and `b >= 2`, ordered by decreasing `a` (graded lex); the
/// three-term relation `p(x1,x2) + p(x1−x2,x1) − p(x1−x2,x2) = 0` is solved
/// exactly after binomial expansion.
pub fn period_basis(weight: u32) -> BivarPolySpace {
    if weight < 4 {
        return BivarPolySpace {
            weight,
            basis: Vec::new(),
        };
    }
    let d = weight - 2;
    let ambient: Vec<Vec<u32>> = (0..=d)
        .rev()
        .filter(|&a| a % 2 == 0 && (d - a).is_multiple_of(2) && d - a >= 2)
        .map(|a| vec![a, d - a])
        .collect();
    let x1 = SparsePoly::var(2, 0);
    let x2 = SparsePoly::var(2, 1);
    let diff = x1.sub(&x2);
    let sub_a = [diff.clone(), x1.clone()];
    let sub_b = [diff, x2];
    let images: Vec<SparsePoly> = ambient
        .iter()
        .map(|e| {
            let u = SparsePoly::monomial(e.clone(), Rational::from_integer(1.into()));
            u.add(&u.substitute(&sub_a)).sub(&u.substitute(&sub_b))
        })
        .collect();
    let kernel = kernel_of_images(&images);
    BivarPolySpace {
        weight,
        basis: kernel.iter().map(|v| combine(&ambient, v, 2)).collect(),
    }
}

fn index_monomials(index: &IndexSet) -> Vec<Vec<u32>> {
    index
        .tuples()
        .iter()
        .map(|t| t.parts().iter().map(|&n| n - 1).collect())
        .collect()
}

/// Basis of `W_{N,r}`: `p` in the `S_{N,r}` monomial span with
/// `p(x_1,...,x_r) = p(x_2−x_1, x_2, x_3, ...) − p(x_2−x_1, x_1, x_3, ...)`,
/// the relation evaluated in the full polynomial ring.
pub fn w_basis(weight: u32, depth: usize) -> Result<MultivarPolySpace> {
    if depth < 2 {
        return Err(Error::DepthTooSmall { min: 2, got: depth });
    }
    let index = enumerate_index_set(weight, depth);
    let monomials = index_monomials(&index);
    let vars: Vec<SparsePoly> = (0..depth).map(|i| SparsePoly::var(depth, i)).collect();
    let diff = vars[1].sub(&vars[0]);
    let mut sub_a = vars.clone();
    sub_a[0] = diff.clone();
    let mut sub_b = vars.clone();
    sub_b[0] = diff;
    sub_b[1] = vars[0].clone();
    let images: Vec<SparsePoly> = monomials
        .iter()
        .map(|e| {
            let u = SparsePoly::monomial(e.clone(), Rational::from_integer(1.into()));
            u.sub(&u.substitute(&sub_a)).add(&u.substitute(&sub_b))
        })
        .collect();
    let coords = if images.is_empty() {
        SubspaceBasis::zero(0)
    } else {
        kernel_of_images(&images)
    };
    let basis = coords
        .iter()
        .map(|v| combine(&monomials, v, depth))
        .collect();
    Ok(MultivarPolySpace {
        weight,
        depth,
        index,
        basis,
        coords,
    })
}

/// `pi`: coefficient extraction from the `S_{N,r}` monomial span.
pub fn pi_coords(p: &SparsePoly, weight: u32, depth: usize) -> Result<CoeffVector> {
    if p.nvars() != depth {
        return Err(Error::DepthMismatch {
            expected: depth,
            got: p.nvars(),
        });
    }
    let index = enumerate_index_set(weight, depth);
    let mut coords = vec![Rational::zero(); index.len()];
    for (e, c) in p.terms() {
        let parts: Vec<u32> = e.iter().map(|&a| a + 1).collect();
        let pos = crate::liealg::IndexTuple::new(parts)
            .ok()
            .and_then(|t| index.position(&t));
        match pos {
            Some(i) => coords[i] = c.clone(),
            None => {
                let m: Vec<String> = e
                    .iter()
                    .enumerate()
                    .map(|(i, a)| format!("x{}^{}", i + 1, a))
                    .collect();
                return Err(Error::StrayMonomial(format!(
                    "{} ({})",
                    m.join(" "),
                    format_pq(c)
                )));
            }
        }
    }
    CoeffVector::new(weight, depth, coords)
}

/// Inverse of [`pi_coords`].
pub fn pi_inverse(v: &CoeffVector) -> SparsePoly {
    let index = enumerate_index_set(v.weight, v.depth);
    combine(&index_monomials(&index), &v.coords, v.depth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rank_exact;
    use crate::tasaka::build_e;

    fn q(x: i64) -> Rational {
        Rational::from_integer(x.into())
    }

    /// `[x^N] x^12 / ((1 − x^4)(1 − x^6))` by counting `4a + 6b = N − 12`.
    fn cusp_count(n: u32) -> usize {
        if n < 12 {
            return 0;
        }
        let m = n - 12;
        (0..=m / 6)
            .filter(|b| (m - 6 * b).is_multiple_of(4))
            .count()
    }

    #[test]
    fn period_dimensions_small() {
        assert_eq!(period_basis(4).dim(), 0);
        assert_eq!(period_basis(12).dim(), 1);
        assert_eq!(period_basis(24).dim(), 2);
        assert_eq!(period_basis(13).dim(), 0);
        for n in (4..=28).step_by(2) {
            assert_eq!(period_basis(n).dim(), cusp_count(n), "N={n}");
        }
    }

    #[test]
    fn period_polynomials_satisfy_the_definition() {
        for n in [12, 16, 24] {
            let space = period_basis(n);
            assert!(space.in_depth_two_span());
            for p in &space.basis {
                let x1 = SparsePoly::var(2, 0);
                let x2 = SparsePoly::var(2, 1);
                let zero = SparsePoly::zero(2);
                assert!(p.substitute(&[x1.clone(), zero]).is_zero());
                let neg = |v: &SparsePoly| v.scale(&q(-1));
                assert_eq!(&p.substitute(&[neg(&x1), x2.clone()]), p);
                assert_eq!(&p.substitute(&[x1.clone(), neg(&x2)]), p);
                let d = x1.sub(&x2);
                let rel = p
                    .add(&p.substitute(&[d.clone(), x1.clone()]))
                    .sub(&p.substitute(&[d, x2.clone()]));
                assert!(rel.is_zero());
            }
        }
    }

    #[test]
    fn weight_twelve_period_polynomial_spans_ker_e() {
        let space = period_basis(12);
        let v = &space.coords().unwrap()[0];
        let e = build_e(12, 2, 2).unwrap();
        assert!(v.apply(&e.mat).unwrap().is_zero());
        assert!(!v.is_zero());
        assert_eq!(4 - rank_exact(&e.mat), 1);
    }

    #[test]
    fn w_dimensions() {
        assert_eq!(w_basis(12, 2).unwrap().dim(), 1);
        assert_eq!(w_basis(10, 2).unwrap().dim(), 0);
        assert_eq!(w_basis(11, 2).unwrap().dim(), 0);
        assert!(w_basis(9, 1).is_err());
    }

    #[test]
    fn pi_extraction() {
        let p = SparsePoly::monomial(vec![2, 8], q(1));
        let v = pi_coords(&p, 12, 2).unwrap();
        assert_eq!(v.coords, vec![q(1), q(0), q(0), q(0)]);
        assert!(pi_coords(&SparsePoly::zero(2), 12, 2).unwrap().is_zero());
        let stray = SparsePoly::monomial(vec![10, 0], q(3));
        match pi_coords(&stray, 12, 2) {
            Err(Error::StrayMonomial(m)) => assert!(m.contains("x1^10 x2^0")),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(pi_inverse(&v), p);
    }
}
