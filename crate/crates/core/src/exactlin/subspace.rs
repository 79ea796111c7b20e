use num_traits::Zero;

use super::elim::{integer_rows, rref_integer};
use super::{rank_exact, MatQ, Rational};

/// A subspace of `Q^ambient`, stored as a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubspaceBasis {
    ambient: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl SubspaceBasis {
    pub fn zero(ambient: usize) -> Self {
        SubspaceBasis {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// Reduces an arbitrary spanning family.
    pub fn from_spanning(ambient: usize, vectors: Vec<Vec<Rational>>) -> Self {
        let refs: Vec<&[Rational]> = vectors.iter().map(|v| v.as_slice()).collect();
        let (rows, pivots) = rref_integer(integer_rows(&refs), ambient);
        SubspaceBasis {
            ambient,
            rows,
            pivots,
        }
    }

    pub(super) fn from_reduced(
        ambient: usize,
        rows: Vec<Vec<Rational>>,
        pivots: Vec<usize>,
    ) -> Self {
        SubspaceBasis {
            ambient,
            rows,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vectors(&self) -> Vec<Vec<Rational>> {
        self.rows.clone()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[Rational]> {
        self.rows.iter().map(|r| r.as_slice())
    }

    pub fn to_matrix(&self) -> MatQ {
        MatQ::from_rows(self.ambient, self.rows.clone()).expect("rows have ambient length")
    }

    /// Reduced row echelon with unit pivots, zeros above and below each
    /// pivot, pivots strictly increasing.
    pub fn is_reduced(&self) -> bool {
        if self.pivots.len() != self.rows.len() || !self.pivots.windows(2).all(|w| w[0] < w[1]) {
            return false;
        }
        self.rows
            .iter()
            .zip(&self.pivots)
            .enumerate()
            .all(|(i, (row, &p))| {
                row[..p].iter().all(Zero::is_zero)
                    && row[p] == Rational::from_integer(1.into())
                    && self
                        .rows
                        .iter()
                        .enumerate()
                        .all(|(k, other)| k == i || other[p].is_zero())
            })
    }

    /// Sum of two subspaces of the same ambient space.
    pub fn sum(&self, other: &SubspaceBasis) -> SubspaceBasis {
        assert_eq!(self.ambient, other.ambient, "ambient dimensions differ");
        let mut v = self.vectors();
        v.extend(other.vectors());
        SubspaceBasis::from_spanning(self.ambient, v)
    }

    /// `dim A + dim B - dim(A + B)`.
    pub fn intersection_dim(&self, other: &SubspaceBasis) -> usize {
        self.dim() + other.dim() - self.sum(other).dim()
    }

    /// Whether every row of `m` lies in this subspace.
    pub fn contains_rows(&self, m: &MatQ) -> bool {
        if m.rows() == 0 {
            return true;
        }
        let stacked = self.to_matrix().vstack(m).expect("same ambient");
        rank_exact(&stacked) == self.dim()
    }

    pub fn contains(&self, other: &SubspaceBasis) -> bool {
        self.contains_rows(&other.to_matrix())
    }

    /// Mutual containment via ranks.
    pub fn same_span(&self, other: &SubspaceBasis) -> bool {
        self.ambient == other.ambient && self.contains(other) && other.contains(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> Rational {
        Rational::from_integer(x.into())
    }

    #[test]
    fn intersection_of_planes() {
        let a =
            SubspaceBasis::from_spanning(3, vec![vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]]);
        let b =
            SubspaceBasis::from_spanning(3, vec![vec![q(0), q(1), q(0)], vec![q(0), q(0), q(1)]]);
        assert_eq!(a.intersection_dim(&b), 1);
        assert_eq!(a.sum(&b).dim(), 3);
        assert!(!a.same_span(&b));
        assert!(a.sum(&b).contains(&a));
    }

    #[test]
    fn spanning_family_is_normalised() {
        let s = SubspaceBasis::from_spanning(
            3,
            vec![
                vec![q(2), q(4), q(6)],
                vec![q(-1), q(-2), q(-3)],
                vec![q(0), q(0), q(5)],
            ],
        );
        assert_eq!(
            s.vectors(),
            vec![vec![q(1), q(2), q(0)], vec![q(0), q(0), q(1)]]
        );
        assert!(s.is_reduced());
        assert_eq!(s.pivots(), &[0, 2]);
    }
}
