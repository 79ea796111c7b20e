use num_traits::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};
use crate::par::Execution;

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatQ {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl MatQ {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::EntryCount {
                rows,
                cols,
                got: entries.len(),
            });
        }
        Ok(MatQ {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatQ {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        MatQ {
            rows,
            cols,
            entries,
        }
    }

    /// Builds from row vectors; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::EntryCount {
                    rows: n,
                    cols,
                    got: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(MatQ {
            rows: n,
            cols,
            entries,
        })
    }

    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Result<Self> {
        Self::new(
            rows,
            cols,
            data.iter()
                .map(|&x| Rational::from_integer(x.into()))
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> MatQ {
        MatQ::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|x| x.is_integer())
    }

    pub fn sub(&self, other: &MatQ) -> Result<MatQ> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(MatQ {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &MatQ) -> Result<MatQ> {
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(MatQ {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Row vector times matrix: `v · self`.
    pub fn left_apply(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.rows {
            return Err(Error::VectorLength {
                expected: self.rows,
                got: v.len(),
            });
        }
        let mut out = vec![Rational::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                if !a.is_zero() {
                    *o += vi * a;
                }
            }
        }
        Ok(out)
    }
}

pub fn mat_mul(a: &MatQ, b: &MatQ) -> Result<MatQ> {
    mat_mul_with(Execution::default(), a, b)
}

/// Exact product; rows of the result are computed independently.
pub fn mat_mul_with(exec: Execution, a: &MatQ, b: &MatQ) -> Result<MatQ> {
    if a.cols != b.rows {
        return Err(Error::ShapeMismatch {
            left_rows: a.rows,
            left_cols: a.cols,
            right_rows: b.rows,
            right_cols: b.cols,
        });
    }
    let rows = exec.map_range(a.rows, |i| {
        b.left_apply(a.row(i)).expect("shape checked above")
    });
    Ok(MatQ {
        rows: a.rows,
        cols: b.cols,
        entries: rows.into_iter().flatten().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_zero_products() {
        let m = MatQ::from_i64(2, 3, &[1, -2, 3, 0, 5, 7]).unwrap();
        assert_eq!(mat_mul(&MatQ::identity(2), &m).unwrap(), m);
        assert!(mat_mul(&m, &MatQ::zeros(3, 4)).unwrap().is_zero());
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let a = MatQ::zeros(2, 3);
        let err = mat_mul(&a, &a).unwrap_err();
        assert!(matches!(
            err,
            Error::ShapeMismatch {
                left_cols: 3,
                right_rows: 2,
                ..
            }
        ));
    }

    #[test]
    fn entry_count_checked() {
        assert!(MatQ::from_i64(2, 2, &[1, 2, 3]).is_err());
    }

    #[test]
    fn sequential_and_parallel_products_agree() {
        let a = MatQ::from_fn(9, 7, |i, j| {
            Rational::new(
                ((i * 7 + j) as i64 % 5 - 2).into(),
                ((j % 3) as i64 + 1).into(),
            )
        });
        let b = MatQ::from_fn(7, 6, |i, j| {
            Rational::from_integer(((i + 2 * j) as i64 % 4 - 1).into())
        });
        assert_eq!(
            mat_mul_with(Execution::Sequential, &a, &b).unwrap(),
            mat_mul_with(Execution::Parallel, &a, &b).unwrap()
        );
    }
}
