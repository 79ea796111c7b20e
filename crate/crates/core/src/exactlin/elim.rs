use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{MatQ, Rational, SubspaceBasis};
use crate::par::Execution;

/// Scales every row by the lcm of its denominators.
pub(super) fn integer_rows(rows: &[&[Rational]]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

fn mat_integer_rows(m: &MatQ) -> Vec<Vec<BigInt>> {
    let rows: Vec<&[Rational]> = (0..m.rows()).map(|i| m.row(i)).collect();
    integer_rows(&rows)
}

/// Rank over Q by Bareiss fraction-free elimination.
pub fn rank_exact(m: &MatQ) -> usize {
    rank_exact_with(Execution::Sequential, m)
}

pub fn rank_exact_with(exec: Execution, m: &MatQ) -> usize {
    bareiss_rank(exec, mat_integer_rows(m), m.cols())
}

fn bareiss_rank(exec: Execution, mut a: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let n = a.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if rank == n {
            break;
        }
        let Some(p) = (rank..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (head, tail) = a.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let step = |row: &mut Vec<BigInt>| {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let t = &pivot_row[c] * &row[j] - &lead * &pivot_row[j];
                let (q, r) = t.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                row[j] = q;
            }
        };
        #[cfg(feature = "parallel")]
        if exec.is_parallel() && tail.len() > 32 {
            use rayon::prelude::*;
            tail.par_iter_mut().for_each(step);
        } else {
            tail.iter_mut().for_each(step);
        }
        #[cfg(not(feature = "parallel"))]
        {
            let _ = exec;
            tail.iter_mut().for_each(step);
        }
        prev = head[rank][c].clone();
        rank += 1;
    }
    rank
}

fn divide_by_content(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Reduced row echelon form: the nonzero rows (unit pivots) and their pivot
/// columns. Elimination runs on integer rows that are divided by their
/// content after every update.
pub fn rref(m: &MatQ) -> (Vec<Vec<Rational>>, Vec<usize>) {
    rref_integer(mat_integer_rows(m), m.cols())
}

pub(super) fn rref_integer(
    mut a: Vec<Vec<BigInt>>,
    cols: usize,
) -> (Vec<Vec<Rational>>, Vec<usize>) {
    for row in a.iter_mut() {
        divide_by_content(row);
    }
    let n = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        let Some(p) = (r..n)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| a[i][c].abs())
        else {
            continue;
        };
        a.swap(r, p);
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let g = pivot_row[c].gcd(&row[c]);
            let mul_row = &pivot_row[c] / &g;
            let mul_pivot = &row[c] / &g;
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &*x * &mul_row - y * &mul_pivot;
            }
            divide_by_content(row);
        }
        pivots.push(c);
        r += 1;
    }
    let rows = a
        .into_iter()
        .take(r)
        .zip(&pivots)
        .map(|(row, &c)| {
            let lead = row[c].clone();
            row.into_iter()
                .map(|x| Rational::new(x, lead.clone()))
                .collect()
        })
        .collect();
    (rows, pivots)
}

/// Basis of `{ v : v · m = 0 }`.
pub fn left_kernel_basis(m: &MatQ) -> SubspaceBasis {
    let n = m.rows();
    let (reduced, pivots) = rref(&m.transpose());
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let vectors = (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect();
    SubspaceBasis::from_spanning(n, vectors)
}

/// Basis of the span of the rows of `m`.
pub fn row_space_basis(m: &MatQ) -> SubspaceBasis {
    let (rows, pivots) = rref(m);
    SubspaceBasis::from_reduced(m.cols(), rows, pivots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Plain Gauss-Jordan over Q with no tricks; independent of the integer
    /// routes above.
    fn naive_rank(m: &MatQ) -> usize {
        let mut a = m.row_vecs();
        let mut rank = 0;
        for c in 0..m.cols() {
            let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let pivot = a[rank].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i != rank && !row[c].is_zero() {
                    let f = &row[c] / &pivot[c];
                    for (x, y) in row.iter_mut().zip(&pivot) {
                        *x -= &f * y;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn arb_mat() -> impl Strategy<Value = MatQ> {
        (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
            prop::collection::vec((-3i64..4, 1i64..4), r * c).prop_map(move |v| {
                MatQ::new(
                    r,
                    c,
                    v.into_iter()
                        .map(|(n, d)| Rational::new(n.into(), d.into()))
                        .collect(),
                )
                .unwrap()
            })
        })
    }

    #[test]
    fn trivial_ranks() {
        assert_eq!(rank_exact(&MatQ::identity(2)), 2);
        assert_eq!(rank_exact(&MatQ::zeros(3, 4)), 0);
        assert_eq!(rank_exact(&MatQ::zeros(0, 0)), 0);
        assert!(left_kernel_basis(&MatQ::identity(4)).is_empty());
        assert_eq!(
            row_space_basis(&MatQ::identity(3)).vectors(),
            MatQ::identity(3).row_vecs()
        );
        assert!(row_space_basis(&MatQ::zeros(3, 2)).is_empty());
    }

    #[test]
    fn rank_deficient_example() {
        // third row = first + second, fourth column = 2 * first column
        let m = MatQ::from_i64(3, 4, &[1, 2, 3, 2, 0, 1, 1, 0, 1, 3, 4, 2]).unwrap();
        assert_eq!(rank_exact(&m), 2);
        let k = left_kernel_basis(&m);
        assert_eq!(
            k.vectors(),
            vec![vec![
                Rational::from_integer(1.into()),
                Rational::from_integer(1.into()),
                Rational::from_integer((-1).into())
            ]]
        );
    }

    proptest! {
        #[test]
        fn bareiss_matches_naive(m in arb_mat()) {
            prop_assert_eq!(rank_exact(&m), naive_rank(&m));
            prop_assert_eq!(rank_exact_with(Execution::Parallel, &m), naive_rank(&m));
        }

        #[test]
        fn rank_nullity(m in arb_mat()) {
            let k = left_kernel_basis(&m);
            prop_assert_eq!(rank_exact(&m) + k.dim(), m.rows());
            for v in k.vectors() {
                prop_assert!(m.left_apply(&v).unwrap().iter().all(Zero::is_zero));
            }
            prop_assert!(k.is_reduced());
        }

        #[test]
        fn row_space_dimension_is_rank(m in arb_mat()) {
            let rs = row_space_basis(&m);
            prop_assert_eq!(rs.dim(), rank_exact(&m));
            prop_assert!(rs.is_reduced());
            prop_assert!(rs.contains_rows(&m));
        }

        #[test]
        fn product_rank_bound(a in arb_mat(), seed in 0u64..1000) {
            let b = MatQ::from_fn(a.cols(), 4, |i, j| Rational::from_integer((((seed as usize + 3 * i + 5 * j) % 7) as i64 - 3).into()));
            let ab = super::super::mat_mul(&a, &b).unwrap();
            prop_assert!(rank_exact(&ab) <= rank_exact(&a).min(rank_exact(&b)));
        }

        #[test]
        fn left_kernel_ignores_row_permutation(m in arb_mat(), shift in 0usize..7) {
            let n = m.rows();
            let perm: Vec<usize> = (0..n).map(|i| (i + shift) % n).collect();
            let pm = MatQ::from_fn(n, m.cols(), |i, j| m.get(perm[i], j).clone());
            // v · pm = 0  <=>  (v permuted back) · m = 0
            let k = left_kernel_basis(&m);
            let kp = left_kernel_basis(&pm);
            let back: Vec<Vec<Rational>> = kp.vectors().into_iter().map(|v| {
                let mut w = vec![Rational::zero(); n];
                for (i, x) in v.into_iter().enumerate() { w[perm[i]] = x; }
                w
            }).collect();
            let kb = SubspaceBasis::from_spanning(n, back);
            prop_assert!(k.same_span(&kb));
            prop_assert_eq!(&k, &kb);
            let again = SubspaceBasis::from_spanning(n, k.vectors());
            prop_assert_eq!(again, k);
        }
    }
}
