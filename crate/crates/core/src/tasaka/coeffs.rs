use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::Rational;
use crate::liealg::IndexTuple;

/// `(a choose b)`, zero whenever `b < 0` or `b > a`.
pub fn binomial(a: i64, b: i64) -> BigInt {
    if b < 0 || a < 0 || b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc = acc * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    acc
}

fn sign(e: i64) -> BigInt {
    if e.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

pub(crate) fn b_int(m: u32, n: u32, n2: u32) -> BigInt {
    let (m, n, n2) = (m as i64, n as i64, n2 as i64);
    sign(n) * binomial(m - 1, n - 1) + sign(n2 - m) * binomial(m - 1, n2 - 1)
}

/// `b^m_{n,n'} = (−1)^n C(m−1, n−1) + (−1)^{n'−m} C(m−1, n'−1)`.
pub fn b_coeff(m: u32, n: u32, n2: u32) -> Rational {
    Rational::from_integer(b_int(m, n, n2))
}

/// `e(m; n) = δ(m; n) + Σ_{i=1}^{r−1} δ(m_2..m_i, m_{i+2}..m_r; n_1..n_{i−1}, n_{i+2}..n_r) b^{m_1}_{n_i, n_{i+1}}`
pub(crate) fn e_int(m: &[u32], n: &[u32]) -> BigInt {
    debug_assert_eq!(m.len(), n.len());
    let r = m.len();
    let mut v = if m == n {
        BigInt::one()
    } else {
        BigInt::zero()
    };
    for i in 1..r {
        // 1-based i: m-side skips m_1 and m_{i+1}, n-side skips n_i and n_{i+1}
        let m_left = &m[1..i];
        let n_left = &n[..i - 1];
        let m_right = &m[i + 1..];
        let n_right = &n[i + 1..];
        if m_left == n_left && m_right == n_right {
            v += b_int(m[0], n[i - 1], n[i]);
        }
    }
    v
}

pub fn e_entry(m: &IndexTuple, n: &IndexTuple) -> Result<Rational> {
    if m.depth() != n.depth() {
        return Err(Error::LengthMismatch(m.depth(), n.depth()));
    }
    Ok(Rational::from_integer(e_int(m.parts(), n.parts())))
}
