use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{rank_exact, MatQ};
use crate::error::{Error, Result};

/// Every modulus must exceed this.
pub const PRIME_FLOOR: u64 = 1 << 31;
pub const MIN_PRIMES: usize = 3;
/// Above this many rows [`rank_auto`] switches to the modular path.
pub const EXACT_ROW_LIMIT: usize = 400;

const PRIME_CEIL: u64 = 1 << 62;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RankMethod {
    Exact,
    Modular,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RankCertificate {
    pub rank: usize,
    pub method: RankMethod,
    /// Empty for exact ranks.
    pub primes: Vec<u64>,
}

impl RankCertificate {
    pub fn exact(rank: usize) -> Self {
        RankCertificate {
            rank,
            method: RankMethod::Exact,
            primes: Vec::new(),
        }
    }

    /// Modular certificates need at least three distinct primes above 2^31.
    pub fn is_well_formed(&self) -> bool {
        match self.method {
            RankMethod::Exact => self.primes.is_empty(),
            RankMethod::Modular => {
                let mut p = self.primes.clone();
                p.sort_unstable();
                p.dedup();
                p.len() == self.primes.len()
                    && p.len() >= MIN_PRIMES
                    && p.iter().all(|&q| q > PRIME_FLOOR && is_prime_u64(q))
            }
        }
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `count` distinct primes in `(2^31, 2^62)`, reproducible from `seed`,
/// avoiding everything in `exclude`.
pub fn draw_primes(seed: u64, count: usize, exclude: &[u64]) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<u64> = Vec::with_capacity(count);
    while out.len() < count {
        let mut p = rng.random_range(PRIME_FLOOR + 1..PRIME_CEIL) | 1;
        while !is_prime_u64(p) {
            p += 2;
        }
        if !out.contains(&p) && !exclude.contains(&p) {
            out.push(p);
        }
    }
    out
}

fn reduce(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits in u64")
}

fn rank_mod_p(m: &MatQ, p: u64) -> Result<usize> {
    let mut a: Vec<Vec<u64>> = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let mut row = Vec::with_capacity(m.cols());
        for x in m.row(i) {
            let d = reduce(x.denom(), p);
            if d == 0 {
                return Err(Error::PrimeDividesDenominator { prime: p });
            }
            let n = reduce(x.numer(), p);
            row.push(if n == 0 {
                0
            } else {
                mul_mod(n, pow_mod(d, p - 2, p), p)
            });
        }
        a.push(row);
    }
    let (n, cols) = (a.len(), m.cols());
    let mut rank = 0;
    for c in 0..cols {
        if rank == n {
            break;
        }
        let Some(piv) = (rank..n).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][c], p - 2, p);
        let pivot_row = a[rank].clone();
        for row in a.iter_mut().skip(rank + 1) {
            if row[c] == 0 {
                continue;
            }
            let f = mul_mod(row[c], inv, p);
            for j in c..cols {
                let t = mul_mod(f, pivot_row[j], p);
                row[j] = (row[j] + p - t) % p;
            }
        }
        rank += 1;
    }
    Ok(rank)
}

/// Rank of `m` reduced modulo each prime. All residue ranks must agree; the
/// common value is a lower bound for the rational rank.
pub fn rank_modular(m: &MatQ, primes: &[u64]) -> Result<RankCertificate> {
    if primes.len() < MIN_PRIMES {
        return Err(Error::TooFewPrimes {
            need: MIN_PRIMES,
            got: primes.len(),
        });
    }
    for (i, &p) in primes.iter().enumerate() {
        if p <= PRIME_FLOOR || !is_prime_u64(p) || primes[..i].contains(&p) {
            return Err(Error::InvalidPrime(p));
        }
    }
    let mut ranks = Vec::with_capacity(primes.len());
    for &p in primes {
        ranks.push((p, rank_mod_p(m, p)?));
    }
    if ranks.iter().any(|&(_, r)| r != ranks[0].1) {
        return Err(Error::ModularDisagreement(ranks));
    }
    Ok(RankCertificate {
        rank: ranks[0].1,
        method: RankMethod::Modular,
        primes: primes.to_vec(),
    })
}

/// Modular rank with automatic re-draw when a prime divides a denominator.
pub(crate) fn rank_modular_seeded(m: &MatQ, seed: u64) -> Result<RankCertificate> {
    let mut bad: Vec<u64> = Vec::new();
    for attempt in 0..16u64 {
        let primes = draw_primes(seed.wrapping_add(attempt), MIN_PRIMES, &bad);
        match rank_modular(m, &primes) {
            Err(Error::PrimeDividesDenominator { prime }) => bad.push(prime),
            other => return other,
        }
    }
    Err(Error::PrimeDividesDenominator {
        prime: *bad.last().unwrap_or(&0),
    })
}

/// Exact rank up to [`EXACT_ROW_LIMIT`] rows, modular above.
pub fn rank_auto(m: &MatQ, seed: u64) -> Result<RankCertificate> {
    if m.rows() <= EXACT_ROW_LIMIT {
        Ok(RankCertificate::exact(rank_exact(m)))
    } else {
        rank_modular_seeded(m, seed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Rational;

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(
            small,
            [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime_u64(2_147_483_659));
        assert!(!is_prime_u64(2_147_483_649)); // 3 * 715827883
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2,3,5,7
    }

    #[test]
    fn drawn_primes_are_reproducible_and_valid() {
        let a = draw_primes(7, 3, &[]);
        assert_eq!(a, draw_primes(7, 3, &[]));
        let cert = rank_modular(&MatQ::identity(5), &a).unwrap();
        assert_eq!(cert.rank, 5);
        assert!(cert.is_well_formed());
        let b = draw_primes(7, 3, &a[..1]);
        assert!(!b.contains(&a[0]));
    }

    #[test]
    fn rejects_bad_prime_lists() {
        let m = MatQ::identity(2);
        assert!(matches!(
            rank_modular(&m, &[2_147_483_659]),
            Err(Error::TooFewPrimes { .. })
        ));
        assert!(matches!(
            rank_modular(&m, &[101, 2_147_483_659, 2_147_483_693]),
            Err(Error::InvalidPrime(101))
        ));
        let p = 2_147_483_659;
        assert!(matches!(
            rank_modular(&m, &[p, p, 2_147_483_693]),
            Err(Error::InvalidPrime(_))
        ));
    }

    #[test]
    fn denominator_divisible_by_prime() {
        let p = 2_147_483_659u64;
        let m = MatQ::new(1, 1, vec![Rational::new(1.into(), p.into())]).unwrap();
        let primes = [p, 2_147_483_693, 2_147_483_713];
        assert!(matches!(
            rank_modular(&m, &primes),
            Err(Error::PrimeDividesDenominator { prime }) if prime == p
        ));
        assert_eq!(rank_modular_seeded(&m, 1).unwrap().rank, 1);
    }

    #[test]
    fn disagreement_is_an_error() {
        // det = p, so the rank drops to 1 modulo p only.
        let p = 2_147_483_659i64;
        let m = MatQ::from_i64(2, 2, &[1, 0, 0, p]).unwrap();
        let err = rank_modular(&m, &[p as u64, 2_147_483_693, 2_147_483_713]).unwrap_err();
        match err {
            Error::ModularDisagreement(v) => assert_eq!(v[0].1, 1),
            e => panic!("unexpected {e}"),
        }
    }
}
