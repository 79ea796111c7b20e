use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::Rational;

/// Sparse commutative polynomial in a fixed number of variables, keyed by
/// exponent vectors. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl SparsePoly {
    pub fn zero(nvars: usize) -> Self {
        SparsePoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], Rational::one())
    }

    pub fn monomial(exps: Vec<u32>, c: Rational) -> Self {
        let mut p = SparsePoly::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// The variable `x_i` alone.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`
    pub fn add_scaled_assign(&mut self, other: &SparsePoly, c: &Rational) {
        assert_eq!(self.nvars, other.nvars, "variable counts differ");
        for (e, x) in &other.terms {
            self.add_term(e.clone(), x * c);
        }
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        out.add_scaled_assign(other, &Rational::one());
        out
    }

    pub fn sub(&self, other: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        out.add_scaled_assign(other, &-Rational::one());
        out
    }

    pub fn scale(&self, c: &Rational) -> SparsePoly {
        let mut out = SparsePoly::zero(self.nvars);
        out.add_scaled_assign(self, c);
        out
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        let mut out = SparsePoly::zero(self.nvars);
        out.add_product(self, other, &Rational::one());
        out
    }

    /// `self += c * a * b`
    pub fn add_product(&mut self, a: &SparsePoly, b: &SparsePoly, c: &Rational) {
        assert!(
            a.nvars == self.nvars && b.nvars == self.nvars,
            "variable counts differ"
        );
        for (ea, xa) in &a.terms {
            let xac = xa * c;
            for (eb, xb) in &b.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(u, v)| u + v).collect();
                self.add_term(e, &xac * xb);
            }
        }
    }

    pub fn pow(&self, k: u32) -> SparsePoly {
        let mut out = SparsePoly::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Renames variable `j` to `targets[j]` in a ring with `nvars` variables.
    /// Several variables may land on the same target; exponents then add.
    pub fn relabel(&self, targets: &[usize], nvars: usize) -> SparsePoly {
        assert_eq!(targets.len(), self.nvars);
        let mut out = SparsePoly::zero(nvars);
        for (e, x) in &self.terms {
            let mut k = vec![0; nvars];
            for (j, &a) in e.iter().enumerate() {
                k[targets[j]] += a;
            }
            out.add_term(k, x.clone());
        }
        out
    }

    /// Substitutes `x_j -> images[j]`, all images living in one ring.
    pub fn substitute(&self, images: &[SparsePoly]) -> SparsePoly {
        assert_eq!(images.len(), self.nvars);
        let nvars = images.first().map_or(0, |p| p.nvars);
        let mut powers: Vec<Vec<SparsePoly>> = images
            .iter()
            .map(|p| vec![SparsePoly::one(p.nvars)])
            .collect();
        let mut out = SparsePoly::zero(nvars);
        for (e, x) in &self.terms {
            let mut term = SparsePoly::monomial(vec![0; nvars], x.clone());
            for (j, &a) in e.iter().enumerate() {
                while powers[j].len() <= a as usize {
                    let next = powers[j].last().unwrap().mul(&images[j]);
                    powers[j].push(next);
                }
                term = term.mul(&powers[j][a as usize]);
            }
            out.add_scaled_assign(&term, &Rational::one());
        }
        out
    }

    pub fn total_degree(exps: &[u32]) -> u32 {
        exps.iter().sum()
    }

    /// The common total degree, `None` for the zero polynomial.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        let mut it = self.terms.keys().map(|e| Self::total_degree(e));
        let Some(d) = it.next() else {
            return Ok(None);
        };
        match it.find(|&k| k != d) {
            Some(k) => Err(Error::NotHomogeneous(d, k)),
            None => Ok(Some(d)),
        }
    }
}
