use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    E0,
    E1,
}

/// A word in `e0, e1`. Weight is the length, depth the number of `e1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NCWord(pub Vec<Letter>);

impl NCWord {
    pub fn empty() -> Self {
        NCWord(Vec::new())
    }

    pub fn weight(&self) -> usize {
        self.0.len()
    }

    pub fn depth(&self) -> usize {
        self.0.iter().filter(|&&l| l == Letter::E1).count()
    }

    pub fn concat(&self, other: &NCWord) -> NCWord {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        NCWord(v)
    }

    /// Parses `e0e1e0`; the empty word is written `1`.
    pub fn parse(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "word",
            input: s.to_string(),
        };
        if s == "1" {
            return Ok(NCWord::empty());
        }
        let b = s.as_bytes();
        if !b.len().is_multiple_of(2) {
            return Err(err());
        }
        b.chunks(2)
            .map(|c| match c {
                b"e0" => Ok(Letter::E0),
                b"e1" => Ok(Letter::E1),
                _ => Err(err()),
            })
            .collect::<Result<Vec<_>>>()
            .map(NCWord)
    }
}

impl fmt::Display for NCWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for l in &self.0 {
            f.write_str(match l {
                Letter::E0 => "e0",
                Letter::E1 => "e1",
            })?;
        }
        Ok(())
    }
}

/// Element of `Q<e0, e1>`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NCPoly {
    terms: BTreeMap<NCWord, Rational>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn letter(l: Letter) -> Self {
        Self::monomial(NCWord(vec![l]), Rational::one())
    }

    pub fn e0() -> Self {
        Self::letter(Letter::E0)
    }

    pub fn e1() -> Self {
        Self::letter(Letter::E1)
    }

    pub fn monomial(w: NCWord, c: Rational) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (NCWord, Rational)>) -> Self {
        let mut p = NCPoly::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, w: NCWord, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NCWord, &Rational)> {
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

    pub fn coeff(&self, w: &NCWord) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        self.add_scaled(other, &Rational::one())
    }

    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        self.add_scaled(other, &-Rational::one())
    }

    /// `self + c * other`
    pub fn add_scaled(&self, other: &NCPoly, c: &Rational) -> NCPoly {
        let mut out = self.clone();
        for (w, x) in &other.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> NCPoly {
        NCPoly::zero().add_scaled(self, c)
    }

    /// Concatenation product.
    pub fn mul(&self, other: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.concat(b), x * y);
            }
        }
        out
    }

    /// `[self, other] = self·other − other·self`
    pub fn commutator(&self, other: &NCPoly) -> NCPoly {
        self.mul(other).sub(&other.mul(self))
    }

    /// Set of depths occurring, ascending.
    pub fn depths(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(NCWord::depth).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn min_depth(&self) -> Option<usize> {
        self.terms.keys().map(NCWord::depth).min()
    }

    pub fn depth_part(&self, depth: usize) -> NCPoly {
        NCPoly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.depth() == depth)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn weights(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(NCWord::weight).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// The derivation `D_f` applied to `self`: kills `e0`, sends `e1` to
    /// `[e1, f]`, extended to words by the Leibniz rule.
    pub fn derive_by(&self, f: &NCPoly) -> NCPoly {
        let image = NCPoly::e1().commutator(f);
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            for (i, l) in w.0.iter().enumerate() {
                if *l != Letter::E1 {
                    continue;
                }
                let prefix = NCWord(w.0[..i].to_vec());
                let suffix = NCWord(w.0[i + 1..].to_vec());
                for (m, x) in image.terms() {
                    out.add_term(prefix.concat(m).concat(&suffix), c * x);
                }
            }
        }
        out
    }
}

/// `{f, g} = [f, g] + D_f(g) − D_g(f)`.
pub fn ihara_bracket(f: &NCPoly, g: &NCPoly) -> NCPoly {
    f.commutator(g).add(&g.derive_by(f)).sub(&f.derive_by(g))
}

/// `(ad e0)^{m−1}(e1)`, fully expanded.
pub fn sigma_bar_word(m: u32) -> Result<NCPoly> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(Error::InvalidGenerator(m));
    }
    let e0 = NCPoly::e0();
    let mut p = NCPoly::e1();
    for _ in 1..m {
        p = e0.commutator(&p);
    }
    Ok(p)
}
