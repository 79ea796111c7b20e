use num_traits::One;
use serde_json::{Map, Value};

use super::{IndexTuple, Letter, NCPoly, NCWord, SparsePoly};
use crate::error::{Error, Result};
use crate::exactlin::{format_pq, parse_rational, Rational};

/// Polynomial in `y_0, ..., y_depth`: the image of a fixed-depth element of
/// `Q<e0, e1>` under `rho`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DepthPoly {
    depth: usize,
    poly: SparsePoly,
}

impl DepthPoly {
    pub fn zero(depth: usize) -> Self {
        DepthPoly {
            depth,
            poly: SparsePoly::zero(depth + 1),
        }
    }

    /// The constant 1 in depth 0.
    pub fn one() -> Self {
        DepthPoly {
            depth: 0,
            poly: SparsePoly::one(1),
        }
    }

    pub fn from_poly(poly: SparsePoly) -> Self {
        assert!(poly.nvars() >= 1, "depth polynomials have at least y_0");
        DepthPoly {
            depth: poly.nvars() - 1,
            poly,
        }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn poly(&self) -> &SparsePoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.poly.coeff(exps)
    }

    pub fn degree(&self) -> Result<Option<u32>> {
        self.poly.homogeneous_degree()
    }

    fn check_depth(&self, other: &DepthPoly) -> Result<()> {
        if self.depth != other.depth {
            return Err(Error::DepthMismatch {
                expected: self.depth,
                got: other.depth,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &DepthPoly) -> Result<DepthPoly> {
        self.check_depth(other)?;
        Ok(DepthPoly::from_poly(self.poly.add(&other.poly)))
    }

    pub fn sub(&self, other: &DepthPoly) -> Result<DepthPoly> {
        self.check_depth(other)?;
        Ok(DepthPoly::from_poly(self.poly.sub(&other.poly)))
    }

    pub fn scale(&self, c: &Rational) -> DepthPoly {
        DepthPoly::from_poly(self.poly.scale(c))
    }

    /// JSON object `"a0,a1,...,ar" -> "p/q"`, keys in lexicographic string
    /// order.
    pub fn to_json(&self) -> Value {
        let mut entries: Vec<(String, String)> = self
            .poly
            .terms()
            .map(|(e, c)| {
                let k: Vec<String> = e.iter().map(u32::to_string).collect();
                (k.join(","), format_pq(c))
            })
            .collect();
        entries.sort();
        Value::Object(
            entries
                .into_iter()
                .map(|(k, v)| (k, Value::String(v)))
                .collect::<Map<_, _>>(),
        )
    }

    pub fn from_json(depth: usize, v: &Value) -> Result<DepthPoly> {
        let err = || Error::Parse {
            what: "depth polynomial",
            input: v.to_string(),
        };
        let obj = v.as_object().ok_or_else(err)?;
        let mut poly = SparsePoly::zero(depth + 1);
        for (k, c) in obj {
            let e = k
                .split(',')
                .map(|t| t.parse::<u32>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| err())?;
            if e.len() != depth + 1 {
                return Err(err());
            }
            poly.add_term(e, parse_rational(c.as_str().ok_or_else(err)?)?);
        }
        Ok(DepthPoly { depth, poly })
    }
}

fn word_exponents(w: &NCWord) -> Vec<u32> {
    let mut e = vec![0u32];
    for l in &w.0 {
        match l {
            Letter::E0 => *e.last_mut().unwrap() += 1,
            Letter::E1 => e.push(0),
        }
    }
    e
}

/// `e0^{a0} e1 e0^{a1} ... e1 e0^{ar} -> y0^{a0} ... yr^{ar}`, extended
/// linearly. The depth is read off the input; zero maps to zero in depth 0.
pub fn rho(p: &NCPoly) -> Result<DepthPoly> {
    match p.min_depth() {
        None => Ok(DepthPoly::zero(0)),
        Some(d) => rho_at_depth(p, d),
    }
}

/// As [`rho`] with the depth given; every word must have exactly that depth.
pub fn rho_at_depth(p: &NCPoly, depth: usize) -> Result<DepthPoly> {
    let mut poly = SparsePoly::zero(depth + 1);
    for (w, c) in p.terms() {
        if w.depth() != depth {
            return Err(Error::MixedDepth(depth, w.depth()));
        }
        poly.add_term(word_exponents(w), c.clone());
    }
    Ok(DepthPoly { depth, poly })
}

pub fn rho_inverse(q: &DepthPoly) -> NCPoly {
    NCPoly::from_terms(q.poly.terms().map(|(e, c)| {
        let mut letters = Vec::new();
        for (i, &a) in e.iter().enumerate() {
            if i > 0 {
                letters.push(Letter::E1);
            }
            letters.extend(std::iter::repeat_n(Letter::E0, a as usize));
        }
        (NCWord(letters), c.clone())
    }))
}

/// Brown's `f ∘̲ g` for `f` of depth `r`, `g` of depth `s`:
///
/// ```text
///   sum_{i=0..s} f(y_i,...,y_{i+r}) g(y_0,...,y_i,y_{i+r+1},...,y_{r+s})
/// + (-1)^{deg f + r} sum_{i=1..s} f(y_{i+r},...,y_i) g(y_0,...,y_{i-1},y_{i+r},...,y_{r+s})
/// ```
///
/// `deg f` is the total degree of `f`, so `f` must be homogeneous.
pub fn ucirc(f: &DepthPoly, g: &DepthPoly) -> Result<DepthPoly> {
    let (r, s) = (f.depth, g.depth);
    let n = r + s + 1;
    let Some(deg) = f.degree()? else {
        return Ok(DepthPoly::zero(r + s));
    };
    let sign = if (deg as usize + r).is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    };
    let mut out = SparsePoly::zero(n);
    for i in 0..=s {
        let ft: Vec<usize> = (0..=r).map(|j| i + j).collect();
        let gt: Vec<usize> = (0..=s).map(|k| if k <= i { k } else { k + r }).collect();
        out.add_product(
            &f.poly.relabel(&ft, n),
            &g.poly.relabel(&gt, n),
            &Rational::one(),
        );
    }
    for i in 1..=s {
        let ft: Vec<usize> = (0..=r).map(|j| i + r - j).collect();
        let gt: Vec<usize> = (0..=s).map(|k| if k < i { k } else { k + r }).collect();
        out.add_product(&f.poly.relabel(&ft, n), &g.poly.relabel(&gt, n), &sign);
    }
    Ok(DepthPoly {
        depth: r + s,
        poly: out,
    })
}

/// Depth-graded Ihara bracket in the polynomial representation,
/// `g ∘̲ f − f ∘̲ g`. This orientation is the one for which the lowest-depth
/// part of `rho({F, G})` equals `dg_bracket(rho F, rho G)`.
pub fn dg_bracket(f: &DepthPoly, g: &DepthPoly) -> Result<DepthPoly> {
    ucirc(g, f)?.sub(&ucirc(f, g)?)
}

/// `rho(sigma_bar_m) = (y_1 − y_0)^{m−1}`.
pub fn sigma_poly(m: u32) -> Result<DepthPoly> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(Error::InvalidGenerator(m));
    }
    let d = SparsePoly::var(2, 1).sub(&SparsePoly::var(2, 0));
    Ok(DepthPoly::from_poly(d.pow(m - 1)))
}

/// `(y1−y0)^{m1−1} ∘̲ ((y1−y0)^{m2−1} ∘̲ (... ∘̲ (y1−y0)^{mr−1}))`.
pub fn compose_sigma_chain(m: &IndexTuple) -> DepthPoly {
    let parts = m.parts();
    let Some((&last, rest)) = parts.split_last() else {
        return DepthPoly::one();
    };
    let mut acc = sigma_poly(last).expect("index tuple parts are valid generators");
    for &k in rest.iter().rev() {
        let f = sigma_poly(k).expect("index tuple parts are valid generators");
        acc = ucirc(&f, &acc).expect("sigma polynomials are homogeneous");
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{ihara_bracket, sigma_bar_word};
    use proptest::prelude::*;

    fn q(x: i64) -> Rational {
        Rational::from_integer(x.into())
    }

    fn y(n: usize, i: usize) -> SparsePoly {
        SparsePoly::var(n, i)
    }

    #[test]
    fn rho_examples() {
        let w = NCPoly::monomial(NCWord::parse("e0e1e0e0e1").unwrap(), q(1));
        let p = rho(&w).unwrap();
        assert_eq!(p.depth(), 2);
        assert_eq!(p.poly(), &SparsePoly::monomial(vec![1, 2, 0], q(1)));
        let ones = rho(&NCPoly::monomial(NCWord::parse("e1e1").unwrap(), q(1))).unwrap();
        assert_eq!(ones.poly(), &SparsePoly::one(3));
        assert_eq!(rho_inverse(&p), w);
        assert!(rho_inverse(&DepthPoly::zero(2)).is_zero());
    }

    #[test]
    fn rho_of_sigma_bar_is_a_power_of_the_difference() {
        for m in [3, 5, 7, 9] {
            let expected = y(2, 1).sub(&y(2, 0)).pow(m - 1);
            assert_eq!(rho(&sigma_bar_word(m).unwrap()).unwrap().poly(), &expected);
            assert_eq!(sigma_poly(m).unwrap().poly(), &expected);
        }
        assert_eq!(
            rho_inverse(&sigma_poly(3).unwrap()),
            sigma_bar_word(3).unwrap()
        );
    }

    #[test]
    fn mixed_depth_rejected() {
        let p = NCPoly::e1().add(&NCPoly::e1().mul(&NCPoly::e1()));
        assert!(matches!(rho(&p), Err(Error::MixedDepth(1, 2))));
    }

    #[test]
    fn ucirc_on_two_sigma_threes() {
        let f = sigma_poly(3).unwrap();
        let out = ucirc(&f, &f).unwrap();
        // (y1−y0)^2 (y2−y0)^2 + (y2−y1)^2 (y1−y0)^2 − (y2−y1)^2 (y2−y0)^2
        let (a, b, c) = (
            y(3, 1).sub(&y(3, 0)),
            y(3, 2).sub(&y(3, 0)),
            y(3, 2).sub(&y(3, 1)),
        );
        let expected = a
            .pow(2)
            .mul(&b.pow(2))
            .add(&c.pow(2).mul(&a.pow(2)))
            .sub(&c.pow(2).mul(&b.pow(2)));
        assert_eq!(out.poly(), &expected);
        assert_eq!(out.coeff(&[0, 2, 2]), q(1));
        assert_eq!(
            compose_sigma_chain(&IndexTuple::new(vec![3, 3]).unwrap()),
            out
        );
        assert_eq!(compose_sigma_chain(&IndexTuple::new(vec![3]).unwrap()), f);
    }

    #[test]
    fn ucirc_with_depth_zero_constant() {
        let f = sigma_poly(5).unwrap();
        assert_eq!(ucirc(&f, &DepthPoly::one()).unwrap(), f);
    }

    #[test]
    fn ucirc_needs_homogeneous_left_argument() {
        let f = DepthPoly::from_poly(y(2, 0).add(&SparsePoly::one(2)));
        assert!(matches!(ucirc(&f, &f), Err(Error::NotHomogeneous(_, _))));
    }

    #[test]
    fn dg_bracket_antisymmetry() {
        let (s3, s5) = (sigma_poly(3).unwrap(), sigma_poly(5).unwrap());
        assert!(dg_bracket(&s3, &s3).unwrap().is_zero());
        let sum = dg_bracket(&s3, &s5)
            .unwrap()
            .add(&dg_bracket(&s5, &s3).unwrap())
            .unwrap();
        assert!(sum.is_zero());
    }

    #[test]
    fn leading_depth_agreement_with_ihara() {
        for m in (3..=11).step_by(2) {
            for n in (3..=11).step_by(2) {
                let b = ihara_bracket(&sigma_bar_word(m).unwrap(), &sigma_bar_word(n).unwrap());
                let lhs = rho_at_depth(&b.depth_part(2), 2).unwrap();
                let rhs = dg_bracket(&sigma_poly(m).unwrap(), &sigma_poly(n).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn json_keys_sorted_as_strings() {
        let p = DepthPoly::from_poly(SparsePoly::monomial(vec![10, 0], q(2)).add(
            &SparsePoly::monomial(vec![2, 8], Rational::new(1.into(), 3.into())),
        ));
        let s = p.to_json().to_string();
        assert_eq!(s, r#"{"10,0":"2/1","2,8":"1/3"}"#);
        assert_eq!(DepthPoly::from_json(1, &p.to_json()).unwrap(), p);
    }

    fn arb_depth_poly() -> impl Strategy<Value = DepthPoly> {
        (0usize..5).prop_flat_map(|d| {
            prop::collection::vec((prop::collection::vec(0u32..4, d + 1), -5i64..6), 0..12)
                .prop_map(move |ts| {
                    let mut p = SparsePoly::zero(d + 1);
                    for (e, c) in ts {
                        p.add_term(e, q(c));
                    }
                    DepthPoly::from_poly(p)
                })
        })
    }

    fn arb_homogeneous(depth: usize, degree: u32) -> impl Strategy<Value = DepthPoly> {
        prop::collection::vec(
            (prop::collection::vec(0u32..=degree, depth + 1), -4i64..5),
            1..6,
        )
        .prop_map(move |ts| {
            let mut p = SparsePoly::zero(depth + 1);
            for (mut e, c) in ts {
                // push the leftover degree into the last variable
                let s: u32 = e.iter().sum();
                if s > degree {
                    e = vec![0; depth + 1];
                    e[0] = degree;
                } else {
                    e[depth] += degree - s;
                }
                p.add_term(e, q(c));
            }
            DepthPoly::from_poly(p)
        })
    }

    proptest! {
        #[test]
        fn rho_round_trip(p in arb_depth_poly()) {
            let w = rho_inverse(&p);
            prop_assert_eq!(rho_at_depth(&w, p.depth()).unwrap(), p.clone());
            if !w.is_zero() {
                prop_assert_eq!(rho_inverse(&rho(&w).unwrap()), w);
            }
        }

        #[test]
        fn ucirc_degree_additive(f in arb_homogeneous(1, 4), g in arb_homogeneous(2, 3)) {
            let h = ucirc(&f, &g).unwrap();
            prop_assert_eq!(h.depth(), 3);
            if !h.is_zero() {
                prop_assert_eq!(h.degree().unwrap(), Some(7));
            }
        }
    }
}
