use num_traits::Zero;
use serde_json::{Map, Value};

use super::coeffs::e_int;
use crate::error::{Error, Result};
use crate::exactlin::{format_pq, mat_mul_with, MatQ, MatrixRecord, Rational};
use crate::liealg::{compose_sigma_chain, enumerate_index_set, IndexSet};
use crate::par::Execution;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatrixKind {
    /// `E^(k)_{N,r}`; `E^(r)_{N,r}` is `E_{N,r}`.
    E {
        level: usize,
    },
    C,
    /// Block-diagonal matrix `δ(m_1; n_1) e(m_2..m_r; n_2..n_r)` of `eta~`.
    EtaTilde,
}

impl MatrixKind {
    pub fn name(self) -> &'static str {
        match self {
            MatrixKind::E { .. } => "E",
            MatrixKind::C => "C",
            MatrixKind::EtaTilde => "EtaTilde",
        }
    }

    pub fn level(self) -> Option<usize> {
        match self {
            MatrixKind::E { level } => Some(level),
            _ => None,
        }
    }
}

/// Square integer matrix over `S_{N,r}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TasakaMatrix {
    pub weight: u32,
    pub depth: usize,
    pub kind: MatrixKind,
    pub index: IndexSet,
    pub mat: MatQ,
}

impl TasakaMatrix {
    pub fn size(&self) -> usize {
        self.index.len()
    }

    pub fn to_record(&self) -> MatrixRecord {
        let idx = self.index.raw();
        MatrixRecord::new(
            self.kind.name(),
            self.weight,
            self.depth,
            self.kind.level(),
            idx.clone(),
            idx,
            &self.mat,
        )
    }

    pub fn from_record(rec: &MatrixRecord) -> Result<Self> {
        let kind = match (rec.kind.as_str(), rec.level) {
            ("E", Some(level)) => MatrixKind::E { level },
            ("C", None) => MatrixKind::C,
            ("EtaTilde", None) => MatrixKind::EtaTilde,
            _ => {
                return Err(Error::Parse {
                    what: "matrix kind",
                    input: format!("{} level {:?}", rec.kind, rec.level),
                })
            }
        };
        let index = enumerate_index_set(rec.weight, rec.depth);
        if index.raw() != rec.row_index || rec.row_index != rec.col_index {
            return Err(Error::Parse {
                what: "matrix index",
                input: format!("{:?}", rec.row_index),
            });
        }
        Ok(TasakaMatrix {
            weight: rec.weight,
            depth: rec.depth,
            kind,
            index,
            mat: rec.matrix()?,
        })
    }
}

fn square_from_rows(
    exec: Execution,
    index: &IndexSet,
    entry: impl Fn(&[u32], &[u32]) -> Rational + Sync + Send,
) -> MatQ {
    let t = index.tuples();
    let rows = exec.map(t, |m| {
        t.iter()
            .map(|n| entry(m.parts(), n.parts()))
            .collect::<Vec<_>>()
    });
    MatQ::from_rows(t.len(), rows).expect("square")
}

pub fn build_e(weight: u32, depth: usize, level: usize) -> Result<TasakaMatrix> {
    build_e_with(Execution::default(), weight, depth, level)
}

/// `E^(k)_{N,r} = (δ(m_1..m_i; n_1..n_i) e(m_{i+1}..m_r; n_{i+1}..n_r))` with
/// `i = r − k` fixed leading indices.
pub fn build_e_with(
    exec: Execution,
    weight: u32,
    depth: usize,
    level: usize,
) -> Result<TasakaMatrix> {
    if level < 2 || level > depth {
        return Err(Error::LevelOutOfRange { level, depth });
    }
    let i = depth - level;
    let index = enumerate_index_set(weight, depth);
    let mat = square_from_rows(exec, &index, |m, n| {
        if m[..i] == n[..i] {
            Rational::from_integer(e_int(&m[i..], &n[i..]))
        } else {
            Rational::zero()
        }
    });
    Ok(TasakaMatrix {
        weight,
        depth,
        kind: MatrixKind::E { level },
        index,
        mat,
    })
}

pub fn build_c(weight: u32, depth: usize) -> TasakaMatrix {
    build_c_with(Execution::default(), weight, depth)
}

/// `C_{N,r} = E^(2) E^(3) ... E^(r)`; the identity on `S_{N,r}` for
/// `r <= 1` (that is `[1]` for odd `N >= 3` in depth one).
pub fn build_c_with(exec: Execution, weight: u32, depth: usize) -> TasakaMatrix {
    let index = enumerate_index_set(weight, depth);
    let mat = if depth <= 1 {
        MatQ::identity(index.len())
    } else {
        let mut acc = build_e_with(exec, weight, depth, 2)
            .expect("level 2 valid")
            .mat;
        for level in 3..=depth {
            let e = build_e_with(exec, weight, depth, level).expect("level valid");
            acc = mat_mul_with(exec, &acc, &e.mat).expect("square matrices of equal size");
        }
        acc
    };
    TasakaMatrix {
        weight,
        depth,
        kind: MatrixKind::C,
        index,
        mat,
    }
}

/// Coefficient of `y_1^{n_1−1} ... y_r^{n_r−1}` in `σ_{m_1} ∘̲ (σ_{m_2} ∘̲ ...)`,
/// rows `m`, columns `n`. Agrees with `C_{N,r}` entry for entry.
pub fn build_chain_matrix(exec: Execution, weight: u32, depth: usize) -> MatQ {
    let index = enumerate_index_set(weight, depth);
    let t = index.tuples();
    let rows = exec.map(t, |m| {
        let chain = compose_sigma_chain(m);
        t.iter()
            .map(|n| {
                let mut exps = vec![0];
                exps.extend(n.parts().iter().map(|&x| x - 1));
                chain.coeff(&exps)
            })
            .collect::<Vec<_>>()
    });
    MatQ::from_rows(t.len(), rows).expect("square")
}

/// Matrix of `eta~`: the identity for `r = 2`, otherwise the block-diagonal
/// `δ(m_1; n_1) e(m_2..; n_2..)`.
pub fn build_eta_tilde(weight: u32, depth: usize) -> Result<TasakaMatrix> {
    if depth < 2 {
        return Err(Error::DepthTooSmall { min: 2, got: depth });
    }
    let index = enumerate_index_set(weight, depth);
    let mat = square_from_rows(Execution::default(), &index, |m, n| {
        if m[0] == n[0] {
            Rational::from_integer(e_int(&m[1..], &n[1..]))
        } else {
            Rational::zero()
        }
    });
    Ok(TasakaMatrix {
        weight,
        depth,
        kind: MatrixKind::EtaTilde,
        index,
        mat,
    })
}

/// Element of `Vect_{N,r}`, coordinates in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoeffVector {
    pub weight: u32,
    pub depth: usize,
    pub coords: Vec<Rational>,
}

impl CoeffVector {
    pub fn new(weight: u32, depth: usize, coords: Vec<Rational>) -> Result<Self> {
        let expected = enumerate_index_set(weight, depth).len();
        if coords.len() != expected {
            return Err(Error::VectorLength {
                expected,
                got: coords.len(),
            });
        }
        Ok(CoeffVector {
            weight,
            depth,
            coords,
        })
    }

    pub fn zero(weight: u32, depth: usize) -> Self {
        let n = enumerate_index_set(weight, depth).len();
        CoeffVector {
            weight,
            depth,
            coords: vec![Rational::zero(); n],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &CoeffVector) -> Result<CoeffVector> {
        if (self.weight, self.depth) != (other.weight, other.depth) {
            return Err(Error::VectorLength {
                expected: self.coords.len(),
                got: other.coords.len(),
            });
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CoeffVector { coords, ..*self })
    }

    /// Row vector times matrix.
    pub fn apply(&self, m: &MatQ) -> Result<CoeffVector> {
        Ok(CoeffVector {
            coords: m.left_apply(&self.coords)?,
            ..*self
        })
    }

    /// JSON object keyed by `"n1,...,nr"` in canonical order.
    pub fn to_json(&self) -> Value {
        let index = enumerate_index_set(self.weight, self.depth);
        Value::Object(
            index
                .tuples()
                .iter()
                .zip(&self.coords)
                .map(|(t, c)| (t.to_string(), Value::String(format_pq(c))))
                .collect::<Map<_, _>>(),
        )
    }
}

/// `eta(a) = a · (E_{N,r} − I)`.
pub fn eta(a: &CoeffVector) -> Result<CoeffVector> {
    if a.depth < 2 {
        return Err(Error::DepthTooSmall {
            min: 2,
            got: a.depth,
        });
    }
    let e = build_e(a.weight, a.depth, a.depth)?;
    let mut v = a.apply(&e.mat)?;
    for (x, y) in v.coords.iter_mut().zip(&a.coords) {
        *x -= y;
    }
    Ok(v)
}

pub fn eta_tilde(a: &CoeffVector) -> Result<CoeffVector> {
    let t = build_eta_tilde(a.weight, a.depth)?;
    a.apply(&t.mat)
}
