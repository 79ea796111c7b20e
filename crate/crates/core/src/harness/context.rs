use std::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};

use super::cache::{Cache, CacheKey};
use crate::error::Result;
use crate::exactlin::{
    format_pq, mat_mul_with, parse_rational, MatQ, MatrixRecord, Rational, SubspaceBasis,
};
use crate::liealg::SparsePoly;
use crate::par::Execution;
use crate::tasaka::{self, BivarPolySpace, MultivarPolySpace, TasakaMatrix};

/// Build/cache counters of a [`Context`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Counters {
    pub matrix_builds: usize,
    pub basis_builds: usize,
    pub rank_computations: usize,
    pub cache_hits: usize,
}

/// Execution strategy plus optional cache. Every matrix, basis and rank the
/// harness needs goes through here, so a warm cache means no rebuilds.
#[derive(Debug, Default)]
pub struct Context {
    cache: Option<Cache>,
    exec: Execution,
    matrix_builds: AtomicUsize,
    basis_builds: AtomicUsize,
    rank_computations: AtomicUsize,
    cache_hits: AtomicUsize,
}

#[derive(Serialize, Deserialize)]
struct StoredPolys {
    nvars: usize,
    polys: Vec<Vec<(Vec<u32>, String)>>,
}

impl StoredPolys {
    fn from_polys(nvars: usize, polys: &[SparsePoly]) -> Self {
        StoredPolys {
            nvars,
            polys: polys
                .iter()
                .map(|p| p.terms().map(|(e, c)| (e.clone(), format_pq(c))).collect())
                .collect(),
        }
    }

    fn polys(&self) -> Result<Vec<SparsePoly>> {
        self.polys
            .iter()
            .map(|terms| {
                let mut p = SparsePoly::zero(self.nvars);
                for (e, c) in terms {
                    p.add_term(e.clone(), parse_rational(c)?);
                }
                Ok(p)
            })
            .collect()
    }
}

impl Context {
    pub fn new(exec: Execution, cache: Option<Cache>) -> Self {
        Context {
            cache,
            exec,
            ..Default::default()
        }
    }

    pub fn exec(&self) -> Execution {
        self.exec
    }

    pub fn cache(&self) -> Option<&Cache> {
        self.cache.as_ref()
    }

    pub fn counters(&self) -> Counters {
        Counters {
            matrix_builds: self.matrix_builds.load(Ordering::Relaxed),
            basis_builds: self.basis_builds.load(Ordering::Relaxed),
            rank_computations: self.rank_computations.load(Ordering::Relaxed),
            cache_hits: self.cache_hits.load(Ordering::Relaxed),
        }
    }

    pub(crate) fn count_rank(&self) {
        self.rank_computations.fetch_add(1, Ordering::Relaxed);
    }

    /// Looks `key` up; on a miss runs `compute` and stores its serialisation.
    pub(crate) fn cached<T>(
        &self,
        key: CacheKey,
        encode: impl Fn(&T) -> Result<String>,
        decode: impl Fn(&str) -> Result<T>,
        compute: impl FnOnce() -> Result<T>,
    ) -> Result<T> {
        if let Some(cache) = &self.cache {
            if let Some(payload) = cache.get(&key)? {
                self.cache_hits.fetch_add(1, Ordering::Relaxed);
                return decode(&payload);
            }
        }
        let value = compute()?;
        if let Some(cache) = &self.cache {
            cache.put(&key, &encode(&value)?)?;
        }
        Ok(value)
    }

    fn cached_matrix(
        &self,
        key: CacheKey,
        build: impl FnOnce() -> Result<TasakaMatrix>,
    ) -> Result<TasakaMatrix> {
        self.cached(
            key,
            |m: &TasakaMatrix| Ok(m.to_record().to_json()),
            |s| TasakaMatrix::from_record(&MatrixRecord::from_json(s)?),
            || {
                self.matrix_builds.fetch_add(1, Ordering::Relaxed);
                build()
            },
        )
    }

    pub fn e_matrix(&self, weight: u32, depth: usize, level: usize) -> Result<TasakaMatrix> {
        self.cached_matrix(CacheKey::new(format!("E{level}"), weight, depth), || {
            tasaka::build_e_with(self.exec, weight, depth, level)
        })
    }

    /// `C_{N,r}`, assembled from the (cached) level matrices.
    pub fn c_matrix(&self, weight: u32, depth: usize) -> Result<TasakaMatrix> {
        self.cached_matrix(CacheKey::new("C", weight, depth), || {
            if depth <= 2 {
                return Ok(tasaka::build_c_with(self.exec, weight, depth));
            }
            let mut c = self.e_matrix(weight, depth, 2)?;
            for level in 3..=depth {
                c.mat = mat_mul_with(self.exec, &c.mat, &self.e_matrix(weight, depth, level)?.mat)?;
            }
            c.kind = tasaka::MatrixKind::C;
            Ok(c)
        })
    }

    pub fn eta_tilde_matrix(&self, weight: u32, depth: usize) -> Result<TasakaMatrix> {
        self.cached_matrix(CacheKey::new("EtaTilde", weight, depth), || {
            tasaka::build_eta_tilde(weight, depth)
        })
    }

    /// Coefficient matrix of the `σ` chains, the polynomial-side twin of `C_{N,r}`.
    pub fn chain_matrix(&self, weight: u32, depth: usize) -> Result<MatQ> {
        self.cached(
            CacheKey::new("Chain", weight, depth),
            |m: &MatQ| {
                let raw = crate::liealg::enumerate_index_set(weight, depth).raw();
                Ok(MatrixRecord::new("Chain", weight, depth, None, raw.clone(), raw, m).to_json())
            },
            |s| MatrixRecord::from_json(s)?.matrix(),
            || {
                self.matrix_builds.fetch_add(1, Ordering::Relaxed);
                Ok(tasaka::build_chain_matrix(self.exec, weight, depth))
            },
        )
    }

    /// `E^(2) E^(3) ... E^(r−1)`, the factor of `C_{N,r}` before `E_{N,r}`.
    pub fn leading_product(&self, weight: u32, depth: usize) -> Result<MatQ> {
        let mut acc = self.e_matrix(weight, depth, 2)?.mat;
        for level in 3..depth {
            acc = mat_mul_with(self.exec, &acc, &self.e_matrix(weight, depth, level)?.mat)?;
        }
        Ok(acc)
    }

    pub fn period_basis(&self, weight: u32) -> Result<BivarPolySpace> {
        self.cached(
            CacheKey::new("Pbasis", weight, 2),
            |s: &BivarPolySpace| {
                Ok(serde_json::to_string(&StoredPolys::from_polys(
                    2, &s.basis,
                ))?)
            },
            |s| {
                let stored: StoredPolys = serde_json::from_str(s)?;
                Ok(BivarPolySpace {
                    weight,
                    basis: stored.polys()?,
                })
            },
            || {
                self.basis_builds.fetch_add(1, Ordering::Relaxed);
                Ok(tasaka::period_basis(weight))
            },
        )
    }

    pub fn w_basis(&self, weight: u32, depth: usize) -> Result<MultivarPolySpace> {
        self.cached(
            CacheKey::new("Wbasis", weight, depth),
            |w: &MultivarPolySpace| {
                let rows: Vec<Vec<String>> = w
                    .coords
                    .iter()
                    .map(|v| v.iter().map(format_pq).collect())
                    .collect();
                Ok(serde_json::to_string(&rows)?)
            },
            |s| {
                let rows: Vec<Vec<String>> = serde_json::from_str(s)?;
                let vecs = rows
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|x| parse_rational(x))
                            .collect::<Result<Vec<Rational>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                let index = crate::liealg::enumerate_index_set(weight, depth);
                let coords = SubspaceBasis::from_spanning(index.len(), vecs);
                let basis = coords
                    .iter()
                    .map(|v| {
                        tasaka::pi_inverse(&tasaka::CoeffVector {
                            weight,
                            depth,
                            coords: v.to_vec(),
                        })
                    })
                    .collect();
                Ok(MultivarPolySpace {
                    weight,
                    depth,
                    index,
                    basis,
                    coords,
                })
            },
            || {
                self.basis_builds.fetch_add(1, Ordering::Relaxed);
                tasaka::w_basis(weight, depth)
            },
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn warm_cache_skips_builds() {
        let dir = tempfile::tempdir().unwrap();
        let cold = Context::new(Execution::default(), Some(Cache::open(dir.path()).unwrap()));
        let c = cold.c_matrix(15, 3).unwrap();
        let w = cold.w_basis(19, 3).unwrap();
        let p = cold.period_basis(24).unwrap();
        assert!(cold.counters().matrix_builds >= 1);

        let warm = Context::new(Execution::default(), Some(Cache::open(dir.path()).unwrap()));
        assert_eq!(warm.c_matrix(15, 3).unwrap(), c);
        assert_eq!(warm.w_basis(19, 3).unwrap(), w);
        assert_eq!(warm.period_basis(24).unwrap(), p);
        let k = warm.counters();
        assert_eq!((k.matrix_builds, k.basis_builds), (0, 0));
        assert_eq!(k.cache_hits, 3);
    }

    #[test]
    fn cached_c_equals_direct_build() {
        let ctx = Context::new(Execution::Sequential, None);
        for (n, r) in [(12, 2), (15, 3), (20, 4), (9, 1)] {
            assert_eq!(ctx.c_matrix(n, r).unwrap(), tasaka::build_c(n, r));
        }
    }
}
