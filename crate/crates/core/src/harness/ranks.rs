use std::cmp::Ordering as CmpOrdering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::cache::CacheKey;
use super::context::Context;
use super::series::hilbert_target;
use crate::error::Result;
use crate::exactlin::{rank_exact_with, RankCertificate, EXACT_ROW_LIMIT};
use crate::liealg::enumerate_index_set;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RankMode {
    Exact,
    Modular {
        seed: u64,
    },
    /// Exact up to the row limit, modular beyond.
    Auto {
        seed: u64,
    },
}

impl RankMode {
    fn tag(self) -> String {
        match self {
            RankMode::Exact => "rank-exact".into(),
            RankMode::Modular { seed } => format!("rank-modular-{seed}"),
            RankMode::Auto { seed } => format!("rank-auto-{seed}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankEntry {
    pub size: usize,
    pub rank: usize,
    pub certificate: RankCertificate,
}

/// `rank C_{N,r}` for every nonempty `S_{N,r}` in a box, keyed by `(N, r)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RankTable {
    pub weight_max: u32,
    pub depth_max: usize,
    pub entries: BTreeMap<(u32, usize), RankEntry>,
}

impl Context {
    /// Rank of `C_{N,r}` under `mode`, cached independently of the matrix.
    pub fn rank_c(&self, weight: u32, depth: usize, mode: RankMode) -> Result<RankEntry> {
        self.cached(
            CacheKey::new(mode.tag(), weight, depth),
            |e: &RankEntry| Ok(serde_json::to_string(e)?),
            |s| Ok(serde_json::from_str(s)?),
            || {
                self.count_rank();
                let c = self.c_matrix(weight, depth)?;
                let certificate = match mode {
                    RankMode::Exact => RankCertificate::exact(rank_exact_with(self.exec(), &c.mat)),
                    RankMode::Modular { seed } => {
                        crate::exactlin::rank_modular_seeded(&c.mat, seed)?
                    }
                    RankMode::Auto { seed } => {
                        if c.size() <= EXACT_ROW_LIMIT {
                            RankCertificate::exact(rank_exact_with(self.exec(), &c.mat))
                        } else {
                            crate::exactlin::rank_modular_seeded(&c.mat, seed)?
                        }
                    }
                };
                Ok(RankEntry {
                    size: c.size(),
                    rank: certificate.rank,
                    certificate,
                })
            },
        )
    }
}

/// Ranks of `C_{N,r}` for `1 ≤ r ≤ depth_max`, `N ≤ weight_max`; cells are
/// computed concurrently and collected in `(N, r)` order.
pub fn rank_table(
    ctx: &Context,
    weight_max: u32,
    depth_max: usize,
    mode: RankMode,
) -> Result<RankTable> {
    let cells: Vec<(u32, usize)> = (1..=depth_max)
        .flat_map(|r| (0..=weight_max).map(move |n| (n, r)))
        .filter(|&(n, r)| !enumerate_index_set(n, r).is_empty())
        .collect();
    let ranks = ctx
        .exec()
        .try_map(&cells, |&(n, r)| ctx.rank_c(n, r, mode))?;
    Ok(RankTable {
        weight_max,
        depth_max,
        entries: cells.into_iter().zip(ranks).collect(),
    })
}

impl RankTable {
    pub fn get(&self, weight: u32, depth: usize) -> Option<&RankEntry> {
        self.entries.get(&(weight, depth))
    }

    pub fn rank(&self, weight: u32, depth: usize) -> Option<usize> {
        self.get(weight, depth).map(|e| e.rank)
    }

    /// Comparison of each rank with the series coefficient.
    pub fn comparisons(&self) -> BTreeMap<(u32, usize), (usize, i64, CmpOrdering)> {
        let h = hilbert_target(self.weight_max as usize, self.depth_max);
        self.entries
            .iter()
            .map(|(&(n, r), e)| {
                let target = h
                    .coeff(n as usize, r)
                    .to_integer()
                    .to_i64()
                    .expect("small coefficient");
                ((n, r), (e.rank, target, (e.rank as i64).cmp(&target)))
            })
            .collect()
    }

    /// Columns `N,r,size,rank,method,status`; status is the comparison with
    /// the series coefficient.
    pub fn to_csv(&self) -> String {
        let cmp = self.comparisons();
        let mut out = String::from("N,r,size,rank,method,status\n");
        for (&(n, r), e) in &self.entries {
            let status = match cmp[&(n, r)].2 {
                CmpOrdering::Equal => "equal",
                CmpOrdering::Greater => "greater",
                CmpOrdering::Less => "smaller",
            };
            let method = serde_json::to_value(e.certificate.method).expect("enum serialises");
            writeln!(
                out,
                "{n},{r},{},{},{},{status}",
                e.size,
                e.rank,
                method.as_str().unwrap_or("")
            )
            .unwrap();
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let cells: Vec<Value> = self
            .entries
            .iter()
            .map(|(&(n, r), e)| {
                json!({
                    "N": n,
                    "r": r,
                    "size": e.size,
                    "rank": e.rank,
                    "certificate": e.certificate,
                })
            })
            .collect();
        json!({
            "weight_max": self.weight_max,
            "depth_max": self.depth_max,
            "entries": cells,
        })
    }
}
