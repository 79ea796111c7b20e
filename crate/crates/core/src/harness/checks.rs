use num_traits::ToPrimitive;
use serde::Serialize;

use super::context::Context;
use super::ranks::{rank_table, RankMode, RankTable};
use super::series::{cusp_series, hilbert_target};
use crate::error::{Error, Result};
use crate::exactlin::{left_kernel_basis, rank_exact_with, row_space_basis};
use crate::liealg::enumerate_index_set;

/// Integer coefficient of `x^n` in `S(x)`.
fn cusp_coeff(n: u32) -> i64 {
    cusp_series(n as usize, 0)
        .coeff(n as usize, 0)
        .to_integer()
        .to_i64()
        .expect("small coefficient")
}

/// `rank C_{N,r}` with the boundary conventions: `1` at `(0, 0)`, `0` for an
/// empty index set, otherwise the table value.
fn table_rank(table: &RankTable, weight: i64, depth: i64, missing: &mut Vec<(u32, usize)>) -> i64 {
    if weight < 0 || depth < 0 {
        return 0;
    }
    let (n, r) = (weight as u32, depth as usize);
    if r == 0 {
        return (n == 0) as i64;
    }
    if enumerate_index_set(n, r).is_empty() {
        return 0;
    }
    match table.rank(n, r) {
        Some(k) => k as i64,
        None => {
            missing.push((n, r));
            0
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecurrenceResult {
    pub weight: u32,
    pub depth: usize,
    pub rank: i64,
    /// `Σ_{m odd ≥ 3} rank C_{N−m,r−1}`.
    pub odd_sum: i64,
    /// `Σ_{m even ≥ 12} [x^m]S · rank C_{N−m,r−2}`.
    pub cusp_sum: i64,
    /// `rank − odd_sum + cusp_sum`, zero when the series identity holds.
    pub value: i64,
}

/// Coefficient of `x^N y^r` in `(1 − O(x)y + S(x)y^2) · Σ rank C x^N y^r`,
/// evaluated from `table`.
pub fn recurrence_check(weight: u32, depth: usize, table: &RankTable) -> Result<RecurrenceResult> {
    let (n, r) = (weight as i64, depth as i64);
    let mut missing = Vec::new();
    let rank = table_rank(table, n, r, &mut missing);
    let mut odd_sum = 0;
    let mut m = 3;
    while n - m >= 3 * (r - 1) && r >= 1 {
        odd_sum += table_rank(table, n - m, r - 1, &mut missing);
        m += 2;
    }
    let mut cusp_sum = 0;
    let mut m = 12;
    while n - m >= 3 * (r - 2) && r >= 2 {
        let s = cusp_coeff(m as u32);
        if s != 0 {
            cusp_sum += s * table_rank(table, n - m, r - 2, &mut missing);
        }
        m += 2;
    }
    if !missing.is_empty() {
        missing.sort_unstable();
        missing.dedup();
        return Err(Error::MissingTableEntries(missing));
    }
    Ok(RecurrenceResult {
        weight,
        depth,
        rank,
        odd_sum,
        cusp_sum,
        value: rank - odd_sum + cusp_sum,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionResult {
    pub weight: u32,
    pub depth: usize,
    pub size: usize,
    pub dim_ker_c: usize,
    /// `dim Ker P` with `P = E^(2) ... E^(r−1)`.
    pub dim_ker_p: usize,
    /// `dim(RowSpace P ∩ Ker E_{N,r})`.
    pub dim_intersection: usize,
    /// `dim Ker C = dim Ker P + dim(RowSpace P ∩ Ker E)`.
    pub a_holds: bool,
    /// `Σ_{m odd} dim Ker C_{N−m,r−1}`.
    pub ker_blocks: usize,
    pub b_holds: bool,
    /// `Σ_{m even} dim P_m · rank C_{N−m,r−2}`.
    pub cusp_blocks: usize,
    pub c_holds: bool,
}

/// The three kernel dimension counts for `C_{N,r}`, `r ≥ 3`.
pub fn decomposition_check(
    ctx: &Context,
    weight: u32,
    depth: usize,
) -> Result<DecompositionResult> {
    if depth < 3 {
        return Err(Error::DepthTooSmall { min: 3, got: depth });
    }
    let index = enumerate_index_set(weight, depth);
    let size = index.len();
    if size == 0 {
        return Ok(DecompositionResult {
            weight,
            depth,
            size,
            dim_ker_c: 0,
            dim_ker_p: 0,
            dim_intersection: 0,
            a_holds: true,
            ker_blocks: 0,
            b_holds: true,
            cusp_blocks: 0,
            c_holds: true,
        });
    }
    let rank_c = ctx.rank_c(weight, depth, RankMode::Exact)?.rank;
    let dim_ker_c = size - rank_c;
    let p = ctx.leading_product(weight, depth)?;
    let dim_ker_p = size - rank_exact_with(ctx.exec(), &p);
    let ker_e = left_kernel_basis(&ctx.e_matrix(weight, depth, depth)?.mat);
    let dim_intersection = row_space_basis(&p).intersection_dim(&ker_e);

    let mut ker_blocks = 0;
    for m in (3..weight).step_by(2) {
        if enumerate_index_set(weight - m, depth - 1).is_empty() {
            continue;
        }
        let e = ctx.rank_c(weight - m, depth - 1, RankMode::Exact)?;
        ker_blocks += e.size - e.rank;
    }
    let mut cusp_blocks = 0;
    for m in (12..weight).step_by(2) {
        let rest = weight - m;
        let rank = if depth - 2 == 0 {
            (rest == 0) as usize
        } else if enumerate_index_set(rest, depth - 2).is_empty() {
            0
        } else {
            ctx.rank_c(rest, depth - 2, RankMode::Exact)?.rank
        };
        if rank > 0 {
            cusp_blocks += ctx.period_basis(m)?.dim() * rank;
        }
    }
    Ok(DecompositionResult {
        weight,
        depth,
        size,
        dim_ker_c,
        dim_ker_p,
        dim_intersection,
        a_holds: dim_ker_c == dim_ker_p + dim_intersection,
        ker_blocks,
        b_holds: dim_ker_p == ker_blocks,
        cusp_blocks,
        c_holds: dim_intersection == cusp_blocks,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Comparison {
    Equal,
    Greater,
    Smaller,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessCell {
    pub weight: u32,
    pub depth: usize,
    pub rank: usize,
    pub target: i64,
    pub comparison: Comparison,
    pub recurrence: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthSummary {
    pub depth: usize,
    pub cells: usize,
    pub equal: usize,
    pub greater: usize,
    pub smaller: usize,
    /// Every recurrence value in this row vanishes.
    pub recurrence_holds: bool,
    /// `rank ≥ coefficient` throughout the row together with the
    /// recurrence: the short exact sequence has the predicted dimensions.
    pub exact_sequence: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub weight_max: u32,
    pub depth_max: usize,
    pub cells: Vec<ExactnessCell>,
    pub depths: Vec<DepthSummary>,
}

impl ExactnessReport {
    /// Depths at which the exact-sequence dimensions are established.
    pub fn exact_depths(&self) -> Vec<usize> {
        self.depths
            .iter()
            .filter(|d| d.exact_sequence)
            .map(|d| d.depth)
            .collect()
    }
}

/// Compares every `rank C_{N,r}` in range with the series coefficient and
/// checks the recurrence row by row.
pub fn exactness_report(
    ctx: &Context,
    weight_max: u32,
    depth_max: usize,
) -> Result<ExactnessReport> {
    let table = rank_table(ctx, weight_max, depth_max, RankMode::Exact)?;
    exactness_from_table(&table)
}

pub(crate) fn exactness_from_table(table: &RankTable) -> Result<ExactnessReport> {
    let h = hilbert_target(table.weight_max as usize, table.depth_max);
    let mut cells = Vec::new();
    for (&(n, r), e) in &table.entries {
        let target = h
            .coeff(n as usize, r)
            .to_integer()
            .to_i64()
            .expect("small coefficient");
        let comparison = match (e.rank as i64).cmp(&target) {
            std::cmp::Ordering::Equal => Comparison::Equal,
            std::cmp::Ordering::Greater => Comparison::Greater,
            std::cmp::Ordering::Less => Comparison::Smaller,
        };
        let recurrence = recurrence_check(n, r, table)?.value;
        cells.push(ExactnessCell {
            weight: n,
            depth: r,
            rank: e.rank,
            target,
            comparison,
            recurrence,
        });
    }
    cells.sort_by_key(|c| (c.depth, c.weight));
    let depths = (1..=table.depth_max)
        .map(|r| {
            let row: Vec<&ExactnessCell> = cells.iter().filter(|c| c.depth == r).collect();
            let count = |k: Comparison| row.iter().filter(|c| c.comparison == k).count();
            let recurrence_holds = row.iter().all(|c| c.recurrence == 0);
            DepthSummary {
                depth: r,
                cells: row.len(),
                equal: count(Comparison::Equal),
                greater: count(Comparison::Greater),
                smaller: count(Comparison::Smaller),
                recurrence_holds,
                exact_sequence: recurrence_holds && count(Comparison::Smaller) == 0,
            }
        })
        .collect();
    Ok(ExactnessReport {
        weight_max: table.weight_max,
        depth_max: table.depth_max,
        cells,
        depths,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::par::Execution;

    fn table(n: u32, r: usize) -> RankTable {
        rank_table(
            &Context::new(Execution::default(), None),
            n,
            r,
            RankMode::Exact,
        )
        .unwrap()
    }

    #[test]
    fn recurrence_examples() {
        let t = table(25, 4);
        let r = recurrence_check(12, 2, &t).unwrap();
        assert_eq!((r.rank, r.odd_sum, r.cusp_sum, r.value), (3, 4, 1, 0));
        let r = recurrence_check(15, 3, &t).unwrap();
        assert_eq!(r.rank, 8);
        assert_eq!(r.odd_sum, 3 + 3 + 2 + 1);
        assert_eq!(r.cusp_sum, 1);
        assert_eq!(r.value, 0);
        assert_eq!(recurrence_check(4, 3, &t).unwrap().value, 0);
        for n in (0..=25).step_by(2) {
            assert_eq!(recurrence_check(n, 2, &t).unwrap().value, 0, "N={n}");
        }
    }

    #[test]
    fn recurrence_names_missing_entries() {
        let t = table(12, 1);
        assert_eq!(recurrence_check(15, 2, &t).unwrap().value, 0);
        match recurrence_check(15, 3, &t) {
            Err(Error::MissingTableEntries(m)) => {
                assert!(m.contains(&(12, 2)) && m.contains(&(15, 3)))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn decomposition_at_eighteen() {
        let ctx = Context::new(Execution::default(), None);
        let d = decomposition_check(&ctx, 18, 3).unwrap();
        assert!(d.a_holds && d.b_holds && d.c_holds, "{d:?}");
        let d = decomposition_check(&ctx, 20, 4).unwrap();
        assert!(d.a_holds && d.b_holds && d.c_holds, "{d:?}");
        assert!(decomposition_check(&ctx, 18, 2).is_err());
    }

    #[test]
    fn exactness_rows() {
        let t = table(25, 3);
        let rep = exactness_from_table(&t).unwrap();
        assert_eq!(rep.exact_depths(), vec![1, 2, 3]);
        assert!(rep.depths.iter().all(|d| d.greater == 0 && d.smaller == 0));
    }
}
