use std::fmt::Write as _;

use num_traits::Signed;
use serde::Serialize;
use serde_json::{json, Value};

use super::checks::{decomposition_check, exactness_from_table, recurrence_check};
use super::context::Context;
use super::ranks::{rank_table, RankMode};
use super::series::{cusp_series, hilbert_target, odd_series, Series2};
use crate::error::Result;
use crate::exactlin::{format_pq, left_kernel_basis, MatQ};
use crate::liealg::{
    dg_bracket, enumerate_index_set, ihara_bracket, rho_at_depth, sigma_bar_word, sigma_poly,
};
use crate::tasaka::{verify_tasaka_with, TasakaReport};

/// Outcome of one check. Statements that are theorems must pass; failures
/// of conjectural statements are reported as findings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "proven-pass")]
    ProvenPass,
    #[serde(rename = "conjectural-pass")]
    ConjecturalPass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "finding")]
    Finding,
}

impl Status {
    pub fn classify(proven: bool, ok: bool) -> Status {
        match (proven, ok) {
            (true, true) => Status::ProvenPass,
            (true, false) => Status::Fail,
            (false, true) => Status::ConjecturalPass,
            (false, false) => Status::Finding,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::ProvenPass => "proven-pass",
            Status::ConjecturalPass => "conjectural-pass",
            Status::Fail => "FAIL",
            Status::Finding => "finding",
        }
    }

    pub fn is_pass(self) -> bool {
        matches!(self, Status::ProvenPass | Status::ConjecturalPass)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// The statement being tested.
    pub anchor: String,
    pub status: Status,
    pub details: Value,
}

impl Check {
    fn new(name: impl Into<String>, anchor: &str, proven: bool, ok: bool, details: Value) -> Check {
        Check {
            name: name.into(),
            anchor: anchor.to_string(),
            status: Status::classify(proven, ok),
            details,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub scope: Scope,
    pub checks: Vec<Check>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Scope {
    pub weight_max: u32,
    pub depth_max: usize,
}

impl VerificationReport {
    pub fn new(weight_max: u32, depth_max: usize, checks: Vec<Check>) -> Self {
        VerificationReport {
            scope: Scope {
                weight_max,
                depth_max,
            },
            checks,
        }
    }

    pub fn has_proven_failure(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn findings(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Finding)
    }

    /// Pretty JSON; identical inputs give identical bytes.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn render_table(&self) -> String {
        let w = self
            .checks
            .iter()
            .map(|c| c.name.len())
            .max()
            .unwrap_or(4)
            .max(5);
        let mut out = String::new();
        writeln!(out, "{:<w$}  {:<16}  statement", "check", "status").unwrap();
        for c in &self.checks {
            writeln!(
                out,
                "{:<w$}  {:<16}  {}",
                c.name,
                c.status.as_str(),
                c.anchor
            )
            .unwrap();
        }
        let count = |s: Status| self.checks.iter().filter(|c| c.status == s).count();
        writeln!(
            out,
            "{} checks: {} proven-pass, {} conjectural-pass, {} finding, {} FAIL",
            self.checks.len(),
            count(Status::ProvenPass),
            count(Status::ConjecturalPass),
            count(Status::Finding),
            count(Status::Fail)
        )
        .unwrap();
        out
    }
}

fn int(s: &Series2, i: usize, j: usize) -> i64 {
    use num_traits::ToPrimitive;
    s.coeff(i, j)
        .to_integer()
        .to_i64()
        .expect("small coefficient")
}

fn nonempty(weight: u32, depth: usize) -> bool {
    !enumerate_index_set(weight, depth).is_empty()
}

/// Rank table against `1/(1 − O(x)y + S(x)y^2)`, one check per depth, plus
/// the two hard spot values.
pub fn brown_checks(
    ctx: &Context,
    weight_max: u32,
    depth_max: usize,
    mode: RankMode,
) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let spots = [(12u32, 2usize, 3usize), (15, 3, 8)];
    let mut spot_details = Vec::new();
    let mut spots_ok = true;
    for (n, r, expected) in spots {
        let got = ctx.rank_c(n, r, mode)?.rank;
        spots_ok &= got == expected;
        spot_details.push(json!({"N": n, "r": r, "expected": expected, "rank": got}));
    }
    checks.push(Check::new(
        "brown/spot-ranks",
        "rank C_{12,2} = 3 and rank C_{15,3} = 8",
        true,
        spots_ok,
        Value::Array(spot_details),
    ));

    let table = rank_table(ctx, weight_max, depth_max, mode)?;
    let h = hilbert_target(weight_max as usize, depth_max);
    for r in 1..=depth_max {
        let mut cells = Vec::new();
        let mut witnesses = Vec::new();
        for (&(n, rr), e) in &table.entries {
            if rr != r {
                continue;
            }
            let target = int(&h, n as usize, r);
            cells.push(json!([n, e.size, e.rank, target]));
            if e.rank as i64 != target {
                let c = ctx.c_matrix(n, r)?;
                witnesses.push(json!({
                    "matrix": format!("C/{n}/{r}"),
                    "rank": e.rank,
                    "target": target,
                    "certificate": e.certificate,
                    "record": serde_json::from_str::<Value>(&c.to_record().to_json())?,
                }));
            }
        }
        checks.push(Check::new(
            format!("brown/series r={r}"),
            "rank C_{N,r} = [x^N y^r] 1/(1 - O(x)y + S(x)y^2)",
            r <= 2,
            witnesses.is_empty(),
            json!({"columns": ["N", "size", "rank", "target"], "cells": cells, "witnesses": witnesses}),
        ));
    }
    Ok(checks)
}

fn tasaka_row(rep: &TasakaReport) -> Value {
    json!([rep.weight, rep.dim_w, rep.dim_ker_e, rep.dim_image])
}

fn tasaka_witness(ctx: &Context, rep: &TasakaReport) -> Result<Value> {
    let w = ctx.w_basis(rep.weight, rep.depth)?;
    let coords: Vec<Vec<String>> = w
        .coords
        .iter()
        .map(|v| v.iter().map(format_pq).collect())
        .collect();
    Ok(json!({
        "N": rep.weight,
        "report": rep,
        "matrices": [format!("E{}/{}/{}", rep.depth, rep.weight, rep.depth), format!("EtaTilde/{}/{}", rep.weight, rep.depth)],
        "pi_w_basis": coords,
    }))
}

/// Period polynomial dimensions, the depth-two kernel identity, and the
/// `eta` statements at each requested depth `≥ 2`.
pub fn tasaka_checks(ctx: &Context, weight_max: u32, depths: &[usize]) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    if depths.contains(&2) {
        let s = cusp_series(weight_max as usize, 0);
        let mut rows = Vec::new();
        let mut ok = true;
        for n in (0..=weight_max).step_by(2) {
            let dim = ctx.period_basis(n)?.dim();
            let target = int(&s, n as usize, 0);
            ok &= dim as i64 == target;
            rows.push(json!([n, dim, target]));
        }
        checks.push(Check::new(
            "tasaka/period-dimensions",
            "dim P_N = [x^N] x^12/((1-x^4)(1-x^6))",
            true,
            ok,
            json!({"columns": ["N", "dim", "target"], "cells": rows}),
        ));

        let mut rows = Vec::new();
        let mut bad = Vec::new();
        for n in (0..=weight_max).step_by(2).filter(|&n| nonempty(n, 2)) {
            let w = ctx.w_basis(n, 2)?;
            let ker = left_kernel_basis(&ctx.e_matrix(n, 2, 2)?.mat);
            let same = w.coords.same_span(&ker);
            rows.push(json!([n, w.dim(), ker.dim(), same]));
            if !same {
                let coords: Vec<Vec<String>> = w
                    .coords
                    .iter()
                    .map(|v| v.iter().map(format_pq).collect())
                    .collect();
                bad.push(json!({"N": n, "matrix": format!("E2/{n}/2"), "pi_w_basis": coords}));
            }
        }
        checks.push(Check::new(
            "tasaka/depth2-kernel",
            "pi(W_{N,2}) = Ker E_{N,2}",
            true,
            bad.is_empty(),
            json!({"columns": ["N", "dim W", "dim Ker E", "equal"], "cells": rows, "witnesses": bad}),
        ));
    }

    for &r in depths.iter().filter(|&&r| r >= 2) {
        let cells: Vec<u32> = (0..=weight_max).filter(|&n| nonempty(n, r)).collect();
        let reports = ctx.exec().try_map(&cells, |&n| -> Result<TasakaReport> {
            verify_tasaka_with(
                &ctx.w_basis(n, r)?,
                &ctx.e_matrix(n, r, r)?,
                &ctx.eta_tilde_matrix(n, r)?,
            )
        })?;
        let rows: Vec<Value> = reports.iter().map(tasaka_row).collect();
        let columns = json!(["N", "dim W", "dim Ker E", "dim image"]);
        let section = |name: &str,
                       anchor: &str,
                       proven: bool,
                       pred: &dyn Fn(&TasakaReport) -> bool|
         -> Result<Check> {
            let mut witnesses = Vec::new();
            for rep in reports.iter().filter(|rep| !pred(rep)) {
                witnesses.push(tasaka_witness(ctx, rep)?);
            }
            Ok(Check::new(
                format!("tasaka/{name} r={r}"),
                anchor,
                proven,
                witnesses.is_empty(),
                json!({"columns": columns, "cells": rows, "witnesses": witnesses}),
            ))
        };
        checks.push(section(
            "inclusions",
            "pi(W_{N,r})(E_{N,r} - I) and eta~(pi(W_{N,r})) lie in Ker E_{N,r}",
            true,
            &|x| x.inclusion_ok && x.eta_tilde_inclusion,
        )?);
        checks.push(section(
            "eta-sum",
            "eta~(a) + eta(a) = 0 on pi(W_{N,r})",
            true,
            &|x| x.eta_sum_zero,
        )?);
        checks.push(section(
            "injective",
            "eta: pi(W_{N,r}) -> Ker E_{N,r} is injective",
            r <= 3,
            &|x| x.injective,
        )?);
        checks.push(section(
            "surjective",
            "eta: pi(W_{N,r}) -> Ker E_{N,r} is surjective",
            r <= 2,
            &|x| x.surjective,
        )?);
    }
    Ok(checks)
}

/// The series recurrence evaluated on exact ranks, one check per depth.
pub fn recurrence_checks(
    ctx: &Context,
    weight_max: u32,
    depth_max: usize,
    mode: RankMode,
) -> Result<Vec<Check>> {
    let table = rank_table(ctx, weight_max, depth_max, mode)?;
    let mut checks = Vec::new();
    for r in 1..=depth_max {
        let mut rows = Vec::new();
        let mut nonzero = Vec::new();
        for n in 0..=weight_max {
            let res = recurrence_check(n, r, &table)?;
            if res.value != 0 {
                nonzero.push(json!(res));
            }
            if nonempty(n, r) {
                rows.push(json!([n, res.rank, res.odd_sum, res.cusp_sum, res.value]));
            }
        }
        checks.push(Check::new(
            format!("recurrence r={r}"),
            "rank C_{N,r} - sum_m odd rank C_{N-m,r-1} + sum_m [x^m]S rank C_{N-m,r-2} = 0",
            r <= 2,
            nonzero.is_empty(),
            json!({"columns": ["N", "rank", "odd sum", "cusp sum", "value"], "cells": rows, "witnesses": nonzero}),
        ));
    }
    Ok(checks)
}

/// Kernel splittings of `C_{N,r} = P E_{N,r}` for `3 ≤ r ≤ depth_max`.
pub fn decomposition_checks(
    ctx: &Context,
    weight_max: u32,
    depth_max: usize,
) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for r in 3..=depth_max {
        let cells: Vec<u32> = (0..=weight_max).filter(|&n| nonempty(n, r)).collect();
        let results = ctx
            .exec()
            .try_map(&cells, |&n| decomposition_check(ctx, n, r))?;
        let rows: Vec<Value> = results
            .iter()
            .map(|d| {
                json!([
                    d.weight,
                    d.size,
                    d.dim_ker_c,
                    d.dim_ker_p,
                    d.dim_intersection,
                    d.ker_blocks,
                    d.cusp_blocks
                ])
            })
            .collect();
        let columns = json!([
            "N",
            "size",
            "dim Ker C",
            "dim Ker P",
            "dim(Im P ∩ Ker E)",
            "sum Ker C_{N-m,r-1}",
            "sum dim P_m rank C_{N-m,r-2}"
        ]);
        let mut part =
            |name: &str,
             anchor: &str,
             proven: bool,
             ok: &dyn Fn(&super::checks::DecompositionResult) -> bool| {
                let witnesses: Vec<Value> = results
                .iter()
                .filter(|d| !ok(d))
                .map(|d| json!({"result": d, "matrices": [format!("C/{}/{r}", d.weight), format!("E{r}/{}/{r}", d.weight)]}))
                .collect();
                checks.push(Check::new(
                    format!("decomposition/{name} r={r}"),
                    anchor,
                    proven,
                    witnesses.is_empty(),
                    json!({"columns": columns, "cells": rows, "witnesses": witnesses}),
                ));
            };
        part(
            "a",
            "dim Ker C_{N,r} = dim Ker P + dim(Im P ∩ Ker E_{N,r}), P = E^(2)...E^(r-1)",
            true,
            &|d| d.a_holds,
        );
        part(
            "b",
            "dim Ker P = sum_{m odd} dim Ker C_{N-m,r-1}",
            true,
            &|d| d.b_holds,
        );
        part(
            "c",
            "dim(Im P ∩ Ker E_{N,r}) = sum_{m even} dim P_m rank C_{N-m,r-2}",
            false,
            &|d| d.c_holds,
        );
    }
    Ok(checks)
}

/// Independent confirmations: polynomial chains against `C`, modular against
/// exact ranks, the series identity, and bracket compatibility.
pub fn crosscheck_checks(
    ctx: &Context,
    weight_max: u32,
    depth_max: usize,
    seed: u64,
) -> Result<Vec<Check>> {
    let mut checks = Vec::new();

    for r in 2..=depth_max {
        let mut rows = Vec::new();
        let mut bad = Vec::new();
        for n in (0..=weight_max).filter(|&n| nonempty(n, r)) {
            let chain = ctx.chain_matrix(n, r)?;
            let c = ctx.c_matrix(n, r)?;
            let same = chain == c.mat;
            rows.push(json!([n, c.size(), same]));
            if !same {
                bad.push(json!({"matrices": [format!("C/{n}/{r}"), format!("Chain/{n}/{r}")], "difference": first_difference(&chain, &c.mat)}));
            }
        }
        checks.push(Check::new(
            format!("crosscheck/coefficient-identity r={r}"),
            "coeff of y_1^{n_1-1}...y_r^{n_r-1} in sigma_{m_1} o ... o sigma_{m_r} = C_{N,r}[m,n]",
            true,
            bad.is_empty(),
            json!({"columns": ["N", "size", "equal"], "cells": rows, "witnesses": bad}),
        ));
    }

    let exact = rank_table(ctx, weight_max, depth_max, RankMode::Exact)?;
    let modular = rank_table(ctx, weight_max, depth_max, RankMode::Modular { seed })?;
    let mut bad = Vec::new();
    for (k, e) in &exact.entries {
        let m = &modular.entries[k];
        if m.rank != e.rank || !m.certificate.is_well_formed() {
            bad.push(json!({"N": k.0, "r": k.1, "exact": e.rank, "modular": m.certificate}));
        }
    }
    checks.push(Check::new(
        "crosscheck/modular-rank",
        "rank mod three primes above 2^31 = exact rank",
        true,
        bad.is_empty(),
        json!({"seed": seed, "cells": exact.entries.len(), "witnesses": bad}),
    ));

    let (xm, ym) = (weight_max as usize, depth_max);
    let h = hilbert_target(xm, ym);
    let one = Series2::one(xm, ym);
    let den = one
        .sub(&odd_series(xm, ym).shift(0, 1))
        .add(&cusp_series(xm, ym).shift(0, 2));
    let product_ok = den.mul(&h) == one;
    let mut negative = Vec::new();
    for i in 0..=xm {
        for j in 0..=ym {
            let c = h.coeff(i, j);
            if c.is_negative() || !c.is_integer() {
                negative.push(json!([i, j, format_pq(&c)]));
            }
        }
    }
    checks.push(Check::new(
        "crosscheck/series-identity",
        "(1 - O(x)y + S(x)y^2) H = 1 with H integral and nonnegative",
        true,
        product_ok && negative.is_empty(),
        json!({"product_is_one": product_ok, "bad_coefficients": negative}),
    ));

    let mut bad = Vec::new();
    let mut pairs = 0;
    for m in (3..=11).step_by(2) {
        for n in (3..=11).step_by(2) {
            pairs += 1;
            let b = ihara_bracket(&sigma_bar_word(m)?, &sigma_bar_word(n)?);
            let lhs = rho_at_depth(&b.depth_part(2), 2)?;
            let rhs = dg_bracket(&sigma_poly(m)?, &sigma_poly(n)?)?;
            if lhs != rhs {
                bad.push(json!({"m": m, "n": n, "ihara": lhs.to_json(), "graded": rhs.to_json()}));
            }
        }
    }
    checks.push(Check::new(
        "crosscheck/bracket-leading-depth",
        "rho of the depth-2 part of {s_m, s_n} = graded bracket of sigma_m, sigma_n",
        true,
        bad.is_empty(),
        json!({"pairs": pairs, "witnesses": bad}),
    ));

    let exactness = exactness_from_table(&exact)?;
    let all = exactness.depths.iter().all(|d| d.exact_sequence);
    checks.push(Check::new(
        "crosscheck/exact-sequence",
        "0 -> P (x) L_{r-2} -> L_1 (x) L_{r-1} -> L_r -> 0 has the series dimensions",
        false,
        all,
        json!({"depths": exactness.depths, "exact_depths": exactness.exact_depths()}),
    ));
    Ok(checks)
}

fn first_difference(a: &MatQ, b: &MatQ) -> Value {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return json!({"shapes": [[a.rows(), a.cols()], [b.rows(), b.cols()]]});
    }
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if a.get(i, j) != b.get(i, j) {
                return json!({"row": i, "col": j, "left": format_pq(a.get(i, j)), "right": format_pq(b.get(i, j))});
            }
        }
    }
    Value::Null
}

/// Every section over `N ≤ weight_max`, `r ≤ depth_max`.
pub fn full_report(
    ctx: &Context,
    weight_max: u32,
    depth_max: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let mut checks = brown_checks(ctx, weight_max, depth_max, RankMode::Exact)?;
    let depths: Vec<usize> = (2..=depth_max).collect();
    checks.extend(tasaka_checks(ctx, weight_max, &depths)?);
    checks.extend(recurrence_checks(
        ctx,
        weight_max,
        depth_max,
        RankMode::Exact,
    )?);
    checks.extend(decomposition_checks(ctx, weight_max, depth_max)?);
    checks.extend(crosscheck_checks(ctx, weight_max, depth_max, seed)?);
    Ok(VerificationReport::new(weight_max, depth_max, checks))
}
