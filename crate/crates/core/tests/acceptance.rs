//! Acceptance gate. Prints one line per criterion and exits non-zero if any
//! hard criterion fails. Run with `cargo test -p mdl-core --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mdl_core::harness::{
    brown_checks, cusp_series, decomposition_checks, full_report, recurrence_checks, tasaka_checks,
    Cache, Check, Context, RankMode, Status,
};
use mdl_core::liealg::{
    dg_bracket, enumerate_index_set, ihara_bracket, rho, rho_at_depth, rho_inverse, sigma_bar_word,
    sigma_poly, DepthPoly, NCPoly, SparsePoly,
};
use mdl_core::par::Execution;
use mdl_core::tasaka::build_c;
use mdl_core::Rational;

struct Outcome {
    pass: bool,
    note: String,
}

impl Outcome {
    fn new(pass: bool, note: impl Into<String>) -> Self {
        Outcome {
            pass,
            note: note.into(),
        }
    }
}

fn ctx() -> Context {
    Context::new(Execution::default(), None)
}

fn find<'a>(checks: &'a [Check], name: &str) -> &'a Check {
    checks
        .iter()
        .find(|c| c.name == name)
        .unwrap_or_else(|| panic!("missing check {name}"))
}

fn all_status(checks: &[Check], prefix: &str, want: Status) -> bool {
    checks
        .iter()
        .filter(|c| c.name.starts_with(prefix))
        .all(|c| c.status == want)
}

fn period_dimensions() -> Outcome {
    let ctx = ctx();
    let s = cusp_series(40, 0);
    let mut bad = Vec::new();
    for n in (0..=40u32).step_by(2) {
        let dim = ctx.period_basis(n).unwrap().dim() as i64;
        let target = s.coeff(n as usize, 0).to_integer().to_i64().unwrap();
        if dim != target {
            bad.push((n, dim, target));
        }
    }
    Outcome::new(bad.is_empty(), format!("even N <= 40, mismatches {bad:?}"))
}

fn depth_two_kernel() -> Outcome {
    let checks = tasaka_checks(&ctx(), 30, &[2]).unwrap();
    let c = find(&checks, "tasaka/depth2-kernel");
    Outcome::new(
        c.status == Status::ProvenPass,
        format!("even N <= 30: {}", c.status.as_str()),
    )
}

fn coefficient_identity() -> Outcome {
    let ctx = ctx();
    let mut cells = 0;
    let mut bad = Vec::new();
    for r in 2..=4 {
        for n in 0..=21 {
            if enumerate_index_set(n, r).is_empty() {
                continue;
            }
            cells += 1;
            if ctx.chain_matrix(n, r).unwrap() != build_c(n, r).mat {
                bad.push((n, r));
            }
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!("{cells} matrices, mismatches {bad:?}"),
    )
}

fn eta_identities(checks: &[Check]) -> Outcome {
    let ok = [3, 4].iter().all(|r| {
        find(checks, &format!("tasaka/eta-sum r={r}")).status == Status::ProvenPass
            && find(checks, &format!("tasaka/inclusions r={r}")).status == Status::ProvenPass
    });
    Outcome::new(ok, "r in {3,4}, N <= 23")
}

fn injectivity(checks: &[Check]) -> Outcome {
    let c = find(checks, "tasaka/injective r=3");
    Outcome::new(
        c.status == Status::ProvenPass,
        format!("r = 3, N <= 23: {}", c.status.as_str()),
    )
}

fn brown_series() -> Outcome {
    let checks = brown_checks(&ctx(), 25, 4, RankMode::Exact).unwrap();
    let spots = find(&checks, "brown/spot-ranks").status == Status::ProvenPass;
    let proven = all_status(&checks, "brown/series r=1", Status::ProvenPass)
        && all_status(&checks, "brown/series r=2", Status::ProvenPass);
    let findings: Vec<&str> = checks
        .iter()
        .filter(|c| c.status == Status::Finding)
        .map(|c| c.name.as_str())
        .collect();
    Outcome::new(
        spots && proven,
        format!("r <= 4, N <= 25, findings {findings:?}"),
    )
}

fn recurrence() -> Outcome {
    let checks = recurrence_checks(&ctx(), 25, 4, RankMode::Exact).unwrap();
    let summary: Vec<String> = checks
        .iter()
        .map(|c| format!("{}: {}", c.name, c.status.as_str()))
        .collect();
    let ok = checks.iter().all(|c| c.status != Status::Fail);
    Outcome::new(ok, summary.join(", "))
}

fn decompositions() -> Outcome {
    let checks = decomposition_checks(&ctx(), 21, 4).unwrap();
    let ok = ["a", "b"]
        .iter()
        .all(|p| all_status(&checks, &format!("decomposition/{p}"), Status::ProvenPass));
    let c: Vec<&str> = checks
        .iter()
        .filter(|c| c.name.starts_with("decomposition/c"))
        .map(|c| c.status.as_str())
        .collect();
    Outcome::new(ok, format!("r in {{3,4}}, N <= 21; part (c) {c:?}"))
}

fn random_lie(rng: &mut ChaCha8Rng, weight: usize) -> NCPoly {
    fn build(rng: &mut ChaCha8Rng, weight: usize) -> NCPoly {
        if weight == 1 {
            return if rng.random_bool(0.5) {
                NCPoly::e0()
            } else {
                NCPoly::e1()
            };
        }
        let left = rng.random_range(1..weight);
        build(rng, left).commutator(&build(rng, weight - left))
    }
    let a = build(rng, weight);
    let b = build(rng, weight);
    let c = Rational::from_integer(rng.random_range(-3i64..=3).into());
    a.add_scaled(&b, &c)
}

fn jacobi(a: &NCPoly, b: &NCPoly, c: &NCPoly) -> NCPoly {
    ihara_bracket(a, &ihara_bracket(b, c))
        .add(&ihara_bracket(b, &ihara_bracket(c, a)))
        .add(&ihara_bracket(c, &ihara_bracket(a, b)))
}

fn algebraic_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let minus = Rational::from_integer((-1).into());
    let mut failures = Vec::new();

    for i in 0..100 {
        let (wf, wg) = (rng.random_range(1..=11), rng.random_range(1..=11));
        let (wf, wg) = if wf + wg > 14 {
            (wf.min(7), wg.min(7))
        } else {
            (wf, wg)
        };
        let f = random_lie(&mut rng, wf);
        let g = random_lie(&mut rng, wg);
        let b = ihara_bracket(&f, &g);
        if b != ihara_bracket(&g, &f).scale(&minus) {
            failures.push(format!("antisymmetry #{i}"));
        }
        if let (Some(df), Some(dg), Some(d)) = (f.min_depth(), g.min_depth(), b.min_depth()) {
            if df >= 1 && dg >= 1 && d < df + dg {
                failures.push(format!("depth filtration #{i}"));
            }
        }
    }
    for i in 0..100 {
        let wa = rng.random_range(1..=9);
        let wb = rng.random_range(1..=(10 - wa));
        let wc = rng.random_range(1..=(11 - wa - wb));
        let (a, b, c) = (
            random_lie(&mut rng, wa),
            random_lie(&mut rng, wb),
            random_lie(&mut rng, wc),
        );
        if !jacobi(&a, &b, &c).is_zero() {
            failures.push(format!("jacobi #{i}"));
        }
    }
    for i in 0..100 {
        let depth = rng.random_range(0..=4usize);
        let mut p = SparsePoly::zero(depth + 1);
        for _ in 0..rng.random_range(1..8) {
            let exps: Vec<u32> = (0..=depth).map(|_| rng.random_range(0..4)).collect();
            p.add_term(
                exps,
                Rational::from_integer(rng.random_range(-5i64..=5).into()),
            );
        }
        let q = DepthPoly::from_poly(p);
        let back = if q.is_zero() {
            q.clone()
        } else {
            rho(&rho_inverse(&q)).unwrap()
        };
        if back != q || rho_at_depth(&rho_inverse(&q), depth).unwrap() != q {
            failures.push(format!("rho round trip #{i}"));
        }
    }
    for m in (3..=11).step_by(2) {
        for n in (3..=11).step_by(2) {
            let b = ihara_bracket(&sigma_bar_word(m).unwrap(), &sigma_bar_word(n).unwrap());
            let lhs = rho_at_depth(&b.depth_part(2), 2).unwrap();
            let rhs = dg_bracket(&sigma_poly(m).unwrap(), &sigma_poly(n).unwrap()).unwrap();
            if lhs != rhs {
                failures.push(format!("leading depth ({m},{n})"));
            }
        }
    }
    Outcome::new(failures.is_empty(), format!("failures {failures:?}"))
}

fn determinism() -> Outcome {
    let run = |dir: &std::path::Path| {
        let ctx = Context::new(Execution::default(), Some(Cache::open(dir).unwrap()));
        let json = full_report(&ctx, 25, 4, 1).unwrap().to_json_string();
        (json, ctx.counters())
    };
    let (d1, d2) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let (a, cold) = run(d1.path());
    let (b, _) = run(d2.path());
    let (c, warm) = run(d1.path());
    let ok = a == b && a == c && warm.matrix_builds == 0 && warm.basis_builds == 0;
    Outcome::new(
        ok,
        format!(
            "{} bytes; cold builds {}+{}, warm builds {}+{}, warm hits {}",
            a.len(),
            cold.matrix_builds,
            cold.basis_builds,
            warm.matrix_builds,
            warm.basis_builds,
            warm.cache_hits
        ),
    )
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |id: u32, title: &str, limit: Option<u64>, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let out = f();
        let took = start.elapsed();
        let in_time = limit.is_none_or(|s| took <= Duration::from_secs(s));
        let pass = out.pass && in_time;
        if !pass {
            failed += 1;
        }
        let budget = limit.map(|s| format!(" (limit {s}s)")).unwrap_or_default();
        println!(
            "[{}] {id:>2} {title}: {} [{:.2}s{budget}]",
            if pass { "PASS" } else { "FAIL" },
            out.note,
            took.as_secs_f64()
        );
    };

    report(
        1,
        "period polynomial dimensions",
        Some(5),
        &mut period_dimensions,
    );
    report(2, "depth-two kernel", Some(10), &mut depth_two_kernel);
    report(
        3,
        "coefficient identity",
        Some(60),
        &mut coefficient_identity,
    );
    let mut tasaka = Vec::new();
    report(4, "eta~ + eta = 0 and inclusions", Some(60), &mut || {
        tasaka = tasaka_checks(&ctx(), 23, &[3, 4]).unwrap();
        eta_identities(&tasaka)
    });
    report(5, "injectivity at depth three", None, &mut || {
        injectivity(&tasaka)
    });
    report(6, "series agreement", None, &mut brown_series);
    report(7, "series recurrence", None, &mut recurrence);
    report(8, "kernel decompositions", None, &mut decompositions);
    report(
        9,
        "algebraic properties",
        Some(30),
        &mut algebraic_properties,
    );
    report(10, "determinism and cache", None, &mut determinism);

    if failed == 0 {
        println!("acceptance: all 10 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
