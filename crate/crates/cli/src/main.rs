//! `mdl`: exact computations with Tasaka's matrices, period polynomials and
//! the depth-graded motivic Lie algebra.

mod expr;
mod render;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mdl_core::exactlin::{format_pq, left_kernel_basis};
use mdl_core::harness::{
    brown_checks, crosscheck_checks, decomposition_checks, full_report, hilbert_target, rank_table,
    recurrence_checks, tasaka_checks, Cache, Context, RankMode, VerificationReport, CACHE_ENV,
};
use mdl_core::liealg::{compose_sigma_chain, enumerate_index_set, IndexTuple};
use mdl_core::par::Execution;
use mdl_core::tasaka::{MatrixKind, TasakaMatrix};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] mdl_core::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

#[derive(Parser, Debug)]
#[command(
    name = "mdl",
    version,
    about = "Exact linear algebra for depth-graded motivic Lie algebra computations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Cache directory for matrices, bases and ranks.
    #[arg(long, global = true, env = CACHE_ENV, default_value = ".mdl-cache")]
    cache_dir: PathBuf,

    /// Compute everything afresh without reading or writing the cache.
    #[arg(long, global = true)]
    no_cache: bool,

    /// Run single-threaded.
    #[arg(long, global = true)]
    sequential: bool,

    /// Seed for the choice of primes in modular rank computations.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    /// E^(k)_{N,r}; k defaults to r, giving E_{N,r}.
    #[value(name = "E")]
    E,
    /// C_{N,r} = E^(2) E^(3) ... E^(r).
    #[value(name = "C")]
    C,
    /// The matrix of eta~: delta(m_1; n_1) e(m_2..m_r; n_2..n_r).
    #[value(name = "eta-tilde")]
    EtaTilde,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Modular,
    Auto,
}

#[derive(Args, Debug, Clone, Copy)]
struct Cell {
    /// Weight N.
    #[arg(short = 'N', long)]
    weight: u32,
    /// Depth r.
    #[arg(short = 'r', long)]
    depth: usize,
}

#[derive(Args, Debug, Clone, Copy)]
struct MatrixSpec {
    #[arg(long, value_enum)]
    kind: Kind,
    #[command(flatten)]
    cell: Cell,
    /// Level k of E^(k)_{N,r}, 2 <= k <= r.
    #[arg(long)]
    level: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit E^(k)_{N,r}, C_{N,r} or the eta~ matrix, rows and columns indexed
    /// by S_{N,r} (odd parts >= 3 summing to N) in lexicographic order,
    /// acting on row vectors.
    Matrix(MatrixSpec),
    /// rank C_{N,r} for one cell, or the table over N <= --weight-max,
    /// r <= --depth-max compared with 1/(1 - O(x)y + S(x)y^2).
    Rank {
        #[arg(short = 'N', long, requires = "depth")]
        weight: Option<u32>,
        #[arg(short = 'r', long)]
        depth: Option<usize>,
        #[arg(long, default_value_t = 25)]
        weight_max: u32,
        #[arg(long, default_value_t = 4)]
        depth_max: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
    },
    /// Bases of the restricted even period polynomials P_N, of W_{N,r}
    /// (as pi(W_{N,r}) in S_{N,r} coordinates), or of a left kernel.
    Basis {
        #[command(subcommand)]
        which: BasisCmd,
    },
    /// Run a verification section and print a check table; writes the JSON
    /// report with --report. Exit status 1 if a proven statement fails.
    Verify {
        #[arg(value_enum)]
        section: Section,
        #[arg(long, default_value_t = 25)]
        weight_max: u32,
        #[arg(long, default_value_t = 4)]
        depth_max: usize,
        /// Restrict the eta checks to this depth.
        #[arg(short = 'r', long)]
        depth: Option<usize>,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Coefficients of 1/(1 - O(x)y + S(x)y^2), O(x) = x^3/(1-x^2),
    /// S(x) = x^12/((1-x^4)(1-x^6)).
    Hilbert {
        #[arg(long, default_value_t = 25)]
        weight_max: u32,
        #[arg(long, default_value_t = 4)]
        depth_max: usize,
    },
    /// Evaluate an expression in the depth-one generators, e.g.
    /// `{s3,s5} - 2*{s5,s7}`: Ihara bracket {f,g} = [f,g] + D_f(g) - D_g(f)
    /// on sigma-bar_m = (ad e0)^{m-1}(e1), or the depth-graded bracket
    /// on sigma_m = (y1 - y0)^{m-1}.
    Bracket {
        expr: String,
        #[arg(long, value_enum, default_value_t = BracketKind::Ihara)]
        kind: BracketKind,
    },
    /// sigma_{m_1} o (sigma_{m_2} o (... o sigma_{m_r})) in polynomial
    /// representation, e.g. `compose 3,5,7`.
    Compose { tuple: String },
}

#[derive(Subcommand, Debug)]
enum BasisCmd {
    /// Period polynomials: p(x1,0) = 0, even in each variable,
    /// p(x1,x2) + p(x1-x2,x1) - p(x1-x2,x2) = 0.
    Period {
        #[arg(short = 'N', long)]
        weight: u32,
    },
    /// pi(W_{N,r}).
    W(Cell),
    /// Left kernel {a : a M = 0} of a matrix.
    Kernel(MatrixSpec),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Section {
    /// eta: pi(W_{N,r}) -> Ker E_{N,r}, period dimensions, depth-two kernel.
    Tasaka,
    /// rank C_{N,r} against the series coefficients.
    Brown,
    /// The series recurrence on the rank table.
    Recurrence,
    /// Kernel splittings of C_{N,r}.
    Decomposition,
    /// Chain coefficients, modular ranks, series identity, brackets.
    Crosscheck,
    /// Every section.
    All,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum BracketKind {
    Ihara,
    Dg,
}

struct Run {
    ctx: Context,
    format: Format,
    seed: u64,
}

impl Run {
    fn mode(&self, m: Mode) -> RankMode {
        match m {
            Mode::Exact => RankMode::Exact,
            Mode::Modular => RankMode::Modular { seed: self.seed },
            Mode::Auto => RankMode::Auto { seed: self.seed },
        }
    }

    fn matrix(&self, spec: &MatrixSpec) -> Result<TasakaMatrix, CliError> {
        let Cell { weight, depth } = spec.cell;
        if spec.level.is_some() && spec.kind != Kind::E {
            return Err(CliError::Usage("--level only applies to --kind E".into()));
        }
        Ok(match spec.kind {
            Kind::E => self
                .ctx
                .e_matrix(weight, depth, spec.level.unwrap_or(depth))?,
            Kind::C => self.ctx.c_matrix(weight, depth)?,
            Kind::EtaTilde => self.ctx.eta_tilde_matrix(weight, depth)?,
        })
    }
}

fn emit(out: &mut impl Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn csv_unsupported(what: &str) -> CliError {
    CliError::Usage(format!("--format csv is not available for {what}"))
}

fn run(cli: Cli, out: &mut impl Write) -> Result<bool, CliError> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let cache = if cli.no_cache {
        None
    } else {
        Some(Cache::open(&cli.cache_dir)?)
    };
    let r = Run {
        ctx: Context::new(exec, cache),
        format: cli.format,
        seed: cli.seed,
    };
    let fmt = r.format;
    match cli.command {
        Command::Matrix(spec) => {
            let m = r.matrix(&spec)?;
            let text = match fmt {
                Format::Json => m.to_record().to_json() + "\n",
                Format::Table => render::matrix_table(&m.index, &m.mat),
                Format::Csv => render::matrix_csv(&m.index, &m.mat),
            };
            emit(out, &text)?;
        }
        Command::Rank {
            weight,
            depth,
            weight_max,
            depth_max,
            mode,
        } => {
            let mode = r.mode(mode);
            if let (Some(n), Some(d)) = (weight, depth) {
                if enumerate_index_set(n, d).is_empty() {
                    return Err(CliError::Usage(format!("S_{{{n},{d}}} is empty")));
                }
                let e = r.ctx.rank_c(n, d, mode)?;
                let text = match fmt {
                    Format::Json => pretty(
                        &json!({"N": n, "r": d, "size": e.size, "rank": e.rank, "certificate": e.certificate}),
                    ),
                    Format::Csv => format!("N,r,size,rank\n{n},{d},{},{}\n", e.size, e.rank),
                    Format::Table => format!("rank C_{{{n},{d}}} = {} (size {})\n", e.rank, e.size),
                };
                emit(out, &text)?;
            } else {
                let t = rank_table(&r.ctx, weight_max, depth_max, mode)?;
                let text = match fmt {
                    Format::Json => pretty(&t.to_json()),
                    Format::Csv => t.to_csv(),
                    Format::Table => t.to_csv().replace(',', "\t"),
                };
                emit(out, &text)?;
            }
        }
        Command::Basis { which } => basis(&r, which, out)?,
        Command::Verify {
            section,
            weight_max,
            depth_max,
            depth,
            mode,
            report,
        } => {
            if fmt == Format::Csv {
                return Err(csv_unsupported("verify"));
            }
            let mode = r.mode(mode);
            let ctx = &r.ctx;
            let rep = match section {
                Section::Tasaka => {
                    let depths: Vec<usize> = match depth {
                        Some(d) => vec![d],
                        None => (2..=depth_max).collect(),
                    };
                    let dm = depths.iter().copied().max().unwrap_or(depth_max);
                    VerificationReport::new(
                        weight_max,
                        dm,
                        tasaka_checks(ctx, weight_max, &depths)?,
                    )
                }
                Section::Brown => VerificationReport::new(
                    weight_max,
                    depth_max,
                    brown_checks(ctx, weight_max, depth_max, mode)?,
                ),
                Section::Recurrence => VerificationReport::new(
                    weight_max,
                    depth_max,
                    recurrence_checks(ctx, weight_max, depth_max, mode)?,
                ),
                Section::Decomposition => VerificationReport::new(
                    weight_max,
                    depth_max,
                    decomposition_checks(ctx, weight_max, depth_max)?,
                ),
                Section::Crosscheck => VerificationReport::new(
                    weight_max,
                    depth_max,
                    crosscheck_checks(ctx, weight_max, depth_max, r.seed)?,
                ),
                Section::All => full_report(ctx, weight_max, depth_max, r.seed)?,
            };
            let json = rep.to_json_string();
            if let Some(path) = report {
                fs::write(path, &json)?;
            }
            emit(
                out,
                &if fmt == Format::Json {
                    json
                } else {
                    rep.render_table()
                },
            )?;
            return Ok(!rep.has_proven_failure());
        }
        Command::Hilbert {
            weight_max,
            depth_max,
        } => {
            let h = hilbert_target(weight_max as usize, depth_max);
            let mut rows = Vec::new();
            for d in 0..=depth_max {
                for n in 0..=weight_max as usize {
                    let c = h.coeff(n, d);
                    if !num_traits::Zero::is_zero(&c) {
                        rows.push((n, d, c));
                    }
                }
            }
            let text = match fmt {
                Format::Json => pretty(&Value::Array(
                    rows.iter()
                        .map(|(n, d, c)| json!({"N": n, "r": d, "coeff": format_pq(c)}))
                        .collect(),
                )),
                Format::Csv | Format::Table => {
                    let sep = if fmt == Format::Csv { "," } else { "\t" };
                    let mut s = ["N", "r", "coeff"].join(sep) + "\n";
                    for (n, d, c) in &rows {
                        s += &format!("{n}{sep}{d}{sep}{}\n", format_pq(c));
                    }
                    s
                }
            };
            emit(out, &text)?;
        }
        Command::Bracket { expr, kind } => {
            if fmt == Format::Csv {
                return Err(csv_unsupported("bracket"));
            }
            let e = expr::parse(&expr)?;
            let text = match (kind, fmt) {
                (BracketKind::Ihara, Format::Json) => {
                    pretty(&render::nc_poly_json(&e.eval_ihara()?))
                }
                (BracketKind::Ihara, _) => render::nc_poly_lines(&e.eval_ihara()?),
                (BracketKind::Dg, Format::Json) => {
                    pretty(&render::depth_poly_json(&e.eval_graded()?))
                }
                (BracketKind::Dg, _) => render::poly_lines(e.eval_graded()?.poly(), "y", 0),
            };
            emit(out, &text)?;
        }
        Command::Compose { tuple } => {
            if fmt == Format::Csv {
                return Err(csv_unsupported("compose"));
            }
            let t = IndexTuple::parse(&tuple).map_err(|e| CliError::Usage(e.to_string()))?;
            let p = compose_sigma_chain(&t);
            let text = match fmt {
                Format::Json => pretty(&render::depth_poly_json(&p)),
                _ => render::poly_lines(p.poly(), "y", 0),
            };
            emit(out, &text)?;
        }
    }
    Ok(true)
}

fn basis(r: &Run, which: BasisCmd, out: &mut impl Write) -> Result<(), CliError> {
    if r.format == Format::Csv {
        return Err(csv_unsupported("basis"));
    }
    match which {
        BasisCmd::Period { weight } => {
            let p = r.ctx.period_basis(weight)?;
            let text = if r.format == Format::Json {
                let polys: Vec<Value> = p
                    .basis
                    .iter()
                    .map(|b| {
                        let terms: serde_json::Map<String, Value> = b
                            .terms()
                            .map(|(e, c)| {
                                (format!("{},{}", e[0], e[1]), Value::String(format_pq(c)))
                            })
                            .collect();
                        Value::Object(terms)
                    })
                    .collect();
                pretty(&json!({"N": weight, "dim": p.dim(), "basis": polys}))
            } else {
                let mut s = format!("dim P_{weight} = {}\n", p.dim());
                for (k, b) in p.basis.iter().enumerate() {
                    s += &format!("[{k}]\n");
                    s += &render::poly_lines(b, "x", 1);
                }
                s
            };
            emit(out, &text)
        }
        BasisCmd::W(Cell { weight, depth }) => {
            let w = r.ctx.w_basis(weight, depth)?;
            let text = if r.format == Format::Json {
                pretty(&json!({"N": weight, "r": depth, "dim": w.dim(), "basis": w.to_json()}))
            } else {
                let vecs: Vec<Vec<String>> = w
                    .coords
                    .iter()
                    .map(|v| v.iter().map(format_pq).collect())
                    .collect();
                format!("dim W_{{{weight},{depth}}} = {}\n", w.dim())
                    + &render::coords_lines(&w.index, &vecs)
            };
            emit(out, &text)
        }
        BasisCmd::Kernel(spec) => {
            let m = r.matrix(&spec)?;
            let ker = left_kernel_basis(&m.mat);
            let vecs: Vec<Vec<String>> = ker
                .iter()
                .map(|v| v.iter().map(format_pq).collect())
                .collect();
            let name = match m.kind {
                MatrixKind::E { level } => format!("E{level}"),
                other => other.name().to_string(),
            };
            let text = if r.format == Format::Json {
                pretty(
                    &json!({"matrix": name, "N": m.weight, "r": m.depth, "dim": ker.dim(), "basis": vecs}),
                )
            } else {
                format!(
                    "dim Ker {name}_{{{},{}}} = {}\n",
                    m.weight,
                    m.depth,
                    ker.dim()
                ) + &render::coords_lines(&m.index, &vecs)
            };
            emit(out, &text)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(cli, &mut lock) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
