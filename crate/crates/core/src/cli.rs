//! Command-line front end. `run` takes the argument list and a writer so
//! it can be driven from tests; the binary is a thin wrapper around it.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::basis::BasisKind;
use crate::cache::MatrixCache;
use crate::complex::Model;
use crate::error::{Error, Result};
use crate::homology::{
    betti_table, chain_dims, corank_closed, corank_computed, corank_poisson_product, corank_recursive, BettiOptions,
    BettiTable,
};
use crate::linalg::RankPolicy;
use crate::verify::{self, Suite};

#[derive(Parser, Debug)]
#[command(name = "hamtorus", version, about = "Weight-graded homology of Hamiltonian vector fields on tori")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimensions of the chain spaces C_{w,m}.
    Dims(JobArgs),
    /// Dimensions, kernel dimensions and Betti numbers.
    Betti(JobArgs),
    /// First Betti numbers, computed and from formulas.
    Corank {
        #[command(flatten)]
        job: JobArgs,
        #[arg(long, value_enum, default_value_t = CorankMethod::All)]
        method: CorankMethod,
    },
    /// Run a self-check suite; exits nonzero if any check fails.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[arg(long, value_enum, default_value_t = RankArg::Fast)]
        rank: RankArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        no_cache: bool,
    },
}

#[derive(Args, Debug, Clone)]
pub struct JobArgs {
    /// Symplectic torus of dimension N.
    #[arg(long, value_name = "N", group = "model")]
    pub torus: Option<usize>,
    /// Polynomials on the symplectic R^N.
    #[arg(long, value_name = "N", group = "model")]
    pub euclidean: Option<usize>,
    /// Torus T^N whose Poisson tensor pairs only the first 2M coordinates.
    #[arg(long, value_name = "N:M", group = "model")]
    pub degenerate: Option<String>,
    #[arg(long, value_enum)]
    pub basis: Option<BasisArg>,
    /// Inclusive weight range `A..B`, or a single weight.
    #[arg(long, default_value = "1..6", allow_hyphen_values = true)]
    pub weights: String,
    /// Largest chain degree shown (defaults to every nonzero degree).
    #[arg(long, value_name = "M")]
    pub max_degree: Option<usize>,
    #[arg(long, value_enum, default_value_t = RankArg::Fast)]
    pub rank: RankArg,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Skip rank computations whose smaller matrix side exceeds this.
    #[arg(long, value_name = "SIDE", conflicts_with = "no_budget")]
    pub budget: Option<usize>,
    /// Compute ranks of arbitrarily large matrices.
    #[arg(long)]
    pub no_budget: bool,
    /// Neither read nor write the matrix cache.
    #[arg(long)]
    pub no_cache: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisArg {
    Product,
    Fourier,
    Polynomial,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankArg {
    Fast,
    Exact,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorankMethod {
    Compute,
    Recursive,
    Closed,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteArg {
    #[value(name = "t2-tables")]
    T2Tables,
    #[value(name = "t4-tables")]
    T4Tables,
    Formulas,
    Brackets,
    Ddzero,
    Bases,
    #[value(name = "poisson-degenerate")]
    PoissonDegenerate,
    All,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::T2Tables => vec![Suite::T2Tables],
            SuiteArg::T4Tables => vec![Suite::T4Tables],
            SuiteArg::Formulas => vec![Suite::Formulas],
            SuiteArg::Brackets => vec![Suite::Brackets],
            SuiteArg::Ddzero => vec![Suite::DdZero],
            SuiteArg::Bases => vec![Suite::Bases],
            SuiteArg::PoissonDegenerate => vec![Suite::PoissonDegenerate],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }
}

impl From<RankArg> for RankPolicy {
    fn from(r: RankArg) -> Self {
        match r {
            RankArg::Fast => RankPolicy::Fast,
            RankArg::Exact => RankPolicy::Exact,
        }
    }
}

/// Parses `A..B` (inclusive) or a single integer.
pub fn parse_weights(s: &str) -> Result<Vec<i64>> {
    let bad = || Error::InvalidArgument(format!("weights must look like `A..B` or `W`, got `{s}`"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse::<i64>().map_err(|_| bad())?, b.trim().parse::<i64>().map_err(|_| bad())?),
        None => {
            let w = s.trim().parse::<i64>().map_err(|_| bad())?;
            (w, w)
        }
    };
    Ok((a..=b).collect())
}

impl JobArgs {
    pub fn model(&self) -> Result<Model> {
        let basis = self.basis.map(|b| match b {
            BasisArg::Product => BasisKind::Product,
            BasisArg::Fourier => BasisKind::Fourier,
            BasisArg::Polynomial => BasisKind::Polynomial,
        });
        match (self.torus, self.euclidean, &self.degenerate) {
            (Some(n), None, None) => Model::torus(n, basis.unwrap_or(BasisKind::Product)),
            (None, Some(n), None) => match basis {
                None | Some(BasisKind::Polynomial) => Model::euclidean(n),
                Some(other) => Err(Error::WrongKind { expected: BasisKind::Polynomial, got: other }),
            },
            (None, None, Some(arg)) => {
                let parsed = arg.split_once(':').and_then(|(n, m)| Some((n.parse().ok()?, m.parse().ok()?)));
                let (n, m) = parsed
                    .ok_or_else(|| Error::InvalidArgument(format!("--degenerate expects N:M, got `{arg}`")))?;
                Model::degenerate_torus(n, m, basis.unwrap_or(BasisKind::Product))
            }
            _ => Err(Error::InvalidArgument("choose one of --torus, --euclidean, --degenerate".into())),
        }
    }

    fn options(&self) -> BettiOptions {
        BettiOptions {
            policy: self.rank.into(),
            seed: self.seed,
            budget: if self.no_budget { None } else { self.budget.or(BettiOptions::default().budget) },
        }
    }

    fn cache(&self) -> Option<MatrixCache> {
        (!self.no_cache).then(MatrixCache::from_env)
    }

    fn max_degree(&self, model: &Model, w: i64) -> usize {
        let top = model.max_chain_degree(w);
        self.max_degree.map_or(top, |m| m.min(top))
    }
}

fn model_json(model: &Model) -> Value {
    json!({
        "space": if model.kind.is_torus() { "torus" } else { "euclidean" },
        "n": model.n(),
        "basis": model.kind,
        "poisson_rank": model.pi.rank(),
        "label": model.to_string(),
    })
}

fn render_grid(out: &mut String, header: &str, rows: &[(&str, Vec<String>)]) {
    let cols = rows.iter().map(|r| r.1.len()).max().unwrap_or(0);
    let label_w = rows.iter().map(|r| r.0.len()).max().unwrap_or(0).max(1);
    let mut widths = vec![1; cols];
    for (_, cells) in rows {
        for (i, c) in cells.iter().enumerate() {
            widths[i] = widths[i].max(c.len());
        }
    }
    out.push_str(header);
    out.push('\n');
    for (label, cells) in rows {
        out.push_str(&format!("{label:<label_w$}"));
        for (i, c) in cells.iter().enumerate() {
            out.push_str(&format!("  {c:>width$}", width = widths[i]));
        }
        out.push('\n');
    }
}

fn opt_str(v: Option<usize>) -> String {
    v.map_or_else(|| "skipped".to_string(), |x| x.to_string())
}

fn cmd_dims(job: &JobArgs) -> Result<String> {
    let model = job.model()?;
    let weights = parse_weights(&job.weights)?;
    let dims: Vec<(i64, Vec<usize>)> = weights
        .par_iter()
        .map(|&w| {
            let top = job.max_degree(&model, w);
            let d = if top == 0 { Vec::new() } else { chain_dims(w, model, top)? };
            Ok((w, d))
        })
        .collect::<Result<_>>()?;
    let mut s = String::new();
    match job.format {
        Format::Table => {
            s.push_str(&format!("{model}\n"));
            for (w, d) in &dims {
                let m_row = (1..=d.len()).map(|m| m.to_string()).collect();
                let d_row = d.iter().map(|x| x.to_string()).collect();
                render_grid(&mut s, &format!("w={w}"), &[("m", m_row), ("dim", d_row)]);
            }
        }
        Format::Csv => {
            s.push_str("w,m,dim\n");
            for (w, d) in &dims {
                for (i, x) in d.iter().enumerate() {
                    s.push_str(&format!("{w},{},{x}\n", i + 1));
                }
            }
        }
        Format::Json => {
            let cells: Vec<Value> = dims
                .iter()
                .flat_map(|(w, d)| d.iter().enumerate().map(move |(i, x)| json!({"w": w, "m": i + 1, "dim": x})))
                .collect();
            let v = json!({"model": model_json(&model), "cells": cells, "coranks": []});
            s.push_str(&serde_json::to_string_pretty(&v).expect("json"));
            s.push('\n');
        }
    }
    Ok(s)
}

fn cmd_betti(job: &JobArgs) -> Result<String> {
    let model = job.model()?;
    let weights = parse_weights(&job.weights)?;
    let opts = job.options();
    let cache = job.cache();
    let tables: Vec<BettiTable> = weights
        .iter()
        .filter(|&&w| job.max_degree(&model, w) > 0)
        .map(|&w| betti_table(w, model, job.max_degree(&model, w), &opts, cache.as_ref()))
        .collect::<Result<_>>()?;
    let mut s = String::new();
    match job.format {
        Format::Table => {
            s.push_str(&format!("{model}\n"));
            for t in &tables {
                let m_row = t.cells.iter().map(|c| c.m.to_string()).collect();
                let dim = t.cells.iter().map(|c| c.dim.to_string()).collect();
                let ker = t.cells.iter().map(|c| opt_str(c.ker)).collect();
                let betti = t.cells.iter().map(|c| opt_str(c.betti)).collect();
                render_grid(&mut s, &format!("w={}", t.w), &[("m", m_row), ("dim", dim), ("ker", ker), ("betti", betti)]);
            }
        }
        Format::Csv => {
            s.push_str("w,m,dim,ker,betti\n");
            for t in &tables {
                for c in &t.cells {
                    s.push_str(&format!("{},{},{},{},{}\n", t.w, c.m, c.dim, opt_str(c.ker), opt_str(c.betti)));
                }
            }
        }
        Format::Json => {
            let cells: Vec<Value> = tables
                .iter()
                .flat_map(|t| {
                    t.cells.iter().map(move |c| {
                        let mut v = json!({"w": t.w, "m": c.m, "dim": c.dim, "ker": c.ker});
                        match c.betti {
                            Some(b) => v["betti"] = json!(b),
                            None => v["skipped"] = json!(true),
                        }
                        v
                    })
                })
                .collect();
            let v = json!({"model": model_json(&model), "cells": cells, "coranks": []});
            s.push_str(&serde_json::to_string_pretty(&v).expect("json"));
            s.push('\n');
        }
    }
    Ok(s)
}

/// Formula value: the recursion/closed forms on symplectic tori, the
/// split-product formula on degenerate tori.
fn corank_formula(model: &Model, w: i64, method: CorankMethod) -> Result<Option<u128>> {
    if !model.kind.is_torus() || w < 0 {
        return Ok(None);
    }
    let (wu, n) = (w as u64, model.n() as u64);
    if !model.pi.is_symplectic() {
        return match method {
            CorankMethod::Recursive => corank_poisson_product(wu, n, model.pi.pairs() as u64).map(Some),
            _ => Ok(None),
        };
    }
    match method {
        CorankMethod::Recursive => corank_recursive(wu, n).map(Some),
        CorankMethod::Closed if w == 0 => Ok(Some(1)),
        CorankMethod::Closed => Ok(corank_closed(wu, n)),
        _ => Ok(None),
    }
}

fn cmd_corank(job: &JobArgs, method: CorankMethod) -> Result<String> {
    let model = job.model()?;
    let weights = parse_weights(&job.weights)?;
    let opts = BettiOptions { budget: None, ..job.options() };
    let cache = job.cache();
    let methods: Vec<CorankMethod> = match method {
        CorankMethod::All => vec![CorankMethod::Compute, CorankMethod::Recursive, CorankMethod::Closed],
        m => vec![m],
    };
    let name = |m: CorankMethod| match m {
        CorankMethod::Compute => "compute",
        CorankMethod::Recursive => "recursive",
        CorankMethod::Closed => "closed",
        CorankMethod::All => "all",
    };
    let mut rows: Vec<(i64, Vec<Option<u128>>)> = Vec::new();
    for &w in &weights {
        let vals = methods
            .iter()
            .map(|&m| match m {
                CorankMethod::Compute => corank_computed(w, model, &opts, cache.as_ref()).map(|v| Some(v as u128)),
                _ => corank_formula(&model, w, m),
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push((w, vals));
    }
    let agree = |vals: &[Option<u128>]| {
        let present: Vec<u128> = vals.iter().flatten().copied().collect();
        present.windows(2).all(|p| p[0] == p[1])
    };
    let cell = |v: &Option<u128>| v.map_or_else(|| "n/a".to_string(), |x| x.to_string());
    let show_agree = methods.len() > 1;
    let mut s = String::new();
    match job.format {
        Format::Table => {
            let mut grid: Vec<(&str, Vec<String>)> =
                vec![("w", rows.iter().map(|(w, _)| w.to_string()).collect())];
            for (i, &m) in methods.iter().enumerate() {
                grid.push((name(m), rows.iter().map(|(_, v)| cell(&v[i])).collect()));
            }
            if show_agree {
                grid.push(("agree", rows.iter().map(|(_, v)| if agree(v) { "yes" } else { "NO" }.to_string()).collect()));
            }
            render_grid(&mut s, &format!("{model}, first Betti numbers"), &grid);
        }
        Format::Csv => {
            let mut header = vec!["w"];
            header.extend(methods.iter().map(|&m| name(m)));
            if show_agree {
                header.push("agree");
            }
            s.push_str(&header.join(","));
            s.push('\n');
            for (w, v) in &rows {
                let mut fields = vec![w.to_string()];
                fields.extend(v.iter().map(cell));
                if show_agree {
                    fields.push(agree(v).to_string());
                }
                s.push_str(&fields.join(","));
                s.push('\n');
            }
        }
        Format::Json => {
            let coranks: Vec<Value> = rows
                .iter()
                .flat_map(|(w, v)| {
                    methods.iter().zip(v).map(move |(&m, x)| json!({"w": w, "method": name(m), "value": x.map(|x| x as u64)}))
                })
                .collect();
            let v = json!({"model": model_json(&model), "cells": [], "coranks": coranks});
            s.push_str(&serde_json::to_string_pretty(&v).expect("json"));
            s.push('\n');
        }
    }
    if show_agree && !rows.iter().all(|(_, v)| agree(v)) {
        s.push_str("warning: methods disagree\n");
    }
    Ok(s)
}

/// Runs the command line `args` (including the program name), writing the
/// result to `out`. Returns the process exit code.
pub fn run<I, T, W>(args: I, out: &mut W, err: &mut W) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    W: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Dims(job) => cmd_dims(job).map(|s| (s, 0)),
        Command::Betti(job) => cmd_betti(job).map(|s| (s, 0)),
        Command::Corank { job, method } => cmd_corank(job, *method).map(|s| (s, 0)),
        Command::Verify { suite, rank, seed, no_cache } => {
            let opts = BettiOptions { policy: (*rank).into(), seed: *seed, ..Default::default() };
            let cache = (!no_cache).then(MatrixCache::from_env);
            suite
                .suites()
                .into_iter()
                .map(|s| verify::run(s, &opts, cache.as_ref()))
                .collect::<Result<Vec<_>>>()
                .map(|reports| {
                    let ok = reports.iter().all(|r| r.passed());
                    let text: Vec<String> = reports.iter().map(|r| r.to_string()).collect();
                    (text.join("\n\n") + "\n", if ok { 0 } else { 1 })
                })
        }
    };
    match result {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
