//! `layer-poisson`: solve and verify polynomial Poisson problems in a layer.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use layer_poisson::basis::Width;
use layer_poisson::dirichlet::f_poly;
use layer_poisson::mixed::{p_poly, q_poly};
use layer_poisson::numcheck::{self, CheckResult};
use layer_poisson::particular::ParticularForm;
use layer_poisson::text::{parse_rational, PolyJson};
use layer_poisson::{parse_poly, solver, BoundaryKind, LayerProblem, Poly, Ring, SolutionReport};
use serde::{Deserialize, Serialize};

#[derive(Parser)]
#[command(
    name = "layer-poisson",
    version,
    about = "Exact polynomial solutions of Δu = P in 0 < y < a"
)]
struct Cli {
    /// Output format.
    #[arg(
        long,
        global = true,
        value_enum,
        env = "LAYER_POISSON_OUTPUT",
        default_value = "plain"
    )]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Output {
    Plain,
    Latex,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a problem and verify the result exactly.
    Solve {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Particular solution used for the reduction (swapped: n = 1 only).
        #[arg(long, value_enum, default_value = "layered")]
        particular: Particular,
    },
    /// Check a candidate solution against a problem.
    Verify {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Candidate solution; may use the symbol `a` for the width.
        #[arg(long)]
        solution: String,
    },
    /// Print the one-dimensional coefficient polynomials in symbolic `a`.
    Tables {
        #[arg(long, value_enum)]
        family: Family,
        /// Highest index m; entries are indexed 2m.
        #[arg(long, default_value_t = 5)]
        max_m: usize,
    },
    /// Run the floating-point cross-checks against the kernel integrals.
    Numcheck,
}

#[derive(Args)]
struct ProblemArgs {
    /// JSON problem file: {"n", "a", "kind", "rhs", "lower", "upper"}.
    #[arg(long, conflicts_with_all = ["dim", "width", "kind", "rhs", "lower", "upper"])]
    problem: Option<PathBuf>,
    #[arg(long)]
    dim: Option<usize>,
    /// Layer width as an integer or fraction "p/q".
    #[arg(long)]
    width: Option<String>,
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    #[arg(long, default_value = "0")]
    rhs: String,
    /// Value on y = 0.
    #[arg(long, default_value = "0")]
    lower: String,
    /// Value (dirichlet) or normal derivative (mixed) on y = a.
    #[arg(long, default_value = "0")]
    upper: String,
}

#[derive(Clone, Copy, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Kind {
    Dirichlet,
    Mixed,
}

#[derive(Clone, Copy, ValueEnum)]
enum Particular {
    Layered,
    Swapped,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    F,
    P,
    Q,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemSpecFile {
    n: usize,
    a: String,
    kind: Kind,
    #[serde(default = "zero_expr")]
    rhs: String,
    #[serde(default = "zero_expr")]
    lower: String,
    #[serde(default = "zero_expr")]
    upper: String,
}

fn zero_expr() -> String {
    "0".into()
}

/// Bad input, as opposed to a problem that was read but failed.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn parse_in(label: &str, src: &str, ring: Ring) -> anyhow::Result<Poly> {
    parse_poly(src, ring).map_err(|e| usage(format!("{label}: {e} in {src:?}")))
}

impl ProblemArgs {
    fn load(&self) -> anyhow::Result<LayerProblem> {
        let file = match &self.problem {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                serde_json::from_str(&text)
                    .map_err(|e| usage(format!("{}: {e}", path.display())))?
            }
            None => ProblemSpecFile {
                n: self
                    .dim
                    .ok_or_else(|| usage("--dim or --problem is required"))?,
                a: self
                    .width
                    .clone()
                    .ok_or_else(|| usage("--width is required"))?,
                kind: self.kind.ok_or_else(|| usage("--kind is required"))?,
                rhs: self.rhs.clone(),
                lower: self.lower.clone(),
                upper: self.upper.clone(),
            },
        };
        let a = parse_rational(file.a.trim()).map_err(|e| usage(format!("width: {e}")))?;
        Width::value(a.clone()).map_err(|e| usage(e.to_string()))?;
        if file.n == 0 {
            return Err(usage("dimension must be at least 1"));
        }
        let ring = Ring::new(file.n);
        let kind = match file.kind {
            Kind::Dirichlet => BoundaryKind::Dirichlet,
            Kind::Mixed => BoundaryKind::DirichletNeumann,
        };
        LayerProblem::new(
            file.n,
            a,
            parse_in("rhs", &file.rhs, ring)?,
            kind,
            parse_in("lower", &file.lower, ring)?,
            parse_in("upper", &file.upper, ring)?,
        )
        .map_err(|e| usage(e.to_string()))
    }
}

#[derive(Serialize)]
struct ReportJson {
    width: String,
    kind: Kind,
    verified: bool,
    solution: String,
    residual_pde: String,
    residual_lower: String,
    residual_upper: String,
    terms: PolyJson,
}

fn render(poly: &Poly, output: Output) -> String {
    match output {
        Output::Latex => poly.to_latex(),
        _ => poly.to_string(),
    }
}

fn print_report(
    report: &SolutionReport,
    problem: &LayerProblem,
    output: Output,
) -> anyhow::Result<()> {
    match output {
        Output::Json => {
            let kind = match problem.kind() {
                BoundaryKind::Dirichlet => Kind::Dirichlet,
                BoundaryKind::DirichletNeumann => Kind::Mixed,
            };
            let json = ReportJson {
                width: problem.width().to_string(),
                kind,
                verified: report.verified,
                solution: report.u.to_string(),
                residual_pde: report.residual_pde.to_string(),
                residual_lower: report.residual_lower.to_string(),
                residual_upper: report.residual_upper.to_string(),
                terms: report.u.to_json(),
            };
            println!("{}", serde_json::to_string_pretty(&json)?);
        }
        _ => {
            println!("u = {}", render(&report.u, output));
            println!("residual pde: {}", render(&report.residual_pde, output));
            println!("residual y = 0: {}", render(&report.residual_lower, output));
            println!("residual y = a: {}", render(&report.residual_upper, output));
            println!("verified: {}", report.verified);
        }
    }
    Ok(())
}

type TableFn = fn(usize, &Width) -> layer_poisson::Result<Poly>;

fn tables(family: Family, max_m: usize, output: Output) -> anyhow::Result<()> {
    let (name, table): (&str, TableFn) = match family {
        Family::F => ("f", f_poly),
        Family::P => ("p", p_poly),
        Family::Q => ("q", q_poly),
    };
    let rows = (0..=max_m)
        .map(|m| Ok((2 * m, table(m, &Width::Formal)?)))
        .collect::<layer_poisson::Result<Vec<_>>>()?;
    match output {
        Output::Json => {
            let json: Vec<_> = rows
                .iter()
                .map(|(i, p)| {
                    serde_json::json!({ "name": format!("{name}_{i}"), "poly": p.to_string(), "terms": p.to_json() })
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&json)?);
        }
        Output::Latex => {
            for (i, p) in rows {
                println!("{name}_{{{i}}}(y) = {}", p.to_latex());
            }
        }
        Output::Plain => {
            for (i, p) in rows {
                println!("{name}_{i} = {p}");
            }
        }
    }
    Ok(())
}

fn print_checks(checks: &[CheckResult], output: Output) -> anyhow::Result<bool> {
    if let Output::Json = output {
        println!("{}", serde_json::to_string_pretty(checks)?);
    } else {
        for c in checks {
            let status = if c.passed { "ok  " } else { "FAIL" };
            let kind = if c.relative { "rel" } else { "abs" };
            println!(
                "{status} {}: numeric {:.12e}, reference {:.12e}, {kind} error {:.2e} (tol {:.0e})",
                c.name, c.numeric, c.reference, c.error, c.tolerance
            );
        }
    }
    Ok(checks.iter().all(|c| c.passed))
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Solve {
            problem,
            particular,
        } => {
            let problem = problem.load()?;
            let form = match particular {
                Particular::Layered => ParticularForm::Layered,
                Particular::Swapped => ParticularForm::Swapped,
            };
            if matches!(form, ParticularForm::Swapped) && problem.dim() != 1 {
                return Err(usage("--particular swapped requires --dim 1"));
            }
            let report = solver::solve_with(&problem, form)?;
            print_report(&report, &problem, cli.output)?;
            Ok(report.verified)
        }
        Command::Verify { problem, solution } => {
            let problem = problem.load()?;
            let ring = Ring::with_width(problem.dim());
            let candidate = parse_in("solution", &solution, ring)?;
            let report = solver::verify(&candidate, &problem)?;
            print_report(&report, &problem, cli.output)?;
            Ok(report.verified)
        }
        Command::Tables { family, max_m } => {
            tables(family, max_m, cli.output)?;
            Ok(true)
        }
        Command::Numcheck => print_checks(&numcheck::run_all(), cli.output),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.is::<Usage>() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
