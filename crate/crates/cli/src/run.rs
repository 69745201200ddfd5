//! Command-line surface and dispatch.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use glsv_core::lagrange::p_mn;
use glsv_core::oracle::{triangle, TreeKind};
use glsv_core::solver::{m_l_polys, mu_table, solve_lambda, LambdaSpec};
use glsv_core::verdict::all_pass;

use crate::emit::{self, Format};
use crate::parse::parse_lambda;
use crate::suites::{run_suites, Suite, SuiteOptions};

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "glsv",
    version,
    about = "Exact Laurent-polynomial computations for H = t + kΛ(H) and checks of their odd negative powers",
    after_help = "Defaults: --order 10, --lmax min(order, 6), --lambda gls.\n\
                  Exit codes: 0 success, 1 a property check failed, 2 usage or parse error."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print M_1(u), …, M_L(u), u = √(1 - 4λ₂t).
    Ml(CommonArgs),
    /// Print H(t, k) to order N.
    Solve(CommonArgs),
    /// Run verification suites; one JSON verdict per line on stdout.
    Verify(VerifyArgs),
    /// Print the polynomial P_{m,n}(u) of the closed form for Z^r.
    Pmn(PmnArgs),
    /// Count trees by leaves and internal vertices.
    Trees(TreesArgs),
    /// Print μ_l(n) = n! [k^{n-l} t^n] H.
    Mu(CommonArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the result here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Λ: gls, exp, geom, or a list [λ₂, λ₃, …] of rationals.
    #[arg(long, value_parser = parse_lambda, default_value = "gls")]
    pub lambda: LambdaSpec,
    /// Truncation order N (≥ 1).
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
    pub order: u32,
    /// Largest l (1 ≤ L ≤ N); defaults to min(N, 6).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub lmax: Option<u32>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Largest power r for the closed-form and power-sum checks.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
    pub r_max: u32,
}

#[derive(Debug, Clone, Args)]
pub struct PmnArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub m: u64,
    #[arg(long)]
    pub n: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Phylo,
    Ordered,
}

#[derive(Debug, Clone, Args)]
pub struct TreesArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Number of leaves (≥ 1).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=64))]
    pub n: u32,
    /// Only this number of internal vertices.
    #[arg(long)]
    pub i: Option<u32>,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// What a command produced: the document and the exit code.
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, stderr: String::new(), code: EXIT_OK }
    }

    fn usage(msg: String) -> Self {
        Self { stdout: String::new(), stderr: format!("error: {msg}\n"), code: EXIT_USAGE }
    }
}

fn orders(c: &CommonArgs) -> Result<(usize, usize), String> {
    let n = c.order as usize;
    let l = c.lmax.map_or(n.min(6), |l| l as usize);
    if l > n {
        return Err(format!("--lmax {l} exceeds --order {n}"));
    }
    Ok((n, l))
}

pub fn execute(cmd: &Command) -> Outcome {
    match cmd {
        Command::Ml(c) => match orders(c) {
            Ok((n, l)) => Outcome::ok(emit::render_ml(&m_l_polys(&c.lambda, l, n), c.out.format)),
            Err(e) => Outcome::usage(e),
        },
        Command::Solve(c) => match orders(c).map_err(Outcome::usage).and_then(|(n, _)| {
            solve_lambda(&c.lambda, n).map_err(|e| Outcome::usage(e.to_string()))
        }) {
            Ok(h) => Outcome::ok(emit::render_solve(&c.lambda, &h, c.out.format)),
            Err(o) => o,
        },
        Command::Mu(c) => match orders(c).map_err(Outcome::usage).and_then(|(n, l)| {
            mu_table(&c.lambda, l, n).map_err(|e| Outcome::usage(e.to_string()))
        }) {
            Ok(t) => Outcome::ok(emit::render_mu(&t, c.out.format)),
            Err(o) => o,
        },
        Command::Pmn(a) => match p_mn(a.m, a.n) {
            Ok(p) => Outcome::ok(emit::render_pmn(a.m, a.n, &p, a.out.format)),
            Err(e) => Outcome::usage(e.to_string()),
        },
        Command::Trees(a) => {
            let kind = match a.kind {
                Kind::Phylo => TreeKind::Phylo,
                Kind::Ordered => TreeKind::Ordered,
            };
            let n = a.n as usize;
            let mut counts = triangle(kind, n);
            if let Some(i) = a.i {
                counts.retain(|&k, _| k == i as usize);
                counts.entry(i as usize).or_default();
            }
            Outcome::ok(emit::render_trees(kind, n, &counts, a.out.format))
        }
        Command::Verify(v) => verify(v),
    }
}

fn verify(v: &VerifyArgs) -> Outcome {
    let (n, l) = match orders(&v.common) {
        Ok(x) => x,
        Err(e) => return Outcome::usage(e),
    };
    let opts = SuiteOptions { lambda: v.common.lambda.clone(), order: n, l_max: l, r_max: v.r_max as usize };
    let results = run_suites(&v.suite.expand(), &opts);
    let mut stdout = String::new();
    let mut stderr = String::new();
    let mut pass = true;
    for (suite, verdicts) in &results {
        stdout.push_str(&emit::render_verdicts(verdicts));
        let ok = verdicts.iter().filter(|v| v.pass).count();
        stderr.push_str(&format!("{:<14} {ok}/{} passed\n", suite.name(), verdicts.len()));
        pass &= all_pass(verdicts);
    }
    stderr.push_str(if pass { "all checks passed\n" } else { "some checks FAILED\n" });
    Outcome { stdout, stderr, code: if pass { EXIT_OK } else { EXIT_CHECK_FAILED } }
}

fn output_args(cmd: &Command) -> &OutputArgs {
    match cmd {
        Command::Ml(c) | Command::Solve(c) | Command::Mu(c) => &c.out,
        Command::Verify(v) => &v.common.out,
        Command::Pmn(a) => &a.out,
        Command::Trees(a) => &a.out,
    }
}

/// Executes and writes the result; returns the process exit code.
pub fn run(cli: &Cli) -> u8 {
    let outcome = execute(&cli.command);
    eprint!("{}", outcome.stderr);
    let written = match &output_args(&cli.command).output {
        Some(path) => fs::write(path, &outcome.stdout).map_err(|e| format!("{}: {e}", path.display())),
        None => io::stdout().write_all(outcome.stdout.as_bytes()).map_err(|e| e.to_string()),
    };
    match written {
        Ok(()) => outcome.code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> std::result::Result<Cli, clap::Error> {
        Cli::try_parse_from(std::iter::once("glsv").chain(args.iter().copied()))
    }

    #[test]
    fn defaults() {
        let cli = parse(&["ml"]).unwrap();
        let Command::Ml(c) = &cli.command else { panic!() };
        assert_eq!(c.order, 10);
        assert_eq!(orders(c), Ok((10, 6)));
        assert_eq!(c.lambda, LambdaSpec::gls());
        let cli = parse(&["ml", "--order", "3"]).unwrap();
        let Command::Ml(c) = &cli.command else { panic!() };
        assert_eq!(orders(c), Ok((3, 3)));
    }

    #[test]
    fn lmax_above_order_is_usage_error() {
        let cli = parse(&["ml", "--lmax", "5", "--order", "3"]).unwrap();
        assert_eq!(execute(&cli.command).code, EXIT_USAGE);
    }

    #[test]
    fn rejected_arguments() {
        assert!(parse(&["ml", "--order", "0"]).is_err());
        assert!(parse(&["ml", "--lambda", "[0, 1]"]).is_err());
        assert!(parse(&["pmn", "--m", "0", "--n", "2"]).is_err());
        assert!(parse(&["frobnicate"]).is_err());
        assert!(parse(&["ml", "--bogus"]).is_err());
    }

    #[test]
    fn pmn_text() {
        let cli = parse(&["pmn", "--m", "1", "--n", "2"]).unwrap();
        assert_eq!(execute(&cli.command).stdout, "-2*u^-1 + 6 - 6*u + 2*u^2\n");
    }

    #[test]
    fn trees_single_entry() {
        let cli = parse(&["trees", "--kind", "ordered", "--n", "4", "--i", "2"]).unwrap();
        assert_eq!(execute(&cli.command).stdout, "c(4,2) = 5\n");
        let cli = parse(&["trees", "--kind", "phylo", "--n", "4"]).unwrap();
        assert_eq!(execute(&cli.command).stdout, "c(4,0) = 0\nc(4,1) = 1\nc(4,2) = 10\nc(4,3) = 15\n");
    }
}
