mod args;
mod config;
mod output;
mod trace;
mod verify;

use args::{parse_complex, parse_direction, parse_kind};
use cesaro::remainder_ops::{finite_sum, remainder_sum, DirectionSpec, SummandKind};
use cesaro::cesaro_core::StripVariable;
use cesaro::special_functions::{hurwitz_zeta, log_gamma, log_gamma_constant_averaged, riemann_zeta};
use cesaro::{CesaroError, Complex64};
use clap::{Parser, Subcommand};
use config::{OutputFormat, Overrides, RunConfig};
use output::{fmt_complex, fmt_full};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_SUITE_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;
const EXIT_NOT_SUMMABLE: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "cesaro", version, about = "Generalized Cesàro summation toolkit")]
struct Cli {
    /// key=value config file (default: $CESARO_CONFIG, then ./cesaro.conf)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Significant digits in human output (15..=17)
    #[arg(long, global = true)]
    precision: Option<usize>,
    /// Truncation k for ln Γ
    #[arg(long, global = true)]
    k: Option<usize>,
    /// Euler–Maclaurin order for ln Γ
    #[arg(long, global = true)]
    order: Option<usize>,
    /// Tolerance override for verify suites
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true, value_parser = parse_format)]
    format: Option<OutputFormat>,
    /// Seed for randomized suites
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Γ(z)
    Gamma {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        z: Complex64,
    },
    /// ζ_H(z₀; s) = Σ_{n≥1} (z₀+n)^(−s)
    Hzeta {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        z0: Complex64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        s: Complex64,
    },
    /// ζ(s)
    Zeta {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        s: Complex64,
    },
    /// Σ_{j=1}^{upper} f(j) for complex upper
    FiniteSum {
        #[arg(long, value_parser = parse_kind)]
        kind: SummandKind,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        upper: Complex64,
    },
    /// Remainder sum of f along the lattice through z₀
    Rsum {
        #[arg(long, value_parser = parse_kind)]
        kind: SummandKind,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        z0: Complex64,
        #[arg(long, value_parser = parse_direction, default_value = "plus")]
        dir: DirectionSpec,
    },
    /// C_{z₀} by Cesàro averaging of the ln Γ p-sum; `--strip parameter`
    /// strips in arc length instead of z and is expected to fail
    LogConstant {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        z0: Complex64,
        #[arg(long, value_parser = parse_strip, default_value = "geometric")]
        strip: StripVariable,
    },
    /// Run a verification suite
    Verify { suite: String },
    /// Partial-sum trace as CSV
    Trace {
        /// staircase, or a summand kind (log, power:<s>, mono:<n>, const:<c>)
        #[arg(long)]
        kind: String,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex, default_value = "0")]
        z0: Complex64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        from: f64,
        #[arg(long, allow_hyphen_values = true)]
        to: f64,
        #[arg(long, default_value_t = 0.25)]
        step: f64,
        /// Staircase width
        #[arg(long, default_value_t = 1e-3)]
        h: f64,
    },
}

fn parse_strip(s: &str) -> Result<StripVariable, String> {
    match s {
        "geometric" => Ok(StripVariable::Geometric),
        "parameter" => Ok(StripVariable::Parameter),
        _ => Err(format!("unknown strip variable {s:?} (geometric, parameter)")),
    }
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse()
}

enum Failure {
    Usage(String),
    Cesaro(CesaroError),
    Suite,
}

impl From<CesaroError> for Failure {
    fn from(e: CesaroError) -> Self {
        Failure::Cesaro(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let flags = Overrides {
        precision: cli.precision,
        k_default: cli.k,
        order_default: cli.order,
        tol: cli.tol,
        output_format: cli.format,
        seed: cli.seed,
    };
    let cfg = match RunConfig::resolve(cli.config.as_deref(), &flags) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(cli.command, &cfg) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Suite) => ExitCode::from(EXIT_SUITE_FAIL),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Cesaro(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CesaroError::NotCesaroSummable(_) => EXIT_NOT_SUMMABLE,
                _ => EXIT_DOMAIN,
            })
        }
    }
}

fn run(cmd: Command, cfg: &RunConfig) -> Result<String, Failure> {
    match cmd {
        Command::Gamma { z } => {
            if z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 {
                return Err(Failure::Cesaro(CesaroError::Pole(format!("Γ has a pole at z = {}", z.re))));
            }
            let g = log_gamma(z - 1.0, cfg.k_default, cfg.order_default)?;
            Ok(value_output(cfg, "gamma", g.value, None))
        }
        Command::Hzeta { z0, s } => {
            let h = hurwitz_zeta(z0, s)?;
            Ok(value_output(cfg, "hzeta", h.value, None))
        }
        Command::Zeta { s } => Ok(value_output(cfg, "zeta", riemann_zeta(s)?, None)),
        Command::FiniteSum { kind, upper } => Ok(value_output(cfg, "finite-sum", finite_sum(kind, upper)?, None)),
        Command::Rsum { kind, z0, dir } => {
            let o = remainder_sum(kind, z0, dir)?;
            Ok(value_output(cfg, "rsum", o.limit, Some(o.tail_estimate)))
        }
        Command::LogConstant { z0, strip } => {
            let o = log_gamma_constant_averaged(z0, strip)?;
            Ok(value_output(cfg, "log-constant", o.limit, Some(o.tail_estimate)))
        }
        Command::Verify { suite } => verify_output(cfg, &suite),
        Command::Trace { kind, z0, from, to, step, h } => {
            if !(from >= 0.0 && to > from && to.is_finite()) {
                return Err(Failure::Usage(format!("trace range needs to > from ≥ 0, got [{from}, {to}]")));
            }
            if !(step > 0.0 && step.is_finite()) {
                return Err(Failure::Usage(format!("step must be positive, got {step}")));
            }
            let source = if kind == "staircase" {
                trace::TraceSource::Staircase { h }
            } else {
                trace::TraceSource::Summand { kind: parse_kind(&kind).map_err(Failure::Usage)?, z0 }
            };
            Ok(trace::render(&source, from, to, step)?)
        }
    }
}

fn value_output(cfg: &RunConfig, command: &str, v: Complex64, tail: Option<f64>) -> String {
    match cfg.output_format {
        OutputFormat::Human => {
            let mut s = fmt_complex(v, cfg.precision);
            if let Some(t) = tail {
                s.push_str(&format!("\ntail_estimate {t:.3e}"));
            }
            s + "\n"
        }
        OutputFormat::Json => {
            let row = json!({ "command": command, "re": v.re, "im": v.im, "tail_estimate": tail });
            format!("{row}\n")
        }
        OutputFormat::Csv => {
            let tail = tail.map(fmt_full).unwrap_or_default();
            format!("re,im,tail_estimate\n{},{},{tail}\n", fmt_full(v.re), fmt_full(v.im))
        }
    }
}

fn verify_output(cfg: &RunConfig, suite: &str) -> Result<String, Failure> {
    let rows = verify::run_suite(suite, cfg.seed, cfg.tol).ok_or_else(|| {
        Failure::Usage(format!("unknown suite {suite:?}; known: {}", verify::SUITES.join(", ")))
    })?;
    let mut out = String::new();
    match cfg.output_format {
        OutputFormat::Human => {
            for r in &rows {
                let res = r.residual.map(|x| format!("{x:.3e}")).unwrap_or_else(|| "error".into());
                let verdict = if r.pass { "PASS" } else { "FAIL" };
                out.push_str(&format!("{:<28} {res:>10}  tol {:.0e}  {verdict}\n", r.case, r.tol));
            }
            let passed = rows.iter().filter(|r| r.pass).count();
            out.push_str(&format!("{suite}: {passed}/{} passed\n", rows.len()));
        }
        OutputFormat::Json => {
            for r in &rows {
                out.push_str(&serde_json::to_string(r).expect("row serializes"));
                out.push('\n');
            }
        }
        OutputFormat::Csv => {
            out.push_str("suite,case,residual,tol,pass\n");
            for r in &rows {
                let res = r.residual.map(fmt_full).unwrap_or_default();
                out.push_str(&format!("{},{},{res},{},{}\n", r.suite, r.case, fmt_full(r.tol), r.pass));
            }
        }
    }
    if rows.iter().all(|r| r.pass) {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Suite)
    }
}
