//! Command-line front end for the `gadq` library.
//!
//! Four subcommands expose the library: `channel` (single-point JSON
//! report), `sweep` (CSV over damping/excitation grids), `queue`
//! (queue-channel capacity as CSV, or `--optimize` for the best arrival
//! rate as JSON), and `verify` (self-check suites as JSON).
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage/parameter error.
//! All output is locale-independent and byte-identical for identical
//! arguments and seed. `GADQ_THREADS` caps the worker pool.

use clap::{Args, Parser, Subcommand};
use gadq::induced::{bsc_capacity, m2_flip_probability};
use gadq::queue_capacity::{
    mm1_capacity_closed_form, optimize_lambda, queue_capacity_mc, CapacityEstimate,
    DecoherenceModel, LambdaEvaluator,
};
use gadq::queueing::{derive_seed, QueueConfig};
use gadq::report::{channel_sweep, ChannelReport};
use gadq::verify::{run_all, run_suite, suite_names, SuiteResult, VerifyConfig};
use gadq::channel::GadcParams;
use gadq::tolerance::{DEFAULT_BURN_IN, DEFAULT_OPT_TOL, DEFAULT_SAMPLES, DEFAULT_SEED};
use serde_json::json;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "gadq",
    version,
    about = "Capacities of damping channels, their induced classical channels, \
             and queue-channels with waiting-time decoherence"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report every capacity quantity for a single (p, n) channel as JSON.
    Channel(ChannelArgs),
    /// Sweep capacity quantities over (p, n) grids as CSV.
    Sweep(SweepArgs),
    /// Queue-channel capacity over (lambda, kappa) grids as CSV, or
    /// optimise the arrival rate with --optimize (JSON).
    Queue(QueueArgs),
    /// Run self-verification suites and report margins as JSON.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ChannelArgs {
    /// Damping probability in [0, 1].
    #[arg(long)]
    p: f64,
    /// Environment excitation in [0, 1].
    #[arg(long)]
    n: f64,
    /// Extra report of the symmetric encoding at this coordinate z.
    #[arg(long)]
    z: Option<f64>,
    /// Optimisation tolerance.
    #[arg(long, default_value_t = DEFAULT_OPT_TOL)]
    tol: f64,
    /// Output format (this command emits json).
    #[arg(long, default_value = "json")]
    format: String,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Damping axis: a value, a comma list, or start:end:intervals.
    #[arg(long, default_value = "0:1:100")]
    p: String,
    /// Excitation axis: a value, a comma list, or start:end:intervals.
    #[arg(long, default_value = "0.5")]
    n: String,
    /// Optimisation tolerance.
    #[arg(long, default_value_t = DEFAULT_OPT_TOL)]
    tol: f64,
    /// Output format (this command emits csv).
    #[arg(long, default_value = "csv")]
    format: String,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct QueueArgs {
    /// Arrival-rate axis: a value, a comma list, or start:end:intervals.
    #[arg(long, default_value = "0.1:0.9:8")]
    lambda: String,
    /// Service rate.
    #[arg(long, default_value_t = 1.0)]
    mu: f64,
    /// Decoherence-rate axis: a value, a comma list, or start:end:intervals.
    #[arg(long, default_value = "1")]
    kappa: String,
    /// Estimate by Monte Carlo simulation instead of the closed form.
    #[arg(long)]
    mc: bool,
    /// Optimise the arrival rate instead of sweeping it (JSON output).
    #[arg(long)]
    optimize: bool,
    /// Retained samples per simulation.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    /// Warm-up customers discarded per simulation.
    #[arg(long, default_value_t = DEFAULT_BURN_IN)]
    burn_in: usize,
    /// Master seed for all simulations.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Optimisation tolerance (arrival-rate bracket width for --optimize).
    #[arg(long, default_value_t = DEFAULT_OPT_TOL)]
    tol: f64,
    /// Output format (csv for sweeps, json for --optimize).
    #[arg(long)]
    format: Option<String>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run a single suite (core, holevo, induced, queue, capacity,
    /// theorems); all suites when omitted.
    #[arg(long)]
    suite: Option<String>,
    /// Retained samples per simulation-backed check.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    /// Warm-up customers discarded per simulation.
    #[arg(long, default_value_t = DEFAULT_BURN_IN)]
    burn_in: usize,
    /// Master seed for all randomised checks.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Optimisation tolerance for the searches involved.
    #[arg(long, default_value_t = DEFAULT_OPT_TOL)]
    tol: f64,
    /// Output format (this command emits json).
    #[arg(long, default_value = "json")]
    format: String,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let _ = env_logger::Builder::from_default_env().try_init();
    if let Ok(v) = std::env::var("GADQ_THREADS") {
        match v.parse::<usize>() {
            Ok(t) if t >= 1 => {
                gadq::parallel::configure_threads(t);
            }
            _ => {
                eprintln!("error: GADQ_THREADS must be a positive integer, got '{v}'");
                return ExitCode::from(2);
            }
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Channel(args) => cmd_channel(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Queue(args) => cmd_queue(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

// ---------------------------------------------------------------------------
// Axis parsing
// ---------------------------------------------------------------------------

/// Parses an axis given as `value`, `v1,v2,...`, or `start:end:intervals`
/// (yielding `intervals + 1` evenly spaced points).
fn parse_axis(spec: &str) -> Result<Vec<f64>, String> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Err("empty axis specification".into());
    }
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("range must be start:end:intervals, got '{spec}'"));
        }
        let start: f64 = parse_f64(parts[0])?;
        let end: f64 = parse_f64(parts[1])?;
        let n: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| format!("interval count must be a positive integer, got '{}'", parts[2]))?;
        if n == 0 {
            return Err("interval count must be at least 1".into());
        }
        return Ok((0..=n)
            .map(|i| start + (end - start) * i as f64 / n as f64)
            .collect());
    }
    spec.split(',').map(parse_f64).collect()
}

fn parse_f64(s: &str) -> Result<f64, String> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| format!("expected a number, got '{s}'"))
}

fn expect_format(given: &str, required: &str, command: &str) -> Result<(), String> {
    if given == required {
        Ok(())
    } else {
        Err(format!("{command} emits {required} only, got --format {given}"))
    }
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// channel
// ---------------------------------------------------------------------------

fn report_json(rep: &ChannelReport) -> serde_json::Value {
    json!({
        "p": rep.params.p(),
        "n": rep.params.n(),
        "chi": {
            "value": rep.chi.chi,
            "z_star": rep.chi.z_star,
            "method": "grid_golden",
        },
        "chi_fixed_point": rep.chi_fixed.map(|fp| json!({
            "value": fp.chi,
            "z_star": fp.z_star,
            "method": "fixed_point",
            "u": fp.aux.map(|a| a.u),
            "r_star": fp.aux.map(|a| a.r_star),
        })),
        "c_m1": {
            "capacity": rep.c_m1.capacity,
            "optimal_input": rep.c_m1.optimal_input,
        },
        "c_m2": rep.c_m2,
        "delta": rep.delta,
        "entanglement_breaking": rep.entanglement_breaking,
        "p_star": rep.p_star,
    })
}

fn cmd_channel(args: ChannelArgs) -> Result<u8, String> {
    expect_format(&args.format, "json", "channel")?;
    let ch = GadcParams::new(args.p, args.n).map_err(|e| e.to_string())?;
    let rep = ChannelReport::compute(&ch, args.tol);
    let mut doc = report_json(&rep);
    if let Some(z) = args.z {
        if !(-1.0..=1.0).contains(&z) {
            return Err(format!("z must lie in [-1, 1], got {z}"));
        }
        let q = m2_flip_probability(&ch, z);
        doc["m2_at_z"] = json!({
            "z": z,
            "flip_probability": q,
            "capacity": bsc_capacity(q).map_err(|e| e.to_string())?,
        });
    }
    let content = format!("{}\n", serde_json::to_string_pretty(&doc).expect("valid json"));
    write_output(&args.out, &content)?;
    Ok(0)
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

fn cmd_sweep(args: SweepArgs) -> Result<u8, String> {
    expect_format(&args.format, "csv", "sweep")?;
    let ps = parse_axis(&args.p)?;
    let ns = parse_axis(&args.n)?;
    let rows = channel_sweep(&ps, &ns, args.tol).map_err(|e| e.to_string())?;
    let mut csv = String::from("p,n,chi,c_m1,c_m2,delta,ebt\n");
    for r in &rows {
        writeln!(
            csv,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{}",
            r.params.p(),
            r.params.n(),
            r.chi.chi,
            r.c_m1.capacity,
            r.c_m2,
            r.delta,
            r.entanglement_breaking
        )
        .expect("writing to String cannot fail");
    }
    write_output(&args.out, &csv)?;
    Ok(0)
}

// ---------------------------------------------------------------------------
// queue
// ---------------------------------------------------------------------------

fn estimate_at(
    lambda: f64,
    mu: f64,
    kappa: f64,
    args: &QueueArgs,
) -> Result<CapacityEstimate, String> {
    let model = DecoherenceModel::new(kappa).map_err(|e| e.to_string())?;
    if args.mc {
        let cfg = QueueConfig::mm1(lambda, mu).map_err(|e| e.to_string())?;
        let seed = derive_seed(derive_seed(args.seed, lambda.to_bits()), kappa.to_bits());
        queue_capacity_mc(&cfg, &model, args.samples, args.burn_in, seed)
            .map_err(|e| e.to_string())
    } else {
        mm1_capacity_closed_form(lambda, mu, &model, gadq::tolerance::DEFAULT_SERIES_TOL)
            .map_err(|e| e.to_string())
    }
}

fn cmd_queue(args: QueueArgs) -> Result<u8, String> {
    let lambdas = parse_axis(&args.lambda)?;
    let kappas = parse_axis(&args.kappa)?;
    if args.mu <= 0.0 || !args.mu.is_finite() {
        return Err(format!("mu must be positive, got {}", args.mu));
    }
    for &l in &lambdas {
        if l <= 0.0 || l >= args.mu {
            return Err(format!(
                "lambda must satisfy 0 < lambda < mu = {}, got {l}",
                args.mu
            ));
        }
    }
    for &k in &kappas {
        if k <= 0.0 || !k.is_finite() {
            return Err(format!("kappa must be positive, got {k}"));
        }
    }

    if args.optimize {
        if let Some(f) = &args.format {
            expect_format(f, "json", "queue --optimize")?;
        }
        let template = QueueConfig::mm1(args.mu * 0.5, args.mu).map_err(|e| e.to_string())?;
        let evaluator = if args.mc {
            LambdaEvaluator::MonteCarlo {
                template: &template,
                n: args.samples,
                burn_in: args.burn_in,
                seed: args.seed,
            }
        } else {
            LambdaEvaluator::Mm1ClosedForm
        };
        let mut results = Vec::new();
        for &k in &kappas {
            let model = DecoherenceModel::new(k).map_err(|e| e.to_string())?;
            let (l_star, c_star) =
                optimize_lambda(args.mu, &model, &evaluator, args.tol).map_err(|e| e.to_string())?;
            results.push(json!({
                "kappa": k,
                "lambda_star": l_star,
                "capacity_star": c_star,
            }));
        }
        let doc = json!({
            "mu": args.mu,
            "evaluator": evaluator.name(),
            "tolerance": args.tol,
            "results": results,
        });
        let content = format!("{}\n", serde_json::to_string_pretty(&doc).expect("valid json"));
        write_output(&args.out, &content)?;
        return Ok(0);
    }

    if let Some(f) = &args.format {
        expect_format(f, "csv", "queue")?;
    }
    let mut csv = String::from("lambda,kappa,capacity_bits_per_sec,std_err,method\n");
    for &k in &kappas {
        for &l in &lambdas {
            let est = estimate_at(l, args.mu, k, &args)?;
            writeln!(
                csv,
                "{:.16e},{:.16e},{:.16e},{:.16e},{}",
                l,
                k,
                est.value,
                est.std_err,
                est.method.as_str()
            )
            .expect("writing to String cannot fail");
        }
    }
    write_output(&args.out, &csv)?;
    Ok(0)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn suites_json(suites: &[SuiteResult]) -> serde_json::Value {
    json!({
        "passed": suites.iter().all(|s| s.passed()),
        "suites": suites.iter().map(|s| json!({
            "name": s.name,
            "passed": s.passed(),
            "checks": s.checks.iter().map(|c| json!({
                "name": c.name,
                "passed": c.passed,
                "margin": c.margin,
                "detail": c.detail,
            })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, String> {
    expect_format(&args.format, "json", "verify")?;
    let cfg = VerifyConfig {
        samples: args.samples,
        burn_in: args.burn_in,
        seed: args.seed,
        tol: args.tol,
    };
    let suites = match &args.suite {
        Some(name) => vec![run_suite(name, &cfg).map_err(|e| {
            format!("{e}; available suites: {}", suite_names().join(", "))
        })?],
        None => run_all(&cfg).map_err(|e| e.to_string())?,
    };
    let doc = suites_json(&suites);
    let content = format!("{}\n", serde_json::to_string_pretty(&doc).expect("valid json"));
    write_output(&args.out, &content)?;
    Ok(if suites.iter().all(|s| s.passed()) { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::parse_axis;

    #[test]
    fn axis_forms() {
        assert_eq!(parse_axis("0.5").unwrap(), vec![0.5]);
        assert_eq!(parse_axis("0,0.1,0.3").unwrap(), vec![0.0, 0.1, 0.3]);
        let r = parse_axis("0:1:4").unwrap();
        assert_eq!(r, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert!(parse_axis("").is_err());
        assert!(parse_axis("0:1").is_err());
        assert!(parse_axis("0:1:0").is_err());
        assert!(parse_axis("a,b").is_err());
    }

    #[test]
    fn range_endpoints_are_exact() {
        let r = parse_axis("0:1:100").unwrap();
        assert_eq!(r.len(), 101);
        assert_eq!(r[0], 0.0);
        assert_eq!(r[100], 1.0);
    }
}
