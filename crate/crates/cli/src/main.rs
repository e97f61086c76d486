//! `lsum`: command-line front end to lsum-core.
//!
//! JSON goes to standard output and human-readable tables to standard
//! error. Exit status is 0 on success, 1 when a computation or
//! verification fails, and 2 for bad input.

mod parse;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lsum_core::acceptance::{criteria_for_module, run_selected, Thresholds, CRITERIA};
use lsum_core::combo::{eval_f, lemma_disc_check, uniform_log_bound_sample, ComboSpec};
use lsum_core::curve::{
    convexity_check, default_sigma_grid, figure1_samples, imag_axis_crossings, real_axis_crossings, verdict_for_k,
    verdict_sweep,
};
use lsum_core::dirichlet::{eval_l, eval_log_l, Cutoffs, EvalResult};
use lsum_core::fixed_point::{boundary_targets, compute_partition, g_coverage_check};
use lsum_core::zeros::{hunt, EulerCombo, PolishOptions, SeriesFn, ZetaComboEm};
use lsum_core::{Error, Result};
use serde_json::json;

use parse::{load_spec, parse_complex, parse_list, parse_rect, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "lsum", version, about = "Zeros of L(s) + L(2s) + ... + L(Ns) for Re(s) > 1")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Largest prime kept in Euler products and prime sums.
    #[arg(long, global = true, env = "LSUM_PRIME_CUTOFF")]
    prime_cutoff: Option<u64>,
    /// Largest prime power kept per Euler factor.
    #[arg(long, global = true, default_value_t = 48)]
    powers: u32,
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Emit the full JSON report (twist tables, per-criterion results).
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Args, Debug, Clone)]
struct SpecArgs {
    /// zeta, zeta-quarter, char or zeta-power.
    #[arg(long, default_value = "zeta")]
    spec: String,
    #[arg(long)]
    char_file: Option<PathBuf>,
    /// Exponent for --spec zeta-power.
    #[arg(long)]
    k: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate L(s), log L(s) or L(s) + ... + L(Ns).
    Eval {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long = "N", default_value_t = 1)]
        n: u32,
        #[arg(long)]
        combo: bool,
        #[arg(long, conflicts_with = "combo")]
        log: bool,
    },
    /// Disc holding L(2s) + ... + L(Ns), optionally sampled over random twists.
    Lemma {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long = "N")]
        n: u32,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        /// Number of random twist families to sample.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Hunt zeros of L(s) + ... + L(Ns) in a rectangle; one JSON line per zero.
    Zeros {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long = "N", default_value_t = 2)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        rect: String,
        /// Grid points per side of the scan.
        #[arg(long, default_value_t = 64)]
        samples: usize,
        /// Scan candidates need |F| below this.
        #[arg(long, default_value_t = 0.3)]
        threshold: f64,
    },
    /// Image curves of log((z^3 - z)/(z^3 - 1)).
    Curve {
        #[command(subcommand)]
        which: CurveCommand,
    },
    /// Reach of the value region and verdicts for zeta^k(2s) + zeta^k(3s).
    Region {
        /// Comma-separated sigma values; defaults to 1 and 1 + 10^-m, m = 1..6.
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Prime-partition twist construction with a residual table.
    FixedPoint {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 1.1)]
        sigma: f64,
        /// Number of boundary targets.
        #[arg(long, default_value_t = 16)]
        samples: usize,
    },
    /// Run the acceptance criteria.
    Verify {
        /// Module name (dirichlet, combo, zeros, curve, region, fixed-point)
        /// or comma-separated criterion numbers.
        #[arg(long)]
        only: Option<String>,
        #[arg(long, hide = true)]
        lower_reach_target: Option<f64>,
    },
}

#[derive(Subcommand, Debug)]
enum CurveCommand {
    /// CSV samples theta,u,v of the full image of |z| = r.
    Fig1 {
        #[arg(long, default_value_t = 2.0)]
        r: f64,
        #[arg(long, default_value_t = 4096)]
        samples: usize,
    },
    /// Real- and imaginary-axis crossings.
    Crossings {
        #[arg(long, default_value_t = 2.0)]
        r: f64,
    },
    /// Convexity of the image of the sub-arc |theta| <= arccos(-1/(2r)).
    Convexity {
        #[arg(long, default_value_t = 2.0)]
        r: f64,
        #[arg(long, default_value_t = 4096)]
        samples: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("lsum: {e}");
            ExitCode::from(if e.is_usage() { 2 } else { 1 })
        }
    }
}

fn config(g: &GlobalArgs, default_cutoff: u64, default_tol: f64) -> Result<RunConfig> {
    RunConfig {
        prime_cutoff: g.prime_cutoff.unwrap_or(default_cutoff),
        powers: g.powers,
        tol: g.tol.unwrap_or(default_tol),
        seed: g.seed,
        out: g.out.clone(),
    }
    .validate()
}

fn io_err(e: io::Error) -> Error {
    Error::Parse(format!("i/o: {e}"))
}

fn emit(value: &serde_json::Value) {
    println!("{value}");
}

fn run(cli: Cli) -> Result<u8> {
    let g = &cli.global;
    match cli.command {
        Command::Eval { spec, s, n, combo, log } => {
            let cfg = config(g, 100_000, f64::INFINITY)?;
            let l = load_spec(&spec.spec, spec.char_file.as_ref(), spec.k)?;
            let s = parse_complex(&s)?;
            let cutoffs = Cutoffs::new(cfg.prime_cutoff, cfg.powers);
            let (kind, r): (&str, EvalResult) = if combo {
                ("combo", eval_f(&ComboSpec::new(l.clone(), n)?, s, cutoffs)?)
            } else if log {
                ("log", eval_log_l(&l, s, cutoffs)?)
            } else {
                ("value", eval_l(&l, s, cutoffs)?)
            };
            if r.tail_bound > cfg.tol {
                return Err(Error::Precision(format!(
                    "tail bound {:e} exceeds tolerance {:e}",
                    r.tail_bound, cfg.tol
                )));
            }
            emit(&json!({
                "spec": l.label(),
                "kind": kind,
                "N": if combo { n } else { 1 },
                "s": [s.re, s.im],
                "value": [r.value.re, r.value.im],
                "tail_bound": r.tail_bound,
            }));
            Ok(0)
        }
        Command::Lemma { spec, n, sigma, samples } => {
            let cfg = config(g, 10_000, 1.0)?;
            let l = load_spec(&spec.spec, spec.char_file.as_ref(), spec.k)?;
            let disc = lemma_disc_check(&l, n, sigma)?;
            eprintln!(
                "N = {n}: radius {:.6}, center {}, contained: {}",
                disc.radius, disc.center, disc.contained
            );
            let mut out = json!({ "disc": disc });
            if samples > 0 {
                let tail = ComboSpec::new(l, n)?.tail();
                let cutoffs = Cutoffs::new(cfg.prime_cutoff, cfg.powers);
                let rep = uniform_log_bound_sample(&tail, sigma, samples, cfg.seed, cutoffs)?;
                eprintln!(
                    "{} twists: max |log f| = {:.6} against bound {:.6}",
                    rep.trials, rep.max_abs_log, rep.log_bound
                );
                out["sample"] = serde_json::to_value(rep).expect("serializable");
            }
            emit(&out);
            Ok(0)
        }
        Command::Zeros {
            spec,
            n,
            rect,
            samples,
            threshold,
        } => {
            let cfg = config(g, 100_000, 1e-12)?;
            let l = load_spec(&spec.spec, spec.char_file.as_ref(), spec.k)?;
            let rect = parse_rect(&rect)?;
            let opts = PolishOptions {
                tol: cfg.tol,
                ..PolishOptions::default()
            };
            let f: Box<dyn SeriesFn> = if spec.spec == "zeta" {
                Box::new(ZetaComboEm::new(n))
            } else {
                Box::new(EulerCombo {
                    combo: ComboSpec::new(l, n)?,
                    cutoffs: Cutoffs::new(cfg.prime_cutoff, cfg.powers),
                })
            };
            let reports = hunt(f.as_ref(), &rect, samples, threshold, &opts)?;
            eprintln!("{:>24} {:>24} {:>10} {:>7} certified", "re s", "im s", "residual", "winding");
            for r in &reports {
                eprintln!(
                    "{:>24.16} {:>24.16} {:>10.2e} {:>7} {}",
                    r.location.re, r.location.im, r.residual, r.winding, r.certified
                );
                println!("{}", r.to_json_line());
            }
            eprintln!("{} candidate(s)", reports.len());
            Ok(0)
        }
        Command::Curve { which } => run_curve(which, g),
        Command::Region { sigma } => {
            let cfg = config(g, 100_000, 1.0)?;
            let sigmas = match sigma {
                Some(s) => parse_list(&s)?,
                None => default_sigma_grid(),
            };
            let sweep = verdict_sweep(&sigmas, cfg.prime_cutoff)?;
            let verdicts = (1..=12).map(|k| verdict_for_k(k, &sweep)).collect::<Result<Vec<_>>>()?;
            eprintln!("{:>12} {:>12} {:>12} {:>12}", "sigma", "lower", "upper", "hull upper");
            for b in &sweep.bounds {
                eprintln!(
                    "{:>12} {:>12.7} {:>12.7} {:>12.7}",
                    b.sigma, b.lower_reach, b.upper_reach, b.hull_upper_reach
                );
            }
            for v in &verdicts {
                eprintln!(
                    "k = {:>2}: pi/k = {:.6}  {:?}  (lower {:.6}, upper {:.6})",
                    v.k, v.target, v.status, v.lower_used, v.upper_used
                );
            }
            emit(&json!({ "sweep": sweep, "verdicts": verdicts }));
            Ok(0)
        }
        Command::FixedPoint { spec, sigma, samples } => {
            let cfg = config(g, 10_000, 1e-6)?;
            let l = load_spec(&spec.spec, spec.char_file.as_ref(), spec.k)?;
            let t = compute_partition(&l, sigma, cfg.prime_cutoff)?;
            let cov = g_coverage_check(t.mu1, t.mu2, t.mu0, 512, 32)?;
            let sols = boundary_targets(&l, &t, t.radius(), samples, cfg.tol)?;
            eprintln!(
                "mu1 = {:.6}, mu2 = {:.6}, mu0 = {:.6}, S = {:.6}, radius {:.6} ({})",
                t.mu1,
                t.mu2,
                t.mu0,
                t.total_sum,
                t.radius(),
                if t.contiguous { "contiguous blocks" } else { "non-contiguous blocks" }
            );
            eprintln!("{:>12} {:>12} {:>10} {:>10} {:>10} ok", "re z", "im z", "theta1", "theta2", "residual");
            for (s, r) in &sols {
                eprintln!(
                    "{:>12.6} {:>12.6} {:>10.6} {:>10.6} {:>10.2e} {}",
                    s.z.re, s.z.im, s.theta1, s.theta2, r.residual, r.ok
                );
            }
            let all_ok = sols.iter().all(|(_, r)| r.ok);
            let targets: Vec<_> = sols
                .iter()
                .map(|(s, r)| json!({ "z": [s.z.re, s.z.im], "theta1": s.theta1, "theta2": s.theta2, "report": r }))
                .collect();
            let mut out = json!({ "partition": t, "coverage": cov, "targets": targets });
            if g.json {
                out["solutions"] = serde_json::to_value(sols.iter().map(|(s, _)| s).collect::<Vec<_>>())
                    .expect("serializable");
            }
            emit(&out);
            Ok(if all_ok { 0 } else { 1 })
        }
        Command::Verify {
            only,
            lower_reach_target,
        } => {
            let ids = match only.as_deref() {
                None => (1..=CRITERIA).collect(),
                Some(sel) => match criteria_for_module(sel) {
                    Some(ids) => ids,
                    None => sel
                        .split(',')
                        .map(|x| match x.trim().parse::<usize>() {
                            Ok(id) if (1..=CRITERIA).contains(&id) => Ok(id),
                            _ => Err(Error::Parse(format!("unknown criterion or module {x:?}"))),
                        })
                        .collect::<Result<Vec<_>>>()?,
                },
            };
            let mut th = Thresholds::default();
            if let Some(x) = lower_reach_target {
                th.lower_reach = x;
            }
            let results = run_selected(&ids, &th);
            for r in &results {
                eprintln!("{r}");
            }
            if g.json {
                emit(&serde_json::to_value(&results).expect("serializable"));
            }
            match results.iter().find(|r| !r.passed) {
                Some(first) => {
                    let n = results.iter().filter(|r| !r.passed).count();
                    eprintln!("{n} criterion(s) failed; first: [{}] {}", first.id, first.name);
                    Ok(1)
                }
                None => {
                    eprintln!("all {} criteria passed", results.len());
                    Ok(0)
                }
            }
        }
    }
}

fn run_curve(which: CurveCommand, g: &GlobalArgs) -> Result<u8> {
    match which {
        CurveCommand::Fig1 { r, samples } => {
            let fig = figure1_samples(r, samples)?;
            match &g.out {
                Some(path) => {
                    let mut w = BufWriter::new(File::create(path).map_err(io_err)?);
                    fig.write_csv(&mut w).map_err(io_err)?;
                    w.flush().map_err(io_err)?;
                }
                None => {
                    let stdout = io::stdout();
                    fig.write_csv(stdout.lock()).map_err(io_err)?;
                }
            }
            let c = fig.checks();
            eprintln!(
                "r = {r}: {} samples, winding {}, mirror deviation {:.1e}, real values {:?}",
                fig.rows.len(),
                c.winding,
                c.mirror_max_deviation,
                c.distinct_real_values
            );
            Ok(0)
        }
        CurveCommand::Crossings { r } => {
            let real = real_axis_crossings(r)?;
            let imag = imag_axis_crossings(r)?;
            if let Some(w) = &imag.warning {
                eprintln!("warning: {w}");
            }
            emit(&json!({ "real": real, "imaginary": imag }));
            Ok(0)
        }
        CurveCommand::Convexity { r, samples } => {
            let rep = convexity_check(r, samples)?;
            eprintln!(
                "r = {r}: convex {}, min margin {:.3e}, tangent turning {:.6}",
                rep.convex, rep.min_margin, rep.tangent_turning
            );
            for b in &rep.printed_bounds {
                eprintln!(
                    "  {}: bound {:.4} vs claimed {}, holds {}",
                    b.case, b.bound_at_r, b.claimed_constant, b.constant_claim_holds
                );
            }
            emit(&serde_json::to_value(&rep).expect("serializable"));
            Ok(if rep.convex { 0 } else { 1 })
        }
    }
}
