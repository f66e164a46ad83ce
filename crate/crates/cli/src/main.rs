//! stlab: Satake-angle statistics for non-CM elliptic curves.
//!
//! Subcommands compute trace/angle tables, verify the coefficient
//! identities, certify majorants, and emit discrepancy/decay reports as
//! CSV, JSON, or SVG plots.
//!
//! Exit codes: 1 invalid configuration, 2 data or validation error,
//! 3 internal assertion failure (a finite-data theorem did not hold).

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use stlab::cache::{cache_load, cache_store};
use stlab::cg;
use stlab::curves::CurveModel;
use stlab::ingest::{ingest_eigenvalues, read_meta_sidecar};
use stlab::majorant::{build_majorant_pair, calibrate_pair, Interval};
use stlab::parallel::build_pool;
use stlab::pnt::{bucket_by_characters, coeff_partial_sum, pnt_bound, CharacterValues, TwistValues};
use stlab::points::{angle_sequence_for_curve, traces_for_curve};
use stlab::report::{self, ReportMeta};
use stlab::roots::RootOfUnity;
use stlab::sample::{sample_context, sample_interval_pair, seeded_rng};
use stlab::sato_tate::{
    discrepancy, effective_bound, joint_discrepancy, sandwich_check, BoundProfile,
};
use stlab::svg::{log_log_plot, Series};
use stlab::angles::AngleSequence;

#[derive(Parser)]
#[command(name = "stlab", version, about = "Satake-angle statistics for non-CM elliptic curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads (default: one per core). Never changes any output.
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Angle-cache directory (overrides STLB_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Report format.
    #[arg(long, global = true, default_value = "csv", value_parser = ["csv", "json"])]
    format: String,
}

#[derive(Args, Clone)]
struct ProfileArgs {
    /// Named constant preset; individual flags below override it. Only
    /// `default` (all constants 1) exists today.
    #[arg(long, default_value = "default", value_parser = ["default"])]
    profile: String,
    /// Zero-free-region constant (stand-in, default 1).
    #[arg(long, default_value_t = 1.0)]
    c_main: f64,
    /// Chebotarev constant (stand-in, default 1).
    #[arg(long, default_value_t = 1.0)]
    c_cdt: f64,
    /// Outer bound constant (stand-in, default 1).
    #[arg(long, default_value_t = 1.0)]
    c_st: f64,
    /// Field degree over Q.
    #[arg(long, default_value_t = 1)]
    field_degree: u32,
    /// Override log Q (default: log of the conductor product).
    #[arg(long)]
    log_q: Option<f64>,
    /// Ramification class: 0 or 2.
    #[arg(long, default_value_t = 0)]
    y: u8,
}

impl ProfileArgs {
    fn build(&self, default_log_q: f64) -> Result<BoundProfile, CliError> {
        let profile = BoundProfile {
            c_main: self.c_main,
            c_cdt: self.c_cdt,
            c_st: self.c_st,
            field_degree: self.field_degree,
            log_q: self.log_q.unwrap_or(default_log_q),
            y_max: self.y,
        };
        profile
            .validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
        Ok(profile)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Trace table a_p for one curve.
    Ap {
        #[arg(long)]
        curve: String,
        #[arg(long, value_parser = parse_xmax)]
        xmax: u64,
    },
    /// Angle table for one curve (cached).
    Angles {
        #[arg(long)]
        curve: String,
        #[arg(long, value_parser = parse_xmax)]
        xmax: u64,
    },
    /// Validate an eigenvalue CSV and emit its angle table.
    Ingest {
        #[arg(long)]
        input: PathBuf,
    },
    /// Single-sequence equidistribution discrepancy.
    Discrepancy {
        #[arg(long)]
        curve: String,
        #[arg(long, value_parser = parse_xmax)]
        xmax: u64,
        /// Angle interval `lo:hi` (default full).
        #[arg(long, value_parser = parse_interval)]
        interval: Option<(f64, f64)>,
        /// Extra checkpoints `x1,x2,...` below xmax.
        #[arg(long, value_delimiter = ',', value_parser = parse_xmax)]
        checkpoints: Option<Vec<u64>>,
        /// Also write a log-log convergence plot.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[command(flatten)]
        profile: ProfileArgs,
    },
    /// Joint discrepancy for a pair of curves.
    Joint {
        #[arg(long)]
        curve: String,
        #[arg(long)]
        curve2: String,
        #[arg(long, value_parser = parse_xmax)]
        xmax: u64,
        #[arg(long, value_parser = parse_interval)]
        interval: Option<(f64, f64)>,
        #[arg(long, value_parser = parse_interval)]
        interval2: Option<(f64, f64)>,
        #[arg(long, value_delimiter = ',', value_parser = parse_xmax)]
        checkpoints: Option<Vec<u64>>,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Also run the majorant sandwich check at this degree.
        #[arg(long)]
        sandwich_degree: Option<usize>,
        #[command(flatten)]
        profile: ProfileArgs,
    },
    /// Certify majorants over random interval pairs and report constants.
    MajorantCheck {
        #[arg(long, value_delimiter = ',', value_parser = parse_degree, default_value = "4,8,16,32")]
        degrees: Vec<usize>,
        #[arg(long, default_value_t = 1000)]
        pairs: usize,
        #[arg(long, default_value_t = 300)]
        grid: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Verify the coefficient identities on seeded random contexts.
    CgVerify {
        #[arg(long, default_value_t = 5)]
        max_mn: u32,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Partial-sum decay table for a pair of curves.
    Pnt {
        #[arg(long)]
        curve: String,
        #[arg(long)]
        curve2: String,
        #[arg(long, value_parser = parse_xmax)]
        xmax: u64,
        #[arg(long, default_value_t = 3)]
        max_mn: u32,
        #[arg(long, value_delimiter = ',', value_parser = parse_xmax)]
        checkpoints: Option<Vec<u64>>,
        /// Also report the discarded second prime-power mass per (m, n).
        #[arg(long)]
        include_ell2: bool,
        #[command(flatten)]
        profile: ProfileArgs,
    },
    /// Effective-bound table against x.
    Bound {
        #[arg(long, value_parser = parse_xmax, default_value = "1e6")]
        xmax: u64,
        #[arg(long, default_value_t = 20)]
        points: usize,
        #[command(flatten)]
        profile: ProfileArgs,
    },
    /// Joint convergence report over a geometric checkpoint ladder.
    Report {
        #[arg(long)]
        curve: String,
        #[arg(long)]
        curve2: String,
        #[arg(long, value_parser = parse_xmax)]
        xmax: u64,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[command(flatten)]
        profile: ProfileArgs,
    },
}

#[derive(Debug)]
enum CliError {
    Config(String),
    Data(stlab::Error),
    Assertion(String),
}

impl From<stlab::Error> for CliError {
    fn from(e: stlab::Error) -> Self {
        match e {
            stlab::Error::SandwichViolation { .. } => CliError::Assertion(e.to_string()),
            other => CliError::Data(other),
        }
    }
}

fn parse_xmax(s: &str) -> Result<u64, String> {
    let v: f64 = s.parse().map_err(|e| format!("bad x value `{s}`: {e}"))?;
    if !(v >= 5.0 && v.is_finite()) {
        return Err(format!("x must be >= 5, got {s}"));
    }
    Ok(v.round() as u64)
}

fn parse_interval(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("interval `{s}` must be lo:hi"))?;
    let lo: f64 = lo.parse().map_err(|e| format!("bad interval `{s}`: {e}"))?;
    let hi: f64 = hi.parse().map_err(|e| format!("bad interval `{s}`: {e}"))?;
    Interval::new_angle(lo, hi).map_err(|e| e.to_string())?;
    Ok((lo, hi))
}

fn parse_degree(s: &str) -> Result<usize, String> {
    let d: usize = s
        .trim()
        .parse()
        .map_err(|e| format!("bad degree `{s}`: {e}"))?;
    if d >= 1 {
        Ok(d)
    } else {
        Err("degree must be >= 1".into())
    }
}

fn parse_curve(s: &str) -> Result<CurveModel, CliError> {
    if let Some(c) = CurveModel::builtin(s) {
        return Ok(c);
    }
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() == 5 {
        let mut a = [0i64; 5];
        for (slot, part) in a.iter_mut().zip(&parts) {
            *slot = part
                .trim()
                .parse()
                .map_err(|e| CliError::Config(format!("bad coefficient `{part}`: {e}")))?;
        }
        return CurveModel::new(s, a).map_err(CliError::Data);
    }
    Err(CliError::Config(format!(
        "unknown curve `{s}`; use one of {:?} or a1,a2,a3,a4,a6 (inputs must be non-CM)",
        CurveModel::builtin_labels()
    )))
}

fn cache_dir(cli: &Cli) -> Option<PathBuf> {
    cli.cache_dir
        .clone()
        .or_else(|| std::env::var_os("STLB_CACHE_DIR").map(PathBuf::from))
}

/// Load from cache when possible; recompute (and refresh the cache) on a
/// miss or on corruption.
fn sequence_for(
    curve: &CurveModel,
    xmax: u64,
    dir: &Option<PathBuf>,
) -> Result<AngleSequence, CliError> {
    if let Some(dir) = dir {
        match cache_load(dir, curve, xmax) {
            Ok(Some(seq)) => return Ok(seq),
            Ok(None) => {}
            Err(e) => eprintln!("warning: {e}; recomputing"),
        }
        let seq = angle_sequence_for_curve(curve, xmax)?;
        cache_store(dir, curve, xmax, &seq)?;
        Ok(seq)
    } else {
        Ok(angle_sequence_for_curve(curve, xmax)?)
    }
}

fn checkpoint_ladder(xmax: u64, points: usize) -> Vec<u64> {
    let lo = 100f64.min(xmax as f64);
    let hi = xmax as f64;
    let mut out: Vec<u64> = (0..points)
        .map(|i| {
            (lo * (hi / lo).powf(i as f64 / (points - 1).max(1) as f64)).round() as u64
        })
        .collect();
    out.dedup();
    out
}

/// Command echo with worker flags stripped: workers never affect output
/// bytes, and reports must be identical across pool sizes.
fn command_echo() -> String {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let mut out = Vec::new();
    let mut skip = false;
    for a in args {
        if skip {
            skip = false;
            continue;
        }
        if a == "--workers" {
            skip = true;
            continue;
        }
        if a.starts_with("--workers=") {
            continue;
        }
        out.push(a);
    }
    out.join(" ")
}

fn emit(cli: &Cli, body: String) -> Result<(), CliError> {
    match &cli.output {
        Some(path) => std::fs::write(path, body).map_err(|e| CliError::Data(e.into())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn write_convergence_svg(
    path: &PathBuf,
    rows: &[stlab::sato_tate::DiscrepancyReport],
) -> Result<(), CliError> {
    let svg = log_log_plot(
        "empirical error against the effective bound",
        "x",
        "absolute error",
        &[
            Series {
                label: "abs_error",
                points: rows.iter().map(|r| (r.x as f64, r.abs_error)).collect(),
            },
            Series {
                label: "effective_bound",
                points: rows
                    .iter()
                    .map(|r| (r.x as f64, r.effective_bound))
                    .collect(),
            },
        ],
    );
    std::fs::write(path, svg).map_err(|e| CliError::Data(e.into()))
}

fn angle_interval(pair: Option<(f64, f64)>) -> Result<Interval<f64>, CliError> {
    let (lo, hi) = pair.unwrap_or((0.0, PI));
    Interval::new_angle(lo, hi).map_err(CliError::Data)
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let dir = cache_dir(cli);
    match &cli.command {
        Command::Ap { curve, xmax } => {
            let curve = parse_curve(curve)?;
            let traces = traces_for_curve(&curve, *xmax)?;
            let meta = ReportMeta::new(command_echo())
                .note("curve", &curve.label)
                .note("xmax", xmax);
            let body = if cli.format == "json" {
                report::to_json(&meta, &traces)?
            } else {
                report::traces_csv(&meta, &traces)
            };
            emit(cli, body)
        }
        Command::Angles { curve, xmax } => {
            let curve = parse_curve(curve)?;
            let seq = sequence_for(&curve, *xmax, &dir)?;
            let meta = ReportMeta::new(command_echo())
                .note("curve", &curve.label)
                .note("xmax", xmax)
                .note("excluded", format_set(seq.excluded()));
            let body = if cli.format == "json" {
                report::to_json(&meta, &seq)?
            } else {
                report::angles_csv(&meta, &seq)
            };
            emit(cli, body)
        }
        Command::Ingest { input } => {
            let seq = ingest_eigenvalues(input)?;
            let sidecar = read_meta_sidecar(input)?;
            let mut meta = ReportMeta::new(command_echo())
                .note("source", input.display())
                .note("digest", &seq.provenance().digest)
                .note("rows", seq.len());
            if let Some(m) = sidecar {
                meta = meta
                    .note("label", &m.label)
                    .note("field_degree", m.field_degree)
                    .note("conductor_norm", m.conductor_norm)
                    .note("y_param", m.y_param);
            }
            let body = if cli.format == "json" {
                report::to_json(&meta, &seq)?
            } else {
                report::angles_csv(&meta, &seq)
            };
            emit(cli, body)
        }
        Command::Discrepancy {
            curve,
            xmax,
            interval,
            checkpoints,
            svg,
            profile,
        } => {
            let curve = parse_curve(curve)?;
            let prof = profile.build(curve.log_conductor_approx())?;
            let iv = angle_interval(*interval)?;
            let seq = sequence_for(&curve, *xmax, &dir)?;
            let mut xs = checkpoints.clone().unwrap_or_default();
            if !xs.contains(xmax) {
                xs.push(*xmax);
            }
            xs.sort_unstable();
            xs.dedup();
            let rows: Vec<_> = xs
                .iter()
                .map(|&x| discrepancy(&seq, &iv, x, &prof))
                .collect::<stlab::Result<_>>()?;
            let meta = ReportMeta::new(command_echo())
                .with_profile(&prof)
                .note("curve", &curve.label)
                .note("q_source", q_source_note(&curve, None, profile));
            if let Some(path) = svg {
                write_convergence_svg(path, &rows)?;
            }
            let body = if cli.format == "json" {
                report::to_json(&meta, &rows)?
            } else {
                report::discrepancy_csv(&meta, &rows)
            };
            emit(cli, body)
        }
        Command::Joint {
            curve,
            curve2,
            xmax,
            interval,
            interval2,
            checkpoints,
            svg,
            sandwich_degree,
            profile,
        } => {
            let e1 = parse_curve(curve)?;
            let e2 = parse_curve(curve2)?;
            let prof =
                profile.build(e1.log_conductor_approx() + e2.log_conductor_approx())?;
            let i1 = angle_interval(*interval)?;
            let i2 = angle_interval(*interval2)?;
            let s1 = sequence_for(&e1, *xmax, &dir)?;
            let s2 = sequence_for(&e2, *xmax, &dir)?;
            let mut xs = checkpoints.clone().unwrap_or_default();
            if !xs.contains(xmax) {
                xs.push(*xmax);
            }
            xs.sort_unstable();
            xs.dedup();
            let rows: Vec<_> = xs
                .iter()
                .map(|&x| joint_discrepancy(&s1, &s2, &i1, &i2, x, &prof))
                .collect::<stlab::Result<_>>()?;
            let mut meta = ReportMeta::new(command_echo())
                .with_profile(&prof)
                .note("curve", &e1.label)
                .note("curve2", &e2.label)
                .note("q_source", q_source_note(&e1, Some(&e2), profile));
            if let Some(m) = sandwich_degree {
                let (minus, plus) = build_majorant_pair(&i1, &i2, *m)?;
                let out = sandwich_check(&s1, &s2, &minus, &plus, &i1, &i2, *xmax)?;
                meta = meta.note(
                    "sandwich",
                    format!(
                        "degree={} lower_margin={} upper_margin={}",
                        m, out.lower_margin, out.upper_margin
                    ),
                );
            }
            if let Some(path) = svg {
                write_convergence_svg(path, &rows)?;
            }
            let body = if cli.format == "json" {
                report::to_json(&meta, &rows)?
            } else {
                report::discrepancy_csv(&meta, &rows)
            };
            emit(cli, body)
        }
        Command::MajorantCheck {
            degrees,
            pairs,
            grid,
            seed,
        } => {
            if *grid < 2 || *pairs == 0 {
                return Err(CliError::Config("grid >= 2 and pairs >= 1 required".into()));
            }
            let mut rng = seeded_rng(*seed);
            let sampled: Vec<_> = (0..*pairs).map(|_| sample_interval_pair(&mut rng)).collect();
            use rayon::prelude::*;
            let mut rows = Vec::new();
            for &m in degrees {
                let batch: Vec<_> = sampled
                    .par_iter()
                    .map(|(i1, i2)| calibrate_pair(i1, i2, m, *grid))
                    .collect::<stlab::Result<_>>()?;
                rows.extend(batch);
            }
            let worst = rows
                .iter()
                .map(|r| r.max_violation)
                .fold(f64::NEG_INFINITY, f64::max);
            if worst > 1e-9 {
                return Err(CliError::Assertion(format!(
                    "sandwich violated on the verification grid: {worst}"
                )));
            }
            let meta = ReportMeta::new(command_echo())
                .note("seed", seed)
                .note("pairs", pairs)
                .note("grid", grid)
                .note("worst_violation", worst);
            let body = if cli.format == "json" {
                report::to_json(&meta, &rows)?
            } else {
                report::majorant_csv(&meta, &rows)
            };
            emit(cli, body)
        }
        Command::CgVerify {
            max_mn,
            samples,
            seed,
        } => {
            let summary = cg_verify(*max_mn, *samples, *seed)?;
            let meta = ReportMeta::new(command_echo())
                .note("seed", seed)
                .note("samples", samples)
                .note("max_mn", max_mn);
            let body = if cli.format == "json" {
                report::to_json(&meta, &summary)?
            } else {
                let mut out = String::new();
                out.push_str(&format!("# tool: stlab {}\n", stlab::VERSION));
                out.push_str(&format!("# command: {}\n", command_echo()));
                out.push_str(&format!("# seed: {seed}\n"));
                out.push_str("check,max_residual,samples\n");
                out.push_str(&format!(
                    "product_identity,{},{}\n",
                    summary.product_residual, samples
                ));
                out.push_str(&format!(
                    "norm_identity,{},{}\n",
                    summary.norm_residual, samples
                ));
                out.push_str(&format!(
                    "positivity,{},{}\n",
                    summary.positivity_slack, samples
                ));
                out.push_str(&format!(
                    "factorization,{},{}\n",
                    summary.factorization_residual, samples
                ));
                out.push_str(&format!(
                    "degree_ledger,{},{}\n",
                    summary.degree_mismatches, samples
                ));
                out
            };
            emit(cli, body)
        }
        Command::Pnt {
            curve,
            curve2,
            xmax,
            max_mn,
            checkpoints,
            include_ell2,
            profile,
        } => {
            let e1 = parse_curve(curve)?;
            let e2 = parse_curve(curve2)?;
            let prof =
                profile.build(e1.log_conductor_approx() + e2.log_conductor_approx())?;
            let s1 = sequence_for(&e1, *xmax, &dir)?;
            let s2 = sequence_for(&e2, *xmax, &dir)?;
            let mut xs = checkpoints.clone().unwrap_or_default();
            if !xs.contains(xmax) {
                xs.push(*xmax);
            }
            xs.sort_unstable();
            xs.dedup();
            let one = RootOfUnity::one();
            let mut series = Vec::new();
            let mut ratios = Vec::new();
            for m in 0..=*max_mn {
                for n in 0..=*max_mn {
                    if m == 0 && n == 0 {
                        continue;
                    }
                    let s = coeff_partial_sum(
                        &s1,
                        &s2,
                        m,
                        n,
                        &TwistValues::Trivial,
                        &one,
                        &one,
                        &xs,
                    )?;
                    let r: Vec<f64> = xs
                        .iter()
                        .map(|&x| {
                            pnt_bound(&prof, m, n, 0.0, x as f64).map(|b| b / x as f64)
                        })
                        .collect::<stlab::Result<_>>()?;
                    series.push(s);
                    ratios.push(r);
                }
            }
            // single trivial character bucket, reported for completeness
            let buckets = bucket_by_characters(&s1, &s2, &CharacterValues::Trivial)?;
            let mut meta = ReportMeta::new(command_echo())
                .with_profile(&prof)
                .note("curve", &e1.label)
                .note("curve2", &e2.label)
                .note("character_buckets", buckets.buckets.len());
            if *include_ell2 {
                for s in &series {
                    let mass = stlab::pnt::ell2_mass(
                        &s1,
                        &s2,
                        s.m,
                        s.n,
                        &TwistValues::Trivial,
                        *xmax,
                    )?;
                    meta = meta.note(
                        &format!("ell2_mass_{}_{}", s.m, s.n),
                        format!(
                            "re={} im={} primes={}",
                            mass.sum_re, mass.sum_im, mass.prime_count
                        ),
                    );
                }
            }
            let body = if cli.format == "json" {
                report::to_json(&meta, &series)?
            } else {
                report::pnt_csv(&meta, &series, &ratios)
            };
            emit(cli, body)
        }
        Command::Bound {
            xmax,
            points,
            profile,
        } => {
            let prof = profile.build(1.0)?;
            let xs = checkpoint_ladder(*xmax, *points);
            let rows: Vec<(f64, _)> = xs
                .iter()
                .map(|&x| effective_bound(&prof, x as f64).map(|b| (x as f64, b)))
                .collect::<stlab::Result<_>>()?;
            let meta = ReportMeta::new(command_echo()).with_profile(&prof);
            let body = if cli.format == "json" {
                let plain: Vec<_> = rows.iter().map(|(x, b)| (*x, *b)).collect();
                report::to_json(&meta, &plain)?
            } else {
                report::bounds_csv(&meta, &rows)
            };
            emit(cli, body)
        }
        Command::Report {
            curve,
            curve2,
            xmax,
            svg,
            profile,
        } => {
            let e1 = parse_curve(curve)?;
            let e2 = parse_curve(curve2)?;
            let prof =
                profile.build(e1.log_conductor_approx() + e2.log_conductor_approx())?;
            let s1 = sequence_for(&e1, *xmax, &dir)?;
            let s2 = sequence_for(&e2, *xmax, &dir)?;
            let half = Interval::new_angle(0.0, PI / 2.0).map_err(CliError::Data)?;
            let xs = checkpoint_ladder(*xmax, 12);
            let rows: Vec<_> = xs
                .iter()
                .filter(|&&x| x >= 100)
                .map(|&x| joint_discrepancy(&s1, &s2, &half, &half, x, &prof))
                .collect::<stlab::Result<_>>()?;
            let meta = ReportMeta::new(command_echo())
                .with_profile(&prof)
                .note("curve", &e1.label)
                .note("curve2", &e2.label)
                .note("interval", "0:pi/2 x 0:pi/2")
                .note("q_source", q_source_note(&e1, Some(&e2), profile));
            if let Some(path) = svg {
                write_convergence_svg(path, &rows)?;
            }
            let body = if cli.format == "json" {
                report::to_json(&meta, &rows)?
            } else {
                report::discrepancy_csv(&meta, &rows)
            };
            emit(cli, body)
        }
    }
}

fn format_set(set: &BTreeSet<u64>) -> String {
    let v: Vec<String> = set.iter().map(|p| p.to_string()).collect();
    v.join(" ")
}

fn q_source_note(e1: &CurveModel, e2: Option<&CurveModel>, profile: &ProfileArgs) -> String {
    if profile.log_q.is_some() {
        return "explicit --log-q override".into();
    }
    let describe = |c: &CurveModel| {
        if c.conductor().is_some() {
            "conductor"
        } else {
            "|discriminant| fallback"
        }
    };
    match e2 {
        Some(e2) => format!(
            "product of {} ({}) and {} ({}); archimedean factors absorbed into c_st",
            describe(e1),
            e1.label,
            describe(e2),
            e2.label
        ),
        None => format!(
            "{} of {}; archimedean factors absorbed into c_st",
            describe(e1),
            e1.label
        ),
    }
}

#[derive(Debug, serde::Serialize)]
struct CgSummary {
    product_residual: f64,
    norm_residual: f64,
    positivity_slack: f64,
    factorization_residual: f64,
    degree_mismatches: u64,
}

fn cg_verify(max_mn: u32, samples: usize, seed: u64) -> Result<CgSummary, CliError> {
    use rayon::prelude::*;
    let mut rng = seeded_rng(seed);
    let contexts: Vec<_> = (0..samples).map(|_| sample_context(&mut rng)).collect();

    let (product_residual, norm_residual, positivity_slack, factorization_residual) = contexts
        .par_iter()
        .map(|ctx| {
            let mut prod = 0f64;
            let mut norm = 0f64;
            let mut pos = 0f64;
            let mut fact = 0f64;
            for j in 0..=max_mn {
                for k in 0..=max_mn {
                    let lhs = stlab::satake::rs_coeff(&ctx.pi, &ctx.pi, &ctx.chi, j, k, 1)
                        .expect("same place")
                        .value;
                    let rhs = cg::cg_product_coeff(ctx, j, k, 1);
                    prod = prod.max((lhs - rhs).norm());
                    if j == k {
                        let n_lhs = cg::cg_norm_coeff(&ctx.pi, j, 1);
                        let a = stlab::satake::sym_power_coeff(&ctx.pi, j, 1).value;
                        norm = norm.max((n_lhs.re - a.norm_sqr()).abs().max(n_lhs.im.abs()));
                    }
                    if j == 0 && k == 0 {
                        continue;
                    }
                    let v = cg::aux_coeff(ctx, j, k, 1).expect("max(m,n) >= 1");
                    let sq = cg::aux_coeff_square(ctx, j, k, 1).expect("max(m,n) >= 1");
                    pos = pos.max((-v.re).max(v.im.abs()));
                    fact = fact.max((v.re - sq).abs());
                }
            }
            (prod, norm, pos, fact)
        })
        .reduce(
            || (0.0, 0.0, 0.0, 0.0),
            |a, b| (a.0.max(b.0), a.1.max(b.1), a.2.max(b.2), a.3.max(b.3)),
        );

    let mut degree_mismatches = 0u64;
    for m in 0..=8u32 {
        for n in 0..=8u32 {
            if m == 0 && n == 0 {
                continue;
            }
            if !cg::degree_of_d(m, n)
                .map_err(CliError::Data)?
                .matches()
            {
                degree_mismatches += 1;
            }
        }
    }

    let summary = CgSummary {
        product_residual,
        norm_residual,
        positivity_slack,
        factorization_residual,
        degree_mismatches,
    };
    let tol = 1e-9;
    if summary.product_residual > tol
        || summary.norm_residual > tol
        || summary.positivity_slack > tol
        || summary.factorization_residual > tol
        || summary.degree_mismatches > 0
    {
        return Err(CliError::Assertion(format!(
            "identity verification failed: {summary:?}"
        )));
    }
    Ok(summary)
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are not errors
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                std::process::exit(0);
            }
            eprintln!("{e}");
            std::process::exit(1);
        }
    };
    let pool = match build_pool(cli.workers) {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    };
    let outcome = pool.install(|| run(&cli));
    match outcome {
        Ok(()) => {}
        Err(CliError::Config(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
        Err(CliError::Data(e)) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
        Err(CliError::Assertion(msg)) => {
            eprintln!("assertion failed: {msg}");
            std::process::exit(3);
        }
    }
}
