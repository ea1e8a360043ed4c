//! `nnorm` — packing bounds for the √|xy| pseudo-norm, L∞-Delaunay
//! triangulations, and Lagrange/Dirichlet constants of interval exchange
//! transformations.
//!
//! Numeric literals are accepted everywhere a number is expected:
//! `p/q` (exact rational), `a+b*sqrt5` (exact ℚ(√5)), `phi` for
//! `1/2+1/2*sqrt5`, and plain decimals (which switch the computation to
//! float mode). Exact values serialize back as literals, floats as
//! shortest round-trip decimals.
//!
//! Exit status: 0 on success, 1 on input errors, 2 when an exact-mode
//! packing certificate is violated (slack < 0 — impossible for correct
//! code, so it signals a bug loudly).

mod output;

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use nnorm::exactnum::{parse_literal, Value, QF5};
use nnorm::iet::{
    dirichlet_estimate, keane_check, lagrange_estimate, EpsilonStream, Iet, KeaneResult,
    Permutation,
};
use nnorm::ngeom::{parse_point_file, GoldenLattice, ParsedPoints, PointSet};
use nnorm::packing::{packing_bound, rect_packing_bound, Metric, Rect};
use nnorm::recurrence::{prop31_experiment, theorem12_experiment, Sampling};
use nnorm::rotation::{
    cf_expand_exact, cf_expand_f64, convergent_denominators_exact, convergent_denominators_f64,
    lagrange_rotation_exact, lagrange_rotation_f64, HurwitzStream,
};
use nnorm::scalar::{Scalar, F64};

use output::{emit, json_summary, OutputCfg};

#[derive(Parser)]
#[command(name = "nnorm", version, about, disable_help_subcommand = true)]
struct Cli {
    /// Numeric mode: exact (error if any decimal literal), float, or auto.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Auto)]
    mode: Mode,
    /// Suppress the timestamp field in JSON outputs (byte-identical reruns).
    #[arg(long, global = true)]
    no_timestamp: bool,
    /// Write machine-readable JSON to this path ("-" for stdout).
    #[arg(long, global = true)]
    json: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Float,
    Auto,
}

#[derive(Subcommand)]
enum Cmd {
    /// Packing certificates and triangulations.
    Pack {
        #[command(subcommand)]
        cmd: PackCmd,
    },
    /// Interval exchange transformations.
    Iet {
        #[command(subcommand)]
        cmd: IetCmd,
    },
    /// Circle rotations and continued fractions.
    Rot {
        #[command(subcommand)]
        cmd: RotCmd,
    },
    /// Monte-Carlo recurrence experiments.
    Recur {
        #[command(subcommand)]
        cmd: RecurCmd,
    },
    /// Lattice generators.
    Lattice {
        #[command(subcommand)]
        cmd: LatticeCmd,
    },
}

#[derive(Subcommand)]
enum PackCmd {
    /// Hull packing bound #Γ ≤ A/√5 + p/2 + 1 on the δ-normalized set.
    Bound {
        /// CSV point file: one `x,y` per line.
        #[arg(long)]
        points: String,
    },
    /// Rectangle bound s ≤ A'/√5 + √(2A') + 1 and its density form.
    Rect {
        #[arg(long)]
        points: String,
        /// Rectangle as x0,y0,x1,y1 (numeric literals).
        #[arg(long)]
        rect: String,
        /// Density-form epsilon in (0, 1/2).
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
    },
    /// L∞-Delaunay triangulation (CSV edge list, optional SVG).
    Delaunay {
        #[arg(long)]
        points: String,
        /// Write the edge list CSV here ("-" for stdout).
        #[arg(long)]
        edges: Option<String>,
        /// Write an SVG rendering here.
        #[arg(long)]
        svg: Option<String>,
    },
}

#[derive(Args)]
struct IetSpecArg {
    /// IET spec JSON: {"permutation": [..], "lengths": ["phi","1",..]}.
    #[arg(long)]
    spec: String,
}

#[derive(Subcommand)]
enum IetCmd {
    /// Stream n, ε_n, n·ε_n/|λ| as CSV.
    Eps {
        #[command(flatten)]
        spec: IetSpecArg,
        #[arg(long, default_value_t = 10_000)]
        horizon: usize,
        /// Write the CSV here ("-" for stdout).
        #[arg(long)]
        out: Option<String>,
    },
    /// Lagrange constant estimate L(T) = 1/liminf n·ε_n/|λ|.
    Lagrange {
        #[command(flatten)]
        spec: IetSpecArg,
        #[arg(long, default_value_t = 10_000)]
        horizon: usize,
    },
    /// Dirichlet constant estimate D(T) = liminf |λ|/(n·ε_n).
    Dirichlet {
        #[command(flatten)]
        spec: IetSpecArg,
        #[arg(long, default_value_t = 10_000)]
        horizon: usize,
    },
    /// Finite-depth Keane (no saddle connection) certificate.
    Keane {
        #[command(flatten)]
        spec: IetSpecArg,
        #[arg(long, default_value_t = 10_000)]
        depth: usize,
    },
}

#[derive(Subcommand)]
enum RotCmd {
    /// Continued fraction expansion of α.
    Cf {
        #[arg(long)]
        alpha: String,
        /// Maximum number of partial quotients.
        #[arg(long, default_value_t = 40)]
        count: usize,
    },
    /// Stream q, q·‖qα‖, is_convergent as CSV.
    Hurwitz {
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 10_000)]
        horizon: u64,
        #[arg(long)]
        out: Option<String>,
    },
    /// Lagrange constant of the rotation R_α.
    Lagrange {
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 10_000)]
        horizon: u64,
    },
}

#[derive(Subcommand)]
enum RecurCmd {
    /// Fraction of sampled points with running min n·|Tⁿx−x|/|λ| ≤ 1/√5+tol.
    Thm12 {
        #[command(flatten)]
        spec: IetSpecArg,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 100_000)]
        horizon: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.01)]
        tol: f64,
        /// Grid sampling only (default interleaves grid and random).
        #[arg(long, conflicts_with = "random")]
        grid: bool,
        /// Random sampling only.
        #[arg(long)]
        random: bool,
        /// Run every orbit to the full horizon (no early exit); the
        /// histogram is then uncensored.
        #[arg(long)]
        full_orbits: bool,
        /// Write the running-minimum histogram as CSV (bin_lo,bin_hi,count).
        #[arg(long)]
        histogram: Option<String>,
    },
    /// Estimate μ(V_r) for the badly recurrent set V_r across horizons.
    Prop31 {
        #[command(flatten)]
        spec: IetSpecArg,
        /// Subinterval of the normalized domain as `a,b` ⊆ [0,1).
        #[arg(long, default_value = "0,0.5")]
        v: String,
        /// Comma-separated thresholds r.
        #[arg(long, default_value = "0.6,0.8,1.0")]
        r: String,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 100_000)]
        horizon: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the per-horizon estimates as CSV (r,horizon,mu_estimate).
        #[arg(long)]
        estimates: Option<String>,
    },
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Points of the golden lattice g_t·Λ with sup-norm ≤ bound.
    Golden {
        /// Sup-norm bound (numeric literal).
        #[arg(long)]
        bound: String,
        /// Flow parameter as stretch factor eᵗ (numeric literal), default 1.
        #[arg(long, default_value = "1")]
        stretch: String,
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Debug)]
enum CliError {
    /// Input/precondition problem → exit 1.
    Input(String),
    /// Certified inequality violation in exact mode → exit 2.
    Violation(String),
}

impl CliError {
    fn input(e: impl std::fmt::Display) -> Self {
        CliError::Input(e.to_string())
    }
}

type CliResult = Result<(), CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = OutputCfg {
        timestamp: !cli.no_timestamp,
        json: cli.json.clone(),
        precision_bits: std::env::var("NNORM_PRECISION_BITS")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(53),
    };
    match dispatch(cli, &out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Violation(msg)) => {
            eprintln!("violation: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Loads a point file and forces the requested mode.
fn load_points(path: &str, mode: Mode) -> Result<ParsedPoints, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))?;
    let parsed = parse_point_file(&text).map_err(CliError::input)?;
    Ok(match (mode, parsed) {
        (Mode::Exact, ParsedPoints::Float(_)) => {
            return Err(CliError::Input(
                "exact mode requested but the file contains decimal literals".into(),
            ))
        }
        (Mode::Float, ParsedPoints::Exact(set)) => ParsedPoints::Float(PointSet::new(
            set.points
                .iter()
                .map(|p| nnorm::ngeom::Point2::new(F64::new(p.x.to_f64()), F64::new(p.y.to_f64())))
                .collect(),
        )),
        (_, parsed) => parsed,
    })
}

/// An IET in whichever mode the spec literals dictate.
enum AnyIet {
    Exact(Iet<QF5>),
    Float(Iet<F64>),
}

fn load_iet(path: &str, mode: Mode) -> Result<AnyIet, CliError> {
    #[derive(serde::Deserialize)]
    struct Spec {
        permutation: Vec<usize>,
        lengths: Vec<String>,
    }
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))?;
    let spec: Spec = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("bad IET spec {path}: {e}")))?;
    let perm = Permutation::new(spec.permutation).map_err(CliError::input)?;
    let values: Vec<Value> = spec
        .lengths
        .iter()
        .map(|s| parse_literal(s))
        .collect::<Result<_, _>>()
        .map_err(CliError::input)?;
    let all_exact = values.iter().all(Value::is_exact);
    let want_exact = match mode {
        Mode::Exact => {
            if !all_exact {
                return Err(CliError::Input(
                    "exact mode requested but lengths contain decimal literals".into(),
                ));
            }
            true
        }
        Mode::Float => false,
        Mode::Auto => all_exact,
    };
    if want_exact {
        let lengths: Vec<QF5> = values
            .into_iter()
            .map(|v| match v {
                Value::Exact(q) => q,
                Value::Float(_) => unreachable!(),
            })
            .collect();
        Ok(AnyIet::Exact(
            Iet::new(perm, lengths).map_err(CliError::input)?,
        ))
    } else {
        let lengths: Vec<F64> = values.iter().map(|v| F64::new(v.to_f64())).collect();
        Ok(AnyIet::Float(
            Iet::new(perm, lengths).map_err(CliError::input)?,
        ))
    }
}

fn parse_literal_cli(s: &str) -> Result<Value, CliError> {
    parse_literal(s).map_err(CliError::input)
}

fn dispatch(cli: Cli, out: &OutputCfg) -> CliResult {
    match cli.cmd {
        Cmd::Pack { cmd } => match cmd {
            PackCmd::Bound { points } => pack_bound(&points, cli.mode, out),
            PackCmd::Rect {
                points,
                rect,
                epsilon,
            } => pack_rect(&points, &rect, epsilon, cli.mode, out),
            PackCmd::Delaunay { points, edges, svg } => {
                pack_delaunay(&points, edges.as_deref(), svg.as_deref(), cli.mode, out)
            }
        },
        Cmd::Iet { cmd } => match cmd {
            IetCmd::Eps {
                spec,
                horizon,
                out: csv,
            } => iet_eps(&spec.spec, horizon, csv.as_deref(), cli.mode),
            IetCmd::Lagrange { spec, horizon } => iet_lagrange(&spec.spec, horizon, cli.mode, out),
            IetCmd::Dirichlet { spec, horizon } => {
                iet_dirichlet(&spec.spec, horizon, cli.mode, out)
            }
            IetCmd::Keane { spec, depth } => iet_keane(&spec.spec, depth, cli.mode, out),
        },
        Cmd::Rot { cmd } => match cmd {
            RotCmd::Cf { alpha, count } => rot_cf(&alpha, count, cli.mode, out),
            RotCmd::Hurwitz {
                alpha,
                horizon,
                out: csv,
            } => rot_hurwitz(&alpha, horizon, csv.as_deref(), cli.mode),
            RotCmd::Lagrange { alpha, horizon } => rot_lagrange(&alpha, horizon, cli.mode, out),
        },
        Cmd::Recur { cmd } => match cmd {
            RecurCmd::Thm12 {
                spec,
                samples,
                horizon,
                seed,
                tol,
                grid,
                random,
                full_orbits,
                histogram,
            } => {
                let sampling = if grid {
                    Sampling::Grid
                } else if random {
                    Sampling::Random
                } else {
                    Sampling::GridAndRandom
                };
                recur_thm12(
                    &spec.spec,
                    samples,
                    horizon,
                    seed,
                    tol,
                    sampling,
                    !full_orbits,
                    histogram.as_deref(),
                    out,
                )
            }
            RecurCmd::Prop31 {
                spec,
                v,
                r,
                samples,
                horizon,
                seed,
                estimates,
            } => recur_prop31(
                &spec.spec,
                &v,
                &r,
                samples,
                horizon,
                seed,
                estimates.as_deref(),
                out,
            ),
        },
        Cmd::Lattice { cmd } => match cmd {
            LatticeCmd::Golden {
                bound,
                stretch,
                out: csv,
            } => lattice_golden(&bound, &stretch, csv.as_deref(), cli.mode),
        },
    }
}

fn pack_bound(points: &str, mode: Mode, out: &OutputCfg) -> CliResult {
    match load_points(points, mode)? {
        ParsedPoints::Exact(set) => {
            let report = packing_bound(&set).map_err(CliError::input)?;
            let slack_negative = matches!(&report.slack, Metric::Field(v) if v.signum_i() < 0);
            print_pack_report(&report, true, out);
            json_summary(out, "pack-bound", &report)?;
            if slack_negative {
                return Err(CliError::Violation(format!(
                    "exact packing slack is negative: {}",
                    report.slack.to_f64()
                )));
            }
            Ok(())
        }
        ParsedPoints::Float(set) => {
            let report = packing_bound(&set).map_err(CliError::input)?;
            print_pack_report(&report, false, out);
            json_summary(out, "pack-bound", &report)
        }
    }
}

fn print_pack_report<S: Scalar>(
    report: &nnorm::packing::PackingReport<S>,
    exact: bool,
    out: &OutputCfg,
) {
    let bits = out.precision_bits;
    let fmt_metric = |m: &Metric<S>| -> String {
        match m {
            Metric::Field(v) => format!("{} (~{})", v.literal(), v.to_f64_bits(bits)),
            Metric::Radical { value, err } => format!("{value} (± {err:.2e})"),
        }
    };
    println!(
        "points:      {} ({})",
        report.s,
        if exact { "exact" } else { "float" }
    );
    if let Some(d) = &report.delta_sq {
        println!("delta^2:     {} (~{})", d.literal(), d.to_f64_bits(bits));
    }
    println!(
        "area A:      {} (~{})",
        report.area.literal(),
        report.area.to_f64_bits(bits)
    );
    println!("N-perim p:   {}", fmt_metric(&report.nperimeter));
    println!("bound:       {}", fmt_metric(&report.bound));
    println!("slack:       {}", fmt_metric(&report.slack));
    println!("certified:   {}", report.certified_nonneg);
    if exact {
        println!(
            "equality:    {} (golden subset: {:?})",
            report.equality, report.golden_subset
        );
    } else {
        println!("near-equality: {}", report.near_equality);
    }
}

fn parse_rect_values(rect: &str) -> Result<Vec<Value>, CliError> {
    let parts: Vec<&str> = rect.split(',').collect();
    if parts.len() != 4 {
        return Err(CliError::Input("--rect wants x0,y0,x1,y1".into()));
    }
    parts.iter().map(|p| parse_literal_cli(p)).collect()
}

fn pack_rect(points: &str, rect: &str, epsilon: f64, mode: Mode, out: &OutputCfg) -> CliResult {
    let vals = parse_rect_values(rect)?;
    match load_points(points, mode)? {
        ParsedPoints::Exact(set) if vals.iter().all(Value::is_exact) => {
            let q: Vec<QF5> = vals
                .iter()
                .map(|v| match v {
                    Value::Exact(x) => x.clone(),
                    _ => unreachable!(),
                })
                .collect();
            let rect = Rect::new(q[0].clone(), q[1].clone(), q[2].clone(), q[3].clone())
                .map_err(CliError::input)?;
            let report = rect_packing_bound(&set, &rect, epsilon).map_err(CliError::input)?;
            print_rect_report(&report);
            json_summary(out, "pack-rect", &report)
        }
        parsed => {
            let set = match parsed {
                ParsedPoints::Float(set) => set,
                ParsedPoints::Exact(set) => PointSet::new(
                    set.points
                        .iter()
                        .map(|p| {
                            nnorm::ngeom::Point2::new(
                                F64::new(p.x.to_f64()),
                                F64::new(p.y.to_f64()),
                            )
                        })
                        .collect(),
                ),
            };
            let f: Vec<F64> = vals.iter().map(|v| F64::new(v.to_f64())).collect();
            let rect = Rect::new(f[0], f[1], f[2], f[3]).map_err(CliError::input)?;
            let report = rect_packing_bound(&set, &rect, epsilon).map_err(CliError::input)?;
            print_rect_report(&report);
            json_summary(out, "pack-rect", &report)
        }
    }
}

fn print_rect_report<S: Scalar>(r: &nnorm::packing::RectReport<S>) {
    println!("points:        {}", r.s);
    println!("rect area:     {}", r.rect_area.to_f64());
    println!("delta^2:       {}", r.delta_sq.to_f64());
    println!("A' = A/δ²:     {}", r.a_prime.to_f64());
    println!("bound1:        {} (holds: {})", r.bound1, r.bound1_holds);
    println!("hull bound:    {}", r.hull_bound);
    println!(
        "epsilon {}: c1={} c2={} (proof variant: {})",
        r.epsilon, r.c1, r.c2, r.c2_proof_variant
    );
    println!(
        "density bound: {} (holds: {}, certified by {:?})",
        r.rect2_bound, r.rect2_holds, r.certified_by
    );
}

fn pack_delaunay(
    points: &str,
    edges: Option<&str>,
    svg: Option<&str>,
    mode: Mode,
    out: &OutputCfg,
) -> CliResult {
    match load_points(points, mode)? {
        ParsedPoints::Exact(set) => {
            let t = nnorm::delaunay::linf_delaunay(&set).map_err(CliError::input)?;
            delaunay_outputs(&t, edges, svg, out)
        }
        ParsedPoints::Float(set) => {
            let t = nnorm::delaunay::linf_delaunay(&set).map_err(CliError::input)?;
            delaunay_outputs(&t, edges, svg, out)
        }
    }
}

fn delaunay_outputs<S: Scalar>(
    t: &nnorm::delaunay::Triangulation<S>,
    edges: Option<&str>,
    svg: Option<&str>,
    out: &OutputCfg,
) -> CliResult {
    let checks = nnorm::delaunay::structural_checks(t);
    let decomposition = nnorm::delaunay::boundary_decomposition(t).map_err(CliError::input)?;
    println!("points:     {}", t.points.len());
    println!("triangles:  {}", t.triangles.len());
    println!("boundary:   {} vertices", t.boundary.len());
    println!(
        "classes:    special={:?} bad={} good={} unclassified={}",
        decomposition.special,
        decomposition.s_bad,
        decomposition.s_good,
        decomposition.unclassified.len()
    );
    println!(
        "identity:   {} (triangles = 2·good + bad)",
        decomposition.identity_holds
    );
    println!(
        "N-length:   boundary {} <= hull {}",
        checks.boundary_nlength, checks.hull_nlength
    );
    if let Some(path) = edges {
        let mut csv = String::from("i,j,kind\n");
        for (&(a, b), &count) in &t.edge_counts() {
            let kind = if count == 1 { "boundary" } else { "interior" };
            csv.push_str(&format!("{a},{b},{kind}\n"));
        }
        emit(path, &csv)?;
    }
    if let Some(path) = svg {
        emit(path, &output::triangulation_svg(t))?;
    }
    json_summary(
        out,
        "pack-delaunay",
        &serde_json::json!({
            "triangles": t.triangles,
            "boundary": t.boundary,
            "checks": checks,
            "decomposition": decomposition,
        }),
    )
}

fn iet_eps(spec: &str, horizon: usize, csv: Option<&str>, mode: Mode) -> CliResult {
    fn run<S: Scalar>(iet: &Iet<S>, horizon: usize) -> String {
        let mut out = String::from("n,eps_n,n_eps_n_over_total\n");
        let mut stream = EpsilonStream::new(iet);
        for _ in 0..horizon {
            let step = stream.step();
            out.push_str(&format!(
                "{},{},{}\n",
                step.n,
                step.eps.literal(),
                step.scaled.literal()
            ));
        }
        out
    }
    let csv_text = match load_iet(spec, mode)? {
        AnyIet::Exact(iet) => run(&iet, horizon),
        AnyIet::Float(iet) => run(&iet, horizon),
    };
    emit(csv.unwrap_or("-"), &csv_text)
}

fn iet_lagrange(spec: &str, horizon: usize, mode: Mode, out: &OutputCfg) -> CliResult {
    match load_iet(spec, mode)? {
        AnyIet::Exact(iet) => {
            let est = lagrange_estimate(&iet, horizon);
            print_lagrange(&est);
            json_summary(out, "iet-lagrange", &est)
        }
        AnyIet::Float(iet) => {
            let est = lagrange_estimate(&iet, horizon);
            print_lagrange(&est);
            json_summary(out, "iet-lagrange", &est)
        }
    }
}

fn print_lagrange<S: Scalar>(est: &nnorm::iet::LagrangeEstimate<S>) {
    println!("horizon:          {}", est.horizon);
    println!(
        "inf bracket:      {} at n = {}",
        est.inf_bracket.to_f64(),
        est.inf_bracket_at
    );
    println!("liminf estimate:  {}", est.liminf_estimate);
    println!("L estimate:       {}", est.l_estimate);
    println!("converged:        {}", est.converged);
    if est.divergent {
        println!("ε_n reached zero: Lagrange constant diverges");
    }
}

fn iet_dirichlet(spec: &str, horizon: usize, mode: Mode, out: &OutputCfg) -> CliResult {
    match load_iet(spec, mode)? {
        AnyIet::Exact(iet) => {
            let est = dirichlet_estimate(&iet, horizon);
            print_dirichlet(&est);
            json_summary(out, "iet-dirichlet", &est)
        }
        AnyIet::Float(iet) => {
            let est = dirichlet_estimate(&iet, horizon);
            print_dirichlet(&est);
            json_summary(out, "iet-dirichlet", &est)
        }
    }
}

fn print_dirichlet<S: Scalar>(est: &nnorm::iet::DirichletEstimate<S>) {
    println!("horizon:          {}", est.horizon);
    println!("limsup bracket:   {}", est.limsup_bracket.to_f64());
    println!("D estimate:       {}", est.d_estimate);
    println!("converged:        {}", est.converged);
    if est.divergent {
        println!("ε_n reached zero: Dirichlet constant diverges");
    }
}

fn iet_keane(spec: &str, depth: usize, mode: Mode, out: &OutputCfg) -> CliResult {
    let result = match load_iet(spec, mode)? {
        AnyIet::Exact(iet) => keane_check(&iet, depth),
        AnyIet::Float(iet) => keane_check(&iet, depth),
    };
    match &result {
        KeaneResult::Ok { depth } => println!("ok up to depth {depth} (finite certificate only)"),
        KeaneResult::Connection { n, from, to } => {
            println!("connection: T^{n}(x_{from}) = x_{to}")
        }
        KeaneResult::Reducible => println!("permutation is reducible"),
    }
    json_summary(out, "iet-keane", &result)
}

fn rot_cf(alpha: &str, count: usize, mode: Mode, out: &OutputCfg) -> CliResult {
    let cf = match (parse_literal_cli(alpha)?, mode) {
        (Value::Exact(_), Mode::Float) => {
            let v = parse_literal_cli(alpha)?.to_f64();
            cf_expand_f64(v, count)
        }
        (Value::Exact(q), _) => cf_expand_exact(&q, count),
        (Value::Float(_), Mode::Exact) => {
            return Err(CliError::Input(
                "exact mode requested but alpha is a decimal literal".into(),
            ))
        }
        (Value::Float(v), _) => cf_expand_f64(v, count),
    };
    let shown = if cf.period.is_some() {
        count.max(1)
    } else {
        cf.partials.len()
    };
    let mut quotients: Vec<String> = (1..=shown)
        .map_while(|i| cf.quotient(i).map(|a| a.to_string()))
        .collect();
    if cf.period.is_some() {
        quotients.push("...".to_string());
    }
    println!("[{}; {}]", cf.a0, quotients.join(", "));
    if let Some((start, len)) = cf.period {
        println!("eventually periodic: period of length {len} from index {start}");
    }
    if cf.terminated {
        println!("terminates (rational)");
    }
    if cf.truncated_by_precision {
        println!("truncated: residual error would corrupt further quotients");
    }
    json_summary(out, "rot-cf", &cf)
}

fn rot_hurwitz(alpha: &str, horizon: u64, csv: Option<&str>, mode: Mode) -> CliResult {
    let mut text = String::from("q,value,is_convergent\n");
    match (parse_literal_cli(alpha)?, mode) {
        (Value::Exact(q), m) if m != Mode::Float => {
            let convergents = convergent_denominators_exact(&q, horizon);
            for pt in HurwitzStream::new(&q, horizon, convergents) {
                text.push_str(&format!(
                    "{},{},{}\n",
                    pt.q,
                    pt.value.literal(),
                    pt.is_convergent
                ));
            }
        }
        (v, Mode::Exact) => {
            let _ = v;
            return Err(CliError::Input(
                "exact mode requested but alpha is a decimal literal".into(),
            ));
        }
        (v, _) => {
            let a = v.to_f64();
            let convergents = convergent_denominators_f64(a, horizon);
            for pt in HurwitzStream::new(&F64::new(a), horizon, convergents) {
                text.push_str(&format!(
                    "{},{},{}\n",
                    pt.q,
                    pt.value.literal(),
                    pt.is_convergent
                ));
            }
        }
    }
    emit(csv.unwrap_or("-"), &text)
}

fn rot_lagrange(alpha: &str, horizon: u64, mode: Mode, out: &OutputCfg) -> CliResult {
    match (parse_literal_cli(alpha)?, mode) {
        (Value::Exact(q), m) if m != Mode::Float => {
            let r = lagrange_rotation_exact(&q, horizon);
            println!("liminf q·‖qα‖:  {}", r.liminf_estimate);
            println!("L(α) estimate:  {}", r.l_estimate);
            if let Some(pb) = &r.periodic_bracket {
                println!("periodic bracket: {}", pb.to_f64());
            }
            if r.divergent {
                println!("α is rational: L diverges");
            }
            json_summary(out, "rot-lagrange", &r)
        }
        (_, Mode::Exact) => Err(CliError::Input(
            "exact mode requested but alpha is a decimal literal".into(),
        )),
        (v, _) => {
            let r = lagrange_rotation_f64(v.to_f64(), horizon);
            println!("liminf q·‖qα‖:  {}", r.liminf_estimate);
            println!("L(α) estimate:  {}", r.l_estimate);
            if r.divergent {
                println!("α is rational: L diverges");
            }
            json_summary(out, "rot-lagrange", &r)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn recur_thm12(
    spec: &str,
    samples: usize,
    horizon: usize,
    seed: u64,
    tol: f64,
    sampling: Sampling,
    early_exit: bool,
    histogram: Option<&str>,
    out: &OutputCfg,
) -> CliResult {
    let iet = match load_iet(spec, Mode::Float)? {
        AnyIet::Float(iet) => iet,
        AnyIet::Exact(_) => unreachable!("float mode forced"),
    };
    let summary = theorem12_experiment(&iet, samples, horizon, seed, tol, sampling, early_exit);
    println!(
        "samples:   {} ({:?}, seed {}, rng {})",
        summary.samples, summary.sampling, summary.seed, summary.rng
    );
    println!("horizon:   {}", summary.horizon);
    println!(
        "threshold: 1/sqrt5 + {} = {}",
        summary.tol, summary.threshold
    );
    println!("fraction:  {}", summary.fraction_below);
    if !summary.failures.is_empty() {
        println!(
            "failures:  {:?} (extend the horizon to re-test)",
            summary.failures
        );
    }
    if let Some(path) = histogram {
        let mut csv = String::from("bin_lo,bin_hi,count\n");
        for (lo, hi, count) in &summary.histogram {
            csv.push_str(&format!("{lo},{hi},{count}\n"));
        }
        emit(path, &csv)?;
    }
    json_summary(out, "recur-thm12", &summary)
}

#[allow(clippy::too_many_arguments)]
fn recur_prop31(
    spec: &str,
    v: &str,
    r: &str,
    samples: usize,
    horizon: usize,
    seed: u64,
    estimates_csv: Option<&str>,
    out: &OutputCfg,
) -> CliResult {
    let iet = match load_iet(spec, Mode::Float)? {
        AnyIet::Float(iet) => iet,
        AnyIet::Exact(_) => unreachable!("float mode forced"),
    };
    let vs: Vec<f64> = v
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Input(format!("bad --v: {e}")))?;
    if vs.len() != 2 || !(0.0..1.0).contains(&vs[0]) || vs[1] > 1.0 || vs[0] >= vs[1] {
        return Err(CliError::Input("--v wants a,b with 0 <= a < b <= 1".into()));
    }
    let rs: Vec<f64> = r
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Input(format!("bad --r: {e}")))?;
    let rows = prop31_experiment(&iet, (vs[0], vs[1]), &rs, samples, horizon, seed);
    for row in &rows {
        println!(
            "r = {}: final μ(V_r) estimate {} <= bound {} (+2se {}), monotone {}",
            row.r,
            row.final_estimate,
            row.bound,
            row.bound + 2.0 * row.std_error,
            row.monotone
        );
        for (h, est) in &row.estimates {
            println!("    horizon {h}: {est}");
        }
    }
    if let Some(path) = estimates_csv {
        let mut csv = String::from("r,horizon,mu_estimate\n");
        for row in &rows {
            for (h, est) in &row.estimates {
                csv.push_str(&format!("{},{h},{est}\n", row.r));
            }
        }
        emit(path, &csv)?;
    }
    json_summary(out, "recur-prop31", &rows)
}

fn lattice_golden(bound: &str, stretch: &str, csv: Option<&str>, mode: Mode) -> CliResult {
    let bound_v = parse_literal_cli(bound)?;
    let stretch_v = parse_literal_cli(stretch)?;
    let text = match (&bound_v, &stretch_v, mode) {
        (Value::Exact(b), Value::Exact(u), m) if m != Mode::Float => {
            let lat = GoldenLattice::with_stretch(u.clone()).map_err(CliError::input)?;
            let pts = lat.points_within(b).map_err(CliError::input)?;
            pts.to_csv()
        }
        (_, _, Mode::Exact) => {
            return Err(CliError::Input(
                "exact mode requested but a decimal literal was given".into(),
            ))
        }
        _ => {
            let lat = GoldenLattice::with_stretch(F64::new(stretch_v.to_f64()))
                .map_err(CliError::input)?;
            let pts = lat
                .points_within(&F64::new(bound_v.to_f64()))
                .map_err(CliError::input)?;
            pts.to_csv()
        }
    };
    emit(csv.unwrap_or("-"), &text)
}
