//! Batch command-line surface over the entanglement-geometry library:
//! fits classifier ellipsoids, classifies states, reproduces the
//! misclassification and bound-entanglement benchmarks, compares exact
//! and ellipsoidal distances, sweeps channel capacities and verifies the
//! communication protocols. Every run with the same configuration writes
//! byte-identical files apart from one timestamp comment.

mod grid;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use entgeo::convexgeo::project_to_ppt_set;
use entgeo::entdetect::{
    benchmark_base_ellipsoid, benchmark_cell, bloch_scale, bound_entanglement_sweep, classify,
    distance_comparison, fit_separable_mvce, horodecki_state, separable_axis_ensemble,
    Classification, DEFAULT_MVCE_EPS,
};
use entgeo::infochannel::{
    choi_cp_check, dmc_capacity, erasure_capacities, superdense_verify, teleport_verify,
};
use entgeo::io;
use entgeo::qstate::{
    bell_state, chsh_value, haar_vector, sample_state, stream_rng, DensityOperator, StateKind,
    PSD_TOL,
};

use grid::{parse_dims, parse_grid_arg, Grid};
use output::OutputFile;

#[derive(Parser)]
#[command(name = "entgeo", version, about = "Ellipsoidal entanglement detection benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit the separable-ensemble covering ellipsoid and write it as JSON.
    Fit(FitArgs),
    /// Classify a state file against a fitted ellipsoid.
    Classify(ClassifyArgs),
    /// False-positive/false-negative counts against the PPT oracle.
    Benchmark(BenchmarkArgs),
    /// Detection sweep over the bound-entangled family.
    BeSweep(BeSweepArgs),
    /// Exact PPT-set distances next to ellipsoid distances.
    DistCompare(DistCompareArgs),
    /// Channel capacities: erasure closed forms or a Kraus channel file.
    Capacity(CapacityArgs),
    /// Verify superdense coding, teleportation and the CHSH peak.
    Protocol(ProtocolArgs),
    /// Inspect a state (named or from file) and optionally emit it.
    Info(InfoArgs),
}

#[derive(Args)]
struct FitArgs {
    /// Subsystem dimensions, e.g. 2x2, 2x3, 3x3
    #[arg(long, value_parser = parse_dims)]
    dims: (usize, usize),
    /// Ensemble scale in (0, 1]
    #[arg(long, default_value_t = 1.0)]
    eta: f64,
    /// Duality gap of the ellipsoid fit
    #[arg(long, default_value_t = DEFAULT_MVCE_EPS)]
    eps: f64,
    /// Output JSON path
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ClassifyArgs {
    /// State JSON file
    #[arg(long)]
    state: PathBuf,
    /// Fitted ellipsoid JSON file
    #[arg(long)]
    ellipsoid: PathBuf,
}

#[derive(Args)]
struct BenchmarkArgs {
    #[arg(long, value_parser = parse_dims)]
    dims: (usize, usize),
    /// Scale grid, e.g. 0.1..1.0:0.1 or 0.5 or 0.5,1.0
    #[arg(long, value_parser = parse_grid_arg)]
    eta: Grid,
    /// Samples per class and per grid cell
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_MVCE_EPS)]
    eps: f64,
    #[arg(long, default_value = "fpfn.csv")]
    out: PathBuf,
}

#[derive(Args)]
struct BeSweepArgs {
    #[arg(long, value_parser = parse_grid_arg)]
    eta: Grid,
    /// Number of uniform points of the family parameter in [0.001, 1]
    #[arg(long = "a-grid", default_value_t = 1000)]
    a_grid: usize,
    #[arg(long, default_value_t = DEFAULT_MVCE_EPS)]
    eps: f64,
    #[arg(long, default_value = "be_sweep.csv")]
    out: PathBuf,
}

#[derive(Args)]
struct DistCompareArgs {
    /// Number of NPT samples
    #[arg(long, default_value_t = 100)]
    n: usize,
    #[arg(long, value_parser = parse_grid_arg, default_value = "0.5,1.0")]
    eta: Grid,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_MVCE_EPS)]
    eps: f64,
    #[arg(long, default_value = "dist_cmp.csv")]
    out: PathBuf,
}

#[derive(Args)]
struct CapacityArgs {
    /// Sweep the quantum erasure channel closed forms
    #[arg(long, conflicts_with = "kraus")]
    erasure: bool,
    /// Erasure probability grid
    #[arg(long = "eps-grid", value_parser = parse_grid_arg, default_value = "0..1:0.01")]
    eps_grid: Grid,
    /// Kraus channel JSON file: CP check plus induced classical capacity
    #[arg(long)]
    kraus: Option<PathBuf>,
    /// Capacity bracket tolerance
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, default_value = "capacities.csv")]
    out: PathBuf,
}

#[derive(Args)]
struct ProtocolArgs {
    /// Random pure inputs for the teleportation run
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct InfoArgs {
    /// Named state: bell1..bell4, singlet, maxmixed:AxB, horodecki:A,
    /// sample:KIND:AxB:SEED with KIND one of separable, entangled, pure, mixed
    #[arg(long, conflicts_with = "file")]
    state: Option<String>,
    /// State JSON file
    #[arg(long)]
    file: Option<PathBuf>,
    /// Write the state back out as JSON
    #[arg(long)]
    emit: Option<PathBuf>,
}

/// Config errors exit with 2, solver failures with 3.
fn exit_code_for(err: &entgeo::Error) -> u8 {
    match err {
        entgeo::Error::NoConvergence { .. } | entgeo::Error::DegeneratePoints { .. } => 3,
        _ => 2,
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<entgeo::Error> for Failure {
    fn from(err: entgeo::Error) -> Self {
        Failure {
            code: exit_code_for(&err),
            message: err.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(err: std::io::Error) -> Self {
        Failure {
            code: 2,
            message: err.to_string(),
        }
    }
}

impl Failure {
    fn config(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("ENTGEO_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Fit(args) => cmd_fit(args),
        Command::Classify(args) => cmd_classify(args),
        Command::Benchmark(args) => cmd_benchmark(args),
        Command::BeSweep(args) => cmd_be_sweep(args),
        Command::DistCompare(args) => cmd_dist_compare(args),
        Command::Capacity(args) => cmd_capacity(args),
        Command::Protocol(args) => cmd_protocol(args),
        Command::Info(args) => cmd_info(args),
    }
}

fn cmd_fit(args: FitArgs) -> Result<(), Failure> {
    let (da, db) = args.dims;
    let ensemble = separable_axis_ensemble(da, db, args.eta)?;
    let e = fit_separable_mvce(da, db, args.eta, args.eps)?;
    io::save_ellipsoid(&args.out, &e, args.eps, args.eta, args.dims)?;
    println!(
        "fitted {}x{} ensemble of {} vectors at eta={} into {}",
        da,
        db,
        ensemble.len(),
        args.eta,
        args.out.display()
    );
    Ok(())
}

fn cmd_classify(args: ClassifyArgs) -> Result<(), Failure> {
    let rho = io::load_state(&args.state)?;
    let (e, meta) = io::load_ellipsoid(&args.ellipsoid)?;
    let (label, distance) = classify(&rho, &e)?;
    let verdict = match label {
        Classification::Separable => "separable",
        Classification::Entangled => "entangled",
    };
    println!("{verdict} distance={distance:.12} eta={}", meta.ensemble_norm);
    Ok(())
}

fn cmd_benchmark(args: BenchmarkArgs) -> Result<(), Failure> {
    use rayon::prelude::*;
    let (da, db) = args.dims;
    let base = benchmark_base_ellipsoid(da, db, args.eps)?;
    let rows = args
        .eta
        .0
        .par_iter()
        .enumerate()
        .map(|(ei, &eta)| benchmark_cell(&base, da, db, eta, ei, args.n, args.seed))
        .collect::<entgeo::Result<Vec<_>>>()?;

    let ensemble = separable_axis_ensemble(da, db, 1.0)?;
    let mut file = OutputFile::new(&args.out);
    file.meta(format!(
        "seed={} eps={} eta={} dims={}x{} ensemble={} samples={}",
        args.seed,
        args.eps,
        grid::format_grid(&args.eta.0),
        da,
        db,
        ensemble.len(),
        args.n
    ));
    file.line("norm,false_positives,false_negatives,sample_size,seed");
    for row in &rows {
        file.line(format!(
            "{},{},{},{},{}",
            row.norm, row.false_positives, row.false_negatives, row.sample_size, row.seed
        ));
    }
    file.write()?;
    println!("wrote {} rows to {}", rows.len(), args.out.display());
    Ok(())
}

fn cmd_be_sweep(args: BeSweepArgs) -> Result<(), Failure> {
    if args.a_grid < 2 {
        return Err(Failure::config("a-grid needs at least 2 points"));
    }
    let a_grid: Vec<f64> = (0..args.a_grid)
        .map(|k| 0.001 + k as f64 * (0.999 / (args.a_grid - 1) as f64))
        .collect();
    let rows = bound_entanglement_sweep(&args.eta.0, &a_grid, args.eps)?;

    let mut file = OutputFile::new(&args.out);
    file.meta(format!(
        "eps={} eta={} a_grid={} ensemble=144 dims=3x3 local_radius={}",
        args.eps,
        grid::format_grid(&args.eta.0),
        args.a_grid,
        entgeo::entdetect::BE_SWEEP_LOCAL_RADIUS
    ));
    file.line("norm,a,distance,detected");
    for row in &rows {
        for (k, &a) in a_grid.iter().enumerate() {
            let d = row.distances[k];
            file.line(format!(
                "{},{},{},{}",
                row.norm,
                a,
                d,
                u8::from(d > entgeo::entdetect::DETECTION_THRESHOLD)
            ));
        }
        println!("eta {}: detected {}/{}", row.norm, row.detected, row.total);
    }
    file.write()?;
    Ok(())
}

fn cmd_dist_compare(args: DistCompareArgs) -> Result<(), Failure> {
    let rows = distance_comparison(args.n, &args.eta.0, args.seed, args.eps)?;
    let mut file = OutputFile::new(&args.out);
    file.meta(format!(
        "seed={} eps={} eta={} dims=2x2 samples={} bloch_scale={}",
        args.seed,
        args.eps,
        grid::format_grid(&args.eta.0),
        args.n,
        bloch_scale(4)
    ));
    file.line("state_id,exact,eta,mvce_distance");
    for row in &rows {
        for &(eta, d) in &row.mvce {
            file.line(format!("{},{},{},{}", row.state_id, row.exact, eta, d));
        }
    }
    file.write()?;
    println!("wrote {} states to {}", rows.len(), args.out.display());
    Ok(())
}

fn cmd_capacity(args: CapacityArgs) -> Result<(), Failure> {
    if let Some(path) = &args.kraus {
        let ch = io::load_channel(path)?;
        let (cp, min_eig) = choi_cp_check(&ch);
        let t = ch.induced_classical_transition()?;
        let res = dmc_capacity(&t, args.tol)?;
        println!(
            "channel {}->{}: completely_positive={} (choi min eig {:.3e})",
            ch.dim_in(),
            ch.dim_out(),
            cp,
            min_eig
        );
        let probs: Vec<String> = res
            .input
            .probs()
            .iter()
            .map(|p| format!("{p:.6}"))
            .collect();
        println!(
            "induced classical capacity C={:.9} bits at p*=[{}] ({} iterations)",
            res.capacity,
            probs.join(", "),
            res.iterations
        );
        return Ok(());
    }
    if !args.erasure {
        return Err(Failure::config("choose --erasure or --kraus FILE"));
    }
    let mut file = OutputFile::new(&args.out);
    file.meta(format!("eps_grid={}", grid::format_grid(&args.eps_grid.0)));
    file.line("epsilon,C,C_E");
    for &eps in &args.eps_grid.0 {
        let (c, ce) = erasure_capacities(eps)?;
        file.line(format!("{eps},{c},{ce}"));
    }
    file.write()?;
    println!(
        "wrote {} rows to {}",
        args.eps_grid.0.len(),
        args.out.display()
    );
    Ok(())
}

fn cmd_protocol(args: ProtocolArgs) -> Result<(), Failure> {
    let mut all_ok = true;

    let report = superdense_verify();
    let decoded = report
        .trials
        .iter()
        .filter(|t| t.decoded == t.message)
        .count();
    let ok = (report.bits_decoded - 2.0).abs() < 1e-12;
    all_ok &= ok;
    println!(
        "superdense: {} ({decoded}/4 messages, {} bits per qubit)",
        pass(ok),
        report.bits_decoded
    );

    let mut worst_fidelity: f64 = 1.0;
    let mut worst_prob: f64 = 0.0;
    for trial in 0..args.trials {
        let mut rng = stream_rng(args.seed, &[trial as u64]);
        let v = haar_vector(2, &mut rng);
        let phi = DensityOperator::from_pure(&v, vec![2])?;
        let rep = teleport_verify(&phi)?;
        for out in &rep.outcomes {
            worst_fidelity = worst_fidelity.min(out.fidelity);
            worst_prob = worst_prob.max((out.probability - 0.25).abs());
        }
    }
    let ok = (1.0 - worst_fidelity) < 1e-10 && worst_prob < 1e-10;
    all_ok &= ok;
    println!(
        "teleport: {} ({} random pure inputs, min fidelity {:.12}, max outcome-probability deviation {:.2e})",
        pass(ok),
        args.trials,
        worst_fidelity,
        worst_prob
    );

    let singlet = bell_state(4)?;
    let peak = chsh_value(&singlet, std::f64::consts::FRAC_PI_4)?;
    let ok = (peak - 2.0 * std::f64::consts::SQRT_2).abs() < 1e-9;
    all_ok &= ok;
    println!("chsh: {} (singlet at pi/4 gives {peak:.12})", pass(ok));

    let rate = entgeo::infochannel::distillation_rate(&singlet)?;
    let ok = (rate - 1.0).abs() < 1e-10;
    all_ok &= ok;
    println!("distillation: {} (singlet rate {rate:.12})", pass(ok));

    if all_ok {
        Ok(())
    } else {
        Err(Failure {
            code: 3,
            message: "protocol verification failed".into(),
        })
    }
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn named_state(name: &str) -> Result<DensityOperator, Failure> {
    match name {
        "bell1" => Ok(bell_state(1)?),
        "bell2" => Ok(bell_state(2)?),
        "bell3" => Ok(bell_state(3)?),
        "bell4" | "singlet" => Ok(bell_state(4)?),
        _ => {
            if let Some(rest) = name.strip_prefix("maxmixed:") {
                let (da, db) = parse_dims(rest).map_err(Failure::config)?;
                return Ok(DensityOperator::maximally_mixed(vec![da, db]));
            }
            if let Some(rest) = name.strip_prefix("horodecki:") {
                let a: f64 = rest
                    .parse()
                    .map_err(|_| Failure::config(format!("bad family parameter '{rest}'")))?;
                return Ok(horodecki_state(a)?);
            }
            if let Some(rest) = name.strip_prefix("sample:") {
                let parts: Vec<&str> = rest.split(':').collect();
                if parts.len() != 3 {
                    return Err(Failure::config("expected sample:KIND:AxB:SEED"));
                }
                let kind = match parts[0] {
                    "separable" => StateKind::Separable,
                    "entangled" => StateKind::EntangledFiltered,
                    "pure" => StateKind::PureHaar,
                    "mixed" => StateKind::MixedHs,
                    other => return Err(Failure::config(format!("unknown sample kind '{other}'"))),
                };
                let dims = parse_dims(parts[1]).map_err(Failure::config)?;
                let seed: u64 = parts[2]
                    .parse()
                    .map_err(|_| Failure::config(format!("bad seed '{}'", parts[2])))?;
                return Ok(sample_state(kind, dims, seed)?);
            }
            Err(Failure::config(format!("unknown state name '{name}'")))
        }
    }
}

fn cmd_info(args: InfoArgs) -> Result<(), Failure> {
    let rho = match (&args.state, &args.file) {
        (Some(name), None) => named_state(name)?,
        (None, Some(path)) => io::load_state(path)?,
        _ => return Err(Failure::config("choose exactly one of --state or --file")),
    };

    println!("dims: {:?}", rho.dims());
    println!("purity: {:.12}", rho.purity());
    println!("entropy_bits: {:.12}", rho.von_neumann_entropy());
    println!("bloch_norm: {:.12}", rho.to_bloch().norm());
    if rho.dims().len() == 2 {
        let (ppt, min_eig) = rho.is_ppt(PSD_TOL)?;
        println!("ppt: {ppt} (partial transpose min eig {min_eig:.12})");
        println!("majorization_separable: {}", rho.majorization_check()?);
        for (label, keep) in [("A", 0), ("B", 1)] {
            let s = rho.partial_trace(keep)?.von_neumann_entropy();
            println!("marginal_entropy_{label}: {s:.12}");
        }
        if rho.dims() == [2, 2] {
            let peak = chsh_value(&rho, std::f64::consts::FRAC_PI_4)?;
            println!("chsh_pi_over_4: {peak:.12}");
            let proj = project_to_ppt_set(&rho, 1e-9, 50_000)?;
            println!(
                "ppt_set_distance_frobenius: {:.12} (bloch {:.12})",
                proj.distance,
                proj.distance * bloch_scale(4)
            );
        }
    }
    if let Some(path) = &args.emit {
        io::save_state(path, &rho)?;
        println!("emitted: {}", path.display());
    }
    Ok(())
}
