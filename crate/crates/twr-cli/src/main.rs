//! `twr` — Thomas–Wigner rotation engine.
//!
//! Computes the rotation produced by composing non-collinear Lorentz boosts
//! two independent ways — algebraically from the boost matrices and
//! geometrically as the holonomy of parallel transport on the mass shell —
//! and cross-checks the two.
//!
//! Exit codes: 0 = success/pass, 1 = tolerance failure, 2 = usage or
//! domain error.

mod pathspec;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use twr_core::crosscheck::{compare_many, compare_precession, linspace};
use twr_core::lorentz::{
    canonical_angle_axis, rotation_to_angle_axis, su2_from_angle_axis, twr_of_two_boosts,
    velocity_add_general, Velocity3,
};
use twr_core::transport::holonomy_of_loop;
use twr_core::{CMat2, Mat3, Rotation3, ShellGeometryF, Vec3};

use report::{
    basis_name, emit, rotation_out, su2_out, Format, GridOut, HolonomyReport, PrecessionReport,
    RandomOut, ScenarioRow, SummaryOut, ValidateReport, WignerReport,
};

/// CLI-level error: everything here maps to exit code 2.
#[derive(Debug)]
pub enum CliError {
    /// Domain violation reported by the engine (superluminal speed,
    /// off-shell vector, chart singularity, open path, ...).
    Domain(twr_core::Error),
    /// Configuration or input-file problem.
    Config(String),
    /// I/O failure, with context.
    Io(String, std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Domain(e) => write!(f, "{e}"),
            CliError::Config(msg) => write!(f, "{msg}"),
            CliError::Io(ctx, e) => write!(f, "{ctx}: {e}"),
        }
    }
}

impl From<twr_core::Error> for CliError {
    fn from(e: twr_core::Error) -> Self {
        CliError::Domain(e)
    }
}

#[derive(Parser)]
#[command(
    name = "twr",
    version,
    about = "Thomas-Wigner rotations: boost algebra cross-checked against mass-shell holonomy",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Thomas precession: circular-orbit holonomy vs the closed form 2π(γ−1)
    Precession(PrecessionArgs),
    /// Rotation from composing two pure boosts (algebraic only)
    Wigner(WignerArgs),
    /// Holonomy of a momentum-space loop described in a JSON file
    Holonomy(HolonomyArgs),
    /// Cross-check campaign: geometric vs algebraic rotation over a speed grid
    Validate(ValidateArgs),
}

#[derive(Args)]
struct OutputArgs {
    /// Report format
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Output file (stdout when omitted); relative paths resolve against
    /// $TWR_OUTPUT_DIR when it is set
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PrecessionArgs {
    /// Orbital speed as a fraction of the speed of light, in [0, 1)
    #[arg(long, allow_negative_numbers = true)]
    speed: f64,
    /// Particle mass (sets the shell; the precession angle is mass-independent)
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
    /// Transport steps for the full orbit
    #[arg(long, default_value_t = 10_000)]
    steps: usize,
    /// Pass tolerance on angle/axis deviation (radians)
    #[arg(long, default_value_t = 1e-5)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct WignerArgs {
    /// First boost velocity (three components, fractions of c)
    #[arg(long, num_args = 3, value_names = ["X", "Y", "Z"], allow_negative_numbers = true)]
    v1: Vec<f64>,
    /// Second boost velocity (applied after the first)
    #[arg(long, num_args = 3, value_names = ["X", "Y", "Z"], allow_negative_numbers = true)]
    v2: Vec<f64>,
    /// Particle mass (the rotation itself is mass-independent)
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct HolonomyArgs {
    /// JSON path-description file
    #[arg(long)]
    path: PathBuf,
    /// Override the step count of every segment
    #[arg(long)]
    steps: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ValidateArgs {
    /// Smallest grid speed
    #[arg(long, default_value_t = 0.1)]
    grid_min: f64,
    /// Largest grid speed
    #[arg(long, default_value_t = 0.9)]
    grid_max: f64,
    /// Number of grid speeds per axis (the grid pairs each x-speed with
    /// each perpendicular y-speed)
    #[arg(long, default_value_t = 9)]
    grid_count: usize,
    /// Particle mass
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
    /// Transport steps per triangle edge
    #[arg(long, default_value_t = 10_000)]
    steps: usize,
    /// Pass tolerance on angle/axis deviation (radians)
    #[arg(long, default_value_t = 1e-5)]
    tol: f64,
    /// Number of additional random velocity pairs (general directions)
    #[arg(long, default_value_t = 0)]
    random: usize,
    /// Seed for the random pairs
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Precession(args) => cmd_precession(&args),
        Command::Wigner(args) => cmd_wigner(&args),
        Command::Holonomy(args) => cmd_holonomy(&args),
        Command::Validate(args) => cmd_validate(&args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn cmd_precession(args: &PrecessionArgs) -> Result<bool, CliError> {
    require_positive_tol(args.tol)?;
    require_steps(args.steps)?;
    let geom = ShellGeometryF::new(args.mass)?;
    let cmp = compare_precession(&geom, args.speed, args.steps, args.tol)?;
    let rep = PrecessionReport::new(&cmp, args.mass, args.steps);
    emit(&rep, args.output.format, args.output.out.as_deref())?;
    Ok(cmp.passed)
}

fn velocity_from_flag(name: &str, v: &[f64]) -> Result<Velocity3<f64>, CliError> {
    let [x, y, z]: [f64; 3] = v
        .try_into()
        .map_err(|_| CliError::Config(format!("--{name} needs exactly three components")))?;
    Velocity3::from_components(x, y, z)
        .map_err(|e| CliError::Config(format!("--{name} {x} {y} {z}: {e}")))
}

fn cmd_wigner(args: &WignerArgs) -> Result<bool, CliError> {
    let v1 = velocity_from_flag("v1", &args.v1)?;
    let v2 = velocity_from_flag("v2", &args.v2)?;
    // Mass only labels the shell; validate it anyway for a coherent CLI.
    ShellGeometryF::new(args.mass)?;
    let rotation: Rotation3<f64> = twr_of_two_boosts(&v1, &v2)?;
    let aa = canonical_angle_axis(&rotation_to_angle_axis(&rotation)?);
    let su2: CMat2<f64> = su2_from_angle_axis(&aa);
    let v12 = velocity_add_general(&v1, &v2);
    let rep = WignerReport {
        command: "wigner",
        scenario: "wigner".to_string(),
        mass: args.mass,
        v1: v1.components().0,
        v2: v2.components().0,
        composite_velocity: v12.components().0,
        angle: aa.angle,
        axis: aa.axis.0,
        rotation: rotation_out(&rotation),
        su2: su2_out(&su2),
    };
    emit(&rep, args.output.format, args.output.out.as_deref())?;
    Ok(true)
}

fn cmd_holonomy(args: &HolonomyArgs) -> Result<bool, CliError> {
    if let Some(steps) = args.steps {
        require_steps(steps)?;
    }
    let spec = pathspec::load(&args.path)?;
    if !spec.closed {
        return Err(CliError::Config(
            "holonomy needs a closed loop; the path file declares \"closed\": false".into(),
        ));
    }
    let resolved = pathspec::resolve(&spec, args.steps)?;
    let rep = match &resolved.path {
        None => {
            // Point loop (zero-radius circle): identity holonomy at the
            // rest momentum.
            let identity = Rotation3::<f64>(Mat3::identity());
            let aa = canonical_angle_axis(&rotation_to_angle_axis(&identity)?);
            HolonomyReport {
                command: "holonomy",
                scenario: "holonomy".to_string(),
                mass: spec.mass,
                basis: basis_name(twr_core::HolonomyBasis::RestCartesian),
                total_steps: resolved.total_steps,
                angle: aa.angle,
                axis: aa.axis.0,
                so3: rotation_out(&identity),
                su2: su2_out(&CMat2::identity()),
                convergence: 0.0,
            }
        }
        Some(path) => {
            let hol = holonomy_of_loop(&resolved.geom, path)?;
            HolonomyReport {
                command: "holonomy",
                scenario: "holonomy".to_string(),
                mass: spec.mass,
                basis: basis_name(hol.basis),
                total_steps: resolved.total_steps,
                angle: hol.angle_axis.angle,
                axis: hol.angle_axis.axis.0,
                so3: rotation_out(&hol.so3),
                su2: su2_out(&hol.su2),
                convergence: hol.convergence,
            }
        }
    };
    emit(&rep, args.output.format, args.output.out.as_deref())?;
    Ok(true)
}

fn random_unit(rng: &mut ChaCha8Rng) -> Vec3<f64> {
    let z: f64 = rng.gen_range(-1.0..1.0);
    let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let s = (1.0 - z * z).sqrt();
    Vec3([s * phi.cos(), s * phi.sin(), z])
}

fn cmd_validate(args: &ValidateArgs) -> Result<bool, CliError> {
    require_positive_tol(args.tol)?;
    require_steps(args.steps)?;
    if args.grid_count == 0 && args.random == 0 {
        return Err(CliError::Config(
            "empty campaign: grid-count is 0 and no random pairs requested".into(),
        ));
    }
    if !(0.0..1.0).contains(&args.grid_min)
        || !(0.0..1.0).contains(&args.grid_max)
        || args.grid_min > args.grid_max
    {
        return Err(CliError::Config(format!(
            "grid speeds must satisfy 0 <= min <= max < 1, got [{}, {}]",
            args.grid_min, args.grid_max
        )));
    }
    let geom = ShellGeometryF::new(args.mass)?;

    let mut ids: Vec<String> = Vec::new();
    let mut pairs: Vec<(Velocity3<f64>, Velocity3<f64>)> = Vec::new();
    if args.grid_count > 0 {
        let speeds = linspace(args.grid_min, args.grid_max, args.grid_count);
        for (i, s1) in speeds.iter().enumerate() {
            for (j, s2) in speeds.iter().enumerate() {
                ids.push(format!("grid-{i}-{j}"));
                pairs.push((
                    Velocity3::from_components(*s1, 0.0, 0.0)?,
                    Velocity3::from_components(0.0, *s2, 0.0)?,
                ));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    for k in 0..args.random {
        let s1: f64 = rng.gen_range(args.grid_min..=args.grid_max);
        let s2: f64 = rng.gen_range(args.grid_min..=args.grid_max);
        let d1 = random_unit(&mut rng);
        let d2 = random_unit(&mut rng);
        ids.push(format!("rand-{k}"));
        pairs.push((
            Velocity3::new(d1.scale(s1))?,
            Velocity3::new(d2.scale(s2))?,
        ));
    }

    let comparisons = compare_many(&geom, &pairs, args.steps, args.tol)?;
    let scenarios: Vec<ScenarioRow> = ids
        .into_iter()
        .zip(comparisons.iter())
        .map(|(id, cmp)| ScenarioRow::new(id, cmp))
        .collect();

    let total = scenarios.len();
    let failed = scenarios.iter().filter(|s| !s.passed).count();
    let max_angle = scenarios
        .iter()
        .map(|s| s.angle_deviation)
        .fold(0.0, f64::max);
    let mean_angle = if total == 0 {
        0.0
    } else {
        scenarios.iter().map(|s| s.angle_deviation).sum::<f64>() / total as f64
    };
    let max_axis = scenarios
        .iter()
        .map(|s| s.axis_deviation)
        .fold(0.0, f64::max);
    let all_passed = failed == 0;

    let rep = ValidateReport {
        command: "validate",
        scenario: "validate".to_string(),
        mass: args.mass,
        steps: args.steps,
        tolerance: args.tol,
        grid: GridOut {
            min: args.grid_min,
            max: args.grid_max,
            count: args.grid_count,
        },
        random: RandomOut {
            count: args.random,
            seed: args.seed,
        },
        scenarios,
        summary: SummaryOut {
            total,
            failed,
            max_angle_deviation: max_angle,
            mean_angle_deviation: mean_angle,
            max_axis_deviation: max_axis,
            all_passed,
        },
    };
    emit(&rep, args.output.format, args.output.out.as_deref())?;
    Ok(all_passed)
}

fn require_positive_tol(tol: f64) -> Result<(), CliError> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(CliError::Config(format!(
            "tolerance must be a positive finite number, got {tol}"
        )));
    }
    Ok(())
}

fn require_steps(steps: usize) -> Result<(), CliError> {
    if steps < 2 {
        return Err(CliError::Config(format!(
            "step counts below 2 cannot resolve a path, got {steps}"
        )));
    }
    Ok(())
}
