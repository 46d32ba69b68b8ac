//! Report types and serialization.
//!
//! Every command emits one report, as JSON (default) or CSV. Output is
//! deterministic: fixed field order, floats printed as decimal with 17
//! significant digits (round-trip exact for `f64`), no timestamps.

use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use twr_core::crosscheck::{PrecessionComparison, TwrComparison};
use twr_core::{AngleAxisF, CMat2, HolonomyBasis, Rotation3};

use crate::CliError;

/// Environment variable naming the directory against which relative
/// `--out` paths resolve.
pub const OUTPUT_DIR_ENV: &str = "TWR_OUTPUT_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Serialize, Clone, Copy)]
pub struct AngleAxisOut {
    pub angle: f64,
    pub axis: [f64; 3],
}

impl From<&AngleAxisF> for AngleAxisOut {
    fn from(aa: &AngleAxisF) -> Self {
        AngleAxisOut {
            angle: aa.angle,
            axis: aa.axis.0,
        }
    }
}

#[derive(Serialize, Clone, Copy)]
pub struct ReIm {
    pub re: f64,
    pub im: f64,
}

/// SU(2) matrix as re/im pairs, row-major.
pub type Su2Out = [[ReIm; 2]; 2];

/// SO(3) matrix row-major.
pub type RotationOut = [[f64; 3]; 3];

pub fn su2_out(u: &CMat2<f64>) -> Su2Out {
    let mut out = [[ReIm { re: 0.0, im: 0.0 }; 2]; 2];
    for (i, row) in u.0.iter().enumerate() {
        for (j, z) in row.iter().enumerate() {
            out[i][j] = ReIm { re: z.re, im: z.im };
        }
    }
    out
}

pub fn rotation_out(r: &Rotation3<f64>) -> RotationOut {
    r.0 .0
}

pub fn basis_name(basis: HolonomyBasis) -> &'static str {
    match basis {
        HolonomyBasis::RestCartesian => "rest-cartesian",
        HolonomyBasis::OrthonormalFrame => "orthonormal-frame",
    }
}

#[derive(Serialize)]
pub struct PrecessionReport {
    pub command: &'static str,
    pub scenario: String,
    pub mass: f64,
    pub steps: usize,
    pub speed: f64,
    pub gamma: f64,
    pub analytic_angle: f64,
    pub analytic: AngleAxisOut,
    pub holonomy: AngleAxisOut,
    pub angle_deviation: f64,
    pub axis_deviation: f64,
    pub relative_angle: f64,
    pub discretization: f64,
    pub tolerance: f64,
    pub degenerate: bool,
    pub passed: bool,
}

impl PrecessionReport {
    pub fn new(cmp: &PrecessionComparison<f64>, mass: f64, steps: usize) -> Self {
        PrecessionReport {
            command: "precession",
            scenario: format!("precession-V{}", cmp.speed),
            mass,
            steps,
            speed: cmp.speed,
            gamma: cmp.gamma,
            analytic_angle: cmp.analytic_angle,
            analytic: (&cmp.analytic).into(),
            holonomy: (&cmp.holonomy).into(),
            angle_deviation: cmp.angle_deviation,
            axis_deviation: cmp.axis_deviation,
            relative_angle: cmp.relative_angle,
            discretization: cmp.discretization,
            tolerance: cmp.tolerance,
            degenerate: cmp.degenerate,
            passed: cmp.passed,
        }
    }
}

#[derive(Serialize)]
pub struct WignerReport {
    pub command: &'static str,
    pub scenario: String,
    pub mass: f64,
    pub v1: [f64; 3],
    pub v2: [f64; 3],
    pub composite_velocity: [f64; 3],
    pub angle: f64,
    pub axis: [f64; 3],
    pub rotation: RotationOut,
    pub su2: Su2Out,
}

#[derive(Serialize)]
pub struct HolonomyReport {
    pub command: &'static str,
    pub scenario: String,
    pub mass: f64,
    pub basis: &'static str,
    pub total_steps: usize,
    pub angle: f64,
    pub axis: [f64; 3],
    pub so3: RotationOut,
    pub su2: Su2Out,
    pub convergence: f64,
}

#[derive(Serialize)]
pub struct ScenarioRow {
    pub scenario: String,
    pub v1: [f64; 3],
    pub v2: [f64; 3],
    pub algebraic: AngleAxisOut,
    pub geometric: AngleAxisOut,
    pub angle_deviation: f64,
    pub axis_deviation: f64,
    pub relative_angle: f64,
    pub discretization: f64,
    pub tolerance: f64,
    pub degenerate: bool,
    pub passed: bool,
}

impl ScenarioRow {
    pub fn new(id: String, cmp: &TwrComparison<f64>) -> Self {
        ScenarioRow {
            scenario: id,
            v1: cmp.v1.0,
            v2: cmp.v2.0,
            algebraic: (&cmp.algebraic).into(),
            geometric: (&cmp.geometric).into(),
            angle_deviation: cmp.angle_deviation,
            axis_deviation: cmp.axis_deviation,
            relative_angle: cmp.relative_angle,
            discretization: cmp.discretization,
            tolerance: cmp.tolerance,
            degenerate: cmp.degenerate,
            passed: cmp.passed,
        }
    }
}

#[derive(Serialize)]
pub struct GridOut {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

#[derive(Serialize)]
pub struct RandomOut {
    pub count: usize,
    pub seed: u64,
}

#[derive(Serialize)]
pub struct SummaryOut {
    pub total: usize,
    pub failed: usize,
    pub max_angle_deviation: f64,
    pub mean_angle_deviation: f64,
    pub max_axis_deviation: f64,
    pub all_passed: bool,
}

#[derive(Serialize)]
pub struct ValidateReport {
    pub command: &'static str,
    pub scenario: String,
    pub mass: f64,
    pub steps: usize,
    pub tolerance: f64,
    pub grid: GridOut,
    pub random: RandomOut,
    pub scenarios: Vec<ScenarioRow>,
    pub summary: SummaryOut,
}

/// `serde_json` formatter printing every float as decimal with 17
/// significant digits (`{:.16e}`), which round-trips `f64` exactly.
struct SigDigits;

impl serde_json::ser::Formatter for SigDigits {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }
}

pub fn to_json<T: Serialize>(report: &T) -> Result<String, CliError> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigDigits);
    report
        .serialize(&mut ser)
        .map_err(|e| CliError::Config(format!("serialization failed: {e}")))?;
    buf.push(b'\n');
    String::from_utf8(buf).map_err(|e| CliError::Config(format!("non-UTF8 output: {e}")))
}

fn f(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_line(fields: &[String]) -> String {
    fields.join(",")
}

/// CSV column orders (fixed; also documented in the README):
/// - precession: scenario,speed,mass,gamma,steps,analytic_angle,
///   holonomy_angle,axis_x,axis_y,axis_z,angle_deviation,axis_deviation,
///   relative_angle,discretization,tolerance,degenerate,passed
/// - wigner: scenario,mass,v1x,v1y,v1z,v2x,v2y,v2z,angle,axis_x,axis_y,
///   axis_z,v12x,v12y,v12z
/// - holonomy: scenario,mass,basis,total_steps,angle,axis_x,axis_y,axis_z,
///   convergence
/// - validate: one row per scenario: scenario,v1x,v1y,v1z,v2x,v2y,v2z,
///   algebraic_angle,geometric_angle,angle_deviation,axis_deviation,
///   relative_angle,discretization,tolerance,degenerate,passed
pub trait ToCsv {
    fn to_csv(&self) -> String;
}

impl ToCsv for PrecessionReport {
    fn to_csv(&self) -> String {
        let header = "scenario,speed,mass,gamma,steps,analytic_angle,holonomy_angle,\
axis_x,axis_y,axis_z,angle_deviation,axis_deviation,relative_angle,discretization,\
tolerance,degenerate,passed";
        let row = csv_line(&[
            self.scenario.clone(),
            f(self.speed),
            f(self.mass),
            f(self.gamma),
            self.steps.to_string(),
            f(self.analytic_angle),
            f(self.holonomy.angle),
            f(self.holonomy.axis[0]),
            f(self.holonomy.axis[1]),
            f(self.holonomy.axis[2]),
            f(self.angle_deviation),
            f(self.axis_deviation),
            f(self.relative_angle),
            f(self.discretization),
            f(self.tolerance),
            self.degenerate.to_string(),
            self.passed.to_string(),
        ]);
        format!("{header}\n{row}\n")
    }
}

impl ToCsv for WignerReport {
    fn to_csv(&self) -> String {
        let header = "scenario,mass,v1x,v1y,v1z,v2x,v2y,v2z,angle,axis_x,axis_y,axis_z,\
v12x,v12y,v12z";
        let row = csv_line(&[
            self.scenario.clone(),
            f(self.mass),
            f(self.v1[0]),
            f(self.v1[1]),
            f(self.v1[2]),
            f(self.v2[0]),
            f(self.v2[1]),
            f(self.v2[2]),
            f(self.angle),
            f(self.axis[0]),
            f(self.axis[1]),
            f(self.axis[2]),
            f(self.composite_velocity[0]),
            f(self.composite_velocity[1]),
            f(self.composite_velocity[2]),
        ]);
        format!("{header}\n{row}\n")
    }
}

impl ToCsv for HolonomyReport {
    fn to_csv(&self) -> String {
        let header = "scenario,mass,basis,total_steps,angle,axis_x,axis_y,axis_z,convergence";
        let row = csv_line(&[
            self.scenario.clone(),
            f(self.mass),
            self.basis.to_string(),
            self.total_steps.to_string(),
            f(self.angle),
            f(self.axis[0]),
            f(self.axis[1]),
            f(self.axis[2]),
            f(self.convergence),
        ]);
        format!("{header}\n{row}\n")
    }
}

impl ToCsv for ValidateReport {
    fn to_csv(&self) -> String {
        let mut out = String::from(
            "scenario,v1x,v1y,v1z,v2x,v2y,v2z,algebraic_angle,geometric_angle,\
angle_deviation,axis_deviation,relative_angle,discretization,tolerance,degenerate,passed\n",
        );
        for row in &self.scenarios {
            out.push_str(&csv_line(&[
                row.scenario.clone(),
                f(row.v1[0]),
                f(row.v1[1]),
                f(row.v1[2]),
                f(row.v2[0]),
                f(row.v2[1]),
                f(row.v2[2]),
                f(row.algebraic.angle),
                f(row.geometric.angle),
                f(row.angle_deviation),
                f(row.axis_deviation),
                f(row.relative_angle),
                f(row.discretization),
                f(row.tolerance),
                row.degenerate.to_string(),
                row.passed.to_string(),
            ]));
            out.push('\n');
        }
        out
    }
}

/// Resolves `--out`: relative paths land in `$TWR_OUTPUT_DIR` when that is
/// set, otherwise in the current directory.
fn resolve_out(path: &Path) -> PathBuf {
    if path.is_absolute() {
        return path.to_path_buf();
    }
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir).join(path),
        _ => path.to_path_buf(),
    }
}

/// Renders the report in the requested format and writes it to the file
/// given by `--out` (resolved against [`OUTPUT_DIR_ENV`]) or to stdout.
pub fn emit<T: Serialize + ToCsv>(
    report: &T,
    format: Format,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let text = match format {
        Format::Json => to_json(report)?,
        Format::Csv => report.to_csv(),
    };
    match out {
        None => {
            io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Io("writing to stdout".into(), e))?;
        }
        Some(p) => {
            let target = resolve_out(p);
            if let Some(parent) = target.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent)
                        .map_err(|e| CliError::Io(format!("creating {}", parent.display()), e))?;
                }
            }
            std::fs::write(&target, text.as_bytes())
                .map_err(|e| CliError::Io(format!("writing {}", target.display()), e))?;
        }
    }
    Ok(())
}
