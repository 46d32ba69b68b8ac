//! JSON path descriptions and their resolution into shell paths.
//!
//! File format (all angles in radians):
//!
//! ```json
//! {
//!   "mass": 1.0,
//!   "closed": true,
//!   "segments": [
//!     {"kind": "circle", "rho": 0.75, "theta": 1.5707963267948966,
//!      "phi_start": 0.0, "phi_end": 6.283185307179586, "steps": 10000},
//!     {"kind": "geodesic", "from": [1.0, 0.0, 0.0, 0.0],
//!      "to": [0.75, 1.5707963267948966, 0.0], "steps": 500}
//!   ]
//! }
//! ```
//!
//! Geodesic endpoints are either chart coordinates `[rho, theta, phi]`
//! (three numbers) or an ambient four-vector `[p0, p1, p2, p3]` (four
//! numbers), which must lie on the mass shell.

use serde::Deserialize;
use twr_core::shell::{ChartPoint, ShellGeometry};
use twr_core::transport::{PathSegment, ShellPath};
use twr_core::{FourVectorF, Vec4};

use crate::CliError;

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct PathSpec {
    pub mass: f64,
    pub closed: bool,
    pub segments: Vec<SegmentSpec>,
}

#[derive(Deserialize, Debug)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SegmentSpec {
    Circle {
        rho: f64,
        theta: f64,
        phi_start: f64,
        phi_end: f64,
        steps: usize,
    },
    Geodesic {
        from: EndpointSpec,
        to: EndpointSpec,
        steps: usize,
    },
}

#[derive(Deserialize, Debug, Clone, Copy)]
#[serde(untagged)]
pub enum EndpointSpec {
    /// Chart coordinates `[rho, theta, phi]`.
    Chart([f64; 3]),
    /// Ambient four-vector `[p0, p1, p2, p3]`, required to be on shell.
    Ambient([f64; 4]),
}

impl EndpointSpec {
    fn resolve(&self, geom: &ShellGeometry<f64>, what: &str) -> Result<FourVectorF, CliError> {
        match self {
            EndpointSpec::Chart([rho, theta, phi]) => {
                let z = ChartPoint::new(*rho, *theta, *phi)
                    .map_err(|e| CliError::Config(format!("{what}: {e}")))?;
                Ok(geom.embed(&z))
            }
            EndpointSpec::Ambient(c) => {
                let p = Vec4(*c);
                let on_shell = geom
                    .project_to_shell(&p)
                    .map_err(|e| CliError::Config(format!("{what}: {e}")))?;
                let gap = on_shell.max_abs_diff(&p);
                let scale = 1.0 + p.max_abs();
                if gap > 1e-9 * scale {
                    return Err(CliError::Config(format!(
                        "{what}: four-vector {c:?} is off the mass shell by {gap:.3e}"
                    )));
                }
                Ok(on_shell)
            }
        }
    }
}

/// A path spec resolved against its geometry.
pub struct ResolvedPath {
    pub geom: ShellGeometry<f64>,
    /// `None` when the whole spec degenerates to a single point (all
    /// segments are zero-radius circles), in which case the holonomy is the
    /// identity at the rest momentum.
    pub path: Option<ShellPath<f64>>,
    pub total_steps: usize,
}

/// Resolves a parsed spec: validates the geometry, applies the optional
/// per-segment step override, and builds the shell path.
pub fn resolve(spec: &PathSpec, steps_override: Option<usize>) -> Result<ResolvedPath, CliError> {
    let geom = ShellGeometry::new(spec.mass).map_err(CliError::Domain)?;
    if spec.segments.is_empty() {
        return Err(CliError::Config("path has no segments".into()));
    }

    // A loop of zero-radius circles is a single point (the rest momentum):
    // its holonomy is trivially the identity, which the chart-based circle
    // constructor cannot represent.
    let all_point_circles = spec
        .segments
        .iter()
        .all(|s| matches!(s, SegmentSpec::Circle { rho, .. } if *rho == 0.0));
    if all_point_circles {
        let total = spec
            .segments
            .iter()
            .map(|s| match s {
                SegmentSpec::Circle { steps, .. } => steps_override.unwrap_or(*steps),
                SegmentSpec::Geodesic { .. } => unreachable!(),
            })
            .sum();
        return Ok(ResolvedPath {
            geom,
            path: None,
            total_steps: total,
        });
    }

    let mut parts = Vec::with_capacity(spec.segments.len());
    for (i, seg) in spec.segments.iter().enumerate() {
        match seg {
            SegmentSpec::Circle {
                rho,
                theta,
                phi_start,
                phi_end,
                steps,
            } => {
                parts.push((
                    PathSegment::Circle {
                        rho: *rho,
                        theta: *theta,
                        phi_start: *phi_start,
                        phi_end: *phi_end,
                    },
                    steps_override.unwrap_or(*steps),
                ));
            }
            SegmentSpec::Geodesic { from, to, steps } => {
                let a = from.resolve(&geom, &format!("segment {i}, \"from\""))?;
                let b = to.resolve(&geom, &format!("segment {i}, \"to\""))?;
                let geo = geom
                    .geodesic(&a, &b)
                    .map_err(|e| CliError::Config(format!("segment {i}: {e}")))?;
                parts.push((PathSegment::Geodesic(geo), steps_override.unwrap_or(*steps)));
            }
        }
    }

    let path = ShellPath::new(&geom, parts).map_err(CliError::Domain)?;
    if spec.closed != path.is_closed(&geom) {
        return Err(CliError::Config(format!(
            "path file declares closed = {}, but the resolved path {} (endpoint gap {:.3e})",
            spec.closed,
            if path.is_closed(&geom) {
                "closes"
            } else {
                "does not close"
            },
            path.closure_gap(&geom),
        )));
    }
    let total_steps = path.total_steps();
    Ok(ResolvedPath {
        geom,
        path: Some(path),
        total_steps,
    })
}

/// Parses a path-spec file, reporting line/field diagnostics on failure.
pub fn load(path: &std::path::Path) -> Result<PathSpec, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("reading {}", path.display()), e))?;
    serde_json::from_str(&text).map_err(|e| {
        CliError::Config(format!(
            "{}: parse error at line {}, column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })
}
