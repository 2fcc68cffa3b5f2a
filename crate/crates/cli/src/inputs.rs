use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use rectspec_core::chord::choose_epsilon;
use rectspec_core::circle_sets::ArcSet;
use rectspec_core::corpus::{builtin, Builtin};
use rectspec_core::io::{curve_from_csv, curve_from_json};
use rectspec_core::strip_mesh::{mesh_from_curve, mesh_from_dome};
use rectspec_core::{Curve, FloatArcSet, Mesh};

use crate::config::RunConfig;

/// Fourier order and residual bound used when fitting CSV samples.
pub const CSV_ORDER: usize = 16;
pub const CSV_MAX_RESIDUAL: f64 = 1e-6;

/// `builtin:NAME`, a Fourier JSON file, or a CSV of uniform samples.
pub fn load_curve(spec: &str) -> Result<(String, Curve)> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return match builtin(name) {
            Some(Builtin::Curve(c)) => Ok((name.to_string(), c)),
            Some(Builtin::Dome(_)) => bail!("{name} is a strip, not a curve"),
            None => bail!("unknown builtin curve {name:?}"),
        };
    }
    let path = Path::new(spec);
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {spec}"))?;
    let id = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| spec.to_string());
    let curve = if path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
    {
        curve_from_csv(&text, CSV_ORDER, CSV_MAX_RESIDUAL)
            .with_context(|| format!("fitting {spec}"))?
            .0
    } else {
        curve_from_json(&text).with_context(|| format!("parsing {spec}"))?
    };
    Ok((id, curve))
}

/// `builtin:dome-…`, `builtin:<curve>` meshed at the configured resolution,
/// or a mesh JSON file.
pub fn load_mesh(spec: &str, cfg: &RunConfig) -> Result<Mesh> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return match builtin(name) {
            Some(Builtin::Dome(d)) => Ok(mesh_from_dome(&d, cfg.resolution)?),
            Some(Builtin::Curve(c)) => {
                let eps = choose_epsilon(&c, &cfg.epsilon())?;
                Ok(mesh_from_curve(&c, eps, cfg.resolution)?)
            }
            None => bail!("unknown builtin {name:?}"),
        };
    }
    let text = std::fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?;
    Mesh::from_json(&text).with_context(|| format!("parsing mesh {spec}"))
}

/// Inline `a:b,c:d` half-open intervals in turns, or an ArcSet JSON file.
pub fn load_arcs(spec: &str) -> Result<FloatArcSet> {
    if Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?;
        return ArcSet::from_json(&text).map_err(|e| anyhow!("parsing {spec}: {e}"));
    }
    let mut intervals = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (a, b) = part
            .split_once(':')
            .ok_or_else(|| anyhow!("expected a:b, got {part:?}"))?;
        let (a, b): (f64, f64) = (a.trim().parse()?, b.trim().parse()?);
        if !(a.is_finite() && b.is_finite() && b >= a) {
            bail!("bad interval {part:?}");
        }
        intervals.push((a, b));
    }
    Ok(ArcSet::from_intervals(&intervals))
}
