use std::f64::consts::PI;
use std::path::PathBuf;

use clap::Args;
use rectspec_core::chord::EpsilonConfig;
use rectspec_core::ordering::OrderConfig;
use rectspec_core::rect::SolverConfig;
use rectspec_core::spectrum::SpectrumConfig;
use serde::Serialize;

/// Flags shared by every subcommand; embedded in reports for replay (all
/// but the output directory, which does not affect results).
#[derive(Debug, Clone, Args, Serialize)]
pub struct RunConfig {
    /// θ grid size on (0, π].
    #[arg(long, default_value_t = 256, value_parser = grid_size)]
    pub grid: usize,
    /// Boundary bisection width in θ.
    #[arg(long, default_value_t = PI * 1e-3, value_parser = positive)]
    pub dtheta: f64,
    /// Residual tolerance for accepting a witness.
    #[arg(long, default_value_t = 1e-10, value_parser = positive)]
    pub tol: f64,
    /// √ε as a fraction of the curve diameter.
    #[arg(long = "eps-rel", default_value_t = 1e-3, value_parser = positive)]
    pub eps_rel: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Strip mesh resolution (even, at least 8).
    #[arg(long, default_value_t = 32, value_parser = resolution)]
    pub resolution: usize,
    /// Directory for report files.
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

fn grid_size(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n < 32 {
        return Err(format!("grid size must be at least 32, got {n}"));
    }
    Ok(n)
}

fn positive(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if !(x > 0.0 && x.is_finite()) {
        return Err(format!("must be positive, got {x}"));
    }
    Ok(x)
}

fn resolution(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n < 8 || n % 2 == 1 {
        return Err(format!("resolution must be even and at least 8, got {n}"));
    }
    Ok(n)
}

impl RunConfig {
    pub fn solver(&self) -> SolverConfig {
        // degenerate-chord cutoff a tenth of √ε
        SolverConfig {
            residual_tol: self.tol,
            chord_rel: self.eps_rel / 10.0,
            ..SolverConfig::default()
        }
    }

    pub fn spectrum(&self) -> SpectrumConfig {
        SpectrumConfig {
            grid: self.grid,
            dtheta: self.dtheta,
            solver: self.solver(),
            ..SpectrumConfig::default()
        }
    }

    pub fn epsilon(&self) -> EpsilonConfig {
        EpsilonConfig {
            eps_rel: self.eps_rel,
            ..EpsilonConfig::default()
        }
    }

    pub fn order(&self) -> OrderConfig {
        OrderConfig {
            seed: self.seed,
            ..OrderConfig::default()
        }
    }
}
