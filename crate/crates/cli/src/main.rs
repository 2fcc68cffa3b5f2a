//! `rectspec`: inscribed-rectangle spectra, strip ordering and arc algebra
//! from the command line.

mod config;
mod inputs;

use std::f64::consts::{PI, TAU};
use std::fs;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use rectspec_core::circle_sets::{kemperman_check, triple_product_contains_identity};
use rectspec_core::ordering::precedes;
use rectspec_core::rect::{aspect_of_theta, solve_at_theta};
use rectspec_core::spectrum::{compute_spectrum, corollary_check};
use rectspec_core::strip_mesh::{default_tolerance, meshes_disjoint};
use rectspec_core::suites::{self, Suite};
use serde_json::{json, Value};

use config::RunConfig;

#[derive(Parser)]
#[command(
    name = "rectspec",
    version,
    about = "Aspect-ratio spectra of rectangles inscribed in Jordan curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Witnessed aspect-ratio set of a curve, with the measure bound check.
    Spectrum {
        /// `builtin:NAME`, a Fourier JSON file or a sample CSV.
        curve: String,
        #[command(flatten)]
        run: RunConfig,
    },
    /// Inscribed rectangles of one aspect ratio.
    #[command(group(ArgGroup::new("target").required(true).args(["ratio", "r"])))]
    Rects {
        curve: String,
        /// Aspect ratio in (0, 1].
        #[arg(long, value_parser = unit_interval)]
        ratio: Option<f64>,
        /// Spectrum coordinate `θ/π` in (0, 1].
        #[arg(long, value_parser = unit_interval)]
        r: Option<f64>,
        #[command(flatten)]
        run: RunConfig,
    },
    /// Whether strip A precedes strip B.
    Order {
        a: String,
        b: String,
        /// Number of seeded fibers to evaluate.
        #[arg(long, default_value_t = 8)]
        fibers: usize,
        #[command(flatten)]
        run: RunConfig,
    },
    /// Run a seeded property suite.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        #[command(flatten)]
        run: RunConfig,
    },
    /// Arc-union algebra on ℝ/ℤ: inline `a:b,c:d` or ArcSet JSON files.
    Kemperman {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value_t = Op::Product)]
        op: Op,
        #[command(flatten)]
        run: RunConfig,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Product,
    Union,
    Intersection,
    Difference,
}

fn unit_interval(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if !(x > 0.0 && x <= 1.0) {
        return Err(format!(
            "must lie in (0, 1], got {x}; fold ratios above 1 to their reciprocal"
        ));
    }
    Ok(x)
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: suites::UnknownSuite| {
        let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
        format!("{e}; expected one of {}", names.join(", "))
    })
}

fn emit(run: &RunConfig, file: &str, body: &str) -> Result<()> {
    if let Some(dir) = &run.out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let path = Path::new(dir).join(file);
        fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json value") + "\n"
}

fn spectrum(spec: &str, run: &RunConfig) -> Result<ExitCode> {
    let (id, curve) = match inputs::load_curve(spec) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: invalid curve: {e:#}");
            return Ok(ExitCode::from(2));
        }
    };
    let report = match compute_spectrum(&curve, &id, &run.spectrum()) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: invalid curve: {e}");
            return Ok(ExitCode::from(2));
        }
    };
    let verdict = corollary_check(&report);
    let mut body = report.to_json_value();
    body["run"] = json!(run);
    body["corollary"] = json!(verdict);
    emit(run, &format!("spectrum-{id}.json"), &pretty(&body))?;
    emit(run, &format!("spectrum-{id}.csv"), &report.to_csv())?;
    println!(
        "{id}: measure {:.6} over {} arcs, threshold {:.6}, {}",
        verdict.measure,
        report.arcs.len(),
        verdict.threshold,
        if verdict.pass {
            "pass"
        } else {
            "BOUND VIOLATED"
        }
    );
    if verdict.pass {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("error: measure below the lower bound; this is a pipeline bug");
        Ok(ExitCode::from(3))
    }
}

fn rects(spec: &str, ratio: Option<f64>, r: Option<f64>, run: &RunConfig) -> Result<ExitCode> {
    let (id, curve) = match inputs::load_curve(spec) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: invalid curve: {e:#}");
            return Ok(ExitCode::from(2));
        }
    };
    let theta = match (ratio, r) {
        (Some(rho), _) => 4.0 * rho.atan(),
        (None, Some(r)) => PI * r,
        (None, None) => unreachable!("clap requires one target"),
    };
    let ws = solve_at_theta(&curve, theta, &run.solver())?;
    let body = json!({
        "curve": id,
        "theta": theta,
        "aspect": aspect_of_theta(theta),
        "witnesses": ws.iter().map(|w| w.to_json_value()).collect::<Vec<_>>(),
        "run": run,
    });
    emit(run, &format!("rects-{id}.json"), &pretty(&body))?;
    if ws.is_empty() {
        println!("{id}: no witness at θ = {theta:.6} (unwitnessed, not proven absent)");
        return Ok(ExitCode::from(1));
    }
    println!(
        "{id}: {} witnesses at θ = {theta:.6}, aspect {:.6}",
        ws.len(),
        aspect_of_theta(theta)
    );
    for w in &ws {
        let v: Vec<String> = w
            .vertices
            .iter()
            .map(|p| format!("({:.9}, {:.9})", p.re, p.im))
            .collect();
        println!("  residual {:.1e}  {}", w.residual, v.join(" "));
    }
    Ok(ExitCode::SUCCESS)
}

fn order(a: &str, b: &str, fibers: usize, run: &RunConfig) -> Result<ExitCode> {
    let (ma, mb) = (inputs::load_mesh(a, run)?, inputs::load_mesh(b, run)?);
    let d = meshes_disjoint(&ma, &mb, default_tolerance());
    if !d.disjoint {
        println!(
            "strips meet (separation {:.3e} near φ = {:.4}); the relation is undefined",
            d.separation, d.nearest_phi
        );
        return Ok(ExitCode::from(4));
    }
    let cfg = run.order();
    let mut records = Vec::new();
    let (mut ab_votes, mut consistent) = (0, true);
    for k in 0..fibers.max(1) {
        let phi = (k as f64 + 0.37) * TAU / fibers.max(1) as f64;
        let ab = precedes(&ma, &mb, phi, &cfg)?;
        let ba = precedes(&mb, &ma, phi, &cfg)?;
        consistent &= ab.precedes != ba.precedes;
        ab_votes += usize::from(ab.precedes);
        records.push(json!({ "ab": ab, "ba": ba }));
    }
    let n = fibers.max(1);
    let a_first = ab_votes * 2 > n;
    consistent &= ab_votes == 0 || ab_votes == n;
    let body = json!({
        "a": a, "b": b,
        "separation": d.separation,
        "a_precedes_b": a_first,
        "consistent": consistent,
        "fibers": records,
        "run": run,
    });
    emit(run, "order.json", &pretty(&body))?;
    println!("{}", if a_first { "A ≺ B" } else { "B ≺ A" });
    println!(
        "{}: {n} fibers, separation {:.4}",
        if consistent {
            "consistent"
        } else {
            "INCONSISTENT"
        },
        d.separation
    );
    for r in &records {
        println!(
            "  φ = {}  apex {}  seed {}",
            r["ab"]["phi"], r["ab"]["apex"], r["ab"]["seed"]
        );
    }
    Ok(if consistent {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn verify(suite: Suite, run: &RunConfig) -> Result<ExitCode> {
    let summary = match suite {
        Suite::SpectrumCorpus => suites::spectrum_corpus(&run.spectrum()),
        s => suites::run_suite(s, run.seed),
    };
    let body = json!({ "summary": summary, "run": run });
    emit(run, &format!("verify-{suite}.json"), &pretty(&body))?;
    print!("{}", pretty(&json!(summary)));
    Ok(if summary.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn kemperman(a: &str, b: &str, op: Op, run: &RunConfig) -> Result<ExitCode> {
    let (x, y) = (inputs::load_arcs(a)?, inputs::load_arcs(b)?);
    let result = match op {
        Op::Product => x.product(&y),
        Op::Union => x.union(&y),
        Op::Intersection => x.intersection(&y),
        Op::Difference => x.difference(&y),
    };
    let verdict = kemperman_check(&x, &y);
    let result_json: Value = serde_json::from_str(&result.to_json())?;
    let body = json!({
        "result": result_json,
        "measure": result.measure(),
        "measure_a": x.measure(),
        "measure_b": y.measure(),
        "kemperman": verdict,
        "triple_identity_a": triple_product_contains_identity(&x).map(|t| [t.0, t.1, t.2]),
        "run": run,
    });
    emit(run, "kemperman.json", &pretty(&body))?;
    print!("{}", pretty(&body));
    Ok(if verdict.holds {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn init_threads() {
    if let Some(n) = std::env::var("RECTSPEC_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads();
    let result = match &cli.command {
        Command::Spectrum { curve, run } => spectrum(curve, run),
        Command::Rects {
            curve,
            ratio,
            r,
            run,
        } => rects(curve, *ratio, *r, run),
        Command::Order { a, b, fibers, run } => order(a, b, *fibers, run),
        Command::Verify { suite, run } => verify(*suite, run),
        Command::Kemperman { a, b, op, run } => kemperman(a, b, *op, run),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(1)
    })
}
