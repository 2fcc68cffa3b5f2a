//! Seeded property suites behind `verify`. Each returns a summary with the
//! replay data of the first failing case.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::circle_sets::{
    frac, kemperman_check, theorem2_structure_check, triple_product_contains_identity, Arc, ArcSet,
};
use crate::corpus::{builtin_curve, CURVES};
use crate::ordering::{
    antisymmetry_suite, cone_parity, cycle_suite, section_at, OrderConfig, OrderError,
};
use crate::scalar::cis;
use crate::spectrum::{compute_spectrum, corollary_check, SpectrumConfig};
use crate::strip_mesh::{mesh_from_dome, DomeStrip, MeshError, StripMesh};

/// Mesh resolution of the dome strips used by the ordering suites.
pub const DOME_RESOLUTION: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Antisymmetry,
    Cycles,
    Kemperman,
    Triples,
    SpectrumCorpus,
    ParityInvariance,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Antisymmetry,
        Suite::Cycles,
        Suite::Kemperman,
        Suite::Triples,
        Suite::SpectrumCorpus,
        Suite::ParityInvariance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Antisymmetry => "antisymmetry",
            Suite::Cycles => "cycles",
            Suite::Kemperman => "kemperman",
            Suite::Triples => "triples",
            Suite::SpectrumCorpus => "spectrum-corpus",
            Suite::ParityInvariance => "parity-invariance",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown suite {0:?}")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteSummary {
    pub suite: Suite,
    pub seed: u64,
    pub cases: usize,
    pub passed: usize,
    pub pass: bool,
    pub first_failure: Option<Value>,
    pub details: Value,
}

impl SuiteSummary {
    fn new(suite: Suite, seed: u64, outcomes: Vec<Result<Value, Value>>, details: Value) -> Self {
        let cases = outcomes.len();
        let passed = outcomes.iter().filter(|o| o.is_ok()).count();
        let first_failure = outcomes.into_iter().find_map(Result::err);
        Self {
            suite,
            seed,
            cases,
            passed,
            pass: cases > 0 && passed == cases,
            first_failure,
            details,
        }
    }
}

pub fn run_suite(suite: Suite, seed: u64) -> SuiteSummary {
    match suite {
        Suite::Antisymmetry => antisymmetry(seed, 100),
        Suite::Cycles => cycles(seed, 50),
        Suite::Kemperman => kemperman(seed, 1000),
        Suite::Triples => triples(seed, 200),
        Suite::SpectrumCorpus => spectrum_corpus(&SpectrumConfig::default()),
        Suite::ParityInvariance => parity_invariance(seed, 10, 64),
    }
}

pub fn dome_mesh(height: f64, angle: f64) -> Result<StripMesh<f64>, MeshError> {
    mesh_from_dome(&DomeStrip::new(height, cis(angle))?, DOME_RESOLUTION)
}

/// The standard disjoint pair: heights 1 and 2, rotations 1 and −1.
pub fn dome_pair() -> (StripMesh<f64>, StripMesh<f64>) {
    (
        dome_mesh(1.0, 0.0).expect("valid dome"),
        dome_mesh(2.0, PI).expect("valid dome"),
    )
}

/// Union of up to `max_arcs` half-open arcs, each of length below `max_len`.
pub fn random_arc_set(rng: &mut impl Rng, max_arcs: usize, max_len: f64) -> ArcSet<f64> {
    let k = rng.gen_range(1..=max_arcs);
    ArcSet::new((0..k).map(|_| {
        let start = rng.gen::<f64>();
        Arc::half_open(start, start + rng.gen::<f64>() * max_len)
    }))
}

fn pair_json(a: &ArcSet<f64>, b: &ArcSet<f64>) -> Value {
    json!({ "a": serde_json::from_str::<Value>(&a.to_json()).unwrap_or(Value::Null),
            "b": serde_json::from_str::<Value>(&b.to_json()).unwrap_or(Value::Null) })
}

pub fn kemperman(seed: u64, pairs: usize) -> SuiteSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let outcomes = (0..pairs)
        .map(|i| {
            let a = random_arc_set(&mut rng, 5, 0.3);
            let b = random_arc_set(&mut rng, 5, 0.3);
            let v = kemperman_check(&a, &b);
            if v.holds {
                Ok(Value::Null)
            } else {
                let mut case = pair_json(&a, &b);
                case["index"] = json!(i);
                case["verdict"] = json!(v);
                Err(case)
            }
        })
        .collect();
    SuiteSummary::new(Suite::Kemperman, seed, outcomes, json!({ "pairs": pairs }))
}

fn triple_ok(x: &ArcSet<f64>, t: (f64, f64, f64)) -> bool {
    let s = frac(t.0 + t.1 + t.2);
    [t.0, t.1, t.2].iter().all(|p| x.contains(&frac(*p))) && s.min(1.0 - s) < 1e-9
}

pub fn triples(seed: u64, random_cases: usize) -> SuiteSummary {
    let q = Rational64::new;
    let mut outcomes = Vec::new();
    let third = ArcSet::new([Arc::open(q(0, 1), q(1, 3))]);
    outcomes.push(match triple_product_contains_identity(&third) {
        None => Ok(Value::Null),
        Some(t) => Err(json!({ "fixture": "open (0, 1/3)", "triple": format!("{t:?}") })),
    });
    let wider = ArcSet::new([Arc::open(0.0, 1.0 / 3.0 + 0.01)]);
    outcomes.push(match triple_product_contains_identity(&wider) {
        Some(t) if triple_ok(&wider, t) => Ok(Value::Null),
        other => Err(json!({ "fixture": "open (0, 1/3 + 0.01)", "triple": format!("{other:?}") })),
    });
    let n = ArcSet::new([Arc::open(q(2, 3), q(4, 3))]);
    let x = ArcSet::new([Arc::open(q(0, 1), q(1, 3))]);
    outcomes.push(match theorem2_structure_check(&n, &x, 0.0) {
        Ok(r) if r.pass && (r.non_intersection_measure - 2.0 / 3.0).abs() < 1e-15 => {
            Ok(Value::Null)
        }
        other => {
            Err(json!({ "fixture": "non-intersection (2/3, 4/3)", "report": format!("{other:?}") }))
        }
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..random_cases {
        let x = loop {
            let x = random_arc_set(&mut rng, 4, 0.5);
            if x.measure() > 1.0 / 3.0 {
                break x;
            }
        };
        outcomes.push(match triple_product_contains_identity(&x) {
            Some(t) if triple_ok(&x, t) => Ok(Value::Null),
            other => Err(json!({ "index": i, "x": x.to_json(), "triple": format!("{other:?}") })),
        });
    }
    SuiteSummary::new(
        Suite::Triples,
        seed,
        outcomes,
        json!({ "fixtures": 3, "random": random_cases }),
    )
}

pub fn spectrum_corpus(cfg: &SpectrumConfig) -> SuiteSummary {
    let outcomes: Vec<Result<Value, Value>> = CURVES
        .par_iter()
        .map(|name| {
            let curve =
                builtin_curve(name).ok_or_else(|| json!({ "curve": name, "error": "unknown" }))?;
            match compute_spectrum(&curve, name, cfg) {
                Ok(report) => {
                    let v = corollary_check(&report);
                    let case =
                        json!({ "curve": name, "measure": v.measure, "threshold": v.threshold });
                    if v.pass {
                        Ok(case)
                    } else {
                        Err(case)
                    }
                }
                Err(e) => Err(json!({ "curve": name, "error": e.to_string() })),
            }
        })
        .collect();
    let measures: Vec<Value> = outcomes
        .iter()
        .map(|o| o.clone().unwrap_or_else(|e| e))
        .collect();
    SuiteSummary::new(
        Suite::SpectrumCorpus,
        0,
        outcomes,
        json!({ "curves": measures, "grid": cfg.grid }),
    )
}

fn seeded_fibers(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen::<f64>() * TAU).collect()
}

pub fn antisymmetry(seed: u64, fibers: usize) -> SuiteSummary {
    let (a, b) = dome_pair();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let phis = seeded_fibers(&mut rng, fibers);
    let cfg = OrderConfig {
        seed,
        ..OrderConfig::default()
    };
    let outcomes = match antisymmetry_suite(&a, &b, &phis, &cfg) {
        Ok(report) => {
            let mut out: Vec<Result<Value, Value>> = report
                .fibers
                .iter()
                .map(|f| {
                    if f.parity_ab != f.parity_ba {
                        Ok(Value::Null)
                    } else {
                        Err(json!(f))
                    }
                })
                .collect();
            out.extend(
                report
                    .skipped
                    .iter()
                    .map(|(phi, why)| Err(json!({ "phi": phi, "skipped": why }))),
            );
            out
        }
        Err(e) => vec![Err(json!({ "error": e.to_string() }))],
    };
    SuiteSummary::new(
        Suite::Antisymmetry,
        seed,
        outcomes,
        json!({ "pair": ["dome-1", "dome-2-rot-half"], "fibers": fibers }),
    )
}

/// Heights in `[0.5, 3.5]` at least `0.25` apart and rotation angles at least
/// `0.3` apart on the circle, which keeps the meshes certifiably disjoint.
pub fn random_dome_triple(rng: &mut impl Rng) -> [(f64, f64); 3] {
    loop {
        let t: [(f64, f64); 3] =
            std::array::from_fn(|_| (0.5 + 3.0 * rng.gen::<f64>(), rng.gen::<f64>() * TAU));
        let ok = (0..3).all(|i| {
            (i + 1..3).all(|j| {
                let dr = (t[i].1 - t[j].1).rem_euclid(TAU);
                (t[i].0 - t[j].0).abs() >= 0.25 && dr.min(TAU - dr) >= 0.3
            })
        });
        if ok {
            return t;
        }
    }
}

pub fn cycles(seed: u64, triples: usize) -> SuiteSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<([(f64, f64); 3], f64)> = (0..triples)
        .map(|_| (random_dome_triple(&mut rng), rng.gen::<f64>() * TAU))
        .collect();
    let cfg = OrderConfig {
        seed,
        ..OrderConfig::default()
    };
    let outcomes: Vec<Result<Value, Value>> = cases
        .par_iter()
        .enumerate()
        .map(|(i, (triple, phi))| {
            let replay = json!({ "index": i, "domes": triple, "phi": phi });
            let strips = triple
                .iter()
                .map(|(h, a)| dome_mesh(*h, *a))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| json!({ "case": replay, "error": e.to_string() }))?;
            match cycle_suite(&strips, *phi, &cfg) {
                Ok(r) if r.pass => Ok(json!({ "order": r.order })),
                Ok(r) => Err(json!({ "case": replay, "report": r })),
                Err(e) => Err(json!({ "case": replay, "error": e.to_string() })),
            }
        })
        .collect();
    let height_ordered = cases
        .iter()
        .zip(&outcomes)
        .filter(|((t, _), o)| {
            let Ok(v) = o else { return false };
            let Some(order) = v["order"].as_array() else {
                return false;
            };
            let hs: Vec<f64> = order
                .iter()
                .filter_map(|i| i.as_u64())
                .map(|i| t[i as usize].0)
                .collect();
            hs.windows(2).all(|w| w[0] < w[1])
        })
        .count();
    SuiteSummary::new(
        Suite::Cycles,
        seed,
        outcomes,
        json!({ "triples": triples, "height_ordered": height_ordered }),
    )
}

/// Cone parity over `apexes` random apexes at `fibers` equally spaced regular
/// fibers of the standard pair; every fiber must give one parity, and that
/// parity must be the same at every fiber.
pub fn parity_invariance(seed: u64, apexes: usize, fibers: usize) -> SuiteSummary {
    let (a, b) = dome_pair();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut outcomes = Vec::new();
    let mut first: Option<bool> = None;
    let mut discrepancies = 0;
    let mut irregular = 0;
    for k in 0..fibers {
        let phi = (k as f64 + 0.5) * TAU / fibers as f64;
        let (sa, sb) = match (section_at(&a, phi), section_at(&b, phi)) {
            (Ok(x), Ok(y)) => (x, y),
            _ => {
                irregular += 1;
                continue;
            }
        };
        let lo = sa
            .points
            .iter()
            .chain(&sb.points)
            .fold([f64::INFINITY; 3], |m, p| {
                [m[0].min(p[0]), m[1].min(p[1]), m[2].min(p[2])]
            });
        let hi = sa
            .points
            .iter()
            .chain(&sb.points)
            .fold([f64::NEG_INFINITY; 3], |m, p| {
                [m[0].max(p[0]), m[1].max(p[1]), m[2].max(p[2])]
            });
        let mut parities = Vec::new();
        let mut degenerate = 0;
        let mut errors = Vec::new();
        for _ in 0..apexes {
            // general position above every section point
            let apex: [f64; 3] = std::array::from_fn(|d| {
                let span = (hi[d] - lo[d]).max(1.0);
                if d == 2 {
                    hi[2].max(0.0) + span * (0.5 + rng.gen::<f64>())
                } else {
                    lo[d] - span + 3.0 * span * rng.gen::<f64>()
                }
            });
            match cone_parity(&sa.points, &sb.points, &apex) {
                Ok(p) => parities.push((p, apex)),
                Err(OrderError::DegeneratePosition) => degenerate += 1,
                Err(e) => errors.push(e.to_string()),
            }
        }
        let reference = *first.get_or_insert(parities.first().map(|p| p.0).unwrap_or(false));
        let bad: Vec<_> = parities.iter().filter(|p| p.0 != reference).collect();
        discrepancies += bad.len();
        outcomes.push(if bad.is_empty() && errors.is_empty() && degenerate < apexes {
            Ok(Value::Null)
        } else {
            Err(json!({ "phi": phi, "reference": reference, "disagreeing_apexes": bad.iter().map(|p| p.1).collect::<Vec<_>>(), "degenerate": degenerate, "errors": errors }))
        });
    }
    SuiteSummary::new(
        Suite::ParityInvariance,
        seed,
        outcomes,
        json!({ "apexes": apexes, "fibers": fibers, "irregular": irregular, "discrepancies": discrepancies }),
    )
}
