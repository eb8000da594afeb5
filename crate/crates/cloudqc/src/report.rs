//! JSON reports and plotting CSVs for each experiment.

use std::collections::BTreeMap;

use cloudqc_core::experiments::adder::AdderRun;
use cloudqc_core::experiments::orbit::OrbitStep;
use cloudqc_core::experiments::rabi::{rabi_exact, RabiPoint};
use cloudqc_core::experiments::teleport_t::DetTRun;
use cloudqc_core::sampling::standard_error;
use cloudqc_core::{NoiseModel, PauliFrame, RngSeed};
use serde::Serialize;

use crate::formats::histogram::{histogram_rows, HistogramRow};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NoiseJson {
    pub p1: f64,
    pub p2: f64,
    pub readout: f64,
}

impl From<&NoiseModel> for NoiseJson {
    fn from(n: &NoiseModel) -> Self {
        NoiseJson { p1: n.p1, p2: n.p2, readout: n.p_readout }
    }
}

/// The run parameters echoed into every report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub experiment: String,
    pub shots: u64,
    pub seed: u64,
    /// `None` for ideal runs.
    pub noise: Option<NoiseJson>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
}

impl RunConfig {
    pub fn new(experiment: &str, shots: u64, seed: RngSeed, noise: Option<&NoiseModel>) -> Self {
        RunConfig { experiment: experiment.into(), shots, seed: seed.0, noise: noise.map(NoiseJson::from), params: BTreeMap::new() }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.into(), value.to_string());
        self
    }
}

/// A finished report: the JSON document and the plotting CSV.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub name: String,
    pub json: String,
    pub csv: String,
}

fn to_csv<T: Serialize>(rows: &[T], header: &[&str]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    if rows.is_empty() {
        w.write_record(header).expect("in-memory write");
    }
    for row in rows {
        w.serialize(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct RabiRow {
    n: usize,
    mode: &'static str,
    p: f64,
    se: f64,
    retained_fraction: f64,
    ideal: f64,
}

#[derive(Serialize)]
struct RabiJson<'a> {
    config: &'a RunConfig,
    seed: u64,
    points: &'a [RabiRow],
    visibility: BTreeMap<&'static str, f64>,
}

/// `curves` holds one nine-point curve per mode.
pub fn rabi_report(config: &RunConfig, curves: &[Vec<RabiPoint>]) -> Report {
    let mut rows = Vec::new();
    let mut visibility = BTreeMap::new();
    for curve in curves {
        for p in curve {
            let ideal = rabi_exact(p.mode, p.n_steps).map(|(p, _)| p).unwrap_or(f64::NAN);
            rows.push(RabiRow {
                n: p.n_steps,
                mode: p.mode.name(),
                p: p.p_logical_zero,
                se: p.se,
                retained_fraction: p.retained_fraction,
                ideal,
            });
        }
        if let Some(first) = curve.first() {
            visibility.insert(first.mode.name(), cloudqc_core::experiments::rabi::curve_visibility(curve));
        }
    }
    let json = to_json(&RabiJson { config, seed: config.seed, points: &rows, visibility });
    Report { name: "rabi".into(), json, csv: to_csv(&rows, &["n", "mode", "p", "se", "retained_fraction", "ideal"]) }
}

#[derive(Serialize)]
struct AdderRow {
    case: String,
    bitstring: String,
    count: u64,
    probability: f64,
    se: f64,
    flag: bool,
}

#[derive(Serialize)]
struct AdderCaseJson {
    case: String,
    histogram: Vec<HistogramRow>,
    flags: Vec<String>,
    flagged_probability: f64,
    mode_is_flagged: bool,
    permutation: Vec<usize>,
}

#[derive(Serialize)]
struct AdderJson<'a> {
    config: &'a RunConfig,
    seed: u64,
    bit_order: &'static str,
    cases: Vec<AdderCaseJson>,
}

pub fn adder_report(config: &RunConfig, runs: &[AdderRun]) -> Report {
    let mut rows = Vec::new();
    let mut cases = Vec::new();
    for run in runs {
        let hist = histogram_rows(&run.histogram);
        for r in &hist {
            let bits = r.bitstring.parse().expect("round-trips");
            rows.push(AdderRow {
                case: run.case.name.clone(),
                bitstring: r.bitstring.clone(),
                count: r.count,
                probability: r.probability,
                se: r.se,
                flag: run.is_flagged(&bits),
            });
        }
        cases.push(AdderCaseJson {
            case: run.case.name.clone(),
            histogram: hist,
            flags: run.expected.iter().map(|b| b.to_string()).collect(),
            flagged_probability: run.flagged_probability(),
            mode_is_flagged: run.mode_is_flagged(),
            permutation: run.permutation.labels(),
        });
    }
    let json = to_json(&AdderJson { config, seed: config.seed, bit_order: "a1 a2 b1 b2", cases });
    Report { name: "adder".into(), json, csv: to_csv(&rows, &["case", "bitstring", "count", "probability", "se", "flag"]) }
}

#[derive(Serialize)]
struct OrbitRow {
    step: usize,
    lc_node: Option<usize>,
    stabilizer: String,
    parity: f64,
    se: f64,
    expected: f64,
}

#[derive(Serialize)]
struct OrbitStepJson {
    step: usize,
    lc_node: Option<usize>,
    edges: Vec<(usize, usize)>,
    stabilizers: Vec<String>,
    parities: Vec<f64>,
    expected: Vec<f64>,
    signs_match: bool,
}

#[derive(Serialize)]
struct OrbitJson<'a> {
    config: &'a RunConfig,
    seed: u64,
    steps: Vec<OrbitStepJson>,
}

/// SE of a `+-1` mean from `shots` samples, via the probability of `+1`.
fn parity_se(parity: f64, shots: u64) -> f64 {
    2.0 * standard_error((1.0 + parity) / 2.0, shots)
}

pub fn orbit_report(config: &RunConfig, steps: &[OrbitStep]) -> Report {
    let mut rows = Vec::new();
    let mut out = Vec::new();
    for (k, s) in steps.iter().enumerate() {
        let lc_node = s.lc_node.map(|q| q.label());
        for ((stab, &parity), &expected) in s.stabilizers.iter().zip(&s.parities).zip(&s.expected) {
            rows.push(OrbitRow { step: k, lc_node, stabilizer: stab.to_string(), parity, se: parity_se(parity, s.shots), expected });
        }
        out.push(OrbitStepJson {
            step: k,
            lc_node,
            edges: s.graph.edges(),
            stabilizers: s.stabilizers.iter().map(|p| p.to_string()).collect(),
            parities: s.parities.clone(),
            expected: s.expected.clone(),
            signs_match: s.signs_match_oracle(),
        });
    }
    let json = to_json(&OrbitJson { config, seed: config.seed, steps: out });
    Report { name: "graph".into(), json, csv: to_csv(&rows, &["step", "lc_node", "stabilizer", "parity", "se", "expected"]) }
}

/// `{qubit: "I" | "X" | "Z" | "Y"}` with qubit labels as keys.
pub fn frame_json(frame: &PauliFrame) -> BTreeMap<String, &'static str> {
    frame.entries().map(|(q, l)| (q.label().to_string(), l.frame_symbol())).collect()
}

#[derive(Serialize)]
struct DetTRow {
    bitstring: String,
    count: u64,
    probability: f64,
    se: f64,
    corrected_flag: bool,
}

#[derive(Serialize)]
struct DetTJson<'a> {
    config: &'a RunConfig,
    seed: u64,
    bit_order: &'static str,
    pattern: &'static str,
    histogram: Vec<HistogramRow>,
    flags: Vec<String>,
    success: f64,
    se: f64,
    /// Output-qubit frame for each measurement result row `r1 r2 r3 r4`.
    frames: BTreeMap<String, BTreeMap<String, &'static str>>,
}

pub fn dett_report(config: &RunConfig, run: &DetTRun) -> Report {
    let hist = histogram_rows(&run.histogram);
    let rows: Vec<_> = hist
        .iter()
        .map(|r| DetTRow {
            bitstring: r.bitstring.clone(),
            count: r.count,
            probability: r.probability,
            se: r.se,
            corrected_flag: run.is_success(&r.bitstring.parse().expect("round-trips")),
        })
        .collect();
    let frames = run.frames.iter().map(|(row, f)| (row.to_string(), frame_json(f))).collect();
    let json = to_json(&DetTJson {
        config,
        seed: config.seed,
        bit_order: "r1 r2 r3 r4 out",
        pattern: run.pattern.name(),
        histogram: hist,
        flags: run.success_outcomes().iter().map(|b| b.to_string()).collect(),
        success: run.success,
        se: standard_error(run.success, run.histogram.shots()),
        frames,
    });
    Report { name: "dett".into(), json, csv: to_csv(&rows, &["bitstring", "count", "probability", "se", "corrected_flag"]) }
}
