//! Command-line interface.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use cloudqc_core::experiments::adder::{run_adder, AdderCase};
use cloudqc_core::experiments::orbit::{graph_orbit_run, loop_orbit, star_orbit};
use cloudqc_core::experiments::rabi::{rabi_curve, RabiMode};
use cloudqc_core::experiments::teleport_t::{deterministic_t_run, DetTConfig, GChoice, Inversion};
use cloudqc_core::experiments::{point_seed, DEFAULT_SHOTS};
use cloudqc_core::routing::route_circuit;
use cloudqc_core::unitary::circuit_unitary;
use cloudqc_core::{circuit::validate_against_device, DeviceModel, GraphAdjacency, NoiseModel, RngSeed};

use crate::formats::circuit::{parse_circuit, write_circuit};
use crate::formats::graph::parse_graph;
use crate::formats::ParseError;
use crate::report::{adder_report, dett_report, orbit_report, rabi_report, Report, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

/// Reproducible small-device quantum experiments.
#[derive(Debug, Parser)]
#[command(name = "cloudqc", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Logical Rabi oscillation curves (bare, encoded, post-selected).
    Rabi {
        #[command(flatten)]
        run: RunArgs,
        /// Restrict to one mode.
        #[arg(long, value_enum)]
        mode: Option<RabiModeArg>,
    },
    /// Two-bit Fourier adder.
    Adder {
        #[command(flatten)]
        run: RunArgs,
        /// Addend register value (0..=3); requires --b.
        #[arg(long, requires = "b", conflicts_with = "preset")]
        a: Option<u8>,
        /// Target register value (0..=3); requires --a.
        #[arg(long, requires = "a")]
        b: Option<u8>,
        #[arg(long, value_enum, default_value = "all")]
        preset: AdderPreset,
    },
    /// Graph-state local-complementation orbit with stabilizer parities.
    Graph {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, conflicts_with = "graph")]
        preset: Option<OrbitPreset>,
        /// Graph file: node count, then `i j` edges.
        #[arg(long, requires = "steps")]
        graph: Option<PathBuf>,
        /// Comma-separated nodes to complement in order.
        #[arg(long, value_delimiter = ',')]
        steps: Option<Vec<usize>>,
    },
    /// Teleported T gate with selectable correction.
    Dett {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum)]
        g: GArg,
        #[arg(long, value_enum, default_value = "static_tdg")]
        invert: InvertArg,
    },
    /// Route a circuit file onto the star device and verify it.
    Route {
        /// Circuit text file.
        circuit: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Debug, Args)]
pub struct OutArgs {
    /// Output directory.
    #[arg(long, env = "CLOUDQC_OUT", default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, default_value_t = DEFAULT_SHOTS, value_parser = clap::value_parser!(u64).range(1..))]
    pub shots: u64,
    #[arg(long)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutArgs,
    #[arg(long, value_enum, default_value = "both")]
    pub format: Format,
    /// Noiseless sampling.
    #[arg(long, conflicts_with = "noise")]
    pub ideal: bool,
    /// Noise rates, e.g. `p1=0.002,p2=0.03,ro=0.05`; unspecified rates keep their defaults.
    #[arg(long)]
    pub noise: Option<NoiseArg>,
}

impl RunArgs {
    /// `None` for ideal runs, including all-zero rates.
    pub fn noise_model(&self) -> Option<NoiseModel> {
        if self.ideal {
            return None;
        }
        let n = self.noise.as_ref().map_or_else(NoiseModel::default, |n| n.0);
        (!n.is_ideal()).then_some(n)
    }

    fn config(&self, experiment: &str) -> RunConfig {
        RunConfig::new(experiment, self.shots, RngSeed(self.seed), self.noise_model().as_ref())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseArg(pub NoiseModel);

impl FromStr for NoiseArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut n = NoiseModel::default();
        for part in s.split(',').filter(|p| !p.trim().is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| format!("expected key=value, found `{part}`"))?;
            let v: f64 = v.trim().parse().map_err(|_| format!("bad rate `{v}`"))?;
            match k.trim() {
                "p1" => n.p1 = v,
                "p2" => n.p2 = v,
                "ro" | "readout" => n.p_readout = v,
                other => return Err(format!("unknown noise key `{other}` (use p1, p2, ro)")),
            }
        }
        NoiseModel::new(n.p1, n.p2, n.p_readout).map(NoiseArg).map_err(|e| e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RabiModeArg {
    Bare,
    #[value(name = "encoded_raw")]
    EncodedRaw,
    #[value(name = "encoded_postselected")]
    EncodedPostselected,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AdderPreset {
    /// All sixteen basis inputs plus both superposition inputs.
    All,
    /// The sixteen basis inputs.
    Basis,
    /// `a = 1`, target `(|00> + |11>)/sqrt 2`.
    Entangled,
    /// `a` in `(|00> + |11>)/sqrt 2`, `b = 1`.
    Superposition,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrbitPreset {
    StarOrbit,
    LoopOrbit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GArg {
    #[value(name = "T", alias = "t")]
    T,
    #[value(name = "Tdg", alias = "tdg", alias = "TDG")]
    Tdg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InvertArg {
    #[value(name = "static_tdg")]
    StaticTdg,
    #[value(name = "static_t")]
    StaticT,
    #[value(name = "frame_aware")]
    FrameAware,
}

/// Failure classes mapped to exit codes.
#[derive(Debug)]
pub enum Failure {
    Parse(anyhow::Error),
    Verify(String),
    Other(anyhow::Error),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Parse(_) => EXIT_PARSE,
            Failure::Verify(_) => EXIT_VERIFY,
            Failure::Other(_) => EXIT_USAGE,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Parse(e) => write!(f, "parse error: {e:#}"),
            Failure::Verify(m) => write!(f, "verification failed: {m}"),
            Failure::Other(e) => write!(f, "{e:#}"),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Other(e)
    }
}

impl From<cloudqc_core::Error> for Failure {
    fn from(e: cloudqc_core::Error) -> Self {
        Failure::Other(e.into())
    }
}

fn write_file(dir: &Path, name: &str, contents: &str) -> anyhow::Result<PathBuf> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(name);
    fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

fn emit(report: &Report, run: &RunArgs) -> anyhow::Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    if run.format != Format::Json {
        written.push(write_file(&run.out.out, &format!("{}.csv", report.name), &report.csv)?);
    }
    if run.format != Format::Csv {
        written.push(write_file(&run.out.out, &format!("{}.json", report.name), &report.json)?);
    }
    Ok(written)
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(Failure::Other)
}

fn parse_failure(path: &Path, e: ParseError) -> Failure {
    Failure::Parse(anyhow::Error::new(e).context(path.display().to_string()))
}

/// Run one command; returns the human-readable summary lines.
pub fn execute(cli: &Cli) -> Result<Vec<String>, Failure> {
    let mut lines = Vec::new();
    match &cli.command {
        Command::Rabi { run, mode } => {
            let noise = run.noise_model();
            let modes: Vec<RabiMode> = match mode {
                None => RabiMode::ALL.to_vec(),
                Some(RabiModeArg::Bare) => vec![RabiMode::Bare],
                Some(RabiModeArg::EncodedRaw) => vec![RabiMode::EncodedRaw],
                Some(RabiModeArg::EncodedPostselected) => vec![RabiMode::EncodedPostselected],
            };
            // one independent seed per mode so a single-mode run matches the full run
            let curves = modes
                .iter()
                .map(|&m| rabi_curve(m, run.shots, noise.as_ref(), point_seed(RngSeed(run.seed), m as u64)))
                .collect::<Result<Vec<_>, _>>()?;
            for c in &curves {
                let v = cloudqc_core::experiments::rabi::curve_visibility(c);
                lines.push(format!("{}: visibility {v:.4}", c[0].mode.name()));
            }
            let report = rabi_report(&run.config("rabi"), &curves);
            lines.extend(emit(&report, run)?.iter().map(|p| format!("wrote {}", p.display())));
        }
        Command::Adder { run, a, b, preset } => {
            let noise = run.noise_model();
            let cases = match (a, b) {
                (Some(a), Some(b)) => vec![AdderCase::basis(*a, *b).map_err(|e| Failure::Other(e.into()))?],
                _ => match preset {
                    AdderPreset::All => AdderCase::presets(),
                    AdderPreset::Basis => AdderCase::presets().into_iter().take(16).collect(),
                    AdderPreset::Entangled => vec![AdderCase::entangled_target()],
                    AdderPreset::Superposition => vec![AdderCase::superposed_addend()],
                },
            };
            let runs = cases
                .iter()
                .enumerate()
                .map(|(i, c)| run_adder(c, run.shots, noise.as_ref(), point_seed(RngSeed(run.seed), i as u64)))
                .collect::<Result<Vec<_>, _>>()?;
            for r in &runs {
                let mode = r.histogram.mode().map(|m| m.to_string()).unwrap_or_default();
                lines.push(format!(
                    "{}: correct {:.4}, modal {mode}{}",
                    r.case.name,
                    r.flagged_probability(),
                    if r.mode_is_flagged() { " (correct)" } else { "" }
                ));
            }
            let mut config = run.config("adder");
            if let (Some(a), Some(b)) = (a, b) {
                config = config.with("a", a).with("b", b);
            } else {
                config = config.with("preset", format!("{preset:?}").to_lowercase());
            }
            let report = adder_report(&config, &runs);
            lines.extend(emit(&report, run)?.iter().map(|p| format!("wrote {}", p.display())));
        }
        Command::Graph { run, preset, graph, steps } => {
            let (initial, steps, label): (GraphAdjacency, Vec<usize>, String) = match (graph, preset) {
                (Some(path), _) => {
                    let g = parse_graph(&read(path)?).map_err(|e| parse_failure(path, e))?;
                    (g, steps.clone().unwrap_or_default(), path.display().to_string())
                }
                (None, Some(OrbitPreset::LoopOrbit)) => {
                    let (g, s) = loop_orbit();
                    (g, s, "loop-orbit".into())
                }
                (None, _) => {
                    let (g, s) = star_orbit();
                    (g, s, "star-orbit".into())
                }
            };
            let result = graph_orbit_run(&initial, &steps, run.shots, run.noise_model().as_ref(), RngSeed(run.seed))?;
            for (k, s) in result.iter().enumerate() {
                let signs: Vec<String> = s.parities.iter().map(|p| format!("{p:+.3}")).collect();
                lines.push(format!("step {k}: {}", signs.join(" ")));
            }
            let config =
                run.config("graph").with("graph", label).with("steps", steps.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(","));
            let report = orbit_report(&config, &result);
            lines.extend(emit(&report, run)?.iter().map(|p| format!("wrote {}", p.display())));
            if run.noise_model().is_none() && !result.iter().all(|s| s.signs_match_oracle()) {
                return Err(Failure::Verify("sampled stabilizer signs disagree with the exact expectations".into()));
            }
        }
        Command::Dett { run, g, invert } => {
            let config = DetTConfig {
                g: match g {
                    GArg::T => GChoice::T,
                    GArg::Tdg => GChoice::Tdg,
                },
                inversion: match invert {
                    InvertArg::StaticTdg => Inversion::StaticTdg,
                    InvertArg::StaticT => Inversion::StaticT,
                    InvertArg::FrameAware => Inversion::FrameAware,
                },
            };
            let result = deterministic_t_run(&config, run.shots, run.noise_model().as_ref(), RngSeed(run.seed))?;
            lines.push(format!("success {:.4} (pattern {})", result.success, result.pattern.name()));
            let rc = run.config("dett").with("g", config.g.name()).with("invert", config.inversion.name());
            let report = dett_report(&rc, &result);
            lines.extend(emit(&report, run)?.iter().map(|p| format!("wrote {}", p.display())));
        }
        Command::Route { circuit, out } => {
            let input = parse_circuit(&read(circuit)?).map_err(|e| parse_failure(circuit, e))?;
            let device = DeviceModel::star5();
            if input.qubit_count() > device.qubit_count() {
                return Err(Failure::Other(anyhow::anyhow!(
                    "circuit uses {} qubits; the device has {}",
                    input.qubit_count(),
                    device.qubit_count()
                )));
            }
            let widened = input.widened(device.qubit_count())?;
            let (routed, perm) = route_circuit(&widened, &device)?;
            let legal = validate_against_device(&routed, &device).is_valid();
            let deviation = circuit_unitary(&routed.without_measurements())?
                .max_deviation_up_to_phase(&perm.unitary().mul(&circuit_unitary(&widened.without_measurements())?));
            let stem = circuit.file_stem().and_then(|s| s.to_str()).unwrap_or("circuit");
            let p1 = write_file(&out.out, &format!("{stem}.routed.txt"), &write_circuit(&routed))?;
            let perm_json = serde_json::to_string(&perm.labels()).expect("serializes") + "\n";
            let p2 = write_file(&out.out, &format!("{stem}.permutation.json"), &perm_json)?;
            let verdict = serde_json::json!({
                "legal": legal,
                "max_deviation": deviation,
                "equivalent": legal && deviation < 1e-9,
                "cnots_in": input.cnot_count(),
                "cnots_out": routed.cnot_count(),
            });
            let p3 = write_file(
                &out.out,
                &format!("{stem}.verify.json"),
                &(serde_json::to_string_pretty(&verdict).expect("serializes") + "\n"),
            )?;
            lines.push(format!("permutation {:?}, max deviation {deviation:.3e}", perm.labels()));
            lines.extend([p1, p2, p3].iter().map(|p| format!("wrote {}", p.display())));
            if !(legal && deviation < 1e-9) {
                return Err(Failure::Verify(format!("routed circuit legal={legal}, deviation {deviation:.3e}")));
            }
        }
    }
    Ok(lines)
}
