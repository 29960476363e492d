//! File-level commands: construct a lifting, analyze a matrix, simulate a
//! code. Each returns the text it would print; the `nbqc` binary is a thin
//! argument parser over these.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::alist::NonBinaryAlist;
use crate::analysis::Analysis;
use crate::base::BaseMatrix;
use crate::error::{Error, Result};
use crate::lifter::{greedy_lift, ConstructionConfig, ConstructionReport};
use crate::sim::{run_monte_carlo, CodeInstance, SimConfig, SimResult};

/// Seed used when none is given on the command line.
pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

impl FileDigest {
    fn of(path: &Path, bytes: &[u8]) -> Self {
        Self {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

/// Everything needed to rerun a command and get identical output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub construction: Option<ConstructionConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simulation: Option<SimConfig>,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
}

impl RunManifest {
    fn new(command: &str, seed: u64) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            seed,
            construction: None,
            simulation: None,
            inputs: Vec::new(),
            outputs: Vec::new(),
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("manifest serializes")
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::from(e).in_file(path))
}

fn write(path: &Path, text: &str) -> Result<FileDigest> {
    fs::write(path, text).map_err(|e| Error::from(e).in_file(path))?;
    Ok(FileDigest::of(path, text.as_bytes()))
}

/// `out` with `suffix` appended to its file name.
pub fn sibling(out: &Path, suffix: &str) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(suffix);
    out.with_file_name(name)
}

#[derive(Debug, Clone)]
pub struct ConstructArgs {
    pub base: PathBuf,
    pub out: PathBuf,
    pub config: ConstructionConfig,
    /// Also write the scalar section of the matrix.
    pub full: bool,
}

#[derive(Debug, Clone)]
pub struct ConstructOutcome {
    pub report: ConstructionReport,
    pub n: usize,
    pub k: usize,
    pub summary: String,
}

fn report_text(report: &ConstructionReport, n: usize, k: usize) -> String {
    let mut out = String::new();
    let cfg = &report.config;
    writeln!(
        out,
        "# s={} q={} depth={} trials={} seed={} init={:?}",
        cfg.s, cfg.q, cfg.depth, cfg.trials_per_edge, cfg.seed, cfg.init
    )
    .unwrap();
    writeln!(out, "initial ace: {}", report.initial_ace).unwrap();
    writeln!(out, "final ace: {}", report.final_ace).unwrap();
    for l in &report.per_length {
        writeln!(
            out,
            "length {}: {} eliminated, {} uneliminated",
            l.length, l.eliminated, l.uneliminated
        )
        .unwrap();
    }
    match report.girth {
        Some(g) => writeln!(out, "girth: {g}").unwrap(),
        None => writeln!(out, "girth: inf").unwrap(),
    }
    writeln!(out, "N = {n}, K = {k}").unwrap();
    writeln!(
        out,
        "trials: {}, accepted: {}",
        report.trials,
        report.accepted.len()
    )
    .unwrap();
    if !report.capped_lengths.is_empty() {
        writeln!(
            out,
            "cycle enumeration capped at lengths {:?}",
            report.capped_lengths
        )
        .unwrap();
    }
    for line in report.log_lines() {
        writeln!(out, "{line}").unwrap();
    }
    out
}

/// Greedy lifting of the base matrix in `args.base`. Writes the matrix to
/// `args.out`, the construction report to `<out>.report.txt` and the
/// manifest to `<out>.manifest.toml`.
pub fn construct(args: &ConstructArgs) -> Result<ConstructOutcome> {
    args.config.validate()?;
    let text = read(&args.base)?;
    let base: BaseMatrix = text.parse().map_err(|e: Error| e.in_file(&args.base))?;
    let (lifting, report) = greedy_lift(&base, &args.config)?;
    let code = CodeInstance::from_matrix(lifting.expand(), lifting.field().clone())?;
    let (n, k) = (code.n(), code.k());

    let mut manifest = RunManifest::new("construct", args.config.seed);
    manifest.construction = Some(args.config.clone());
    manifest
        .inputs
        .push(FileDigest::of(&args.base, text.as_bytes()));
    let alist = NonBinaryAlist::from_lifting(lifting);
    manifest
        .outputs
        .push(write(&args.out, &alist.to_text(args.full))?);
    manifest.outputs.push(write(
        &sibling(&args.out, ".report.txt"),
        &report_text(&report, n, k),
    )?);
    write(&sibling(&args.out, ".manifest.toml"), &manifest.to_toml())?;

    let mut summary = String::new();
    writeln!(summary, "final ace vector: {}", report.final_ace).unwrap();
    match report.girth {
        Some(g) => writeln!(summary, "girth: {g}").unwrap(),
        None => writeln!(summary, "girth: inf").unwrap(),
    }
    writeln!(
        summary,
        "N = {n}, K = {k}, rate = {:.6}",
        k as f64 / n as f64
    )
    .unwrap();
    writeln!(summary, "wrote {}", args.out.display()).unwrap();
    Ok(ConstructOutcome {
        report,
        n,
        k,
        summary,
    })
}

/// Reads either a base matrix or an `nbalist` file.
pub fn analyze(
    path: &Path,
    depth: usize,
    cycle_cap: Option<usize>,
    floor_threshold: u128,
) -> Result<Analysis> {
    if depth < 4 || !depth.is_multiple_of(2) || depth > 12 {
        return Err(Error::InvalidParameter(format!(
            "depth must be even and in 4..=12, got {depth}"
        )));
    }
    let text = read(path)?;
    let is_alist = text
        .lines()
        .flat_map(|l| l.split('#').next().unwrap_or("").split_whitespace())
        .next()
        .is_some_and(|t| t == "nbalist");
    let analysis = if is_alist {
        let alist: NonBinaryAlist = text.parse().map_err(|e: Error| e.in_file(path))?;
        match alist.lifting() {
            Some(l) => Analysis::analyze_lifting(l, depth, cycle_cap, floor_threshold)?,
            None => Analysis::analyze_matrix(alist.matrix(), floor_threshold),
        }
    } else {
        let base: BaseMatrix = text.parse().map_err(|e: Error| e.in_file(path))?;
        Analysis::analyze_base(&base, depth, cycle_cap, floor_threshold)?
    };
    Ok(analysis)
}

/// Monte-Carlo run of the code in `matrix`, configured by the TOML file
/// `config`. Writes the result table to `out` and the manifest to
/// `<out>.manifest.toml`. `seed` overrides the configured seed.
pub fn simulate(matrix: &Path, config: &Path, out: &Path, seed: Option<u64>) -> Result<SimResult> {
    let matrix_text = read(matrix)?;
    let alist: NonBinaryAlist = matrix_text.parse().map_err(|e: Error| e.in_file(matrix))?;
    let config_text = read(config)?;
    let mut cfg = SimConfig::from_toml(&config_text).map_err(|e| e.in_file(config))?;
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    let code = CodeInstance::from_matrix(alist.matrix().clone(), alist.field().clone())?;
    let result = run_monte_carlo(&code, &cfg)?;

    let mut manifest = RunManifest::new("simulate", cfg.seed);
    manifest
        .inputs
        .push(FileDigest::of(matrix, matrix_text.as_bytes()));
    manifest
        .inputs
        .push(FileDigest::of(config, config_text.as_bytes()));
    manifest.simulation = Some(cfg);
    manifest.outputs.push(write(out, &result.to_text())?);
    write(&sibling(out, ".manifest.toml"), &manifest.to_toml())?;
    Ok(result)
}
