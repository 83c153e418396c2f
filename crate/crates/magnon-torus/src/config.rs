//! Run configuration: a flat, line-oriented `key = value` format with
//! bracketed section headers and comma-separated arrays.
//!
//! ```text
//! [lattice]
//! preset = chain          # chain | square | cubic | honeycomb
//! spin_a = 1.0
//! spin_b = 1.0
//!
//! [couplings]
//! regime = FM
//! J = -1.0
//! D = 0.0
//! r = -0.1
//! K = 0.0
//! J_z = -1.0
//! B = 0.0
//!
//! [kgrid]
//! path = default          # named BZ segment, sampled uniformly
//! count = 64
//!
//! [run]
//! mn = 0, 0               # repeated; one (m, n) pair per line
//! mn = 1, 1
//! cutoff = 80
//! entropy_base = nats     # nats | bits
//! format = csv            # csv | json
//! output = sweep.csv
//! ```
//!
//! Custom lattices replace `preset` with a `name` and repeated
//! `neighbor = ...` lines (comma-separated components); explicit k-grids
//! replace `path`/`count` with repeated `point = ...` lines.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::lattice::{KPoint, LatticeSpec};
use crate::magnon::{CouplingSet, Regime};
use crate::splitting;
use crate::squeezing;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntropyBase {
    Nats,
    Bits,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Either explicit k-points or a named Brillouin-zone segment with a
/// sample count.
#[derive(Debug, Clone, PartialEq)]
pub enum KGridSpec {
    Points(Vec<KPoint>),
    Path { segment: String, count: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub lattice: LatticeSpec,
    pub couplings: CouplingSet,
    pub k_grid: KGridSpec,
    /// Sorted, deduplicated (m, n) list; rows are emitted in this order.
    pub quantum_numbers: Vec<(u32, u32)>,
    /// Squeezing series cutoff; `None` selects the tail-bound default per
    /// k-point.
    pub cutoff: Option<usize>,
    pub entropy_base: EntropyBase,
    pub output_format: OutputFormat,
    pub output_path: Option<String>,
}

impl RunConfig {
    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let entries = tokenize(text)?;
        let lattice = parse_lattice(&entries)?;
        let couplings = parse_couplings(&entries)?;
        let k_grid = parse_kgrid(&entries, &lattice)?;
        let run = parse_run(&entries)?;

        for &(m, n) in &run.quantum_numbers {
            if m + n > splitting::TOTAL_OCCUPATION_CAP {
                return Err(Error::Config(format!(
                    "run.mn = ({m}, {n}) exceeds the splitting cap m + n ≤ {}",
                    splitting::TOTAL_OCCUPATION_CAP
                )));
            }
            if m > squeezing::MODE_OCCUPATION_CAP || n > squeezing::MODE_OCCUPATION_CAP {
                return Err(Error::Config(format!(
                    "run.mn = ({m}, {n}) exceeds the squeezing cap m, n ≤ {}",
                    squeezing::MODE_OCCUPATION_CAP
                )));
            }
        }

        Ok(RunConfig {
            lattice,
            couplings,
            k_grid,
            quantum_numbers: run.quantum_numbers,
            cutoff: run.cutoff,
            entropy_base: run.entropy_base,
            output_format: run.output_format,
            output_path: run.output_path,
        })
    }

    /// Expand the k-grid into explicit points.
    pub fn resolve_k_points(&self) -> Result<Vec<KPoint>> {
        match &self.k_grid {
            KGridSpec::Points(points) => Ok(points.clone()),
            KGridSpec::Path { segment, count } => bz_path(&self.lattice, segment, *count),
        }
    }
}

/// Uniform arc-length sampling of a named Brillouin-zone segment for the
/// built-in lattices.
pub fn bz_path(lattice: &LatticeSpec, segment: &str, count: usize) -> Result<Vec<KPoint>> {
    if count < 1 {
        return Err(Error::Config("kgrid.count must be at least 1".into()));
    }
    let waypoints: Vec<Vec<f64>> = match (lattice.name(), segment) {
        ("chain", "default" | "zone") => vec![vec![0.0], vec![PI]],
        ("square", "default" | "gamma-x-m-gamma") => {
            vec![vec![0.0, 0.0], vec![PI, 0.0], vec![PI, PI], vec![0.0, 0.0]]
        }
        ("cubic", "default" | "gamma-x-m-gamma-r") => vec![
            vec![0.0, 0.0, 0.0],
            vec![PI, 0.0, 0.0],
            vec![PI, PI, 0.0],
            vec![0.0, 0.0, 0.0],
            vec![PI, PI, PI],
        ],
        ("honeycomb", "default" | "gamma-k-m-gamma") => {
            let kx = 2.0 * PI / 3.0;
            vec![
                vec![0.0, 0.0],
                vec![kx, 2.0 * PI / (3.0 * 3.0_f64.sqrt())],
                vec![kx, 0.0],
                vec![0.0, 0.0],
            ]
        }
        (name, seg) => {
            return Err(Error::Config(format!(
                "no BZ path preset '{seg}' for lattice '{name}'; \
                 use explicit kgrid.point entries"
            )))
        }
    };

    let leg_lengths: Vec<f64> = waypoints
        .windows(2)
        .map(|w| {
            w[0].iter()
                .zip(&w[1])
                .map(|(a, b)| (b - a) * (b - a))
                .sum::<f64>()
                .sqrt()
        })
        .collect();
    let total: f64 = leg_lengths.iter().sum();

    if count == 1 {
        return Ok(vec![KPoint::new(waypoints[0].clone())]);
    }
    let mut points = Vec::with_capacity(count);
    for i in 0..count {
        let mut target = total * i as f64 / (count - 1) as f64;
        let mut leg = 0;
        while leg < leg_lengths.len() - 1 && target > leg_lengths[leg] {
            target -= leg_lengths[leg];
            leg += 1;
        }
        let t = if leg_lengths[leg] > 0.0 {
            target / leg_lengths[leg]
        } else {
            0.0
        };
        let (a, b) = (&waypoints[leg], &waypoints[leg + 1]);
        points.push(KPoint::new(
            a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect(),
        ));
    }
    Ok(points)
}

struct Entry {
    section: String,
    key: String,
    value: String,
    line: usize,
}

fn tokenize(text: &str) -> Result<Vec<Entry>> {
    let mut section = String::new();
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name.strip_suffix(']').ok_or_else(|| {
                Error::Config(format!("line {}: unterminated section header", idx + 1))
            })?;
            section = name.trim().to_string();
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Config(format!(
                "line {}: expected 'key = value', got '{line}'",
                idx + 1
            ))
        })?;
        if section.is_empty() {
            return Err(Error::Config(format!(
                "line {}: key '{}' appears before any [section]",
                idx + 1,
                key.trim()
            )));
        }
        entries.push(Entry {
            section: section.clone(),
            key: key.trim().to_string(),
            value: value.trim().to_string(),
            line: idx + 1,
        });
    }
    Ok(entries)
}

fn section<'a>(entries: &'a [Entry], name: &str) -> Vec<&'a Entry> {
    entries.iter().filter(|e| e.section == name).collect()
}

fn parse_f64(e: &Entry) -> Result<f64> {
    e.value.parse::<f64>().map_err(|_| {
        Error::Config(format!(
            "line {}: {}.{} = '{}' is not a number",
            e.line, e.section, e.key, e.value
        ))
    })
}

fn parse_vector(e: &Entry) -> Result<Vec<f64>> {
    e.value
        .split(',')
        .map(|part| {
            part.trim().parse::<f64>().map_err(|_| {
                Error::Config(format!(
                    "line {}: {}.{} component '{}' is not a number",
                    e.line,
                    e.section,
                    e.key,
                    part.trim()
                ))
            })
        })
        .collect()
}

fn parse_lattice(entries: &[Entry]) -> Result<LatticeSpec> {
    let mut preset = None;
    let mut name = None;
    let mut neighbors = Vec::new();
    let mut spin_a = 1.0;
    let mut spin_b = 1.0;
    for e in section(entries, "lattice") {
        match e.key.as_str() {
            "preset" => preset = Some(e.value.clone()),
            "name" => name = Some(e.value.clone()),
            "neighbor" => neighbors.push(parse_vector(e)?),
            "spin_a" => spin_a = parse_f64(e)?,
            "spin_b" => spin_b = parse_f64(e)?,
            other => {
                return Err(Error::Config(format!(
                    "line {}: unknown key lattice.{other}",
                    e.line
                )))
            }
        }
    }
    match (preset, neighbors.is_empty()) {
        (Some(p), true) => LatticeSpec::preset(&p, spin_a, spin_b).ok_or_else(|| {
            Error::Config(format!(
                "lattice.preset = '{p}' is not one of chain, square, cubic, honeycomb"
            ))
        }),
        (None, false) => LatticeSpec::new(
            name.unwrap_or_else(|| "custom".into()),
            neighbors,
            spin_a,
            spin_b,
        ),
        (Some(_), false) => Err(Error::Config(
            "lattice: give either a preset or neighbor vectors, not both".into(),
        )),
        (None, true) => Err(Error::Config(
            "lattice: missing preset or neighbor vectors".into(),
        )),
    }
}

fn parse_couplings(entries: &[Entry]) -> Result<CouplingSet> {
    let mut regime = None;
    let mut values = [0.0_f64; 6]; // J, D, r, K, J_z, B
    for e in section(entries, "couplings") {
        match e.key.as_str() {
            "regime" => {
                regime = Some(match e.value.to_ascii_uppercase().as_str() {
                    "FM" => Regime::Fm,
                    "AFM" => Regime::Afm,
                    other => {
                        return Err(Error::Config(format!(
                            "line {}: couplings.regime = '{other}' (expected FM or AFM)",
                            e.line
                        )))
                    }
                })
            }
            "J" => values[0] = parse_f64(e)?,
            "D" => values[1] = parse_f64(e)?,
            "r" => values[2] = parse_f64(e)?,
            "K" => values[3] = parse_f64(e)?,
            "J_z" => values[4] = parse_f64(e)?,
            "B" => values[5] = parse_f64(e)?,
            other => {
                return Err(Error::Config(format!(
                    "line {}: unknown key couplings.{other}",
                    e.line
                )))
            }
        }
    }
    let regime =
        regime.ok_or_else(|| Error::Config("couplings.regime missing (FM or AFM)".into()))?;
    Ok(CouplingSet {
        exchange: values[0],
        dm: values[1],
        exchange_anisotropy: values[2],
        symmetric_exchange: values[3],
        exchange_z: values[4],
        zeeman: values[5],
        regime,
    })
}

fn parse_kgrid(entries: &[Entry], lattice: &LatticeSpec) -> Result<KGridSpec> {
    let mut path = None;
    let mut count = None;
    let mut points = Vec::new();
    for e in section(entries, "kgrid") {
        match e.key.as_str() {
            "path" => path = Some(e.value.clone()),
            "count" => {
                count = Some(e.value.parse::<usize>().map_err(|_| {
                    Error::Config(format!(
                        "line {}: kgrid.count = '{}' is not a positive integer",
                        e.line, e.value
                    ))
                })?)
            }
            "point" => {
                let comps = parse_vector(e)?;
                if comps.len() != lattice.dimension() {
                    return Err(Error::Config(format!(
                        "line {}: kgrid.point has dimension {} but lattice '{}' has dimension {}",
                        e.line,
                        comps.len(),
                        lattice.name(),
                        lattice.dimension()
                    )));
                }
                points.push(KPoint::new(comps));
            }
            other => {
                return Err(Error::Config(format!(
                    "line {}: unknown key kgrid.{other}",
                    e.line
                )))
            }
        }
    }
    match (path, points.is_empty()) {
        (Some(segment), true) => {
            let count = count.unwrap_or(33);
            if count < 1 {
                return Err(Error::Config("kgrid.count must be at least 1".into()));
            }
            Ok(KGridSpec::Path { segment, count })
        }
        (None, false) => Ok(KGridSpec::Points(points)),
        (Some(_), false) => Err(Error::Config(
            "kgrid: give either a path or explicit points, not both".into(),
        )),
        (None, true) => Err(Error::Config(
            "kgrid: missing path or explicit points".into(),
        )),
    }
}

struct RunSection {
    quantum_numbers: Vec<(u32, u32)>,
    cutoff: Option<usize>,
    entropy_base: EntropyBase,
    output_format: OutputFormat,
    output_path: Option<String>,
}

fn parse_run(entries: &[Entry]) -> Result<RunSection> {
    let mut quantum_numbers = Vec::new();
    let mut cutoff = None;
    let mut entropy_base = EntropyBase::Nats;
    let mut output_format = OutputFormat::Csv;
    let mut output_path = None;
    for e in section(entries, "run") {
        match e.key.as_str() {
            "mn" => {
                let parts: Vec<&str> = e.value.split(',').map(str::trim).collect();
                if parts.len() != 2 {
                    return Err(Error::Config(format!(
                        "line {}: run.mn = '{}' (expected 'm, n')",
                        e.line, e.value
                    )));
                }
                let m = parts[0].parse::<u32>();
                let n = parts[1].parse::<u32>();
                match (m, n) {
                    (Ok(m), Ok(n)) => quantum_numbers.push((m, n)),
                    _ => {
                        return Err(Error::Config(format!(
                            "line {}: run.mn = '{}' has non-integer entries",
                            e.line, e.value
                        )))
                    }
                }
            }
            "cutoff" => {
                cutoff = Some(e.value.parse::<usize>().map_err(|_| {
                    Error::Config(format!(
                        "line {}: run.cutoff = '{}' is not a positive integer",
                        e.line, e.value
                    ))
                })?)
            }
            "entropy_base" => {
                entropy_base = match e.value.as_str() {
                    "nats" => EntropyBase::Nats,
                    "bits" => EntropyBase::Bits,
                    other => {
                        return Err(Error::Config(format!(
                            "line {}: run.entropy_base = '{other}' (expected nats or bits)",
                            e.line
                        )))
                    }
                }
            }
            "format" => {
                output_format = match e.value.as_str() {
                    "csv" => OutputFormat::Csv,
                    "json" => OutputFormat::Json,
                    other => {
                        return Err(Error::Config(format!(
                            "line {}: run.format = '{other}' (expected csv or json)",
                            e.line
                        )))
                    }
                }
            }
            "output" => output_path = Some(e.value.clone()),
            other => {
                return Err(Error::Config(format!(
                    "line {}: unknown key run.{other}",
                    e.line
                )))
            }
        }
    }
    if quantum_numbers.is_empty() {
        quantum_numbers.push((0, 0));
    }
    quantum_numbers.sort_unstable();
    quantum_numbers.dedup();
    Ok(RunSection {
        quantum_numbers,
        cutoff,
        entropy_base,
        output_format,
        output_path,
    })
}
