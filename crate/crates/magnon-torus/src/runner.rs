//! Batch engines behind the CLI subcommands: k-grid sweeps, classification
//! and duality reports, and table rendering.
//!
//! k-points are independent and are evaluated concurrently; result assembly
//! preserves k order, and all numeric rendering goes through
//! [`crate::output::fmt_float`], so serial and parallel runs produce
//! byte-identical files.

use rayon::prelude::*;

use crate::config::{EntropyBase, OutputFormat, RunConfig};
use crate::error::{Error, Result};
use crate::lattice::KPoint;
use crate::magnon::{build_magnon_params, gauge_fix, gauge_fix_self_conjugate, GaugeFixedParams};
use crate::output::{fmt_float, json_escape};
use crate::splitting::{splitting_eigenstate, SplittingSolution};
use crate::squeezing::{default_cutoff, squeezing_eigenstate, SqueezingSolution, MAX_CUTOFF};
use crate::toric::{classify, curvature, dual_of};

/// Thread count resolution: explicit flag, then the MAGNON_TORUS_THREADS
/// environment variable, then 0 (library default pool).
pub fn resolve_threads(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var("MAGNON_TORUS_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(0)
}

/// Rendered table plus stability bookkeeping for warnings.
#[derive(Debug, Clone)]
pub struct ReportOutput {
    pub text: String,
    pub unstable_points: usize,
    pub total_points: usize,
}

impl ReportOutput {
    pub fn all_unstable(&self) -> bool {
        self.total_points > 0 && self.unstable_points == self.total_points
    }
}

struct StateRow {
    m: u32,
    n: u32,
    entropy_sp: f64,
    /// (entropy, truncation deficit); `None` at unstable k-points.
    sq: Option<(f64, f64)>,
}

struct KAnalysis {
    k: KPoint,
    gamma_abs: f64,
    gauge: GaugeFixedParams,
    sp: SplittingSolution,
    sq: Option<SqueezingSolution>,
    states: Vec<StateRow>,
}

/// The dominant squeezing amplitude sits near p = min(m, n), so the
/// tail-bound default alone can truncate below it; widen accordingly.
fn auto_cutoff(r: f64, l: u32) -> usize {
    default_cutoff(r).max(2 * l as usize + 8).min(MAX_CUTOFF)
}

fn analyze_k(cfg: &RunConfig, k: &KPoint) -> Result<KAnalysis> {
    let params = build_magnon_params(&cfg.couplings, &cfg.lattice, k)?;
    let gauge = if k.is_self_conjugate() {
        gauge_fix_self_conjugate(&params)
    } else {
        gauge_fix(&params)
    };
    let gamma_abs = cfg.lattice.gamma_k(k)?.norm();
    let sp = SplittingSolution::solve(gauge.omega, gauge.delta, gauge.chi_tilde);
    let sq = match SqueezingSolution::solve(gauge.omega, gauge.delta, gauge.lambda_tilde) {
        Ok(sol) => Some(sol),
        Err(Error::Unstable(_)) | Err(Error::Domain(_)) => None,
        Err(e) => return Err(e),
    };

    let mut states = Vec::with_capacity(cfg.quantum_numbers.len());
    for &(m, n) in &cfg.quantum_numbers {
        let entropy_sp = splitting_eigenstate(m, n, sp.theta)?.entropy;
        let sq_state = match &sq {
            Some(sol) => {
                let cutoff = cfg
                    .cutoff
                    .unwrap_or_else(|| auto_cutoff(sol.r_squeeze, m.min(n)));
                let e = squeezing_eigenstate(m, n, sol, cutoff)?;
                Some((e.entropy, e.truncation_deficit))
            }
            None => None,
        };
        states.push(StateRow {
            m,
            n,
            entropy_sp,
            sq: sq_state,
        });
    }
    Ok(KAnalysis {
        k: k.clone(),
        gamma_abs,
        gauge,
        sp,
        sq,
        states,
    })
}

fn compute_all(cfg: &RunConfig, points: &[KPoint], threads: usize) -> Result<Vec<KAnalysis>> {
    let work = || {
        points
            .par_iter()
            .map(|k| analyze_k(cfg, k))
            .collect::<Result<Vec<_>>>()
    };
    if threads == 0 {
        work()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
        pool.install(work)
    }
}

fn entropy_in_base(nats: f64, base: EntropyBase) -> f64 {
    match base {
        EntropyBase::Nats => nats,
        EntropyBase::Bits => nats / std::f64::consts::LN_2,
    }
}

fn k_headers(dim: usize) -> Vec<String> {
    (0..dim).map(|i| format!("k_{i}")).collect()
}

struct Cell {
    key: &'static str,
    /// CSV text; empty means a JSON null.
    value: String,
    quoted: bool,
}

fn num(key: &'static str, x: f64) -> Cell {
    Cell {
        key,
        value: fmt_float(x),
        quoted: false,
    }
}

fn int(key: &'static str, x: usize) -> Cell {
    Cell {
        key,
        value: x.to_string(),
        quoted: false,
    }
}

fn opt(key: &'static str, x: Option<f64>) -> Cell {
    Cell {
        key,
        value: x.map(fmt_float).unwrap_or_default(),
        quoted: false,
    }
}

fn text(key: &'static str, s: &str) -> Cell {
    Cell {
        key,
        value: s.to_string(),
        quoted: true,
    }
}

/// Render rows into CSV or a JSON array. Cells keyed "k" are the k-point
/// components: CSV expands them to k_0.. headers, JSON groups them under a
/// single "k" array.
fn render(format: OutputFormat, dim: usize, rows: &[Vec<Cell>]) -> String {
    match format {
        OutputFormat::Csv => {
            let mut out = String::new();
            if let Some(first) = rows.first() {
                let mut header: Vec<String> = Vec::new();
                let mut k_seen = false;
                for c in first {
                    if c.key == "k" {
                        if !k_seen {
                            header.extend(k_headers(dim));
                            k_seen = true;
                        }
                    } else {
                        header.push(c.key.to_string());
                    }
                }
                out.push_str(&header.join(","));
                out.push('\n');
            }
            for row in rows {
                let fields: Vec<&str> = row.iter().map(|c| c.value.as_str()).collect();
                out.push_str(&fields.join(","));
                out.push('\n');
            }
            out
        }
        OutputFormat::Json => {
            let mut out = String::from("[\n");
            for (i, row) in rows.iter().enumerate() {
                out.push_str("  {");
                let mut first = true;
                let mut k_parts: Vec<&str> = Vec::new();
                for c in row {
                    if c.key == "k" {
                        k_parts.push(&c.value);
                        continue;
                    }
                    if !first {
                        out.push(',');
                    }
                    first = false;
                    if !k_parts.is_empty() {
                        out.push_str(&format!("\"k\":[{}],", k_parts.join(",")));
                        k_parts.clear();
                    }
                    let rendered = if c.value.is_empty() {
                        "null".to_string()
                    } else if c.quoted {
                        format!("\"{}\"", json_escape(&c.value))
                    } else {
                        c.value.clone()
                    };
                    out.push_str(&format!("\"{}\":{}", json_escape(c.key), rendered));
                }
                out.push('}');
                out.push_str(if i + 1 < rows.len() { ",\n" } else { "\n" });
            }
            out.push_str("]\n");
            out
        }
    }
}

fn k_block(k: &KPoint) -> Vec<Cell> {
    k.components()
        .iter()
        .map(|&c| Cell {
            key: "k",
            value: fmt_float(c),
            quoted: false,
        })
        .collect()
}

/// Full sweep: one row per (k, m, n) with gauge parameters, both
/// diagonalizations, and both entropies. Unstable k-points keep their
/// splitting columns and mark the squeezing side empty with status
/// "unstable".
pub fn run_sweep(cfg: &RunConfig, threads: usize) -> Result<ReportOutput> {
    let points = cfg.resolve_k_points()?;
    let analyses = compute_all(cfg, &points, threads)?;
    let base = cfg.entropy_base;

    let mut rows = Vec::new();
    for (k_index, a) in analyses.iter().enumerate() {
        for s in &a.states {
            let mut row = vec![int("k_index", k_index)];
            row.extend(k_block(&a.k));
            row.push(int("m", s.m as usize));
            row.push(int("n", s.n as usize));
            row.push(num("gamma_abs", a.gamma_abs));
            row.push(num("chi_tilde", a.gauge.chi_tilde));
            row.push(num("lambda_tilde", a.gauge.lambda_tilde));
            row.push(num("theta", a.sp.theta));
            row.push(opt("r_squeeze", a.sq.as_ref().map(|q| q.r_squeeze)));
            row.push(num("omega_alpha_sp", a.sp.omega_alpha));
            row.push(num("omega_beta_sp", a.sp.omega_beta));
            row.push(opt("omega_alpha_sq", a.sq.as_ref().map(|q| q.omega_alpha)));
            row.push(opt("omega_beta_sq", a.sq.as_ref().map(|q| q.omega_beta)));
            row.push(num("entropy_sp", entropy_in_base(s.entropy_sp, base)));
            row.push(opt(
                "entropy_sq",
                s.sq.map(|(e, _)| entropy_in_base(e, base)),
            ));
            row.push(opt("truncation_deficit", s.sq.map(|(_, d)| d)));
            row.push(text(
                "status",
                if a.sq.is_some() { "ok" } else { "unstable" },
            ));
            rows.push(row);
        }
    }

    Ok(ReportOutput {
        text: render(cfg.output_format, cfg.lattice.dimension(), &rows),
        unstable_points: analyses.iter().filter(|a| a.sq.is_none()).count(),
        total_points: analyses.len(),
    })
}

/// Dispersion table: one row per k-point, both hybridized branches.
pub fn run_dispersion(cfg: &RunConfig, threads: usize) -> Result<ReportOutput> {
    let points = cfg.resolve_k_points()?;
    let analyses = compute_all(cfg, &points, threads)?;

    let mut rows = Vec::new();
    for (k_index, a) in analyses.iter().enumerate() {
        let mut row = vec![int("k_index", k_index)];
        row.extend(k_block(&a.k));
        row.push(num("gamma_abs", a.gamma_abs));
        row.push(num("chi_tilde", a.gauge.chi_tilde));
        row.push(num("lambda_tilde", a.gauge.lambda_tilde));
        row.push(num("omega_a", a.gauge.omega + a.gauge.delta));
        row.push(num("omega_b", a.gauge.omega - a.gauge.delta));
        row.push(num("omega_alpha_sp", a.sp.omega_alpha));
        row.push(num("omega_beta_sp", a.sp.omega_beta));
        row.push(opt("omega_alpha_sq", a.sq.as_ref().map(|q| q.omega_alpha)));
        row.push(opt("omega_beta_sq", a.sq.as_ref().map(|q| q.omega_beta)));
        row.push(text(
            "status",
            if a.sq.is_some() { "ok" } else { "unstable" },
        ));
        rows.push(row);
    }

    Ok(ReportOutput {
        text: render(cfg.output_format, cfg.lattice.dimension(), &rows),
        unstable_points: analyses.iter().filter(|a| a.sq.is_none()).count(),
        total_points: analyses.len(),
    })
}

/// Splitting entropy table: one row per (k, m, n).
pub fn run_entropy_sp(cfg: &RunConfig, threads: usize) -> Result<ReportOutput> {
    let points = cfg.resolve_k_points()?;
    let analyses = compute_all(cfg, &points, threads)?;
    let base = cfg.entropy_base;

    let mut rows = Vec::new();
    for (k_index, a) in analyses.iter().enumerate() {
        for s in &a.states {
            let mut row = vec![int("k_index", k_index)];
            row.extend(k_block(&a.k));
            row.push(int("m", s.m as usize));
            row.push(int("n", s.n as usize));
            row.push(num("theta", a.sp.theta));
            row.push(num("entropy_sp", entropy_in_base(s.entropy_sp, base)));
            rows.push(row);
        }
    }
    Ok(ReportOutput {
        text: render(cfg.output_format, cfg.lattice.dimension(), &rows),
        unstable_points: 0,
        total_points: analyses.len(),
    })
}

/// Squeezing entropy table: one row per (k, m, n); unstable rows carry
/// empty values and status "unstable".
pub fn run_entropy_sq(cfg: &RunConfig, threads: usize) -> Result<ReportOutput> {
    let points = cfg.resolve_k_points()?;
    let analyses = compute_all(cfg, &points, threads)?;
    let base = cfg.entropy_base;

    let mut rows = Vec::new();
    for (k_index, a) in analyses.iter().enumerate() {
        for s in &a.states {
            let mut row = vec![int("k_index", k_index)];
            row.extend(k_block(&a.k));
            row.push(int("m", s.m as usize));
            row.push(int("n", s.n as usize));
            row.push(opt("r_squeeze", a.sq.as_ref().map(|q| q.r_squeeze)));
            row.push(opt(
                "entropy_sq",
                s.sq.map(|(e, _)| entropy_in_base(e, base)),
            ));
            row.push(opt("truncation_deficit", s.sq.map(|(_, d)| d)));
            row.push(text(
                "status",
                if a.sq.is_some() { "ok" } else { "unstable" },
            ));
            rows.push(row);
        }
    }
    Ok(ReportOutput {
        text: render(cfg.output_format, cfg.lattice.dimension(), &rows),
        unstable_points: analyses.iter().filter(|a| a.sq.is_none()).count(),
        total_points: analyses.len(),
    })
}

/// Toric classification report: radii, regime, and curvature when both
/// radii are positive, otherwise a degenerate-circle marker.
pub fn run_classify(cfg: &RunConfig) -> Result<String> {
    cfg.couplings.validate()?;
    let tc = classify(&cfg.couplings);
    let degenerate = !(tc.radius_1 > 0.0 && tc.radius_2 > 0.0);
    let curv = if degenerate {
        None
    } else {
        Some(curvature(&tc)?)
    };

    let status = if degenerate {
        "degenerate: circle class"
    } else {
        "ok"
    };
    let row = vec![
        text("regime", tc.regime.label()),
        num("R1", tc.radius_1),
        num("R2", tc.radius_2),
        opt("gauss_curvature", curv.as_ref().map(|c| c.gauss_curvature)),
        opt(
            "mean_curvature",
            curv.as_ref().map(|c| c.mean_curvature_magnitude),
        ),
        text("status", status),
    ];
    Ok(render(cfg.output_format, cfg.lattice.dimension(), &[row]))
}

/// Duality report: the canonical dual couplings plus the maximum deviation
/// of (ω, Δ, χ̃, Λ̃) between source and dual over the configured k-grid.
pub fn run_dual(cfg: &RunConfig) -> Result<String> {
    cfg.couplings.validate()?;
    let dual = dual_of(&cfg.couplings, &cfg.lattice)?;
    let points = cfg.resolve_k_points()?;

    let mut max_dev = 0.0_f64;
    for k in &points {
        let src = gauge_fix(&build_magnon_params(&cfg.couplings, &cfg.lattice, k)?);
        let dst = gauge_fix(&build_magnon_params(&dual, &cfg.lattice, k)?);
        max_dev = max_dev
            .max((src.omega - dst.omega).abs())
            .max((src.delta - dst.delta).abs())
            .max((src.chi_tilde - dst.chi_tilde).abs())
            .max((src.lambda_tilde - dst.lambda_tilde).abs());
    }

    let row = vec![
        text("regime", dual.regime.label()),
        num("J", dual.exchange),
        num("D", dual.dm),
        num("r", dual.exchange_anisotropy),
        num("K", dual.symmetric_exchange),
        num("J_z", dual.exchange_z),
        num("B", dual.zeeman),
        int("k_points", points.len()),
        num("max_deviation", max_dev),
    ];
    Ok(render(cfg.output_format, cfg.lattice.dimension(), &[row]))
}

/// Write to a file, or to stdout when no path is given.
pub fn write_output(path: Option<&str>, text: &str) -> Result<()> {
    match path {
        Some(p) => {
            std::fs::write(p, text)?;
            Ok(())
        }
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}
