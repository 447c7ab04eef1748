//! Argument parsing and the four subcommands.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sqk_core::dynamics::{contact_field, current_chart, dirac_flow, lorentz_ode, magnetic_charge, orbit_check, orthogonal_constants, Trajectory};
use sqk_core::fields::{edm_classify, edm_solution, table2_scan, table3_scan, CellPattern, EnergyCondition, Table2, Table3};
use sqk_core::sqk::explicit_solution;
use sqk_core::{ChartPoint, Error, Family, Signature, SpaceForm, C64};

use crate::checks::{self, edm_residuals, Ctx, Scope, FLOW_START};
use crate::config::{Grid, LoadError, RunConfig};
use crate::exit;
use crate::report::{sci, Report};

#[derive(Debug, Parser)]
#[command(name = "sqk", version, about = "Verify SqK spinors and field equations on 3D Sasakian space-forms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the verification checks of a scope and emit a JSON report.
    Verify {
        #[arg(value_enum)]
        scope: Scope,
    },
    /// Scan the closedness or energy-condition table.
    Tables {
        #[arg(value_enum)]
        which: Table,
    },
    /// Integrate a curve and write it as CSV.
    Simulate {
        #[arg(value_enum)]
        kind: SimKind,
    },
    /// Certificate for the Einstein-Dirac-Maxwell solution of norm `q`.
    Edm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Table {
    Table2,
    Table3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SimKind {
    Magnetic,
    DiracFlow,
    Geodesic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    S0,
    Plus,
    Minus,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::S0 => Family::S0,
            FamilyArg::Plus => Family::Plus,
            FamilyArg::Minus => Family::Minus,
        }
    }
}

fn parse_r(s: &str) -> Result<Signature, String> {
    match s {
        "0" => Ok(Signature::Riemannian),
        "1" => Ok(Signature::Lorentzian),
        _ => Err("r must be 0 or 1".into()),
    }
}

fn parse_sign(s: &str) -> Result<f64, String> {
    match s {
        "+" | "+1" | "1" => Ok(1.0),
        "-" | "-1" => Ok(-1.0),
        _ => Err("sign must be + or -".into()),
    }
}

fn parse_complex(s: &str) -> Result<C64, String> {
    let (re, im) = s.split_once(',').ok_or("expected \"re,im\"")?;
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("bad number `{t}`"));
    Ok(C64::new(num(re)?, num(im)?))
}

fn parse_point(s: &str) -> Result<ChartPoint, String> {
    let v: Vec<f64> = s.split(',').map(|t| t.trim().parse::<f64>().map_err(|_| format!("bad number `{t}`"))).collect::<Result<_, _>>()?;
    match v[..] {
        [a, b, c] => Ok(ChartPoint::new(a, b, c)),
        _ => Err("expected \"x1,x2,x3\"".into()),
    }
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    s.parse::<Grid>().map_err(|e| e.0)
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Signature: 0 Riemannian, 1 Lorentzian.
    #[arg(long, global = true, value_parser = parse_r)]
    pub r: Option<Signature>,
    /// φ-sectional curvature.
    #[arg(long = "H", global = true, allow_hyphen_values = true)]
    pub h: Option<f64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long = "tol-alg", global = true)]
    pub tol_alg: Option<f64>,
    #[arg(long = "tol-fd", global = true)]
    pub tol_fd: Option<f64>,
    #[arg(long = "tol-ode", global = true)]
    pub tol_ode: Option<f64>,
    /// Table grid `start:stop:step`.
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_grid)]
    pub grid: Option<Grid>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Spinor norm `⟨ψ, ψ⟩` of the EDM solution.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub q: Option<f64>,
    /// ξ-eigen sign of the EDM spinor.
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_sign)]
    pub sign: Option<f64>,
    #[arg(long = "C1", global = true, allow_hyphen_values = true, value_parser = parse_complex)]
    pub c1: Option<C64>,
    #[arg(long = "C2", global = true, allow_hyphen_values = true, value_parser = parse_complex)]
    pub c2: Option<C64>,
    #[arg(long = "t-max", global = true)]
    pub t_max: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub dt: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub family: Option<FamilyArg>,
    /// Initial chart point `x1,x2,x3`.
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_point)]
    pub p: Option<ChartPoint>,
}

/// Failure of a command, carrying its exit code.
struct Exit(i32, String);

fn usage(msg: impl Into<String>) -> Exit {
    Exit(exit::USAGE, msg.into())
}

fn io(msg: impl Into<String>) -> Exit {
    Exit(exit::IO, msg.into())
}

fn core_usage(e: Error) -> Exit {
    usage(e.to_string())
}

fn config(opts: &Options, file: Option<&Path>) -> Result<RunConfig, Exit> {
    let mut cfg = match file {
        Some(path) => RunConfig::load(path).map_err(|e| match e {
            LoadError::Io(m) => io(m),
            LoadError::Config(c) => usage(c.0),
        })?,
        None => RunConfig::default(),
    };
    if let Some(v) = opts.seed {
        cfg.seed = v;
    }
    if let Some(v) = opts.tol_alg {
        cfg.tolerances.algebraic = v;
    }
    if let Some(v) = opts.tol_fd {
        cfg.tolerances.fd = v;
    }
    if let Some(v) = opts.tol_ode {
        cfg.tolerances.ode = v;
    }
    if let Some(v) = opts.t_max {
        cfg.t_max = v;
    }
    if let Some(v) = opts.dt {
        cfg.dt = v;
    }
    if let Some(v) = &opts.out {
        cfg.out = Some(v.clone());
    }
    cfg.validate().map_err(|e| usage(e.0))?;
    Ok(cfg)
}

fn write_file(path: &Path, text: &str) -> Result<(), Exit> {
    std::fs::write(path, text).map_err(|e| io(format!("{}: {e}", path.display())))
}

/// Writes `text` to `--out` when given, else to `out`.
fn emit(cfg: &RunConfig, text: &str, out: &mut dyn Write) -> Result<bool, Exit> {
    match &cfg.out {
        Some(path) => write_file(path, text).map(|_| true),
        None => out.write_all(text.as_bytes()).map(|_| false).map_err(|e| io(e.to_string())),
    }
}

fn command_line(cli: &Cli) -> String {
    match &cli.command {
        Command::Verify { scope } => format!("verify {}", scope.to_possible_value().map_or("?".into(), |v| v.get_name().to_string())),
        Command::Tables { which } => format!("tables {}", which.to_possible_value().map_or("?".into(), |v| v.get_name().to_string())),
        Command::Simulate { kind } => format!("simulate {}", kind.to_possible_value().map_or("?".into(), |v| v.get_name().to_string())),
        Command::Edm => "edm".into(),
    }
}

pub fn execute(cli: &Cli, config_file: Option<&Path>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = config(&cli.opts, config_file).and_then(|cfg| match &cli.command {
        Command::Verify { scope } => verify(cli, cfg, *scope, out),
        Command::Tables { which } => tables(&cli.opts, cfg, *which, out),
        Command::Simulate { kind } => simulate(&cli.opts, cfg, *kind, out, err),
        Command::Edm => edm(&cli.opts, cfg, out),
    });
    match result {
        Ok(code) => code,
        Err(Exit(code, msg)) => {
            let _ = writeln!(err, "sqk: {msg}");
            code
        }
    }
}

fn verify(cli: &Cli, cfg: RunConfig, scope: Scope, out: &mut dyn Write) -> Result<i32, Exit> {
    let o = &cli.opts;
    let mut ctx = Ctx::new(cfg.clone(), o.r, o.h).map_err(core_usage)?;
    ctx.q = o.q;
    ctx.sign = o.sign;
    ctx.grid = o.grid;
    let results = checks::run_scope(&ctx, scope);
    let report = Report::new(command_line(cli), cfg.clone(), results);
    let to_file = emit(&cfg, &report.to_json(), out)?;
    if to_file {
        let mut lines = String::new();
        for c in &report.checks {
            let status = format!("{:?}", c.status).to_uppercase();
            lines.push_str(&format!("{status:<4} {:<24} {}\n", c.id, c.residual.map_or(String::new(), sci)));
        }
        let s = report.summary;
        lines.push_str(&format!("{} passed, {} failed, {} skipped\n", s.passed, s.failed, s.skipped));
        out.write_all(lines.as_bytes()).map_err(|e| io(e.to_string()))?;
    }
    Ok(if report.passed() { exit::PASS } else { exit::FAIL })
}

fn pattern_text(p: &CellPattern) -> String {
    match p {
        CellPattern::All => "all H".into(),
        CellPattern::None => "never".into(),
        CellPattern::Isolated { points, brackets } => {
            let mut parts: Vec<String> = points.iter().map(|h| format!("H={}", grid_num(*h))).collect();
            parts.extend(brackets.iter().map(|(a, b)| format!("H in ({}, {})", grid_num(*a), grid_num(*b))));
            parts.join("; ")
        }
    }
}

fn align(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut s = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().enumerate().map(|(c, cell)| format!("{cell:<w$}", w = widths[c])).collect();
        s.push_str(line.join("  ").trim_end());
        s.push('\n');
    }
    s
}

fn table2_text(t: &Table2) -> String {
    let mut rows = vec![vec![format!("r={}  psi2 \\ psi1", t.r), "S0".into(), "S+".into(), "S-".into()]];
    for chunk in t.cells.chunks(3) {
        let mut row = vec![chunk[0].psi2.label().to_string()];
        for c in chunk {
            row.push(format!("{}{}", pattern_text(&c.pattern), if c.matches_expected { "" } else { "  [MISMATCH]" }));
        }
        rows.push(row);
    }
    align(&rows)
}

fn table2_json(t: &Table2, grid: Grid) -> Value {
    let cells: Vec<Value> = t
        .cells
        .iter()
        .map(|c| {
            let pattern = match &c.pattern {
                CellPattern::All => json!("all"),
                CellPattern::None => json!("none"),
                CellPattern::Isolated { points, brackets } => json!({"points": points, "brackets": brackets}),
            };
            json!({"psi1": c.psi1.label(), "psi2": c.psi2.label(), "valid": c.valid, "pattern": pattern, "matches_expected": c.matches_expected})
        })
        .collect();
    json!({"table": "table2", "r": t.r, "grid": grid.to_string(), "cells": cells})
}

/// Grid value without representation noise.
fn grid_num(v: f64) -> String {
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

fn table3_text(t: &Table3) -> String {
    let mut head = vec!["type".to_string()];
    head.extend(EnergyCondition::ALL.iter().map(|c| c.label().to_string()));
    let mut rows = vec![head];
    for row in &t.rows {
        let mut r = vec![row.ty.label().to_string()];
        for (i, b) in row.brackets.iter().enumerate() {
            let mut cell = if b.is_empty() {
                if row.satisfied_anywhere[i] { "always".to_string() } else { "never".to_string() }
            } else {
                b.iter().map(|(a, c)| format!("({}, {})", grid_num(*a), grid_num(*c))).collect::<Vec<_>>().join(" ")
            };
            if !row.matches_expected[i] {
                cell.push_str(" [MISMATCH]");
            }
            r.push(cell);
        }
        rows.push(r);
    }
    align(&rows)
}

fn table3_json(t: &Table3, grid: Grid) -> Value {
    let rows: Vec<Value> = t
        .rows
        .iter()
        .map(|row| {
            let conds: serde_json::Map<String, Value> = EnergyCondition::ALL
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    (c.label().to_string(), json!({"brackets": row.brackets[i], "satisfied_anywhere": row.satisfied_anywhere[i], "matches_expected": row.matches_expected[i]}))
                })
                .collect();
            json!({"type": row.ty.label(), "conditions": conds, "samples": row.samples, "contradictions": row.contradictions})
        })
        .collect();
    json!({"table": "table3", "r": 1, "grid": grid.to_string(), "rows": rows})
}

fn tables(o: &Options, cfg: RunConfig, which: Table, out: &mut dyn Write) -> Result<i32, Exit> {
    let mut text = String::new();
    let mut docs = Vec::new();
    let mut ok = true;
    match which {
        Table::Table2 => {
            let sigs = o.r.map_or(Signature::BOTH.to_vec(), |r| vec![r]);
            for r in sigs {
                let grid = o.grid.unwrap_or(match r {
                    Signature::Riemannian => cfg.table2_grid_r0,
                    Signature::Lorentzian => cfg.table2_grid_r1,
                });
                let t = table2_scan(r, &grid.values()).map_err(core_usage)?;
                ok &= t.cells.iter().all(|c| c.matches_expected);
                text.push_str(&table2_text(&t));
                text.push('\n');
                docs.push(table2_json(&t, grid));
            }
        }
        Table::Table3 => {
            if o.r == Some(Signature::Riemannian) {
                return Err(usage("table3 is defined for r = 1 only"));
            }
            let grid = o.grid.unwrap_or(cfg.table3_grid);
            let t = table3_scan(&grid.values(), cfg.energy_samples, cfg.seed).map_err(core_usage)?;
            ok &= t.rows.iter().all(|r| r.matches_expected.iter().all(|&m| m) && r.contradictions == 0);
            text.push_str(&table3_text(&t));
            docs.push(table3_json(&t, grid));
        }
    }
    out.write_all(text.as_bytes()).map_err(|e| io(e.to_string()))?;
    if let Some(path) = &cfg.out {
        let mut s = serde_json::to_string_pretty(&json!({"schema": crate::report::SCHEMA, "tables": docs})).expect("table serializes");
        s.push('\n');
        write_file(path, &s)?;
    }
    Ok(if ok { exit::PASS } else { exit::FAIL })
}

fn space(o: &Options) -> Result<SpaceForm, Exit> {
    SpaceForm::new(o.r.unwrap_or(Signature::Riemannian), o.h.unwrap_or(2.0)).map_err(core_usage)
}

fn run_error(e: Error) -> Exit {
    match e {
        Error::Singularity { .. } => Exit(exit::FAIL, e.to_string()),
        other => usage(other.to_string()),
    }
}

fn simulate(o: &Options, cfg: RunConfig, kind: SimKind, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Exit> {
    let sf = space(o)?;
    sf.require_chart().map_err(core_usage)?;
    let p0 = o.p.unwrap_or(ChartPoint::new(FLOW_START[0], FLOW_START[1], FLOW_START[2]));
    sf.check_point(&p0, 0.0).map_err(core_usage)?;
    let family: Family = o.family.map_or(Family::S0, Into::into);
    let given = o.c1.is_some() || o.c2.is_some();
    let mut c = [o.c1.unwrap_or(C64::new(1.0, 0.0)), o.c2.unwrap_or(C64::new(0.5, 0.5))];
    if kind == SimKind::Geodesic && !given {
        c = orthogonal_constants(&sf, family, &p0).map_err(core_usage)?.constants;
    }
    let field = explicit_solution(&sf, family, c[0], c[1]).map_err(core_usage)?;
    let (traj, extra): (Trajectory, String) = match kind {
        SimKind::Magnetic => {
            let charge = magnetic_charge(&field, &p0).map_err(core_usage)?;
            let ode = lorentz_ode(&sf, charge, contact_field()).map_err(core_usage)?;
            let v0 = current_chart(&field, &p0).map_err(core_usage)?;
            let traj = ode.trajectory(&p0, &v0, cfg.t_max, cfg.dt).map_err(run_error)?;
            let extra = match (traj.completed(), orbit_check(&field, &p0, cfg.t_max, cfg.dt)) {
                (true, Ok(chk)) => format!(" charge={} orbit_residual={}", sci(charge), sci(chk.position_residual)),
                _ => format!(" charge={}", sci(charge)),
            };
            (traj, extra)
        }
        SimKind::DiracFlow | SimKind::Geodesic => {
            let traj = dirac_flow(&field, &p0, cfg.t_max, cfg.dt).map_err(run_error)?;
            (traj, format!(" C2/C1={}", c[1] / c[0]))
        }
    };
    let to_file = emit(&cfg, &traj.to_csv(), out)?;
    let j1 = traj.j1_drift().map_or("n/a".to_string(), sci);
    let exit_note = traj.exit.as_ref().map_or("none".to_string(), |e| format!("t={} ({})", e.time, e.error));
    let summary = format!(
        "steps={} speed2_drift={} J1_drift={j1}{extra} domain_exit={exit_note}\n",
        traj.len().saturating_sub(1),
        sci(traj.speed_drift()),
    );
    let sink: &mut dyn Write = if to_file { out } else { err };
    sink.write_all(summary.as_bytes()).map_err(|e| io(e.to_string()))?;
    Ok(if traj.completed() { exit::PASS } else { exit::FAIL })
}

fn edm(o: &Options, cfg: RunConfig, out: &mut dyn Write) -> Result<i32, Exit> {
    let q = o.q.ok_or_else(|| usage("edm needs --q"))?;
    let r = o.r.unwrap_or(Signature::Lorentzian);
    let sign = o.sign.unwrap_or(match r {
        Signature::Lorentzian => q.signum(),
        Signature::Riemannian => 1.0,
    });
    let sol = edm_solution(q, r, sign).map_err(core_usage)?;
    let res = edm_residuals(&sol, cfg.points.min(10), cfg.seed).map_err(core_usage)?;
    let tol = 1e-5 * cfg.tolerances.fd_scale();
    let pass = res[0] < tol && res[1] < tol && res[2] < tol && res[3] <= 1e-12;
    let p = sol.params;
    let classification = match r {
        Signature::Lorentzian => edm_classify(q).ok().map(|t| t.label()),
        Signature::Riemannian => None,
    };
    let cert = json!({
        "schema": crate::report::SCHEMA,
        "q": q,
        "r": r.index(),
        "sign": sign,
        "H": sci(p.h),
        "Lambda": sci(p.cosmological),
        "B": sci(p.b),
        "lambda": sci(p.lambda),
        "residuals": {"dirac": sci(res[0]), "einstein": sci(res[1]), "maxwell": sci(res[2]), "constraint": sci(res[3])},
        "tolerance": sci(tol),
        "chart_based": sol.chart_based,
        "provenance": if sol.chart_based { "chart-based" } else { "algebra-only" },
        "classification": classification,
        "status": if pass { "pass" } else { "fail" },
    });
    let mut s = serde_json::to_string_pretty(&cert).expect("certificate serializes");
    s.push('\n');
    emit(&cfg, &s, out)?;
    Ok(if pass { exit::PASS } else { exit::FAIL })
}
