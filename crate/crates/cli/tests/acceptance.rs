//! Acceptance criteria, one PASS/FAIL line each. Tolerances are pinned here
//! rather than read from the run configuration.

use std::time::Instant;

use serde_json::Value;
use sqk_cli::checks::{edm_residuals, Ctx, REGISTRY};
use sqk_cli::config::RunConfig;
use sqk_cli::report::{CheckResult, Status};
use sqk_core::fields::{
    ed_solution, edm_classify, edm_parameters, edm_solution, maxwell_source_case, table2_scan, table3_scan, CellPattern, EdType,
    EnergyCondition, MaxwellCase, SpaceType,
};
use sqk_core::sampling::{seeded_points, Sampler};
use sqk_core::sqk::{explicit_solution, SpinorSection};
use sqk_core::{Family, Signature, SpaceForm, C64};

const ORTHONORMALITY: f64 = 1e-10;
const BRACKET: f64 = 1e-6;
const CONNECTION: f64 = 1e-5;
const RICCI: f64 = 1e-4;
const SQK: f64 = 1e-6;
const CONTROL: f64 = 0.1;
const SCALAR: f64 = 1e-12;
const LEMMA: f64 = 1e-5;
const KILLING_ZERO: f64 = 1e-5;
const KILLING_NONZERO: f64 = 0.01;
const ORBIT: f64 = 1e-4;
const J1_DRIFT: f64 = 1e-8;
const TABLE2_STEP: f64 = 0.25;
const SOURCE: f64 = 1e-4;
const SOURCE_POINTS: usize = 20;
const FIELD: f64 = 1e-5;
const TABLE3_STEP: f64 = 0.05;
const ENERGY_SAMPLES: usize = 1000;
const NORM: f64 = 1e-10;
const H_GRID: [f64; 6] = [-2.5, -1.0, 0.0, 1.0, 2.0, 2.9];

type Verdict = Result<String, String>;

fn ctx() -> Ctx {
    Ctx::new(RunConfig::default(), None, None).expect("default context")
}

fn run(ctx: &Ctx, id: &str) -> CheckResult {
    REGISTRY.iter().find(|c| c.id == id).unwrap_or_else(|| panic!("no check {id}")).run(ctx)
}

fn items(c: &CheckResult) -> &Vec<Value> {
    c.params["items"].as_array().expect("items")
}

fn num(v: &Value) -> f64 {
    match v {
        Value::String(s) => s.parse().expect("numeric string"),
        other => other.as_f64().expect("number"),
    }
}

/// Passes, stays under `tol`, and has at least one non-skipped item.
fn within(c: &CheckResult, tol: f64) -> Verdict {
    let done = items(c).iter().filter(|i| i["status"] != "skip").count();
    match (c.status, c.residual) {
        (Status::Pass, Some(r)) if r < tol && done > 0 => Ok(format!("{} {r:.1e} < {tol:.0e}", c.id)),
        _ => Err(format!("{} status {:?} residual {:?} (tolerance {tol:.0e})", c.id, c.status, c.residual)),
    }
}

fn families_field(c: &CheckResult) -> impl Iterator<Item = &Value> {
    items(c).iter().filter_map(|i| i["families"].as_array()).flatten()
}

fn geometry() -> Verdict {
    let start = Instant::now();
    let ctx = ctx();
    let mut notes = Vec::new();
    for (id, tol) in [
        ("geometry.orthonormality", ORTHONORMALITY),
        ("geometry.brackets", BRACKET),
        ("geometry.connection", CONNECTION),
        ("geometry.ricci", RICCI),
    ] {
        notes.push(within(&run(&ctx, id), tol)?);
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 10.0 {
        return Err(format!("runtime {secs:.1} s"));
    }
    Ok(format!("{}; {secs:.2} s", notes.join("; ")))
}

fn existence() -> Verdict {
    let c = run(&ctx(), "sqk.existence");
    let note = within(&c, SQK)?;
    let mut n = 0;
    for f in families_field(&c) {
        n += 1;
        if num(&f["negative_control"]) < CONTROL || num(&f["scalar_gap"]) > SCALAR {
            return Err(format!("family entry {f}"));
        }
    }
    Ok(format!("{note}; {n} family entries, controls >= {CONTROL}, scalar gaps <= {SCALAR:.0e}"))
}

fn xi_map() -> Verdict {
    let ctx = ctx();
    let c = run(&ctx, "sqk.xi_map");
    let note = within(&c, SQK)?;
    let worst = families_field(&c).map(|f| num(&f["round_trip"]).max(num(&f["type_gap"]))).fold(0.0, f64::max);
    if worst > 1e-15 {
        return Err(format!("type algebra round trip off by {worst:e}"));
    }
    Ok(format!("{note}; {} points per space; type round trip {worst:e}", ctx.cfg.points))
}

fn lemma() -> Verdict {
    let ctx = ctx();
    let a = within(&run(&ctx, "currents.lemma"), LEMMA)?;
    let k = run(&ctx, "currents.killing");
    let b = within(&k, KILLING_ZERO)?;
    let mut least = f64::INFINITY;
    for i in items(&k) {
        for g in i["generic"].as_array().into_iter().flatten() {
            if g.get("min").is_some() {
                least = least.min(num(&g["min"]));
            }
        }
    }
    if least < KILLING_NONZERO {
        return Err(format!("generic Killing defect {least:e}"));
    }
    Ok(format!("{a}; {b}; generic Killing defect >= {least:.3}"))
}

fn magnetic() -> Verdict {
    let ctx = ctx();
    if (ctx.cfg.t_max, ctx.cfg.dt) != (5.0, 1e-3) {
        return Err("flow window is not t in [0, 5], dt = 1e-3".into());
    }
    let m = run(&ctx, "currents.magnetic");
    let a = within(&m, ORBIT)?;
    let mut j1 = 0.0_f64;
    let mut runs = 0;
    for i in items(&m) {
        for r in i["runs"].as_array().into_iter().flatten() {
            if r.get("j1_drift").is_some() {
                runs += 1;
                j1 = j1.max(num(&r["j1_drift"]));
            }
        }
    }
    if j1 >= J1_DRIFT || runs == 0 {
        return Err(format!("J1 drift {j1:e} over {runs} runs"));
    }
    let g = run(&ctx, "currents.geodesic");
    let b = within(&g, ORBIT)?;
    let orthogonal = items(&g).iter().any(|i| i["status"] == "pass" && i["killing_type"] == false);
    if !orthogonal {
        return Err("no J orthogonal to xi configuration verified".into());
    }
    Ok(format!("{a}; {runs} flows, J1 drift {j1:.1e}; {b}"))
}

fn table2() -> Verdict {
    let mut notes = Vec::new();
    for (r, grid, special) in [(Signature::Riemannian, (-2.75, 20.0), 13.0), (Signature::Lorentzian, (-20.0, 2.75), -13.0)] {
        let n = ((grid.1 - grid.0) / TABLE2_STEP).round() as usize;
        let values: Vec<f64> = (0..=n).map(|k| grid.0 + TABLE2_STEP * k as f64).collect();
        let t = table2_scan(r, &values).map_err(|e| e.to_string())?;
        if t.cells.len() != 9 || t.cells.iter().any(|c| !c.matches_expected) {
            return Err(format!("r={} pattern differs", r.index()));
        }
        let hits = t
            .cells
            .iter()
            .filter(|c| match &c.pattern {
                CellPattern::Isolated { points, brackets } => {
                    points.iter().any(|&h| (h - special).abs() <= TABLE2_STEP)
                        || brackets.iter().any(|&(a, b)| a <= special && special <= b && b - a <= TABLE2_STEP + 1e-12)
                }
                _ => false,
            })
            .count();
        if hits != 2 {
            return Err(format!("r={}: isolated point {special} found in {hits} cells", r.index()));
        }
        notes.push(format!("r={} 3x3 matches, H={special} isolated", r.index()));
    }
    Ok(notes.join("; "))
}

fn maxwell() -> Verdict {
    let mut worst = 0.0_f64;
    let mut seen = Vec::new();
    for r in Signature::BOTH {
        let mut hs = H_GRID.to_vec();
        hs.extend([r.sign(), 13.0 * r.sign()]);
        for h in hs {
            let sf = SpaceForm::new(r, h).map_err(|e| e.to_string())?;
            if !sf.chart_valid() {
                continue;
            }
            let pts = seeded_points(r, SOURCE_POINTS, 42);
            for case in MaxwellCase::ALL {
                let Ok(c) = maxwell_source_case(&sf, case, &pts) else { continue };
                let expected = match case {
                    MaxwellCase::I | MaxwellCase::II => 4.0,
                    MaxwellCase::III | MaxwellCase::IV => 12.0,
                    MaxwellCase::V => 3.0 + r.sign() * h,
                };
                let rel = c.relative_error(expected);
                if rel >= SOURCE || c.points < SOURCE_POINTS {
                    return Err(format!("case {} at r={} H={h}: c={} ({} points)", case.label(), r.index(), c.mean, c.points));
                }
                worst = worst.max(rel);
                if !seen.contains(&case) {
                    seen.push(case);
                }
            }
        }
    }
    if seen.len() != 5 {
        return Err(format!("only {} cases exercised", seen.len()));
    }
    Ok(format!("cases i-v at >= {SOURCE_POINTS} points, worst relative error {worst:.1e}"))
}

fn ed() -> Verdict {
    let mut done = Vec::new();
    let mut worst = 0.0_f64;
    for r in Signature::BOTH {
        for h in H_GRID {
            let sf = SpaceForm::new(r, h).map_err(|e| e.to_string())?;
            for f in Family::ALL {
                if r == Signature::Riemannian && f == Family::Plus && !(-3.0 < h && h < 1.0) {
                    continue;
                }
                let Ok(sol) = ed_solution(&sf, f) else { continue };
                for p in seeded_points(r, 10, 42) {
                    let e = sol.einstein_residual(&p).map_err(|e| e.to_string())?;
                    let d = sol.dirac_residual(&p).map_err(|e| e.to_string())?;
                    if e >= FIELD || d >= FIELD {
                        return Err(format!("{} r={} H={h}: einstein {e:e}, dirac {d:e}", f.label(), r.index()));
                    }
                    worst = worst.max(e).max(d);
                }
                if r == Signature::Riemannian && f == Family::S0 {
                    let n = sol.field.norm().re;
                    if (n - 8.0).abs() > 1e-12 {
                        return Err(format!("case (i) norm {n} at H={h}"));
                    }
                }
                if !done.contains(&(r, f)) {
                    done.push((r, f));
                }
            }
        }
    }
    if done.len() != 6 {
        return Err(format!("{} of 6 family/signature pairs solved", done.len()));
    }
    Ok(format!("6 family/signature pairs, worst residual {worst:.1e}; case (i) norm 8"))
}

fn table3() -> Verdict {
    let n = ((6.0 - -5.0) / TABLE3_STEP).round() as usize;
    let grid: Vec<f64> = (0..=n).map(|k| -5.0 + TABLE3_STEP * k as f64).collect();
    let t = table3_scan(&grid, ENERGY_SAMPLES, 42).map_err(|e| e.to_string())?;
    let expected: [(EdType, &[f64]); 3] = [(EdType::I, &[-1.0, 1.0, 3.0]), (EdType::II, &[-1.0, 2.0, 3.0]), (EdType::III, &[-1.0, 3.0])];
    for (ty, bounds) in expected {
        let row = t.rows.iter().find(|r| r.ty == ty).ok_or("missing row")?;
        let brackets: Vec<(f64, f64)> = row.brackets.iter().flatten().copied().collect();
        let near = |b: f64, (lo, hi): (f64, f64)| lo - 1e-9 <= b && b <= hi + 1e-9 && hi - lo <= TABLE3_STEP + 1e-9;
        let covered = bounds.iter().all(|&b| brackets.iter().any(|&br| near(b, br)));
        let explained = brackets.iter().all(|&br| bounds.iter().any(|&b| near(b, br)));
        if !covered || !explained {
            return Err(format!("type {}: brackets {brackets:?}", ty.label()));
        }
        if row.contradictions != 0 || row.samples < ENERGY_SAMPLES {
            return Err(format!("type {}: {} contradictions in {} samples", ty.label(), row.contradictions, row.samples));
        }
    }
    let dec = EnergyCondition::ALL.iter().position(|&c| c == EnergyCondition::Dec).expect("DEC");
    let iii = t.rows.iter().find(|r| r.ty == EdType::III).ok_or("missing row")?;
    if iii.satisfied_anywhere[dec] {
        return Err("DEC holds somewhere for type (iii)".into());
    }
    Ok("boundaries {-1,1,3}, {-1,2,3}, {-1,3} with DEC empty for (iii); zero contradictions".into())
}

fn edm() -> Verdict {
    let cases = [
        (-2.0, Signature::Lorentzian, -1.0),
        (2.0, Signature::Lorentzian, 1.0),
        (4.0, Signature::Lorentzian, 1.0),
        (2.0, Signature::Riemannian, 1.0),
        (2.0, Signature::Riemannian, -1.0),
        (4.0, Signature::Riemannian, 1.0),
        (4.0, Signature::Riemannian, -1.0),
    ];
    let mut worst = 0.0_f64;
    for (q, r, sign) in cases {
        let sol = edm_solution(q, r, sign).map_err(|e| e.to_string())?;
        if r == Signature::Lorentzian && !sol.chart_based {
            return Err(format!("q={q} is not chart-valid"));
        }
        let res = edm_residuals(&sol, 10, 42).map_err(|e| e.to_string())?;
        let m = res[0].max(res[1]).max(res[2]);
        if m >= FIELD {
            return Err(format!("q={q} r={} sign={sign}: residuals {res:?}", r.index()));
        }
        worst = worst.max(m);
    }
    for t in [-4.0, 8.0] {
        let below = edm_classify(t - 1e-9).map_err(|e| e.to_string())?;
        let above = edm_classify(t + 1e-9).map_err(|e| e.to_string())?;
        if edm_classify(t) != Ok(SpaceType::Nil) || below == above || below == SpaceType::Nil {
            return Err(format!("threshold at q={t} not sharp"));
        }
    }
    // H + 1 = q² / (q + 8) has no first-order term at q = 0
    let h = |q: f64| edm_parameters(q, Signature::Lorentzian, 1.0).map(|p| p.h).map_err(|e| e.to_string());
    let (sa, sb) = ((h(0.1)? + 1.0) / 0.1, (h(0.01)? + 1.0) / 0.01);
    if !(sa.abs() < 0.1 && sb.abs() < 0.01 && (sa / sb - 10.0).abs() < 0.2) {
        return Err(format!("(H+1)/q = {sa}, {sb}"));
    }
    Ok(format!("7 solutions, worst residual {worst:.1e}; Nil exactly at q = -4, 8; (H+1)/q = {sa:.2e}, {sb:.2e}"))
}

fn norms() -> Verdict {
    let mut worst = 0.0_f64;
    let mut sampler = Sampler::new(7);
    let pairs: Vec<[C64; 2]> = (0..10).map(|_| sampler.complex_pair()).collect();
    for r in Signature::BOTH {
        for h in H_GRID {
            let sf = SpaceForm::new(r, h).map_err(|e| e.to_string())?;
            if !sf.chart_valid() {
                continue;
            }
            let pts = seeded_points(r, 50, 42);
            for f in [Family::Plus, Family::Minus] {
                for c in &pairs {
                    let field = explicit_solution(&sf, f, c[0], c[1]).map_err(|e| e.to_string())?;
                    let expected = 2.0 * (c[0].norm_sqr() + r.sign() * c[1].norm_sqr());
                    for p in &pts {
                        let psi = field.eval(p).map_err(|e| e.to_string())?;
                        // ψ† γ1^r ψ with γ1 = σ1 in the Lorentzian case
                        let q = match r {
                            Signature::Riemannian => psi[0].norm_sqr() + psi[1].norm_sqr(),
                            Signature::Lorentzian => 2.0 * (psi[0].conj() * psi[1]).re,
                        };
                        worst = worst.max((q - expected).abs());
                    }
                }
            }
        }
    }
    if worst >= NORM {
        return Err(format!("norm gap {worst:e}"));
    }
    let note = within(&run(&ctx(), "sqk.norms"), NORM)?;
    Ok(format!("10 pairs x 50 points, gap {worst:.1e}; {note}"))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 11] = [
        ("geometry suite", geometry),
        ("SqK existence", existence),
        ("xi-map", xi_map),
        ("Dirac-current lemma", lemma),
        ("magnetic curves", magnetic),
        ("closedness table", table2),
        ("Maxwell source constants", maxwell),
        ("ED solutions", ed),
        ("energy-condition table", table3),
        ("EDM solutions", edm),
        ("explicit-solution norms", norms),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(note) => println!("PASS {:>2} {name}: {note}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
