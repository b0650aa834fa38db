use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use ncgabor::checks::{self, CheckResult};
use ncgabor::gabor::{self, GaborField, GaborFieldFile};
use ncgabor::group::{self, FiniteGroup};
use ncgabor::heisenberg::{
    gaussian_window, h_plancherel_defect, normalized_window, run_ladder, weak_reconstruct_pair, HeisenbergConfig,
};
use ncgabor::io::{self, SignalFile};
use ncgabor::repr::{dual_of, verify_atlas, PlancherelAtlas};
use ncgabor::sl2::{self, Sl2StudyConfig};
use ncgabor::{Error, Result};
use serde::Serialize;
use serde_json::json;

use crate::report::{emit, RunReport};
use crate::{GaborArgs, GroupArgs, HeisenbergArgs, ReconstructArgs, Sl2Args, VerifyArgs};

fn resolve_group(g: &GroupArgs) -> Result<Arc<FiniteGroup>> {
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| Error::InvalidParameter(format!("group family `{}` needs --{flag}", g.group)))
    };
    let built = match g.group.as_str() {
        "Z" => group::build_cyclic(need(g.n, "n")?)?,
        "D" => group::build_dihedral(need(g.n, "n")?)?,
        "H" => group::build_heisenberg_mod(need(g.q, "q")?)?,
        name => group::by_name(name)?,
    };
    Ok(Arc::new(built))
}

fn atlas_for(g: &Arc<FiniteGroup>) -> Arc<PlancherelAtlas> {
    Arc::new(dual_of(g))
}

fn positive(tol: f64) -> Result<f64> {
    if tol.is_finite() && tol > 0.0 {
        Ok(tol)
    } else {
        Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")))
    }
}

fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    Ok(())
}

fn display(p: &Path) -> String {
    p.display().to_string()
}

pub fn catalog(out: Option<&Path>) -> Result<bool> {
    let rows: Vec<_> = group::CATALOG
        .iter()
        .map(|name| {
            let g = Arc::new(group::by_name(name).expect("catalog names build"));
            let atlas = dual_of(&g);
            emit(&format!("{:<4} |G| = {:<3} |Ĝ| = {:<3} dims {:?}", name, g.order(), atlas.len(), atlas.dims()));
            json!({
                "name": name,
                "order": g.order(),
                "abelian": g.is_abelian(),
                "irreps": atlas.irreps().iter().map(|p| json!({"label": p.label(), "dim": p.dim()})).collect::<Vec<_>>(),
                "elements": g.labels(),
            })
        })
        .collect();
    if let Some(dir) = out {
        ensure_dir(dir)?;
        io::write_json(&dir.join("catalog.json"), &json!({ "groups": rows }))?;
    }
    Ok(true)
}

#[derive(Serialize)]
struct VerifyConfig {
    group: String,
    seed: u64,
    trials: usize,
}

pub fn verify(a: &VerifyArgs) -> Result<bool> {
    let tol = positive(a.tol)?;
    let g = resolve_group(&a.group)?;
    let atlas = atlas_for(&g);
    let mut checks = verify_atlas(&atlas, tol).checks;
    checks.extend(checks::fourier_suite(&atlas, a.seed, a.trials, tol).checks);
    checks.extend(checks::gabor_suite(&atlas, a.seed.wrapping_add(1), a.trials, tol).checks);
    let report = RunReport::new(
        "verify",
        VerifyConfig {
            group: g.name().to_string(),
            seed: a.seed,
            trials: a.trials,
        },
        tol,
        checks,
        json!({ "order": g.order(), "dims": atlas.dims() }),
    );
    report.summarize();
    if let Some(dir) = &a.out {
        ensure_dir(dir)?;
        report.write(dir, "verify.json")?;
    }
    Ok(report.pass)
}

#[derive(Serialize)]
struct GaborConfig {
    group: String,
    signal: String,
    window: String,
}

pub fn gabor(a: &GaborArgs) -> Result<bool> {
    let tol = positive(a.tol)?;
    let g = resolve_group(&a.group)?;
    let atlas = atlas_for(&g);
    let f = io::read_signal(&a.signal, &g)?;
    let psi = io::read_signal(&a.window, &g)?;
    let field = gabor::gabor(&f, &psi, &atlas)?;
    ensure_dir(&a.out)?;
    io::write_json(&a.out.join("field.json"), &field.to_file())?;
    let csv = field.spectrogram_csv();
    io::write_atomic(&a.out.join("spectrogram.csv"), csv.as_bytes())?;

    let energy = f.norm2() * psi.norm2();
    let sigma = gabor::sigma_norm2(&field);
    let dev = if energy == 0.0 { sigma } else { (sigma - energy).abs() / energy };
    let report = RunReport::new(
        "gabor",
        GaborConfig {
            group: g.name().to_string(),
            signal: display(&a.signal),
            window: display(&a.window),
        },
        tol,
        vec![CheckResult::new("gabor_energy", dev, tol)],
        json!({ "sigma_norm2": sigma, "signal_norm2": f.norm2(), "window_norm2": psi.norm2(), "spectrogram_rows": csv.lines().count() - 1 }),
    );
    report.summarize();
    report.write(&a.out, "gabor.json")?;
    Ok(report.pass)
}

#[derive(Serialize)]
struct ReconstructConfig {
    field: String,
    window: String,
    window2: Option<String>,
    signal: Option<String>,
}

pub fn reconstruct(a: &ReconstructArgs) -> Result<bool> {
    let tol = positive(a.tol)?;
    let file: GaborFieldFile = io::read_json(&a.field)?;
    let g = Arc::new(group::by_name(&file.group)?);
    let atlas = atlas_for(&g);
    let field = GaborField::from_file(&atlas, &file)?;
    let psi = io::read_signal(&a.window, &g)?;
    let phi = match &a.window2 {
        Some(p) => io::read_signal(p, &g)?,
        None => psi.clone(),
    };
    let back = gabor::reconstruct(&field, &psi, &phi)?;
    ensure_dir(&a.out)?;
    io::write_json(&a.out.join("reconstructed.json"), &SignalFile::from_signal(&back))?;
    let mut checks = Vec::new();
    let mut details = json!({ "window_inner": [phi.inner(&psi)?.re, phi.inner(&psi)?.im] });
    if let Some(p) = &a.signal {
        let f = io::read_signal(p, &g)?;
        let max_err = back.max_abs_diff(&f);
        details["max_error"] = json!(max_err);
        details["relative_l2_error"] = json!(back.add(&f.scale((-1.0).into()))?.norm() / f.norm().max(f64::MIN_POSITIVE));
        checks.push(CheckResult::new("inversion_max_error", max_err, tol));
    }
    let report = RunReport::new(
        "reconstruct",
        ReconstructConfig {
            field: display(&a.field),
            window: display(&a.window),
            window2: a.window2.as_deref().map(display),
            signal: a.signal.as_deref().map(display),
        },
        tol,
        checks,
        details,
    );
    report.summarize();
    report.write(&a.out, "reconstruct.json")?;
    Ok(report.pass)
}

fn load_toml<T: for<'de> serde::Deserialize<'de>>(path: &PathBuf) -> Result<T> {
    let text = fs::read_to_string(path)?;
    toml::from_str(&text).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))
}

pub fn heisenberg(a: &HeisenbergArgs) -> Result<bool> {
    let tol = positive(a.tol)?;
    let mut cfg: HeisenbergConfig = match &a.config {
        Some(p) => load_toml(p)?,
        None => HeisenbergConfig::default(),
    };
    if let Some(b) = a.grid_box {
        cfg.box_half_width = [b; 3];
    }
    if let Some(n) = a.grid_n {
        cfg.counts = [n; 3];
    }
    if let Some(m) = a.grid_m {
        cfg.line_points = m;
    }
    if let Some(x) = a.grid_x {
        cfg.line_half_width = Some(x);
    }
    if let Some(l) = a.lambda_max {
        cfg.lambda_max = l;
    }
    if let Some(c) = a.lambda_count {
        cfg.lambda_count = c;
    }
    if let Some(f) = a.lambda_floor {
        cfg.lambda_floor = f;
    }
    if a.rungs == 0 {
        return Err(Error::InvalidParameter("--rungs must be at least 1".into()));
    }
    let ladder = run_ladder(&cfg, a.rungs)?;
    let top = ladder.grids.last().expect("at least one rung");
    let mut checks = vec![CheckResult::new("plancherel_defect_top_rung", top.defect, tol)];
    if a.rungs > 1 {
        let flag = if ladder.strictly_decreasing { 0.0 } else { 1.0 };
        checks.push(CheckResult::new("plancherel_defect_strictly_decreasing", flag, 0.0));
    }
    let top_cfg = &top.config;
    let grid = top_cfg.grid()?;
    let spectrum = h_plancherel_defect(&grid.sample(gaussian_window), &grid, &top_cfg.line()?, &top_cfg.lambdas()?)?;
    ensure_dir(&a.out)?;
    io::write_atomic(&a.out.join("spectrum.csv"), spectrum.csv().as_bytes())?;

    let mut weak = serde_json::Value::Null;
    if a.weak {
        let desk = cfg.refined();
        let grid = desk.grid()?;
        let psi = normalized_window(gaussian_window, &grid)?;
        let f = grid.sample(&psi);
        let (direct, via) = weak_reconstruct_pair(&f, &f, &psi, &grid, &desk.outer_grid()?, &desk.line()?, &desk.lambdas()?)?;
        let ratio = via / direct;
        checks.push(CheckResult::new("weak_reconstruction_ratio", (ratio - 1.0).norm(), 0.15));
        weak = json!({ "config": desk, "direct": [direct.re, direct.im], "gabor": [via.re, via.im], "ratio": [ratio.re, ratio.im] });
    }
    let report = RunReport::new(
        "heisenberg",
        json!({ "base": cfg, "rungs": a.rungs, "weak": a.weak }),
        tol,
        checks,
        json!({ "grids": ladder.grids, "defects": ladder.defects, "weak_reconstruction": weak }),
    );
    report.summarize();
    report.write(&a.out, "heisenberg.json")?;
    Ok(report.pass)
}

pub fn sl2(a: &Sl2Args) -> Result<bool> {
    let mut cfg: Sl2StudyConfig = match &a.config {
        Some(p) => load_toml(p)?,
        None => Sl2StudyConfig::default(),
    };
    if let Some(t) = a.t {
        cfg.t = t;
    }
    if let Some(s) = a.seed {
        cfg.seed = s;
    }
    if a.t_count < 2 || a.t_max.is_nan() || a.t_max <= 0.0 {
        return Err(Error::InvalidParameter("density table needs --t-max > 0 and --t-count ≥ 2".into()));
    }
    let ts: Vec<f64> = (0..a.t_count).map(|i| a.t_max * i as f64 / (a.t_count - 1) as f64).collect();
    let study = sl2::run_sl2_study(&cfg)?;
    let last_p = study.principal.last().ok_or_else(|| Error::InvalidParameter("no principal rungs".into()))?;
    let last_c = study
        .complementary
        .last()
        .ok_or_else(|| Error::InvalidParameter("no complementary rungs".into()))?;
    let flag = |ok: bool| if ok { 0.0 } else { 1.0 };
    let checks = vec![
        CheckResult::new("principal_norm_defect", last_p.norm_defect, 0.02),
        CheckResult::new("principal_homomorphism_defect", last_p.homomorphism_defect, 0.03),
        CheckResult::new("complementary_s_norm_defect", last_c.s_norm_defect, 0.05),
        CheckResult::new("norm_defect_strictly_decreasing", flag(study.norm_strictly_decreasing), 0.0),
        CheckResult::new(
            "homomorphism_defect_strictly_decreasing",
            flag(study.homomorphism_strictly_decreasing),
            0.0,
        ),
        CheckResult::new("s_norm_defect_strictly_decreasing", flag(study.s_norm_strictly_decreasing), 0.0),
    ];
    ensure_dir(&a.out)?;
    io::write_atomic(&a.out.join("density.csv"), sl2::density_csv(&ts).as_bytes())?;
    let report = RunReport::new("sl2", &cfg, 0.02, checks, &study);
    report.summarize();
    report.write(&a.out, "sl2.json")?;
    Ok(report.pass)
}
