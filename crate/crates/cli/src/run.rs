//! Executes a resolved run, writes the output directory and decides the exit
//! status.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use enrichfix::maps::builtin_pairs;
use enrichfix::report::Witness;
use enrichfix::solver::{HypothesisReport, StopReason, UniquenessStatus};
use enrichfix::spaces::builtin_spaces;
use enrichfix::stability::{InterpolativeParams, ProbeReport, UlamHyersReport};
use enrichfix::{
    check_contraction, check_convexity_inequality, check_metric_axioms, estimate_min_coefficient,
    iterate_pair, limit_shadowing_probe, make_asymptotic_sequence, stop_index, ulam_hyers_probe,
    uniqueness_probe, verify_hypotheses, well_posedness_probe, CheckReport, ContractionSpec, Decay,
    Error, Perturbation, Point, Status,
};
use rand::SeedableRng;

use crate::config::{DecayName, Mode, Resolved, RunConfig, StabilityConfig};
use crate::json::Json;

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_CONFIG: u8 = 2;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("[{cat}] {inner}", cat = .0.category(), inner = .0)]
    Module(#[from] Error),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl RunError {
    pub fn exit_code(&self) -> u8 {
        match self {
            RunError::Module(
                Error::Config(_) | Error::Input(_) | Error::Lookup { .. } | Error::Parse { .. },
            ) => EXIT_CONFIG,
            RunError::Module(_) => EXIT_FAIL,
            RunError::Io { .. } => EXIT_CONFIG,
        }
    }
}

/// Result of a completed run.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub passed: bool,
    pub out_dir: PathBuf,
    /// `report.json` contents.
    pub report: String,
    /// One human-readable line per check.
    pub summary: Vec<String>,
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        if self.passed {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }
}

fn point_json(p: &Point<f64>) -> Json {
    Json::from(p.coords())
}

fn witness_json(w: &Witness<f64>) -> Json {
    Json::obj()
        .with("check", w.check.as_str())
        .with(
            "points",
            Json::Arr(w.points.iter().map(point_json).collect()),
        )
        .with("lambda", w.lambda)
        .with("lhs", w.lhs)
        .with("rhs", w.rhs)
}

fn check_json(r: &CheckReport<f64>) -> Json {
    Json::obj()
        .with("status", r.status().as_str())
        .with("checked", r.checked)
        .with("violations", r.violations)
        .with("skipped", r.skipped)
        .with("worst_margin", r.worst_margin)
        .with("tolerance", r.tolerance)
        .with("seed", r.seed)
        .with(
            "witness",
            r.witness.as_ref().map_or(Json::Null, witness_json),
        )
}

fn spec_json(spec: &ContractionSpec<f64>) -> Json {
    Json::obj()
        .with("family", spec.family.as_str())
        .with("a", spec.a)
        .with("alpha", spec.alpha)
        .with("lambda", spec.lambda)
        .with("b", spec.b)
}

fn write_file(dir: &Path, name: &str, contents: &[u8]) -> Result<(), RunError> {
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|source| RunError::Io { path, source })
}

fn csv_bytes(f: impl FnOnce(&mut Vec<u8>) -> enrichfix::Result<()>) -> Result<Vec<u8>, RunError> {
    let mut buf = Vec::new();
    f(&mut buf)?;
    Ok(buf)
}

struct Artifacts {
    files: Vec<(String, Vec<u8>)>,
    summary: Vec<String>,
}

impl Artifacts {
    fn line(&mut self, ok: bool, what: impl Into<String>) {
        self.summary.push(format!(
            "{} {}",
            if ok { "PASS" } else { "FAIL" },
            what.into()
        ));
    }
}

/// Runs `cfg`. The mode must be set; configuration problems return
/// [`RunError`] with exit code 2.
pub fn run(cfg: &RunConfig) -> Result<Outcome, RunError> {
    let Some(mode) = cfg.mode else {
        return Err(Error::Config("mode: not set".into()).into());
    };
    let resolved = cfg.resolve()?;
    let echo = cfg.echo();
    let out_dir = cfg.output.clone();
    fs::create_dir_all(&out_dir).map_err(|source| RunError::Io {
        path: out_dir.clone(),
        source,
    })?;
    write_file(&out_dir, "config.echo.toml", echo.as_bytes())?;

    let mut art = Artifacts {
        files: Vec::new(),
        summary: Vec::new(),
    };
    let (passed, result) = match mode {
        Mode::Solve => solve(cfg, &resolved, &mut art)?,
        Mode::Verify => verify(cfg, &resolved, &mut art)?,
        Mode::Stability => stability(cfg, &resolved, &mut art)?,
        Mode::Estimate => estimate(cfg, &resolved, &mut art)?,
    };

    let report = Json::obj()
        .with("tool", "enrichfix")
        .with("version", enrichfix::VERSION)
        .with("mode", mode.as_str())
        .with("seed", cfg.seed)
        .with("space", resolved.space.name())
        .with("pair", resolved.pair.name.as_str())
        .with("status", if passed { "pass" } else { "fail" })
        .with("config", echo.as_str())
        .with("result", result)
        .render();
    write_file(&out_dir, "report.json", report.as_bytes())?;
    let mut names = vec!["config.echo.toml".to_string(), "report.json".to_string()];
    for (name, bytes) in &art.files {
        write_file(&out_dir, name, bytes)?;
        names.push(name.clone());
    }

    let created = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let mut manifest = format!(
        "created-unix: {created}\ntool: enrichfix {}\nmode: {}\nseed: {}\nstatus: {}\n",
        enrichfix::VERSION,
        mode.as_str(),
        cfg.seed,
        if passed { "pass" } else { "fail" }
    );
    for n in &names {
        manifest.push_str(&format!("file: {n}\n"));
    }
    write_file(&out_dir, "manifest.txt", manifest.as_bytes())?;

    Ok(Outcome {
        passed,
        out_dir,
        report,
        summary: art.summary,
    })
}

fn solve(cfg: &RunConfig, r: &Resolved, art: &mut Artifacts) -> Result<(bool, Json), RunError> {
    let sc = cfg.solve.as_ref().expect("checked by resolve");
    let opts = sc.options();
    let x0 = Point::from_slice(&sc.x0)?;
    let trace = iterate_pair(&r.space, &r.pair, &x0, &opts)?;
    art.files.push((
        "trace.csv".into(),
        csv_bytes(|b| trace.write_csv(&r.space, b))?,
    ));
    let stop_reason = match &trace.stop {
        StopReason::Diverged(m) | StopReason::Singular(m) => Json::from(m.as_str()),
        _ => Json::Null,
    };
    let a_priori_index = match (sc.a_hint, trace.step_dist.first()) {
        (Some(a), Some(&d01)) => Json::from(stop_index(a, d01, sc.tol)?),
        _ => Json::Null,
    };
    let mut passed = trace.converged;
    art.line(
        trace.converged,
        format!(
            "solve: {} after {} iterations at {}",
            trace.stop.as_str(),
            trace.iterations(),
            trace.last()
        ),
    );
    let mut result = Json::obj()
        .with("converged", trace.converged)
        .with("stop", trace.stop.as_str())
        .with("stop_detail", stop_reason)
        .with("iterations", trace.iterations())
        .with("limit", point_json(trace.last()))
        .with("residual_t", trace.residuals_at_last.0)
        .with("residual_s", trace.residuals_at_last.1)
        .with("relation_chain", trace.relation_ok)
        .with("a_priori_stop_index", a_priori_index)
        .with("trace_file", "trace.csv");
    if !sc.starts.is_empty() {
        let mut starts = vec![x0];
        for s in &sc.starts {
            starts.push(Point::from_slice(s)?);
        }
        let u = uniqueness_probe(&r.space, &r.pair, &opts, &starts)?;
        let (status, failed) = match &u.status {
            UniquenessStatus::Consistent => ("consistent", vec![]),
            UniquenessStatus::Inconsistent => ("inconsistent", vec![]),
            UniquenessStatus::Inconclusive(f) => ("inconclusive", f.clone()),
        };
        let ok = u.status == UniquenessStatus::Consistent;
        passed &= ok;
        art.line(
            ok,
            format!("uniqueness: {status}, max pairwise {:e}", u.max_pairwise),
        );
        result = result.with(
            "uniqueness",
            Json::obj()
                .with("status", status)
                .with("max_pairwise", u.max_pairwise)
                .with(
                    "limits",
                    Json::Arr(u.limits.iter().map(point_json).collect()),
                )
                .with("converged", u.converged)
                .with("not_converged", failed),
        );
    }
    Ok((passed, result))
}

fn hypotheses_json(h: &HypothesisReport<f64>) -> Json {
    Json::obj()
        .with("passed", h.passed())
        .with("initial_related", h.initial_related)
        .with("closure", check_json(&h.closure))
}

fn verify(cfg: &RunConfig, r: &Resolved, art: &mut Artifacts) -> Result<(bool, Json), RunError> {
    let mut passed = true;
    let mut reports = Vec::new();
    for ((spec, sampler), c) in r.contractions.iter().zip(&cfg.contraction) {
        let rep = check_contraction(
            &r.space,
            &r.pair,
            spec,
            sampler,
            c.n_samples,
            c.tol,
            cfg.seed,
        )?;
        let ok = rep.status() == Status::Pass;
        passed &= ok;
        art.line(
            ok,
            format!(
                "{} a={}: {} violations in {} samples, worst margin {:e}",
                spec.family.as_str(),
                spec.a,
                rep.violations,
                rep.checked,
                rep.worst_margin
            ),
        );
        reports.push(
            Json::obj()
                .with("spec", spec_json(spec))
                .with("sampler", format!("{:?}", c.sampler).to_lowercase())
                .with("report", check_json(&rep)),
        );
    }
    let mut result = Json::obj().with("contraction", Json::Arr(reports));

    let verify = cfg.verify.as_ref();
    let hyp = match verify.and_then(|v| v.hypothesis_start()) {
        Some((x0, lambda)) => {
            let n = verify.map_or(1000, |v| v.n_samples);
            let h = verify_hypotheses(&r.space, &r.pair, lambda, &x0, n, cfg.seed)?;
            passed &= h.passed();
            art.line(
                h.passed(),
                format!(
                    "hypotheses at {x0}: initial related {}, closure violations {}",
                    h.initial_related, h.closure.violations
                ),
            );
            hypotheses_json(&h)
        }
        None => Json::Null,
    };
    result = result.with("hypotheses", hyp);

    let axioms = match verify.filter(|v| v.axioms) {
        Some(v) => {
            let m = check_metric_axioms(&r.space, v.axiom_samples, v.axiom_tol, cfg.seed)?;
            let c = check_convexity_inequality(&r.space, v.axiom_samples, v.axiom_tol, cfg.seed)?;
            for (name, rep) in [("metric axioms", &m), ("convexity", &c)] {
                let ok = rep.status() == Status::Pass;
                passed &= ok;
                art.line(
                    ok,
                    format!("{name}: {} violations in {}", rep.violations, rep.checked),
                );
            }
            Json::obj()
                .with("metric", check_json(&m))
                .with("convexity", check_json(&c))
        }
        None => Json::Null,
    };
    Ok((passed, result.with("axioms", axioms)))
}

fn probe_json(p: &ProbeReport<f64>) -> Json {
    Json::obj()
        .with("status", p.status.as_str())
        .with("note", p.note.clone())
        .with("tail_start", p.tail_start)
        .with("tail_max", p.tail_max)
        .with("check", check_json(&p.check))
}

fn ulam_json(u: &UlamHyersReport<f64>) -> Json {
    let rows = u
        .per_epsilon
        .iter()
        .map(|e| {
            Json::obj()
                .with("epsilon", e.epsilon)
                .with("accepted", e.accepted)
                .with("worst_ratio", e.worst_ratio)
                .with("witness", e.witness.as_ref().map_or(Json::Null, point_json))
                .with("densified", e.densified)
                .with("truncated", e.truncated)
        })
        .collect();
    Json::obj()
        .with("status", u.status.as_str())
        .with("estimated_c", u.estimated_c)
        .with("exceeds_one", u.estimated_c.map(|c| c > 1.0))
        .with("per_epsilon", Json::Arr(rows))
}

fn decay_of(sc: &StabilityConfig) -> Decay<f64> {
    match sc.decay {
        DecayName::Inverse => Decay::Inverse,
        DecayName::Geometric => Decay::Geometric(sc.ratio.expect("checked by resolve")),
        DecayName::Zero => Decay::Zero,
    }
}

fn stability(cfg: &RunConfig, r: &Resolved, art: &mut Artifacts) -> Result<(bool, Json), RunError> {
    let sc = cfg.stability.as_ref().expect("checked by resolve");
    let p = Point::from_slice(&sc.p)?;
    let decay = decay_of(sc);
    let perturbation = match &sc.direction {
        Some(d) => Perturbation::Direction(d.clone()),
        None => Perturbation::Random,
    };
    let sequence = |n| {
        make_asymptotic_sequence(
            &r.space,
            &r.pair,
            sc.lambda,
            &p,
            |k| decay.at(k),
            &perturbation,
            n,
            cfg.seed,
        )
    };

    let seq = sequence(sc.n_terms)?;
    let params = InterpolativeParams {
        a: sc.a,
        alpha: sc.alpha,
    };
    let wp = well_posedness_probe(
        &r.space, &r.pair, sc.lambda, &p, &seq, params, sc.tol, cfg.seed,
    )?;
    art.files
        .push(("well_posedness.csv".into(), csv_bytes(|b| wp.write_csv(b))?));
    art.line(
        wp.passed(),
        format!(
            "well-posedness: {} (tail max {:e})",
            wp.status.as_str(),
            wp.tail_max
        ),
    );

    let zs: Vec<Point<f64>> = if sc.z.is_empty() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5a5a_5a5a);
        (0..sc.n_z)
            .map(|_| r.space.domain().sample(&mut rng))
            .collect()
    } else {
        sc.z.iter()
            .map(|z| Point::from_slice(z))
            .collect::<Result<_, _>>()?
    };
    let long = sequence(sc.shadowing_terms)?;
    let mut shadow_rows = Vec::new();
    let mut shadow_ok = true;
    let mut columns: Vec<(String, Vec<f64>)> = Vec::new();
    for (i, z) in zs.iter().enumerate() {
        let rep = limit_shadowing_probe(&r.space, &r.pair, sc.lambda, &long, z, sc.tol, cfg.seed)?;
        shadow_ok &= rep.passed();
        for (name, col) in &rep.columns {
            columns.push((format!("z{i}_{name}"), col.clone()));
        }
        shadow_rows.push(
            Json::obj()
                .with("z", point_json(z))
                .with("report", probe_json(&rep)),
        );
    }
    let table = ProbeReport {
        status: Status::Pass,
        note: None,
        tail_start: 0,
        tail_max: 0.0,
        check: CheckReport::new(cfg.seed, sc.tol),
        columns,
    };
    art.files.push((
        "limit_shadowing.csv".into(),
        csv_bytes(|b| table.write_csv(b))?,
    ));
    art.line(
        shadow_ok,
        format!("limit shadowing: {} start points", zs.len()),
    );

    let uh = ulam_hyers_probe(
        &r.space,
        &r.pair,
        sc.lambda,
        &p,
        &sc.epsilons,
        sc.n_samples,
        cfg.seed,
    )?;
    art.files
        .push(("ulam_hyers.csv".into(), csv_bytes(|b| uh.write_csv(b))?));
    art.line(
        uh.stable(),
        format!(
            "ulam-hyers: estimated c = {}",
            uh.estimated_c.map_or("none".into(), |c| format!("{c:e}"))
        ),
    );

    let passed = wp.passed() && shadow_ok && uh.stable();
    let result = Json::obj()
        .with("well_posedness", probe_json(&wp))
        .with(
            "limit_shadowing",
            Json::obj()
                .with("passed", shadow_ok)
                .with("n_terms", sc.shadowing_terms)
                .with("starts", Json::Arr(shadow_rows)),
        )
        .with("ulam_hyers", ulam_json(&uh));
    Ok((passed, result))
}

fn estimate(cfg: &RunConfig, r: &Resolved, art: &mut Artifacts) -> Result<(bool, Json), RunError> {
    let mut passed = true;
    let mut rows = Vec::new();
    for ((spec, sampler), c) in r.contractions.iter().zip(&cfg.contraction) {
        let upper = spec.family.a_upper();
        let row = Json::obj()
            .with("spec", spec_json(spec))
            .with("a_upper", upper);
        match estimate_min_coefficient(&r.space, &r.pair, spec, sampler, c.n_samples, cfg.seed) {
            Ok(est) => {
                let ok = est < upper;
                passed &= ok;
                art.line(
                    ok,
                    format!(
                        "{}: minimal a ≈ {est:e} (< {upper} needed)",
                        spec.family.as_str()
                    ),
                );
                rows.push(
                    row.with("estimate", est)
                        .with("admissible", ok)
                        .with("error", Json::Null),
                );
            }
            Err(e @ Error::Inconclusive(_)) => {
                passed = false;
                art.line(false, format!("{}: {e}", spec.family.as_str()));
                rows.push(
                    row.with("estimate", Json::Null)
                        .with("admissible", false)
                        .with("error", e.to_string()),
                );
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok((passed, Json::obj().with("estimates", Json::Arr(rows))))
}

/// Builtin spaces and pairs, one per line, in a fixed order.
pub fn list_registry() -> String {
    let mut out = String::from("spaces:\n");
    for s in builtin_spaces() {
        out.push_str(&format!("  {:<20} {}\n", s.name, s.description));
    }
    out.push_str("pairs:\n");
    for p in builtin_pairs() {
        out.push_str(&format!(
            "  {:<20} {} (on {})\n",
            p.name, p.description, p.home_space
        ));
    }
    out
}
