//! Run configuration: a TOML document with one table per concern.
//!
//! Unknown keys are rejected. Defaults are filled during deserialization so
//! the echoed document lists every effective setting.

use std::path::PathBuf;

use enrichfix::maps::{ExprMap, MapPair, PairSampler};
use enrichfix::spaces::{MetricKind, RelationKind, StructureKind};
use enrichfix::{ContractionSpec, DomainBox, Error, Family, Point, SolveOptions, SpaceSpec};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Solve,
    Verify,
    Stability,
    Estimate,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Solve => "solve",
            Mode::Verify => "verify",
            Mode::Stability => "stability",
            Mode::Estimate => "estimate",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_output")]
    pub output: PathBuf,
    pub space: SpaceConfig,
    pub pair: PairConfig,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub contraction: Vec<ContractionConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifyConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solve: Option<SolveConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stability: Option<StabilityConfig>,
}

fn default_output() -> PathBuf {
    PathBuf::from("enrichfix-out")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MetricName {
    Euclidean,
    Taxicab,
    Chebyshev,
    ProductTaxicab,
    OrderPiecewise,
}

/// A builtin space by `name`, or an inline one from `metric`, `structure`,
/// `relation` and `domain`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct SpaceConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<MetricName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation: Option<RelationKind>,
    /// `[lo, hi]` per coordinate; overrides a builtin's box.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<Vec<[f64; 2]>>,
    #[serde(default)]
    pub strict_paper_metric: bool,
}

/// A builtin pair by `name`, or expression maps `t` and `s`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct PairConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Vec<BranchConfig>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<BranchConfig>>,
}

/// One piece of a piecewise map; the first branch whose guard holds wins.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct BranchConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub when: Option<String>,
    pub map: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SamplerName {
    Uniform,
    Related,
    Unrelated,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct ContractionConfig {
    pub family: Family,
    /// Required in verify mode, ignored by estimate.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(default = "default_sampler")]
    pub sampler: SamplerName,
    /// Sample both points from this box instead of the space domain.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub within: Option<Vec<[f64; 2]>>,
    #[serde(default = "default_check_samples")]
    pub n_samples: usize,
    #[serde(default = "default_check_tol")]
    pub tol: f64,
}

fn default_sampler() -> SamplerName {
    SamplerName::Related
}

fn default_check_samples() -> usize {
    10_000
}

fn default_check_tol() -> f64 {
    1e-9
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct VerifyConfig {
    /// Hypothesis check start; needs `lambda` too.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x0: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default = "default_hypothesis_samples")]
    pub n_samples: usize,
    /// Also run the metric axiom and convexity checks.
    #[serde(default)]
    pub axioms: bool,
    #[serde(default = "default_check_samples")]
    pub axiom_samples: usize,
    #[serde(default = "default_check_tol")]
    pub axiom_tol: f64,
}

fn default_hypothesis_samples() -> usize {
    1_000
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct SolveConfig {
    pub lambda: f64,
    pub x0: Vec<f64>,
    #[serde(default = "default_solve_tol")]
    pub tol: f64,
    #[serde(default = "default_max_iters")]
    pub max_iters: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_hint: Option<f64>,
    /// Extra starts for the uniqueness probe (run together with `x0`).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub starts: Vec<Vec<f64>>,
}

fn default_solve_tol() -> f64 {
    1e-10
}

fn default_max_iters() -> usize {
    enrichfix::solver::DEFAULT_MAX_ITERS
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecayName {
    Inverse,
    Geometric,
    Zero,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct StabilityConfig {
    pub lambda: f64,
    /// The common fixed point.
    pub p: Vec<f64>,
    /// Well-posedness bound parameters.
    pub a: f64,
    pub alpha: f64,
    #[serde(default = "default_decay")]
    pub decay: DecayName,
    /// Ratio for geometric decay, in (0,1).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
    /// Perturbation direction; drawn from the seed when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<Vec<f64>>,
    #[serde(default = "default_n_terms")]
    pub n_terms: usize,
    /// Length of the sequence tracked by the shadowing probe.
    #[serde(default = "default_shadowing_terms")]
    pub shadowing_terms: usize,
    #[serde(default = "default_probe_tol")]
    pub tol: f64,
    /// Shadowing start points; `n-z` points are sampled when empty.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub z: Vec<Vec<f64>>,
    #[serde(default = "default_n_z")]
    pub n_z: usize,
    #[serde(default = "default_epsilons")]
    pub epsilons: Vec<f64>,
    #[serde(default = "default_uh_samples")]
    pub n_samples: usize,
}

fn default_decay() -> DecayName {
    DecayName::Inverse
}

fn default_n_terms() -> usize {
    200
}

fn default_shadowing_terms() -> usize {
    1000
}

fn default_probe_tol() -> f64 {
    1e-2
}

fn default_n_z() -> usize {
    10
}

fn default_epsilons() -> Vec<f64> {
    vec![1e-1, 1e-2, 1e-3]
}

fn default_uh_samples() -> usize {
    20_000
}

/// Objects built from a config.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub space: SpaceSpec<f64>,
    pub pair: MapPair<f64>,
    pub contractions: Vec<(ContractionSpec<f64>, PairSampler<f64>)>,
}

fn field_err(field: &str, msg: impl std::fmt::Display) -> Error {
    Error::Config(format!("{field}: {msg}"))
}

fn domain_box(field: &str, bounds: &[[f64; 2]]) -> Result<DomainBox<f64>, Error> {
    if bounds.is_empty() {
        return Err(field_err(field, "needs at least one [lo, hi] pair"));
    }
    let b = DomainBox::new(bounds.iter().map(|[lo, hi]| (*lo, *hi)).collect())
        .map_err(|e| field_err(field, e))?;
    b.ensure_nonempty().map_err(|e| field_err(field, e))?;
    Ok(b)
}

fn point(field: &str, space: &SpaceSpec<f64>, coords: &[f64]) -> Result<Point<f64>, Error> {
    let p = Point::from_slice(coords).map_err(|e| field_err(field, e))?;
    space.check_point(&p).map_err(|e| field_err(field, e))?;
    Ok(p)
}

fn unit_interval(field: &str, v: f64) -> Result<(), Error> {
    if (0.0..1.0).contains(&v) {
        Ok(())
    } else {
        Err(field_err(field, format!("λ must lie in [0,1), got {v}")))
    }
}

fn positive(field: &str, v: f64) -> Result<(), Error> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(field_err(field, format!("must be positive, got {v}")))
    }
}

fn at_least_one(field: &str, v: usize) -> Result<(), Error> {
    if v >= 1 {
        Ok(())
    } else {
        Err(field_err(field, "must be at least 1"))
    }
}

impl SpaceConfig {
    pub fn resolve(&self) -> Result<SpaceSpec<f64>, Error> {
        let inline = self.metric.is_some() || self.structure.is_some() || self.relation.is_some();
        let space = if inline {
            let (Some(metric), Some(structure), Some(relation), Some(domain)) =
                (self.metric, self.structure, self.relation, &self.domain)
            else {
                return Err(field_err(
                    "space",
                    "inline spaces need metric, structure, relation and domain",
                ));
            };
            let metric = match metric {
                MetricName::Euclidean => MetricKind::Euclidean,
                MetricName::Taxicab => MetricKind::Taxicab,
                MetricName::Chebyshev => MetricKind::Chebyshev,
                MetricName::ProductTaxicab => MetricKind::ProductTaxicab,
                MetricName::OrderPiecewise => MetricKind::OrderPiecewise { symmetric: true },
            };
            SpaceSpec::new(
                self.name.clone().unwrap_or_else(|| "custom".into()),
                metric,
                structure,
                relation,
                domain_box("space.domain", domain)?,
            )?
        } else {
            let Some(name) = &self.name else {
                return Err(field_err(
                    "space",
                    "give a builtin name or an inline definition",
                ));
            };
            let space = SpaceSpec::builtin(name)?;
            match &self.domain {
                Some(d) => space.with_domain(domain_box("space.domain", d)?)?,
                None => space,
            }
        };
        Ok(space.with_strict_paper_metric(self.strict_paper_metric))
    }
}

fn compile_map(field: &str, dim: usize, branches: &[BranchConfig]) -> Result<ExprMap, Error> {
    let parts: Vec<(Option<&str>, Vec<&str>)> = branches
        .iter()
        .map(|b| {
            (
                b.when.as_deref(),
                b.map.iter().map(String::as_str).collect(),
            )
        })
        .collect();
    ExprMap::compile(dim, &parts).map_err(|e| match e {
        Error::Parse { .. } => e,
        other => field_err(field, other),
    })
}

impl PairConfig {
    pub fn resolve(&self, space: &SpaceSpec<f64>) -> Result<MapPair<f64>, Error> {
        match (&self.t, &self.s) {
            (Some(t), Some(s)) => {
                let dim = space.dimension();
                MapPair::from_expressions(
                    self.name.clone().unwrap_or_else(|| "custom".into()),
                    compile_map("pair.t", dim, t)?,
                    compile_map("pair.s", dim, s)?,
                )
            }
            (None, None) => {
                let Some(name) = &self.name else {
                    return Err(field_err("pair", "give a builtin name or both t and s"));
                };
                MapPair::builtin(name)
            }
            _ => Err(field_err("pair", "expression pairs need both t and s")),
        }
    }
}

impl ContractionConfig {
    /// `require_a` is false for estimate runs, where `a` is the unknown.
    pub fn resolve(
        &self,
        index: usize,
        space: &SpaceSpec<f64>,
        require_a: bool,
    ) -> Result<(ContractionSpec<f64>, PairSampler<f64>), Error> {
        let field = format!("contraction[{index}]");
        let a = match (self.a, require_a) {
            (Some(a), _) => a,
            (None, false) => 0.0,
            (None, true) => {
                return Err(field_err(&format!("{field}.a"), "required in verify mode"))
            }
        };
        let mut spec = ContractionSpec::new(self.family, a);
        if let Some(v) = self.alpha {
            spec = spec.alpha(v);
        }
        if let Some(v) = self.lambda {
            spec = spec.lambda(v);
        }
        if let Some(v) = self.b {
            spec = spec.b(v);
        }
        let check = if require_a {
            spec.validate()
        } else {
            spec.with_a(0.0).validate()
        };
        check.map_err(|e| field_err(&field, e))?;
        at_least_one(&format!("{field}.n-samples"), self.n_samples)?;
        if !(self.tol >= 0.0 && self.tol.is_finite()) {
            return Err(field_err(
                &format!("{field}.tol"),
                "must be finite and nonnegative",
            ));
        }
        let sampler = match (&self.within, self.sampler) {
            (Some(b), SamplerName::Uniform) => {
                let b = domain_box(&format!("{field}.within"), b)?;
                if b.dim() != space.dimension() {
                    return Err(field_err(&format!("{field}.within"), "dimension mismatch"));
                }
                PairSampler::Within(b)
            }
            (Some(_), _) => {
                return Err(field_err(
                    &format!("{field}.within"),
                    "needs sampler = \"uniform\"",
                ))
            }
            (None, SamplerName::Uniform) => PairSampler::Uniform,
            (None, SamplerName::Related) => PairSampler::Related,
            (None, SamplerName::Unrelated) => PairSampler::Unrelated,
        };
        Ok((spec, sampler))
    }
}

impl RunConfig {
    /// Builds the space, pair and contraction specs, and checks the mode's
    /// sections.
    pub fn resolve(&self) -> Result<Resolved, Error> {
        let space = self.space.resolve()?;
        let pair = self.pair.resolve(&space)?;
        let require_a = self.mode != Some(Mode::Estimate);
        let contractions = self
            .contraction
            .iter()
            .enumerate()
            .map(|(i, c)| c.resolve(i, &space, require_a))
            .collect::<Result<Vec<_>, _>>()?;
        let resolved = Resolved {
            space,
            pair,
            contractions,
        };
        if let Some(v) = &self.verify {
            v.validate(&resolved.space)?;
        }
        if let Some(s) = &self.solve {
            s.validate(&resolved.space)?;
        }
        if let Some(s) = &self.stability {
            s.validate(&resolved.space)?;
        }
        match self.mode {
            Some(Mode::Solve) if self.solve.is_none() => {
                Err(field_err("solve", "solve mode needs a [solve] section"))
            }
            Some(Mode::Verify | Mode::Estimate) if self.contraction.is_empty() => Err(field_err(
                "contraction",
                "needs at least one [[contraction]] entry",
            )),
            Some(Mode::Stability) if self.stability.is_none() => Err(field_err(
                "stability",
                "stability mode needs a [stability] section",
            )),
            _ => Ok(resolved),
        }
    }

    /// The effective configuration as TOML.
    pub fn echo(&self) -> String {
        toml::to_string(self).expect("run configs always serialize")
    }
}

impl VerifyConfig {
    fn validate(&self, space: &SpaceSpec<f64>) -> Result<(), Error> {
        match (&self.x0, self.lambda) {
            (Some(x0), Some(l)) => {
                point("verify.x0", space, x0)?;
                unit_interval("verify.lambda", l)?;
            }
            (None, None) => {}
            _ => return Err(field_err("verify", "x0 and lambda go together")),
        }
        at_least_one("verify.n-samples", self.n_samples)?;
        at_least_one("verify.axiom-samples", self.axiom_samples)?;
        if !(self.axiom_tol >= 0.0) {
            return Err(field_err("verify.axiom-tol", "must be nonnegative"));
        }
        Ok(())
    }

    pub fn hypothesis_start(&self) -> Option<(Point<f64>, f64)> {
        match (&self.x0, self.lambda) {
            (Some(x0), Some(l)) => Some((Point::from_slice(x0).ok()?, l)),
            _ => None,
        }
    }
}

impl SolveConfig {
    fn validate(&self, space: &SpaceSpec<f64>) -> Result<(), Error> {
        unit_interval("solve.lambda", self.lambda)?;
        point("solve.x0", space, &self.x0)?;
        for (i, s) in self.starts.iter().enumerate() {
            point(&format!("solve.starts[{i}]"), space, s)?;
        }
        self.options().validate().map_err(|e| field_err("solve", e))
    }

    pub fn options(&self) -> SolveOptions<f64> {
        let opts = SolveOptions::new(self.lambda, self.tol).max_iters(self.max_iters);
        match self.a_hint {
            Some(a) => opts.a_hint(a),
            None => opts,
        }
    }
}

impl StabilityConfig {
    fn validate(&self, space: &SpaceSpec<f64>) -> Result<(), Error> {
        unit_interval("stability.lambda", self.lambda)?;
        point("stability.p", space, &self.p)?;
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(field_err("stability.alpha", "must lie in [0,1]"));
        }
        if !(self.a >= 0.0 && self.a.is_finite()) {
            return Err(field_err("stability.a", "must be finite and nonnegative"));
        }
        match (self.decay, self.ratio) {
            (DecayName::Geometric, Some(r)) if r > 0.0 && r < 1.0 => {}
            (DecayName::Geometric, _) => {
                return Err(field_err(
                    "stability.ratio",
                    "geometric decay needs ratio in (0,1)",
                ))
            }
            (_, Some(_)) => {
                return Err(field_err(
                    "stability.ratio",
                    "only used with decay = \"geometric\"",
                ))
            }
            _ => {}
        }
        if let Some(d) = &self.direction {
            if d.len() != space.dimension() || d.iter().any(|c| !c.is_finite()) {
                return Err(field_err(
                    "stability.direction",
                    format!("needs {} finite coordinates", space.dimension()),
                ));
            }
        }
        at_least_one("stability.n-terms", self.n_terms)?;
        at_least_one("stability.shadowing-terms", self.shadowing_terms)?;
        at_least_one("stability.n-samples", self.n_samples)?;
        positive("stability.tol", self.tol)?;
        for (i, z) in self.z.iter().enumerate() {
            point(&format!("stability.z[{i}]"), space, z)?;
        }
        if self.z.is_empty() {
            at_least_one("stability.n-z", self.n_z)?;
        }
        if self.epsilons.is_empty() {
            return Err(field_err("stability.epsilons", "needs at least one value"));
        }
        for e in &self.epsilons {
            positive("stability.epsilons", *e)?;
        }
        Ok(())
    }
}

/// Parses and validates a configuration document.
pub fn parse_config(text: &str) -> Result<RunConfig, Error> {
    let cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    cfg.resolve()?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    const DIAG_SOLVE: &str = r#"
mode = "solve"
seed = 7

[space]
name = "r2-taxicab-diag"

[pair]
name = "paper-main-pair"

[solve]
lambda = 0.5
x0 = [2.0, 2.0]
"#;

    #[test]
    fn parses_solve_example() {
        let cfg = parse_config(DIAG_SOLVE).unwrap();
        assert_eq!(cfg.mode, Some(Mode::Solve));
        let s = cfg.solve.as_ref().unwrap();
        assert_eq!(s.tol, 1e-10);
        assert_eq!(s.max_iters, 1_000_000);
    }

    #[test]
    fn lambda_one_is_rejected() {
        let text = DIAG_SOLVE.replace("lambda = 0.5", "lambda = 1.0");
        let err = parse_config(&text).unwrap_err().to_string();
        assert!(err.contains("λ must lie in [0,1)"), "{err}");
        assert!(err.contains("solve.lambda"), "{err}");
    }

    #[test]
    fn unknown_keys_and_names() {
        let text = DIAG_SOLVE.replace("seed = 7", "seed = 7\nsede = 8");
        assert!(parse_config(&text).is_err());
        let text = DIAG_SOLVE.replace("r2-taxicab-diag", "r3-nowhere");
        match parse_config(&text) {
            Err(Error::Lookup { known, .. }) => assert!(known.contains(&"r2-taxicab-diag".into())),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn expression_pair_compiles_and_reports_columns() {
        let text = r#"
[space]
name = "r1-interval"
[pair]
t = [{ map = ["1 - x1"] }]
s = [{ map = ["1 - * x1"] }]
"#;
        match parse_config(text) {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 5),
            other => panic!("{other:?}"),
        }
        let ok = text.replace("1 - * x1", "1 - x1");
        let cfg = parse_config(&ok).unwrap();
        let r = cfg.resolve().unwrap();
        let builtin = MapPair::<f64>::builtin("one-minus-x").unwrap();
        for x in [0.0, 0.13, 0.5, 0.77, 1.0] {
            let p = Point::from_f64s(&[x]).unwrap();
            assert_eq!(r.pair.t.apply(&p).unwrap(), builtin.t.apply(&p).unwrap());
            assert_eq!(r.pair.s.apply(&p).unwrap(), builtin.s.apply(&p).unwrap());
        }
    }

    #[test]
    fn mode_sections_are_required() {
        let text =
            "mode = \"verify\"\n[space]\nname = \"r1-interval\"\n[pair]\nname = \"one-minus-x\"\n";
        assert!(parse_config(text)
            .unwrap_err()
            .to_string()
            .contains("contraction"));
        let text = text.replace("verify", "stability");
        assert!(parse_config(&text).is_err());
    }

    #[test]
    fn echo_round_trips() {
        let text = r#"
mode = "verify"
seed = 3
[space]
name = "r2-order-piecewise"
strict-paper-metric = true
domain = [[-1.0, 1.0], [-2.0, 2.0]]
[pair]
name = "custom"
t = [{ when = "x1 == x2", map = ["-x1", "-x2"] }, { map = ["x1", "2*x1 - x2"] }]
s = [{ map = ["x1", "x2"] }]
[[contraction]]
family = "kannan"
a = 0.4
sampler = "uniform"
within = [[0.0, 0.5], [0.0, 0.5]]
[verify]
x0 = [0.0, 0.0]
lambda = 0.5
axioms = true
"#;
        let cfg = parse_config(text).unwrap();
        let again = parse_config(&cfg.echo()).unwrap();
        assert_eq!(cfg, again);
        assert_eq!(again.contraction[0].n_samples, 10_000);
    }

    #[test]
    fn inline_space() {
        let text = r#"
[space]
metric = "chebyshev"
structure = "affine"
relation = "componentwise-le"
domain = [[0.0, 1.0], [0.0, 1.0], [0.0, 1.0]]
[pair]
name = "identity"
"#;
        let r = parse_config(text).unwrap().resolve().unwrap();
        assert_eq!(r.space.dimension(), 3);
        assert!(r.space.is_linear());
    }
}
