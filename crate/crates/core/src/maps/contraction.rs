//! Contraction inequalities and their sampled checkers.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{averaged, check_lambda, MapPair};
use crate::error::{Error, Result};
use crate::point::Point;
use crate::report::CheckReport;
use crate::sampling::{sample_rng, uniform, DomainBox};
use crate::scalar::Scalar;
use crate::spaces::{RelationKind, SpaceSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `d(Tx, Sy) ≤ a d(x, y)`
    Banach,
    /// `d(Tx, Sy) ≤ a {d(x, Tx) + d(y, Sy)}`
    Kannan,
    /// `d(Tx, Ty) ≤ a [d(x, Tx)]^α [d(y, Ty)]^(1-α)` off `Fix(T)`
    InterpolativeKannan,
    /// `d(Tx, Sy) ≤ a [d(x, Tx)]^α [d(y, Sy)]^(1-α)` off the fixed sets
    NoorwaliPair,
    /// `‖b(x - y) + Tx - Ty‖ ≤ a {‖x - Tx‖ + ‖y - Ty‖}`
    EnrichedKannan,
    /// `‖b(x - y) + Tx - Sy‖ ≤ a {‖x - Tx‖ + ‖y - Sy‖}`
    ModifiedEnrichedKannanPair,
    /// `d(T_λx, S_λy) ≤ a [d(x, T_λx)]^α [d(y, S_λy)]^(1-α)` for `x R y`
    EnrichedInterpolativePair,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Banach,
        Family::Kannan,
        Family::InterpolativeKannan,
        Family::NoorwaliPair,
        Family::EnrichedKannan,
        Family::ModifiedEnrichedKannanPair,
        Family::EnrichedInterpolativePair,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Banach => "banach",
            Family::Kannan => "kannan",
            Family::InterpolativeKannan => "interpolative-kannan",
            Family::NoorwaliPair => "noorwali-pair",
            Family::EnrichedKannan => "enriched-kannan",
            Family::ModifiedEnrichedKannanPair => "modified-enriched-kannan-pair",
            Family::EnrichedInterpolativePair => "enriched-interpolative-pair",
        }
    }

    /// Exclusive upper bound on `a`.
    pub fn a_upper(self) -> f64 {
        match self {
            Family::Kannan | Family::EnrichedKannan | Family::ModifiedEnrichedKannanPair => 0.5,
            _ => 1.0,
        }
    }

    pub fn needs_alpha(self) -> bool {
        matches!(
            self,
            Family::InterpolativeKannan | Family::NoorwaliPair | Family::EnrichedInterpolativePair
        )
    }

    pub fn needs_lambda(self) -> bool {
        self == Family::EnrichedInterpolativePair
    }

    pub fn needs_b(self) -> bool {
        matches!(
            self,
            Family::EnrichedKannan | Family::ModifiedEnrichedKannanPair
        )
    }

    /// Families written with a norm rather than a metric.
    pub fn is_norm_form(self) -> bool {
        self.needs_b()
    }
}

/// A family tag with its parameters. Unused parameters are ignored.
#[derive(Clone, Debug, PartialEq)]
pub struct ContractionSpec<T> {
    pub family: Family,
    pub a: T,
    pub alpha: Option<T>,
    pub lambda: Option<T>,
    pub b: Option<T>,
}

impl<T: Scalar> ContractionSpec<T> {
    pub fn new(family: Family, a: T) -> Self {
        Self {
            family,
            a,
            alpha: None,
            lambda: None,
            b: None,
        }
    }

    pub fn alpha(mut self, alpha: T) -> Self {
        self.alpha = Some(alpha);
        self
    }

    pub fn lambda(mut self, lambda: T) -> Self {
        self.lambda = Some(lambda);
        self
    }

    pub fn b(mut self, b: T) -> Self {
        self.b = Some(b);
        self
    }

    pub fn with_a(&self, a: T) -> Self {
        Self { a, ..self.clone() }
    }

    /// Checks every parameter the family uses.
    pub fn validate(&self) -> Result<()> {
        self.validate_shape()?;
        let upper = self.family.a_upper();
        if !(self.a >= T::zero() && self.a < T::cast(upper)) {
            return Err(Error::Input(format!(
                "{}: a = {} must lie in [0,{upper})",
                self.family.as_str(),
                self.a
            )));
        }
        Ok(())
    }

    /// Validation of everything except `a`.
    fn validate_shape(&self) -> Result<()> {
        let name = self.family.as_str();
        if self.family.needs_alpha() {
            let alpha = self
                .alpha
                .ok_or_else(|| Error::Input(format!("{name} requires alpha")))?;
            if !(alpha > T::zero() && alpha < T::one()) {
                return Err(Error::Input(format!(
                    "{name}: alpha = {alpha} must lie in (0,1)"
                )));
            }
        }
        if self.family.needs_lambda() {
            let lambda = self
                .lambda
                .ok_or_else(|| Error::Input(format!("{name} requires lambda")))?;
            check_lambda(lambda).map_err(|_| {
                Error::Input(format!("{name}: lambda = {lambda} must lie in [0,1)"))
            })?;
        }
        if self.family.needs_b() {
            let b = self
                .b
                .ok_or_else(|| Error::Input(format!("{name} requires b")))?;
            if !(b >= T::zero() && b.is_finite()) {
                return Err(Error::Input(format!("{name}: b = {b} must lie in [0,∞)")));
            }
        }
        Ok(())
    }
}

/// Both sides of a contraction inequality at one sample.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Residual<T> {
    pub lhs: T,
    pub rhs: T,
    pub applicable: bool,
}

/// `lhs`, the right side without the factor `a`, and applicability.
struct Parts<T> {
    lhs: T,
    unit_rhs: T,
    applicable: bool,
}

/// `[dx]^α [dy]^(1-α)`, zero as soon as either factor is zero.
fn interpolate<T: Scalar>(dx: T, dy: T, alpha: T) -> T {
    if dx == T::zero() || dy == T::zero() {
        T::zero()
    } else {
        dx.powf(alpha) * dy.powf(T::one() - alpha)
    }
}

fn sub<T: Scalar>(a: &Point<T>, b: &Point<T>) -> Vec<T> {
    a.coords()
        .iter()
        .zip(b.coords())
        .map(|(p, q)| *p - *q)
        .collect()
}

fn parts<T: Scalar>(
    space: &SpaceSpec<T>,
    pair: &MapPair<T>,
    spec: &ContractionSpec<T>,
    x: &Point<T>,
    y: &Point<T>,
) -> Result<Parts<T>> {
    let thr = space.fixed_threshold();
    let d = |p: &Point<T>, q: &Point<T>| space.dist(p, q);
    Ok(match spec.family {
        Family::Banach => {
            let (tx, sy) = (pair.t.apply(x)?, pair.s.apply(y)?);
            Parts {
                lhs: d(&tx, &sy),
                unit_rhs: d(x, y),
                applicable: true,
            }
        }
        Family::Kannan => {
            let (tx, sy) = (pair.t.apply(x)?, pair.s.apply(y)?);
            Parts {
                lhs: d(&tx, &sy),
                unit_rhs: d(x, &tx) + d(y, &sy),
                applicable: true,
            }
        }
        Family::InterpolativeKannan | Family::NoorwaliPair => {
            let alpha = spec.alpha.expect("validated");
            let tx = pair.t.apply(x)?;
            let other = if spec.family == Family::NoorwaliPair {
                pair.s.apply(y)?
            } else {
                pair.t.apply(y)?
            };
            let (dx, dy) = (d(x, &tx), d(y, &other));
            Parts {
                lhs: d(&tx, &other),
                unit_rhs: interpolate(dx, dy, alpha),
                applicable: dx >= thr && dy >= thr,
            }
        }
        Family::EnrichedKannan | Family::ModifiedEnrichedKannanPair => {
            if !space.is_linear() {
                return Err(Error::Unsupported(format!(
                    "{} needs a normed space; {} is not linear",
                    spec.family.as_str(),
                    space.name()
                )));
            }
            let b = spec.b.expect("validated");
            let tx = pair.t.apply(x)?;
            let other = if spec.family == Family::ModifiedEnrichedKannanPair {
                pair.s.apply(y)?
            } else {
                pair.t.apply(y)?
            };
            let v: Vec<T> = x
                .coords()
                .iter()
                .zip(y.coords())
                .zip(tx.coords().iter().zip(other.coords()))
                .map(|((xi, yi), (ti, si))| b * (*xi - *yi) + (*ti - *si))
                .collect();
            Parts {
                lhs: space.norm(&v)?,
                unit_rhs: space.norm(&sub(x, &tx))? + space.norm(&sub(y, &other))?,
                applicable: true,
            }
        }
        Family::EnrichedInterpolativePair => {
            let alpha = spec.alpha.expect("validated");
            let lambda = spec.lambda.expect("validated");
            let tx = averaged(space, &pair.t, lambda, x)?;
            let sy = averaged(space, &pair.s, lambda, y)?;
            let (dx, dy) = (d(x, &tx), d(y, &sy));
            let lhs = d(&tx, &sy);
            // Both points fixed with coinciding images: nothing to compare.
            let trivial = dx < thr && dy < thr && lhs < thr;
            Parts {
                lhs,
                unit_rhs: interpolate(dx, dy, alpha),
                applicable: space.related(x, y) && !trivial,
            }
        }
    })
}

/// Left and right sides of the family's inequality at `(x, y)`.
pub fn condition_residual<T: Scalar>(
    space: &SpaceSpec<T>,
    pair: &MapPair<T>,
    spec: &ContractionSpec<T>,
    x: &Point<T>,
    y: &Point<T>,
) -> Result<Residual<T>> {
    spec.validate()?;
    space.check_point(x)?;
    space.check_point(y)?;
    let p = parts(space, pair, spec, x, y)?;
    Ok(Residual {
        lhs: p.lhs,
        rhs: spec.a * p.unit_rhs,
        applicable: p.applicable,
    })
}

/// How sample pairs `(x, y)` are drawn.
#[derive(Clone, Debug, PartialEq)]
pub enum PairSampler<T> {
    /// Both points uniform on the space's domain box.
    Uniform,
    /// Pairs with `x R y`.
    Related,
    /// Pairs with `not (x R y)`.
    Unrelated,
    /// Both points uniform on the given box.
    Within(DomainBox<T>),
}

impl<T: Scalar> PairSampler<T> {
    pub fn draw<R: Rng>(&self, space: &SpaceSpec<T>, rng: &mut R) -> Option<(Point<T>, Point<T>)> {
        let dom = space.domain();
        match self {
            PairSampler::Uniform => Some((dom.sample(rng), dom.sample(rng))),
            PairSampler::Within(b) => Some((b.sample(rng), b.sample(rng))),
            PairSampler::Related => match space.relation() {
                RelationKind::Universal => Some((dom.sample(rng), dom.sample(rng))),
                RelationKind::Diagonal => {
                    let (lo, hi) = dom
                        .bounds()
                        .iter()
                        .fold((T::neg_infinity(), T::infinity()), |(l, h), (a, b)| {
                            (l.max(*a), h.min(*b))
                        });
                    if lo > hi {
                        return None;
                    }
                    let n = space.dimension();
                    let (s, t) = (uniform(rng, lo, hi), uniform(rng, lo, hi));
                    Some((Point::raw(vec![s; n]), Point::raw(vec![t; n])))
                }
                RelationKind::ComponentwiseLe => {
                    let (a, b) = (dom.sample(rng), dom.sample(rng));
                    let (lo, hi) = a
                        .coords()
                        .iter()
                        .zip(b.coords())
                        .map(|(p, q)| (p.min(*q), p.max(*q)))
                        .unzip();
                    Some((Point::raw(lo), Point::raw(hi)))
                }
            },
            PairSampler::Unrelated => {
                if space.relation() == RelationKind::Universal {
                    return None;
                }
                // Generic draws are almost surely unrelated for the diagonal
                // relation; for `≤` swapping the first coordinates breaks it.
                for _ in 0..8 {
                    let (mut a, b) = (dom.sample(rng), dom.sample(rng));
                    if space.related(&a, &b) && space.relation() == RelationKind::ComponentwiseLe {
                        let mut c = a.into_coords();
                        let mut d = b.into_coords();
                        std::mem::swap(&mut c[0], &mut d[0]);
                        a = Point::raw(c);
                        let b = Point::raw(d);
                        if !space.related(&a, &b) {
                            return Some((a, b));
                        }
                        continue;
                    }
                    if !space.related(&a, &b) {
                        return Some((a, b));
                    }
                }
                None
            }
        }
    }
}

fn require_samples(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::Input("n_samples must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// Samples pairs and counts violations `lhs - rhs > tol` among applicable
/// samples. A report with zero applicable samples is inconclusive.
pub fn check_contraction<T: Scalar>(
    space: &SpaceSpec<T>,
    pair: &MapPair<T>,
    spec: &ContractionSpec<T>,
    sampler: &PairSampler<T>,
    n_samples: usize,
    tol: T,
    seed: u64,
) -> Result<CheckReport<T>> {
    spec.validate()?;
    require_samples(n_samples)?;
    space.domain().ensure_nonempty()?;
    let mut report = CheckReport::new(seed, tol);
    for i in 0..n_samples {
        let mut rng = sample_rng(seed, i as u64);
        let Some((x, y)) = sampler.draw(space, &mut rng) else {
            report.skip();
            continue;
        };
        let p = parts(space, pair, spec, &x, &y)?;
        if !p.applicable {
            report.skip();
            continue;
        }
        report.observe(p.lhs, spec.a * p.unit_rhs, || {
            (
                spec.family.as_str().to_string(),
                vec![x.clone(), y.clone()],
                spec.lambda,
            )
        });
    }
    Ok(report)
}

/// Smallest `a` consistent with the samples: the supremum of
/// `lhs / rhs_without_a`, with `0/0 = 0` and `+∞` when a positive left side
/// meets a vanishing right side. The value of `spec.a` is ignored.
pub fn estimate_min_coefficient<T: Scalar>(
    space: &SpaceSpec<T>,
    pair: &MapPair<T>,
    spec: &ContractionSpec<T>,
    sampler: &PairSampler<T>,
    n_samples: usize,
    seed: u64,
) -> Result<T> {
    spec.validate_shape()?;
    require_samples(n_samples)?;
    space.domain().ensure_nonempty()?;
    let thr = space.fixed_threshold();
    let mut best = T::zero();
    let mut applicable = 0usize;
    for i in 0..n_samples {
        let mut rng = sample_rng(seed, i as u64);
        let Some((x, y)) = sampler.draw(space, &mut rng) else {
            continue;
        };
        let p = parts(space, pair, spec, &x, &y)?;
        if !p.applicable {
            continue;
        }
        applicable += 1;
        let ratio = if p.unit_rhs > T::zero() {
            p.lhs / p.unit_rhs
        } else if p.lhs > thr {
            T::infinity()
        } else {
            T::zero()
        };
        best = best.max(ratio);
    }
    if applicable == 0 {
        return Err(Error::Inconclusive(format!(
            "no applicable samples for {} on {}",
            spec.family.as_str(),
            pair.name
        )));
    }
    Ok(best)
}

/// `λ = 1/(b+1)`: the weight the enriched formulation puts on `Tx`.
pub fn b_to_lambda<T: Scalar>(b: T) -> Result<T> {
    if !(b >= T::zero() && b.is_finite()) {
        return Err(Error::Input(format!("b = {b} must lie in [0,∞)")));
    }
    Ok(T::one() / (b + T::one()))
}

/// Weight on `x` in `W(x, Tx; ·)` that realises the enriched averaging
/// `x ↦ (1 - λ)x + λTx` with `λ = b_to_lambda(b)`, i.e. `b/(b+1)`.
pub fn enriched_structure_weight<T: Scalar>(b: T) -> Result<T> {
    b_to_lambda(b)?;
    Ok(b / (b + T::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    fn p(c: &[f64]) -> Point<f64> {
        Point::from_f64s(c).unwrap()
    }

    fn main_pair() -> (SpaceSpec<f64>, MapPair<f64>) {
        (
            SpaceSpec::builtin("r2-taxicab-diag").unwrap(),
            MapPair::builtin("paper-main-pair").unwrap(),
        )
    }

    fn eip(a: f64) -> ContractionSpec<f64> {
        ContractionSpec::new(Family::EnrichedInterpolativePair, a)
            .alpha(0.5)
            .lambda(0.5)
    }

    #[test]
    fn residual_on_diagonal_pair() {
        let (space, pair) = main_pair();
        let r =
            condition_residual(&space, &pair, &eip(0.5), &p(&[2.0, 2.0]), &p(&[5.0, 5.0])).unwrap();
        assert_eq!(r.lhs, 0.0);
        // 0.5 * sqrt(4) * sqrt(10)
        assert!((r.rhs - 0.5 * 2.0 * 10f64.sqrt()).abs() < 1e-12);
        assert!((r.rhs - 3.16228).abs() < 1e-5);
        assert!(r.applicable);
    }

    #[test]
    fn enriched_kannan_cancels_on_one_minus_x() {
        let space = SpaceSpec::<f64>::builtin("r1-interval").unwrap();
        let pair = MapPair::<f64>::builtin("one-minus-x").unwrap();
        let spec = ContractionSpec::new(Family::EnrichedKannan, 0.25).b(1.0);
        let r = condition_residual(&space, &pair, &spec, &p(&[0.2]), &p(&[0.9])).unwrap();
        assert!(r.lhs.abs() < 1e-15);
        assert!((r.rhs - 0.35).abs() < 1e-12);
        assert!(r.applicable);
    }

    #[test]
    fn interpolative_families_skip_common_fixed_points() {
        let (space, pair) = main_pair();
        let o = p(&[0.0, 0.0]);
        for family in [
            Family::InterpolativeKannan,
            Family::NoorwaliPair,
            Family::EnrichedInterpolativePair,
        ] {
            let spec = ContractionSpec::new(family, 0.5).alpha(0.5).lambda(0.5);
            let r = condition_residual(&space, &pair, &spec, &o, &o).unwrap();
            assert!(!r.applicable, "{family:?}");
        }
    }

    #[test]
    fn norm_forms_rejected_off_linear_spaces() {
        let space = SpaceSpec::<f64>::builtin("r2-order-piecewise").unwrap();
        let pair = MapPair::<f64>::builtin("negation").unwrap();
        let spec = ContractionSpec::new(Family::EnrichedKannan, 0.25).b(1.0);
        let err = condition_residual(&space, &pair, &spec, &p(&[0.0, 0.0]), &p(&[1.0, 1.0]));
        assert!(matches!(err, Err(Error::Unsupported(_))));
    }

    #[test]
    fn parameter_ranges() {
        assert!(ContractionSpec::new(Family::Kannan, 0.5f64)
            .validate()
            .is_err());
        assert!(ContractionSpec::new(Family::Kannan, 0.49f64)
            .validate()
            .is_ok());
        assert!(ContractionSpec::new(Family::Banach, 0.99f64)
            .validate()
            .is_ok());
        assert!(ContractionSpec::new(Family::Banach, 1.0f64)
            .validate()
            .is_err());
        assert!(ContractionSpec::new(Family::NoorwaliPair, 0.5f64)
            .validate()
            .is_err());
        assert!(ContractionSpec::new(Family::NoorwaliPair, 0.5f64)
            .alpha(1.0)
            .validate()
            .is_err());
        assert!(eip(0.5).lambda(1.0).validate().is_err());
        assert!(ContractionSpec::new(Family::EnrichedKannan, 0.2f64)
            .b(-1.0)
            .validate()
            .is_err());
    }

    #[test]
    fn main_pair_passes_on_related_samples() {
        let (space, pair) = main_pair();
        let r = check_contraction(
            &space,
            &pair,
            &eip(0.5),
            &PairSampler::Related,
            2_000,
            1e-9,
            9,
        )
        .unwrap();
        assert_eq!(r.status(), Status::Pass);
        assert_eq!(r.checked, 2_000);
        assert!(r.worst_margin >= 0.0);
    }

    #[test]
    fn unrelated_samples_are_inconclusive() {
        let (space, pair) = main_pair();
        let r = check_contraction(
            &space,
            &pair,
            &eip(0.5),
            &PairSampler::Unrelated,
            500,
            1e-9,
            9,
        )
        .unwrap();
        assert_eq!(r.status(), Status::Inconclusive);
        assert_eq!(r.skipped, 500);
    }

    #[test]
    fn plain_kannan_fails_near_fixed_point() {
        let space = SpaceSpec::<f64>::builtin("r1-interval").unwrap();
        let pair = MapPair::<f64>::builtin("one-minus-x").unwrap();
        let spec = ContractionSpec::new(Family::Kannan, 0.45);
        let near = PairSampler::Within(DomainBox::new(vec![(0.49, 0.51)]).unwrap());
        let r = check_contraction(&space, &pair, &spec, &near, 1_000, 1e-12, 4).unwrap();
        assert!(r.violations > 0);
        let w = r.witness.unwrap();
        assert!(w.lhs > w.rhs);
    }

    #[test]
    fn coefficient_estimates() {
        let (space, pair) = main_pair();
        let a = estimate_min_coefficient(&space, &pair, &eip(0.0), &PairSampler::Related, 1_000, 3)
            .unwrap();
        assert_eq!(a, 0.0);

        let interval = SpaceSpec::<f64>::builtin("r1-interval").unwrap();
        let omx = MapPair::<f64>::builtin("one-minus-x").unwrap();
        let ek = ContractionSpec::new(Family::EnrichedKannan, 0.0).b(1.0);
        let a = estimate_min_coefficient(&interval, &omx, &ek, &PairSampler::Uniform, 1_000, 3)
            .unwrap();
        assert!(a < 1e-12);

        let plane = SpaceSpec::<f64>::builtin("r2-euclidean").unwrap();
        let id = MapPair::<f64>::builtin("identity").unwrap();
        let ik = ContractionSpec::new(Family::InterpolativeKannan, 0.0).alpha(0.5);
        let err = estimate_min_coefficient(&plane, &id, &ik, &PairSampler::Uniform, 200, 3);
        assert!(matches!(err, Err(Error::Inconclusive(_))));
    }

    #[test]
    fn estimate_is_infinite_when_right_side_vanishes() {
        // identity pair under the enriched interpolative family: every point
        // is fixed, so distinct points give lhs > 0 = rhs
        let plane = SpaceSpec::<f64>::builtin("r2-euclidean").unwrap();
        let id = MapPair::<f64>::builtin("identity").unwrap();
        let a =
            estimate_min_coefficient(&plane, &id, &eip(0.0), &PairSampler::Uniform, 50, 3).unwrap();
        assert!(a.is_infinite());
    }

    #[test]
    fn b_lambda_transform() {
        assert_eq!(b_to_lambda(0.0f64).unwrap(), 1.0);
        assert_eq!(b_to_lambda(1.0f64).unwrap(), 0.5);
        assert_eq!(b_to_lambda(3.0f64).unwrap(), 0.25);
        assert!(b_to_lambda(-0.1f64).is_err());
        assert_eq!(enriched_structure_weight(3.0f64).unwrap(), 0.75);
        assert_eq!(enriched_structure_weight(0.0f64).unwrap(), 0.0);
    }

    #[test]
    fn related_sampler_respects_relation() {
        for name in ["r2-taxicab-diag", "r2-order-piecewise", "r2-euclidean"] {
            let space = SpaceSpec::<f64>::builtin(name).unwrap();
            for i in 0..200 {
                let (x, y) = PairSampler::Related
                    .draw(&space, &mut sample_rng(5, i))
                    .unwrap();
                assert!(space.related(&x, &y), "{name}");
                if let Some((x, y)) = PairSampler::Unrelated.draw(&space, &mut sample_rng(5, i)) {
                    assert!(!space.related(&x, &y), "{name}");
                }
            }
        }
    }
}
