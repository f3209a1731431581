//! Empirical probes for well-posedness, limit shadowing and Ulam-Hyers
//! stability of the common fixed point problem of a pair `(T, S)`.
//!
//! Limits are approximated on finite runs: a probe looks at the tail (last
//! 10%) of a sequence and reports the per-term profile so callers can
//! lengthen the run.

use std::io::Write;

use rand::Rng;

use crate::error::{Error, Result};
use crate::maps::{averaged, check_lambda, MapPair};
use crate::point::Point;
use crate::report::{CheckReport, Status};
use crate::sampling::sample_rng;
use crate::scalar::Scalar;
use crate::solver::fmt_sci;
use crate::spaces::SpaceSpec;

/// Residual bound under which `p` counts as a common fixed point.
pub const FIXED_POINT_TOL: f64 = 1e-10;

/// Half-width, in units of `ε`, of the box sampled around `p` when plain
/// rejection sampling finds too few ε-solutions.
pub const DENSIFY_RADIUS: f64 = 8.0;

/// Perturbation size schedules.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Decay<T> {
    /// `1/(n+1)`
    Inverse,
    /// `ratioⁿ`
    Geometric(T),
    Zero,
}

impl<T: Scalar> Decay<T> {
    pub fn at(&self, n: usize) -> T {
        match self {
            Decay::Inverse => T::one() / T::from_usize(n + 1).expect("index fits"),
            Decay::Geometric(r) => r.powi(n.min(i32::MAX as usize) as i32),
            Decay::Zero => T::zero(),
        }
    }
}

/// Direction of the perturbations `x_n = p ± δ_n u`.
#[derive(Clone, Debug, PartialEq)]
pub enum Perturbation<T> {
    /// `u` drawn once from the seed, scaled to max-coordinate 1.
    Random,
    /// Fixed `u`, used as given.
    Direction(Vec<T>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PerturbedSequence<T> {
    pub points: Vec<Point<T>>,
    /// `d(W(x_n, T x_n; λ), x_n)`
    pub t_residuals: Vec<T>,
    /// `d(x_n, W(x_n, S x_n; λ))`
    pub s_residuals: Vec<T>,
    /// Both residual sequences are nonincreasing from this index on.
    pub monotone_from: usize,
}

impl<T: Scalar> PerturbedSequence<T> {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Builds a sequence from explicit points, computing both residuals.
    pub fn from_points(
        space: &SpaceSpec<T>,
        pair: &MapPair<T>,
        lambda: T,
        points: Vec<Point<T>>,
    ) -> Result<Self> {
        check_lambda(lambda)?;
        let mut t_residuals = Vec::with_capacity(points.len());
        let mut s_residuals = Vec::with_capacity(points.len());
        for x in &points {
            space.check_point(x)?;
            t_residuals.push(space.dist(&averaged(space, &pair.t, lambda, x)?, x));
            s_residuals.push(space.dist(x, &averaged(space, &pair.s, lambda, x)?));
        }
        let monotone_from = monotone_start(&t_residuals).max(monotone_start(&s_residuals));
        Ok(Self {
            points,
            t_residuals,
            s_residuals,
            monotone_from,
        })
    }
}

fn monotone_start<T: Scalar>(v: &[T]) -> usize {
    let mut k = v.len().saturating_sub(1);
    while k > 0 && v[k - 1] >= v[k] {
        k -= 1;
    }
    k
}

fn require_common_fixed_point<T: Scalar>(
    space: &SpaceSpec<T>,
    pair: &MapPair<T>,
    p: &Point<T>,
) -> Result<()> {
    space.check_point(p)?;
    let (rt, rs) = pair.residuals(space, p)?;
    let tol = T::cast(FIXED_POINT_TOL);
    if rt <= tol && rs <= tol {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "{p} is not a common fixed point: d(p,Tp) = {rt}, d(p,Sp) = {rs}"
        )))
    }
}

/// Perturbations `x_n = p ± decay(n)·u` of a common fixed point `p`, clamped
/// to the domain box.
#[allow(clippy::too_many_arguments)]
pub fn make_asymptotic_sequence<T, F>(
    space: &SpaceSpec<T>,
    pair: &MapPair<T>,
    lambda: T,
    p: &Point<T>,
    decay: F,
    perturbation: &Perturbation<T>,
    n_terms: usize,
    seed: u64,
) -> Result<PerturbedSequence<T>>
where
    T: Scalar,
    F: Fn(usize) -> T,
{
    check_lambda(lambda)?;
    if n_terms == 0 {
        return Err(Error::Input("n_terms must be at least 1".into()));
    }
    require_common_fixed_point(space, pair, p)?;
    let dim = space.dimension();
    let direction: Vec<T> = match perturbation {
        Perturbation::Direction(u) => {
            if u.len() != dim || u.iter().any(|c| !c.is_finite()) {
                return Err(Error::Input(format!(
                    "perturbation direction must have {dim} finite coordinates"
                )));
            }
            u.clone()
        }
        Perturbation::Random => {
            let mut rng = sample_rng(seed, 0);
            let u: Vec<T> = (0..dim)
                .map(|_| T::cast(rng.gen_range(-1.0..=1.0)))
                .collect();
            let m = u.iter().fold(T::zero(), |m, c| m.max(c.abs()));
            if m > T::zero() {
                u.into_iter().map(|c| c / m).collect()
            } else {
                vec![T::one(); dim]
            }
        }
    };
    let points = (0..n_terms)
        .map(|n| {
            let delta = decay(n);
            let sign = if sample_rng(seed, n as u64 + 1).gen::<bool>() {
                T::one()
            } else {
                -T::one()
            };
            let raw = Point::raw(
                p.coords()
                    .iter()
                    .zip(&direction)
                    .map(|(c, u)| *c + sign * delta * *u)
                    .collect(),
            );
            space.domain().clamp(&raw)
        })
        .collect();
    PerturbedSequence::from_points(space, pair, lambda, points)
}

/// Per-term profile plus the verdict of a sequence probe.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbeReport<T> {
    pub status: Status,
    /// Why the probe was inconclusive, if it was.
    pub note: Option<String>,
    pub tail_start: usize,
    pub tail_max: T,
    /// Observations on the tail terms; margin is `bound - distance`.
    pub check: CheckReport<T>,
    /// Named per-term columns, e.g. distances and bounds.
    pub columns: Vec<(String, Vec<T>)>,
}

impl<T: Scalar> ProbeReport<T> {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// CSV table with a leading `n` column.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let io = |e: csv::Error| Error::Config(format!("writing probe table: {e}"));
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["n".to_string()];
        header.extend(self.columns.iter().map(|(name, _)| name.clone()));
        w.write_record(&header).map_err(io)?;
        let rows = self.columns.iter().map(|(_, c)| c.len()).max().unwrap_or(0);
        for n in 0..rows {
            let mut row = vec![n.to_string()];
            row.extend(
                self.columns
                    .iter()
                    .map(|(_, c)| c.get(n).map(|v| fmt_sci(*v)).unwrap_or_default()),
            );
            w.write_record(&row).map_err(io)?;
        }
        w.flush()
            .map_err(|e| Error::Config(format!("writing probe table: {e}")))
    }
}

fn tail_start(len: usize) -> usize {
    len - (len.div_ceil(10)).max(1)
}

fn precondition_note<T: Scalar>(seq: &PerturbedSequence<T>, tol: T) -> Option<String> {
    if seq.is_empty() {
        return Some("empty sequence".into());
    }
    let (t, s) = (
        *seq.t_residuals.last().expect("nonempty"),
        *seq.s_residuals.last().expect("nonempty"),
    );
    if t <= tol && s <= tol {
        None
    } else {
        Some(format!(
            "final residuals ({t}, {s}) exceed tol {tol}; extend the sequence"
        ))
    }
}

/// Contraction parameters used by the well-posedness bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InterpolativeParams<T> {
    pub a: T,
    pub alpha: T,
}

/// Checks `d(x_n, p) ≤ d(x_n, S_λx_n) + a [d(p, T_λp)]^α [d(x_n, S_λx_n)]^(1-α) + tol`
/// over the tail of `seq`.
#[allow(clippy::too_many_arguments)]
pub fn well_posedness_probe<T: Scalar>(
    space: &SpaceSpec<T>,
    pair: &MapPair<T>,
    lambda: T,
    p: &Point<T>,
    seq: &PerturbedSequence<T>,
    params: InterpolativeParams<T>,
    tol: T,
    seed: u64,
) -> Result<ProbeReport<T>> {
    check_lambda(lambda)?;
    space.check_point(p)?;
    let tp = averaged(space, &pair.t, lambda, p)?;
    let dp = space.dist(p, &tp);
    let distances: Vec<T> = seq.points.iter().map(|x| space.dist(x, p)).collect();
    let bounds: Vec<T> = seq
        .s_residuals
        .iter()
        .map(|&s| {
            let prod = if dp == T::zero() || s == T::zero() {
                T::zero()
            } else {
                dp.powf(params.alpha) * s.powf(T::one() - params.alpha)
            };
            s + params.a * prod
        })
        .collect();

    let mut check = CheckReport::new(seed, tol);
    let start = if seq.is_empty() {
        0
    } else {
        tail_start(seq.len())
    };
    let note = precondition_note(seq, tol);
    let mut tail_max = T::zero();
    if note.is_none() {
        for n in start..seq.len() {
            tail_max = tail_max.max(distances[n]);
            check.observe(distances[n], bounds[n], || {
                (
                    format!("well-posedness n={n}"),
                    vec![seq.points[n].clone()],
                    Some(lambda),
                )
            });
        }
    }
    let status = if note.is_some() {
        Status::Inconclusive
    } else {
        check.status()
    };
    Ok(ProbeReport {
        status,
        note,
        tail_start: start,
        tail_max,
        check,
        columns: vec![
            ("dist_to_p".into(), distances),
            ("bound".into(), bounds),
            ("t_residual".into(), seq.t_residuals.clone()),
            ("s_residual".into(), seq.s_residuals.clone()),
        ],
    })
}

/// Follows the orbits `T_λⁿz` and `S_λⁿz` alongside `seq` and passes when
/// both tail distances `d(T_λⁿz, x_n)` and `d(x_n, S_λⁿz)` are within `tol`.
pub fn limit_shadowing_probe<T: Scalar>(
    space: &SpaceSpec<T>,
    pair: &MapPair<T>,
    lambda: T,
    seq: &PerturbedSequence<T>,
    z: &Point<T>,
    tol: T,
    seed: u64,
) -> Result<ProbeReport<T>> {
    check_lambda(lambda)?;
    space.check_point(z)?;
    let orbit = |f: &crate::maps::SelfMap<T>| -> Result<Vec<Point<T>>> {
        let mut out = Vec::with_capacity(seq.len());
        let mut cur = z.clone();
        for n in 0..seq.len() {
            if n > 0 {
                cur = averaged(space, f, lambda, &cur)?;
                if !cur.is_finite() {
                    return Err(Error::Divergence(format!(
                        "orbit of {z} left the reals at step {n}"
                    )));
                }
            }
            out.push(cur.clone());
        }
        Ok(out)
    };
    let t_orbit = orbit(&pair.t)?;
    let s_orbit = orbit(&pair.s)?;
    let dt: Vec<T> = t_orbit
        .iter()
        .zip(&seq.points)
        .map(|(o, x)| space.dist(o, x))
        .collect();
    let ds: Vec<T> = seq
        .points
        .iter()
        .zip(&s_orbit)
        .map(|(x, o)| space.dist(x, o))
        .collect();

    let mut check = CheckReport::new(seed, tol);
    let start = if seq.is_empty() {
        0
    } else {
        tail_start(seq.len())
    };
    let note = precondition_note(seq, tol);
    let mut tail_max = T::zero();
    if note.is_none() {
        for n in start..seq.len() {
            let worst = dt[n].max(ds[n]);
            tail_max = tail_max.max(worst);
            check.observe(worst, T::zero(), || {
                (
                    format!("limit-shadowing n={n}"),
                    vec![
                        seq.points[n].clone(),
                        t_orbit[n].clone(),
                        s_orbit[n].clone(),
                    ],
                    Some(lambda),
                )
            });
        }
    }
    let status = if note.is_some() {
        Status::Inconclusive
    } else {
        check.status()
    };
    Ok(ProbeReport {
        status,
        note,
        tail_start: start,
        tail_max,
        check,
        columns: vec![("dist_t_orbit".into(), dt), ("dist_s_orbit".into(), ds)],
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct EpsilonResult<T> {
    pub epsilon: T,
    /// Number of ε-solutions found.
    pub accepted: usize,
    /// Largest `d(p, w*)/ε` over accepted samples; `None` when vacuous.
    pub worst_ratio: Option<T>,
    pub witness: Option<Point<T>>,
    /// Whether the box around `p` was sampled.
    pub densified: bool,
    /// An accepted sample sat near the edge of the densified box, so larger
    /// ratios may have been cut off.
    pub truncated: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct UlamHyersReport<T> {
    pub per_epsilon: Vec<EpsilonResult<T>>,
    /// Maximum worst ratio over non-vacuous ε.
    pub estimated_c: Option<T>,
    pub status: Status,
}

impl<T: Scalar> UlamHyersReport<T> {
    pub fn stable(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let io = |e: csv::Error| Error::Config(format!("writing ulam-hyers table: {e}"));
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "epsilon",
            "accepted",
            "worst_ratio",
            "densified",
            "truncated",
        ])
        .map_err(io)?;
        for r in &self.per_epsilon {
            w.write_record([
                fmt_sci(r.epsilon),
                r.accepted.to_string(),
                r.worst_ratio.map(fmt_sci).unwrap_or_default(),
                (r.densified as u8).to_string(),
                (r.truncated as u8).to_string(),
            ])
            .map_err(io)?;
        }
        w.flush()
            .map_err(|e| Error::Config(format!("writing ulam-hyers table: {e}")))
    }
}

struct Acceptance<T> {
    worst: Option<(T, Point<T>)>,
    accepted: usize,
    truncated: bool,
}

impl<T> Default for Acceptance<T> {
    fn default() -> Self {
        Self {
            worst: None,
            accepted: 0,
            truncated: false,
        }
    }
}

impl<T: Scalar> Acceptance<T> {
    #[allow(clippy::too_many_arguments)]
    fn visit(
        &mut self,
        space: &SpaceSpec<T>,
        pair: &MapPair<T>,
        lambda: T,
        p: &Point<T>,
        eps: T,
        w: Point<T>,
        edge: Option<T>,
    ) -> Result<()> {
        let images = averaged(space, &pair.t, lambda, &w)
            .and_then(|tw| Ok((tw, averaged(space, &pair.s, lambda, &w)?)));
        let (tw, sw) = match images {
            Ok(v) => v,
            Err(Error::Singularity(_)) => return Ok(()),
            Err(e) => return Err(e),
        };
        if space.dist(&w, &tw) > eps || space.dist(&w, &sw) > eps {
            return Ok(());
        }
        self.accepted += 1;
        if let Some(edge) = edge {
            let off = w
                .coords()
                .iter()
                .zip(p.coords())
                .fold(T::zero(), |m, (a, b)| m.max((*a - *b).abs()));
            if off >= edge {
                self.truncated = true;
            }
        }
        let ratio = space.dist(p, &w) / eps;
        if self.worst.as_ref().is_none_or(|(r, _)| ratio > *r) {
            self.worst = Some((ratio, w));
        }
        Ok(())
    }
}

/// Rejection-samples ε-solutions `w*` (both `d(w*, T_λw*) ≤ ε` and
/// `d(w*, S_λw*) ≤ ε`) and records the worst `d(p, w*)/ε` per `ε`.
///
/// The domain box is sampled first; when fewer than 1% of the draws are
/// accepted, a second pass samples the cube of half-width `8ε` around `p`.
pub fn ulam_hyers_probe<T: Scalar>(
    space: &SpaceSpec<T>,
    pair: &MapPair<T>,
    lambda: T,
    p: &Point<T>,
    epsilons: &[T],
    n_samples: usize,
    seed: u64,
) -> Result<UlamHyersReport<T>> {
    check_lambda(lambda)?;
    if n_samples == 0 {
        return Err(Error::Input("n_samples must be at least 1".into()));
    }
    if let Some(e) = epsilons
        .iter()
        .find(|e| !(**e > T::zero() && e.is_finite()))
    {
        return Err(Error::Input(format!("ε = {e} must be positive")));
    }
    require_common_fixed_point(space, pair, p)?;
    space.domain().ensure_nonempty()?;

    let min_accept = (n_samples / 100).max(1);
    let mut per_epsilon = Vec::with_capacity(epsilons.len());
    for &eps in epsilons {
        let mut acc = Acceptance::default();
        for i in 0..n_samples {
            let w = space.domain().sample(&mut sample_rng(seed, i as u64));
            acc.visit(space, pair, lambda, p, eps, w, None)?;
        }
        let densified = acc.accepted < min_accept;
        if densified {
            let radius = T::cast(DENSIFY_RADIUS) * eps;
            let near = space.domain().around(p, radius);
            let edge = T::cast(0.9) * radius;
            for i in 0..n_samples {
                let w = near.sample(&mut sample_rng(seed, (n_samples + i) as u64));
                acc.visit(space, pair, lambda, p, eps, w, Some(edge))?;
            }
        }
        let Acceptance {
            worst,
            accepted,
            truncated,
        } = acc;
        per_epsilon.push(EpsilonResult {
            epsilon: eps,
            accepted,
            worst_ratio: worst.as_ref().map(|(r, _)| *r),
            witness: worst.map(|(_, w)| w),
            densified,
            truncated,
        });
    }
    let estimated_c = per_epsilon
        .iter()
        .filter_map(|r| r.worst_ratio)
        .fold(None, |m: Option<T>, r| Some(m.map_or(r, |m| m.max(r))));
    let status = match estimated_c {
        None => Status::Inconclusive,
        Some(c) if c.is_finite() => Status::Pass,
        Some(_) => Status::Fail,
    };
    Ok(UlamHyersReport {
        per_epsilon,
        estimated_c,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[f64]) -> Point<f64> {
        Point::from_f64s(c).unwrap()
    }

    fn main_pair() -> (SpaceSpec<f64>, MapPair<f64>) {
        (
            SpaceSpec::builtin("r2-taxicab-diag").unwrap(),
            MapPair::builtin("paper-main-pair").unwrap(),
        )
    }

    fn diagonal_seq(n: usize) -> PerturbedSequence<f64> {
        let (space, pair) = main_pair();
        make_asymptotic_sequence(
            &space,
            &pair,
            0.5,
            &p(&[0.0, 0.0]),
            |n| Decay::Inverse.at(n),
            &Perturbation::Direction(vec![1.0, 1.0]),
            n,
            7,
        )
        .unwrap()
    }

    #[test]
    fn diagonal_sequence_residuals() {
        let seq = diagonal_seq(50);
        for (n, x) in seq.points.iter().enumerate() {
            let delta = 1.0 / (n as f64 + 1.0);
            assert_eq!(x.coords()[0], x.coords()[1]);
            assert!((x.coords()[0].abs() - delta).abs() < 1e-15);
            assert!((seq.t_residuals[n] - 2.0 * delta).abs() < 1e-15);
            assert!((seq.s_residuals[n] - 2.0 * delta).abs() < 1e-15);
        }
        assert_eq!(seq.monotone_from, 0);
    }

    #[test]
    fn zero_decay_is_constant() {
        let (space, pair) = main_pair();
        let seq = make_asymptotic_sequence(
            &space,
            &pair,
            0.5,
            &p(&[0.0, 0.0]),
            |n| Decay::Zero.at(n),
            &Perturbation::Random,
            20,
            1,
        )
        .unwrap();
        assert!(seq.points.iter().all(|x| *x == p(&[0.0, 0.0])));
        assert!(seq
            .t_residuals
            .iter()
            .chain(&seq.s_residuals)
            .all(|r| *r == 0.0));
    }

    #[test]
    fn one_minus_x_geometric_residuals() {
        let space = SpaceSpec::<f64>::builtin("r1-interval").unwrap();
        let pair = MapPair::<f64>::builtin("one-minus-x").unwrap();
        for lambda in [0.25, 0.5] {
            let seq = make_asymptotic_sequence(
                &space,
                &pair,
                lambda,
                &p(&[0.5]),
                |n| Decay::Geometric(0.5).at(n + 1),
                &Perturbation::Direction(vec![1.0]),
                30,
                3,
            )
            .unwrap();
            for (n, x) in seq.points.iter().enumerate() {
                // T_λx = λx + (1-λ)(1-x), so d(x, T_λx) = (1-λ)|2x - 1|
                let expect = (1.0 - lambda) * (2.0 * x.coords()[0] - 1.0).abs();
                assert!((seq.t_residuals[n] - expect).abs() < 1e-15);
                assert!((expect - (1.0 - lambda) * 2.0 * 0.5f64.powi(n as i32 + 1)).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn sequence_requires_common_fixed_point() {
        let (space, pair) = main_pair();
        let err = make_asymptotic_sequence(
            &space,
            &pair,
            0.5,
            &p(&[1.0, 1.0]),
            |n| Decay::Inverse.at(n),
            &Perturbation::Random,
            10,
            1,
        );
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn well_posedness_on_diagonal_sequence() {
        let (space, pair) = main_pair();
        let seq = diagonal_seq(200);
        let params = InterpolativeParams { a: 0.5, alpha: 0.5 };
        let r = well_posedness_probe(&space, &pair, 0.5, &p(&[0.0, 0.0]), &seq, params, 1e-2, 1)
            .unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.tail_start, 180);
        assert_eq!(r.check.checked, 20);

        let constant =
            PerturbedSequence::from_points(&space, &pair, 0.5, vec![p(&[0.0, 0.0]); 10]).unwrap();
        let r = well_posedness_probe(
            &space,
            &pair,
            0.5,
            &p(&[0.0, 0.0]),
            &constant,
            params,
            1e-6,
            1,
        )
        .unwrap();
        assert!(r.passed());
        assert_eq!(r.tail_max, 0.0);
    }

    #[test]
    fn well_posedness_short_sequence_is_inconclusive() {
        let (space, pair) = main_pair();
        let seq = diagonal_seq(10);
        let params = InterpolativeParams { a: 0.5, alpha: 0.5 };
        let r = well_posedness_probe(&space, &pair, 0.5, &p(&[0.0, 0.0]), &seq, params, 1e-2, 1)
            .unwrap();
        assert_eq!(r.status, Status::Inconclusive);
        assert!(r.note.is_some());
    }

    #[test]
    fn identity_pair_fails_well_posedness() {
        let space = SpaceSpec::<f64>::builtin("r2-euclidean").unwrap();
        let pair = MapPair::<f64>::builtin("identity").unwrap();
        let q = p(&[1.0, 1.0]);
        let seq = make_asymptotic_sequence(
            &space,
            &pair,
            0.5,
            &q,
            |n| Decay::Inverse.at(n),
            &Perturbation::Random,
            100,
            2,
        )
        .unwrap();
        let params = InterpolativeParams { a: 0.5, alpha: 0.5 };
        let r = well_posedness_probe(&space, &pair, 0.5, &p(&[0.0, 0.0]), &seq, params, 1e-3, 1)
            .unwrap();
        assert_eq!(r.status, Status::Fail);
    }

    #[test]
    fn shadowing_examples() {
        let (space, pair) = main_pair();
        let seq = diagonal_seq(1000);
        let r = limit_shadowing_probe(&space, &pair, 0.5, &seq, &p(&[7.0, 7.0]), 1e-2, 1).unwrap();
        assert!(r.passed(), "{r:?}");

        // z = p: distances equal d(x_n, p)
        let r = limit_shadowing_probe(&space, &pair, 0.5, &seq, &p(&[0.0, 0.0]), 1e-2, 1).unwrap();
        let d: Vec<f64> = seq
            .points
            .iter()
            .map(|x| space.dist(x, &p(&[0.0, 0.0])))
            .collect();
        assert_eq!(r.columns[0].1, d);

        let space = SpaceSpec::<f64>::builtin("r1-interval").unwrap();
        let pair = MapPair::<f64>::builtin("one-minus-x").unwrap();
        let pts = (0..40).map(|n| p(&[0.5 + 0.5f64.powi(n)])).collect();
        let seq = PerturbedSequence::from_points(&space, &pair, 0.5, pts).unwrap();
        let r = limit_shadowing_probe(&space, &pair, 0.5, &seq, &p(&[0.0]), 1e-6, 1).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn shadowing_divergence_is_an_error() {
        let space = SpaceSpec::<f64>::builtin("r1-interval").unwrap();
        let t = crate::maps::ExprMap::from_components(1, vec!["x1 / 0"]).unwrap();
        let pair = MapPair::from_expressions("bad", t.clone(), t).unwrap();
        let seq = PerturbedSequence {
            points: vec![p(&[0.5]); 5],
            t_residuals: vec![0.0; 5],
            s_residuals: vec![0.0; 5],
            monotone_from: 0,
        };
        let err = limit_shadowing_probe(&space, &pair, 0.5, &seq, &p(&[0.3]), 1e-3, 1);
        assert!(matches!(err, Err(Error::Divergence(_))));
    }

    /// Brute-force grid over the ε-solution set of the main pair.
    fn grid_worst_ratio(eps: f64) -> f64 {
        let (space, pair) = main_pair();
        let o = p(&[0.0, 0.0]);
        let steps = 400;
        let h = 4.0 * eps / steps as f64;
        let mut worst = 0.0f64;
        for i in -(steps as i64)..=steps as i64 {
            for j in -(steps as i64)..=steps as i64 {
                let w = p(&[i as f64 * h, j as f64 * h]);
                let tw = pair.t_avg(&space, 0.5, &w).unwrap();
                let sw = pair.s_avg(&space, 0.5, &w).unwrap();
                if space.dist(&w, &tw) <= eps && space.dist(&w, &sw) <= eps {
                    worst = worst.max(space.dist(&o, &w) / eps);
                }
            }
        }
        worst
    }

    #[test]
    fn ulam_hyers_on_main_pair() {
        let (space, pair) = main_pair();
        let oracle = grid_worst_ratio(0.1);
        assert!(oracle <= 2.0 + 1e-9 && oracle > 1.9, "grid oracle {oracle}");
        let r = ulam_hyers_probe(&space, &pair, 0.5, &p(&[0.0, 0.0]), &[0.1], 20_000, 5).unwrap();
        let c = r.estimated_c.unwrap();
        assert!(r.stable());
        assert!(c <= oracle + 1e-9, "sampled {c} exceeds grid sup {oracle}");
        assert!(c <= 4.0);
        assert!(r.per_epsilon[0].accepted > 0);
        assert!(!r.per_epsilon[0].truncated);
    }

    #[test]
    fn ulam_hyers_rejects_bad_inputs() {
        let (space, pair) = main_pair();
        assert!(ulam_hyers_probe(&space, &pair, 0.5, &p(&[0.0, 0.0]), &[0.0], 10, 1).is_err());
        assert!(matches!(
            ulam_hyers_probe(&space, &pair, 0.5, &p(&[1.0, 2.0]), &[0.1], 10, 1),
            Err(Error::Precondition(_))
        ));
    }
}
