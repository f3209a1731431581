//! Alternating averaged iteration for a pair `(T, S)`:
//!
//! ```text
//! x_{2n+1} = W(x_{2n},   T x_{2n};   λ)
//! x_{2n+2} = W(x_{2n+1}, S x_{2n+1}; λ)
//! ```
//!
//! together with the a-priori bound `aⁿ/(1-a) · d(x₀, x₁)` on `d(xₙ, xₙ₊ᵣ)`.

use std::io::Write;

use crate::error::{Error, Result};
use crate::maps::{averaged, check_lambda, MapPair, PairSampler};
use crate::point::Point;
use crate::report::CheckReport;
use crate::sampling::sample_rng;
use crate::scalar::Scalar;
use crate::spaces::{check_relation_chain, SpaceSpec};

pub const DEFAULT_MAX_ITERS: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct SolveOptions<T> {
    pub lambda: T,
    pub tol: T,
    pub max_iters: usize,
    /// Contraction constant, if known. Enables the bound column and
    /// a-priori stopping.
    pub a_hint: Option<T>,
}

impl<T: Scalar> SolveOptions<T> {
    pub fn new(lambda: T, tol: T) -> Self {
        Self {
            lambda,
            tol,
            max_iters: DEFAULT_MAX_ITERS,
            a_hint: None,
        }
    }

    pub fn max_iters(mut self, n: usize) -> Self {
        self.max_iters = n;
        self
    }

    pub fn a_hint(mut self, a: T) -> Self {
        self.a_hint = Some(a);
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_lambda(self.lambda)?;
        if !(self.tol > T::zero() && self.tol.is_finite()) {
            return Err(Error::Input(format!("tol = {} must be positive", self.tol)));
        }
        if self.max_iters == 0 {
            return Err(Error::Input("max_iters must be at least 1".into()));
        }
        if let Some(a) = self.a_hint {
            check_unit(a)?;
        }
        Ok(())
    }

    /// Residual allowance `tol / (1 - λ)`: a step of size `tol` under `T_λ`
    /// corresponds to a displacement `d(x, Tx)` of about `tol / (1 - λ)`.
    pub fn residual_tol(&self) -> T {
        self.tol / (T::one() - self.lambda)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum StopReason {
    /// Two consecutive steps (one under each map) within `tol` and both
    /// residuals within the allowance.
    Converged,
    /// The a-priori bound dropped below `tol`.
    APriori,
    MaxIters,
    /// Non-finite iterate.
    Diverged(String),
    /// The convex structure was undefined at an iterate.
    Singular(String),
}

impl StopReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            StopReason::Converged => "converged",
            StopReason::APriori => "a-priori",
            StopReason::MaxIters => "max-iters",
            StopReason::Diverged(_) => "diverged",
            StopReason::Singular(_) => "singular",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IterationTrace<T> {
    pub points: Vec<Point<T>>,
    /// `d(xₙ, xₙ₊₁)`, one shorter than `points`.
    pub step_dist: Vec<T>,
    /// `aⁿ/(1-a) · d(x₀, x₁)` per point when `a_hint` was given.
    pub bound: Option<Vec<T>>,
    pub relation_ok: bool,
    pub converged: bool,
    /// `(d(x_N, T x_N), d(x_N, S x_N))`.
    pub residuals_at_last: (T, T),
    pub stop: StopReason,
}

impl<T: Scalar> IterationTrace<T> {
    pub fn last(&self) -> &Point<T> {
        self.points.last().expect("trace holds x0")
    }

    pub fn iterations(&self) -> usize {
        self.points.len() - 1
    }

    /// Whether `points[0..=n]` is an R-chain, for each `n`.
    pub fn chain_prefix_flags(&self, space: &SpaceSpec<T>) -> Vec<bool> {
        let mut ok = true;
        let mut flags = Vec::with_capacity(self.points.len());
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                ok = ok && space.related(&self.points[i - 1], p);
            }
            flags.push(ok);
        }
        flags
    }

    /// CSV export: `n, x1..xd, step_dist, bound, relation_flag`. Numbers use
    /// 17 significant digits; absent values are empty cells.
    pub fn write_csv<W: Write>(&self, space: &SpaceSpec<T>, out: W) -> Result<()> {
        let dim = self.points.first().map_or(0, Point::dim);
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["n".to_string()];
        header.extend((1..=dim).map(|i| format!("x{i}")));
        header.extend(["step_dist", "bound", "relation_flag"].map(String::from));
        let io = |e: csv::Error| Error::Config(format!("writing trace: {e}"));
        w.write_record(&header).map_err(io)?;
        let flags = self.chain_prefix_flags(space);
        for (n, p) in self.points.iter().enumerate() {
            let mut row = vec![n.to_string()];
            row.extend(p.coords().iter().map(|c| fmt_sci(*c)));
            row.push(
                self.step_dist
                    .get(n)
                    .map(|d| fmt_sci(*d))
                    .unwrap_or_default(),
            );
            row.push(
                self.bound
                    .as_ref()
                    .map(|b| fmt_sci(b[n]))
                    .unwrap_or_default(),
            );
            row.push(if flags[n] { "1" } else { "0" }.to_string());
            w.write_record(&row).map_err(io)?;
        }
        w.flush()
            .map_err(|e| Error::Config(format!("writing trace: {e}")))?;
        Ok(())
    }
}

/// Decimal with 17 significant digits.
pub fn fmt_sci<T: Scalar>(v: T) -> String {
    let v = v.to_f64_lossy();
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "nan".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn check_unit<T: Scalar>(a: T) -> Result<()> {
    if a >= T::zero() && a < T::one() {
        Ok(())
    } else {
        Err(Error::Input(format!("a = {a} must lie in [0,1)")))
    }
}

/// `aⁿ · d01 / (1 - a)`.
pub fn a_priori_bound<T: Scalar>(a: T, n: usize, d01: T) -> Result<T> {
    check_unit(a)?;
    if !(d01 >= T::zero()) {
        return Err(Error::Input(format!("d01 = {d01} must be nonnegative")));
    }
    Ok(bound_unchecked(a, n, d01))
}

fn bound_unchecked<T: Scalar>(a: T, n: usize, d01: T) -> T {
    if d01 == T::zero() {
        return T::zero();
    }
    let pow = if n > i32::MAX as usize {
        T::zero()
    } else {
        a.powi(n as i32)
    };
    pow * d01 / (T::one() - a)
}

/// Smallest `n` with `a_priori_bound(a, n, d01) ≤ tol`.
pub fn stop_index<T: Scalar>(a: T, d01: T, tol: T) -> Result<usize> {
    check_unit(a)?;
    if !(tol > T::zero()) {
        return Err(Error::Input(format!("tol = {tol} must be positive")));
    }
    if !(d01 >= T::zero() && d01.is_finite()) {
        return Err(Error::Input(format!(
            "d01 = {d01} must be finite and nonnegative"
        )));
    }
    if bound_unchecked(a, 0, d01) <= tol {
        return Ok(0);
    }
    if a == T::zero() {
        return Ok(1);
    }
    // log estimate, then settle on the exact boundary
    let est = ((tol * (T::one() - a) / d01).ln() / a.ln()).ceil();
    let mut n = est.to_usize().unwrap_or(1).max(1);
    while n > 1 && bound_unchecked(a, n - 1, d01) <= tol {
        n -= 1;
    }
    while bound_unchecked(a, n, d01) > tol {
        n += 1;
    }
    Ok(n)
}

/// Runs the alternating averaged iteration from `x0`. Runtime failures
/// (divergence, singular structure) end the trace with a matching
/// [`StopReason`]; only invalid arguments return `Err`.
pub fn iterate_pair<T: Scalar>(
    space: &SpaceSpec<T>,
    pair: &MapPair<T>,
    x0: &Point<T>,
    opts: &SolveOptions<T>,
) -> Result<IterationTrace<T>> {
    opts.validate()?;
    space.check_point(x0)?;
    let lambda = opts.lambda;
    let res_tol = opts.residual_tol();

    let mut points = vec![x0.clone()];
    let mut step_dist: Vec<T> = Vec::new();
    let mut a_priori_n: Option<usize> = None;
    let mut stop = StopReason::MaxIters;
    let mut converged = false;
    let mut residuals = (T::nan(), T::nan());

    let residuals_of = |p: &Point<T>| -> Result<(T, T)> { pair.residuals(space, p) };

    for n in 0..opts.max_iters {
        let cur = points.last().expect("nonempty");
        let map = if n % 2 == 0 { &pair.t } else { &pair.s };
        let next = match averaged(space, map, lambda, cur) {
            Ok(p) => p,
            Err(Error::Singularity(msg)) => {
                stop = StopReason::Singular(msg);
                break;
            }
            Err(e) => return Err(e),
        };
        if !next.is_finite() {
            stop = StopReason::Diverged(format!("iterate {} is not finite: {next}", n + 1));
            break;
        }
        let step = space.dist(cur, &next);
        step_dist.push(step);
        points.push(next);

        if n == 0 {
            if let Some(a) = opts.a_hint {
                a_priori_n = Some(stop_index(a, step, opts.tol)?);
            }
        }

        let last = points.last().expect("nonempty");
        let two_small =
            step_dist.len() >= 2 && step_dist[step_dist.len() - 2] <= opts.tol && step <= opts.tol;
        let a_priori_done = a_priori_n.is_some_and(|k| points.len() > k.max(2));
        if two_small || a_priori_done {
            let r = residuals_of(last)?;
            if r.0 <= res_tol && r.1 <= res_tol {
                residuals = r;
                converged = true;
                stop = if two_small {
                    StopReason::Converged
                } else {
                    StopReason::APriori
                };
                break;
            }
            if a_priori_done && !two_small {
                residuals = r;
                stop = StopReason::APriori;
                break;
            }
        }
    }

    if residuals.0.is_nan() {
        let last = points.last().expect("nonempty");
        residuals = residuals_of(last).unwrap_or((T::nan(), T::nan()));
    }
    let bound = match (opts.a_hint, step_dist.first()) {
        (Some(a), Some(&d01)) => Some(
            (0..points.len())
                .map(|n| bound_unchecked(a, n, d01))
                .collect(),
        ),
        (Some(_), None) => Some(vec![T::zero(); points.len()]),
        _ => None,
    };
    let relation_ok = check_relation_chain(space, &points);
    Ok(IterationTrace {
        points,
        step_dist,
        bound,
        relation_ok,
        converged,
        residuals_at_last: residuals,
        stop,
    })
}

/// Outcome of the hypothesis checks for one starting point.
#[derive(Clone, Debug, PartialEq)]
pub struct HypothesisReport<T> {
    /// `x₀ R W(x₀, T x₀; λ)`.
    pub initial_related: bool,
    /// Sampled check that related pairs keep a related averaged image.
    pub closure: CheckReport<T>,
}

impl<T: Scalar> HypothesisReport<T> {
    pub fn passed(&self) -> bool {
        self.initial_related && self.closure.violations == 0
    }
}

/// Checks `x₀ R T_λx₀` and, on sampled related pairs `x R y`, that
/// `T_λx R S_λy` or `S_λx R T_λy`.
pub fn verify_hypotheses<T: Scalar>(
    space: &SpaceSpec<T>,
    pair: &MapPair<T>,
    lambda: T,
    x0: &Point<T>,
    n_samples: usize,
    seed: u64,
) -> Result<HypothesisReport<T>> {
    check_lambda(lambda)?;
    space.check_point(x0)?;
    if n_samples == 0 {
        return Err(Error::Input("n_samples must be at least 1".into()));
    }
    space.domain().ensure_nonempty()?;
    let x1 = averaged(space, &pair.t, lambda, x0)?;
    let initial_related = space.related(x0, &x1);

    let mut closure = CheckReport::new(seed, T::zero());
    for i in 0..n_samples {
        let mut rng = sample_rng(seed, i as u64);
        let Some((x, y)) = PairSampler::Related.draw(space, &mut rng) else {
            closure.skip();
            continue;
        };
        let tx = averaged(space, &pair.t, lambda, &x)?;
        let sy = averaged(space, &pair.s, lambda, &y)?;
        let ok = space.related(&tx, &sy) || {
            let sx = averaged(space, &pair.s, lambda, &x)?;
            let ty = averaged(space, &pair.t, lambda, &y)?;
            space.related(&sx, &ty)
        };
        // indicator margin: 0 when the relation is preserved, -1 otherwise
        let lhs = if ok { T::zero() } else { T::one() };
        closure.observe(lhs, T::zero(), || {
            (
                "relation-closure".into(),
                vec![x.clone(), y.clone()],
                Some(lambda),
            )
        });
    }
    Ok(HypothesisReport {
        initial_related,
        closure,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum UniquenessStatus {
    /// All limits lie within `10·tol` of each other.
    Consistent,
    Inconsistent,
    /// Some starts did not converge; their indices are listed.
    Inconclusive(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct UniquenessReport<T> {
    pub limits: Vec<Point<T>>,
    pub converged: Vec<bool>,
    pub max_pairwise: T,
    pub status: UniquenessStatus,
}

/// Solves from every start and compares the limits.
pub fn uniqueness_probe<T: Scalar>(
    space: &SpaceSpec<T>,
    pair: &MapPair<T>,
    opts: &SolveOptions<T>,
    starts: &[Point<T>],
) -> Result<UniquenessReport<T>> {
    if starts.len() < 2 {
        return Err(Error::Input(
            "uniqueness probe needs at least two starts".into(),
        ));
    }
    let traces = starts
        .iter()
        .map(|s| iterate_pair(space, pair, s, opts))
        .collect::<Result<Vec<_>>>()?;
    let limits: Vec<Point<T>> = traces.iter().map(|t| t.last().clone()).collect();
    let converged: Vec<bool> = traces.iter().map(|t| t.converged).collect();
    let mut max_pairwise = T::zero();
    for i in 0..limits.len() {
        for j in i + 1..limits.len() {
            max_pairwise = max_pairwise.max(space.dist(&limits[i], &limits[j]));
        }
    }
    let failed: Vec<usize> = converged
        .iter()
        .enumerate()
        .filter(|(_, c)| !**c)
        .map(|(i, _)| i)
        .collect();
    let status = if !failed.is_empty() {
        UniquenessStatus::Inconclusive(failed)
    } else if max_pairwise <= T::cast(10.0) * opts.tol {
        UniquenessStatus::Consistent
    } else {
        UniquenessStatus::Inconsistent
    };
    Ok(UniquenessReport {
        limits,
        converged,
        max_pairwise,
        status,
    })
}
