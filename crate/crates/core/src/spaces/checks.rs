//! Sampled verifiers for the metric and convexity axioms.

use rand::Rng;

use super::SpaceSpec;
use crate::error::{Error, Result};
use crate::point::Point;
use crate::report::CheckReport;
use crate::sampling::sample_rng;
use crate::scalar::Scalar;

fn require_samples(n_samples: usize) -> Result<()> {
    if n_samples == 0 {
        return Err(Error::Input("n_samples must be at least 1".into()));
    }
    Ok(())
}

/// Samples triples from the domain box and checks nonnegativity, `d(x,x) = 0`,
/// symmetry and the triangle inequality, each within `tol`.
pub fn check_metric_axioms<T: Scalar>(
    space: &SpaceSpec<T>,
    n_samples: usize,
    tol: T,
    seed: u64,
) -> Result<CheckReport<T>> {
    require_samples(n_samples)?;
    space.domain().ensure_nonempty()?;
    let mut report = CheckReport::new(seed, tol);
    for i in 0..n_samples {
        let mut rng = sample_rng(seed, i as u64);
        let x = space.domain().sample(&mut rng);
        let y = space.domain().sample(&mut rng);
        let z = space.domain().sample(&mut rng);

        let dxy = space.dist(&x, &y);
        let dyx = space.dist(&y, &x);
        let dyz = space.dist(&y, &z);
        let dxz = space.dist(&x, &z);

        report.observe(T::zero(), dxy, || {
            ("nonnegativity".into(), vec![x.clone(), y.clone()], None)
        });
        report.observe(space.dist(&x, &x), T::zero(), || {
            ("identity".into(), vec![x.clone()], None)
        });
        report.observe((dxy - dyx).abs(), T::zero(), || {
            ("symmetry".into(), vec![x.clone(), y.clone()], None)
        });
        report.observe(dxz, dxy + dyz, || {
            (
                "triangle".into(),
                vec![x.clone(), y.clone(), z.clone()],
                None,
            )
        });
    }
    Ok(report)
}

/// Checks `d(u, W(x,y;λ)) ≤ λ d(u,x) + (1-λ) d(u,y)` on sampled triples with
/// `λ ∈ {0, 0.5, 1}` plus one uniform draw per sample. Singular combinations
/// are counted as skipped.
pub fn check_convexity_inequality<T: Scalar>(
    space: &SpaceSpec<T>,
    n_samples: usize,
    tol: T,
    seed: u64,
) -> Result<CheckReport<T>> {
    require_samples(n_samples)?;
    space.domain().ensure_nonempty()?;
    let mut report = CheckReport::new(seed, tol);
    let half = T::cast(0.5);
    for i in 0..n_samples {
        let mut rng = sample_rng(seed, i as u64);
        let u = space.domain().sample(&mut rng);
        let x = space.domain().sample(&mut rng);
        let y = space.domain().sample(&mut rng);
        let drawn = T::cast(rng.gen::<f64>());
        let dux = space.dist(&u, &x);
        let duy = space.dist(&u, &y);
        for lambda in [T::zero(), half, T::one(), drawn] {
            match space.combine(&x, &y, lambda) {
                Ok(w) => {
                    let rhs = lambda * dux + (T::one() - lambda) * duy;
                    report.observe(space.dist(&u, &w), rhs, || {
                        (
                            "convexity".into(),
                            vec![u.clone(), x.clone(), y.clone()],
                            Some(lambda),
                        )
                    });
                }
                Err(Error::Singularity(_)) => report.skip(),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(report)
}

/// True iff `points[i] R points[j]` for every `i < j`.
pub fn check_relation_chain<T: Scalar>(space: &SpaceSpec<T>, points: &[Point<T>]) -> bool {
    if space.relation().is_transitive() {
        points.windows(2).all(|w| space.related(&w[0], &w[1]))
    } else {
        points
            .iter()
            .enumerate()
            .all(|(i, a)| points[i + 1..].iter().all(|b| space.related(a, b)))
    }
}
