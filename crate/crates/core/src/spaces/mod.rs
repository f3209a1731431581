//! Convex metric spaces carrying a binary relation.
//!
//! A [`SpaceSpec`] bundles a metric, a convex structure `W`, a relation `R`
//! and a sampling box. Structures follow the orientation `W(x, y; 1) = x`:
//! the first argument carries weight `λ`.

mod checks;
mod registry;

pub use checks::{check_convexity_inequality, check_metric_axioms, check_relation_chain};
pub use registry::{builtin_space_names, builtin_spaces, SpaceInfo};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::Point;
use crate::sampling::DomainBox;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MetricKind {
    Euclidean,
    Taxicab,
    Chebyshev,
    /// `|x1 - y1| + |x1 x2 - y1 y2|` on the plane.
    ProductTaxicab,
    /// Euclidean between componentwise-comparable points, Chebyshev
    /// otherwise. `symmetric = false` only tests `a ≤ b`, which makes the
    /// distance asymmetric.
    OrderPiecewise {
        symmetric: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StructureKind {
    /// `λx + (1-λ)y`.
    Affine,
    /// Affine in the coordinates `(x1, x1 x2)`; needs positive first coordinates.
    ProductWeighted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationKind {
    /// `R = X × X`.
    Universal,
    /// `x R y` iff both points have all coordinates equal.
    Diagonal,
    /// `x R y` iff `x_i ≤ y_i` for every coordinate.
    ComponentwiseLe,
}

impl RelationKind {
    #[inline]
    pub fn holds<T: Scalar>(self, x: &[T], y: &[T]) -> bool {
        match self {
            RelationKind::Universal => true,
            RelationKind::Diagonal => on_diagonal(x) && on_diagonal(y),
            RelationKind::ComponentwiseLe => componentwise_le(x, y),
        }
    }

    /// All bundled relations are transitive, so chains reduce to
    /// consecutive pairs.
    pub fn is_transitive(self) -> bool {
        true
    }
}

#[inline]
fn on_diagonal<T: Scalar>(x: &[T]) -> bool {
    x.iter().all(|c| *c == x[0])
}

#[inline]
fn componentwise_le<T: Scalar>(x: &[T], y: &[T]) -> bool {
    x.iter().zip(y).all(|(a, b)| a <= b)
}

impl MetricKind {
    pub(crate) fn eval<T: Scalar>(self, x: &[T], y: &[T]) -> T {
        match self {
            MetricKind::Euclidean => euclidean(x, y),
            MetricKind::Taxicab => x
                .iter()
                .zip(y)
                .fold(T::zero(), |s, (a, b)| s + (*a - *b).abs()),
            MetricKind::Chebyshev => chebyshev(x, y),
            MetricKind::ProductTaxicab => (x[0] - y[0]).abs() + (x[0] * x[1] - y[0] * y[1]).abs(),
            MetricKind::OrderPiecewise { symmetric } => {
                let related = componentwise_le(x, y) || (symmetric && componentwise_le(y, x));
                if related {
                    euclidean(x, y)
                } else {
                    chebyshev(x, y)
                }
            }
        }
    }

    /// Norm of a vector when the metric is translation invariant and homogeneous.
    pub(crate) fn norm<T: Scalar>(self, v: &[T]) -> Option<T> {
        let zero = vec![T::zero(); v.len()];
        match self {
            MetricKind::Euclidean | MetricKind::Taxicab | MetricKind::Chebyshev => {
                Some(self.eval(v, &zero))
            }
            _ => None,
        }
    }

    fn required_dim(self) -> Option<usize> {
        match self {
            MetricKind::ProductTaxicab | MetricKind::OrderPiecewise { .. } => Some(2),
            _ => None,
        }
    }
}

fn euclidean<T: Scalar>(x: &[T], y: &[T]) -> T {
    x.iter()
        .zip(y)
        .fold(T::zero(), |s, (a, b)| s + (*a - *b) * (*a - *b))
        .sqrt()
}

fn chebyshev<T: Scalar>(x: &[T], y: &[T]) -> T {
    x.iter()
        .zip(y)
        .fold(T::zero(), |m, (a, b)| m.max((*a - *b).abs()))
}

impl StructureKind {
    pub(crate) fn combine<T: Scalar>(self, x: &[T], y: &[T], lambda: T) -> Result<Vec<T>> {
        let mu = T::one() - lambda;
        match self {
            StructureKind::Affine => Ok(x
                .iter()
                .zip(y)
                .map(|(a, b)| lambda * *a + mu * *b)
                .collect()),
            StructureKind::ProductWeighted => {
                if !(x[0] > T::zero() && y[0] > T::zero()) {
                    return Err(Error::Singularity(format!(
                        "product-weighted structure needs positive first coordinates, got {} and {}",
                        x[0], y[0]
                    )));
                }
                let first = lambda * x[0] + mu * y[0];
                if !(first > T::zero()) {
                    return Err(Error::Singularity(format!(
                        "weighted first coordinate {first} is not positive"
                    )));
                }
                if lambda == T::one() {
                    return Ok(x.to_vec());
                }
                if lambda == T::zero() {
                    return Ok(y.to_vec());
                }
                let second = (lambda * x[0] * x[1] + mu * y[0] * y[1]) / first;
                Ok(vec![first, second])
            }
        }
    }

    fn required_dim(self) -> Option<usize> {
        match self {
            StructureKind::ProductWeighted => Some(2),
            StructureKind::Affine => None,
        }
    }
}

/// A convex metric space with relation, addressable by name.
#[derive(Clone, Debug, PartialEq)]
pub struct SpaceSpec<T> {
    name: String,
    dimension: usize,
    metric: MetricKind,
    structure: StructureKind,
    relation: RelationKind,
    domain: DomainBox<T>,
}

impl<T: Scalar> SpaceSpec<T> {
    pub fn new(
        name: impl Into<String>,
        metric: MetricKind,
        structure: StructureKind,
        relation: RelationKind,
        domain: DomainBox<T>,
    ) -> Result<Self> {
        let dimension = domain.dim();
        for req in [metric.required_dim(), structure.required_dim()]
            .into_iter()
            .flatten()
        {
            if req != dimension {
                return Err(Error::Config(format!(
                    "{metric:?}/{structure:?} requires dimension {req}, domain has {dimension}"
                )));
            }
        }
        Ok(Self {
            name: name.into(),
            dimension,
            metric,
            structure,
            relation,
            domain,
        })
    }

    /// Looks up one of the bundled spaces.
    pub fn builtin(name: &str) -> Result<Self> {
        registry::lookup(name)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn metric(&self) -> MetricKind {
        self.metric
    }

    pub fn structure(&self) -> StructureKind {
        self.structure
    }

    pub fn relation(&self) -> RelationKind {
        self.relation
    }

    pub fn domain(&self) -> &DomainBox<T> {
        &self.domain
    }

    pub fn with_domain(mut self, domain: DomainBox<T>) -> Result<Self> {
        if domain.dim() != self.dimension {
            return Err(Error::Config(format!(
                "domain has dimension {}, space {} has {}",
                domain.dim(),
                self.name,
                self.dimension
            )));
        }
        self.domain = domain;
        Ok(self)
    }

    /// Switches the order-piecewise metric to its one-sided form.
    pub fn with_strict_paper_metric(mut self, strict: bool) -> Self {
        if let MetricKind::OrderPiecewise { .. } = self.metric {
            self.metric = MetricKind::OrderPiecewise { symmetric: !strict };
        }
        self
    }

    /// Linear spaces carry a norm compatible with an affine structure.
    pub fn is_linear(&self) -> bool {
        self.structure == StructureKind::Affine && self.metric.norm::<T>(&[T::zero()]).is_some()
    }

    pub fn check_point(&self, p: &Point<T>) -> Result<()> {
        if p.dim() != self.dimension {
            return Err(Error::Input(format!(
                "point {p} has dimension {}, space {} has {}",
                p.dim(),
                self.name,
                self.dimension
            )));
        }
        if !p.is_finite() {
            return Err(Error::Input(format!(
                "point {p} has non-finite coordinates"
            )));
        }
        Ok(())
    }

    /// `d(x, y)`.
    pub fn distance(&self, x: &Point<T>, y: &Point<T>) -> Result<T> {
        self.check_point(x)?;
        self.check_point(y)?;
        Ok(self.dist(x, y))
    }

    /// Unchecked distance for points already known to be well formed.
    #[inline]
    pub(crate) fn dist(&self, x: &Point<T>, y: &Point<T>) -> T {
        self.metric.eval(x.coords(), y.coords())
    }

    /// `W(x, y; λ)` with `λ ∈ [0, 1]`.
    pub fn convex_combine(&self, x: &Point<T>, y: &Point<T>, lambda: T) -> Result<Point<T>> {
        if !(lambda >= T::zero() && lambda <= T::one()) {
            return Err(Error::Input(format!("λ = {lambda} must lie in [0,1]")));
        }
        self.check_point(x)?;
        self.check_point(y)?;
        self.combine(x, y, lambda)
    }

    pub(crate) fn combine(&self, x: &Point<T>, y: &Point<T>, lambda: T) -> Result<Point<T>> {
        self.structure
            .combine(x.coords(), y.coords(), lambda)
            .map(Point::raw)
    }

    /// `x R y`.
    pub fn relate(&self, x: &Point<T>, y: &Point<T>) -> Result<bool> {
        self.check_point(x)?;
        self.check_point(y)?;
        Ok(self.related(x, y))
    }

    #[inline]
    pub(crate) fn related(&self, x: &Point<T>, y: &Point<T>) -> bool {
        self.relation.holds(x.coords(), y.coords())
    }

    /// `‖v‖` on linear spaces.
    pub fn norm(&self, v: &[T]) -> Result<T> {
        if !self.is_linear() {
            return Err(Error::Unsupported(format!(
                "space {} has no norm",
                self.name
            )));
        }
        self.metric
            .norm(v)
            .ok_or_else(|| Error::Unsupported(format!("space {} has no norm", self.name)))
    }

    /// Threshold under which a displacement `d(x, Tx)` counts as zero.
    pub fn fixed_threshold(&self) -> T {
        T::cast(1e-12) * (T::one() + self.domain.scale())
    }
}
