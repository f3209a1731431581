//! Self-map pairs `(T, S)`, the averaged operator `T_λ x = W(x, Tx; λ)`, and
//! sampled checkers for the contraction families.

mod contraction;

pub use contraction::{
    b_to_lambda, check_contraction, condition_residual, enriched_structure_weight,
    estimate_min_coefficient, ContractionSpec, Family, PairSampler, Residual,
};

use std::fmt;

use crate::error::{Error, Result};
use crate::expr::{Expr, Guard};
use crate::point::Point;
use crate::scalar::Scalar;
use crate::spaces::{SpaceSpec, StructureKind};

/// Natively implemented maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinMap {
    /// `(x1, 2x1 - x2)` off the diagonal, `-x` on it.
    DiagonalFlipT,
    /// `(6x2 - x1, 5x2)` off the diagonal, `-x` on it.
    DiagonalFlipS,
    OneMinusX,
    Negation,
    Identity,
}

impl BuiltinMap {
    fn apply<T: Scalar>(self, x: &[T]) -> Result<Vec<T>> {
        let two = T::cast(2.0);
        match self {
            BuiltinMap::DiagonalFlipT | BuiltinMap::DiagonalFlipS => {
                if x.len() != 2 {
                    return Err(Error::Input(format!(
                        "{self:?} is defined on the plane, got dimension {}",
                        x.len()
                    )));
                }
                let (x1, x2) = (x[0], x[1]);
                Ok(if x1 == x2 {
                    vec![-x1, -x2]
                } else if self == BuiltinMap::DiagonalFlipT {
                    vec![x1, two * x1 - x2]
                } else {
                    vec![T::cast(6.0) * x2 - x1, T::cast(5.0) * x2]
                })
            }
            BuiltinMap::OneMinusX => Ok(x.iter().map(|c| T::one() - *c).collect()),
            BuiltinMap::Negation => Ok(x.iter().map(|c| -*c).collect()),
            BuiltinMap::Identity => Ok(x.to_vec()),
        }
    }
}

/// One piece of a piecewise expression map.
#[derive(Clone, Debug, PartialEq)]
pub struct Branch {
    pub guard: Option<Guard>,
    pub components: Vec<Expr>,
}

/// A map whose components are expressions in `x1..xn`. Branches are tried in
/// order; the first whose guard holds (or that has no guard) applies.
#[derive(Clone, Debug, PartialEq)]
pub struct ExprMap {
    dim: usize,
    branches: Vec<Branch>,
}

impl ExprMap {
    /// Compiles `(guard, components)` source pairs for a space of dimension `dim`.
    pub fn compile<G, C>(dim: usize, branches: &[(Option<G>, Vec<C>)]) -> Result<Self>
    where
        G: AsRef<str>,
        C: AsRef<str>,
    {
        if branches.is_empty() {
            return Err(Error::Config(
                "expression map needs at least one branch".into(),
            ));
        }
        let mut out = Vec::with_capacity(branches.len());
        for (i, (guard, comps)) in branches.iter().enumerate() {
            if comps.len() != dim {
                return Err(Error::Config(format!(
                    "branch {} has {} components, space dimension is {dim}",
                    i + 1,
                    comps.len()
                )));
            }
            let guard = guard
                .as_ref()
                .map(|g| Guard::parse(g.as_ref()))
                .transpose()?;
            let components = comps
                .iter()
                .map(|c| Expr::parse(c.as_ref()))
                .collect::<Result<Vec<_>>>()?;
            let max_var = components
                .iter()
                .filter_map(Expr::max_var)
                .chain(guard.as_ref().and_then(Guard::max_var))
                .max();
            if let Some(v) = max_var {
                if v >= dim {
                    return Err(Error::Config(format!(
                        "branch {} references x{} but the space has dimension {dim}",
                        i + 1,
                        v + 1
                    )));
                }
            }
            out.push(Branch { guard, components });
        }
        Ok(Self { dim, branches: out })
    }

    /// Single unguarded branch.
    pub fn from_components<C: AsRef<str>>(dim: usize, comps: Vec<C>) -> Result<Self> {
        Self::compile::<&str, C>(dim, &[(None, comps)])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    fn apply<T: Scalar>(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.dim {
            return Err(Error::Input(format!(
                "expression map expects dimension {}, got {}",
                self.dim,
                x.len()
            )));
        }
        let branch = self
            .branches
            .iter()
            .find(|b| b.guard.as_ref().is_none_or(|g| g.holds(x)))
            .ok_or_else(|| Error::Input(format!("no branch guard holds at {x:?}")))?;
        Ok(branch.components.iter().map(|e| e.eval(x)).collect())
    }
}

impl fmt::Display for ExprMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.branches.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            if let Some(g) = &b.guard {
                write!(f, "if {g}: ")?;
            }
            write!(f, "[")?;
            for (j, c) in b.components.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// `x ↦ W(x, f(x); weight)` for a fixed structure.
#[derive(Clone, Debug, PartialEq)]
pub struct AveragedMap<T> {
    pub inner: SelfMap<T>,
    pub structure: StructureKind,
    pub weight: T,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SelfMap<T> {
    Builtin(BuiltinMap),
    Expression(ExprMap),
    Averaged(Box<AveragedMap<T>>),
}

impl<T: Scalar> SelfMap<T> {
    /// Image of `x`. The result may have non-finite coordinates if the map
    /// divides by zero; callers that iterate check [`Point::is_finite`].
    pub fn apply(&self, x: &Point<T>) -> Result<Point<T>> {
        match self {
            SelfMap::Builtin(b) => b.apply(x.coords()).map(Point::raw),
            SelfMap::Expression(e) => e.apply(x.coords()).map(Point::raw),
            SelfMap::Averaged(a) => {
                let fx = a.inner.apply(x)?;
                a.structure
                    .combine(x.coords(), fx.coords(), a.weight)
                    .map(Point::raw)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum PairSource {
    Builtin,
    Expressions { t: String, s: String },
    Averaged { lambda: f64 },
}

/// A pair of self-maps `(T, S)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MapPair<T> {
    pub name: String,
    pub t: SelfMap<T>,
    pub s: SelfMap<T>,
    pub source: PairSource,
}

/// Registry entry for a bundled pair.
#[derive(Clone, Copy, Debug)]
pub struct PairInfo {
    pub name: &'static str,
    pub home_space: &'static str,
    pub description: &'static str,
}

const PAIRS: &[PairInfo] = &[
    PairInfo {
        name: "identity",
        home_space: "r2-euclidean",
        description: "T = S = id; every point fixed (negative control)",
    },
    PairInfo {
        name: "negation",
        home_space: "r2-euclidean",
        description: "T = S = -x",
    },
    PairInfo {
        name: "one-minus-x",
        home_space: "r1-interval",
        description: "T = S = 1 - x on [0,1]",
    },
    PairInfo {
        name: "paper-main-pair",
        home_space: "r2-taxicab-diag",
        description: "diagonal-flip pair: T=(x1,2x1-x2), S=(6x2-x1,5x2) off D, both -x on D",
    },
];

pub fn builtin_pairs() -> &'static [PairInfo] {
    PAIRS
}

impl<T: Scalar> MapPair<T> {
    pub fn builtin(name: &str) -> Result<Self> {
        let (t, s) = match name {
            "paper-main-pair" => (BuiltinMap::DiagonalFlipT, BuiltinMap::DiagonalFlipS),
            "one-minus-x" => (BuiltinMap::OneMinusX, BuiltinMap::OneMinusX),
            "negation" => (BuiltinMap::Negation, BuiltinMap::Negation),
            "identity" => (BuiltinMap::Identity, BuiltinMap::Identity),
            _ => {
                return Err(Error::Lookup {
                    kind: "pair",
                    name: name.to_string(),
                    known: PAIRS.iter().map(|p| p.name.to_string()).collect(),
                })
            }
        };
        Ok(Self {
            name: name.to_string(),
            t: SelfMap::Builtin(t),
            s: SelfMap::Builtin(s),
            source: PairSource::Builtin,
        })
    }

    pub fn from_expressions(name: impl Into<String>, t: ExprMap, s: ExprMap) -> Result<Self> {
        if t.dim() != s.dim() {
            return Err(Error::Config(format!(
                "T has dimension {} but S has dimension {}",
                t.dim(),
                s.dim()
            )));
        }
        let source = PairSource::Expressions {
            t: t.to_string(),
            s: s.to_string(),
        };
        Ok(Self {
            name: name.into(),
            t: SelfMap::Expression(t),
            s: SelfMap::Expression(s),
            source,
        })
    }

    /// The pair `(T_λ, S_λ)` on `space`.
    pub fn averaged(&self, space: &SpaceSpec<T>, lambda: T) -> Result<Self> {
        check_lambda(lambda)?;
        let wrap = |m: &SelfMap<T>| {
            SelfMap::Averaged(Box::new(AveragedMap {
                inner: m.clone(),
                structure: space.structure(),
                weight: lambda,
            }))
        };
        Ok(Self {
            name: format!("{}-averaged", self.name),
            t: wrap(&self.t),
            s: wrap(&self.s),
            source: PairSource::Averaged {
                lambda: lambda.to_f64_lossy(),
            },
        })
    }

    /// `T_λ x`.
    pub fn t_avg(&self, space: &SpaceSpec<T>, lambda: T, x: &Point<T>) -> Result<Point<T>> {
        averaged(space, &self.t, lambda, x)
    }

    /// `S_λ x`.
    pub fn s_avg(&self, space: &SpaceSpec<T>, lambda: T, x: &Point<T>) -> Result<Point<T>> {
        averaged(space, &self.s, lambda, x)
    }

    /// `(d(p, Tp), d(p, Sp))`.
    pub fn residuals(&self, space: &SpaceSpec<T>, p: &Point<T>) -> Result<(T, T)> {
        let tp = self.t.apply(p)?;
        let sp = self.s.apply(p)?;
        Ok((space.dist(p, &tp), space.dist(p, &sp)))
    }
}

pub(crate) fn check_lambda<T: Scalar>(lambda: T) -> Result<()> {
    if lambda >= T::zero() && lambda < T::one() {
        Ok(())
    } else {
        Err(Error::Input(format!("λ must lie in [0,1), got {lambda}")))
    }
}

/// Unvalidated `W(x, f(x); λ)`.
pub(crate) fn averaged<T: Scalar>(
    space: &SpaceSpec<T>,
    f: &SelfMap<T>,
    lambda: T,
    x: &Point<T>,
) -> Result<Point<T>> {
    let fx = f.apply(x)?;
    space.combine(x, &fx, lambda)
}

/// `T_λ x = W(x, f(x); λ)` for `λ ∈ [0, 1)`.
pub fn averaged_map<T: Scalar>(
    space: &SpaceSpec<T>,
    f: &SelfMap<T>,
    lambda: T,
    x: &Point<T>,
) -> Result<Point<T>> {
    check_lambda(lambda)?;
    space.check_point(x)?;
    averaged(space, f, lambda, x)
}
