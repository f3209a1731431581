use super::{MetricKind, RelationKind, SpaceSpec, StructureKind};
use crate::error::{Error, Result};
use crate::sampling::DomainBox;
use crate::scalar::Scalar;

/// Registry entry for a bundled space.
#[derive(Clone, Copy, Debug)]
pub struct SpaceInfo {
    pub name: &'static str,
    pub description: &'static str,
}

const SPACES: &[SpaceInfo] = &[
    SpaceInfo {
        name: "r1-interval",
        description: "[0,1] with |x-y|, affine structure, universal relation",
    },
    SpaceInfo {
        name: "r2-euclidean",
        description: "plane with Euclidean metric, affine structure, universal relation",
    },
    SpaceInfo {
        name: "r2-nonnormed",
        description:
            "plane with |x1-y1|+|x1x2-y1y2| and product-weighted structure; x1 in [0.1,10]",
    },
    SpaceInfo {
        name: "r2-order-piecewise",
        description: "plane with Euclidean/Chebyshev piecewise metric, componentwise <= relation",
    },
    SpaceInfo {
        name: "r2-taxicab-diag",
        description: "plane with taxicab metric, affine structure, x R y iff both on the diagonal",
    },
];

/// Bundled spaces in stable (alphabetical) order.
pub fn builtin_spaces() -> &'static [SpaceInfo] {
    SPACES
}

pub fn builtin_space_names() -> impl Iterator<Item = &'static str> {
    SPACES.iter().map(|s| s.name)
}

pub(super) fn lookup<T: Scalar>(name: &str) -> Result<SpaceSpec<T>> {
    let c = T::cast;
    let plane = || DomainBox::cube(2, c(-10.0), c(10.0));
    match name {
        "r1-interval" => SpaceSpec::new(
            name,
            MetricKind::Euclidean,
            StructureKind::Affine,
            RelationKind::Universal,
            DomainBox::cube(1, T::zero(), T::one())?,
        ),
        "r2-euclidean" => SpaceSpec::new(
            name,
            MetricKind::Euclidean,
            StructureKind::Affine,
            RelationKind::Universal,
            plane()?,
        ),
        "r2-nonnormed" => SpaceSpec::new(
            name,
            MetricKind::ProductTaxicab,
            StructureKind::ProductWeighted,
            RelationKind::Universal,
            DomainBox::new(vec![(c(0.1), c(10.0)), (c(-10.0), c(10.0))])?,
        ),
        "r2-order-piecewise" => SpaceSpec::new(
            name,
            MetricKind::OrderPiecewise { symmetric: true },
            StructureKind::Affine,
            RelationKind::ComponentwiseLe,
            plane()?,
        ),
        "r2-taxicab-diag" => SpaceSpec::new(
            name,
            MetricKind::Taxicab,
            StructureKind::Affine,
            RelationKind::Diagonal,
            plane()?,
        ),
        _ => Err(Error::Lookup {
            kind: "space",
            name: name.to_string(),
            known: builtin_space_names().map(String::from).collect(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_space_lists_known_names() {
        let err = lookup::<f64>("r3-mystery").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("r3-mystery"));
        assert!(msg.contains("r2-taxicab-diag"));
    }

    #[test]
    fn every_listed_space_resolves() {
        for name in builtin_space_names() {
            assert_eq!(lookup::<f64>(name).unwrap().name(), name);
        }
    }
}
