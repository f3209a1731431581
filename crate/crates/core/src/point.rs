use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A point of a finite-dimensional space, stored as its coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Point<T> {
    coords: Vec<T>,
}

impl<T: Scalar> Point<T> {
    /// Builds a point, rejecting empty or non-finite coordinate lists.
    pub fn new(coords: Vec<T>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Input(
                "point must have at least one coordinate".into(),
            ));
        }
        if let Some(i) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::Input(format!(
                "coordinate x{} is not finite ({})",
                i + 1,
                coords[i]
            )));
        }
        Ok(Self { coords })
    }

    pub fn from_slice(coords: &[T]) -> Result<Self> {
        Self::new(coords.to_vec())
    }

    /// Builds a point from `f64` literals, converting to `T`.
    pub fn from_f64s(coords: &[f64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| T::cast(c)).collect())
    }

    /// Wraps raw map output without validation. Callers check
    /// [`Point::is_finite`] where divergence matters.
    pub(crate) fn raw(coords: Vec<T>) -> Self {
        Self { coords }
    }

    pub fn origin(dim: usize) -> Self {
        Self::raw(vec![T::zero(); dim])
    }

    #[inline]
    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|c| c.is_finite())
    }

    pub fn into_coords(self) -> Vec<T> {
        self.coords
    }
}

impl<T: Scalar> fmt::Display for Point<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_finite() {
        assert!(Point::<f64>::new(vec![1.0, f64::NAN]).is_err());
        assert!(Point::<f64>::new(vec![f64::INFINITY]).is_err());
        assert!(Point::<f64>::new(vec![]).is_err());
    }

    #[test]
    fn display() {
        let p = Point::<f64>::from_f64s(&[1.0, -2.5]).unwrap();
        assert_eq!(p.to_string(), "(1, -2.5)");
    }
}
