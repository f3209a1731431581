//! Outcome of sampled verifications.

use crate::point::Point;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// No applicable samples were seen, so nothing was verified.
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        }
    }
}

/// The sample that produced the worst margin.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness<T> {
    /// Which inequality or axiom was being checked.
    pub check: String,
    pub points: Vec<Point<T>>,
    pub lambda: Option<T>,
    pub lhs: T,
    pub rhs: T,
}

/// Aggregate of a sampled inequality check. Margins are `rhs - lhs`, so a
/// negative margin is a violation once it drops below `-tolerance`.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport<T> {
    pub checked: usize,
    pub violations: usize,
    pub skipped: usize,
    pub worst_margin: T,
    pub witness: Option<Witness<T>>,
    pub seed: u64,
    pub tolerance: T,
}

impl<T: Scalar> CheckReport<T> {
    pub fn new(seed: u64, tolerance: T) -> Self {
        Self {
            checked: 0,
            violations: 0,
            skipped: 0,
            worst_margin: T::infinity(),
            witness: None,
            seed,
            tolerance,
        }
    }

    /// Records one evaluated inequality. The witness closure runs only when
    /// the sample becomes the new worst.
    pub fn observe<F>(&mut self, lhs: T, rhs: T, witness: F)
    where
        F: FnOnce() -> (String, Vec<Point<T>>, Option<T>),
    {
        let margin = rhs - lhs;
        self.checked += 1;
        // NaN margins count as violations.
        let violated = !(margin >= -self.tolerance);
        if violated {
            self.violations += 1;
        }
        if violated && margin.is_nan() || margin < self.worst_margin || self.witness.is_none() {
            let (check, points, lambda) = witness();
            self.worst_margin = if margin.is_nan() {
                T::neg_infinity()
            } else {
                margin
            };
            self.witness = Some(Witness {
                check,
                points,
                lambda,
                lhs,
                rhs,
            });
        }
    }

    pub fn skip(&mut self) {
        self.skipped += 1;
    }

    pub fn status(&self) -> Status {
        if self.checked == 0 {
            Status::Inconclusive
        } else if self.violations > 0 {
            Status::Fail
        } else {
            Status::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.status() == Status::Pass
    }
}
