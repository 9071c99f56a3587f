//! Denominator certificates for vertices of integer half-space systems.
//!
//! For a system in `R^p` whose constraint entries are at least `-M` and whose
//! offsets are below `M` in absolute value, every vertex inside the window
//! `[eps, 1]^p` has coordinates whose common denominator is bounded by a
//! Hadamard-style constant depending only on `(p, M, eps)`. This module
//! computes that constant exactly and certifies vertex sets against it.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::polytope::{HPolytope, PolytopeError};
use crate::rat::{floor_sqrt, rat_big, strict_floor, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateError {
    /// The window parameter must satisfy `0 < eps < 1`.
    InvalidEpsilon,
    /// The entry bound `M` must be positive.
    InvalidEntryBound,
    /// Constraint `index` has a normal entry below `-M`.
    EntryBelowBound { index: usize },
    /// Constraint `index` has `|offset| >= M`.
    OffsetTooLarge { index: usize },
    Geometry(PolytopeError),
}

impl fmt::Display for CertificateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificateError::InvalidEpsilon => write!(f, "eps must lie strictly between 0 and 1"),
            CertificateError::InvalidEntryBound => write!(f, "entry bound must be positive"),
            CertificateError::EntryBelowBound { index } => {
                write!(f, "constraint {index} has an entry below -M")
            }
            CertificateError::OffsetTooLarge { index } => {
                write!(f, "constraint {index} has an offset of absolute value at least M")
            }
            CertificateError::Geometry(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for CertificateError {}

impl From<PolytopeError> for CertificateError {
    fn from(e: PolytopeError) -> Self {
        CertificateError::Geometry(e)
    }
}

/// The denominator bound itself.
///
/// Any constraint active at a window vertex pairs a normal entry in
/// `[-M, M p / eps)` against an offset below `M`, so the active matrix has
/// integer entries of absolute value at most the largest integer `B` strictly
/// below `M p / eps`. The vertex denominator divides that matrix's
/// determinant, which Hadamard bounds by `sqrt(p^p B^(2p))`.
pub fn vertex_denominator_bound(
    p: usize,
    m: &BigInt,
    eps: &Rational,
) -> Result<BigInt, CertificateError> {
    if !eps.is_positive() || *eps >= Rational::one() {
        return Err(CertificateError::InvalidEpsilon);
    }
    if !m.is_positive() {
        return Err(CertificateError::InvalidEntryBound);
    }
    let ratio = rat_big(m * BigInt::from(p)) / eps;
    let entry = strict_floor(&ratio).max(BigInt::one());
    let radicand = BigInt::from(p).pow(p as u32) * entry.pow(2 * p as u32);
    Ok(floor_sqrt(&radicand))
}

/// Largest integer a constraint entry can reach at a window vertex:
/// one below `M p / eps`.
pub fn entry_ceiling(p: usize, m: &BigInt, eps: &Rational) -> Result<BigInt, CertificateError> {
    if !eps.is_positive() || *eps >= Rational::one() {
        return Err(CertificateError::InvalidEpsilon);
    }
    if !m.is_positive() {
        return Err(CertificateError::InvalidEntryBound);
    }
    let ratio = rat_big(m * BigInt::from(p)) / eps;
    Ok(strict_floor(&ratio).max(BigInt::one()))
}

#[derive(Debug, Clone)]
pub struct VertexCertificate {
    pub vertex: Vec<Rational>,
    pub lcm_denominator: BigInt,
    /// All coordinates in `[eps, 1]`.
    pub in_window: bool,
    /// Denominator within the bound (only asserted for window vertices).
    pub within_bound: bool,
}

#[derive(Debug, Clone)]
pub struct DenominatorReport {
    pub dim: usize,
    pub entry_bound: BigInt,
    pub denominator_bound: BigInt,
    pub vertices: Vec<VertexCertificate>,
    /// Every window vertex is within the bound.
    pub all_certified: bool,
}

/// Enumerate the vertices of `h` and certify every one inside `[eps, 1]^p`
/// against the denominator bound for `(p, M, eps)`.
///
/// The hypotheses are validated first: each normal entry must be `>= -M` and
/// each offset `< M` in absolute value.
pub fn denominator_certificate(
    h: &HPolytope,
    m: &BigInt,
    eps: &Rational,
) -> Result<DenominatorReport, CertificateError> {
    let p = h.dim();
    let bound = vertex_denominator_bound(p, m, eps)?;
    let entry = entry_ceiling(p, m, eps)?;
    for (i, c) in h.constraints().iter().enumerate() {
        if c.normal.iter().any(|a| *a < -m) {
            return Err(CertificateError::EntryBelowBound { index: i });
        }
        if c.bound.abs() >= *m {
            return Err(CertificateError::OffsetTooLarge { index: i });
        }
    }
    let one = Rational::one();
    let mut vertices = Vec::new();
    let mut all_certified = true;
    for v in h.vertices()?.vertices() {
        let in_window = v.coords().iter().all(|c| c >= eps && *c <= one);
        let lcm = v.lcm_denominator();
        let within_bound = lcm <= bound;
        if in_window && !within_bound {
            all_certified = false;
        }
        vertices.push(VertexCertificate {
            vertex: v.coords().to_vec(),
            lcm_denominator: lcm,
            in_window,
            within_bound,
        });
    }
    Ok(DenominatorReport {
        dim: p,
        entry_bound: entry,
        denominator_bound: bound,
        vertices,
        all_certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::Constraint;
    use crate::rat::rat;
    use num_traits::Zero;

    #[test]
    fn bound_in_one_dimension_with_tight_window() {
        // p = 1, M = 1, eps = 1/2: entries below 2, so the bound is 1.
        let b = vertex_denominator_bound(1, &BigInt::one(), &rat(1, 2)).unwrap();
        assert_eq!(b, BigInt::from(1));
    }

    #[test]
    fn bound_in_one_dimension_with_wide_entries() {
        // p = 1, M = 2, eps = 1/4: entries up to 7, bound 7.
        let b = vertex_denominator_bound(1, &BigInt::from(2), &rat(1, 4)).unwrap();
        assert_eq!(b, BigInt::from(7));
        assert_eq!(
            entry_ceiling(1, &BigInt::from(2), &rat(1, 4)).unwrap(),
            BigInt::from(7)
        );
    }

    #[test]
    fn bound_in_two_dimensions() {
        // p = 2, M = 2, eps = 1/2: entries up to 7, bound sqrt(4 * 7^4) = 98.
        let b = vertex_denominator_bound(2, &BigInt::from(2), &rat(1, 2)).unwrap();
        assert_eq!(b, BigInt::from(98));
    }

    #[test]
    fn epsilon_and_entry_bound_are_validated() {
        assert_eq!(
            vertex_denominator_bound(1, &BigInt::one(), &rat(0, 1)),
            Err(CertificateError::InvalidEpsilon)
        );
        assert_eq!(
            vertex_denominator_bound(1, &BigInt::one(), &rat(1, 1)),
            Err(CertificateError::InvalidEpsilon)
        );
        assert_eq!(
            vertex_denominator_bound(1, &BigInt::zero(), &rat(1, 2)),
            Err(CertificateError::InvalidEntryBound)
        );
    }

    #[test]
    fn certificate_on_a_small_system() {
        // 2x + 3y >= 1 inside the unit square, M = 2, eps = 1/2. The only
        // window vertices are integral, so everything is certified; the
        // (0, 1/3) vertex sits outside the window.
        let h = HPolytope::new(
            2,
            vec![
                Constraint::from_ints(&[2, 3], 1),
                Constraint::from_ints(&[1, 0], 0),
                Constraint::from_ints(&[-1, 0], -1),
                Constraint::from_ints(&[0, -1], -1),
            ],
        )
        .unwrap();
        let report = denominator_certificate(&h, &BigInt::from(2), &rat(1, 2)).unwrap();
        assert!(report.all_certified);
        assert_eq!(report.denominator_bound, BigInt::from(98));
        let outside: Vec<_> = report
            .vertices
            .iter()
            .filter(|v| !v.in_window)
            .collect();
        assert!(outside.iter().any(|v| v.lcm_denominator == BigInt::from(3)));
        // Window vertices all have denominator 1 here.
        for v in report.vertices.iter().filter(|v| v.in_window) {
            assert_eq!(v.lcm_denominator, BigInt::one());
        }
    }

    #[test]
    fn hypothesis_violations_are_reported_with_indices() {
        let h = HPolytope::new(
            1,
            vec![
                Constraint::from_ints(&[-5], 0),
                Constraint::from_ints(&[1], 0),
            ],
        )
        .unwrap();
        assert_eq!(
            denominator_certificate(&h, &BigInt::from(2), &rat(1, 2)).unwrap_err(),
            CertificateError::EntryBelowBound { index: 0 }
        );
        let h2 = HPolytope::new(
            1,
            vec![
                Constraint::from_ints(&[1], -3),
                Constraint::from_ints(&[-1], -1),
            ],
        )
        .unwrap();
        assert_eq!(
            denominator_certificate(&h2, &BigInt::from(2), &rat(1, 2)).unwrap_err(),
            CertificateError::OffsetTooLarge { index: 0 }
        );
    }
}
