//! A small corpus of exactly-checked surface models used across tests and
//! the command-line suite.

use alloc::format;
use alloc::vec;

use crate::linalg::{QMatrix, QVector};
use crate::rat::{rat_int, Rational};
use crate::snc::SncConfig;
use crate::surface::{Curve, PairConfig, SurfaceModel};

/// The projective plane with one line tracked.
pub fn projective_plane() -> SurfaceModel {
    SurfaceModel::new(
        QMatrix::from_int_rows(&[&[1]]),
        QVector::from_ints(&[-3]),
        vec![Curve::new("H", QVector::from_ints(&[1]), true)],
        1,
        true,
        true,
    )
    .expect("fixture is valid")
}

/// The plane blown up at one point, tracking the exceptional curve E and the
/// strict transform L of lines through the point. L is the 0-curve that
/// witnesses non-pseudoeffective verdicts.
pub fn blown_projective_plane() -> SurfaceModel {
    SurfaceModel::new(
        QMatrix::from_int_rows(&[&[1, 0], &[0, -1]]),
        QVector::from_ints(&[-3, 1]),
        vec![
            Curve::new("L", QVector::from_ints(&[1, -1]), true),
            Curve::new("E", QVector::from_ints(&[0, 1]), true),
        ],
        1,
        true,
        true,
    )
    .expect("fixture is valid")
}

/// Rank-2 general type model: basis (A, E) with A*A = 2 and E exceptional,
/// K = A + E, and a steep irreducible curve S = s(A - E) with S*E = s. The
/// base locus of K + tS flips at t = 1/s.
pub fn example_one(s: i64) -> SurfaceModel {
    SurfaceModel::new(
        QMatrix::from_int_rows(&[&[2, 0], &[0, -1]]),
        QVector::from_ints(&[1, 1]),
        vec![
            Curve::new("S", QVector::from_ints(&[s, -s]), false),
            Curve::new("E", QVector::from_ints(&[0, 1]), true),
        ],
        1,
        false,
        false,
    )
    .expect("fixture is valid")
}

/// Pair on [`example_one`] with boundary d1*S + d2*E.
pub fn example_one_pair(s: i64, d1: Rational, d2: Rational) -> PairConfig {
    PairConfig::new(example_one(s), &[("S", d1), ("E", d2)]).expect("fixture is valid")
}

/// The Hirzebruch surface of degree s: basis (f, E) with f a fiber and E the
/// negative section, plus an irreducible member H of four times the nef class
/// s*f + E. The base locus of K + H/2 + tE flips at t = 1 - 2/s.
pub fn hirzebruch(s: i64) -> SurfaceModel {
    SurfaceModel::new(
        QMatrix::from_rows(&[
            QVector::from_ints(&[0, 1]),
            QVector::new(vec![rat_int(1), rat_int(-s)]),
        ]),
        QVector::new(vec![rat_int(-(s + 2)), rat_int(-2)]),
        vec![
            Curve::new("f", QVector::from_ints(&[1, 0]), true),
            Curve::new("E", QVector::from_ints(&[0, 1]), true),
            Curve::new(
                "H",
                QVector::new(vec![rat_int(4 * s), rat_int(4)]),
                false,
            ),
        ],
        1,
        true,
        true,
    )
    .expect("fixture is valid")
}

/// Ruled surface over a genus-2 curve, blown up at one point on each of `r`
/// distinct fibers. Tracks the section B, the r strict-transform fibers, and
/// the r exceptional curves: exactly 2r tracked (-1)-curves.
pub fn ruled_census(r: usize) -> SurfaceModel {
    let mut curves = vec![Curve::new("B", QVector::from_ints(&[0, 1]), false)];
    for i in 1..=r {
        curves.push(Curve::new(
            &format!("f{i}"),
            QVector::from_ints(&[1, 0]),
            true,
        ));
    }
    let mut s = SurfaceModel::new(
        QMatrix::from_int_rows(&[&[0, 1], &[1, 0]]),
        QVector::from_ints(&[2, -2]),
        curves,
        -1,
        false,
        true,
    )
    .expect("fixture is valid");
    for i in 1..=r {
        s = s.blow_up(&[(&format!("f{i}"), 1)]).expect("fixture is valid");
    }
    s
}

/// Minimal general type model (K*K = 2, chi = 1) blown up at `r` points in
/// general position: r tracked (-1)-curves against census bound c2 = 10 + r.
pub fn general_type_blowups(r: usize) -> SurfaceModel {
    let mut s = SurfaceModel::new(
        QMatrix::from_int_rows(&[&[2]]),
        QVector::from_ints(&[1]),
        vec![Curve::new("C", QVector::from_ints(&[1]), false)],
        1,
        false,
        false,
    )
    .expect("fixture is valid");
    for _ in 0..r {
        s = s.blow_up(&[]).expect("fixture is valid");
    }
    s
}

/// The plane blown up n times in a chain: each center lies on the newest
/// exceptional curve, leaving n - 1 tracked (-2)-curves, one (-1)-curve, and
/// the 0-curve H. A convenient well of negative curves for randomized runs.
pub fn iterated_blowup_plane(n: usize) -> SurfaceModel {
    assert!(n >= 1, "chain fixtures need at least one blow-up");
    let mut s = projective_plane().blow_up(&[("H", 1)]).expect("fixture is valid");
    for i in 1..n {
        s = s
            .blow_up(&[(&format!("E{i}"), 1)])
            .expect("fixture is valid");
    }
    s
}

/// Two boundary curves on a surface meeting transversally in one point.
pub fn snc_two_curves(a1: Rational, a2: Rational) -> SncConfig {
    SncConfig::new(2, &[("S1", a1), ("S2", a2)], &[(0, 1, 1)], &[])
        .expect("fixture is valid")
}

/// Three boundary surfaces on a threefold in general position: three double
/// curves and one triple point.
pub fn snc_triple_point(a1: Rational, a2: Rational, a3: Rational) -> SncConfig {
    SncConfig::new(
        3,
        &[("S1", a1), ("S2", a2), ("S3", a3)],
        &[(0, 1, 1), (0, 2, 1), (1, 2, 1)],
        &[(0, 1, 2, 1)],
    )
    .expect("fixture is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    #[test]
    fn fixtures_validate_and_have_expected_ranks() {
        assert_eq!(projective_plane().rank(), 1);
        assert_eq!(blown_projective_plane().rank(), 2);
        assert_eq!(example_one(5).rank(), 2);
        assert_eq!(hirzebruch(8).rank(), 2);
        assert_eq!(ruled_census(3).rank(), 5);
        assert_eq!(general_type_blowups(2).rank(), 3);
        assert_eq!(iterated_blowup_plane(4).rank(), 5);
    }

    #[test]
    fn hirzebruch_lattice_numbers() {
        let s = hirzebruch(8);
        assert_eq!(s.c1_squared(), rat_int(8));
        assert_eq!(s.c2(), rat_int(4));
        let e = &s.curve("E").unwrap().class;
        assert_eq!(s.pairing(e, e), rat_int(-8));
        let h = &s.curve("H").unwrap().class;
        assert_eq!(s.pairing(h, e), rat_int(0));
        assert_eq!(s.pairing(h, h), rat_int(16 * 8));
    }

    #[test]
    fn example_one_pair_builds() {
        let cfg = example_one_pair(5, rat(1, 10), rat(1, 5));
        assert_eq!(cfg.coefficient_of("S"), Some(&rat(1, 10)));
        assert_eq!(cfg.coefficient_of("E"), Some(&rat(1, 5)));
    }
}
