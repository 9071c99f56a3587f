//! Surfaces as Picard lattices.
//!
//! A model is an intersection form of signature `(1, rank-1)` together with
//! a canonical class and a list of tracked curves. Blow-ups and contractions
//! rewrite the lattice exactly; Zariski decompositions, base loci and the
//! (-1)-curve census are computed from tracked data alone, so the curve list
//! is an input contract: every irreducible negative curve that matters to a
//! computation must be listed — the lattice cannot discover missing curves.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::Zero;

use crate::linalg::{LinAlgError, LinearSolution, QMatrix, QVector};
use crate::rat::{rat_int, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    Linear(LinAlgError),
    FormNotSymmetric,
    /// The intersection form does not have signature (1, rank-1).
    HodgeIndexViolation,
    DimensionMismatch,
    DuplicateCurveName { name: String },
    UnknownCurve { name: String },
    /// C*C + K*C must be an even integer >= -2, with -2 only for curves
    /// flagged rational.
    AdjunctionViolation { curve: String },
    /// A blow-up center may sit on at most two tracked curves, with
    /// multiplicity one each, and those curves must meet.
    InvalidIncidence,
    NotContractible { curve: String },
    NotPseudoeffective,
    NotBig,
    /// The census hypothesis requires a non-rational surface.
    RationalSurfaceHypothesis,
    CoefficientOutOfRange { curve: String },
    DuplicateBoundaryCurve { name: String },
    InvalidCurveOrder,
}

impl fmt::Display for SurfaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceError::Linear(e) => write!(f, "{e}"),
            SurfaceError::FormNotSymmetric => write!(f, "intersection form must be symmetric"),
            SurfaceError::HodgeIndexViolation => {
                write!(f, "intersection form must have signature (1, rank-1)")
            }
            SurfaceError::DimensionMismatch => {
                write!(f, "class dimension does not match the lattice rank")
            }
            SurfaceError::DuplicateCurveName { name } => {
                write!(f, "duplicate curve name {name:?}")
            }
            SurfaceError::UnknownCurve { name } => write!(f, "unknown curve {name:?}"),
            SurfaceError::AdjunctionViolation { curve } => write!(
                f,
                "curve {curve:?} violates adjunction: C*C + K*C must be an even integer >= -2, \
                 with -2 only for rational curves"
            ),
            SurfaceError::InvalidIncidence => write!(
                f,
                "blow-up center must lie on at most two tracked curves, with multiplicity one \
                 each, and the two curves must meet"
            ),
            SurfaceError::NotContractible { curve } => write!(
                f,
                "curve {curve:?} has nonnegative self-intersection and cannot be contracted"
            ),
            SurfaceError::NotPseudoeffective => write!(f, "divisor is not pseudoeffective"),
            SurfaceError::NotBig => write!(f, "divisor is not big"),
            SurfaceError::RationalSurfaceHypothesis => {
                write!(f, "census requires a non-rational surface")
            }
            SurfaceError::CoefficientOutOfRange { curve } => {
                write!(f, "boundary coefficient of {curve:?} must lie in [0, 1]")
            }
            SurfaceError::DuplicateBoundaryCurve { name } => {
                write!(f, "curve {name:?} appears twice in the boundary")
            }
            SurfaceError::InvalidCurveOrder => {
                write!(f, "curve order must be a permutation of the tracked curves")
            }
        }
    }
}

impl core::error::Error for SurfaceError {}

impl From<LinAlgError> for SurfaceError {
    fn from(e: LinAlgError) -> Self {
        SurfaceError::Linear(e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    pub name: String,
    pub class: QVector,
    pub rational: bool,
}

impl Curve {
    pub fn new(name: &str, class: QVector, rational: bool) -> Curve {
        Curve {
            name: String::from(name),
            class,
            rational,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    rank: usize,
    form: QMatrix,
    canonical: QVector,
    curves: Vec<Curve>,
    chi: i64,
    rational_surface: bool,
    uniruled: bool,
}

impl SurfaceModel {
    pub fn new(
        form: QMatrix,
        canonical: QVector,
        curves: Vec<Curve>,
        chi: i64,
        rational_surface: bool,
        uniruled: bool,
    ) -> Result<SurfaceModel, SurfaceError> {
        Self::build(form, canonical, curves, chi, rational_surface, uniruled, true)
    }

    /// Constructor variant used after contractions: pushforward classes are
    /// rational in general, so the adjunction check no longer applies.
    fn build(
        form: QMatrix,
        canonical: QVector,
        curves: Vec<Curve>,
        chi: i64,
        rational_surface: bool,
        uniruled: bool,
        check_adjunction: bool,
    ) -> Result<SurfaceModel, SurfaceError> {
        if !form.is_symmetric() {
            return Err(SurfaceError::FormNotSymmetric);
        }
        let rank = form.rows();
        if canonical.dim() != rank || curves.iter().any(|c| c.class.dim() != rank) {
            return Err(SurfaceError::DimensionMismatch);
        }
        if form.signature()? != (1, rank - 1, 0) {
            return Err(SurfaceError::HodgeIndexViolation);
        }
        let mut names: BTreeSet<&str> = BTreeSet::new();
        for c in &curves {
            if !names.insert(&c.name) {
                return Err(SurfaceError::DuplicateCurveName {
                    name: c.name.clone(),
                });
            }
        }
        let model = SurfaceModel {
            rank,
            form,
            canonical,
            curves,
            chi,
            rational_surface,
            uniruled,
        };
        if check_adjunction {
            for c in &model.curves {
                model.check_adjunction(c)?;
            }
        }
        Ok(model)
    }

    fn check_adjunction(&self, curve: &Curve) -> Result<(), SurfaceError> {
        let t = self.pairing(&curve.class, &curve.class)
            + self.pairing(&self.canonical, &curve.class);
        let violation = Err(SurfaceError::AdjunctionViolation {
            curve: curve.name.clone(),
        });
        if !t.is_integer() {
            return violation;
        }
        let n = t.to_integer();
        if !n.is_even() || t < rat_int(-2) {
            return violation;
        }
        if t == rat_int(-2) && !curve.rational {
            return violation;
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn form(&self) -> &QMatrix {
        &self.form
    }

    pub fn canonical(&self) -> &QVector {
        &self.canonical
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn chi(&self) -> i64 {
        self.chi
    }

    pub fn is_rational_surface(&self) -> bool {
        self.rational_surface
    }

    pub fn is_uniruled(&self) -> bool {
        self.uniruled
    }

    /// Intersection product of two classes against the fixed form.
    pub fn pairing(&self, a: &QVector, b: &QVector) -> Rational {
        a.dot(&self.form.mul_vec(b))
    }

    pub fn curve_index(&self, name: &str) -> Option<usize> {
        self.curves.iter().position(|c| c.name == name)
    }

    pub fn curve(&self, name: &str) -> Option<&Curve> {
        self.curve_index(name).map(|i| &self.curves[i])
    }

    pub fn c1_squared(&self) -> Rational {
        self.pairing(&self.canonical, &self.canonical)
    }

    /// Second Chern number via Noether: c2 = 12 chi - c1^2.
    pub fn c2(&self) -> Rational {
        rat_int(12 * self.chi) - self.c1_squared()
    }

    /// Blow up a point. `incidence` lists the tracked curves through the
    /// point with their multiplicities there; at most two curves may appear
    /// with positive multiplicity, and two curves force a transversal point
    /// (multiplicity one each, on curves that actually meet). Appends the
    /// exceptional curve under the first free `E<n>` name.
    pub fn blow_up(&self, incidence: &[(&str, u32)]) -> Result<SurfaceModel, SurfaceError> {
        let mut mults = vec![0u32; self.curves.len()];
        for (name, m) in incidence {
            let idx = self
                .curve_index(name)
                .ok_or_else(|| SurfaceError::UnknownCurve {
                    name: String::from(*name),
                })?;
            mults[idx] += m;
        }
        let on_center: Vec<usize> = (0..self.curves.len()).filter(|&i| mults[i] > 0).collect();
        if on_center.len() > 2 {
            return Err(SurfaceError::InvalidIncidence);
        }
        if let [i, j] = on_center[..] {
            let meet = self.pairing(&self.curves[i].class, &self.curves[j].class);
            if mults[i] != 1 || mults[j] != 1 || meet < rat_int(1) {
                return Err(SurfaceError::InvalidIncidence);
            }
        }
        let rank = self.rank + 1;
        let mut form = QMatrix::zeros(rank, rank);
        for i in 0..self.rank {
            for j in 0..self.rank {
                form.set(i, j, self.form.get(i, j).clone());
            }
        }
        form.set(self.rank, self.rank, rat_int(-1));
        let extend = |v: &QVector, last: Rational| {
            let mut coords = v.coords().to_vec();
            coords.push(last);
            QVector::new(coords)
        };
        let canonical = extend(&self.canonical, rat_int(1));
        let mut curves: Vec<Curve> = self
            .curves
            .iter()
            .enumerate()
            .map(|(i, c)| Curve {
                name: c.name.clone(),
                class: extend(&c.class, rat_int(-i64::from(mults[i]))),
                rational: c.rational,
            })
            .collect();
        let mut n = 1usize;
        let exceptional_name = loop {
            let candidate = format!("E{n}");
            if self.curve_index(&candidate).is_none() {
                break candidate;
            }
            n += 1;
        };
        curves.push(Curve {
            name: exceptional_name,
            class: QVector::basis(rank, rank - 1),
            rational: true,
        });
        Self::build(
            form,
            canonical,
            curves,
            self.chi,
            self.rational_surface,
            self.uniruled,
            true,
        )
    }

    /// Contract a tracked curve of negative self-intersection. Classes are
    /// pushed forward along the quotient by the curve's class; products obey
    /// `D'.E' = D.E + (D.C)(E.C)/(-C.C)`, so the result is rational in
    /// general and exactly inverts [`SurfaceModel::blow_up`] for a
    /// (-1)-curve.
    pub fn contract(&self, name: &str) -> Result<SurfaceModel, SurfaceError> {
        let idx = self
            .curve_index(name)
            .ok_or_else(|| SurfaceError::UnknownCurve {
                name: String::from(name),
            })?;
        let c = self.curves[idx].class.clone();
        let c_sq = self.pairing(&c, &c);
        if c_sq >= Rational::zero() {
            return Err(SurfaceError::NotContractible {
                curve: String::from(name),
            });
        }
        let drop = (0..self.rank)
            .rev()
            .find(|&i| !c[i].is_zero())
            .expect("a negative class is nonzero");
        let keep: Vec<usize> = (0..self.rank).filter(|&i| i != drop).collect();
        let gc = self.form.mul_vec(&c);
        let mut form = QMatrix::zeros(self.rank - 1, self.rank - 1);
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                form.set(a, b, self.form.get(i, j) - &gc[i] * &gc[j] / &c_sq);
            }
        }
        let push = |v: &QVector| {
            let t = &v[drop] / &c[drop];
            QVector::new(keep.iter().map(|&i| &v[i] - &t * &c[i]).collect())
        };
        let canonical = push(&self.canonical);
        let curves = self
            .curves
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != idx)
            .map(|(_, cv)| Curve {
                name: cv.name.clone(),
                class: push(&cv.class),
                rational: cv.rational,
            })
            .collect();
        Self::build(
            form,
            canonical,
            curves,
            self.chi,
            self.rational_surface,
            self.uniruled,
            false,
        )
    }

    /// Zariski decomposition of `d`, or the verdict that `d` is not
    /// pseudoeffective. Independent of any curve ordering: the support is
    /// enlarged by every violating curve at once.
    pub fn zariski(&self, d: &QVector) -> Result<ZariskiOutcome, SurfaceError> {
        self.zariski_impl(d, None)
    }

    /// Same decomposition, but grows the support one curve at a time in the
    /// order given by `priority` (a permutation of curve indices). The
    /// outcome provably matches [`SurfaceModel::zariski`]; exposed so the
    /// order-independence is testable.
    pub fn zariski_with_order(
        &self,
        d: &QVector,
        priority: &[usize],
    ) -> Result<ZariskiOutcome, SurfaceError> {
        let mut seen = vec![false; self.curves.len()];
        if priority.len() != self.curves.len() {
            return Err(SurfaceError::InvalidCurveOrder);
        }
        for &i in priority {
            if i >= self.curves.len() || seen[i] {
                return Err(SurfaceError::InvalidCurveOrder);
            }
            seen[i] = true;
        }
        self.zariski_impl(d, Some(priority))
    }

    fn zariski_impl(
        &self,
        d: &QVector,
        priority: Option<&[usize]>,
    ) -> Result<ZariskiOutcome, SurfaceError> {
        if d.dim() != self.rank {
            return Err(SurfaceError::DimensionMismatch);
        }
        let n = self.curves.len();
        let mut support: BTreeSet<usize> = (0..n)
            .filter(|&i| self.pairing(d, &self.curves[i].class) < Rational::zero())
            .collect();
        loop {
            let idxs: Vec<usize> = support.iter().copied().collect();
            let m = idxs.len();
            let (coeffs, positive) = if m == 0 {
                (Vec::new(), d.clone())
            } else {
                let mut gram = QMatrix::zeros(m, m);
                for a in 0..m {
                    for b in 0..m {
                        gram.set(
                            a,
                            b,
                            self.pairing(&self.curves[idxs[a]].class, &self.curves[idxs[b]].class),
                        );
                    }
                }
                if gram.signature()? != (0, m, 0) {
                    return Ok(ZariskiOutcome::NotPseudoeffective);
                }
                let rhs = QVector::new(
                    idxs.iter()
                        .map(|&i| self.pairing(d, &self.curves[i].class))
                        .collect(),
                );
                let coeffs = match gram.solve_linear(&rhs)? {
                    LinearSolution::Unique(x) => x,
                    // A negative definite matrix is invertible.
                    _ => unreachable!("definite Gram systems have unique solutions"),
                };
                let mut positive = d.clone();
                for (a, &i) in idxs.iter().enumerate() {
                    positive = &positive - &self.curves[i].class.scale(&coeffs[a]);
                }
                (coeffs.into_coords(), positive)
            };
            let violators: Vec<usize> = (0..n)
                .filter(|i| !support.contains(i))
                .filter(|&i| self.pairing(&positive, &self.curves[i].class) < Rational::zero())
                .collect();
            if violators.is_empty() {
                if coeffs.iter().any(|x| x < &Rational::zero()) {
                    return Ok(ZariskiOutcome::NotPseudoeffective);
                }
                let negative = idxs
                    .iter()
                    .zip(&coeffs)
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(&i, x)| (self.curves[i].name.clone(), x.clone()))
                    .collect();
                return Ok(ZariskiOutcome::Decomposition(ZariskiDecomposition {
                    positive,
                    negative,
                }));
            }
            match priority {
                None => support.extend(violators),
                Some(order) => {
                    let next = order
                        .iter()
                        .copied()
                        .find(|i| violators.contains(i))
                        .expect("violators are drawn from the curve list");
                    support.insert(next);
                }
            }
        }
    }

    /// Count tracked (-1)-curves (rational, C*C = K*C = -1) against the
    /// census bound: c2 for non-uniruled surfaces, max(c2, 2(2c2 - c1^2)/3)
    /// in general. Requires a non-rational surface.
    pub fn minus_one_census(&self) -> Result<CensusReport, SurfaceError> {
        if self.rational_surface {
            return Err(SurfaceError::RationalSurfaceHypothesis);
        }
        let minus_one = rat_int(-1);
        let count = self
            .curves
            .iter()
            .filter(|c| {
                c.rational
                    && self.pairing(&c.class, &c.class) == minus_one
                    && self.pairing(&self.canonical, &c.class) == minus_one
            })
            .count();
        let c2 = self.c2();
        let bound = if self.uniruled {
            let alt = (rat_int(2) * (rat_int(2) * &c2 - self.c1_squared())) / rat_int(3);
            c2.max(alt)
        } else {
            c2
        };
        let pass = rat_int(count as i64) <= bound;
        Ok(CensusReport { count, bound, pass })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZariskiDecomposition {
    /// Nef against every tracked curve.
    pub positive: QVector,
    /// Curve names with their (positive) coefficients, in curve-list order;
    /// the positive part pairs to zero with each, and their Gram matrix is
    /// negative definite.
    pub negative: Vec<(String, Rational)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZariskiOutcome {
    Decomposition(ZariskiDecomposition),
    NotPseudoeffective,
}

impl ZariskiOutcome {
    pub fn decomposition(&self) -> Option<&ZariskiDecomposition> {
        match self {
            ZariskiOutcome::Decomposition(z) => Some(z),
            ZariskiOutcome::NotPseudoeffective => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub count: usize,
    pub bound: Rational,
    pub pass: bool,
}

/// A surface with a boundary divisor: named tracked curves with rational
/// coefficients in [0, 1].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairConfig {
    surface: SurfaceModel,
    boundary: Vec<(usize, Rational)>,
}

impl PairConfig {
    pub fn new(
        surface: SurfaceModel,
        boundary: &[(&str, Rational)],
    ) -> Result<PairConfig, SurfaceError> {
        let mut indexed: Vec<(usize, Rational)> = Vec::with_capacity(boundary.len());
        for (name, coeff) in boundary {
            let idx = surface
                .curve_index(name)
                .ok_or_else(|| SurfaceError::UnknownCurve {
                    name: String::from(*name),
                })?;
            if indexed.iter().any(|(i, _)| *i == idx) {
                return Err(SurfaceError::DuplicateBoundaryCurve {
                    name: String::from(*name),
                });
            }
            if coeff < &Rational::zero() || coeff > &rat_int(1) {
                return Err(SurfaceError::CoefficientOutOfRange {
                    curve: String::from(*name),
                });
            }
            indexed.push((idx, coeff.clone()));
        }
        indexed.sort_by_key(|(i, _)| *i);
        Ok(PairConfig {
            surface,
            boundary: indexed,
        })
    }

    pub fn surface(&self) -> &SurfaceModel {
        &self.surface
    }

    /// Boundary entries as (curve index, coefficient), sorted by index.
    pub fn boundary(&self) -> &[(usize, Rational)] {
        &self.boundary
    }

    pub fn coefficient_of(&self, name: &str) -> Option<&Rational> {
        let idx = self.surface.curve_index(name)?;
        self.boundary
            .iter()
            .find(|(i, _)| *i == idx)
            .map(|(_, c)| c)
    }

    pub fn boundary_class(&self) -> QVector {
        let mut b = QVector::zeros(self.surface.rank);
        for (i, coeff) in &self.boundary {
            b = &b + &self.surface.curves[*i].class.scale(coeff);
        }
        b
    }

    /// The class K + boundary.
    pub fn log_class(&self) -> QVector {
        &self.surface.canonical + &self.boundary_class()
    }

    /// Tracked curves in the divisorial stable base locus of K + boundary:
    /// the support of the Zariski negative part.
    pub fn divisorial_base_locus(&self) -> Result<BTreeSet<String>, SurfaceError> {
        match self.surface.zariski(&self.log_class())? {
            ZariskiOutcome::NotPseudoeffective => Err(SurfaceError::NotPseudoeffective),
            ZariskiOutcome::Decomposition(z) => {
                Ok(z.negative.into_iter().map(|(name, _)| name).collect())
            }
        }
    }

    /// Tracked curves on which the Zariski positive part of K + boundary
    /// degenerates to zero product — the curve content of the augmented base
    /// locus. Requires K + boundary big (positive self-product of the
    /// positive part).
    pub fn augmented_null_curves(&self) -> Result<BTreeSet<String>, SurfaceError> {
        let z = match self.surface.zariski(&self.log_class())? {
            ZariskiOutcome::NotPseudoeffective => return Err(SurfaceError::NotPseudoeffective),
            ZariskiOutcome::Decomposition(z) => z,
        };
        if self.surface.pairing(&z.positive, &z.positive) <= Rational::zero() {
            return Err(SurfaceError::NotBig);
        }
        Ok(self
            .surface
            .curves
            .iter()
            .filter(|c| self.surface.pairing(&z.positive, &c.class).is_zero())
            .map(|c| c.name.clone())
            .collect())
    }
}
