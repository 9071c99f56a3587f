//! Geography of log models: runs of the contraction program over a surface
//! pair, and the decomposition of the boundary-coefficient cube into
//! chambers on which the resulting model is constant.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::certificate::{denominator_certificate, vertex_denominator_bound, CertificateError};
use crate::linalg::QVector;
use crate::polytope::{
    split_cell, volume, Cell, HPolytope, Hyperplane, PolytopeError, VPolytope,
};
use crate::rat::{ceil_int, clear_denominators, rat, Rational};
use crate::surface::{PairConfig, SurfaceError, SurfaceModel};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeographyError {
    Surface(SurfaceError),
    Geometry(PolytopeError),
    Certificate(CertificateError),
    /// eps must lie strictly between 0 and 1/2.
    InvalidEpsilon,
    EmptyCoefficientSpace,
    UnknownCurve { name: String },
    DuplicateCurve { name: String },
    IncidenceOutOfRange,
    InvalidCurveOrder,
    /// A region that the theory promises to be a polytope came out
    /// non-convex; the tracked-curve list is likely incomplete.
    RegionNotConvex,
}

impl fmt::Display for GeographyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeographyError::Surface(e) => write!(f, "{e}"),
            GeographyError::Geometry(e) => write!(f, "{e}"),
            GeographyError::Certificate(e) => write!(f, "{e}"),
            GeographyError::InvalidEpsilon => {
                write!(f, "eps must lie strictly between 0 and 1/2")
            }
            GeographyError::EmptyCoefficientSpace => {
                write!(f, "the boundary curve list must be nonempty")
            }
            GeographyError::UnknownCurve { name } => write!(f, "unknown curve {name:?}"),
            GeographyError::DuplicateCurve { name } => {
                write!(f, "curve {name:?} listed twice")
            }
            GeographyError::IncidenceOutOfRange => {
                write!(f, "incidence pair indexes a curve outside the boundary list")
            }
            GeographyError::InvalidCurveOrder => {
                write!(f, "curve order must be a permutation of the tracked curve names")
            }
            GeographyError::RegionNotConvex => {
                write!(f, "region is not convex; tracked curves are likely incomplete")
            }
        }
    }
}

impl core::error::Error for GeographyError {}

impl From<SurfaceError> for GeographyError {
    fn from(e: SurfaceError) -> Self {
        GeographyError::Surface(e)
    }
}

impl From<PolytopeError> for GeographyError {
    fn from(e: PolytopeError) -> Self {
        GeographyError::Geometry(e)
    }
}

impl From<CertificateError> for GeographyError {
    fn from(e: CertificateError) -> Self {
        GeographyError::Certificate(e)
    }
}

/// One contraction step: the model it started from, the contracted curve,
/// the (negative) pairing of the log divisor with it, and the curve's
/// discrepancy K*C / C*C at contraction time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MmpStep {
    pub model: SurfaceModel,
    pub contracted: String,
    pub value: Rational,
    pub discrepancy: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MmpOutcome {
    /// The final log divisor is nonnegative against every tracked curve.
    LogTerminalModel,
    /// A curve of nonnegative self-intersection still pairs negatively.
    NotPseudoeffective,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MmpTrace {
    pub steps: Vec<MmpStep>,
    pub outcome: MmpOutcome,
    pub final_pair: PairConfig,
}

impl MmpTrace {
    /// The set of contracted curve names — the model fingerprint.
    pub fn fingerprint(&self) -> BTreeSet<String> {
        self.steps.iter().map(|s| s.contracted.clone()).collect()
    }
}

/// Run the contraction program: repeatedly contract the lowest-index tracked
/// curve with negative log pairing and negative self-intersection, pushing
/// the boundary forward (a contracted boundary curve drops its coefficient).
/// Stops with a log terminal model when nothing pairs negatively, or with a
/// non-pseudoeffective verdict when only curves of nonnegative
/// self-intersection do.
pub fn run_log_mmp(cfg: &PairConfig) -> Result<MmpTrace, GeographyError> {
    run_mmp_impl(cfg, None)
}

/// Same program, but among eligible curves contract the one earliest in
/// `order` (a permutation of the starting model's curve names). The final
/// fingerprint is invariant under the choice of order.
pub fn run_log_mmp_with_order(
    cfg: &PairConfig,
    order: &[&str],
) -> Result<MmpTrace, GeographyError> {
    let names: BTreeSet<&str> = cfg
        .surface()
        .curves()
        .iter()
        .map(|c| c.name.as_str())
        .collect();
    let given: BTreeSet<&str> = order.iter().copied().collect();
    if order.len() != names.len() || given != names {
        return Err(GeographyError::InvalidCurveOrder);
    }
    run_mmp_impl(cfg, Some(order))
}

fn run_mmp_impl(cfg: &PairConfig, order: Option<&[&str]>) -> Result<MmpTrace, GeographyError> {
    let mut current = cfg.clone();
    let mut steps: Vec<MmpStep> = Vec::new();
    loop {
        let s = current.surface();
        let log = current.log_class();
        let negatives: Vec<usize> = (0..s.curves().len())
            .filter(|&i| s.pairing(&log, &s.curves()[i].class) < Rational::zero())
            .collect();
        if negatives.is_empty() {
            return Ok(MmpTrace {
                steps,
                outcome: MmpOutcome::LogTerminalModel,
                final_pair: current,
            });
        }
        let contractible: Vec<usize> = negatives
            .iter()
            .copied()
            .filter(|&i| {
                let c = &s.curves()[i].class;
                s.pairing(c, c) < Rational::zero()
            })
            .collect();
        if contractible.is_empty() {
            return Ok(MmpTrace {
                steps,
                outcome: MmpOutcome::NotPseudoeffective,
                final_pair: current,
            });
        }
        let pick = match order {
            None => contractible[0],
            Some(order) => order
                .iter()
                .filter_map(|name| s.curve_index(name))
                .find(|i| contractible.contains(i))
                .expect("contractible curves appear in the order"),
        };
        let name = s.curves()[pick].name.clone();
        let class = s.curves()[pick].class.clone();
        let value = s.pairing(&log, &class);
        let discrepancy =
            s.pairing(s.canonical(), &class) / s.pairing(&class, &class);
        steps.push(MmpStep {
            model: s.clone(),
            contracted: name.clone(),
            value,
            discrepancy,
        });
        let contracted_model = s.contract(&name)?;
        let remaining: Vec<(String, Rational)> = current
            .boundary()
            .iter()
            .filter(|(i, _)| s.curves()[*i].name != name)
            .map(|(i, c)| (s.curves()[*i].name.clone(), c.clone()))
            .collect();
        let refs: Vec<(&str, Rational)> = remaining
            .iter()
            .map(|(n, c)| (n.as_str(), c.clone()))
            .collect();
        current = PairConfig::new(contracted_model, &refs)?;
    }
}

/// Resolve and validate a boundary curve list on a model.
fn boundary_indices(s: &SurfaceModel, v: &[&str]) -> Result<Vec<usize>, GeographyError> {
    if v.is_empty() {
        return Err(GeographyError::EmptyCoefficientSpace);
    }
    let mut idxs = Vec::with_capacity(v.len());
    for name in v {
        let idx = s
            .curve_index(name)
            .ok_or_else(|| GeographyError::UnknownCurve {
                name: String::from(*name),
            })?;
        if idxs.contains(&idx) {
            return Err(GeographyError::DuplicateCurve {
                name: String::from(*name),
            });
        }
        idxs.push(idx);
    }
    Ok(idxs)
}

fn pair_at(
    s: &SurfaceModel,
    v: &[&str],
    point: &QVector,
) -> Result<PairConfig, GeographyError> {
    let boundary: Vec<(&str, Rational)> = v
        .iter()
        .enumerate()
        .map(|(i, name)| (*name, point[i].clone()))
        .collect();
    Ok(PairConfig::new(s.clone(), &boundary)?)
}

/// Candidate walls: for every branch of the contraction program (explored
/// symbolically over the whole unit cube) and every tracked curve C of the
/// branch model, the locus where the log divisor pairs to zero with C.
/// Linear in the boundary coefficients because contracted boundary curves
/// drop out.
fn collect_walls(s: &SurfaceModel, v: &[&str]) -> Result<Vec<Hyperplane>, GeographyError> {
    boundary_indices(s, v)?;
    let p = v.len();
    let mut walls: BTreeSet<Hyperplane> = BTreeSet::new();
    let mut visited: BTreeSet<BTreeSet<String>> = BTreeSet::new();
    let mut queue: Vec<(SurfaceModel, BTreeSet<String>)> = vec![(s.clone(), BTreeSet::new())];
    visited.insert(BTreeSet::new());
    while let Some((model, contracted)) = queue.pop() {
        for curve in model.curves() {
            // Wall equation: K*C + sum_v (S_v*C) d_v = 0 over active v.
            let mut row: Vec<Rational> = Vec::with_capacity(p + 1);
            for name in v {
                if contracted.contains(*name) {
                    row.push(Rational::zero());
                } else {
                    let class = &model
                        .curve(name)
                        .expect("boundary curves persist until contracted")
                        .class;
                    row.push(model.pairing(class, &curve.class));
                }
            }
            let offset = model.pairing(model.canonical(), &curve.class);
            row.push(-offset.clone());
            let (ints, _) = clear_denominators(&row);
            let (normal, bound) = (ints[..p].to_vec(), ints[p].clone());
            if normal.iter().any(|x| !x.is_zero()) {
                walls.insert(Hyperplane::new(normal, bound).normalized());
            }
            // Branch when C is contractible somewhere in the unit cube:
            // minimize the wall's affine form over [0,1]^p.
            let self_sq = model.pairing(&curve.class, &curve.class);
            if self_sq >= Rational::zero() {
                continue;
            }
            let mut minimum = offset;
            for coeff in &row[..p] {
                if coeff < &Rational::zero() {
                    minimum += coeff.clone();
                }
            }
            if minimum >= Rational::zero() {
                continue;
            }
            let mut next = contracted.clone();
            next.insert(curve.name.clone());
            if visited.insert(next.clone()) {
                queue.push((model.contract(&curve.name)?, next));
            }
        }
    }
    Ok(walls.into_iter().collect())
}

/// Convex hull of a union of cells, verified exactly: the hull volume must
/// equal the summed cell volumes. Returns the empty polytope for no cells.
fn union_hull(p: usize, cells: &[&Cell]) -> Result<HPolytope, GeographyError> {
    if cells.is_empty() {
        return Ok(HPolytope::empty(p));
    }
    let mut points: Vec<QVector> = Vec::new();
    for cell in cells {
        points.extend(cell.v.vertices().iter().cloned());
    }
    let hull = VPolytope::from_points(p, &points);
    let total: Rational = cells.iter().map(|c| volume(&c.v)).sum();
    if volume(&hull) != total {
        return Err(GeographyError::RegionNotConvex);
    }
    Ok(hull.to_hpolytope()?)
}

/// The subset of the unit coefficient cube where the log divisor
/// K + sum d_v S_v is pseudoeffective, returned as an exact polytope.
pub fn pseudoeffective_region(
    s: &SurfaceModel,
    v: &[&str],
) -> Result<HPolytope, GeographyError> {
    let p = v.len();
    let cells = classified_cells(s, v, &HPolytope::cube(p, &Rational::zero(), &Rational::one()))?;
    let kept: Vec<&Cell> = cells
        .iter()
        .filter(|gc| matches!(gc.verdict, CellVerdict::Model(_)))
        .map(|gc| &gc.cell)
        .collect();
    union_hull(p, &kept)
}

/// The locus in the eps-cube where the pair stays canonical: coefficient
/// sums bounded by 1 over each intersecting boundary pair.
pub fn canonical_region(
    p: usize,
    meets: &[(usize, usize)],
    eps: &Rational,
) -> Result<HPolytope, GeographyError> {
    if !eps.is_positive() || *eps >= rat(1, 2) {
        return Err(GeographyError::InvalidEpsilon);
    }
    if p == 0 {
        return Err(GeographyError::EmptyCoefficientSpace);
    }
    if meets.iter().any(|(i, j)| *i >= p || *j >= p || i == j) {
        return Err(GeographyError::IncidenceOutOfRange);
    }
    let hi = Rational::one() - eps;
    let mut region = HPolytope::cube(p, eps, &hi);
    for (i, j) in meets {
        let mut normal = vec![BigInt::zero(); p];
        normal[*i] = -BigInt::one();
        normal[*j] = -BigInt::one();
        region = region.with_constraint(crate::polytope::Constraint::new(
            normal,
            -BigInt::one(),
        ));
    }
    Ok(region)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CellVerdict {
    /// The program ends in a log terminal model with this contracted set.
    Model(BTreeSet<String>),
    NotPseudoeffective,
}

#[derive(Debug, Clone)]
pub struct GeographyCell {
    pub cell: Cell,
    pub verdict: CellVerdict,
}

/// A maximal union of same-fingerprint cells. Merged by fingerprint even
/// when cells are not adjacent; `convex` records whether the union equals
/// its convex hull (exact volume test).
#[derive(Debug, Clone)]
pub struct GeographyChamber {
    pub fingerprint: BTreeSet<String>,
    /// Indices into the geography's cell list.
    pub cells: Vec<usize>,
    pub hull: VPolytope,
    pub convex: bool,
    /// Meets the interior of the canonical region in full dimension.
    pub terminal: bool,
    /// Least common denominator over all hull vertices.
    pub lcm_denominator: BigInt,
}

#[derive(Debug, Clone)]
pub struct Geography {
    pub curve_names: Vec<String>,
    pub eps: Rational,
    pub walls: Vec<Hyperplane>,
    pub cells: Vec<GeographyCell>,
    pub chambers: Vec<GeographyChamber>,
    /// Pseudoeffective part of the eps-cube (exact union of cells, verified
    /// convex).
    pub pseudoeffective: HPolytope,
    pub canonical: HPolytope,
}

fn classified_cells(
    s: &SurfaceModel,
    v: &[&str],
    base: &HPolytope,
) -> Result<Vec<GeographyCell>, GeographyError> {
    let walls = collect_walls(s, v)?;
    let base_cell = Cell::from_hpolytope(base)?
        .expect("coefficient boxes are full-dimensional");
    let mut out = Vec::new();
    for cell in split_cell(&base_cell, &walls) {
        let trace = run_log_mmp(&pair_at(s, v, &cell.barycenter())?)?;
        let verdict = match trace.outcome {
            MmpOutcome::LogTerminalModel => CellVerdict::Model(trace.fingerprint()),
            MmpOutcome::NotPseudoeffective => CellVerdict::NotPseudoeffective,
        };
        out.push(GeographyCell { cell, verdict });
    }
    Ok(out)
}

/// Decompose the eps-cube of boundary coefficients for the curves `v` into
/// chambers of constant log terminal model. `meets` lists which pairs of
/// `v`-curves intersect on the surface (for the canonical region).
pub fn compute_geography(
    s: &SurfaceModel,
    v: &[&str],
    eps: &Rational,
    meets: &[(usize, usize)],
) -> Result<Geography, GeographyError> {
    if !eps.is_positive() || *eps >= rat(1, 2) {
        return Err(GeographyError::InvalidEpsilon);
    }
    boundary_indices(s, v)?;
    let p = v.len();
    let hi = Rational::one() - eps;
    let cube = HPolytope::cube(p, eps, &hi);
    let cells = classified_cells(s, v, &cube)?;
    let walls = collect_walls(s, v)?;
    let canonical = canonical_region(p, meets, eps)?;
    let mut by_fingerprint: BTreeMap<BTreeSet<String>, Vec<usize>> = BTreeMap::new();
    for (i, gc) in cells.iter().enumerate() {
        if let CellVerdict::Model(fp) = &gc.verdict {
            by_fingerprint.entry(fp.clone()).or_default().push(i);
        }
    }
    let mut chambers = Vec::with_capacity(by_fingerprint.len());
    for (fingerprint, members) in by_fingerprint {
        let mut points: Vec<QVector> = Vec::new();
        let mut total = Rational::zero();
        let mut terminal = false;
        for &i in &members {
            let cell = &cells[i].cell;
            points.extend(cell.v.vertices().iter().cloned());
            total += volume(&cell.v);
            if !terminal {
                let meet = cell.h.intersect(&canonical)?.vertices()?;
                terminal = meet.affine_dim() == p as isize;
            }
        }
        let hull = VPolytope::from_points(p, &points);
        let convex = volume(&hull) == total;
        let lcm_denominator = hull
            .vertices()
            .iter()
            .map(|x| x.lcm_denominator())
            .fold(BigInt::one(), |a, b| a.lcm(&b));
        chambers.push(GeographyChamber {
            fingerprint,
            cells: members,
            hull,
            convex,
            terminal,
            lcm_denominator,
        });
    }
    let kept: Vec<&Cell> = cells
        .iter()
        .filter(|gc| matches!(gc.verdict, CellVerdict::Model(_)))
        .map(|gc| &gc.cell)
        .collect();
    let pseudoeffective = union_hull(p, &kept)?;
    Ok(Geography {
        curve_names: v.iter().map(|n| String::from(*n)).collect(),
        eps: eps.clone(),
        walls,
        cells,
        chambers,
        pseudoeffective,
        canonical,
    })
}

impl Geography {
    pub fn dim(&self) -> usize {
        self.curve_names.len()
    }

    pub fn terminal_count(&self) -> usize {
        self.chambers.iter().filter(|c| c.terminal).count()
    }

    /// Hull of the cells whose model does NOT contract the named curve —
    /// the region where the curve escapes the base locus. Verified convex.
    pub fn region_excluding(&self, name: &str) -> Result<HPolytope, GeographyError> {
        let kept: Vec<&Cell> = self
            .cells
            .iter()
            .filter(|gc| match &gc.verdict {
                CellVerdict::Model(fp) => !fp.contains(name),
                CellVerdict::NotPseudoeffective => false,
            })
            .map(|gc| &gc.cell)
            .collect();
        union_hull(self.dim(), &kept)
    }
}

/// Summary of the terminal chambers and their vertex denominators, checked
/// against the exact-arithmetic denominator certificate. The entry bound
/// ties the certificate to the wall shape: with k the ceiling of 1/eps,
/// admissible walls carry at most one negative coefficient, no smaller than
/// -2k, and offsets within 2k.
#[derive(Debug, Clone)]
pub struct TerminalReport {
    pub terminal_count: usize,
    pub chamber_denominators: Vec<BigInt>,
    pub max_denominator: BigInt,
    /// k = ceil(1/eps).
    pub coefficient_scale: BigInt,
    pub walls_within_theory: bool,
    /// Entry bound fed to the vertex-denominator certificate.
    pub entry_bound: BigInt,
    pub denominator_bound: BigInt,
    pub bound_holds: bool,
    /// Every pseudoeffective cell passes the denominator certificate.
    pub cells_certified: bool,
}

pub fn terminal_chamber_report(geo: &Geography) -> Result<TerminalReport, GeographyError> {
    let k = ceil_int(&(Rational::one() / &geo.eps));
    let two_k = BigInt::from(2) * &k;
    let walls_within_theory = geo.walls.iter().all(|w| {
        let negatives: Vec<&BigInt> = w.normal.iter().filter(|x| x.is_negative()).collect();
        negatives.len() <= 1
            && negatives.iter().all(|x| -(*x).clone() <= two_k)
            && w.offset.abs() <= two_k
    });
    let q = geo.eps.denom().clone();
    let mut max_entry = BigInt::zero();
    let mut max_bound = BigInt::zero();
    for gc in &geo.cells {
        for c in gc.cell.h.constraints() {
            for x in &c.normal {
                max_entry = max_entry.max(x.abs());
            }
            max_bound = max_bound.max(c.bound.abs());
        }
    }
    let entry_bound = (&two_k + BigInt::one())
        .max(q)
        .max(&max_entry + BigInt::one())
        .max(&max_bound + BigInt::one());
    let denominator_bound = vertex_denominator_bound(geo.dim(), &entry_bound, &geo.eps)?;
    let chamber_denominators: Vec<BigInt> = geo
        .chambers
        .iter()
        .map(|c| c.lcm_denominator.clone())
        .collect();
    let max_denominator = chamber_denominators
        .iter()
        .cloned()
        .max()
        .unwrap_or_else(BigInt::one);
    let mut cells_certified = true;
    for gc in &geo.cells {
        if !matches!(gc.verdict, CellVerdict::Model(_)) {
            continue;
        }
        let report = denominator_certificate(&gc.cell.h, &entry_bound, &geo.eps)?;
        if !report.all_certified {
            cells_certified = false;
        }
    }
    Ok(TerminalReport {
        terminal_count: geo.terminal_count(),
        bound_holds: max_denominator <= denominator_bound,
        chamber_denominators,
        max_denominator,
        coefficient_scale: k,
        walls_within_theory,
        entry_bound,
        denominator_bound,
        cells_certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{
        blown_projective_plane, example_one, example_one_pair, general_type_blowups,
        iterated_blowup_plane,
    };
    use crate::rat::rat_int;

    #[test]
    fn mmp_on_the_blown_plane_contracts_and_fails_pseudoeffectivity() {
        let cfg = PairConfig::new(blown_projective_plane(), &[("E", rat(1, 2))]).unwrap();
        let trace = run_log_mmp(&cfg).unwrap();
        assert_eq!(trace.steps.len(), 1);
        assert_eq!(trace.steps[0].contracted, "E");
        assert_eq!(trace.steps[0].value, rat(-3, 2));
        assert_eq!(trace.steps[0].discrepancy, rat_int(1));
        assert_eq!(trace.outcome, MmpOutcome::NotPseudoeffective);
        assert_eq!(trace.final_pair.surface().rank(), 1);
    }

    #[test]
    fn steep_curve_wall_decides_the_contraction() {
        // d1*s - d2 < 1 contracts E; above the wall nothing moves.
        let below = example_one_pair(5, rat(1, 10), Rational::zero());
        let trace = run_log_mmp(&below).unwrap();
        assert_eq!(trace.outcome, MmpOutcome::LogTerminalModel);
        assert_eq!(
            trace.fingerprint(),
            BTreeSet::from([String::from("E")])
        );
        let above = example_one_pair(5, rat(1, 2), Rational::zero());
        let trace = run_log_mmp(&above).unwrap();
        assert_eq!(trace.outcome, MmpOutcome::LogTerminalModel);
        assert!(trace.steps.is_empty());
    }

    #[test]
    fn discrepancies_exceed_minus_one_on_klt_runs() {
        let cfg = PairConfig::new(
            iterated_blowup_plane(3),
            &[("E3", rat(1, 3)), ("H", rat(1, 4))],
        )
        .unwrap();
        let trace = run_log_mmp(&cfg).unwrap();
        assert!(!trace.steps.is_empty());
        for step in &trace.steps {
            assert!(step.value < Rational::zero());
            assert!(step.discrepancy > rat_int(-1));
        }
    }

    #[test]
    fn mmp_fingerprint_is_order_invariant() {
        let s = iterated_blowup_plane(3);
        let names: Vec<&str> = s.curves().iter().map(|c| c.name.as_str()).collect();
        let cfg = PairConfig::new(s.clone(), &[("H", rat(2, 3))]).unwrap();
        let base = run_log_mmp(&cfg).unwrap();
        // All rotations of the name list select in different orders.
        for r in 0..names.len() {
            let mut order = names.clone();
            order.rotate_left(r);
            let t = run_log_mmp_with_order(&cfg, &order).unwrap();
            assert_eq!(t.fingerprint(), base.fingerprint());
            assert_eq!(t.outcome, base.outcome);
        }
        assert_eq!(
            run_log_mmp_with_order(&cfg, &names[1..]).unwrap_err(),
            GeographyError::InvalidCurveOrder
        );
    }

    #[test]
    fn pseudoeffective_region_extremes() {
        // K nef: everything in the cube stays pseudoeffective.
        let nef = general_type_blowups(0);
        let region = pseudoeffective_region(&nef, &["C"]).unwrap();
        let verts = region.vertices().unwrap();
        assert_eq!(verts.vertices().len(), 2);
        assert_eq!(volume(&verts), rat_int(1));
        // Blown plane over V = {E}: never pseudoeffective.
        let region = pseudoeffective_region(&blown_projective_plane(), &["E"]).unwrap();
        assert!(region.vertices().unwrap().is_empty());
        // Steep curve model: pseudoeffective across the whole square.
        let region = pseudoeffective_region(&example_one(5), &["S", "E"]).unwrap();
        assert_eq!(volume(&region.vertices().unwrap()), rat_int(1));
    }

    #[test]
    fn canonical_region_cuts_meeting_pairs() {
        // Disjoint boundary: the whole eps-box.
        let free = canonical_region(2, &[], &rat(1, 4)).unwrap();
        assert_eq!(volume(&free.vertices().unwrap()), rat(1, 4));
        // One meeting pair at eps = 1/4: the triangle under a1 + a2 <= 1.
        let cut = canonical_region(2, &[(0, 1)], &rat(1, 4)).unwrap();
        let verts = cut.vertices().unwrap();
        assert_eq!(verts.vertices().len(), 3);
        assert_eq!(volume(&verts), rat(1, 8));
        assert_eq!(
            canonical_region(2, &[(0, 2)], &rat(1, 4)).unwrap_err(),
            GeographyError::IncidenceOutOfRange
        );
        assert_eq!(
            canonical_region(2, &[], &rat(1, 2)).unwrap_err(),
            GeographyError::InvalidEpsilon
        );
    }

    #[test]
    fn steep_curve_geography_has_two_chambers() {
        let s = example_one(5);
        let geo = compute_geography(&s, &["S", "E"], &rat(1, 10), &[(0, 1)]).unwrap();
        assert_eq!(geo.chambers.len(), 2);
        let fingerprints: Vec<&BTreeSet<String>> =
            geo.chambers.iter().map(|c| &c.fingerprint).collect();
        assert_eq!(fingerprints[0], &BTreeSet::new());
        assert_eq!(fingerprints[1], &BTreeSet::from([String::from("E")]));
        assert!(geo.chambers.iter().all(|c| c.convex));
        assert!(geo.chambers.iter().all(|c| c.terminal));
        assert_eq!(geo.terminal_count(), 2);
        // The whole eps-square is pseudoeffective.
        let vol = volume(&geo.pseudoeffective.vertices().unwrap());
        assert_eq!(vol, rat(16, 25));
        // Chamber fingerprints match the base locus at interior samples.
        for chamber in &geo.chambers {
            for &i in &chamber.cells {
                let b = geo.cells[i].cell.barycenter();
                let cfg = example_one_pair(5, b[0].clone(), b[1].clone());
                let locus = cfg.divisorial_base_locus().unwrap();
                assert_eq!(
                    locus,
                    chamber.fingerprint,
                    "base locus must match the chamber at {b:?}"
                );
            }
        }
    }

    #[test]
    fn steep_curve_report_denominators() {
        let s = example_one(5);
        let geo = compute_geography(&s, &["S", "E"], &rat(1, 10), &[(0, 1)]).unwrap();
        let report = terminal_chamber_report(&geo).unwrap();
        assert_eq!(report.terminal_count, 2);
        assert!(report.walls_within_theory);
        assert!(report.bound_holds);
        assert!(report.cells_certified);
        // Wall-vertex denominators divide s*q = 5 * 10.
        let fifty = BigInt::from(50);
        for d in &report.chamber_denominators {
            assert!((&fifty % d).is_zero(), "{d} does not divide 50");
        }
        assert_eq!(report.coefficient_scale, BigInt::from(10));
    }

    #[test]
    fn single_chamber_geography_reports_cube_denominators() {
        let s = general_type_blowups(0);
        let geo = compute_geography(&s, &["C"], &rat(1, 10), &[]).unwrap();
        assert_eq!(geo.chambers.len(), 1);
        assert!(geo.chambers[0].fingerprint.is_empty());
        let report = terminal_chamber_report(&geo).unwrap();
        assert_eq!(report.terminal_count, 1);
        assert_eq!(report.max_denominator, BigInt::from(10));
        assert!(report.bound_holds);
    }

    #[test]
    fn region_escaping_the_base_locus_is_upward_closed() {
        use crate::chamber::is_upward_closed;
        let s = example_one(5);
        let eps = rat(1, 10);
        let geo = compute_geography(&s, &["S"], &eps, &[]).unwrap();
        assert_eq!(geo.chambers.len(), 2);
        let region = geo.region_excluding("E").unwrap();
        let cube = HPolytope::cube(1, &eps, &(Rational::one() - &eps));
        assert!(is_upward_closed(&region, &cube).unwrap());
        // Sanity: the complementary region is NOT upward closed.
        let complement = geo
            .cells
            .iter()
            .filter(|gc| match &gc.verdict {
                CellVerdict::Model(fp) => fp.contains("E"),
                CellVerdict::NotPseudoeffective => false,
            })
            .map(|gc| &gc.cell)
            .collect::<Vec<_>>();
        let complement = union_hull(1, &complement).unwrap();
        assert!(!is_upward_closed(&complement, &cube).unwrap());
    }
}
