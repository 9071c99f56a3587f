//! Rational convex polytopes.
//!
//! Polytopes appear in two forms: as integer half-space systems
//! ([`HPolytope`], each constraint `normal . x >= bound`) and as vertex sets
//! ([`VPolytope`]). Vertex enumeration is exhaustive over active-constraint
//! subsets, so every result is exact; emptiness is a valid outcome while
//! unbounded systems are rejected with an error.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::linalg::{affine_dim, LinearSolution, QMatrix, QVector};
use crate::rat::{clear_denominators, rat_big, reduce_by_gcd, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolytopeError {
    /// The system admits arbitrarily large feasible points.
    Unbounded,
    /// Operand dimensions do not line up (got, expected).
    DimensionMismatch { got: usize, expected: usize },
    /// The ambient dimension must be at least one.
    InvalidDimension,
    /// The operation needs a full-dimensional polytope.
    NotFullDimensional,
}

impl fmt::Display for PolytopeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolytopeError::Unbounded => write!(f, "polytope is unbounded"),
            PolytopeError::DimensionMismatch { got, expected } => {
                write!(f, "dimension mismatch: got {got}, expected {expected}")
            }
            PolytopeError::InvalidDimension => write!(f, "ambient dimension must be positive"),
            PolytopeError::NotFullDimensional => {
                write!(f, "operation requires a full-dimensional polytope")
            }
        }
    }
}

impl core::error::Error for PolytopeError {}

/// One closed half-space `normal . x >= bound` with integer data.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Constraint {
    pub normal: Vec<BigInt>,
    pub bound: BigInt,
}

impl Constraint {
    pub fn new(normal: Vec<BigInt>, bound: BigInt) -> Self {
        Constraint { normal, bound }
    }

    pub fn from_ints(normal: &[i64], bound: i64) -> Self {
        Constraint {
            normal: normal.iter().map(|&x| BigInt::from(x)).collect(),
            bound: BigInt::from(bound),
        }
    }

    /// `normal . x - bound`.
    pub fn eval(&self, x: &QVector) -> Rational {
        let mut acc = Rational::zero();
        for (n, c) in self.normal.iter().zip(x.coords()) {
            acc += c * rat_big(n.clone());
        }
        acc - rat_big(self.bound.clone())
    }

    pub fn satisfied_by(&self, x: &QVector) -> bool {
        !self.eval(x).is_negative()
    }

    pub fn tight_at(&self, x: &QVector) -> bool {
        self.eval(x).is_zero()
    }

    /// Divide normal and bound by their common gcd (orientation preserved).
    pub fn reduce(&mut self) {
        let mut all: Vec<BigInt> = self.normal.clone();
        all.push(self.bound.clone());
        reduce_by_gcd(&mut all);
        self.bound = all.pop().unwrap();
        self.normal = all;
    }

    pub fn negated(&self) -> Constraint {
        Constraint {
            normal: self.normal.iter().map(|x| -x).collect(),
            bound: -&self.bound,
        }
    }
}

/// An affine hyperplane `normal . x = offset` with integer data, unoriented.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Hyperplane {
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
}

impl Hyperplane {
    pub fn new(normal: Vec<BigInt>, offset: BigInt) -> Self {
        Hyperplane { normal, offset }
    }

    pub fn from_ints(normal: &[i64], offset: i64) -> Self {
        Hyperplane {
            normal: normal.iter().map(|&x| BigInt::from(x)).collect(),
            offset: BigInt::from(offset),
        }
    }

    pub fn eval(&self, x: &QVector) -> Rational {
        Constraint {
            normal: self.normal.clone(),
            bound: self.offset.clone(),
        }
        .eval(x)
    }

    /// Canonical form: primitive, first nonzero normal entry positive.
    pub fn normalized(&self) -> Hyperplane {
        let mut all: Vec<BigInt> = self.normal.clone();
        all.push(self.offset.clone());
        reduce_by_gcd(&mut all);
        if let Some(first) = all[..all.len() - 1].iter().find(|x| !x.is_zero()) {
            if first.is_negative() {
                for x in all.iter_mut() {
                    *x = -&*x;
                }
            }
        }
        let offset = all.pop().unwrap();
        Hyperplane {
            normal: all,
            offset,
        }
    }

    /// The half-space `normal . x >= offset`.
    pub fn upper_side(&self) -> Constraint {
        Constraint {
            normal: self.normal.clone(),
            bound: self.offset.clone(),
        }
    }

    /// The half-space `normal . x <= offset`.
    pub fn lower_side(&self) -> Constraint {
        self.upper_side().negated()
    }
}

/// Intersection of finitely many integer half-spaces in `R^dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolytope {
    dim: usize,
    constraints: Vec<Constraint>,
}

impl HPolytope {
    pub fn new(dim: usize, constraints: Vec<Constraint>) -> Result<Self, PolytopeError> {
        if dim == 0 {
            return Err(PolytopeError::InvalidDimension);
        }
        for c in &constraints {
            if c.normal.len() != dim {
                return Err(PolytopeError::DimensionMismatch {
                    got: c.normal.len(),
                    expected: dim,
                });
            }
        }
        Ok(HPolytope { dim, constraints })
    }

    /// The manifestly empty system `0 . x >= 1`.
    pub fn empty(dim: usize) -> Self {
        HPolytope {
            dim,
            constraints: vec![Constraint {
                normal: vec![BigInt::zero(); dim],
                bound: BigInt::one(),
            }],
        }
    }

    /// Axis box `lo <= x_i <= hi` with rational bounds.
    pub fn cube(dim: usize, lo: &Rational, hi: &Rational) -> Self {
        let mut constraints = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            let mut lo_normal = vec![BigInt::zero(); dim];
            lo_normal[i] = lo.denom().clone();
            constraints.push(Constraint::new(lo_normal, lo.numer().clone()));
            let mut hi_normal = vec![BigInt::zero(); dim];
            hi_normal[i] = -hi.denom();
            constraints.push(Constraint::new(hi_normal, -hi.numer()));
        }
        HPolytope { dim, constraints }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn contains(&self, x: &QVector) -> bool {
        x.dim() == self.dim && self.constraints.iter().all(|c| c.satisfied_by(x))
    }

    /// Constraints tight at `x` (indices).
    pub fn active_at(&self, x: &QVector) -> Vec<usize> {
        (0..self.constraints.len())
            .filter(|&i| self.constraints[i].tight_at(x))
            .collect()
    }

    pub fn intersect(&self, other: &HPolytope) -> Result<HPolytope, PolytopeError> {
        if self.dim != other.dim {
            return Err(PolytopeError::DimensionMismatch {
                got: other.dim,
                expected: self.dim,
            });
        }
        let mut constraints = self.constraints.clone();
        constraints.extend(other.constraints.iter().cloned());
        Ok(HPolytope {
            dim: self.dim,
            constraints,
        })
    }

    pub fn with_constraint(&self, c: Constraint) -> HPolytope {
        let mut constraints = self.constraints.clone();
        constraints.push(c);
        HPolytope {
            dim: self.dim,
            constraints,
        }
    }

    /// Add both sides of `normal . x = offset`.
    pub fn with_equality(&self, plane: &Hyperplane) -> HPolytope {
        self.with_constraint(plane.upper_side())
            .with_constraint(plane.lower_side())
    }

    /// Largest absolute value among constraint entries (at least 1).
    fn max_entry(&self) -> BigInt {
        let mut m = BigInt::one();
        for c in &self.constraints {
            for x in c.normal.iter().chain(core::iter::once(&c.bound)) {
                let a = x.abs();
                if a > m {
                    m = a;
                }
            }
        }
        m
    }

    fn with_box(&self, half_width: &BigInt) -> HPolytope {
        let w = rat_big(half_width.clone());
        self.intersect(&HPolytope::cube(self.dim, &-&w, &w)).unwrap()
    }

    /// Basic feasible points: solutions of `dim` active constraints that
    /// satisfy the whole system. Complete for bounded systems only.
    fn basic_points(&self) -> Vec<QVector> {
        let p = self.dim;
        let m = self.constraints.len();
        let mut out: BTreeSet<QVector> = BTreeSet::new();
        if m < p {
            return Vec::new();
        }
        for_each_combination(m, p, &mut |idx| {
            let rows: Vec<QVector> = idx
                .iter()
                .map(|&i| {
                    QVector::new(
                        self.constraints[i]
                            .normal
                            .iter()
                            .map(|x| rat_big(x.clone()))
                            .collect(),
                    )
                })
                .collect();
            let b = QVector::new(
                idx.iter()
                    .map(|&i| rat_big(self.constraints[i].bound.clone()))
                    .collect(),
            );
            let a = QMatrix::from_rows(&rows);
            if let Ok(LinearSolution::Unique(x)) = a.solve_linear(&b) {
                if self.contains(&x) {
                    out.insert(x);
                }
            }
        });
        out.into_iter().collect()
    }

    /// Does the recession cone `{d : normal . d >= 0 for all constraints}`
    /// contain a nonzero direction?
    pub fn has_unbounded_direction(&self) -> bool {
        let cone_constraints: Vec<Constraint> = self
            .constraints
            .iter()
            .map(|c| Constraint::new(c.normal.clone(), BigInt::zero()))
            .collect();
        let cone = HPolytope {
            dim: self.dim,
            constraints: cone_constraints,
        }
        .with_box(&BigInt::one());
        cone.basic_points().iter().any(|v| !v.is_zero())
    }

    /// Exact vertex set. Empty systems give an empty vertex list; systems
    /// with feasible points in some unbounded direction are an error.
    pub fn vertices(&self) -> Result<VPolytope, PolytopeError> {
        // Any nonempty system has a feasible point whose coordinates are
        // bounded by a Cramer-style estimate, so feasibility is decided
        // inside a sufficiently large box.
        let p = self.dim;
        let entry = self.max_entry();
        let coord_bound = BigInt::from(p).pow(p as u32) * entry.pow(p as u32) + 1;
        let boxed = self.with_box(&coord_bound);
        let pts = boxed.basic_points();
        if pts.is_empty() {
            return Ok(VPolytope {
                dim: p,
                vertices: Vec::new(),
            });
        }
        if self.has_unbounded_direction() {
            return Err(PolytopeError::Unbounded);
        }
        // Bounded: every vertex lies strictly inside the box, so the boxed
        // basic points are exactly the vertices.
        Ok(VPolytope {
            dim: p,
            vertices: pts,
        })
    }

    /// Vertices of a system already known to be bounded.
    pub(crate) fn vertices_bounded(&self) -> VPolytope {
        VPolytope {
            dim: self.dim,
            vertices: self.basic_points(),
        }
    }
}

/// Convex hull of finitely many rational points, stored as the minimal
/// (extreme) point set in sorted order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VPolytope {
    dim: usize,
    vertices: Vec<QVector>,
}

impl VPolytope {
    /// Reduce an arbitrary point list to its extreme points.
    pub fn from_points(dim: usize, points: &[QVector]) -> Self {
        let dedup: Vec<QVector> = points
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let vertices = dedup
            .iter()
            .filter(|x| {
                let others: Vec<QVector> =
                    dedup.iter().filter(|y| *y != *x).cloned().collect();
                !in_convex_hull(x, &others)
            })
            .cloned()
            .collect();
        VPolytope { dim, vertices }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[QVector] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn affine_dim(&self) -> isize {
        affine_dim(&self.vertices)
    }

    /// Average of the vertices; interior for full-dimensional polytopes.
    pub fn barycenter(&self) -> Option<QVector> {
        if self.vertices.is_empty() {
            return None;
        }
        let n = Rational::from_integer(BigInt::from(self.vertices.len()));
        let mut acc = QVector::zeros(self.dim);
        for v in &self.vertices {
            acc = &acc + v;
        }
        Some(acc.scale(&(Rational::one() / n)))
    }

    /// Half-space description. Full-dimensional hulls give their facets;
    /// lower-dimensional hulls add the equalities cutting out the affine
    /// hull, with facets computed in a chart of that hull. The empty hull
    /// gives a manifestly infeasible system.
    pub fn to_hpolytope(&self) -> Result<HPolytope, PolytopeError> {
        if self.dim == 0 {
            return Err(PolytopeError::InvalidDimension);
        }
        if self.vertices.is_empty() {
            return Ok(HPolytope::empty(self.dim));
        }
        let adim = self.affine_dim();
        if adim == self.dim as isize {
            let facets = facet_constraints(&self.vertices);
            return HPolytope::new(
                self.dim,
                facets.into_iter().map(|f| f.constraint).collect(),
            );
        }
        // Equalities for the affine hull.
        let base = &self.vertices[0];
        let mut constraints: Vec<Constraint> = Vec::new();
        let diffs: Vec<QVector> = self.vertices[1..].iter().map(|v| v - base).collect();
        let kernel = if diffs.is_empty() {
            (0..self.dim).map(|i| QVector::basis(self.dim, i)).collect()
        } else {
            QMatrix::from_rows(&diffs).null_space()
        };
        for n in kernel {
            let mut entries = n.coords().to_vec();
            entries.push(-n.dot(base));
            let (ints, _) = clear_denominators(&entries);
            let mut ints = ints;
            reduce_by_gcd(&mut ints);
            let neg_offset = ints.pop().unwrap();
            let plane = Hyperplane::new(ints, -neg_offset);
            constraints.push(plane.upper_side());
            constraints.push(plane.lower_side());
        }
        if adim > 0 {
            // Facets inside a chart of the affine hull.
            let chart = AffineChart::from_points(&self.vertices);
            let local: Vec<QVector> =
                self.vertices.iter().map(|v| chart.to_local(v)).collect();
            for f in facet_constraints(&local) {
                constraints.push(chart.constraint_to_global(&f.constraint));
            }
        }
        HPolytope::new(self.dim, constraints)
    }
}

/// Is `x` in the convex hull of `points`? Decided exactly by searching for
/// an affinely independent witness subset (Caratheodory).
pub fn in_convex_hull(x: &QVector, points: &[QVector]) -> bool {
    if points.is_empty() {
        return false;
    }
    let p = x.dim();
    let n = points.len();
    let mut rhs_coords: Vec<Rational> = x.coords().to_vec();
    rhs_coords.push(Rational::one());
    let rhs = QVector::new(rhs_coords);
    for size in 1..=(p + 1).min(n) {
        let mut found = false;
        for_each_combination(n, size, &mut |idx| {
            if found {
                return;
            }
            // Columns are the chosen points with an appended row of ones.
            let mut data = Vec::with_capacity((p + 1) * size);
            for row in 0..p {
                for &j in idx {
                    data.push(points[j][row].clone());
                }
            }
            for _ in idx {
                data.push(Rational::one());
            }
            let m = QMatrix::new(p + 1, size, data);
            if let Ok(LinearSolution::Unique(lambda)) = m.solve_linear(&rhs) {
                if lambda.coords().iter().all(|l| !l.is_negative()) {
                    found = true;
                }
            }
        });
        if found {
            return true;
        }
    }
    false
}

/// A facet of a full-dimensional hull: its half-space and the indices of the
/// input points lying on it.
pub struct Facet {
    pub constraint: Constraint,
    pub tight: Vec<usize>,
}

/// Facets of the convex hull of a full-dimensional point set, by exhaustive
/// hyperplane enumeration over affinely independent subsets.
pub fn facet_constraints(points: &[QVector]) -> Vec<Facet> {
    let p = points.first().map_or(0, QVector::dim);
    assert!(p >= 1, "facet enumeration needs a positive dimension");
    debug_assert_eq!(affine_dim(points), p as isize);
    let n = points.len();
    let mut seen: BTreeSet<(Vec<BigInt>, BigInt)> = BTreeSet::new();
    let mut out = Vec::new();
    for_each_combination(n, p, &mut |idx| {
        let subset: Vec<QVector> = idx.iter().map(|&i| points[i].clone()).collect();
        let Some((normal, offset)) = crate::linalg::hyperplane_through(&subset) else {
            return;
        };
        let cand = Constraint::new(normal, offset);
        let mut pos = false;
        let mut neg = false;
        let mut tight = Vec::new();
        for (i, pt) in points.iter().enumerate() {
            let v = cand.eval(pt);
            if v.is_positive() {
                pos = true;
            } else if v.is_negative() {
                neg = true;
            } else {
                tight.push(i);
            }
            if pos && neg {
                return;
            }
        }
        let mut facet = if neg { cand.negated() } else { cand };
        facet.reduce();
        let key = (facet.normal.clone(), facet.bound.clone());
        if seen.insert(key) {
            out.push(Facet {
                constraint: facet,
                tight,
            });
        }
    });
    out
}

/// A full-dimensional polytope carried in both representations: the
/// half-space form holds exactly the facets, the vertex form is minimal.
#[derive(Debug, Clone)]
pub struct Cell {
    pub h: HPolytope,
    pub v: VPolytope,
}

impl Cell {
    /// Build from a half-space system; `None` when the feasible set is empty
    /// or not full-dimensional. Redundant constraints are pruned.
    pub fn from_hpolytope(h: &HPolytope) -> Result<Option<Cell>, PolytopeError> {
        let v = h.vertices()?;
        if v.affine_dim() != h.dim() as isize {
            return Ok(None);
        }
        Ok(Some(Cell::from_parts(h, v)))
    }

    /// As `from_hpolytope` for systems already known to be bounded.
    fn from_parts_unchecked(h: &HPolytope) -> Option<Cell> {
        let v = h.vertices_bounded();
        if v.affine_dim() != h.dim() as isize {
            return None;
        }
        Some(Cell::from_parts(h, v))
    }

    fn from_parts(h: &HPolytope, v: VPolytope) -> Cell {
        // A constraint of a bounded full-dimensional polytope is a facet
        // exactly when its tight vertices span a hyperplane; drop the rest.
        let p = h.dim();
        let mut kept: Vec<Constraint> = Vec::new();
        let mut seen: BTreeSet<(Vec<BigInt>, BigInt)> = BTreeSet::new();
        for c in h.constraints() {
            let tight: Vec<QVector> = v
                .vertices()
                .iter()
                .filter(|x| c.tight_at(x))
                .cloned()
                .collect();
            if affine_dim(&tight) == p as isize - 1 {
                let mut c = c.clone();
                c.reduce();
                if seen.insert((c.normal.clone(), c.bound.clone())) {
                    kept.push(c);
                }
            }
        }
        Cell {
            h: HPolytope {
                dim: p,
                constraints: kept,
            },
            v,
        }
    }

    pub fn dim(&self) -> usize {
        self.h.dim()
    }

    pub fn barycenter(&self) -> QVector {
        self.v.barycenter().expect("cells are nonempty")
    }
}

/// Refine a cell by a list of hyperplanes: the result is the set of closures
/// of the full-dimensional pieces cut out by the arrangement.
pub fn split_cell(base: &Cell, walls: &[Hyperplane]) -> Vec<Cell> {
    let mut cells = vec![base.clone()];
    for wall in walls {
        let mut next = Vec::with_capacity(cells.len());
        for cell in cells {
            let mut pos = false;
            let mut neg = false;
            for v in cell.v.vertices() {
                let s = wall.eval(v);
                if s.is_positive() {
                    pos = true;
                } else if s.is_negative() {
                    neg = true;
                }
                if pos && neg {
                    break;
                }
            }
            if !(pos && neg) {
                next.push(cell);
                continue;
            }
            for side in [wall.upper_side(), wall.lower_side()] {
                if let Some(piece) =
                    Cell::from_parts_unchecked(&cell.h.with_constraint(side))
                {
                    next.push(piece);
                }
            }
        }
        cells = next;
    }
    cells
}

/// Exact Euclidean volume of the hull; zero when not full-dimensional.
pub fn volume(v: &VPolytope) -> Rational {
    let p = v.dim();
    if v.affine_dim() != p as isize {
        return Rational::zero();
    }
    let mut total = Rational::zero();
    let factorial: BigInt = (1..=p as u64).map(BigInt::from).product();
    for simplex in triangulate(v.vertices()) {
        let base = &v.vertices()[simplex[0]];
        let rows: Vec<QVector> = simplex[1..]
            .iter()
            .map(|&i| &v.vertices()[i] - base)
            .collect();
        let det = QMatrix::from_rows(&rows).det_exact().expect("square");
        debug_assert!(!det.is_zero(), "degenerate simplex in triangulation");
        total += det.abs();
    }
    total / rat_big(factorial)
}

/// Triangulate a full-dimensional vertex set by pulling the lexicographically
/// least vertex: cone it over the triangulations of the facets avoiding it.
fn triangulate(points: &[QVector]) -> Vec<Vec<usize>> {
    let d = points[0].dim();
    if points.len() == d + 1 {
        return vec![(0..points.len()).collect()];
    }
    let apex = (0..points.len())
        .min_by(|&a, &b| points[a].cmp(&points[b]))
        .unwrap();
    let mut out = Vec::new();
    for facet in facet_constraints(points) {
        if facet.tight.contains(&apex) {
            continue;
        }
        let facet_points: Vec<QVector> =
            facet.tight.iter().map(|&i| points[i].clone()).collect();
        let chart = AffineChart::from_points(&facet_points);
        let local: Vec<QVector> = facet_points.iter().map(|q| chart.to_local(q)).collect();
        for simplex in triangulate(&local) {
            let mut global: Vec<usize> = simplex.iter().map(|&j| facet.tight[j]).collect();
            global.push(apex);
            out.push(global);
        }
    }
    out
}

/// Face structure of a full-dimensional polytope. `layers[k]` holds the
/// faces of codimension `k + 1` as sets of vertex indices, from facets down
/// to vertices.
pub struct FaceLattice {
    pub layers: Vec<Vec<BTreeSet<usize>>>,
}

pub fn face_lattice(v: &VPolytope) -> Result<FaceLattice, PolytopeError> {
    let p = v.dim();
    if v.affine_dim() != p as isize {
        return Err(PolytopeError::NotFullDimensional);
    }
    let points = v.vertices();
    let facets: Vec<BTreeSet<usize>> = facet_constraints(points)
        .into_iter()
        .map(|f| f.tight.into_iter().collect())
        .collect();
    let mut layers = vec![facets];
    for codim in 2..=p {
        let target = p as isize - codim as isize;
        let mut next: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        for face in layers.last().unwrap() {
            for facet in &layers[0] {
                let meet: BTreeSet<usize> = face.intersection(facet).copied().collect();
                if meet.is_empty() {
                    continue;
                }
                let pts: Vec<QVector> = meet.iter().map(|&i| points[i].clone()).collect();
                if affine_dim(&pts) == target {
                    next.insert(meet);
                }
            }
        }
        layers.push(next.into_iter().collect());
    }
    Ok(FaceLattice { layers })
}

/// Coordinates on the affine hull of a point set: a base point together with
/// an independent difference basis, inverted on a pivot coordinate set.
pub struct AffineChart {
    origin: QVector,
    basis: Vec<QVector>,
    pivot_coords: Vec<usize>,
    inv: QMatrix,
}

impl AffineChart {
    pub fn from_points(points: &[QVector]) -> Self {
        let origin = points[0].clone();
        let ambient = origin.dim();
        let mut basis: Vec<QVector> = Vec::new();
        for pt in &points[1..] {
            let d = pt - &origin;
            if d.is_zero() {
                continue;
            }
            let mut trial = basis.clone();
            trial.push(d.clone());
            if QMatrix::from_rows(&trial).rank() == trial.len() {
                basis = trial;
            }
        }
        let d = basis.len();
        // Pivot coordinates: a column set on which the basis matrix is
        // invertible.
        let rows_matrix = QMatrix::from_rows(&basis);
        let mut pivot_coords: Vec<usize> = Vec::new();
        for c in 0..ambient {
            if pivot_coords.len() == d {
                break;
            }
            let mut trial = pivot_coords.clone();
            trial.push(c);
            let all_rows: Vec<usize> = (0..d).collect();
            if rows_matrix.submatrix(&all_rows, &trial).rank() == trial.len() {
                pivot_coords = trial;
            }
        }
        // Square matrix with columns the basis vectors restricted to the
        // pivot coordinates.
        let mut data = Vec::with_capacity(d * d);
        for &c in &pivot_coords {
            for b in &basis {
                data.push(b[c].clone());
            }
        }
        let square = QMatrix::new(d, d, data);
        let inv = if d == 0 {
            QMatrix::zeros(0, 0)
        } else {
            square.inverse().expect("pivot coordinates make the basis invertible")
        };
        AffineChart {
            origin,
            basis,
            pivot_coords,
            inv,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.origin.dim()
    }

    /// Chart coordinates of a point of the affine hull.
    pub fn to_local(&self, x: &QVector) -> QVector {
        let diff = x - &self.origin;
        let restricted = QVector::new(
            self.pivot_coords
                .iter()
                .map(|&c| diff[c].clone())
                .collect(),
        );
        self.inv.mul_vec(&restricted)
    }

    pub fn to_global(&self, local: &QVector) -> QVector {
        let mut acc = self.origin.clone();
        for (b, l) in self.basis.iter().zip(local.coords()) {
            acc = &acc + &b.scale(l);
        }
        acc
    }

    /// Restrict a global hyperplane to the chart. `None` when the hyperplane
    /// contains the hull or misses it entirely (no slicing either way).
    pub fn hyperplane_to_local(&self, plane: &Hyperplane) -> Option<Hyperplane> {
        let n: Vec<Rational> = plane.normal.iter().map(|x| rat_big(x.clone())).collect();
        let nq = QVector::new(n);
        let mut entries: Vec<Rational> =
            self.basis.iter().map(|b| nq.dot(b)).collect();
        if entries.iter().all(Zero::is_zero) {
            return None;
        }
        entries.push(rat_big(plane.offset.clone()) - nq.dot(&self.origin));
        let (mut ints, _) = clear_denominators(&entries);
        reduce_by_gcd(&mut ints);
        let offset = ints.pop().unwrap();
        Some(Hyperplane::new(ints, offset))
    }

    /// Express a chart constraint as a global one (valid on the affine hull).
    pub fn constraint_to_global(&self, local: &Constraint) -> Constraint {
        let d = self.dim();
        let nu = QVector::new(local.normal.iter().map(|x| rat_big(x.clone())).collect());
        let g_restricted = self.inv.transpose().mul_vec(&nu);
        let mut g = vec![Rational::zero(); self.ambient_dim()];
        for (k, &c) in self.pivot_coords.iter().enumerate() {
            g[c] = g_restricted[k].clone();
        }
        let gq = QVector::new(g);
        let bound = rat_big(local.bound.clone()) + gq.dot(&self.origin);
        let mut entries = gq.into_coords();
        entries.push(bound);
        let (mut ints, _) = clear_denominators(&entries);
        reduce_by_gcd(&mut ints);
        let bound = ints.pop().unwrap();
        let _ = d;
        Constraint::new(ints, bound)
    }
}

/// Decides interior membership in a finite union of full-dimensional cells:
/// `x` is interior exactly when the tangent cones of the cells containing it
/// cover every direction. Directions are tested on the cells of the
/// arrangement their boundary hyperplanes cut out of the unit box; the
/// arrangement per active-normal set is cached.
pub struct InteriorTester<'a> {
    cells: &'a [Cell],
    dim: usize,
    direction_cache: BTreeMap<Vec<Vec<BigInt>>, Vec<QVector>>,
}

impl<'a> InteriorTester<'a> {
    pub fn new(cells: &'a [Cell], dim: usize) -> Self {
        InteriorTester {
            cells,
            dim,
            direction_cache: BTreeMap::new(),
        }
    }

    pub fn is_interior(&mut self, x: &QVector) -> bool {
        let containing: Vec<&Cell> = self
            .cells
            .iter()
            .filter(|c| c.h.contains(x))
            .collect();
        if containing.is_empty() {
            return false;
        }
        // Active constraint sets; a cell with none is a strict interior hit.
        let mut active: Vec<Vec<&Constraint>> = Vec::with_capacity(containing.len());
        for cell in &containing {
            let tight: Vec<&Constraint> = cell
                .h
                .constraints()
                .iter()
                .filter(|c| c.tight_at(x))
                .collect();
            if tight.is_empty() {
                return true;
            }
            active.push(tight);
        }
        let mut normals: BTreeSet<Vec<BigInt>> = BTreeSet::new();
        for tight in &active {
            for c in tight.iter() {
                let plane = Hyperplane::new(c.normal.clone(), BigInt::zero()).normalized();
                normals.insert(plane.normal);
            }
        }
        let key: Vec<Vec<BigInt>> = normals.iter().cloned().collect();
        let dim = self.dim;
        let samples = self.direction_cache.entry(key).or_insert_with(|| {
            let walls: Vec<Hyperplane> = normals
                .iter()
                .map(|n| Hyperplane::new(n.clone(), BigInt::zero()))
                .collect();
            let unit_box = Cell::from_hpolytope(&HPolytope::cube(
                dim,
                &-Rational::one(),
                &Rational::one(),
            ))
            .expect("box is bounded")
            .expect("box is full-dimensional");
            split_cell(&unit_box, &walls)
                .iter()
                .map(Cell::barycenter)
                .collect()
        });
        samples.iter().all(|d| {
            active.iter().any(|tight| {
                tight.iter().all(|c| {
                    let mut acc = Rational::zero();
                    for (n, v) in c.normal.iter().zip(d.coords()) {
                        acc += v * rat_big(n.clone());
                    }
                    !acc.is_negative()
                })
            })
        })
    }
}

/// Half-space description of `conv(points) + R_{>=0}^n` (the upward closure
/// of the hull under the componentwise order). Every facet normal of that
/// set is componentwise nonnegative and vanishes on a spanning set of hull
/// vertices and coordinate rays, so exhausting those subsets is complete.
pub fn upward_hull_constraints(points: &[QVector]) -> Vec<Constraint> {
    assert!(!points.is_empty(), "upward hull of an empty set");
    let p = points[0].dim();
    let n = points.len();
    let mut seen: BTreeSet<(Vec<BigInt>, BigInt)> = BTreeSet::new();
    let mut out: Vec<Constraint> = Vec::new();
    for size in 1..=p.min(n) {
        for_each_combination(n, size, &mut |subset| {
            let rays = p - size;
            for_each_combination(p, rays, &mut |ray_set| {
                let base = &points[subset[0]];
                let mut rows: Vec<QVector> = subset[1..]
                    .iter()
                    .map(|&i| &points[i] - base)
                    .collect();
                for &r in ray_set {
                    rows.push(QVector::basis(p, r));
                }
                let kernel = if rows.is_empty() {
                    if p == 1 {
                        vec![QVector::basis(1, 0)]
                    } else {
                        return;
                    }
                } else {
                    QMatrix::from_rows(&rows).null_space()
                };
                if kernel.len() != 1 {
                    return;
                }
                let mut normal = crate::rat::primitive_direction(kernel[0].coords());
                if normal.iter().any(Signed::is_negative) {
                    if normal.iter().all(|x| !x.is_positive()) {
                        for x in normal.iter_mut() {
                            *x = -&*x;
                        }
                    } else {
                        return;
                    }
                }
                let nq = QVector::new(normal.iter().map(|x| rat_big(x.clone())).collect());
                let bound = nq.dot(base);
                if points.iter().any(|v| nq.dot(v) < bound) {
                    return;
                }
                let mut entries: Vec<Rational> =
                    normal.iter().map(|x| rat_big(x.clone())).collect();
                entries.push(bound);
                let (mut ints, _) = clear_denominators(&entries);
                reduce_by_gcd(&mut ints);
                let b = ints.pop().unwrap();
                if seen.insert((ints.clone(), b.clone())) {
                    out.push(Constraint::new(ints, b));
                }
            });
        });
    }
    out
}

/// Visit all `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn for_each_combination(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k > n {
        return;
    }
    if k == 0 {
        f(&[]);
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
