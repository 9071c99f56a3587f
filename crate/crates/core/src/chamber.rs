//! Finite polytope covers and region families.
//!
//! A cover splits an ambient polytope into full-dimensional cells with
//! disjoint interiors. A region family marks some convex subsets of the
//! ambient polytope; cells are classified by which marked regions contain
//! them, and the unmarked part of the cover carries the boundary-face
//! bookkeeping behind the cell-count bound [`component_cell_bound`].

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::linalg::{affine_hull_key, hyperplane_through, QVector};
use crate::polytope::{
    face_lattice, upward_hull_constraints, volume, Cell, HPolytope, Hyperplane, PolytopeError,
};
use crate::rat::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChamberError {
    Geometry(PolytopeError),
    AmbientNotFullDimensional,
    CellNotFullDimensional { cell: usize },
    CellNotContained { cell: usize },
    CellsOverlap { first: usize, second: usize },
    /// Cell volumes do not add up to the ambient volume.
    CoverIncomplete,
    RegionNotFullDimensional { region: usize },
    RegionNotContained { region: usize },
    /// A cell lies partly inside and partly outside a marked region.
    CellStraddlesRegion { cell: usize, region: usize },
    NotWithinAmbient,
    DimensionMismatch { got: usize, expected: usize },
    InvalidParameter,
}

impl fmt::Display for ChamberError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChamberError::Geometry(e) => write!(f, "{e}"),
            ChamberError::AmbientNotFullDimensional => {
                write!(f, "ambient polytope is empty or not full-dimensional")
            }
            ChamberError::CellNotFullDimensional { cell } => {
                write!(f, "cell {cell} is empty or not full-dimensional")
            }
            ChamberError::CellNotContained { cell } => {
                write!(f, "cell {cell} is not contained in the ambient polytope")
            }
            ChamberError::CellsOverlap { first, second } => {
                write!(f, "cells {first} and {second} have overlapping interiors")
            }
            ChamberError::CoverIncomplete => {
                write!(f, "cells do not cover the ambient polytope")
            }
            ChamberError::RegionNotFullDimensional { region } => {
                write!(f, "region {region} is empty or not full-dimensional")
            }
            ChamberError::RegionNotContained { region } => {
                write!(f, "region {region} is not contained in the ambient polytope")
            }
            ChamberError::CellStraddlesRegion { cell, region } => {
                write!(f, "cell {cell} straddles the boundary of region {region}")
            }
            ChamberError::NotWithinAmbient => {
                write!(f, "polytope is not contained in the ambient polytope")
            }
            ChamberError::DimensionMismatch { got, expected } => {
                write!(f, "dimension mismatch: got {got}, expected {expected}")
            }
            ChamberError::InvalidParameter => write!(f, "parameters must be positive"),
        }
    }
}

impl core::error::Error for ChamberError {}

impl From<PolytopeError> for ChamberError {
    fn from(e: PolytopeError) -> Self {
        ChamberError::Geometry(e)
    }
}

/// Which closed side of `plane` the cell lies on: `1` (all vertices on the
/// nonnegative side), `-1`, or `0` when it straddles.
fn cell_side(cell: &Cell, plane: &Hyperplane) -> i8 {
    let mut pos = false;
    let mut neg = false;
    for v in cell.v.vertices() {
        let s = plane.eval(v);
        if s.is_positive() {
            pos = true;
        } else if s.is_negative() {
            neg = true;
        }
    }
    match (pos, neg) {
        (true, false) => 1,
        (false, true) => -1,
        _ => 0,
    }
}

/// Two full-dimensional cells are adjacent when their intersection is a
/// common facet: it spans a hyperplane, the cells lie on opposite sides of
/// it, and each cell's slice by it is contained in the other cell.
pub fn are_adjacent(a: &Cell, b: &Cell) -> Result<bool, ChamberError> {
    if a.dim() != b.dim() {
        return Err(ChamberError::DimensionMismatch {
            got: b.dim(),
            expected: a.dim(),
        });
    }
    let p = a.dim();
    let meet = a.h.intersect(&b.h)?.vertices_bounded();
    if meet.affine_dim() != p as isize - 1 {
        return Ok(false);
    }
    let (normal, offset) =
        hyperplane_through(meet.vertices()).expect("codim-one sets span a hyperplane");
    let plane = Hyperplane::new(normal, offset);
    if cell_side(a, &plane) * cell_side(b, &plane) != -1 {
        return Ok(false);
    }
    let a_slice = a.h.with_equality(&plane).vertices_bounded();
    if a_slice.vertices().iter().any(|v| !b.h.contains(v)) {
        return Ok(false);
    }
    let b_slice = b.h.with_equality(&plane).vertices_bounded();
    Ok(b_slice.vertices().iter().all(|v| a.h.contains(v)))
}

/// Connected components of a cell list under facet adjacency, each sorted,
/// ordered by smallest member.
pub fn adjacent_components(cells: &[Cell]) -> Result<Vec<Vec<usize>>, ChamberError> {
    let n = cells.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if are_adjacent(&cells[i], &cells[j])? {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort_by_key(|g| g[0]);
    Ok(out)
}

/// Is `inner` upward closed inside `ambient` under the componentwise order,
/// i.e. does adding any nonnegative vector to a point of `inner` stay in
/// `inner` as long as it stays in `ambient`? Empty `inner` counts as closed;
/// `inner` must be contained in `ambient`.
pub fn is_upward_closed(inner: &HPolytope, ambient: &HPolytope) -> Result<bool, ChamberError> {
    if inner.dim() != ambient.dim() {
        return Err(ChamberError::DimensionMismatch {
            got: inner.dim(),
            expected: ambient.dim(),
        });
    }
    let verts = inner.vertices()?;
    if verts.is_empty() {
        return Ok(true);
    }
    if verts.vertices().iter().any(|v| !ambient.contains(v)) {
        return Err(ChamberError::NotWithinAmbient);
    }
    let upward = HPolytope::new(inner.dim(), upward_hull_constraints(verts.vertices()))?;
    let closure = upward.intersect(ambient)?.vertices()?;
    Ok(closure.vertices().iter().all(|v| inner.contains(v)))
}

/// A full-dimensional polytope split into full-dimensional cells with
/// pairwise disjoint interiors whose volumes add up to the whole.
#[derive(Debug, Clone)]
pub struct PolytopeCover {
    ambient: Cell,
    cells: Vec<Cell>,
}

impl PolytopeCover {
    pub fn new(ambient: HPolytope, cells: Vec<HPolytope>) -> Result<Self, ChamberError> {
        let p = ambient.dim();
        let ambient = Cell::from_hpolytope(&ambient)?
            .ok_or(ChamberError::AmbientNotFullDimensional)?;
        let mut built: Vec<Cell> = Vec::with_capacity(cells.len());
        for (i, h) in cells.iter().enumerate() {
            if h.dim() != p {
                return Err(ChamberError::DimensionMismatch {
                    got: h.dim(),
                    expected: p,
                });
            }
            let cell = Cell::from_hpolytope(h)?
                .ok_or(ChamberError::CellNotFullDimensional { cell: i })?;
            if cell.v.vertices().iter().any(|v| !ambient.h.contains(v)) {
                return Err(ChamberError::CellNotContained { cell: i });
            }
            built.push(cell);
        }
        for i in 0..built.len() {
            for j in i + 1..built.len() {
                let meet = built[i].h.intersect(&built[j].h)?.vertices_bounded();
                if meet.affine_dim() == p as isize {
                    return Err(ChamberError::CellsOverlap { first: i, second: j });
                }
            }
        }
        let total: Rational = built.iter().map(|c| volume(&c.v)).sum();
        if total != volume(&ambient.v) {
            return Err(ChamberError::CoverIncomplete);
        }
        Ok(PolytopeCover {
            ambient,
            cells: built,
        })
    }

    pub fn dim(&self) -> usize {
        self.ambient.dim()
    }

    pub fn ambient(&self) -> &Cell {
        &self.ambient
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// Adjacency components of a subset of cells; indices into `cells`.
    pub fn components_of(&self, subset: &[usize]) -> Result<Vec<Vec<usize>>, ChamberError> {
        let chosen: Vec<Cell> = subset.iter().map(|&i| self.cells[i].clone()).collect();
        let comps = adjacent_components(&chosen)?;
        Ok(comps
            .into_iter()
            .map(|g| g.into_iter().map(|local| subset[local]).collect())
            .collect())
    }
}

/// A cover together with marked convex regions. Every cell must lie fully
/// inside or fully outside each region, so cells are classified by their
/// membership pattern.
#[derive(Debug, Clone)]
pub struct RegionFamily {
    cover: PolytopeCover,
    regions: Vec<Cell>,
    upward: Vec<bool>,
    patterns: Vec<BTreeSet<usize>>,
}

impl RegionFamily {
    pub fn new(cover: PolytopeCover, regions: Vec<HPolytope>) -> Result<Self, ChamberError> {
        let p = cover.dim();
        let mut built: Vec<Cell> = Vec::with_capacity(regions.len());
        let mut upward = Vec::with_capacity(regions.len());
        for (i, h) in regions.iter().enumerate() {
            if h.dim() != p {
                return Err(ChamberError::DimensionMismatch {
                    got: h.dim(),
                    expected: p,
                });
            }
            let region = Cell::from_hpolytope(h)?
                .ok_or(ChamberError::RegionNotFullDimensional { region: i })?;
            if region.v.vertices().iter().any(|v| !cover.ambient.h.contains(v)) {
                return Err(ChamberError::RegionNotContained { region: i });
            }
            upward.push(is_upward_closed(&region.h, &cover.ambient.h)?);
            built.push(region);
        }
        for (ci, cell) in cover.cells.iter().enumerate() {
            for (ri, region) in built.iter().enumerate() {
                let meet = cell.h.intersect(&region.h)?.vertices_bounded();
                if meet.affine_dim() == p as isize
                    && cell.v.vertices().iter().any(|v| !region.h.contains(v))
                {
                    return Err(ChamberError::CellStraddlesRegion {
                        cell: ci,
                        region: ri,
                    });
                }
            }
        }
        let patterns = cover
            .cells
            .iter()
            .map(|cell| {
                let b = cell.barycenter();
                built
                    .iter()
                    .enumerate()
                    .filter(|(_, r)| r.h.contains(&b))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        Ok(RegionFamily {
            cover,
            regions: built,
            upward,
            patterns,
        })
    }

    pub fn cover(&self) -> &PolytopeCover {
        &self.cover
    }

    pub fn regions(&self) -> &[Cell] {
        &self.regions
    }

    /// Upward-closure flag per region, as validated at construction.
    pub fn upward_flags(&self) -> &[bool] {
        &self.upward
    }

    pub fn pattern_of(&self, cell: usize) -> &BTreeSet<usize> {
        &self.patterns[cell]
    }

    /// Cells whose membership pattern is exactly the given region set.
    pub fn region_cells(&self, marked: &[usize]) -> Vec<usize> {
        let want: BTreeSet<usize> = marked.iter().copied().collect();
        (0..self.patterns.len())
            .filter(|&i| self.patterns[i] == want)
            .collect()
    }

    /// Largest number of cells sharing one membership pattern.
    pub fn max_pattern_cells(&self) -> usize {
        let mut counts: BTreeMap<&BTreeSet<usize>, usize> = BTreeMap::new();
        for pat in &self.patterns {
            *counts.entry(pat).or_insert(0) += 1;
        }
        counts.values().copied().max().unwrap_or(0)
    }

    /// Total number of adjacency components over all membership patterns.
    pub fn total_pattern_components(&self) -> Result<usize, ChamberError> {
        let mut by_pattern: BTreeMap<&BTreeSet<usize>, Vec<usize>> = BTreeMap::new();
        for (i, pat) in self.patterns.iter().enumerate() {
            by_pattern.entry(pat).or_default().push(i);
        }
        let mut total = 0;
        for cells in by_pattern.values() {
            total += self.cover.components_of(cells)?.len();
        }
        Ok(total)
    }

    /// Flat counts of the unmarked part of the cover.
    ///
    /// For codimension `d = 1..=p`, counts the distinct affine flats spanned
    /// by codimension-`d` faces of unmarked cells, skipping faces contained
    /// in the ambient boundary. Every counted flat is the intersection of two
    /// distinct flats counted one codimension up, so the counts satisfy
    /// `counts[d] <= counts[d-1]^2`.
    pub fn unmarked_face_counts(&self) -> Result<Vec<usize>, ChamberError> {
        let p = self.cover.dim();
        let idx = self.region_cells(&[]);
        let mut counts = vec![0; p];
        if idx.is_empty() {
            return Ok(counts);
        }
        let ambient_facets = self.cover.ambient.h.constraints();
        let mut flats: Vec<BTreeSet<Vec<Vec<BigInt>>>> = vec![BTreeSet::new(); p];
        for &i in &idx {
            let cell = &self.cover.cells[i];
            let lattice = face_lattice(&cell.v)?;
            for (layer_idx, layer) in lattice.layers.iter().enumerate() {
                for vset in layer {
                    let face: Vec<QVector> = vset
                        .iter()
                        .map(|&j| cell.v.vertices()[j].clone())
                        .collect();
                    if ambient_facets
                        .iter()
                        .any(|c| face.iter().all(|v| c.tight_at(v)))
                    {
                        continue; // contained in the ambient boundary
                    }
                    flats[layer_idx].insert(affine_hull_key(&face));
                }
            }
        }
        for (d, set) in flats.iter().enumerate() {
            counts[d] = set.len();
        }
        Ok(counts)
    }
}

/// The closed-form cell bound `m (1 + k 2^k sum_{d=1}^{p} (mk)^(2^(d-1)))`.
///
/// Dominates the total number of adjacency components over all membership
/// patterns of a region family with `k` upward-closed regions in `R^p`, when
/// every pattern consists of at most `m` cells.
pub fn component_cell_bound(k: usize, m: usize, p: usize) -> Result<BigInt, ChamberError> {
    if k == 0 || m == 0 || p == 0 || p > 16 {
        return Err(ChamberError::InvalidParameter);
    }
    let mk = BigInt::from(m) * BigInt::from(k);
    let mut sum = BigInt::zero();
    for d in 1..=p {
        sum += mk.pow(1u32 << (d - 1));
    }
    let factor = BigInt::one() + (BigInt::one() << k) * BigInt::from(k) * sum;
    Ok(BigInt::from(m) * factor)
}
