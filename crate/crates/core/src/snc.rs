//! Discrepancy calculus over simple-normal-crossing pairs in dimensions 2
//! and 3: combinatorial blow-up bookkeeping, finite enumeration of
//! low-discrepancy valuations, and singularity classification.
//!
//! The configuration is purely combinatorial: divisors with coefficients and
//! discrepancies, plus incidence lists of pair and triple intersection
//! components. Blowing up a stratum appends an exceptional divisor whose
//! discrepancy is `codim - 1` plus the discrepancies of the divisors through
//! the center, and rewrites the incidence lists locally.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rat::{rat_int, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SncError {
    InvalidDimension,
    CoefficientOutOfRange { name: String },
    DuplicateDivisorName { name: String },
    UnknownDivisor,
    InvalidStratum,
    /// Some divisor has log discrepancy 0 (boundary coefficient 1), so
    /// blow-up chains need not raise discrepancy and the enumeration could
    /// recurse forever.
    NonTermination,
    /// The enumeration is only complete for thresholds at most 1.
    ThresholdTooLarge,
    BoundViolation,
    LengthMismatch,
}

impl fmt::Display for SncError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SncError::InvalidDimension => write!(f, "ambient dimension must be 2 or 3"),
            SncError::CoefficientOutOfRange { name } => {
                write!(f, "coefficient of {name:?} must lie in [0, 1]")
            }
            SncError::DuplicateDivisorName { name } => {
                write!(f, "divisor name {name:?} is empty or repeated")
            }
            SncError::UnknownDivisor => write!(f, "divisor index out of range"),
            SncError::InvalidStratum => write!(f, "center is not a stratum of the configuration"),
            SncError::NonTermination => {
                write!(f, "a divisor has log discrepancy 0; enumeration would not terminate")
            }
            SncError::ThresholdTooLarge => write!(f, "threshold must be at most 1"),
            SncError::BoundViolation => write!(f, "value outside the required open interval"),
            SncError::LengthMismatch => write!(f, "vector lengths differ"),
        }
    }
}

impl core::error::Error for SncError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum DivisorOrigin {
    Boundary,
    Exceptional,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SncDivisor {
    pub name: String,
    /// Boundary coefficient; 0 for exceptional divisors.
    pub coefficient: Rational,
    pub discrepancy: Rational,
    pub origin: DivisorOrigin,
    /// Number of blow-ups in the longest chain realizing this divisor.
    pub depth: usize,
    /// Multiplicity of each original boundary divisor along this one.
    pub multiplicities: Vec<BigInt>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct PairComponent {
    divisors: [usize; 2],
}

/// One point of a triple intersection; `on` links to the pair component
/// carrying it, for each of the three sub-pairs in sorted order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct TripleComponent {
    divisors: [usize; 3],
    on: [u32; 3],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SncConfig {
    dim: usize,
    divisors: Vec<SncDivisor>,
    boundary: usize,
    pairs: BTreeMap<u32, PairComponent>,
    triples: BTreeMap<u32, TripleComponent>,
    next_id: u32,
}

fn sorted_pair(a: usize, b: usize) -> [usize; 2] {
    if a <= b { [a, b] } else { [b, a] }
}

impl SncConfig {
    /// Build a boundary configuration. Pair strata list `(i, j, count)`
    /// intersection components of two divisors; triple strata (dimension 3
    /// only) list `(i, j, k, count)` intersection points, each attached to
    /// the first component of its three sub-pair curves.
    pub fn new(
        dim: usize,
        divisors: &[(&str, Rational)],
        pair_strata: &[(usize, usize, usize)],
        triple_strata: &[(usize, usize, usize, usize)],
    ) -> Result<SncConfig, SncError> {
        if dim != 2 && dim != 3 {
            return Err(SncError::InvalidDimension);
        }
        let mut ds: Vec<SncDivisor> = Vec::with_capacity(divisors.len());
        for (i, (name, coefficient)) in divisors.iter().enumerate() {
            if name.is_empty() || ds.iter().any(|d| d.name == *name) {
                return Err(SncError::DuplicateDivisorName {
                    name: String::from(*name),
                });
            }
            if coefficient < &Rational::zero() || coefficient > &Rational::one() {
                return Err(SncError::CoefficientOutOfRange {
                    name: String::from(*name),
                });
            }
            let mut multiplicities = vec![BigInt::zero(); divisors.len()];
            multiplicities[i] = BigInt::one();
            ds.push(SncDivisor {
                name: String::from(*name),
                coefficient: coefficient.clone(),
                discrepancy: -coefficient,
                origin: DivisorOrigin::Boundary,
                depth: 0,
                multiplicities,
            });
        }
        let n = ds.len();
        let mut cfg = SncConfig {
            dim,
            divisors: ds,
            boundary: n,
            pairs: BTreeMap::new(),
            triples: BTreeMap::new(),
            next_id: 0,
        };
        let mut seen_pairs = BTreeSet::new();
        for &(a, b, count) in pair_strata {
            if a >= n || b >= n {
                return Err(SncError::UnknownDivisor);
            }
            if a == b || !seen_pairs.insert(sorted_pair(a, b)) {
                return Err(SncError::InvalidStratum);
            }
            for _ in 0..count {
                cfg.add_pair(sorted_pair(a, b));
            }
        }
        let mut seen_triples = BTreeSet::new();
        for &(a, b, c, count) in triple_strata {
            if dim != 3 {
                return Err(SncError::InvalidStratum);
            }
            if a >= n || b >= n || c >= n {
                return Err(SncError::UnknownDivisor);
            }
            let mut d = [a, b, c];
            d.sort_unstable();
            if d[0] == d[1] || d[1] == d[2] || !seen_triples.insert(d) {
                return Err(SncError::InvalidStratum);
            }
            let on = [
                cfg.first_pair_component(d[0], d[1])?,
                cfg.first_pair_component(d[0], d[2])?,
                cfg.first_pair_component(d[1], d[2])?,
            ];
            for _ in 0..count {
                let id = cfg.fresh_id();
                cfg.triples.insert(id, TripleComponent { divisors: d, on });
            }
        }
        Ok(cfg)
    }

    fn fresh_id(&mut self) -> u32 {
        let id = self.next_id;
        self.next_id += 1;
        id
    }

    fn add_pair(&mut self, divisors: [usize; 2]) -> u32 {
        let id = self.fresh_id();
        self.pairs.insert(id, PairComponent { divisors });
        id
    }

    fn add_triple(&mut self, d: [usize; 3], links: &[([usize; 2], u32)]) {
        let mut d = d;
        d.sort_unstable();
        let find = |x: usize, y: usize| -> u32 {
            let key = sorted_pair(x, y);
            links
                .iter()
                .find(|(pair, _)| *pair == key)
                .expect("triple sub-pair link provided")
                .1
        };
        let on = [find(d[0], d[1]), find(d[0], d[2]), find(d[1], d[2])];
        let id = self.fresh_id();
        self.triples.insert(id, TripleComponent { divisors: d, on });
    }

    fn first_pair_component(&self, a: usize, b: usize) -> Result<u32, SncError> {
        let key = sorted_pair(a, b);
        self.pairs
            .iter()
            .find(|(_, c)| c.divisors == key)
            .map(|(id, _)| *id)
            .ok_or(SncError::InvalidStratum)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn divisors(&self) -> &[SncDivisor] {
        &self.divisors
    }

    pub fn boundary_count(&self) -> usize {
        self.boundary
    }

    pub fn divisor_index(&self, name: &str) -> Option<usize> {
        self.divisors.iter().position(|d| d.name == name)
    }

    pub fn pair_count(&self, a: usize, b: usize) -> usize {
        let key = sorted_pair(a, b);
        self.pairs.values().filter(|c| c.divisors == key).count()
    }

    pub fn triple_count(&self, a: usize, b: usize, c: usize) -> usize {
        let mut key = [a, b, c];
        key.sort_unstable();
        self.triples.values().filter(|t| t.divisors == key).count()
    }

    /// Aggregated pair strata as `(i, j, count)`, sorted.
    pub fn pair_strata(&self) -> Vec<(usize, usize, usize)> {
        let mut counts: BTreeMap<[usize; 2], usize> = BTreeMap::new();
        for c in self.pairs.values() {
            *counts.entry(c.divisors).or_default() += 1;
        }
        counts.into_iter().map(|([a, b], n)| (a, b, n)).collect()
    }

    /// Aggregated triple strata as `(i, j, k, count)`, sorted.
    pub fn triple_strata(&self) -> Vec<(usize, usize, usize, usize)> {
        let mut counts: BTreeMap<[usize; 3], usize> = BTreeMap::new();
        for t in self.triples.values() {
            *counts.entry(t.divisors).or_default() += 1;
        }
        counts
            .into_iter()
            .map(|([a, b, c], n)| (a, b, c, n))
            .collect()
    }

    fn fresh_exceptional_name(&self) -> String {
        let mut n = 1usize;
        loop {
            let name = format!("E{n}");
            if self.divisor_index(&name).is_none() {
                return name;
            }
            n += 1;
        }
    }

    fn resolve(&self, center: &Center) -> Result<Resolved, SncError> {
        match center {
            Center::Point(list) => {
                let mut v = list.clone();
                v.sort_unstable();
                v.dedup();
                if v.len() != list.len() {
                    return Err(SncError::InvalidStratum);
                }
                if v.iter().any(|&i| i >= self.divisors.len()) {
                    return Err(SncError::UnknownDivisor);
                }
                match v.len() {
                    0 => Ok(Resolved::Free),
                    1 => Ok(Resolved::OnDivisor(v[0])),
                    2 => Ok(Resolved::PairPoint(self.first_pair_component(v[0], v[1])?)),
                    3 if self.dim == 3 => {
                        let t = self
                            .triples
                            .iter()
                            .find(|(_, t)| t.divisors == [v[0], v[1], v[2]])
                            .map(|(id, _)| *id)
                            .ok_or(SncError::InvalidStratum)?;
                        Ok(Resolved::TriplePoint(t))
                    }
                    _ => Err(SncError::InvalidStratum),
                }
            }
            Center::Curve(a, b) => {
                if self.dim != 3 {
                    return Err(SncError::InvalidStratum);
                }
                if *a >= self.divisors.len() || *b >= self.divisors.len() {
                    return Err(SncError::UnknownDivisor);
                }
                if a == b {
                    return Err(SncError::InvalidStratum);
                }
                Ok(Resolved::CurveBlowup(self.first_pair_component(*a, *b)?))
            }
        }
    }

    fn center_parents(&self, res: &Resolved) -> Vec<usize> {
        match res {
            Resolved::Free => Vec::new(),
            Resolved::OnDivisor(i) => vec![*i],
            Resolved::PairPoint(id) | Resolved::CurveBlowup(id) => {
                self.pairs[id].divisors.to_vec()
            }
            Resolved::TriplePoint(id) => self.triples[id].divisors.to_vec(),
        }
    }

    /// Blow up a resolved center, returning the new configuration and the
    /// index of the exceptional divisor.
    fn apply(&self, res: &Resolved) -> (SncConfig, usize) {
        let mut cfg = self.clone();
        let parents = self.center_parents(res);
        let codim = match res {
            Resolved::CurveBlowup(_) => 2,
            _ => self.dim,
        };
        let mut discrepancy = rat_int(codim as i64 - 1);
        let mut multiplicities = vec![BigInt::zero(); self.boundary];
        let mut depth = 0usize;
        for &p in &parents {
            let d = &self.divisors[p];
            discrepancy += &d.discrepancy;
            for (m, pm) in multiplicities.iter_mut().zip(&d.multiplicities) {
                *m += pm;
            }
            depth = depth.max(d.depth);
        }
        let e = cfg.divisors.len();
        cfg.divisors.push(SncDivisor {
            name: cfg.fresh_exceptional_name(),
            coefficient: Rational::zero(),
            discrepancy,
            origin: DivisorOrigin::Exceptional,
            depth: depth + 1,
            multiplicities,
        });
        match *res {
            Resolved::Free => {}
            Resolved::OnDivisor(i) => {
                cfg.add_pair(sorted_pair(i, e));
            }
            Resolved::PairPoint(id) if self.dim == 2 => {
                let [a, b] = cfg.pairs.remove(&id).expect("resolved component").divisors;
                cfg.add_pair([a, e]);
                cfg.add_pair([b, e]);
            }
            Resolved::PairPoint(id) => {
                // Point on a double curve of a threefold: the curve survives
                // and now meets the exceptional plane in a triple point.
                let [a, b] = cfg.pairs[&id].divisors;
                let pa = cfg.add_pair([a, e]);
                let pb = cfg.add_pair([b, e]);
                cfg.add_triple([a, b, e], &[([a, b], id), ([a, e], pa), ([b, e], pb)]);
            }
            Resolved::TriplePoint(id) => {
                let t = cfg.triples.remove(&id).expect("resolved component");
                let [a, b, c] = t.divisors;
                let pa = cfg.add_pair([a, e]);
                let pb = cfg.add_pair([b, e]);
                let pc = cfg.add_pair([c, e]);
                cfg.add_triple([a, b, e], &[([a, b], t.on[0]), ([a, e], pa), ([b, e], pb)]);
                cfg.add_triple([a, c, e], &[([a, c], t.on[1]), ([a, e], pa), ([c, e], pc)]);
                cfg.add_triple([b, c, e], &[([b, c], t.on[2]), ([b, e], pb), ([c, e], pc)]);
            }
            Resolved::CurveBlowup(id) => {
                // The two surfaces through the curve are separated; each
                // triple point on the curve contributes a fiber of the
                // exceptional ruled surface over it.
                let comp = cfg.pairs.remove(&id).expect("resolved component");
                let [a, b] = comp.divisors;
                let sa = cfg.add_pair([a, e]);
                let sb = cfg.add_pair([b, e]);
                let linked: Vec<(u32, TripleComponent)> = cfg
                    .triples
                    .iter()
                    .filter(|(_, t)| t.on.contains(&id))
                    .map(|(tid, t)| (*tid, *t))
                    .collect();
                for (tid, t) in linked {
                    cfg.triples.remove(&tid);
                    let k = t
                        .divisors
                        .iter()
                        .copied()
                        .find(|&d| d != a && d != b)
                        .expect("triple contains a third divisor");
                    let c_ak = triple_link(&t, a, k);
                    let c_bk = triple_link(&t, b, k);
                    let fiber = cfg.add_pair(sorted_pair(k, e));
                    cfg.add_triple(
                        [a, k, e],
                        &[([a, k].min_max(), c_ak), ([a, e], sa), (sorted_pair(k, e), fiber)],
                    );
                    cfg.add_triple(
                        [b, k, e],
                        &[([b, k].min_max(), c_bk), ([b, e], sb), (sorted_pair(k, e), fiber)],
                    );
                }
            }
        }
        (cfg, e)
    }
}

trait MinMax {
    fn min_max(self) -> [usize; 2];
}

impl MinMax for [usize; 2] {
    fn min_max(self) -> [usize; 2] {
        sorted_pair(self[0], self[1])
    }
}

/// The pair component of `{x, y}` recorded on a triple component.
fn triple_link(t: &TripleComponent, x: usize, y: usize) -> u32 {
    let key = sorted_pair(x, y);
    let [d0, d1, d2] = t.divisors;
    let subpairs = [[d0, d1], [d0, d2], [d1, d2]];
    for (i, sp) in subpairs.iter().enumerate() {
        if *sp == key {
            return t.on[i];
        }
    }
    panic!("pair is not a face of the triple");
}

/// A blow-up center: a point lying on the listed divisors (0 to 3 of them;
/// a point on two divisors in dimension 3 means a generic point of the
/// first component of their double curve), or a whole double-curve
/// component in dimension 3. Multi-divisor centers act on the first
/// component of their stratum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Center {
    Point(Vec<usize>),
    Curve(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Resolved {
    Free,
    OnDivisor(usize),
    PairPoint(u32),
    TriplePoint(u32),
    CurveBlowup(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CenterKind {
    Curve,
    Point,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TrailStep {
    pub kind: CenterKind,
    /// Names of the divisors through the center, in creation order.
    pub divisors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationRecord {
    /// Chain-local exceptional name (the last divisor of the trail).
    pub name: String,
    pub discrepancy: Rational,
    /// Multiplicity of each original boundary divisor.
    pub multiplicities: Vec<BigInt>,
    /// Number of blow-ups realizing the valuation.
    pub depth: usize,
    pub trail: Vec<TrailStep>,
}

fn trail_step(cfg: &SncConfig, res: &Resolved) -> TrailStep {
    let kind = match res {
        Resolved::CurveBlowup(_) => CenterKind::Curve,
        _ => CenterKind::Point,
    };
    let divisors = cfg
        .center_parents(res)
        .into_iter()
        .map(|i| cfg.divisors[i].name.clone())
        .collect();
    TrailStep { kind, divisors }
}

/// Blow up one center. Returns the rewritten configuration together with
/// the record of the new exceptional divisor (single-step trail).
pub fn blowup_discrepancy(
    cfg: &SncConfig,
    center: &Center,
) -> Result<(SncConfig, ValuationRecord), SncError> {
    let res = cfg.resolve(center)?;
    let step = trail_step(cfg, &res);
    let (next, e) = cfg.apply(&res);
    let d = &next.divisors[e];
    let record = ValuationRecord {
        name: d.name.clone(),
        discrepancy: d.discrepancy.clone(),
        multiplicities: d.multiplicities.clone(),
        depth: d.depth,
        trail: vec![step],
    };
    Ok((next, record))
}

/// A stratum of the configuration, named by its divisor indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum StratumRef {
    Pair(usize, usize),
    Triple(usize, usize, usize),
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    pub records: Vec<ValuationRecord>,
    /// Largest chain length over all records (0 when empty).
    pub max_depth: usize,
}

type RootKey = (u32, CenterKind);
type RecordKey = (RootKey, Rational, Vec<(Rational, BigInt)>);

struct Search<'a> {
    threshold: &'a Rational,
    gap: Rational,
    boundary_coefficients: Vec<Rational>,
    records: BTreeMap<RecordKey, ValuationRecord>,
}

impl Search<'_> {
    fn multiplicity_key(&self, mults: &[BigInt]) -> Vec<(Rational, BigInt)> {
        let mut key: Vec<(Rational, BigInt)> = self
            .boundary_coefficients
            .iter()
            .cloned()
            .zip(mults.iter().cloned())
            .collect();
        key.sort();
        key
    }

    /// Blow up `res` on `cfg`; if the result stays under the threshold,
    /// record it and chase every stratum through the new exceptional.
    fn explore(
        &mut self,
        cfg: &SncConfig,
        res: Resolved,
        root: RootKey,
        trail: &[TrailStep],
        parent_discrepancy: Option<&Rational>,
    ) {
        let step = trail_step(cfg, &res);
        let (next, e) = cfg.apply(&res);
        let div = next.divisors[e].clone();
        if let Some(parent) = parent_discrepancy {
            debug_assert!(
                div.discrepancy >= parent + &self.gap,
                "chain discrepancies must rise by the coefficient gap"
            );
        }
        if div.discrepancy >= *self.threshold {
            return;
        }
        let mut chain = trail.to_vec();
        chain.push(step);
        let key = (
            root,
            div.discrepancy.clone(),
            self.multiplicity_key(&div.multiplicities),
        );
        let record = ValuationRecord {
            name: div.name.clone(),
            discrepancy: div.discrepancy.clone(),
            multiplicities: div.multiplicities.clone(),
            depth: div.depth,
            trail: chain.clone(),
        };
        match self.records.get_mut(&key) {
            None => {
                self.records.insert(key, record);
            }
            Some(existing) => {
                if (record.depth, &record.trail) < (existing.depth, &existing.trail) {
                    *existing = record;
                }
            }
        }
        let pair_ids: Vec<u32> = next
            .pairs
            .iter()
            .filter(|(_, c)| c.divisors.contains(&e))
            .map(|(id, _)| *id)
            .collect();
        for id in pair_ids {
            if next.dim == 3 {
                self.explore(
                    &next,
                    Resolved::CurveBlowup(id),
                    root,
                    &chain,
                    Some(&div.discrepancy),
                );
            }
            self.explore(
                &next,
                Resolved::PairPoint(id),
                root,
                &chain,
                Some(&div.discrepancy),
            );
        }
        let triple_ids: Vec<u32> = next
            .triples
            .iter()
            .filter(|(_, t)| t.divisors.contains(&e))
            .map(|(id, _)| *id)
            .collect();
        for id in triple_ids {
            self.explore(
                &next,
                Resolved::TriplePoint(id),
                root,
                &chain,
                Some(&div.discrepancy),
            );
        }
    }
}

/// Enumerate every valuation with center inside the strata `z` and
/// discrepancy below `threshold`, by recursive blow-up: the first center is
/// a component of a stratum of `z` (for a double curve in dimension 3, the
/// curve itself, a generic point of it, or any triple point on it), and
/// each later center is a stratum through the newest exceptional divisor.
/// Valuations reached along symmetric branches collapse to one record.
pub fn enumerate_low_discrepancy(
    cfg: &SncConfig,
    z: &[StratumRef],
    threshold: &Rational,
) -> Result<Enumeration, SncError> {
    if *threshold > Rational::one() {
        return Err(SncError::ThresholdTooLarge);
    }
    let mut max_crepant = Rational::zero();
    for d in &cfg.divisors {
        let c = -&d.discrepancy;
        if c > max_crepant {
            max_crepant = c;
        }
    }
    if max_crepant >= Rational::one() {
        return Err(SncError::NonTermination);
    }
    let gap = Rational::one() - &max_crepant;
    // Resolve the roots: (component id, first-center kind, resolved center).
    let mut spawns: BTreeSet<(RootKey, u32)> = BTreeSet::new();
    let mut spawn_centers: BTreeMap<RootKey, Resolved> = BTreeMap::new();
    let mut add_spawn = |root: RootKey, res: Resolved| {
        if spawns.insert((root, root.0)) {
            spawn_centers.insert(root, res);
        }
    };
    for stratum in z {
        match *stratum {
            StratumRef::Pair(a, b) => {
                if a >= cfg.divisors.len() || b >= cfg.divisors.len() {
                    return Err(SncError::UnknownDivisor);
                }
                if a == b {
                    return Err(SncError::InvalidStratum);
                }
                let key = sorted_pair(a, b);
                let comps: Vec<u32> = cfg
                    .pairs
                    .iter()
                    .filter(|(_, c)| c.divisors == key)
                    .map(|(id, _)| *id)
                    .collect();
                if comps.is_empty() {
                    return Err(SncError::InvalidStratum);
                }
                for id in comps {
                    if cfg.dim == 3 {
                        add_spawn((id, CenterKind::Curve), Resolved::CurveBlowup(id));
                        add_spawn((id, CenterKind::Point), Resolved::PairPoint(id));
                        for (tid, _) in cfg.triples.iter().filter(|(_, t)| t.on.contains(&id)) {
                            add_spawn((*tid, CenterKind::Point), Resolved::TriplePoint(*tid));
                        }
                    } else {
                        add_spawn((id, CenterKind::Point), Resolved::PairPoint(id));
                    }
                }
            }
            StratumRef::Triple(a, b, c) => {
                if cfg.dim != 3 {
                    return Err(SncError::InvalidStratum);
                }
                if a >= cfg.divisors.len() || b >= cfg.divisors.len() || c >= cfg.divisors.len() {
                    return Err(SncError::UnknownDivisor);
                }
                let mut key = [a, b, c];
                key.sort_unstable();
                if key[0] == key[1] || key[1] == key[2] {
                    return Err(SncError::InvalidStratum);
                }
                let comps: Vec<u32> = cfg
                    .triples
                    .iter()
                    .filter(|(_, t)| t.divisors == key)
                    .map(|(id, _)| *id)
                    .collect();
                if comps.is_empty() {
                    return Err(SncError::InvalidStratum);
                }
                for id in comps {
                    add_spawn((id, CenterKind::Point), Resolved::TriplePoint(id));
                }
            }
        }
    }
    let boundary_coefficients: Vec<Rational> = cfg.divisors[..cfg.boundary]
        .iter()
        .map(|d| d.coefficient.clone())
        .collect();
    let mut search = Search {
        threshold,
        gap,
        boundary_coefficients,
        records: BTreeMap::new(),
    };
    for (root, res) in spawn_centers {
        search.explore(cfg, res, root, &[], None);
    }
    let mut records: Vec<ValuationRecord> = search.records.into_values().collect();
    records.sort_by(|x, y| {
        (x.depth, &x.discrepancy, &x.trail).cmp(&(y.depth, &y.discrepancy, &y.trail))
    });
    let max_depth = records.iter().map(|r| r.depth).max().unwrap_or(0);
    Ok(Enumeration { records, max_depth })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Singularity {
    Terminal,
    Canonical,
    Klt,
    LogCanonical,
    NotLogCanonical,
}

/// Classify the pair carried by the configuration. Exceptional divisors
/// contribute through their crepant coefficients (the negatives of their
/// discrepancies), so a blown-up configuration classifies the same pair as
/// the one it came from. For a log smooth pair the minimal discrepancy is
/// attained by a first-level stratum blow-up, since chains only raise it.
pub fn classify_singularity(cfg: &SncConfig) -> Singularity {
    let crepant: Vec<Rational> = cfg.divisors.iter().map(|d| -&d.discrepancy).collect();
    let mut max_crepant = Rational::zero();
    for c in &crepant {
        if c > &max_crepant {
            max_crepant = c.clone();
        }
    }
    let mut exc_min = rat_int(cfg.dim as i64 - 1);
    for (d, c) in cfg.divisors.iter().zip(&crepant) {
        exc_min = exc_min.min(Rational::one() - c);
        if d.origin == DivisorOrigin::Exceptional {
            exc_min = exc_min.min(d.discrepancy.clone());
        }
    }
    for comp in cfg.pairs.values() {
        let [a, b] = comp.divisors;
        exc_min = exc_min.min(Rational::one() - &crepant[a] - &crepant[b]);
    }
    for t in cfg.triples.values() {
        let [a, b, c] = t.divisors;
        exc_min = exc_min.min(rat_int(2) - &crepant[a] - &crepant[b] - &crepant[c]);
    }
    if exc_min > Rational::zero() {
        Singularity::Terminal
    } else if exc_min >= Rational::zero() {
        Singularity::Canonical
    } else if max_crepant < Rational::one() {
        Singularity::Klt
    } else if max_crepant <= Rational::one() {
        Singularity::LogCanonical
    } else {
        Singularity::NotLogCanonical
    }
}

/// Discrepancy of a valuation against a boundary pushed across a birational
/// contraction: `a0 - sum b_i * mult_i`, where `a0` is the discrepancy over
/// the plain variety. `a0` must lie strictly between 0 and `rho_bound`.
pub fn restricted_discrepancy(
    a0: &BigInt,
    b: &[Rational],
    mults: &[BigInt],
    rho_bound: &BigInt,
) -> Result<Rational, SncError> {
    if b.len() != mults.len() {
        return Err(SncError::LengthMismatch);
    }
    if a0 <= &BigInt::zero() || a0 >= rho_bound {
        return Err(SncError::BoundViolation);
    }
    if mults.iter().any(|m| m < &BigInt::zero()) {
        return Err(SncError::BoundViolation);
    }
    let mut out = Rational::from(a0.clone());
    for (bi, mi) in b.iter().zip(mults) {
        out -= bi * Rational::from(mi.clone());
    }
    Ok(out)
}

/// Independent oracle for valuations realized by monomial weights over one
/// stratum: every primitive positive integer weight vector `w` with
/// discrepancy `sum w_i - 1 - sum w_i a_i` below the threshold, collapsed
/// to one representative per coefficient-preserving coordinate permutation
/// (weights sorted within equal-coefficient groups). Sorted by
/// (discrepancy, weights).
pub fn monomial_oracle(
    coefficients: &[Rational],
    threshold: &Rational,
) -> Result<Vec<(Vec<u64>, Rational)>, SncError> {
    if coefficients.is_empty() || coefficients.len() > 3 {
        return Err(SncError::InvalidStratum);
    }
    for a in coefficients {
        if a < &Rational::zero() {
            return Err(SncError::CoefficientOutOfRange {
                name: String::new(),
            });
        }
        if a >= &Rational::one() {
            return Err(SncError::NonTermination);
        }
    }
    let gaps: Vec<Rational> = coefficients
        .iter()
        .map(|a| Rational::one() - a)
        .collect();
    // sum w_i gap_i < 1 + threshold bounds each w_i.
    let budget = Rational::one() + threshold;
    let mut caps = Vec::with_capacity(gaps.len());
    for (i, g) in gaps.iter().enumerate() {
        let others: Rational = gaps
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, h)| h.clone())
            .sum();
        let room = &budget - &others;
        let mut cap = 0u64;
        while rat_int(cap as i64 + 1) * g < room {
            cap += 1;
        }
        caps.push(cap);
    }
    let mut found: BTreeSet<(Rational, Vec<u64>)> = BTreeSet::new();
    let mut w = vec![1u64; gaps.len()];
    'outer: loop {
        let total: Rational = w
            .iter()
            .zip(&gaps)
            .map(|(wi, g)| rat_int(*wi as i64) * g)
            .sum();
        if total < budget {
            let gcd = w.iter().fold(0u64, |acc, wi| acc.gcd(wi));
            if gcd == 1 {
                let discrepancy = total - Rational::one();
                // Canonical orbit representative: sort weights within each
                // group of equal coefficients.
                let mut groups: BTreeMap<&Rational, Vec<usize>> = BTreeMap::new();
                for (i, a) in coefficients.iter().enumerate() {
                    groups.entry(a).or_default().push(i);
                }
                let mut rep = w.clone();
                for positions in groups.values() {
                    let mut vals: Vec<u64> = positions.iter().map(|&i| w[i]).collect();
                    vals.sort_unstable();
                    for (&i, v) in positions.iter().zip(vals) {
                        rep[i] = v;
                    }
                }
                found.insert((discrepancy, rep));
            }
        }
        // Advance the odometer over 1..=cap per coordinate.
        for i in 0..w.len() {
            if w[i] < caps[i] {
                w[i] += 1;
                continue 'outer;
            }
            w[i] = 1;
        }
        break;
    }
    Ok(found.into_iter().map(|(d, w)| (w, d)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{snc_triple_point, snc_two_curves};
    use crate::rat::{ceil_int, rat};
    use proptest::prelude::*;

    fn discs(e: &Enumeration) -> Vec<Rational> {
        let mut out: Vec<Rational> = e.records.iter().map(|r| r.discrepancy.clone()).collect();
        out.sort();
        out
    }

    #[test]
    fn config_validation_rejects_bad_input() {
        assert_eq!(
            SncConfig::new(4, &[], &[], &[]).unwrap_err(),
            SncError::InvalidDimension
        );
        assert_eq!(
            SncConfig::new(2, &[("S", rat(1, 2)), ("S", rat(1, 2))], &[], &[]).unwrap_err(),
            SncError::DuplicateDivisorName {
                name: String::from("S")
            }
        );
        assert_eq!(
            SncConfig::new(2, &[("S", rat(3, 2))], &[], &[]).unwrap_err(),
            SncError::CoefficientOutOfRange {
                name: String::from("S")
            }
        );
        // Pair stratum listed twice, or out of range.
        assert_eq!(
            SncConfig::new(
                2,
                &[("A", rat(1, 2)), ("B", rat(1, 2))],
                &[(0, 1, 1), (1, 0, 1)],
                &[]
            )
            .unwrap_err(),
            SncError::InvalidStratum
        );
        assert_eq!(
            SncConfig::new(2, &[("A", rat(1, 2))], &[(0, 1, 1)], &[]).unwrap_err(),
            SncError::UnknownDivisor
        );
        // Triple strata need dimension 3 and all three sub-pair curves.
        assert_eq!(
            SncConfig::new(
                2,
                &[("A", rat(1, 2)), ("B", rat(1, 2)), ("C", rat(1, 2))],
                &[(0, 1, 1)],
                &[(0, 1, 2, 1)]
            )
            .unwrap_err(),
            SncError::InvalidStratum
        );
        assert_eq!(
            SncConfig::new(
                3,
                &[("A", rat(1, 2)), ("B", rat(1, 2)), ("C", rat(1, 2))],
                &[(0, 1, 1), (0, 2, 1)],
                &[(0, 1, 2, 1)]
            )
            .unwrap_err(),
            SncError::InvalidStratum
        );
    }

    #[test]
    fn first_level_discrepancies_follow_the_blowup_formulas() {
        // Triple point on a threefold: 2 - a1 - a2 - a3.
        let cfg = snc_triple_point(rat(3, 5), rat(1, 2), rat(1, 4));
        let (next, rec) = blowup_discrepancy(&cfg, &Center::Point(vec![0, 1, 2])).unwrap();
        assert_eq!(rec.discrepancy, rat_int(2) - rat(3, 5) - rat(1, 2) - rat(1, 4));
        assert_eq!(rec.name, "E1");
        assert_eq!(rec.depth, 1);
        assert_eq!(rec.multiplicities, vec![1.into(), 1.into(), 1.into()]);
        // The triple point is resolved into three corners on the plane.
        assert_eq!(next.triple_count(0, 1, 2), 0);
        assert_eq!(next.triple_count(0, 1, 3), 1);
        assert_eq!(next.triple_count(0, 2, 3), 1);
        assert_eq!(next.triple_count(1, 2, 3), 1);
        assert_eq!(next.pair_count(0, 3), 1);
        assert_eq!(next.pair_count(0, 1), 1);

        // Double curve: 1 - a1 - a2, and the surfaces separate.
        let (next, rec) = blowup_discrepancy(&cfg, &Center::Curve(0, 1)).unwrap();
        assert_eq!(rec.discrepancy, rat_int(1) - rat(3, 5) - rat(1, 2));
        assert_eq!(rec.multiplicities, vec![1.into(), 1.into(), 0.into()]);
        assert_eq!(next.pair_count(0, 1), 0);
        assert_eq!(next.pair_count(0, 3), 1);
        assert_eq!(next.pair_count(1, 3), 1);
        // The triple point on the curve becomes a fiber meeting both sheets.
        assert_eq!(next.triple_count(0, 1, 2), 0);
        assert_eq!(next.pair_count(2, 3), 1);
        assert_eq!(next.triple_count(0, 2, 3), 1);
        assert_eq!(next.triple_count(1, 2, 3), 1);

        // Generic point on the curve: 2 - a1 - a2, curve survives.
        let (next, rec) = blowup_discrepancy(&cfg, &Center::Point(vec![0, 1])).unwrap();
        assert_eq!(rec.discrepancy, rat_int(2) - rat(3, 5) - rat(1, 2));
        assert_eq!(next.pair_count(0, 1), 1);
        assert_eq!(next.triple_count(0, 1, 3), 1);

        // Free and single-divisor points.
        let surface = snc_two_curves(rat(3, 5), rat(3, 5));
        let (_, rec) = blowup_discrepancy(&surface, &Center::Point(vec![])).unwrap();
        assert_eq!(rec.discrepancy, rat_int(1));
        assert!(rec.multiplicities.iter().all(|m| m.is_zero()));
        let (_, rec) = blowup_discrepancy(&surface, &Center::Point(vec![0])).unwrap();
        assert_eq!(rec.discrepancy, rat(2, 5));
        let (_, rec) = blowup_discrepancy(&cfg, &Center::Point(vec![])).unwrap();
        assert_eq!(rec.discrepancy, rat_int(2));
    }

    #[test]
    fn blowup_rejects_missing_strata() {
        let surface = snc_two_curves(rat(1, 2), rat(1, 2));
        let disjoint = SncConfig::new(
            2,
            &[("A", rat(1, 2)), ("B", rat(1, 2))],
            &[],
            &[],
        )
        .unwrap();
        assert_eq!(
            blowup_discrepancy(&disjoint, &Center::Point(vec![0, 1])).unwrap_err(),
            SncError::InvalidStratum
        );
        assert_eq!(
            blowup_discrepancy(&surface, &Center::Curve(0, 1)).unwrap_err(),
            SncError::InvalidStratum
        );
        assert_eq!(
            blowup_discrepancy(&surface, &Center::Point(vec![0, 0])).unwrap_err(),
            SncError::InvalidStratum
        );
        assert_eq!(
            blowup_discrepancy(&surface, &Center::Point(vec![9])).unwrap_err(),
            SncError::UnknownDivisor
        );
    }

    #[test]
    fn two_meeting_curves_carry_a_three_step_chain() {
        let cfg = snc_two_curves(rat(3, 5), rat(3, 5));
        let e = enumerate_low_discrepancy(&cfg, &[StratumRef::Pair(0, 1)], &Rational::one())
            .unwrap();
        assert_eq!(e.records.len(), 3);
        assert_eq!(discs(&e), vec![rat(-1, 5), rat(1, 5), rat(3, 5)]);
        let depths: Vec<usize> = e.records.iter().map(|r| r.depth).collect();
        assert_eq!(depths, vec![1, 2, 3]);
        assert_eq!(e.max_depth, 3);
        // The surviving representatives walk along the first curve.
        assert_eq!(e.records[0].multiplicities, vec![1.into(), 1.into()]);
        assert_eq!(e.records[1].multiplicities, vec![2.into(), 1.into()]);
        assert_eq!(e.records[2].multiplicities, vec![3.into(), 1.into()]);
        assert!(e.records.iter().all(|r| r.discrepancy < Rational::one()));
    }

    #[test]
    fn chain_discrepancies_match_replay() {
        let cfg = snc_two_curves(rat(3, 5), rat(3, 5));
        let e = enumerate_low_discrepancy(&cfg, &[StratumRef::Pair(0, 1)], &Rational::one())
            .unwrap();
        let gap = rat(2, 5);
        for record in &e.records {
            let mut current = cfg.clone();
            let mut last = None;
            for step in &record.trail {
                let indices: Vec<usize> = step
                    .divisors
                    .iter()
                    .map(|n| current.divisor_index(n).expect("trail names resolve"))
                    .collect();
                let center = match step.kind {
                    CenterKind::Point => Center::Point(indices),
                    CenterKind::Curve => Center::Curve(indices[0], indices[1]),
                };
                let (next, rec) = blowup_discrepancy(&current, &center).unwrap();
                if let Some(prev) = &last {
                    assert!(rec.discrepancy >= prev + &gap);
                }
                last = Some(rec.discrepancy.clone());
                current = next;
            }
            assert_eq!(last.unwrap(), record.discrepancy);
        }
    }

    #[test]
    fn zero_coefficients_give_an_empty_list() {
        let cfg = snc_two_curves(Rational::zero(), Rational::zero());
        let e = enumerate_low_discrepancy(&cfg, &[StratumRef::Pair(0, 1)], &Rational::one())
            .unwrap();
        assert!(e.records.is_empty());
        assert_eq!(e.max_depth, 0);
    }

    #[test]
    fn unit_coefficient_trips_the_termination_guard() {
        let cfg = snc_two_curves(Rational::one(), rat(1, 2));
        assert_eq!(
            enumerate_low_discrepancy(&cfg, &[StratumRef::Pair(0, 1)], &Rational::one())
                .unwrap_err(),
            SncError::NonTermination
        );
        let cfg = snc_two_curves(rat(1, 2), rat(1, 2));
        assert_eq!(
            enumerate_low_discrepancy(&cfg, &[StratumRef::Pair(0, 1)], &rat(3, 2)).unwrap_err(),
            SncError::ThresholdTooLarge
        );
    }

    #[test]
    fn triple_point_enumeration_matches_the_weight_oracle() {
        let cfg = snc_triple_point(rat(3, 5), rat(3, 5), rat(3, 5));
        let e = enumerate_low_discrepancy(&cfg, &[StratumRef::Triple(0, 1, 2)], &Rational::one())
            .unwrap();
        assert_eq!(e.records.len(), 2);
        assert_eq!(discs(&e), vec![rat(1, 5), rat(3, 5)]);
        assert_eq!(e.max_depth, 2);
        let oracle =
            monomial_oracle(&[rat(3, 5), rat(3, 5), rat(3, 5)], &Rational::one()).unwrap();
        assert_eq!(oracle.len(), e.records.len());
        let mut oracle_discs: Vec<Rational> = oracle.iter().map(|(_, d)| d.clone()).collect();
        oracle_discs.sort();
        assert_eq!(oracle_discs, discs(&e));
        assert_eq!(oracle[0].0, vec![1, 1, 1]);
        assert_eq!(oracle[1].0, vec![1, 1, 2]);
    }

    #[test]
    fn two_curve_enumeration_matches_the_weight_oracle_exactly() {
        // Asymmetric coefficients: no two branches collapse.
        let cfg = snc_two_curves(rat(1, 2), rat(3, 5));
        let e = enumerate_low_discrepancy(&cfg, &[StratumRef::Pair(0, 1)], &Rational::one())
            .unwrap();
        let oracle = monomial_oracle(&[rat(1, 2), rat(3, 5)], &Rational::one()).unwrap();
        assert_eq!(e.records.len(), 5);
        assert_eq!(oracle.len(), 5);
        let mut oracle_discs: Vec<Rational> = oracle.iter().map(|(_, d)| d.clone()).collect();
        oracle_discs.sort();
        assert_eq!(oracle_discs, discs(&e));
        assert_eq!(
            discs(&e),
            vec![rat(-1, 10), rat(3, 10), rat(2, 5), rat(7, 10), rat(9, 10)]
        );
    }

    #[test]
    fn oracle_orbits_collapse_symmetric_weights() {
        let sym = monomial_oracle(&[rat(3, 5), rat(3, 5)], &Rational::one()).unwrap();
        let reps: Vec<Vec<u64>> = sym.iter().map(|(w, _)| w.clone()).collect();
        assert_eq!(reps, vec![vec![1, 1], vec![1, 2], vec![1, 3]]);
        // Distinct coefficients keep transposed weights apart.
        let asym = monomial_oracle(&[rat(1, 2), rat(3, 5)], &Rational::one()).unwrap();
        let reps: Vec<Vec<u64>> = asym.iter().map(|(w, _)| w.clone()).collect();
        assert!(reps.contains(&vec![1, 2]));
        assert!(reps.contains(&vec![2, 1]));
    }

    #[test]
    fn pair_root_includes_its_triple_points() {
        let cfg = snc_triple_point(rat(3, 5), rat(3, 5), rat(3, 5));
        let e = enumerate_low_discrepancy(&cfg, &[StratumRef::Pair(0, 1)], &Rational::one())
            .unwrap();
        let depth_one: Vec<Rational> = e
            .records
            .iter()
            .filter(|r| r.depth == 1)
            .map(|r| r.discrepancy.clone())
            .collect();
        // The curve blow-up and the triple point sitting on the curve.
        assert!(depth_one.contains(&rat(-1, 5)));
        assert!(depth_one.contains(&rat(1, 5)));
    }

    #[test]
    fn singularity_classification_cascade() {
        let disjoint = SncConfig::new(
            2,
            &[("A", rat(2, 5)), ("B", rat(1, 2))],
            &[],
            &[],
        )
        .unwrap();
        assert_eq!(classify_singularity(&disjoint), Singularity::Terminal);
        assert_eq!(
            classify_singularity(&snc_two_curves(rat(1, 2), rat(1, 2))),
            Singularity::Canonical
        );
        assert_eq!(
            classify_singularity(&snc_two_curves(rat(3, 5), rat(3, 5))),
            Singularity::Klt
        );
        assert_eq!(
            classify_singularity(&snc_two_curves(Rational::one(), Rational::one())),
            Singularity::LogCanonical
        );
        // A lone coefficient-1 divisor is canonical but not klt.
        let lone = SncConfig::new(2, &[("A", Rational::one())], &[], &[]).unwrap();
        assert_eq!(classify_singularity(&lone), Singularity::Canonical);
        // Threefold thresholds: strict pairwise sums below 1 and triple
        // sums below 2 stay terminal; equality turns canonical.
        assert_eq!(
            classify_singularity(&snc_triple_point(rat(2, 5), rat(2, 5), rat(2, 5))),
            Singularity::Terminal
        );
        assert_eq!(
            classify_singularity(&snc_triple_point(rat(1, 2), rat(1, 2), rat(1, 2))),
            Singularity::Canonical
        );
        // Classification is stable under blowing up (crepant bookkeeping).
        let cfg = snc_two_curves(rat(3, 5), rat(3, 5));
        let (blown, _) = blowup_discrepancy(&cfg, &Center::Point(vec![0, 1])).unwrap();
        assert_eq!(classify_singularity(&blown), Singularity::Klt);
    }

    #[test]
    fn restricted_discrepancy_bounds() {
        assert_eq!(
            restricted_discrepancy(&1.into(), &[rat(1, 2)], &[1.into()], &2.into()).unwrap(),
            rat(1, 2)
        );
        assert_eq!(
            restricted_discrepancy(&1.into(), &[rat(1, 2)], &[1.into()], &1.into()).unwrap_err(),
            SncError::BoundViolation
        );
        assert_eq!(
            restricted_discrepancy(&0.into(), &[rat(1, 2)], &[1.into()], &2.into()).unwrap_err(),
            SncError::BoundViolation
        );
        assert_eq!(
            restricted_discrepancy(&1.into(), &[rat(1, 2)], &[], &2.into()).unwrap_err(),
            SncError::LengthMismatch
        );
        // Matches the double-curve blow-up formula with a0 = 1.
        let b = [rat(3, 10), rat(2, 5), rat(1, 5)];
        let cfg = snc_triple_point(b[0].clone(), b[1].clone(), b[2].clone());
        let (_, rec) = blowup_discrepancy(&cfg, &Center::Curve(0, 1)).unwrap();
        assert_eq!(
            rec.discrepancy,
            restricted_discrepancy(&1.into(), &b, &[1.into(), 1.into(), 0.into()], &2.into())
                .unwrap()
        );
    }

    #[test]
    fn chain_depth_respects_the_gap_bound() {
        for (cfg, z) in [
            (
                snc_two_curves(rat(3, 5), rat(3, 5)),
                vec![StratumRef::Pair(0, 1)],
            ),
            (
                snc_two_curves(rat(1, 2), rat(3, 5)),
                vec![StratumRef::Pair(0, 1)],
            ),
            (
                snc_triple_point(rat(3, 5), rat(3, 5), rat(3, 5)),
                vec![StratumRef::Triple(0, 1, 2)],
            ),
        ] {
            let threshold = Rational::one();
            let e = enumerate_low_discrepancy(&cfg, &z, &threshold).unwrap();
            let max_a = cfg
                .divisors()
                .iter()
                .map(|d| d.coefficient.clone())
                .max()
                .unwrap();
            let gap = Rational::one() - &max_a;
            let bound = ceil_int(&((threshold + max_a) / gap));
            assert!(BigInt::from(e.max_depth) <= bound);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn surface_point_enumeration_equals_the_monomial_oracle(
            n1 in 1i64..5, d1 in 2i64..6, n2 in 1i64..5, d2 in 2i64..6,
        ) {
            prop_assume!(n1 < d1 && n2 < d2);
            let a1 = rat(n1, d1);
            let a2 = rat(n2, d2);
            let cfg = snc_two_curves(a1.clone(), a2.clone());
            let e = enumerate_low_discrepancy(
                &cfg,
                &[StratumRef::Pair(0, 1)],
                &Rational::one(),
            ).unwrap();
            let oracle = monomial_oracle(&[a1, a2], &Rational::one()).unwrap();
            prop_assert_eq!(e.records.len(), oracle.len());
            let mut oracle_discs: Vec<Rational> =
                oracle.iter().map(|(_, d)| d.clone()).collect();
            oracle_discs.sort();
            prop_assert_eq!(oracle_discs, discs(&e));
        }
    }
}
