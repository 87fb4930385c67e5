//! Hyperplanes meeting every segment of a family.
//!
//! For segments on rays from a common apex `o`, hyperplanes avoiding `o` are
//! written `{y : ⟨a, y - o⟩ = 1}` and identified with their pole `a`. Meeting
//! a segment is then a pair of linear inequalities on `a`, so existence of a
//! transversal is an exact LP feasibility question. Segments on parallel
//! lines are handled the same way with hyperplanes written as graphs of
//! affine functionals.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{AffineSubspace, ConvexBody, Hyperplane, Point};
use crate::linalg;
use crate::lp::{self, LinearProgram, LpOutcome, Relation};
use crate::scalar::{Field, Scalar};

/// Largest family [`helly_check`] will enumerate.
pub const HELLY_LIMIT: usize = 25;

/// `{s·u : s ∈ [s_lo, s_hi]}`, in coordinates with the apex at the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RaySegment {
    pub direction: Vec<Scalar>,
    pub s_lo: Scalar,
    pub s_hi: Scalar,
}

impl RaySegment {
    pub fn new(direction: Vec<Scalar>, s_lo: Scalar, s_hi: Scalar) -> Result<Self> {
        if linalg::is_zero_vec(&direction) {
            return Err(Error::MalformedInput("segment direction is zero".into()));
        }
        if !s_lo.is_positive() || s_lo > s_hi {
            return Err(Error::MalformedInput(
                "segment parameters must satisfy 0 < s_lo <= s_hi".into(),
            ));
        }
        Ok(Self {
            direction,
            s_lo,
            s_hi,
        })
    }

    pub fn dim(&self) -> usize {
        self.direction.len()
    }

    pub fn endpoints(&self) -> (Point, Point) {
        (
            Point::new(linalg::scale(&self.direction, &self.s_lo)),
            Point::new(linalg::scale(&self.direction, &self.s_hi)),
        )
    }
}

/// `[(x, lo), (x, hi)]`, a segment parallel to the last axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParallelSegment {
    pub base: Vec<Scalar>,
    pub lo: Scalar,
    pub hi: Scalar,
}

impl ParallelSegment {
    pub fn new(base: Vec<Scalar>, lo: Scalar, hi: Scalar) -> Result<Self> {
        if lo > hi {
            return Err(Error::MalformedInput("segment band must satisfy lo <= hi".into()));
        }
        Ok(Self { base, lo, hi })
    }
}

/// `lo ≤ ⟨normal, a⟩ ≤ hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Band {
    pub normal: Vec<Scalar>,
    pub lo: Scalar,
    pub hi: Scalar,
}

impl Band {
    pub fn contains(&self, a: &[Scalar]) -> bool {
        let t = linalg::dot(&self.normal, a);
        self.lo <= t && t <= self.hi
    }
}

/// The poles of the hyperplanes meeting `seg`.
pub fn segment_constraint(seg: &RaySegment) -> Band {
    Band {
        normal: seg.direction.clone(),
        lo: Scalar::one() / &seg.s_hi,
        hi: Scalar::one() / &seg.s_lo,
    }
}

/// The pole of `{y : ⟨normal, y⟩ = offset}` with respect to the unit sphere
/// around `o`: the vector `a` with `H = {y : ⟨a, y - o⟩ = 1}`.
pub fn pole<F: Field>(o: &[F], normal: &[F], offset: F) -> Result<Vec<F>> {
    let mut beta = offset;
    for (n, x) in normal.iter().zip(o) {
        beta = beta - n.clone() * x.clone();
    }
    if beta.is_zero() {
        return Err(Error::UndefinedPole);
    }
    Ok(normal.iter().map(|n| n.clone() / beta.clone()).collect())
}

/// Inverse of [`pole`]. `None` for `a = 0`.
pub fn hyperplane_from_pole(o: &[Scalar], a: &[Scalar]) -> Option<Hyperplane> {
    if linalg::is_zero_vec(a) {
        return None;
    }
    Some(Hyperplane::new(a.to_vec(), Scalar::one() + linalg::dot(a, o)))
}

/// A transversal, as a pole or as the graph of `x ↦ ⟨slope, x⟩ + intercept`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Transversal {
    Pole(Vec<Scalar>),
    Graph { slope: Vec<Scalar>, intercept: Scalar },
}

/// A transversal together with where it meets each segment: the ray
/// parameter `s` for ray families, the height for parallel ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperplaneCert {
    pub hyperplane: Transversal,
    pub hits: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransversalOutcome {
    Feasible(HyperplaneCert),
    /// Indices of a family that has no transversal but loses that property
    /// when any member is dropped.
    Infeasible { subfamily: Vec<usize> },
}

impl TransversalOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, TransversalOutcome::Feasible(_))
    }
}

/// Segments on rays from a common apex, or on parallel lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegmentFamily {
    Rays {
        dim: usize,
        apex: Point,
        segments: Vec<RaySegment>,
    },
    Parallel {
        dim: usize,
        segments: Vec<ParallelSegment>,
    },
}

impl SegmentFamily {
    pub fn dim(&self) -> usize {
        match self {
            SegmentFamily::Rays { dim, .. } | SegmentFamily::Parallel { dim, .. } => *dim,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            SegmentFamily::Rays { segments, .. } => segments.len(),
            SegmentFamily::Parallel { segments, .. } => segments.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The members at `idx`, in order.
    pub fn subfamily(&self, idx: &[usize]) -> SegmentFamily {
        match self {
            SegmentFamily::Rays { dim, apex, segments } => SegmentFamily::Rays {
                dim: *dim,
                apex: apex.clone(),
                segments: idx.iter().map(|&i| segments[i].clone()).collect(),
            },
            SegmentFamily::Parallel { dim, segments } => SegmentFamily::Parallel {
                dim: *dim,
                segments: idx.iter().map(|&i| segments[i].clone()).collect(),
            },
        }
    }

    pub fn check(&self) -> Result<()> {
        let d = self.dim();
        let bad = |found| Err(Error::DimensionMismatch { expected: d, found });
        match self {
            SegmentFamily::Rays { apex, segments, .. } => {
                if apex.dim() != d {
                    return bad(apex.dim());
                }
                if let Some(s) = segments.iter().find(|s| s.dim() != d) {
                    return bad(s.dim());
                }
            }
            SegmentFamily::Parallel { segments, .. } => {
                if d == 0 {
                    return Err(Error::MalformedInput("dimension must be positive".into()));
                }
                if let Some(s) = segments.iter().find(|s| s.base.len() + 1 != d) {
                    return bad(s.base.len() + 1);
                }
            }
        }
        Ok(())
    }

    /// Slab constraints on the transversal parameters, one per member.
    fn bands(&self) -> Vec<Band> {
        match self {
            SegmentFamily::Rays { segments, .. } => segments.iter().map(segment_constraint).collect(),
            SegmentFamily::Parallel { segments, .. } => segments
                .iter()
                .map(|s| {
                    let mut normal = s.base.clone();
                    normal.push(Scalar::one());
                    Band {
                        normal,
                        lo: s.lo.clone(),
                        hi: s.hi.clone(),
                    }
                })
                .collect(),
        }
    }

    /// Number of transversal parameters.
    fn params(&self) -> usize {
        self.dim()
    }
}

/// LP over the bands; `Err` carries the indices of the bands in the
/// infeasibility certificate.
fn solve_bands(params: usize, bands: &[Band]) -> std::result::Result<Vec<Scalar>, Vec<usize>> {
    let mut program = LinearProgram::new(params);
    let mut owner = Vec::new();
    for (i, b) in bands.iter().enumerate() {
        if b.lo == b.hi {
            program.add(b.normal.clone(), Relation::Eq, b.lo.clone());
            owner.push(i);
        } else {
            program.add(b.normal.clone(), Relation::Ge, b.lo.clone());
            program.add(b.normal.clone(), Relation::Le, b.hi.clone());
            owner.push(i);
            owner.push(i);
        }
    }
    match program.solve() {
        LpOutcome::Optimal { point, .. } => Ok(point),
        LpOutcome::Infeasible { conflict } => {
            let mut idx: Vec<usize> = conflict.into_iter().map(|k| owner[k]).collect();
            idx.sort_unstable();
            idx.dedup();
            Err(idx)
        }
        LpOutcome::Unbounded => unreachable!("feasibility problems have a zero objective"),
    }
}

fn feasible(params: usize, bands: &[Band], idx: &[usize]) -> bool {
    let sub: Vec<Band> = idx.iter().map(|&i| bands[i].clone()).collect();
    solve_bands(params, &sub).is_ok()
}

/// Shrinks an infeasible index set until dropping any member makes it
/// feasible.
fn deletion_filter(params: usize, bands: &[Band], mut idx: Vec<usize>) -> Vec<usize> {
    let mut k = 0;
    while k < idx.len() {
        let mut trial = idx.clone();
        trial.remove(k);
        if feasible(params, bands, &trial) {
            k += 1;
        } else {
            idx = trial;
        }
    }
    idx
}

fn solve_family(family: &SegmentFamily) -> Result<TransversalOutcome> {
    family.check()?;
    let bands = family.bands();
    let params = family.params();
    match solve_bands(params, &bands) {
        Ok(point) => {
            let hits: Vec<Scalar> = match family {
                SegmentFamily::Rays { segments, .. } => segments
                    .iter()
                    .map(|s| Scalar::one() / linalg::dot(&point, &s.direction))
                    .collect(),
                SegmentFamily::Parallel { .. } => {
                    bands.iter().map(|b| linalg::dot(&b.normal, &point)).collect()
                }
            };
            let hyperplane = match family {
                SegmentFamily::Rays { .. } => Transversal::Pole(point),
                SegmentFamily::Parallel { .. } => {
                    let mut slope = point;
                    let intercept = slope.pop().unwrap();
                    Transversal::Graph { slope, intercept }
                }
            };
            Ok(TransversalOutcome::Feasible(HyperplaneCert { hyperplane, hits }))
        }
        Err(conflict) => Ok(TransversalOutcome::Infeasible {
            subfamily: deletion_filter(params, &bands, conflict),
        }),
    }
}

/// A hyperplane avoiding the apex that meets every segment, or a minimal
/// family without one.
pub fn transversal_rays(apex: &Point, segments: &[RaySegment]) -> Result<TransversalOutcome> {
    if segments.is_empty() {
        return Err(Error::DegenerateFamily);
    }
    solve_family(&SegmentFamily::Rays {
        dim: apex.dim(),
        apex: apex.clone(),
        segments: segments.to_vec(),
    })
}

/// A hyperplane not parallel to the segments that meets each of them, or a
/// minimal family without one. `dim` is the ambient dimension; bases have
/// `dim - 1` coordinates.
pub fn transversal_parallel(dim: usize, segments: &[ParallelSegment]) -> Result<TransversalOutcome> {
    solve_family(&SegmentFamily::Parallel {
        dim,
        segments: segments.to_vec(),
    })
}

pub fn transversal(family: &SegmentFamily) -> Result<TransversalOutcome> {
    match family {
        SegmentFamily::Rays { apex, segments, .. } => {
            family.check()?;
            transversal_rays(apex, segments)
        }
        SegmentFamily::Parallel { dim, segments } => transversal_parallel(*dim, segments),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HellyReport {
    pub subfamily_size: usize,
    pub subfamilies_checked: usize,
    pub global_feasible: bool,
    pub all_subfamilies_feasible: bool,
    /// A subfamily whose feasible parameter set is bounded, if any.
    pub compactness_witness: Option<Vec<usize>>,
    /// Small subfamilies feasible and a compactness witness imply a
    /// global transversal.
    pub implication_holds: bool,
    pub minimal_infeasible: Option<Vec<usize>>,
}

/// `k`-element index subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] != i + n - k) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Checks every `(d + 1)`-member subfamily and the whole family.
pub fn helly_check(family: &SegmentFamily) -> Result<HellyReport> {
    family.check()?;
    let n = family.len();
    if n > HELLY_LIMIT {
        return Err(Error::FamilyTooLarge {
            size: n,
            limit: HELLY_LIMIT,
        });
    }
    let params = family.params();
    let bands = family.bands();
    let k = (params + 1).min(n);
    let subsets = combinations(n, k);
    let results: Vec<(bool, bool)> = subsets
        .par_iter()
        .map(|s| {
            let normals: Vec<Vec<Scalar>> = s.iter().map(|&i| bands[i].normal.clone()).collect();
            (feasible(params, &bands, s), linalg::rank(&normals) == params)
        })
        .collect();
    let all_subfamilies_feasible = results.iter().all(|r| r.0);
    let compactness_witness = subsets
        .iter()
        .zip(&results)
        .find(|(_, r)| r.1)
        .map(|(s, _)| s.clone());
    let outcome = solve_family(family)?;
    let global_feasible = outcome.is_feasible();
    let minimal_infeasible = match outcome {
        TransversalOutcome::Infeasible { subfamily } => Some(subfamily),
        TransversalOutcome::Feasible(_) => None,
    };
    let premise = all_subfamilies_feasible && compactness_witness.is_some();
    Ok(HellyReport {
        subfamily_size: k,
        subfamilies_checked: subsets.len(),
        global_feasible,
        all_subfamilies_feasible,
        compactness_witness,
        implication_holds: !premise || global_feasible,
        minimal_infeasible,
    })
}

/// A `c`-dimensional affine subspace meeting each of `c + 2` bodies.
///
/// The bodies are split into two groups whose hulls share a point `y0`
/// (following a Radon partition of `sources` when those are given, else the
/// first split in index order that works). Writing `y0` as a convex
/// combination within each group picks a point `q_i` in every body; the
/// affine span of all `q_i` has dimension at most `c` and is padded with
/// coordinate directions up to `c`.
pub fn affine_dependence_hyperplane(
    images: &[ConvexBody],
    c: usize,
    sources: Option<&[Point]>,
) -> Result<AffineSubspace> {
    if images.len() != c + 2 {
        return Err(Error::InsufficientPoints {
            needed: c + 2,
            got: images.len(),
        });
    }
    let d = images[0].ambient_dim();
    if let Some(b) = images.iter().find(|b| b.ambient_dim() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: b.ambient_dim(),
        });
    }
    if d < c {
        return Err(Error::MalformedInput(format!(
            "ambient dimension {d} is smaller than c = {c}"
        )));
    }
    if images.iter().any(ConvexBody::is_empty) {
        return Err(Error::MalformedInput("all bodies must be nonempty".into()));
    }
    let group_hull = |idx: &[usize]| {
        let pts = idx
            .iter()
            .flat_map(|&i| images[i].vertices().iter().cloned())
            .collect();
        ConvexBody::hull(d, pts)
    };
    let splits: Vec<(Vec<usize>, Vec<usize>)> = match sources {
        Some(src) => {
            if src.len() != c + 2 {
                return Err(Error::InsufficientPoints {
                    needed: c + 2,
                    got: src.len(),
                });
            }
            let r = crate::geometry::radon_partition(src)?;
            vec![(r.red_indices, r.blue_indices)]
        }
        None => {
            let m = c + 2;
            // mask includes index 0 in the red group, so each split appears once
            (1u64..(1 << (m - 1)))
                .map(|mask| {
                    let mask = (mask << 1) | 1;
                    let red: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
                    let blue: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 0).collect();
                    (red, blue)
                })
                .filter(|(_, blue)| !blue.is_empty())
                .collect()
        }
    };
    for (red, blue) in &splits {
        let shared = group_hull(red)?.meet(&group_hull(blue)?)?;
        let Some(y0) = shared.vertices().first().cloned() else {
            continue;
        };
        let mut qs: Vec<Point> = Vec::with_capacity(c + 2);
        for group in [red, blue] {
            qs.extend(group_points(images, group, &y0));
        }
        let span = AffineSubspace::spanned_by(d, &qs);
        if span.dim() > c as isize {
            return Err(Error::NotFound {
                step: format!("span of the chosen points has dimension {} > {c}", span.dim()),
            });
        }
        let h = span.extend_to(c);
        if let Some(i) = images.iter().position(|b| !h.meets(b)) {
            return Err(Error::NotFound {
                step: format!("subspace misses body {i}"),
            });
        }
        return Ok(h);
    }
    Err(Error::NotFound {
        step: "no split of the bodies has intersecting hulls".into(),
    })
}

/// One point per body of `group` such that `y0` is in their hull.
fn group_points(images: &[ConvexBody], group: &[usize], y0: &Point) -> Vec<Point> {
    let mut owner = Vec::new();
    let mut pts: Vec<Vec<Scalar>> = Vec::new();
    for &i in group {
        for v in images[i].vertices() {
            owner.push(i);
            pts.push(v.to_vec());
        }
    }
    let weights = lp::convex_weights(&pts, y0).expect("y0 lies in the group hull");
    group
        .iter()
        .map(|&i| {
            let mut total = Scalar::zero();
            let mut acc = vec![Scalar::zero(); y0.dim()];
            for ((w, p), &o) in weights.iter().zip(&pts).zip(&owner) {
                if o == i {
                    total += w;
                    acc = linalg::add(&acc, &linalg::scale(p, w));
                }
            }
            if total.is_zero() {
                images[i].vertices()[0].clone()
            } else {
                Point::new(acc.into_iter().map(|x| x / &total).collect())
            }
        })
        .collect()
}
