use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{AffineSubspace, Point};
use crate::dd::{self, RowSet};
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::Scalar;

/// `{x : ⟨normal, x⟩ ≤ offset}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Halfspace {
    pub normal: Vec<Scalar>,
    pub offset: Scalar,
}

impl Halfspace {
    pub fn new(normal: Vec<Scalar>, offset: Scalar) -> Self {
        Self { normal, offset }
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        linalg::dot(&self.normal, x) <= self.offset
    }

    pub fn is_tight(&self, x: &[Scalar]) -> bool {
        linalg::dot(&self.normal, x) == self.offset
    }
}

/// `{x : ⟨normal, x⟩ = offset}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    pub normal: Vec<Scalar>,
    pub offset: Scalar,
}

impl Hyperplane {
    pub fn new(normal: Vec<Scalar>, offset: Scalar) -> Self {
        Self { normal, offset }
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        linalg::dot(&self.normal, x) == self.offset
    }
}

/// Inequality description of a nonempty polytope: equations of its affine
/// hull plus one inequality per facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep {
    pub equalities: Vec<Hyperplane>,
    pub facets: Vec<Halfspace>,
}

impl HRep {
    pub fn contains(&self, x: &[Scalar]) -> bool {
        self.equalities.iter().all(|h| h.contains(x)) && self.facets.iter().all(|h| h.contains(x))
    }
}

/// A convex polytope, possibly empty, stored by its vertices.
///
/// The vertex list is minimal and sorted lexicographically, so two bodies
/// are equal exactly when their vertex lists are.
#[derive(Clone, Debug)]
pub struct ConvexBody {
    ambient: usize,
    vertices: Vec<Point>,
    hrep: OnceLock<HRep>,
}

impl PartialEq for ConvexBody {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.vertices == other.vertices
    }
}

impl Eq for ConvexBody {}

/// Clears denominators, returning a primitive integer row.
fn integer_row<'a>(coeffs: impl IntoIterator<Item = &'a Scalar> + Clone) -> Vec<BigInt> {
    let lcm = coeffs
        .clone()
        .into_iter()
        .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let mut row: Vec<BigInt> = coeffs
        .into_iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    dd::make_primitive(&mut row);
    row
}

fn to_scalars(v: &[BigInt]) -> Vec<Scalar> {
    v.iter().map(|x| Scalar::from_integer(x.clone())).collect()
}

/// Facet description of `conv(points)` for a nonempty, duplicate-free point
/// list, together with the set of points on each facet.
fn facets_of(ambient: usize, points: &[Point]) -> (HRep, Vec<RowSet>) {
    // Valid inequalities ⟨a, x⟩ ≤ β form the cone {(β, a) : β - ⟨a, p⟩ ≥ 0}.
    let rows: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| {
            let one = Scalar::one();
            let neg: Vec<Scalar> = p.iter().map(|x| -x).collect();
            integer_row(std::iter::once(&one).chain(neg.iter()).collect::<Vec<_>>())
        })
        .collect();
    let cone = dd::cone_generators(ambient + 1, &rows);
    let equalities = cone
        .lineality
        .iter()
        .map(|w| Hyperplane::new(to_scalars(&w[1..]), Scalar::from_integer(w[0].clone())))
        .collect();
    let mut facets = Vec::new();
    let mut incidence = Vec::new();
    for (ray, zero) in cone.rays.iter().zip(cone.zero_sets) {
        // The ray tight at no point is the trivial inequality 0 ≤ 1.
        if zero.is_empty() {
            continue;
        }
        facets.push(Halfspace::new(
            to_scalars(&ray[1..]),
            Scalar::from_integer(ray[0].clone()),
        ));
        incidence.push(zero);
    }
    (HRep { equalities, facets }, incidence)
}

impl ConvexBody {
    pub fn empty(ambient: usize) -> Self {
        Self {
            ambient,
            vertices: Vec::new(),
            hrep: OnceLock::new(),
        }
    }

    pub fn point(p: Point) -> Self {
        Self {
            ambient: p.dim(),
            vertices: vec![p],
            hrep: OnceLock::new(),
        }
    }

    /// Segment `[a, b]`; a single point when `a == b`.
    pub fn segment(a: Point, b: Point) -> Result<Self> {
        let ambient = a.dim();
        Self::hull(ambient, vec![a, b])
    }

    /// Convex hull with redundant points removed.
    pub fn hull(ambient: usize, mut points: Vec<Point>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.dim() != ambient) {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                found: p.dim(),
            });
        }
        points.sort();
        points.dedup();
        if points.len() <= 1 {
            return Ok(Self {
                ambient,
                vertices: points,
                hrep: OnceLock::new(),
            });
        }
        let (hrep, incidence) = facets_of(ambient, &points);
        let vertices = points
            .into_iter()
            .enumerate()
            .filter(|(j, _)| {
                let mut normals: Vec<Vec<Scalar>> =
                    hrep.equalities.iter().map(|h| h.normal.clone()).collect();
                normals.extend(
                    hrep.facets
                        .iter()
                        .zip(&incidence)
                        .filter(|(_, z)| z.contains(*j))
                        .map(|(f, _)| f.normal.clone()),
                );
                linalg::rank(&normals) == ambient
            })
            .map(|(_, p)| p)
            .collect();
        let hrep_cell = OnceLock::new();
        let _ = hrep_cell.set(hrep);
        Ok(Self {
            ambient,
            vertices,
            hrep: hrep_cell,
        })
    }

    /// Convex hull of a point list whose ambient dimension is taken from the
    /// first point. An empty list needs [`ConvexBody::hull`] instead.
    pub fn from_points(points: Vec<Point>) -> Result<Self> {
        match points.first() {
            None => Err(Error::MalformedInput(
                "cannot infer the dimension of an empty point list".into(),
            )),
            Some(p) => Self::hull(p.dim(), points),
        }
    }

    /// The polytope cut out by equations and inequalities. Errors with
    /// [`Error::Unbounded`] if the system is feasible but unbounded.
    pub fn from_constraints(
        ambient: usize,
        equalities: &[Hyperplane],
        halfspaces: &[Halfspace],
    ) -> Result<Self> {
        for n in equalities
            .iter()
            .map(|h| h.normal.len())
            .chain(halfspaces.iter().map(|h| h.normal.len()))
        {
            if n != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    found: n,
                });
            }
        }
        // Homogenize: x = y / t with t ≥ 0, and ⟨a, x⟩ ≤ b becomes b t - ⟨a, y⟩ ≥ 0.
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        let mut t_row = vec![BigInt::zero(); ambient + 1];
        t_row[0] = BigInt::one();
        rows.push(t_row);
        let mut push = |normal: &[Scalar], offset: &Scalar, sign: bool| {
            let coeffs: Vec<Scalar> = std::iter::once(offset.clone())
                .chain(normal.iter().map(|a| -a))
                .map(|x| if sign { -x } else { x })
                .collect();
            rows.push(integer_row(&coeffs));
        };
        for h in equalities {
            push(&h.normal, &h.offset, false);
            push(&h.normal, &h.offset, true);
        }
        for h in halfspaces {
            push(&h.normal, &h.offset, false);
        }
        let cone = dd::cone_generators(ambient + 1, &rows);
        let mut vertices = Vec::new();
        let mut recession = !cone.lineality.is_empty();
        for ray in &cone.rays {
            if ray[0].is_positive() {
                let t = Scalar::from_integer(ray[0].clone());
                vertices.push(Point::new(
                    ray[1..]
                        .iter()
                        .map(|y| Scalar::from_integer(y.clone()) / &t)
                        .collect(),
                ));
            } else {
                recession = true;
            }
        }
        if vertices.is_empty() {
            return Ok(Self::empty(ambient));
        }
        if recession {
            return Err(Error::Unbounded);
        }
        vertices.sort();
        vertices.dedup();
        Ok(Self {
            ambient,
            vertices,
            hrep: OnceLock::new(),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Is this a single point?
    pub fn as_point(&self) -> Option<&Point> {
        match self.vertices.as_slice() {
            [p] => Some(p),
            _ => None,
        }
    }

    /// Endpoints of a proper segment, in lexicographic order.
    pub fn as_segment(&self) -> Option<(&Point, &Point)> {
        match self.vertices.as_slice() {
            [a, b] => Some((a, b)),
            _ => None,
        }
    }

    /// Facet description; `None` for the empty body.
    pub fn hrep(&self) -> Option<&HRep> {
        if self.is_empty() {
            return None;
        }
        Some(
            self.hrep
                .get_or_init(|| facets_of(self.ambient, &self.vertices).0),
        )
    }

    /// Affine dimension, `-1` for the empty body.
    pub fn dim(&self) -> isize {
        match self.vertices.split_first() {
            None => -1,
            Some((v0, rest)) => {
                let diffs: Vec<Vec<Scalar>> = rest.iter().map(|v| v.delta(v0)).collect();
                linalg::rank(&diffs) as isize
            }
        }
    }

    pub fn affine_hull(&self) -> AffineSubspace {
        AffineSubspace::spanned_by(self.ambient, &self.vertices)
    }

    pub fn contains_point(&self, x: &[Scalar]) -> bool {
        match self.hrep() {
            None => false,
            Some(h) => h.contains(x),
        }
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &ConvexBody) -> bool {
        other.vertices.iter().all(|v| self.contains_point(v))
    }

    fn check_same_ambient(&self, other: &ConvexBody) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    /// Intersection `C ∧ D`.
    pub fn meet(&self, other: &ConvexBody) -> Result<ConvexBody> {
        self.check_same_ambient(other)?;
        if self.is_empty() || other.is_empty() {
            return Ok(Self::empty(self.ambient));
        }
        if self.contains(other) {
            return Ok(other.clone());
        }
        if other.contains(self) {
            return Ok(self.clone());
        }
        let (a, b) = (self.hrep().unwrap(), other.hrep().unwrap());
        let equalities: Vec<Hyperplane> =
            a.equalities.iter().chain(&b.equalities).cloned().collect();
        let facets: Vec<Halfspace> = a.facets.iter().chain(&b.facets).cloned().collect();
        Self::from_constraints(self.ambient, &equalities, &facets)
    }

    /// Hull of the union `C ∨ D`.
    pub fn join(&self, other: &ConvexBody) -> Result<ConvexBody> {
        self.check_same_ambient(other)?;
        if other.is_empty() || self.contains(other) {
            return Ok(self.clone());
        }
        if self.is_empty() || other.contains(self) {
            return Ok(other.clone());
        }
        let points = self
            .vertices
            .iter()
            .chain(&other.vertices)
            .cloned()
            .collect();
        Self::hull(self.ambient, points)
    }

    /// Intersection with extra inequalities.
    pub fn clip(&self, halfspaces: &[Halfspace]) -> Result<ConvexBody> {
        let Some(h) = self.hrep() else {
            return Ok(self.clone());
        };
        if self.vertices.iter().all(|v| halfspaces.iter().all(|s| s.contains(v))) {
            return Ok(self.clone());
        }
        let facets: Vec<Halfspace> = h.facets.iter().chain(halfspaces).cloned().collect();
        Self::from_constraints(self.ambient, &h.equalities, &facets)
    }

    /// Image under a pointwise map sending this body's vertices to points
    /// whose hull is the image (true for affine maps).
    pub fn map_vertices(
        &self,
        target_ambient: usize,
        f: impl Fn(&Point) -> Point,
    ) -> Result<ConvexBody> {
        Self::hull(target_ambient, self.vertices.iter().map(f).collect())
    }

    /// Barycenter of the vertices; a relative-interior point.
    pub fn centroid(&self) -> Option<Point> {
        if self.is_empty() {
            return None;
        }
        let k = Scalar::from_integer(BigInt::from(self.vertices.len()));
        let mut sum = vec![Scalar::zero(); self.ambient];
        for v in &self.vertices {
            sum = linalg::add(&sum, v);
        }
        Some(Point::new(sum.into_iter().map(|x| x / &k).collect()))
    }
}
