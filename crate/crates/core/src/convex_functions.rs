//! Polyhedral convex functions and their conjugates.
//!
//! A function `f: E^c → [0, κ] ∪ {+∞}` is stored through the polytope
//! `epi(f) ∩ (E^c × [0, κ])`, which always contains the whole ceiling
//! `dom(f) × {κ}`. Its conjugate is stored as a finite max of affine
//! functions `y ↦ max_i ⟨a_i, y⟩ - b_i`.

use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{ConvexBody, Halfspace, Point};
use crate::homomorphism::AffineMap;
use crate::linalg;
use crate::random::{random_body, stream};
use crate::scalar::{format_scalar, Scalar};

/// A value in `[-∞, +∞]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtendedValue {
    MinusInf,
    Finite(Scalar),
    PlusInf,
}

impl ExtendedValue {
    pub fn finite(&self) -> Option<&Scalar> {
        match self {
            ExtendedValue::Finite(x) => Some(x),
            _ => None,
        }
    }

    /// `self + k` for finite `k`.
    pub fn shift(&self, k: &Scalar) -> Self {
        match self {
            ExtendedValue::Finite(x) => ExtendedValue::Finite(x + k),
            other => other.clone(),
        }
    }
}

impl fmt::Debug for ExtendedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedValue::MinusInf => f.write_str("-inf"),
            ExtendedValue::PlusInf => f.write_str("+inf"),
            ExtendedValue::Finite(x) => f.write_str(&format_scalar(x)),
        }
    }
}

/// Truncated epigraph of `f` with values in `[0, κ] ∪ {+∞}`. The empty body
/// stands for `f ≡ +∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedEpigraph {
    c: usize,
    kappa: Scalar,
    body: ConvexBody,
}

fn height(p: &Point) -> &Scalar {
    &p[p.dim() - 1]
}

fn floor_point(p: &Point) -> Point {
    Point::new(p[..p.dim() - 1].to_vec())
}

impl TruncatedEpigraph {
    /// Checks that the body sits in the band `0 ≤ t ≤ κ` and contains the
    /// ceiling point above each of its vertices.
    pub fn new(kappa: Scalar, body: ConvexBody) -> Result<Self> {
        if !kappa.is_positive() {
            return Err(Error::NotInClass("kappa must be positive".into()));
        }
        let n = body.ambient_dim();
        if n == 0 {
            return Err(Error::MalformedInput("body must live in E^(c+1)".into()));
        }
        for v in body.vertices() {
            let t = height(v);
            if t.is_negative() || *t > kappa {
                return Err(Error::NotInClass(format!("vertex {v:?} leaves the band [0, kappa]")));
            }
            if *t != kappa && !body.contains_point(&floor_point(v).lift(kappa.clone())) {
                return Err(Error::NotInClass(format!(
                    "body is not closed upward to the ceiling above {v:?}"
                )));
            }
        }
        Ok(Self { c: n - 1, kappa, body })
    }

    /// Truncated epigraph of the largest convex function below the given
    /// graph points, i.e. the hull of each `(x, t)` together with `(x, κ)`.
    pub fn from_graph(c: usize, kappa: Scalar, graph: &[(Point, Scalar)]) -> Result<Self> {
        let mut pts = Vec::with_capacity(2 * graph.len());
        for (x, t) in graph {
            pts.push(x.lift(t.clone()));
            pts.push(x.lift(kappa.clone()));
        }
        Self::new(kappa, ConvexBody::hull(c + 1, pts)?)
    }

    pub fn plus_infinity(c: usize, kappa: Scalar) -> Self {
        Self {
            c,
            kappa,
            body: ConvexBody::empty(c + 1),
        }
    }

    pub fn is_plus_infinity(&self) -> bool {
        self.body.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.c
    }

    pub fn kappa(&self) -> &Scalar {
        &self.kappa
    }

    pub fn body(&self) -> &ConvexBody {
        &self.body
    }

    /// `min f`, or `None` for `+∞`.
    pub fn min_value(&self) -> Option<Scalar> {
        self.body.vertices().iter().map(|v| height(v).clone()).min()
    }

    /// Members of `Cvx_[0,κ]` attain the value 0 somewhere (or are `+∞`).
    pub fn attains_zero(&self) -> bool {
        self.min_value().map_or(true, |m| m.is_zero())
    }

    /// `f^{-1}([0, κ])`, the projection of the body.
    pub fn domain(&self) -> ConvexBody {
        ConvexBody::hull(self.c, self.body.vertices().iter().map(floor_point).collect())
            .expect("projection keeps dimensions consistent")
    }

    pub fn eval(&self, x: &[Scalar]) -> Result<ExtendedValue> {
        if x.len() != self.c {
            return Err(Error::DimensionMismatch {
                expected: self.c,
                found: x.len(),
            });
        }
        let Some(h) = self.body.hrep() else {
            return Ok(ExtendedValue::PlusInf);
        };
        // Every constraint restricted to the vertical line above x reads
        // alpha·t ≤ beta (or = beta).
        let mut lo: Option<Scalar> = None;
        let mut hi: Option<Scalar> = None;
        let mut fixed: Option<Scalar> = None;
        let split = |normal: &[Scalar], offset: &Scalar| {
            let alpha = normal[self.c].clone();
            let beta = offset - linalg::dot(&normal[..self.c], x);
            (alpha, beta)
        };
        for e in &h.equalities {
            let (alpha, beta) = split(&e.normal, &e.offset);
            if alpha.is_zero() {
                if !beta.is_zero() {
                    return Ok(ExtendedValue::PlusInf);
                }
            } else {
                let t = beta / alpha;
                if fixed.as_ref().is_some_and(|f| *f != t) {
                    return Ok(ExtendedValue::PlusInf);
                }
                fixed = Some(t);
            }
        }
        for f in &h.facets {
            let (alpha, beta) = split(&f.normal, &f.offset);
            if alpha.is_zero() {
                if beta.is_negative() {
                    return Ok(ExtendedValue::PlusInf);
                }
            } else if alpha.is_positive() {
                let t = beta / alpha;
                if hi.as_ref().map_or(true, |h| t < *h) {
                    hi = Some(t);
                }
            } else {
                let t = beta / alpha;
                if lo.as_ref().map_or(true, |l| t > *l) {
                    lo = Some(t);
                }
            }
        }
        let value = match fixed {
            Some(t) => {
                if lo.as_ref().is_some_and(|l| t < *l) || hi.as_ref().is_some_and(|h| t > *h) {
                    return Ok(ExtendedValue::PlusInf);
                }
                t
            }
            None => {
                let l = lo.expect("the body is bounded below");
                if hi.as_ref().is_some_and(|h| l > *h) {
                    return Ok(ExtendedValue::PlusInf);
                }
                l
            }
        };
        Ok(ExtendedValue::Finite(value))
    }
}

/// `y ↦ max_i ⟨a_i, y⟩ - b_i`; no pieces means `-∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxAffineFunction {
    c: usize,
    pieces: Vec<(Vec<Scalar>, Scalar)>,
}

impl MaxAffineFunction {
    /// Builds the function and reduces it to its canonical piece set.
    pub fn new(c: usize, pieces: Vec<(Vec<Scalar>, Scalar)>) -> Result<Self> {
        if let Some((a, _)) = pieces.iter().find(|(a, _)| a.len() != c) {
            return Err(Error::DimensionMismatch {
                expected: c,
                found: a.len(),
            });
        }
        Ok(Self::canonical(c, pieces))
    }

    pub fn minus_infinity(c: usize) -> Self {
        Self { c, pieces: Vec::new() }
    }

    pub fn is_minus_infinity(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.c
    }

    pub fn pieces(&self) -> &[(Vec<Scalar>, Scalar)] {
        &self.pieces
    }

    /// Keeps only the pieces that are the lower vertices of the conjugate's
    /// epigraph, sorted.
    fn canonical(c: usize, pieces: Vec<(Vec<Scalar>, Scalar)>) -> Self {
        if pieces.is_empty() {
            return Self::minus_infinity(c);
        }
        let roof = pieces.iter().map(|p| p.1.clone()).max().unwrap() + Scalar::one();
        let body = lifted_hull(c, &pieces, &roof);
        let pieces = body
            .vertices()
            .iter()
            .filter(|v| *height(v) < roof)
            .map(|v| (v[..c].to_vec(), height(v).clone()))
            .collect();
        Self { c, pieces }
    }

    pub fn eval(&self, y: &[Scalar]) -> Result<ExtendedValue> {
        if y.len() != self.c {
            return Err(Error::DimensionMismatch {
                expected: self.c,
                found: y.len(),
            });
        }
        Ok(self
            .pieces
            .iter()
            .map(|(a, b)| linalg::dot(a, y) - b)
            .max()
            .map_or(ExtendedValue::MinusInf, ExtendedValue::Finite))
    }

    /// `g + k`.
    pub fn shifted(&self, k: &Scalar) -> Self {
        Self {
            c: self.c,
            pieces: self.pieces.iter().map(|(a, b)| (a.clone(), b - k)).collect(),
        }
    }

    /// Members of `Cvx_(0,0)` vanish at the origin (or are `-∞`).
    pub fn vanishes_at_zero(&self) -> bool {
        self.is_minus_infinity()
            || self.pieces.iter().map(|p| &p.1).min().is_some_and(Zero::is_zero)
    }

    /// Hull of the slopes: the body whose support function sandwiches `g`.
    pub fn slope_hull(&self) -> ConvexBody {
        ConvexBody::hull(self.c, self.pieces.iter().map(|p| Point::new(p.0.clone())).collect())
            .expect("slopes share the dimension")
    }
}

/// `conv{(a_i, b_i), (a_i, roof)}`.
fn lifted_hull(c: usize, pieces: &[(Vec<Scalar>, Scalar)], roof: &Scalar) -> ConvexBody {
    let mut pts = Vec::with_capacity(2 * pieces.len());
    for (a, b) in pieces {
        let p = Point::new(a.clone());
        pts.push(p.lift(b.clone()));
        pts.push(p.lift(roof.clone()));
    }
    ConvexBody::hull(c + 1, pts).expect("pieces share the dimension")
}

/// `t ≤ κ` in `E^(c+1)`.
fn ceiling(c: usize, kappa: &Scalar) -> Halfspace {
    let mut normal = vec![Scalar::zero(); c + 1];
    normal[c] = Scalar::one();
    Halfspace::new(normal, kappa.clone())
}

/// `1^∞_C`, truncated at `κ`.
pub fn indicator(body: &ConvexBody, kappa: Scalar) -> Result<TruncatedEpigraph> {
    let c = body.ambient_dim();
    let graph: Vec<(Point, Scalar)> = body
        .vertices()
        .iter()
        .map(|v| (v.clone(), Scalar::zero()))
        .collect();
    if graph.is_empty() {
        return Ok(TruncatedEpigraph::plus_infinity(c, kappa));
    }
    TruncatedEpigraph::from_graph(c, kappa, &graph)
}

/// `h_C(y) = max_{x ∈ C} ⟨x, y⟩`.
pub fn support_function(body: &ConvexBody) -> MaxAffineFunction {
    let pieces = body
        .vertices()
        .iter()
        .map(|v| (v.to_vec(), Scalar::zero()))
        .collect();
    MaxAffineFunction::canonical(body.ambient_dim(), pieces)
}

/// The conjugate `y ↦ sup_x ⟨x, y⟩ - f(x)`.
pub fn fenchel(f: &TruncatedEpigraph) -> MaxAffineFunction {
    let pieces = f
        .body
        .vertices()
        .iter()
        .map(|v| (v[..f.c].to_vec(), height(v).clone()))
        .collect();
    MaxAffineFunction::canonical(f.c, pieces)
}

/// Values of `g`, `h_C - κ` and `h_C` at some points, where `C` is the hull
/// of the slopes of `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SandwichCert {
    pub body: ConvexBody,
    /// `(y, g(y) - (h_C(y) - κ), h_C(y) - g(y))`.
    pub gaps: Vec<(Point, Scalar, Scalar)>,
}

/// Is `h_C - κ ≤ g ≤ h_C` with `C` the slope hull? Equivalent to every
/// intercept being nonnegative and, above each vertex of `C`, the smallest
/// intercept being at most `κ`.
pub fn in_sandwich(g: &MaxAffineFunction, kappa: &Scalar) -> bool {
    if g.is_minus_infinity() {
        return true;
    }
    if g.pieces.iter().any(|(_, b)| b.is_negative()) {
        return false;
    }
    let hull = g.slope_hull();
    hull.vertices().iter().all(|v| {
        g.pieces
            .iter()
            .filter(|(a, _)| a.as_slice() == v.coords())
            .map(|(_, b)| b)
            .min()
            .is_some_and(|b| b <= kappa)
    })
}

/// The sandwich gaps of `g` at the given points.
pub fn sandwich_certificate(
    g: &MaxAffineFunction,
    kappa: &Scalar,
    points: &[Point],
) -> Result<SandwichCert> {
    if !in_sandwich(g, kappa) {
        return Err(Error::NotInClass("function is not squeezed between h_C - kappa and h_C".into()));
    }
    let body = g.slope_hull();
    let h = support_function(&body);
    let gaps = points
        .iter()
        .map(|y| {
            let (gv, hv) = (g.eval(y)?, h.eval(y)?);
            match (gv.finite(), hv.finite()) {
                (Some(gv), Some(hv)) => Ok((y.clone(), gv - (hv - kappa), hv - gv)),
                _ => Err(Error::NotInClass("unexpected infinite value".into())),
            }
        })
        .collect::<Result<_>>()?;
    Ok(SandwichCert { body, gaps })
}

/// The unique `f` with `fenchel(f) = g`.
pub fn fenchel_inverse(g: &MaxAffineFunction, kappa: Scalar) -> Result<TruncatedEpigraph> {
    if g.is_minus_infinity() {
        return Ok(TruncatedEpigraph::plus_infinity(g.c, kappa));
    }
    if !in_sandwich(g, &kappa) {
        return Err(Error::NotInClass(
            "function is not squeezed between h_C - kappa and h_C".into(),
        ));
    }
    let top = g.pieces.iter().map(|p| p.1.clone()).max().unwrap();
    let roof = if top > kappa { top } else { kappa.clone() };
    let body = lifted_hull(g.c, &g.pieces, &roof).clip(&[ceiling(g.c, &kappa)])?;
    TruncatedEpigraph::new(kappa, body)
}

fn same_shape(f: &TruncatedEpigraph, g: &TruncatedEpigraph) -> Result<()> {
    if f.c != g.c {
        return Err(Error::DimensionMismatch {
            expected: f.c,
            found: g.c,
        });
    }
    if f.kappa != g.kappa {
        return Err(Error::KappaMismatch);
    }
    Ok(())
}

/// `f ⊓₊ g`: the pointwise max, or `+∞` when it never reaches 0.
pub fn meet_plus(f: &TruncatedEpigraph, g: &TruncatedEpigraph) -> Result<TruncatedEpigraph> {
    same_shape(f, g)?;
    let body = f.body.meet(&g.body)?;
    let out = TruncatedEpigraph {
        c: f.c,
        kappa: f.kappa.clone(),
        body,
    };
    if out.attains_zero() {
        Ok(out)
    } else {
        Ok(TruncatedEpigraph::plus_infinity(f.c, f.kappa.clone()))
    }
}

/// `f ⊔₊ g`: the convex envelope of the pointwise min.
pub fn join_plus(f: &TruncatedEpigraph, g: &TruncatedEpigraph) -> Result<TruncatedEpigraph> {
    same_shape(f, g)?;
    Ok(TruncatedEpigraph {
        c: f.c,
        kappa: f.kappa.clone(),
        body: f.body.join(&g.body)?,
    })
}

fn check_vanishing(g: &MaxAffineFunction) -> Result<()> {
    if g.vanishes_at_zero() {
        Ok(())
    } else {
        Err(Error::NotInClass("function does not vanish at the origin".into()))
    }
}

/// `g₁ ⊓₋ g₂`: the pointwise max.
pub fn meet_minus(g1: &MaxAffineFunction, g2: &MaxAffineFunction) -> Result<MaxAffineFunction> {
    if g1.c != g2.c {
        return Err(Error::DimensionMismatch {
            expected: g1.c,
            found: g2.c,
        });
    }
    check_vanishing(g1)?;
    check_vanishing(g2)?;
    let pieces = g1.pieces.iter().chain(&g2.pieces).cloned().collect();
    Ok(MaxAffineFunction::canonical(g1.c, pieces))
}

/// `g₁ ⊔₋ g₂`: the convex envelope of the pointwise min when it vanishes at
/// the origin, `-∞` otherwise.
pub fn join_minus(g1: &MaxAffineFunction, g2: &MaxAffineFunction) -> Result<MaxAffineFunction> {
    if g1.c != g2.c {
        return Err(Error::DimensionMismatch {
            expected: g1.c,
            found: g2.c,
        });
    }
    check_vanishing(g1)?;
    check_vanishing(g2)?;
    let c = g1.c;
    if g1.is_minus_infinity() || g2.is_minus_infinity() {
        return Ok(MaxAffineFunction::minus_infinity(c));
    }
    // The envelope is conjugate to the max of the two conjugates, whose
    // epigraph is the intersection of theirs. All its vertices lie below
    // the largest intercept.
    let roof = g1
        .pieces
        .iter()
        .chain(&g2.pieces)
        .map(|p| p.1.clone())
        .max()
        .unwrap()
        + Scalar::one();
    let both = lifted_hull(c, &g1.pieces, &roof).meet(&lifted_hull(c, &g2.pieces, &roof))?;
    let pieces: Vec<(Vec<Scalar>, Scalar)> = both
        .vertices()
        .iter()
        .filter(|v| *height(v) < roof)
        .map(|v| (v[..c].to_vec(), height(v).clone()))
        .collect();
    let out = MaxAffineFunction::canonical(c, pieces);
    if out.is_minus_infinity() || !out.vanishes_at_zero() {
        return Ok(MaxAffineFunction::minus_infinity(c));
    }
    Ok(out)
}

/// `C ↦ 1^∞_{φ(C)}`, truncated at `κ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionHomomorphism {
    pub phi: AffineMap,
    pub kappa: Scalar,
}

/// `C ↦ h_{φ(C)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionAntiHomomorphism {
    pub phi: AffineMap,
    pub kappa: Scalar,
}

pub fn canonical_function_homomorphism(phi: AffineMap, kappa: Scalar) -> Result<FunctionHomomorphism> {
    if !phi.is_bijective() {
        return Err(Error::NotBijective);
    }
    Ok(FunctionHomomorphism { phi, kappa })
}

pub fn canonical_anti_homomorphism(phi: AffineMap, kappa: Scalar) -> Result<FunctionAntiHomomorphism> {
    if !phi.is_bijective() {
        return Err(Error::NotBijective);
    }
    Ok(FunctionAntiHomomorphism { phi, kappa })
}

fn image(phi: &AffineMap, body: &ConvexBody) -> Result<ConvexBody> {
    if body.ambient_dim() != phi.source_dim() {
        return Err(Error::DimensionMismatch {
            expected: phi.source_dim(),
            found: body.ambient_dim(),
        });
    }
    body.map_vertices(phi.target_dim(), |v| phi.apply(v).unwrap())
}

impl FunctionHomomorphism {
    pub fn apply(&self, body: &ConvexBody) -> Result<TruncatedEpigraph> {
        indicator(&image(&self.phi, body)?, self.kappa.clone())
    }
}

impl FunctionAntiHomomorphism {
    pub fn apply(&self, body: &ConvexBody) -> Result<MaxAffineFunction> {
        Ok(support_function(&image(&self.phi, body)?))
    }
}

/// Outcome of checking a function-valued map on random pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionMapReport {
    pub trials: u64,
    pub meet_ok: bool,
    pub join_ok: bool,
    /// `(trial, identity, C, D)` of the first failure.
    pub counterexample: Option<(u64, &'static str, ConvexBody, ConvexBody)>,
}

/// Fixed grid `{-2, -1, 0, 1, 2}^c` scaled by 1/2, plus random points.
pub fn sample_points(c: usize, extra: usize, rng: &mut impl Rng) -> Vec<Point> {
    let mut out = Vec::new();
    let steps = [-2i64, -1, 0, 1, 2];
    let total = steps.len().pow(c as u32);
    for mut k in 0..total {
        let mut x = Vec::with_capacity(c);
        for _ in 0..c {
            x.push(Scalar::new(steps[k % 5].into(), 2.into()));
            k /= 5;
        }
        out.push(Point::new(x));
    }
    out.extend((0..extra).map(|_| crate::random::random_point(rng, c)));
    out
}

fn random_pair(seed: u64, name: &str, trial: u64, c: usize) -> (ConvexBody, ConvexBody, Vec<Point>) {
    let mut rng = stream(seed, name, trial);
    let a = random_body(&mut rng, c, 5);
    let mut b = random_body(&mut rng, c, 5);
    if rng.gen_bool(0.5) {
        // force an overlap
        let mut pts = b.vertices().to_vec();
        pts.push(a.vertices()[0].clone());
        b = ConvexBody::hull(c, pts).unwrap();
    }
    let samples = sample_points(c, 10, &mut rng);
    (a, b, samples)
}

fn report(trials: u64, results: Vec<(bool, bool, ConvexBody, ConvexBody)>) -> FunctionMapReport {
    let mut out = FunctionMapReport {
        trials,
        meet_ok: true,
        join_ok: true,
        counterexample: None,
    };
    for (t, (meet, join, a, b)) in results.into_iter().enumerate() {
        out.meet_ok &= meet;
        out.join_ok &= join;
        if out.counterexample.is_none() && !(meet && join) {
            let which = if meet { "join" } else { "meet" };
            out.counterexample = Some((t as u64, which, a, b));
        }
    }
    out
}

/// `H(C ∧ D) = H(C) ⊓₊ H(D)` and `H(C ∨ D) = H(C) ⊔₊ H(D)`, compared as
/// bodies and by value at sample points.
pub fn verify_function_homomorphism(
    h: &FunctionHomomorphism,
    trials: u64,
    seed: u64,
) -> Result<FunctionMapReport> {
    let c = h.phi.source_dim();
    let results = (0..trials)
        .into_par_iter()
        .map(|t| {
            let (a, b, samples) = random_pair(seed, "function-hom", t, c);
            let (ha, hb) = (h.apply(&a)?, h.apply(&b)?);
            let same = |x: &TruncatedEpigraph, y: &TruncatedEpigraph| -> Result<bool> {
                if x != y {
                    return Ok(false);
                }
                for p in &samples {
                    if x.eval(p)? != y.eval(p)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            };
            let meet = same(&h.apply(&a.meet(&b)?)?, &meet_plus(&ha, &hb)?)?;
            let join = same(&h.apply(&a.join(&b)?)?, &join_plus(&ha, &hb)?)?;
            Ok((meet, join, a, b))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(report(trials, results))
}

/// `Λ(C ∧ D) = Λ(C) ⊔₋ Λ(D)` and `Λ(C ∨ D) = Λ(C) ⊓₋ Λ(D)`, compared as
/// piece sets and by value at sample points.
pub fn verify_anti_homomorphism(
    l: &FunctionAntiHomomorphism,
    trials: u64,
    seed: u64,
) -> Result<FunctionMapReport> {
    let c = l.phi.source_dim();
    let results = (0..trials)
        .into_par_iter()
        .map(|t| {
            let (a, b, samples) = random_pair(seed, "function-anti-hom", t, c);
            let (la, lb) = (l.apply(&a)?, l.apply(&b)?);
            let same = |x: &MaxAffineFunction, y: &MaxAffineFunction| -> Result<bool> {
                if x != y {
                    return Ok(false);
                }
                for p in &samples {
                    if x.eval(p)? != y.eval(p)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            };
            let meet = same(&l.apply(&a.meet(&b)?)?, &join_minus(&la, &lb)?)?;
            let join = same(&l.apply(&a.join(&b)?)?, &meet_minus(&la, &lb)?)?;
            Ok((meet, join, a, b))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(report(trials, results))
}
