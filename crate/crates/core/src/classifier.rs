//! Recovering the canonical form of a homomorphism from its values on `∅`
//! and on finitely many singletons.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{ConvexBody, Point};
use crate::homomorphism::{AffineMap, HomomorphismSpec};
use crate::linalg;
use crate::scalar::Scalar;

/// Values of an unknown homomorphism `C(E^c) → C(E^d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleSample {
    pub c: usize,
    pub d: usize,
    pub empty_image: ConvexBody,
    pub points: Vec<(Point, ConvexBody)>,
}

impl OracleSample {
    /// Samples a known map at the given points.
    pub fn from_spec(spec: &HomomorphismSpec, xs: &[Point]) -> Result<Self> {
        let points = xs
            .iter()
            .map(|x| Ok((x.clone(), spec.apply_point(x)?)))
            .collect::<Result<_>>()?;
        Ok(Self {
            c: spec.source_dim(),
            d: spec.target_dim(),
            empty_image: spec.empty_image(),
            points,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifiedForm {
    pub spec: HomomorphismSpec,
    /// Every sample is reproduced exactly by `spec`.
    pub residual_ok: bool,
}

/// The affine map through the given pairs. The first `c + 1` sources that
/// are affinely independent (taken greedily) determine it; every pair is
/// then checked against it.
pub fn fit_affine_map(pairs: &[(Point, Point)], c: usize, d: usize) -> Result<AffineMap> {
    if pairs.len() < c + 1 {
        return Err(Error::InsufficientPoints {
            needed: c + 1,
            got: pairs.len(),
        });
    }
    for (x, y) in pairs {
        if x.dim() != c {
            return Err(Error::DimensionMismatch {
                expected: c,
                found: x.dim(),
            });
        }
        if y.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: y.dim(),
            });
        }
    }
    let (x0, y0) = &pairs[0];
    let diffs: Vec<Vec<Scalar>> = pairs[1..].iter().map(|(x, _)| x.delta(x0)).collect();
    let chosen = linalg::independent_subset(&diffs);
    if chosen.len() < c {
        return Err(Error::RankDeficient {
            rank: chosen.len(),
            needed: c,
        });
    }
    // With X = [x_i - x_0] (columns) and Y = [y_i - y_0]: M X = Y. Solve
    // row by row as X^T m_r = (Y row r)^T.
    let xt: Vec<Vec<Scalar>> = chosen.iter().map(|&i| diffs[i].clone()).collect();
    let ydiffs: Vec<Vec<Scalar>> = chosen
        .iter()
        .map(|&i| pairs[i + 1].1.delta(y0))
        .collect();
    let matrix: Vec<Vec<Scalar>> = (0..d)
        .map(|r| {
            let rhs: Vec<Scalar> = ydiffs.iter().map(|y| y[r].clone()).collect();
            linalg::solve(&xt, &rhs).expect("chosen sources are independent")
        })
        .collect();
    let mx0: Vec<Scalar> = matrix.iter().map(|row| linalg::dot(row, x0)).collect();
    let offset = Point::new(linalg::sub(y0, &mx0));
    for (index, (x, y)) in pairs.iter().enumerate() {
        let fx: Vec<Scalar> = matrix
            .iter()
            .zip(offset.iter())
            .map(|(row, t)| linalg::dot(row, x) + t)
            .collect();
        if fx != y.coords() {
            return Err(Error::NonAffineData { index });
        }
    }
    AffineMap::new(matrix, offset)
}

/// For each `(a, m, b)` of indices into `point_images`, with source `m`
/// strictly inside the source segment `(a, b)`: is the image of `m` strictly
/// inside the image segment? Triples with repeated or non-collinear sources
/// are malformed.
pub fn check_order_preservation(
    point_images: &[(Point, Point)],
    triples: &[(usize, usize, usize)],
) -> Result<bool> {
    let get = |i: usize| {
        point_images
            .get(i)
            .ok_or_else(|| Error::MalformedInput(format!("index {i} out of range")))
    };
    let mut ok = true;
    for &(a, m, b) in triples {
        let ((xa, ya), (xm, ym), (xb, yb)) = (get(a)?, get(m)?, get(b)?);
        if strict_parameter(xa, xm, xb).is_none() {
            return Err(Error::MalformedInput(format!(
                "source point {m} is not strictly between points {a} and {b}"
            )));
        }
        ok &= strict_parameter(ya, ym, yb).is_some();
    }
    Ok(ok)
}

/// `t ∈ (0, 1)` with `m = (1 - t) a + t b`, for `a ≠ b`.
fn strict_parameter(a: &Point, m: &Point, b: &Point) -> Option<Scalar> {
    let ab = b.delta(a);
    let am = m.delta(a);
    let k = ab.iter().position(|x| !x.is_zero())?;
    let t = &am[k] / &ab[k];
    let exact = linalg::scale(&ab, &t) == am;
    (exact && t.is_positive() && t < Scalar::one()).then_some(t)
}

/// Endpoints of a point or segment image; `None` for anything bigger.
fn ends(body: &ConvexBody) -> Option<(Point, Point)> {
    match body.vertices() {
        [p] => Some((p.clone(), p.clone())),
        [a, b] => Some((a.clone(), b.clone())),
        _ => None,
    }
}

fn not_canonical(msg: impl Into<String>) -> Error {
    Error::NotCanonical(msg.into())
}

fn fit(pairs: &[(Point, Point)], c: usize, d: usize) -> Result<AffineMap> {
    fit_affine_map(pairs, c, d).map_err(|e| match e {
        Error::NonAffineData { index } => {
            not_canonical(format!("sample {index} does not follow an affine map"))
        }
        other => other,
    })
}

/// Parameter `s` with `p = o + s u`, if `p` lies on that line.
fn line_parameter(o: &Point, u: &[Scalar], p: &Point) -> Option<Scalar> {
    let k = u.iter().position(|x| !x.is_zero())?;
    let d = p.delta(o);
    let s = &d[k] / &u[k];
    (linalg::scale(u, &s) == d).then_some(s)
}

/// Common point of the lines through `a, b` and `p, q`, if they meet in
/// exactly one point.
fn line_intersection(a: &Point, b: &Point, p: &Point, q: &Point) -> Option<Point> {
    let u = b.delta(a);
    let w = q.delta(p);
    // a + s u = p + t w
    let rows: Vec<Vec<Scalar>> = (0..a.dim()).map(|i| vec![u[i].clone(), -w[i].clone()]).collect();
    let rhs = p.delta(a);
    if linalg::rank(&rows) < 2 {
        return None;
    }
    let st = linalg::solve_any(&rows, &rhs, 2)?;
    Some(a.translate(&linalg::scale(&u, &st[0])))
}

/// Classifies a sample into one of the canonical cases and recovers its
/// parameters exactly.
pub fn classify(sample: &OracleSample) -> Result<ClassifiedForm> {
    let (c, d) = (sample.c, sample.d);
    if d != c && d != c + 1 {
        return Err(Error::MalformedInput(format!(
            "target dimension must be c or c + 1, got c = {c}, d = {d}"
        )));
    }
    if sample.empty_image.ambient_dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: sample.empty_image.ambient_dim(),
        });
    }
    if sample.points.len() < c + 2 {
        return Err(Error::InsufficientPoints {
            needed: c + 2,
            got: sample.points.len(),
        });
    }
    for (x, img) in &sample.points {
        if x.dim() != c {
            return Err(Error::DimensionMismatch {
                expected: c,
                found: x.dim(),
            });
        }
        if img.ambient_dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: img.ambient_dim(),
            });
        }
    }

    let spec = if sample.points.iter().all(|(_, img)| *img == sample.empty_image) {
        HomomorphismSpec::trivial(c, sample.empty_image.clone())
    } else if !sample.empty_image.is_empty() {
        classify_ii(sample)?
    } else {
        let mut segs = Vec::with_capacity(sample.points.len());
        for (x, img) in &sample.points {
            let e = ends(img).ok_or_else(|| {
                Error::Inconsistent(format!("image of {x:?} is neither a point nor a segment"))
            })?;
            segs.push((x.clone(), e));
        }
        let n_points = segs.iter().filter(|(_, (a, b))| a == b).count();
        if n_points == segs.len() {
            let pairs: Vec<(Point, Point)> = segs.into_iter().map(|(x, (a, _))| (x, a)).collect();
            HomomorphismSpec::CaseI {
                phi: fit(&pairs, c, d)?,
            }
        } else if n_points > 0 {
            return Err(Error::Inconsistent(
                "some singletons map to points and others to segments".into(),
            ));
        } else if c < 3 {
            return Err(Error::UnsupportedOpenCase);
        } else {
            classify_segments(&segs, c, d)?
        }
    };

    // case ii with c = 2 is accepted here even though `validate` insists
    // on c >= 3
    let low_case_ii = matches!(spec, HomomorphismSpec::CaseII { .. }) && c < 3;
    if !low_case_ii {
        spec.validate().map_err(|e| not_canonical(e.to_string()))?;
    }
    let spec = spec.canonical_form();
    let residual_ok = spec.empty_image() == sample.empty_image
        && sample
            .points
            .iter()
            .all(|(x, img)| spec.apply_point(x).ok().as_ref() == Some(img));
    if !residual_ok {
        return Err(not_canonical("recovered map does not reproduce the samples"));
    }
    Ok(ClassifiedForm { spec, residual_ok })
}

fn classify_ii(sample: &OracleSample) -> Result<HomomorphismSpec> {
    let (c, d) = (sample.c, sample.d);
    let Some(o) = sample.empty_image.as_point() else {
        return Err(not_canonical("image of the empty set is neither empty nor a point"));
    };
    let mut pairs = Vec::with_capacity(sample.points.len());
    for (x, img) in &sample.points {
        let far = match ends(img) {
            Some((a, b)) if a != b && (&a == o || &b == o) => {
                if &a == o {
                    b
                } else {
                    a
                }
            }
            _ => {
                return Err(not_canonical(format!(
                    "image of {x:?} is not a segment ending at the image of the empty set"
                )))
            }
        };
        pairs.push((x.clone(), far));
    }
    let phi = fit(&pairs, c, d)?;
    if phi.image().contains_point(o) {
        return Err(not_canonical("the apex lies on the image of phi"));
    }
    Ok(HomomorphismSpec::CaseII { phi, o: o.clone() })
}

fn classify_segments(
    segs: &[(Point, (Point, Point))],
    c: usize,
    d: usize,
) -> Result<HomomorphismSpec> {
    let dirs: Vec<Vec<Scalar>> = segs.iter().map(|(_, (a, b))| b.delta(a)).collect();
    let parallel = dirs
        .iter()
        .all(|u| linalg::rank(&[dirs[0].clone(), u.clone()]) == 1);
    if parallel {
        // orient every segment along the first direction
        let u = &dirs[0];
        let mut v: Option<Vec<Scalar>> = None;
        let mut pairs = Vec::with_capacity(segs.len());
        for ((x, (a, b)), w) in segs.iter().zip(&dirs) {
            let same = linalg::dot(u, w).is_positive();
            let (near, far) = if same { (a, b) } else { (b, a) };
            let diff = far.delta(near);
            match &v {
                None => v = Some(diff),
                Some(v0) if *v0 != diff => {
                    return Err(not_canonical("parallel segments of different lengths"));
                }
                _ => {}
            }
            pairs.push((x.clone(), near.clone()));
        }
        let phi = fit(&pairs, c, d)?;
        return Ok(HomomorphismSpec::CaseIII { phi, v: v.unwrap() });
    }

    let j = dirs
        .iter()
        .position(|u| linalg::rank(&[dirs[0].clone(), u.clone()]) == 2)
        .unwrap();
    let (a0, b0) = &segs[0].1;
    let (aj, bj) = &segs[j].1;
    let o = line_intersection(a0, b0, aj, bj)
        .ok_or_else(|| not_canonical("segment lines are neither parallel nor concurrent"))?;
    let mut gamma: Option<Scalar> = None;
    let mut pairs = Vec::with_capacity(segs.len());
    for (x, (a, b)) in segs {
        let u = b.delta(a);
        let (Some(sa), Some(sb)) = (line_parameter(&o, &u, a), line_parameter(&o, &u, b)) else {
            return Err(not_canonical(format!("the line of the image of {x:?} misses the apex")));
        };
        if !(sa.is_positive() && sb.is_positive() || sa.is_negative() && sb.is_negative()) {
            return Err(not_canonical(format!("the image of {x:?} contains the apex")));
        }
        let (far, ratio) = if sa.abs() > sb.abs() {
            (a, &sb / &sa)
        } else {
            (b, &sa / &sb)
        };
        match &gamma {
            None => gamma = Some(ratio),
            Some(g) if *g != ratio => {
                return Err(not_canonical("segments shrink toward the apex by different ratios"));
            }
            _ => {}
        }
        pairs.push((x.clone(), far.clone()));
    }
    let phi = fit(&pairs, c, d)?;
    Ok(HomomorphismSpec::CaseIV {
        phi,
        o,
        gamma: gamma.unwrap(),
    })
}
