//! JSON forms of the crate's inputs and results.
//!
//! Rationals are strings `"p/q"`. Integers without a denominator are accepted
//! on input; output always carries one.

use serde_json::{json, Map, Value};

use crate::classifier::{ClassifiedForm, OracleSample};
use crate::convex_functions::{
    FunctionMapReport, MaxAffineFunction, SandwichCert, TruncatedEpigraph,
};
use crate::error::{Error, Result};
use crate::geometry::{AffineSubspace, ConvexBody, Hyperplane, Point, RadonPartition};
use crate::homomorphism::{
    AffineMap, CaseTag, Counterexample, DimensionLawReport, HomomorphismSpec, VerificationReport,
};
use crate::scalar::{format_scalar, parse_scalar, Scalar};
use crate::transversal::{
    HellyReport, HyperplaneCert, ParallelSegment, RaySegment, SegmentFamily, Transversal,
    TransversalOutcome,
};

pub trait ToJson {
    fn to_json(&self) -> Value;
}

pub trait FromJson: Sized {
    fn from_json(value: &Value) -> Result<Self>;
}

/// Pretty-printed, with a trailing newline.
pub fn render(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values always serialize");
    s.push('\n');
    s
}

/// Parses text, reporting line and column on syntax errors.
pub fn parse_text(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| {
        Error::Parse(format!("{} at line {} column {}", e, e.line(), e.column()))
    })
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value> {
    v.get(name)
        .ok_or_else(|| Error::Parse(format!("missing field {name:?}")))
}

fn opt_field<'a>(v: &'a Value, name: &str) -> Option<&'a Value> {
    v.get(name).filter(|x| !x.is_null())
}

fn usize_of(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| Error::Parse(format!("{what} must be a nonnegative integer")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("{what} must be an array")))
}

fn str_of<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str()
        .ok_or_else(|| Error::Parse(format!("{what} must be a string")))
}

pub fn scalar_to_json(x: &Scalar) -> Value {
    Value::String(format_scalar(x))
}

pub fn scalar_from_json(v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => parse_scalar(s),
        Value::Number(n) if n.is_i64() => Ok(Scalar::from_integer(n.as_i64().unwrap().into())),
        _ => Err(Error::Parse(format!("expected a rational string, found {v}"))),
    }
}

pub fn vector_to_json(xs: &[Scalar]) -> Value {
    Value::Array(xs.iter().map(scalar_to_json).collect())
}

pub fn vector_from_json(v: &Value) -> Result<Vec<Scalar>> {
    array(v, "vector")?.iter().map(scalar_from_json).collect()
}

fn vector_of_dim(v: &Value, dim: usize) -> Result<Vec<Scalar>> {
    let x = vector_from_json(v)?;
    if x.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: x.len(),
        });
    }
    Ok(x)
}

fn pair_from_json(v: &Value, what: &str) -> Result<(Scalar, Scalar)> {
    match array(v, what)?.as_slice() {
        [a, b] => Ok((scalar_from_json(a)?, scalar_from_json(b)?)),
        _ => Err(Error::Parse(format!("{what} must have two entries"))),
    }
}

fn indices(xs: &[usize]) -> Value {
    json!(xs)
}

impl ToJson for Point {
    fn to_json(&self) -> Value {
        vector_to_json(self)
    }
}

impl FromJson for Point {
    fn from_json(value: &Value) -> Result<Self> {
        Ok(Point::new(vector_from_json(value)?))
    }
}

fn points_to_json(ps: &[Point]) -> Value {
    Value::Array(ps.iter().map(ToJson::to_json).collect())
}

/// A list of points, all in the same space.
pub fn points_from_json(value: &Value) -> Result<Vec<Point>> {
    let pts: Vec<Point> = array(value, "points")?
        .iter()
        .map(Point::from_json)
        .collect::<Result<_>>()?;
    if let Some(first) = pts.first() {
        if let Some(p) = pts.iter().find(|p| p.dim() != first.dim()) {
            return Err(Error::DimensionMismatch {
                expected: first.dim(),
                found: p.dim(),
            });
        }
    }
    Ok(pts)
}

impl ToJson for ConvexBody {
    fn to_json(&self) -> Value {
        json!({"dim": self.ambient_dim(), "vertices": points_to_json(self.vertices())})
    }
}

impl FromJson for ConvexBody {
    /// Any finite point list; the body is its hull.
    fn from_json(value: &Value) -> Result<Self> {
        let dim = usize_of(field(value, "dim")?, "dim")?;
        let pts = array(field(value, "vertices")?, "vertices")?
            .iter()
            .map(|p| vector_of_dim(p, dim).map(Point::new))
            .collect::<Result<Vec<_>>>()?;
        ConvexBody::hull(dim, pts)
    }
}

impl ToJson for Hyperplane {
    fn to_json(&self) -> Value {
        json!({"normal": vector_to_json(&self.normal), "offset": scalar_to_json(&self.offset)})
    }
}

impl ToJson for AffineSubspace {
    fn to_json(&self) -> Value {
        let dirs: Vec<Value> = self.directions().iter().map(|d| vector_to_json(d)).collect();
        json!({
            "ambient": self.ambient_dim(),
            "dim": self.dim(),
            "base": self.base().map_or(Value::Null, ToJson::to_json),
            "directions": dirs,
        })
    }
}

impl ToJson for RadonPartition {
    fn to_json(&self) -> Value {
        json!({
            "red": points_to_json(&self.red),
            "blue": points_to_json(&self.blue),
            "red_indices": indices(&self.red_indices),
            "blue_indices": indices(&self.blue_indices),
            "witness": self.witness.to_json(),
        })
    }
}

impl ToJson for AffineMap {
    fn to_json(&self) -> Value {
        let rows: Vec<Value> = self.matrix().iter().map(|r| vector_to_json(r)).collect();
        json!({"matrix": rows, "offset": self.offset().to_json()})
    }
}

impl FromJson for AffineMap {
    fn from_json(value: &Value) -> Result<Self> {
        let rows = array(field(value, "matrix")?, "matrix")?
            .iter()
            .map(vector_from_json)
            .collect::<Result<Vec<_>>>()?;
        let offset = Point::from_json(field(value, "offset")?)?;
        if rows.len() != offset.dim() {
            return Err(Error::DimensionMismatch {
                expected: offset.dim(),
                found: rows.len(),
            });
        }
        if let Some(first) = rows.first() {
            if let Some(r) = rows.iter().find(|r| r.len() != first.len()) {
                return Err(Error::DimensionMismatch {
                    expected: first.len(),
                    found: r.len(),
                });
            }
        }
        AffineMap::new(rows, offset)
    }
}

impl ToJson for HomomorphismSpec {
    fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("case".into(), json!(self.tag().as_str()));
        m.insert("c".into(), json!(self.source_dim()));
        m.insert("d".into(), json!(self.target_dim()));
        if let Some(phi) = self.phi() {
            m.insert("phi".into(), phi.to_json());
        }
        match self {
            HomomorphismSpec::Trivial { fixed_body, .. } => {
                m.insert("fixed_body".into(), fixed_body.to_json());
            }
            HomomorphismSpec::CaseI { .. } => {}
            HomomorphismSpec::CaseII { o, .. } => {
                m.insert("o".into(), o.to_json());
            }
            HomomorphismSpec::CaseIII { v, .. } => {
                m.insert("v".into(), vector_to_json(v));
            }
            HomomorphismSpec::CaseIV { o, gamma, .. } => {
                m.insert("o".into(), o.to_json());
                m.insert("gamma".into(), scalar_to_json(gamma));
            }
        }
        Value::Object(m)
    }
}

impl FromJson for HomomorphismSpec {
    /// Checks every side condition except that cases ii to iv may start
    /// from the plane.
    fn from_json(value: &Value) -> Result<Self> {
        let tag = CaseTag::parse(str_of(field(value, "case")?, "case")?)?;
        let c = usize_of(field(value, "c")?, "c")?;
        let d = usize_of(field(value, "d")?, "d")?;
        let spec = if tag == CaseTag::Trivial {
            let fixed_body = ConvexBody::from_json(field(value, "fixed_body")?)?;
            HomomorphismSpec::trivial(c, fixed_body)
        } else {
            let phi = AffineMap::from_json(field(value, "phi")?)?;
            let o = || -> Result<Point> { Ok(Point::new(vector_of_dim(field(value, "o")?, d)?)) };
            match tag {
                CaseTag::I => HomomorphismSpec::CaseI { phi },
                CaseTag::II => HomomorphismSpec::CaseII { phi, o: o()? },
                CaseTag::III => HomomorphismSpec::CaseIII {
                    phi,
                    v: vector_of_dim(field(value, "v")?, d)?,
                },
                _ => HomomorphismSpec::CaseIV {
                    phi,
                    o: o()?,
                    gamma: scalar_from_json(field(value, "gamma")?)?,
                },
            }
        };
        if spec.source_dim() != c || spec.target_dim() != d {
            return Err(Error::InvalidSpec(format!(
                "declared c = {c}, d = {d} but the data has c = {}, d = {}",
                spec.source_dim(),
                spec.target_dim()
            )));
        }
        spec.validate_planar()?;
        Ok(spec)
    }
}

impl ToJson for OracleSample {
    fn to_json(&self) -> Value {
        let points: Vec<Value> = self
            .points
            .iter()
            .map(|(x, img)| json!({"x": x.to_json(), "image": img.to_json()}))
            .collect();
        json!({"c": self.c, "d": self.d, "empty_image": self.empty_image.to_json(), "points": points})
    }
}

impl FromJson for OracleSample {
    fn from_json(value: &Value) -> Result<Self> {
        let c = usize_of(field(value, "c")?, "c")?;
        let d = usize_of(field(value, "d")?, "d")?;
        let empty_image = ConvexBody::from_json(field(value, "empty_image")?)?;
        let points = array(field(value, "points")?, "points")?
            .iter()
            .map(|p| {
                let x = Point::new(vector_of_dim(field(p, "x")?, c)?);
                let img = ConvexBody::from_json(field(p, "image")?)?;
                if img.ambient_dim() != d {
                    return Err(Error::DimensionMismatch {
                        expected: d,
                        found: img.ambient_dim(),
                    });
                }
                Ok((x, img))
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            c,
            d,
            empty_image,
            points,
        })
    }
}

impl ToJson for ClassifiedForm {
    fn to_json(&self) -> Value {
        let mut v = self.spec.to_json();
        v["residual_ok"] = json!(self.residual_ok);
        v
    }
}

impl ToJson for Counterexample {
    fn to_json(&self) -> Value {
        json!({
            "trial": self.trial,
            "check": self.check.name(),
            "c": self.c.to_json(),
            "d": self.d.to_json(),
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
        })
    }
}

impl ToJson for VerificationReport {
    fn to_json(&self) -> Value {
        json!({
            "trials": self.trials,
            "axiom_meet_ok": self.axiom_meet_ok,
            "axiom_join_ok": self.axiom_join_ok,
            "cond_i_ok": self.cond_i_ok,
            "cond_ii_ok": self.cond_ii_ok,
            "cond_iii_ok": self.cond_iii_ok,
            "cond_iv_ok": self.cond_iv_ok,
            "all_ok": self.all_ok(),
            "counterexample": self.counterexample.as_ref().map_or(Value::Null, ToJson::to_json),
        })
    }
}

impl ToJson for DimensionLawReport {
    fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|e| {
                json!({
                    "dim_body": e.dim_body,
                    "dim_image": e.dim_image,
                    "monotone_ok": e.monotone_ok,
                    "bound_ok": e.bound_ok,
                    "profile_ok": e.profile_ok,
                })
            })
            .collect();
        json!({
            "entries": entries,
            "monotone_ok": self.monotone_ok(),
            "bound_ok": self.bound_ok(),
            "profile_ok": self.profile_ok(),
            "all_ok": self.all_ok(),
        })
    }
}

impl ToJson for SegmentFamily {
    fn to_json(&self) -> Value {
        match self {
            SegmentFamily::Rays { dim, apex, segments } => {
                let segs: Vec<Value> = segments
                    .iter()
                    .map(|s| {
                        json!({
                            "u": vector_to_json(&s.direction),
                            "s": [scalar_to_json(&s.s_lo), scalar_to_json(&s.s_hi)],
                        })
                    })
                    .collect();
                json!({"mode": "rays", "dim": dim, "o": apex.to_json(), "segments": segs})
            }
            SegmentFamily::Parallel { dim, segments } => {
                let segs: Vec<Value> = segments
                    .iter()
                    .map(|s| {
                        json!({
                            "x": vector_to_json(&s.base),
                            "band": [scalar_to_json(&s.lo), scalar_to_json(&s.hi)],
                        })
                    })
                    .collect();
                json!({"mode": "parallel", "dim": dim, "segments": segs})
            }
        }
    }
}

impl FromJson for SegmentFamily {
    /// Ray segments are `o + s·u` for `s` in the given range; parallel ones
    /// sit over `x ∈ E^(dim - 1)` between the two heights.
    fn from_json(value: &Value) -> Result<Self> {
        let dim = usize_of(field(value, "dim")?, "dim")?;
        let segs = array(field(value, "segments")?, "segments")?;
        let family = match str_of(field(value, "mode")?, "mode")? {
            "rays" => {
                let apex = match opt_field(value, "o") {
                    Some(o) => Point::new(vector_of_dim(o, dim)?),
                    None => Point::origin(dim),
                };
                let segments = segs
                    .iter()
                    .map(|s| {
                        let u = vector_of_dim(field(s, "u")?, dim)?;
                        let (lo, hi) = pair_from_json(field(s, "s")?, "s")?;
                        RaySegment::new(u, lo, hi)
                    })
                    .collect::<Result<_>>()?;
                SegmentFamily::Rays { dim, apex, segments }
            }
            "parallel" => {
                if dim == 0 {
                    return Err(Error::Parse("parallel mode needs dim >= 1".into()));
                }
                let segments = segs
                    .iter()
                    .map(|s| {
                        let x = vector_of_dim(field(s, "x")?, dim - 1)?;
                        let (lo, hi) = pair_from_json(field(s, "band")?, "band")?;
                        ParallelSegment::new(x, lo, hi)
                    })
                    .collect::<Result<_>>()?;
                SegmentFamily::Parallel { dim, segments }
            }
            other => return Err(Error::Parse(format!("unknown mode {other:?}"))),
        };
        family.check()?;
        Ok(family)
    }
}

impl ToJson for HyperplaneCert {
    fn to_json(&self) -> Value {
        let hits = vector_to_json(&self.hits);
        match &self.hyperplane {
            Transversal::Pole(a) => json!({"pole": vector_to_json(a), "hits": hits}),
            Transversal::Graph { slope, intercept } => json!({
                "slope": vector_to_json(slope),
                "intercept": scalar_to_json(intercept),
                "hits": hits,
            }),
        }
    }
}

impl ToJson for TransversalOutcome {
    fn to_json(&self) -> Value {
        match self {
            TransversalOutcome::Feasible(cert) => {
                json!({"feasible": true, "certificate": cert.to_json()})
            }
            TransversalOutcome::Infeasible { subfamily } => {
                json!({"feasible": false, "minimal_infeasible": indices(subfamily)})
            }
        }
    }
}

impl ToJson for HellyReport {
    fn to_json(&self) -> Value {
        let opt = |x: &Option<Vec<usize>>| x.as_deref().map_or(Value::Null, indices);
        json!({
            "subfamily_size": self.subfamily_size,
            "subfamilies_checked": self.subfamilies_checked,
            "global_feasible": self.global_feasible,
            "all_subfamilies_feasible": self.all_subfamilies_feasible,
            "compactness_witness": opt(&self.compactness_witness),
            "implication_holds": self.implication_holds,
            "minimal_infeasible": opt(&self.minimal_infeasible),
        })
    }
}

/// Either side of the conjugation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Function {
    Primal(TruncatedEpigraph),
    Conjugate(MaxAffineFunction),
}

impl ToJson for TruncatedEpigraph {
    fn to_json(&self) -> Value {
        if self.is_plus_infinity() {
            json!({"kind": "plus_inf", "dim": self.dim(), "kappa": scalar_to_json(self.kappa())})
        } else {
            json!({
                "kind": "trunc_epi",
                "kappa": scalar_to_json(self.kappa()),
                "body": self.body().to_json(),
            })
        }
    }
}

impl ToJson for MaxAffineFunction {
    fn to_json(&self) -> Value {
        if self.is_minus_infinity() {
            return json!({"kind": "minus_inf", "dim": self.dim()});
        }
        let pieces: Vec<Value> = self
            .pieces()
            .iter()
            .map(|(a, b)| json!({"a": vector_to_json(a), "b": scalar_to_json(b)}))
            .collect();
        json!({"kind": "max_affine", "dim": self.dim(), "pieces": pieces})
    }
}

impl ToJson for Function {
    fn to_json(&self) -> Value {
        match self {
            Function::Primal(f) => f.to_json(),
            Function::Conjugate(g) => g.to_json(),
        }
    }
}

fn kappa_of(value: &Value) -> Result<Scalar> {
    opt_field(value, "kappa").map_or(Ok(Scalar::from_integer(1.into())), scalar_from_json)
}

impl FromJson for Function {
    /// `kappa` defaults to 1. The infinite functions need `dim`; a
    /// max-affine function without pieces is `-∞`.
    fn from_json(value: &Value) -> Result<Self> {
        let dim = || usize_of(field(value, "dim")?, "dim");
        match str_of(field(value, "kind")?, "kind")? {
            "trunc_epi" => {
                let body = ConvexBody::from_json(field(value, "body")?)?;
                let f = TruncatedEpigraph::new(kappa_of(value)?, body)?;
                if f.is_plus_infinity() {
                    return Err(Error::Parse("trunc_epi needs a nonempty body; use plus_inf".into()));
                }
                Ok(Function::Primal(f))
            }
            "plus_inf" => Ok(Function::Primal(TruncatedEpigraph::plus_infinity(
                dim()?,
                kappa_of(value)?,
            ))),
            "minus_inf" => Ok(Function::Conjugate(MaxAffineFunction::minus_infinity(dim()?))),
            "max_affine" => {
                let raw = array(field(value, "pieces")?, "pieces")?;
                let pieces = raw
                    .iter()
                    .map(|p| Ok((vector_from_json(field(p, "a")?)?, scalar_from_json(field(p, "b")?)?)))
                    .collect::<Result<Vec<_>>>()?;
                let c = match (opt_field(value, "dim"), pieces.first()) {
                    (Some(d), _) => usize_of(d, "dim")?,
                    (None, Some((a, _))) => a.len(),
                    (None, None) => return Err(Error::Parse("max_affine without pieces needs dim".into())),
                };
                Ok(Function::Conjugate(MaxAffineFunction::new(c, pieces)?))
            }
            other => Err(Error::Parse(format!("unknown function kind {other:?}"))),
        }
    }
}

impl ToJson for SandwichCert {
    fn to_json(&self) -> Value {
        let gaps: Vec<Value> = self
            .gaps
            .iter()
            .map(|(y, lo, hi)| {
                json!({"y": y.to_json(), "lower_gap": scalar_to_json(lo), "upper_gap": scalar_to_json(hi)})
            })
            .collect();
        json!({"body": self.body.to_json(), "gaps": gaps})
    }
}

impl ToJson for FunctionMapReport {
    fn to_json(&self) -> Value {
        let cx = self.counterexample.as_ref().map_or(Value::Null, |(t, which, a, b)| {
            json!({"trial": t, "check": which, "c": a.to_json(), "d": b.to_json()})
        });
        json!({
            "trials": self.trials,
            "meet_ok": self.meet_ok,
            "join_ok": self.join_ok,
            "counterexample": cx,
        })
    }
}
