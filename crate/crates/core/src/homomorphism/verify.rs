use num_bigint::BigInt;
use rand::Rng;
use rayon::prelude::*;

use super::{CaseTag, HomomorphismSpec};
use crate::error::{Error, Result};
use crate::geometry::{ConvexBody, Point};
use crate::linalg;
use crate::random::{random_body, random_point, stream};
use crate::scalar::Scalar;

/// Anything that sends bodies in `E^c` to bodies in `E^d`.
pub trait BodyMap: Sync {
    fn source_dim(&self) -> usize;
    fn target_dim(&self) -> usize;
    fn apply(&self, body: &ConvexBody) -> Result<ConvexBody>;
}

impl BodyMap for HomomorphismSpec {
    fn source_dim(&self) -> usize {
        HomomorphismSpec::source_dim(self)
    }

    fn target_dim(&self) -> usize {
        HomomorphismSpec::target_dim(self)
    }

    fn apply(&self, body: &ConvexBody) -> Result<ConvexBody> {
        self.apply_body(body)
    }
}

/// A body map given by a closure.
pub struct FnMap<F> {
    pub c: usize,
    pub d: usize,
    pub f: F,
}

impl<F> BodyMap for FnMap<F>
where
    F: Fn(&ConvexBody) -> Result<ConvexBody> + Sync,
{
    fn source_dim(&self) -> usize {
        self.c
    }

    fn target_dim(&self) -> usize {
        self.d
    }

    fn apply(&self, body: &ConvexBody) -> Result<ConvexBody> {
        (self.f)(body)
    }
}

/// The identity or inclusion that failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Check {
    Meet,
    Join,
    /// `x ∈ C ⇒ Φ(x) ⊆ Φ(C)`.
    CondI,
    /// `x ∉ C ⇒ Φ(x) ∧ Φ(C) = Φ(∅)`.
    CondII,
    /// `x ∈ (y, z) ⇒ Φ(x) ⊆ Φ(y) ∨ Φ(z)`.
    CondIII,
    /// `C ⊆ ∨ x_i ⇒ Φ(C) ⊆ ∨ Φ(x_i)`.
    CondIV,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Meet => "meet",
            Check::Join => "join",
            Check::CondI => "cond_i",
            Check::CondII => "cond_ii",
            Check::CondIII => "cond_iii",
            Check::CondIV => "cond_iv",
        }
    }
}

/// First failure found: the two inputs and both sides of the broken
/// relation. For the conditions, `c` is the body and `d` the point or
/// points involved, as a body.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub trial: u64,
    pub check: Check,
    pub c: ConvexBody,
    pub d: ConvexBody,
    pub lhs: ConvexBody,
    pub rhs: ConvexBody,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub trials: u64,
    pub axiom_meet_ok: bool,
    pub axiom_join_ok: bool,
    pub cond_i_ok: bool,
    pub cond_ii_ok: bool,
    pub cond_iii_ok: bool,
    pub cond_iv_ok: bool,
    pub counterexample: Option<Counterexample>,
}

impl VerificationReport {
    pub fn all_ok(&self) -> bool {
        self.axiom_meet_ok
            && self.axiom_join_ok
            && self.cond_i_ok
            && self.cond_ii_ok
            && self.cond_iii_ok
            && self.cond_iv_ok
    }

    fn flag(&mut self, check: Check) -> &mut bool {
        match check {
            Check::Meet => &mut self.axiom_meet_ok,
            Check::Join => &mut self.axiom_join_ok,
            Check::CondI => &mut self.cond_i_ok,
            Check::CondII => &mut self.cond_ii_ok,
            Check::CondIII => &mut self.cond_iii_ok,
            Check::CondIV => &mut self.cond_iv_ok,
        }
    }
}

fn checked(map: &dyn BodyMap, body: &ConvexBody) -> Result<ConvexBody> {
    let out = map.apply(body)?;
    if out.ambient_dim() != map.target_dim() {
        return Err(Error::MalformedSubject(format!(
            "image has ambient dimension {}, expected {}",
            out.ambient_dim(),
            map.target_dim()
        )));
    }
    Ok(out)
}

/// Random convex combination of the vertices.
fn point_in(rng: &mut impl Rng, body: &ConvexBody) -> Point {
    let verts = body.vertices();
    let weights: Vec<Scalar> = verts
        .iter()
        .map(|_| Scalar::from_integer(BigInt::from(rng.gen_range(0..=4))))
        .collect();
    let total: Scalar = weights.iter().sum();
    if total == Scalar::from_integer(0.into()) {
        return verts[0].clone();
    }
    let mut x = vec![Scalar::from_integer(0.into()); body.ambient_dim()];
    for (w, v) in weights.iter().zip(verts) {
        x = linalg::add(&x, &linalg::scale(v, &(w / &total)));
    }
    Point::new(x)
}

/// The second body of a pair: half the time it is forced to overlap the
/// first, so that meets are not almost always empty.
fn partner(rng: &mut impl Rng, c: &ConvexBody, dim: usize) -> ConvexBody {
    let d = random_body(rng, dim, 6);
    if rng.gen_bool(0.5) {
        let mut pts = d.vertices().to_vec();
        pts.push(point_in(rng, c));
        ConvexBody::hull(dim, pts).unwrap()
    } else {
        d
    }
}

type Failure = (Check, ConvexBody, ConvexBody, ConvexBody, ConvexBody);

fn run_trial(map: &dyn BodyMap, seed: u64, trial: u64) -> Result<Vec<Failure>> {
    let c_dim = map.source_dim();
    let mut rng = stream(seed, "hom-verify", trial);
    let c = random_body(&mut rng, c_dim, 6);
    let d = partner(&mut rng, &c, c_dim);
    let mut fails = Vec::new();
    let phi_c = checked(map, &c)?;
    let phi_d = checked(map, &d)?;
    let phi_empty = checked(map, &ConvexBody::empty(c_dim))?;

    let lhs = checked(map, &c.meet(&d)?)?;
    let rhs = phi_c.meet(&phi_d)?;
    if lhs != rhs {
        fails.push((Check::Meet, c.clone(), d.clone(), lhs, rhs));
    }
    let lhs = checked(map, &c.join(&d)?)?;
    let rhs = phi_c.join(&phi_d)?;
    if lhs != rhs {
        fails.push((Check::Join, c.clone(), d.clone(), lhs, rhs));
    }

    let x = point_in(&mut rng, &c);
    let x_body = ConvexBody::point(x);
    let phi_x = checked(map, &x_body)?;
    if !phi_c.contains(&phi_x) {
        fails.push((Check::CondI, c.clone(), x_body, phi_x, phi_c.clone()));
    }

    let y = random_point(&mut rng, c_dim);
    if !c.contains_point(&y) {
        let y_body = ConvexBody::point(y);
        let phi_y = checked(map, &y_body)?;
        let lhs = phi_y.meet(&phi_c)?;
        if lhs != phi_empty {
            fails.push((Check::CondII, c.clone(), y_body, lhs, phi_empty.clone()));
        }
    }

    let (y, z) = (random_point(&mut rng, c_dim), random_point(&mut rng, c_dim));
    let t = Scalar::new(BigInt::from(rng.gen_range(1..8)), BigInt::from(8));
    let x_body = ConvexBody::point(Point::lerp(&y, &z, &t));
    let ends = ConvexBody::hull(c_dim, vec![y.clone(), z.clone()])?;
    let phi_x = checked(map, &x_body)?;
    let rhs = checked(map, &ConvexBody::point(y))?.join(&checked(map, &ConvexBody::point(z))?)?;
    if !rhs.contains(&phi_x) {
        fails.push((Check::CondIII, ends, x_body, phi_x, rhs));
    }

    // C ⊆ conv(vertices of C ∨ D)
    let cover = c.join(&d)?;
    let mut rhs = phi_empty.clone();
    for v in cover.vertices() {
        rhs = rhs.join(&checked(map, &ConvexBody::point(v.clone()))?)?;
    }
    if !rhs.contains(&phi_c) {
        fails.push((Check::CondIV, c.clone(), cover, phi_c, rhs));
    }
    Ok(fails)
}

/// Checks both lattice axioms and the four pointwise conditions on `trials`
/// seeded random pairs of bodies in `E^c`. Trials run in parallel; the
/// counterexample is the first failure by trial number.
pub fn verify_homomorphism(map: &dyn BodyMap, trials: u64, seed: u64) -> Result<VerificationReport> {
    let results: Vec<Vec<Failure>> = (0..trials)
        .into_par_iter()
        .map(|t| run_trial(map, seed, t))
        .collect::<Result<_>>()?;
    let mut report = VerificationReport {
        trials,
        axiom_meet_ok: true,
        axiom_join_ok: true,
        cond_i_ok: true,
        cond_ii_ok: true,
        cond_iii_ok: true,
        cond_iv_ok: true,
        counterexample: None,
    };
    for (trial, fails) in results.into_iter().enumerate() {
        for (check, c, d, lhs, rhs) in fails {
            *report.flag(check) = false;
            report.counterexample.get_or_insert(Counterexample {
                trial: trial as u64,
                check,
                c,
                d,
                lhs,
                rhs,
            });
        }
    }
    Ok(report)
}

/// One row of [`DimensionLawReport`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionEntry {
    pub dim_body: isize,
    pub dim_image: isize,
    /// `dim C ≤ dim Φ(C)`, checked when `Φ(∅) = ∅`.
    pub monotone_ok: bool,
    /// `dim Φ(C) ≤ dim C + d - c`, checked when `dim C ≤ c - 2`.
    pub bound_ok: bool,
    /// Matches the exact profile of the case.
    pub profile_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionLawReport {
    pub entries: Vec<DimensionEntry>,
}

impl DimensionLawReport {
    pub fn monotone_ok(&self) -> bool {
        self.entries.iter().all(|e| e.monotone_ok)
    }

    pub fn bound_ok(&self) -> bool {
        self.entries.iter().all(|e| e.bound_ok)
    }

    pub fn profile_ok(&self) -> bool {
        self.entries.iter().all(|e| e.profile_ok)
    }

    pub fn all_ok(&self) -> bool {
        self.monotone_ok() && self.bound_ok() && self.profile_ok()
    }
}

/// Expected `dim Φ(C)` for a body of dimension `k`.
pub fn expected_image_dim(spec: &HomomorphismSpec, k: isize) -> isize {
    match spec.tag() {
        CaseTag::Trivial => match spec {
            HomomorphismSpec::Trivial { fixed_body, .. } => fixed_body.dim(),
            _ => unreachable!(),
        },
        CaseTag::I => k,
        CaseTag::II => k + 1,
        CaseTag::III | CaseTag::IV => {
            if k < 0 {
                -1
            } else {
                k + 1
            }
        }
    }
}

pub fn check_dimension_laws(
    spec: &HomomorphismSpec,
    bodies: &[ConvexBody],
) -> Result<DimensionLawReport> {
    let (c, d) = (spec.source_dim() as isize, spec.target_dim() as isize);
    let empty_to_empty = spec.empty_image().is_empty();
    let trivial = spec.tag() == CaseTag::Trivial;
    let entries = bodies
        .iter()
        .map(|body| {
            let k = body.dim();
            let m = spec.apply_body(body)?.dim();
            Ok(DimensionEntry {
                dim_body: k,
                dim_image: m,
                monotone_ok: trivial || !empty_to_empty || k <= m,
                bound_ok: trivial || k > c - 2 || m <= k + d - c,
                profile_ok: m == expected_image_dim(spec, k),
            })
        })
        .collect::<Result<_>>()?;
    Ok(DimensionLawReport { entries })
}
