//! The `convexlat` command: reads JSON instances, runs one operation and
//! prints the result as JSON.
//!
//! Exit status is 0 on success (or a feasible / verified result), 1 when the
//! answer is negative (infeasible, refuted, rejected), and 2 on bad input.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use convexlat::classifier::{check_order_preservation, classify, fit_affine_map, OracleSample};
use convexlat::convex_functions::{
    canonical_anti_homomorphism, canonical_function_homomorphism, fenchel, fenchel_inverse,
    indicator, join_minus, join_plus, meet_minus, meet_plus, sample_points, sandwich_certificate,
    support_function, verify_anti_homomorphism, verify_function_homomorphism, ExtendedValue,
};
use convexlat::geometry::{self, radon_partition};
use convexlat::homomorphism::{check_dimension_laws, verify_homomorphism, AffineMap, HomomorphismSpec};
use convexlat::json::{
    parse_text, points_from_json, render, scalar_from_json, scalar_to_json, vector_from_json,
    vector_to_json, FromJson, Function, ToJson,
};
use convexlat::random::{random_body_of_dim, stream};
use convexlat::scalar::{format_scalar, parse_scalar, Scalar};
use convexlat::transversal::{
    affine_dependence_hyperplane, helly_check, pole, segment_constraint, transversal, RaySegment,
    SegmentFamily,
};
use convexlat::{ConvexBody, Error, Point};

#[derive(Debug, Parser)]
#[command(name = "convexlat", version, about = "Exact convex-body lattices from the command line")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Number of random trials (or generated bodies for `dim-laws`).
    #[arg(long, global = true, default_value_t = 100)]
    pub trials: u64,

    /// Ceiling height for truncated epigraphs.
    #[arg(long, global = true, default_value = "1")]
    pub kappa: String,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LatticeOp {
    MeetPlus,
    JoinPlus,
    MeetMinus,
    JoinMinus,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Canonical form of the hull of the listed vertices.
    Hull { body: PathBuf },
    Meet { a: PathBuf, b: PathBuf },
    Join { a: PathBuf, b: PathBuf },
    Dim { body: PathBuf },
    AffHull { body: PathBuf },
    /// Input: `{"points": [...]}`.
    Radon { points: PathBuf },
    HomApply { spec: PathBuf, body: PathBuf },
    /// The point is a bare JSON array.
    HomApplyPoint { spec: PathBuf, point: PathBuf },
    HomVerify { spec: PathBuf },
    HomClassify { sample: PathBuf },
    DimLaws { spec: PathBuf },
    /// Input: `{"c", "d", "pairs": [{"x", "y"}]}`.
    FitAffine { pairs: PathBuf },
    /// Input: `{"pairs": [{"x", "y"}], "triples": [[i, j, k]]}`.
    OrderCheck { input: PathBuf },
    Transversal { family: PathBuf },
    Helly { family: PathBuf },
    /// Input: `{"o", "normal", "offset"}`.
    Pole { input: PathBuf },
    /// Input: `{"u", "s": [lo, hi]}`.
    Band { input: PathBuf },
    /// Input: `{"c", "images": [bodies], "sources": [points]?}`.
    AffDep { input: PathBuf },
    Indicator { body: PathBuf },
    Support { body: PathBuf },
    Fenchel { function: PathBuf },
    FenchelInv { function: PathBuf },
    /// The point is a bare JSON array.
    FuncEval { function: PathBuf, point: PathBuf },
    Sandwich { function: PathBuf },
    FuncLattice {
        #[arg(long, value_enum)]
        op: LatticeOp,
        f: PathBuf,
        g: PathBuf,
    },
    /// Input: an affine map `{"matrix", "offset"}`.
    HomFnVerify { phi: PathBuf },
    /// Input: an affine map `{"matrix", "offset"}`.
    AntiHomVerify { phi: PathBuf },
}

/// Each verb with the library operation behind it.
pub const VERBS: &[(&str, &str)] = &[
    ("hull", "geometry::convex_hull"),
    ("meet", "geometry::meet"),
    ("join", "geometry::join"),
    ("dim", "geometry::dim"),
    ("aff-hull", "geometry::affine_hull"),
    ("radon", "geometry::radon_partition"),
    ("hom-apply", "homomorphism::HomomorphismSpec::apply_body"),
    ("hom-apply-point", "homomorphism::HomomorphismSpec::apply_point"),
    ("hom-verify", "homomorphism::verify_homomorphism"),
    ("hom-classify", "classifier::classify"),
    ("dim-laws", "homomorphism::check_dimension_laws"),
    ("fit-affine", "classifier::fit_affine_map"),
    ("order-check", "classifier::check_order_preservation"),
    ("transversal", "transversal::transversal"),
    ("helly", "transversal::helly_check"),
    ("pole", "transversal::pole"),
    ("band", "transversal::segment_constraint"),
    ("aff-dep", "transversal::affine_dependence_hyperplane"),
    ("indicator", "convex_functions::indicator"),
    ("support", "convex_functions::support_function"),
    ("fenchel", "convex_functions::fenchel"),
    ("fenchel-inv", "convex_functions::fenchel_inverse"),
    ("func-eval", "convex_functions::TruncatedEpigraph::eval"),
    ("sandwich", "convex_functions::sandwich_certificate"),
    ("func-lattice", "convex_functions::{meet_plus, join_plus, meet_minus, join_minus}"),
    ("hom-fn-verify", "convex_functions::canonical_function_homomorphism"),
    ("anti-hom-verify", "convex_functions::canonical_anti_homomorphism"),
];

/// Names of the subcommands clap knows about.
pub fn verb_names() -> Vec<String> {
    Cli::command()
        .get_subcommands()
        .map(|c| c.get_name().to_string())
        .collect()
}

enum Outcome {
    Yes(Value),
    No(Value),
}

fn read(path: &Path) -> Result<Value, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_text(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

fn body(path: &Path) -> Result<ConvexBody, Error> {
    ConvexBody::from_json(&read(path)?)
}

fn spec(path: &Path) -> Result<HomomorphismSpec, Error> {
    HomomorphismSpec::from_json(&read(path)?)
}

fn function(path: &Path) -> Result<Function, Error> {
    Function::from_json(&read(path)?)
}

fn point(path: &Path) -> Result<Point, Error> {
    Point::from_json(&read(path)?)
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value, Error> {
    v.get(name)
        .ok_or_else(|| Error::Parse(format!("missing field {name:?}")))
}

fn count(v: &Value, name: &str) -> Result<usize, Error> {
    field(v, name)?
        .as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| Error::Parse(format!("{name} must be a nonnegative integer")))
}

fn pairs(v: &Value) -> Result<Vec<(Point, Point)>, Error> {
    field(v, "pairs")?
        .as_array()
        .ok_or_else(|| Error::Parse("pairs must be an array".into()))?
        .iter()
        .map(|p| Ok((Point::from_json(field(p, "x")?)?, Point::from_json(field(p, "y")?)?)))
        .collect()
}

fn extended(v: &ExtendedValue) -> Value {
    match v {
        ExtendedValue::MinusInf => json!("-inf"),
        ExtendedValue::PlusInf => json!("+inf"),
        ExtendedValue::Finite(x) => json!(format_scalar(x)),
    }
}

fn affine_map(path: &Path) -> Result<AffineMap, Error> {
    AffineMap::from_json(&read(path)?)
}

/// Errors that answer the question negatively rather than reject the input.
fn verdict(e: &Error) -> bool {
    matches!(
        e,
        Error::NotCanonical(_)
            | Error::Inconsistent(_)
            | Error::UnsupportedOpenCase
            | Error::NonAffineData { .. }
    )
}

fn refusal(e: &Error) -> Value {
    json!({"error": e.to_string()})
}

fn dispatch(cli: &Cli) -> Result<Outcome, Error> {
    use Outcome::{No, Yes};
    let kappa: Scalar = parse_scalar(&cli.kappa)?;
    let (seed, trials) = (cli.seed, cli.trials);
    Ok(match &cli.command {
        Command::Hull { body: p } => {
            let b = body(p)?;
            Yes(geometry::convex_hull(b.vertices())
                .map(|h| if b.is_empty() { b.clone() } else { h })?
                .to_json())
        }
        Command::Meet { a, b } => Yes(geometry::meet(&body(a)?, &body(b)?)?.to_json()),
        Command::Join { a, b } => Yes(geometry::join(&body(a)?, &body(b)?)?.to_json()),
        Command::Dim { body: p } => Yes(json!({"dim": geometry::dim(&body(p)?)})),
        Command::AffHull { body: p } => Yes(geometry::affine_hull(&body(p)?).to_json()),
        Command::Radon { points } => {
            let pts = points_from_json(field(&read(points)?, "points")?)?;
            Yes(radon_partition(&pts)?.to_json())
        }
        Command::HomApply { spec: s, body: b } => Yes(spec(s)?.apply_body(&body(b)?)?.to_json()),
        Command::HomApplyPoint { spec: s, point: p } => {
            Yes(spec(s)?.apply_point(&point(p)?)?.to_json())
        }
        Command::HomVerify { spec: s } => {
            let report = verify_homomorphism(&spec(s)?, trials, seed)?;
            let out = report.to_json();
            if report.all_ok() {
                Yes(out)
            } else {
                No(out)
            }
        }
        Command::HomClassify { sample } => {
            let sample = OracleSample::from_json(&read(sample)?)?;
            match classify(&sample) {
                Ok(form) => Yes(form.to_json()),
                Err(e) if verdict(&e) => No(refusal(&e)),
                Err(e) => return Err(e),
            }
        }
        Command::DimLaws { spec: s } => {
            let spec = spec(s)?;
            let c = spec.source_dim();
            let bodies: Vec<ConvexBody> = (0..trials)
                .map(|i| {
                    let mut rng = stream(seed, "dim-laws", i);
                    random_body_of_dim(&mut rng, c, (i % (c as u64 + 2)) as isize - 1)
                })
                .collect();
            let report = check_dimension_laws(&spec, &bodies)?;
            let out = report.to_json();
            if report.all_ok() {
                Yes(out)
            } else {
                No(out)
            }
        }
        Command::FitAffine { pairs: p } => {
            let v = read(p)?;
            let (c, d) = (count(&v, "c")?, count(&v, "d")?);
            match fit_affine_map(&pairs(&v)?, c, d) {
                Ok(map) => Yes(map.to_json()),
                Err(e) if verdict(&e) => No(refusal(&e)),
                Err(e) => return Err(e),
            }
        }
        Command::OrderCheck { input } => {
            let v = read(input)?;
            let triples = field(&v, "triples")?
                .as_array()
                .ok_or_else(|| Error::Parse("triples must be an array".into()))?
                .iter()
                .map(|t| match t.as_array().map(|a| a.iter().map(Value::as_u64).collect::<Vec<_>>()) {
                    Some(ix) if ix.len() == 3 && ix.iter().all(Option::is_some) => {
                        Ok((ix[0].unwrap() as usize, ix[1].unwrap() as usize, ix[2].unwrap() as usize))
                    }
                    _ => Err(Error::Parse("each triple must be three indices".into())),
                })
                .collect::<Result<Vec<_>, _>>()?;
            let ok = check_order_preservation(&pairs(&v)?, &triples)?;
            let out = json!({"order_preserved": ok});
            if ok {
                Yes(out)
            } else {
                No(out)
            }
        }
        Command::Transversal { family } => {
            let outcome = transversal(&SegmentFamily::from_json(&read(family)?)?)?;
            if outcome.is_feasible() {
                Yes(outcome.to_json())
            } else {
                No(outcome.to_json())
            }
        }
        Command::Helly { family } => {
            let report = helly_check(&SegmentFamily::from_json(&read(family)?)?)?;
            if report.global_feasible && report.implication_holds {
                Yes(report.to_json())
            } else {
                No(report.to_json())
            }
        }
        Command::Pole { input } => {
            let v = read(input)?;
            let o = vector_from_json(field(&v, "o")?)?;
            let normal = vector_from_json(field(&v, "normal")?)?;
            if o.len() != normal.len() {
                return Err(Error::DimensionMismatch {
                    expected: o.len(),
                    found: normal.len(),
                });
            }
            let a = pole(&o, &normal, scalar_from_json(field(&v, "offset")?)?)?;
            Yes(json!({"pole": vector_to_json(&a)}))
        }
        Command::Band { input } => {
            let v = read(input)?;
            let u = vector_from_json(field(&v, "u")?)?;
            let s = field(&v, "s")?
                .as_array()
                .filter(|s| s.len() == 2)
                .ok_or_else(|| Error::Parse("s must have two entries".into()))?;
            let seg = RaySegment::new(u, scalar_from_json(&s[0])?, scalar_from_json(&s[1])?)?;
            let band = segment_constraint(&seg);
            Yes(json!({
                "normal": vector_to_json(&band.normal),
                "lo": scalar_to_json(&band.lo),
                "hi": scalar_to_json(&band.hi),
            }))
        }
        Command::AffDep { input } => {
            let v = read(input)?;
            let c = count(&v, "c")?;
            let images = field(&v, "images")?
                .as_array()
                .ok_or_else(|| Error::Parse("images must be an array".into()))?
                .iter()
                .map(ConvexBody::from_json)
                .collect::<Result<Vec<_>, _>>()?;
            let sources = match v.get("sources").filter(|s| !s.is_null()) {
                Some(s) => Some(points_from_json(s)?),
                None => None,
            };
            match affine_dependence_hyperplane(&images, c, sources.as_deref()) {
                Ok(h) => Yes(h.to_json()),
                Err(e @ Error::NotFound { .. }) => No(refusal(&e)),
                Err(e) => return Err(e),
            }
        }
        Command::Indicator { body: p } => Yes(indicator(&body(p)?, kappa)?.to_json()),
        Command::Support { body: p } => Yes(support_function(&body(p)?).to_json()),
        Command::Fenchel { function: p } => match function(p)? {
            Function::Primal(f) => Yes(fenchel(&f).to_json()),
            Function::Conjugate(_) => {
                return Err(Error::MalformedInput(
                    "fenchel takes a trunc_epi or plus_inf function; use fenchel-inv for max_affine".into(),
                ))
            }
        },
        Command::FenchelInv { function: p } => match function(p)? {
            Function::Conjugate(g) => Yes(fenchel_inverse(&g, kappa)?.to_json()),
            Function::Primal(_) => {
                return Err(Error::MalformedInput(
                    "fenchel-inv takes a max_affine or minus_inf function".into(),
                ))
            }
        },
        Command::FuncEval { function: p, point: x } => {
            let x = point(x)?;
            let value = match function(p)? {
                Function::Primal(f) => f.eval(&x)?,
                Function::Conjugate(g) => g.eval(&x)?,
            };
            Yes(json!({"value": extended(&value)}))
        }
        Command::Sandwich { function: p } => match function(p)? {
            Function::Conjugate(g) => {
                let mut rng = stream(seed, "sandwich", 0);
                let samples = sample_points(g.dim(), 10, &mut rng);
                match sandwich_certificate(&g, &kappa, &samples) {
                    Ok(cert) => Yes(cert.to_json()),
                    Err(e @ Error::NotInClass(_)) => No(refusal(&e)),
                    Err(e) => return Err(e),
                }
            }
            Function::Primal(_) => {
                return Err(Error::MalformedInput("sandwich takes a max_affine function".into()))
            }
        },
        Command::FuncLattice { op, f, g } => {
            let (f, g) = (function(f)?, function(g)?);
            let out = match (op, f, g) {
                (LatticeOp::MeetPlus, Function::Primal(f), Function::Primal(g)) => {
                    Function::Primal(meet_plus(&f, &g)?)
                }
                (LatticeOp::JoinPlus, Function::Primal(f), Function::Primal(g)) => {
                    Function::Primal(join_plus(&f, &g)?)
                }
                (LatticeOp::MeetMinus, Function::Conjugate(f), Function::Conjugate(g)) => {
                    Function::Conjugate(meet_minus(&f, &g)?)
                }
                (LatticeOp::JoinMinus, Function::Conjugate(f), Function::Conjugate(g)) => {
                    Function::Conjugate(join_minus(&f, &g)?)
                }
                _ => {
                    return Err(Error::MalformedInput(
                        "meet-plus/join-plus take trunc_epi functions, meet-minus/join-minus take max_affine ones".into(),
                    ))
                }
            };
            Yes(out.to_json())
        }
        Command::HomFnVerify { phi } => {
            let h = canonical_function_homomorphism(affine_map(phi)?, kappa)?;
            let report = verify_function_homomorphism(&h, trials, seed)?;
            if report.meet_ok && report.join_ok {
                Yes(report.to_json())
            } else {
                No(report.to_json())
            }
        }
        Command::AntiHomVerify { phi } => {
            let l = canonical_anti_homomorphism(affine_map(phi)?, kappa)?;
            let report = verify_anti_homomorphism(&l, trials, seed)?;
            if report.meet_ok && report.join_ok {
                Yes(report.to_json())
            } else {
                No(report.to_json())
            }
        }
    })
}

/// Runs one command line and returns the exit status.
pub fn run<I, T>(argv: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(Outcome::Yes(v)) => {
            let _ = out.write_all(render(&v).as_bytes());
            0
        }
        Ok(Outcome::No(v)) => {
            let _ = out.write_all(render(&v).as_bytes());
            1
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_verb_has_one_operation() {
        let mut listed: Vec<&str> = VERBS.iter().map(|v| v.0).collect();
        let mut known = verb_names();
        listed.sort_unstable();
        known.sort_unstable();
        assert_eq!(listed, known);
        let mut ops: Vec<&str> = VERBS.iter().map(|v| v.1).collect();
        ops.sort_unstable();
        ops.dedup();
        assert_eq!(ops.len(), VERBS.len());
    }

    #[test]
    fn unknown_verbs_are_rejected() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(["convexlat", "frobnicate"], &mut out, &mut err), 2);
        assert!(String::from_utf8(err).unwrap().contains("frobnicate"));
    }

    #[test]
    fn only_json_output() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(["convexlat", "dim", "x.json", "--format", "yaml"], &mut out, &mut err), 2);
    }
}
