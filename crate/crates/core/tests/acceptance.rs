//! The nine acceptance criteria. Runs without the libtest harness so that
//! each criterion prints exactly one PASS/FAIL line; the process fails if
//! any criterion does.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use convexlat::classifier::{classify, OracleSample};
use convexlat::convex_functions::*;
use convexlat::geometry::{radon_partition, ConvexBody, Point};
use convexlat::homomorphism::{check_dimension_laws, verify_homomorphism, CaseTag, HomomorphismSpec};
use convexlat::random::*;
use convexlat::scalar::{int, ratio, Quadratic, Scalar};
use convexlat::transversal::*;
use convexlat::linalg;
use num_traits::{Signed, Zero};
use rand::Rng;
use rayon::prelude::*;

mod common;
use common::{band_rows, fm_feasible, hulls_meet_brute, in_hull_brute};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'a str, Box<dyn Fn() -> Outcome + 'a>);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

const CASES: [CaseTag; 4] = [CaseTag::I, CaseTag::II, CaseTag::III, CaseTag::IV];

/// The 25 specs per case shared by criteria 2 and 3.
fn specs() -> Vec<HomomorphismSpec> {
    let mut out = Vec::new();
    for (i, tag) in CASES.into_iter().enumerate() {
        for k in 0..25 {
            let mut rng = stream(2024, "acceptance-specs", (i * 100 + k) as u64);
            out.push(random_spec(&mut rng, tag, 3, false));
        }
    }
    out
}

/// `c + 1` affinely independent points, then `extra` more.
fn sample_sources(rng: &mut impl Rng, c: usize, extra: usize) -> Vec<Point> {
    loop {
        let xs: Vec<Point> = (0..c + 1 + extra).map(|_| random_point(rng, c)).collect();
        let diffs: Vec<Vec<Scalar>> = xs[1..=c].iter().map(|x| x.delta(&xs[0])).collect();
        if linalg::rank(&diffs) == c {
            return xs;
        }
    }
}

fn lattice_laws() -> Outcome {
    let results: Vec<Result<(), String>> = (0..1000u64)
        .into_par_iter()
        .map(|k| {
            let d = if k < 500 { 3 } else { 4 };
            let mut rng = stream(1, "acceptance-lattice", k);
            let a = random_body(&mut rng, d, 6);
            let mut b = random_body(&mut rng, d, 6);
            let c = random_body(&mut rng, d, 6);
            if k % 2 == 0 {
                // share a point so that meets are not always empty
                let mut pts = b.vertices().to_vec();
                pts.push(a.vertices()[0].clone());
                b = ConvexBody::hull(d, pts).unwrap();
            }
            let meet = |x: &ConvexBody, y: &ConvexBody| x.meet(y).unwrap();
            let join = |x: &ConvexBody, y: &ConvexBody| x.join(y).unwrap();
            let laws = [
                ("absorption meet", meet(&a, &join(&a, &b)) == a),
                ("absorption join", join(&a, &meet(&a, &b)) == a),
                ("commutative meet", meet(&a, &b) == meet(&b, &a)),
                ("commutative join", join(&a, &b) == join(&b, &a)),
                ("idempotent meet", meet(&a, &a) == a),
                ("idempotent join", join(&a, &a) == a),
                ("associative meet", meet(&meet(&a, &b), &c) == meet(&a, &meet(&b, &c))),
                ("associative join", join(&join(&a, &b), &c) == join(&a, &join(&b, &c))),
            ];
            for (name, ok) in laws {
                check(ok, || format!("{name} fails on triple {k} in E^{d}"))?;
            }
            Ok(())
        })
        .collect();
    results.into_iter().collect::<Result<(), String>>()?;
    Ok("1000 triples (500 in E^3, 500 in E^4), 8 laws each".into())
}

fn homomorphism_axioms(specs: &[HomomorphismSpec]) -> Outcome {
    let mut identities = 0;
    for (i, spec) in specs.iter().enumerate() {
        let r = verify_homomorphism(spec, 20, 100 + i as u64).map_err(|e| e.to_string())?;
        check(r.axiom_meet_ok && r.axiom_join_ok, || {
            format!("spec {i} ({}) fails: {:?}", spec.tag(), r.counterexample)
        })?;
        identities += 2 * r.trials;
    }
    Ok(format!("{} specs, {identities} identities, 0 failures", specs.len()))
}

fn dimension_profiles(specs: &[HomomorphismSpec]) -> Outcome {
    let mut rng = stream(3, "acceptance-dims", 0);
    let bodies: Vec<ConvexBody> = (0..50).map(|k| random_body_of_dim(&mut rng, 3, (k % 5) as isize - 1)).collect();
    for (i, spec) in specs.iter().enumerate() {
        let r = check_dimension_laws(spec, &bodies).map_err(|e| e.to_string())?;
        for (body, e) in bodies.iter().zip(&r.entries) {
            let k = body.dim();
            let want = match spec.tag() {
                CaseTag::I => k,
                CaseTag::II => k + 1,
                _ if k < 0 => -1,
                _ => k + 1,
            };
            check(e.dim_image == want, || {
                format!("spec {i} ({}): dim {k} body maps to dim {}", spec.tag(), e.dim_image)
            })?;
            if k <= 1 {
                check(e.dim_image <= k + 1, || format!("spec {i}: bound fails at dim {k}"))?;
            }
        }
        check(r.all_ok(), || format!("spec {i}: report flags a failure"))?;
    }
    Ok(format!("{} specs x 50 bodies of dims -1..3", specs.len()))
}

fn classifier_round_trip() -> Outcome {
    let mut rejected = 0;
    for (i, tag) in CASES.into_iter().enumerate() {
        for k in 0..25 {
            let mut rng = stream(4, "acceptance-classify", (i * 100 + k) as u64);
            let spec = random_spec(&mut rng, tag, 3, false);
            let xs = sample_sources(&mut rng, 3, 1);
            let sample = OracleSample::from_spec(&spec, &xs).map_err(|e| e.to_string())?;
            let got = classify(&sample).map_err(|e| format!("spec {i}/{k}: {e}"))?;
            check(got.residual_ok && got.spec == spec.canonical_form(), || {
                format!("spec {i}/{k}: recovered {:?}, want {:?}", got.spec, spec.canonical_form())
            })?;
            // move the last image off the affine pattern
            let mut bad = sample.clone();
            let img = &bad.points[4].1;
            let mut bump = vec![Scalar::zero(); 4];
            bump[k % 4] = ratio(1, 7);
            let moved: Vec<Point> = img.vertices().iter().map(|v| v.translate(&bump)).collect();
            bad.points[4].1 = ConvexBody::hull(4, moved).unwrap();
            check(classify(&bad).is_err(), || format!("mutated sample {i}/{k} accepted"))?;
            rejected += 1;
        }
    }
    Ok(format!("100 specs recovered exactly, {rejected} mutated samples rejected"))
}

fn radon_oracle() -> Outcome {
    let results: Vec<Result<(), String>> = (0..500u64)
        .into_par_iter()
        .map(|k| {
            let c = 2 + (k % 2) as usize;
            let mut rng = stream(5, "acceptance-radon", k);
            let pts: Vec<Point> = (0..c + 2).map(|_| random_point(&mut rng, c)).collect();
            let r = radon_partition(&pts).map_err(|e| e.to_string())?;
            check(in_hull_brute(&r.red, &r.witness) && in_hull_brute(&r.blue, &r.witness), || {
                format!("set {k}: witness outside a part")
            })?;
            let n = c + 2;
            let mut valid = Vec::new();
            for mask in 1u32..(1 << n) - 1 {
                let red: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                let blue: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 0).collect();
                let pr: Vec<Point> = red.iter().map(|&i| pts[i].clone()).collect();
                let pb: Vec<Point> = blue.iter().map(|&i| pts[i].clone()).collect();
                if hulls_meet_brute(&pr, &pb) {
                    valid.push((red, blue));
                }
            }
            check(!valid.is_empty(), || format!("set {k}: no valid partition at all"))?;
            let ours = (r.red_indices.clone(), r.blue_indices.clone());
            check(valid.contains(&ours), || format!("set {k}: {ours:?} is not a valid partition"))
        })
        .collect();
    results.into_iter().collect::<Result<(), String>>()?;
    Ok("500 point sets, c in {2, 3}, all 2^(c+2) bipartitions scanned".into())
}

fn transversality() -> Outcome {
    let apex = Point::origin(3);
    let feasible: Vec<Result<(), String>> = (0..200u64)
        .into_par_iter()
        .map(|k| {
            let mut rng = stream(6, "acceptance-feasible", k);
            let n = rng.gen_range(1..=50);
            let (_, segs) = planted_ray_family(&mut rng, 3, n);
            let out = transversal_rays(&apex, &segs).map_err(|e| e.to_string())?;
            let TransversalOutcome::Feasible(cert) = out else {
                return Err(format!("planted family {k} reported infeasible"));
            };
            let Transversal::Pole(a) = &cert.hyperplane else { return Err("not a pole".into()) };
            for (s, hit) in segs.iter().zip(&cert.hits) {
                let on_plane = linalg::dot(a, &linalg::scale(&s.direction, hit)) == int(1);
                check(on_plane && s.s_lo <= *hit && *hit <= s.s_hi, || format!("family {k}: bad hit"))?;
            }
            Ok(())
        })
        .collect();
    feasible.into_iter().collect::<Result<(), String>>()?;

    let infeasible: Vec<Result<(), String>> = (0..200u64)
        .into_par_iter()
        .map(|k| {
            let mut rng = stream(6, "acceptance-infeasible", k);
            let n = rng.gen_range(4..=50);
            let (segs, _) = planted_infeasible_ray_family(&mut rng, 3, n);
            let out = transversal_rays(&apex, &segs).map_err(|e| e.to_string())?;
            let TransversalOutcome::Infeasible { subfamily } = out else {
                return Err(format!("blocked family {k} reported feasible"));
            };
            check(subfamily.len() <= 4, || format!("family {k}: witness of size {}", subfamily.len()))?;
            let sub: Vec<RaySegment> = subfamily.iter().map(|&i| segs[i].clone()).collect();
            check(!fm_feasible(band_rows(&sub), 3), || format!("family {k}: witness is feasible"))?;
            for drop in 0..sub.len() {
                let mut rest = sub.clone();
                rest.remove(drop);
                check(fm_feasible(band_rows(&rest), 3), || format!("family {k}: witness not minimal"))?;
            }
            Ok(())
        })
        .collect();
    infeasible.into_iter().collect::<Result<(), String>>()?;

    let mut rng = stream(6, "acceptance-bands", 0);
    let mut pairs = 0;
    while pairs < 200 {
        let normal: Vec<Scalar> = (0..3).map(|_| small_rational(&mut rng)).collect();
        let offset = small_rational(&mut rng);
        let Ok(a) = pole(&[int(0), int(0), int(0)], &normal, offset.clone()) else { continue };
        let u: Vec<Scalar> = (0..3).map(|_| small_integer(&mut rng, -3, 3)).collect();
        if linalg::is_zero_vec(&u) {
            continue;
        }
        let lo = ratio(rng.gen_range(1..=8), 4);
        let hi = &lo + ratio(rng.gen_range(0..=8), 4);
        let seg = RaySegment::new(u.clone(), lo.clone(), hi.clone()).unwrap();
        let f = |s: &Scalar| linalg::dot(&normal, &linalg::scale(&u, s)) - &offset;
        let meets = !(f(&lo) * f(&hi)).is_positive();
        check(segment_constraint(&seg).contains(&a) == meets, || format!("band pair {pairs} disagrees"))?;
        pairs += 1;
    }
    Ok("200 feasible certified, 200 infeasible with minimal witnesses of size <= 4, 200 band pairs".into())
}

/// The pole of the line through `(-1, 0)` and `(cos α, sin α)` in the frame
/// centered at `(1, 0)`. Both points and the center lie on the unit circle,
/// so the line is perpendicular to `p - center`.
fn pole_at<F: convexlat::scalar::Field>(cos: F, sin: F) -> Vec<F> {
    let one = F::one();
    let center = [one.clone(), F::zero()];
    let w = [cos - one.clone(), sin];
    let offset = w[0].clone() * (-one);
    pole(&center, &w, offset).unwrap()
}

fn pole_formula() -> Outcome {
    let half = ratio(1, 2);
    // (α, cos α, sin α, cot(α/2))
    let rational = [
        ("pi/2", int(0), int(1), int(1)),
        ("pi", int(-1), int(0), int(0)),
        ("3pi/2", int(0), int(-1), int(-1)),
    ];
    for (name, cos, sin, cot) in rational {
        let got = pole_at(cos, sin);
        let want = vec![-half.clone(), &half * cot];
        check(got == want, || format!("alpha = {name}: got {got:?}, want {want:?}"))?;
    }
    // α = 2π/3: cos = -1/2, sin = √3/2, cot(π/3) = √3/3, exactly in Q(√3)
    type Q3 = Quadratic<3>;
    let got = pole_at(Q3::from_rational(ratio(-1, 2)), Q3::new(int(0), ratio(1, 2)));
    let want = vec![Q3::from_rational(ratio(-1, 2)), Q3::new(int(0), ratio(1, 6))];
    check(got == want, || format!("alpha = 2pi/3: got {got:?}, want {want:?}"))?;
    Ok("alpha in {pi/2, 2pi/3, pi, 3pi/2}; 2pi/3 evaluated in Q(sqrt 3)".into())
}

/// 50 random points plus 50 convex combinations of domain vertices.
fn function_samples(rng: &mut impl Rng, f: &TruncatedEpigraph) -> Vec<Point> {
    let c = f.dim();
    let mut pts: Vec<Point> = (0..50).map(|_| random_point(rng, c)).collect();
    let dom = f.domain();
    let vs = dom.vertices();
    for _ in 0..50 {
        let a = &vs[rng.gen_range(0..vs.len())];
        let b = &vs[rng.gen_range(0..vs.len())];
        pts.push(Point::lerp(a, b, &ratio(rng.gen_range(0..=8), 8)));
    }
    pts
}

fn fenchel_suite() -> Outcome {
    let one = int(1);
    let results: Vec<Result<(), String>> = (0..200u64)
        .into_par_iter()
        .map(|k| {
            let c = 1 + (k % 3) as usize;
            let mut rng = stream(8, "acceptance-fenchel", k);
            let f = random_function(&mut rng, c, &one, 5);
            let g = if k % 2 == 0 {
                // shares the zero of f, so f ⊓₊ g is finite
                let zero = f.body().vertices().iter().find(|v| v[c].is_zero()).unwrap();
                let mut pts = random_function(&mut rng, c, &one, 4).body().vertices().to_vec();
                pts.push(zero.clone());
                let floor: Vec<Point> = pts.iter().map(|p| Point::new(p[..c].to_vec()).lift(one.clone())).collect();
                pts.extend(floor);
                TruncatedEpigraph::new(one.clone(), ConvexBody::hull(c + 1, pts).unwrap()).unwrap()
            } else {
                random_function(&mut rng, c, &one, 5)
            };
            let lf = fenchel(&f);
            let back = fenchel_inverse(&lf, one.clone()).map_err(|e| format!("f{k}: {e}"))?;
            let samples = function_samples(&mut rng, &f);
            let err = |what: &str| format!("function {k} (c = {c}): {what}");
            for x in &samples {
                check(back.eval(x).unwrap() == f.eval(x).unwrap(), || err("involution"))?;
            }
            check(lf.eval(&vec![Scalar::zero(); c]).unwrap() == ExtendedValue::Finite(int(0)), || {
                err("conjugate does not vanish at 0")
            })?;
            let dom = f.domain();
            let h = support_function(&dom);
            check(fenchel(&indicator(&dom, one.clone()).unwrap()) == h, || err("h_C != L[1_C]"))?;
            let (lg, meet, join) = (
                fenchel(&g),
                meet_plus(&f, &g).unwrap(),
                join_plus(&f, &g).unwrap(),
            );
            let (lmeet, ljoin) = (fenchel(&meet), fenchel(&join));
            let (jm, mm) = (join_minus(&lf, &lg).unwrap(), meet_minus(&lf, &lg).unwrap());
            for y in &samples {
                let (gv, hv) = (lf.eval(y).unwrap(), h.eval(y).unwrap());
                check(hv.shift(&-one.clone()) <= gv && gv <= hv, || err("sandwich"))?;
                check(lmeet.eval(y).unwrap() == jm.eval(y).unwrap(), || err("L(f meet g)"))?;
                check(ljoin.eval(y).unwrap() == mm.eval(y).unwrap(), || err("L(f join g)"))?;
            }
            Ok(())
        })
        .collect();
    results.into_iter().collect::<Result<(), String>>()?;

    for c in 1..=3 {
        let mut rng = stream(8, "acceptance-phi", c as u64);
        let phi = loop {
            let m = random_affine_map(&mut rng, c, c);
            if m.is_bijective() {
                break m;
            }
        };
        let h = canonical_function_homomorphism(phi.clone(), one.clone()).map_err(|e| e.to_string())?;
        let r = verify_function_homomorphism(&h, 50, 80 + c as u64).map_err(|e| e.to_string())?;
        check(r.meet_ok && r.join_ok, || format!("H fails in E^{c}: {:?}", r.counterexample))?;
        let l = canonical_anti_homomorphism(phi, one.clone()).map_err(|e| e.to_string())?;
        let r = verify_anti_homomorphism(&l, 50, 90 + c as u64).map_err(|e| e.to_string())?;
        check(r.meet_ok && r.join_ok, || format!("Lambda fails in E^{c}: {:?}", r.counterexample))?;
    }
    Ok("200 functions x 100 samples; H and Lambda on 50 pairs for c = 1, 2, 3".into())
}

fn endomorphisms() -> Outcome {
    for k in 0..50u64 {
        let c = 2 + (k % 2) as usize;
        let mut rng = stream(9, "acceptance-endo", k);
        let spec = random_spec(&mut rng, CaseTag::I, c, true);
        let xs = sample_sources(&mut rng, c, 1);
        let got = classify(&OracleSample::from_spec(&spec, &xs).map_err(|e| e.to_string())?)
            .map_err(|e| format!("case {k}: {e}"))?;
        check(got.spec == spec, || format!("case {k}: recovered {:?}", got.spec))?;
        let phi = got.spec.phi().unwrap();
        check(phi.is_bijective(), || format!("case {k}: map is not bijective"))?;
    }
    // an affine map that folds two samples together is not a bijection
    let sample = OracleSample {
        c: 2,
        d: 2,
        empty_image: ConvexBody::empty(2),
        points: [[0, 0], [1, 0], [0, 1], [1, 1]]
            .iter()
            .map(|x| (Point::from_ints(x), ConvexBody::point(Point::from_ints(&[x[0] + x[1], 0]))))
            .collect(),
    };
    check(classify(&sample).is_err(), || "degenerate sample accepted".into())?;
    Ok("50 square cases (c = 2, 3) recovered exactly".into())
}

fn main() -> ExitCode {
    let specs = specs();
    let criteria: Vec<Criterion> = vec![
        ("lattice laws", Box::new(lattice_laws)),
        ("homomorphism axioms", Box::new(|| homomorphism_axioms(&specs))),
        ("dimension profiles", Box::new(|| dimension_profiles(&specs))),
        ("classifier round-trip", Box::new(classifier_round_trip)),
        ("radon oracle", Box::new(radon_oracle)),
        ("transversality", Box::new(transversality)),
        ("pole formula", Box::new(pole_formula)),
        ("fenchel suite", Box::new(fenchel_suite)),
        ("endomorphisms", Box::new(endomorphisms)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}; {secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({why}; {secs:.1}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
