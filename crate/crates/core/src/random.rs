//! Seeded generators for test data.
//!
//! Every randomized routine draws from a stream named by `(seed, name, index)`,
//! so trial `i` sees the same numbers whether trials run serially or in
//! parallel.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::convex_functions::TruncatedEpigraph;
use crate::geometry::{ConvexBody, Point};
use crate::homomorphism::{AffineMap, CaseTag, HomomorphismSpec};
use crate::scalar::Scalar;
use crate::transversal::{ParallelSegment, RaySegment};

/// Independent generator for trial `index` of the stream `name`.
pub fn stream(seed: u64, name: &str, index: u64) -> ChaCha8Rng {
    // FNV-1a over the name, mixed with the seed into the key.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&h.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(index);
    rng
}

/// Rational with numerator in `[-8, 8]` and denominator in `{1, 2, 4}`.
pub fn small_rational(rng: &mut impl Rng) -> Scalar {
    let p: i64 = rng.gen_range(-8..=8);
    let q: i64 = *[1, 2, 4].choose(rng).unwrap();
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

pub fn small_integer(rng: &mut impl Rng, lo: i64, hi: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(rng.gen_range(lo..=hi)))
}

pub fn random_point(rng: &mut impl Rng, dim: usize) -> Point {
    Point::new((0..dim).map(|_| small_rational(rng)).collect())
}

/// Hull of 1 to `max_vertices` random small-rational points; never empty.
pub fn random_body(rng: &mut impl Rng, dim: usize, max_vertices: usize) -> ConvexBody {
    let k = rng.gen_range(1..=max_vertices.max(1));
    let pts = (0..k).map(|_| random_point(rng, dim)).collect();
    ConvexBody::hull(dim, pts).expect("points share the dimension")
}

/// Random body whose dimension is exactly `target` (`-1` gives `∅`).
pub fn random_body_of_dim(rng: &mut impl Rng, dim: usize, target: isize) -> ConvexBody {
    if target < 0 {
        return ConvexBody::empty(dim);
    }
    let target = target as usize;
    loop {
        let k = target + 1 + rng.gen_range(0..=2);
        let pts: Vec<Point> = (0..k).map(|_| random_point(rng, dim)).collect();
        // target + 1 independent points, then extra points in their span
        let body = ConvexBody::hull(dim, pts[..=target].to_vec()).unwrap();
        if body.dim() != target as isize {
            continue;
        }
        let mut all = body.vertices().to_vec();
        let base = &pts[0];
        for _ in target + 1..k {
            // random affine combination of the spanning points
            let weights: Vec<Scalar> = (0..=target).map(|_| small_rational(rng)).collect();
            let mut x = base.clone();
            for (w, p) in weights.iter().zip(&pts[1..=target]) {
                x = x.translate(&crate::linalg::scale(&p.delta(base), w));
            }
            all.push(x);
        }
        return ConvexBody::hull(dim, all).unwrap();
    }
}

/// Injective affine map `E^c → E^d` with small integer entries.
pub fn random_affine_map(rng: &mut impl Rng, c: usize, d: usize) -> AffineMap {
    loop {
        let matrix = (0..d)
            .map(|_| (0..c).map(|_| small_integer(rng, -3, 3)).collect())
            .collect();
        let offset = Point::new((0..d).map(|_| small_rational(rng)).collect());
        if let Ok(m) = AffineMap::new(matrix, offset) {
            return m;
        }
    }
}

/// A valid spec of the given case with `d = c + 1` (or `d = c` for case i
/// when `square` is set). Trivial specs get a random fixed body.
pub fn random_spec(rng: &mut impl Rng, tag: CaseTag, c: usize, square: bool) -> HomomorphismSpec {
    let d = if square && tag == CaseTag::I { c } else { c + 1 };
    loop {
        let phi = random_affine_map(rng, c, d);
        let spec = match tag {
            CaseTag::Trivial => {
                return HomomorphismSpec::trivial(c, random_body(rng, d, 4));
            }
            CaseTag::I => HomomorphismSpec::case_i(phi),
            CaseTag::II => HomomorphismSpec::case_ii(phi, random_point(rng, d)),
            CaseTag::III => {
                let v = (0..d).map(|_| small_integer(rng, -2, 2)).collect();
                HomomorphismSpec::case_iii(phi, v)
            }
            CaseTag::IV => {
                let q: i64 = rng.gen_range(2..=8);
                let p: i64 = rng.gen_range(1..q);
                let gamma = Scalar::new(BigInt::from(p), BigInt::from(q));
                HomomorphismSpec::case_iv(phi, random_point(rng, d), gamma)
            }
        };
        if let Ok(s) = spec {
            return s;
        }
    }
}

/// Segments on random rays from the origin, each fattened around the point
/// where it crosses the hyperplane with pole `a`. Returns `(a, segments)`.
pub fn planted_ray_family(rng: &mut impl Rng, dim: usize, n: usize) -> (Vec<Scalar>, Vec<RaySegment>) {
    let a = loop {
        let a: Vec<Scalar> = (0..dim).map(|_| small_rational(rng)).collect();
        if !crate::linalg::is_zero_vec(&a) {
            break a;
        }
    };
    let segments = (0..n).map(|_| planted_ray_segment(rng, &a)).collect();
    (a, segments)
}

fn planted_ray_segment(rng: &mut impl Rng, a: &[Scalar]) -> RaySegment {
    loop {
        let u: Vec<Scalar> = (0..a.len()).map(|_| small_integer(rng, -4, 4)).collect();
        let t = crate::linalg::dot(a, &u);
        if !t.is_positive() {
            continue;
        }
        let hit = Scalar::one() / t;
        let shrink = Scalar::new(BigInt::from(rng.gen_range(0..=3)), BigInt::from(4));
        let grow = Scalar::new(BigInt::from(rng.gen_range(0..=4)), BigInt::from(2));
        let lo = &hit * (Scalar::one() - shrink);
        let hi = &hit * (Scalar::one() + grow);
        return RaySegment::new(u, lo, hi).unwrap();
    }
}

/// `n >= dim + 1` segments with no transversal: `dim + 1` of them lie on
/// rays whose directions sum to zero, so no pole can be positive on all of
/// them. The rest are planted around a random hyperplane. The positions of
/// the blocking segments are returned too.
pub fn planted_infeasible_ray_family(
    rng: &mut impl Rng,
    dim: usize,
    n: usize,
) -> (Vec<RaySegment>, Vec<usize>) {
    assert!(n > dim);
    let (_, mut segments) = planted_ray_family(rng, dim, n - dim - 1);
    let dirs = loop {
        let dirs: Vec<Vec<Scalar>> = (0..dim)
            .map(|_| (0..dim).map(|_| small_integer(rng, -3, 3)).collect())
            .collect();
        if crate::linalg::rank(&dirs) == dim {
            break dirs;
        }
    };
    let mut last = vec![Scalar::zero(); dim];
    for u in &dirs {
        last = crate::linalg::sub(&last, u);
    }
    let mut blockers = Vec::new();
    for u in dirs.into_iter().chain(std::iter::once(last)) {
        let lo = Scalar::new(BigInt::from(rng.gen_range(1..=4)), BigInt::from(2));
        let hi = &lo * Scalar::new(BigInt::from(rng.gen_range(2..=6)), BigInt::from(2));
        let pos = rng.gen_range(0..=segments.len());
        segments.insert(pos, RaySegment::new(u, lo, hi).unwrap());
        for b in blockers.iter_mut() {
            if *b >= pos {
                *b += 1;
            }
        }
        blockers.push(pos);
    }
    blockers.sort_unstable();
    (segments, blockers)
}

/// Vertical segments around the graph of a random affine functional on
/// `E^(dim - 1)`. Returns `(slope, intercept, segments)`.
pub fn planted_parallel_family(
    rng: &mut impl Rng,
    dim: usize,
    n: usize,
) -> (Vec<Scalar>, Scalar, Vec<ParallelSegment>) {
    let slope: Vec<Scalar> = (0..dim - 1).map(|_| small_rational(rng)).collect();
    let intercept = small_rational(rng);
    let segments = (0..n)
        .map(|_| {
            let x: Vec<Scalar> = (0..dim - 1).map(|_| small_rational(rng)).collect();
            let y = crate::linalg::dot(&slope, &x) + &intercept;
            let below = Scalar::new(BigInt::from(rng.gen_range(0..=4)), BigInt::from(4));
            let above = Scalar::new(BigInt::from(rng.gen_range(0..=4)), BigInt::from(4));
            ParallelSegment::new(x, &y - below, &y + above).unwrap()
        })
        .collect();
    (slope, intercept, segments)
}

/// Random polyhedral `f` with values in `[0, κ]` that attains 0: the
/// largest convex function below 1 to `max_points` graph points, one of
/// them at height 0.
pub fn random_function(
    rng: &mut impl Rng,
    c: usize,
    kappa: &Scalar,
    max_points: usize,
) -> TruncatedEpigraph {
    let k = rng.gen_range(1..=max_points.max(1));
    let graph: Vec<(Point, Scalar)> = (0..k)
        .map(|i| {
            let t = if i == 0 {
                Scalar::zero()
            } else {
                kappa * Scalar::new(BigInt::from(rng.gen_range(0..=4)), BigInt::from(4))
            };
            (random_point(rng, c), t)
        })
        .collect();
    TruncatedEpigraph::from_graph(c, kappa.clone(), &graph).expect("heights lie in the band")
}
