//! Brute-force oracles shared by the integration tests. None of them goes
//! through the library's own hull, double description or LP code.
#![allow(dead_code)]

use convexlat::geometry::Point;
use convexlat::scalar::Scalar;
use convexlat::transversal::{segment_constraint, RaySegment};
use num_traits::{One, Signed, Zero};

/// Unique solution of a square system by Gauss-Jordan, if regular.
pub fn solve_square(mut m: Vec<Vec<Scalar>>, mut rhs: Vec<Scalar>) -> Option<Vec<Scalar>> {
    let n = rhs.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        rhs.swap(col, piv);
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = &m[r][col] / &m[col][col];
                for k in col..n {
                    let t = &m[col][k] * &f;
                    m[r][k] -= t;
                }
                let t = &rhs[col] * &f;
                rhs[r] -= t;
            }
        }
    }
    Some((0..n).map(|i| &rhs[i] / &m[i][i]).collect())
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// `p ∈ conv(pts)`, by Carathéodory: some affinely independent subset of at
/// most `d + 1` points carries `p` with nonnegative weights. Weights on an
/// independent subset are unique.
pub fn in_hull_brute(pts: &[Point], p: &Point) -> bool {
    let d = p.dim();
    for k in 1..=(d + 1).min(pts.len()) {
        for s in subsets(pts.len(), k) {
            // rows: coordinates and the all-ones row; unknowns: k weights
            let mut a: Vec<Vec<Scalar>> = (0..d).map(|i| s.iter().map(|&j| pts[j][i].clone()).collect()).collect();
            a.push(vec![Scalar::one(); k]);
            let mut b: Vec<Scalar> = p.coords().to_vec();
            b.push(Scalar::one());
            let Some(w) = least_squares_exact(&a, &b) else { continue };
            if w.iter().all(|x| !x.is_negative()) {
                return true;
            }
        }
    }
    false
}

/// Fourier-Motzkin feasibility of `{a : row·a <= rhs}`.
pub fn fm_feasible(mut rows: Vec<(Vec<Scalar>, Scalar)>, n: usize) -> bool {
    for k in (0..n).rev() {
        let (mut pos, mut neg, mut zero) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            if r.0[k].is_positive() {
                pos.push(r);
            } else if r.0[k].is_negative() {
                neg.push(r);
            } else {
                zero.push(r);
            }
        }
        for (p, pr) in &pos {
            for (q, qr) in &neg {
                let (sp, sq) = (p[k].clone(), -q[k].clone());
                let row: Vec<Scalar> = p.iter().zip(q).map(|(x, y)| x * &sq + y * &sp).collect();
                zero.push((row, pr * &sq + qr * &sp));
            }
        }
        rows = zero;
    }
    rows.iter().all(|(_, rhs)| !rhs.is_negative())
}

pub fn band_rows(segments: &[RaySegment]) -> Vec<(Vec<Scalar>, Scalar)> {
    let mut rows = Vec::new();
    for s in segments {
        let b = segment_constraint(s);
        rows.push((b.normal.clone(), b.hi.clone()));
        rows.push((b.normal.iter().map(|x| -x).collect(), -b.lo.clone()));
    }
    rows
}


/// Do `conv(red)` and `conv(blue)` meet? Searches for nonnegative weights
/// `λ` on `red` and `μ` on `blue` with `Σλ = Σμ = 1` and `Σλr = Σμb` among
/// the basic solutions: supports of at most `d + 2` points with a unique
/// weight vector.
pub fn hulls_meet_brute(red: &[Point], blue: &[Point]) -> bool {
    let d = red[0].dim();
    let cols: Vec<(Vec<Scalar>, bool)> = red
        .iter()
        .map(|p| (p.coords().to_vec(), true))
        .chain(blue.iter().map(|p| (p.coords().to_vec(), false)))
        .collect();
    for k in 1..=(d + 2).min(cols.len()) {
        for s in subsets(cols.len(), k) {
            // rows: Σλr - Σμb = 0 per coordinate, Σλ = 1, Σμ = 1
            let mut a: Vec<Vec<Scalar>> = (0..d)
                .map(|i| {
                    s.iter()
                        .map(|&j| if cols[j].1 { cols[j].0[i].clone() } else { -cols[j].0[i].clone() })
                        .collect()
                })
                .collect();
            a.push(s.iter().map(|&j| if cols[j].1 { Scalar::one() } else { Scalar::zero() }).collect());
            a.push(s.iter().map(|&j| if cols[j].1 { Scalar::zero() } else { Scalar::one() }).collect());
            let mut b = vec![Scalar::zero(); d];
            b.push(Scalar::one());
            b.push(Scalar::one());
            if let Some(w) = least_squares_exact(&a, &b) {
                if w.iter().all(|x| !x.is_negative()) {
                    return true;
                }
            }
        }
    }
    false
}

/// The unique exact solution of `a·w = b` when `a` has full column rank.
pub fn least_squares_exact(a: &[Vec<Scalar>], b: &[Scalar]) -> Option<Vec<Scalar>> {
    let k = a[0].len();
    let ata: Vec<Vec<Scalar>> = (0..k)
        .map(|r| (0..k).map(|c| a.iter().map(|row| &row[r] * &row[c]).sum()).collect())
        .collect();
    let atb: Vec<Scalar> = (0..k).map(|r| a.iter().zip(b).map(|(row, bi)| &row[r] * bi).sum()).collect();
    let w = solve_square(ata, atb)?;
    let fits = a
        .iter()
        .zip(b)
        .all(|(row, bi)| row.iter().zip(&w).map(|(x, y)| x * y).sum::<Scalar>() == *bi);
    fits.then_some(w)
}
