//! Double description method over the integers.
//!
//! Converts an inequality description of a polyhedral cone
//! `{z : row · z >= 0 for every row}` into generators: a basis of the
//! lineality space plus one primitive integer vector per extreme ray of the
//! pointed part. Both directions of polytope conversion (facets from vertices
//! and vertices from facets) reduce to this routine through homogenization.
//!
//! Rays are kept as primitive integer vectors, so no rational arithmetic
//! happens inside the iteration.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Fixed-width bitset over row indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct RowSet {
    words: Vec<u64>,
}

impl RowSet {
    pub fn new(capacity: usize) -> Self {
        Self {
            words: vec![0; capacity.div_ceil(64)],
        }
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }
}

/// Generators of a cone.
#[derive(Clone, Debug)]
pub(crate) struct Cone {
    pub lineality: Vec<Vec<BigInt>>,
    pub rays: Vec<Vec<BigInt>>,
    /// For each ray, the rows that vanish on it.
    pub zero_sets: Vec<RowSet>,
}

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Divides out the gcd of the entries.
pub(crate) fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && g != BigInt::from(1) {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// `alpha * u + beta * w`, primitive.
fn combine(alpha: &BigInt, u: &[BigInt], beta: &BigInt, w: &[BigInt]) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = u.iter().zip(w).map(|(x, y)| alpha * x + beta * y).collect();
    make_primitive(&mut out);
    out
}

/// Generators of `{z in Z^dim : row · z >= 0}`.
pub(crate) fn cone_generators(dim: usize, rows: &[Vec<BigInt>]) -> Cone {
    let nrows = rows.len();
    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::from(1);
            e
        })
        .collect();
    let mut rays: Vec<Vec<BigInt>> = Vec::new();
    let mut zero_sets: Vec<RowSet> = Vec::new();

    for (k, row) in rows.iter().enumerate() {
        debug_assert_eq!(row.len(), dim);
        if let Some(li) = lineality.iter().position(|l| !dot(row, l).is_zero()) {
            // Cut the lineality space: the chosen direction becomes a ray and
            // everything else is projected onto the row's kernel.
            let mut r0 = lineality.swap_remove(li);
            let mut s0 = dot(row, &r0);
            if s0.is_negative() {
                r0.iter_mut().for_each(|x| *x = -&*x);
                s0 = -s0;
            }
            for l in lineality.iter_mut() {
                let t = dot(row, l);
                if !t.is_zero() {
                    *l = combine(&s0, l, &-t, &r0);
                }
            }
            for (r, z) in rays.iter_mut().zip(zero_sets.iter_mut()) {
                let t = dot(row, r);
                if !t.is_zero() {
                    *r = combine(&s0, r, &-t, &r0);
                }
                z.insert(k);
            }
            let mut z0 = RowSet::new(nrows);
            (0..k).for_each(|j| z0.insert(j));
            rays.push(r0);
            zero_sets.push(z0);
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|r| dot(row, r)).collect();
        let pointed_dim = dim - lineality.len();
        let mut next_rays = Vec::new();
        let mut next_zero = Vec::new();
        for (i, s) in values.iter().enumerate() {
            if !s.is_negative() {
                let mut z = zero_sets[i].clone();
                if s.is_zero() {
                    z.insert(k);
                }
                next_rays.push(rays[i].clone());
                next_zero.push(z);
            }
        }
        for (p, sp) in values.iter().enumerate().filter(|(_, s)| s.is_positive()) {
            for (n, sn) in values.iter().enumerate().filter(|(_, s)| s.is_negative()) {
                let common = zero_sets[p].intersection(&zero_sets[n]);
                if common.count() + 2 < pointed_dim {
                    continue;
                }
                let blocked = (0..rays.len())
                    .any(|r| r != p && r != n && common.is_subset(&zero_sets[r]));
                if blocked {
                    continue;
                }
                // sp > 0 > sn, so this lies on the hyperplane row · z = 0.
                let ray = combine(sp, &rays[n], &-sn, &rays[p]);
                let mut z = common;
                z.insert(k);
                next_rays.push(ray);
                next_zero.push(z);
            }
        }
        rays = next_rays;
        zero_sets = next_zero;
    }

    Cone {
        lineality,
        rays,
        zero_sets,
    }
}
