#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use toroidal_blocks::rootdata::{gamma_group, LieType};
use toroidal_blocks::spectral::{vanishing_test, PiFunction};
use toroidal_blocks::torus::{ScalingElement, TorusPoint};
use toroidal_blocks::weights::{realizations, AffineWeight};
use toroidal_blocks::{Int, Lattice, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ty(s: &str) -> LieType {
    s.parse().unwrap()
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// `±1, ±2, ±3, ±1/2, ±2/3`.
pub fn coord_pool() -> Vec<Rational> {
    let mut v = Vec::new();
    for (n, d) in [(1, 1), (2, 1), (3, 1), (1, 2), (2, 3)] {
        v.push(q(n, d));
        v.push(q(-n, d));
    }
    v
}

pub fn random_point(rng: &mut ChaCha8Rng, d: usize) -> TorusPoint {
    let pool = coord_pool();
    TorusPoint::new((0..d).map(|_| pool.choose(rng).unwrap().clone()).collect()).unwrap()
}

/// Up to `max` distinct points; about half the time the later points are
/// sign flips of the first so that cancellations actually occur.
pub fn random_support(rng: &mut ChaCha8Rng, d: usize, max: usize) -> Vec<TorusPoint> {
    let n = rng.gen_range(1..=max);
    let base = random_point(rng, d);
    let flips = rng.gen_bool(0.5);
    let mut pts = vec![base.clone()];
    for _ in 0..20 * n {
        if pts.len() == n {
            break;
        }
        let p = if flips {
            let coords = base
                .coords()
                .iter()
                .map(|c| {
                    if rng.gen_bool(0.5) {
                        -c.clone()
                    } else {
                        c.clone()
                    }
                })
                .collect();
            TorusPoint::new(coords).unwrap()
        } else {
            random_point(rng, d)
        };
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    pts
}

pub fn random_scaling(rng: &mut ChaCha8Rng, d: usize) -> ScalingElement {
    ScalingElement::from(random_point(rng, d))
}

/// A dominant weight of the given level with a random class and delta.
pub fn random_weight(rng: &mut ChaCha8Rng, t: LieType, level: i64) -> AffineWeight {
    let classes = gamma_group(t).classes;
    let class = *classes.choose(rng).unwrap();
    let reals = realizations(t, level, class).unwrap();
    let fin = match reals.choose(rng) {
        Some(w) => w.clone(),
        None => return random_weight(rng, t, level),
    };
    let delta = if rng.gen_bool(0.3) {
        q(rng.gen_range(-3..=3), rng.gen_range(1..=3))
    } else {
        q(0, 1)
    };
    AffineWeight::new(level, fin, delta)
}

/// A π-function whose values are drawn from a pool of two weights, so
/// that equal values at sign-related points are common.
pub fn random_pi(rng: &mut ChaCha8Rng, t: LieType, d: usize, max_points: usize) -> PiFunction {
    let (l1, l2) = (rng.gen_range(1..=2), rng.gen_range(1..=3));
    let pool = [random_weight(rng, t, l1), random_weight(rng, t, l2)];
    let entries = random_support(rng, d, max_points)
        .into_iter()
        .map(|p| (p, pool.choose(rng).unwrap().clone()))
        .collect();
    PiFunction::new(t, d + 1, entries).unwrap()
}

/// All of `[-b, b]^d`, lexicographic.
pub fn box_points(d: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-b..=b).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// The lattice generated by the non-vanishing degrees in `[-b, b]^d`.
pub fn box_oracle(pi: &PiFunction, b: i64) -> Lattice {
    let d = pi.k() - 1;
    let gens: Vec<Vec<Int>> = box_points(d, b)
        .into_iter()
        .filter(|m| !vanishing_test(pi, m).unwrap())
        .map(|m| m.into_iter().map(Int::from).collect())
        .collect();
    Lattice::hnf(&gens, d).unwrap()
}

pub fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}
