#![allow(dead_code)]

use edgefem::geom::{simplex_measure, Vec3};
use proptest::prelude::*;

/// Vertices of a well-shaped random simplex in `[-1, 1]^d` and a random
/// distinct global numbering.
pub fn simplex(d: usize) -> impl Strategy<Value = (Vec<Vec3>, Vec<usize>)> {
    let coords = prop::collection::vec(-1.0f64..1.0, (d + 1) * d);
    let ids = Just((0..40).collect::<Vec<usize>>()).prop_shuffle();
    (coords, ids)
        .prop_map(move |(c, ids)| {
            let pts: Vec<Vec3> = (0..=d)
                .map(|i| {
                    let mut p = [0.0; 3];
                    p[..d].copy_from_slice(&c[i * d..(i + 1) * d]);
                    p
                })
                .collect();
            (pts, ids[..=d].to_vec())
        })
        .prop_filter("degenerate simplex", move |(pts, _)| shape_quality(pts, d) > 0.05)
}

/// `d! |T| / max_edge^d`, zero for degenerate simplices.
pub fn shape_quality(pts: &[Vec3], d: usize) -> f64 {
    let mut longest: f64 = 0.0;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let e: f64 = (0..3).map(|k| (pts[i][k] - pts[j][k]).powi(2)).sum::<f64>().sqrt();
            longest = longest.max(e);
        }
    }
    let fact: f64 = (1..=d).map(|k| k as f64).product();
    fact * simplex_measure(pts) / longest.powi(d as i32)
}

/// Interior point from normalized positive weights.
pub fn interior_point(pts: &[Vec3], raw: &[f64]) -> Vec3 {
    let s: f64 = raw.iter().sum();
    let mut x = [0.0; 3];
    for (p, w) in pts.iter().zip(raw) {
        for k in 0..3 {
            x[k] += p[k] * w / s;
        }
    }
    x
}
