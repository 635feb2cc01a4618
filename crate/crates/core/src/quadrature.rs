//! Quadrature on the segment, triangle and tetrahedron.
//!
//! Rules are expressed in barycentric coordinates with weights normalized to
//! sum to one, so `Σ w_p f(x_p)` approximates the mean value `(1/|S|)∫_S f`.

use std::f64::consts::PI;

/// A simplex quadrature rule in barycentric form.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    /// Barycentric coordinates of each point (`p + 1` entries on a `p`-simplex).
    pub points: Vec<Vec<f64>>,
    /// Weights summing to one.
    pub weights: Vec<f64>,
    /// Polynomial degree integrated exactly.
    pub degree: usize,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Gauss–Legendre nodes and weights on `[0, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            // p1 = P_n(z), p0 = P_{n-1}(z)
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let wt = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = 0.5 * (1.0 - z);
        x[n - 1 - i] = 0.5 * (1.0 + z);
        w[i] = 0.5 * wt;
        w[n - 1 - i] = 0.5 * wt;
    }
    (x, w)
}

/// Gauss rule on a segment exact to `degree`.
pub fn segment_rule(degree: usize) -> QuadratureRule {
    let n = degree / 2 + 1;
    let (x, w) = gauss_legendre(n);
    QuadratureRule {
        points: x.iter().map(|&t| vec![1.0 - t, t]).collect(),
        weights: w,
        degree: 2 * n - 1,
    }
}

fn sym3(points: &mut Vec<Vec<f64>>, weights: &mut Vec<f64>, a: f64, b: f64, w: f64) {
    // orbit of (a, b, b)
    for k in 0..3 {
        let mut p = vec![b; 3];
        p[k] = a;
        points.push(p);
        weights.push(w);
    }
}

/// Triangle rule exact to `degree`: symmetric rules up to degree 5, then
/// collapsed Gauss products.
pub fn triangle_rule(degree: usize) -> QuadratureRule {
    let mut points = Vec::new();
    let mut weights = Vec::new();
    let exact = match degree {
        0 | 1 => {
            points.push(vec![1.0 / 3.0; 3]);
            weights.push(1.0);
            1
        }
        2 => {
            sym3(&mut points, &mut weights, 2.0 / 3.0, 1.0 / 6.0, 1.0 / 3.0);
            2
        }
        3 | 4 => {
            sym3(&mut points, &mut weights, 0.108103018168070, 0.445948490915965, 0.223381589678011);
            sym3(&mut points, &mut weights, 0.816847572980459, 0.091576213509771, 0.109951743655322);
            4
        }
        5 => {
            points.push(vec![1.0 / 3.0; 3]);
            weights.push(0.225);
            sym3(&mut points, &mut weights, 0.059715871789770, 0.470142064105115, 0.132394152788506);
            sym3(&mut points, &mut weights, 0.797426985353087, 0.101286507323456, 0.125939180544827);
            5
        }
        _ => return collapsed_triangle(degree),
    };
    QuadratureRule {
        points,
        weights,
        degree: exact,
    }
}

fn collapsed_triangle(degree: usize) -> QuadratureRule {
    let n = (degree + 2).div_ceil(2);
    let (x, w) = gauss_legendre(n);
    let mut points = Vec::with_capacity(n * n);
    let mut weights = Vec::with_capacity(n * n);
    for (i, &u) in x.iter().enumerate() {
        for (j, &v) in x.iter().enumerate() {
            let px = u;
            let py = v * (1.0 - u);
            points.push(vec![1.0 - px - py, px, py]);
            weights.push(2.0 * w[i] * w[j] * (1.0 - u));
        }
    }
    QuadratureRule {
        points,
        weights,
        degree,
    }
}

/// Tetrahedron rule exact to `degree`.
pub fn tetrahedron_rule(degree: usize) -> QuadratureRule {
    match degree {
        0 | 1 => QuadratureRule {
            points: vec![vec![0.25; 4]],
            weights: vec![1.0],
            degree: 1,
        },
        2 => {
            let a = 0.585_410_196_624_968_5;
            let b = 0.138_196_601_125_010_5;
            let points = (0..4)
                .map(|k| {
                    let mut p = vec![b; 4];
                    p[k] = a;
                    p
                })
                .collect();
            QuadratureRule {
                points,
                weights: vec![0.25; 4],
                degree: 2,
            }
        }
        _ => {
            let n = (degree + 3).div_ceil(2);
            let (x, w) = gauss_legendre(n);
            let mut points = Vec::with_capacity(n * n * n);
            let mut weights = Vec::with_capacity(n * n * n);
            for (i, &u) in x.iter().enumerate() {
                for (j, &v) in x.iter().enumerate() {
                    for (k, &t) in x.iter().enumerate() {
                        let px = u;
                        let py = v * (1.0 - u);
                        let pz = t * (1.0 - u) * (1.0 - v);
                        points.push(vec![1.0 - px - py - pz, px, py, pz]);
                        weights.push(6.0 * w[i] * w[j] * w[k] * (1.0 - u) * (1.0 - u) * (1.0 - v));
                    }
                }
            }
            QuadratureRule {
                points,
                weights,
                degree,
            }
        }
    }
}

/// Rule on a `p`-simplex (`p = 1, 2, 3`) exact to `degree`.
pub fn simplex_rule(p: usize, degree: usize) -> QuadratureRule {
    match p {
        1 => segment_rule(degree),
        2 => triangle_rule(degree),
        3 => tetrahedron_rule(degree),
        _ => panic!("no quadrature on {p}-simplices"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(n: u32) -> f64 {
        (1..=n).map(|k| k as f64).product()
    }

    // mean of Π λ_i^{k_i} over a p-simplex, closed form
    fn exact_mean(k: &[u32]) -> f64 {
        let p = k.len() as u32 - 1;
        let s: u32 = k.iter().sum();
        factorial(p) * k.iter().map(|&ki| factorial(ki)).product::<f64>() / factorial(p + s)
    }

    fn all_monomials(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        fn rec(prefix: &mut Vec<u32>, left: usize, remaining: u32, out: &mut Vec<Vec<u32>>) {
            if left == 1 {
                for last in 0..=remaining {
                    let mut v = prefix.clone();
                    v.push(last);
                    out.push(v);
                }
                return;
            }
            for k in 0..=remaining {
                prefix.push(k);
                rec(prefix, left - 1, remaining - k, out);
                prefix.pop();
            }
        }
        rec(&mut Vec::new(), nvars, degree, &mut out);
        out
    }

    #[test]
    fn rules_are_exact_to_their_degree() {
        for p in 1..=3 {
            for degree in 0..=12 {
                let rule = simplex_rule(p, degree);
                assert!(rule.degree >= degree);
                let total: f64 = rule.weights.iter().sum();
                assert!((total - 1.0).abs() < 1e-13, "p={p} deg={degree}");
                for k in all_monomials(p + 1, degree as u32) {
                    let q: f64 = rule
                        .points
                        .iter()
                        .zip(&rule.weights)
                        .map(|(pt, w)| w * pt.iter().zip(&k).map(|(l, &e)| l.powi(e as i32)).product::<f64>())
                        .sum();
                    let e = exact_mean(&k);
                    assert!((q - e).abs() <= 1e-13 * e.max(1e-3), "p={p} deg={degree} k={k:?}: {q} vs {e}");
                }
            }
        }
    }

    #[test]
    fn gauss_points_inside() {
        for n in 1..12 {
            let (x, w) = gauss_legendre(n);
            assert!(x.iter().all(|&t| t > 0.0 && t < 1.0));
            assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        }
    }
}
