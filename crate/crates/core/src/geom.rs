//! Small fixed-size vector helpers. Two-dimensional data is embedded in
//! three components with a zero `z`.

pub type Vec3 = [f64; 3];

#[inline]
pub fn add(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

#[inline]
pub fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
pub fn scale(a: Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

#[inline]
pub fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[inline]
pub fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

/// Measure of the simplex spanned by `points` (length, area or volume,
/// depending on how many points are given).
pub fn simplex_measure(points: &[Vec3]) -> f64 {
    match points.len() {
        2 => norm(sub(points[1], points[0])),
        3 => 0.5 * norm(cross(sub(points[1], points[0]), sub(points[2], points[0]))),
        4 => {
            let a = sub(points[1], points[0]);
            let b = sub(points[2], points[0]);
            let c = sub(points[3], points[0]);
            dot(a, cross(b, c)).abs() / 6.0
        }
        _ => 0.0,
    }
}

/// Point with the given barycentric coordinates with respect to `points`.
pub fn barycentric_point(points: &[Vec3], lambda: &[f64]) -> Vec3 {
    let mut x = [0.0; 3];
    for (p, &l) in points.iter().zip(lambda) {
        x = add(x, scale(*p, l));
    }
    x
}
