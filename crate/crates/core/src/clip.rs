//! Sutherland–Hodgman clipping against half-planes and convex polygons.

use crate::lattice::Vec2;

/// Keeps the part of `poly` satisfying `normal · x <= c`.
pub fn clip_halfplane(poly: &[Vec2], normal: &Vec2, c: f64) -> Vec<Vec2> {
    let n = poly.len();
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(n + 2);
    for i in 0..n {
        let cur = poly[i];
        let next = poly[(i + 1) % n];
        let dc = normal.dot(&cur) - c;
        let dn = normal.dot(&next) - c;
        if dc <= 0.0 {
            out.push(cur);
        }
        if (dc < 0.0 && dn > 0.0) || (dc > 0.0 && dn < 0.0) {
            let t = dc / (dc - dn);
            out.push(cur + (next - cur) * t);
        }
    }
    out
}

/// Intersection of `subject` with the convex, counterclockwise polygon `clip`.
pub fn clip_convex(subject: &[Vec2], clip: &[Vec2]) -> Vec<Vec2> {
    let mut out = subject.to_vec();
    let m = clip.len();
    for i in 0..m {
        if out.is_empty() {
            break;
        }
        let a = clip[i];
        let b = clip[(i + 1) % m];
        let e = b - a;
        // outward normal of a CCW edge
        let normal = Vec2::new(e.y, -e.x);
        out = clip_halfplane(&out, &normal, normal.dot(&a));
    }
    out
}

/// Shoelace signed area; positive for counterclockwise order.
pub fn signed_area(poly: &[Vec2]) -> f64 {
    let n = poly.len();
    if n < 3 {
        return 0.0;
    }
    let mut acc = 0.0;
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        acc += a.x * b.y - a.y * b.x;
    }
    0.5 * acc
}

pub fn cross(a: &Vec2, b: &Vec2) -> f64 {
    a.x * b.y - a.y * b.x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(x0: f64, y0: f64, s: f64) -> Vec<Vec2> {
        vec![
            Vec2::new(x0, y0),
            Vec2::new(x0 + s, y0),
            Vec2::new(x0 + s, y0 + s),
            Vec2::new(x0, y0 + s),
        ]
    }

    #[test]
    fn overlapping_squares() {
        let a = square(0.0, 0.0, 1.0);
        let b = square(0.5, 0.25, 1.0);
        let c = clip_convex(&a, &b);
        assert!((signed_area(&c) - 0.5 * 0.75).abs() < 1e-15);
    }

    #[test]
    fn touching_squares_have_zero_overlap() {
        let a = square(0.0, 0.0, 1.0);
        let b = square(1.0, 0.0, 1.0);
        assert!(signed_area(&clip_convex(&a, &b)).abs() < 1e-15);
        let far = square(3.0, 3.0, 1.0);
        assert!(clip_convex(&a, &far).is_empty());
    }

    #[test]
    fn halfplane_cut() {
        let a = square(0.0, 0.0, 2.0);
        let c = clip_halfplane(&a, &Vec2::new(1.0, 1.0), 2.0);
        assert!((signed_area(&c) - 2.0).abs() < 1e-15);
    }
}
