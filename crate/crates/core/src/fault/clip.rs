//! Clipping of segments and convex planar polygons against axis-aligned boxes.

use crate::scalar::{cross, norm, sub, Real};

/// Parameter interval `[t0, t1] ⊂ [0, 1]` of `p0 + t (p1 − p0)` inside the box
/// `[lo − tol, hi + tol]` (Liang–Barsky). `None` if the segment misses it.
pub fn clip_segment<T: Real, const D: usize>(
    p0: &[T; D],
    p1: &[T; D],
    lo: &[T; D],
    hi: &[T; D],
    tol: T,
) -> Option<(T, T)> {
    let mut t0 = T::zero();
    let mut t1 = T::one();
    for d in 0..D {
        let dp = p1[d] - p0[d];
        for (p, q) in [(-dp, p0[d] - (lo[d] - tol)), (dp, (hi[d] + tol) - p0[d])] {
            if p == T::zero() {
                if q < T::zero() {
                    return None;
                }
            } else {
                let r = q / p;
                if p < T::zero() {
                    t0 = t0.max(r);
                } else {
                    t1 = t1.min(r);
                }
            }
        }
    }
    (t0 <= t1).then_some((t0, t1))
}

/// Keeps the part of `poly` with `s·(x_axis − c) ≤ 0`, `s = ±1`.
fn clip_halfspace<T: Real>(poly: &[[T; 3]], axis: usize, c: T, s: T) -> Vec<[T; 3]> {
    let mut out = Vec::with_capacity(poly.len() + 2);
    let n = poly.len();
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        let fa = s * (a[axis] - c);
        let fb = s * (b[axis] - c);
        let a_in = fa <= T::zero();
        let b_in = fb <= T::zero();
        if a_in {
            out.push(a);
        }
        if a_in != b_in {
            let t = fa / (fa - fb);
            let mut x: [T; 3] = std::array::from_fn(|k| a[k] + t * (b[k] - a[k]));
            x[axis] = c;
            out.push(x);
        }
    }
    out
}

/// Sutherland–Hodgman clip of a convex polygon against `[lo − tol, hi + tol]`.
pub fn clip_polygon<T: Real>(poly: &[[T; 3]], lo: &[T; 3], hi: &[T; 3], tol: T) -> Vec<[T; 3]> {
    let mut p = poly.to_vec();
    for axis in 0..3 {
        if p.len() < 3 {
            return Vec::new();
        }
        p = clip_halfspace(&p, axis, lo[axis] - tol, -T::one());
        if p.len() < 3 {
            return Vec::new();
        }
        p = clip_halfspace(&p, axis, hi[axis] + tol, T::one());
    }
    if p.len() < 3 {
        Vec::new()
    } else {
        p
    }
}

pub fn centroid<T: Real>(poly: &[[T; 3]]) -> [T; 3] {
    let n = T::lit(poly.len() as f64);
    std::array::from_fn(|k| poly.iter().map(|v| v[k]).sum::<T>() / n)
}

/// Area of a planar convex polygon.
pub fn polygon_area<T: Real>(poly: &[[T; 3]]) -> T {
    if poly.len() < 3 {
        return T::zero();
    }
    let c = centroid(poly);
    let mut a = T::zero();
    for i in 0..poly.len() {
        let u = sub(&poly[i], &c);
        let v = sub(&poly[(i + 1) % poly.len()], &c);
        a += norm(&cross(&u, &v));
    }
    a * T::lit(0.5)
}
