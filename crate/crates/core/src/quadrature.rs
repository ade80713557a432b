//! Gauss–Legendre rules on the reference box and a collapsed rule on triangles.

use crate::error::{Result, WsmError};
use crate::mesh::unravel;
use crate::scalar::Real;

/// Points and weights on `[−1, 1]^D`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule<T, const D: usize> {
    pub points: Vec<[T; D]>,
    pub weights: Vec<T>,
}

impl<T: Real, const D: usize> QuadratureRule<T, D> {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[T; D], T)> {
        self.points.iter().zip(self.weights.iter().copied())
    }
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[−1, 1]`,
/// computed by Newton iteration on `P_n`.
pub(crate) fn gauss_legendre_f64(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            if n == 1 {
                p1 = z;
                p0 = 1.0;
            } else {
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
            }
            // p1 = P_n(z), p0 = P_{n-1}(z)
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    (x, w)
}

/// Tensor-product Gauss–Legendre rule with `points_per_axis` points along each
/// axis; exact for polynomials of degree `2·points_per_axis − 1` per axis.
pub fn gauss_rule<T: Real, const D: usize>(points_per_axis: usize) -> Result<QuadratureRule<T, D>> {
    if !(1..=6).contains(&points_per_axis) {
        return Err(WsmError::UnsupportedQuadrature(points_per_axis));
    }
    Ok(tensor_rule(points_per_axis))
}

pub(crate) fn tensor_rule<T: Real, const D: usize>(n: usize) -> QuadratureRule<T, D> {
    let (x, w) = gauss_legendre_f64(n);
    let dims = [n; D];
    let total = n.pow(D as u32);
    let mut points = Vec::with_capacity(total);
    let mut weights = Vec::with_capacity(total);
    for k in 0..total {
        let idx = unravel(k, &dims);
        points.push(std::array::from_fn(|d| T::lit(x[idx[d]])));
        weights.push(T::lit(idx.iter().map(|&i| w[i]).product()));
    }
    QuadratureRule { points, weights }
}

/// Collapsed (Duffy) product rule on the unit triangle `{(s, t) : s, t ≥ 0, s + t ≤ 1}`.
///
/// Uses `n + 1` points in the collapsed direction and `n` along the other, so
/// it integrates polynomials of total degree `2n − 1` exactly. Weights sum to ½.
pub fn triangle_rule<T: Real>(n: usize) -> QuadratureRule<T, 2> {
    let (xa, wa) = gauss_legendre_f64(n + 1);
    let (xb, wb) = gauss_legendre_f64(n);
    let mut points = Vec::with_capacity(n * (n + 1));
    let mut weights = Vec::with_capacity(n * (n + 1));
    for (a, wa) in xa.iter().zip(&wa) {
        // u in [0,1], v in [0,1]; (s, t) = (u (1 - v), u v), Jacobian u
        let u = 0.5 * (a + 1.0);
        for (b, wb) in xb.iter().zip(&wb) {
            let v = 0.5 * (b + 1.0);
            points.push([T::lit(u * (1.0 - v)), T::lit(u * v)]);
            weights.push(T::lit(0.25 * wa * wb * u));
        }
    }
    QuadratureRule { points, weights }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_rule() {
        let r = gauss_rule::<f64, 1>(2).unwrap();
        let s = 1.0 / 3f64.sqrt();
        assert!((r.points[0][0] + s).abs() < 1e-15);
        assert!((r.points[1][0] - s).abs() < 1e-15);
        assert!((r.weights[0] - 1.0).abs() < 1e-15);
        assert!((r.weights[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn single_point_3d() {
        let r = gauss_rule::<f64, 3>(1).unwrap();
        assert_eq!(r.points, vec![[0.0; 3]]);
        assert_eq!(r.weights, vec![8.0]);
    }

    #[test]
    fn x2y2_integral() {
        // ∫∫ x² y² over [-1,1]² = (2/3)² = 4/9
        let r = gauss_rule::<f64, 2>(2).unwrap();
        let v: f64 = r.iter().map(|(p, w)| w * p[0] * p[0] * p[1] * p[1]).sum();
        assert!((v - 4.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(gauss_rule::<f64, 2>(0).is_err());
        assert!(gauss_rule::<f64, 2>(7).is_err());
    }

    #[test]
    fn weights_sum_and_exactness() {
        for n in 1..=6usize {
            let r = gauss_rule::<f64, 2>(n).unwrap();
            let total: f64 = r.weights.iter().sum();
            assert!((total - 4.0).abs() < 1e-13);
            // ∫ x^k over [-1,1] = 2/(k+1) for even k
            for k in (0..=(2 * n - 1)).step_by(2) {
                let r1 = gauss_rule::<f64, 1>(n).unwrap();
                let v: f64 = r1.iter().map(|(p, w)| w * p[0].powi(k as i32)).sum();
                assert!((v - 2.0 / (k as f64 + 1.0)).abs() < 1e-13, "n={n}, k={k}");
            }
        }
    }

    #[test]
    fn triangle_rule_degree_seven() {
        // ∫_T s^a t^b = a! b! / (a + b + 2)!
        let fact = |k: u32| (1..=k).map(|i| i as f64).product::<f64>();
        let r = triangle_rule::<f64>(4);
        for a in 0..=7u32 {
            for b in 0..=(7 - a) {
                let v: f64 = r.iter().map(|(p, w)| w * p[0].powi(a as i32) * p[1].powi(b as i32)).sum();
                let exact = fact(a) * fact(b) / fact(a + b + 2);
                assert!((v - exact).abs() < 1e-14, "a={a} b={b}");
            }
        }
    }
}
