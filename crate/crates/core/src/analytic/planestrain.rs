//! Plane-strain field of a straight fault segment with piecewise quadratic slip.
//!
//! The field is a superposition of four twice-integrated edge dislocations
//! placed at the slip breakpoints `±½, ±1/6`:
//!
//! ```text
//! u(ξ, η) = b0 [6 U(ξ − ½, η) − 18 U(ξ − 1/6, η) + 18 U(ξ + 1/6, η) − 6 U(ξ + ½, η)]
//! U(t, η) = (A(t, η) ln r + B(t, η) atan(t / η)) / 2π,   r² = t² + η²
//! ```
//!
//! with `A, B` quadratic in `(t, η)`. Terms of `U` that are polynomial of degree
//! at most two in `t` cancel in the superposition, so `U` is only defined up to
//! such terms. The jump across `η = 0` is `b0·s(ξ) e_ξ` with `s` the smooth
//! slip profile, taken as `u(η > 0) − u(η < 0)`.

use crate::dual::Dual;
use crate::elasticity::IsotropicElasticity;
use crate::error::{Result, WsmError};
use crate::fault::{FaultModel, SlipProfile};
use crate::scalar::Real;

use super::Side;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlaneStrainDislocation<T> {
    pub material: IsotropicElasticity<T>,
    pub b0: T,
    pub origin: [T; 2],
    /// Unit tangent `e_ξ`; `e_η` is `e_ξ` rotated by +90°.
    pub e_xi: [T; 2],
}

const OFFSETS: [(f64, f64); 4] = [(0.5, 6.0), (1.0 / 6.0, -18.0), (-1.0 / 6.0, 18.0), (-0.5, -6.0)];

impl<T: Real> PlaneStrainDislocation<T> {
    /// Unit fault through the origin at angle `atan(3/4)`, `λ = μ = 1`.
    pub fn tilted(b0: T) -> Self {
        Self {
            material: IsotropicElasticity::unit(),
            b0,
            origin: [T::zero(); 2],
            e_xi: [T::lit(0.8), T::lit(0.6)],
        }
    }

    pub fn e_eta(&self) -> [T; 2] {
        [-self.e_xi[1], self.e_xi[0]]
    }

    /// `(ξ, η)` of a global point.
    pub fn fault_coords(&self, x: &[T; 2]) -> [T; 2] {
        let d = [x[0] - self.origin[0], x[1] - self.origin[1]];
        let n = self.e_eta();
        [d[0] * self.e_xi[0] + d[1] * self.e_xi[1], d[0] * n[0] + d[1] * n[1]]
    }

    /// The matching fault patch: `+` side is `η > 0`, so `ν = −e_η`.
    pub fn fault_model(&self) -> FaultModel<T, 2> {
        let n = self.e_eta();
        FaultModel::new(
            self.origin,
            &[self.e_xi],
            [-n[0], -n[1]],
            &[(T::lit(-0.5), T::lit(0.5))],
            SlipProfile::SmoothQuadratic { b0: self.b0 },
        )
        .expect("orthonormal frame")
    }

    fn kernel<S: Real>(&self, t: S, eta: S) -> [S; 2] {
        let lam = S::lit(self.material.lambda.re());
        let mu = S::lit(self.material.mu.re());
        let r2 = t * t + eta * eta;
        if r2 == S::zero() {
            return [S::zero(); 2];
        }
        let den = lam + S::lit(2.0) * mu;
        let a1 = S::lit(2.0) * (S::lit(2.0) * lam + S::lit(3.0) * mu) / den * t * eta;
        let a2 = -(mu / den) * t * t - (S::lit(2.0) * lam + mu) / den * eta * eta;
        let b1 = (S::lit(3.0) * lam + S::lit(4.0) * mu) / den * eta * eta - t * t;
        let b2 = S::lit(2.0) * lam / den * t * eta;
        let ln_r = S::lit(0.5) * r2.ln();
        let th = (t / eta).atan();
        let c = S::lit(0.5) / S::PI();
        [c * (a1 * ln_r + b1 * th), c * (a2 * ln_r + b2 * th)]
    }

    /// Displacement in fault coordinates.
    fn eval_local<S: Real>(&self, xi: S, eta: S) -> [S; 2] {
        let mut u = [S::zero(); 2];
        for (a, w) in OFFSETS {
            let k = self.kernel(xi - S::lit(a), eta);
            u[0] += S::lit(w) * k[0];
            u[1] += S::lit(w) * k[1];
        }
        let b0 = S::lit(self.b0.re());
        [b0 * u[0], b0 * u[1]]
    }

    fn to_global<S: Real>(&self, v: [S; 2]) -> [S; 2] {
        let e = [S::lit(self.e_xi[0].re()), S::lit(self.e_xi[1].re())];
        let n = [-e[1], e[0]];
        [v[0] * e[0] + v[1] * n[0], v[0] * e[1] + v[1] * n[1]]
    }

    /// Displacement at `x`. Points on the fault line need an explicit `side`
    /// when they lie on the dislocation itself.
    pub fn eval(&self, x: &[T; 2], side: Option<Side>) -> Result<[T; 2]> {
        let [xi, mut eta] = self.fault_coords(x);
        if eta.abs() <= T::lit(1e-13) {
            eta = match side {
                Some(Side::Plus) => T::zero(),
                Some(Side::Minus) => -T::zero(),
                None if xi.abs() <= T::lit(0.5) => {
                    return Err(WsmError::OnDislocation(x.iter().map(|v| v.re()).collect()))
                }
                None => T::zero(),
            };
        }
        Ok(self.to_global(self.eval_local(xi, eta)))
    }

    /// Displacement and gradient `g[i][j] = ∂u_i/∂x_j` (automatic differentiation).
    /// `x` must be off the fault line.
    pub fn eval_with_grad(&self, x: &[f64; 2]) -> Result<([f64; 2], [[f64; 2]; 2])> {
        let xf = [T::lit(x[0]), T::lit(x[1])];
        let [xi, eta] = self.fault_coords(&xf);
        if eta.abs() <= T::lit(1e-13) && xi.abs() <= T::lit(0.5) {
            return Err(WsmError::OnDislocation(x.to_vec()));
        }
        let xd = Dual::<f64, 2>::seed(x);
        let o = [self.origin[0].re(), self.origin[1].re()];
        let e = [self.e_xi[0].re(), self.e_xi[1].re()];
        let d = [xd[0] - Dual::constant(o[0]), xd[1] - Dual::constant(o[1])];
        let xi = d[0] * Dual::constant(e[0]) + d[1] * Dual::constant(e[1]);
        let eta = d[1] * Dual::constant(e[0]) - d[0] * Dual::constant(e[1]);
        let u = self.to_global(self.eval_local(xi, eta));
        Ok(([u[0].re, u[1].re], [u[0].eps, u[1].eps]))
    }
}
