//! Displacement of a rectangular uniform-slip dislocation in an isotropic
//! elastic half-space with a traction-free surface `z = 0`.
//!
//! Closed form of Okada (1992), displacement part only. Gradients are obtained
//! by forward-mode automatic differentiation of the same expressions.
//!
//! Local frame: `x` along strike, `y` horizontal and perpendicular to it (the
//! fault dips towards `−y`), `z` up. The reference point of the patch is at
//! `(0, 0, −depth)`; the patch covers `x ∈ [al.0, al.1]` and the down-dip
//! coordinate `w ∈ [aw.0, aw.1]` measured up-dip, so a patch point is
//! `(s, w cos δ, −depth + w sin δ)`. Slip is the motion of the hanging wall
//! relative to the footwall: `disl[0]` along strike, `disl[1]` up-dip,
//! `disl[2]` opening.

use crate::dual::Dual;
use crate::elasticity::IsotropicElasticity;
use crate::error::{Result, WsmError};
use crate::fault::{FaultModel, SlipProfile};
use crate::scalar::Real;

use super::Side;

struct Consts<S> {
    alp1: S,
    alp2: S,
    alp3: S,
    alp4: S,
    alp5: S,
    sd: S,
    cd: S,
    sdsd: S,
    cdcd: S,
    sdcd: S,
}

/// Quantities shared by the corner terms.
struct Corner<S> {
    xi: S,
    et: S,
    q: S,
    xi2: S,
    q2: S,
    r: S,
    r3: S,
    y: S,
    d: S,
    tt: S,
    alx: S,
    ale: S,
    x11: S,
    y11: S,
    x32: S,
    y32: S,
}

const EPS: f64 = 1e-12;

fn snap<S: Real>(v: S) -> S {
    if v.abs() < S::lit(EPS) {
        S::zero()
    } else {
        v
    }
}

fn corner<S: Real>(c: &Consts<S>, xi: S, et: S, q: S, kxi: bool, ket: bool) -> Option<Corner<S>> {
    let (xi, et, q) = (snap(xi), snap(et), snap(q));
    let xi2 = xi * xi;
    let q2 = q * q;
    let r2 = xi2 + et * et + q2;
    let r = r2.sqrt();
    if r == S::zero() {
        return None;
    }
    let r3 = r * r2;
    let y = et * c.cd + q * c.sd;
    let d = et * c.sd - q * c.cd;
    let tt = if q == S::zero() { S::zero() } else { (xi * et / (q * r)).atan() };
    let (alx, x11, x32) = if kxi {
        (-(r - xi).ln(), S::zero(), S::zero())
    } else {
        let rxi = r + xi;
        let x11 = S::one() / (r * rxi);
        (rxi.ln(), x11, (r + rxi) * x11 * x11 / r)
    };
    let (ale, y11, y32) = if ket {
        (-(r - et).ln(), S::zero(), S::zero())
    } else {
        let ret = r + et;
        let y11 = S::one() / (r * ret);
        (ret.ln(), y11, (r + ret) * y11 * y11 / r)
    };
    Some(Corner { xi, et, q, xi2, q2, r, r3, y, d, tt, alx, ale, x11, y11, x32, y32 })
}

/// Infinite-medium terms.
fn ua<S: Real>(c: &Consts<S>, k: &Corner<S>, disl: &[S; 3]) -> [S; 3] {
    let half = S::lit(0.5);
    let qx = k.q * k.x11;
    let qy = k.q * k.y11;
    let mut u = [S::zero(); 3];
    let mut add = |w: S, du: [S; 3]| {
        for i in 0..3 {
            u[i] += w * du[i];
        }
    };
    if disl[0] != S::zero() {
        add(
            disl[0],
            [
                k.tt * half + c.alp2 * k.xi * qy,
                c.alp2 * k.q / k.r,
                c.alp1 * k.ale - c.alp2 * k.q * qy,
            ],
        );
    }
    if disl[1] != S::zero() {
        add(
            disl[1],
            [
                c.alp2 * k.q / k.r,
                k.tt * half + c.alp2 * k.et * qx,
                c.alp1 * k.alx - c.alp2 * k.q * qx,
            ],
        );
    }
    if disl[2] != S::zero() {
        add(
            disl[2],
            [
                -c.alp1 * k.ale - c.alp2 * k.q * qy,
                -c.alp1 * k.alx - c.alp2 * k.q * qx,
                k.tt * half - c.alp2 * (k.et * qx + k.xi * qy),
            ],
        );
    }
    u
}

/// Surface-deformation terms.
fn ub<S: Real>(c: &Consts<S>, k: &Corner<S>, disl: &[S; 3]) -> [S; 3] {
    let one = S::one();
    let two = S::lit(2.0);
    let rd = k.r + k.d;
    let (ai3, ai4) = if c.cd != S::zero() {
        let ai4 = if k.xi == S::zero() {
            S::zero()
        } else {
            let x = (k.xi2 + k.q2).sqrt();
            one / c.cdcd
                * (k.xi / rd * c.sdcd
                    + two * ((k.et * (x + k.q * c.cd) + x * (k.r + x) * c.sd) / (k.xi * (k.r + x) * c.cd)).atan())
        };
        let ai3 = (k.y * c.cd / rd - k.ale + c.sd * rd.ln()) / c.cdcd;
        (ai3, ai4)
    } else {
        let rd2 = rd * rd;
        ((k.et / rd + k.y * k.q / rd2 - k.ale) / two, k.xi * k.y / rd2 / two)
    };
    let ai1 = -k.xi / rd * c.cd - ai4 * c.sd;
    let ai2 = rd.ln() + ai3 * c.sd;
    let qx = k.q * k.x11;
    let qy = k.q * k.y11;
    let mut u = [S::zero(); 3];
    let mut add = |w: S, du: [S; 3]| {
        for i in 0..3 {
            u[i] += w * du[i];
        }
    };
    if disl[0] != S::zero() {
        add(
            disl[0],
            [
                -k.xi * qy - k.tt - c.alp3 * ai1 * c.sd,
                -k.q / k.r + c.alp3 * k.y / rd * c.sd,
                k.q * qy - c.alp3 * ai2 * c.sd,
            ],
        );
    }
    if disl[1] != S::zero() {
        add(
            disl[1],
            [
                -k.q / k.r + c.alp3 * ai3 * c.sdcd,
                -k.et * qx - k.tt - c.alp3 * k.xi / rd * c.sdcd,
                k.q * qx + c.alp3 * ai4 * c.sdcd,
            ],
        );
    }
    if disl[2] != S::zero() {
        add(
            disl[2],
            [
                k.q * qy - c.alp3 * ai3 * c.sdsd,
                k.q * qx + c.alp3 * k.xi / rd * c.sdsd,
                k.et * qx + k.xi * qy - k.tt - c.alp3 * ai4 * c.sdsd,
            ],
        );
    }
    u
}

/// Depth-dependent terms.
fn uc<S: Real>(c: &Consts<S>, k: &Corner<S>, z: S, disl: &[S; 3]) -> [S; 3] {
    let cc = k.d + z;
    let h = k.q * c.cd - z;
    let z32 = c.sd / k.r3 - h * k.y32;
    let xy = k.xi * k.y11;
    let qy = k.q * k.y11;
    let mut u = [S::zero(); 3];
    let mut add = |w: S, du: [S; 3]| {
        for i in 0..3 {
            u[i] += w * du[i];
        }
    };
    if disl[0] != S::zero() {
        add(
            disl[0],
            [
                c.alp4 * xy * c.cd - c.alp5 * k.xi * k.q * z32,
                c.alp4 * (c.cd / k.r + S::lit(2.0) * qy * c.sd) - c.alp5 * cc * k.q / k.r3,
                c.alp4 * qy * c.cd - c.alp5 * (cc * k.et / k.r3 - z * k.y11 + k.xi2 * z32),
            ],
        );
    }
    if disl[1] != S::zero() {
        add(
            disl[1],
            [
                c.alp4 * c.cd / k.r - qy * c.sd - c.alp5 * cc * k.q / k.r3,
                c.alp4 * k.y * k.x11 - c.alp5 * cc * k.et * k.q * k.x32,
                -k.d * k.x11 - xy * c.sd - c.alp5 * cc * (k.x11 - k.q2 * k.x32),
            ],
        );
    }
    if disl[2] != S::zero() {
        add(
            disl[2],
            [
                -c.alp4 * (c.sd / k.r + qy * c.cd) - c.alp5 * (z * k.y11 - k.q2 * z32),
                c.alp4 * S::lit(2.0) * xy * c.sd + k.d * k.x11 - c.alp5 * cc * (k.x11 - k.q2 * k.x32),
                c.alp4 * (k.y * k.x11 + xy * c.cd) + c.alp5 * k.q * (cc * k.et * k.x32 + k.xi * z32),
            ],
        );
    }
    u
}

/// Flags selecting the `−ln(R − ξ)` / `−ln(R − η)` branches on the negative
/// extensions of the patch edges.
fn edge_flags<S: Real>(xi: &[S; 2], et: &[S; 2], q: S) -> ([bool; 2], [bool; 2]) {
    let eps = S::lit(EPS);
    let r12 = (xi[0] * xi[0] + et[1] * et[1] + q * q).sqrt();
    let r21 = (xi[1] * xi[1] + et[0] * et[0] + q * q).sqrt();
    let r22 = (xi[1] * xi[1] + et[1] * et[1] + q * q).sqrt();
    let kxi = [xi[0] < S::zero() && r21 + xi[1] < eps, xi[0] < S::zero() && r22 + xi[1] < eps];
    let ket = [et[0] < S::zero() && r12 + et[1] < eps, et[0] < S::zero() && r22 + et[1] < eps];
    (kxi, ket)
}

/// Displacement in the local frame at `(x, y, z)`, `z ≤ 0`.
#[allow(clippy::too_many_arguments)]
fn dc3d<S: Real>(
    alpha: f64,
    x: S,
    y: S,
    z: S,
    depth: f64,
    dip_deg: f64,
    al: (f64, f64),
    aw: (f64, f64),
    disl: [f64; 3],
) -> Result<[S; 3]> {
    let (mut sd, mut cd) = dip_deg.to_radians().sin_cos();
    if cd.abs() < EPS {
        cd = 0.0;
        sd = sd.signum();
    }
    let lit = S::lit;
    let c = Consts {
        alp1: lit((1.0 - alpha) / 2.0),
        alp2: lit(alpha / 2.0),
        alp3: lit((1.0 - alpha) / alpha),
        alp4: lit(1.0 - alpha),
        alp5: lit(alpha),
        sd: lit(sd),
        cd: lit(cd),
        sdsd: lit(sd * sd),
        cdcd: lit(cd * cd),
        sdcd: lit(sd * cd),
    };
    let scale = 0.5 / std::f64::consts::PI;
    let dd = disl.map(|v| lit(v * scale));
    let xi = [snap(x - lit(al.0)), snap(x - lit(al.1))];
    let mut u = [S::zero(); 3];

    for image in [false, true] {
        let d = if image { lit(depth) - z } else { lit(depth) + z };
        let p = y * c.cd + d * c.sd;
        let q = snap(y * c.sd - d * c.cd);
        let et = [snap(p - lit(aw.0)), snap(p - lit(aw.1))];
        if !image && q == S::zero() {
            let on_edge = (xi[0] * xi[1] <= S::zero() && et[0] * et[1] == S::zero())
                || (et[0] * et[1] <= S::zero() && xi[0] * xi[1] == S::zero());
            if on_edge {
                return Err(WsmError::OnDislocation(vec![x.re(), y.re(), z.re()]));
            }
        }
        let (kxi, ket) = edge_flags(&xi, &et, q);
        for kk in 0..2 {
            for jj in 0..2 {
                let Some(k) = corner(&c, xi[jj], et[kk], q, kxi[kk], ket[jj]) else {
                    continue;
                };
                let du = if image {
                    let a = ua(&c, &k, &dd);
                    let b = ub(&c, &k, &dd);
                    let cz = uc(&c, &k, z, &dd);
                    [
                        a[0] + b[0] + z * cz[0],
                        (a[1] + b[1] + z * cz[1]) * c.cd - (a[2] + b[2] + z * cz[2]) * c.sd,
                        (a[1] + b[1] - z * cz[1]) * c.sd + (a[2] + b[2] - z * cz[2]) * c.cd,
                    ]
                } else {
                    let a = ua(&c, &k, &dd);
                    [-a[0], -a[1] * c.cd + a[2] * c.sd, -a[1] * c.sd - a[2] * c.cd]
                };
                let sign = if jj + kk == 1 { -S::one() } else { S::one() };
                for i in 0..3 {
                    u[i] += sign * du[i];
                }
            }
        }
    }
    Ok(u)
}

/// Rectangular dislocation in the half-space `z ≤ 0`, placed in global
/// coordinates by a strike azimuth and a horizontal reference point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfspaceSource {
    pub material: IsotropicElasticity<f64>,
    /// Horizontal position of the local origin.
    pub center: [f64; 2],
    /// Depth of the reference point below the surface.
    pub depth: f64,
    /// Strike azimuth in degrees, clockwise from `+y`.
    pub strike_deg: f64,
    pub dip_deg: f64,
    pub al: (f64, f64),
    pub aw: (f64, f64),
    /// Strike-slip, dip-slip and opening.
    pub disl: [f64; 3],
}

impl HalfspaceSource {
    /// Unit vectors of the local frame in global coordinates.
    pub fn frame(&self) -> [[f64; 3]; 3] {
        let (s, c) = self.strike_deg.to_radians().sin_cos();
        [[s, c, 0.0], [-c, s, 0.0], [0.0, 0.0, 1.0]]
    }

    pub fn e_strike(&self) -> [f64; 3] {
        self.frame()[0]
    }

    /// Up-dip unit vector.
    pub fn e_dip(&self) -> [f64; 3] {
        let (sd, cd) = self.dip_deg.to_radians().sin_cos();
        let f = self.frame();
        std::array::from_fn(|i| cd * f[1][i] + sd * f[2][i])
    }

    /// Unit normal pointing into the hanging wall.
    pub fn hanging_wall_normal(&self) -> [f64; 3] {
        let (sd, cd) = self.dip_deg.to_radians().sin_cos();
        let f = self.frame();
        std::array::from_fn(|i| -sd * f[1][i] + cd * f[2][i])
    }

    pub fn reference_point(&self) -> [f64; 3] {
        [self.center[0], self.center[1], -self.depth]
    }

    /// The patch as a fault model: `+` side is the hanging wall, so `ν` points
    /// into the footwall and the slip is `disl[0] e_strike + disl[1] e_dip`.
    pub fn fault_model(&self) -> FaultModel<f64, 3> {
        let n = self.hanging_wall_normal();
        FaultModel::new(
            self.reference_point(),
            &[self.e_strike(), self.e_dip()],
            n.map(|v| -v),
            &[self.al, self.aw],
            SlipProfile::Uniform { components: [self.disl[0], self.disl[1]] },
        )
        .expect("orthonormal frame")
    }

    fn alpha(&self) -> f64 {
        let m = &self.material;
        (m.lambda + m.mu) / (m.lambda + 2.0 * m.mu)
    }

    fn to_local<S: Real>(&self, x: &[S; 3]) -> [S; 3] {
        let f = self.frame();
        let d = [x[0] - S::lit(self.center[0]), x[1] - S::lit(self.center[1]), x[2]];
        std::array::from_fn(|k| (0..3).map(|i| d[i] * S::lit(f[k][i])).sum())
    }

    fn to_global<S: Real>(&self, u: &[S; 3]) -> [S; 3] {
        let f = self.frame();
        std::array::from_fn(|i| (0..3).map(|k| u[k] * S::lit(f[k][i])).sum())
    }

    /// Signed distance to the fault plane, positive in the hanging wall.
    fn plane_distance(&self, x: &[f64; 3]) -> f64 {
        let r = self.reference_point();
        let n = self.hanging_wall_normal();
        (0..3).map(|i| (x[i] - r[i]) * n[i]).sum()
    }

    fn on_patch(&self, x: &[f64; 3]) -> bool {
        let f = self.fault_model();
        f.signed_distance(x).abs() <= 1e-13 && f.in_patch(&f.plane_coords(x))
    }

    fn check(&self, x: &[f64; 3]) -> Result<f64> {
        if x[2] > 1e-12 {
            return Err(WsmError::AboveSurface(x.to_vec()));
        }
        Ok(x[2].min(0.0))
    }

    fn eval_generic<S: Real>(&self, x: &[S; 3], z: S) -> Result<[S; 3]> {
        let l = self.to_local(x);
        let u = dc3d(self.alpha(), l[0], l[1], z, self.depth, self.dip_deg, self.al, self.aw, self.disl)?;
        Ok(self.to_global(&u))
    }

    /// Displacement at `x`. Points on the patch need an explicit `side`.
    pub fn eval(&self, x: &[f64; 3], side: Option<Side>) -> Result<[f64; 3]> {
        let z = self.check(x)?;
        let mut p = *x;
        if self.on_patch(x) {
            let s = match side {
                Some(Side::Plus) => 1.0,
                Some(Side::Minus) => -1.0,
                None => return Err(WsmError::OnDislocation(x.to_vec())),
            };
            let n = self.hanging_wall_normal();
            let shift = 1e-10 - self.plane_distance(x) * s;
            for i in 0..3 {
                p[i] += s * shift * n[i];
            }
        }
        self.eval_generic(&p, z.min(p[2]))
    }

    /// Displacement and gradient `g[i][j] = ∂u_i/∂x_j`; `x` must be off the patch.
    pub fn eval_with_grad(&self, x: &[f64; 3]) -> Result<([f64; 3], [[f64; 3]; 3])> {
        let z = self.check(x)?;
        if self.on_patch(x) {
            return Err(WsmError::OnDislocation(x.to_vec()));
        }
        let mut xx = *x;
        xx[2] = z;
        let xd = Dual::<f64, 3>::seed(&xx);
        let u = self.eval_generic(&xd, xd[2])?;
        Ok((u.map(|v| v.re), u.map(|v| v.eps)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elasticity::{strain, stress};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn source(aw: (f64, f64), dip_slip: f64) -> HalfspaceSource {
        let l = 3f64.powf(-0.5);
        HalfspaceSource {
            material: IsotropicElasticity::unit(),
            center: [0.0, 0.0],
            depth: 0.5,
            strike_deg: 15.0,
            dip_deg: 30.0,
            al: (-0.5 * l, 0.5 * l),
            aw,
            disl: [0.2, dip_slip, 0.0],
        }
    }

    fn buried() -> HalfspaceSource {
        source((-0.5, 0.5), 0.1)
    }

    fn rupturing() -> HalfspaceSource {
        source((-0.5, 1.0), -0.1)
    }

    #[test]
    fn jump_across_patch_is_the_slip() {
        for src in [buried(), rupturing()] {
            let f = src.fault_model();
            let n = src.hanging_wall_normal();
            for s in [[0.0, 0.0], [0.1, -0.2], [-0.2, 0.3]] {
                let c = f.point(&s);
                let up: [f64; 3] = std::array::from_fn(|i| c[i] + 1e-7 * n[i]);
                let dn: [f64; 3] = std::array::from_fn(|i| c[i] - 1e-7 * n[i]);
                let a = src.eval(&up, None).unwrap();
                let b = src.eval(&dn, None).unwrap();
                let want = f.slip_at(&c);
                for i in 0..3 {
                    assert!((a[i] - b[i] - want[i]).abs() < 1e-4, "{s:?}: {:?} vs {want:?}", [a[0] - b[0], a[1] - b[1], a[2] - b[2]]);
                }
                let p = src.eval(&c, Some(Side::Plus)).unwrap();
                let m = src.eval(&c, Some(Side::Minus)).unwrap();
                for i in 0..3 {
                    assert!((p[i] - m[i] - want[i]).abs() < 1e-6);
                }
            }
            assert!(matches!(src.eval(&f.point(&[0.0, 0.0]), None), Err(WsmError::OnDislocation(_))));
        }
    }

    #[test]
    fn rejects_points_above_surface() {
        assert!(matches!(buried().eval(&[0.0, 0.0, 0.1], None), Err(WsmError::AboveSurface(_))));
    }

    fn sigma(src: &HalfspaceSource, x: [f64; 3]) -> [[f64; 3]; 3] {
        let (_, g) = src.eval_with_grad(&x).unwrap();
        *stress(&strain(&g), &src.material).entries()
    }

    #[test]
    fn free_surface_is_traction_free() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for src in [buried(), rupturing()] {
            let f = src.fault_model();
            let mut n = 0;
            while n < 50 {
                let x = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), 0.0];
                if f.distance_to_patch(&x) < 0.05 {
                    continue;
                }
                n += 1;
                let s = sigma(&src, x);
                let scale = s.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-3);
                for i in 0..3 {
                    assert!(s[i][2].abs() < 1e-10 * scale.max(1.0), "x={x:?}: {:?}", s);
                }
            }
        }
    }

    #[test]
    fn equilibrium_by_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let src = HalfspaceSource { material: IsotropicElasticity::new(1.5, 0.8).unwrap(), ..buried() };
        let f = src.fault_model();
        let mut n = 0;
        while n < 50 {
            let x = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..-0.05)];
            if f.distance_to_patch(&x) < 0.1 {
                continue;
            }
            n += 1;
            let div = |h: f64| {
                let mut d = [0.0; 3];
                for j in 0..3 {
                    let mut xp = x;
                    let mut xm = x;
                    xp[j] += h;
                    xm[j] -= h;
                    let (sp, sm) = (sigma(&src, xp), sigma(&src, xm));
                    for i in 0..3 {
                        d[i] += (sp[i][j] - sm[i][j]) / (2.0 * h);
                    }
                }
                d.iter().map(|v| v * v).sum::<f64>().sqrt()
            };
            let (a, b) = (div(1e-2), div(5e-3));
            assert!(b < 0.3 * a || b < 1e-9, "x={x:?}: {a} {b}");
        }
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let src = rupturing();
        let x = [0.3, -0.4, -0.2];
        let (u, g) = src.eval_with_grad(&x).unwrap();
        let u0 = src.eval(&x, None).unwrap();
        let h = 1e-6;
        for i in 0..3 {
            assert!((u[i] - u0[i]).abs() < 1e-15);
        }
        for j in 0..3 {
            let mut xp = x;
            let mut xm = x;
            xp[j] += h;
            xm[j] -= h;
            let (up, um) = (src.eval(&xp, None).unwrap(), src.eval(&xm, None).unwrap());
            for i in 0..3 {
                assert!((g[i][j] - (up[i] - um[i]) / (2.0 * h)).abs() < 1e-7);
            }
        }
    }

    #[test]
    fn deep_source_has_small_surface_signal() {
        let shallow = buried();
        let deep = HalfspaceSource { depth: 100.0, ..shallow };
        for x in [[0.3, 0.2, 0.0], [-0.5, 0.6, 0.0], [0.0, -0.8, 0.0]] {
            let a = shallow.eval(&x, None).unwrap();
            let b = deep.eval(&x, None).unwrap();
            let na = a.iter().map(|v| v * v).sum::<f64>().sqrt();
            let nb = b.iter().map(|v| v * v).sum::<f64>().sqrt();
            assert!(nb < 1e-4 * na);
        }
    }

    #[test]
    fn translation_equivariant() {
        let a = buried();
        let b = HalfspaceSource { center: [0.3, -0.2], ..a };
        for x in [[0.3, 0.2, -0.1], [-0.5, 0.6, -0.7], [0.0, -0.8, 0.0]] {
            let ua = a.eval(&x, None).unwrap();
            let ub = b.eval(&[x[0] + 0.3, x[1] - 0.2, x[2]], None).unwrap();
            for i in 0..3 {
                assert!((ua[i] - ub[i]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn surface_trace_jump_only_when_rupturing() {
        for (src, expect_jump) in [(buried(), false), (rupturing(), true)] {
            let f = src.fault_model();
            let top = f.point(&[0.0, 1.0]);
            // point on the surface trace of the fault plane
            let s = [top[0], top[1], 0.0];
            let t = src.frame()[1];
            let a = src.eval(&[s[0] + 1e-6 * t[0], s[1] + 1e-6 * t[1], 0.0], None).unwrap();
            let b = src.eval(&[s[0] - 1e-6 * t[0], s[1] - 1e-6 * t[1], 0.0], None).unwrap();
            let j = ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt();
            if expect_jump {
                let b = f.slip_at(&f.point(&[0.0, 0.9]));
                let nb = b.iter().map(|v| v * v).sum::<f64>().sqrt();
                assert!((j - nb).abs() < 1e-3, "{j} vs {nb}");
            } else {
                assert!(j < 1e-4);
            }
        }
    }
}
