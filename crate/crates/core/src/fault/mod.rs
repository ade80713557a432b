//! Planar fault patches, their segmentation by the mesh, and the weak slip load.
//!
//! A fault is a planar patch `ϰ` carrying a slip vector `b = u⁺ − u⁻`, where the
//! unit normal `ν` points from the `+` side into the `−` side. The displacement
//! jump is imposed through the load
//!
//! ```text
//! rhs[i] = −∫_ϰ b · ⟨σ(φ_i) ν⟩
//! ```
//!
//! with `⟨·⟩` the one-sided value inside an element and the mean of the two
//! element values on a shared face.

pub mod clip;

use std::fmt;
use std::sync::Arc;

use crate::elasticity::IsotropicElasticity;
use crate::error::{Result, WsmError};
use crate::femspace::{shape_eval, FeSpace};
use crate::mesh::{BoxSide, MeshKey, StructuredMesh};
use crate::quadrature::{gauss_legendre_f64, triangle_rule};
use crate::scalar::{cross, dot, norm, sub, Real};

use clip::{centroid, clip_polygon, clip_segment, polygon_area};

/// Piecewise quadratic tangential slip magnitude supported on `(−½, ½)`.
///
/// Continuously differentiable, with value `b0` at the origin.
pub fn smooth_slip_2d<T: Real>(xi: T, b0: T) -> T {
    let one = T::one();
    let six = T::lit(6.0);
    let sixth = T::lit(1.0 / 6.0);
    let half = T::lit(0.5);
    if xi <= -half || xi >= half {
        T::zero()
    } else if xi < -sixth {
        b0 * (T::lit(1.5) + six * xi + six * xi * xi)
    } else if xi <= sixth {
        b0 * (one - T::lit(12.0) * xi * xi)
    } else {
        b0 * (T::lit(1.5) - six * xi + six * xi * xi)
    }
}

/// Slip as a function of in-plane coordinates `(s, t)`; `t` is always 0 in 2D.
#[derive(Clone)]
pub enum SlipProfile<T, const D: usize> {
    /// `smooth_slip_2d(s, b0)` along the first in-plane axis.
    SmoothQuadratic { b0: T },
    /// Constant `c[0]·axis₀ + c[1]·axis₁` on the whole patch.
    Uniform { components: [T; 2] },
    Custom(Arc<dyn Fn(&[T; 2]) -> [T; D] + Send + Sync>),
}

impl<T: fmt::Debug, const D: usize> fmt::Debug for SlipProfile<T, D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::SmoothQuadratic { b0 } => write!(f, "SmoothQuadratic {{ b0: {b0:?} }}"),
            Self::Uniform { components } => write!(f, "Uniform {{ components: {components:?} }}"),
            Self::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

/// A planar fault patch.
#[derive(Clone, Debug)]
pub struct FaultModel<T, const D: usize> {
    origin: [T; D],
    axes: [[T; D]; 2],
    normal: [T; D],
    bounds: [(T, T); 2],
    slip: SlipProfile<T, D>,
}

impl<T: Real, const D: usize> FaultModel<T, D> {
    /// `axes` holds `D − 1` orthonormal in-plane directions and `bounds` the
    /// parameter range of the patch along each of them. `normal` must be a
    /// unit vector orthogonal to the axes; it points into the `−` side.
    pub fn new(
        origin: [T; D],
        axes: &[[T; D]],
        normal: [T; D],
        bounds: &[(T, T)],
        slip: SlipProfile<T, D>,
    ) -> Result<Self> {
        if !(2..=3).contains(&D) || axes.len() != D - 1 || bounds.len() != D - 1 {
            return Err(WsmError::InvalidFault(format!("expected {} in-plane axes", D.saturating_sub(1))));
        }
        let tol = T::lit(1e-12);
        let n = norm(&normal);
        if (n - T::one()).abs() > tol {
            return Err(WsmError::NonUnitNormal(n.re()));
        }
        for (k, a) in axes.iter().enumerate() {
            if (norm(a) - T::one()).abs() > tol || dot(a, &normal).abs() > tol {
                return Err(WsmError::InvalidFault(format!("axis {k} is not a unit vector orthogonal to the normal")));
            }
            for b in &axes[..k] {
                if dot(a, b).abs() > tol {
                    return Err(WsmError::InvalidFault("in-plane axes are not orthogonal".into()));
                }
            }
        }
        for &(lo, hi) in bounds {
            if !(lo < hi) {
                return Err(WsmError::InvalidFault("empty patch".into()));
            }
        }
        let mut ax = [[T::zero(); D]; 2];
        let mut bd = [(T::zero(), T::zero()); 2];
        ax[..D - 1].copy_from_slice(axes);
        bd[..D - 1].copy_from_slice(bounds);
        Ok(Self { origin, axes: ax, normal, bounds: bd, slip })
    }

    pub fn origin(&self) -> &[T; D] {
        &self.origin
    }

    pub fn axes(&self) -> &[[T; D]] {
        &self.axes[..D - 1]
    }

    pub fn normal(&self) -> &[T; D] {
        &self.normal
    }

    pub fn bounds(&self) -> &[(T, T)] {
        &self.bounds[..D - 1]
    }

    pub fn slip_profile(&self) -> &SlipProfile<T, D> {
        &self.slip
    }

    /// Same geometry with slip multiplied by `alpha`.
    pub fn with_scaled_slip(&self, alpha: T) -> Self {
        let slip = match &self.slip {
            SlipProfile::SmoothQuadratic { b0 } => SlipProfile::SmoothQuadratic { b0: *b0 * alpha },
            SlipProfile::Uniform { components } => {
                SlipProfile::Uniform { components: components.map(|c| c * alpha) }
            }
            SlipProfile::Custom(f) => {
                let f = f.clone();
                SlipProfile::Custom(Arc::new(move |s| f(s).map(|v| v * alpha)))
            }
        };
        Self { slip, ..self.clone() }
    }

    /// In-plane coordinates of the projection of `x` onto the fault plane.
    pub fn plane_coords(&self, x: &[T; D]) -> [T; 2] {
        let r = sub(x, &self.origin);
        let mut s = [T::zero(); 2];
        for k in 0..D - 1 {
            s[k] = dot(&r, &self.axes[k]);
        }
        s
    }

    /// `(x − origin)·ν`; positive on the `−` side.
    pub fn signed_distance(&self, x: &[T; D]) -> T {
        dot(&sub(x, &self.origin), &self.normal)
    }

    /// Point with in-plane coordinates `s` on the fault plane.
    pub fn point(&self, s: &[T; 2]) -> [T; D] {
        std::array::from_fn(|i| {
            let mut v = self.origin[i];
            for k in 0..D - 1 {
                v += s[k] * self.axes[k][i];
            }
            v
        })
    }

    pub fn in_patch(&self, s: &[T; 2]) -> bool {
        (0..D - 1).all(|k| s[k] >= self.bounds[k].0 && s[k] <= self.bounds[k].1)
    }

    /// Euclidean distance from `x` to the patch.
    pub fn distance_to_patch(&self, x: &[T; D]) -> T {
        let s = self.plane_coords(x);
        let mut d2 = self.signed_distance(x).powi(2);
        for k in 0..D - 1 {
            let c = s[k].max(self.bounds[k].0).min(self.bounds[k].1);
            d2 += (s[k] - c).powi(2);
        }
        d2.sqrt()
    }

    /// Length (2D) or area (3D) of the patch.
    pub fn patch_measure(&self) -> T {
        (0..D - 1).map(|k| self.bounds[k].1 - self.bounds[k].0).fold(T::one(), |a, b| a * b)
    }

    /// Patch corners: two endpoints in 2D, four corners (cyclic) in 3D.
    pub fn patch_vertices(&self) -> Vec<[T; D]> {
        let [(a0, a1), (b0, b1)] = self.bounds;
        if D == 2 {
            vec![self.point(&[a0, T::zero()]), self.point(&[a1, T::zero()])]
        } else {
            vec![self.point(&[a0, b0]), self.point(&[a1, b0]), self.point(&[a1, b1]), self.point(&[a0, b1])]
        }
    }

    /// Slip vector at in-plane coordinates `s`; zero off the patch.
    pub fn slip_at_plane(&self, s: &[T; 2]) -> [T; D] {
        if !self.in_patch(s) {
            return [T::zero(); D];
        }
        match &self.slip {
            SlipProfile::SmoothQuadratic { b0 } => {
                let m = smooth_slip_2d(s[0], *b0);
                self.axes[0].map(|a| a * m)
            }
            SlipProfile::Uniform { components } => {
                std::array::from_fn(|i| components[0] * self.axes[0][i] + components[1] * self.axes[1][i])
            }
            SlipProfile::Custom(f) => f(s),
        }
    }

    /// Slip vector at the projection of `x` onto the fault plane.
    pub fn slip_at(&self, x: &[T; D]) -> [T; D] {
        self.slip_at_plane(&self.plane_coords(x))
    }

    /// In-plane coordinates along the first axis where the slip is not smooth.
    fn breakpoints(&self) -> Vec<T> {
        match self.slip {
            SlipProfile::SmoothQuadratic { .. } => vec![T::lit(-1.0 / 6.0), T::lit(1.0 / 6.0)],
            _ => Vec::new(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SegmentKind {
    /// Inside a single element.
    Interior,
    /// On a face shared by two elements.
    Face,
}

/// Part of the patch inside one element, or on one shared face.
#[derive(Clone, Debug)]
pub struct FaultSegment<T, const D: usize> {
    pub kind: SegmentKind,
    /// Element on the `+` side (the only element for interior segments).
    pub plus: usize,
    /// Element on the `−` side.
    pub minus: usize,
    /// Endpoints (2D) or polygon vertices (3D).
    pub vertices: Vec<[T; D]>,
    pub points: Vec<[T; D]>,
    pub weights: Vec<T>,
    pub measure: T,
    /// Harmonic mean of the adjacent element diameters, `1 / (1/d⁺ + 1/d⁻)`.
    pub h_s: T,
    pub mesh: MeshKey<D>,
}

fn mesh_key<T: Real, const D: usize>(mesh: &StructuredMesh<T, D>) -> MeshKey<D> {
    mesh.key()
}

/// Range of element indices along each axis whose closed boxes meet `[a, b]`.
fn element_range<T: Real, const D: usize>(
    mesh: &StructuredMesh<T, D>,
    a: &[T; D],
    b: &[T; D],
) -> Option<[(usize, usize); D]> {
    let h = mesh.element_size();
    let mut r = [(0, 0); D];
    for d in 0..D {
        let n = mesh.counts()[d] as f64;
        let t0 = ((a[d] - mesh.lo()[d]) / h[d]).re() - 1e-9;
        let t1 = ((b[d] - mesh.lo()[d]) / h[d]).re() + 1e-9;
        if t1 < 0.0 || t0 > n {
            return None;
        }
        let i0 = t0.floor().max(0.0) as usize;
        let i1 = (t1.floor().max(0.0) as usize).min(n as usize - 1);
        r[d] = (i0, i1);
    }
    Some(r)
}

fn for_each_in_range<const D: usize>(r: &[(usize, usize); D], mut f: impl FnMut([usize; D])) {
    let mut idx: [usize; D] = std::array::from_fn(|d| r[d].0);
    loop {
        f(idx);
        let mut d = 0;
        loop {
            if d == D {
                return;
            }
            if idx[d] < r[d].1 {
                idx[d] += 1;
                break;
            }
            idx[d] = r[d].0;
            d += 1;
        }
    }
}

/// Side of element `e` on which all `vertices` lie, within `tol`.
fn common_face<T: Real, const D: usize>(
    mesh: &StructuredMesh<T, D>,
    e: usize,
    vertices: &[[T; D]],
    tol: T,
) -> Option<BoxSide> {
    let (lo, hi) = mesh.element_bounds(e);
    for axis in 0..D {
        for (upper, c) in [(false, lo[axis]), (true, hi[axis])] {
            if vertices.iter().all(|v| (v[axis] - c).abs() <= tol) {
                return Some(BoxSide { axis, upper });
            }
        }
    }
    None
}

/// Splits the patch into per-element segments with quadrature.
///
/// `quad_order` is the number of Gauss points per segment direction: a
/// `quad_order`-point Gauss rule per smooth piece of a 2D segment, and the
/// collapsed triangle rule of degree `2·quad_order − 1` on each triangle of a
/// centroid fan in 3D. Pieces lying on a shared face (within `1e-12·h`) are
/// returned once, as [`SegmentKind::Face`], whichever of the two elements
/// the clipping assigned them to.
pub fn segment_fault<T: Real, const D: usize>(
    mesh: &StructuredMesh<T, D>,
    fault: &FaultModel<T, D>,
    quad_order: usize,
) -> Result<Vec<FaultSegment<T, D>>> {
    if !(1..=6).contains(&quad_order) {
        return Err(WsmError::UnsupportedQuadrature(quad_order));
    }
    let hmin = mesh.element_size().iter().fold(T::infinity(), |m, &v| m.min(v));
    let tol = T::lit(1e-12) * hmin;
    let verts = fault.patch_vertices();
    let bb_lo: [T; D] = std::array::from_fn(|d| verts.iter().fold(T::infinity(), |m, v| m.min(v[d])));
    let bb_hi: [T; D] = std::array::from_fn(|d| verts.iter().fold(T::neg_infinity(), |m, v| m.max(v[d])));
    let Some(range) = element_range(mesh, &bb_lo, &bb_hi) else {
        return Ok(Vec::new());
    };
    let key = mesh_key(mesh);
    let diam = mesh.element_diameter();
    let h_s = T::one() / (diam.recip() + diam.recip());
    let min_measure = T::lit(1e-9) * hmin.powi(D as i32 - 1);

    let mut out = Vec::new();
    let mut faces_seen = std::collections::HashSet::new();
    for_each_in_range(&range, |idx| {
        let e = mesh.element_at(&idx);
        let (lo, hi) = mesh.element_bounds(e);
        let piece: Vec<[T; D]> = if D == 2 {
            match clip_segment(&verts[0], &verts[1], &lo, &hi, T::zero()) {
                Some((t0, t1)) => [t0, t1]
                    .iter()
                    .map(|&t| std::array::from_fn(|i| verts[0][i] + t * (verts[1][i] - verts[0][i])))
                    .collect(),
                None => return,
            }
        } else {
            let poly: Vec<[T; 3]> = verts.iter().map(to3).collect();
            clip_polygon(&poly, &to3(&lo), &to3(&hi), T::zero()).iter().map(from3).collect()
        };
        let measure = if D == 2 {
            norm(&sub(&piece[0], &piece[1]))
        } else {
            polygon_area(&piece.iter().map(to3).collect::<Vec<_>>())
        };
        if piece.is_empty() || measure <= min_measure {
            return;
        }
        let (kind, plus, minus) = match common_face(mesh, e, &piece, tol) {
            Some(side) => match mesh.neighbor(e, side) {
                Some(nb) => {
                    if !faces_seen.insert((e.min(nb), e.max(nb))) {
                        return;
                    }
                    let toward_nb = if side.upper { fault.normal[side.axis] } else { -fault.normal[side.axis] };
                    if toward_nb > T::zero() {
                        (SegmentKind::Face, e, nb)
                    } else {
                        (SegmentKind::Face, nb, e)
                    }
                }
                None => (SegmentKind::Interior, e, e),
            },
            None => (SegmentKind::Interior, e, e),
        };
        let (points, weights) = if D == 2 {
            segment_quadrature(fault, &piece[0], &piece[1], quad_order)
        } else {
            polygon_quadrature(&piece, quad_order)
        };
        out.push(FaultSegment { kind, plus, minus, vertices: piece, points, weights, measure, h_s, mesh: key });
    });
    Ok(out)
}

fn to3<T: Real, const D: usize>(x: &[T; D]) -> [T; 3] {
    std::array::from_fn(|i| if i < D { x[i] } else { T::zero() })
}

fn from3<T: Real, const D: usize>(x: &[T; 3]) -> [T; D] {
    std::array::from_fn(|i| x[i])
}

/// Composite Gauss rule on `[a, b]`, split where the slip has kinks.
fn segment_quadrature<T: Real, const D: usize>(
    fault: &FaultModel<T, D>,
    a: &[T; D],
    b: &[T; D],
    n: usize,
) -> (Vec<[T; D]>, Vec<T>) {
    let len = norm(&sub(b, a));
    let sa = fault.plane_coords(a)[0];
    let sb = fault.plane_coords(b)[0];
    let mut cuts = vec![T::zero()];
    for bp in fault.breakpoints() {
        let t = (bp - sa) / (sb - sa);
        if t > T::zero() && t < T::one() {
            cuts.push(t);
        }
    }
    cuts.push(T::one());
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let (gx, gw) = gauss_legendre_f64(n);
    let mut points = Vec::new();
    let mut weights = Vec::new();
    for w in cuts.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        let half = T::lit(0.5) * (t1 - t0);
        for (x, wt) in gx.iter().zip(&gw) {
            let t = t0 + half * (T::lit(*x) + T::one());
            points.push(std::array::from_fn(|i| a[i] + t * (b[i] - a[i])));
            weights.push(T::lit(*wt) * half * len);
        }
    }
    (points, weights)
}

/// Triangle rule on each triangle of a centroid fan.
fn polygon_quadrature<T: Real, const D: usize>(poly: &[[T; D]], n: usize) -> (Vec<[T; D]>, Vec<T>) {
    let p3: Vec<[T; 3]> = poly.iter().map(to3).collect();
    let c = centroid(&p3);
    let rule = triangle_rule::<T>(n);
    let mut points = Vec::new();
    let mut weights = Vec::new();
    for i in 0..p3.len() {
        let u = sub(&p3[i], &c);
        let v = sub(&p3[(i + 1) % p3.len()], &c);
        let jac = norm(&cross(&u, &v));
        if jac == T::zero() {
            continue;
        }
        for (st, w) in rule.iter() {
            let x: [T; 3] = std::array::from_fn(|k| c[k] + st[0] * u[k] + st[1] * v[k]);
            points.push(from3(&x));
            weights.push(w * jac);
        }
    }
    (points, weights)
}

/// Reference coordinates of `x` in element `e` (not clamped).
fn local_coords<T: Real, const D: usize>(mesh: &StructuredMesh<T, D>, e: usize, x: &[T; D]) -> [T; D] {
    let (lo, hi) = mesh.element_bounds(e);
    std::array::from_fn(|d| T::lit(2.0) * (x[d] - lo[d]) / (hi[d] - lo[d]) - T::one())
}

/// `b · σ(φ_a e_c) ν` for every shape function `a` of element `e` and component `c`,
/// accumulated into `rhs` with factor `scale`.
#[allow(clippy::too_many_arguments)]
fn add_traction_load<T: Real, const D: usize>(
    space: &FeSpace<T, D>,
    mat: &IsotropicElasticity<T>,
    e: usize,
    x: &[T; D],
    b: &[T; D],
    nu: &[T; D],
    scale: T,
    rhs: &mut [T],
) -> Result<()> {
    let mesh = space.mesh();
    let local = local_coords(mesh, e, x);
    let (_, grads) = shape_eval(space.order(), &local)?;
    let h = mesh.element_size();
    let bn = dot(b, nu);
    for (a, &node) in space.element_nodes(e).iter().enumerate() {
        let g: [T; D] = std::array::from_fn(|d| grads[a][d] * T::lit(2.0) / h[d]);
        let gn = dot(&g, nu);
        let bg = dot(b, &g);
        for c in 0..D {
            let v = mat.lambda * g[c] * bn + mat.mu * (b[c] * gn + bg * nu[c]);
            rhs[D * node + c] += scale * v;
        }
    }
    Ok(())
}

/// Load vector `rhs[i] = −Σ_s Σ_q w_q b(x_q) · ⟨σ(φ_i) ν⟩(x_q)`.
pub fn wsm_rhs<T: Real, const D: usize>(
    space: &FeSpace<T, D>,
    mat: &IsotropicElasticity<T>,
    fault: &FaultModel<T, D>,
    segments: &[FaultSegment<T, D>],
) -> Result<Vec<T>> {
    let key = mesh_key(space.mesh());
    let mut rhs = vec![T::zero(); space.n_dofs()];
    let half = T::lit(0.5);
    for s in segments {
        if s.mesh != key {
            return Err(WsmError::StaleSegments);
        }
        for (x, &w) in s.points.iter().zip(&s.weights) {
            let b = fault.slip_at(x);
            if b.iter().all(|v| *v == T::zero()) {
                continue;
            }
            match s.kind {
                SegmentKind::Interior => add_traction_load(space, mat, s.plus, x, &b, &fault.normal, -w, &mut rhs)?,
                SegmentKind::Face => {
                    add_traction_load(space, mat, s.plus, x, &b, &fault.normal, -w * half, &mut rhs)?;
                    add_traction_load(space, mat, s.minus, x, &b, &fault.normal, -w * half, &mut rhs)?;
                }
            }
        }
    }
    Ok(rhs)
}

/// Mesh-dependent slip norm `(Σ_s h_s⁻¹ ‖b‖²_{L²(s)})^{1/2}`.
pub fn fault_quality_norm<T: Real, const D: usize>(segments: &[FaultSegment<T, D>], fault: &FaultModel<T, D>) -> T {
    segments
        .iter()
        .map(|s| {
            let int: T = s.points.iter().zip(&s.weights).map(|(x, &w)| {
                let b = fault.slip_at(x);
                w * dot(&b, &b)
            }).sum();
            int / s.h_s
        })
        .sum::<T>()
        .sqrt()
}
