//! Error norms of a finite-element displacement against a reference solution.

use rayon::prelude::*;

use crate::analytic::{HalfspaceSource, PlaneStrainDislocation, Side};
use crate::error::Result;
use crate::fault::FaultModel;
use crate::femspace::{shape_eval, FeSpace, ShapeTable};
use crate::mesh::BoundaryTag;
use crate::quadrature::{gauss_legendre_f64, gauss_rule};

/// Reference displacement with gradient, defined off the fault.
pub trait ExactSolution<const D: usize>: Sync {
    /// Value at `x`; `side` picks the branch for points on the dislocation.
    fn value(&self, x: &[f64; D], side: Option<Side>) -> Result<[f64; D]>;
    /// Value and gradient `g[i][j] = ∂u_i/∂x_j` at a point off the dislocation.
    fn value_grad(&self, x: &[f64; D]) -> Result<([f64; D], [[f64; D]; D])>;
}

impl ExactSolution<2> for PlaneStrainDislocation<f64> {
    fn value(&self, x: &[f64; 2], side: Option<Side>) -> Result<[f64; 2]> {
        self.eval(x, side)
    }

    fn value_grad(&self, x: &[f64; 2]) -> Result<([f64; 2], [[f64; 2]; 2])> {
        self.eval_with_grad(x)
    }
}

impl ExactSolution<3> for HalfspaceSource {
    fn value(&self, x: &[f64; 3], side: Option<Side>) -> Result<[f64; 3]> {
        self.eval(x, side)
    }

    fn value_grad(&self, x: &[f64; 3]) -> Result<([f64; 3], [[f64; 3]; 3])> {
        self.eval_with_grad(x)
    }
}

/// Squared-norm accumulators; take square roots with [`NormSet::finish`].
#[derive(Clone, Copy, Debug, Default, PartialEq)]
struct Sums {
    l2_global: f64,
    h1_global: f64,
    l2_local: f64,
    h1_local: f64,
    surf_global: f64,
    surf_local: f64,
}

impl Sums {
    fn add(mut self, o: &Sums) -> Sums {
        self.l2_global += o.l2_global;
        self.h1_global += o.h1_global;
        self.l2_local += o.l2_local;
        self.h1_local += o.h1_local;
        self.surf_global += o.surf_global;
        self.surf_local += o.surf_local;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormSet {
    pub l2_global: f64,
    /// Gradient (H¹-seminorm) error.
    pub h1_global: f64,
    pub l2_local: f64,
    pub h1_local: f64,
    /// L² error on the free surface, if the mesh has one.
    pub l2_surf_global: Option<f64>,
    pub l2_surf_local: Option<f64>,
}

/// Moves points lying (almost) on the fault plane off it, towards the side
/// they already lean to (the `−` side if exactly on it).
fn nudge<const D: usize>(x: &[f64; D], fault: Option<&FaultModel<f64, D>>, h: f64) -> [f64; D] {
    let Some(f) = fault else { return *x };
    let d = f.signed_distance(x);
    if d.abs() >= 1e-11 {
        return *x;
    }
    let target = (1e-10 * h).max(1e-11) * if d < 0.0 { -1.0 } else { 1.0 };
    let n = f.normal();
    std::array::from_fn(|i| x[i] + (target - d) * n[i])
}

fn dist<const D: usize>(x: &[f64; D], fault: Option<&FaultModel<f64, D>>) -> f64 {
    fault.map_or(f64::INFINITY, |f| f.distance_to_patch(x))
}

/// Volume and free-surface error norms.
///
/// Integrates `|u − u_h|²` and `|∇u − ∇u_h|²` with `p + 2` Gauss points per
/// axis. Points at distance at most `exclusion` from the dislocation are left
/// out of the local norms. Surface norms use the facets tagged
/// [`BoundaryTag::FreeSurface`], with the same exclusion for the local variant.
pub fn error_norms<const D: usize>(
    space: &FeSpace<f64, D>,
    u: &[f64],
    exact: &dyn ExactSolution<D>,
    exclusion: f64,
    fault: Option<&FaultModel<f64, D>>,
) -> Result<NormSet> {
    error_norms_with(space, u, exact, exclusion, fault, space.order() + 2)
}

/// [`error_norms`] with `n_q` Gauss points per axis.
pub fn error_norms_with<const D: usize>(
    space: &FeSpace<f64, D>,
    u: &[f64],
    exact: &dyn ExactSolution<D>,
    exclusion: f64,
    fault: Option<&FaultModel<f64, D>>,
    n_q: usize,
) -> Result<NormSet> {
    let mesh = space.mesh();
    let order = space.order();
    let rule = gauss_rule::<f64, D>(n_q)?;
    let hsize = mesh.element_size();
    let table = ShapeTable::new(order, &rule, &hsize)?;
    let h = mesh.mesh_size();

    let per_elem: Vec<Result<Sums>> = (0..mesh.n_elements())
        .into_par_iter()
        .map(|e| {
            let nodes = space.element_nodes(e);
            let mut s = Sums::default();
            for q in 0..rule.len() {
                let x = nudge(&mesh.to_physical(e, &rule.points[q]), fault, h);
                let (ue, ge) = exact.value_grad(&x)?;
                let mut uh = [0.0; D];
                let mut gh = [[0.0; D]; D];
                for (a, &node) in nodes.iter().enumerate() {
                    let v = table.values[q][a];
                    let g = &table.grads[q][a];
                    for i in 0..D {
                        let c = u[D * node + i];
                        uh[i] += c * v;
                        for j in 0..D {
                            gh[i][j] += c * g[j];
                        }
                    }
                }
                let w = table.weights[q];
                let e0: f64 = (0..D).map(|i| (ue[i] - uh[i]).powi(2)).sum();
                let e1: f64 = (0..D).flat_map(|i| (0..D).map(move |j| (i, j))).map(|(i, j)| (ge[i][j] - gh[i][j]).powi(2)).sum();
                s.l2_global += w * e0;
                s.h1_global += w * e1;
                if dist(&x, fault) > exclusion {
                    s.l2_local += w * e0;
                    s.h1_local += w * e1;
                }
            }
            Ok(s)
        })
        .collect();
    let mut total = Sums::default();
    for s in per_elem {
        total = total.add(&s?);
    }

    let surface = mesh.free_surface();
    if let Some(side) = surface {
        let (gx, gw) = gauss_legendre_f64(n_q);
        let m = n_q.pow(D as u32 - 1);
        // tensor rule on the facet, as reference coordinates of the element
        let mut pts = Vec::with_capacity(m);
        let mut wts = Vec::with_capacity(m);
        for k in 0..m {
            let mut rem = k;
            let mut local = [0.0; D];
            let mut w = 1.0;
            for d in 0..D {
                if d == side.axis {
                    local[d] = if side.upper { 1.0 } else { -1.0 };
                    continue;
                }
                let i = rem % n_q;
                rem /= n_q;
                local[d] = gx[i];
                w *= gw[i] * 0.5 * hsize[d];
            }
            pts.push(local);
            wts.push(w);
        }
        let vals: Vec<Vec<f64>> = pts.iter().map(|p| shape_eval(order, p).map(|(v, _)| v)).collect::<Result<_>>()?;
        let facets: Vec<usize> = mesh
            .boundary_facets()
            .iter()
            .filter(|f| f.tag == BoundaryTag::FreeSurface)
            .map(|f| f.element)
            .collect();
        let per_facet: Vec<Result<(f64, f64)>> = facets
            .par_iter()
            .map(|&e| {
                let nodes = space.element_nodes(e);
                let (mut g, mut l) = (0.0, 0.0);
                for q in 0..pts.len() {
                    let x = nudge(&mesh.to_physical(e, &pts[q]), fault, h);
                    let ue = exact.value(&x, Some(Side::Plus))?;
                    let mut uh = [0.0; D];
                    for (a, &node) in nodes.iter().enumerate() {
                        for i in 0..D {
                            uh[i] += u[D * node + i] * vals[q][a];
                        }
                    }
                    let e0: f64 = (0..D).map(|i| (ue[i] - uh[i]).powi(2)).sum();
                    g += wts[q] * e0;
                    if dist(&x, fault) > exclusion {
                        l += wts[q] * e0;
                    }
                }
                Ok((g, l))
            })
            .collect();
        for r in per_facet {
            let (g, l) = r?;
            total.surf_global += g;
            total.surf_local += l;
        }
    }

    Ok(NormSet {
        l2_global: total.l2_global.sqrt(),
        h1_global: total.h1_global.sqrt(),
        l2_local: total.l2_local.sqrt(),
        h1_local: total.h1_local.sqrt(),
        l2_surf_global: surface.map(|_| total.surf_global.sqrt()),
        l2_surf_local: surface.map(|_| total.surf_local.sqrt()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{BoxSide, StructuredMesh};
    use std::sync::Arc;

    struct Smooth;

    impl ExactSolution<2> for Smooth {
        fn value(&self, x: &[f64; 2], _: Option<Side>) -> Result<[f64; 2]> {
            Ok([(x[0] * 2.0).sin() * x[1].cos(), (x[0] * x[1]).exp()])
        }

        fn value_grad(&self, x: &[f64; 2]) -> Result<([f64; 2], [[f64; 2]; 2])> {
            let (a, b) = (x[0], x[1]);
            let e = (a * b).exp();
            Ok((
                [(2.0 * a).sin() * b.cos(), e],
                [[2.0 * (2.0 * a).cos() * b.cos(), -(2.0 * a).sin() * b.sin()], [b * e, a * e]],
            ))
        }
    }

    fn space(n: usize, p: usize, free: Option<BoxSide>) -> FeSpace<f64, 2> {
        FeSpace::new(Arc::new(StructuredMesh::build_box_mesh([-1.0, -1.0], [1.0, 1.0], [n, n], free).unwrap()), p).unwrap()
    }

    #[test]
    fn interpolation_error_rates() {
        for p in 1..=2 {
            let mut prev: Option<(f64, f64)> = None;
            for n in [8, 16, 32] {
                let s = space(n, p, None);
                let u = s.interpolate(|x| Smooth.value(x, None)).unwrap();
                let e = error_norms(&s, &u, &Smooth, 0.1, None).unwrap();
                assert_eq!(e.l2_global, e.l2_local);
                assert!(e.l2_surf_global.is_none());
                if let Some((l2, h1)) = prev {
                    let r0 = (l2 / e.l2_global).log2();
                    let r1 = (h1 / e.h1_global).log2();
                    assert!((r0 - (p as f64 + 1.0)).abs() < 0.1, "p={p} n={n} rate {r0}");
                    assert!((r1 - p as f64).abs() < 0.1, "p={p} n={n} rate {r1}");
                }
                prev = Some((e.l2_global, e.h1_global));
            }
        }
    }

    #[test]
    fn exact_field_has_zero_error() {
        struct Lin;
        impl ExactSolution<2> for Lin {
            fn value(&self, x: &[f64; 2], _: Option<Side>) -> Result<[f64; 2]> {
                Ok([x[0] - 2.0 * x[1], 0.5 * x[0]])
            }
            fn value_grad(&self, x: &[f64; 2]) -> Result<([f64; 2], [[f64; 2]; 2])> {
                Ok((self.value(x, None)?, [[1.0, -2.0], [0.5, 0.0]]))
            }
        }
        let s = space(4, 1, Some(BoxSide::top::<2>()));
        let u = s.interpolate(|x| Lin.value(x, None)).unwrap();
        let e = error_norms(&s, &u, &Lin, 0.1, None).unwrap();
        assert!(e.l2_global < 1e-14 && e.h1_global < 1e-13);
        assert!(e.l2_surf_global.unwrap() < 1e-14);
    }

    #[test]
    fn large_exclusion_empties_local_norms() {
        let s = space(8, 1, Some(BoxSide::top::<2>()));
        let m = PlaneStrainDislocation::tilted(0.1);
        let f = m.fault_model();
        let u = vec![0.0; s.n_dofs()];
        let e = error_norms(&s, &u, &m, 10.0, Some(&f)).unwrap();
        assert_eq!(e.l2_local, 0.0);
        assert_eq!(e.h1_local, 0.0);
        assert_eq!(e.l2_surf_local, Some(0.0));
        assert!(e.l2_global > 0.0 && e.l2_surf_global.unwrap() > 0.0);
    }

    #[test]
    fn excluded_mass_accounts_for_the_difference() {
        let s = space(8, 2, None);
        let m = PlaneStrainDislocation::tilted(0.1);
        let f = m.fault_model();
        let u = vec![0.0; s.n_dofs()];
        let a = error_norms(&s, &u, &m, 0.1, Some(&f)).unwrap();
        let b = error_norms(&s, &u, &m, 0.3, Some(&f)).unwrap();
        let c = error_norms(&s, &u, &m, 0.0, Some(&f)).unwrap();
        assert!(a.l2_global >= a.l2_local && a.l2_local >= b.l2_local);
        assert!((c.l2_local - c.l2_global).abs() < 1e-15);
    }
}
