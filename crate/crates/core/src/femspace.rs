//! Continuous tensor-product Lagrange spaces of order 1 and 2 on structured meshes.
//!
//! Scalar nodes live on the refined grid with `p·counts[d] + 1` points per
//! axis, numbered lexicographically (x fastest). Vector degrees of freedom are
//! node-major, component-minor: dof `D·node + component`.

use std::sync::Arc;

use crate::error::{Result, WsmError};
use crate::mesh::{grid_coord, ravel, unravel, StructuredMesh};
use crate::quadrature::QuadratureRule;
use crate::scalar::Real;

#[inline]
fn basis_1d<T: Real>(order: usize, x: T) -> ([T; 3], [T; 3]) {
    let half = T::lit(0.5);
    let one = T::one();
    match order {
        1 => ([half * (one - x), half * (one + x), T::zero()], [-half, half, T::zero()]),
        _ => (
            [half * x * (x - one), one - x * x, half * x * (x + one)],
            [x - half, T::lit(-2.0) * x, x + half],
        ),
    }
}

/// Values and reference-coordinate gradients of all `(p+1)^D` shape functions at `local`.
pub fn shape_eval<T: Real, const D: usize>(
    order: usize,
    local: &[T; D],
) -> Result<(Vec<T>, Vec<[T; D]>)> {
    if !(1..=2).contains(&order) {
        return Err(WsmError::UnsupportedOrder(order));
    }
    let n1 = order + 1;
    let tab: [([T; 3], [T; 3]); D] = std::array::from_fn(|d| basis_1d(order, local[d]));
    let total = n1.pow(D as u32);
    let mut values = Vec::with_capacity(total);
    let mut grads = Vec::with_capacity(total);
    let dims = [n1; D];
    for k in 0..total {
        let idx = unravel(k, &dims);
        let mut v = T::one();
        for d in 0..D {
            v *= tab[d].0[idx[d]];
        }
        values.push(v);
        grads.push(std::array::from_fn(|g| {
            let mut p = T::one();
            for d in 0..D {
                p *= if d == g { tab[d].1[idx[d]] } else { tab[d].0[idx[d]] };
            }
            p
        }));
    }
    Ok((values, grads))
}

/// Shape functions tabulated at the points of a quadrature rule, with gradients
/// already mapped to physical coordinates for a given element size.
#[derive(Clone, Debug)]
pub struct ShapeTable<T, const D: usize> {
    pub n_shape: usize,
    pub values: Vec<Vec<T>>,
    pub grads: Vec<Vec<[T; D]>>,
    pub weights: Vec<T>,
    pub points: Vec<[T; D]>,
}

impl<T: Real, const D: usize> ShapeTable<T, D> {
    /// `weights` include the element Jacobian determinant.
    pub fn new(order: usize, rule: &QuadratureRule<T, D>, element_size: &[T; D]) -> Result<Self> {
        let jac: [T; D] = std::array::from_fn(|d| T::lit(2.0) / element_size[d]);
        let det: T = element_size.iter().map(|&h| h * T::lit(0.5)).fold(T::one(), |a, b| a * b);
        let mut values = Vec::with_capacity(rule.len());
        let mut grads = Vec::with_capacity(rule.len());
        for p in &rule.points {
            let (v, g) = shape_eval(order, p)?;
            values.push(v);
            grads.push(g.into_iter().map(|g| std::array::from_fn(|d| g[d] * jac[d])).collect());
        }
        Ok(Self {
            n_shape: (order + 1).pow(D as u32),
            values,
            grads,
            weights: rule.weights.iter().map(|&w| w * det).collect(),
            points: rule.points.clone(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct FeSpace<T, const D: usize> {
    mesh: Arc<StructuredMesh<T, D>>,
    order: usize,
    node_counts: [usize; D],
    dof_coords: Vec<[T; D]>,
    elem_nodes: Vec<usize>,
    dirichlet_dofs: Vec<usize>,
}

impl<T: Real, const D: usize> FeSpace<T, D> {
    pub fn new(mesh: Arc<StructuredMesh<T, D>>, order: usize) -> Result<Self> {
        if !(1..=2).contains(&order) {
            return Err(WsmError::UnsupportedOrder(order));
        }
        let counts = *mesh.counts();
        let node_counts: [usize; D] = std::array::from_fn(|d| order * counts[d] + 1);
        let n_nodes: usize = node_counts.iter().product();
        let (lo, hi) = (*mesh.lo(), *mesh.hi());
        let dof_coords: Vec<[T; D]> = (0..n_nodes)
            .map(|k| {
                let g = unravel(k, &node_counts);
                std::array::from_fn(|d| grid_coord(lo[d], hi[d], g[d], order * counts[d]))
            })
            .collect();

        let n1 = order + 1;
        let per_elem = n1.pow(D as u32);
        let local_dims = [n1; D];
        let mut elem_nodes = Vec::with_capacity(mesh.n_elements() * per_elem);
        for e in 0..mesh.n_elements() {
            let eidx = mesh.element_index(e);
            for a in 0..per_elem {
                let l = unravel(a, &local_dims);
                let g: [usize; D] = std::array::from_fn(|d| order * eidx[d] + l[d]);
                elem_nodes.push(ravel(&g, &node_counts));
            }
        }

        let free = mesh.free_surface();
        let mut dirichlet_dofs = Vec::new();
        for k in 0..n_nodes {
            let g = unravel(k, &node_counts);
            let constrained = (0..D).any(|axis| {
                [(false, g[axis] == 0), (true, g[axis] + 1 == node_counts[axis])]
                    .into_iter()
                    .any(|(upper, on)| {
                        on && free != Some(crate::mesh::BoxSide { axis, upper })
                    })
            });
            if constrained {
                dirichlet_dofs.extend((0..D).map(|c| D * k + c));
            }
        }

        Ok(Self { mesh, order, node_counts, dof_coords, elem_nodes, dirichlet_dofs })
    }

    pub fn mesh(&self) -> &Arc<StructuredMesh<T, D>> {
        &self.mesh
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn node_counts(&self) -> &[usize; D] {
        &self.node_counts
    }

    pub fn n_nodes(&self) -> usize {
        self.dof_coords.len()
    }

    pub fn n_dofs(&self) -> usize {
        D * self.n_nodes()
    }

    pub fn shapes_per_element(&self) -> usize {
        (self.order + 1).pow(D as u32)
    }

    /// Coordinates of every scalar node.
    pub fn dof_coords(&self) -> &[[T; D]] {
        &self.dof_coords
    }

    /// Scalar node indices of element `e`, in local shape-function order.
    pub fn element_nodes(&self, e: usize) -> &[usize] {
        let n = self.shapes_per_element();
        &self.elem_nodes[e * n..(e + 1) * n]
    }

    /// Sorted vector dofs whose node lies on a Dirichlet facet.
    pub fn dirichlet_dofs(&self) -> &[usize] {
        &self.dirichlet_dofs
    }

    /// Nodal interpolant of `f`.
    pub fn interpolate<F>(&self, mut f: F) -> Result<Vec<T>>
    where
        F: FnMut(&[T; D]) -> Result<[T; D]>,
    {
        let mut u = vec![T::zero(); self.n_dofs()];
        for (k, x) in self.dof_coords.iter().enumerate() {
            let v = f(x)?;
            u[D * k..D * k + D].copy_from_slice(&v);
        }
        Ok(u)
    }

    /// Interpolant of `f` restricted to the Dirichlet dofs (other entries zero).
    pub fn interpolate_dirichlet<F>(&self, mut f: F) -> Result<Vec<T>>
    where
        F: FnMut(&[T; D]) -> Result<[T; D]>,
    {
        let mut g = vec![T::zero(); self.n_dofs()];
        let mut last = usize::MAX;
        for &dof in &self.dirichlet_dofs {
            let node = dof / D;
            if node != last {
                let v = f(&self.dof_coords[node])?;
                g[D * node..D * node + D].copy_from_slice(&v);
                last = node;
            }
        }
        Ok(g)
    }

    /// Value and physical gradient (`grad[i][j] = ∂u_i/∂x_j`) of the FE function
    /// `u` at reference point `local` of element `e`.
    pub fn eval(&self, u: &[T], e: usize, local: &[T; D]) -> Result<([T; D], [[T; D]; D])> {
        let (vals, grads) = shape_eval(self.order, local)?;
        let h = self.mesh.element_size();
        let jac: [T; D] = std::array::from_fn(|d| T::lit(2.0) / h[d]);
        let mut value = [T::zero(); D];
        let mut grad = [[T::zero(); D]; D];
        for (a, &node) in self.element_nodes(e).iter().enumerate() {
            for i in 0..D {
                let c = u[D * node + i];
                value[i] += c * vals[a];
                for j in 0..D {
                    grad[i][j] += c * grads[a][j] * jac[j];
                }
            }
        }
        Ok((value, grad))
    }

    /// Value and gradient at a physical point.
    pub fn eval_at(&self, u: &[T], x: &[T; D]) -> Result<([T; D], [[T; D]; D])> {
        let (e, local) = self.mesh.element_containing(x)?;
        self.eval(u, e, &local)
    }
}
