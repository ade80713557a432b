//! Stiffness assembly, Dirichlet elimination and preconditioned conjugate gradients.
//!
//! The stiffness matrix depends only on the mesh, the polynomial order and the
//! material. Fault data and boundary values enter through the right-hand side
//! only, so an [`FeSystem`] (matrix, constrained matrix, preconditioner) is
//! built once and reused for any number of faults.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::elasticity::IsotropicElasticity;
use crate::error::{Result, WsmError};
use crate::femspace::{FeSpace, ShapeTable};
use crate::quadrature::gauss_rule;
use crate::scalar::Real;

/// Square sparse matrix in compressed-row form with sorted column indices.
///
/// Both triangles are stored; the pattern is structurally symmetric.
#[derive(Clone, Debug, PartialEq)]
pub struct CsrMatrix<T> {
    n: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<T>,
}

impl<T: Real> CsrMatrix<T> {
    /// Builds a matrix from sorted, duplicate-free rows of `(column, value)`.
    pub fn from_rows(rows: Vec<Vec<(usize, T)>>) -> Self {
        let n = rows.len();
        let mut row_ptr = Vec::with_capacity(n + 1);
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        row_ptr.push(0);
        for row in rows {
            for (c, v) in row {
                col_idx.push(c);
                values.push(v);
            }
            row_ptr.push(col_idx.len());
        }
        Self { n, row_ptr, col_idx, values }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_rows((0..n).map(|i| vec![(i, T::one())]).collect())
    }

    pub fn diagonal(d: &[T]) -> Self {
        Self::from_rows(d.iter().enumerate().map(|(i, &v)| vec![(i, v)]).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row(&self, i: usize) -> (&[usize], &[T]) {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        (&self.col_idx[r.clone()], &self.values[r])
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        let (cols, vals) = self.row(i);
        match cols.binary_search(&j) {
            Ok(k) => vals[k],
            Err(_) => T::zero(),
        }
    }

    pub fn diag(&self) -> Vec<T> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    /// `y = A x`. Rows are processed in parallel; each row sums in column order,
    /// so the result does not depend on the thread count.
    pub fn matvec(&self, x: &[T], y: &mut [T]) {
        let kernel = |(i, yi): (usize, &mut T)| {
            let mut s = T::zero();
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                s += self.values[k] * x[self.col_idx[k]];
            }
            *yi = s;
        };
        if self.n >= 4096 {
            y.par_iter_mut().enumerate().with_min_len(1024).for_each(kernel);
        } else {
            y.iter_mut().enumerate().for_each(kernel);
        }
    }

    pub fn mul(&self, x: &[T]) -> Vec<T> {
        let mut y = vec![T::zero(); self.n];
        self.matvec(x, &mut y);
        y
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }

    /// Dense copy, for tests and small direct solves.
    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let mut a = vec![vec![T::zero(); self.n]; self.n];
        for (i, row) in a.iter_mut().enumerate() {
            let (cols, vals) = self.row(i);
            for (&c, &v) in cols.iter().zip(vals) {
                row[c] = v;
            }
        }
        a
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }
}

/// Node adjacency of the FE space, expanded to vector dofs.
fn sparsity<T: Real, const D: usize>(space: &FeSpace<T, D>) -> (Vec<usize>, Vec<usize>, Vec<Vec<usize>>) {
    let n_nodes = space.n_nodes();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n_nodes];
    for e in 0..space.mesh().n_elements() {
        let nodes = space.element_nodes(e);
        for &a in nodes {
            adj[a].extend_from_slice(nodes);
        }
    }
    for list in adj.iter_mut() {
        list.sort_unstable();
        list.dedup();
    }
    let mut row_ptr = Vec::with_capacity(D * n_nodes + 1);
    let mut col_idx = Vec::new();
    row_ptr.push(0);
    for list in &adj {
        for _ in 0..D {
            for &b in list {
                col_idx.extend((0..D).map(|j| D * b + j));
            }
            row_ptr.push(col_idx.len());
        }
    }
    (row_ptr, col_idx, adj)
}

/// Element stiffness of a box element, `K_e[(a,i),(b,j)] = ∫ σ(φ_b e_j) : ∇(φ_a e_i)`.
///
/// All elements of a structured mesh share it. Uses `p + 1` Gauss points per
/// axis, which is exact for the tensor-product integrand on affine boxes.
pub fn element_stiffness<T: Real, const D: usize>(
    space: &FeSpace<T, D>,
    mat: &IsotropicElasticity<T>,
) -> Result<Vec<Vec<T>>> {
    let rule = gauss_rule::<T, D>(space.order() + 1)?;
    let table = ShapeTable::new(space.order(), &rule, &space.mesh().element_size())?;
    let ns = table.n_shape;
    let mut ke = vec![vec![T::zero(); D * ns]; D * ns];
    for q in 0..rule.len() {
        let w = table.weights[q];
        let g = &table.grads[q];
        for a in 0..ns {
            for b in 0..ns {
                let gg: T = (0..D).map(|k| g[a][k] * g[b][k]).sum();
                for i in 0..D {
                    for j in 0..D {
                        let mut v = mat.lambda * g[a][i] * g[b][j] + mat.mu * g[a][j] * g[b][i];
                        if i == j {
                            v += mat.mu * gg;
                        }
                        ke[D * a + i][D * b + j] += w * v;
                    }
                }
            }
        }
    }
    Ok(ke)
}

/// Global stiffness `K[i][j] = a(φ_j, φ_i) = ∫_Ω σ(φ_j) : ∇φ_i`, assembled in
/// element order.
pub fn assemble_stiffness<T: Real, const D: usize>(
    space: &FeSpace<T, D>,
    mat: &IsotropicElasticity<T>,
) -> Result<CsrMatrix<T>> {
    let ke = element_stiffness(space, mat)?;
    let (row_ptr, col_idx, adj) = sparsity(space);
    let mut values = vec![T::zero(); col_idx.len()];
    let ns = space.shapes_per_element();
    let mut block_pos = vec![0usize; ns * ns];
    for e in 0..space.mesh().n_elements() {
        let nodes = space.element_nodes(e);
        for (a, &na) in nodes.iter().enumerate() {
            for (b, &nb) in nodes.iter().enumerate() {
                let k = adj[na].binary_search(&nb).expect("element pair in pattern");
                block_pos[a * ns + b] = D * k;
            }
        }
        for (a, &na) in nodes.iter().enumerate() {
            for i in 0..D {
                let row = D * na + i;
                let start = row_ptr[row];
                for b in 0..ns {
                    let pos = start + block_pos[a * ns + b];
                    for j in 0..D {
                        values[pos + j] += ke[D * a + i][D * b + j];
                    }
                }
            }
        }
    }
    Ok(CsrMatrix { n: space.n_dofs(), row_ptr, col_idx, values })
}

fn constrained_mask(n: usize, dofs: &[usize]) -> Result<Vec<bool>> {
    let mut mask = vec![false; n];
    for &d in dofs {
        if d >= n {
            return Err(WsmError::DofOutOfRange { index: d, size: n });
        }
        mask[d] = true;
    }
    Ok(mask)
}

/// `rhs − K[:, c]·g[c]` on free rows and `g[c]` on constrained rows.
fn lift_rhs<T: Real>(k: &CsrMatrix<T>, rhs: &[T], g: &[T], mask: &[bool]) -> Vec<T> {
    (0..k.n)
        .map(|i| {
            if mask[i] {
                return g[i];
            }
            let (cols, vals) = k.row(i);
            let mut s = rhs[i];
            for (&c, &v) in cols.iter().zip(vals) {
                if mask[c] {
                    s -= v * g[c];
                }
            }
            s
        })
        .collect()
}

/// Symmetric elimination of the Dirichlet dofs `dofs` with values `g`.
///
/// Constrained rows and columns are zeroed with a unit diagonal; the
/// right-hand side of free rows is corrected by `−K[:, c]·g[c]` and
/// constrained entries are set to `g[c]`.
pub fn apply_dirichlet<T: Real>(
    k: &CsrMatrix<T>,
    rhs: &[T],
    g: &[T],
    dofs: &[usize],
) -> Result<(CsrMatrix<T>, Vec<T>)> {
    let mask = constrained_mask(k.n, dofs)?;
    let new_rhs = lift_rhs(k, rhs, g, &mask);
    Ok((constrain_matrix(k, &mask), new_rhs))
}

fn constrain_matrix<T: Real>(k: &CsrMatrix<T>, mask: &[bool]) -> CsrMatrix<T> {
    let mut out = k.clone();
    for i in 0..k.n {
        for p in k.row_ptr[i]..k.row_ptr[i + 1] {
            let c = k.col_idx[p];
            if mask[i] || mask[c] {
                out.values[p] = if i == c { T::one() } else { T::zero() };
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PreconditionerKind {
    #[default]
    Jacobi,
    SymmetricGaussSeidel,
}

/// Reusable preconditioner state.
#[derive(Clone, Debug, PartialEq)]
pub struct Preconditioner<T> {
    pub kind: PreconditionerKind,
    pub inv_diag: Vec<T>,
}

impl<T: Real> Preconditioner<T> {
    /// `z = M⁻¹ r`.
    pub fn apply(&self, k: &CsrMatrix<T>, r: &[T], z: &mut [T]) {
        match self.kind {
            PreconditionerKind::Jacobi => {
                for i in 0..r.len() {
                    z[i] = r[i] * self.inv_diag[i];
                }
            }
            PreconditionerKind::SymmetricGaussSeidel => {
                // M = (D + L) D⁻¹ (D + U)
                for i in 0..k.n {
                    let (cols, vals) = k.row(i);
                    let mut s = r[i];
                    for (&c, &v) in cols.iter().zip(vals) {
                        if c >= i {
                            break;
                        }
                        s -= v * z[c];
                    }
                    z[i] = s * self.inv_diag[i];
                }
                for i in (0..k.n).rev() {
                    let (cols, vals) = k.row(i);
                    let mut s = T::zero();
                    for (&c, &v) in cols.iter().zip(vals).rev() {
                        if c <= i {
                            break;
                        }
                        s += v * z[c];
                    }
                    z[i] -= s * self.inv_diag[i];
                }
            }
        }
    }
}

pub fn build_preconditioner<T: Real>(
    k: &CsrMatrix<T>,
    kind: PreconditionerKind,
) -> Result<Preconditioner<T>> {
    let inv_diag = k
        .diag()
        .into_iter()
        .enumerate()
        .map(|(i, d)| if d > T::zero() { Ok(d.recip()) } else { Err(WsmError::ZeroDiagonal(i)) })
        .collect::<Result<Vec<T>>>()?;
    Ok(Preconditioner { kind, inv_diag })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveReport {
    pub iterations: usize,
    pub final_relative_residual: f64,
    pub solve_time: Duration,
}

fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |s, (&x, &y)| s + x * y)
}

/// Preconditioned conjugate gradients from a zero initial guess.
///
/// Stops when the true residual satisfies `‖rhs − K x‖ ≤ rel_tol·‖rhs‖`.
pub fn cg_solve<T: Real>(
    k: &CsrMatrix<T>,
    pc: &Preconditioner<T>,
    rhs: &[T],
    rel_tol: f64,
    max_iter: usize,
) -> Result<(Vec<T>, SolveReport)> {
    let start = Instant::now();
    let n = k.n;
    let mut x = vec![T::zero(); n];
    let bnorm = dot(rhs, rhs).sqrt();
    if bnorm == T::zero() {
        let report = SolveReport { iterations: 0, final_relative_residual: 0.0, solve_time: start.elapsed() };
        return Ok((x, report));
    }
    let tol = T::lit(rel_tol) * bnorm;
    let mut r = rhs.to_vec();
    let mut z = vec![T::zero(); n];
    let mut p = vec![T::zero(); n];
    let mut q = vec![T::zero(); n];
    let mut iterations = 0;
    let mut rel = 1.0;

    // outer loop restarts from the true residual if the recurrence drifted
    while iterations < max_iter {
        pc.apply(k, &r, &mut z);
        p.copy_from_slice(&z);
        let mut rz = dot(&r, &z);
        let mut rnorm = dot(&r, &r).sqrt();
        while rnorm > tol && iterations < max_iter {
            k.matvec(&p, &mut q);
            let pq = dot(&p, &q);
            let alpha = rz / pq;
            for i in 0..n {
                x[i] += alpha * p[i];
                r[i] -= alpha * q[i];
            }
            iterations += 1;
            rnorm = dot(&r, &r).sqrt();
            if rnorm <= tol {
                break;
            }
            pc.apply(k, &r, &mut z);
            let rz_new = dot(&r, &z);
            let beta = rz_new / rz;
            rz = rz_new;
            for i in 0..n {
                p[i] = z[i] + beta * p[i];
            }
        }
        k.matvec(&x, &mut q);
        for i in 0..n {
            r[i] = rhs[i] - q[i];
        }
        let true_norm = dot(&r, &r).sqrt();
        rel = (true_norm / bnorm).re();
        if true_norm <= tol {
            let report = SolveReport { iterations, final_relative_residual: rel, solve_time: start.elapsed() };
            return Ok((x, report));
        }
    }
    Err(WsmError::NotConverged(SolveReport {
        iterations,
        final_relative_residual: rel,
        solve_time: start.elapsed(),
    }))
}

/// Default relative tolerance of the conjugate-gradient solves.
pub const DEFAULT_CG_TOL: f64 = 1e-10;

/// Assembled and constrained operator for one `(mesh, order, material)`.
#[derive(Debug)]
pub struct FeSystem<T, const D: usize> {
    space: Arc<FeSpace<T, D>>,
    material: IsotropicElasticity<T>,
    stiffness: Arc<CsrMatrix<T>>,
    constrained: CsrMatrix<T>,
    mask: Vec<bool>,
    preconditioner: Preconditioner<T>,
    pub assembly_time: Duration,
    pub factor_time: Duration,
}

impl<T: Real, const D: usize> FeSystem<T, D> {
    pub fn new(
        space: Arc<FeSpace<T, D>>,
        material: IsotropicElasticity<T>,
        kind: PreconditionerKind,
    ) -> Result<Self> {
        let t0 = Instant::now();
        let stiffness = assemble_stiffness(&space, &material)?;
        let assembly_time = t0.elapsed();
        let t1 = Instant::now();
        let mask = constrained_mask(stiffness.n, space.dirichlet_dofs())?;
        let constrained = constrain_matrix(&stiffness, &mask);
        let preconditioner = build_preconditioner(&constrained, kind)?;
        let factor_time = t1.elapsed();
        Ok(Self {
            space,
            material,
            stiffness: Arc::new(stiffness),
            constrained,
            mask,
            preconditioner,
            assembly_time,
            factor_time,
        })
    }

    pub fn space(&self) -> &Arc<FeSpace<T, D>> {
        &self.space
    }

    pub fn material(&self) -> &IsotropicElasticity<T> {
        &self.material
    }

    /// Unconstrained stiffness matrix.
    pub fn stiffness(&self) -> &Arc<CsrMatrix<T>> {
        &self.stiffness
    }

    pub fn constrained_stiffness(&self) -> &CsrMatrix<T> {
        &self.constrained
    }

    pub fn preconditioner(&self) -> &Preconditioner<T> {
        &self.preconditioner
    }

    /// Right-hand side of the constrained system for load `load` and
    /// Dirichlet values `g` (read at the constrained dofs only).
    pub fn constrained_rhs(&self, load: &[T], g: &[T]) -> Vec<T> {
        lift_rhs(&self.stiffness, load, g, &self.mask)
    }

    /// Solves `K u = load` subject to `u = g` on the Dirichlet dofs.
    pub fn solve(&self, load: &[T], g: &[T], rel_tol: f64, max_iter: usize) -> Result<(Vec<T>, SolveReport)> {
        let rhs = self.constrained_rhs(load, g);
        cg_solve(&self.constrained, &self.preconditioner, &rhs, rel_tol, max_iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::StructuredMesh;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn space2(n: usize, order: usize) -> Arc<FeSpace<f64, 2>> {
        let mesh = StructuredMesh::build_box_mesh([-1.0, -1.0], [1.0, 1.0], [n, n], None).unwrap();
        Arc::new(FeSpace::new(Arc::new(mesh), order).unwrap())
    }

    #[test]
    fn rigid_modes_are_in_the_null_space() {
        for order in 1..=2 {
            let s = space2(3, order);
            let k = assemble_stiffness(&s, &IsotropicElasticity::unit()).unwrap();
            let scale = k.max_abs();
            for mode in [
                s.interpolate(|_| Ok([1.0, 0.0])).unwrap(),
                s.interpolate(|_| Ok([0.0, 1.0])).unwrap(),
                s.interpolate(|x| Ok([-x[1], x[0]])).unwrap(),
            ] {
                let r = k.mul(&mode);
                assert!(r.iter().all(|v| v.abs() < 1e-10 * scale));
            }
        }
    }

    #[test]
    fn stiffness_is_symmetric_and_reproducible() {
        let s = space2(4, 2);
        let mat = IsotropicElasticity::unit();
        let k = assemble_stiffness(&s, &mat).unwrap();
        let k2 = assemble_stiffness(&s, &mat).unwrap();
        assert_eq!(k, k2);
        let scale = k.max_abs();
        for i in 0..k.n() {
            let (cols, vals) = k.row(i);
            for (&c, &v) in cols.iter().zip(vals) {
                assert!((v - k.get(c, i)).abs() <= 1e-12 * scale);
            }
        }
    }

    #[test]
    fn dirichlet_with_zero_values_only_zeroes_constrained_entries() {
        let s = space2(2, 1);
        let k = assemble_stiffness(&s, &IsotropicElasticity::unit()).unwrap();
        let rhs: Vec<f64> = (0..k.n()).map(|i| i as f64 + 1.0).collect();
        let g = vec![0.0; k.n()];
        let (_, r) = apply_dirichlet(&k, &rhs, &g, s.dirichlet_dofs()).unwrap();
        for i in 0..k.n() {
            if s.dirichlet_dofs().contains(&i) {
                assert_eq!(r[i], 0.0);
            } else {
                assert_eq!(r[i], rhs[i]);
            }
        }
    }

    #[test]
    fn dirichlet_on_identity() {
        let k = CsrMatrix::<f64>::identity(5);
        let rhs = vec![1.0, 2.0, 3.0, 4.0, 5.0];
        let g = vec![9.0, 9.0, -7.0, 9.0, 9.0];
        let (kc, r) = apply_dirichlet(&k, &rhs, &g, &[2]).unwrap();
        let pc = build_preconditioner(&kc, PreconditionerKind::Jacobi).unwrap();
        let (x, _) = cg_solve(&kc, &pc, &r, 1e-12, 10).unwrap();
        assert_eq!(x, vec![1.0, 2.0, -7.0, 4.0, 5.0]);
        assert!(matches!(
            apply_dirichlet(&k, &rhs, &g, &[5]),
            Err(WsmError::DofOutOfRange { index: 5, size: 5 })
        ));
    }

    #[test]
    fn constrained_operator_is_coercive() {
        let s = space2(4, 1);
        let k = assemble_stiffness(&s, &IsotropicElasticity::unit()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let mut v: Vec<f64> = (0..k.n()).map(|_| rng.gen_range(-1.0..1.0)).collect();
            for &d in s.dirichlet_dofs() {
                v[d] = 0.0;
            }
            let kv = k.mul(&v);
            assert!(dot(&v, &kv) > 0.0);
        }
    }

    #[test]
    fn jacobi_halves_residual_of_2i() {
        let k = CsrMatrix::diagonal(&[2.0; 4]);
        let pc = build_preconditioner(&k, PreconditionerKind::Jacobi).unwrap();
        let mut z = vec![0.0; 4];
        pc.apply(&k, &[1.0, -2.0, 4.0, 0.5], &mut z);
        assert_eq!(z, vec![0.5, -1.0, 2.0, 0.25]);
    }

    #[test]
    fn zero_diagonal_is_rejected() {
        let k = CsrMatrix::diagonal(&[1.0, 0.0]);
        assert!(matches!(build_preconditioner(&k, PreconditionerKind::Jacobi), Err(WsmError::ZeroDiagonal(1))));
    }

    #[test]
    fn preconditioner_rebuild_is_bitwise_identical() {
        let s = space2(4, 2);
        let k = assemble_stiffness(&s, &IsotropicElasticity::unit()).unwrap();
        let (kc, _) = apply_dirichlet(&k, &vec![0.0; k.n()], &vec![0.0; k.n()], s.dirichlet_dofs()).unwrap();
        for kind in [PreconditionerKind::Jacobi, PreconditionerKind::SymmetricGaussSeidel] {
            let a = build_preconditioner(&kc, kind).unwrap();
            let b = build_preconditioner(&kc, kind).unwrap();
            let bits = |p: &Preconditioner<f64>| p.inv_diag.iter().map(|v| v.to_bits()).collect::<Vec<_>>();
            assert_eq!(bits(&a), bits(&b));
        }
    }

    #[test]
    fn cg_zero_rhs() {
        let k = CsrMatrix::<f64>::identity(3);
        let pc = build_preconditioner(&k, PreconditionerKind::Jacobi).unwrap();
        let (x, rep) = cg_solve(&k, &pc, &[0.0; 3], 1e-10, 10).unwrap();
        assert_eq!(x, vec![0.0; 3]);
        assert_eq!(rep.iterations, 0);
    }

    #[test]
    fn cg_diagonal_system() {
        let n = 50;
        let d: Vec<f64> = (1..=n).map(|i| i as f64).collect();
        let k = CsrMatrix::diagonal(&d);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let rhs: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        // unpreconditioned: identity "Jacobi" state
        let pc = Preconditioner { kind: PreconditionerKind::Jacobi, inv_diag: vec![1.0; n] };
        let (x, _) = cg_solve(&k, &pc, &rhs, 1e-13, 500).unwrap();
        for i in 0..n {
            assert!((x[i] - rhs[i] / d[i]).abs() < 1e-10);
        }
    }

    #[test]
    fn cg_reports_non_convergence() {
        let s = space2(8, 1);
        let sys = FeSystem::new(s.clone(), IsotropicElasticity::unit(), PreconditionerKind::Jacobi).unwrap();
        let load = vec![1.0; s.n_dofs()];
        let g = vec![0.0; s.n_dofs()];
        match sys.solve(&load, &g, 1e-12, 2) {
            Err(WsmError::NotConverged(rep)) => assert_eq!(rep.iterations, 2),
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn sgs_solves_the_same_system() {
        let s = space2(8, 2);
        let mat = IsotropicElasticity::unit();
        let a = FeSystem::new(s.clone(), mat, PreconditionerKind::Jacobi).unwrap();
        let b = FeSystem::new(s.clone(), mat, PreconditionerKind::SymmetricGaussSeidel).unwrap();
        let g = s.interpolate_dirichlet(|x| Ok([x[0] * x[1], x[0] * x[0]])).unwrap();
        let load = vec![0.0; s.n_dofs()];
        let (ua, ra) = a.solve(&load, &g, 1e-12, 10_000).unwrap();
        let (ub, rb) = b.solve(&load, &g, 1e-12, 10_000).unwrap();
        assert!(rb.iterations < ra.iterations);
        for (x, y) in ua.iter().zip(&ub) {
            assert!((x - y).abs() < 1e-9);
        }
    }
}
