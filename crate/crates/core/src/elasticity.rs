//! Isotropic linear elasticity: strain, Hooke's law, tractions.
//!
//! Tensors are `D × D` with `D ∈ {2, 3}`. The two-dimensional case is plane
//! strain: the out-of-plane strain vanishes, so the 3D isotropic law restricted
//! to in-plane components is `σ = λ tr(ε) I + 2μ ε` with the trace taken over
//! the two in-plane components. The same `(λ, μ)` therefore parameterize the 2D
//! and 3D problems and the plane-strain Poisson ratio is `λ / (2(λ + μ))`.

use crate::error::{Result, WsmError};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IsotropicElasticity<T> {
    pub lambda: T,
    pub mu: T,
}

impl<T: Real> IsotropicElasticity<T> {
    /// Builds a material whose Hooke map is positive definite in two and three
    /// dimensions (`μ > 0`, `λ + 2μ/3 > 0`).
    pub fn new(lambda: T, mu: T) -> Result<Self> {
        let three = T::lit(3.0);
        if !(mu > T::zero()) || !(lambda + T::lit(2.0) * mu / three > T::zero()) {
            return Err(WsmError::InvalidMaterial(format!(
                "material (λ = {lambda}, μ = {mu}) is not positive definite"
            )));
        }
        Ok(Self { lambda, mu })
    }

    /// λ = μ = 1.
    pub fn unit() -> Self {
        Self { lambda: T::one(), mu: T::one() }
    }

    /// Plane-strain / 3D Poisson ratio `λ / (2(λ + μ))`.
    pub fn poisson_ratio(&self) -> T {
        self.lambda / (T::lit(2.0) * (self.lambda + self.mu))
    }

    /// Extremal eigenvalues of the Hooke map on symmetric `D × D` tensors.
    ///
    /// Deviatoric tensors have eigenvalue `2μ`, the identity `2μ + Dλ`.
    pub fn positivity_constants<const D: usize>(&self) -> (T, T) {
        let dev = T::lit(2.0) * self.mu;
        let vol = dev + T::lit(D as f64) * self.lambda;
        (dev.min(vol), dev.max(vol))
    }

    /// Casts the parameters to another scalar type.
    pub fn cast<S: Real>(&self) -> IsotropicElasticity<S> {
        IsotropicElasticity { lambda: S::lit(self.lambda.re()), mu: S::lit(self.mu.re()) }
    }
}

/// Symmetric second-order tensor stored as a full array; `entries[i][j] == entries[j][i]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymTensor<T, const D: usize> {
    entries: [[T; D]; D],
}

impl<T: Real, const D: usize> SymTensor<T, D> {
    pub fn zero() -> Self {
        Self { entries: [[T::zero(); D]; D] }
    }

    pub fn identity() -> Self {
        let mut t = Self::zero();
        for i in 0..D {
            t.entries[i][i] = T::one();
        }
        t
    }

    /// Symmetric part of an arbitrary square array.
    pub fn symmetrize(a: &[[T; D]; D]) -> Self {
        let half = T::lit(0.5);
        Self { entries: std::array::from_fn(|i| std::array::from_fn(|j| half * (a[i][j] + a[j][i]))) }
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[[T; D]; D] {
        &self.entries
    }

    pub fn trace(&self) -> T {
        (0..D).map(|i| self.entries[i][i]).sum()
    }

    /// Double contraction `self : other`.
    pub fn ddot(&self, other: &Self) -> T {
        let mut s = T::zero();
        for i in 0..D {
            for j in 0..D {
                s += self.entries[i][j] * other.entries[i][j];
            }
        }
        s
    }

    pub fn scaled(&self, a: T) -> Self {
        Self { entries: self.entries.map(|row| row.map(|v| v * a)) }
    }

    /// Tensor-vector product `self · n`.
    pub fn dot(&self, n: &[T; D]) -> [T; D] {
        std::array::from_fn(|i| (0..D).map(|j| self.entries[i][j] * n[j]).sum())
    }
}

/// `ε = ½(∇u + ∇uᵀ)`, with `grad_u[i][j] = ∂u_i/∂x_j`.
pub fn strain<T: Real, const D: usize>(grad_u: &[[T; D]; D]) -> SymTensor<T, D> {
    SymTensor::symmetrize(grad_u)
}

/// Isotropic Hooke's law `σ = λ tr(ε) I + 2μ ε`.
pub fn stress<T: Real, const D: usize>(
    e: &SymTensor<T, D>,
    mat: &IsotropicElasticity<T>,
) -> SymTensor<T, D> {
    let two_mu = T::lit(2.0) * mat.mu;
    let vol = mat.lambda * e.trace();
    let mut s = e.scaled(two_mu);
    for i in 0..D {
        s.entries[i][i] += vol;
    }
    s
}

/// Traction `σ(e) · n` on a surface with unit normal `n`.
pub fn traction<T: Real, const D: usize>(
    e: &SymTensor<T, D>,
    mat: &IsotropicElasticity<T>,
    n: &[T; D],
) -> Result<[T; D]> {
    let len = crate::scalar::norm(n);
    if (len - T::one()).abs() > T::lit(1e-12) {
        return Err(WsmError::NonUnitNormal(len.re()));
    }
    Ok(stress(e, mat).dot(n))
}
