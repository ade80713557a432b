//! Finite elements for Volterra dislocations with weakly enforced slip.
//!
//! A prescribed displacement jump across a fault surface is imposed entirely
//! through the right-hand side of a continuous Galerkin elasticity problem on a
//! structured box mesh. The mesh never has to conform to the fault.

pub mod analytic;
pub mod dual;
pub mod elasticity;
pub mod error;
pub mod fault;
pub mod harness;
pub mod femspace;
pub mod linsys;
pub mod mesh;
pub mod quadrature;
pub mod scalar;

pub use error::{Result, WsmError};
pub use scalar::Real;

pub type Elasticity = elasticity::IsotropicElasticity<f64>;
pub type Mesh2 = mesh::StructuredMesh<f64, 2>;
pub type Mesh3 = mesh::StructuredMesh<f64, 3>;
pub type Space2 = femspace::FeSpace<f64, 2>;
pub type Space3 = femspace::FeSpace<f64, 3>;
pub type System2 = linsys::FeSystem<f64, 2>;
pub type System3 = linsys::FeSystem<f64, 3>;
pub type Csr = linsys::CsrMatrix<f64>;
