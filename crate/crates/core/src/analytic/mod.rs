//! Closed-form reference displacements.

pub mod okada;
pub mod planestrain;

pub use okada::HalfspaceSource;
pub use planestrain::PlaneStrainDislocation;

/// Side of a fault for evaluation on the fault itself: `Plus` is the side the
/// normal points away from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}
