use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::cases::{solve_level, Solved};
use crate::analytic::PlaneStrainDislocation;
use crate::elasticity::IsotropicElasticity;
use crate::error::{Result, WsmError};
use crate::femspace::FeSpace;
use crate::linsys::{FeSystem, PreconditionerKind};
use crate::mesh::StructuredMesh;

/// One fault solved on the shared system.
#[derive(Clone, Debug, PartialEq)]
pub struct FaultRun {
    pub angle: f64,
    pub center: [f64; 2],
    pub cg_iters: usize,
    pub cg_residual: f64,
    /// Segmentation, load and solve.
    pub solve_ms: f64,
    /// The same fault solved on a system built from scratch.
    pub cold_ms: f64,
    pub assembly_reused: bool,
    pub solution: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReuseReport {
    pub counts: [usize; 2],
    pub p: usize,
    /// Stiffness assembly plus preconditioner setup.
    pub assembly_ms: f64,
    /// Mean over faults of mesh, space and system built from scratch plus the solve.
    pub cold_ms: f64,
    pub runs: Vec<FaultRun>,
}

impl ReuseReport {
    /// Mean cost of each fault after the first.
    pub fn mean_additional_ms(&self) -> f64 {
        let rest = &self.runs[1.min(self.runs.len())..];
        rest.iter().map(|r| r.solve_ms).sum::<f64>() / rest.len().max(1) as f64
    }

    pub fn total_ms(&self) -> f64 {
        self.assembly_ms + self.runs.iter().map(|r| r.solve_ms).sum::<f64>()
    }

    /// `F·cold − (F − 1)·assembly`, the cost of `F` faults if nothing were reused
    /// beyond a single assembly per fault.
    pub fn naive_bound_ms(&self) -> f64 {
        let f = self.runs.len() as f64;
        f * self.cold_ms - (f - 1.0) * self.assembly_ms
    }
}

/// Random unit dislocation near the centre of `(−1, 1)²`.
pub fn random_dislocation(rng: &mut impl Rng) -> PlaneStrainDislocation<f64> {
    let angle = rng.gen_range(0.0..std::f64::consts::PI);
    PlaneStrainDislocation {
        material: IsotropicElasticity::unit(),
        b0: 0.1,
        origin: [rng.gen_range(-0.2..0.2), rng.gen_range(-0.2..0.2)],
        e_xi: [angle.cos(), angle.sin()],
    }
}

/// Timings are the minimum over this many repetitions.
const REPEATS: usize = 3;

fn build(n: usize, p: usize) -> Result<Arc<FeSystem<f64, 2>>> {
    let mesh = StructuredMesh::build_box_mesh([-1.0, -1.0], [1.0, 1.0], [n, n], None)?;
    let space = Arc::new(FeSpace::new(Arc::new(mesh), p)?);
    Ok(Arc::new(FeSystem::new(space, IsotropicElasticity::unit(), PreconditionerKind::Jacobi)?))
}

/// Assembles once on an `n × n` mesh, then solves `faults` random
/// dislocations reusing the stiffness matrix and preconditioner.
pub fn reuse_demo(n: usize, p: usize, faults: usize, seed: u64) -> Result<ReuseReport> {
    if faults < 2 {
        return Err(WsmError::InvalidFault(format!("reuse demo needs at least 2 faults, got {faults}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dislocations: Vec<_> = (0..faults).map(|_| random_dislocation(&mut rng)).collect();

    let system = build(n, p)?;
    let assembly_ms = (system.assembly_time + system.factor_time).as_secs_f64() * 1e3;
    let first = system.stiffness().clone();
    let mut runs = Vec::with_capacity(faults);
    let mut cold_total = 0.0;
    for (i, d) in dislocations.iter().enumerate() {
        let fault = d.fault_model();
        // cold and shared-system solves of the same fault, interleaved so
        // that drift in machine speed affects both alike
        let mut cold = f64::INFINITY;
        let mut best: Option<Solved<2>> = None;
        for _ in 0..REPEATS {
            let t0 = Instant::now();
            solve_level(build(n, p)?, d, &fault)?;
            cold = cold.min(t0.elapsed().as_secs_f64() * 1e3);
            let s = solve_level(system.clone(), d, &fault)?;
            best = Some(match best {
                None => s,
                Some(mut b) => {
                    if b.u != s.u {
                        return Err(WsmError::InvalidFault(format!("fault {i}: repeated solve is not reproducible")));
                    }
                    b.solve_ms = b.solve_ms.min(s.solve_ms);
                    b
                }
            });
        }
        cold_total += cold;
        let s = best.expect("at least one repetition");
        runs.push(FaultRun {
            angle: d.e_xi[1].atan2(d.e_xi[0]),
            center: d.origin,
            cg_iters: s.report.iterations,
            cg_residual: s.report.final_relative_residual,
            solve_ms: s.solve_ms,
            cold_ms: cold,
            assembly_reused: i > 0 && Arc::ptr_eq(s.system.stiffness(), &first),
            solution: s.u,
        });
    }
    let cold_ms = cold_total / faults as f64;
    Ok(ReuseReport { counts: [n, n], p, assembly_ms, cold_ms, runs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shared_stiffness_and_determinism() {
        let a = reuse_demo(8, 1, 3, 7).unwrap();
        assert!(!a.runs[0].assembly_reused);
        assert!(a.runs[1..].iter().all(|r| r.assembly_reused));
        let b = reuse_demo(8, 1, 3, 7).unwrap();
        for (x, y) in a.runs.iter().zip(&b.runs) {
            assert_eq!(x.solution, y.solution);
            assert_eq!(x.angle, y.angle);
        }
        assert_ne!(a.runs[0].solution, a.runs[1].solution);
    }

    #[test]
    fn needs_two_faults() {
        assert!(reuse_demo(4, 1, 1, 0).is_err());
    }

    #[test]
    fn bookkeeping() {
        let r = reuse_demo(4, 1, 2, 1).unwrap();
        assert_eq!(r.mean_additional_ms(), r.runs[1].solve_ms);
        assert!((r.total_ms() - (r.assembly_ms + r.runs[0].solve_ms + r.runs[1].solve_ms)).abs() < 1e-9);
        assert!((r.naive_bound_ms() - (2.0 * r.cold_ms - r.assembly_ms)).abs() < 1e-9);
        assert!(r.cold_ms > r.assembly_ms);
    }
}
