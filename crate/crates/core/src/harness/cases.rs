use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use super::norms::{error_norms, ExactSolution, NormSet};
use crate::analytic::{HalfspaceSource, PlaneStrainDislocation, Side};
use crate::elasticity::IsotropicElasticity;
use crate::error::{Result, WsmError};
use crate::fault::{fault_quality_norm, segment_fault, wsm_rhs, FaultModel};
use crate::femspace::FeSpace;
use crate::linsys::{FeSystem, PreconditionerKind, SolveReport, DEFAULT_CG_TOL};
use crate::mesh::{BoxSide, StructuredMesh};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    /// Tilted unit dislocation with smooth slip, plane strain on `(−1, 1)²`.
    I,
    /// Buried rectangular patch in the half-space box `[−1, 1]² × [−1, 0]`.
    II,
    /// Same patch plane, reaching the free surface.
    III,
}

impl Case {
    pub fn dim(self) -> usize {
        match self {
            Case::I => 2,
            Case::II | Case::III => 3,
        }
    }

    /// Element counts of the level with `n` cells along `x`.
    pub fn counts(self, n: usize) -> Vec<usize> {
        match self {
            Case::I => vec![n, n],
            Case::II | Case::III => vec![n, n, (n / 2).max(1)],
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::I => "I",
            Case::II => "II",
            Case::III => "III",
        })
    }
}

impl FromStr for Case {
    type Err = WsmError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "I" | "1" => Ok(Case::I),
            "II" | "2" => Ok(Case::II),
            "III" | "3" => Ok(Case::III),
            _ => Err(WsmError::InvalidFault(format!("unknown case {s:?}"))),
        }
    }
}

fn halfspace(aw: (f64, f64), dip_slip: f64) -> HalfspaceSource {
    HalfspaceSource {
        material: IsotropicElasticity::unit(),
        center: [0.0, 0.0],
        depth: 0.5,
        strike_deg: 15.0,
        dip_deg: 30.0,
        al: (-0.5 / 3f64.sqrt(), 0.5 / 3f64.sqrt()),
        aw,
        disl: [0.2, dip_slip, 0.0],
    }
}

/// Buried patch, depth 0.25 to 0.75.
pub fn case_ii_source() -> HalfspaceSource {
    halfspace((-0.5, 0.5), 0.1)
}

/// Rupturing patch, depth 0 to 0.75, reversed dip slip.
pub fn case_iii_source() -> HalfspaceSource {
    halfspace((-0.5, 1.0), -0.1)
}

/// One row of a convergence study. Norm fields are `None` when the level failed.
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorReport {
    pub case: String,
    pub p: usize,
    pub counts: Vec<usize>,
    pub h: f64,
    pub norms: Option<NormSet>,
    pub slip_norm: Option<f64>,
    pub solve: Option<SolveReport>,
    pub assemble_ms: Option<f64>,
    pub solve_ms: Option<f64>,
    pub assembly_reused: bool,
    pub failure: Option<String>,
}

/// A solved level: the space, the coefficient vector and timings.
#[derive(Debug)]
pub struct Solved<const D: usize> {
    pub system: Arc<FeSystem<f64, D>>,
    pub u: Vec<f64>,
    pub report: SolveReport,
    pub slip_norm: f64,
    /// Segmentation, load assembly and CG, in milliseconds.
    pub solve_ms: f64,
}

impl<const D: usize> Solved<D> {
    pub fn space(&self) -> &Arc<FeSpace<f64, D>> {
        self.system.space()
    }
}

fn max_iter(n: usize) -> usize {
    10 * n + 1000
}

/// Solves for `fault` on an already assembled system, with Dirichlet data
/// taken from `exact`.
pub fn solve_level<const D: usize>(
    system: Arc<FeSystem<f64, D>>,
    exact: &dyn ExactSolution<D>,
    fault: &FaultModel<f64, D>,
) -> Result<Solved<D>> {
    let t0 = Instant::now();
    let space = system.space().clone();
    let mesh = space.mesh();
    let segments = segment_fault(mesh.as_ref(), fault, space.order() + 2)?;
    let load = wsm_rhs(&space, system.material(), fault, &segments)?;
    let g = space.interpolate_dirichlet(|x| exact.value(x, Some(Side::Plus)))?;
    let (u, report) = system.solve(&load, &g, DEFAULT_CG_TOL, max_iter(space.n_dofs()))?;
    Ok(Solved {
        slip_norm: fault_quality_norm(&segments, fault),
        system,
        u,
        report,
        solve_ms: t0.elapsed().as_secs_f64() * 1e3,
    })
}

fn assemble<const D: usize>(
    lo: [f64; D],
    hi: [f64; D],
    counts: [usize; D],
    free: Option<BoxSide>,
    p: usize,
    material: IsotropicElasticity<f64>,
) -> Result<Arc<FeSystem<f64, D>>> {
    let mesh = StructuredMesh::build_box_mesh(lo, hi, counts, free)?;
    let space = Arc::new(FeSpace::new(Arc::new(mesh), p)?);
    Ok(Arc::new(FeSystem::new(space, material, PreconditionerKind::Jacobi)?))
}

fn level<const D: usize>(
    case: Case,
    system: Result<Arc<FeSystem<f64, D>>>,
    exact: &dyn ExactSolution<D>,
    fault: &FaultModel<f64, D>,
    p: usize,
    counts: &[usize],
    exclusion: f64,
) -> ErrorReport {
    let mut rep = ErrorReport {
        case: case.to_string(),
        p,
        counts: counts.to_vec(),
        h: f64::NAN,
        norms: None,
        slip_norm: None,
        solve: None,
        assemble_ms: None,
        solve_ms: None,
        assembly_reused: false,
        failure: None,
    };
    let run = || -> Result<()> {
        let system = system?;
        rep.h = system.space().mesh().mesh_size();
        rep.assemble_ms = Some((system.assembly_time + system.factor_time).as_secs_f64() * 1e3);
        let s = solve_level(system, exact, fault)?;
        rep.slip_norm = Some(s.slip_norm);
        rep.solve = Some(s.report.clone());
        rep.solve_ms = Some(s.solve_ms);
        rep.norms = Some(error_norms(s.space(), &s.u, exact, exclusion, Some(fault))?);
        Ok(())
    };
    if let Err(e) = run() {
        rep.failure = Some(e.to_string());
    }
    rep
}

/// Runs one refinement level. Failures are recorded in the report.
pub fn run_level(case: Case, p: usize, n: usize, exclusion: f64) -> ErrorReport {
    let counts = case.counts(n);
    match case {
        Case::I => {
            let exact = PlaneStrainDislocation::tilted(0.1);
            let sys = assemble([-1.0, -1.0], [1.0, 1.0], [n, n], None, p, exact.material);
            level(case, sys, &exact, &exact.fault_model(), p, &counts, exclusion)
        }
        Case::II | Case::III => {
            let exact = if case == Case::II { case_ii_source() } else { case_iii_source() };
            let c = [counts[0], counts[1], counts[2]];
            let sys = assemble([-1.0, -1.0, -1.0], [1.0, 1.0, 0.0], c, Some(BoxSide::top::<3>()), p, exact.material);
            level(case, sys, &exact, &exact.fault_model(), p, &counts, exclusion)
        }
    }
}

/// Runs a refinement sequence, one level per entry of `ns`.
pub fn run_case(case: Case, p: usize, ns: &[usize], exclusion: f64) -> Result<Vec<ErrorReport>> {
    if !(1..=2).contains(&p) {
        return Err(WsmError::UnsupportedOrder(p));
    }
    if !(exclusion >= 0.0) {
        return Err(WsmError::InvalidFault(format!("exclusion radius {exclusion} must be ≥ 0")));
    }
    Ok(ns.iter().map(|&n| run_level(case, p, n, exclusion)).collect())
}

/// `|u_h − u⁺|` at the centre of the case I dislocation on an `n × n` mesh.
pub fn case_i_midpoint_error(n: usize, p: usize) -> Result<f64> {
    let exact = PlaneStrainDislocation::tilted(0.1);
    let sys = assemble([-1.0, -1.0], [1.0, 1.0], [n, n], None, p, exact.material)?;
    let s = solve_level(sys, &exact, &exact.fault_model())?;
    let (uh, _) = s.space().eval_at(&s.u, &exact.origin)?;
    let ue = exact.eval(&exact.origin, Some(Side::Plus))?;
    Ok(((uh[0] - ue[0]).powi(2) + (uh[1] - ue[1]).powi(2)).sqrt())
}

pub const CSV_HEADER: [&str; 18] = [
    "case",
    "p",
    "nx",
    "ny",
    "nz",
    "h",
    "l2_global",
    "h1_global",
    "l2_local",
    "h1_local",
    "l2_surf_global",
    "l2_surf_local",
    "slip_norm",
    "cg_iters",
    "cg_residual",
    "assemble_ms",
    "solve_ms",
    "assembly_reused",
];

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

fn ms(v: Option<f64>) -> String {
    v.map(|v| format!("{v:.3}")).unwrap_or_default()
}

impl ErrorReport {
    fn record(&self) -> Vec<String> {
        let n = self.norms.as_ref();
        vec![
            self.case.clone(),
            self.p.to_string(),
            opt(self.counts.first()),
            opt(self.counts.get(1)),
            opt(self.counts.get(2)),
            if self.h.is_finite() { self.h.to_string() } else { String::new() },
            opt(n.map(|n| n.l2_global)),
            opt(n.map(|n| n.h1_global)),
            opt(n.map(|n| n.l2_local)),
            opt(n.map(|n| n.h1_local)),
            opt(n.and_then(|n| n.l2_surf_global)),
            opt(n.and_then(|n| n.l2_surf_local)),
            opt(self.slip_norm),
            opt(self.solve.as_ref().map(|s| s.iterations)),
            opt(self.solve.as_ref().map(|s| s.final_relative_residual)),
            ms(self.assemble_ms),
            ms(self.solve_ms),
            self.assembly_reused.to_string(),
        ]
    }
}

pub fn write_csv<W: Write>(w: W, reports: &[ErrorReport]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(CSV_HEADER)?;
    for r in reports {
        out.write_record(r.record())?;
    }
    out.flush()?;
    Ok(())
}

/// Reads `(case, p, h, value)` rows of `metric`, skipping rows where it is empty.
pub fn read_csv<R: Read>(r: R, metric: &str) -> Result<Vec<(String, usize, f64, f64)>> {
    let mut rdr = csv::Reader::from_reader(r);
    let headers = rdr.headers()?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| WsmError::InvalidRateData(format!("no column {name:?}")))
    };
    let (ci, pi, hi, mi) = (col("case")?, col("p")?, col("h")?, col(metric)?);
    let num = |s: &str, what: &str| -> Result<f64> {
        s.parse().map_err(|_| WsmError::InvalidRateData(format!("bad {what} value {s:?}")))
    };
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        if rec[mi].is_empty() || rec[hi].is_empty() {
            continue;
        }
        let p = rec[pi].parse().map_err(|_| WsmError::InvalidRateData(format!("bad p {:?}", &rec[pi])))?;
        rows.push((rec[ci].to_string(), p, num(&rec[hi], "h")?, num(&rec[mi], metric)?));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_parsing() {
        assert_eq!("ii".parse::<Case>().unwrap(), Case::II);
        assert_eq!("III".parse::<Case>().unwrap(), Case::III);
        assert!("IV".parse::<Case>().is_err());
        assert_eq!(Case::III.counts(8), vec![8, 8, 4]);
        assert_eq!(Case::I.to_string(), "I");
    }

    #[test]
    fn case_geometry() {
        let f = case_ii_source().fault_model();
        let z: Vec<f64> = f.patch_vertices().iter().map(|v| v[2]).collect();
        let zmin = z.iter().cloned().fold(f64::INFINITY, f64::min);
        let zmax = z.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert!((zmin + 0.75).abs() < 1e-12 && (zmax + 0.25).abs() < 1e-12);
        let f = case_iii_source().fault_model();
        let zmax = f.patch_vertices().iter().map(|v| v[2]).fold(f64::NEG_INFINITY, f64::max);
        assert!(zmax.abs() < 1e-12);
        assert!((case_ii_source().fault_model().patch_measure() - 1.0 / 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn local_norms_below_global() {
        let r = run_level(Case::I, 1, 16, 0.1);
        let n = r.norms.unwrap();
        assert!(n.l2_global > n.l2_local && n.h1_global > n.h1_local);
        assert!(n.l2_surf_global.is_none());
        assert_eq!(r.h, 0.125 * 2f64.sqrt());
    }

    #[test]
    fn zero_slip_gives_zero_solution() {
        let exact = PlaneStrainDislocation::tilted(0.0);
        let sys = assemble([-1.0, -1.0], [1.0, 1.0], [8, 8], None, 1, exact.material).unwrap();
        let s = solve_level(sys, &exact, &exact.fault_model()).unwrap();
        assert!(s.u.iter().all(|v| *v == 0.0));
        let n = error_norms(s.space(), &s.u, &exact, 0.1, Some(&exact.fault_model())).unwrap();
        assert_eq!((n.l2_global, n.h1_global), (0.0, 0.0));
    }

    #[test]
    fn csv_layout() {
        let mut r = run_level(Case::I, 1, 4, 0.1);
        let mut buf = Vec::new();
        write_csv(&mut buf, std::slice::from_ref(&r)).unwrap();
        let s = String::from_utf8(buf).unwrap();
        let mut lines = s.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER.join(","));
        let f: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(f.len(), 18);
        assert_eq!(&f[..5], &["I", "1", "4", "4", ""]);
        assert_eq!((f[10], f[11], f[17]), ("", "", "false"));
        let rows = read_csv(s.as_bytes(), "l2_local").unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].3, r.norms.unwrap().l2_local);
        r.failure = Some("x".into());
        r.norms = None;
        let mut buf = Vec::new();
        write_csv(&mut buf, &[r]).unwrap();
        assert!(read_csv(buf.as_slice(), "l2_local").unwrap().is_empty());
    }

    #[test]
    fn bad_arguments() {
        assert!(matches!(run_case(Case::I, 3, &[4], 0.1), Err(WsmError::UnsupportedOrder(3))));
        assert!(run_case(Case::I, 1, &[4], -0.1).is_err());
    }

    #[test]
    fn small_3d_level_runs() {
        let r = run_level(Case::III, 1, 4, 0.1);
        assert!(r.failure.is_none(), "{:?}", r.failure);
        let n = r.norms.unwrap();
        assert!(n.l2_surf_global.unwrap() > 0.0);
        assert_eq!(r.counts, vec![4, 4, 2]);
    }
}
