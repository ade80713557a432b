//! Error norms, convergence rates and the drivers for the three benchmark cases.

mod cases;
mod norms;
mod rates;
mod reuse;

pub use cases::{
    case_i_midpoint_error, case_ii_source, case_iii_source, read_csv, run_case, run_level, solve_level, write_csv, Case,
    ErrorReport, Solved, CSV_HEADER,
};
pub use norms::{error_norms, error_norms_with, ExactSolution, NormSet};
pub use rates::{fit_rate, RateFit};
pub use reuse::{random_dislocation, reuse_demo, FaultRun, ReuseReport};
