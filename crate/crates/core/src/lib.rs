//! One-dimensional Schrödinger operators `-d²/dx² + V`: Jost solutions,
//! zero-energy resonances, and the limits of the scaled family
//! `-d²/dx² + eps^-2 V(x/eps)` as `eps -> 0`.

pub mod error;
pub mod exec;
pub mod jost;
pub mod limit_ops;
pub mod ode;
pub mod potential;
pub mod quad;
pub mod resonance;
pub mod transfer;
pub mod truncated;

pub use error::{Error, Result};
pub use exec::Exec;
pub use jost::{
    default_grid, jost_left, jost_right, scaled_scattering_identity, scattering, wronskian, JostConfig, JostSolution,
    ScatteringData, Side, WaveNumber,
};
pub use limit_ops::{
    classify_limit, convergence_table, kernel_distance, limit_green_kernel, limit_scattering, ConvergenceRecord,
    LimitKernel, LimitOperator,
};
pub use potential::{Potential, PotentialSpec, Segment, Shape, SplittingScale, TailData};
pub use resonance::{d_dot_zero, resonance_report, resonant_couplings, CouplingSweep, ResonanceReport};
pub use truncated::{
    truncated_green_kernel, truncated_scaled_jost, truncated_scaled_scattering, GreenKernel, GreenKernelSample,
    TruncatedJost, TruncatedKernel,
};
