use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("quadrature did not converge on [{lo}, {hi}]: achieved error {achieved:e}, requested {requested:e}")]
    Quadrature {
        lo: f64,
        hi: f64,
        achieved: f64,
        requested: f64,
    },

    #[error("anchor search failed: tail integral stays at {achieved:e} > {tol:e}")]
    AnchorSearch { achieved: f64, tol: f64 },

    #[error("ODE step size underflow at x = {x}")]
    StepUnderflow { x: f64 },

    #[error("no splitting scale for eps = {eps}: a solution of rho(xi) = 1/eps exists only for eps < {eps0}")]
    EpsilonTooLarge { eps: f64, eps0: f64 },

    #[error("Jost coefficient a(k) vanishes at k = {re}+{im}i; use a wavenumber with Im k > 0")]
    ExceptionalPoint { re: f64, im: f64 },

    #[error("Wronskian D(eps k) vanishes at eps k = {re}+{im}i")]
    DegenerateWronskian { re: f64, im: f64 },

    #[error("no common grid point between the two Jost solutions")]
    NoCommonPoint,

    #[error("resonance data inconsistent: {0}")]
    Inconsistent(String),

    #[error("potential is not resonant: |D(0)| = {d0:e} >= threshold {threshold:e}")]
    NotResonant { d0: f64, threshold: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
