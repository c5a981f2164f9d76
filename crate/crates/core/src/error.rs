use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("quadrature did not converge: estimate {estimate:e} above tolerance {tol:e} after {levels} refinements")]
    QuadratureNonconvergence {
        estimate: f64,
        tol: f64,
        levels: usize,
    },

    #[error("oscillatory panel budget exceeded: {requested} panels requested, cap {cap}")]
    PanelBudgetExceeded { requested: usize, cap: usize },

    #[error("coefficient grids do not match: {0}")]
    GridMismatch(String),

    #[error("degenerate phase: {0}")]
    DegeneratePhase(String),

    #[error("no sign change of the phase derivative on the bracket [{0}, {1}]")]
    NoSignChange(f64, f64),

    #[error("spectral mass outside the resolved scale range exceeds tolerance ({mass:e} > {tol:e})")]
    UnresolvedTail { mass: f64, tol: f64 },

    #[error("argmax on search boundary at (r, s) = ({r}, {s}); enlarge the search domain")]
    BoundaryArgmax { r: f64, s: f64 },

    #[error("second-derivative lower bound violated: |g''({at})| = {value:e} < {bound:e}")]
    CurvatureBoundViolated { at: f64, value: f64, bound: f64 },

    #[error("zero input: {0}")]
    ZeroInput(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
