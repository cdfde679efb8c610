use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degenerate lattice: {0}")]
    DegenerateLattice(String),
    #[error("argument {0} is within the pole exclusion disk of a lattice point")]
    PoleProximity(String),
    #[error("operands were built over different root fields")]
    FieldMismatch,
    #[error("basis is linearly dependent (Wronskian vanishes identically)")]
    DependentBasis,
    #[error("annihilator coefficient has a pole away from the roots e_i: {0}")]
    ApparentSingularity(String),
    #[error("basis elements do not share a half-power pattern")]
    MixedParity,
    #[error("division by a non-monomial element")]
    NonMonomialDivisor,
    #[error("right reduction by H failed: {0}")]
    ReductionFailure(String),
    #[error("alpha vector is not quasi-solvable: {0}")]
    NotQuasiSolvable(String),
    #[error("alpha {alpha:?} is not admissible for couplings {couplings:?}")]
    Inadmissible {
        alpha: [i64; 4],
        couplings: [i64; 4],
    },
    #[error("invariant-space closure failed: {0}")]
    ClosureFailure(String),
    #[error("intertwining identity failed for alpha {0:?}")]
    IntertwineFailure([i64; 4]),
    #[error("Xi ansatz failed: {0}")]
    AnsatzFailure(String),
    #[error("operator relation failed: {0}")]
    RelationFailure(String),
    #[error("lattice is not real-rectangular")]
    NonRectangular,
    #[error("spectral polynomial has non-real roots: {0}")]
    ComplexRoots(String),
    #[error("energy {0} is within tolerance of a root of Q")]
    EdgeEnergy(String),
    #[error("quadrature path passes too close to a zero of Xi or a lattice point")]
    PathPole,
    #[error("integration path passes within 1e-3 of a branch point at {0}")]
    BranchAmbiguity(String),
    #[error("base point is not a root of Q (|Q(E0)| = {0:e})")]
    BadBasepoint(f64),
    #[error("no pole-free ODE path found")]
    PolePath,
    #[error("numerical method did not converge: {0}")]
    NonConvergence(String),
    #[error("Bethe roots collide or hit the lattice: {0}")]
    Collision(String),
    #[error("Newton iteration diverged; best residual {0:e}")]
    Divergence(f64),
    #[error("P_2(E) = E^2 - 3 g2 vanishes (|P_2| = {0:e})")]
    SingularP2(f64),
    #[error("pair-term addition identity failed validation: max error {0:e}")]
    IdentityValidationFailed(f64),
    #[error("N = 1 cross-check mismatch: {0}")]
    MismatchFailure(String),
    #[error("sample point too close to a pole: {0}")]
    SamplePole(String),
    #[error("unsupported output format {0}")]
    UnsupportedFormat(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
}
