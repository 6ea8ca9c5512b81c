use thiserror::Error;

/// Errors surfaced by the lattice, polynomial and point-counting layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("gram matrix is not symmetric at ({0},{1})")]
    NotSymmetric(usize, usize),
    #[error("gram matrix is not square: row {0} has length {1}, expected {2}")]
    NotSquare(usize, usize, usize),
    #[error("gram matrix is singular")]
    SingularGram,
    #[error("lattice has odd diagonal entry at index {0}; quadratic form is not defined mod 2Z")]
    OddDiagonal(usize),
    #[error("induced form is not positive definite; vector enumeration would not terminate")]
    NotPositiveDefinite,
    #[error("sublattice basis is not linearly independent")]
    DependentBasis,
    #[error("gauss sum phase {0} is not within tolerance of a multiple of 2*pi/8")]
    MilgramPhase(f64),
    #[error("gauss sum modulus {0} differs from sqrt(|A|) = {1}; malformed quadratic form")]
    MilgramModulus(f64, f64),
    #[error("tau = {0} is not an admissible component index")]
    InadmissibleTau(i64),
    #[error("expected exactly one surviving candidate, found {0}")]
    CandidateCount(usize),

    #[error("pfaffian requires even size, got {0}")]
    OddPfaffianSize(usize),
    #[error("polynomial has degree {0} > 2 in the fiber variables")]
    FiberDegreeTooHigh(u32),
    #[error("determinant vanishes identically; degenerate quadric bundle")]
    DegenerateBundle,
    #[error("leading principal minor {0} vanishes; symmetric elimination pivot is zero")]
    VanishingPivotMinor(usize),
    #[error("minor m{0} vanishes identically; quaternion symbol is undefined")]
    VanishingSymbolMinor(usize),
    #[error("polynomial is zero where a nonzero one is required: {0}")]
    ZeroPolynomial(&'static str),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable {0:?}; allowed variables are x, y, z, u, v, w, s, t")]
    UnknownVariable(String),
    #[error("prime {0} divides every coefficient of a partial derivative")]
    PrimeKillsPartial(u64),
    #[error("polynomial vanishes identically mod {0}")]
    ZeroModP(u64),
    #[error("restriction to the conic vanishes identically; the conic lies in the zero locus")]
    ConicContained,
    #[error("parametrization (s:t) -> (st, s^2, -t^2) does not lie on the given conic")]
    BadConic,

    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("operation requires odd characteristic")]
    EvenCharacteristic,
    #[error("field size {0}^{1} exceeds the table-driven limit")]
    FieldTooLarge(u64, u32),
    #[error("expected degree {0}, got {1}")]
    WrongDegree(u32, u32),
    #[error("need exactly 11 traces, got {0}")]
    TraceCount(usize),
    #[error("no characteristic polynomial candidate survives; counts are inconsistent")]
    NoCharpolyCandidate,
    #[error("both functional-equation signs survive; counts underdetermine the polynomial")]
    AmbiguousCharpoly,
    #[error("reduction mod {0} is singular; refusing to count points on a bad fiber")]
    BadReduction(u64),
    #[error("depth n = {0} requires the explicit deep flag")]
    DeepRequired(u32),

    #[error("fixture {0:?} is not known")]
    UnknownFixture(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
