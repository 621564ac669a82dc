use thiserror::Error;

use crate::linalg::MatrixQ;
use crate::module::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("weight {weight}: dimension must be positive")]
    NonPositiveDim { weight: Weight },
    #[error("weight {weight}: e map has shape {found:?}, expected {expected:?}")]
    EShape {
        weight: Weight,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("weight {weight}: f map has shape {found:?}, expected {expected:?}")]
    FShape {
        weight: Weight,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("weight {weight}: ef - fe differs from {weight}·Id, residual {residual:?}")]
    Relation { weight: Weight, residual: MatrixQ },
    #[error("highest weight {highest_weight}: negative multiplicity {value}")]
    NegativeMultiplicity { highest_weight: Weight, value: i64 },
    #[error("weight dimensions are not those of an sl(2)-module: multiplicities cover {covered} of {total} dimensions")]
    NotSymmetric { covered: usize, total: usize },
    #[error("weight {weight}: hom has shape {found:?}, expected {expected:?}")]
    HomShape {
        weight: Weight,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("hom has weight shift {found}, expected {expected}")]
    HomShift { expected: i64, found: i64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiltrationError {
    #[error("multiplicity table entry c[{level}][{highest_weight}] = {value} is negative")]
    NegativeMultiplicity {
        level: i64,
        highest_weight: i64,
        value: i64,
    },
    #[error("graded piece at level {level} does not extend to an sl(2)-module")]
    NoGExtension { level: i64 },
    #[error("fixed-point filtration and rank formula disagree at level {level}, weight {weight}: {fixed_point} vs {formula}")]
    CrossCheck {
        level: i64,
        weight: Weight,
        fixed_point: usize,
        formula: usize,
    },
    #[error("saturation from ranks ({from_ranks}) disagrees with the filtration ({from_filtration})")]
    SaturationMismatch { from_ranks: i64, from_filtration: i64 },
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("betti vector has length {found}, expected manifold dimension + 1 = {expected}")]
    BettiLength { expected: usize, found: usize },
    #[error("ring must be connected: betti[0] = {0}")]
    NotConnected(usize),
    #[error("degree {degree}: {found} labels for betti number {expected}")]
    LabelCount {
        degree: usize,
        expected: usize,
        found: usize,
    },
    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown basis label {0:?}")]
    UnknownLabel(String),
    #[error("unknown class {0:?}")]
    UnknownClass(String),
    #[error("product {a} * {b}: output labels span several degrees or the wrong degree")]
    ProductDegree { a: String, b: String },
    #[error("products {a} * {b} and {b} * {a} contradict graded commutativity")]
    Contradiction { a: String, b: String },
    #[error("product table for degrees ({p}, {q}) has wrong shape")]
    TableShape { p: usize, q: usize },
    #[error("orientation must be a functional on degree {degree}")]
    OrientationShape { degree: usize },
    #[error("unit fails: 1 * {0} != {0}")]
    Unit(String),
    #[error("graded commutativity fails for ({a}, {b})")]
    Commutativity { a: String, b: String },
    #[error("associativity fails for ({a}, {b}, {c})")]
    Associativity { a: String, b: String, c: String },
    #[error("Poincare pairing between degrees {degree} and {complement} is degenerate")]
    Degenerate { degree: usize, complement: usize },
    #[error("class {name:?} has degree {found}, expected {expected}")]
    ClassDegree {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("symplectic data needs even manifold dimension, got {0}")]
    OddDimension(usize),
    #[error("top power of the symplectic class pairs to zero with the orientation")]
    DegenerateTopPower,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("bracket index out of range: ({i}, {j}) for dimension {dim}")]
    BracketIndex { i: usize, j: usize, dim: usize },
    #[error("bracket [X{i}, X{j}] must have i < j")]
    BracketOrder { i: usize, j: usize },
    #[error("Jacobi identity fails for (X{i}, X{j}, X{k})")]
    Jacobi { i: usize, j: usize, k: usize },
    #[error("Lie algebra is not nilpotent")]
    NotNilpotent,
    #[error("2-form {0} is not closed")]
    NotClosed(String),
    #[error("top cohomology has dimension {0}, expected 1")]
    NotUnimodular(usize),
    #[error("blowup needs dim M + 2k = 2N with k >= 2; got dim M = {manifold_dim}, k = {k}, N = {ambient}")]
    BlowupDimensions {
        manifold_dim: usize,
        k: usize,
        ambient: usize,
    },
    #[error("unknown catalog entry {name:?}; available: {available}")]
    UnknownCatalogEntry { name: String, available: String },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("base must be connected: base_betti[0] = {0}")]
    BaseNotConnected(usize),
    #[error("start page must be at least 2, got {0}")]
    StartPage(usize),
    #[error("forced start page {0} is beyond what the available arguments license (2..=4)")]
    UnlicensedStartPage(usize),
    #[error("tensor filtration law violated: E2 jumps ({e2_lo}, {e2_hi}) vs fiber ({lo}, {hi})")]
    TensorLaw {
        e2_lo: i64,
        e2_hi: i64,
        lo: i64,
        hi: i64,
    },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Filtration(#[from] FiltrationError),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// Errors raised while reading or writing the JSON file formats.
#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid weight key {0:?}")]
    WeightKey(String),
    #[error("field {0}")]
    Field(String),
    #[error("unrecognized file: expected a b-module, g-module, ring or Lie algebra document")]
    UnknownDocument,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}
