//! # equicount
//!
//! Exact-arithmetic counting of arithmetic objects — coprime ideal pairs,
//! quadratic-irrational orbits, representations by binary quadratic, Hermitian
//! and Hamiltonian forms — together with the machinery to compare the counts
//! and the empirical distributions of the associated points against their
//! known leading-order constants and limit densities.
//!
//! The crate is organised around five arithmetic layers and two service
//! layers:
//!
//! * [`arith`] — totients, Kronecker characters, certified `zeta`/`L` values,
//!   Pell-Fermat fundamental solutions, automorphs of indefinite forms;
//! * [`qfield`] — imaginary quadratic fields: integers, units, fractional
//!   ideals in Hermite normal form, residues, `phi_K`, norm-ball enumeration;
//! * [`quat`] — Hamilton quaternions over `Q` with the Hurwitz maximal order:
//!   lattices, unimodular pairs, Dieudonne determinants, translation lengths;
//! * [`mertens`] — Mertens-type counting functions and Farey-type point
//!   generators over `Z`, `O_K` and the Hurwitz order;
//! * [`quadirr`] — quadratic irrationals over `Q` and over an imaginary
//!   quadratic field: complexities, orbits, traces, relative heights,
//!   perpendicular feet, crossratios, norm-form windows;
//! * [`forms`] — binary quadratic / Hermitian / Hamiltonian forms: action,
//!   representation counts, orbit enumeration;
//! * [`stats`] — empirical measures, target densities, power-law fits and the
//!   catalogue of theoretical constants;
//! * [`experiment`] — the batch runner behind the `equicount` binary.
//!
//! Everything that can be exact is exact: counts are integers obtained from
//! complete enumerations of finite sets, thresholds are rationals, and
//! floating point appears only in regulators, L-values (with certified error
//! bounds) and empirical-measure summaries.
//!
//! Each major capability has a runnable demonstration under `examples/`; see
//! the README for the list.

pub mod arith;
pub mod experiment;
pub mod forms;
pub mod mertens;
pub mod qfield;
pub mod quadirr;
pub mod quat;
pub mod stats;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("only s = 2 and s = 3 are supported, got {0}")]
    UnsupportedExponent(u32),
    #[error("Pell-Fermat discriminant must be a positive non-square = 0,1 mod 4, got {0}")]
    BadPellDiscriminant(i128),
    #[error("form ({a}, {b}, {c}) is not indefinite with non-square discriminant")]
    NotIndefinite { a: i128, b: i128, c: i128 },
    #[error("form ({a}, {b}, {c}) is not primitive")]
    ImprimitiveForm { a: i128, b: i128, c: i128 },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("ideal generated by the zero element")]
    ZeroIdeal,
    #[error("sublattice is not contained in the ambient ideal")]
    NotASubIdeal,
    #[error("iteration cap of {cap} steps exceeded")]
    IterationCap { cap: u64 },
    #[error("discriminant {0} is not a fundamental imaginary quadratic discriminant")]
    BadFieldDiscriminant(i64),
    #[error("mismatched base fields: {0} vs {1}")]
    FieldMismatch(i64, i64),
    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(i128),
    #[error("quadratic polynomial is reducible over the base field")]
    ReduciblePolynomial,
    #[error("no automorph found within entry bound {bound}")]
    NoAutomorphWithinBound { bound: i128 },
    #[error("window touches a root of the quadratic polynomial")]
    WindowTouchesRoot,
    #[error("window has zero target mass")]
    ZeroTargetMass,
    #[error("saturation cap exceeded after {rounds} doubling rounds")]
    SaturationExceeded { rounds: u32 },
    #[error("operation requires a norm-Euclidean imaginary quadratic field, got D_K = {0}")]
    NotEuclidean(i64),
    #[error("form has the wrong definiteness for this operation")]
    WrongDefiniteness,
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("power-law fit needs at least {need} samples with positive counts")]
    FitNeedsSamples { need: usize },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
