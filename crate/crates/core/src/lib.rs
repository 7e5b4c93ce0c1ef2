//! Exact symbolic computations in extended affine Hecke algebras with
//! unequal parameters.
//!
//! The crate builds the extended affine Weyl group of an arbitrary finite
//! root datum, the associated Hecke algebra over a ring of multi-parameter
//! Laurent polynomials, the polynomial module realizing the spherical
//! subalgebra, and the Satake correspondence between the two. On top of
//! that sit generalized Hall-Littlewood polynomials, Demazure characters,
//! and the construction of the Kazhdan-Lusztig basis elements of the
//! spherical subalgebra, each returned with a machine-checkable
//! certificate (self-duality, unitriangularity, positivity of the lower
//! coefficients).
//!
//! All arithmetic is exact: Laurent polynomials over the integers, string
//! expansions instead of rational functions, and integer linear algebra
//! for the lattice computations. Independent brute-force oracles
//! (Freudenthal weight multiplicities, character-theoretic tensor
//! decomposition, the equal-parameter orbit-sum formula, a generic
//! Kazhdan-Lusztig recursion) are kept separate from the production code
//! paths and drive the `verify` command and the test suite.
//!
//! Batch computations (certificate grids, verification sweeps) run in
//! parallel via `rayon` when the default `parallel` feature is enabled and
//! fall back to sequential iteration otherwise.

pub mod affine_weyl;
pub mod algebra;
pub mod batch;
pub mod cli;
pub mod coeff_ring;
pub mod hecke;
pub mod intlin;
pub mod oracles;
pub mod poly_rep;
pub mod root_datum;
pub mod spherical_kl;

pub use algebra::{Algebra, Specialization};
pub use root_datum::{Coweight, RootDatum, RootVec};

/// Errors produced by datum validation, parsing, and the theorem checks.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("label conflict on parameter class {{{class}}}: labels {labels:?} disagree")]
    LabelConflict { class: String, labels: Vec<String> },
    #[error("unsupported datum: {0}")]
    Unsupported(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("{0}")]
    Usage(String),
    #[error("internal invariant failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Bundled example data, also shipped under `data/` for CLI use.
pub mod data {
    use crate::root_datum::RootDatum;

    pub const GL2: &str = include_str!("../data/gl2.datum");
    pub const GL3: &str = include_str!("../data/gl3.datum");
    pub const SP2: &str = include_str!("../data/sp2.datum");
    pub const SP4: &str = include_str!("../data/sp4.datum");
    pub const G2: &str = include_str!("../data/g2.datum");

    pub fn gl2() -> RootDatum {
        RootDatum::parse(GL2).expect("bundled datum")
    }
    pub fn gl3() -> RootDatum {
        RootDatum::parse(GL3).expect("bundled datum")
    }
    pub fn sp2() -> RootDatum {
        RootDatum::parse(SP2).expect("bundled datum")
    }
    pub fn sp4() -> RootDatum {
        RootDatum::parse(SP4).expect("bundled datum")
    }
    pub fn g2() -> RootDatum {
        RootDatum::parse(G2).expect("bundled datum")
    }

    /// All bundled data with their conventional names.
    pub fn all() -> Vec<(&'static str, RootDatum)> {
        vec![
            ("gl2", gl2()),
            ("gl3", gl3()),
            ("sp2", sp2()),
            ("sp4", sp4()),
            ("g2", g2()),
        ]
    }
}
