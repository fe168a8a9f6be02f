//! Exact-arithmetic engine for K-stability invariants of 3-dimensional
//! log Fano pairs with reducible boundary.
//!
//! Everything is computed over the rationals: intersection numbers,
//! Zariski decompositions along rays, volume integrals, beta-invariants,
//! Abban-Zhuang refinements and coefficient-region scans. Floating point
//! appears only in the numeric cross-check oracles and the SVG emitter.

pub mod arith;
pub mod geom;
pub mod zariski;
pub mod stability;
pub mod az;
pub mod catalog;
pub mod scan;
pub mod oracle;
pub mod emit;
pub mod verify;

use thiserror::Error;

/// Errors surfaced by the engine. Every precondition violation names the
/// condition that failed.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("configuration error: {0}")]
    Configuration(String),
    #[error("class is not pseudo-effective")]
    NotPseudoEffective,
    #[error("class is not ample")]
    NotAmple,
    #[error("pair is outside the body of ample angles")]
    NotLogFano,
    #[error("canonical class is nef: not uniruled-type input")]
    CanonicalNef,
    #[error("interval outside the domain of the piecewise function")]
    DomainError,
    #[error("unknown case id `{0}`")]
    UnknownCase(String),
    #[error("unknown divisor label `{0}`")]
    UnknownDivisor(String),
    #[error("unknown center `{0}`")]
    UnknownCenter(String),
    #[error("parameter out of range: {0}")]
    ParamRange(String),
    #[error("movable cone certification missing: refinement hypothesis not certified")]
    MovNotCertified,
    #[error("case is not of product type")]
    NotProductType,
    #[error("missing center data for case `{0}`")]
    MissingCenterData(String),
    #[error("invalid case document: {0}")]
    InvalidDocument(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
