use thiserror::Error;

/// Errors raised by the library. Every fallible public entry point returns this type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {position}: expected {expected}")]
    Parse { position: usize, expected: String },

    #[error("invalid group specification: {0}")]
    InvalidSpec(String),

    #[error("invalid root datum: {0}")]
    InvalidDatum(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("vector is not in the lattice")]
    NotInLattice,

    #[error("ill-defined homomorphism: {0}")]
    IllDefinedHom(String),

    #[error("invalid fundamental group element: {0}")]
    InvalidDelta(String),

    #[error("unknown family preset `{0}`")]
    InvalidPreset(String),

    #[error("invalid preset parameters: {0}")]
    InvalidParams(String),

    #[error("unknown theorem `{0}`")]
    UnknownTheorem(String),

    #[error("the curve family has genus 0, which this computation does not cover")]
    GenusZero,

    #[error("wrong genus: {0}")]
    WrongGenus(String),

    #[error("hypotheses of {theorem} not satisfied: {}", missing.join("; "))]
    HypothesisNotSatisfied { theorem: String, missing: Vec<String> },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
