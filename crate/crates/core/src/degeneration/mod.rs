//! Gröbner families, the valuation pipeline, the semigroup-algebra embedding
//! and degenerations by projection.

mod embed;
mod family;
mod pipeline;
mod projection;

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use thiserror::Error;

use crate::groebner::GroebnerError;
use crate::intlat::LatticeError;
use crate::polycore::{Convention, PolyError};
use crate::toric::ToricError;

pub use embed::{embed_value_semigroup, DimCheck, EmbeddingReport};
pub use family::{family_ideal, fiber, FamilyIdeal};
pub use pipeline::{value_semigroup, valuation_pipeline, PipelineReport};
pub use projection::{hilbert_witness, projection_limit, ProjectionReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegenError {
    #[error("no subset of variables is independent, finite and standard")]
    NoIndependentSubset,
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("ideal is not homogeneous")]
    NotHomogeneous,
    #[error("value semigroup is not generated in degree one")]
    NotDegreeOneGenerated,
    #[error("{0}")]
    InvalidArgument(String),
    #[error("computation cancelled")]
    Cancelled,
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Toric(#[from] ToricError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Settings shared by the pipeline and the embedding.
#[derive(Clone, Debug)]
pub struct DegenOptions {
    pub convention: Convention,
    /// Largest degree `m` compared in Hilbert-function checks.
    pub degree_bound: i64,
    /// Checked between the Gröbner computations of a pipeline.
    pub cancel: Option<Arc<AtomicBool>>,
}

impl Default for DegenOptions {
    fn default() -> Self {
        DegenOptions {
            convention: Convention::Min,
            degree_bound: 8,
            cancel: None,
        }
    }
}

impl DegenOptions {
    fn check(&self) -> Result<(), DegenError> {
        match &self.cancel {
            Some(flag) if flag.load(Ordering::Relaxed) => Err(DegenError::Cancelled),
            _ => Ok(()),
        }
    }
}
