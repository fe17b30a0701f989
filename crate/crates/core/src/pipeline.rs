//! From an abstract model to a plane model satisfying the same formulas.
//!
//! Impossible worlds are removed, the rest of the geometry is decomposed into
//! chains and placed in the plane. Composing the placement with the
//! inclusion of the possible worlds gives a strong morphism from the plane
//! points onto the original geometry, along which the valuation is pulled
//! back.

use thiserror::Error;

use crate::formula::OneStep;
use crate::morphism::{eliminate_impossible, Elimination, MorphismError, PointMap, TruthReport};
use crate::planar::{compare_plane_truth, embed, verify_embedding, Embedding, EmbeddingError, EmbeddingFailure, PlaneModel};
use crate::semantics::{AbstractModel, ConditionalModel};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error("composed map is not a strong morphism: {0:?}")]
    Verification(EmbeddingFailure),
}

#[derive(Clone, Debug)]
pub struct PipelineRun {
    pub elimination: Elimination,
    pub embedding: Embedding,
    /// The embedded points with the pulled-back valuation.
    pub plane: PlaneModel,
    /// Sends each point to the world of the input model it represents.
    pub map: PointMap,
}

impl PipelineRun {
    /// Truth of each formula in the plane model and in `m`.
    pub fn compare(&self, m: &AbstractModel, formulas: &[OneStep]) -> Result<TruthReport, MorphismError> {
        compare_plane_truth(&self.map, &self.plane, m, formulas)
    }
}

pub fn run_pipeline(m: &AbstractModel, precision: u64) -> Result<PipelineRun, PipelineError> {
    let elimination = eliminate_impossible(m);
    let embedding = embed(elimination.model.geometry(), None, precision)?;
    let map = embedding
        .owner
        .compose(&elimination.inclusion)
        .expect("owner map lands in the possible worlds");
    let plane = embedding
        .model
        .with_valuation(map.pull_back(m.valuation()))
        .expect("pulled-back valuation covers every point");
    verify_embedding(m.geometry(), &plane, &map).map_err(PipelineError::Verification)?;
    Ok(PipelineRun {
        elimination,
        embedding,
        plane,
        map,
    })
}
