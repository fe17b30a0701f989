//! The record printed by `embed`.

use condgeo::morphism::TruthReport;
use condgeo::pipeline::PipelineRun;
use condgeo::planar::format_rational;
use condgeo::{AbstractModel, ParsedFormula};
use serde::Serialize;

use crate::model_file::ModelFile;

#[derive(Clone, Debug, Serialize)]
pub struct CertifiedPoint {
    pub id: String,
    pub x: String,
    pub y: String,
    /// The input world this point stands for.
    pub world: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TruthEntry {
    pub formula: String,
    pub plane: bool,
    pub model: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub input: ModelFile,
    /// Worlds in every convex set, dropped before decomposing.
    pub impossible: Vec<String>,
    /// Chains over the remaining worlds, bottom to top.
    pub chains: Vec<Vec<String>>,
    pub directions: Vec<[String; 2]>,
    pub safety: String,
    pub precision: u64,
    pub points: Vec<CertifiedPoint>,
    pub verification: String,
    pub truth: Vec<TruthEntry>,
}

impl Certificate {
    /// Built from a pipeline run, which only exists once verification passed.
    pub fn new(m: &AbstractModel, run: &PipelineRun, report: &TruthReport) -> Certificate {
        let worlds = m.geometry().worlds();
        let kept = run.elimination.model.geometry().worlds();
        let embedding = &run.embedding;
        Certificate {
            input: ModelFile::from_abstract(m),
            impossible: m.geometry().names_of(&run.elimination.impossible),
            chains: embedding.chains.iter().map(|c| c.names(kept)).collect(),
            directions: embedding
                .directions
                .iter()
                .map(|d| [format_rational(&d.x), format_rational(&d.y)])
                .collect(),
            safety: format_rational(&embedding.safety),
            precision: embedding.precision,
            points: run
                .plane
                .ids()
                .iter()
                .zip(run.plane.points())
                .enumerate()
                .map(|(i, (id, p))| CertifiedPoint {
                    id: id.clone(),
                    x: format_rational(&p.x),
                    y: format_rational(&p.y),
                    world: worlds[run.map.apply(i)].clone(),
                })
                .collect(),
            verification: "pass".into(),
            truth: report
                .rows
                .iter()
                .map(|row| TruthEntry {
                    formula: ParsedFormula::from(row.formula.clone()).to_string(),
                    plane: row.source,
                    model: row.target,
                })
                .collect(),
        }
    }
}
