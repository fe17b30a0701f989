//! JSON model files.
//!
//! An abstract file lists the worlds, the convex sets and the valuation:
//!
//! ```json
//! {"worlds": ["a", "b"], "convex": [[], ["b"], ["a", "b"]], "valuation": {"p": ["a"]}}
//! ```
//!
//! A plane file lists labelled points; coordinates are strings such as
//! `"12/5"` or `"2.4"`, or JSON numbers, and are read exactly:
//!
//! ```json
//! {"points": [{"id": "x", "x": "0", "y": 5}], "valuation": {"p": ["x"]}}
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use condgeo::planar::{format_rational, parse_rational};
use condgeo::{AbstractModel, ConvexGeometry, PlaneModel, Point2, Valuation, WorldSet};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbstractFile {
    pub worlds: Vec<String>,
    pub convex: Vec<Vec<String>>,
    #[serde(default)]
    pub valuation: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointEntry {
    pub id: String,
    #[serde(deserialize_with = "rational_text")]
    pub x: String,
    #[serde(deserialize_with = "rational_text")]
    pub y: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaneFile {
    pub points: Vec<PointEntry>,
    #[serde(default)]
    pub valuation: BTreeMap<String, Vec<String>>,
}

/// Accepts a string or a JSON number and keeps its exact text.
fn rational_text<'de, D: serde::Deserializer<'de>>(d: D) -> Result<String, D::Error> {
    match Value::deserialize(d)? {
        Value::String(s) => Ok(s),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(serde::de::Error::custom(format!("expected a rational, found {other}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum ModelFile {
    Abstract(AbstractFile),
    Plane(PlaneFile),
}

/// A loaded and validated model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Model {
    Abstract(AbstractModel),
    Plane(PlaneModel),
}

fn index_set(ids: &[String], names: &[String], what: &str) -> Result<WorldSet> {
    let mut set = WorldSet::empty(ids.len());
    for name in names {
        let i = ids
            .iter()
            .position(|id| id == name)
            .ok_or_else(|| anyhow!("{what} mentions unknown id `{name}`"))?;
        set.insert(i);
    }
    Ok(set)
}

fn load_valuation(ids: &[String], valuation: &BTreeMap<String, Vec<String>>) -> Result<Valuation> {
    valuation
        .iter()
        .map(|(letter, names)| Ok((letter.clone(), index_set(ids, names, &format!("valuation of `{letter}`"))?)))
        .collect()
}

fn save_valuation(ids: &[String], valuation: &Valuation) -> BTreeMap<String, Vec<String>> {
    valuation
        .iter()
        .map(|(letter, set)| (letter.clone(), set.iter().map(|i| ids[i].clone()).collect()))
        .collect()
}

impl ModelFile {
    pub fn from_json(text: &str) -> Result<ModelFile> {
        let value: Value = serde_json::from_str(text).context("model file is not valid JSON")?;
        if value.get("points").is_some() {
            Ok(ModelFile::Plane(serde_json::from_value(value).context("malformed plane model")?))
        } else if value.get("worlds").is_some() {
            Ok(ModelFile::Abstract(serde_json::from_value(value).context("malformed abstract model")?))
        } else {
            bail!("model file needs either `worlds` or `points`")
        }
    }

    pub fn read(path: &Path) -> Result<ModelFile> {
        let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        ModelFile::from_json(&text).with_context(|| format!("in {}", path.display()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model files serialize")
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json() + "\n").with_context(|| format!("cannot write {}", path.display()))
    }

    pub fn to_model(&self) -> Result<Model> {
        match self {
            ModelFile::Abstract(f) => {
                let family = f
                    .convex
                    .iter()
                    .map(|c| index_set(&f.worlds, c, "convex set"))
                    .collect::<Result<Vec<_>>>()?;
                let geometry = ConvexGeometry::validate(f.worlds.clone(), family)?;
                let valuation = load_valuation(&f.worlds, &f.valuation)?;
                Ok(Model::Abstract(AbstractModel::new(geometry, valuation)?))
            }
            ModelFile::Plane(f) => {
                let ids: Vec<String> = f.points.iter().map(|p| p.id.clone()).collect();
                let points = f
                    .points
                    .iter()
                    .map(|p| {
                        let point = Point2::new(parse_rational(&p.x)?, parse_rational(&p.y)?);
                        Ok((p.id.clone(), point))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let valuation = load_valuation(&ids, &f.valuation)?;
                Ok(Model::Plane(PlaneModel::new(points, valuation)?))
            }
        }
    }

    pub fn from_abstract(m: &AbstractModel) -> ModelFile {
        let g = m.geometry();
        ModelFile::Abstract(AbstractFile {
            worlds: g.worlds().to_vec(),
            convex: g.sets().iter().map(|c| g.names_of(c)).collect(),
            valuation: save_valuation(g.worlds(), condgeo::ConditionalModel::valuation(m)),
        })
    }

    pub fn from_plane(m: &PlaneModel) -> ModelFile {
        ModelFile::Plane(PlaneFile {
            points: m
                .ids()
                .iter()
                .zip(m.points())
                .map(|(id, p)| PointEntry {
                    id: id.clone(),
                    x: format_rational(&p.x),
                    y: format_rational(&p.y),
                })
                .collect(),
            valuation: save_valuation(m.ids(), condgeo::ConditionalModel::valuation(m)),
        })
    }
}

impl Model {
    pub fn load(path: &Path) -> Result<Model> {
        ModelFile::read(path)?.to_model().with_context(|| format!("in {}", path.display()))
    }

    pub fn to_file(&self) -> ModelFile {
        match self {
            Model::Abstract(m) => ModelFile::from_abstract(m),
            Model::Plane(m) => ModelFile::from_plane(m),
        }
    }
}
