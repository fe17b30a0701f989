//! Maps between finite convex geometries.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::convexity::{ConvexGeometry, Poset};
use crate::formula::{OneStep, UnknownLetter, Valuation};
use crate::semantics::{AbstractModel, ConditionalModel};
use crate::worldset::WorldSet;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("map does not match the ground sets it is used with")]
    GroundSetMismatch,
    #[error("world `{0}` is not in the ground set")]
    UnknownWorld(String),
    #[error("world `{0}` has no image")]
    Unmapped(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
}

impl From<UnknownLetter> for MorphismError {
    fn from(e: UnknownLetter) -> Self {
        MorphismError::UnknownLetter(e.0)
    }
}

/// A total function between two labeled ground sets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointMap {
    source: Vec<String>,
    target: Vec<String>,
    image: Vec<usize>,
}

impl fmt::Debug for PointMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.image.iter().enumerate().map(|(i, &j)| (&self.source[i], &self.target[j])))
            .finish()
    }
}

impl PointMap {
    /// `image[i]` is the target index of source world `i`.
    pub fn new(source: Vec<String>, target: Vec<String>, image: Vec<usize>) -> Result<PointMap, MorphismError> {
        if image.len() != source.len() {
            return Err(MorphismError::GroundSetMismatch);
        }
        if image.iter().any(|&j| j >= target.len()) {
            return Err(MorphismError::GroundSetMismatch);
        }
        Ok(PointMap { source, target, image })
    }

    /// Builds a map from name pairs; every source world must be mapped.
    pub fn from_names(
        source: Vec<String>,
        target: Vec<String>,
        pairs: &BTreeMap<String, String>,
    ) -> Result<PointMap, MorphismError> {
        for key in pairs.keys() {
            if !source.contains(key) {
                return Err(MorphismError::UnknownWorld(key.clone()));
            }
        }
        let image = source
            .iter()
            .map(|w| {
                let t = pairs.get(w).ok_or_else(|| MorphismError::Unmapped(w.clone()))?;
                target
                    .iter()
                    .position(|u| u == t)
                    .ok_or_else(|| MorphismError::UnknownWorld(t.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PointMap { source, target, image })
    }

    pub fn identity(worlds: Vec<String>) -> PointMap {
        let image = (0..worlds.len()).collect();
        PointMap {
            source: worlds.clone(),
            target: worlds,
            image,
        }
    }

    pub fn source(&self) -> &[String] {
        &self.source
    }

    pub fn target(&self) -> &[String] {
        &self.target
    }

    pub fn apply(&self, world: usize) -> usize {
        self.image[world]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    /// The map as source name to target name.
    pub fn to_names(&self) -> BTreeMap<String, String> {
        self.image
            .iter()
            .enumerate()
            .map(|(i, &j)| (self.source[i].clone(), self.target[j].clone()))
            .collect()
    }

    pub fn preimage(&self, set: &WorldSet) -> WorldSet {
        WorldSet::from_indices(
            self.source.len(),
            (0..self.source.len()).filter(|&i| set.contains(self.image[i])),
        )
    }

    /// `{u | every preimage of u lies in set}`.
    pub fn universal_image(&self, set: &WorldSet) -> WorldSet {
        let mut out = WorldSet::full(self.target.len());
        for (i, &j) in self.image.iter().enumerate() {
            if !set.contains(i) {
                out.remove(j);
            }
        }
        out
    }

    /// The direct image.
    pub fn existential_image(&self, set: &WorldSet) -> WorldSet {
        WorldSet::from_indices(self.target.len(), set.iter().map(|i| self.image[i]))
    }

    /// `then ∘ self`.
    pub fn compose(&self, then: &PointMap) -> Result<PointMap, MorphismError> {
        if self.target != then.source {
            return Err(MorphismError::GroundSetMismatch);
        }
        Ok(PointMap {
            source: self.source.clone(),
            target: then.target.clone(),
            image: self.image.iter().map(|&j| then.image[j]).collect(),
        })
    }

    /// Pulls a valuation on the target back along the map.
    pub fn pull_back(&self, valuation: &Valuation) -> Valuation {
        valuation
            .iter()
            .map(|(letter, set)| (letter.clone(), self.preimage(set)))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismVerdict {
    Morphism,
    Strong,
    /// `∀f(convex)` is not convex in the target.
    NotMorphism { convex: WorldSet, image: WorldSet },
    /// A target convex set that no `∀f(C)` produces.
    NotStrong { missing: WorldSet },
}

impl MorphismVerdict {
    pub fn is_morphism(&self) -> bool {
        matches!(self, MorphismVerdict::Morphism | MorphismVerdict::Strong | MorphismVerdict::NotStrong { .. })
    }

    pub fn is_strong(&self) -> bool {
        matches!(self, MorphismVerdict::Strong)
    }
}

fn check_grounds(f: &PointMap, src: &[String], tgt: &[String]) -> Result<(), MorphismError> {
    if f.source != src || f.target != tgt {
        return Err(MorphismError::GroundSetMismatch);
    }
    Ok(())
}

pub fn check_morphism(
    f: &PointMap,
    src: &ConvexGeometry,
    tgt: &ConvexGeometry,
    strong: bool,
) -> Result<MorphismVerdict, MorphismError> {
    check_grounds(f, src.worlds(), tgt.worlds())?;
    let mut reached = std::collections::HashSet::new();
    for c in src.sets() {
        let image = f.universal_image(c);
        if !tgt.is_convex(&image) {
            return Ok(MorphismVerdict::NotMorphism { convex: c.clone(), image });
        }
        reached.insert(image);
    }
    if !strong {
        return Ok(MorphismVerdict::Morphism);
    }
    match tgt.sets().iter().find(|d| !reached.contains(*d)) {
        Some(d) => Ok(MorphismVerdict::NotStrong { missing: d.clone() }),
        None => Ok(MorphismVerdict::Strong),
    }
}

/// The result of removing the worlds that lie in every convex set.
#[derive(Clone, Debug)]
pub struct Elimination {
    pub model: AbstractModel,
    /// Inclusion of the surviving worlds into the original ground set.
    pub inclusion: PointMap,
    pub impossible: WorldSet,
    /// Every world was impossible; the result has an empty ground set.
    pub empty_result: bool,
}

pub fn eliminate_impossible(m: &AbstractModel) -> Elimination {
    let g = m.geometry();
    let impossible = g.impossible();
    let keep = impossible.complement();
    let kept = keep.to_vec();
    let geometry = g.relative(&keep);
    let valuation = m
        .valuation()
        .iter()
        .map(|(letter, set)| {
            let restricted = WorldSet::from_indices(kept.len(), (0..kept.len()).filter(|&k| set.contains(kept[k])));
            (letter.clone(), restricted)
        })
        .collect();
    let inclusion = PointMap {
        source: geometry.worlds().to_vec(),
        target: g.worlds().to_vec(),
        image: kept.clone(),
    };
    Elimination {
        model: AbstractModel::new(geometry, valuation).expect("restricted valuation has the right width"),
        inclusion,
        empty_result: kept.is_empty(),
        impossible,
    }
}

/// The back conditions on a map between partial orders.
///
/// The first condition characterizes morphisms between the upset
/// convexities, the second (checked when `strong` is set) strong ones.
pub fn poset_back_condition(f: &PointMap, src: &Poset, tgt: &Poset, strong: bool) -> Result<bool, MorphismError> {
    check_grounds(f, src.elements(), tgt.elements())?;
    let n = src.len();
    let back = (0..n).all(|w| {
        (0..tgt.len())
            .filter(|&u2| tgt.leq(u2, f.apply(w)))
            .all(|u2| (0..n).any(|u| src.leq(u, w) && f.apply(u) == u2))
    });
    if !back || !strong {
        return Ok(back);
    }
    Ok((0..tgt.len()).all(|u| {
        (0..n).any(|w| f.apply(w) == u && (0..n).filter(|&w2| src.leq(w2, w)).all(|w2| tgt.leq(f.apply(w2), u)))
    }))
}

/// One row of a truth comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruthRow {
    pub formula: OneStep,
    pub source: bool,
    pub target: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TruthReport {
    pub rows: Vec<TruthRow>,
}

impl TruthReport {
    pub fn discrepancies(&self) -> impl Iterator<Item = &TruthRow> {
        self.rows.iter().filter(|r| r.source != r.target)
    }

    pub fn is_consistent(&self) -> bool {
        self.discrepancies().next().is_none()
    }
}

/// Checks `V(p) = f⁻¹(V'(p))` for every letter of either valuation.
pub fn check_valuation_law(f: &PointMap, source: &Valuation, target: &Valuation) -> Result<(), MorphismError> {
    for letter in source.keys().chain(target.keys()) {
        let (Some(v), Some(v2)) = (source.get(letter), target.get(letter)) else {
            return Err(MorphismError::PreconditionFailed(format!(
                "letter `{letter}` is valued in only one model"
            )));
        };
        if *v != f.preimage(v2) {
            return Err(MorphismError::PreconditionFailed(format!(
                "valuation of `{letter}` is not the preimage of its target valuation"
            )));
        }
    }
    Ok(())
}

/// Evaluates every formula in both models; no precondition checks.
pub fn truth_table(
    source: &impl ConditionalModel,
    target: &impl ConditionalModel,
    formulas: &[OneStep],
) -> Result<TruthReport, MorphismError> {
    let rows = formulas
        .iter()
        .map(|f| {
            Ok(TruthRow {
                formula: f.clone(),
                source: source.holds(f)?,
                target: target.holds(f)?,
            })
        })
        .collect::<Result<Vec<_>, MorphismError>>()?;
    Ok(TruthReport { rows })
}

/// Evaluates each formula in `m` and in `m2`, after checking that `f` is a
/// strong morphism of models from `m` to `m2`.
pub fn compare_truth(
    f: &PointMap,
    m: &AbstractModel,
    m2: &AbstractModel,
    formulas: &[OneStep],
) -> Result<TruthReport, MorphismError> {
    let verdict = check_morphism(f, m.geometry(), m2.geometry(), true)?;
    if !verdict.is_strong() {
        return Err(MorphismError::PreconditionFailed(format!("map is not a strong morphism: {verdict:?}")));
    }
    check_valuation_law(f, m.valuation(), m2.valuation())?;
    truth_table(m, m2, formulas)
}
