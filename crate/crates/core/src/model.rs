// SPDX-License-Identifier: Apache-2.0

//! Value types shared by every stage: points, frames, filter parameters and
//! the kept/outlier partition a filter produces.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A single LiDAR return. Coordinates are in meters in the sensor frame,
/// `z` is height. Intensity is carried exactly as stored by the sensor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub intensity: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64, z: f64, intensity: f64) -> Self {
        Point { x, y, z, intensity }
    }

    #[inline]
    pub fn position(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite() && self.intensity.is_finite()
    }
}

/// Euclidean range from the sensor origin.
#[inline]
pub fn sensor_distance(p: &Point) -> f64 {
    (p.x * p.x + p.y * p.y + p.z * p.z).sqrt()
}

/// Euclidean distance between two positions. Every distance in the crate
/// goes through this function so that independent code paths agree bitwise.
#[inline]
pub fn distance(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    squared_distance(a, b).sqrt()
}

#[inline]
pub fn squared_distance(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    let dz = a[2] - b[2];
    dx * dx + dy * dy + dz * dz
}

/// One frame of returns with optional per-point semantic class ids.
///
/// Point order is stable: index `n` names the same return in every
/// partition, labeling and report derived from this frame.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PointCloud {
    points: Vec<Point>,
    labels: Option<Vec<u32>>,
}

impl PointCloud {
    /// Builds a frame, rejecting any non-finite coordinate or intensity.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if let Some(index) = points.iter().position(|p| !p.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(PointCloud { points, labels: None })
    }

    pub fn with_labels(points: Vec<Point>, labels: Vec<u32>) -> Result<Self> {
        let mut cloud = PointCloud::new(points)?;
        cloud.set_labels(labels)?;
        Ok(cloud)
    }

    pub fn set_labels(&mut self, labels: Vec<u32>) -> Result<()> {
        if labels.len() != self.points.len() {
            return Err(Error::LengthMismatch {
                expected: self.points.len(),
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(())
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn labels(&self) -> Option<&[u32]> {
        self.labels.as_deref()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn positions(&self) -> Vec<[f64; 3]> {
        self.points.iter().map(Point::position).collect()
    }

    pub fn intensities(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.intensity)
    }

    /// Multiplies every intensity by `factor`. Used at load time when a
    /// dataset stores intensity on a different scale than the filter expects.
    pub fn rescale_intensity(&mut self, factor: f64) -> Result<()> {
        if !factor.is_finite() || factor < 0.0 {
            return Err(Error::InvalidParams(format!(
                "intensity scale must be finite and non-negative, got {factor}"
            )));
        }
        for p in &mut self.points {
            p.intensity *= factor;
        }
        Ok(())
    }

    pub fn into_parts(self) -> (Vec<Point>, Option<Vec<u32>>) {
        (self.points, self.labels)
    }
}

/// How the stage-1 height threshold constants are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
#[derive(Default)]
pub enum HeightMode {
    /// Per frame: `h1 = max(d) / 2`, `h2 = min(z) - 1`.
    #[default]
    Adaptive,
    /// Constants fixed for every frame.
    Fixed { h1: f64, h2: f64 },
}

impl HeightMode {
    pub const FIXED_H1: f64 = 100.0;
    pub const FIXED_H2: f64 = -5.0;

    /// `H = 100 / d - 5`.
    pub const fn fixed_default() -> Self {
        HeightMode::Fixed {
            h1: Self::FIXED_H1,
            h2: Self::FIXED_H2,
        }
    }
}

/// Parameters of the dynamic multi-threshold filter and its cluster rescue.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DmnrParams {
    /// Neighbor count for the local average distance.
    pub k: usize,
    /// Aggressiveness multiplier on the exponential range term.
    pub k1: f64,
    /// Range growth rate of the exponential term, 1/m.
    pub k2: f64,
    /// Weight of intensity in the dynamic threshold.
    pub k3: f64,
    /// Number of clusters whose outliers are rescued.
    pub h: usize,
    pub height_mode: HeightMode,
}

impl Default for DmnrParams {
    fn default() -> Self {
        DmnrParams {
            k: 10,
            k1: 0.015,
            k2: 0.055,
            k3: 100.0,
            h: 5,
            height_mode: HeightMode::Adaptive,
        }
    }
}

impl DmnrParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidParams(what.to_string()));
        if self.k == 0 {
            return bad("K must be at least 1");
        }
        if !(self.k1.is_finite() && self.k1 > 0.0) {
            return bad("k1 must be positive");
        }
        if !(self.k2.is_finite() && self.k2 > 0.0) {
            return bad("k2 must be positive");
        }
        if !(self.k3.is_finite() && self.k3 >= 0.0) {
            return bad("k3 must be non-negative");
        }
        if let HeightMode::Fixed { h1, h2 } = self.height_mode {
            if !h1.is_finite() || !h2.is_finite() {
                return bad("fixed height constants must be finite");
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Kept,
    Outlier,
}

/// Which rule decided a point's verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StageTag {
    HeightRetained,
    DensityRetained,
    DensityRejected,
    Rescued,
}

impl StageTag {
    pub fn verdict(self) -> Verdict {
        match self {
            StageTag::DensityRejected => Verdict::Outlier,
            _ => Verdict::Kept,
        }
    }

    pub(crate) fn code(self) -> u8 {
        match self {
            StageTag::HeightRetained => 1,
            StageTag::DensityRetained => 2,
            StageTag::DensityRejected => 3,
            StageTag::Rescued => 4,
        }
    }

    pub(crate) fn from_code(code: u8) -> Option<Self> {
        match code {
            1 => Some(StageTag::HeightRetained),
            2 => Some(StageTag::DensityRetained),
            3 => Some(StageTag::DensityRejected),
            4 => Some(StageTag::Rescued),
            _ => None,
        }
    }
}

/// Split of a frame into kept points F and outliers O, in point order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    verdicts: Vec<Verdict>,
    tags: Option<Vec<StageTag>>,
}

impl Partition {
    pub fn from_verdicts(verdicts: Vec<Verdict>) -> Self {
        Partition { verdicts, tags: None }
    }

    /// Verdicts are derived from the tags, so the two can never disagree.
    pub fn from_tags(tags: Vec<StageTag>) -> Self {
        Partition {
            verdicts: tags.iter().map(|t| t.verdict()).collect(),
            tags: Some(tags),
        }
    }

    pub fn from_kept_mask(kept: &[bool]) -> Self {
        Partition::from_verdicts(
            kept.iter()
                .map(|&k| if k { Verdict::Kept } else { Verdict::Outlier })
                .collect(),
        )
    }

    pub fn verdicts(&self) -> &[Verdict] {
        &self.verdicts
    }

    pub fn tags(&self) -> Option<&[StageTag]> {
        self.tags.as_deref()
    }

    pub fn len(&self) -> usize {
        self.verdicts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verdicts.is_empty()
    }

    pub fn is_kept(&self, index: usize) -> bool {
        self.verdicts[index] == Verdict::Kept
    }

    pub fn kept_count(&self) -> usize {
        self.verdicts.iter().filter(|&&v| v == Verdict::Kept).count()
    }

    pub fn outlier_count(&self) -> usize {
        self.len() - self.kept_count()
    }

    pub fn kept_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.verdicts
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == Verdict::Kept)
            .map(|(i, _)| i)
    }

    /// Marks `index` as kept with the `Rescued` tag.
    pub(crate) fn rescue(&mut self, index: usize) {
        self.verdicts[index] = Verdict::Kept;
        if let Some(tags) = self.tags.as_mut() {
            tags[index] = StageTag::Rescued;
        }
    }
}
