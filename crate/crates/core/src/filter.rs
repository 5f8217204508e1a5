// SPDX-License-Identifier: Apache-2.0

//! Two-stage dynamic multi-threshold filter plus the classical statistical
//! and radius outlier removal baselines.
//!
//! Stage 1 keeps every point whose height exceeds a range-dependent
//! threshold `H = h1 / d + h2`. Stage 2 keeps a remaining point only if its
//! local average distance `ad` is below `T = mu * (k1 * exp(k2 * d) + k3 * i) * d`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{sensor_distance, DmnrParams, HeightMode, Partition, PointCloud, StageTag};
use crate::par;
use crate::spatial::{density_profile, DensityProfile, SpatialIndex};

/// Lower bound on range in the height threshold division, meters.
pub const RANGE_EPSILON: f64 = 1e-6;

/// A point-cloud filter producing a kept/outlier partition.
///
/// Other range-adaptive filters can be added by implementing this trait.
pub trait Filter: Sync {
    fn name(&self) -> &'static str;
    fn apply(&self, cloud: &PointCloud) -> Result<Partition>;
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeightParams {
    pub h1: f64,
    pub h2: f64,
}

pub fn height_params(cloud: &PointCloud, mode: HeightMode) -> Result<HeightParams> {
    if cloud.is_empty() {
        return Err(Error::EmptyCloud);
    }
    Ok(match mode {
        HeightMode::Fixed { h1, h2 } => HeightParams { h1, h2 },
        HeightMode::Adaptive => {
            let (max_d, min_z) = cloud
                .points()
                .iter()
                .fold((f64::NEG_INFINITY, f64::INFINITY), |(d, z), p| {
                    (d.max(sensor_distance(p)), z.min(p.z))
                });
            HeightParams {
                h1: max_d / 2.0,
                h2: min_z - 1.0,
            }
        }
    })
}

#[inline]
pub fn height_threshold(d: f64, hp: HeightParams) -> f64 {
    hp.h1 / d.max(RANGE_EPSILON) + hp.h2
}

#[inline]
pub fn dynamic_threshold(mu: f64, d: f64, intensity: f64, params: &DmnrParams) -> f64 {
    mu * (params.k1 * (params.k2 * d).exp() + params.k3 * intensity) * d
}

/// Everything a DMNR pass computed, for callers that want to inspect
/// thresholds as well as verdicts.
#[derive(Debug, Clone)]
pub struct DmnrRun {
    pub partition: Partition,
    pub profile: DensityProfile,
    pub height: HeightParams,
}

/// Runs the filter on a frame. Output order matches input order.
pub fn dmnr(cloud: &PointCloud, params: &DmnrParams) -> Result<Partition> {
    dmnr_run(cloud, params).map(|run| run.partition)
}

pub fn dmnr_run(cloud: &PointCloud, params: &DmnrParams) -> Result<DmnrRun> {
    params.validate()?;
    if cloud.is_empty() {
        return Err(Error::EmptyCloud);
    }
    let index = SpatialIndex::build(cloud)?;
    dmnr_with_index(cloud, &index, params)
}

pub(crate) fn dmnr_with_index(cloud: &PointCloud, index: &SpatialIndex, params: &DmnrParams) -> Result<DmnrRun> {
    // ad and mu cover every point, including the ones stage 1 will keep
    let profile = density_profile(index, params.k)?;
    let height = height_params(cloud, params.height_mode)?;
    let points = cloud.points();
    let tags = par::map_indices(points.len(), |n| {
        let p = &points[n];
        let d = sensor_distance(p);
        if p.z > height_threshold(d, height) {
            StageTag::HeightRetained
        } else if profile.ad[n] < dynamic_threshold(profile.mu, d, p.intensity, params) {
            StageTag::DensityRetained
        } else {
            StageTag::DensityRejected
        }
    });
    Ok(DmnrRun {
        partition: Partition::from_tags(tags),
        profile,
        height,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Dmnr(pub DmnrParams);

impl Filter for Dmnr {
    fn name(&self) -> &'static str {
        "dmnr"
    }

    fn apply(&self, cloud: &PointCloud) -> Result<Partition> {
        dmnr(cloud, &self.0)
    }
}

/// Statistical outlier removal: keep a point when its mean neighbor distance
/// is within `alpha` population standard deviations above the frame mean.
pub fn sor_baseline(cloud: &PointCloud, k: usize, alpha: f64) -> Result<Partition> {
    if alpha.is_nan() {
        return Err(Error::InvalidParams("alpha must not be NaN".into()));
    }
    if cloud.is_empty() {
        return Err(Error::EmptyCloud);
    }
    let index = SpatialIndex::build(cloud)?;
    let profile = density_profile(&index, k)?;
    let ad = &profile.ad;
    let (lo, hi) = ad.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &a| {
        (lo.min(a), hi.max(a))
    });
    if lo == hi {
        return Ok(Partition::from_kept_mask(&vec![true; ad.len()]));
    }
    let var = ad.iter().map(|a| (a - profile.mu).powi(2)).sum::<f64>() / ad.len() as f64;
    let limit = alpha * var.sqrt();
    let kept: Vec<bool> = ad.iter().map(|a| a - profile.mu <= limit).collect();
    Ok(Partition::from_kept_mask(&kept))
}

/// Radius outlier removal: keep a point with at least `min_neighbors` other
/// points within `radius`.
pub fn ror_baseline(cloud: &PointCloud, radius: f64, min_neighbors: usize) -> Result<Partition> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::InvalidParams("radius must be positive".into()));
    }
    if cloud.is_empty() {
        return Err(Error::EmptyCloud);
    }
    if min_neighbors == 0 {
        return Ok(Partition::from_kept_mask(&vec![true; cloud.len()]));
    }
    let index = SpatialIndex::build(cloud)?;
    let kept = par::map_indices(cloud.len(), |i| index.count_within(i, radius) >= min_neighbors);
    Ok(Partition::from_kept_mask(&kept))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sor {
    pub k: usize,
    pub alpha: f64,
}

impl Default for Sor {
    fn default() -> Self {
        Sor { k: 10, alpha: 1.0 }
    }
}

impl Filter for Sor {
    fn name(&self) -> &'static str {
        "sor"
    }

    fn apply(&self, cloud: &PointCloud) -> Result<Partition> {
        sor_baseline(cloud, self.k, self.alpha)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ror {
    pub radius: f64,
    pub min_neighbors: usize,
}

impl Default for Ror {
    fn default() -> Self {
        Ror {
            radius: 0.5,
            min_neighbors: 3,
        }
    }
}

impl Filter for Ror {
    fn name(&self) -> &'static str {
        "ror"
    }

    fn apply(&self, cloud: &PointCloud) -> Result<Partition> {
        ror_baseline(cloud, self.radius, self.min_neighbors)
    }
}
