// SPDX-License-Identifier: Apache-2.0

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{check_size, hdbscan_with_index, ClusterLabeling, HdbscanParams};
use crate::error::{Error, Result};
use crate::filter::{dmnr_with_index, DmnrRun, Filter};
use crate::model::{DmnrParams, Partition, PointCloud};
use crate::spatial::SpatialIndex;

/// How clusters are ranked for rescue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RescueRanking {
    /// Absolute number of kept members.
    #[default]
    KeptCount,
    /// Share of the cluster's members that are kept.
    KeptFraction,
}

#[derive(Debug, Clone, Copy)]
struct ClusterTally {
    id: usize,
    kept: usize,
    total: usize,
}

impl ClusterTally {
    fn rank(&self, other: &Self, ranking: RescueRanking) -> Ordering {
        let primary = match ranking {
            RescueRanking::KeptCount => other.kept.cmp(&self.kept),
            RescueRanking::KeptFraction => {
                // kept_o / total_o vs kept_s / total_s without rounding
                (other.kept as u128 * self.total as u128).cmp(&(self.kept as u128 * other.total as u128))
            }
        };
        primary
            .then(other.kept.cmp(&self.kept))
            .then(other.total.cmp(&self.total))
            .then(self.id.cmp(&other.id))
    }
}

/// Moves outliers back to the kept set when they belong to one of the `h`
/// clusters holding the most kept points. Kept points never become outliers
/// and noise-labelled points are never rescued. Clusters with no kept member
/// are not candidates.
pub fn rescue(cloud: &PointCloud, partition: &Partition, labeling: &ClusterLabeling, h: usize) -> Result<Partition> {
    rescue_ranked(cloud, partition, labeling, h, RescueRanking::KeptCount)
}

pub fn rescue_ranked(
    cloud: &PointCloud,
    partition: &Partition,
    labeling: &ClusterLabeling,
    h: usize,
    ranking: RescueRanking,
) -> Result<Partition> {
    for found in [partition.len(), labeling.len()] {
        if found != cloud.len() {
            return Err(Error::LengthMismatch {
                expected: cloud.len(),
                found,
            });
        }
    }
    let mut out = partition.clone();
    if h == 0 {
        return Ok(out);
    }
    let mut tallies: Vec<ClusterTally> = (0..labeling.cluster_count)
        .map(|id| ClusterTally { id, kept: 0, total: 0 })
        .collect();
    for (i, &label) in labeling.labels.iter().enumerate() {
        if label < 0 {
            continue;
        }
        let t = tallies
            .get_mut(label as usize)
            .ok_or_else(|| Error::InvalidParams(format!("cluster id {label} out of range")))?;
        t.total += 1;
        if partition.is_kept(i) {
            t.kept += 1;
        }
    }
    tallies.retain(|t| t.kept > 0);
    tallies.sort_by(|a, b| a.rank(b, ranking));
    let mut selected = vec![false; labeling.cluster_count];
    for t in tallies.iter().take(h) {
        selected[t.id] = true;
    }
    for (i, &label) in labeling.labels.iter().enumerate() {
        if label >= 0 && selected[label as usize] && !partition.is_kept(i) {
            out.rescue(i);
        }
    }
    Ok(out)
}

/// Intermediate results of a DMNR-H pass.
#[derive(Debug, Clone)]
pub struct DmnrHRun {
    pub dmnr: DmnrRun,
    /// `None` when there was nothing to rescue and clustering was skipped.
    pub labeling: Option<ClusterLabeling>,
    pub partition: Partition,
}

/// DMNR followed by clustering of the full raw frame and rescue of the
/// top `params.h` clusters.
pub fn dmnr_h(cloud: &PointCloud, params: &DmnrParams, hparams: &HdbscanParams) -> Result<Partition> {
    dmnr_h_run(cloud, params, hparams, RescueRanking::KeptCount).map(|r| r.partition)
}

pub fn dmnr_h_run(
    cloud: &PointCloud,
    params: &DmnrParams,
    hparams: &HdbscanParams,
    ranking: RescueRanking,
) -> Result<DmnrHRun> {
    params.validate()?;
    hparams.validate()?;
    if cloud.is_empty() {
        return Err(Error::EmptyCloud);
    }
    check_size(cloud.len(), hparams)?;
    if cloud.len() <= hparams.min_samples {
        return Err(Error::EmptyNeighborhood(cloud.len()));
    }
    let index = SpatialIndex::build(cloud)?;
    let run = dmnr_with_index(cloud, &index, params)?;
    if params.h == 0 || run.partition.outlier_count() == 0 {
        return Ok(DmnrHRun {
            partition: run.partition.clone(),
            dmnr: run,
            labeling: None,
        });
    }
    let labeling = hdbscan_with_index(&index, hparams)?;
    let partition = rescue_ranked(cloud, &run.partition, &labeling, params.h, ranking)?;
    Ok(DmnrHRun {
        dmnr: run,
        labeling: Some(labeling),
        partition,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DmnrH {
    pub params: DmnrParams,
    pub hdbscan: HdbscanParams,
    pub ranking: RescueRanking,
}

impl Filter for DmnrH {
    fn name(&self) -> &'static str {
        "dmnr-h"
    }

    fn apply(&self, cloud: &PointCloud) -> Result<Partition> {
        dmnr_h_run(cloud, &self.params, &self.hdbscan, self.ranking).map(|r| r.partition)
    }
}
