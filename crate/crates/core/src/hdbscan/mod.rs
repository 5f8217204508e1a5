// SPDX-License-Identifier: Apache-2.0

//! Hierarchical density-based clustering over point positions, and the
//! cluster rescue step that returns misjudged structure points to the kept
//! set.
//!
//! Pipeline: core distances (k-th nearest other point) → exact MST of the
//! mutual reachability graph → single-linkage dendrogram → condensed tree
//! with `min_cluster_size` → excess-of-mass selection. Intensity is not a
//! clustering feature.

mod mst;
mod rescue;
mod tree;
mod union_find;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::PointCloud;
use crate::spatial::SpatialIndex;

pub use mst::{mutual_reachability, MstEdge};
pub use rescue::{dmnr_h, dmnr_h_run, rescue, rescue_ranked, DmnrH, DmnrHRun, RescueRanking};

/// Label of points that belong to no cluster.
pub const NOISE: i32 = -1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HdbscanParams {
    pub min_cluster_size: usize,
    /// Neighbor order of the core distance.
    pub min_samples: usize,
}

impl Default for HdbscanParams {
    fn default() -> Self {
        HdbscanParams {
            min_cluster_size: 50,
            min_samples: 10,
        }
    }
}

impl HdbscanParams {
    pub fn validate(&self) -> Result<()> {
        if self.min_cluster_size < 2 {
            return Err(Error::InvalidParams("min_cluster_size must be at least 2".into()));
        }
        if self.min_samples < 1 {
            return Err(Error::InvalidParams("min_samples must be at least 1".into()));
        }
        Ok(())
    }
}

/// Per-point cluster ids; [`NOISE`] marks unclustered points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterLabeling {
    pub labels: Vec<i32>,
    pub cluster_count: usize,
}

impl ClusterLabeling {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn cluster_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.cluster_count];
        for &l in &self.labels {
            if l >= 0 {
                sizes[l as usize] += 1;
            }
        }
        sizes
    }
}

/// Distance from every point to its `min_samples`-th nearest other point.
pub fn core_distances(index: &SpatialIndex, min_samples: usize) -> Result<Vec<f64>> {
    if min_samples == 0 {
        return Err(Error::InvalidParams("min_samples must be at least 1".into()));
    }
    if index.len() <= min_samples {
        return Err(Error::EmptyNeighborhood(index.len()));
    }
    Ok(crate::par::map_indices(index.len(), |i| {
        *index
            .neighbor_distances(i, min_samples)
            .last()
            .expect("at least min_samples neighbors")
    }))
}

/// Minimum spanning tree of the mutual reachability graph, edges ascending.
pub fn mutual_reachability_mst(index: &SpatialIndex, core: &[f64]) -> Result<Vec<MstEdge>> {
    if core.len() != index.len() {
        return Err(Error::LengthMismatch {
            expected: index.len(),
            found: core.len(),
        });
    }
    Ok(mst::mutual_reachability_mst(index, core))
}

pub fn hdbscan(cloud: &PointCloud, params: &HdbscanParams) -> Result<ClusterLabeling> {
    params.validate()?;
    check_size(cloud.len(), params)?;
    let index = SpatialIndex::build(cloud)?;
    hdbscan_with_index(&index, params)
}

fn check_size(n: usize, params: &HdbscanParams) -> Result<()> {
    if n < params.min_cluster_size {
        return Err(Error::TooFewPoints {
            points: n,
            min_cluster_size: params.min_cluster_size,
        });
    }
    Ok(())
}

pub(crate) fn hdbscan_with_index(index: &SpatialIndex, params: &HdbscanParams) -> Result<ClusterLabeling> {
    params.validate()?;
    check_size(index.len(), params)?;
    let core = core_distances(index, params.min_samples)?;
    let edges = mst::mutual_reachability_mst(index, &core);
    let merges = tree::single_linkage(index.len(), &edges);
    let condensed = tree::condense(index.len(), &merges, params.min_cluster_size);
    let (clusters, labels) = tree::extract_clusters(&condensed);
    Ok(ClusterLabeling {
        labels,
        cluster_count: clusters.len(),
    })
}
