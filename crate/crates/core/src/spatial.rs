// SPDX-License-Identifier: Apache-2.0

//! Exact k-d tree over point positions and the per-frame density profile.
//!
//! Neighbor queries exclude the query point itself. Distances are always
//! produced by [`crate::model::distance`], and neighbor distance lists are
//! summed in ascending order, so any other implementation following the same
//! arithmetic reproduces the values bitwise.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::model::{squared_distance, PointCloud};
use crate::par;

const LEAF_SIZE: usize = 12;

#[derive(Debug, Clone)]
pub(crate) struct Node {
    pub lo: [f64; 3],
    pub hi: [f64; 3],
    pub start: usize,
    pub end: usize,
    /// Child node ids; `None` for leaves.
    pub children: Option<(usize, usize)>,
}

impl Node {
    /// Squared distance from `q` to this node's bounding box.
    #[inline]
    pub fn min_squared_distance(&self, q: &[f64; 3]) -> f64 {
        let mut acc = 0.0;
        for ((&v, &lo), &hi) in q.iter().zip(&self.lo).zip(&self.hi) {
            let delta = if v < lo {
                lo - v
            } else if v > hi {
                v - hi
            } else {
                0.0
            };
            acc += delta * delta;
        }
        acc
    }
}

/// Balanced 3-d tree answering exact nearest-neighbor queries.
#[derive(Debug, Clone)]
pub struct SpatialIndex {
    positions: Vec<[f64; 3]>,
    /// Point ids, permuted so that every node covers a contiguous range.
    order: Vec<usize>,
    nodes: Vec<Node>,
}

/// Neighbor found by a query: squared distance and source index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Neighbor {
    pub squared_distance: f64,
    pub index: usize,
}

impl Neighbor {
    pub fn distance(&self) -> f64 {
        self.squared_distance.sqrt()
    }

    fn cmp_key(&self, other: &Self) -> Ordering {
        self.squared_distance
            .total_cmp(&other.squared_distance)
            .then(self.index.cmp(&other.index))
    }
}

impl SpatialIndex {
    pub fn build(cloud: &PointCloud) -> Result<Self> {
        Self::from_positions(cloud.positions())
    }

    pub fn from_positions(positions: Vec<[f64; 3]>) -> Result<Self> {
        if positions.is_empty() {
            return Err(Error::EmptyCloud);
        }
        let mut index = SpatialIndex {
            order: (0..positions.len()).collect(),
            positions,
            nodes: Vec::new(),
        };
        index.build_node(0, index.positions.len());
        Ok(index)
    }

    fn build_node(&mut self, start: usize, end: usize) -> usize {
        let (lo, hi) = self.bounds(start, end);
        let id = self.nodes.len();
        self.nodes.push(Node {
            lo,
            hi,
            start,
            end,
            children: None,
        });
        let dim = (0..3)
            .max_by(|&a, &b| (hi[a] - lo[a]).total_cmp(&(hi[b] - lo[b])))
            .unwrap_or(0);
        if end - start <= LEAF_SIZE || hi[dim] <= lo[dim] {
            return id;
        }
        let mid = start + (end - start) / 2;
        let positions = &self.positions;
        self.order[start..end].select_nth_unstable_by(mid - start, |&a, &b| {
            positions[a][dim].total_cmp(&positions[b][dim]).then(a.cmp(&b))
        });
        let left = self.build_node(start, mid);
        let right = self.build_node(mid, end);
        self.nodes[id].children = Some((left, right));
        id
    }

    fn bounds(&self, start: usize, end: usize) -> ([f64; 3], [f64; 3]) {
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for &i in &self.order[start..end] {
            let p = &self.positions[i];
            for d in 0..3 {
                lo[d] = lo[d].min(p[d]);
                hi[d] = hi[d].max(p[d]);
            }
        }
        (lo, hi)
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn positions(&self) -> &[[f64; 3]] {
        &self.positions
    }

    pub(crate) fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub(crate) fn node_points(&self, node: &Node) -> &[usize] {
        &self.order[node.start..node.end]
    }

    /// The `k` nearest points to `query`, ascending by distance, skipping
    /// `exclude`. Returns fewer than `k` when the index is smaller.
    pub fn nearest(&self, query: &[f64; 3], k: usize, exclude: Option<usize>) -> Vec<Neighbor> {
        let mut best: Vec<Neighbor> = Vec::with_capacity(k + 1);
        if k > 0 {
            self.nearest_rec(0, query, k, exclude, &mut best);
        }
        best
    }

    fn nearest_rec(&self, node_id: usize, q: &[f64; 3], k: usize, exclude: Option<usize>, best: &mut Vec<Neighbor>) {
        let node = &self.nodes[node_id];
        match node.children {
            None => {
                for &i in &self.order[node.start..node.end] {
                    if Some(i) == exclude {
                        continue;
                    }
                    let cand = Neighbor {
                        squared_distance: squared_distance(q, &self.positions[i]),
                        index: i,
                    };
                    if best.len() == k {
                        if cand.cmp_key(&best[k - 1]) != Ordering::Less {
                            continue;
                        }
                        best.pop();
                    }
                    let at = best.binary_search_by(|b| b.cmp_key(&cand)).unwrap_or_else(|e| e);
                    best.insert(at, cand);
                }
            }
            Some((left, right)) => {
                let dl = self.nodes[left].min_squared_distance(q);
                let dr = self.nodes[right].min_squared_distance(q);
                let (first, d_first, second, d_second) = if dl <= dr {
                    (left, dl, right, dr)
                } else {
                    (right, dr, left, dl)
                };
                for (child, d) in [(first, d_first), (second, d_second)] {
                    if best.len() == k && d > best[k - 1].squared_distance {
                        continue;
                    }
                    self.nearest_rec(child, q, k, exclude, best);
                }
            }
        }
    }

    /// Distances from point `query_index` to its `k` nearest other points,
    /// ascending. Fewer than `k` are returned when `N - 1 < k`.
    pub fn neighbor_distances(&self, query_index: usize, k: usize) -> Vec<f64> {
        self.nearest(&self.positions[query_index], k, Some(query_index))
            .iter()
            .map(Neighbor::distance)
            .collect()
    }

    /// Number of other points within `radius` (inclusive) of point `query_index`.
    pub fn count_within(&self, query_index: usize, radius: f64) -> usize {
        let q = self.positions[query_index];
        let r2 = radius * radius;
        let mut count = 0;
        let mut stack = vec![0usize];
        while let Some(id) = stack.pop() {
            let node = &self.nodes[id];
            if node.min_squared_distance(&q) > r2 {
                continue;
            }
            match node.children {
                Some((l, r)) => {
                    stack.push(l);
                    stack.push(r);
                }
                None => {
                    count += self.order[node.start..node.end]
                        .iter()
                        .filter(|&&i| i != query_index && squared_distance(&q, &self.positions[i]) <= r2)
                        .count();
                }
            }
        }
        count
    }
}

/// Mean of an ascending distance list, summed in list order.
pub(crate) fn mean_ascending(distances: &[f64]) -> f64 {
    distances.iter().sum::<f64>() / distances.len() as f64
}

/// Mean distance from point `query_index` to its `k` nearest other points.
/// When fewer than `k` others exist, the mean runs over all of them.
pub fn knn_mean_distance(index: &SpatialIndex, query_index: usize, k: usize) -> Result<f64> {
    if index.len() < 2 {
        return Err(Error::EmptyNeighborhood(index.len()));
    }
    if k == 0 {
        return Err(Error::InvalidParams("K must be at least 1".into()));
    }
    if query_index >= index.len() {
        return Err(Error::InvalidParams(format!(
            "query index {query_index} out of range for {} points",
            index.len()
        )));
    }
    Ok(mean_ascending(&index.neighbor_distances(query_index, k)))
}

/// Local average distance `ad` of every point and their mean `mu`.
///
/// Despite the usual "density" wording, both are distances in meters:
/// a smaller `ad` means a denser neighborhood.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityProfile {
    pub ad: Vec<f64>,
    pub mu: f64,
}

pub fn density_profile(index: &SpatialIndex, k: usize) -> Result<DensityProfile> {
    if index.len() < 2 {
        return Err(Error::EmptyNeighborhood(index.len()));
    }
    if k == 0 {
        return Err(Error::InvalidParams("K must be at least 1".into()));
    }
    let ad = par::map_indices(index.len(), |i| mean_ascending(&index.neighbor_distances(i, k)));
    // sequential index-order sum keeps mu independent of the worker schedule
    let mu = ad.iter().sum::<f64>() / ad.len() as f64;
    Ok(DensityProfile { ad, mu })
}
