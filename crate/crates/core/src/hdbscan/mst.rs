// SPDX-License-Identifier: Apache-2.0

//! Exact minimum spanning tree of the mutual reachability graph.
//!
//! Borůvka rounds: every point asks the k-d tree for its cheapest edge into
//! another component, each component keeps its cheapest candidate, and the
//! candidates are merged. Subtrees lying entirely inside the query's own
//! component, or whose reachability lower bound is no better than the
//! current candidate, are skipped.

use std::cmp::Ordering;

use super::union_find::UnionFind;
use crate::model::distance;
use crate::par;
use crate::spatial::SpatialIndex;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MstEdge {
    pub a: usize,
    pub b: usize,
    pub weight: f64,
}

impl MstEdge {
    fn new(a: usize, b: usize, weight: f64) -> Self {
        MstEdge {
            a: a.min(b),
            b: a.max(b),
            weight,
        }
    }

    /// Total order on edges: weight, then endpoint ids.
    pub(crate) fn cmp_key(&self, other: &Self) -> Ordering {
        self.weight
            .total_cmp(&other.weight)
            .then(self.a.cmp(&other.a))
            .then(self.b.cmp(&other.b))
    }
}

#[inline]
pub fn mutual_reachability(core_a: f64, core_b: f64, dist: f64) -> f64 {
    core_a.max(core_b).max(dist)
}

const MIXED: usize = usize::MAX;

/// MST edges sorted by [`MstEdge::cmp_key`].
pub(crate) fn mutual_reachability_mst(index: &SpatialIndex, core: &[f64]) -> Vec<MstEdge> {
    let n = index.len();
    let nodes = index.nodes();
    // nodes are stored in preorder, so children always follow their parent
    let mut node_min_core = vec![f64::INFINITY; nodes.len()];
    for id in (0..nodes.len()).rev() {
        node_min_core[id] = match nodes[id].children {
            Some((l, r)) => node_min_core[l].min(node_min_core[r]),
            None => index
                .node_points(&nodes[id])
                .iter()
                .map(|&i| core[i])
                .fold(f64::INFINITY, f64::min),
        };
    }

    let mut uf = UnionFind::new(n);
    let mut edges: Vec<MstEdge> = Vec::with_capacity(n.saturating_sub(1));
    let mut component = vec![0usize; n];
    let mut node_component = vec![MIXED; nodes.len()];

    while edges.len() + 1 < n {
        for (i, c) in component.iter_mut().enumerate() {
            *c = uf.find(i);
        }
        for id in (0..nodes.len()).rev() {
            node_component[id] = match nodes[id].children {
                Some((l, r)) if node_component[l] == node_component[r] => node_component[l],
                Some(_) => MIXED,
                None => {
                    let pts = index.node_points(&nodes[id]);
                    let first = component[pts[0]];
                    if pts.iter().all(|&p| component[p] == first) {
                        first
                    } else {
                        MIXED
                    }
                }
            };
        }

        let candidates = par::map_indices(n, |q| {
            nearest_foreign(index, core, &component, &node_component, &node_min_core, q)
        });

        let mut best: Vec<Option<MstEdge>> = vec![None; n];
        for (q, cand) in candidates.into_iter().enumerate() {
            let Some(edge) = cand else { continue };
            let slot = &mut best[component[q]];
            if slot.is_none_or(|b| edge.cmp_key(&b) == Ordering::Less) {
                *slot = Some(edge);
            }
        }
        let mut round: Vec<MstEdge> = best.into_iter().flatten().collect();
        round.sort_by(MstEdge::cmp_key);
        round.dedup_by(|a, b| a.a == b.a && a.b == b.b);
        let before = edges.len();
        for e in round {
            if uf.union(e.a, e.b).is_some() {
                edges.push(e);
            }
        }
        debug_assert!(edges.len() > before, "Borůvka round made no progress");
    }
    edges.sort_by(MstEdge::cmp_key);
    edges
}

fn nearest_foreign(
    index: &SpatialIndex,
    core: &[f64],
    component: &[usize],
    node_component: &[usize],
    node_min_core: &[f64],
    q: usize,
) -> Option<MstEdge> {
    let nodes = index.nodes();
    let positions = index.positions();
    let pq = &positions[q];
    let cq = component[q];
    let mut best_w = f64::INFINITY;
    let mut best_p = usize::MAX;
    let mut stack = vec![0usize];
    while let Some(id) = stack.pop() {
        if node_component[id] == cq {
            continue;
        }
        let node = &nodes[id];
        let bound = mutual_reachability(core[q], node_min_core[id], node.min_squared_distance(pq).sqrt());
        if bound >= best_w {
            continue;
        }
        match node.children {
            Some((l, r)) => {
                let dl = nodes[l].min_squared_distance(pq);
                let dr = nodes[r].min_squared_distance(pq);
                // push the farther child first so the nearer one is popped next
                if dl <= dr {
                    stack.push(r);
                    stack.push(l);
                } else {
                    stack.push(l);
                    stack.push(r);
                }
            }
            None => {
                for &p in index.node_points(node) {
                    if component[p] == cq {
                        continue;
                    }
                    let w = mutual_reachability(core[q], core[p], distance(pq, &positions[p]));
                    if w < best_w {
                        best_w = w;
                        best_p = p;
                    }
                }
            }
        }
    }
    (best_p != usize::MAX).then(|| MstEdge::new(q, best_p, best_w))
}
