// SPDX-License-Identifier: Apache-2.0

//! Cluster hierarchy: single-linkage dendrogram, condensed tree, and
//! excess-of-mass cluster selection.

use super::mst::MstEdge;
use super::union_find::UnionFind;

/// Distances below this are treated as this value when converted to a
/// density level `lambda = 1 / distance`, keeping stabilities finite.
const MIN_LEVEL_DISTANCE: f64 = 1e-12;

/// Dendrogram merge; node `n + i` is produced by merge `i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Merge {
    pub left: usize,
    pub right: usize,
    pub distance: f64,
    pub size: usize,
}

/// `edges` must be sorted ascending.
pub(crate) fn single_linkage(n: usize, edges: &[MstEdge]) -> Vec<Merge> {
    let mut uf = UnionFind::new(n);
    // dendrogram node currently representing each union-find root
    let mut node_of: Vec<usize> = (0..n).collect();
    let mut size_of = vec![1usize; n];
    let mut merges = Vec::with_capacity(edges.len());
    for (i, e) in edges.iter().enumerate() {
        let (ra, rb) = (uf.find(e.a), uf.find(e.b));
        let (left, right) = (node_of[ra], node_of[rb]);
        let size = size_of[ra] + size_of[rb];
        let root = uf.union(ra, rb).expect("MST edge closes a cycle");
        node_of[root] = n + i;
        size_of[root] = size;
        merges.push(Merge {
            left,
            right,
            distance: e.weight,
            size,
        });
    }
    merges
}

fn lambda(distance: f64) -> f64 {
    1.0 / distance.max(MIN_LEVEL_DISTANCE)
}

/// Row of the condensed tree. `child < n` is a point leaving `parent`;
/// otherwise `child` is a cluster born from `parent`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct CondensedRow {
    pub parent: usize,
    pub child: usize,
    pub lambda: f64,
    pub size: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct CondensedTree {
    pub n: usize,
    pub rows: Vec<CondensedRow>,
    /// Cluster ids run from `n` (root) to `n + cluster_count - 1`, parents
    /// before children.
    pub cluster_count: usize,
}

impl CondensedTree {
    pub fn root(&self) -> usize {
        self.n
    }
}

pub(crate) fn condense(n: usize, merges: &[Merge], min_cluster_size: usize) -> CondensedTree {
    let mut rows = Vec::new();
    if merges.is_empty() {
        // a single point: it leaves the root immediately
        if n == 1 {
            rows.push(CondensedRow {
                parent: 1,
                child: 0,
                lambda: lambda(0.0),
                size: 1,
            });
        }
        return CondensedTree {
            n,
            rows,
            cluster_count: 1,
        };
    }
    let size = |node: usize| if node < n { 1 } else { merges[node - n].size };
    let top = n + merges.len() - 1;
    let mut label = vec![usize::MAX; top + 1];
    label[top] = n;
    let mut next_label = n + 1;

    let emit_points = |rows: &mut Vec<CondensedRow>, from: usize, parent: usize, lam: f64| {
        let mut stack = vec![from];
        while let Some(node) = stack.pop() {
            if node < n {
                rows.push(CondensedRow {
                    parent,
                    child: node,
                    lambda: lam,
                    size: 1,
                });
            } else {
                let m = &merges[node - n];
                stack.push(m.right);
                stack.push(m.left);
            }
        }
    };

    let mut queue = std::collections::VecDeque::from([top]);
    while let Some(node) = queue.pop_front() {
        if node < n {
            // a lone point reached by continuing a cluster
            continue;
        }
        let m = merges[node - n];
        let current = label[node];
        let lam = lambda(m.distance);
        let (ls, rs) = (size(m.left), size(m.right));
        let big_left = ls >= min_cluster_size;
        let big_right = rs >= min_cluster_size;
        if m.distance <= 0.0 || (!big_left && !big_right) {
            // coincident points cannot be separated; everything drops out here
            emit_points(&mut rows, m.left, current, lam);
            emit_points(&mut rows, m.right, current, lam);
        } else if big_left && big_right {
            for (child, s) in [(m.left, ls), (m.right, rs)] {
                label[child] = next_label;
                rows.push(CondensedRow {
                    parent: current,
                    child: next_label,
                    lambda: lam,
                    size: s,
                });
                next_label += 1;
                queue.push_back(child);
            }
        } else {
            let (keep, drop) = if big_left { (m.left, m.right) } else { (m.right, m.left) };
            emit_points(&mut rows, drop, current, lam);
            label[keep] = current;
            if keep < n {
                emit_points(&mut rows, keep, current, lam);
            } else {
                queue.push_back(keep);
            }
        }
    }
    CondensedTree {
        n,
        rows,
        cluster_count: next_label - n,
    }
}

/// Selected clusters (condensed-tree ids, ascending) and per-point labels
/// as indices into that list, or `-1` for noise.
pub(crate) fn extract_clusters(tree: &CondensedTree) -> (Vec<usize>, Vec<i32>) {
    let n = tree.n;
    let count = tree.cluster_count;
    let root = tree.root();
    let idx = |c: usize| c - n;

    let mut birth = vec![0.0f64; count];
    let mut parent = vec![usize::MAX; count];
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); count];
    for row in tree.rows.iter().filter(|r| r.child >= n) {
        birth[idx(row.child)] = row.lambda;
        parent[idx(row.child)] = row.parent;
        children[idx(row.parent)].push(row.child);
    }
    let mut stability = vec![0.0f64; count];
    for row in &tree.rows {
        let p = idx(row.parent);
        stability[p] += (row.lambda - birth[p]) * row.size as f64;
    }

    let mut selected = vec![false; count];
    if count == 1 {
        // nothing ever split off the root: the whole frame is one cluster
        selected[0] = true;
    } else {
        // children have larger ids than parents, so walk ids downwards
        for c in (1..count).rev() {
            let subtree: f64 = children[c].iter().map(|&ch| stability[idx(ch)]).sum();
            if !children[c].is_empty() && subtree > stability[c] {
                stability[c] = subtree;
            } else {
                selected[c] = true;
                let mut stack: Vec<usize> = children[c].clone();
                while let Some(d) = stack.pop() {
                    selected[idx(d)] = false;
                    stack.extend_from_slice(&children[idx(d)]);
                }
            }
        }
    }

    // nearest selected ancestor (or self) of every cluster
    let mut owner = vec![None; count];
    for c in 0..count {
        owner[c] = if selected[c] {
            Some(c)
        } else if c == 0 {
            None
        } else {
            owner[idx(parent[c])]
        };
    }
    let clusters: Vec<usize> = (0..count).filter(|&c| selected[c]).map(|c| c + n).collect();
    let mut id_of = vec![-1i32; count];
    for (k, &c) in clusters.iter().enumerate() {
        id_of[idx(c)] = k as i32;
    }

    let root_max_lambda = tree
        .rows
        .iter()
        .filter(|r| r.parent == root)
        .map(|r| r.lambda)
        .fold(f64::NEG_INFINITY, f64::max);
    let mut labels = vec![-1i32; n];
    for row in tree.rows.iter().filter(|r| r.child < n) {
        labels[row.child] = match owner[idx(row.parent)] {
            Some(0) => {
                // root as cluster: only points persisting to its densest level
                if row.lambda >= root_max_lambda {
                    id_of[0]
                } else {
                    -1
                }
            }
            Some(c) => id_of[c],
            None => -1,
        };
    }
    (clusters, labels)
}
