// SPDX-License-Identifier: Apache-2.0

//! Brute-force reference implementations. Nothing here touches the k-d tree,
//! the filter module or the clustering module; only plain value types are
//! shared with the crate under test.

#![allow(dead_code)]

use dmnr::{DmnrParams, HeightMode, Point, PointCloud};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

pub fn dist(a: &Point, b: &Point) -> f64 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    let dz = a.z - b.z;
    (dx * dx + dy * dy + dz * dz).sqrt()
}

/// Sorted distances from point `q` to every other point.
pub fn distance_row(points: &[Point], q: usize) -> Vec<f64> {
    let mut row: Vec<f64> = (0..points.len())
        .filter(|&j| j != q)
        .map(|j| dist(&points[q], &points[j]))
        .collect();
    row.sort_by(f64::total_cmp);
    row
}

/// The `k` smallest entries of the distance row, ascending.
pub fn k_smallest(points: &[Point], q: usize, k: usize) -> Vec<f64> {
    let mut row: Vec<f64> = (0..points.len())
        .filter(|&j| j != q)
        .map(|j| dist(&points[q], &points[j]))
        .collect();
    let k = k.min(row.len());
    if k < row.len() {
        row.select_nth_unstable_by(k, f64::total_cmp);
        row.truncate(k);
    }
    row.sort_by(f64::total_cmp);
    row
}

pub fn brute_ad(points: &[Point], k: usize) -> Vec<f64> {
    (0..points.len())
        .map(|q| {
            let row = k_smallest(points, q, k);
            let mut s = 0.0;
            for d in &row {
                s += d;
            }
            s / row.len() as f64
        })
        .collect()
}

/// Literal two-stage rule over every point. Returns `true` for kept points.
pub fn brute_dmnr(points: &[Point], params: &DmnrParams) -> Vec<bool> {
    let n = points.len();
    let ad = brute_ad(points, params.k);
    let mut total = 0.0;
    for a in &ad {
        total += a;
    }
    let mu = total / n as f64;
    let range = |p: &Point| (p.x * p.x + p.y * p.y + p.z * p.z).sqrt();
    let (h1, h2) = match params.height_mode {
        HeightMode::Fixed { h1, h2 } => (h1, h2),
        HeightMode::Adaptive => {
            let mut max_half = f64::NEG_INFINITY;
            let mut min_z = f64::INFINITY;
            for p in points {
                max_half = max_half.max(range(p) / 2.0);
                min_z = min_z.min(p.z - 1.0);
            }
            (max_half, min_z)
        }
    };
    points
        .iter()
        .enumerate()
        .map(|(n, p)| {
            let d = range(p);
            let height = h1 / d.max(1e-6) + h2;
            if p.z > height {
                return true;
            }
            let t = mu * (params.k1 * (params.k2 * d).exp() + params.k3 * p.intensity) * d;
            ad[n] < t
        })
        .collect()
}

/// Dense Prim MST weight over mutual reachability, with core distance taken
/// as the `min_samples`-th smallest distance to another point.
pub fn brute_mst_weight(points: &[Point], min_samples: usize) -> f64 {
    let n = points.len();
    let core: Vec<f64> = (0..n).map(|q| distance_row(points, q)[min_samples - 1]).collect();
    let mr = |a: usize, b: usize| dist(&points[a], &points[b]).max(core[a]).max(core[b]);
    let mut in_tree = vec![false; n];
    let mut best = vec![f64::INFINITY; n];
    best[0] = 0.0;
    let mut total = 0.0;
    for _ in 0..n {
        let u = (0..n)
            .filter(|&v| !in_tree[v])
            .min_by(|&a, &b| best[a].total_cmp(&best[b]))
            .unwrap();
        in_tree[u] = true;
        total += best[u];
        for v in 0..n {
            if !in_tree[v] {
                best[v] = best[v].min(mr(u, v));
            }
        }
    }
    total
}

pub fn random_cloud(rng: &mut ChaCha8Rng, n: usize, extent: f64) -> PointCloud {
    let pts = (0..n)
        .map(|_| {
            Point::new(
                rng.gen_range(-extent..extent),
                rng.gen_range(-extent..extent),
                rng.gen_range(-extent / 4.0..extent / 4.0),
                rng.gen_range(0.0..0.01),
            )
        })
        .collect();
    PointCloud::new(pts).unwrap()
}

/// Three isotropic Gaussian blobs; returns the cloud and generating blob ids.
pub fn three_blobs(seed: u64, per_blob: usize, spread: f64, separation: f64) -> (PointCloud, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, spread).unwrap();
    let centers = [
        [0.0, 0.0, 0.0],
        [separation, 0.0, 0.0],
        [separation / 2.0, separation * 0.866, 0.0],
    ];
    let mut pts = Vec::new();
    let mut truth = Vec::new();
    for (b, c) in centers.iter().enumerate() {
        for _ in 0..per_blob {
            pts.push(Point::new(
                c[0] + normal.sample(&mut rng),
                c[1] + normal.sample(&mut rng),
                c[2] + normal.sample(&mut rng),
                0.0,
            ));
            truth.push(b);
        }
    }
    (PointCloud::new(pts).unwrap(), truth)
}

/// Share of points whose cluster's majority blob is their own blob; noise
/// points count as misses.
pub fn purity(labels: &[i32], truth: &[usize], blobs: usize) -> f64 {
    let clusters = labels.iter().copied().max().map_or(0, |m| (m + 1) as usize);
    let mut counts = vec![vec![0usize; blobs]; clusters];
    for (&l, &t) in labels.iter().zip(truth) {
        if l >= 0 {
            counts[l as usize][t] += 1;
        }
    }
    let majority: Vec<usize> = counts
        .iter()
        .map(|c| (0..blobs).max_by_key(|&b| c[b]).unwrap())
        .collect();
    let hits = labels
        .iter()
        .zip(truth)
        .filter(|(&l, &t)| l >= 0 && majority[l as usize] == t)
        .count();
    hits as f64 / labels.len() as f64
}
