// SPDX-License-Identifier: Apache-2.0

//! Browser bindings: generate a synthetic frame, filter it, and sample the
//! two thresholds for plotting.

use dmnr::eval::{confusion, NoiseIds};
use dmnr::filter::{dmnr_run, dynamic_threshold, height_params, height_threshold};
use dmnr::hdbscan::{dmnr_h_run, RescueRanking};
use dmnr::io::{point_colors, Palette};
use dmnr::synth::{generate_synthetic, SynthSpec, CLASS_CLUTTER};
use dmnr::{DmnrParams, HdbscanParams, HeightMode, PointCloud};
use wasm_bindgen::prelude::*;

#[wasm_bindgen]
pub struct Scene {
    cloud: PointCloud,
}

#[wasm_bindgen]
impl Scene {
    #[wasm_bindgen(constructor)]
    pub fn new(points: usize, seed: u64, clutter_fraction: f64, bright_clutter: bool) -> Result<Scene, String> {
        let spec = SynthSpec {
            points,
            seed,
            clutter_fraction,
            bright_clutter,
            ..SynthSpec::default()
        };
        let scene = generate_synthetic(&spec).map_err(|e| e.to_string())?;
        Ok(Scene { cloud: scene.cloud })
    }

    pub fn len(&self) -> usize {
        self.cloud.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cloud.is_empty()
    }

    /// Interleaved `x, y, z` per point.
    pub fn positions(&self) -> Vec<f32> {
        self.cloud
            .points()
            .iter()
            .flat_map(|p| [p.x as f32, p.y as f32, p.z as f32])
            .collect()
    }

    /// One byte per point, 1 for clutter.
    pub fn truth(&self) -> Vec<u8> {
        self.cloud
            .labels()
            .map(|l| l.iter().map(|&c| (c == CLASS_CLUTTER) as u8).collect())
            .unwrap_or_default()
    }

    /// Runs `dmnr` or `dmnr-h` and returns colors plus scores against the
    /// scene's ground truth.
    pub fn filter(&self, algo: &str, settings: &Settings) -> Result<FilterOutcome, String> {
        let params = settings.dmnr_params()?;
        let (partition, clusters) = match algo {
            "dmnr" => (dmnr_run(&self.cloud, &params).map_err(|e| e.to_string())?.partition, 0),
            "dmnr-h" => {
                let hp = HdbscanParams {
                    min_cluster_size: settings.min_cluster_size,
                    ..HdbscanParams::default()
                };
                let run = dmnr_h_run(&self.cloud, &params, &hp, RescueRanking::KeptCount).map_err(|e| e.to_string())?;
                let clusters = run.labeling.map_or(0, |l| l.cluster_count);
                (run.partition, clusters)
            }
            other => return Err(format!("unknown algorithm {other:?}")),
        };
        let noise: NoiseIds = [CLASS_CLUTTER].into_iter().collect();
        let c = confusion(&partition, self.cloud.labels().unwrap_or(&[]), &noise).map_err(|e| e.to_string())?;
        let m = c.metrics();
        Ok(FilterOutcome {
            colors: point_colors(&partition, Palette::Stage).concat(),
            kept: partition.kept_count(),
            outliers: partition.outlier_count(),
            clusters,
            precision: m.precision,
            recall: m.recall,
            f1: m.f1,
        })
    }

    /// Samples `H(d)` and `T(d)` at `samples` ranges in `(0, max_range]` for a
    /// point of the given intensity. Layout: `[d..., H..., T...]`.
    pub fn threshold_curves(
        &self,
        settings: &Settings,
        intensity: f64,
        max_range: f64,
        samples: usize,
    ) -> Result<Vec<f64>, String> {
        let params = settings.dmnr_params()?;
        let run = dmnr_run(&self.cloud, &params).map_err(|e| e.to_string())?;
        let hp = height_params(&self.cloud, params.height_mode).map_err(|e| e.to_string())?;
        let ds: Vec<f64> = (1..=samples).map(|i| max_range * i as f64 / samples as f64).collect();
        let mut out = ds.clone();
        out.extend(ds.iter().map(|&d| height_threshold(d, hp)));
        out.extend(
            ds.iter()
                .map(|&d| dynamic_threshold(run.profile.mu, d, intensity, &params)),
        );
        Ok(out)
    }
}

#[wasm_bindgen]
#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub k: usize,
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    pub h: usize,
    pub fixed_height: bool,
    pub min_cluster_size: usize,
}

#[wasm_bindgen]
impl Settings {
    #[wasm_bindgen(constructor)]
    pub fn new() -> Settings {
        Settings::default()
    }
}

impl Default for Settings {
    fn default() -> Self {
        let d = DmnrParams::default();
        Settings {
            k: d.k,
            k1: d.k1,
            k2: d.k2,
            k3: d.k3,
            h: d.h,
            fixed_height: false,
            min_cluster_size: HdbscanParams::default().min_cluster_size,
        }
    }
}

impl Settings {
    fn dmnr_params(&self) -> Result<DmnrParams, String> {
        let p = DmnrParams {
            k: self.k,
            k1: self.k1,
            k2: self.k2,
            k3: self.k3,
            h: self.h,
            height_mode: if self.fixed_height {
                HeightMode::fixed_default()
            } else {
                HeightMode::Adaptive
            },
        };
        p.validate().map_err(|e| e.to_string())?;
        Ok(p)
    }
}

#[wasm_bindgen]
pub struct FilterOutcome {
    colors: Vec<u8>,
    pub kept: usize,
    pub outliers: usize,
    pub clusters: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

#[wasm_bindgen]
impl FilterOutcome {
    /// Interleaved `r, g, b` per point.
    pub fn colors(&self) -> Vec<u8> {
        self.colors.clone()
    }
}
