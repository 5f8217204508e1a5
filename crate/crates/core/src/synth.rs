// SPDX-License-Identifier: Apache-2.0

//! Seeded synthetic frames with exact ground truth: a ground disk, vertical
//! walls, and airborne clutter that is sparse, dim and close to the sensor.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Point, PointCloud};

pub const CLASS_GROUND: u32 = 40;
pub const CLASS_WALL: u32 = 50;
pub const CLASS_CLUTTER: u32 = 110;

/// Vertical rectangle standing on the ground.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Wall {
    /// Center of the wall footprint (x, y), meters.
    pub center: [f64; 2],
    pub length: f64,
    pub height: f64,
    /// Heading of the wall's long axis, radians.
    pub yaw: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SynthSpec {
    /// Total number of points in the frame.
    pub points: usize,
    /// Ground lies at `z = -sensor_height`.
    pub sensor_height: f64,
    pub ground_min_range: f64,
    /// Outer radius of the ground disk.
    pub ground_extent: f64,
    /// Standard deviation of ground height jitter.
    pub ground_roughness: f64,
    pub walls: Vec<Wall>,
    /// Share of clean points placed on walls.
    pub wall_fraction: f64,
    pub wall_jitter: f64,
    /// Share of all points that are clutter; exactly `floor(fraction * points)`.
    pub clutter_fraction: f64,
    pub clutter_min_range: f64,
    pub clutter_max_range: f64,
    pub clutter_z_min: f64,
    pub clutter_z_max: f64,
    /// Mean of the exponential clutter intensity distribution.
    pub clutter_intensity_mean: f64,
    /// Clean intensities are uniform in this range.
    pub clean_intensity: [f64; 2],
    /// Draw clutter intensities from the clean distribution instead.
    pub bright_clutter: bool,
    pub seed: u64,
}

impl Default for SynthSpec {
    fn default() -> Self {
        SynthSpec {
            points: 20_000,
            sensor_height: 1.8,
            ground_min_range: 4.0,
            ground_extent: 50.0,
            ground_roughness: 0.03,
            walls: vec![
                Wall {
                    center: [15.0, 10.0],
                    length: 20.0,
                    height: 6.0,
                    yaw: 0.0,
                },
                Wall {
                    center: [-20.0, -5.0],
                    length: 25.0,
                    height: 8.0,
                    yaw: std::f64::consts::FRAC_PI_2,
                },
                Wall {
                    center: [5.0, -25.0],
                    length: 15.0,
                    height: 4.0,
                    yaw: 0.3,
                },
                Wall {
                    center: [-10.0, 30.0],
                    length: 30.0,
                    height: 10.0,
                    yaw: -0.2,
                },
            ],
            wall_fraction: 0.3,
            wall_jitter: 0.02,
            clutter_fraction: 0.05,
            clutter_min_range: 1.5,
            clutter_max_range: 6.0,
            clutter_z_min: -0.8,
            clutter_z_max: 1.0,
            clutter_intensity_mean: 5e-4,
            clean_intensity: [0.02, 0.6],
            bright_clutter: false,
            seed: 0,
        }
    }
}

impl SynthSpec {
    pub fn with_seed(seed: u64) -> Self {
        SynthSpec {
            seed,
            ..Default::default()
        }
    }

    pub fn clutter_count(&self) -> usize {
        (self.clutter_fraction * self.points as f64).floor() as usize
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidSpec(m.into()));
        let finite = [
            self.sensor_height,
            self.ground_min_range,
            self.ground_extent,
            self.ground_roughness,
            self.wall_fraction,
            self.wall_jitter,
            self.clutter_fraction,
            self.clutter_min_range,
            self.clutter_max_range,
            self.clutter_z_min,
            self.clutter_z_max,
            self.clutter_intensity_mean,
            self.clean_intensity[0],
            self.clean_intensity[1],
        ];
        if finite.iter().any(|v| !v.is_finite()) {
            return bad("all parameters must be finite");
        }
        if self.points == 0 {
            return bad("points must be positive");
        }
        if !(0.0..=1.0).contains(&self.clutter_fraction) || !(0.0..=1.0).contains(&self.wall_fraction) {
            return bad("fractions must lie in [0, 1]");
        }
        if !(0.0 <= self.ground_min_range && self.ground_min_range < self.ground_extent) {
            return bad("ground ranges must satisfy 0 <= min < extent");
        }
        if !(0.0 <= self.clutter_min_range && self.clutter_min_range < self.clutter_max_range) {
            return bad("clutter ranges must satisfy 0 <= min < max");
        }
        if self.clutter_z_min > self.clutter_z_max {
            return bad("clutter_z_min exceeds clutter_z_max");
        }
        if self.clutter_intensity_mean <= 0.0 {
            return bad("clutter_intensity_mean must be positive");
        }
        if !(0.0 <= self.clean_intensity[0] && self.clean_intensity[0] <= self.clean_intensity[1]) {
            return bad("clean intensity range must be non-negative and ordered");
        }
        if self.ground_roughness < 0.0 || self.wall_jitter < 0.0 {
            return bad("jitter must be non-negative");
        }
        if self.wall_fraction > 0.0 && self.walls.is_empty() {
            return bad("wall_fraction > 0 requires at least one wall");
        }
        if self.walls.iter().any(|w| !(w.length > 0.0 && w.height > 0.0)) {
            return bad("walls need positive length and height");
        }
        Ok(())
    }
}

/// Generated frame. The cloud carries class labels; `noise` marks clutter.
#[derive(Debug, Clone)]
pub struct SyntheticScene {
    pub cloud: PointCloud,
    pub noise: Vec<bool>,
}

pub fn generate_synthetic(spec: &SynthSpec) -> Result<SyntheticScene> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n_clutter = spec.clutter_count();
    let n_clean = spec.points - n_clutter;
    let n_wall = if spec.walls.is_empty() {
        0
    } else {
        (spec.wall_fraction * n_clean as f64).round() as usize
    };
    let n_ground = n_clean - n_wall;
    let ground_z = -spec.sensor_height;

    let roughness = Normal::new(0.0, spec.ground_roughness.max(f64::MIN_POSITIVE)).unwrap();
    let jitter = Normal::new(0.0, spec.wall_jitter.max(f64::MIN_POSITIVE)).unwrap();
    let dim = Exp::new(1.0 / spec.clutter_intensity_mean).unwrap();
    let [ilo, ihi] = spec.clean_intensity;
    let clean_intensity = |rng: &mut ChaCha8Rng| if ihi > ilo { rng.gen_range(ilo..ihi) } else { ilo };

    let mut tagged: Vec<(Point, u32)> = Vec::with_capacity(spec.points);
    let (r0, r1) = (spec.ground_min_range, spec.ground_extent);
    for _ in 0..n_ground {
        // uniform in range, so density falls off with distance like a scanner's
        let r = rng.gen_range(r0..r1);
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        let z = ground_z + roughness.sample(&mut rng);
        let p = Point::new(r * theta.cos(), r * theta.sin(), z, clean_intensity(&mut rng));
        tagged.push((p, CLASS_GROUND));
    }
    let total_area: f64 = spec.walls.iter().map(|w| w.length * w.height).sum();
    let mut placed = 0;
    for (k, wall) in spec.walls.iter().enumerate() {
        let share = if k + 1 == spec.walls.len() {
            n_wall - placed
        } else {
            ((wall.length * wall.height / total_area) * n_wall as f64).round() as usize
        }
        .min(n_wall - placed);
        placed += share;
        let (s, c) = wall.yaw.sin_cos();
        for _ in 0..share {
            let along = rng.gen_range(-wall.length / 2.0..wall.length / 2.0);
            let off = jitter.sample(&mut rng);
            let z = ground_z + rng.gen_range(0.0..wall.height);
            let x = wall.center[0] + along * c - off * s;
            let y = wall.center[1] + along * s + off * c;
            tagged.push((Point::new(x, y, z, clean_intensity(&mut rng)), CLASS_WALL));
        }
    }
    let (c0, c1) = (spec.clutter_min_range, spec.clutter_max_range);
    for _ in 0..n_clutter {
        let r = rng.gen_range(c0..c1);
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        let z = if spec.clutter_z_max > spec.clutter_z_min {
            rng.gen_range(spec.clutter_z_min..spec.clutter_z_max)
        } else {
            spec.clutter_z_min
        };
        let i = if spec.bright_clutter {
            clean_intensity(&mut rng)
        } else {
            dim.sample(&mut rng)
        };
        tagged.push((Point::new(r * theta.cos(), r * theta.sin(), z, i), CLASS_CLUTTER));
    }
    tagged.shuffle(&mut rng);

    let noise = tagged.iter().map(|(_, l)| *l == CLASS_CLUTTER).collect();
    let (points, labels): (Vec<Point>, Vec<u32>) = tagged.into_iter().unzip();
    Ok(SyntheticScene {
        cloud: PointCloud::with_labels(points, labels)?,
        noise,
    })
}
