// SPDX-License-Identifier: Apache-2.0

//! Airborne-particle removal for LiDAR frames.
//!
//! [`filter::dmnr`] is a two-stage filter: a range-dependent height rule keeps
//! elevated structure outright, then a per-point threshold combining global
//! density, range and intensity rejects sparse, dim, close returns.
//! [`hdbscan::dmnr_h`] adds a clustering pass that returns outliers belonging
//! to the dominant structures. Classical statistical and radius outlier
//! removal are provided as baselines, together with dataset loaders, a
//! synthetic scene generator and a precision/recall harness.

pub mod config;
pub mod error;
pub mod eval;
pub mod filter;
pub mod hdbscan;
pub mod io;
pub mod model;
mod par;
pub mod spatial;
pub mod synth;

pub use error::{Error, Result};
pub use filter::{dmnr, dynamic_threshold, height_params, height_threshold, Filter, HeightParams};
pub use hdbscan::{dmnr_h, hdbscan, ClusterLabeling, HdbscanParams};
pub use model::{sensor_distance, DmnrParams, HeightMode, Partition, Point, PointCloud, StageTag, Verdict};
pub use spatial::{density_profile, knn_mean_distance, DensityProfile, SpatialIndex};
