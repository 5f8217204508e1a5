// SPDX-License-Identifier: Apache-2.0

//! Flat key-value run configuration (TOML syntax, no tables).
//!
//! ```toml
//! K = 10
//! k1 = 0.015
//! k2 = 0.055
//! k3 = 100
//! h = 5
//! height_mode = "adaptive"   # or "fixed", which reads h1/h2
//! min_cluster_size = 50
//! min_samples = 10
//! noise_ids = [110]
//! ```
//!
//! Unset keys fall back to the built-in defaults. Layers merge with
//! [`Config::overlay`], later layers winning.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::NoiseIds;
use crate::filter::{Ror, Sor};
use crate::hdbscan::{HdbscanParams, RescueRanking};
use crate::model::{DmnrParams, HeightMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HeightModeName {
    Adaptive,
    Fixed,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(rename = "K", skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k3: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub height_mode: Option<HeightModeName>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_cluster_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rescue_ranking: Option<RescueRanking>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub noise_ids: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intensity_scale: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sor_k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sor_alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ror_radius: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ror_min_neighbors: Option<usize>,
}

macro_rules! overlay_fields {
    ($base:ident, $top:ident, $($f:ident),*) => {
        Config { $($f: $top.$f.or($base.$f)),* }
    };
}

impl Config {
    pub fn parse(text: &str) -> std::result::Result<Self, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Config::parse(&text).map_err(|reason| Error::Malformed {
            path: path.to_path_buf(),
            reason,
        })
    }

    /// Values set in `top` replace those in `self`.
    pub fn overlay(self, top: Config) -> Config {
        let base = self;
        overlay_fields!(
            base,
            top,
            k,
            k1,
            k2,
            k3,
            h,
            height_mode,
            h1,
            h2,
            min_cluster_size,
            min_samples,
            rescue_ranking,
            noise_ids,
            intensity_scale,
            sor_k,
            sor_alpha,
            ror_radius,
            ror_min_neighbors
        )
    }

    pub fn dmnr_params(&self) -> Result<DmnrParams> {
        let d = DmnrParams::default();
        let height_mode = match self.height_mode {
            Some(HeightModeName::Fixed) => HeightMode::Fixed {
                h1: self.h1.unwrap_or(HeightMode::FIXED_H1),
                h2: self.h2.unwrap_or(HeightMode::FIXED_H2),
            },
            Some(HeightModeName::Adaptive) | None => {
                if self.h1.is_some() || self.h2.is_some() {
                    return Err(Error::InvalidParams(
                        "h1/h2 are only used with height_mode = \"fixed\"".into(),
                    ));
                }
                HeightMode::Adaptive
            }
        };
        let p = DmnrParams {
            k: self.k.unwrap_or(d.k),
            k1: self.k1.unwrap_or(d.k1),
            k2: self.k2.unwrap_or(d.k2),
            k3: self.k3.unwrap_or(d.k3),
            h: self.h.unwrap_or(d.h),
            height_mode,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn hdbscan_params(&self) -> Result<HdbscanParams> {
        let d = HdbscanParams::default();
        let p = HdbscanParams {
            min_cluster_size: self.min_cluster_size.unwrap_or(d.min_cluster_size),
            min_samples: self.min_samples.unwrap_or(d.min_samples),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn rescue_ranking(&self) -> RescueRanking {
        self.rescue_ranking.unwrap_or_default()
    }

    pub fn sor(&self) -> Sor {
        let d = Sor::default();
        Sor {
            k: self.sor_k.unwrap_or(d.k),
            alpha: self.sor_alpha.unwrap_or(d.alpha),
        }
    }

    pub fn ror(&self) -> Ror {
        let d = Ror::default();
        Ror {
            radius: self.ror_radius.unwrap_or(d.radius),
            min_neighbors: self.ror_min_neighbors.unwrap_or(d.min_neighbors),
        }
    }

    pub fn noise_ids(&self) -> Option<NoiseIds> {
        self.noise_ids.as_ref().map(|v| v.iter().copied().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_gives_defaults() {
        let c = Config::parse("").unwrap();
        assert_eq!(c.dmnr_params().unwrap(), DmnrParams::default());
        assert_eq!(c.hdbscan_params().unwrap(), HdbscanParams::default());
        assert_eq!(c.noise_ids(), None);
    }

    #[test]
    fn parses_all_keys() {
        let c = Config::parse(
            "K = 8\nk1 = 0.02\nk2 = 0.05\nk3 = 50\nh = 3\nheight_mode = \"fixed\"\nh1 = 80\nh2 = -4\n\
             min_cluster_size = 30\nmin_samples = 5\nnoise_ids = [110, 111]\n",
        )
        .unwrap();
        let p = c.dmnr_params().unwrap();
        assert_eq!((p.k, p.k1, p.k2, p.k3, p.h), (8, 0.02, 0.05, 50.0, 3));
        assert_eq!(p.height_mode, HeightMode::Fixed { h1: 80.0, h2: -4.0 });
        assert_eq!(
            c.hdbscan_params().unwrap(),
            HdbscanParams {
                min_cluster_size: 30,
                min_samples: 5
            }
        );
        assert_eq!(c.noise_ids().unwrap().into_iter().collect::<Vec<_>>(), vec![110, 111]);
    }

    #[test]
    fn fixed_mode_defaults_to_literal_constants() {
        let c = Config::parse("height_mode = \"fixed\"").unwrap();
        assert_eq!(c.dmnr_params().unwrap().height_mode, HeightMode::fixed_default());
    }

    #[test]
    fn overlay_prefers_top() {
        let base = Config::parse("K = 8\nk1 = 0.02").unwrap();
        let top = Config {
            k: Some(12),
            ..Default::default()
        };
        let merged = base.overlay(top);
        assert_eq!(merged.k, Some(12));
        assert_eq!(merged.k1, Some(0.02));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Config::parse("bogus = 1").is_err());
        assert!(Config::parse("K = \"ten\"").is_err());
        assert!(Config::parse("h1 = 3").unwrap().dmnr_params().is_err());
        assert!(Config::parse("K = 0").unwrap().dmnr_params().is_err());
    }
}
