// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dmnr::config::{Config, HeightModeName};
use dmnr::hdbscan::RescueRanking;
use dmnr::io::{Palette, PlyFormat};

#[derive(Debug, Parser)]
#[command(name = "dmnr", version, about = "Weather-noise removal for LiDAR point clouds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Filter one frame or every `.bin` frame in a directory.
    Filter(FilterArgs),
    /// Filter a labeled dataset and report precision, recall and F1.
    Evaluate(EvaluateArgs),
    /// Generate a labeled synthetic scene.
    Synth(SynthArgs),
    /// Render a saved mask as a colored PLY file.
    Export(ExportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Dmnr,
    DmnrH,
    Sor,
    Ror,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum HeightModeArg {
    Adaptive,
    Fixed,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum RankingArg {
    KeptCount,
    KeptFraction,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
pub enum PlyFormatArg {
    #[default]
    Binary,
    Ascii,
}

impl From<PlyFormatArg> for PlyFormat {
    fn from(f: PlyFormatArg) -> Self {
        match f {
            PlyFormatArg::Binary => PlyFormat::BinaryLittleEndian,
            PlyFormatArg::Ascii => PlyFormat::Ascii,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
pub enum PaletteArg {
    #[default]
    Verdict,
    Stage,
}

impl From<PaletteArg> for Palette {
    fn from(p: PaletteArg) -> Self {
        match p {
            PaletteArg::Verdict => Palette::Verdict,
            PaletteArg::Stage => Palette::Stage,
        }
    }
}

/// Parameter overrides; each one replaces the config file value.
#[derive(Debug, Args)]
pub struct ParamArgs {
    /// Config file (flat TOML keys).
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Neighbors per density estimate.
    #[arg(long = "K", value_name = "K")]
    pub k: Option<usize>,
    #[arg(long)]
    pub k1: Option<f64>,
    #[arg(long)]
    pub k2: Option<f64>,
    #[arg(long)]
    pub k3: Option<f64>,
    /// Clusters rescued by dmnr-h.
    #[arg(long)]
    pub h: Option<usize>,
    #[arg(long, value_enum)]
    pub height_mode: Option<HeightModeArg>,
    #[arg(long, allow_hyphen_values = true)]
    pub h1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub h2: Option<f64>,
    #[arg(long)]
    pub min_cluster_size: Option<usize>,
    #[arg(long)]
    pub min_samples: Option<usize>,
    #[arg(long, value_enum)]
    pub rescue_ranking: Option<RankingArg>,
    #[arg(long)]
    pub sor_k: Option<usize>,
    #[arg(long)]
    pub sor_alpha: Option<f64>,
    #[arg(long)]
    pub ror_radius: Option<f64>,
    #[arg(long)]
    pub ror_min_neighbors: Option<usize>,
    /// Multiply intensities by this factor after loading.
    #[arg(long)]
    pub intensity_scale: Option<f64>,
}

impl ParamArgs {
    pub fn overrides(&self) -> Config {
        Config {
            k: self.k,
            k1: self.k1,
            k2: self.k2,
            k3: self.k3,
            h: self.h,
            height_mode: self.height_mode.map(|m| match m {
                HeightModeArg::Adaptive => HeightModeName::Adaptive,
                HeightModeArg::Fixed => HeightModeName::Fixed,
            }),
            h1: self.h1,
            h2: self.h2,
            min_cluster_size: self.min_cluster_size,
            min_samples: self.min_samples,
            rescue_ranking: self.rescue_ranking.map(|r| match r {
                RankingArg::KeptCount => RescueRanking::KeptCount,
                RankingArg::KeptFraction => RescueRanking::KeptFraction,
            }),
            noise_ids: None,
            intensity_scale: self.intensity_scale,
            sor_k: self.sor_k,
            sor_alpha: self.sor_alpha,
            ror_radius: self.ror_radius,
            ror_min_neighbors: self.ror_min_neighbors,
        }
    }
}

#[derive(Debug, Args)]
pub struct FilterArgs {
    /// A `.bin` frame or a directory of them.
    #[arg(long, short)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "dmnr")]
    pub algo: Algo,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Mask output for a single-frame input.
    #[arg(long)]
    pub out_mask: Option<PathBuf>,
    /// Colored PLY output for a single-frame input.
    #[arg(long)]
    pub out_ply: Option<PathBuf>,
    /// Output directory for directory input; one `<frame>.mask` per frame.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// With `--out-dir`, also write `<frame>.ply`.
    #[arg(long)]
    pub ply: bool,
    #[arg(long, value_enum, default_value_t)]
    pub ply_format: PlyFormatArg,
    #[arg(long, value_enum, default_value_t)]
    pub palette: PaletteArg,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Directory of `.bin` frames.
    pub points_dir: PathBuf,
    /// Directory of `.label` files with matching stems.
    pub labels_dir: PathBuf,
    /// Semantic class ids counted as noise, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub noise_ids: Vec<u32>,
    #[arg(long, value_enum, default_value = "dmnr")]
    pub algo: Algo,
    #[command(flatten)]
    pub params: ParamArgs,
    /// JSON report output.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// CSV table output (percentages).
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Scene description (TOML); flags below override it.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub clutter_fraction: Option<f64>,
    #[arg(long)]
    pub clutter_max_range: Option<f64>,
    /// Draw clutter intensities from the clean range.
    #[arg(long)]
    pub bright_clutter: bool,
    /// Point file output.
    #[arg(long)]
    pub out_points: PathBuf,
    /// Label file output.
    #[arg(long)]
    pub out_labels: Option<PathBuf>,
    /// Ground-truth mask output (noise marked as outlier).
    #[arg(long)]
    pub out_truth: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    /// The `.bin` frame the mask was computed on.
    #[arg(long, short)]
    pub input: PathBuf,
    #[arg(long)]
    pub mask: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    pub ply_format: PlyFormatArg,
    #[arg(long, value_enum, default_value_t)]
    pub palette: PaletteArg,
}
