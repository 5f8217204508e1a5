// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::Path;

use dmnr::config::Config;
use dmnr::eval::{evaluate_with, NoiseIds, RunReport};
use dmnr::filter::Dmnr;
use dmnr::hdbscan::DmnrH;
use dmnr::io::{self, FrameFiles};
use dmnr::synth::{generate_synthetic, SynthSpec};
use dmnr::{Filter, Partition};

use crate::args::{Algo, Cli, Command, EvaluateArgs, ExportArgs, FilterArgs, ParamArgs, SynthArgs};
use crate::Failure;

pub fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Filter(a) => filter(a),
        Command::Evaluate(a) => evaluate(a),
        Command::Synth(a) => synth(a),
        Command::Export(a) => export(a),
    }
}

fn load_config(params: &ParamArgs) -> Result<Config, Failure> {
    let base = match &params.config {
        Some(path) => Config::load(path).map_err(|e| Failure::usage(format!("config: {e}")))?,
        None => Config::default(),
    };
    Ok(base.overlay(params.overrides()))
}

struct Selected {
    filter: Box<dyn Filter>,
    params: serde_json::Value,
}

fn select(algo: Algo, config: &Config) -> Result<Selected, Failure> {
    let json = |v: serde_json::Result<serde_json::Value>| v.expect("parameters serialize");
    Ok(match algo {
        Algo::Dmnr => {
            let p = config.dmnr_params()?;
            Selected {
                filter: Box::new(Dmnr(p)),
                params: json(serde_json::to_value(p)),
            }
        }
        Algo::DmnrH => {
            let f = DmnrH {
                params: config.dmnr_params()?,
                hdbscan: config.hdbscan_params()?,
                ranking: config.rescue_ranking(),
            };
            Selected {
                params: json(serde_json::to_value(f)),
                filter: Box::new(f),
            }
        }
        Algo::Sor => {
            let f = config.sor();
            Selected {
                params: json(serde_json::to_value(f)),
                filter: Box::new(f),
            }
        }
        Algo::Ror => {
            let f = config.ror();
            Selected {
                params: json(serde_json::to_value(f)),
                filter: Box::new(f),
            }
        }
    })
}

fn summary(id: &str, p: &Partition) -> String {
    format!(
        "{id}\tpoints {}\tkept {}\toutliers {}",
        p.len(),
        p.kept_count(),
        p.outlier_count()
    )
}

fn filter(a: FilterArgs) -> Result<(), Failure> {
    let config = load_config(&a.params)?;
    let selected = select(a.algo, &config)?;
    let scale = config.intensity_scale;

    if a.input.is_dir() {
        if a.out_mask.is_some() || a.out_ply.is_some() {
            return Err(Failure::usage(
                "directory input writes into --out-dir, not --out-mask/--out-ply",
            ));
        }
        let frames = io::list_point_files(&a.input)?;
        if frames.is_empty() {
            return Err(Failure::data(format!("no .bin frames in {}", a.input.display())));
        }
        if let Some(dir) = &a.out_dir {
            fs::create_dir_all(dir).map_err(|e| Failure::data(format!("{}: {e}", dir.display())))?;
        }
        for frame in &frames {
            let run = || -> dmnr::Result<()> {
                let cloud = frame.load(scale)?;
                let partition = selected.filter.apply(&cloud)?;
                if let Some(dir) = &a.out_dir {
                    io::write_mask(&partition, dir.join(format!("{}.mask", frame.id)))?;
                    if a.ply {
                        io::write_colored(
                            &cloud,
                            &partition,
                            dir.join(format!("{}.ply", frame.id)),
                            a.ply_format.into(),
                            a.palette.into(),
                        )?;
                    }
                }
                println!("{}", summary(&frame.id, &partition));
                Ok(())
            };
            run().map_err(|e| e.in_frame(frame.id.clone()))?;
        }
        return Ok(());
    }

    if a.out_dir.is_some() || a.ply {
        return Err(Failure::usage("--out-dir and --ply apply to directory input"));
    }
    let frame = FrameFiles {
        id: a.input.display().to_string(),
        points_path: a.input.clone(),
        labels_path: None,
    };
    let cloud = frame.load(scale)?;
    let partition = selected.filter.apply(&cloud)?;
    if let Some(path) = &a.out_mask {
        io::write_mask(&partition, path)?;
    }
    if let Some(path) = &a.out_ply {
        io::write_colored(&cloud, &partition, path, a.ply_format.into(), a.palette.into())?;
    }
    println!("{}", summary(&frame.id, &partition));
    Ok(())
}

fn evaluate(a: EvaluateArgs) -> Result<(), Failure> {
    let config = load_config(&a.params)?;
    let noise: NoiseIds = if a.noise_ids.is_empty() {
        config
            .noise_ids()
            .ok_or_else(|| Failure::usage("no noise class ids: pass --noise-ids or set noise_ids in the config"))?
    } else {
        a.noise_ids.iter().copied().collect()
    };
    let selected = select(a.algo, &config)?;
    let frames = io::pair_frames(&a.points_dir, &a.labels_dir)?;
    let ids: Vec<String> = frames.iter().map(|f| f.id.clone()).collect();
    let scale = config.intensity_scale;
    let report = evaluate_with(&ids, |i| frames[i].load(scale), |c| selected.filter.apply(c), &noise)?;

    for f in &report.per_frame {
        println!(
            "{}\tP {:.2}\tR {:.2}\tF1 {:.2}",
            f.frame,
            100.0 * f.metrics.precision,
            100.0 * f.metrics.recall,
            100.0 * f.metrics.f1
        );
    }
    let m = report.aggregate.metrics;
    println!(
        "ALL\tP {:.2}\tR {:.2}\tF1 {:.2}",
        100.0 * m.precision,
        100.0 * m.recall,
        100.0 * m.f1
    );

    if let Some(path) = &a.csv {
        let file = fs::File::create(path).map_err(|e| Failure::data(format!("{}: {e}", path.display())))?;
        report.write_csv(file)?;
    }
    if let Some(path) = &a.report {
        let doc = RunReport::new(selected.filter.name(), selected.params, report);
        write_text(path, &doc.to_json())?;
    }
    Ok(())
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::data(format!("{}: {e}", path.display())))
}

fn synth(a: SynthArgs) -> Result<(), Failure> {
    let mut spec = match &a.spec {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            toml::from_str::<SynthSpec>(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?
        }
        None => SynthSpec::default(),
    };
    if let Some(n) = a.points {
        spec.points = n;
    }
    if let Some(s) = a.seed {
        spec.seed = s;
    }
    if let Some(f) = a.clutter_fraction {
        spec.clutter_fraction = f;
    }
    if let Some(r) = a.clutter_max_range {
        spec.clutter_max_range = r;
    }
    spec.bright_clutter |= a.bright_clutter;

    let scene = generate_synthetic(&spec)?;
    io::write_points(&scene.cloud, &a.out_points)?;
    if let Some(path) = &a.out_labels {
        io::write_labels(scene.cloud.labels().expect("synthetic scenes are labeled"), path)?;
    }
    if let Some(path) = &a.out_truth {
        let clean: Vec<bool> = scene.noise.iter().map(|n| !n).collect();
        io::write_mask(&Partition::from_kept_mask(&clean), path)?;
    }
    println!(
        "{}\tpoints {}\tnoise {}",
        a.out_points.display(),
        scene.cloud.len(),
        scene.noise.iter().filter(|n| **n).count()
    );
    Ok(())
}

fn export(a: ExportArgs) -> Result<(), Failure> {
    let cloud = io::load_points(&a.input)?;
    let partition = io::load_mask(&a.mask, cloud.len())?;
    io::write_colored(&cloud, &partition, &a.out, a.ply_format.into(), a.palette.into())?;
    Ok(())
}
