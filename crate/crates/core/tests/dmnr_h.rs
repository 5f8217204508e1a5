// SPDX-License-Identifier: Apache-2.0

mod common;

use std::collections::BTreeMap;

use dmnr::synth::{generate_synthetic, SynthSpec};
use dmnr::{dmnr, dmnr_h, hdbscan, DmnrParams, HdbscanParams, HeightMode, Point, PointCloud, StageTag, Verdict};

/// Brute-force verdicts, library clustering, then the rescue rule spelled out
/// by hand: rank clusters by kept count (then size, then id) and keep every
/// member of the top `h`.
fn reference_pipeline(cloud: &PointCloud, params: &DmnrParams, hp: &HdbscanParams) -> Vec<bool> {
    let mut kept = common::brute_dmnr(cloud.points(), params);
    if params.h == 0 || kept.iter().all(|&k| k) {
        return kept;
    }
    let labels = hdbscan(cloud, hp).unwrap().labels;
    let mut tally: BTreeMap<i32, (usize, usize)> = BTreeMap::new();
    for (l, k) in labels.iter().zip(&kept) {
        if *l < 0 {
            continue;
        }
        let e = tally.entry(*l).or_default();
        e.0 += *k as usize;
        e.1 += 1;
    }
    let mut ranked: Vec<(i32, usize, usize)> = tally
        .into_iter()
        .filter(|(_, (k, _))| *k > 0)
        .map(|(id, (k, s))| (id, k, s))
        .collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then(b.2.cmp(&a.2)).then(a.0.cmp(&b.0)));
    let chosen: Vec<i32> = ranked.iter().take(params.h).map(|r| r.0).collect();
    for (i, l) in labels.iter().enumerate() {
        if chosen.contains(l) {
            kept[i] = true;
        }
    }
    kept
}

fn wall(x: f64, ys: std::ops::Range<i32>, step: f64, y0: f64, intensity: f64, out: &mut Vec<Point>) {
    let rows = (2.0 / step).round() as i32;
    for iy in ys {
        for iz in 0..=rows {
            out.push(Point::new(x, y0 + iy as f64 * step, -1.0 + iz as f64 * step, intensity));
        }
    }
}

/// Two dense bright walls and a sparse dim strip continuing the larger one.
fn fragment_scene() -> (PointCloud, std::ops::Range<usize>) {
    let mut pts = Vec::new();
    wall(10.0, 0..81, 0.05, -2.0, 0.01, &mut pts);
    wall(-10.0, 0..41, 0.05, -1.0, 0.01, &mut pts);
    let start = pts.len();
    wall(10.0, 0..3, 0.2, 2.2, 0.0, &mut pts);
    let end = pts.len();
    (PointCloud::new(pts).unwrap(), start..end)
}

fn fixed_params(h: usize) -> DmnrParams {
    DmnrParams {
        h,
        height_mode: HeightMode::fixed_default(),
        ..DmnrParams::default()
    }
}

#[test]
fn sparse_wall_fragment_is_rescued() {
    let (cloud, fragment) = fragment_scene();
    let params = fixed_params(1);
    let hp = HdbscanParams::default();

    let plain = dmnr(&cloud, &params).unwrap();
    assert!(fragment.clone().all(|i| !plain.is_kept(i)));
    assert_eq!(plain.outlier_count(), fragment.len());

    let labels = hdbscan(&cloud, &hp).unwrap().labels;
    let wall_label = labels[0];
    assert!(wall_label >= 0);
    assert!(fragment.clone().all(|i| labels[i] == wall_label));

    let rescued = dmnr_h(&cloud, &params, &hp).unwrap();
    let tags = rescued.tags().unwrap();
    assert!(fragment.clone().all(|i| tags[i] == StageTag::Rescued));
    assert_eq!(rescued.outlier_count(), 0);

    let reference = reference_pipeline(&cloud, &params, &hp);
    let got: Vec<bool> = rescued.verdicts().iter().map(|v| *v == Verdict::Kept).collect();
    assert_eq!(got, reference);
}

#[test]
fn synthetic_scenes_match_reference_pipeline() {
    let hp = HdbscanParams::default();
    for seed in 0..3 {
        let spec = SynthSpec {
            points: 4_000,
            ..SynthSpec::with_seed(seed)
        };
        let scene = generate_synthetic(&spec).unwrap();
        for h in [1, 5] {
            let params = DmnrParams {
                h,
                ..DmnrParams::default()
            };
            let got: Vec<bool> = dmnr_h(&scene.cloud, &params, &hp)
                .unwrap()
                .verdicts()
                .iter()
                .map(|v| *v == Verdict::Kept)
                .collect();
            assert_eq!(got, reference_pipeline(&scene.cloud, &params, &hp), "seed {seed} h {h}");
        }
    }
}

#[test]
fn h_zero_equals_dmnr() {
    let scene = generate_synthetic(&SynthSpec {
        points: 3_000,
        ..SynthSpec::with_seed(9)
    })
    .unwrap();
    let params = DmnrParams {
        h: 0,
        ..DmnrParams::default()
    };
    assert_eq!(
        dmnr_h(&scene.cloud, &params, &HdbscanParams::default()).unwrap(),
        dmnr(&scene.cloud, &params).unwrap()
    );
}

#[test]
fn nothing_to_rescue_when_all_kept() {
    let (cloud, _) = fragment_scene();
    let params = DmnrParams {
        k1: 10.0,
        ..fixed_params(5)
    };
    let plain = dmnr(&cloud, &params).unwrap();
    assert_eq!(plain.outlier_count(), 0);
    assert_eq!(dmnr_h(&cloud, &params, &HdbscanParams::default()).unwrap(), plain);
}

#[test]
fn labels_are_identical_across_runs_and_schedules() {
    let scene = generate_synthetic(&SynthSpec {
        points: 5_000,
        ..SynthSpec::with_seed(4)
    })
    .unwrap();
    let hp = HdbscanParams::default();
    let first = hdbscan(&scene.cloud, &hp).unwrap();
    assert_eq!(hdbscan(&scene.cloud, &hp).unwrap(), first);
    for threads in [1, 3, 8] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        let again = pool.install(|| hdbscan(&scene.cloud, &hp).unwrap());
        assert_eq!(again, first, "{threads} threads");
        let part = pool.install(|| dmnr_h(&scene.cloud, &DmnrParams::default(), &hp).unwrap());
        assert_eq!(part, dmnr_h(&scene.cloud, &DmnrParams::default(), &hp).unwrap());
    }
}
