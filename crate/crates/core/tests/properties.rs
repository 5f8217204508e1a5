// SPDX-License-Identifier: Apache-2.0

mod common;

use approx::assert_relative_eq;
use dmnr::io::{load_points, read_colored, write_colored, write_points, Palette, PlyFormat, KEPT_COLOR, OUTLIER_COLOR};
use dmnr::synth::{generate_synthetic, SynthSpec, CLASS_CLUTTER};
use dmnr::{density_profile, height_params, HeightMode, Partition, Point, PointCloud, SpatialIndex};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn transformed(cloud: &PointCloud, f: impl Fn(&Point) -> Point) -> PointCloud {
    PointCloud::new(cloud.points().iter().map(f).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, ..ProptestConfig::default() })]

    #[test]
    fn density_scales_with_coordinates(seed in any::<u64>(), n in 2usize..300, k in 1usize..12, up in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cloud = common::random_cloud(&mut rng, n, 20.0);
        let s = if up { 2.0 } else { 0.5 };
        let scaled = transformed(&cloud, |p| Point::new(p.x * s, p.y * s, p.z * s, p.intensity));
        let a = density_profile(&SpatialIndex::build(&cloud).unwrap(), k).unwrap();
        let b = density_profile(&SpatialIndex::build(&scaled).unwrap(), k).unwrap();
        for (x, y) in a.ad.iter().zip(&b.ad) {
            prop_assert_eq!(x * s, *y);
        }
        prop_assert_eq!(a.mu * s, b.mu);
    }

    #[test]
    fn adaptive_h2_follows_z_translation(seed in any::<u64>(), n in 1usize..200, dz in -10.0f64..10.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cloud = common::random_cloud(&mut rng, n, 20.0);
        let shifted = transformed(&cloud, |p| Point::new(p.x, p.y, p.z + dz, p.intensity));
        let a = height_params(&cloud, HeightMode::Adaptive).unwrap();
        let b = height_params(&shifted, HeightMode::Adaptive).unwrap();
        prop_assert!((b.h2 - (a.h2 + dz)).abs() <= 1e-12 * (1.0 + a.h2.abs() + dz.abs()));
    }
}

#[test]
fn density_matches_brute_force_on_a_synthetic_frame() {
    let scene = generate_synthetic(&SynthSpec {
        points: 2_000,
        ..SynthSpec::with_seed(21)
    })
    .unwrap();
    let profile = density_profile(&SpatialIndex::build(&scene.cloud).unwrap(), 10).unwrap();
    let ad = common::brute_ad(scene.cloud.points(), 10);
    let mu = ad.iter().sum::<f64>() / ad.len() as f64;
    assert_relative_eq!(profile.mu, mu, max_relative = 1e-9);
}

#[test]
fn ply_colors_follow_verdicts() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let cloud = common::random_cloud(&mut rng, 100, 10.0);
    let mask: Vec<bool> = (0..100).map(|_| rng.gen_bool(0.7)).collect();
    let partition = Partition::from_kept_mask(&mask);
    let dir = tempfile::tempdir().unwrap();
    for format in [PlyFormat::Ascii, PlyFormat::BinaryLittleEndian] {
        let path = dir.path().join("out.ply");
        write_colored(&cloud, &partition, &path, format, Palette::Verdict).unwrap();
        let vertices = read_colored(&path).unwrap();
        assert_eq!(vertices.len(), 100);
        for ((v, kept), p) in vertices.iter().zip(&mask).zip(cloud.points()) {
            assert_eq!(v.color, if *kept { KEPT_COLOR } else { OUTLIER_COLOR });
            assert_eq!(v.position, [p.x as f32, p.y as f32, p.z as f32]);
        }
    }
}

#[test]
fn point_file_round_trip() {
    let scene = generate_synthetic(&SynthSpec {
        points: 1_000,
        ..SynthSpec::with_seed(2)
    })
    .unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("000000.bin");
    write_points(&scene.cloud, &path).unwrap();
    assert_eq!(std::fs::metadata(&path).unwrap().len(), 16_000);
    let back = load_points(&path).unwrap();
    assert_eq!(back.len(), 1_000);
    for (a, b) in back.points().iter().zip(scene.cloud.points()) {
        assert_eq!(a.x, b.x as f32 as f64);
        assert_eq!(a.intensity, b.intensity as f32 as f64);
    }
}

#[test]
fn synthetic_clutter_count_is_exact() {
    let spec = SynthSpec {
        points: 20_000,
        clutter_fraction: 0.05,
        ..SynthSpec::with_seed(11)
    };
    let scene = generate_synthetic(&spec).unwrap();
    assert_eq!(scene.cloud.len(), 20_000);
    assert_eq!(scene.noise.iter().filter(|n| **n).count(), 1_000);
    let labels = scene.cloud.labels().unwrap();
    assert!(labels
        .iter()
        .zip(&scene.noise)
        .all(|(l, n)| (*l == CLASS_CLUTTER) == *n));
}
