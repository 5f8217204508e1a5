// SPDX-License-Identifier: Apache-2.0

//! Dataset file formats.
//!
//! * points: packed little-endian `f32` quadruples `x y z intensity`
//! * labels: packed little-endian `u32`, semantic class in the low 16 bits
//!   (upper bits carry an instance id and are dropped)
//! * masks: one byte per point, bit 0 set for outliers, bits 1..=3 the
//!   stage tag code (0 when the filter does not tag)
//! * colored export: PLY, ascii or binary little-endian, `x y z` as float
//!   and `red green blue` as uchar

use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Partition, Point, PointCloud, StageTag, Verdict};

const POINT_RECORD: usize = 16;

fn read_all(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::io(path, e))
}

fn malformed(path: &Path, reason: impl Into<String>) -> Error {
    Error::Malformed {
        path: path.to_path_buf(),
        reason: reason.into(),
    }
}

pub fn decode_points(bytes: &[u8]) -> std::result::Result<Vec<Point>, String> {
    if !bytes.len().is_multiple_of(POINT_RECORD) {
        return Err(format!(
            "size {} is not a multiple of {POINT_RECORD} bytes",
            bytes.len()
        ));
    }
    Ok(bytes
        .chunks_exact(POINT_RECORD)
        .map(|rec| {
            let f = |k: usize| f32::from_le_bytes(rec[4 * k..4 * k + 4].try_into().unwrap()) as f64;
            Point::new(f(0), f(1), f(2), f(3))
        })
        .collect())
}

pub fn encode_points(points: &[Point]) -> Vec<u8> {
    let mut out = Vec::with_capacity(points.len() * POINT_RECORD);
    for p in points {
        for v in [p.x, p.y, p.z, p.intensity] {
            out.extend_from_slice(&(v as f32).to_le_bytes());
        }
    }
    out
}

pub fn load_points(path: impl AsRef<Path>) -> Result<PointCloud> {
    let path = path.as_ref();
    let points = decode_points(&read_all(path)?).map_err(|r| malformed(path, r))?;
    PointCloud::new(points)
}

pub fn write_points(cloud: &PointCloud, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, encode_points(cloud.points())).map_err(|e| Error::io(path, e))
}

pub fn load_labels(path: impl AsRef<Path>, expected: usize) -> Result<Vec<u32>> {
    let path = path.as_ref();
    let bytes = read_all(path)?;
    if bytes.len() % 4 != 0 {
        return Err(malformed(
            path,
            format!("size {} is not a multiple of 4 bytes", bytes.len()),
        ));
    }
    let labels: Vec<u32> = bytes
        .chunks_exact(4)
        .map(|c| u32::from_le_bytes(c.try_into().unwrap()) & 0xFFFF)
        .collect();
    if labels.len() != expected {
        return Err(Error::LengthMismatch {
            expected,
            found: labels.len(),
        });
    }
    Ok(labels)
}

pub fn write_labels(labels: &[u32], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let bytes: Vec<u8> = labels.iter().flat_map(|l| l.to_le_bytes()).collect();
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

/// Point file plus its optional label file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameFiles {
    pub id: String,
    pub points_path: PathBuf,
    pub labels_path: Option<PathBuf>,
}

impl FrameFiles {
    /// Loads the frame, scaling intensities by `intensity_scale` when given.
    pub fn load(&self, intensity_scale: Option<f64>) -> Result<PointCloud> {
        let mut cloud = load_points(&self.points_path)?;
        if let Some(path) = &self.labels_path {
            let labels = load_labels(path, cloud.len())?;
            cloud.set_labels(labels)?;
        }
        if let Some(s) = intensity_scale {
            cloud.rescale_intensity(s)?;
        }
        Ok(cloud)
    }
}

fn files_with_ext(dir: &Path, ext: &str) -> Result<Vec<(String, PathBuf)>> {
    let mut out = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| Error::io(dir, e))? {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == ext) {
            let stem = path.file_stem().unwrap().to_string_lossy().into_owned();
            out.push((stem, path));
        }
    }
    out.sort();
    Ok(out)
}

/// Pairs `*.bin` point files with `*.label` files by shared stem. A file
/// without a partner is an error.
pub fn pair_frames(points_dir: impl AsRef<Path>, labels_dir: impl AsRef<Path>) -> Result<Vec<FrameFiles>> {
    let (points_dir, labels_dir) = (points_dir.as_ref(), labels_dir.as_ref());
    let points = files_with_ext(points_dir, "bin")?;
    let labels = files_with_ext(labels_dir, "label")?;
    let label_map: std::collections::BTreeMap<_, _> = labels.iter().cloned().collect();
    for (stem, path) in &labels {
        if !points.iter().any(|(s, _)| s == stem) {
            return Err(malformed(path, "label file has no matching point file"));
        }
    }
    points
        .into_iter()
        .map(|(stem, path)| match label_map.get(&stem) {
            Some(l) => Ok(FrameFiles {
                id: stem,
                points_path: path,
                labels_path: Some(l.clone()),
            }),
            None => Err(malformed(&path, "point file has no matching label file")),
        })
        .collect()
}

/// Unlabeled point files in a directory, sorted by stem.
pub fn list_point_files(dir: impl AsRef<Path>) -> Result<Vec<FrameFiles>> {
    Ok(files_with_ext(dir.as_ref(), "bin")?
        .into_iter()
        .map(|(id, points_path)| FrameFiles {
            id,
            points_path,
            labels_path: None,
        })
        .collect())
}

/// Frames of one sequence laid out as `<root>/<seq>/velodyne/*.bin` and
/// `<root>/<seq>/labels/*.label`. Frame ids are prefixed with the sequence.
pub fn sequence_frames(root: impl AsRef<Path>, sequence: &str) -> Result<Vec<FrameFiles>> {
    let seq = root.as_ref().join(sequence);
    let mut frames = pair_frames(seq.join("velodyne"), seq.join("labels"))?;
    for f in &mut frames {
        f.id = format!("{sequence}/{}", f.id);
    }
    Ok(frames)
}

pub fn encode_mask(partition: &Partition) -> Vec<u8> {
    let tags = partition.tags();
    partition
        .verdicts()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let outlier = u8::from(*v == Verdict::Outlier);
            outlier | tags.map_or(0, |t| t[i].code() << 1)
        })
        .collect()
}

pub fn decode_mask(bytes: &[u8]) -> std::result::Result<Partition, String> {
    let mut verdicts = Vec::with_capacity(bytes.len());
    let mut tags = Vec::with_capacity(bytes.len());
    for (i, &b) in bytes.iter().enumerate() {
        if b >> 4 != 0 {
            return Err(format!("byte {i}: unknown bits in {b:#04x}"));
        }
        verdicts.push(if b & 1 == 1 { Verdict::Outlier } else { Verdict::Kept });
        tags.push(match b >> 1 {
            0 => None,
            code => {
                let tag = StageTag::from_code(code).ok_or_else(|| format!("byte {i}: bad tag {code}"))?;
                if tag.verdict() != verdicts[i] {
                    return Err(format!("byte {i}: tag contradicts verdict"));
                }
                Some(tag)
            }
        });
    }
    if !tags.is_empty() && tags.iter().all(Option::is_some) {
        Ok(Partition::from_tags(tags.into_iter().flatten().collect()))
    } else {
        Ok(Partition::from_verdicts(verdicts))
    }
}

pub fn write_mask(partition: &Partition, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, encode_mask(partition)).map_err(|e| Error::io(path, e))
}

pub fn load_mask(path: impl AsRef<Path>, expected: usize) -> Result<Partition> {
    let path = path.as_ref();
    let part = decode_mask(&read_all(path)?).map_err(|r| malformed(path, r))?;
    if part.len() != expected {
        return Err(Error::LengthMismatch {
            expected,
            found: part.len(),
        });
    }
    Ok(part)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlyFormat {
    Ascii,
    BinaryLittleEndian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Palette {
    /// Kept blue, outliers red.
    #[default]
    Verdict,
    /// One color per stage tag; untagged partitions fall back to verdict colors.
    Stage,
}

pub const KEPT_COLOR: [u8; 3] = [0, 0, 255];
pub const OUTLIER_COLOR: [u8; 3] = [255, 0, 0];

pub fn stage_color(tag: StageTag) -> [u8; 3] {
    match tag {
        StageTag::HeightRetained => [0, 170, 0],
        StageTag::DensityRetained => KEPT_COLOR,
        StageTag::DensityRejected => OUTLIER_COLOR,
        StageTag::Rescued => [255, 160, 0],
    }
}

pub fn point_colors(partition: &Partition, palette: Palette) -> Vec<[u8; 3]> {
    match (palette, partition.tags()) {
        (Palette::Stage, Some(tags)) => tags.iter().map(|&t| stage_color(t)).collect(),
        _ => partition
            .verdicts()
            .iter()
            .map(|v| match v {
                Verdict::Kept => KEPT_COLOR,
                Verdict::Outlier => OUTLIER_COLOR,
            })
            .collect(),
    }
}

pub fn write_colored_to<W: Write>(
    cloud: &PointCloud,
    partition: &Partition,
    format: PlyFormat,
    palette: Palette,
    out: W,
) -> std::io::Result<()> {
    assert_eq!(cloud.len(), partition.len(), "partition must cover the cloud");
    let mut w = BufWriter::new(out);
    let fmt = match format {
        PlyFormat::Ascii => "ascii",
        PlyFormat::BinaryLittleEndian => "binary_little_endian",
    };
    write!(
        w,
        "ply\nformat {fmt} 1.0\nelement vertex {}\nproperty float x\nproperty float y\nproperty float z\n\
         property uchar red\nproperty uchar green\nproperty uchar blue\nend_header\n",
        cloud.len()
    )?;
    for (p, c) in cloud.points().iter().zip(point_colors(partition, palette)) {
        let xyz = [p.x as f32, p.y as f32, p.z as f32];
        match format {
            PlyFormat::Ascii => writeln!(w, "{} {} {} {} {} {}", xyz[0], xyz[1], xyz[2], c[0], c[1], c[2])?,
            PlyFormat::BinaryLittleEndian => {
                for v in xyz {
                    w.write_all(&v.to_le_bytes())?;
                }
                w.write_all(&c)?;
            }
        }
    }
    w.flush()
}

pub fn write_colored(
    cloud: &PointCloud,
    partition: &Partition,
    path: impl AsRef<Path>,
    format: PlyFormat,
    palette: Palette,
) -> Result<()> {
    let path = path.as_ref();
    if cloud.len() != partition.len() {
        return Err(Error::LengthMismatch {
            expected: cloud.len(),
            found: partition.len(),
        });
    }
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_colored_to(cloud, partition, format, palette, file).map_err(|e| Error::io(path, e))
}

/// Colored vertex read back from a PLY written by [`write_colored`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ColoredVertex {
    pub position: [f32; 3],
    pub color: [u8; 3],
}

/// Reads the vertex list of an ascii or binary little-endian PLY with
/// exactly the `x y z red green blue` layout this module writes.
pub fn read_colored(path: impl AsRef<Path>) -> Result<Vec<ColoredVertex>> {
    let path = path.as_ref();
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut r = BufReader::new(file);
    let mut line = String::new();
    let mut format = None;
    let mut count = None;
    let mut props = Vec::new();
    loop {
        line.clear();
        if r.read_line(&mut line).map_err(|e| Error::io(path, e))? == 0 {
            return Err(malformed(path, "missing end_header"));
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        match words.as_slice() {
            ["end_header"] => break,
            ["format", "ascii", _] => format = Some(PlyFormat::Ascii),
            ["format", "binary_little_endian", _] => format = Some(PlyFormat::BinaryLittleEndian),
            ["format", other, _] => return Err(malformed(path, format!("unsupported format {other}"))),
            ["element", "vertex", n] => {
                count = Some(n.parse::<usize>().map_err(|_| malformed(path, "bad vertex count"))?)
            }
            ["property", ty, name] => props.push(format!("{ty} {name}")),
            _ => {}
        }
    }
    let expected = [
        "float x",
        "float y",
        "float z",
        "uchar red",
        "uchar green",
        "uchar blue",
    ];
    if props != expected {
        return Err(malformed(path, format!("unexpected vertex properties {props:?}")));
    }
    let (format, count) = match (format, count) {
        (Some(f), Some(c)) => (f, c),
        _ => return Err(malformed(path, "incomplete header")),
    };
    let mut out = Vec::with_capacity(count);
    match format {
        PlyFormat::Ascii => {
            for _ in 0..count {
                line.clear();
                r.read_line(&mut line).map_err(|e| Error::io(path, e))?;
                let f: Vec<&str> = line.split_whitespace().collect();
                if f.len() != 6 {
                    return Err(malformed(path, "short vertex line"));
                }
                let pf = |s: &str| s.parse::<f32>().map_err(|_| malformed(path, "bad float"));
                let pu = |s: &str| s.parse::<u8>().map_err(|_| malformed(path, "bad color"));
                out.push(ColoredVertex {
                    position: [pf(f[0])?, pf(f[1])?, pf(f[2])?],
                    color: [pu(f[3])?, pu(f[4])?, pu(f[5])?],
                });
            }
        }
        PlyFormat::BinaryLittleEndian => {
            let mut rec = [0u8; 15];
            for _ in 0..count {
                r.read_exact(&mut rec).map_err(|e| Error::io(path, e))?;
                let f = |k: usize| f32::from_le_bytes(rec[4 * k..4 * k + 4].try_into().unwrap());
                out.push(ColoredVertex {
                    position: [f(0), f(1), f(2)],
                    color: [rec[12], rec[13], rec[14]],
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempfile::tempdir;

    #[test]
    fn single_record() {
        let mut bytes = Vec::new();
        for v in [1.0f32, 2.0, 3.0, 0.5] {
            bytes.extend_from_slice(&v.to_le_bytes());
        }
        let dir = tempdir().unwrap();
        let path = dir.path().join("one.bin");
        fs::write(&path, &bytes).unwrap();
        let cloud = load_points(&path).unwrap();
        assert_eq!(cloud.points(), &[Point::new(1.0, 2.0, 3.0, 0.5)]);

        bytes.push(0);
        fs::write(&path, &bytes).unwrap();
        assert!(matches!(load_points(&path), Err(Error::Malformed { .. })));
    }

    #[test]
    fn non_finite_reported_with_index() {
        let mut bytes = encode_points(&[Point::new(0.0, 0.0, 0.0, 0.0)]);
        for v in [0.0f32, f32::NAN, 0.0, 0.0] {
            bytes.extend_from_slice(&v.to_le_bytes());
        }
        let dir = tempdir().unwrap();
        let path = dir.path().join("nan.bin");
        fs::write(&path, bytes).unwrap();
        assert!(matches!(load_points(&path), Err(Error::NonFinite { index: 1 })));
    }

    #[test]
    fn label_masking() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("l.label");
        fs::write(&path, [0x0001_006Eu32.to_le_bytes(), 110u32.to_le_bytes()].concat()).unwrap();
        assert_eq!(load_labels(&path, 2).unwrap(), vec![110, 110]);
        assert!(matches!(
            load_labels(&path, 3),
            Err(Error::LengthMismatch { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn ply_single_and_empty() {
        let dir = tempdir().unwrap();
        let cloud = PointCloud::new(vec![Point::new(1.5, -2.0, 0.25, 0.1)]).unwrap();
        let part = Partition::from_verdicts(vec![Verdict::Kept]);
        for format in [PlyFormat::Ascii, PlyFormat::BinaryLittleEndian] {
            let path = dir.path().join("one.ply");
            write_colored(&cloud, &part, &path, format, Palette::Verdict).unwrap();
            let v = read_colored(&path).unwrap();
            assert_eq!(
                v,
                vec![ColoredVertex {
                    position: [1.5, -2.0, 0.25],
                    color: KEPT_COLOR
                }]
            );

            let path = dir.path().join("empty.ply");
            write_colored(
                &PointCloud::default(),
                &Partition::from_verdicts(vec![]),
                &path,
                format,
                Palette::Verdict,
            )
            .unwrap();
            assert!(read_colored(&path).unwrap().is_empty());
            let text = fs::read(&path).unwrap();
            assert!(String::from_utf8_lossy(&text).contains("element vertex 0\n"));
        }
    }

    #[test]
    fn mask_roundtrip_with_and_without_tags() {
        let tagged = Partition::from_tags(vec![
            StageTag::HeightRetained,
            StageTag::DensityRejected,
            StageTag::Rescued,
            StageTag::DensityRetained,
        ]);
        assert_eq!(decode_mask(&encode_mask(&tagged)).unwrap(), tagged);
        let plain = Partition::from_verdicts(vec![Verdict::Outlier, Verdict::Kept]);
        assert_eq!(encode_mask(&plain), vec![1, 0]);
        assert_eq!(decode_mask(&encode_mask(&plain)).unwrap(), plain);
        // outlier bit with the height-retained tag
        assert!(decode_mask(&[0b011]).is_err());
        assert!(decode_mask(&[0x20]).is_err());
    }

    #[test]
    fn pairing_requires_partners() {
        let dir = tempdir().unwrap();
        let (pd, ld) = (dir.path().join("p"), dir.path().join("l"));
        fs::create_dir_all(&pd).unwrap();
        fs::create_dir_all(&ld).unwrap();
        fs::write(pd.join("000001.bin"), []).unwrap();
        fs::write(ld.join("000001.label"), []).unwrap();
        assert_eq!(pair_frames(&pd, &ld).unwrap().len(), 1);
        fs::write(pd.join("000002.bin"), []).unwrap();
        assert!(pair_frames(&pd, &ld).is_err());
    }
}
