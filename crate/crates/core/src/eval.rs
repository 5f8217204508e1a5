// SPDX-License-Identifier: Apache-2.0

//! Point-wise confusion counts against ground-truth noise labels and
//! precision / recall / F1, per frame and micro-averaged over a dataset.
//!
//! A true positive is a noise point the filter removed, a false positive a
//! clean point it removed, a false negative a noise point it kept.

use std::collections::BTreeSet;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Partition, PointCloud, Verdict};
use crate::par;

/// Semantic class ids counted as noise.
pub type NoiseIds = BTreeSet<u32>;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Confusion {
    pub tp: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
    pub tn: u64,
}

impl Confusion {
    pub fn total(&self) -> u64 {
        self.tp + self.fp + self.fn_ + self.tn
    }

    pub fn metrics(&self) -> Metrics {
        precision_recall_f1(self)
    }
}

impl std::ops::Add for Confusion {
    type Output = Confusion;

    fn add(self, o: Confusion) -> Confusion {
        Confusion {
            tp: self.tp + o.tp,
            fp: self.fp + o.fp,
            fn_: self.fn_ + o.fn_,
            tn: self.tn + o.tn,
        }
    }
}

impl std::iter::Sum for Confusion {
    fn sum<I: Iterator<Item = Confusion>>(iter: I) -> Confusion {
        iter.fold(Confusion::default(), |a, b| a + b)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

pub fn confusion(partition: &Partition, labels: &[u32], noise_ids: &NoiseIds) -> Result<Confusion> {
    if labels.len() != partition.len() {
        return Err(Error::LengthMismatch {
            expected: partition.len(),
            found: labels.len(),
        });
    }
    let mut c = Confusion::default();
    for (v, l) in partition.verdicts().iter().zip(labels) {
        let noise = noise_ids.contains(l);
        match (v, noise) {
            (Verdict::Outlier, true) => c.tp += 1,
            (Verdict::Outlier, false) => c.fp += 1,
            (Verdict::Kept, true) => c.fn_ += 1,
            (Verdict::Kept, false) => c.tn += 1,
        }
    }
    Ok(c)
}

/// Confusion of a partition against the labels carried by `cloud`.
pub fn frame_confusion(cloud: &PointCloud, partition: &Partition, noise_ids: &NoiseIds) -> Result<Confusion> {
    let labels = cloud.labels().ok_or(Error::MissingLabels)?;
    confusion(partition, labels, noise_ids)
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Harmonic mean of precision and recall; zero when either is zero.
pub fn f1_score(precision: f64, recall: f64) -> f64 {
    if precision <= 0.0 || recall <= 0.0 {
        0.0
    } else {
        2.0 / (1.0 / recall + 1.0 / precision)
    }
}

/// Undefined ratios (0/0) are reported as 0.
pub fn precision_recall_f1(c: &Confusion) -> Metrics {
    let precision = ratio(c.tp, c.tp + c.fp);
    let recall = ratio(c.tp, c.tp + c.fn_);
    Metrics {
        precision,
        recall,
        f1: f1_score(precision, recall),
    }
}

/// Recomputes F1 from a reported precision/recall pair and compares it with
/// the reported F1. All three values in percent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct F1Check {
    pub precision: f64,
    pub recall: f64,
    pub reported_f1: f64,
    pub computed_f1: f64,
    pub deviation: f64,
    pub consistent: bool,
}

pub fn check_reported_f1(precision: f64, recall: f64, reported_f1: f64, tolerance: f64) -> F1Check {
    let computed_f1 = 100.0 * f1_score(precision / 100.0, recall / 100.0);
    let deviation = computed_f1 - reported_f1;
    F1Check {
        precision,
        recall,
        reported_f1,
        computed_f1,
        deviation,
        consistent: deviation.abs() <= tolerance,
    }
}

impl F1Check {
    /// Report note for an inconsistent triple, `None` when consistent.
    pub fn annotation(&self, label: &str) -> Option<String> {
        (!self.consistent).then(|| {
            format!(
                "{label}: reported F1 {:.2} does not match precision {:.2} / recall {:.2}, whose harmonic mean is {:.2} ({:+.2})",
                self.reported_f1, self.precision, self.recall, self.computed_f1, self.deviation
            )
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameResult {
    pub frame: String,
    pub confusion: Confusion,
    #[serde(flatten)]
    pub metrics: Metrics,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub confusion: Confusion,
    #[serde(flatten)]
    pub metrics: Metrics,
}

/// Evaluation of one filter over a set of frames.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    /// Always `"micro"`: confusions are summed before computing metrics.
    pub averaging: String,
    pub noise_class_ids: Vec<u32>,
    pub per_frame: Vec<FrameResult>,
    pub aggregate: Aggregate,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub annotations: Vec<String>,
}

impl EvalReport {
    pub fn from_frames(mut per_frame: Vec<FrameResult>, noise_ids: &NoiseIds) -> Self {
        per_frame.sort_by(|a, b| a.frame.cmp(&b.frame));
        let confusion: Confusion = per_frame.iter().map(|f| f.confusion).sum();
        EvalReport {
            averaging: "micro".into(),
            noise_class_ids: noise_ids.iter().copied().collect(),
            per_frame,
            aggregate: Aggregate {
                confusion,
                metrics: confusion.metrics(),
            },
            annotations: Vec::new(),
        }
    }

    pub fn annotate(&mut self, note: impl Into<String>) {
        self.annotations.push(note.into());
    }

    /// Delimited table: one row per frame plus an `ALL` row, metrics as
    /// percentages with two decimals.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let csv_err = |e: csv::Error| Error::io("<csv>", std::io::Error::other(e));
        w.write_record(["frame", "precision", "recall", "f1"])
            .map_err(csv_err)?;
        let rows = self
            .per_frame
            .iter()
            .map(|f| (f.frame.as_str(), f.metrics))
            .chain(std::iter::once(("ALL", self.aggregate.metrics)));
        for (name, m) in rows {
            w.write_record([
                name.to_string(),
                format!("{:.2}", 100.0 * m.precision),
                format!("{:.2}", 100.0 * m.recall),
                format!("{:.2}", 100.0 * m.f1),
            ])
            .map_err(csv_err)?;
        }
        w.flush().map_err(|e| Error::io("<csv>", e))?;
        Ok(())
    }
}

/// Report document written by a run: tool metadata, the parameters used,
/// and the evaluation itself.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub filter: String,
    pub params: serde_json::Value,
    #[serde(flatten)]
    pub report: EvalReport,
}

impl RunReport {
    pub fn new(filter: &str, params: serde_json::Value, report: EvalReport) -> Self {
        RunReport {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            filter: filter.into(),
            params,
            report,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// A labeled frame with an identifier used for ordering and diagnostics.
#[derive(Debug, Clone)]
pub struct Frame {
    pub id: String,
    pub cloud: PointCloud,
}

/// Runs `filter` on every frame and accumulates the metrics.
pub fn evaluate_dataset<F>(frames: &[Frame], filter: F, noise_ids: &NoiseIds) -> Result<EvalReport>
where
    F: Fn(&PointCloud) -> Result<Partition> + Sync + Send,
{
    let ids: Vec<String> = frames.iter().map(|f| f.id.clone()).collect();
    evaluate_with(&ids, |i| Ok(frames[i].cloud.clone()), filter, noise_ids)
}

/// Like [`evaluate_dataset`], but frames are produced on demand by `load`,
/// so only the frames in flight are held in memory.
pub fn evaluate_with<L, F>(ids: &[String], load: L, filter: F, noise_ids: &NoiseIds) -> Result<EvalReport>
where
    L: Fn(usize) -> Result<PointCloud> + Sync + Send,
    F: Fn(&PointCloud) -> Result<Partition> + Sync + Send,
{
    if ids.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mut order: Vec<usize> = (0..ids.len()).collect();
    order.sort_by(|&a, &b| ids[a].cmp(&ids[b]));
    let results = par::map_indices(order.len(), |k| {
        let i = order[k];
        let run = || -> Result<FrameResult> {
            let cloud = load(i)?;
            let partition = filter(&cloud)?;
            if partition.len() != cloud.len() {
                return Err(Error::LengthMismatch {
                    expected: cloud.len(),
                    found: partition.len(),
                });
            }
            let confusion = frame_confusion(&cloud, &partition, noise_ids)?;
            Ok(FrameResult {
                frame: ids[i].clone(),
                confusion,
                metrics: confusion.metrics(),
            })
        };
        run().map_err(|e| e.in_frame(ids[i].clone()))
    });
    let per_frame = results.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(EvalReport::from_frames(per_frame, noise_ids))
}
