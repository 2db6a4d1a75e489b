//! Raster ECG handling: trace recovery from grayscale images with a
//! Monte-Carlo tree search agent, rendering (the test oracle for
//! extraction), resampling, and a deterministic surrogate embedding.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::util;

pub const LEAD_NAMES: [&str; 12] =
    ["I", "II", "III", "aVR", "aVL", "aVF", "V1", "V2", "V3", "V4", "V5", "V6"];

pub const EMBEDDING_DIM: usize = 128;

/// Multi-channel waveform in millivolts at a fixed sample rate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EcgTrace {
    channels: Vec<Vec<f64>>,
    sample_rate: f64,
    /// Set when the samples were produced by periodic tiling of a shorter
    /// segment.
    #[serde(default)]
    pub tiled: bool,
}

impl EcgTrace {
    pub fn new(channels: Vec<Vec<f64>>, sample_rate: f64) -> Result<Self, EcgError> {
        if sample_rate <= 0.0 || !sample_rate.is_finite() {
            return Err(EcgError::InvalidSampleRate(sample_rate));
        }
        if channels.is_empty() || channels[0].is_empty() {
            return Err(EcgError::EmptyTrace);
        }
        let len = channels[0].len();
        for (i, ch) in channels.iter().enumerate() {
            if ch.len() != len {
                return Err(EcgError::RaggedChannels { channel: i, expected: len, got: ch.len() });
            }
            if ch.iter().any(|v| !v.is_finite()) {
                return Err(EcgError::NonFiniteSample { channel: i });
            }
        }
        Ok(EcgTrace { channels, sample_rate, tiled: false })
    }

    pub fn single(samples: Vec<f64>, sample_rate: f64) -> Result<Self, EcgError> {
        Self::new(vec![samples], sample_rate)
    }

    pub fn n_channels(&self) -> usize {
        self.channels.len()
    }

    pub fn samples_per_channel(&self) -> usize {
        self.channels[0].len()
    }

    pub fn sample_rate(&self) -> f64 {
        self.sample_rate
    }

    pub fn channel(&self, i: usize) -> &[f64] {
        &self.channels[i]
    }

    pub fn channels(&self) -> &[Vec<f64>] {
        &self.channels
    }
}

/// Pixel-to-unit calibration of a raster image. Rows grow downward, so a
/// sample's voltage is `(baseline_row - row) * mv_per_px`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    pub seconds_per_px: f64,
    pub mv_per_px: f64,
    pub baseline_row: f64,
}

impl Calibration {
    pub fn validate(&self) -> Result<(), EcgError> {
        if self.seconds_per_px <= 0.0 || self.mv_per_px <= 0.0 {
            return Err(EcgError::InvalidCalibration);
        }
        Ok(())
    }
}

/// Grayscale raster: intensity 0 (black) .. 255 (white), row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RasterImage {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<u8>,
    pub calibration: Calibration,
}

impl RasterImage {
    pub fn blank(width: usize, height: usize, calibration: Calibration) -> Self {
        RasterImage { width, height, pixels: vec![255; width * height], calibration }
    }

    #[inline]
    pub fn intensity(&self, col: usize, row: usize) -> u8 {
        self.pixels[row * self.width + col]
    }

    #[inline]
    fn darkness(&self, col: i64, row: i64) -> f64 {
        if col < 0 || row < 0 || col >= self.width as i64 || row >= self.height as i64 {
            return 0.0;
        }
        (255.0 - self.intensity(col as usize, row as usize) as f64) / 255.0
    }
}

/// Parameters of the trace-following search agent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceExtractionConfig {
    /// MCTS rollouts per pixel column.
    pub rollout_budget: usize,
    /// UCT exploration constant.
    pub exploration: f64,
    /// Pixels at or below this intensity count as trace ink.
    pub darkness_threshold: u8,
    /// Maximum vertical move between adjacent columns, in pixels.
    pub max_vertical_step: usize,
    /// Lookahead depth of each search, in columns.
    pub horizon: usize,
    /// Weight of the squared-vertical-step continuity penalty.
    pub jerk_penalty: f64,
    pub rng_seed: u64,
}

impl Default for TraceExtractionConfig {
    fn default() -> Self {
        TraceExtractionConfig {
            rollout_budget: 48,
            exploration: core::f64::consts::SQRT_2,
            darkness_threshold: 128,
            max_vertical_step: 16,
            horizon: 8,
            jerk_penalty: 0.1,
            rng_seed: 0,
        }
    }
}

impl TraceExtractionConfig {
    pub fn validate(&self) -> Result<(), EcgError> {
        if self.rollout_budget == 0 || self.max_vertical_step == 0 || self.horizon == 0 {
            return Err(EcgError::InvalidExtractionConfig);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum EcgError {
    InvalidSampleRate(f64),
    EmptyTrace,
    RaggedChannels { channel: usize, expected: usize, got: usize },
    NonFiniteSample { channel: usize },
    InvalidCalibration,
    InvalidExtractionConfig,
    NoTraceFound { dark_column_fraction: f64 },
    WrongShape { channels: usize, samples: usize },
    RegionOutOfBounds,
}

impl core::fmt::Display for EcgError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            EcgError::InvalidSampleRate(r) => write!(f, "sample rate must be positive, got {r}"),
            EcgError::EmptyTrace => write!(f, "trace has no samples"),
            EcgError::RaggedChannels { channel, expected, got } => {
                write!(f, "channel {channel} has {got} samples, expected {expected}")
            }
            EcgError::NonFiniteSample { channel } => {
                write!(f, "channel {channel} contains a non-finite sample")
            }
            EcgError::InvalidCalibration => write!(f, "calibration factors must be positive"),
            EcgError::InvalidExtractionConfig => {
                write!(f, "rollout budget, max step, and horizon must be >= 1")
            }
            EcgError::NoTraceFound { dark_column_fraction } => write!(
                f,
                "no trace found: only {:.0}% of columns contain ink",
                dark_column_fraction * 100.0
            ),
            EcgError::WrongShape { channels, samples } => {
                write!(f, "expected a 12x1000 trace, got {channels}x{samples}")
            }
            EcgError::RegionOutOfBounds => write!(f, "lead region exceeds image bounds"),
        }
    }
}

// ---------------------------------------------------------------------------
// Extraction
// ---------------------------------------------------------------------------

struct SearchNode {
    row: i64,
    depth: usize,
    visits: f64,
    total: f64,
    children: Vec<usize>,
    expanded: bool,
}

struct ColumnSearch<'a> {
    image: &'a RasterImage,
    config: &'a TraceExtractionConfig,
    base_col: i64,
    arena: Vec<SearchNode>,
}

impl<'a> ColumnSearch<'a> {
    fn candidate_rows(&self, row: i64) -> Vec<i64> {
        let step = self.config.max_vertical_step as i64;
        let lo = (row - step).max(0);
        let hi = (row + step).min(self.image.height as i64 - 1);
        (lo..=hi).collect()
    }

    fn step_reward(&self, from_row: i64, to_row: i64, col: i64) -> f64 {
        let dr = (to_row - from_row) as f64;
        self.image.darkness(col, to_row) - self.config.jerk_penalty * dr * dr
    }

    fn expand(&mut self, node_idx: usize) {
        let (row, depth) = (self.arena[node_idx].row, self.arena[node_idx].depth);
        let rows = self.candidate_rows(row);
        let mut children = Vec::with_capacity(rows.len());
        for r in rows {
            self.arena.push(SearchNode {
                row: r,
                depth: depth + 1,
                visits: 0.0,
                total: 0.0,
                children: Vec::new(),
                expanded: false,
            });
            children.push(self.arena.len() - 1);
        }
        self.arena[node_idx].children = children;
        self.arena[node_idx].expanded = true;
    }

    fn rollout<R: Rng>(&self, mut row: i64, mut depth: usize, rng: &mut R) -> f64 {
        let mut reward = 0.0;
        while depth < self.config.horizon {
            let rows = self.candidate_rows(row);
            let next = rows[rng.random_range(0..rows.len())];
            depth += 1;
            reward += self.step_reward(row, next, self.base_col + depth as i64);
            row = next;
        }
        reward
    }

    /// One full search; returns the next row for column base_col + 1.
    fn run<R: Rng>(&mut self, start_row: i64, rng: &mut R) -> i64 {
        self.arena.clear();
        self.arena.push(SearchNode {
            row: start_row,
            depth: 0,
            visits: 0.0,
            total: 0.0,
            children: Vec::new(),
            expanded: false,
        });
        self.expand(0);

        for _ in 0..self.config.rollout_budget {
            // Selection: descend while fully expanded, collecting path rewards.
            let mut path = vec![0usize];
            let mut reward = 0.0;
            loop {
                let node = *path.last().unwrap();
                if self.arena[node].depth >= self.config.horizon {
                    break;
                }
                if !self.arena[node].expanded {
                    self.expand(node);
                }
                let parent_visits = self.arena[node].visits.max(1.0);
                let mut pick = None;
                let mut best = f64::NEG_INFINITY;
                for &child in &self.arena[node].children {
                    let c = &self.arena[child];
                    if c.visits == 0.0 {
                        pick = Some(child);
                        break;
                    }
                    let ucb = c.total / c.visits
                        + self.config.exploration * (parent_visits.ln() / c.visits).sqrt();
                    if ucb > best {
                        best = ucb;
                        pick = Some(child);
                    }
                }
                let chosen = pick.expect("non-empty candidate set");
                reward += self.step_reward(
                    self.arena[node].row,
                    self.arena[chosen].row,
                    self.base_col + self.arena[chosen].depth as i64,
                );
                let fresh = self.arena[chosen].visits == 0.0;
                path.push(chosen);
                if fresh {
                    break;
                }
            }
            let leaf = *path.last().unwrap();
            reward += self.rollout(self.arena[leaf].row, self.arena[leaf].depth, rng);
            for &node in &path {
                self.arena[node].visits += 1.0;
                self.arena[node].total += reward;
            }
        }

        // Most-visited root move; ties resolve to the first in row order.
        let root_children = self.arena[0].children.clone();
        let mut best_child = root_children[0];
        let mut best_visits = -1.0;
        for child in root_children {
            if self.arena[child].visits > best_visits {
                best_visits = self.arena[child].visits;
                best_child = child;
            }
        }
        self.arena[best_child].row
    }
}

/// Rectangular lead region, in pixel coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PixelRect {
    pub x: usize,
    pub y: usize,
    pub width: usize,
    pub height: usize,
}

/// Recovers a single-lead trace from the full image.
pub fn extract_trace(
    image: &RasterImage,
    config: &TraceExtractionConfig,
) -> Result<EcgTrace, EcgError> {
    let rect = PixelRect { x: 0, y: 0, width: image.width, height: image.height };
    extract_trace_region(image, rect, config)
}

/// Recovers a single-lead trace from a bounding box of the image. The agent
/// walks left to right, one output sample per pixel column; candidate
/// vertical moves are scored by seeded MCTS rollouts that favor cumulative
/// ink darkness and penalize vertical jerk.
pub fn extract_trace_region(
    image: &RasterImage,
    rect: PixelRect,
    config: &TraceExtractionConfig,
) -> Result<EcgTrace, EcgError> {
    image.calibration.validate()?;
    config.validate()?;
    if rect.width == 0
        || rect.height == 0
        || rect.x + rect.width > image.width
        || rect.y + rect.height > image.height
    {
        return Err(EcgError::RegionOutOfBounds);
    }

    // Crop to a standalone view so the search works in region coordinates.
    let mut pixels = Vec::with_capacity(rect.width * rect.height);
    for row in rect.y..rect.y + rect.height {
        for col in rect.x..rect.x + rect.width {
            pixels.push(image.intensity(col, row));
        }
    }
    let region = RasterImage {
        width: rect.width,
        height: rect.height,
        pixels,
        calibration: Calibration {
            baseline_row: image.calibration.baseline_row - rect.y as f64,
            ..image.calibration
        },
    };

    let dark_columns = (0..region.width)
        .filter(|&c| (0..region.height).any(|r| region.intensity(c, r) <= config.darkness_threshold))
        .count();
    let dark_fraction = dark_columns as f64 / region.width as f64;
    if dark_fraction < 0.8 {
        return Err(EcgError::NoTraceFound { dark_column_fraction: dark_fraction });
    }

    // Start at the darkest pixel of the first column (first such row wins).
    let mut row: i64 = (0..region.height)
        .min_by_key(|&r| region.intensity(0, r))
        .unwrap() as i64;

    let mut rng = util::rng_from_seed(config.rng_seed);
    let mut search =
        ColumnSearch { image: &region, config, base_col: 0, arena: Vec::new() };
    let mut rows = Vec::with_capacity(region.width);
    rows.push(row);
    for col in 0..region.width as i64 - 1 {
        search.base_col = col;
        row = search.run(row, &mut rng);
        rows.push(row);
    }

    let cal = region.calibration;
    let samples: Vec<f64> =
        rows.iter().map(|&r| (cal.baseline_row - r as f64) * cal.mv_per_px).collect();
    EcgTrace::single(samples, 1.0 / cal.seconds_per_px)
}

/// Outcome metadata of a render.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RenderReport {
    /// Samples whose pixel row fell outside the image and was clamped.
    pub clipped: usize,
}

/// Draws a single-lead trace as a hard-binary one-pixel polyline on white,
/// one column per sample. Approximate inverse of `extract_trace` and the
/// round-trip oracle for it.
pub fn render_trace(
    trace: &EcgTrace,
    mv_per_px: f64,
    height: usize,
    baseline_row: f64,
) -> Result<(RasterImage, RenderReport), EcgError> {
    if trace.n_channels() != 1 {
        return Err(EcgError::WrongShape {
            channels: trace.n_channels(),
            samples: trace.samples_per_channel(),
        });
    }
    if mv_per_px <= 0.0 {
        return Err(EcgError::InvalidCalibration);
    }
    let samples = trace.channel(0);
    let width = samples.len();
    let calibration = Calibration {
        seconds_per_px: 1.0 / trace.sample_rate(),
        mv_per_px,
        baseline_row,
    };
    let mut image = RasterImage::blank(width, height, calibration);
    let mut report = RenderReport::default();

    let mut to_row = |v: f64, clipped: &mut usize| -> i64 {
        let raw = (baseline_row - v / mv_per_px).round() as i64;
        let clamped = raw.clamp(0, height as i64 - 1);
        if clamped != raw {
            *clipped += 1;
        }
        clamped
    };

    let mut prev = to_row(samples[0], &mut report.clipped);
    image.pixels[prev as usize * width] = 0;
    for (col, &v) in samples.iter().enumerate().skip(1) {
        let row = to_row(v, &mut report.clipped);
        let (lo, hi) = if prev <= row { (prev, row) } else { (row, prev) };
        for r in lo..=hi {
            image.pixels[r as usize * width + col] = 0;
        }
        prev = row;
    }
    Ok((image, report))
}

/// Linear-interpolation resampling to a target rate and length. Segments
/// shorter than the target duration are tiled periodically (flagged on the
/// output). Amplitudes are never rescaled.
pub fn resample_and_rescale(
    trace: &EcgTrace,
    target_rate: f64,
    target_len: usize,
) -> Result<EcgTrace, EcgError> {
    if target_rate <= 0.0 || !target_rate.is_finite() {
        return Err(EcgError::InvalidSampleRate(target_rate));
    }
    if target_len == 0 {
        return Err(EcgError::EmptyTrace);
    }
    let n = trace.samples_per_channel();
    let ratio = trace.sample_rate() / target_rate;
    let mut tiled = false;
    let mut channels = Vec::with_capacity(trace.n_channels());
    for ch in trace.channels() {
        let mut out = Vec::with_capacity(target_len);
        for j in 0..target_len {
            let mut pos = j as f64 * ratio;
            if pos > (n - 1) as f64 {
                tiled = true;
                pos %= n as f64;
            }
            let lo = pos.floor() as usize;
            let frac = pos - lo as f64;
            let v = if frac == 0.0 {
                ch[lo]
            } else {
                // Wrap-around interpolation for the tiled tail segment.
                let hi = if lo + 1 < n { lo + 1 } else { 0 };
                ch[lo] + frac * (ch[hi] - ch[lo])
            };
            out.push(v);
        }
        channels.push(out);
    }
    let mut result = EcgTrace::new(channels, target_rate)?;
    result.tiled = tiled;
    Ok(result)
}

// ---------------------------------------------------------------------------
// Surrogate embedding
// ---------------------------------------------------------------------------

/// Seed constant of the fixed random convolution bank. Changing it changes
/// every embedding; it is part of the embedding contract.
pub const EMBED_BANK_SEED: u64 = 0x4543_4731;

const KERNEL_WIDTHS: [usize; 4] = [5, 11, 25, 49];
const KERNELS_PER_WIDTH: usize = 16;

struct ConvKernel {
    weights: Vec<f64>,
    bias: f64,
}

fn kernel_bank() -> Vec<ConvKernel> {
    let mut rng = util::rng_from_seed(EMBED_BANK_SEED);
    let mut bank = Vec::with_capacity(KERNEL_WIDTHS.len() * KERNELS_PER_WIDTH);
    for &width in &KERNEL_WIDTHS {
        let scale = 1.0 / (width as f64).sqrt();
        for _ in 0..KERNELS_PER_WIDTH {
            let weights = (0..width).map(|_| scale * util::standard_normal(&mut rng)).collect();
            let bias = 0.5 * util::standard_normal(&mut rng);
            bank.push(ConvKernel { weights, bias });
        }
    }
    bank
}

/// Deterministic 128-dimensional embedding of a 12x1000 trace: a fixed-seed
/// multi-width random convolution bank with rectification, global average
/// pooling (first 64 dims) and global max pooling (last 64 dims) across all
/// channels and positions. A stand-in encoder that honors the pipeline
/// contract; it makes no claim of diagnostic signal.
pub fn embed_trace(trace: &EcgTrace) -> Result<[f64; EMBEDDING_DIM], EcgError> {
    if trace.n_channels() != 12 || trace.samples_per_channel() != 1000 {
        return Err(EcgError::WrongShape {
            channels: trace.n_channels(),
            samples: trace.samples_per_channel(),
        });
    }
    let bank = kernel_bank();
    let mut out = [0.0_f64; EMBEDDING_DIM];
    for (k, kernel) in bank.iter().enumerate() {
        let mut sum = 0.0;
        let mut max = f64::NEG_INFINITY;
        let mut count = 0usize;
        for ch in trace.channels() {
            for window in ch.windows(kernel.weights.len()) {
                let mut acc = kernel.bias;
                for (w, x) in kernel.weights.iter().zip(window) {
                    acc += w * x;
                }
                let activated = acc.max(0.0);
                sum += activated;
                if activated > max {
                    max = activated;
                }
                count += 1;
            }
        }
        out[k] = sum / count as f64;
        out[64 + k] = max;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sine_trace(freq: f64, amplitude: f64, rate: f64, n: usize) -> EcgTrace {
        let samples: Vec<f64> = (0..n)
            .map(|i| amplitude * (core::f64::consts::TAU * freq * i as f64 / rate).sin())
            .collect();
        EcgTrace::single(samples, rate).unwrap()
    }

    fn roundtrip_config() -> TraceExtractionConfig {
        TraceExtractionConfig {
            rollout_budget: 64,
            max_vertical_step: 24,
            jerk_penalty: 0.01,
            rng_seed: 7,
            ..TraceExtractionConfig::default()
        }
    }

    #[test]
    fn flat_line_at_baseline_extracts_to_zero() {
        let trace = EcgTrace::single(vec![0.0; 120], 57.0).unwrap();
        let (image, report) = render_trace(&trace, 0.0125, 128, 64.0).unwrap();
        assert_eq!(report.clipped, 0);
        let extracted = extract_trace(&image, &roundtrip_config()).unwrap();
        assert!(extracted.channel(0).iter().all(|&v| v == 0.0));
        assert!((extracted.sample_rate() - 57.0).abs() < 1e-9);
    }

    #[test]
    fn all_white_image_is_no_trace() {
        let cal = Calibration { seconds_per_px: 0.01, mv_per_px: 0.01, baseline_row: 32.0 };
        let image = RasterImage::blank(100, 64, cal);
        match extract_trace(&image, &TraceExtractionConfig::default()) {
            Err(EcgError::NoTraceFound { dark_column_fraction }) => {
                assert_eq!(dark_column_fraction, 0.0)
            }
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn sine_renders_and_extracts_faithfully() {
        let trace = sine_trace(1.0, 1.0, 57.0, 143);
        let (image, _) = render_trace(&trace, 0.0125, 256, 128.0).unwrap();
        let extracted = extract_trace(&image, &roundtrip_config()).unwrap();
        let r = crate::util::pearson(trace.channel(0), extracted.channel(0));
        assert!(r >= 0.99, "correlation {r}");
        let amp = |xs: &[f64]| {
            let max = xs.iter().cloned().fold(f64::MIN, f64::max);
            let min = xs.iter().cloned().fold(f64::MAX, f64::min);
            0.5 * (max - min)
        };
        let rel = (amp(extracted.channel(0)) - amp(trace.channel(0))).abs() / amp(trace.channel(0));
        assert!(rel <= 0.02, "amplitude error {rel}");
    }

    #[test]
    fn extraction_is_translation_covariant() {
        let trace = sine_trace(1.5, 0.4, 100.0, 150);
        let (image, _) = render_trace(&trace, 0.0125, 256, 128.0).unwrap();
        let config = roundtrip_config();
        let base = extract_trace(&image, &config).unwrap();

        // Shift all ink up by d rows, keeping the calibration.
        let d = 5usize;
        let mut shifted = image.clone();
        shifted.pixels.fill(255);
        for row in d..image.height {
            for col in 0..image.width {
                shifted.pixels[(row - d) * image.width + col] = image.intensity(col, row);
            }
        }
        let moved = extract_trace(&shifted, &config).unwrap();
        let delta = d as f64 * image.calibration.mv_per_px;
        for (a, b) in base.channel(0).iter().zip(moved.channel(0)) {
            assert!((b - a - delta).abs() < 1e-12);
        }
    }

    #[test]
    fn render_constant_trace_marks_single_row() {
        let trace = EcgTrace::single(vec![0.25; 80], 40.0).unwrap();
        let (image, report) = render_trace(&trace, 0.05, 64, 40.0).unwrap();
        assert_eq!(report.clipped, 0);
        let expected_row = 40 - 5; // 0.25 mV / 0.05 mV per px above baseline
        let dark: Vec<(usize, usize)> = (0..image.height)
            .flat_map(|r| (0..image.width).map(move |c| (c, r)))
            .filter(|&(c, r)| image.intensity(c, r) == 0)
            .collect();
        assert_eq!(dark.len(), 80);
        assert!(dark.iter().all(|&(_, r)| r == expected_row));
    }

    #[test]
    fn render_clips_out_of_range_amplitudes() {
        let trace = EcgTrace::single(vec![10.0, -10.0, 0.0], 10.0).unwrap();
        let (_, report) = render_trace(&trace, 0.05, 32, 16.0).unwrap();
        assert_eq!(report.clipped, 2);
    }

    #[test]
    fn resample_identity_is_bitwise() {
        let trace = sine_trace(2.0, 0.8, 100.0, 1000);
        let out = resample_and_rescale(&trace, 100.0, 1000).unwrap();
        assert_eq!(out.channel(0), trace.channel(0));
        assert!(!out.tiled);
    }

    #[test]
    fn resample_preserves_constants_exactly() {
        let trace = EcgTrace::single(vec![0.5; 142], 57.0).unwrap();
        let out = resample_and_rescale(&trace, 100.0, 1000).unwrap();
        assert_eq!(out.samples_per_channel(), 1000);
        assert!((out.sample_rate() - 100.0).abs() < 1e-12);
        assert!(out.channel(0).iter().all(|&v| v == 0.5));
        assert!(out.tiled);
    }

    #[test]
    fn resample_matches_analytic_sine() {
        // One exact period, so periodic tiling continues the true signal.
        let trace = sine_trace(1.0, 1.0, 57.0, 57);
        let out = resample_and_rescale(&trace, 100.0, 1000).unwrap();
        let mut worst = 0.0_f64;
        for (j, &v) in out.channel(0).iter().enumerate() {
            let truth = (core::f64::consts::TAU * j as f64 / 100.0).sin();
            worst = worst.max((v - truth).abs());
        }
        assert!(worst <= 0.01, "max deviation {worst}");
    }

    #[test]
    fn resample_mean_of_band_limited_signal_within_one_percent() {
        let samples: Vec<f64> = (0..570)
            .map(|i| {
                let t = i as f64 / 57.0;
                1.0 + 0.5 * (core::f64::consts::TAU * 2.0 * t).sin()
                    + 0.2 * (core::f64::consts::TAU * 5.0 * t).cos()
            })
            .collect();
        let trace = EcgTrace::single(samples.clone(), 57.0).unwrap();
        let out = resample_and_rescale(&trace, 100.0, 1000).unwrap();
        let m0 = crate::util::mean(&samples);
        let m1 = crate::util::mean(out.channel(0));
        assert!((m1 - m0).abs() / m0.abs() < 0.01);
    }

    #[test]
    fn embedding_contract_and_determinism() {
        let channels: Vec<Vec<f64>> = (0..12)
            .map(|c| (0..1000).map(|i| ((c * 31 + i) as f64 * 0.01).sin()).collect())
            .collect();
        let trace = EcgTrace::new(channels, 100.0).unwrap();
        let a = embed_trace(&trace).unwrap();
        let b = embed_trace(&trace).unwrap();
        assert_eq!(a.len(), EMBEDDING_DIM);
        assert_eq!(a, b);
        assert!(a.iter().all(|v| v.is_finite()));
    }

    #[test]
    fn embedding_rejects_wrong_shapes() {
        let trace = EcgTrace::new(vec![vec![0.0; 999]; 12], 100.0).unwrap();
        match embed_trace(&trace) {
            Err(EcgError::WrongShape { channels: 12, samples: 999 }) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn zero_trace_embedding_is_the_bias_pattern() {
        let trace = EcgTrace::new(vec![vec![0.0; 1000]; 12], 100.0).unwrap();
        let e = embed_trace(&trace).unwrap();
        // Average pool equals max pool on constant activations.
        for k in 0..64 {
            assert!((e[k] - e[64 + k]).abs() < 1e-15);
            assert!(e[k] >= 0.0);
        }
        // Some biases are positive, so the baseline vector is not all zero.
        assert!(e.iter().any(|&v| v > 0.0));
    }
}
