use nalgebra::Matrix3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{InertiaResult, Provenance};
use crate::curves::{Link, SegmentGrid};
use crate::error::{invalid, Error, Result};
use crate::geom::{Point, Vector};

pub const DEFAULT_CHUNKS: u32 = 64;

/// Random words consumed per sample: three `f64` draws of two 32-bit words each.
const WORDS_PER_SAMPLE: u128 = 6;

/// Monte Carlo settings.
///
/// Samples come from ChaCha8 seeded with `seed`; sample `i` reads stream words
/// `6i..6i+6`, so every sample point is fixed by `(seed, i)` alone. The index
/// range is cut into `chunks` contiguous blocks (chunk `c` starts at
/// `c * samples / chunks`), each block is reduced on its own, and the block
/// sums are combined in block order. `threads` only changes how blocks are
/// scheduled, never the result.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct McConfig {
    pub seed: u64,
    pub samples: u64,
    pub chunks: u32,
    pub threads: Option<usize>,
}

impl McConfig {
    pub fn new(seed: u64, samples: u64) -> Self {
        McConfig {
            seed,
            samples,
            chunks: DEFAULT_CHUNKS,
            threads: None,
        }
    }

    fn chunk_range(&self, c: u32) -> (u64, u64) {
        let n = self.samples as u128;
        let k = self.chunks as u128;
        let lo = (c as u128 * n / k) as u64;
        let hi = ((c as u128 + 1) * n / k) as u64;
        (lo, hi)
    }
}

/// Raw sums over the accepted points of one chunk, relative to the box center.
#[derive(Clone, Copy, Debug)]
struct ChunkSums {
    samples: u64,
    hits: u64,
    first: Vector,
    second: Matrix3<f64>,
}

impl ChunkSums {
    fn zero() -> Self {
        ChunkSums {
            samples: 0,
            hits: 0,
            first: Vector::zeros(),
            second: Matrix3::zeros(),
        }
    }

    fn add(&mut self, other: &ChunkSums) {
        self.samples += other.samples;
        self.hits += other.hits;
        self.first += other.first;
        self.second += other.second;
    }

    /// Second moment about `c` (relative to the box center), summed over hits.
    fn second_about(&self, c: &Vector) -> Matrix3<f64> {
        self.second - self.first * c.transpose() - c * self.first.transpose()
            + c * c.transpose() * self.hits as f64
    }
}

fn inertia_from_second_moment(s: &Matrix3<f64>) -> Matrix3<f64> {
    Matrix3::identity() * s.trace() - s
}

/// Inertia of the solid tube around `link` by uniform sampling of the
/// tube-inflated bounding box. A sample is inside when its distance to the
/// centerlines is at most the tube radius, so touching or overlapping parts
/// of the tube are counted once.
pub fn mc_inertia(link: &Link, cfg: &McConfig) -> Result<InertiaResult> {
    if cfg.chunks < 2 {
        return Err(invalid("at least 2 chunks are needed for the error estimate"));
    }
    if cfg.samples < cfg.chunks as u64 {
        return Err(invalid(format!(
            "need at least one sample per chunk ({} samples, {} chunks)",
            cfg.samples, cfg.chunks
        )));
    }
    let a = link.tube_radius();
    let bounds = link.bounding_box().inflated(a);
    let box_volume = bounds.volume();
    if !(box_volume > 0.0 && box_volume.is_finite()) {
        return Err(Error::DegenerateGeometry("sampling box has no volume".into()));
    }
    let grid = SegmentGrid::new(link);
    let origin = bounds.min;
    let extent = bounds.extent();
    let center = bounds.center();

    let run_chunk = |c: u32| -> ChunkSums {
        let (lo, hi) = cfg.chunk_range(c);
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_word_pos(lo as u128 * WORDS_PER_SAMPLE);
        let mut sums = ChunkSums::zero();
        sums.samples = hi - lo;
        for _ in lo..hi {
            let u: f64 = rng.random();
            let v: f64 = rng.random();
            let w: f64 = rng.random();
            let p = Point::new(
                origin.x + u * extent.x,
                origin.y + v * extent.y,
                origin.z + w * extent.z,
            );
            if grid.within(&p, a) {
                let r = p - center;
                sums.hits += 1;
                sums.first += r;
                sums.second += r * r.transpose();
            }
        }
        sums
    };

    let chunks: Vec<ChunkSums> = match cfg.threads {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| invalid(format!("cannot build thread pool: {e}")))?
            .install(|| (0..cfg.chunks).into_par_iter().map(run_chunk).collect()),
        None => (0..cfg.chunks).into_par_iter().map(run_chunk).collect(),
    };

    let mut total = ChunkSums::zero();
    for c in &chunks {
        total.add(c);
    }
    if total.hits == 0 {
        return Err(Error::DegenerateGeometry(format!(
            "none of the {} samples fell inside the tube",
            cfg.samples
        )));
    }

    let rho = link.density();
    let cell_mass = rho * box_volume;
    let mass = cell_mass * total.hits as f64 / total.samples as f64;
    let com_rel = total.first / total.hits as f64;
    let com = center + com_rel;
    let tensor = inertia_from_second_moment(&total.second_about(&com_rel)) * (cell_mass / total.samples as f64);

    // per-chunk estimates about the common center of mass; their spread gives the error
    let k = chunks.len() as f64;
    let estimates: Vec<(f64, Matrix3<f64>)> = chunks
        .iter()
        .map(|c| {
            let scale = cell_mass / c.samples as f64;
            (
                scale * c.hits as f64,
                inertia_from_second_moment(&c.second_about(&com_rel)) * scale,
            )
        })
        .collect();
    let mean_mass = estimates.iter().map(|e| e.0).sum::<f64>() / k;
    let mean_tensor = estimates.iter().map(|e| e.1).sum::<Matrix3<f64>>() / k;
    let var_mass = estimates.iter().map(|e| (e.0 - mean_mass).powi(2)).sum::<f64>() / (k - 1.0);
    let var_tensor = estimates
        .iter()
        .map(|e| (e.1 - mean_tensor).map(|x| x * x))
        .sum::<Matrix3<f64>>()
        / (k - 1.0);
    let stderr = var_tensor.map(|v| (v / k).sqrt());
    let mass_stderr = (var_mass / k).sqrt();

    // exact symmetry; the accumulated sums are symmetric up to rounding
    let tensor = (tensor + tensor.transpose()) * 0.5;
    InertiaResult::from_tensor(
        mass,
        com,
        tensor,
        Provenance::MonteCarlo {
            seed: cfg.seed,
            samples: cfg.samples,
            chunks: cfg.chunks,
            accepted: total.hits,
            stderr,
            mass_stderr,
        },
    )
}
