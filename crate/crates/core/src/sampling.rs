//! Deterministic sampling of tangent points inside a model's chart box.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bundle::{BundleFrame, TangentPoint};
use crate::geometry::{GeometryError, ManifoldModel};

/// Fiber coordinates are drawn from `[−FIBER_BOX, FIBER_BOX]ⁿ`.
pub const FIBER_BOX: f64 = 2.0;

/// Give up after this many draws per requested sample.
const MAX_ATTEMPTS_PER_SAMPLE: usize = 50;

/// Mixes the run seed with a job name (FNV-1a), so every job draws an
/// independent, reproducible stream regardless of scheduling order.
pub fn job_seed(seed: u64, job: &str) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    seed.to_le_bytes()
        .iter()
        .chain(job.as_bytes())
        .fold(OFFSET, |h, &b| (h ^ u64::from(b)).wrapping_mul(PRIME))
}

#[derive(Debug, Clone)]
pub struct Sample {
    pub point: TangentPoint,
    pub frame: BundleFrame,
}

#[derive(Debug, Clone)]
pub struct SampleSet {
    pub samples: Vec<Sample>,
    /// Draws discarded because the metric was singular or a component
    /// could not be evaluated there.
    pub rejected: usize,
    /// Largest condition number of `g` over accepted samples.
    pub max_condition: f64,
}

impl SampleSet {
    pub fn draw(model: &ManifoldModel, count: usize, seed: u64) -> Result<Self, GeometryError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = model.dim;
        let mut samples = Vec::with_capacity(count);
        let mut rejected = 0;
        let mut max_condition: f64 = 0.0;
        let mut last_err = None;
        for _ in 0..count.max(1) * MAX_ATTEMPTS_PER_SAMPLE {
            if samples.len() == count {
                break;
            }
            let x: Vec<f64> = model.chart.iter().map(|&(lo, hi)| draw(&mut rng, lo, hi)).collect();
            let y: Vec<f64> = (0..n).map(|_| draw(&mut rng, -FIBER_BOX, FIBER_BOX)).collect();
            let point = TangentPoint::new(x, y);
            match BundleFrame::new(model, &point) {
                Ok(frame) => {
                    max_condition = max_condition.max(frame.geo.condition_number());
                    samples.push(Sample { point, frame });
                }
                Err(e @ (GeometryError::SingularMetric { .. } | GeometryError::Eval(_))) => {
                    rejected += 1;
                    last_err = Some(e);
                }
                Err(e) => return Err(e),
            }
        }
        if samples.is_empty() && count > 0 {
            return Err(last_err.unwrap_or_else(|| GeometryError::InvalidModel("no valid sample points".into())));
        }
        Ok(Self {
            samples,
            rejected,
            max_condition,
        })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

fn draw(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    if lo < hi {
        rng.random_range(lo..hi)
    } else {
        lo
    }
}
