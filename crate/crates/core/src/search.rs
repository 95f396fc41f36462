//! Numerical catalyst optimization on explicit spectra.
//!
//! Nothing here uses the closed-form optimum: every candidate is scored by
//! building `|alpha>^N (x) C` and `Bell (x) C` and evaluating the generic
//! conversion probability, so the results serve as an independent check.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::closed_form::ConcentrationInstance;
use crate::error::{domain, Error, Result};
use crate::simplex;
use crate::spectrum::{vidal_probability, SchmidtSpectrum, TransformPair};

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    /// Resolution of the rank-2 scan over `c`.
    pub grid_step: f64,
    /// Convergence threshold on the probability spread of the simplex.
    pub simplex_tolerance: f64,
    /// Iteration cap for each simplex run.
    pub max_iterations: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            grid_step: 1e-4,
            simplex_tolerance: 1e-9,
            max_iterations: 5_000,
            restarts: 8,
            seed: DEFAULT_SEED,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.grid_step > 0.0 && self.grid_step <= 0.1) {
            return Err(Error::InvalidConfig(format!(
                "grid_step {} outside (0, 0.1]",
                self.grid_step
            )));
        }
        if self.simplex_tolerance.is_nan() || self.simplex_tolerance <= 0.0 {
            return Err(Error::InvalidConfig(
                "simplex_tolerance must be positive".into(),
            ));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig("max_iterations must be positive".into()));
        }
        if self.restarts == 0 {
            return Err(Error::InvalidConfig("restarts must be at least 1".into()));
        }
        Ok(())
    }
}

/// A catalyst spectrum found by search and the probability it achieves.
#[derive(Debug, Clone, PartialEq)]
pub struct RankKCatalyst {
    pub spectrum: SchmidtSpectrum,
    pub probability: f64,
    /// False when the winning simplex run hit its iteration cap.
    pub converged: bool,
}

/// Conversion probability of `|alpha>^N (x) C -> Bell (x) C`.
pub fn evaluate_catalyst(inst: &ConcentrationInstance, catalyst: &SchmidtSpectrum) -> Result<f64> {
    let base = inst.spectrum()?;
    evaluate_with_base(&base, catalyst)
}

fn evaluate_with_base(base: &SchmidtSpectrum, catalyst: &SchmidtSpectrum) -> Result<f64> {
    let pair = TransformPair::new(
        base.tensor(catalyst)?,
        SchmidtSpectrum::bell().tensor(catalyst)?,
    );
    Ok(vidal_probability(&pair))
}

fn require_probabilistic(inst: &ConcentrationInstance) -> Result<()> {
    if inst.is_deterministic() {
        Err(Error::DeterministicRegime)
    } else {
        Ok(())
    }
}

/// Scans `c = 1/2, 1/2 + step, ...` up to `1 - step` and returns the best
/// two-qubit catalyst (lowest `c` on ties).
pub fn grid_search_rank2(inst: &ConcentrationInstance, cfg: &SearchConfig) -> Result<RankKCatalyst> {
    cfg.validate()?;
    require_probabilistic(inst)?;
    let base = inst.spectrum()?;
    let steps = ((0.5 - cfg.grid_step) / cfg.grid_step + 1e-9).floor() as usize;

    let mut best: Option<(f64, f64)> = None;
    for i in 0..=steps {
        let c = 0.5 + i as f64 * cfg.grid_step;
        let p = evaluate_with_base(&base, &SchmidtSpectrum::two_qubit(c)?)?;
        if best.is_none_or(|(_, bp)| p > bp) {
            best = Some((c, p));
        }
    }
    let (c, probability) = best.expect("grid has at least one point");
    Ok(RankKCatalyst {
        spectrum: SchmidtSpectrum::two_qubit(c)?,
        probability,
        converged: true,
    })
}

/// Maps simplex coordinates (first `k - 1` entries) to a full weight vector.
fn weights(x: &[f64]) -> Vec<f64> {
    let mut w = x.to_vec();
    w.push(1.0 - x.iter().sum::<f64>());
    w
}

/// Random point of the probability simplex, uniform via normalized
/// exponentials, sorted non-increasingly.
fn random_ordered_point(rng: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
    let mut w: Vec<f64> = (0..k).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let total: f64 = w.iter().sum();
    w.iter_mut().for_each(|v| *v /= total);
    w.sort_by(|a, b| b.total_cmp(a));
    w
}

struct Candidate {
    weights: Vec<f64>,
    probability: f64,
    converged: bool,
}

/// Derivative-free search over ordered rank-`k` catalyst spectra.
///
/// Restarts from the uniform spectrum, from the rank-2 grid optimum padded
/// with a near-zero tail, and from random ordered points. Each run is
/// polished by restarting the simplex at its own optimum with a smaller
/// initial step until it stops improving.
pub fn simplex_search_rank_k(
    inst: &ConcentrationInstance,
    k: usize,
    cfg: &SearchConfig,
) -> Result<RankKCatalyst> {
    cfg.validate()?;
    if k < 2 {
        return Err(domain(format!("catalyst rank must be at least 2, got {k}")));
    }
    require_probabilistic(inst)?;
    let base = inst.spectrum()?;

    // Minimized objective: negative probability, or a positive penalty
    // proportional to the constraint violation outside the simplex.
    let objective = |x: &[f64]| -> f64 {
        let mut w = weights(x);
        let violation: f64 = w.iter().filter(|v| **v < 0.0).map(|v| -v).sum();
        if violation > 0.0 {
            return 1.0 + violation;
        }
        w.sort_by(|a, b| b.total_cmp(a));
        match SchmidtSpectrum::from_values(&w).and_then(|c| evaluate_with_base(&base, &c)) {
            Ok(p) => -p,
            Err(_) => 2.0,
        }
    };

    let mut starts: Vec<Vec<f64>> = vec![vec![1.0 / k as f64; k]];
    if cfg.restarts >= 2 {
        let rank2 = grid_search_rank2(inst, cfg)?;
        let c = rank2.spectrum.largest();
        let tail = 1e-9;
        let mut w = vec![c, 1.0 - c - tail * (k - 2) as f64];
        w.resize(k, tail);
        starts.push(w);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    while starts.len() < cfg.restarts {
        starts.push(random_ordered_point(&mut rng, k));
    }

    let mut best: Option<Candidate> = None;
    for start in starts {
        let mut point = start[..k - 1].to_vec();
        let mut value = objective(&point);
        let mut converged = false;
        let mut step = 0.05;
        for _ in 0..12 {
            let run = simplex::minimize(
                objective,
                &point,
                step,
                cfg.simplex_tolerance,
                cfg.simplex_tolerance,
                cfg.max_iterations,
            );
            let improved = run.value < value - cfg.simplex_tolerance;
            if run.value <= value {
                point = run.point;
                value = run.value;
                converged = run.converged;
            }
            if !improved && converged {
                break;
            }
            step *= 0.25;
        }

        let mut w = weights(&point);
        w.iter_mut().for_each(|v| *v = v.max(0.0));
        w.sort_by(|a, b| b.total_cmp(a));
        let candidate = Candidate {
            weights: w,
            probability: -value,
            converged,
        };
        let better = match &best {
            None => true,
            Some(b) => {
                candidate.probability > b.probability
                    || (candidate.probability == b.probability
                        && candidate.weights.partial_cmp(&b.weights)
                            == Some(std::cmp::Ordering::Less))
            }
        };
        if better {
            best = Some(candidate);
        }
    }

    let best = best.expect("at least one restart");
    let spectrum = SchmidtSpectrum::from_values(&best.weights)?;
    let probability = evaluate_with_base(&base, &spectrum)?;
    Ok(RankKCatalyst {
        spectrum,
        probability,
        converged: best.converged,
    })
}
