//! Cross-validation suite: the closed forms against explicit spectra, plus
//! the monotonicity and dominance properties of the ratio system.

use serde::{Deserialize, Serialize};

use crate::closed_form::{
    catalyzed_probability, initial_monotones, linspace, lqcc_probability, optimal_catalyst,
    ratio_profile, ConcentrationInstance,
};
use crate::error::{domain, Result};
use crate::spectrum::{vidal_probability, SchmidtSpectrum, TransformPair};

/// Agreement required between the closed form and the explicit route.
pub const EQUIVALENCE_TOLERANCE: f64 = 1e-12;

pub const DEFAULT_DENSITY: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: usize,
    pub total: usize,
}

impl CheckOutcome {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub density: usize,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::ok)
    }
}

/// Probability model under test: `(instance, c) -> probability`.
pub type Model<'a> = &'a dyn Fn(&ConcentrationInstance, f64) -> Result<f64>;

/// Explicit-spectrum probability for a two-qubit catalyst.
pub fn explicit_probability(inst: &ConcentrationInstance, c: f64) -> Result<f64> {
    let catalyst = SchmidtSpectrum::two_qubit(c)?;
    let pair = TransformPair::new(
        inst.spectrum()?.tensor(&catalyst)?,
        SchmidtSpectrum::bell().tensor(&catalyst)?,
    );
    Ok(vidal_probability(&pair))
}

/// Equivalence grid: `density` values of alpha in [0.75, 0.99], `3/2 density`
/// values of c in [0.51, 0.99], N = 2..=6. Density 20 gives 3000 points.
pub fn equivalence_grid(density: usize) -> Vec<(f64, f64, u32)> {
    let alphas = linspace(0.75, 0.99, density);
    let cs = linspace(0.51, 0.99, density * 3 / 2);
    let mut grid = Vec::with_capacity(alphas.len() * cs.len() * 5);
    for n in 2..=6 {
        for &alpha in &alphas {
            for &c in &cs {
                grid.push((alpha, c, n));
            }
        }
    }
    grid
}

pub fn run(density: usize) -> Result<VerifyReport> {
    run_with(density, &catalyzed_probability)
}

/// Runs every check, scoring `model` on the equivalence grid.
pub fn run_with(density: usize, model: Model<'_>) -> Result<VerifyReport> {
    if density < 2 {
        return Err(domain("grid density must be at least 2"));
    }
    let mut checks = Vec::new();

    let grid = equivalence_grid(density);
    let mut passed = 0;
    for &(alpha, c, n) in &grid {
        let inst = ConcentrationInstance::new(alpha, n)?;
        if (model(&inst, c)? - explicit_probability(&inst, c)?).abs() <= EQUIVALENCE_TOLERANCE {
            passed += 1;
        }
    }
    checks.push(CheckOutcome {
        name: "equivalence".into(),
        passed,
        total: grid.len(),
    });

    // Curves over c for every probabilistic (alpha, N).
    let c_points = (5 * density).max(100);
    let cs: Vec<f64> = linspace(0.5, 0.999, c_points);
    let instances: Vec<ConcentrationInstance> = (2..=6)
        .flat_map(|n| {
            linspace(0.75, 0.99, density)
                .into_iter()
                .map(move |a| ConcentrationInstance::new(a, n))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|i| !i.is_deterministic())
        .collect();

    let mut r2_dec = CheckOutcome { name: "r2 decreasing in c".into(), passed: 0, total: 0 };
    let mut r3_inc = CheckOutcome { name: "r3 increasing in c".into(), passed: 0, total: 0 };
    let mut r4_dom = CheckOutcome { name: "r4 never the minimum".into(), passed: 0, total: 0 };
    let mut continuity = CheckOutcome { name: "branch continuity at c = alpha".into(), passed: 0, total: 0 };
    let mut optimal = CheckOutcome { name: "c_opt maximizes probability".into(), passed: 0, total: 0 };
    let mut self_cat = CheckOutcome { name: "self-catalysis helps but is not optimal".into(), passed: 0, total: 0 };
    let mut universal = CheckOutcome { name: "every catalyst beats baseline".into(), passed: 0, total: 0 };

    for inst in &instances {
        let profiles = cs
            .iter()
            .map(|&c| ratio_profile(inst, c))
            .collect::<Result<Vec<_>>>()?;
        r2_dec.total += 1;
        if profiles.windows(2).all(|w| w[1].r2 < w[0].r2) {
            r2_dec.passed += 1;
        }
        r3_inc.total += 1;
        if profiles.windows(2).all(|w| w[1].r3 > w[0].r3) {
            r3_inc.passed += 1;
        }
        r4_dom.total += profiles.len();
        r4_dom.passed += profiles.iter().filter(|p| p.r2.min(p.r3) <= p.r4).count();

        let alpha = inst.alpha();
        let n = inst.n_copies() as i32;
        continuity.total += 1;
        let low = initial_monotones(inst, alpha)?[2];
        let high = 1.0 - alpha * alpha.powi(n - 1);
        if (low - high).abs() <= EQUIVALENCE_TOLERANCE {
            continuity.passed += 1;
        }

        let best = optimal_catalyst(inst);
        let c_opt = best.c_opt.expect("probabilistic instance with N >= 2");
        let baseline = lqcc_probability(inst);
        optimal.total += cs.len();
        universal.total += cs.len();
        for &c in &cs {
            let p = catalyzed_probability(inst, c)?;
            if p <= best.p_catalyzed + EQUIVALENCE_TOLERANCE {
                optimal.passed += 1;
            }
            if c == 0.5 || p > baseline {
                universal.passed += 1;
            }
        }

        self_cat.total += 1;
        if c_opt != alpha && catalyzed_probability(inst, alpha)? > baseline {
            self_cat.passed += 1;
        }
    }

    let mut monotone_c = CheckOutcome { name: "c_opt increasing in alpha".into(), passed: 0, total: 0 };
    for n in 2..=6 {
        let c_opts: Vec<f64> = instances
            .iter()
            .filter(|i| i.n_copies() == n)
            .map(|i| optimal_catalyst(i).c_opt.expect("probabilistic"))
            .collect();
        monotone_c.total += 1;
        if c_opts.windows(2).all(|w| w[1] > w[0]) {
            monotone_c.passed += 1;
        }
    }

    checks.extend([
        r2_dec, r3_inc, r4_dom, continuity, optimal, self_cat, universal, monotone_c,
    ]);
    Ok(VerifyReport { density, checks })
}
