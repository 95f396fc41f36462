//! Analytic results for `|alpha>^N -> Bell` with a two-qubit catalyst
//! `sqrt(c)|00> + sqrt(1-c)|11>`.
//!
//! Only the first four Vidal monotones matter: the target `Bell (x) C` has
//! rank four, so every higher ratio is infinite. The initial spectrum's top
//! entries reorder at `c = alpha`, which gives two branches.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::spectrum::{n_copy_spectrum, SchmidtSpectrum};

/// `N` copies of `sqrt(alpha)|00> + sqrt(1-alpha)|11>` to be concentrated
/// into one Bell pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationInstance {
    alpha: f64,
    n_copies: u32,
}

impl ConcentrationInstance {
    pub fn new(alpha: f64, n_copies: u32) -> Result<Self> {
        if !(0.5..=1.0).contains(&alpha) {
            return Err(domain(format!("alpha = {alpha} outside [0.5, 1]")));
        }
        if n_copies == 0 {
            return Err(domain("number of copies must be at least 1"));
        }
        Ok(Self { alpha, n_copies })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn n_copies(&self) -> u32 {
        self.n_copies
    }

    /// Largest squared Schmidt coefficient of the N-copy state, `alpha^N`.
    pub fn leading(&self) -> f64 {
        self.alpha.powi(self.n_copies as i32)
    }

    /// `1 - alpha^N` without cancellation near `alpha = 1`.
    fn leading_complement(&self) -> f64 {
        -(f64::from(self.n_copies) * self.alpha.ln()).exp_m1()
    }

    /// True when plain LOCC already succeeds with certainty (`alpha^N <= 1/2`).
    pub fn is_deterministic(&self) -> bool {
        2.0 * (1.0 - self.leading()) >= 1.0
    }

    pub fn spectrum(&self) -> Result<SchmidtSpectrum> {
        n_copy_spectrum(self.alpha, self.n_copies)
    }
}

/// Which ordering the initial spectrum's leading entries follow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    /// `c <= alpha`
    LowC,
    /// `c > alpha`
    HighC,
}

/// The four monotone ratios at one catalyst parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioProfile {
    pub c: f64,
    pub branch: Branch,
    pub r1: f64,
    #[serde(with = "crate::serde_inf")]
    pub r2: f64,
    #[serde(with = "crate::serde_inf")]
    pub r3: f64,
    #[serde(with = "crate::serde_inf")]
    pub r4: f64,
    pub minimum: f64,
    /// 1-based index of the smallest ratio; ties resolve to the lower index.
    pub argmin_index: u8,
}

impl RatioProfile {
    pub fn ratios(&self) -> [f64; 4] {
        [self.r1, self.r2, self.r3, self.r4]
    }
}

/// Outcome of optimizing the two-qubit catalyst.
///
/// A single copy cannot be catalyzed: that case reports `c_opt = None` with
/// the baseline probability and `deterministic = false`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CatalystResult {
    /// `None` in the deterministic regime, where no catalyst is needed.
    pub c_opt: Option<f64>,
    pub p_catalyzed: f64,
    pub p_baseline: f64,
    pub boost: f64,
    pub deterministic: bool,
}

fn check_catalyst(c: f64) -> Result<()> {
    if (0.5..=1.0).contains(&c) {
        Ok(())
    } else {
        Err(domain(format!("catalyst coefficient c = {c} outside [0.5, 1]")))
    }
}

fn ratio(numerator: f64, denominator: f64) -> f64 {
    if denominator > 0.0 {
        numerator / denominator
    } else {
        f64::INFINITY
    }
}

pub fn branch(inst: &ConcentrationInstance, c: f64) -> Branch {
    if c <= inst.alpha {
        Branch::LowC
    } else {
        Branch::HighC
    }
}

/// Uncatalyzed success probability `min(1, 2(1 - alpha^N))`.
pub fn lqcc_probability(inst: &ConcentrationInstance) -> f64 {
    (2.0 * (1.0 - inst.leading())).min(1.0)
}

/// `E_1..E_4` of `Bell (x) C`.
pub fn final_monotones(c: f64) -> Result<[f64; 4]> {
    check_catalyst(c)?;
    Ok([1.0, 1.0 - c / 2.0, 1.0 - c, (1.0 - c) / 2.0])
}

/// `E_1..E_4` of `|alpha>^N (x) C`.
pub fn initial_monotones(inst: &ConcentrationInstance, c: f64) -> Result<[f64; 4]> {
    check_catalyst(c)?;
    let n = inst.n_copies as i32;
    let a = inst.alpha;
    // Top level and the first one-excitation level of the N-copy spectrum.
    let top = inst.leading();
    let next = a.powi(n - 1) * (1.0 - a);

    let e2 = 1.0 - c * top;
    let (e3, e4) = match branch(inst, c) {
        Branch::LowC => (1.0 - top, 1.0 - top - c * next),
        Branch::HighC => {
            // The one-excitation level has multiplicity N; with a single copy
            // the third entry is (1-c) alpha instead.
            let third = if inst.n_copies >= 2 {
                c * next
            } else {
                (1.0 - c) * top
            };
            (1.0 - c * a.powi(n - 1), 1.0 - c * top - c * next - third)
        }
    };
    Ok([1.0, e2, e3, e4])
}

pub fn ratio_profile(inst: &ConcentrationInstance, c: f64) -> Result<RatioProfile> {
    let e_i = initial_monotones(inst, c)?;
    let e_f = final_monotones(c)?;
    let r: Vec<f64> = e_i.iter().zip(&e_f).map(|(i, f)| ratio(*i, *f)).collect();

    let (mut argmin, mut minimum) = (0, r[0]);
    for (i, &v) in r.iter().enumerate().skip(1) {
        if v < minimum {
            argmin = i;
            minimum = v;
        }
    }
    Ok(RatioProfile {
        c,
        branch: branch(inst, c),
        r1: r[0],
        r2: r[1],
        r3: r[2],
        r4: r[3],
        minimum,
        argmin_index: argmin as u8 + 1,
    })
}

/// Success probability with the two-qubit catalyst `c`.
pub fn catalyzed_probability(inst: &ConcentrationInstance, c: f64) -> Result<f64> {
    Ok(ratio_profile(inst, c)?.minimum.min(1.0))
}

/// Root in `[1/2, alpha)` of `r2 = r3` on the low branch, returned as
/// `(c, 1 - c)` with the complement computed without cancellation.
fn optimal_parameter(inst: &ConcentrationInstance) -> (f64, f64) {
    let x = inst.leading();
    let u = inst.leading_complement();
    // Discriminant (1 + 3x)^2 - 16x^2 factors as (1 - x)(1 + 7x).
    let s = (u * (1.0 + 7.0 * x)).sqrt();
    let c = (1.0 + 3.0 * x - s) / (4.0 * x);
    let one_minus_c = (s - u) / (4.0 * x);
    // At alpha^N = 1/2 the root is exactly 1/2; keep rounding inside the domain.
    (c.max(0.5), one_minus_c.min(0.5))
}

pub fn optimal_catalyst(inst: &ConcentrationInstance) -> CatalystResult {
    if inst.is_deterministic() {
        return CatalystResult {
            c_opt: None,
            p_catalyzed: 1.0,
            p_baseline: 1.0,
            boost: 1.0,
            deterministic: true,
        };
    }
    let u = inst.leading_complement();
    let p_baseline = 2.0 * u;
    if inst.n_copies == 1 {
        // r4 pins the single-copy probability to the baseline for every c.
        return CatalystResult {
            c_opt: None,
            p_catalyzed: p_baseline,
            p_baseline,
            boost: 1.0,
            deterministic: false,
        };
    }
    let (c, one_minus_c) = optimal_parameter(inst);
    debug_assert!(
        c >= 0.5 - 1e-12 && c < inst.alpha,
        "optimal catalyst {c} outside [0.5, alpha)"
    );
    let p_catalyzed = (u / one_minus_c).min(1.0);
    CatalystResult {
        c_opt: Some(c),
        p_catalyzed,
        p_baseline,
        boost: p_catalyzed / p_baseline,
        deterministic: false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoostRow {
    pub alpha: f64,
    pub n: u32,
    pub boost: f64,
}

/// Optimal-catalysis boost over an `alpha x N` grid, `N`-major.
/// Deterministic points report a boost of 1.
pub fn boost_sweep(alphas: &[f64], ns: &[u32]) -> Result<Vec<BoostRow>> {
    let mut rows = Vec::with_capacity(alphas.len() * ns.len());
    for &n in ns {
        for &alpha in alphas {
            let inst = ConcentrationInstance::new(alpha, n)?;
            rows.push(BoostRow {
                alpha,
                n,
                boost: optimal_catalyst(&inst).boost,
            });
        }
    }
    Ok(rows)
}

/// `steps` evenly spaced points from `from` to `to` inclusive.
pub fn linspace(from: f64, to: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![from],
        _ => (0..steps)
            .map(|i| from + (to - from) * i as f64 / (steps - 1) as f64)
            .collect(),
    }
}

/// Ratio profiles along a catalyst grid.
pub fn ratio_sweep(
    inst: &ConcentrationInstance,
    c_from: f64,
    c_to: f64,
    steps: usize,
) -> Result<Vec<RatioProfile>> {
    if steps == 0 {
        return Err(domain("sweep needs at least one step"));
    }
    linspace(c_from, c_to, steps)
        .into_iter()
        .map(|c| ratio_profile(inst, c))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use approx::assert_abs_diff_eq;

    fn inst(alpha: f64, n: u32) -> ConcentrationInstance {
        ConcentrationInstance::new(alpha, n).unwrap()
    }

    fn explicit_monotones(i: &ConcentrationInstance, c: f64) -> Vec<f64> {
        let cat = [c, 1.0 - c];
        let init: Vec<f64> = i
            .spectrum()
            .unwrap()
            .expanded()
            .iter()
            .flat_map(|x| cat.iter().map(move |y| x * y))
            .collect();
        oracle::monotones(&init)
    }

    #[test]
    fn instance_validation() {
        assert!(ConcentrationInstance::new(0.49, 2).is_err());
        assert!(ConcentrationInstance::new(1.2, 2).is_err());
        assert!(ConcentrationInstance::new(0.8, 0).is_err());
        assert!(ConcentrationInstance::new(1.0, 3).is_ok());
    }

    #[test]
    fn lqcc_examples() {
        assert_abs_diff_eq!(lqcc_probability(&inst(0.85, 2)), 0.555, epsilon = 1e-12);
        assert_eq!(lqcc_probability(&inst(0.7, 2)), 1.0);
        assert_abs_diff_eq!(lqcc_probability(&inst(0.99, 1)), 0.02, epsilon = 1e-12);
    }

    #[test]
    fn final_monotone_examples() {
        assert_eq!(final_monotones(1.0).unwrap(), [1.0, 0.5, 0.0, 0.0]);
        assert_eq!(final_monotones(0.5).unwrap(), [1.0, 0.75, 0.5, 0.25]);
        let e = final_monotones(0.6474).unwrap();
        for (got, want) in e.iter().zip([1.0, 0.6763, 0.3526, 0.1763]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
        assert!(final_monotones(0.4).is_err());
        assert!(final_monotones(f64::NAN).is_err());
    }

    #[test]
    fn initial_monotone_examples() {
        let i = inst(0.85, 2);
        let low = initial_monotones(&i, 0.6).unwrap();
        for (got, want) in low.iter().zip([1.0, 0.5665, 0.2775, 0.201]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
        let high = initial_monotones(&i, 0.9).unwrap();
        for (got, want) in high.iter().zip([1.0, 0.34975, 0.235, 0.12025]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
        for c in [0.6, 0.9] {
            let explicit = explicit_monotones(&i, c);
            let closed = initial_monotones(&i, c).unwrap();
            for l in 0..4 {
                assert_abs_diff_eq!(closed[l], explicit[l], epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn single_copy_high_branch_matches_explicit_spectrum() {
        for &(alpha, c) in &[(0.8, 0.9), (0.6, 0.95), (0.55, 0.56)] {
            let i = inst(alpha, 1);
            let explicit = explicit_monotones(&i, c);
            let closed = initial_monotones(&i, c).unwrap();
            for l in 0..4 {
                assert_abs_diff_eq!(closed[l], explicit[l], epsilon = 1e-12);
            }
            assert_abs_diff_eq!(
                catalyzed_probability(&i, c).unwrap(),
                2.0 * (1.0 - alpha),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn branches_agree_at_boundary() {
        for &(alpha, n) in &[(0.85, 2), (0.9, 3), (0.99, 6), (0.75, 1)] {
            let i = inst(alpha, n);
            let low = initial_monotones(&i, alpha).unwrap();
            let above = alpha + 1e-13;
            let high = initial_monotones(&i, above).unwrap();
            assert_abs_diff_eq!(low[2], high[2], epsilon = 1e-12);
            // Evaluate the high-branch E3 expression exactly at alpha.
            let e3_high = 1.0 - alpha * alpha.powi(n as i32 - 1);
            assert_abs_diff_eq!(low[2], e3_high, epsilon = 1e-12);
        }
    }

    #[test]
    fn ratio_profile_examples() {
        let i = inst(0.85, 2);
        let p = ratio_profile(&i, 0.5).unwrap();
        assert_eq!(p.branch, Branch::LowC);
        assert_eq!(p.r1, 1.0);
        assert_abs_diff_eq!(p.r2, 0.851_666_666_666_666_7, epsilon = 1e-12);
        assert_abs_diff_eq!(p.r3, 0.555, epsilon = 1e-12);
        assert_abs_diff_eq!(p.r4, 0.855, epsilon = 1e-12);
        assert_eq!(p.argmin_index, 3);
        assert_abs_diff_eq!(p.minimum, 0.555, epsilon = 1e-12);

        let p = ratio_profile(&i, 1.0).unwrap();
        assert_eq!(p.branch, Branch::HighC);
        assert_abs_diff_eq!(p.r2, 0.555, epsilon = 1e-12);
        assert_eq!(p.r3, f64::INFINITY);
        assert_eq!(p.r4, f64::INFINITY);
        let p = ratio_profile(&i, 1.0 - 1e-9).unwrap();
        assert_abs_diff_eq!(p.r2, 0.555, epsilon = 1e-8);
        assert!(p.r3 > 1e6);

        let c = optimal_catalyst(&i).c_opt.unwrap();
        let p = ratio_profile(&i, c).unwrap();
        assert_abs_diff_eq!(p.r2, p.r3, epsilon = 1e-12);
        assert_abs_diff_eq!(p.minimum, 0.787_008_484_325_504_2, epsilon = 1e-12);
        assert!(p.argmin_index == 2 || p.argmin_index == 3);
    }

    #[test]
    fn catalyzed_examples() {
        let i = inst(0.85, 2);
        assert_abs_diff_eq!(
            catalyzed_probability(&i, 0.647_398_972_785_118_2).unwrap(),
            0.787_008_484_325_504_2,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            catalyzed_probability(&i, 0.9).unwrap(),
            0.34975 / 0.55,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            catalyzed_probability(&i, 0.9).unwrap(),
            0.635909,
            epsilon = 1e-6
        );
        let single = inst(0.99, 1);
        for c in [0.5, 0.6, 0.9, 0.99, 1.0] {
            assert_abs_diff_eq!(
                catalyzed_probability(&single, c).unwrap(),
                0.02,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn optimal_catalyst_examples() {
        // Frozen from a 40-digit evaluation of the root formula.
        let r = optimal_catalyst(&inst(0.85, 2));
        assert!(!r.deterministic);
        assert_abs_diff_eq!(r.c_opt.unwrap(), 0.647_398_972_785_118_2, epsilon = 1e-12);
        assert_abs_diff_eq!(r.p_catalyzed, 0.787_008_484_325_504_2, epsilon = 1e-12);
        assert_abs_diff_eq!(r.p_baseline, 0.555, epsilon = 1e-12);
        assert_abs_diff_eq!(r.boost, 1.418_033, epsilon = 1e-6);

        let r = optimal_catalyst(&inst(0.99, 6));
        assert_abs_diff_eq!(r.c_opt.unwrap(), 0.838_564_426_742_753_4, epsilon = 1e-12);
        assert_abs_diff_eq!(r.p_catalyzed, 0.362_496_625_856_737_2, epsilon = 1e-12);
        assert_abs_diff_eq!(r.p_catalyzed, 0.362, epsilon = 5e-4);

        let r = optimal_catalyst(&inst(0.7, 2));
        assert!(r.deterministic);
        assert_eq!(r.c_opt, None);
        assert_eq!(r.p_catalyzed, 1.0);
        assert_eq!(r.boost, 1.0);
    }

    #[test]
    fn optimal_probability_matches_ratio_minimum() {
        for &(alpha, n) in &[(0.72, 2), (0.8, 2), (0.9, 3), (0.95, 5), (0.999, 9), (0.99, 32)] {
            let i = inst(alpha, n);
            let r = optimal_catalyst(&i);
            let c = r.c_opt.unwrap();
            assert!(c >= 0.5 && c < alpha);
            assert_abs_diff_eq!(
                r.p_catalyzed,
                catalyzed_probability(&i, c).unwrap(),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn single_copy_has_no_useful_catalyst() {
        let r = optimal_catalyst(&inst(0.9, 1));
        assert!(!r.deterministic);
        assert_eq!(r.c_opt, None);
        assert_abs_diff_eq!(r.p_catalyzed, 0.2, epsilon = 1e-12);
        assert_eq!(r.boost, 1.0);
    }

    #[test]
    fn boost_sweep_rows() {
        let rows = boost_sweep(&[0.85], &[2]).unwrap();
        assert_abs_diff_eq!(rows[0].boost, 1.418_033, epsilon = 1e-6);

        for n in [1, 2, 5, 16] {
            let edge = 0.5f64.powf(1.0 / f64::from(n));
            let rows = boost_sweep(&[edge], &[n]).unwrap();
            assert_abs_diff_eq!(rows[0].boost, 1.0, epsilon = 1e-7);
        }

        let rows = boost_sweep(&[0.99], &[2, 4, 8, 16, 32]).unwrap();
        assert!(rows.windows(2).all(|w| w[1].boost < w[0].boost));
    }

    #[test]
    fn ratio_sweep_shape() {
        let rows = ratio_sweep(&inst(0.85, 2), 0.5, 0.99, 50).unwrap();
        assert_eq!(rows.len(), 50);
        assert_eq!(rows[0].c, 0.5);
        assert_abs_diff_eq!(rows[49].c, 0.99, epsilon = 1e-15);
        assert!(ratio_sweep(&inst(0.85, 2), 0.5, 0.99, 0).is_err());
        assert!(ratio_sweep(&inst(0.85, 2), 0.4, 0.99, 5).is_err());
    }
}
