//! Ordered Schmidt spectra and the generic LOCC conversion criteria.
//!
//! A spectrum is the non-increasing list of squared Schmidt coefficients of a
//! bipartite pure state. It is stored compressed as `(value, multiplicity)`
//! levels so that the spectrum of `N` copies of a two-qubit state costs
//! `O(N)` memory instead of `O(2^N)`.
//!
//! Majorization and the optimal conversion probability are evaluated on the
//! compressed form directly. Between consecutive level boundaries of the two
//! spectra every partial sum is linear in the index, so checking the boundary
//! points is exact.

use crate::error::{domain, Error, Result};

/// Allowed deviation of the input sum from 1 before construction fails.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;
/// Relative gap below which two values are treated as the same level.
pub const MERGE_TOLERANCE: f64 = 1e-12;
/// Slack on each partial-sum comparison in [`majorizes`].
pub const MAJORIZATION_TOLERANCE: f64 = 1e-12;

/// One distinct squared Schmidt coefficient and how often it occurs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub value: f64,
    pub multiplicity: u128,
}

impl Level {
    pub fn new(value: f64, multiplicity: u128) -> Self {
        Self {
            value,
            multiplicity,
        }
    }
}

/// Canonical ordered spectrum: levels strictly decreasing, weighted sum 1.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtSpectrum {
    levels: Vec<Level>,
    dimension: u128,
}

impl SchmidtSpectrum {
    /// Builds a spectrum from plain (unordered) values.
    pub fn from_values(values: &[f64]) -> Result<Self> {
        Self::from_levels(values.iter().map(|&v| Level::new(v, 1)))
    }

    /// Builds a spectrum from levels in any order, merging equal values and
    /// absorbing normalization drift up to [`NORMALIZATION_TOLERANCE`].
    pub fn from_levels(levels: impl IntoIterator<Item = Level>) -> Result<Self> {
        let mut levels: Vec<Level> = levels
            .into_iter()
            .filter(|l| l.multiplicity > 0)
            .collect();
        if levels.is_empty() {
            return Err(Error::EmptyInput);
        }
        for l in &levels {
            if !l.value.is_finite() {
                return Err(Error::NonFiniteEntry(l.value));
            }
            if l.value < 0.0 {
                return Err(Error::NegativeEntry(l.value));
            }
        }
        let dimension = levels
            .iter()
            .try_fold(0u128, |acc, l| acc.checked_add(l.multiplicity))
            .ok_or(Error::DimensionOverflow)?;

        let sum: f64 = levels
            .iter()
            .map(|l| l.value * l.multiplicity as f64)
            .sum();
        if sum.is_nan() || (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::NotNormalized {
                sum,
                tolerance: NORMALIZATION_TOLERANCE,
            });
        }

        levels.sort_by(|a, b| b.value.total_cmp(&a.value));
        let mut merged: Vec<Level> = Vec::with_capacity(levels.len());
        for l in levels {
            match merged.last_mut() {
                Some(top) if top.value - l.value <= MERGE_TOLERANCE * top.value => {
                    let m = top.multiplicity + l.multiplicity;
                    top.value = (top.value * top.multiplicity as f64
                        + l.value * l.multiplicity as f64)
                        / m as f64;
                    top.multiplicity = m;
                }
                _ => merged.push(l),
            }
        }
        if sum != 1.0 {
            for l in &mut merged {
                l.value /= sum;
            }
        }

        Ok(Self {
            levels: merged,
            dimension,
        })
    }

    /// Maximally entangled two-qubit state, `(1/2, 1/2)`.
    pub fn bell() -> Self {
        Self {
            levels: vec![Level::new(0.5, 2)],
            dimension: 2,
        }
    }

    /// Product state, `(1)`. Neutral element of [`tensor`](Self::tensor).
    pub fn product() -> Self {
        Self {
            levels: vec![Level::new(1.0, 1)],
            dimension: 1,
        }
    }

    /// Two-qubit state `sqrt(c)|00> + sqrt(1-c)|11>`.
    pub fn two_qubit(c: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&c) {
            return Err(domain(format!("two-qubit coefficient {c} outside [0, 1]")));
        }
        Self::from_levels([Level::new(c, 1), Level::new(1.0 - c, 1)])
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// Sum of multiplicities, zero-valued levels included.
    pub fn dimension(&self) -> u128 {
        self.dimension
    }

    /// Number of strictly positive entries.
    pub fn rank(&self) -> u128 {
        self.levels
            .iter()
            .filter(|l| l.value > 0.0)
            .map(|l| l.multiplicity)
            .sum()
    }

    pub fn largest(&self) -> f64 {
        self.levels[0].value
    }

    /// Expands the levels into a plain non-increasing vector.
    ///
    /// Only meant for small spectra; panics above 2^24 entries.
    pub fn expanded(&self) -> Vec<f64> {
        assert!(self.dimension <= 1 << 24, "spectrum too large to expand");
        self.levels
            .iter()
            .flat_map(|l| std::iter::repeat_n(l.value, l.multiplicity as usize))
            .collect()
    }

    /// Spectrum of the product state: all pairwise products, multiplicities
    /// multiplied, re-canonicalized.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let mut out = Vec::with_capacity(self.levels.len() * other.levels.len());
        for a in &self.levels {
            for b in &other.levels {
                let m = a
                    .multiplicity
                    .checked_mul(b.multiplicity)
                    .ok_or(Error::DimensionOverflow)?;
                out.push(Level::new(a.value * b.value, m));
            }
        }
        self.dimension
            .checked_mul(other.dimension)
            .ok_or(Error::DimensionOverflow)?;
        Self::from_levels(out)
    }

    /// Vidal monotone `E_l`: one minus the `l - 1` largest entries.
    ///
    /// `E_1 = 1`, and `E_l = 0` exactly once `l` exceeds the rank. Computed as
    /// a tail sum so that small monotones keep their relative precision.
    pub fn monotone(&self, l: u128) -> f64 {
        assert!(l >= 1, "monotones are indexed from 1");
        if l == 1 {
            return 1.0;
        }
        Profile::new(self).tail(l - 1)
    }

    /// Sum of the `k` largest entries.
    pub fn partial_sum(&self, k: u128) -> f64 {
        Profile::new(self).prefix(k)
    }
}

/// Prefix and tail sums at block granularity.
struct Profile<'a> {
    levels: &'a [Level],
    starts: Vec<u128>,
    before: Vec<f64>,
    after: Vec<f64>,
}

impl<'a> Profile<'a> {
    fn new(spectrum: &'a SchmidtSpectrum) -> Self {
        let levels = spectrum.levels();
        let n = levels.len();
        let mut starts = Vec::with_capacity(n);
        let mut before = Vec::with_capacity(n);
        let (mut pos, mut acc) = (0u128, 0.0);
        for l in levels {
            starts.push(pos);
            before.push(acc);
            pos += l.multiplicity;
            acc += l.value * l.multiplicity as f64;
        }
        let mut after = vec![0.0; n];
        let mut acc = 0.0;
        for i in (0..n).rev() {
            after[i] = acc;
            acc += levels[i].value * levels[i].multiplicity as f64;
        }
        Self {
            levels,
            starts,
            before,
            after,
        }
    }

    fn block_ends(&self) -> impl Iterator<Item = u128> + '_ {
        self.starts
            .iter()
            .zip(self.levels)
            .map(|(s, l)| s + l.multiplicity)
    }

    /// Block holding position `k` (0-based) and the offset inside it, or
    /// `None` past the end.
    fn locate(&self, k: u128) -> Option<(usize, u128)> {
        let i = self.starts.partition_point(|&s| s <= k).checked_sub(1)?;
        let offset = k - self.starts[i];
        (offset < self.levels[i].multiplicity).then_some((i, offset))
    }

    fn prefix(&self, k: u128) -> f64 {
        match self.locate(k) {
            Some((i, t)) => self.before[i] + t as f64 * self.levels[i].value,
            None => {
                let last = self.levels.len() - 1;
                self.before[last] + self.levels[last].value * self.levels[last].multiplicity as f64
            }
        }
    }

    /// Sum of all entries except the `k` largest.
    fn tail(&self, k: u128) -> f64 {
        match self.locate(k) {
            Some((i, t)) => {
                self.after[i] + (self.levels[i].multiplicity - t) as f64 * self.levels[i].value
            }
            None => 0.0,
        }
    }
}

/// An initial/target spectrum pair for an LOCC conversion.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformPair {
    pub initial: SchmidtSpectrum,
    pub target: SchmidtSpectrum,
}

impl TransformPair {
    pub fn new(initial: SchmidtSpectrum, target: SchmidtSpectrum) -> Self {
        Self { initial, target }
    }
}

/// Level boundaries of both spectra, sorted and deduplicated, starting at 0.
fn breakpoints(a: &Profile<'_>, b: &Profile<'_>) -> Vec<u128> {
    let mut points: Vec<u128> = std::iter::once(0)
        .chain(a.block_ends())
        .chain(b.block_ends())
        .collect();
    points.sort_unstable();
    points.dedup();
    points
}

/// Nielsen's criterion: the initial spectrum is majorized by the target, so
/// the conversion succeeds with certainty. The shorter spectrum is padded
/// with zeros.
pub fn majorizes(pair: &TransformPair) -> bool {
    let initial = Profile::new(&pair.initial);
    let target = Profile::new(&pair.target);
    breakpoints(&initial, &target)
        .into_iter()
        .all(|k| initial.prefix(k) <= target.prefix(k) + MAJORIZATION_TOLERANCE)
}

/// Maximal conversion probability: the minimum over `l` of
/// `E_l(initial) / E_l(target)`, skipping indices where the target monotone
/// vanishes.
pub fn vidal_probability(pair: &TransformPair) -> f64 {
    if majorizes(pair) {
        return 1.0;
    }
    let initial = Profile::new(&pair.initial);
    let target = Profile::new(&pair.target);
    let points = breakpoints(&initial, &target);

    let mut best = f64::INFINITY;
    for w in points.windows(2) {
        // Both tails are linear on [w0, w1), so the ratio is monotone there.
        for k in [w[0], w[1] - 1] {
            let denominator = if k == 0 { 1.0 } else { target.tail(k) };
            if denominator <= 0.0 {
                continue;
            }
            let numerator = if k == 0 { 1.0 } else { initial.tail(k) };
            best = best.min(numerator / denominator);
        }
    }
    best.clamp(0.0, 1.0)
}

/// Spectrum of `N` copies of `sqrt(alpha)|00> + sqrt(1-alpha)|11>`.
///
/// Levels are `alpha^(N-p) (1-alpha)^p` with multiplicity `C(N, p)`.
pub fn n_copy_spectrum(alpha: f64, n: u32) -> Result<SchmidtSpectrum> {
    if !(0.5..=1.0).contains(&alpha) {
        return Err(domain(format!("alpha = {alpha} outside [0.5, 1]")));
    }
    if n == 0 {
        return Err(domain("number of copies must be at least 1"));
    }
    let mut levels = Vec::with_capacity(n as usize + 1);
    let mut binom: u128 = 1;
    for p in 0..=n {
        let value = alpha.powi((n - p) as i32) * (1.0 - alpha).powi(p as i32);
        levels.push(Level::new(value, binom));
        if p < n {
            binom = binom
                .checked_mul(u128::from(n - p))
                .ok_or(Error::DimensionOverflow)?
                / u128::from(p + 1);
        }
    }
    SchmidtSpectrum::from_levels(levels)
}

/// Checks that augmenting `|alpha>^N -> Bell` with `catalyst` on both sides
/// still violates majorization. Only defined in the incommensurate regime
/// `alpha^N > 1/2`.
pub fn remains_incommensurate(alpha: f64, n: u32, catalyst: &SchmidtSpectrum) -> Result<bool> {
    let initial = n_copy_spectrum(alpha, n)?;
    if initial.largest() <= 0.5 {
        return Err(domain(format!(
            "alpha^N = {} <= 1/2: conversion is already deterministic",
            initial.largest()
        )));
    }
    let pair = TransformPair::new(
        initial.tensor(catalyst)?,
        SchmidtSpectrum::bell().tensor(catalyst)?,
    );
    Ok(!majorizes(&pair))
}

/// Binary entropy in bits, with `0 log 0 = 0`.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(domain(format!("probability {p} outside [0, 1]")));
    }
    let h = |x: f64| if x > 0.0 { -x * x.log2() } else { 0.0 };
    Ok(h(p) + h(1.0 - p))
}
