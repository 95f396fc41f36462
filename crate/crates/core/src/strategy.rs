//! Planning the extraction of several Bell pairs from `N` copies.
//!
//! Pairwise catalysis splits the copies into `N/2` pairs, each converted with
//! its own optimal two-qubit catalyst, so the number of Bell pairs obtained is
//! binomial. Partitioning instead groups the copies into exactly `m*` sets,
//! one Bell pair per set, and maximizes the product of the per-set
//! probabilities over all partitions of `N`.

use serde::{Deserialize, Serialize};

use crate::closed_form::{optimal_catalyst, ConcentrationInstance};
use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairwiseOutcome {
    pub n_pairs: u32,
    pub p_single: f64,
    /// `(m, P(m Bell pairs))` for `m = 0..=n_pairs`.
    pub distribution: Vec<(u32, f64)>,
    pub expected_bells: f64,
    /// Optimal catalyst of a single pair; `None` when pairs convert
    /// deterministically.
    pub c_opt: Option<f64>,
    pub deterministic: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionPlan {
    /// Group sizes, non-increasing.
    pub sizes: Vec<u32>,
    pub per_group: Vec<f64>,
    pub joint_probability: f64,
    /// Optimal catalyst per group; `None` for single copies and for groups
    /// that convert deterministically.
    pub catalysts: Vec<Option<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Pairwise,
    Partition,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StrategyInstance {
    pub alpha: f64,
    pub n: u32,
    pub m_star: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategyReport {
    pub instance: StrategyInstance,
    pub pairwise: PairwiseOutcome,
    /// Binomial probability of exactly `m*` Bell pairs.
    pub strategy1_exact_m: f64,
    /// `p^m* (1-p)^(N/2-m*)`, the same mass without the binomial coefficient.
    pub strategy1_exact_m_no_coefficient: f64,
    pub strategy2_best: PartitionPlan,
    /// Chosen by comparing `strategy1_exact_m` against the best partition.
    pub recommended: Strategy,
}

fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

/// Outcome distribution of pairwise catalysis on an even number of copies.
pub fn pairwise_distribution(alpha: f64, n: u32) -> Result<PairwiseOutcome> {
    if n == 0 {
        return Err(domain("number of copies must be at least 2"));
    }
    if n % 2 == 1 {
        return Err(Error::OddCopies(n));
    }
    let pair = optimal_catalyst(&ConcentrationInstance::new(alpha, 2)?);
    let n_pairs = n / 2;
    let p = pair.p_catalyzed;
    let distribution = (0..=n_pairs)
        .map(|m| {
            let mass = binomial(n_pairs, m) * p.powi(m as i32) * (1.0 - p).powi((n_pairs - m) as i32);
            (m, mass)
        })
        .collect();
    Ok(PairwiseOutcome {
        n_pairs,
        p_single: p,
        distribution,
        expected_bells: f64::from(n_pairs) * p,
        c_opt: pair.c_opt,
        deterministic: pair.deterministic,
    })
}

/// Calls `visit` with every partition of `n` into exactly `parts` positive
/// parts, each as a non-increasing slice, in lexicographically decreasing
/// order.
pub fn for_each_partition(n: u32, parts: u32, mut visit: impl FnMut(&[u32])) {
    fn go(remaining: u32, parts: u32, max_part: u32, current: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
        if parts == 0 {
            if remaining == 0 {
                visit(current);
            }
            return;
        }
        // Leave at least one for each later part; the rest can't exceed this one.
        let hi = max_part.min(remaining - (parts - 1));
        let lo = remaining.div_ceil(parts);
        for first in (lo..=hi).rev() {
            current.push(first);
            go(remaining - first, parts - 1, first, current, visit);
            current.pop();
        }
    }
    if parts == 0 || parts > n {
        return;
    }
    let mut current = Vec::with_capacity(parts as usize);
    go(n, parts, n, &mut current, &mut visit);
}

/// Probability of converting a group of `size` copies into one Bell pair,
/// with the catalyst used (if any).
fn group_probability(alpha: f64, size: u32) -> Result<(f64, Option<f64>)> {
    let inst = ConcentrationInstance::new(alpha, size)?;
    if size == 1 {
        return Ok(((2.0 * (1.0 - alpha)).min(1.0), None));
    }
    let r = optimal_catalyst(&inst);
    Ok((r.p_catalyzed.min(1.0), r.c_opt))
}

/// Best split of `n` copies into exactly `m_star` groups. Ties go to the
/// lexicographically largest size sequence.
pub fn best_partition(alpha: f64, n: u32, m_star: u32) -> Result<PartitionPlan> {
    if m_star < 1 || m_star > n {
        return Err(Error::BadArity { n, m_star });
    }
    let largest = n - m_star + 1;
    let groups: Vec<(f64, Option<f64>)> = (1..=largest)
        .map(|size| group_probability(alpha, size))
        .collect::<Result<_>>()?;

    let mut best: Option<(f64, Vec<u32>)> = None;
    for_each_partition(n, m_star, |sizes| {
        let joint: f64 = sizes.iter().map(|&s| groups[s as usize - 1].0).product();
        if best.as_ref().is_none_or(|(b, _)| joint > *b) {
            best = Some((joint, sizes.to_vec()));
        }
    });
    let (joint_probability, sizes) = best.expect("m_star <= n admits a partition");
    let per_group = sizes.iter().map(|&s| groups[s as usize - 1].0).collect();
    let catalysts = sizes.iter().map(|&s| groups[s as usize - 1].1).collect();
    Ok(PartitionPlan {
        sizes,
        per_group,
        joint_probability,
        catalysts,
    })
}

pub fn compare_strategies(alpha: f64, n: u32, m_star: u32) -> Result<StrategyReport> {
    let strategy2_best = best_partition(alpha, n, m_star)?;
    let pairwise = pairwise_distribution(alpha, n)?;

    let (strategy1_exact_m, strategy1_exact_m_no_coefficient) = if m_star <= pairwise.n_pairs {
        let p = pairwise.p_single;
        let bare = p.powi(m_star as i32) * (1.0 - p).powi((pairwise.n_pairs - m_star) as i32);
        (pairwise.distribution[m_star as usize].1, bare)
    } else {
        (0.0, 0.0)
    };
    let recommended = if strategy1_exact_m >= strategy2_best.joint_probability {
        Strategy::Pairwise
    } else {
        Strategy::Partition
    };
    Ok(StrategyReport {
        instance: StrategyInstance { alpha, n, m_star },
        pairwise,
        strategy1_exact_m,
        strategy1_exact_m_no_coefficient,
        strategy2_best,
        recommended,
    })
}
