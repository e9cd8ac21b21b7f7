//! Analytic utilization bound and the apportionment of seeds over behaviors.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

/// Spend levels a node can hit exactly: distinct subset sums of the costs in `(0, 1]`,
/// ascending. Sums closer than `1e-9` are merged.
pub fn full_utilization_points(costs: &[f64]) -> Vec<f64> {
    let mut sums = vec![0.0];
    for &c in costs {
        let grown: Vec<f64> = sums.iter().map(|s| s + c).collect();
        sums.extend(grown);
    }
    sums.retain(|&s| s > 0.0 && s <= 1.0 + 1e-9);
    sums.sort_unstable_by(f64::total_cmp);
    sums.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    sums
}

/// Expected fraction of a `U(0,1)` resource a node can spend when it can only spend exactly
/// one of the `points`: `2(μ_1μ_2 + … + μ_{n−1}μ_n + μ_n) − 2(μ_1² + … + μ_n²)`.
pub fn max_utilization(points: &[f64]) -> f64 {
    let Some(&last) = points.last() else {
        return 0.0;
    };
    let cross: f64 = points.windows(2).map(|w| w[0] * w[1]).sum();
    let squares: f64 = points.iter().map(|m| m * m).sum();
    2.0 * (cross + last) - 2.0 * squares
}

/// How the seed budget is split over behaviors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Everything to the cheapest behavior.
    Low,
    /// Weights `1/c_i`.
    Inverse,
    #[default]
    Uniform,
    /// Weights `c_i`.
    Proportional,
    /// Everything to the most expensive behavior.
    High,
}

impl Strategy {
    pub const ALL: [Strategy; 5] = [
        Strategy::Low,
        Strategy::Inverse,
        Strategy::Uniform,
        Strategy::Proportional,
        Strategy::High,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Low => "low",
            Strategy::Inverse => "inverse",
            Strategy::Uniform => "uniform",
            Strategy::Proportional => "proportional",
            Strategy::High => "high",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Strategy::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or(crate::error::invalid("strategy", "expected low, inverse, uniform, proportional or high"))
    }
}

/// Splits `total` seeds over the behaviors by largest remainder; ties go to the lower index.
pub fn distribute_behaviors(strategy: Strategy, total: usize, costs: &[f64]) -> Vec<usize> {
    let k = costs.len();
    let mut out = vec![0; k];
    if k == 0 {
        return out;
    }
    let weights: Vec<f64> = match strategy {
        Strategy::Low => {
            out[0] = total;
            return out;
        }
        Strategy::High => {
            out[k - 1] = total;
            return out;
        }
        Strategy::Uniform => vec![1.0; k],
        Strategy::Proportional => costs.to_vec(),
        Strategy::Inverse => costs.iter().map(|c| 1.0 / c).collect(),
    };
    let sum: f64 = weights.iter().sum();
    let quotas: Vec<f64> = weights.iter().map(|w| total as f64 * w / sum).collect();
    let mut assigned = 0;
    for (o, q) in out.iter_mut().zip(&quotas) {
        // Guard against quotas like 16.999999999 that are exact integers on paper.
        *o = libm::floor(q + 1e-9) as usize;
        assigned += *o;
    }
    let mut order: Vec<usize> = (0..k).collect();
    let rem = |i: usize| quotas[i] - out[i] as f64;
    order.sort_by(|&a, &b| rem(b).total_cmp(&rem(a)).then(a.cmp(&b)));
    for &i in order.iter().take(total.saturating_sub(assigned)) {
        out[i] += 1;
    }
    out
}
