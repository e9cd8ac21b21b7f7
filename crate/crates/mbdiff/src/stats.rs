//! Summary statistics over per-run samples.

use statrs::distribution::{ContinuousCDF, StudentsT};

/// Mean, standard error and 95% confidence interval of a sample.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Summary {
    pub mean: f64,
    pub stderr: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub runs: usize,
}

impl Summary {
    /// Panics on an empty sample.
    pub fn of(samples: &[f64]) -> Self {
        let runs = samples.len();
        assert!(runs > 0, "summary of an empty sample");
        let mean = samples.iter().sum::<f64>() / runs as f64;
        if runs == 1 {
            return Summary {
                mean,
                stderr: 0.0,
                ci_low: mean,
                ci_high: mean,
                runs,
            };
        }
        let stderr = (variance(samples, mean) / runs as f64).sqrt();
        let t = StudentsT::new(0.0, 1.0, (runs - 1) as f64)
            .expect("positive degrees of freedom")
            .inverse_cdf(0.975);
        Summary {
            mean,
            stderr,
            ci_low: mean - t * stderr,
            ci_high: mean + t * stderr,
            runs,
        }
    }

    pub fn overlaps(&self, other: &Summary) -> bool {
        self.ci_low <= other.ci_high && other.ci_low <= self.ci_high
    }
}

fn variance(samples: &[f64], mean: f64) -> f64 {
    samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (samples.len() - 1) as f64
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Comparison {
    /// Mean of `a` minus mean of `b`.
    pub difference: f64,
    /// Two-sided p-value of the unequal-variance t-test.
    pub p_value: f64,
}

#[derive(Debug, thiserror::Error, PartialEq)]
#[error("comparison needs at least 2 runs per side, got {0} and {1}")]
pub struct TooFewRuns(pub usize, pub usize);

/// Welch's two-sample t-test.
pub fn compare(a: &[f64], b: &[f64]) -> Result<Comparison, TooFewRuns> {
    if a.len() < 2 || b.len() < 2 {
        return Err(TooFewRuns(a.len(), b.len()));
    }
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let ma = a.iter().sum::<f64>() / na;
    let mb = b.iter().sum::<f64>() / nb;
    let (qa, qb) = (variance(a, ma) / na, variance(b, mb) / nb);
    let difference = ma - mb;
    let se2 = qa + qb;
    if se2 == 0.0 {
        let p_value = if difference == 0.0 { 1.0 } else { 0.0 };
        return Ok(Comparison { difference, p_value });
    }
    let t = difference / se2.sqrt();
    let df = se2 * se2 / (qa * qa / (na - 1.0) + qb * qb / (nb - 1.0));
    let dist = StudentsT::new(0.0, 1.0, df).expect("positive degrees of freedom");
    let p_value = (2.0 * dist.cdf(-t.abs())).min(1.0);
    Ok(Comparison { difference, p_value })
}
