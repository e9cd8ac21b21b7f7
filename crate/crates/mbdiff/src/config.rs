//! Experiment configuration.
//!
//! A config file is a flat TOML table. Every key is optional; command-line flags override file
//! values, and [`ExperimentConfig::resolve`] checks the result and reports every invalid field
//! at once.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use mbdiff_core::bounds::Strategy;
use mbdiff_core::seedsel::{Heuristic, Multiplicity, TopUp, VariantFlags};
use mbdiff_core::{AdoptionMode, BehaviorSet, ModelParams, ThresholdMode};
use serde::Deserialize;

#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Option<String>,
    pub generator: Option<String>,
    pub graph: Option<PathBuf>,
    pub n: Option<usize>,
    pub ring_neighbors: Option<usize>,
    pub p_rewire: Option<f64>,
    pub avg_degree: Option<f64>,
    pub k: Option<usize>,
    pub costs: Option<Vec<f64>>,
    pub utils: Option<Vec<f64>>,
    pub w: Option<f64>,
    pub alpha: Option<f64>,
    /// Total seed count; overrides `alpha`.
    pub b: Option<usize>,
    pub heuristic: Option<String>,
    pub multiplicity: Option<String>,
    pub topup: Option<String>,
    pub strategy: Option<String>,
    pub mode: Option<String>,
    pub runs: Option<usize>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub max_epochs: Option<usize>,
    pub adoption_mode: Option<String>,
    pub threshold_mode: Option<String>,
    /// Threshold draws per spread estimate of the `kkt` heuristic.
    pub kkt_runs: Option<usize>,
    pub enumeration_cap: Option<usize>,
    /// Draw fresh resources for every run instead of once per experiment.
    pub redraw_resources: Option<bool>,
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot parse {path}: {source}")]
    Parse { path: PathBuf, source: toml::de::Error },
    #[error("invalid configuration:\n{}", .0.iter().map(|e| format!("  {e}")).collect::<Vec<_>>().join("\n"))]
    Invalid(Vec<FieldError>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct FieldError {
    pub field: &'static str,
    pub reason: String,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.reason)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    PreferentialAttachment,
    SmallWorld,
    SpatiallyClustered,
}

impl GeneratorKind {
    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::PreferentialAttachment => "pa",
            GeneratorKind::SmallWorld => "sw",
            GeneratorKind::SpatiallyClustered => "sc",
        }
    }
}

impl FromStr for GeneratorKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "pa" => Ok(GeneratorKind::PreferentialAttachment),
            "sw" => Ok(GeneratorKind::SmallWorld),
            "sc" => Ok(GeneratorKind::SpatiallyClustered),
            _ => Err(format!("unknown generator `{s}` (expected pa, sw or sc)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    pub ring_neighbors: usize,
    pub p_rewire: f64,
    pub avg_degree: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum TopologySpec {
    Generator(GeneratorSpec),
    EdgeList(PathBuf),
}

impl TopologySpec {
    pub fn label(&self) -> String {
        match self {
            TopologySpec::Generator(g) => g.kind.name().to_string(),
            TopologySpec::EdgeList(p) => p
                .file_name()
                .map_or_else(|| p.display().to_string(), |f| f.to_string_lossy().into_owned()),
        }
    }
}

/// How runs are averaged.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Averaging {
    /// One topology; thresholds vary per run.
    #[default]
    Threshold,
    /// Thresholds and resources fixed by node index; topology regenerated per run.
    Network,
}

impl Averaging {
    pub fn name(self) -> &'static str {
        match self {
            Averaging::Threshold => "ta",
            Averaging::Network => "na",
        }
    }
}

/// A validated experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct Experiment {
    pub id: String,
    pub topology: TopologySpec,
    pub behaviors: BehaviorSet,
    pub alpha: f64,
    pub b: Option<usize>,
    pub heuristic: Heuristic,
    pub flags: VariantFlags,
    pub strategy: Strategy,
    pub mode: Averaging,
    pub runs: usize,
    pub seed: u64,
    pub threads: Option<usize>,
    pub params: ModelParams,
    pub kkt_runs: usize,
    pub redraw_resources: bool,
}

fn parse_with<T>(
    errors: &mut Vec<FieldError>,
    field: &'static str,
    value: Option<&str>,
    default: T,
    parse: impl Fn(&str) -> Option<T>,
    expected: &str,
) -> T {
    match value {
        None => default,
        Some(s) => parse(s).unwrap_or_else(|| {
            errors.push(FieldError {
                field,
                reason: format!("`{s}` is not one of {expected}"),
            });
            default
        }),
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.to_owned(),
            source,
        })?;
        Self::from_toml(&text).map_err(|source| ConfigError::Parse {
            path: path.to_owned(),
            source,
        })
    }

    /// Fields set in `other` replace those of `self`.
    pub fn merge(self, other: ExperimentConfig) -> Self {
        macro_rules! pick {
            ($($f:ident),*) => { ExperimentConfig { $($f: other.$f.or(self.$f)),* } };
        }
        pick!(
            experiment, generator, graph, n, ring_neighbors, p_rewire, avg_degree, k, costs, utils,
            w, alpha, b, heuristic, multiplicity, topup, strategy, mode, runs, seed, threads,
            max_epochs, adoption_mode, threshold_mode, kkt_runs, enumeration_cap, redraw_resources
        )
    }

    pub fn resolve(&self) -> Result<Experiment, ConfigError> {
        let mut errors = Vec::new();
        let mut err = |field: &'static str, reason: &str| {
            errors.push(FieldError {
                field,
                reason: reason.to_string(),
            })
        };

        let n = self.n.unwrap_or(500);
        let ring_neighbors = self.ring_neighbors.unwrap_or(2);
        let p_rewire = self.p_rewire.unwrap_or(0.2);
        let avg_degree = self.avg_degree.unwrap_or(10.0);
        let topology = match (&self.graph, &self.generator) {
            (Some(_), Some(_)) => {
                err("graph", "give either graph or generator, not both");
                None
            }
            (Some(path), None) => Some(TopologySpec::EdgeList(path.clone())),
            (None, g) => match g.as_deref().unwrap_or("pa").parse::<GeneratorKind>() {
                Ok(kind) => {
                    if !(0.0..=1.0).contains(&p_rewire) {
                        err("p_rewire", "must lie in [0, 1]");
                    }
                    if kind == GeneratorKind::SmallWorld && (ring_neighbors == 0 || ring_neighbors % 2 != 0) {
                        err("ring_neighbors", "must be a positive even number");
                    }
                    let min_n = match kind {
                        GeneratorKind::PreferentialAttachment => 2,
                        GeneratorKind::SmallWorld => 2 * ring_neighbors + 1,
                        GeneratorKind::SpatiallyClustered => 1,
                    };
                    if n < min_n {
                        err("n", &format!("must be at least {min_n} for this generator"));
                    }
                    if kind == GeneratorKind::SpatiallyClustered && !(avg_degree >= 0.0 && avg_degree < n as f64) {
                        err("avg_degree", "must be non-negative and below n");
                    }
                    Some(TopologySpec::Generator(GeneratorSpec {
                        kind,
                        n,
                        ring_neighbors,
                        p_rewire,
                        avg_degree,
                    }))
                }
                Err(reason) => {
                    err("generator", &reason);
                    None
                }
            },
        };

        let costs = self.costs.clone().unwrap_or_else(|| vec![0.2, 0.5, 0.7]);
        if let Some(k) = self.k {
            if k != costs.len() {
                err("k", &format!("{k} behaviors requested but {} costs given", costs.len()));
            }
        }
        let utils = self.utils.clone().unwrap_or_else(|| costs.clone());
        if utils.len() != costs.len() {
            err("utils", "needs one utility per cost");
        }
        let behaviors = match BehaviorSet::new(costs, utils) {
            Ok(b) => Some(b),
            Err(e) => {
                err("costs", &e.to_string());
                None
            }
        };

        let w = self.w.unwrap_or(0.5);
        if !(0.0..=1.0).contains(&w) {
            err("w", "must lie in [0, 1]");
        }
        let alpha = self.alpha.unwrap_or(0.1);
        if !(alpha > 0.0 && alpha <= 1.0) {
            err("alpha", "must lie in (0, 1]");
        }
        let runs = self.runs.unwrap_or(100);
        if runs == 0 {
            err("runs", "must be at least 1");
        }
        if self.threads == Some(0) {
            err("threads", "must be at least 1");
        }
        if self.max_epochs == Some(0) {
            err("max_epochs", "must be at least 1");
        }
        let kkt_runs = self.kkt_runs.unwrap_or(1000);
        if kkt_runs == 0 {
            err("kkt_runs", "must be at least 1");
        }

        let heuristic = parse_with(
            &mut errors,
            "heuristic",
            self.heuristic.as_deref(),
            Heuristic::CiwRank,
            |s| s.parse().ok(),
            "random, degree-nt, degree-t, degree-knapsack, degree-resource, ciw-rank, ciw-margin, eia, kkt, all",
        );
        let multiplicity = parse_with(
            &mut errors,
            "multiplicity",
            self.multiplicity.as_deref(),
            Multiplicity::Single,
            |s| match s {
                "s" => Some(Multiplicity::Single),
                "m" => Some(Multiplicity::Multiple),
                _ => None,
            },
            "s, m",
        );
        let topup = parse_with(
            &mut errors,
            "topup",
            self.topup.as_deref(),
            TopUp::TopUp,
            |s| match s {
                "t" => Some(TopUp::TopUp),
                "nt" => Some(TopUp::NoTopUp),
                _ => None,
            },
            "t, nt",
        );
        let strategy = parse_with(
            &mut errors,
            "strategy",
            self.strategy.as_deref(),
            Strategy::Uniform,
            |s| s.parse().ok(),
            "low, inverse, uniform, proportional, high",
        );
        let mode = parse_with(
            &mut errors,
            "mode",
            self.mode.as_deref(),
            Averaging::Threshold,
            |s| match s {
                "ta" => Some(Averaging::Threshold),
                "na" => Some(Averaging::Network),
                _ => None,
            },
            "ta, na",
        );
        let adoption = parse_with(
            &mut errors,
            "adoption_mode",
            self.adoption_mode.as_deref(),
            AdoptionMode::Sticky,
            |s| match s {
                "sticky" => Some(AdoptionMode::Sticky),
                "reevaluate" => Some(AdoptionMode::Reevaluate),
                _ => None,
            },
            "sticky, reevaluate",
        );
        let thresholds = parse_with(
            &mut errors,
            "threshold_mode",
            self.threshold_mode.as_deref(),
            ThresholdMode::Different,
            |s| match s {
                "different" => Some(ThresholdMode::Different),
                "matched" => Some(ThresholdMode::Matched),
                _ => None,
            },
            "different, matched",
        );
        if mode == Averaging::Network && matches!(topology, Some(TopologySpec::EdgeList(_))) {
            errors.push(FieldError {
                field: "mode",
                reason: "network average undefined for a fixed real-world topology".to_string(),
            });
        }
        if heuristic == Heuristic::Kkt && adoption == AdoptionMode::Reevaluate {
            errors.push(FieldError {
                field: "heuristic",
                reason: "kkt requires sticky adoption".to_string(),
            });
        }

        if !errors.is_empty() {
            return Err(ConfigError::Invalid(errors));
        }
        Ok(Experiment {
            id: self.experiment.clone().unwrap_or_else(|| "experiment".to_string()),
            topology: topology.expect("checked above"),
            behaviors: behaviors.expect("checked above"),
            alpha,
            b: self.b,
            heuristic,
            flags: VariantFlags { multiplicity, topup },
            strategy,
            mode,
            runs,
            seed: self.seed.unwrap_or(0),
            threads: self.threads,
            params: ModelParams {
                w,
                adoption,
                thresholds,
                max_epochs: self.max_epochs,
                enumeration_cap: self.enumeration_cap.unwrap_or(20),
            },
            kkt_runs,
            redraw_resources: self.redraw_resources.unwrap_or(false),
        })
    }
}

impl Experiment {
    /// Total seed count for an `n`-node graph: `b` if given, else `round(α·n)`; for the
    /// uniform strategy rounded to the nearest multiple of `k`.
    pub fn total_seeds(&self, n: usize) -> usize {
        let k = self.behaviors.k();
        let total = self.b.unwrap_or_else(|| (self.alpha * n as f64).round() as usize);
        if self.strategy == Strategy::Uniform && self.b.is_none() {
            ((total as f64 / k as f64).round() as usize * k).min(n * k)
        } else {
            total
        }
    }

    /// Seeds per behavior for an `n`-node graph.
    pub fn budget(&self, n: usize) -> Vec<usize> {
        mbdiff_core::bounds::distribute_behaviors(self.strategy, self.total_seeds(n), self.behaviors.costs())
    }
}
