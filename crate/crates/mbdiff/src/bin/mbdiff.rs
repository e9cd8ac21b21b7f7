use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mbdiff::config::{GeneratorKind, GeneratorSpec};
use mbdiff::experiment::{generate, instantiate, oracle_master, run_experiment, select};
use mbdiff::io::{read_seeds, seed_lines, write_edge_list, LabeledGraph};
use mbdiff::{report, ExperimentConfig};
use mbdiff_core::behavior::sample_resources;
use mbdiff_core::bounds::{full_utilization_points, max_utilization};
use mbdiff_core::eia::compute_ia;
use mbdiff_core::rng::{stream_rng, SETUP_STREAM};
use mbdiff_core::seedsel::Problem;

const EXIT_USAGE: u8 = 1;
const EXIT_NOT_CONVERGED: u8 = 2;
const EXIT_SHORTFALL: u8 = 3;

#[derive(Parser)]
#[command(name = "mbdiff", version, about = "Diffusion of multiple costly behaviors under resource constraints")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a synthetic topology as an edge list.
    Generate(GenerateArgs),
    /// Select seeds and write one `node behavior` line per seed.
    Seeds(ModelArgs),
    /// Run a Monte Carlo experiment and write CSV.
    Experiment(ModelArgs),
    /// Print the maximum resource utilization for a cost set.
    Bound {
        #[arg(long, value_delimiter = ',', required = true)]
        costs: Vec<f64>,
    },
    /// Print the expected immediate adoption of each behavior for a seed file.
    Eia {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        seeds: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Gen {
    Pa,
    Sw,
    Sc,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(value_enum)]
    generator: Gen,
    #[arg(long, default_value_t = 500)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Rewiring probability (sw).
    #[arg(long, default_value_t = 0.2)]
    p: f64,
    #[arg(long, default_value_t = 2)]
    ring_neighbors: usize,
    #[arg(long, default_value_t = 10.0)]
    avg_degree: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ModelArgs {
    /// TOML config; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    experiment: Option<String>,
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    generator: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    costs: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    utils: Option<Vec<f64>>,
    #[arg(long)]
    w: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    b: Option<usize>,
    #[arg(long)]
    heuristic: Option<String>,
    #[arg(long)]
    multiplicity: Option<String>,
    #[arg(long)]
    topup: Option<String>,
    #[arg(long)]
    strategy: Option<String>,
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    runs: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    max_epochs: Option<usize>,
    #[arg(long)]
    adoption_mode: Option<String>,
    #[arg(long)]
    threshold_mode: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl ModelArgs {
    fn config(&self) -> Result<ExperimentConfig, Failure> {
        let file = match &self.config {
            Some(p) => ExperimentConfig::load(p).map_err(Failure::usage)?,
            None => ExperimentConfig::default(),
        };
        Ok(file.merge(ExperimentConfig {
            experiment: self.experiment.clone(),
            generator: self.generator.clone(),
            graph: self.graph.clone(),
            n: self.n,
            k: self.k,
            costs: self.costs.clone(),
            utils: self.utils.clone(),
            w: self.w,
            alpha: self.alpha,
            b: self.b,
            heuristic: self.heuristic.clone(),
            multiplicity: self.multiplicity.clone(),
            topup: self.topup.clone(),
            strategy: self.strategy.clone(),
            mode: self.mode.clone(),
            runs: self.runs,
            seed: self.seed,
            threads: self.threads,
            max_epochs: self.max_epochs,
            adoption_mode: self.adoption_mode.clone(),
            threshold_mode: self.threshold_mode.clone(),
            ..Default::default()
        }))
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(e: impl std::fmt::Display) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| {
            Failure::usage(format!("cannot create {}: {e}", p.display()))
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn cmd_generate(a: &GenerateArgs) -> Result<u8, Failure> {
    let kind = match a.generator {
        Gen::Pa => GeneratorKind::PreferentialAttachment,
        Gen::Sw => GeneratorKind::SmallWorld,
        Gen::Sc => GeneratorKind::SpatiallyClustered,
    };
    let spec = GeneratorSpec {
        kind,
        n: a.n,
        ring_neighbors: a.ring_neighbors,
        p_rewire: a.p,
        avg_degree: a.avg_degree,
    };
    let g = generate(&spec, &mut stream_rng(a.seed, SETUP_STREAM)).map_err(Failure::usage)?;
    let mut out = output(&a.out)?;
    write_edge_list(&LabeledGraph::unlabeled(g), &mut out)
        .and_then(|_| out.flush())
        .map_err(Failure::usage)?;
    Ok(0)
}

/// The graph of a seeds/eia invocation and its resources, drawn as an experiment would.
fn setup(a: &ModelArgs) -> Result<(mbdiff::Experiment, LabeledGraph, Vec<f64>), Failure> {
    let cfg = a.config()?;
    if cfg.graph.is_none() {
        return Err(Failure::usage("a graph is required (--graph or `graph` in the config)"));
    }
    let exp = cfg.resolve().map_err(Failure::usage)?;
    let mut rng = stream_rng(exp.seed, SETUP_STREAM);
    let g = instantiate(&exp.topology, &mut rng).map_err(Failure::usage)?;
    let resources = sample_resources(g.graph.node_count(), &mut rng);
    Ok((exp, g, resources))
}

fn cmd_seeds(a: &ModelArgs) -> Result<u8, Failure> {
    let (exp, g, resources) = setup(a)?;
    let budget = exp.budget(g.graph.node_count());
    let p = Problem {
        topo: &g.graph,
        behaviors: &exp.behaviors,
        resources: &resources,
        budget: &budget,
        flags: exp.flags,
    };
    let mut rng = stream_rng(exp.seed, 0);
    let sel = select(exp.heuristic, &p, &exp.params, exp.kkt_runs, oracle_master(exp.seed, 0), &mut rng)
        .map_err(Failure::usage)?;
    let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let mut out = output(&a.out)?;
    let mut write = || -> io::Result<()> {
        writeln!(out, "# budget {}", join(&budget))?;
        if !sel.is_complete() {
            writeln!(out, "# shortfall {}", join(&sel.shortfall))?;
        }
        for line in seed_lines(&sel.seeds, &g) {
            writeln!(out, "{line}")?;
        }
        out.flush()
    };
    write().map_err(Failure::usage)?;
    if sel.is_complete() {
        Ok(0)
    } else {
        eprintln!("warning: seed budget not met, short by {}", join(&sel.shortfall));
        Ok(EXIT_SHORTFALL)
    }
}

fn cmd_experiment(a: &ModelArgs) -> Result<u8, Failure> {
    let exp = a.config()?.resolve().map_err(Failure::usage)?;
    let result = run_experiment(&exp).map_err(Failure::usage)?;
    let mut out = output(&a.out)?;
    report::write_csv(&result, &mut out)
        .and_then(|_| out.flush())
        .map_err(Failure::usage)?;
    if result.all_converged() {
        Ok(0)
    } else {
        eprintln!("warning: some runs reached the epoch cap without converging");
        Ok(EXIT_NOT_CONVERGED)
    }
}

fn cmd_bound(costs: &[f64]) -> Result<u8, Failure> {
    mbdiff_core::BehaviorSet::cost_valued(costs.to_vec()).map_err(Failure::usage)?;
    println!("{:.6}", max_utilization(&full_utilization_points(costs)));
    Ok(0)
}

fn cmd_eia(a: &ModelArgs, seeds: &Path) -> Result<u8, Failure> {
    let (exp, g, mut resources) = setup(a)?;
    let file = File::open(seeds).map_err(|e| Failure::usage(format!("cannot open {}: {e}", seeds.display())))?;
    let seeds = read_seeds(BufReader::new(file), &g, exp.behaviors.k()).map_err(Failure::usage)?;
    for (v, m) in seeds.masks(g.graph.node_count()).into_iter().enumerate() {
        resources[v] = resources[v].max(exp.behaviors.mask_cost(m));
    }
    let ia = compute_ia(&g.graph, &exp.behaviors, &resources, &seeds, &exp.params).map_err(Failure::usage)?;
    let mut out = output(&a.out)?;
    let mut write = || -> io::Result<()> {
        for (i, x) in ia.iter().enumerate() {
            writeln!(out, "{i} {x:.6}")?;
        }
        writeln!(out, "total {:.6}", ia.iter().sum::<f64>())?;
        out.flush()
    };
    write().map_err(Failure::usage)?;
    Ok(0)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let r = match &cli.command {
        Command::Generate(a) => cmd_generate(a),
        Command::Seeds(a) => cmd_seeds(a),
        Command::Experiment(a) => cmd_experiment(a),
        Command::Bound { costs } => cmd_bound(costs),
        Command::Eia { model, seeds } => cmd_eia(model, seeds),
    };
    match r {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
