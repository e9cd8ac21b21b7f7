//! CSV output.
//!
//! Columns: `experiment,heuristic,variant,strategy,topology,mode,run,participation,adoption,
//! utilization,epochs,converged,seed_digest`. Run rows carry the raw values of one run
//! (`converged` as 0/1). They are followed by four summary rows whose `run` field is
//! `summary:mean`, `summary:stderr`, `summary:ci_low` and `summary:ci_high`; their metric
//! columns hold that statistic of the per-run values and `seed_digest` is empty. Reals are
//! printed with 6 fractional digits.

use std::io::{self, Write};

use crate::experiment::ExperimentResult;
use crate::stats::Summary;

pub const HEADER: &str =
    "experiment,heuristic,variant,strategy,topology,mode,run,participation,adoption,utilization,epochs,converged,seed_digest";

pub fn write_header<W: Write>(mut out: W) -> io::Result<()> {
    writeln!(out, "{HEADER}")
}

pub fn write_rows<W: Write>(r: &ExperimentResult, mut out: W) -> io::Result<()> {
    let e = &r.experiment;
    let prefix = format!(
        "{},{},{},{},{},{}",
        e.id,
        e.heuristic,
        e.flags.label(),
        e.strategy,
        e.topology.label(),
        e.mode.name()
    );
    for run in &r.runs {
        writeln!(
            out,
            "{prefix},{},{},{},{:.6},{},{},{}",
            run.run,
            run.metrics.participation,
            run.metrics.adoption,
            run.metrics.utilization,
            run.epochs,
            u8::from(run.converged),
            run.seed_digest
        )?;
    }
    let converged: Vec<f64> = r.runs.iter().map(|x| f64::from(u8::from(x.converged))).collect();
    let columns = [
        Summary::of(&r.participation()),
        Summary::of(&r.adoption()),
        Summary::of(&r.utilization()),
        Summary::of(&r.epochs()),
        Summary::of(&converged),
    ];
    let stats: [(&str, fn(&Summary) -> f64); 4] = [
        ("mean", |s| s.mean),
        ("stderr", |s| s.stderr),
        ("ci_low", |s| s.ci_low),
        ("ci_high", |s| s.ci_high),
    ];
    for (name, f) in stats {
        write!(out, "{prefix},summary:{name}")?;
        for s in &columns {
            write!(out, ",{:.6}", f(s))?;
        }
        writeln!(out, ",")?;
    }
    Ok(())
}

pub fn write_csv<W: Write>(r: &ExperimentResult, mut out: W) -> io::Result<()> {
    write_header(&mut out)?;
    write_rows(r, out)
}
