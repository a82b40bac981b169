//! Command-line front end. `run` takes the full argument list and a sink for
//! standard output and returns the process exit status.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::construct::{build, fixture, fixture_names, BuildRequest};
use crate::design::{
    build_mon_n4, cocktail_partition, gdd3, headset, near_one_factorization, one_factorization, pts_with_leave,
    steiner_triple_system, LeaveShape, NearPrescription,
};
use crate::error::Error;
use crate::formulas::{cost_two_period, mu3, neutral_edge_bound, triangle_lower_bound, wavecost_mon};
use crate::model::{verify, Block, Decomposition, DecompositionJson, Instance};
use crate::oracle::{solve_min_cost, solve_min_triangles, Budget};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CONSTRUCTION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "ringgroom", version, about = "Optimal two-period traffic groomings N(n,v;4,C')")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: Format,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone, Copy)]
struct InstanceArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    v: u32,
    #[arg(long)]
    cprime: u32,
}

impl InstanceArgs {
    fn instance(&self) -> Result<Instance, Error> {
        Instance::new(self.n, self.v, self.cprime)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build an optimal grooming.
    Construct {
        #[command(flatten)]
        inst: InstanceArgs,
        /// Also minimise the number of wavelengths.
        #[arg(long)]
        mon: bool,
        /// Write the decomposition JSON here.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Check a decomposition JSON file.
    Verify { path: PathBuf },
    /// Optimal drop cost and wavelength count from the closed forms.
    Cost {
        #[command(flatten)]
        inst: InstanceArgs,
    },
    /// Triangle and neutral-edge bounds for a split `(v, w)`.
    Bounds {
        #[arg(long)]
        v: u32,
        #[arg(long)]
        w: u32,
    },
    /// Exact search on a small instance.
    Oracle {
        #[command(flatten)]
        inst: InstanceArgs,
        /// Minimise triangles at cost C(n,2) instead of minimising cost.
        #[arg(long)]
        triangles: bool,
        /// Largest n accepted; above the default only with this flag.
        #[arg(long)]
        max_n: Option<u32>,
        /// Node budget; overrides the environment variable.
        #[arg(long)]
        nodes: Option<u64>,
    },
    /// Build every instance in a range and compare with the closed forms.
    Table {
        #[arg(long, default_value_t = 5)]
        n_min: u32,
        #[arg(long, default_value_t = 40)]
        n_max: u32,
        /// Ratios to sweep; all of 1, 2, 3 by default.
        #[arg(long, value_delimiter = ',')]
        cprime: Vec<u32>,
        /// Exit with status 1 on any mismatch.
        #[arg(long)]
        check: bool,
    },
    /// Dump a stored decomposition.
    Fixture {
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
    /// Dump a design primitive.
    Designkit {
        #[command(subcommand)]
        kind: Design,
    },
}

#[derive(Subcommand, Debug)]
enum Design {
    /// Steiner triple system of order v.
    Sts {
        #[arg(long)]
        v: u32,
    },
    /// Partial triple system with a prescribed leave.
    Pts {
        #[arg(long)]
        v: u32,
        #[arg(long, value_enum)]
        leave: Leave,
        /// Cycle length for `--leave cycle`.
        #[arg(long)]
        length: Option<u32>,
    },
    /// 3-GDD of type g^t.
    Gdd {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        t: u32,
    },
    /// Headset of a Steiner triple system.
    Headset {
        #[arg(long)]
        v: u32,
    },
    /// 1-factorization of K_m (m even) or near 1-factorization (m odd).
    Factorization {
        #[arg(long)]
        m: u32,
    },
    /// Cocktail-party partition on w points.
    Cocktail {
        #[arg(long)]
        w: u32,
    },
    /// Wavelength-minimal grooming of K_n with ratio 4.
    Mon4 {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        triangles: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Leave {
    FourCycle,
    Cycle,
    GraphL,
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    format: Format,
}

impl Ctx<'_> {
    fn emit(&mut self, text: &str, value: Value) {
        let line = match self.format {
            Format::Text => text.trim_end().to_string(),
            Format::Json => serde_json::to_string_pretty(&value).expect("plain data serializes"),
        };
        let _ = writeln!(self.out, "{line}");
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            if e.use_stderr() {
                eprint!("{e}");
            } else {
                let _ = write!(out, "{e}");
            }
            return code;
        }
    };
    let mut ctx = Ctx { out, format: cli.format };
    match dispatch(&cli, &mut ctx) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Construction { .. } => EXIT_CONSTRUCTION,
        _ => EXIT_USAGE,
    }
}

fn dispatch(cli: &Cli, ctx: &mut Ctx) -> Result<i32, Error> {
    match &cli.command {
        Command::Construct { inst, mon, output } => construct(ctx, inst, *mon, output.as_ref(), cli.seed),
        Command::Verify { path } => verify_file(ctx, path),
        Command::Cost { inst } => cost(ctx, inst),
        Command::Bounds { v, w } => bounds(ctx, *v, *w),
        Command::Oracle { inst, triangles, max_n, nodes } => oracle(ctx, inst, *triangles, *max_n, *nodes),
        Command::Table { n_min, n_max, cprime, check } => table(ctx, *n_min, *n_max, cprime, *check, cli.seed),
        Command::Fixture { name, list } => dump_fixture(ctx, name.as_deref(), *list),
        Command::Designkit { kind } => designkit(ctx, kind, cli.seed),
    }
}

fn decomposition_value(d: &Decomposition) -> Value {
    serde_json::to_value(DecompositionJson::from(&d.canonical())).expect("plain data serializes")
}

fn blocks_value(blocks: &[Block]) -> Value {
    json!(blocks.iter().map(|b| b.edges.iter().map(|e| [e.0, e.1]).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn construct(ctx: &mut Ctx, args: &InstanceArgs, mon: bool, output: Option<&PathBuf>, seed: u64) -> Result<i32, Error> {
    let req = BuildRequest::new(args.n, args.v, args.cprime)?.mon(mon).seed(seed);
    let d = build(&req)?;
    let report = verify(&d);
    if let Some(path) = output {
        std::fs::write(path, d.to_json_pretty()).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    }
    let text = format!(
        "N({},{};4,{}){}\ncost {}\nwavecost {}\ntriangles {}\nvalid {}",
        args.n,
        args.v,
        args.cprime,
        if mon { " wavelength-minimal" } else { "" },
        report.drop_cost,
        report.wavecost,
        report.triangle_count,
        report.valid
    );
    let value = json!({
        "cost": report.drop_cost,
        "wavecost": report.wavecost,
        "triangles": report.triangle_count,
        "valid": report.valid,
        "decomposition": decomposition_value(&d),
    });
    ctx.emit(&text, value);
    Ok(if report.valid { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn verify_file(ctx: &mut Ctx, path: &PathBuf) -> Result<i32, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let d = Decomposition::from_json(&text)?;
    let report = verify(&d);
    let mut lines = format!(
        "{}\ncost {}\nwavecost {}\ntriangles {}",
        if report.valid { "valid" } else { "invalid" },
        report.drop_cost,
        report.wavecost,
        report.triangle_count
    );
    for v in &report.violations {
        let l = &v.location;
        lines.push_str(&format!("\n  {:?} wavelength {:?} block {:?} edge {:?}", v.kind, l.wavelength, l.block, l.edge));
    }
    ctx.emit(&lines, serde_json::to_value(&report).expect("plain data serializes"));
    Ok(if report.valid { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cost(ctx: &mut Ctx, args: &InstanceArgs) -> Result<i32, Error> {
    let c = cost_two_period(args.n, args.v, args.cprime)?;
    let wl = wavecost_mon(args.n, args.v, args.cprime)?;
    ctx.emit(&format!("cost {c}\nwavecost {wl}"), json!({ "cost": c, "wavecost": wl }));
    Ok(EXIT_OK)
}

fn bounds(ctx: &mut Ctx, v: u32, w: u32) -> Result<i32, Error> {
    let tb = triangle_lower_bound(v, w);
    let neutral: Vec<Value> = [1, 2].iter().filter_map(|&c| neutral_edge_bound(v, w, c).ok().map(|b| json!({ "cprime": c, "bound": b }))).collect();
    let mu = mu3(v).ok();
    let mut text = format!(
        "L(v,w) = {}/6 ({:.3})\ndelta_min = {}\nresidue = {}\nslack_ceiling = {}",
        tb.l_num,
        tb.l_value(),
        tb.delta_min,
        tb.residue,
        tb.slack_ceiling
    );
    for nb in &neutral {
        text.push_str(&format!("\nneutral edges (C'={}) <= {}", nb["cprime"], nb["bound"]));
    }
    if let Some(m) = mu {
        text.push_str(&format!("\nmu3 = {m}"));
    }
    ctx.emit(&text, json!({ "triangle_bound": tb, "neutral_edge_bounds": neutral, "mu3": mu }));
    Ok(EXIT_OK)
}

fn oracle(ctx: &mut Ctx, args: &InstanceArgs, triangles: bool, max_n: Option<u32>, nodes: Option<u64>) -> Result<i32, Error> {
    let inst = args.instance()?;
    let mut budget = Budget::default();
    if let Some(m) = max_n {
        budget.max_n = m;
    }
    if let Some(k) = nodes {
        budget.nodes = k;
    }
    let r = if triangles {
        solve_min_triangles(inst, inst.n as usize * (inst.n as usize - 1) / 2, budget)?
    } else {
        solve_min_cost(inst, budget)?
    };
    let valid = verify(&r.witness).valid;
    let text = format!(
        "optimum cost {}{}\ntriangles at cost {}\nnodes {}\nbudget exhausted {}\nwitness valid {}",
        r.optimum_cost,
        if r.time_limit_hit { " (upper bound)" } else { "" },
        r.optimum_triangles_at_cost.map_or("-".into(), |t| t.to_string()),
        r.nodes_explored,
        r.time_limit_hit,
        valid
    );
    let value = json!({
        "optimum_cost": r.optimum_cost,
        "optimum_triangles_at_cost": r.optimum_triangles_at_cost,
        "nodes_explored": r.nodes_explored,
        "time_limit_hit": r.time_limit_hit,
        "witness": decomposition_value(&r.witness),
    });
    ctx.emit(&text, value);
    Ok(if valid && !r.time_limit_hit { EXIT_OK } else { EXIT_CHECK_FAILED })
}

/// Outcome of building one instance in a sweep.
fn table_cell(n: u32, v: u32, cprime: u32, mon: bool, seed: u64) -> Value {
    let want_cost = cost_two_period(n, v, cprime).ok();
    let want_wl = wavecost_mon(n, v, cprime).ok();
    let built = BuildRequest::new(n, v, cprime).and_then(|r| build(&r.mon(mon).seed(seed)));
    match built {
        Ok(d) => {
            let rep = verify(&d);
            let mut ok = rep.valid && Some(rep.drop_cost as u64) == want_cost;
            if mon {
                ok &= Some(rep.wavecost as u64) == want_wl;
            }
            json!({
                "n": n, "v": v, "cprime": cprime, "mon": mon,
                "cost": rep.drop_cost, "formula_cost": want_cost,
                "wavecost": rep.wavecost, "formula_wavecost": want_wl,
                "triangles": rep.triangle_count, "valid": rep.valid, "ok": ok,
            })
        }
        Err(e) => json!({ "n": n, "v": v, "cprime": cprime, "mon": mon, "error": e.to_string(), "ok": false }),
    }
}

fn table(ctx: &mut Ctx, n_min: u32, n_max: u32, cprimes: &[u32], check: bool, seed: u64) -> Result<i32, Error> {
    if n_min > n_max || n_min < 5 {
        return Err(Error::InvalidInstance(format!("table range {n_min}..={n_max} must start at 5 or above")));
    }
    let cprimes: Vec<u32> = if cprimes.is_empty() { vec![1, 2, 3] } else { cprimes.to_vec() };
    let mut jobs = Vec::new();
    for &c in &cprimes {
        for n in n_min..=n_max {
            for v in 0..=n {
                if c == 3 && v == n {
                    continue;
                }
                for mon in [false, true] {
                    jobs.push((n, v, c, mon));
                }
            }
        }
    }
    let workers = std::thread::available_parallelism().map_or(1, |k| k.get()).min(jobs.len().max(1));
    let mut cells: Vec<(usize, Value)> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|k| {
                let jobs = &jobs;
                s.spawn(move || {
                    (k..jobs.len())
                        .step_by(workers)
                        .map(|i| {
                            let (n, v, c, mon) = jobs[i];
                            (i, table_cell(n, v, c, mon, seed))
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("table worker panicked")).collect()
    });
    cells.sort_by_key(|(i, _)| *i);
    let cells: Vec<Value> = cells.into_iter().map(|(_, c)| c).collect();
    let failures: Vec<&Value> = cells.iter().filter(|c| c["ok"] != json!(true)).collect();
    let mut text = format!("{} cells, {} mismatches", cells.len(), failures.len());
    for f in &failures {
        text.push_str(&format!("\n  {f}"));
    }
    let value = json!({ "cells": cells.len(), "mismatches": failures.len(), "failures": failures, "results": cells });
    ctx.emit(&text, value);
    Ok(if check && !failures.is_empty() { EXIT_CHECK_FAILED } else { EXIT_OK })
}

fn dump_fixture(ctx: &mut Ctx, name: Option<&str>, list: bool) -> Result<i32, Error> {
    if list || name.is_none() {
        let names = fixture_names();
        ctx.emit(&names.join("\n"), json!(names));
        return Ok(EXIT_OK);
    }
    let f = fixture(name.expect("checked above"))?;
    let measured = f.measured();
    let ok = verify(&f.decomposition).valid && measured == f.expected;
    let value = json!({
        "name": f.name,
        "expected": f.expected,
        "measured": measured,
        "notes": f.notes,
        "decomposition": decomposition_value(&f.decomposition),
    });
    let text = format!(
        "{}\ncost {} wavecost {} triangles {}\n{}",
        f.name,
        measured.cost,
        measured.wavecost,
        measured.triangles,
        f.decomposition.to_json_pretty()
    );
    ctx.emit(&text, value);
    Ok(if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn designkit(ctx: &mut Ctx, kind: &Design, seed: u64) -> Result<i32, Error> {
    let value = match kind {
        Design::Sts { v } => serde_json::to_value(steiner_triple_system(*v)?)?,
        Design::Pts { v, leave, length } => {
            let shape = match leave {
                Leave::FourCycle => LeaveShape::FourCycle,
                Leave::GraphL => LeaveShape::GraphL,
                Leave::Cycle => LeaveShape::Cycle(length.ok_or_else(|| Error::InvalidInstance("--leave cycle needs --length".into()))?),
            };
            serde_json::to_value(pts_with_leave(*v, &shape, seed)?)?
        }
        Design::Gdd { g, t } => serde_json::to_value(gdd3(*g, *t, seed)?)?,
        Design::Headset { v } => {
            let ts = steiner_triple_system(*v)?;
            json!({ "triple_system": ts, "headset": headset(&ts)? })
        }
        Design::Factorization { m } if m % 2 == 0 => serde_json::to_value(one_factorization(*m)?)?,
        Design::Factorization { m } => serde_json::to_value(near_one_factorization(*m, NearPrescription::Rotational)?)?,
        Design::Cocktail { w } => blocks_value(&cocktail_partition(*w)?),
        Design::Mon4 { n, triangles } => decomposition_value(&build_mon_n4(*n, *triangles)?),
    };
    let text = serde_json::to_string_pretty(&value)?;
    ctx.emit(&text, value);
    Ok(EXIT_OK)
}
