use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use raysearch::acceptance::{self, terrain_check};
use raysearch::lowerbound::{lower_bound, LowerBoundCurve};
use raysearch::optimizer::{narrow_box, optimize_with_target, DEFAULT_TARGET, OUTER_TOL};
use raysearch::ratio::{beta_grid, ratio_asymptotic, ratio_finite, worst_case_beta};
use raysearch::report::{self, Command as Cmd, RunConfig, PRECISION_VAR};
use raysearch::simulator::{simulate, sweep, SweepConfig};
use raysearch::strategy::{build_path, turning_point};
use raysearch::terrain::{
    adapt_strategy_detailed, random_barrier_terrain, terrain_ray_grid, terrain_sweep_rays, BarrierConfig, Terrain,
};
use raysearch::{RaySpec, Result, StrategyParams, TurnIndex};

#[derive(Parser)]
#[command(name = "raysearch", version, about = "Competitive search for rays in the half-plane")]
struct Cli {
    /// Seed recorded in every output and used by randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Params {
    #[arg(long, default_value_t = raysearch::NEAR_OPTIMAL_R)]
    r: f64,
    #[arg(long, default_value_t = raysearch::NEAR_OPTIMAL_ALPHA)]
    alpha: f64,
}

impl Params {
    fn get(self) -> Result<StrategyParams> {
        StrategyParams::new(self.r, self.alpha)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Optimize (r, alpha); writes the outer-search trace as CSV.
    Optimize {
        #[arg(long, default_value_t = OUTER_TOL)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_TARGET)]
        target: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Asymptotic ratio and its derivative over beta, as CSV.
    RatioCurve {
        #[command(flatten)]
        params: Params,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Circle-avoiding lower bound over d_y, as CSV.
    LowerBound {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One tangent ray at a turning point, as JSON.
    Simulate {
        #[command(flatten)]
        params: Params,
        #[arg(long, default_value_t = raysearch::NEAR_OPTIMAL_BETA_MAX)]
        beta: f64,
        #[arg(long, default_value_t = 20)]
        turn: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Worst ratio over tangent rays at turns imin..=imax, as JSON.
    Sweep {
        #[command(flatten)]
        params: Params,
        #[arg(long, default_value_t = 5)]
        imin: u32,
        #[arg(long, default_value_t = 25)]
        imax: u32,
        #[arg(long, default_value_t = 500)]
        betas: usize,
        /// Every ratio, as CSV.
        #[arg(long)]
        dump: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Adapted strategy on a terrain against the geodesic optimum, as JSON.
    TerrainSim {
        #[command(flatten)]
        params: Params,
        /// Terrain file; a random barrier terrain from --seed when absent.
        #[arg(long)]
        terrain: Option<PathBuf>,
        #[arg(long, default_value_t = 10_000)]
        rays: usize,
        #[arg(long, default_value_t = 26)]
        turns: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs the acceptance checks; exits nonzero on any failure.
    Verify {
        /// Additionally check dominance on this terrain.
        #[arg(long)]
        terrain: Option<PathBuf>,
    },
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn json<T: Serialize>(out: &Option<PathBuf>, cfg: &RunConfig, v: &T) -> Result<()> {
    report::write_json(sink(out)?, cfg, v)
}

#[derive(Serialize)]
struct TerrainSimResult {
    terrain: serde_json::Value,
    report: raysearch::terrain::TerrainSweepReport,
    episodes: Vec<raysearch::terrain::Episode>,
}

fn run(cli: Cli) -> Result<bool> {
    let seed = cli.seed;
    match cli.command {
        Command::Optimize { tol, target, out } => {
            let cfg = RunConfig::new(Cmd::Optimize, seed).with("tol", tol).with("target", target);
            let bounds = narrow_box(target)?;
            let res = optimize_with_target(tol, target)?;
            report::write_trace(sink(&out)?, &cfg, &res.trace)?;
            eprintln!(
                "r*={:.9} alpha*={:.9} c*={:.9} beta_max={:.12} box r=({:.6}, {:.6}) alpha=({:.6}, {:.6})",
                res.r_star,
                res.alpha_star,
                res.c_star,
                res.beta_interior,
                bounds.bounds.r_lo,
                bounds.bounds.r_hi,
                bounds.bounds.alpha_lo,
                bounds.bounds.alpha_hi
            );
        }
        Command::RatioCurve { params, samples, out } => {
            let p = params.get()?;
            let cfg = RunConfig::new(Cmd::RatioCurve, seed).with("r", p.r).with("alpha", p.alpha).with("samples", samples as f64);
            report::write_ratio_curve(sink(&out)?, &cfg, &p, samples)?;
        }
        Command::LowerBound { samples, out } => {
            let cfg = RunConfig::new(Cmd::LowerBound, seed).with("samples", samples as f64);
            report::write_lower_bound(sink(&out)?, &cfg, &LowerBoundCurve::sample(samples)?)?;
            eprintln!("R(1)={:.12}", lower_bound()?);
        }
        Command::Simulate { params, beta, turn, out } => {
            let p = params.get()?;
            let cfg = RunConfig::new(Cmd::Simulate, seed).with("r", p.r).with("alpha", p.alpha).with("beta", beta).with("turn", turn as f64);
            let t = TurnIndex::new(turn)?;
            let path = build_path(&p, turn + 3)?;
            let ray = RaySpec::new(t.side(), beta, turning_point(&p, t))?;
            #[derive(Serialize)]
            struct Sim {
                report: raysearch::simulator::RatioReport,
                ratio_finite: f64,
                ratio_asymptotic: f64,
            }
            let sim = Sim {
                report: simulate(&path, &ray)?,
                ratio_finite: ratio_finite(&p, t, beta)?,
                ratio_asymptotic: ratio_asymptotic(&p, beta)?,
            };
            json(&out, &cfg, &sim)?;
        }
        Command::Sweep { params, imin, imax, betas, dump, out } => {
            let p = params.get()?;
            let cfg = RunConfig::new(Cmd::Sweep, seed)
                .with("r", p.r)
                .with("alpha", p.alpha)
                .with("imin", imin as f64)
                .with("imax", imax as f64)
                .with("betas", betas as f64);
            let mut sc = SweepConfig::new(imin, imax, beta_grid(p.alpha, betas));
            sc.workers = cli.workers;
            sc.mirrored = true;
            sc.dump = dump.is_some();
            let mut rep = sweep(&p, &sc)?;
            if let (Some(path), Some(all)) = (&dump, rep.all_ratios.take()) {
                report::write_sweep_samples(BufWriter::new(File::create(path)?), &cfg, &all)?;
            }
            json(&out, &cfg, &rep)?;
            if p.alpha > 0.0 {
                eprintln!("analytic worst case {:.9}", worst_case_beta(&p)?.c_star);
            }
        }
        Command::TerrainSim { params, terrain, rays, turns, out } => {
            let p = params.get()?;
            let t = match &terrain {
                Some(f) => Terrain::load(f)?,
                None => random_barrier_terrain(&p, seed, &BarrierConfig::default())?,
            };
            let cfg = RunConfig::new(Cmd::TerrainSim, seed)
                .with("r", p.r)
                .with("alpha", p.alpha)
                .with("rays", rays as f64)
                .with("turns", turns as f64);
            let adapted = adapt_strategy_detailed(&p, &t, turns)?;
            let (first, last) = (turns.saturating_sub(12).max(1), turns.saturating_sub(3));
            let anchors = adapted.vertex_range(first, last).len().max(1);
            let grid = raysearch::search::linspace(p.alpha.max(1e-6), std::f64::consts::FRAC_PI_2, rays.div_ceil(anchors).max(2));
            let ray_list = terrain_ray_grid(&adapted, first, last, &grid);
            let rep = terrain_sweep_rays(&adapted, &t, &ray_list, cli.workers, false)?;
            let res = TerrainSimResult {
                terrain: serde_json::from_str(&t.to_json()?)?,
                report: rep,
                episodes: adapted.episodes,
            };
            json(&out, &cfg, &res)?;
        }
        Command::Verify { terrain } => {
            let mut ok = true;
            for id in 1..=acceptance::CRITERIA {
                let o = acceptance::criterion(id);
                ok &= o.passed;
                println!("{o}");
            }
            if let Some(f) = terrain {
                let p = raysearch::near_optimal();
                let line = Terrain::load(&f).and_then(|t| terrain_check(&p, &t)).and_then(|(w, e, v)| {
                    let c = worst_case_beta(&p)?.c_star;
                    Ok((w <= c + 1e-3 && v.is_empty(), format!("worst {w:.7}, {e} episodes, {} violations", v.len())))
                });
                let (passed, text) = line.unwrap_or_else(|e| (false, format!("error: {e}")));
                ok &= passed;
                println!("{} [terrain] {}: {text}", if passed { "PASS" } else { "FAIL" }, f.display());
            }
            return Ok(ok);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let (_, warning) = report::resolve_precision(std::env::var(PRECISION_VAR).ok().as_deref());
    if let Some(w) = warning {
        eprintln!("warning: {w}");
    }
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
