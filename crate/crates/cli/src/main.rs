use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use weno_core::harness::{self, RunConfig};
use weno_core::problems::{ProblemId, PROBLEM_NAMES};
use weno_core::weights::Scheme;

#[derive(Parser, Debug)]
#[command(name = "weno", version, about = "WENO benchmark runner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one simulation and write the final state and a summary.
    Run(Common),
    /// Error table under grid refinement (RK4, dt = dx^1.5).
    Convergence {
        #[command(flatten)]
        common: Common,
        /// Resolutions, e.g. 50,100,200.
        #[arg(long, value_delimiter = ',', required = true)]
        ns: Vec<usize>,
    },
    /// Wall time against Linf error for several schemes.
    Efficiency {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', value_parser = parse_scheme, default_value = "js,m,z,h")]
        schemes: Vec<Scheme>,
        #[arg(long, value_delimiter = ',', required = true)]
        ns: Vec<usize>,
    },
    /// Density profiles of several schemes on one grid.
    Compare {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', value_parser = parse_scheme, default_value = "js,m,z,h")]
        schemes: Vec<Scheme>,
    },
    /// List the problem presets.
    List,
}

#[derive(Args, Debug, Default)]
struct Common {
    /// JSON file with RunConfig fields; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    problem: Option<String>,
    #[arg(long, value_parser = parse_scheme)]
    scheme: Option<Scheme>,
    /// Cells along x.
    #[arg(long)]
    n: Option<usize>,
    /// Cells along y (default keeps the preset aspect ratio).
    #[arg(long)]
    ny: Option<usize>,
    #[arg(long)]
    t_final: Option<f64>,
    #[arg(long)]
    cfl: Option<f64>,
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    gamma_exp: Option<f64>,
    #[arg(long)]
    eps: Option<f64>,
    /// Relative zero threshold of the tension selector.
    #[arg(long)]
    eps_zero: Option<f64>,
    /// Clamp on the normalized tension.
    #[arg(long)]
    s2_max: Option<f64>,
    /// Reconstruct conserved components instead of characteristic fields.
    #[arg(long)]
    componentwise: bool,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    deterministic: Option<bool>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_scheme(s: &str) -> Result<Scheme, String> {
    Scheme::parse(s).ok_or_else(|| format!("unknown scheme '{s}' (expected js, m, z or h)"))
}

impl Common {
    fn config(&self) -> Result<RunConfig> {
        let mut c = match &self.config {
            Some(p) => {
                let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                RunConfig::from_json(&text)?
            }
            None => RunConfig::default(),
        };
        if let Some(v) = &self.problem {
            c.problem = v.clone();
        }
        if let Some(v) = self.scheme {
            c.scheme = v;
        }
        macro_rules! take {
            ($($f:ident),*) => {$(if self.$f.is_some() { c.$f = self.$f.clone(); })*};
        }
        take!(n, ny, t_final, theta, gamma_exp, eps, eps_zero, s2_max, workers, out);
        if let Some(v) = self.cfl {
            c.cfl = Some(v);
            c.law = None;
        }
        if let Some(v) = self.deterministic {
            c.deterministic = v;
        }
        c.componentwise |= self.componentwise;
        Ok(c)
    }
}

fn write_out(cfg: &RunConfig, name: &str, text: &str) -> Result<()> {
    print!("{text}");
    if let Some(dir) = &cfg.out {
        fs::create_dir_all(dir)?;
        let p = dir.join(name);
        fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?;
        eprintln!("wrote {}", p.display());
    }
    Ok(())
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::List => {
            for name in PROBLEM_NAMES {
                let s = ProblemId::parse(name)?.spec();
                let grid = match s.ny {
                    Some(ny) => format!("{}x{ny}", s.n),
                    None => s.n.to_string(),
                };
                println!("{name:<18} {grid:>9}  t={:<5} {}", s.t_final, s.summary);
            }
        }
        Command::Run(common) => {
            let cfg = common.config()?;
            let a = harness::run(&cfg)?;
            let r = &a.report;
            println!(
                "{} {} n={} steps={} t={} wall={:.2}s",
                r.problem,
                r.scheme.name(),
                r.n,
                r.steps,
                r.t_reached,
                r.wall_seconds
            );
            if let Some(e) = r.density_error {
                println!("density error L1={:.6e} Linf={:.6e}", e.l1, e.linf);
            }
            println!("wrote {} and {}", a.csv.display(), a.summary.display());
        }
        Command::Convergence { common, ns } => {
            let cfg = common.config()?;
            let rep = harness::convergence(&cfg, &ns)?;
            write_out(&cfg, &format!("convergence_{}_{}.csv", rep.problem, rep.scheme.name()), &rep.to_csv())?;
        }
        Command::Efficiency { common, schemes, ns } => {
            let cfg = common.config()?;
            let rows = harness::efficiency(&cfg, &schemes, &ns)?;
            write_out(&cfg, &format!("efficiency_{}.csv", cfg.problem), &harness::efficiency_csv(&rows))?;
        }
        Command::Compare { common, schemes } => {
            let cfg = common.config()?;
            if schemes.is_empty() {
                bail!("no schemes given");
            }
            let c = harness::compare(&cfg, &schemes)?;
            let n = cfg.resolve()?.n;
            let name = format!("compare_{}_{n}.csv", c.problem);
            match &cfg.out {
                Some(dir) => {
                    fs::create_dir_all(dir)?;
                    fs::write(dir.join(&name), c.to_csv())?;
                    println!("wrote {}", dir.join(&name).display());
                }
                None => print!("{}", c.to_csv()),
            }
            for (s, e) in c.schemes.iter().zip(&c.errors) {
                if let Some(e) = e {
                    eprintln!("{:<2} L1={:.6e} Linf={:.6e}", s.name(), e.l1, e.linf);
                }
            }
            for (s, (_, f)) in c.schemes.iter().zip(&c.outcomes) {
                if let Some(f) = f {
                    eprintln!("{} stopped at step {}: {}", s.name(), f.step, f.message);
                }
            }
        }
    }
    Ok(())
}
