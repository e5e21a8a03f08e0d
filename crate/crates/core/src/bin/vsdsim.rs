use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use vsdsim::cli::{
    cmd_fig1, cmd_fig2, cmd_fig3, cmd_sweep, cmd_vsd, Fig1Options, Fig2Options, Fig3Options, Panel,
    RawSettings,
};
use vsdsim::Result;

#[derive(Parser)]
#[command(
    name = "vsdsim",
    version,
    about = "Bell nonlocality and concurrence under 1/f and Markovian noise"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Adiabatic B surface over time and |a|² (panel a) or purity (panel b).
    Fig1 {
        #[arg(long, default_value = "a")]
        panel: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// VSD time versus purity for each noise mode.
    Fig2 {
        #[arg(long)]
        out: PathBuf,
    },
    /// B versus concurrence traces for both Bell states.
    Fig3 {
        #[arg(long)]
        out: PathBuf,
    },
    /// Time series of B, its components, concurrence and populations.
    Sweep(RunArgs),
    /// Vanishing-of-violation time for one configuration.
    Vsd(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, allow_hyphen_values = true)]
    family: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    r: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    phase: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    omega: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    sigma: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    sigma_ratio: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    sf: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    temperature: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    mode: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    t_max: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    n_steps: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    scan_resolution: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    format: Option<String>,
    /// key=value file; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

impl RunArgs {
    fn settings(&self) -> Result<RawSettings> {
        let mut flags = RawSettings::new();
        let pairs = [
            ("family", &self.family),
            ("r", &self.r),
            ("a2", &self.a2),
            ("phase", &self.phase),
            ("omega", &self.omega),
            ("sigma", &self.sigma),
            ("sigma-ratio", &self.sigma_ratio),
            ("sf", &self.sf),
            ("temperature", &self.temperature),
            ("mode", &self.mode),
            ("t-max", &self.t_max),
            ("n-steps", &self.n_steps),
            ("scan-resolution", &self.scan_resolution),
            ("format", &self.format),
        ];
        for (k, v) in pairs {
            if let Some(v) = v {
                flags.set(k, v.as_str())?;
            }
        }
        let file = match &self.config {
            Some(p) => RawSettings::from_file(p)?,
            None => RawSettings::new(),
        };
        file.merged_with(&flags)
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Fig1 { panel, out } => {
            let panel: Panel = panel.parse()?;
            cmd_fig1(&Fig1Options::new(panel), &out)?;
        }
        Command::Fig2 { out } => {
            cmd_fig2(&Fig2Options::default(), &out)?;
        }
        Command::Fig3 { out } => {
            cmd_fig3(&Fig3Options::default(), &out)?;
        }
        Command::Sweep(args) => {
            let params = args.settings()?.resolve()?;
            cmd_sweep(&params, &args.out)?;
        }
        Command::Vsd(args) => {
            let params = args.settings()?.resolve()?;
            let (rec, _) = cmd_vsd(&params, &args.out)?;
            match rec.omega_t_vsd {
                Some(t) => eprintln!("omega_t_vsd = {t:.6} ({})", rec.flag),
                None => eprintln!("no crossing ({})", rec.flag),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("vsdsim: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
