use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use riskway::config::{run_manifest, RunConfig};
use riskway::reports::{conflict_events_csv, episode_reports_csv, learning_curve_csv};
use riskway::trajio::{
    live_report, read_trajectory_file, replay_evaluate, resample_records, write_trajectory_file,
    TrajectoryMeta, TrajectoryRecord,
};
use riskway_core::hppo::{evaluate_policy, train, TrainError};
use riskway_core::neuralcore::{decode_checkpoint, encode_checkpoint, ParamVec};
use riskway_core::riskfield::{field_grid_export, GridSpec, VClass, VehicleState};
use riskway_core::safetymetrics::scan_conflicts;
use riskway_core::simworld::{world_step, WorldState};

/// Highway traffic simulator, risk-field engine, and hybrid-action
/// policy-gradient trainer.
#[derive(Parser)]
#[command(name = "riskway", version, disable_help_subcommand = true)]
struct Cli {
    /// Configuration file (TOML); defaults apply for absent keys.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Print the fully resolved configuration and exit.
    #[arg(long)]
    print_config: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args)]
struct CommonArgs {
    /// Random seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output directory or file.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Train the policy and emit the learning curve, checkpoints, and a run
    /// manifest.
    Train {
        #[command(flatten)]
        common: CommonArgs,
        /// Write an intermediate checkpoint every N iterations (0 = never).
        #[arg(long, default_value_t = 0)]
        checkpoint_every: usize,
    },
    /// Run the ambient-only simulation and export a trajectory CSV.
    Simulate {
        #[command(flatten)]
        common: CommonArgs,
        /// Simulated duration in seconds (after warm-up).
        #[arg(long, default_value_t = 60.0)]
        duration: f64,
    },
    /// Roll out a policy and emit per-episode reports and conflict events.
    Evaluate {
        #[command(flatten)]
        common: CommonArgs,
        /// Parameter checkpoint; a freshly initialized policy when absent.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        episodes: usize,
        /// Sample actions instead of taking the deterministic head outputs.
        #[arg(long)]
        stochastic: bool,
    },
    /// Re-evaluate a recorded trajectory for one subject vehicle.
    Replay {
        #[command(flatten)]
        common: CommonArgs,
        /// Trajectory CSV to evaluate.
        #[arg(long)]
        input: PathBuf,
        /// Subject vehicle id (defaults to the file's subject header).
        #[arg(long)]
        subject: Option<u64>,
    },
    /// Export a grid of field-force magnitudes around an emitter.
    Fieldmap {
        #[command(flatten)]
        common: CommonArgs,
        /// Emitter speed in m/s.
        #[arg(long, default_value_t = 20.0)]
        speed: f64,
        /// Probe speed minus emitter speed in m/s.
        #[arg(long, default_value_t = 0.0)]
        dv: f64,
        /// Probe acceleration minus emitter acceleration in m/s².
        #[arg(long, default_value_t = 0.0)]
        da: f64,
        #[arg(long, default_value_t = -50.0)]
        x_min: f64,
        #[arg(long, default_value_t = 100.0)]
        x_max: f64,
        #[arg(long, default_value_t = -8.0)]
        y_min: f64,
        #[arg(long, default_value_t = 8.0)]
        y_max: f64,
        #[arg(long, default_value_t = 0.5)]
        step: f64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Usage problems (including bare --help) exit 1 with the text.
            eprint!("{err}");
            return ExitCode::from(1);
        }
    };
    let config = match load_config(cli.config.as_deref()) {
        Ok(cfg) => cfg,
        Err(err) => {
            eprintln!("error: {err:#}");
            return ExitCode::from(2);
        }
    };
    if cli.print_config {
        print!("{}", config.to_toml());
        return ExitCode::SUCCESS;
    }
    let Some(command) = cli.command else {
        eprintln!(
            "usage: riskway [--config FILE] [--print-config] <train|simulate|evaluate|replay|fieldmap>"
        );
        eprintln!("run with --help for details");
        return ExitCode::from(1);
    };
    match run(command, config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn load_config(path: Option<&Path>) -> Result<RunConfig> {
    match path {
        Some(path) => RunConfig::load(path),
        None => Ok(RunConfig::default()),
    }
}

fn run(command: Command, config: RunConfig) -> Result<()> {
    match command {
        Command::Train {
            common,
            checkpoint_every,
        } => cmd_train(config, common, checkpoint_every),
        Command::Simulate { common, duration } => cmd_simulate(config, common, duration),
        Command::Evaluate {
            common,
            checkpoint,
            episodes,
            stochastic,
        } => cmd_evaluate(config, common, checkpoint, episodes, stochastic),
        Command::Replay {
            common,
            input,
            subject,
        } => cmd_replay(config, common, input, subject),
        Command::Fieldmap {
            common,
            speed,
            dv,
            da,
            x_min,
            x_max,
            y_min,
            y_max,
            step,
        } => cmd_fieldmap(
            config, common, speed, dv, da, x_min, x_max, y_min, y_max, step,
        ),
    }
}

fn cmd_train(mut config: RunConfig, common: CommonArgs, checkpoint_every: usize) -> Result<()> {
    config.trainer.seed = common.seed;
    std::fs::create_dir_all(&common.out)
        .with_context(|| format!("creating {}", common.out.display()))?;
    std::fs::write(
        common.out.join("run_manifest.toml"),
        run_manifest(&config, common.seed),
    )?;

    let setup = config.train_setup();
    let out_dir = common.out.clone();
    let result = train(&setup, |entry, params| {
        if checkpoint_every > 0 && (entry.iteration + 1) % checkpoint_every == 0 {
            let path = out_dir.join(format!("checkpoint_{:05}.bin", entry.iteration + 1));
            let _ = std::fs::write(path, encode_checkpoint(params));
        }
        println!(
            "iteration {}: mean_return {:.3} episodes {} loss {:.4} lr {:.2e}",
            entry.iteration,
            entry.mean_return,
            entry.episodes_completed,
            entry.loss_total,
            entry.lr
        );
    });
    let outcome = match result {
        Ok(outcome) => outcome,
        Err(TrainError::NonFiniteLoss { context }) => {
            let dump = common.out.join("nonfinite_minibatch.txt");
            std::fs::write(&dump, &context)?;
            anyhow::bail!(
                "training aborted on a non-finite loss; minibatch dumped to {}",
                dump.display()
            );
        }
        Err(e) => return Err(anyhow::anyhow!("{e}")),
    };

    std::fs::write(
        common.out.join("learning_curve.csv"),
        learning_curve_csv(&outcome.log),
    )?;
    std::fs::write(
        common.out.join("checkpoint_final.bin"),
        encode_checkpoint(&outcome.params),
    )?;
    println!(
        "trained {} iterations; artifacts in {}",
        outcome.log.len(),
        common.out.display()
    );
    Ok(())
}

fn cmd_simulate(config: RunConfig, common: CommonArgs, duration: f64) -> Result<()> {
    anyhow::ensure!(duration > 0.0, "duration must be positive");
    let highway = config.highway;
    let mut world = WorldState::new(common.seed);
    let warm_steps = (highway.warmup / highway.dt + 0.5) as u64;
    for _ in 0..warm_steps {
        world_step(&mut world, &highway, None);
    }
    let t0 = world.time();
    let steps = (duration / highway.dt + 0.5) as u64;
    let mut records: Vec<TrajectoryRecord> = Vec::new();
    for frame in 0..steps {
        push_frame(&mut records, frame, &world);
        world_step(&mut world, &highway, None);
    }
    let meta = TrajectoryMeta {
        dt: highway.dt,
        t0,
        subject: None,
        mass_imputed: false,
    };
    if let Some(parent) = common.out.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    write_trajectory_file(&common.out, &records, &meta)?;
    println!(
        "simulated {steps} frames ({} vehicles at the end) into {}",
        world.vehicles().len(),
        common.out.display()
    );
    Ok(())
}

fn push_frame(records: &mut Vec<TrajectoryRecord>, frame: u64, world: &WorldState) {
    for rec in world.vehicles() {
        let (v_x, v_y) = rec.state.velocity();
        let (a_x, a_y) = rec.state.accel_vector();
        records.push(TrajectoryRecord {
            frame,
            vehicle_id: rec.id,
            x: rec.state.position_x,
            y: rec.state.position_y,
            v_x,
            v_y,
            a_x,
            a_y,
            lane: rec.lane as u32,
            vclass: rec.state.vclass,
            mass: rec.state.mass,
            length: rec.state.length,
            width: rec.state.width,
        });
    }
}

fn cmd_evaluate(
    mut config: RunConfig,
    common: CommonArgs,
    checkpoint: Option<PathBuf>,
    episodes: usize,
    stochastic: bool,
) -> Result<()> {
    config.trainer.seed = common.seed;
    let setup = config.train_setup();
    let params = match checkpoint {
        Some(path) => {
            let bytes =
                std::fs::read(&path).with_context(|| format!("reading {}", path.display()))?;
            decode_checkpoint(config.net, &bytes).map_err(|e| anyhow::anyhow!("{e}"))?
        }
        None => ParamVec::init(config.net, common.seed),
    };
    let outcomes = evaluate_policy(&setup, &params, episodes, common.seed, stochastic)
        .map_err(|e| anyhow::anyhow!("{e}"))?;

    std::fs::create_dir_all(&common.out)?;
    let scan = config.scan_params();
    let mut reports = Vec::new();
    let mut all_events = Vec::new();
    for (i, outcome) in outcomes.iter().enumerate() {
        let (canonical, report) = live_report(&outcome.log, &scan)?;
        let events = scan_conflicts(&canonical, &scan).map_err(|e| anyhow::anyhow!("{e}"))?;
        all_events.extend(events.into_iter().map(|e| (i, e)));
        println!(
            "episode {i}: return {:.2} steps {} collided {}",
            outcome.total_reward, outcome.steps, outcome.collided
        );
        reports.push(report);
    }
    std::fs::write(common.out.join("reports.csv"), episode_reports_csv(&reports))?;
    std::fs::write(
        common.out.join("conflicts.csv"),
        conflict_events_csv(&all_events),
    )?;
    println!(
        "wrote reports for {episodes} episodes to {}",
        common.out.display()
    );
    Ok(())
}

fn cmd_replay(
    config: RunConfig,
    common: CommonArgs,
    input: PathBuf,
    subject: Option<u64>,
) -> Result<()> {
    let (records, meta) = read_trajectory_file(&input)?;
    if meta.mass_imputed {
        eprintln!("note: mass column absent; masses imputed from class defaults");
    }
    // External data is resampled onto the configured step; identical steps
    // pass through untouched.
    let (records, meta) = resample_records(&records, &meta, config.highway.dt);
    let scan = config.scan_params();
    let (log, report) = replay_evaluate(&records, &meta, &scan, subject)?;
    let events = scan_conflicts(&log, &scan).map_err(|e| anyhow::anyhow!("{e}"))?;

    std::fs::create_dir_all(&common.out)?;
    std::fs::write(
        common.out.join("reports.csv"),
        episode_reports_csv(&[report]),
    )?;
    let indexed: Vec<(usize, _)> = events.into_iter().map(|e| (0, e)).collect();
    std::fs::write(
        common.out.join("conflicts.csv"),
        conflict_events_csv(&indexed),
    )?;
    println!(
        "subject {}: avg_speed {:.2} m/s, {} conflicts, PCEC {:.1} J",
        log.subject, report.avg_speed, report.conflicts, report.pcec_joules
    );
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_fieldmap(
    config: RunConfig,
    common: CommonArgs,
    speed: f64,
    dv: f64,
    da: f64,
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
    step: f64,
) -> Result<()> {
    let sv = VehicleState {
        position_x: 0.0,
        position_y: 0.0,
        speed,
        heading: 0.0,
        acceleration: 0.0,
        mass: 1500.0,
        vclass: VClass::Light,
        length: config.highway.spawn.light_length,
        width: config.highway.spawn.light_width,
    };
    let probe = VehicleState {
        position_x: 0.0,
        position_y: 0.0,
        speed: (speed + dv).max(0.0),
        heading: 0.0,
        acceleration: da,
        mass: 2000.0,
        vclass: VClass::Light,
        length: config.highway.spawn.light_length,
        width: config.highway.spawn.light_width,
    };
    let grid = GridSpec {
        x_range: (x_min, x_max),
        y_range: (y_min, y_max),
        step,
    };
    let result = field_grid_export(&sv, &config.riskfield, &grid, &probe)
        .map_err(|e| anyhow::anyhow!("{e}"))?;
    if let Some(parent) = common.out.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    std::fs::write(&common.out, result.to_csv())?;
    println!(
        "wrote {}x{} field grid to {}",
        result.xs.len(),
        result.ys.len(),
        common.out.display()
    );
    Ok(())
}
