use clap::Parser;

mod commands;
mod config;
mod manifest;
mod svg;

use commands::{evaluate, integrate, plot, predict, prepare, synth, train};

/// Frame-to-frame visual odometry on disparity maps.
#[derive(Parser, Debug)]
#[command(name = "dispvo", version)]
enum Cli {
    /// Render a synthetic disparity sequence with ground-truth poses
    Synth(synth::Args),
    /// Build a training pair manifest from poses and disparity frames
    Prepare(prepare::Args),
    /// Train the two-head motion network from a manifest
    Train(train::Args),
    /// Predict frame-to-frame motions with a trained checkpoint
    Predict(predict::Args),
    /// Integrate a motion file into a trajectory
    Integrate(integrate::Args),
    /// Score predicted trajectories against ground truth
    Evaluate(evaluate::Args),
    /// Draw trajectories as a bird's-eye SVG plot
    Plot(plot::Args),
}

fn main() {
    let cli = Cli::parse();
    let result = match &cli {
        Cli::Synth(args) => synth::run(args),
        Cli::Prepare(args) => prepare::run(args),
        Cli::Train(args) => train::run(args),
        Cli::Predict(args) => predict::run(args),
        Cli::Integrate(args) => integrate::run(args),
        Cli::Evaluate(args) => evaluate::run(args),
        Cli::Plot(args) => plot::run(args),
    };
    if let Err(err) = result {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}
