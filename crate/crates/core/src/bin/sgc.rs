use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sgc::experiments::{
    ablate_data_to_dir, ablate_propagation_to_dir, bench_to_dir, run_to_dir, spectrum_to_dir, sweep_to_dir,
    ExperimentConfig,
};
use sgc::Result;

/// Simple graph convolution experiments.
#[derive(Parser)]
#[command(name = "sgc", version)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args)]
struct Common {
    /// Experiment config (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Output directory; overrides `output_dir` in the config.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Verb {
    /// Train once and evaluate.
    Run(Common),
    /// Tune weight decay on the validation set.
    Sweep(Common),
    /// Validation accuracy per propagation kind and K.
    AblateProp(Common),
    /// Validation accuracy versus labeled nodes per class.
    AblateData(Common),
    /// Spectrum quantities, filter curves and Fourier coefficients.
    Spectrum(Common),
    /// Median precompute and training times.
    Bench(Common),
}

fn init_threads() {
    let Ok(value) = std::env::var("SGC_THREADS") else { return };
    match value.trim().parse::<usize>() {
        Ok(n) if n > 0 => {
            // Only fails if a pool already exists, which cannot happen this early.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        _ => eprintln!("warning: ignoring SGC_THREADS={value:?}"),
    }
}

type VerbFn = fn(&ExperimentConfig, &std::path::Path) -> Result<String>;

fn execute(verb: Verb) -> Result<String> {
    let (common, verb_fn): (Common, VerbFn) = match verb {
        Verb::Run(c) => (c, |cfg, out| {
            let r = run_to_dir(cfg, out)?;
            Ok(format!("val_acc={:.4} test_acc={:.4}", r.val_accuracy, r.test_accuracy))
        }),
        Verb::Sweep(c) => (c, |cfg, out| {
            let r = sweep_to_dir(cfg, out)?;
            Ok(format!(
                "weight_decay={} val_acc={:.4} test_acc={:.4}",
                r.config.train.weight_decay, r.val_accuracy, r.test_accuracy
            ))
        }),
        Verb::AblateProp(c) => (c, |cfg, out| Ok(format!("wrote {}", ablate_propagation_to_dir(cfg, out)?.display()))),
        Verb::AblateData(c) => (c, |cfg, out| Ok(format!("wrote {}", ablate_data_to_dir(cfg, out)?.display()))),
        Verb::Spectrum(c) => (c, |cfg, out| {
            let a = spectrum_to_dir(cfg, out)?;
            Ok(format!(
                "lambda_max={:.4} aug_lambda_max={:.4}",
                a.report.lambda_max, a.report.aug_lambda_max
            ))
        }),
        Verb::Bench(c) => (c, |cfg, out| {
            let b = bench_to_dir(cfg, out)?;
            Ok(format!(
                "precompute={:.4}s train={:.4}s total={:.4}s",
                b.precompute_seconds, b.train_seconds, b.total_seconds
            ))
        }),
    };
    let config = ExperimentConfig::from_file(&common.config)?;
    let out = common
        .out
        .or_else(|| config.output_dir.clone())
        .unwrap_or_else(|| PathBuf::from("."));
    verb_fn(&config, &out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads();
    match execute(cli.verb) {
        Ok(summary) => {
            println!("{summary}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
