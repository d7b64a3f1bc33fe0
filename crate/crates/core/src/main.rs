use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use placeone::cli::{self, CorpusSpec, Payload, ReportEnvelope, RunOptions};
use placeone::pencil::Settings;
use placeone::tower::Limits;

#[derive(Parser)]
#[command(
    name = "placeone",
    version,
    about = "Pencils of plane curves with one place at infinity"
)]
struct Args {
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Largest extension degree over Q a tower may reach.
    #[arg(long, default_value_t = 64, global = true)]
    max_ext_degree: usize,
    #[arg(long, default_value_t = 8, global = true)]
    max_tower_depth: usize,
    /// First truncation order for series expansions.
    #[arg(long, default_value_t = 16, global = true)]
    trunc_start: usize,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads for the corpus (0: one per core).
    #[arg(long, default_value_t = 0, global = true)]
    jobs: usize,
    /// Include wall-clock timings (output is then no longer reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form, Milnor numbers, places and genus of a curve.
    Analyze { f: String },
    /// The resultant R(x, lambda), d-regularity and critical values.
    Pencil { f: String },
    /// Which members of the pencil are rational.
    Census { f: String },
    /// Implicit equation of a polynomial parametrization.
    Implicitize { x_t: String, y_t: String },
    /// Classify two polynomially parametrized curves.
    Pair { f: String, g: String },
    /// Milnor number against place count for a germ at the origin.
    Lemma { h: String },
    /// Census over random polynomial parametrizations.
    Corpus {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 2)]
        min_degree: usize,
        #[arg(long, default_value_t = 5)]
        max_degree: usize,
        #[arg(long, default_value_t = 3)]
        coef_bound: i64,
    },
    /// Compare intersection numbers against the linear-algebra oracle.
    Verify { f: String, g: String },
}

fn emit(env: &ReportEnvelope, format: Format, compact: bool) {
    match format {
        Format::Json if compact => println!("{}", serde_json::to_string(env).unwrap()),
        Format::Json => println!("{}", serde_json::to_string_pretty(env).unwrap()),
        Format::Text => print!("{}", cli::to_text(env)),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let settings = Settings {
        limits: Limits {
            max_depth: args.max_tower_depth,
            max_degree: args.max_ext_degree,
        },
        seed: args.seed,
        trunc_start: args.trunc_start,
    };
    let opts = RunOptions {
        settings,
        timing: args.timing,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs)
        .build()
        .expect("thread pool");
    let envs: Vec<ReportEnvelope> = pool.install(|| match &args.command {
        Command::Analyze { f } => {
            vec![cli::run("analyze", &[f], opts, || {
                Ok(Payload::Analyze(Box::new(cli::analyze(f, settings)?)))
            })]
        }
        Command::Pencil { f } => {
            vec![cli::run("pencil", &[f], opts, || {
                Ok(Payload::Pencil(Box::new(cli::pencil(f, settings)?)))
            })]
        }
        Command::Census { f } => {
            vec![cli::run("census", &[f], opts, || {
                Ok(Payload::Census(Box::new(cli::census(f, settings)?)))
            })]
        }
        Command::Implicitize { x_t, y_t } => {
            vec![cli::run("implicitize", &[x_t, y_t], opts, || {
                Ok(Payload::Implicitize(cli::implicitize_cmd(
                    x_t, y_t, settings,
                )?))
            })]
        }
        Command::Pair { f, g } => {
            vec![cli::run("pair", &[f, g], opts, || {
                Ok(Payload::Pair(cli::pair(f, g, settings)?))
            })]
        }
        Command::Lemma { h } => vec![cli::run("lemma", &[h], opts, || {
            Ok(Payload::Lemma(cli::lemma(h, settings)?))
        })],
        Command::Verify { f, g } => {
            vec![cli::run("verify", &[f, g], opts, || {
                Ok(Payload::Verify(cli::verify(f, g, settings)?))
            })]
        }
        Command::Corpus {
            count,
            min_degree,
            max_degree,
            coef_bound,
        } => {
            let spec = CorpusSpec {
                count: *count,
                min_degree: *min_degree,
                max_degree: *max_degree,
                coef_bound: *coef_bound,
                seed: args.seed,
            };
            cli::corpus(&spec, opts)
        }
    });
    let compact = envs.len() > 1;
    let mut code = 0;
    for env in &envs {
        emit(env, args.format, compact);
        if let Payload::Error(e) = &env.result {
            eprintln!("error: {}", e.message);
        }
        code = code.max(env.exit_code());
    }
    ExitCode::from(code as u8)
}
