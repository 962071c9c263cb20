use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use discner::automata::grammar_automaton_with_epsilon;
use discner::corpus::{
    filter_incompatible, format_corpus, format_tag_file, random_scorer, read_tag_file,
    silver_corpus, stats, synthetic_sentences, time_predict,
};
use discner::model::predict_batch;
use discner::scheme::is_well_formed_in;
use discner::{
    decode, encode, evaluate, read_corpus, train, CorpusRecord, Error, Grammar, Lexicon,
    LinearScorer, LossKind, Mode, TrainConfig,
};

#[derive(Parser)]
#[command(
    name = "discner",
    version,
    about = "Sound tagging for discontinuous named-entity recognition"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ModeArg {
    /// Component typing: semantic or structural.
    #[arg(long, default_value = "semantic")]
    mode: Mode,
}

#[derive(Args)]
struct Output {
    /// Write here instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check that every line of a tag file is well-formed.
    Validate {
        tags: PathBuf,
        #[command(flatten)]
        mode: ModeArg,
    },
    /// Convert a corpus to a tag file.
    Encode {
        corpus: PathBuf,
        #[command(flatten)]
        mode: ModeArg,
        #[command(flatten)]
        out: Output,
    },
    /// Convert a tag file to mention lines.
    Decode {
        tags: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Print sentence and mention counts.
    Stats { corpus: PathBuf },
    /// Drop records the two-layer representation cannot express.
    Filter {
        corpus: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Type components by lexicon matching.
    Silver {
        corpus: PathBuf,
        #[arg(long)]
        lexicon: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Train a linear scorer.
    Train {
        corpus: PathBuf,
        /// Where to write the model.
        #[arg(long)]
        model: PathBuf,
        #[arg(long, default_value = "nll")]
        loss: LossKind,
        #[command(flatten)]
        mode: ModeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        epochs: usize,
        #[arg(long, default_value_t = 0.1)]
        learning_rate: f64,
        #[arg(long, default_value_t = 0.0)]
        l2: f64,
        #[arg(long, default_value_t = discner::model::DEFAULT_DIM)]
        dim: usize,
    },
    /// Predict mentions for the tokens of a corpus.
    Predict {
        corpus: PathBuf,
        #[arg(long)]
        model: PathBuf,
        #[command(flatten)]
        mode: ModeArg,
        #[command(flatten)]
        out: Output,
    },
    /// Score predicted mentions against gold mentions.
    Eval { gold: PathBuf, predicted: PathBuf },
    /// Measure prediction throughput and its scaling with sentence length.
    Bench {
        /// Sentence lengths to time.
        #[arg(long, value_delimiter = ',', default_value = "64,128,256,512")]
        sizes: Vec<usize>,
        /// Sentences per length.
        #[arg(long, default_value_t = 100)]
        sentences: usize,
        #[arg(long, default_value_t = 5)]
        runs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        mode: ModeArg,
    },
    /// Print the grammar automaton in text form.
    AutomatonExport {
        #[command(flatten)]
        mode: ModeArg,
        /// Export the ε-NFA instead of the minimal deterministic automaton.
        #[arg(long)]
        raw: bool,
        #[command(flatten)]
        out: Output,
    },
}

/// Exit status 1: the input was read but failed a check.
struct Rejected(String);

enum Failure {
    Rejected(Rejected),
    Error(Error),
    File(PathBuf, Error),
}

fn at(path: &Path) -> impl FnOnce(Error) -> Failure + '_ {
    move |e| Failure::File(path.to_owned(), e)
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

impl From<Rejected> for Failure {
    fn from(r: Rejected) -> Self {
        Failure::Rejected(r)
    }
}

fn emit(out: &Output, text: &str) -> Result<(), Error> {
    match &out.output {
        Some(path) => fs::write(path, text).map_err(Error::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Validate { tags, mode } => {
            let sequences = read_tag_file(&tags).map_err(at(&tags))?;
            let bad: Vec<usize> = sequences
                .iter()
                .enumerate()
                .filter(|(_, ts)| !is_well_formed_in(ts, mode.mode))
                .map(|(i, _)| i + 1)
                .collect();
            for line in &bad {
                println!("line {line}: ill-formed");
            }
            println!(
                "{} of {} sequences well-formed",
                sequences.len() - bad.len(),
                sequences.len()
            );
            if !bad.is_empty() {
                return Err(Rejected(format!("{} ill-formed sequences", bad.len())).into());
            }
        }
        Command::Encode { corpus, mode, out } => {
            let records = read_corpus(&corpus).map_err(at(&corpus))?;
            let mut sequences = Vec::with_capacity(records.len());
            for (k, r) in records.iter().enumerate() {
                let ann = r
                    .annotation()
                    .map_err(|e| Rejected(format!("record {}: {e}", k + 1)))?;
                let ann = match mode.mode {
                    Mode::Semantic => ann,
                    Mode::Structural => ann.to_structural(),
                };
                sequences.push(encode(&ann)?);
            }
            emit(&out, &format_tag_file(&sequences))?;
        }
        Command::Decode { tags, out } => {
            let mut text = String::new();
            for (k, ts) in read_tag_file(&tags).map_err(at(&tags))?.iter().enumerate() {
                let mentions = decode(ts).map_err(|e| Rejected(format!("line {}: {e}", k + 1)))?;
                text.push_str(&format!("{mentions}\n"));
            }
            emit(&out, &text)?;
        }
        Command::Stats { corpus } => {
            let s = stats(&read_corpus(&corpus).map_err(at(&corpus))?);
            println!("sentences\t{}", s.sentences);
            println!("mentions\t{}", s.mentions);
            println!("discontinuous\t{}", s.discontinuous);
            println!("incompatible\t{}", s.incompatible);
        }
        Command::Filter { corpus, out } => {
            let outcome = filter_incompatible(&read_corpus(&corpus).map_err(at(&corpus))?);
            for (reason, count) in outcome.counts() {
                eprintln!("dropped {reason}\t{count}");
            }
            eprintln!("kept\t{}", outcome.kept.len());
            emit(&out, &format_corpus(&outcome.kept))?;
        }
        Command::Silver {
            corpus,
            lexicon,
            out,
        } => {
            let lex = Lexicon::read(&lexicon).map_err(at(&lexicon))?;
            emit(
                &out,
                &format_corpus(&silver_corpus(
                    &read_corpus(&corpus).map_err(at(&corpus))?,
                    &lex,
                )),
            )?;
        }
        Command::Train {
            corpus,
            model,
            loss,
            mode,
            seed,
            epochs,
            learning_rate,
            l2,
            dim,
        } => {
            let records = read_corpus(&corpus).map_err(at(&corpus))?;
            let cfg = TrainConfig {
                loss,
                epochs,
                learning_rate,
                l2,
                seed,
                mode: mode.mode,
                dim,
            };
            train(&records, &cfg)?.save(&model)?;
        }
        Command::Predict {
            corpus,
            model,
            mode,
            out,
        } => {
            let scorer = LinearScorer::load(&model).map_err(at(&model))?;
            let records = read_corpus(&corpus).map_err(at(&corpus))?;
            let tokens: Vec<Vec<String>> = records.iter().map(|r| r.tokens().to_vec()).collect();
            let predicted = predict_batch(&scorer, &Grammar::new(mode.mode), &tokens)?;
            let records = tokens
                .into_iter()
                .zip(predicted)
                .map(|(t, m)| CorpusRecord::new(t, m))
                .collect::<Result<Vec<_>, _>>()?;
            emit(&out, &format_corpus(&records))?;
        }
        Command::Eval { gold, predicted } => {
            let gold: Vec<_> = read_corpus(&gold)
                .map_err(at(&gold))?
                .into_iter()
                .map(|r| r.mentions().clone())
                .collect();
            let predicted: Vec<_> = read_corpus(&predicted)
                .map_err(at(&predicted))?
                .into_iter()
                .map(|r| r.mentions().clone())
                .collect();
            let report = evaluate(&gold, &predicted).map_err(|e| Rejected(e.to_string()))?;
            println!("{report}");
        }
        Command::Bench {
            sizes,
            sentences,
            runs,
            seed,
            mode,
        } => {
            let grammar = Grammar::new(mode.mode);
            let scorer = random_scorer(1 << 12, 1.0, seed)?;
            let mut times = Vec::new();
            for &n in &sizes {
                let data = synthetic_sentences(sentences, n, seed);
                let t = time_predict(&scorer, &grammar, &data, runs)?.as_secs_f64();
                println!(
                    "n={n}\t{:.1} sentences/s\t{:.3} ms/sentence",
                    sentences as f64 / t,
                    1e3 * t / sentences as f64
                );
                times.push((n, t));
            }
            let mut superlinear = 0;
            for &(m, tm) in &times {
                if let Some(&(_, t2m)) = times.iter().find(|(n, _)| *n == 2 * m) {
                    let ratio = t2m / tm;
                    let verdict = if ratio <= 2.5 { "ok" } else { "superlinear" };
                    println!("time(n={})/time(n={m}) = {ratio:.2}\t{verdict}", 2 * m);
                    superlinear += usize::from(ratio > 2.5);
                }
            }
            if superlinear > 0 {
                return Err(
                    Rejected(format!("{superlinear} doublings exceeded a 2.5x slowdown")).into(),
                );
            }
        }
        Command::AutomatonExport { mode, raw, out } => {
            let text = if raw {
                grammar_automaton_with_epsilon(mode.mode).to_text()
            } else {
                Grammar::new(mode.mode).automaton().minimize()?.to_text()
            };
            emit(&out, &text)?;
        }
    }
    Ok(())
}

fn exit_code(e: &Error) -> ExitCode {
    match e {
        Error::Io(_) | Error::Parse { .. } | Error::Config(_) => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    match run(Cli::parse().command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Rejected(Rejected(msg))) => {
            eprintln!("discner: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Error(e)) => {
            eprintln!("discner: {e}");
            exit_code(&e)
        }
        Err(Failure::File(path, e)) => {
            eprintln!("discner: {}: {e}", path.display());
            exit_code(&e)
        }
    }
}
