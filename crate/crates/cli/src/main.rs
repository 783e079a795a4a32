use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use ostensa_core::agency::{abduct, decide, explore_and_learn};
use ostensa_core::concept::extension_count;
use ostensa_core::formats::{
    load_lexicon, parse_cpt, parse_dlg, parse_nrm, parse_obj, parse_odc, read, save_concept,
    save_lexicon, ParseMode,
};
use ostensa_core::harness::{assist_fixture, isa_demo, run_scenario};
use ostensa_core::induction::induce;
use ostensa_core::norms::learn_ethics;
use ostensa_core::oracle::oracle_induce;
use ostensa_core::scenario::Scenario;
use ostensa_core::semiosis::{bootstrap, interpret};
use ostensa_core::{Bits, Concept, DecisionState, Error, OstensiveDefinition};

#[derive(Parser)]
#[command(name = "ostensa", version, about = "Learn concepts from ostensive definitions and act on them")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Induce the weakest consistent concept from an .odc corpus.
    Learn {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Treat unlisted responses as unconstrained instead of negative.
        #[arg(long)]
        open_world: bool,
    },
    /// List every response that satisfies a concept in a situation.
    Abduct {
        #[arg(long)]
        concept: PathBuf,
        #[arg(long)]
        situation: String,
    },
    /// Choose the first response that satisfies every goal and the ethics.
    Decide {
        #[arg(long = "goal", num_args = 1..)]
        goals: Vec<PathBuf>,
        #[arg(long)]
        ethics: PathBuf,
        #[arg(long)]
        situation: String,
        #[arg(long)]
        explain: bool,
    },
    /// List the lexicon tokens active on a decision state.
    Interpret {
        #[arg(long)]
        lexicon: PathBuf,
        #[arg(long)]
        state: String,
    },
    /// Learn unknown tokens from a dialogue corpus.
    Bootstrap {
        #[arg(long)]
        lexicon: PathBuf,
        #[arg(long)]
        dialogues: PathBuf,
        /// Write the extended lexicon here instead of updating it in place.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Learn an ethics concept from a norm corpus by majority vote.
    Norms {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Only use these labeller columns (zero-based).
        #[arg(long, value_delimiter = ',')]
        labelers: Option<Vec<usize>>,
    },
    /// Explore a scenario, label experiences with an objective and learn.
    Pipeline {
        #[arg(long)]
        objective: PathBuf,
        #[arg(long)]
        scenario: String,
        #[arg(long)]
        budget: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare the learner with exhaustive enumeration on an .odc corpus.
    OracleCheck {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        open_world: bool,
    },
    /// Run a built-in demonstration.
    Demo {
        #[arg(long)]
        scenario: DemoScenario,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Replace the task goals with one that demands harm.
        #[arg(long)]
        contradictory: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DemoScenario {
    Isa,
    Assist,
}

/// Outcome of a command that ran to completion but should not exit 0.
struct Mismatch(String);

enum Failure {
    Core(Error),
    Mismatch(Mismatch),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NoEthicalResponse { .. }
        | Error::EmptyPositives
        | Error::NoAppropriateSign { .. }
        | Error::NothingToBootstrap => 3,
        Error::VocabularyTooLarge { .. } | Error::TermExplosion { .. } | Error::ResourceExceeded { .. } => 4,
        _ => 2,
    }
}

fn bits(text: &str) -> Result<Bits, Error> {
    if text == "_" {
        return Ok(Bits::EMPTY);
    }
    text.parse()
}

fn load_concept(path: &Path) -> Result<Concept, Error> {
    parse_cpt(&read(path)?, ParseMode::Strict)
}

fn load_odc(path: &Path, open_world: bool) -> Result<OstensiveDefinition, Error> {
    parse_odc(&read(path)?, !open_world)
}

fn summary(c: &Concept) -> Result<String, Error> {
    Ok(format!("{c}\nextension {}\n", extension_count(c)?))
}

fn run(command: Command) -> Result<String, Failure> {
    let out = match command {
        Command::Learn { corpus, out, open_world } => {
            let c = induce(&load_odc(&corpus, open_world)?)?;
            save_concept(&c, &out)?;
            summary(&c)?
        }
        Command::Abduct { concept, situation } => {
            let c = load_concept(&concept)?;
            let rs = abduct(&c, bits(&situation)?)?;
            let mut text: String = rs.iter().map(|r| format!("{}\n", show(*r))).collect();
            if rs.is_empty() {
                text.push_str("none\n");
            }
            text
        }
        Command::Decide {
            goals,
            ethics,
            situation,
            explain,
        } => {
            let mut concepts = goals.iter().map(|p| load_concept(p)).collect::<Result<Vec<_>, _>>()?;
            concepts.push(load_concept(&ethics)?);
            let d = decide(&concepts, bits(&situation)?)?;
            if explain {
                d.explanation.render()
            } else {
                format!("{}\n", show(d.response))
            }
        }
        Command::Interpret { lexicon, state } => {
            let lex = load_lexicon(&lexicon)?;
            let d = DecisionState::new(Arc::clone(lex.vocabulary()), bits(&state)?)?;
            interpret(&d, &lex)?.into_iter().map(|t| t + "\n").collect()
        }
        Command::Bootstrap { lexicon, dialogues, out } => {
            let mut lex = load_lexicon(&lexicon)?;
            let records = parse_dlg(&read(&dialogues)?, Some(lex.vocabulary()))?;
            let report = bootstrap(&records, &lex)?;
            let mut text = String::new();
            for i in &report.discarded {
                text.push_str(&format!("discarded record {}\n", i + 1));
            }
            for (token, e) in &report.unlearnable {
                text.push_str(&format!("unlearnable {token}: {e}\n"));
            }
            for t in &report.learned {
                text.push_str(&format!("learned {} {}\n", t.token(), t.interpretant()));
                lex.insert(t.clone())?;
            }
            save_lexicon(&lex, out.as_deref().unwrap_or(&lexicon))?;
            text
        }
        Command::Norms { corpus, out, labelers } => {
            let mut n = parse_nrm(&read(&corpus)?)?;
            if let Some(cols) = labelers {
                n = n.subgroup(&cols)?;
            }
            let c = learn_ethics(&n)?;
            save_concept(&c, &out)?;
            summary(&c)?
        }
        Command::Pipeline {
            objective,
            scenario,
            budget,
            seed,
            out,
        } => {
            let env = Scenario::builtin(&scenario)?;
            let (_, f) = parse_obj(&read(&objective)?, Some(&env.vocab))?;
            let c = explore_and_learn(&f, &env, budget, seed)?;
            save_concept(&c, &out)?;
            summary(&c)?
        }
        Command::OracleCheck { corpus, open_world } => {
            let o = load_odc(&corpus, open_world)?;
            let learned = induce(&o)?;
            let oracle = oracle_induce(&o)?;
            let text = format!("learner {learned}\noracle {oracle}\n");
            if learned != oracle {
                return Err(Failure::Mismatch(Mismatch(text + "mismatch\n")));
            }
            text + "match\n"
        }
        Command::Demo {
            scenario,
            seed,
            contradictory,
        } => match scenario {
            DemoScenario::Isa => {
                let report = isa_demo()?;
                if !report.passed() {
                    return Err(Failure::Mismatch(Mismatch(report.render())));
                }
                report.render()
            }
            DemoScenario::Assist => {
                let fx = assist_fixture()?;
                let goals = if contradictory {
                    vec![fx.contradiction.clone(), fx.ethics.clone()]
                } else {
                    fx.goals()
                };
                run_scenario(&fx.scenario, &goals, &fx.lexicon, seed)?.render()
            }
        },
    };
    Ok(out)
}

fn show(b: Bits) -> String {
    if b.is_empty() {
        "_".into()
    } else {
        b.to_string()
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Mismatch(Mismatch(text))) => {
            print!("{text}");
            ExitCode::FAILURE
        }
    }
}
