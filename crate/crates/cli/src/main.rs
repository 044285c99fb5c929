use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use treepart::census::{count_by_lambda, f_closed, trees_with_lambda, trees_with_phi, all_trees, DEFAULT_MAX_N};
use treepart::codec::{decode, encode};
use treepart::involution::swap_involution;
use treepart::omega::{omega_set, render_grid};
use treepart::treemap::phi;
use treepart::verify::{run_suite, Suite, SuiteReport, DEFAULT_VERIFY_N};
use treepart::{
    parse_code_word, parse_integer_partition, parse_partition, parse_tree, CodeWord, LabelledTree,
    SetPartition,
};

/// Labelled trees, set-partition fibers and generalized Prüfer codes.
#[derive(Parser)]
#[command(name = "treepart", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Number of trees with indegree type LAMBDA, or with phi(T) = PI.
    Count(CountArgs),
    /// The set partition phi(T) of a tree.
    Phi {
        /// Tree file, `-` for stdin.
        #[arg(long)]
        tree: String,
    },
    /// The sigma-code of a tree.
    Encode {
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        tree: String,
    },
    /// The tree with a given sigma-code.
    Decode {
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        code: String,
        #[arg(long)]
        n: usize,
    },
    /// Every tree on [n], optionally restricted to a fiber.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "pi")]
        lambda: Option<String>,
        #[arg(long)]
        pi: Option<String>,
    },
    /// The code set of the fiber over PI.
    Omega {
        #[arg(long)]
        pi: String,
        #[arg(long)]
        n: usize,
        /// Defaults to `grid` for three-block partitions and `json` otherwise.
        #[arg(long, value_enum)]
        format: Option<OmegaFormat>,
    },
    /// Apply the label-swap involution for (i, i+1).
    Swap {
        #[arg(long)]
        tree: String,
        #[arg(long)]
        i: usize,
    },
    /// Run exhaustive verification suites for every m <= n.
    Verify {
        #[arg(long, default_value_t = DEFAULT_VERIFY_N)]
        n: usize,
        #[arg(long, default_value = "all")]
        suite: SuiteChoice,
    },
}

#[derive(Args)]
struct CountArgs {
    /// Comma-separated parts; n is taken as their sum plus one.
    #[arg(long, required_unless_present = "pi", conflicts_with = "pi")]
    lambda: Option<String>,
    #[arg(long, requires = "n")]
    pi: Option<String>,
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OmegaFormat {
    Grid,
    Json,
}

#[derive(Clone, Copy)]
enum SuiteChoice {
    All,
    One(Suite),
}

impl std::str::FromStr for SuiteChoice {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            Ok(SuiteChoice::All)
        } else {
            s.parse().map(SuiteChoice::One)
        }
    }
}

/// A failure reported on stderr with exit code 1.
struct Failure(String);

type Outcome = Result<(), Failure>;

fn bad(input: &str, value: &str, e: impl std::fmt::Display) -> Failure {
    Failure(format!("{input} {value:?}: {e}"))
}

fn read_tree(path: &str) -> Result<LabelledTree, Failure> {
    let text = if path == "-" {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf).map_err(|e| bad("--tree", path, e))?;
        buf
    } else {
        fs::read_to_string(path).map_err(|e| bad("--tree", path, e))?
    };
    parse_tree(&text).map_err(|e| bad("--tree", path, e))
}

fn read_partition(flag: &str, text: &str, n: usize) -> Result<SetPartition, Failure> {
    parse_partition(text, n).map_err(|e| bad(flag, text, e))
}

fn emit(out: &mut impl Write, text: &str) -> Outcome {
    out.write_all(text.as_bytes()).map_err(|e| Failure(format!("writing output: {e}")))
}

fn emit_json(out: &mut impl Write, value: &impl serde::Serialize) -> Outcome {
    let line = serde_json::to_string(value).map_err(|e| Failure(e.to_string()))?;
    emit(out, &format!("{line}\n"))
}

fn run(cli: Cli, out: &mut impl Write) -> Outcome {
    let json = cli.json;
    match cli.command {
        Command::Count(args) => {
            let (count, n) = if let Some(text) = &args.lambda {
                let lambda = parse_integer_partition(text).map_err(|e| bad("--lambda", text, e))?;
                let n = lambda.size() + 1;
                if let Some(given) = args.n.filter(|&m| m != n) {
                    return Err(bad("--n", &given.to_string(), format!("lambda implies n = {n}")));
                }
                (count_by_lambda(&lambda, n).map_err(|e| bad("--lambda", text, e))?, n)
            } else {
                let text = args.pi.as_deref().unwrap_or_default();
                let n = args.n.unwrap_or_default();
                let pi = read_partition("--pi", text, n)?;
                (f_closed(&pi).map_err(|e| bad("--pi", text, e))?, n)
            };
            if json {
                emit_json(out, &json!({ "n": n, "count": count }))
            } else {
                emit(out, &format!("{count}\n"))
            }
        }
        Command::Phi { tree } => {
            let pi = phi(&read_tree(&tree)?);
            if json {
                emit_json(out, &pi)
            } else {
                emit(out, &format!("{pi}\n"))
            }
        }
        Command::Encode { sigma, tree } => {
            let t = read_tree(&tree)?;
            let s = read_partition("--sigma", &sigma, t.n())?;
            let word = encode(&s, &t).map_err(|e| bad("--sigma", &sigma, e))?;
            write_word(out, &word, json)
        }
        Command::Decode { sigma, code, n } => {
            let s = read_partition("--sigma", &sigma, n)?;
            let word = parse_code_word(&code, n).map_err(|e| bad("--code", &code, e))?;
            let t = decode(&s, &word).map_err(|e| bad("--code", &code, e))?;
            write_tree(out, &t, json)
        }
        Command::Enumerate { n, lambda, pi } => {
            if n == 0 || n > DEFAULT_MAX_N {
                return Err(bad("--n", &n.to_string(), format!("expected 1..={DEFAULT_MAX_N}")));
            }
            let trees: Box<dyn Iterator<Item = LabelledTree>> = match (&lambda, &pi) {
                (Some(text), _) => {
                    let l = parse_integer_partition(text).map_err(|e| bad("--lambda", text, e))?;
                    if l.size() + 1 != n {
                        return Err(bad("--lambda", text, format!("parts must sum to n - 1 = {}", n - 1)));
                    }
                    let owned: Vec<LabelledTree> = trees_with_lambda(&l, n)
                        .map_err(|e| bad("--n", &n.to_string(), e))?
                        .collect();
                    Box::new(owned.into_iter())
                }
                (None, Some(text)) => {
                    let p = read_partition("--pi", text, n)?;
                    let owned: Vec<LabelledTree> = trees_with_phi(&p)
                        .map_err(|e| bad("--n", &n.to_string(), e))?
                        .collect();
                    Box::new(owned.into_iter())
                }
                (None, None) => Box::new(all_trees(n)),
            };
            for (idx, t) in trees.enumerate() {
                if json {
                    emit_json(out, &t)?;
                } else {
                    if idx > 0 {
                        emit(out, "\n")?;
                    }
                    emit(out, &t.to_text())?;
                }
            }
            Ok(())
        }
        Command::Omega { pi, n, format } => {
            let p = read_partition("--pi", &pi, n)?;
            let words = omega_set(&p).map_err(|e| bad("--n", &n.to_string(), e))?;
            let format = match format {
                _ if json => OmegaFormat::Json,
                Some(f) => f,
                None if p.len() == 3 => OmegaFormat::Grid,
                None => OmegaFormat::Json,
            };
            match format {
                OmegaFormat::Grid => {
                    let grid = render_grid(n, &words)
                        .map_err(|_| bad("--pi", &pi, "grid format needs exactly three blocks"))?;
                    emit(out, &grid)
                }
                OmegaFormat::Json => emit_json(out, &words_json(&words)),
            }
        }
        Command::Swap { tree, i } => {
            let t = read_tree(&tree)?;
            let s = swap_involution(&t, i).map_err(|e| bad("--i", &i.to_string(), e))?;
            write_tree(out, &s, json)
        }
        Command::Verify { n, suite } => {
            let suites: Vec<Suite> = match suite {
                SuiteChoice::All => Suite::ALL.to_vec(),
                SuiteChoice::One(s) => vec![s],
            };
            let mut reports = Vec::new();
            for s in suites {
                reports.push(run_suite(s, n).map_err(|e| bad("--n", &n.to_string(), e))?);
            }
            if json {
                emit_json(out, &reports)?;
            } else {
                for r in &reports {
                    emit(out, &report_text(r))?;
                }
            }
            if reports.iter().all(SuiteReport::passed) {
                Ok(())
            } else {
                Err(Failure("verification failed".into()))
            }
        }
    }
}

fn words_json(words: &BTreeSet<CodeWord>) -> Vec<&[usize]> {
    words.iter().map(CodeWord::symbols).collect()
}

fn write_word(out: &mut impl Write, word: &CodeWord, json: bool) -> Outcome {
    if json {
        emit_json(out, word)
    } else {
        emit(out, &format!("{word}\n"))
    }
}

fn write_tree(out: &mut impl Write, tree: &LabelledTree, json: bool) -> Outcome {
    if json {
        emit_json(out, tree)
    } else {
        emit(out, &tree.to_text())
    }
}

fn report_text(report: &SuiteReport) -> String {
    let mut s = String::new();
    for check in &report.checks {
        let mark = if check.passed { "ok  " } else { "FAIL" };
        s.push_str(&format!("{mark} {}: {} ({})\n", report.suite, check.name, check.detail));
        for w in &check.witnesses {
            s.push_str(&format!("       witness: {w}\n"));
        }
    }
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let flushed = out.flush();
    match result {
        Ok(()) if flushed.is_ok() => ExitCode::SUCCESS,
        Ok(()) => ExitCode::FAILURE,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
