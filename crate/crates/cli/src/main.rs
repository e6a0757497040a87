use clap::{Parser, Subcommand, ValueEnum};
use normnet::generate::{default_labels, random_network, NetworkKind};
use normnet::sequence::{
    apply_sequence, check_n, construct_sequence, min_sequence, sequence_to_network, PickSequence, SearchMode,
    SearchOutcome,
};
use normnet::{
    classify, display_set, displays, normalize_pair, parse_networks, parse_trees, reconstruct, serialize_network,
    serialize_tree, PhyloNetwork, PhyloTree, ReconstructionOutcome, Verdict,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "normnet", version, about = "Normal phylogenetic networks from trees and cherry-picking sequences")]
struct Cli {
    /// Write output here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a network and report its class.
    Validate {
        #[arg(long)]
        network: PathBuf,
    },
    /// Print every tree displayed by a binary tree-child network.
    DisplaySet {
        #[arg(long)]
        network: PathBuf,
    },
    /// Check whether a network displays each tree of a file.
    Displays {
        #[arg(long)]
        network: PathBuf,
        #[arg(long)]
        tree: PathBuf,
    },
    /// Rebuild the binary normal network whose display set is the input.
    Reconstruct {
        #[arg(long)]
        trees: PathBuf,
    },
    /// Check a cherry-picking sequence against a tree set.
    CheckSeq {
        #[arg(long)]
        trees: PathBuf,
        #[arg(long)]
        seq: PathBuf,
    },
    /// Find a minimum-weight cherry-picking sequence.
    MinSeq {
        #[arg(long)]
        trees: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Largest weight to search.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Read a cherry-picking sequence off a binary tree-child network.
    ConstructSeq {
        #[arg(long)]
        network: PathBuf,
    },
    /// Build a network displaying the trees from a sequence.
    SeqToNetwork {
        #[arg(long)]
        trees: PathBuf,
        #[arg(long)]
        seq: PathBuf,
    },
    /// Build a binary normal network displaying two trees.
    NormalizePair {
        #[arg(long)]
        trees: PathBuf,
    },
    /// Generate random networks.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        leaves: usize,
        #[arg(long)]
        rets: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Normal,
    TreeChild,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Normal,
    TreeChild,
}

/// Result of a subcommand: the text to print and whether the verdict was
/// positive.
struct Report {
    text: String,
    positive: bool,
}

impl Report {
    fn yes(text: String) -> Self {
        Report { text, positive: true }
    }

    fn no(text: String) -> Self {
        Report { text, positive: false }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Input { path: String, source: normnet::Error },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] normnet::Error),
}

fn read(path: &Path) -> Result<String, CliError> {
    let io = |source| CliError::Io { path: path.display().to_string(), source };
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(io)
}

fn input<T>(path: &Path, parse: impl FnOnce(&str) -> normnet::Result<T>) -> Result<T, CliError> {
    let text = read(path)?;
    parse(&text).map_err(|source| CliError::Input { path: path.display().to_string(), source })
}

fn one_network(path: &Path) -> Result<PhyloNetwork, CliError> {
    let mut nets = input(path, parse_networks)?;
    if nets.len() != 1 {
        return Err(CliError::Usage(format!("{}: expected one network, found {}", path.display(), nets.len())));
    }
    Ok(nets.remove(0))
}

fn lines<I: IntoIterator<Item = String>>(items: I) -> String {
    items.into_iter().fold(String::new(), |mut s, l| {
        s.push_str(&l);
        s.push('\n');
        s
    })
}

fn verdict_tag(v: Verdict) -> &'static str {
    match v {
        Verdict::BadCardinality => "bad-cardinality",
        Verdict::NoStepApplies => "no-step-applies",
        Verdict::SubproblemFailed => "subproblem-failed",
        Verdict::ConstructedNetworkNotNormal => "constructed-network-not-normal",
    }
}

fn run(command: Command) -> Result<Report, CliError> {
    Ok(match command {
        Command::Validate { network } => {
            let net = one_network(&network)?;
            let c = classify(&net);
            let mut out = String::new();
            let _ = writeln!(out, "leaves: {}", net.leaf_count());
            let _ = writeln!(out, "reticulations: {}", c.reticulation_count);
            let _ = writeln!(out, "hybridisation number: {}", c.hybridisation_number);
            let _ = writeln!(out, "binary: {}", c.is_binary);
            let _ = writeln!(out, "tree-child: {}", c.is_tree_child);
            let _ = writeln!(out, "shortcuts: {}", c.shortcuts.len());
            let _ = writeln!(out, "normal: {}", c.is_normal);
            Report::yes(out)
        }
        Command::DisplaySet { network } => {
            let ds = display_set(&one_network(&network)?)?;
            Report::yes(lines(ds.trees.iter().map(serialize_tree)))
        }
        Command::Displays { network, tree } => {
            let net = one_network(&network)?;
            let trees = input(&tree, parse_trees)?;
            let mut all = true;
            let mut out = Vec::new();
            for t in &trees {
                let shown = displays(&net, t)?;
                all &= shown;
                out.push(format!("{}\t{}", serialize_tree(t), if shown { "displayed" } else { "not displayed" }));
            }
            Report { text: lines(out), positive: all }
        }
        Command::Reconstruct { trees } => match reconstruct(&input(&trees, parse_trees)?)? {
            ReconstructionOutcome::Network(n) => Report::yes(lines([serialize_network(&n)])),
            ReconstructionOutcome::NotTightlyNormalCompatible(v) => {
                Report::no(format!("not tightly normal compatible: {}\n", verdict_tag(v)))
            }
        },
        Command::CheckSeq { trees, seq } => {
            let p = input(&trees, parse_trees)?;
            let s = input(&seq, PickSequence::parse)?;
            check_sequence(&p, &s)?
        }
        Command::MinSeq { trees, mode, budget } => {
            let p = input(&trees, parse_trees)?;
            let (mode, name) = match mode {
                Mode::Normal => (SearchMode::Normal, "normal"),
                Mode::TreeChild => (SearchMode::TreeChild, "tree-child"),
            };
            match min_sequence(&p, mode, budget)? {
                SearchOutcome::Found { sequence, weight } => {
                    Report::yes(format!("# weight {weight}\n{}", sequence.to_text()))
                }
                SearchOutcome::NoSequence => Report::no(format!("no {name} cherry-picking sequence\n")),
                SearchOutcome::BudgetExhausted { budget } => {
                    Report::no(format!("no {name} cherry-picking sequence of weight at most {budget}\n"))
                }
            }
        }
        Command::ConstructSeq { network } => Report::yes(construct_sequence(&one_network(&network)?)?.to_text()),
        Command::SeqToNetwork { trees, seq } => {
            let p = input(&trees, parse_trees)?;
            let s = input(&seq, PickSequence::parse)?;
            Report::yes(lines([serialize_network(&sequence_to_network(&p, &s)?)]))
        }
        Command::NormalizePair { trees } => {
            let p = input(&trees, parse_trees)?;
            let [a, b] = p.as_slice() else {
                return Err(CliError::Usage(format!("{}: expected two trees, found {}", trees.display(), p.len())));
            };
            Report::yes(lines([serialize_network(&normalize_pair(a, b)?)]))
        }
        Command::Gen { kind, leaves, rets, seed, count } => {
            let kind = match kind {
                Kind::Normal => NetworkKind::Normal,
                Kind::TreeChild => NetworkKind::TreeChild,
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let labels = default_labels(leaves);
            let nets = (0..count)
                .map(|_| random_network(kind, &labels, rets, &mut rng).map(|n| serialize_network(&n)))
                .collect::<normnet::Result<Vec<_>>>()?;
            Report::yes(lines(nets))
        }
    })
}

fn check_sequence(p: &[PhyloTree], s: &PickSequence) -> Result<Report, CliError> {
    let applied = apply_sequence(p, s)?;
    let tc = s.check_tc();
    let violation = check_n(s)?;
    let mut out = String::new();
    match &applied.failure {
        None => {
            let _ = writeln!(out, "cherry-picking sequence: yes");
        }
        Some(why) => {
            let _ = writeln!(out, "cherry-picking sequence: no ({why})");
        }
    }
    let _ = writeln!(out, "weight: {}", applied.weight);
    let _ = writeln!(out, "tree-child (TC): {}", if tc { "yes" } else { "no" });
    match &violation {
        None => {
            let _ = writeln!(out, "normal (N): yes");
        }
        Some(v) => {
            let _ = writeln!(out, "normal (N): no, substring ({}, {}) is a shortcut sequence", v.i, v.j);
        }
    }
    Ok(Report { text: out, positive: applied.is_cps && tc && violation.is_none() })
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io { path: p.display().to_string(), source }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli.command).and_then(|r| emit(cli.output.as_deref(), &r.text).map(|_| r.positive));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
