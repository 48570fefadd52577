//! Command-line front end. Every subcommand reads permutations in the plain
//! text format of [`nestedint::text`] from a file or stdin and writes to the
//! given output stream.
//!
//! Intervals are printed as `lo hi` in renumbered space, where the first
//! permutation is `1 2 .. n`. `--original-labels` prints the input labels of
//! the two ends instead, with `<` and `>` standing for the sentinels added
//! by `--frame`.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nestedint::conserved_tree::irreducible_conserved_intervals;
use nestedint::generate::{generate, generate_signed, Model};
use nestedint::oracle::{self, OracleResult};
use nestedint::pqtree::strong_common_intervals;
use nestedint::text::{format_rows, parse_permutations};
use nestedint::{
    count_b_nested_common, count_b_nested_conserved, enumerate_b_nested_common, enumerate_b_nested_conserved,
    ConservedTree, Interval, MinSize, NestedReport, PQTree, PermutationSet,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Invalid(#[from] nestedint::Error),
    #[error("{0}")]
    Usage(String),
    #[error("oracle mismatch: {0}")]
    Mismatch(String),
    #[error("{what}: {source}")]
    Io { what: String, source: io::Error },
}

impl CliError {
    /// 1 for invalid input, 2 for an oracle mismatch, 3 for I/O failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) | CliError::Usage(_) => 1,
            CliError::Mismatch(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}

fn output_error(source: io::Error) -> CliError {
    CliError::Io {
        what: "writing output".to_owned(),
        source,
    }
}

#[derive(Debug, Parser)]
#[command(name = "nestedint", version, about = "b-nested common and conserved intervals of permutations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the PQ-tree of common intervals.
    CommonTree {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// Print the tree of strong conserved intervals with frontier sets.
    ConservedTree {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
        /// Wrap every permutation in sentinels `+0 .. +(n+1)`.
        #[arg(long)]
        frame: bool,
        /// Also print the bracket expression of each permutation.
        #[arg(long)]
        brackets: bool,
    },
    /// List the b-nested intervals, one `lo hi` per line.
    Enumerate(Query),
    /// Count the b-nested intervals without listing them.
    Count(Query),
    /// List the b-nested intervals by brute force.
    Oracle {
        #[command(flatten)]
        query: Query,
        /// Print the symmetric difference with the fast path instead:
        /// `< lo hi` for oracle-only, `> lo hi` for fast-only intervals.
        #[arg(long)]
        diff: bool,
        #[arg(long, default_value_t = oracle::DEFAULT_BOUND)]
        max_n: usize,
    },
    /// Compare trees, enumerations and counts against the oracle.
    OracleCheck {
        #[command(flatten)]
        query: Query,
        #[arg(long, default_value_t = oracle::DEFAULT_BOUND)]
        max_n: usize,
    },
    /// Print a random instance.
    Gen(GenArgs),
    /// Time builds and enumerations on planted instances, as CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct Input {
    /// Permutation file; stdin when absent or `-`.
    pub file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Common,
    Conserved,
}

#[derive(Debug, Args)]
pub struct Query {
    #[command(flatten)]
    pub input: Input,
    #[arg(long, value_enum, default_value_t = Mode::Common)]
    pub mode: Mode,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub b: u64,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub min_size: u8,
    /// Wrap every permutation in sentinels `+0 .. +(n+1)`.
    #[arg(long)]
    pub frame: bool,
    /// Order output by `(lo, hi)` instead of tree order.
    #[arg(long)]
    pub sort: bool,
    #[arg(long)]
    pub original_labels: bool,
    /// Print only the number of intervals.
    #[arg(long)]
    pub count_only: bool,
}

impl Query {
    fn b(&self) -> usize {
        self.b as usize
    }

    fn min_size(&self) -> MinSize {
        MinSize::try_from(self.min_size as usize).expect("range checked by clap")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Uniform,
    Planted,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = ModelArg::Uniform)]
    pub model: ModelArg,
    /// Planted levels of strong intervals.
    #[arg(long, default_value_t = 2)]
    pub depth: usize,
    /// Blocks per planted level.
    #[arg(long, default_value_t = 4)]
    pub span: usize,
    /// Framed signed permutations made by random signed reversals.
    #[arg(long, conflicts_with = "model")]
    pub signed: bool,
    #[arg(long, requires = "signed")]
    pub reversals: Option<usize>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Instance sizes.
    #[arg(long, value_delimiter = ',', default_values_t = [1000usize, 10000, 100000])]
    pub n: Vec<usize>,
    #[arg(long, default_value_t = 4)]
    pub k: usize,
    #[arg(long, value_delimiter = ',', default_values_t = [2usize])]
    pub b: Vec<usize>,
    #[arg(long, value_enum, default_value_t = Mode::Common)]
    pub mode: Mode,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Runs per row; the fastest one is reported.
    #[arg(long, default_value_t = 3)]
    pub repeat: usize,
}

pub fn run(cli: Cli, stdin: impl Read, out: &mut impl Write) -> Result<(), CliError> {
    let mut stdin = stdin;
    let text = match &cli.command {
        Command::CommonTree { input, .. } | Command::ConservedTree { input, .. } => read_input(input, &mut stdin)?,
        Command::Enumerate(q) | Command::Count(q) => read_input(&q.input, &mut stdin)?,
        Command::Oracle { query, .. } | Command::OracleCheck { query, .. } => read_input(&query.input, &mut stdin)?,
        Command::Gen(_) | Command::Bench(_) => String::new(),
    };
    let report = match cli.command {
        Command::CommonTree { json, .. } => {
            let tree = PQTree::build(&load(&text, false)?);
            if json {
                to_json(&tree.dump())
            } else {
                tree.render()
            }
        }
        Command::ConservedTree {
            json, frame, brackets, ..
        } => {
            let set = load(&text, frame)?;
            let tree = ConservedTree::build(&set)?;
            let mut s = if json { to_json(&tree.dump()) } else { tree.render() };
            if brackets {
                for p in set.perms() {
                    s.push_str(&tree.bracket_expression(p));
                    s.push('\n');
                }
            }
            s
        }
        Command::Enumerate(q) => {
            let set = load(&text, q.frame)?;
            let report = fast_enumeration(&set, &q)?;
            render_intervals(&set, &q, report.intervals)
        }
        Command::Count(q) => {
            let set = load(&text, q.frame)?;
            format!("{}\n", fast_count(&set, &q)?)
        }
        Command::Oracle { query, diff, max_n } => {
            let set = load(&text, query.frame)?;
            let truth = oracle_intervals(&set, &query, max_n)?;
            if diff {
                let fast: BTreeSet<Interval> = fast_enumeration(&set, &query)?.intervals.into_iter().collect();
                let lines = symmetric_difference(&set, &query, &truth, &fast);
                if !lines.is_empty() {
                    write_out(out, &lines)?;
                    return Err(CliError::Mismatch(format!(
                        "{} intervals differ",
                        truth.symmetric_difference(&fast).count()
                    )));
                }
                lines
            } else {
                render_intervals(&set, &query, truth.into_iter().collect())
            }
        }
        Command::OracleCheck { query, max_n } => {
            let set = load(&text, query.frame)?;
            let problems = oracle_check(&set, &query, max_n)?;
            if !problems.is_empty() {
                write_out(out, &problems.join("\n"))?;
                writeln!(out).map_err(output_error)?;
                return Err(CliError::Mismatch(format!("{} checks failed", problems.len())));
            }
            "ok\n".to_owned()
        }
        Command::Gen(args) => format_rows(&gen_rows(&args)),
        Command::Bench(args) => bench(&args)?,
    };
    write_out(out, &report)
}

fn write_out(out: &mut impl Write, s: &str) -> Result<(), CliError> {
    out.write_all(s.as_bytes()).map_err(output_error)
}

fn read_input(input: &Input, stdin: &mut impl Read) -> Result<String, CliError> {
    let mut text = String::new();
    match input.file.as_deref() {
        Some(path) if path.as_os_str() != "-" => {
            text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                what: path.display().to_string(),
                source,
            })?;
        }
        _ => {
            stdin.read_to_string(&mut text).map_err(|source| CliError::Io {
                what: "stdin".to_owned(),
                source,
            })?;
        }
    }
    Ok(text)
}

fn load(text: &str, frame: bool) -> Result<PermutationSet, CliError> {
    let set = PermutationSet::normalize(&parse_permutations(text)?)?;
    Ok(if frame { set.framed() } else { set })
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("tree dumps serialize");
    s.push('\n');
    s
}

fn conserved_tree(set: &PermutationSet) -> Result<ConservedTree, CliError> {
    set.validate_conserved_frame()
        .map_err(|e| CliError::Usage(format!("{e}; conserved mode needs +1 .. +n framing, try --frame")))?;
    Ok(ConservedTree::build(set)?)
}

fn fast_enumeration(set: &PermutationSet, q: &Query) -> Result<NestedReport, CliError> {
    Ok(match q.mode {
        Mode::Common => enumerate_b_nested_common(&PQTree::build(set), q.b(), q.min_size()),
        Mode::Conserved => enumerate_b_nested_conserved(&conserved_tree(set)?, q.b(), q.min_size()),
    })
}

fn fast_count(set: &PermutationSet, q: &Query) -> Result<u64, CliError> {
    Ok(match q.mode {
        Mode::Common => count_b_nested_common(&PQTree::build(set), q.b(), q.min_size()),
        Mode::Conserved => count_b_nested_conserved(&conserved_tree(set)?, q.b(), q.min_size()),
    })
}

fn oracle_intervals(set: &PermutationSet, q: &Query, max_n: usize) -> Result<BTreeSet<Interval>, CliError> {
    let family = match q.mode {
        Mode::Common => oracle::all_common(set, max_n)?,
        Mode::Conserved => {
            set.validate_conserved_frame()
                .map_err(|e| CliError::Usage(format!("{e}; conserved mode needs +1 .. +n framing, try --frame")))?;
            oracle::all_conserved(set, max_n)?
        }
    };
    let min_size = q.min_size();
    Ok(oracle::all_b_nested(&family, q.b())
        .into_iter()
        .filter(|iv| min_size.admits(*iv))
        .collect())
}

fn label(set: &PermutationSet, x: usize) -> String {
    match set.original_label(x) {
        Some(l) => l.to_string(),
        None if x == 1 => "<".to_owned(),
        None => ">".to_owned(),
    }
}

fn format_interval(set: &PermutationSet, original: bool, iv: Interval) -> String {
    if original {
        format!("{} {}", label(set, iv.lo), label(set, iv.hi))
    } else {
        format!("{} {}", iv.lo, iv.hi)
    }
}

fn render_intervals(set: &PermutationSet, q: &Query, mut intervals: Vec<Interval>) -> String {
    if q.count_only {
        return format!("{}\n", intervals.len());
    }
    if q.sort {
        intervals.sort_unstable();
    }
    let mut s = String::new();
    for iv in intervals {
        s.push_str(&format_interval(set, q.original_labels, iv));
        s.push('\n');
    }
    s
}

fn symmetric_difference(
    set: &PermutationSet,
    q: &Query,
    truth: &BTreeSet<Interval>,
    fast: &BTreeSet<Interval>,
) -> String {
    let mut s = String::new();
    for iv in truth.difference(fast) {
        writeln!(s, "< {}", format_interval(set, q.original_labels, *iv)).unwrap();
    }
    for iv in fast.difference(truth) {
        writeln!(s, "> {}", format_interval(set, q.original_labels, *iv)).unwrap();
    }
    s
}

/// Every disagreement between the fast paths and the oracle, for both
/// minimum sizes.
fn oracle_check(set: &PermutationSet, q: &Query, max_n: usize) -> Result<Vec<String>, CliError> {
    let mut problems = Vec::new();
    let truth = OracleResult::compute(set, q.b(), max_n)?;
    let b = q.b();
    let mut check = |what: &str, ok: bool| {
        if !ok {
            problems.push(what.to_owned());
        }
    };
    match q.mode {
        Mode::Common => {
            let tree = PQTree::build(set);
            let strong: BTreeSet<Interval> = strong_common_intervals(set).into_iter().collect();
            check("strong common intervals", strong == truth.strong_common);
            for min_size in [MinSize::One, MinSize::Two] {
                let want: BTreeSet<Interval> =
                    truth.b_nested_common.iter().filter(|iv| min_size.admits(**iv)).copied().collect();
                let report = enumerate_b_nested_common(&tree, b, min_size);
                let got: BTreeSet<Interval> = report.intervals.iter().copied().collect();
                check(&format!("enumeration, min size {min_size:?}"), got == want && got.len() == report.intervals.len());
                check(
                    &format!("count, min size {min_size:?}"),
                    count_b_nested_common(&tree, b, min_size) == want.len() as u64,
                );
            }
        }
        Mode::Conserved => {
            let tree = conserved_tree(set)?;
            let strong: BTreeSet<Interval> = tree.nodes().iter().map(|node| node.interval).collect();
            check("strong conserved intervals", strong == truth.strong_conserved);
            check(
                "frontier sets",
                tree.nodes().iter().all(|node| truth.frontier_sets.get(&node.interval) == Some(&node.frontiers)),
            );
            let irreducible: BTreeSet<Interval> = irreducible_conserved_intervals(set).into_iter().collect();
            check("irreducible intervals", irreducible == oracle::irreducible_of(&truth.conserved));
            for min_size in [MinSize::One, MinSize::Two] {
                let want: BTreeSet<Interval> =
                    truth.b_nested_conserved.iter().filter(|iv| min_size.admits(**iv)).copied().collect();
                let report = enumerate_b_nested_conserved(&tree, b, min_size);
                let got: BTreeSet<Interval> = report.intervals.iter().copied().collect();
                check(&format!("enumeration, min size {min_size:?}"), got == want && got.len() == report.intervals.len());
                check(
                    &format!("count, min size {min_size:?}"),
                    count_b_nested_conserved(&tree, b, min_size) == want.len() as u64,
                );
            }
        }
    }
    Ok(problems)
}

fn gen_rows(args: &GenArgs) -> Vec<Vec<i64>> {
    let (n, k) = (args.n as usize, args.k as usize);
    if args.signed {
        return generate_signed(n, k, args.seed, args.reversals.unwrap_or(n / 4 + 1));
    }
    let model = match args.model {
        ModelArg::Uniform => Model::Uniform,
        ModelArg::Planted => Model::PlantedNested {
            depth: args.depth,
            span: args.span,
        },
    };
    generate(n, k, args.seed, model)
}

/// One CSV row per `(n, b)`: `n,K,b,nocc,build_us,enum_us,scan_iters`.
fn bench(args: &BenchArgs) -> Result<String, CliError> {
    if args.k == 0 || args.repeat == 0 || args.n.contains(&0) || args.b.contains(&0) {
        return Err(CliError::Usage("n, k, b and repeat must be positive".to_owned()));
    }
    let mut s = String::from("n,K,b,nocc,build_us,enum_us,scan_iters\n");
    for &n in &args.n {
        let rows = match args.mode {
            Mode::Common => generate(n, args.k, args.seed, Model::PlantedNested { depth: 3, span: 5 }),
            Mode::Conserved => generate_signed(n, args.k, args.seed, n / 8 + 1),
        };
        let set = PermutationSet::from_signed(&rows)?;
        for &b in &args.b {
            let mut build_us = u128::MAX;
            let mut enum_us = u128::MAX;
            let mut last = None;
            for _ in 0..args.repeat {
                let started = Instant::now();
                let report = match args.mode {
                    Mode::Common => {
                        let tree = PQTree::build(&set);
                        build_us = build_us.min(started.elapsed().as_micros());
                        let started = Instant::now();
                        let report = enumerate_b_nested_common(&tree, b, MinSize::Two);
                        enum_us = enum_us.min(started.elapsed().as_micros());
                        report
                    }
                    Mode::Conserved => {
                        let tree = ConservedTree::build(&set)?;
                        build_us = build_us.min(started.elapsed().as_micros());
                        let started = Instant::now();
                        let report = enumerate_b_nested_conserved(&tree, b, MinSize::Two);
                        enum_us = enum_us.min(started.elapsed().as_micros());
                        report
                    }
                };
                last = Some(report);
            }
            let report = last.expect("repeat is positive");
            writeln!(
                s,
                "{n},{},{b},{},{build_us},{enum_us},{}",
                args.k,
                report.count(),
                report.scan_iterations
            )
            .unwrap();
        }
    }
    Ok(s)
}
