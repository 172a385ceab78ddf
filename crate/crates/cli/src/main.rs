mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use credal::dominance::{DominanceReport, PairTest, DEFAULT_CAP};
use credal::format::{self, FormatError, Model, QueryFile};
use credal::network::Evidence;
use serde::Serialize;

/// Credal-dominance classification over Bayesian and credal networks.
#[derive(Parser)]
#[command(name = "credal", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Undominated classes, dominance matrix and per-cutset products.
    Classify(QueryArgs),
    /// The dominance test for one ordered pair of classes, or every pair.
    Dominance {
        #[command(flatten)]
        query: QueryArgs,
        /// Ordered pair `A,B`: does class A dominate class B?
        #[arg(long)]
        pair: Option<String>,
    },
    /// Bounds on the class posterior over all completions of the missing nodes.
    Posterior(QueryArgs),
    /// Class posterior with the missing nodes summed out.
    Naive(QueryArgs),
    /// Parse and validate a network file.
    Validate {
        #[arg(long)]
        net: PathBuf,
        #[arg(long, value_enum, default_value_t = Output::Table)]
        output: Output,
    },
    /// Built-in worked examples.
    Demo {
        #[command(subcommand)]
        which: Demo,
    },
}

#[derive(Subcommand)]
enum Demo {
    /// The Asia network queries with and without T=t'.
    Asia {
        #[arg(long, value_enum, default_value_t = Output::Table)]
        output: Output,
    },
    /// Stick or switch after the host opens door 2.
    Montyhall {
        /// Prize value.
        #[arg(long, default_value_t = 1.0)]
        delta: f64,
        #[arg(long, value_enum, default_value_t = Output::Table)]
        output: Output,
    },
}

#[derive(Args)]
struct QueryArgs {
    /// Network file.
    #[arg(long)]
    net: PathBuf,
    /// Query file; its fields fill in anything not given on the command line.
    #[arg(long)]
    query: Option<PathBuf>,
    /// Class node name.
    #[arg(long)]
    class: Option<String>,
    /// Observations as `NODE=STATE,...`.
    #[arg(long)]
    evidence: Option<String>,
    /// Attach posterior bounds to a classification report.
    #[arg(long)]
    bounds: bool,
    /// Attach the naive posterior to a classification report.
    #[arg(long)]
    naive: bool,
    /// Maximum number of cutset assignments or completions to enumerate.
    #[arg(long)]
    cap: Option<u128>,
    #[arg(long, value_enum, default_value_t = Output::Table)]
    output: Output,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Table,
}

/// A failure and the exit code it maps to.
#[derive(Debug)]
enum Failure {
    Parse(String),
    Invalid(String),
    Cap(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Invalid(_) => 3,
            Failure::Cap(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Invalid(m) | Failure::Cap(m) => m,
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Syntax { .. } => Failure::Parse(e.to_string()),
            FormatError::Invalid { .. } => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<credal::Error> for Failure {
    fn from(e: credal::Error) -> Self {
        match e {
            credal::Error::CapExceeded { .. } => Failure::Cap(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Classify(args) => {
            let q = Query::load(&args)?;
            let report = match &q.model {
                Model::Bayesian(net) => net.report(q.class, &q.evidence, q.bounds, q.naive, q.cap)?,
                Model::Credal(net) => {
                    if q.bounds || q.naive {
                        return Err(bayesian_only("posterior summaries"));
                    }
                    net.classify(q.class, &q.evidence, q.cap)?
                }
            };
            emit(args.output, &report, render::report)
        }
        Command::Dominance { query, pair } => {
            let q = Query::load(&query)?;
            let tests = match pair {
                Some(pair) => {
                    let (a, b) = q.pair(&pair)?;
                    vec![q.pair_test(a, b)?]
                }
                None => q.classify()?.tests,
            };
            emit(query.output, tests.as_slice(), render::tests)
        }
        Command::Posterior(args) => {
            let q = Query::load(&args)?;
            let net = q.bayesian("posterior bounds")?;
            let bounds = net.posterior_bounds(q.class, &q.evidence, q.cap)?;
            emit(args.output, bounds.as_slice(), render::bounds)
        }
        Command::Naive(args) => {
            let q = Query::load(&args)?;
            let net = q.bayesian("the naive posterior")?;
            let points = net.naive_posterior(q.class, &q.evidence, q.cap)?;
            emit(args.output, points.as_slice(), render::points)
        }
        Command::Validate { net, output } => {
            let model = load_network(&net)?;
            emit(output, &Summary::of(&model), render::summary)
        }
        Command::Demo { which: Demo::Asia { output } } => {
            let net = format::asia();
            let s = net.structure();
            let class = s.node("C")?;
            let mut reports = Vec::new();
            for pairs in [&[("L", "l'"), ("S", "s'")][..], &[("L", "l'"), ("S", "s'"), ("T", "t'")]] {
                let evidence = s.evidence(pairs)?;
                reports.push(net.report(class, &evidence, true, true, DEFAULT_CAP)?);
            }
            emit(output, &reports, |rs| rs.iter().map(render::report).collect::<Vec<_>>().join("\n"))
        }
        Command::Demo { which: Demo::Montyhall { delta, output } } => {
            if !(delta.is_finite() && delta > 0.0) {
                return Err(Failure::Invalid(format!("delta must be positive, got {delta}")));
            }
            emit(output, &monty::run(delta)?, render::monty)
        }
    }
}

fn emit<T: Serialize + ?Sized>(output: Output, value: &T, table: impl Fn(&T) -> String) -> Outcome {
    Ok(match output {
        Output::Json => {
            let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
            text.push('\n');
            text
        }
        Output::Table => table(value),
    })
}

fn bayesian_only(what: &str) -> Failure {
    Failure::Invalid(format!("{what}: only available for Bayesian networks"))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn load_network(path: &Path) -> Result<Model, Failure> {
    format::parse_network(&read(path)?).map_err(|e| match Failure::from(e) {
        Failure::Parse(m) => Failure::Parse(format!("{}: {m}", path.display())),
        Failure::Invalid(m) => Failure::Invalid(format!("{}: {m}", path.display())),
        other => other,
    })
}

/// Parses `K=V,K=V`.
fn parse_evidence(text: &str) -> Result<Vec<(String, String)>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|item| !item.is_empty())
        .map(|item| match item.split_once('=') {
            Some((k, v)) if !k.trim().is_empty() && !v.trim().is_empty() => {
                Ok((k.trim().to_string(), v.trim().to_string()))
            }
            _ => Err(Failure::Parse(format!("malformed evidence item `{item}`, expected NODE=STATE"))),
        })
        .collect()
}

struct Query {
    model: Model,
    class: usize,
    evidence: Evidence,
    bounds: bool,
    naive: bool,
    cap: u128,
}

impl Query {
    fn load(args: &QueryArgs) -> Result<Self, Failure> {
        let model = load_network(&args.net)?;
        let mut file = match &args.query {
            Some(path) => format::parse_query(&read(path)?).map_err(|e| match Failure::from(e) {
                Failure::Parse(m) => Failure::Parse(format!("{}: {m}", path.display())),
                other => other,
            })?,
            None => QueryFile {
                class: String::new(),
                evidence: Default::default(),
                bounds: false,
                naive: false,
                cap: DEFAULT_CAP,
            },
        };
        if let Some(class) = &args.class {
            file.class = class.clone();
        }
        if file.class.is_empty() {
            return Err(Failure::Invalid("no class node given; use --class or --query".into()));
        }
        if let Some(text) = &args.evidence {
            file.evidence.extend(parse_evidence(text)?);
        }
        if let Some(cap) = args.cap {
            file.cap = cap;
        }
        let (class, evidence) = file.resolve(model.structure())?;
        Ok(Self {
            model,
            class,
            evidence,
            bounds: file.bounds || args.bounds,
            naive: file.naive || args.naive,
            cap: file.cap,
        })
    }

    fn bayesian(&self, what: &str) -> Result<&credal::BayesNet, Failure> {
        match &self.model {
            Model::Bayesian(net) => Ok(net),
            Model::Credal(_) => Err(bayesian_only(what)),
        }
    }

    fn classify(&self) -> Result<DominanceReport, Failure> {
        Ok(match &self.model {
            Model::Bayesian(net) => net.classify(self.class, &self.evidence, self.cap)?,
            Model::Credal(net) => net.classify(self.class, &self.evidence, self.cap)?,
        })
    }

    fn pair_test(&self, a: usize, b: usize) -> Result<PairTest, Failure> {
        Ok(match &self.model {
            Model::Bayesian(net) => net.credal_dominance(self.class, a, b, &self.evidence, self.cap)?,
            Model::Credal(net) => net.credal_dominance(self.class, a, b, &self.evidence, self.cap)?,
        })
    }

    fn pair(&self, text: &str) -> Result<(usize, usize), Failure> {
        let space = self.model.structure().space(self.class);
        let Some((a, b)) = text.split_once(',') else {
            return Err(Failure::Parse(format!("malformed pair `{text}`, expected A,B")));
        };
        let (a, b) = (space.index_of(a.trim())?, space.index_of(b.trim())?);
        if a == b {
            return Err(Failure::Invalid("a pair needs two distinct classes".into()));
        }
        Ok((a, b))
    }
}

#[derive(Serialize)]
struct Summary {
    kind: &'static str,
    nodes: Vec<NodeSummary>,
    arcs: usize,
    rows: usize,
}

#[derive(Serialize)]
struct NodeSummary {
    name: String,
    states: usize,
    parents: Vec<String>,
}

impl Summary {
    fn of(model: &Model) -> Self {
        let s = model.structure();
        let nodes: Vec<NodeSummary> = (0..s.len())
            .map(|v| NodeSummary {
                name: s.name(v).to_string(),
                states: s.space(v).len(),
                parents: s.dag().parents(v).iter().map(|&p| s.name(p).to_string()).collect(),
            })
            .collect();
        Self {
            kind: match model {
                Model::Bayesian(_) => "bayesian",
                Model::Credal(_) => "credal",
            },
            arcs: nodes.iter().map(|n| n.parents.len()).sum(),
            rows: (0..s.len()).map(|v| s.row_count(v)).sum(),
            nodes,
        }
    }
}

mod monty {
    use credal::conditioning::regular_extension_obs;
    use credal::observation::MultiValuedMap;
    use credal::{CredalSet, FiniteSpace, Gamble, MassFunction};
    use serde::Serialize;

    use super::Failure;

    #[derive(Serialize)]
    pub struct MontyReport {
        pub delta: f64,
        pub observation: String,
        pub switch_over_stick: f64,
        pub stick_over_switch: f64,
        pub verdict: String,
        pub extended_switch_over_stick: f64,
        pub extended_stick_over_switch: f64,
        pub extended_verdict: String,
    }

    fn verdict(switch: f64, stick: f64) -> String {
        match (switch > 0.0, stick > 0.0) {
            (true, _) => "switch is preferred".into(),
            (_, true) => "stick is preferred".into(),
            _ => "incomparable".into(),
        }
    }

    /// The contestant picked door 1 and the host opened door 2. In the
    /// extended game the host may also open no door at all.
    pub fn run(delta: f64) -> Result<MontyReport, Failure> {
        let doors = FiniteSpace::new("car", ["1", "2", "3"])?;
        let classic = MultiValuedMap::from_labels(
            doors.clone(),
            FiniteSpace::new("opened", ["2", "3"])?,
            &[("1", &["2", "3"]), ("2", &["3"]), ("3", &["2"])],
        )?;
        let extended = MultiValuedMap::from_labels(
            doors.clone(),
            FiniteSpace::new("opened", ["none", "2", "3"])?,
            &[("1", &["none", "2", "3"]), ("2", &["none", "3"]), ("3", &["none", "2"])],
        )?;
        let prior = CredalSet::linear(MassFunction::uniform(doors.clone()));
        // Switching wins Δ when the car is behind door 3, sticking when behind door 1.
        let switch_minus_stick = Gamble::new(doors, vec![-delta, 0.0, delta])?;
        let stick_minus_switch = -&switch_minus_stick;
        let lower = |map: &MultiValuedMap, f: &Gamble| -> Result<f64, Failure> {
            let o = map.observations().index_of("2")?;
            Ok(regular_extension_obs(&prior, map, &o, f)?.value)
        };
        let (a, b) = (lower(&classic, &switch_minus_stick)?, lower(&classic, &stick_minus_switch)?);
        let (c, d) = (lower(&extended, &switch_minus_stick)?, lower(&extended, &stick_minus_switch)?);
        Ok(MontyReport {
            delta,
            observation: "door 2 opened".into(),
            switch_over_stick: a,
            stick_over_switch: b,
            verdict: verdict(a, b),
            extended_switch_over_stick: c,
            extended_stick_over_switch: d,
            extended_verdict: verdict(c, d),
        })
    }
}
