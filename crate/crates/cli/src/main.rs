//! `quiddity` command-line front-end.
//!
//! Every command prints one JSON document on stdout (CSV for
//! `classify --format csv`). Exit status: 0 on success, 1 on bad input,
//! 2 when a search budget ran out; partial results are still printed.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use quiddity::enumeration::{
    char0_witness, classify_irreducible, count_restricted, enumerate_quiddities, extend_word,
    max_irreducible_size, Alphabet, Budget, ClassificationReport, SearchOptions,
};
use quiddity::geometry::{
    decomposition_quiddity_mod2, enumerate_34_decompositions, enumerate_triangulations,
    triangulation_quiddity, verify_dissection_parities, Decomposition,
};
use quiddity::morphism::{apply_morphism, transfer_classification, MorphismSpec};
use quiddity::reduction::{is_reducible, is_reducible_bounded, BoundedOutcome, Reducibility, ReductionWitness};
use quiddity::ring::{format_element, parse_entries, parse_ring_spec};
use quiddity::{Error, RingSpec, Tuple, Verdict};
use serde_json::{json, Value};

const BUDGET_SECS_VAR: &str = "QUIDDITY_BUDGET_SECS";

#[derive(Parser)]
#[command(name = "quiddity", version, about = "Solve M_n(a_1, ..., a_n) = ±Id over rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct RingTuple {
    /// Ring, e.g. `Z/6`, `F4`, `P(2)`, `Z[100]`, `Z/2xZ/3`.
    #[arg(long)]
    ring: String,
    /// Comma-separated entries, e.g. `1,2,1,2` or `(1,0),(0,1),(1,0),(0,1)`.
    #[arg(long, allow_hyphen_values = true)]
    tuple: String,
}

#[derive(clap::Args)]
struct SearchArgs {
    /// Worker threads (output does not depend on this).
    #[arg(long)]
    workers: Option<usize>,
    /// Stop after this many search nodes.
    #[arg(long)]
    budget_nodes: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    /// Triangulations.
    Tri,
    /// Dissections into triangles and quadrilaterals.
    #[value(name = "34")]
    ThreeFour,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a tuple is a quiddity and report its sign.
    Verify(RingTuple),
    /// The sum (a_1 + b_m, a_2, ..., a_{n-1}, a_n + b_1, b_2, ..., b_{m-1}).
    Sum {
        #[arg(long)]
        ring: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Canonical representative under rotations and reversal.
    Canon(RingTuple),
    /// Search a decomposition t ~ c ⊕ b.
    Reduce {
        #[command(flatten)]
        input: RingTuple,
        /// Limit integer free entries to [-window, window].
        #[arg(long)]
        window: Option<i64>,
    },
    /// All quiddities of one size.
    Enumerate {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Irreducible classes for every size up to `--max`.
    Classify {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        max: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Largest irreducible size up to `--cap`.
    Lmax {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        cap: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Count quiddities over Z/4 with entries in {0,2} or {1,-1}.
    Count44 {
        /// `02` or `pm1`.
        #[arg(long)]
        alphabet: Alphabet,
        #[arg(long)]
        n: usize,
        /// Also extend this inner word to a quiddity.
        #[arg(long, allow_hyphen_values = true)]
        word: Option<String>,
    },
    /// Polygon dissections and their quiddities.
    Polygon {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "tri")]
        kind: Kind,
        /// One dissection, e.g. `1-3,3-5`; otherwise all are listed.
        #[arg(long)]
        diagonals: Option<String>,
        /// Write an SVG drawing of the given dissection.
        #[arg(long, requires = "diagonals")]
        svg: Option<PathBuf>,
        /// Compare dissection parities with the quiddities over Z/2.
        #[arg(long, conflicts_with = "diagonals")]
        check: bool,
    },
    /// Push a tuple or a classification report through a morphism.
    Transfer {
        /// `crt:2,3`, `crt-inv:2,3`, `frob`, `pset:2`, `pset-inv:2`, `mod:6`, `perm:1,0`, `id`.
        #[arg(long)]
        morphism: MorphismSpec,
        #[arg(long, requires = "tuple", conflicts_with = "report")]
        ring: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "ring")]
        tuple: Option<String>,
        /// Classification report JSON file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Candidate irreducible over a product with two integer factors.
    Witness0 {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        n: usize,
        /// Window for the bounded reduction search.
        #[arg(long, default_value_t = 12)]
        window: i64,
    },
}

/// What a command produced: stdout text and whether a budget ran out.
struct Output {
    text: String,
    exhausted: bool,
}

impl Output {
    fn json(v: Value) -> Self {
        Output {
            text: serde_json::to_string_pretty(&v).expect("json value serializes"),
            exhausted: false,
        }
    }
}

fn ring_tuple(input: &RingTuple) -> Result<Tuple, Error> {
    Tuple::parse(&parse_ring_spec(&input.ring)?, &input.tuple)
}

fn entries(t: &Tuple) -> Value {
    let s: Vec<String> = t.entries().iter().map(|e| format_element(t.ring(), e)).collect();
    json!(s)
}

fn sign_label(ring: &RingSpec, v: Verdict) -> Value {
    match v.sign() {
        None => Value::Null,
        Some(_) if ring.is_char_two() => json!("+1 (char-2 canonical)"),
        Some(s) => json!(s.to_string()),
    }
}

fn verdict_json(t: &Tuple) -> Result<Value, Error> {
    let v = t.verify()?;
    Ok(json!({
        "ring": t.ring().to_string(),
        "tuple": entries(t),
        "verdict": if v.is_quiddity() { "quiddity" } else { "not_quiddity" },
        "sign": sign_label(t.ring(), v),
    }))
}

fn witness_json(w: &ReductionWitness) -> Value {
    serde_json::from_str(&w.to_json()).expect("witness json is valid")
}

fn search_options(args: &SearchArgs) -> Result<SearchOptions, Error> {
    let mut opts = SearchOptions::default();
    if let Some(w) = args.workers {
        if w == 0 {
            return Err(Error::Unsupported("--workers must be positive".into()));
        }
        opts.workers = w;
    }
    opts.budget = Budget {
        max_nodes: args.budget_nodes,
        time_limit: budget_secs()?,
    };
    Ok(opts)
}

fn budget_secs() -> Result<Option<Duration>, Error> {
    match std::env::var(BUDGET_SECS_VAR) {
        Err(_) => Ok(None),
        Ok(s) => s
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite() && *v >= 0.0)
            .map(|v| Some(Duration::from_secs_f64(v)))
            .ok_or_else(|| Error::Unsupported(format!("{BUDGET_SECS_VAR}={s:?} is not a number of seconds"))),
    }
}

fn parse_diagonals(s: &str) -> Result<Vec<(usize, usize)>, Error> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let bad = || Error::InvalidDecomposition(format!("diagonal {p:?} is not of the form i-j"));
            let (i, j) = p.trim().split_once('-').ok_or_else(bad)?;
            Ok((i.trim().parse().map_err(|_| bad())?, j.trim().parse().map_err(|_| bad())?))
        })
        .collect()
}

fn decomposition_json(d: &Decomposition) -> Result<Value, Error> {
    let mut v: Value = serde_json::from_str(&d.to_json()).expect("decomposition json is valid");
    v["triangle_counts"] = json!(d.triangle_counts());
    v["parity"] = entries(&decomposition_quiddity_mod2(d)?);
    Ok(v)
}

fn classification_output(report: &ClassificationReport, format: Format) -> Output {
    Output {
        text: match format {
            Format::Json => report.to_json(),
            Format::Csv => report.to_csv(),
        },
        exhausted: report.budget.exhausted,
    }
}

fn run(command: Command) -> Result<Output, Error> {
    Ok(match command {
        Command::Verify(input) => Output::json(verdict_json(&ring_tuple(&input)?)?),
        Command::Sum { ring, a, b } => {
            let ring = parse_ring_spec(&ring)?;
            let a = Tuple::parse(&ring, &a)?;
            let b = Tuple::parse(&ring, &b)?;
            let mut v = verdict_json(&a.oplus(&b)?)?;
            v["a"] = json!(a.verify()?.sign().map(|s| s.to_string()));
            v["b"] = json!(b.verify()?.sign().map(|s| s.to_string()));
            Output::json(v)
        }
        Command::Canon(input) => {
            let t = ring_tuple(&input)?;
            let (_, op) = quiddity::quiddity::canonical_of(t.entries());
            Output::json(json!({
                "ring": t.ring().to_string(),
                "canonical": entries(&t.canonical_form()),
                "op": op,
            }))
        }
        Command::Reduce { input, window } => {
            let t = ring_tuple(&input)?;
            let (outcome, witness) = match window {
                None => match is_reducible(&t)? {
                    Reducibility::Conventional => ("conventional", None),
                    Reducibility::Reducible(w) => ("reducible", Some(w)),
                    Reducibility::Irreducible => ("irreducible", None),
                },
                Some(window) => match is_reducible_bounded(&t, window)?.outcome {
                    BoundedOutcome::Conventional => ("conventional", None),
                    BoundedOutcome::Reducible(w) => ("reducible", Some(w)),
                    BoundedOutcome::NoWitnessWithinBound => ("no_witness_within_bound", None),
                },
            };
            Output::json(json!({
                "ring": t.ring().to_string(),
                "tuple": entries(&t),
                "outcome": outcome,
                "window": window,
                "witness": witness.as_ref().map(witness_json),
            }))
        }
        Command::Enumerate { ring, n, search } => {
            let ring = parse_ring_spec(&ring)?;
            match enumerate_quiddities(&ring, n, &search_options(&search)?) {
                Ok(ts) => Output::json(json!({
                    "ring": ring.to_string(),
                    "n": n,
                    "count": ts.len(),
                    "quiddities": ts.iter().map(entries).collect::<Vec<_>>(),
                })),
                Err(Error::BudgetExhausted) => Output {
                    exhausted: true,
                    ..Output::json(json!({"ring": ring.to_string(), "n": n, "count": null, "quiddities": null}))
                },
                Err(e) => return Err(e),
            }
        }
        Command::Classify { ring, max, format, search } => {
            let report = classify_irreducible(&parse_ring_spec(&ring)?, max, &search_options(&search)?)?;
            classification_output(&report, format)
        }
        Command::Lmax { ring, cap, search } => {
            let report = max_irreducible_size(&parse_ring_spec(&ring)?, cap, &search_options(&search)?)?;
            Output {
                text: report.to_json(),
                exhausted: report.budget.exhausted,
            }
        }
        Command::Count44 { alphabet, n, word } => {
            let mut v = json!({
                "alphabet": alphabet.to_string(),
                "n": n,
                "count": count_restricted(alphabet, n)?,
            });
            if let Some(word) = word {
                let z4 = RingSpec::ModN(4);
                let w = if word.trim().is_empty() { Vec::new() } else { parse_entries(&z4, &word)? };
                if w.len() + 2 != n {
                    return Err(Error::LengthMismatch { expected: n - 2, got: w.len() });
                }
                v["extensions"] = json!(extend_word(alphabet, &w)?.iter().map(entries).collect::<Vec<_>>());
            }
            Output::json(v)
        }
        Command::Polygon { n, kind, diagonals, svg, check } => {
            if let Some(diagonals) = diagonals {
                let d = Decomposition::from_diagonals(n, parse_diagonals(&diagonals)?)?;
                if kind == Kind::Tri && !d.is_triangulation() {
                    return Err(Error::InvalidDecomposition("not a triangulation; use --kind 34".into()));
                }
                if !d.is_34() {
                    return Err(Error::InvalidDecomposition("cells must be triangles or quadrilaterals".into()));
                }
                let mut v = decomposition_json(&d)?;
                if let Some(path) = svg {
                    let labels: Vec<String> = d.triangle_counts().iter().map(usize::to_string).collect();
                    std::fs::write(&path, d.to_svg(Some(&labels)))
                        .map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
                    v["svg"] = json!(path.display().to_string());
                }
                Output::json(v)
            } else if check {
                let rep = verify_dissection_parities(n)?;
                Output::json(json!({
                    "n": n,
                    "decompositions": rep.decompositions,
                    "solutions": rep.solutions,
                    "holds": rep.holds(),
                    "unrealized": rep.unrealized.iter().map(entries).collect::<Vec<_>>(),
                    "non_solutions": rep.non_solutions.iter().map(entries).collect::<Vec<_>>(),
                }))
            } else {
                let decs = match kind {
                    Kind::Tri => enumerate_triangulations(n)?,
                    Kind::ThreeFour => enumerate_34_decompositions(n)?,
                };
                let mut list = Vec::with_capacity(decs.len());
                for d in &decs {
                    let mut v = decomposition_json(d)?;
                    if kind == Kind::Tri {
                        v["quiddity"] = entries(&triangulation_quiddity(d, &RingSpec::BoundedInt(n as i64))?);
                    }
                    list.push(v);
                }
                Output::json(json!({"n": n, "count": decs.len(), "decompositions": list}))
            }
        }
        Command::Transfer { morphism, ring, tuple, report } => match (ring, tuple, report) {
            (Some(ring), Some(tuple), None) => {
                let t = Tuple::parse(&parse_ring_spec(&ring)?, &tuple)?;
                let image = apply_morphism(&morphism, &t)?;
                let mut v = verdict_json(&image)?;
                v["morphism"] = json!(morphism.to_string());
                Output::json(v)
            }
            (None, None, Some(path)) => {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
                let report = ClassificationReport::from_json(&text)?;
                classification_output(&transfer_classification(&morphism, &report)?, Format::Json)
            }
            _ => return Err(Error::Unsupported("transfer needs --ring with --tuple, or --report".into())),
        },
        Command::Witness0 { ring, n, window } => {
            let t = char0_witness(&parse_ring_spec(&ring)?, n)?;
            let (outcome, witness) = match is_reducible_bounded(&t, window)?.outcome {
                BoundedOutcome::Conventional => ("conventional", None),
                BoundedOutcome::Reducible(w) => ("reducible", Some(witness_json(&w))),
                BoundedOutcome::NoWitnessWithinBound => ("no_witness_within_bound", None),
            };
            let mut v = verdict_json(&t)?;
            v["components"] = json!(t.split_components().unwrap_or_default().iter().map(entries).collect::<Vec<_>>());
            v["bounded_reduction"] = json!({"window": window, "outcome": outcome, "witness": witness});
            Output::json(v)
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let start = Instant::now();
    let result = run(cli.command);
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    match result {
        Ok(out) => {
            println!("{}", out.text.trim_end());
            if out.exhausted {
                eprintln!("search budget exhausted; output is partial");
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
