use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use divlabel::construction::{caterpillar_d_divisible, Construction, TraceStep};
use divlabel::cycle::cycle_d_divisible;
use divlabel::decompose::{decompose, verify_decomposition};
use divlabel::graph::{build_hairy_cycle, CaterpillarSpec};
use divlabel::hairy::{corona_d_divisible, odd_alpha_hairy, odd_alpha_hairy_by_transforms};
use divlabel::io::{
    from_json, to_dot, to_json, DecompositionDoc, GraphDoc, LabelingDoc,
};
use divlabel::labeling::{closing_difference, divisible_label_set, verify_d_divisible};
use divlabel::oracle::search_labelings;
use divlabel::transforms::{apply_transform, Op, TransformRequest};
use divlabel::Error;

/// Construct, transform, verify and decompose d-divisible alpha-labelings.
#[derive(Parser)]
#[command(name = "divlabel", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a labeled graph.
    #[command(subcommand)]
    Construct(Construct),
    /// Apply one labeling operation to a caterpillar labeling.
    Transform(TransformArgs),
    /// Develop a labeling into a cyclic decomposition.
    Decompose(DecomposeArgs),
    /// Check a labeling or decomposition document.
    Verify(VerifyArgs),
    /// Exhaustively search labelings of a small graph.
    Search(SearchArgs),
    /// Re-emit a document as DOT or canonical JSON.
    Export(ExportArgs),
}

#[derive(Args)]
struct Output {
    /// Write here instead of stdout.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Construct {
    /// d-divisible alpha-labeling of a caterpillar.
    Caterpillar {
        /// Pendant counts n1,m1,n2,m2,...
        #[arg(long, value_delimiter = ',', required = true)]
        spec: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Odd alpha-labeling of a bipartite hairy cycle.
    Hairy {
        #[arg(long, value_delimiter = ',', required = true)]
        spec: Vec<usize>,
        /// Ask for the odd labeling (the only one built for general hairy cycles).
        #[arg(long)]
        odd: bool,
        /// Build by standard labeling plus transforms instead of closed forms.
        #[arg(long)]
        transforms: bool,
        #[command(flatten)]
        out: Output,
    },
    /// d-divisible alpha-labeling of the corona H(2t, lambda).
    Corona {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        lambda: usize,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        out: Output,
    },
    /// d-divisible alpha-labeling of the cycle with the given number of edges.
    Cycle {
        #[arg(long)]
        edges: usize,
        #[arg(long)]
        d: usize,
        /// Closing difference; defaults to the smallest valid one.
        #[arg(long)]
        c: Option<i64>,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct TransformArgs {
    /// Labeling JSON; stdin when omitted or "-".
    #[arg(long)]
    labeling: Option<PathBuf>,
    #[arg(long)]
    op: Op,
    #[arg(long, default_value_t = 0)]
    s: usize,
    #[arg(long)]
    j: Option<usize>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct DecomposeArgs {
    #[arg(long)]
    labeling: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Divisibility of the labeling when the document does not record it.
    #[arg(long)]
    d: Option<usize>,
    /// Verify the partition and attach the certificate.
    #[arg(long)]
    verify: bool,
    /// Keep only the base blocks.
    #[arg(long)]
    no_materialize: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct VerifyArgs {
    /// Labeling or decomposition JSON; stdin when omitted or "-".
    input: Option<PathBuf>,
    #[arg(long)]
    d: Option<usize>,
    /// Require one part below the other.
    #[arg(long)]
    alpha: bool,
}

#[derive(Args)]
struct SearchArgs {
    /// Graph JSON (a labeling document's graph is accepted too).
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    alpha: bool,
    #[arg(long)]
    limit: Option<usize>,
    #[command(flatten)]
    out: Output,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Args)]
struct ExportArgs {
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[command(flatten)]
    out: Output,
}

enum Failure {
    Usage(String, String),
    Check(String, String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = e.code().to_string();
        match e {
            Error::InternalContradiction(_)
            | Error::PreconditionsNotMet(_)
            | Error::NotDisjoint(_)
            | Error::CannotExtend(_)
            | Error::InvalidLabeling(_) => Failure::Check(code, e.to_string()),
            _ => Failure::Usage(code, e.to_string()),
        }
    }
}

type CliResult = Result<bool, Failure>;

fn read_input(path: &Option<PathBuf>) -> Result<String, Failure> {
    match path {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p)
            .map_err(|e| Failure::Usage("io".into(), format!("{}: {e}", p.display()))),
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Usage("io".into(), e.to_string()))?;
            Ok(s)
        }
    }
}

fn write_output(out: &Output, text: &str) -> Result<(), Failure> {
    match &out.output {
        Some(p) => fs::write(p, text)
            .map_err(|e| Failure::Usage("io".into(), format!("{}: {e}", p.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Usage("io".into(), e.to_string())),
    }
}

fn emit<T: Serialize>(out: &Output, doc: &T) -> Result<(), Failure> {
    write_output(out, &to_json(doc))
}

fn verified(c: &Construction) -> CliResult {
    let report = verify_d_divisible(&c.labeling, c.d, true)?;
    Ok(report.holds)
}

fn construct(cmd: Construct) -> CliResult {
    let (built, out) = match cmd {
        Construct::Caterpillar { spec, d, out } => {
            (caterpillar_d_divisible(&CaterpillarSpec::new(spec)?, d)?, out)
        }
        Construct::Hairy {
            spec,
            odd,
            transforms,
            out,
        } => {
            if !odd {
                return Err(Failure::Usage(
                    "out-of-domain".into(),
                    "general hairy cycles only get the odd labeling; pass --odd".into(),
                ));
            }
            let g = Arc::new(build_hairy_cycle(&CaterpillarSpec::new(spec)?)?);
            let c = if transforms {
                odd_alpha_hairy_by_transforms(&g)?
            } else {
                odd_alpha_hairy(&g)?
            };
            (c, out)
        }
        Construct::Corona { t, lambda, d, out } => (corona_d_divisible(t, lambda, d)?, out),
        Construct::Cycle { edges, d, c, out } => {
            if edges % 4 != 0 {
                return Err(Failure::Usage(
                    "out-of-domain".into(),
                    format!("C_{edges} has no alpha-labeling; the edge count must be a multiple of 4"),
                ));
            }
            (cycle_d_divisible(edges / 4, d, c)?, out)
        }
    };
    let holds = verified(&built)?;
    emit(&out, &LabelingDoc::from_construction(&built))?;
    Ok(holds)
}

fn transform(args: TransformArgs) -> CliResult {
    let doc: LabelingDoc = from_json(&read_input(&args.labeling)?)?;
    let l = doc.to_labeling()?;
    let req = TransformRequest {
        op: args.op,
        s: args.s,
        j: args.j,
    };
    let g = apply_transform(&l, &req)?;
    let mut meta = doc.metadata.clone().unwrap_or_default();
    if meta.trace.is_empty() {
        meta.trace.push(TraceStep {
            op: None,
            closing: closing_difference(&l),
        });
    }
    meta.trace.push(TraceStep {
        op: Some(req),
        closing: closing_difference(&g),
    });
    let out = LabelingDoc {
        values: g.values().to_vec(),
        metadata: Some(meta),
        provenance: Some(match &doc.provenance {
            Some(p) => format!("{p}+{req}"),
            None => format!("transform/{req}"),
        }),
        ..doc
    };
    emit(&args.out, &out)?;
    Ok(true)
}

fn divisibility(doc_d: Option<usize>, flag: Option<usize>) -> Result<usize, Failure> {
    flag.or(doc_d).ok_or_else(|| {
        Failure::Usage(
            "missing-d".into(),
            "the document records no d; pass --d".into(),
        )
    })
}

fn decompose_cmd(args: DecomposeArgs) -> CliResult {
    let doc: LabelingDoc = from_json(&read_input(&args.labeling)?)?;
    let d = divisibility(doc.d, args.d)?;
    let l = doc.to_labeling()?;
    let dec = decompose(&l, d, args.n, !args.no_materialize)?;
    let mut out = DecompositionDoc::from_decomposition(&dec);
    out.provenance = Some(format!(
        "decomposition/{}",
        doc.provenance.as_deref().unwrap_or("labeling")
    ));
    let mut holds = true;
    if args.verify {
        let report = verify_decomposition(&dec, l.graph());
        holds = report.holds;
        out.certificate = Some(report);
    }
    emit(&args.out, &out)?;
    Ok(holds)
}

fn verify(args: VerifyArgs) -> CliResult {
    let text = read_input(&args.input)?;
    if let Ok(doc) = from_json::<DecompositionDoc>(&text) {
        let dec = doc.to_decomposition()?;
        let report = verify_decomposition(&dec, &dec.graph);
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
        return Ok(report.holds);
    }
    let doc: LabelingDoc = from_json(&text)?;
    let d = divisibility(doc.d, args.d)?;
    let l = doc.to_labeling()?;
    let report = verify_d_divisible(&l, d, args.alpha)?;
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    Ok(report.holds)
}

#[derive(Serialize)]
struct SearchOutput {
    count: usize,
    labelings: Vec<LabelingDoc>,
}

fn search(args: SearchArgs) -> CliResult {
    let text = read_input(&args.graph)?;
    let graph = match from_json::<GraphDoc>(&text) {
        Ok(g) => g,
        Err(_) => from_json::<LabelingDoc>(&text)?.graph,
    };
    let g = Arc::new(graph.to_graph()?);
    let s = divisible_label_set(g.size(), args.d)?;
    let found = search_labelings(&g, &s, args.alpha, args.limit)?;
    let docs: Vec<LabelingDoc> = found
        .iter()
        .map(|l| LabelingDoc {
            provenance: Some("search/exhaustive".into()),
            ..LabelingDoc::from_labeling(l, Some(args.d))
        })
        .collect();
    emit(
        &args.out,
        &SearchOutput {
            count: docs.len(),
            labelings: docs,
        },
    )?;
    Ok(true)
}

fn export(args: ExportArgs) -> CliResult {
    let text = read_input(&args.input)?;
    let rendered = if let Ok(doc) = from_json::<LabelingDoc>(&text) {
        match args.format {
            Format::Json => to_json(&doc),
            Format::Dot => {
                let l = doc.to_labeling()?;
                to_dot(l.graph(), Some(&l))
            }
        }
    } else if let Ok(doc) = from_json::<GraphDoc>(&text) {
        match args.format {
            Format::Json => to_json(&doc),
            Format::Dot => to_dot(&doc.to_graph()?, None),
        }
    } else {
        let doc: DecompositionDoc = from_json(&text)?;
        match args.format {
            Format::Json => to_json(&doc),
            Format::Dot => {
                return Err(Failure::Usage(
                    "unsupported".into(),
                    "decompositions export as JSON only".into(),
                ))
            }
        }
    };
    write_output(&args.out, &rendered)?;
    Ok(true)
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Construct(c) => construct(c),
        Command::Transform(a) => transform(a),
        Command::Decompose(a) => decompose_cmd(a),
        Command::Verify(a) => verify(a),
        Command::Search(a) => search(a),
        Command::Export(a) => export(a),
    }
}

fn fail(code: &str, message: &str, exit: u8) -> ExitCode {
    eprintln!("{}", json!({ "error": code, "message": message }));
    ExitCode::from(exit)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail("usage", e.to_string().trim(), 2),
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(code, msg)) => fail(&code, &msg, 1),
        Err(Failure::Usage(code, msg)) => fail(&code, &msg, 2),
    }
}
