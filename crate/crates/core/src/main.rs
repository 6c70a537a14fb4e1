use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qlayout::constructions::{gen_p, gen_r, gen_r_bidirectional, gen_random_2d, Family};
use qlayout::io::{arcs_dot, arcs_svg, dominance_dot, dominance_svg, PosetDocument};
use qlayout::layout::{
    queue_assignment, rainbow_number, realizer_bound_report, BoundReport, Layout, QueueAssignment,
};
use qlayout::order::{min_chain_partition, width};
use qlayout::solver::{
    decode_model, encode_cnf, exact_qn_bnb, exact_qn_realizers, BnbOptions, Model, SolveResult,
};
use qlayout::verify::{
    verify_hp_square, verify_lemma_rainbow, verify_props, verify_pw_selfdual, verify_thm2_bound,
    Claim, CorpusSpec, VerifyReport,
};
use qlayout::{Error, Poset};

/// Queue layouts of two-dimensional posets.
///
/// Exit codes: 0 success, 1 a verified claim failed, 2 usage or input
/// error, 3 resource limit reached, 4 invalid solver model.
#[derive(Parser)]
#[command(name = "qlayout", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a poset family as a JSON document.
    Gen(GenArgs),
    /// Width, chains, and realizer rainbow bounds of a document.
    Analyze(AnalyzeArgs),
    /// Exact queue number by branch and bound, or through a SAT encoding.
    Qn(QnArgs),
    /// Check a claim over its instance range.
    Verify(VerifyArgs),
    /// Dominance drawing or queue arc diagram.
    Draw(DrawArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    R,
    P,
    RBidirectional,
    Random2d,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Width parameter for r, p, r-bidirectional.
    #[arg(long)]
    w: Option<usize>,
    /// Size for random2d.
    #[arg(long)]
    n: Option<usize>,
    /// Seed for random2d.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; the document goes to stdout when omitted.
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct AnalyzeArgs {
    input: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum QnMode {
    Bnb,
    Cnf,
}

#[derive(Args)]
struct QnArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = QnMode::Bnb)]
    mode: QnMode,
    /// Queue budget for the CNF encoding.
    #[arg(long)]
    k: Option<usize>,
    /// Solver output to decode instead of emitting DIMACS.
    #[arg(long)]
    model: Option<PathBuf>,
    #[arg(long, default_value_t = BnbOptions::default().node_limit)]
    node_limit: u64,
    /// DIMACS destination; stdout when omitted.
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClaimArg {
    LemmaRainbow,
    Thm2Bound,
    Props,
    PwSelfdual,
    HpSquare,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    claim: ClaimArg,
    /// Largest w for lemma-rainbow (default 6) and pw-selfdual (default 4).
    #[arg(long)]
    w_max: Option<usize>,
    /// Largest random instance; sizes cycle through n..=1.
    #[arg(long, default_value_t = 40)]
    n: usize,
    #[arg(long, default_value_t = 200)]
    seeds: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum DrawKind {
    Dominance,
    Arcs,
}

#[derive(Clone, Copy, ValueEnum)]
enum DrawFormat {
    Svg,
    Dot,
}

#[derive(Args)]
struct DrawArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = DrawKind::Dominance)]
    kind: DrawKind,
    /// `l1`, `l2`, or a file of element names in layout order. Defaults to
    /// `l1`, or a canonical linear extension without realizers.
    #[arg(long)]
    order: Option<String>,
    #[arg(long, value_enum, default_value_t = DrawFormat::Svg)]
    format: DrawFormat,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

enum Failure {
    Claim,
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CliResult = Result<(), Failure>;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceLimit { .. } | Error::NodeLimit { .. } | Error::SizeLimit { .. } => 3,
        Error::InvalidModel(_) => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Qn(a) => cmd_qn(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Draw(a) => cmd_draw(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Claim) => ExitCode::from(1),
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("reports serialize")
    );
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => Ok(fs::write(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(path: &Path) -> Result<PosetDocument, Error> {
    let text = fs::read_to_string(path)?;
    PosetDocument::parse(&text)
}

fn need<T>(v: Option<T>, what: &str) -> Result<T, Error> {
    v.ok_or_else(|| Error::Parameter(format!("missing --{what}")))
}

#[derive(Serialize)]
struct GenSummary {
    family: Family,
    elements: usize,
    width: usize,
    output: Option<PathBuf>,
}

fn cmd_gen(a: GenArgs) -> CliResult {
    let g = match a.family {
        FamilyArg::R => gen_r(need(a.w, "w")?)?,
        FamilyArg::P => gen_p(need(a.w, "w")?)?,
        FamilyArg::RBidirectional => gen_r_bidirectional(need(a.w, "w")?)?,
        FamilyArg::Random2d => gen_random_2d(need(a.n, "n")?, a.seed)?,
    };
    let doc = PosetDocument::from_family(&g);
    let (w, _) = width(&g.poset());
    let summary = GenSummary {
        family: g.family,
        elements: g.len(),
        width: w,
        output: a.output.clone(),
    };
    match &a.output {
        Some(path) => {
            fs::write(path, doc.to_json()).map_err(Error::from)?;
            if a.json {
                print_json(&summary);
            } else {
                println!("{} elements, width {}", summary.elements, summary.width);
            }
        }
        None => {
            print!("{}", doc.to_json());
            eprintln!("{} elements, width {}", summary.elements, summary.width);
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct AnalyzeReport {
    elements: usize,
    cover_edges: usize,
    width: usize,
    antichain: Vec<String>,
    chains: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    realizers: Option<RealizerVerdict>,
}

#[derive(Serialize)]
struct RealizerVerdict {
    #[serde(flatten)]
    report: BoundReport,
    verdict: &'static str,
}

fn bound_verdict(r: &BoundReport) -> &'static str {
    if !r.realizer_bound_holds {
        "violated"
    } else if r.tight {
        "tight"
    } else {
        "within bound"
    }
}

fn cmd_analyze(a: AnalyzeArgs) -> CliResult {
    let doc = load(&a.input)?;
    let p = doc.poset()?;
    let names = |v: &[usize]| v.iter().map(|&u| p.name(u).to_string()).collect::<Vec<_>>();
    let (w, antichain) = width(&p);
    let chains = min_chain_partition(&p);
    let realizers = match doc.realizer_pair() {
        Some(rp) => {
            let report = realizer_bound_report(&rp?)?;
            let verdict = bound_verdict(&report);
            Some(RealizerVerdict { report, verdict })
        }
        None => None,
    };
    let rep = AnalyzeReport {
        elements: p.len(),
        cover_edges: p.cover_graph().edges.len(),
        width: w,
        antichain: names(&antichain),
        chains: chains.chains().iter().map(|c| names(c)).collect(),
        realizers,
    };
    if a.json {
        print_json(&rep);
        return Ok(());
    }
    println!("elements     {}", rep.elements);
    println!("cover edges  {}", rep.cover_edges);
    println!(
        "width        {} (antichain {})",
        rep.width,
        rep.antichain.join(" ")
    );
    for (i, c) in rep.chains.iter().enumerate() {
        println!("chain {:<6} {}", i + 1, c.join(" < "));
    }
    match &rep.realizers {
        Some(r) => {
            let b = &r.report;
            println!("rainbow l1   {}", b.rainbow_l1);
            println!("rainbow l2   {}", b.rainbow_l2);
            println!("w(w+1)/2     {} ({})", b.realizer_bound, r.verdict);
            println!(
                "w^2          {} ({})",
                b.square_bound,
                if b.square_bound_holds {
                    "holds"
                } else {
                    "violated"
                }
            );
        }
        None => println!("no realizers: rainbow bounds not evaluated"),
    }
    Ok(())
}

#[derive(Serialize)]
struct LayoutOut {
    qn: usize,
    optimal: bool,
    order: Vec<String>,
    edges: Vec<EdgeOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nodes: Option<u64>,
}

#[derive(Serialize)]
struct EdgeOut {
    lower: String,
    upper: String,
    queue: usize,
}

fn layout_out(
    p: &Poset,
    l: &Layout,
    qa: &QueueAssignment,
    optimal: bool,
    nodes: Option<u64>,
) -> LayoutOut {
    LayoutOut {
        qn: qa.k,
        optimal,
        order: l.order().iter().map(|&u| p.name(u).to_string()).collect(),
        edges: l
            .edges()
            .iter()
            .zip(&qa.queue_of)
            .map(|(e, &q)| EdgeOut {
                lower: p.name(e.lower).to_string(),
                upper: p.name(e.upper).to_string(),
                queue: q,
            })
            .collect(),
        nodes,
    }
}

fn print_layout(out: &LayoutOut, json: bool) {
    if json {
        print_json(out);
        return;
    }
    let tag = if out.optimal {
        ""
    } else {
        " (incumbent, not proven optimal)"
    };
    println!("qn = {}{tag}", out.qn);
    println!("order: {}", out.order.join(" "));
    for e in &out.edges {
        println!("  {} -> {}  queue {}", e.lower, e.upper, e.queue);
    }
}

fn solve_out(p: &Poset, r: &SolveResult) -> Result<LayoutOut, Error> {
    let l = Layout::new(p, &r.order)?;
    Ok(layout_out(
        p,
        &l,
        &r.assignment,
        r.optimal,
        Some(r.stats.nodes),
    ))
}

fn cmd_qn(a: QnArgs) -> CliResult {
    let doc = load(&a.input)?;
    match a.mode {
        QnMode::Bnb => {
            let opts = BnbOptions {
                node_limit: a.node_limit,
                ..BnbOptions::default()
            };
            let solved = match doc.realizer_pair() {
                Some(rp) => exact_qn_realizers(&rp?, &opts),
                None => doc
                    .poset()
                    .and_then(|p| exact_qn_bnb(&p, &opts).map(|r| (p, r))),
            };
            match solved {
                Ok((p, r)) => print_layout(&solve_out(&p, &r)?, a.json),
                Err(Error::NodeLimit { limit, incumbent }) => {
                    let p = match doc.realizer_pair() {
                        Some(rp) => Poset::from_realizers(&rp?)?,
                        None => doc.poset()?,
                    };
                    print_layout(&solve_out(&p, &incumbent)?, a.json);
                    return Err(Error::NodeLimit { limit, incumbent }.into());
                }
                Err(e) => return Err(e.into()),
            }
        }
        QnMode::Cnf => {
            let k = need(a.k, "k")?;
            let p = doc.poset()?;
            let cnf = encode_cnf(&p, k)?;
            match &a.model {
                None => {
                    write_or_print(a.output.as_deref(), &cnf.to_dimacs())?;
                    eprintln!(
                        "DIMACS for k = {k}: {} variables, {} clauses. Run a SAT solver on it and \
                         pass the solver output back with --model to decode the layout.",
                        cnf.var_count(),
                        cnf.clauses().len()
                    );
                }
                Some(path) => {
                    let text = fs::read_to_string(path).map_err(Error::from)?;
                    let model = match Model::parse(&text) {
                        Ok(m) => m,
                        Err(Error::Unsatisfiable) => {
                            println!("UNSAT: no layout with at most {k} queues");
                            return Ok(());
                        }
                        Err(e) => return Err(e.into()),
                    };
                    let d = decode_model(&cnf, &model)?;
                    let mut out = layout_out(&p, &d.layout, &d.assignment, false, None);
                    out.qn = k;
                    if a.json {
                        print_json(&out);
                    } else {
                        println!("valid {k}-queue layout");
                        println!("order: {}", out.order.join(" "));
                        for e in &out.edges {
                            println!("  {} -> {}  queue {}", e.lower, e.upper, e.queue);
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn cmd_verify(a: VerifyArgs) -> CliResult {
    let spec = CorpusSpec {
        n_max: a.n,
        seeds: a.seeds,
    };
    let claim = match a.claim {
        ClaimArg::LemmaRainbow => Claim::LemmaRainbow,
        ClaimArg::Thm2Bound => Claim::Thm2Bound,
        ClaimArg::Props => Claim::Props,
        ClaimArg::PwSelfdual => Claim::PwSelfdual,
        ClaimArg::HpSquare => Claim::HpSquare,
    };
    let report: VerifyReport = match claim {
        Claim::LemmaRainbow => verify_lemma_rainbow(a.w_max.unwrap_or(6))?,
        Claim::Thm2Bound => verify_thm2_bound(&spec)?,
        Claim::Props => verify_props(&spec)?,
        Claim::PwSelfdual => verify_pw_selfdual(a.w_max.unwrap_or(4))?,
        Claim::HpSquare => verify_hp_square(&spec)?,
    };
    if a.json {
        print_json(&report);
    } else {
        println!("{report}");
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Claim)
    }
}

fn cmd_draw(a: DrawArgs) -> CliResult {
    let doc = load(&a.input)?;
    let p = doc.poset()?;
    let rp = doc.realizer_pair().transpose()?;
    let text = match a.kind {
        DrawKind::Dominance => {
            let rp = rp.ok_or_else(|| {
                Error::Input("dominance drawing needs a document with realizers".into())
            })?;
            match a.format {
                DrawFormat::Svg => dominance_svg(&p, &rp)?,
                DrawFormat::Dot => dominance_dot(&p, &rp)?,
            }
        }
        DrawKind::Arcs => {
            let order = match (a.order.as_deref(), &rp) {
                (None | Some("l1"), Some(rp)) => p.indices_of(rp.l1())?,
                (Some("l2"), Some(rp)) => p.indices_of(rp.l2())?,
                (Some("l1" | "l2"), None) => {
                    return Err(Error::Input("document has no realizers".into()).into())
                }
                (None, None) => p.canonical_extension(),
                (Some(file), _) => {
                    let text = fs::read_to_string(file).map_err(Error::from)?;
                    let names: Vec<String> = text.split_whitespace().map(String::from).collect();
                    p.indices_of(&names)?
                }
            };
            let l = Layout::new(&p, &order)?;
            let qa = queue_assignment(&l);
            debug_assert_eq!(qa.k, rainbow_number(&l).len());
            match a.format {
                DrawFormat::Svg => arcs_svg(&p, &l, &qa),
                DrawFormat::Dot => arcs_dot(&p, &l, &qa),
            }
        }
    };
    write_or_print(a.output.as_deref(), &text)?;
    Ok(())
}
