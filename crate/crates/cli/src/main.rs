mod doc;

use std::fmt::Write as _;
use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use spinrep::intertwine::{padding_d, scripts_for_base, Script};
use spinrep::orbits::{attach_orbit, codim_identity_holds, nilcone_dim, orbit_dim, special_orbit};
use spinrep::rewriter::{normalize_to_base, pad_case_a, pad_case_b, InductionStep};
use spinrep::scalar::fmt_q;
use spinrep::spinclass::pairs::enumerate_pairs;
use spinrep::spinclass::{classify, pairs_to_param, table};
use spinrep::{Family, GenuineParam, Status, StringPairs, Verdict, Q};

use doc::{
    LanglandsDoc, OrbitDoc, PairsDoc, ParamDocument, ScriptDoc, StepDoc, TableRowDoc, TranscriptDoc,
    VerdictDocument,
};

#[derive(Parser)]
#[command(name = "spinrep", version, about = "Unitarity of genuine representations of complex Spin groups")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Group family.
    #[arg(long, global = true)]
    group: Option<Family>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide unitarity of one parameter.
    Classify {
        /// String pairs "x1,..;y1,..".
        #[arg(long)]
        pairs: Option<String>,
        /// Parameter document; stdin when neither this nor --pairs is given.
        #[arg(long)]
        file: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Classify every string-pair array of a given size.
    Table {
        #[command(flatten)]
        size: Size,
        #[command(flatten)]
        common: Common,
    },
    /// List string-pair arrays of a given size.
    Enumerate {
        #[command(flatten)]
        size: Size,
        #[command(flatten)]
        common: Common,
    },
    /// Induction transcript for string pairs.
    Rewrite {
        #[arg(long)]
        pairs: String,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
        #[command(flatten)]
        common: Common,
    },
    /// Nilpotent orbit attached to a strict core.
    Orbit {
        #[arg(long)]
        pairs: String,
        #[command(flatten)]
        common: Common,
    },
    /// Check the intertwining chains for a base case or a padding step.
    VerifyChain {
        #[arg(long)]
        pairs: String,
        #[arg(long, value_enum, default_value_t = Case::Auto)]
        case: Case,
        /// Inserted Stein column "s;t" for the padding case.
        #[arg(long)]
        stein: Option<String>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Size {
    /// Family, as an alternative to --group.
    #[arg(value_name = "GROUP")]
    group_pos: Option<Family>,
    /// Size n = Σ(x + y), as an alternative to --rank.
    #[arg(value_name = "N")]
    n_pos: Option<u32>,
    #[arg(long)]
    rank: Option<u32>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Pad when every column is one-sided, otherwise normalize to a base case.
    Auto,
    PadA,
    PadB,
    Normalize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Case {
    /// Use the base case reached by normalization.
    Auto,
    Padding,
}

enum Failure {
    Parse(String),
    Module(String),
}

impl From<spinrep::Error> for Failure {
    fn from(e: spinrep::Error) -> Self {
        Failure::Module(e.to_string())
    }
}

struct Output {
    text: String,
    code: u8,
}

fn ok(text: String) -> Output {
    Output { text, code: 0 }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("documents serialize");
    s.push('\n');
    s
}

fn family(common: &Common) -> Family {
    common.group.unwrap_or(Family::D)
}

fn parse_pairs(family: Family, s: &str) -> Result<StringPairs, Failure> {
    StringPairs::parse(family, s).map_err(|e| Failure::Parse(e.to_string()))
}

fn size_args(size: &Size, common: &Common) -> Result<(Family, u32), Failure> {
    let family = match (size.group_pos, common.group) {
        (Some(a), Some(b)) if a != b => return Err(Failure::Parse("conflicting group arguments".into())),
        (a, b) => a.or(b).unwrap_or(Family::D),
    };
    let n = match (size.n_pos, size.rank) {
        (Some(a), Some(b)) if a != b => return Err(Failure::Parse("conflicting size arguments".into())),
        (a, b) => a.or(b).ok_or_else(|| Failure::Parse("missing size N".into()))?,
    };
    if n == 0 {
        return Err(Failure::Parse("size must be at least 1".into()));
    }
    Ok((family, n))
}

fn row(v: &[Q]) -> String {
    v.iter().map(fmt_q).collect::<Vec<_>>().join(" ")
}

fn langlands_text(l: &LanglandsDoc) -> String {
    format!("λ_L = ({})  λ_R = ({})", l.lambda_l.join(" "), l.lambda_r.join(" "))
}

fn verdict_label(v: &Verdict, strict: bool, family: Family) -> String {
    match v.status {
        Status::Unitary if strict => match family {
            Family::D => "Yes - Brega".into(),
            Family::B => "Yes - strict".into(),
        },
        Status::Unitary => "Yes".into(),
        _ => match v.witness.as_ref().and_then(|w| w.eta_index()) {
            Some(q) => format!("No - η({q})"),
            None => "No".into(),
        },
    }
}

fn read_document(file: &Option<PathBuf>) -> Result<ParamDocument, Failure> {
    let text = match file {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?,
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Parse(format!("stdin: {e}")))?;
            s
        }
    };
    serde_json::from_str(&text).map_err(|e| Failure::Parse(e.to_string()))
}

fn cmd_classify(pairs: &Option<String>, file: &Option<PathBuf>, common: &Common) -> Result<Output, Failure> {
    let param: GenuineParam = match pairs {
        Some(s) => pairs_to_param(&parse_pairs(family(common), s)?),
        None => {
            let d = read_document(file)?;
            if let Some(g) = common.group {
                if d.group.trim() != g.to_string() {
                    return Err(Failure::Parse(format!("document group {} conflicts with --group {g}", d.group)));
                }
            }
            d.to_param().map_err(Failure::Parse)?
        }
    };
    let v = classify(&param)?;
    let d = VerdictDocument::new(&param, &v);
    let code = match v.status {
        Status::Unitary => 0,
        Status::NonUnitary => 3,
        Status::NotHermitian | Status::NotGenuine => 4,
    };
    let text = if common.json { json(&d) } else { verdict_text(&param, &v, &d) };
    Ok(Output { text, code })
}

fn verdict_text(p: &GenuineParam, v: &Verdict, d: &VerdictDocument) -> String {
    let mut s = String::new();
    let hs = |h: &[spinrep::HalfInt]| h.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    writeln!(s, "group    {}", p.group).unwrap();
    writeln!(s, "mu       ({})", hs(&p.mu)).unwrap();
    writeln!(s, "nu       ({})", row(&p.nu)).unwrap();
    writeln!(s, "langlands {}", langlands_text(&d.langlands)).unwrap();
    writeln!(s, "status   {}", v.status).unwrap();
    if let Some(pairs) = &v.pairs {
        writeln!(s, "pairs    {pairs}").unwrap();
    }
    if let Some(r) = &v.reason {
        writeln!(s, "reason   {r}").unwrap();
    }
    if let Some(w) = &v.witness {
        writeln!(s, "witness  {w}").unwrap();
    }
    if let Some(c) = &d.certificate {
        for f in &c.gl_factors {
            let shift = f.shift.as_ref().map(|t| format!(" t={t}")).unwrap_or_default();
            writeln!(s, "factor   block {} {} size {}{shift}", f.block, f.kind, f.size).unwrap();
        }
        for st in &c.stein {
            writeln!(s, "stein    ({};{}) GL({})", st.x, st.y, st.gl_rank).unwrap();
        }
        if let Some(core) = &c.core {
            writeln!(s, "core     {}", pairs_text(core)).unwrap();
        }
        if let Some(o) = &c.orbit {
            writeln!(s, "orbit    {}", orbit_line(o)).unwrap();
        }
    }
    if let Some(t) = &d.transcript {
        transcript_text(&mut s, t);
    }
    s
}

fn pairs_text(p: &PairsDoc) -> String {
    let j = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
    format!("({};{})", j(&p.x), j(&p.y))
}

fn orbit_line(o: &OrbitDoc) -> String {
    let j = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
    format!("columns ({}) rows ({}) in so({}) dim {}", j(&o.columns), j(&o.rows), o.ambient, o.dim)
}

fn step_line(s: &mut String, st: &StepDoc) {
    writeln!(
        s,
        "step     {} --{}--> {}  inserted ({};{})",
        pairs_text(&st.before),
        st.label,
        pairs_text(&st.after),
        st.column.0,
        st.column.1
    )
    .unwrap();
}

fn transcript_text(s: &mut String, t: &TranscriptDoc) {
    for st in &t.steps {
        step_line(s, st);
    }
    for (x, y) in &t.stein_columns {
        writeln!(s, "stein    ({x};{y})").unwrap();
    }
    writeln!(s, "final    {}", pairs_text(&t.final_pairs)).unwrap();
    if let Some(b) = &t.base {
        let vals = b.values.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        let col = t.base_column.map(|c| format!(" at column {c}")).unwrap_or_default();
        writeln!(s, "base     case {} ({vals}){col} η({})", b.case, b.witness_index).unwrap();
    }
}

fn cmd_table(size: &Size, common: &Common) -> Result<Output, Failure> {
    let (family, n) = size_args(size, common)?;
    let rows = table(family, n)?;
    if common.json {
        let docs: Vec<TableRowDoc> = rows.iter().map(TableRowDoc::new).collect();
        return Ok(ok(json(&docs)));
    }
    let mut s = String::new();
    for r in &rows {
        writeln!(
            s,
            "{}  λ_L = ({})  λ_R = ({})  {}",
            r.pairs,
            row(&r.langlands.lambda_l),
            row(&r.langlands.lambda_r),
            verdict_label(&r.verdict, r.strict, family)
        )
        .unwrap();
    }
    Ok(ok(s))
}

fn cmd_enumerate(size: &Size, common: &Common) -> Result<Output, Failure> {
    let (family, n) = size_args(size, common)?;
    let all = enumerate_pairs(family, n);
    if common.json {
        let docs: Vec<PairsDoc> = all.iter().map(PairsDoc::from_pairs).collect();
        return Ok(ok(json(&docs)));
    }
    Ok(ok(all.iter().map(|p| format!("{p}\n")).collect()))
}

#[derive(Serialize)]
struct PaddingDoc {
    mode: String,
    steps: Vec<StepDoc>,
    labels: Vec<u32>,
    final_pairs: PairsDoc,
}

fn cmd_rewrite(pairs: &str, mode: Mode, common: &Common) -> Result<Output, Failure> {
    let family = family(common);
    let p = parse_pairs(family, pairs)?;
    let mode = match mode {
        Mode::Auto if family == Family::D && p.columns().all(|(x, y)| x > y) => Mode::PadB,
        Mode::Auto if family == Family::D && p.columns().all(|(x, y)| x <= y) => Mode::PadA,
        Mode::Auto => Mode::Normalize,
        m => m,
    };
    let padded = |steps: Vec<InductionStep>, fin: StringPairs, name: &str| {
        let d = PaddingDoc {
            mode: name.into(),
            labels: steps.iter().map(|s| s.label).collect(),
            steps: steps.iter().map(StepDoc::new).collect(),
            final_pairs: PairsDoc::from_pairs(&fin),
        };
        if common.json {
            return json(&d);
        }
        let mut s = String::new();
        for st in &d.steps {
            step_line(&mut s, st);
        }
        let labels: Vec<String> = d.labels.iter().map(u32::to_string).collect();
        writeln!(s, "labels   {}", labels.join(",")).unwrap();
        writeln!(s, "final    {}", pairs_text(&d.final_pairs)).unwrap();
        s
    };
    let text = match mode {
        Mode::PadA => {
            let (steps, fin) = pad_case_a(&p)?;
            padded(steps, fin, "pad-a")
        }
        Mode::PadB => {
            let (steps, fin) = pad_case_b(&p)?;
            padded(steps, fin, "pad-b")
        }
        _ => {
            let nb = normalize_to_base(&p)?;
            let d = TranscriptDoc::new(&nb);
            if common.json {
                json(&d)
            } else {
                let mut s = String::new();
                transcript_text(&mut s, &d);
                let labels: Vec<String> = nb.labels().iter().map(u32::to_string).collect();
                writeln!(s, "labels   {}", labels.join(",")).unwrap();
                s
            }
        }
    };
    Ok(ok(text))
}

#[derive(Serialize)]
struct OrbitReport {
    pairs: PairsDoc,
    orbit: OrbitDoc,
    nilcone_dim: i64,
    special: Option<OrbitDoc>,
    codim_identity: Option<bool>,
}

fn cmd_orbit(pairs: &str, common: &Common) -> Result<Output, Failure> {
    let family = family(common);
    let p = parse_pairs(family, pairs)?;
    let o = attach_orbit(&p)?;
    let (special, codim) = match family {
        Family::D => (Some(OrbitDoc::new(&special_orbit(&p)?)), Some(codim_identity_holds(&p)?)),
        Family::B => (None, None),
    };
    let r = OrbitReport {
        pairs: PairsDoc::from_pairs(&p),
        nilcone_dim: nilcone_dim(o.ambient),
        orbit: OrbitDoc::new(&o),
        special,
        codim_identity: codim,
    };
    if common.json {
        return Ok(ok(json(&r)));
    }
    let mut s = String::new();
    writeln!(s, "pairs    {p}").unwrap();
    writeln!(s, "orbit    {}", orbit_line(&r.orbit)).unwrap();
    writeln!(s, "nilcone  dim {}", r.nilcone_dim).unwrap();
    if let Some(sp) = &r.special {
        writeln!(s, "special  {}", orbit_line(sp)).unwrap();
    }
    if let Some(c) = r.codim_identity {
        writeln!(s, "codim    {}", if c { "identity holds" } else { "identity fails" }).unwrap();
    }
    debug_assert_eq!(r.orbit.dim, orbit_dim(&o));
    Ok(ok(s))
}

fn cmd_verify_chain(pairs: &str, case: Case, stein: &Option<String>, common: &Common) -> Result<Output, Failure> {
    let family = family(common);
    let p = parse_pairs(family, pairs)?;
    let scripts: Vec<Script> = match case {
        Case::Padding => {
            if family != Family::D {
                return Err(Failure::Module("padding chains are modelled in type D only".into()));
            }
            let col = stein.as_deref().ok_or_else(|| Failure::Parse("--stein s;t is required".into()))?;
            let c = parse_pairs(family, col)?;
            let (s, t) = match c.columns().collect::<Vec<_>>()[..] {
                [(s, t)] => (s, t),
                _ => return Err(Failure::Parse("--stein takes a single column".into())),
            };
            vec![padding_d(s, t, &p)]
        }
        Case::Auto => {
            let nb = normalize_to_base(&p)?;
            let base = nb
                .base
                .ok_or_else(|| Failure::Module(format!("{p} satisfies the inequalities; no base case")))?;
            scripts_for_base(family, base)
        }
    };
    let mut docs = Vec::new();
    for sc in &scripts {
        let reports = sc.run()?;
        docs.push(ScriptDoc::new(sc, &reports));
    }
    let code = if docs.iter().all(|d| d.certified) { 0 } else { 3 };
    let text = if common.json {
        json(&docs)
    } else {
        let mut s = String::new();
        for d in &docs {
            writeln!(s, "script   {}  start ({})", d.name, d.start.join(" ")).unwrap();
            for st in &d.steps {
                let scalar = st.scalar.as_ref().map(|q| format!(" scalar {q}")).unwrap_or_default();
                let verdict = if st.well_defined && st.injective { "OK" } else { "FAIL" };
                writeln!(s, "  {verdict:<4} {}{scalar}  ({})  {}", st.step, st.state.join(" "), st.reason).unwrap();
            }
            writeln!(s, "  {}", if d.certified { "certified" } else { "not certified" }).unwrap();
        }
        s
    };
    Ok(Output { text, code })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.cmd {
        Cmd::Classify { pairs, file, common } => cmd_classify(pairs, file, common),
        Cmd::Table { size, common } => cmd_table(size, common),
        Cmd::Enumerate { size, common } => cmd_enumerate(size, common),
        Cmd::Rewrite { pairs, mode, common } => cmd_rewrite(pairs, *mode, common),
        Cmd::Orbit { pairs, common } => cmd_orbit(pairs, common),
        Cmd::VerifyChain { pairs, case, stein, common } => cmd_verify_chain(pairs, *case, stein, common),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(Failure::Parse(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Module(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
