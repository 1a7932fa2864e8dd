//! The `rimsurf` command line: argument parsing, dispatch and reports.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use rimsurf::alexander::{self, alexander_from_braid, alexander_from_seifert, AlexanderError};
use rimsurf::braid::{parse_braid, transverse_grid, BraidError, QuasipositiveWord};
use rimsurf::gridhfk::{self, GridDiagram, GridError, TransverseVariant};
use rimsurf::polyalg::{self, LaurentPoly, OmegaValue, PolyError, Ring};
use rimsurf::rimcalc::{self, FamilySpec, RimError};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
/// Bumped whenever the JSON report layout changes.
pub const SCHEMA_VERSION: u32 = 1;
pub const SCHEMA: &str = include_str!("../schema/report.schema.json");

#[derive(Parser, Debug)]
#[command(
    name = "rimsurf",
    version,
    about = "Factor-counting surface invariants, grid knot Floer homology and rim-surgery certificates"
)]
struct Cli {
    /// Write the JSON report to PATH, or to stdout when PATH is omitted.
    #[arg(long, global = true, num_args = 0..=1, value_name = "PATH")]
    json: Option<Option<PathBuf>>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Alexander polynomial of a braid closure or a Seifert matrix.
    Alex(AlexArgs),
    /// Factor a univariate Laurent polynomial over GF(2) or Q.
    Factor(PolyArgs),
    /// Number of irreducible factors, optionally after substituting z^v.
    Omega(OmegaArgs),
    /// Knot Floer homology of a grid diagram.
    GridHfk(GridArgs),
    /// Transverse invariant of a braid closure.
    Transverse(TransverseArgs),
    /// Certificate for a 1-twist rim-surgery family.
    RimFamily(FamilyArgs),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "input")]
struct AlexInput {
    /// Braid word `n: g1 g2 ...`.
    #[arg(long)]
    braid: Option<String>,
    /// Seifert matrix as JSON, e.g. `[[-1,1],[0,-1]]`.
    #[arg(long)]
    seifert: Option<String>,
}

#[derive(Args, Debug)]
struct AlexArgs {
    #[command(flatten)]
    input: AlexInput,
    /// Field for the factor counts; both are reported when omitted.
    #[arg(long)]
    ring: Option<Ring>,
    /// Also count irreducible factors.
    #[arg(long)]
    irr: bool,
}

#[derive(Args, Debug)]
struct PolyArgs {
    /// Polynomial in `t`, e.g. `t^2 + t + 1` or `t - 1 + t^-1`.
    #[arg(long)]
    poly: String,
    #[arg(long, default_value = "f2")]
    ring: Ring,
}

#[derive(Args, Debug)]
struct OmegaArgs {
    /// Polynomial in `t`, or in `z1..zk` for several variables.
    #[arg(long)]
    poly: String,
    #[arg(long, default_value = "f2")]
    ring: Ring,
    /// Substitute `t -> z^v` for this primitive vector first.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    curve: Option<Vec<i64>>,
}

#[derive(Args, Debug)]
struct GridArgs {
    /// Grid file with lines `X: ...` and `O: ...`.
    #[arg(long)]
    grid: PathBuf,
    /// Largest grid size to compute (default 8, or the environment cap).
    #[arg(long)]
    max_size: Option<usize>,
}

#[derive(Args, Debug)]
struct TransverseArgs {
    #[arg(long)]
    braid: String,
    /// Use the southwest-corner state instead.
    #[arg(long)]
    minus: bool,
    #[arg(long)]
    max_size: Option<usize>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "pattern")]
struct PatternInput {
    /// Pattern knot as a braid word; its Alexander polynomial is used.
    #[arg(long)]
    pattern_braid: Option<String>,
    /// Lefschetz polynomial given directly.
    #[arg(long)]
    pattern_poly: Option<String>,
}

#[derive(Args, Debug)]
#[group(multiple = false, id = "base")]
struct BaseInput {
    /// Ω of the base surface, if known.
    #[arg(long, allow_hyphen_values = true)]
    base_omega: Option<String>,
    /// Quasipositive factorization `n: [w|j]...` of the base surface.
    #[arg(long)]
    base_quasipositive: Option<String>,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[arg(long)]
    genus: u32,
    /// Curve class on the surface, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    curve: Vec<i64>,
    #[command(flatten)]
    pattern: PatternInput,
    /// Family members: `a..b` (inclusive) or a comma-separated list.
    #[arg(long = "n")]
    indices: String,
    #[arg(long, default_value = "f2")]
    ring: Ring,
    #[command(flatten)]
    base: BaseInput,
    #[arg(long)]
    max_size: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub kind: String,
    pub message: String,
}

/// Everything a run produced, in machine and human form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub schema_version: u32,
    pub command: Option<String>,
    pub input: Value,
    pub result: Option<Value>,
    pub error: Option<ErrorReport>,
    #[serde(skip)]
    pub human: String,
    #[serde(skip)]
    pub json_target: Option<Option<PathBuf>>,
}

impl Report {
    fn new(command: Option<String>, input: Value) -> Self {
        Self {
            tool: "rimsurf".into(),
            version: VERSION.into(),
            schema_version: SCHEMA_VERSION,
            command,
            input,
            result: None,
            error: None,
            human: String::new(),
            json_target: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Reads back the machine form; the human text is not part of it.
    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

/// A failure with its exit code: 1 for domain errors, 2 for bad input.
struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn domain(kind: &'static str, message: impl ToString) -> Self {
        Self {
            code: 1,
            kind,
            message: message.to_string(),
        }
    }

    fn parse(message: impl ToString) -> Self {
        Self {
            code: 2,
            kind: "parse",
            message: message.to_string(),
        }
    }
}

impl From<PolyError> for Failure {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::Parse { .. } => Failure::parse(e),
            other => Failure::domain("algebra", other),
        }
    }
}

impl From<BraidError> for Failure {
    fn from(e: BraidError) -> Self {
        match e {
            BraidError::Parse { .. }
            | BraidError::IndexOutOfRange { .. }
            | BraidError::InvalidBand { .. }
            | BraidError::StrandMismatch { .. } => Failure::parse(e),
            BraidError::Grid(g) => g.into(),
            other => Failure::domain("braid", other),
        }
    }
}

impl From<GridError> for Failure {
    fn from(e: GridError) -> Self {
        match e {
            GridError::Parse { .. }
            | GridError::InvalidGrid(_)
            | GridError::SizeMismatch { .. } => Failure::parse(e),
            GridError::TooLarge { .. } => Failure::domain("too_large", e),
            other => Failure::domain("grid", other),
        }
    }
}

impl From<AlexanderError> for Failure {
    fn from(e: AlexanderError) -> Self {
        match e {
            AlexanderError::Poly(p) => p.into(),
            other => Failure::domain("alexander", other),
        }
    }
}

impl From<RimError> for Failure {
    fn from(e: RimError) -> Self {
        match e {
            RimError::Braid(b) => b.into(),
            RimError::Poly(p) => p.into(),
            RimError::Grid(g) => g.into(),
            RimError::TooLarge { .. } => Failure::domain("too_large", e),
            other => Failure::domain("family", other),
        }
    }
}

/// Result data plus its human rendering.
struct Output {
    data: Value,
    human: String,
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> (i32, Report)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let echo: Vec<String> = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let mut report = Report::new(None, json!({ "argv": echo }));
            report.human = e.render().to_string();
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    report.result = Some(json!({ "text": report.human }));
                    0
                }
                _ => {
                    report.error = Some(ErrorReport {
                        kind: "usage".into(),
                        message: e.kind().to_string(),
                    });
                    2
                }
            };
            return (code, report);
        }
    };
    let name = match &cli.command {
        Command::Alex(_) => "alex",
        Command::Factor(_) => "factor",
        Command::Omega(_) => "omega",
        Command::GridHfk(_) => "grid-hfk",
        Command::Transverse(_) => "transverse",
        Command::RimFamily(_) => "rim-family",
    };
    let mut report = Report::new(Some(name.into()), json!({ "argv": echo }));
    report.json_target = cli.json.clone();
    let outcome = match &cli.command {
        Command::Alex(a) => alex(a),
        Command::Factor(a) => factor(a),
        Command::Omega(a) => omega(a),
        Command::GridHfk(a) => grid_hfk(a),
        Command::Transverse(a) => transverse(a),
        Command::RimFamily(a) => rim_family(a),
    };
    match outcome {
        Ok(out) => {
            report.result = Some(out.data);
            report.human = out.human;
            (0, report)
        }
        Err(f) => {
            report.human = format!("error: {}\n", f.message);
            report.error = Some(ErrorReport {
                kind: f.kind.into(),
                message: f.message,
            });
            (f.code, report)
        }
    }
}

fn cap(flag: Option<usize>) -> usize {
    flag.unwrap_or_else(gridhfk::default_cap)
}

fn poly_text(p: &LaurentPoly) -> String {
    p.to_string()
}

fn irr_pair(delta: &LaurentPoly, ring: Option<Ring>) -> Result<Value, Failure> {
    let rings = match ring {
        Some(Ring::Int) => return Err(Failure::parse("factor counts need --ring f2 or q")),
        Some(r) => vec![r],
        None => vec![Ring::Gf2, Ring::Rat],
    };
    let mut out = serde_json::Map::new();
    for r in rings {
        out.insert(r.name().into(), json!(alexander::irr_count(delta, r)?));
    }
    Ok(Value::Object(out))
}

fn alex(a: &AlexArgs) -> Result<Output, Failure> {
    let (delta, mut data, mut human) = if let Some(text) = &a.input.braid {
        let b = parse_braid(text)?;
        let delta = alexander_from_braid(&b)?;
        let data = json!({
            "braid": b.to_string(),
            "strands": b.strands(),
            "writhe": b.writhe(),
            "self_linking": b.self_linking()?,
            "polynomial": poly_text(&delta),
        });
        let human = format!(
            "braid        {b}\nself-linking {}\nΔ(t)         {delta}\n",
            b.self_linking()?
        );
        (delta, data, human)
    } else {
        let text = a.input.seifert.as_deref().unwrap_or_default();
        let v: Vec<Vec<i64>> = serde_json::from_str(text)
            .map_err(|e| Failure::parse(format!("Seifert matrix: {e}")))?;
        let delta = alexander_from_seifert(&v)?;
        let data = json!({ "seifert": v, "polynomial": poly_text(&delta) });
        let human = format!("Δ(t)         {delta}\n");
        (delta, data, human)
    };
    data["determinant"] = json!(alexander::knot_determinant(&delta).to_string());
    data["normalization"] = json!("symmetric, value 1 at t = 1");
    if a.irr || a.ring.is_some() {
        let irr = irr_pair(&delta, a.ring)?;
        for (k, v) in irr.as_object().unwrap() {
            let _ = writeln!(human, "Irr over {k:<4} {v}");
        }
        data["irr"] = irr;
    }
    Ok(Output { data, human })
}

fn parse_field_poly(text: &str, ring: Ring) -> Result<LaurentPoly, Failure> {
    if !ring.is_field() {
        return Err(Failure::parse("--ring must be f2 or q"));
    }
    Ok(LaurentPoly::parse(text, ring)?)
}

fn factor(a: &PolyArgs) -> Result<Output, Failure> {
    let p = parse_field_poly(&a.poly, a.ring)?;
    let f = polyalg::factor(&p)?;
    let mut human = format!("{p}\n  = ({})", f.unit);
    for (g, m) in &f.factors {
        let _ = write!(human, " * ({g})");
        if *m > 1 {
            let _ = write!(human, "^{m}");
        }
    }
    let _ = writeln!(human, "\nirreducible factors: {}", f.count());
    let data = json!({
        "poly": poly_text(&p),
        "ring": a.ring,
        "unit": poly_text(&f.unit),
        "factors": f.factors.iter().map(|(g, m)| json!({ "factor": poly_text(g), "multiplicity": m })).collect::<Vec<_>>(),
        "count": f.count(),
    });
    Ok(Output { data, human })
}

fn omega(a: &OmegaArgs) -> Result<Output, Failure> {
    let p = parse_field_poly(&a.poly, a.ring)?;
    let (value, mut data) = match &a.curve {
        Some(v) => {
            let s = polyalg::omega_substituted(&p, v)?;
            let data = json!({
                "substituted": poly_text(&s.substituted),
                "reduction": s.reduction.reducer,
                "univariate": poly_text(&s.reduction.univariate),
            });
            (s.value, data)
        }
        None => (polyalg::omega_ring(&p)?, json!({})),
    };
    data["poly"] = json!(poly_text(&p));
    data["ring"] = json!(a.ring);
    data["omega"] = json!(value);
    let human = format!("Ω = {value}\n");
    Ok(Output { data, human })
}

fn grid_hfk(a: &GridArgs) -> Result<Output, Failure> {
    let text = std::fs::read_to_string(&a.grid).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => {
            Failure::domain("io", format!("file not found: {}", a.grid.display()))
        }
        _ => Failure::domain("io", format!("{}: {e}", a.grid.display())),
    })?;
    let g = GridDiagram::parse(&text)?;
    let raw = gridhfk::homology_with_cap(&g, cap(a.max_size))?;
    let hfk = gridhfk::deconvolve(&raw, g.size())?;
    let chi = hfk.euler_characteristic();
    let mut human = format!("grid size {}\n  M    A  rank\n", g.size());
    for ((m, al), r) in hfk.iter() {
        let _ = writeln!(human, "{m:>3}  {al:>3}  {r:>4}");
    }
    let _ = writeln!(
        human,
        "total rank {}\nEuler characteristic {chi}",
        hfk.total()
    );
    let data = json!({
        "grid": { "x": g.x_rows().iter().map(|r| r + 1).collect::<Vec<_>>(), "o": g.o_rows().iter().map(|r| r + 1).collect::<Vec<_>>() },
        "size": g.size(),
        "tilde_total": raw.total(),
        "hfk": hfk,
        "total": hfk.total(),
        "euler_characteristic": poly_text(&chi),
    });
    Ok(Output { data, human })
}

fn transverse(a: &TransverseArgs) -> Result<Output, Failure> {
    let b = parse_braid(&a.braid)?;
    let sl = b.self_linking()?;
    let g = transverse_grid(&b)?;
    let limit = cap(a.max_size);
    if g.size() > limit {
        return Err(GridError::TooLarge {
            size: g.size(),
            cap: limit,
        }
        .into());
    }
    let variant = if a.minus {
        TransverseVariant::Minus
    } else {
        TransverseVariant::Plus
    };
    let c = gridhfk::transverse_state(&g, variant)?;
    let nonzero = gridhfk::is_nonzero_class_with_cap(&c, &g, limit)?;
    let state: Vec<usize> = c.states[0].rows().iter().map(|r| r + 1).collect();
    let human = format!(
        "braid {b}\nself-linking {sl}\ngrid size {}\nstate {:?}  (M, A) = ({}, {})\nclass is {}\n",
        g.size(),
        state,
        c.maslov,
        c.alexander,
        if nonzero { "nonzero" } else { "zero" }
    );
    let data = json!({
        "braid": b.to_string(),
        "self_linking": sl,
        "variant": variant,
        "grid": { "x": g.x_rows().iter().map(|r| r + 1).collect::<Vec<_>>(), "o": g.o_rows().iter().map(|r| r + 1).collect::<Vec<_>>() },
        "state": state,
        "maslov": c.maslov,
        "alexander": c.alexander,
        "nonzero": nonzero,
    });
    Ok(Output { data, human })
}

fn parse_indices(text: &str) -> Result<Vec<u32>, Failure> {
    let bad = || Failure::parse(format!("bad index set `{text}` (use a..b or a,b,c)"));
    if let Some((a, b)) = text.split_once("..") {
        let a: u32 = a.trim().parse().map_err(|_| bad())?;
        let b: u32 = b
            .trim()
            .trim_start_matches('=')
            .parse()
            .map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    text.split(',')
        .map(|s| s.trim().parse().map_err(|_| bad()))
        .collect()
}

fn rim_family(a: &FamilyArgs) -> Result<Output, Failure> {
    let (pattern, source) = match (&a.pattern.pattern_braid, &a.pattern.pattern_poly) {
        (Some(text), _) => {
            let b = parse_braid(text)?;
            (alexander_from_braid(&b)?, json!({ "braid": b.to_string() }))
        }
        (None, Some(text)) => (
            LaurentPoly::parse(text, Ring::Int)?,
            json!({ "poly": text }),
        ),
        (None, None) => unreachable!("clap enforces one pattern flag"),
    };
    let mut spec = FamilySpec::new(
        a.genus,
        a.curve.clone(),
        pattern,
        parse_indices(&a.indices)?,
    )
    .with_ring(a.ring);
    if let Some(text) = &a.base.base_omega {
        let v: OmegaValue = serde_json::from_value(match text.parse::<u64>() {
            Ok(n) => json!(n),
            Err(_) => json!(text),
        })
        .map_err(|_| Failure::parse(format!("bad Ω value `{text}` (a count or -inf)")))?;
        spec = spec.with_base(v);
    }
    if let Some(text) = &a.base.base_quasipositive {
        let w = QuasipositiveWord::parse(text)?;
        spec = spec.with_quasipositive_base(&w, cap(a.max_size))?;
    }
    let cert = rimcalc::certify_family(&spec)?;
    let mut human = String::from("  n  Ω (f2)  Ω (q)  Lefschetz polynomial\n");
    for r in &cert.rows {
        let mut lef = r.lef_poly.clone();
        // GF(2) results are shown with 0/1 coefficients next to the integer form
        if a.ring == Ring::Gf2 {
            let reduced = LaurentPoly::parse(&r.lef_poly, Ring::Gf2)?;
            lef = format!("{lef}  ≡ {reduced} mod 2");
        }
        let _ = writeln!(
            human,
            "{:>3}  {:>6}  {:>5}  {lef}",
            r.n,
            r.omega_f2.to_string(),
            r.omega_q.to_string()
        );
    }
    for line in &cert.hypothesis_log {
        let _ = writeln!(human, "- {line}");
    }
    let _ = writeln!(
        human,
        "verdict: {}",
        if cert.verdict {
            "pairwise distinct"
        } else {
            "not certified"
        }
    );
    let mut data = serde_json::to_value(&cert).expect("certificate serializes");
    data["pattern_source"] = source;
    Ok(Output { data, human })
}

/// Used by the binary: prints or writes the report and returns the exit code.
pub fn emit(code: i32, report: &Report) -> i32 {
    match &report.json_target {
        Some(None) => println!("{}", report.to_json()),
        Some(Some(path)) => {
            if let Err(e) = std::fs::write(path, report.to_json() + "\n") {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 1;
            }
            print_human(code, report);
        }
        None => print_human(code, report),
    }
    code
}

fn print_human(code: i32, report: &Report) {
    if code == 0 {
        print!("{}", report.human);
    } else {
        eprint!("{}", report.human);
    }
}
