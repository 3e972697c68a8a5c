//! The `isocrystal-lab` command line.
//!
//! [`run`] is the whole program minus process plumbing, so it can be driven
//! from tests with in-memory streams.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::sync::Arc;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::arith::{format_rational, parse_rational, require_prime, Q};
use crate::cartier::{CartierContext, CartierElement, DEFAULT_VCAP};
use crate::dieudonne::{
    a_number, dualize, gmn_module, np_of_display, np_sigma_trivial, serre_tate_torsion, DieudonnePresentation,
    DisplayNormalForm, Matrix,
};
use crate::error::{Error, ErrorKind, Result};
use crate::np::{Comparison, NewtonPolygon, ValuationPolygon};
use crate::poset::{specialization_witness, NpPoset};
use crate::semimod::SemiModule;
use crate::series::{artin_hasse, is_p_integral};
use crate::weil::{honda_tate, LocalInvariant, Place, WeilNumber};
use crate::witt::{ghost, WittContext, WittElement};

/// Default Witt precision when neither `--precision` nor `ISOLAB_PRECISION`
/// is given.
pub const DEFAULT_PRECISION: u32 = 8;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

const GRAMMAR: &str = "\
Polygon syntax: a '+'-separated list of terms 'k*(m,n)' or '(m,n)', where
(m,n) is a coprime pair contributing a segment of slope m/(m+n) and length
m+n, repeated k times. Whitespace is ignored. Example: 2*(1,0)+(2,1)+(1,5).
Cartier elements are sums of terms V^a<c>F^b in that order, any part
optional (V, F^2, <x+1>, p), or the JSON object printed by the cartier
commands; field elements are polynomials in x.
In the poset commands 'iso' and 'ord' name the isoclinic and ordinary
polygons of the given height and dimension.

--input reads a JSON object (from a file, '-' for stdin, or inline when it
starts with '{'); each key naming an option of the subcommand, or a global
option such as p, supplies that option unless it is given on the command
line. Other keys are ignored, so the JSON printed by one command can be fed
to another.

Exit status: 0 success, 2 invalid input, 3 insufficient precision,
64 usage error.";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Parser, Debug)]
#[command(name = "isocrystal-lab", version, about = "Exact Newton polygon and Dieudonné module computations", after_help = GRAMMAR)]
struct Cli {
    /// The prime p.
    #[arg(long, global = true, default_value_t = 2)]
    p: u64,
    /// Degree of the residue field F_{p^m}.
    #[arg(long, global = true, default_value_t = 1)]
    m: u32,
    /// Witt precision N (default 8, or ISOLAB_PRECISION).
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// V-cap of the truncated Cartier ring.
    #[arg(long, global = true, default_value_t = DEFAULT_VCAP)]
    vcap: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// JSON arguments: a path, '-' for stdin, or an inline object.
    #[arg(long, global = true)]
    input: Option<String>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

/// Validated global settings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub p: u64,
    pub m: u32,
    pub precision: u32,
    pub vcap: u32,
    pub format: Format,
    pub seed: u64,
}

impl RunConfig {
    fn from_cli(cli: &Cli, env_precision: Option<String>) -> Result<Self> {
        require_prime(cli.p)?;
        if cli.m == 0 {
            return Err(Error::invalid("--m must be at least 1"));
        }
        let precision = match (cli.precision, env_precision) {
            (Some(n), _) => n,
            (None, Some(s)) => s
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("ISOLAB_PRECISION='{s}' is not an integer")))?,
            (None, None) => DEFAULT_PRECISION,
        };
        if precision < 2 {
            return Err(Error::invalid("precision must be at least 2"));
        }
        if cli.vcap == 0 {
            return Err(Error::invalid("--vcap must be at least 1"));
        }
        Ok(RunConfig {
            p: cli.p,
            m: cli.m,
            precision,
            vcap: cli.vcap,
            format: cli.format,
            seed: cli.seed,
        })
    }

    fn witt(&self) -> Result<Arc<WittContext>> {
        Ok(Arc::new(WittContext::new(self.p, self.m, self.precision)?))
    }
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Newton polygons.
    #[command(subcommand)]
    Np(NpCmd),
    /// p-adic polygon of a polynomial.
    NpPoly(NpPolyArgs),
    /// q-Weil numbers.
    #[command(subcommand)]
    Weil(WeilCmd),
    /// Truncated Witt vectors.
    #[command(subcommand)]
    Witt(WittCmd),
    /// The truncated Cartier ring.
    #[command(subcommand)]
    Cartier(CartierCmd),
    /// Dieudonné modules.
    #[command(subcommand)]
    Dieudonne(DieudonneCmd),
    /// (m,n)-semimodules.
    #[command(subcommand)]
    Semimod(SemimodCmd),
    /// Posets of Newton polygons.
    #[command(subcommand)]
    Poset(PosetCmd),
}

#[derive(Args, Debug)]
struct PairsArg {
    /// Polygon, e.g. "2*(1,0)+(2,1)".
    #[arg(long)]
    pairs: String,
}

#[derive(Subcommand, Debug)]
enum NpCmd {
    /// Parse a polygon and report its basic data.
    Construct(PairsArg),
    /// Compare two polygons.
    Compare {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Dimension of the open Newton polygon stratum.
    Dim(PairsArg),
    /// Dimension of the stratum in the principally polarized case.
    Sdim(PairsArg),
    /// The dual polygon.
    Dual(PairsArg),
    /// Multiplicity of slope 0.
    PRank(PairsArg),
}

#[derive(Args, Debug)]
struct NpPolyArgs {
    /// Rational coefficients, leading first, comma separated.
    #[arg(long)]
    coeffs: String,
    /// Divide slopes by this; the Newton polygon is reported when the
    /// result has integral breakpoints.
    #[arg(long)]
    scale: Option<u32>,
}

#[derive(Args, Debug)]
struct WeilArgs {
    /// Minimal polynomial, leading first, comma separated.
    #[arg(long, conflicts_with = "beta")]
    poly: Option<String>,
    /// Real trace: π + π̄ = β.
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<i64>,
    /// q = p^n.
    #[arg(long, default_value_t = 1)]
    n: u32,
}

#[derive(Subcommand, Debug)]
enum WeilCmd {
    /// Check that a polynomial defines a q-Weil number.
    Verify(WeilArgs),
    /// Honda–Tate invariants.
    Classify(WeilArgs),
}

#[derive(Subcommand, Debug)]
enum WittCmd {
    /// Ghost components of integral Witt coordinates, or with --check a
    /// randomized test that the ghost map is a ring homomorphism.
    Ghost {
        /// Integer Witt coordinates, comma separated.
        #[arg(long, allow_hyphen_values = true, required_unless_present = "check")]
        coords: Option<String>,
        /// Number of random pairs to test.
        #[arg(long)]
        check: Option<u32>,
    },
    /// Arithmetic on W_N(F_{p^m}); coordinates are ';'-separated field
    /// elements.
    Ops {
        #[arg(long, value_enum)]
        op: WittOp,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WittOp {
    Add,
    Sub,
    Mul,
    Sigma,
    SigmaInv,
    Verschiebung,
}

#[derive(Subcommand, Debug)]
enum CartierCmd {
    /// Product of two elements written as sums of V^a<c>F^b.
    Mul {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Action on a Witt vector given by ';'-separated coordinates.
    Act {
        #[arg(long)]
        elem: String,
        #[arg(long)]
        x: String,
    },
    /// Coefficients of the Artin–Hasse series.
    ArtinHasse {
        #[arg(long, default_value_t = 20)]
        degree: usize,
    },
}

#[derive(Args, Debug)]
struct PairArg {
    /// Coprime pair "m,n".
    #[arg(long)]
    pair: String,
}

#[derive(Subcommand, Debug)]
enum DieudonneCmd {
    /// The module of G_{m,n}.
    Gmn(PairArg),
    /// a-number of G_{m,n}.
    ANumber(PairArg),
    /// The dual of G_{m,n}.
    Dual(PairArg),
    /// Slopes of a display normal form.
    NpDisplay {
        /// Use the normal form of G_{m,n}.
        #[arg(long, conflicts_with_all = ["h", "s", "entries"])]
        pair: Option<String>,
        #[arg(long, requires = "s")]
        h: Option<u32>,
        #[arg(long, requires = "h")]
        s: Option<u32>,
        /// Entries "i,j=value;…" with 1 ≤ i ≤ s ≤ j ≤ h.
        #[arg(long, default_value = "")]
        entries: String,
    },
    /// Slopes of F = Aσ for A with σ-invariant entries.
    NpSigmaTrivial {
        /// Rows separated by ';', entries by ','.
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Elementary divisors of the Serre–Tate relation module.
    SerreTateTorsion {
        /// Sorted exponents e_1 ≤ … ≤ e_g.
        #[arg(long)]
        exponents: String,
    },
}

#[derive(Subcommand, Debug)]
enum SemimodCmd {
    /// Normalize `elements ∪ [tail, ∞)`.
    Normalize {
        #[arg(long)]
        pair: String,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        elements: String,
        #[arg(long, allow_hyphen_values = true)]
        tail: i64,
    },
    /// Dual of a normalized semimodule.
    Dual {
        #[arg(long)]
        pair: String,
        #[arg(long, default_value = "")]
        heads: String,
    },
    /// All normalized semimodules.
    Enumerate {
        #[arg(long)]
        pair: String,
    },
    /// Semimodule with the given jump sequence.
    FromJumps {
        #[arg(long)]
        pair: String,
        #[arg(long, allow_hyphen_values = true)]
        jumps: String,
    },
}

#[derive(Args, Debug)]
struct PosetArgs {
    #[arg(long)]
    h: u32,
    #[arg(long)]
    d: u32,
    /// Restrict to symmetric polygons (requires h = 2d).
    #[arg(long)]
    symmetric: bool,
}

#[derive(Subcommand, Debug)]
enum PosetCmd {
    /// Elements, ranks and covers.
    Build(PosetArgs),
    /// A longest chain between two polygons.
    Chain {
        #[command(flatten)]
        poset: PosetArgs,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// A saturated chain from gamma up to beta.
    Witness {
        #[arg(long)]
        beta: String,
        #[arg(long)]
        gamma: String,
    },
    /// Hasse diagram in DOT.
    Dot(PosetArgs),
}

/// What a command produced: a JSON value and, for posets, a DOT rendering.
struct Output {
    json: Value,
    dot: Option<String>,
    /// Print the DOT rendering whatever the format.
    always_dot: bool,
}

impl From<Value> for Output {
    fn from(json: Value) -> Self {
        Output {
            json,
            dot: None,
            always_dot: false,
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e.kind() {
        ErrorKind::Precision => EXIT_PRECISION,
        _ => EXIT_VALIDATION,
    }
}

/// Runs the program on `args` (including the program name) and returns the
/// exit status.
pub fn run(args: &[String], stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    run_with_env(args, std::env::var("ISOLAB_PRECISION").ok(), stdin, stdout, stderr)
}

/// [`run`] with an explicit value for `ISOLAB_PRECISION`.
pub fn run_with_env(
    args: &[String],
    env_precision: Option<String>,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let args = match expand_input(args, stdin) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code(&e);
        }
    };
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind as K;
            return if matches!(e.kind(), K::DisplayHelp | K::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                EXIT_OK
            } else {
                let _ = write!(stderr, "{e}");
                EXIT_USAGE
            };
        }
    };
    let result = RunConfig::from_cli(&cli, env_precision).and_then(|cfg| {
        let out = dispatch(&cli.cmd, &cfg)?;
        render(&out, cfg.format)
    });
    match result {
        Ok(text) => {
            let _ = stdout.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn render(out: &Output, format: Format) -> Result<String> {
    if out.always_dot {
        if let Some(dot) = &out.dot {
            return Ok(dot.clone());
        }
    }
    Ok(match format {
        Format::Json => format!("{}\n", out.json),
        Format::Text => text_of(&out.json),
        Format::Dot => out
            .dot
            .clone()
            .ok_or_else(|| Error::invalid("--format dot is only available for poset commands"))?,
    })
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(item_text).collect::<Vec<_>>().join(", "),
        Value::Object(_) => v.to_string(),
        other => other.to_string(),
    }
}

fn item_text(v: &Value) -> String {
    match v {
        Value::Array(items) => format!("({})", items.iter().map(item_text).collect::<Vec<_>>().join(",")),
        other => scalar_text(other),
    }
}

fn text_of(v: &Value) -> String {
    match v {
        Value::Object(map) => map.iter().map(|(k, v)| format!("{k}: {}\n", scalar_text(v))).collect(),
        other => format!("{}\n", scalar_text(other)),
    }
}

/// Appends `--key value` for every key of the `--input` object that names an
/// option of the selected subcommand and is not already on the command line.
fn expand_input(args: &[String], stdin: &mut dyn Read) -> Result<Vec<String>> {
    let Some(pos) = args.iter().position(|a| a == "--input" || a.starts_with("--input=")) else {
        return Ok(args.to_vec());
    };
    let source = match args[pos].strip_prefix("--input=") {
        Some(v) => v.to_string(),
        None => args
            .get(pos + 1)
            .cloned()
            .ok_or_else(|| Error::invalid("--input needs a value"))?,
    };
    let payload = if source == "-" {
        let mut s = String::new();
        stdin
            .read_to_string(&mut s)
            .map_err(|e| Error::invalid(format!("reading stdin: {e}")))?;
        s
    } else if source.trim_start().starts_with('{') {
        source
    } else {
        std::fs::read_to_string(&source).map_err(|e| Error::invalid(format!("reading {source}: {e}")))?
    };
    let value: Value = serde_json::from_str(&payload).map_err(|e| Error::Parse(format!("malformed JSON: {e}")))?;
    let Value::Object(map) = value else {
        return Err(Error::Parse("--input must be a JSON object".into()));
    };

    // Locate the subcommand from the leading words of the command line.
    let mut cmd = Cli::command();
    let mut i = 1;
    while i < args.len() {
        let word = &args[i];
        if word.starts_with("--") {
            let takes_value = cmd
                .get_arguments()
                .chain(Cli::command().get_arguments())
                .find(|a| a.get_long() == Some(word.trim_start_matches('-')))
                .is_some_and(|a| a.get_action().takes_values());
            i += if takes_value { 2 } else { 1 };
            continue;
        }
        match cmd.find_subcommand(word) {
            Some(sub) => {
                cmd = sub.clone();
                i += 1;
            }
            None => break,
        }
    }
    let root = Cli::command();
    let mut out = args.to_vec();
    for (key, v) in map {
        let long = key.replace('_', "-");
        let Some(arg) = cmd
            .get_arguments()
            .chain(root.get_arguments())
            .find(|a| a.get_long() == Some(long.as_str()))
        else {
            continue;
        };
        if long == "input"
            || args
                .iter()
                .any(|a| a == &format!("--{long}") || a.starts_with(&format!("--{long}=")))
        {
            continue;
        }
        let flag = !arg.get_action().takes_values();
        let text = match &v {
            Value::Bool(b) if flag => {
                if *b {
                    out.push(format!("--{long}"));
                }
                continue;
            }
            Value::Null => continue,
            Value::String(s) => s.clone(),
            Value::Number(n) => n.to_string(),
            Value::Array(items) => items.iter().map(scalar_text).collect::<Vec<_>>().join(","),
            other => other.to_string(),
        };
        out.push(format!("--{long}={text}"));
    }
    Ok(out)
}

fn parse_list<T: std::str::FromStr>(s: &str, sep: char, what: &str) -> Result<Vec<T>> {
    s.split(sep)
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad {what} '{t}'"))))
        .collect()
}

fn parse_pair(s: &str) -> Result<(u32, u32)> {
    match parse_list::<u32>(s, ',', "pair entry")?.as_slice() {
        [m, n] => Ok((*m, *n)),
        _ => Err(Error::Parse(format!("expected a pair 'm,n', got '{s}'"))),
    }
}

fn polygon(s: &str) -> Result<NewtonPolygon> {
    s.parse()
}

fn rats(v: &[Q]) -> Value {
    v.iter().map(format_rational).collect()
}

fn strs<T: ToString>(v: &[T]) -> Value {
    v.iter().map(|x| Value::String(x.to_string())).collect()
}

fn polygon_json(x: &NewtonPolygon) -> Value {
    json!({
        "pairs": x.to_string(),
        "height": x.height(),
        "dim": x.dim(),
        "slopes": rats(&x.slopes()),
        "breakpoints": x.breakpoints(),
        "symmetric": x.is_symmetric(),
        "p_rank": x.p_rank(),
    })
}

fn valuation_json(vp: &ValuationPolygon) -> Value {
    json!({
        "p": vp.prime(),
        "points": vp.points().iter().map(|(j, v)| json!([j, v])).collect::<Vec<_>>(),
        "vertices": vp.vertices().iter().map(|(x, y)| json!([format_rational(x), format_rational(y)])).collect::<Vec<_>>(),
        "segments": vp.segments().iter().map(|(s, w)| json!({"slope": format_rational(s), "width": w})).collect::<Vec<_>>(),
        "slopes": rats(&vp.slopes()),
    })
}

fn dispatch(cmd: &Cmd, cfg: &RunConfig) -> Result<Output> {
    match cmd {
        Cmd::Np(c) => np_cmd(c),
        Cmd::NpPoly(a) => {
            let coeffs: Vec<Q> = a
                .coeffs
                .split(',')
                .map(|t| parse_rational(t.trim()))
                .collect::<Result<_>>()?;
            let vp = ValuationPolygon::of_polynomial(&coeffs, cfg.p)?;
            let mut out = valuation_json(&vp);
            if let Some(scale) = a.scale {
                if scale == 0 {
                    return Err(Error::invalid("--scale must be positive"));
                }
                let k = Q::from_integer(BigInt::from(scale));
                out["normalized_slopes"] = rats(&vp.slopes().iter().map(|s| s / &k).collect::<Vec<_>>());
                if let Ok(np) = vp.normalized(scale) {
                    out["normalized"] = Value::String(np.to_string());
                }
            }
            Ok(out.into())
        }
        Cmd::Weil(c) => weil_cmd(c, cfg),
        Cmd::Witt(c) => witt_cmd(c, cfg),
        Cmd::Cartier(c) => cartier_cmd(c, cfg),
        Cmd::Dieudonne(c) => dieudonne_cmd(c, cfg),
        Cmd::Semimod(c) => semimod_cmd(c),
        Cmd::Poset(c) => poset_cmd(c),
    }
}

fn np_cmd(cmd: &NpCmd) -> Result<Output> {
    Ok(match cmd {
        NpCmd::Construct(a) => polygon_json(&polygon(&a.pairs)?),
        NpCmd::Compare { a, b } => {
            let (x, y) = (polygon(a)?, polygon(b)?);
            let relation = match x.compare(&y) {
                Comparison::Equal => "equal",
                Comparison::ABelowB => "a_below_b",
                Comparison::AAboveB => "a_above_b",
                Comparison::Incomparable => "incomparable",
                Comparison::DifferentEndpoints => "different_endpoints",
            };
            json!({"a": x.to_string(), "b": y.to_string(), "relation": relation, "a_precedes_b": x.precedes(&y)})
        }
        NpCmd::Dim(a) => json!(polygon(&a.pairs)?.dim_count()),
        NpCmd::Sdim(a) => json!(polygon(&a.pairs)?.sdim()?),
        NpCmd::Dual(a) => polygon_json(&polygon(&a.pairs)?.dual()),
        NpCmd::PRank(a) => json!(polygon(&a.pairs)?.p_rank()),
    }
    .into())
}

fn weil_number(a: &WeilArgs, cfg: &RunConfig) -> Result<WeilNumber> {
    match (&a.poly, a.beta) {
        (Some(poly), None) => {
            let coeffs: Vec<Q> = poly
                .split(',')
                .map(|t| parse_rational(t.trim()))
                .collect::<Result<_>>()?;
            WeilNumber::verify_rational(&coeffs, cfg.p, a.n)
        }
        (None, Some(beta)) => WeilNumber::from_real_trace(beta, cfg.p, a.n),
        _ => Err(Error::invalid("give exactly one of --poly and --beta")),
    }
}

fn weil_json(w: &WeilNumber) -> Value {
    json!({
        "poly": w.minpoly().iter().map(BigInt::to_string).collect::<Vec<_>>().join(","),
        "p": w.p(),
        "n": w.n(),
        "q": w.q().to_string(),
        "case": w.case().to_string(),
        "root_slopes": rats(&w.root_slopes()),
    })
}

fn invariant_json(l: &LocalInvariant) -> Value {
    match &l.place {
        Place::AboveP { degree, slope } => {
            json!({"place": "p", "degree": degree, "slope": format_rational(slope), "inv": format_rational(&l.inv)})
        }
        Place::Infinite => json!({"place": "inf", "inv": format_rational(&l.inv)}),
    }
}

fn weil_cmd(cmd: &WeilCmd, cfg: &RunConfig) -> Result<Output> {
    Ok(match cmd {
        WeilCmd::Verify(a) => weil_json(&weil_number(a, cfg)?),
        WeilCmd::Classify(a) => {
            let w = weil_number(a, cfg)?;
            let ht = honda_tate(&w)?;
            let mut out = weil_json(&w);
            out["e0"] = json!(ht.e0);
            out["e"] = json!(ht.e);
            out["d"] = json!(ht.d);
            out["g"] = json!(ht.g);
            out["albert"] = json!(ht.albert.to_string());
            out["slopes"] = rats(&ht.slopes);
            out["newton_polygon"] = json!(ht.newton_polygon()?.to_string());
            out["local_invariants"] = ht.local_invariants.iter().map(invariant_json).collect();
            out
        }
    }
    .into())
}

fn witt_coords(ctx: &Arc<WittContext>, s: &str) -> Result<WittElement> {
    let coords = s
        .split(';')
        .map(|t| ctx.field().parse(t.trim()))
        .collect::<Result<Vec<_>>>()?;
    if coords.len() > ctx.precision() as usize {
        return Err(Error::invalid(format!(
            "{} coordinates exceed precision {}",
            coords.len(),
            ctx.precision()
        )));
    }
    Ok(WittElement::from_coordinates(ctx, &coords))
}

fn witt_json(x: &WittElement) -> Value {
    let ctx = x.context();
    json!({
        "coords": x.coordinates().iter().map(|c| ctx.field().render(c)).collect::<Vec<_>>().join(";"),
        "lift": ctx.render(x.lift()),
        "valuation": x.valuation().to_string(),
    })
}

/// Random pairs of integral Witt vectors with coordinates in `[0, p)`;
/// checks that ghost components of the Witt sum and product are the sums
/// and products of ghost components.
fn ghost_check(trials: u32, cfg: &RunConfig) -> Result<Value> {
    use crate::witt::{witt_product_integral, witt_sum_integral};
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.precision as usize;
    let mut failures = 0u32;
    for _ in 0..trials {
        let a: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(0..cfg.p))).collect();
        let b: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(0..cfg.p))).collect();
        let (ga, gb) = (ghost(&a, cfg.p), ghost(&b, cfg.p));
        let s = witt_sum_integral(&a, &b, cfg.p).ok_or_else(|| Error::invalid("non-integral Witt sum"))?;
        let m = witt_product_integral(&a, &b, cfg.p).ok_or_else(|| Error::invalid("non-integral Witt product"))?;
        let (gs, gm) = (ghost(&s, cfg.p), ghost(&m, cfg.p));
        let ok = (0..n).all(|k| gs[k] == &ga[k] + &gb[k] && gm[k] == &ga[k] * &gb[k]);
        failures += u32::from(!ok);
    }
    Ok(
        json!({"p": cfg.p, "precision": n, "seed": cfg.seed, "trials": trials, "failures": failures, "ok": failures == 0}),
    )
}

fn witt_cmd(cmd: &WittCmd, cfg: &RunConfig) -> Result<Output> {
    Ok(match cmd {
        WittCmd::Ghost {
            coords: _,
            check: Some(t),
        } => ghost_check(*t, cfg)?,
        WittCmd::Ghost {
            coords: Some(c),
            check: None,
        } => {
            let coords: Vec<BigInt> = parse_list(c, ',', "Witt coordinate")?;
            json!({"ghost": strs(&ghost(&coords, cfg.p))})
        }
        WittCmd::Ghost { .. } => return Err(Error::invalid("give --coords or --check")),
        WittCmd::Ops { op, a, b } => {
            let ctx = cfg.witt()?;
            let x = witt_coords(&ctx, a)?;
            let other = || -> Result<WittElement> {
                let b = b.as_deref().ok_or_else(|| Error::invalid("this operation needs --b"))?;
                witt_coords(&ctx, b)
            };
            let r = match op {
                WittOp::Add => x.add(&other()?)?,
                WittOp::Sub => x.sub(&other()?)?,
                WittOp::Mul => x.mul(&other()?)?,
                WittOp::Sigma => x.sigma(),
                WittOp::SigmaInv => x.sigma_inv(),
                WittOp::Verschiebung => x.verschiebung(),
            };
            witt_json(&r)
        }
    }
    .into())
}

fn cartier_json(x: &CartierElement) -> Value {
    let ctx = x.context();
    json!({
        "p": ctx.p(),
        "m": ctx.field().degree(),
        "vcap": ctx.vcap(),
        "element": x.to_string(),
        "terms": x.terms().iter().map(|(a, b, c)| json!({"v": a, "f": b, "c": ctx.field().render(c)})).collect::<Vec<_>>(),
        "truncated": x.is_truncated(),
    })
}

/// Reads the text syntax or the JSON form emitted by [`cartier_json`].
fn cartier_element(ctx: &Arc<CartierContext>, s: &str) -> Result<CartierElement> {
    if !s.trim_start().starts_with('{') {
        return CartierElement::parse(ctx, s);
    }
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(format!("malformed JSON: {e}")))?;
    for (key, want) in [
        ("p", ctx.p()),
        ("m", ctx.field().degree().into()),
        ("vcap", ctx.vcap().into()),
    ] {
        if let Some(got) = v.get(key) {
            if got.as_u64() != Some(want) {
                return Err(Error::ContextMismatch);
            }
        }
    }
    let terms = v["terms"]
        .as_array()
        .ok_or_else(|| Error::Parse("Cartier JSON needs a \"terms\" array".into()))?;
    let mut raw = Vec::with_capacity(terms.len());
    for t in terms {
        let exp = |k: &str| {
            t[k].as_u64()
                .and_then(|e| u32::try_from(e).ok())
                .ok_or_else(|| Error::Parse(format!("term needs an integer \"{k}\"")))
        };
        let c = t["c"]
            .as_str()
            .ok_or_else(|| Error::Parse("term needs a string \"c\"".into()))?;
        raw.push((exp("v")?, ctx.field().parse(c)?, exp("f")?));
    }
    Ok(CartierElement::normalize(ctx, &raw))
}

fn cartier_cmd(cmd: &CartierCmd, cfg: &RunConfig) -> Result<Output> {
    Ok(match cmd {
        CartierCmd::Mul { a, b } => {
            let ctx = CartierContext::new(cfg.p, cfg.m, cfg.vcap)?;
            let x = cartier_element(&ctx, a)?;
            let y = cartier_element(&ctx, b)?;
            cartier_json(&x.mul(&y)?)
        }
        CartierCmd::Act { elem, x } => {
            let ctx = CartierContext::new(cfg.p, cfg.m, cfg.vcap)?;
            let e = cartier_element(&ctx, elem)?;
            let w = witt_coords(&cfg.witt()?, x)?;
            witt_json(&e.act(&w)?)
        }
        CartierCmd::ArtinHasse { degree } => {
            let coeffs = artin_hasse(cfg.p, *degree)?;
            json!({
                "p": cfg.p,
                "coefficients": rats(&coeffs),
                "p_integral": coeffs.iter().all(|c| is_p_integral(c, cfg.p)),
            })
        }
    }
    .into())
}

fn matrix_json(ctx: &WittContext, m: &Matrix) -> Value {
    m.iter()
        .map(|row| row.iter().map(|x| ctx.render(x)).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";")
        .into()
}

fn presentation_json(pres: &DieudonnePresentation, pair: (u32, u32)) -> Result<Value> {
    let ctx = pres.context();
    let slopes = np_sigma_trivial(ctx, pres.f_matrix())?.to_newton_polygon()?;
    Ok(json!({
        "p": ctx.p(),
        "m": ctx.degree(),
        "precision": ctx.precision(),
        "pair": format!("{},{}", pair.0, pair.1),
        "height": pres.height(),
        "dim": pres.dim(),
        "a_number": a_number(pres)?,
        "newton_polygon": slopes.to_string(),
        "f": matrix_json(ctx, pres.f_matrix()),
        "v": pres.v_matrix().map(|v| matrix_json(ctx, v)),
    }))
}

fn dieudonne_cmd(cmd: &DieudonneCmd, cfg: &RunConfig) -> Result<Output> {
    Ok(match cmd {
        DieudonneCmd::Gmn(a) => {
            let (m, n) = parse_pair(&a.pair)?;
            presentation_json(&gmn_module(m, n, cfg.witt()?)?, (m, n))?
        }
        DieudonneCmd::ANumber(a) => {
            let (m, n) = parse_pair(&a.pair)?;
            json!(a_number(&gmn_module(m, n, cfg.witt()?)?)?)
        }
        DieudonneCmd::Dual(a) => {
            let (m, n) = parse_pair(&a.pair)?;
            presentation_json(&dualize(&gmn_module(m, n, cfg.witt()?)?)?, (n, m))?
        }
        DieudonneCmd::NpDisplay { pair, h, s, entries } => {
            let ctx = cfg.witt()?;
            let dnf = match (pair, h, s) {
                (Some(pair), _, _) => {
                    let (m, n) = parse_pair(pair)?;
                    DisplayNormalForm::gmn(m, n, ctx)?
                }
                (None, Some(h), Some(s)) => {
                    let mut map = BTreeMap::new();
                    for item in entries.split(';').map(str::trim).filter(|t| !t.is_empty()) {
                        let (idx, val) =
                            item.split_once('=').ok_or_else(|| Error::Parse(format!("bad entry '{item}'")))?;
                        map.insert(parse_pair(idx)?, ctx.parse(val)?);
                    }
                    DisplayNormalForm::new(ctx, *h, *s, map)?
                }
                _ => return Err(Error::invalid("give --pair, or --h and --s")),
            };
            let np = np_of_display(&dnf)?;
            let mut out = polygon_json(&np);
            let ctx = dnf.context();
            out["f"] = matrix_json(ctx, &dnf.matrix());
            out["p"] = json!(ctx.p());
            out["m"] = json!(ctx.degree());
            out["precision"] = json!(ctx.precision());
            out
        }
        DieudonneCmd::NpSigmaTrivial { matrix } => {
            let ctx = cfg.witt()?;
            let rows: Matrix = matrix
                .split(';')
                .map(|row| row.split(',').map(|x| ctx.parse(x)).collect::<Result<Vec<_>>>())
                .collect::<Result<_>>()?;
            if rows.iter().any(|r| r.len() != rows.len()) {
                return Err(Error::invalid("matrix must be square"));
            }
            let vp = np_sigma_trivial(&ctx, &rows)?;
            let mut out = valuation_json(&vp);
            out["newton_polygon"] = json!(vp.to_newton_polygon()?.to_string());
            out
        }
        DieudonneCmd::SerreTateTorsion { exponents } => {
            let e: Vec<u32> = parse_list(exponents, ',', "exponent")?;
            let t = serre_tate_torsion(&e, cfg.p)?;
            json!({"p": t.p, "exponents": t.exponents, "orders": strs(&t.orders), "order_exponents": t.order_exponents()})
        }
    }
    .into())
}

fn semimod_json(a: &SemiModule) -> Value {
    json!({
        "pair": format!("{},{}", a.m(), a.n()),
        "heads": a.heads(),
        "set": a.to_string(),
        "principal": a.is_principal(),
    })
}

fn semimod_cmd(cmd: &SemimodCmd) -> Result<Output> {
    Ok(match cmd {
        SemimodCmd::Normalize { pair, elements, tail } => {
            let (m, n) = parse_pair(pair)?;
            semimod_json(&SemiModule::normalize(
                &parse_list(elements, ',', "element")?,
                *tail,
                m,
                n,
            )?)
        }
        SemimodCmd::Dual { pair, heads } => {
            let (m, n) = parse_pair(pair)?;
            semimod_json(&SemiModule::new(m, n, parse_list(heads, ',', "head")?)?.dual())
        }
        SemimodCmd::Enumerate { pair } => {
            let (m, n) = parse_pair(pair)?;
            let all = SemiModule::enumerate(m, n)?;
            json!({
                "pair": format!("{m},{n}"),
                "count": all.len(),
                "semimodules": all.iter().map(|a| a.heads().to_vec()).collect::<Vec<_>>(),
            })
        }
        SemimodCmd::FromJumps { pair, jumps } => {
            let (m, n) = parse_pair(pair)?;
            semimod_json(&SemiModule::from_jumps(&parse_list(jumps, ',', "jump")?, m, n)?)
        }
    }
    .into())
}

fn named_polygon(s: &str, h: u32, d: u32) -> Result<NewtonPolygon> {
    match s.trim() {
        "iso" => NewtonPolygon::isoclinic(h, d),
        "ord" => NewtonPolygon::ordinary(h, d),
        other => polygon(other),
    }
}

fn chain_json(chain: &[NewtonPolygon]) -> Value {
    json!({"length": chain.len().saturating_sub(1), "chain": strs(chain)})
}

fn poset_json(poset: &NpPoset) -> Value {
    json!({
        "h": poset.height(),
        "d": poset.dim(),
        "symmetric": poset.is_symmetric(),
        "ranked": poset.is_ranked(),
        "elements": poset.elements().iter().enumerate().map(|(i, x)| json!({
            "pairs": x.to_string(),
            "rank": poset.rank(i),
            "regions": poset.region_count(i),
        })).collect::<Vec<_>>(),
        "covers": poset.covers(),
    })
}

fn poset_cmd(cmd: &PosetCmd) -> Result<Output> {
    match cmd {
        PosetCmd::Build(a) | PosetCmd::Dot(a) => {
            let poset = NpPoset::build(a.h, a.d, a.symmetric)?;
            Ok(Output {
                json: poset_json(&poset),
                dot: Some(poset.to_dot()),
                always_dot: matches!(cmd, PosetCmd::Dot(_)),
            })
        }
        PosetCmd::Chain { poset: a, from, to } => {
            let poset = NpPoset::build(a.h, a.d, a.symmetric)?;
            let chain = poset.longest_chain(&named_polygon(from, a.h, a.d)?, &named_polygon(to, a.h, a.d)?)?;
            Ok(chain_json(&chain).into())
        }
        PosetCmd::Witness { beta, gamma } => {
            let chain = specialization_witness(&polygon(beta)?, &polygon(gamma)?)?;
            Ok(chain_json(&chain).into())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut argv = vec!["isocrystal-lab".to_string()];
        argv.extend(args.iter().map(|s| s.to_string()));
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with_env(&argv, None, &mut std::io::empty(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn dim_example() {
        assert_eq!(
            call(&["np", "dim", "--pairs", "2*(1,0)+(2,1)+(1,5)"]),
            (0, "22\n".into(), String::new())
        );
        assert_eq!(call(&["np", "dim", "--pairs", "(1,1)"]).1, "0\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["np", "dim", "--pairs", "(2,2)"]).0, EXIT_VALIDATION);
        assert_eq!(call(&["--p", "4", "np", "dim", "--pairs", "(1,1)"]).0, EXIT_VALIDATION);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
        assert_eq!(call(&["--input", "{oops", "np", "dim"]).0, EXIT_VALIDATION);
    }

    #[test]
    fn inline_input() {
        let (code, out, _) = call(&["np", "dual", "--input", r#"{"pairs": "(2,1)", "extra": 3}"#]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["pairs"], "(1,2)");
    }
}
