//! Command-line front end. Every command reads one JSON document (except
//! `gamma`, `j0` and `schemas`) and writes one result document.

use std::fs;
use std::io::{self, IsTerminal, Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::blocks::{
    block_id, classify_type, level_zero_block, same_block, CharacterType, Diagnostic,
};
use crate::error::{Error, Result};
use crate::rootdata::{build_root_system, gamma_group, GammaClass};
use crate::schema::{
    parse_type, point_from_doc, point_to_doc, Document, LatticeDoc, PiDoc, QuotientDoc,
    RationalLit, ToroidalWeightDoc, XiDoc, XiValueDoc,
};
use crate::spectral::{alpha_n1_values, chi, g_pi, is_isomorphic, PiFunction, XiCharacter};
use crate::torus::{orbit_match, TorusPoint};
use crate::weights::{
    gcd_normal_form, normalize_deltas, realizations, translate_by_root, weyl_translate,
    ToroidalWeight,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "toroidal-blocks",
    version,
    about = "Blocks of integrable toroidal Lie algebra modules"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Request document (default: stdin).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Result file (default: stdout).
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads for internal parallelism.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Invariant factors of P/Q and the minuscule index set J_0.
    Gamma { lie_type: String },
    /// J_0 and the comarks.
    J0 { lie_type: String },
    /// Dominant realizations of a (level, class) pair.
    Realizations,
    /// Spectral character of a π-function.
    Chi,
    /// G_π and its quotient.
    Gpi,
    /// Type I / type II classification of a spectral character.
    Type,
    /// Isomorphism of two irreducibles (π1, g1), (π2, g2).
    Iso,
    /// Whether two irreducibles lie in the same block.
    Link,
    /// Canonical block identifier of (π, g).
    Blockid,
    /// A scaling carrying one labelled point set onto another.
    Orbit,
    /// Translation r_α r_β of a toroidal weight.
    Translate,
    /// Delta normalisation of a toroidal weight of central value (m, 0, ..).
    Normalize,
    /// gcd normal form of a central vector.
    Gcdform,
    /// Orbit representative of a level-zero character.
    Level0block,
    /// Field descriptions of every document.
    Schemas,
}

// ------------------------------------------------------------ documents

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaOut {
    pub invariant_factors: Vec<i64>,
    pub j0: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct J0Out {
    pub j0: Vec<usize>,
    pub comarks: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealizationsIn {
    #[serde(rename = "type")]
    pub ty: String,
    pub level: i64,
    pub class: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealizationsOut {
    pub count: usize,
    pub realizations: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChiOut {
    pub xi: XiDoc,
    /// `π(M)(α_{n+1}^∨)` per support point, in the order of `xi.entries`.
    pub alpha_n1_values: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GpiOut {
    pub lattice: LatticeDoc,
    pub quotient: QuotientDoc,
    pub generators_log: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    pub point: Vec<RationalLit>,
    pub value: XiValueDoc,
    pub realizations: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypeOut {
    #[serde(rename = "type")]
    pub ty: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairIn {
    pub pi1: PiDoc,
    pub g1: Vec<i64>,
    pub pi2: PiDoc,
    pub g2: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsoOut {
    pub isomorphic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkOut {
    pub linked: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockIdIn {
    pub pi: PiDoc,
    pub g: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelledPoint {
    pub point: Vec<RationalLit>,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitIn {
    pub a: Vec<LabelledPoint>,
    pub b: Vec<LabelledPoint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitOut {
    pub scaling: Option<Vec<RationalLit>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TranslateIn {
    pub weight: ToroidalWeightDoc,
    /// Positive root in simple-root coordinates.
    pub root: Vec<i64>,
    /// 1-based loop index, used with `m`.
    #[serde(default)]
    pub i: Option<usize>,
    #[serde(default)]
    pub m: Option<i64>,
    /// Full shift vector; replaces `i` and `m`.
    #[serde(default)]
    pub shifts: Option<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormalizeIn {
    pub weight: ToroidalWeightDoc,
    pub m: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GcdIn {
    Bare(Vec<i64>),
    Wrapped { central: Vec<i64> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GcdOut {
    pub m: i64,
    pub normal: Vec<i64>,
}

// ------------------------------------------------------------ dispatch

/// A result document plus advisory diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Response {
    pub result: Value,
    pub diagnostics: Vec<String>,
}

impl Response {
    fn plain<T: Serialize>(doc: T) -> Result<Self> {
        Ok(Response {
            result: to_value(doc)?,
            diagnostics: Vec::new(),
        })
    }

    /// The result object with a `diagnostics` key added when there are any.
    pub fn envelope(&self) -> Value {
        let mut v = self.result.clone();
        if !self.diagnostics.is_empty() {
            if let Value::Object(map) = &mut v {
                map.insert("diagnostics".into(), json!(self.diagnostics));
            }
        }
        v
    }
}

fn to_value<T: Serialize>(doc: T) -> Result<Value> {
    serde_json::to_value(doc).map_err(|e| Error::Internal(e.to_string()))
}

fn parse<T: DeserializeOwned>(input: &Value) -> Result<T> {
    T::deserialize(input).map_err(|e| Error::Document(e.to_string()))
}

fn diagnostics(list: &[Diagnostic]) -> Vec<String> {
    list.iter().map(|d| d.to_string()).collect()
}

fn labelled(list: &[LabelledPoint]) -> Result<Vec<(TorusPoint, String)>> {
    list.iter()
        .map(|e| Ok((point_from_doc(&e.point)?, e.label.clone())))
        .collect()
}

/// Runs one command on a parsed request document.
pub fn execute(command: &Command, input: &Value) -> Result<Response> {
    match command {
        Command::Gamma { lie_type } => {
            let ty = parse_type(lie_type)?;
            let g = gamma_group(ty);
            Response::plain(GammaOut {
                invariant_factors: g.invariant_factors.clone(),
                j0: build_root_system(ty).j0.clone(),
            })
        }
        Command::J0 { lie_type } => {
            let rs = build_root_system(parse_type(lie_type)?);
            Response::plain(J0Out {
                j0: rs.j0.clone(),
                comarks: rs.comarks.clone(),
            })
        }
        Command::Realizations => {
            let req: RealizationsIn = parse(input)?;
            let ty = parse_type(&req.ty)?;
            let class = GammaClass::parse_label(ty, &req.class)?;
            let reals = realizations(ty, req.level, class)?;
            Response::plain(RealizationsOut {
                count: reals.len(),
                realizations: reals.iter().map(|w| w.coeffs().to_vec()).collect(),
            })
        }
        Command::Chi => {
            let pi = PiFunction::from_json(input)?;
            Response::plain(ChiOut {
                xi: chi(&pi).to_doc()?,
                alpha_n1_values: alpha_n1_values(&pi).into_iter().map(|(_, v)| v).collect(),
            })
        }
        Command::Gpi => {
            let pi = PiFunction::from_json(input)?;
            let g = g_pi(&pi)?;
            Response::plain(GpiOut {
                lattice: g.lattice.to_doc()?,
                quotient: QuotientDoc::from_quotient(&g.quotient)?,
                generators_log: g.generators_log,
            })
        }
        Command::Type => {
            let xi = XiCharacter::from_json(input)?;
            let c = classify_type(&xi)?;
            let witness = match &c.character_type {
                CharacterType::TypeI {
                    point,
                    value,
                    realizations,
                } => Some(WitnessDoc {
                    point: point_to_doc(point),
                    value: XiValueDoc::from_value(value),
                    realizations: realizations.iter().map(|w| w.coeffs().to_vec()).collect(),
                }),
                CharacterType::TypeII => None,
            };
            Ok(Response {
                result: to_value(TypeOut {
                    ty: c.character_type.label().into(),
                    witness,
                })?,
                diagnostics: diagnostics(&c.diagnostics),
            })
        }
        Command::Iso | Command::Link => {
            let req: PairIn = parse(input)?;
            let pi1 = PiFunction::from_doc(&req.pi1)?;
            let pi2 = PiFunction::from_doc(&req.pi2)?;
            if matches!(command, Command::Iso) {
                Response::plain(IsoOut {
                    isomorphic: is_isomorphic(&pi1, &req.g1, &pi2, &req.g2)?,
                })
            } else {
                Response::plain(LinkOut {
                    linked: same_block(&pi1, &req.g1, &pi2, &req.g2)?,
                })
            }
        }
        Command::Blockid => {
            let req: BlockIdIn = parse(input)?;
            let pi = PiFunction::from_doc(&req.pi)?;
            let id = block_id(&pi, &req.g)?;
            let notes = classify_type(&chi(&pi))?.diagnostics;
            Ok(Response {
                result: to_value(id.to_doc()?)?,
                diagnostics: diagnostics(&notes),
            })
        }
        Command::Orbit => {
            let req: OrbitIn = parse(input)?;
            let found = orbit_match(&labelled(&req.a)?, &labelled(&req.b)?, |x, y| x == y)?;
            Response::plain(OrbitOut {
                scaling: found.map(|b| point_to_doc(b.as_point())),
            })
        }
        Command::Translate => {
            let req: TranslateIn = parse(input)?;
            let w = ToroidalWeight::from_doc(&req.weight)?;
            let out = match (&req.shifts, req.i, req.m) {
                (Some(shifts), None, None) => translate_by_root(&w, &req.root, shifts)?,
                (None, Some(i), Some(m)) => weyl_translate(&w, &req.root, i, m)?,
                _ => {
                    return Err(Error::Document(
                        "give either \"shifts\" or both \"i\" and \"m\"".into(),
                    ))
                }
            };
            Response::plain(out.to_doc()?)
        }
        Command::Normalize => {
            let req: NormalizeIn = parse(input)?;
            let w = ToroidalWeight::from_doc(&req.weight)?;
            Response::plain(normalize_deltas(&w, req.m)?.to_doc()?)
        }
        Command::Gcdform => {
            let central = match parse::<GcdIn>(input)? {
                GcdIn::Bare(c) | GcdIn::Wrapped { central: c } => c,
            };
            let (m, normal) = gcd_normal_form(&central);
            Response::plain(GcdOut { m, normal })
        }
        Command::Level0block => {
            let xi = XiCharacter::from_json(input)?;
            Response::plain(level_zero_block(&xi)?.to_doc()?)
        }
        Command::Schemas => Response::plain(schemas()),
    }
}

fn needs_input(command: &Command) -> bool {
    !matches!(
        command,
        Command::Gamma { .. } | Command::J0 { .. } | Command::Schemas
    )
}

pub fn schemas() -> Value {
    let rational = "string \"p/q\" in lowest terms or \"p\"; inputs also accept a JSON integer";
    let affine = json!({"level": "integer", "fin": "[integer] fundamental-weight coordinates", "delta": rational});
    json!({
        "rational": rational,
        "class": "\"0\" or \"w<i>\" with i in J_0",
        "affine_weight": affine,
        "toroidal_weight": {"type": "Lie type such as \"A2\"", "central": "[integer] of length k", "fin": "[integer]", "deltas": format!("[{rational}] of length k")},
        "pi": {"type": "Lie type", "k": "integer >= 1", "entries": [{"point": "[rational] of length k-1, nonzero", "weight": "affine_weight, dominant, level >= 1"}]},
        "xi": {"type": "Lie type", "k": "integer >= 1", "entries": [{"point": "[rational]", "value": {"level": "integer", "class": "class"}}]},
        "lattice": {"dim": "integer", "basis": "[[integer]] Hermite normal form rows"},
        "block_id": {"kind": "\"I\" or \"II\"", "xi": "xi (kind I)", "pi": "pi with zero deltas (kind II)", "coset": "[integer] (kind II)"},
        "commands": {
            "gamma": {"args": "<TYPE>", "output": {"invariant_factors": "[integer]", "j0": "[integer]"}},
            "j0": {"args": "<TYPE>", "output": {"j0": "[integer]", "comarks": "[integer]"}},
            "realizations": {"input": {"type": "Lie type", "level": "integer", "class": "class"}, "output": {"count": "integer", "realizations": "[[integer]]"}},
            "chi": {"input": "pi", "output": {"xi": "xi", "alpha_n1_values": "[integer]"}},
            "gpi": {"input": "pi", "output": {"lattice": "lattice", "quotient": {"invariant_factors": "[integer]", "free_rank": "integer", "order": "integer", "coset_reps": "[[integer]]"}, "generators_log": "[[integer]]"}},
            "type": {"input": "xi", "output": {"type": "\"I\" or \"II\"", "witness": {"point": "[rational]", "value": {"level": "integer", "class": "class"}, "realizations": "[[integer]]"}}},
            "iso": {"input": {"pi1": "pi", "g1": "[integer]", "pi2": "pi", "g2": "[integer]"}, "output": {"isomorphic": "boolean"}},
            "link": {"input": {"pi1": "pi", "g1": "[integer]", "pi2": "pi", "g2": "[integer]"}, "output": {"linked": "boolean"}},
            "blockid": {"input": {"pi": "pi", "g": "[integer]"}, "output": "block_id"},
            "orbit": {"input": {"a": [{"point": "[rational]", "label": "string"}], "b": [{"point": "[rational]", "label": "string"}]}, "output": {"scaling": "[rational] or null"}},
            "translate": {"input": {"weight": "toroidal_weight", "root": "[integer] positive root in simple-root coordinates", "i": "integer (1-based)", "m": "integer", "shifts": "[integer], instead of i and m"}, "output": "toroidal_weight"},
            "normalize": {"input": {"weight": "toroidal_weight", "m": "integer"}, "output": "toroidal_weight"},
            "gcdform": {"input": "[integer] or {\"central\": [integer]}", "output": {"m": "integer", "normal": "[integer]"}},
            "level0block": {"input": "xi with all levels 0", "output": "xi"},
            "schemas": {"output": "this document"}
        },
        "envelope": {"diagnostics": "[string], present only when nonempty", "error": {"kind": "string", "message": "string"}}
    })
}

// ------------------------------------------------------------ rendering

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidType(_) => "invalid_type",
        Error::TypeMismatch(..) => "type_mismatch",
        Error::Dimension { .. } => "dimension",
        Error::NotARoot(_) => "not_a_root",
        Error::IndexOutOfRange { .. } => "index_out_of_range",
        Error::Precondition(_) => "precondition",
        Error::BadRational(_) => "bad_rational",
        Error::ZeroCoordinate => "zero_coordinate",
        Error::TooLarge(_) => "too_large",
        Error::DuplicatePoint(_) => "duplicate_point",
        Error::InfiniteIndex { .. } => "infinite_index",
        Error::Document(_) => "document",
        Error::Internal(_) => "internal",
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Internal(_) => 3,
        _ => 2,
    }
}

pub fn error_document(e: &Error) -> Value {
    json!({"error": {"kind": error_kind(e), "message": e.to_string()}})
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) => a
            .iter()
            .map(scalar)
            .collect::<Option<Vec<_>>>()
            .filter(|_| a.iter().all(|x| !x.is_array() && !x.is_object()))
            .map(|parts| format!("[{}]", parts.join(", "))),
        Value::Object(_) => None,
    }
}

fn render_text_into(v: &Value, indent: usize, bold: bool, out: &mut String) {
    let pad = "  ".repeat(indent);
    let key = |k: &str| {
        if bold {
            format!("\x1b[1m{k}\x1b[0m")
        } else {
            k.to_string()
        }
    };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{}: {s}\n", key(k))),
                    None => {
                        out.push_str(&format!("{pad}{}:\n", key(k)));
                        render_text_into(x, indent + 1, bold, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render_text_into(x, indent + 1, bold, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

/// Human-readable rendering of a document. Lossy.
pub fn render_text(v: &Value, bold: bool) -> String {
    let mut out = String::new();
    render_text_into(v, 0, bold, &mut out);
    out
}

pub fn render(v: &Value, format: Format, bold: bool) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
            s.push('\n');
            s
        }
        Format::Text => render_text(v, bold),
    }
}

fn read_input(cli: &Cli, stdin: &mut dyn Read) -> Result<Value> {
    let text = match &cli.input {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| Error::Document(format!("{}: {e}", path.display())))?,
        None => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| Error::Document(format!("stdin: {e}")))?;
            s
        }
    };
    serde_json::from_str(&text).map_err(|e| Error::Document(e.to_string()))
}

fn run_parsed(cli: &Cli, stdin: &mut dyn Read) -> Result<Response> {
    let input = if needs_input(&cli.command) {
        read_input(cli, stdin)?
    } else {
        Value::Object(Map::new())
    };
    let work = || execute(&cli.command, &input);
    match cli.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    }
}

/// Parses arguments, runs the command and writes the response. Returns
/// the process exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let bold = cli.format == Format::Text
        && cli.output.is_none()
        && std::env::var_os("NO_COLOR").is_none()
        && io::stdout().is_terminal();
    let (doc, code) = match run_parsed(&cli, stdin) {
        Ok(resp) => (resp.envelope(), 0),
        Err(e) => (error_document(&e), exit_code(&e)),
    };
    let text = render(&doc, cli.format, bold);
    if code != 0 && cli.format == Format::Text {
        let _ = write!(stderr, "{text}");
        return code;
    }
    let written = match &cli.output {
        Some(path) if code == 0 => fs::write(path, &text),
        _ => stdout.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return 2;
    }
    code
}
