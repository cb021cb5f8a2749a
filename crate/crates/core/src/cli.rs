//! Command line front end: argument parsing, file loading and reports.
//!
//! Every subcommand produces a [`Report`], a list of named JSON values plus
//! free-form notes. The default rendering prints one `key = <json>` line per
//! field; `--json` prints a single object that additionally carries the
//! command name, a SHA-256 digest of the inputs and the exit status.
//!
//! Exit status 0 means the computation finished, whatever the verdict; 1 is
//! invalid input and 2 a resource limit.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::cohomology::{
    cup_form, is_isotropic, is_maximal_isotropic, twisted_h1, Action, Aspherical, SkewForm,
};
use crate::error::{Error, Result};
use crate::fibration::{
    ends_condition, euler_check_compact, euler_check_open, kernel_finitely_generated,
    orbifold_abelianization, orbifold_presentation, EndDescriptor, OrbifoldSpec,
};
use crate::group::{abelianization, Presentation, Word};
use crate::linalg::IntMatrix;
use crate::monodromy::{kahler_verdict, parse_module_text, PiModule, PiSpec};
use crate::ninf::{explore, ninf_witness, GroupOracle, DEFAULT_VERTEX_CAP};
use crate::stallings::{fold, index_and_rank};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "fibred",
    version,
    about = "Exact group-cohomological checks for fibred groups"
)]
struct Cli {
    /// Print a single JSON object instead of `key = value` lines.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Degenerate invariants and bad submodules of a monodromy module.
    Obstruct {
        /// `surface:g` or `free:g`.
        #[arg(long)]
        group: String,
        #[arg(long)]
        module: PathBuf,
    },
    /// Certified lower bound for rank H_1 of the kernel's Cayley graph.
    Ninf {
        #[arg(long)]
        oracle: PathBuf,
        #[arg(long)]
        radius: usize,
        #[arg(long)]
        cycles: usize,
        #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
        max_vertices: usize,
    },
    /// Cup product form on H^1 of a presentation complex.
    Cup {
        #[arg(long)]
        pres: PathBuf,
        /// Treat the presentation complex as aspherical even if it is not a
        /// recognised free or surface presentation.
        #[arg(long)]
        assume_aspherical: bool,
    },
    /// First cohomology with trivial or twisted integer coefficients.
    H1 {
        #[arg(long)]
        pres: PathBuf,
        #[arg(long)]
        module: Option<PathBuf>,
    },
    /// Abelianization of a presentation.
    Abel {
        #[arg(long)]
        pres: PathBuf,
    },
    /// Orbifold fundamental group of a base curve with multiple points.
    Orb {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        open: bool,
        /// Comma-separated multiplicities; empty for none.
        #[arg(long, value_delimiter = ',', default_value = "")]
        mults: Vec<String>,
    },
    /// Isotropy of a subspace (rows of a matrix) under a skew form.
    Isotropic {
        #[arg(long)]
        form: PathBuf,
        #[arg(long)]
        subspace: PathBuf,
    },
    /// Euler characteristic check for a fibration over a curve.
    #[command(
        allow_negative_numbers = true,
        group(ArgGroup::new("base").required(true).args(["compact", "open"]))
    )]
    Euler {
        #[arg(long)]
        compact: bool,
        #[arg(long)]
        open: bool,
        #[arg(long = "e")]
        e: i64,
        #[arg(long = "g")]
        g: u64,
        #[arg(long = "r")]
        r: u64,
    },
    /// End condition for an open surface mapping onto F_g.
    Ends {
        #[arg(long)]
        rank: usize,
        /// `w1,w2;simple=w3`, repeatable.
        #[arg(long = "end", required = true)]
        ends: Vec<String>,
    },
    /// Stallings graph of a finitely generated subgroup of F_n.
    Stallings {
        #[arg(long)]
        rank: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        words: Vec<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Obstruct { .. } => "obstruct",
            Command::Ninf { .. } => "ninf",
            Command::Cup { .. } => "cup",
            Command::H1 { .. } => "h1",
            Command::Abel { .. } => "abel",
            Command::Orb { .. } => "orb",
            Command::Isotropic { .. } => "isotropic",
            Command::Euler { .. } => "euler",
            Command::Ends { .. } => "ends",
            Command::Stallings { .. } => "stallings",
        }
    }
}

/// Named result fields of one invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs_sha256: String,
    pub fields: Vec<(String, Value)>,
    pub notes: Vec<String>,
    pub exit_status: i32,
}

impl Report {
    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.fields {
            s.push_str(&format!("{k} = {v}\n"));
        }
        for n in &self.notes {
            s.push_str(&format!("note: {n}\n"));
        }
        s
    }

    pub fn to_json(&self) -> Value {
        let result: Map<String, Value> = self.fields.iter().cloned().collect();
        json!({
            "command": self.command,
            "inputs_sha256": self.inputs_sha256,
            "result": result,
            "notes": self.notes,
            "exit_status": self.exit_status,
        })
    }
}

/// What the binary should print and return.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<Report>,
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    exit_code: EXIT_INVALID,
                    stdout: String::new(),
                    stderr: text,
                    report: None,
                }
            } else {
                Outcome {
                    exit_code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                    report: None,
                }
            };
        }
    };

    let mut inputs = Inputs::new(&args);
    let name = cli.command.name();
    match execute(&cli.command, &mut inputs) {
        Ok((fields, notes)) => {
            let report = Report {
                command: name.to_string(),
                inputs_sha256: inputs.digest(),
                fields,
                notes,
                exit_status: EXIT_OK,
            };
            let stdout = if cli.json {
                format!("{}\n", serde_json::to_string_pretty(&report.to_json()).expect("json"))
            } else {
                report.to_text()
            };
            Outcome {
                exit_code: EXIT_OK,
                stdout,
                stderr: String::new(),
                report: Some(report),
            }
        }
        Err(e) => Outcome {
            exit_code: exit_code_for(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            report: None,
        },
    }
}

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::ResourceCap { .. } | Error::TooLarge(_) => EXIT_RESOURCE,
        _ => EXIT_INVALID,
    }
}

/// Collects everything the result depends on: the arguments after the
/// program name and the contents of every file read.
struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    fn new(args: &[OsString]) -> Self {
        let mut hasher = Sha256::new();
        for a in args.iter().skip(1) {
            hasher.update(a.to_string_lossy().as_bytes());
            hasher.update([0]);
        }
        Inputs { hasher }
    }

    fn read(&mut self, path: &Path) -> Result<String> {
        let text = fs::read_to_string(path).map_err(|e| {
            Error::InvalidArgument(format!("cannot read {}: {e}", path.display()))
        })?;
        self.hasher.update([1]);
        self.hasher.update(text.as_bytes());
        Ok(text)
    }

    fn digest(&self) -> String {
        format!("{:x}", self.hasher.clone().finalize())
    }
}

type Fields = Vec<(String, Value)>;

fn execute(cmd: &Command, inputs: &mut Inputs) -> Result<(Fields, Vec<String>)> {
    let mut f = FieldsBuilder::default();
    let mut notes = Vec::new();
    match cmd {
        Command::Obstruct { group, module } => {
            let spec: PiSpec = group.parse()?;
            let m = PiModule::parse(spec, &inputs.read(module)?)?;
            let v = kahler_verdict(&m);
            f.put("group", json!(spec.to_string()));
            f.put("dim", json!(m.dim()));
            f.put("reading", json!(v.reading.to_string()));
            f.put("invariant_rank", json!(v.invariant_rank));
            f.put("degenerate_rank", json!(v.degenerate_rank));
            f.put("obstructed", json!(v.obstructed));
            match &v.witness {
                Some(w) => {
                    f.put("witness_u", ints(&w.u));
                    f.put("witness_v", Value::Array(w.v.iter().map(|x| ints(x)).collect()));
                }
                None => {
                    f.put("witness_u", Value::Null);
                    f.put("witness_v", Value::Null);
                }
            }
            f.put("split", json!(v.splitting.is_some()));
            f.put(
                "splitting",
                v.splitting.as_ref().map_or(Value::Null, |p| {
                    Value::Array(p.iter().map(|r| rats(r)).collect())
                }),
            );
        }
        Command::Ninf {
            oracle,
            radius,
            cycles,
            max_vertices,
        } => {
            let o = GroupOracle::parse(&inputs.read(oracle)?)?;
            let frag = explore(&o, *radius, *max_vertices)?;
            f.put("vertices", json!(frag.vertex_count()));
            f.put("edges", json!(frag.edge_count()));
            f.put("fragment_h1_rank", json!(frag.first_betti()));
            match ninf_witness(&o, *radius, *cycles, *max_vertices)? {
                Some(w) => {
                    f.put("cycle", json!(w.cycle.to_string()));
                    f.put("support", strings(&w.support));
                    f.put("translates", strings(&w.translates));
                    f.put("rank_bound", json!(w.rank_bound));
                    f.put("complete", json!(w.is_complete()));
                    notes.extend(w.diagnostic);
                }
                None => {
                    f.put("cycle", Value::Null);
                    f.put("support", json!([]));
                    f.put("translates", json!([]));
                    f.put("rank_bound", json!(0));
                    f.put("complete", json!(*cycles == 0));
                    notes.push(format!("no kernel cycle of length at most {}", 2 * radius));
                }
            }
        }
        Command::Cup {
            pres,
            assume_aspherical,
        } => {
            let p = Presentation::parse(&inputs.read(pres)?)?;
            let a = match Aspherical::recognize(&p) {
                Some(a) => a,
                None if *assume_aspherical => {
                    notes.push("asphericity of the presentation complex assumed".into());
                    Aspherical::declare(p)
                }
                None => {
                    return Err(Error::InvalidArgument(
                        "presentation is neither free nor a standard surface presentation; \
                         pass --assume-aspherical to proceed"
                            .into(),
                    ))
                }
            };
            let c = cup_form(&a)?;
            f.put("dim", json!(c.form.dim()));
            f.put("basis", Value::Array(c.basis.iter().map(|b| ints(b)).collect()));
            f.put("form", matrix(c.form.matrix()));
            f.put("form_rank", json!(c.form.rank()));
        }
        Command::H1 { pres, module } => {
            let p = Presentation::parse(&inputs.read(pres)?)?;
            let action = match module {
                Some(path) => {
                    let (d, mats) = parse_module_text(&inputs.read(path)?)?;
                    if mats.len() != p.rank() {
                        return Err(Error::InvalidModule(format!(
                            "{} matrices for {} generators",
                            mats.len(),
                            p.rank()
                        )));
                    }
                    Action::new(d, mats)?
                }
                None => Action::trivial(p.rank(), 1),
            };
            let h = twisted_h1(&p, &action)?;
            f.put("module_dim", json!(action.dim()));
            f.put("free_rank", json!(h.free_rank));
            f.put("torsion", ints(&h.torsion));
            f.put("rational_dim", json!(h.free_rank));
            f.put("cocycle_rank", json!(h.cocycle_rank));
            f.put("coboundary_rank", json!(h.coboundary_rank));
        }
        Command::Abel { pres } => {
            let p = Presentation::parse(&inputs.read(pres)?)?;
            let a = abelianization(&p);
            f.put("free_rank", json!(a.free_rank));
            f.put("torsion", ints(&a.torsion));
            f.put("group", json!(a.to_string()));
        }
        Command::Orb { genus, open, mults } => {
            let mults = mults
                .iter()
                .filter(|m| !m.is_empty())
                .map(|m| {
                    m.trim().parse::<u64>().map_err(|_| {
                        Error::InvalidArgument(format!("bad multiplicity `{m}`"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let spec = OrbifoldSpec::new(*genus, *open, mults)?;
            let p = orbifold_presentation(&spec);
            let ab = orbifold_abelianization(&spec);
            f.put("generators", json!(p.rank()));
            f.put(
                "relators",
                Value::Array(p.relators().iter().map(|r| json!(r.to_string())).collect()),
            );
            f.put("free_rank", json!(ab.invariants.free_rank));
            f.put("torsion", ints(&ab.invariants.torsion));
            f.put("abelianization", json!(ab.invariants.to_string()));
            f.put("kernel_finitely_generated", json!(kernel_finitely_generated(&spec)));
            notes.extend(ab.notes);
        }
        Command::Isotropic { form, subspace } => {
            let j = SkewForm::new(IntMatrix::parse_text(&inputs.read(form)?)?)?;
            let v = IntMatrix::parse_text(&inputs.read(subspace)?)?.to_rows();
            let iso = is_isotropic(&j, &v)?;
            let max = is_maximal_isotropic(&j, &v)?;
            f.put("form_dim", json!(j.dim()));
            f.put("form_rank", json!(j.rank()));
            f.put("subspace_rank", json!(crate::linalg::rank(&IntMatrix::from_rows(v, j.dim())?)));
            f.put("isotropic", json!(iso));
            f.put("maximal", json!(max));
        }
        Command::Euler {
            compact, e, g, r, ..
        } => {
            let v = if *compact {
                euler_check_compact(*e, *g, *r)?
            } else {
                euler_check_open(*e, *g, *r)?
            };
            f.put("base", json!(if v.compact { "compact" } else { "open" }));
            f.put("expected", json!(v.expected.to_string()));
            f.put("matches", json!(v.matches));
            f.put("forced", json!(v.forced));
            f.put(
                "solutions",
                Value::Array(v.solutions.iter().map(|&(s, mu)| json!([s, mu])).collect()),
            );
            notes.extend(v.note);
        }
        Command::Ends { rank, ends } => {
            let ends = ends
                .iter()
                .map(|s| EndDescriptor::parse(s))
                .collect::<Result<Vec<_>>>()?;
            let v = ends_condition(*rank, &ends)?;
            f.put(
                "ends",
                Value::Array(
                    v.ends
                        .iter()
                        .map(|e| {
                            json!({
                                "rank": e.rank,
                                "cyclic": e.cyclic,
                                "simple_nontrivial": e.simple_nontrivial,
                                "pass": e.pass,
                            })
                        })
                        .collect(),
                ),
            );
            f.put("pass", json!(v.pass));
        }
        Command::Stallings { rank, words } => {
            let words = words
                .iter()
                .map(|w| Word::parse_in_rank(w.trim(), *rank))
                .collect::<Result<Vec<_>>>()?;
            let g = fold(&words, *rank)?;
            let (index, sub_rank) = index_and_rank(&g);
            f.put("vertices", json!(g.vertex_count()));
            f.put("edges", json!(g.edge_count()));
            f.put("index", json!(index.to_string()));
            f.put("rank", json!(sub_rank));
            f.put(
                "surjective",
                json!(g.vertex_count() == 1 && g.edge_count() == *rank),
            );
        }
    }
    Ok((f.0, notes))
}

#[derive(Default)]
struct FieldsBuilder(Fields);

impl FieldsBuilder {
    fn put(&mut self, key: &str, value: Value) {
        self.0.push((key.to_string(), value));
    }
}

/// Integers that fit in `i64` become JSON numbers, larger ones strings.
fn int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn ints(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int).collect())
}

fn rats(xs: &[BigRational]) -> Value {
    Value::Array(
        xs.iter()
            .map(|q| {
                if q.is_integer() {
                    int(q.numer())
                } else {
                    json!(q.to_string())
                }
            })
            .collect(),
    )
}

fn matrix(m: &IntMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| ints(r)).collect())
}

fn strings<T: ToString>(xs: &[T]) -> Value {
    Value::Array(xs.iter().map(|x| json!(x.to_string())).collect())
}
