//! `scrollstci`: batch front end over the scrollstci library.
//!
//! Every subcommand prints its payload as JSON on stdout. Exit codes: 0 for
//! an ok or true verdict, 1 for a well-formed negative verdict, 2 for
//! malformed input or an internal error (including `--timeout`).

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::mpsc;
use std::thread;
use std::time::Duration;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use scrollstci::io::{self, GeneratorListFile, LatticeFile};
use scrollstci::lattice::{default_ring, fiber_spec_check, lattice_ideal, LatticeBasis};
use scrollstci::linjoin::{ara_upper_bound, cohom_dim, projdim, validate};
use scrollstci::scroll::{ara_bound_generic, classify_modulo, replay, ScrollBlock, ScrollMatrix};
use scrollstci::synth::{synthesize, synthesize_unverified, verify_generator_list};
use scrollstci::{Error, FieldSpec, IdealHandle, LinearForm, Polynomial, Ring, TermOrder};

#[derive(Parser, Debug)]
#[command(name = "scrollstci", version, about = "Exact algebra for scrolls and linearly joined 2-linear ideals")]
struct Cli {
    /// Ground field: `QQ` or `Fp=p`.
    #[arg(long, global = true)]
    field: Option<FieldSpec>,

    /// Abort after this many seconds (exit 2).
    #[arg(long, global = true, env = "SCROLLSTCI_TIMEOUT", default_value_t = 300)]
    timeout: u64,

    /// Wrap the output as {"status", "payload", "diagnostics"}.
    #[arg(long, global = true)]
    envelope: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduced Gröbner basis of an ideal file.
    Gb {
        ideal: PathBuf,
        #[arg(long, default_value = "degrevlex")]
        order: TermOrder,
    },
    /// Ideal membership of a polynomial.
    Member { ideal: PathBuf, poly: String },
    /// Radical membership of a polynomial.
    Radmember { ideal: PathBuf, poly: String },
    /// Equality of radicals.
    Radeq { a: PathBuf, b: PathBuf },
    /// Intersection of two or more ideals over a common ring.
    Intersect {
        #[arg(required = true, num_args = 2..)]
        ideals: Vec<PathBuf>,
    },
    /// All 2×2 minors of a scroll matrix.
    Minors { scroll: PathBuf },
    /// Verdi generators of one block.
    Verdi {
        /// Comma-separated entries `L_0, ..., L_{c+1}`.
        #[arg(long, conflicts_with = "scroll")]
        block: Option<String>,
        scroll: Option<PathBuf>,
    },
    /// Which containment case a scroll satisfies modulo a linear span.
    Classify {
        scroll: PathBuf,
        /// Comma-separated spanning forms.
        #[arg(long)]
        delta: String,
    },
    /// Check conditions (a)-(f) of a specification.
    Validate { spec: PathBuf },
    /// The generators of the full ideal of a specification.
    Ideal { spec: PathBuf },
    /// Projective dimension of S/J.
    Projdim { spec: PathBuf },
    /// Cohomological dimension, where the theorems determine it.
    Cd { spec: PathBuf },
    /// Upper bound for the arithmetical rank.
    Arabound {
        #[arg(required_unless_present = "generic_r")]
        spec: Option<PathBuf>,
        /// Generic 2×r matrix instead of a spec.
        #[arg(long, conflicts_with = "spec")]
        generic_r: Option<usize>,
    },
    /// Radical generators for a single-block specification.
    Synth {
        spec: PathBuf,
        /// Certify the list with the oracle.
        #[arg(long)]
        verify: bool,
    },
    /// Check that a generator list has the radical of the spec's ideal.
    Verify {
        spec: PathBuf,
        /// Generator list; defaults to the spec's `reference_generators`.
        gens: Option<PathBuf>,
    },
    /// Lattice ideal of an integer basis.
    Lattice {
        /// Rows separated by `;`, entries by `,`.
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        basis: Option<String>,
        /// JSON basis file.
        file: Option<PathBuf>,
        /// Comma-separated variable names (default x1..xr).
        #[arg(long)]
        vars: Option<String>,
        /// Compare with the minors of this scroll file.
        #[arg(long)]
        scroll: Option<PathBuf>,
    },
    /// Whether a spec has the fiber-cone shape.
    Fibercheck { spec: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Ok,
    False,
    Invalid,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::False => "false",
            Status::Invalid => "invalid",
        }
    }

    fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::False | Status::Invalid => 1,
        }
    }
}

struct Outcome {
    status: Status,
    payload: Value,
    diagnostics: Vec<String>,
}

impl Outcome {
    fn ok(payload: Value) -> Self {
        Outcome {
            status: Status::Ok,
            payload,
            diagnostics: Vec::new(),
        }
    }

    fn verdict(truth: bool, payload: Value) -> Self {
        Outcome {
            status: if truth { Status::Ok } else { Status::False },
            ..Outcome::ok(payload)
        }
    }
}

type Res = Result<Outcome, Error>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let envelope = cli.envelope;
    let timeout = Duration::from_secs(cli.timeout);
    let (tx, rx) = mpsc::channel();
    thread::spawn(move || {
        let _ = tx.send(run(cli.command, cli.field.as_ref()));
    });
    let result = match rx.recv_timeout(timeout) {
        Ok(r) => r,
        Err(mpsc::RecvTimeoutError::Timeout) => {
            return report_error(&format!("timed out after {} s", timeout.as_secs()), envelope)
        }
        Err(mpsc::RecvTimeoutError::Disconnected) => return report_error("worker thread panicked", envelope),
    };
    match result {
        Ok(out) => {
            for d in &out.diagnostics {
                eprintln!("warning: {d}");
            }
            let shown = if envelope {
                json!({
                    "status": out.status.as_str(),
                    "payload": out.payload,
                    "diagnostics": out.diagnostics,
                })
            } else {
                out.payload
            };
            println!("{}", serde_json::to_string_pretty(&shown).expect("json values serialize"));
            ExitCode::from(out.status.exit_code())
        }
        Err(e @ (Error::Validation(_) | Error::Hypothesis(_))) => {
            eprintln!("invalid: {e}");
            let payload = json!({ "error": e.to_string() });
            let shown = if envelope {
                json!({ "status": "invalid", "payload": payload, "diagnostics": [] })
            } else {
                payload
            };
            println!("{}", serde_json::to_string_pretty(&shown).expect("json values serialize"));
            ExitCode::from(Status::Invalid.exit_code())
        }
        Err(e) => report_error(&e.to_string(), envelope),
    }
}

fn report_error(msg: &str, envelope: bool) -> ExitCode {
    eprintln!("error: {msg}");
    if envelope {
        let v = json!({ "status": "error", "payload": { "error": msg }, "diagnostics": [] });
        println!("{}", serde_json::to_string_pretty(&v).expect("json values serialize"));
    }
    ExitCode::from(2)
}

fn split_list(s: &str) -> Vec<String> {
    s.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect()
}

fn parse_forms(ring: &std::sync::Arc<Ring>, list: &str) -> Result<Vec<LinearForm>, Error> {
    split_list(list).iter().map(|s| LinearForm::parse(ring, s)).collect()
}

fn strings(gens: &[Polynomial]) -> Value {
    io::polys_to_json(gens)
}

fn single_block(m: &ScrollMatrix) -> Result<&ScrollBlock, Error> {
    match m.blocks() {
        [b] => Ok(b),
        _ => Err(Error::InvalidArgument(format!(
            "verdi needs exactly one block, the scroll has {}",
            m.blocks().len()
        ))),
    }
}

fn run(cmd: Command, field: Option<&FieldSpec>) -> Res {
    match cmd {
        Command::Gb { ideal, order } => {
            let i = io::load_ideal(&ideal, field)?;
            let gb = i.groebner_basis(order);
            Ok(Outcome::ok(json!({
                "ring": io::ring_to_json(i.ring()),
                "order": order.to_string(),
                "gens": strings(&gb),
            })))
        }
        Command::Member { ideal, poly } => {
            let i = io::load_ideal(&ideal, field)?;
            let f = Polynomial::parse(i.ring(), &poly)?;
            let member = i.contains(&f)?;
            Ok(Outcome::verdict(member, json!({ "member": member, "poly": f.to_string() })))
        }
        Command::Radmember { ideal, poly } => {
            let i = io::load_ideal(&ideal, field)?;
            let f = Polynomial::parse(i.ring(), &poly)?;
            let cert = i.radical_member(&f)?;
            Ok(Outcome::verdict(cert.member, serde_json::to_value(&cert)?))
        }
        Command::Radeq { a, b } => {
            let both = align_all(vec![io::load_ideal(&a, field)?, io::load_ideal(&b, field)?])?;
            let (a, b) = (&both[0], &both[1]);
            let equal = a.radical_equal(b)?;
            Ok(Outcome::verdict(equal, json!({ "equal": equal })))
        }
        Command::Intersect { ideals } => {
            let all = ideals
                .iter()
                .map(|p| io::load_ideal(p, field))
                .collect::<Result<Vec<_>, _>>()?;
            let all = align_all(all)?;
            let i = IdealHandle::intersect_all(&all)?;
            Ok(Outcome::ok(io::ideal_to_json(&i)))
        }
        Command::Minors { scroll } => {
            let m = io::load_scroll(&scroll, field)?;
            Ok(Outcome::ok(json!({ "minors": strings(&m.minors()) })))
        }
        Command::Verdi { block, scroll } => {
            let m = match (block, scroll) {
                (Some(b), _) => {
                    let entries = split_list(&b);
                    let file = io::ScrollFile {
                        ring: None,
                        blocks: vec![io::BlockJson { entries }],
                    };
                    file.load(field)?
                }
                (None, Some(p)) => io::load_scroll(&p, field)?,
                (None, None) => return Err(Error::InvalidArgument("give --block or a scroll file".into())),
            };
            let f = single_block(&m)?.verdi_generators()?;
            Ok(Outcome::ok(json!({ "F": strings(&f) })))
        }
        Command::Classify { scroll, delta } => {
            let m = io::load_scroll(&scroll, field)?;
            let delta = parse_forms(m.ring(), &delta)?;
            let cls = classify_modulo(&m, &delta)?;
            let mut out = Outcome::verdict(cls.is_contained(), cls.to_json());
            if cls.is_contained() && !replay(&m, &delta, &cls)? {
                out.status = Status::Invalid;
                out.diagnostics.push("witness replay failed".into());
            }
            if cls.case.tag() == "unresolved" {
                out.diagnostics
                    .push("the minors lie in (delta) but no containment case matched".into());
            }
            Ok(out)
        }
        Command::Validate { spec } => {
            let l = io::load_spec(&spec, field)?;
            let report = validate(&l.spec)?;
            Ok(Outcome {
                status: if report.passed { Status::Ok } else { Status::Invalid },
                ..Outcome::ok(serde_json::to_value(&report)?)
            })
        }
        Command::Ideal { spec } => {
            let l = io::load_spec(&spec, field)?;
            Ok(Outcome::ok(io::ideal_to_json(&l.spec.full_ideal()?)))
        }
        Command::Projdim { spec } => {
            let l = io::load_spec(&spec, field)?;
            Ok(Outcome::ok(json!(projdim(&l.spec)?)))
        }
        Command::Cd { spec } => {
            let l = io::load_spec(&spec, field)?;
            Ok(Outcome::ok(serde_json::to_value(cohom_dim(&l.spec)?)?))
        }
        Command::Arabound { spec, generic_r } => match (spec, generic_r) {
            (_, Some(r)) => Ok(Outcome::ok(serde_json::to_value(ara_bound_generic(r)?)?)),
            (Some(p), None) => {
                let l = io::load_spec(&p, field)?;
                Ok(Outcome::ok(serde_json::to_value(ara_upper_bound(&l.spec)?)?))
            }
            (None, None) => Err(Error::InvalidArgument("give a spec file or --generic-r".into())),
        },
        Command::Synth { spec, verify } => {
            let l = io::load_spec(&spec, field)?;
            let cert = if verify {
                synthesize(&l.spec)?
            } else {
                synthesize_unverified(&l.spec)?
            };
            let truth = cert.verified != Some(false);
            Ok(Outcome::verdict(truth, cert.to_json()))
        }
        Command::Verify { spec, gens } => {
            let l = io::load_spec(&spec, field)?;
            let list = match gens {
                Some(p) => io::read_json::<GeneratorListFile>(&p)?.load(l.spec.ring())?,
                None => l.reference_generators.clone().ok_or_else(|| {
                    Error::InvalidArgument("the spec has no reference_generators; pass a generator list".into())
                })?,
            };
            let verified = verify_generator_list(&list, &l.spec)?;
            Ok(Outcome::verdict(
                verified,
                json!({ "verified": verified, "count": list.len(), "generators": strings(&list) }),
            ))
        }
        Command::Lattice {
            basis,
            file,
            vars,
            scroll,
        } => {
            let (basis, file_vars) = match (basis, file) {
                (Some(b), _) => (LatticeBasis::parse(&b)?, None),
                (None, Some(p)) => {
                    let f: LatticeFile = io::read_json(&p)?;
                    (f.basis()?, f.vars().map(<[String]>::to_vec))
                }
                (None, None) => return Err(Error::InvalidArgument("give --basis or a basis file".into())),
            };
            let names = vars.map(|v| split_list(&v)).or(file_vars);
            let ring = match names {
                Some(n) => Ring::new(n, field.cloned().unwrap_or_default())?,
                None => default_ring(basis.rank_space()).with_field(field.cloned().unwrap_or_default()),
            };
            let ideal = lattice_ideal(&ring, &basis)?;
            let screen = basis.nonnegative_screen();
            let mut payload = json!({
                "ring": io::ring_to_json(&ring),
                "gens": strings(&ideal.groebner_basis(TermOrder::default())),
                "nonnegative_vectors": screen,
            });
            let mut out = Outcome::ok(Value::Null);
            if !screen.is_empty() {
                out.diagnostics
                    .push(format!("{} nonnegative lattice vectors found by the screen", screen.len()));
            }
            if let Some(p) = scroll {
                let m = io::read_json::<io::ScrollFile>(&p)?;
                let mut m = m;
                m.ring = Some(io::RingJson::from_ring(&ring));
                let minors = m.load(field.or(Some(ring.field())))?.minors_ideal();
                let equal = ideal.same_ideal(&minors)?;
                payload["equals_scroll_minors"] = json!(equal);
                out.status = if equal { Status::Ok } else { Status::False };
            }
            out.payload = payload;
            Ok(out)
        }
        Command::Fibercheck { spec } => {
            let l = io::load_spec(&spec, field)?;
            let shape = fiber_spec_check(&l.spec);
            Ok(Outcome::verdict(shape, json!({ "fiber_shape": shape })))
        }
    }
}

/// Re-reads every ideal over one ring: the first ring's variables followed
/// by any new names from the others, in order of appearance.
fn align_all(ideals: Vec<IdealHandle>) -> Result<Vec<IdealHandle>, Error> {
    let first = ideals[0].ring().clone();
    if ideals.iter().all(|i| i.ring() == &first) {
        return Ok(ideals);
    }
    if ideals.iter().any(|i| i.ring().field() != first.field()) {
        return Err(Error::RingMismatch);
    }
    let mut vars: Vec<String> = first.vars().to_vec();
    for i in &ideals {
        for v in i.ring().vars() {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
    }
    let ring = Ring::new(vars, first.field().clone())?;
    ideals
        .iter()
        .map(|i| {
            let gens = i
                .generators()
                .iter()
                .map(|g| g.embed(&ring))
                .collect::<Result<Vec<_>, _>>()?;
            IdealHandle::new(&ring, gens)
        })
        .collect()
}
