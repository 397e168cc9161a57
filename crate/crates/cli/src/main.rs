use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use propcalc::diagram::Signature;
use propcalc::scalar::parse_rat;
use propcalc::symgroup::{central_idempotent, young_symmetrizer};
use propcalc::teval::{
    check_cayley_hamilton, check_lie, nonabelian2, relation_kernel, sl2, so3, KernelSpec, Representation,
};
use propcalc::zideal::{contract_symmetrizer, generate, ideal_sum, normal_form};
use propcalc::{Error, GAElt, IdealData, Partition, PropElt, Rat, RatTensor, Tableau};

mod verify;

#[derive(Parser)]
#[command(name = "prop-calc", version, about = "Diagram calculus for wheeled PROPs")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Opts {
    /// Signature file with lines `gen A : 2 -> 1`.
    #[arg(long, global = true)]
    sig: Option<PathBuf>,
    /// Dimension of the vector space for evaluations.
    #[arg(long, global = true, default_value_t = 2)]
    dim: usize,
    /// Size bound: partition size for ideals, generator copies for kernels,
    /// largest n for verification suites.
    #[arg(long, global = true)]
    bound: Option<usize>,
    /// Maximum number of wirings examined when enumerating monomials.
    #[arg(long, global = true, default_value_t = 2_000_000)]
    limit: usize,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the canonical form of an expression.
    Canon { expr: String },
    /// Evaluate an expression on a representation.
    Eval {
        expr: String,
        /// JSON object mapping generator names to tensors or tensor files.
        #[arg(long)]
        rep: Option<PathBuf>,
    },
    /// The pairing of two expressions of dual types.
    Pair { a: String, b: String },
    /// Connect output `j` to input `i` (both 1-based).
    Contract { expr: String, i: usize, j: usize },
    /// The Young symmetrizer of a tableau such as `12/3`, and its contraction.
    Symmetrizer { tableau: String },
    /// The central idempotent of a partition such as `2,1`.
    Idempotent { partition: String },
    /// Ideals of the initial wheeled PROP.
    Ideal {
        #[command(subcommand)]
        cmd: IdealCmd,
    },
    /// Relation checks on concrete tensors.
    Check {
        #[command(subcommand)]
        cmd: CheckCmd,
    },
    /// Linear relations among monomials under generic tensors.
    Kernel {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        /// Loops allowed per monomial.
        #[arg(long, default_value_t = 0)]
        loops: usize,
    },
    /// Run a verification suite.
    Verify {
        suite: Suite,
        /// Lie algebra for the `lie` suite.
        #[arg(long, value_enum, default_value_t = Algebra::Sl2)]
        algebra: Algebra,
        /// Largest n for the symmetrizer and block suites.
        #[arg(long)]
        max_n: Option<usize>,
    },
}

#[derive(Subcommand)]
enum IdealCmd {
    /// Whether an element of the initial PROP lies in the ideal.
    Member { ideal: String, expr: String },
    /// The ideal generated by elements of type (n,n).
    Generate { exprs: Vec<String> },
    /// The sum of two ideals.
    Sum { a: String, b: String },
    /// not_prime, prime_not_maximal or maximal.
    Classify { ideal: String },
    /// Shaded boxes of the jump set.
    Show { ideal: String },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Lie algebra identities for a structure tensor.
    Lie {
        #[arg(long, value_enum, conflicts_with = "tensor")]
        algebra: Option<Algebra>,
        /// Tensor file of type (2,1).
        #[arg(long)]
        tensor: Option<PathBuf>,
    },
    /// alt(n+1) vanishes in dimension n and alt(n) does not.
    Alt,
    /// Cayley-Hamilton through the alternating sum.
    Ch {
        /// Matrix as JSON rows, e.g. `[[1,2],[3,4]]`.
        matrix: String,
        /// Number of copies of the matrix (defaults to its size).
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Symmetrizer,
    Div2,
    Lie,
    Alt,
    Kernel,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
pub(crate) enum Algebra {
    Sl2,
    So3,
    Nonabelian2,
}

impl Algebra {
    pub(crate) fn tensor(self) -> RatTensor {
        match self {
            Algebra::Sl2 => sl2(),
            Algebra::So3 => so3(),
            Algebra::Nonabelian2 => nonabelian2(),
        }
    }
}

/// Failures that map to exit codes.
pub(crate) enum Failure {
    /// A verification ran and did not hold.
    Check(String),
    Usage(String),
    Limit(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e.kind() {
            Error::LimitExceeded(_) | Error::JumpsEscapeBound(_) => Failure::Limit(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Res<T = ()> = std::result::Result<T, Failure>;

fn read(path: &Path) -> Res<String> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_sig(opts: &Opts) -> Res<Arc<Signature>> {
    match &opts.sig {
        Some(p) => Ok(Arc::new(Signature::parse(&read(p)?)?)),
        None => Ok(Arc::new(Signature::empty())),
    }
}

fn parse_elt(src: &str, sig: &Arc<Signature>) -> Res<PropElt> {
    Ok(PropElt::parse(src, sig.clone())?)
}

fn parse_ideal(src: &str) -> Res<IdealData> {
    Ok(IdealData::from_json(src)?)
}

fn emit(opts: &Opts, text: impl std::fmt::Display, value: Value) {
    if opts.json {
        println!("{value}");
    } else {
        println!("{text}");
    }
}

/// `{"A": {...tensor...}, "B": "b.json"}` with paths relative to the file.
fn load_rep(path: &Path, sig: Arc<Signature>, dim: usize) -> Res<Representation<Rat>> {
    let v: Value = serde_json::from_str(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let Value::Object(map) = v else {
        return Err(Failure::Usage("representation file must be a JSON object".into()));
    };
    let mut assign = BTreeMap::new();
    for (name, t) in map {
        let t = match t {
            Value::String(file) => {
                let p = path.parent().unwrap_or(Path::new(".")).join(file);
                RatTensor::from_json(&read(&p)?)?
            }
            other => RatTensor::from_value(other)?,
        };
        assign.insert(name, t);
    }
    Ok(Representation::new(sig, dim, assign)?)
}

fn parse_matrix(src: &str) -> Res<Vec<Vec<Rat>>> {
    let bad = || Failure::Usage(format!("expected a square matrix of rationals, got `{src}`"));
    let v: Value = serde_json::from_str(src).map_err(|_| bad())?;
    let rows = v.as_array().ok_or_else(bad)?;
    let m: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|x| match x {
                    Value::String(s) => parse_rat(s).ok_or_else(bad),
                    Value::Number(n) => parse_rat(&n.to_string()).ok_or_else(bad),
                    _ => Err(bad()),
                })
                .collect()
        })
        .collect::<Res<_>>()?;
    if m.is_empty() || m.iter().any(|r| r.len() != m.len()) {
        return Err(bad());
    }
    Ok(m)
}

fn run(cli: Cli) -> Res {
    let opts = &cli.opts;
    match cli.cmd {
        Cmd::Canon { expr } => {
            let x = parse_elt(&expr, &load_sig(opts)?)?;
            emit(opts, &x, json!({ "p": x.p(), "q": x.q(), "expr": x.to_string() }));
        }
        Cmd::Eval { expr, rep } => {
            let sig = load_sig(opts)?;
            let x = parse_elt(&expr, &sig)?;
            let rep = match rep {
                Some(p) => load_rep(&p, sig, opts.dim)?,
                None if sig.is_empty() => Representation::trivial(opts.dim),
                None => return Err(Failure::Usage("a signature with generators needs --rep".into())),
            };
            let t = rep.eval(&x)?;
            if opts.json {
                println!("{}", t.to_json());
            } else {
                println!("{t}");
            }
        }
        Cmd::Pair { a, b } => {
            let sig = load_sig(opts)?;
            let x = parse_elt(&a, &sig)?.pairing(&parse_elt(&b, &sig)?)?;
            emit(opts, &x, json!({ "expr": x.to_string() }));
        }
        Cmd::Contract { expr, i, j } => {
            let x = parse_elt(&expr, &load_sig(opts)?)?.contract(i, j)?;
            emit(opts, &x, json!({ "p": x.p(), "q": x.q(), "expr": x.to_string() }));
        }
        Cmd::Symmetrizer { tableau } => {
            let t = Tableau::parse(&tableau)?;
            let y = GAElt::from_rational(&young_symmetrizer::<Rat>(&t));
            let contracted = if t.size() > 0 { Some(contract_symmetrizer(&t)?) } else { None };
            if opts.json {
                let c = contracted.as_ref().map(|(f, s)| json!({ "factor": f.to_string(), "smaller": s.to_string() }));
                println!("{}", json!({ "tableau": t.to_string(), "y": y.to_string(), "contraction": c }));
            } else {
                println!("y = {y}");
                if let Some((f, s)) = contracted {
                    println!("∂ y = ({f}) * ({s})");
                }
            }
        }
        Cmd::Idempotent { partition } => {
            let lambda = Partition::parse(&partition)?;
            let e = GAElt::from_rational(&central_idempotent::<Rat>(&lambda));
            emit(opts, &e, json!({ "partition": lambda.to_string(), "e": e.to_string() }));
        }
        Cmd::Ideal { cmd } => run_ideal(opts, cmd)?,
        Cmd::Check { cmd } => run_check(opts, cmd)?,
        Cmd::Kernel { p, q, loops } => {
            let sig = load_sig(opts)?;
            let mut spec = KernelSpec::new(p, q, opts.dim);
            spec.max_loops = loops;
            spec.limit = opts.limit;
            let copies = opts.bound.unwrap_or(1);
            spec.degree_bound = sig.iter().map(|(g, _)| (g.to_string(), copies)).collect();
            let k = relation_kernel(&sig, &spec)?;
            if opts.json {
                let basis: Vec<String> = k.basis.iter().map(ToString::to_string).collect();
                println!("{}", json!({ "monomials": k.monomials.len(), "basis": basis }));
            } else {
                println!("{} monomials, kernel dimension {}", k.monomials.len(), k.basis.len());
                for b in &k.basis {
                    println!("{b}");
                }
            }
        }
        Cmd::Verify { suite, algebra, max_n } => {
            let report = verify::run(suite, algebra, max_n, opts)?;
            if opts.json {
                println!("{}", report.to_json());
            } else {
                print!("{report}");
            }
            if !report.passed() {
                return Err(Failure::Check(String::new()));
            }
        }
    }
    Ok(())
}

fn run_ideal(opts: &Opts, cmd: IdealCmd) -> Res {
    let bound = opts.bound.unwrap_or(6);
    let show_ideal = |i: &IdealData| emit(opts, i, serde_json::from_str(&i.to_json()).expect("valid JSON"));
    match cmd {
        IdealCmd::Member { ideal, expr } => {
            let i = parse_ideal(&ideal)?;
            let z = parse_elt(&expr, &Arc::new(Signature::empty()))?;
            let m = i.member(&z)?;
            emit(opts, m, json!({ "member": m }));
        }
        IdealCmd::Generate { exprs } => {
            let empty = Arc::new(Signature::empty());
            let gens = exprs
                .iter()
                .map(|e| Ok(parse_elt(e, &empty)?.z_to_group_algebra()?))
                .collect::<Res<Vec<GAElt>>>()?;
            show_ideal(&normal_form(&generate(&gens, bound)?, bound)?);
        }
        IdealCmd::Sum { a, b } => {
            let (a, b) = (parse_ideal(&a)?, parse_ideal(&b)?);
            show_ideal(&normal_form(&ideal_sum(&a.family(), &b.family(), bound)?, bound)?);
        }
        IdealCmd::Classify { ideal } => {
            let c = parse_ideal(&ideal)?.classify();
            emit(opts, c, json!({ "class": c.to_string() }));
        }
        IdealCmd::Show { ideal } => {
            let i = parse_ideal(&ideal)?;
            let pic = i.picture();
            emit(opts, pic.trim_end(), json!({ "picture": pic }));
        }
    }
    Ok(())
}

fn run_check(opts: &Opts, cmd: CheckCmd) -> Res {
    let ok = match cmd {
        CheckCmd::Lie { algebra, tensor } => {
            let l = match (algebra, tensor) {
                (_, Some(p)) => RatTensor::from_json(&read(&p)?)?,
                (a, None) => a.unwrap_or(Algebra::Sl2).tensor(),
            };
            let r = check_lie(&l)?;
            emit(opts, &r, verify::lie_json(&r));
            r.is_semisimple()
        }
        CheckCmd::Alt => {
            let n = opts.dim;
            let rep = Representation::<Rat>::trivial(n);
            let above = rep.eval(&PropElt::alt(n + 1))?.is_zero();
            let at = !rep.eval(&PropElt::alt(n))?.is_zero();
            let text = format!("alt({}) vanishes: {above}\nalt({n}) nonzero: {at}", n + 1);
            emit(opts, text, json!({ "dim": n, "alt_above_vanishes": above, "alt_at_nonzero": at }));
            above && at
        }
        CheckCmd::Ch { matrix, n } => {
            let m = parse_matrix(&matrix)?;
            let n = n.unwrap_or(m.len());
            let holds = check_cayley_hamilton(n, &RatTensor::from_matrix(&m))?;
            emit(opts, holds, json!({ "n": n, "holds": holds }));
            holds
        }
    };
    if ok {
        Ok(())
    } else {
        Err(Failure::Check(String::new()))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            if !msg.is_empty() {
                eprintln!("{msg}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Limit(msg)) => {
            eprintln!("limit: {msg}");
            ExitCode::from(3)
        }
    }
}

