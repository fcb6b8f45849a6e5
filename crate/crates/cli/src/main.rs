//! Command-line front end: torsion of serialized chain complexes, lens-space
//! invariants and classification, the circle comparison against the
//! zeta-regularized determinant, and the coefficient-vector independence
//! search.
//!
//! Exit codes: 0 success, 1 usage error, 2 mathematical precondition
//! failure, 3 cross-check disagreement beyond the tolerance.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use rtorsion::analytic::{circle_det_laplacian, circle_rs_torsion, CircleBundle};
use rtorsion::spaces::{
    circle_complex, franz_search, homeomorphic_3d, homotopy_equivalent,
    simple_homotopy_equivalent, LensSpace,
};
use rtorsion::torsion::{
    hodge, laplacian_torsion, torsion_alternating, torsion_contraction, torsion_milnor,
};
use rtorsion::{AnyComplex, BasedChainComplex, ComplexChainComplex, Error, Representation};

#[derive(Parser)]
#[command(name = "rtorsion", version, about = "Torsion invariants of based chain complexes")]
struct Cli {
    /// Relative tolerance for cross-checks between independent computations
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol: f64,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Milnor,
    Contraction,
    Alternating,
    Laplacian,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Torsion of a chain complex loaded from a JSON file
    Complex {
        /// Path to the serialized complex
        #[arg(long)]
        file: PathBuf,
        /// Evaluation: eta:P:K, angle:PSI, or complex:RE,IM
        #[arg(long)]
        rep: String,
        /// Which algorithm to run; `all` cross-checks every applicable one
        #[arg(long, value_enum)]
        method: Method,
    },
    /// Torsion invariants of the lens space L(p; q1, ..., qn)
    Lens {
        #[arg(long)]
        p: u64,
        /// Comma-separated rotation parameters q1,...,qn
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<i64>,
        /// Evaluate at the k-th p-th root of unity
        #[arg(long, conflicts_with_all = ["all_eta", "profile"])]
        eta: Option<i64>,
        /// Tabulate over every nontrivial root of unity
        #[arg(long, conflicts_with = "profile")]
        all_eta: bool,
        /// Print the sorted squared-modulus profile
        #[arg(long)]
        profile: bool,
    },
    /// Compare two lens spaces with the same p
    Classify {
        #[arg(long)]
        p: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        q1: Vec<i64>,
        #[arg(long, value_delimiter = ',', required = true)]
        q2: Vec<i64>,
        /// Require the equivalence to respect the marked generator
        #[arg(long)]
        marked: bool,
    },
    /// Cellular circle torsion, optionally checked against the
    /// zeta-regularized analytic value
    Circle {
        /// Holonomy angle of the flat line bundle
        #[arg(long)]
        psi: f64,
        /// Number of cells in the subdivision
        #[arg(long, default_value_t = 8)]
        cells: usize,
        /// Also compute the analytic torsion and compare
        #[arg(long)]
        compare_analytic: bool,
    },
    /// Search coefficient vectors a_j, symmetric and summing to zero, for
    /// which prod_j (eta^j - 1)^{a_j} = 1 at every nontrivial eta
    Franz {
        #[arg(long)]
        p: u64,
        /// Bound on |a_j|
        #[arg(long)]
        bound: i64,
    },
}

struct AppError {
    code: u8,
    msg: String,
}

impl AppError {
    fn usage(msg: impl Into<String>) -> Self {
        AppError { code: 1, msg: msg.into() }
    }
}

impl From<Error> for AppError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => 1,
            Error::CrossCheck(_) => 3,
            _ => 2,
        };
        AppError { code, msg: e.to_string() }
    }
}

type Output = BTreeMap<String, Value>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // clap distinguishes help/version from real parse errors
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(1),
            };
        }
    };
    match run(&cli) {
        Ok((out, code)) => {
            render(&out, cli.format);
            ExitCode::from(code)
        }
        Err(err) => {
            eprintln!("error: {}", err.msg);
            ExitCode::from(err.code)
        }
    }
}

fn render(out: &Output, format: Format) {
    match format {
        Format::Json => {
            let map: serde_json::Map<String, Value> =
                out.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
            println!("{}", serde_json::to_string_pretty(&Value::Object(map)).unwrap());
        }
        Format::Table => {
            let width = out.keys().map(String::len).max().unwrap_or(0);
            for (k, v) in out {
                println!("{k:width$}  {}", render_value(v));
            }
        }
    }
}

fn render_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn parse_rep(spec: &str) -> Result<Representation, AppError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let rep = match parts.as_slice() {
        ["eta", p, k] => {
            let p: u64 = p.parse().map_err(|_| AppError::usage(format!("bad modulus: {p}")))?;
            let k: i64 = k.parse().map_err(|_| AppError::usage(format!("bad exponent: {k}")))?;
            Representation::root_of_unity(p, k)?
        }
        ["angle", psi] => {
            let psi: f64 =
                psi.parse().map_err(|_| AppError::usage(format!("bad angle: {psi}")))?;
            Representation::angle(psi)?
        }
        ["complex", pair] => {
            let (re, im) = pair
                .split_once(',')
                .ok_or_else(|| AppError::usage("complex evaluation needs RE,IM"))?;
            let re: f64 = re.parse().map_err(|_| AppError::usage(format!("bad number: {re}")))?;
            let im: f64 = im.parse().map_err(|_| AppError::usage(format!("bad number: {im}")))?;
            Representation::complex(Complex64::new(re, im))?
        }
        _ => {
            return Err(AppError::usage(format!(
                "unrecognized evaluation spec `{spec}`; expected eta:P:K, angle:PSI, or complex:RE,IM"
            )))
        }
    };
    Ok(rep)
}

fn complex_value(v: Complex64) -> Value {
    json!({"im": v.im, "re": v.re})
}

fn run(cli: &Cli) -> Result<(Output, u8), AppError> {
    match &cli.command {
        Command::Complex { file, rep, method } => run_complex(cli, file, rep, *method),
        Command::Lens { p, q, eta, all_eta, profile } => {
            run_lens(*p, q, *eta, *all_eta, *profile)
        }
        Command::Classify { p, q1, q2, marked } => run_classify(*p, q1, q2, *marked),
        Command::Circle { psi, cells, compare_analytic } => {
            run_circle(cli, *psi, *cells, *compare_analytic)
        }
        Command::Franz { p, bound } => run_franz(*p, *bound),
    }
}

fn run_complex(
    cli: &Cli,
    file: &PathBuf,
    rep_spec: &str,
    method: Method,
) -> Result<(Output, u8), AppError> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| AppError::usage(format!("cannot read {}: {e}", file.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| AppError::usage(format!("{}: {e}", file.display())))?;
    let rep = parse_rep(rep_spec)?;
    let complex: ComplexChainComplex = match AnyComplex::from_json(&value)? {
        AnyComplex::GroupRing(c) => c.specialize(&rep)?,
        AnyComplex::Integer(c) => {
            let maps = c
                .boundary_maps()
                .iter()
                .map(|m| m.map(|&x| Complex64::new(x as f64, 0.0)))
                .collect();
            BasedChainComplex::new(c.ranks().to_vec(), maps)?
        }
        AnyComplex::Complex(c) => c,
    };

    let mut out = Output::new();
    out.insert("ranks".into(), json!(complex.ranks()));
    let homology = complex.homology_ranks();
    let acyclic = homology.iter().all(|&h| h == 0);
    out.insert("homology_ranks".into(), json!(homology));
    out.insert("acyclic".into(), json!(acyclic));

    let mut magnitudes: Vec<(&str, f64)> = Vec::new();
    let mut code = 0u8;
    match method {
        Method::Milnor => {
            let t = torsion_milnor(&complex, None)?;
            out.insert("torsion".into(), complex_value(t.value));
            out.insert("torsion_abs".into(), json!(t.value.norm()));
        }
        Method::Contraction => {
            let t = torsion_contraction(&complex)?;
            out.insert("torsion".into(), complex_value(t.value));
            out.insert("torsion_abs".into(), json!(t.value.norm()));
        }
        Method::Alternating => {
            let t = torsion_alternating(&complex)?;
            out.insert("torsion_abs".into(), json!(t));
        }
        Method::Laplacian => {
            let (t, dims) = laplacian_torsion(&complex);
            out.insert("harmonic_dims".into(), json!(dims));
            out.insert("torsion_abs".into(), json!(t));
        }
        Method::All => {
            if acyclic {
                let milnor = torsion_milnor(&complex, None)?;
                let contraction = torsion_contraction(&complex)?;
                out.insert("torsion".into(), complex_value(milnor.value));
                magnitudes.push(("milnor", milnor.value.norm()));
                magnitudes.push(("contraction", contraction.value.norm()));
                magnitudes.push(("alternating", torsion_alternating(&complex)?));
            } else {
                // only the spectral method applies without a homology basis;
                // use the harmonic basis for the others
                let basis = hodge(&complex).homology_basis();
                let milnor = torsion_milnor(&complex, Some(&basis))?;
                out.insert("torsion".into(), complex_value(milnor.value));
                magnitudes.push(("milnor", milnor.value.norm()));
            }
            let (lap, _) = laplacian_torsion(&complex);
            magnitudes.push(("laplacian", lap));
            for (name, m) in &magnitudes {
                out.insert(format!("abs_{name}"), json!(m));
            }
            let reference = magnitudes[0].1;
            let spread = magnitudes
                .iter()
                .map(|(_, m)| (m - reference).abs() / reference.max(1e-300))
                .fold(0.0f64, f64::max);
            out.insert("cross_check_spread".into(), json!(spread));
            let agree = spread <= cli.tol;
            out.insert("cross_check".into(), json!(if agree { "pass" } else { "fail" }));
            if !agree {
                code = 3;
            }
        }
    }
    Ok((out, code))
}

fn run_lens(
    p: u64,
    q: &[i64],
    eta: Option<i64>,
    all_eta: bool,
    profile: bool,
) -> Result<(Output, u8), AppError> {
    let lens = LensSpace::new(p, q)?;
    let mut out = Output::new();
    out.insert("p".into(), json!(p));
    out.insert("q".into(), json!(lens.q()));
    out.insert("dimension".into(), json!(lens.dim()));
    if profile {
        out.insert("profile".into(), json!(lens.torsion_profile()));
    } else if let Some(k) = eta {
        let t = lens.torsion(&Representation::root_of_unity(p, k)?)?;
        out.insert("eta_exponent".into(), json!(k));
        out.insert("torsion".into(), complex_value(t.value));
        out.insert("torsion_abs_squared".into(), json!(t.modulus_squared()));
    } else {
        // default, and the explicit --all-eta
        let _ = all_eta;
        let rows: Vec<Value> = (1..p as i64)
            .map(|k| {
                let t = lens.torsion(&Representation::root_of_unity(p, k)?)?;
                Ok(json!({
                    "abs_squared": t.modulus_squared(),
                    "k": k,
                    "torsion": complex_value(t.value),
                }))
            })
            .collect::<Result<_, Error>>()?;
        out.insert("by_eta".into(), Value::Array(rows));
    }
    Ok((out, 0))
}

fn run_classify(p: u64, q1: &[i64], q2: &[i64], marked: bool) -> Result<(Output, u8), AppError> {
    let a = LensSpace::new(p, q1)?;
    let b = LensSpace::new(p, q2)?;
    if a.n() != b.n() {
        return Err(Error::InvalidLens("spaces have different dimensions".into()).into());
    }
    let mut out = Output::new();
    out.insert("p".into(), json!(p));
    out.insert("q1".into(), json!(a.q()));
    out.insert("q2".into(), json!(b.q()));
    out.insert("marked".into(), json!(marked));

    let (he, witness) = homotopy_equivalent(&a, &b, marked)?;
    out.insert("homotopy_equivalent".into(), json!(he));
    if let Some(m) = witness {
        out.insert("homotopy_witness_m".into(), json!(m));
    }
    let (she, witness) = simple_homotopy_equivalent(&a, &b, marked)?;
    out.insert("simple_homotopy_equivalent".into(), json!(she));
    if let Some((m, perm, signs)) = witness {
        out.insert(
            "simple_witness".into(),
            json!({"m": m, "permutation": perm, "signs": signs}),
        );
    }
    if a.n() == 2 && a.q()[0] == 1 && b.q()[0] == 1 {
        let homeo = homeomorphic_3d(p, a.q()[1] as i64, b.q()[1] as i64)?;
        out.insert("homeomorphic".into(), json!(homeo));
    }
    Ok((out, 0))
}

fn run_circle(
    cli: &Cli,
    psi: f64,
    cells: usize,
    compare_analytic: bool,
) -> Result<(Output, u8), AppError> {
    let rep = Representation::angle(psi)?;
    let complex = circle_complex(cells, &rep)?;
    let tau = torsion_milnor(&complex, None)?;
    // squared scalar torsion of the two-dimensional real rotation bundle
    let cellular = tau.modulus_squared().recip();
    let mut out = Output::new();
    out.insert("cells".into(), json!(cells));
    out.insert("psi".into(), json!(psi));
    out.insert("cellular_torsion".into(), json!(cellular));
    let mut code = 0u8;
    if compare_analytic {
        let bundle = CircleBundle::new(psi)?;
        let analytic = circle_rs_torsion(&bundle)?;
        out.insert("analytic_torsion".into(), json!(analytic));
        out.insert("det_laplacian".into(), json!(circle_det_laplacian(&bundle)?));
        let rel = (cellular - analytic).abs() / analytic;
        out.insert("relative_error".into(), json!(rel));
        let agree = rel <= cli.tol;
        out.insert("cross_check".into(), json!(if agree { "pass" } else { "fail" }));
        if !agree {
            code = 3;
        }
    }
    Ok((out, code))
}

fn run_franz(p: u64, bound: i64) -> Result<(Output, u8), AppError> {
    let solutions = franz_search(p, bound)?;
    let nonzero: Vec<&Vec<i64>> =
        solutions.iter().filter(|a| a.iter().any(|&x| x != 0)).collect();
    let mut out = Output::new();
    out.insert("p".into(), json!(p));
    out.insert("bound".into(), json!(bound));
    out.insert("solutions".into(), json!(solutions));
    out.insert("nontrivial_count".into(), json!(nonzero.len()));
    Ok((out, 0))
}
