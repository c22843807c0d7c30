//! Command-line front end. Every command prints a single JSON document
//! (or, for `verify`, one JSON line per suite) on stdout. Exit status: 0
//! on success, 1 on a domain error (printed as {"error": "<Name>"}) or a
//! failed verification, 2 on usage errors.

use std::io::Read;

use clap::{Args, Parser, Subcommand};

use evencliff::azumaya::recover_bilinear;
use evencliff::classify::{automorphism_group, verify_bijection};
use evencliff::clifford::{lift_section, opposite, upsilon, SectionVariant};
use evencliff::linalg::Mat;
use evencliff::quadform::{
    half_discriminant, standard_lift, BilinearForm3, QuadraticForm3,
};
use evencliff::ring::{Ring, RingElement};
use evencliff::schema::{
    AlgebraJson, AutGroupJson, BilinearJson, ClassifyJson, D0Json, ErrorJson, MapJson,
    SemiregularJson, SimilarityJson, SuiteResultJson,
};
use evencliff::suites;
use evencliff::{Error, Result};

#[derive(Parser)]
#[command(
    name = "evencliff",
    version,
    about = "Exact even Clifford algebras of ternary quadratic forms over small commutative rings"
)]
struct Cli {
    /// Output JSON (always on; accepted for forward compatibility).
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for the parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct FormArgs {
    /// Ring descriptor: z, q, fp:<p>, zmod:<p>^<k>, dual:<p>.
    #[arg(long)]
    ring: String,

    /// Form coefficients a1,a2,a3,u23,u13,u12 (comma separated).
    #[arg(long)]
    form: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Structure constants of the even Clifford algebra of a form.
    C0(FormArgs),

    /// Half-discriminant and semiregularity of a form.
    D0(FormArgs),

    /// Semiregularity of a form.
    Semiregular(FormArgs),

    /// Structure constants of the specialized algebra of a bilinear form.
    Upsilon {
        /// Ring descriptor: z, q, fp:<p>, zmod:<p>^<k>, dual:<p>.
        #[arg(long)]
        ring: String,
        /// Matrix entries b11,...,b33 row-major (comma separated).
        #[arg(long)]
        bilinear: String,
    },

    /// Invert the specialization: read an algebra (JSON on stdin) and
    /// print the unique bilinear form it specializes.
    Recover,

    /// Opposite algebra of an algebra read as JSON from stdin.
    Opposite,

    /// Lift an algebra isomorphism (JSON on stdin) to a similarity.
    Lift {
        #[command(flatten)]
        form: FormArgs,
        /// Coefficients of the target form (comma separated).
        #[arg(long)]
        target: String,
        /// Section variant: sprime, s:<odd m>, or splus:<odd m>.
        #[arg(long, value_parser = parse_variant)]
        variant: SectionVariant,
    },

    /// Exhaustively classify all ternary forms over a small prime field
    /// and compare the algebra and orbit partitions.
    Classify {
        /// Field descriptor: fp:2 or fp:3.
        #[arg(long)]
        field: String,
    },

    /// Automorphism group of the even Clifford algebra of a form.
    Autgroup(FormArgs),

    /// Run named verification suites.
    Verify {
        /// Suite name (see --all for the roster).
        #[arg(long, conflicts_with = "all")]
        suite: Option<String>,
        /// Run every suite.
        #[arg(long)]
        all: bool,
        /// RNG seed for the randomized suites.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_variant(s: &str) -> std::result::Result<SectionVariant, String> {
    if s == "sprime" {
        return Ok(SectionVariant::SPrime);
    }
    let (ctor, m): (fn(i64) -> SectionVariant, &str) = if let Some(rest) = s.strip_prefix("splus:")
    {
        (SectionVariant::SPlus, rest)
    } else if let Some(rest) = s.strip_prefix("s:") {
        (SectionVariant::S, rest)
    } else {
        return Err(format!("unknown variant {s:?}; expected sprime, s:<m>, or splus:<m>"));
    };
    let m: i64 = m.parse().map_err(|_| format!("exponent {m:?} is not an integer"))?;
    if m.rem_euclid(2) != 1 {
        return Err(format!("exponent must be odd, got {m}"));
    }
    Ok(ctor(m))
}

fn parse_tuple(ring: &Ring, s: &str, n: usize) -> Result<Vec<RingElement>> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != n {
        return Err(Error::Parse(format!("expected {n} comma-separated values, got {}", parts.len())));
    }
    parts.iter().map(|p| RingElement::parse(ring, p)).collect()
}

fn parse_form(args: &FormArgs) -> Result<QuadraticForm3> {
    let ring = Ring::parse(&args.ring)?;
    let coeffs = parse_tuple(&ring, &args.form, 6)?;
    let arr: [RingElement; 6] = coeffs.try_into().expect("six coefficients");
    Ok(QuadraticForm3::new(&ring, arr))
}

fn read_stdin() -> Result<String> {
    let mut buf = String::new();
    std::io::stdin()
        .read_to_string(&mut buf)
        .map_err(|e| Error::Parse(format!("cannot read stdin: {e}")))?;
    Ok(buf)
}

fn read_algebra_stdin() -> Result<evencliff::clifford::AlgebraStructure4> {
    let doc: AlgebraJson = serde_json::from_str(&read_stdin()?)
        .map_err(|e| Error::Parse(format!("bad algebra JSON: {e}")))?;
    doc.to_algebra()
}

fn print_json<T: serde::Serialize>(value: &T) {
    use std::io::Write;
    let line = serde_json::to_string(value).expect("serializable");
    // Die quietly when the downstream end of a pipe closes early, like
    // any unix filter.
    if writeln!(std::io::stdout(), "{line}").is_err() {
        std::process::exit(0);
    }
}

fn run(cmd: Cmd) -> Result<i32> {
    match cmd {
        Cmd::C0(args) => {
            let q = parse_form(&args)?;
            let a = upsilon(&standard_lift(&q));
            print_json(&AlgebraJson::from_algebra(&a));
            Ok(0)
        }
        Cmd::D0(args) => {
            let q = parse_form(&args)?;
            let d0 = half_discriminant(&q);
            print_json(&D0Json { d0: d0.to_string(), semiregular: d0.is_unit() });
            Ok(0)
        }
        Cmd::Semiregular(args) => {
            let q = parse_form(&args)?;
            print_json(&SemiregularJson { semiregular: q.is_semiregular() });
            Ok(0)
        }
        Cmd::Upsilon { ring, bilinear } => {
            let ring = Ring::parse(&ring)?;
            let entries = parse_tuple(&ring, &bilinear, 9)?;
            let rows = entries.chunks(3).map(|c| c.to_vec()).collect();
            let b = BilinearForm3::new(Mat::from_rows(&ring, rows));
            print_json(&AlgebraJson::from_algebra(&upsilon(&b)));
            Ok(0)
        }
        Cmd::Recover => {
            let a = read_algebra_stdin()?;
            let b = recover_bilinear(&a)?;
            print_json(&BilinearJson::from_bilinear(&b));
            Ok(0)
        }
        Cmd::Opposite => {
            let a = read_algebra_stdin()?;
            print_json(&AlgebraJson::from_algebra(&opposite(&a)));
            Ok(0)
        }
        Cmd::Lift { form, target, variant } => {
            let q = parse_form(&form)?;
            let ring = q.ring().clone();
            let coeffs = parse_tuple(&ring, &target, 6)?;
            let arr: [RingElement; 6] = coeffs.try_into().expect("six coefficients");
            let q2 = QuadraticForm3::new(&ring, arr);
            let doc: MapJson = serde_json::from_str(&read_stdin()?)
                .map_err(|e| Error::Parse(format!("bad map JSON: {e}")))?;
            if doc.ring != ring.to_string() {
                return Err(Error::Parse(format!(
                    "map ring {} does not match --ring {}",
                    doc.ring, ring
                )));
            }
            let phi = doc.to_map()?;
            let s = lift_section(&phi, &q, &q2, variant)?;
            print_json(&SimilarityJson::from_similarity(&s));
            Ok(0)
        }
        Cmd::Classify { field } => {
            let ring = Ring::parse(&field)?;
            let p = match ring {
                Ring::PrimeField(p) => p,
                Ring::Rationals => return Err(Error::FieldTooLarge),
                _ => return Err(Error::NotAField),
            };
            let report = verify_bijection(p)?;
            print_json(&ClassifyJson::from_report(&report));
            Ok(if report.holds() { 0 } else { 1 })
        }
        Cmd::Autgroup(args) => {
            let q = parse_form(&args)?;
            let a = upsilon(&standard_lift(&q));
            let aut = automorphism_group(&a)?;
            let doc = AutGroupJson {
                ring: q.ring().to_string(),
                order: aut.len(),
                automorphisms: aut
                    .iter()
                    .map(|m| {
                        std::array::from_fn(|i| {
                            std::array::from_fn(|j| m.matrix().at(i, j).to_string())
                        })
                    })
                    .collect(),
            };
            print_json(&doc);
            Ok(0)
        }
        Cmd::Verify { suite, all, seed } => {
            let outcomes = if all {
                suites::run_all(seed)?
            } else {
                let name = suite.ok_or_else(|| {
                    Error::Parse("pass --suite <name> or --all".into())
                })?;
                vec![suites::run_suite(&name, seed)?]
            };
            let mut ok = true;
            for o in &outcomes {
                ok &= o.pass;
                print_json(&SuiteResultJson { suite: o.name.to_string(), pass: o.pass });
            }
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    match run(cli.cmd) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            print_json(&ErrorJson::from_error(&e));
            std::process::exit(1);
        }
    }
}
