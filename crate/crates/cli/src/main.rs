use std::io::{self, BufRead, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use ruled_locus::acceptance;
use ruled_locus::birational::{calcexp_curve, extension_to_surface};
use ruled_locus::degrees::degree_summary;
use ruled_locus::doc::{
    curve_from_json, curve_to_json, extension_from_json, matrix_from_json, matrix_to_json, parse_field_flag,
    parse_json, point_to_json, scalar_to_json, surface_from_json, surface_to_json, to_canonical_string,
};
use ruled_locus::forms::Mat2;
use ruled_locus::generate::{gen_boundary, gen_cone, gen_developable, gen_rank3, gen_rank5, gen_type_a, Generated};
use ruled_locus::locus::{phi, psi_biform, psi_determinantal};
use ruled_locus::poncelet::{count_triangles_exact, find_triangles_bruteforce, TriangleCount};
use ruled_locus::report::{analyze, triangle_count_to_json};
use ruled_locus::{Error, Field};

#[derive(Parser)]
#[command(name = "ruled-locus", version, about = "Singular loci and invariants of rational ruled surfaces in P3")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    TypeA,
    Cone,
    Rank5,
    Rank3,
    Developable,
    Boundary,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Biform,
    Det,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded random surface.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        d: usize,
        /// Splitting type (type-a, rank3, and the base of boundary) or degree of g1 (cone).
        #[arg(long)]
        a: Option<usize>,
        /// Degree of the boundary factor.
        #[arg(long, default_value_t = 1)]
        xi_degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `q` or `fp:P`.
        #[arg(long, default_value = "q")]
        field: String,
    },
    /// Full invariant report of a surface; with --batch, one document per input line.
    Analyze {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long)]
        batch: bool,
    },
    /// The singular-locus curve.
    Psi {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long, value_enum, default_value = "biform")]
        method: Method,
    },
    /// The symmetric matrix of the quadratic form on S_d and its rank.
    Phi {
        #[arg(default_value = "-")]
        input: String,
    },
    /// The dual surface.
    Dual {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Act by a 4x4 matrix on P3 or a 2x2 matrix on the parameter line.
    Act {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long, conflicts_with = "pgl2", required_unless_present = "pgl2")]
        pgl4: Option<String>,
        #[arg(long)]
        pgl2: Option<String>,
    },
    /// Poncelet triangles of a plane cubic.
    Triangles {
        #[arg(default_value = "-")]
        input: String,
        /// `exact` or `brute:P`.
        #[arg(long, default_value = "exact")]
        mode: String,
    },
    /// Determinantal degree table.
    Degrees {
        #[arg(long)]
        d: usize,
    },
    /// Surface and curve from a 2x2 extension datum.
    FromExtension {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Run the acceptance suite.
    Selftest {
        #[arg(long)]
        quick: bool,
        /// Run only this criterion (1-12).
        #[arg(long)]
        criterion: Option<usize>,
    },
}

/// A failure with its exit code: 1 for invalid input, 2 for degeneracy.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure { code: if e.is_degeneracy() { 2 } else { 1 }, message: e.to_string() }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure { code: 1, message: message.into() }
}

type CliResult = Result<u8, Failure>;

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| invalid(format!("cannot read stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {path}: {e}")))
    }
}

fn read_json(path: &str) -> Result<Value, Failure> {
    Ok(parse_json(&read_input(path)?)?)
}

fn emit(v: &Value) {
    println!("{}", to_canonical_string(v));
}

fn generate(
    kind: Kind,
    d: usize,
    a: Option<usize>,
    xi_degree: usize,
    seed: u64,
    field: Field,
) -> Result<Generated, Error> {
    let half = (d / 2).max(1);
    match kind {
        Kind::TypeA => gen_type_a(field, d, a.unwrap_or(half), seed),
        Kind::Cone => gen_cone(field, d, a.unwrap_or(half), seed),
        Kind::Rank5 => gen_rank5(field, d, seed),
        Kind::Rank3 => gen_rank3(field, d, a.unwrap_or(half), seed),
        Kind::Developable => {
            if !d.is_multiple_of(2) || d < 2 {
                return Err(Error::InvalidInput("developable surfaces have even degree d = 2e - 2".into()));
            }
            gen_developable(field, d / 2 + 1, seed)
        }
        Kind::Boundary => {
            let d0 = d.checked_sub(xi_degree).filter(|&d0| d0 >= 2).ok_or_else(|| {
                Error::InvalidInput(format!("boundary needs d - xi_degree >= 2, got d = {d}, xi_degree = {xi_degree}"))
            })?;
            gen_boundary(field, d0, a.unwrap_or(d0 / 2), xi_degree, seed)
        }
    }
}

fn analyze_line(line: &str) -> (Value, u8) {
    match parse_json(line).and_then(|v| surface_from_json(&v)) {
        Ok(psi) => {
            let r = analyze(&psi);
            let code = if r.has_degeneracy() { 2 } else { 0 };
            (r.to_json(), code)
        }
        Err(e) => (json!({ "error": e.to_string() }), 1),
    }
}

fn batch_threads() -> Option<usize> {
    std::env::var("RULED_LOCUS_THREADS").ok().and_then(|s| s.trim().parse().ok()).filter(|&n| n > 0)
}

fn analyze_batch(input: &str) -> CliResult {
    let lines: Vec<String> = if input == "-" {
        io::stdin().lock().lines().collect::<Result<_, _>>().map_err(|e| invalid(format!("cannot read stdin: {e}")))?
    } else {
        read_input(input)?.lines().map(str::to_string).collect()
    };
    let lines: Vec<&str> = lines.iter().map(|l| l.trim()).filter(|l| !l.is_empty()).collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = batch_threads() {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| invalid(format!("cannot start worker pool: {e}")))?;
    let results: Vec<(Value, u8)> = pool.install(|| lines.par_iter().map(|l| analyze_line(l)).collect());
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for (v, _) in &results {
        writeln!(out, "{}", to_canonical_string(v)).map_err(|e| invalid(format!("cannot write output: {e}")))?;
    }
    let worst = results.iter().map(|r| r.1).fold(0, |acc, c| if acc == 1 || c == 1 { 1 } else { acc.max(c) });
    Ok(worst)
}

fn pgl2_from_json(v: &Value, field: Field) -> Result<Mat2, Failure> {
    let m = matrix_from_json(v, field)?;
    if m.rows() != 2 || m.cols() != 2 {
        return Err(invalid("PGL2 element must be 2x2"));
    }
    Ok([[m.get(0, 0).clone(), m.get(0, 1).clone()], [m.get(1, 0).clone(), m.get(1, 1).clone()]])
}

fn triangles(input: &str, mode: &str) -> CliResult {
    let curve = curve_from_json(&read_json(input)?)?;
    if curve.degree() != 3 {
        return Err(invalid(format!("triangles need a cubic, got degree {}", curve.degree())));
    }
    if mode == "exact" {
        let count = count_triangles_exact(&curve)?;
        let degenerate = matches!(count, TriangleCount::Indeterminate(_));
        emit(&json!({ "mode": "exact", "result": triangle_count_to_json(&count) }));
        return Ok(if degenerate { 2 } else { 0 });
    }
    let p: u64 = mode
        .strip_prefix("brute:")
        .and_then(|p| p.parse().ok())
        .ok_or_else(|| invalid(format!("mode must be exact or brute:P, got {mode:?}")))?;
    let reduced = match curve.field() {
        Field::Rational => curve.reduce_mod(p)?,
        Field::Prime { p: q } if q == p => curve,
        f => return Err(invalid(format!("curve over {f} cannot be read modulo {p}"))),
    };
    if p > 257 {
        return Err(invalid("brute force is limited to p <= 257"));
    }
    let found = find_triangles_bruteforce(&reduced)?;
    let list: Vec<Value> = found.iter().map(|t| Value::Array(t.iter().map(point_to_json).collect())).collect();
    emit(&json!({ "mode": "brute", "p": p, "count": found.len(), "triangles": list }));
    Ok(0)
}

fn degrees(d: usize) -> CliResult {
    emit(&degree_summary(d)?);
    Ok(0)
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Gen { kind, d, a, xi_degree, seed, field } => {
            let field = parse_field_flag(&field)?;
            let g = generate(kind, d, a, xi_degree, seed, field)?;
            emit(&surface_to_json(&g.surface));
            Ok(0)
        }
        Command::Analyze { input, batch } => {
            if batch {
                return analyze_batch(&input);
            }
            let psi = surface_from_json(&read_json(&input)?)?;
            let r = analyze(&psi);
            emit(&r.to_json());
            Ok(if r.has_degeneracy() { 2 } else { 0 })
        }
        Command::Psi { input, method } => {
            let psi = surface_from_json(&read_json(&input)?)?;
            match method {
                Method::Biform => emit(&curve_to_json(&psi_biform(&psi)?)),
                Method::Det => emit(&curve_to_json(&psi_determinantal(&psi)?)),
                Method::Both => {
                    let bi = psi_biform(&psi)?;
                    let det = psi_determinantal(&psi)?;
                    let scalar = det.proportional(&bi).ok_or_else(|| invalid("the two constructions disagree"))?;
                    emit(&json!({
                        "biform": curve_to_json(&bi),
                        "det": curve_to_json(&det),
                        "proportional": true,
                        "scalar": scalar_to_json(&scalar),
                    }));
                }
            }
            Ok(0)
        }
        Command::Phi { input } => {
            let psi = surface_from_json(&read_json(&input)?)?;
            let m = phi(&psi);
            emit(&json!({ "matrix": matrix_to_json(&m), "rank": m.rank() }));
            Ok(0)
        }
        Command::Dual { input } => {
            emit(&surface_to_json(&surface_from_json(&read_json(&input)?)?.dual()));
            Ok(0)
        }
        Command::Act { input, pgl4, pgl2 } => {
            let psi = surface_from_json(&read_json(&input)?)?;
            let out = match (pgl4, pgl2) {
                (Some(path), _) => {
                    let g = matrix_from_json(&read_json(&path)?, psi.field())?;
                    if g.rows() != 4 || g.cols() != 4 {
                        return Err(invalid("PGL4 element must be 4x4"));
                    }
                    psi.act_pgl4(&g)?
                }
                (None, Some(path)) => psi.act_pgl2(&pgl2_from_json(&read_json(&path)?, psi.field())?)?,
                (None, None) => return Err(invalid("act needs --pgl4 or --pgl2")),
            };
            emit(&surface_to_json(&out));
            Ok(0)
        }
        Command::Triangles { input, mode } => triangles(&input, &mode),
        Command::Degrees { d } => degrees(d),
        Command::FromExtension { input } => {
            let e = extension_from_json(&read_json(&input)?)?;
            let psi = extension_to_surface(&e)?;
            let bi = psi_biform(&psi)?;
            let curve = calcexp_curve(&e)?;
            let equal = curve.proportional(&bi).is_some();
            emit(&json!({
                "surface": surface_to_json(&psi),
                "curve": curve_to_json(&curve),
                "psi": curve_to_json(&bi),
                "equal": equal,
            }));
            Ok(if equal { 0 } else { 1 })
        }
        Command::Selftest { quick, criterion } => {
            let ids: Vec<usize> = match criterion {
                Some(id) if (1..=acceptance::CRITERIA.len()).contains(&id) => vec![id],
                Some(id) => return Err(invalid(format!("no criterion {id}"))),
                None => (1..=acceptance::CRITERIA.len()).collect(),
            };
            let mut all = true;
            for id in ids {
                let o = acceptance::run(id, quick);
                println!("{o}");
                all &= o.passed;
            }
            Ok(if all { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("{}", to_canonical_string(&json!({ "error": f.message })));
            ExitCode::from(f.code)
        }
    }
}
