//! Command-line front end: field/curve inspection, code construction, CSS
//! assembly, distance certification, reference-table checks, tower
//! schedules, prime-field expansion, and invariant self-checks.
//!
//! All output is written to the supplied sink and is byte-identical across
//! runs.  Exit codes: 0 success, 1 a named check or construction failed,
//! 2 usage error.

use std::fmt::Write as _;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::agcode::{evaluation_code, omega_code, tail_divisor, tail_evaluation_places, LinearCode};
use crate::asymptotics::{expansion_schedule, gs_tower_level, t_point_schedule, Q};
use crate::css::{hyperelliptic_build, non_rational_params, t_point_build, t_point_params, CssCode};
use crate::curve::{Curve, Divisor, Place};
use crate::error::{Error, Result};
use crate::expand::{expand_code, expanded_css, verify_expansion_duality, ExpansionBasis};
use crate::fflinalg::Matrix;
use crate::gf::{prime_power, Field};
use crate::minweight::{
    bz_min_weight, coset_min_weight, exhaustive_min_weight, WeightBound, DEFAULT_BUDGET,
    INFINITE_WEIGHT,
};
use crate::riemann_roch::rr_space;
use crate::tables;

#[derive(Parser)]
#[command(
    name = "agqec",
    about = "CSS quantum codes from the curves y^q + y = x^m over GF(q^2)",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a finite field: modulus, sizes, optional element table
    Field {
        /// Field order (a prime power)
        #[arg(long)]
        q: u64,
        /// List every element encoding in canonical order
        #[arg(long)]
        elements: bool,
        /// Print the polynomial basis and its trace-dual basis
        #[arg(long)]
        dual_basis: bool,
    },
    /// Print a curve's invariants and its canonical place list as CSV
    Curve {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u64,
    },
    /// Print a basis of the function space L(G) and its dimension
    Rrspace {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u64,
        /// Divisor coefficients on the tail of the canonical place list
        /// (the last entry lands on the pole place at infinity)
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        coeffs: Vec<i64>,
        /// Use t times a degree-2 place instead of tail coefficients
        #[arg(long, conflicts_with = "coeffs")]
        deg2: Option<i64>,
    },
    /// Build one evaluation code and print its parameters
    Build {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u64,
        /// Divisor coefficients, as in rrspace
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        coeffs: Vec<i64>,
        /// Use t times a degree-2 place instead of tail coefficients
        #[arg(long, conflicts_with = "coeffs")]
        deg2: Option<i64>,
        /// Also print the generator matrix as CSV
        #[arg(long)]
        gen: bool,
        /// Machine-readable JSON (n, k, q, designed_d, exact_d, provenance)
        #[arg(long)]
        json: bool,
    },
    /// Assemble a nested divisor pair into a quantum code
    Css {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u64,
        /// Inner divisor coefficients (tail placement, comma-separated)
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a: Vec<i64>,
        /// Outer divisor coefficients, pointwise >= a
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        b: Vec<i64>,
        /// Degree-2-place family: inner coefficient t1 (with --t2)
        #[arg(long, requires = "t2", conflicts_with_all = ["a", "b"])]
        t1: Option<i64>,
        /// Degree-2-place family: outer coefficient t2
        #[arg(long, requires = "t1")]
        t2: Option<i64>,
        /// Construct the matrices instead of only evaluating formulas
        #[arg(long)]
        build: bool,
        /// Emit one CSV row: n,k,d_lb,q,sd
        #[arg(long)]
        csv: bool,
        /// Machine-readable JSON
        #[arg(long, conflicts_with = "csv")]
        json: bool,
    },
    /// Certify coset minimum distances by enumeration or bracketed search
    Certify {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        b: Vec<i64>,
        #[arg(long, requires = "t2", conflicts_with_all = ["a", "b"])]
        t1: Option<i64>,
        #[arg(long, requires = "t1")]
        t2: Option<i64>,
        /// Enumeration budget in field operations (default 100000000)
        #[arg(long)]
        budget: Option<u64>,
        /// key=value file supplying the budget (key "budget")
        #[arg(long, conflicts_with = "budget")]
        config: Option<String>,
    },
    /// Recompute a published parameter table and flag each row
    Tables {
        /// Which table: 1 (one-point), 2 (two-point), 3 (degree-2 place)
        #[arg(long)]
        which: u8,
        /// Emit CSV rows n,k,d_lb,q,sd,status
        #[arg(long)]
        csv: bool,
        /// Machine-readable JSON
        #[arg(long, conflicts_with = "csv")]
        json: bool,
    },
    /// Emit tower rate/distance schedules as CSV
    Tower {
        /// Field size q^2 of the tower (a square prime power)
        #[arg(long)]
        q2: u64,
        /// Number of levels to emit, starting at 1
        #[arg(long)]
        levels: u32,
        /// Target rate, as a fraction "1/10", decimal "0.1", or integer
        #[arg(long)]
        c: String,
        /// Number of divisor places (default 2)
        #[arg(long)]
        t: Option<i64>,
        /// Expand the schedule to this prime field
        #[arg(long, conflicts_with = "t")]
        prime: Option<u64>,
    },
    /// Expand a code or a nested pair to its prime field
    Expand {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u64,
        /// Divisor coefficients of the code to expand (tail placement)
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a: Vec<i64>,
        /// Outer divisor coefficients: expand the nested pair instead
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        b: Vec<i64>,
        /// The target prime field
        #[arg(long)]
        to_prime: u64,
        /// Also print stabilizer matrices when expanding a pair
        #[arg(long)]
        gen: bool,
    },
    /// Run the invariant self-check suites
    Verify {
        /// Run only the named suite
        #[arg(long)]
        suite: Option<String>,
    },
}

/// Parses and dispatches; returns the process exit code.  Everything,
/// including usage errors, is written to `out`.
pub fn run<S: AsRef<str>>(args: &[S], out: &mut dyn std::io::Write) -> i32 {
    let cli = match Cli::try_parse_from(args.iter().map(|s| s.as_ref())) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = write!(out, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.cmd) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            1
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<(String, i32)> {
    match cmd {
        Cmd::Field { q, elements, dual_basis } => cmd_field(q, elements, dual_basis),
        Cmd::Curve { q, m } => cmd_curve(q, m),
        Cmd::Rrspace { q, m, coeffs, deg2 } => cmd_rrspace(q, m, &coeffs, deg2),
        Cmd::Build { q, m, coeffs, deg2, gen, json } => cmd_build(q, m, &coeffs, deg2, gen, json),
        Cmd::Css { q, m, a, b, t1, t2, build, csv, json } => {
            cmd_css(q, m, &a, &b, t1.zip(t2), build, csv, json)
        }
        Cmd::Certify { q, m, a, b, t1, t2, budget, config } => {
            let budget = match config {
                Some(path) => read_budget(&path)?,
                None => budget.unwrap_or(DEFAULT_BUDGET),
            };
            cmd_certify(q, m, &a, &b, t1.zip(t2), budget)
        }
        Cmd::Tables { which, csv, json } => cmd_tables(which, csv, json),
        Cmd::Tower { q2, levels, c, t, prime } => cmd_tower(q2, levels, &c, t, prime),
        Cmd::Expand { q, m, a, b, to_prime, gen } => cmd_expand(q, m, &a, &b, to_prime, gen),
        Cmd::Verify { suite } => cmd_verify(suite.as_deref()),
    }
}

fn join<T: std::fmt::Display>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

// ---------------------------------------------------------------- field

fn cmd_field(q: u64, elements: bool, dual_basis: bool) -> Result<(String, i32)> {
    let (p, k) =
        prime_power(q).ok_or_else(|| Error::InvalidParameter(format!("{q} is not a prime power")))?;
    let f = Field::new(p, k)?;
    let mut s = String::new();
    let _ = writeln!(s, "field: GF({q}) = GF({p}^{k})");
    let _ = writeln!(s, "modulus (coefficients low-degree-first): {}", join(f.modulus().iter(), ","));
    if elements {
        let _ = writeln!(s, "elements (canonical order): {}", join(f.elements_canonical(), ","));
    }
    if dual_basis {
        let basis = f.polynomial_basis();
        let dual = f.dual_basis(&basis)?;
        let _ = writeln!(s, "polynomial basis: {}", join(basis.iter().map(|e| e.enc()), ","));
        let _ = writeln!(s, "trace-dual basis: {}", join(dual.iter().map(|e| e.enc()), ","));
    }
    Ok((s, 0))
}

// ---------------------------------------------------------------- curve

fn place_csv(i: usize, place: &Place) -> String {
    match place {
        Place::Affine { x, y } => format!("{i},affine,{x},{y}"),
        Place::Degree2 { x, y } => format!("{i},degree2,{x},{y}"),
        Place::Infinity => format!("{i},infinity,,"),
    }
}

fn cmd_curve(q: u64, m: u64) -> Result<(String, i32)> {
    let c = Curve::new(q, m)?;
    let mut s = String::new();
    let _ = writeln!(s, "curve: y^{q} + y = x^{m} over GF({})", q * q);
    let _ = writeln!(s, "genus: {}", c.genus());
    let _ = writeln!(s, "rational places: {}", c.n_rational_places());
    let _ = writeln!(s, "index,kind,x,y");
    for (i, place) in c.rational_places().iter().enumerate() {
        let _ = writeln!(s, "{}", place_csv(i, place));
    }
    Ok((s, 0))
}

// ---------------------------------------------------------------- rrspace

fn divisor_from_flags(c: &Curve, coeffs: &[i64], deg2: Option<i64>) -> Result<(Divisor, Vec<Place>)> {
    match deg2 {
        Some(t) => {
            let place = c.find_degree2_place()?;
            Ok((Divisor::single(place, t), c.rational_places().to_vec()))
        }
        None => {
            if coeffs.is_empty() {
                return Err(Error::InvalidParameter(
                    "a divisor is required: --coeffs or --deg2".into(),
                ));
            }
            Ok((tail_divisor(c, coeffs)?, tail_evaluation_places(c, coeffs.len())))
        }
    }
}

fn cmd_rrspace(q: u64, m: u64, coeffs: &[i64], deg2: Option<i64>) -> Result<(String, i32)> {
    let c = Curve::new(q, m)?;
    let (g, _) = divisor_from_flags(&c, coeffs, deg2)?;
    let basis = rr_space(&c, &g)?;
    let mut s = String::new();
    let _ = writeln!(s, "divisor degree: {}", g.degree());
    let _ = writeln!(s, "dimension: {}", basis.len());
    for (i, f) in basis.iter().enumerate() {
        let num = join(
            f.numerator().iter().map(|(&(dx, dy), &c)| format!("{c}*x^{dx}*y^{dy}")),
            " + ",
        );
        let _ = writeln!(s, "f{i}: ({num}) / ({})", join(f.denominator().iter(), ","));
    }
    Ok((s, 0))
}

// ---------------------------------------------------------------- build

fn code_summary(code: &LinearCode) -> String {
    let d = match (code.exact_d, code.designed_d) {
        (Some(d), _) => format!("{d}"),
        (None, Some(d)) => format!(">={d}"),
        (None, None) => "?".into(),
    };
    format!("[{}, {}, d{}]_{}", code.n(), code.k(), d, code.field().order())
}

fn provenance_json(code: &LinearCode) -> serde_json::Value {
    match &code.provenance {
        None => serde_json::Value::Null,
        Some(p) => serde_json::json!({
            "q": p.q,
            "m": p.m,
            "genus": p.genus,
            "deg_g": p.deg_g,
            "divisor": p.divisor,
            "side": match p.side {
                crate::agcode::CodeSide::Evaluation => "evaluation",
                crate::agcode::CodeSide::Dual => "dual",
            },
        }),
    }
}

fn cmd_build(
    q: u64,
    m: u64,
    coeffs: &[i64],
    deg2: Option<i64>,
    gen: bool,
    json: bool,
) -> Result<(String, i32)> {
    let c = Curve::new(q, m)?;
    let (g, places) = divisor_from_flags(&c, coeffs, deg2)?;
    let code = evaluation_code(&c, &g, &places)?;
    let mut s = String::new();
    if json {
        let value = serde_json::json!({
            "n": code.n(),
            "k": code.k(),
            "q": code.field().order(),
            "designed_d": code.designed_d,
            "exact_d": code.exact_d,
            "provenance": provenance_json(&code),
        });
        let _ = writeln!(s, "{value}");
    } else {
        let _ = writeln!(s, "{}", code_summary(&code));
        if gen {
            let _ = writeln!(s, "generator:");
            let _ = writeln!(s, "{}", code.generator().to_csv());
        }
    }
    Ok((s, 0))
}

// ---------------------------------------------------------------- css

const STABILIZER_CONVENTION: &str =
    "# stabilizers: X rows span the inner code, Z rows span the dual of the outer code";

fn css_pair(
    c: &Curve,
    a: &[i64],
    b: &[i64],
    deg2: Option<(i64, i64)>,
) -> Result<CssCode> {
    match deg2 {
        Some((t1, t2)) => hyperelliptic_build(c, t1, t2),
        None => t_point_build(c, a, b),
    }
}

fn cmd_css(
    q: u64,
    m: u64,
    a: &[i64],
    b: &[i64],
    deg2: Option<(i64, i64)>,
    build: bool,
    csv: bool,
    json: bool,
) -> Result<(String, i32)> {
    let c = Curve::new(q, m)?;
    if deg2.is_none() && (a.is_empty() || b.is_empty()) {
        return Err(Error::InvalidParameter(
            "divisors are required: --a and --b, or --t1 and --t2".into(),
        ));
    }
    let (params, built) = if build {
        let css = css_pair(&c, a, b, deg2)?;
        if !css.stabilizers().commutes()? {
            return Err(Error::Internal("stabilizers do not commute".into()));
        }
        (css.params.clone(), true)
    } else {
        let p = match deg2 {
            Some((t1, t2)) => non_rational_params(
                c.n_rational_places() as usize,
                c.genus() as i64,
                c.base_field().order(),
                &[t1],
                &[t2],
                &[2],
            )?,
            None => t_point_params(&c, a, b)?,
        };
        (p, false)
    };
    let mut s = String::new();
    if csv {
        let _ = writeln!(s, "n,k,d_lb,q,sd");
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            params.n,
            params.k,
            params.d_lb.map_or(String::new(), |d| d.to_string()),
            params.alphabet,
            params.sd.map_or(String::new(), |v| v.to_string()),
        );
    } else if json {
        let value = serde_json::json!({
            "n": params.n,
            "k": params.k,
            "d_lb": params.d_lb,
            "q": params.alphabet,
            "sd": params.sd,
            "built": built,
        });
        let _ = writeln!(s, "{value}");
    } else {
        let _ = writeln!(s, "{STABILIZER_CONVENTION}");
        let _ = writeln!(s, "{params}");
        if let Some(sd) = params.sd {
            let _ = writeln!(s, "singleton defect: <= {sd}");
        }
        if built {
            let _ = writeln!(s, "matrices built; stabilizers commute");
        }
    }
    Ok((s, 0))
}

// ---------------------------------------------------------------- certify

fn read_budget(path: &str) -> Result<u64> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidParameter(format!("config {path}: {e}")))?;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some((key, value)) = line.split_once('=') {
            if key.trim() == "budget" {
                return value
                    .trim()
                    .parse()
                    .map_err(|e| Error::InvalidParameter(format!("config budget: {e}")));
            }
        }
    }
    Err(Error::InvalidParameter(format!("config {path} has no budget= line")))
}

fn bound_text(b: WeightBound) -> String {
    if b.upper == INFINITE_WEIGHT {
        // An exact infinite bound means the coset really is empty; a bracket
        // with an infinite upper end means the budget ran out before the
        // search produced any representative at all.
        if b.is_exact() {
            return "empty coset (no nonzero representative)".into();
        }
        return format!("unresolved within budget (weight >= {})", b.lower);
    }
    if b.is_exact() {
        format!("{} (exact)", b.lower)
    } else {
        format!("in [{}, {}]", b.lower, b.upper)
    }
}

fn cmd_certify(
    q: u64,
    m: u64,
    a: &[i64],
    b: &[i64],
    deg2: Option<(i64, i64)>,
    budget: u64,
) -> Result<(String, i32)> {
    let c = Curve::new(q, m)?;
    if deg2.is_none() && (a.is_empty() || b.is_empty()) {
        return Err(Error::InvalidParameter(
            "divisors are required: --a and --b, or --t1 and --t2".into(),
        ));
    }
    let mut css = css_pair(&c, a, b, deg2)?;
    let designed = css.params.d_lb;
    let dist = css.certify_distance(budget)?;
    let mut s = String::new();
    let _ = writeln!(s, "{STABILIZER_CONVENTION}");
    let _ = writeln!(s, "budget: {budget}");
    if let Some(d) = designed {
        let _ = writeln!(s, "designed bound: d >= {d}");
    }
    let _ = writeln!(s, "X-side coset (outer modulo inner): {}", bound_text(dist.x_side));
    let _ = writeln!(s, "Z-side coset (inner dual modulo outer dual): {}", bound_text(dist.z_side));
    let _ = writeln!(s, "distance: {}", bound_text(dist.overall));
    let _ = writeln!(s, "parameters: {}", css.params);
    Ok((s, 0))
}

// ---------------------------------------------------------------- tables

fn cmd_tables(which: u8, csv: bool, json: bool) -> Result<(String, i32)> {
    let reports = tables::report_table(which)?;
    let mut s = String::new();
    let mut mismatches = Vec::new();
    for r in &reports {
        if !r.matches() {
            mismatches.push(r.label.clone());
        }
    }
    if csv {
        let _ = writeln!(s, "n,k,d_lb,q,sd,status");
        for r in &reports {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{}",
                r.computed.n,
                r.computed.k,
                r.computed.d_lb.map_or(String::new(), |d| d.to_string()),
                r.computed.alphabet,
                r.computed.sd.map_or(String::new(), |v| v.to_string()),
                if r.matches() { "MATCH" } else { "MISMATCH" },
            );
        }
    } else if json {
        let rows: Vec<serde_json::Value> = reports
            .iter()
            .map(|r| {
                serde_json::json!({
                    "label": r.label,
                    "published": {"n": r.published.n, "k": r.published.k, "d_lb": r.published.d_lb},
                    "computed": {
                        "n": r.computed.n,
                        "k": r.computed.k,
                        "d_lb": r.computed.d_lb,
                        "sd": r.computed.sd,
                    },
                    "match": r.matches(),
                })
            })
            .collect();
        let _ = writeln!(s, "{}", serde_json::Value::Array(rows));
    } else {
        let _ = writeln!(s, "table {which}: published vs recomputed ({} rows)", reports.len());
        for r in &reports {
            let _ = writeln!(
                s,
                "{:<34} published {:<20} computed {:<20} SD<={:<3} {}",
                r.label,
                r.published.to_string(),
                r.computed.to_string(),
                r.computed.sd.map_or("?".into(), |v| v.to_string()),
                if r.matches() { "MATCH" } else { "MISMATCH" },
            );
        }
    }
    if mismatches.is_empty() {
        Ok((s, 0))
    } else {
        let _ = writeln!(s, "MISMATCH: published values not reproduced for {}", mismatches.join("; "));
        Ok((s, 1))
    }
}

// ---------------------------------------------------------------- tower

fn parse_ratio(text: &str) -> Result<Q> {
    let bad = |e: &dyn std::fmt::Display| Error::InvalidParameter(format!("rate {text}: {e}"));
    if let Some((num, den)) = text.split_once('/') {
        let n: i128 = num.trim().parse().map_err(|e| bad(&e))?;
        let d: i128 = den.trim().parse().map_err(|e| bad(&e))?;
        if d == 0 {
            return Err(bad(&"zero denominator"));
        }
        return Ok(Ratio::new(n, d));
    }
    if let Some((int, frac)) = text.split_once('.') {
        let negative = int.trim_start().starts_with('-');
        let whole: i128 = match int.trim() {
            "" | "-" | "+" => 0,
            other => other.parse().map_err(|e| bad(&e))?,
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad(&"malformed decimal"));
        }
        if frac.len() > 27 {
            return Err(bad(&"too many decimal digits"));
        }
        let scale = 10i128.pow(frac.len() as u32);
        let part: i128 = frac.parse().map_err(|e| bad(&e))?;
        let magnitude = whole.unsigned_abs() as i128 * scale + part;
        return Ok(Ratio::new(if negative { -magnitude } else { magnitude }, scale));
    }
    Ok(Ratio::from_integer(text.trim().parse().map_err(|e| bad(&e))?))
}

fn ratio_decimal(r: Q) -> String {
    format!("{:.12}", *r.numer() as f64 / *r.denom() as f64)
}

fn cmd_tower(q2: u64, levels: u32, c_text: &str, t: Option<i64>, prime: Option<u64>) -> Result<(String, i32)> {
    let q = (q2 as f64).sqrt().round() as u64;
    if q * q != q2 {
        return Err(Error::InvalidParameter(format!("{q2} is not the square of a prime power")));
    }
    let c = parse_ratio(c_text)?;
    let r_exp = match prime {
        None => None,
        Some(p) => {
            let mut r = 0u32;
            let mut acc = 1u64;
            while acc < q {
                acc = acc.saturating_mul(p);
                r += 1;
            }
            if acc != q || r == 0 {
                return Err(Error::InvalidParameter(format!("q = {q} is not a power of {p}")));
            }
            Some((p, r))
        }
    };
    let t = t.unwrap_or(2);
    let mut rows = Vec::with_capacity(levels as usize);
    for i in 1..=levels {
        let level = gs_tower_level(q, i)?;
        let schedule = match r_exp {
            Some((p, r)) => expansion_schedule(&level, c, p, r)?,
            None => t_point_schedule(&level, c, t.into())?,
        };
        rows.push((level, schedule));
    }
    let mut s = String::new();
    let _ = writeln!(s, "# tower over GF({q2}); place/genus ratio tends to {}", q - 1);
    if let Some((_, schedule)) = rows.first() {
        let _ = writeln!(s, "# note: {}", schedule.note);
    }
    let _ = writeln!(s, "level,g,N,ratio,n,K,sum_b,d_lb,rate,rel_dist");
    for (level, schedule) in &rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{}",
            level.index,
            level.genus,
            level.n_places,
            level.ratio.map_or(String::new(), ratio_decimal),
            schedule.n,
            schedule.k,
            schedule.sum_b,
            schedule.d_lb,
            ratio_decimal(schedule.rate),
            ratio_decimal(schedule.rel_d),
        );
    }
    Ok((s, 0))
}

// ---------------------------------------------------------------- expand

fn cmd_expand(q: u64, m: u64, a: &[i64], b: &[i64], to_prime: u64, gen: bool) -> Result<(String, i32)> {
    let c = Curve::new(q, m)?;
    if a.is_empty() {
        return Err(Error::InvalidParameter("divisor coefficients are required: --a".into()));
    }
    let g1 = tail_divisor(&c, a)?;
    let places = tail_evaluation_places(&c, a.len());
    let inner = evaluation_code(&c, &g1, &places)?;
    let mut s = String::new();
    if b.is_empty() {
        if to_prime != inner.field().p() {
            return Err(Error::InvalidParameter(format!(
                "--to-prime {to_prime} does not match the field characteristic {}",
                inner.field().p()
            )));
        }
        let eb = ExpansionBasis::polynomial(inner.field())?;
        let expanded = expand_code(&eb, &inner)?;
        let _ = writeln!(s, "source: {}", code_summary(&inner));
        let _ = writeln!(s, "expanded: {}", code_summary(&expanded));
        let _ = writeln!(s, "generator:");
        let _ = writeln!(s, "{}", expanded.generator().to_csv());
    } else {
        if b.len() != a.len() {
            return Err(Error::InvalidParameter("--a and --b must have equal length".into()));
        }
        let g2 = tail_divisor(&c, b)?;
        let outer = evaluation_code(&c, &g2, &places)?;
        let css = expanded_css(&inner, &outer, to_prime)?;
        let stab = css.stabilizers();
        if !stab.commutes()? {
            return Err(Error::Internal("expanded stabilizers do not commute".into()));
        }
        let _ = writeln!(s, "{STABILIZER_CONVENTION}");
        let _ = writeln!(s, "{}", css.params);
        let _ = writeln!(
            s,
            "stabilizer shapes: X {}x{}, Z {}x{}; commute",
            stab.h_x.rows(),
            stab.h_x.cols(),
            stab.h_z.rows(),
            stab.h_z.cols(),
        );
        if gen {
            let _ = writeln!(s, "X stabilizers:");
            let _ = writeln!(s, "{}", stab.h_x.to_csv());
            let _ = writeln!(s, "Z stabilizers:");
            let _ = writeln!(s, "{}", stab.h_z.to_csv());
        }
    }
    Ok((s, 0))
}

// ---------------------------------------------------------------- verify

type Suite = (&'static str, fn() -> Result<()>);

fn suites() -> Vec<Suite> {
    vec![
        ("field-arithmetic", verify_fields),
        ("linear-algebra", verify_linalg),
        ("curve-places", verify_curves),
        ("riemann-roch-dimension", verify_dimension),
        ("code-duality", verify_duality),
        ("css-commutation", verify_css),
        ("min-weight", verify_minweight),
        ("expansion-duality", verify_expand),
        ("tower-schedules", verify_schedules),
    ]
}

fn cmd_verify(only: Option<&str>) -> Result<(String, i32)> {
    let all = suites();
    let selected: Vec<&Suite> = match only {
        None => all.iter().collect(),
        Some(name) => {
            let hit: Vec<&Suite> = all.iter().filter(|(n, _)| *n == name).collect();
            if hit.is_empty() {
                return Err(Error::InvalidParameter(format!(
                    "unknown suite {name}; available: {}",
                    join(all.iter().map(|(n, _)| *n), ", ")
                )));
            }
            hit
        }
    };
    let mut s = String::new();
    let mut failures = 0;
    for (name, f) in selected {
        match f() {
            Ok(()) => {
                let _ = writeln!(s, "ok {name}");
            }
            Err(e) => {
                let _ = writeln!(s, "FAILED {name}: {e}");
                failures += 1;
            }
        }
    }
    if failures > 0 {
        let _ = writeln!(s, "{failures} suite(s) failed");
    }
    Ok((s, if failures > 0 { 1 } else { 0 }))
}

fn invariant(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Internal(msg()))
    }
}

fn verify_fields() -> Result<()> {
    for q in [4u64, 8, 9, 25, 27] {
        let (p, k) = prime_power(q).unwrap();
        let f = Field::new(p, k)?;
        let els: Vec<u64> = f.elements().collect();
        invariant(els.len() as u64 == q, || format!("GF({q}): element count"))?;
        // A fixed probe set keeps the triple loop small on the larger fields.
        let probes: Vec<u64> = els.iter().copied().take(5).collect();
        for &a in &els {
            for &b in &els {
                invariant(f.add(a, b) == f.add(b, a), || format!("GF({q}): a+b != b+a"))?;
                invariant(f.mul(a, b) == f.mul(b, a), || format!("GF({q}): ab != ba"))?;
                for &c in &probes {
                    invariant(
                        f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)),
                        || format!("GF({q}): distributivity at {a},{b},{c}"),
                    )?;
                    invariant(
                        f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)),
                        || format!("GF({q}): associativity at {a},{b},{c}"),
                    )?;
                }
            }
            if a != 0 {
                let inv = f.inv(a).ok_or_else(|| Error::Internal(format!("GF({q}): {a} not invertible")))?;
                invariant(f.mul(a, inv) == 1, || format!("GF({q}): a * a^-1 != 1"))?;
            }
            invariant(f.frobenius(a, 1) == f.pow(a, p), || format!("GF({q}): frobenius"))?;
            invariant(f.trace_to_prime(a) < p, || format!("GF({q}): trace range"))?;
        }
        for a in 0..p {
            invariant(f.frobenius(a, 1) == a, || format!("GF({q}): frobenius moves GF({p})"))?;
        }
    }
    Ok(())
}

fn random_matrix(rng: &mut ChaCha8Rng, f: &Field, rows: usize, cols: usize) -> Matrix {
    let mut m = Matrix::zero(f.clone(), rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, rng.random_range(0..f.order()));
        }
    }
    m
}

fn verify_linalg() -> Result<()> {
    let f = Field::new(3, 2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..10 {
        let a = random_matrix(&mut rng, &f, 5, 8);
        let (r1, rank, pivots) = a.rref();
        let (r2, rank2, _) = r1.rref();
        invariant(r1.row_vecs() == r2.row_vecs() && rank == rank2, || {
            format!("trial {trial}: row reduction is not idempotent")
        })?;
        invariant(pivots.len() == rank, || format!("trial {trial}: pivot count"))?;
        let ker = a.kernel();
        invariant(rank + ker.rows() == a.cols(), || {
            format!("trial {trial}: rank {rank} + nullity {} != {}", ker.rows(), a.cols())
        })?;
        if ker.rows() > 0 {
            invariant(a.mul(&ker.transpose())?.is_zero(), || {
                format!("trial {trial}: kernel rows not annihilated")
            })?;
        }
        invariant(a.transpose().transpose().row_vecs() == a.row_vecs(), || {
            format!("trial {trial}: transpose involution")
        })?;
    }
    let a = random_matrix(&mut rng, &f, 4, 5);
    let b = random_matrix(&mut rng, &f, 5, 3);
    let c = random_matrix(&mut rng, &f, 3, 6);
    invariant(
        a.mul(&b)?.mul(&c)?.row_vecs() == a.mul(&b.mul(&c)?)?.row_vecs(),
        || "matrix multiplication is not associative".into(),
    )
}

fn verify_curves() -> Result<()> {
    for (q, m) in [(3u64, 2u64), (3, 4), (4, 5), (5, 2), (5, 3), (5, 6)] {
        let c = Curve::new(q, m)?;
        let expected_n = 1 + q * (1 + (q - 1) * m);
        invariant(c.n_rational_places() == expected_n, || {
            format!("({q},{m}): place count {} != {expected_n}", c.n_rational_places())
        })?;
        invariant(c.genus() == (q - 1) * (m - 1) / 2, || format!("({q},{m}): genus"))?;
        invariant(c.rational_places().len() as u64 == expected_n, || {
            format!("({q},{m}): place list length")
        })?;
        let f = c.base_field().clone();
        for alpha in f.elements() {
            let fiber = c.fiber(&f.element(alpha))?;
            invariant(fiber.len() == 0 || fiber.len() as u64 == q, || {
                format!("({q},{m}): fiber over {alpha} has size {}", fiber.len())
            })?;
            for beta in &fiber {
                invariant(c.contains(&f.element(alpha), beta)?, || {
                    format!("({q},{m}): fiber point off the curve")
                })?;
            }
        }
    }
    Ok(())
}

fn verify_dimension() -> Result<()> {
    for (q, m) in [(3u64, 2u64), (3, 4), (5, 2)] {
        let c = Curve::new(q, m)?;
        let g = c.genus() as i64;
        let n = c.n_rational_places() as i64;
        // One-point divisors across the regular window, then a two-point
        // divisor and a degree-2 supported one.
        for a in (2 * g - 1)..=(2 * g + 6).min(n - 2) {
            let basis = rr_space(&c, &tail_divisor(&c, &[a])?)?;
            invariant(basis.len() as i64 == a + 1 - g, || {
                format!("({q},{m}): dim L({a}*P) = {} != {}", basis.len(), a + 1 - g)
            })?;
        }
        let two = tail_divisor(&c, &[2, 2 * g + 1])?;
        let basis = rr_space(&c, &two)?;
        invariant(basis.len() as i64 == two.degree() + 1 - g, || {
            format!("({q},{m}): two-point dimension")
        })?;
        let t = g + 2;
        match c.find_degree2_place() {
            Ok(p) => {
                let deg2 = Divisor::single(p, t);
                let basis = rr_space(&c, &deg2)?;
                invariant(basis.len() as i64 == 2 * t + 1 - g, || {
                    format!("({q},{m}): degree-2 dimension {} != {}", basis.len(), 2 * t + 1 - g)
                })?;
            }
            // The count of degree-2 places is q(q+1)(q-1)(q+1-m)/2, so only
            // the maximal member m = q+1 is allowed to come up empty.
            Err(Error::NoDegreeTwoPlace) => {
                invariant(m == q + 1, || format!("({q},{m}): degree-2 place missing"))?;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(())
}

fn verify_duality() -> Result<()> {
    for (q, m, a) in [(3u64, 2u64, 5i64), (3, 2, 7), (3, 4, 7), (3, 4, 12), (5, 2, 9)] {
        let c = Curve::new(q, m)?;
        let code = evaluation_code(&c, &tail_divisor(&c, &[a])?, &tail_evaluation_places(&c, 1))?;
        let n = code.n() as i64;
        let g = c.genus() as i64;
        invariant(code.k() as i64 == a + 1 - g, || format!("({q},{m},{a}): primal dimension"))?;
        let dual = code.dual();
        invariant(dual.k() == code.n() - code.k(), || format!("({q},{m},{a}): dual dimension"))?;
        invariant(
            code.generator().mul(&dual.generator().transpose())?.is_zero(),
            || format!("({q},{m},{a}): G * H^T != 0"),
        )?;
        let omega = omega_code(&code)?;
        invariant(omega.k() as i64 == n + g - 1 - a, || {
            format!("({q},{m},{a}): dual dimension {} != n + g - 1 - deg G", omega.k())
        })?;
    }
    Ok(())
}

fn verify_css() -> Result<()> {
    let c34 = Curve::new(3, 4)?;
    for (a, b, n, k, d) in [
        (vec![15i64], vec![16i64], 27usize, 1usize, 11u64),
        (vec![3, 4], vec![7, 16], 26, 16, 3),
    ] {
        let css = t_point_build(&c34, &a, &b)?;
        invariant(
            css.params.n == n && css.params.k == k && css.params.d_lb == Some(d),
            || format!("(3,4) a={a:?} b={b:?}: parameters {}", css.params),
        )?;
        let stab = css.stabilizers();
        invariant(stab.commutes()?, || format!("(3,4) a={a:?} b={b:?}: stabilizers"))?;
        invariant(
            stab.h_x.rows() + stab.h_z.rows() == n - k,
            || format!("(3,4) a={a:?} b={b:?}: stabilizer rank sum"),
        )?;
    }
    let c52 = Curve::new(5, 2)?;
    let css = hyperelliptic_build(&c52, 11, 13)?;
    invariant(
        css.params.n == 46 && css.params.k == 4 && css.params.d_lb == Some(20),
        || format!("(5,2) t=(11,13): parameters {}", css.params),
    )?;
    invariant(css.params.sd == Some(4), || "(5,2) t=(11,13): singleton defect".into())?;
    invariant(css.stabilizers().commutes()?, || "(5,2) t=(11,13): stabilizers".into())
}

fn verify_minweight() -> Result<()> {
    let f9 = Field::new(3, 2)?;
    let ones = Matrix::from_rows(f9.clone(), vec![vec![1; 7]])?;
    let rep = LinearCode::from_generator(ones);
    invariant(exhaustive_min_weight(&rep, DEFAULT_BUDGET)? == 7, || "repetition weight".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..5 {
        let code = LinearCode::from_generator(random_matrix(&mut rng, &f9, 3, 7));
        if code.k() == 0 {
            continue;
        }
        let exact = exhaustive_min_weight(&code, DEFAULT_BUDGET)?;
        let (lower, upper) = bz_min_weight(&code, DEFAULT_BUDGET);
        invariant(lower == exact && upper == exact, || {
            format!("trial {trial}: search [{lower}, {upper}] vs exhaustive {exact}")
        })?;
    }
    let sub = LinearCode::from_generator(Matrix::from_rows(
        f9.clone(),
        vec![vec![1, 0, 0, 0]],
    )?);
    let sup = LinearCode::from_generator(Matrix::from_rows(
        f9,
        vec![vec![1, 0, 0, 0], vec![0, 1, 1, 0]],
    )?);
    invariant(coset_min_weight(&sup, &sub, DEFAULT_BUDGET)? == 2, || "coset exclusion".into())
}

fn verify_expand() -> Result<()> {
    let f9 = Field::new(3, 2)?;
    let eb = ExpansionBasis::polynomial(&f9)?;
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for trial in 0..4 {
        let code = LinearCode::from_generator(random_matrix(&mut rng, &f9, 3, 6));
        invariant(verify_expansion_duality(&code, &eb)?, || {
            format!("trial {trial}: expansion duality")
        })?;
    }
    let c34 = Curve::new(3, 4)?;
    let places = tail_evaluation_places(&c34, 1);
    let inner = evaluation_code(&c34, &tail_divisor(&c34, &[7])?, &places)?;
    let outer = evaluation_code(&c34, &tail_divisor(&c34, &[24])?, &places)?;
    let css = expanded_css(&inner, &outer, 3)?;
    invariant(
        css.params.n == 54 && css.params.k == 34 && css.params.d_lb == Some(3),
        || format!("expanded pair parameters {}", css.params),
    )?;
    invariant(css.params.alphabet == 3, || "expanded alphabet".into())?;
    invariant(css.stabilizers().commutes()?, || "expanded stabilizers".into())
}

fn verify_schedules() -> Result<()> {
    for q in [4u64, 5, 7, 8] {
        let level = gs_tower_level(q, 8)?;
        let target = Ratio::from_integer(q as i128 - 1);
        let dev = (level.ratio.unwrap() - target) / target;
        invariant(dev > Ratio::from_integer(0) && dev < Ratio::new(5, 100), || {
            format!("q={q}: level-8 ratio is {dev} away from {target}")
        })?;
        let hi = Ratio::from_integer(1) - Ratio::new(2, q as i128 - 1);
        for step in 1..8i128 {
            let c = hi * Ratio::new(step, 8);
            for i in [4u32, 8, 12] {
                let s = t_point_schedule(&gs_tower_level(q, i)?, c, 2)?;
                invariant(
                    s.d_lb > 0 && s.rate > Ratio::from_integer(0) && s.rel_d > Ratio::from_integer(0),
                    || format!("q={q} level {i} c={c}: schedule columns not positive"),
                )?;
            }
        }
    }
    let level = gs_tower_level(5, 9)?;
    let c = Ratio::new(1, 10);
    let base = t_point_schedule(&level, c, 2)?;
    let exp = expansion_schedule(&level, c, 5, 1)?;
    invariant(
        exp.n == 2 * base.n && exp.k == 2 * base.k && exp.rel_d_limit == Ratio::new(1, 10),
        || "expansion schedule columns".into(),
    )?;
    invariant(
        matches!(t_point_schedule(&gs_tower_level(3, 6)?, c, 2), Err(Error::EmptyWindow(_))),
        || "q=3 must have an empty window".into(),
    )
}
