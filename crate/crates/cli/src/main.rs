//! `zlab`: compute Tutte polynomials, zonotopal Hilbert series, superspace
//! tables, inverse systems, exactness reports, and Euler characteristics
//! for hyperplane arrangements, and run the certification suites.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use zlab_core::arrangement::Arrangement;
use zlab_core::corpus;
use zlab_core::invariants::euler_char_lm;
use zlab_core::powerideal::{
    hilbert_quotient_with_cap, inverse_system_basis, polymatroid_span_check, SetFunction,
};
use zlab_core::series::LaurentSeries;
use zlab_core::superzono::{
    d_complex_homology, super_bigraded_hilbert, verify_super_hilbert_formula,
};
use zlab_core::zonotopal::{
    deletion_contraction_sequence, truncation_sequence, verify_hilbert, zonotopal_exponent_map,
    OrderFilter, SequenceReport, ZonotopalSpec,
};

mod suites;

#[derive(Parser)]
#[command(name = "zlab", version, about = "Exact zonotopal algebra computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArg {
    /// `corpus:NAME` or a path to an arrangement file (text or JSON)
    input: String,
    /// Render an aligned text table instead of JSON
    #[arg(long)]
    table: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Tutte polynomial coefficients
    Tutte {
        #[command(flatten)]
        input: InputArg,
    },
    /// Hilbert function of a zonotopal or polymatroid quotient
    Hilbert {
        #[command(flatten)]
        input: InputArg,
        /// Zonotopal level k
        #[arg(long, allow_hyphen_values = true, default_value_t = -1)]
        k: i64,
        /// JSON file with order-filter seeds (hierarchical variant)
        #[arg(long)]
        filter: Option<String>,
        /// JSON file with a polymatroid set function
        #[arg(long)]
        polymatroid: Option<String>,
    },
    /// Bigraded superspace table with homology of the differential
    Super {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, allow_hyphen_values = true, default_value_t = -1)]
        k: i64,
    },
    /// Macaulay inverse-system basis of a graded piece
    InverseSystem {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, allow_hyphen_values = true, default_value_t = -1)]
        k: i64,
        /// Commutative degree of the slice
        #[arg(long)]
        degree: usize,
    },
    /// Deletion-contraction or truncation sequence report
    Sequence {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, allow_hyphen_values = true, default_value_t = -1)]
        k: i64,
        /// Element index for the deletion-contraction sequence
        #[arg(long, conflicts_with = "truncation")]
        element: Option<usize>,
        /// Use the truncation sequence instead
        #[arg(long)]
        truncation: bool,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Equivariant Euler characteristic of the level-k twist
    Euler {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, allow_hyphen_values = true, default_value_t = -1)]
        k: i64,
    },
    /// Run a certification suite; exit 0 iff every verdict passes
    Check {
        /// `all`, `corpus:NAME`, or an arrangement file
        input: String,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        table: bool,
    },
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(3)
}

fn load(input: &str) -> Result<(String, Arrangement), String> {
    if let Some(name) = input.strip_prefix("corpus:") {
        return corpus::by_name(name)
            .map(|a| (name.to_string(), a))
            .ok_or_else(|| format!("unknown corpus arrangement `{name}`"));
    }
    let text = std::fs::read_to_string(input).map_err(|e| format!("{input}: {e}"))?;
    let arr = if text.trim_start().starts_with('{') {
        Arrangement::from_json(&text)
    } else {
        Arrangement::from_text(&text)
    }
    .map_err(|e| format!("{input}: {e}"))?;
    Ok((input.to_string(), arr))
}

fn cap_override() -> Result<Option<usize>, String> {
    match std::env::var("ZLAB_MAX_DEGREE") {
        Ok(v) => v
            .parse::<usize>()
            .map(Some)
            .map_err(|_| format!("ZLAB_MAX_DEGREE: bad value `{v}`")),
        Err(_) => Ok(None),
    }
}

fn emit<T: Serialize>(value: &T, table: bool, render: impl Fn(&T) -> String) -> ExitCode {
    if table {
        print!("{}", render(value));
    } else {
        println!("{}", serde_json::to_string_pretty(value).expect("serialize"));
    }
    ExitCode::SUCCESS
}

#[derive(Serialize)]
struct TutteOut {
    coefficients: BTreeMap<String, i64>,
    beta: i64,
}

fn cmd_tutte(input: &InputArg) -> ExitCode {
    let (_, arr) = match load(&input.input) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    let t = match arr.tutte() {
        Ok(t) => t,
        Err(e) => return fail(e),
    };
    let out = TutteOut {
        coefficients: t
            .coeffs()
            .iter()
            .map(|(&(i, j), &c)| (format!("({i},{j})"), c))
            .collect(),
        beta: t.coeff(1, 0),
    };
    emit(&out, input.table, |o| {
        let mut s = String::new();
        let _ = writeln!(s, "{:>8} {:>8}", "(i,j)", "t_ij");
        for (k, v) in &o.coefficients {
            let _ = writeln!(s, "{k:>8} {v:>8}");
        }
        let _ = writeln!(s, "beta = {}", o.beta);
        s
    })
}

#[derive(Serialize)]
struct HilbertOut {
    dims: Vec<usize>,
    terminated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    formula_match: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    span_dims: Option<Vec<usize>>,
}

fn read_filter(arr: &Arrangement, path: &str) -> Result<OrderFilter, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    let seeds: Vec<Vec<usize>> =
        serde_json::from_str(&text).map_err(|e| format!("{path}: {e}"))?;
    let masks: Vec<u32> = seeds
        .iter()
        .map(|s| s.iter().fold(0u32, |m, &i| m | 1 << i))
        .collect();
    OrderFilter::generated_by(arr, &masks).map_err(|e| format!("{path}: {e}"))
}

fn read_polymatroid(path: &str) -> Result<SetFunction, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    let pairs: Vec<(Vec<usize>, i64)> =
        serde_json::from_str(&text).map_err(|e| format!("{path}: {e}"))?;
    Ok(pairs
        .into_iter()
        .map(|(s, v)| (s.iter().fold(0u32, |m, &i| m | 1 << i), v))
        .collect())
}

fn cmd_hilbert(
    input: &InputArg,
    k: i64,
    filter: &Option<String>,
    polymatroid: &Option<String>,
) -> ExitCode {
    let (_, arr) = match load(&input.input) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    if filter.is_some() && polymatroid.is_some() {
        return fail("choose at most one of --filter and --polymatroid");
    }
    let cap = match cap_override() {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    let out = if let Some(path) = polymatroid {
        let f = match read_polymatroid(path) {
            Ok(f) => f,
            Err(e) => return fail(e),
        };
        match polymatroid_span_check(&arr, &f) {
            Ok(rep) => HilbertOut {
                dims: rep.quotient.dims.clone(),
                terminated: rep.quotient.terminated,
                formula_match: Some(rep.agree),
                span_dims: Some(rep.span_dims),
            },
            Err(e) => return fail(e),
        }
    } else {
        let spec = if let Some(path) = filter {
            let j = match read_filter(&arr, path) {
                Ok(j) => j,
                Err(e) => return fail(e),
            };
            ZonotopalSpec::hierarchical(k, j)
        } else {
            ZonotopalSpec::plain(k)
        };
        let a = match zonotopal_exponent_map(&arr, &spec) {
            Ok(a) => a,
            Err(e) => return fail(e),
        };
        let h = match hilbert_quotient_with_cap(&arr, &a, spec.selection(), cap) {
            Ok(h) => h,
            Err(e) => return fail(e),
        };
        let formula_match = if filter.is_none() && (-2..=0).contains(&k) {
            match verify_hilbert(&arr, k) {
                Ok(cmp) => Some(cmp.equal),
                Err(e) => return fail(e),
            }
        } else {
            None
        };
        HilbertOut {
            dims: h.dims,
            terminated: h.terminated,
            formula_match,
            span_dims: None,
        }
    };
    emit(&out, input.table, |o| {
        let mut s = String::new();
        let _ = writeln!(s, "{:>6} {:>6}", "deg", "dim");
        for (d, v) in o.dims.iter().enumerate() {
            let _ = writeln!(s, "{d:>6} {v:>6}");
        }
        if let Some(m) = o.formula_match {
            let _ = writeln!(s, "formula_match = {m}");
        }
        s
    })
}

#[derive(Serialize)]
struct BidegreeDim {
    i: usize,
    j: usize,
    dim: usize,
}

#[derive(Serialize)]
struct SuperOut {
    r: usize,
    entries: Vec<BidegreeDim>,
    homology: Vec<BidegreeDim>,
    #[serde(skip_serializing_if = "Option::is_none")]
    formula_match: Option<bool>,
}

fn cmd_super(input: &InputArg, k: i64) -> ExitCode {
    let (_, arr) = match load(&input.input) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    let table = match super_bigraded_hilbert(&arr, k) {
        Ok(t) => t,
        Err(e) => return fail(e),
    };
    let hom = match d_complex_homology(&arr, k) {
        Ok(h) => h,
        Err(e) => return fail(e),
    };
    let formula_match = if k == -1 {
        match verify_super_hilbert_formula(&arr) {
            Ok((_, _, eq)) => Some(eq),
            Err(e) => return fail(e),
        }
    } else {
        None
    };
    let mut entries = Vec::new();
    for (i, row) in table.dims.iter().enumerate() {
        for (j, &d) in row.iter().enumerate() {
            if d > 0 {
                entries.push(BidegreeDim { i, j, dim: d });
            }
        }
    }
    let out = SuperOut {
        r: arr.dim(),
        entries,
        homology: hom
            .iter()
            .map(|(&(i, j), &dim)| BidegreeDim { i, j, dim })
            .collect(),
        formula_match,
    };
    emit(&out, input.table, |o| {
        let mut s = String::new();
        let _ = writeln!(s, "{:>4} {:>4} {:>6}", "i", "j", "dim");
        for e in &o.entries {
            let _ = writeln!(s, "{:>4} {:>4} {:>6}", e.i, e.j, e.dim);
        }
        let _ = writeln!(s, "homology:");
        for e in &o.homology {
            let _ = writeln!(s, "{:>4} {:>4} {:>6}", e.i, e.j, e.dim);
        }
        if let Some(m) = o.formula_match {
            let _ = writeln!(s, "formula_match = {m}");
        }
        s
    })
}

#[derive(Serialize)]
struct InverseSystemOut {
    degree: usize,
    dim: usize,
    basis: Vec<String>,
}

fn cmd_inverse_system(input: &InputArg, k: i64, degree: usize) -> ExitCode {
    let (_, arr) = match load(&input.input) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    let spec = ZonotopalSpec::plain(k);
    let a = match zonotopal_exponent_map(&arr, &spec) {
        Ok(a) => a,
        Err(e) => return fail(e),
    };
    let basis = match inverse_system_basis(&arr, &a, spec.selection(), degree) {
        Ok(b) => b,
        Err(e) => return fail(e),
    };
    let out = InverseSystemOut {
        degree,
        dim: basis.len(),
        basis: basis.iter().map(|g| g.to_string()).collect(),
    };
    emit(&out, input.table, |o| {
        let mut s = String::new();
        let _ = writeln!(s, "degree {} dim {}", o.degree, o.dim);
        for b in &o.basis {
            let _ = writeln!(s, "  {b}");
        }
        s
    })
}

fn render_sequence(rep: &SequenceReport) -> String {
    let mut s = String::new();
    for t in &rep.terms {
        let _ = writeln!(s, "{:>14} dims  {:?}", t.name, t.dims);
    }
    for m in &rep.maps {
        let _ = writeln!(s, "{:>14} ranks {:?}", m.name, m.ranks);
    }
    let _ = writeln!(
        s,
        "exact: left {} middle {} right {}",
        rep.left_exact_everywhere(),
        rep.middle_exact_everywhere(),
        rep.right_exact_everywhere()
    );
    s
}

fn cmd_sequence(
    input: &InputArg,
    k: i64,
    element: Option<usize>,
    truncation: bool,
    seed: u64,
) -> ExitCode {
    let (_, arr) = match load(&input.input) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    let rep = if truncation {
        truncation_sequence(&arr, k, seed)
    } else {
        let Some(i) = element else {
            return fail("supply --element I or --truncation");
        };
        deletion_contraction_sequence(&arr, i, &ZonotopalSpec::plain(k))
    };
    match rep {
        Ok(rep) => emit(&rep, input.table, render_sequence),
        Err(e) => fail(e),
    }
}

fn cmd_euler(input: &InputArg, k: i64) -> ExitCode {
    let (_, arr) = match load(&input.input) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    match euler_char_lm(&arr, k) {
        Ok(chi) => emit(&chi, input.table, |c: &LaurentSeries| format!("{c}\n")),
        Err(e) => fail(e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Tutte { input } => cmd_tutte(input),
        Command::Hilbert {
            input,
            k,
            filter,
            polymatroid,
        } => cmd_hilbert(input, *k, filter, polymatroid),
        Command::Super { input, k } => cmd_super(input, *k),
        Command::InverseSystem { input, k, degree } => cmd_inverse_system(input, *k, *degree),
        Command::Sequence {
            input,
            k,
            element,
            truncation,
            seed,
        } => cmd_sequence(input, *k, *element, *truncation, *seed),
        Command::Euler { input, k } => cmd_euler(input, *k),
        Command::Check {
            input,
            suite,
            seed,
            table,
        } => suites::cmd_check(input, suite, *seed, *table),
    }
}
