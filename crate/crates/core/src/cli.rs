//! Command-line front end for `tschub`.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::Error;
use crate::operators::{skew_naive, twisted_skew_naive, twisted_skew_positive, OperatorExpr};
use crate::permutation::Permutation;
use crate::polyring::MultiPoly;
use crate::schubert::{
    billey, default_expansion_size, double_schubert, double_schubert_via_pipedreams, double_twisted_schubert,
    double_twisted_schubert_via_chains, expand_schubert, localize, localize_formula, localize_ordinary, schubert,
    schubert_stable, schubert_via_pipedreams, tv_positivity, twisted_schubert, twisted_schubert_via_chains,
    ChainSequence, PipeDream,
};
use crate::symchains::{pieri_e, pieri_h};
use crate::verify;

#[derive(Parser, Debug)]
#[command(name = "tschub", version, about = "Schubert, double and twisted Schubert polynomials, exactly")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Recursion,
    Combinatorial,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PieriKind {
    E,
    H,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SkewVariant {
    /// Positive expansion of the twisted skew operator
    Positive,
    /// Twisted skew operator from subwords of a reduced word of w
    Twisted,
    /// Ordinary skew divided difference
    Ordinary,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Ambient size; defaults to the length of --perm
    #[arg(long)]
    pub n: Option<usize>,
    /// One-line permutation: `2431`, or `2,4,3,1,10,...` beyond 9
    #[arg(long)]
    pub perm: String,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct PolyArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value = "both")]
    pub method: Method,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Ordinary Schubert polynomial (recursion vs pipe dreams)
    Schubert(PolyArgs),
    /// Twisted Schubert polynomial (recursion vs chains)
    Twisted(PolyArgs),
    /// Double Schubert polynomial (recursion vs pipe dreams)
    Double(PolyArgs),
    /// Double twisted Schubert polynomial (recursion vs chains)
    DoubleTwisted(PolyArgs),
    /// Localization of the twisted polynomial of --perm at --at
    Localize {
        #[command(flatten)]
        args: PolyArgs,
        #[arg(long)]
        at: String,
    },
    /// Localization of the ordinary double Schubert polynomial of --perm at --at
    Billey {
        #[command(flatten)]
        args: PolyArgs,
        #[arg(long)]
        at: String,
    },
    /// Terms w of S_v * e_m(x_1..x_k) or S_v * h_m(x_1..x_k) in S_n
    Pieri {
        #[command(flatten)]
        args: PolyArgs,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "e")]
        kind: PieriKind,
    },
    /// Skew operator for w = --perm over v = --perm2
    SkewOp {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        perm2: String,
        #[arg(long, value_enum, default_value = "positive")]
        variant: SkewVariant,
    },
    /// Chains u_1..u_n contributing to the twisted polynomial of --perm
    Chains {
        #[command(flatten)]
        common: Common,
        /// Only chains contributing to the ordinary polynomial
        #[arg(long)]
        minimum_degree: bool,
    },
    /// Reduced pipe dreams of --perm
    Pipedreams {
        #[command(flatten)]
        common: Common,
    },
    /// Run the invariant suites
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Restrict to these suites (repeatable)
        #[arg(long)]
        suite: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check whether T_v S_w is monomial positive for all v, w in S_n
    ExperimentTvPositivity {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// A failed run: exit code plus message for stderr.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidPermutation(_) | Error::SizeMismatch { .. } | Error::Parse { .. } => 2,
            _ => 1,
        };
        Failure { code, message: format!("error: {e}") }
    }
}

type Outcome = std::result::Result<String, Failure>;

/// Parses `argv` (including the program name), runs the command, and
/// returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return e.exit_code();
        }
    };
    match execute(&cli.command) {
        Ok(s) => {
            let _ = writeln!(out, "{s}");
            0
        }
        Err(f) => {
            let _ = writeln!(err, "{}", f.message);
            f.code
        }
    }
}

fn parse_perm(s: &str, n: Option<usize>) -> std::result::Result<Permutation, Failure> {
    let p = Permutation::parse(s)?;
    match n {
        Some(n) if n != p.n() => Err(Error::SizeMismatch { left: n, right: p.n() }.into()),
        _ => Ok(p),
    }
}

fn mismatch(what: &str, w: &Permutation, recursion: &MultiPoly, combinatorial: &MultiPoly) -> Failure {
    let diff = recursion - combinatorial;
    Failure {
        code: 1,
        message: format!(
            "mismatch: {what} for {w}\n  recursion:     {recursion}\n  combinatorial: {combinatorial}\n  difference:    {diff}"
        ),
    }
}

/// Computes by the selected method(s); `both` requires agreement.
fn by_method(
    what: &str,
    w: &Permutation,
    method: Method,
    recursion: impl FnOnce() -> MultiPoly,
    combinatorial: impl FnOnce() -> MultiPoly,
) -> std::result::Result<MultiPoly, Failure> {
    match method {
        Method::Recursion => Ok(recursion()),
        Method::Combinatorial => Ok(combinatorial()),
        Method::Both => {
            let (a, b) = (recursion(), combinatorial());
            if a == b {
                Ok(a)
            } else {
                Err(mismatch(what, w, &a, &b))
            }
        }
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Recursion => "recursion",
        Method::Combinatorial => "combinatorial",
        Method::Both => "both",
    }
}

fn perm_latex(w: &Permutation) -> String {
    w.one_line().iter().map(|i| i.to_string()).collect::<Vec<_>>().join(if w.n() > 9 { "," } else { "" })
}

fn render_poly(kind: &str, symbol: &str, w: &Permutation, method: Method, p: &MultiPoly, format: Format) -> String {
    match format {
        Format::Text => p.to_string(),
        Format::Latex => format!("{symbol}_{{{}}} = {}", perm_latex(w), p.to_latex()),
        Format::Json => json!({
            "kind": kind,
            "n": w.n(),
            "permutation": w,
            "method": method_name(method),
            "polynomial": p,
        })
        .to_string(),
    }
}

const SCHUBERT: &str = r"\mathfrak{S}";
const TWISTED: &str = r"\widetilde{\mathfrak{S}}";

fn execute(cmd: &Command) -> Outcome {
    match cmd {
        Command::Schubert(a) => {
            let w = parse_perm(&a.common.perm, a.common.n)?;
            let p = by_method("schubert", &w, a.method, || schubert(&w), || schubert_via_pipedreams(&w))?;
            Ok(render_poly("schubert", SCHUBERT, &w, a.method, &p, a.common.format))
        }
        Command::Double(a) => {
            let w = parse_perm(&a.common.perm, a.common.n)?;
            let p = by_method("double", &w, a.method, || double_schubert(&w), || double_schubert_via_pipedreams(&w))?;
            Ok(render_poly("double", SCHUBERT, &w, a.method, &p, a.common.format))
        }
        Command::Twisted(a) => {
            let w = parse_perm(&a.common.perm, a.common.n)?;
            let p = by_method("twisted", &w, a.method, || twisted_schubert(&w), || twisted_schubert_via_chains(&w))?;
            Ok(render_poly("twisted", TWISTED, &w, a.method, &p, a.common.format))
        }
        Command::DoubleTwisted(a) => {
            let w = parse_perm(&a.common.perm, a.common.n)?;
            let p = by_method(
                "double-twisted",
                &w,
                a.method,
                || double_twisted_schubert(&w),
                || double_twisted_schubert_via_chains(&w),
            )?;
            Ok(render_poly("double-twisted", TWISTED, &w, a.method, &p, a.common.format))
        }
        Command::Localize { args, at } => {
            let v = parse_perm(&args.common.perm, args.common.n)?;
            let w = parse_perm(at, Some(v.n()))?;
            let factors = localize_formula(&v, &w);
            let p = by_method("localize", &v, args.method, || localize(&v, &w), || factors.product())?;
            Ok(match args.common.format {
                Format::Text => factors.to_string(),
                Format::Latex => {
                    format!(r"{TWISTED}_{{{}}}({}y, y) = {}", perm_latex(&v), perm_latex(&w), p.to_latex())
                }
                Format::Json => json!({
                    "kind": "localize",
                    "n": v.n(),
                    "permutation": v,
                    "at": w,
                    "method": method_name(args.method),
                    "factored": factors.to_string(),
                    "prefactor_pairs": factors.prefactor_pairs,
                    "subset_sum": factors.subset_sum,
                    "polynomial": p,
                })
                .to_string(),
            })
        }
        Command::Billey { args, at } => {
            let v = parse_perm(&args.common.perm, args.common.n)?;
            let w = parse_perm(at, Some(v.n()))?;
            let p = by_method("billey", &v, args.method, || localize_ordinary(&v, &w), || billey(&v, &w))?;
            Ok(match args.common.format {
                Format::Text => p.to_string(),
                Format::Latex => {
                    format!(r"{SCHUBERT}_{{{}}}({}y, y) = {}", perm_latex(&v), perm_latex(&w), p.to_latex())
                }
                Format::Json => json!({
                    "kind": "billey",
                    "n": v.n(),
                    "permutation": v,
                    "at": w,
                    "method": method_name(args.method),
                    "polynomial": p,
                })
                .to_string(),
            })
        }
        Command::Pieri { args, m, k, kind } => pieri_cmd(args, *m, *k, *kind),
        Command::SkewOp { common, perm2, variant } => {
            let w = parse_perm(&common.perm, common.n)?;
            let v = parse_perm(perm2, Some(w.n()))?;
            let op = match variant {
                SkewVariant::Positive => twisted_skew_positive(&w, &v),
                SkewVariant::Twisted => twisted_skew_naive(&w, &v),
                SkewVariant::Ordinary => skew_naive(&w, &v),
            };
            Ok(match common.format {
                Format::Text => op.to_string(),
                Format::Latex => operator_latex(&op),
                Format::Json => json!({
                    "w": w,
                    "v": v,
                    "operator": op,
                })
                .to_string(),
            })
        }
        Command::Chains { common, minimum_degree } => {
            let w = parse_perm(&common.perm, common.n)?;
            let chains = if *minimum_degree {
                ChainSequence::enumerate_minimum_degree(&w)
            } else {
                ChainSequence::enumerate(&w)
            };
            Ok(match common.format {
                Format::Json => serde_json::to_string(&chains).expect("serializable"),
                Format::Text | Format::Latex => chains
                    .iter()
                    .map(|c| {
                        let perms: Vec<String> = c.perms().iter().map(|u| u.to_string()).collect();
                        let weight =
                            if common.format == Format::Latex { c.weight().to_latex() } else { c.weight().to_string() };
                        format!("{}  {weight}", perms.join(" "))
                    })
                    .collect::<Vec<_>>()
                    .join("\n"),
            })
        }
        Command::Pipedreams { common } => {
            let w = parse_perm(&common.perm, common.n)?;
            let dreams = PipeDream::enumerate(&w);
            Ok(match common.format {
                Format::Json => serde_json::to_string(&dreams).expect("serializable"),
                Format::Text | Format::Latex => dreams.iter().map(draw_pipe_dream).collect::<Vec<_>>().join("\n"),
            })
        }
        Command::Verify { n, seed, suite, format } => {
            let known = verify::suite_names();
            if let Some(bad) = suite.iter().find(|s| !known.contains(&s.as_str())) {
                return Err(Failure {
                    code: 2,
                    message: format!("error: unknown suite {bad}; known suites: {}", known.join(", ")),
                });
            }
            let names: Vec<&str> = suite.iter().map(String::as_str).collect();
            let reports = verify::run_suites(&names, *n, *seed);
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&reports).expect("serializable"),
                Format::Text | Format::Latex => reports
                    .iter()
                    .map(|r| match &r.counterexample {
                        None => format!("PASS {:<26} n={} cases={}", r.name, r.n, r.cases),
                        Some(c) => format!("FAIL {:<26} n={} {c}", r.name, r.n),
                    })
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            if reports.iter().all(|r| r.passed) {
                Ok(text)
            } else {
                Err(Failure { code: 1, message: text })
            }
        }
        Command::ExperimentTvPositivity { n, format } => {
            let report = tv_positivity(*n);
            Ok(match format {
                Format::Json => serde_json::to_string_pretty(&report).expect("serializable"),
                Format::Text | Format::Latex => {
                    let mut lines = vec![format!(
                        "checked {} pairs (v, w) in S_{}: {} not monomial positive",
                        report.checked,
                        report.n,
                        report.counterexamples.len()
                    )];
                    lines.extend(
                        report.counterexamples.iter().map(|c| format!("v={} w={}: {}", c.v, c.w, c.polynomial)),
                    );
                    lines.join("\n")
                }
            })
        }
    }
}

fn pieri_cmd(args: &PolyArgs, m: usize, k: usize, kind: PieriKind) -> Outcome {
    let v = Permutation::parse(&args.common.perm)?;
    let big_n = args.common.n.unwrap_or(v.n());
    if v.n() > big_n {
        return Err(Error::SizeMismatch { left: big_n, right: v.n() }.into());
    }
    if k == 0 || k >= big_n {
        return Err(Failure { code: 2, message: format!("error: need 1 <= k < n, got k = {k}, n = {big_n}") });
    }
    let v = v.embed(big_n);
    let (terms, sym) = match kind {
        PieriKind::E => (pieri_e(&v, m, k, big_n)?, MultiPoly::elementary_k(m as i64, k, big_n)),
        PieriKind::H => (pieri_h(&v, m, k, big_n)?, MultiPoly::homogeneous_k(m as i64, k, big_n)),
    };
    if args.method != Method::Recursion {
        let product = &schubert(&v) * &sym;
        let size = default_expansion_size(&product);
        let expansion = expand_schubert(&product, size)?;
        let by_chains: Vec<Permutation> = terms.iter().map(|w| w.embed(size)).collect();
        let agree = expansion.len() == by_chains.len()
            && by_chains.iter().all(|w| expansion.get(w).is_some_and(|c| *c == 1.into()));
        if !agree {
            let sum = terms.iter().fold(MultiPoly::zero(big_n), |acc, w| &acc + &schubert_stable(w, big_n));
            return Err(mismatch("pieri", &v, &sum, &product));
        }
    }
    let letter = if kind == PieriKind::E { "e" } else { "h" };
    Ok(match args.common.format {
        Format::Text => terms.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" "),
        Format::Latex => {
            let rhs = if terms.is_empty() {
                "0".to_string()
            } else {
                terms.iter().map(|w| format!("{SCHUBERT}_{{{}}}", perm_latex(w))).collect::<Vec<_>>().join(" + ")
            };
            format!("{SCHUBERT}_{{{}}} \\cdot {letter}_{{{m}}}^{{({k})}} = {rhs}", perm_latex(&v))
        }
        Format::Json => json!({
            "kind": letter,
            "n": big_n,
            "permutation": v,
            "m": m,
            "k": k,
            "terms": terms,
        })
        .to_string(),
    })
}

fn operator_latex(op: &OperatorExpr) -> String {
    if op.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (idx, t) in op.terms().iter().enumerate() {
        if t.coeff < 0 {
            s.push_str(if idx == 0 { "-" } else { " - " });
        } else if idx > 0 {
            s.push_str(" + ");
        }
        let mag = t.coeff.unsigned_abs();
        if mag != 1 || (t.word.is_empty() && t.leading.is_none()) {
            s.push_str(&mag.to_string());
        }
        if let Some(u) = &t.leading {
            s.push_str(&format!("[{}]", perm_latex(u)));
        }
        for (a, b) in &t.word {
            s.push_str(&format!(r"\partial_{{{a}{b}}}"));
        }
    }
    s
}

/// `+` for a cross, `.` for an elbow, staircase cells only.
fn draw_pipe_dream(pd: &PipeDream) -> String {
    let n = pd.n();
    let mut rows = Vec::with_capacity(n);
    for r in 1..n {
        let row: String = (1..=n - r).map(|c| if pd.is_cross(r, c) { '+' } else { '.' }).collect();
        rows.push(row);
    }
    format!("{}\n{}", pd.weight(), rows.join("\n"))
}
