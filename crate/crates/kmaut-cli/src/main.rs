use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use kmaut::lie::{Family, SimpleAlgebra};
use kmaut::loop_aut::{conjugacy_test, invariant, realize, LoopInvariant, SecondKindInvariant, StandardLoopAutomorphism};
use kmaut::real_forms::{conj_linear_invariant, real_form_basis, realize_conj_linear, strip_omega, ConjLinearInvariant, RealFormBasis};
use kmaut::tables::{self, emit_rows, enumerate_first_kind, enumerate_second_kind, valid_ks, Emit};
use kmaut::verify::{run_all, Depth};
use kmaut::{Error, Result};

#[derive(Parser)]
#[command(name = "kmaut", version, about = "Finite-order automorphisms and real forms of twisted loop algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct AlgebraArgs {
    /// Family: a, b, c, d, e6, e7, e8, f4 or g2.
    #[arg(long)]
    family: Option<String>,
    /// Rank of a classical family.
    #[arg(long)]
    n: Option<usize>,
    /// Algebra label such as a1 or d4, instead of --family and --n.
    #[arg(long)]
    algebra: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Emit rows of the classification tables.
    Tables {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Order of the outer class of the twist (all valid values if omitted).
        #[arg(long)]
        k: Option<u32>,
        /// 1 for the first kind, 2 for the second kind (both if omitted).
        #[arg(long)]
        kind: Option<u8>,
        #[arg(long, default_value = "json")]
        emit: String,
    },
    /// Compute the invariant of an automorphism given as JSON.
    Invariant {
        #[arg(long = "in")]
        input: String,
    },
    /// Decide whether two automorphisms are conjugate.
    Conjugate {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Build a constant automorphism with a given invariant.
    Realize {
        #[arg(long = "in")]
        input: String,
        #[command(flatten)]
        alg: AlgebraArgs,
    },
    /// Construct a window of the real form attached to a pair of involutions.
    Realform {
        /// Comma-separated involution labels, for example "mu,id".
        #[arg(long)]
        pair: String,
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        window: Option<i64>,
        #[arg(long, default_value = "json")]
        emit: String,
    },
    /// Run the acceptance checks and report one line per criterion.
    Selftest {
        /// Use the full algebra ranges.
        #[arg(long)]
        deep: bool,
        #[arg(long, default_value = "text")]
        emit: String,
    },
}

fn parse_algebra(args: &AlgebraArgs) -> Result<Arc<SimpleAlgebra>> {
    let (family, n) = match (&args.algebra, &args.family) {
        (Some(label), None) => {
            let split = label.find(|c: char| c.is_ascii_digit()).ok_or_else(|| Error::Parse(format!("bad algebra {label:?}")))?;
            let family = Family::parse(label)
                .or_else(|_| Family::parse(&label[..split]))
                .map_err(|_| Error::Parse(format!("bad algebra {label:?}")))?;
            let n = label[split..].parse().map_err(|_| Error::Parse(format!("bad algebra {label:?}")))?;
            if args.n.is_some() {
                return Err(Error::Parse("--algebra and --n are exclusive".into()));
            }
            (family, n)
        }
        (None, Some(f)) => {
            let family = Family::parse(f)?;
            let n = match (family.is_classical(), args.n) {
                (_, Some(n)) => n,
                (false, None) => exceptional_rank(family),
                (true, None) => return Err(Error::Parse("--n is required for classical families".into())),
            };
            (family, n)
        }
        (Some(_), Some(_)) => return Err(Error::Parse("--algebra and --family are exclusive".into())),
        (None, None) => return Err(Error::Parse("an algebra is required (--family/--n or --algebra)".into())),
    };
    tables::algebra(family, n)
}

fn exceptional_rank(f: Family) -> usize {
    f.name()[1..].parse().unwrap_or(0)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

fn pretty(v: &impl serde::Serialize) -> Result<String> {
    serde_json::to_string_pretty(v).map_err(|e| Error::Parse(e.to_string()))
}

fn any_invariant(phi: &StandardLoopAutomorphism) -> Result<LoopInvariant> {
    if phi.phi0().conj_linear() {
        conj_linear_invariant(phi).map(|c| c.0)
    } else {
        invariant(phi)
    }
}

fn mentions_omega(inv: &LoopInvariant) -> bool {
    match inv {
        LoopInvariant::First(i) => strip_omega(&i.rho.to_string()).is_some() || strip_omega(&i.beta).is_some(),
        LoopInvariant::Second(s) => s.pair.iter().any(|l| strip_omega(l).is_some()),
    }
}

fn realform_latex(b: &RealFormBasis) -> String {
    let mut out = format!("% {} [{}, {}], l = {}, |n| <= {}\n", b.algebra, b.pair[0], b.pair[1], b.conductor, b.window);
    out.push_str("\\begin{align*}\n");
    for e in &b.elements {
        let parts: Vec<String> =
            e.loop_part.coeffs().iter().map(|(n, x)| format!("{} e^{{{n}it/{}}}", x.latex(), b.conductor)).collect();
        let body = if parts.is_empty() {
            if !e.c.is_zero() {
                format!("({})c", e.c)
            } else {
                format!("({})d", e.d)
            }
        } else {
            parts.join(" + ")
        };
        out.push_str(&format!("& {body} \\\\\n"));
    }
    out.push_str("\\end{align*}\n");
    out
}

fn realform_text(b: &RealFormBasis) -> String {
    let mut out = format!(
        "{} [{}, {}] l={} window={} fixed={} closed={}\n",
        b.algebra, b.pair[0], b.pair[1], b.conductor, b.window, b.fixed, b.closed
    );
    for d in &b.degrees {
        out.push_str(&format!("n={:<4} real_dim={} complex_dim={}\n", d.n, d.real_dim, d.complex_dim));
    }
    out
}

fn run(cli: Cli) -> Result<(String, bool)> {
    match cli.command {
        Command::Tables { alg, k, kind, emit } => {
            let format: Emit = emit.parse()?;
            let a = parse_algebra(&alg)?;
            let ks = match k {
                Some(k) => vec![k],
                None => valid_ks(&a),
            };
            let kinds: Vec<u8> = match kind {
                Some(1) => vec![1],
                Some(2) => vec![2],
                Some(other) => return Err(Error::Parse(format!("--kind must be 1 or 2, got {other}"))),
                None => vec![1, 2],
            };
            let mut rows = Vec::new();
            for kind in kinds {
                for &k in &ks {
                    rows.push(if kind == 1 { enumerate_first_kind(&a, k)? } else { enumerate_second_kind(&a, k)? });
                }
            }
            Ok((emit_rows(&rows, format)?, true))
        }
        Command::Invariant { input } => {
            let phi: StandardLoopAutomorphism = read_json(&input)?;
            Ok((pretty(&any_invariant(&phi)?)?, true))
        }
        Command::Conjugate { a, b } => {
            let fa: StandardLoopAutomorphism = read_json(&a)?;
            let fb: StandardLoopAutomorphism = read_json(&b)?;
            let result = if fa.phi0().conj_linear() || fb.phi0().conj_linear() {
                if any_invariant(&fa)? == any_invariant(&fb)? && fa.algebra() == fb.algebra() {
                    kmaut::loop_aut::Conjugacy::Conjugate
                } else {
                    kmaut::loop_aut::Conjugacy::NotConjugate
                }
            } else {
                conjugacy_test(&fa, &fb)?
            };
            Ok((pretty(&json!({ "result": result }))?, true))
        }
        Command::Realize { input, alg } => {
            let inv: LoopInvariant = read_json(&input)?;
            let a = parse_algebra(&alg)?;
            let phi = if mentions_omega(&inv) {
                realize_conj_linear(&a, &ConjLinearInvariant(inv))?
            } else {
                realize(&a, &inv)?
            };
            Ok((pretty(&phi)?, true))
        }
        Command::Realform { pair, alg, window, emit } => {
            let labels: Vec<&str> = pair.split(',').map(str::trim).collect();
            let [plus, minus] = labels[..] else {
                return Err(Error::Parse(format!("--pair needs two labels, got {pair:?}")));
            };
            let a = parse_algebra(&alg)?;
            let inv = SecondKindInvariant { pair: [plus.to_string(), minus.to_string()], k: 0 };
            let basis = real_form_basis(&a, &inv, window)?;
            let text = match emit.as_str() {
                "json" => pretty(&basis)?,
                "latex" => realform_latex(&basis),
                "text" => realform_text(&basis),
                other => return Err(Error::Parse(format!("unknown output format {other:?}"))),
            };
            Ok((text, true))
        }
        Command::Selftest { deep, emit } => {
            let reports = run_all(if deep { Depth::Full } else { Depth::Quick });
            let ok = reports.iter().all(|r| r.passed);
            let text = match emit.as_str() {
                "json" => pretty(&reports)?,
                "text" => reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n"),
                other => return Err(Error::Parse(format!("unknown output format {other:?}"))),
            };
            Ok((text, ok))
        }
    }
}

fn emit(text: &str) {
    let mut out = io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn error_payload(message: String) -> ExitCode {
    let v: Value = json!({ "error": message });
    emit(&v.to_string());
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            emit(e.to_string().trim_end());
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            return error_payload(first.trim_start_matches("error: ").to_string());
        }
    };
    match run(cli) {
        Ok((text, ok)) => {
            emit(text.trim_end());
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => error_payload(e.to_string()),
    }
}
