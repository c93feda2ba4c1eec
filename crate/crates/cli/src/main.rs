//! `conjcount`: count solutions of polynomial systems in `z` and `conj(z)`.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use conjcount::counting::{
    build_conjugate_ideal, conjecture_check, degeneracy_discriminant, family_count, harmonic_bound, harmonic_traces,
    restricted_form_3x3, ConjSystem, Count, CountOptions, HarmonicInstance,
};
use conjcount::forms::{hermitian_killing_form, real_killing_form, signature, symmetric_signature};
use conjcount::groebner::{buchberger_with_order, standard_monomials};
use conjcount::oracle::{oracle_count, OracleConfig};
use conjcount::parse::{parse_constant, parse_sources};
use conjcount::report::{count_document, matrix_strings, monomial_name, render_pretty};
use conjcount::{Error, GenPoly, MonomialOrder, QuotientAlgebra};

#[derive(Parser)]
#[command(name = "conjcount", version, about = "Count solutions of polynomial systems in z and conj(z)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SystemInput {
    /// Polynomials, e.g. "z^2 + conj(z)"; each may hold several separated by ';'
    exprs: Vec<String>,
    /// Read polynomials from a file (one per line)
    #[arg(long)]
    file: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Count solutions from the signature of the Hermitian trace form
    Count {
        #[command(flatten)]
        input: SystemInput,
        /// Weight polynomial; must equal its own conjugate
        #[arg(long)]
        xi: Option<String>,
        /// Cross-check with the numeric solver
        #[arg(long)]
        oracle: bool,
        /// Include leading principal minors of the form
        #[arg(long)]
        minors: bool,
        /// Human-readable output instead of JSON
        #[arg(long)]
        pretty: bool,
    },
    /// Print the trace form matrix
    Form {
        #[command(flatten)]
        input: SystemInput,
        /// Real symmetric form in x = Re z, y = Im z
        #[arg(long)]
        real: bool,
        #[arg(long)]
        xi: Option<String>,
    },
    /// Gröbner basis of the conjugate-closed ideal
    Groebner {
        #[command(flatten)]
        input: SystemInput,
        /// Lexicographic order instead of graded reverse lexicographic
        #[arg(long)]
        lex: bool,
        /// Use the input as given, without adding conjugates
        #[arg(long)]
        raw: bool,
    },
    /// Closed-form bound for one harmonic polynomial q(z) + p(conj z)
    Bound {
        #[command(flatten)]
        input: SystemInput,
    },
    /// Classify z^n + a conj(z)^n + b = 0
    Family {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// Compare the characteristic polynomial with the conjectured closed form
        #[arg(long)]
        conjecture: bool,
    },
    /// Solve numerically and list the points
    Oracle {
        #[command(flatten)]
        input: SystemInput,
    },
}

enum Outcome {
    Done(Value),
    Text(String),
    /// Output printed but the count is infinite or unknown.
    Open(Value),
    OpenText(String),
}

fn read_system(input: &SystemInput, extra: Option<&str>) -> Result<(Vec<GenPoly>, Option<GenPoly>), Error> {
    let mut sources: Vec<String> = input.exprs.clone();
    if let Some(path) = &input.file {
        let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{path}: {e}")))?;
        sources.push(text);
    }
    if sources.iter().all(|s| s.trim().is_empty()) {
        return Err(Error::InvalidInput("no polynomials given".into()));
    }
    let n_sys = sources.len();
    if let Some(x) = extra {
        sources.push(x.to_string());
    }
    let refs: Vec<&str> = sources.iter().map(String::as_str).collect();
    let mut parsed = parse_sources(&refs, None)?;
    let xi = extra.map(|_| parsed.pop().unwrap_or_default());
    let xi = match xi {
        Some(v) if v.len() != 1 => return Err(Error::InvalidInput("weight must be a single polynomial".into())),
        Some(mut v) => Some(v.remove(0)),
        None => None,
    };
    let polys: Vec<GenPoly> = parsed.into_iter().take(n_sys).flatten().collect();
    if polys.is_empty() {
        return Err(Error::InvalidInput("no polynomials given".into()));
    }
    Ok((polys, xi))
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    match cli.command {
        Command::Count { input, xi, oracle, minors, pretty } => {
            let (polys, xi) = read_system(&input, xi.as_deref())?;
            let sys = ConjSystem::new(polys)?;
            let cfg = OracleConfig::from_env();
            let doc = count_document(&sys, &CountOptions { xi, minors }, oracle.then_some(&cfg))?;
            let open = matches!(doc.count, Count::Infinite | Count::Unknown);
            Ok(match (pretty, open) {
                (true, false) => Outcome::Text(render_pretty(&doc)),
                (true, true) => Outcome::OpenText(render_pretty(&doc)),
                (false, false) => Outcome::Done(serde_json::to_value(&doc).expect("report serializes")),
                (false, true) => Outcome::Open(serde_json::to_value(&doc).expect("report serializes")),
            })
        }
        Command::Form { input, real, xi } => {
            let (polys, xi) = read_system(&input, xi.as_deref())?;
            let sys = ConjSystem::new(polys)?;
            let r = sys.num_pairs();
            let xi = xi.unwrap_or_else(|| GenPoly::one(r));
            if real {
                if !xi.is_star_symmetric() {
                    return Err(Error::NotStarSymmetric);
                }
                let mut gens = Vec::new();
                for p in sys.polys() {
                    let parts = p.to_real_coords();
                    gens.extend([parts.re_part, parts.im_part].into_iter().filter(|q| !q.is_zero()));
                }
                let form = real_killing_form(&gens, &xi.to_real_coords().re_part)?;
                let names = GenPoly::real_var_names(r);
                let basis: Vec<String> =
                    form.basis_labels.iter().map(|m| GenPoly::monomial(r, m.clone()).display_with(&names)).collect();
                Ok(Outcome::Done(json!({
                    "real": true,
                    "system": gens.iter().map(|g| g.display_with(&names)).collect::<Vec<_>>(),
                    "basis": basis,
                    "form_matrix": matrix_strings(&form.entries),
                    "signature": symmetric_signature(&form)?,
                })))
            } else {
                let qa = QuotientAlgebra::new(conjcount::buchberger(&build_conjugate_ideal(&sys))?)?;
                let form = hermitian_killing_form(&qa, &xi)?;
                Ok(Outcome::Done(json!({
                    "real": false,
                    "system": sys.polys().iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "basis": form.basis_labels.iter().map(monomial_name).collect::<Vec<_>>(),
                    "form_matrix": matrix_strings(&form.entries),
                    "signature": signature(&form)?,
                })))
            }
        }
        Command::Groebner { input, lex, raw } => {
            let (polys, _) = read_system(&input, None)?;
            let sys = ConjSystem::new(polys)?;
            let gens = if raw { sys.polys().to_vec() } else { build_conjugate_ideal(&sys) };
            let order = if lex { MonomialOrder::Lex } else { MonomialOrder::GrevLex };
            let gb = buchberger_with_order(&gens, order)?;
            let basis = standard_monomials(&gb).ok();
            Ok(Outcome::Done(json!({
                "order": order,
                "generators": gb.generators().iter().map(ToString::to_string).collect::<Vec<_>>(),
                "leading_terms": gb.leading_terms().iter().map(monomial_name).collect::<Vec<_>>(),
                "quotient_dim": basis.as_ref().map(|b| b.dimension()),
                "basis": basis.map(|b| b.monomials().iter().map(monomial_name).collect::<Vec<_>>()),
            })))
        }
        Command::Bound { input } => {
            let (polys, _) = read_system(&input, None)?;
            let [p] = polys.as_slice() else {
                return Err(Error::UnsupportedShape("bound takes a single polynomial".into()));
            };
            let inst = HarmonicInstance::from_poly(p)?;
            let traces = harmonic_traces(&inst).ok();
            let form = restricted_form_3x3(&inst).ok();
            let b = harmonic_bound(&inst)?;
            Ok(Outcome::Done(json!({
                "polynomial": inst.to_poly().to_string(),
                "n": inst.n(),
                "m": inst.m(),
                "bound": b.bound,
                "degenerate": b.degenerate,
                "discriminant": degeneracy_discriminant(&inst).to_string(),
                "traces": traces.map(|t| json!({
                    "w": t.tr_w.to_string(), "w2": t.tr_w2.to_string(), "zw": t.tr_zw.to_string(),
                })),
                "restricted_form": form.as_ref().map(|f| matrix_strings(&f.entries)),
                "restricted_det": form.map(|f| f.entries.det().to_string()),
            })))
        }
        Command::Family { n, a, b, conjecture } => {
            let a = parse_constant(&a)?;
            let b = parse_constant(&b)?;
            let fc = family_count(n, &a, &b)?;
            let conj = if conjecture { Some(conjecture_check(n, &a, &b)?) } else { None };
            let mut v = serde_json::to_value(&fc).expect("family result serializes");
            v["n"] = json!(n);
            v["a"] = json!(a.to_string());
            v["b"] = json!(b.to_string());
            v["conjecture"] = serde_json::to_value(&conj).expect("conjecture result serializes");
            Ok(if fc.count == Count::Infinite { Outcome::Open(v) } else { Outcome::Done(v) })
        }
        Command::Oracle { input } => {
            let (polys, _) = read_system(&input, None)?;
            let sys = ConjSystem::new(polys)?;
            let rep = oracle_count(&build_conjugate_ideal(&sys), &OracleConfig::from_env())?;
            Ok(Outcome::Done(json!({
                "system": sys.polys().iter().map(ToString::to_string).collect::<Vec<_>>(),
                "count": rep.count.singles,
                "pairs": rep.count.pairs,
                "solutions": rep.solutions,
            })))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Done(v)) => {
            println!("{}", serde_json::to_string_pretty(&v).expect("json output"));
            ExitCode::SUCCESS
        }
        Ok(Outcome::Text(s)) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Ok(Outcome::Open(v)) => {
            println!("{}", serde_json::to_string_pretty(&v).expect("json output"));
            ExitCode::from(2)
        }
        Ok(Outcome::OpenText(s)) => {
            print!("{s}");
            ExitCode::from(2)
        }
        Err(e) => {
            let v = json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
            println!("{}", serde_json::to_string_pretty(&v).expect("json output"));
            ExitCode::from(1)
        }
    }
}
