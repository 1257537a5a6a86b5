use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use quivkit::ar::{minimal_projective_resolution, standard_resolution, tau_power};
use quivkit::io::{representation_from_json, representation_to_json};
use quivkit::kronecker::{
    bongartz_test, cx_closure_check, decompose, iso_test, make_indec, verify_pattern_table, IndecLabel, Param,
    TableOptions,
};
use quivkit::rep::{direct_sum, evaluation_morphism, kernel, Representation};
use quivkit::report::{run_reported, RunReport};
use quivkit::{Error, Field};

#[derive(Parser)]
#[command(name = "quivkit", version, about = "Exact computations with quiver representations")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Base field: `q` or `gf:p`.
    #[arg(long, global = true, env = "QUIVKIT_FIELD", default_value = "q")]
    field: String,
    /// Emit a JSON run report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomised steps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for table and closure checks.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension (and optionally a basis) of Hom(M, N).
    Hom {
        m: String,
        n: String,
        #[arg(long)]
        basis: bool,
    },
    /// The evaluation morphism M ⊗ Hom(M, N) → N.
    Ev {
        m: String,
        n: String,
        #[arg(long)]
        kernel: bool,
        #[arg(long)]
        decompose: bool,
    },
    /// Auslander-Reiten translate.
    Tau {
        m: String,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        power: i64,
        #[arg(long)]
        inverse: bool,
    },
    /// Standard (or minimal) projective resolution.
    Resolve {
        m: String,
        #[arg(long)]
        minimal: bool,
    },
    /// Krull-Schmidt decomposition over the Kronecker quiver.
    Decompose { m: String },
    /// Isomorphism test via decompositions.
    Iso { m: String, n: String },
    /// Isomorphism test via Hom dimensions over a kernel-closed test set.
    Bongartz {
        m: String,
        n: String,
        /// Extra objects for the test set, comma separated.
        #[arg(long, value_delimiter = ',')]
        generators: Vec<String>,
        #[arg(long, default_value_t = 200)]
        budget: usize,
    },
    /// Compare computed evaluation kernels with the tabulated formulas.
    VerifyTable {
        #[arg(long, default_value_t = 4)]
        max_m: usize,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// Regular parameters, comma separated; `all` means every point of a prime field.
        #[arg(long, default_value = "0,1,inf", allow_hyphen_values = true)]
        lambdas: String,
        /// Also certify each kernel decomposition with explicit complementary subspaces.
        #[arg(long)]
        certify: bool,
    },
    /// Check that evaluation kernels stay inside add{P, I, R(λ) : λ ∈ X}.
    CxCheck {
        #[arg(long, default_value = "0,1,inf", allow_hyphen_values = true)]
        lambdas: String,
        #[arg(long, default_value_t = 4)]
        max_index: usize,
    },
}

/// Bad input or an unmet precondition; exits with status 2.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

struct Ctx {
    field: Field,
    warnings: Vec<String>,
}

impl Ctx {
    /// A label, a `+`-separated sum of labels, or a path to a JSON document.
    fn load(&mut self, arg: &str) -> Result<Representation, Failure> {
        if arg.ends_with(".json") || Path::new(arg).is_file() {
            let text = std::fs::read_to_string(arg).map_err(|e| Failure(format!("{arg}: {e}")))?;
            let v: Value = serde_json::from_str(&text).map_err(|e| Failure(format!("{arg}: {e}")))?;
            return Ok(representation_from_json(&v, Some(self.field))?);
        }
        let mut parts = Vec::new();
        for piece in arg.split('+') {
            let (label, warning) = IndecLabel::parse(self.field, piece)?;
            if let Some(w) = warning {
                self.warnings.push(w);
            }
            parts.push(make_indec(self.field, &label)?);
        }
        if parts.len() == 1 {
            return Ok(parts.pop().expect("one part"));
        }
        Ok(direct_sum(&parts)?.sum)
    }

    fn lambdas(&mut self, text: &str) -> Result<Vec<Param>, Failure> {
        if text.trim() == "all" {
            return Param::all(self.field).ok_or_else(|| Failure("`all` needs a prime field".into()));
        }
        let mut out: Vec<Param> = Vec::new();
        for t in text.split(',').filter(|t| !t.trim().is_empty()) {
            let (p, changed) = Param::parse(self.field, t)?;
            if changed {
                self.warnings.push(format!("parameter `{}` reduced to {p} in {}", t.trim(), self.field));
            }
            if !out.contains(&p) {
                out.push(p);
            }
        }
        Ok(out)
    }
}

fn dims_text(m: &Representation) -> String {
    format!("({})", m.dims().iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","))
}

/// Decomposition text, `None` when the quiver is not Kronecker.
fn decomposition_value(m: &Representation) -> Result<Option<(String, Value)>, Failure> {
    if !m.quiver().is_kronecker() {
        return Ok(None);
    }
    match decompose(m) {
        Ok(d) => Ok(Some((d.to_string(), json!({"summands": d, "complete": true})))),
        Err(Error::IncompleteFactorization { found }) => Ok(Some((
            format!("{found} ⊕ (regular part outside the base field)"),
            json!({"summands": *found, "complete": false}),
        ))),
        Err(e) => Err(e.into()),
    }
}

struct Outcome {
    text: String,
    result: Value,
    mismatch: bool,
}

fn run(cli: &Cli, ctx: &mut Ctx) -> Result<(Outcome, RunReport), Failure> {
    let jobs = cli.global.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let (verb, inputs): (&str, Vec<String>) = match &cli.command {
        Command::Hom { m, n, .. } => ("hom", vec![m.clone(), n.clone()]),
        Command::Ev { m, n, .. } => ("ev", vec![m.clone(), n.clone()]),
        Command::Tau { m, .. } => ("tau", vec![m.clone()]),
        Command::Resolve { m, .. } => ("resolve", vec![m.clone()]),
        Command::Decompose { m } => ("decompose", vec![m.clone()]),
        Command::Iso { m, n } => ("iso", vec![m.clone(), n.clone()]),
        Command::Bongartz { m, n, .. } => ("bongartz", vec![m.clone(), n.clone()]),
        Command::VerifyTable { .. } => ("verify-table", vec![]),
        Command::CxCheck { .. } => ("cx-check", vec![]),
    };
    let field = ctx.field;
    run_reported(verb, inputs, field, || -> Result<(Outcome, Value), Failure> {
        let out = match &cli.command {
            Command::Hom { m, n, basis } => {
                let (m, n) = (ctx.load(m)?, ctx.load(n)?);
                let hb = quivkit::rep::hom_basis(&m, &n)?;
                let mut text = format!("dim Hom = {}", hb.dim());
                let mut result = json!({"dim": hb.dim()});
                if *basis {
                    let elems: Vec<Value> = hb.basis.iter().map(quivkit::io::morphism_to_json).collect();
                    for (i, f) in hb.basis.iter().enumerate() {
                        text.push_str(&format!("\nf{}:", i + 1));
                        for (v, c) in m.quiver().vertices().iter().zip(f.comps()) {
                            text.push_str(&format!("\n  {v}: {:?}", c.to_strings()));
                        }
                    }
                    result["basis"] = json!(elems);
                }
                Outcome { text, result, mismatch: false }
            }
            Command::Ev { m, n, kernel: want_kernel, decompose: want_dec } => {
                let (m, n) = (ctx.load(m)?, ctx.load(n)?);
                let ev = evaluation_morphism(&m, &n)?;
                let h = ev.basis.dim();
                let surjective = ev.map.is_surjective();
                let mut text =
                    format!("dim Hom = {h}\nev: M^{h} → N, surjective: {}", if surjective { "yes" } else { "no" });
                let mut result = json!({"hom_dim": h, "surjective": surjective});
                if *want_kernel || *want_dec {
                    let (k, _) = kernel(&ev.map)?;
                    text.push_str(&format!("\nker dims = {}", dims_text(&k)));
                    result["kernel"] = representation_to_json(&k);
                    if *want_dec {
                        match decomposition_value(&k)? {
                            Some((t, v)) => {
                                text.push_str(&format!("\nker ≅ {t}"));
                                result["kernel_decomposition"] = v;
                            }
                            None => text.push_str("\ndecomposition needs the Kronecker quiver"),
                        }
                    }
                }
                Outcome { text, result, mismatch: false }
            }
            Command::Tau { m, power, inverse } => {
                let m = ctx.load(m)?;
                let k = if *inverse { -power } else { *power };
                let t = tau_power(&m, k)?;
                let mut text = format!("τ^{k} M dims = {}", dims_text(&t));
                let mut result = json!({"power": k, "translate": representation_to_json(&t)});
                if let Some((d, v)) = decomposition_value(&t)? {
                    text.push_str(&format!("\nτ^{k} M ≅ {d}"));
                    result["decomposition"] = v;
                }
                Outcome { text, result, mismatch: false }
            }
            Command::Resolve { m, minimal } => {
                let m = ctx.load(m)?;
                if *minimal {
                    let res = minimal_projective_resolution(&m)?;
                    let names = |xs: &[usize]| -> Vec<String> {
                        xs.iter().map(|&x| format!("P({})", m.quiver().vertices()[x])).collect()
                    };
                    let (p1, p0) = (names(&res.p1), names(&res.p0));
                    let exact = res.is_exact()?;
                    Outcome {
                        text: format!("0 → {} → {} → M → 0, exact: {}", join_sum(&p1), join_sum(&p0), yes(exact)),
                        result: json!({"p1": p1, "p0": p0, "exact": exact}),
                        mismatch: !exact,
                    }
                } else {
                    let res = standard_resolution(&m)?;
                    let exact = res.u.is_injective()
                        && res.v.is_surjective()
                        && kernel(&res.v)?.0.dims() == res.p1.dims()
                        && res.v.compose(&res.u)?.is_zero();
                    Outcome {
                        text: format!(
                            "P1 dims = {}\nP0 dims = {}\nexact: {}",
                            dims_text(&res.p1),
                            dims_text(&res.p0),
                            yes(exact)
                        ),
                        result: json!({
                            "p1": representation_to_json(&res.p1),
                            "p0": representation_to_json(&res.p0),
                            "exact": exact,
                        }),
                        mismatch: !exact,
                    }
                }
            }
            Command::Decompose { m } => {
                let m = ctx.load(m)?;
                let (t, v) = decomposition_value(&m)?.ok_or(Error::NotKronecker)?;
                Outcome { text: format!("M ≅ {t}"), result: v, mismatch: false }
            }
            Command::Iso { m, n } => {
                let (m, n) = (ctx.load(m)?, ctx.load(n)?);
                let v = iso_test(&m, &n)?;
                Outcome {
                    text: format!(
                        "isomorphic: {}{}",
                        yes(v.isomorphic),
                        if v.certain { "" } else { " (Hom fingerprints only)" }
                    ),
                    result: json!(v),
                    mismatch: false,
                }
            }
            Command::Bongartz { m, n, generators, budget } => {
                let (m, n) = (ctx.load(m)?, ctx.load(n)?);
                let gens = generators.iter().map(|g| ctx.load(g)).collect::<Result<Vec<_>, _>>()?;
                match bongartz_test(&m, &n, &gens, *budget) {
                    Ok(v) => {
                        let mut text =
                            format!("isomorphic: {}\nbound: {}\nobjects: {}", yes(v.isomorphic), v.bound, v.objects);
                        if let Some(w) = &v.witness {
                            text.push_str(&format!(
                                "\nwitness: {} dims {:?}, dim Hom(M, X) = {}, dim Hom(N, X) = {}",
                                w.description, w.dims, w.hom_from_m, w.hom_from_n
                            ));
                        }
                        Outcome { text, result: json!(v), mismatch: false }
                    }
                    Err(Error::BudgetExceeded { budget, separated }) => Outcome {
                        text: format!("budget of {budget} objects exceeded; no separating object found so far"),
                        result: json!({"budget_exceeded": budget, "separated": separated, "isomorphic": null}),
                        mismatch: false,
                    },
                    Err(e) => return Err(e.into()),
                }
            }
            Command::VerifyTable { max_m, max_n, lambdas, certify } => {
                let lambdas = ctx.lambdas(lambdas)?;
                let opts = TableOptions {
                    field,
                    max_m: *max_m,
                    max_n: *max_n,
                    lambdas,
                    jobs,
                    certify: *certify,
                    seed: cli.global.seed,
                };
                if opts.max_m == 0 || opts.max_n == 0 {
                    return Err(Failure("--max-m and --max-n must be at least 1".into()));
                }
                let report = verify_pattern_table(&opts)?;
                Outcome { text: report.to_text(), mismatch: !report.all_ok(), result: json!(report) }
            }
            Command::CxCheck { lambdas, max_index } => {
                let lambdas = ctx.lambdas(lambdas)?;
                let report = cx_closure_check(field, &lambdas, *max_index, jobs)?;
                let mut text = format!(
                    "X = {{{}}}, max index {}: {} pairs, {} violations",
                    report.lambdas.join(", "),
                    report.max_index,
                    report.pairs,
                    report.violations.len()
                );
                for v in &report.violations {
                    text.push_str(&format!(
                        "\n  ker ev[{}][{}] ≅ {} leaves X via {}",
                        v.m,
                        v.n,
                        v.kernel,
                        v.offending.join(", ")
                    ));
                }
                for (m, n) in &report.undecided {
                    text.push_str(&format!("\n  ker ev[{m}][{n}] could not be split over the base field"));
                }
                Outcome { text, mismatch: !report.holds(), result: json!(report) }
            }
        };
        let result = out.result.clone();
        Ok((out, result))
    })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join_sum(xs: &[String]) -> String {
    if xs.is_empty() {
        "0".into()
    } else {
        xs.join(" ⊕ ")
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let field: Field = match cli.global.field.parse() {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut ctx = Ctx { field, warnings: Vec::new() };
    let outcome = run(&cli, &mut ctx);
    for w in &ctx.warnings {
        eprintln!("warning: {w}");
    }
    match outcome {
        Ok((out, report)) => {
            let text = if cli.global.json {
                serde_json::to_string_pretty(&report).expect("reports serialise")
            } else {
                out.text
            };
            let _ = writeln!(std::io::stdout(), "{text}");
            if out.mismatch {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
