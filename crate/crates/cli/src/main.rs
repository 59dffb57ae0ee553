use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use bindsig_core::adamek::{run_oracle, AdamekError};
use bindsig_core::colimit::selftest::{run_selftest, SelftestConfig};
use bindsig_core::subst::{check_hss, check_monad_laws, subst, LawConfig, LiftMode};
use bindsig_core::term::{parse_term, rename};
use bindsig_core::{BindingSignature, Renaming, Substitution, TermError};

/// Language tooling generated from binding signatures.
#[derive(Parser)]
#[command(name = "bindsig", version)]
struct Cli {
    #[command(flatten)]
    cfg: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunConfig {
    /// Seed for every random sample.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Number of random cases.
    #[arg(long, global = true, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    cases: u64,
    /// Largest family parameter considered.
    #[arg(long, global = true, default_value_t = 3)]
    param_bound: usize,
    /// Largest layer or term count before giving up.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    size_cap: u64,
    /// Node budget for random terms.
    #[arg(long, global = true, default_value_t = 30)]
    max_term_size: usize,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect signature files.
    #[command(subcommand)]
    Sig(SigCmd),
    /// Parse, print, rename and substitute terms.
    #[command(subcommand)]
    Term(TermCmd),
    /// Check the substitution equations and monad laws on random samples.
    Laws {
        sig: PathBuf,
        /// Lift substitutions without weakening their images.
        #[arg(long)]
        mutate_lift: bool,
    },
    /// Build the truncated initial chain and audit it against the terms.
    Oracle {
        sig: PathBuf,
        /// Number of functor applications.
        #[arg(short = 'k', long = "k")]
        k: usize,
        #[arg(long, default_value_t = 0)]
        scope: usize,
    },
    /// Colimit kernel tools.
    #[command(subcommand)]
    Colim(ColimCmd),
}

#[derive(Subcommand)]
enum SigCmd {
    /// Validate a signature and list its constructors.
    Check { file: PathBuf },
    /// Print the sum of two signatures.
    Sum { left: PathBuf, right: PathBuf },
}

#[derive(Subcommand)]
enum TermCmd {
    /// Check a term and print its tree as JSON.
    Parse {
        sig: PathBuf,
        term: String,
        #[arg(long, default_value_t = 0)]
        scope: usize,
    },
    /// Print a term in canonical form.
    Print {
        sig: PathBuf,
        term: String,
        #[arg(long, default_value_t = 0)]
        scope: usize,
    },
    /// Rename free variables: `--map 2,0` sends 0 to 2 and 1 to 0.
    Rename {
        sig: PathBuf,
        term: String,
        #[arg(long, default_value_t = 0)]
        scope: usize,
        #[arg(long)]
        to: usize,
        #[arg(long, value_delimiter = ',')]
        map: Vec<usize>,
    },
    /// Substitute for every free variable; bindings are `INDEX=TERM`.
    Subst {
        sig: PathBuf,
        term: String,
        #[arg(long, default_value_t = 0)]
        scope: usize,
        /// Scope of the images; defaults to `--scope`.
        #[arg(long)]
        to: Option<usize>,
        bindings: Vec<String>,
    },
}

#[derive(Subcommand)]
enum ColimCmd {
    /// Union-find against the closure oracle, then the preservation harnesses.
    Selftest {
        /// Use a union-find that drops some unions.
        #[arg(long)]
        inject_fault: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn term_error(e: TermError) -> Failure {
    match e {
        TermError::Overflow { .. } => Failure { code: 3, message: e.to_string() },
        _ => input_error(e.to_string()),
    }
}

/// Exit code 1 without a message; the report already says what failed.
const CHECK_FAILED: u8 = 1;

fn load_sig(path: &Path) -> Result<BindingSignature, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    BindingSignature::parse(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("reports serialize"));
}

fn sig_json(sig: &BindingSignature, param_bound: usize) -> Value {
    json!({
        "name": sig.name(),
        "with_variables": sig.with_variables(),
        "ctors": sig.ctors().iter().map(|c| json!({"name": c.name, "arity": c.arity})).collect::<Vec<_>>(),
        "families": sig.families().iter().map(|f| json!({
            "name": f.name,
            "min": f.param_min,
            "max": f.param_max,
            "arity": f.template_text(),
        })).collect::<Vec<_>>(),
        "param_bound": param_bound,
        "instances": sig.ctor_table(param_bound).iter()
            .filter(|(c, _)| c.param.is_some())
            .map(|(c, a)| json!({"ctor": c.to_string(), "arity": a}))
            .collect::<Vec<_>>(),
    })
}

fn sig_table(sig: &BindingSignature, param_bound: usize) -> String {
    let mode = if sig.with_variables() { "with variables" } else { "no variables" };
    let mut out = format!("signature {} ({mode})\n", sig.name());
    let table = sig.ctor_table(param_bound);
    let width = table.iter().map(|(c, _)| c.to_string().len()).chain(sig.families().iter().map(|f| f.name.len())).max();
    let width = width.unwrap_or(0).max(4);
    if !sig.ctors().is_empty() {
        out.push_str("constructors:\n");
        for c in sig.ctors() {
            out.push_str(&format!("  {:width$}  {}\n", c.name, c.arity));
        }
    }
    if !sig.families().is_empty() {
        out.push_str("families:\n");
        for f in sig.families() {
            let range = match f.param_max {
                Some(max) => format!("{}..={max}", f.param_min),
                None => format!("{}..", f.param_min),
            };
            out.push_str(&format!("  {:width$}  i in {range}  {}\n", f.name, f.template_text()));
        }
        out.push_str(&format!("instances up to parameter {param_bound}:\n"));
        for (c, a) in table.iter().filter(|(c, _)| c.param.is_some()) {
            out.push_str(&format!("  {:width$}  {a}\n", c.to_string()));
        }
    }
    out
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let cfg = &cli.cfg;
    match cli.command {
        Command::Sig(SigCmd::Check { file }) => {
            let sig = load_sig(&file)?;
            if cfg.json {
                print_json(&sig_json(&sig, cfg.param_bound));
            } else {
                print!("{}", sig_table(&sig, cfg.param_bound));
            }
            Ok(0)
        }
        Command::Sig(SigCmd::Sum { left, right }) => {
            let sum = load_sig(&left)?.sum(&load_sig(&right)?).map_err(|e| input_error(e.to_string()))?;
            if cfg.json {
                print_json(&sig_json(&sum, cfg.param_bound));
            } else {
                print!("{}", sum.to_file_text());
            }
            Ok(0)
        }
        Command::Term(cmd) => run_term(cmd, cfg),
        Command::Laws { sig, mutate_lift } => {
            let sig = load_sig(&sig)?;
            let law_cfg = LawConfig {
                samples: cfg.cases as usize,
                seed: cfg.seed,
                param_bound: cfg.param_bound,
                max_term_size: cfg.max_term_size,
                lift_mode: if mutate_lift { LiftMode::NoShift } else { LiftMode::Shift },
                ..LawConfig::default()
            };
            let mut reports = check_hss(&sig, &law_cfg);
            reports.extend(check_monad_laws(&sig, &law_cfg));
            let ok = reports.iter().all(|r| r.ok());
            print_json(&json!({ "signature": sig.name(), "seed": cfg.seed, "reports": reports }));
            Ok(if ok { 0 } else { CHECK_FAILED })
        }
        Command::Oracle { sig, k, scope } => {
            let sig = load_sig(&sig)?;
            let report = run_oracle(&sig, cfg.param_bound, k, scope, cfg.size_cap).map_err(|e| match e {
                AdamekError::Overflow { .. } | AdamekError::Term(TermError::Overflow { .. }) => {
                    Failure { code: 3, message: e.to_string() }
                }
                e => input_error(e.to_string()),
            })?;
            print_json(&report);
            Ok(if report.passed() { 0 } else { CHECK_FAILED })
        }
        Command::Colim(ColimCmd::Selftest { inject_fault }) => {
            let st = SelftestConfig {
                seed: cfg.seed,
                diagrams: cfg.cases as usize,
                harness_cases: (cfg.cases as usize).min(200),
                inject_fault,
            };
            let report = run_selftest(&st).map_err(|e| input_error(e.to_string()))?;
            if cfg.json {
                print_json(&report);
            } else {
                let line = |name: &str, passed: usize, failed: usize| println!("{name:16} {passed}/{}", passed + failed);
                line("oracle", report.oracle.passed, report.oracle.failed);
                line("factorization", report.factorization.passed, report.factorization.failed);
                println!("{:16} {}", "uniqueness", report.uniqueness_checked);
                for (name, t) in report.harnesses.all() {
                    line(name, t.passed, t.failed);
                }
                if let Some(d) = &report.first_disagreement {
                    println!("first disagreement: {}", serde_json::to_string(d).expect("diagram serializes"));
                }
            }
            Ok(if report.passed() { 0 } else { CHECK_FAILED })
        }
    }
}

fn run_term(cmd: TermCmd, cfg: &RunConfig) -> Result<u8, Failure> {
    match cmd {
        TermCmd::Parse { sig, term, scope } => {
            let t = parse_term(&load_sig(&sig)?, &term, scope).map_err(term_error)?;
            print_json(&t.to_json());
        }
        TermCmd::Print { sig, term, scope } => {
            let t = parse_term(&load_sig(&sig)?, &term, scope).map_err(term_error)?;
            println!("{t}");
        }
        TermCmd::Rename { sig, term, scope, to, map } => {
            let t = parse_term(&load_sig(&sig)?, &term, scope).map_err(term_error)?;
            if map.len() != scope {
                return Err(input_error(format!("--map has {} entries for scope {scope}", map.len())));
            }
            let r = Renaming::new(to, map).map_err(term_error)?;
            emit_term(&rename(&t, &r), cfg.json);
        }
        TermCmd::Subst { sig, term, scope, to, bindings } => {
            let sig = load_sig(&sig)?;
            let t = parse_term(&sig, &term, scope).map_err(term_error)?;
            let to = to.unwrap_or(scope);
            let mut images = vec![None; scope];
            for b in &bindings {
                let (index, text) =
                    b.split_once('=').ok_or_else(|| input_error(format!("binding `{b}` is not INDEX=TERM")))?;
                let index: usize =
                    index.trim().parse().map_err(|_| input_error(format!("bad index in binding `{b}`")))?;
                if index >= scope {
                    return Err(input_error(format!("binding for {index} but the scope is {scope}")));
                }
                images[index] = Some(parse_term(&sig, text, to).map_err(term_error)?);
            }
            let images = images
                .into_iter()
                .enumerate()
                .map(|(i, img)| img.ok_or_else(|| input_error(format!("no binding for variable {i}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let s = Substitution::new(scope, to, images).map_err(|e| input_error(e.to_string()))?;
            emit_term(&subst(&t, &s), cfg.json);
        }
    }
    Ok(0)
}

fn emit_term(t: &bindsig_core::Term, json: bool) {
    if json {
        print_json(&t.to_json());
    } else {
        println!("{t}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
