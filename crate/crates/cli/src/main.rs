//! Command-line front end: check statements against an algebra, classify a
//! regular language by its syntactic monoid, verify closure properties of
//! a class, search for separating algebras, enumerate algebras and
//! translate equations over variable algebras into implications.
//!
//! Exit codes: 0 when everything holds, 1 when a counterexample or witness
//! was found (a failed statement, a closure violation, a separator), 2 on
//! errors such as unparsable input or an exceeded budget.

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};
use finalg::algebra::{parse_algebra, print_algebra, FiniteAlgebra};
use finalg::monad::{check_t_algebra, parse_dfa, syntactic_monoid, AlgebraCache, MonadSpec};
use finalg::separation::{default_vars, separate};
use finalg::term::{
    equation_to_implication, parse_statements, parse_term, satisfies, scan_directive,
    EquationLike, VariableObject,
};
use finalg::variety::{check_closure, ClassSpec, ClosureKind, ALL_KINDS, PRESETS};
use serde_json::json;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{Duration, Instant};

#[derive(Parser)]
#[command(name = "finalg", version, about = "finite algebras for concrete monads")]
struct Cli {
    /// machine-readable JSON output
    #[arg(long, global = true)]
    structured: bool,

    /// directory for enumeration memo files
    #[arg(long, global = true, value_name = "DIR")]
    memo: Option<PathBuf>,

    /// worker threads for enumeration
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    /// wall-clock budget for searches, in seconds
    #[arg(long, global = true, value_name = "SECS")]
    timeout: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every statement of an equation file against an algebra
    Check {
        algebra: PathBuf,
        equations: PathBuf,
    },
    /// Syntactic monoid of a DFA's language, with preset verdicts
    Classify { dfa: PathBuf },
    /// Verify closure properties of a class file
    Closure {
        class: PathBuf,
        /// member size bound (overrides the file's `bound:` directive)
        #[arg(long)]
        bound: Option<usize>,
        /// comma-separated subset of products,subalgebras,quotients,split-quotients
        #[arg(long, value_delimiter = ',')]
        kinds: Vec<String>,
    },
    /// Search for a smallest algebra separating two terms
    Separate {
        u: String,
        v: String,
        #[arg(long, default_value_t = 4)]
        bound: usize,
        #[arg(long, default_value = "word")]
        monad: String,
    },
    /// Stream all algebras of a monad with the given total size
    Enumerate {
        monad: String,
        size: usize,
    },
    /// Translate equations over a variable algebra into implications
    Translate { equations: PathBuf },
    /// List the preset classes and their identities
    Presets,
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    });
}

fn cache_for(cli: &Cli) -> AlgebraCache {
    let mut cache = match &cli.memo {
        Some(dir) => AlgebraCache::with_dir(dir.clone()),
        None => AlgebraCache::new(),
    };
    cache.options.jobs = cli.jobs.max(1);
    cache.options.deadline = cli.timeout.map(|s| Instant::now() + Duration::from_secs(s));
    cache
}

fn load_statements(
    path: &Path,
) -> anyhow::Result<(Arc<MonadSpec>, finalg::term::Statements)> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let monad_name = scan_directive(&text, "monad").unwrap_or_else(|| "word".to_string());
    let spec = MonadSpec::by_name(&monad_name)?;
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let loader = move |rel: &str| -> finalg::Result<FiniteAlgebra> {
        let p = dir.join(rel);
        let text = std::fs::read_to_string(&p)?;
        parse_algebra(&text)
    };
    let statements =
        parse_statements(&text, spec.signature(), spec.default_sort(), &loader)?;
    Ok((spec, statements))
}

fn run(cli: &Cli) -> anyhow::Result<i32> {
    match &cli.command {
        Command::Check { algebra, equations } => cmd_check(cli, algebra, equations),
        Command::Classify { dfa } => cmd_classify(cli, dfa),
        Command::Closure { class, bound, kinds } => cmd_closure(cli, class, *bound, kinds),
        Command::Separate { u, v, bound, monad } => cmd_separate(cli, u, v, *bound, monad),
        Command::Enumerate { monad, size } => cmd_enumerate(cli, monad, *size),
        Command::Translate { equations } => cmd_translate(cli, equations),
        Command::Presets => cmd_presets(cli),
    }
}

fn cmd_check(cli: &Cli, algebra: &Path, equations: &Path) -> anyhow::Result<i32> {
    let text = std::fs::read_to_string(algebra)
        .with_context(|| format!("reading {}", algebra.display()))?;
    let alg = parse_algebra(&text)?;
    let (spec, statements) = load_statements(equations)?;
    let talg = check_t_algebra(&spec, &alg)?;
    let mut all_hold = true;
    let mut results = Vec::new();
    for st in &statements.statements {
        let verdict = satisfies(&talg, st)?;
        let witness = verdict
            .witness
            .as_ref()
            .map(|w| w.display(talg.algebra()).to_string());
        all_hold &= verdict.holds;
        results.push((st.to_string(), verdict.holds, witness));
    }
    if cli.structured {
        let items: Vec<_> = results
            .iter()
            .map(|(s, holds, witness)| {
                json!({ "statement": s, "holds": holds, "witness": witness })
            })
            .collect();
        println!("{}", json!({ "command": "check", "results": items }));
    } else {
        for (s, holds, witness) in &results {
            if *holds {
                println!("HOLDS  {s}");
            } else {
                println!("FAILS  {s}  [{}]", witness.as_deref().unwrap_or(""));
            }
        }
    }
    Ok(if all_hold { 0 } else { 1 })
}

fn cmd_classify(cli: &Cli, dfa: &Path) -> anyhow::Result<i32> {
    let text =
        std::fs::read_to_string(dfa).with_context(|| format!("reading {}", dfa.display()))?;
    let d = parse_dfa(&text)?;
    let (monoid, letters) = syntactic_monoid(&d)?;
    let mut verdicts = Vec::new();
    for p in PRESETS {
        let mut holds = true;
        for st in p.statements() {
            holds &= satisfies(&monoid, &st)?.holds;
        }
        verdicts.push((p.name(), holds));
    }
    if cli.structured {
        let letter_map: serde_json::Map<String, serde_json::Value> = letters
            .iter()
            .map(|(l, e)| (l.clone(), json!(e)))
            .collect();
        let presets: serde_json::Map<String, serde_json::Value> =
            verdicts.iter().map(|(n, h)| (n.to_string(), json!(h))).collect();
        println!(
            "{}",
            json!({
                "command": "classify",
                "monoid": print_algebra(monoid.algebra()),
                "letters": letter_map,
                "presets": presets,
            })
        );
    } else {
        print!("{}", print_algebra(monoid.algebra()));
        for (l, e) in &letters {
            println!("letter {l} -> {e}");
        }
        for (name, holds) in &verdicts {
            println!("{name}: {}", if *holds { "YES" } else { "NO" });
        }
    }
    Ok(0)
}

fn cmd_closure(
    cli: &Cli,
    class: &Path,
    bound: Option<usize>,
    kinds: &[String],
) -> anyhow::Result<i32> {
    let (spec, statements) = load_statements(class)?;
    let n = bound.or(statements.bound).unwrap_or(4);
    let kinds: Vec<ClosureKind> = if kinds.is_empty() {
        ALL_KINDS.to_vec()
    } else {
        kinds
            .iter()
            .map(|k| ClosureKind::by_name(k))
            .collect::<finalg::Result<_>>()?
    };
    let cache = cache_for(cli);
    let spec_class =
        ClassSpec::Presented { spec, statements: statements.statements.clone() };
    let report = check_closure(&spec_class, n, &kinds, &cache)?;
    if cli.structured {
        let kinds_json: Vec<_> = report
            .kinds
            .iter()
            .map(|kr| {
                let counterexamples: Vec<_> = kr
                    .counterexamples
                    .iter()
                    .map(|ce| {
                        json!({
                            "source": print_algebra(ce.source.algebra()),
                            "construction": ce.construction.describe(&ce.source),
                            "result": print_algebra(ce.result.algebra()),
                            "failure": ce.failure,
                        })
                    })
                    .collect();
                json!({ "kind": kr.kind.name(), "pass": kr.pass, "counterexamples": counterexamples })
            })
            .collect();
        println!(
            "{}",
            json!({ "command": "closure", "bound": n, "kinds": kinds_json, "pass": report.all_pass() })
        );
    } else {
        for kr in &report.kinds {
            if kr.pass {
                println!("{}: PASS", kr.kind);
            } else {
                println!("{}: FAIL ({} counterexamples)", kr.kind, kr.counterexamples.len());
                for ce in &kr.counterexamples {
                    println!(
                        "  {} of a {}-element member -> {}-element algebra: {}",
                        ce.construction.describe(&ce.source),
                        ce.source.total_size(),
                        ce.result.total_size(),
                        ce.failure
                    );
                }
            }
        }
    }
    Ok(if report.all_pass() { 0 } else { 1 })
}

fn cmd_separate(cli: &Cli, u: &str, v: &str, bound: usize, monad: &str) -> anyhow::Result<i32> {
    let spec = MonadSpec::by_name(monad)?;
    let u = parse_term(u)?;
    let v = parse_term(v)?;
    let vars = default_vars(&u, &v, &spec);
    let cache = cache_for(cli);
    let witness = separate(&u, &v, &spec, &vars, bound, &cache)?;
    if cli.structured {
        let payload = witness.as_ref().map(|w| {
            json!({
                "algebra": print_algebra(w.algebra.algebra()),
                "assignment": w.assignment.display(w.algebra.algebra()).to_string(),
                "left": w.left,
                "right": w.right,
                "size": w.algebra.total_size(),
            })
        });
        println!(
            "{}",
            json!({
                "command": "separate",
                "u": u.to_string(),
                "v": v.to_string(),
                "bound": bound,
                "separated": witness.is_some(),
                "witness": payload,
            })
        );
    } else if let Some(w) = &witness {
        println!(
            "separated by a {}-element algebra under {}: {} evaluates to {}, {} to {}",
            w.algebra.total_size(),
            w.assignment.display(w.algebra.algebra()),
            u,
            w.left,
            v,
            w.right
        );
        print!("{}", print_algebra(w.algebra.algebra()));
    } else {
        println!("equivalent up to size {bound}");
    }
    Ok(if witness.is_some() { 1 } else { 0 })
}

fn cmd_enumerate(cli: &Cli, monad: &str, size: usize) -> anyhow::Result<i32> {
    let spec = MonadSpec::by_name(monad)?;
    let cache = cache_for(cli);
    let list = cache.exact(&spec, size)?;
    if cli.structured {
        let algebras: Vec<_> =
            list.iter().map(|t| json!(print_algebra(t.algebra()))).collect();
        println!(
            "{}",
            json!({ "command": "enumerate", "monad": monad, "size": size, "count": list.len(), "algebras": algebras })
        );
    } else {
        for (i, t) in list.iter().enumerate() {
            if i > 0 {
                println!("%%");
            }
            print!("{}", print_algebra(t.algebra()));
        }
        eprintln!("{} algebras of size {size}", list.len());
    }
    Ok(0)
}

fn cmd_translate(cli: &Cli, equations: &Path) -> anyhow::Result<i32> {
    let (_, statements) = load_statements(equations)?;
    let mut out = Vec::new();
    for st in &statements.statements {
        match &st.vars {
            VariableObject::AlgebraVars(_) => {
                out.push(equation_to_implication(st, None)?);
            }
            VariableObject::FreeVars(_) => {
                return Err(anyhow!(
                    "statement `{st}` already ranges over free variables"
                ))
            }
        }
    }
    if cli.structured {
        let items: Vec<_> = out
            .iter()
            .map(|e| json!({ "vars": vars_line(e), "statement": e.to_string() }))
            .collect();
        println!("{}", json!({ "command": "translate", "results": items }));
    } else {
        let mut last_vars = String::new();
        for e in &out {
            let vl = vars_line(e);
            if vl != last_vars {
                println!("{vl}");
                last_vars = vl;
            }
            println!("{e}");
        }
    }
    Ok(0)
}

fn vars_line(e: &EquationLike) -> String {
    match &e.vars {
        VariableObject::FreeVars(vs) => {
            let names: Vec<&str> = vs.iter().map(|(n, _)| n.as_str()).collect();
            format!("vars: {}", names.join(" "))
        }
        VariableObject::AlgebraVars(_) => "varalg: <inline>".to_string(),
    }
}

fn cmd_presets(cli: &Cli) -> anyhow::Result<i32> {
    if cli.structured {
        let items: Vec<_> = PRESETS
            .iter()
            .map(|p| {
                let ids: Vec<String> = p
                    .identity_strings()
                    .iter()
                    .map(|(l, r)| format!("{l} = {r}"))
                    .collect();
                json!({ "name": p.name(), "identities": ids })
            })
            .collect();
        println!("{}", json!({ "command": "presets", "presets": items }));
    } else {
        for p in PRESETS {
            let ids: Vec<String> = p
                .identity_strings()
                .iter()
                .map(|(l, r)| format!("{l} = {r}"))
                .collect();
            println!("{}: {}", p.name(), ids.join(", "));
        }
    }
    Ok(0)
}
