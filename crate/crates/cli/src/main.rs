use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use att_cli::{bench, coverage, load_model_arg, read, CliError};
use att_core::{check_document, parse_document, print_judgment, Document};
use att_interp::{redex_witness, soundness, Interpreter, Meaning};
use att_model::format::{max_size_from_env, Model};
use att_model::shipped;
use att_model::verify::{comp_rule_counterexample, verify_model, SuiteOptions};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "att", version, about = "Axiomatic type theory checker and groupoid model tools")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    report: Format,
    /// Largest groupoid (in morphisms) accepted from a model file.
    #[arg(long, global = true)]
    max_size: Option<usize>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check every judgment of the given files.
    Check {
        files: Vec<PathBuf>,
        /// Print the derivation tree of each accepted judgment.
        #[arg(long)]
        explain: bool,
        /// Print the checking time of each judgment.
        #[arg(long)]
        bench: bool,
    },
    /// Interpret the judgments of a file in a model.
    Interpret {
        file: PathBuf,
        /// A shipped model name or a model file.
        #[arg(long, default_value = "strict")]
        model: String,
    },
    /// Run the model axiom suite.
    ModelVerify {
        /// Shipped model names or model files; all shipped models if empty.
        models: Vec<String>,
    },
    /// Check that interpretation is sound on the given files.
    Soundness {
        files: Vec<PathBuf>,
        /// Models to use; every shipped model covering the signature if empty.
        #[arg(long)]
        model: Vec<String>,
    },
    /// Show the computation rule failing in a model.
    Counterexample {
        #[arg(long, default_value = "counterexample")]
        model: String,
    },
    /// Time the checker on the benchmark family and fit its exponent.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "64,128,256,512")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        reps: usize,
    },
    /// Check a corpus directory and its `reject/` subdirectory.
    Coverage { dir: PathBuf },
}

enum Failure {
    Rejected,
    Input(String),
}

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        Failure::Input(e.to_string())
    }
}

type Run = Result<(), Failure>;

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(value).expect("reports serialize")
        ),
        Format::Text => print!("{}", text()),
    }
}

fn verdict(ok: bool) -> Run {
    if ok {
        Ok(())
    } else {
        Err(Failure::Rejected)
    }
}

fn parse_file(path: &PathBuf) -> Result<Document, Failure> {
    let src = read(path)?;
    parse_document(&src).map_err(|e| Failure::Input(format!("{}: parse error at {e}", path.display())))
}

#[derive(Serialize)]
struct ItemOut {
    line: usize,
    judgment: String,
    ok: bool,
    error: Option<String>,
    size: Option<usize>,
    micros: Option<u128>,
    derivation: Option<String>,
}

#[derive(Serialize)]
struct FileOut {
    file: String,
    items: Vec<ItemOut>,
}

fn run_check(cli: &Cli, files: &[PathBuf], explain: bool, timed: bool) -> Run {
    let mut outs = Vec::new();
    let mut all_ok = true;
    for path in files {
        let doc = parse_file(path)?;
        let mut items = Vec::new();
        for item in &doc.items {
            let start = Instant::now();
            let one = Document {
                signature: doc.signature.clone(),
                items: vec![item.clone()],
            };
            let r = check_document(&one).remove(0).result;
            let micros = start.elapsed().as_micros();
            all_ok &= r.is_ok();
            items.push(ItemOut {
                line: item.span.line,
                judgment: print_judgment(&item.judgment, &doc.signature),
                ok: r.is_ok(),
                error: r.as_ref().err().map(|e| e.to_string()),
                size: r.as_ref().ok().map(|c| c.size()),
                micros: timed.then_some(micros),
                derivation: r
                    .as_ref()
                    .ok()
                    .filter(|_| explain)
                    .map(|c| c.derivation.render(&doc.signature)),
            });
        }
        outs.push(FileOut {
            file: path.display().to_string(),
            items,
        });
    }
    emit(cli.report, &outs, || {
        let mut s = String::new();
        for f in &outs {
            for i in &f.items {
                let status = if i.ok { "ok" } else { "error" };
                s += &format!("{}:{}: {status}: {}\n", f.file, i.line, i.judgment);
                if let Some(us) = i.micros {
                    s += &format!("  checked in {us} µs, {} nodes\n", i.size.unwrap_or(0));
                }
                if let Some(e) = &i.error {
                    s += &format!("  {}\n", e.replace('\n', "\n  "));
                }
                if let Some(d) = &i.derivation {
                    for l in d.lines() {
                        s += &format!("  {l}\n");
                    }
                }
            }
        }
        s
    });
    verdict(all_ok)
}

fn max_size(cli: &Cli) -> usize {
    cli.max_size.unwrap_or_else(max_size_from_env)
}

fn model(cli: &Cli, name: &str) -> Result<Model, Failure> {
    Ok(load_model_arg(name, max_size(cli))?)
}

#[derive(Serialize)]
struct InterpOut {
    line: usize,
    judgment: String,
    ok: bool,
    summary: String,
}

fn run_interpret(cli: &Cli, file: &PathBuf, model_name: &str) -> Run {
    let doc = parse_file(file)?;
    let m = model(cli, model_name)?;
    let mut interp = Interpreter::new(&m, &doc.signature);
    let mut outs = Vec::new();
    for r in check_document(&doc) {
        let judgment = print_judgment(&r.item.judgment, &doc.signature);
        let (ok, summary) = match r.result {
            Err(e) => (false, format!("does not check: {e}")),
            Ok(c) => match interp.judgment(&c) {
                Err(e) => (false, e.to_string()),
                Ok(i) => {
                    let g = i.ctx.groupoid();
                    let ctx = format!("context: {} objects, {} morphisms", g.obj_count(), g.mor_count());
                    let what = match &i.meaning {
                        Meaning::Ctx => "a groupoid".to_string(),
                        Meaning::Type(f) => format!(
                            "a pseudofunctor with {} fiber morphisms",
                            f.fiber_morphisms()
                        ),
                        Meaning::Term(t) => format!(
                            "a section into {} objects",
                            t.display.total.obj_count()
                        ),
                        Meaning::TypeEq { .. } | Meaning::TermEq { .. } => {
                            format!("an equation; functor-equal: {}", i.holds())
                        }
                    };
                    (i.holds(), format!("{ctx}; {what}"))
                }
            },
        };
        outs.push(InterpOut {
            line: r.item.span.line,
            judgment,
            ok,
            summary,
        });
    }
    let all_ok = outs.iter().all(|o| o.ok);
    emit(cli.report, &outs, || {
        outs.iter()
            .map(|o| {
                let status = if o.ok { "ok" } else { "error" };
                format!("{}:{}: {status}: {}\n  {}\n", file.display(), o.line, o.judgment, o.summary)
            })
            .collect()
    });
    verdict(all_ok)
}

fn run_verify(cli: &Cli, names: &[String]) -> Run {
    let models: Vec<Model> = if names.is_empty() {
        shipped::all()
    } else {
        names.iter().map(|n| model(cli, n)).collect::<Result<_, _>>()?
    };
    let opts = SuiteOptions {
        seed: cli.seed,
        ..SuiteOptions::default()
    };
    let mut reports = Vec::new();
    for m in &models {
        let start = Instant::now();
        let r = verify_model(m, &opts).map_err(|e| Failure::Input(format!("{}: {e}", m.name)))?;
        reports.push((r, start.elapsed().as_secs_f64()));
    }
    let all_ok = reports.iter().all(|(r, _)| r.ok());
    let plain: Vec<_> = reports.iter().map(|(r, _)| r).collect();
    emit(cli.report, &plain, || {
        let mut s = String::new();
        for (r, secs) in &reports {
            s += &format!(
                "model {}: {} checks, {} instances, {} failures ({secs:.2} s)\n",
                r.model,
                r.checks().len(),
                r.instances(),
                r.failures()
            );
            for e in &r.entries {
                s += &format!("  {} / {}\n", e.display_map, e.report.to_string().replace('\n', "\n    "));
            }
            for n in &r.notes {
                s += &format!("  note: {n}\n");
            }
        }
        s
    });
    verdict(all_ok)
}

fn run_soundness(cli: &Cli, files: &[PathBuf], names: &[String]) -> Run {
    let mut reports = Vec::new();
    for path in files {
        let doc = parse_file(path)?;
        let models: Vec<Model> = if names.is_empty() {
            shipped::all()
                .into_iter()
                .filter(|m| Interpreter::new(m, &doc.signature).covers_signature())
                .collect()
        } else {
            names.iter().map(|n| model(cli, n)).collect::<Result<_, _>>()?
        };
        for m in &models {
            reports.push((path.display().to_string(), soundness(&doc, m)));
        }
    }
    let all_ok = reports.iter().all(|(_, r)| r.ok());
    emit(cli.report, &reports, || {
        reports
            .iter()
            .map(|(f, r)| format!("{f}: {r}"))
            .collect()
    });
    verdict(all_ok)
}

fn run_counterexample(cli: &Cli, name: &str) -> Run {
    let m = model(cli, name)?;
    let c = comp_rule_counterexample(&m).map_err(|e| Failure::Input(e.to_string()))?;
    let w = redex_witness(&m).map_err(|e| Failure::Input(e.to_string()))?;
    let found = !c.functor_eq && c.h_section.ok();
    #[derive(Serialize)]
    struct Out<'a> {
        semantic: &'a att_model::verify::Counterexample,
        syntactic: &'a att_interp::RedexWitness,
    }
    emit(cli.report, &Out { semantic: &c, syntactic: &w }, || {
        let mut s = format!("model {}: motive {}\n", c.model, c.motive);
        for r in &c.rows {
            s += &format!("  at {}: J_c[r_A] = {}, c = {}\n", r.object, r.j_r, r.c);
        }
        s += &format!("  functor_eq(J_c[r_A], c) = {}\n", c.functor_eq);
        if let Some(d) = &c.first_difference {
            s += &format!("  first difference: {d}\n");
        }
        s += &format!("  h_c components: {}\n", c.h_cell.join(", "));
        s += &format!("  {}\n", c.h_section.to_string().replace('\n', "\n  "));
        s += &format!(
            "syntax: {} vs {}: functor_eq = {}, computation axiom interprets: {}\n  checker: {}\n",
            w.redex,
            w.branch,
            w.functor_eq,
            w.axiom_interprets,
            w.rejection.replace('\n', "\n  ")
        );
        s
    });
    verdict(found)
}

fn run_bench(cli: &Cli, sizes: &[usize], reps: usize) -> Run {
    if sizes.len() < 2 {
        return Err(Failure::Input("bench needs at least two sizes".into()));
    }
    let r = bench(sizes, reps).map_err(Failure::Input)?;
    emit(cli.report, &r, || {
        let mut s = String::new();
        for p in &r.points {
            s += &format!("n = {:4}: {:8} nodes, {:.4} s\n", p.n, p.nodes, p.seconds);
        }
        s += &format!(
            "log-log exponent {:.3}, total {:.2} s\n",
            r.exponent, r.total_seconds
        );
        s
    });
    Ok(())
}

fn run_coverage(cli: &Cli, dir: &PathBuf) -> Run {
    let c = coverage(dir)?;
    emit(cli.report, &c, || {
        let mut s = String::new();
        for f in c.accept.iter().chain(&c.reject).filter(|f| !f.ok) {
            s += &format!("{}: FAIL\n  {}\n", f.file, f.detail.replace('\n', "\n  "));
        }
        s += &format!(
            "{} accept files, {} reject files, {} of {} rules exercised, {:.2} s\n",
            c.accept.len(),
            c.reject.len(),
            c.rule_counts.len(),
            att_core::Rule::all_labels().len(),
            c.seconds
        );
        if !c.missing_rules.is_empty() {
            s += &format!("missing rules: {}\n", c.missing_rules.join(", "));
        }
        s
    });
    verdict(c.ok())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = att_cli::with_deep_stack(move || dispatch(&cli));
    match r {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Rejected) => ExitCode::from(1),
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: &Cli) -> Run {
    match &cli.command {
        Command::Check {
            files,
            explain,
            bench,
        } => run_check(cli, files, *explain, *bench),
        Command::Interpret { file, model } => run_interpret(cli, file, model),
        Command::ModelVerify { models } => run_verify(cli, models),
        Command::Soundness { files, model } => run_soundness(cli, files, model),
        Command::Counterexample { model } => run_counterexample(cli, model),
        Command::Bench { sizes, reps } => run_bench(cli, sizes, *reps),
        Command::Coverage { dir } => run_coverage(cli, dir),
    }
}
