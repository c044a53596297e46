use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use eg_core::audit::audit_run;
use eg_core::dsl::{parse_script, render_svg, run_script_mode, RenderOptions, RunOutput, Script};
use eg_core::field::FieldMode;
use eg_core::kripke::{check_ef_axioms, mp_counterexample};

#[derive(Parser)]
#[command(name = "eg", about = "Exact ruler-and-compass geometry: scripts, axiom audits and a Kripke model")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Field {
    Constructible,
    Nonarch,
}

impl From<Field> for FieldMode {
    fn from(f: Field) -> Self {
        match f {
            Field::Constructible => FieldMode::Constructible,
            Field::Nonarch => FieldMode::NonArchimedean,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Demo {
    Mp,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a construction script and report every statement.
    Run {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "constructible")]
        field: Field,
    },
    /// Check every axiom and theorem on sampled instances.
    Audit {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Instances per theorem; defaults to min(samples, 50).
        #[arg(long)]
        theorem_samples: Option<usize>,
        #[arg(long, value_enum, default_value = "constructible")]
        field: Field,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Two-node Kripke model demonstrations.
    Kripke {
        #[arg(long, value_enum)]
        demo: Demo,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Run a script and write its figure as SVG.
    Render {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "constructible")]
        field: Field,
        /// Draw non-Archimedean points at eps = 0.
        #[arg(long)]
        shadow: bool,
        /// Include drawing marks of nested construction steps up to this depth.
        #[arg(long, default_value_t = 0)]
        depth: usize,
    },
}

fn load(file: &PathBuf) -> Result<Script, String> {
    let src = fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    parse_script(&src).map_err(|e| format!("{}:{e}", file.display()))
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn main() -> ExitCode {
    match run(Cli::parse().cmd) {
        Ok(ok) => status(ok),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Cmd) -> Result<bool, String> {
    match cmd {
        Cmd::Run { file, field } => {
            let out = run_script_mode(&load(&file)?, field.into());
            print!("{}", out.report());
            let n = out.failure_count();
            println!("{} statements, {n} failed", out.results().len());
            Ok(n == 0)
        }
        Cmd::Audit { samples, seed, theorem_samples, field, json } => {
            let r = audit_run(field.into(), samples, theorem_samples.unwrap_or(samples.min(50)), seed);
            print!("{}", r.summary());
            for e in r.failures() {
                println!("FAIL {} #{}: {}", e.axiom_id, e.instance_index, e.detail.as_deref().unwrap_or(""));
            }
            if let Some(path) = json {
                fs::write(&path, r.to_json()).map_err(|e| format!("{}: {e}", path.display()))?;
            }
            let ok = r.failures().next().is_none();
            Ok(ok)
        }
        Cmd::Kripke { demo: Demo::Mp, samples, seed } => {
            let r = mp_counterexample();
            println!("witness x = {}", r.witness);
            println!("M0 forces ~~P(x): {}", r.double_negation_forced_m0);
            println!("M0 forces P(x): {}", r.p_forced_m0);
            println!("M1 forces P(x): {}", r.p_forced_m1);
            println!("M0 forces ~~P(x) -> P(x): {}", r.mp_forced_m0);
            println!("(0,0) # (x,0) at node 0: {}, at node 1: {}", r.distinct_root, r.distinct_classical);
            match (&r.pasch_root_error, &r.pasch_classical_point) {
                (Some(e), Some(p)) => println!("inner Pasch with apex (1, x): node 0 refuses ({e:?}), node 1 gives {p}"),
                _ => println!("inner Pasch with apex (1, x): unexpected outcome"),
            }
            let ef = check_ef_axioms(samples, seed);
            let outside = ef.instances.iter().filter(|i| !i.root_domain).count();
            let fails = ef.failures().count();
            println!("EF0-EF5: {} instances ({outside} unbounded probes), {fails} failures", ef.instances.len());
            for f in ef.failures() {
                println!("FAIL {} {} env {:?}", f.axiom, f.formula, f.env);
            }
            let mp = r.is_counterexample();
            println!("Markov's principle {}", if mp { "fails at the root" } else { "NOT refuted" });
            Ok(mp && fails == 0)
        }
        Cmd::Render { file, out, field, shadow, depth } => {
            let run = run_script_mode(&load(&file)?, field.into());
            let opts = RenderOptions { shadow, max_depth: depth, ..Default::default() };
            let svg = match &run {
                RunOutput::Constructible(env) => render_svg(env, &opts),
                RunOutput::NonArch(env) => render_svg(env, &opts),
            }
            .map_err(|e| e.to_string())?;
            fs::write(&out, svg).map_err(|e| format!("{}: {e}", out.display()))?;
            for r in run.results().iter().filter(|r| r.is_failure()) {
                println!("{r}");
            }
            println!("wrote {}", out.display());
            Ok(run.failure_count() == 0)
        }
    }
}
