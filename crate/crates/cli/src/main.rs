//! `sculpt`: compile caterpillar specs into sculpting schemes, simulate and verify them.
//!
//! Exit codes: 0 success / PASS, 1 verification FAIL, 2 usage or input error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sculpt_core::graph::{bigraph_to_dot, digraph_to_dot, CircleForm};
use sculpt_core::scheme_file::{read_scheme, write_scheme};
use sculpt_core::{
    apply_sculpting, check_epm, check_genuine_conditions, check_no_bunching, compile,
    digraph_to_bigraph, digraph_to_operator, enumerate_directed_pms, initial_state, path_digraph,
    run_ghz, run_pipeline, to_qubit_state, CaterpillarSpec, SculptingDigraph,
};

#[derive(Parser)]
#[command(
    name = "sculpt",
    version,
    about = "Caterpillar graph-state sculpting compiler and simulator"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum DotStyle {
    Digraph,
    Bigraph,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Epm,
    Genuine,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compile a leaf-count list (e.g. `2,0,4`) into a scheme.
    Compile {
        #[arg(long)]
        leaves: CaterpillarSpec,
        #[arg(long, value_enum, default_value = "json")]
        format: GraphFormat,
        /// Which graph to draw with `--format dot`.
        #[arg(long, value_enum, default_value = "digraph")]
        style: DotStyle,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a scheme's operator to its initial state and print the result.
    Simulate { scheme: PathBuf },
    /// Compile, simulate and compare against the graph-state oracle.
    Verify {
        #[arg(long)]
        leaves: CaterpillarSpec,
    },
    /// Count or list the directed perfect matchings of a scheme.
    Pm {
        scheme: PathBuf,
        #[arg(long, conflicts_with = "list")]
        count: bool,
        #[arg(long)]
        list: bool,
    },
    /// Run a structural check on a scheme.
    Check {
        scheme: PathBuf,
        #[arg(value_enum)]
        which: Check,
    },
    /// Emit the central path digraph P^(l).
    PathDigraph {
        l: usize,
        #[arg(long, value_enum, default_value = "dot")]
        format: GraphFormat,
    },
    /// Simulate the N-partite GHZ bigraph.
    Ghz { n: usize },
}

type CmdResult = Result<ExitCode, String>;

fn load(path: &Path) -> Result<SculptingDigraph, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    read_scheme(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), String> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pass_fail(ok: bool) -> ExitCode {
    println!("{}", if ok { "PASS" } else { "FAIL" });
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_compile(
    spec: &CaterpillarSpec,
    format: GraphFormat,
    style: DotStyle,
    out: Option<&Path>,
) -> CmdResult {
    let scheme = compile(spec).map_err(|e| e.to_string())?;
    let text = match (format, style) {
        (GraphFormat::Json, _) => write_scheme(&scheme.digraph),
        (GraphFormat::Dot, DotStyle::Digraph) => digraph_to_dot(&scheme.digraph),
        (GraphFormat::Dot, DotStyle::Bigraph) => bigraph_to_dot(&scheme.bigraph()),
    };
    emit(&text, out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_simulate(path: &Path) -> CmdResult {
    let g = load(path)?;
    let op = digraph_to_operator(&g).map_err(|e| e.to_string())?;
    let init = initial_state(g.vertices()).map_err(|e| e.to_string())?;
    let out = apply_sculpting(&op, &init);
    let qubits = g.qubit_modes();
    println!("modes: {}", g.vertices().len());
    println!("terms: {}", out.len());
    println!("fock:\n{out}");
    let unbunched = check_no_bunching(&out, &qubits, &g.ancilla_modes());
    println!("no_bunching: {unbunched}");
    if unbunched {
        let order: Vec<&str> = qubits.iter().map(|q| q.label()).collect();
        let q = to_qubit_state(&out, &qubits).map_err(|e| e.to_string())?;
        println!("qubit_order: {}", order.join(","));
        println!("qubit_state: {q}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(spec: &CaterpillarSpec) -> CmdResult {
    let r = run_pipeline(spec).map_err(|e| e.to_string())?;
    println!("spec: {spec}");
    println!("qubits: {}", r.scheme.qubit_order.len());
    println!("modes: {}", r.scheme.mode_count());
    println!("initial_bosons: {}", r.scheme.initial_boson_count());
    println!("pm_count: {}", r.pm_count);
    println!("no_bunching: {}", r.no_bunching);
    if let Some(q) = &r.qubit_state {
        println!("terms: {}", q.len());
        println!("qubit_state: {q}");
    }
    println!("target: {}", r.target);
    match &r.oracle_match {
        Some(l) => println!("lambda: {l}"),
        None => println!("lambda: none"),
    }
    Ok(pass_fail(r.passed()))
}

fn cmd_pm(path: &Path, list: bool) -> CmdResult {
    let g = load(path)?;
    let pms = enumerate_directed_pms(&g);
    if !list {
        println!("{}", pms.len());
        return Ok(ExitCode::SUCCESS);
    }
    for (i, pm) in pms.iter().enumerate() {
        let edges: Vec<String> = pm
            .edges(&g)
            .iter()
            .map(|e| format!("{}->{}[{}]", e.source, e.target, e.state.symbol()))
            .collect();
        println!("{i}: {}", edges.join(" "));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(path: &Path, which: Check) -> CmdResult {
    let g = load(path)?;
    let ok = match which {
        Check::Epm => {
            let r = check_epm(&digraph_to_bigraph(&g), true);
            for (c, form) in &r.circles {
                let f = match form {
                    CircleForm::OrthogonalPair => "orthogonal-pair",
                    CircleForm::Uniform => "uniform",
                    CircleForm::Nonconforming => "nonconforming",
                };
                println!("{c}: {f}");
            }
            let semantic = r.semantic.unwrap_or(false);
            println!("no_bunching: {semantic}");
            r.pass() && semantic
        }
        Check::Genuine => {
            let r = check_genuine_conditions(&g);
            for (v, ok) in &r.per_vertex_color_ok {
                println!("{v}: {}", if *ok { "two-colors" } else { "single-color" });
            }
            for v in &r.exempt_ancillas {
                println!("{v}: exempt");
            }
            println!("strongly_connected: {}", r.strongly_connected);
            r.pass()
        }
    };
    Ok(pass_fail(ok))
}

fn cmd_path_digraph(l: usize, format: GraphFormat) -> CmdResult {
    let g = path_digraph(l).map_err(|e| e.to_string())?;
    print!(
        "{}",
        match format {
            GraphFormat::Json => write_scheme(&g),
            GraphFormat::Dot => digraph_to_dot(&g),
        }
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_ghz(n: usize) -> CmdResult {
    let r = run_ghz(n).map_err(|e| e.to_string())?;
    println!("n: {n}");
    println!("pm_count: {}", r.pm_count);
    if let Some(q) = &r.qubit_state {
        println!("qubit_state: {q}");
    }
    match r.sign {
        Some(s) => println!("sign: {}", if s > 0 { "+" } else { "-" }),
        None => println!("sign: none"),
    }
    println!("genuine_conditions: {}", r.genuine_conditions);
    Ok(pass_fail(r.two_term()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Compile {
            leaves,
            format,
            style,
            out,
        } => cmd_compile(leaves, *format, *style, out.as_deref()),
        Cmd::Simulate { scheme } => cmd_simulate(scheme),
        Cmd::Verify { leaves } => cmd_verify(leaves),
        Cmd::Pm { scheme, list, .. } => cmd_pm(scheme, *list),
        Cmd::Check { scheme, which } => cmd_check(scheme, *which),
        Cmd::PathDigraph { l, format } => cmd_path_digraph(*l, *format),
        Cmd::Ghz { n } => cmd_ghz(*n),
    };
    res.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })
}
