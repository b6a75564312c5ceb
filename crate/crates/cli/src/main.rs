//! `quasikernel`: kernelization for vertex cover / independent set with a
//! structural modulator.
//!
//! Exit codes: 0 success (and, for `verify`/`blocking`, property holds);
//! 1 a checked property is violated; 2 usage, parse or capacity errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use quasikernel_cli::format::{emit_instance, parse_instance};
use quasikernel_cli::generate::{generate, GeneratorKind, GeneratorSpec};
use quasikernel_core::blocking::enumerate_minimal_blocking_sets;
use quasikernel_core::kernel::{deletable_component, AboveLpOutcome};
use quasikernel_core::solvers::{alpha_bruteforce, recognize_class};
use quasikernel_core::{extremal_lp_is, kernelize, lp_vc_opt, ClassTag, Instance, DEFAULT_BRUTE_FORCE_CAP};
use serde_json::json;

#[derive(Parser)]
#[command(name = "quasikernel", version, about = "Vertex cover / independent set kernelization with structural modulators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the reduction pipeline and write the reduced instance.
    Kernelize {
        /// Instance file to reduce.
        #[arg(long)]
        graph: PathBuf,
        /// Reduced instance destination (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// JSON pipeline report destination (not written when omitted).
        #[arg(long)]
        report: Option<PathBuf>,
        /// Brute-force vertex cap.
        #[arg(long, default_value_t = DEFAULT_BRUTE_FORCE_CAP)]
        cap: usize,
    },
    /// Re-check the pipeline on one instance against brute force.
    Verify {
        /// Instance file to check.
        #[arg(long)]
        graph: PathBuf,
        /// Brute-force vertex cap.
        #[arg(long, default_value_t = DEFAULT_BRUTE_FORCE_CAP)]
        cap: usize,
    },
    /// Enumerate minimal blocking sets per component of G - X.
    Blocking {
        /// Instance file to analyze.
        #[arg(long)]
        graph: PathBuf,
        /// Width override (defaults to the instance header).
        #[arg(long)]
        d: Option<u32>,
        /// Class override (defaults to the instance header).
        #[arg(long)]
        class: Option<ClassTag>,
        /// JSON report destination (stdout when omitted).
        #[arg(long)]
        report: Option<PathBuf>,
        /// Brute-force vertex cap.
        #[arg(long, default_value_t = DEFAULT_BRUTE_FORCE_CAP)]
        cap: usize,
    },
    /// Dump the extremal half-integral LP solution of the graph.
    Lp {
        /// Instance file to analyze.
        #[arg(long)]
        graph: PathBuf,
        /// Brute-force vertex cap.
        #[arg(long, default_value_t = DEFAULT_BRUTE_FORCE_CAP)]
        cap: usize,
    },
    /// Compute the exact independence and cover numbers by brute force.
    Solve {
        /// Instance file to solve.
        #[arg(long)]
        graph: PathBuf,
        /// Brute-force vertex cap.
        #[arg(long, default_value_t = DEFAULT_BRUTE_FORCE_CAP)]
        cap: usize,
    },
    /// Emit a seeded random instance.
    Generate {
        /// Component construction to use.
        #[arg(long)]
        kind: GeneratorKind,
        /// Number of components outside the modulator.
        #[arg(long, default_value_t = 2)]
        components: usize,
        /// Vertices per component (ignored by the gadget kinds).
        #[arg(long, default_value_t = 6)]
        size: usize,
        /// Modulator size.
        #[arg(long, default_value_t = 2)]
        modulator: usize,
        /// Class width parameter.
        #[arg(long, default_value_t = 1)]
        d: u32,
        /// Probability of each modulator-to-component edge.
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        /// RNG seed; equal seeds give byte-identical instances.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Class tag override (defaults to the kind's own class).
        #[arg(long)]
        class: Option<ClassTag>,
        /// Probability of pinning each component to the modulator.
        #[arg(long, default_value_t = 0.75)]
        conflict_probability: f64,
        /// Instance destination (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Kernelize { graph, out, report, cap } => cmd_kernelize(&graph, out.as_deref(), report.as_deref(), cap),
        Command::Verify { graph, cap } => cmd_verify(&graph, cap),
        Command::Blocking { graph, d, class, report, cap } => cmd_blocking(&graph, d, class, report.as_deref(), cap),
        Command::Lp { graph, cap } => cmd_lp(&graph, cap),
        Command::Solve { graph, cap } => cmd_solve(&graph, cap),
        Command::Generate {
            kind,
            components,
            size,
            modulator,
            d,
            density,
            seed,
            class,
            conflict_probability,
            out,
        } => {
            let spec = GeneratorSpec {
                kind,
                component_count: components,
                component_size: size,
                modulator_size: modulator,
                d,
                edge_density_to_x: density,
                seed,
                class,
                conflict_probability,
            };
            let inst = generate(&spec)?;
            write_text(out.as_deref(), &emit_instance(&inst))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn read_instance(path: &std::path::Path, cap: usize) -> Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let inst = parse_instance(&text, cap).with_context(|| format!("parsing {}", path.display()))?;
    Ok(inst)
}

fn write_text(path: Option<&std::path::Path>, content: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, content).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{content}"),
    }
    Ok(())
}

fn write_json(path: Option<&std::path::Path>, value: &impl serde::Serialize) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_text(path, &text)
}

fn cmd_kernelize(
    graph: &std::path::Path,
    out: Option<&std::path::Path>,
    report: Option<&std::path::Path>,
    cap: usize,
) -> Result<ExitCode> {
    let inst = read_instance(graph, cap)?;
    let (reduced, rep) = kernelize(&inst, cap)?;
    write_text(out, &emit_instance(&reduced))?;
    if report.is_some() {
        write_json(report, &rep)?;
    }
    Ok(ExitCode::SUCCESS)
}

/// Brute-force answer to "is there an independent set of size k".
fn yes_instance(inst: &Instance, cap: usize) -> Result<bool> {
    let alpha = alpha_bruteforce(inst.graph(), cap)
        .context("instance too large for brute-force verification; raise --cap")?;
    Ok(alpha as i64 >= inst.k())
}

fn cmd_verify(graph: &std::path::Path, cap: usize) -> Result<ExitCode> {
    let inst = read_instance(graph, cap)?;
    let mut violations = 0usize;
    let mut check = |name: &str, ok: bool| {
        println!("{}: {name}", if ok { "ok" } else { "violation" });
        if !ok {
            violations += 1;
        }
    };

    let (reduced, report) = kernelize(&inst, cap)?;
    check(
        "pipeline preserves the answer",
        yes_instance(&inst, cap)? == yes_instance(&reduced, cap)?,
    );

    // Replay the deletion rule one component at a time.
    let mut cur = inst.clone();
    let mut replay_ok = true;
    loop {
        let mut deletable = None;
        for comp in cur.remainder().connected_components() {
            if deletable_component(&cur, &comp, cap)?.deletable {
                deletable = Some(comp);
                break;
            }
        }
        let Some(comp) = deletable else { break };
        let credit = alpha_bruteforce(&comp, cap)? as i64;
        let next = Instance::with_cap(
            cur.graph().remove_vertices(&comp.vertex_set())?,
            cur.modulator().clone(),
            cur.k() - credit,
            cur.d(),
            cur.class(),
            cap,
        )?;
        if yes_instance(&cur, cap)? != yes_instance(&next, cap)? {
            replay_ok = false;
        }
        cur = next;
    }
    check("every single deletion preserves the answer", replay_ok);
    check(
        "replay reaches the pipeline's reduced instance",
        cur.graph() == reduced.graph() && cur.k() == reduced.k(),
    );
    check("surviving component count is within its bound", report.component_bound_ok);
    check("certificates touch at most |X| components", report.certificate_audit_ok);
    if let Some(ext) = &report.extension {
        check("extended modulator is within its size bound", ext.size_bound_ok);
        check("extended remainder is structured", ext.remainder_structured);
    }
    if let Some(above) = &report.above_lp {
        check("above-LP gap is within its bound", above.gap_bound_ok);
        if let AboveLpOutcome::Solved { cover } = &above.outcome {
            let covers = reduced.graph().is_vertex_cover(cover)?;
            let small = cover.len() as i64 <= above.k_vc;
            check("trivial-yes cover is a real cover within the target", covers && small);
        }
    }

    if violations == 0 {
        println!("equivalent");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("violated ({violations} checks failed)");
        Ok(ExitCode::from(1))
    }
}

fn cmd_blocking(
    graph: &std::path::Path,
    d: Option<u32>,
    class: Option<ClassTag>,
    report: Option<&std::path::Path>,
    cap: usize,
) -> Result<ExitCode> {
    let inst = read_instance(graph, cap)?;
    let d = d.unwrap_or_else(|| inst.d());
    let class = class.unwrap_or_else(|| inst.class());
    let bound = class.blocking_bound(d);
    let mut components = Vec::new();
    let mut all_respected = true;
    for comp in inst.remainder().connected_components() {
        let member = recognize_class(&comp, d, class, cap)?.member;
        let rep = enumerate_minimal_blocking_sets(&comp, bound, cap)?;
        if member && !rep.bound_respected {
            all_respected = false;
        }
        components.push(json!({ "member": member, "blocking": rep }));
    }
    let doc = json!({
        "class": class,
        "d": d,
        "bound": bound,
        "components": components,
        "all_respected": all_respected,
    });
    write_json(report, &doc)?;
    Ok(if all_respected { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_lp(graph: &std::path::Path, cap: usize) -> Result<ExitCode> {
    let inst = read_instance(graph, cap)?;
    let g = inst.graph();
    let extremal = extremal_lp_is(g);
    let doc = json!({
        "lp_vc": lp_vc_opt(g).value(),
        "lp_is": extremal.value(),
        "v0": extremal.zeros(),
        "v_half": extremal.halves(),
        "v1": extremal.ones(),
        "extremal": extremal,
    });
    write_json(None, &doc)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_solve(graph: &std::path::Path, cap: usize) -> Result<ExitCode> {
    let inst = read_instance(graph, cap)?;
    let alpha = alpha_bruteforce(inst.graph(), cap)?;
    let doc = json!({
        "alpha": alpha,
        "vc": inst.graph().vertex_count() - alpha,
        "k": inst.k(),
        "yes": alpha as i64 >= inst.k(),
    });
    write_json(None, &doc)?;
    Ok(ExitCode::SUCCESS)
}
