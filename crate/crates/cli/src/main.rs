use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use cosmo_core::families;
use cosmo_core::hstar::{hstar, hstar_acyclic_with, Method};
use cosmo_core::polytope::{
    ehrhart_brute, ehrhart_from_halfopen, ehrhart_from_hstar, h_vector_from_triangulation,
    half_open_decomposition, placing_triangulation_default, HalfOpenJson, Membership,
    TriangulationJson,
};
use cosmo_core::tutte::{tutte_delcon_with, tutte_subset_expansion_with};
use cosmo_core::verify::{all_passed, run_invariant_suite, Status, SuiteOptions};
use cosmo_core::{IntPolynomial, Limits, Multigraph};

use cosmo_cli::report::*;

#[derive(Parser, Debug)]
#[command(
    name = "cosmo",
    version,
    about = "h*-polynomials and triangulations of cosmological polytopes"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Render polynomials for LaTeX.
    #[arg(long, global = true)]
    latex: bool,
    /// Cap on enumerated acyclic / bridge-free subsets.
    #[arg(long, global = true, value_name = "N")]
    limit_subsets: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// h*-polynomial by one method or all of them.
    Hstar {
        graph: PathBuf,
        /// acyclic, delcon, tutte, moebius, triangulation or all
        #[arg(long, default_value = "acyclic")]
        method: String,
    },
    /// Tutte polynomial, cross-checked against the subset expansion.
    Tutte { graph: PathBuf },
    /// Normalized volume h*(1).
    Volume {
        graph: PathBuf,
        #[arg(long, default_value = "acyclic")]
        method: String,
    },
    /// Good placing triangulation with the default insertion order.
    Triangulate { graph: PathBuf },
    /// Half-open decomposition of the placing triangulation.
    Decompose { graph: PathBuf },
    /// Lattice-point counts of the dilates 0..=k.
    Ehrhart {
        graph: PathBuf,
        #[arg(long, default_value_t = 3)]
        dilations: usize,
        /// Also count by brute force (tiny graphs only).
        #[arg(long)]
        brute_force: bool,
    },
    /// Closed forms: multitree a1,a2,..  multicycle a1,..,an  theta a b c  k2n n
    Family {
        kind: String,
        #[arg(required = true, num_args = 1..)]
        params: Vec<String>,
        /// Print only the volume.
        #[arg(long)]
        volume: bool,
    },
    /// Run every invariant check on one graph.
    Verify {
        graph: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        brute_force: bool,
    },
}

/// Exit status 1: a computed result failed a cross-check.
#[derive(Debug)]
struct VerificationFailure(String);

impl std::fmt::Display for VerificationFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "verification failed: {}", self.0)
    }
}

impl std::error::Error for VerificationFailure {}

fn read_graph(path: &PathBuf) -> anyhow::Result<Multigraph> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    Ok(Multigraph::parse(&text)?)
}

fn limits(common: &Common) -> Limits {
    let mut l = Limits::default();
    if let Some(n) = common.limit_subsets {
        l.acyclic_subsets = n;
        l.bridge_free_subsets = n;
    }
    l
}

fn methods(name: &str) -> anyhow::Result<Vec<Method>> {
    if name == "all" {
        Ok(Method::ALL.to_vec())
    } else {
        Ok(vec![name.parse::<Method>()?])
    }
}

fn render(p: &IntPolynomial, common: &Common) -> String {
    if common.latex {
        p.latex().to_string()
    } else {
        p.to_string()
    }
}

fn emit_json<T: Serialize>(value: &T) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn cmd_hstar(g: &Multigraph, method: &str, common: &Common) -> anyhow::Result<()> {
    let lim = limits(common);
    let reports = methods(method)?
        .into_iter()
        .map(|m| hstar(g, m, &lim))
        .collect::<Result<Vec<_>, _>>()?;
    if common.json {
        let rows: Vec<HstarJson> = reports
            .iter()
            .map(|r| HstarJson {
                method: r.method.name().into(),
                hstar: r.polynomial.to_json(),
                volume: r.volume.to_string(),
            })
            .collect();
        emit_json(&rows)?;
    } else if reports.len() == 1 {
        println!("{}", render(&reports[0].polynomial, common));
    } else {
        for r in &reports {
            println!("{:<13} {}", r.method.name(), render(&r.polynomial, common));
        }
    }
    if let Some(bad) = reports
        .iter()
        .find(|r| r.polynomial != reports[0].polynomial)
    {
        return Err(VerificationFailure(format!(
            "{} disagrees with {}",
            bad.method, reports[0].method
        ))
        .into());
    }
    Ok(())
}

fn cmd_tutte(g: &Multigraph, common: &Common) -> anyhow::Result<()> {
    let lim = limits(common);
    let t = tutte_delcon_with(g, &lim);
    if g.edge_count() <= lim.subset_edges {
        let s = tutte_subset_expansion_with(g, &lim)?;
        if s != t {
            return Err(VerificationFailure(
                "subset expansion disagrees with deletion-contraction".into(),
            )
            .into());
        }
    }
    let acyclic = t.eval(&2.into(), &1.into());
    if common.json {
        emit_json(&TutteJson {
            terms: t
                .terms()
                .map(|(&(x, y), c)| TutteTerm {
                    x,
                    y,
                    coeff: c.to_string(),
                })
                .collect(),
            acyclic_subsets: acyclic.to_string(),
        })
    } else {
        println!("{t}");
        Ok(())
    }
}

fn cmd_volume(g: &Multigraph, method: &str, common: &Common) -> anyhow::Result<()> {
    let lim = limits(common);
    let ms = methods(method)?;
    let volumes = ms
        .iter()
        .map(|&m| hstar(g, m, &lim).map(|r| r.volume))
        .collect::<Result<Vec<_>, _>>()?;
    if volumes.iter().any(|v| v != &volumes[0]) {
        return Err(VerificationFailure("methods disagree on the volume".into()).into());
    }
    if common.json {
        emit_json(&VolumeJson {
            volume: volumes[0].to_string(),
        })
    } else {
        println!("{}", volumes[0]);
        Ok(())
    }
}

fn cmd_triangulate(g: &Multigraph, common: &Common) -> anyhow::Result<()> {
    let t = placing_triangulation_default(g)?;
    let h = h_vector_from_triangulation(&t)?;
    if common.json {
        return emit_json(&TriangulationJson::new(&t, &h));
    }
    for c in 0..t.cell_count() {
        let labels: Vec<String> = t.cell_labels(c).iter().map(|l| l.to_string()).collect();
        println!("{c}: {}", labels.join(" "));
    }
    println!("cells: {}", t.cell_count());
    println!("dual edges: {}", t.dual_edges().len());
    println!("h-vector: {}", render(&h, common));
    Ok(())
}

fn cmd_decompose(g: &Multigraph, common: &Common) -> anyhow::Result<()> {
    let t = placing_triangulation_default(g)?;
    let d = half_open_decomposition(&t)?;
    let bad = d.count_mismatches(&t)?;
    if common.json {
        emit_json(&HalfOpenJson::new(&t, &d))?;
    } else {
        for c in 0..t.cell_count() {
            let labels: Vec<String> = t.cell_labels(c).iter().map(|l| l.to_string()).collect();
            let removed: Vec<String> = d
                .removed_facets(&t, c)
                .iter()
                .map(|f| {
                    format!(
                        "[{}]",
                        f.iter()
                            .map(|l| l.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    )
                })
                .collect();
            println!("{c}: {} | removed {}", labels.join(" "), removed.join(" "));
        }
        println!("visibility delta: {}", d.delta);
        println!("h-vector: {}", render(&d.h_vector(), common));
    }
    if !bad.is_empty() {
        return Err(VerificationFailure(format!(
            "removed-facet count differs from k on cells {bad:?}"
        ))
        .into());
    }
    Ok(())
}

fn cmd_ehrhart(
    g: &Multigraph,
    dilations: usize,
    brute: bool,
    common: &Common,
) -> anyhow::Result<()> {
    if g.node_count() == 0 {
        bail!("graph has no nodes");
    }
    let lim = limits(common);
    let h = hstar(g, Method::Delcon, &lim)?.polynomial;
    let d = g.node_count() + g.edge_count() - 1;
    let halfopen = if g.node_count() + g.edge_count() <= 10 {
        let t = placing_triangulation_default(g)?;
        Some(half_open_decomposition(&t)?)
    } else {
        None
    };
    let mut rows = Vec::new();
    let mut mismatch = None;
    for j in 0..=dilations {
        let expected = ehrhart_from_hstar(&h, d, j);
        let ho = halfopen
            .as_ref()
            .map(|dec| ehrhart_from_halfopen(dec, j, d));
        let bf = if brute {
            Some(ehrhart_brute(g, j, Membership::Lp, None, &lim)?)
        } else {
            None
        };
        if ho.iter().chain(&bf).any(|v| v != &expected) {
            mismatch.get_or_insert(j);
        }
        rows.push(EhrhartRow {
            j,
            from_hstar: expected.to_string(),
            from_halfopen: ho.map(|v| v.to_string()),
            brute: bf.map(|v| v.to_string()),
        });
    }
    if common.json {
        emit_json(&EhrhartJson {
            dimension: d,
            hstar: h.to_json(),
            counts: rows,
        })?;
    } else {
        for r in &rows {
            let mut line = format!("L({}) = {}", r.j, r.from_hstar);
            if let Some(v) = &r.from_halfopen {
                line += &format!("  half-open {v}");
            }
            if let Some(v) = &r.brute {
                line += &format!("  brute {v}");
            }
            println!("{line}");
        }
    }
    match mismatch {
        Some(j) => {
            Err(VerificationFailure(format!("lattice-point counts disagree at j = {j}")).into())
        }
        None => Ok(()),
    }
}

fn parse_usize(s: &str) -> anyhow::Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| anyhow!("expected a positive integer, found `{s}`"))
}

fn family_params(kind: &str, params: &[String]) -> anyhow::Result<Vec<usize>> {
    let values: Vec<usize> = params
        .iter()
        .flat_map(|p| p.split(','))
        .filter(|s| !s.trim().is_empty())
        .map(parse_usize)
        .collect::<anyhow::Result<_>>()?;
    let arity_ok = match kind {
        "theta" => values.len() == 3,
        "k2n" => values.len() == 1,
        "multitree" | "multicycle" => !values.is_empty(),
        _ => bail!("unknown family `{kind}` (multitree, multicycle, theta, k2n)"),
    };
    if !arity_ok {
        bail!("wrong number of parameters for {kind}");
    }
    Ok(values)
}

fn cmd_family(
    kind: &str,
    params: &[String],
    volume_only: bool,
    common: &Common,
) -> anyhow::Result<()> {
    let v = family_params(kind, params)?;
    let (closed, graph) = match kind {
        "multitree" => (
            families::closed_form_multitree(&v)?,
            families::multitree_graph(&v)?,
        ),
        "multicycle" => (
            families::closed_form_multicycle(&v)?,
            families::multicycle_graph(&v)?,
        ),
        "theta" => (
            families::closed_form_theta(v[0], v[1], v[2])?,
            families::theta_graph(v[0], v[1], v[2])?,
        ),
        _ => (families::closed_form_k2n(v[0])?, families::k2n_graph(v[0])?),
    };
    let computed = hstar_acyclic_with(&graph, &limits(common))?;
    let matches = computed == closed;
    let volume = closed.eval_at_one();
    if common.json {
        emit_json(&FamilyJson {
            family: kind.into(),
            parameters: v,
            hstar: closed.to_json(),
            volume: volume.to_string(),
            matches_acyclic: matches,
        })?;
    } else if volume_only {
        println!("{volume}");
    } else {
        println!("{}", render(&closed, common));
    }
    if !matches {
        return Err(VerificationFailure(format!(
            "closed form differs from the acyclic sum {computed}"
        ))
        .into());
    }
    Ok(())
}

fn cmd_verify(g: &Multigraph, seed: u64, brute: bool, common: &Common) -> anyhow::Result<()> {
    let opts = SuiteOptions {
        seed,
        brute_force: brute,
        limits: limits(common),
        ..SuiteOptions::default()
    };
    let checks = run_invariant_suite(g, &opts);
    let passed = all_passed(&checks);
    if common.json {
        emit_json(&VerifyJson {
            passed,
            checks: checks
                .iter()
                .map(|c| CheckJson {
                    name: c.name.into(),
                    status: match c.status {
                        Status::Pass => "pass",
                        Status::Fail => "fail",
                        Status::Skip => "skip",
                    }
                    .into(),
                    detail: c.detail.clone(),
                })
                .collect(),
        })?;
    } else {
        for c in &checks {
            println!("{c}");
        }
    }
    if !passed {
        let n = checks.iter().filter(|c| c.status == Status::Fail).count();
        return Err(VerificationFailure(format!("{n} invariant(s) failed")).into());
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let common = &cli.common;
    match &cli.command {
        Command::Hstar { graph, method } => cmd_hstar(&read_graph(graph)?, method, common),
        Command::Tutte { graph } => cmd_tutte(&read_graph(graph)?, common),
        Command::Volume { graph, method } => cmd_volume(&read_graph(graph)?, method, common),
        Command::Triangulate { graph } => cmd_triangulate(&read_graph(graph)?, common),
        Command::Decompose { graph } => cmd_decompose(&read_graph(graph)?, common),
        Command::Ehrhart {
            graph,
            dilations,
            brute_force,
        } => cmd_ehrhart(&read_graph(graph)?, *dilations, *brute_force, common),
        Command::Family {
            kind,
            params,
            volume,
        } => cmd_family(kind, params, *volume, common),
        Command::Verify {
            graph,
            seed,
            brute_force,
        } => cmd_verify(&read_graph(graph)?, *seed, *brute_force, common),
    }
}

/// 1 for failed cross-checks and broken internal invariants, 2 otherwise.
fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<VerificationFailure>().is_some() {
        return 1;
    }
    match err.downcast_ref::<cosmo_core::Error>() {
        Some(cosmo_core::Error::Verification(_) | cosmo_core::Error::Internal(_)) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
