use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use cayham_core::cayley::to_dot;
use cayham_core::construct::{
    abelian_ham_path, factor_group_search, rankin_cycle, rankin_decide, small_commutator_path,
};
use cayham_core::families::{
    a4z2_example, g5_example, locke_witte_12k, locke_witte_2k, milnor_instances, smallest_locke_witte_2k,
    theorem13_family, theorem13_family_any_prime, Instance,
};
use cayham_core::io::{parse_generators, read_group_file, CertificateDoc, InstanceDoc, ReportDoc};
use cayham_core::search::{dfs_ham_cycle, dfs_ham_path, structured_ham_path_2gen, PatternSpace};
use cayham_core::survey::{survey, to_jsonl};
use cayham_core::{abelian3_ham_cycle, CayleyDigraph, Certificate, Elem, FiniteGroup, SearchOptions, Verdict, WalkKind};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Hamiltonian paths and cycles in Cayley digraphs of finite groups.
///
/// Set CAYHAM_WORKERS to search with several threads; the default of 1 is
/// deterministic.
#[derive(Parser)]
#[command(name = "cayham", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a hamiltonian path or cycle exists. Exits 0 if one
    /// exists, 1 if none does, 2 on error or an exhausted budget.
    Decide {
        #[command(flatten)]
        input: Input,
        /// Look for a hamiltonian path from the identity.
        #[arg(long, conflicts_with = "cycle", required_unless_present = "cycle")]
        path: bool,
        /// Look for a hamiltonian cycle.
        #[arg(long)]
        cycle: bool,
        #[arg(long, value_enum, default_value_t = DecideMethod::Auto)]
        method: DecideMethod,
        /// DFS expansion budget.
        #[arg(long)]
        node_cap: Option<u64>,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a certificate with an explicit construction.
    Construct {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        method: ConstructMethod,
        /// Write the certificate here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// For abelian3, write the step trace as JSONL.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Emit a group and generators from a named family.
    Family {
        #[command(subcommand)]
        family: Family,
        /// Write here instead of stdout.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Check a certificate file. Exits 0 if it verifies, 1 if rejected.
    Verify {
        /// Certificate JSON, as written by `decide` or `construct`.
        certificate: PathBuf,
    },
    /// Write the Cayley digraph in Graphviz format.
    Export {
        #[command(flatten)]
        input: Input,
        /// Output file.
        #[arg(long)]
        dot: PathBuf,
        /// Comma-separated arc labels, one per generator.
        #[arg(long)]
        names: Option<String>,
    },
    /// Run every applicable method on every generating pair of every catalog
    /// group. Exits 1 if any methods disagree.
    Survey {
        /// Largest group order to include.
        #[arg(long)]
        max_order: usize,
        /// JSONL output, one record per digraph.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct Input {
    /// Group spec JSON, or an instance document with generators.
    spec: PathBuf,
    /// Generators, as JSON (`[[2,1],[3,1]]`) or `2,1;3,1`. Overrides any in
    /// the group file. For abelian3, give `a;b;k`.
    #[arg(long)]
    gens: Option<String>,
}

#[derive(Copy, Clone, ValueEnum)]
enum DecideMethod {
    /// Backtracking over arcs; works for any generating set.
    Dfs,
    /// Coset travel patterns; two-generator paths only.
    Structured,
    /// Structured search for two-generator paths when it applies, DFS otherwise.
    Auto,
}

#[derive(Copy, Clone, ValueEnum)]
enum ConstructMethod {
    Abelian,
    Rankin,
    Fgl,
    SmallCommutator,
    Abelian3,
}

#[derive(Subcommand)]
enum Family {
    /// (Z_alpha x Z_beta) x| Z_p with no hamiltonian path.
    Theorem13 {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u32,
        /// Allow primes other than 3 mod 4; the result carries no guarantee.
        #[arg(long)]
        unsafe_any_prime: bool,
    },
    /// Cay(Z12 x| Z5; h^2 z, h^3 z).
    G5,
    /// Cay(A4 x Z2) with two generators.
    A4z2,
    /// Every catalog pair meeting the |G| >= 9|ab^2| bound, one per line.
    Milnor {
        #[arg(long, default_value_t = 72)]
        max_order: usize,
    },
    /// Cay(Z_12k; 6k, 6k+2, 6k+3).
    #[command(name = "circulant-12k")]
    Circulant12k {
        #[arg(long)]
        k: u32,
    },
    /// Cay(Z_2k; a, b, b+k); the smallest valid instance if a, b, k are omitted.
    #[command(name = "circulant-2k")]
    Circulant2k {
        #[arg(long, requires_all = ["b", "k"])]
        a: Option<i64>,
        #[arg(long)]
        b: Option<i64>,
        #[arg(long)]
        k: Option<i64>,
    },
}

fn load(input: &Input) -> Result<(FiniteGroup, Vec<Elem>)> {
    let text = fs::read_to_string(&input.spec).with_context(|| format!("reading {}", input.spec.display()))?;
    let (spec, from_file) = read_group_file(&text)?;
    let g = FiniteGroup::build(&spec)?;
    let reprs = match &input.gens {
        Some(s) => parse_generators(s)?,
        None => from_file.ok_or_else(|| anyhow!("no generators: pass --gens or use an instance document"))?,
    };
    let gens = reprs.iter().map(|x| x.resolve(&g)).collect::<Result<Vec<_>, _>>()?;
    Ok((g, gens))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => match std::io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
            _ => Ok(()),
        },
    }
}

fn json_line<T: serde::Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("serializable") + "\n"
}

fn decide(
    input: &Input,
    kind: WalkKind,
    method: DecideMethod,
    node_cap: Option<u64>,
    out: Option<&Path>,
) -> Result<ExitCode> {
    let (g, gens) = load(input)?;
    let d = CayleyDigraph::from_elems(&g, &gens)?;
    let mut opts = SearchOptions::from_env();
    if let Some(cap) = node_cap {
        opts = opts.with_node_cap(cap);
    }
    let structured_fits = || d.degree() == 2 && PatternSpace::new(&d).is_ok();
    let report = match (kind, method) {
        (WalkKind::Cycle, DecideMethod::Structured) => bail!("structured search decides paths only"),
        (WalkKind::Cycle, _) => dfs_ham_cycle(&d, &opts),
        (WalkKind::Path, DecideMethod::Structured) => structured_ham_path_2gen(&d, &opts)?,
        (WalkKind::Path, DecideMethod::Auto) if structured_fits() => structured_ham_path_2gen(&d, &opts)?,
        (WalkKind::Path, _) => dfs_ham_path(&d, None, &opts),
    };
    emit(out, &json_line(&ReportDoc::new(&d, kind, &report)))?;
    Ok(ExitCode::from(match report.verdict {
        Verdict::Exists => 0,
        Verdict::NotExists => 1,
        Verdict::Unknown => 2,
    }))
}

fn construct(input: &Input, method: ConstructMethod, out: Option<&Path>, trace: Option<&Path>) -> Result<()> {
    let (g, gens) = load(input)?;
    let (gens, cert): (Vec<Elem>, Certificate) = match method {
        ConstructMethod::Abelian3 => {
            let [a, b, k] = gens[..] else { bail!("abelian3 takes exactly three elements a;b;k") };
            let run = abelian3_ham_cycle(&g, a, b, k)?;
            for incident in &run.incidents {
                eprintln!("note: {incident}");
            }
            if let Some(p) = trace {
                fs::write(p, run.trace_jsonl()).with_context(|| format!("writing {}", p.display()))?;
            }
            (vec![a, b, g.mul(b, k)], run.certificate)
        }
        _ => {
            let d = CayleyDigraph::from_elems(&g, &gens)?;
            let cert = match method {
                ConstructMethod::Abelian => abelian_ham_path(&d)?,
                ConstructMethod::Rankin => {
                    let [a, b] = gens[..] else { bail!("rankin takes exactly two generators") };
                    let w = rankin_decide(&g, a, b)?
                        .ok_or_else(|| anyhow!("no hamiltonian cycle: no k + l = |G:<a-b>| with <ka+lb> = <a-b>"))?;
                    rankin_cycle(&g, a, b, w)?
                }
                ConstructMethod::Fgl => {
                    factor_group_search(&d, 10_000)?
                        .ok_or_else(|| anyhow!("no cyclic normal subgroup gave a liftable quotient cycle"))?
                        .1
                }
                ConstructMethod::SmallCommutator => small_commutator_path(&d)?,
                ConstructMethod::Abelian3 => unreachable!(),
            };
            (gens, cert)
        }
    };
    let d = CayleyDigraph::from_elems(&g, &gens)?;
    d.verify(&cert).map_err(|r| anyhow!("refusing to emit an unverified certificate: {r}"))?;
    emit(out, &json_line(&CertificateDoc::new(&g, &gens, &cert)))
}

fn family(f: &Family, out: Option<&Path>) -> Result<()> {
    let doc = |inst: &Instance| json_line(&InstanceDoc::from_instance(inst));
    let text = match *f {
        Family::Theorem13 { p, n, unsafe_any_prime } => {
            let (inst, params) =
                if unsafe_any_prime { theorem13_family_any_prime(p, n)? } else { theorem13_family(p, n)? };
            eprintln!("alpha={} beta={} p={} r={}", params.alpha, params.beta, params.p, params.r);
            doc(&inst)
        }
        Family::G5 => doc(&g5_example()),
        Family::A4z2 => doc(&a4z2_example()),
        Family::Milnor { max_order } => milnor_instances(max_order).iter().map(doc).collect(),
        Family::Circulant12k { k } => doc(&locke_witte_12k(k)?),
        Family::Circulant2k { a: Some(a), b: Some(b), k: Some(k) } => doc(&locke_witte_2k(a, b, k)?),
        Family::Circulant2k { .. } => {
            let (a, b, k, inst) = smallest_locke_witte_2k(1 << 10).ok_or_else(|| anyhow!("no instance found"))?;
            eprintln!("a={a} b={b} k={k}");
            doc(&inst)
        }
    };
    emit(out, &text)
}

fn verify(path: &Path) -> Result<ExitCode> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let (g, gens, cert) = CertificateDoc::from_json(&text)?.resolve()?;
    let d = CayleyDigraph::from_elems(&g, &gens)?;
    match d.verify(&cert) {
        Ok(()) => {
            println!("ok: hamiltonian {} on {} vertices", cert.kind, g.order());
            Ok(ExitCode::SUCCESS)
        }
        Err(r) => {
            println!("rejected: {r}");
            Ok(ExitCode::from(1))
        }
    }
}

fn export(input: &Input, dot: &Path, names: Option<&str>) -> Result<()> {
    let (g, gens) = load(input)?;
    let d = CayleyDigraph::from_elems(&g, &gens)?;
    let names: Option<Vec<String>> = names.map(|s| s.split(',').map(|x| x.trim().to_string()).collect());
    if let Some(n) = &names {
        if n.len() != gens.len() {
            bail!("{} names for {} generators", n.len(), gens.len());
        }
    }
    emit(Some(dot), &to_dot(&d, names.as_deref()))
}

fn run_survey(max_order: usize, out: &Path) -> Result<ExitCode> {
    let records = survey(max_order, &SearchOptions::from_env());
    emit(Some(out), &to_jsonl(&records))?;
    let disagreements = records.iter().filter(|r| !r.agree).count();
    eprintln!("{} digraphs, {disagreements} disagreements", records.len());
    Ok(if disagreements == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Decide { input, cycle, method, node_cap, out, .. } => {
            let kind = if cycle { WalkKind::Cycle } else { WalkKind::Path };
            decide(&input, kind, method, node_cap, out.as_deref())
        }
        Command::Construct { input, method, out, trace } => {
            construct(&input, method, out.as_deref(), trace.as_deref()).map(|()| ExitCode::SUCCESS)
        }
        Command::Family { family: f, out } => family(&f, out.as_deref()).map(|()| ExitCode::SUCCESS),
        Command::Verify { certificate } => verify(&certificate),
        Command::Export { input, dot, names } => export(&input, &dot, names.as_deref()).map(|()| ExitCode::SUCCESS),
        Command::Survey { max_order, out } => run_survey(max_order, &out),
    }
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
