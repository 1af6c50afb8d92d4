//! `matchbox`: enumerate trees, multiply in the free algebras, check identity
//! systems, run transform pipelines and search Yang-Baxter solutions.
//!
//! Exit codes: 0 pass, 1 counterexample or failed verification, 2 usage or
//! internal error.

mod sources;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use matchbox_core::axioms::{check, matching_rb, op_axiom_set, report, Sampling, Structure};
use matchbox_core::exactalg::{Algebra, Carrier, Rational};
use matchbox_core::freedend::{FreeDendriform, Side};
use matchbox_core::operators::{
    aybe_family_search, aybe_search, make_paybe_family, Matrix, RBFamily, SearchSpace,
};
use matchbox_core::prelie_trees::GraftingPreLie;
use matchbox_core::structure::OpStructure;
use matchbox_core::transforms::{family_step, op_step, run_family_pipeline, run_ops_pipeline, Step};
use matchbox_core::trees::{
    count_pbt, enumerate_capped, Alphabet, PlanarBinaryTree, RootedTree, TreeKind, DEFAULT_ENUMERATION_CAP,
};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use sources::{default_space, load, read_family, Source, SourceArgs};

#[derive(Parser)]
#[command(name = "matchbox", version, about = "Exact computations with matching (tri)dendriform, pre-Lie and Rota-Baxter structures")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List all trees with n vertices in canonical order.
    Enumerate(EnumerateArgs),
    /// Multiply two elements of a free algebra.
    #[command(subcommand)]
    Mul(MulCmd),
    /// Check an identity system on a structure.
    Check(CheckArgs),
    /// Apply transforms in sequence, checking every stage.
    Pipeline(PipelineArgs),
    /// Search and verify solutions of the polarized Yang-Baxter equation.
    #[command(subcommand)]
    Aybe(AybeCmd),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Pbt,
    Rooted,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long, value_enum, default_value_t = KindArg::Pbt)]
    kind: KindArg,
    #[arg(short = 'n', long)]
    n: usize,
    #[arg(short = 'D', long, default_value = "a")]
    decorations: String,
    #[arg(short = 'O', long, default_value = "α,β")]
    types: String,
    /// Largest accepted n.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: usize,
    /// Print a JSON object instead of one tree per line.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DendOp {
    Prec,
    Succ,
    Bullet,
}

#[derive(Subcommand)]
enum MulCmd {
    /// `x ≺_ω y`, `x ≻_ω y` or `x •_ω y` on planar binary trees.
    Dend {
        #[arg(long, value_enum)]
        op: DendOp,
        /// The index ω.
        #[arg(short = 'w', long)]
        index: String,
        #[arg(short = 'D', long, default_value = "a")]
        decorations: String,
        #[arg(short = 'O', long, default_value = "α,β")]
        types: String,
        x: String,
        y: String,
    },
    /// `x ∗_t y` on rooted trees.
    Prelie {
        /// The edge type t.
        #[arg(short = 't', long)]
        edge: String,
        #[arg(short = 'D', long, default_value = "a")]
        decorations: String,
        #[arg(short = 'O', long, default_value = "α,β")]
        types: String,
        x: String,
        y: String,
    },
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Axiom set: matching-rb (operator families) or a structure set such as
    /// matching-dendriform.
    #[arg(long)]
    axioms: String,
    /// Transforms applied before checking (comma separated).
    #[arg(long, default_value = "")]
    steps: String,
    /// Write the JSON report here as well as to stdout.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct PipelineArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Comma-separated steps: dend, tridend, rblie, rbpre, rbpostlie, prelie,
    /// postlie, assoc, antisym.
    #[arg(long, default_value = "")]
    steps: String,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Subcommand)]
enum AybeCmd {
    /// Enumerate a coefficient grid for solutions `r` of the equation with
    /// `s = r`, then pair them into two-operator families.
    Search {
        /// Matrix size; the default support is for k = 2.
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value = "0")]
        lambda: String,
        /// Support as `i,j,k,l;...` (zero-based E_ij ⊗ E_kl).
        #[arg(long)]
        support: Option<String>,
        /// Coefficient grid, comma separated.
        #[arg(long, default_value = "-1,0,1")]
        grid: String,
        /// Largest number of grid points to visit.
        #[arg(long, default_value_t = 1_000_000)]
        cap: u128,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Check a tensor family and the Rota-Baxter identity of its operators.
    Verify {
        /// Family file: {"k", "lambda", "family"} or a search report.
        #[arg(long)]
        tensors: PathBuf,
        #[arg(long, default_value_t = 0)]
        family_index: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random pairs per index pair.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = set_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match run(cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn set_threads() -> Result<()> {
    if let Ok(v) = std::env::var("MATCHBOX_THREADS") {
        let n: usize = v.parse().with_context(|| format!("MATCHBOX_THREADS={v}"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn run(cmd: Cmd) -> Result<bool> {
    match cmd {
        Cmd::Enumerate(a) => enumerate(a),
        Cmd::Mul(m) => mul(m),
        Cmd::Check(a) => cmd_check(a),
        Cmd::Pipeline(a) => cmd_pipeline(a),
        Cmd::Aybe(AybeCmd::Search { k, lambda, support, grid, cap, report }) => {
            aybe_search_cmd(k, &lambda, support.as_deref(), &grid, cap, report)
        }
        Cmd::Aybe(AybeCmd::Verify { tensors, family_index, seed, trials, report }) => {
            aybe_verify(&tensors, family_index, seed, trials, report)
        }
    }
}

fn emit(v: &Value, path: Option<&PathBuf>) -> Result<()> {
    let text = serde_json::to_string_pretty(v)?;
    println!("{text}");
    if let Some(p) = path {
        std::fs::write(p, format!("{text}\n")).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn enumerate(a: EnumerateArgs) -> Result<bool> {
    let d = Alphabet::parse_list(&a.decorations)?;
    let o = Alphabet::parse_list(&a.types)?;
    let kind = match a.kind {
        KindArg::Pbt => TreeKind::Planar,
        KindArg::Rooted => TreeKind::Rooted,
    };
    let trees = enumerate_capped(kind, a.n, &d, &o, a.cap)?;
    if let TreeKind::Planar = kind {
        let expected = count_pbt(a.n, d.len(), o.len());
        if expected != trees.len().into() {
            bail!("enumerated {} trees but the count formula gives {expected}", trees.len());
        }
    }
    if a.json {
        println!("{}", json!({ "n": a.n, "count": trees.len(), "trees": trees }));
    } else {
        for t in &trees {
            println!("{t}");
        }
        println!("count: {}", trees.len());
    }
    Ok(true)
}

fn mul(m: MulCmd) -> Result<bool> {
    match m {
        MulCmd::Dend { op, index, decorations, types, x, y } => {
            let alg = FreeDendriform::new(Alphabet::parse_list(&decorations)?, Alphabet::parse_list(&types)?);
            let x = PlanarBinaryTree::parse_lincomb(&x)?;
            let y = PlanarBinaryTree::parse_lincomb(&y)?;
            let out = match op {
                DendOp::Prec => alg.product(Side::Prec, &x, &y, &index)?,
                DendOp::Succ => alg.product(Side::Succ, &x, &y, &index)?,
                DendOp::Bullet => alg.bullet(&x, &y, &index)?,
            };
            println!("{out}");
        }
        MulCmd::Prelie { edge, decorations, types, x, y } => {
            let alg = GraftingPreLie::new(Alphabet::parse_list(&decorations)?, Alphabet::parse_list(&types)?);
            let x = RootedTree::parse_lincomb(&x)?;
            let y = RootedTree::parse_lincomb(&y)?;
            println!("{}", alg.star(&x, &y, &edge)?);
        }
    }
    Ok(true)
}

fn check_ops<C: Carrier>(s: OpStructure<C>, steps: &[Step], set: &str, sampling: &Sampling<C>) -> Result<(Value, bool)> {
    let mut cur = s;
    for &step in steps {
        cur = op_step(step, &cur)?.0;
    }
    let set = op_axiom_set::<C>(set)?;
    let v = check(&cur, &set, sampling)?;
    let mut r = report(&cur, &set, sampling, &v);
    r["provenance"] = json!(cur.provenance());
    Ok((r, v.passed))
}

fn check_family<A: Algebra>(fam: &RBFamily<A>, steps: &[Step], set: &str, sampling: &Sampling<A>) -> Result<(Value, bool)> {
    match steps.split_first() {
        None if set == "matching-rb" => {
            let set = matching_rb::<A>();
            let v = check(fam, &set, sampling)?;
            Ok((report(fam, &set, sampling, &v), v.passed))
        }
        None => Err(anyhow!("`{set}` needs a structure; pass --steps to build one from the family")),
        Some((&first, rest)) => {
            let (s, _) = family_step(fam, first)?;
            check_ops(s, rest, set, sampling)
        }
    }
}

fn cmd_check(a: CheckArgs) -> Result<bool> {
    let steps = Step::parse_list(&a.steps)?;
    let (result, passed) = match load(&a.source)? {
        Source::Poly(f, s) => check_family(&f, &steps, &a.axioms, &s)?,
        Source::Seq(f, s) => check_family(&f, &steps, &a.axioms, &s)?,
        Source::Matrix(f, s) => check_family(&f, &steps, &a.axioms, &s)?,
        Source::Dd(o, s) => check_ops(o, &steps, &a.axioms, &s)?,
        Source::Rooted(o, s) => check_ops(o, &steps, &a.axioms, &s)?,
    };
    let mut config = a.source.config();
    config["axioms"] = json!(a.axioms);
    config["steps"] = json!(a.steps);
    emit(&json!({ "config": config, "result": result }), a.report.as_ref())?;
    Ok(passed)
}

fn cmd_pipeline(a: PipelineArgs) -> Result<bool> {
    let steps = Step::parse_list(&a.steps)?;
    let r = match load(&a.source)? {
        Source::Poly(f, s) => run_family_pipeline(&f, &steps, &s)?,
        Source::Seq(f, s) => run_family_pipeline(&f, &steps, &s)?,
        Source::Matrix(f, s) => run_family_pipeline(&f, &steps, &s)?,
        Source::Dd(o, s) => run_ops_pipeline(o, "matching-dendriform", &steps, &s)?,
        Source::Rooted(o, s) => run_ops_pipeline(o, "matching-prelie", &steps, &s)?,
    };
    let mut config = a.source.config();
    config["steps"] = json!(a.steps);
    emit(&json!({ "config": config, "pipeline": r.to_json() }), a.report.as_ref())?;
    Ok(r.passed)
}

fn parse_support(s: &str) -> Result<Vec<(usize, usize, usize, usize)>> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let v = p
                .split(',')
                .map(|x| x.trim().parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .with_context(|| format!("support entry `{p}`"))?;
            match v[..] {
                [i, j, k, l] => Ok((i, j, k, l)),
                _ => bail!("support entry `{p}` needs four indices"),
            }
        })
        .collect()
}

fn parse_rationals(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(|x| x.trim().parse::<Rational>().map_err(Into::into)).collect()
}

fn aybe_search_cmd(
    k: usize,
    lambda: &str,
    support: Option<&str>,
    grid: &str,
    cap: u128,
    path: Option<PathBuf>,
) -> Result<bool> {
    let lambda: Rational = lambda.parse()?;
    let space = match support {
        Some(s) => SearchSpace { k, support: parse_support(s)?, grid: parse_rationals(grid)? },
        None if k == 2 => SearchSpace { grid: parse_rationals(grid)?, ..default_space() },
        None => bail!("--support is required for k = {k}"),
    };
    let sols = aybe_search(&space, &lambda, cap)?;
    let pairs = aybe_family_search(&sols, &lambda)?;
    let families: Vec<Value> = pairs
        .iter()
        .map(|(r, s)| json!({ "α": r.to_json(), "β": s.to_json() }))
        .collect();
    let v = json!({
        "k": k,
        "lambda": lambda,
        "grid": space.grid,
        "support": space.support,
        "grid_points": space.size().to_string(),
        "solutions": sols.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        "families": families,
    });
    emit(&v, path.as_ref())?;
    Ok(true)
}

fn aybe_verify(tensors: &PathBuf, index: usize, seed: u64, trials: usize, path: Option<PathBuf>) -> Result<bool> {
    let (k, lambda, family) = read_family(tensors, index)?;
    let mut v = json!({ "k": k, "lambda": lambda, "indices": family.keys().collect::<Vec<_>>() });
    let passed = match make_paybe_family(&family, &lambda) {
        Err(e) => {
            v["family"] = json!({ "verdict": "fail", "reason": e.to_string() });
            false
        }
        Ok(fam) => {
            v["family"] = json!({ "verdict": "pass" });
            let sampler = std::sync::Arc::new(move |rng: &mut ChaCha8Rng| Matrix::random(rng, k, 3));
            let sampling = Sampling::random(sampler, seed, trials);
            let set = matching_rb::<Matrix>();
            let verdict = check(&fam, &set, &sampling)?;
            v["rb"] = report(&fam, &set, &sampling, &verdict);
            v["structure"] = json!(fam.describe());
            verdict.passed
        }
    };
    emit(&v, path.as_ref())?;
    Ok(passed)
}
