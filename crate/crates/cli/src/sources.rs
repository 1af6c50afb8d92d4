//! Named input structures shared by `check` and `pipeline`.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, ValueEnum};
use matchbox_core::axioms::{sample_element_with, Sampler, Sampling};
use matchbox_core::exactalg::{BasisKey, Carrier, LinComb, Rational};
use matchbox_core::freedend::{DDElement, FreeDendriform};
use matchbox_core::operators::{
    aybe_family_search, aybe_search, make_kernel_family, make_paybe_family, running_sum_base, scaled_family,
    MatTensor, Matrix, Poly, RBFamily, SearchSpace, Seq,
};
use matchbox_core::prelie_trees::{GraftingPreLie, PreLieElement};
use matchbox_core::structure::OpStructure;
use matchbox_core::trees::{enumerate_pbt, enumerate_rooted, Alphabet};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SourceKind {
    /// Integral operators `f ↦ ∫_0^x k_ω(t) f(t) dt` on ℚ[x], weight 0.
    KernelFamily,
    /// Scaled running sums `c_ω P` on ℚⁿ with weights `c_ω λ₀`.
    RunningSum,
    /// Matrix operators `x ↦ Σ u x v` from Yang-Baxter solutions.
    PaybeFamily,
    /// The free matching dendriform algebra on planar binary trees.
    FreeDd,
    /// Rooted trees with the grafting products.
    RootedTrees,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Auto,
    Exhaustive,
    Random,
}

#[derive(Args, Debug, Clone)]
pub struct SourceArgs {
    /// Input structure.
    #[arg(long)]
    pub from: SourceKind,
    /// Vertex decorations for tree sources (comma separated).
    #[arg(short = 'D', long, default_value = "a")]
    pub decorations: String,
    /// Index set / edge types (comma separated).
    #[arg(short = 'O', long, default_value = "α,β")]
    pub types: String,
    /// Trees in the exhaustive pool have at most this many vertices.
    #[arg(long, default_value_t = 2)]
    pub max_vertices: usize,
    /// Random tree samples use trees with at most this many vertices.
    #[arg(long, default_value_t = 4)]
    pub sample_vertices: usize,
    /// Kernels as JSON, e.g. '{"α":["1"],"β":["0","1"]}' (coefficients from x^0).
    #[arg(long, default_value = r#"{"α":["1"],"β":["0","1"]}"#)]
    pub kernels: String,
    /// Sequence length for the running-sum family.
    #[arg(long, default_value_t = 6)]
    pub length: usize,
    /// Scalars for the running-sum family as JSON.
    #[arg(long, default_value = r#"{"α":"1/2","β":"-1/3"}"#)]
    pub scalars: String,
    /// Tensor family file: {"k":..,"lambda":..,"family":{name: tensor}}. When
    /// absent, the first two-operator family found on the default 2×2 grid.
    #[arg(long)]
    pub tensors: Option<PathBuf>,
    /// Which family of a search output (`families` list) to use.
    #[arg(long, default_value_t = 0)]
    pub family_index: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random samples per identity and index pair.
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
}

impl SourceArgs {
    pub fn config(&self) -> Value {
        let mut v = json!({
            "from": self.from.to_possible_value().expect("named").get_name(),
            "mode": self.mode.to_possible_value().expect("named").get_name(),
            "seed": self.seed,
            "trials": self.trials,
        });
        match self.from {
            SourceKind::KernelFamily => v["kernels"] = json!(self.kernels),
            SourceKind::RunningSum => {
                v["length"] = json!(self.length);
                v["scalars"] = json!(self.scalars);
            }
            SourceKind::PaybeFamily => {
                v["tensors"] = json!(self.tensors.as_ref().map(|p| p.display().to_string()));
                v["family_index"] = json!(self.family_index);
            }
            SourceKind::FreeDd | SourceKind::RootedTrees => {
                v["decorations"] = json!(self.decorations);
                v["types"] = json!(self.types);
                v["max_vertices"] = json!(self.max_vertices);
                v["sample_vertices"] = json!(self.sample_vertices);
            }
        }
        v
    }

    fn sampling<C: Carrier>(&self, pool: Vec<C>, sampler: Sampler<C>) -> Sampling<C> {
        match self.mode {
            ModeArg::Auto => Sampling::auto(pool, sampler, self.seed),
            ModeArg::Exhaustive => Sampling::Exhaustive(pool),
            ModeArg::Random => Sampling::random(sampler, self.seed, self.trials),
        }
    }
}

pub enum Source {
    Poly(RBFamily<Poly>, Sampling<Poly>),
    Seq(RBFamily<Seq>, Sampling<Seq>),
    Matrix(RBFamily<Matrix>, Sampling<Matrix>),
    Dd(OpStructure<DDElement>, Sampling<DDElement>),
    Rooted(OpStructure<PreLieElement>, Sampling<PreLieElement>),
}

fn alphabets(a: &SourceArgs) -> Result<(Alphabet, Alphabet)> {
    Ok((Alphabet::parse_list(&a.decorations)?, Alphabet::parse_list(&a.types)?))
}

fn tree_sampler<K: BasisKey + 'static>(keys: Vec<K>) -> Sampler<LinComb<K>> {
    Arc::new(move |rng: &mut ChaCha8Rng| sample_element_with(rng, &keys, 1, 5))
}

/// The 2×2 search grid used when no tensor file is given.
pub fn default_space() -> SearchSpace {
    SearchSpace {
        k: 2,
        support: vec![
            (0, 0, 0, 0),
            (0, 0, 0, 1),
            (0, 1, 0, 0),
            (0, 1, 0, 1),
            (0, 0, 1, 1),
            (1, 1, 0, 0),
            (1, 1, 1, 1),
            (0, 1, 1, 1),
            (1, 1, 0, 1),
        ],
        grid: ["-1", "0", "1"].iter().map(|s| s.parse().expect("literal")).collect(),
    }
}

/// Reads a tensor family file: either `{"k", "lambda", "family"}` or a search
/// output with a `families` list.
pub fn read_family(path: &PathBuf, index: usize) -> Result<(usize, Rational, BTreeMap<String, MatTensor>)> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let v: Value = serde_json::from_str(&text).context("tensor file is not JSON")?;
    let k = v["k"].as_u64().ok_or_else(|| anyhow!("tensor file lacks `k`"))? as usize;
    let lambda: Rational = serde_json::from_value(v["lambda"].clone()).context("tensor file `lambda`")?;
    let fam = match v.get("family") {
        Some(f) => f.clone(),
        None => v["families"]
            .get(index)
            .cloned()
            .ok_or_else(|| anyhow!("tensor file has no family {index}"))?,
    };
    let obj = fam.as_object().ok_or_else(|| anyhow!("family must be an object"))?;
    let mut out = BTreeMap::new();
    for (w, t) in obj {
        out.insert(w.clone(), MatTensor::from_json(t, k)?);
    }
    Ok((k, lambda, out))
}

/// The first family on the default grid with two nonzero, distinct tensors.
pub fn default_family() -> Result<(usize, Rational, BTreeMap<String, MatTensor>)> {
    let lambda = Rational::zero();
    let sols = aybe_search(&default_space(), &lambda, 1 << 20)?;
    let (r, s) = aybe_family_search(&sols, &lambda)?
        .into_iter()
        .find(|(r, s)| !r.terms().is_empty() && !s.terms().is_empty())
        .ok_or_else(|| anyhow!("no two-operator family on the default grid"))?;
    Ok((2, lambda, BTreeMap::from([("α".to_string(), r), ("β".to_string(), s)])))
}

pub fn load(a: &SourceArgs) -> Result<Source> {
    Ok(match a.from {
        SourceKind::KernelFamily => {
            let v: Value = serde_json::from_str(&a.kernels).context("--kernels is not JSON")?;
            let obj = v.as_object().ok_or_else(|| anyhow!("--kernels must be an object"))?;
            let kernels = obj
                .iter()
                .map(|(w, p)| Ok((w.clone(), Poly::from_json(p)?)))
                .collect::<Result<BTreeMap<_, _>>>()?;
            let fam = make_kernel_family(&kernels)?;
            let pool = (0..=4).map(Poly::x_pow).collect();
            let sampler: Sampler<Poly> = Arc::new(|rng: &mut ChaCha8Rng| Poly::random(rng, 4, 5));
            Source::Poly(fam, a.sampling(pool, sampler))
        }
        SourceKind::RunningSum => {
            if a.length < 2 {
                bail!("--length must be at least 2");
            }
            let scalars: BTreeMap<String, Rational> =
                serde_json::from_str(&a.scalars).context("--scalars must map names to rationals")?;
            let (p, l) = running_sum_base(a.length);
            let fam = scaled_family(format!("seq{}", a.length), p, &l, &scalars)?;
            let n = a.length;
            let pool = (0..n).map(|i| Seq::unit(n, i)).collect();
            let sampler: Sampler<Seq> = Arc::new(move |rng: &mut ChaCha8Rng| Seq::random(rng, n, 5));
            Source::Seq(fam, a.sampling(pool, sampler))
        }
        SourceKind::PaybeFamily => {
            let (k, lambda, tensors) = match &a.tensors {
                Some(p) => read_family(p, a.family_index)?,
                None => default_family()?,
            };
            let fam = make_paybe_family(&tensors, &lambda)?;
            let pool = (0..k).flat_map(|i| (0..k).map(move |j| Matrix::unit(k, i, j))).collect();
            let sampler: Sampler<Matrix> = Arc::new(move |rng: &mut ChaCha8Rng| Matrix::random(rng, k, 3));
            Source::Matrix(fam, a.sampling(pool, sampler))
        }
        SourceKind::FreeDd => {
            let (d, o) = alphabets(a)?;
            let pool = (1..=a.max_vertices).flat_map(|n| enumerate_pbt(n, &d, &o)).map(LinComb::basis).collect();
            let keys: Vec<_> = (1..=a.sample_vertices).flat_map(|n| enumerate_pbt(n, &d, &o)).collect();
            let s = FreeDendriform::new(d, o).structure();
            Source::Dd(s, a.sampling(pool, tree_sampler(keys)))
        }
        SourceKind::RootedTrees => {
            let (d, o) = alphabets(a)?;
            let pool = (1..=a.max_vertices).flat_map(|n| enumerate_rooted(n, &d, &o)).map(LinComb::basis).collect();
            let keys: Vec<_> = (1..=a.sample_vertices).flat_map(|n| enumerate_rooted(n, &d, &o)).collect();
            let s = GraftingPreLie::new(d, o).structure();
            Source::Rooted(s, a.sampling(pool, tree_sampler(keys)))
        }
    })
}
