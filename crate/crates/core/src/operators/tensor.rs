//! Two- and three-fold tensors of k×k matrices and the (polarized)
//! associative Yang-Baxter equation of weight λ.
//!
//! A triple tensor in `M_k ⊗ M_k ⊗ M_k` is stored as its Kronecker image in
//! `M_{k³}`; slotwise multiplication of tensors is then plain matrix
//! multiplication, and the zero test is exact.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::{LinearOp, Matrix, RBFamily};
use crate::error::{Error, Result};
use crate::exactalg::{Carrier, Rational};

/// `r = Σ u_i ⊗ v_i` with k×k factors.
#[derive(Clone, PartialEq, Debug)]
pub struct MatTensor {
    k: usize,
    terms: Vec<(Matrix, Matrix)>,
}

impl MatTensor {
    /// Pairs with a zero factor are dropped.
    pub fn new(k: usize, terms: Vec<(Matrix, Matrix)>) -> Result<Self> {
        if k == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        for (u, v) in &terms {
            for m in [u, v] {
                if m.dim() != k {
                    return Err(Error::DimensionMismatch { expected: k, found: m.dim() });
                }
            }
        }
        let terms = terms.into_iter().filter(|(u, v)| !u.is_zero() && !v.is_zero()).collect();
        Ok(MatTensor { k, terms })
    }

    pub fn zero(k: usize) -> Self {
        MatTensor { k, terms: Vec::new() }
    }

    pub fn pure(u: Matrix, v: Matrix) -> Result<Self> {
        Self::new(u.dim(), vec![(u, v)])
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> &[(Matrix, Matrix)] {
        &self.terms
    }

    pub fn plus(&self, other: &MatTensor) -> Result<MatTensor> {
        same_dim(self, other)?;
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(MatTensor { k: self.k, terms })
    }

    pub fn scaled(&self, c: &Rational) -> MatTensor {
        if c.is_zero() {
            return MatTensor::zero(self.k);
        }
        MatTensor { k: self.k, terms: self.terms.iter().map(|(u, v)| (u.scaled(c), v.clone())).collect() }
    }

    /// `[{"u": [...], "v": [...]}, ...]`, factors row-major.
    pub fn to_json(&self) -> Value {
        Value::Array(self.terms.iter().map(|(u, v)| json!({"u": u.to_json(), "v": v.to_json()})).collect())
    }

    /// Parses the list form; `k` fixes the dimension (needed for the empty list).
    pub fn from_json(v: &Value, k: usize) -> Result<Self> {
        let list = v.as_array().ok_or_else(|| Error::Parse("tensor must be a list of {u, v}".into()))?;
        let mut terms = Vec::new();
        for t in list {
            let get = |f: &str| {
                t.get(f)
                    .ok_or_else(|| Error::Parse(format!("tensor term without `{f}`")))
                    .and_then(Matrix::from_json)
            };
            terms.push((get("u")?, get("v")?));
        }
        Self::new(k, terms)
    }
}

fn same_dim(r: &MatTensor, s: &MatTensor) -> Result<()> {
    if r.k != s.k {
        return Err(Error::DimensionMismatch { expected: r.k, found: s.k });
    }
    Ok(())
}

/// An element of `M_k ⊗ M_k ⊗ M_k`, held as a k³×k³ matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct TripleTensor {
    k: usize,
    m: Matrix,
}

impl TripleTensor {
    pub fn zero(k: usize) -> Self {
        TripleTensor { k, m: Matrix::zero(k * k * k) }
    }

    /// `Σ a_i ⊗ b_i ⊗ c_i`
    pub fn from_triples(k: usize, triples: &[(Matrix, Matrix, Matrix)]) -> Self {
        let mut out = Self::zero(k);
        for (a, b, c) in triples {
            out.m = out.m.plus(&kron3(a, b, c));
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn kronecker(&self) -> &Matrix {
        &self.m
    }

    /// Slotwise product `(a⊗b⊗c)(a'⊗b'⊗c') = aa'⊗bb'⊗cc'`.
    pub fn mul(&self, other: &TripleTensor) -> TripleTensor {
        TripleTensor { k: self.k, m: self.m.mul(&other.m) }
    }

    pub fn plus(&self, other: &TripleTensor) -> TripleTensor {
        TripleTensor { k: self.k, m: self.m.plus(&other.m) }
    }

    pub fn minus(&self, other: &TripleTensor) -> TripleTensor {
        TripleTensor { k: self.k, m: self.m.minus(&other.m) }
    }

    pub fn scaled(&self, c: &Rational) -> TripleTensor {
        TripleTensor { k: self.k, m: self.m.scaled(c) }
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }
}

fn kron3(a: &Matrix, b: &Matrix, c: &Matrix) -> Matrix {
    let k = a.dim();
    let n = k * k * k;
    let mut e = vec![Rational::zero(); n * n];
    for i1 in 0..k {
        for j1 in 0..k {
            let x = a.get(i1, j1);
            if x.is_zero() {
                continue;
            }
            for i2 in 0..k {
                for j2 in 0..k {
                    let y = b.get(i2, j2);
                    if y.is_zero() {
                        continue;
                    }
                    let xy = x * y;
                    for i3 in 0..k {
                        for j3 in 0..k {
                            let z = c.get(i3, j3);
                            if z.is_zero() {
                                continue;
                            }
                            let row = (i1 * k + i2) * k + i3;
                            let col = (j1 * k + j2) * k + j3;
                            e[row * n + col] = &xy * z;
                        }
                    }
                }
            }
        }
    }
    Matrix::from_rows(n, e).expect("square by construction")
}

/// Which two tensor slots a two-tensor occupies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    S12,
    S13,
    S23,
}

/// `r_12 = Σ u⊗v⊗1`, `r_13 = Σ u⊗1⊗v`, `r_23 = Σ 1⊗u⊗v`.
pub fn tensor_embed(r: &MatTensor, slot: Slot) -> TripleTensor {
    let one = Matrix::identity(r.k);
    let triples: Vec<_> = r
        .terms
        .iter()
        .map(|(u, v)| match slot {
            Slot::S12 => (u.clone(), v.clone(), one.clone()),
            Slot::S13 => (u.clone(), one.clone(), v.clone()),
            Slot::S23 => (one.clone(), u.clone(), v.clone()),
        })
        .collect();
    TripleTensor::from_triples(r.k, &triples)
}

/// `r_13 s_12 - r_12 s_23 + r_23 s_13 + λ s_13`; zero exactly when `(r, s)`
/// solves the polarized associative Yang-Baxter equation of weight λ.
pub fn paybe_residual(r: &MatTensor, s: &MatTensor, lambda: &Rational) -> Result<TripleTensor> {
    same_dim(r, s)?;
    let s13 = tensor_embed(s, Slot::S13);
    let out = tensor_embed(r, Slot::S13)
        .mul(&tensor_embed(s, Slot::S12))
        .minus(&tensor_embed(r, Slot::S12).mul(&tensor_embed(s, Slot::S23)))
        .plus(&tensor_embed(r, Slot::S23).mul(&s13))
        .plus(&s13.scaled(lambda));
    Ok(out)
}

/// `r_12 s_23 = s_12 r_23`
pub fn swap_condition(r: &MatTensor, s: &MatTensor) -> Result<bool> {
    same_dim(r, s)?;
    let lhs = tensor_embed(r, Slot::S12).mul(&tensor_embed(s, Slot::S23));
    let rhs = tensor_embed(s, Slot::S12).mul(&tensor_embed(r, Slot::S23));
    Ok(lhs == rhs)
}

/// `x ↦ Σ u_i x v_i`
pub fn tensor_operator(r: &MatTensor) -> LinearOp<Matrix> {
    let terms = r.terms.clone();
    Arc::new(move |x: &Matrix| {
        terms.iter().fold(x.zero_like(), |acc, (u, v)| acc.plus(&u.mul(x).mul(v)))
    })
}

/// A finite search grid: tensors `Σ_p c_p E_{i_p j_p} ⊗ E_{k_p l_p}` with
/// every `c_p` drawn from `grid`.
#[derive(Clone, Debug)]
pub struct SearchSpace {
    pub k: usize,
    /// Zero-based `(i, j, k, l)` for `E_ij ⊗ E_kl`.
    pub support: Vec<(usize, usize, usize, usize)>,
    pub grid: Vec<Rational>,
}

impl SearchSpace {
    pub fn size(&self) -> u128 {
        (self.grid.len() as u128).saturating_pow(self.support.len() as u32)
    }

    fn point(&self, mut idx: u128) -> MatTensor {
        let g = self.grid.len() as u128;
        let mut terms = Vec::new();
        for &(i, j, k, l) in self.support.iter().rev() {
            let c = &self.grid[(idx % g) as usize];
            idx /= g;
            if !c.is_zero() {
                terms.push((Matrix::unit(self.k, i, j).scaled(c), Matrix::unit(self.k, k, l)));
            }
        }
        terms.reverse();
        MatTensor { k: self.k, terms }
    }

    fn validate(&self, cap: u128) -> Result<()> {
        if self.support.iter().any(|&(i, j, k, l)| i.max(j).max(k).max(l) >= self.k) {
            return Err(Error::DimensionMismatch { expected: self.k, found: self.k + 1 });
        }
        let size = self.size();
        if size > cap {
            return Err(Error::BudgetExceeded { size, cap });
        }
        Ok(())
    }
}

/// Every grid point `r` with `paybe_residual(r, r, λ) = 0`, in grid order
/// (first support entry varies slowest).
pub fn aybe_search(space: &SearchSpace, lambda: &Rational, cap: u128) -> Result<Vec<MatTensor>> {
    space.validate(cap)?;
    let size = space.size() as u64;
    Ok((0..size)
        .into_par_iter()
        .filter_map(|idx| {
            let r = space.point(idx as u128);
            paybe_residual(&r, &r, lambda).expect("same dimension").is_zero().then_some(r)
        })
        .collect())
}

/// Unordered pairs `(r_i, r_j)`, `i < j`, of AYBE solutions that together
/// solve the polarized equation in both orders and satisfy the swap
/// condition in both orders.
pub fn aybe_family_search(solutions: &[MatTensor], lambda: &Rational) -> Result<Vec<(MatTensor, MatTensor)>> {
    for w in solutions.windows(2) {
        same_dim(&w[0], &w[1])?;
    }
    let pairs: Vec<(usize, usize)> = (0..solutions.len())
        .flat_map(|i| (i + 1..solutions.len()).map(move |j| (i, j)))
        .collect();
    Ok(pairs
        .into_par_iter()
        .filter_map(|(i, j)| {
            let (r, s) = (&solutions[i], &solutions[j]);
            compatible_pair(r, s, lambda).then(|| (r.clone(), s.clone()))
        })
        .collect())
}

fn compatible_pair(r: &MatTensor, s: &MatTensor, lambda: &Rational) -> bool {
    let ok = |a: &MatTensor, b: &MatTensor| {
        paybe_residual(a, b, lambda).is_ok_and(|t| t.is_zero()) && swap_condition(a, b).unwrap_or(false)
    };
    ok(r, s) && ok(s, r)
}

/// The family `P_ω(x) = Σ u_{ω,i} x v_{ω,i}`, all of weight λ. Every ordered
/// pair `(r_α, r_β)` must solve the polarized equation and the swap condition.
pub fn make_paybe_family(solutions: &BTreeMap<String, MatTensor>, lambda: &Rational) -> Result<RBFamily<Matrix>> {
    for (a, r) in solutions {
        for (b, s) in solutions {
            same_dim(r, s)?;
            if !paybe_residual(r, s, lambda)?.is_zero() {
                return Err(Error::PreconditionFailed(format!(
                    "pair ({a}, {b}) does not solve the polarized equation of weight {lambda}"
                )));
            }
            if !swap_condition(r, s)? {
                return Err(Error::PreconditionFailed(format!("pair ({a}, {b}) violates r12 s23 = s12 r23")));
            }
        }
    }
    let entries = solutions
        .iter()
        .map(|(w, r)| (w.clone(), tensor_operator(r), lambda.clone()))
        .collect();
    RBFamily::new("matrix", entries)
}
