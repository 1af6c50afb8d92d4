//! Carriers equipped with Ω-indexed families of named binary operations, and
//! operator families on Lie carriers.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{Algebra, Carrier, Rational};
use crate::operators::{LinearOp, RBFamily};

/// A bilinear binary operation on a carrier.
pub type BinOp<C> = Arc<dyn Fn(&C, &C) -> C + Send + Sync>;

/// The operation families an [`OpStructure`] may carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OpName {
    /// `≺`
    Prec,
    /// `≻`
    Succ,
    /// `·`
    Dot,
    /// `∗`
    Star,
    /// `∘`
    Circ,
    /// `⋆`
    AssocStar,
    /// `•`
    Bullet,
    /// `[,]`
    Bracket,
}

impl OpName {
    pub const ALL: [OpName; 8] = [
        OpName::Prec,
        OpName::Succ,
        OpName::Dot,
        OpName::Star,
        OpName::Circ,
        OpName::AssocStar,
        OpName::Bullet,
        OpName::Bracket,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            OpName::Prec => "prec",
            OpName::Succ => "succ",
            OpName::Dot => "dot",
            OpName::Star => "star",
            OpName::Circ => "circ",
            OpName::AssocStar => "assocstar",
            OpName::Bullet => "bullet",
            OpName::Bracket => "bracket",
        }
    }
}

impl fmt::Display for OpName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OpName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OpName::ALL
            .into_iter()
            .find(|o| o.as_str() == s)
            .ok_or_else(|| Error::Unknown(format!("operation `{s}`")))
    }
}

/// A carrier with named, Ω-indexed bilinear operations.
#[derive(Clone)]
pub struct OpStructure<C> {
    carrier: String,
    indices: Vec<String>,
    ops: BTreeMap<OpName, BTreeMap<String, BinOp<C>>>,
    provenance: Vec<String>,
}

impl<C: Carrier> OpStructure<C> {
    pub fn new<I, S>(carrier: impl Into<String>, indices: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut indices: Vec<String> = indices.into_iter().map(Into::into).collect();
        indices.sort();
        indices.dedup();
        if indices.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        Ok(OpStructure { carrier: carrier.into(), indices, ops: BTreeMap::new(), provenance: Vec::new() })
    }

    pub fn carrier(&self) -> &str {
        &self.carrier
    }

    pub fn indices(&self) -> &[String] {
        &self.indices
    }

    pub fn provenance(&self) -> &[String] {
        &self.provenance
    }

    pub fn with_provenance(mut self, step: impl Into<String>) -> Self {
        self.provenance.push(step.into());
        self
    }

    pub(crate) fn inherit_provenance(mut self, from: &[String]) -> Self {
        let mut p = from.to_vec();
        p.append(&mut self.provenance);
        self.provenance = p;
        self
    }

    pub fn insert(&mut self, name: OpName, w: impl Into<String>, op: BinOp<C>) {
        self.ops.entry(name).or_default().insert(w.into(), op);
    }

    /// Adds `name` for every index, building each operation from its index.
    pub fn with_family(mut self, name: OpName, mut make: impl FnMut(&str) -> BinOp<C>) -> Self {
        for w in self.indices.clone() {
            let op = make(&w);
            self.insert(name, w, op);
        }
        self
    }

    /// True when `name` is defined for every index.
    pub fn has_op(&self, name: OpName) -> bool {
        self.ops.get(&name).is_some_and(|m| self.indices.iter().all(|w| m.contains_key(w)))
    }

    pub fn op_names(&self) -> Vec<OpName> {
        self.ops.keys().copied().filter(|n| self.has_op(*n)).collect()
    }

    pub fn get(&self, name: OpName, w: &str) -> Option<&BinOp<C>> {
        self.ops.get(&name).and_then(|m| m.get(w))
    }

    /// `x ⊙_w y` for the family `name`. Panics when the operation is absent;
    /// callers check [`OpStructure::has_op`] first.
    pub fn apply(&self, name: OpName, w: &str, x: &C, y: &C) -> C {
        let op = self.get(name, w).unwrap_or_else(|| panic!("structure has no `{name}` for index `{w}`"));
        op(x, y)
    }

    /// The same structure restricted to the listed operation families.
    pub fn restrict(&self, names: &[OpName]) -> Self {
        let mut out = self.clone();
        out.ops.retain(|n, _| names.contains(n));
        out
    }

    pub fn describe(&self) -> String {
        let ops: Vec<&str> = self.op_names().into_iter().map(OpName::as_str).collect();
        format!("{}[{}]{{{}}}", self.carrier, self.indices.join(","), ops.join(","))
    }
}

impl<C> fmt::Debug for OpStructure<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OpStructure")
            .field("carrier", &self.carrier)
            .field("indices", &self.indices)
            .field("ops", &self.ops.keys().collect::<Vec<_>>())
            .field("provenance", &self.provenance)
            .finish()
    }
}

/// A Lie bracket together with an Ω-indexed operator family with weights.
#[derive(Clone)]
pub struct LieFamily<C> {
    carrier: String,
    indices: Vec<String>,
    operators: BTreeMap<String, LinearOp<C>>,
    weights: BTreeMap<String, Rational>,
    bracket: BinOp<C>,
}

impl<C: Carrier> LieFamily<C> {
    pub fn new(
        carrier: impl Into<String>,
        entries: Vec<(String, LinearOp<C>, Rational)>,
        bracket: BinOp<C>,
    ) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        let mut operators = BTreeMap::new();
        let mut weights = BTreeMap::new();
        for (w, op, l) in entries {
            operators.insert(w.clone(), op);
            weights.insert(w, l);
        }
        Ok(LieFamily {
            carrier: carrier.into(),
            indices: operators.keys().cloned().collect(),
            operators,
            weights,
            bracket,
        })
    }

    pub fn carrier(&self) -> &str {
        &self.carrier
    }

    pub fn indices(&self) -> &[String] {
        &self.indices
    }

    pub fn apply(&self, w: &str, x: &C) -> C {
        (self.operators.get(w).unwrap_or_else(|| panic!("unknown index `{w}`")))(x)
    }

    pub fn weight(&self, w: &str) -> &Rational {
        self.weights.get(w).unwrap_or_else(|| panic!("unknown index `{w}`"))
    }

    pub fn bracket(&self, x: &C, y: &C) -> C {
        (self.bracket)(x, y)
    }
}

impl<A: Algebra> LieFamily<A> {
    /// The commutator bracket `[x, y] = xy - yx` with the family's operators.
    pub fn from_associative(fam: &RBFamily<A>) -> Self {
        let entries = fam
            .indices()
            .iter()
            .map(|w| (w.clone(), Arc::clone(fam.operator(w)), fam.weight(w).clone()))
            .collect();
        let bracket: BinOp<A> = Arc::new(|x: &A, y: &A| x.commutator(y));
        LieFamily::new(format!("lie({})", fam.carrier()), entries, bracket).expect("family is nonempty")
    }
}

impl<C> fmt::Debug for LieFamily<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LieFamily")
            .field("carrier", &self.carrier)
            .field("indices", &self.indices)
            .field("weights", &self.weights)
            .finish()
    }
}
