//! D-decorated, Ω-typed planar binary trees.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use serde_json::{json, Value};

use super::parse::{parse_lincomb, Cursor};
use super::{json_str, Alphabet, EdgeType};
use crate::error::{Error, Result};
use crate::exactalg::{BasisKey, LinComb};

/// A planar binary tree: the leaf `|`, or an internal vertex with a
/// decoration and two typed edges to its left and right subtrees.
///
/// An edge carries the empty type exactly when it leads to a leaf.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PlanarBinaryTree {
    Leaf,
    Node(Arc<PbtNode>),
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PbtNode {
    pub dec: String,
    pub ltype: EdgeType,
    pub left: PlanarBinaryTree,
    pub rtype: EdgeType,
    pub right: PlanarBinaryTree,
    vertices: usize,
    depth: usize,
}

impl PlanarBinaryTree {
    /// The typed grafting `l ∨_{d,t1,t2} r`.
    pub fn graft(
        l: PlanarBinaryTree,
        r: PlanarBinaryTree,
        dec: impl Into<String>,
        t1: EdgeType,
        t2: EdgeType,
    ) -> Result<Self> {
        if t1.is_empty() != l.is_leaf() {
            return Err(Error::EdgeTypeMismatch(format!(
                "left edge type `{t1}` with left subtree `{l}`"
            )));
        }
        if t2.is_empty() != r.is_leaf() {
            return Err(Error::EdgeTypeMismatch(format!(
                "right edge type `{t2}` with right subtree `{r}`"
            )));
        }
        Ok(Self::node_unchecked(dec.into(), t1, l, t2, r))
    }

    pub(crate) fn node_unchecked(
        dec: String,
        ltype: EdgeType,
        left: PlanarBinaryTree,
        rtype: EdgeType,
        right: PlanarBinaryTree,
    ) -> Self {
        let vertices = 1 + left.vertex_count() + right.vertex_count();
        let depth = 1 + left.depth().max(right.depth());
        PlanarBinaryTree::Node(Arc::new(PbtNode { dec, ltype, left, rtype, right, vertices, depth }))
    }

    /// The single-vertex tree `| ∨_{d,e,e} |`.
    pub fn vertex(dec: impl Into<String>) -> Self {
        Self::node_unchecked(
            dec.into(),
            EdgeType::Empty,
            PlanarBinaryTree::Leaf,
            EdgeType::Empty,
            PlanarBinaryTree::Leaf,
        )
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, PlanarBinaryTree::Leaf)
    }

    pub fn as_node(&self) -> Option<&PbtNode> {
        match self {
            PlanarBinaryTree::Leaf => None,
            PlanarBinaryTree::Node(n) => Some(n),
        }
    }

    /// The unique `(T^l, d, t1, t2, T^r)` with `T = T^l ∨_{d,t1,t2} T^r`.
    pub fn decompose(&self) -> Result<(PlanarBinaryTree, String, EdgeType, EdgeType, PlanarBinaryTree)> {
        let n = self.as_node().ok_or(Error::LeafDecomposition)?;
        Ok((n.left.clone(), n.dec.clone(), n.ltype.clone(), n.rtype.clone(), n.right.clone()))
    }

    /// Number of internal vertices.
    pub fn vertex_count(&self) -> usize {
        self.as_node().map_or(0, |n| n.vertices)
    }

    /// Length of the longest root-to-leaf chain of internal vertices.
    pub fn depth(&self) -> usize {
        self.as_node().map_or(0, |n| n.depth)
    }

    /// Checks the empty-type invariant and membership in the alphabets.
    pub fn validate(&self, decorations: &Alphabet, types: &Alphabet) -> Result<()> {
        let Some(n) = self.as_node() else { return Ok(()) };
        if !decorations.contains(&n.dec) {
            return Err(Error::AlphabetMismatch(format!("decoration `{}` not in {{{decorations}}}", n.dec)));
        }
        for (t, sub) in [(&n.ltype, &n.left), (&n.rtype, &n.right)] {
            match t {
                EdgeType::Empty if !sub.is_leaf() => {
                    return Err(Error::EdgeTypeMismatch(format!("empty type above subtree `{sub}`")))
                }
                EdgeType::Typed(_) if sub.is_leaf() => {
                    return Err(Error::EdgeTypeMismatch(format!("typed edge `{t}` above a leaf")))
                }
                EdgeType::Typed(s) if !types.contains(s) => {
                    return Err(Error::AlphabetMismatch(format!("edge type `{s}` not in {{{types}}}")))
                }
                _ => {}
            }
            sub.validate(decorations, types)?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        match self {
            PlanarBinaryTree::Leaf => Value::String("|".into()),
            PlanarBinaryTree::Node(n) => json!({
                "dec": n.dec,
                "ltype": n.ltype.name(),
                "left": n.left.to_json(),
                "rtype": n.rtype.name(),
                "right": n.right.to_json(),
            }),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        if v.as_str() == Some("|") {
            return Ok(PlanarBinaryTree::Leaf);
        }
        let sub = |field: &str| {
            v.get(field)
                .ok_or_else(|| Error::Parse(format!("missing field `{field}`")))
                .and_then(Self::from_json)
        };
        Self::graft(
            sub("left")?,
            sub("right")?,
            json_str(v, "dec")?,
            EdgeType::from_name(json_str(v, "ltype")?),
            EdgeType::from_name(json_str(v, "rtype")?),
        )
    }

    pub(crate) fn read(cur: &mut Cursor<'_>) -> Result<Self> {
        if cur.eat('|') {
            return Ok(PlanarBinaryTree::Leaf);
        }
        let head = cur.name()?;
        if head != "B" {
            return Err(cur.error("expected `|` or `B(`"));
        }
        cur.expect('(')?;
        let dec = cur.name()?;
        cur.expect(',')?;
        let t1 = EdgeType::from_name(&cur.name()?);
        cur.expect(',')?;
        let l = Self::read(cur)?;
        cur.expect(',')?;
        let t2 = EdgeType::from_name(&cur.name()?);
        cur.expect(',')?;
        let r = Self::read(cur)?;
        cur.expect(')')?;
        Self::graft(l, r, dec, t1, t2)
    }

    /// Parses a linear combination of planar binary trees.
    pub fn parse_lincomb(src: &str) -> Result<LinComb<PlanarBinaryTree>> {
        parse_lincomb(src, Self::read)
    }
}

impl fmt::Display for PlanarBinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanarBinaryTree::Leaf => f.write_str("|"),
            PlanarBinaryTree::Node(n) => {
                write!(f, "B({},{},{},{},{})", n.dec, n.ltype, n.left, n.rtype, n.right)
            }
        }
    }
}

impl fmt::Debug for PlanarBinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PlanarBinaryTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        let t = Self::read(&mut cur)?;
        cur.finish()?;
        Ok(t)
    }
}

impl BasisKey for PlanarBinaryTree {
    fn key_json(&self) -> Value {
        self.to_json()
    }

    fn key_from_json(v: &Value) -> Result<Self> {
        Self::from_json(v)
    }
}

/// All trees with exactly `n` internal vertices, sorted by text form.
pub fn enumerate_pbt(n: usize, decorations: &Alphabet, types: &Alphabet) -> Vec<PlanarBinaryTree> {
    let mut by_size: Vec<Vec<PlanarBinaryTree>> = vec![vec![PlanarBinaryTree::Leaf]];
    for size in 1..=n {
        let mut trees = Vec::new();
        for left_size in 0..size {
            let right_size = size - 1 - left_size;
            let ltypes = edge_choices(left_size, types);
            let rtypes = edge_choices(right_size, types);
            for l in &by_size[left_size] {
                for r in &by_size[right_size] {
                    for d in decorations.letters() {
                        for t1 in &ltypes {
                            for t2 in &rtypes {
                                trees.push(PlanarBinaryTree::node_unchecked(
                                    d.clone(),
                                    t1.clone(),
                                    l.clone(),
                                    t2.clone(),
                                    r.clone(),
                                ));
                            }
                        }
                    }
                }
            }
        }
        by_size.push(trees);
    }
    let mut out = by_size.swap_remove(n);
    out.sort_by_cached_key(|t| t.to_string());
    out
}

fn edge_choices(subtree_size: usize, types: &Alphabet) -> Vec<EdgeType> {
    if subtree_size == 0 {
        vec![EdgeType::Empty]
    } else {
        types.letters().iter().map(|s| EdgeType::typed(s.clone())).collect()
    }
}

/// `Catalan(n) · |D|^n · |Ω|^(n-1)` for `n ≥ 1`, and 1 for `n = 0`.
pub fn count_pbt(n: usize, decorations: usize, types: usize) -> BigUint {
    if n == 0 {
        return BigUint::from(1u32);
    }
    // Catalan(n) = C(2n, n) / (n + 1)
    let mut binom = BigUint::from(1u32);
    for i in 0..n {
        binom = binom * BigUint::from(2 * n - i) / BigUint::from(i + 1);
    }
    let catalan = binom / BigUint::from(n + 1);
    catalan * BigUint::from(decorations).pow(n as u32) * BigUint::from(types).pow(n as u32 - 1)
}
