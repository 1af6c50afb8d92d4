//! Typed decorated trees.
//!
//! Two families live here: planar binary trees whose internal vertices carry a
//! decoration and whose edges carry a type (the basis of the free matching
//! dendriform algebra), and non-planar rooted trees with decorated vertices and
//! typed edges (the basis of the grafting pre-Lie algebra). Both have a
//! bit-exact text form:
//!
//! ```text
//! |                      leaf
//! B(d,t1,L,t2,R)         planar node, `e` is the empty edge type
//! R(d;[t1:child,...])    rooted tree, children in canonical order
//! ```

mod parse;
pub mod planar;
pub mod rooted;

use std::fmt;

use serde_json::Value;

use crate::error::{Error, Result};

pub use planar::{count_pbt, enumerate_pbt, PlanarBinaryTree, PbtNode};
pub use rooted::{enumerate_rooted, RootedTree};

/// The reserved name of the empty edge type.
pub const EMPTY_TYPE: &str = "e";

/// Largest `n` accepted by [`enumerate_capped`] unless a cap is given.
pub const DEFAULT_ENUMERATION_CAP: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeKind {
    Planar,
    Rooted,
}

/// The text forms of all trees of one kind with `n` (internal) vertices, in
/// canonical order, refusing `n > cap`.
pub fn enumerate_capped(kind: TreeKind, n: usize, decorations: &Alphabet, types: &Alphabet, cap: usize) -> Result<Vec<String>> {
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    Ok(match kind {
        TreeKind::Planar => enumerate_pbt(n, decorations, types).iter().map(ToString::to_string).collect(),
        TreeKind::Rooted => enumerate_rooted(n, decorations, types).iter().map(ToString::to_string).collect(),
    })
}

/// A finite, nonempty alphabet of short names, kept in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet(Vec<String>);

impl Alphabet {
    pub fn new<I, S>(letters: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut v: Vec<String> = letters.into_iter().map(Into::into).collect();
        v.sort();
        v.dedup();
        if v.is_empty() {
            return Err(Error::AlphabetMismatch("alphabet must be nonempty".into()));
        }
        if let Some(bad) = v.iter().find(|s| !parse::is_name(s)) {
            return Err(Error::Parse(format!("`{bad}` is not a valid letter")));
        }
        Ok(Alphabet(v))
    }

    /// An edge-type alphabet Ω; it may not contain the empty type `e`.
    pub fn types<I, S>(letters: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let a = Self::new(letters)?;
        if a.contains(EMPTY_TYPE) {
            return Err(Error::AlphabetMismatch(
                "the empty type `e` cannot be an element of the type alphabet".into(),
            ));
        }
        Ok(a)
    }

    /// Parses a comma-separated list such as `r,g`.
    pub fn parse_list(s: &str) -> Result<Self> {
        Self::new(s.split(',').map(str::trim).filter(|x| !x.is_empty()))
    }

    pub fn contains(&self, letter: &str) -> bool {
        self.0.binary_search_by(|x| x.as_str().cmp(letter)).is_ok()
    }

    pub fn letters(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.join(","))
    }
}

/// An edge type of a planar binary tree: the empty type `e` (leaf edges) or a
/// letter of the type alphabet Ω (internal edges).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum EdgeType {
    Empty,
    Typed(String),
}

impl EdgeType {
    pub fn typed(s: impl Into<String>) -> Self {
        EdgeType::Typed(s.into())
    }

    /// `e` maps to [`EdgeType::Empty`], anything else to a typed edge.
    pub fn from_name(s: &str) -> Self {
        if s == EMPTY_TYPE {
            EdgeType::Empty
        } else {
            EdgeType::Typed(s.to_owned())
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, EdgeType::Empty)
    }

    pub fn name(&self) -> &str {
        match self {
            EdgeType::Empty => EMPTY_TYPE,
            EdgeType::Typed(s) => s,
        }
    }
}

impl fmt::Display for EdgeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn json_str<'a>(v: &'a Value, field: &str) -> Result<&'a str> {
    v.get(field)
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse(format!("missing string field `{field}`")))
}
