//! Non-planar rooted trees with decorated vertices and typed edges, stored in
//! a canonical form so that structural equality is equality of isoclasses.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use super::parse::{parse_lincomb, Cursor};
use super::{json_str, Alphabet};
use crate::error::{Error, Result};
use crate::exactalg::{BasisKey, LinComb};

/// A rooted tree `R(d;[t1:child,...])`. Children are kept sorted by
/// `(edge type, text form of the child)`, which makes the representation
/// independent of sibling order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootedTree {
    dec: String,
    children: Vec<(String, RootedTree)>,
}

impl RootedTree {
    /// The single-vertex tree decorated by `dec`.
    pub fn single(dec: impl Into<String>) -> Self {
        RootedTree { dec: dec.into(), children: Vec::new() }
    }

    /// Builds a tree from children in any order and canonicalizes it.
    pub fn new(dec: impl Into<String>, children: Vec<(String, RootedTree)>) -> Self {
        let mut t = RootedTree { dec: dec.into(), children };
        t.canonicalize();
        t
    }

    fn canonicalize(&mut self) {
        for (_, c) in &mut self.children {
            c.canonicalize();
        }
        self.children.sort_by_cached_key(|(t, c)| (t.clone(), c.to_string()));
    }

    pub fn dec(&self) -> &str {
        &self.dec
    }

    pub fn children(&self) -> &[(String, RootedTree)] {
        &self.children
    }

    pub fn vertex_count(&self) -> usize {
        1 + self.children.iter().map(|(_, c)| c.vertex_count()).sum::<usize>()
    }

    /// Grafts `other` onto the vertex with preorder index `v` through an edge
    /// of type `t`, then re-canonicalizes.
    pub fn graft_at(&self, v: usize, other: &RootedTree, t: &str) -> Result<RootedTree> {
        let vertices = self.vertex_count();
        if v >= vertices {
            return Err(Error::InvalidVertex { handle: v, vertices });
        }
        let mut out = self.clone();
        let mut counter = v;
        out.attach(&mut counter, other, t);
        out.canonicalize();
        Ok(out)
    }

    // Walks in preorder, decrementing `counter`; attaches when it hits zero.
    fn attach(&mut self, counter: &mut usize, other: &RootedTree, t: &str) -> bool {
        if *counter == 0 {
            self.children.push((t.to_owned(), other.clone()));
            return true;
        }
        *counter -= 1;
        self.children.iter_mut().any(|(_, c)| c.attach(counter, other, t))
    }

    pub fn validate(&self, decorations: &Alphabet, types: &Alphabet) -> Result<()> {
        if !decorations.contains(&self.dec) {
            return Err(Error::AlphabetMismatch(format!(
                "decoration `{}` not in {{{decorations}}}",
                self.dec
            )));
        }
        for (t, c) in &self.children {
            if !types.contains(t) {
                return Err(Error::AlphabetMismatch(format!("edge type `{t}` not in {{{types}}}")));
            }
            c.validate(decorations, types)?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let children: Vec<Value> = self
            .children
            .iter()
            .map(|(t, c)| json!({"type": t, "child": c.to_json()}))
            .collect();
        json!({"dec": self.dec, "children": children})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let dec = json_str(v, "dec")?;
        let mut children = Vec::new();
        if let Some(list) = v.get("children") {
            let list = list
                .as_array()
                .ok_or_else(|| Error::Parse("`children` must be an array".into()))?;
            for c in list {
                let t = json_str(c, "type")?.to_owned();
                let child = Self::from_json(
                    c.get("child").ok_or_else(|| Error::Parse("missing field `child`".into()))?,
                )?;
                children.push((t, child));
            }
        }
        Ok(Self::new(dec, children))
    }

    pub(crate) fn read(cur: &mut Cursor<'_>) -> Result<Self> {
        let head = cur.name()?;
        if head != "R" {
            return Err(cur.error("expected `R(`"));
        }
        cur.expect('(')?;
        let dec = cur.name()?;
        let mut children = Vec::new();
        if cur.eat(';') {
            cur.expect('[')?;
            if !cur.eat(']') {
                loop {
                    let t = cur.name()?;
                    cur.expect(':')?;
                    children.push((t, Self::read(cur)?));
                    if cur.eat(']') {
                        break;
                    }
                    cur.expect(',')?;
                }
            }
        }
        cur.expect(')')?;
        Ok(Self::new(dec, children))
    }

    /// Parses a linear combination of rooted trees.
    pub fn parse_lincomb(src: &str) -> Result<LinComb<RootedTree>> {
        parse_lincomb(src, Self::read)
    }
}

impl fmt::Display for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R({};[", self.dec)?;
        for (i, (t, c)) in self.children.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}:{c}")?;
        }
        f.write_str("])")
    }
}

impl fmt::Debug for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for RootedTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        let t = Self::read(&mut cur)?;
        cur.finish()?;
        Ok(t)
    }
}

impl BasisKey for RootedTree {
    fn key_json(&self) -> Value {
        self.to_json()
    }

    fn key_from_json(v: &Value) -> Result<Self> {
        Self::from_json(v)
    }
}

/// All isoclasses of rooted trees with `n ≥ 1` vertices, sorted by text form.
/// Returns an empty list for `n = 0`.
pub fn enumerate_rooted(n: usize, decorations: &Alphabet, types: &Alphabet) -> Vec<RootedTree> {
    if n == 0 {
        return Vec::new();
    }
    let singles: Vec<RootedTree> = decorations.letters().iter().map(RootedTree::single).collect();
    let mut level: BTreeSet<RootedTree> = singles.iter().cloned().collect();
    for _ in 1..n {
        let mut next = BTreeSet::new();
        for tree in &level {
            for v in 0..tree.vertex_count() {
                for s in &singles {
                    for t in types.letters() {
                        next.insert(tree.graft_at(v, s, t).expect("handle in range"));
                    }
                }
            }
        }
        level = next;
    }
    let mut out: Vec<RootedTree> = level.into_iter().collect();
    out.sort_by_cached_key(|t| t.to_string());
    out
}
