//! The free matching dendriform algebra on D-decorated, Ω-typed planar
//! binary trees.
//!
//! For `T = T^l ∨_{a,α,β} T^r` and `U = U^l ∨_{b,γ,δ} U^r`:
//!
//! ```text
//! T ≺_ω U = T^l ∨_{a,α,β} (T^r ≺_ω U) + T^l ∨_{a,α,ω} (T^r ≻_β U)
//! T ≻_ω U = (T ≺_γ U^l) ∨_{b,ω,δ} U^r + (T ≻_ω U^l) ∨_{b,γ,δ} U^r
//! ```
//!
//! with the unit rules `| ≻_ω T = T ≺_ω | = T` and `| ≺_ω T = T ≻_ω | = 0`.
//! Inside the recursion the index may be the empty type `e` (it is whenever
//! the neighbouring subtree is a leaf); the unit rules are applied for `e`
//! as well. The recursion never multiplies a leaf by a leaf.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::{bilinear_extend, LinComb, Rational};
use crate::structure::{BinOp, OpName, OpStructure};
use crate::trees::{Alphabet, EdgeType, PlanarBinaryTree};

pub type DDElement = LinComb<PlanarBinaryTree>;

/// The two dendriform half-products.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Prec,
    Succ,
}

/// `T ≺_ω U` on basis trees; either argument may be the leaf.
pub fn prec_trees(t: &PlanarBinaryTree, u: &PlanarBinaryTree, w: &EdgeType) -> DDElement {
    match (t.as_node(), u.as_node()) {
        (None, None) => panic!("leaf ≺ leaf is not defined"),
        (Some(_), None) => LinComb::basis(t.clone()),
        (None, Some(_)) => LinComb::zero(),
        (Some(tn), Some(_)) => {
            let mut out = graft_right(&tn.left, &tn.dec, &tn.ltype, &tn.rtype, &prec_trees(&tn.right, u, w));
            out.add_scaled(
                &Rational::one(),
                &graft_right(&tn.left, &tn.dec, &tn.ltype, w, &succ_trees(&tn.right, u, &tn.rtype)),
            );
            out
        }
    }
}

/// `T ≻_ω U` on basis trees; either argument may be the leaf.
pub fn succ_trees(t: &PlanarBinaryTree, u: &PlanarBinaryTree, w: &EdgeType) -> DDElement {
    match (t.as_node(), u.as_node()) {
        (None, None) => panic!("leaf ≻ leaf is not defined"),
        (None, Some(_)) => LinComb::basis(u.clone()),
        (Some(_), None) => LinComb::zero(),
        (Some(_), Some(un)) => {
            let mut out = graft_left(&prec_trees(t, &un.left, &un.ltype), &un.dec, w, &un.rtype, &un.right);
            out.add_scaled(
                &Rational::one(),
                &graft_left(&succ_trees(t, &un.left, w), &un.dec, &un.ltype, &un.rtype, &un.right),
            );
            out
        }
    }
}

// l ∨_{d,t1,t2} (each tree of `rs`)
fn graft_right(l: &PlanarBinaryTree, d: &str, t1: &EdgeType, t2: &EdgeType, rs: &DDElement) -> DDElement {
    rs.map_keys(|r| {
        PlanarBinaryTree::graft(l.clone(), r.clone(), d, t1.clone(), t2.clone())
            .expect("dendriform recursion keeps edge types consistent")
    })
}

// (each tree of `ls`) ∨_{d,t1,t2} r
fn graft_left(ls: &DDElement, d: &str, t1: &EdgeType, t2: &EdgeType, r: &PlanarBinaryTree) -> DDElement {
    ls.map_keys(|l| {
        PlanarBinaryTree::graft(l.clone(), r.clone(), d, t1.clone(), t2.clone())
            .expect("dendriform recursion keeps edge types consistent")
    })
}

/// The free matching dendriform algebra `DD_{D,Ω}`.
#[derive(Clone, Debug)]
pub struct FreeDendriform {
    decorations: Alphabet,
    types: Alphabet,
}

impl FreeDendriform {
    pub fn new(decorations: Alphabet, types: Alphabet) -> Self {
        FreeDendriform { decorations, types }
    }

    pub fn decorations(&self) -> &Alphabet {
        &self.decorations
    }

    pub fn types(&self) -> &Alphabet {
        &self.types
    }

    /// Every key must be a valid non-leaf tree over this algebra's alphabets.
    pub fn validate(&self, x: &DDElement) -> Result<()> {
        for t in x.keys() {
            if t.is_leaf() {
                return Err(Error::AlphabetMismatch("the leaf `|` is not an element of the algebra".into()));
            }
            t.validate(&self.decorations, &self.types)?;
        }
        Ok(())
    }

    fn index(&self, w: &str) -> Result<EdgeType> {
        if self.types.contains(w) {
            Ok(EdgeType::typed(w))
        } else {
            Err(Error::AlphabetMismatch(format!("index `{w}` not in {{{}}}", self.types)))
        }
    }

    pub fn product(&self, side: Side, x: &DDElement, y: &DDElement, w: &str) -> Result<DDElement> {
        let w = self.index(w)?;
        self.validate(x)?;
        self.validate(y)?;
        Ok(self.product_unchecked(side, x, y, &w))
    }

    pub(crate) fn product_unchecked(&self, side: Side, x: &DDElement, y: &DDElement, w: &EdgeType) -> DDElement {
        bilinear_extend(x, y, |s, t| match side {
            Side::Prec => prec_trees(s, t, w),
            Side::Succ => succ_trees(s, t, w),
        })
    }

    pub fn prec(&self, x: &DDElement, y: &DDElement, w: &str) -> Result<DDElement> {
        self.product(Side::Prec, x, y, w)
    }

    pub fn succ(&self, x: &DDElement, y: &DDElement, w: &str) -> Result<DDElement> {
        self.product(Side::Succ, x, y, w)
    }

    /// `x •_ω y = x ≻_ω y + x ≺_ω y`
    pub fn bullet(&self, x: &DDElement, y: &DDElement, w: &str) -> Result<DDElement> {
        Ok(self.succ(x, y, w)?.add(&self.prec(x, y, w)?))
    }

    /// The algebra as a structure with `≺_ω` and `≻_ω` for every `ω ∈ Ω`.
    /// Arguments are not validated.
    pub fn structure(&self) -> OpStructure<DDElement> {
        let s = OpStructure::new(format!("free-dd({};{})", self.decorations, self.types), self.types.letters())
            .expect("alphabets are nonempty");
        let side_op = |side: Side| {
            move |w: &str| -> BinOp<DDElement> {
                let alg = self.clone();
                let w = EdgeType::typed(w);
                Arc::new(move |x: &DDElement, y: &DDElement| alg.product_unchecked(side, x, y, &w))
            }
        };
        s.with_family(OpName::Prec, side_op(Side::Prec)).with_family(OpName::Succ, side_op(Side::Succ))
    }
}
