//! The matching pre-Lie algebra of typed rooted trees: `T ∗_t T'` is the
//! sum over all vertices `v` of `T` of the tree obtained by grafting `T'` on
//! `v` through a new edge of type `t`.
//!
//! Grafting the right factor onto the left one gives a right-symmetric
//! product: `(x ∗_α y) ∗_β z - x ∗_α (y ∗_β z)` is unchanged when `(y, α)`
//! and `(z, β)` are swapped. The left-symmetric identity checked by the
//! `matching-prelie` axiom set holds for the opposite product
//! `x ⊳_t y := y ∗_t x` (graft `x` onto the vertices of `y`), which is what
//! [`GraftingPreLie::structure`] registers.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::{bilinear_extend, LinComb, Rational};
use crate::structure::{BinOp, OpName, OpStructure};
use crate::trees::{Alphabet, RootedTree};

pub type PreLieElement = LinComb<RootedTree>;

/// `T ∗_t U` on basis trees. Coincident results accumulate multiplicity.
pub fn graft_sum(t: &RootedTree, u: &RootedTree, ty: &str) -> PreLieElement {
    let mut out = LinComb::zero();
    for v in 0..t.vertex_count() {
        let g = t.graft_at(v, u, ty).expect("vertex handle in range");
        out.add_term(g, Rational::one());
    }
    out
}

/// Rooted trees over fixed alphabets with the grafting products `∗_t`.
#[derive(Clone, Debug)]
pub struct GraftingPreLie {
    decorations: Alphabet,
    types: Alphabet,
}

impl GraftingPreLie {
    pub fn new(decorations: Alphabet, types: Alphabet) -> Self {
        GraftingPreLie { decorations, types }
    }

    pub fn decorations(&self) -> &Alphabet {
        &self.decorations
    }

    pub fn types(&self) -> &Alphabet {
        &self.types
    }

    pub fn validate(&self, x: &PreLieElement) -> Result<()> {
        x.keys().try_for_each(|t| t.validate(&self.decorations, &self.types))
    }

    pub fn star(&self, x: &PreLieElement, y: &PreLieElement, ty: &str) -> Result<PreLieElement> {
        if !self.types.contains(ty) {
            return Err(Error::AlphabetMismatch(format!("edge type `{ty}` not in {{{}}}", self.types)));
        }
        self.validate(x)?;
        self.validate(y)?;
        Ok(star_unchecked(x, y, ty))
    }

    /// The algebra as a structure whose `star` family is the left-symmetric
    /// product `x ⊳_t y = y ∗_t x` for every edge type `t`. Arguments are not
    /// validated.
    pub fn structure(&self) -> OpStructure<PreLieElement> {
        OpStructure::new(format!("rooted({};{})", self.decorations, self.types), self.types.letters())
            .expect("alphabets are nonempty")
            .with_family(OpName::Star, |t| -> BinOp<PreLieElement> {
                let t = t.to_string();
                Arc::new(move |x: &PreLieElement, y: &PreLieElement| star_unchecked(y, x, &t))
            })
    }
}

pub(crate) fn star_unchecked(x: &PreLieElement, y: &PreLieElement, ty: &str) -> PreLieElement {
    bilinear_extend(x, y, |s, t| graft_sum(s, t, ty))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(s: &str) -> PreLieElement {
        RootedTree::parse_lincomb(s).unwrap()
    }

    fn alg() -> GraftingPreLie {
        GraftingPreLie::new(Alphabet::parse_list("a,b,c").unwrap(), Alphabet::parse_list("green,red").unwrap())
    }

    #[test]
    fn ladder_graftings() {
        let ladder = el("R(a;[red:R(b)])");
        let c = el("R(c)");
        assert_eq!(
            alg().star(&ladder, &c, "red").unwrap(),
            el("R(a;[red:R(b),red:R(c)]) + R(a;[red:R(b;[red:R(c)])])")
        );
        assert_eq!(
            alg().star(&ladder, &c, "green").unwrap(),
            el("R(a;[green:R(c),red:R(b)]) + R(a;[red:R(b;[green:R(c)])])")
        );
    }

    #[test]
    fn single_vertices() {
        assert_eq!(alg().star(&el("R(a)"), &el("R(b)"), "red").unwrap(), el("R(a;[red:R(b)])"));
    }

    #[test]
    fn symmetric_positions_merge() {
        // grafting onto either of two identical leaves gives the same tree
        let cherry = el("R(a;[red:R(b),red:R(b)])");
        let out = alg().star(&cherry, &el("R(c)"), "red").unwrap();
        assert_eq!(out.coeff(&"R(a;[red:R(b),red:R(b;[red:R(c)])])".parse().unwrap()).to_string(), "2");
        assert_eq!(out.len(), 2);
    }

    #[test]
    fn rejects_unknown_type() {
        assert!(alg().star(&el("R(a)"), &el("R(b)"), "blue").is_err());
        assert!(alg().star(&el("R(z)"), &el("R(b)"), "red").is_err());
    }

    fn small_trees() -> Vec<PreLieElement> {
        let d = Alphabet::parse_list("a").unwrap();
        let o = Alphabet::parse_list("α,β").unwrap();
        (1..=2).flat_map(|n| crate::trees::enumerate_rooted(n, &d, &o)).map(LinComb::basis).collect()
    }

    #[test]
    fn grafting_is_right_symmetric_and_its_opposite_left_symmetric() {
        let s = |x: &PreLieElement, y: &PreLieElement, t: &str| star_unchecked(x, y, t);
        let pool = small_trees();
        let mut left_fails = false;
        for x in &pool {
            for y in &pool {
                for z in &pool {
                    for (a, b) in [("α", "α"), ("α", "β"), ("β", "α")] {
                        let right = |y: &PreLieElement, a: &str, z: &PreLieElement, b: &str| {
                            s(&s(x, y, a), z, b).sub(&s(x, &s(y, z, b), a))
                        };
                        assert_eq!(right(y, a, z, b), right(z, b, y, a));
                        let left = |x: &PreLieElement, a: &str, y: &PreLieElement, b: &str| {
                            s(x, &s(y, z, b), a).sub(&s(&s(x, y, a), z, b))
                        };
                        left_fails |= left(x, a, y, b) != left(y, b, x, a);
                        let o = |u: &PreLieElement, v: &PreLieElement, t: &str| s(v, u, t);
                        let opp = |x: &PreLieElement, a: &str, y: &PreLieElement, b: &str| {
                            o(x, &o(y, z, b), a).sub(&o(&o(x, y, a), z, b))
                        };
                        assert_eq!(opp(x, a, y, b), opp(y, b, x, a));
                    }
                }
            }
        }
        assert!(left_fails);
    }
}
