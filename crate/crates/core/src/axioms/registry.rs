//! The identity systems. Every evaluator returns `LHS - RHS`.

use super::{AxiomSet, Identity, Indexing};
use crate::error::{Error, Result};
use crate::exactalg::{Algebra, Carrier, Rational};
use crate::operators::{rb_residual, RBFamily};
use crate::structure::{LieFamily, OpName, OpStructure};

use OpName::*;

/// Names accepted by [`op_axiom_set`].
pub const OP_AXIOM_SETS: [&str; 10] = [
    "matching-dendriform",
    "matching-tridendriform",
    "matching-associative",
    "totally-compatible",
    "compatible-associative",
    "matching-prelie",
    "matching-lie",
    "compatible-lie",
    "matching-postlie",
    "matching-assoc-postlie",
];

/// Looks up an axiom set on operation structures by name.
pub fn op_axiom_set<C: Carrier>(name: &str) -> Result<AxiomSet<OpStructure<C>>> {
    Ok(match name {
        "matching-dendriform" => matching_dendriform(),
        "matching-tridendriform" => matching_tridendriform(),
        "matching-associative" => matching_associative(),
        "totally-compatible" => totally_compatible(),
        "compatible-associative" => compatible_associative(),
        "matching-prelie" => matching_prelie(),
        "matching-lie" => matching_lie(),
        "compatible-lie" => compatible_lie(),
        "matching-postlie" => matching_postlie(),
        "matching-assoc-postlie" => matching_assoc_postlie(),
        _ => return Err(Error::Unknown(format!("axiom set `{name}`"))),
    })
}

fn pairs<C: Carrier>(id: &'static str, eval: fn(&OpStructure<C>, &[C], &str, &str) -> C) -> Identity<OpStructure<C>> {
    Identity { id, arity: 3, indexing: Indexing::Pairs, eval }
}

// Shorthands for `x ⊙_w y`.
fn p<C: Carrier>(s: &OpStructure<C>, w: &str, x: &C, y: &C) -> C {
    s.apply(Prec, w, x, y)
}
fn q<C: Carrier>(s: &OpStructure<C>, w: &str, x: &C, y: &C) -> C {
    s.apply(Succ, w, x, y)
}
fn d<C: Carrier>(s: &OpStructure<C>, w: &str, x: &C, y: &C) -> C {
    s.apply(Dot, w, x, y)
}
fn b<C: Carrier>(s: &OpStructure<C>, w: &str, x: &C, y: &C) -> C {
    s.apply(Bullet, w, x, y)
}
fn st<C: Carrier>(s: &OpStructure<C>, w: &str, x: &C, y: &C) -> C {
    s.apply(Star, w, x, y)
}
fn br<C: Carrier>(s: &OpStructure<C>, w: &str, x: &C, y: &C) -> C {
    s.apply(Bracket, w, x, y)
}
fn ci<C: Carrier>(s: &OpStructure<C>, w: &str, x: &C, y: &C) -> C {
    s.apply(Circ, w, x, y)
}
fn ast<C: Carrier>(s: &OpStructure<C>, w: &str, x: &C, y: &C) -> C {
    s.apply(AssocStar, w, x, y)
}

/// `(x≺_α y)≺_β z = x≺_α(y≺_β z) + x≺_β(y≻_α z)`
fn ddf1<C: Carrier>(s: &OpStructure<C>, v: &[C], a: &str, be: &str) -> C {
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    p(s, be, &p(s, a, x, y), z).minus(&p(s, a, x, &p(s, be, y, z))).minus(&p(s, be, x, &q(s, a, y, z)))
}

/// `(x≻_α y)≺_β z = x≻_α(y≺_β z)`
fn ddf2<C: Carrier>(s: &OpStructure<C>, v: &[C], a: &str, be: &str) -> C {
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    p(s, be, &q(s, a, x, y), z).minus(&q(s, a, x, &p(s, be, y, z)))
}

/// `(x≺_β y)≻_α z + (x≻_α y)≻_β z = x≻_α(y≻_β z)`
fn ddf3<C: Carrier>(s: &OpStructure<C>, v: &[C], a: &str, be: &str) -> C {
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    q(s, a, &p(s, be, x, y), z).plus(&q(s, be, &q(s, a, x, y), z)).minus(&q(s, a, x, &q(s, be, y, z)))
}

pub fn matching_dendriform<C: Carrier>() -> AxiomSet<OpStructure<C>> {
    AxiomSet {
        name: "matching-dendriform",
        required: vec![Prec, Succ],
        identities: vec![pairs("ddf1", ddf1), pairs("ddf2", ddf2), pairs("ddf3", ddf3)],
        implied: vec![],
    }
}

/// `(x≺_α y)≺_β z = x≺_α(y≺_β z) + x≺_β(y≻_α z) + x≺_α(y·_β z)`
fn tdf1<C: Carrier>(s: &OpStructure<C>, v: &[C], a: &str, be: &str) -> C {
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    ddf1(s, v, a, be).minus(&p(s, a, x, &d(s, be, y, z)))
}

/// `x≻_α(y≻_β z) = (x≺_β y)≻_α z + (x≻_α y)≻_β z + (x·_β y)≻_α z`
fn tdf3<C: Carrier>(s: &OpStructure<C>, v: &[C], a: &str, be: &str) -> C {
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    ddf3(s, v, a, be).plus(&q(s, a, &d(s, be, x, y), z)).scaled(&-Rational::one())
}

/// `(x≻_α y)·_β z = x≻_α(y·_β z)`
fn tdf4<C: Carrier>(s: &OpStructure<C>, v: &[C], a: &str, be: &str) -> C {
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    d(s, be, &q(s, a, x, y), z).minus(&q(s, a, x, &d(s, be, y, z)))
}

/// `(x≺_α y)·_β z = x·_β(y≻_α z)`
fn tdf5<C: Carrier>(s: &OpStructure<C>, v: &[C], a: &str, be: &str) -> C {
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    d(s, be, &p(s, a, x, y), z).minus(&d(s, be, x, &q(s, a, y, z)))
}

/// `(x·_α y)≺_β z = x·_α(y≺_β z)`
fn tdf6<C: Carrier>(s: &OpStructure<C>, v: &[C], a: &str, be: &str) -> C {
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    p(s, be, &d(s, a, x, y), z).minus(&d(s, a, x, &p(s, be, y, z)))
}

/// `(x·_α y)·_β z = x·_α(y·_β z)`
fn tdf7<C: Carrier>(s: &OpStructure<C>, v: &[C], a: &str, be: &str) -> C {
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    d(s, be, &d(s, a, x, y), z).minus(&d(s, a, x, &d(s, be, y, z)))
}

pub fn matching_tridendriform<C: Carrier>() -> AxiomSet<OpStructure<C>> {
    AxiomSet {
        name: "matching-tridendriform",
        required: vec![Prec, Succ, Dot],
        identities: vec![
            pairs("tdf1", tdf1),
            pairs("tdf2", ddf2),
            pairs("tdf3", tdf3),
            pairs("tdf4", tdf4),
            pairs("tdf5", tdf5),
            pairs("tdf6", tdf6),
            pairs("tdf7", tdf7),
        ],
        implied: vec![],
    }
}

/// `(x•_α y)•_β z = x•_α(y•_β z)`
fn massoc<C: Carrier>(s: &OpStructure<C>, v: &[C], a: &str, be: &str) -> C {
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    b(s, be, &b(s, a, x, y), z).minus(&b(s, a, x, &b(s, be, y, z)))
}

/// `(x•_α y)•_β z = x•_β(y•_α z)`
fn tcompat<C: Carrier>(s: &OpStructure<C>, v: &[C], a: &str, be: &str) -> C {
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    b(s, be, &b(s, a, x, y), z).minus(&b(s, be, x, &b(s, a, y, z)))
}

/// `(x•_α y)•_β z + (x•_β y)•_α z = x•_α(y•_β z) + x•_β(y•_α z)`
fn wm1<C: Carrier>(s: &OpStructure<C>, v: &[C], a: &str, be: &str) -> C {
    massoc(s, v, a, be).plus(&massoc(s, v, be, a))
}

fn assoc_each<C: Carrier>() -> Identity<OpStructure<C>> {
    Identity { id: "assoc", arity: 3, indexing: Indexing::Diagonal, eval: massoc }
}

pub fn matching_associative<C: Carrier>() -> AxiomSet<OpStructure<C>> {
    AxiomSet {
        name: "matching-associative",
        required: vec![Bullet],
        identities: vec![pairs("massoc", massoc)],
        implied: vec![pairs("wm1", wm1)],
    }
}

pub fn totally_compatible<C: Carrier>() -> AxiomSet<OpStructure<C>> {
    AxiomSet {
        name: "totally-compatible",
        required: vec![Bullet],
        identities: vec![pairs("massoc", massoc), pairs("tcompat", tcompat)],
        implied: vec![assoc_each()],
    }
}

pub fn compatible_associative<C: Carrier>() -> AxiomSet<OpStructure<C>> {
    AxiomSet {
        name: "compatible-associative",
        required: vec![Bullet],
        identities: vec![pairs("wm1", wm1)],
        implied: vec![assoc_each()],
    }
}

/// `x∗_α(y∗_β z) - (x∗_α y)∗_β z = y∗_β(x∗_α z) - (y∗_β x)∗_α z`
fn mpreid<C: Carrier>(s: &OpStructure<C>, v: &[C], a: &str, be: &str) -> C {
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    st(s, a, x, &st(s, be, y, z))
        .minus(&st(s, be, &st(s, a, x, y), z))
        .minus(&st(s, be, y, &st(s, a, x, z)))
        .plus(&st(s, a, &st(s, be, y, x), z))
}

pub fn matching_prelie<C: Carrier>() -> AxiomSet<OpStructure<C>> {
    AxiomSet {
        name: "matching-prelie",
        required: vec![Star],
        identities: vec![pairs("mpreid", mpreid)],
        implied: vec![],
    }
}

/// `[x,x]_ω = 0`
fn alternativity<C: Carrier>(s: &OpStructure<C>, v: &[C], a: &str, _: &str) -> C {
    br(s, a, &v[0], &v[0])
}

fn alt<C: Carrier>() -> Identity<OpStructure<C>> {
    Identity { id: "alt", arity: 1, indexing: Indexing::Diagonal, eval: alternativity }
}

/// `[x,[y,z]_β]_α + [y,[z,x]_α]_β + [z,[x,y]_α]_β = 0`, index placement as
/// stated in the definition of a matching Lie algebra.
fn mjacobi<C: Carrier>(s: &OpStructure<C>, v: &[C], a: &str, be: &str) -> C {
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    br(s, a, x, &br(s, be, y, z)).plus(&br(s, be, y, &br(s, a, z, x))).plus(&br(s, be, z, &br(s, a, x, y)))
}

/// `[x,[y,z]_β]_α + [y,[z,x]_β]_α + [z,[x,y]_β]_α`
fn jacobi_sum<C: Carrier>(s: &OpStructure<C>, v: &[C], a: &str, be: &str) -> C {
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    br(s, a, x, &br(s, be, y, z)).plus(&br(s, a, y, &br(s, be, z, x))).plus(&br(s, a, z, &br(s, be, x, y)))
}

/// The coupling Jacobi identity: the sum above plus the same with α, β swapped.
fn copid<C: Carrier>(s: &OpStructure<C>, v: &[C], a: &str, be: &str) -> C {
    jacobi_sum(s, v, be, a).plus(&jacobi_sum(s, v, a, be))
}

fn jacobi_each<C: Carrier>() -> Identity<OpStructure<C>> {
    Identity { id: "jacobi", arity: 3, indexing: Indexing::Diagonal, eval: jacobi_sum }
}

pub fn matching_lie<C: Carrier>() -> AxiomSet<OpStructure<C>> {
    AxiomSet {
        name: "matching-lie",
        required: vec![Bracket],
        identities: vec![alt(), pairs("mjacobi", mjacobi)],
        implied: vec![pairs("copid", copid)],
    }
}

pub fn compatible_lie<C: Carrier>() -> AxiomSet<OpStructure<C>> {
    AxiomSet {
        name: "compatible-lie",
        required: vec![Bracket],
        identities: vec![alt(), pairs("copid", copid)],
        implied: vec![jacobi_each()],
    }
}

// x∘_α(y∘_β z) - (x∘_α y)∘_β z - y∘_β(x∘_α z) + (y∘_β x)∘_α z
fn circ_assoc<C: Carrier>(s: &OpStructure<C>, v: &[C], a: &str, be: &str) -> C {
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    ci(s, a, x, &ci(s, be, y, z))
        .minus(&ci(s, be, &ci(s, a, x, y), z))
        .minus(&ci(s, be, y, &ci(s, a, x, z)))
        .plus(&ci(s, a, &ci(s, be, y, x), z))
}

/// `x∘_α(y∘_β z) - (x∘_α y)∘_β z - y∘_β(x∘_α z) + (y∘_β x)∘_α z = [x,y]_β ∘_α z`
///
/// The definition leaves the bracket on the right unindexed; it is read
/// here with index β.
fn mplie1<C: Carrier>(s: &OpStructure<C>, v: &[C], a: &str, be: &str) -> C {
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    circ_assoc(s, v, a, be).minus(&ci(s, a, &br(s, be, x, y), z))
}

/// `x∘_α[y,z]_β = [x∘_α y, z]_β + [y, x∘_α z]_β`
fn mplie2<C: Carrier>(s: &OpStructure<C>, v: &[C], a: &str, be: &str) -> C {
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    ci(s, a, x, &br(s, be, y, z)).minus(&br(s, be, &ci(s, a, x, y), z)).minus(&br(s, be, y, &ci(s, a, x, z)))
}

pub fn matching_postlie<C: Carrier>() -> AxiomSet<OpStructure<C>> {
    AxiomSet {
        name: "matching-postlie",
        required: vec![Bracket, Circ],
        identities: vec![alt(), pairs("mjacobi", mjacobi), pairs("mplie1", mplie1), pairs("mplie2", mplie2)],
        implied: vec![],
    }
}

/// `(x⋆_α y)⋆_β z = x⋆_α(y⋆_β z)`
fn star_assoc<C: Carrier>(s: &OpStructure<C>, v: &[C], a: &str, be: &str) -> C {
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    ast(s, be, &ast(s, a, x, y), z).minus(&ast(s, a, x, &ast(s, be, y, z)))
}

/// `x∘_α(y∘_β z) - (x∘_α y)∘_β z - y∘_β(x∘_α z) + (y∘_β x)∘_α z
///  = (x⋆_β y)∘_α z - (y⋆_α x)∘_β z`
fn mplie3<C: Carrier>(s: &OpStructure<C>, v: &[C], a: &str, be: &str) -> C {
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    circ_assoc(s, v, a, be).minus(&ci(s, a, &ast(s, be, x, y), z)).plus(&ci(s, be, &ast(s, a, y, x), z))
}

/// `x∘_α(y⋆_β z) - x∘_α(z⋆_β y)
///  = (x∘_α y)⋆_β z - z⋆_β(x∘_α y) + y⋆_β(x∘_α z) - (x∘_α z)⋆_β y`
fn mplie4<C: Carrier>(s: &OpStructure<C>, v: &[C], a: &str, be: &str) -> C {
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    let xy = ci(s, a, x, y);
    let xz = ci(s, a, x, z);
    ci(s, a, x, &ast(s, be, y, z))
        .minus(&ci(s, a, x, &ast(s, be, z, y)))
        .minus(&ast(s, be, &xy, z))
        .plus(&ast(s, be, z, &xy))
        .minus(&ast(s, be, y, &xz))
        .plus(&ast(s, be, &xz, y))
}

pub fn matching_assoc_postlie<C: Carrier>() -> AxiomSet<OpStructure<C>> {
    AxiomSet {
        name: "matching-assoc-postlie",
        required: vec![AssocStar, Circ],
        identities: vec![pairs("assocstar", star_assoc), pairs("mplie3", mplie3), pairs("mplie4", mplie4)],
        implied: vec![],
    }
}

fn rbid<A: Algebra>(fam: &RBFamily<A>, v: &[A], a: &str, be: &str) -> A {
    rb_residual(fam, &v[0], &v[1], a, be)
}

/// `P_α(x)P_β(y) = P_α(xP_β(y)) + P_β(P_α(x)y) + λ_β P_α(xy)`
pub fn matching_rb<A: Algebra>() -> AxiomSet<RBFamily<A>> {
    AxiomSet {
        name: "matching-rb",
        required: vec![],
        identities: vec![Identity { id: "rbid", arity: 2, indexing: Indexing::Pairs, eval: rbid }],
        implied: vec![],
    }
}

/// `[P_α x, P_β y] = P_α([x, P_β y]) + P_β([P_α x, y]) + λ_β P_α([x, y])`
fn mlieid<C: Carrier>(fam: &LieFamily<C>, v: &[C], a: &str, be: &str) -> C {
    let (x, y) = (&v[0], &v[1]);
    let px = fam.apply(a, x);
    let py = fam.apply(be, y);
    fam.bracket(&px, &py)
        .minus(&fam.apply(a, &fam.bracket(x, &py)))
        .minus(&fam.apply(be, &fam.bracket(&px, y)))
        .minus(&fam.apply(a, &fam.bracket(x, y)).scaled(fam.weight(be)))
}

pub fn matching_rb_lie<C: Carrier>() -> AxiomSet<LieFamily<C>> {
    AxiomSet {
        name: "matching-rb-lie",
        required: vec![],
        identities: vec![Identity { id: "mlieid", arity: 2, indexing: Indexing::Pairs, eval: mlieid }],
        implied: vec![],
    }
}
