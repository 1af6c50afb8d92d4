//! Exact rational scalars and finite linear combinations over an ordered basis.
//!
//! Every free structure in this crate (typed planar binary trees, typed rooted
//! trees) lives inside a [`LinComb`], and every concrete carrier implements
//! [`Carrier`] so that the axiom engine can form residuals with exact equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// An arbitrary-precision rational number, always in lowest terms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `numer / denom`; fails on a zero denominator.
    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::Parse(format!("zero denominator in {numer}/{denom}")));
        }
        Ok(Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom))))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// A random value in `[-bound, bound]` with denominator 1, 2 or 3.
    pub fn random_small<R: rand::Rng + ?Sized>(rng: &mut R, bound: i64) -> Self {
        let d = rng.random_range(1..=3i64);
        let n = rng.random_range(-bound * d..=bound * d);
        Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Parse("reciprocal of zero".into()));
        }
        Ok(Rational(self.0.recip()))
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid rational `{s}`"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Rational(BigRational::new(n, d)))
            }
            None => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(Rational(BigRational::from_integer(n)))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

/// A basis element of a free module: totally ordered, cloneable, and
/// serializable both as text and as JSON.
pub trait BasisKey: Ord + Clone + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn key_json(&self) -> Value;
    fn key_from_json(v: &Value) -> Result<Self>;
}

/// A finite formal linear combination `Σ c_k · k` with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Rational>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The basis vector `1 · key`.
    pub fn basis(key: K) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(key, Rational::one());
        LinComb { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (K, Rational)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    /// Adds `c · key` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, key: K, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    /// Adds `c · other` in place.
    pub fn add_scaled(&mut self, c: &Rational, other: &LinComb<K>) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), c * v);
        }
    }

    pub fn add(&self, other: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out.add_scaled(&Rational::one(), other);
        out
    }

    pub fn sub(&self, other: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out.add_scaled(&-Rational::one(), other);
        out
    }

    pub fn scale(&self, c: &Rational) -> LinComb<K> {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), c * v)).collect(),
        }
    }

    pub fn neg(&self) -> LinComb<K> {
        self.scale(&-Rational::one())
    }

    pub fn coeff(&self, key: &K) -> Rational {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    /// Applies a linear map given on basis elements.
    pub fn map_linear<L: Ord + Clone, F: FnMut(&K) -> LinComb<L>>(&self, mut f: F) -> LinComb<L> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_scaled(c, &f(k));
        }
        out
    }

    /// Relabels basis keys, merging coefficients that land on the same key.
    pub fn map_keys<L: Ord + Clone, F: FnMut(&K) -> L>(&self, mut f: F) -> LinComb<L> {
        LinComb::from_terms(self.terms.iter().map(|(k, c)| (f(k), c.clone())))
    }
}

impl<K: BasisKey> LinComb<K> {
    /// Terms sorted by the text form of their keys.
    pub fn canonical_terms(&self) -> Vec<(&K, &Rational)> {
        let mut v: Vec<(String, &K, &Rational)> =
            self.terms.iter().map(|(k, c)| (k.to_string(), k, c)).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v.into_iter().map(|(_, k, c)| (k, c)).collect()
    }

    /// `{"terms":[{"key":..,"coeff":"p/q"}, ..]}` with terms sorted by key text.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .canonical_terms()
            .into_iter()
            .map(|(k, c)| json!({"key": k.key_json(), "coeff": c.to_string()}))
            .collect();
        json!({ "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("linear combination needs a `terms` array".into()))?;
        let mut out = Self::zero();
        for t in terms {
            let key = K::key_from_json(
                t.get("key").ok_or_else(|| Error::Parse("term without `key`".into()))?,
            )?;
            let coeff: Rational = t
                .get("coeff")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse("term without string `coeff`".into()))?
                .parse()?;
            out.add_term(key, coeff);
        }
        Ok(out)
    }
}

impl<K: BasisKey> fmt::Display for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.canonical_terms().into_iter().enumerate() {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            match (i, sign) {
                (0, "+") => {}
                (0, _) => write!(f, "-")?,
                _ => write!(f, " {sign} ")?,
            }
            if mag.is_one() {
                write!(f, "{k}")?;
            } else {
                write!(f, "{mag}*{k}")?;
            }
        }
        Ok(())
    }
}

impl<K: BasisKey> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The bilinear extension of a map defined on pairs of basis elements:
/// `F(Σ a_S S, Σ b_T T) = Σ a_S b_T f(S, T)`.
pub fn bilinear_extend<K, L, F>(a: &LinComb<K>, b: &LinComb<K>, mut f: F) -> LinComb<L>
where
    K: Ord + Clone,
    L: Ord + Clone,
    F: FnMut(&K, &K) -> LinComb<L>,
{
    let mut out = LinComb::zero();
    for (s, cs) in a.iter() {
        for (t, ct) in b.iter() {
            out.add_scaled(&(cs * ct), &f(s, t));
        }
    }
    out
}

/// A module over ℚ that the axiom engine can compute residuals in.
pub trait Carrier: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    /// The zero element of the same shape as `self`.
    fn zero_like(&self) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn scaled(&self, c: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scaled(&-Rational::one()))
    }
}

/// A carrier with an associative bilinear product.
pub trait Algebra: Carrier {
    fn times(&self, other: &Self) -> Self;

    /// `xy - yx`
    fn commutator(&self, other: &Self) -> Self {
        self.times(other).minus(&other.times(self))
    }
}

impl<K: BasisKey> Carrier for LinComb<K> {
    fn zero_like(&self) -> Self {
        LinComb::zero()
    }

    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }

    fn scaled(&self, c: &Rational) -> Self {
        self.scale(c)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn to_json(&self) -> Value {
        LinComb::to_json(self)
    }

    fn from_json(v: &Value) -> Result<Self> {
        LinComb::from_json(v)
    }
}
