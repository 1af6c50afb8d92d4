use std::fmt;

use serde_json::Value;

use super::poly::{rationals_from_json, rationals_to_json};
use crate::error::{Error, Result};
use crate::exactalg::{Algebra, Carrier, Rational};

/// A k×k matrix over ℚ, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    k: usize,
    a: Vec<Rational>,
}

impl Matrix {
    pub fn from_rows(k: usize, entries: Vec<Rational>) -> Result<Self> {
        if k == 0 || entries.len() != k * k {
            return Err(Error::DimensionMismatch { expected: k * k, found: entries.len() });
        }
        Ok(Matrix { k, a: entries })
    }

    pub fn zero(k: usize) -> Self {
        Matrix { k, a: vec![Rational::zero(); k * k] }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Self::zero(k);
        for i in 0..k {
            m.a[i * k + i] = Rational::one();
        }
        m
    }

    /// The matrix unit `E_ij` (zero-based indices).
    pub fn unit(k: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(k);
        m.a[i * k + j] = Rational::one();
        m
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.a[i * self.k + j]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.a
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.k, other.k, "matrix dimensions differ");
        let k = self.k;
        let mut out = Matrix::zero(k);
        for i in 0..k {
            for l in 0..k {
                let a = &self.a[i * k + l];
                if a.is_zero() {
                    continue;
                }
                for j in 0..k {
                    let b = &other.a[l * k + j];
                    if !b.is_zero() {
                        out.a[i * k + j] = &out.a[i * k + j] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn random<R: rand::Rng + ?Sized>(rng: &mut R, k: usize, bound: i64) -> Matrix {
        Matrix { k, a: (0..k * k).map(|_| Rational::random_small(rng, bound)).collect() }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.k {
            if i > 0 {
                f.write_str("; ")?;
            }
            for j in 0..self.k {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Carrier for Matrix {
    fn zero_like(&self) -> Self {
        Matrix::zero(self.k)
    }

    fn plus(&self, other: &Self) -> Self {
        assert_eq!(self.k, other.k, "matrix dimensions differ");
        Matrix { k: self.k, a: self.a.iter().zip(&other.a).map(|(x, y)| x + y).collect() }
    }

    fn scaled(&self, c: &Rational) -> Self {
        Matrix { k: self.k, a: self.a.iter().map(|x| x * c).collect() }
    }

    fn is_zero(&self) -> bool {
        self.a.iter().all(Rational::is_zero)
    }

    /// Row-major entries; the dimension is the square root of the length.
    fn to_json(&self) -> Value {
        rationals_to_json(&self.a)
    }

    fn from_json(v: &Value) -> Result<Self> {
        let a = rationals_from_json(v)?;
        let k = (a.len() as f64).sqrt().round() as usize;
        Matrix::from_rows(k, a)
    }
}

impl Algebra for Matrix {
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn units_multiply() {
        let e12 = Matrix::unit(2, 0, 1);
        let e21 = Matrix::unit(2, 1, 0);
        assert_eq!(e12.mul(&e21), Matrix::unit(2, 0, 0));
        assert!(e12.mul(&e12).is_zero());
        assert_eq!(Matrix::identity(3).mul(&Matrix::unit(3, 2, 1)), Matrix::unit(3, 2, 1));
    }

    #[test]
    fn json_round_trip_and_bad_shape() {
        let m = Matrix::unit(3, 1, 2).scaled(&"-2/3".parse().unwrap());
        assert_eq!(Matrix::from_json(&m.to_json()).unwrap(), m);
        assert!(Matrix::from_json(&serde_json::json!(["1", "2", "3"])).is_err());
    }
}
