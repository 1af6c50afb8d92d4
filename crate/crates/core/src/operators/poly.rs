use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde_json::Value;

use super::{LinearOp, RBFamily};
use crate::error::{Error, Result};
use crate::exactalg::{Algebra, Carrier, Rational};

/// A polynomial in `x` over ℚ, coefficients in increasing degree, with no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly(Vec<Rational>);

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![Rational::one()])
    }

    /// `x^m`
    pub fn x_pow(m: usize) -> Self {
        let mut c = vec![Rational::zero(); m + 1];
        c[m] = Rational::one();
        Poly(c)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// The antiderivative vanishing at 0.
    pub fn integrate(&self) -> Poly {
        if self.0.is_empty() {
            return Poly::zero();
        }
        let mut c = vec![Rational::zero()];
        for (i, a) in self.0.iter().enumerate() {
            c.push(a / &Rational::from_integer(i as i64 + 1));
        }
        Poly(c)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.0.is_empty() || other.0.is_empty() {
            return Poly::zero();
        }
        let mut c = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        Poly::new(c)
    }

    /// A random polynomial of degree at most `max_deg` with small coefficients.
    pub fn random<R: rand::Rng + ?Sized>(rng: &mut R, max_deg: usize, bound: i64) -> Poly {
        let deg = rng.random_range(0..=max_deg);
        Poly::new((0..=deg).map(|_| Rational::random_small(rng, bound)).collect())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = if c.is_negative() { -c } else { c.clone() };
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => {}
                _ => write!(f, "{mag}*")?,
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn add_vecs(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) | (None, Some(x)) => x.clone(),
            (None, None) => unreachable!(),
        })
        .collect()
}

pub(crate) fn rationals_to_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|c| Value::String(c.to_string())).collect())
}

pub(crate) fn rationals_from_json(v: &Value) -> Result<Vec<Rational>> {
    v.as_array()
        .ok_or_else(|| Error::Parse("expected an array of rationals".into()))?
        .iter()
        .map(|c| match c {
            Value::String(s) => s.parse(),
            Value::Number(n) => n.to_string().parse(),
            _ => Err(Error::Parse(format!("`{c}` is not a rational"))),
        })
        .collect()
}

impl Carrier for Poly {
    fn zero_like(&self) -> Self {
        Poly::zero()
    }

    fn plus(&self, other: &Self) -> Self {
        Poly::new(add_vecs(&self.0, &other.0))
    }

    fn scaled(&self, c: &Rational) -> Self {
        Poly::new(self.0.iter().map(|a| a * c).collect())
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Coefficients in increasing degree.
    fn to_json(&self) -> Value {
        rationals_to_json(&self.0)
    }

    fn from_json(v: &Value) -> Result<Self> {
        Ok(Poly::new(rationals_from_json(v)?))
    }
}

impl Algebra for Poly {
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
}

/// `f ↦ ∫_0^x k(t) f(t) dt`
pub fn kernel_integral(f: &Poly, k: &Poly) -> Poly {
    k.mul(f).integrate()
}

/// The weight-zero family of kernel integrals `I_ω(f) = ∫_0^x k_ω(t) f(t) dt`.
pub fn make_kernel_family(kernels: &BTreeMap<String, Poly>) -> Result<RBFamily<Poly>> {
    let entries = kernels
        .iter()
        .map(|(w, k)| {
            let k = k.clone();
            let op: LinearOp<Poly> = Arc::new(move |f: &Poly| kernel_integral(f, &k));
            (w.clone(), op, Rational::zero())
        })
        .collect();
    RBFamily::new("poly", entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::rb_residual;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn power_rule() {
        assert_eq!(kernel_integral(&Poly::one(), &Poly::one()), Poly::x_pow(1));
        for (m, p) in [(0, 0), (2, 1), (3, 4)] {
            let r = kernel_integral(&Poly::x_pow(m), &Poly::x_pow(p));
            let n = m + p + 1;
            assert_eq!(r, Poly::x_pow(n).scaled(&Rational::new(1, n as i64).unwrap()));
        }
        assert!(kernel_integral(&Poly::zero(), &Poly::x_pow(2)).is_zero());
    }

    #[test]
    fn kernel_example_terms() {
        let kernels = [("α".to_string(), Poly::one()), ("β".to_string(), Poly::x_pow(1))].into();
        let fam = make_kernel_family(&kernels).unwrap();
        let f = Poly::x_pow(1);
        let g = Poly::x_pow(2);
        let ia = fam.apply("α", &f);
        let ib = fam.apply("β", &g);
        assert_eq!(ia, Poly::x_pow(2).scaled(&q("1/2")));
        assert_eq!(ib, Poly::x_pow(4).scaled(&q("1/4")));
        assert_eq!(ia.times(&ib), Poly::x_pow(6).scaled(&q("1/8")));
        assert_eq!(fam.apply("α", &f.times(&ib)), Poly::x_pow(6).scaled(&q("1/24")));
        assert_eq!(fam.apply("β", &ia.times(&g)), Poly::x_pow(6).scaled(&q("1/12")));
        assert!(rb_residual(&fam, &f, &g, "α", "β").is_zero());
    }

    #[test]
    fn empty_kernel_map() {
        assert_eq!(make_kernel_family(&BTreeMap::new()).unwrap_err(), Error::EmptyIndexSet);
    }

    #[test]
    fn display_form() {
        let p = Poly::new(vec![q("1"), q("0"), q("-1/2"), q("1")]);
        assert_eq!(p.to_string(), "x^3 - 1/2*x^2 + 1");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn random_polys_respect_degree() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let p = Poly::random(&mut rng, 4, 3);
            assert!(p.degree().is_none_or(|d| d <= 4));
            assert_eq!(Poly::from_json(&p.to_json()).unwrap(), p);
        }
    }
}
