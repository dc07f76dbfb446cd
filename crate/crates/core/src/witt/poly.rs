//! Sparse multivariate polynomials with arbitrary-precision integer coefficients.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

/// Exponent vector, one entry per variable.
pub type Exponents = SmallVec<[u32; 8]>;

/// A polynomial in `nvars` variables over the integers.
///
/// Terms are kept in canonical order (total degree ascending, then exponent
/// vector descending lexicographically) and no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    nvars: usize,
    terms: Vec<(Exponents, BigInt)>,
}

fn term_order(a: &Exponents, b: &Exponents) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| b.cmp(a))
}

impl IntPolynomial {
    pub fn zero(nvars: usize) -> Self {
        IntPolynomial {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.push((SmallVec::from_elem(0, nvars), c));
        }
        p
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index out of range");
        let mut e: Exponents = SmallVec::from_elem(0, nvars);
        e[index] = 1;
        IntPolynomial {
            nvars,
            terms: vec![(e, BigInt::one())],
        }
    }

    fn from_map(nvars: usize, map: HashMap<Exponents, BigInt>) -> Self {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| term_order(&a.0, &b.0));
        IntPolynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[(Exponents, BigInt)] {
        &self.terms
    }

    /// Coefficient of the monomial with the given exponents.
    pub fn coefficient(&self, exps: &[u32]) -> BigInt {
        self.terms
            .iter()
            .find(|(e, _)| e.as_slice() == exps)
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut map: HashMap<Exponents, BigInt> = HashMap::with_capacity(self.terms.len() + other.terms.len());
        for (e, c) in self.terms.iter().chain(other.terms.iter()) {
            *map.entry(e.clone()).or_default() += c;
        }
        Self::from_map(self.nvars, map)
    }

    pub fn neg(&self) -> Self {
        IntPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        IntPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut map: HashMap<Exponents, BigInt> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                *map.entry(e).or_default() += ca * cb;
            }
        }
        Self::from_map(self.nvars, map)
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(self.nvars, BigInt::one());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Divides every coefficient by `k`, or returns `None` if some division
    /// leaves a remainder.
    pub fn div_exact(&self, k: &BigInt) -> Option<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            terms.push((e.clone(), q));
        }
        Some(IntPolynomial {
            nvars: self.nvars,
            terms,
        })
    }

    /// Evaluates the polynomial, mapping integer coefficients and variable
    /// values into a target ring through `ops`.
    pub fn eval<E: EvalRing>(&self, ops: &E, values: &[E::Elem]) -> E::Elem {
        assert_eq!(values.len(), self.nvars);
        let mut max_exp = vec![0u32; self.nvars];
        for (e, _) in &self.terms {
            for (m, &x) in max_exp.iter_mut().zip(e.iter()) {
                *m = (*m).max(x);
            }
        }
        // powers[i][k] = values[i]^k
        let powers: Vec<Vec<E::Elem>> = values
            .iter()
            .zip(max_exp.iter())
            .map(|(v, &m)| {
                let mut row = Vec::with_capacity(m as usize + 1);
                row.push(ops.one());
                for k in 1..=m as usize {
                    let next = ops.mul(&row[k - 1], v);
                    row.push(next);
                }
                row
            })
            .collect();
        let mut acc = ops.zero();
        for (e, c) in &self.terms {
            let mut t = ops.from_int(c);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = ops.mul(&t, &powers[i][k as usize]);
                }
            }
            acc = ops.add(&acc, &t);
        }
        acc
    }
}

/// The arithmetic needed to evaluate an [`IntPolynomial`].
pub trait EvalRing {
    type Elem: Clone;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_int(&self, c: &BigInt) -> Self::Elem;
}

/// The integers themselves.
pub struct Integers;

impl EvalRing for Integers {
    type Elem = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn from_int(&self, c: &BigInt) -> BigInt {
        c.clone()
    }
}

/// Variable names: `x0..x{n-1}` then `y0..y{n-1}` when the polynomial has
/// `2n` variables; a single block is printed as `x0..`.
pub struct VarNames {
    pub block: usize,
}

impl IntPolynomial {
    pub fn display_with(&self, names: &VarNames) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || e.iter().all(|&k| k == 0) {
                factors.push(mag.to_string());
            }
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let name = if names.block == 0 || i < names.block {
                    format!("x{}", i)
                } else {
                    format!("y{}", i - names.block)
                };
                if k == 1 {
                    factors.push(name);
                } else {
                    factors.push(format!("{}^{}", name, k));
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&VarNames { block: 0 }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> IntPolynomial {
        IntPolynomial::var(2, i)
    }

    #[test]
    fn binomial_square() {
        let s = x(0).add(&x(1)).pow(2);
        assert_eq!(s.num_terms(), 3);
        assert_eq!(s.coefficient(&[1, 1]), BigInt::from(2));
        assert_eq!(s.display_with(&VarNames { block: 1 }), "x0^2 + 2*x0*y0 + y0^2");
    }

    #[test]
    fn cancellation_prunes_terms() {
        let p = x(0).sub(&x(0));
        assert!(p.is_zero());
    }

    #[test]
    fn inexact_division_is_detected() {
        let p = x(0).add(&x(1).scale(&BigInt::from(2)));
        assert!(p.div_exact(&BigInt::from(2)).is_none());
        let q = p.scale(&BigInt::from(3)).div_exact(&BigInt::from(3)).unwrap();
        assert_eq!(q, p);
    }

    #[test]
    fn evaluation_over_integers() {
        let p = x(0).pow(3).sub(&x(1).scale(&BigInt::from(5)));
        let v = p.eval(&Integers, &[BigInt::from(2), BigInt::from(-1)]);
        assert_eq!(v, BigInt::from(13));
    }
}
