//! Truncated Witt vectors with coordinates in a chosen base ring.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::poly::{EvalRing, IntPolynomial, Integers};
use super::universal::universal_polys;
use super::WittError;
use crate::field::GaloisField;

/// The ring the coordinates live in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WittBase {
    Integers,
    /// `Z/m`, `m >= 2`.
    Zmod(u64),
    Field(Arc<GaloisField>),
}

impl WittBase {
    pub fn field(p: u64, q: u64) -> Result<Self, WittError> {
        if !crate::field::is_prime(p) {
            return Err(WittError::NotPrime(p));
        }
        if crate::field::power_of(q, p).is_none() {
            return Err(WittError::BadFieldSize { prime: p, size: q });
        }
        Ok(WittBase::Field(Arc::new(GaloisField::new(p, q))))
    }

    /// Canonical representative of an integer in this base.
    pub fn reduce(&self, c: &BigInt) -> BigInt {
        match self {
            WittBase::Integers => c.clone(),
            WittBase::Zmod(m) => c.mod_floor(&BigInt::from(*m)),
            WittBase::Field(k) => c.mod_floor(&BigInt::from(k.characteristic())),
        }
    }

    fn check(&self, c: &BigInt) -> Result<(), WittError> {
        let ok = match self {
            WittBase::Integers => true,
            WittBase::Zmod(m) => c >= &BigInt::zero() && c < &BigInt::from(*m),
            WittBase::Field(k) => c >= &BigInt::zero() && c < &BigInt::from(k.order()),
        };
        if ok {
            Ok(())
        } else {
            Err(WittError::CoordinateOutOfRange(c.to_string()))
        }
    }

    fn is_perfect_char_p(&self, p: u64) -> bool {
        match self {
            WittBase::Field(k) => k.characteristic() == p,
            WittBase::Zmod(m) => *m == p,
            WittBase::Integers => false,
        }
    }

    fn p_torsion_free(&self, p: u64) -> bool {
        match self {
            WittBase::Integers => true,
            WittBase::Zmod(m) => m % p != 0,
            WittBase::Field(k) => k.characteristic() != p,
        }
    }
}

impl fmt::Display for WittBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WittBase::Integers => f.write_str("int"),
            WittBase::Zmod(m) => write!(f, "zmod:{}", m),
            WittBase::Field(k) => write!(f, "gf:{}", k.order()),
        }
    }
}

struct ZmodEval(u64);

impl EvalRing for ZmodEval {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.0 as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.0 as u128) as u64
    }
    fn from_int(&self, c: &BigInt) -> u64 {
        c.mod_floor(&BigInt::from(self.0)).to_u64().unwrap()
    }
}

pub(crate) struct FieldEval<'a>(pub &'a GaloisField);

impl EvalRing for FieldEval<'_> {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.0.add(*a, *b)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.0.mul(*a, *b)
    }
    fn from_int(&self, c: &BigInt) -> u64 {
        c.mod_floor(&BigInt::from(self.0.characteristic())).to_u64().unwrap()
    }
}

fn eval_in(base: &WittBase, poly: &IntPolynomial, values: &[BigInt]) -> BigInt {
    match base {
        WittBase::Integers => poly.eval(&Integers, values),
        WittBase::Zmod(m) => {
            let vals: Vec<u64> = values.iter().map(|v| v.to_u64().unwrap()).collect();
            BigInt::from(poly.eval(&ZmodEval(*m), &vals))
        }
        WittBase::Field(k) => {
            let vals: Vec<u64> = values.iter().map(|v| v.to_u64().unwrap()).collect();
            BigInt::from(poly.eval(&FieldEval(k), &vals))
        }
    }
}

/// A p-typical Witt vector of fixed length over a base ring.
#[derive(Clone, PartialEq, Eq)]
pub struct WittVector {
    prime: u64,
    base: WittBase,
    coords: Vec<BigInt>,
}

impl fmt::Debug for WittVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self, self.base)
    }
}

impl fmt::Display for WittVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "W[{}]", parts.join(","))
    }
}

impl WittVector {
    /// Builds a vector; coordinates must already be canonical in the base
    /// (`0 <= c < m` for `Z/m`, field codes `0 <= c < q` for `F_q`).
    pub fn new(prime: u64, base: WittBase, coords: Vec<BigInt>) -> Result<Self, WittError> {
        if !crate::field::is_prime(prime) {
            return Err(WittError::NotPrime(prime));
        }
        if coords.is_empty() {
            return Err(WittError::ZeroLength);
        }
        for c in &coords {
            base.check(c)?;
        }
        if let WittBase::Field(k) = &base {
            if k.characteristic() != prime {
                return Err(WittError::Mismatch("field characteristic differs from the Witt prime"));
            }
        }
        Ok(WittVector { prime, base, coords })
    }

    pub fn from_i64(prime: u64, base: WittBase, coords: &[i64]) -> Result<Self, WittError> {
        Self::new(prime, base, coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(prime: u64, base: WittBase, length: usize) -> Result<Self, WittError> {
        Self::new(prime, base, vec![BigInt::zero(); length])
    }

    pub fn one(prime: u64, base: WittBase, length: usize) -> Result<Self, WittError> {
        Self::teichmuller(prime, base, BigInt::one(), length)
    }

    /// `[x] = (x, 0, ..., 0)`.
    pub fn teichmuller(prime: u64, base: WittBase, x: BigInt, length: usize) -> Result<Self, WittError> {
        if length == 0 {
            return Err(WittError::ZeroLength);
        }
        let mut coords = vec![BigInt::zero(); length];
        coords[0] = x;
        Self::new(prime, base, coords)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn base(&self) -> &WittBase {
        &self.base
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    fn same_shape(&self, other: &Self) -> Result<(), WittError> {
        if self.prime != other.prime {
            return Err(WittError::Mismatch("prime"));
        }
        if self.coords.len() != other.coords.len() {
            return Err(WittError::Mismatch("length"));
        }
        if self.base != other.base {
            return Err(WittError::Mismatch("base ring"));
        }
        Ok(())
    }

    fn binary(&self, other: &Self, family: &[IntPolynomial]) -> WittVector {
        let mut vals = self.coords.clone();
        vals.extend(other.coords.iter().cloned());
        let coords = family.iter().map(|poly| eval_in(&self.base, poly, &vals)).collect();
        WittVector {
            prime: self.prime,
            base: self.base.clone(),
            coords,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, WittError> {
        self.same_shape(other)?;
        let u = universal_polys(self.prime, self.len())?;
        Ok(self.binary(other, &u.sum))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, WittError> {
        self.same_shape(other)?;
        let u = universal_polys(self.prime, self.len())?;
        Ok(self.binary(other, &u.product))
    }

    pub fn neg(&self) -> Result<Self, WittError> {
        let u = universal_polys(self.prime, self.len())?;
        let coords = u.negation.iter().map(|poly| eval_in(&self.base, poly, &self.coords)).collect();
        Ok(WittVector {
            prime: self.prime,
            base: self.base.clone(),
            coords,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, WittError> {
        self.add(&other.neg()?)
    }

    /// `m * self` by repeated addition (double-and-add); `m` may be negative.
    pub fn scale(&self, m: i64) -> Result<Self, WittError> {
        let mut acc = Self::zero(self.prime, self.base.clone(), self.len())?;
        let mut base = if m < 0 { self.neg()? } else { self.clone() };
        let mut k = m.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.add(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.add(&base)?;
            }
        }
        Ok(acc)
    }

    /// Verschiebung: `(a_0, ..., a_{n-1}) -> (0, a_0, ..., a_{n-2})`.
    pub fn verschiebung(&self) -> Self {
        let mut coords = Vec::with_capacity(self.len());
        coords.push(BigInt::zero());
        coords.extend(self.coords[..self.len() - 1].iter().cloned());
        WittVector {
            prime: self.prime,
            base: self.base.clone(),
            coords,
        }
    }

    /// Frobenius.
    ///
    /// Over a perfect base of characteristic `p` this is the coordinatewise
    /// `p`-th power and keeps the length. Over a `p`-torsion-free base it
    /// evaluates the universal family, which loses one coordinate: the result
    /// has length `n - 1` (append a guard coordinate to the input to get `n`).
    pub fn frobenius(&self) -> Result<Self, WittError> {
        if self.base.is_perfect_char_p(self.prime) {
            let coords = match &self.base {
                WittBase::Field(k) => self.coords.iter().map(|c| BigInt::from(k.frobenius(c.to_u64().unwrap()))).collect(),
                // Z/p: x^p = x
                _ => self.coords.clone(),
            };
            return Ok(WittVector {
                prime: self.prime,
                base: self.base.clone(),
                coords,
            });
        }
        if !self.base.p_torsion_free(self.prime) {
            return Err(WittError::ImperfectTorsionBase(self.base.to_string()));
        }
        if self.len() < 2 {
            return Err(WittError::ZeroLength);
        }
        let u = universal_polys(self.prime, self.len())?;
        let coords = u.frobenius.iter().map(|poly| eval_in(&self.base, poly, &self.coords)).collect();
        Ok(WittVector {
            prime: self.prime,
            base: self.base.clone(),
            coords,
        })
    }

    /// Ghost components `w_0..w_{n-1}`, reduced into the base.
    pub fn ghost(&self) -> Vec<BigInt> {
        let p = BigInt::from(self.prime);
        (0..self.len())
            .map(|k| {
                let mut acc = BigInt::zero();
                let mut pi = BigInt::one();
                for i in 0..=k {
                    let e = self.prime.pow((k - i) as u32);
                    let term = match &self.base {
                        WittBase::Field(f) => {
                            let c = self.coords[i].to_u64().unwrap();
                            let pw = f.pow(c, e);
                            let scale = f.from_int((pi.clone() % BigInt::from(f.characteristic())).to_i128().unwrap());
                            BigInt::from(f.mul(pw, scale))
                        }
                        _ => &pi * self.coords[i].pow(e as u32),
                    };
                    acc = match &self.base {
                        WittBase::Field(f) => BigInt::from(f.add(acc.to_u64().unwrap(), term.to_u64().unwrap())),
                        _ => acc + term,
                    };
                    pi *= &p;
                }
                self.base.reduce(&acc)
            })
            .collect()
    }
}
