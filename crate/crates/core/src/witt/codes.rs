//! Arithmetic on `W_n(F_q)` with vectors packed into integer codes.
//!
//! A vector `(a_0, ..., a_{n-1})` with field codes `a_i < q` is stored as
//! `sum a_i q^i`. Sum, product and negation evaluate the universal families
//! with coefficients reduced mod `p`; for small rings every result is
//! tabulated once from those same evaluations.

use std::sync::Arc;

use num_integer::Integer;
use num_traits::ToPrimitive;

use super::poly::{Exponents, IntPolynomial};
use super::universal::universal_polys;
use super::WittError;
use crate::field::GaloisField;

const TABLE_LIMIT: u64 = 256;

struct ModPoly {
    terms: Vec<(Exponents, u64)>,
}

impl ModPoly {
    fn reduce(poly: &IntPolynomial, p: u64) -> Self {
        let pb = num_bigint::BigInt::from(p);
        let terms = poly
            .terms()
            .iter()
            .filter_map(|(e, c)| {
                let r = c.mod_floor(&pb).to_u64().unwrap();
                (r != 0).then(|| (e.clone(), r))
            })
            .collect();
        ModPoly { terms }
    }

    fn eval(&self, k: &GaloisField, vals: &[u64]) -> u64 {
        let mut acc = 0;
        for (e, c) in &self.terms {
            let mut t = *c;
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    t = k.mul(t, k.pow(vals[i], x as u64));
                    if t == 0 {
                        break;
                    }
                }
            }
            acc = k.add(acc, t);
        }
        acc
    }
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
}

pub struct WittCodes {
    prime: u64,
    length: usize,
    field: Arc<GaloisField>,
    size: u64,
    sum: Vec<ModPoly>,
    product: Vec<ModPoly>,
    negation: Vec<ModPoly>,
    tables: Option<Tables>,
}

impl std::fmt::Debug for WittCodes {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "W_{}(F_{})", self.length, self.field.order())
    }
}

impl WittCodes {
    pub fn new(prime: u64, q: u64, length: usize) -> Result<Self, WittError> {
        if !crate::field::is_prime(prime) {
            return Err(WittError::NotPrime(prime));
        }
        if crate::field::power_of(q, prime).is_none() {
            return Err(WittError::BadFieldSize { prime, size: q });
        }
        let size = q
            .checked_pow(length as u32)
            .filter(|s| *s <= (1u64 << 62))
            .ok_or(WittError::TooLarge)?;
        let u = universal_polys(prime, length)?;
        let reduce = |fam: &[IntPolynomial]| fam.iter().map(|p| ModPoly::reduce(p, prime)).collect::<Vec<_>>();
        let mut codes = WittCodes {
            prime,
            length,
            field: Arc::new(GaloisField::new(prime, q)),
            size,
            sum: reduce(&u.sum),
            product: reduce(&u.product),
            negation: reduce(&u.negation),
            tables: None,
        };
        if size <= TABLE_LIMIT {
            let n = size as usize;
            let mut add = vec![0u32; n * n];
            let mut mul = vec![0u32; n * n];
            let mut neg = vec![0u32; n];
            for a in 0..size {
                neg[a as usize] = codes.neg_slow(a) as u32;
                for b in 0..size {
                    add[a as usize * n + b as usize] = codes.add_slow(a, b) as u32;
                    mul[a as usize * n + b as usize] = codes.mul_slow(a, b) as u32;
                }
            }
            codes.tables = Some(Tables { add, mul, neg });
        }
        Ok(codes)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    /// Number of elements, `q^n`.
    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn decode(&self, code: u64) -> Vec<u64> {
        let q = self.field.order();
        let mut c = code;
        (0..self.length)
            .map(|_| {
                let d = c % q;
                c /= q;
                d
            })
            .collect()
    }

    pub fn encode(&self, coords: &[u64]) -> u64 {
        let q = self.field.order();
        coords.iter().rev().fold(0, |acc, &c| acc * q + c)
    }

    fn binary_slow(&self, fam: &[ModPoly], a: u64, b: u64) -> u64 {
        let mut vals = self.decode(a);
        vals.extend(self.decode(b));
        let out: Vec<u64> = fam.iter().map(|p| p.eval(&self.field, &vals)).collect();
        self.encode(&out)
    }

    fn add_slow(&self, a: u64, b: u64) -> u64 {
        self.binary_slow(&self.sum, a, b)
    }

    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        self.binary_slow(&self.product, a, b)
    }

    fn neg_slow(&self, a: u64) -> u64 {
        let vals = self.decode(a);
        let out: Vec<u64> = self.negation.iter().map(|p| p.eval(&self.field, &vals)).collect();
        self.encode(&out)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        match &self.tables {
            Some(t) => t.add[(a * self.size + b) as usize] as u64,
            None => self.add_slow(a, b),
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        match &self.tables {
            Some(t) => t.mul[(a * self.size + b) as usize] as u64,
            None => self.mul_slow(a, b),
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        match &self.tables {
            Some(t) => t.neg[a as usize] as u64,
            None => self.neg_slow(a),
        }
    }

    /// Coordinatewise `p`-th power.
    pub fn frobenius(&self, a: u64) -> u64 {
        let c: Vec<u64> = self.decode(a).into_iter().map(|x| self.field.frobenius(x)).collect();
        self.encode(&c)
    }

    /// Shift with drop.
    pub fn verschiebung(&self, a: u64) -> u64 {
        (a * self.field.order()) % self.size
    }

    pub fn teichmuller(&self, x: u64) -> u64 {
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn w2_f2_is_z4() {
        let w = WittCodes::new(2, 2, 2).unwrap();
        // 1 = (1,0) has additive order 4
        let one = w.encode(&[1, 0]);
        let two = w.add(one, one);
        assert_eq!(w.decode(two), vec![0, 1]);
        assert_eq!(w.add(two, two), 0);
        assert_eq!(w.neg(one), w.encode(&[1, 1]));
    }

    #[test]
    fn tables_agree_with_direct_evaluation() {
        let w = WittCodes::new(3, 9, 2).unwrap();
        for a in (0..w.size()).step_by(7) {
            for b in (0..w.size()).step_by(5) {
                assert_eq!(w.add(a, b), w.add_slow(a, b));
                assert_eq!(w.mul(a, b), w.mul_slow(a, b));
            }
        }
    }

    #[test]
    fn verschiebung_shifts() {
        let w = WittCodes::new(2, 2, 3).unwrap();
        let a = w.encode(&[1, 1, 1]);
        assert_eq!(w.decode(w.verschiebung(a)), vec![0, 1, 1]);
    }
}
