//! Universal p-typical Witt polynomials, solved from the ghost identities.
//!
//! With `w_k(a) = sum_{i<=k} p^i a_i^{p^(k-i)}`, the families are the unique
//! integer polynomials with
//!
//! * `w_k(S) = w_k(x) + w_k(y)`
//! * `w_k(P) = w_k(x) * w_k(y)`
//! * `w_k(I) = -w_k(x)`
//! * `w_k(F) = w_{k+1}(x)`
//!
//! Each is found coordinate by coordinate; the division by `p^k` at step `k`
//! must be exact, and a remainder is reported as [`WittError::InexactDivision`].

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::One;

use super::poly::{IntPolynomial, VarNames};
use super::WittError;

/// The S, P, I and F families for one `(p, n)`.
///
/// `sum` and `product` are polynomials in `x_0..x_{n-1}, y_0..y_{n-1}`
/// (variables `0..n` then `n..2n`); `negation` and `frobenius` are in
/// `x_0..x_{n-1}` only. `frobenius` has `n - 1` members.
#[derive(Debug)]
pub struct UniversalPolys {
    pub prime: u64,
    pub length: usize,
    pub sum: Vec<IntPolynomial>,
    pub product: Vec<IntPolynomial>,
    pub negation: Vec<IntPolynomial>,
    pub frobenius: Vec<IntPolynomial>,
}

/// `w_k` applied to a sequence of polynomials.
fn ghost_of(p: &BigInt, prime: u64, seq: &[IntPolynomial], k: usize, nvars: usize) -> IntPolynomial {
    let mut acc = IntPolynomial::zero(nvars);
    let mut pi = BigInt::one();
    for (i, z) in seq.iter().enumerate().take(k + 1) {
        let e = prime.pow((k - i) as u32);
        acc = acc.add(&z.pow(e).scale(&pi));
        pi *= p;
    }
    acc
}

/// Solves `w_k(Z) = targets[k]` for `Z_0..Z_{m-1}`.
fn solve(prime: u64, targets: &[IntPolynomial]) -> Result<Vec<IntPolynomial>, WittError> {
    let p = BigInt::from(prime);
    let mut out: Vec<IntPolynomial> = Vec::with_capacity(targets.len());
    let mut pk = BigInt::one();
    for (k, target) in targets.iter().enumerate() {
        let mut rest = target.clone();
        let mut pi = BigInt::one();
        for (i, z) in out.iter().enumerate() {
            let e = prime.pow((k - i) as u32);
            rest = rest.sub(&z.pow(e).scale(&pi));
            pi *= &p;
        }
        let z = rest.div_exact(&pk).ok_or(WittError::InexactDivision { prime, coordinate: k })?;
        out.push(z);
        pk *= &p;
    }
    Ok(out)
}

impl UniversalPolys {
    pub fn compute(prime: u64, length: usize) -> Result<Self, WittError> {
        if length == 0 {
            return Err(WittError::ZeroLength);
        }
        let p = BigInt::from(prime);
        let n = length;
        let xs: Vec<IntPolynomial> = (0..n).map(|i| IntPolynomial::var(2 * n, i)).collect();
        let ys: Vec<IntPolynomial> = (0..n).map(|i| IntPolynomial::var(2 * n, n + i)).collect();
        let wx: Vec<IntPolynomial> = (0..n).map(|k| ghost_of(&p, prime, &xs, k, 2 * n)).collect();
        let wy: Vec<IntPolynomial> = (0..n).map(|k| ghost_of(&p, prime, &ys, k, 2 * n)).collect();

        let sum_targets: Vec<_> = wx.iter().zip(&wy).map(|(a, b)| a.add(b)).collect();
        let prod_targets: Vec<_> = wx.iter().zip(&wy).map(|(a, b)| a.mul(b)).collect();
        let sum = solve(prime, &sum_targets)?;
        let product = solve(prime, &prod_targets)?;

        let xs1: Vec<IntPolynomial> = (0..n).map(|i| IntPolynomial::var(n, i)).collect();
        let wx1: Vec<IntPolynomial> = (0..n).map(|k| ghost_of(&p, prime, &xs1, k, n)).collect();
        let neg_targets: Vec<_> = wx1.iter().map(|w| w.neg()).collect();
        let negation = solve(prime, &neg_targets)?;
        let frob_targets: Vec<_> = wx1.iter().skip(1).cloned().collect();
        let frobenius = solve(prime, &frob_targets)?;

        Ok(UniversalPolys {
            prime,
            length,
            sum,
            product,
            negation,
            frobenius,
        })
    }

    /// Stable human-readable listing of all families, one polynomial per line.
    pub fn render(&self) -> String {
        let two = VarNames { block: self.length };
        let one = VarNames { block: 0 };
        let mut out = String::new();
        for (k, s) in self.sum.iter().enumerate() {
            out.push_str(&format!("S{} = {}\n", k, s.display_with(&two)));
        }
        for (k, s) in self.product.iter().enumerate() {
            out.push_str(&format!("P{} = {}\n", k, s.display_with(&two)));
        }
        for (k, s) in self.negation.iter().enumerate() {
            out.push_str(&format!("I{} = {}\n", k, s.display_with(&one)));
        }
        for (k, s) in self.frobenius.iter().enumerate() {
            out.push_str(&format!("F{} = {}\n", k, s.display_with(&one)));
        }
        out
    }
}

type Cache = Mutex<HashMap<(u64, usize), Arc<UniversalPolys>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Cached access to the families for `(p, n)`. The first caller computes them;
/// once stored an entry is never replaced.
pub fn universal_polys(prime: u64, length: usize) -> Result<Arc<UniversalPolys>, WittError> {
    if !crate::field::is_prime(prime) {
        return Err(WittError::NotPrime(prime));
    }
    if let Some(hit) = cache().lock().unwrap().get(&(prime, length)) {
        return Ok(hit.clone());
    }
    let fresh = Arc::new(UniversalPolys::compute(prime, length)?);
    let mut guard = cache().lock().unwrap();
    Ok(guard.entry((prime, length)).or_insert(fresh).clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_sum_coordinate_is_plain_addition() {
        let u = universal_polys(5, 2).unwrap();
        assert_eq!(u.sum[0].display_with(&VarNames { block: 2 }), "x0 + y0");
        assert_eq!(u.product[0].display_with(&VarNames { block: 2 }), "x0*y0");
    }

    #[test]
    fn negation_is_coordinatewise_for_odd_primes_only() {
        let u3 = universal_polys(3, 3).unwrap();
        let names = VarNames { block: 0 };
        assert_eq!(u3.negation[1].display_with(&names), "-x1");
        let u2 = universal_polys(2, 2).unwrap();
        assert_eq!(u2.negation[1].display_with(&names), "-x1 - x0^2");
    }

    #[test]
    fn frobenius_family_has_one_fewer_member() {
        let u = universal_polys(2, 3).unwrap();
        assert_eq!(u.frobenius.len(), 2);
        // F_0 = x0^p + p x1
        assert_eq!(u.frobenius[0].display_with(&VarNames { block: 0 }), "2*x1 + x0^2");
    }

    #[test]
    fn non_prime_rejected() {
        assert!(matches!(universal_polys(6, 2), Err(WittError::NotPrime(6))));
    }
}
