//! Finite fields `F_q`, `q = p^r`, as `F_p[X]/(m(X))`.
//!
//! Elements are encoded as integers `0..q`: the base-`p` digits of the code
//! are the coefficients of the residue polynomial, lowest degree first. The
//! modulus `m` is the smallest monic irreducible of degree `r` in that same
//! encoding, so the encoding is deterministic for a given `q`.

use std::fmt;

/// Largest field for which full multiplication tables are built.
const TABLE_LIMIT: u64 = 256;

#[derive(Clone)]
pub struct GaloisField {
    p: u64,
    degree: u32,
    q: u64,
    // monic modulus, coefficients low to high, length degree + 1
    modulus: Vec<u64>,
    mul_table: Option<Vec<u32>>,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}) modulus {:?}", self.q, self.modulus)
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.p == other.p
    }
}

impl Eq for GaloisField {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `r` with `q = p^r`, or `None` if `q` is not a positive power of `p`.
pub fn power_of(q: u64, p: u64) -> Option<u32> {
    if p < 2 || q < p {
        return None;
    }
    let mut r = 0;
    let mut t = q;
    while t.is_multiple_of(p) {
        t /= p;
        r += 1;
    }
    (t == 1).then_some(r)
}

fn digits(code: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    let mut c = code;
    for _ in 0..len {
        out.push(c % p);
        c /= p;
    }
    out
}

fn poly_rem(mut a: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
    // m monic
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = a.pop().unwrap();
        if lead != 0 {
            let shift = a.len() - dm;
            for (i, &mc) in m[..dm].iter().enumerate() {
                let idx = shift + i;
                a[idx] = (a[idx] + (p - lead) * mc % p) % p;
            }
        }
    }
    a
}

fn divides(m: &[u64], a: &[u64], p: u64) -> bool {
    poly_rem(a.to_vec(), m, p).iter().all(|&c| c == 0)
}

fn smallest_irreducible(p: u64, degree: u32) -> Vec<u64> {
    let r = degree as usize;
    let span = p.pow(degree);
    'candidates: for low in 0..span {
        let mut cand = digits(low, p, r);
        cand.push(1);
        for dd in 1..=r / 2 {
            for flow in 0..p.pow(dd as u32) {
                let mut f = digits(flow, p, dd);
                f.push(1);
                if divides(&f, &cand, p) {
                    continue 'candidates;
                }
            }
        }
        return cand;
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl GaloisField {
    /// Builds `F_q`. Panics unless `q` is a positive power of the prime `p`;
    /// callers validate first.
    pub fn new(p: u64, q: u64) -> Self {
        assert!(is_prime(p), "characteristic must be prime");
        let degree = power_of(q, p).expect("q must be a power of p");
        let modulus = if degree == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(p, degree)
        };
        let mut field = GaloisField {
            p,
            degree,
            q,
            modulus,
            mul_table: None,
        };
        if q <= TABLE_LIMIT && degree > 1 {
            let mut table = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = field.mul_slow(a, b) as u32;
                }
            }
            field.mul_table = Some(table);
        }
        field
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    fn encode(&self, coeffs: &[u64]) -> u64 {
        coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.degree == 1 {
            return (a + b) % self.p;
        }
        let (da, db) = (digits(a, self.p, self.degree as usize), digits(b, self.p, self.degree as usize));
        let s: Vec<u64> = da.iter().zip(db.iter()).map(|(x, y)| (x + y) % self.p).collect();
        self.encode(&s)
    }

    pub fn neg(&self, a: u64) -> u64 {
        if self.degree == 1 {
            return (self.p - a % self.p) % self.p;
        }
        let d: Vec<u64> = digits(a, self.p, self.degree as usize)
            .into_iter()
            .map(|x| (self.p - x) % self.p)
            .collect();
        self.encode(&d)
    }

    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        let r = self.degree as usize;
        let (da, db) = (digits(a, self.p, r), digits(b, self.p, r));
        let mut prod = vec![0u64; 2 * r - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let rem = poly_rem(prod, &self.modulus, self.p);
        self.encode(&rem)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.degree == 1 {
            return ((a as u128 * b as u128) % self.p as u128) as u64;
        }
        match &self.mul_table {
            Some(t) => t[(a * self.q + b) as usize] as u64,
            None => self.mul_slow(a, b),
        }
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The absolute Frobenius `a -> a^p`.
    pub fn frobenius(&self, a: u64) -> u64 {
        self.pow(a, self.p)
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i128) -> u64 {
        n.rem_euclid(self.p as i128) as u64
    }

    /// The class of `X`, a generator of `F_q` over `F_p` (equal to 1 when `q = p`).
    pub fn generator(&self) -> u64 {
        if self.degree == 1 {
            1 % self.p
        } else {
            self.p
        }
    }
}
