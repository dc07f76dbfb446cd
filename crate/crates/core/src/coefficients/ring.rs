use std::collections::HashMap;
use std::sync::Arc;

use rand::Rng;
use smallvec::SmallVec;

use super::{eta, CoeffError, GradedScalar, RingDescriptor, RingKind};
use crate::field::{is_prime, power_of};
use crate::witt::{WittCodes, WittError};

const INT_TABLE_LIMIT: u64 = 1 << 16;

enum Carrier {
    Zmod {
        modulus: u64,
    },
    Witt {
        codes: WittCodes,
        // m -> code of m*1, for 0 <= m < p^n
        ints: Option<Vec<u64>>,
        int_of: HashMap<u64, u64>,
    },
    Eta,
}

/// A graded coefficient ring together with `F`, `V`, `d` and `eta`.
///
/// Values are immutable; every operation is a pure function of its inputs.
pub struct CoefficientRing {
    desc: RingDescriptor,
    key: u64,
    carrier: Carrier,
}

impl std::fmt::Debug for CoefficientRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CoefficientRing({})", self.desc.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Mul,
    Neg,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScalarValue {
    Scalar(GradedScalar),
    Bool(bool),
}

fn descriptor_key(d: &RingDescriptor) -> u64 {
    let kind = match d.kind {
        RingKind::WittFp => 1u64,
        RingKind::WittPerfect => 2,
        RingKind::ZmodPn => 3,
        RingKind::FormalEta => 4,
    };
    // FNV-1a over the fields
    let mut h: u64 = 0xcbf29ce484222325;
    for word in [d.prime, d.truncation as u64, kind, d.field_size.unwrap_or(0)] {
        for b in word.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    h
}

impl From<WittError> for CoeffError {
    fn from(e: WittError) -> Self {
        match e {
            WittError::NotPrime(p) => CoeffError::NotPrime(p),
            WittError::BadFieldSize { prime, size } => CoeffError::BadFieldSize { prime, size },
            WittError::ZeroLength => CoeffError::BadTruncation,
            _ => CoeffError::TooLarge,
        }
    }
}

impl CoefficientRing {
    pub fn new(desc: RingDescriptor) -> Result<Arc<Self>, CoeffError> {
        if !is_prime(desc.prime) {
            return Err(CoeffError::NotPrime(desc.prime));
        }
        if desc.truncation < 1 {
            return Err(CoeffError::BadTruncation);
        }
        let p = desc.prime;
        let n = desc.truncation;
        let carrier = match desc.kind {
            RingKind::ZmodPn => {
                let modulus = p.checked_pow(n).filter(|m| *m < (1u64 << 62)).ok_or(CoeffError::TooLarge)?;
                Carrier::Zmod { modulus }
            }
            RingKind::WittFp | RingKind::WittPerfect => {
                let q = match (desc.kind, desc.field_size) {
                    (RingKind::WittFp, None) => p,
                    (RingKind::WittFp, Some(q)) if q == p => p,
                    (RingKind::WittFp, Some(q)) => return Err(CoeffError::BadFieldSize { prime: p, size: q }),
                    (_, Some(q)) => q,
                    (_, None) => return Err(CoeffError::BadFieldSize { prime: p, size: 0 }),
                };
                if power_of(q, p).is_none() {
                    return Err(CoeffError::BadFieldSize { prime: p, size: q });
                }
                let codes = WittCodes::new(p, q, n as usize)?;
                let pn = p.checked_pow(n);
                let ints = match pn {
                    Some(pn) if pn <= INT_TABLE_LIMIT => {
                        let one = codes.encode(&{
                            let mut c = vec![0; n as usize];
                            c[0] = 1;
                            c
                        });
                        let mut t = Vec::with_capacity(pn as usize);
                        let mut acc = 0u64;
                        for _ in 0..pn {
                            t.push(acc);
                            acc = codes.add(acc, one);
                        }
                        Some(t)
                    }
                    _ => None,
                };
                let int_of = ints
                    .as_ref()
                    .map(|t| t.iter().enumerate().map(|(m, &c)| (c, m as u64)).collect())
                    .unwrap_or_default();
                Carrier::Witt { codes, ints, int_of }
            }
            RingKind::FormalEta => {
                if p != 2 {
                    return Err(CoeffError::EtaNeedsTwo(p));
                }
                Carrier::Eta
            }
        };
        Ok(Arc::new(CoefficientRing {
            key: descriptor_key(&desc),
            desc,
            carrier,
        }))
    }

    pub fn descriptor(&self) -> &RingDescriptor {
        &self.desc
    }

    pub fn prime(&self) -> u64 {
        self.desc.prime
    }

    pub fn kind(&self) -> RingKind {
        self.desc.kind
    }

    pub fn key(&self) -> u64 {
        self.key
    }

    /// Degrees in which the ring can be nonzero.
    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        match self.carrier {
            Carrier::Eta => 0..=eta::MAX_DEGREE,
            _ => 0..=0,
        }
    }

    /// Number of elements in the given degree.
    pub fn size_in_degree(&self, degree: i32) -> u64 {
        if !self.degrees().contains(&degree) {
            return 1;
        }
        match &self.carrier {
            Carrier::Zmod { modulus } => *modulus,
            Carrier::Witt { codes, .. } => codes.size(),
            Carrier::Eta => eta::SIZE,
        }
    }

    pub fn witt_codes(&self) -> Option<&WittCodes> {
        match &self.carrier {
            Carrier::Witt { codes, .. } => Some(codes),
            _ => None,
        }
    }

    // ---- homogeneous primitives -------------------------------------------

    fn h_add(&self, a: u64, b: u64) -> u64 {
        match &self.carrier {
            Carrier::Zmod { modulus } => ((a as u128 + b as u128) % *modulus as u128) as u64,
            Carrier::Witt { codes, .. } => codes.add(a, b),
            Carrier::Eta => eta::add(a, b),
        }
    }

    fn h_neg(&self, a: u64) -> u64 {
        match &self.carrier {
            Carrier::Zmod { modulus } => (modulus - a % modulus) % modulus,
            Carrier::Witt { codes, .. } => codes.neg(a),
            Carrier::Eta => a,
        }
    }

    fn h_mul(&self, da: i32, a: u64, db: i32, b: u64) -> Option<(i32, u64)> {
        let deg = da + db;
        if !self.degrees().contains(&deg) {
            return None;
        }
        let c = match &self.carrier {
            Carrier::Zmod { modulus } => ((a as u128 * b as u128) % *modulus as u128) as u64,
            Carrier::Witt { codes, .. } => codes.mul(a, b),
            Carrier::Eta => eta::mul(a, b),
        };
        Some((deg, c))
    }

    fn h_frob(&self, a: u64) -> u64 {
        match &self.carrier {
            Carrier::Zmod { .. } => a,
            Carrier::Witt { codes, .. } => codes.frobenius(a),
            Carrier::Eta => eta::frobenius(a),
        }
    }

    fn h_versch(&self, a: u64) -> u64 {
        match &self.carrier {
            Carrier::Zmod { modulus } => ((a as u128 * self.desc.prime as u128) % *modulus as u128) as u64,
            Carrier::Witt { codes, .. } => codes.verschiebung(a),
            Carrier::Eta => eta::verschiebung(a),
        }
    }

    fn h_diff(&self, deg: i32, a: u64) -> Option<(i32, u64)> {
        match &self.carrier {
            Carrier::Eta if deg == 0 => Some((1, eta::differential0(a))),
            _ => None,
        }
    }

    fn build(&self, mut parts: Vec<(i32, u64)>) -> GradedScalar {
        parts.sort_by_key(|&(d, _)| d);
        let mut out: SmallVec<[(i32, u64); 2]> = SmallVec::new();
        for (d, c) in parts {
            match out.last_mut() {
                Some((ld, lc)) if *ld == d => *lc = self.h_add(*lc, c),
                _ => out.push((d, c)),
            }
        }
        out.retain(|(_, c)| *c != 0);
        GradedScalar { key: self.key, parts: out }
    }

    fn map_parts(&self, x: &GradedScalar, f: impl Fn(i32, u64) -> Option<(i32, u64)>) -> GradedScalar {
        self.build(x.parts.iter().filter_map(|&(d, c)| f(d, c)).collect())
    }

    // ---- public arithmetic ------------------------------------------------

    pub fn zero(&self) -> GradedScalar {
        GradedScalar::zero_with(self.key)
    }

    pub fn one(&self) -> GradedScalar {
        self.from_int(1)
    }

    /// `m * 1`.
    pub fn from_int(&self, m: i64) -> GradedScalar {
        let code = match &self.carrier {
            Carrier::Zmod { modulus } => (m as i128).rem_euclid(*modulus as i128) as u64,
            Carrier::Eta => m.rem_euclid(2) as u64,
            Carrier::Witt { codes, ints, .. } => match ints {
                Some(t) => t[(m as i128).rem_euclid(t.len() as i128) as usize],
                None => {
                    let one = codes.encode(&{
                        let mut c = vec![0; codes.length()];
                        c[0] = 1;
                        c
                    });
                    let mut base = if m < 0 { codes.neg(one) } else { one };
                    let mut k = m.unsigned_abs();
                    let mut acc = 0;
                    while k > 0 {
                        if k & 1 == 1 {
                            acc = codes.add(acc, base);
                        }
                        base = codes.add(base, base);
                        k >>= 1;
                    }
                    acc
                }
            },
        };
        GradedScalar::homogeneous(self.key, 0, code)
    }

    /// The degree-1 class `eta`; zero unless the ring carries it.
    pub fn eta(&self) -> GradedScalar {
        match self.carrier {
            Carrier::Eta => GradedScalar::homogeneous(self.key, 1, eta::from_coords(1, 0)),
            _ => self.zero(),
        }
    }

    pub fn add(&self, a: &GradedScalar, b: &GradedScalar) -> GradedScalar {
        debug_assert!(a.key == self.key && b.key == self.key, "foreign scalar");
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        self.build(a.parts.iter().chain(b.parts.iter()).copied().collect())
    }

    pub fn neg(&self, a: &GradedScalar) -> GradedScalar {
        self.map_parts(a, |d, c| Some((d, self.h_neg(c))))
    }

    pub fn sub(&self, a: &GradedScalar, b: &GradedScalar) -> GradedScalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &GradedScalar, b: &GradedScalar) -> GradedScalar {
        debug_assert!(a.key == self.key && b.key == self.key, "foreign scalar");
        let mut parts = Vec::with_capacity(a.parts.len() * b.parts.len());
        for &(da, ca) in &a.parts {
            for &(db, cb) in &b.parts {
                if let Some(t) = self.h_mul(da, ca, db, cb) {
                    parts.push(t);
                }
            }
        }
        self.build(parts)
    }

    /// `m * a`.
    pub fn scale(&self, m: i64, a: &GradedScalar) -> GradedScalar {
        self.mul(&self.from_int(m), a)
    }

    /// `p^e * a`.
    pub fn scale_prime_power(&self, e: u32, a: &GradedScalar) -> GradedScalar {
        let mut out = a.clone();
        for _ in 0..e {
            if out.is_zero() {
                break;
            }
            out = self.scale(self.desc.prime as i64, &out);
        }
        out
    }

    pub fn frobenius(&self, a: &GradedScalar) -> GradedScalar {
        self.map_parts(a, |d, c| Some((d, self.h_frob(c))))
    }

    pub fn frobenius_pow(&self, k: u32, a: &GradedScalar) -> GradedScalar {
        (0..k).fold(a.clone(), |x, _| self.frobenius(&x))
    }

    pub fn verschiebung(&self, a: &GradedScalar) -> GradedScalar {
        self.map_parts(a, |d, c| Some((d, self.h_versch(c))))
    }

    pub fn verschiebung_pow(&self, k: u32, a: &GradedScalar) -> GradedScalar {
        (0..k).fold(a.clone(), |x, _| self.verschiebung(&x))
    }

    /// The coefficient differential `d_A`, raising degree by one.
    pub fn differential(&self, a: &GradedScalar) -> GradedScalar {
        self.map_parts(a, |d, c| self.h_diff(d, c))
    }

    /// `sum_k (-1)^k a_k`: the Koszul sign applied degreewise.
    pub fn parity(&self, a: &GradedScalar) -> GradedScalar {
        self.map_parts(a, |d, c| Some((d, if d.rem_euclid(2) == 1 { self.h_neg(c) } else { c })))
    }

    pub fn contains(&self, a: &GradedScalar) -> bool {
        a.key == self.key
            && a
                .parts
                .iter()
                .all(|&(d, c)| self.degrees().contains(&d) && c < self.size_in_degree(d))
    }

    pub fn check(&self, a: &GradedScalar) -> Result<(), CoeffError> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(CoeffError::MixedRings)
        }
    }

    /// Checked entry point for the basic ring operations.
    pub fn arith(&self, op: ScalarOp, a: &GradedScalar, b: Option<&GradedScalar>) -> Result<ScalarValue, CoeffError> {
        self.check(a)?;
        if let Some(b) = b {
            self.check(b)?;
        }
        let need_b = || b.ok_or_else(|| CoeffError::Literal("missing second operand".into()));
        Ok(match op {
            ScalarOp::Add => ScalarValue::Scalar(self.add(a, need_b()?)),
            ScalarOp::Mul => ScalarValue::Scalar(self.mul(a, need_b()?)),
            ScalarOp::Neg => ScalarValue::Scalar(self.neg(a)),
            ScalarOp::Eq => ScalarValue::Bool(a == need_b()?),
        })
    }

    // ---- sampling ---------------------------------------------------------

    pub fn random_homogeneous<R: Rng + ?Sized>(&self, rng: &mut R, degree: i32) -> GradedScalar {
        let size = self.size_in_degree(degree);
        if !self.degrees().contains(&degree) {
            return self.zero();
        }
        GradedScalar::homogeneous(self.key, degree, rng.gen_range(0..size))
    }

    /// Uniform over all elements (every degree component drawn independently).
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> GradedScalar {
        let parts = self.degrees().map(|d| (d, rng.gen_range(0..self.size_in_degree(d)))).collect();
        self.build(parts)
    }

    /// A homogeneous element in a uniformly chosen degree.
    pub fn random_any_homogeneous<R: Rng + ?Sized>(&self, rng: &mut R) -> GradedScalar {
        let degs: Vec<i32> = self.degrees().collect();
        let d = degs[rng.gen_range(0..degs.len())];
        self.random_homogeneous(rng, d)
    }

    // ---- literals ---------------------------------------------------------

    /// A Witt-coordinate literal `W[a0, a1, ...]`.
    ///
    /// For Witt rings the coordinates are field codes in `0..q` and the length
    /// must equal the truncation. For formal-eta, `W[a, b]` is `a + b V(1)`.
    pub fn from_coords(&self, coords: &[i64]) -> Result<GradedScalar, CoeffError> {
        match &self.carrier {
            Carrier::Zmod { .. } => Err(CoeffError::Literal(format!(
                "Witt literals are not elements of {}",
                self.desc.label()
            ))),
            Carrier::Witt { codes, .. } => {
                if coords.len() != codes.length() {
                    return Err(CoeffError::Literal(format!(
                        "expected {} Witt coordinates, got {}",
                        codes.length(),
                        coords.len()
                    )));
                }
                let q = codes.field().order() as i64;
                if let Some(bad) = coords.iter().find(|&&c| c < 0 || c >= q) {
                    return Err(CoeffError::Literal(format!("coordinate {} is not in 0..{}", bad, q)));
                }
                let cs: Vec<u64> = coords.iter().map(|&c| c as u64).collect();
                Ok(GradedScalar::homogeneous(self.key, 0, codes.encode(&cs)))
            }
            Carrier::Eta => {
                if coords.len() != 2 {
                    return Err(CoeffError::Literal(format!("expected 2 coordinates, got {}", coords.len())));
                }
                if let Some(bad) = coords.iter().find(|&&c| !(0..2).contains(&c)) {
                    return Err(CoeffError::Literal(format!("coordinate {} is not in 0..2", bad)));
                }
                Ok(GradedScalar::homogeneous(
                    self.key,
                    0,
                    eta::from_coords(coords[0] as u64, coords[1] as u64),
                ))
            }
        }
    }

    /// The integer `m` in `0..p^n` with `a = m * 1`, when there is one and it
    /// is cheap to find.
    pub fn as_integer(&self, a: &GradedScalar) -> Option<u64> {
        if a.is_zero() {
            return Some(0);
        }
        let (d, c) = match a.parts.as_slice() {
            [single] => *single,
            _ => return None,
        };
        if d != 0 {
            return None;
        }
        match &self.carrier {
            Carrier::Zmod { .. } => Some(c),
            Carrier::Eta => (c == 1).then_some(1),
            Carrier::Witt { int_of, .. } => int_of.get(&c).copied(),
        }
    }

    /// Text of one homogeneous component that is not an integer multiple of
    /// one, as a `*`-joined product of literals.
    pub fn render_component(&self, degree: i32, code: u64) -> String {
        match &self.carrier {
            Carrier::Zmod { .. } => code.to_string(),
            Carrier::Witt { codes, int_of, .. } => match int_of.get(&code) {
                Some(m) => m.to_string(),
                None => {
                    let cs: Vec<String> = codes.decode(code).iter().map(|c| c.to_string()).collect();
                    format!("W[{}]", cs.join(","))
                }
            },
            Carrier::Eta => {
                let [a, b] = eta::coords(code);
                match (degree, a, b) {
                    (0, 1, 0) => "1".into(),
                    (0, _, _) => format!("W[{},{}]", a, b),
                    (_, 1, 0) => "eta".into(),
                    _ => format!("eta*W[{},{}]", a, b),
                }
            }
        }
    }

    /// Coordinates of a homogeneous component for structured documents:
    /// `[m]` for `Z/p^n`, field codes for Witt rings, `[a, b]` for formal-eta.
    pub fn component_coords(&self, code: u64) -> Vec<u64> {
        match &self.carrier {
            Carrier::Zmod { .. } => vec![code],
            Carrier::Witt { codes, .. } => codes.decode(code),
            Carrier::Eta => eta::coords(code).to_vec(),
        }
    }

    pub fn from_component_coords(&self, degree: i32, coords: &[u64]) -> Result<GradedScalar, CoeffError> {
        if !self.degrees().contains(&degree) {
            return Err(CoeffError::Literal(format!("degree {} is empty in {}", degree, self.desc.label())));
        }
        let code = match &self.carrier {
            Carrier::Zmod { modulus } => match coords {
                [m] if m < modulus => *m,
                _ => return Err(CoeffError::Literal("expected one residue".into())),
            },
            Carrier::Witt { codes, .. } => {
                let q = codes.field().order();
                if coords.len() != codes.length() || coords.iter().any(|&c| c >= q) {
                    return Err(CoeffError::Literal("bad Witt coordinates".into()));
                }
                codes.encode(coords)
            }
            Carrier::Eta => match coords {
                [a, b] if *a < 2 && *b < 2 => eta::from_coords(*a, *b),
                _ => return Err(CoeffError::Literal("expected two bits".into())),
            },
        };
        Ok(GradedScalar::homogeneous(self.key, degree, code))
    }
}
