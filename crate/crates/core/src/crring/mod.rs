//! Normal forms in the Cartier–Raynaud ring over a coefficient ring.
//!
//! Every element is stored on the basis
//!
//! ```text
//! v^i * x   (i >= 0)      d v^i * x   (i >= 0)
//! x * f^j   (j >= 1)      x * f^j d   (j >= 1)
//! ```
//!
//! with the coefficient to the right of `v`/`d` monomials and to the left of
//! `f` monomials. The scalar part is `v^0 * x`.

mod engine;
mod relations;
mod word;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::coefficients::{CoeffError, CoefficientRing, GradedScalar};

pub use relations::{
    contextual_soundness, relation_suite, ContextFailure, Counterexample, Relation, RelationReport, RelationResult,
    RelationSet,
};
pub use word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrError {
    #[error("operands belong to different rings")]
    MixedRings,
    #[error("coefficient does not belong to this ring")]
    ForeignCoefficient,
    #[error(transparent)]
    Coefficient(#[from] CoeffError),
}

/// A deliberately wrong reduction rule, for checking that the verification
/// suites detect corruption. Each variant breaks exactly one relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Fault {
    /// `fv -> p + 1`
    FvPlusOne,
    /// `vxf -> x`
    VxfSkipVerschiebung,
    /// `df -> fd`
    DfNoFactor,
    /// `vd -> dv`
    VdNoFactor,
    /// `fx -> xf`
    FxSkipFrobenius,
    /// `xv -> vx`
    XvSkipFrobenius,
    /// `fdv -> d`, dropping `eta`
    FdvDropEta,
    /// `dd -> 0`
    DSquaredZero,
    /// `dx -> (-1)^|x| xd`, dropping `d_A(x)`
    DxDropDifferential,
}

impl Fault {
    pub const ALL: [Fault; 9] = [
        Fault::FvPlusOne,
        Fault::VxfSkipVerschiebung,
        Fault::DfNoFactor,
        Fault::VdNoFactor,
        Fault::FxSkipFrobenius,
        Fault::XvSkipFrobenius,
        Fault::FdvDropEta,
        Fault::DSquaredZero,
        Fault::DxDropDifferential,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Fault::FvPlusOne => "fv-plus-one",
            Fault::VxfSkipVerschiebung => "vxf-skip-verschiebung",
            Fault::DfNoFactor => "df-no-factor",
            Fault::VdNoFactor => "vd-no-factor",
            Fault::FxSkipFrobenius => "fx-skip-frobenius",
            Fault::XvSkipFrobenius => "xv-skip-frobenius",
            Fault::FdvDropEta => "fdv-drop-eta",
            Fault::DSquaredZero => "dd-zero",
            Fault::DxDropDifferential => "dx-drop-differential",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|f| f.name() == s)
    }
}

/// The ring itself: a coefficient ring plus the (normally absent) fault.
#[derive(Debug)]
pub struct CrRing {
    coeffs: Arc<CoefficientRing>,
    fault: Option<Fault>,
}

impl CrRing {
    pub fn new(coeffs: Arc<CoefficientRing>) -> Arc<Self> {
        Arc::new(CrRing { coeffs, fault: None })
    }

    pub fn with_fault(coeffs: Arc<CoefficientRing>, fault: Fault) -> Arc<Self> {
        Arc::new(CrRing {
            coeffs,
            fault: Some(fault),
        })
    }

    pub fn coeffs(&self) -> &Arc<CoefficientRing> {
        &self.coeffs
    }

    pub fn fault(&self) -> Option<Fault> {
        self.fault
    }

    pub fn prime(&self) -> u64 {
        self.coeffs.prime()
    }

    fn same(&self, other: &CrRing) -> bool {
        std::ptr::eq(self, other) || (self.coeffs.key() == other.coeffs.key() && self.fault == other.fault)
    }
}

/// Basis monomial shapes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Monomial {
    One,
    /// `v^i`, `i >= 1`
    Vpow(u32),
    /// `d v^i`, `i >= 0`; `Dv(0)` is `d`
    Dv(u32),
    /// `f^j`, `j >= 1`
    Fpow(u32),
    /// `f^j d`, `j >= 1`
    Fd(u32),
}

/// Which of the four families a monomial belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    V,
    Dv,
    F,
    Fd,
}

impl Part {
    pub const ALL: [Part; 4] = [Part::V, Part::Dv, Part::F, Part::Fd];

    pub fn name(self) -> &'static str {
        match self {
            Part::V => "v",
            Part::Dv => "dv",
            Part::F => "f",
            Part::Fd => "fd",
        }
    }

    /// Degree contributed by the monomial itself.
    pub fn degree(self) -> i32 {
        match self {
            Part::V | Part::F => 0,
            Part::Dv | Part::Fd => 1,
        }
    }

    /// Whether the coefficient sits to the right of the monomial.
    pub fn coefficient_on_right(self) -> bool {
        matches!(self, Part::V | Part::Dv)
    }
}

impl Monomial {
    pub fn split(self) -> (Part, u32) {
        match self {
            Monomial::One => (Part::V, 0),
            Monomial::Vpow(i) => (Part::V, i),
            Monomial::Dv(i) => (Part::Dv, i),
            Monomial::Fpow(j) => (Part::F, j),
            Monomial::Fd(j) => (Part::Fd, j),
        }
    }

    /// `None` for `f^0` shapes, which are not basis monomials.
    pub fn from_part(part: Part, index: u32) -> Option<Self> {
        Some(match (part, index) {
            (Part::V, 0) => Monomial::One,
            (Part::V, i) => Monomial::Vpow(i),
            (Part::Dv, i) => Monomial::Dv(i),
            (Part::F, 0) | (Part::Fd, 0) => return None,
            (Part::F, j) => Monomial::Fpow(j),
            (Part::Fd, j) => Monomial::Fd(j),
        })
    }

    pub fn degree(self) -> i32 {
        self.split().0.degree()
    }

    pub fn index(self) -> u32 {
        self.split().1
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pow = |name: &str, k: u32| if k == 1 { name.to_string() } else { format!("{}^{}", name, k) };
        match *self {
            Monomial::One => f.write_str("1"),
            Monomial::Vpow(i) => f.write_str(&pow("v", i)),
            Monomial::Dv(0) => f.write_str("d"),
            Monomial::Dv(i) => write!(f, "d*{}", pow("v", i)),
            Monomial::Fpow(j) => f.write_str(&pow("f", j)),
            Monomial::Fd(j) => write!(f, "{}*d", pow("f", j)),
        }
    }
}

/// All basis monomials with index at most `max`:
/// `1, v..v^M, d, dv..dv^M, f..f^M, fd..f^M d`, `2(2M+1)` in total.
/// With `degree = Some(k)` only monomials of that degree are returned.
pub fn basis(max: u32, degree: Option<i32>) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(4 * max as usize + 2);
    out.push(Monomial::One);
    out.extend((1..=max).map(Monomial::Vpow));
    out.extend((0..=max).map(Monomial::Dv));
    out.extend((1..=max).map(Monomial::Fpow));
    out.extend((1..=max).map(Monomial::Fd));
    if let Some(k) = degree {
        out.retain(|m| m.degree() == k);
    }
    out
}

/// Products `m * m'` of all pairs of basis monomials of index at most `max`,
/// with unit coefficients, in basis order.
pub fn multiplication_table(ring: &Arc<CrRing>, max: u32) -> Vec<(Monomial, Monomial, CrElement)> {
    let one = ring.coeffs.one();
    let monos = basis(max, None);
    let els: Vec<CrElement> = monos
        .iter()
        .map(|&m| CrElement::monomial(ring, m, one.clone()).unwrap())
        .collect();
    let mut out = Vec::with_capacity(monos.len() * monos.len());
    for (m, a) in monos.iter().zip(&els) {
        for (m2, b) in monos.iter().zip(&els) {
            out.push((*m, *m2, engine::mul(a, b)));
        }
    }
    out
}

type Coeffs = BTreeMap<u32, GradedScalar>;

/// An element in normal form. Equal elements have identical storage.
#[derive(Clone)]
pub struct CrElement {
    ring: Arc<CrRing>,
    v: Coeffs,
    dv: Coeffs,
    f: Coeffs,
    fd: Coeffs,
}

impl PartialEq for CrElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same(&other.ring) && self.v == other.v && self.dv == other.dv && self.f == other.f && self.fd == other.fd
    }
}

impl Eq for CrElement {}

impl fmt::Debug for CrElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::lang::print(self))
    }
}

impl CrElement {
    pub fn zero(ring: &Arc<CrRing>) -> Self {
        CrElement {
            ring: ring.clone(),
            v: Coeffs::new(),
            dv: Coeffs::new(),
            f: Coeffs::new(),
            fd: Coeffs::new(),
        }
    }

    pub fn one(ring: &Arc<CrRing>) -> Self {
        Self::from_scalar_unchecked(ring, ring.coeffs.one())
    }

    fn from_scalar_unchecked(ring: &Arc<CrRing>, x: GradedScalar) -> Self {
        let mut e = Self::zero(ring);
        e.push(Part::V, 0, x);
        e
    }

    pub fn from_scalar(ring: &Arc<CrRing>, x: GradedScalar) -> Result<Self, CrError> {
        ring.coeffs.check(&x).map_err(|_| CrError::ForeignCoefficient)?;
        Ok(Self::from_scalar_unchecked(ring, x))
    }

    pub fn from_int(ring: &Arc<CrRing>, m: i64) -> Self {
        Self::from_scalar_unchecked(ring, ring.coeffs.from_int(m))
    }

    /// `m * c` with the coefficient on its canonical side.
    pub fn monomial(ring: &Arc<CrRing>, m: Monomial, c: GradedScalar) -> Result<Self, CrError> {
        ring.coeffs.check(&c).map_err(|_| CrError::ForeignCoefficient)?;
        let (part, idx) = m.split();
        let mut e = Self::zero(ring);
        e.push(part, idx, c);
        Ok(e)
    }

    pub fn gen_v(ring: &Arc<CrRing>) -> Self {
        let mut e = Self::zero(ring);
        e.push(Part::V, 1, ring.coeffs.one());
        e
    }

    pub fn gen_f(ring: &Arc<CrRing>) -> Self {
        let mut e = Self::zero(ring);
        e.push(Part::F, 1, ring.coeffs.one());
        e
    }

    pub fn gen_d(ring: &Arc<CrRing>) -> Self {
        let mut e = Self::zero(ring);
        e.push(Part::Dv, 0, ring.coeffs.one());
        e
    }

    pub fn ring(&self) -> &Arc<CrRing> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_empty() && self.dv.is_empty() && self.f.is_empty() && self.fd.is_empty()
    }

    pub fn part(&self, part: Part) -> &BTreeMap<u32, GradedScalar> {
        match part {
            Part::V => &self.v,
            Part::Dv => &self.dv,
            Part::F => &self.f,
            Part::Fd => &self.fd,
        }
    }

    fn part_mut(&mut self, part: Part) -> &mut Coeffs {
        match part {
            Part::V => &mut self.v,
            Part::Dv => &mut self.dv,
            Part::F => &mut self.f,
            Part::Fd => &mut self.fd,
        }
    }

    /// Coefficient of a basis monomial (zero if absent).
    pub fn coefficient(&self, m: Monomial) -> GradedScalar {
        let (part, idx) = m.split();
        self.part(part).get(&idx).cloned().unwrap_or_else(|| self.ring.coeffs.zero())
    }

    /// Adds `c` to the coefficient at `(part, idx)`, dropping zeros.
    pub(crate) fn push(&mut self, part: Part, idx: u32, c: GradedScalar) {
        if c.is_zero() {
            return;
        }
        debug_assert!(!(matches!(part, Part::F | Part::Fd) && idx == 0));
        let coeffs = self.ring.coeffs.clone();
        let slot = self.part_mut(part);
        match slot.get_mut(&idx) {
            Some(old) => {
                let s = coeffs.add(old, &c);
                if s.is_zero() {
                    slot.remove(&idx);
                } else {
                    *old = s;
                }
            }
            None => {
                slot.insert(idx, c);
            }
        }
    }

    /// `(monomial, coefficient)` pairs in printing order: v, dv, f, fd, each
    /// ascending in index.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &GradedScalar)> + '_ {
        Part::ALL.into_iter().flat_map(move |part| {
            self.part(part)
                .iter()
                .map(move |(&i, c)| (Monomial::from_part(part, i).expect("stored f^0"), c))
        })
    }

    pub fn num_terms(&self) -> usize {
        self.v.len() + self.dv.len() + self.f.len() + self.fd.len()
    }

    /// Largest monomial index present.
    pub fn max_index(&self) -> u32 {
        self.terms().map(|(m, _)| m.index()).max().unwrap_or(0)
    }

    fn check_same(&self, other: &Self) -> Result<(), CrError> {
        if self.ring.same(&other.ring) {
            Ok(())
        } else {
            Err(CrError::MixedRings)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, CrError> {
        self.check_same(other)?;
        Ok(self.add_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub(crate) fn add_assign(&mut self, other: &Self) {
        for part in Part::ALL {
            for (&i, c) in other.part(part) {
                self.push(part, i, c.clone());
            }
        }
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.ring.coeffs.clone();
        let mut out = Self::zero(&self.ring);
        for part in Part::ALL {
            for (&i, c) in self.part(part) {
                out.push(part, i, coeffs.neg(c));
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CrError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, CrError> {
        self.check_same(other)?;
        Ok(engine::mul(self, other))
    }

    /// `self^k`.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..k {
            acc = engine::mul(&acc, self);
        }
        acc
    }

    /// Splits into homogeneous pieces. The degree of `m * c` is the degree of
    /// `m` (one for `d`-monomials) plus the degree of `c`.
    pub fn homogeneous_parts(&self) -> BTreeMap<i32, CrElement> {
        let mut out: BTreeMap<i32, CrElement> = BTreeMap::new();
        for part in Part::ALL {
            for (&i, c) in self.part(part) {
                for comp in c.components() {
                    let deg = part.degree() + comp.degree().unwrap();
                    out.entry(deg).or_insert_with(|| Self::zero(&self.ring)).push(part, i, comp);
                }
            }
        }
        out
    }

    /// The degree if the element is nonzero and homogeneous.
    pub fn degree(&self) -> Option<i32> {
        let parts = self.homogeneous_parts();
        if parts.len() == 1 {
            parts.keys().next().copied()
        } else {
            None
        }
    }

    /// A random element with up to `terms` basis monomials of index at most
    /// `max_index`, each with a uniformly random coefficient.
    pub fn random<R: rand::Rng + ?Sized>(ring: &Arc<CrRing>, max_index: u32, terms: usize, rng: &mut R) -> Self {
        let monos = basis(max_index, None);
        let mut out = Self::zero(ring);
        for _ in 0..terms {
            let m = monos[rng.gen_range(0..monos.len())];
            let (part, idx) = m.split();
            out.push(part, idx, ring.coeffs.random(rng));
        }
        out
    }

    /// A random homogeneous element of the given degree (possibly zero).
    pub fn random_homogeneous<R: rand::Rng + ?Sized>(
        ring: &Arc<CrRing>,
        max_index: u32,
        terms: usize,
        degree: i32,
        rng: &mut R,
    ) -> Self {
        let monos = basis(max_index, None);
        let mut out = Self::zero(ring);
        for _ in 0..terms {
            let m = monos[rng.gen_range(0..monos.len())];
            let (part, idx) = m.split();
            out.push(part, idx, ring.coeffs.random_homogeneous(rng, degree - m.degree()));
        }
        out
    }

    /// Replaces the ring handle; used to compare a faulty computation with a
    /// clean one on identical storage.
    pub fn rebase(&self, ring: &Arc<CrRing>) -> Result<Self, CrError> {
        if self.ring.coeffs.key() != ring.coeffs.key() {
            return Err(CrError::MixedRings);
        }
        let mut out = self.clone();
        out.ring = ring.clone();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::RingDescriptor;

    fn ring(d: RingDescriptor) -> Arc<CrRing> {
        CrRing::new(CoefficientRing::new(d).unwrap())
    }

    #[test]
    fn basis_counts() {
        assert_eq!(basis(0, None), vec![Monomial::One, Monomial::Dv(0)]);
        assert_eq!(basis(1, None).len(), 6);
        assert_eq!(basis(3, None).len(), 14);
        assert_eq!(basis(2, Some(1)).len(), 5);
    }

    #[test]
    fn zero_scalar_is_zero() {
        let r = ring(RingDescriptor::witt_fp(3, 2));
        assert!(CrElement::from_scalar(&r, r.coeffs().zero()).unwrap().is_zero());
        assert!(CrElement::from_int(&r, 9).is_zero());
    }

    #[test]
    fn addition_merges_and_prunes() {
        let r = ring(RingDescriptor::zmod(3, 2));
        let c = r.coeffs().clone();
        let a = CrElement::monomial(&r, Monomial::Vpow(1), c.from_int(4)).unwrap();
        let b = CrElement::monomial(&r, Monomial::Vpow(1), c.from_int(5)).unwrap();
        assert!(a.add(&b).unwrap().is_zero());
        let z = CrElement::zero(&r);
        assert_eq!(a.add(&z).unwrap(), a);
    }

    #[test]
    fn twice_d_is_nonzero_over_w3_f2() {
        let r = ring(RingDescriptor::witt_fp(2, 3));
        let d = CrElement::gen_d(&r);
        let two_d = d.add(&d).unwrap();
        assert!(!two_d.is_zero());
        assert_eq!(two_d.coefficient(Monomial::Dv(0)), r.coeffs().from_int(2));
    }

    #[test]
    fn mixed_rings_rejected() {
        let a = ring(RingDescriptor::zmod(3, 2));
        let b = ring(RingDescriptor::witt_fp(3, 2));
        assert_eq!(
            CrElement::one(&a).add(&CrElement::one(&b)).unwrap_err(),
            CrError::MixedRings
        );
        let foreign = b.coeffs().one();
        assert_eq!(CrElement::from_scalar(&a, foreign).unwrap_err(), CrError::ForeignCoefficient);
    }

    #[test]
    fn degrees() {
        let r = ring(RingDescriptor::formal_eta());
        assert_eq!(CrElement::gen_d(&r).degree(), Some(1));
        assert_eq!(CrElement::gen_v(&r).degree(), Some(0));
        let eta = CrElement::from_scalar(&r, r.coeffs().eta()).unwrap();
        assert_eq!(eta.degree(), Some(1));
        let mixed = eta.add(&CrElement::one(&r)).unwrap();
        assert_eq!(mixed.degree(), None);
        let parts = mixed.homogeneous_parts();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&0].add(&parts[&1]).unwrap(), mixed);
    }
}
