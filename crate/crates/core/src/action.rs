//! Ring elements acting on modules with `V`, `F` and `d`.
//!
//! Words act right to left, as operator composition: the word `f d v` sends
//! `x` to `F(d(V(x)))`. Only left modules are modelled.

use std::fmt::Debug;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::coefficients::{CoefficientRing, GradedScalar};
use crate::crring::{CrElement, CrRing, Letter, Part, Word};
use crate::exec::{map_indices, sample_rng, Execution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("scalar does not belong to the module's coefficient ring")]
    ForeignScalar,
    #[error("element belongs to a different coefficient ring")]
    ForeignElement,
    #[error("module axiom {axiom} fails at {point}: {lhs} != {rhs}")]
    AxiomViolated {
        axiom: &'static str,
        point: String,
        lhs: String,
        rhs: String,
    },
}

/// A module over the coefficient ring with operators `V`, `F` (degree 0) and
/// `d` (degree 1).
pub trait CartierModule: Sync {
    type Point: Clone + PartialEq + Debug + Send + Sync;

    fn coeffs(&self) -> &Arc<CoefficientRing>;
    fn zero(&self) -> Self::Point;
    fn add(&self, a: &Self::Point, b: &Self::Point) -> Self::Point;
    fn op_v(&self, x: &Self::Point) -> Self::Point;
    fn op_f(&self, x: &Self::Point) -> Self::Point;
    fn op_d(&self, x: &Self::Point) -> Self::Point;
    /// The action of a coefficient.
    fn scalar(&self, c: &GradedScalar, x: &Self::Point) -> Self::Point;
    fn random_point(&self, rng: &mut dyn rand::RngCore) -> Self::Point;
    fn render(&self, x: &Self::Point) -> String;
}

/// The coefficient ring acting on itself through `V_A`, `F_A` and `d_A`.
pub struct Tautological {
    coeffs: Arc<CoefficientRing>,
}

impl Tautological {
    /// Builds the module and checks the five operator identities on 200
    /// random points.
    pub fn new(coeffs: Arc<CoefficientRing>) -> Result<Self, ActionError> {
        let m = Tautological { coeffs };
        check_axioms(&m, 200, 0x5eed)?;
        Ok(m)
    }
}

impl CartierModule for Tautological {
    type Point = GradedScalar;

    fn coeffs(&self) -> &Arc<CoefficientRing> {
        &self.coeffs
    }

    fn zero(&self) -> GradedScalar {
        self.coeffs.zero()
    }

    fn add(&self, a: &GradedScalar, b: &GradedScalar) -> GradedScalar {
        self.coeffs.add(a, b)
    }

    fn op_v(&self, x: &GradedScalar) -> GradedScalar {
        self.coeffs.verschiebung(x)
    }

    fn op_f(&self, x: &GradedScalar) -> GradedScalar {
        self.coeffs.frobenius(x)
    }

    fn op_d(&self, x: &GradedScalar) -> GradedScalar {
        self.coeffs.differential(x)
    }

    fn scalar(&self, c: &GradedScalar, x: &GradedScalar) -> GradedScalar {
        self.coeffs.mul(c, x)
    }

    fn random_point(&self, rng: &mut dyn rand::RngCore) -> GradedScalar {
        self.coeffs.random(rng)
    }

    fn render(&self, x: &GradedScalar) -> String {
        crate::lang::print_scalar(&self.coeffs, x)
    }
}

fn scale_int<M: CartierModule + ?Sized>(m: &M, k: i64, x: &M::Point) -> M::Point {
    m.scalar(&m.coeffs().from_int(k), x)
}

/// Checks `FV = p`, `dF = pFd`, `Vd = pdV`, `FdV = d + eta` and `dd = eta d`
/// on `samples` random points.
pub fn check_axioms<M: CartierModule + ?Sized>(m: &M, samples: usize, seed: u64) -> Result<(), ActionError> {
    let p = m.coeffs().prime() as i64;
    let eta = m.coeffs().eta();
    for s in 0..samples {
        let mut rng = sample_rng(seed, s as u64);
        let x = m.random_point(&mut rng);
        let checks: [(&'static str, M::Point, M::Point); 5] = [
            ("FV = p", m.op_f(&m.op_v(&x)), scale_int(m, p, &x)),
            ("dF = pFd", m.op_d(&m.op_f(&x)), scale_int(m, p, &m.op_f(&m.op_d(&x)))),
            ("Vd = pdV", m.op_v(&m.op_d(&x)), scale_int(m, p, &m.op_d(&m.op_v(&x)))),
            (
                "FdV = d + eta",
                m.op_f(&m.op_d(&m.op_v(&x))),
                m.add(&m.op_d(&x), &m.scalar(&eta, &x)),
            ),
            ("dd = eta d", m.op_d(&m.op_d(&x)), m.scalar(&eta, &m.op_d(&x))),
        ];
        for (axiom, lhs, rhs) in checks {
            if lhs != rhs {
                return Err(ActionError::AxiomViolated {
                    axiom,
                    point: m.render(&x),
                    lhs: m.render(&lhs),
                    rhs: m.render(&rhs),
                });
            }
        }
    }
    Ok(())
}

/// Applies the letters of `w` to `x`, rightmost first.
pub fn act_word<M: CartierModule + ?Sized>(m: &M, w: &Word, x: &M::Point) -> Result<M::Point, ActionError> {
    let mut y = x.clone();
    for l in w.letters().iter().rev() {
        y = match l {
            Letter::V => m.op_v(&y),
            Letter::F => m.op_f(&y),
            Letter::D => m.op_d(&y),
            Letter::Coeff(c) => {
                m.coeffs().check(c).map_err(|_| ActionError::ForeignScalar)?;
                m.scalar(c, &y)
            }
        };
    }
    Ok(y)
}

fn pow_op<M: CartierModule + ?Sized>(k: u32, x: M::Point, op: impl Fn(&M::Point) -> M::Point) -> M::Point {
    (0..k).fold(x, |y, _| op(&y))
}

/// The action of a normal form: `v^i c` sends `x` to `V^i(c x)`, `d v^i c` to
/// `d V^i (c x)`, `c f^j` to `c F^j(x)` and `c f^j d` to `c F^j(d x)`.
pub fn act_element<M: CartierModule + ?Sized>(
    m: &M,
    e: &CrElement,
    x: &M::Point,
) -> Result<M::Point, ActionError> {
    if e.ring().coeffs().key() != m.coeffs().key() {
        return Err(ActionError::ForeignElement);
    }
    let mut out = m.zero();
    for (&i, c) in e.part(Part::V) {
        out = m.add(&out, &pow_op::<M>(i, m.scalar(c, x), |y| m.op_v(y)));
    }
    for (&i, c) in e.part(Part::Dv) {
        out = m.add(&out, &m.op_d(&pow_op::<M>(i, m.scalar(c, x), |y| m.op_v(y))));
    }
    if !e.part(Part::F).is_empty() {
        for (&j, c) in e.part(Part::F) {
            out = m.add(&out, &m.scalar(c, &pow_op::<M>(j, x.clone(), |y| m.op_f(y))));
        }
    }
    if !e.part(Part::Fd).is_empty() {
        let dx = m.op_d(x);
        for (&j, c) in e.part(Part::Fd) {
            out = m.add(&out, &m.scalar(c, &pow_op::<M>(j, dx.clone(), |y| m.op_f(y))));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub sample: usize,
    pub word: String,
    pub normal_form: String,
    pub point: String,
    pub by_word: String,
    pub by_element: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub ring: String,
    pub samples: usize,
    pub max_len: usize,
    pub seed: u64,
    pub failures: usize,
    pub witnesses: Vec<Witness>,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Compares `act_word(w, x)` with `act_element(eval(w), x)` for random words
/// of length at most `max_len` and random points, the word evaluated in
/// `ring`. Keeps up to five witnesses.
pub fn consistency_check<M: CartierModule + ?Sized>(
    m: &M,
    ring: &Arc<CrRing>,
    samples: usize,
    max_len: usize,
    seed: u64,
    exec: Execution,
) -> ConsistencyReport {
    let a = m.coeffs().clone();
    let results = map_indices(exec, samples, |s| {
        let mut rng = sample_rng(seed, s as u64);
        let len = rng.gen_range(0..=max_len);
        let w = Word::random(&a, len, &mut rng);
        let x = m.random_point(&mut rng);
        let e = w.eval(ring).expect("random words use ring coefficients");
        let by_word = act_word(m, &w, &x).expect("random words use ring coefficients");
        let by_element = act_element(m, &e, &x).expect("same coefficient ring");
        (by_word != by_element).then(|| Witness {
            sample: s,
            word: w.display(&a).to_string(),
            normal_form: crate::lang::print(&e),
            point: m.render(&x),
            by_word: m.render(&by_word),
            by_element: m.render(&by_element),
        })
    });
    let failures: Vec<Witness> = results.into_iter().flatten().collect();
    ConsistencyReport {
        ring: a.descriptor().label(),
        samples,
        max_len,
        seed,
        failures: failures.len(),
        witnesses: failures.into_iter().take(5).collect(),
    }
}
