//! The defining relations, as pairs of sums of words, and randomized suites
//! that evaluate both sides through the product engine.

use std::sync::Arc;

use rand::Rng;

use super::{basis, CrElement, CrRing, Letter, Word};
use crate::coefficients::{CoefficientRing, GradedScalar};
use crate::exec::{map_indices, sample_rng, Execution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationSet {
    /// `fv = p`, `df = pfd`, `vd = pdv`, `fdv = d + eta`, `dd = eta d`.
    ITCart,
    /// `ITCart` together with the four coefficient-crossing relations.
    IR,
}

impl RelationSet {
    pub fn name(self) -> &'static str {
        match self {
            RelationSet::ITCart => "itcart",
            RelationSet::IR => "ir",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().replace('_', "").as_str() {
            "itcart" => Some(RelationSet::ITCart),
            "ir" => Some(RelationSet::IR),
            _ => None,
        }
    }

    pub fn relations(self) -> Vec<Relation> {
        let all = all_relations();
        match self {
            RelationSet::IR => all,
            RelationSet::ITCart => all.into_iter().filter(|r| !r.crossing).collect(),
        }
    }
}

type Side = fn(&CoefficientRing, &GradedScalar) -> Vec<Word>;

/// One relation `lhs = rhs`, each side a sum of words in a coefficient `x`.
#[derive(Clone, Copy)]
pub struct Relation {
    pub name: &'static str,
    /// Whether the relation moves a coefficient past a generator.
    pub crossing: bool,
    lhs: Side,
    rhs: Side,
}

impl std::fmt::Debug for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Relation({})", self.name)
    }
}

fn w(letters: Vec<Letter>) -> Word {
    Word::new(letters)
}

fn c(x: GradedScalar) -> Letter {
    Letter::Coeff(x)
}

use Letter::{D, F, V};

fn all_relations() -> Vec<Relation> {
    vec![
        Relation {
            name: "fv = p",
            crossing: false,
            lhs: |_, _| vec![w(vec![F, V])],
            rhs: |a, _| vec![w(vec![c(a.from_int(a.prime() as i64))])],
        },
        Relation {
            name: "df = p fd",
            crossing: false,
            lhs: |_, _| vec![w(vec![D, F])],
            rhs: |a, _| vec![w(vec![c(a.from_int(a.prime() as i64)), F, D])],
        },
        Relation {
            name: "vd = p dv",
            crossing: false,
            lhs: |_, _| vec![w(vec![V, D])],
            rhs: |a, _| vec![w(vec![c(a.from_int(a.prime() as i64)), D, V])],
        },
        Relation {
            name: "fdv = d + eta",
            crossing: false,
            lhs: |_, _| vec![w(vec![F, D, V])],
            rhs: |a, _| vec![w(vec![D]), w(vec![c(a.eta())])],
        },
        Relation {
            name: "dd = eta d",
            crossing: false,
            lhs: |_, _| vec![w(vec![D, D])],
            rhs: |a, _| vec![w(vec![c(a.eta()), D])],
        },
        Relation {
            name: "vxf = V(x)",
            crossing: true,
            lhs: |_, x| vec![w(vec![V, c(x.clone()), F])],
            rhs: |a, x| vec![w(vec![c(a.verschiebung(x))])],
        },
        Relation {
            name: "fx = F(x) f",
            crossing: true,
            lhs: |_, x| vec![w(vec![F, c(x.clone())])],
            rhs: |a, x| vec![w(vec![c(a.frobenius(x)), F])],
        },
        Relation {
            name: "xv = v F(x)",
            crossing: true,
            lhs: |_, x| vec![w(vec![c(x.clone()), V])],
            rhs: |a, x| vec![w(vec![V, c(a.frobenius(x))])],
        },
        Relation {
            name: "dx = d(x) + (-1)^|x| xd",
            crossing: true,
            lhs: |_, x| vec![w(vec![D, c(x.clone())])],
            rhs: |a, x| vec![w(vec![c(a.differential(x))]), w(vec![c(a.parity(x)), D])],
        },
    ]
}

impl Relation {
    pub fn lhs_words(&self, a: &CoefficientRing, x: &GradedScalar) -> Vec<Word> {
        (self.lhs)(a, x)
    }

    pub fn rhs_words(&self, a: &CoefficientRing, x: &GradedScalar) -> Vec<Word> {
        (self.rhs)(a, x)
    }

    fn eval_side(ring: &Arc<CrRing>, words: &[Word]) -> CrElement {
        words.iter().fold(CrElement::zero(ring), |acc, w| {
            acc.add_unchecked(&w.eval(ring).expect("relation words use ring coefficients"))
        })
    }

    /// Both sides evaluated in `ring` for the instantiation `x`.
    pub fn evaluate(&self, ring: &Arc<CrRing>, x: &GradedScalar) -> (CrElement, CrElement) {
        let a = ring.coeffs();
        (
            Self::eval_side(ring, &self.lhs_words(a, x)),
            Self::eval_side(ring, &self.rhs_words(a, x)),
        )
    }

    /// `lhs - rhs`.
    pub fn defect(&self, ring: &Arc<CrRing>, x: &GradedScalar) -> CrElement {
        let (l, r) = self.evaluate(ring, x);
        l.add_unchecked(&r.neg())
    }

    pub fn render(&self, a: &CoefficientRing, x: &GradedScalar) -> String {
        let side = |ws: Vec<Word>| ws.iter().map(|w| w.display(a).to_string()).collect::<Vec<_>>().join(" + ");
        format!("{} = {}", side(self.lhs_words(a, x)), side(self.rhs_words(a, x)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub sample: usize,
    /// The instantiated relation, as words.
    pub relation: String,
    pub x: String,
    /// Right context `y` multiplied onto both sides, when one was used.
    pub context: Option<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationResult {
    pub name: &'static str,
    pub checked: usize,
    pub failures: usize,
    pub counterexample: Option<Counterexample>,
}

impl RelationResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub ring: String,
    pub rules: RelationSet,
    pub samples: usize,
    pub seed: u64,
    pub results: Vec<RelationResult>,
}

impl RelationReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(RelationResult::passed)
    }
}

/// Checks every relation of `rules` on `samples` random instantiations.
///
/// Sample `s` draws a homogeneous coefficient `x` and a homogeneous right
/// context `y` and checks both `lhs = rhs` and `lhs*y = rhs*y`.
pub fn relation_suite(
    ring: &Arc<CrRing>,
    rules: RelationSet,
    samples: usize,
    seed: u64,
    exec: Execution,
) -> RelationReport {
    let a = ring.coeffs().clone();
    let relations = rules.relations();
    let per_sample = map_indices(exec, samples, |s| {
        let mut rng = sample_rng(seed, s as u64);
        let x = a.random_any_homogeneous(&mut rng);
        let y = a.random_any_homogeneous(&mut rng);
        let y_el = CrElement::from_scalar(ring, y.clone()).unwrap();
        relations
            .iter()
            .map(|rel| {
                let (l, r) = rel.evaluate(ring, &x);
                let mismatch = if l != r {
                    Some((None, l, r))
                } else {
                    let (ly, ry) = (l.mul(&y_el).unwrap(), r.mul(&y_el).unwrap());
                    (ly != ry).then(|| (Some(y.clone()), ly, ry))
                };
                mismatch.map(|(ctx, l, r)| Counterexample {
                    sample: s,
                    relation: rel.render(&a, &x),
                    x: crate::lang::print_scalar(&a, &x),
                    context: ctx.map(|y| crate::lang::print_scalar(&a, &y)),
                    lhs: crate::lang::print(&l),
                    rhs: crate::lang::print(&r),
                })
            })
            .collect::<Vec<_>>()
    });
    let results = relations
        .iter()
        .enumerate()
        .map(|(k, rel)| {
            let mut failures = per_sample.iter().filter(|row| row[k].is_some());
            let counterexample = failures.next().and_then(|row| row[k].clone());
            RelationResult {
                name: rel.name,
                checked: samples,
                failures: counterexample.is_some() as usize + failures.count(),
                counterexample,
            }
        })
        .collect();
    RelationReport {
        ring: a.descriptor().label(),
        rules,
        samples,
        seed,
        results,
    }
}

/// A violation of `m (lhs - rhs) m' = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContextFailure {
    pub relation: &'static str,
    pub left: String,
    pub right: String,
    pub x: String,
    pub value: String,
}

/// Checks `m (lhs - rhs) m' = 0` for every `I_R` relation and all basis
/// monomials `m, m'` of index at most `max_index`, with `samples` random
/// coefficients `x` (and random monomial coefficients) per relation.
pub fn contextual_soundness(
    ring: &Arc<CrRing>,
    max_index: u32,
    samples: usize,
    seed: u64,
    exec: Execution,
) -> Vec<ContextFailure> {
    let a = ring.coeffs().clone();
    let monos = basis(max_index, None);
    let relations = RelationSet::IR.relations();
    let jobs: Vec<(usize, usize)> = (0..relations.len()).flat_map(|r| (0..samples).map(move |s| (r, s))).collect();
    map_indices(exec, jobs.len(), |k| {
        let (ri, s) = jobs[k];
        let rel = &relations[ri];
        let mut rng = sample_rng(seed, k as u64);
        let x = a.random_any_homogeneous(&mut rng);
        let defect = rel.defect(ring, &x);
        let mut out = Vec::new();
        for &m in &monos {
            // unit coefficients on the first sample, random ones afterwards
            let cm = if s == 0 { a.one() } else { a.random_any_homogeneous(&mut rng) };
            let left = CrElement::monomial(ring, m, cm).unwrap();
            let ld = left.mul(&defect).unwrap();
            for &m2 in &monos {
                let cm2 = if s == 0 { a.one() } else { random_nonzero(&a, &mut rng) };
                let right = CrElement::monomial(ring, m2, cm2).unwrap();
                let value = ld.mul(&right).unwrap();
                if !value.is_zero() {
                    out.push(ContextFailure {
                        relation: rel.name,
                        left: crate::lang::print(&left),
                        right: crate::lang::print(&right),
                        x: crate::lang::print_scalar(&a, &x),
                        value: crate::lang::print(&value),
                    });
                }
            }
        }
        out
    })
    .into_iter()
    .flatten()
    .collect()
}

fn random_nonzero<R: Rng + ?Sized>(a: &CoefficientRing, rng: &mut R) -> GradedScalar {
    loop {
        let x = a.random_any_homogeneous(rng);
        if !x.is_zero() {
            return x;
        }
    }
}
