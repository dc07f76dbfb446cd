use std::sync::Arc;

use cartier::action::{act_element, act_word, consistency_check, CartierModule, Tautological};
use cartier::coefficients::{CoefficientRing, RingDescriptor};
use cartier::exec::Execution;
use cartier::lang::parse_element;
use cartier::{CrElement, CrRing, Fault, Letter, Word};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn setup(d: RingDescriptor) -> (Tautological, Arc<CrRing>) {
    let a = CoefficientRing::new(d).unwrap();
    (Tautological::new(a.clone()).unwrap(), CrRing::new(a))
}

#[test]
fn tautological_examples() {
    let (m, r) = setup(RingDescriptor::witt_fp(2, 2));
    let a = m.coeffs().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..50 {
        let x = a.random(&mut rng);
        let y = a.random(&mut rng);
        assert_eq!(m.op_f(&m.op_v(&x)), a.scale(2, &x));
        assert!(m.op_d(&x).is_zero());
        assert_eq!(m.op_v(&a.mul(&m.op_f(&x), &y)), a.mul(&x, &m.op_v(&y)));
        assert_eq!(act_element(&m, &CrElement::one(&r), &x).unwrap(), x);
        let c = CrElement::from_scalar(&r, y.clone()).unwrap();
        assert_eq!(act_element(&m, &c, &x).unwrap(), a.mul(&y, &x));
    }
}

#[test]
fn fdv_acts_as_d_classically() {
    let (m, r) = setup(RingDescriptor::witt_fp(3, 3));
    let a = m.coeffs().clone();
    let x = a.from_int(7);
    let w = Word::new(vec![Letter::F, Letter::D, Letter::V]);
    assert_eq!(act_word(&m, &w, &x).unwrap(), a.zero());
    assert_eq!(act_element(&m, &parse_element("fdv", &r).unwrap(), &x).unwrap(), a.zero());
}

#[test]
fn consistency_on_all_instances() {
    for d in [
        RingDescriptor::witt_fp(3, 3),
        RingDescriptor::witt_perfect(3, 9, 2),
        RingDescriptor::zmod(2, 5),
        RingDescriptor::formal_eta(),
    ] {
        let (m, r) = setup(d);
        let rep = consistency_check(&m, &r, 300, 8, 21, Execution::Parallel);
        assert!(rep.passed(), "{:?}", rep.witnesses);
    }
}

#[test]
fn faulty_normalizer_is_caught_by_the_action() {
    let a = CoefficientRing::new(RingDescriptor::witt_fp(3, 3)).unwrap();
    let m = Tautological::new(a.clone()).unwrap();
    let bad = CrRing::with_fault(a, Fault::FvPlusOne);
    let rep = consistency_check(&m, &bad, 300, 8, 1, Execution::Sequential);
    assert!(!rep.passed());
    assert!(!rep.witnesses.is_empty());
}

#[test]
fn foreign_elements_are_rejected() {
    let (m, _) = setup(RingDescriptor::witt_fp(3, 3));
    let (_, other) = setup(RingDescriptor::witt_fp(2, 3));
    let x = m.coeffs().one();
    assert!(act_element(&m, &CrElement::gen_v(&other), &x).is_err());
    let foreign = Word::new(vec![Letter::Coeff(other.coeffs().one())]);
    assert!(act_word(&m, &foreign, &x).is_err());
}
