use std::sync::Arc;

use cartier::coefficients::{CoefficientRing, RingDescriptor};
use cartier::crring::{basis, multiplication_table, relation_suite, Part, RelationSet};
use cartier::exec::Execution;
use cartier::lang::{parse_element, print};
use cartier::{CrElement, CrRing, Fault, Letter, Monomial, Word};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ring(d: RingDescriptor) -> Arc<CrRing> {
    CrRing::new(CoefficientRing::new(d).unwrap())
}

fn el(r: &Arc<CrRing>, s: &str) -> CrElement {
    parse_element(s, r).unwrap()
}

fn rings() -> Vec<Arc<CrRing>> {
    vec![
        ring(RingDescriptor::witt_fp(2, 2)),
        ring(RingDescriptor::witt_fp(3, 3)),
        ring(RingDescriptor::witt_perfect(3, 9, 2)),
        ring(RingDescriptor::formal_eta()),
    ]
}

#[test]
fn constructors() {
    let r = ring(RingDescriptor::witt_fp(3, 2));
    let v = CrElement::gen_v(&r);
    assert_eq!(CrElement::one(&r).mul(&v).unwrap(), v);
    assert_eq!(CrElement::gen_d(&r).degree(), Some(1));
    assert_eq!(v.coefficient(Monomial::Vpow(1)), r.coeffs().one());
    assert_eq!(CrElement::gen_f(&r).coefficient(Monomial::Fpow(1)), r.coeffs().one());
}

#[test]
fn defining_products() {
    for r in rings() {
        let a = r.coeffs().clone();
        let p = a.prime() as i64;
        let (v, f, d) = (CrElement::gen_v(&r), CrElement::gen_f(&r), CrElement::gen_d(&r));
        assert_eq!(f.mul(&v).unwrap(), CrElement::from_int(&r, p));
        let p_el = CrElement::from_int(&r, p);
        let fd = CrElement::monomial(&r, Monomial::Fd(1), a.one()).unwrap();
        assert_eq!(d.mul(&f).unwrap(), p_el.mul(&fd).unwrap());
        assert_eq!(v.mul(&f).unwrap(), CrElement::from_scalar(&r, a.verschiebung(&a.one())).unwrap());
        let eta_d = CrElement::from_scalar(&r, a.eta()).unwrap().mul(&d).unwrap();
        assert_eq!(d.mul(&d).unwrap(), eta_d);
        let dv = CrElement::monomial(&r, Monomial::Dv(1), a.one()).unwrap();
        assert_eq!(v.mul(&d).unwrap(), p_el.mul(&dv).unwrap());
        assert_eq!(d.mul(&v).unwrap(), dv);
    }
}

#[test]
fn vxf_collapses_to_verschiebung() {
    let r = ring(RingDescriptor::witt_perfect(3, 9, 2));
    let a = r.coeffs().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..50 {
        let x = a.random(&mut rng);
        let w = Word::new(vec![Letter::V, Letter::Coeff(x.clone()), Letter::F]);
        assert_eq!(w.eval(&r).unwrap(), CrElement::from_scalar(&r, a.verschiebung(&x)).unwrap());
    }
}

#[test]
fn word_examples() {
    let odd = ring(RingDescriptor::witt_fp(3, 2));
    assert_eq!(el(&odd, "f d v"), CrElement::gen_d(&odd));
    let eta = ring(RingDescriptor::formal_eta());
    assert_eq!(print(&el(&eta, "fdv")), "d + eta");
    let two = ring(RingDescriptor::witt_fp(2, 3));
    assert_eq!(print(&el(&two, "vd")), "2*d*v");
    let f9 = ring(RingDescriptor::witt_perfect(3, 9, 2));
    let a = f9.coeffs().clone();
    let x = a.from_coords(&[3, 1]).unwrap();
    let fx = CrElement::monomial(&f9, Monomial::Fpow(1), a.frobenius(&x)).unwrap();
    assert_eq!(el(&f9, "f*W[3,1]"), fx);
    assert_ne!(a.frobenius(&x), x);
}

#[test]
fn classical_specialization() {
    for d in [
        RingDescriptor::witt_fp(2, 3),
        RingDescriptor::witt_fp(3, 3),
        RingDescriptor::witt_perfect(3, 9, 2),
        RingDescriptor::zmod(5, 2),
    ] {
        let r = ring(d);
        let a = r.coeffs().clone();
        assert!(el(&r, "d*d").is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let x = Letter::Coeff(a.random(&mut rng));
            let dx = Word::new(vec![Letter::D, x.clone()]).eval(&r).unwrap();
            let xd = Word::new(vec![x, Letter::D]).eval(&r).unwrap();
            assert_eq!(dx, xd);
        }
    }
}

#[test]
fn degree_split() {
    let r = ring(RingDescriptor::witt_fp(2, 2));
    let dv = el(&r, "d*v");
    let parts = el(&r, "v*d").homogeneous_parts();
    assert_eq!(parts.len(), 1);
    assert_eq!(parts[&1], dv.add(&dv).unwrap());
    let e = ring(RingDescriptor::formal_eta());
    let x = el(&e, "eta + v*W[1,1] + d*f");
    let parts = x.homogeneous_parts();
    assert_eq!(parts.keys().copied().collect::<Vec<_>>(), vec![0, 1]);
    let resum = parts.values().fold(CrElement::zero(&e), |acc, p| acc.add(p).unwrap());
    assert_eq!(resum, x);
}

#[test]
fn basis_windows() {
    for m in [0u32, 1, 5, 20] {
        let b = basis(m, None);
        assert_eq!(b.len() as u32, 2 * (2 * m + 1));
        assert_eq!(basis(m, Some(0)).len() + basis(m, Some(1)).len(), b.len());
    }
}

#[test]
fn relation_suites_are_deterministic_across_strategies() {
    let r = ring(RingDescriptor::formal_eta());
    let a = relation_suite(&r, RelationSet::IR, 40, 17, Execution::Sequential);
    let b = relation_suite(&r, RelationSet::IR, 40, 17, Execution::Parallel);
    assert_eq!(a, b);
    assert!(a.all_passed());
}

#[test]
fn every_fault_breaks_a_relation_somewhere() {
    for fault in Fault::ALL {
        let caught = [
            RingDescriptor::witt_fp(3, 3),
            RingDescriptor::witt_perfect(3, 9, 2),
            RingDescriptor::formal_eta(),
        ]
        .into_iter()
        .any(|d| {
            let bad = CrRing::with_fault(CoefficientRing::new(d).unwrap(), fault);
            !relation_suite(&bad, RelationSet::IR, 50, 3, Execution::Sequential).all_passed()
        });
        assert!(caught, "{:?} went unnoticed", fault);
    }
}

#[test]
fn golden_tables() {
    for (d, file) in [
        (RingDescriptor::witt_fp(2, 3), include_str!("golden/table_w3_f2.txt")),
        (RingDescriptor::formal_eta(), include_str!("golden/table_formal_eta.txt")),
    ] {
        assert_eq!(render_table(&ring(d), 2), file);
    }
}

fn render_table(r: &Arc<CrRing>, max: u32) -> String {
    multiplication_table(r, max)
        .into_iter()
        .map(|(m, n, e)| format!("{} * {} = {}\n", m, n, print(&e)))
        .collect()
}

fn random_element(r: &Arc<CrRing>, rng: &mut ChaCha8Rng) -> CrElement {
    let terms = rng.gen_range(0..4);
    CrElement::random(r, 4, terms, rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn associativity_and_unit(which in 0usize..4, seed in any::<u64>()) {
        let r = &rings()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (random_element(r, &mut rng), random_element(r, &mut rng), random_element(r, &mut rng));
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        let one = CrElement::one(r);
        prop_assert_eq!(one.mul(&a).unwrap(), a.clone());
        prop_assert_eq!(a.mul(&one).unwrap(), a.clone());
    }

    #[test]
    fn bilinearity(which in 0usize..4, seed in any::<u64>()) {
        let r = &rings()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (random_element(r, &mut rng), random_element(r, &mut rng), random_element(r, &mut rng));
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().mul(&c).unwrap(), a.mul(&c).unwrap().add(&b.mul(&c).unwrap()).unwrap());
        prop_assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn grading(which in 0usize..4, seed in any::<u64>(), da in 0i32..3, db in 0i32..3) {
        let r = &rings()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = CrElement::random_homogeneous(r, 4, 3, da, &mut rng);
        let b = CrElement::random_homogeneous(r, 4, 3, db, &mut rng);
        let ab = a.mul(&b).unwrap();
        prop_assert!(ab.is_zero() || ab.degree() == Some(da + db));
    }

    #[test]
    fn basis_products_stay_in_the_four_families(which in 0usize..4, seed in any::<u64>()) {
        let r = &rings()[which];
        let a = r.coeffs().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let monos = basis(4, None);
        let m = monos[rng.gen_range(0..monos.len())];
        let n = monos[rng.gen_range(0..monos.len())];
        let x = CrElement::monomial(r, m, a.random(&mut rng)).unwrap();
        let y = CrElement::monomial(r, n, a.random(&mut rng)).unwrap();
        let xy = x.mul(&y).unwrap();
        for part in Part::ALL {
            for (&i, c) in xy.part(part) {
                prop_assert!(!c.is_zero());
                prop_assert!(Monomial::from_part(part, i).is_some());
                prop_assert!(i <= m.index() + n.index());
            }
        }
    }
}
