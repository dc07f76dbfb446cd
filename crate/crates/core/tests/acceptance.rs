//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the test harness so the report always prints; exits
//! nonzero if any criterion fails.

use std::sync::Arc;
use std::time::{Duration, Instant};

use cartier::action::{consistency_check, Tautological};
use cartier::coefficients::{CoefficientRing, RingDescriptor};
use cartier::crring::{basis, contextual_soundness, relation_suite, RelationSet};
use cartier::exec::{sample_rng, Execution};
use cartier::lang::{decode, encode, parse_element, print};
use cartier::witt::{universal_polys, IntPolynomial, WittBase, WittVector};
use cartier::{CrElement, CrRing, Fault, Letter, Monomial, Word};
use num_bigint::BigInt;
use rand::Rng;

const SEED: u64 = 20240601;

type Outcome = Result<String, String>;

fn coeffs(d: RingDescriptor) -> Arc<CoefficientRing> {
    CoefficientRing::new(d).unwrap()
}

fn ring(d: RingDescriptor) -> Arc<CrRing> {
    CrRing::new(coeffs(d))
}

fn suite_rings() -> Vec<RingDescriptor> {
    vec![
        RingDescriptor::witt_fp(2, 3),
        RingDescriptor::witt_fp(3, 3),
        RingDescriptor::witt_perfect(3, 9, 2),
        RingDescriptor::formal_eta(),
    ]
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let took = start.elapsed();
    if took > limit {
        Err(format!("took {:.2?}, limit {:?}", took, limit))
    } else {
        Ok(())
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_relation_suite() -> Outcome {
    let start = Instant::now();
    let mut labels = Vec::new();
    for d in suite_rings() {
        let rep = relation_suite(&ring(d), RelationSet::IR, 100, SEED, Execution::Parallel);
        check(rep.results.len() == 9, || "expected nine relations".into())?;
        if let Some(bad) = rep.results.iter().find(|r| !r.passed()) {
            return Err(format!("{}: {} fails: {:?}", rep.ring, bad.name, bad.counterexample));
        }
        labels.push(rep.ring);
    }
    within(Duration::from_secs(10), start)?;
    Ok(format!("9 relations x 100 samples on {} in {:.2?}", labels.join(", "), start.elapsed()))
}

fn c2_classical() -> Outcome {
    let witt_type = [
        RingDescriptor::witt_fp(2, 3),
        RingDescriptor::witt_fp(3, 3),
        RingDescriptor::witt_perfect(3, 9, 2),
        RingDescriptor::witt_perfect(2, 4, 2),
    ];
    for d in witt_type {
        let r = ring(d);
        let a = r.coeffs().clone();
        check(a.eta().is_zero(), || "eta must vanish".into())?;
        let dd = parse_element("d*d", &r).unwrap();
        check(dd.is_zero(), || format!("{}: dd = {}", d.label(), print(&dd)))?;
        for s in 0..100 {
            let mut rng = sample_rng(SEED, s);
            let x = a.random(&mut rng);
            check(a.differential(&x).is_zero(), || "d_A must vanish".into())?;
            let dx = Word::new(vec![Letter::D, Letter::Coeff(x.clone())]).eval(&r).unwrap();
            let xd = Word::new(vec![Letter::Coeff(x.clone()), Letter::D]).eval(&r).unwrap();
            check(dx == xd, || format!("{}: dx = {} but xd = {}", d.label(), print(&dx), print(&xd)))?;
        }
        let rep = relation_suite(&r, RelationSet::IR, 100, SEED, Execution::Parallel);
        check(rep.all_passed(), || format!("{}: relation suite failed", d.label()))?;
    }
    Ok("dd = 0, dx = xd and the full relation table on 4 Witt-type rings, 100 x each".into())
}

fn c3_basis() -> Outcome {
    for m in [0u32, 1, 5, 20] {
        let got = basis(m, None);
        let mut want = Vec::new();
        for i in 0..=m {
            want.push(if i == 0 { Monomial::One } else { Monomial::Vpow(i) });
            want.push(Monomial::Dv(i));
        }
        for j in 1..=m {
            want.push(Monomial::Fpow(j));
            want.push(Monomial::Fd(j));
        }
        let (mut g, mut w) = (got.clone(), want);
        g.sort();
        w.sort();
        check(g == w, || format!("M = {}: wrong monomials", m))?;
        check(got.len() as u32 == 2 * (2 * m + 1), || format!("M = {}: {} monomials", m, got.len()))?;
    }
    Ok("2(2M+1) monomials for M in {0, 1, 5, 20}".into())
}

fn random_element(r: &Arc<CrRing>, rng: &mut impl Rng) -> CrElement {
    let terms = rng.gen_range(1..=4);
    CrElement::random(r, 4, terms, rng)
}

fn c4_associativity() -> Outcome {
    let start = Instant::now();
    let rings = [
        RingDescriptor::witt_fp(2, 2),
        RingDescriptor::witt_fp(3, 3),
        RingDescriptor::formal_eta(),
    ];
    for d in rings {
        let r = ring(d);
        let bad = cartier::exec::map_indices(Execution::Parallel, 1000, |s| {
            let mut rng = sample_rng(SEED, s as u64);
            let (a, b, c) = (
                random_element(&r, &mut rng),
                random_element(&r, &mut rng),
                random_element(&r, &mut rng),
            );
            let left = a.mul(&b).unwrap().mul(&c).unwrap();
            let right = a.mul(&b.mul(&c).unwrap()).unwrap();
            let (da, db) = (rng.gen_range(0..3), rng.gen_range(0..3));
            let x = CrElement::random_homogeneous(&r, 4, 3, da, &mut rng);
            let y = CrElement::random_homogeneous(&r, 4, 3, db, &mut rng);
            let xy = x.mul(&y).unwrap();
            let graded = xy.is_zero() || xy.degree() == Some(da + db);
            (left != right || !graded).then(|| format!("({}) ({}) ({})", print(&a), print(&b), print(&c)))
        });
        if let Some(w) = bad.into_iter().flatten().next() {
            return Err(format!("{}: {}", d.label(), w));
        }
    }
    within(Duration::from_secs(30), start)?;
    Ok(format!("1000 triples on W_2(F_2), W_3(F_3), formal-eta in {:.2?}", start.elapsed()))
}

fn c5_ghost() -> Outcome {
    for p in [2u64, 3] {
        for s in 0..500 {
            let mut rng = sample_rng(SEED + p, s);
            let mut draw = || {
                let cs: Vec<i64> = (0..4).map(|_| rng.gen_range(-9..=9)).collect();
                WittVector::from_i64(p, WittBase::Integers, &cs).unwrap()
            };
            let (a, b) = (draw(), draw());
            let (ga, gb) = (a.ghost(), b.ghost());
            let sum: Vec<BigInt> = ga.iter().zip(&gb).map(|(x, y)| x + y).collect();
            let prod: Vec<BigInt> = ga.iter().zip(&gb).map(|(x, y)| x * y).collect();
            check(a.add(&b).unwrap().ghost() == sum, || format!("p={}: ghost(a+b) for {} {}", p, a, b))?;
            check(a.mul(&b).unwrap().ghost() == prod, || format!("p={}: ghost(ab) for {} {}", p, a, b))?;
        }
    }
    let var = |i| IntPolynomial::var(4, i);
    let (x0, x1, y0, y1) = (var(0), var(1), var(2), var(3));
    let s1 = x1.add(&y1).sub(&x0.mul(&y0));
    check(universal_polys(2, 2).unwrap().sum[1] == s1, || "S_1 differs".into())?;
    for p in [2u64, 3, 5, 7] {
        let p1 = x0
            .pow(p)
            .mul(&y1)
            .add(&x1.mul(&y0.pow(p)))
            .add(&x1.mul(&y1).scale(&BigInt::from(p)));
        check(universal_polys(p, 2).unwrap().product[1] == p1, || format!("P_1 differs at p = {}", p))?;
    }
    Ok("ghost map is a ring map on 2 x 500 pairs; S_1 and P_1 match".into())
}

fn c6_witt_identities() -> Outcome {
    for (p, q) in [(2u64, 2u64), (3, 3), (3, 9)] {
        let base = WittBase::field(p, q).unwrap();
        let k = match &base {
            WittBase::Field(k) => k.clone(),
            _ => unreachable!(),
        };
        let n = 3;
        let one = WittVector::one(p, base.clone(), n).unwrap();
        check(one.verschiebung() == one.scale(p as i64).unwrap(), || format!("V(1) != p over F_{}", q))?;
        for s in 0..200 {
            let mut rng = sample_rng(SEED ^ q, s);
            let mut draw = || {
                let cs: Vec<i64> = (0..n).map(|_| rng.gen_range(0..q) as i64).collect();
                WittVector::from_i64(p, base.clone(), &cs).unwrap()
            };
            let (x, y) = (draw(), draw());
            let fv = x.verschiebung().frobenius().unwrap();
            check(fv == x.scale(p as i64).unwrap(), || format!("FV x != p x for {} over F_{}", x, q))?;
            let lhs = x.verschiebung().mul(&y).unwrap();
            let rhs = x.mul(&y.frobenius().unwrap()).unwrap().verschiebung();
            check(lhs == rhs, || format!("projection formula fails at {}, {} over F_{}", x, y, q))?;
            let (s, t) = (rng.gen_range(0..q), rng.gen_range(0..q));
            let tm = |z: u64| WittVector::teichmuller(p, base.clone(), BigInt::from(z), n).unwrap();
            check(tm(s).mul(&tm(t)).unwrap() == tm(k.mul(s, t)), || {
                format!("[{}][{}] != [{}] over F_{}", s, t, k.mul(s, t), q)
            })?;
        }
    }
    Ok("FV = p, V(1) = p, projection formula, Teichmuller on F_2, F_3, F_9, 200 x each".into())
}

fn c7_consistency() -> Outcome {
    let start = Instant::now();
    for d in [RingDescriptor::witt_fp(3, 3), RingDescriptor::formal_eta()] {
        let a = coeffs(d);
        let m = Tautological::new(a.clone()).map_err(|e| e.to_string())?;
        let rep = consistency_check(&m, &CrRing::new(a), 500, 8, SEED, Execution::Parallel);
        check(rep.passed(), || format!("{}: {:?}", rep.ring, rep.witnesses.first()))?;
    }
    Ok(format!("500 words of length <= 8 on W_3(F_3) and formal-eta in {:.2?}", start.elapsed()))
}

fn c8_contextual() -> Outcome {
    let start = Instant::now();
    for d in suite_rings() {
        let failures = contextual_soundness(&ring(d), 3, 3, SEED, Execution::Parallel);
        if let Some(f) = failures.first() {
            return Err(format!("{}: {:?}", d.label(), f));
        }
    }
    Ok(format!(
        "m (lhs - rhs) m' = 0 for 9 relations, 14 x 14 monomials, 4 rings in {:.2?}",
        start.elapsed()
    ))
}

fn c9_round_trips() -> Outcome {
    for d in suite_rings().into_iter().chain([RingDescriptor::zmod(5, 2)]) {
        let r = ring(d);
        for s in 0..200 {
            let mut rng = sample_rng(SEED, s);
            let terms = rng.gen_range(0..6);
            let e = CrElement::random(&r, 5, terms, &mut rng);
            let text = print(&e);
            let back = parse_element(&text, &r).map_err(|err| format!("{}: {}", text, err))?;
            check(back == e, || format!("{}: print/parse changed {}", d.label(), text))?;
            check(print(&back) == text, || format!("{}: {} re-normalizes differently", d.label(), text))?;
            let doc = encode(&e);
            check(decode(&doc).map_err(|e| e.to_string())? == e, || format!("{}: decode(encode) differs", d.label()))?;
        }
    }
    Ok("print/parse and encode/decode on 5 rings x 200 elements".into())
}

fn c10_negative_controls() -> Outcome {
    let mut lines = Vec::new();
    for fault in Fault::ALL {
        let mut caught_by = Vec::new();
        for d in suite_rings() {
            let bad = CrRing::with_fault(coeffs(d), fault);
            if !relation_suite(&bad, RelationSet::IR, 100, SEED, Execution::Parallel).all_passed() {
                caught_by.push(format!("suite 1 on {}", d.label()));
            }
        }
        for d in [RingDescriptor::witt_fp(3, 3), RingDescriptor::formal_eta()] {
            let a = coeffs(d);
            let m = Tautological::new(a.clone()).unwrap();
            let bad = CrRing::with_fault(a, fault);
            if !consistency_check(&m, &bad, 500, 8, SEED, Execution::Parallel).passed() {
                caught_by.push(format!("suite 7 on {}", d.label()));
            }
        }
        if caught_by.is_empty() {
            return Err(format!("{} survives both suites", fault.name()));
        }
        lines.push(format!("{}: {}", fault.name(), caught_by.join(", ")));
    }
    Ok(format!("all 9 corruptions detected\n      {}", lines.join("\n      ")))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("relation suite", c1_relation_suite),
        ("classical specialization", c2_classical),
        ("additive decomposition", c3_basis),
        ("associativity and grading", c4_associativity),
        ("Witt ghost oracle", c5_ghost),
        ("Witt identities", c6_witt_identities),
        ("action consistency", c7_consistency),
        ("contextual relation soundness", c8_contextual),
        ("round-trips", c9_round_trips),
        ("negative controls", c10_negative_controls),
    ];
    let mut failed = Vec::new();
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {}: {}", k + 1, name, detail),
            Err(why) => {
                println!("FAIL {:>2} {}: {}", k + 1, name, why);
                failed.push(k + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {:?}", failed);
        std::process::exit(1);
    }
}
