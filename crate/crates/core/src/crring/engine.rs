// Product of normal forms.
//
// `a * b` is computed term by term on `a`: each basis term of `a` is a short
// word in the letters v, f, d and a coefficient, and each letter acts on a
// normal form by left multiplication. The four left actions below move the
// letter past one basis shape at a time using the defining relations; their
// outputs are again in normal form.

use super::{CrElement, Fault, Part};
use crate::coefficients::GradedScalar;

fn faulty(e: &CrElement, fault: Fault) -> bool {
    e.ring.fault == Some(fault)
}

/// `x * e` for a coefficient `x` of any degree.
pub(crate) fn left_scalar(x: &GradedScalar, e: &CrElement) -> CrElement {
    let a = e.ring.coeffs.clone();
    let mut out = CrElement::zero(&e.ring);
    if x.is_zero() {
        return out;
    }
    let skip_f = faulty(e, Fault::XvSkipFrobenius);
    let keep_da = !faulty(e, Fault::DxDropDifferential);
    let frob = |k: u32, y: &GradedScalar| if skip_f { y.clone() } else { a.frobenius_pow(k, y) };

    // x v^i = v^i F^i(x)
    for (&i, y) in &e.v {
        out.push(Part::V, i, a.mul(&frob(i, x), y));
    }
    // x d = s(x) (d x - d_A(x))
    if !e.dv.is_empty() {
        let xs = a.parity(x);
        let dxs = a.differential(&xs);
        for (&i, y) in &e.dv {
            out.push(Part::Dv, i, a.mul(&frob(i, &xs), y));
            if keep_da {
                out.push(Part::V, i, a.neg(&a.mul(&frob(i, &dxs), y)));
            }
        }
    }
    for (&j, y) in &e.f {
        out.push(Part::F, j, a.mul(x, y));
    }
    for (&j, y) in &e.fd {
        out.push(Part::Fd, j, a.mul(x, y));
    }
    out
}

/// `v^k * e`.
pub(crate) fn left_v_pow(k: u32, e: &CrElement) -> CrElement {
    if k == 0 {
        return e.clone();
    }
    let a = e.ring.coeffs.clone();
    let mut out = CrElement::zero(&e.ring);
    let vd_factor = !faulty(e, Fault::VdNoFactor);
    let versch = !faulty(e, Fault::VxfSkipVerschiebung);
    let keep_da = !faulty(e, Fault::DxDropDifferential);
    let pk = |m: u32, y: &GradedScalar| if vd_factor { a.scale_prime_power(m, y) } else { y.clone() };
    let vpow = |m: u32, y: &GradedScalar| if versch { a.verschiebung_pow(m, y) } else { y.clone() };

    for (&i, y) in &e.v {
        out.push(Part::V, i + k, y.clone());
    }
    // v^k d = p^k d v^k
    for (&i, y) in &e.dv {
        out.push(Part::Dv, i + k, pk(k, y));
    }
    // v^k y f^j: absorb min(k, j) copies of v y f
    for (&j, y) in &e.f {
        if k < j {
            out.push(Part::F, j - k, vpow(k, y));
        } else {
            out.push(Part::V, k - j, vpow(j, y));
        }
    }
    for (&j, y) in &e.fd {
        if k < j {
            out.push(Part::Fd, j - k, vpow(k, y));
        } else {
            // v^m y' d with y' = V^j(y), m = k - j
            let m = k - j;
            let ys = a.parity(&vpow(j, y));
            out.push(Part::Dv, m, pk(m, &ys));
            if keep_da {
                out.push(Part::V, m, a.neg(&a.differential(&ys)));
            }
        }
    }
    out
}

/// `f * e`.
pub(crate) fn left_f(e: &CrElement) -> CrElement {
    let a = e.ring.coeffs.clone();
    let mut out = CrElement::zero(&e.ring);
    let p = a.prime() as i64;
    let fv = if faulty(e, Fault::FvPlusOne) { p + 1 } else { p };
    let skip_f = faulty(e, Fault::FxSkipFrobenius);
    let keep_eta = !faulty(e, Fault::FdvDropEta);
    let keep_da = !faulty(e, Fault::DxDropDifferential);
    let frob = |y: &GradedScalar| if skip_f { y.clone() } else { a.frobenius(y) };

    for (&i, y) in &e.v {
        if i == 0 {
            // f y = F(y) f
            out.push(Part::F, 1, frob(y));
        } else {
            out.push(Part::V, i - 1, a.scale(fv, y));
        }
    }
    for (&i, y) in &e.dv {
        if i == 0 {
            // f d y = F(d_A y) f + F(s(y) y) f d
            if keep_da {
                out.push(Part::F, 1, frob(&a.differential(y)));
            }
            out.push(Part::Fd, 1, frob(&a.parity(y)));
        } else {
            // f d v = d + eta, and eta v^m = v^m F^m(eta)
            out.push(Part::Dv, i - 1, y.clone());
            if keep_eta {
                let eta = a.eta();
                if !eta.is_zero() {
                    let eta_m = if faulty(e, Fault::XvSkipFrobenius) {
                        eta
                    } else {
                        a.frobenius_pow(i - 1, &eta)
                    };
                    out.push(Part::V, i - 1, a.mul(&eta_m, y));
                }
            }
        }
    }
    for (&j, y) in &e.f {
        out.push(Part::F, j + 1, frob(y));
    }
    for (&j, y) in &e.fd {
        out.push(Part::Fd, j + 1, frob(y));
    }
    out
}

pub(crate) fn left_f_pow(k: u32, e: &CrElement) -> CrElement {
    (0..k).fold(e.clone(), |acc, _| left_f(&acc))
}

/// `d * e`.
pub(crate) fn left_d(e: &CrElement) -> CrElement {
    let a = e.ring.coeffs.clone();
    let mut out = CrElement::zero(&e.ring);
    let dd = !faulty(e, Fault::DSquaredZero);
    let df_factor = !faulty(e, Fault::DfNoFactor);
    let keep_da = !faulty(e, Fault::DxDropDifferential);
    let pj = |j: u32, y: &GradedScalar| if df_factor { a.scale_prime_power(j, y) } else { y.clone() };

    for (&i, y) in &e.v {
        out.push(Part::Dv, i, y.clone());
    }
    // d d v^i y = eta d v^i y
    if dd && !e.dv.is_empty() {
        let mut dv_only = CrElement::zero(&e.ring);
        dv_only.dv = e.dv.clone();
        out.add_assign(&left_scalar(&a.eta(), &dv_only));
    }
    // d y f^j = d_A(y) f^j + s(y) y p^j f^j d
    for (&j, y) in &e.f {
        if keep_da {
            out.push(Part::F, j, a.differential(y));
        }
        out.push(Part::Fd, j, pj(j, &a.parity(y)));
    }
    // d y f^j d = d_A(y) f^j d + s(y) y p^j f^j (d d), with f^j eta = F^j(eta) f^j
    for (&j, y) in &e.fd {
        if keep_da {
            out.push(Part::Fd, j, a.differential(y));
        }
        if dd {
            let eta_j = a.frobenius_pow(j, &a.eta());
            out.push(Part::Fd, j, a.mul(&pj(j, &a.parity(y)), &eta_j));
        }
    }
    out
}

pub(crate) fn mul(x: &CrElement, y: &CrElement) -> CrElement {
    let mut out = CrElement::zero(&x.ring);
    if x.is_zero() || y.is_zero() {
        return out;
    }
    // v^i c * y = v^i (c y)
    for (&i, c) in &x.v {
        out.add_assign(&left_v_pow(i, &left_scalar(c, y)));
    }
    for (&i, c) in &x.dv {
        out.add_assign(&left_d(&left_v_pow(i, &left_scalar(c, y))));
    }
    if !x.f.is_empty() {
        let mut fy = y.clone();
        let mut at = 0;
        for (&j, c) in &x.f {
            fy = left_f_pow(j - at, &fy);
            at = j;
            out.add_assign(&left_scalar(c, &fy));
        }
    }
    if !x.fd.is_empty() {
        let mut fy = left_d(y);
        let mut at = 0;
        for (&j, c) in &x.fd {
            fy = left_f_pow(j - at, &fy);
            at = j;
            out.add_assign(&left_scalar(c, &fy));
        }
    }
    out
}
