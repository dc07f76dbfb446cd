use crate::coefficients::{CoefficientRing, GradedScalar};
use crate::crring::{CrElement, Monomial, Part};

fn term_text(a: &CoefficientRing, m: Monomial, part: Part, c: &GradedScalar) -> String {
    let mono = m.to_string();
    if let Some(k) = a.as_integer(c) {
        return match (k, m) {
            (1, _) => mono,
            (_, Monomial::One) => k.to_string(),
            _ => format!("{}*{}", k, mono),
        };
    }
    let (deg, code) = c.raw_parts()[0];
    let lit = a.render_component(deg, code);
    match m {
        Monomial::One => lit,
        _ if part.coefficient_on_right() => format!("{}*{}", mono, lit),
        _ => format!("{}*{}", lit, mono),
    }
}

/// Canonical text of an element; equal elements print identically and the
/// output parses back to the same element.
pub fn print(e: &CrElement) -> String {
    let a = e.ring().coeffs();
    let mut terms: Vec<(i32, Part, u32, String)> = Vec::new();
    for (m, c) in e.terms() {
        let (part, idx) = m.split();
        for comp in c.components() {
            let deg = comp.degree().unwrap();
            terms.push((deg, part, idx, term_text(a, m, part, &comp)));
        }
    }
    if terms.is_empty() {
        return "0".to_string();
    }
    terms.sort_by_key(|t| (t.0, t.1, t.2));
    terms.into_iter().map(|t| t.3).collect::<Vec<_>>().join(" + ")
}

/// Text of a coefficient on its own.
pub fn print_scalar(a: &CoefficientRing, x: &GradedScalar) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.components()
        .map(|comp| match a.as_integer(&comp) {
            Some(k) => k.to_string(),
            None => {
                let (deg, code) = comp.raw_parts()[0];
                a.render_component(deg, code)
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}
