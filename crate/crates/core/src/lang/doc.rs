use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::LangError;
use crate::coefficients::{CoefficientRing, RingDescriptor};
use crate::crring::{CrElement, CrRing, Monomial, Part};

/// One homogeneous piece of a coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub degree: i32,
    pub coords: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    /// `one`, `vpow`, `dv`, `fpow` or `fd`.
    pub shape: String,
    pub index: u32,
    pub coefficient: Vec<Component>,
}

/// Self-describing structured form of an element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub ring: RingDescriptor,
    pub v: Vec<TermRecord>,
    pub dv: Vec<TermRecord>,
    pub f: Vec<TermRecord>,
    pub fd: Vec<TermRecord>,
}

fn shape_name(m: Monomial) -> &'static str {
    match m {
        Monomial::One => "one",
        Monomial::Vpow(_) => "vpow",
        Monomial::Dv(_) => "dv",
        Monomial::Fpow(_) => "fpow",
        Monomial::Fd(_) => "fd",
    }
}

impl Document {
    pub fn from_element(e: &CrElement) -> Self {
        let a = e.ring().coeffs();
        let records = |part: Part| {
            e.part(part)
                .iter()
                .map(|(&i, c)| TermRecord {
                    shape: shape_name(Monomial::from_part(part, i).unwrap()).to_string(),
                    index: i,
                    coefficient: c
                        .raw_parts()
                        .iter()
                        .map(|&(degree, code)| Component {
                            degree,
                            coords: a.component_coords(code),
                        })
                        .collect(),
                })
                .collect()
        };
        Document {
            ring: *a.descriptor(),
            v: records(Part::V),
            dv: records(Part::Dv),
            f: records(Part::F),
            fd: records(Part::Fd),
        }
    }

    /// Rebuilds the element in `ring`, which must match the embedded descriptor.
    pub fn to_element(&self, ring: &Arc<CrRing>) -> Result<CrElement, LangError> {
        let bad = |msg: String| LangError::Document(msg);
        if ring.coeffs().descriptor() != &self.ring {
            return Err(bad(format!(
                "document ring {} does not match {}",
                self.ring.label(),
                ring.coeffs().descriptor().label()
            )));
        }
        let a = ring.coeffs();
        let mut out = CrElement::zero(ring);
        for (part, recs) in [(Part::V, &self.v), (Part::Dv, &self.dv), (Part::F, &self.f), (Part::Fd, &self.fd)] {
            for rec in recs {
                let m = Monomial::from_part(part, rec.index)
                    .ok_or_else(|| bad(format!("index 0 is not allowed in the {} family", part.name())))?;
                if rec.shape != shape_name(m) {
                    return Err(bad(format!(
                        "shape {:?} at index {} in the {} family",
                        rec.shape,
                        rec.index,
                        part.name()
                    )));
                }
                let mut c = a.zero();
                for comp in &rec.coefficient {
                    let x = a
                        .from_component_coords(comp.degree, &comp.coords)
                        .map_err(|e| bad(e.to_string()))?;
                    c = a.add(&c, &x);
                }
                if c.is_zero() {
                    return Err(bad("zero coefficient stored".into()));
                }
                out = out.add(&CrElement::monomial(ring, m, c)?)?;
            }
        }
        Ok(out)
    }
}

/// JSON text of an element.
pub fn encode(e: &CrElement) -> String {
    serde_json::to_string(&Document::from_element(e)).expect("documents always serialize")
}

/// Parses a JSON document, building its ring from the embedded descriptor.
pub fn decode(text: &str) -> Result<CrElement, LangError> {
    let doc: Document = serde_json::from_str(text).map_err(|e| LangError::Document(e.to_string()))?;
    let coeffs = CoefficientRing::new(doc.ring).map_err(|e| LangError::Document(e.to_string()))?;
    doc.to_element(&CrRing::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::parse_element;

    #[test]
    fn document_shape() {
        let r = CrRing::new(CoefficientRing::new(RingDescriptor::zmod(3, 2)).unwrap());
        let e = parse_element("2*v + 4*f*d", &r).unwrap();
        let text = encode(&e);
        assert_eq!(
            text,
            r#"{"ring":{"prime":3,"truncation":2,"kind":"zmod-pn"},"v":[{"shape":"vpow","index":1,"coefficient":[{"degree":0,"coords":[2]}]}],"dv":[],"f":[],"fd":[{"shape":"fd","index":1,"coefficient":[{"degree":0,"coords":[4]}]}]}"#
        );
        assert_eq!(decode(&text).unwrap(), e);
    }

    #[test]
    fn malformed_documents() {
        assert!(decode("{").is_err());
        let bad_shape = r#"{"ring":{"prime":3,"truncation":2,"kind":"zmod-pn"},"v":[{"shape":"fd","index":1,"coefficient":[{"degree":0,"coords":[2]}]}],"dv":[],"f":[],"fd":[]}"#;
        assert!(matches!(decode(bad_shape), Err(LangError::Document(_))));
        let f0 = r#"{"ring":{"prime":3,"truncation":2,"kind":"zmod-pn"},"v":[],"dv":[],"f":[{"shape":"fpow","index":0,"coefficient":[{"degree":0,"coords":[2]}]}],"fd":[]}"#;
        assert!(decode(f0).is_err());
        let bad_prime = r#"{"ring":{"prime":4,"truncation":2,"kind":"zmod-pn"},"v":[],"dv":[],"f":[],"fd":[]}"#;
        assert!(decode(bad_prime).is_err());
    }
}
