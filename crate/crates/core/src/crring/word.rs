use std::fmt;
use std::sync::Arc;

use rand::Rng;

use super::{engine, CrElement, CrError, CrRing};
use crate::coefficients::{CoefficientRing, GradedScalar};

/// A generator of the free algebra: `v`, `f`, `d` or a coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    V,
    F,
    D,
    Coeff(GradedScalar),
}

/// A product of letters, read left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Letters chosen uniformly from `{v, f, d, coefficient}`; coefficients
    /// are homogeneous of uniformly chosen degree.
    pub fn random<R: Rng + ?Sized>(coeffs: &CoefficientRing, len: usize, rng: &mut R) -> Self {
        Word(
            (0..len)
                .map(|_| match rng.gen_range(0..4) {
                    0 => Letter::V,
                    1 => Letter::F,
                    2 => Letter::D,
                    _ => Letter::Coeff(coeffs.random_any_homogeneous(rng)),
                })
                .collect(),
        )
    }

    pub fn display<'a>(&'a self, coeffs: &'a CoefficientRing) -> impl fmt::Display + 'a {
        WordDisplay { word: self, coeffs }
    }

    /// Evaluates the word as an element, multiplying left to right.
    pub fn eval(&self, ring: &Arc<CrRing>) -> Result<CrElement, CrError> {
        for l in &self.0 {
            if let Letter::Coeff(c) = l {
                ring.coeffs().check(c).map_err(|_| CrError::ForeignCoefficient)?;
            }
        }
        let mut acc = CrElement::one(ring);
        for l in &self.0 {
            let g = letter_element(ring, l);
            acc = engine::mul(&acc, &g);
        }
        Ok(acc)
    }

    /// Evaluates right to left by left actions, avoiding general products.
    #[cfg(test)]
    pub(crate) fn eval_fast(&self, ring: &Arc<CrRing>) -> CrElement {
        let mut acc = CrElement::one(ring);
        for l in self.0.iter().rev() {
            acc = match l {
                Letter::V => engine::left_v_pow(1, &acc),
                Letter::F => engine::left_f(&acc),
                Letter::D => engine::left_d(&acc),
                Letter::Coeff(c) => engine::left_scalar(c, &acc),
            };
        }
        acc
    }
}

fn letter_element(ring: &Arc<CrRing>, l: &Letter) -> CrElement {
    match l {
        Letter::V => CrElement::gen_v(ring),
        Letter::F => CrElement::gen_f(ring),
        Letter::D => CrElement::gen_d(ring),
        Letter::Coeff(c) => {
            let mut e = CrElement::zero(ring);
            e.push(super::Part::V, 0, c.clone());
            e
        }
    }
}

struct WordDisplay<'a> {
    word: &'a Word,
    coeffs: &'a CoefficientRing,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .word
            .0
            .iter()
            .map(|l| match l {
                Letter::V => "v".to_string(),
                Letter::F => "f".to_string(),
                Letter::D => "d".to_string(),
                Letter::Coeff(c) => format!("({})", crate::lang::print_scalar(self.coeffs, c)),
            })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::RingDescriptor;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fast_and_plain_evaluation_agree() {
        for desc in [
            RingDescriptor::witt_fp(2, 3),
            RingDescriptor::witt_perfect(3, 9, 2),
            RingDescriptor::formal_eta(),
        ] {
            let ring = CrRing::new(CoefficientRing::new(desc).unwrap());
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            for _ in 0..200 {
                let len = rng.gen_range(0..7);
                let w = Word::random(ring.coeffs(), len, &mut rng);
                assert_eq!(w.eval(&ring).unwrap(), w.eval_fast(&ring), "{}", w.display(ring.coeffs()));
            }
        }
    }
}
