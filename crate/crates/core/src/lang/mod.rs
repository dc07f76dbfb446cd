//! Text syntax for ring elements.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*'? factor)*
//! factor := atom ('^' nat)?
//! atom   := 'v' | 'f' | 'd' | 'eta' | integer | 'W[' ints ']' | '(' expr ')'
//! ```
//!
//! A term may start with a unary minus and whitespace is ignored, so
//! `fdv`, `f d v` and `f*d*v` are the same product. Integers mean multiples
//! of one; `eta` is zero in rings without it.
//!
//! Printing sorts terms by coefficient degree and then by monomial
//! (`v^i`, `d v^i`, `f^j`, `f^j d`, each by ascending index); coefficients of
//! `v`/`d v` monomials are written on the right and those of `f` monomials on
//! the left, except that integer multiples always lead.

mod doc;
mod parse;
mod print;

use std::sync::Arc;

use thiserror::Error;

use crate::coefficients::GradedScalar;
use crate::crring::{CrElement, CrError, CrRing, Monomial, Part};

pub use doc::{decode, encode, Document, TermRecord};
pub use print::{print, print_scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LangError {
    #[error("lexical error at position {pos}: {msg}")]
    Lexical { pos: usize, msg: String },
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("bad literal at position {pos}: {msg}")]
    Literal { pos: usize, msg: String },
    #[error("malformed document: {0}")]
    Document(String),
    #[error(transparent)]
    Ring(#[from] CrError),
}

impl LangError {
    pub fn position(&self) -> Option<usize> {
        match self {
            LangError::Lexical { pos, .. } | LangError::Syntax { pos, .. } | LangError::Literal { pos, .. } => Some(*pos),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    V,
    F,
    D,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Vec<Expr>),
    Pow(Box<Expr>, u32),
    Gen(Generator),
    Int(i64),
    Eta,
    /// Witt coordinates, with the position of the literal.
    Witt { coords: Vec<i64>, pos: usize },
    Paren(Box<Expr>),
}

impl Expr {
    /// The tree with every `Paren` node removed.
    pub fn strip_parens(self) -> Expr {
        let b = |e: Box<Expr>| Box::new(e.strip_parens());
        match self {
            Expr::Paren(e) => e.strip_parens(),
            Expr::Add(a, c) => Expr::Add(b(a), b(c)),
            Expr::Sub(a, c) => Expr::Sub(b(a), b(c)),
            Expr::Neg(a) => Expr::Neg(b(a)),
            Expr::Mul(fs) => Expr::Mul(fs.into_iter().map(Expr::strip_parens).collect()),
            Expr::Pow(a, k) => Expr::Pow(b(a), k),
            other => other,
        }
    }
}

/// Parses text into a ring-independent syntax tree.
pub fn parse(text: &str) -> Result<Expr, LangError> {
    parse::parse(text)
}

/// Parses a bare coordinate list `W[a0,a1,...]`.
pub fn parse_coords(text: &str) -> Result<Vec<i64>, LangError> {
    parse::parse_coords(text)
}

/// Evaluates a syntax tree in `ring`, checking literals against it.
pub fn eval_ast(ast: &Expr, ring: &Arc<CrRing>) -> Result<CrElement, LangError> {
    Ok(match ast {
        Expr::Add(a, b) => eval_ast(a, ring)?.add(&eval_ast(b, ring)?)?,
        Expr::Sub(a, b) => eval_ast(a, ring)?.sub(&eval_ast(b, ring)?)?,
        Expr::Neg(a) => eval_ast(a, ring)?.neg(),
        Expr::Mul(fs) => {
            let mut acc = CrElement::one(ring);
            for f in fs {
                acc = acc.mul(&eval_ast(f, ring)?)?;
            }
            acc
        }
        Expr::Pow(b, k) => eval_ast(b, ring)?.pow(*k),
        Expr::Gen(Generator::V) => CrElement::gen_v(ring),
        Expr::Gen(Generator::F) => CrElement::gen_f(ring),
        Expr::Gen(Generator::D) => CrElement::gen_d(ring),
        Expr::Int(m) => CrElement::from_int(ring, *m),
        Expr::Eta => CrElement::from_scalar(ring, ring.coeffs().eta())?,
        Expr::Witt { coords, pos } => {
            let x = ring.coeffs().from_coords(coords).map_err(|e| LangError::Literal {
                pos: *pos,
                msg: e.to_string(),
            })?;
            CrElement::from_scalar(ring, x)?
        }
        Expr::Paren(e) => eval_ast(e, ring)?,
    })
}

/// `eval_ast(parse(text))`.
pub fn parse_element(text: &str, ring: &Arc<CrRing>) -> Result<CrElement, LangError> {
    eval_ast(&parse(text)?, ring)
}

/// Parses a coefficient: any expression that evaluates to a scalar.
pub fn parse_scalar(text: &str, ring: &Arc<CrRing>) -> Result<GradedScalar, LangError> {
    let e = parse_element(text, ring)?;
    let scalar_only = e.num_terms() == e.part(Part::V).get(&0).map_or(0, |_| 1);
    if !scalar_only {
        return Err(LangError::Literal {
            pos: 0,
            msg: format!("{} is not a coefficient", print(&e)),
        });
    }
    Ok(e.coefficient(Monomial::One))
}
