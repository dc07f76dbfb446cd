use super::{Expr, Generator, LangError};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Gen(Generator),
    Eta,
    Int(i64),
    Witt(Vec<i64>),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer {
    chars: Vec<char>,
    at: usize,
    len: usize,
}

impl Lexer {
    fn new(src: &str) -> Self {
        let chars: Vec<char> = src.chars().collect();
        Lexer {
            len: chars.len(),
            chars,
            at: 0,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.at += 1;
        }
    }

    fn starts_with(&self, s: &str) -> bool {
        s.chars().enumerate().all(|(k, c)| self.chars.get(self.at + k) == Some(&c))
    }

    fn number(&mut self) -> Result<i64, LangError> {
        let start = self.at;
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.at += 1;
        }
        s.parse().map_err(|_| LangError::Lexical {
            pos: start,
            msg: format!("integer {} is too large", s),
        })
    }

    fn witt(&mut self, start: usize) -> Result<Vec<i64>, LangError> {
        // positioned just after '['
        let mut coords = Vec::new();
        loop {
            self.skip_ws();
            let neg = self.peek() == Some('-');
            if neg {
                self.at += 1;
                self.skip_ws();
            }
            if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                return Err(LangError::Syntax {
                    pos: self.at,
                    msg: "expected a Witt coordinate".into(),
                });
            }
            let n = self.number()?;
            coords.push(if neg { -n } else { n });
            self.skip_ws();
            match self.peek() {
                Some(',') => self.at += 1,
                Some(']') => {
                    self.at += 1;
                    return Ok(coords);
                }
                None => {
                    return Err(LangError::Syntax {
                        pos: self.len,
                        msg: format!("unclosed Witt literal opened at position {}", start),
                    })
                }
                Some(c) => {
                    return Err(LangError::Syntax {
                        pos: self.at,
                        msg: format!("unexpected '{}' in Witt literal", c),
                    })
                }
            }
        }
    }

    fn next(&mut self) -> Result<(usize, Tok), LangError> {
        self.skip_ws();
        let pos = self.at;
        let Some(c) = self.peek() else {
            return Ok((self.len, Tok::End));
        };
        let single = |t| Ok((pos, t));
        if self.starts_with("eta") {
            self.at += 3;
            return single(Tok::Eta);
        }
        self.at += 1;
        match c {
            'v' => single(Tok::Gen(Generator::V)),
            'f' => single(Tok::Gen(Generator::F)),
            'd' => single(Tok::Gen(Generator::D)),
            '+' => single(Tok::Plus),
            '-' => single(Tok::Minus),
            '*' => single(Tok::Star),
            '^' => single(Tok::Caret),
            '(' => single(Tok::LParen),
            ')' => single(Tok::RParen),
            'W' => {
                self.skip_ws();
                if self.peek() != Some('[') {
                    return Err(LangError::Lexical {
                        pos,
                        msg: "expected '[' after 'W'".into(),
                    });
                }
                self.at += 1;
                Ok((pos, Tok::Witt(self.witt(pos)?)))
            }
            c if c.is_ascii_digit() => {
                self.at -= 1;
                Ok((pos, Tok::Int(self.number()?)))
            }
            c => Err(LangError::Lexical {
                pos,
                msg: format!("unexpected character '{}'", c),
            }),
        }
    }
}

struct Parser {
    lexer: Lexer,
    tok: Tok,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self, LangError> {
        let mut lexer = Lexer::new(src);
        let (pos, tok) = lexer.next()?;
        Ok(Parser { lexer, tok, pos })
    }

    fn bump(&mut self) -> Result<(usize, Tok), LangError> {
        let (pos, tok) = self.lexer.next()?;
        let old_pos = std::mem::replace(&mut self.pos, pos);
        Ok((old_pos, std::mem::replace(&mut self.tok, tok)))
    }

    fn syntax<T>(&self, msg: &str) -> Result<T, LangError> {
        Err(LangError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        })
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.tok,
            Tok::Gen(_) | Tok::Eta | Tok::Int(_) | Tok::Witt(_) | Tok::LParen
        )
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Expr, LangError> {
        let mut acc = self.signed_term()?;
        loop {
            match self.tok {
                Tok::Plus => {
                    self.bump()?;
                    acc = Expr::Add(Box::new(acc), Box::new(self.signed_term()?));
                }
                Tok::Minus => {
                    self.bump()?;
                    acc = Expr::Sub(Box::new(acc), Box::new(self.signed_term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn signed_term(&mut self) -> Result<Expr, LangError> {
        if self.tok == Tok::Minus {
            self.bump()?;
            return Ok(Expr::Neg(Box::new(self.term()?)));
        }
        self.term()
    }

    // term := factor ('*'? factor)*
    fn term(&mut self) -> Result<Expr, LangError> {
        let mut factors = vec![self.factor()?];
        loop {
            if self.tok == Tok::Star {
                self.bump()?;
                factors.push(self.factor()?);
            } else if self.starts_atom() {
                factors.push(self.factor()?);
            } else {
                break;
            }
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            Expr::Mul(factors)
        })
    }

    // factor := atom ('^' nat)?
    fn factor(&mut self) -> Result<Expr, LangError> {
        let base = self.atom()?;
        if self.tok != Tok::Caret {
            return Ok(base);
        }
        self.bump()?;
        match self.tok {
            Tok::Int(n) => {
                let pos = self.pos;
                self.bump()?;
                let exp = u32::try_from(n).map_err(|_| LangError::Syntax {
                    pos,
                    msg: "exponent too large".into(),
                })?;
                Ok(Expr::Pow(Box::new(base), exp))
            }
            _ => self.syntax("expected a non-negative integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<Expr, LangError> {
        match self.tok.clone() {
            Tok::Gen(g) => {
                self.bump()?;
                Ok(Expr::Gen(g))
            }
            Tok::Eta => {
                self.bump()?;
                Ok(Expr::Eta)
            }
            Tok::Int(value) => {
                self.bump()?;
                Ok(Expr::Int(value))
            }
            Tok::Witt(coords) => {
                let (pos, _) = self.bump()?;
                Ok(Expr::Witt { coords, pos })
            }
            Tok::LParen => {
                self.bump()?;
                let inner = self.expr()?;
                if self.tok != Tok::RParen {
                    return self.syntax("expected ')'");
                }
                self.bump()?;
                Ok(Expr::Paren(Box::new(inner)))
            }
            Tok::End => self.syntax("unexpected end of input"),
            _ => self.syntax("expected v, f, d, eta, an integer, a Witt literal or '('"),
        }
    }
}

pub(super) fn parse(src: &str) -> Result<Expr, LangError> {
    let mut p = Parser::new(src)?;
    let e = p.expr()?;
    if p.tok != Tok::End {
        return p.syntax("unexpected trailing input");
    }
    Ok(e)
}

/// Parses a bracketed coordinate list such as `W[1,-2,0]` or `[1,-2,0]`.
pub(super) fn parse_coords(src: &str) -> Result<Vec<i64>, LangError> {
    let trimmed = src.trim_start();
    let offset = src.len() - trimmed.len();
    let body = trimmed.strip_prefix('W').unwrap_or(trimmed);
    let mut lx = Lexer::new(body);
    lx.skip_ws();
    if lx.peek() != Some('[') {
        return Err(LangError::Syntax {
            pos: offset,
            msg: "expected a coordinate list like W[1,0]".into(),
        });
    }
    lx.at += 1;
    let coords = lx.witt(0)?;
    lx.skip_ws();
    if lx.peek().is_some() {
        return Err(LangError::Syntax {
            pos: lx.at,
            msg: "unexpected trailing input".into(),
        });
    }
    Ok(coords)
}
