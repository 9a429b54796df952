//! Recursive-descent parser for operator expressions.
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := unary ("*" unary)*
//! unary   := "-" unary | power
//! power   := primary ("^" int)?
//! primary := int ("/" int)? | "N" | coupling | atom
//!          | "(" expr ")" | "[" expr "," expr "]" | "{" expr "," expr "}"
//! ```
//!
//! Atoms are written `x[i]`, `D[i]`, `M[i,j]`, `E[i,j]`, `S[i,j]`, `s[i,j]`,
//! `s[a]`, `w"2,3,1"`, `Ssum`, `H`, `HOmega`, `Msq`, `rho`. The compact forms
//! used by the printed normal forms are accepted too: `x1`, `D2`, `M12`,
//! `E21`, `S12`, `s(12)`.

use std::fmt;

use dunkl_core::exactmath::Rat;

use crate::expr::{Atom, Expr, GroupLit};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub expected: String,
    pub found: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at line {}, column {}: expected {}, found {}", self.line, self.column, self.expected, self.found)
    }
}

impl std::error::Error for SyntaxError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    /// Contents of `w"..."`.
    GroupLit(String),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(s) => write!(f, "number {s}"),
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::GroupLit(s) => write!(f, "group literal w\"{s}\""),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
}

impl<'a> Lexer<'a> {
    fn run(src: &'a str) -> Result<Vec<(Tok, usize)>, SyntaxError> {
        let mut lx = Lexer { src, toks: Vec::new() };
        let bytes = src.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            if c.is_ascii_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                lx.toks.push((Tok::Int(src[start..i].into()), start));
            } else if c == b'w' && bytes.get(i + 1) == Some(&b'"') {
                let start = i;
                let close = src[i + 2..].find('"').ok_or_else(|| lx.error(start, "closing `\"`", "end of input"))?;
                lx.toks.push((Tok::GroupLit(src[i + 2..i + 2 + close].into()), start));
                i += close + 3;
            } else if c.is_ascii_alphabetic() {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                lx.toks.push((Tok::Ident(src[start..i].into()), start));
            } else if b"+-*^/()[]{},".contains(&c) {
                lx.toks.push((Tok::Sym(c as char), i));
                i += 1;
            } else {
                let ch = src[i..].chars().next().unwrap();
                return Err(lx.error(i, "an expression", &format!("`{ch}`")));
            }
        }
        lx.toks.push((Tok::End, src.len()));
        Ok(lx.toks)
    }

    fn error(&self, pos: usize, expected: &str, found: &str) -> SyntaxError {
        position_error(self.src, pos, expected, found)
    }
}

fn position_error(src: &str, pos: usize, expected: &str, found: &str) -> SyntaxError {
    let before = &src[..pos];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().unwrap_or("").chars().count() + 1;
    SyntaxError { line, column, expected: expected.into(), found: found.into() }
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

pub fn parse_expression(src: &str) -> Result<Expr, SyntaxError> {
    let toks = Lexer::run(src)?;
    let mut p = Parser { src, toks, pos: 0 };
    let e = p.expr()?;
    if p.peek() != &Tok::End {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(e)
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &str) -> SyntaxError {
        let (tok, at) = &self.toks[self.pos];
        position_error(self.src, *at, expected, &tok.to_string())
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == &Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), SyntaxError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{c}`")))
        }
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat('-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, SyntaxError> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Expr, SyntaxError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.primary()?;
        if self.eat('^') {
            let k = self.int("an integer exponent")?;
            let k = u32::try_from(k).map_err(|_| self.unexpected("a smaller exponent"))?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn int(&mut self, what: &str) -> Result<u64, SyntaxError> {
        match self.peek().clone() {
            Tok::Int(s) => {
                let v = s.parse::<u64>().map_err(|_| self.unexpected("a smaller integer"))?;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn index(&mut self) -> Result<usize, SyntaxError> {
        let v = self.int("an index")?;
        if v == 0 {
            self.pos -= 1;
            return Err(self.unexpected("an index of at least 1"));
        }
        Ok(v as usize)
    }

    fn primary(&mut self) -> Result<Expr, SyntaxError> {
        let at = self.pos;
        match self.next() {
            Tok::Int(s) => {
                let num: Rat = s.parse().expect("digits");
                if self.eat('/') {
                    let d = self.int("a denominator")?;
                    if d == 0 {
                        self.pos -= 1;
                        return Err(self.unexpected("a nonzero denominator"));
                    }
                    return Ok(Expr::Num(&num / &Rat::from(d as i64)));
                }
                Ok(Expr::Num(num))
            }
            Tok::GroupLit(body) => {
                let lit = parse_group_literal(&body).ok_or_else(|| {
                    self.pos = at;
                    self.unexpected("a signed image tuple or `;`-separated columns")
                })?;
                Ok(Expr::Atom(Atom::Group(lit)))
            }
            Tok::Ident(name) => self.identifier(&name, at),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Sym(c @ ('[' | '{')) => {
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                if c == '[' {
                    self.expect(']')?;
                    Ok(Expr::Commutator(Box::new(a), Box::new(b)))
                } else {
                    self.expect('}')?;
                    Ok(Expr::Anticommutator(Box::new(a), Box::new(b)))
                }
            }
            _ => {
                self.pos = at;
                Err(self.unexpected("a number, atom or bracket"))
            }
        }
    }

    fn bracket_indices(&mut self, count: usize) -> Result<Vec<usize>, SyntaxError> {
        self.expect('[')?;
        let mut v = vec![self.index()?];
        while v.len() < count {
            self.expect(',')?;
            v.push(self.index()?);
        }
        self.expect(']')?;
        Ok(v)
    }

    fn identifier(&mut self, name: &str, at: usize) -> Result<Expr, SyntaxError> {
        let atom = |a: Atom| Ok(Expr::Atom(a));
        match name {
            "N" => return Ok(Expr::Rank),
            "Ssum" => return atom(Atom::Ssum),
            "H" => return atom(Atom::H),
            "HOmega" => return atom(Atom::HOmega),
            "Msq" => return atom(Atom::Msq),
            "rho" => return atom(Atom::Rho),
            "x" | "D" => {
                let i = self.bracket_indices(1)?[0];
                return atom(if name == "x" { Atom::X(i) } else { Atom::D(i) });
            }
            "M" | "E" | "S" => {
                let v = self.bracket_indices(2)?;
                return atom(match name {
                    "M" => Atom::M(v[0], v[1]),
                    "E" => Atom::E(v[0], v[1]),
                    _ => Atom::S(v[0], v[1]),
                });
            }
            "s" => {
                if self.eat('(') {
                    let pair = match self.peek().clone() {
                        Tok::Int(d) if d.len() == 2 && !d.contains('0') => d,
                        _ => return Err(self.unexpected("two nonzero digits as in s(12)")),
                    };
                    self.pos += 1;
                    self.expect(')')?;
                    let b = pair.as_bytes();
                    return atom(Atom::Reflection((b[0] - b'0') as usize, (b[1] - b'0') as usize));
                }
                self.expect('[')?;
                let a = self.index()?;
                if self.eat(',') {
                    let b = self.index()?;
                    self.expect(']')?;
                    return atom(Atom::Reflection(a, b));
                }
                self.expect(']')?;
                return atom(Atom::RootReflection(a));
            }
            _ => {}
        }
        if let Some(a) = compact_atom(name) {
            return atom(a);
        }
        if name.starts_with(|c: char| c.is_ascii_lowercase()) {
            return Ok(Expr::Coupling(name.into()));
        }
        self.pos = at;
        Err(self.unexpected("an atom, coupling symbol or N"))
    }
}

/// `x12`, `D3`, `M12`, `E21`, `S11`.
fn compact_atom(name: &str) -> Option<Atom> {
    let (head, digits) = name.split_at(1);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.starts_with('0') {
        return None;
    }
    match head {
        "x" => Some(Atom::X(digits.parse().ok()?)),
        "D" => Some(Atom::D(digits.parse().ok()?)),
        "M" | "E" | "S" if digits.len() == 2 && !digits.contains('0') => {
            let b = digits.as_bytes();
            let (i, j) = ((b[0] - b'0') as usize, (b[1] - b'0') as usize);
            Some(match head {
                "M" => Atom::M(i, j),
                "E" => Atom::E(i, j),
                _ => Atom::S(i, j),
            })
        }
        _ => None,
    }
}

fn parse_group_literal(body: &str) -> Option<GroupLit> {
    if body.contains(';') {
        let cols = body
            .split(';')
            .map(|c| c.split(',').map(|x| x.trim().parse::<Rat>().ok()).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        return Some(GroupLit::Columns(cols));
    }
    let t = body.split(',').map(|x| x.trim().parse::<i64>().ok()).collect::<Option<Vec<_>>>()?;
    if t.contains(&0) {
        return None;
    }
    Some(GroupLit::Image(t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rt(s: &str) {
        let e = parse_expression(s).unwrap();
        assert_eq!(e.to_string(), s);
        assert_eq!(parse_expression(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn shapes() {
        let e = parse_expression("[M[1,2], M[3,4]]").unwrap();
        assert!(matches!(e, Expr::Commutator(..)));
        rt("HOmega + (1/2)*Msq - (1/2)*Ssum*(Ssum - N + 2)");
        rt("-x[1]^2*(-D[2])");
        rt("(1/2)^3 - (-g)");
        rt("w\"2,-1,3\" + w\"1,0;0,1\"");
    }

    #[test]
    fn compact_forms() {
        let a = parse_expression("x1^2*s(12)*D2 - 1/2*g*M34").unwrap();
        let b = parse_expression("x[1]^2*s[1,2]*D[2] - (1/2)*g*M[3,4]").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn errors_have_positions() {
        let e = parse_expression("x[1] +\n  * D[1]").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(e.expected.contains("number"));
        assert_eq!(parse_expression("M[0,1]").unwrap_err().column, 3);
        assert!(parse_expression("Foo").is_err());
        assert!(parse_expression("x[1] x[2]").is_err());
        assert!(parse_expression("w\"1,2").is_err());
        assert!(parse_expression("1/0").is_err());
    }
}
