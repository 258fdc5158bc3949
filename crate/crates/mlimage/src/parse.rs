//! Concrete syntax for polynomials and algebra elements.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' nat)?
//! atom   := rational | ident | '[' expr ',' expr ']' ('_' nat)? | '(' expr ')'
//! ```
//!
//! Rationals are `p` or `p/q`. `[a, b]_k` is `[a, [a, ... [a, b]]]` with `k`
//! brackets; `[a, b]_0` is `b`. Identifiers are `X1, X2, ...`, `U`, `V` for
//! partially commutative polynomials and `v`, `w` for algebra elements.

use mlimage_core::backends::EvaluationAlgebra;
use mlimage_core::rational::q;
use mlimage_core::{PcPoly, Q};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at column {}: {msg}", pos + 1)]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at column {}", pos + 1)]
    UnknownIdent { pos: usize, name: String },
    #[error("variable X{index} at column {} is out of range for {n} variables", pos + 1)]
    IndexOutOfRange { pos: usize, index: usize, n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    /// `X<j>`, stored 0-based.
    X(usize),
    U,
    V,
    SmallV,
    W,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Rational(Q),
    Var(Var, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Bracket(Box<Expr>, Box<Expr>, usize),
}

impl Expr {
    /// Largest `X` index used (1-based), 0 if none.
    pub fn max_x(&self) -> usize {
        match self {
            Expr::Rational(_) => 0,
            Expr::Var(Var::X(j), _) => j + 1,
            Expr::Var(..) => 0,
            Expr::Neg(a) | Expr::Pow(a, _) => a.max_x(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Bracket(a, b, _) => {
                a.max_x().max(b.max_x())
            }
        }
    }
}

/// Decimal digits to an exact integer, without overflow.
fn parse_int(digits: &str) -> Q {
    digits.bytes().fold(q(0), |acc, d| acc * q(10) + q(i64::from(d - b'0')))
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Num(chars[start..i].iter().map(|x| x.1).collect()), pos));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            i += 1;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().map(|x| x.1).collect()), pos));
        } else if "+-*^/[],()_".contains(c) {
            out.push((Tok::Sym(c), pos));
            i += 1;
        } else {
            return Err(ParseError::Syntax { pos, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.1)
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.error(format!("expected `{c}`"))
        }
    }

    fn nat(&mut self) -> Result<usize, ParseError> {
        match self.peek() {
            Some(Tok::Num(d)) => {
                let v = d.parse::<usize>();
                match v {
                    Ok(v) => {
                        self.at += 1;
                        Ok(v)
                    }
                    Err(_) => self.error("exponent too large"),
                }
            }
            _ => self.error("expected a natural number"),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = if self.eat('-') { Expr::Neg(Box::new(self.term()?)) } else { self.term()? };
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

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.nat()?;
            let e = u32::try_from(e).or_else(|_| self.error("exponent too large"))?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(d)) => {
                self.at += 1;
                let num = parse_int(&d);
                if self.eat('/') {
                    let den = match self.peek().cloned() {
                        Some(Tok::Num(d)) => {
                            self.at += 1;
                            parse_int(&d)
                        }
                        _ => return self.error("expected a denominator"),
                    };
                    if den == q(0) {
                        return Err(ParseError::Syntax { pos, msg: "zero denominator".into() });
                    }
                    return Ok(Expr::Rational(num / den));
                }
                Ok(Expr::Rational(num))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                let var = match name.as_str() {
                    "U" => Var::U,
                    "V" => Var::V,
                    "v" => Var::SmallV,
                    "w" => Var::W,
                    _ => match name.strip_prefix('X').and_then(|d| d.parse::<usize>().ok()) {
                        Some(j) if j >= 1 && !name[1..].starts_with('0') => Var::X(j - 1),
                        _ => return Err(ParseError::UnknownIdent { pos, name }),
                    },
                };
                Ok(Expr::Var(var, pos))
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Sym('[')) => {
                self.at += 1;
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(']')?;
                let depth = if self.eat('_') { self.nat()? } else { 1 };
                Ok(Expr::Bracket(Box::new(a), Box::new(b), depth))
            }
            Some(_) => self.error("unexpected token"),
            None => self.error("unexpected end of input"),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, at: 0, end: src.len() };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return p.error("trailing input");
    }
    Ok(e)
}

/// Interprets the syntax tree in some ring.
trait Builder {
    type Out: Clone;
    fn constant(&self, c: &Q) -> Self::Out;
    fn var(&self, v: Var, pos: usize) -> Result<Self::Out, ParseError>;
    fn add(&self, a: &Self::Out, b: &Self::Out) -> Self::Out;
    fn mul(&self, a: &Self::Out, b: &Self::Out) -> Self::Out;
    fn neg(&self, a: &Self::Out) -> Self::Out;
}

fn build<B: Builder>(e: &Expr, b: &B) -> Result<B::Out, ParseError> {
    Ok(match e {
        Expr::Rational(c) => b.constant(c),
        Expr::Var(v, pos) => b.var(*v, *pos)?,
        Expr::Neg(a) => b.neg(&build(a, b)?),
        Expr::Add(x, y) => b.add(&build(x, b)?, &build(y, b)?),
        Expr::Sub(x, y) => b.add(&build(x, b)?, &b.neg(&build(y, b)?)),
        Expr::Mul(x, y) => b.mul(&build(x, b)?, &build(y, b)?),
        Expr::Pow(x, k) => {
            let base = build(x, b)?;
            (0..*k).fold(b.constant(&q(1)), |acc, _| b.mul(&acc, &base))
        }
        Expr::Bracket(x, y, k) => {
            let a = build(x, b)?;
            let mut acc = build(y, b)?;
            for _ in 0..*k {
                acc = b.add(&b.mul(&a, &acc), &b.neg(&b.mul(&acc, &a)));
            }
            acc
        }
    })
}

struct PolyBuilder(usize);

impl Builder for PolyBuilder {
    type Out = PcPoly;

    fn constant(&self, c: &Q) -> PcPoly {
        PcPoly::constant(self.0, c.clone())
    }

    fn var(&self, v: Var, pos: usize) -> Result<PcPoly, ParseError> {
        let n = self.0;
        match v {
            Var::X(j) if j < n => Ok(PcPoly::x(n, j)),
            Var::X(j) => Err(ParseError::IndexOutOfRange { pos, index: j + 1, n }),
            Var::U => Ok(PcPoly::u(n)),
            Var::V => Ok(PcPoly::v(n)),
            Var::SmallV => Err(ParseError::UnknownIdent { pos, name: "v".into() }),
            Var::W => Err(ParseError::UnknownIdent { pos, name: "w".into() }),
        }
    }

    fn add(&self, a: &PcPoly, b: &PcPoly) -> PcPoly {
        a + b
    }

    fn mul(&self, a: &PcPoly, b: &PcPoly) -> PcPoly {
        a * b
    }

    fn neg(&self, a: &PcPoly) -> PcPoly {
        -a
    }
}

struct AlgebraBuilder<'a, A: EvaluationAlgebra>(&'a A);

impl<A: EvaluationAlgebra> Builder for AlgebraBuilder<'_, A> {
    type Out = A::Elem;

    fn constant(&self, c: &Q) -> A::Elem {
        self.0.scalar(c)
    }

    fn var(&self, v: Var, pos: usize) -> Result<A::Elem, ParseError> {
        match v {
            Var::SmallV => Ok(self.0.v()),
            // w is the element with [v, w] = 1 built by the algebra itself
            Var::W => Ok(self.0.z(1)),
            Var::X(j) => Err(ParseError::UnknownIdent { pos, name: format!("X{}", j + 1) }),
            Var::U => Err(ParseError::UnknownIdent { pos, name: "U".into() }),
            Var::V => Err(ParseError::UnknownIdent { pos, name: "V".into() }),
        }
    }

    fn add(&self, a: &A::Elem, b: &A::Elem) -> A::Elem {
        self.0.add(a, b)
    }

    fn mul(&self, a: &A::Elem, b: &A::Elem) -> A::Elem {
        self.0.mul(a, b)
    }

    fn neg(&self, a: &A::Elem) -> A::Elem {
        self.0.neg(a)
    }
}

/// A partially commutative polynomial in `n` variables.
pub fn to_pcpoly(e: &Expr, n: usize) -> Result<PcPoly, ParseError> {
    build(e, &PolyBuilder(n))
}

/// Parses a polynomial; `n` defaults to the largest variable index used.
pub fn parse_pcpoly(src: &str, n: Option<usize>) -> Result<PcPoly, ParseError> {
    let e = parse(src)?;
    let n = n.unwrap_or_else(|| e.max_x().max(1));
    to_pcpoly(&e, n)
}

/// Parses an element of `alg` written in `v` and `w`.
pub fn parse_element<A: EvaluationAlgebra>(src: &str, alg: &A) -> Result<A::Elem, ParseError> {
    build(&parse(src)?, &AlgebraBuilder(alg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use mlimage_core::rational::q_frac;
    use mlimage_core::{AltMonomial, WeylAlgebra, WeylElement};
    use rand::Rng;

    #[test]
    fn commutator_word() {
        let p = parse_pcpoly("[V,X1]*X2", None).unwrap();
        let v = PcPoly::v(2);
        let x1 = PcPoly::x(2, 0);
        let x2 = PcPoly::x(2, 1);
        let expected = &(&(&v * &x1) - &(&x1 * &v)) * &x2;
        assert_eq!(p, expected);
        assert_eq!(p.n(), 2);
    }

    #[test]
    fn iterated_bracket_depth() {
        let p = parse_pcpoly("[U,[V,X1]_2]", None).unwrap();
        let inner = PcPoly::v(1).ad_pow(&PcPoly::x(1, 0), 2);
        assert_eq!(p, PcPoly::u(1).commutator(&inner));
        assert_eq!(parse_pcpoly("[V,X1]_0", None).unwrap(), PcPoly::x(1, 0));
    }

    #[test]
    fn weyl_literal() {
        let e = parse_element("1/2*v^2*w - w", &WeylAlgebra).unwrap();
        let expected = WeylElement::from_terms([(2, 1, q_frac(1, 2)), (0, 1, q(-1))]);
        assert_eq!(e, expected);
    }

    #[test]
    fn precedence() {
        let a = parse_pcpoly("X1 + 2*X2^2", None).unwrap();
        let x2 = PcPoly::x(2, 1);
        assert_eq!(a, &PcPoly::x(2, 0) + &(&x2 * &x2).scale(&q(2)));
        let b = parse_pcpoly("-(X1 - X1) + 3/6", Some(1)).unwrap();
        assert_eq!(b, PcPoly::constant(1, q_frac(1, 2)));
    }

    #[test]
    fn large_integers_are_exact() {
        let p = parse_pcpoly("123456789012345678901234567890*X1", None).unwrap();
        assert_eq!(p.render(), "123456789012345678901234567890*X1");
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_pcpoly("X1 + Y", None),
            Err(ParseError::UnknownIdent { pos: 5, name: "Y".into() })
        );
        assert!(matches!(parse_pcpoly("X3", Some(2)), Err(ParseError::IndexOutOfRange { index: 3, n: 2, .. })));
        assert!(matches!(parse("[X1, X2"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("1/0"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("X1 X2"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_pcpoly("v*X1", None), Err(ParseError::UnknownIdent { .. })));
        assert!(matches!(parse_element("X1", &WeylAlgebra), Err(ParseError::UnknownIdent { .. })));
    }

    fn random_poly<R: Rng>(rng: &mut R, n: usize) -> PcPoly {
        let mut p = PcPoly::zero(n);
        for _ in 0..rng.gen_range(0..5) {
            let mut term = PcPoly::constant(n, random::small_q(rng));
            for _ in 0..rng.gen_range(0..5) {
                let atom = match rng.gen_range(0..4) {
                    0 => PcPoly::u(n),
                    1 => PcPoly::v(n),
                    _ => PcPoly::x(n, rng.gen_range(0..n)),
                };
                term = &term * &atom;
            }
            p = &p + &term;
        }
        p
    }

    #[test]
    fn render_round_trip() {
        let mut rng = random::rng(11);
        for _ in 0..300 {
            let n = rng.gen_range(1..=3);
            let p = random_poly(&mut rng, n);
            assert_eq!(parse_pcpoly(&p.render(), Some(n)).unwrap(), p, "{}", p.render());
        }
        let m = AltMonomial::block(2, 3);
        let p = PcPoly::monomial(1, m, q_frac(-7, 4));
        assert_eq!(parse_pcpoly(&p.render(), Some(1)).unwrap(), p);
    }

    #[test]
    fn weyl_round_trip() {
        let mut rng = random::rng(12);
        for _ in 0..200 {
            let e = random::weyl_element(&mut rng, 4);
            assert_eq!(parse_element(&e.to_string(), &WeylAlgebra).unwrap(), e, "{e}");
        }
    }
}
