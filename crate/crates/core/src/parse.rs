//! Text syntax for systems.
//!
//! ```text
//! z^2 + (1+2i)*conj(z) - 3      one variable: z, conj(z) or zbar
//! z1*conj(z2) + 1/2; z2 - i     several: z1, z2, ... with conj(zk) or zkbar
//! ```
//!
//! Numbers are integers, fractions `p/q` or decimals, optionally followed
//! by `i`. Operators are `+ - * ^` with non-negative integer exponents;
//! juxtaposition such as `2z` multiplies. Polynomials are separated by
//! newlines or `;`, and `#` starts a comment.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::poly::GenPoly;

const MAX_EXPONENT: u32 = 10_000;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(GaussianRational),
    /// `Some(k)` for `z_k` (1-based), `None` for plain `z`.
    Var { index: Option<usize>, conj: bool },
    Conj,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn syntax(line: usize, col: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, col, message: message.into() }
}

fn classify_ident(s: &str) -> Option<Tok> {
    match s {
        "i" => return Some(Tok::Num(GaussianRational::i())),
        "conj" => return Some(Tok::Conj),
        "z" => return Some(Tok::Var { index: None, conj: false }),
        "zbar" => return Some(Tok::Var { index: None, conj: true }),
        _ => {}
    }
    let rest = s.strip_prefix('z')?;
    let (digits, conj) = match rest.strip_suffix("bar") {
        Some(d) => (d, true),
        None => (rest, false),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.starts_with('0') {
        return None;
    }
    Some(Tok::Var { index: Some(digits.parse().ok()?), conj })
}

fn parse_number(text: &str) -> Option<BigRational> {
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.parse().ok()?;
        let d: BigInt = d.parse().ok()?;
        return (!d.is_zero()).then(|| BigRational::new(n, d));
    }
    if let Some((int, frac)) = text.split_once('.') {
        let digits = format!("{int}{frac}");
        let n: BigInt = digits.parse().ok()?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        return Some(BigRational::new(n, d));
    }
    Some(BigRational::from_integer(text.parse().ok()?))
}

/// Tokens of one polynomial (one line or `;`-separated piece).
fn tokenize(src: &str, line: usize, col0: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let col = col0 + k;
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, line, col });
            k += 1;
        } else if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = k;
            while k < chars.len() && (chars[k].is_ascii_digit() || chars[k] == '.') {
                k += 1;
            }
            if k < chars.len() && chars[k] == '/' {
                k += 1;
                while k < chars.len() && chars[k].is_ascii_digit() {
                    k += 1;
                }
            }
            let text: String = chars[start..k].iter().collect();
            let value = parse_number(&text).ok_or_else(|| syntax(line, col, format!("malformed number {text:?}")))?;
            let imaginary = k < chars.len() && chars[k] == 'i' && !chars.get(k + 1).is_some_and(|c| c.is_alphanumeric());
            let num = if imaginary {
                k += 1;
                GaussianRational::new(BigRational::zero(), value)
            } else {
                GaussianRational::real(value)
            };
            out.push(Token { tok: Tok::Num(num), line, col });
        } else if c.is_alphabetic() {
            let start = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            let text: String = chars[start..k].iter().collect();
            let tok = classify_ident(&text).ok_or_else(|| syntax(line, col, format!("unknown identifier {text:?}")))?;
            out.push(Token { tok, line, col });
        } else {
            return Err(syntax(line, col, format!("unexpected character {c:?}")));
        }
    }
    out.push(Token { tok: Tok::End, line, col: col0 + chars.len() });
    Ok(out)
}

#[derive(Clone, Debug)]
enum Ast {
    Num(GaussianRational),
    Var { index: Option<usize>, conj: bool },
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Neg(Box<Ast>),
    Pow(Box<Ast>, u32),
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err_here(&self, message: impl Into<String>) -> Error {
        let t = self.peek();
        syntax(t.line, t.col, message)
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn starts_factor(tok: &Tok) -> bool {
        matches!(tok, Tok::Num(_) | Tok::Var { .. } | Tok::Conj | Tok::LParen)
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.unary()?;
        loop {
            if self.peek().tok == Tok::Star {
                self.bump();
                lhs = Ast::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if Self::starts_factor(&self.peek().tok) {
                lhs = Ast::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Ast> {
        match self.peek().tok {
            Tok::Minus => {
                self.bump();
                Ok(Ast::Neg(Box::new(self.unary()?)))
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let t = self.bump();
        let Tok::Num(n) = &t.tok else {
            return Err(syntax(t.line, t.col, "expected a non-negative integer exponent"));
        };
        let e = (n.im.is_zero() && n.re.is_integer())
            .then(|| n.re.to_integer())
            .and_then(|v| u32::try_from(v).ok())
            .ok_or_else(|| syntax(t.line, t.col, "exponent must be a non-negative integer"))?;
        if e > MAX_EXPONENT {
            return Err(syntax(t.line, t.col, format!("exponent exceeds {MAX_EXPONENT}")));
        }
        if self.peek().tok == Tok::Caret {
            return Err(self.err_here("chained exponents need parentheses"));
        }
        Ok(Ast::Pow(Box::new(base), e))
    }

    fn atom(&mut self) -> Result<Ast> {
        let t = self.bump();
        match t.tok {
            Tok::Num(n) => Ok(Ast::Num(n)),
            Tok::Var { index, conj } => Ok(Ast::Var { index, conj }),
            Tok::Conj => {
                if self.peek().tok != Tok::LParen {
                    return Err(self.err_here("expected '(' after conj"));
                }
                self.bump();
                let inner = self.bump();
                let Tok::Var { index, conj: false } = inner.tok else {
                    return Err(syntax(inner.line, inner.col, "conj applies to a single variable z or zk"));
                };
                if self.peek().tok != Tok::RParen {
                    return Err(self.err_here("conj applies to a single variable z or zk"));
                }
                self.bump();
                Ok(Ast::Var { index, conj: true })
            }
            Tok::LParen => {
                let e = self.expr()?;
                if self.peek().tok != Tok::RParen {
                    return Err(self.err_here("expected ')'"));
                }
                self.bump();
                Ok(e)
            }
            Tok::End => Err(syntax(t.line, t.col, "unexpected end of input")),
            _ => Err(syntax(t.line, t.col, "expected a number, variable or '('")),
        }
    }
}

#[derive(Default)]
struct VarUse {
    plain: bool,
    max_index: usize,
}

impl VarUse {
    fn visit(&mut self, a: &Ast) {
        match a {
            Ast::Num(_) => {}
            Ast::Var { index: None, .. } => self.plain = true,
            Ast::Var { index: Some(k), .. } => self.max_index = self.max_index.max(*k),
            Ast::Add(x, y) | Ast::Sub(x, y) | Ast::Mul(x, y) => {
                self.visit(x);
                self.visit(y);
            }
            Ast::Neg(x) | Ast::Pow(x, _) => self.visit(x),
        }
    }

    fn num_pairs(&self) -> Result<usize> {
        if self.plain && self.max_index > 0 {
            return Err(Error::Arity("plain z mixed with indexed variables z1, z2, ...".into()));
        }
        Ok(if self.plain { 1 } else { self.max_index.max(1) })
    }
}

fn lower(a: &Ast, r: usize) -> GenPoly {
    match a {
        Ast::Num(c) => GenPoly::constant(r, c.clone()),
        Ast::Var { index, conj } => {
            let k = index.map_or(0, |k| k - 1);
            if *conj { GenPoly::w(r, k) } else { GenPoly::z(r, k) }
        }
        Ast::Add(x, y) => &lower(x, r) + &lower(y, r),
        Ast::Sub(x, y) => &lower(x, r) - &lower(y, r),
        Ast::Mul(x, y) => &lower(x, r) * &lower(y, r),
        Ast::Neg(x) => -&lower(x, r),
        Ast::Pow(x, e) => lower(x, r).pow(*e),
    }
}

/// Split into pieces with their (line, starting column), dropping comments
/// and blank pieces.
fn pieces(src: &str) -> Vec<(&str, usize, usize)> {
    let mut out = Vec::new();
    for (ln, line) in src.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let mut col = 1;
        for piece in line.split(';') {
            if !piece.trim().is_empty() {
                out.push((piece, ln + 1, col));
            }
            col += piece.chars().count() + 1;
        }
    }
    out
}

fn parse_asts(src: &str, line_offset: usize) -> Result<Vec<Ast>> {
    pieces(src)
        .into_iter()
        .map(|(piece, line, col)| {
            let mut p = Parser { toks: tokenize(piece, line + line_offset, col)?, pos: 0 };
            let ast = p.expr()?;
            if p.peek().tok != Tok::End {
                return Err(p.err_here("unexpected token"));
            }
            Ok(ast)
        })
        .collect()
}

/// Parse several sources sharing one variable count. Each source may hold
/// several polynomials; line numbers continue across sources.
pub fn parse_sources(sources: &[&str], num_pairs: Option<usize>) -> Result<Vec<Vec<GenPoly>>> {
    let mut asts = Vec::new();
    let mut offset = 0;
    for src in sources {
        asts.push(parse_asts(src, offset)?);
        offset += src.lines().count().max(1);
    }
    let mut usage = VarUse::default();
    asts.iter().flatten().for_each(|a| usage.visit(a));
    let needed = usage.num_pairs()?;
    let r = match num_pairs {
        Some(r) if r < needed || (usage.plain && r != 1) => {
            return Err(Error::Arity(format!("input uses {needed} variable(s), expected {r}")))
        }
        Some(r) => r,
        None => needed,
    };
    Ok(asts.iter().map(|v| v.iter().map(|a| lower(a, r)).collect()).collect())
}

/// Parse a system; the variable count is the largest index used.
pub fn parse_system(src: &str) -> Result<Vec<GenPoly>> {
    let polys = parse_sources(&[src], None)?.remove(0);
    if polys.is_empty() {
        return Err(Error::InvalidInput("no polynomials given".into()));
    }
    Ok(polys)
}

/// Parse exactly one polynomial.
pub fn parse_poly(src: &str) -> Result<GenPoly> {
    let mut polys = parse_system(src)?;
    if polys.len() != 1 {
        return Err(Error::InvalidInput(format!("expected one polynomial, found {}", polys.len())));
    }
    Ok(polys.remove(0))
}

/// Parse a Gaussian rational constant such as `3/2-i` or `0.5i`.
pub fn parse_constant(src: &str) -> Result<GaussianRational> {
    let p = parse_poly(src)?;
    p.as_constant().ok_or_else(|| Error::InvalidInput(format!("{src:?} is not a constant")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;
    use proptest::prelude::*;

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    #[test]
    fn basic_forms() {
        let p = parse_poly("z^2 + conj(z)").unwrap();
        assert_eq!(p, &GenPoly::z(1, 0).pow(2) + &GenPoly::w(1, 0));
        assert_eq!(parse_poly("z^2 + zbar").unwrap(), p);
        let q = parse_poly("z + 2*conj(z) + 1").unwrap();
        assert_eq!(q.coeff(&Monomial(vec![0, 1])), g(2, 0));
        let c = parse_poly("(1/2 - 1/3i) * z").unwrap();
        assert_eq!(c.coeff(&Monomial(vec![1, 0])), GaussianRational::from_fracs(1, 2, -1, 3));
        assert_eq!(parse_poly("2z - i").unwrap(), &GenPoly::z(1, 0).scale(&g(2, 0)) - &GenPoly::constant(1, g(0, 1)));
        assert_eq!(parse_constant("0.25").unwrap(), GaussianRational::from_fracs(1, 4, 0, 1));
        assert_eq!(parse_constant("-3i").unwrap(), g(0, -3));
    }

    #[test]
    fn several_pairs_and_lines() {
        let sys = parse_system("z1*conj(z2) + 1\n# comment\n z2bar - i ; z1").unwrap();
        assert_eq!(sys.len(), 3);
        assert_eq!(sys[0].num_pairs(), 2);
        assert_eq!(sys[1], &GenPoly::w(2, 1) - &GenPoly::constant(2, g(0, 1)));
        assert_eq!(sys[2], GenPoly::z(2, 0));
    }

    #[test]
    fn syntax_errors_have_positions() {
        match parse_poly("z^^2") {
            Err(Error::Syntax { line, col, .. }) => assert_eq!((line, col), (1, 3)),
            other => panic!("{other:?}"),
        }
        match parse_system("z + 1\nz * * 2") {
            Err(Error::Syntax { line, col, .. }) => assert_eq!((line, col), (2, 5)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_poly("conj(z + 1)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("z / 2"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x + 1"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("z^-1"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("(z + 1"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("1/0"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn arity_errors() {
        assert!(matches!(parse_system("z + z1"), Err(Error::Arity(_))));
        assert!(matches!(parse_sources(&["z1 + z3"], Some(2)), Err(Error::Arity(_))));
        let both = parse_sources(&["z1 + 1", "z2*conj(z2)"], None).unwrap();
        assert_eq!(both[0][0].num_pairs(), 2);
    }

    fn arb_poly(r: usize) -> impl Strategy<Value = GenPoly> {
        let mono = prop::collection::vec(0u32..3, 2 * r);
        let coeff = (-5i64..6, 1i64..4, -5i64..6, 1i64..4).prop_map(|(a, b, c, d)| GaussianRational::from_fracs(a, b, c, d));
        prop::collection::vec((mono, coeff), 0..5)
            .prop_map(move |ts| GenPoly::from_terms(r, ts.into_iter().map(|(m, c)| (Monomial(m), c))))
    }

    proptest! {
        #[test]
        fn display_round_trips(p in arb_poly(1)) {
            prop_assert_eq!(parse_sources(&[&p.to_string()], Some(1)).unwrap()[0].first().cloned()
                .unwrap_or_else(|| GenPoly::zero(1)), p);
        }

        #[test]
        fn display_round_trips_two_pairs(p in arb_poly(2)) {
            let back = parse_sources(&[&p.to_string()], Some(2)).unwrap()[0].first().cloned().unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
