//! A small expression language for q-series: parsing, printing and
//! evaluation to a truncation order in a chosen ring.
//!
//! ```text
//! expr   := term (("+"|"-") term)* ;
//! term   := factor (("*"|"/") factor)* ;
//! factor := ("-" factor) | atom ("^" sint)? ;
//! atom   := uint | qpow | call | "(" expr ")" ;
//! qpow   := "q" ("^" uint)? ;
//! call   := name "(" (arg ("," arg)*)? ")" ;
//! arg    := expr | monomial | "inf" ;
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::dissect::{extract, huffing, Progression};
use crate::error::SeriesError;
use crate::ring::{Elem, RingTag};
use crate::series::Series;
use crate::theta::{euler_product, poch, theta_f, theta_phi, theta_psi, v0_series, Monomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    Phi,
    Psi,
    F,
    E,
    Poch,
    V0,
    H,
    Ext,
    Sub,
}

impl Builtin {
    pub const ALL: [Builtin; 9] = [
        Builtin::Phi,
        Builtin::Psi,
        Builtin::F,
        Builtin::E,
        Builtin::Poch,
        Builtin::V0,
        Builtin::H,
        Builtin::Ext,
        Builtin::Sub,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Phi => "phi",
            Builtin::Psi => "psi",
            Builtin::F => "f",
            Builtin::E => "E",
            Builtin::Poch => "poch",
            Builtin::V0 => "v0",
            Builtin::H => "H",
            Builtin::Ext => "ext",
            Builtin::Sub => "sub",
        }
    }

    fn from_name(s: &str) -> Option<Builtin> {
        Builtin::ALL.into_iter().find(|b| b.name() == s)
    }

    fn arity(self) -> usize {
        match self {
            Builtin::V0 => 0,
            Builtin::Phi | Builtin::Psi | Builtin::E | Builtin::H => 1,
            Builtin::F | Builtin::Sub => 2,
            Builtin::Ext => 3,
            Builtin::Poch => 4,
        }
    }

    fn signature(self) -> &'static str {
        match self {
            Builtin::Phi => "phi(±q^k)",
            Builtin::Psi => "psi(q^k)",
            Builtin::F => "f(±q^a, ±q^b)",
            Builtin::E => "E(k)",
            Builtin::Poch => "poch(±1, r, step, n|inf)",
            Builtin::V0 => "v0()",
            Builtin::H => "H(expr)",
            Builtin::Ext => "ext(expr, p, r)",
            Builtin::Sub => "sub(expr, k)",
        }
    }
}

/// A checked builtin argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arg {
    Monomial(Monomial),
    Int(i64),
    Inf,
    Expr(Expr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    QPower(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Call(Builtin, Vec<Arg>),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

fn err<T>(offset: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { offset, message: message.into() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Uint(BigInt),
    Ident(String),
    Sym(u8),
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
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
            let value: BigInt = text[start..i].parse().expect("digits");
            out.push((Tok::Uint(value), start));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
        } else if b"+-*/^(),".contains(&c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            return err(i, format!("unexpected character {:?}", text[i..].chars().next().unwrap_or('?')));
        }
    }
    out.push((Tok::End, bytes.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == &Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            err(self.offset(), format!("expected '{}', found {}", c as char, self.describe()))
        }
    }

    fn describe(&self) -> String {
        match self.peek() {
            Tok::Uint(n) => format!("number {n}"),
            Tok::Ident(s) => format!("name {s:?}"),
            Tok::Sym(c) => format!("'{}'", *c as char),
            Tok::End => "end of input".to_string(),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.eat(b'/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let neg = self.eat(b'-');
            let at = self.offset();
            let k = self.small_uint()?;
            let k = i64::try_from(k).or_else(|_| err(at, "exponent too large"))?;
            return Ok(Expr::Pow(Box::new(base), if neg { -k } else { k }));
        }
        Ok(base)
    }

    fn small_uint(&mut self) -> Result<u64, ParseError> {
        let at = self.offset();
        match self.bump() {
            Tok::Uint(n) => n.to_u64().map_or_else(|| err(at, "number too large"), Ok),
            _ => {
                self.pos -= 1;
                err(at, format!("expected an unsigned integer, found {}", self.describe()))
            }
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let at = self.offset();
        match self.peek().clone() {
            Tok::Uint(n) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Tok::Sym(b'(') => {
                self.bump();
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Tok::Ident(name) if name == "q" => {
                self.bump();
                // `q^k` binds here only when an unsigned integer follows;
                // `q^-k` is a power of `q` handled by `factor`.
                if self.peek() == &Tok::Sym(b'^') && matches!(self.peek_at(1), Tok::Uint(_)) {
                    self.bump();
                    let at = self.offset();
                    let k = self.small_uint()?;
                    let k = usize::try_from(k).or_else(|_| err(at, "exponent too large"))?;
                    return Ok(Expr::QPower(k));
                }
                Ok(Expr::QPower(1))
            }
            Tok::Ident(name) => {
                let Some(b) = Builtin::from_name(&name) else {
                    return err(at, format!("unknown function {name:?}"));
                };
                self.bump();
                self.expect(b'(')?;
                let mut raw = Vec::new();
                if !self.eat(b')') {
                    loop {
                        raw.push((self.raw_arg()?, self.offset()));
                        if self.eat(b')') {
                            break;
                        }
                        self.expect(b',')?;
                    }
                }
                if raw.len() != b.arity() {
                    return err(
                        at,
                        format!("{} takes {} argument(s), got {}; usage: {}", b.name(), b.arity(), raw.len(), b.signature()),
                    );
                }
                let args = classify(b, raw, at)?;
                Ok(Expr::Call(b, args))
            }
            _ => err(at, format!("expected a number, q, a function call or '(', found {}", self.describe())),
        }
    }

    fn raw_arg(&mut self) -> Result<Option<Expr>, ParseError> {
        if matches!(self.peek(), Tok::Ident(s) if s == "inf") {
            self.bump();
            return Ok(None);
        }
        Ok(Some(self.expr()?))
    }
}

fn as_monomial(e: &Expr) -> Option<Monomial> {
    match e {
        Expr::QPower(k) if *k >= 1 => Some(Monomial::pos(*k)),
        Expr::Neg(inner) => match inner.as_ref() {
            Expr::QPower(k) if *k >= 1 => Some(Monomial::neg(*k)),
            _ => None,
        },
        _ => None,
    }
}

fn as_int(e: &Expr) -> Option<i64> {
    match e {
        Expr::Int(n) => n.to_i64(),
        Expr::Neg(inner) => match inner.as_ref() {
            Expr::Int(n) => n.to_i64().map(|v| -v),
            _ => None,
        },
        _ => None,
    }
}

/// Turns raw arguments into the typed form each builtin expects.
fn classify(b: Builtin, raw: Vec<(Option<Expr>, usize)>, call_at: usize) -> Result<Vec<Arg>, ParseError> {
    let usage = |at: usize, what: &str| err(at, format!("{}: {what}; usage: {}", b.name(), b.signature()));
    let mut out = Vec::with_capacity(raw.len());
    for (idx, (arg, end)) in raw.into_iter().enumerate() {
        let at = if idx == 0 { call_at } else { end };
        let Some(e) = arg else {
            if b == Builtin::Poch && idx == 3 {
                out.push(Arg::Inf);
                continue;
            }
            return usage(at, "'inf' is only allowed as the length of poch");
        };
        let typed = match (b, idx) {
            (Builtin::Phi, _) | (Builtin::F, _) => match as_monomial(&e) {
                Some(m) => Arg::Monomial(m),
                None => return usage(at, "expected a monomial ±q^k"),
            },
            (Builtin::Psi, _) => match as_monomial(&e) {
                Some(m) if m.sign() > 0 => Arg::Monomial(m),
                _ => return usage(at, "expected a monomial q^k with positive sign"),
            },
            (Builtin::H, _) | (Builtin::Ext, 0) | (Builtin::Sub, 0) => Arg::Expr(e),
            (Builtin::Poch, 0) => match as_int(&e) {
                Some(s @ (1 | -1)) => Arg::Int(s),
                _ => return usage(at, "the sign must be 1 or -1"),
            },
            _ => match as_int(&e) {
                Some(v) if v >= 0 => Arg::Int(v),
                _ => return usage(at, "expected a nonnegative integer"),
            },
        };
        out.push(typed);
    }
    Ok(out)
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    if text.trim().is_empty() {
        return err(0, "empty expression");
    }
    let mut p = Parser { toks: tokenize(text)?, pos: 0 };
    let e = p.expr()?;
    if p.peek() != &Tok::End {
        return err(p.offset(), format!("unexpected {}", p.describe()));
    }
    Ok(e)
}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Neg(..) => 3,
        Expr::Pow(..) => 4,
        Expr::Int(_) | Expr::QPower(_) | Expr::Call(..) => 5,
    }
}

fn wrap(f: &mut fmt::Formatter<'_>, e: &Expr, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Monomial(m) => {
                let sign = if m.sign() < 0 { "-" } else { "" };
                write!(f, "{sign}q^{}", m.exponent())
            }
            Arg::Int(v) => write!(f, "{v}"),
            Arg::Inf => f.write_str("inf"),
            Arg::Expr(e) => write!(f, "{e}"),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = prec(self);
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::QPower(k) => write!(f, "q^{k}"),
            Expr::Neg(inner) => {
                f.write_str("-")?;
                wrap(f, inner, prec(inner) < 3)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                let op = match self {
                    Expr::Add(..) => " + ",
                    Expr::Sub(..) => " - ",
                    Expr::Mul(..) => "*",
                    _ => "/",
                };
                wrap(f, a, prec(a) < p)?;
                f.write_str(op)?;
                wrap(f, b, prec(b) <= p)
            }
            Expr::Pow(base, k) => {
                wrap(f, base, prec(base) < 5)?;
                write!(f, "^{k}")
            }
            Expr::Call(b, args) => {
                write!(f, "{}(", b.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Where an expression is evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalContext {
    pub ring: RingTag,
    pub order: usize,
}

impl EvalContext {
    pub fn new(ring: RingTag, order: usize) -> Result<EvalContext, SeriesError> {
        if order == 0 {
            return Err(SeriesError::Empty);
        }
        Ok(EvalContext { ring, order })
    }

    fn at(&self, order: usize) -> EvalContext {
        EvalContext { ring: self.ring.clone(), order }
    }
}

fn int_arg(a: &Arg) -> i64 {
    match a {
        Arg::Int(v) => *v,
        _ => unreachable!("checked when parsing"),
    }
}

fn usize_arg(a: &Arg) -> Result<usize, SeriesError> {
    usize::try_from(int_arg(a)).map_err(|_| SeriesError::InvalidArgument(format!("{a} is out of range")))
}

fn mono_arg(a: &Arg) -> Monomial {
    match a {
        Arg::Monomial(m) => *m,
        _ => unreachable!("checked when parsing"),
    }
}

fn expr_arg(a: &Arg) -> &Expr {
    match a {
        Arg::Expr(e) => e,
        _ => unreachable!("checked when parsing"),
    }
}

pub fn evaluate(e: &Expr, ctx: &EvalContext) -> Result<Series, SeriesError> {
    let (ring, n) = (&ctx.ring, ctx.order);
    Ok(match e {
        Expr::Int(v) => {
            let one = Series::one(ring, n);
            if v.is_zero() {
                Series::zero(ring, n)
            } else if v.is_positive() {
                one.scale_elem(&Elem::Int(v.clone()))?
            } else {
                unreachable!("literals are unsigned")
            }
        }
        Expr::QPower(k) => Series::monomial(ring, n, 1, *k),
        Expr::Neg(a) => evaluate(a, ctx)?.negate(),
        Expr::Add(a, b) => evaluate(a, ctx)?.try_add(&evaluate(b, ctx)?)?,
        Expr::Sub(a, b) => evaluate(a, ctx)?.try_sub(&evaluate(b, ctx)?)?,
        Expr::Mul(a, b) => evaluate(a, ctx)?.try_mul(&evaluate(b, ctx)?)?,
        Expr::Div(a, b) => evaluate(a, ctx)?.try_mul(&evaluate(b, ctx)?.invert()?)?,
        Expr::Pow(a, k) => evaluate(a, ctx)?.pow(*k)?,
        Expr::Call(b, args) => match b {
            Builtin::Phi => theta_phi(ring, mono_arg(&args[0]), n),
            Builtin::Psi => theta_psi(ring, mono_arg(&args[0]).exponent(), n),
            Builtin::F => theta_f(ring, mono_arg(&args[0]), mono_arg(&args[1]), n),
            Builtin::E => {
                let k = usize_arg(&args[0])?;
                if k == 0 {
                    return Err(SeriesError::InvalidArgument("E(k) needs k >= 1".into()));
                }
                euler_product(ring, k, n)
            }
            Builtin::Poch => {
                let sign = int_arg(&args[0]) as i8;
                let (r, step) = (usize_arg(&args[1])?, usize_arg(&args[2])?);
                if r == 0 || step == 0 {
                    return Err(SeriesError::InvalidArgument("poch needs r >= 1 and step >= 1".into()));
                }
                let count = match &args[3] {
                    Arg::Inf => None,
                    a => Some(usize_arg(a)?),
                };
                poch(ring, sign, r, step, count, n)?
            }
            Builtin::V0 => v0_series(ring, n)?.into_series(),
            Builtin::H => huffing(&evaluate(expr_arg(&args[0]), ctx)?),
            Builtin::Ext => {
                let (p, r) = (usize_arg(&args[1])?, usize_arg(&args[2])?);
                let prog = Progression::new(p, r)?;
                let inner = evaluate(expr_arg(&args[0]), &ctx.at(p * (n - 1) + r + 1))?;
                extract(&inner, prog)?
            }
            Builtin::Sub => {
                let k = usize_arg(&args[1])?;
                if k == 0 {
                    return Err(SeriesError::InvalidArgument("sub(expr, k) needs k >= 1".into()));
                }
                let inner = evaluate(expr_arg(&args[0]), &ctx.at(n.div_ceil(k)))?;
                inner.dilate(k, n)
            }
        },
    })
}

/// Parses and evaluates in one step.
pub fn eval_str(text: &str, ctx: &EvalContext) -> Result<Series, QexprError> {
    Ok(evaluate(&parse(text)?, ctx)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum QexprError {
    #[error("parse error {0}")]
    Parse(#[from] ParseError),
    #[error("evaluation error: {0}")]
    Eval(#[from] SeriesError),
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zz(order: usize) -> EvalContext {
        EvalContext::new(RingTag::Integer, order).unwrap()
    }

    fn coeffs(s: &Series) -> Vec<i64> {
        s.elems().iter().map(|e| e.to_i64().unwrap()).collect()
    }

    #[test]
    fn parse_shapes() {
        let e = parse("phi(-q)^2 / phi(q^2)^2").unwrap();
        let phi = |m: Monomial| Expr::Call(Builtin::Phi, vec![Arg::Monomial(m)]);
        assert_eq!(
            e,
            Expr::Div(
                Box::new(Expr::Pow(Box::new(phi(Monomial::neg(1))), 2)),
                Box::new(Expr::Pow(Box::new(phi(Monomial::pos(2))), 2))
            )
        );
        assert!(parse("3*psi(q) + 512*q^1*psi(q)^9/phi(-q)^8").is_ok());
    }

    #[test]
    fn parse_errors_carry_offsets() {
        let e = parse("phi(q,q)").unwrap_err();
        assert!(e.message.contains("takes 1 argument"), "{e}");
        assert_eq!(e.offset, 0);
        let e = parse("1 + foo(q)").unwrap_err();
        assert_eq!(e.offset, 4);
        assert!(e.message.contains("unknown function"));
        let e = parse("1 + * 2").unwrap_err();
        assert_eq!(e.offset, 4);
        let e = parse("psi(-q)").unwrap_err();
        assert!(e.message.contains("positive sign"));
        assert!(parse("").is_err());
        assert_eq!(parse("(1 + q").unwrap_err().offset, 6);
        assert_eq!(parse("1 # 2").unwrap_err().offset, 2);
    }

    #[test]
    fn evaluation_basics() {
        assert_eq!(coeffs(&eval_str("E(1)", &zz(8)).unwrap()), vec![1, -1, -1, 0, 0, 1, 0, 1]);
        assert!(eval_str("phi(q)*phi(-q) - phi(-q^2)^2", &zz(500)).unwrap().is_zero());
        assert_eq!(coeffs(&eval_str("1+2*q^1^2", &zz(4)).unwrap()), vec![1, 0, 2, 0]);
        assert_eq!(coeffs(&eval_str("H(1+q+q^2+q^3)", &zz(4)).unwrap()), vec![1, 0, 1, 0]);
        assert_eq!(coeffs(&eval_str("ext(1+2*q+3*q^2+4*q^3, 2, 1)", &zz(2)).unwrap()), vec![2, 4]);
        assert_eq!(coeffs(&eval_str("sub(1+q, 2)", &zz(4)).unwrap()), vec![1, 0, 1, 0]);
        assert_eq!(coeffs(&eval_str("poch(-1, 1, 2, 2)", &zz(6)).unwrap()), vec![1, 1, 0, 1, 1, 0]);
        assert_eq!(coeffs(&eval_str("v0()", &zz(6)).unwrap()), vec![1, 1, 2, 2, 3, 4]);
        assert_eq!(coeffs(&eval_str("psi(q)", &zz(8)).unwrap()), vec![1, 1, 0, 1, 0, 0, 1, 0]);
        assert!(matches!(eval_str("1/(2+q)", &zz(4)), Err(QexprError::Eval(SeriesError::NonUnit(..)))));
        assert!(matches!(eval_str("q^-1", &zz(4)), Err(QexprError::Eval(SeriesError::NonUnit(..)))));
    }

    #[test]
    fn ext_matches_the_genfun_form() {
        let lhs = eval_str("2*ext(v0(), 4, 0) - 1", &zz(400)).unwrap();
        let rhs = eval_str("phi(q)^2/phi(-q)", &zz(400)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn print_round_trip() {
        for text in ["-q^2^3", "(1 - q)^-2", "-(1 + q)", "1 - (q - q^2)", "phi(-q^3)*f(q, -q^2)", "poch(-1, 2, 4, inf)^4"] {
            let e = parse(text).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e, "{text} -> {e}");
        }
    }
}
