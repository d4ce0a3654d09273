//! A small expression language over the series engine, used by the CLI.
//!
//! Grammar (LL(1), left-associative, standard precedence):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' int)?
//! atom   := '(' expr ')' | 'q' | int | call
//! call   := poch(a,d) | A(k) | C(k) | B(k,b) | D(k,g) | Agen(l,n,k)
//!         | theta6 | R14 | R23 | F5 | inv(e) | shift(e,m)
//! ```
//!
//! Negative integers are literals (also in argument position); there is no
//! unary minus on expressions (write `0 - e`). Every token, node and error
//! carries a byte-offset span into the source.

use crate::macmahon::{family_series, FamilySpec};
use crate::products::{pochhammer, rr_products, theta6, Theta6Form};
use crate::series::{Series, SeriesError};
use std::fmt;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    fn join(self, other: Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Int(i64),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("lexical error at byte {offset}: {message}")]
pub struct LexError {
    pub offset: usize,
    pub message: String,
}

pub fn tokenize(input: &str) -> Result<Vec<Token>, LexError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
            }
            b'+' | b'-' | b'*' | b'^' | b'(' | b')' | b',' => {
                let kind = match b {
                    b'+' => TokenKind::Plus,
                    b'-' => TokenKind::Minus,
                    b'*' => TokenKind::Star,
                    b'^' => TokenKind::Caret,
                    b'(' => TokenKind::LParen,
                    b')' => TokenKind::RParen,
                    _ => TokenKind::Comma,
                };
                i += 1;
                out.push(Token { kind, span: Span::new(start, i) });
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text = &input[start..i];
                let value: i64 = text.parse().map_err(|_| LexError {
                    offset: start,
                    message: format!("integer literal '{text}' out of range"),
                })?;
                out.push(Token { kind: TokenKind::Int(value), span: Span::new(start, i) });
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push(Token {
                    kind: TokenKind::Ident(input[start..i].to_string()),
                    span: Span::new(start, i),
                });
            }
            _ => {
                return Err(LexError {
                    offset: i,
                    message: format!("illegal character {:?}", input[i..].chars().next().unwrap()),
                })
            }
        }
    }
    Ok(out)
}

/// Built-in callables. `Theta6`, `R14`, `R23` and `F5` are niladic and are
/// written bare, without parentheses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CallKind {
    Poch,
    A,
    C,
    B,
    D,
    Agen,
    Theta6,
    R14,
    R23,
    F5,
    Inv,
    Shift,
}

impl CallKind {
    fn from_name(name: &str) -> Option<CallKind> {
        Some(match name {
            "poch" => CallKind::Poch,
            "A" => CallKind::A,
            "C" => CallKind::C,
            "B" => CallKind::B,
            "D" => CallKind::D,
            "Agen" => CallKind::Agen,
            "theta6" => CallKind::Theta6,
            "R14" => CallKind::R14,
            "R23" => CallKind::R23,
            "F5" => CallKind::F5,
            "inv" => CallKind::Inv,
            "shift" => CallKind::Shift,
            _ => return None,
        })
    }

    fn name(&self) -> &'static str {
        match self {
            CallKind::Poch => "poch",
            CallKind::A => "A",
            CallKind::C => "C",
            CallKind::B => "B",
            CallKind::D => "D",
            CallKind::Agen => "Agen",
            CallKind::Theta6 => "theta6",
            CallKind::R14 => "R14",
            CallKind::R23 => "R23",
            CallKind::F5 => "F5",
            CallKind::Inv => "inv",
            CallKind::Shift => "shift",
        }
    }

    /// `(series-argument count, integer-argument count)`; series arguments
    /// come first in the written form (`inv(e)`, `shift(e, m)`).
    fn arity(&self) -> (usize, usize) {
        match self {
            CallKind::Poch => (0, 2),
            CallKind::A | CallKind::C => (0, 1),
            CallKind::B | CallKind::D => (0, 2),
            CallKind::Agen => (0, 3),
            CallKind::Theta6 | CallKind::R14 | CallKind::R23 | CallKind::F5 => (0, 0),
            CallKind::Inv => (1, 0),
            CallKind::Shift => (1, 1),
        }
    }
}

#[derive(Clone, Debug)]
pub enum ExprKind {
    Int(i64),
    Q,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Call(CallKind, Vec<Expr>, Vec<i64>),
}

#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl Expr {
    /// Structural equality, ignoring spans.
    pub fn structurally_eq(&self, other: &Expr) -> bool {
        match (&self.kind, &other.kind) {
            (ExprKind::Int(a), ExprKind::Int(b)) => a == b,
            (ExprKind::Q, ExprKind::Q) => true,
            (ExprKind::Add(a1, a2), ExprKind::Add(b1, b2))
            | (ExprKind::Sub(a1, a2), ExprKind::Sub(b1, b2))
            | (ExprKind::Mul(a1, a2), ExprKind::Mul(b1, b2)) => {
                a1.structurally_eq(b1) && a2.structurally_eq(b2)
            }
            (ExprKind::Pow(a, ea), ExprKind::Pow(b, eb)) => ea == eb && a.structurally_eq(b),
            (ExprKind::Call(ka, sa, ia), ExprKind::Call(kb, sb, ib)) => {
                ka == kb
                    && ia == ib
                    && sa.len() == sb.len()
                    && sa.iter().zip(sb).all(|(x, y)| x.structurally_eq(y))
            }
            _ => false,
        }
    }
}

/// Precedence-aware printer; output reparses to a structurally equal tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn prec(e: &ExprKind) -> u8 {
            match e {
                ExprKind::Add(..) | ExprKind::Sub(..) => 0,
                ExprKind::Mul(..) => 1,
                ExprKind::Pow(..) => 2,
                ExprKind::Int(v) if *v < 0 => 2,
                _ => 3,
            }
        }
        fn go(e: &Expr, min_prec: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            let p = prec(&e.kind);
            let parens = p < min_prec;
            if parens {
                write!(f, "(")?;
            }
            match &e.kind {
                ExprKind::Int(v) => write!(f, "{v}")?,
                ExprKind::Q => write!(f, "q")?,
                ExprKind::Add(a, b) => {
                    go(a, 0, f)?;
                    write!(f, " + ")?;
                    go(b, 1, f)?;
                }
                ExprKind::Sub(a, b) => {
                    go(a, 0, f)?;
                    write!(f, " - ")?;
                    go(b, 1, f)?;
                }
                ExprKind::Mul(a, b) => {
                    go(a, 1, f)?;
                    write!(f, "*")?;
                    go(b, 2, f)?;
                }
                ExprKind::Pow(a, e2) => {
                    go(a, 3, f)?;
                    if *e2 < 0 {
                        write!(f, "^({e2})")?;
                    } else {
                        write!(f, "^{e2}")?;
                    }
                }
                ExprKind::Call(kind, series_args, int_args) => {
                    write!(f, "{}", kind.name())?;
                    if !series_args.is_empty() || !int_args.is_empty() {
                        write!(f, "(")?;
                        let mut first = true;
                        for a in series_args {
                            if !first {
                                write!(f, ", ")?;
                            }
                            first = false;
                            go(a, 0, f)?;
                        }
                        for v in int_args {
                            if !first {
                                write!(f, ", ")?;
                            }
                            first = false;
                            write!(f, "{v}")?;
                        }
                        write!(f, ")")?;
                    }
                }
            }
            if parens {
                write!(f, ")")?;
            }
            Ok(())
        }
        go(self, 0, f)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("parse error at {span}: {message}")]
pub struct ParseError {
    pub span: Span,
    pub message: String,
}

impl From<LexError> for ParseError {
    fn from(e: LexError) -> Self {
        ParseError { span: Span::new(e.offset, e.offset + 1), message: e.message }
    }
}

pub fn parse(input: &str) -> Result<Expr, ParseError> {
    let tokens = tokenize(input)?;
    let mut p = Parser { tokens: &tokens, pos: 0, input_len: input.len() };
    let expr = p.expr()?;
    if let Some(tok) = p.peek() {
        return Err(ParseError {
            span: tok.span,
            message: format!("unexpected trailing token {:?}", tok.kind),
        });
    }
    Ok(expr)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    input_len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<&'a Token> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn end_span(&self) -> Span {
        Span::new(self.input_len, self.input_len)
    }

    fn expect(&mut self, kind: &TokenKind, what: &str) -> Result<Span, ParseError> {
        match self.next() {
            Some(t) if &t.kind == kind => Ok(t.span),
            Some(t) => Err(ParseError {
                span: t.span,
                message: format!("expected {what}, found {:?}", t.kind),
            }),
            None => Err(ParseError {
                span: self.end_span(),
                message: format!("expected {what}, found end of input"),
            }),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().map(|t| &t.kind) {
                Some(TokenKind::Plus) => {
                    self.next();
                    let rhs = self.term()?;
                    let span = lhs.span.join(rhs.span);
                    lhs = Expr { kind: ExprKind::Add(Box::new(lhs), Box::new(rhs)), span };
                }
                Some(TokenKind::Minus) => {
                    self.next();
                    let rhs = self.term()?;
                    let span = lhs.span.join(rhs.span);
                    lhs = Expr { kind: ExprKind::Sub(Box::new(lhs), Box::new(rhs)), span };
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Star)) {
            self.next();
            let rhs = self.factor()?;
            let span = lhs.span.join(rhs.span);
            lhs = Expr { kind: ExprKind::Mul(Box::new(lhs), Box::new(rhs)), span };
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Caret)) {
            self.next();
            let (exp, espan) = self.int_literal("power exponent")?;
            let span = base.span.join(espan);
            return Ok(Expr { kind: ExprKind::Pow(Box::new(base), exp), span });
        }
        Ok(base)
    }

    /// An integer literal, possibly negative, possibly parenthesized.
    fn int_literal(&mut self, what: &str) -> Result<(i64, Span), ParseError> {
        match self.next() {
            Some(Token { kind: TokenKind::Int(v), span }) => Ok((*v, *span)),
            Some(Token { kind: TokenKind::Minus, span }) => match self.next() {
                Some(Token { kind: TokenKind::Int(v), span: s2 }) => Ok((-v, span.join(*s2))),
                other => Err(ParseError {
                    span: other.map(|t| t.span).unwrap_or(self.end_span()),
                    message: format!("expected integer after '-' in {what}"),
                }),
            },
            Some(Token { kind: TokenKind::LParen, .. }) => {
                let v = self.int_literal(what)?;
                self.expect(&TokenKind::RParen, "')'")?;
                Ok(v)
            }
            other => Err(ParseError {
                span: other.map(|t| t.span).unwrap_or(self.end_span()),
                message: format!("expected integer literal for {what}"),
            }),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let tok = self.next().ok_or_else(|| ParseError {
            span: self.end_span(),
            message: "expected expression, found end of input".into(),
        })?;
        match &tok.kind {
            TokenKind::Int(v) => Ok(Expr { kind: ExprKind::Int(*v), span: tok.span }),
            TokenKind::Minus => {
                // negative integer literal
                match self.next() {
                    Some(Token { kind: TokenKind::Int(v), span }) => Ok(Expr {
                        kind: ExprKind::Int(-v),
                        span: tok.span.join(*span),
                    }),
                    other => Err(ParseError {
                        span: other.map(|t| t.span).unwrap_or(self.end_span()),
                        message: "'-' starts a negative integer literal only; write 0 - e for negation".into(),
                    }),
                }
            }
            TokenKind::LParen => {
                let inner = self.expr()?;
                let close = self.expect(&TokenKind::RParen, "')'")?;
                Ok(Expr { kind: inner.kind, span: tok.span.join(close) })
            }
            TokenKind::Ident(name) if name == "q" => {
                Ok(Expr { kind: ExprKind::Q, span: tok.span })
            }
            TokenKind::Ident(name) => {
                let kind = CallKind::from_name(name).ok_or_else(|| ParseError {
                    span: tok.span,
                    message: format!("unknown function '{name}'"),
                })?;
                let (n_series, n_ints) = kind.arity();
                if n_series + n_ints == 0 {
                    if matches!(self.peek().map(|t| &t.kind), Some(TokenKind::LParen)) {
                        return Err(ParseError {
                            span: tok.span,
                            message: format!("'{name}' takes no arguments"),
                        });
                    }
                    return Ok(Expr { kind: ExprKind::Call(kind, vec![], vec![]), span: tok.span });
                }
                self.expect(&TokenKind::LParen, "'('").map_err(|e| ParseError {
                    span: e.span,
                    message: format!(
                        "'{name}' requires {} argument(s): {}",
                        n_series + n_ints,
                        e.message
                    ),
                })?;
                let mut series_args = Vec::new();
                let mut int_args = Vec::new();
                for i in 0..(n_series + n_ints) {
                    if i > 0 {
                        self.expect(&TokenKind::Comma, "','").map_err(|e| ParseError {
                            span: e.span,
                            message: format!(
                                "'{name}' requires {} argument(s)",
                                n_series + n_ints
                            ),
                        })?;
                    }
                    if i < n_series {
                        series_args.push(self.expr()?);
                    } else {
                        int_args.push(self.int_literal("argument")?.0);
                    }
                }
                let close = self.expect(&TokenKind::RParen, "')'").map_err(|e| ParseError {
                    span: e.span,
                    message: format!("'{name}' requires exactly {} argument(s)", n_series + n_ints),
                })?;
                Ok(Expr {
                    kind: ExprKind::Call(kind, series_args, int_args),
                    span: tok.span.join(close),
                })
            }
            other => Err(ParseError {
                span: tok.span,
                message: format!("unexpected token {other:?}"),
            }),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("evaluation error at {span}: {message}")]
pub struct EvalError {
    pub span: Span,
    pub message: String,
}

fn domain(span: Span, message: impl Into<String>) -> EvalError {
    EvalError { span, message: message.into() }
}

/// Evaluate to a series truncated at `order`. Leaves are exact; calls are
/// computed at the order each enclosing context demands, so shifts and
/// Laurent inverses retain every determined coefficient.
pub fn eval(expr: &Expr, order: i64) -> Result<Series, EvalError> {
    Ok(eval_at(expr, order)?.truncate(order))
}

fn eval_at(expr: &Expr, want: i64) -> Result<Series, EvalError> {
    match &expr.kind {
        ExprKind::Int(v) => Ok(Series::constant(*v)),
        ExprKind::Q => Ok(Series::monomial(1, 1)),
        ExprKind::Add(a, b) => Ok(&eval_at(a, want)? + &eval_at(b, want)?),
        ExprKind::Sub(a, b) => Ok(&eval_at(a, want)? - &eval_at(b, want)?),
        ExprKind::Mul(a, b) => {
            let ea = eval_at(a, want)?;
            let eb = eval_at(b, want)?;
            let r = &ea * &eb;
            if r.order() >= want || ea.is_zero() || eb.is_zero() {
                return Ok(r);
            }
            // one operand's positive valuation starves the other's window:
            // re-evaluate at the orders the product actually needs
            let va = ea.valuation().unwrap();
            let vb = eb.valuation().unwrap();
            let ea = eval_at(a, want - vb)?;
            let eb = eval_at(b, want - va)?;
            Ok(&ea * &eb)
        }
        ExprKind::Pow(a, e) => {
            if *e == 0 {
                return Ok(Series::one());
            }
            let probe = eval_at(a, want)?;
            if probe.is_zero() {
                if *e > 0 {
                    return Ok(Series::zero());
                }
                return Err(domain(a.span, "cannot invert a series that is zero to this order"));
            }
            let v = probe.valuation().unwrap();
            if *e > 0 {
                // f^e is determined to base.order + (e-1)v; refresh the base
                // when a positive power of a negative valuation starves it
                let needed = want - (e - 1) * v;
                let base = if needed > want { eval_at(a, needed)? } else { probe };
                Ok(base.pow(*e as u32))
            } else {
                let ep = -*e;
                let target = (want + 2 * ep * v).max(ep * v);
                let needed = target - (ep - 1) * v;
                let base = if needed > want { eval_at(a, needed)? } else { probe };
                let p = base.pow(ep as u32).truncate(target);
                p.invert().map_err(|err| match err {
                    SeriesError::NotUnit { leading, valuation } => domain(
                        a.span,
                        format!("leading coefficient {leading} at q^{valuation} is not +1 or -1"),
                    ),
                    other => domain(expr.span, other.to_string()),
                })
            }
        }
        ExprKind::Call(kind, series_args, int_args) => {
            eval_call(*kind, series_args, int_args, want, expr.span)
        }
    }
}

fn eval_inverse(child: &Expr, want: i64, span: Span) -> Result<Series, EvalError> {
    let c = eval_at(child, want)?;
    if c.is_zero() {
        return Err(domain(child.span, "cannot invert a series that is zero to this order"));
    }
    let v = c.valuation().unwrap();
    let invert = |s: &Series| {
        s.invert().map_err(|e| match e {
            SeriesError::NotUnit { leading, valuation } => domain(
                child.span,
                format!("leading coefficient {leading} at q^{valuation} is not +1 or -1"),
            ),
            other => domain(span, other.to_string()),
        })
    };
    if c.is_exact() {
        if c.iter_terms().count() == 1 {
            return invert(&c);
        }
        let t = (want + 2 * v).max(v);
        return invert(&c.truncate(t));
    }
    let inv = invert(&c)?;
    if inv.order() >= want {
        return Ok(inv);
    }
    let c = eval_at(child, want + 2 * v)?;
    invert(&c)
}

fn eval_call(
    kind: CallKind,
    series_args: &[Expr],
    int_args: &[i64],
    want: i64,
    span: Span,
) -> Result<Series, EvalError> {
    let order = want.max(0);
    match kind {
        CallKind::Poch => {
            let (a, d) = (int_args[0], int_args[1]);
            if a < 0 || d < 1 {
                return Err(domain(span, format!("poch needs a >= 0 and d >= 1 (got {a}, {d})")));
            }
            Ok(pochhammer(a, d, order).truncate(want))
        }
        CallKind::A => family_call(FamilySpec::A, int_args[0], want, span),
        CallKind::C => family_call(FamilySpec::C, int_args[0], want, span),
        CallKind::B => {
            let beta = int_args[1];
            if beta < 0 {
                return Err(domain(span, format!("B needs beta >= 0 (got {beta})")));
            }
            family_call(FamilySpec::B { beta }, int_args[0], want, span)
        }
        CallKind::D => {
            let gamma = int_args[1];
            if gamma < 0 {
                return Err(domain(span, format!("D needs gamma >= 0 (got {gamma})")));
            }
            family_call(FamilySpec::D { gamma }, int_args[0], want, span)
        }
        CallKind::Agen => {
            let (ell, modulus, k) = (int_args[0], int_args[1], int_args[2]);
            if modulus < 1 || ell < 0 {
                return Err(domain(
                    span,
                    format!("Agen needs l >= 0 and n >= 1 (got l={ell}, n={modulus})"),
                ));
            }
            family_call(FamilySpec::Agen { ell, modulus }, k, want, span)
        }
        CallKind::Theta6 => Ok(theta6(order, Theta6Form::Product).truncate(want)),
        CallKind::R14 => Ok(rr_products(order).r14.truncate(want)),
        CallKind::R23 => Ok(rr_products(order).r23.truncate(want)),
        CallKind::F5 => Ok(rr_products(order).f5.truncate(want)),
        CallKind::Inv => eval_inverse(&series_args[0], want, span),
        CallKind::Shift => {
            let m = int_args[0];
            Ok(eval_at(&series_args[0], want - m)?.shift(m))
        }
    }
}

fn family_call(spec: FamilySpec, k: i64, want: i64, span: Span) -> Result<Series, EvalError> {
    if k < 0 {
        return Err(domain(span, format!("family index must be >= 0 (got {k})")));
    }
    Ok(family_series(&spec, k, want.max(0)).truncate(want))
}
