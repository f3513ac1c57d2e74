//! Symbolic coefficient expressions in the time variable `t`.
//!
//! ODE coefficients are parsed into a small AST supporting exact evaluation
//! and analytic differentiation. The operator set is deliberately minimal:
//! `+ - * /`, `^` with a constant integer exponent, and the unary functions
//! `sin cos exp sqrt log`. Precedence is `^` > unary `-` > `* /` > `+ -`.

use std::fmt;
use thiserror::Error;

/// Expression tree over the single variable `t`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Time,
    Neg(Box<Expr>),
    Sin(Box<Expr>),
    Cos(Box<Expr>),
    Exp(Box<Expr>),
    Sqrt(Box<Expr>),
    Log(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown identifier `{name}` at position {pos}")]
    UnknownIdentifier { name: String, pos: usize },
}

/// Runtime evaluation failure on the problem interval.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalError {
    #[error("square root of negative value {value} at t = {t}")]
    SqrtNegative { value: f64, t: f64 },
    #[error("logarithm of non-positive value {value} at t = {t}")]
    LogNonPositive { value: f64, t: f64 },
    #[error("division by zero at t = {t}")]
    DivisionByZero { t: f64 },
}

impl Expr {
    pub fn constant(v: f64) -> Expr {
        Expr::Const(v)
    }

    pub fn time() -> Expr {
        Expr::Time
    }

    pub fn zero() -> Expr {
        Expr::Const(0.0)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Expr::Const(v) if *v == 0.0)
    }

    /// True when the tree contains no occurrence of `t`.
    pub fn is_time_free(&self) -> bool {
        match self {
            Expr::Const(_) => true,
            Expr::Time => false,
            Expr::Neg(e) | Expr::Sin(e) | Expr::Cos(e) | Expr::Exp(e) | Expr::Sqrt(e)
            | Expr::Log(e) => e.is_time_free(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.is_time_free() && b.is_time_free()
            }
            Expr::Pow(e, _) => e.is_time_free(),
        }
    }

    /// The value of a time-free expression, if it evaluates cleanly.
    pub fn as_constant(&self) -> Option<f64> {
        if self.is_time_free() {
            self.eval(0.0).ok()
        } else {
            None
        }
    }

    pub fn eval(&self, t: f64) -> Result<f64, EvalError> {
        match self {
            Expr::Const(v) => Ok(*v),
            Expr::Time => Ok(t),
            Expr::Neg(e) => Ok(-e.eval(t)?),
            Expr::Sin(e) => Ok(e.eval(t)?.sin()),
            Expr::Cos(e) => Ok(e.eval(t)?.cos()),
            Expr::Exp(e) => Ok(e.eval(t)?.exp()),
            Expr::Sqrt(e) => {
                let v = e.eval(t)?;
                if v < 0.0 {
                    Err(EvalError::SqrtNegative { value: v, t })
                } else {
                    Ok(v.sqrt())
                }
            }
            Expr::Log(e) => {
                let v = e.eval(t)?;
                if v <= 0.0 {
                    Err(EvalError::LogNonPositive { value: v, t })
                } else {
                    Ok(v.ln())
                }
            }
            Expr::Add(a, b) => Ok(a.eval(t)? + b.eval(t)?),
            Expr::Sub(a, b) => Ok(a.eval(t)? - b.eval(t)?),
            Expr::Mul(a, b) => Ok(a.eval(t)? * b.eval(t)?),
            Expr::Div(a, b) => {
                let d = b.eval(t)?;
                if d == 0.0 {
                    Err(EvalError::DivisionByZero { t })
                } else {
                    Ok(a.eval(t)? / d)
                }
            }
            Expr::Pow(e, k) => Ok(e.eval(t)?.powi(*k)),
        }
    }

    /// Exact symbolic derivative. The derivative of any time-free expression
    /// is the zero expression.
    pub fn differentiate(&self) -> Expr {
        match self {
            Expr::Const(_) => Expr::zero(),
            Expr::Time => Expr::Const(1.0),
            Expr::Neg(e) => neg(e.differentiate()),
            Expr::Sin(e) => mul(Expr::Cos(e.clone()), e.differentiate()),
            Expr::Cos(e) => neg(mul(Expr::Sin(e.clone()), e.differentiate())),
            Expr::Exp(e) => mul(Expr::Exp(e.clone()), e.differentiate()),
            Expr::Sqrt(e) => div(
                e.differentiate(),
                mul(Expr::Const(2.0), Expr::Sqrt(e.clone())),
            ),
            Expr::Log(e) => div(e.differentiate(), (**e).clone()),
            Expr::Add(a, b) => add(a.differentiate(), b.differentiate()),
            Expr::Sub(a, b) => sub(a.differentiate(), b.differentiate()),
            Expr::Mul(a, b) => add(
                mul(a.differentiate(), (**b).clone()),
                mul((**a).clone(), b.differentiate()),
            ),
            Expr::Div(a, b) => div(
                sub(
                    mul(a.differentiate(), (**b).clone()),
                    mul((**a).clone(), b.differentiate()),
                ),
                pow((**b).clone(), 2),
            ),
            Expr::Pow(e, k) => mul(
                mul(Expr::Const(*k as f64), pow((**e).clone(), *k - 1)),
                e.differentiate(),
            ),
        }
    }
}

// Folding constructors keep derivative trees small; constant subtrees
// collapse so d/dt of a constant is structurally `Const(0.0)`.
fn add(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Const(x), Expr::Const(y)) => Expr::Const(x + y),
        (Expr::Const(x), b) if x == 0.0 => b,
        (a, Expr::Const(y)) if y == 0.0 => a,
        (a, b) => Expr::Add(Box::new(a), Box::new(b)),
    }
}

fn sub(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Const(x), Expr::Const(y)) => Expr::Const(x - y),
        (a, Expr::Const(y)) if y == 0.0 => a,
        (Expr::Const(x), b) if x == 0.0 => neg(b),
        (a, b) => Expr::Sub(Box::new(a), Box::new(b)),
    }
}

fn mul(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Const(x), Expr::Const(y)) => Expr::Const(x * y),
        (Expr::Const(x), _) | (_, Expr::Const(x)) if x == 0.0 => Expr::zero(),
        (Expr::Const(x), b) if x == 1.0 => b,
        (a, Expr::Const(y)) if y == 1.0 => a,
        (a, b) => Expr::Mul(Box::new(a), Box::new(b)),
    }
}

fn div(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (a, Expr::Const(y)) if y == 1.0 => a,
        (a, b) => Expr::Div(Box::new(a), Box::new(b)),
    }
}

fn neg(a: Expr) -> Expr {
    match a {
        Expr::Const(x) => Expr::Const(-x),
        Expr::Neg(inner) => *inner,
        a => Expr::Neg(Box::new(a)),
    }
}

fn pow(e: Expr, k: i32) -> Expr {
    match k {
        0 => Expr::Const(1.0),
        1 => e,
        _ => Expr::Pow(Box::new(e), k),
    }
}

/// Symbolic builders used when composing transformed coefficients.
pub mod build {
    use super::Expr;

    pub fn add(a: Expr, b: Expr) -> Expr {
        super::add(a, b)
    }
    pub fn sub(a: Expr, b: Expr) -> Expr {
        super::sub(a, b)
    }
    pub fn mul(a: Expr, b: Expr) -> Expr {
        super::mul(a, b)
    }
    pub fn div(a: Expr, b: Expr) -> Expr {
        super::div(a, b)
    }
}

fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Neg(..) => 3,
        Expr::Pow(..) => 4,
        _ => 5,
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
            if precedence(e) < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        match self {
            Expr::Const(v) => write!(f, "{v}"),
            Expr::Time => write!(f, "t"),
            Expr::Neg(e) => {
                write!(f, "-")?;
                child(f, e, 3)
            }
            Expr::Sin(e) => write!(f, "sin({e})"),
            Expr::Cos(e) => write!(f, "cos({e})"),
            Expr::Exp(e) => write!(f, "exp({e})"),
            Expr::Sqrt(e) => write!(f, "sqrt({e})"),
            Expr::Log(e) => write!(f, "log({e})"),
            Expr::Add(a, b) => {
                child(f, a, 1)?;
                write!(f, " + ")?;
                child(f, b, 2)
            }
            Expr::Sub(a, b) => {
                child(f, a, 1)?;
                write!(f, " - ")?;
                child(f, b, 2)
            }
            Expr::Mul(a, b) => {
                child(f, a, 2)?;
                write!(f, " * ")?;
                child(f, b, 3)
            }
            Expr::Div(a, b) => {
                child(f, a, 2)?;
                write!(f, " / ")?;
                child(f, b, 3)
            }
            Expr::Pow(e, k) => {
                child(f, e, 5)?;
                write!(f, "^{k}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\r' | '\n' => i += 1,
            '+' => {
                out.push((Token::Plus, i));
                i += 1;
            }
            '-' => {
                out.push((Token::Minus, i));
                i += 1;
            }
            '*' => {
                out.push((Token::Star, i));
                i += 1;
            }
            '/' => {
                out.push((Token::Slash, i));
                i += 1;
            }
            '^' => {
                out.push((Token::Caret, i));
                i += 1;
            }
            '(' => {
                out.push((Token::LParen, i));
                i += 1;
            }
            ')' => {
                out.push((Token::RParen, i));
                i += 1;
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                // Scientific exponent only when it cannot be an identifier.
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let lit = &text[start..i];
                let v: f64 = lit.parse().map_err(|_| ParseError::Syntax {
                    pos: start,
                    message: format!("invalid number literal `{lit}`"),
                })?;
                out.push((Token::Num(v), start));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((Token::Ident(text[start..i].to_string()), start));
            }
            _ => {
                return Err(ParseError::Syntax {
                    pos: i,
                    message: format!("unexpected character `{c}`"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [(Token, usize)],
    pos: usize,
    text_len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&(Token, usize)> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<&(Token, usize)> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(_, p)| *p)
            .unwrap_or(self.text_len)
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        while let Some((tok, _)) = self.peek() {
            match tok {
                Token::Plus => {
                    self.next();
                    let rhs = self.term()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Token::Minus => {
                    self.next();
                    let rhs = self.term()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while let Some((tok, _)) = self.peek() {
            match tok {
                Token::Star => {
                    self.next();
                    let rhs = self.unary()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                Token::Slash => {
                    self.next();
                    let rhs = self.unary()?;
                    lhs = Expr::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if let Some((Token::Minus, _)) = self.peek() {
            self.next();
            let inner = self.unary()?;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if let Some((Token::Caret, _)) = self.peek() {
            self.next();
            let exp = self.integer_exponent()?;
            return Ok(Expr::Pow(Box::new(base), exp));
        }
        Ok(base)
    }

    fn integer_exponent(&mut self) -> Result<i32, ParseError> {
        let mut sign = 1i32;
        if let Some((Token::Minus, _)) = self.peek() {
            self.next();
            sign = -1;
        }
        let pos = self.here();
        match self.next() {
            Some((Token::Num(v), p)) => {
                if v.fract() != 0.0 || v.abs() > i32::MAX as f64 {
                    Err(ParseError::Syntax {
                        pos: *p,
                        message: format!("exponent must be a constant integer, got `{v}`"),
                    })
                } else {
                    Ok(sign * (*v as i32))
                }
            }
            _ => Err(ParseError::Syntax {
                pos,
                message: "expected a constant integer exponent after `^`".into(),
            }),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.here();
        match self.next().cloned() {
            Some((Token::Num(v), _)) => Ok(Expr::Const(v)),
            Some((Token::Ident(name), p)) => match name.as_str() {
                "t" => Ok(Expr::Time),
                "sin" | "cos" | "exp" | "sqrt" | "log" => {
                    let inner = self.paren_arg(&name)?;
                    Ok(match name.as_str() {
                        "sin" => Expr::Sin(Box::new(inner)),
                        "cos" => Expr::Cos(Box::new(inner)),
                        "exp" => Expr::Exp(Box::new(inner)),
                        "sqrt" => Expr::Sqrt(Box::new(inner)),
                        _ => Expr::Log(Box::new(inner)),
                    })
                }
                _ => Err(ParseError::UnknownIdentifier { name, pos: p }),
            },
            Some((Token::LParen, p)) => {
                let inner = self.expr()?;
                match self.next() {
                    Some((Token::RParen, _)) => Ok(inner),
                    _ => Err(ParseError::Syntax {
                        pos: p,
                        message: "unclosed parenthesis".into(),
                    }),
                }
            }
            Some((tok, p)) => Err(ParseError::Syntax {
                pos: p,
                message: format!("unexpected token {tok:?}"),
            }),
            None => Err(ParseError::Syntax {
                pos,
                message: "unexpected end of expression".into(),
            }),
        }
    }

    fn paren_arg(&mut self, func: &str) -> Result<Expr, ParseError> {
        let pos = self.here();
        match self.next() {
            Some((Token::LParen, _)) => {}
            _ => {
                return Err(ParseError::Syntax {
                    pos,
                    message: format!("expected `(` after `{func}`"),
                })
            }
        }
        let inner = self.expr()?;
        let pos = self.here();
        match self.next() {
            Some((Token::RParen, _)) => Ok(inner),
            _ => Err(ParseError::Syntax {
                pos,
                message: format!("expected `)` closing argument of `{func}`"),
            }),
        }
    }
}

/// Parse an arithmetic expression in the variable `t`.
pub fn parse_expression(text: &str) -> Result<Expr, ParseError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(ParseError::Syntax {
            pos: 0,
            message: "empty expression".into(),
        });
    }
    let mut parser = Parser {
        tokens: &tokens,
        pos: 0,
        text_len: text.len(),
    };
    let expr = parser.expr()?;
    if let Some((tok, p)) = parser.peek() {
        return Err(ParseError::Syntax {
            pos: *p,
            message: format!("trailing input starting with {tok:?}"),
        });
    }
    Ok(expr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn eval_str(text: &str, t: f64) -> f64 {
        parse_expression(text).unwrap().eval(t).unwrap()
    }

    #[test]
    fn evaluates_example_expressions() {
        assert_eq!(eval_str("t^2 + sin(t)", 0.0), 0.0);
        assert_relative_eq!(eval_str("exp(-t/2)", 2.0), (-1.0f64).exp(), epsilon = 1e-15);
        assert_eq!(eval_str("3*t - 1", 1.0), 2.0);
    }

    #[test]
    fn precedence_matches_convention() {
        assert_eq!(eval_str("2 + 3 * 4", 0.0), 14.0);
        assert_eq!(eval_str("2 * 3^2", 0.0), 18.0);
        // Unary minus binds looser than the power operator.
        assert_eq!(eval_str("-t^2", 3.0), -9.0);
        assert_eq!(eval_str("(1 + t)^2", 2.0), 9.0);
        assert_eq!(eval_str("t^-1", 4.0), 0.25);
        assert_eq!(eval_str("6 / 2 / 3", 0.0), 1.0);
        assert_eq!(eval_str("1 - 2 - 3", 0.0), -4.0);
    }

    #[test]
    fn whitespace_is_irrelevant() {
        assert_eq!(eval_str("3*t-1", 1.0), eval_str(" 3 * t - 1 ", 1.0));
    }

    #[test]
    fn derivative_of_power() {
        let d = parse_expression("t^2").unwrap().differentiate();
        assert_relative_eq!(d.eval(3.0).unwrap(), 6.0);
    }

    #[test]
    fn derivative_of_sin() {
        let d = parse_expression("sin(t)").unwrap().differentiate();
        assert_relative_eq!(d.eval(0.0).unwrap(), 1.0);
    }

    #[test]
    fn derivative_of_constant_is_zero_expression() {
        let d = parse_expression("5").unwrap().differentiate();
        assert!(d.is_zero());
        assert_eq!(d.eval(17.3).unwrap(), 0.0);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_expression("1 + * 2") {
            Err(ParseError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected syntax error, got {other:?}"),
        }
        match parse_expression("sin(t") {
            Err(ParseError::Syntax { .. }) => {}
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_identifier_is_reported() {
        match parse_expression("2 * x") {
            Err(ParseError::UnknownIdentifier { name, pos }) => {
                assert_eq!(name, "x");
                assert_eq!(pos, 4);
            }
            other => panic!("expected unknown identifier, got {other:?}"),
        }
    }

    #[test]
    fn domain_errors_surface() {
        assert!(matches!(
            parse_expression("sqrt(t - 2)").unwrap().eval(0.5),
            Err(EvalError::SqrtNegative { .. })
        ));
        assert!(matches!(
            parse_expression("log(-t)").unwrap().eval(1.0),
            Err(EvalError::LogNonPositive { .. })
        ));
        assert!(matches!(
            parse_expression("1 / t").unwrap().eval(0.0),
            Err(EvalError::DivisionByZero { .. })
        ));
    }

    #[test]
    fn constant_detection() {
        assert_eq!(parse_expression("3 - 1/4").unwrap().as_constant(), Some(2.75));
        assert_eq!(parse_expression("-1").unwrap().as_constant(), Some(-1.0));
        assert_eq!(parse_expression("t - t").unwrap().as_constant(), None);
    }

    /// Expressions exercised by the round-trip and finite-difference checks.
    pub(crate) fn gallery() -> Vec<&'static str> {
        vec![
            "t^2 + sin(t)",
            "exp(-t/2)",
            "3*t - 1",
            "-t",
            "sin(t) * cos(t)",
            "exp(t) * sin(2*t)",
            "sqrt(t + 1)",
            "log(t + 1)",
            "1 / (1 + t^2)",
            "t^3 - 2*t^2 + t - 7",
            "cos(t^2)",
            "(t + 1)^4 / (t + 2)",
            "-(t - 1) * (t + 1)",
            "2^3 + t",
            "exp(-t^2/2) * cos(3*t)",
        ]
    }

    #[test]
    fn round_trip_preserves_values() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut rand01 = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for text in gallery() {
            let original = parse_expression(text).unwrap();
            let printed = original.to_string();
            let reparsed = parse_expression(&printed)
                .unwrap_or_else(|e| panic!("`{printed}` failed to reparse: {e}"));
            for _ in 0..100 {
                let t = rand01();
                let a = original.eval(t).unwrap();
                let b = reparsed.eval(t).unwrap();
                assert_relative_eq!(a, b, epsilon = 1e-14, max_relative = 1e-14);
            }
        }
    }

    #[test]
    fn symbolic_derivative_matches_finite_differences() {
        let mut state = 0x853c49e6748fea9bu64;
        let mut rand01 = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let h = 1e-6;
        for text in gallery() {
            let e = parse_expression(text).unwrap();
            let d = e.differentiate();
            for _ in 0..100 {
                let t = 0.01 + 0.98 * rand01();
                let sym = d.eval(t).unwrap();
                let fd = (e.eval(t + h).unwrap() - e.eval(t - h).unwrap()) / (2.0 * h);
                let rel = (sym - fd).abs() / sym.abs().max(1.0);
                assert!(
                    rel <= 1e-6,
                    "derivative mismatch for `{text}` at t={t}: sym={sym} fd={fd}"
                );
            }
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_expr() -> impl Strategy<Value = Expr> {
            let leaf = prop_oneof![
                (-4.0..4.0f64).prop_map(Expr::Const),
                Just(Expr::Time),
            ];
            leaf.prop_recursive(4, 24, 3, |inner| {
                prop_oneof![
                    inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
                    inner.clone().prop_map(|e| Expr::Sin(Box::new(e))),
                    inner.clone().prop_map(|e| Expr::Cos(Box::new(e))),
                    (inner.clone(), inner.clone())
                        .prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
                    (inner.clone(), inner.clone())
                        .prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
                    (inner.clone(), inner.clone())
                        .prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
                    (inner.clone(), 1..4i32).prop_map(|(e, k)| Expr::Pow(Box::new(e), k)),
                ]
            })
        }

        proptest! {
            #[test]
            fn printed_form_reparses_to_equal_values(e in arb_expr(), t in 0.0..2.0f64) {
                let printed = e.to_string();
                let reparsed = parse_expression(&printed)
                    .unwrap_or_else(|err| panic!("`{printed}` failed to reparse: {err}"));
                let a = e.eval(t).unwrap();
                let b = reparsed.eval(t).unwrap();
                if a.is_finite() {
                    prop_assert!(
                        (a - b).abs() <= 1e-14 * a.abs().max(1.0),
                        "`{}` evaluated to {} vs {}", printed, a, b
                    );
                }
            }
        }
    }
}
