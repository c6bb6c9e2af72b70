//! Scalar arithmetic expressions in one variable `x`.
//!
//! Used for the potential on each subinterval and for expansion inputs.
//! The grammar is deliberately small:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' unary)?
//! primary := number | 'x' | 'pi' | func '(' expr ')' | '(' expr ')'
//! func    := sin | cos | exp | sqrt | abs
//! ```
//!
//! `^` binds tighter than unary minus (`-x^2 == -(x^2)`) and is
//! right-associative (`2^3^2 == 2^9`).

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("empty expression")]
    Empty,
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { offset: usize, name: String },
}

impl ParseError {
    /// Byte offset into the source text, when the error has one.
    pub fn offset(&self) -> Option<usize> {
        match self {
            ParseError::Empty => None,
            ParseError::Syntax { offset, .. } | ParseError::UnknownIdentifier { offset, .. } => {
                Some(*offset)
            }
        }
    }
}

/// Raised when evaluation produces a non-finite value.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("`{subexpression}` is not finite at x = {x}")]
pub struct EvalError {
    pub subexpression: String,
    pub x: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Sqrt,
    Abs,
}

impl Func {
    fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "exp" => Func::Exp,
            "sqrt" => Func::Sqrt,
            "abs" => Func::Abs,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
        }
    }

    fn apply(self, v: f64) -> f64 {
        match self {
            Func::Sin => v.sin(),
            Func::Cos => v.cos(),
            Func::Exp => v.exp(),
            Func::Sqrt => v.sqrt(),
            Func::Abs => v.abs(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
            BinOp::Pow => '^',
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
            BinOp::Pow => 4,
        }
    }
}

/// Syntax tree node.
#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Num(f64),
    Var,
    Pi,
    Neg(Box<Node>),
    Binary(BinOp, Box<Node>, Box<Node>),
    Call(Func, Box<Node>),
}

const PREC_UNARY: u8 = 3;
const PREC_ATOM: u8 = 5;

impl Node {
    fn precedence(&self) -> u8 {
        match self {
            Node::Num(v) if *v < 0.0 || v.is_sign_negative() => PREC_UNARY,
            Node::Num(_) | Node::Var | Node::Pi | Node::Call(..) => PREC_ATOM,
            Node::Neg(_) => PREC_UNARY,
            Node::Binary(op, ..) => op.precedence(),
        }
    }

    /// Evaluates the tree, reporting the innermost non-finite subexpression.
    pub fn eval(&self, x: f64) -> Result<f64, EvalError> {
        let value = match self {
            Node::Num(v) => *v,
            Node::Var => x,
            Node::Pi => std::f64::consts::PI,
            Node::Neg(inner) => -inner.eval(x)?,
            Node::Call(func, arg) => func.apply(arg.eval(x)?),
            Node::Binary(op, lhs, rhs) => {
                let a = lhs.eval(x)?;
                let b = rhs.eval(x)?;
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => a / b,
                    BinOp::Pow => a.powf(b),
                }
            }
        };
        if value.is_finite() {
            Ok(value)
        } else {
            Err(EvalError {
                subexpression: self.to_string(),
                x,
            })
        }
    }

    fn write_child(&self, f: &mut fmt::Formatter<'_>, parens: bool) -> fmt::Result {
        if parens {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Num(v) => {
                if v.is_sign_negative() {
                    write!(f, "-{}", -v)
                } else {
                    write!(f, "{v}")
                }
            }
            Node::Var => f.write_str("x"),
            Node::Pi => f.write_str("pi"),
            Node::Neg(inner) => {
                f.write_str("-")?;
                inner.write_child(f, inner.precedence() < PREC_UNARY)
            }
            Node::Call(func, arg) => write!(f, "{}({arg})", func.name()),
            Node::Binary(op, lhs, rhs) => {
                let prec = op.precedence();
                let (left_parens, right_parens) = match op {
                    // right-associative; the exponent is parsed as a unary
                    BinOp::Pow => (lhs.precedence() <= prec, rhs.precedence() < PREC_UNARY),
                    BinOp::Add | BinOp::Mul => {
                        (lhs.precedence() < prec, rhs.precedence() <= prec)
                    }
                    BinOp::Sub | BinOp::Div => {
                        (lhs.precedence() < prec, rhs.precedence() <= prec)
                    }
                };
                lhs.write_child(f, left_parens)?;
                write!(f, "{}", op.symbol())?;
                rhs.write_child(f, right_parens)
            }
        }
    }
}

/// A parsed expression together with the text it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct Expression {
    source: String,
    root: Node,
}

impl Expression {
    pub fn parse(text: &str) -> Result<Expression, ParseError> {
        parse_expression(text)
    }

    /// Wraps an already-built tree; the source text is its canonical print.
    pub fn from_node(root: Node) -> Expression {
        Expression {
            source: root.to_string(),
            root,
        }
    }

    pub fn constant(value: f64) -> Expression {
        Expression::from_node(Node::Num(value))
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn eval(&self, x: f64) -> Result<f64, EvalError> {
        self.root.eval(x)
    }

    /// True when the tree does not reference `x`.
    pub fn is_constant(&self) -> bool {
        fn walk(node: &Node) -> bool {
            match node {
                Node::Var => false,
                Node::Num(_) | Node::Pi => true,
                Node::Neg(a) | Node::Call(_, a) => walk(a),
                Node::Binary(_, a, b) => walk(a) && walk(b),
            }
        }
        walk(&self.root)
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.root)
    }
}

impl FromStr for Expression {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_expression(s)
    }
}

pub fn parse_expression(text: &str) -> Result<Expression, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError::Empty);
    }
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
    };
    let root = parser.expr()?;
    if let Some(tok) = parser.peek() {
        return Err(ParseError::Syntax {
            offset: tok.offset,
            message: format!("unexpected {}", tok.kind.describe()),
        });
    }
    Ok(Expression {
        source: text.to_string(),
        root,
    })
}

#[derive(Debug, Clone, PartialEq)]
enum TokenKind {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
}

impl TokenKind {
    fn describe(&self) -> String {
        match self {
            TokenKind::Num(v) => format!("number {v}"),
            TokenKind::Ident(name) => format!("identifier `{name}`"),
            TokenKind::Op(c) => format!("operator `{c}`"),
            TokenKind::LParen => "`(`".into(),
            TokenKind::RParen => "`)`".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    offset: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let kind = match c {
            b'0'..=b'9' | b'.' => {
                i = scan_number(bytes, i);
                let literal = &text[start..i];
                let value = literal.parse::<f64>().map_err(|_| ParseError::Syntax {
                    offset: start,
                    message: format!("malformed number `{literal}`"),
                })?;
                tokens.push(Token {
                    kind: TokenKind::Num(value),
                    offset: start,
                });
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                tokens.push(Token {
                    kind: TokenKind::Ident(text[start..i].to_string()),
                    offset: start,
                });
                continue;
            }
            b'+' | b'-' | b'*' | b'/' | b'^' => TokenKind::Op(c as char),
            b'(' => TokenKind::LParen,
            b')' => TokenKind::RParen,
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    offset: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        tokens.push(Token {
            kind,
            offset: start,
        });
        i += 1;
    }
    Ok(tokens)
}

fn scan_number(bytes: &[u8], mut i: usize) -> usize {
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    if i < bytes.len() && bytes[i] == b'.' {
        i += 1;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
    }
    if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
        let mut j = i + 1;
        if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
            j += 1;
        }
        if j < bytes.len() && bytes[j].is_ascii_digit() {
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            i = j;
        }
    }
    i
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn peek_op(&self) -> Option<char> {
        match self.peek() {
            Some(Token {
                kind: TokenKind::Op(c),
                ..
            }) => Some(*c),
            _ => None,
        }
    }

    fn next(&mut self) -> Option<Token> {
        let tok = self.tokens.get(self.pos).cloned();
        if tok.is_some() {
            self.pos += 1;
        }
        tok
    }

    fn offset_here(&self) -> usize {
        self.peek().map_or(self.end, |t| t.offset)
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            let op = if c == '+' { BinOp::Add } else { BinOp::Sub };
            lhs = Node::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            let op = if c == '*' { BinOp::Mul } else { BinOp::Div };
            lhs = Node::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        if self.peek_op() == Some('-') {
            self.pos += 1;
            let inner = self.unary()?;
            return Ok(Node::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node, ParseError> {
        let base = self.primary()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            let exponent = self.unary()?;
            return Ok(Node::Binary(BinOp::Pow, Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Node, ParseError> {
        let offset = self.offset_here();
        let Some(tok) = self.next() else {
            return Err(ParseError::Syntax {
                offset,
                message: "unexpected end of input".into(),
            });
        };
        match tok.kind {
            TokenKind::Num(v) => Ok(Node::Num(v)),
            TokenKind::LParen => {
                let inner = self.expr()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            TokenKind::Ident(name) => match name.as_str() {
                "x" => Ok(Node::Var),
                "pi" => Ok(Node::Pi),
                _ => {
                    let Some(func) = Func::from_name(&name) else {
                        return Err(ParseError::UnknownIdentifier {
                            offset: tok.offset,
                            name,
                        });
                    };
                    match self.next() {
                        Some(Token {
                            kind: TokenKind::LParen,
                            ..
                        }) => {}
                        other => {
                            return Err(ParseError::Syntax {
                                offset: other.map_or(self.end, |t| t.offset),
                                message: format!("expected `(` after `{name}`"),
                            })
                        }
                    }
                    let arg = self.expr()?;
                    self.expect_rparen()?;
                    Ok(Node::Call(func, Box::new(arg)))
                }
            },
            other => Err(ParseError::Syntax {
                offset: tok.offset,
                message: format!("unexpected {}", other.describe()),
            }),
        }
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        let offset = self.offset_here();
        match self.next() {
            Some(Token {
                kind: TokenKind::RParen,
                ..
            }) => Ok(()),
            _ => Err(ParseError::Syntax {
                offset,
                message: "expected `)`".into(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn eval(text: &str, x: f64) -> f64 {
        parse_expression(text).unwrap().eval(x).unwrap()
    }

    #[test]
    fn zero_is_constant() {
        let e = parse_expression("0").unwrap();
        assert_eq!(e.root(), &Node::Num(0.0));
        assert!(e.is_constant());
        assert_eq!(e.eval(123.0).unwrap(), 0.0);
    }

    #[test]
    fn basic_values() {
        assert_eq!(eval("sin(x)+1", 0.0), 1.0);
        assert_eq!(eval("x^2", 2.0), 4.0);
        assert!((eval("1+x*x", -PI) - (1.0 + PI * PI)).abs() < 1e-12);
        assert!((eval("1+x*x", -PI) - 10.8696).abs() < 1e-4);
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(eval("-x^2", 3.0), -9.0);
        assert_eq!(eval("2^3^2", 0.0), 512.0);
        assert_eq!(eval("1-2-3", 0.0), -4.0);
        assert_eq!(eval("8/4/2", 0.0), 1.0);
        assert_eq!(eval("2*3+4*5", 0.0), 26.0);
        assert_eq!(eval("2^-1", 0.0), 0.5);
        assert_eq!(eval("(1+2)*3", 0.0), 9.0);
        assert_eq!(eval("--x", 2.0), 2.0);
        assert_eq!(eval("1.5e2 + .5 + 2E-1", 0.0), 150.7);
        assert!((eval("pi^2 - x^2", 0.0) - PI * PI).abs() < 1e-15);
        assert_eq!(eval("abs(x)/x", -3.0), -1.0);
        assert_eq!(eval("sqrt(exp(0)*4)+cos(0)", 0.0), 3.0);
    }

    #[test]
    fn trailing_operator_reports_offset() {
        let err = parse_expression("2+").unwrap_err();
        assert_eq!(err.offset(), Some(2));
        assert!(matches!(err, ParseError::Syntax { .. }));
    }

    #[test]
    fn syntax_errors() {
        assert_eq!(parse_expression("").unwrap_err(), ParseError::Empty);
        assert_eq!(parse_expression("(1+x").unwrap_err().offset(), Some(4));
        assert_eq!(parse_expression("1 $ 2").unwrap_err().offset(), Some(2));
        assert_eq!(parse_expression("1 2").unwrap_err().offset(), Some(2));
        assert_eq!(parse_expression("sin x").unwrap_err().offset(), Some(4));
        assert_eq!(parse_expression(")").unwrap_err().offset(), Some(0));
    }

    #[test]
    fn unknown_identifier() {
        let err = parse_expression("1 + log(x)").unwrap_err();
        assert_eq!(
            err,
            ParseError::UnknownIdentifier {
                offset: 4,
                name: "log".into()
            }
        );
        assert!(matches!(
            parse_expression("y").unwrap_err(),
            ParseError::UnknownIdentifier { offset: 0, .. }
        ));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let e = parse_expression("1/x").unwrap();
        let err = e.eval(0.0).unwrap_err();
        assert_eq!(err.subexpression, "1/x");
        assert_eq!(err.x, 0.0);
    }

    #[test]
    fn domain_error_names_innermost_subexpression() {
        let e = parse_expression("1 + sqrt(x)").unwrap();
        let err = e.eval(-1.0).unwrap_err();
        assert_eq!(err.subexpression, "sqrt(x)");
    }

    #[test]
    fn printing_minimal_parentheses() {
        let cases = [
            ("1-(2-3)", "1-(2-3)"),
            ("(1-2)-3", "1-2-3"),
            ("(2^3)^2", "(2^3)^2"),
            ("2^(3^2)", "2^3^2"),
            ("(-x)^2", "(-x)^2"),
            ("-(x^2)", "-x^2"),
            ("-(x+1)", "-(x+1)"),
            ("x/(2*x)", "x/(2*x)"),
            ("sin(x+1)*2", "sin(x+1)*2"),
        ];
        for (input, printed) in cases {
            assert_eq!(parse_expression(input).unwrap().to_string(), printed, "{input}");
        }
    }

    fn arb_node() -> impl Strategy<Value = Node> {
        let leaf = prop_oneof![
            (0.0f64..100.0).prop_map(Node::Num),
            (-5.0f64..-0.001).prop_map(Node::Num),
            Just(Node::Var),
            Just(Node::Pi),
        ];
        leaf.prop_recursive(5, 40, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|n| Node::Neg(Box::new(n))),
                (
                    prop_oneof![
                        Just(BinOp::Add),
                        Just(BinOp::Sub),
                        Just(BinOp::Mul),
                        Just(BinOp::Div),
                        Just(BinOp::Pow)
                    ],
                    inner.clone(),
                    inner.clone()
                )
                    .prop_map(|(op, a, b)| Node::Binary(op, Box::new(a), Box::new(b))),
                (
                    prop_oneof![
                        Just(Func::Sin),
                        Just(Func::Cos),
                        Just(Func::Exp),
                        Just(Func::Sqrt),
                        Just(Func::Abs)
                    ],
                    inner
                )
                    .prop_map(|(f, a)| Node::Call(f, Box::new(a))),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(node in arb_node(), x in -4.0f64..4.0) {
            let printed = node.to_string();
            let reparsed = parse_expression(&printed).unwrap();
            let direct = node.eval(x);
            let again = reparsed.eval(x);
            match (direct, again) {
                (Ok(a), Ok(b)) => prop_assert_eq!(a.to_bits(), b.to_bits(), "{}", printed),
                (Err(_), Err(_)) => {}
                (a, b) => prop_assert!(false, "{printed}: {a:?} vs {b:?}"),
            }
        }

        #[test]
        fn evaluation_is_pure(node in arb_node(), x in -4.0f64..4.0) {
            let e = Expression::from_node(node);
            let first = e.eval(x).map(f64::to_bits).ok();
            let second = e.eval(x).map(f64::to_bits).ok();
            prop_assert_eq!(first, second);
        }
    }
}
