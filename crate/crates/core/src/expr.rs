//! Text grammar for polynomial differential forms.
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := unary (("*" | "^") unary)*
//! unary   := ("+" | "-") unary | power
//! power   := atom ("**" integer)?
//! atom    := integer ("/" integer)? | xK | zK | dxK | dzK | "(" expr ")"
//! ```
//!
//! `^` is the wedge product and `*` multiplies by a function, so at least one
//! side of `*` must be a 0-form. `**` raises a 0-form to a non-negative
//! integer power. `z` is an alias for `x`. A `#` starts a comment that runs to
//! the end of the line. Printing goes through the `Display` impls of
//! [`Poly`] and [`PForm`], whose output parses back to the same object.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::forms::{PForm, VField};
use crate::ratpoly::{Poly, Rational, MAX_VARS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("cannot add a {left}-form and a {right}-form at position {pos}")]
    DegreeMix {
        pos: usize,
        left: usize,
        right: usize,
    },
    #[error("variable index {index} at position {pos} is outside 1..={n}")]
    VariableOutOfRange { pos: usize, index: usize, n: usize },
    #[error("number of variables must be in 1..={MAX_VARS}, got {0}")]
    BadArity(usize),
    #[error("expected a {expected}-form, got a {got}-form")]
    WrongDegree { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Diff(usize),
    Plus,
    Minus,
    Star,
    Pow,
    Caret,
    Slash,
    LParen,
    RParen,
    Comma,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(v) => format!("number {v}"),
        Tok::Var(i) => format!("x{i}"),
        Tok::Diff(i) => format!("dx{i}"),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Pow => "'**'".into(),
        Tok::Caret => "'^'".into(),
        Tok::Slash => "'/'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::Comma => "','".into(),
        Tok::End => "end of input".into(),
    }
}

fn syntax(pos: usize, msg: impl Into<String>) -> ExprError {
    ExprError::Syntax {
        pos,
        msg: msg.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |i: &mut usize| {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        chars[start..*i].iter().collect::<String>()
    };
    while i < chars.len() {
        let c = chars[i];
        let pos = i;
        match c {
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            c if c.is_whitespace() => i += 1,
            '0'..='9' => {
                let s = digits(&mut i);
                out.push((Tok::Int(s.parse().expect("ascii digits")), pos));
            }
            'x' | 'z' | 'd' => {
                let diff = c == 'd';
                i += 1;
                if diff {
                    match chars.get(i) {
                        Some('x') | Some('z') => i += 1,
                        _ => return Err(syntax(pos, "expected 'dx' or 'dz' followed by an index")),
                    }
                }
                let s = digits(&mut i);
                if s.is_empty() {
                    return Err(syntax(i, "expected a variable index"));
                }
                let k: usize = s
                    .parse()
                    .map_err(|_| syntax(pos, "variable index too large"))?;
                out.push((if diff { Tok::Diff(k) } else { Tok::Var(k) }, pos));
            }
            '*' => {
                if chars.get(i + 1) == Some(&'*') {
                    out.push((Tok::Pow, pos));
                    i += 2;
                } else {
                    out.push((Tok::Star, pos));
                    i += 1;
                }
            }
            _ => {
                let t = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '^' => Tok::Caret,
                    '/' => Tok::Slash,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    _ => return Err(syntax(pos, format!("unexpected character '{c}'"))),
                };
                out.push((t, pos));
                i += 1;
            }
        }
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    n: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok) -> Result<(), ExprError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(syntax(
                self.pos(),
                format!("expected {}, found {}", describe(&t), describe(self.peek())),
            ))
        }
    }

    fn index(&self, k: usize, pos: usize) -> Result<usize, ExprError> {
        if (1..=self.n).contains(&k) {
            Ok(k - 1)
        } else {
            Err(ExprError::VariableOutOfRange {
                pos,
                index: k,
                n: self.n,
            })
        }
    }

    fn expr(&mut self) -> Result<PForm, ExprError> {
        let mut acc = self.term()?;
        loop {
            let neg = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Ok(acc),
            };
            let pos = self.pos();
            self.bump();
            let rhs = self.term()?;
            if rhs.degree() != acc.degree() {
                return Err(ExprError::DegreeMix {
                    pos,
                    left: acc.degree(),
                    right: rhs.degree(),
                });
            }
            acc = if neg { acc.sub(&rhs) } else { acc.add(&rhs) };
        }
    }

    fn term(&mut self) -> Result<PForm, ExprError> {
        let mut acc = self.unary()?;
        loop {
            let wedge = match self.peek() {
                Tok::Star => false,
                Tok::Caret => true,
                _ => return Ok(acc),
            };
            let pos = self.pos();
            self.bump();
            let rhs = self.unary()?;
            if !wedge && acc.degree() > 0 && rhs.degree() > 0 {
                return Err(syntax(
                    pos,
                    "'*' needs a 0-form on one side; use '^' to wedge forms",
                ));
            }
            if acc.degree() + rhs.degree() > self.n {
                return Err(syntax(pos, "wedge degree exceeds the number of variables"));
            }
            acc = acc.wedge(&rhs);
        }
    }

    fn unary(&mut self) -> Result<PForm, ExprError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<PForm, ExprError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Pow {
            return Ok(base);
        }
        let pos = self.pos();
        self.bump();
        let e = match self.bump() {
            (Tok::Int(v), _) => v,
            (t, p) => {
                return Err(syntax(
                    p,
                    format!("expected an exponent, found {}", describe(&t)),
                ))
            }
        };
        let f = base
            .as_function()
            .ok_or_else(|| syntax(pos, "'**' applies to 0-forms only; use '^' to wedge"))?;
        let e = e
            .to_u32()
            .filter(|&e| e <= 1000)
            .ok_or_else(|| syntax(pos, "exponent too large"))?;
        Ok(PForm::function(f.pow(e)))
    }

    fn atom(&mut self) -> Result<PForm, ExprError> {
        let (t, pos) = self.bump();
        match t {
            Tok::Int(num) => {
                let mut r = Rational::from_integer(num);
                if *self.peek() == Tok::Slash {
                    let spos = self.pos();
                    self.bump();
                    match self.bump() {
                        (Tok::Int(den), _) if !den.is_zero() => r /= Rational::from_integer(den),
                        (Tok::Int(_), p) => return Err(syntax(p, "division by zero")),
                        _ => return Err(syntax(spos, "'/' must join two integers")),
                    }
                }
                Ok(PForm::function(Poly::constant(self.n, r)))
            }
            Tok::Var(k) => Ok(PForm::function(Poly::var(self.n, self.index(k, pos)?))),
            Tok::Diff(k) => Ok(PForm::dx(self.n, self.index(k, pos)?)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            other => Err(syntax(pos, format!("unexpected {}", describe(&other)))),
        }
    }
}

fn parser(text: &str, n: usize) -> Result<Parser, ExprError> {
    if !(1..=MAX_VARS).contains(&n) {
        return Err(ExprError::BadArity(n));
    }
    Ok(Parser {
        toks: lex(text)?,
        at: 0,
        n,
    })
}

/// Parses a form on `n` variables.
pub fn parse_form(text: &str, n: usize) -> Result<PForm, ExprError> {
    let mut p = parser(text, n)?;
    let e = p.expr()?;
    p.expect(Tok::End)?;
    Ok(e)
}

/// Parses a form and checks its degree; a literal `0` is accepted as the
/// zero form of any degree.
pub fn parse_form_of_degree(text: &str, n: usize, degree: usize) -> Result<PForm, ExprError> {
    let f = parse_form(text, n)?;
    if f.degree() == degree {
        Ok(f)
    } else if f.degree() == 0 && f.is_zero() {
        Ok(PForm::zero(n, degree))
    } else {
        Err(ExprError::WrongDegree {
            expected: degree,
            got: f.degree(),
        })
    }
}

pub fn parse_poly(text: &str, n: usize) -> Result<Poly, ExprError> {
    let f = parse_form(text, n)?;
    f.as_function().ok_or(ExprError::WrongDegree {
        expected: 0,
        got: f.degree(),
    })
}

/// Parses a rational literal such as `-3/2`.
pub fn parse_rational(text: &str) -> Result<Rational, ExprError> {
    parse_poly(text, 1)?
        .constant_value()
        .ok_or_else(|| syntax(0, "expected a rational number"))
}

/// Parses `(f1, ..., fn)` as a vector field.
pub fn parse_field(text: &str, n: usize) -> Result<VField, ExprError> {
    let mut p = parser(text, n)?;
    p.expect(Tok::LParen)?;
    let mut comps = Vec::with_capacity(n);
    loop {
        let pos = p.pos();
        let c = p.expr()?;
        comps.push(
            c.as_function()
                .ok_or_else(|| syntax(pos, "vector field components must be 0-forms"))?,
        );
        if *p.peek() == Tok::Comma {
            p.bump();
        } else {
            break;
        }
    }
    p.expect(Tok::RParen)?;
    p.expect(Tok::End)?;
    if comps.len() != n {
        return Err(syntax(
            0,
            format!("expected {n} components, got {}", comps.len()),
        ));
    }
    Ok(VField::new(comps))
}

/// Prints a vector field as `(f1, ..., fn)`.
pub fn format_field(v: &VField) -> String {
    let parts: Vec<String> = v.components().iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::kn_theta;
    use crate::ratpoly::{rat, ratio};

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    #[test]
    fn parses_first_terms_of_theta() {
        let f = parse_form("x3**2*dx2^dx3 - x1**2*dx3^dx1", 4).unwrap();
        let want = PForm::dx(4, 1)
            .wedge(&PForm::dx(4, 2))
            .mul_poly(&x(4, 2).pow(2))
            .sub(
                &PForm::dx(4, 2)
                    .wedge(&PForm::dx(4, 0))
                    .mul_poly(&x(4, 0).pow(2)),
            );
        assert_eq!(f, want);
    }

    #[test]
    fn wedge_with_itself_vanishes() {
        let f = parse_form("dx1^dx1", 4).unwrap();
        assert!(f.is_zero());
        assert_eq!(f.degree(), 2);
    }

    #[test]
    fn degree_mixing_is_rejected() {
        assert_eq!(
            parse_form("dx1 + dx1^dx2", 4).unwrap_err(),
            ExprError::DegreeMix {
                pos: 4,
                left: 1,
                right: 2
            }
        );
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert!(matches!(
            parse_form("x1 + * x2", 4),
            Err(ExprError::Syntax { pos: 5, .. })
        ));
        assert!(matches!(
            parse_form("(x1 + x2", 4),
            Err(ExprError::Syntax { pos: 8, .. })
        ));
        assert!(matches!(
            parse_form("x1 $ x2", 4),
            Err(ExprError::Syntax { pos: 3, .. })
        ));
        assert!(matches!(
            parse_form("dx1*dx2", 4),
            Err(ExprError::Syntax { pos: 3, .. })
        ));
        assert!(matches!(
            parse_form("dx1**2", 4),
            Err(ExprError::Syntax { .. })
        ));
        assert_eq!(
            parse_form("x5", 4).unwrap_err(),
            ExprError::VariableOutOfRange {
                pos: 0,
                index: 5,
                n: 4
            }
        );
        assert!(matches!(
            parse_form("1/0", 4),
            Err(ExprError::Syntax { .. })
        ));
    }

    #[test]
    fn aliases_comments_and_rationals() {
        let a = parse_form("# a comment\nz1 * dz2 # trailing\n", 3).unwrap();
        assert_eq!(a, PForm::dx(3, 1).mul_poly(&x(3, 0)));
        assert_eq!(parse_rational("-3/2").unwrap(), ratio(-3, 2));
        assert_eq!(
            parse_poly("(x1 + 1)**2", 2).unwrap(),
            &(&x(2, 0) * &x(2, 0)) + &(&x(2, 0).scale(&rat(2)) + &Poly::one(2))
        );
        assert_eq!(parse_form_of_degree("0", 4, 2).unwrap(), PForm::zero(4, 2));
        assert!(parse_form_of_degree("dx1", 4, 2).is_err());
    }

    #[test]
    fn theta_round_trips() {
        let t = kn_theta();
        assert_eq!(parse_form(&t.to_string(), 4).unwrap(), t);
    }

    #[test]
    fn fields_round_trip() {
        let v = VField::new(vec![
            x(3, 0).pow(2),
            Poly::zero(3),
            x(3, 1).scale(&ratio(-1, 3)),
        ]);
        let s = format_field(&v);
        assert_eq!(parse_field(&s, 3).unwrap(), v);
    }
}
