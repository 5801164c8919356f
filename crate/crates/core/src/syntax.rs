//! Concrete syntax for objects and arrow terms.
//!
//! Objects: `I`, letters `[a-z][a-zA-Z0-9]*`, `A * B` (left-associative),
//! `T(A)`, `L(A)`, `E1(A)`. Arrows: constants such as `psiL{A,B}` or
//! `psi0`, optionally annotated with a functor (`mu<E2>{p}`), composition
//! `g . f` (first `f`), tensor `f * g` and functor application `T[f]`.
//! Application binds tighter than tensor, which binds tighter than
//! composition; both binary operators associate to the left.
//!
//! The same parser reads equation schemas when metavariables are enabled:
//! `A`..`D` (optionally indexed, as in `A1`) range over objects, `F` is the functor variable and bare
//! lowercase names (other than constants) are arrow variables.

use crate::error::{Error, Result};
use crate::terms::{Arrow, ConstKind, Constant, Functor, Object, Theory};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawFunctor {
    Named(Functor),
    Var,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawObject {
    Unit,
    Letter(String),
    Var(String),
    Tensor(Box<RawObject>, Box<RawObject>),
    App(RawFunctor, Box<RawObject>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawArrow {
    Const {
        kind: ConstKind,
        functor: Option<RawFunctor>,
        args: Vec<RawObject>,
    },
    Var(String),
    Comp(Box<RawArrow>, Box<RawArrow>),
    Tensor(Box<RawArrow>, Box<RawArrow>),
    Apply(RawFunctor, Box<RawArrow>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, column);
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
        } else if c.is_whitespace() {
            chars.next();
            column += 1;
        } else if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_alphanumeric() {
                    s.push(d);
                    chars.next();
                    column += 1;
                } else {
                    break;
                }
            }
            if chars.peek() == Some(&'\'') {
                s.push('\'');
                chars.next();
                column += 1;
            }
            out.push(Token {
                tok: Tok::Ident(s),
                line: l0,
                column: c0,
            });
        } else if "(){}[]<>,.*".contains(c) {
            chars.next();
            column += 1;
            out.push(Token {
                tok: Tok::Sym(c),
                line: l0,
                column: c0,
            });
        } else {
            return Err(Error::Syntax {
                line,
                column,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    metavars: bool,
}

fn functor_name(s: &str) -> Option<Functor> {
    match s {
        "T" => Some(Functor::T),
        "L" => Some(Functor::L),
        _ => {
            let digits = s.strip_prefix('E')?;
            if digits.is_empty()
                || !digits.bytes().all(|b| b.is_ascii_digit())
                || digits.starts_with('0')
            {
                return None;
            }
            digits.parse().ok().map(Functor::E)
        }
    }
}

/// Object metavariables of schemas: `A`..`D`, optionally followed by digits.
fn is_object_var(s: &str) -> bool {
    let mut it = s.chars();
    it.next().is_some_and(|c| matches!(c, 'A'..='D')) && it.all(|c| c.is_ascii_digit())
}

fn is_letter_name(s: &str) -> bool {
    let mut it = s.chars();
    it.next().is_some_and(|c| c.is_ascii_lowercase()) && it.all(|c| c.is_ascii_alphanumeric())
}

impl Parser {
    fn new(text: &str, metavars: bool) -> Result<Parser> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            metavars,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, t: &Token, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        self.error_at(&self.toks[self.pos], message)
    }

    fn describe(t: &Tok) -> String {
        match t {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::End => "end of input".into(),
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!(
                "expected `{c}`, found {}",
                Self::describe(self.peek())
            )))
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            Tok::End => Ok(()),
            t => Err(self.error(format!("unexpected {}", Self::describe(t)))),
        }
    }

    fn functor(&self, s: &str) -> Option<RawFunctor> {
        if self.metavars && s == "F" {
            return Some(RawFunctor::Var);
        }
        functor_name(s).map(RawFunctor::Named)
    }

    fn object(&mut self) -> Result<RawObject> {
        let mut left = self.object_atom()?;
        while *self.peek() == Tok::Sym('*') {
            self.bump();
            let right = self.object_atom()?;
            left = RawObject::Tensor(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn object_atom(&mut self) -> Result<RawObject> {
        let t = self.bump();
        match &t.tok {
            Tok::Sym('(') => {
                let o = self.object()?;
                self.expect(')')?;
                Ok(o)
            }
            Tok::Ident(s) if s == "I" => Ok(RawObject::Unit),
            Tok::Ident(s) if self.metavars && is_object_var(s) => Ok(RawObject::Var(s.clone())),
            Tok::Ident(s) if is_letter_name(s) => Ok(RawObject::Letter(s.clone())),
            Tok::Ident(s) => match self.functor(s) {
                Some(f) => {
                    self.expect('(')?;
                    let o = self.object()?;
                    self.expect(')')?;
                    Ok(RawObject::App(f, Box::new(o)))
                }
                None => Err(self.error_at(&t, format!("`{s}` is not an object"))),
            },
            other => Err(self.error_at(
                &t,
                format!("expected an object, found {}", Self::describe(other)),
            )),
        }
    }

    fn arrow(&mut self) -> Result<RawArrow> {
        let mut left = self.arrow_tensor()?;
        while *self.peek() == Tok::Sym('.') {
            self.bump();
            let right = self.arrow_tensor()?;
            left = RawArrow::Comp(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn arrow_tensor(&mut self) -> Result<RawArrow> {
        let mut left = self.arrow_atom()?;
        while *self.peek() == Tok::Sym('*') {
            self.bump();
            let right = self.arrow_atom()?;
            left = RawArrow::Tensor(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn arrow_atom(&mut self) -> Result<RawArrow> {
        let t = self.bump();
        let s = match &t.tok {
            Tok::Sym('(') => {
                let a = self.arrow()?;
                self.expect(')')?;
                return Ok(a);
            }
            Tok::Ident(s) => s.clone(),
            other => {
                return Err(self.error_at(
                    &t,
                    format!("expected an arrow, found {}", Self::describe(other)),
                ))
            }
        };
        if let Some(f) = self.functor(&s) {
            self.expect('[')?;
            let a = self.arrow()?;
            self.expect(']')?;
            return Ok(RawArrow::Apply(f, Box::new(a)));
        }
        let braced = matches!(self.peek(), Tok::Sym('{') | Tok::Sym('<'));
        let Some(kind) = ConstKind::from_name(&s) else {
            if !braced && self.metavars && is_letter_name(&s) {
                return Ok(RawArrow::Var(s));
            }
            return Err(Error::UnknownConstant(s));
        };
        let functor = if *self.peek() == Tok::Sym('<') {
            self.bump();
            let ft = self.bump();
            let f = match &ft.tok {
                Tok::Ident(name) => self.functor(name),
                _ => None,
            }
            .ok_or_else(|| self.error_at(&ft, "expected a functor name"))?;
            self.expect('>')?;
            if !kind.has_functor() {
                return Err(self.error_at(&ft, format!("constant `{kind}` takes no functor")));
            }
            Some(f)
        } else {
            None
        };
        let mut args = Vec::new();
        if *self.peek() == Tok::Sym('{') {
            self.bump();
            if *self.peek() != Tok::Sym('}') {
                args.push(self.object()?);
                while *self.peek() == Tok::Sym(',') {
                    self.bump();
                    args.push(self.object()?);
                }
            }
            self.expect('}')?;
        }
        if args.len() != kind.arity() {
            return Err(self.error_at(
                &t,
                format!(
                    "constant `{kind}` takes {} argument(s), got {}",
                    kind.arity(),
                    args.len()
                ),
            ));
        }
        Ok(RawArrow::Const {
            kind,
            functor,
            args,
        })
    }
}

pub fn parse_raw_object(text: &str, metavars: bool) -> Result<RawObject> {
    let mut p = Parser::new(text, metavars)?;
    let o = p.object()?;
    p.finish()?;
    Ok(o)
}

pub fn parse_raw_arrow(text: &str, metavars: bool) -> Result<RawArrow> {
    let mut p = Parser::new(text, metavars)?;
    let a = p.arrow()?;
    p.finish()?;
    Ok(a)
}

fn concrete_object(raw: &RawObject) -> Object {
    match raw {
        RawObject::Unit => Object::Unit,
        RawObject::Letter(x) => Object::letter(x),
        RawObject::Tensor(a, b) => Object::tensor(concrete_object(a), concrete_object(b)),
        RawObject::App(RawFunctor::Named(f), a) => Object::app(*f, concrete_object(a)),
        RawObject::Var(_) | RawObject::App(RawFunctor::Var, _) => {
            unreachable!("metavariables are disabled")
        }
    }
}

fn concrete_arrow(raw: &RawArrow, th: Theory) -> Arrow {
    match raw {
        RawArrow::Const {
            kind,
            functor,
            args,
        } => {
            let f = kind.has_functor().then(|| match functor {
                Some(RawFunctor::Named(f)) => *f,
                _ => th.default_functor(),
            });
            Arrow::Const(Constant::new(
                *kind,
                f,
                args.iter().map(concrete_object).collect(),
            ))
        }
        RawArrow::Comp(g, f) => Arrow::comp(concrete_arrow(g, th), concrete_arrow(f, th)),
        RawArrow::Tensor(a, b) => Arrow::tensor(concrete_arrow(a, th), concrete_arrow(b, th)),
        RawArrow::Apply(RawFunctor::Named(f), a) => Arrow::apply(*f, concrete_arrow(a, th)),
        RawArrow::Var(_) | RawArrow::Apply(RawFunctor::Var, _) => {
            unreachable!("metavariables are disabled")
        }
    }
}

pub fn parse_object(text: &str) -> Result<Object> {
    Ok(concrete_object(&parse_raw_object(text, false)?))
}

/// Parses an arrow term; constants without a functor annotation receive
/// the default functor of `th`.
pub fn parse_arrow(text: &str, th: Theory) -> Result<Arrow> {
    Ok(concrete_arrow(&parse_raw_arrow(text, false)?, th))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Object {
        Object::letter("p")
    }
    fn q() -> Object {
        Object::letter("q")
    }

    #[test]
    fn object_examples() {
        let t = Functor::T;
        assert_eq!(
            parse_object("T(p) * T(q)").unwrap(),
            Object::tensor(Object::app(t, p()), Object::app(t, q()))
        );
        assert_eq!(
            parse_object("p * q * I").unwrap(),
            Object::tensor(Object::tensor(p(), q()), Object::Unit)
        );
        assert_eq!(
            parse_object("p * (q * I)").unwrap(),
            Object::tensor(p(), Object::tensor(q(), Object::Unit))
        );
        assert_eq!(
            parse_object("E12(x1)").unwrap(),
            Object::app(Functor::E(12), Object::letter("x1"))
        );
        assert!(parse_object("E0(p)").is_err());
        assert!(parse_object("Q(p)").is_err());
    }

    #[test]
    fn arrow_examples() {
        let t = Functor::T;
        let got = parse_arrow("mu{p*q} . T[psiL{p,q}] . psiR{T(p),q}", Theory::LS).unwrap();
        let want = Arrow::comp(
            Arrow::comp(
                Arrow::mu(t, Object::tensor(p(), q())),
                Arrow::apply(t, Arrow::psi_l(t, p(), q())),
            ),
            Arrow::psi_r(t, Object::app(t, p()), q()),
        );
        assert_eq!(got, want);
        assert!(matches!(
            parse_arrow("psi{p,}", Theory::LS),
            Err(Error::Syntax { .. })
        ));
        assert_eq!(
            parse_arrow("foo{p}", Theory::LS),
            Err(Error::UnknownConstant("foo".into()))
        );
        assert_eq!(
            parse_arrow("psi0", Theory::MSco).unwrap(),
            Arrow::psi0(Functor::L)
        );
        assert_eq!(
            parse_arrow("mu<E2>{p}", Theory::Lcmu).unwrap(),
            Arrow::mu(Functor::E(2), p())
        );
        assert!(parse_arrow("c<E1>{p,q}", Theory::Lc).is_err());
    }

    #[test]
    fn precedence() {
        let a = parse_arrow("id{p} * id{q} . c{q,p}", Theory::LcS).unwrap();
        assert!(matches!(a, Arrow::Comp(ref g, _) if matches!(**g, Arrow::Tensor(..))));
        let a = parse_arrow("T[id{p}] * id{q}", Theory::LS).unwrap();
        assert!(matches!(a, Arrow::Tensor(..)));
    }

    #[test]
    fn error_positions() {
        match parse_arrow("id{p} .\n  psi{p,}", Theory::LS) {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 9)),
            other => panic!("{other:?}"),
        }
        match parse_object("p $ q") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (1, 3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn metavariables() {
        let raw = parse_raw_arrow("F[f] . eta{A}", true).unwrap();
        assert_eq!(
            raw,
            RawArrow::Comp(
                Box::new(RawArrow::Apply(
                    RawFunctor::Var,
                    Box::new(RawArrow::Var("f".into()))
                )),
                Box::new(RawArrow::Const {
                    kind: ConstKind::Eta,
                    functor: None,
                    args: vec![RawObject::Var("A".into())]
                }),
            )
        );
        assert!(parse_raw_arrow("F[f]", false).is_err());
    }
}
