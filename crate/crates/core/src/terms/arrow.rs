use std::fmt;
use std::sync::OnceLock;

use super::object::{Functor, Object};
use super::pattern::{instantiate_object, Bindings, ObjPat};

/// Every arrow constant of the thirteen theories.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstKind {
    Id,
    Assoc,
    AssocInv,
    LeftUnit,
    LeftUnitInv,
    RightUnit,
    RightUnitInv,
    Sym,
    PsiL,
    PsiR,
    Psi,
    Psi0,
    Eta,
    Mu,
    Eps,
    Delta,
    /// `A -> A*A`
    Diag,
    /// `A -> I`
    Bang,
    /// `A*A -> A`
    Codiag,
    /// `I -> A`
    Cobang,
}

/// Source and target of a constant as patterns over its object arguments.
#[derive(Debug)]
pub struct Signature {
    pub arity: usize,
    pub src: ObjPat,
    pub tgt: ObjPat,
}

impl ConstKind {
    pub const ALL: [ConstKind; 20] = [
        ConstKind::Id,
        ConstKind::Assoc,
        ConstKind::AssocInv,
        ConstKind::LeftUnit,
        ConstKind::LeftUnitInv,
        ConstKind::RightUnit,
        ConstKind::RightUnitInv,
        ConstKind::Sym,
        ConstKind::PsiL,
        ConstKind::PsiR,
        ConstKind::Psi,
        ConstKind::Psi0,
        ConstKind::Eta,
        ConstKind::Mu,
        ConstKind::Eps,
        ConstKind::Delta,
        ConstKind::Diag,
        ConstKind::Bang,
        ConstKind::Codiag,
        ConstKind::Cobang,
    ];

    /// Concrete-syntax name.
    pub fn name(&self) -> &'static str {
        match self {
            ConstKind::Id => "id",
            ConstKind::Assoc => "a",
            ConstKind::AssocInv => "a'",
            ConstKind::LeftUnit => "l",
            ConstKind::LeftUnitInv => "l'",
            ConstKind::RightUnit => "r",
            ConstKind::RightUnitInv => "r'",
            ConstKind::Sym => "c",
            ConstKind::PsiL => "psiL",
            ConstKind::PsiR => "psiR",
            ConstKind::Psi => "psi",
            ConstKind::Psi0 => "psi0",
            ConstKind::Eta => "eta",
            ConstKind::Mu => "mu",
            ConstKind::Eps => "eps",
            ConstKind::Delta => "delta",
            ConstKind::Diag => "diag",
            ConstKind::Bang => "bang",
            ConstKind::Codiag => "codiag",
            ConstKind::Cobang => "cobang",
        }
    }

    pub fn from_name(s: &str) -> Option<ConstKind> {
        ConstKind::ALL.iter().copied().find(|k| k.name() == s)
    }

    /// Whether the constant is indexed by an endofunctor.
    pub fn has_functor(&self) -> bool {
        matches!(
            self,
            ConstKind::PsiL
                | ConstKind::PsiR
                | ConstKind::Psi
                | ConstKind::Psi0
                | ConstKind::Eta
                | ConstKind::Mu
                | ConstKind::Eps
                | ConstKind::Delta
        )
    }

    pub fn signature(&self) -> &'static Signature {
        static TABLE: OnceLock<Vec<Signature>> = OnceLock::new();
        let table = TABLE.get_or_init(|| ConstKind::ALL.iter().map(build_signature).collect());
        &table[*self as usize]
    }

    pub fn arity(&self) -> usize {
        self.signature().arity
    }
}

fn build_signature(k: &ConstKind) -> Signature {
    use ObjPat as P;
    let (a, b, c) = (P::Var(0), P::Var(1), P::Var(2));
    let t = P::tensor;
    let f = P::app;
    let (arity, src, tgt) = match k {
        ConstKind::Id => (1, a.clone(), a),
        ConstKind::Assoc => (3, t(t(a.clone(), b.clone()), c.clone()), t(a, t(b, c))),
        ConstKind::AssocInv => (3, t(a.clone(), t(b.clone(), c.clone())), t(t(a, b), c)),
        ConstKind::LeftUnit => (1, t(P::Unit, a.clone()), a),
        ConstKind::LeftUnitInv => (1, a.clone(), t(P::Unit, a)),
        ConstKind::RightUnit => (1, t(a.clone(), P::Unit), a),
        ConstKind::RightUnitInv => (1, a.clone(), t(a, P::Unit)),
        ConstKind::Sym => (2, t(a.clone(), b.clone()), t(b, a)),
        ConstKind::PsiL => (2, t(f(a.clone()), b.clone()), f(t(a, b))),
        ConstKind::PsiR => (2, t(a.clone(), f(b.clone())), f(t(a, b))),
        ConstKind::Psi => (2, t(f(a.clone()), f(b.clone())), f(t(a, b))),
        ConstKind::Psi0 => (0, P::Unit, f(P::Unit)),
        ConstKind::Eta => (1, a.clone(), f(a)),
        ConstKind::Mu => (1, f(f(a.clone())), f(a)),
        ConstKind::Eps => (1, f(a.clone()), a),
        ConstKind::Delta => (1, f(a.clone()), f(f(a))),
        ConstKind::Diag => (1, a.clone(), t(a.clone(), a)),
        ConstKind::Bang => (1, a, P::Unit),
        ConstKind::Codiag => (1, t(a.clone(), a.clone()), a),
        ConstKind::Cobang => (1, P::Unit, a),
    };
    Signature { arity, src, tgt }
}

impl fmt::Display for ConstKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A constant together with its functor index and object arguments.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Constant {
    pub kind: ConstKind,
    pub functor: Option<Functor>,
    pub args: Vec<Object>,
}

impl Constant {
    pub fn new(kind: ConstKind, functor: Option<Functor>, args: Vec<Object>) -> Constant {
        Constant {
            kind,
            functor,
            args,
        }
    }

    pub(crate) fn bindings(&self) -> Bindings {
        Bindings {
            objects: self.args.iter().cloned().map(Some).collect(),
            functor: self.functor,
        }
    }

    /// Source and target, provided the arity is right and a functor is
    /// present whenever the signature needs one.
    pub fn typed(&self) -> Option<(Object, Object)> {
        let sig = self.kind.signature();
        if self.args.len() != sig.arity || self.kind.has_functor() != self.functor.is_some() {
            return None;
        }
        let env = self.bindings();
        Some((
            instantiate_object(&sig.src, &env)?,
            instantiate_object(&sig.tgt, &env)?,
        ))
    }
}

/// Arrow terms. `Comp(g, f)` is `g . f`: first `f`, then `g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arrow {
    Const(Constant),
    Comp(Box<Arrow>, Box<Arrow>),
    Tensor(Box<Arrow>, Box<Arrow>),
    Apply(Functor, Box<Arrow>),
}

macro_rules! unary {
    ($name:ident, $kind:ident) => {
        pub fn $name(a: Object) -> Arrow {
            Arrow::constant(ConstKind::$kind, None, vec![a])
        }
    };
}

macro_rules! unary_f {
    ($name:ident, $kind:ident) => {
        pub fn $name(f: Functor, a: Object) -> Arrow {
            Arrow::constant(ConstKind::$kind, Some(f), vec![a])
        }
    };
}

impl Arrow {
    pub fn constant(kind: ConstKind, functor: Option<Functor>, args: Vec<Object>) -> Arrow {
        Arrow::Const(Constant::new(kind, functor, args))
    }

    pub fn comp(g: Arrow, f: Arrow) -> Arrow {
        Arrow::Comp(Box::new(g), Box::new(f))
    }

    /// Composes a chain given in application order: `chain([f, g, h]) = h . g . f`.
    pub fn chain(steps: impl IntoIterator<Item = Arrow>) -> Option<Arrow> {
        steps.into_iter().reduce(|acc, next| Arrow::comp(next, acc))
    }

    pub fn tensor(f: Arrow, g: Arrow) -> Arrow {
        Arrow::Tensor(Box::new(f), Box::new(g))
    }

    pub fn apply(functor: Functor, f: Arrow) -> Arrow {
        Arrow::Apply(functor, Box::new(f))
    }

    unary!(id, Id);
    unary!(l, LeftUnit);
    unary!(l_inv, LeftUnitInv);
    unary!(r, RightUnit);
    unary!(r_inv, RightUnitInv);
    unary!(diag, Diag);
    unary!(bang, Bang);
    unary!(codiag, Codiag);
    unary!(cobang, Cobang);
    unary_f!(eta, Eta);
    unary_f!(mu, Mu);
    unary_f!(eps, Eps);
    unary_f!(delta, Delta);

    pub fn assoc(a: Object, b: Object, c: Object) -> Arrow {
        Arrow::constant(ConstKind::Assoc, None, vec![a, b, c])
    }

    pub fn assoc_inv(a: Object, b: Object, c: Object) -> Arrow {
        Arrow::constant(ConstKind::AssocInv, None, vec![a, b, c])
    }

    pub fn sym(a: Object, b: Object) -> Arrow {
        Arrow::constant(ConstKind::Sym, None, vec![a, b])
    }

    pub fn psi_l(f: Functor, a: Object, b: Object) -> Arrow {
        Arrow::constant(ConstKind::PsiL, Some(f), vec![a, b])
    }

    pub fn psi_r(f: Functor, a: Object, b: Object) -> Arrow {
        Arrow::constant(ConstKind::PsiR, Some(f), vec![a, b])
    }

    pub fn psi(f: Functor, a: Object, b: Object) -> Arrow {
        Arrow::constant(ConstKind::Psi, Some(f), vec![a, b])
    }

    pub fn psi0(f: Functor) -> Arrow {
        Arrow::constant(ConstKind::Psi0, Some(f), vec![])
    }

    /// Number of constructor nodes; every constant (identities included)
    /// counts one.
    pub fn size(&self) -> usize {
        match self {
            Arrow::Const(_) => 1,
            Arrow::Comp(g, f) => 1 + g.size() + f.size(),
            Arrow::Tensor(f, g) => 1 + f.size() + g.size(),
            Arrow::Apply(_, f) => 1 + f.size(),
        }
    }

    pub fn as_const(&self) -> Option<&Constant> {
        match self {
            Arrow::Const(c) => Some(c),
            _ => None,
        }
    }

    /// Pre-order list of all constants.
    pub fn constants(&self) -> Vec<&Constant> {
        let mut out = Vec::new();
        self.collect_constants(&mut out);
        out
    }

    fn collect_constants<'a>(&'a self, out: &mut Vec<&'a Constant>) {
        match self {
            Arrow::Const(c) => out.push(c),
            Arrow::Comp(a, b) | Arrow::Tensor(a, b) => {
                a.collect_constants(out);
                b.collect_constants(out);
            }
            Arrow::Apply(_, a) => a.collect_constants(out),
        }
    }

    pub fn contains_kind(&self, k: ConstKind) -> bool {
        self.constants().iter().any(|c| c.kind == k)
    }

    /// Child subterms, left to right. For `Comp(g, f)` the children are
    /// `[g, f]`, matching the written order `g . f`.
    pub fn children(&self) -> Vec<&Arrow> {
        match self {
            Arrow::Const(_) => vec![],
            Arrow::Comp(a, b) | Arrow::Tensor(a, b) => vec![a, b],
            Arrow::Apply(_, a) => vec![a],
        }
    }

    /// All subterm positions in pre-order; a position lists child indices.
    pub fn positions(&self) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        self.positions_into(&mut Vec::new(), &mut out);
        out
    }

    fn positions_into(&self, here: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        out.push(here.clone());
        for (i, c) in self.children().into_iter().enumerate() {
            here.push(i as u8);
            c.positions_into(here, out);
            here.pop();
        }
    }

    pub fn at(&self, pos: &[u8]) -> Option<&Arrow> {
        let Some((first, rest)) = pos.split_first() else {
            return Some(self);
        };
        self.children().get(*first as usize)?.at(rest)
    }

    pub fn replace_at(&self, pos: &[u8], new: Arrow) -> Option<Arrow> {
        let Some((first, rest)) = pos.split_first() else {
            return Some(new);
        };
        Some(match (self, first) {
            (Arrow::Comp(a, b), 0) => Arrow::Comp(Box::new(a.replace_at(rest, new)?), b.clone()),
            (Arrow::Comp(a, b), 1) => Arrow::Comp(a.clone(), Box::new(b.replace_at(rest, new)?)),
            (Arrow::Tensor(a, b), 0) => {
                Arrow::Tensor(Box::new(a.replace_at(rest, new)?), b.clone())
            }
            (Arrow::Tensor(a, b), 1) => {
                Arrow::Tensor(a.clone(), Box::new(b.replace_at(rest, new)?))
            }
            (Arrow::Apply(g, a), 0) => Arrow::Apply(*g, Box::new(a.replace_at(rest, new)?)),
            _ => return None,
        })
    }
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind.name())?;
        if let Some(g @ Functor::E(_)) = self.functor {
            write!(f, "<{g}>")?;
        }
        if self.kind.arity() > 0 || !self.args.is_empty() {
            f.write_str("{")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arrow::Const(c) => write!(f, "{c}"),
            Arrow::Comp(g, h) => {
                write!(f, "{g} . ")?;
                if matches!(**h, Arrow::Comp(..)) {
                    write!(f, "({h})")
                } else {
                    write!(f, "{h}")
                }
            }
            Arrow::Tensor(a, b) => {
                if matches!(**a, Arrow::Comp(..)) {
                    write!(f, "({a})")?;
                } else {
                    write!(f, "{a}")?;
                }
                f.write_str(" * ")?;
                if matches!(**b, Arrow::Comp(..) | Arrow::Tensor(..)) {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
            Arrow::Apply(g, a) => write!(f, "{g}[{a}]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_respects_associativity() {
        let p = Object::letter("p");
        let t = Functor::T;
        let f = Arrow::comp(
            Arrow::comp(
                Arrow::mu(t, p.clone()),
                Arrow::eta(t, Object::app(t, p.clone())),
            ),
            Arrow::id(Object::app(t, p.clone())),
        );
        assert_eq!(f.to_string(), "mu{p} . eta{T(p)} . id{T(p)}");
        let g = Arrow::comp(
            Arrow::mu(t, p.clone()),
            Arrow::comp(
                Arrow::eta(t, Object::app(t, p.clone())),
                Arrow::id(Object::app(t, p)),
            ),
        );
        assert_eq!(g.to_string(), "mu{p} . (eta{T(p)} . id{T(p)})");
    }

    #[test]
    fn constant_types() {
        let p = Object::letter("p");
        let q = Object::letter("q");
        let t = Functor::T;
        let c = Constant::new(ConstKind::PsiR, Some(t), vec![p.clone(), q.clone()]);
        let (s, g) = c.typed().unwrap();
        assert_eq!(s, Object::tensor(p.clone(), Object::app(t, q.clone())));
        assert_eq!(g, Object::app(t, Object::tensor(p.clone(), q)));
        // missing functor
        assert!(Constant::new(ConstKind::Eta, None, vec![p.clone()])
            .typed()
            .is_none());
        // wrong arity
        assert!(Constant::new(ConstKind::Sym, None, vec![p])
            .typed()
            .is_none());
    }

    #[test]
    fn positions_are_preorder() {
        let p = Object::letter("p");
        let f = Arrow::comp(
            Arrow::id(p.clone()),
            Arrow::tensor(Arrow::id(p.clone()), Arrow::id(p)),
        );
        assert_eq!(
            f.positions(),
            vec![vec![], vec![0], vec![1], vec![1, 0], vec![1, 1]]
        );
    }
}
