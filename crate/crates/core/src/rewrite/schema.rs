use std::fmt;

use crate::error::{Error, Result};
use crate::syntax::{parse_raw_arrow, parse_raw_object, RawArrow, RawFunctor, RawObject};
use crate::terms::{
    infer_type, instantiate_object, match_object, Arrow, Bindings, ConstKind, Constant, ObjPat,
    Theory,
};

/// Arrow patterns. Functor-bearing constants and `Apply` always refer to
/// the single functor variable of the schema.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ArrowPat {
    Const { kind: ConstKind, args: Vec<ObjPat> },
    Var(usize),
    Comp(Box<ArrowPat>, Box<ArrowPat>),
    Tensor(Box<ArrowPat>, Box<ArrowPat>),
    Apply(Box<ArrowPat>),
}

impl ArrowPat {
    fn konst(kind: ConstKind, args: Vec<ObjPat>) -> ArrowPat {
        ArrowPat::Const { kind, args }
    }

    fn comp(g: ArrowPat, f: ArrowPat) -> ArrowPat {
        ArrowPat::Comp(Box::new(g), Box::new(f))
    }

    fn tensor(f: ArrowPat, g: ArrowPat) -> ArrowPat {
        ArrowPat::Tensor(Box::new(f), Box::new(g))
    }

    fn apply(f: ArrowPat) -> ArrowPat {
        ArrowPat::Apply(Box::new(f))
    }

    fn object_vars(&self, out: &mut Vec<usize>) {
        match self {
            ArrowPat::Const { args, .. } => args.iter().for_each(|a| a.vars(out)),
            ArrowPat::Var(_) => {}
            ArrowPat::Comp(a, b) | ArrowPat::Tensor(a, b) => {
                a.object_vars(out);
                b.object_vars(out);
            }
            ArrowPat::Apply(a) => a.object_vars(out),
        }
    }

    fn arrow_vars(&self, out: &mut Vec<usize>) {
        match self {
            ArrowPat::Const { .. } => {}
            ArrowPat::Var(v) => {
                if !out.contains(v) {
                    out.push(*v)
                }
            }
            ArrowPat::Comp(a, b) | ArrowPat::Tensor(a, b) => {
                a.arrow_vars(out);
                b.arrow_vars(out);
            }
            ArrowPat::Apply(a) => a.arrow_vars(out),
        }
    }

    fn uses_functor(&self) -> bool {
        match self {
            ArrowPat::Const { kind, args } => {
                kind.has_functor() || args.iter().any(ObjPat::uses_functor)
            }
            ArrowPat::Var(_) => false,
            ArrowPat::Comp(a, b) | ArrowPat::Tensor(a, b) => a.uses_functor() || b.uses_functor(),
            ArrowPat::Apply(_) => true,
        }
    }

    fn constants(&self, out: &mut Vec<ConstKind>) {
        match self {
            ArrowPat::Const { kind, .. } => out.push(*kind),
            ArrowPat::Var(_) => {}
            ArrowPat::Comp(a, b) | ArrowPat::Tensor(a, b) => {
                a.constants(out);
                b.constants(out);
            }
            ArrowPat::Apply(a) => a.constants(out),
        }
    }

    /// Root shape, used to skip hopeless match attempts.
    pub(crate) fn head(&self) -> Head {
        match self {
            ArrowPat::Const { kind, .. } => Head::Const(*kind),
            ArrowPat::Var(_) => Head::Any,
            ArrowPat::Comp(..) => Head::Comp,
            ArrowPat::Tensor(..) => Head::Tensor,
            ArrowPat::Apply(_) => Head::Apply,
        }
    }

    /// Replaces derived constants by their definitions in `th`.
    fn expand(&self, th: Theory) -> ArrowPat {
        use ObjPat as P;
        match self {
            ArrowPat::Const {
                kind: ConstKind::Psi,
                args,
            } if !th.is_primitive(ConstKind::Psi) => {
                let (a, b) = (args[0].clone(), args[1].clone());
                let ab = P::tensor(a.clone(), b.clone());
                if th == Theory::DS {
                    let inj1 = ArrowPat::comp(
                        ArrowPat::tensor(
                            ArrowPat::konst(ConstKind::Id, vec![a.clone()]),
                            ArrowPat::konst(ConstKind::Cobang, vec![b.clone()]),
                        ),
                        ArrowPat::konst(ConstKind::RightUnitInv, vec![a.clone()]),
                    );
                    let inj2 = ArrowPat::comp(
                        ArrowPat::tensor(
                            ArrowPat::konst(ConstKind::Cobang, vec![a]),
                            ArrowPat::konst(ConstKind::Id, vec![b.clone()]),
                        ),
                        ArrowPat::konst(ConstKind::LeftUnitInv, vec![b]),
                    );
                    ArrowPat::comp(
                        ArrowPat::konst(ConstKind::Codiag, vec![P::app(ab)]),
                        ArrowPat::tensor(ArrowPat::apply(inj1), ArrowPat::apply(inj2)),
                    )
                } else {
                    ArrowPat::comp(
                        ArrowPat::konst(ConstKind::Mu, vec![ab]),
                        ArrowPat::comp(
                            ArrowPat::apply(ArrowPat::konst(
                                ConstKind::PsiL,
                                vec![a.clone(), b.clone()],
                            )),
                            ArrowPat::konst(ConstKind::PsiR, vec![P::app(a), b]),
                        ),
                    )
                }
            }
            ArrowPat::Const {
                kind: ConstKind::Psi0,
                ..
            } if !th.is_primitive(ConstKind::Psi0) => {
                ArrowPat::konst(ConstKind::Eta, vec![P::Unit])
            }
            ArrowPat::Const { .. } | ArrowPat::Var(_) => self.clone(),
            ArrowPat::Comp(a, b) => ArrowPat::comp(a.expand(th), b.expand(th)),
            ArrowPat::Tensor(a, b) => ArrowPat::tensor(a.expand(th), b.expand(th)),
            ArrowPat::Apply(a) => ArrowPat::apply(a.expand(th)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Head {
    Any,
    Const(ConstKind),
    Comp,
    Tensor,
    Apply,
}

impl Head {
    pub(crate) fn admits(&self, f: &Arrow) -> bool {
        match (self, f) {
            (Head::Any, _) => true,
            (Head::Const(k), Arrow::Const(c)) => c.kind == *k,
            (Head::Comp, Arrow::Comp(..))
            | (Head::Tensor, Arrow::Tensor(..))
            | (Head::Apply, Arrow::Apply(..)) => true,
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowVar {
    pub name: String,
    pub src: ObjPat,
    pub tgt: ObjPat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Forward,
    Backward,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "->",
            Direction::Backward => "<-",
        })
    }
}

/// A metavariable assignment: objects, the functor, and arrow variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Env {
    pub objects: Bindings,
    pub arrows: Vec<Option<Arrow>>,
}

/// An equation between two arrow patterns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schema {
    pub name: String,
    pub lhs: ArrowPat,
    pub rhs: ArrowPat,
    pub object_vars: Vec<String>,
    pub arrow_vars: Vec<ArrowVar>,
}

struct Names {
    objects: Vec<String>,
    arrows: Vec<String>,
}

impl Names {
    fn object(&mut self, name: &str) -> usize {
        match self.objects.iter().position(|n| n == name) {
            Some(i) => i,
            None => {
                self.objects.push(name.to_string());
                self.objects.len() - 1
            }
        }
    }
}

fn bad_schema(msg: String) -> Error {
    Error::Syntax {
        line: 1,
        column: 1,
        message: msg,
    }
}

fn to_objpat(raw: &RawObject, names: &mut Names) -> Result<ObjPat> {
    Ok(match raw {
        RawObject::Unit => ObjPat::Unit,
        RawObject::Var(v) => ObjPat::Var(names.object(v)),
        RawObject::Tensor(a, b) => ObjPat::tensor(to_objpat(a, names)?, to_objpat(b, names)?),
        RawObject::App(RawFunctor::Var, a) => ObjPat::app(to_objpat(a, names)?),
        RawObject::Letter(x) => return Err(bad_schema(format!("letter `{x}` in a schema"))),
        RawObject::App(RawFunctor::Named(f), _) => {
            return Err(bad_schema(format!("named functor {f} in a schema")))
        }
    })
}

fn to_arrowpat(raw: &RawArrow, names: &mut Names) -> Result<ArrowPat> {
    Ok(match raw {
        RawArrow::Const {
            kind,
            functor,
            args,
        } => {
            if let Some(RawFunctor::Named(f)) = functor {
                return Err(bad_schema(format!("named functor {f} in a schema")));
            }
            let args = args
                .iter()
                .map(|a| to_objpat(a, names))
                .collect::<Result<_>>()?;
            ArrowPat::Const { kind: *kind, args }
        }
        RawArrow::Var(v) => match names.arrows.iter().position(|n| n == v) {
            Some(i) => ArrowPat::Var(i),
            None => return Err(bad_schema(format!("undeclared arrow variable `{v}`"))),
        },
        RawArrow::Comp(a, b) => ArrowPat::comp(to_arrowpat(a, names)?, to_arrowpat(b, names)?),
        RawArrow::Tensor(a, b) => ArrowPat::tensor(to_arrowpat(a, names)?, to_arrowpat(b, names)?),
        RawArrow::Apply(RawFunctor::Var, a) => ArrowPat::apply(to_arrowpat(a, names)?),
        RawArrow::Apply(RawFunctor::Named(f), _) => {
            return Err(bad_schema(format!("named functor {f} in a schema")))
        }
    })
}

impl Schema {
    /// Reads a schema from concrete syntax. `decls` declares arrow
    /// variables as `f: A -> B`, separated by `;`.
    pub fn parse(name: &str, lhs: &str, rhs: &str, decls: &str) -> Result<Schema> {
        let mut names = Names {
            objects: Vec::new(),
            arrows: Vec::new(),
        };
        let mut typed = Vec::new();
        for d in decls.split(';').map(str::trim).filter(|d| !d.is_empty()) {
            let (v, ty) = d
                .split_once(':')
                .ok_or_else(|| bad_schema(format!("bad declaration `{d}`")))?;
            let (s, t) = ty
                .split_once("->")
                .ok_or_else(|| bad_schema(format!("bad declaration `{d}`")))?;
            names.arrows.push(v.trim().to_string());
            typed.push((parse_raw_object(s, true)?, parse_raw_object(t, true)?));
        }
        let mut arrow_vars = Vec::new();
        for (i, (s, t)) in typed.iter().enumerate() {
            arrow_vars.push(ArrowVar {
                name: names.arrows[i].clone(),
                src: to_objpat(s, &mut names)?,
                tgt: to_objpat(t, &mut names)?,
            });
        }
        let lhs = to_arrowpat(&parse_raw_arrow(lhs, true)?, &mut names)?;
        let rhs = to_arrowpat(&parse_raw_arrow(rhs, true)?, &mut names)?;
        Ok(Schema {
            name: name.to_string(),
            lhs,
            rhs,
            object_vars: names.objects,
            arrow_vars,
        })
    }

    pub fn expand(&self, th: Theory) -> Schema {
        Schema {
            lhs: self.lhs.expand(th),
            rhs: self.rhs.expand(th),
            ..self.clone()
        }
    }

    pub fn constants(&self) -> Vec<ConstKind> {
        let mut out = Vec::new();
        self.lhs.constants(&mut out);
        self.rhs.constants(&mut out);
        out.sort();
        out.dedup();
        out
    }

    /// The side matched and the side produced when rewriting in `dir`.
    pub fn sides(&self, dir: Direction) -> (&ArrowPat, &ArrowPat) {
        match dir {
            Direction::Forward => (&self.lhs, &self.rhs),
            Direction::Backward => (&self.rhs, &self.lhs),
        }
    }

    /// Whether matching the input side determines every metavariable of
    /// the output side.
    pub fn allows(&self, dir: Direction, th: Theory) -> bool {
        let (from, to) = self.sides(dir);
        let mut bound_arrows = Vec::new();
        from.arrow_vars(&mut bound_arrows);
        let mut bound_objects = Vec::new();
        from.object_vars(&mut bound_objects);
        let mut functor_bound = !th.is_family() || from.uses_functor();
        for &v in &bound_arrows {
            let av = &self.arrow_vars[v];
            av.src.vars(&mut bound_objects);
            av.tgt.vars(&mut bound_objects);
            functor_bound |= av.src.uses_functor() || av.tgt.uses_functor();
        }
        let mut need_arrows = Vec::new();
        to.arrow_vars(&mut need_arrows);
        let mut need_objects = Vec::new();
        to.object_vars(&mut need_objects);
        need_arrows.iter().all(|v| bound_arrows.contains(v))
            && need_objects.iter().all(|v| bound_objects.contains(v))
            && (functor_bound || !to.uses_functor())
    }

    pub fn fresh_env(&self, th: Theory) -> Env {
        let mut objects = Bindings::with_capacity(self.object_vars.len());
        if !th.is_family() {
            objects.functor = Some(th.default_functor());
        }
        Env {
            objects,
            arrows: vec![None; self.arrow_vars.len()],
        }
    }

    /// Matches `pat` against `f`, then checks the declared types of the
    /// arrow variables that were bound.
    pub fn match_pattern(&self, pat: &ArrowPat, f: &Arrow, th: Theory, env: &mut Env) -> bool {
        if !match_arrow(pat, f, env) {
            return false;
        }
        for (v, av) in self.arrow_vars.iter().enumerate() {
            if let Some(bound) = &env.arrows[v] {
                let Ok((s, t)) = infer_type(bound, th) else {
                    return false;
                };
                if !match_object(&av.src, &s, &mut env.objects)
                    || !match_object(&av.tgt, &t, &mut env.objects)
                {
                    return false;
                }
            }
        }
        true
    }

    /// One rewrite step at the root of `f`.
    pub fn apply(&self, dir: Direction, f: &Arrow, th: Theory) -> Option<Arrow> {
        let (from, to) = self.sides(dir);
        let mut env = self.fresh_env(th);
        if !self.match_pattern(from, f, th, &mut env) {
            return None;
        }
        instantiate_arrow(to, &env)
    }
}

fn match_arrow(pat: &ArrowPat, f: &Arrow, env: &mut Env) -> bool {
    match (pat, f) {
        (ArrowPat::Var(v), _) => match &env.arrows[*v] {
            Some(bound) => bound == f,
            None => {
                env.arrows[*v] = Some(f.clone());
                true
            }
        },
        (ArrowPat::Const { kind, args }, Arrow::Const(c)) => {
            *kind == c.kind
                && args.len() == c.args.len()
                && (!kind.has_functor() || c.functor.is_some_and(|g| env.objects.bind_functor(g)))
                && args
                    .iter()
                    .zip(&c.args)
                    .all(|(p, o)| match_object(p, o, &mut env.objects))
        }
        (ArrowPat::Comp(p, q), Arrow::Comp(g, h))
        | (ArrowPat::Tensor(p, q), Arrow::Tensor(g, h)) => {
            match_arrow(p, g, env) && match_arrow(q, h, env)
        }
        (ArrowPat::Apply(p), Arrow::Apply(g, a)) => {
            env.objects.bind_functor(*g) && match_arrow(p, a, env)
        }
        _ => false,
    }
}

pub fn instantiate_arrow(pat: &ArrowPat, env: &Env) -> Option<Arrow> {
    Some(match pat {
        ArrowPat::Var(v) => env.arrows.get(*v)?.clone()?,
        ArrowPat::Const { kind, args } => {
            let functor = if kind.has_functor() {
                Some(env.objects.functor?)
            } else {
                None
            };
            let args = args
                .iter()
                .map(|a| instantiate_object(a, &env.objects))
                .collect::<Option<_>>()?;
            Arrow::Const(Constant::new(*kind, functor, args))
        }
        ArrowPat::Comp(a, b) => Arrow::comp(instantiate_arrow(a, env)?, instantiate_arrow(b, env)?),
        ArrowPat::Tensor(a, b) => {
            Arrow::tensor(instantiate_arrow(a, env)?, instantiate_arrow(b, env)?)
        }
        ArrowPat::Apply(a) => Arrow::apply(env.objects.functor?, instantiate_arrow(a, env)?),
    })
}

type Applies = fn(Theory) -> bool;

fn always(_: Theory) -> bool {
    true
}
fn prim(th: Theory, k: ConstKind) -> bool {
    th.is_primitive(k)
}
fn sym(th: Theory) -> bool {
    th.is_symmetric()
}
fn monad(th: Theory) -> bool {
    th.is_monad()
}
fn has_mu(th: Theory) -> bool {
    prim(th, ConstKind::Mu)
}
fn comonad(th: Theory) -> bool {
    th.is_comonad()
}
fn cartesian(th: Theory) -> bool {
    th.is_cartesian()
}
fn cocartesian(th: Theory) -> bool {
    th.is_cocartesian()
}
fn psi_l(th: Theory) -> bool {
    prim(th, ConstKind::PsiL)
}
fn psi_r(th: Theory) -> bool {
    prim(th, ConstKind::PsiR)
}
fn psi_l_mu(th: Theory) -> bool {
    psi_l(th) && has_mu(th)
}
fn psi_r_mu(th: Theory) -> bool {
    psi_r(th) && has_mu(th)
}
fn psi_l_eta(th: Theory) -> bool {
    psi_l(th) && monad(th)
}
fn psi_r_eta(th: Theory) -> bool {
    psi_r(th) && monad(th)
}
fn both_strengths(th: Theory) -> bool {
    psi_l(th) && psi_r(th)
}
fn both_strengths_mu(th: Theory) -> bool {
    both_strengths(th) && has_mu(th)
}
fn both_strengths_sym(th: Theory) -> bool {
    both_strengths(th) && sym(th)
}
fn psi_legal(th: Theory) -> bool {
    th.is_legal(ConstKind::Psi)
}
fn psi_primitive(th: Theory) -> bool {
    prim(th, ConstKind::Psi)
}
fn psi_with_unit(th: Theory) -> bool {
    psi_legal(th) && th.is_legal(ConstKind::Psi0)
}
fn psi_monad(th: Theory) -> bool {
    psi_legal(th) && monad(th)
}
fn psi_mu(th: Theory) -> bool {
    psi_legal(th) && has_mu(th)
}
fn psi_sym(th: Theory) -> bool {
    psi_legal(th) && sym(th)
}
fn psi_l_comonad(th: Theory) -> bool {
    psi_l(th) && comonad(th)
}
fn psi_r_comonad(th: Theory) -> bool {
    psi_r(th) && comonad(th)
}
fn ds(th: Theory) -> bool {
    th == Theory::DS
}
fn dsco(th: Theory) -> bool {
    th == Theory::DSco
}

/// `(name, lhs, rhs, arrow variable declarations, theories)`.
const TABLE: &[(&str, &str, &str, &str, Applies)] = &[
    // categories, tensor and functor
    ("cat-idl", "id{B} . f", "f", "f: A -> B", always),
    ("cat-idr", "f . id{A}", "f", "f: A -> B", always),
    ("cat-assoc", "h . (g . f)", "h . g . f", "f: A -> B; g: B -> C; h: C -> D", always),
    ("tens-id", "id{A} * id{B}", "id{A*B}", "", always),
    ("tens-comp", "(g1 . f1) * (g2 . f2)", "(g1 * g2) . (f1 * f2)", "f1: A1 -> B1; g1: B1 -> C1; f2: A2 -> B2; g2: B2 -> C2", always),
    ("fun-id", "F[id{A}]", "id{F(A)}", "", always),
    ("fun-comp", "F[g . f]", "F[g] . F[f]", "f: A -> B; g: B -> C", always),
    // monoidal structure
    ("nat-a", "a{B1,B2,B3} . ((f1 * f2) * f3)", "(f1 * (f2 * f3)) . a{A1,A2,A3}", "f1: A1 -> B1; f2: A2 -> B2; f3: A3 -> B3", always),
    ("nat-a'", "a'{B1,B2,B3} . (f1 * (f2 * f3))", "((f1 * f2) * f3) . a'{A1,A2,A3}", "f1: A1 -> B1; f2: A2 -> B2; f3: A3 -> B3", always),
    ("nat-l", "f . l{A}", "l{B} . (id{I} * f)", "f: A -> B", always),
    ("nat-l'", "l'{B} . f", "(id{I} * f) . l'{A}", "f: A -> B", always),
    ("nat-r", "f . r{A}", "r{B} . (f * id{I})", "f: A -> B", always),
    ("nat-r'", "r'{B} . f", "(f * id{I}) . r'{A}", "f: A -> B", always),
    ("iso-a", "a'{A,B,C} . a{A,B,C}", "id{(A*B)*C}", "", always),
    ("iso-a'", "a{A,B,C} . a'{A,B,C}", "id{A*(B*C)}", "", always),
    ("iso-l", "l'{A} . l{A}", "id{I*A}", "", always),
    ("iso-l'", "l{A} . l'{A}", "id{A}", "", always),
    ("iso-r", "r'{A} . r{A}", "id{A*I}", "", always),
    ("iso-r'", "r{A} . r'{A}", "id{A}", "", always),
    ("pentagon", "a{A,B,C*D} . a{A*B,C,D}", "(id{A} * a{B,C,D}) . a{A,B*C,D} . (a{A,B,C} * id{D})", "", always),
    ("triangle", "(id{A} * l{B}) . a{A,I,B}", "r{A} * id{B}", "", always),
    ("unit-coincide", "l{I}", "r{I}", "", always),
    // symmetry
    ("nat-c", "c{B1,B2} . (f1 * f2)", "(f2 * f1) . c{A1,A2}", "f1: A1 -> B1; f2: A2 -> B2", sym),
    ("sym-inv", "c{B,A} . c{A,B}", "id{A*B}", "", sym),
    ("hexagon", "a{B,C,A} . c{A,B*C} . a{A,B,C}", "(id{B} * c{A,C}) . a{B,A,C} . (c{A,B} * id{C})", "", sym),
    // monads
    ("nat-eta", "eta{B} . f", "F[f] . eta{A}", "f: A -> B", monad),
    ("nat-mu", "mu{B} . F[F[f]]", "F[f] . mu{A}", "f: A -> B", has_mu),
    ("monad-unit-l", "mu{A} . eta{F(A)}", "id{F(A)}", "", monad),
    ("monad-unit-r", "mu{A} . F[eta{A}]", "id{F(A)}", "", monad),
    ("monad-assoc", "mu{A} . F[mu{A}]", "mu{A} . mu{F(A)}", "", has_mu),
    // comonads
    ("nat-eps", "f . eps{A}", "eps{B} . F[f]", "f: A -> B", comonad),
    ("nat-delta", "F[F[f]] . delta{A}", "delta{B} . F[f]", "f: A -> B", comonad),
    ("comonad-counit-l", "eps{F(A)} . delta{A}", "id{F(A)}", "", comonad),
    ("comonad-counit-r", "F[eps{A}] . delta{A}", "id{F(A)}", "", comonad),
    ("comonad-coassoc", "F[delta{A}] . delta{A}", "delta{F(A)} . delta{A}", "", comonad),
    // left strength
    ("nat-psiL", "psiL{B1,B2} . (F[f1] * f2)", "F[f1 * f2] . psiL{A1,A2}", "f1: A1 -> B1; f2: A2 -> B2", psi_l),
    ("psiL-a", "F[a{A,B,C}] . psiL{A*B,C} . (psiL{A,B} * id{C})", "psiL{A,B*C} . a{F(A),B,C}", "", psi_l),
    ("psiL-r", "F[r{A}] . psiL{A,I}", "r{F(A)}", "", psi_l),
    ("psiL-eta", "psiL{A,B} . (eta{A} * id{B})", "eta{A*B}", "", psi_l_eta),
    ("psiL-mu", "psiL{A,B} . (mu{A} * id{B})", "mu{A*B} . F[psiL{A,B}] . psiL{F(A),B}", "", psi_l_mu),
    ("psiL-eps", "eps{A*B} . psiL{A,B}", "eps{A} * id{B}", "", psi_l_comonad),
    ("psiL-delta", "delta{A*B} . psiL{A,B}", "F[psiL{A,B}] . psiL{F(A),B} . (delta{A} * id{B})", "", psi_l_comonad),
    // right strength
    ("nat-psiR", "psiR{B1,B2} . (f1 * F[f2])", "F[f1 * f2] . psiR{A1,A2}", "f1: A1 -> B1; f2: A2 -> B2", psi_r),
    ("psiR-a", "F[a{A,B,C}] . psiR{A*B,C}", "psiR{A,B*C} . (id{A} * psiR{B,C}) . a{A,B,F(C)}", "", psi_r),
    ("psiR-l", "F[l{A}] . psiR{I,A}", "l{F(A)}", "", psi_r),
    ("psiR-eta", "psiR{A,B} . (id{A} * eta{B})", "eta{A*B}", "", psi_r_eta),
    ("psiR-mu", "psiR{A,B} . (id{A} * mu{B})", "mu{A*B} . F[psiR{A,B}] . psiR{A,F(B)}", "", psi_r_mu),
    ("psiR-eps", "eps{A*B} . psiR{A,B}", "id{A} * eps{B}", "", psi_r_comonad),
    ("psiR-delta", "delta{A*B} . psiR{A,B}", "F[psiR{A,B}] . psiR{A,F(B)} . (id{A} * delta{B})", "", psi_r_comonad),
    // both strengths
    ("psiLpsiR-a", "F[a{A,B,C}] . psiL{A*B,C} . (psiR{A,B} * id{C})", "psiR{A,B*C} . (id{A} * psiL{B,C}) . a{A,F(B),C}", "", both_strengths),
    ("psiLpsiR-mu", "mu{A*B} . F[psiL{A,B}] . psiR{F(A),B}", "mu{A*B} . F[psiR{A,B}] . psiL{A,F(B)}", "", both_strengths_mu),
    ("psiLpsiR-c", "F[c{A,B}] . psiL{A,B}", "psiR{B,A} . c{F(A),B}", "", both_strengths_sym),
    // the monoidal structure of the functor
    ("nat-psi", "psi{B1,B2} . (F[f1] * F[f2])", "F[f1 * f2] . psi{A1,A2}", "f1: A1 -> B1; f2: A2 -> B2", psi_primitive),
    ("psi-a", "F[a{A,B,C}] . psi{A*B,C} . (psi{A,B} * id{F(C)})", "psi{A,B*C} . (id{F(A)} * psi{B,C}) . a{F(A),F(B),F(C)}", "", psi_legal),
    ("psi-l", "F[l{A}] . psi{I,A} . (psi0 * id{F(A)})", "l{F(A)}", "", psi_with_unit),
    ("psi-r", "F[r{A}] . psi{A,I} . (id{F(A)} * psi0)", "r{F(A)}", "", psi_with_unit),
    ("psi-eta", "psi{A,B} . (eta{A} * eta{B})", "eta{A*B}", "", psi_monad),
    ("psi-mu", "psi{A,B} . (mu{A} * mu{B})", "mu{A*B} . F[psi{A,B}] . psi{F(A),F(B)}", "", psi_mu),
    ("psi-c", "F[c{A,B}] . psi{A,B}", "psi{B,A} . c{F(A),F(B)}", "", psi_sym),
    ("psi-eps", "eps{A*B} . psi{A,B}", "eps{A} * eps{B}", "", psi_primitive),
    ("psi-delta", "delta{A*B} . psi{A,B}", "F[psi{A,B}] . psi{F(A),F(B)} . (delta{A} * delta{B})", "", psi_primitive),
    ("psi0-eps", "eps{I} . psi0", "id{I}", "", psi_primitive),
    ("psi0-delta", "delta{I} . psi0", "F[psi0] . psi0", "", psi_primitive),
    // cartesian structure
    ("nat-diag", "diag{B} . f", "(f * f) . diag{A}", "f: A -> B", cartesian),
    ("terminal", "f", "bang{A}", "f: A -> I", cartesian),
    ("diag-coassoc", "a{A,A,A} . (diag{A} * id{A}) . diag{A}", "(id{A} * diag{A}) . diag{A}", "", cartesian),
    ("diag-counit-l", "l{A} . (bang{A} * id{A}) . diag{A}", "id{A}", "", cartesian),
    ("diag-counit-r", "r{A} . (id{A} * bang{A}) . diag{A}", "id{A}", "", cartesian),
    ("diag-cocomm", "c{A,A} . diag{A}", "diag{A}", "", cartesian),
    (
        "diag-tensor",
        "diag{A*B}",
        "a'{A,B,A*B} . (id{A} * (a{B,A,B} . (c{A,B} * id{B}) . a'{A,B,B})) . a{A,A,B*B} . (diag{A} * diag{B})",
        "",
        cartesian,
    ),
    ("bang-tensor", "bang{A*B}", "l{I} . (bang{A} * bang{B})", "", cartesian),
    ("psi-diag", "F[diag{A}]", "psi{A,A} . diag{F(A)}", "", cartesian),
    // cocartesian structure
    ("nat-codiag", "f . codiag{A}", "codiag{B} . (f * f)", "f: A -> B", cocartesian),
    ("initial", "f", "cobang{B}", "f: I -> B", cocartesian),
    ("codiag-assoc", "codiag{A} . (codiag{A} * id{A})", "codiag{A} . (id{A} * codiag{A}) . a{A,A,A}", "", cocartesian),
    ("codiag-unit-l", "codiag{A} . (cobang{A} * id{A})", "l{A}", "", cocartesian),
    ("codiag-unit-r", "codiag{A} . (id{A} * cobang{A})", "r{A}", "", cocartesian),
    ("codiag-comm", "codiag{A} . c{A,A}", "codiag{A}", "", cocartesian),
    (
        "codiag-tensor",
        "codiag{A*B}",
        "(codiag{A} * codiag{B}) . a'{A,A,B*B} . (id{A} * (a{A,B,B} . (c{B,A} * id{B}) . a'{B,A,B})) . a{A,B,A*B}",
        "",
        cocartesian,
    ),
    ("cobang-tensor", "cobang{A*B}", "(cobang{A} * cobang{B}) . l'{I}", "", cocartesian),
    (
        "psi-def",
        "mu{A*B} . F[psiL{A,B}] . psiR{F(A),B}",
        "codiag{F(A*B)} . (F[(id{A} * cobang{B}) . r'{A}] * F[(cobang{A} * id{B}) . l'{B}])",
        "",
        ds,
    ),
    (
        "psi-def",
        "psi{A,B}",
        "codiag{F(A*B)} . (F[(id{A} * cobang{B}) . r'{A}] * F[(cobang{A} * id{B}) . l'{B}])",
        "",
        dsco,
    ),
    (
        "psiL-def",
        "psiL{A,B}",
        "codiag{F(A*B)} . (F[(id{A} * cobang{B}) . r'{A}] * (eta{A*B} . (cobang{A} * id{B}) . l'{B}))",
        "",
        ds,
    ),
    (
        "psiR-def",
        "psiR{A,B}",
        "codiag{F(A*B)} . ((eta{A*B} . (id{A} * cobang{B}) . r'{A}) * F[(cobang{A} * id{B}) . l'{B}])",
        "",
        ds,
    ),
    ("psi0-def", "psi0", "cobang{F(I)}", "", dsco),
];

/// Every schema of the table, unexpanded, with its applicability test.
pub fn schema_table() -> Vec<(Schema, Applies)> {
    TABLE
        .iter()
        .map(|(name, lhs, rhs, decls, applies)| {
            let s = Schema::parse(name, lhs, rhs, decls)
                .unwrap_or_else(|e| panic!("schema {name}: {e}"));
            (s, *applies)
        })
        .collect()
}

/// The equations of `th`, with derived constants expanded, sorted by name.
pub fn axiom_set(th: Theory) -> Vec<Schema> {
    let mut out: Vec<Schema> = schema_table()
        .into_iter()
        .filter(|(_, applies)| applies(th))
        .map(|(s, _)| s.expand(th))
        .collect();
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::{Functor, Object};

    fn names(th: Theory) -> Vec<String> {
        axiom_set(th).into_iter().map(|s| s.name).collect()
    }

    #[test]
    fn table_parses_and_uses_only_primitives() {
        for th in Theory::ALL {
            for s in axiom_set(th) {
                for k in s.constants() {
                    assert!(th.is_primitive(k), "{} uses {k} in {th}", s.name);
                }
            }
        }
    }

    #[test]
    fn axiom_set_examples() {
        let lls = names(Theory::LLS);
        for n in [
            "psiL-a",
            "psiL-r",
            "psiL-eta",
            "psiL-mu",
            "monad-unit-l",
            "monad-assoc",
            "pentagon",
            "triangle",
        ] {
            assert!(lls.contains(&n.to_string()), "{n}");
        }
        assert!(!lls
            .iter()
            .any(|n| n.contains("psiR") || n.ends_with("-c") || n == "nat-c" || n == "hexagon"));
        let csco = names(Theory::CSco);
        for n in [
            "psi-diag",
            "psi-eps",
            "psi-delta",
            "psi0-eps",
            "psi0-delta",
            "diag-coassoc",
            "terminal",
        ] {
            assert!(csco.contains(&n.to_string()), "{n}");
        }
        assert!(names(Theory::DS).contains(&"psi-def".to_string()));
        assert!(names(Theory::DSco).contains(&"psi0-def".to_string()));
    }

    #[test]
    fn directions() {
        let all = axiom_set(Theory::CS);
        let terminal = all.iter().find(|s| s.name == "terminal").unwrap();
        assert!(terminal.allows(Direction::Forward, Theory::CS));
        assert!(!terminal.allows(Direction::Backward, Theory::CS));
        let idl = all.iter().find(|s| s.name == "cat-idl").unwrap();
        assert!(
            idl.allows(Direction::Forward, Theory::CS)
                && idl.allows(Direction::Backward, Theory::CS)
        );
        // psi0 alone cannot recover the functor in a family theory
        let s = Schema::parse("x", "eps{I} . psi0", "id{I}", "").unwrap();
        assert!(s.allows(Direction::Backward, Theory::MSco));
        assert!(!s.allows(Direction::Backward, Theory::Lc));
    }

    #[test]
    fn psi_l_eta_rewrites() {
        let t = Functor::T;
        let (p, q) = (Object::letter("p"), Object::letter("q"));
        let redex = Arrow::comp(
            Arrow::psi_l(t, p.clone(), q.clone()),
            Arrow::tensor(Arrow::eta(t, p.clone()), Arrow::id(q.clone())),
        );
        let s = axiom_set(Theory::LLS)
            .into_iter()
            .find(|s| s.name == "psiL-eta")
            .unwrap();
        assert_eq!(
            s.apply(Direction::Forward, &redex, Theory::LLS),
            Some(Arrow::eta(t, Object::tensor(p, q)))
        );
    }

    #[test]
    fn arrow_variables_are_typed() {
        let t = Functor::T;
        let p = Object::letter("p");
        let nat = axiom_set(Theory::LLS)
            .into_iter()
            .find(|s| s.name == "nat-eta")
            .unwrap();
        // eta{T(p)} . mu{p}: f = mu{p}, A = T(T(p)), B = T(p)
        let redex = Arrow::comp(
            Arrow::eta(t, Object::app(t, p.clone())),
            Arrow::mu(t, p.clone()),
        );
        let out = nat.apply(Direction::Forward, &redex, Theory::LLS).unwrap();
        assert_eq!(
            out,
            Arrow::comp(
                Arrow::apply(t, Arrow::mu(t, p.clone())),
                Arrow::eta(t, Object::app(t, Object::app(t, p)))
            )
        );
    }
}
