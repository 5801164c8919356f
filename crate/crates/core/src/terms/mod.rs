//! Object formulas, arrow terms and the theory table.
//!
//! Objects are built from the unit `I`, generator letters, a binary tensor
//! and endofunctor application. Arrow terms are built from the structural
//! constants, the (co)monad constants, composition, tensor and functor
//! application. Typing is syntactic: `g . f` is well formed only when the
//! target of `f` is literally the source of `g`.

mod arrow;
mod object;
mod pattern;
mod theory;

pub use arrow::{Arrow, ConstKind, Constant, Signature};
pub use object::{Functor, Object, Path, Step};
pub use pattern::{instantiate_object, match_object, Bindings, ObjPat};
pub use theory::{GraphCategory, MeasureMode, Theory, UnknownTheory};

use crate::error::{Error, Result};

/// An arrow term together with its inferred source and target.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TypedArrow {
    pub term: Arrow,
    pub src: Object,
    pub tgt: Object,
}

impl TypedArrow {
    pub fn new(term: Arrow, th: Theory) -> Result<TypedArrow> {
        let (src, tgt) = infer_type(&term, th)?;
        Ok(TypedArrow { term, src, tgt })
    }
}

pub fn validate_object(obj: &Object, th: Theory) -> Result<()> {
    match obj {
        Object::Unit | Object::Letter(_) => Ok(()),
        Object::Tensor(a, b) => {
            validate_object(a, th)?;
            validate_object(b, th)
        }
        Object::App(f, a) => {
            if !th.admits_functor(*f) {
                return Err(Error::ForeignFunctor(*f, th));
            }
            validate_object(a, th)
        }
    }
}

/// The ordinal assigned to an object: occurrences of functors, plus
/// occurrences of letters when the theory counts them.
pub fn measure(obj: &Object, th: Theory) -> usize {
    match th.measure_mode() {
        MeasureMode::FunctorsOnly => obj.count_apps(),
        MeasureMode::FunctorsAndLetters => obj.count_apps() + obj.count_letters(),
    }
}

/// A counted occurrence inside an object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Occurrence {
    Functor { functor: Functor, path: Path },
    Letter { name: String, path: Path },
}

/// Counted occurrences in left-to-right textual order; index 0 is leftmost.
pub fn counted_positions(obj: &Object, th: Theory) -> Vec<Occurrence> {
    fn walk(o: &Object, letters: bool, here: &mut Path, out: &mut Vec<Occurrence>) {
        match o {
            Object::Unit => {}
            Object::Letter(x) => {
                if letters {
                    out.push(Occurrence::Letter {
                        name: x.to_string(),
                        path: here.clone(),
                    });
                }
            }
            Object::Tensor(a, b) => {
                here.push(Step::Left);
                walk(a, letters, here, out);
                here.pop();
                here.push(Step::Right);
                walk(b, letters, here, out);
                here.pop();
            }
            Object::App(f, a) => {
                out.push(Occurrence::Functor {
                    functor: *f,
                    path: here.clone(),
                });
                here.push(Step::Inside);
                walk(a, letters, here, out);
                here.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(
        obj,
        th.measure_mode() == MeasureMode::FunctorsAndLetters,
        &mut Vec::new(),
        &mut out,
    );
    out
}

/// Checks that a constant may appear in `th` and returns its type.
pub fn type_constant(c: &Constant, th: Theory) -> Result<(Object, Object)> {
    if !th.is_legal(c.kind) {
        return Err(Error::IllegalConstant(c.kind, th));
    }
    if let Some(f) = c.functor {
        if !th.admits_functor(f) {
            return Err(Error::ForeignFunctor(f, th));
        }
    }
    for a in &c.args {
        validate_object(a, th)?;
    }
    c.typed().ok_or_else(|| Error::MalformedConstant {
        kind: c.kind,
        detail: format!(
            "expected {} object argument(s){}, got {}",
            c.kind.arity(),
            if c.kind.has_functor() {
                " and a functor"
            } else {
                ""
            },
            c.args.len()
        ),
    })
}

pub fn infer_type(f: &Arrow, th: Theory) -> Result<(Object, Object)> {
    match f {
        Arrow::Const(c) => type_constant(c, th),
        Arrow::Comp(g, h) => {
            let (hs, ht) = infer_type(h, th)?;
            let (gs, gt) = infer_type(g, th)?;
            if ht != gs {
                return Err(Error::CompositionMismatch {
                    expected: gs,
                    found: ht,
                });
            }
            Ok((hs, gt))
        }
        Arrow::Tensor(a, b) => {
            let (as_, at) = infer_type(a, th)?;
            let (bs, bt) = infer_type(b, th)?;
            Ok((Object::tensor(as_, bs), Object::tensor(at, bt)))
        }
        Arrow::Apply(g, a) => {
            if !th.admits_functor(*g) {
                return Err(Error::ForeignFunctor(*g, th));
            }
            let (s, t) = infer_type(a, th)?;
            Ok((Object::app(*g, s), Object::app(*g, t)))
        }
    }
}

/// Canonical injections of the cocartesian theories, built from `cobang`
/// and the inverse unit isomorphisms.
pub fn injection_left(a: &Object, b: &Object) -> Arrow {
    Arrow::comp(
        Arrow::tensor(Arrow::id(a.clone()), Arrow::cobang(b.clone())),
        Arrow::r_inv(a.clone()),
    )
}

pub fn injection_right(a: &Object, b: &Object) -> Arrow {
    Arrow::comp(
        Arrow::tensor(Arrow::cobang(a.clone()), Arrow::id(b.clone())),
        Arrow::l_inv(b.clone()),
    )
}

/// `codiag{F(A*B)} . (F[inj1] * F[inj2])`
pub fn psi_via_codiagonal(f: Functor, a: &Object, b: &Object) -> Arrow {
    let ab = Object::tensor(a.clone(), b.clone());
    Arrow::comp(
        Arrow::codiag(Object::app(f, ab)),
        Arrow::tensor(
            Arrow::apply(f, injection_left(a, b)),
            Arrow::apply(f, injection_right(a, b)),
        ),
    )
}

/// `mu{A*B} . F[psiL{A,B}] . psiR{F(A),B}`
pub fn psi_via_strengths(f: Functor, a: &Object, b: &Object) -> Arrow {
    Arrow::comp(
        Arrow::mu(f, Object::tensor(a.clone(), b.clone())),
        Arrow::comp(
            Arrow::apply(f, Arrow::psi_l(f, a.clone(), b.clone())),
            Arrow::psi_r(f, Object::app(f, a.clone()), b.clone()),
        ),
    )
}

/// The other side of the strengths/multiplication equation:
/// `mu{A*B} . F[psiR{A,B}] . psiL{A,F(B)}`.
pub fn psi_via_strengths_other(f: Functor, a: &Object, b: &Object) -> Arrow {
    Arrow::comp(
        Arrow::mu(f, Object::tensor(a.clone(), b.clone())),
        Arrow::comp(
            Arrow::apply(f, Arrow::psi_r(f, a.clone(), b.clone())),
            Arrow::psi_l(f, a.clone(), Object::app(f, b.clone())),
        ),
    )
}

fn expand_constant(c: &Constant, th: Theory) -> Result<Arrow> {
    if th.is_primitive(c.kind) {
        return Ok(Arrow::Const(c.clone()));
    }
    let malformed = || Error::MalformedConstant {
        kind: c.kind,
        detail: "wrong arguments".into(),
    };
    match (c.kind, th) {
        (ConstKind::Psi, Theory::LS | Theory::LcS | Theory::CS | Theory::Lcmu) => {
            let [a, b] = c.args.as_slice() else {
                return Err(malformed());
            };
            Ok(psi_via_strengths(c.functor.ok_or_else(malformed)?, a, b))
        }
        (ConstKind::Psi, Theory::DS) => {
            let [a, b] = c.args.as_slice() else {
                return Err(malformed());
            };
            Ok(psi_via_codiagonal(c.functor.ok_or_else(malformed)?, a, b))
        }
        (ConstKind::Psi0, t) if t.is_monad() => {
            Ok(Arrow::eta(c.functor.ok_or_else(malformed)?, Object::Unit))
        }
        (k, t) => Err(Error::NotExpandable(k, t)),
    }
}

/// Rewrites derived constants into the primitives of `th`.
pub fn expand_derived(f: &Arrow, th: Theory) -> Result<Arrow> {
    Ok(match f {
        Arrow::Const(c) => expand_constant(c, th)?,
        Arrow::Comp(g, h) => Arrow::comp(expand_derived(g, th)?, expand_derived(h, th)?),
        Arrow::Tensor(a, b) => Arrow::tensor(expand_derived(a, th)?, expand_derived(b, th)?),
        Arrow::Apply(g, a) => Arrow::apply(*g, expand_derived(a, th)?),
    })
}

/// Every legal constant of `th` whose source is `src`. Parameters that the
/// source does not determine are drawn from `functors` and `free_objects`.
pub fn constants_from(
    src: &Object,
    th: Theory,
    functors: &[Functor],
    free_objects: &[Object],
) -> Vec<Constant> {
    let mut out = Vec::new();
    for kind in th.primitives().into_iter().chain(th.derived()) {
        let sig = kind.signature();
        let mut env = Bindings::with_capacity(sig.arity);
        if !match_object(&sig.src, src, &mut env) {
            continue;
        }
        let fs: Vec<Option<Functor>> = match (kind.has_functor(), env.functor) {
            (false, _) => vec![None],
            (true, Some(f)) => vec![Some(f)],
            (true, None) => functors
                .iter()
                .copied()
                .filter(|f| th.admits_functor(*f))
                .map(Some)
                .collect(),
        };
        let mut partial: Vec<Vec<Object>> = vec![Vec::new()];
        for v in 0..sig.arity {
            let choices: Vec<Object> = match env.object(v) {
                Some(o) => vec![o.clone()],
                None => free_objects.to_vec(),
            };
            partial = partial
                .into_iter()
                .flat_map(|prefix| {
                    choices.iter().map(move |o| {
                        let mut next = prefix.clone();
                        next.push(o.clone());
                        next
                    })
                })
                .collect();
        }
        for f in &fs {
            for args in &partial {
                out.push(Constant::new(kind, *f, args.clone()));
            }
        }
    }
    out
}

pub fn is_primitive_only(f: &Arrow, th: Theory) -> bool {
    f.constants().iter().all(|c| th.is_primitive(c.kind))
}
