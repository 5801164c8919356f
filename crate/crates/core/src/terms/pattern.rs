use super::object::{Functor, Object};

/// Object patterns over numbered metavariables. `App` stands for the single
/// functor variable of the surrounding signature or schema.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ObjPat {
    Var(usize),
    Unit,
    Tensor(Box<ObjPat>, Box<ObjPat>),
    App(Box<ObjPat>),
}

impl ObjPat {
    pub fn tensor(a: ObjPat, b: ObjPat) -> ObjPat {
        ObjPat::Tensor(Box::new(a), Box::new(b))
    }

    pub fn app(a: ObjPat) -> ObjPat {
        ObjPat::App(Box::new(a))
    }

    pub fn vars(&self, out: &mut Vec<usize>) {
        match self {
            ObjPat::Var(v) => {
                if !out.contains(v) {
                    out.push(*v)
                }
            }
            ObjPat::Unit => {}
            ObjPat::Tensor(a, b) => {
                a.vars(out);
                b.vars(out);
            }
            ObjPat::App(a) => a.vars(out),
        }
    }

    pub fn uses_functor(&self) -> bool {
        match self {
            ObjPat::Var(_) | ObjPat::Unit => false,
            ObjPat::Tensor(a, b) => a.uses_functor() || b.uses_functor(),
            ObjPat::App(_) => true,
        }
    }

    /// Paths (in the pattern tree) of every occurrence of variable `v`.
    pub fn occurrences(&self, v: usize) -> Vec<super::Path> {
        let mut out = Vec::new();
        self.occurrences_into(v, &mut Vec::new(), &mut out);
        out
    }

    fn occurrences_into(&self, v: usize, here: &mut super::Path, out: &mut Vec<super::Path>) {
        use super::Step;
        match self {
            ObjPat::Var(w) if *w == v => out.push(here.clone()),
            ObjPat::Var(_) | ObjPat::Unit => {}
            ObjPat::Tensor(a, b) => {
                here.push(Step::Left);
                a.occurrences_into(v, here, out);
                here.pop();
                here.push(Step::Right);
                b.occurrences_into(v, here, out);
                here.pop();
            }
            ObjPat::App(a) => {
                here.push(Step::Inside);
                a.occurrences_into(v, here, out);
                here.pop();
            }
        }
    }

    /// Walks `path` through the pattern. Returns the variable reached together
    /// with the remaining path inside it, or `None` if the path stops on (or
    /// leaves through) a structural node of the pattern.
    pub fn locate<'p>(&self, path: &'p [super::Step]) -> Option<(usize, &'p [super::Step])> {
        use super::Step;
        match self {
            ObjPat::Var(v) => Some((*v, path)),
            ObjPat::Unit => None,
            ObjPat::Tensor(a, b) => match path.split_first()? {
                (Step::Left, rest) => a.locate(rest),
                (Step::Right, rest) => b.locate(rest),
                _ => None,
            },
            ObjPat::App(a) => match path.split_first()? {
                (Step::Inside, rest) => a.locate(rest),
                _ => None,
            },
        }
    }
}

/// Metavariable assignment built up during matching.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Bindings {
    pub objects: Vec<Option<Object>>,
    pub functor: Option<Functor>,
}

impl Bindings {
    pub fn with_capacity(n: usize) -> Self {
        Bindings {
            objects: vec![None; n],
            functor: None,
        }
    }

    pub fn bind_object(&mut self, v: usize, o: &Object) -> bool {
        if v >= self.objects.len() {
            self.objects.resize(v + 1, None);
        }
        match &self.objects[v] {
            Some(existing) => existing == o,
            None => {
                self.objects[v] = Some(o.clone());
                true
            }
        }
    }

    pub fn bind_functor(&mut self, f: Functor) -> bool {
        match self.functor {
            Some(g) => g == f,
            None => {
                self.functor = Some(f);
                true
            }
        }
    }

    pub fn object(&self, v: usize) -> Option<&Object> {
        self.objects.get(v).and_then(|o| o.as_ref())
    }
}

pub fn match_object(pat: &ObjPat, obj: &Object, env: &mut Bindings) -> bool {
    match (pat, obj) {
        (ObjPat::Var(v), o) => env.bind_object(*v, o),
        (ObjPat::Unit, Object::Unit) => true,
        (ObjPat::Tensor(p, q), Object::Tensor(a, b)) => {
            match_object(p, a, env) && match_object(q, b, env)
        }
        (ObjPat::App(p), Object::App(f, a)) => env.bind_functor(*f) && match_object(p, a, env),
        _ => false,
    }
}

pub fn instantiate_object(pat: &ObjPat, env: &Bindings) -> Option<Object> {
    Some(match pat {
        ObjPat::Var(v) => env.object(*v)?.clone(),
        ObjPat::Unit => Object::Unit,
        ObjPat::Tensor(p, q) => {
            Object::tensor(instantiate_object(p, env)?, instantiate_object(q, env)?)
        }
        ObjPat::App(p) => Object::app(env.functor?, instantiate_object(p, env)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn repeated_variable_must_agree() {
        let pat = ObjPat::tensor(ObjPat::Var(0), ObjPat::Var(0));
        let p = Object::letter("p");
        let q = Object::letter("q");
        let mut env = Bindings::default();
        assert!(match_object(
            &pat,
            &Object::tensor(p.clone(), p.clone()),
            &mut env
        ));
        let mut env = Bindings::default();
        assert!(!match_object(&pat, &Object::tensor(p, q), &mut env));
    }

    #[test]
    fn functor_variable_binds_once() {
        let pat = ObjPat::tensor(ObjPat::app(ObjPat::Var(0)), ObjPat::app(ObjPat::Var(1)));
        let p = Object::letter("p");
        let ok = Object::tensor(
            Object::app(Functor::E(1), p.clone()),
            Object::app(Functor::E(1), p.clone()),
        );
        let bad = Object::tensor(
            Object::app(Functor::E(1), p.clone()),
            Object::app(Functor::E(2), p),
        );
        assert!(match_object(&pat, &ok, &mut Bindings::default()));
        assert!(!match_object(&pat, &bad, &mut Bindings::default()));
    }

    #[test]
    fn locate_through_structure() {
        use crate::terms::Step;
        // F(A) * B
        let pat = ObjPat::tensor(ObjPat::app(ObjPat::Var(0)), ObjPat::Var(1));
        assert_eq!(pat.locate(&[Step::Left]), None);
        assert_eq!(
            pat.locate(&[Step::Left, Step::Inside, Step::Right]),
            Some((0, &[Step::Right][..]))
        );
        assert_eq!(pat.locate(&[Step::Right]), Some((1, &[][..])));
    }
}
