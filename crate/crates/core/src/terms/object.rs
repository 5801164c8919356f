use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// An endofunctor symbol: the distinguished `T` of monad theories, the
/// distinguished `L` of comonad theories, or one of the indexed family
/// `E1, E2, ...` of the locally linear theories.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Functor {
    T,
    L,
    E(u32),
}

impl Functor {
    pub fn name(&self) -> &'static str {
        match self {
            Functor::T => "T",
            Functor::L => "L",
            Functor::E(_) => "E",
        }
    }

    pub fn index(&self) -> Option<u32> {
        match self {
            Functor::E(i) => Some(*i),
            _ => None,
        }
    }
}

impl fmt::Display for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Functor::E(i) => write!(f, "E{i}"),
            other => f.write_str(other.name()),
        }
    }
}

/// Object formulas. Tensor is kept strictly binary and is never flattened:
/// `(A*B)*C` and `A*(B*C)` are different objects.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Object {
    Unit,
    Letter(Arc<str>),
    Tensor(Box<Object>, Box<Object>),
    App(Functor, Box<Object>),
}

/// One step of a path into an object (or into the developed form of an arrow).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    Left,
    Right,
    Inside,
}

pub type Path = Vec<Step>;

impl Object {
    pub fn letter(name: &str) -> Object {
        Object::Letter(Arc::from(name))
    }

    pub fn tensor(a: Object, b: Object) -> Object {
        Object::Tensor(Box::new(a), Box::new(b))
    }

    pub fn app(f: Functor, a: Object) -> Object {
        Object::App(f, Box::new(a))
    }

    /// Number of syntax nodes.
    pub fn size(&self) -> usize {
        match self {
            Object::Unit | Object::Letter(_) => 1,
            Object::Tensor(a, b) => 1 + a.size() + b.size(),
            Object::App(_, a) => 1 + a.size(),
        }
    }

    pub fn count_apps(&self) -> usize {
        match self {
            Object::Unit | Object::Letter(_) => 0,
            Object::Tensor(a, b) => a.count_apps() + b.count_apps(),
            Object::App(_, a) => 1 + a.count_apps(),
        }
    }

    pub fn count_letters(&self) -> usize {
        match self {
            Object::Unit => 0,
            Object::Letter(_) => 1,
            Object::Tensor(a, b) => a.count_letters() + b.count_letters(),
            Object::App(_, a) => a.count_letters(),
        }
    }

    pub fn count_units(&self) -> usize {
        match self {
            Object::Unit => 1,
            Object::Letter(_) => 0,
            Object::Tensor(a, b) => a.count_units() + b.count_units(),
            Object::App(_, a) => a.count_units(),
        }
    }

    pub fn functors(&self) -> BTreeSet<Functor> {
        let mut out = BTreeSet::new();
        self.visit(&mut |o| {
            if let Object::App(f, _) = o {
                out.insert(*f);
            }
        });
        out
    }

    pub fn letters(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        self.visit(&mut |o| {
            if let Object::Letter(x) = o {
                out.insert(x.clone());
            }
        });
        out
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Object)) {
        f(self);
        match self {
            Object::Unit | Object::Letter(_) => {}
            Object::Tensor(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Object::App(_, a) => a.visit(f),
        }
    }

    pub fn at(&self, path: &[Step]) -> Option<&Object> {
        let Some((first, rest)) = path.split_first() else {
            return Some(self);
        };
        match (first, self) {
            (Step::Left, Object::Tensor(a, _)) => a.at(rest),
            (Step::Right, Object::Tensor(_, b)) => b.at(rest),
            (Step::Inside, Object::App(_, a)) => a.at(rest),
            _ => None,
        }
    }

    /// Replaces the subobject at `path`; `None` if the path does not exist.
    pub fn replace_at(&self, path: &[Step], new: Object) -> Option<Object> {
        let Some((first, rest)) = path.split_first() else {
            return Some(new);
        };
        Some(match (first, self) {
            (Step::Left, Object::Tensor(a, b)) => {
                Object::Tensor(Box::new(a.replace_at(rest, new)?), b.clone())
            }
            (Step::Right, Object::Tensor(a, b)) => {
                Object::Tensor(a.clone(), Box::new(b.replace_at(rest, new)?))
            }
            (Step::Inside, Object::App(g, a)) => {
                Object::App(*g, Box::new(a.replace_at(rest, new)?))
            }
            _ => return None,
        })
    }

    /// All subformulas, each listed once, in pre-order of first occurrence.
    pub fn subformulas(&self) -> Vec<Object> {
        let mut out: Vec<Object> = Vec::new();
        self.visit(&mut |o| {
            if !out.contains(o) {
                out.push(o.clone());
            }
        });
        out
    }
}

impl fmt::Display for Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Object::Unit => f.write_str("I"),
            Object::Letter(x) => f.write_str(x),
            Object::Tensor(a, b) => {
                // tensor is left-associative in the concrete syntax
                write!(f, "{a} * ")?;
                if matches!(**b, Object::Tensor(..)) {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
            Object::App(g, a) => write!(f, "{g}({a})"),
        }
    }
}
