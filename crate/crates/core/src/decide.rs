//! Equality of arrow terms by comparison of graphs, and the theoremhood
//! tests for the categories over a family of endofunctors.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result, Side};
use crate::semantics::graph;
use crate::terms::{infer_type, Arrow, Functor, Object, Path, Step, Theory};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Equal,
    /// `pair` belongs to the graph of the term named by `only_in`.
    NotEqual {
        pair: (usize, usize),
        only_in: Which,
    },
    TypeMismatch {
        detail: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Which {
    First,
    Second,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Equal => write!(f, "equal"),
            Verdict::NotEqual {
                pair: (i, j),
                only_in,
            } => {
                let side = match only_in {
                    Which::First => "first",
                    Which::Second => "second",
                };
                write!(f, "not equal: pair ({i},{j}) only in the {side} graph")
            }
            Verdict::TypeMismatch { detail } => write!(f, "type mismatch: {detail}"),
        }
    }
}

/// Decides `f = g` in the free category `th`.
pub fn equal(f: &Arrow, g: &Arrow, th: Theory) -> Result<Verdict> {
    let (fs, ft) = infer_type(f, th)?;
    let (gs, gt) = infer_type(g, th)?;
    if fs != gs || ft != gt {
        return Ok(Verdict::TypeMismatch {
            detail: format!("{fs} -> {ft} versus {gs} -> {gt}"),
        });
    }
    let (gf, gg) = (graph(f, th)?, graph(g, th)?);
    let only_first = gf.pairs().iter().find(|&&(i, j)| !gg.contains(i, j));
    let only_second = || gg.pairs().iter().find(|&&(i, j)| !gf.contains(i, j));
    Ok(match (only_first, only_second()) {
        (Some(&pair), _) => Verdict::NotEqual {
            pair,
            only_in: Which::First,
        },
        (None, Some(&pair)) => Verdict::NotEqual {
            pair,
            only_in: Which::Second,
        },
        (None, None) => Verdict::Equal,
    })
}

/// A generator of an object: a letter or a functor symbol.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(untagged)]
pub enum Generator {
    Letter(String),
    Functor(#[serde(serialize_with = "ser_functor")] Functor),
}

fn ser_functor<S: serde::Serializer>(f: &Functor, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(f)
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Letter(x) => f.write_str(x),
            Generator::Functor(g) => write!(f, "{g}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScopeEntry {
    #[serde(serialize_with = "ser_functor")]
    pub functor: Functor,
    #[serde(skip)]
    pub path: Path,
    pub scope: BTreeSet<Generator>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ScopeReport {
    pub generators: BTreeSet<Generator>,
    /// One entry per functor occurrence, in pre-order.
    pub occurrences: Vec<ScopeEntry>,
}

impl ScopeReport {
    /// Union of the scopes of every occurrence of `f`, or `None` when `f`
    /// does not occur.
    pub fn scope_union(&self, f: Functor) -> Option<BTreeSet<Generator>> {
        let mut hits = self
            .occurrences
            .iter()
            .filter(|e| e.functor == f)
            .peekable();
        hits.peek()?;
        Some(hits.flat_map(|e| e.scope.iter().cloned()).collect())
    }
}

fn generators(obj: &Object) -> BTreeSet<Generator> {
    let mut out = BTreeSet::new();
    obj.visit(&mut |o| match o {
        Object::Letter(x) => {
            out.insert(Generator::Letter(x.to_string()));
        }
        Object::App(f, _) => {
            out.insert(Generator::Functor(*f));
        }
        _ => {}
    });
    out
}

fn occurrence_counts(obj: &Object) -> BTreeMap<Generator, usize> {
    let mut out = BTreeMap::new();
    obj.visit(&mut |o| {
        let g = match o {
            Object::Letter(x) => Generator::Letter(x.to_string()),
            Object::App(f, _) => Generator::Functor(*f),
            _ => return,
        };
        *out.entry(g).or_insert(0) += 1;
    });
    out
}

/// Every letter and every functor symbol occurs at most once.
pub fn is_diversified(obj: &Object) -> bool {
    occurrence_counts(obj).values().all(|&n| n == 1)
}

/// Every letter occurs at most once; functor symbols may repeat.
pub fn is_letter_diversified(obj: &Object) -> bool {
    occurrence_counts(obj)
        .iter()
        .all(|(g, &n)| matches!(g, Generator::Functor(_)) || n == 1)
}

pub fn scopes(obj: &Object) -> ScopeReport {
    fn walk(o: &Object, here: &mut Path, out: &mut Vec<ScopeEntry>) {
        match o {
            Object::Unit | Object::Letter(_) => {}
            Object::Tensor(a, b) => {
                here.push(Step::Left);
                walk(a, here, out);
                here.pop();
                here.push(Step::Right);
                walk(b, here, out);
                here.pop();
            }
            Object::App(f, a) => {
                out.push(ScopeEntry {
                    functor: *f,
                    path: here.clone(),
                    scope: generators(a),
                });
                here.push(Step::Inside);
                walk(a, here, out);
                here.pop();
            }
        }
    }
    let mut occurrences = Vec::new();
    walk(obj, &mut Vec::new(), &mut occurrences);
    ScopeReport {
        generators: generators(obj),
        occurrences,
    }
}

/// Theoremhood in the category with locally linear endofunctors: an arrow
/// `A -> B` exists iff the generators coincide and the scope of every
/// functor of `A` is contained in its scope in `B`.
pub fn arrow_exists_lc(a: &Object, b: &Object) -> Result<bool> {
    if !is_diversified(a) {
        return Err(Error::NotDiversified(Side::Source));
    }
    if !is_diversified(b) {
        return Err(Error::NotDiversified(Side::Target));
    }
    let (sa, sb) = (scopes(a), scopes(b));
    if sa.generators != sb.generators {
        return Ok(false);
    }
    Ok(sa.occurrences.iter().all(|e| {
        sb.scope_union(e.functor)
            .is_some_and(|s| e.scope.is_subset(&s))
    }))
}

/// Theoremhood once every functor of the family has a multiplication: the
/// union of the scopes of the occurrences of `E` in `A` must lie inside the
/// scope of `E` in `B` together with `E` itself.
pub fn arrow_exists_lcmu(a: &Object, b: &Object) -> Result<bool> {
    if !is_letter_diversified(a) {
        return Err(Error::NotDiversified(Side::Source));
    }
    if !is_diversified(b) {
        return Err(Error::NotDiversified(Side::Target));
    }
    let (sa, sb) = (scopes(a), scopes(b));
    if sa.generators != sb.generators {
        return Ok(false);
    }
    Ok(sb.occurrences.iter().all(|e| {
        let mut allowed = e.scope.clone();
        allowed.insert(Generator::Functor(e.functor));
        sa.scope_union(e.functor)
            .is_none_or(|u| u.is_subset(&allowed))
    }))
}
