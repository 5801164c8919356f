//! One-step rewriting and bounded bidirectional search.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use serde::Serialize;

use super::schema::{axiom_set, instantiate_arrow, ArrowPat, Direction, Head, Schema};
use crate::error::{Error, Result};
use crate::terms::{expand_derived, infer_type, Arrow, Theory};

/// A schema together with one admissible direction.
#[derive(Clone, Debug)]
struct Rule {
    schema: usize,
    dir: Direction,
    head: Head,
}

/// The rewrite rules of a theory, in a fixed order: schemas by name,
/// forward before backward.
#[derive(Clone, Debug)]
pub struct RuleSet {
    th: Theory,
    schemas: Vec<Schema>,
    rules: Vec<Rule>,
    memo: RefCell<Memo>,
}

/// Terms seen by searches, numbered, with the neighbor lists of those
/// already expanded. Shared by successive searches with one rule set.
#[derive(Clone, Debug, Default)]
struct Memo {
    ids: HashMap<Arrow, u32>,
    terms: Vec<Arrow>,
    neighbors: HashMap<(u32, usize), Rc<Vec<(u32, RawStep)>>>,
}

/// Terms kept in the memo between searches.
const MEMO_LIMIT: usize = 200_000;

impl Memo {
    fn id(&mut self, f: &Arrow) -> u32 {
        if let Some(&i) = self.ids.get(f) {
            return i;
        }
        let i = self.terms.len() as u32;
        self.terms.push(f.clone());
        self.ids.insert(f.clone(), i);
        i
    }
}

impl RuleSet {
    pub fn new(th: Theory) -> RuleSet {
        let schemas = axiom_set(th);
        let mut rules = Vec::new();
        for (i, s) in schemas.iter().enumerate() {
            for dir in [Direction::Forward, Direction::Backward] {
                if s.allows(dir, th) {
                    rules.push(Rule {
                        schema: i,
                        dir,
                        head: s.sides(dir).0.head(),
                    });
                }
            }
        }
        RuleSet { th, schemas, rules, memo: RefCell::new(Memo::default()) }
    }

    pub fn theory(&self) -> Theory {
        self.th
    }

    pub fn schemas(&self) -> &[Schema] {
        &self.schemas
    }

    fn schema_named(&self, name: &str) -> Option<&Schema> {
        self.schemas.iter().find(|s| s.name == name)
    }

    /// Every term one rewrite away from `f`, with the step that produced it.
    /// Results identical to `f` or larger than `max_size` are dropped;
    /// duplicates keep their first step.
    pub fn neighbors_with_steps(&self, f: &Arrow, max_size: usize) -> Vec<(Arrow, Step)> {
        self.raw_neighbors(f, max_size)
            .into_iter()
            .map(|(g, raw)| {
                let step = self.step(&raw, g.to_string());
                (g, step)
            })
            .collect()
    }

    fn step(&self, raw: &RawStep, result: String) -> Step {
        let rule = &self.rules[raw.rule];
        Step {
            schema: self.schemas[rule.schema].name.clone(),
            position: raw.position.clone(),
            direction: rule.dir,
            result,
        }
    }

    fn expand(&self, id: u32, max_size: usize) -> Rc<Vec<(u32, RawStep)>> {
        if let Some(v) = self.memo.borrow().neighbors.get(&(id, max_size)) {
            return v.clone();
        }
        let f = self.memo.borrow().terms[id as usize].clone();
        let raw = self.raw_neighbors(&f, max_size);
        let mut memo = self.memo.borrow_mut();
        let v: Rc<Vec<(u32, RawStep)>> = Rc::new(raw.into_iter().map(|(g, step)| (memo.id(&g), step)).collect());
        memo.neighbors.insert((id, max_size), v.clone());
        v
    }

    fn term_string(&self, id: u32) -> String {
        self.memo.borrow().terms[id as usize].to_string()
    }

    fn raw_neighbors(&self, f: &Arrow, max_size: usize) -> Vec<(Arrow, RawStep)> {
        let mut out: Vec<(Arrow, RawStep)> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        let size = f.size();
        for pos in f.positions() {
            let sub = f.at(&pos).expect("position from positions()");
            let sub_size = sub.size();
            for (r, rule) in self.rules.iter().enumerate() {
                if !rule.head.admits(sub) {
                    continue;
                }
                let schema = &self.schemas[rule.schema];
                let Some(new_sub) = schema.apply(rule.dir, sub, self.th) else {
                    continue;
                };
                if &new_sub == sub || size - sub_size + new_sub.size() > max_size {
                    continue;
                }
                let g = f.replace_at(&pos, new_sub).expect("valid position");
                if seen.insert(g.clone()) {
                    out.push((
                        g,
                        RawStep {
                            rule: r,
                            position: pos.clone(),
                        },
                    ));
                }
            }
        }
        out
    }
}

/// A step before its result is rendered.
#[derive(Clone, Debug)]
struct RawStep {
    rule: usize,
    position: Vec<u8>,
}

/// One rewrite: the schema used, the position of the rewritten subterm (child
/// indices from the root), the direction, and the resulting term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub schema: String,
    pub position: Vec<u8>,
    pub direction: Direction,
    pub result: String,
}

/// Search limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_visited: usize,
    /// `None` means `2 * max(|f|, |g|) + 8`.
    pub max_size: Option<usize>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_visited: 50_000,
            max_size: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Outcome {
    /// `start` is the first term with derived constants expanded; the path
    /// leads from it to the expanded second term.
    Equivalent {
        start: String,
        path: Vec<Step>,
    },
    Unknown {
        visited: usize,
    },
}

impl Outcome {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Outcome::Equivalent { .. })
    }
}

/// All terms one rewrite away from `f` in `th` (derived constants expanded
/// first), with no size limit beyond the default cap for `f`.
pub fn neighbors(f: &Arrow, th: Theory) -> Result<Vec<Arrow>> {
    infer_type(f, th)?;
    let f = expand_derived(f, th)?;
    let cap = 2 * f.size() + 8;
    Ok(RuleSet::new(th)
        .neighbors_with_steps(&f, cap)
        .into_iter()
        .map(|(g, _)| g)
        .collect())
}

struct Side {
    terms: Vec<u32>,
    parent: Vec<Option<(usize, RawStep)>>,
    index: HashMap<u32, usize>,
    frontier: Vec<usize>,
}

impl Side {
    fn new(root: u32) -> Side {
        Side { terms: vec![root], parent: vec![None], index: HashMap::from([(root, 0)]), frontier: vec![0] }
    }

    /// The steps from the root to node `i`.
    fn path_to(&self, mut i: usize) -> Vec<(usize, usize, RawStep)> {
        let mut out = Vec::new();
        while let Some((p, step)) = &self.parent[i] {
            out.push((*p, i, step.clone()));
            i = *p;
        }
        out.reverse();
        out
    }
}

fn opposite(d: Direction) -> Direction {
    match d {
        Direction::Forward => Direction::Backward,
        Direction::Backward => Direction::Forward,
    }
}

impl RuleSet {
    /// Bidirectional breadth-first search for a rewrite path from `f` to `g`.
    pub fn equivalent_bounded(&self, f: &Arrow, g: &Arrow, budget: Budget) -> Result<Outcome> {
        let th = self.th;
        let (tf, tg) = (infer_type(f, th)?, infer_type(g, th)?);
        if tf != tg {
            return Err(Error::TypeMismatch(format!(
                "{} -> {} vs {} -> {}",
                tf.0, tf.1, tg.0, tg.1
            )));
        }
        let (f, g) = (expand_derived(f, th)?, expand_derived(g, th)?);
        let start = f.to_string();
        if f == g {
            return Ok(Outcome::Equivalent {
                start,
                path: Vec::new(),
            });
        }
        let max_size = budget.max_size.unwrap_or(2 * f.size().max(g.size()) + 8);
        {
            let mut memo = self.memo.borrow_mut();
            if memo.terms.len() > MEMO_LIMIT {
                *memo = Memo::default();
            }
        }
        let (fid, gid) = {
            let mut memo = self.memo.borrow_mut();
            (memo.id(&f), memo.id(&g))
        };
        let mut sides = [Side::new(fid), Side::new(gid)];
        let mut visited = 2;
        loop {
            if sides[0].frontier.is_empty() && sides[1].frontier.is_empty() {
                return Ok(Outcome::Unknown { visited });
            }
            // expand the smaller nonempty frontier by one full level
            let s = match (sides[0].frontier.len(), sides[1].frontier.len()) {
                (0, _) => 1,
                (_, 0) => 0,
                (a, b) => usize::from(b < a),
            };
            let frontier = std::mem::take(&mut sides[s].frontier);
            let mut next = Vec::new();
            for i in frontier {
                let term = sides[s].terms[i];
                for (h, step) in self.expand(term, max_size).iter() {
                    if sides[s].index.contains_key(h) {
                        continue;
                    }
                    let j = sides[s].terms.len();
                    sides[s].terms.push(*h);
                    sides[s].parent.push(Some((i, step.clone())));
                    sides[s].index.insert(*h, j);
                    visited += 1;
                    if let Some(&k) = sides[1 - s].index.get(h) {
                        let (a, b) = if s == 0 { (j, k) } else { (k, j) };
                        return Ok(Outcome::Equivalent {
                            start,
                            path: self.join(&sides, a, b),
                        });
                    }
                    if visited >= budget.max_visited {
                        return Ok(Outcome::Unknown { visited });
                    }
                    next.push(j);
                }
            }
            sides[s].frontier = next;
        }
    }

    /// Path from the first root to node `a`, then back from node `b` of the
    /// second side to its root.
    fn join(&self, sides: &[Side; 2], a: usize, b: usize) -> Vec<Step> {
        let mut path: Vec<Step> = sides[0]
            .path_to(a)
            .into_iter()
            .map(|(_, child, raw)| self.step(&raw, self.term_string(sides[0].terms[child])))
            .collect();
        for (parent, _, raw) in sides[1].path_to(b).into_iter().rev() {
            let mut step = self.step(&raw, self.term_string(sides[1].terms[parent]));
            step.direction = opposite(step.direction);
            path.push(step);
        }
        path
    }

    /// Checks that every step of `path` rewrites its predecessor into its
    /// recorded result, starting at `start`, and that the path ends at `end`.
    pub fn replay(&self, start: &Arrow, path: &[Step], end: &Arrow) -> Result<bool> {
        let th = self.th;
        let mut cur = expand_derived(start, th)?;
        for step in path {
            let next = crate::syntax::parse_arrow(&step.result, th)?;
            let Some(schema) = self.schema_named(&step.schema) else {
                return Ok(false);
            };
            let (Some(x), Some(y)) = (cur.at(&step.position), next.at(&step.position)) else {
                return Ok(false);
            };
            if cur.replace_at(&step.position, y.clone()).as_ref() != Some(&next)
                || !relates(schema, step.direction, x, y, th)
            {
                return Ok(false);
            }
            cur = next;
        }
        Ok(cur == expand_derived(end, th)?)
    }
}

/// Whether `x` and `y` are instances of the input and output sides of `s`
/// in direction `dir` under one assignment.
fn relates(s: &Schema, dir: Direction, x: &Arrow, y: &Arrow, th: Theory) -> bool {
    let (from, to): (&ArrowPat, &ArrowPat) = s.sides(dir);
    let mut env = s.fresh_env(th);
    if !s.match_pattern(from, x, th, &mut env) || !s.match_pattern(to, y, th, &mut env) {
        return false;
    }
    instantiate_arrow(from, &env).as_ref() == Some(x)
        && instantiate_arrow(to, &env).as_ref() == Some(y)
}

/// [`RuleSet::equivalent_bounded`] with a fresh rule set.
pub fn equivalent_bounded(f: &Arrow, g: &Arrow, th: Theory, budget: Budget) -> Result<Outcome> {
    RuleSet::new(th).equivalent_bounded(f, g, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decide::{equal, Verdict};
    use crate::syntax::parse_arrow;

    fn arrow(text: &str, th: Theory) -> Arrow {
        parse_arrow(text, th).unwrap()
    }

    #[test]
    fn neighbors_examples() {
        let th = Theory::LLS;
        let n = neighbors(&arrow("psiL{p,q} . (eta{p} * id{q})", th), th).unwrap();
        assert!(n.contains(&arrow("eta{p*q}", th)));
        let n = neighbors(&arrow("id{T(p)}", th), th).unwrap();
        assert!(n.contains(&arrow("mu{p} . T[eta{p}]", th)));
        assert!(n.contains(&arrow("mu{p} . eta{T(p)}", th)));
        let n = neighbors(&arrow("T[mu{p}] . eta{T(T(p))}", th), th).unwrap();
        assert!(n.contains(&arrow("eta{T(p)} . mu{p}", th)));
    }

    #[test]
    fn neighbors_preserve_types() {
        let th = Theory::LS;
        let f = arrow("mu{p*q} . T[psiL{p,q}] . psiR{T(p),q}", th);
        let ty = infer_type(&f, th).unwrap();
        for g in neighbors(&f, th).unwrap() {
            assert_eq!(infer_type(&g, th).unwrap(), ty, "{g}");
        }
    }

    #[test]
    fn search_examples() {
        let th = Theory::LS;
        let rules = RuleSet::new(th);
        let f = arrow("mu{p*q} . T[psiL{p,q}] . psiR{T(p),q}", th);
        let g = arrow("mu{p*q} . T[psiR{p,q}] . psiL{p,T(q)}", th);
        let out = rules.equivalent_bounded(&f, &g, Budget::default()).unwrap();
        let Outcome::Equivalent { path, .. } = &out else {
            panic!("{out:?}")
        };
        assert!(rules.replay(&f, path, &g).unwrap());
        assert_eq!(equal(&f, &g, th).unwrap(), Verdict::Equal);

        let same = rules.equivalent_bounded(&f, &f, Budget::default()).unwrap();
        assert_eq!(
            same,
            Outcome::Equivalent {
                start: f.to_string(),
                path: vec![]
            }
        );

        let th = Theory::LcS;
        let c = arrow("c{T(p),T(p)}", th);
        let id = arrow("id{T(p)*T(p)}", th);
        let small = Budget {
            max_visited: 2_000,
            max_size: None,
        };
        assert!(!equivalent_bounded(&c, &id, th, small)
            .unwrap()
            .is_equivalent());
        assert!(matches!(
            equal(&c, &id, th).unwrap(),
            Verdict::NotEqual { .. }
        ));
    }

    #[test]
    fn reversed_steps_replay() {
        // reaching id from the far side uses a backward step of a one-way schema
        let th = Theory::CS;
        let rules = RuleSet::new(th);
        let f = arrow("l{I} . (bang{p} * bang{q})", th);
        let g = arrow("bang{p*q}", th);
        let Outcome::Equivalent { path, .. } =
            rules.equivalent_bounded(&f, &g, Budget::default()).unwrap()
        else {
            panic!()
        };
        assert!(rules.replay(&f, &path, &g).unwrap());
        let mut broken = path.clone();
        broken[0].schema = "cat-idl".into();
        assert!(!rules.replay(&f, &broken, &g).unwrap());
    }

    #[test]
    fn mismatched_types_are_errors() {
        let th = Theory::LS;
        let r = equivalent_bounded(
            &arrow("psiL{p,q}", th),
            &arrow("psiR{p,q}", th),
            th,
            Budget::default(),
        );
        assert!(matches!(r, Err(Error::TypeMismatch(_))));
    }
}
