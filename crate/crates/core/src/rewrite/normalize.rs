//! Stage factorizations. A term is developed into a sequence of factors
//! (one non-identity constant in an identity context), and the sequence is
//! sorted by stage using interchange, naturality, and a few oriented
//! equations of the theory.

use serde::Serialize;

use super::schema::{axiom_set, Direction, Schema};
use crate::error::{Error, Result};
use crate::terms::{
    expand_derived, infer_type, Arrow, ConstKind, Constant, Object, Path, Step, Theory,
};

/// Upper bound on resolved inversions before giving up.
const STEP_CAP: usize = 20_000;

/// Which constants may head the factors of a stage. `None` admits every
/// kind not claimed by another stage of the plan.
#[derive(Clone, Copy, Debug)]
struct StagePlan {
    name: &'static str,
    kinds: Option<&'static [ConstKind]>,
    /// Heads must be indexed by an atomic object (a letter or a functor
    /// application).
    atomic_index: bool,
}

const fn stage(name: &'static str, kinds: &'static [ConstKind]) -> StagePlan {
    StagePlan {
        name,
        kinds: Some(kinds),
        atomic_index: false,
    }
}

const REST: fn(&'static str) -> StagePlan = |name| StagePlan {
    name,
    kinds: None,
    atomic_index: false,
};

fn plan(th: Theory) -> Vec<StagePlan> {
    use ConstKind::*;
    let diag = StagePlan {
        name: "diagonal",
        kinds: Some(&[Diag, Bang]),
        atomic_index: true,
    };
    match th {
        Theory::CS => vec![diag, REST("structural"), stage("unit", &[Eta])],
        Theory::CSco => vec![
            diag,
            stage("counit-comultiplication", &[Eps, Delta]),
            REST("structural"),
        ],
        Theory::MSco => vec![
            stage("counit", &[Eps]),
            stage("comultiplication", &[Delta]),
            REST("structural"),
        ],
        Theory::LLSco | Theory::McSco | Theory::DSco => {
            vec![
                stage("counit-comultiplication", &[Eps, Delta]),
                REST("structural"),
            ]
        }
        Theory::Lc => vec![REST("structural")],
        Theory::LLS | Theory::LRS | Theory::LS | Theory::LcS | Theory::DS | Theory::Lcmu => {
            vec![REST("structural"), stage("unit-multiplication", &[Eta, Mu])]
        }
    }
}

fn rank(plan: &[StagePlan], k: ConstKind) -> usize {
    plan.iter()
        .position(|s| s.kinds.is_some_and(|ks| ks.contains(&k)))
        .or_else(|| plan.iter().position(|s| s.kinds.is_none()))
        .expect("every plan has a catch-all stage")
}

fn is_atomic(o: &Object) -> bool {
    matches!(o, Object::Letter(_) | Object::App(..))
}

fn ser_display<T: std::fmt::Display, S: serde::Serializer>(
    x: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

fn ser_kinds<S: serde::Serializer>(ks: &[ConstKind], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(ks.iter().map(|k| k.name()))
}

/// One stage of a factorization, with its descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stage {
    pub name: String,
    /// Constant kinds that may head a factor of this stage (identities are
    /// always allowed).
    #[serde(serialize_with = "ser_kinds")]
    pub allowed: Vec<ConstKind>,
    pub atomic_index: bool,
    #[serde(serialize_with = "ser_display")]
    pub src: Object,
    #[serde(serialize_with = "ser_display")]
    pub tgt: Object,
    #[serde(serialize_with = "ser_display")]
    pub term: Arrow,
}

impl Stage {
    /// Whether the term obeys the descriptor, checked syntactically.
    pub fn obeys_descriptor(&self) -> bool {
        self.term.constants().iter().all(|c| {
            c.kind == ConstKind::Id
                || (self.allowed.contains(&c.kind) && (!self.atomic_index || is_atomic(&c.args[0])))
        })
    }
}

/// Stages in application order: the first stage is applied first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    #[serde(serialize_with = "ser_display")]
    pub theory: Theory,
    pub stages: Vec<Stage>,
}

impl Factorization {
    pub fn composite(&self) -> Arrow {
        let mut it = self.stages.iter();
        let first = it.next().expect("at least one stage").term.clone();
        it.fold(first, |acc, s| Arrow::comp(s.term.clone(), acc))
    }

    /// Checks that consecutive stages compose, that each stage is typed as
    /// recorded, and that each obeys its descriptor.
    pub fn check(&self) -> std::result::Result<(), String> {
        for (i, s) in self.stages.iter().enumerate() {
            let (a, b) =
                infer_type(&s.term, self.theory).map_err(|e| format!("stage {}: {e}", s.name))?;
            if (a, b) != (s.src.clone(), s.tgt.clone()) {
                return Err(format!("stage {} is not typed as recorded", s.name));
            }
            if i > 0 && self.stages[i - 1].tgt != s.src {
                return Err(format!(
                    "stage {} does not compose with its predecessor",
                    s.name
                ));
            }
            if !s.obeys_descriptor() {
                return Err(format!(
                    "stage {} contains a constant outside its descriptor: {}",
                    s.name, s.term
                ));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Factor {
    path: Path,
    head: Constant,
}

fn develop_into(f: &Arrow, base: &mut Path, out: &mut Vec<Factor>) {
    match f {
        Arrow::Const(c) if c.kind == ConstKind::Id => {}
        Arrow::Const(c) => out.push(Factor {
            path: base.clone(),
            head: c.clone(),
        }),
        Arrow::Comp(g, h) => {
            develop_into(h, base, out);
            develop_into(g, base, out);
        }
        Arrow::Tensor(a, b) => {
            base.push(Step::Left);
            develop_into(a, base, out);
            base.pop();
            base.push(Step::Right);
            develop_into(b, base, out);
            base.pop();
        }
        Arrow::Apply(_, a) => {
            base.push(Step::Inside);
            develop_into(a, base, out);
            base.pop();
        }
    }
}

fn develop_at(f: &Arrow, base: &[Step]) -> Vec<Factor> {
    let mut out = Vec::new();
    develop_into(f, &mut base.to_vec(), &mut out);
    out
}

/// The factor as a term on `obj`, its source.
fn factor_arrow(path: &[Step], obj: &Object, head: Arrow) -> Arrow {
    match (path.split_first(), obj) {
        (None, _) => head,
        (Some((Step::Left, rest)), Object::Tensor(a, b)) => {
            Arrow::tensor(factor_arrow(rest, a, head), Arrow::id((**b).clone()))
        }
        (Some((Step::Right, rest)), Object::Tensor(a, b)) => {
            Arrow::tensor(Arrow::id((**a).clone()), factor_arrow(rest, b, head))
        }
        (Some((Step::Inside, rest)), Object::App(g, a)) => {
            Arrow::apply(*g, factor_arrow(rest, a, head))
        }
        _ => unreachable!("factor path leaves its object"),
    }
}

fn sig_types(c: &Constant) -> (Object, Object) {
    c.typed().expect("factors carry well-formed constants")
}

fn apply_factor(fac: &Factor, obj: &Object) -> Object {
    let (_, t) = sig_types(&fac.head);
    obj.replace_at(&fac.path, t)
        .expect("factor path lies in its object")
}

fn concat(a: &[Step], b: &[Step]) -> Path {
    let mut p = a.to_vec();
    p.extend_from_slice(b);
    p
}

fn with_arg(c: &Constant, v: usize, o: Object) -> Constant {
    let mut args = c.args.clone();
    args[v] = o;
    Constant::new(c.kind, c.functor, args)
}

struct Normalizer {
    th: Theory,
    plan: Vec<StagePlan>,
    schemas: Vec<Schema>,
}

impl Normalizer {
    fn new(th: Theory) -> Normalizer {
        Normalizer {
            th,
            plan: plan(th),
            schemas: axiom_set(th),
        }
    }

    fn rank(&self, f: &Factor) -> usize {
        rank(&self.plan, f.head.kind)
    }

    fn rewrite_with(&self, name: &str, t: &Arrow) -> Option<Arrow> {
        self.schemas
            .iter()
            .find(|s| s.name == name)?
            .apply(Direction::Forward, t, self.th)
    }

    /// Replaces a diagonal-like constant on a compound index by an equal
    /// term over smaller indices. `None` when the factor is already atomic
    /// enough for the plan.
    fn decompose(&self, fac: &Factor) -> Option<Arrow> {
        use ConstKind::*;
        let c = &fac.head;
        let cartesian = self.th.is_cartesian();
        let ds = self.th == Theory::DS;
        match (c.kind, c.args.first()?) {
            (Diag, Object::Tensor(..)) if cartesian => {
                self.rewrite_with("diag-tensor", &Arrow::Const(c.clone()))
            }
            (Diag, Object::Unit) if cartesian => Some(Arrow::l_inv(Object::Unit)),
            (Bang, Object::Tensor(..)) if cartesian => {
                self.rewrite_with("bang-tensor", &Arrow::Const(c.clone()))
            }
            (Bang, Object::Unit) if cartesian => Some(Arrow::id(Object::Unit)),
            (Codiag, Object::Tensor(..)) if ds => {
                self.rewrite_with("codiag-tensor", &Arrow::Const(c.clone()))
            }
            (Codiag, Object::Unit) if ds => Some(Arrow::l(Object::Unit)),
            (Codiag, Object::App(g, a)) if ds => {
                let a = (**a).clone();
                let aa = Object::tensor(a.clone(), a.clone());
                Arrow::chain(vec![
                    Arrow::psi_r(*g, Object::app(*g, a.clone()), a.clone()),
                    Arrow::apply(*g, Arrow::psi_l(*g, a.clone(), a.clone())),
                    Arrow::mu(*g, aa),
                    Arrow::apply(*g, Arrow::codiag(a)),
                ])
            }
            (Cobang, Object::Tensor(..)) if ds => {
                self.rewrite_with("cobang-tensor", &Arrow::Const(c.clone()))
            }
            (Cobang, Object::Unit) if ds => Some(Arrow::id(Object::Unit)),
            (Cobang, Object::App(g, a)) if ds => Some(Arrow::comp(
                Arrow::eta(*g, (**a).clone()),
                Arrow::cobang((**a).clone()),
            )),
            _ => None,
        }
    }

    fn decompose_all(&self, facs: Vec<Factor>) -> Vec<Factor> {
        let mut out = Vec::new();
        let mut todo: Vec<Factor> = facs.into_iter().rev().collect();
        while let Some(f) = todo.pop() {
            match self.decompose(&f) {
                Some(t) => todo.extend(develop_at(&t, &f.path).into_iter().rev()),
                None => out.push(f),
            }
        }
        out
    }

    /// Rewrites `later ∘ earlier` (with `earlier` applied to `x0`) into an
    /// equal sequence of factors that removes the inversion or makes
    /// progress towards removing it.
    fn resolve(&self, e: &Factor, l: &Factor, x0: &Object) -> Result<Vec<Factor>> {
        let x1 = apply_factor(e, x0);
        let (ep, lp) = (&e.path, &l.path);
        let e_sig = e.head.kind.signature();
        let l_sig = l.head.kind.signature();
        if !ep.starts_with(lp) && !lp.starts_with(ep) {
            return Ok(vec![l.clone(), e.clone()]);
        }
        if ep.starts_with(lp) {
            // the later head consumes a region holding the earlier output
            let rel = &ep[lp.len()..];
            if let Some((v, rest)) = l_sig.src.locate(rel) {
                let src_occ = l_sig.src.occurrences(v);
                if src_occ.len() == 1 {
                    let old = x0
                        .at(&concat(lp, &src_occ[0]))
                        .expect("occurrence in source")
                        .clone();
                    let mut out = vec![Factor {
                        path: lp.clone(),
                        head: with_arg(&l.head, v, old),
                    }];
                    for o in l_sig.tgt.occurrences(v) {
                        out.push(Factor {
                            path: concat(&concat(lp, &o), rest),
                            head: e.head.clone(),
                        });
                    }
                    return Ok(out);
                }
            }
        }
        if lp.starts_with(ep) {
            // the later head works inside the earlier output
            let rel = &lp[ep.len()..];
            if let Some((v, rest)) = e_sig.tgt.locate(rel) {
                let tgt_occ = e_sig.tgt.occurrences(v);
                if tgt_occ.len() == 1 {
                    let x2 = apply_factor(l, &x1);
                    let new = x2
                        .at(&concat(ep, &tgt_occ[0]))
                        .expect("occurrence in target")
                        .clone();
                    let mut out: Vec<Factor> = e_sig
                        .src
                        .occurrences(v)
                        .into_iter()
                        .map(|o| Factor {
                            path: concat(&concat(ep, &o), rest),
                            head: l.head.clone(),
                        })
                        .collect();
                    out.push(Factor {
                        path: ep.clone(),
                        head: with_arg(&e.head, v, new),
                    });
                    return Ok(out);
                }
            }
        }
        if let Some(out) = self.special(e, l) {
            return Ok(out);
        }
        // an oriented equation on the local composite
        let (base, local) = if ep.starts_with(lp) {
            let obj = x0.at(lp).expect("path in object");
            (
                lp.clone(),
                Arrow::comp(
                    Arrow::Const(l.head.clone()),
                    factor_arrow(&ep[lp.len()..], obj, Arrow::Const(e.head.clone())),
                ),
            )
        } else {
            let obj = x1.at(ep).expect("path in object");
            (
                ep.clone(),
                Arrow::comp(
                    factor_arrow(&lp[ep.len()..], obj, Arrow::Const(l.head.clone())),
                    Arrow::Const(e.head.clone()),
                ),
            )
        };
        for name in INTERACTIONS {
            if let Some(t) = self.rewrite_with(name, &local) {
                return Ok(develop_at(&t, &base));
            }
        }
        Err(Error::NormalizationStuck(format!("{local} in {}", self.th)))
    }

    /// Inversions between a comultiplication and a diagonal-like factor on
    /// the inner functor occurrence of its target.
    fn special(&self, e: &Factor, l: &Factor) -> Option<Vec<Factor>> {
        if e.head.kind != ConstKind::Delta || l.path != concat(&e.path, &[Step::Inside]) {
            return None;
        }
        let g = e.head.functor?;
        match l.head.kind {
            // F[diag{X}] = psi{X,X} . diag{F(X)}
            ConstKind::Diag if self.th.is_legal(ConstKind::Psi) => {
                let x = l.head.args[0].clone();
                let t = Arrow::comp(
                    Arrow::psi(g, x.clone(), x.clone()),
                    Arrow::diag(Object::app(g, x)),
                );
                let mut out = vec![e.clone()];
                out.extend(develop_at(&t, &e.path));
                Some(out)
            }
            // F[bang{F(A)}] . delta{A} = F[bang{A}], by the terminal law and a counit law
            ConstKind::Bang => Some(vec![Factor {
                path: l.path.clone(),
                head: Constant::new(ConstKind::Bang, None, vec![e.head.args[0].clone()]),
            }]),
            _ => None,
        }
    }

    fn normalize(&self, f: &Arrow) -> Result<Factorization> {
        let (src, tgt) = infer_type(f, self.th)?;
        let f = expand_derived(f, self.th)?;
        let mut facs = self.decompose_all(develop_at(&f, &[]));
        let mut steps = 0;
        loop {
            let Some(i) = (0..facs.len().saturating_sub(1))
                .find(|&i| self.rank(&facs[i]) > self.rank(&facs[i + 1]))
            else {
                break;
            };
            steps += 1;
            if steps > STEP_CAP {
                return Err(Error::NormalizationBudgetExceeded(STEP_CAP));
            }
            let x0 = facs[..i]
                .iter()
                .fold(src.clone(), |o, fac| apply_factor(fac, &o));
            let replacement = self.decompose_all(self.resolve(&facs[i], &facs[i + 1], &x0)?);
            facs.splice(i..i + 2, replacement);
        }
        Ok(self.assemble(&src, &tgt, &facs))
    }

    fn assemble(&self, src: &Object, tgt: &Object, facs: &[Factor]) -> Factorization {
        let all_kinds: Vec<ConstKind> = ConstKind::ALL
            .iter()
            .copied()
            .filter(|k| *k != ConstKind::Id)
            .collect();
        let mut stages = Vec::new();
        let mut obj = src.clone();
        let mut k = 0;
        for (r, p) in self.plan.iter().enumerate() {
            let start = obj.clone();
            let mut term: Option<Arrow> = None;
            while k < facs.len() && self.rank(&facs[k]) == r {
                let step = factor_arrow(&facs[k].path, &obj, Arrow::Const(facs[k].head.clone()));
                term = Some(match term {
                    None => step,
                    Some(t) => Arrow::comp(step, t),
                });
                obj = apply_factor(&facs[k], &obj);
                k += 1;
            }
            let allowed = match p.kinds {
                Some(ks) => ks.to_vec(),
                None => all_kinds
                    .iter()
                    .copied()
                    .filter(|kind| rank(&self.plan, *kind) == r)
                    .collect(),
            };
            stages.push(Stage {
                name: p.name.to_string(),
                allowed,
                atomic_index: p.atomic_index,
                term: term.unwrap_or_else(|| Arrow::id(start.clone())),
                src: start,
                tgt: obj.clone(),
            });
        }
        debug_assert_eq!(&obj, tgt);
        Factorization {
            theory: self.th,
            stages,
        }
    }
}

/// Oriented equations used when an inversion sits on a structural node.
const INTERACTIONS: [&str; 14] = [
    "psiL-eta",
    "psiL-mu",
    "psiR-eta",
    "psiR-mu",
    "monad-unit-l",
    "monad-unit-r",
    "psiL-eps",
    "psiL-delta",
    "psi-eps",
    "psi-delta",
    "psi0-eps",
    "psi0-delta",
    "comonad-counit-l",
    "comonad-counit-r",
];

/// The stage factorization of `f` prescribed for `th`.
pub fn normalize(f: &Arrow, th: Theory) -> Result<Factorization> {
    Normalizer::new(th).normalize(f)
}
