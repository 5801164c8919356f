//! Ground instances of equation schemas, and the graph-soundness sweep.

use serde::Serialize;

use super::schema::{axiom_set, instantiate_arrow, Env, Schema};
use crate::sample::{all_objects, functor_pool, LETTERS};
use crate::semantics::graph;
use crate::terms::{
    constants_from, infer_type, instantiate_object, match_object, measure, validate_object, Arrow,
    Functor, Object, Theory,
};

/// Objects substituted for free object variables have at most this many
/// syntax nodes, indexed by the number of free variables.
const NODES_BY_ARITY: [usize; 5] = [5, 5, 3, 2, 1];

/// Constants offered for an arrow variable have targets no larger than this.
const CANDIDATE_TARGET_CAP: usize = 9;

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub lhs: String,
    pub rhs: String,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SchemaCheck {
    pub schema: String,
    pub instances: usize,
    pub failures: Vec<Failure>,
}

impl SchemaCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.instances > 0
    }
}

/// Object variables that must be chosen up front: those not fixed by the
/// target of an earlier arrow variable.
fn free_object_vars(s: &Schema) -> Vec<usize> {
    let mut free = Vec::new();
    let mut determined = Vec::new();
    for av in &s.arrow_vars {
        let mut vs = Vec::new();
        av.src.vars(&mut vs);
        for v in vs {
            if !determined.contains(&v) && !free.contains(&v) {
                free.push(v);
            }
        }
        let mut vs = Vec::new();
        av.tgt.vars(&mut vs);
        for v in vs {
            if !free.contains(&v) && !determined.contains(&v) {
                determined.push(v);
            }
        }
    }
    for v in 0..s.object_vars.len() {
        if !determined.contains(&v) && !free.contains(&v) {
            free.push(v);
        }
    }
    free
}

/// Small well-typed arrows out of `src`, in a fixed order.
pub fn arrow_candidates(src: &Object, th: Theory) -> Vec<Arrow> {
    let functors = functor_pool(th);
    let extra = [Object::Unit, Object::letter("p")];
    let consts = |o: &Object| -> Vec<Arrow> {
        constants_from(o, th, &functors, &extra)
            .into_iter()
            .filter(|c| {
                c.typed()
                    .is_some_and(|(_, t)| t.size() <= CANDIDATE_TARGET_CAP)
            })
            .map(Arrow::Const)
            .collect()
    };
    let mut out = vec![Arrow::id(src.clone())];
    let direct = consts(src);
    out.extend(direct.iter().cloned());
    match src {
        Object::App(g, a) => out.extend(consts(a).into_iter().take(4).map(|c| Arrow::apply(*g, c))),
        Object::Tensor(a, b) => {
            out.extend(
                consts(a)
                    .into_iter()
                    .take(3)
                    .map(|c| Arrow::tensor(c, Arrow::id((**b).clone()))),
            );
            out.extend(
                consts(b)
                    .into_iter()
                    .take(3)
                    .map(|c| Arrow::tensor(Arrow::id((**a).clone()), c)),
            );
        }
        _ => {}
    }
    for c in direct.iter().take(3) {
        if let Ok((_, mid)) = infer_type(c, th) {
            if let Some(d) = consts(&mid).into_iter().next() {
                out.push(Arrow::comp(d, c.clone()));
            }
        }
    }
    out
}

fn object_pool(th: Theory, free: usize, max_measure: usize) -> Vec<Object> {
    let nodes = NODES_BY_ARITY[free.min(NODES_BY_ARITY.len() - 1)];
    all_objects(nodes, &LETTERS, &functor_pool(th))
        .into_iter()
        .filter(|o| validate_object(o, th).is_ok() && measure(o, th) <= max_measure)
        .collect()
}

/// Binds arrow variables one after another, each to the first candidate
/// (from a rotating start) whose type fits.
fn bind_arrows(s: &Schema, th: Theory, env: &mut Env, seed: usize) -> bool {
    for (t, av) in s.arrow_vars.iter().enumerate() {
        let Some(src) = instantiate_object(&av.src, &env.objects) else {
            return false;
        };
        let cands = arrow_candidates(&src, th);
        let start = (seed + 7 * t) % cands.len();
        let mut chosen = false;
        for k in 0..cands.len() {
            let cand = &cands[(start + k) % cands.len()];
            let Ok((_, tgt)) = infer_type(cand, th) else {
                continue;
            };
            let mut trial = env.objects.clone();
            if match_object(&av.tgt, &tgt, &mut trial) {
                env.objects = trial;
                env.arrows[t] = Some(cand.clone());
                chosen = true;
                break;
            }
        }
        if !chosen {
            return false;
        }
    }
    true
}

/// Number of ways to choose the free object variables of `s`: the
/// instances available to [`instances`] before arrow variables are bound.
pub fn instance_space(s: &Schema, th: Theory, max_measure: usize) -> u128 {
    let free = free_object_vars(s);
    (object_pool(th, free.len(), max_measure).len() as u128).pow(free.len() as u32)
}

/// Up to `cap` ground instances `(lhs, rhs)` of `s`, with free object
/// variables ranging over objects of measure at most `max_measure`.
pub fn instances(s: &Schema, th: Theory, max_measure: usize, cap: usize) -> Vec<(Arrow, Arrow)> {
    let free = free_object_vars(s);
    let pool = object_pool(th, free.len(), max_measure);
    let functors: Vec<Functor> = functor_pool(th);
    let total: u128 = (pool.len() as u128).pow(free.len() as u32);
    let picks: Vec<u128> = if total <= cap as u128 {
        (0..total).collect()
    } else {
        (0..cap as u128).map(|j| j * total / cap as u128).collect()
    };
    let mut out = Vec::new();
    for (i, &pick) in picks.iter().enumerate() {
        let mut env = s.fresh_env(th);
        if env.objects.functor.is_none() {
            env.objects.functor = Some(functors[i % functors.len()]);
        }
        let mut rest = pick;
        for &v in &free {
            let o = &pool[(rest % pool.len() as u128) as usize];
            rest /= pool.len() as u128;
            env.objects.bind_object(v, o);
        }
        if !bind_arrows(s, th, &mut env, i) {
            continue;
        }
        if let (Some(l), Some(r)) = (
            instantiate_arrow(&s.lhs, &env),
            instantiate_arrow(&s.rhs, &env),
        ) {
            out.push((l, r));
        }
    }
    out
}

/// Checks that both sides of every instance are well typed, share their
/// type, and have the same graph.
pub fn check_schema(s: &Schema, th: Theory, max_measure: usize, cap: usize) -> SchemaCheck {
    let inst = instances(s, th, max_measure, cap);
    let mut failures = Vec::new();
    for (l, r) in &inst {
        let fail = |reason: String| Failure {
            lhs: l.to_string(),
            rhs: r.to_string(),
            reason,
        };
        let (tl, tr) = match (infer_type(l, th), infer_type(r, th)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                failures.push(fail(e.to_string()));
                continue;
            }
        };
        if tl != tr {
            failures.push(fail(format!(
                "types differ: {} -> {} vs {} -> {}",
                tl.0, tl.1, tr.0, tr.1
            )));
            continue;
        }
        match (graph(l, th), graph(r, th)) {
            (Ok(gl), Ok(gr)) if gl == gr => {}
            (Ok(gl), Ok(gr)) => failures.push(fail(format!("graphs differ: {gl} vs {gr}"))),
            (Err(e), _) | (_, Err(e)) => failures.push(fail(e.to_string())),
        }
    }
    SchemaCheck {
        schema: s.name.clone(),
        instances: inst.len(),
        failures,
    }
}

/// The equation-soundness sweep over every schema of `th`.
pub fn sweep(th: Theory, max_measure: usize, cap: usize) -> Vec<SchemaCheck> {
    axiom_set(th)
        .iter()
        .map(|s| check_schema(s, th, max_measure, cap))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_variables_follow_arrow_types() {
        let s = axiom_set(Theory::LLS)
            .into_iter()
            .find(|s| s.name == "cat-assoc")
            .unwrap();
        // only A is free: B, C, D come from the targets of f, g, h
        assert_eq!(free_object_vars(&s).len(), 1);
        let s = axiom_set(Theory::LLS)
            .into_iter()
            .find(|s| s.name == "pentagon")
            .unwrap();
        assert_eq!(free_object_vars(&s).len(), 4);
    }

    #[test]
    fn instances_are_well_typed() {
        for th in [Theory::LLS, Theory::Lc, Theory::CS] {
            for s in axiom_set(th) {
                let inst = instances(&s, th, 3, 40);
                assert!(!inst.is_empty(), "{th} {}", s.name);
                for (l, r) in inst {
                    assert_eq!(
                        infer_type(&l, th).unwrap(),
                        infer_type(&r, th).unwrap(),
                        "{th} {}: {l} = {r}",
                        s.name
                    );
                }
            }
        }
    }

    #[test]
    fn every_schema_is_sound_on_a_sample() {
        let mut bad = Vec::new();
        for th in Theory::ALL {
            for c in sweep(th, 3, 60) {
                if !c.passed() {
                    bad.push(format!(
                        "{th} {} ({} instances): {:?}",
                        c.schema,
                        c.instances,
                        c.failures.first()
                    ));
                }
            }
        }
        assert!(bad.is_empty(), "{}", bad.join("\n"));
    }

    #[test]
    fn sweep_detects_an_unsound_equation() {
        let bogus = Schema::parse("bogus", "F[bang{A}]", "eta{I} . bang{F(A)}", "").unwrap();
        let c = check_schema(&bogus, Theory::CS, 3, 50);
        assert!(c.instances > 0 && !c.passed());
    }

    #[test]
    fn right_strength_comonad_equations_hold_in_the_graphs() {
        // no theory has a comonad with a right strength, so evaluate directly
        let th = Theory::LLSco;
        let table = crate::rewrite::schema_table();
        for name in ["psiR-eps", "psiR-delta"] {
            let s = &table.iter().find(|(s, _)| s.name == name).unwrap().0;
            let pool = object_pool(th, 2, 3);
            for a in &pool {
                for b in &pool {
                    let mut env = s.fresh_env(th);
                    env.objects.bind_object(0, a);
                    env.objects.bind_object(1, b);
                    let l = instantiate_arrow(&s.lhs, &env).unwrap();
                    let r = instantiate_arrow(&s.rhs, &env).unwrap();
                    assert_eq!(
                        crate::semantics::eval(&l, th),
                        crate::semantics::eval(&r, th),
                        "{name}: {l} = {r}"
                    );
                }
            }
        }
    }
}
