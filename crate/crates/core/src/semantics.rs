//! The graph functor: every arrow term denotes a relation between the
//! counted occurrences of its source and target.

use crate::error::Result;
use crate::relgraph::Relation;
use crate::terms::{expand_derived, infer_type, measure, Arrow, ConstKind, Constant, Theory};

/// Evaluates `f` in `th`. Derived constants are expanded before evaluation.
pub fn graph(f: &Arrow, th: Theory) -> Result<Relation> {
    infer_type(f, th)?;
    Ok(eval(&expand_derived(f, th)?, th))
}

/// The graph together with its membership in the target category of `th`.
pub fn graph_membership_report(f: &Arrow, th: Theory) -> Result<(Relation, bool)> {
    let g = graph(f, th)?;
    let ok = g.member_of(th.target_category());
    Ok((g, ok))
}

/// Evaluation of a well-typed term whose constants are primitive in `th`.
pub(crate) fn eval(f: &Arrow, th: Theory) -> Relation {
    match f {
        Arrow::Const(c) => constant_graph(c, th),
        Arrow::Comp(g, h) => eval(h, th)
            .compose(&eval(g, th))
            .expect("well-typed composition"),
        Arrow::Tensor(a, b) => eval(a, th).tensor(&eval(b, th)),
        Arrow::Apply(_, a) => eval(a, th).under_functor(),
    }
}

/// The clause table for primitive constants.
pub fn constant_graph(c: &Constant, th: Theory) -> Relation {
    use ConstKind::*;
    let m = |i: usize| measure(&c.args[i], th);
    match c.kind {
        Id | Assoc | AssocInv | LeftUnit | LeftUnitInv | RightUnit | RightUnitInv | PsiL => {
            let (src, _) = c.typed().expect("well-formed constant");
            Relation::identity(measure(&src, th))
        }
        Sym => {
            let (a, b) = (m(0), m(1));
            Relation::from_pairs(
                a + b,
                a + b,
                (0..a).map(|i| (i, b + i)).chain((0..b).map(|j| (a + j, j))),
            )
        }
        PsiR => {
            let (a, b) = (m(0), m(1));
            let n = a + 1 + b;
            Relation::from_pairs(
                n,
                n,
                (0..a)
                    .map(|i| (i, i + 1))
                    .chain([(a, 0)])
                    .chain((a + 1..n).map(|i| (i, i))),
            )
        }
        Psi => {
            let (a, b) = (m(0), m(1));
            let pairs = [(0, 0), (a + 1, 0)]
                .into_iter()
                .chain((1..=a).map(|i| (i, i)))
                .chain((a + 2..=a + b + 1).map(|j| (j, j - 1)));
            Relation::from_pairs(a + b + 2, a + b + 1, pairs)
        }
        Psi0 => Relation::empty(0, 1),
        Eta => {
            let a = m(0);
            Relation::from_pairs(a, a + 1, (0..a).map(|i| (i, i + 1)))
        }
        Mu => {
            let a = m(0);
            Relation::from_pairs(
                a + 2,
                a + 1,
                [(0, 0), (1, 0)]
                    .into_iter()
                    .chain((2..a + 2).map(|i| (i, i - 1))),
            )
        }
        Eps => {
            let a = m(0);
            Relation::from_pairs(a + 1, a, (0..a).map(|i| (i + 1, i)))
        }
        Delta => {
            let a = m(0);
            Relation::from_pairs(
                a + 1,
                a + 2,
                [(0, 0), (0, 1)]
                    .into_iter()
                    .chain((1..=a).map(|i| (i, i + 1))),
            )
        }
        Diag => {
            let a = m(0);
            Relation::from_pairs(a, 2 * a, (0..a).flat_map(|i| [(i, i), (i, i + a)]))
        }
        Codiag => {
            let a = m(0);
            Relation::from_pairs(2 * a, a, (0..a).flat_map(|i| [(i, i), (i + a, i)]))
        }
        Bang => Relation::empty(m(0), 0),
        Cobang => Relation::empty(0, m(0)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::{Functor, Object};

    const T: Functor = Functor::T;
    const L: Functor = Functor::L;

    fn p() -> Object {
        Object::letter("p")
    }
    fn q() -> Object {
        Object::letter("q")
    }
    fn t(o: Object) -> Object {
        Object::app(T, o)
    }
    fn rel(src: usize, tgt: usize, pairs: &[(usize, usize)]) -> Relation {
        Relation::new(src, tgt, pairs.iter().copied()).unwrap()
    }
    fn pq() -> Object {
        Object::tensor(p(), q())
    }

    fn to_l(o: &Object) -> Object {
        match o {
            Object::Tensor(a, b) => Object::tensor(to_l(a), to_l(b)),
            Object::App(_, a) => Object::app(L, to_l(a)),
            other => other.clone(),
        }
    }

    #[test]
    fn spec_examples() {
        assert_eq!(
            graph(&Arrow::mu(T, p()), Theory::LS).unwrap(),
            rel(2, 1, &[(0, 0), (1, 0)])
        );
        assert_eq!(
            graph(&Arrow::psi_r(T, t(p()), q()), Theory::LS).unwrap(),
            rel(2, 2, &[(0, 1), (1, 0)])
        );
        assert_eq!(
            graph(&Arrow::delta(L, p()), Theory::MSco).unwrap(),
            rel(1, 2, &[(0, 0), (0, 1)])
        );
        assert_eq!(
            graph(&Arrow::diag(p()), Theory::CS).unwrap(),
            rel(1, 2, &[(0, 0), (0, 1)])
        );
        let f = Arrow::comp(
            Arrow::mu(T, pq()),
            Arrow::comp(
                Arrow::apply(T, Arrow::psi_l(T, p(), q())),
                Arrow::psi_r(T, t(p()), q()),
            ),
        );
        assert_eq!(graph(&f, Theory::LS).unwrap(), rel(2, 1, &[(0, 0), (1, 0)]));
    }

    #[test]
    fn membership_examples() {
        assert_eq!(
            graph_membership_report(&Arrow::eta(T, p()), Theory::LLS).unwrap(),
            (Relation::empty(0, 1), true)
        );
        let (g, ok) = graph_membership_report(&Arrow::psi_r(T, t(p()), q()), Theory::LS).unwrap();
        assert_eq!((g, ok), (rel(2, 2, &[(0, 1), (1, 0)]), true));
        assert_eq!(
            graph_membership_report(&Arrow::eps(L, p()), Theory::MSco).unwrap(),
            (Relation::empty(1, 0), true)
        );
    }

    #[test]
    fn psi_routes_coincide() {
        // Comonad primitive clause versus the monad expansion, at equal measures.
        for (a, b) in [
            (p(), q()),
            (t(p()), q()),
            (Object::Unit, t(q())),
            (t(t(p())), t(q())),
        ] {
            let monad = graph(&Arrow::psi(T, a.clone(), b.clone()), Theory::LS).unwrap();
            let comonad = graph(&Arrow::psi(L, to_l(&a), to_l(&b)), Theory::MSco).unwrap();
            assert_eq!(monad, comonad, "{a} {b}");
        }
    }

    #[test]
    fn cartesian_counterexample() {
        // T¡_A versus η_I ∘ ¡_{TA}: one strand versus none.
        for a in [p(), t(p()), pq(), Object::Unit] {
            let lhs = graph(&Arrow::apply(T, Arrow::bang(a.clone())), Theory::CS).unwrap();
            let rhs = graph(
                &Arrow::comp(Arrow::eta(T, Object::Unit), Arrow::bang(t(a.clone()))),
                Theory::CS,
            )
            .unwrap();
            let n = measure(&a, Theory::CS) + 1;
            assert_eq!(lhs, rel(n, 1, &[(0, 0)]));
            assert_eq!(rhs, Relation::empty(n, 1));
        }
    }

    #[test]
    fn cocartesian_preservation() {
        for a in [p(), t(p()), pq(), Object::Unit, t(pq())] {
            let lhs = Arrow::comp(
                Arrow::apply(T, Arrow::codiag(a.clone())),
                Arrow::psi(T, a.clone(), a.clone()),
            );
            assert_eq!(
                graph(&lhs, Theory::DS).unwrap(),
                graph(&Arrow::codiag(t(a.clone())), Theory::DS).unwrap()
            );
            let lhs = Arrow::comp(
                Arrow::apply(T, Arrow::cobang(a.clone())),
                Arrow::eta(T, Object::Unit),
            );
            assert_eq!(
                graph(&lhs, Theory::DS).unwrap(),
                graph(&Arrow::cobang(t(a.clone())), Theory::DS).unwrap()
            );
        }
    }

    #[test]
    fn duality_spot_check() {
        for a in [p(), pq(), Object::Unit] {
            let eta = graph(&Arrow::eta(T, a.clone()), Theory::LS).unwrap();
            let eps = graph(&Arrow::eps(L, a.clone()), Theory::MSco).unwrap();
            assert_eq!(eps, eta.converse());
            let mu = graph(&Arrow::mu(T, a.clone()), Theory::LS).unwrap();
            let delta = graph(&Arrow::delta(L, a.clone()), Theory::MSco).unwrap();
            assert_eq!(delta, mu.converse());
        }
    }

    #[test]
    fn strengths_sides_agree() {
        // μ∘Tψ^L∘ψ^R against μ∘Tψ^R∘ψ^L for small objects.
        let objs = [
            p(),
            Object::Unit,
            t(p()),
            Object::tensor(t(p()), q()),
            t(t(q())),
        ];
        for a in &objs {
            for b in &objs {
                let one = crate::terms::psi_via_strengths(T, a, b);
                let other = crate::terms::psi_via_strengths_other(T, a, b);
                assert_eq!(
                    graph(&one, Theory::LS).unwrap(),
                    graph(&other, Theory::LS).unwrap(),
                    "{a} {b}"
                );
            }
        }
    }

    #[test]
    fn psi_r_is_monotone_iff_left_is_empty() {
        for a in [Object::Unit, p(), t(p())] {
            let g = graph(&Arrow::psi_r(T, a.clone(), q()), Theory::LS).unwrap();
            assert_eq!(
                g.classify().is_order_preserving_function,
                measure(&a, Theory::LS) == 0
            );
        }
    }
}
