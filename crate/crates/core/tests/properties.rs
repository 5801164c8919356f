use coherence::decide::{equal, Verdict};
use coherence::relgraph::Relation;
use coherence::sample::Sampler;
use coherence::semantics::{graph, graph_membership_report};
use coherence::syntax::parse_arrow;
use coherence::terms::{expand_derived, infer_type, measure, Arrow, Theory};
use proptest::prelude::*;

fn theory() -> impl Strategy<Value = Theory> {
    (0..Theory::ALL.len()).prop_map(|i| Theory::ALL[i])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn print_then_parse_is_identity(th in theory(), seed in any::<u64>()) {
        let f = Sampler::new(th, seed).arrow(14);
        let text = f.to_string();
        prop_assert_eq!(parse_arrow(&text, th).unwrap(), f);
    }

    #[test]
    fn graphs_land_in_the_target_category(th in theory(), seed in any::<u64>()) {
        let f = Sampler::new(th, seed).arrow(14);
        let (g, ok) = graph_membership_report(&f, th).unwrap();
        prop_assert!(ok, "{} in {}: {}", f, th, g);
    }

    #[test]
    fn arities_follow_the_measure(th in theory(), seed in any::<u64>()) {
        let f = Sampler::new(th, seed).arrow(14);
        let (a, b) = infer_type(&f, th).unwrap();
        let g = graph(&f, th).unwrap();
        prop_assert_eq!((g.src(), g.tgt()), (measure(&a, th), measure(&b, th)));
    }

    #[test]
    fn graph_is_a_functor(th in theory(), seed in any::<u64>()) {
        let mut s = Sampler::new(th, seed);
        let f = s.arrow(7);
        let (_, mid) = infer_type(&f, th).unwrap();
        let g = s.arrow_from(&mid, 7);
        let h = s.arrow(5);
        let gf = graph(&f, th).unwrap();
        let gg = graph(&g, th).unwrap();
        prop_assert_eq!(graph(&Arrow::comp(g.clone(), f.clone()), th).unwrap(), gf.compose(&gg).unwrap());
        prop_assert_eq!(graph(&Arrow::tensor(f.clone(), h.clone()), th).unwrap(), gf.tensor(&graph(&h, th).unwrap()));
        let (a, _) = infer_type(&f, th).unwrap();
        prop_assert_eq!(graph(&Arrow::id(a.clone()), th).unwrap(), Relation::identity(measure(&a, th)));
    }

    #[test]
    fn expansion_preserves_type_and_graph(th in theory(), seed in any::<u64>()) {
        let f = Sampler::new(th, seed).arrow(12);
        let e = expand_derived(&f, th).unwrap();
        prop_assert_eq!(infer_type(&e, th).unwrap(), infer_type(&f, th).unwrap());
        prop_assert_eq!(graph(&e, th).unwrap(), graph(&f, th).unwrap());
        prop_assert_eq!(expand_derived(&e, th).unwrap(), e);
    }

    #[test]
    fn equality_is_a_congruence(th in theory(), seed in any::<u64>()) {
        let mut s = Sampler::new(th, seed);
        let f = s.arrow(6);
        let h = s.arrow(4);
        prop_assert_eq!(equal(&f, &f, th).unwrap(), Verdict::Equal);
        let e = expand_derived(&f, th).unwrap();
        prop_assert_eq!(equal(&Arrow::tensor(f.clone(), h.clone()), &Arrow::tensor(e.clone(), h.clone()), th).unwrap(), Verdict::Equal);
        for func in coherence::sample::functor_pool(th) {
            if th.admits_functor(func) {
                prop_assert_eq!(equal(&Arrow::apply(func, f.clone()), &Arrow::apply(func, e.clone()), th).unwrap(), Verdict::Equal);
            }
        }
    }
}
