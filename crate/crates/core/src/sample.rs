//! Random objects and random well-typed arrow terms, for property tests and
//! sweeps. Generation is driven by an explicit seed so runs are repeatable.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::terms::{constants_from, infer_type, Arrow, Functor, Object, Theory};

/// Objects produced while growing a term never exceed this many nodes.
const OBJECT_CAP: usize = 15;

pub const LETTERS: [&str; 3] = ["p", "q", "r"];

/// The functors used when sampling: the distinguished one, or `E1, E2`.
pub fn functor_pool(th: Theory) -> Vec<Functor> {
    if th.is_family() {
        vec![Functor::E(1), Functor::E(2)]
    } else {
        vec![th.default_functor()]
    }
}

pub struct Sampler {
    rng: StdRng,
    th: Theory,
    functors: Vec<Functor>,
}

impl Sampler {
    pub fn new(th: Theory, seed: u64) -> Sampler {
        Sampler {
            rng: StdRng::seed_from_u64(seed),
            th,
            functors: functor_pool(th),
        }
    }

    /// A random object with at most `max_nodes` syntax nodes.
    pub fn object(&mut self, max_nodes: usize) -> Object {
        if max_nodes <= 1 {
            return self.atom();
        }
        match self.rng.gen_range(0..4) {
            0 => self.atom(),
            1 => {
                let f = *self.functors.choose(&mut self.rng).expect("nonempty pool");
                Object::app(f, self.object(max_nodes - 1))
            }
            _ if max_nodes >= 3 => {
                let left = self.rng.gen_range(1..=max_nodes - 2);
                let a = self.object(left);
                let b = self.object(max_nodes - 1 - a.size());
                Object::tensor(a, b)
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Object {
        match self.rng.gen_range(0..5) {
            0 => Object::Unit,
            i => Object::letter(LETTERS[(i - 1) % LETTERS.len()]),
        }
    }

    /// A random well-typed term of at most `max_size` nodes.
    pub fn arrow(&mut self, max_size: usize) -> Arrow {
        let src = self.object(7);
        self.arrow_from(&src, max_size.max(1))
    }

    /// A random well-typed term with source `src` and at most `budget` nodes.
    pub fn arrow_from(&mut self, src: &Object, budget: usize) -> Arrow {
        let roll: f64 = self.rng.gen();
        if budget >= 3 && roll < 0.4 {
            let first = self.rng.gen_range(1..budget - 1);
            let f = self.arrow_from(src, first);
            let rest = budget - 1 - f.size();
            if rest == 0 {
                return f;
            }
            let (_, mid) = infer_type(&f, self.th).expect("sampled terms are well typed");
            let g = self.arrow_from(&mid, rest);
            return Arrow::comp(g, f);
        }
        match src {
            Object::Tensor(a, b) if budget >= 3 && roll < 0.65 => {
                let left = self.rng.gen_range(1..budget - 1);
                let f = self.arrow_from(a, left);
                let g = self.arrow_from(b, budget - 1 - f.size());
                Arrow::tensor(f, g)
            }
            Object::App(h, a) if budget >= 2 && roll < 0.65 => {
                Arrow::apply(*h, self.arrow_from(a, budget - 1))
            }
            _ => self.constant_from(src),
        }
    }

    fn constant_from(&mut self, src: &Object) -> Arrow {
        let free = [self.object(3)];
        let th = self.th;
        let options: Vec<_> = constants_from(src, th, &self.functors, &free)
            .into_iter()
            .filter(|c| c.typed().is_some_and(|(_, t)| t.size() <= OBJECT_CAP))
            .collect();
        match options.choose(&mut self.rng) {
            Some(c) => Arrow::Const(c.clone()),
            None => Arrow::id(src.clone()),
        }
    }
}

/// Every object with at most `max_nodes` syntax nodes over the given atoms
/// (letters and `I`) and functors, smallest first, then by display.
pub fn all_objects(max_nodes: usize, letters: &[&str], functors: &[Functor]) -> Vec<Object> {
    let mut by_size: Vec<Vec<Object>> = vec![Vec::new(); max_nodes + 1];
    if max_nodes >= 1 {
        by_size[1].push(Object::Unit);
        by_size[1].extend(letters.iter().map(|x| Object::letter(x)));
    }
    for n in 2..=max_nodes {
        let mut level = Vec::new();
        for f in functors {
            level.extend(by_size[n - 1].iter().map(|a| Object::app(*f, a.clone())));
        }
        for left in 1..n - 1 {
            for a in &by_size[left] {
                for b in &by_size[n - 1 - left] {
                    level.push(Object::tensor(a.clone(), b.clone()));
                }
            }
        }
        by_size[n] = level;
    }
    by_size.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::validate_object;

    #[test]
    fn sampled_terms_are_well_typed_and_bounded() {
        for th in Theory::ALL {
            let mut s = Sampler::new(th, 7);
            for _ in 0..200 {
                let f = s.arrow(14);
                assert!(f.size() <= 14, "{f}");
                let (a, b) = infer_type(&f, th).unwrap_or_else(|e| panic!("{th}: {f}: {e}"));
                validate_object(&a, th).unwrap();
                validate_object(&b, th).unwrap();
            }
        }
    }

    #[test]
    fn object_enumeration_counts() {
        // 4 atoms; with one functor: sizes 1, 2, 3 give 4, 4, 4 + 16
        let objs = all_objects(3, &LETTERS, &[Functor::T]);
        assert_eq!(objs.len(), 4 + 4 + 20);
        assert!(objs.iter().all(|o| o.size() <= 3));
        let two = all_objects(2, &["p"], &[Functor::E(1), Functor::E(2)]);
        assert_eq!(two.len(), 2 + 4);
    }

    #[test]
    fn deterministic_for_a_seed() {
        let a: Vec<_> = (0..20)
            .map({
                let mut s = Sampler::new(Theory::CS, 3);
                move |_| s.arrow(10)
            })
            .collect();
        let b: Vec<_> = (0..20)
            .map({
                let mut s = Sampler::new(Theory::CS, 3);
                move |_| s.arrow(10)
            })
            .collect();
        assert_eq!(a, b);
    }
}
