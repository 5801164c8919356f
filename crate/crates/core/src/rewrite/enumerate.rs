//! Exhaustive enumeration of small terms, and a shortest-term search.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};
use std::rc::Rc;

use crate::sample::functor_pool;
use crate::terms::{constants_from, infer_type, Arrow, Functor, Object, Theory};

/// Functors available in `th` for constants whose functor the source does
/// not fix, plus those occurring in the given objects.
fn functors_for(th: Theory, objs: &[&Object]) -> Vec<Functor> {
    let mut fs = functor_pool(th);
    for o in objs {
        for f in o.functors() {
            if th.admits_functor(f) && !fs.contains(&f) {
                fs.push(f);
            }
        }
    }
    fs.sort();
    fs
}

/// Objects offered for constant parameters the source leaves open: the
/// subformulas of the target and `I`.
fn free_objects(tgt: &Object) -> Vec<Object> {
    let mut out = tgt.subformulas();
    out.push(Object::Unit);
    out.sort_by_key(|o| (o.size(), o.to_string()));
    out.dedup();
    out
}

struct Enumerator {
    th: Theory,
    functors: Vec<Functor>,
    free: Vec<Object>,
    memo: HashMap<(Object, usize), Vec<(Arrow, Object)>>,
}

impl Enumerator {
    /// Every term out of `src` with exactly `n` nodes, with its target.
    fn exact(&mut self, src: &Object, n: usize) -> Vec<(Arrow, Object)> {
        if let Some(v) = self.memo.get(&(src.clone(), n)) {
            return v.clone();
        }
        let mut out = Vec::new();
        if n == 1 {
            for c in constants_from(src, self.th, &self.functors, &self.free) {
                if let Ok((_, t)) = infer_type(&Arrow::Const(c.clone()), self.th) {
                    out.push((Arrow::Const(c), t));
                }
            }
        } else {
            for k in 1..n - 1 {
                for (f, mid) in self.exact(src, k) {
                    for (g, t) in self.exact(&mid, n - 1 - k) {
                        out.push((Arrow::comp(g, f.clone()), t));
                    }
                }
            }
            if let Object::Tensor(a, b) = src {
                for k in 1..n - 1 {
                    for (f, ta) in self.exact(a, k) {
                        for (g, tb) in self.exact(b, n - 1 - k) {
                            out.push((Arrow::tensor(f.clone(), g), Object::tensor(ta.clone(), tb)));
                        }
                    }
                }
            }
            if let Object::App(h, a) = src {
                for (f, t) in self.exact(a, n - 1) {
                    out.push((Arrow::apply(*h, f), Object::app(*h, t)));
                }
            }
        }
        self.memo.insert((src.clone(), n), out.clone());
        out
    }
}

/// All well-typed terms from `src` to `tgt` with at most `max_size` nodes,
/// ordered by size and then by construction. Constant parameters not fixed
/// by a source range over subformulas of `tgt` and `I`.
pub fn enumerate_arrows(src: &Object, tgt: &Object, th: Theory, max_size: usize) -> Vec<Arrow> {
    let mut e = Enumerator {
        th,
        functors: functors_for(th, &[src, tgt]),
        free: free_objects(tgt),
        memo: HashMap::new(),
    };
    let mut out = Vec::new();
    for n in 1..=max_size {
        out.extend(
            e.exact(src, n)
                .into_iter()
                .filter(|(_, t)| t == tgt)
                .map(|(f, _)| f),
        );
    }
    out
}

/// Hash-consed object: children are ids into the same table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Node {
    Unit,
    Letter(std::sync::Arc<str>),
    Tensor(Oid, Oid),
    App(Functor, Oid),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Oid(u32);

/// A least term found by the search, with shared subterms.
enum Term {
    Id(Oid),
    Const(crate::terms::Constant),
    Tensor(Rc<Term>, Rc<Term>),
    Apply(Functor, Rc<Term>),
    Comp(Rc<Term>, Rc<Term>),
}

type Found = Rc<BTreeMap<Oid, (usize, Rc<Term>)>>;

/// Shortest-term search. For each source and size bound it records, for
/// every reachable target, the size of a least term and one such term.
struct Reach {
    th: Theory,
    functors: Vec<Functor>,
    free: Vec<Object>,
    ids: HashMap<Node, Oid>,
    nodes: Vec<Node>,
    consts: HashMap<Oid, Rc<Vec<(Oid, Rc<Term>)>>>,
    memo: HashMap<(Oid, usize), Found>,
    atomic_memo: HashMap<(Oid, usize), Found>,
}

impl Reach {
    fn new(th: Theory, functors: Vec<Functor>, free: Vec<Object>) -> Reach {
        Reach {
            th,
            functors,
            free,
            ids: HashMap::new(),
            nodes: Vec::new(),
            consts: HashMap::new(),
            memo: HashMap::new(),
            atomic_memo: HashMap::new(),
        }
    }

    fn node(&mut self, n: Node) -> Oid {
        if let Some(&id) = self.ids.get(&n) {
            return id;
        }
        let id = Oid(self.nodes.len() as u32);
        self.nodes.push(n.clone());
        self.ids.insert(n, id);
        id
    }

    fn intern(&mut self, o: &Object) -> Oid {
        let n = match o {
            Object::Unit => Node::Unit,
            Object::Letter(x) => Node::Letter(x.clone()),
            Object::Tensor(a, b) => Node::Tensor(self.intern(a), self.intern(b)),
            Object::App(f, a) => Node::App(*f, self.intern(a)),
        };
        self.node(n)
    }

    fn object(&self, id: Oid) -> Object {
        match &self.nodes[id.0 as usize] {
            Node::Unit => Object::Unit,
            Node::Letter(x) => Object::Letter(x.clone()),
            Node::Tensor(a, b) => Object::tensor(self.object(*a), self.object(*b)),
            Node::App(f, a) => Object::app(*f, self.object(*a)),
        }
    }

    fn arrow(&self, t: &Term) -> Arrow {
        match t {
            Term::Id(o) => Arrow::id(self.object(*o)),
            Term::Const(c) => Arrow::Const(c.clone()),
            Term::Tensor(f, g) => Arrow::tensor(self.arrow(f), self.arrow(g)),
            Term::Apply(h, f) => Arrow::apply(*h, self.arrow(f)),
            Term::Comp(g, f) => Arrow::comp(self.arrow(g), self.arrow(f)),
        }
    }

    /// Constants out of `src` with their targets.
    fn constants(&mut self, src: Oid) -> Rc<Vec<(Oid, Rc<Term>)>> {
        if let Some(v) = self.consts.get(&src) {
            return v.clone();
        }
        let obj = self.object(src);
        let mut out = Vec::new();
        for c in constants_from(&obj, self.th, &self.functors, &self.free) {
            if let Ok((_, t)) = infer_type(&Arrow::Const(c.clone()), self.th) {
                out.push((self.intern(&t), Rc::new(Term::Const(c))));
            }
        }
        let out = Rc::new(out);
        self.consts.insert(src, out.clone());
        out
    }

    /// Least terms without composition at the root.
    fn atomic(&mut self, src: Oid, budget: usize) -> Found {
        if let Some(v) = self.atomic_memo.get(&(src, budget)) {
            return v.clone();
        }
        let mut out: BTreeMap<Oid, (usize, Rc<Term>)> = BTreeMap::new();
        let offer =
            |out: &mut BTreeMap<Oid, (usize, Rc<Term>)>, t: Oid, size: usize, f: Rc<Term>| {
                if out.get(&t).is_none_or(|old| size < old.0) {
                    out.insert(t, (size, f));
                }
            };
        if budget > 0 {
            offer(&mut out, src, 1, Rc::new(Term::Id(src)));
            for (t, c) in self.constants(src).iter() {
                offer(&mut out, *t, 1, c.clone());
            }
            match self.nodes[src.0 as usize].clone() {
                Node::Tensor(a, b) if budget >= 3 => {
                    let left = self.closure(a, budget - 2);
                    for (ta, (sa, f)) in left.iter() {
                        let right = self.closure(b, budget - 1 - sa);
                        for (tb, (sb, g)) in right.iter() {
                            let t = self.node(Node::Tensor(*ta, *tb));
                            offer(
                                &mut out,
                                t,
                                1 + sa + sb,
                                Rc::new(Term::Tensor(f.clone(), g.clone())),
                            );
                        }
                    }
                }
                Node::App(h, a) if budget >= 2 => {
                    for (t, (sa, f)) in self.closure(a, budget - 1).iter() {
                        let t = self.node(Node::App(h, *t));
                        offer(&mut out, t, 1 + sa, Rc::new(Term::Apply(h, f.clone())));
                    }
                }
                _ => {}
            }
        }
        let out = Rc::new(out);
        self.atomic_memo.insert((src, budget), out.clone());
        out
    }

    /// Least terms of size at most `budget`, composites included.
    fn closure(&mut self, src: Oid, budget: usize) -> Found {
        if let Some(v) = self.memo.get(&(src, budget)) {
            return v.clone();
        }
        let mut best: BTreeMap<Oid, (usize, Rc<Term>)> = (*self.atomic(src, budget)).clone();
        let mut heap: BinaryHeap<Reverse<(usize, Oid)>> =
            best.iter().map(|(t, (s, _))| Reverse((*s, *t))).collect();
        let mut done = std::collections::BTreeSet::new();
        while let Some(Reverse((cost, x))) = heap.pop() {
            if !done.insert(x) || best[&x].0 < cost || cost + 2 > budget {
                continue;
            }
            let prefix = best[&x].1.clone();
            for (y, (sg, g)) in self.atomic(x, budget - cost - 1).iter() {
                let total = cost + 1 + sg;
                if total <= budget && best.get(y).is_none_or(|old| total < old.0) {
                    best.insert(*y, (total, Rc::new(Term::Comp(g.clone(), prefix.clone()))));
                    heap.push(Reverse((total, *y)));
                }
            }
        }
        let best = Rc::new(best);
        self.memo.insert((src, budget), best.clone());
        best
    }
}

/// A term of least size from `src` to `tgt` among those with at most
/// `max_size` nodes, if any. Nonempty exactly when
/// [`enumerate_arrows`] is, and uses the same constant parameters.
pub fn find_arrow(src: &Object, tgt: &Object, th: Theory, max_size: usize) -> Option<Arrow> {
    let mut r = Reach::new(th, functors_for(th, &[src, tgt]), free_objects(tgt));
    let (s, t) = (r.intern(src), r.intern(tgt));
    let found = r.closure(s, max_size);
    found.get(&t).map(|(_, f)| r.arrow(f))
}

/// [`find_arrow`] for every pair of a source and a target, with one shared
/// search. Constant parameters not fixed by a source range over the
/// subformulas of every target and `I`, so the answers coincide with
/// per-pair calls whenever the constants of `th` have no such parameters.
pub fn find_arrows(
    srcs: &[Object],
    tgts: &[Object],
    th: Theory,
    max_size: usize,
) -> Vec<Vec<Option<Arrow>>> {
    let refs: Vec<&Object> = srcs.iter().chain(tgts).collect();
    let mut free: Vec<Object> = tgts.iter().flat_map(free_objects).collect();
    free.sort_by_key(|o| (o.size(), o.to_string()));
    free.dedup();
    let mut r = Reach::new(th, functors_for(th, &refs), free);
    let tids: Vec<Oid> = tgts.iter().map(|t| r.intern(t)).collect();
    srcs.iter()
        .map(|src| {
            let s = r.intern(src);
            let found = r.closure(s, max_size);
            r.memo.remove(&(s, max_size));
            r.atomic_memo.clear();
            tids.iter()
                .map(|t| found.get(t).map(|(_, f)| r.arrow(f)))
                .collect()
        })
        .collect()
}
