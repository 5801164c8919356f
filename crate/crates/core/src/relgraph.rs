//! Relations between finite ordinals and the decomposition of a relation
//! into a coordinated triple of functions.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::terms::GraphCategory;

/// A relation `R ⊆ src × tgt`. Pairs are kept sorted in left-lexicographic
/// order without duplicates, so derived equality is set equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRelation")]
pub struct Relation {
    src: usize,
    tgt: usize,
    pairs: Vec<(usize, usize)>,
}

#[derive(Deserialize)]
struct RawRelation {
    src: usize,
    tgt: usize,
    pairs: Vec<(usize, usize)>,
}

impl TryFrom<RawRelation> for Relation {
    type Error = Error;

    fn try_from(raw: RawRelation) -> Result<Relation> {
        Relation::new(raw.src, raw.tgt, raw.pairs)
    }
}

/// `(x1, y1) <_r (x2, y2)` iff `y1 < y2`, or `y1 = y2` and `x1 < x2`.
pub fn right_lex_cmp(a: &(usize, usize), b: &(usize, usize)) -> Ordering {
    (a.1, a.0).cmp(&(b.1, b.0))
}

impl Relation {
    pub fn new(
        src: usize,
        tgt: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Relation> {
        let mut pairs: Vec<_> = pairs.into_iter().collect();
        if let Some(&(i, j)) = pairs.iter().find(|&&(i, j)| i >= src || j >= tgt) {
            return Err(Error::PairOutOfRange(i, j, src, tgt));
        }
        pairs.sort_unstable();
        pairs.dedup();
        Ok(Relation { src, tgt, pairs })
    }

    /// Builds a relation from pairs known to be in range.
    pub(crate) fn from_pairs(
        src: usize,
        tgt: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Relation {
        let mut pairs: Vec<_> = pairs.into_iter().collect();
        debug_assert!(pairs.iter().all(|&(i, j)| i < src && j < tgt));
        pairs.sort_unstable();
        pairs.dedup();
        Relation { src, tgt, pairs }
    }

    pub fn empty(src: usize, tgt: usize) -> Relation {
        Relation {
            src,
            tgt,
            pairs: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Relation {
        Relation {
            src: n,
            tgt: n,
            pairs: (0..n).map(|i| (i, i)).collect(),
        }
    }

    /// The graph of a function given by its table.
    pub fn from_function(tgt: usize, f: &[usize]) -> Relation {
        Relation::from_pairs(f.len(), tgt, f.iter().copied().enumerate())
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn tgt(&self) -> usize {
        self.tgt
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.pairs.binary_search(&(i, j)).is_ok()
    }

    /// Diagrammatic composition: first `self`, then `other`. In the usual
    /// right-to-left notation this is `other ∘ self`.
    pub fn compose(&self, other: &Relation) -> Result<Relation> {
        if self.tgt != other.src {
            return Err(Error::ArityMismatch {
                left: self.tgt,
                right: other.src,
            });
        }
        let mut out = Vec::new();
        for &(i, j) in &self.pairs {
            let start = other.pairs.partition_point(|&(a, _)| a < j);
            out.extend(
                other.pairs[start..]
                    .iter()
                    .take_while(|&&(a, _)| a == j)
                    .map(|&(_, k)| (i, k)),
            );
        }
        Ok(Relation::from_pairs(self.src, other.tgt, out))
    }

    pub fn tensor(&self, other: &Relation) -> Relation {
        let (n, m) = (self.src, self.tgt);
        Relation {
            src: n + other.src,
            tgt: m + other.tgt,
            pairs: self
                .pairs
                .iter()
                .copied()
                .chain(other.pairs.iter().map(|&(i, j)| (i + n, j + m)))
                .collect(),
        }
    }

    pub fn converse(&self) -> Relation {
        Relation::from_pairs(self.tgt, self.src, self.pairs.iter().map(|&(i, j)| (j, i)))
    }

    /// `{(0,0)}` together with `self` shifted by one in both coordinates:
    /// the graph of a functor applied to an arrow.
    pub fn under_functor(&self) -> Relation {
        Relation::identity(1).tensor(self)
    }

    /// The function table, if every source element has exactly one image.
    /// An empty source gives the empty function.
    pub fn as_function(&self) -> Option<Vec<usize>> {
        if self.pairs.len() != self.src {
            return None;
        }
        let mut table = Vec::with_capacity(self.src);
        for (expected, &(i, j)) in self.pairs.iter().enumerate() {
            if i != expected {
                return None;
            }
            table.push(j);
        }
        Some(table)
    }

    pub fn classify(&self) -> RelationKind {
        let f = self.as_function();
        let op = |t: &[usize]| t.windows(2).all(|w| w[0] <= w[1]);
        let is_bijection = f.as_ref().is_some_and(|t| {
            let mut seen = vec![false; self.tgt];
            t.len() == self.tgt && t.iter().all(|&j| !std::mem::replace(&mut seen[j], true))
        });
        RelationKind {
            is_function: f.is_some(),
            is_order_preserving_function: f.as_deref().is_some_and(op),
            is_bijection,
            is_converse_of_order_preserving_function: self
                .converse()
                .as_function()
                .as_deref()
                .is_some_and(op),
        }
    }

    pub fn member_of(&self, cat: GraphCategory) -> bool {
        let k = self.classify();
        match cat {
            GraphCategory::Delta => k.is_order_preserving_function,
            GraphCategory::DeltaOp => k.is_converse_of_order_preserving_function,
            GraphCategory::Fun => k.is_function,
            GraphCategory::Rel => true,
        }
    }

    pub fn left_lex_enum(&self) -> Vec<(usize, usize)> {
        self.pairs.clone()
    }

    pub fn right_lex_enum(&self) -> Vec<(usize, usize)> {
        let mut v = self.pairs.clone();
        v.sort_by(right_lex_cmp);
        v
    }

    /// Splits `R` into `ν, μ, β` with `R = μ ∘ β ∘ ν⁻¹`.
    pub fn decompose(&self) -> CoordinatedTriple {
        let left = self.left_lex_enum();
        let right = self.right_lex_enum();
        let beta = left
            .iter()
            .map(|p| {
                right
                    .binary_search_by(|q| right_lex_cmp(q, p))
                    .expect("same pair set")
            })
            .collect();
        CoordinatedTriple {
            k: left.len(),
            n: self.src,
            m: self.tgt,
            nu: left.iter().map(|p| p.0).collect(),
            mu: right.iter().map(|p| p.1).collect(),
            beta,
        }
    }

    /// The `<_l`-least pair lying in exactly one of the two relations.
    pub fn first_difference(&self, other: &Relation) -> Option<(usize, usize)> {
        let (mut a, mut b) = (self.pairs.iter().peekable(), other.pairs.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return None,
                (Some(&&p), None) | (None, Some(&&p)) => return Some(p),
                (Some(&&p), Some(&&q)) => match p.cmp(&q) {
                    Ordering::Less => return Some(p),
                    Ordering::Greater => return Some(q),
                    Ordering::Equal => {
                        a.next();
                        b.next();
                    }
                },
            }
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, (i, j)) in self.pairs.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "({i},{j})")?;
        }
        write!(f, "}} ⊆ {}x{}", self.src, self.tgt)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RelationKind {
    pub is_function: bool,
    pub is_order_preserving_function: bool,
    pub is_bijection: bool,
    pub is_converse_of_order_preserving_function: bool,
}

/// Functions `ν: k → n`, `μ: k → m` and a permutation `β` of `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoordinatedTriple {
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub nu: Vec<usize>,
    pub mu: Vec<usize>,
    pub beta: Vec<usize>,
}

impl CoordinatedTriple {
    pub fn identity(k: usize) -> CoordinatedTriple {
        let id: Vec<usize> = (0..k).collect();
        CoordinatedTriple {
            k,
            n: k,
            m: k,
            nu: id.clone(),
            mu: id.clone(),
            beta: id,
        }
    }

    /// Ranges and the permutation property.
    pub fn check_well_formed(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::MalformedTriple(msg));
        if self.nu.len() != self.k || self.mu.len() != self.k || self.beta.len() != self.k {
            return bad(format!("component lengths differ from k = {}", self.k));
        }
        if let Some(v) = self.nu.iter().find(|&&v| v >= self.n) {
            return bad(format!("nu value {v} is not below n = {}", self.n));
        }
        if let Some(v) = self.mu.iter().find(|&&v| v >= self.m) {
            return bad(format!("mu value {v} is not below m = {}", self.m));
        }
        let mut seen = vec![false; self.k];
        for &b in &self.beta {
            if b >= self.k || std::mem::replace(&mut seen[b], true) {
                return bad(format!("beta {:?} is not a permutation", self.beta));
            }
        }
        Ok(())
    }

    pub fn beta_inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.k];
        for (z, &b) in self.beta.iter().enumerate() {
            inv[b] = z;
        }
        inv
    }

    /// `l(z) = (ν(z), μ(β(z)))`.
    pub fn l_sequence(&self) -> Vec<(usize, usize)> {
        (0..self.k)
            .map(|z| (self.nu[z], self.mu[self.beta[z]]))
            .collect()
    }

    /// `r(z) = (ν(β⁻¹(z)), μ(z))`.
    pub fn r_sequence(&self) -> Vec<(usize, usize)> {
        let inv = self.beta_inverse();
        (0..self.k).map(|z| (self.nu[inv[z]], self.mu[z])).collect()
    }

    /// Condition (∗): `l` strictly increasing in `<_l` and `r` strictly
    /// increasing in `<_r`. Monotonicity of `ν` and `μ` is checked as well.
    pub fn is_coordinated(&self) -> Result<bool> {
        self.check_well_formed()?;
        let l_ok = self.l_sequence().windows(2).all(|w| w[0] < w[1]);
        let r_ok = self
            .r_sequence()
            .windows(2)
            .all(|w| right_lex_cmp(&w[0], &w[1]) == Ordering::Less);
        let mono =
            self.nu.windows(2).all(|w| w[0] <= w[1]) && self.mu.windows(2).all(|w| w[0] <= w[1]);
        Ok(l_ok && r_ok && mono)
    }

    /// `μ ∘ β ∘ ν⁻¹` as a relation `n → m`.
    pub fn recompose(&self) -> Result<Relation> {
        self.check_well_formed()?;
        Ok(Relation::from_pairs(self.n, self.m, self.l_sequence()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel(src: usize, tgt: usize, pairs: &[(usize, usize)]) -> Relation {
        Relation::new(src, tgt, pairs.iter().copied()).unwrap()
    }

    fn all_relations(n: usize, m: usize) -> impl Iterator<Item = Relation> {
        (0u32..1 << (n * m)).map(move |bits| {
            Relation::from_pairs(
                n,
                m,
                (0..n * m)
                    .filter(|b| bits >> b & 1 == 1)
                    .map(|b| (b / m, b % m)),
            )
        })
    }

    fn monotone_maps(k: usize, n: usize) -> Vec<Vec<usize>> {
        fn go(k: usize, n: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for v in lo..n {
                cur.push(v);
                go(k, n, v, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(k, n, 0, &mut Vec::new(), &mut out);
        out
    }

    fn permutations(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(k - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, k - 1);
                out.push(q);
            }
        }
        out
    }

    /// Independent relational composition straight from the definition.
    fn naive_compose(r: &Relation, s: &Relation) -> Relation {
        let mut out = Vec::new();
        for i in 0..r.src() {
            for k in 0..s.tgt() {
                if (0..r.tgt()).any(|j| r.contains(i, j) && s.contains(j, k)) {
                    out.push((i, k));
                }
            }
        }
        Relation::from_pairs(r.src(), s.tgt(), out)
    }

    #[test]
    fn compose_example() {
        let r = rel(2, 2, &[(0, 1), (1, 0)]);
        let s = rel(2, 1, &[(0, 0), (1, 0)]);
        assert_eq!(r.compose(&s).unwrap(), naive_compose(&r, &s));
        assert_eq!(r.compose(&s).unwrap(), rel(2, 1, &[(0, 0), (1, 0)]));
        assert_eq!(
            s.compose(&r),
            Err(Error::ArityMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn tensor_and_converse_examples() {
        assert_eq!(
            Relation::identity(1).tensor(&Relation::identity(2)),
            Relation::identity(3)
        );
        let c = Relation::empty(0, 1).converse();
        assert_eq!((c.src(), c.tgt(), c.len()), (1, 0, 0));
    }

    #[test]
    fn out_of_range_rejected() {
        assert_eq!(
            Relation::new(1, 1, [(0, 1)]),
            Err(Error::PairOutOfRange(0, 1, 1, 1))
        );
    }

    #[test]
    fn classify_examples() {
        let k = rel(2, 1, &[(0, 0), (1, 0)]).classify();
        assert!(k.is_function && k.is_order_preserving_function && !k.is_bijection);
        let k = rel(2, 2, &[(0, 1), (1, 0)]).classify();
        assert!(k.is_function && k.is_bijection && !k.is_order_preserving_function);
        let k = rel(1, 2, &[(0, 0), (0, 1)]).classify();
        assert!(!k.is_function && k.is_converse_of_order_preserving_function);
    }

    #[test]
    fn member_of_examples() {
        assert!(rel(2, 1, &[(0, 0), (1, 0)]).member_of(GraphCategory::Delta));
        let cross = rel(2, 2, &[(0, 1), (1, 0)]);
        assert!(!cross.member_of(GraphCategory::Delta));
        assert!(cross.member_of(GraphCategory::Fun));
        assert!(!Relation::empty(0, 1).member_of(GraphCategory::DeltaOp));
        assert!(Relation::empty(0, 3).member_of(GraphCategory::Delta));
        assert!(Relation::empty(2, 0).member_of(GraphCategory::Rel));
    }

    #[test]
    fn lex_enum_examples() {
        let r = rel(2, 2, &[(0, 0), (0, 1), (1, 0)]);
        assert_eq!(r.left_lex_enum(), vec![(0, 0), (0, 1), (1, 0)]);
        assert_eq!(r.right_lex_enum(), vec![(0, 0), (1, 0), (0, 1)]);
        assert!(Relation::empty(2, 2).left_lex_enum().is_empty());
        let id = Relation::identity(2);
        assert_eq!(id.left_lex_enum(), vec![(0, 0), (1, 1)]);
        assert_eq!(id.right_lex_enum(), vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn decompose_examples() {
        let r = rel(2, 2, &[(0, 0), (0, 1), (1, 0)]);
        let t = r.decompose();
        assert_eq!(
            (t.nu.as_slice(), t.mu.as_slice(), t.beta.as_slice()),
            (&[0, 0, 1][..], &[0, 0, 1][..], &[0, 2, 1][..])
        );
        // μ ∘ β ∘ ν⁻¹ computed as a chain of relations.
        let nu = Relation::from_function(t.n, &t.nu);
        let beta = Relation::from_function(t.k, &t.beta);
        let mu = Relation::from_function(t.m, &t.mu);
        assert_eq!(
            nu.converse().compose(&beta).unwrap().compose(&mu).unwrap(),
            r
        );

        assert_eq!(
            Relation::identity(2).decompose(),
            CoordinatedTriple::identity(2)
        );
        let t = Relation::empty(2, 3).decompose();
        assert_eq!((t.k, t.n, t.m), (0, 2, 3));
        assert!(t.nu.is_empty() && t.mu.is_empty() && t.beta.is_empty());
    }

    #[test]
    fn recompose_examples() {
        let t = CoordinatedTriple {
            k: 3,
            n: 2,
            m: 2,
            nu: vec![0, 0, 1],
            mu: vec![0, 0, 1],
            beta: vec![0, 2, 1],
        };
        assert_eq!(t.recompose().unwrap(), rel(2, 2, &[(0, 0), (0, 1), (1, 0)]));
        let t = CoordinatedTriple {
            k: 2,
            n: 2,
            m: 1,
            nu: vec![0, 1],
            mu: vec![0, 0],
            beta: vec![1, 0],
        };
        assert!(!t.is_coordinated().unwrap());
        assert!(CoordinatedTriple::identity(3).is_coordinated().unwrap());
        let bad = CoordinatedTriple {
            k: 2,
            n: 1,
            m: 1,
            nu: vec![0, 0],
            mu: vec![0, 0],
            beta: vec![0, 0],
        };
        assert!(matches!(bad.recompose(), Err(Error::MalformedTriple(_))));
    }

    #[test]
    fn round_trip_exhaustive_up_to_three() {
        for n in 0..=3 {
            for m in 0..=3 {
                for r in all_relations(n, m) {
                    let t = r.decompose();
                    assert!(t.is_coordinated().unwrap(), "{r}");
                    assert_eq!(t.recompose().unwrap(), r);
                    assert_eq!(t.l_sequence(), r.left_lex_enum());
                    assert_eq!(t.r_sequence(), r.right_lex_enum());
                }
            }
        }
    }

    #[test]
    fn uniqueness_over_all_coordinated_triples() {
        // Coordinated triples have monotone ν and μ, so enumerating only
        // those loses nothing.
        let mut count = 0;
        for k in 0..=4 {
            for n in 0..=4 {
                for m in 0..=4 {
                    for nu in monotone_maps(k, n) {
                        for mu in monotone_maps(k, m) {
                            for beta in permutations(k) {
                                let t = CoordinatedTriple {
                                    k,
                                    n,
                                    m,
                                    nu: nu.clone(),
                                    mu: mu.clone(),
                                    beta,
                                };
                                if t.is_coordinated().unwrap() {
                                    count += 1;
                                    assert_eq!(t.recompose().unwrap().decompose(), t);
                                }
                            }
                        }
                    }
                }
            }
        }
        assert!(count > 0);
    }

    #[test]
    fn compose_matches_definition_exhaustively() {
        for r in all_relations(2, 2) {
            for s in all_relations(2, 3) {
                assert_eq!(r.compose(&s).unwrap(), naive_compose(&r, &s));
            }
        }
    }

    fn arb_relation(n: usize, m: usize) -> impl Strategy<Value = Relation> {
        proptest::collection::vec(any::<bool>(), n * m).prop_map(move |bits| {
            Relation::from_pairs(
                n,
                m,
                bits.iter()
                    .enumerate()
                    .filter(|(_, b)| **b)
                    .map(|(x, _)| (x / m, x % m)),
            )
        })
    }

    fn arb_chain() -> impl Strategy<Value = (Relation, Relation, Relation)> {
        (0..=4usize, 0..=4usize, 0..=4usize, 0..=4usize).prop_flat_map(|(a, b, c, d)| {
            (arb_relation(a, b), arb_relation(b, c), arb_relation(c, d))
        })
    }

    proptest! {
        #[test]
        fn round_trip_size_four(r in (0..=4usize, 0..=4usize).prop_flat_map(|(n, m)| arb_relation(n, m))) {
            let t = r.decompose();
            prop_assert!(t.is_coordinated().unwrap());
            prop_assert_eq!(t.recompose().unwrap(), r.clone());
            prop_assert_eq!(t.l_sequence(), r.left_lex_enum());
            prop_assert_eq!(t.r_sequence(), r.right_lex_enum());
        }

        #[test]
        fn category_laws((r, s, u) in arb_chain()) {
            let left = r.compose(&s).unwrap().compose(&u).unwrap();
            let right = r.compose(&s.compose(&u).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            prop_assert_eq!(Relation::identity(r.src()).compose(&r).unwrap(), r.clone());
            prop_assert_eq!(r.compose(&Relation::identity(r.tgt())).unwrap(), r.clone());
            prop_assert_eq!(r.converse().converse(), r.clone());
            prop_assert_eq!(r.compose(&s).unwrap().converse(), s.converse().compose(&r.converse()).unwrap());
        }

        #[test]
        fn tensor_laws((r, s, _) in arb_chain(), (r2, s2, _) in arb_chain()) {
            prop_assert_eq!(r.tensor(&r2).tensor(&s2), r.tensor(&r2.tensor(&s2)));
            prop_assert_eq!(
                r.compose(&s).unwrap().tensor(&r2.compose(&s2).unwrap()),
                r.tensor(&r2).compose(&s.tensor(&s2)).unwrap()
            );
        }

        #[test]
        fn classify_consistent(r in (0..=4usize, 0..=4usize).prop_flat_map(|(n, m)| arb_relation(n, m))) {
            let k = r.classify();
            prop_assert!(!k.is_order_preserving_function || k.is_function);
            prop_assert!(!k.is_bijection || k.is_function);
            prop_assert_eq!(k.is_converse_of_order_preserving_function, r.converse().classify().is_order_preserving_function);
        }

        #[test]
        fn first_difference_is_least(r in arb_relation(3, 3), s in arb_relation(3, 3)) {
            let sym: Vec<_> = (0..3).flat_map(|i| (0..3).map(move |j| (i, j)))
                .filter(|&(i, j)| r.contains(i, j) != s.contains(i, j)).collect();
            prop_assert_eq!(r.first_difference(&s), sym.first().copied());
        }
    }

    #[test]
    fn serde_wire_format() {
        let r = rel(2, 2, &[(1, 0), (0, 1)]);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"src":2,"tgt":2,"pairs":[[0,1],[1,0]]}"#);
        assert_eq!(serde_json::from_str::<Relation>(&s).unwrap(), r);
        assert!(serde_json::from_str::<Relation>(r#"{"src":1,"tgt":1,"pairs":[[0,1]]}"#).is_err());
    }
}
