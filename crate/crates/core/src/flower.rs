//! Flowers: nonempty convex subsets of a bounded-complete cpo that contain
//! their own glb.
//!
//! A flower decomposes into its glb (the ALB, an exact element) and its set of
//! maximal elements (the AUB, a nonempty antichain). Recomposing `(l, U)`
//! gives `↑l ∩ ↓U`. The composition order compares bounds by their lower
//! closures: `b₁ ≼ b₂` iff `↓b₁ ⊆ ↓b₂`, restricted to pairs where `b₁` is an
//! ALB or `b₂` is an AUB.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::framework::{Approximant, ApproximationFramework, DEFAULT_MAX_APPROXIMANTS};
use crate::order::{Elem, ElemSet, FinitePoset};
use crate::{Error, Result};

/// Flowers are only listed exhaustively over exact spaces this small.
pub const MAX_ENUMERABLE_EXACT: usize = 12;

pub type Flower = Approximant<Elem, ElemSet>;

#[derive(Clone, Debug)]
pub struct FlowerFramework {
    exact: Arc<FinitePoset>,
    bottom: Elem,
    top: ElemSet,
    materialized: Option<Vec<Flower>>,
    max_approximants: usize,
}

impl FlowerFramework {
    /// Builds the framework; with `enumerate`, the flower set is listed up front
    /// when the exact space is small enough.
    pub fn new(exact: Arc<FinitePoset>, enumerate: bool) -> Result<Self> {
        ensure_bounded_complete(&exact)?;
        let bottom = exact.least().expect("bounded-complete cpo");
        let top = exact.max_set(&exact.all());
        let mut fw = FlowerFramework {
            exact,
            bottom,
            top,
            materialized: None,
            max_approximants: DEFAULT_MAX_APPROXIMANTS,
        };
        if enumerate {
            fw.materialized = fw.list_flowers();
        }
        Ok(fw)
    }

    pub fn with_max_approximants(mut self, cap: usize) -> Self {
        self.max_approximants = cap;
        if self.materialized.is_some() {
            self.materialized = self.list_flowers();
        }
        self
    }

    pub fn exact_arc(&self) -> &Arc<FinitePoset> {
        &self.exact
    }

    /// The flower whose members are `s`, if `s` is a flower.
    pub fn flower_from_members(&self, s: &ElemSet) -> Option<Flower> {
        is_flower(&self.exact, s).then(|| self.cover(s).expect("nonempty"))
    }

    pub fn flower_named<S: AsRef<str>>(&self, members: &[S]) -> Result<Flower> {
        let s = self.exact.set_of(members)?;
        self.flower_from_members(&s).ok_or_else(|| {
            Error::Precondition(format!("{} is not a flower", self.exact.format_set(&s)))
        })
    }

    pub fn antichain_named<S: AsRef<str>>(&self, members: &[S]) -> Result<ElemSet> {
        let s = self.exact.set_of(members)?;
        if s.is_empty() || !self.exact.is_antichain(&s) {
            return Err(Error::Precondition(format!(
                "{} is not a nonempty antichain",
                self.exact.format_set(&s)
            )));
        }
        Ok(s)
    }

    /// `⊔` in `U`: the maximal elements of the union of lower closures.
    pub fn up_lub(&self, s: &[ElemSet]) -> ElemSet {
        let mut down = self.exact.empty_set();
        for u in s {
            down.union_with(&self.exact.lower_closure(u));
        }
        if down.is_empty() {
            return ElemSet::singleton(self.exact.len(), self.bottom);
        }
        self.exact.max_set(&down)
    }

    fn antichains_above(&self, l: Elem) -> Vec<ElemSet> {
        let above: Vec<Elem> = self.exact.up_set(l).iter().collect();
        let mut out = Vec::new();
        for mask in 1u64..(1u64 << above.len()) {
            let s = ElemSet::from_elems(
                self.exact.len(),
                above.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e),
            );
            if self.exact.is_antichain(&s) {
                out.push(s);
            }
        }
        out
    }

    fn list_flowers(&self) -> Option<Vec<Flower>> {
        if self.exact.len() > MAX_ENUMERABLE_EXACT {
            return None;
        }
        let mut out = Vec::new();
        for l in self.exact.elements() {
            for u in self.antichains_above(l) {
                out.push(Approximant::new(l, u));
                if out.len() > self.max_approximants {
                    return None;
                }
            }
        }
        Some(out)
    }
}

fn ensure_bounded_complete(exact: &FinitePoset) -> Result<()> {
    if exact.least().is_none() {
        return Err(Error::Precondition(
            "exact space is not a cpo: it has no least element".into(),
        ));
    }
    for x in exact.elements() {
        for y in exact.elements().skip(x.index() + 1) {
            if exact.glb2(x, y).is_none() {
                return Err(Error::Precondition(format!(
                    "exact space is not bounded-complete: {{{}, {}}} has no glb",
                    exact.name(x),
                    exact.name(y)
                )));
            }
        }
    }
    Ok(())
}

/// Whether `s` is a flower: nonempty, convex, and containing its glb.
pub fn is_flower(exact: &FinitePoset, s: &ElemSet) -> bool {
    !s.is_empty() && exact.is_convex(s) && exact.glb(s).is_some_and(|g| s.contains(g))
}

/// The least flower containing the nonempty set `s`:
/// `{x | glb(s) ≤ x ≤ m for some maximal m of s}`.
pub fn flower_closure(exact: &FinitePoset, s: &ElemSet) -> Option<ElemSet> {
    if s.is_empty() {
        return None;
    }
    let g = exact.glb(s)?;
    Some(exact.up_set(g).intersection(&exact.lower_closure(&exact.max_set(s))))
}

impl ApproximationFramework for FlowerFramework {
    type Low = Elem;
    type Up = ElemSet;

    fn kind(&self) -> &'static str {
        "flower"
    }

    fn exact(&self) -> &FinitePoset {
        &self.exact
    }

    fn low_leq(&self, a: &Elem, b: &Elem) -> bool {
        self.exact.leq(*a, *b)
    }

    fn up_leq(&self, a: &ElemSet, b: &ElemSet) -> bool {
        // ↓a ⊆ ↓b iff every member of a lies below some member of b
        let down_b = self.exact.lower_closure(b);
        a.is_subset(&down_b)
    }

    fn low_up_leq(&self, l: &Elem, u: &ElemSet) -> bool {
        !self.exact.up_set(*l).is_disjoint(u)
    }

    fn low_bottom(&self) -> Elem {
        self.bottom
    }

    fn up_top(&self) -> ElemSet {
        self.top.clone()
    }

    fn up_least_above(&self, l: &Elem) -> ElemSet {
        ElemSet::singleton(self.exact.len(), *l)
    }

    fn low_lub(&self, s: &[Elem]) -> Option<Elem> {
        self.exact.lub(&ElemSet::from_elems(self.exact.len(), s.iter().copied()))
    }

    fn up_glb(&self, s: &[ElemSet]) -> ElemSet {
        let mut down = self.exact.all();
        for u in s {
            down.intersect_with(&self.exact.lower_closure(u));
        }
        self.exact.max_set(&down)
    }

    fn recompose(&self, l: &Elem, u: &ElemSet) -> Option<Flower> {
        if !self.low_up_leq(l, u) {
            return None;
        }
        let members = self.exact.up_set(*l).intersection(&self.exact.lower_closure(u));
        Some(Approximant::new(*l, self.exact.max_set(&members)))
    }

    fn precision_leq(&self, x: &Flower, y: &Flower) -> bool {
        self.exact.leq(*x.alb(), *y.alb()) && self.up_leq(y.aub(), x.aub())
    }

    fn approximates(&self, x: &Flower, e: Elem) -> bool {
        self.exact.leq(*x.alb(), e) && self.low_up_leq(&e, x.aub())
    }

    fn approximated(&self, x: &Flower) -> ElemSet {
        self.exact.up_set(*x.alb()).intersection(&self.exact.lower_closure(x.aub()))
    }

    fn cover(&self, s: &ElemSet) -> Option<Flower> {
        if s.is_empty() {
            return None;
        }
        let g = self.exact.glb(s)?;
        Some(Approximant::new(g, self.exact.max_set(s)))
    }

    fn is_exact(&self, x: &Flower) -> bool {
        x.aub().as_singleton() == Some(*x.alb())
    }

    fn lub_approximants(&self, s: &[Flower]) -> Option<Flower> {
        let mut common = self.exact.all();
        for x in s {
            common.intersect_with(&self.approximated(x));
        }
        self.flower_from_members(&common)
    }

    fn enumerate_low(&self) -> Option<Vec<Elem>> {
        Some(self.exact.elements().collect())
    }

    fn enumerate_up(&self) -> Option<Vec<ElemSet>> {
        if self.exact.len() > MAX_ENUMERABLE_EXACT {
            return None;
        }
        Some(self.antichains_above(self.bottom))
    }

    fn enumerate_approximants(&self) -> Option<Vec<Flower>> {
        self.materialized.clone().or_else(|| self.list_flowers())
    }

    fn sample_approximant(&self, rng: &mut ChaCha8Rng) -> Flower {
        let l = Elem::new(rng.random_range(0..self.exact.len()));
        let mut picked = self.exact.empty_set();
        for e in self.exact.up_set(l).iter() {
            if rng.random_bool(0.5) {
                picked.insert(e);
            }
        }
        if picked.is_empty() {
            picked.insert(l);
        }
        self.recompose(&l, &self.exact.max_set(&picked)).expect("members lie above l")
    }

    fn sample_between(&self, x: &Flower, y: &Flower, rng: &mut ChaCha8Rng) -> Flower {
        let lows = self.exact.up_set(*x.alb()).intersection(self.exact.down_set(*y.alb()));
        let l = pick(&lows, rng);
        let mut picked = y.aub().clone();
        let room = self.approximated(x).intersection(self.exact.up_set(l));
        for e in room.iter() {
            if rng.random_bool(0.3) {
                picked.insert(e);
            }
        }
        self.recompose(&l, &self.exact.max_set(&picked)).expect("y's AUB lies above l")
    }

    fn sample_up_between(&self, lo: &ElemSet, hi: &ElemSet, rng: &mut ChaCha8Rng) -> ElemSet {
        let mut picked = lo.clone();
        for e in self.exact.lower_closure(hi).iter() {
            if rng.random_bool(0.3) {
                picked.insert(e);
            }
        }
        self.exact.max_set(&picked)
    }

    fn format_low(&self, l: &Elem) -> String {
        self.exact.name(*l).to_string()
    }

    fn format_up(&self, u: &ElemSet) -> String {
        self.exact.format_set(u)
    }

    fn format_approximant(&self, x: &Flower) -> String {
        format!("⟨{} | {}⟩", self.exact.name(*x.alb()), self.exact.format_set(x.aub()))
    }

    fn up_json(&self, u: &ElemSet) -> Value {
        json!(self.exact.sorted_names(u))
    }
}

fn pick(set: &ElemSet, rng: &mut ChaCha8Rng) -> Elem {
    let n = set.len();
    set.iter().nth(rng.random_range(0..n)).expect("sampling from a nonempty set")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framework::Bound;

    fn vee() -> Arc<FinitePoset> {
        Arc::new(FinitePoset::from_hasse(&["bot", "a", "b"], &[("bot", "a"), ("bot", "b")]).unwrap())
    }

    fn member_names(fw: &FlowerFramework, x: &Flower) -> String {
        fw.exact().format_set(&fw.approximated(x))
    }

    #[test]
    fn vee_flowers() {
        let fw = FlowerFramework::new(vee(), true).unwrap();
        let mut flowers: Vec<String> =
            fw.enumerate_approximants().unwrap().iter().map(|x| member_names(&fw, x)).collect();
        flowers.sort();
        let mut expected = vec!["{a, bot}", "{a}", "{b, bot}", "{b}", "{bot}", "{a, b, bot}"];
        expected.sort();
        assert_eq!(flowers, expected);

        let mut ups: Vec<String> =
            fw.enumerate_up().unwrap().iter().map(|u| fw.format_up(u)).collect();
        ups.sort();
        assert_eq!(ups, vec!["{a, b}", "{a}", "{bot}", "{b}"]);
    }

    #[test]
    fn recomposition_gains_precision() {
        let fw = FlowerFramework::new(vee(), false).unwrap();
        let a = fw.exact().elem("a").unwrap();
        let ab = fw.antichain_named(&["a", "b"]).unwrap();
        let x = fw.recompose(&a, &ab).unwrap();
        assert_eq!(member_names(&fw, &x), "{a}");
        assert_eq!(fw.format_up(x.aub()), "{a}");
        assert_eq!(fw.format_approximant(&x), "⟨a | {a}⟩");
        let b = fw.exact().elem("b").unwrap();
        assert!(fw.recompose(&b, &fw.antichain_named(&["a"]).unwrap()).is_none());
    }

    #[test]
    fn composition_order_chain() {
        let fw = FlowerFramework::new(vee(), false).unwrap();
        let e = |n: &str| fw.exact().elem(n).unwrap();
        let bot = Bound::Low(e("bot"));
        let a = Bound::Low(e("a"));
        let single_a = Bound::Up(fw.antichain_named(&["a"]).unwrap());
        let ab = Bound::Up(fw.antichain_named(&["a", "b"]).unwrap());
        assert!(fw.bound_leq(&bot, &a));
        assert!(fw.bound_leq(&a, &single_a));
        assert!(fw.bound_leq(&single_a, &ab));
        assert!(!fw.bound_leq(&ab, &single_a));
        // ↓{a} = ↓a, but an AUB is never below an ALB
        assert!(!fw.bound_leq(&single_a, &a));
    }

    #[test]
    fn closure_is_least_containing_flower() {
        let p = vee();
        let s = p.set_of(&["a", "b"]).unwrap();
        let closure = flower_closure(&p, &s).unwrap();
        assert_eq!(p.format_set(&closure), "{a, b, bot}");
        // brute force: the smallest flower containing s among all subsets
        let best = (1u32..8)
            .map(|m| ElemSet::from_elems(3, (0..3).filter(|i| m >> i & 1 == 1).map(Elem::new)))
            .filter(|c| is_flower(&p, c) && s.is_subset(c))
            .min_by_key(|c| c.len())
            .unwrap();
        assert_eq!(best, closure);

        let flower = p.set_of(&["bot", "a"]).unwrap();
        assert_eq!(flower_closure(&p, &flower).unwrap(), flower);
        let single = p.set_of(&["b"]).unwrap();
        assert_eq!(flower_closure(&p, &single).unwrap(), single);
        assert!(flower_closure(&p, &p.empty_set()).is_none());
    }

    #[test]
    fn exact_and_lub() {
        let fw = FlowerFramework::new(vee(), true).unwrap();
        let single = fw.flower_named(&["a"]).unwrap();
        let all = fw.flower_named(&["bot", "a", "b"]).unwrap();
        let bot_a = fw.flower_named(&["bot", "a"]).unwrap();
        assert!(fw.is_exact(&single));
        assert!(!fw.is_exact(&all));
        assert_eq!(fw.lub_approximants(&[all.clone(), bot_a.clone()]), Some(bot_a.clone()));
        let bot_b = fw.flower_named(&["bot", "b"]).unwrap();
        assert_eq!(member_names(&fw, &fw.lub_approximants(&[bot_a, bot_b]).unwrap()), "{bot}");
        assert_eq!(fw.up_glb(&[]), fw.up_top());
        assert!(fw.flower_named(&["a", "b"]).is_err());
    }

    #[test]
    fn upper_space_is_a_lattice_of_antichains() {
        let fw = FlowerFramework::new(vee(), false).unwrap();
        let a = fw.antichain_named(&["a"]).unwrap();
        let b = fw.antichain_named(&["b"]).unwrap();
        assert_eq!(fw.format_up(&fw.up_glb(&[a.clone(), b.clone()])), "{bot}");
        assert_eq!(fw.format_up(&fw.up_lub(&[a, b])), "{a, b}");
        assert_eq!(fw.format_up(&fw.up_lub(&[])), "{bot}");
    }

    #[test]
    fn requires_bounded_completeness() {
        let bowtie = FinitePoset::from_hasse(
            &["bot", "c", "d", "a", "b"],
            &[("bot", "c"), ("bot", "d"), ("c", "a"), ("c", "b"), ("d", "a"), ("d", "b")],
        )
        .unwrap();
        let err = FlowerFramework::new(Arc::new(bowtie), false).unwrap_err();
        assert!(err.to_string().contains("{a, b} has no glb"), "{err}");
    }
}
