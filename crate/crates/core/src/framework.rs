//! Approximation frameworks: a space of approximants together with a space of
//! lower bounds (ALBs), a space of upper bounds (AUBs), a composition order `≼`
//! over both, and decompose/recompose maps linking them.
//!
//! Approximants are handled through their canonical decomposition
//! `(alb, aub)`. A pair is canonical when recomposing and decomposing it gives
//! the pair back; [`ApproximationFramework::recompose`] always returns a
//! canonical pair, possibly more precise than its inputs. This keeps spaces
//! usable whose approximant set is far too large to list.

use std::fmt::Debug;
use std::hash::Hash;

use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::order::{Elem, ElemSet, FinitePoset};

/// Default cap on the number of approximants materialized for exhaustive checks.
pub const DEFAULT_MAX_APPROXIMANTS: usize = 20_000;

/// Largest approximated set expanded into member lists in JSON output.
pub const MEMBER_LIST_LIMIT: usize = 64;

/// An approximant in canonical `(alb, aub)` form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Approximant<L, U> {
    alb: L,
    aub: U,
}

impl<L, U> Approximant<L, U> {
    /// Wraps a pair that the caller knows to be canonical for its framework.
    pub fn new(alb: L, aub: U) -> Self {
        Approximant { alb, aub }
    }

    pub fn alb(&self) -> &L {
        &self.alb
    }

    pub fn aub(&self) -> &U {
        &self.aub
    }

    pub fn into_parts(self) -> (L, U) {
        (self.alb, self.aub)
    }
}

/// Approximant type of a framework.
pub type Approx<F> =
    Approximant<<F as ApproximationFramework>::Low, <F as ApproximationFramework>::Up>;

/// An element of `L ∪ U`, tagged with the side it belongs to.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound<L, U> {
    Low(L),
    Up(U),
}

/// The interface every approximation space implements.
///
/// `≼` over `L ∪ U` is given by three homogeneous/heterogeneous relations;
/// comparisons from `U` down into `L` are false unless a framework says
/// otherwise through [`ApproximationFramework::up_low_leq`].
pub trait ApproximationFramework {
    type Low: Clone + Eq + Ord + Hash + Debug;
    type Up: Clone + Eq + Ord + Hash + Debug;

    /// Short name used in reports (`interval`, `flower`).
    fn kind(&self) -> &'static str;

    /// The exact space being approximated.
    fn exact(&self) -> &FinitePoset;

    fn low_leq(&self, a: &Self::Low, b: &Self::Low) -> bool;
    fn up_leq(&self, a: &Self::Up, b: &Self::Up) -> bool;
    fn low_up_leq(&self, l: &Self::Low, u: &Self::Up) -> bool;
    fn up_low_leq(&self, _u: &Self::Up, _l: &Self::Low) -> bool {
        false
    }

    /// Least element of `L ∪ U`; it lives in `L`.
    fn low_bottom(&self) -> Self::Low;
    /// Greatest element of `L ∪ U`; it lives in `U`.
    fn up_top(&self) -> Self::Up;
    /// Least `u ∈ U` with `l ≼ u`. Starting point of the upper stable-revision map.
    fn up_least_above(&self, l: &Self::Low) -> Self::Up;

    fn low_lub(&self, s: &[Self::Low]) -> Option<Self::Low>;
    fn up_glb(&self, s: &[Self::Up]) -> Self::Up;

    /// `(l, u)`, defined when `l ≼ u`; returns the canonical form.
    fn recompose(&self, l: &Self::Low, u: &Self::Up) -> Option<Approx<Self>>;

    /// The precision order `≤p`.
    fn precision_leq(&self, x: &Approx<Self>, y: &Approx<Self>) -> bool;

    /// `x ∼ e`
    fn approximates(&self, x: &Approx<Self>, e: Elem) -> bool;

    /// All exact elements approximated by `x`.
    fn approximated(&self, x: &Approx<Self>) -> ElemSet {
        let exact = self.exact();
        ElemSet::from_elems(exact.len(), exact.elements().filter(|&e| self.approximates(x, e)))
    }

    /// The most precise approximant approximating every element of `s`.
    fn cover(&self, s: &ElemSet) -> Option<Approx<Self>>;

    /// The exact approximant approximating exactly `e`.
    fn exact_approximant(&self, e: Elem) -> Approx<Self> {
        let s = ElemSet::singleton(self.exact().len(), e);
        self.cover(&s).expect("singletons are always covered")
    }

    fn is_exact(&self, x: &Approx<Self>) -> bool;

    /// Least upper bound in `⟨𝔄, ≤p⟩`; `None` when it does not exist.
    fn lub_approximants(&self, s: &[Approx<Self>]) -> Option<Approx<Self>>;

    fn enumerate_low(&self) -> Option<Vec<Self::Low>>;
    fn enumerate_up(&self) -> Option<Vec<Self::Up>>;
    fn enumerate_approximants(&self) -> Option<Vec<Approx<Self>>>;

    fn sample_approximant(&self, rng: &mut ChaCha8Rng) -> Approx<Self>;
    /// A random `z` with `x ≤p z ≤p y`; requires `x ≤p y`.
    fn sample_between(&self, x: &Approx<Self>, y: &Approx<Self>, rng: &mut ChaCha8Rng) -> Approx<Self>;
    /// A random `u` with `lo ≼ u ≼ hi`; requires `lo ≼ hi`.
    fn sample_up_between(&self, lo: &Self::Up, hi: &Self::Up, rng: &mut ChaCha8Rng) -> Self::Up;

    fn format_low(&self, l: &Self::Low) -> String;
    fn format_up(&self, u: &Self::Up) -> String;
    fn format_approximant(&self, x: &Approx<Self>) -> String;

    fn low_json(&self, l: &Self::Low) -> Value {
        Value::String(self.format_low(l))
    }

    fn up_json(&self, u: &Self::Up) -> Value {
        Value::String(self.format_up(u))
    }

    /// `{"alb": .., "aub": .., "members": [..]}`; members only when small.
    fn approximant_json(&self, x: &Approx<Self>) -> Value {
        let mut v = json!({
            "alb": self.low_json(x.alb()),
            "aub": self.up_json(x.aub()),
            "exact": self.is_exact(x),
        });
        let members = self.approximated(x);
        if members.len() <= MEMBER_LIST_LIMIT {
            v["members"] = json!(self.exact().sorted_names(&members));
        } else {
            v["member_count"] = json!(members.len());
        }
        v
    }

    /// `(⊥, ⊤)`, the least precise approximant.
    fn bottom(&self) -> Approx<Self> {
        self.recompose(&self.low_bottom(), &self.up_top())
            .expect("bottom of L is below top of U")
    }

    /// `≼` on the tagged union `L ∪ U`.
    fn bound_leq(&self, a: &Bound<Self::Low, Self::Up>, b: &Bound<Self::Low, Self::Up>) -> bool {
        match (a, b) {
            (Bound::Low(x), Bound::Low(y)) => self.low_leq(x, y),
            (Bound::Up(x), Bound::Up(y)) => self.up_leq(x, y),
            (Bound::Low(x), Bound::Up(y)) => self.low_up_leq(x, y),
            (Bound::Up(x), Bound::Low(y)) => self.up_low_leq(x, y),
        }
    }

    fn strictly_more_precise(&self, x: &Approx<Self>, y: &Approx<Self>) -> bool {
        x != y && self.precision_leq(x, y)
    }
}

/// Approximants to quantify over: the whole space when it can be listed,
/// otherwise a seeded random sample.
#[derive(Clone, Debug)]
pub struct Pool<F: ApproximationFramework> {
    pub items: Vec<Approx<F>>,
    pub exhaustive: bool,
}

impl<F: ApproximationFramework> Pool<F> {
    pub fn new(fw: &F, samples: usize, seed: u64) -> Self {
        match fw.enumerate_approximants() {
            Some(items) => Pool { items, exhaustive: true },
            None => {
                let mut rng = <ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
                let mut items = vec![fw.bottom()];
                items.extend((0..samples).map(|_| fw.sample_approximant(&mut rng)));
                items.extend(fw.exact().elements().take(samples).map(|e| fw.exact_approximant(e)));
                items.sort();
                items.dedup();
                Pool { items, exhaustive: false }
            }
        }
    }
}
