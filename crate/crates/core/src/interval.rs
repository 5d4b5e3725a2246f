//! Consistent pairs `(x₁, x₂)` with `x₁ ≤ x₂` over a complete lattice.

use std::sync::Arc;

use rand::seq::IteratorRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::framework::{Approximant, ApproximationFramework, DEFAULT_MAX_APPROXIMANTS};
use crate::order::{Elem, ElemSet, FinitePoset};
use crate::{Error, Result};

/// Interval approximation framework. `L` and `U` are both copies of the exact
/// lattice and an approximant `[l, u]` stands for every `y` with `l ≤ y ≤ u`.
#[derive(Clone, Debug)]
pub struct IntervalFramework {
    exact: Arc<FinitePoset>,
    bottom: Elem,
    top: Elem,
    max_approximants: usize,
}

pub type Interval = Approximant<Elem, Elem>;

impl IntervalFramework {
    pub fn new(exact: Arc<FinitePoset>) -> Result<Self> {
        ensure_complete_lattice(&exact)?;
        let bottom = exact.least().expect("complete lattice");
        let top = exact.greatest().expect("complete lattice");
        Ok(IntervalFramework { exact, bottom, top, max_approximants: DEFAULT_MAX_APPROXIMANTS })
    }

    pub fn with_max_approximants(mut self, cap: usize) -> Self {
        self.max_approximants = cap;
        self
    }

    pub fn exact_arc(&self) -> &Arc<FinitePoset> {
        &self.exact
    }

    /// `[l, u]`, if `l ≤ u`.
    pub fn interval(&self, low: Elem, high: Elem) -> Option<Interval> {
        self.recompose(&low, &high)
    }

    pub fn interval_named(&self, low: &str, high: &str) -> Result<Interval> {
        let (l, u) = (self.exact.elem(low)?, self.exact.elem(high)?);
        self.interval(l, u)
            .ok_or_else(|| Error::Precondition(format!("[{low}, {high}] is not consistent")))
    }

    /// The truth order `≤t`: both bounds move up.
    pub fn truth_leq(&self, x: &Interval, y: &Interval) -> bool {
        self.exact.leq(*x.alb(), *y.alb()) && self.exact.leq(*x.aub(), *y.aub())
    }

    fn count_approximants(&self) -> usize {
        self.exact.elements().map(|l| self.exact.up_set(l).len()).sum()
    }
}

fn ensure_complete_lattice(exact: &FinitePoset) -> Result<()> {
    let fail = |what: String| {
        Err(Error::Precondition(format!("exact space is not a complete lattice: {what}")))
    };
    if exact.is_empty() {
        return fail("it is empty".into());
    }
    if exact.least().is_none() {
        return fail("lub of the empty set (a least element) is missing".into());
    }
    if exact.greatest().is_none() {
        return fail("glb of the empty set (a greatest element) is missing".into());
    }
    for x in exact.elements() {
        for y in exact.elements().skip(x.index() + 1) {
            if exact.glb2(x, y).is_none() {
                return fail(format!("{{{}, {}}} has no glb", exact.name(x), exact.name(y)));
            }
        }
    }
    Ok(())
}

fn random_in(set: &ElemSet, rng: &mut ChaCha8Rng) -> Elem {
    set.iter().choose(rng).expect("sampling from a nonempty set")
}

impl ApproximationFramework for IntervalFramework {
    type Low = Elem;
    type Up = Elem;

    fn kind(&self) -> &'static str {
        "interval"
    }

    fn exact(&self) -> &FinitePoset {
        &self.exact
    }

    fn low_leq(&self, a: &Elem, b: &Elem) -> bool {
        self.exact.leq(*a, *b)
    }

    fn up_leq(&self, a: &Elem, b: &Elem) -> bool {
        self.exact.leq(*a, *b)
    }

    fn low_up_leq(&self, l: &Elem, u: &Elem) -> bool {
        self.exact.leq(*l, *u)
    }

    fn low_bottom(&self) -> Elem {
        self.bottom
    }

    fn up_top(&self) -> Elem {
        self.top
    }

    fn up_least_above(&self, l: &Elem) -> Elem {
        *l
    }

    fn low_lub(&self, s: &[Elem]) -> Option<Elem> {
        self.exact.lub(&ElemSet::from_elems(self.exact.len(), s.iter().copied()))
    }

    fn up_glb(&self, s: &[Elem]) -> Elem {
        self.exact
            .glb(&ElemSet::from_elems(self.exact.len(), s.iter().copied()))
            .expect("complete lattice")
    }

    fn recompose(&self, l: &Elem, u: &Elem) -> Option<Interval> {
        self.exact.leq(*l, *u).then(|| Approximant::new(*l, *u))
    }

    fn precision_leq(&self, x: &Interval, y: &Interval) -> bool {
        self.exact.leq(*x.alb(), *y.alb()) && self.exact.leq(*y.aub(), *x.aub())
    }

    fn approximates(&self, x: &Interval, e: Elem) -> bool {
        self.exact.leq(*x.alb(), e) && self.exact.leq(e, *x.aub())
    }

    fn approximated(&self, x: &Interval) -> ElemSet {
        self.exact.up_set(*x.alb()).intersection(self.exact.down_set(*x.aub()))
    }

    fn cover(&self, s: &ElemSet) -> Option<Interval> {
        if s.is_empty() {
            return None;
        }
        let low = self.exact.glb(s)?;
        let high = self.exact.lub(s)?;
        Some(Approximant::new(low, high))
    }

    fn is_exact(&self, x: &Interval) -> bool {
        x.alb() == x.aub()
    }

    fn lub_approximants(&self, s: &[Interval]) -> Option<Interval> {
        let lows: Vec<Elem> = s.iter().map(|x| *x.alb()).collect();
        let highs: Vec<Elem> = s.iter().map(|x| *x.aub()).collect();
        let low = self.low_lub(&lows)?;
        self.recompose(&low, &self.up_glb(&highs))
    }

    fn enumerate_low(&self) -> Option<Vec<Elem>> {
        Some(self.exact.elements().collect())
    }

    fn enumerate_up(&self) -> Option<Vec<Elem>> {
        Some(self.exact.elements().collect())
    }

    fn enumerate_approximants(&self) -> Option<Vec<Interval>> {
        if self.count_approximants() > self.max_approximants {
            return None;
        }
        let mut out = Vec::new();
        for l in self.exact.elements() {
            for u in self.exact.up_set(l).iter() {
                out.push(Approximant::new(l, u));
            }
        }
        Some(out)
    }

    fn sample_approximant(&self, rng: &mut ChaCha8Rng) -> Interval {
        let l = Elem::new(rng.random_range(0..self.exact.len()));
        let u = random_in(self.exact.up_set(l), rng);
        Approximant::new(l, u)
    }

    fn sample_between(&self, x: &Interval, y: &Interval, rng: &mut ChaCha8Rng) -> Interval {
        let lows = self.exact.up_set(*x.alb()).intersection(self.exact.down_set(*y.alb()));
        let highs = self.exact.up_set(*y.aub()).intersection(self.exact.down_set(*x.aub()));
        Approximant::new(random_in(&lows, rng), random_in(&highs, rng))
    }

    fn sample_up_between(&self, lo: &Elem, hi: &Elem, rng: &mut ChaCha8Rng) -> Elem {
        random_in(&self.exact.up_set(*lo).intersection(self.exact.down_set(*hi)), rng)
    }

    fn format_low(&self, l: &Elem) -> String {
        self.exact.name(*l).to_string()
    }

    fn format_up(&self, u: &Elem) -> String {
        self.exact.name(*u).to_string()
    }

    fn format_approximant(&self, x: &Interval) -> String {
        format!("[{}, {}]", self.exact.name(*x.alb()), self.exact.name(*x.aub()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{powerset_lattice, SetOrder};

    fn chain() -> Arc<FinitePoset> {
        Arc::new(FinitePoset::from_hasse(&["0", "1"], &[("0", "1")]).unwrap())
    }

    #[test]
    fn two_chain_has_three_intervals() {
        let fw = IntervalFramework::new(chain()).unwrap();
        let all = fw.enumerate_approximants().unwrap();
        let names: Vec<String> = all.iter().map(|x| fw.format_approximant(x)).collect();
        assert_eq!(names, vec!["[0, 0]", "[0, 1]", "[1, 1]"]);
        assert_eq!(fw.format_approximant(&fw.bottom()), "[0, 1]");
    }

    #[test]
    fn diamond_has_nine_consistent_pairs() {
        let lat = Arc::new(powerset_lattice(&["p", "q"], SetOrder::Subset).unwrap());
        let fw = IntervalFramework::new(lat.clone()).unwrap();
        // count pairs x1 ⊆ x2 directly on bitmasks
        let expected = (0..4usize).flat_map(|a| (0..4usize).map(move |b| (a, b))).filter(|(a, b)| a & !b == 0).count();
        assert_eq!(expected, 9);
        assert_eq!(fw.enumerate_approximants().unwrap().len(), expected);
    }

    #[test]
    fn rejects_non_lattices() {
        let vee = FinitePoset::from_hasse(&["bot", "a", "b"], &[("bot", "a"), ("bot", "b")]).unwrap();
        let err = IntervalFramework::new(Arc::new(vee)).unwrap_err();
        assert!(err.to_string().contains("greatest element"), "{err}");
    }

    #[test]
    fn exactness_and_truth_order() {
        let fw = IntervalFramework::new(chain()).unwrap();
        let lo = fw.interval_named("0", "0").unwrap();
        let wide = fw.interval_named("0", "1").unwrap();
        let hi = fw.interval_named("1", "1").unwrap();
        assert!(fw.is_exact(&lo) && fw.is_exact(&hi) && !fw.is_exact(&wide));
        assert!(fw.truth_leq(&lo, &wide) && fw.truth_leq(&wide, &hi));
        assert!(fw.precision_leq(&wide, &lo) && !fw.precision_leq(&lo, &hi));
        assert!(fw.interval_named("1", "0").is_err());
    }

    #[test]
    fn precision_is_reverse_containment() {
        let lat = Arc::new(powerset_lattice(&["p", "q", "r"], SetOrder::Subset).unwrap());
        let fw = IntervalFramework::new(lat).unwrap();
        let all = fw.enumerate_approximants().unwrap();
        for x in &all {
            for y in &all {
                let contained = fw.approximated(y).is_subset(&fw.approximated(x));
                assert_eq!(fw.precision_leq(x, y), contained);
            }
            assert_eq!(fw.is_exact(x), fw.approximated(x).len() == 1);
        }
    }
}
