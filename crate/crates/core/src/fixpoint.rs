//! Least fixpoints of monotone operators by iteration from the bottom.

use rand::seq::IteratorRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::order::{Elem, FinitePoset};
use crate::{Error, Result};

/// Upper bound on the number of iteration steps before giving up.
pub const MAX_STEPS: usize = 1 << 20;

/// Iterates `step` from `bottom` until it becomes stationary.
///
/// Every step must be an increase under `leq`; a decrease means the operator
/// is not monotone on the visited pairs and aborts with [`Error::NotMonotone`].
/// Returns the limit together with the number of strict increases taken.
pub fn iterate_to_fixpoint<T, F, L>(bottom: T, mut step: F, leq: L) -> Result<(T, usize)>
where
    T: Clone + PartialEq + std::fmt::Debug,
    F: FnMut(&T) -> Result<T>,
    L: Fn(&T, &T) -> bool,
{
    let mut current = bottom;
    for steps in 0..MAX_STEPS {
        let next = step(&current)?;
        if next == current {
            return Ok((current, steps));
        }
        if !leq(&current, &next) {
            return Err(Error::NotMonotone(format!(
                "iteration moved from {current:?} to the incomparable or smaller {next:?}"
            )));
        }
        current = next;
    }
    Err(Error::Invariant(format!("no fixpoint after {MAX_STEPS} steps")))
}

/// A total self-map on the elements of a finite poset, expected to be monotone.
#[derive(Clone, Debug)]
pub struct MonotoneOperator<'a> {
    domain: &'a FinitePoset,
    table: Vec<Elem>,
}

impl<'a> MonotoneOperator<'a> {
    pub fn new(domain: &'a FinitePoset, table: Vec<Elem>) -> Result<Self> {
        if table.len() != domain.len() {
            return Err(Error::Precondition(format!(
                "operator table has {} entries for {} elements",
                table.len(),
                domain.len()
            )));
        }
        if let Some(bad) = table.iter().find(|e| e.index() >= domain.len()) {
            return Err(Error::ElementNotFound(format!("#{}", bad.index())));
        }
        Ok(MonotoneOperator { domain, table })
    }

    pub fn from_fn(domain: &'a FinitePoset, f: impl Fn(Elem) -> Elem) -> Result<Self> {
        Self::new(domain, domain.elements().map(f).collect())
    }

    pub fn domain(&self) -> &'a FinitePoset {
        self.domain
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.table[x.index()]
    }

    /// Exhaustive monotonicity check; quadratic in the domain size.
    pub fn check_monotone(&self) -> Result<()> {
        for x in self.domain.elements() {
            for y in self.domain.up_set(x).iter() {
                if !self.domain.leq(self.apply(x), self.apply(y)) {
                    return Err(Error::NotMonotone(format!(
                        "{} <= {} but their images are not ordered",
                        self.domain.name(x),
                        self.domain.name(y)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_prefixpoint(&self, x: Elem) -> bool {
        self.domain.leq(self.apply(x), x)
    }

    pub fn is_postfixpoint(&self, x: Elem) -> bool {
        self.domain.leq(x, self.apply(x))
    }

    fn bottom(&self) -> Result<Elem> {
        self.domain
            .least()
            .ok_or_else(|| Error::Precondition("domain has no least element".into()))
    }

    /// Knaster-Tarski least fixpoint, by iterating from the least element.
    pub fn lfp(&self) -> Result<Elem> {
        let bottom = self.bottom()?;
        let (x, _) =
            iterate_to_fixpoint(bottom, |&x| Ok(self.apply(x)), |&a, &b| self.domain.leq(a, b))?;
        Ok(x)
    }

    /// Runs a monotone induction. The strategy receives the current element and
    /// its image and picks the next element, which must lie between the two.
    /// The run stops as soon as the strategy makes no progress.
    pub fn run_induction(
        &self,
        mut strategy: impl FnMut(Elem, Elem) -> Elem,
    ) -> Result<InductionTrace> {
        let mut steps = vec![self.bottom()?];
        loop {
            let x = *steps.last().expect("trace starts with bottom");
            let image = self.apply(x);
            if !self.domain.leq(x, image) {
                return Err(Error::NotMonotone(format!(
                    "{} is reached by the induction but is not below its image {}",
                    self.domain.name(x),
                    self.domain.name(image)
                )));
            }
            let next = strategy(x, image);
            if !(self.domain.leq(x, next) && self.domain.leq(next, image)) {
                return Err(Error::InvalidRefinement(format!(
                    "{} does not lie between {} and its image {}",
                    self.domain.name(next),
                    self.domain.name(x),
                    self.domain.name(image)
                )));
            }
            if next == x {
                return Ok(InductionTrace { steps });
            }
            steps.push(next);
        }
    }

    /// Induction with the default strategy `x ↦ O(x)`.
    pub fn run_default_induction(&self) -> Result<InductionTrace> {
        self.run_induction(|_, image| image)
    }
}

/// Strategy picking a uniformly random strict refinement in `[x, O(x)]`.
pub fn random_strategy(domain: &FinitePoset, seed: u64) -> impl FnMut(Elem, Elem) -> Elem + '_ {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    move |x, image| {
        let mut between = domain.up_set(x).intersection(domain.down_set(image));
        between.remove(x);
        between.iter().choose(&mut rng).unwrap_or(x)
    }
}

/// The sequence `x₀ = ⊥, x₁, …` of a monotone induction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductionTrace {
    pub steps: Vec<Elem>,
}

impl InductionTrace {
    pub fn limit(&self) -> Elem {
        *self.steps.last().expect("trace is never empty")
    }

    /// A trace is terminal when its limit is a pre-fixpoint.
    pub fn is_terminal(&self, op: &MonotoneOperator<'_>) -> bool {
        op.is_prefixpoint(self.limit())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{powerset_lattice, SetOrder};

    fn vee() -> FinitePoset {
        FinitePoset::from_hasse(&["bot", "a", "b"], &[("bot", "a"), ("bot", "b")]).unwrap()
    }

    #[test]
    fn lfp_of_simple_operators() {
        let p = vee();
        let a = p.elem("a").unwrap();
        let id = MonotoneOperator::from_fn(&p, |x| x).unwrap();
        assert_eq!(id.lfp().unwrap(), p.elem("bot").unwrap());
        let constant = MonotoneOperator::from_fn(&p, |_| a).unwrap();
        assert_eq!(constant.lfp().unwrap(), a);
    }

    #[test]
    fn lfp_of_immediate_consequence() {
        // p.  q :- p.
        let lat = powerset_lattice(&["p", "q"], SetOrder::Subset).unwrap();
        let op = MonotoneOperator::from_fn(&lat, |x| {
            let mut out = 0b01;
            if x.index() & 0b01 != 0 {
                out |= 0b10;
            }
            Elem::new(out)
        })
        .unwrap();
        op.check_monotone().unwrap();
        assert_eq!(lat.name(op.lfp().unwrap()), "{p,q}");
        assert_eq!(op.run_default_induction().unwrap().steps.len(), 3);
    }

    #[test]
    fn inductions() {
        let p = vee();
        let a = p.elem("a").unwrap();
        let b = p.elem("b").unwrap();
        let constant = MonotoneOperator::from_fn(&p, |_| a).unwrap();
        let trace = constant.run_default_induction().unwrap();
        assert_eq!(trace.steps, vec![p.elem("bot").unwrap(), a]);
        assert!(trace.is_terminal(&constant));

        let stalled = constant.run_induction(|x, _| x).unwrap();
        assert_eq!(stalled.steps.len(), 1);
        assert!(!stalled.is_terminal(&constant));

        assert!(matches!(constant.run_induction(|_, _| b), Err(Error::InvalidRefinement(_))));
    }

    #[test]
    fn pre_and_post_fixpoints() {
        let p = vee();
        let a = p.elem("a").unwrap();
        let constant = MonotoneOperator::from_fn(&p, |_| a).unwrap();
        assert!(constant.is_prefixpoint(constant.lfp().unwrap()));
        assert!(constant.is_postfixpoint(p.elem("bot").unwrap()));
        assert!(!constant.is_prefixpoint(p.elem("b").unwrap()));
    }

    #[test]
    fn detects_non_monotone_iteration() {
        // p :- not p.
        let lat = powerset_lattice(&["p"], SetOrder::Subset).unwrap();
        let op = MonotoneOperator::from_fn(&lat, |x| Elem::new(1 - x.index())).unwrap();
        assert!(matches!(op.lfp(), Err(Error::NotMonotone(_))));
        assert!(op.check_monotone().is_err());
    }

    #[test]
    fn random_inductions_reach_lfp() {
        let lat = powerset_lattice(&["p", "q", "r"], SetOrder::Subset).unwrap();
        // r.  q :- r.  p :- q, r.
        let op = MonotoneOperator::from_fn(&lat, |x| {
            let m = x.index();
            let mut out = 0b100;
            if m & 0b100 != 0 {
                out |= 0b010;
            }
            if m & 0b110 == 0b110 {
                out |= 0b001;
            }
            Elem::new(out)
        })
        .unwrap();
        let lfp = op.lfp().unwrap();
        for seed in 0..20 {
            let trace = op.run_induction(random_strategy(&lat, seed)).unwrap();
            assert!(trace.is_terminal(&op));
            assert_eq!(trace.limit(), lfp);
        }
    }
}
