//! Approximators over an approximation framework and the semantics they
//! induce: Kripke-Kleene, well-founded, supported and stable fixpoints.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::fixpoint::{iterate_to_fixpoint, MonotoneOperator, MAX_STEPS};
use crate::framework::{Approx, ApproximationFramework};
use crate::order::{Elem, ElemSet, FinitePoset};
use crate::{Error, Result};

/// A total, not necessarily monotone, self-map on an exact space.
#[derive(Clone, Debug)]
pub struct ExactOperator {
    domain: Arc<FinitePoset>,
    table: Vec<Elem>,
}

impl ExactOperator {
    pub fn new(domain: Arc<FinitePoset>, table: Vec<Elem>) -> Result<Self> {
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
        Ok(ExactOperator { domain, table })
    }

    pub fn from_fn(domain: Arc<FinitePoset>, f: impl FnMut(Elem) -> Elem) -> Result<Self> {
        let table = domain.elements().map(f).collect();
        Self::new(domain, table)
    }

    pub fn constant(domain: Arc<FinitePoset>, c: Elem) -> Result<Self> {
        Self::from_fn(domain, |_| c)
    }

    pub fn domain(&self) -> &FinitePoset {
        &self.domain
    }

    pub fn domain_arc(&self) -> &Arc<FinitePoset> {
        &self.domain
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.table[x.index()]
    }

    pub fn image(&self, s: &ElemSet) -> ElemSet {
        ElemSet::from_elems(self.domain.len(), s.iter().map(|x| self.apply(x)))
    }

    /// A pair `x ≤ y` whose images are not ordered, if any.
    pub fn monotonicity_witness(&self) -> Option<(Elem, Elem)> {
        self.domain.elements().find_map(|x| {
            self.domain
                .up_set(x)
                .iter()
                .find(|&y| !self.domain.leq(self.apply(x), self.apply(y)))
                .map(|y| (x, y))
        })
    }

    pub fn fixpoints(&self) -> ElemSet {
        ElemSet::from_elems(self.domain.len(), self.domain.elements().filter(|&x| self.apply(x) == x))
    }

    pub fn as_monotone(&self) -> Result<MonotoneOperator<'_>> {
        let op = MonotoneOperator::new(&self.domain, self.table.clone())?;
        op.check_monotone()?;
        Ok(op)
    }
}

type ApproxMap<'a, F> = Box<dyn Fn(&Approx<F>) -> Approx<F> + 'a>;

/// A `≤p`-monotone self-map on the approximants of a framework.
pub struct Approximator<'a, F: ApproximationFramework> {
    fw: &'a F,
    name: String,
    map: ApproxMap<'a, F>,
}

impl<'a, F: ApproximationFramework> Approximator<'a, F> {
    pub fn new(
        fw: &'a F,
        name: impl Into<String>,
        map: impl Fn(&Approx<F>) -> Approx<F> + 'a,
    ) -> Self {
        Approximator { fw, name: name.into(), map: Box::new(map) }
    }

    pub fn framework(&self) -> &'a F {
        self.fw
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn apply(&self, x: &Approx<F>) -> Approx<F> {
        (self.map)(x)
    }

    /// A pair `x ≤p y` with `A(x) ≰p A(y)`, searched among `items`.
    pub fn monotonicity_witness(&self, items: &[Approx<F>], seed: u64) -> Option<String> {
        let fw = self.fw;
        let images: Vec<Approx<F>> = items.iter().map(|x| self.apply(x)).collect();
        let bad = |i: usize, j: usize| {
            (fw.precision_leq(&items[i], &items[j]) && !fw.precision_leq(&images[i], &images[j]))
                .then(|| {
                    format!(
                        "{} ≤p {} but A gives {} and {}",
                        fw.format_approximant(&items[i]),
                        fw.format_approximant(&items[j]),
                        fw.format_approximant(&images[i]),
                        fw.format_approximant(&images[j])
                    )
                })
        };
        let n = items.len();
        if n <= 1500 {
            return (0..n).find_map(|i| (0..n).find_map(|j| bad(i, j)));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..200_000).find_map(|_| bad(rng.random_range(0..n), rng.random_range(0..n)))
    }
}

impl<F: ApproximationFramework> fmt::Debug for Approximator<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Approximator").field("name", &self.name).finish()
    }
}

/// The most precise approximator of `op`: each approximant is sent to the
/// most precise approximant covering the image of its members.
pub fn ultimate_approximator<'a, F: ApproximationFramework>(
    fw: &'a F,
    op: &'a ExactOperator,
) -> Approximator<'a, F> {
    Approximator::new(fw, "ultimate", move |x| {
        let image = op.image(&fw.approximated(x));
        fw.cover(&image).expect("image of a nonempty approximant is coverable")
    })
}

/// Searches for `x ∼ e` with `A(x) ≁ O(e)`.
pub fn approximates_operator<F: ApproximationFramework>(
    a: &Approximator<'_, F>,
    op: &ExactOperator,
    items: &[Approx<F>],
) -> Option<String> {
    let fw = a.framework();
    items.iter().find_map(|x| {
        let image = a.apply(x);
        fw.approximated(x).iter().find(|&e| !fw.approximates(&image, op.apply(e))).map(|e| {
            format!(
                "{} approximates {} but A gives {}, which misses O({}) = {}",
                fw.format_approximant(x),
                fw.exact().name(e),
                fw.format_approximant(&image),
                fw.exact().name(e),
                fw.exact().name(op.apply(e))
            )
        })
    })
}

/// Searches for `x` with `A(x) ≰p B(x)`.
pub fn approximator_leq_witness<F: ApproximationFramework>(
    a: &Approximator<'_, F>,
    b: &Approximator<'_, F>,
    items: &[Approx<F>],
) -> Option<String> {
    let fw = a.framework();
    items.iter().find_map(|x| {
        let (ax, bx) = (a.apply(x), b.apply(x));
        (!fw.precision_leq(&ax, &bx)).then(|| {
            format!(
                "at {}: {} gives {}, {} gives {}",
                fw.format_approximant(x),
                a.name(),
                fw.format_approximant(&ax),
                b.name(),
                fw.format_approximant(&bx)
            )
        })
    })
}

pub fn is_reliable<F: ApproximationFramework>(a: &Approximator<'_, F>, x: &Approx<F>) -> bool {
    a.framework().precision_leq(x, &a.apply(x))
}

fn require_reliable<F: ApproximationFramework>(a: &Approximator<'_, F>, x: &Approx<F>) -> Result<()> {
    if is_reliable(a, x) {
        Ok(())
    } else {
        let fw = a.framework();
        Err(Error::NotReliable(format!(
            "{} is not below its image {}",
            fw.format_approximant(x),
            fw.format_approximant(&a.apply(x))
        )))
    }
}

/// Least fixpoint of `l ↦ A(l, x↑)↓`, iterated from the least ALB.
pub fn stable_lower<F: ApproximationFramework>(
    a: &Approximator<'_, F>,
    x: &Approx<F>,
) -> Result<F::Low> {
    require_reliable(a, x)?;
    let fw = a.framework();
    let (l, _) = iterate_to_fixpoint(
        fw.low_bottom(),
        |l| {
            let y = fw.recompose(l, x.aub()).ok_or_else(|| {
                Error::Invariant(format!(
                    "lower stable-revision map left the bounds of {}: {} is not below {}",
                    fw.format_approximant(x),
                    fw.format_low(l),
                    fw.format_up(x.aub())
                ))
            })?;
            Ok(a.apply(&y).alb().clone())
        },
        |p, q| fw.low_leq(p, q),
    )?;
    Ok(l)
}

/// Least fixpoint of `u ↦ A(x↓, u)↑` over the AUBs above `x↓`, iterated
/// from the least such AUB.
pub fn stable_upper<F: ApproximationFramework>(
    a: &Approximator<'_, F>,
    x: &Approx<F>,
) -> Result<F::Up> {
    require_reliable(a, x)?;
    let fw = a.framework();
    let (u, _) = iterate_to_fixpoint(
        fw.up_least_above(x.alb()),
        |u| {
            let y = fw.recompose(x.alb(), u).ok_or_else(|| {
                Error::Invariant(format!(
                    "upper stable-revision map left the bounds of {}: {} is not below {}",
                    fw.format_approximant(x),
                    fw.format_low(x.alb()),
                    fw.format_up(u)
                ))
            })?;
            Ok(a.apply(&y).aub().clone())
        },
        |p, q| fw.up_leq(p, q),
    )?;
    Ok(u)
}

/// The stable revision `S(x) = (stl(x), stu(x))`; requires `x` reliable.
pub fn stable_revision<F: ApproximationFramework>(
    a: &Approximator<'_, F>,
    x: &Approx<F>,
) -> Result<Approx<F>> {
    let fw = a.framework();
    let l = stable_lower(a, x)?;
    let u = stable_upper(a, x)?;
    fw.recompose(&l, &u).ok_or_else(|| {
        Error::Invariant(format!(
            "stable revision of {} gives the inconsistent pair ({}, {})",
            fw.format_approximant(x),
            fw.format_low(&l),
            fw.format_up(&u)
        ))
    })
}

pub fn is_prudent<F: ApproximationFramework>(a: &Approximator<'_, F>, x: &Approx<F>) -> Result<bool> {
    Ok(a.framework().low_leq(x.alb(), &stable_lower(a, x)?))
}

/// Least fixpoint of `A` above `start`, which must satisfy `start ≤p A(start)`.
pub fn kripke_kleene_from<F: ApproximationFramework>(
    a: &Approximator<'_, F>,
    start: Approx<F>,
) -> Result<Approx<F>> {
    let fw = a.framework();
    let (x, _) = iterate_to_fixpoint(start, |x| Ok(a.apply(x)), |p, q| fw.precision_leq(p, q))?;
    Ok(x)
}

pub fn kripke_kleene<F: ApproximationFramework>(a: &Approximator<'_, F>) -> Result<Approx<F>> {
    kripke_kleene_from(a, a.framework().bottom())
}

/// Least fixpoint of the stable revision operator, iterated from `(⊥, ⊤)`.
pub fn well_founded<F: ApproximationFramework>(a: &Approximator<'_, F>) -> Result<Approx<F>> {
    well_founded_from(a, a.framework().bottom())
}

/// Stable revision iterated from a reliable and prudent `start`.
pub fn well_founded_from<F: ApproximationFramework>(
    a: &Approximator<'_, F>,
    start: Approx<F>,
) -> Result<Approx<F>> {
    let fw = a.framework();
    let (x, _) =
        iterate_to_fixpoint(start, |x| stable_revision(a, x), |p, q| fw.precision_leq(p, q))?;
    Ok(x)
}

/// Exact elements whose exact approximant is a fixpoint of `A`.
pub fn supported_fixpoints<F: ApproximationFramework>(a: &Approximator<'_, F>) -> ElemSet {
    let fw = a.framework();
    let exact = fw.exact();
    ElemSet::from_elems(
        exact.len(),
        exact.elements().filter(|&e| {
            let x = fw.exact_approximant(e);
            a.apply(&x) == x
        }),
    )
}

/// Exact elements whose exact approximant is a fixpoint of stable revision.
/// Only fixpoints of `A` qualify: any other exact approximant is
/// `≤p`-maximal and strictly below nothing, so it is not reliable.
pub fn stable_fixpoints<F: ApproximationFramework>(a: &Approximator<'_, F>) -> Result<ElemSet> {
    let fw = a.framework();
    let mut out = fw.exact().empty_set();
    for e in supported_fixpoints(a).iter() {
        let x = fw.exact_approximant(e);
        if stable_revision(a, &x)? == x {
            out.insert(e);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SemanticsKind {
    KripkeKleene,
    WellFounded,
    Supported,
    Stable,
}

impl SemanticsKind {
    pub const ALL: [SemanticsKind; 4] = [
        SemanticsKind::KripkeKleene,
        SemanticsKind::WellFounded,
        SemanticsKind::Supported,
        SemanticsKind::Stable,
    ];

    pub fn key(self) -> &'static str {
        match self {
            SemanticsKind::KripkeKleene => "kk",
            SemanticsKind::WellFounded => "wf",
            SemanticsKind::Supported => "supported",
            SemanticsKind::Stable => "stable",
        }
    }
}

impl FromStr for SemanticsKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SemanticsKind::ALL
            .into_iter()
            .find(|k| k.key() == s)
            .ok_or_else(|| Error::Parse(format!("unknown semantics {s:?}; expected kk, wf, supported or stable")))
    }
}

/// The requested fixpoints of one approximator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semantics<F: ApproximationFramework> {
    pub kk: Option<Approx<F>>,
    pub wf: Option<Approx<F>>,
    pub supported: Option<ElemSet>,
    pub stable: Option<ElemSet>,
}

impl<F: ApproximationFramework> Semantics<F> {
    pub fn compute(a: &Approximator<'_, F>, kinds: &[SemanticsKind]) -> Result<Self> {
        let wants = |k| kinds.contains(&k);
        Ok(Semantics {
            kk: wants(SemanticsKind::KripkeKleene).then(|| kripke_kleene(a)).transpose()?,
            wf: wants(SemanticsKind::WellFounded).then(|| well_founded(a)).transpose()?,
            supported: wants(SemanticsKind::Supported).then(|| supported_fixpoints(a)),
            stable: wants(SemanticsKind::Stable).then(|| stable_fixpoints(a)).transpose()?,
        })
    }

    pub fn to_json(&self, fw: &F) -> Value {
        let exact = fw.exact();
        let mut v = json!({});
        if let Some(x) = &self.kk {
            v["kk"] = fw.approximant_json(x);
        }
        if let Some(x) = &self.wf {
            v["wf"] = fw.approximant_json(x);
        }
        if let Some(s) = &self.supported {
            v["supported"] = json!(exact.sorted_names(s));
        }
        if let Some(s) = &self.stable {
            v["stable"] = json!(exact.sorted_names(s));
        }
        v
    }

    pub fn to_text(&self, fw: &F) -> String {
        let exact = fw.exact();
        let mut lines = Vec::new();
        if let Some(x) = &self.kk {
            lines.push(format!("KK = {}", fw.format_approximant(x)));
        }
        if let Some(x) = &self.wf {
            lines.push(format!("WF = {}", fw.format_approximant(x)));
        }
        if let Some(s) = &self.supported {
            lines.push(format!("SUP = {}", exact.format_set(s)));
        }
        if let Some(s) = &self.stable {
            lines.push(format!("ST = {}", exact.format_set(s)));
        }
        lines.join("\n")
    }
}

/// `x ≤p y ≤p A(x)`
pub fn is_application_refinement<F: ApproximationFramework>(
    a: &Approximator<'_, F>,
    x: &Approx<F>,
    y: &Approx<F>,
) -> bool {
    let fw = a.framework();
    fw.precision_leq(x, y) && fw.precision_leq(y, &a.apply(x))
}

/// `y = (x↓, u)` for some `x↓ ≼ u ≼ x↑`, and `y ≤p A(y)`. The only candidate
/// for `u` is `y↑` itself.
pub fn is_grounding_refinement<F: ApproximationFramework>(
    a: &Approximator<'_, F>,
    x: &Approx<F>,
    y: &Approx<F>,
) -> bool {
    let fw = a.framework();
    let u = y.aub();
    y.alb() == x.alb()
        && fw.low_up_leq(x.alb(), u)
        && fw.up_leq(u, x.aub())
        && fw.recompose(x.alb(), u).as_ref() == Some(y)
        && fw.precision_leq(y, &a.apply(y))
}

pub fn is_refinement<F: ApproximationFramework>(
    a: &Approximator<'_, F>,
    x: &Approx<F>,
    y: &Approx<F>,
) -> bool {
    is_application_refinement(a, x, y) || is_grounding_refinement(a, x, y)
}

/// The grounding refinement `(x↓, stu(x))`; it is the most precise one.
pub fn grounding_candidate<F: ApproximationFramework>(
    a: &Approximator<'_, F>,
    x: &Approx<F>,
) -> Result<Approx<F>> {
    let fw = a.framework();
    let u = stable_upper(a, x)?;
    fw.recompose(x.alb(), &u).ok_or_else(|| {
        Error::Invariant(format!("stu of {} is not above its ALB", fw.format_approximant(x)))
    })
}

/// Whether `x` has no strictly more precise refinement. Requires `x` reliable.
pub fn is_terminal_wf<F: ApproximationFramework>(
    a: &Approximator<'_, F>,
    x: &Approx<F>,
) -> Result<bool> {
    let fw = a.framework();
    if fw.strictly_more_precise(x, &a.apply(x)) {
        return Ok(false);
    }
    let g = grounding_candidate(a, x)?;
    Ok(g == *x || !is_grounding_refinement(a, x, &g))
}

/// Picks the next step of a well-founded induction.
pub trait RefinementStrategy<F: ApproximationFramework> {
    fn refine(&mut self, a: &Approximator<'_, F>, x: &Approx<F>) -> Result<Approx<F>>;
}

/// Alternates full application steps with the most precise grounding step,
/// falling back to the other kind when one makes no progress.
#[derive(Clone, Debug, Default)]
pub struct AlternatingStrategy {
    ground_next: bool,
}

impl<F: ApproximationFramework> RefinementStrategy<F> for AlternatingStrategy {
    fn refine(&mut self, a: &Approximator<'_, F>, x: &Approx<F>) -> Result<Approx<F>> {
        let apply = a.apply(x);
        let ground = grounding_candidate(a, x)?;
        let order = if self.ground_next { [ground, apply] } else { [apply, ground] };
        self.ground_next = !self.ground_next;
        let [first, second] = order;
        Ok(if first != *x { first } else { second })
    }
}

/// Random refinements: random application steps anywhere in `[x, A(x)]` and
/// random grounding steps between `stu(x)` and `x↑`.
#[derive(Clone, Debug)]
pub struct RandomStrategy {
    rng: ChaCha8Rng,
}

impl RandomStrategy {
    pub fn new(seed: u64) -> Self {
        RandomStrategy { rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl<F: ApproximationFramework> RefinementStrategy<F> for RandomStrategy {
    fn refine(&mut self, a: &Approximator<'_, F>, x: &Approx<F>) -> Result<Approx<F>> {
        let fw = a.framework();
        let image = a.apply(x);
        let can_apply = fw.strictly_more_precise(x, &image);
        if can_apply && self.rng.random_bool(0.5) {
            let y = fw.sample_between(x, &image, &mut self.rng);
            if y != *x {
                return Ok(y);
            }
        }
        let stu = stable_upper(a, x)?;
        let u = fw.sample_up_between(&stu, x.aub(), &mut self.rng);
        if let Some(y) = fw.recompose(x.alb(), &u) {
            if y != *x && is_grounding_refinement(a, x, &y) {
                return Ok(y);
            }
        }
        let g = grounding_candidate(a, x)?;
        if g != *x {
            return Ok(g);
        }
        Ok(image)
    }
}

/// A well-founded induction `(⊥, ⊤) = x₀, x₁, …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WfTrace<F: ApproximationFramework> {
    pub steps: Vec<Approx<F>>,
    pub terminal: bool,
}

impl<F: ApproximationFramework> WfTrace<F> {
    pub fn limit(&self) -> &Approx<F> {
        self.steps.last().expect("trace is never empty")
    }
}

/// Runs a well-founded induction until it is terminal or the strategy stalls.
pub fn run_wf_induction<F: ApproximationFramework>(
    a: &Approximator<'_, F>,
    strategy: &mut impl RefinementStrategy<F>,
) -> Result<WfTrace<F>> {
    run_wf_induction_from(a, a.framework().bottom(), strategy)
}

pub fn run_wf_induction_from<F: ApproximationFramework>(
    a: &Approximator<'_, F>,
    start: Approx<F>,
    strategy: &mut impl RefinementStrategy<F>,
) -> Result<WfTrace<F>> {
    let fw = a.framework();
    let mut steps = vec![start];
    for _ in 0..MAX_STEPS {
        let x = steps.last().expect("trace is never empty");
        if is_terminal_wf(a, x)? {
            return Ok(WfTrace { steps, terminal: true });
        }
        let y = strategy.refine(a, x)?;
        if !is_refinement(a, x, &y) {
            return Err(Error::InvalidRefinement(format!(
                "{} is neither an application nor a grounding refinement of {}",
                fw.format_approximant(&y),
                fw.format_approximant(x)
            )));
        }
        if y == *x {
            return Ok(WfTrace { steps, terminal: false });
        }
        steps.push(y);
    }
    Err(Error::Invariant(format!("well-founded induction ran for {MAX_STEPS} steps")))
}
