//! Precision between approximation spaces: a coarse space embeds into a fine
//! one, and `ζ` maps each fine approximant to the most precise coarse
//! approximant covering it. Approximators move between the two spaces by
//! composing with `ζ` and the embedding.

use std::sync::Arc;

use crate::engine::{
    approximator_leq_witness, is_prudent, is_reliable, kripke_kleene, kripke_kleene_from, stable_fixpoints, stable_revision,
    supported_fixpoints, ultimate_approximator, well_founded, Approximator, ExactOperator,
};
use crate::flower::{Flower, FlowerFramework};
use crate::framework::{Approx, ApproximationFramework, Pool};
use crate::interval::{Interval, IntervalFramework};
use crate::order::{ElemSet, FinitePoset};
use crate::report::Report;
use crate::Result;

/// Witness that `Fine` is at least as precise as `Coarse`.
pub trait SpacePrecision {
    type Coarse: ApproximationFramework;
    type Fine: ApproximationFramework;

    fn coarse(&self) -> &Self::Coarse;
    fn fine(&self) -> &Self::Fine;
    fn zeta(&self, x: &Approx<Self::Fine>) -> Approx<Self::Coarse>;
    fn embed(&self, x: &Approx<Self::Coarse>) -> Approx<Self::Fine>;
}

/// Intervals inside flowers over one complete lattice.
#[derive(Clone, Debug)]
pub struct IntervalFlowerWitness {
    intervals: IntervalFramework,
    flowers: FlowerFramework,
}

impl IntervalFlowerWitness {
    pub fn new(exact: Arc<FinitePoset>) -> Result<Self> {
        Ok(IntervalFlowerWitness {
            intervals: IntervalFramework::new(exact.clone())?,
            flowers: FlowerFramework::new(exact, true)?,
        })
    }
}

impl SpacePrecision for IntervalFlowerWitness {
    type Coarse = IntervalFramework;
    type Fine = FlowerFramework;

    fn coarse(&self) -> &IntervalFramework {
        &self.intervals
    }

    fn fine(&self) -> &FlowerFramework {
        &self.flowers
    }

    /// `[glb X, lub X]`
    fn zeta(&self, x: &Flower) -> Interval {
        let exact = self.flowers.exact();
        let high = exact.lub(x.aub()).expect("complete lattice");
        self.intervals.interval(*x.alb(), high).expect("glb below lub")
    }

    /// The flower of all members of the interval.
    fn embed(&self, x: &Interval) -> Flower {
        let exact = self.flowers.exact();
        self.flowers
            .recompose(x.alb(), &ElemSet::singleton(exact.len(), *x.aub()))
            .expect("interval bounds are ordered")
    }
}

/// A space compared with itself through the identity.
#[derive(Clone, Debug)]
pub struct IdentityWitness<F>(pub F);

impl<F: ApproximationFramework> SpacePrecision for IdentityWitness<F> {
    type Coarse = F;
    type Fine = F;

    fn coarse(&self) -> &F {
        &self.0
    }

    fn fine(&self) -> &F {
        &self.0
    }

    fn zeta(&self, x: &Approx<F>) -> Approx<F> {
        x.clone()
    }

    fn embed(&self, x: &Approx<F>) -> Approx<F> {
        x.clone()
    }
}

/// Checks the witness conditions: `X₁ ≤p X₂` iff `X₁ ≤p ζ(X₂)`, `ζ`
/// monotone, exactness preserved by the embedding, and the embedding
/// faithful (`ζ ∘ embed = id`, members unchanged).
pub fn check_space_precision<W: SpacePrecision>(w: &W, samples: usize, seed: u64) -> Report {
    let (coarse, fine) = (w.coarse(), w.fine());
    let cpool = Pool::new(coarse, samples, seed);
    let fpool = Pool::new(fine, samples, seed);
    let exhaustive = cpool.exhaustive && fpool.exhaustive;
    let fc = |x: &Approx<W::Coarse>| coarse.format_approximant(x);
    let ff = |x: &Approx<W::Fine>| fine.format_approximant(x);
    let zetas: Vec<Approx<W::Coarse>> = fpool.items.iter().map(|x| w.zeta(x)).collect();
    let mut report = Report::new();

    let witness = cpool.items.iter().find_map(|x1| {
        let e1 = w.embed(x1);
        fpool.items.iter().zip(&zetas).find_map(|(x2, z2)| {
            let left = fine.precision_leq(&e1, x2);
            let right = coarse.precision_leq(x1, z2);
            (left != right).then(|| {
                format!("{} vs {}: ≤p in the fine space is {left}, against ζ = {} it is {right}", fc(x1), ff(x2), fc(z2))
            })
        })
    });
    report.record("space precision: X₁ ≤p X₂ iff X₁ ≤p ζ(X₂)", exhaustive, witness);

    let n = fpool.items.len();
    let pairs_exhaustive = n <= 1500;
    let step = if pairs_exhaustive { 1 } else { n / 1500 + 1 };
    let witness = (0..n).step_by(step).find_map(|i| {
        (0..n).find_map(|j| {
            let (x, y) = (&fpool.items[i], &fpool.items[j]);
            (fine.precision_leq(x, y) && !coarse.precision_leq(&zetas[i], &zetas[j]))
                .then(|| format!("{} ≤p {} but ζ gives {} and {}", ff(x), ff(y), fc(&zetas[i]), fc(&zetas[j])))
        })
    });
    report.record("space precision: ζ is monotone", exhaustive && pairs_exhaustive, witness);

    let witness = cpool.items.iter().find_map(|x| {
        (coarse.is_exact(x) && !fine.is_exact(&w.embed(x)))
            .then(|| format!("{} is exact but its embedding {} is not", fc(x), ff(&w.embed(x))))
    });
    report.record("space precision: exact approximants stay exact", cpool.exhaustive, witness);

    let witness = cpool.items.iter().find_map(|x| {
        let e = w.embed(x);
        let back = w.zeta(&e);
        (back != *x || coarse.approximated(x) != fine.approximated(&e))
            .then(|| format!("{} embeds as {} and maps back to {}", fc(x), ff(&e), fc(&back)))
    });
    report.record("space precision: embedding is faithful", cpool.exhaustive, witness);

    let witness = fpool.items.iter().zip(&zetas).find_map(|(x, z)| {
        (!fine.approximated(x).is_subset(&coarse.approximated(z)))
            .then(|| format!("ζ({}) = {} loses members", ff(x), fc(z)))
    });
    report.record("space precision: ζ(X) covers X", fpool.exhaustive, witness);
    report
}

/// `embed ∘ A₁ ∘ ζ`, an approximator on the fine space.
pub fn induce_fine<'a, W: SpacePrecision>(
    a1: &'a Approximator<'a, W::Coarse>,
    w: &'a W,
) -> Approximator<'a, W::Fine> {
    Approximator::new(w.fine(), format!("{}∘ζ", a1.name()), move |x| w.embed(&a1.apply(&w.zeta(x))))
}

/// `ζ ∘ A₂ ∘ embed`, an approximator on the coarse space.
pub fn induce_coarse<'a, W: SpacePrecision>(
    a2: &'a Approximator<'a, W::Fine>,
    w: &'a W,
) -> Approximator<'a, W::Coarse> {
    Approximator::new(w.coarse(), format!("ζ∘{}", a2.name()), move |x| w.zeta(&a2.apply(&w.embed(x))))
}

/// For `A₂ = A₁ ∘ ζ`: the fixpoints of `A` and of stable revision coincide
/// across the spaces, and so do the Kripke-Kleene and well-founded fixpoints.
pub fn verify_fixpoint_preservation<W: SpacePrecision>(
    w: &W,
    a1: &Approximator<'_, W::Coarse>,
    samples: usize,
    seed: u64,
) -> Result<Report> {
    let a2 = induce_fine(a1, w);
    let (coarse, fine) = (w.coarse(), w.fine());
    let cpool = Pool::new(coarse, samples, seed);
    let fpool = Pool::new(fine, samples, seed);
    let fc = |x: &Approx<W::Coarse>| coarse.format_approximant(x);
    let mut report = Report::new();

    let witness = cpool.items.iter().find_map(|x| {
        let e = w.embed(x);
        let (f1, f2) = (a1.apply(x) == *x, a2.apply(&e) == e);
        (f1 != f2).then(|| format!("{}: fixpoint of A₁ is {f1}, of A₂ is {f2}", fc(x)))
    });
    let witness = witness.or_else(|| {
        fpool.items.iter().find_map(|x| {
            let z = w.zeta(x);
            (a2.apply(x) == *x && (w.embed(&z) != *x || a1.apply(&z) != z))
                .then(|| format!("{} is fixed by A₂ but is not an embedded fixpoint of A₁", fine.format_approximant(x)))
        })
    });
    report.record("fixpoints of A coincide", cpool.exhaustive && fpool.exhaustive, witness);

    let mut witness = None;
    for x in cpool.items.iter().filter(|x| a1.apply(x) == **x) {
        let e = w.embed(x);
        let f1 = stable_revision(a1, x)? == *x;
        let f2 = stable_revision(&a2, &e)? == e;
        if f1 != f2 {
            witness = Some(format!("{}: stable fixpoint of A₁ is {f1}, of A₂ is {f2}", fc(x)));
            break;
        }
    }
    report.record("fixpoints of stable revision coincide", cpool.exhaustive, witness);

    let (kk1, kk2) = (kripke_kleene(a1)?, kripke_kleene(&a2)?);
    let witness = (w.embed(&kk1) != kk2)
        .then(|| format!("KK(A₁) = {} but KK(A₂) = {}", fc(&kk1), fine.format_approximant(&kk2)));
    report.record("KK(A₂) = KK(A₁)", true, witness);

    let (wf1, wf2) = (well_founded(a1)?, well_founded(&a2)?);
    let witness = (w.embed(&wf1) != wf2)
        .then(|| format!("WF(A₁) = {} but WF(A₂) = {}", fc(&wf1), fine.format_approximant(&wf2)));
    report.record("WF(A₂) = WF(A₁)", true, witness);
    Ok(report)
}

/// For `A₁ = ζ ∘ A₂`: KK and WF of `A₁` are below those of `A₂`, and the
/// supported and stable fixpoints of `A₁` are among those of `A₂`.
pub fn verify_precision_transfer<W: SpacePrecision>(
    w: &W,
    a2: &Approximator<'_, W::Fine>,
) -> Result<Report> {
    let a1 = induce_coarse(a2, w);
    let fine = w.fine();
    let coarse = w.coarse();
    let mut report = Report::new();

    let (kk1, kk2) = (kripke_kleene(&a1)?, kripke_kleene(a2)?);
    let witness = (!fine.precision_leq(&w.embed(&kk1), &kk2)).then(|| {
        format!("KK(A₁) = {} is not below KK(A₂) = {}", coarse.format_approximant(&kk1), fine.format_approximant(&kk2))
    });
    report.record("KK(ζ∘A₂) ≤p KK(A₂)", true, witness);

    let (wf1, wf2) = (well_founded(&a1)?, well_founded(a2)?);
    let witness = (!fine.precision_leq(&w.embed(&wf1), &wf2)).then(|| {
        format!("WF(A₁) = {} is not below WF(A₂) = {}", coarse.format_approximant(&wf1), fine.format_approximant(&wf2))
    });
    report.record("WF(ζ∘A₂) ≤p WF(A₂)", true, witness);

    let exact = fine.exact();
    let (sup1, sup2) = (supported_fixpoints(&a1), supported_fixpoints(a2));
    let witness = (!sup1.is_subset(&sup2))
        .then(|| format!("SUP(A₁) = {} ⊄ SUP(A₂) = {}", exact.format_set(&sup1), exact.format_set(&sup2)));
    report.record("SUP(ζ∘A₂) ⊆ SUP(A₂)", true, witness);

    let (st1, st2) = (stable_fixpoints(&a1)?, stable_fixpoints(a2)?);
    let witness = (!st1.is_subset(&st2))
        .then(|| format!("ST(A₁) = {} ⊄ ST(A₂) = {}", exact.format_set(&st1), exact.format_set(&st2)));
    report.record("ST(ζ∘A₂) ⊆ ST(A₂)", true, witness);
    Ok(report)
}

/// `ζ ∘ U₂ ∘ embed = U₁` for the ultimate approximators of `op`.
pub fn verify_ultimate_composition<W: SpacePrecision>(
    w: &W,
    op: &ExactOperator,
    samples: usize,
    seed: u64,
) -> Report {
    let u1 = ultimate_approximator(w.coarse(), op);
    let u2 = ultimate_approximator(w.fine(), op);
    let induced = induce_coarse(&u2, w);
    let pool = Pool::new(w.coarse(), samples, seed);
    let coarse = w.coarse();
    let witness = pool.items.iter().find_map(|x| {
        let (a, b) = (induced.apply(x), u1.apply(x));
        (a != b).then(|| {
            format!(
                "at {}: ζ∘U₂ gives {}, U₁ gives {}",
                coarse.format_approximant(x),
                coarse.format_approximant(&a),
                coarse.format_approximant(&b)
            )
        })
    });
    let mut report = Report::new();
    report.record("ζ∘U(fine)∘embed = U(coarse)", pool.exhaustive, witness);
    report
}

/// Restarting in the fine space: when `A₁∘ζ ≤p A₂`, the embedded `KK(A₁)` is
/// below `KK(A₂)`, iterating `A₂` from it reaches `KK(A₂)`, and `A₁`-reliable
/// and -prudent approximants stay so for `A₂`.
pub fn verify_warm_start<W: SpacePrecision>(
    w: &W,
    a1: &Approximator<'_, W::Coarse>,
    a2: &Approximator<'_, W::Fine>,
    samples: usize,
    seed: u64,
) -> Result<Report> {
    let fine = w.fine();
    let mut report = Report::new();
    let kk1 = w.embed(&kripke_kleene(a1)?);
    let kk2 = kripke_kleene(a2)?;
    let witness = (!fine.precision_leq(&kk1, &kk2)).then(|| {
        format!("embedded KK(A₁) = {} is not below KK(A₂) = {}", fine.format_approximant(&kk1), fine.format_approximant(&kk2))
    });
    report.record("warm start: KK(A₁) ≤p KK(A₂)", true, witness);

    let warm = kripke_kleene_from(a2, kk1)?;
    let witness = (warm != kk2).then(|| {
        format!("warm start reaches {}, cold start {}", fine.format_approximant(&warm), fine.format_approximant(&kk2))
    });
    report.record("warm start: same KK(A₂)", true, witness);

    let pool = Pool::new(w.coarse(), samples, seed);
    let mut witness = None;
    for x in &pool.items {
        if is_reliable(a1, x) && is_prudent(a1, x)? {
            let e = w.embed(x);
            if !(is_reliable(a2, &e) && is_prudent(a2, &e)?) {
                witness = Some(format!("{} loses reliability or prudence", fine.format_approximant(&e)));
                break;
            }
        }
    }
    report.record("warm start: reliable and prudent approximants transfer", pool.exhaustive, witness);
    Ok(report)
}

/// For `A ≤p B` on one space: the pointwise order on `items`, and the
/// transfer of that order to the KK and WF fixpoints and of inclusion to the
/// supported and stable fixpoints.
pub fn verify_approximator_precision<F: ApproximationFramework>(
    a: &Approximator<'_, F>,
    b: &Approximator<'_, F>,
    items: &[Approx<F>],
    exhaustive: bool,
) -> Result<Report> {
    let fw = a.framework();
    let exact = fw.exact();
    let fa = |x: &Approx<F>| fw.format_approximant(x);
    let mut report = Report::new();
    report.record("A ≤p B pointwise", exhaustive, approximator_leq_witness(a, b, items));

    let (kka, kkb) = (kripke_kleene(a)?, kripke_kleene(b)?);
    let witness = (!fw.precision_leq(&kka, &kkb)).then(|| format!("KK(A) = {} ≰p KK(B) = {}", fa(&kka), fa(&kkb)));
    report.record("KK(A) ≤p KK(B)", true, witness);

    let (wfa, wfb) = (well_founded(a)?, well_founded(b)?);
    let witness = (!fw.precision_leq(&wfa, &wfb)).then(|| format!("WF(A) = {} ≰p WF(B) = {}", fa(&wfa), fa(&wfb)));
    report.record("WF(A) ≤p WF(B)", true, witness);

    let (supa, supb) = (supported_fixpoints(a), supported_fixpoints(b));
    let witness = (!supa.is_subset(&supb))
        .then(|| format!("SUP(A) = {} ⊄ SUP(B) = {}", exact.format_set(&supa), exact.format_set(&supb)));
    report.record("SUP(A) ⊆ SUP(B)", true, witness);

    let (sta, stb) = (stable_fixpoints(a)?, stable_fixpoints(b)?);
    let witness = (!sta.is_subset(&stb))
        .then(|| format!("ST(A) = {} ⊄ ST(B) = {}", exact.format_set(&sta), exact.format_set(&stb)));
    report.record("ST(A) ⊆ ST(B)", true, witness);
    Ok(report)
}
