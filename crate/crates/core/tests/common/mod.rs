//! Generators and deliberately broken frameworks shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use aft_core::encoders::lp::{MaskRule, NormalLogicProgram};
use aft_core::engine::ExactOperator;
use aft_core::flower::{Flower, FlowerFramework};
use aft_core::framework::{Approx, ApproximationFramework};
use aft_core::hierarchy::{IntervalFlowerWitness, SpacePrecision};
use aft_core::interval::{Interval, IntervalFramework};
use aft_core::order::{Elem, ElemSet, FinitePoset};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn data(name: &str) -> String {
    std::fs::read_to_string(format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))).expect("data file")
}

pub fn vee() -> Arc<FinitePoset> {
    Arc::new(FinitePoset::from_json(&data("vee.json")).unwrap())
}

/// A random bounded-complete cpo on `2..=max_size` elements: a random DAG
/// above a least element `e0`, closed transitively, retried until every
/// pair has a glb.
pub fn random_bc_cpo(seed: u64, max_size: usize) -> FinitePoset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let n = rng.random_range(2..=max_size);
        let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
        let density = rng.random_range(0.2..0.7);
        let mut edges = Vec::new();
        for j in 1..n {
            // Every element sits above e0 through at least one edge.
            let parents: Vec<usize> = (0..j).filter(|_| rng.random_bool(density)).collect();
            let parents = if parents.is_empty() { vec![rng.random_range(0..j)] } else { parents };
            edges.extend(parents.into_iter().map(|i| (names[i].clone(), names[j].clone())));
        }
        let poset = FinitePoset::from_hasse(&names, &edges).expect("acyclic by construction");
        if poset.classify().is_bounded_complete {
            return poset;
        }
    }
}

/// A random operator on `exact`, monotone or not.
pub fn random_operator(exact: Arc<FinitePoset>, seed: u64) -> ExactOperator {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = exact.len();
    let table = (0..n).map(|_| Elem::new(rng.random_range(0..n))).collect();
    ExactOperator::new(exact, table).unwrap()
}

const ATOMS: [&str; 5] = ["a", "b", "c", "d", "e"];

/// A random normal program on `1..=max_atoms` atoms with up to eight rules
/// and short bodies.
pub fn random_program(seed: u64, max_atoms: usize) -> NormalLogicProgram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=max_atoms);
    let rules: Vec<MaskRule> = (0..rng.random_range(0..=8))
        .map(|_| {
            let mut body = |p: f64| (0..n).filter(|_| rng.random_bool(p)).fold(0, |m, i| m | 1 << i);
            let pos = body(0.25);
            let neg = body(0.3);
            MaskRule { head: rng.random_range(0..n), pos, neg }
        })
        .collect();
    NormalLogicProgram::from_masks(&ATOMS[..n], &rules)
}

/// Every rule over `n` atoms: a head, a positive body and a negative body.
pub fn rule_shapes(n: usize) -> Vec<MaskRule> {
    let mut out = Vec::new();
    for head in 0..n {
        for pos in 0..1 << n {
            for neg in 0..1 << n {
                out.push(MaskRule { head, pos, neg });
            }
        }
    }
    out
}

/// All programs with at most two distinct rules over 1, 2 and 3 atoms.
pub fn exhaustive_programs() -> Vec<NormalLogicProgram> {
    let mut out = Vec::new();
    for n in 1..=3 {
        let shapes = rule_shapes(n);
        let atoms = &ATOMS[..n];
        out.push(NormalLogicProgram::from_masks(atoms, &[]));
        for (i, r) in shapes.iter().enumerate() {
            out.push(NormalLogicProgram::from_masks(atoms, &[*r]));
            for s in &shapes[i + 1..] {
                out.push(NormalLogicProgram::from_masks(atoms, &[*r, *s]));
            }
        }
    }
    out
}

/// Ways to break the flower framework.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// `(l, U)` is returned without trimming `U` to the part above `l`.
    UntrimmedRecompose,
    /// `l ≼ U` holds for every `l` and `U`.
    DroppedSideCondition,
    /// The glb of any set of upper bounds is `{⊥}`.
    CollapsedUpGlb,
    /// No approximant approximates anything.
    ApproximatesNothing,
    /// The precision order is reversed.
    ReversedPrecision,
}

pub const MUTATIONS: [Mutation; 5] = [
    Mutation::UntrimmedRecompose,
    Mutation::DroppedSideCondition,
    Mutation::CollapsedUpGlb,
    Mutation::ApproximatesNothing,
    Mutation::ReversedPrecision,
];

#[derive(Clone, Debug)]
pub struct Mutant {
    pub inner: FlowerFramework,
    pub mutation: Mutation,
}

impl ApproximationFramework for Mutant {
    type Low = Elem;
    type Up = ElemSet;

    fn kind(&self) -> &'static str {
        "mutant"
    }
    fn exact(&self) -> &FinitePoset {
        self.inner.exact()
    }
    fn low_leq(&self, a: &Elem, b: &Elem) -> bool {
        self.inner.low_leq(a, b)
    }
    fn up_leq(&self, a: &ElemSet, b: &ElemSet) -> bool {
        self.inner.up_leq(a, b)
    }
    fn low_up_leq(&self, l: &Elem, u: &ElemSet) -> bool {
        self.mutation == Mutation::DroppedSideCondition || self.inner.low_up_leq(l, u)
    }
    fn low_bottom(&self) -> Elem {
        self.inner.low_bottom()
    }
    fn up_top(&self) -> ElemSet {
        self.inner.up_top()
    }
    fn up_least_above(&self, l: &Elem) -> ElemSet {
        self.inner.up_least_above(l)
    }
    fn low_lub(&self, s: &[Elem]) -> Option<Elem> {
        self.inner.low_lub(s)
    }
    fn up_glb(&self, s: &[ElemSet]) -> ElemSet {
        if self.mutation == Mutation::CollapsedUpGlb {
            let exact = self.exact();
            ElemSet::singleton(exact.len(), exact.least().unwrap())
        } else {
            self.inner.up_glb(s)
        }
    }
    fn recompose(&self, l: &Elem, u: &ElemSet) -> Option<Flower> {
        if self.mutation == Mutation::UntrimmedRecompose {
            self.inner.low_up_leq(l, u).then(|| Flower::new(*l, u.clone()))
        } else {
            self.inner.recompose(l, u)
        }
    }
    fn precision_leq(&self, x: &Flower, y: &Flower) -> bool {
        if self.mutation == Mutation::ReversedPrecision {
            self.inner.precision_leq(y, x)
        } else {
            self.inner.precision_leq(x, y)
        }
    }
    fn approximates(&self, x: &Flower, e: Elem) -> bool {
        self.mutation != Mutation::ApproximatesNothing && self.inner.approximates(x, e)
    }
    fn cover(&self, s: &ElemSet) -> Option<Flower> {
        self.inner.cover(s)
    }
    fn is_exact(&self, x: &Flower) -> bool {
        self.inner.is_exact(x)
    }
    fn lub_approximants(&self, s: &[Flower]) -> Option<Flower> {
        self.inner.lub_approximants(s)
    }
    fn enumerate_low(&self) -> Option<Vec<Elem>> {
        self.inner.enumerate_low()
    }
    fn enumerate_up(&self) -> Option<Vec<ElemSet>> {
        self.inner.enumerate_up()
    }
    fn enumerate_approximants(&self) -> Option<Vec<Flower>> {
        self.inner.enumerate_approximants()
    }
    fn sample_approximant(&self, rng: &mut ChaCha8Rng) -> Flower {
        self.inner.sample_approximant(rng)
    }
    fn sample_between(&self, x: &Flower, y: &Flower, rng: &mut ChaCha8Rng) -> Flower {
        self.inner.sample_between(x, y, rng)
    }
    fn sample_up_between(&self, lo: &ElemSet, hi: &ElemSet, rng: &mut ChaCha8Rng) -> ElemSet {
        self.inner.sample_up_between(lo, hi, rng)
    }
    fn format_low(&self, l: &Elem) -> String {
        self.inner.format_low(l)
    }
    fn format_up(&self, u: &ElemSet) -> String {
        self.inner.format_up(u)
    }
    fn format_approximant(&self, x: &Flower) -> String {
        self.inner.format_approximant(x)
    }
}

/// The interval/flower witness with `ζ` replaced by the constant `[⊥, ⊤]`.
pub struct ConstantZeta(pub IntervalFlowerWitness);

impl SpacePrecision for ConstantZeta {
    type Coarse = IntervalFramework;
    type Fine = FlowerFramework;

    fn coarse(&self) -> &IntervalFramework {
        self.0.coarse()
    }
    fn fine(&self) -> &FlowerFramework {
        self.0.fine()
    }
    fn zeta(&self, _x: &Approx<FlowerFramework>) -> Interval {
        self.0.coarse().bottom()
    }
    fn embed(&self, x: &Interval) -> Flower {
        self.0.embed(x)
    }
}
