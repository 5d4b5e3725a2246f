mod common;

use std::sync::Arc;

use aft_core::encoders::lp::{fitting_approximator, lp_operator, NormalLogicProgram};
use aft_core::engine::{
    approximates_operator, approximator_leq_witness, kripke_kleene, stable_fixpoints, stable_revision,
    supported_fixpoints, ultimate_approximator, well_founded,
};
use aft_core::flower::{flower_closure, is_flower, FlowerFramework};
use aft_core::framework::{ApproximationFramework, Pool};
use aft_core::interval::IntervalFramework;
use aft_core::order::{Elem, ElemSet, FinitePoset};
use common::{random_bc_cpo, random_operator, random_program};
use proptest::prelude::*;

fn subsets(n: usize) -> impl Iterator<Item = ElemSet> {
    (0..1u32 << n).map(move |m| ElemSet::from_elems(n, (0..n).filter(|i| m >> i & 1 == 1).map(Elem::new)))
}

/// lub by definition: the least of the upper bounds, found by scanning.
fn brute_lub(p: &FinitePoset, s: &ElemSet) -> Option<Elem> {
    let ubs: Vec<Elem> = p.elements().filter(|&u| s.iter().all(|x| p.leq(x, u))).collect();
    ubs.iter().copied().find(|&u| ubs.iter().all(|&v| p.leq(u, v)))
}

fn brute_glb(p: &FinitePoset, s: &ElemSet) -> Option<Elem> {
    let lbs: Vec<Elem> = p.elements().filter(|&l| s.iter().all(|x| p.leq(l, x))).collect();
    lbs.iter().copied().find(|&l| lbs.iter().all(|&v| p.leq(v, l)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bounds_match_their_definitions(seed in any::<u64>()) {
        let p = random_bc_cpo(seed, 7);
        for s in subsets(p.len()) {
            prop_assert_eq!(p.lub(&s), brute_lub(&p, &s));
            prop_assert_eq!(p.glb(&s), brute_glb(&p, &s));
            let down = p.lower_closure(&s);
            prop_assert_eq!(p.lower_closure(&down), down.clone());
            prop_assert!(p.is_convex(&down));
        }
        prop_assert_eq!(p.dual().dual(), p);
    }

    #[test]
    fn flower_closure_is_the_least_containing_flower(seed in any::<u64>()) {
        let p = random_bc_cpo(seed, 6);
        let all: Vec<ElemSet> = subsets(p.len()).collect();
        for s in all.iter().filter(|s| !s.is_empty()) {
            let closure = flower_closure(&p, s).unwrap();
            prop_assert!(is_flower(&p, &closure) && s.is_subset(&closure));
            for f in all.iter().filter(|f| is_flower(&p, f) && s.is_subset(f)) {
                prop_assert!(closure.is_subset(f));
            }
        }
    }

    #[test]
    fn ultimate_flower_approximator_is_sound(seed in any::<u64>()) {
        let exact = Arc::new(random_bc_cpo(seed, 6));
        let op = random_operator(exact.clone(), seed ^ 1);
        let fw = FlowerFramework::new(exact, true).unwrap();
        let a = ultimate_approximator(&fw, &op);
        let pool = Pool::new(&fw, 100, seed);
        prop_assert!(pool.exhaustive);
        prop_assert_eq!(a.monotonicity_witness(&pool.items, seed), None);
        prop_assert_eq!(approximates_operator(&a, &op, &pool.items), None);

        let kk = kripke_kleene(&a).unwrap();
        let wf = well_founded(&a).unwrap();
        prop_assert!(fw.precision_leq(&kk, &wf));
        prop_assert_eq!(stable_revision(&a, &wf).unwrap(), wf.clone());
        let fixpoints = op.fixpoints();
        let st = stable_fixpoints(&a).unwrap();
        prop_assert!(st.is_subset(&supported_fixpoints(&a)));
        prop_assert!(supported_fixpoints(&a).is_subset(&fixpoints));
        for e in st.iter() {
            prop_assert!(fw.precision_leq(&wf, &fw.exact_approximant(e)));
        }
    }

    #[test]
    fn fitting_is_below_ultimate(seed in any::<u64>()) {
        let p = random_program(seed, 4);
        let op = lp_operator(&p).unwrap();
        let fw = IntervalFramework::new(op.domain_arc().clone()).unwrap();
        let fit = fitting_approximator(&p, &fw).unwrap();
        let ult = ultimate_approximator(&fw, &op);
        let items = fw.enumerate_approximants().unwrap();
        prop_assert_eq!(approximator_leq_witness(&fit, &ult, &items), None);
        prop_assert_eq!(approximates_operator(&fit, &op, &items), None);
        prop_assert_eq!(fit.monotonicity_witness(&items, seed), None);
    }

    #[test]
    fn program_json_round_trips(seed in any::<u64>()) {
        let p = random_program(seed, 5);
        let text = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(NormalLogicProgram::from_json(&text).unwrap(), p);
    }
}
