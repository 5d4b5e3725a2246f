//! Well-founded inductions on the autoepistemic example over flowers.
//!
//! Different refinement strategies take different paths, but every terminal
//! induction ends at the well-founded fixpoint.

use aft_core::encoders::ael::{ael_operator, AelTheory};
use aft_core::engine::{
    run_wf_induction, ultimate_approximator, well_founded, AlternatingStrategy, RandomStrategy,
};
use aft_core::flower::FlowerFramework;
use aft_core::framework::ApproximationFramework;

fn main() -> aft_core::Result<()> {
    let theory = AelTheory::from_json(include_str!("../data/ael_beliefs.json"))?;
    let op = ael_operator(&theory)?;
    let fw = FlowerFramework::new(op.domain_arc().clone(), false)?;
    let a = ultimate_approximator(&fw, &op);
    let wf = well_founded(&a)?;

    let trace = run_wf_induction(&a, &mut AlternatingStrategy::default())?;
    println!("alternating strategy:");
    for (i, x) in trace.steps.iter().enumerate() {
        println!("  x{i} = {}", fw.format_approximant(x));
    }

    let mut lengths = Vec::new();
    for seed in 0..20 {
        let trace = run_wf_induction(&a, &mut RandomStrategy::new(seed))?;
        assert!(trace.terminal && *trace.limit() == wf, "strategy {seed} diverged");
        lengths.push(trace.steps.len());
    }
    println!("20 random strategies, path lengths {lengths:?}");
    println!("all end at {}", fw.format_approximant(&wf));
    Ok(())
}
