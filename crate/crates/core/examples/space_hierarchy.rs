//! Intervals sit inside flowers. This example maps flowers to intervals with
//! `ζ`, builds induced approximators in both directions and checks the
//! transfer results on the autoepistemic example.

use aft_core::encoders::ael::{ael_operator, AelTheory};
use aft_core::engine::{ultimate_approximator, well_founded};
use aft_core::framework::ApproximationFramework;
use aft_core::hierarchy::{
    check_space_precision, induce_coarse, verify_fixpoint_preservation, verify_precision_transfer,
    verify_ultimate_composition, IntervalFlowerWitness, SpacePrecision,
};

fn main() -> aft_core::Result<()> {
    let theory = AelTheory::from_json(include_str!("../data/ael_beliefs.json"))?;
    let op = ael_operator(&theory)?;
    let w = IntervalFlowerWitness::new(op.domain_arc().clone())?;
    let (intervals, flowers) = (w.coarse(), w.fine());

    println!("-- the witness itself\n{}", check_space_precision(&w, 300, 0));

    let u1 = ultimate_approximator(intervals, &op);
    let u2 = ultimate_approximator(flowers, &op);
    let wf2 = well_founded(&u2)?;
    println!("WF over flowers:            {}", flowers.format_approximant(&wf2));
    println!("ζ of it:                    {}", intervals.format_approximant(&w.zeta(&wf2)));
    let induced = induce_coarse(&u2, &w);
    println!("WF of ζ∘U(flowers)∘embed:   {}", intervals.format_approximant(&well_founded(&induced)?));

    println!("\n-- interval approximator lifted to flowers\n{}", verify_fixpoint_preservation(&w, &u1, 300, 0)?);
    println!("-- flower approximator pushed to intervals\n{}", verify_precision_transfer(&w, &u2)?);
    println!("-- ultimate approximators\n{}", verify_ultimate_composition(&w, &op, 300, 0));
    Ok(())
}
