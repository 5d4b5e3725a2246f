//! A three-argument wADF: a paper's status is the glb of its significance
//! and its methodology. The acceptance values have no greatest element, so
//! intervals do not apply, while flowers do.

use aft_core::encoders::wadf::{wadf_operator, Wadf};
use aft_core::engine::{kripke_kleene, stable_fixpoints, ultimate_approximator, well_founded};
use aft_core::flower::FlowerFramework;
use aft_core::framework::ApproximationFramework;
use aft_core::interval::IntervalFramework;

fn main() -> aft_core::Result<()> {
    let w = Wadf::from_json(include_str!("../data/review_wadf.json"))?;
    let (space, op) = wadf_operator(&w)?;
    println!("acceptance values: {}", space.values.classify());
    println!("states: {}", space.states.len());

    match IntervalFramework::new(space.states.clone()) {
        Ok(_) => println!("intervals: unexpectedly available"),
        Err(e) => println!("intervals: {e}"),
    }

    let fw = FlowerFramework::new(space.states.clone(), false)?;
    let a = ultimate_approximator(&fw, &op);
    let kk = kripke_kleene(&a)?;
    let wf = well_founded(&a)?;
    println!("flowers: KK = {}", fw.format_approximant(&kk));
    println!("flowers: WF = {}", fw.format_approximant(&wf));
    if fw.is_exact(&kk) {
        for arg in &space.arguments {
            println!("  {arg}: {}", space.value_of(*kk.alb(), arg)?);
        }
    }
    println!("flowers: ST = {}", space.states.format_set(&stable_fixpoints(&a)?));
    Ok(())
}
