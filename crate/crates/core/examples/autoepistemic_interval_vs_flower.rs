//! The two-sentence autoepistemic theory `q ⇔ ¬K p`, `r ⇔ ¬K q`.
//!
//! Over intervals the ultimate approximator derives nothing; over flowers the
//! well-founded fixpoint is exact and pins down the intended belief state.
//!
//! Run with `cargo run --release --example autoepistemic_interval_vs_flower`.

use std::time::Instant;

use aft_core::encoders::{ael_operator, AelTheory};
use aft_core::engine::{kripke_kleene, ultimate_approximator, well_founded};
use aft_core::flower::FlowerFramework;
use aft_core::framework::ApproximationFramework;
use aft_core::interval::IntervalFramework;

fn main() -> aft_core::Result<()> {
    let theory = AelTheory::from_json(include_str!("../data/ael_beliefs.json"))?;
    let op = ael_operator(&theory)?;
    let lattice = op.domain_arc().clone();
    println!("belief states: {}", lattice.len());

    let start = Instant::now();
    let intervals = IntervalFramework::new(lattice.clone())?;
    let a = ultimate_approximator(&intervals, &op);
    let kk = kripke_kleene(&a)?;
    let wf = well_founded(&a)?;
    println!("intervals: KK = {}", intervals.format_approximant(&kk));
    println!("intervals: WF = {}", intervals.format_approximant(&wf));
    println!("intervals: WF is the least precise approximant: {}", wf == intervals.bottom());
    println!("  ({:.2?})", start.elapsed());

    let start = Instant::now();
    let flowers = FlowerFramework::new(lattice.clone(), false)?;
    let a = ultimate_approximator(&flowers, &op);
    let wf = well_founded(&a)?;
    println!("flowers: WF = {}", flowers.format_approximant(&wf));
    if flowers.is_exact(&wf) {
        println!("flowers: WF is exact, belief state {}", lattice.name(*wf.alb()));
    }
    println!("  ({:.2?})", start.elapsed());
    Ok(())
}
