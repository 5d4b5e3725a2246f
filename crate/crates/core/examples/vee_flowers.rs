//! Flowers over the three-element cpo `bot < a, bot < b`.
//!
//! Lists every flower, the spaces of lower and upper bounds, and shows how
//! recomposition trims an upper bound to the part above the lower bound.

use std::sync::Arc;

use aft_core::flower::FlowerFramework;
use aft_core::framework::{ApproximationFramework, Bound};
use aft_core::order::FinitePoset;

fn main() -> aft_core::Result<()> {
    let exact = Arc::new(FinitePoset::from_json(include_str!("../data/vee.json"))?);
    println!("exact space: {} ({})", exact.format_set(&exact.all()), exact.classify());
    let fw = FlowerFramework::new(exact.clone(), true)?;

    println!("\nflowers:");
    for x in fw.enumerate_approximants().expect("small space") {
        let members = exact.format_set(&fw.approximated(&x));
        println!("  {:<14} = {}", members, fw.format_approximant(&x));
    }
    let lows: Vec<String> = fw.enumerate_low().unwrap().iter().map(|l| fw.format_low(l)).collect();
    let ups: Vec<String> = fw.enumerate_up().unwrap().iter().map(|u| fw.format_up(u)).collect();
    println!("\nlower bounds: {}", lows.join(", "));
    println!("upper bounds: {}", ups.join(", "));

    let a = exact.elem("a")?;
    let ab = fw.antichain_named(&["a", "b"])?;
    let x = fw.recompose(&a, &ab).expect("a is below {a, b}");
    println!("\n(a, {{a, b}}) recomposes to {}", fw.format_approximant(&x));

    let chain = [
        Bound::Low(exact.elem("bot")?),
        Bound::Low(a),
        Bound::Up(fw.antichain_named(&["a"])?),
        Bound::Up(ab),
    ];
    let shown: Vec<String> = chain
        .iter()
        .map(|b| match b {
            Bound::Low(l) => fw.format_low(l),
            Bound::Up(u) => fw.format_up(u),
        })
        .collect();
    let ordered = chain.windows(2).all(|w| fw.bound_leq(&w[0], &w[1]));
    println!("composition order {}: {ordered}", shown.join(" ≼ "));
    Ok(())
}
