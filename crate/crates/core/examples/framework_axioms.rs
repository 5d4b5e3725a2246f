//! Runs the framework axiom checks on a cpo and on a complete lattice.
//!
//! Pass a poset file to check your own: `cargo run --example framework_axioms -- my_poset.json`.

use std::sync::Arc;

use aft_core::checks::{check_framework, verify_flower_propositions, CheckConfig};
use aft_core::flower::FlowerFramework;
use aft_core::interval::IntervalFramework;
use aft_core::order::FinitePoset;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inputs: Vec<(String, String)> = match std::env::args().nth(1) {
        Some(path) => vec![(path.clone(), std::fs::read_to_string(&path)?)],
        None => vec![
            ("vee.json".into(), include_str!("../data/vee.json").into()),
            ("diamond.json".into(), include_str!("../data/diamond.json").into()),
        ],
    };
    let cfg = CheckConfig::default();
    for (name, text) in inputs {
        let exact = Arc::new(FinitePoset::from_json(&text)?);
        let class = exact.classify();
        println!("== {name}: {class}");
        if class.is_complete_lattice {
            let fw = IntervalFramework::new(exact.clone())?;
            println!("-- intervals\n{}", check_framework(&fw, &cfg));
        }
        if class.is_bounded_complete {
            let fw = FlowerFramework::new(exact.clone(), true)?;
            let mut report = check_framework(&fw, &cfg);
            report.extend(verify_flower_propositions(&fw, &cfg));
            println!("-- flowers\n{report}");
        }
    }
    Ok(())
}
