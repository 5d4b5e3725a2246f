//! Semantics of small normal logic programs under the Fitting and the
//! ultimate approximator, next to a brute-force reference solver.

use aft_core::encoders::lp::{fitting_approximator, lp_operator, lp_oracle, NormalLogicProgram};
use aft_core::engine::{ultimate_approximator, Semantics, SemanticsKind};
use aft_core::interval::IntervalFramework;

const PROGRAMS: [(&str, &str); 3] = [
    ("even loop", include_str!("../data/even_loop.json")),
    ("self support", include_str!("../data/self_support.json")),
    ("choice with a constraint", include_str!("../data/graph_reach.json")),
];

fn main() -> aft_core::Result<()> {
    for (name, text) in PROGRAMS {
        let p = NormalLogicProgram::from_json(text)?;
        println!("== {name}\n{p}");
        let op = lp_operator(&p)?;
        let fw = IntervalFramework::new(op.domain_arc().clone())?;
        let fitting = fitting_approximator(&p, &fw)?;
        let ultimate = ultimate_approximator(&fw, &op);
        for a in [&fitting, &ultimate] {
            let s = Semantics::compute(a, &SemanticsKind::ALL)?;
            println!("[{}]\n{}", a.name(), s.to_text(&fw));
        }
        let oracle = lp_oracle(&p)?;
        let answer_sets: Vec<String> = oracle.answer_sets.iter().map(|&m| p.interpretation_name(m)).collect();
        println!(
            "[reference]\nanswer sets: {}\nwell-founded: true {}, not false {}\n",
            answer_sets.join(" "),
            p.interpretation_name(oracle.wf_lower),
            p.interpretation_name(oracle.wf_upper)
        );
    }
    Ok(())
}
