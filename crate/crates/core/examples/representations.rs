//! Partial representations of G, representations of S(G), and covariant pairs.

use exel_sgpd::action::{ActionSpec, GroupoidPartialAction};
use exel_sgpd::groupoid::{arrow_groupoid, FiniteGroupoid};
use exel_sgpd::representation::{check_partial_rep, regular_partial_rep, triangle, TAU};

fn main() -> anyhow::Result<()> {
    let cases = [
        ("Z2", FiniteGroupoid::cyclic(2), include_str!("../data/z2_action.json")),
        ("G1", arrow_groupoid(), include_str!("../data/g1_action.json")),
        ("G1, overlapping units", arrow_groupoid(), include_str!("../data/g1_action_overlap.json")),
    ];
    for (name, g, text) in cases {
        let spec: ActionSpec = serde_json::from_str(text)?;
        let p = regular_partial_rep(&GroupoidPartialAction::from_spec(&g, &spec)?)?;
        println!("{name}: partial representation on C^{}: {}", p.dim(), check_partial_rep(&p, TAU).is_ok());
        match triangle(&p, TAU) {
            Ok(rep) => {
                for c in rep.checks.iter().filter(|c| c.axiom.contains('→') && !c.axiom.starts_with('(')) {
                    println!("  {:<10} {}", c.axiom, c.passed());
                }
            }
            Err(e) => println!("  no covariant pair: {e}"),
        }
    }
    Ok(())
}
