//! A partial action of Z3, the S(Z3)-action it induces, and the way back.

use exel_sgpd::action::{
    partial_to_sg, sg_to_partial, validate_partial_action, validate_sg_action, ActionSpec, GroupoidPartialAction,
};
use exel_sgpd::groupoid::FiniteGroupoid;

fn main() -> anyhow::Result<()> {
    let g = FiniteGroupoid::cyclic(3);
    let spec: ActionSpec = serde_json::from_str(include_str!("../data/z3_action.json"))?;
    let a = GroupoidPartialAction::from_spec(&g, &spec)?;
    println!("partial action valid: {}", validate_partial_action(&a).is_ok());

    let b = partial_to_sg(&a)?;
    println!("induced S(G)-action valid: {}", validate_sg_action(&b).is_ok());
    let sg = b.semigroupoid();
    for s in sg.enumerate() {
        let pairs: Vec<String> =
            b.map(&s).pairs().map(|(x, y)| format!("{}→{}", a.points()[x], a.points()[y])).collect();
        println!("  β_{:<12} {{{}}}", sg.display(&s).to_string(), pairs.join(", "));
    }
    println!("round trip is the identity: {}", sg_to_partial(&b)? == a);

    let tampered: ActionSpec = serde_json::from_str(include_str!("../data/z3_action_tampered.json"))?;
    let rep = validate_partial_action(&GroupoidPartialAction::from_spec(&g, &tampered)?);
    for c in rep.checks.iter().filter(|c| !c.passed()) {
        println!("tampered: {} fails at {:?}", c.axiom, c.witnesses);
    }
    Ok(())
}
