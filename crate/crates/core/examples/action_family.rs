//! Every map G → I(X) with |X| = 2, compared against the partial action axioms.
//!
//! The two map identities (i) and (ii) accept some maps that are not partial
//! actions; adding `α_{t⁻¹} = (α_t)⁻¹` makes the test exact.

use exel_sgpd::action::{exhaustive_family, inverse_law, lemma1_characterize, PartialBijection};
use exel_sgpd::groupoid::{arrow_groupoid, FiniteGroupoid};

fn main() -> anyhow::Result<()> {
    for (name, g) in [("Z2", FiniteGroupoid::cyclic(2)), ("G1", arrow_groupoid())] {
        let out = exhaustive_family(&g, 2)?;
        println!(
            "{name}: {} maps on G, {} on S(G); {} partial actions, {} S(G)-actions",
            out.maps_g, out.maps_sg, out.valid_partial, out.valid_sg
        );
        for c in &out.report.checks {
            println!("  {:<48} {:>4} / {:<6}", c.axiom, c.instances - c.failures, c.instances);
        }
    }

    let g = FiniteGroupoid::cyclic(2);
    let mut maps = vec![PartialBijection::empty(); 2];
    maps[g.id("a")?.index()] = PartialBijection::new([(0, 1)])?;
    let points = ["0".to_string(), "1".to_string()];
    let out = lemma1_characterize(&g, &points, &maps)?;
    println!("α_e = ∅, α_a = {{0 ↦ 1}}: (i)+(ii) hold = {}, is a partial action = {}", out.holds, out.action.is_some());
    println!("inverse law holds = {}", inverse_law(&g, &maps).is_ok());
    Ok(())
}
