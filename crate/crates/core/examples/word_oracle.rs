//! Cross-checks the normalizer against congruence closure on short words.

use exel_sgpd::groupoid::{arrow_groupoid, FiniteGroupoid};
use exel_sgpd::oracle::{compare_with_normalizer, congruence_classes};
use exel_sgpd::semigroupoid::ExelSemigroupoid;

fn main() -> anyhow::Result<()> {
    for (name, g) in [("Z2", FiniteGroupoid::cyclic(2)), ("Z3", FiniteGroupoid::cyclic(3)), ("G1", arrow_groupoid())] {
        let part = congruence_classes(&g, 6)?;
        let agreement = compare_with_normalizer(&ExelSemigroupoid::new(g), &part);
        println!(
            "{name}: {} words, {} classes, |S(G)| = {}, agrees = {}",
            agreement.words, agreement.classes, agreement.sg_size, agreement.agrees
        );
    }
    Ok(())
}
