//! Brute-force certification that S(G) is an inverse semigroupoid.

use exel_sgpd::certify::{certify_inverse, check_epsilon_identities, check_order_lemma};
use exel_sgpd::groupoid::{arrow_groupoid, FiniteGroupoid};
use exel_sgpd::semigroupoid::ExelSemigroupoid;

fn main() -> anyhow::Result<()> {
    let z2 = FiniteGroupoid::cyclic(2);
    let cases = [
        ("Z2", z2.clone()),
        ("Z3", FiniteGroupoid::cyclic(3)),
        ("G1", arrow_groupoid()),
        ("Z2 ⊔ Z2", FiniteGroupoid::disjoint_union(&[z2.clone(), z2])?),
    ];
    for (name, g) in cases {
        let sg = ExelSemigroupoid::new(g);
        for rep in [certify_inverse(&sg), check_epsilon_identities(&sg), check_order_lemma(&sg)] {
            let instances: usize = rep.checks.iter().map(|c| c.instances).sum();
            println!("{name:>8} {:<24} {:>5} instances  passed = {}", rep.subject, instances, rep.is_ok());
        }
    }
    Ok(())
}
