//! Standard forms of S(G), products, the order, and disjoint-union additivity.

use exel_sgpd::groupoid::{arrow_groupoid, FiniteGroupoid};
use exel_sgpd::semigroupoid::ExelSemigroupoid;

fn main() -> anyhow::Result<()> {
    let sg = ExelSemigroupoid::new(arrow_groupoid());
    let elems = sg.enumerate();
    println!("|S(G1)| = {}", elems.len());
    for a in &elems {
        println!(
            "  {:<10} star {:<10} idempotent {}",
            sg.display(a).to_string(),
            sg.display(&sg.star(a)).to_string(),
            sg.is_idempotent(a)
        );
    }

    let g = sg.groupoid();
    let word = [g.id("g")?, g.id("gi")?, g.id("g")?];
    println!("[g][gi][g] = {}", sg.display(&sg.normalize_word(&word)?));
    let (eps, gen) = (sg.epsilon(g.id("g")?)?, sg.generator(g.id("f")?)?);
    println!("ε_g[f] ≤ [f]: {}", sg.leq(&sg.multiply(&eps, &gen)?.expect("composable"), &gen)?);

    let size = |g: FiniteGroupoid| ExelSemigroupoid::new(g).enumerate().len();
    let (z2, z3) = (FiniteGroupoid::cyclic(2), FiniteGroupoid::cyclic(3));
    let union = FiniteGroupoid::disjoint_union(&[z2.clone(), z3.clone()])?;
    println!("|S(Z2)| = {}, |S(Z3)| = {}, |S(Z2 ⊔ Z3)| = {}", size(z2), size(z3), size(union));
    Ok(())
}
